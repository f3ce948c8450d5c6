//! p-linearized polynomials `L(T) = Σ a_k T^{p^k}` and their kernels.

use serde::{Deserialize, Serialize};

use super::{gfp, Fe, Field};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearizedPoly {
    /// `coeffs[k]` multiplies `T^{p^k}`.
    pub coeffs: Vec<Fe>,
}

impl LinearizedPoly {
    /// `L(T) = T`.
    pub fn identity() -> LinearizedPoly {
        LinearizedPoly { coeffs: vec![Fe::ONE] }
    }

    /// log_p of the degree.
    pub fn p_degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn eval(&self, field: &Field, t: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        let mut frob = t;
        for &a in &self.coeffs {
            acc = field.add(acc, field.mul(a, frob));
            frob = field.pow(frob, field.p() as u64);
        }
        acc
    }

    /// `L(T)^p - c·L(T)`.
    pub fn step(&self, field: &Field, c: Fe) -> LinearizedPoly {
        let p = field.p() as u64;
        let mut out = vec![Fe::ZERO; self.coeffs.len() + 1];
        for (k, &a) in self.coeffs.iter().enumerate() {
            out[k + 1] = field.add(out[k + 1], field.pow(a, p));
            out[k] = field.sub(out[k], field.mul(c, a));
        }
        LinearizedPoly { coeffs: out }
    }

    /// The monic polynomial `∏_{w ∈ span(basis)} (T - w)`, built one basis
    /// vector at a time, together with the step constants
    /// `c_k = ℓ_{k-1}(w_k)^{p-1}`.
    pub fn subspace(field: &Field, basis: &[Fe]) -> Result<(LinearizedPoly, Vec<Fe>)> {
        let mut ell = LinearizedPoly::identity();
        let mut consts = Vec::with_capacity(basis.len());
        for (k, &w) in basis.iter().enumerate() {
            let v = ell.eval(field, w);
            if v.is_zero() {
                return Err(Error::KernelDefect(format!("basis vector {k} lies in the span of the previous ones")));
            }
            let c = field.pow(v, field.p() as u64 - 1);
            consts.push(c);
            ell = ell.step(field, c);
        }
        Ok((ell, consts))
    }
}

/// All `t` with `L(t) = c`, sorted by codec value. Empty when unsolvable.
pub fn solve_linearized(field: &Field, l: &LinearizedPoly, c: Fe) -> Result<Vec<Fe>> {
    let p = field.p();
    let m = field.m() as usize;
    let columns: Vec<Vec<u32>> = (0..m)
        .map(|i| field.coords(l.eval(field, Fe((p as u64).pow(i as u32) as u32))))
        .collect();
    let deg = l.p_degree();
    let Some((part, kernel)) = gfp::solve_affine(&columns, &field.coords(c), p) else {
        let (_, kernel) = gfp::solve_affine(&columns, &vec![0; m], p).expect("homogeneous");
        check_kernel(kernel.len(), deg)?;
        return Ok(Vec::new());
    };
    check_kernel(kernel.len(), deg)?;
    let kernel: Vec<Fe> = kernel.iter().map(|v| field.from_coords(v)).collect();
    let mut out = span(field, field.from_coords(&part), &kernel);
    out.sort();
    Ok(out)
}

fn check_kernel(dim: usize, deg: usize) -> Result<()> {
    if dim != deg {
        return Err(Error::KernelDefect(format!("kernel has dimension {dim}, degree is p^{deg}")));
    }
    Ok(())
}

/// Points of the affine space `shift + span(basis)` in mixed-radix order:
/// index `j = Σ j_i p^i` maps to `shift + Σ j_i·basis[i]`.
pub fn span(field: &Field, shift: Fe, basis: &[Fe]) -> Vec<Fe> {
    let mut pts = vec![shift];
    for &w in basis {
        let prev = pts.clone();
        let mut mult = w;
        for _ in 1..field.p() {
            pts.extend(prev.iter().map(|&x| field.add(x, mult)));
            mult = field.add(mult, w);
        }
    }
    pts
}

/// Greedy GF(p)-basis of a set of field elements, scanning in the given
/// order and keeping every element not in the span of those kept so far.
pub fn greedy_basis(field: &Field, elems: &[Fe]) -> Vec<Fe> {
    let p = field.p();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut basis = Vec::new();
    for &e in elems {
        let mut trial = rows.clone();
        trial.push(field.coords(e));
        if gfp::rref(&mut trial, p).len() > rows.len() {
            rows.push(field.coords(e));
            basis.push(e);
        }
    }
    basis
}
