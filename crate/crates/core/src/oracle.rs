//! Brute-force references: quadratic encoding through an explicit generator
//! matrix, univariate Horner/Lagrange, and semigroup gap counts.
//!
//! Nothing here calls the fast paths. Stage factors are evaluated from
//! their definitions: `y^i` for Kummer stages, and for Artin–Schreier stages
//! the digit product `∏ ℓ_k(y)^{i_k}` where `ℓ_k(y) = ∏_{w ∈ W_k} (y - w)`
//! is expanded over every element of the span `W_k` of the first `k` basis
//! vectors.

use crate::encoder::Codeword;
use crate::error::{Error, Result};
use crate::field::{gfp, matrix, Arith, Fe, Field, OpCounter};
use crate::rroch::{self, FunctionRepr};
use crate::tower::{ExtensionDescriptor, ExtensionKind, PointSet};

fn stages_bottom_up(desc: &ExtensionDescriptor) -> Vec<&ExtensionDescriptor> {
    let mut v = Vec::new();
    let mut d = Some(desc);
    while let Some(x) = d {
        v.push(x);
        d = x.base_descriptor();
    }
    v.reverse();
    v
}

/// All `Σ c_i w_i` with `0 ≤ c_i < p`.
fn all_combinations(field: &Field, basis: &[Fe]) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO];
    for &w in basis {
        let mut next = Vec::with_capacity(out.len() * field.p() as usize);
        for c in 0..field.p() as u64 {
            let cw = field.scale(c, w);
            next.extend(out.iter().map(|&a| field.add(a, cw)));
        }
        out = next;
    }
    out
}

/// `table[i]` = value at `y` of the stage function with exponent `i < m`.
fn stage_table(field: &Field, desc: &ExtensionDescriptor, spans: &[Vec<Fe>], y: Fe) -> Vec<Fe> {
    let m = desc.degree() as usize;
    match &desc.kind {
        ExtensionKind::Kummer { .. } => (0..m as u64).map(|i| field.pow(y, i)).collect(),
        ExtensionKind::ArtinSchreier { w_basis } => {
            let p = field.p() as usize;
            let ells: Vec<Fe> = (0..w_basis.len())
                .map(|k| spans[k].iter().fold(Fe::ONE, |acc, &w| field.mul(acc, field.sub(y, w))))
                .collect();
            (0..m)
                .map(|mut i| {
                    let mut v = Fe::ONE;
                    for &ell in &ells {
                        v = field.mul(v, field.pow(ell, (i % p) as u64));
                        i /= p;
                    }
                    v
                })
                .collect()
        }
    }
}

/// Rows `ev_P(b)` for every basis monomial `b` of `L(λP∞)`.
pub fn naive_rows(field: &Field, desc: &ExtensionDescriptor, lambda: u64, pts: &PointSet) -> Vec<Vec<Fe>> {
    let basis = rroch::basis_for(desc, lambda);
    let stages = stages_bottom_up(desc);
    let spans: Vec<Vec<Vec<Fe>>> = stages
        .iter()
        .map(|s| match &s.kind {
            ExtensionKind::ArtinSchreier { w_basis } => {
                (0..w_basis.len()).map(|k| all_combinations(field, &w_basis[..k])).collect()
            }
            ExtensionKind::Kummer { .. } => Vec::new(),
        })
        .collect();
    let max_x = basis.iter().map(|b| b.exps[0]).max().unwrap_or(0);
    let mut rows = vec![Vec::with_capacity(pts.len()); basis.len()];
    for pt in pts.iter() {
        let x_pows: Vec<Fe> = (0..=max_x).map(|e| field.pow(pt[0], e)).collect();
        let tabs: Vec<Vec<Fe>> =
            stages.iter().enumerate().map(|(s, d)| stage_table(field, d, &spans[s], pt[s + 1])).collect();
        for (row, b) in rows.iter_mut().zip(&basis) {
            let mut v = x_pows[b.exps[0] as usize];
            for (tab, &e) in tabs.iter().zip(&b.exps[1..]) {
                v = field.mul(v, tab[e as usize]);
            }
            row.push(v);
        }
    }
    rows
}

/// Generator matrix, checked to have full rank `k`.
pub fn naive_generator_matrix(
    field: &Field,
    desc: &ExtensionDescriptor,
    lambda: u64,
    pts: &PointSet,
) -> Result<Vec<Vec<Fe>>> {
    let rows = naive_rows(field, desc, lambda, pts);
    let ops = OpCounter::new();
    let rank = matrix::rank(&field.counted(&ops), &rows);
    if rank < rows.len() {
        return Err(Error::RankDefect { rank, k: rows.len() });
    }
    Ok(rows)
}

/// `message · G`, with every multiplication and addition counted.
pub fn combine(ar: &Arith, rows: &[Vec<Fe>], coeffs: &[Fe]) -> Result<Codeword> {
    if coeffs.len() != rows.len() {
        return Err(Error::LengthMismatch { expected: rows.len(), got: coeffs.len() });
    }
    let n = rows.first().map_or(0, |r| r.len());
    let mut values = vec![Fe::ZERO; n];
    for (row, &c) in rows.iter().zip(coeffs) {
        for (v, &g) in values.iter_mut().zip(row) {
            *v = ar.add(*v, ar.mul(c, g));
        }
    }
    Ok(Codeword { values })
}

/// Quadratic-time evaluation of `f` at every point.
pub fn naive_encode(
    field: &Field,
    desc: &ExtensionDescriptor,
    lambda: u64,
    pts: &PointSet,
    f: &FunctionRepr,
) -> Result<Codeword> {
    if f.lambda != lambda {
        return Err(Error::PlanMismatch { expected: lambda, got: f.lambda });
    }
    let ops = OpCounter::new();
    combine(&field.counted(&ops), &naive_rows(field, desc, lambda, pts), &f.coeffs)
}

/// `Σ c_k x^k` at each point, by Horner's rule.
pub fn naive_poly_eval(ar: &Arith, coeffs: &[Fe], points: &[Fe]) -> Vec<Fe> {
    points.iter().map(|&x| ar.horner(coeffs.iter().copied(), x)).collect()
}

/// Coefficients of the unique polynomial of degree `< n` through the
/// points, by Lagrange's formula.
pub fn naive_lagrange(field: &Field, points: &[Fe], values: &[Fe]) -> Result<Vec<Fe>> {
    let n = points.len();
    let mut out = vec![Fe::ZERO; n];
    for (i, (&xi, &vi)) in points.iter().zip(values).enumerate() {
        let mut basis = vec![Fe::ONE];
        let mut denom = Fe::ONE;
        for (j, &xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Fe::ZERO; basis.len() + 1];
            for (k, &b) in basis.iter().enumerate() {
                next[k + 1] = field.add(next[k + 1], b);
                next[k] = field.sub(next[k], field.mul(b, xj));
            }
            basis = next;
            denom = field.mul(denom, field.sub(xi, xj));
        }
        let scale = field.div(vi, denom)?;
        for (o, &b) in out.iter_mut().zip(&basis) {
            *o = field.add(*o, field.mul(scale, b));
        }
    }
    Ok(out)
}

/// Number of positive integers not of the form `am + bd` with `a, b ≥ 0`.
pub fn semigroup_gaps(m: u64, d: u64) -> Result<u64> {
    if gfp::gcd(m, d) != 1 {
        return Err(Error::NotCoprime(m, d));
    }
    let bound = m * d;
    let mut hit = vec![false; bound as usize + 1];
    for a in 0..=d {
        for b in 0..=m {
            let v = a * m + b * d;
            if v <= bound {
                hit[v as usize] = true;
            }
        }
    }
    Ok(hit.iter().filter(|h| !**h).count() as u64)
}
