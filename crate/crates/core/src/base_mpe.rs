//! Univariate multipoint evaluation and interpolation on smooth
//! multiplicative subgroups and on affine GF(p)-subspaces.
//!
//! Both transforms use natural point order: `ω^j` for multiplicative
//! domains and the mixed-radix enumeration `shift + Σ j_i w_{i+1}` for
//! additive ones. A domain can carry a restriction mask selecting an
//! ordered subset of its points; [`base_mpe`] evaluates on the full domain
//! and returns the masked positions.

use crate::error::{Error, Result};
use crate::field::{factor_smooth, linearized, matrix, smooth_bound, Arith, Fe, Field, OpCounter};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainKind {
    /// Powers of `omega`, of order `n = ∏ factors` (ascending primes).
    Multiplicative { omega: Fe, factors: Vec<u64> },
    /// `shift + span(basis)`.
    Additive { shift: Fe, basis: Vec<Fe> },
}

#[derive(Clone, Debug)]
struct AddLevel {
    a: Fe,
    a_pows: Vec<Fe>,
    a_inv_pows: Vec<Fe>,
    /// Level points divided by `a`.
    z: Vec<Fe>,
}

#[derive(Clone, Debug)]
enum Tables {
    Mult { pows: Vec<Fe>, inv_pows: Vec<Fe>, n_inv: Fe },
    Add { p: usize, levels: Vec<AddLevel>, vinv: Vec<Vec<Fe>> },
}

/// An evaluation domain with its precomputed transform tables.
#[derive(Clone, Debug)]
pub struct EvalDomain {
    kind: DomainKind,
    points: Vec<Fe>,
    mask: Option<Vec<usize>>,
    tables: Tables,
}

impl EvalDomain {
    /// The subgroup of order `n`, generated by `root_of_unity(n)`.
    pub fn multiplicative(field: &Field, n: u64) -> Result<EvalDomain> {
        EvalDomain::multiplicative_with_bound(field, n, smooth_bound())
    }

    pub fn multiplicative_with_bound(field: &Field, n: u64, bound: u64) -> Result<EvalDomain> {
        let omega = field.root_of_unity(n)?;
        let factors = factor_smooth(n, bound)?;
        let n = n as usize;
        let mut pows = Vec::with_capacity(n);
        let mut x = Fe::ONE;
        for _ in 0..n {
            pows.push(x);
            x = field.mul(x, omega);
        }
        let inv_pows = (0..n).map(|i| pows[(n - i) % n]).collect();
        let n_inv = field.inv(field.from_int(n as u64))?;
        Ok(EvalDomain {
            kind: DomainKind::Multiplicative { omega, factors },
            points: pows.clone(),
            mask: None,
            tables: Tables::Mult { pows, inv_pows, n_inv },
        })
    }

    /// `shift + span(basis)`; the basis must be GF(p)-independent.
    pub fn additive(field: &Field, shift: Fe, basis: &[Fe]) -> Result<EvalDomain> {
        if linearized::greedy_basis(field, basis).len() != basis.len() {
            return Err(Error::BadDomain("subspace basis is linearly dependent".into()));
        }
        let p = field.p() as usize;
        let points = linearized::span(field, shift, basis);
        let mut levels = Vec::with_capacity(basis.len());
        let mut s = shift;
        let mut w = basis.to_vec();
        while !w.is_empty() {
            let a = w[0];
            let a_inv = field.inv(a)?;
            let pts = linearized::span(field, s, &w);
            let n = pts.len();
            let mut a_pows = Vec::with_capacity(n);
            let mut a_inv_pows = Vec::with_capacity(n);
            let (mut x, mut y) = (Fe::ONE, Fe::ONE);
            for _ in 0..n {
                a_pows.push(x);
                a_inv_pows.push(y);
                x = field.mul(x, a);
                y = field.mul(y, a_inv);
            }
            let z = pts.iter().map(|&pt| field.mul(pt, a_inv)).collect();
            levels.push(AddLevel { a, a_pows, a_inv_pows, z });
            let t = |v: Fe| field.sub(field.pow(v, p as u64), v);
            s = t(field.mul(s, a_inv));
            w = w[1..].iter().map(|&wi| t(field.mul(wi, a_inv))).collect();
        }
        let nodes: Vec<Fe> = (0..p as u64).map(|d| field.from_int(d)).collect();
        let ops = OpCounter::new();
        let ar = field.counted(&ops);
        let vinv = matrix::invert(&ar, &matrix::vandermonde(&ar, &nodes)).ok_or(Error::SingularFiber)?;
        Ok(EvalDomain {
            kind: DomainKind::Additive { shift, basis: basis.to_vec() },
            points,
            mask: None,
            tables: Tables::Add { p, levels, vinv },
        })
    }

    /// The whole field as an additive domain; point `j` has codec `j`.
    pub fn full_field(field: &Field) -> Result<EvalDomain> {
        let basis: Vec<Fe> = (0..field.m()).map(|i| Fe((field.p() as u64).pow(i) as u32)).collect();
        EvalDomain::additive(field, Fe::ZERO, &basis)
    }

    /// Selects an ordered subset of positions.
    pub fn with_mask(mut self, positions: Vec<usize>) -> Result<EvalDomain> {
        let n = self.points.len();
        let mut seen = vec![false; n];
        for &i in &positions {
            if i >= n || seen[i] {
                return Err(Error::BadDomain(format!("mask position {i} is out of range or repeated")));
            }
            seen[i] = true;
        }
        self.mask = Some(positions);
        Ok(self)
    }

    /// Masks the domain down to `targets`, in the given order.
    pub fn restrict_to(self, targets: &[Fe]) -> Result<EvalDomain> {
        let mut index = std::collections::HashMap::with_capacity(self.points.len());
        for (i, &pt) in self.points.iter().enumerate() {
            index.insert(pt, i);
        }
        let positions = targets
            .iter()
            .map(|t| index.get(t).copied().ok_or_else(|| Error::BadDomain(format!("{t} is not a domain point"))))
            .collect::<Result<Vec<_>>>()?;
        self.with_mask(positions)
    }

    pub fn kind(&self) -> &DomainKind {
        &self.kind
    }

    /// Size of the unrestricted domain.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The unrestricted points in natural order.
    pub fn points(&self) -> &[Fe] {
        &self.points
    }

    pub fn mask(&self) -> Option<&[usize]> {
        self.mask.as_deref()
    }

    /// Points selected by the mask (all points when unmasked).
    pub fn target_points(&self) -> Vec<Fe> {
        match &self.mask {
            Some(m) => m.iter().map(|&i| self.points[i]).collect(),
            None => self.points.clone(),
        }
    }

    /// Evaluates on the full domain.
    pub fn eval(&self, ar: &Arith, coeffs: &[Fe]) -> Result<Vec<Fe>> {
        let n = self.points.len();
        if coeffs.len() > n {
            return Err(Error::DegreeTooLarge { len: coeffs.len(), n });
        }
        let mut c = coeffs.to_vec();
        c.resize(n, Fe::ZERO);
        Ok(match (&self.kind, &self.tables) {
            (DomainKind::Multiplicative { factors, .. }, Tables::Mult { pows, .. }) => mult_eval(ar, &c, pows, 1, factors),
            (DomainKind::Additive { .. }, Tables::Add { p, levels, .. }) => add_eval(ar, c, *p, levels),
            _ => unreachable!("tables match kind"),
        })
    }

    /// Interpolates values on the full domain; returns `len()` coefficients.
    pub fn interp(&self, ar: &Arith, values: &[Fe]) -> Result<Vec<Fe>> {
        let n = self.points.len();
        if values.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: values.len() });
        }
        Ok(match (&self.kind, &self.tables) {
            (DomainKind::Multiplicative { factors, .. }, Tables::Mult { inv_pows, n_inv, .. }) => {
                let c = mult_interp(ar, values, inv_pows, 1, factors);
                c.into_iter().map(|x| ar.mul(x, *n_inv)).collect()
            }
            (DomainKind::Additive { .. }, Tables::Add { p, levels, vinv }) => add_interp(ar, values.to_vec(), *p, levels, vinv),
            _ => unreachable!("tables match kind"),
        })
    }
}

fn mult_eval(ar: &Arith, c: &[Fe], pows: &[Fe], stride: usize, factors: &[u64]) -> Vec<Fe> {
    let n = c.len();
    if n == 1 {
        return c.to_vec();
    }
    let p = factors[0] as usize;
    let np = n / p;
    let subs: Vec<Vec<Fe>> = (0..p)
        .map(|k| {
            let fk: Vec<Fe> = c.iter().skip(k).step_by(p).copied().collect();
            mult_eval(ar, &fk, pows, stride * p, &factors[1..])
        })
        .collect();
    let big = pows.len();
    (0..n)
        .map(|j| {
            let x = pows[(stride * j) % big];
            let jj = j % np;
            let mut acc = subs[p - 1][jj];
            for k in (0..p - 1).rev() {
                acc = ar.add(ar.mul(acc, x), subs[k][jj]);
            }
            acc
        })
        .collect()
}

/// Unnormalized inverse: returns `n` times the coefficients.
fn mult_interp(ar: &Arith, v: &[Fe], inv_pows: &[Fe], stride: usize, factors: &[u64]) -> Vec<Fe> {
    let n = v.len();
    if n == 1 {
        return v.to_vec();
    }
    let p = factors[0] as usize;
    let np = n / p;
    let big = inv_pows.len();
    let mut subs = vec![vec![Fe::ZERO; np]; p];
    for jj in 0..np {
        for k in 0..p {
            // u_k = Σ_s ζ^{-sk} v[jj + np·s], with ζ = ω^{stride·np}
            let mut u = v[jj];
            for s in 1..p {
                let e = (stride * np * s * k) % big;
                let term = if e == 0 { v[jj + np * s] } else { ar.mul(inv_pows[e], v[jj + np * s]) };
                u = ar.add(u, term);
            }
            let e = (stride * jj * k) % big;
            subs[k][jj] = if e == 0 { u } else { ar.mul(u, inv_pows[e]) };
        }
    }
    let coeffs: Vec<Vec<Fe>> = subs.iter().map(|s| mult_interp(ar, s, inv_pows, stride * p, &factors[1..])).collect();
    let mut out = vec![Fe::ZERO; n];
    for (k, ck) in coeffs.into_iter().enumerate() {
        for (i, x) in ck.into_iter().enumerate() {
            out[k + p * i] = x;
        }
    }
    out
}

fn add_eval(ar: &Arith, mut c: Vec<Fe>, p: usize, levels: &[AddLevel]) -> Vec<Fe> {
    let n = c.len();
    if n == 1 {
        return c;
    }
    let lv = &levels[0];
    if lv.a != Fe::ONE {
        for (ci, &ap) in c.iter_mut().zip(&lv.a_pows).skip(1) {
            *ci = ar.mul(*ci, ap);
        }
    }
    let parts = taylor(ar, c, p);
    let subs: Vec<Vec<Fe>> = parts.into_iter().map(|g| add_eval(ar, g, p, &levels[1..])).collect();
    (0..n)
        .map(|j| {
            let x = lv.z[j];
            let jj = j / p;
            let mut acc = subs[p - 1][jj];
            for k in (0..p - 1).rev() {
                acc = ar.add(ar.mul(acc, x), subs[k][jj]);
            }
            acc
        })
        .collect()
}

fn add_interp(ar: &Arith, v: Vec<Fe>, p: usize, levels: &[AddLevel], vinv: &[Vec<Fe>]) -> Vec<Fe> {
    let n = v.len();
    if n == 1 {
        return v;
    }
    let lv = &levels[0];
    let np = n / p;
    let mut subs = vec![vec![Fe::ZERO; np]; p];
    let mut h = vec![Fe::ZERO; p];
    for jj in 0..np {
        let group = &v[p * jj..p * jj + p];
        // coefficients of u -> h(z0 + u), through the fixed inverse Vandermonde on GF(p)
        let c: Vec<Fe> = vinv
            .iter()
            .map(|row| {
                let mut acc: Option<Fe> = None;
                for (&e, &g) in row.iter().zip(group) {
                    if e.is_zero() {
                        continue;
                    }
                    let t = if e == Fe::ONE { g } else { ar.mul(e, g) };
                    acc = Some(match acc {
                        Some(a) => ar.add(a, t),
                        None => t,
                    });
                }
                acc.unwrap_or(Fe::ZERO)
            })
            .collect();
        // h(Z) = Σ c_k (Z - z0)^k, by Horner in (Z - z0)
        let z0 = lv.z[p * jj];
        h[0] = c[p - 1];
        for (used, &ck) in (1..p).zip(c[..p - 1].iter().rev()) {
            h[used] = h[used - 1];
            for i in (1..used).rev() {
                let t = ar.mul(z0, h[i]);
                h[i] = ar.sub(h[i - 1], t);
            }
            let t = ar.mul(z0, h[0]);
            h[0] = ar.sub(ck, t);
        }
        for k in 0..p {
            subs[k][jj] = h[k];
        }
    }
    let parts: Vec<Vec<Fe>> = subs.into_iter().map(|s| add_interp(ar, s, p, &levels[1..], vinv)).collect();
    let mut c = inverse_taylor(ar, parts, p);
    if lv.a != Fe::ONE {
        for (ci, &ai) in c.iter_mut().zip(&lv.a_inv_pows).skip(1) {
            *ci = ar.mul(*ci, ai);
        }
    }
    c
}

/// Writes `g(z) = Σ_{k<p} z^k G_k(z^p - z)`; returns the `G_k`, each of
/// length `n/p`. Additions only.
fn taylor(ar: &Arith, g: Vec<Fe>, p: usize) -> Vec<Vec<Fe>> {
    let n = g.len();
    if n == p {
        return g.into_iter().map(|c| vec![c]).collect();
    }
    let l = n / p;
    let lp = l / p;
    let mut rest = g;
    let mut out = vec![vec![Fe::ZERO; l]; p];
    for a in 0..p {
        // rest = q·D + r with D = z^l - z^{l/p}
        let len = rest.len();
        let mut q = vec![Fe::ZERO; len.saturating_sub(l)];
        for i in (l..len).rev() {
            let c = rest[i];
            if c.is_zero() {
                continue;
            }
            rest[i] = Fe::ZERO;
            q[i - l] = ar.add(q[i - l], c);
            rest[i - l + lp] = ar.add(rest[i - l + lp], c);
        }
        rest.truncate(l);
        let parts = taylor(ar, std::mem::replace(&mut rest, q), p);
        for (k, part) in parts.into_iter().enumerate() {
            out[k][a * lp..(a + 1) * lp].copy_from_slice(&part);
        }
    }
    out
}

/// Inverse of [`taylor`].
fn inverse_taylor(ar: &Arith, parts: Vec<Vec<Fe>>, p: usize) -> Vec<Fe> {
    let l = parts[0].len();
    let n = l * p;
    if l == 1 {
        return parts.into_iter().map(|v| v[0]).collect();
    }
    let lp = l / p;
    let gs: Vec<Vec<Fe>> = (0..p)
        .map(|a| {
            let sub: Vec<Vec<Fe>> = parts.iter().map(|pk| pk[a * lp..(a + 1) * lp].to_vec()).collect();
            inverse_taylor(ar, sub, p)
        })
        .collect();
    // Σ_a g_a D^a by Horner, D = z^l - z^{l/p}
    let mut acc = gs[p - 1].clone();
    for g in gs[..p - 1].iter().rev() {
        let mut next = vec![Fe::ZERO; acc.len() + l];
        for (i, &c) in acc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            next[i + l] = ar.add(next[i + l], c);
            next[i + lp] = ar.sub(next[i + lp], c);
        }
        for (i, &c) in g.iter().enumerate() {
            next[i] = ar.add(next[i], c);
        }
        acc = next;
    }
    acc.truncate(n);
    acc
}

fn expect_kind(domain: &EvalDomain, multiplicative: bool) -> Result<()> {
    match (&domain.kind, multiplicative) {
        (DomainKind::Multiplicative { .. }, true) | (DomainKind::Additive { .. }, false) => Ok(()),
        _ => Err(Error::BadDomain("domain kind does not match the transform".into())),
    }
}

/// `out[j] = f(ω^j)` on a multiplicative domain.
pub fn mult_fft_eval(ar: &Arith, coeffs: &[Fe], domain: &EvalDomain) -> Result<Vec<Fe>> {
    expect_kind(domain, true)?;
    domain.eval(ar, coeffs)
}

/// Inverse of [`mult_fft_eval`].
pub fn mult_fft_interp(ar: &Arith, values: &[Fe], domain: &EvalDomain) -> Result<Vec<Fe>> {
    expect_kind(domain, true)?;
    domain.interp(ar, values)
}

/// `out[j] = f(shift + Σ j_i w_{i+1})` on an additive domain.
pub fn add_fft_eval(ar: &Arith, coeffs: &[Fe], domain: &EvalDomain) -> Result<Vec<Fe>> {
    expect_kind(domain, false)?;
    domain.eval(ar, coeffs)
}

/// Inverse of [`add_fft_eval`].
pub fn add_fft_interp(ar: &Arith, values: &[Fe], domain: &EvalDomain) -> Result<Vec<Fe>> {
    expect_kind(domain, false)?;
    domain.interp(ar, values)
}

/// Evaluates on the full domain, then keeps the masked positions in mask
/// order.
pub fn base_mpe(ar: &Arith, coeffs: &[Fe], domain: &EvalDomain) -> Result<Vec<Fe>> {
    let full = domain.eval(ar, coeffs)?;
    Ok(match &domain.mask {
        Some(m) => m.iter().map(|&i| full[i]).collect(),
        None => full,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn horner(f: &Field, c: &[Fe], x: Fe) -> Fe {
        c.iter().rev().fold(Fe::ZERO, |acc, &ci| f.add(f.mul(acc, x), ci))
    }

    fn random_poly(f: &Field, n: usize, seed: u64) -> Vec<Fe> {
        let mut s = seed;
        (0..n)
            .map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                Fe(((s >> 33) % f.q()) as u32)
            })
            .collect()
    }

    fn check_domain(f: &Field, d: &EvalDomain, trials: u64) {
        let ops = OpCounter::new();
        let ar = f.counted(&ops);
        let n = d.len();
        for t in 0..trials {
            let c = random_poly(f, n, t);
            let v = d.eval(&ar, &c).unwrap();
            for (j, &pt) in d.points().iter().enumerate() {
                assert_eq!(v[j], horner(f, &c, pt), "point {j}");
            }
            assert_eq!(d.interp(&ar, &v).unwrap(), c);
        }
    }

    #[test]
    fn multiplicative_matches_horner() {
        let f16 = Field::default_for(2, 4).unwrap();
        let f256 = Field::default_for(2, 8).unwrap();
        let f81 = Field::default_for(3, 4).unwrap();
        check_domain(&f16, &EvalDomain::multiplicative(&f16, 15).unwrap(), 20);
        check_domain(&f16, &EvalDomain::multiplicative(&f16, 5).unwrap(), 20);
        check_domain(&f256, &EvalDomain::multiplicative(&f256, 255).unwrap(), 5);
        check_domain(&f81, &EvalDomain::multiplicative(&f81, 80).unwrap(), 5);
        check_domain(&f16, &EvalDomain::multiplicative(&f16, 1).unwrap(), 3);
    }

    #[test]
    fn additive_matches_horner() {
        let f16 = Field::default_for(2, 4).unwrap();
        let f64 = Field::default_for(2, 6).unwrap();
        let f81 = Field::default_for(3, 4).unwrap();
        check_domain(&f16, &EvalDomain::full_field(&f16).unwrap(), 20);
        check_domain(&f64, &EvalDomain::full_field(&f64).unwrap(), 10);
        check_domain(&f81, &EvalDomain::full_field(&f81).unwrap(), 5);
        let shifted = EvalDomain::additive(&f64, Fe(37), &[Fe(5), Fe(22), Fe(9)]).unwrap();
        check_domain(&f64, &shifted, 10);
        let odd = EvalDomain::additive(&f81, Fe(10), &[Fe(7), Fe(41)]).unwrap();
        check_domain(&f81, &odd, 10);
    }

    #[test]
    fn trivial_examples() {
        let f = Field::default_for(2, 4).unwrap();
        let ops = OpCounter::new();
        let ar = f.counted(&ops);
        let d = EvalDomain::multiplicative(&f, 15).unwrap();
        assert_eq!(mult_fft_eval(&ar, &[Fe(9)], &d).unwrap(), vec![Fe(9); 15]);
        assert_eq!(mult_fft_eval(&ar, &[Fe::ZERO, Fe::ONE], &d).unwrap(), d.points().to_vec());
        assert_eq!(mult_fft_interp(&ar, &[Fe::ZERO; 15], &d).unwrap(), vec![Fe::ZERO; 15]);
        assert!(matches!(mult_fft_eval(&ar, &[Fe::ONE; 16], &d), Err(Error::DegreeTooLarge { .. })));
        assert!(matches!(EvalDomain::multiplicative_with_bound(&f, 15, 3), Err(Error::NotSmooth { witness: 5, .. })));
        let a = EvalDomain::full_field(&f).unwrap();
        assert!(add_fft_eval(&ar, &[Fe::ONE], &d).is_err());
        assert_eq!(add_fft_eval(&ar, &[Fe(3)], &a).unwrap(), vec![Fe(3); 16]);
    }

    #[test]
    fn lagrange_unit_vector() {
        let f = Field::default_for(2, 4).unwrap();
        let ops = OpCounter::new();
        let ar = f.counted(&ops);
        let d = EvalDomain::multiplicative(&f, 15).unwrap();
        let mut e0 = vec![Fe::ZERO; 15];
        e0[0] = Fe::ONE;
        let c = mult_fft_interp(&ar, &e0, &d).unwrap();
        // naive Lagrange basis polynomial ∏_{j≠0} (x - ω^j)/(1 - ω^j)
        let mut lag = vec![Fe::ONE];
        for &pt in &d.points()[1..] {
            let s = f.inv(f.sub(Fe::ONE, pt)).unwrap();
            let mut next = vec![Fe::ZERO; lag.len() + 1];
            for (i, &li) in lag.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], f.mul(li, s));
                next[i] = f.sub(next[i], f.mul(li, f.mul(pt, s)));
            }
            lag = next;
        }
        assert_eq!(c, lag);
        assert!(!c[14].is_zero());
    }

    #[test]
    fn split_polynomial_vanishes_on_its_line() {
        let f = Field::default_for(2, 4).unwrap();
        let ops = OpCounter::new();
        let ar = f.counted(&ops);
        let w = Fe(6);
        let d = EvalDomain::additive(&f, Fe::ZERO, &[w]).unwrap();
        let c = [Fe::ZERO, f.neg(f.pow(w, 1)), Fe::ONE];
        assert!(matches!(add_fft_eval(&ar, &c, &d), Err(Error::DegreeTooLarge { .. })));
        // on a larger domain the same polynomial vanishes exactly on span(w)
        let big = EvalDomain::additive(&f, Fe::ZERO, &[w, Fe(1)]).unwrap();
        let v = add_fft_eval(&ar, &c, &big).unwrap();
        assert_eq!(&v[..2], &[Fe::ZERO, Fe::ZERO]);
        assert!(v[2..].iter().all(|x| !x.is_zero()));
    }

    #[test]
    fn masked_evaluation_on_trace_complement() {
        let f = Field::default_for(2, 4).unwrap();
        let ops = OpCounter::new();
        let ar = f.counted(&ops);
        let q: Vec<Fe> = f.elements().filter(|&a| !f.trace_to(2, a).unwrap().is_zero()).collect();
        assert_eq!(q.len(), 12);
        let d = EvalDomain::multiplicative(&f, 15).unwrap().restrict_to(&q).unwrap();
        let c = random_poly(&f, 15, 7);
        let v = base_mpe(&ar, &c, &d).unwrap();
        assert_eq!(v.len(), 12);
        for (x, y) in q.iter().zip(&v) {
            assert_eq!(*y, horner(&f, &c, *x));
        }
        let empty = EvalDomain::multiplicative(&f, 15).unwrap().with_mask(vec![]).unwrap();
        assert!(base_mpe(&ar, &c, &empty).unwrap().is_empty());
        let all = EvalDomain::multiplicative(&f, 15).unwrap().with_mask((0..15).collect()).unwrap();
        assert_eq!(base_mpe(&ar, &c, &all).unwrap(), d.eval(&ar, &c).unwrap());
    }

    #[test]
    fn mult_count_scaling() {
        let mut ratios = Vec::new();
        for (m, n) in [(4u32, 15u64), (8, 255), (12, 4095)] {
            let f = Field::default_for(2, m).unwrap();
            let d = EvalDomain::multiplicative(&f, n).unwrap();
            let ops = OpCounter::new();
            let c = random_poly(&f, n as usize, 1);
            d.eval(&f.counted(&ops), &c).unwrap();
            ratios.push(ops.snapshot().mul as f64 / (n as f64 * (n as f64).log2()));
        }
        let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
        assert!(max / min <= 2.5, "{ratios:?}");
    }

    proptest! {
        #[test]
        fn evaluation_is_linear(seed_a in any::<u64>(), seed_b in any::<u64>()) {
            let f = Field::default_for(2, 6).unwrap();
            let ops = OpCounter::new();
            let ar = f.counted(&ops);
            let d = EvalDomain::full_field(&f).unwrap();
            let a = random_poly(&f, 64, seed_a);
            let b = random_poly(&f, 64, seed_b);
            let sum: Vec<Fe> = a.iter().zip(&b).map(|(&x, &y)| f.add(x, y)).collect();
            let va = d.eval(&ar, &a).unwrap();
            let vb = d.eval(&ar, &b).unwrap();
            let vs = d.eval(&ar, &sum).unwrap();
            for j in 0..64 {
                prop_assert_eq!(vs[j], f.add(va[j], vb[j]));
            }
        }

        #[test]
        fn multiplicative_round_trip(seed in any::<u64>()) {
            let f = Field::default_for(2, 6).unwrap();
            let ops = OpCounter::new();
            let ar = f.counted(&ops);
            let d = EvalDomain::multiplicative(&f, 63).unwrap();
            let c = random_poly(&f, 63, seed);
            prop_assert_eq!(d.interp(&ar, &d.eval(&ar, &c).unwrap()).unwrap(), c);
        }
    }
}
