//! Monomial bases of `L(λP∞)`, genus and dimension, and the message ↔
//! function correspondence.
//!
//! A monomial of a descriptor with `s` stacked extensions has `s + 1`
//! exponents: `exps[0]` for the rational variable and `exps[k]` for the
//! generator of stage `k`. For an Artin–Schreier stage the exponent `i`
//! stands for the product `y^{i_0} ℓ_1(y)^{i_1} ⋯` over the base-p digits
//! of `i`; for a Kummer stage it is the plain power `y^i`. A stage monomial
//! `y^i · b` has pole order `i·d + m·pole(b)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::textio;
use crate::tower::{Base, ExtensionDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub exps: Vec<u64>,
    pub pole: u64,
}

/// An element of `L(λP∞)`, dense over [`basis_for`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionRepr {
    pub lambda: u64,
    pub coeffs: Vec<Fe>,
}

fn base_basis(desc: &ExtensionDescriptor, lambda: u64) -> Vec<Monomial> {
    match &desc.base {
        Base::Rational => (0..=lambda).map(|j| Monomial { exps: vec![j], pole: j }).collect(),
        Base::Nested(b) => stage_basis(b, b.degree(), lambda),
    }
}

/// Basis of the top stage's intermediate field of degree `m` over the base.
fn stage_basis(desc: &ExtensionDescriptor, m: u64, lambda: u64) -> Vec<Monomial> {
    let d = desc.d();
    let mut out = Vec::new();
    for i in 0..m {
        if i * d > lambda {
            break;
        }
        for b in base_basis(desc, (lambda - i * d) / m) {
            let mut exps = b.exps;
            exps.push(i);
            out.push(Monomial { exps, pole: i * d + m * b.pole });
        }
    }
    out
}

fn sort_basis(v: &mut [Monomial]) {
    v.sort_by(|a, b| a.pole.cmp(&b.pole).then_with(|| a.exps.iter().rev().cmp(b.exps.iter().rev())));
}

/// Monomials with pole order at most `λ`, ascending by pole order (ties by
/// exponents, last coordinate first).
pub fn basis_for(desc: &ExtensionDescriptor, lambda: u64) -> Vec<Monomial> {
    let mut v = stage_basis(desc, desc.degree(), lambda);
    sort_basis(&mut v);
    v
}

/// Basis of `E_j`, the fixed field of `G_j` inside the top stage, with pole
/// orders measured in `E_j`.
pub fn level_basis(desc: &ExtensionDescriptor, j: usize, lambda: u64) -> Result<Vec<Monomial>> {
    let radices = desc.radices()?;
    if j > radices.len() {
        return Err(Error::InvalidDescriptor(format!("level {j} exceeds {}", radices.len())));
    }
    let below: u64 = radices[..j].iter().product();
    let mut v = stage_basis(desc, desc.degree() / below, lambda);
    sort_basis(&mut v);
    Ok(v)
}

/// Upper bound on the conductor of the pole-order semigroup.
fn conductor_bound(desc: &ExtensionDescriptor) -> u64 {
    let base = desc.base_descriptor().map_or(0, conductor_bound);
    (desc.degree() - 1) * desc.d() + desc.degree() * base
}

/// Number of gaps of the pole-order semigroup, counted directly.
pub fn genus(desc: &ExtensionDescriptor) -> u64 {
    let bound = conductor_bound(desc);
    let mut hit = vec![false; bound as usize + 1];
    for mono in basis_for(desc, bound) {
        hit[mono.pole as usize] = true;
    }
    hit.iter().filter(|h| !**h).count() as u64
}

/// `|basis_for(λ)|`, checked against `λ + 1 - g` when `λ ≥ 2g - 1`.
pub fn dimension(desc: &ExtensionDescriptor, lambda: u64) -> Result<usize> {
    let k = basis_for(desc, lambda).len();
    let g = genus(desc);
    if lambda + 1 >= 2 * g && lambda >= 2 * g.max(1) - 1 {
        let expected = (lambda + 1 - g) as usize;
        if k != expected {
            return Err(Error::DimensionMismatch { got: k, expected });
        }
    }
    Ok(k)
}

pub fn message_to_function(desc: &ExtensionDescriptor, lambda: u64, message: &[Fe]) -> Result<FunctionRepr> {
    let k = basis_for(desc, lambda).len();
    if message.len() != k {
        return Err(Error::LengthMismatch { expected: k, got: message.len() });
    }
    Ok(FunctionRepr { lambda, coeffs: message.to_vec() })
}

pub fn function_to_message(f: &FunctionRepr) -> Vec<Fe> {
    f.coeffs.clone()
}

fn index_of(basis: &[Monomial]) -> HashMap<&[u64], usize> {
    basis.iter().enumerate().map(|(i, m)| (m.exps.as_slice(), i)).collect()
}

/// Splits a function on the level-`(j-1)` basis into the `p_j` parts
/// `f = Σ_k y_{j-1}^k f_k`, each on the level-`j` basis with pole bound
/// `⌊λ/p_j⌋`. Pure re-indexing.
pub fn split_by_y(desc: &ExtensionDescriptor, j: usize, f: &FunctionRepr) -> Result<Vec<FunctionRepr>> {
    if j == 0 {
        return Err(Error::InvalidDescriptor("levels are numbered from 1".into()));
    }
    let radices = desc.radices()?;
    let p = radices[j - 1];
    let src = level_basis(desc, j - 1, f.lambda)?;
    if src.len() != f.coeffs.len() {
        return Err(Error::LengthMismatch { expected: src.len(), got: f.coeffs.len() });
    }
    let lam = f.lambda / p;
    let dst = level_basis(desc, j, lam)?;
    let idx = index_of(&dst);
    let mut parts = vec![FunctionRepr { lambda: lam, coeffs: vec![Fe::ZERO; dst.len()] }; p as usize];
    for (mono, &c) in src.iter().zip(&f.coeffs) {
        let top = *mono.exps.last().expect("stage exponent");
        let mut exps = mono.exps.clone();
        *exps.last_mut().expect("stage exponent") = top / p;
        let at = idx[exps.as_slice()];
        parts[(top % p) as usize].coeffs[at] = c;
    }
    Ok(parts)
}

/// Inverse of [`split_by_y`].
pub fn reassemble(desc: &ExtensionDescriptor, j: usize, parts: &[FunctionRepr], lambda: u64) -> Result<FunctionRepr> {
    let radices = desc.radices()?;
    let p = radices[j - 1];
    let dst = level_basis(desc, j - 1, lambda)?;
    let idx = index_of(&dst);
    let lam = lambda / p;
    let src = level_basis(desc, j, lam)?;
    let mut out = FunctionRepr { lambda, coeffs: vec![Fe::ZERO; dst.len()] };
    for (k, part) in parts.iter().enumerate() {
        for (mono, &c) in src.iter().zip(&part.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut exps = mono.exps.clone();
            *exps.last_mut().expect("stage exponent") = exps[exps.len() - 1] * p + k as u64;
            let at = idx
                .get(exps.as_slice())
                .ok_or_else(|| Error::InvalidDescriptor(format!("monomial {exps:?} exceeds the pole bound")))?;
            out.coeffs[*at] = c;
        }
    }
    Ok(out)
}

/// Short descriptor hash used in file headers.
pub fn short_hash(desc: &ExtensionDescriptor) -> String {
    desc.hash()[..16].to_string()
}

pub fn write_function(desc: &ExtensionDescriptor, f: &FunctionRepr) -> String {
    textio::write(
        "function",
        &[("hash", short_hash(desc)), ("lambda", f.lambda.to_string()), ("k", f.coeffs.len().to_string())],
        &f.coeffs,
    )
}

/// Reads a function file written for `desc` at pole bound `lambda`. A
/// headerless list of values is accepted.
pub fn read_function(field: &Field, desc: &ExtensionDescriptor, lambda: u64, text: &str) -> Result<FunctionRepr> {
    let k = basis_for(desc, lambda).len();
    let (header, coeffs) = textio::read(text, k, field.q())?;
    if let Some(h) = header {
        h.expect("hash", &short_hash(desc))?;
        h.expect("lambda", &lambda.to_string())?;
        h.expect("k", &k.to_string())?;
    }
    Ok(FunctionRepr { lambda, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{linearized, FieldSpec};
    use crate::tower::ExtensionDescriptor;
    use proptest::prelude::*;

    fn spec16() -> FieldSpec {
        FieldSpec::default_for(2, 4).unwrap()
    }

    fn hermitian() -> ExtensionDescriptor {
        let f = Field::new(spec16()).unwrap();
        let w = linearized::greedy_basis(&f, &f.elements().skip(1).filter(|&a| f.pow(a, 4) == a).collect::<Vec<_>>());
        let mut u = vec![Fe::ZERO; 6];
        u[5] = Fe::ONE;
        ExtensionDescriptor::artin_schreier(&f, w, u, Base::Rational)
    }

    fn kummer_hermitian() -> ExtensionDescriptor {
        let f = Field::new(spec16()).unwrap();
        ExtensionDescriptor::kummer(&f, 5, vec![Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ONE], Base::Rational)
    }

    fn lattice_count(m: u64, d: u64, lambda: u64) -> usize {
        (0..m).flat_map(|i| (0..=lambda).map(move |j| (i, j))).filter(|&(i, j)| i * d + j * m <= lambda).count()
    }

    #[test]
    fn basis_small_cases() {
        let h = hermitian();
        assert_eq!(basis_for(&h, 0), vec![Monomial { exps: vec![0, 0], pole: 0 }]);
        let b = basis_for(&h, 60);
        assert_eq!(b.len(), lattice_count(4, 5, 60));
        assert_eq!(b.len(), 55);
        let poles: Vec<u64> = b.iter().map(|m| m.pole).collect();
        let mut dedup = poles.clone();
        dedup.dedup();
        assert_eq!(poles, dedup, "plane poles are distinct and sorted");
    }

    #[test]
    fn genus_and_dimension() {
        let h = hermitian();
        assert_eq!(genus(&h), 6);
        assert_eq!(genus(&kummer_hermitian()), 6);
        assert_eq!(dimension(&h, 60).unwrap(), 55);
        assert_eq!(dimension(&h, 11).unwrap(), 6);
        // below 2g - 1 the count is the nongap count
        let nongaps_below_10 = (0..=10u64).filter(|&n| (0..4).any(|i| n >= 5 * i && (n - 5 * i) % 4 == 0)).count();
        assert_eq!(basis_for(&h, 10).len(), nongaps_below_10);
        let f = Field::new(spec16()).unwrap();
        let rational = ExtensionDescriptor::kummer(&f, 1, vec![Fe::ZERO, Fe::ONE], Base::Rational);
        assert_eq!(genus(&rational), 0);
    }

    #[test]
    fn message_maps() {
        let h = hermitian();
        let zero = message_to_function(&h, 60, &[Fe::ZERO; 55]).unwrap();
        assert!(zero.coeffs.iter().all(|c| c.is_zero()));
        assert!(matches!(message_to_function(&h, 60, &[Fe::ZERO; 3]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn split_examples() {
        let k = kummer_hermitian();
        let b = level_basis(&k, 0, 20).unwrap();
        let mut f = FunctionRepr { lambda: 20, coeffs: vec![Fe::ZERO; b.len()] };
        f.coeffs[0] = Fe(7);
        let parts = split_by_y(&k, 1, &f).unwrap();
        assert_eq!(parts.len(), 5);
        assert_eq!(parts[0].coeffs[0], Fe(7));
        assert!(parts[1..].iter().all(|p| p.coeffs.iter().all(|c| c.is_zero())));
        // f = y
        let y_at = b.iter().position(|m| m.exps == vec![0, 1]).unwrap();
        let mut g = FunctionRepr { lambda: 20, coeffs: vec![Fe::ZERO; b.len()] };
        g.coeffs[y_at] = Fe::ONE;
        let parts = split_by_y(&k, 1, &g).unwrap();
        assert_eq!(parts[1].coeffs[0], Fe::ONE);
        assert!(parts[0].coeffs.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn file_round_trip() {
        let h = hermitian();
        let f = Field::new(spec16()).unwrap();
        let fun = FunctionRepr { lambda: 12, coeffs: (0..basis_for(&h, 12).len() as u32).map(Fe).collect() };
        let text = write_function(&h, &fun);
        assert_eq!(read_function(&f, &h, 12, &text).unwrap(), fun);
        assert!(read_function(&f, &h, 13, &text).is_err());
    }

    proptest! {
        #[test]
        fn split_reassemble_identity(seed in any::<u64>(), lambda in 0u64..64, level in 1usize..3) {
            let h = hermitian();
            let src = level_basis(&h, level - 1, lambda).unwrap();
            let mut s = seed;
            let coeffs = (0..src.len()).map(|_| { s = s.wrapping_mul(6364136223846793005).wrapping_add(1); Fe((s >> 60) as u32) }).collect();
            let f = FunctionRepr { lambda, coeffs };
            let parts = split_by_y(&h, level, &f).unwrap();
            let p = 2u64;
            for part in &parts {
                let lb = level_basis(&h, level, lambda / p).unwrap();
                prop_assert!(lb.iter().all(|m| m.pole <= lambda / p));
                prop_assert_eq!(part.coeffs.len(), lb.len());
            }
            prop_assert_eq!(reassemble(&h, level, &parts, lambda).unwrap(), f);
        }

        #[test]
        fn filtration_is_monotone(a in 0u64..80, b in 0u64..80) {
            let h = kummer_hermitian();
            let (lo, hi) = (a.min(b), a.max(b));
            let small = basis_for(&h, lo);
            let big = basis_for(&h, hi);
            prop_assert!(small.iter().all(|m| big.contains(m)));
        }
    }
}
