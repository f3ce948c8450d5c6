//! Pohlig–Hellman discrete logarithms in the multiplicative group.

use std::collections::HashMap;

use super::{Fe, Field};
use crate::error::{Error, Result};

const LINEAR_SEARCH_LIMIT: u64 = 64;

/// Returns `e` in `[0, q-1)` with `g^e = a` for the field's primitive
/// generator `g`.
pub fn pohlig_hellman(field: &Field, a: Fe) -> Result<u64> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let n = field.q() - 1;
    let g = field.primitive_generator();
    let mut residues: Vec<(u64, u64)> = Vec::new();
    let factors = field.order_factors();
    let mut i = 0;
    while i < factors.len() {
        let l = factors[i];
        let mut e = 0u32;
        while i < factors.len() && factors[i] == l {
            e += 1;
            i += 1;
        }
        residues.push((prime_power_log(field, g, a, n, l, e), l.pow(e)));
    }
    Ok(crt(&residues))
}

/// Log of `a` modulo `l^e`, one base-l digit at a time.
fn prime_power_log(field: &Field, g: Fe, a: Fe, n: u64, l: u64, e: u32) -> u64 {
    let le = l.pow(e);
    let gamma = field.pow(g, n / le);
    let h = field.pow(a, n / le);
    let base = field.pow(g, n / l);
    let gamma_inv = field.inv(gamma).expect("generator is nonzero");
    let mut x = 0u64;
    let mut lk = 1u64;
    for k in 0..e {
        let shifted = field.mul(field.pow(gamma_inv, x), h);
        let hk = field.pow(shifted, l.pow(e - 1 - k));
        x += small_log(field, base, hk, l) * lk;
        lk *= l;
    }
    x
}

/// Log of `h` to a base of prime order `l`.
fn small_log(field: &Field, base: Fe, h: Fe, l: u64) -> u64 {
    if l <= LINEAR_SEARCH_LIMIT {
        let mut cur = Fe::ONE;
        for d in 0..l {
            if cur == h {
                return d;
            }
            cur = field.mul(cur, base);
        }
        unreachable!("element lies in the order-l subgroup");
    }
    let step = (l as f64).sqrt().ceil() as u64;
    let mut baby = HashMap::with_capacity(step as usize);
    let mut cur = Fe::ONE;
    for j in 0..step {
        baby.entry(cur).or_insert(j);
        cur = field.mul(cur, base);
    }
    let giant = field.inv(field.pow(base, step)).expect("nonzero");
    let mut gamma = h;
    for i in 0..=step {
        if let Some(&j) = baby.get(&gamma) {
            return (i * step + j) % l;
        }
        gamma = field.mul(gamma, giant);
    }
    unreachable!("element lies in the order-l subgroup");
}

fn crt(residues: &[(u64, u64)]) -> u64 {
    let mut x: u128 = 0;
    let mut modulus: u128 = 1;
    for &(r, m) in residues {
        let (r, m) = (r as u128, m as u128);
        // find t with x + modulus * t = r (mod m)
        let inv = mod_inverse(modulus % m, m);
        let diff = (r + m - x % m) % m;
        let t = diff * inv % m;
        x += modulus * t;
        modulus *= m;
    }
    x as u64
}

fn mod_inverse(a: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m as i128) as u128
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logs_match_powers() {
        for (p, m) in [(2, 4), (2, 8), (3, 4), (2, 12), (2, 16), (7, 1)] {
            let f = Field::default_for(p, m).unwrap();
            let g = f.primitive_generator();
            let n = f.q() - 1;
            for e in (0..n).step_by((n / 97).max(1) as usize) {
                assert_eq!(pohlig_hellman(&f, f.pow(g, e)).unwrap(), e);
            }
        }
    }

    #[test]
    fn large_prime_factor_uses_giant_steps() {
        // 65537 - 1 = 2^16 and 65519 - 1 = 2 * 32759
        let f = Field::default_for(65519, 1).unwrap();
        let g = f.primitive_generator();
        for e in [0u64, 1, 32758, 40000, 65517] {
            assert_eq!(pohlig_hellman(&f, f.pow(g, e)).unwrap(), e);
        }
    }

    #[test]
    fn zero_rejected() {
        let f = Field::default_for(2, 4).unwrap();
        assert_eq!(pohlig_hellman(&f, Fe::ZERO), Err(Error::ZeroInput));
    }
}
