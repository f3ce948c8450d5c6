//! Exact arithmetic in GF(p^m).
//!
//! Elements are stored by their integer codec value `Σ c_i p^i`, where
//! `c_0 .. c_{m-1}` are the coordinates in the polynomial basis
//! `1, x, .., x^{m-1}` modulo the field's defining polynomial. Fields up to
//! 2^16 elements multiply through log/antilog tables; larger ones fall back
//! to reduction modulo the defining polynomial.
//!
//! [`Field`] is immutable and shareable. Operation counting goes through
//! [`Arith`], a lightweight view pairing a field with a caller-owned
//! [`OpCounter`].

pub mod dlog;
pub mod gfp;
pub mod linearized;
pub mod matrix;

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use linearized::LinearizedPoly;

const TABLE_LIMIT: u64 = 1 << 16;

/// Default smoothness bound for FFT sizes and extension degrees.
pub const DEFAULT_SMOOTH_BOUND: u64 = 64;

/// A field element, identified by its integer codec value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub(crate) u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// The integer codec value.
    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fe({})", self.0)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable description of GF(p^m).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    /// Monic degree-m polynomial over GF(p), constant term first.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    /// The shipped defining polynomial for GF(p^m), or the smallest monic
    /// irreducible one when no default is listed.
    pub fn default_for(p: u32, m: u32) -> Result<FieldSpec> {
        if !gfp::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::ReducibleModulus(0));
        }
        let modulus: Vec<u32> = match (p, m) {
            (_, 1) => vec![0, 1],
            (2, 2) => vec![1, 1, 1],
            (2, 3) => vec![1, 1, 0, 1],
            (2, 4) => vec![1, 1, 0, 0, 1],
            (2, 5) => vec![1, 0, 1, 0, 0, 1],
            (2, 6) => vec![1, 1, 0, 0, 0, 0, 1],
            (2, 8) => vec![1, 0, 1, 1, 1, 0, 0, 0, 1],
            (2, 12) => vec![1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1],
            (2, 16) => vec![1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1],
            (3, 2) => vec![2, 2, 1],
            (3, 3) => vec![1, 2, 0, 1],
            (3, 4) => vec![2, 1, 0, 0, 1],
            _ => smallest_irreducible(p, m)?,
        };
        Ok(FieldSpec { p, m, modulus })
    }
}

fn smallest_irreducible(p: u32, m: u32) -> Result<Vec<u32>> {
    let q = (p as u64).checked_pow(m).ok_or(Error::FieldTooLarge)?;
    for code in 1..q {
        let mut f: Vec<u32> = digits(code, p, m);
        f.push(1);
        if gfp::is_irreducible(&f, p) {
            return Ok(f);
        }
    }
    Err(Error::ReducibleModulus(m))
}

fn digits(mut v: u64, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = (v % p as u64) as u32;
            v /= p as u64;
            d
        })
        .collect()
}

#[derive(Clone)]
struct Tables {
    log: Vec<u32>,
    exp: Vec<u32>,
}

/// GF(p^m) with precomputed structure (generator, order factorization,
/// optional log tables).
#[derive(Clone)]
pub struct Field {
    spec: FieldSpec,
    p: u32,
    m: u32,
    q: u64,
    /// Modulus as a bit mask when p = 2.
    modulus_bits: u64,
    tables: Option<Tables>,
    generator: Fe,
    order_factors: Vec<u64>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.m)
    }
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field> {
        let FieldSpec { p, m, ref modulus } = spec;
        if !gfp::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let q = (p as u64).checked_pow(m).ok_or(Error::FieldTooLarge)?;
        if q > 1 << 32 {
            return Err(Error::FieldTooLarge);
        }
        if modulus.len() != m as usize + 1
            || modulus[m as usize] != 1
            || modulus.iter().any(|&c| c >= p)
            || !gfp::is_irreducible(modulus, p)
        {
            return Err(Error::ReducibleModulus(m));
        }
        let modulus_bits = if p == 2 {
            modulus.iter().enumerate().fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i))
        } else {
            0
        };
        let mut field = Field {
            p,
            m,
            q,
            modulus_bits,
            tables: None,
            generator: Fe::ONE,
            order_factors: gfp::factorize(q - 1),
            spec,
        };
        field.generator = field.find_generator();
        if q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    pub fn default_for(p: u32, m: u32) -> Result<Field> {
        Field::new(FieldSpec::default_for(p, m)?)
    }

    fn find_generator(&self) -> Fe {
        let n = self.q - 1;
        let mut distinct = self.order_factors.clone();
        distinct.dedup();
        (1..self.q)
            .map(|v| Fe(v as u32))
            .find(|&g| distinct.iter().all(|&l| self.pow_slow(g, n / l) != Fe::ONE))
            .expect("multiplicative group is cyclic")
    }

    fn build_tables(&self) -> Tables {
        let n = (self.q - 1) as usize;
        let mut log = vec![0u32; self.q as usize];
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut x = Fe::ONE;
        for i in 0..n {
            exp[i] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_slow(x, self.generator);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        Tables { log, exp }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// Characteristic.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Extension degree over the prime field.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Field size.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Prime factors of q - 1 with multiplicity, ascending.
    pub fn order_factors(&self) -> &[u64] {
        &self.order_factors
    }

    /// Element with the given codec value.
    pub fn elem(&self, v: u64) -> Result<Fe> {
        if v >= self.q {
            return Err(Error::Format(format!("{v} is not an element of GF({})", self.q)));
        }
        Ok(Fe(v as u32))
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, k: u64) -> Fe {
        Fe((k % self.p as u64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.q).map(|v| Fe(v as u32))
    }

    pub fn coords(&self, a: Fe) -> Vec<u32> {
        digits(a.0 as u64, self.p, self.m)
    }

    pub fn from_coords(&self, c: &[u32]) -> Fe {
        let v = c.iter().rev().fold(0u64, |acc, &d| acc * self.p as u64 + d as u64);
        Fe(v as u32)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        self.digitwise(a, b, |x, y, p| gfp::add_mod(x, y, p))
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        self.digitwise(a, b, |x, y, p| gfp::sub_mod(x, y, p))
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.sub(Fe::ZERO, a)
    }

    fn digitwise(&self, a: Fe, b: Fe, op: impl Fn(u32, u32, u32) -> u32) -> Fe {
        let p = self.p as u64;
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.m {
            let d = op((x % p) as u32, (y % p) as u32, self.p) as u64;
            out += d * scale;
            scale *= p;
            x /= p;
            y /= p;
        }
        Fe(out as u32)
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        match &self.tables {
            Some(t) => Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            let m = self.m;
            let (x, y) = (a.0 as u64, b.0 as u64);
            let mut r: u64 = 0;
            for i in 0..m {
                if (y >> i) & 1 == 1 {
                    r ^= x << i;
                }
            }
            for i in (m..2 * m).rev() {
                if (r >> i) & 1 == 1 {
                    r ^= self.modulus_bits << (i - m);
                }
            }
            return Fe(r as u32);
        }
        let c = gfp::poly_mulmod(&self.coords(a), &self.coords(b), &self.spec.modulus, self.p);
        self.from_coords(&c)
    }

    fn pow_slow(&self, mut a: Fe, mut e: u64) -> Fe {
        let mut r = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_slow(r, a);
            }
            a = self.mul_slow(a, a);
            e >>= 1;
        }
        r
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let n = self.q - 1;
                let l = (t.log[a.0 as usize] as u64 * (e % n)) % n;
                Fe(t.exp[l as usize])
            }
            None => self.pow_slow(a, e % (self.q - 1)),
        }
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let n = (self.q - 1) as u32;
                Fe(t.exp[((n - t.log[a.0 as usize]) % n) as usize])
            }
            None => self.pow_slow(a, self.q - 2),
        })
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `k · a` for an integer scalar `k` (repeated addition in GF(p)).
    pub fn scale(&self, k: u64, a: Fe) -> Fe {
        self.mul(self.from_int(k), a)
    }

    /// Generator of the multiplicative group (order exactly q - 1).
    pub fn primitive_generator(&self) -> Fe {
        self.generator
    }

    /// Element of multiplicative order exactly `n`.
    pub fn root_of_unity(&self, n: u64) -> Result<Fe> {
        if n == 0 || (self.q - 1) % n != 0 {
            return Err(Error::NoSuchRoot(n));
        }
        Ok(self.pow(self.generator, (self.q - 1) / n))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: Fe) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut ord = self.q - 1;
        let mut distinct = self.order_factors.clone();
        distinct.dedup();
        for l in distinct {
            while ord % l == 0 && self.pow(a, ord / l) == Fe::ONE {
                ord /= l;
            }
        }
        Ok(ord)
    }

    /// Trace from GF(q) down to GF(p^sub): `a + a^κ + .. + a^{κ^{t-1}}`.
    pub fn trace_to(&self, sub_degree: u32, a: Fe) -> Result<Fe> {
        if sub_degree == 0 || self.m % sub_degree != 0 {
            return Err(Error::InvalidSubfield { sub: sub_degree, m: self.m });
        }
        let kappa = (self.p as u64).pow(sub_degree);
        let mut acc = Fe::ZERO;
        let mut term = a;
        for _ in 0..self.m / sub_degree {
            acc = self.add(acc, term);
            term = self.pow(term, kappa);
        }
        Ok(acc)
    }

    pub fn is_mth_power(&self, a: Fe, m: u64) -> Result<bool> {
        if m == 0 || (self.q - 1) % m != 0 {
            return Err(Error::NoSuchRoot(m));
        }
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self.pow(a, (self.q - 1) / m) == Fe::ONE)
    }

    /// The m-th root of `a` with the smallest discrete logarithm.
    pub fn mth_root(&self, a: Fe, m: u64) -> Result<Fe> {
        if m == 0 || (self.q - 1) % m != 0 {
            return Err(Error::NoSuchRoot(m));
        }
        let e = self.discrete_log(a)?;
        if e % m != 0 {
            return Err(Error::NotAnMthPower(m));
        }
        Ok(self.pow(self.generator, e / m))
    }

    /// Discrete logarithm to the base [`Field::primitive_generator`].
    pub fn discrete_log(&self, a: Fe) -> Result<u64> {
        dlog::pohlig_hellman(self, a)
    }

    pub fn counted<'a>(&'a self, ops: &'a OpCounter) -> Arith<'a> {
        Arith { field: self, ops }
    }
}

/// Smoothness bound, from `AGFFT_SMOOTH_BOUND` when set.
pub fn smooth_bound() -> u64 {
    std::env::var("AGFFT_SMOOTH_BOUND")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SMOOTH_BOUND)
}

/// Ascending prime factorization of `n`, failing on the first prime above
/// `bound`.
pub fn factor_smooth(n: u64, bound: u64) -> Result<Vec<u64>> {
    let f = gfp::factorize(n);
    if let Some(&w) = f.iter().find(|&&l| l > bound) {
        return Err(Error::NotSmooth { n, bound, witness: w });
    }
    Ok(f)
}

/// Snapshot of field-operation counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounts {
    pub mul: u64,
    pub add: u64,
    pub inv: u64,
}

impl Add for OpCounts {
    type Output = OpCounts;
    fn add(self, o: OpCounts) -> OpCounts {
        OpCounts { mul: self.mul + o.mul, add: self.add + o.add, inv: self.inv + o.inv }
    }
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, o: OpCounts) {
        *self = *self + o;
    }
}

/// Per-call accumulator of field operations.
#[derive(Debug, Default)]
pub struct OpCounter {
    mul: Cell<u64>,
    add: Cell<u64>,
    inv: Cell<u64>,
}

impl OpCounter {
    pub fn new() -> OpCounter {
        OpCounter::default()
    }

    pub fn snapshot(&self) -> OpCounts {
        OpCounts { mul: self.mul.get(), add: self.add.get(), inv: self.inv.get() }
    }

    pub fn reset(&self) {
        self.mul.set(0);
        self.add.set(0);
        self.inv.set(0);
    }
}

/// Counting view over a [`Field`].
#[derive(Clone, Copy)]
pub struct Arith<'a> {
    pub field: &'a Field,
    ops: &'a OpCounter,
}

impl<'a> Arith<'a> {
    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.ops.add.set(self.ops.add.get() + 1);
        self.field.add(a, b)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.ops.add.set(self.ops.add.get() + 1);
        self.field.sub(a, b)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.sub(Fe::ZERO, a)
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.ops.mul.set(self.ops.mul.get() + 1);
        self.field.mul(a, b)
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        self.ops.inv.set(self.ops.inv.get() + 1);
        self.field.inv(a)
    }

    /// Square-and-multiply; every multiplication is counted.
    pub fn pow(&self, mut a: Fe, mut e: u64) -> Fe {
        let mut r = Fe::ONE;
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                r = if first { a } else { self.mul(r, a) };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                a = self.mul(a, a);
            }
        }
        r
    }

    /// Evaluates `Σ coeffs[k] x^k` by Horner's rule.
    pub fn horner(&self, coeffs: impl DoubleEndedIterator<Item = Fe>, x: Fe) -> Fe {
        let mut it = coeffs.rev();
        let Some(mut acc) = it.next() else {
            return Fe::ZERO;
        };
        for c in it {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }
}
