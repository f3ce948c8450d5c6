//! Arithmetic over the prime field GF(p): integer helpers, dense
//! polynomials and small matrices. Everything here works on plain `u32`
//! residues and is used to build and interrogate the extension field.

/// Deterministic trial-division primality test (inputs are at most 2^32).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization with multiplicity, ascending.
pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        while n % d == 0 {
            out.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    add_mod(a, p - b % p, p)
}

pub fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p as u64 - 2, p)
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo the monic-or-not polynomial `f` over GF(p).
pub fn poly_rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut f = f.to_vec();
    trim(&mut f);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while r.len() > df {
        let top = r.len() - 1;
        let c = mul_mod(r[top], lead_inv, p);
        for (i, &fi) in f.iter().enumerate() {
            let pos = top - df + i;
            r[pos] = sub_mod(r[pos], mul_mod(c, fi, p), p);
        }
        trim(&mut r);
    }
    r
}

pub fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(ai, bj, p), p);
        }
    }
    trim(&mut out);
    out
}

pub fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    poly_rem(&poly_mul(a, b, p), f, p)
}

pub fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin-style irreducibility test: `f` of degree m is irreducible iff
/// gcd(x^(p^k) - x, f) = 1 for every k <= m/2.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=m / 2 {
        // xp <- xp^p mod f
        let mut acc = vec![1u32];
        let mut base = xp.clone();
        let mut e = p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, &f, p);
            }
            base = poly_mulmod(&base, &base, &f, p);
            e >>= 1;
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = sub_mod(diff[1], 1, p);
        trim(&mut diff);
        if diff.is_empty() {
            return false;
        }
        let g = poly_gcd(&diff, &f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Row-reduced echelon form over GF(p). Returns the pivot column of each
/// nonzero row; `rows` is reduced in place.
pub fn rref(rows: &mut [Vec<u32>], p: u32) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    let t = mul_mod(f, rows[r][j], p);
                    rows[i][j] = sub_mod(rows[i][j], t, p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `A x = b` for an `nrows x ncols` matrix given by columns.
/// Returns a particular solution and a basis of the kernel, or `None` if
/// the system is inconsistent.
pub fn solve_affine(
    columns: &[Vec<u32>],
    rhs: &[u32],
    p: u32,
) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
    let ncols = columns.len();
    let nrows = rhs.len();
    let mut rows: Vec<Vec<u32>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<u32> = columns.iter().map(|c| c[i]).collect();
            row.push(rhs[i]);
            row
        })
        .collect();
    let pivots = rref(&mut rows, p);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut particular = vec![0u32; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = rows[r][ncols];
    }
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = sub_mod(0, rows[r][free], p);
        }
        kernel.push(v);
    }
    Some((particular, kernel))
}
