//! Small dense matrices over GF(q): inversion and rank by Gaussian
//! elimination.

use super::{Arith, Fe};

/// Inverse of a square matrix given by rows, or `None` if singular.
pub fn invert(ar: &Arith, m: &[Vec<Fe>]) -> Option<Vec<Vec<Fe>>> {
    let n = m.len();
    let mut a: Vec<Vec<Fe>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Fe::ONE } else { Fe::ZERO }));
            r
        })
        .collect();
    for c in 0..n {
        let sel = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, sel);
        let inv = ar.inv(a[c][c]).ok()?;
        for v in a[c].iter_mut() {
            *v = ar.mul(*v, inv);
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..2 * n {
                    let t = ar.mul(f, a[c][j]);
                    a[i][j] = ar.sub(a[i][j], t);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of a matrix given by rows.
pub fn rank(ar: &Arith, rows: &[Vec<Fe>]) -> usize {
    let mut a: Vec<Vec<Fe>> = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(sel) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, sel);
        let inv = ar.inv(a[r][c]).expect("pivot is nonzero");
        for i in r + 1..a.len() {
            if !a[i][c].is_zero() {
                let f = ar.mul(a[i][c], inv);
                for j in c..ncols {
                    let t = ar.mul(f, a[r][j]);
                    a[i][j] = ar.sub(a[i][j], t);
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Vandermonde matrix `V[i][k] = xs[i]^k`.
pub fn vandermonde(ar: &Arith, xs: &[Fe]) -> Vec<Vec<Fe>> {
    xs.iter()
        .map(|&x| {
            let mut row = Vec::with_capacity(xs.len());
            let mut acc = Fe::ONE;
            for _ in 0..xs.len() {
                row.push(acc);
                acc = ar.mul(acc, x);
            }
            row
        })
        .collect()
}
