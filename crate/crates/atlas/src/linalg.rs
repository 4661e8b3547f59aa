//! Dense exact linear algebra over `BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;
pub type Matrix = Vec<Vec<Q>>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zeros(r: usize, c: usize) -> Matrix {
    vec![vec![Q::zero(); c]; r]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn is_zero(m: &Matrix) -> bool {
    m.iter().all(|row| row.iter().all(Zero::is_zero))
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let c = if k == 0 { 0 } else { b[0].len() };
    let mut out = zeros(n, c);
    for i in 0..n {
        for (l, brow) in b.iter().enumerate() {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..c {
                if !brow[j].is_zero() {
                    out[i][j] += &a[i][l] * &brow[j];
                }
            }
        }
    }
    out
}

/// Row echelon form in place; returns the pivot columns.
fn echelon(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut w = m.clone();
    echelon(&mut w).len()
}

pub fn determinant(m: &Matrix) -> Q {
    let n = m.len();
    let mut w = m.clone();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !w[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            w.swap(p, c);
            det = -det;
        }
        det *= &w[c][c];
        let inv = w[c][c].recip();
        for i in c + 1..n {
            if w[i][c].is_zero() {
                continue;
            }
            let f = &w[i][c] * &inv;
            for j in c..n {
                let t = &f * &w[c][j];
                w[i][j] -= t;
            }
        }
    }
    det
}

/// Solves `a x = b` for square nonsingular `a`; `None` if `a` is singular.
pub fn solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let c = if b.is_empty() { 0 } else { b[0].len() };
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb.iter()).cloned().collect())
        .collect();
    let pivots = echelon(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..n + c].to_vec()).collect())
}

/// Coefficients `[c_0, …, c_n]` of `det(t·I − m)`, lowest degree first.
pub fn charpoly(m: &Matrix) -> Vec<Q> {
    // Faddeev–LeVerrier.
    let n = m.len();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut mk = zeros(n, n);
    for k in 1..=n {
        let mut next = mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = mul(m, &next);
        let tr: Q = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -tr / q(k as i64);
        mk = next;
    }
    coeffs
}

pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Q::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}
