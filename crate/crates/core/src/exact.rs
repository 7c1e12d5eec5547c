//! Exact determinants: fraction-free elimination over the integers and
//! Gaussian elimination over the rationals.
//!
//! The two routines are deliberately distinct implementations so that the
//! transition-matrix and degree/adjacency forms of the same determinant can
//! be cross-checked against each other.

use num::{BigInt, BigRational, One, Zero};

/// Determinant of a square integer matrix by Bareiss fraction-free
/// elimination. All intermediate divisions are exact.
pub fn det_bigint(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Determinant of a square rational matrix by ordinary Gaussian
/// elimination with first-nonzero pivoting.
pub fn det_bigrational(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigRational::zero();
        };
        if r != k {
            m.swap(k, r);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &pivot;
            for j in k..n {
                let sub = &factor * &m[k][j];
                m[i][j] -= sub;
            }
        }
    }
    det
}
