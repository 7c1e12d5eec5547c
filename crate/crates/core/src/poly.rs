//! Dense univariate polynomials and truncated power series with exact
//! rational coefficients, plus Newton interpolation.
//!
//! No floating point enters these types; evaluation at float or complex
//! points converts at the last moment.

use num::complex::Complex64;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use std::fmt;

/// Dense polynomial, constant term first. The zero polynomial has no
/// coefficients; otherwise the leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.coeff_strings())
    }
}

pub fn rat_int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// Convenience constructor from integer coefficients, constant first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    /// c * u^k
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficients as exact strings ("p/q", or "p" for integers).
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(self.coeff(k) - other.coeff(k));
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact quotient; None when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.coeffs.clone();
        let d = divisor.coeffs.len();
        if rem.len() < d {
            return None;
        }
        let lead = divisor.coeffs.last().unwrap();
        let mut quot = vec![BigRational::zero(); rem.len() - d + 1];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + d - 1] / lead;
            if !q.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    let sub = &q * b;
                    rem[k + j] -= sub;
                }
            }
            quot[k] = q;
        }
        rem.iter().all(|c| c.is_zero()).then(|| Self::new(quot))
    }

    /// Horner evaluation at an exact rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluates exactly at the binary rational of `x`, then rounds once.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let xr = BigRational::from_float(x).expect("finite evaluation point");
        self.eval(&xr).to_f64().expect("coefficient in f64 range")
    }

    /// Horner evaluation with coefficients rounded to f64.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + Complex64::new(c.to_f64().expect("coefficient in f64 range"), 0.0);
        }
        acc
    }
}

/// Interpolating polynomial through `points` (distinct abscissae) by Newton
/// divided differences, exact over the rationals.
pub fn interpolate(points: &[(BigRational, BigRational)]) -> Polynomial {
    let k = points.len();
    if k == 0 {
        return Polynomial::zero();
    }
    // divided-difference table, in place
    let mut table: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..k {
        for i in (level..k).rev() {
            let dx = &points[i].0 - &points[i - level].0;
            assert!(!dx.is_zero(), "interpolation nodes must be distinct");
            table[i] = (&table[i] - &table[i - 1]) / dx;
        }
    }
    let mut result = Polynomial::zero();
    let mut basis = Polynomial::one();
    for (i, coef) in table.into_iter().enumerate() {
        result = result.add(&basis.scale(&coef));
        let node = Polynomial::new(vec![-points[i].0.clone(), BigRational::one()]);
        basis = basis.mul(&node);
    }
    result
}

/// Power series truncated at order K: coefficients of u^0..u^K, all exact.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strings: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "PowerSeries{:?}", strings)
    }
}

impl PowerSeries {
    /// Series with the given coefficients, padded/truncated to order K.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = BigRational::one();
        PowerSeries { coeffs }
    }

    pub fn from_polynomial(p: &Polynomial, order: usize) -> Self {
        Self::new(p.coeffs().to_vec(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Product mod u^{K+1}, K = min of the operand orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        PowerSeries { coeffs: out }
    }

    /// exp of a series with zero constant term, via the derivative
    /// recurrence g_k = (1/k) sum_{j=1..k} j f_j g_{k-j}.
    pub fn exp(&self) -> Self {
        assert!(
            self.coeffs[0].is_zero(),
            "exp requires zero constant term"
        );
        let order = self.order();
        let mut g = vec![BigRational::zero(); order + 1];
        g[0] = BigRational::one();
        for k in 1..=order {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc += rat_int(j as i64) * &self.coeffs[j] * &g[k - j];
            }
            g[k] = acc / rat_int(k as i64);
        }
        PowerSeries { coeffs: g }
    }

    /// Multiplicative inverse mod u^{K+1}; requires nonzero constant term.
    pub fn recip(&self) -> Self {
        assert!(
            !self.coeffs[0].is_zero(),
            "reciprocal requires nonzero constant term"
        );
        let order = self.order();
        let inv0 = BigRational::one() / &self.coeffs[0];
        let mut h = vec![BigRational::zero(); order + 1];
        h[0] = inv0.clone();
        for k in 1..=order {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc += &self.coeffs[j] * &h[k - j];
            }
            h[k] = -acc * &inv0;
        }
        PowerSeries { coeffs: h }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn construction_trims_leading_zeros() {
        let p = Polynomial::new(vec![rat_int(1), rat_int(0), rat_int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(Polynomial::from_ints(&[0, 0]).is_zero());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn arithmetic() {
        let p = Polynomial::from_ints(&[1, 2]); // 1 + 2u
        let q = Polynomial::from_ints(&[3, 0, 1]); // 3 + u^2
        assert_eq!(p.add(&q), Polynomial::from_ints(&[4, 2, 1]));
        assert_eq!(p.mul(&q), Polynomial::from_ints(&[3, 6, 1, 2]));
        assert_eq!(p.sub(&p), Polynomial::zero());
        // (1 - u^3)^2 = 1 - 2u^3 + u^6
        let c = Polynomial::from_ints(&[1, 0, 0, -1]).pow(2);
        assert_eq!(c, Polynomial::from_ints(&[1, 0, 0, -2, 0, 0, 1]));
    }

    #[test]
    fn evaluation() {
        let p = Polynomial::from_ints(&[1, -3, 2]); // (1-u)(1-2u)
        assert_eq!(p.eval(&rat(1, 2)), rat(0, 1));
        assert_eq!(p.eval(&rat(1, 3)), rat(2, 9));
        assert!((p.eval_f64(0.25) - 0.375).abs() < 1e-15);
        let z = Complex64::new(0.0, 1.0);
        let v = p.eval_complex(z); // 1 - 3i + 2 i^2 = -1 - 3i
        assert!((v - Complex64::new(-1.0, -3.0)).norm() < 1e-14);
    }

    #[test]
    fn exact_division() {
        let prod = Polynomial::from_ints(&[1, 0, -1]).mul(&Polynomial::from_ints(&[2, 1]));
        let q = prod.div_exact(&Polynomial::from_ints(&[1, 0, -1])).unwrap();
        assert_eq!(q, Polynomial::from_ints(&[2, 1]));
        assert!(Polynomial::from_ints(&[1, 1])
            .div_exact(&Polynomial::from_ints(&[1, 0, -1]))
            .is_none());
        assert!(Polynomial::from_ints(&[1, 1, 1])
            .div_exact(&Polynomial::from_ints(&[1, 1]))
            .is_none());
    }

    #[test]
    fn newton_interpolation_recovers_polynomial() {
        let p = Polynomial::new(vec![rat(1, 2), rat_int(0), rat(-3, 4), rat_int(2)]);
        let points: Vec<_> = (-2i64..=2)
            .map(|x| {
                let xr = rat_int(x);
                let y = p.eval(&xr);
                (xr, y)
            })
            .collect();
        assert_eq!(interpolate(&points), p);
        assert!(interpolate(&[]).is_zero());
    }

    #[test]
    fn series_exp_and_recip() {
        // exp(2u) mod u^5 = 1 + 2u + 2u^2 + 4/3 u^3 + 2/3 u^4
        let f = PowerSeries::new(vec![rat_int(0), rat_int(2)], 4);
        let g = f.exp();
        assert_eq!(
            g.coeffs(),
            &[rat_int(1), rat_int(2), rat_int(2), rat(4, 3), rat(2, 3)]
        );
        // exp(f) * exp(-f) = 1
        let neg = PowerSeries::new(vec![rat_int(0), rat_int(-2)], 4);
        assert!(g.mul(&neg.exp()).is_one());
        // recip of (1 - u)^2 is the series sum (k+1) u^k
        let p = Polynomial::from_ints(&[1, -1]).pow(2);
        let r = PowerSeries::from_polynomial(&p, 5).recip();
        for k in 0..=5 {
            assert_eq!(r.coeff(k), rat_int(k as i64 + 1));
        }
        assert!(r.mul(&PowerSeries::from_polynomial(&p, 5)).is_one());
    }
}
