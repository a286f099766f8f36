use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{LaurentPoly, ZpolyError};

/// A formal power series in `q` known modulo `q^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Result<Self, ZpolyError> {
        if order == 0 {
            return Err(ZpolyError::ZeroOrder);
        }
        Ok(Self {
            coeffs: vec![BigInt::zero(); order],
        })
    }

    pub fn one(order: usize) -> Result<Self, ZpolyError> {
        let mut s = Self::zero(order)?;
        s.coeffs[0] = BigInt::one();
        Ok(s)
    }

    /// Truncates an ordinary polynomial to `order` terms.
    pub fn from_poly(f: &LaurentPoly, order: usize) -> Result<Self, ZpolyError> {
        if !f.is_ordinary() {
            return Err(ZpolyError::NegativeValuation);
        }
        let mut s = Self::zero(order)?;
        for (e, c) in f.terms() {
            if (e as u64) < order as u64 {
                s.coeffs[e as usize] = c.clone();
            }
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_dense(0, self.coeffs.clone())
    }

    fn check_orders(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "truncation orders differ");
    }

    /// Multiplies in place by `1 + sign*q^exp`, discarding terms past the order.
    pub fn mul_binomial(&mut self, sign: i8, exp: usize) {
        let n = self.coeffs.len();
        if exp == 0 {
            let c = BigInt::from(1 + sign as i64);
            self.coeffs.iter_mut().for_each(|x| *x *= &c);
            return;
        }
        for i in (exp..n).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            if sign > 0 {
                hi[0] += &lo[i - exp];
            } else {
                hi[0] -= &lo[i - exp];
            }
        }
    }

    /// Divides in place by `1 + sign*q^exp` with `exp >= 1`, an invertible
    /// power series.
    pub fn div_binomial(&mut self, sign: i8, exp: usize) -> Result<(), ZpolyError> {
        if exp == 0 {
            return Err(ZpolyError::NonUnitLeading);
        }
        for i in exp..self.coeffs.len() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            if sign > 0 {
                hi[0] -= &lo[i - exp];
            } else {
                hi[0] += &lo[i - exp];
            }
        }
        Ok(())
    }

    /// Multiplicative inverse; the constant term must be `+-1`.
    pub fn inverse(&self) -> Result<Self, ZpolyError> {
        let c0 = &self.coeffs[0];
        if c0.abs() != BigInt::one() {
            return Err(ZpolyError::NonUnitLeading);
        }
        let n = self.order();
        let mut inv = vec![BigInt::zero(); n];
        inv[0] = c0.clone();
        for k in 1..n {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &inv[k - j];
                }
            }
            // c0 * inv_k = -acc, and c0 is its own inverse.
            inv[k] = -(acc * c0);
        }
        Ok(Self { coeffs: inv })
    }

    /// `self / other`; `other` must have constant term `+-1`.
    pub fn div(&self, other: &Self) -> Result<Self, ZpolyError> {
        Ok(self * &other.inverse()?)
    }
}

/// `(z; q^step)_inf` truncated to `order`, where `z = z_sign * q^start`.
///
/// Factors `1 - z_sign*q^(start + i*step)` are included while the exponent is
/// below `order`; a zero exponent contributes the scalar `1 - z_sign`.
pub fn qpoch_inf(z_sign: i8, start: u64, step: u64, order: usize) -> Result<TruncatedSeries, ZpolyError> {
    assert!(step > 0, "step must be positive");
    let mut s = TruncatedSeries::one(order)?;
    let mut e = start;
    while e < order as u64 {
        s.mul_binomial(-z_sign, e as usize);
        e += step;
    }
    Ok(s)
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(q^{})", self.to_poly(), self.order())
    }
}

impl Add<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_orders(rhs);
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_orders(rhs);
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_orders(rhs);
        let n = self.order();
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}
