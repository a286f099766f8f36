use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{LaurentPoly, ZpolyError};

/// The factor `1 + sign * q^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Binomial {
    pub sign: i8,
    pub exp: u64,
}

impl Binomial {
    /// `1 - q^exp`
    pub const fn one_minus(exp: u64) -> Self {
        Self { sign: -1, exp }
    }

    /// `1 + q^exp`
    pub const fn one_plus(exp: u64) -> Self {
        Self { sign: 1, exp }
    }
}

/// An ordinary polynomial `c_0 + c_1 q + ...` stored densely.
///
/// This is the working representation for products of q-binomials and
/// q-shifted factorials, which are advanced in place one binomial factor at a
/// time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensePoly {
    coeffs: Vec<BigInt>,
}

impl DensePoly {
    pub fn one() -> Self {
        Self {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_laurent(f: &LaurentPoly) -> Result<Self, ZpolyError> {
        Ok(Self::from_coeffs(f.to_dense()?))
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_dense(0, self.coeffs.clone())
    }

    /// Multiplies in place by `1 + sign*q^exp`.
    pub fn mul_binomial(&mut self, b: Binomial) {
        if self.coeffs.is_empty() {
            return;
        }
        if b.exp == 0 {
            let c = 1 + b.sign as i64;
            if c == 0 {
                self.coeffs.clear();
            } else {
                let c = BigInt::from(c);
                self.coeffs.iter_mut().for_each(|x| *x *= &c);
            }
            return;
        }
        let a = b.exp as usize;
        let len = self.coeffs.len();
        self.coeffs.resize(len + a, BigInt::zero());
        for i in (a..len + a).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            if b.sign > 0 {
                hi[0] += &lo[i - a];
            } else {
                hi[0] -= &lo[i - a];
            }
        }
        self.trim();
    }

    /// Divides in place by `1 + sign*q^exp`; fails if the division is not exact.
    pub fn div_binomial(&mut self, b: Binomial) -> Result<(), ZpolyError> {
        if self.coeffs.is_empty() {
            return Ok(());
        }
        if b.exp == 0 {
            let c = 1 + b.sign as i64;
            if c == 0 {
                return Err(ZpolyError::ZeroDivisor);
            }
            let c = BigInt::from(c);
            for x in &mut self.coeffs {
                let (quot, rem) = x.div_rem(&c);
                if !rem.is_zero() {
                    return Err(ZpolyError::InexactDivision);
                }
                *x = quot;
            }
            return Ok(());
        }
        let a = b.exp as usize;
        let len = self.coeffs.len();
        if len <= a {
            return Err(ZpolyError::InexactDivision);
        }
        // Q_i = P_i - sign * Q_{i-a}, computed front to back.
        for i in a..len {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            if b.sign > 0 {
                hi[0] -= &lo[i - a];
            } else {
                hi[0] += &lo[i - a];
            }
        }
        if self.coeffs[len - a..].iter().any(|c| !c.is_zero()) {
            return Err(ZpolyError::InexactDivision);
        }
        self.coeffs.truncate(len - a);
        self.trim();
        Ok(())
    }

    /// Multiplies by all of `num`, then divides by all of `den`.
    ///
    /// Whenever the true quotient is a polynomial every intermediate
    /// division is exact, because each partial product of `den` divides the
    /// product of the numerators.
    pub fn apply_ratio(&mut self, num: &[Binomial], den: &[Binomial]) -> Result<(), ZpolyError> {
        for &b in num {
            self.mul_binomial(b);
        }
        for &b in den {
            self.div_binomial(b)?;
        }
        Ok(())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

/// A growable dense buffer for sums of shifted polynomials with possibly
/// negative exponents.
#[derive(Clone, Debug, Default)]
pub struct LaurentAccumulator {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    fn ensure_range(&mut self, lo: i64, hi: i64) {
        if self.coeffs.is_empty() {
            self.low = lo;
            self.coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
            return;
        }
        if lo < self.low {
            let extra = (self.low - lo) as usize;
            let mut grown = vec![BigInt::zero(); extra];
            grown.append(&mut self.coeffs);
            self.coeffs = grown;
            self.low = lo;
        }
        let top = self.low + self.coeffs.len() as i64 - 1;
        if hi > top {
            self.coeffs.resize((hi - self.low + 1) as usize, BigInt::zero());
        }
    }

    /// Adds `sign * q^shift * p`.
    pub fn add_shifted(&mut self, p: &DensePoly, negative: bool, shift: i64) {
        let Some(deg) = p.degree() else {
            return;
        };
        self.ensure_range(shift, shift + deg as i64);
        let base = (shift - self.low) as usize;
        for (i, c) in p.coeffs().iter().enumerate() {
            if negative {
                self.coeffs[base + i] -= c;
            } else {
                self.coeffs[base + i] += c;
            }
        }
    }

    /// Adds `c * q^e`.
    pub fn add_term(&mut self, c: &BigInt, e: i64) {
        self.ensure_range(e, e);
        let i = (e - self.low) as usize;
        self.coeffs[i] += c;
    }

    pub fn finish(self) -> LaurentPoly {
        LaurentPoly::from_dense(self.low, self.coeffs)
    }
}
