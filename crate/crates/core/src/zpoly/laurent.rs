use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ZpolyError;

/// Above this span (in exponents) multiplication falls back to a sparse
/// accumulator instead of a dense convolution buffer.
const DENSE_MUL_SPAN: i64 = 1 << 22;

/// A univariate Laurent polynomial in `q` with arbitrary-precision integer
/// coefficients.
///
/// Terms are kept sorted by exponent with no zero coefficients, so two equal
/// polynomials always have identical term lists.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(e, c)] }
        }
    }

    /// The monomial `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// Builds `sum_i coeffs[i] * q^(low + i)`.
    pub fn from_dense(low: i64, coeffs: Vec<BigInt>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (low + i as i64, c))
            .collect();
        Self { terms }
    }

    /// Convenience constructor from small coefficients, lowest exponent first.
    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        Self::from_dense(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// combining repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c.into();
        }
        Self::from_sorted_map(map)
    }

    fn from_sorted_map(map: BTreeMap<i64, BigInt>) -> Self {
        Self {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Largest stored exponent; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Smallest stored exponent; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + ExactSizeIterator {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        match self.terms.binary_search_by_key(&e, |(x, _)| *x) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|(_, c)| c)
    }

    /// True when every exponent is nonnegative.
    pub fn is_ordinary(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    /// Dense coefficient vector `[c_0, ..., c_deg]`; requires valuation >= 0.
    pub fn to_dense(&self) -> Result<Vec<BigInt>, ZpolyError> {
        let Some(deg) = self.degree() else {
            return Ok(Vec::new());
        };
        if !self.is_ordinary() {
            return Err(ZpolyError::NegativeValuation);
        }
        let mut out = vec![BigInt::zero(); deg as usize + 1];
        for (e, c) in &self.terms {
            out[*e as usize] = c.clone();
        }
        Ok(out)
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(x, c)| (x.checked_add(e).expect("exponent overflow"), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The ring homomorphism `q -> q^j`.
    pub fn substitute_power(&self, j: i64) -> Result<Self, ZpolyError> {
        if j == 0 {
            return Err(ZpolyError::ZeroSubstitution);
        }
        let mut terms: Vec<(i64, BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.checked_mul(j).expect("exponent overflow"), c.clone()))
            .collect();
        if j < 0 {
            terms.reverse();
        }
        Ok(Self { terms })
    }

    /// Exact evaluation at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> Result<BigRational, ZpolyError> {
        if x.is_zero() {
            if !self.is_ordinary() {
                return Err(ZpolyError::ZeroAtNegativeExponent);
            }
            return Ok(BigRational::from_integer(self.coeff(0)));
        }
        let low = self.valuation().unwrap_or(0).min(0);
        // Evaluate x^(-low) * f(x) with Horner, then divide by x^(-low).
        let mut acc = BigInt::zero();
        let mut prev = self.degree().unwrap_or(0);
        for (e, c) in self.terms.iter().rev() {
            acc *= pow_big(x, (prev - e) as u64);
            acc += c;
            prev = *e;
        }
        acc *= pow_big(x, (prev - low) as u64);
        let den = pow_big(x, (-low) as u64);
        Ok(BigRational::new(acc, den))
    }

    /// Floating evaluation at `exp(2*pi*i*m/n)` with `gcd(m, n) = 1`.
    ///
    /// Exponents are folded modulo `n` with exact coefficient sums before any
    /// floating arithmetic takes place.
    pub fn eval_complex(&self, n: u64, m: i64) -> Result<Complex64, ZpolyError> {
        if n == 0 || (m as i128).gcd(&(n as i128)) != 1 {
            return Err(ZpolyError::NotCoprime { n, m });
        }
        let folded = self.fold_exponents(n);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in folded.terms() {
            let r = ((m as i128 * e as i128).rem_euclid(n as i128)) as f64;
            let angle = std::f64::consts::TAU * r / n as f64;
            let cf = c.to_f64().unwrap_or(f64::NAN);
            acc += Complex64::from_polar(cf, angle);
        }
        Ok(acc)
    }

    /// Image in `Z[q]/(q^n - 1)`: every exponent is replaced by its residue
    /// in `[0, n)`.
    pub fn fold_exponents(&self, n: u64) -> Self {
        assert!(n >= 1, "fold modulus must be positive");
        let mut out = vec![BigInt::zero(); n as usize];
        for (e, c) in &self.terms {
            let r = (*e as i128).rem_euclid(n as i128) as usize;
            out[r] += c;
        }
        Self::from_dense(0, out)
    }

    /// Euclidean division by an ordinary polynomial with leading coefficient
    /// `+-1`; `self` must have valuation >= 0.
    pub fn divrem(&self, g: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly), ZpolyError> {
        let Some(lead) = g.leading_coeff() else {
            return Err(ZpolyError::ZeroDivisor);
        };
        if !g.is_ordinary() {
            return Err(ZpolyError::NegativeValuation);
        }
        if !self.is_ordinary() {
            return Err(ZpolyError::NegativeValuation);
        }
        if lead.abs() != BigInt::one() {
            return Err(ZpolyError::NonUnitLeading);
        }
        let dg = g.degree().unwrap();
        let Some(df) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if df < dg {
            return Ok((Self::zero(), self.clone()));
        }
        let negate = lead.is_negative();
        let mut rem = self.to_dense()?;
        let mut quot = vec![BigInt::zero(); (df - dg) as usize + 1];
        // Lower terms of g, excluding the leading one.
        let lower: Vec<(usize, &BigInt)> = g
            .terms
            .iter()
            .take(g.terms.len() - 1)
            .map(|(e, c)| (*e as usize, c))
            .collect();
        let dg = dg as usize;
        for i in (dg..=df as usize).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let mut c = std::mem::take(&mut rem[i]);
            if negate {
                c = -c;
            }
            let base = i - dg;
            for &(e, gc) in &lower {
                rem[base + e] -= &c * gc;
            }
            quot[base] = c;
        }
        rem.truncate(dg);
        Ok((Self::from_dense(0, quot), Self::from_dense(0, rem)))
    }

    /// Adds `c * q^shift * other` into `self`.
    pub fn add_scaled(&mut self, other: &LaurentPoly, c: &BigInt, shift: i64) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        let mut merged = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut lhs = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut rhs = other.terms.iter().map(|(e, x)| (e + shift, x * c)).peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (Some(a), Some(b)) => {
                    if a.0 < b.0 {
                        merged.push(lhs.next().unwrap());
                    } else if b.0 < a.0 {
                        merged.push(rhs.next().unwrap());
                    } else {
                        let (e, x) = lhs.next().unwrap();
                        let (_, y) = rhs.next().unwrap();
                        let s = x + y;
                        if !s.is_zero() {
                            merged.push((e, s));
                        }
                    }
                }
                (Some(_), None) => merged.push(lhs.next().unwrap()),
                (None, Some(_)) => merged.push(rhs.next().unwrap()),
                (None, None) => break,
            }
        }
        self.terms = merged;
    }

    fn mul_impl(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.scale(c).shift(*e);
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.scale(c).shift(*e);
        }
        let (a_lo, a_hi) = (self.valuation().unwrap(), self.degree().unwrap());
        let (b_lo, b_hi) = (other.valuation().unwrap(), other.degree().unwrap());
        let span = (a_hi - a_lo) + (b_hi - b_lo);
        if span < DENSE_MUL_SPAN {
            let mut acc = vec![BigInt::zero(); span as usize + 1];
            for (ea, ca) in &self.terms {
                let oa = (ea - a_lo) as usize;
                for (eb, cb) in &other.terms {
                    acc[oa + (eb - b_lo) as usize] += ca * cb;
                }
            }
            Self::from_dense(a_lo + b_lo, acc)
        } else {
            let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
            for (ea, ca) in &self.terms {
                for (eb, cb) in &other.terms {
                    *map.entry(ea + eb).or_default() += ca * cb;
                }
            }
            Self::from_sorted_map(map)
        }
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Short human-readable rendering of the lowest `max_terms` terms.
    pub fn preview(&self, max_terms: usize) -> String {
        if self.terms.len() <= max_terms {
            return self.to_string();
        }
        let head = Self {
            terms: self.terms[..max_terms].to_vec(),
        };
        format!("{head} + ... ({} terms)", self.terms.len())
    }
}

fn pow_big(x: &BigInt, e: u64) -> BigInt {
    num_traits::pow::pow(x.clone(), e as usize)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = mag.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{mag}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, &BigInt::one(), 0);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, &-BigInt::one(), 0);
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(mut self, rhs: LaurentPoly) -> LaurentPoly {
                self.$assign(&rhs);
                self
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(mut self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$assign(rhs);
                self
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_impl(rhs)
    }
}

impl Mul<LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self.mul_impl(&rhs)
    }
}

impl Mul<&LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_impl(rhs)
    }
}
