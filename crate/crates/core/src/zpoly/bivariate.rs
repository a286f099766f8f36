use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;

use super::LaurentPoly;

/// A polynomial in an auxiliary variable `t` whose coefficients are Laurent
/// polynomials in `q`. Trailing zero coefficients are trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    tcoeffs: Vec<LaurentPoly>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_tcoeffs(tcoeffs: Vec<LaurentPoly>) -> Self {
        let mut p = Self { tcoeffs };
        p.trim();
        p
    }

    pub fn constant(c: LaurentPoly) -> Self {
        Self::from_tcoeffs(vec![c])
    }

    fn trim(&mut self) {
        while self.tcoeffs.last().is_some_and(LaurentPoly::is_zero) {
            self.tcoeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.tcoeffs.is_empty()
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.tcoeffs.len().checked_sub(1)
    }

    pub fn tcoeffs(&self) -> &[LaurentPoly] {
        &self.tcoeffs
    }

    /// Coefficient of `t^i`.
    pub fn coeff(&self, i: usize) -> LaurentPoly {
        self.tcoeffs.get(i).cloned().unwrap_or_default()
    }

    /// Multiplies by `t^d`.
    pub fn shift_t(&self, d: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut tcoeffs = vec![LaurentPoly::zero(); d];
        tcoeffs.extend(self.tcoeffs.iter().cloned());
        Self { tcoeffs }
    }

    /// Multiplies by `q^e * t`.
    pub fn mul_qt(&self, e: i64) -> Self {
        self.shift_t(1).map_coeffs(|_, c| c.shift(e))
    }

    /// The substitution `t -> c * q^e * t`.
    pub fn substitute_t(&self, c: i64, e: i64) -> Self {
        let c = BigInt::from(c);
        self.map_coeffs(|j, p| {
            let scale = num_traits::pow::pow(c.clone(), j);
            p.scale(&scale).shift(e * j as i64)
        })
    }

    pub fn map_coeffs(&self, f: impl Fn(usize, &LaurentPoly) -> LaurentPoly) -> Self {
        Self::from_tcoeffs(self.tcoeffs.iter().enumerate().map(|(j, p)| f(j, p)).collect())
    }
}

impl Add<&BivariatePoly> for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let n = self.tcoeffs.len().max(rhs.tcoeffs.len());
        BivariatePoly::from_tcoeffs((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.tcoeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{j}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_trimmed() {
        let p = BivariatePoly::from_tcoeffs(vec![LaurentPoly::one(), LaurentPoly::zero()]);
        assert_eq!(p.t_degree(), Some(0));
        assert!(BivariatePoly::from_tcoeffs(vec![LaurentPoly::zero()]).is_zero());
    }

    #[test]
    fn substitution_scales_each_power() {
        // 1 + t + t^2 under t -> -q^2 t
        let p = BivariatePoly::from_tcoeffs(vec![LaurentPoly::one(); 3]);
        let s = p.substitute_t(-1, 2);
        assert_eq!(s.coeff(1), LaurentPoly::monomial(-1, 2));
        assert_eq!(s.coeff(2), LaurentPoly::monomial(1, 4));
        assert_eq!(s.shift_t(2).coeff(4), LaurentPoly::monomial(1, 4));
    }
}
