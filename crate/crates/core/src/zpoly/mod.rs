//! Exact arithmetic for Laurent polynomials and truncated power series in `q`
//! over arbitrary-precision integers.

mod bivariate;
mod dense;
mod laurent;
mod series;

use thiserror::Error;

pub use bivariate::BivariatePoly;
pub use dense::{Binomial, DensePoly, LaurentAccumulator};
pub use laurent::LaurentPoly;
pub use series::{qpoch_inf, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZpolyError {
    #[error("substitution q -> q^0 is not a ring endomorphism of Laurent polynomials")]
    ZeroSubstitution,
    #[error("cannot evaluate negative exponents at q = 0")]
    ZeroAtNegativeExponent,
    #[error("m = {m} is not coprime to n = {n}")]
    NotCoprime { n: u64, m: i64 },
    #[error("divisor must have leading coefficient +-1")]
    NonUnitLeading,
    #[error("operation requires an ordinary polynomial (valuation >= 0)")]
    NegativeValuation,
    #[error("truncation order must be positive")]
    ZeroOrder,
    #[error("division by zero polynomial")]
    ZeroDivisor,
    #[error("polynomial division is not exact")]
    InexactDivision,
}

/// Free-function forms of the ring operations.
pub fn add(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    f + g
}

pub fn mul(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    f * g
}

pub fn neg(f: &LaurentPoly) -> LaurentPoly {
    -f
}

pub fn shift(f: &LaurentPoly, e: i64) -> LaurentPoly {
    f.shift(e)
}

pub fn divrem(f: &LaurentPoly, g: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly), ZpolyError> {
    f.divrem(g)
}

pub fn series_from(f: &LaurentPoly, order: usize) -> Result<TruncatedSeries, ZpolyError> {
    TruncatedSeries::from_poly(f, order)
}

pub fn series_mul(s: &TruncatedSeries, t: &TruncatedSeries) -> TruncatedSeries {
    s * t
}
