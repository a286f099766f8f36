//! Reduction and congruence testing in `Z[q]` modulo cyclotomic polynomials,
//! their powers, and products of them.
//!
//! Two reduction routes exist and they are not interchangeable:
//!
//! - exponent folding (`q^n = 1`) followed by division by `Phi_n`, valid only
//!   modulo `Phi_n` to the first power;
//! - clearing negative exponents by a power of `q` and dividing, valid for any
//!   admissible modulus (leading and constant coefficients `+-1`, so `q` is a
//!   unit).

use num_complex::Complex64;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::qcore::cyclotomic;
use crate::zpoly::{LaurentPoly, ZpolyError};

/// Default tolerance for root-of-unity checks.
pub const DEFAULT_ROOT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycmodError {
    #[error("modulus must be an ordinary polynomial with leading coefficient +-1")]
    NonUnitLeading,
    #[error("modulus constant term must be +-1 so that q is a unit")]
    NonUnitConstant,
    #[error("cyclotomic index must be >= 1")]
    ZeroIndex,
    #[error("exponent e must be >= 1")]
    ZeroPower,
    #[error(transparent)]
    Poly(#[from] ZpolyError),
}

/// Index `n >= 1` of a cyclotomic polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycIndex(u64);

impl CycIndex {
    pub fn new(n: u64) -> Result<Self, CycmodError> {
        if n == 0 {
            Err(CycmodError::ZeroIndex)
        } else {
            Ok(Self(n))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Canonical representative of `f` modulo `Phi_n`, of degree below `phi(n)`.
pub fn reduce_mod_phi(f: &LaurentPoly, n: CycIndex) -> LaurentPoly {
    let folded = f.fold_exponents(n.0);
    let (_, rem) = folded
        .divrem(&cyclotomic(n.0))
        .expect("cyclotomic polynomials are monic");
    rem
}

/// Checks that `modulus` has leading and constant coefficients `+-1`.
pub fn check_admissible(modulus: &LaurentPoly) -> Result<(), CycmodError> {
    let unit = |c: &num_bigint::BigInt| c.abs().is_one();
    match (modulus.leading_coeff(), modulus.valuation()) {
        (Some(lead), Some(0)) if unit(lead) => {
            if unit(&modulus.coeff(0)) {
                Ok(())
            } else {
                Err(CycmodError::NonUnitConstant)
            }
        }
        (Some(lead), Some(v)) if v > 0 && unit(lead) => Err(CycmodError::NonUnitConstant),
        _ => Err(CycmodError::NonUnitLeading),
    }
}

/// Remainder of `q^M * f` after division by `modulus`, with `M` the smallest
/// shift making `q^M * f` ordinary.
pub fn cleared_remainder(f: &LaurentPoly, modulus: &LaurentPoly) -> Result<LaurentPoly, CycmodError> {
    check_admissible(modulus)?;
    let lift = (-f.valuation().unwrap_or(0)).max(0);
    let (_, rem) = f.shift(lift).divrem(modulus)?;
    Ok(rem)
}

/// Whether `modulus` divides `q^M (f - g)` in `Z[q]`.
pub fn congruent(f: &LaurentPoly, g: &LaurentPoly, modulus: &LaurentPoly) -> Result<bool, CycmodError> {
    Ok(cleared_remainder(&(f - g), modulus)?.is_zero())
}

/// Congruence modulo `Phi_n^e`. Never folds exponents: `q^n` is not `1`
/// modulo `Phi_n^2`.
pub fn congruent_mod_phi_power(
    f: &LaurentPoly,
    g: &LaurentPoly,
    n: CycIndex,
    e: u32,
) -> Result<bool, CycmodError> {
    if e == 0 {
        return Err(CycmodError::ZeroPower);
    }
    congruent(f, g, &cyclotomic(n.0).pow(e))
}

/// Value of `f` at `exp(2*pi*i*m/n)`, taken from the exact representative
/// modulo `Phi_n` so that large cancelling coefficients never reach floating
/// point.
pub fn value_at_root(f: &LaurentPoly, n: CycIndex, m: i64) -> Result<Complex64, CycmodError> {
    let reduced = reduce_mod_phi(f, n);
    Ok(reduced.eval_complex(n.0, m)?)
}

/// `|f(omega) - expected| < tol` for `omega = exp(2*pi*i*m/n)`.
pub fn root_check(f: &LaurentPoly, n: CycIndex, m: i64, expected: Complex64, tol: f64) -> Result<bool, CycmodError> {
    Ok((value_at_root(f, n, m)? - expected).norm() < tol)
}
