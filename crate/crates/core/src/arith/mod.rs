//! Integer congruences for central binomial sums modulo prime powers.
//!
//! Terms are carried as [`ValuedResidue`]s, `p^v * u` with the unit `u`
//! known modulo `p^t`, so a sum of `10^5` terms never touches the
//! tens-of-thousands-digit integers themselves. Composite moduli are handled
//! one prime power at a time and recombined by CRT. The [`exact`] module
//! computes the same sums with big integers as an oracle.

pub mod exact;
mod registry;
mod residue;

use thiserror::Error;

use crate::qcore::{is_prime, prime_factors};

pub use registry::{integer_registry, verify_integer, Claim, Evaluator, IntEntry, Verdict, MAX_INT_TERMS};
pub use residue::{binom_tracker, shifted_binom_tracker, BinomTracker, ValuedResidue};
pub(crate) use residue::{inv_mod, mul_mod};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("modulus {p}^{t} is too large")]
    ModulusTooLarge { p: u64, t: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor has more factors of p than the dividend")]
    ValuationUnderflow,
    #[error("value known modulo p^{known}, asked for p^{wanted}")]
    PrecisionExceeded { wanted: u32, known: u32 },
    #[error("modulus must be at least 2")]
    TrivialModulus,
    #[error("base is not invertible modulo {0}")]
    NotInvertible(u64),
}

/// The weight `base^k` with `base` an integer or an inverse integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Int(i64),
    /// `x^{-1}`, which must be invertible modulo the target.
    Inverse(i64),
}

impl Base {
    fn residue(self, m: u64) -> Result<u64, ArithError> {
        match self {
            Base::Int(x) => Ok((x as i128).rem_euclid(m as i128) as u64),
            Base::Inverse(x) => {
                let r = (x as i128).rem_euclid(m as i128) as u64;
                inv_mod(r, m).ok_or(ArithError::NotInvertible(m))
            }
        }
    }
}

/// `sum_{k<len} C(2k, k+d) base^k mod p^s`.
pub fn prime_power_sum(p: u64, s: u32, d: i64, len: u64, base: Base) -> Result<u64, ArithError> {
    let m = prime_power(p, s)?;
    let b = base.residue(m)?;
    let mut acc = 0u64;
    let mut w = 1 % m;
    if len == 0 {
        return Ok(0);
    }
    for term in shifted_binom_tracker(p, s, d, len - 1)? {
        acc = (acc + mul_mod(term.residue(s)?, w, m)) % m;
        w = mul_mod(w, b, m);
    }
    Ok(acc)
}

/// `sum_{k<len} C(4k, 2k) C(2k, k)^2 mod p^s`; `C(4k,2k)` is the central
/// coefficient at the doubled index.
pub fn fin_sum(p: u64, s: u32, len: u64) -> Result<u64, ArithError> {
    let m = prime_power(p, s)?;
    if len == 0 {
        return Ok(0);
    }
    let central: Vec<ValuedResidue> = binom_tracker(p, s, 2 * (len - 1))?.collect();
    let mut acc = 0u64;
    for k in 0..len as usize {
        let c = &central[k];
        let term = central[2 * k].mul(&c.mul(c));
        acc = (acc + term.residue(s)?) % m;
    }
    Ok(acc)
}

fn prime_power(p: u64, s: u32) -> Result<u64, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    p.checked_pow(s)
        .filter(|&m| m < 1 << 62)
        .ok_or(ArithError::ModulusTooLarge { p, t: s })
}

/// Combines `x = r_i mod m_i` for pairwise coprime `m_i`.
pub fn crt(parts: &[(u64, u64)]) -> (u64, u64) {
    let mut r = 0u128;
    let mut m = 1u128;
    for &(ri, mi) in parts {
        let mi = mi as u128;
        // r + m*t = ri (mod mi)
        let inv = inv_mod((m % mi) as u64, mi as u64).expect("moduli are coprime") as u128;
        let diff = (ri as u128 + mi - r % mi) % mi;
        let t = diff * inv % mi;
        r += m * t;
        m *= mi;
    }
    (r as u64, m as u64)
}

/// `sum_{k<len} C(2k, k+d) base^k mod modulus` for any `modulus >= 2`.
pub fn sum_mod(modulus: u64, d: i64, len: u64, base: Base) -> Result<u64, ArithError> {
    if modulus < 2 {
        return Err(ArithError::TrivialModulus);
    }
    let parts = prime_factors(modulus)
        .into_iter()
        .map(|(p, e)| Ok((prime_power_sum(p, e, d, len, base)?, p.pow(e))))
        .collect::<Result<Vec<_>, ArithError>>()?;
    Ok(crt(&parts).0)
}

/// `x mod m` in `[0, m)`.
pub fn reduce(x: i64, m: u64) -> u64 {
    (x as i128).rem_euclid(m as i128) as u64
}

/// One side of the primality criterion at a given `m`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CriterionSide {
    /// `4m - 1` or `4m + 1`.
    pub number: u64,
    /// The sum modulo `number^2`.
    pub residue: u64,
    pub criterion_holds: bool,
    pub is_prime: bool,
    /// Set for the stated exception on the `4m - 1` side.
    pub excluded: bool,
}

impl CriterionSide {
    /// Criterion holding on a composite number, outside the exception.
    pub fn counterexample(&self) -> bool {
        self.criterion_holds && !self.is_prime && !self.excluded
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CriterionRow {
    pub m: u64,
    pub minus: CriterionSide,
    pub plus: CriterionSide,
}

impl CriterionRow {
    pub fn agrees(&self) -> bool {
        !self.minus.counterexample() && !self.plus.counterexample()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PrimalityReport {
    pub rows: Vec<CriterionRow>,
}

impl PrimalityReport {
    pub fn disagreements(&self) -> Vec<&CriterionRow> {
        self.rows.iter().filter(|r| !r.agrees()).collect()
    }
}

/// The `4m -+ 1` sides of the primality criterion at `m >= 1`.
pub fn criterion_row(m: u64) -> Result<CriterionRow, ArithError> {
    let side = |number: u64, base: i64, len: u64, excluded: bool| -> Result<CriterionSide, ArithError> {
        let sq = number * number;
        let residue = sum_mod(sq, 0, len, Base::Int(base))?;
        Ok(CriterionSide {
            number,
            residue,
            criterion_holds: residue == number % sq,
            is_prime: is_prime(number),
            excluded,
        })
    };
    let mi = m as i64;
    Ok(CriterionRow {
        m,
        minus: side(4 * m - 1, mi, 4 * m - 1, m == 30)?,
        plus: side(4 * m + 1, -mi, 4 * m + 1, false)?,
    })
}

/// Evaluates the criterion for `1 <= m <= m_max` against trial division.
pub fn sweep_primality_criterion(m_max: u64) -> Result<PrimalityReport, ArithError> {
    let rows = (1..=m_max).map(criterion_row).collect::<Result<_, _>>()?;
    Ok(PrimalityReport { rows })
}
