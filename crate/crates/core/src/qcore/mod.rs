//! Constructors for the named objects: q-binomials, q-shifted factorials,
//! cyclotomic polynomials, geometric moduli, q-Fibonacci polynomials,
//! Jacobi symbols and central binomial coefficients.

mod numtheory;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::zpoly::{Binomial, BivariatePoly, DensePoly, LaurentPoly};

pub use numtheory::{divisors, gcd, is_prime, jacobi, prime_factors, SymbolValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QcoreError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("Jacobi symbol needs an odd modulus >= 3, got {0}")]
    BadJacobiModulus(u64),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
}

/// Sign of `z` in `z = +-q^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(s: i64) -> Option<Self> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

type QbinomCache = Mutex<HashMap<(u64, u64), Arc<LaurentPoly>>>;

fn qbinom_cache() -> &'static QbinomCache {
    static CACHE: OnceLock<QbinomCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Gaussian binomial `[n; k]_q`, zero outside `0 <= k <= n`. Memoized.
pub fn qbinom(n: u64, k: i64) -> Arc<LaurentPoly> {
    if k < 0 || k as u64 > n {
        return Arc::new(LaurentPoly::zero());
    }
    let k = (k as u64).min(n - k as u64);
    if let Some(hit) = qbinom_cache().lock().unwrap().get(&(n, k)) {
        return Arc::clone(hit);
    }
    let value = Arc::new(qbinom_dense(n, k).to_laurent());
    qbinom_cache()
        .lock()
        .unwrap()
        .entry((n, k))
        .or_insert(value)
        .clone()
}

/// `[n; k]_q` with a signed top index; zero unless `0 <= k <= n`.
pub fn qbinom_signed(n: i64, k: i64) -> Arc<LaurentPoly> {
    if n < 0 {
        return Arc::new(LaurentPoly::zero());
    }
    qbinom(n as u64, k)
}

/// Uncached dense `[n; k]_q`, built as `prod_i (1 - q^(n-i)) / (1 - q^(i+1))`.
pub fn qbinom_dense(n: u64, k: u64) -> DensePoly {
    if k > n {
        return DensePoly::zero();
    }
    let k = k.min(n - k);
    let mut p = DensePoly::one();
    for i in 0..k {
        p.apply_ratio(&[Binomial::one_minus(n - i)], &[Binomial::one_minus(i + 1)])
            .expect("q-binomial step is exact");
    }
    p
}

/// `(z; q)_n` with `z = sign * q^j`, i.e. `prod_{i<n} (1 - sign*q^(j+i))`.
pub fn qpoch(sign: Sign, j: i64, n: u64) -> LaurentPoly {
    let s = BigInt::from(-(sign.as_i8() as i64));
    let mut acc = LaurentPoly::one();
    for i in 0..n as i64 {
        let factor = LaurentPoly::from_terms([(0, BigInt::one()), (j + i, s.clone())]);
        acc = &acc * &factor;
    }
    acc
}

type CycloCache = Mutex<HashMap<u64, Arc<LaurentPoly>>>;

fn cyclo_cache() -> &'static CycloCache {
    static CACHE: OnceLock<CycloCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `q^n - 1` by
/// `Phi_d` for every proper divisor `d`. Memoized.
pub fn cyclotomic(n: u64) -> Arc<LaurentPoly> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(hit) = cyclo_cache().lock().unwrap().get(&n) {
        return Arc::clone(hit);
    }
    let mut f = LaurentPoly::from_terms([(0, -1i64), (n as i64, 1)]);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let (quot, rem) = f.divrem(&cyclotomic(d)).expect("cyclotomic divisors are monic");
        assert!(rem.is_zero(), "Phi_{d} does not divide q^{n} - 1");
        f = quot;
    }
    let value = Arc::new(f);
    cyclo_cache().lock().unwrap().entry(n).or_insert(value).clone()
}

/// `(1 - q^(p^a)) / (1 - q) = 1 + q + ... + q^(p^a - 1)`.
pub fn geom_modulus(p: u64, a: u32) -> Result<LaurentPoly, QcoreError> {
    if !is_prime(p) {
        return Err(QcoreError::NotPrime(p));
    }
    if a == 0 {
        return Err(QcoreError::OutOfRange("exponent a must be >= 1".into()));
    }
    let n = p
        .checked_pow(a)
        .filter(|&n| n <= 1 << 24)
        .ok_or_else(|| QcoreError::OutOfRange(format!("{p}^{a} too large")))?;
    Ok(LaurentPoly::from_dense(0, vec![BigInt::one(); n as usize]))
}

/// The q-Fibonacci polynomial `F_n^q(t)` from `F_0 = 0`, `F_1 = 1`,
/// `F_n = F_{n-1} + q^(n-2) t F_{n-2}`.
pub fn qfib(n: u64) -> BivariatePoly {
    let mut prev = BivariatePoly::zero();
    if n == 0 {
        return prev;
    }
    let mut cur = BivariatePoly::constant(LaurentPoly::one());
    for m in 2..=n {
        let next = &cur + &prev.mul_qt(m as i64 - 2);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `C(2k, k)` via `C(2k+2, k+1) = C(2k, k) * 2(2k+1) / (k+1)`.
pub fn central_binom(k: u64) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(2 * (2 * i + 1)) / BigInt::from(i + 1);
    }
    c
}
