//! Hypergeometric-style sums built by walking term ratios.
//!
//! Each term `P_k` is an ordinary polynomial; `P_{k+1}` is obtained from
//! `P_k` by multiplying binomial factors `1 +- q^e` and then dividing others
//! out exactly. The weight `+-q^w(k)` is applied while accumulating, so
//! Laurent exponents never enter the dense arithmetic.

use std::ops::Range;

use crate::qcore::qbinom_dense;
use crate::zpoly::{Binomial, BivariatePoly, DensePoly, LaurentAccumulator, LaurentPoly, ZpolyError};

/// The term shape `[N; k] * [2k; k+d] * prod_{i=k+off}^{end-1} (1 + q^i)`,
/// with the outer binomial and the product both optional. Valid for `k >= d`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct CentralFamily {
    pub d: u64,
    pub outer: Option<u64>,
    /// `(off, end)` for the trailing product of `1 + q^i`.
    pub poch: Option<(u64, u64)>,
}

impl CentralFamily {
    pub fn central() -> Self {
        Self {
            d: 0,
            outer: None,
            poch: None,
        }
    }

    pub fn shifted(d: u64) -> Self {
        Self {
            d,
            outer: None,
            poch: None,
        }
    }

    pub fn with_outer(mut self, n: u64) -> Self {
        self.outer = Some(n);
        self
    }

    pub fn with_poch(mut self, off: u64, end: u64) -> Self {
        self.poch = Some((off, end));
        self
    }

    /// The term at `k = d`.
    pub fn init(&self) -> DensePoly {
        let mut p = match self.outer {
            Some(n) => qbinom_dense(n, self.d),
            None => DensePoly::one(),
        };
        if let Some((off, end)) = self.poch {
            for i in self.d + off..end {
                p.mul_binomial(Binomial::one_plus(i));
            }
        }
        p
    }

    /// Factors taking the term at `k` to the term at `k + 1`.
    pub fn ratio(&self, k: u64) -> (Vec<Binomial>, Vec<Binomial>) {
        let d = self.d;
        let mut num = vec![Binomial::one_minus(2 * k + 1), Binomial::one_minus(2 * k + 2)];
        let mut den = vec![Binomial::one_minus(k + d + 1), Binomial::one_minus(k - d + 1)];
        if let Some(n) = self.outer {
            num.push(Binomial::one_minus(n - k));
            den.push(Binomial::one_minus(k + 1));
        }
        if let Some((off, end)) = self.poch {
            if k + off < end {
                den.push(Binomial::one_plus(k + off));
            }
        }
        (num, den)
    }
}

/// Calls `visit(k, P_k)` for `k` in `ks`, starting from `P_{ks.start} = init`.
pub(crate) fn walk<R, V>(ks: Range<u64>, init: DensePoly, mut ratio: R, mut visit: V) -> Result<(), ZpolyError>
where
    R: FnMut(u64) -> (Vec<Binomial>, Vec<Binomial>),
    V: FnMut(u64, &DensePoly),
{
    let mut term = init;
    for k in ks.clone() {
        if k > ks.start {
            let (num, den) = ratio(k - 1);
            term.apply_ratio(&num, &den)?;
        }
        visit(k, &term);
    }
    Ok(())
}

/// `sum_k (-1)^{neg(k)} q^{shift(k)} P_k` over `ks`.
pub(crate) fn hyper_sum<R, W>(ks: Range<u64>, init: DensePoly, ratio: R, weight: W) -> Result<LaurentPoly, ZpolyError>
where
    R: FnMut(u64) -> (Vec<Binomial>, Vec<Binomial>),
    W: Fn(u64) -> (bool, i64),
{
    let mut acc = LaurentAccumulator::new();
    walk(ks, init, ratio, |k, p| {
        let (neg, shift) = weight(k);
        acc.add_shifted(p, neg, shift);
    })?;
    Ok(acc.finish())
}

/// Sum of the family over `d <= k < end`.
pub(crate) fn family_sum<W>(fam: CentralFamily, end: u64, weight: W) -> Result<LaurentPoly, ZpolyError>
where
    W: Fn(u64) -> (bool, i64),
{
    if end <= fam.d {
        return Ok(LaurentPoly::zero());
    }
    hyper_sum(fam.d..end, fam.init(), |k| fam.ratio(k), weight)
}

/// `sum_{k<end} (-1)^{neg(k)} q^{shift(k)} [2k; k]`.
pub(crate) fn central_sum<W>(end: u64, weight: W) -> Result<LaurentPoly, ZpolyError>
where
    W: Fn(u64) -> (bool, i64),
{
    family_sum(CentralFamily::central(), end, weight)
}

/// `sum_{k<=n/2} (-1)^k q^{C(k,2)} [n-k; k]`, stepping `[N; K] -> [N-1; K+1]`.
pub(crate) fn nkk_sum(n: u64) -> Result<LaurentPoly, ZpolyError> {
    let ratio = |k: u64| {
        let (big, small) = (n - k, k);
        (
            vec![Binomial::one_minus(big - small), Binomial::one_minus(big - small - 1)],
            vec![Binomial::one_minus(big), Binomial::one_minus(small + 1)],
        )
    };
    hyper_sum(0..n / 2 + 1, DensePoly::one(), ratio, |k| {
        (k % 2 == 1, (k * k.saturating_sub(1) / 2) as i64)
    })
}

/// `1 + 2 sum_{k=1}^{n-1} (-1)^k q^{-C(k,2)} [2k-1; k]`.
pub(crate) fn greene_sum(n: u64) -> Result<LaurentPoly, ZpolyError> {
    let mut acc = LaurentAccumulator::new();
    acc.add_term(&1.into(), 0);
    let ratio = |k: u64| {
        (
            vec![Binomial::one_minus(2 * k), Binomial::one_minus(2 * k + 1)],
            vec![Binomial::one_minus(k + 1), Binomial::one_minus(k)],
        )
    };
    let two = num_bigint::BigInt::from(2);
    walk(1..n.max(1), DensePoly::one(), ratio, |k, p| {
        let shift = -((k * (k - 1) / 2) as i64);
        for (i, c) in p.coeffs().iter().enumerate() {
            let c = &two * c;
            acc.add_term(&if k % 2 == 1 { -c } else { c }, shift + i as i64);
        }
    })?;
    Ok(acc.finish())
}

/// `sum_{d<=k<end} q^{-C(k-d,2)} [2k; k+d] t^k`.
pub(crate) fn fib_remark_lhs(n: u64, d: u64) -> Result<BivariatePoly, ZpolyError> {
    let fam = CentralFamily::shifted(d);
    let mut tcoeffs = vec![LaurentPoly::zero(); n as usize];
    walk(d..n, fam.init(), |k| fam.ratio(k), |k, p| {
        let j = (k - d) as i64;
        tcoeffs[k as usize] = p.to_laurent().shift(-(j * (j - 1) / 2));
    })?;
    Ok(BivariatePoly::from_tcoeffs(tcoeffs))
}
