use std::fmt;

use super::ArithError;

/// `a * b mod m` without overflow.
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of `a` modulo `m` for `gcd(a, m) = 1`.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

/// A value `p^v * u` with `u` a unit known modulo `p^t`, or exactly zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValuedResidue {
    p: u64,
    t: u32,
    modulus: u64,
    v: u32,
    u: u64,
    zero: bool,
}

impl ValuedResidue {
    pub fn one(p: u64, t: u32) -> Result<Self, ArithError> {
        if t == 0 {
            return Err(ArithError::ZeroPrecision);
        }
        let modulus = p
            .checked_pow(t)
            .filter(|&m| m < 1 << 62)
            .ok_or(ArithError::ModulusTooLarge { p, t })?;
        Ok(Self {
            p,
            t,
            modulus,
            v: 0,
            u: 1 % modulus,
            zero: false,
        })
    }

    pub fn zero(p: u64, t: u32) -> Result<Self, ArithError> {
        let mut z = Self::one(p, t)?;
        z.zero = true;
        z.u = 0;
        Ok(z)
    }

    pub fn from_u64(p: u64, t: u32, x: u64) -> Result<Self, ArithError> {
        let mut r = Self::one(p, t)?;
        r.mul_u64(x);
        Ok(r)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.t
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// `None` for zero.
    pub fn valuation(&self) -> Option<u32> {
        (!self.zero).then_some(self.v)
    }

    /// The unit part in `[1, p^t)`; `None` for zero.
    pub fn unit(&self) -> Option<u64> {
        (!self.zero).then_some(self.u)
    }

    /// Splits `x = p^e * w` with `p` not dividing `w`.
    fn split(&self, mut x: u64) -> (u32, u64) {
        let mut e = 0;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            e += 1;
        }
        (e, x % self.modulus)
    }

    pub fn mul_u64(&mut self, x: u64) {
        if self.zero {
            return;
        }
        if x == 0 {
            self.zero = true;
            self.u = 0;
            return;
        }
        let (e, w) = self.split(x);
        self.v += e;
        self.u = mul_mod(self.u, w, self.modulus);
    }

    /// Divides by `x`, which must not carry more factors of `p` than `self`.
    pub fn div_u64(&mut self, x: u64) -> Result<(), ArithError> {
        if x == 0 {
            return Err(ArithError::DivisionByZero);
        }
        if self.zero {
            return Ok(());
        }
        let (e, w) = self.split(x);
        if e > self.v {
            return Err(ArithError::ValuationUnderflow);
        }
        self.v -= e;
        let inv = inv_mod(w, self.modulus).expect("p-free part is a unit");
        self.u = mul_mod(self.u, inv, self.modulus);
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.p, self.t), (other.p, other.t), "mismatched residue rings");
        if self.zero || other.zero {
            return Self { zero: true, u: 0, ..*self };
        }
        Self {
            v: self.v + other.v,
            u: mul_mod(self.u, other.u, self.modulus),
            ..*self
        }
    }

    /// The value modulo `p^s`; needs `s <= t + v`.
    pub fn residue(&self, s: u32) -> Result<u64, ArithError> {
        let m = self
            .p
            .checked_pow(s)
            .ok_or(ArithError::ModulusTooLarge { p: self.p, t: s })?;
        if self.zero || self.v >= s {
            return Ok(0);
        }
        if s > self.t + self.v {
            return Err(ArithError::PrecisionExceeded {
                wanted: s,
                known: self.t + self.v,
            });
        }
        let scale = self.p.pow(self.v);
        Ok(mul_mod(self.u % m, scale, m))
    }
}

impl fmt::Display for ValuedResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            write!(f, "0")
        } else {
            write!(f, "{}^{} * {} (mod {}^{})", self.p, self.v, self.u, self.p, self.t)
        }
    }
}

/// `C(2k, k+d)` for `k = 0, 1, ...`, as residues; zero while `k < |d|`.
#[derive(Clone, Debug)]
pub struct BinomTracker {
    d: u64,
    k: u64,
    k_max: u64,
    cur: ValuedResidue,
    zero: ValuedResidue,
}

impl Iterator for BinomTracker {
    type Item = ValuedResidue;

    fn next(&mut self) -> Option<ValuedResidue> {
        if self.k > self.k_max {
            return None;
        }
        let k = self.k;
        self.k += 1;
        if k < self.d {
            return Some(self.zero);
        }
        let out = self.cur;
        // C(2k+2, k+1+d) = C(2k, k+d) (2k+1)(2k+2) / ((k+d+1)(k-d+1))
        self.cur.mul_u64(2 * k + 1);
        self.cur.mul_u64(2 * k + 2);
        self.cur.div_u64(k + self.d + 1).expect("binomial step is integral");
        self.cur.div_u64(k - self.d + 1).expect("binomial step is integral");
        Some(out)
    }
}

/// `C(2k, k)` for `k = 0..=k_max`.
pub fn binom_tracker(p: u64, t: u32, k_max: u64) -> Result<BinomTracker, ArithError> {
    shifted_binom_tracker(p, t, 0, k_max)
}

/// `C(2k, k+d)` for `k = 0..=k_max`.
pub fn shifted_binom_tracker(p: u64, t: u32, d: i64, k_max: u64) -> Result<BinomTracker, ArithError> {
    if !crate::qcore::is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    Ok(BinomTracker {
        d: d.unsigned_abs(),
        k: 0,
        k_max,
        cur: ValuedResidue::one(p, t)?,
        zero: ValuedResidue::zero(p, t)?,
    })
}
