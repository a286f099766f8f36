//! Big-integer versions of the sums, used as oracles.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// `C(2k, k+d)` for `k = 0..len` in exact integers, stepping
/// `C(2k+2, k+1+d) = C(2k, k+d) (2k+1)(2k+2) / ((k+1+d)(k+1-d))` from the
/// first nonzero term `C(2|d|, |d|+d) = 1`.
fn shifted_column(d: i64, len: u64) -> Vec<BigInt> {
    let d = d.unsigned_abs();
    let mut out = Vec::with_capacity(len as usize);
    let mut c = BigInt::one();
    for k in 0..len {
        if k < d {
            out.push(BigInt::zero());
            continue;
        }
        out.push(c.clone());
        c = c * ((2 * k + 1) * (2 * k + 2)) / ((k + 1 + d) * (k + 1 - d));
    }
    out
}

/// `sum_{k<len} C(2k, k+d) base^k`.
pub fn central_sum(d: i64, len: u64, base: i64) -> BigInt {
    let b = BigInt::from(base);
    let mut w = BigInt::one();
    let mut s = BigInt::zero();
    for c in shifted_column(d, len) {
        s += &c * &w;
        w *= &b;
    }
    s
}

/// `sum_{k<len} C(4k, 2k) C(2k, k)^2`.
pub fn fin_sum(len: u64) -> BigInt {
    let col = shifted_column(0, 2 * len);
    (0..len as usize).map(|k| &col[2 * k] * &col[k] * &col[k]).sum()
}

/// `sum_{k<len} C(2k, k+d) 2^{-k} mod p`, as `S / 2^{len-1}` with the
/// integer `S = sum C(2k, k+d) 2^{len-1-k}`.
pub fn half_power_sum_mod(d: i64, len: u64, p: u64) -> u64 {
    if len == 0 {
        return 0;
    }
    let col = shifted_column(d, len);
    let top = len as usize - 1;
    let s: BigInt = col
        .iter()
        .enumerate()
        .map(|(k, c)| c * (BigInt::one() << (top - k)))
        .sum();
    let pb = BigInt::from(p);
    let num = s.mod_floor(&pb);
    let den = (BigInt::one() << top).mod_floor(&pb);
    // Fermat inverse of the power of two
    let inv = den.modpow(&BigInt::from(p - 2), &pb);
    (num * inv).mod_floor(&pb).to_u64().unwrap()
}
