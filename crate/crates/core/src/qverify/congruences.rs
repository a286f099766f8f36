//! Congruences modulo cyclotomic polynomials, their squares and products.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::sums::{central_sum, family_sum, fib_remark_lhs, CentralFamily};
use super::{entry, param, phi, size_limit, within, BuildError, Built, Mode, QEntry, Value, MAX_TERMS};
use crate::check::{Family, ParamSpec, Params, Tag};
use crate::qcore::{central_binom, gcd, geom_modulus, is_prime, jacobi, qfib};
use crate::zpoly::{LaurentPoly, ZpolyError};

const N: &[ParamSpec] = &[ParamSpec::required("n")];
const ND: &[ParamSpec] = &[ParamSpec::required("n"), ParamSpec::required("d")];
const MN: &[ParamSpec] = &[ParamSpec::required("m"), ParamSpec::required("n")];
const AM: &[ParamSpec] = &[ParamSpec::required("a"), ParamSpec::required("m")];
const PA: &[ParamSpec] = &[ParamSpec::required("p"), ParamSpec::required("a")];

fn c2(k: i64) -> i64 {
    k * (k - 1) / 2
}

fn symbol(n: i64, m: u64) -> i64 {
    jacobi(n, m).expect("odd modulus").value()
}

fn mod_phi_n(p: &Params) -> Built<Mode> {
    Ok(Mode::ModPhi(phi(param(p, "n"))?))
}

fn zero(_: &Params) -> Built<Value> {
    Ok(LaurentPoly::zero().into())
}

/// `sum_{k<n} q^k [2k;k]`
fn plain_sum(n: u64) -> Result<LaurentPoly, ZpolyError> {
    central_sum(n, |k| (false, k as i64))
}

/// `sum_{k<n} (-1)^k q^{-C(k+1,2)} [2k;k]`
pub(super) fn mod5_lhs(n: u64) -> Result<LaurentPoly, ZpolyError> {
    central_sum(n, |k| (k % 2 == 1, -c2(k as i64 + 1)))
}

/// `sum_{k<n} q^{2k+1} [2k;k]`
fn odd_shift_sum(n: u64) -> Result<LaurentPoly, ZpolyError> {
    central_sum(n, |k| (false, 2 * k as i64 + 1))
}

/// `floor(n^4 / 5)` as a shift; fails only if it leaves the i64 range.
fn quartic_fifth(n: i64) -> Built<i64> {
    let e: BigInt = BigInt::from(n).pow(4u32) / 5;
    e.to_i64()
        .ok_or_else(|| BuildError::Invalid(format!("exponent floor(n^4/5) out of range at n={n}")))
}

fn mod5_guard(p: &Params) -> Result<(), String> {
    within(p, "n", 0, MAX_TERMS)
}

/// Empty sums at `n = 0` are compared exactly, since `Phi_0` does not exist.
fn mod5_mode(p: &Params) -> Built<Mode> {
    if param(p, "n") == 0 {
        Ok(Mode::Exact)
    } else {
        mod_phi_n(p)
    }
}

fn mod5_rhs(n: i64, sign: i64) -> Built<LaurentPoly> {
    Ok(LaurentPoly::monomial(symbol(n, 5), sign * quartic_fifth(n)?))
}

fn tauraso_guard(p: &Params) -> Result<(), String> {
    within(p, "n", 1, MAX_TERMS)?;
    let (n, d) = (param(p, "n"), param(p, "d"));
    if d.abs() >= n {
        return Err("requires |d| < n".into());
    }
    Ok(())
}

fn tauraso_rhs(n: i64, d: i64) -> LaurentPoly {
    let d = d.abs();
    let r = 2 * (n - d) / 3;
    LaurentPoly::monomial(symbol(n - d, 3), 3 * r * (r + 1) / 2 + d * (2 * r + 1))
}

fn mn_guard(p: &Params) -> Result<(), String> {
    within(p, "m", 1, MAX_TERMS)?;
    within(p, "n", 1, MAX_TERMS)?;
    size_limit(param(p, "m").checked_mul(param(p, "n")))
}

/// `sum_{j<m} s^j C(2j,j)` for `s = +-1`.
fn central_integer_sum(m: u64, alternating: bool) -> BigInt {
    (0..m)
        .map(|j| {
            let c = central_binom(j);
            if alternating && j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .sum()
}

/// The number of terms `p^a m`, if admissible.
fn prime_power_length(p: u64, a: i64, m: i64) -> Option<i64> {
    let a = u32::try_from(a).ok()?;
    (p as i64).checked_pow(a)?.checked_mul(m)
}

fn geom_guard(base: u64, a_max: i64) -> impl Fn(&Params) -> Result<(), String> {
    move |p| {
        within(p, "a", 1, a_max)?;
        within(p, "m", 1, MAX_TERMS)?;
        size_limit(prime_power_length(base, param(p, "a"), param(p, "m")))
    }
}

fn geom_length(base: u64, p: &Params) -> u64 {
    prime_power_length(base, param(p, "a"), param(p, "m")).expect("guarded") as u64
}

fn geom_mode(base: u64, square: bool) -> impl Fn(&Params) -> Built<Mode> {
    move |p| {
        let g = geom_modulus(base, param(p, "a") as u32)?;
        Ok(Mode::ModPoly(if square { &g * &g } else { g }))
    }
}

/// Which sum and product appear in the corollary family.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Cor {
    First,
    Second,
    Third,
    Fourth,
    FirstInv,
    ThirdInv,
}

fn cor_guard(p: &Params) -> Result<(), String> {
    within(p, "n", 1, MAX_TERMS)?;
    within(p, "d", 0, param(p, "n") - 1)
}

fn cor_lhs(which: Cor, n: u64, d: u64) -> Built<LaurentPoly> {
    // (-q^{k+1}; q)_{n-k-1} is prod_{i=k+1}^{n-1}, (-q^k; q)_{n-k-1} is prod_{i=k}^{n-2}
    let fam = match which {
        Cor::Second | Cor::Fourth => CentralFamily::shifted(d).with_poch(0, n - 1),
        _ => CentralFamily::shifted(d).with_poch(1, n),
    };
    let w = move |k: u64| {
        let k = k as i64;
        let e = match which {
            Cor::First | Cor::Second => k,
            Cor::Third | Cor::Fourth => -k * (k + 3) / 2,
            Cor::FirstInv => -k * (k + 1) / 2,
            Cor::ThirdInv => 2 * k,
        };
        (false, e)
    };
    Ok(family_sum(fam, n, w)?)
}

/// `num / 4`, which the case tables promise is integral.
fn quarter(num: i64) -> Built<i64> {
    if num % 4 == 0 {
        Ok(num / 4)
    } else {
        Err(BuildError::Invalid(format!("exponent {num}/4 is not an integer")))
    }
}

/// `1 - q + q^2 - ... - q^{len-1}`, i.e. `(1 - q^len)/(1 + q)` for even `len`.
fn alternating(len: i64) -> LaurentPoly {
    LaurentPoly::from_terms((0..len).map(|i| (i, if i % 2 == 0 { 1i64 } else { -1 })))
}

fn sign_of_half(x: i64) -> i64 {
    // (-1)^{x/2} for even x
    if (x / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn cor_rhs(which: Cor, n: i64, d: i64) -> Built<LaurentPoly> {
    let l = n - d;
    let one_minus = LaurentPoly::from_terms([(0, 1i64), (l, -1)]);
    if l % 2 == 1 {
        let s = sign_of_half(n + d - 1);
        let num = match which {
            Cor::First | Cor::Second => d * (2 * n - 3 * d) - (n + 1) * (n + 1),
            Cor::Third | Cor::Fourth => 5 - l * l,
            Cor::FirstInv => 1 - l * l,
            Cor::ThirdInv => d * (2 * n - 3 * d) - (n + 1) * (n + 1) - 4,
        };
        return Ok(LaurentPoly::monomial(s, quarter(num)?));
    }
    Ok(match which {
        Cor::First | Cor::FirstInv => LaurentPoly::zero(),
        Cor::Second => {
            let e = quarter(d * (2 * n - 3 * d) - n * n + 2 * d)?;
            alternating(l).shift(e).scale(&sign_of_half(n + d).into())
        }
        Cor::Third => {
            let e = quarter(5 - (l + 1) * (l + 1))?;
            one_minus.shift(e).scale(&sign_of_half(n + d - 2).into())
        }
        Cor::Fourth => {
            let e = quarter(9 - (l + 1) * (l + 1))?;
            alternating(l).shift(e).scale(&sign_of_half(n + d - 2).into())
        }
        Cor::ThirdInv => {
            let e = quarter(d * (2 * n - 3 * d) - n * n + 2 * d - 4)?;
            one_minus.shift(e).scale(&sign_of_half(n + d).into())
        }
    })
}

fn cor(id: &'static str, statement: &'static str, which: Cor) -> QEntry {
    entry(
        id,
        statement,
        Tag::Theorem,
        Family::Congruence,
        ND,
        cor_guard,
        mod_phi_n,
        move |p| Ok(cor_lhs(which, param(p, "n") as u64, param(p, "d") as u64)?.into()),
        move |p| Ok(cor_rhs(which, param(p, "n"), param(p, "d"))?.into()),
    )
}

fn prime_power_guard(exclude_three: bool) -> impl Fn(&Params) -> Result<(), String> {
    move |p| {
        let prime = param(p, "p");
        if prime < 2 || !is_prime(prime as u64) {
            return Err("requires p prime".into());
        }
        if exclude_three && prime == 3 {
            return Err("requires p != 3".into());
        }
        within(p, "a", 1, 64)?;
        size_limit(prime_power_length(prime as u64, param(p, "a"), 1))
    }
}

fn prime_power(p: &Params) -> i64 {
    prime_power_length(param(p, "p") as u64, param(p, "a"), 1).expect("guarded")
}

fn phi_square(p: &Params) -> Built<Mode> {
    Ok(Mode::ModPhiPower(phi(prime_power(p))?, 2))
}

pub(super) fn entries() -> Vec<QEntry> {
    vec![
        entry(
            "mod5",
            "sum_{k<n} (-1)^k q^{-C(k+1,2)} [2k;k] = (n/5) q^{-floor(n^4/5)} mod Phi_n",
            Tag::Theorem,
            Family::Congruence,
            N,
            mod5_guard,
            mod5_mode,
            |p| Ok(mod5_lhs(param(p, "n") as u64)?.into()),
            |p| Ok(mod5_rhs(param(p, "n"), -1)?.into()),
        ),
        entry(
            "mod5-inv",
            "sum_{k<n} (-1)^k q^{-C(k,2)} [2k;k] = (n/5) q^{floor(n^4/5)} mod Phi_n",
            Tag::Theorem,
            Family::Congruence,
            N,
            mod5_guard,
            mod5_mode,
            |p| Ok(central_sum(param(p, "n") as u64, |k| (k % 2 == 1, -c2(k as i64)))?.into()),
            |p| Ok(mod5_rhs(param(p, "n"), 1)?.into()),
        ),
        entry(
            "tauraso-kd",
            "sum_{k<n} q^k [2k;k+d] = ((n-|d|)/3) q^{3r(r+1)/2 + |d|(2r+1)} mod Phi_n, r = floor(2(n-|d|)/3)",
            Tag::Theorem,
            Family::Congruence,
            ND,
            tauraso_guard,
            mod_phi_n,
            |p| {
                let (n, d) = (param(p, "n") as u64, param(p, "d").unsigned_abs());
                Ok(family_sum(CentralFamily::shifted(d), n, |k| (false, k as i64))?.into())
            },
            |p| Ok(tauraso_rhs(param(p, "n"), param(p, "d")).into()),
        ),
        entry(
            "mn-to3",
            "sum_{k<mn} q^k [2k;k] = sum_{j<m} C(2j,j) * sum_{k<n} q^k [2k;k] mod Phi_n",
            Tag::Theorem,
            Family::Congruence,
            MN,
            mn_guard,
            mod_phi_n,
            |p| Ok(plain_sum((param(p, "m") * param(p, "n")) as u64)?.into()),
            |p| {
                let c = central_integer_sum(param(p, "m") as u64, false);
                Ok(plain_sum(param(p, "n") as u64)?.scale(&c).into())
            },
        ),
        entry(
            "mn-to5",
            "sum_{k<mn} (-1)^k q^{-C(k+1,2)} [2k;k] = sum_{j<m} (-1)^j C(2j,j) * sum_{k<n} (-1)^k q^{-C(k+1,2)} [2k;k] mod Phi_n",
            Tag::Theorem,
            Family::Congruence,
            MN,
            mn_guard,
            mod_phi_n,
            |p| Ok(mod5_lhs((param(p, "m") * param(p, "n")) as u64)?.into()),
            |p| {
                let c = central_integer_sum(param(p, "m") as u64, true);
                Ok(mod5_lhs(param(p, "n") as u64)?.scale(&c).into())
            },
        ),
        entry(
            "phi3",
            "sum_{k<3^a m} q^k [2k;k] = 0 mod (1-q^{3^a})/(1-q)",
            Tag::Theorem,
            Family::Congruence,
            AM,
            geom_guard(3, 16),
            geom_mode(3, false),
            |p| Ok(plain_sum(geom_length(3, p))?.into()),
            zero,
        ),
        entry(
            "phi5",
            "sum_{k<5^a m} (-1)^k q^{-C(k+1,2)} [2k;k] = 0 mod (1-q^{5^a})/(1-q)",
            Tag::Theorem,
            Family::Congruence,
            AM,
            geom_guard(5, 16),
            geom_mode(5, false),
            |p| Ok(mod5_lhs(geom_length(5, p))?.into()),
            zero,
        ),
        entry(
            "2kbrack",
            "sum_{k<n} q^k [2k;k] = 0 mod Phi_n when 3 | n",
            Tag::Theorem,
            Family::Congruence,
            N,
            |p| {
                within(p, "n", 1, MAX_TERMS)?;
                if param(p, "n") % 3 != 0 {
                    return Err("requires 3 | n".into());
                }
                Ok(())
            },
            mod_phi_n,
            |p| Ok(plain_sum(param(p, "n") as u64)?.into()),
            zero,
        ),
        entry(
            "cor36",
            "sum_{k<n} q^{2k+1} [2k;k] = (n/3) mod Phi_n when gcd(n,3) = 1",
            Tag::Theorem,
            Family::Congruence,
            N,
            |p| {
                within(p, "n", 1, MAX_TERMS)?;
                if gcd(param(p, "n") as u64, 3) != 1 {
                    return Err("requires gcd(n,3) = 1".into());
                }
                Ok(())
            },
            mod_phi_n,
            |p| Ok(odd_shift_sum(param(p, "n") as u64)?.into()),
            |p| Ok(LaurentPoly::constant(symbol(param(p, "n"), 3)).into()),
        ),
        cor(
            "2k-first",
            "sum_{k<n} q^k [2k;k+d] (-q^{k+1};q)_{n-k-1} = 0 or (-1)^{(n+d-1)/2} q^{(d(2n-3d)-(n+1)^2)/4} mod Phi_n",
            Cor::First,
        ),
        cor(
            "2k-second",
            "sum_{k<n} q^k [2k;k+d] (-q^k;q)_{n-k-1} = (-1)^{(n+d)/2} q^{(d(2n-3d)-n^2+2d)/4} (1-q^{n-d})/(1+q) or (-1)^{(n+d-1)/2} q^{(d(2n-3d)-(n+1)^2)/4} mod Phi_n",
            Cor::Second,
        ),
        cor(
            "2k-third",
            "sum_{k<n} q^{-k(k+3)/2} [2k;k+d] (-q^{k+1};q)_{n-k-1} = (-1)^{(n+d-2)/2} q^{(5-(n-d+1)^2)/4} (1-q^{n-d}) or (-1)^{(n+d-1)/2} q^{(5-(n-d)^2)/4} mod Phi_n",
            Cor::Third,
        ),
        cor(
            "2k-fourth",
            "sum_{k<n} q^{-k(k+3)/2} [2k;k+d] (-q^k;q)_{n-k-1} = (-1)^{(n+d-2)/2} q^{(9-(n-d+1)^2)/4} (1-q^{n-d})/(1+q) or (-1)^{(n+d-1)/2} q^{(5-(n-d)^2)/4} mod Phi_n",
            Cor::Fourth,
        ),
        cor(
            "2k-first-inv",
            "sum_{k<n} q^{-C(k+1,2)} [2k;k+d] (-q^{k+1};q)_{n-k-1} = 0 or (-1)^{(n+d-1)/2} q^{(1-(n-d)^2)/4} mod Phi_n",
            Cor::FirstInv,
        ),
        cor(
            "2k-third-inv",
            "sum_{k<n} q^{2k} [2k;k+d] (-q^{k+1};q)_{n-k-1} = (-1)^{(n+d)/2} q^{(d(2n-3d)-n^2+2d-4)/4} (1-q^{n-d}) or (-1)^{(n+d-1)/2} q^{(d(2n-3d)-(n+1)^2-4)/4} mod Phi_n",
            Cor::ThirdInv,
        ),
        entry(
            "qfib-remark",
            "sum_{k<n} q^{-C(k-d,2)} [2k;k+d] t^k = t^d F_{2(n-d)}(-t q^{2d+1}) mod Phi_n, coefficientwise in t",
            Tag::Theorem,
            Family::Congruence,
            ND,
            |p| {
                within(p, "n", 1, MAX_TERMS)?;
                within(p, "d", 0, param(p, "n") - 1)
            },
            mod_phi_n,
            |p| Ok(fib_remark_lhs(param(p, "n") as u64, param(p, "d") as u64)?.into()),
            |p| {
                let (n, d) = (param(p, "n"), param(p, "d"));
                let f = qfib(2 * (n - d) as u64);
                Ok(f.substitute_t(-1, 2 * d + 1).shift_t(d as usize).into())
            },
        ),
        entry(
            "conj37-q",
            "sum_{k<3^a m} q^k [2k;k] = 0 mod ((1-q^{3^a})/(1-q))^2",
            Tag::Conjecture,
            Family::Congruence,
            AM,
            geom_guard(3, 16),
            geom_mode(3, true),
            |p| Ok(plain_sum(geom_length(3, p))?.into()),
            zero,
        ),
        entry(
            "conj38-a",
            "sum_{k<p^a} q^k [2k;k] = (p^a/3) q^{floor(p^a/2 - (p^a/3) p^a/6) + floor(p^a/3) p^a} mod Phi_{p^a}^2",
            Tag::Conjecture,
            Family::Congruence,
            PA,
            prime_power_guard(false),
            phi_square,
            |p| Ok(plain_sum(prime_power(p) as u64)?.into()),
            |p| {
                let pa = prime_power(p);
                let s = symbol(pa, 3);
                // floor(pa/2 - s*pa/6) = floor(pa(3 - s)/6)
                let e = (pa * (3 - s)).div_euclid(6) + (pa / 3) * pa;
                Ok(LaurentPoly::monomial(s, e).into())
            },
        ),
        entry(
            "conj38-b",
            "sum_{k<p^a} q^{2k+1} [2k;k] = (p^a/3) q^{(floor((p^a+1)/3) + (p^a/3)) p^a} mod Phi_{p^a}^2, p != 3",
            Tag::Conjecture,
            Family::Congruence,
            PA,
            prime_power_guard(true),
            phi_square,
            |p| Ok(odd_shift_sum(prime_power(p) as u64)?.into()),
            |p| {
                let pa = prime_power(p);
                let s = symbol(pa, 3);
                Ok(LaurentPoly::monomial(s, ((pa + 1) / 3 + s) * pa).into())
            },
        ),
    ]
}
