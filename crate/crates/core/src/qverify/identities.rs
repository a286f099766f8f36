//! Exact identities, series identities and root-of-unity evaluations.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;

use super::sums::{central_sum, family_sum, greene_sum, nkk_sum, CentralFamily};
use super::{entry, param, phi, within, BuildError, Built, Mode, QEntry, MAX_TERMS};
use crate::check::{Family, ParamSpec, Params, Tag};
use crate::qcore::{gcd, jacobi, qbinom, qbinom_signed, qfib};
use crate::zpoly::{qpoch_inf, BivariatePoly, LaurentPoly, TruncatedSeries};

const N: &[ParamSpec] = &[ParamSpec::required("n")];
const ND: &[ParamSpec] = &[ParamSpec::required("n"), ParamSpec::required("d")];
const NM: &[ParamSpec] = &[ParamSpec::required("n"), ParamSpec::required("m")];
const NK: &[ParamSpec] = &[ParamSpec::required("n"), ParamSpec::required("k")];
const MKD: &[ParamSpec] = &[
    ParamSpec::required("m"),
    ParamSpec::required("k"),
    ParamSpec::required("d"),
];
const ANDREWS: &[ParamSpec] = &[
    ParamSpec::required("s1"),
    ParamSpec::required("alpha"),
    ParamSpec::required("s2"),
    ParamSpec::required("beta"),
    ParamSpec::with_default("N", 60),
];

/// Largest truncation order accepted by the series entries.
const MAX_ORDER: i64 = 1000;

fn exact(_: &Params) -> Built<Mode> {
    Ok(Mode::Exact)
}

fn c2(k: i64) -> i64 {
    k * (k - 1) / 2
}

fn symbol(n: i64, m: u64) -> i64 {
    jacobi(n, m).expect("odd modulus").value()
}

/// `(-1)^neg * q^e * f`
fn signed_shift(f: &LaurentPoly, neg: bool, e: i64) -> LaurentPoly {
    let g = f.shift(e);
    if neg {
        -&g
    } else {
        g
    }
}

fn lemma_nkk_rhs(n: i64) -> Built<LaurentPoly> {
    let s = symbol(n + 1, 3);
    if s == 0 {
        return Ok(LaurentPoly::zero());
    }
    if n * (n - 1) % 6 != 0 {
        return Err(BuildError::Invalid(format!("exponent n(n-1)/6 not integral at n={n}")));
    }
    let sign = if n % 2 == 0 { s } else { -s };
    Ok(LaurentPoly::monomial(sign, n * (n - 1) / 6))
}

/// Which of the four finite q-series identities.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Qser {
    One,
    Two,
    Three,
    Four,
}

fn qser_guard(p: &Params) -> Result<(), String> {
    within(p, "n", 1, MAX_TERMS)?;
    within(p, "d", 0, param(p, "n"))
}

fn qser_lhs(which: Qser, n: u64, d: u64) -> Built<LaurentPoly> {
    // (-q^{k+1}; q)_{n-k} or (-q^k; q)_{n-k}
    let off = if matches!(which, Qser::One | Qser::Three) { 1 } else { 0 };
    let fam = CentralFamily::shifted(d).with_outer(n).with_poch(off, n + off);
    let alt = matches!(which, Qser::One | Qser::Two);
    Ok(family_sum(fam, n + 1, |k| {
        let j = (n - k) as i64;
        (j % 2 == 1, if alt { c2(j) } else { j })
    })?)
}

fn qser_rhs(which: Qser, n: i64, d: i64) -> Built<LaurentPoly> {
    let even = (n - d) % 2 == 0;
    if even {
        let b = qbinom(n as u64, (n - d) / 2).substitute_power(2)?;
        return Ok(match which {
            Qser::One | Qser::Two => b.shift((n * n - d * d) / 2),
            Qser::Three | Qser::Four => b,
        });
    }
    let b = qbinom_signed(n - 1, (n - d - 1) / 2).substitute_power(2)?;
    let factor = match which {
        Qser::One => return Ok(LaurentPoly::zero()),
        Qser::Two => LaurentPoly::from_terms([(n, 1i64), (0, -1)]).shift((n * n - d * d - 1) / 2),
        Qser::Three => LaurentPoly::from_terms([(0, 1i64), (2 * n, -1)]),
        Qser::Four => LaurentPoly::from_terms([(0, 1i64), (n, -1)]),
    };
    Ok(&factor * &b)
}

fn qser(id: &'static str, statement: &'static str, which: Qser) -> QEntry {
    entry(
        id,
        statement,
        Tag::Theorem,
        Family::Identity,
        ND,
        qser_guard,
        exact,
        move |p| Ok(qser_lhs(which, param(p, "n") as u64, param(p, "d") as u64)?.into()),
        move |p| Ok(qser_rhs(which, param(p, "n"), param(p, "d"))?.into()),
    )
}

/// `sum_{k>=0} q^{k^2} [n-k-1; k] t^k`.
fn qfib_explicit(n: i64) -> BivariatePoly {
    let tcoeffs = (0..=n.max(0))
        .map(|k| qbinom_signed(n - k - 1, k).shift(k * k))
        .collect();
    BivariatePoly::from_tcoeffs(tcoeffs)
}

/// Parameters `a = s1 q^alpha`, `b = s2 q^beta`, truncation `N`.
#[derive(Clone, Copy)]
struct AndrewsParams {
    s1: i8,
    alpha: u64,
    s2: i8,
    beta: u64,
    order: usize,
}

impl AndrewsParams {
    fn read(p: &Params) -> Self {
        Self {
            s1: param(p, "s1") as i8,
            alpha: param(p, "alpha") as u64,
            s2: param(p, "s2") as i8,
            beta: param(p, "beta") as u64,
            order: param(p, "N") as usize,
        }
    }
}

fn andrews_guard(p: &Params) -> Result<(), String> {
    for s in ["s1", "s2"] {
        if param(p, s).abs() != 1 {
            return Err(format!("requires {s} = +-1"));
        }
    }
    within(p, "alpha", 0, MAX_ORDER)?;
    within(p, "beta", 0, MAX_ORDER)?;
    within(p, "N", 1, MAX_ORDER)
}

/// `sum_k (a;q)_k (b;q)_k q^{C(k+shift,2)} / ((q;q)_k (abq;q^2)_k)` to order N,
/// with `shift` 1 or 0.
fn andrews_lhs(a: AndrewsParams, shift: u64) -> Built<TruncatedSeries> {
    let n = a.order;
    let mut total = vec![BigInt::from(0); n];
    let mut term = TruncatedSeries::one(n)?;
    let ab = a.s1 * a.s2;
    for k in 0u64.. {
        let w = ((k + shift) * (k + shift).saturating_sub(1) / 2) as usize;
        if w >= n {
            break;
        }
        for (i, c) in term.coeffs()[..n - w].iter().enumerate() {
            total[i + w] += c;
        }
        term.mul_binomial(-a.s1, (a.alpha + k) as usize);
        term.mul_binomial(-a.s2, (a.beta + k) as usize);
        term.div_binomial(-1, (k + 1) as usize)?;
        term.div_binomial(-ab, (a.alpha + a.beta + 1 + 2 * k) as usize)?;
    }
    Ok(TruncatedSeries::from_poly(&LaurentPoly::from_dense(0, total), n)?)
}

/// `(-q;q)_inf (a q^c; q^2)_inf (b q^c; q^2)_inf / (abq; q^2)_inf` with `c` 1 or 0.
fn andrews_product(a: AndrewsParams, c: u64) -> Built<TruncatedSeries> {
    let n = a.order;
    let num = &(&qpoch_inf(-1, 1, 1, n)? * &qpoch_inf(a.s1, a.alpha + c, 2, n)?) * &qpoch_inf(a.s2, a.beta + c, 2, n)?;
    Ok(num.div(&qpoch_inf(a.s1 * a.s2, a.alpha + a.beta + 1, 2, n)?)?)
}

fn coprime_guard(p: &Params) -> Result<(), String> {
    within(p, "n", 1, MAX_TERMS)?;
    let (n, m) = (param(p, "n"), param(p, "m"));
    if gcd(m.unsigned_abs(), n as u64) != 1 {
        return Err("requires gcd(m,n) = 1".into());
    }
    Ok(())
}

fn at_root(p: &Params) -> Built<Mode> {
    Ok(Mode::AtRoot {
        n: phi(param(p, "n"))?,
        m: param(p, "m"),
    })
}

/// `exp(2 pi i m e / n)`, with `m e` reduced mod `n` first.
fn root_power(n: i64, m: i64, e: i64) -> Complex64 {
    let r = (m as i128 * e as i128).rem_euclid(n as i128) as f64;
    Complex64::from_polar(1.0, 2.0 * PI * r / n as f64)
}

fn pimod5_table(n: i64, m: i64) -> Complex64 {
    match n % 5 {
        0 => Complex64::new(0.0, 0.0),
        1 => root_power(n, m, -(n / 5)),
        2 => -root_power(n, m, -(3 * n / 5)),
        3 => -root_power(n, m, -(2 * n / 5)),
        _ => root_power(n, m, -(4 * n / 5)),
    }
}

fn lem21_guard(p: &Params) -> Result<(), String> {
    within(p, "n", 1, MAX_TERMS)?;
    within(p, "k", 0, param(p, "n") - 1)
}

fn qlucas_guard(p: &Params) -> Result<(), String> {
    within(p, "m", 0, MAX_TERMS)?;
    within(p, "k", 0, MAX_TERMS)?;
    within(p, "d", 1, MAX_TERMS)
}

fn qlucas_rhs(m: i64, k: i64, d: i64) -> LaurentPoly {
    let (a, b, r, s) = (m / d, m % d, k / d, k % d);
    if r > a {
        return LaurentPoly::zero();
    }
    let c: BigInt = num_integer::binomial(BigInt::from(a), BigInt::from(r));
    qbinom(b as u64, s).scale(&c)
}

pub(super) fn entries() -> Vec<QEntry> {
    vec![
        entry(
            "lemma-nkk",
            "sum_{k=0}^n (-1)^k q^{C(k,2)} [n-k;k] = (-1)^n ((n+1)/3) q^{n(n-1)/6}",
            Tag::Theorem,
            Family::Identity,
            N,
            |p| within(p, "n", 0, MAX_TERMS),
            exact,
            |p| Ok(nkk_sum(param(p, "n") as u64)?.into()),
            |p| Ok(lemma_nkk_rhs(param(p, "n"))?.into()),
        ),
        qser(
            "qser-1",
            "sum_k (-1)^{n-k} q^{C(n-k,2)} [n;k][2k;k+d] (-q^{k+1};q)_{n-k} = q^{(n^2-d^2)/2} [n;(n-d)/2]_{q^2} or 0",
            Qser::One,
        ),
        qser(
            "qser-2",
            "sum_k (-1)^{n-k} q^{C(n-k,2)} [n;k][2k;k+d] (-q^k;q)_{n-k} = q^{(n^2-d^2)/2} [n;(n-d)/2]_{q^2} or q^{(n^2-d^2-1)/2}(q^n-1)[n-1;(n-d-1)/2]_{q^2}",
            Qser::Two,
        ),
        qser(
            "qser-3",
            "sum_k (-q)^{n-k} [n;k][2k;k+d] (-q^{k+1};q)_{n-k} = [n;(n-d)/2]_{q^2} or (1-q^{2n})[n-1;(n-d-1)/2]_{q^2}",
            Qser::Three,
        ),
        qser(
            "qser-4",
            "sum_k (-q)^{n-k} [n;k][2k;k+d] (-q^k;q)_{n-k} = [n;(n-d)/2]_{q^2} or (1-q^n)[n-1;(n-d-1)/2]_{q^2}",
            Qser::Four,
        ),
        entry(
            "qfib-explicit",
            "F_n(t) from F_n = F_{n-1} + q^{n-2} t F_{n-2} equals sum_k q^{k^2} [n-k-1;k] t^k",
            Tag::Theorem,
            Family::Identity,
            N,
            |p| within(p, "n", 0, MAX_TERMS),
            exact,
            |p| Ok(qfib(param(p, "n") as u64).into()),
            |p| Ok(qfib_explicit(param(p, "n")).into()),
        ),
        entry(
            "andrews",
            "sum_k (a;q)_k (b;q)_k q^{C(k+1,2)} / ((q;q)_k (abq;q^2)_k) = (-q;q)_inf (aq;q^2)_inf (bq;q^2)_inf / (abq;q^2)_inf, a = s1 q^alpha, b = s2 q^beta, mod q^N",
            Tag::Theorem,
            Family::Identity,
            ANDREWS,
            andrews_guard,
            exact,
            |p| Ok(andrews_lhs(AndrewsParams::read(p), 1)?.into()),
            |p| Ok(andrews_product(AndrewsParams::read(p), 1)?.into()),
        ),
        entry(
            "andrews-2",
            "sum_k (a;q)_k (b;q)_k q^{C(k,2)} / ((q;q)_k (abq;q^2)_k) = (-q;q)_inf [(aq;q^2)_inf (bq;q^2)_inf + (a;q^2)_inf (b;q^2)_inf] / (abq;q^2)_inf, mod q^N",
            Tag::Theorem,
            Family::Identity,
            ANDREWS,
            andrews_guard,
            exact,
            |p| Ok(andrews_lhs(AndrewsParams::read(p), 0)?.into()),
            |p| {
                let a = AndrewsParams::read(p);
                Ok((&andrews_product(a, 1)? + &andrews_product(a, 0)?).into())
            },
        ),
        entry(
            "greene-krammer",
            "1 + 2 sum_{k=1}^{n-1} (-1)^k q^{-C(k,2)} [2k-1;k] at q = exp(2 pi i m/n) equals (m/5) sqrt5 if 5|n, else (n/5)",
            Tag::Theorem,
            Family::Identity,
            NM,
            coprime_guard,
            at_root,
            |p| Ok(greene_sum(param(p, "n") as u64)?.into()),
            |p| {
                let (n, m) = (param(p, "n"), param(p, "m"));
                let v = if n % 5 == 0 {
                    symbol(m, 5) as f64 * 5f64.sqrt()
                } else {
                    symbol(n, 5) as f64
                };
                Ok(Complex64::new(v, 0.0).into())
            },
        ),
        entry(
            "dual-3n",
            "sum_{k<n} q^{2k+1} [2k;k] at q = exp(2 pi i m/n) equals (m/3) i sqrt3 if 3|n, else (n/3)",
            Tag::Theorem,
            Family::Identity,
            NM,
            coprime_guard,
            at_root,
            |p| Ok(central_sum(param(p, "n") as u64, |k| (false, 2 * k as i64 + 1))?.into()),
            |p| {
                let (n, m) = (param(p, "n"), param(p, "m"));
                Ok(if n % 3 == 0 {
                    Complex64::new(0.0, symbol(m, 3) as f64 * 3f64.sqrt())
                } else {
                    Complex64::new(symbol(n, 3) as f64, 0.0)
                }
                .into())
            },
        ),
        entry(
            "pimod5",
            "sum_{k<n} (-1)^k w^{-C(k+1,2)} [2k;k]_w for w = exp(2 pi i m/n): 0, w^{-[n/5]}, -w^{-[3n/5]}, -w^{-[2n/5]}, w^{-[4n/5]} by n mod 5",
            Tag::Theorem,
            Family::Identity,
            NM,
            coprime_guard,
            at_root,
            |p| Ok(super::congruences::mod5_lhs(param(p, "n") as u64)?.into()),
            |p| Ok(pimod5_table(param(p, "n"), param(p, "m")).into()),
        ),
        entry(
            "lem2.1-transform",
            "q^{-C(k+1,2)} [2k;k] = (-1)^k q^{k^2} [n-k-1;k] mod Phi_n, 0 <= k < n",
            Tag::Theorem,
            Family::Identity,
            NK,
            lem21_guard,
            |p| Ok(Mode::ModPhi(phi(param(p, "n"))?)),
            |p| {
                let k = param(p, "k");
                Ok(qbinom(2 * k as u64, k).shift(-c2(k + 1)).into())
            },
            |p| {
                let (n, k) = (param(p, "n"), param(p, "k"));
                Ok(signed_shift(&qbinom_signed(n - k - 1, k), k % 2 == 1, k * k).into())
            },
        ),
        entry(
            "qlucas",
            "[m;k] = C(a,r) [b;s] mod Phi_d where m = ad+b, k = rd+s, 0 <= b,s < d",
            Tag::Theorem,
            Family::Identity,
            MKD,
            qlucas_guard,
            |p| Ok(Mode::ModPhi(phi(param(p, "d"))?)),
            |p| Ok((*qbinom(param(p, "m") as u64, param(p, "k"))).clone().into()),
            |p| Ok(qlucas_rhs(param(p, "m"), param(p, "k"), param(p, "d")).into()),
        ),
    ]
}
