//! The registry of integer congruences.

use std::fmt;
use std::sync::{Arc, OnceLock};

use super::{criterion_row, fin_sum, prime_power_sum, reduce, sum_mod, ArithError, Base};
use crate::check::{run_checked, Check, CheckError, CheckResult, Family, ParamSpec, Params, RunOptions, Tag};
use crate::qcore::{is_prime, jacobi, prime_factors};
use crate::qverify::{BuildError, Built};

/// Longest sum an integer check will run.
pub const MAX_INT_TERMS: u64 = 5_000_000;

impl From<ArithError> for BuildError {
    fn from(e: ArithError) -> Self {
        match e {
            ArithError::ModulusTooLarge { .. } => BuildError::Skip(e.to_string()),
            _ => BuildError::Invalid(e.to_string()),
        }
    }
}

/// One congruence evaluated at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub label: String,
    pub holds: bool,
    pub detail: String,
}

impl Claim {
    /// `got = want (mod modulus)`, where `got` is already reduced.
    pub fn congruent(label: impl Into<String>, got: u64, want: i64, modulus: u64) -> Self {
        let want_r = reduce(want, modulus);
        Claim {
            label: label.into(),
            holds: got == want_r,
            detail: format!("sum = {got} mod {modulus}, expected {want} = {want_r}"),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, self.detail)
    }
}

/// The claims at one point plus an optional remark kept on passing results.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub claims: Vec<Claim>,
    pub note: Option<String>,
}

impl From<Vec<Claim>> for Verdict {
    fn from(claims: Vec<Claim>) -> Self {
        Verdict { claims, note: None }
    }
}

pub type Evaluator = Arc<dyn Fn(&Params) -> Built<Verdict> + Send + Sync>;

#[derive(Clone)]
pub struct IntEntry {
    pub id: &'static str,
    pub statement: &'static str,
    pub tag: Tag,
    pub signature: &'static [ParamSpec],
    pub eval: Evaluator,
}

impl fmt::Debug for IntEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntEntry")
            .field("id", &self.id)
            .field("tag", &self.tag)
            .finish_non_exhaustive()
    }
}

impl IntEntry {
    pub fn with_eval(mut self, eval: Evaluator) -> Self {
        self.eval = eval;
        self
    }
}

impl Check for IntEntry {
    fn id(&self) -> &str {
        self.id
    }

    fn statement(&self) -> &str {
        self.statement
    }

    fn tag(&self) -> Tag {
        self.tag
    }

    fn family(&self) -> Family {
        Family::Integer
    }

    fn signature(&self) -> &[ParamSpec] {
        self.signature
    }

    fn run(&self, params: &Params, _opts: &RunOptions) -> CheckResult {
        let p = params.clone();
        match (self.eval)(params) {
            Ok(v) => {
                let bad: Vec<String> = v.claims.iter().filter(|c| !c.holds).map(|c| c.to_string()).collect();
                if bad.is_empty() {
                    let mut r = CheckResult::pass(self.id, p, self.tag);
                    r.witness = v.note;
                    r
                } else {
                    CheckResult::fail(self.id, p.clone(), self.tag, format!("{p}: {}", bad.join("; ")))
                }
            }
            Err(BuildError::Skip(why)) => CheckResult::skipped(self.id, p, self.tag, why),
            Err(BuildError::Invalid(why)) => {
                CheckResult::fail(self.id, p.clone(), self.tag, format!("{p}: could not evaluate: {why}"))
            }
        }
    }
}

fn entry<F>(id: &'static str, statement: &'static str, tag: Tag, signature: &'static [ParamSpec], eval: F) -> IntEntry
where
    F: Fn(&Params) -> Built<Verdict> + Send + Sync + 'static,
{
    IntEntry {
        id,
        statement,
        tag,
        signature,
        eval: Arc::new(eval),
    }
}

fn get(p: &Params, name: &str) -> i64 {
    p.get(name).unwrap_or_else(|| panic!("parameter '{name}' missing after validation"))
}

fn skip<T>(why: impl Into<String>) -> Built<T> {
    Err(BuildError::Skip(why.into()))
}

fn positive(p: &Params, name: &str) -> Built<u64> {
    match get(p, name) {
        v if v >= 1 => Ok(v as u64),
        _ => skip(format!("requires {name} >= 1")),
    }
}

fn prime(p: &Params) -> Built<u64> {
    match get(p, "p") {
        v if v >= 2 && is_prime(v as u64) => Ok(v as u64),
        v => skip(format!("p = {v} is not prime")),
    }
}

fn exponent(p: &Params) -> Built<u32> {
    match get(p, "a") {
        v if (1..=62).contains(&v) => Ok(v as u32),
        v if v < 1 => skip("requires a >= 1"),
        _ => skip("a is too large"),
    }
}

/// `base^e`, skipping when it overflows or the sum would be too long.
fn power(base: u64, e: u32) -> Built<u64> {
    match base.checked_pow(e) {
        Some(v) if v <= MAX_INT_TERMS => Ok(v),
        _ => skip(format!("{base}^{e} exceeds the supported {MAX_INT_TERMS} terms")),
    }
}

fn length(len: u64, factor: u64) -> Built<u64> {
    match len.checked_mul(factor) {
        Some(v) if v <= MAX_INT_TERMS => Ok(v),
        _ => skip(format!("sum length exceeds the supported {MAX_INT_TERMS} terms")),
    }
}

fn legendre(n: i64, m: u64) -> i64 {
    jacobi(n, m).expect("odd modulus").value()
}

const PA: &[ParamSpec] = &[ParamSpec::required("p"), ParamSpec::required("a")];
const PAD: &[ParamSpec] = &[ParamSpec::required("p"), ParamSpec::required("a"), ParamSpec::required("d")];
const AM: &[ParamSpec] = &[ParamSpec::required("a"), ParamSpec::required("m")];
const A: &[ParamSpec] = &[ParamSpec::required("a")];
const M: &[ParamSpec] = &[ParamSpec::required("m")];
const MA: &[ParamSpec] = &[ParamSpec::required("m"), ParamSpec::required("a")];
const MAN: &[ParamSpec] = &[ParamSpec::required("m"), ParamSpec::required("a"), ParamSpec::required("n")];
const AN: &[ParamSpec] = &[ParamSpec::required("a"), ParamSpec::required("n")];

/// `p^a` and `d` with `|d| <= p^a`; beyond that the sum is empty.
fn prime_power_and_shift(p: &Params) -> Built<(u64, u32, u64, i64)> {
    let (q, a) = (prime(p)?, exponent(p)?);
    let n = power(q, a)?;
    let d = get(p, "d");
    if d.unsigned_abs() > n {
        return skip("requires |d| <= p^a");
    }
    Ok((q, a, n, d))
}

fn st1(p: &Params) -> Built<Verdict> {
    let (q, _, n, d) = prime_power_and_shift(p)?;
    let got = prime_power_sum(q, 1, d, n, Base::Int(1))?;
    let want = legendre(n as i64 - d.abs(), 3);
    Ok(vec![Claim::congruent("sum C(2k,k+d)", got, want, q)].into())
}

fn st2(p: &Params) -> Built<Verdict> {
    let (q, a) = (prime(p)?, exponent(p)?);
    let n = power(q, a)?;
    let got = prime_power_sum(q, 1, 0, n, Base::Int(-1))?;
    Ok(vec![Claim::congruent("sum (-1)^k C(2k,k)", got, legendre(n as i64, 5), q)].into())
}

fn st3(p: &Params) -> Built<Verdict> {
    if get(p, "p") == 2 {
        return skip("requires p >= 3");
    }
    let (q, _, n, d) = prime_power_and_shift(p)?;
    let got = prime_power_sum(q, 1, d, n, Base::Inverse(2))?;
    let gap = n as i64 - d.abs();
    let want = match gap.rem_euclid(4) {
        0 | 2 => 0,
        1 => 1,
        _ => -1,
    };
    Ok(vec![Claim::congruent("sum C(2k,k+d) 2^-k", got, want, q)].into())
}

fn ssz(p: &Params) -> Built<Verdict> {
    let (a, m) = (exponent(p)?, positive(p, "m")?);
    let len = length(power(3, a)?, m)?;
    let got = prime_power_sum(3, 2 * a, 0, len, Base::Int(1))?;
    Ok(vec![Claim::congruent("sum C(2k,k)", got, 0, 3u64.pow(2 * a))].into())
}

fn newconj2(p: &Params) -> Built<Verdict> {
    let (q, a) = (prime(p)?, exponent(p)?);
    let n = power(q, a)?;
    let got = prime_power_sum(q, 2, 0, n, Base::Int(1))?;
    Ok(vec![Claim::congruent("sum C(2k,k)", got, legendre(n as i64, 3), q * q)].into())
}

/// `sum_{k<len} C(2k,k) base^k = want (mod p^{a+1})` with `len = p^a`.
fn next_power_claim(label: &str, q: u64, a: u32, base: i64, want_factor: i64) -> Built<Claim> {
    let n = power(q, a)?;
    let got = prime_power_sum(q, a + 1, 0, n, Base::Int(base))?;
    Ok(Claim::congruent(label, got, want_factor * n as i64, q.pow(a + 1)))
}

fn conj37_int(p: &Params) -> Built<Verdict> {
    let a = exponent(p)?;
    Ok(vec![next_power_claim("sum (-1)^k C(2k,k)", 5, a, -1, 1)?].into())
}

fn conj51(p: &Params) -> Built<Verdict> {
    let m = get(p, "m");
    let (a, n) = (exponent(p)?, positive(p, "n")?);
    let four = (4 * m as i128 - 1).unsigned_abs();
    if four < 2 {
        return skip("4m-1 has no prime factor");
    }
    let mut claims = Vec::new();
    for (q, _) in prime_factors(four as u64) {
        let len = length(power(q, a)?, n)?;
        let modulus = q.checked_pow(a).ok_or(ArithError::ModulusTooLarge { p: q, t: a })?;
        let got = prime_power_sum(q, a, 0, len, Base::Int(m))?;
        claims.push(Claim::congruent(format!("p={q}"), got, 0, modulus));
    }
    Ok(claims.into())
}

fn conj52(p: &Params) -> Built<Verdict> {
    let m = positive(p, "m")?;
    let mi = m as i64;
    let (lo, hi) = (4 * m - 1, 4 * m + 1);
    Ok(vec![
        Claim::congruent("4m-1 side", sum_mod(lo, 0, lo, Base::Int(mi))?, 0, lo),
        Claim::congruent("4m+1 side", sum_mod(hi, 0, hi, Base::Int(-mi))?, 0, hi),
    ]
    .into())
}

fn conj53(p: &Params) -> Built<Verdict> {
    let a = exponent(p)?;
    Ok(vec![
        next_power_claim("base -2 mod 3^(a+1)", 3, a, -2, 1)?,
        next_power_claim("base -5 mod 3^(a+1)", 3, a, -5, 2)?,
        next_power_claim("base -5 mod 7^(a+1)", 7, a, -5, 1)?,
    ]
    .into())
}

fn conj54(p: &Params) -> Built<Verdict> {
    let (m, a) = (positive(p, "m")?, exponent(p)?);
    let mi = m as i64;
    let mut claims = Vec::new();
    if m != 1 && is_prime(4 * m - 1) {
        claims.push(next_power_claim("4m-1 side", 4 * m - 1, a, mi, 1)?);
    }
    if is_prime(4 * m + 1) {
        claims.push(next_power_claim("4m+1 side", 4 * m + 1, a, -mi, 1)?);
    }
    if claims.is_empty() {
        return skip("neither 4m-1 (with m != 1) nor 4m+1 is prime");
    }
    Ok(claims.into())
}

fn conj55(p: &Params) -> Built<Verdict> {
    let m = positive(p, "m")?;
    if m == 1 {
        return skip("m = 1 is excluded: both 3 and 5 are prime, so nothing is tested");
    }
    length(4 * m + 1, 1)?;
    let row = criterion_row(m)?;
    let claim = |label: &str, s: &super::CriterionSide| {
        let sq = s.number * s.number;
        let detail = format!(
            "sum = {} mod {sq}, criterion {}, {} is {}{}",
            s.residue,
            if s.criterion_holds { "holds" } else { "fails" },
            s.number,
            if s.is_prime { "prime" } else { "composite" },
            if s.excluded { " (excluded)" } else { "" }
        );
        Claim {
            label: label.to_string(),
            holds: !s.counterexample(),
            detail,
        }
    };
    let minus = claim("4m-1 side", &row.minus);
    let note = row.minus.excluded.then(|| minus.to_string());
    Ok(Verdict {
        claims: vec![minus, claim("4m+1 side", &row.plus)],
        note,
    })
}

fn conj56(p: &Params) -> Built<Verdict> {
    let (a, n) = (exponent(p)?, positive(p, "n")?);
    let block = power(5, a)?;
    let len = length(block, n)?;
    let sign = if a % 2 == 0 { 1 } else { -1 };
    Ok(vec![
        Claim::congruent("length 5^a n mod 5^a", fin_sum(5, a, len)?, 0, block),
        Claim::congruent("length 5^a mod 5^(a+1)", fin_sum(5, a + 1, block)?, sign * block as i64, 5 * block),
    ]
    .into())
}

fn entries() -> Vec<IntEntry> {
    use Tag::{Conjecture, Theorem};
    vec![
        entry("st-1", "sum_{k<p^a} C(2k,k+d) = ((p^a-|d|)/3) mod p", Theorem, PAD, st1),
        entry("st-2", "sum_{k<p^a} (-1)^k C(2k,k) = (p^a/5) mod p", Theorem, PA, st2),
        entry(
            "st-3",
            "sum_{k<p^a} C(2k,k+d) 2^-k = 0, 1, -1 mod p as p^a = |d| mod 2, |d|+1 mod 4, |d|-1 mod 4",
            Theorem,
            PAD,
            st3,
        ),
        entry("ssz", "sum_{k<3^a m} C(2k,k) = 0 mod 3^(2a)", Theorem, AM, ssz),
        entry("newconj2", "sum_{k<p^a} C(2k,k) = (p^a/3) mod p^2", Theorem, PA, newconj2),
        entry("conj37-int", "sum_{k<5^a} (-1)^k C(2k,k) = 5^a mod 5^(a+1)", Conjecture, A, conj37_int),
        entry(
            "conj51",
            "p | 4m-1 prime: sum_{k<p^a n} C(2k,k) m^k = 0 mod p^a",
            Conjecture,
            MAN,
            conj51,
        ),
        entry(
            "conj52",
            "sum_{k<=4m-2} C(2k,k) m^k = 0 mod 4m-1 and sum_{k<=4m} C(2k,k) (-m)^k = 0 mod 4m+1",
            Conjecture,
            M,
            conj52,
        ),
        entry(
            "conj53",
            "sum_{k<3^a} (-2)^k C(2k,k) = 3^a, sum_{k<3^a} (-5)^k C(2k,k) = 2*3^a mod 3^(a+1); sum_{k<7^a} (-5)^k C(2k,k) = 7^a mod 7^(a+1)",
            Conjecture,
            A,
            conj53,
        ),
        entry(
            "conj54",
            "l = 4m-1 prime, m != 1: sum_{k<l^a} C(2k,k) m^k = l^a mod l^(a+1); l = 4m+1 prime: same with (-m)^k",
            Conjecture,
            MA,
            conj54,
        ),
        entry(
            "conj55",
            "sum_{k<=4m-2} C(2k,k) m^k = 4m-1 mod (4m-1)^2 with m != 30 implies 4m-1 prime; sum_{k<=4m} C(2k,k) (-m)^k = 4m+1 mod (4m+1)^2 implies 4m+1 prime",
            Conjecture,
            M,
            conj55,
        ),
        entry(
            "conj56",
            "sum_{k<5^a n} C(4k,2k) C(2k,k)^2 = 0 mod 5^a and sum_{k<5^a} C(4k,2k) C(2k,k)^2 = (-1)^a 5^a mod 5^(a+1)",
            Conjecture,
            AN,
            conj56,
        ),
    ]
}

pub fn integer_registry() -> &'static [IntEntry] {
    static REG: OnceLock<Vec<IntEntry>> = OnceLock::new();
    REG.get_or_init(entries)
}

pub fn verify_integer(id: &str, params: &Params) -> Result<CheckResult, CheckError> {
    let e = integer_registry()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| CheckError::UnknownId(id.to_string()))?;
    run_checked(e, params, &RunOptions::default())
}
