//! Registries of polynomial identities and cyclotomic congruences.
//!
//! Every entry builds a left and a right side from its parameters and
//! compares them under a mode chosen per point. Builders are stored behind
//! `Arc` so that individual entries can be cloned and altered, for instance
//! to inject a deliberately wrong right-hand side in a test harness.

mod congruences;
mod identities;
mod sums;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::check::{run_checked, Check, CheckError, CheckResult, Family, ParamSpec, Params, RunOptions, Tag};
use crate::cycmod::{cleared_remainder, reduce_mod_phi, value_at_root, CycIndex, CycmodError};
use crate::qcore::{cyclotomic, QcoreError};
use crate::zpoly::{BivariatePoly, LaurentPoly, TruncatedSeries, ZpolyError};

/// Number of leading terms shown in failure witnesses.
const WITNESS_TERMS: usize = 6;

/// One side of a check.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Poly(LaurentPoly),
    Series(TruncatedSeries),
    Bivariate(BivariatePoly),
    Number(Complex64),
}

impl From<LaurentPoly> for Value {
    fn from(p: LaurentPoly) -> Self {
        Value::Poly(p)
    }
}

impl From<TruncatedSeries> for Value {
    fn from(s: TruncatedSeries) -> Self {
        Value::Series(s)
    }
}

impl From<BivariatePoly> for Value {
    fn from(b: BivariatePoly) -> Self {
        Value::Bivariate(b)
    }
}

impl From<Complex64> for Value {
    fn from(z: Complex64) -> Self {
        Value::Number(z)
    }
}

/// How the two sides are compared at one point.
#[derive(Clone, Debug, PartialEq)]
pub enum Mode {
    Exact,
    ModPhi(CycIndex),
    ModPhiPower(CycIndex, u32),
    ModPoly(LaurentPoly),
    /// Left side evaluated at `exp(2 pi i m / n)` against a numeric right side.
    AtRoot { n: CycIndex, m: i64 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::ModPhi(n) => write!(f, "mod Phi_{}", n.get()),
            Mode::ModPhiPower(n, e) => write!(f, "mod Phi_{}^{e}", n.get()),
            Mode::ModPoly(m) => write!(f, "mod {}", m.preview(WITNESS_TERMS)),
            Mode::AtRoot { n, m } => write!(f, "at exp(2 pi i {m}/{})", n.get()),
        }
    }
}

/// Why a side could not be built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildError {
    /// The point violates a constraint of the statement.
    Skip(String),
    /// Something that should be computable was not.
    Invalid(String),
}

impl From<ZpolyError> for BuildError {
    fn from(e: ZpolyError) -> Self {
        BuildError::Invalid(e.to_string())
    }
}

impl From<CycmodError> for BuildError {
    fn from(e: CycmodError) -> Self {
        BuildError::Invalid(e.to_string())
    }
}

impl From<QcoreError> for BuildError {
    fn from(e: QcoreError) -> Self {
        BuildError::Invalid(e.to_string())
    }
}

pub type Built<T> = Result<T, BuildError>;
pub type SideBuilder = Arc<dyn Fn(&Params) -> Built<Value> + Send + Sync>;
pub type ModeBuilder = Arc<dyn Fn(&Params) -> Built<Mode> + Send + Sync>;
pub type Guard = Arc<dyn Fn(&Params) -> Result<(), String> + Send + Sync>;

/// A registered identity or congruence.
#[derive(Clone)]
pub struct QEntry {
    pub id: &'static str,
    pub statement: &'static str,
    pub tag: Tag,
    pub family: Family,
    pub signature: &'static [ParamSpec],
    pub guard: Guard,
    pub lhs: SideBuilder,
    pub rhs: SideBuilder,
    pub mode: ModeBuilder,
}

impl fmt::Debug for QEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QEntry")
            .field("id", &self.id)
            .field("tag", &self.tag)
            .field("family", &self.family)
            .finish_non_exhaustive()
    }
}

impl QEntry {
    /// Replaces the right-hand side builder.
    pub fn with_rhs(mut self, rhs: SideBuilder) -> Self {
        self.rhs = rhs;
        self
    }

    fn evaluate(&self, params: &Params, opts: &RunOptions) -> Built<Result<(), String>> {
        (self.guard)(params).map_err(BuildError::Skip)?;
        let mode = (self.mode)(params)?;
        let lhs = (self.lhs)(params)?;
        let rhs = (self.rhs)(params)?;
        compare(&lhs, &rhs, &mode, opts.tol)
    }
}

impl Check for QEntry {
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
        self.family
    }

    fn signature(&self) -> &[ParamSpec] {
        self.signature
    }

    fn run(&self, params: &Params, opts: &RunOptions) -> CheckResult {
        let p = params.clone();
        match self.evaluate(params, opts) {
            Ok(Ok(())) => CheckResult::pass(self.id, p, self.tag),
            Ok(Err(why)) => CheckResult::fail(self.id, p.clone(), self.tag, format!("{p}: {why}")),
            Err(BuildError::Skip(why)) => CheckResult::skipped(self.id, p, self.tag, why),
            Err(BuildError::Invalid(why)) => {
                CheckResult::fail(self.id, p.clone(), self.tag, format!("{p}: could not evaluate: {why}"))
            }
        }
    }
}

fn poly_diff_witness(diff: &LaurentPoly, mode: &Mode) -> String {
    format!("lhs - rhs = {} ({mode})", diff.preview(WITNESS_TERMS))
}

fn reduce(diff: &LaurentPoly, mode: &Mode) -> Built<LaurentPoly> {
    Ok(match mode {
        Mode::Exact => diff.clone(),
        Mode::ModPhi(n) => reduce_mod_phi(diff, *n),
        Mode::ModPhiPower(n, e) => cleared_remainder(diff, &cyclotomic(n.get()).pow(*e))?,
        Mode::ModPoly(m) => cleared_remainder(diff, m)?,
        Mode::AtRoot { .. } => return Err(BuildError::Invalid("numeric mode on a symbolic comparison".into())),
    })
}

/// `Ok(Ok(()))` when the sides agree, `Ok(Err(witness))` when they do not.
pub fn compare(lhs: &Value, rhs: &Value, mode: &Mode, tol: f64) -> Built<Result<(), String>> {
    match (lhs, rhs, mode) {
        (Value::Poly(f), Value::Number(z), Mode::AtRoot { n, m }) => {
            let got = value_at_root(f, *n, *m)?;
            let err = (got - z).norm();
            if err < tol {
                Ok(Ok(()))
            } else {
                Ok(Err(format!(
                    "value {:.10} {:+.10}i, expected {:.10} {:+.10}i, |diff| = {err:.3e} ({mode})",
                    got.re, got.im, z.re, z.im
                )))
            }
        }
        (Value::Poly(f), Value::Poly(g), _) => {
            let r = reduce(&(f - g), mode)?;
            Ok(if r.is_zero() { Ok(()) } else { Err(poly_diff_witness(&r, mode)) })
        }
        (Value::Series(f), Value::Series(g), Mode::Exact) => {
            if f.order() != g.order() {
                return Err(BuildError::Invalid("truncation orders differ".into()));
            }
            let diff = (f - g).to_poly();
            Ok(if diff.is_zero() {
                Ok(())
            } else {
                Err(format!("lhs - rhs = {} + O(q^{})", diff.preview(WITNESS_TERMS), f.order()))
            })
        }
        (Value::Bivariate(f), Value::Bivariate(g), _) => {
            let len = f.tcoeffs().len().max(g.tcoeffs().len());
            for j in 0..len {
                let r = reduce(&(&f.coeff(j) - &g.coeff(j)), mode)?;
                if !r.is_zero() {
                    return Ok(Err(format!("coefficient of t^{j}: {}", poly_diff_witness(&r, mode))));
                }
            }
            Ok(Ok(()))
        }
        _ => Err(BuildError::Invalid(format!("cannot compare these sides under {mode}"))),
    }
}

/// Longest sum any entry will expand.
pub const MAX_TERMS: i64 = 2000;

#[allow(clippy::too_many_arguments)]
pub(crate) fn entry<G, M, L, R>(
    id: &'static str,
    statement: &'static str,
    tag: Tag,
    family: Family,
    signature: &'static [ParamSpec],
    guard: G,
    mode: M,
    lhs: L,
    rhs: R,
) -> QEntry
where
    G: Fn(&Params) -> Result<(), String> + Send + Sync + 'static,
    M: Fn(&Params) -> Built<Mode> + Send + Sync + 'static,
    L: Fn(&Params) -> Built<Value> + Send + Sync + 'static,
    R: Fn(&Params) -> Built<Value> + Send + Sync + 'static,
{
    QEntry {
        id,
        statement,
        tag,
        family,
        signature,
        guard: Arc::new(guard),
        lhs: Arc::new(lhs),
        rhs: Arc::new(rhs),
        mode: Arc::new(mode),
    }
}

/// `lo <= p[name] <= hi`, else a skip reason.
pub(crate) fn within(p: &Params, name: &str, lo: i64, hi: i64) -> Result<(), String> {
    let v = param(p, name);
    if (lo..=hi).contains(&v) {
        Ok(())
    } else if v > hi && lo == hi {
        Err(format!("requires {name} = {lo}"))
    } else if v > hi {
        Err(format!("requires {name} <= {hi}"))
    } else {
        Err(format!("requires {name} >= {lo}"))
    }
}

/// Skips points whose sum would exceed `MAX_TERMS`.
pub(crate) fn size_limit(terms: Option<i64>) -> Result<(), String> {
    match terms {
        Some(t) if t <= MAX_TERMS => Ok(()),
        _ => Err(format!("sum length exceeds the supported {MAX_TERMS} terms")),
    }
}

/// Reads a parameter already validated against the signature.
pub(crate) fn param(p: &Params, name: &str) -> i64 {
    p.get(name).unwrap_or_else(|| panic!("parameter '{name}' missing after validation"))
}

pub(crate) fn phi(n: i64) -> Built<CycIndex> {
    u64::try_from(n)
        .ok()
        .and_then(|n| CycIndex::new(n).ok())
        .ok_or_else(|| BuildError::Invalid(format!("cyclotomic index {n} must be positive")))
}

pub fn identity_registry() -> &'static [QEntry] {
    static REG: OnceLock<Vec<QEntry>> = OnceLock::new();
    REG.get_or_init(identities::entries)
}

pub fn congruence_registry() -> &'static [QEntry] {
    static REG: OnceLock<Vec<QEntry>> = OnceLock::new();
    REG.get_or_init(congruences::entries)
}

fn lookup<'a>(reg: &'a [QEntry], id: &str) -> Result<&'a QEntry, CheckError> {
    reg.iter()
        .find(|e| e.id == id)
        .ok_or_else(|| CheckError::UnknownId(id.to_string()))
}

pub fn verify_identity(id: &str, params: &Params) -> Result<CheckResult, CheckError> {
    verify_identity_with(id, params, &RunOptions::default())
}

pub fn verify_identity_with(id: &str, params: &Params, opts: &RunOptions) -> Result<CheckResult, CheckError> {
    run_checked(lookup(identity_registry(), id)?, params, opts)
}

pub fn verify_congruence(id: &str, params: &Params) -> Result<CheckResult, CheckError> {
    run_checked(lookup(congruence_registry(), id)?, params, &RunOptions::default())
}

/// The left side of the alternating central sum, exposed for cross-checks
/// against the integer registry.
pub fn mod5_lhs(n: u64) -> LaurentPoly {
    congruences::mod5_lhs(n).expect("central sums are exact")
}

#[cfg(test)]
mod tests;
