//! One view over every registry, plus the sweep driver.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::integer_registry;
use crate::check::{complete_params, Check, CheckError, CheckResult, Family, Params, RunOptions, Tag};
use crate::qverify::{congruence_registry, identity_registry};

/// Largest number of points a single suite run will expand to.
pub const MAX_POINTS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("parameter '{0}' is not used by any selected check")]
    UnusedParam(String),
    #[error("parameter '{0}' has an empty range")]
    EmptyRange(String),
    #[error("sweep expands to more than {MAX_POINTS} points")]
    TooManyPoints,
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

/// Values to sweep per parameter name, kept in insertion-independent order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RangeSpec(BTreeMap<String, Vec<i64>>);

impl RangeSpec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one point value; repeated values are kept once.
    pub fn point(mut self, name: &str, v: i64) -> Self {
        self.add(name, v, v);
        self
    }

    /// Adds the inclusive range `lo..=hi`, which is empty when `lo > hi`.
    pub fn range(mut self, name: &str, lo: i64, hi: i64) -> Self {
        self.add(name, lo, hi);
        self
    }

    pub fn add(&mut self, name: &str, lo: i64, hi: i64) {
        let vals = self.0.entry(name.to_string()).or_default();
        vals.extend(lo..=hi);
        vals.sort_unstable();
        vals.dedup();
    }

    pub fn get(&self, name: &str) -> Option<&[i64]> {
        self.0.get(name).map(Vec::as_slice)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    /// Number of points in the product over every named parameter.
    pub fn point_count(&self) -> usize {
        self.0.values().map(Vec::len).product()
    }
}

/// One line of `list`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Listing {
    pub id: String,
    pub family: Family,
    pub tag: Tag,
    pub signature: String,
    pub statement: String,
}

/// A check together with one complete parameter point.
pub type Point = (Arc<dyn Check>, Params);

#[derive(Clone)]
pub struct Catalog {
    checks: Vec<Arc<dyn Check>>,
}

impl Default for Catalog {
    fn default() -> Self {
        Self::standard()
    }
}

impl Catalog {
    /// Every identity, cyclotomic congruence and integer congruence.
    pub fn standard() -> Self {
        let mut checks: Vec<Arc<dyn Check>> = Vec::new();
        checks.extend(identity_registry().iter().map(|e| Arc::new(e.clone()) as Arc<dyn Check>));
        checks.extend(congruence_registry().iter().map(|e| Arc::new(e.clone()) as Arc<dyn Check>));
        checks.extend(integer_registry().iter().map(|e| Arc::new(e.clone()) as Arc<dyn Check>));
        Self { checks }
    }

    pub fn from_checks(checks: Vec<Arc<dyn Check>>) -> Self {
        Self { checks }
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn checks(&self) -> &[Arc<dyn Check>] {
        &self.checks
    }

    pub fn get(&self, id: &str) -> Option<&Arc<dyn Check>> {
        self.checks.iter().find(|c| c.id() == id)
    }

    /// Swaps in `check` for the entry with the same id, or appends it.
    pub fn replace(&mut self, check: Arc<dyn Check>) {
        match self.checks.iter_mut().find(|c| c.id() == check.id()) {
            Some(slot) => *slot = check,
            None => self.checks.push(check),
        }
    }

    pub fn list_checks(&self) -> Vec<Listing> {
        self.checks
            .iter()
            .map(|c| Listing {
                id: c.id().to_string(),
                family: c.family(),
                tag: c.tag(),
                signature: c.signature().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "),
                statement: c.statement().to_string(),
            })
            .collect()
    }

    pub fn verify(&self, id: &str, params: &Params, opts: &RunOptions) -> Result<CheckResult, SuiteError> {
        let check = self.get(id).ok_or_else(|| CheckError::UnknownId(id.to_string()))?;
        let params = complete_params(check.as_ref(), params)?;
        Ok(guarded_run(check.as_ref(), &params, opts))
    }

    /// Every parameter point of every selected check.
    pub fn expand(&self, ids: &[&str], ranges: &RangeSpec) -> Result<Vec<Point>, SuiteError> {
        let mut selected = Vec::new();
        for id in ids {
            let c = self.get(id).ok_or_else(|| CheckError::UnknownId(id.to_string()))?;
            if !selected.iter().any(|s: &Arc<dyn Check>| s.id() == *id) {
                selected.push(c.clone());
            }
        }
        if let Some(unused) = ranges
            .names()
            .find(|n| !selected.iter().any(|c| c.signature().iter().any(|s| s.name == *n)))
        {
            return Err(SuiteError::UnusedParam(unused.to_string()));
        }
        let mut points = Vec::new();
        for c in selected {
            let mut axes: Vec<(&str, Vec<i64>)> = Vec::new();
            for spec in c.signature() {
                let vals = match (ranges.get(spec.name), spec.default) {
                    (Some([]), _) => return Err(SuiteError::EmptyRange(spec.name.to_string())),
                    (Some(vals), _) => vals.to_vec(),
                    (None, Some(d)) => vec![d],
                    (None, None) => {
                        return Err(CheckError::MissingParam {
                            id: c.id().to_string(),
                            name: spec.name.to_string(),
                        }
                        .into())
                    }
                };
                axes.push((spec.name, vals));
            }
            let count = axes.iter().try_fold(1usize, |acc, (_, v)| acc.checked_mul(v.len()));
            match count {
                Some(n) if points.len() + n <= MAX_POINTS => {}
                _ => return Err(SuiteError::TooManyPoints),
            }
            let mut grid = vec![Params::new()];
            for (name, vals) in &axes {
                grid = grid
                    .into_iter()
                    .flat_map(|p| vals.iter().map(move |&v| p.clone().with(name, v)))
                    .collect();
            }
            points.extend(grid.into_iter().map(|p| (c.clone(), p)));
        }
        Ok(points)
    }

    /// Runs every point on `jobs` worker threads; the output order depends
    /// only on ids and parameter values.
    pub fn run_suite(
        &self,
        ids: &[&str],
        ranges: &RangeSpec,
        jobs: usize,
        opts: &RunOptions,
    ) -> Result<Vec<CheckResult>, SuiteError> {
        let points = self.expand(ids, ranges)?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| SuiteError::Pool(e.to_string()))?;
        let mut out: Vec<(Vec<i64>, CheckResult)> = pool.install(|| {
            points
                .par_iter()
                .map(|(c, p)| {
                    let key = c.signature().iter().filter_map(|s| p.get(s.name)).collect();
                    (key, guarded_run(c.as_ref(), p, opts))
                })
                .collect()
        });
        out.sort_by(|(ka, a), (kb, b)| a.check_id.cmp(&b.check_id).then_with(|| ka.cmp(kb)));
        Ok(out.into_iter().map(|(_, r)| r).collect())
    }
}

/// Runs one point, turning a panic into a failure with the panic message.
fn guarded_run(check: &dyn Check, params: &Params, opts: &RunOptions) -> CheckResult {
    catch_unwind(AssertUnwindSafe(|| check.run(params, opts))).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| e.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".to_string());
        CheckResult::fail(
            check.id(),
            params.clone(),
            check.tag(),
            format!("{params}: evaluation panicked: {msg}"),
        )
    })
}

/// Every non-skipped result passed.
pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.status != crate::check::Status::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::{ParamSpec, Status};

    struct Panics;

    impl Check for Panics {
        fn id(&self) -> &str {
            "boom"
        }
        fn statement(&self) -> &str {
            "panics for n > 1"
        }
        fn tag(&self) -> Tag {
            Tag::Theorem
        }
        fn family(&self) -> Family {
            Family::Integer
        }
        fn signature(&self) -> &[ParamSpec] {
            const S: &[ParamSpec] = &[ParamSpec::required("n")];
            S
        }
        fn run(&self, params: &Params, _: &RunOptions) -> CheckResult {
            assert!(params.get("n").unwrap() <= 1, "n too big");
            CheckResult::pass("boom", params.clone(), Tag::Theorem)
        }
    }

    #[test]
    fn registries_are_all_present() {
        let c = Catalog::standard();
        assert_eq!(
            c.len(),
            identity_registry().len() + congruence_registry().len() + integer_registry().len()
        );
        assert!(c.get("mod5").is_some() && c.get("conj55").is_some() && c.get("andrews").is_some());
    }

    #[test]
    fn sweep_is_sorted_and_independent_of_jobs() {
        let c = Catalog::standard();
        let ranges = RangeSpec::new().range("n", 1, 12).range("m", 1, 3).point("n", 0);
        let opts = RunOptions::default();
        let one = c.run_suite(&["mod5", "mn-to3"], &ranges, 1, &opts).unwrap();
        let four = c.run_suite(&["mn-to3", "mod5"], &ranges, 4, &opts).unwrap();
        assert_eq!(one, four);
        assert_eq!(one.len(), 13 + 13 * 3);
        assert_eq!(one[0].check_id, "mn-to3");
        assert_eq!(one.last().unwrap().params.get("n"), Some(12));
        assert!(all_passed(&one));
    }

    #[test]
    fn suite_errors() {
        let c = Catalog::standard();
        let opts = RunOptions::default();
        let r = RangeSpec::new().range("n", 0, 3);
        assert!(matches!(c.run_suite(&["nope"], &r, 1, &opts), Err(SuiteError::Check(CheckError::UnknownId(_)))));
        assert_eq!(
            c.run_suite(&["mod5"], &RangeSpec::new().range("zz", 0, 1).range("n", 0, 1), 1, &opts),
            Err(SuiteError::UnusedParam("zz".into()))
        );
        assert!(matches!(
            c.run_suite(&["mn-to3"], &r, 1, &opts),
            Err(SuiteError::Check(CheckError::MissingParam { .. }))
        ));
        assert_eq!(
            c.run_suite(&["mod5"], &RangeSpec::new().range("n", 3, 1), 1, &opts),
            Err(SuiteError::EmptyRange("n".into()))
        );
    }

    #[test]
    fn panics_become_failures() {
        let mut c = Catalog::from_checks(vec![]);
        c.replace(Arc::new(Panics));
        let out = c
            .run_suite(&["boom"], &RangeSpec::new().range("n", 0, 3), 2, &RunOptions::default())
            .unwrap();
        let statuses: Vec<Status> = out.iter().map(|r| r.status).collect();
        assert_eq!(statuses, [Status::Pass, Status::Pass, Status::Fail, Status::Fail]);
        assert!(out[2].witness.as_ref().unwrap().contains("n too big"));
    }

    #[test]
    fn listing_covers_every_check() {
        let c = Catalog::standard();
        let l = c.list_checks();
        assert_eq!(l.len(), c.len());
        let andrews = l.iter().find(|e| e.id == "andrews").unwrap();
        assert_eq!(andrews.signature, "s1 alpha s2 beta N=60");
        assert_eq!(l.iter().find(|e| e.id == "conj55").unwrap().tag, Tag::Conjecture);
    }
}
