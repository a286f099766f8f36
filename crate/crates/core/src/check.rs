//! The outcome record shared by every registry.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest integer magnitude a JSON consumer can hold exactly in a double.
const SAFE_INTEGER: i64 = (1 << 53) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// Whether a statement is proved or conjectural.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Theorem,
    Conjecture,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Tag::Theorem => "theorem",
            Tag::Conjecture => "conjecture",
        })
    }
}

/// Named integer parameters of one check point.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params(BTreeMap<String, i64>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: i64) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn insert(&mut self, name: &str, value: i64) {
        self.0.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.0.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<const N: usize> From<[(&str, i64); N]> for Params {
    fn from(pairs: [(&str, i64); N]) -> Self {
        Self(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            if v.abs() > SAFE_INTEGER {
                map.serialize_entry(k, &v.to_string())?;
            } else {
                map.serialize_entry(k, v)?;
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Params {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ParamsVisitor;

        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Number {
            Int(i64),
            Text(String),
        }

        impl<'de> Visitor<'de> for ParamsVisitor {
            type Value = Params;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from parameter name to integer")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Params, A::Error> {
                let mut out = BTreeMap::new();
                while let Some((k, v)) = access.next_entry::<String, Number>()? {
                    let v = match v {
                        Number::Int(i) => i,
                        Number::Text(s) => s.parse().map_err(de::Error::custom)?,
                    };
                    out.insert(k, v);
                }
                Ok(Params(out))
            }
        }

        deserializer.deserialize_map(ParamsVisitor)
    }
}

/// Outcome of one verification at one parameter point.
///
/// A failed result always carries a witness; a skipped one carries the
/// reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    #[serde(rename = "id")]
    pub check_id: String,
    pub params: Params,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub tag: Tag,
}

impl CheckResult {
    pub fn pass(id: &str, params: Params, tag: Tag) -> Self {
        Self {
            check_id: id.to_string(),
            params,
            status: Status::Pass,
            witness: None,
            tag,
        }
    }

    pub fn fail(id: &str, params: Params, tag: Tag, witness: String) -> Self {
        Self {
            check_id: id.to_string(),
            params,
            status: Status::Fail,
            witness: Some(witness),
            tag,
        }
    }

    pub fn skipped(id: &str, params: Params, tag: Tag, reason: String) -> Self {
        Self {
            check_id: id.to_string(),
            params,
            status: Status::Skipped,
            witness: Some(reason),
            tag,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<7} {} [{}]", self.status, self.check_id, self.tag)?;
        if !self.params.is_empty() {
            write!(f, " {}", self.params)?;
        }
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

/// One named integer parameter in a check's signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: Option<i64>,
}

impl ParamSpec {
    pub const fn required(name: &'static str) -> Self {
        Self { name, default: None }
    }

    pub const fn with_default(name: &'static str, value: i64) -> Self {
        Self {
            name,
            default: Some(value),
        }
    }
}

impl fmt::Display for ParamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.default {
            Some(v) => write!(f, "{}={v}", self.name),
            None => f.write_str(self.name),
        }
    }
}

/// Which registry a check belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Identity,
    Congruence,
    Integer,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Family::Identity => "identity",
            Family::Congruence => "congruence",
            Family::Integer => "integer",
        })
    }
}

/// Knobs shared by every check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunOptions {
    /// Tolerance for numeric root-of-unity checks; exact checks ignore it.
    pub tol: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            tol: crate::cycmod::DEFAULT_ROOT_TOL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("unknown check id '{0}'")]
    UnknownId(String),
    #[error("check '{id}' needs parameter '{name}'")]
    MissingParam { id: String, name: String },
    #[error("check '{id}' takes no parameter '{name}'")]
    UnexpectedParam { id: String, name: String },
}

/// A registered, runnable check.
pub trait Check: Send + Sync {
    fn id(&self) -> &str;
    /// Human-readable statement of what is verified.
    fn statement(&self) -> &str;
    fn tag(&self) -> Tag;
    fn family(&self) -> Family;
    fn signature(&self) -> &[ParamSpec];
    /// Runs at a point whose parameters exactly match the signature.
    fn run(&self, params: &Params, opts: &RunOptions) -> CheckResult;
}

/// Fills defaults and rejects missing or unknown parameters.
pub fn complete_params(check: &dyn Check, given: &Params) -> Result<Params, CheckError> {
    let sig = check.signature();
    if let Some((name, _)) = given.iter().find(|(k, _)| !sig.iter().any(|s| s.name == *k)) {
        return Err(CheckError::UnexpectedParam {
            id: check.id().to_string(),
            name: name.to_string(),
        });
    }
    let mut out = Params::new();
    for spec in sig {
        match given.get(spec.name).or(spec.default) {
            Some(v) => out.insert(spec.name, v),
            None => {
                return Err(CheckError::MissingParam {
                    id: check.id().to_string(),
                    name: spec.name.to_string(),
                })
            }
        }
    }
    Ok(out)
}

/// Validates `given` against the signature, then runs.
pub fn run_checked(check: &dyn Check, given: &Params, opts: &RunOptions) -> Result<CheckResult, CheckError> {
    let params = complete_params(check, given)?;
    Ok(check.run(&params, opts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_params_become_strings() {
        let r = CheckResult::pass("mod5", Params::from([("n", 7), ("x", 1 << 60)]), Tag::Theorem);
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"{"id":"mod5","params":{"n":7,"x":"1152921504606846976"},"status":"pass","tag":"theorem"}"#
        );
        let back: CheckResult = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn failure_round_trips_with_witness() {
        let r = CheckResult::fail("conj55", Params::from([("m", 30)]), Tag::Conjecture, "residue 119".into());
        let back: CheckResult = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn text_line() {
        let r = CheckResult::skipped("cor36", Params::from([("n", 3)]), Tag::Theorem, "requires gcd(n,3)=1".into());
        assert_eq!(r.to_string(), "skipped cor36 [theorem] n=3: requires gcd(n,3)=1");
    }
}
