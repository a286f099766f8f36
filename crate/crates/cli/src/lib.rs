//! Argument handling and output for the `qcong` binary.
//!
//! ```text
//! qcong {verify|sweep|list} [ids...] [--<param> v | --<param> lo..hi] [--json] [--tol x] [--jobs K]
//! ```
//!
//! Parameter flags are named after the parameters of the selected checks,
//! so they are parsed by hand rather than declared up front.

use std::io::Write;

use qcong_core::catalog::{all_passed, Catalog, RangeSpec};
use qcong_core::check::{RunOptions, Status};
use qcong_core::CheckResult;

pub const USAGE: &str = "\
usage: qcong {verify|sweep|list} [ids...] [--<param> v | --<param> lo..hi] [--json] [--tol x] [--jobs K]

  verify   run the given checks at a single parameter point
  sweep    run the given checks over every point of the parameter ranges
  list     print every registered check with its statement and parameters

  --<param> v       a point value; repeat the flag to add more values
  --<param> lo..hi  an inclusive range
  --json            emit one JSON array instead of text lines
  --tol x           tolerance for checks evaluated numerically at roots of unity
  --jobs K          worker threads for sweeps (default 1)

exit status: 0 if every non-skipped check passed, 1 if any failed, 2 on usage errors";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Sweep,
    List,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub ids: Vec<String>,
    pub ranges: RangeSpec,
    pub json: bool,
    pub tol: Option<f64>,
    pub jobs: usize,
}

fn parse_int(flag: &str, s: &str) -> Result<i64, String> {
    s.parse()
        .map_err(|_| format!("--{flag}: '{s}' is not an integer"))
}

/// `v` or `lo..hi`; both ends may be negative.
fn parse_values(flag: &str, s: &str) -> Result<(i64, i64), String> {
    match s.find("..") {
        Some(i) => {
            let (lo, hi) = (parse_int(flag, &s[..i])?, parse_int(flag, &s[i + 2..])?);
            if lo > hi {
                return Err(format!("--{flag}: empty range {s}"));
            }
            Ok((lo, hi))
        }
        None => {
            let v = parse_int(flag, s)?;
            Ok((v, v))
        }
    }
}

pub fn parse_args(args: &[String]) -> Result<Option<RunConfig>, String> {
    let mut it = args.iter();
    let command = match it.next().map(String::as_str) {
        None => return Err("missing command".into()),
        Some("-h" | "--help" | "help") => return Ok(None),
        Some("verify") => Command::Verify,
        Some("sweep") => Command::Sweep,
        Some("list") => Command::List,
        Some(other) => return Err(format!("unknown command '{other}'")),
    };
    let mut cfg = RunConfig {
        command,
        ids: Vec::new(),
        ranges: RangeSpec::new(),
        json: false,
        tol: None,
        jobs: 1,
    };
    while let Some(arg) = it.next() {
        let Some(flag) = arg.strip_prefix("--") else {
            if arg.starts_with('-') {
                return Err(format!("unknown flag '{arg}'"));
            }
            cfg.ids.push(arg.clone());
            continue;
        };
        let (name, inline) = match flag.split_once('=') {
            Some((n, v)) => (n, Some(v.to_string())),
            None => (flag, None),
        };
        if name == "help" {
            return Ok(None);
        }
        if name == "json" {
            if inline.is_some() {
                return Err("--json takes no value".into());
            }
            cfg.json = true;
            continue;
        }
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(format!("unknown flag '{arg}'"));
        }
        let value = match inline {
            Some(v) => v,
            None => it.next().cloned().ok_or_else(|| format!("--{name} needs a value"))?,
        };
        match name {
            "tol" => match value.parse::<f64>() {
                Ok(t) if t.is_finite() && t > 0.0 => cfg.tol = Some(t),
                _ => return Err(format!("--tol: '{value}' is not a positive number")),
            },
            "jobs" => match value.parse::<usize>() {
                Ok(k) if k >= 1 => cfg.jobs = k,
                _ => return Err(format!("--jobs: '{value}' is not a positive integer")),
            },
            _ => {
                let (lo, hi) = parse_values(name, &value)?;
                cfg.ranges.add(name, lo, hi);
            }
        }
    }
    Ok(Some(cfg))
}

fn usage_error(err: &mut dyn Write, msg: &str) -> i32 {
    let _ = writeln!(err, "qcong: {msg}\n\n{USAGE}");
    2
}

fn emit_results(out: &mut dyn Write, results: &[CheckResult], json: bool, summary: bool) -> std::io::Result<()> {
    if json {
        let text = serde_json::to_string_pretty(results).expect("results serialize");
        writeln!(out, "{text}")?;
        return Ok(());
    }
    for r in results {
        writeln!(out, "{r}")?;
    }
    if summary {
        let count = |s| results.iter().filter(|r| r.status == s).count();
        writeln!(
            out,
            "{} checks: {} pass, {} fail, {} skipped",
            results.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped)
        )?;
    }
    Ok(())
}

fn list(catalog: &Catalog, cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Some(name) = cfg.ranges.names().next() {
        return usage_error(err, &format!("list takes no parameter flags (got --{name})"));
    }
    let mut rows = catalog.list_checks();
    if !cfg.ids.is_empty() {
        if let Some(bad) = cfg.ids.iter().find(|id| catalog.get(id).is_none()) {
            return usage_error(err, &format!("unknown check id '{bad}'"));
        }
        rows.retain(|r| cfg.ids.contains(&r.id));
    }
    let res = if cfg.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("listing serializes"))
    } else {
        rows.iter().try_for_each(|r| {
            writeln!(out, "{:<18} {:<10} {:<10} [{}]  {}", r.id, r.family, r.tag, r.signature, r.statement)
        })
    };
    if res.is_err() {
        return 2;
    }
    0
}

/// Runs the command line `args` (without the program name) against `catalog`.
pub fn run(args: &[String], catalog: &Catalog, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cfg = match parse_args(args) {
        Ok(Some(cfg)) => cfg,
        Ok(None) => {
            let _ = writeln!(out, "{USAGE}");
            return 0;
        }
        Err(msg) => return usage_error(err, &msg),
    };
    if cfg.command == Command::List {
        return list(catalog, &cfg, out, err);
    }
    if cfg.ids.is_empty() {
        return usage_error(err, "no check ids given");
    }
    if cfg.command == Command::Verify {
        if let Some(name) = cfg.ranges.names().find(|n| cfg.ranges.get(n).is_some_and(|v| v.len() != 1)) {
            return usage_error(err, &format!("verify takes one value per parameter; use sweep for --{name}"));
        }
    }
    let mut opts = RunOptions::default();
    if let Some(t) = cfg.tol {
        opts.tol = t;
    }
    let ids: Vec<&str> = cfg.ids.iter().map(String::as_str).collect();
    let results = match catalog.run_suite(&ids, &cfg.ranges, cfg.jobs, &opts) {
        Ok(r) => r,
        Err(e) => return usage_error(err, &e.to_string()),
    };
    if emit_results(out, &results, cfg.json, cfg.command == Command::Sweep).is_err() {
        return 2;
    }
    if all_passed(&results) {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn parses_flags_and_ranges() {
        let cfg = parse_args(&args("sweep qser-1 --n 1..4 --d=-2..0 --d 7 --json --tol 1e-8 --jobs 3"))
            .unwrap()
            .unwrap();
        assert_eq!(cfg.command, Command::Sweep);
        assert_eq!(cfg.ids, ["qser-1"]);
        assert_eq!(cfg.ranges.get("n"), Some(&[1, 2, 3, 4][..]));
        assert_eq!(cfg.ranges.get("d"), Some(&[-2, -1, 0, 7][..]));
        assert!(cfg.json);
        assert_eq!((cfg.tol, cfg.jobs), (Some(1e-8), 3));
        assert_eq!(parse_args(&args("verify mod5 --d -3")).unwrap().unwrap().ranges.get("d"), Some(&[-3][..]));
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "",
            "frobnicate",
            "verify mod5 --n",
            "verify mod5 --n x",
            "verify mod5 --n 5..3",
            "verify mod5 --tol -1",
            "verify mod5 --jobs 0",
            "verify mod5 -n 3",
            "verify mod5 --json=1",
        ] {
            assert!(parse_args(&args(bad)).is_err(), "{bad}");
        }
        assert_eq!(parse_args(&args("--help")), Ok(None));
    }
}
