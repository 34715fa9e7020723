//! Command dispatch shared by the `deloop` binary and the integration tests.

pub mod suites;
pub mod verify;

pub use verify::{verify_all, Entry, Status, VerifyReport};

use std::path::PathBuf;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{self, json as algebra_json, FinDimAlgebra};
use crate::error::{Error, Result};
use crate::hochschild::{cyclic_homology, hochschild_homology_checked};
use crate::jacobi::{
    cocycle, cocycle_identity_check, lattice_witness_backward, lattice_witness_forward, operator_from_json,
    operator_to_json, validate_lattice_witnesses, JacobiOperator,
};
use crate::lie::{self, FinDimLieAlgebra};
use crate::linalg::rational::format_vector;
use crate::report::{HomologyReport, Limits, DEFAULT_BUDGET, DEFAULT_CAP};

pub const DEFAULT_SEED: u64 = 1729;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Hh,
    Hc,
    LieHomology,
    Prim,
    CocycleCheck,
    IdealCheck,
    LatticeBound,
    Verify,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    /// Algebra label used when no input file is given.
    pub algebra: String,
    /// `n` for `gl_n(A)` in the Lie commands.
    pub gl: usize,
    /// Named Lie algebra (`sl2`, `ab_<d>`) overriding `gl_n(A)`.
    pub lie: Option<String>,
    pub degree_cap: usize,
    pub size_budget: usize,
    pub seed: u64,
    pub output_format: OutputFormat,
    /// Lattice indices for `lattice-bound`.
    pub n: i64,
    pub m: i64,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            input_path: None,
            algebra: "k".into(),
            gl: 2,
            lie: None,
            degree_cap: DEFAULT_CAP,
            size_budget: DEFAULT_BUDGET,
            seed: DEFAULT_SEED,
            output_format: OutputFormat::Json,
            n: 0,
            m: 0,
        }
    }

    fn limits(&self) -> Limits {
        Limits { cap: self.degree_cap, budget: self.size_budget, representatives: false }
    }
}

/// Exit status plus what goes to stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// 2 for unusable input, 3 for a budget abort, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => 3,
        Error::Parse(_)
        | Error::Json(_)
        | Error::Io(_)
        | Error::InvalidAlgebra(_)
        | Error::InvalidLieAlgebra(_)
        | Error::Length { .. }
        | Error::ParentMismatch { .. } => 2,
        _ => 1,
    }
}

pub fn run(cfg: &RunConfig) -> RunOutput {
    match dispatch(cfg) {
        Ok((status, stdout)) => RunOutput { status, stdout, stderr: String::new() },
        Err(e) => RunOutput { status: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read_input(cfg: &RunConfig) -> Result<Option<String>> {
    match &cfg.input_path {
        Some(p) => std::fs::read_to_string(p)
            .map(Some)
            .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", p.display())))),
        None => Ok(None),
    }
}

fn located(cfg: &RunConfig, e: Error) -> Error {
    match (e, &cfg.input_path) {
        (Error::Json(j), Some(p)) => Error::Parse(format!("{}: {j}", p.display())),
        (e, _) => e,
    }
}

fn load_algebra(cfg: &RunConfig) -> Result<FinDimAlgebra> {
    match read_input(cfg)? {
        Some(text) => algebra_json::from_json(&text).map_err(|e| located(cfg, e)),
        None => algebra::from_label(&cfg.algebra),
    }
}

fn load_lie(cfg: &RunConfig) -> Result<FinDimLieAlgebra> {
    match cfg.lie.as_deref() {
        Some("sl2") => Ok(lie::sl2()),
        Some(l) => match l.strip_prefix("ab_").and_then(|d| d.parse().ok()) {
            Some(d) => lie::abelian(d),
            None => Err(Error::Parse(format!("unknown Lie algebra '{l}' (expected sl2 or ab_<d>)"))),
        },
        None => lie::gl(cfg.gl, &load_algebra(cfg)?),
    }
}

fn format_homology(r: &HomologyReport, f: OutputFormat) -> String {
    match f {
        OutputFormat::Json => r.to_json() + "\n",
        OutputFormat::Csv => r.to_csv(),
        OutputFormat::Text => r.to_text(),
    }
}

/// Generic result table for the operator checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub rows: Vec<CheckRow>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub item: String,
    pub value: String,
    pub ok: bool,
}

impl CheckReport {
    fn new(check: &str, seed: Option<u64>) -> Self {
        Self { check: check.into(), seed, rows: Vec::new(), passed: true }
    }

    fn row(&mut self, item: impl Into<String>, value: impl Into<String>, ok: bool) {
        self.passed &= ok;
        self.rows.push(CheckRow { item: item.into(), value: value.into(), ok });
    }

    fn tally(&mut self, item: &str, t: &suites::Tally) {
        let mut value = t.summary();
        if !t.samples.is_empty() {
            value.push_str(&format!(": {}", t.samples.join("; ")));
        }
        self.row(item, value, t.passed());
    }

    pub fn render(&self, f: OutputFormat) -> String {
        match f {
            OutputFormat::Json => serde_json::to_string(self).expect("report is serializable") + "\n",
            OutputFormat::Csv => {
                let mut out = String::from("item,value,ok\n");
                for r in &self.rows {
                    out.push_str(&format!("\"{}\",\"{}\",{}\n", r.item.replace('"', "\"\""), r.value.replace('"', "\"\""), r.ok));
                }
                out
            }
            OutputFormat::Text => {
                let mut out = self.check.clone();
                if let Some(s) = self.seed {
                    out.push_str(&format!(" (seed {s})"));
                }
                out.push('\n');
                for r in &self.rows {
                    out.push_str(&format!("  [{}] {} = {}\n", if r.ok { "ok" } else { "FAIL" }, r.item, r.value));
                }
                out.push_str(if self.passed { "passed\n" } else { "failed\n" });
                out
            }
        }
    }

    fn finish(self, f: OutputFormat) -> (i32, String) {
        (if self.passed { 0 } else { 1 }, self.render(f))
    }
}

fn vector(v: &[crate::linalg::Rational]) -> String {
    format!("[{}]", format_vector(v).join(","))
}

fn operators_from_input(text: &str) -> Result<Vec<JacobiOperator>> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let items = match value {
        serde_json::Value::Array(items) => items,
        single => vec![single],
    };
    items.into_iter().map(|v| operator_from_json(&v.to_string())).collect()
}

fn cocycle_check(cfg: &RunConfig) -> Result<(i32, String)> {
    let mut report;
    match read_input(cfg)? {
        Some(text) => {
            report = CheckReport::new("cocycle", None);
            let ops = operators_from_input(&text).map_err(|e| located(cfg, e))?;
            if !(2..=3).contains(&ops.len()) {
                return Err(Error::Parse(format!("expected 2 or 3 operators, got {}", ops.len())));
            }
            let ab = cocycle(&ops[0], &ops[1])?;
            let ba = cocycle(&ops[1], &ops[0])?;
            let anti = ab.iter().zip(&ba).all(|(x, y)| num_traits::Zero::is_zero(&(x + y)));
            report.row("c(a,b)", vector(&ab), true);
            report.row("c(b,a)", vector(&ba), anti);
            if let Some(z) = ops.get(2) {
                report.row("cocycle identity", "c([a,b],z)+c([b,z],a)+c([z,a],b)", cocycle_identity_check(&ops[0], &ops[1], z)?);
            }
        }
        None => {
            report = CheckReport::new("cocycle", Some(cfg.seed));
            let ring = Arc::new(algebra::from_label(&cfg.algebra)?);
            let mut shifts = suites::Tally::default();
            for (j, c) in suites::shift_cocycles(&ring, &mut shifts)? {
                report.row(format!("c(T^{j},T^-{j})"), vector(&c), true);
            }
            report.tally("shift values and commutators", &shifts);
            let s = suites::cocycle_suite(cfg.seed, verify::RANDOM_CASES)?;
            report.tally("antisymmetry", &s.antisymmetry);
            report.tally("cocycle identity", &s.identity);
        }
    }
    Ok(report.finish(cfg.output_format))
}

fn ideal_check(cfg: &RunConfig) -> Result<(i32, String)> {
    let mut report;
    match read_input(cfg)? {
        Some(text) => {
            report = CheckReport::new("ideal", None);
            let ops = operators_from_input(&text).map_err(|e| located(cfg, e))?;
            for (i, a) in ops.iter().enumerate() {
                let (plus, minus) = a.split();
                report.row(format!("op{i} in I+"), a.in_iplus().to_string(), true);
                report.row(format!("op{i} in I-"), a.in_iminus().to_string(), true);
                report.row(format!("op{i} in I0"), a.in_i0().to_string(), a.in_i0() == (a.in_iplus() && a.in_iminus()));
                report.row(format!("op{i} P a"), operator_to_json(&plus), plus.in_iplus());
                report.row(format!("op{i} (1-P) a"), operator_to_json(&minus), minus.in_iminus());
                report.row(format!("op{i} split sum"), "P a + (1-P) a = a", plus.add(&minus)? == *a);
                if a.in_i0() {
                    report.row(format!("op{i} trace"), vector(a.trace()?.coords()), true);
                }
            }
        }
        None => {
            report = CheckReport::new("ideal", Some(cfg.seed));
            let s = suites::ideal_suite(cfg.seed, verify::RANDOM_CASES, verify::SANDWICHES)?;
            report.tally("split", &s.split);
            report.tally("two-sided closure", &s.closure);
            report.tally("I0 membership", &s.membership);
            report.tally("trace of commutators", &s.trace);
            let p = suites::product_suite(cfg.seed, verify::RANDOM_CASES, verify::RANDOM_CASES)?;
            report.tally("product vs truncation", &p.oracle);
            report.tally("associativity", &p.associativity);
        }
    }
    Ok(report.finish(cfg.output_format))
}

fn lattice_bound(cfg: &RunConfig) -> Result<(i32, String)> {
    let mut report;
    match read_input(cfg)? {
        Some(text) => {
            report = CheckReport::new("lattice", None);
            let ops = operators_from_input(&text).map_err(|e| located(cfg, e))?;
            for (i, a) in ops.iter().enumerate() {
                report.row(format!("op{i} forward(n={})", cfg.n), lattice_witness_forward(a, cfg.n).to_string(), true);
                report.row(format!("op{i} backward(m={})", cfg.m), lattice_witness_backward(a, cfg.m).to_string(), true);
                report.row(format!("op{i} validated"), "basis-vector application", validate_lattice_witnesses(a, cfg.n, cfg.m));
            }
        }
        None => {
            report = CheckReport::new("lattice", Some(cfg.seed));
            let s = suites::lattice_suite(cfg.seed, verify::RANDOM_CASES);
            report.tally("random operators", &s.random);
            report.tally("shift powers", &s.shifts);
        }
    }
    Ok(report.finish(cfg.output_format))
}

fn dispatch(cfg: &RunConfig) -> Result<(i32, String)> {
    if cfg.size_budget == 0 {
        return Err(Error::Parse("size budget must be positive".into()));
    }
    let f = cfg.output_format;
    match cfg.command {
        Command::Hh => Ok((0, format_homology(&hochschild_homology_checked(&load_algebra(cfg)?, &cfg.limits())?, f))),
        Command::Hc => Ok((0, format_homology(&cyclic_homology(&load_algebra(cfg)?, &cfg.limits())?, f))),
        Command::LieHomology => Ok((0, format_homology(&lie::lie_homology(&load_lie(cfg)?, &cfg.limits())?, f))),
        Command::Prim => {
            if cfg.degree_cap == 0 {
                return Err(Error::Parse("prim needs a degree cap of at least 1".into()));
            }
            Ok((0, format_homology(&lie::lie_homology_primitive(&load_lie(cfg)?, &cfg.limits())?, f)))
        }
        Command::CocycleCheck => cocycle_check(cfg),
        Command::IdealCheck => ideal_check(cfg),
        Command::LatticeBound => lattice_bound(cfg),
        Command::Verify => {
            let r = verify_all(cfg.seed, cfg.size_budget);
            let out = match f {
                OutputFormat::Json => r.to_json() + "\n",
                OutputFormat::Csv => r.to_csv(),
                OutputFormat::Text => r.to_text(),
            };
            Ok((r.exit_code(), out))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(command: Command) -> RunConfig {
        RunConfig::new(command)
    }

    #[test]
    fn hc_of_base_field() {
        let out = run(&cfg(Command::Hc));
        assert_eq!(out.status, 0);
        assert_eq!(out.stdout, "{\"label\":\"HC(k)\",\"dims\":{\"0\":1,\"1\":0,\"2\":1,\"3\":0}}\n");
    }

    #[test]
    fn budget_abort_names_degree() {
        let c = RunConfig { size_budget: 3, algebra: "k[e]/(e^2)".into(), ..cfg(Command::Hh) };
        let out = run(&c);
        assert_eq!(out.status, 3);
        assert!(out.stderr.contains("degree 1"), "{}", out.stderr);
    }

    #[test]
    fn unknown_label_is_input_error() {
        let out = run(&RunConfig { algebra: "nonsense".into(), ..cfg(Command::Hh) });
        assert_eq!(out.status, 2);
    }

    #[test]
    fn default_cocycle_table() {
        let out = run(&RunConfig { output_format: OutputFormat::Text, ..cfg(Command::CocycleCheck) });
        assert_eq!(out.status, 0, "{}", out.stdout);
        for j in 1..=4 {
            assert!(out.stdout.contains(&format!("c(T^{j},T^-{j}) = [-{j}]")), "{}", out.stdout);
        }
        assert!(out.stdout.contains("seed 1729"));
    }

    #[test]
    fn lie_selection() {
        let out = run(&RunConfig { lie: Some("sl2".into()), ..cfg(Command::LieHomology) });
        assert_eq!(out.stdout, "{\"label\":\"H(sl_2)\",\"dims\":{\"0\":1,\"1\":0,\"2\":0,\"3\":1}}\n");
        assert_eq!(run(&RunConfig { lie: Some("so3".into()), ..cfg(Command::Prim) }).status, 2);
        assert_eq!(run(&RunConfig { degree_cap: 0, ..cfg(Command::Prim) }).status, 2);
    }
}
