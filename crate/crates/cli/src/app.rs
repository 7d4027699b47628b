//! Argument parsing, dispatch and rendering for the `gzeta` binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use gzeta_core::assembler::audit;
use gzeta_core::{
    enumerate_types, sym_count_poly, zeta_at_level, EnnolaError, RatPoly, RegistryError, Sign, ZetaSeries,
};
use gzeta_oracle::{census, CensusOptions, CensusReport, OracleError, Variant};
use serde::Serialize;
use serde_json::json;

use crate::suite::{self, Check, Outcome, SuiteError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Symbolic,
    Oracle,
    All,
}

#[derive(Debug, Parser)]
#[command(name = "gzeta", version, about = "Representation zeta functions of GL_n and GU_n over finite rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the output here (plus a `.meta.json` sidecar) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse::<i64>()
        .ok()
        .and_then(Sign::from_value)
        .ok_or_else(|| format!("epsilon must be 1 or -1, got {s:?}"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zeta function of G^ε_n(o_l).
    Zeta {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = parse_sign)]
        epsilon: Sign,
    },
    /// Similarity-class types of size n with counts, centralizers and indices.
    Types {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = parse_sign)]
        epsilon: Sign,
    },
    /// Exhaustive similarity-class census of gl_n(F_q) or gu_n(F_q).
    Census {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "gl")]
        variant: Variant,
        #[arg(long)]
        slow: bool,
    },
    /// Run verification suites.
    Check {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        slow: bool,
    },
    /// Number of symmetric matrices in G^ε_n(o_l).
    Sym {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        level: u32,
        #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = parse_sign)]
        epsilon: Sign,
    },
    /// Special value ζ(s) of G^ε_n(o_l) as a polynomial in q.
    Special {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = parse_sign)]
        epsilon: Sign,
        #[arg(long, allow_hyphen_values = true)]
        s: i32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Zeta { .. } => "zeta",
            Command::Types { .. } => "types",
            Command::Census { .. } => "census",
            Command::Check { .. } => "check",
            Command::Sym { .. } => "sym",
            Command::Special { .. } => "special",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) => EXIT_USAGE,
            AppError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<RegistryError> for AppError {
    fn from(e: RegistryError) -> Self {
        match e {
            RegistryError::UnsupportedSpec(_) => AppError::Usage(e.to_string()),
            _ => AppError::Internal(e.to_string()),
        }
    }
}

impl From<EnnolaError> for AppError {
    fn from(e: EnnolaError) -> Self {
        match e {
            EnnolaError::UnsupportedCase { .. } => AppError::Usage(e.to_string()),
            EnnolaError::Registry(r) => r.into(),
            _ => AppError::Internal(e.to_string()),
        }
    }
}

impl From<OracleError> for AppError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooLarge { .. } | OracleError::UnsupportedField(_) | OracleError::UnsupportedGroup(_) => {
                AppError::Usage(e.to_string())
            }
            OracleError::NotAGroup(_) | OracleError::Inconsistent(_) => AppError::Internal(e.to_string()),
        }
    }
}

impl From<SuiteError> for AppError {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::Registry(e) => e.into(),
            SuiteError::Ennola(e) => e.into(),
            // anything the suites cannot run is an inconsistency, not bad input
            SuiteError::Oracle(e) => AppError::Internal(e.to_string()),
        }
    }
}

/// Rendered payload, sidecar metadata and exit code of one invocation.
#[derive(Debug)]
pub struct Output {
    pub payload: String,
    pub meta: serde_json::Value,
    pub exit: i32,
}

fn usage(msg: impl Into<String>) -> AppError {
    AppError::Usage(msg.into())
}

fn check_n_level(n: u32, level: u32) -> Result<(), AppError> {
    if !(1..=4).contains(&n) {
        return Err(usage(format!("--n must be in 1..=4, got {n}")));
    }
    if !(1..=2).contains(&level) {
        return Err(usage(format!("--level must be 1 or 2, got {level}")));
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn to_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
}

fn to_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let rows: Vec<Vec<String>> = rows.into_iter().collect();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in &rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}", w = *w))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut out, &header.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    line(&mut out, &width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>());
    for r in &rows {
        line(&mut out, r);
    }
    out
}

fn render(format: Format, json: String, header: &[&str], rows: Vec<Vec<String>>) -> String {
    match format {
        Format::Json => json,
        Format::Csv => to_csv(header, rows),
        Format::Table => to_table(header, rows),
    }
}

fn zeta_series(n: u32, level: u32, eps: Sign) -> Result<ZetaSeries, AppError> {
    check_n_level(n, level)?;
    Ok(zeta_at_level(n, level, eps)?)
}

fn render_zeta(z: &ZetaSeries, format: Format) -> String {
    let rows = z
        .pairs()
        .map(|(d, m)| vec![d.to_string(), m.to_string()])
        .collect();
    render(format, to_json(&z.to_json()), &["deg", "mult"], rows)
}

fn render_poly(format: Format, key: &str, fields: serde_json::Value, p: &RatPoly) -> String {
    let mut obj = fields;
    obj[key] = json!(p.to_string());
    obj[format!("{key}_coeffs")] = json!(p);
    let mut header = vec![];
    let mut row = vec![];
    for (k, v) in obj.as_object().expect("object").iter() {
        if k.ends_with("_coeffs") {
            continue;
        }
        header.push(k.clone());
        row.push(match v {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        });
    }
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    render(format, to_json(&obj), &header, vec![row])
}

fn render_types(n: u32, eps: Sign, format: Format) -> Result<String, AppError> {
    check_n_level(n, 2)?;
    let rows = audit(n, eps)?;
    let json = to_json(&json!({ "n": n, "epsilon": eps, "rows": rows }));
    let table = rows
        .iter()
        .map(|r| {
            vec![
                r.t.clone(),
                r.n_a.to_string(),
                r.centralizer.clone(),
                r.centralizer_order.to_string(),
                r.index.to_string(),
                r.fixture.as_ref().map_or("-".into(), |f| {
                    serde_json::to_value(f.status)
                        .ok()
                        .and_then(|v| v.as_str().map(str::to_string))
                        .unwrap_or_default()
                }),
            ]
        })
        .collect();
    Ok(render(
        format,
        json,
        &["type", "n_a", "centralizer", "centralizer_order", "index", "fixture"],
        table,
    ))
}

fn render_census(r: &CensusReport, format: Format) -> String {
    let rows = r
        .per_type
        .iter()
        .map(|c| vec![c.t.to_string(), c.classes.to_string()])
        .collect();
    render(format, to_json(r), &["type", "classes"], rows)
}

fn outcome_label(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "PASS",
        Outcome::Notice => "NOTICE",
        Outcome::Fail => "FAIL",
    }
}

fn render_checks(suite: Suite, checks: &[Check], format: Format) -> String {
    let count = |o: Outcome| checks.iter().filter(|c| c.outcome == o).count();
    let passed = suite::passed(checks);
    let json = to_json(&json!({
        "suite": suite,
        "passed": passed,
        "counts": { "pass": count(Outcome::Pass), "notice": count(Outcome::Notice), "fail": count(Outcome::Fail) },
        "checks": checks,
    }));
    let rows = checks
        .iter()
        .map(|c| {
            vec![
                outcome_label(c.outcome).to_string(),
                c.group.to_string(),
                c.name.clone(),
                c.detail.clone(),
            ]
        })
        .collect();
    let mut out = render(format, json, &["outcome", "group", "name", "detail"], rows);
    if format == Format::Table {
        let _ = writeln!(
            out,
            "\n{} pass, {} notice, {} fail",
            count(Outcome::Pass),
            count(Outcome::Notice),
            count(Outcome::Fail)
        );
    }
    out
}

/// Runs one command; the payload is deterministic for fixed arguments.
pub fn run(cli: &Cli) -> Result<Output, AppError> {
    let start = Instant::now();
    let format = cli.format;
    let mut meta = json!({ "command": cli.command.name() });
    let mut exit = EXIT_PASS;
    let payload = match &cli.command {
        Command::Zeta { n, level, epsilon } => render_zeta(&zeta_series(*n, *level, *epsilon)?, format),
        Command::Types { n, epsilon } => render_types(*n, *epsilon, format)?,
        Command::Census { n, q, variant, slow } => {
            if !(2..=4).contains(n) {
                return Err(usage(format!("--n must be in 2..=4 for a census, got {n}")));
            }
            let report = census(*variant, *n, *q, CensusOptions { allow_slow: *slow })?;
            meta["elapsed_ms_census"] = json!(report.elapsed_ms as u64);
            meta["types"] = json!(enumerate_types(*n).len());
            render_census(&report, format)
        }
        Command::Check { suite: which, slow } => {
            let mut checks = Vec::new();
            if matches!(which, Suite::Symbolic | Suite::All) {
                checks.extend(suite::symbolic()?);
            }
            if matches!(which, Suite::Oracle | Suite::All) {
                checks.extend(suite::oracle(*slow)?);
            }
            if !suite::passed(&checks) {
                exit = EXIT_CHECK_FAILED;
            }
            render_checks(*which, &checks, format)
        }
        Command::Sym { n, level, epsilon } => {
            let p = sym_count_poly(*n, *level, *epsilon)?;
            render_poly(format, "sym", json!({ "n": n, "level": level, "epsilon": epsilon }), &p)
        }
        Command::Special { n, level, epsilon, s } => {
            let z = zeta_series(*n, *level, *epsilon)?;
            let p = z.special_value(*s);
            render_poly(
                format,
                "value",
                json!({ "n": n, "level": level, "epsilon": epsilon, "s": s }),
                &p,
            )
        }
    };
    meta["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    meta["exit"] = json!(exit);
    Ok(Output { payload, meta, exit })
}

/// Path of the metadata sidecar written next to `--out`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".meta.json");
    out.with_file_name(name)
}
