//! Command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::identities::{run_checks, VerificationReport};
use crate::moments::{Family, MomentTable, Provenance, WeightSpec};
use crate::orthopoly::{
    generating_partial_sum, recurrence_coeffs, working_digits, zeros_interlace, OrthoBasis,
    Registry,
};
use crate::real::{PrecisionContext, Real};

/// Exit status for a failed gating verification.
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "prudnikov",
    version,
    about = "Orthogonal polynomials for the weights e^{-x}ρ_ν and e^{-1/x}x^{-1}ρ_ν"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Raw moments μ_0..μ_{2n}.
    Moments,
    /// Orthonormal polynomial coefficients.
    Ortho,
    /// Three-term recurrence coefficients.
    Recurrence,
    /// Run the identity suite.
    Verify,
    /// Evaluate p_0..p_n and the weight at --x.
    Eval,
    /// Partial sum of Σ p_n(x) zⁿ/n! at --x, --z.
    Genfun,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouteArg {
    Paper,
    Moment,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Options {
    #[arg(long, global = true, value_enum, default_value = "plus")]
    pub family: FamilyArg,
    /// Order ν as a decimal string.
    #[arg(long, global = true, default_value = "0.5", allow_hyphen_values = true)]
    pub nu: String,
    #[arg(long, global = true, default_value_t = 3)]
    pub degree: usize,
    #[arg(long, global = true, env = "ORTHO_DIGITS", default_value_t = 50)]
    pub digits: u32,
    #[arg(long, global = true, value_enum, default_value = "paper")]
    pub route: RouteArg,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub output: OutputFormat,
    /// Write to this file instead of stdout.
    #[arg(long = "out", global = true)]
    pub out_path: Option<PathBuf>,
    /// Evaluation points, comma separated.
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    pub x: String,
    #[arg(
        long,
        global = true,
        default_value = "0.25",
        allow_hyphen_values = true
    )]
    pub z: String,
    /// Restrict `verify` to these checks (repeatable).
    #[arg(long = "check", global = true)]
    pub checks: Vec<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyArg {
    Plus,
    Minus,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Plus => Family::Plus,
            FamilyArg::Minus => Family::Minus,
        }
    }
}

/// Validated configuration of one invocation.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub command: Command,
    pub spec: WeightSpec,
    pub degree: usize,
    pub ctx: PrecisionContext,
    pub route: RouteArg,
    pub output: OutputFormat,
    pub out_path: Option<PathBuf>,
    pub x: Vec<Real>,
    pub z: Real,
    pub checks: Vec<String>,
}

impl CliConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let o = &cli.opts;
        if o.digits < 16 {
            return Err(Error::Invalid(format!(
                "--digits must be at least 16, got {}",
                o.digits
            )));
        }
        let ctx = PrecisionContext::new(o.digits)?;
        // ν is kept at working precision so decimal inputs are not rounded early
        let wide = ctx.with_digits(working_digits(o.digits, o.degree));
        let spec = WeightSpec::new(o.family.into(), wide.parse(o.nu.trim())?)?;
        let x =
            o.x.split(',')
                .map(|s| wide.parse(s.trim()))
                .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            command: cli.command,
            spec,
            degree: o.degree,
            route: o.route,
            output: o.output,
            out_path: o.out_path.clone(),
            x,
            z: wide.parse(o.z.trim())?,
            checks: o.checks.clone(),
            ctx,
        })
    }
}

/// Rendered artifact plus whether every gating condition held.
pub struct Artifact {
    pub text: String,
    pub ok: bool,
}

fn s(v: &Real, digits: u32) -> String {
    v.to_sig_string(digits)
}

fn header(cfg: &CliConfig) -> serde_json::Map<String, Value> {
    let d = cfg.ctx.digits();
    let mut m = serde_json::Map::new();
    m.insert("family".into(), json!(cfg.spec.family().to_string()));
    m.insert("nu".into(), json!(s(cfg.spec.nu(), d)));
    m.insert("n".into(), json!(cfg.degree));
    m.insert("digits".into(), json!(d));
    m
}

fn render_json(v: &Value) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("JSON values serialize");
    out.push('\n');
    out
}

/// Fixed-width table with a header row.
fn render_table(head: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = head.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            widths[i] = widths[i].max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<w$}", w = widths[i]))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(head.to_vec(), &mut out);
    for r in rows {
        line(r.iter().map(|c| c.as_str()).collect(), &mut out);
    }
    out
}

fn render_csv(head: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = head.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

fn tabular(cfg: &CliConfig, json: Value, head: &[&str], rows: Vec<Vec<String>>) -> String {
    match cfg.output {
        OutputFormat::Json => render_json(&json),
        OutputFormat::Csv => render_csv(head, &rows),
        OutputFormat::Table => render_table(head, &rows),
    }
}

fn build(cfg: &CliConfig, name: &str) -> Result<OrthoBasis> {
    Registry::default()
        .get(name)?
        .build(&cfg.spec, cfg.degree, &cfg.ctx)
}

fn coeff_rows(basis: &OrthoBasis, route: Option<&str>) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for (n, p) in basis.polys.iter().enumerate() {
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut row = Vec::with_capacity(4);
            if let Some(r) = route {
                row.push(r.to_string());
            }
            row.extend([n.to_string(), k.to_string(), s(c, basis.digits)]);
            rows.push(row);
        }
    }
    rows
}

fn moments(cfg: &CliConfig) -> Result<Artifact> {
    let d = cfg.ctx.digits();
    let table = MomentTable::get(&cfg.spec, cfg.degree, &cfg.ctx)?;
    let mut m = header(cfg);
    let provenance = match table.provenance {
        Provenance::ClosedForm => "closed_form",
        Provenance::Oracle => "oracle",
    };
    m.insert("provenance".into(), json!(provenance));
    m.insert(
        "moments".into(),
        json!(table.mu.iter().map(|v| s(v, d)).collect::<Vec<_>>()),
    );
    let rows = table
        .mu
        .iter()
        .enumerate()
        .map(|(k, v)| vec![k.to_string(), s(v, d)])
        .collect();
    Ok(Artifact {
        text: tabular(cfg, Value::Object(m), &["k", "moment"], rows),
        ok: true,
    })
}

fn ortho(cfg: &CliConfig) -> Result<Artifact> {
    match cfg.route {
        RouteArg::Paper | RouteArg::Moment => {
            let name = if cfg.route == RouteArg::Paper {
                "paper"
            } else {
                "moment"
            };
            let basis = build(cfg, name)?;
            let rows = coeff_rows(&basis, None);
            Ok(Artifact {
                text: tabular(cfg, basis.to_json(), &["n", "k", "value"], rows),
                ok: true,
            })
        }
        RouteArg::Both => {
            let paper = build(cfg, "paper")?;
            let moment = build(cfg, "moment")?;
            let disc = paper.max_discrepancy(&moment);
            let mut m = header(cfg);
            m.insert("route".into(), json!("both"));
            m.insert("paper".into(), paper.to_json());
            m.insert("moment".into(), moment.to_json());
            m.insert("max_discrepancy".into(), json!(s(&disc, 6)));
            let mut rows = coeff_rows(&paper, Some("paper"));
            rows.extend(coeff_rows(&moment, Some("moment")));
            let text = match cfg.output {
                OutputFormat::Json => render_json(&Value::Object(m)),
                OutputFormat::Csv => render_csv(&["route", "n", "k", "value"], &rows),
                OutputFormat::Table => {
                    let mut t = render_table(&["route", "n", "k", "value"], &rows);
                    let _ = writeln!(t, "max_discrepancy {}", s(&disc, 6));
                    t
                }
            };
            Ok(Artifact { text, ok: true })
        }
    }
}

fn recurrence(cfg: &CliConfig) -> Result<Artifact> {
    let d = cfg.ctx.digits();
    let name = if cfg.route == RouteArg::Moment {
        "moment"
    } else {
        "paper"
    };
    let basis = build(cfg, name)?;
    let rec = recurrence_coeffs(&basis);
    let strs = |v: &[Real]| v.iter().map(|x| s(x, d)).collect::<Vec<_>>();
    let mut m = header(cfg);
    m.insert("route".into(), json!(basis.route.to_string()));
    m.insert("A".into(), json!(strs(&rec.a)));
    m.insert("B".into(), json!(strs(&rec.b)));
    m.insert("A_det".into(), json!(strs(&rec.a_det)));
    m.insert("B_det".into(), json!(strs(&rec.b_det)));
    m.insert("zeros_interlace".into(), json!(zeros_interlace(&basis)));
    let rows = (0..rec.a.len())
        .map(|k| vec![k.to_string(), s(&rec.a[k], d), s(&rec.b[k], d)])
        .collect();
    Ok(Artifact {
        text: tabular(cfg, Value::Object(m), &["k", "A_k+1", "B_k"], rows),
        ok: true,
    })
}

fn report_row(r: &VerificationReport) -> Vec<String> {
    vec![
        r.name.clone(),
        if r.passed { "PASS" } else { "FAIL" }.to_string(),
        if r.gating { "yes" } else { "no" }.to_string(),
        r.max_residual.to_sig_string(3),
        r.tolerance.to_sig_string(3),
    ]
}

fn verify(cfg: &CliConfig) -> Result<Artifact> {
    let (ok, reports) = run_checks(&cfg.spec, cfg.degree, &cfg.checks, &cfg.ctx)?;
    let mut m = header(cfg);
    m.insert("passed".into(), json!(ok));
    m.insert(
        "reports".into(),
        Value::Array(reports.iter().map(|r| r.to_json()).collect()),
    );
    let rows = reports.iter().map(report_row).collect();
    Ok(Artifact {
        text: tabular(
            cfg,
            Value::Object(m),
            &["check", "result", "gating", "max_residual", "tolerance"],
            rows,
        ),
        ok,
    })
}

fn eval(cfg: &CliConfig) -> Result<Artifact> {
    let d = cfg.ctx.digits();
    let basis = build(
        cfg,
        if cfg.route == RouteArg::Moment {
            "moment"
        } else {
            "paper"
        },
    )?;
    let mut points = Vec::new();
    let mut rows = Vec::new();
    for x in &cfg.x {
        let w = cfg.spec.weight(x, &basis.work)?;
        let values: Vec<String> = basis.polys.iter().map(|p| s(&p.eval(x), d)).collect();
        for (k, v) in values.iter().enumerate() {
            rows.push(vec![s(x, d), k.to_string(), v.clone()]);
        }
        points.push(json!({ "x": s(x, d), "weight": s(&w, d), "values": values }));
    }
    let mut m = header(cfg);
    m.insert("points".into(), Value::Array(points));
    Ok(Artifact {
        text: tabular(cfg, Value::Object(m), &["x", "n", "value"], rows),
        ok: true,
    })
}

fn genfun(cfg: &CliConfig) -> Result<Artifact> {
    let d = cfg.ctx.digits();
    let basis = build(cfg, "paper")?;
    let mut points = Vec::new();
    let mut rows = Vec::new();
    for x in &cfg.x {
        let g = generating_partial_sum(&basis, x, &cfg.z, cfg.degree)?;
        let (direct, reduction) = (g.direct(), g.reduction());
        rows.push(vec![s(x, d), s(&cfg.z, d), s(&direct, d), s(&reduction, d)]);
        points
            .push(json!({ "x": s(x, d), "direct": s(&direct, d), "reduction": s(&reduction, d) }));
    }
    let mut m = header(cfg);
    m.insert("z".into(), json!(s(&cfg.z, d)));
    m.insert("points".into(), Value::Array(points));
    Ok(Artifact {
        text: tabular(
            cfg,
            Value::Object(m),
            &["x", "z", "direct", "reduction"],
            rows,
        ),
        ok: true,
    })
}

/// Produces the artifact for a validated configuration.
pub fn execute(cfg: &CliConfig) -> Result<Artifact> {
    match cfg.command {
        Command::Moments => moments(cfg),
        Command::Ortho => ortho(cfg),
        Command::Recurrence => recurrence(cfg),
        Command::Verify => verify(cfg),
        Command::Eval => eval(cfg),
        Command::Genfun => genfun(cfg),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Conditioning { .. } => 2,
        _ => 1,
    }
}

/// Runs one invocation; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = CliConfig::from_cli(cli).and_then(|cfg| {
        let art = execute(&cfg)?;
        match &cfg.out_path {
            Some(p) => std::fs::write(p, &art.text)?,
            None => print!("{}", art.text),
        }
        Ok(art.ok)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => {
            eprintln!("verification failed");
            EXIT_VERIFY_FAILED
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
