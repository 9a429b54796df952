//! Command-line front end: expression parsing, normal forms, verification
//! suites, basis listings and centre computations with deterministic reports.

pub mod eval;
pub mod expr;
pub mod parse;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dunkl_core::cherednik::Context;
use dunkl_core::coxeter::{build_root_system, load_root_system_json, Family, MultiplicityMap, RootSystem};
use dunkl_core::exactmath::Rat;
use dunkl_core::polyrep::{verify_gamma, DunklContext};
use dunkl_core::report::{Failure, Report, Status, Timing};
use dunkl_core::subalgebra::{
    centralizer, enumerate_basis, pbw_rank_check, verify_relation_suite, Kind, SubAlgebra, Suite, DEFAULT_REWRITE_CAP,
};

pub use parse::{parse_expression, SyntaxError};

/// Degree bound used when `--degree` is not given.
pub const DEFAULT_DEGREE: u32 = 2;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Syntax(#[from] SyntaxError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Engine(#[from] dunkl_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(name = "dunkl", version, about = "Exact normal forms and identity checks in rational Cherednik algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Options {
    /// Root system: A, B, D or custom:<path to JSON config>.
    #[arg(long, global = true, default_value = "A")]
    pub group: String,
    /// Number of coordinates (A with rank N is the symmetric group S_N).
    #[arg(long, global = true, default_value_t = 3)]
    pub rank: usize,
    /// Degree bound for basis, centre and the degree-dependent suites.
    #[arg(long, global = true)]
    pub degree: Option<u32>,
    /// cherednik (normal-form only), so or gl.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Record wall time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Numeric couplings, one per root orbit, e.g. `1/2` or `1,3/2`.
    #[arg(long, global = true, value_name = "RATIONALS")]
    pub numeric_g: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Prints the normal form of an expression.
    NormalForm {
        #[arg(allow_hyphen_values = true)]
        expression: String,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: VerifySuite,
    },
    /// Lists the basis words of the given degree with per-degree counts.
    Basis,
    /// Computes the centralizer up to the degree bound.
    Centre,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Cherednik,
    So,
    Gl,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifySuite {
    RelationsSo,
    RelationsGl,
    Crossing,
    Pbw,
    Hamiltonian,
    Restriction,
    Centre,
    Pfaffian,
    So3Example,
    CoxeterGeneral,
    All,
}

impl VerifySuite {
    pub fn name(self) -> &'static str {
        match self {
            VerifySuite::RelationsSo => "relations-so",
            VerifySuite::RelationsGl => "relations-gl",
            VerifySuite::Crossing => "crossing",
            VerifySuite::Pbw => "pbw",
            VerifySuite::Hamiltonian => "hamiltonian",
            VerifySuite::Restriction => "restriction",
            VerifySuite::Centre => "centre",
            VerifySuite::Pfaffian => "pfaffian",
            VerifySuite::So3Example => "so3-example",
            VerifySuite::CoxeterGeneral => "coxeter-general",
            VerifySuite::All => "all",
        }
    }
}

/// What a command produced: exit code and the bytes for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn usage(msg: String) -> Output {
        Output { code: EXIT_USAGE, stdout: String::new(), stderr: msg }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Output { code: EXIT_PASS, stdout: text, stderr: String::new() }
                }
                _ => Output::usage(text),
            };
        }
    };
    let start = Instant::now();
    let (code, body) = match execute(&cli, start) {
        Ok(x) => x,
        Err(e) => return Output::usage(format!("error: {e}\n")),
    };
    match &cli.opts.out {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Output { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Output::usage(format!("error: {}: {e}\n", path.display())),
        },
        None => Output { code, stdout: body, stderr: String::new() },
    }
}

fn execute(cli: &Cli, start: Instant) -> Result<(i32, String), CliError> {
    let opts = &cli.opts;
    let ctx = build_context(opts)?;
    let degree = opts.degree.unwrap_or(DEFAULT_DEGREE);
    let finish = |mut report: Report| {
        report.timing = opts.timing.then(|| Timing { wall_seconds: start.elapsed().as_secs_f64() });
        report
    };
    match &cli.command {
        Command::NormalForm { expression } => {
            let ast = parse_expression(expression)?;
            let mode = opts.mode.unwrap_or(Mode::Cherednik);
            let (text, terms) = match mode {
                Mode::Cherednik => {
                    let p = eval::eval_cherednik(&ctx, &ast)?;
                    (p.to_canonical_string(), p.len())
                }
                Mode::So | Mode::Gl => {
                    let bound = opts.degree.unwrap_or(dunkl_core::subalgebra::DEFAULT_MAX_DEGREE);
                    let sub = SubAlgebra::with_limits(&ctx, kind_of(mode), DEFAULT_REWRITE_CAP, bound);
                    let e = eval::eval_sub(&sub, &ast)?;
                    (e.to_string_with(&ctx), e.len())
                }
            };
            let report = finish(
                report_for(&ctx, "normal-form")
                    .param("expression", ast.to_string())
                    .param("mode", mode_name(mode)),
            );
            let report = Report { result: Some(json!({ "normal_form": text, "terms": terms })), ..report };
            let body = match opts.format {
                Format::Json => report.to_json(),
                Format::Text => {
                    let mut s = format!("{text}\n");
                    if let Some(t) = &report.timing {
                        let _ = writeln!(s, "wall time: {:.3}s", t.wall_seconds);
                    }
                    s
                }
            };
            Ok((EXIT_PASS, body))
        }
        Command::Verify { suite } => {
            let report = finish(verify(&ctx, *suite, degree, opts.mode)?);
            let code = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
            Ok((code, render(&report, opts.format)))
        }
        Command::Basis => {
            let kind = subalgebra_kind(opts.mode)?;
            Ok((EXIT_PASS, basis_listing(&ctx, kind, degree, opts.format, finish)))
        }
        Command::Centre => {
            let kind = subalgebra_kind(opts.mode)?;
            let centre = centralizer(&SubAlgebra::new(&ctx, kind), degree)?;
            let report = finish(centre.report);
            let code = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
            Ok((code, render(&report, opts.format)))
        }
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Cherednik => "cherednik",
        Mode::So => "so",
        Mode::Gl => "gl",
    }
}

fn kind_of(m: Mode) -> Kind {
    if m == Mode::Gl {
        Kind::Gl
    } else {
        Kind::So
    }
}

fn subalgebra_kind(mode: Option<Mode>) -> Result<Kind, CliError> {
    match mode {
        Some(Mode::Cherednik) => Err(CliError::Usage("this command needs --mode so or --mode gl".into())),
        m => Ok(kind_of(m.unwrap_or(Mode::So))),
    }
}

pub fn root_system(group: &str, rank: usize) -> Result<RootSystem, CliError> {
    if let Some(path) = group.strip_prefix("custom:") {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
        return Ok(load_root_system_json(&text)?);
    }
    let family = match group {
        "A" => Family::A,
        "B" => Family::B,
        "D" => Family::D,
        other => return Err(CliError::Usage(format!("unknown group `{other}`; use A, B, D or custom:<path>"))),
    };
    Ok(build_root_system(family, rank)?)
}

pub fn build_context(opts: &Options) -> Result<Arc<Context>, CliError> {
    let rs = root_system(&opts.group, opts.rank)?;
    let mult = match &opts.numeric_g {
        None => MultiplicityMap::symbolic(&rs),
        Some(list) => {
            let values = list
                .split(',')
                .map(|s| s.trim().parse::<Rat>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            if values.len() != rs.num_orbits() {
                return Err(CliError::Usage(format!(
                    "--numeric-g needs {} value(s), one per root orbit, got {}",
                    rs.num_orbits(),
                    values.len()
                )));
            }
            MultiplicityMap::numeric(&values)
        }
    };
    Ok(Context::new(rs, mult)?)
}

fn report_for(ctx: &Context, check: &str) -> Report {
    let rs = ctx.root_system();
    Report::new(check, &rs.family().to_string(), rs.family_rank())
}

fn relations(ctx: &Arc<Context>, suite: Suite) -> Result<Report, CliError> {
    Ok(verify_relation_suite(ctx, suite, None)?)
}

/// Keeps the relations whose name satisfies `keep`.
fn filter_relations(mut r: Report, check: &str, keep: impl Fn(&str) -> bool) -> Report {
    r.check = check.into();
    r.counts.retain(|k, _| keep(k));
    r.failures.retain(|f| keep(&f.relation));
    r.status = if r.counts.values().any(|c| c.failed > 0) { Status::Fail } else { Status::Pass };
    r
}

/// One report from several; relation and parameter names get the part's check as prefix.
fn combine(ctx: &Context, check: &str, parts: Vec<Report>) -> Report {
    let mut out = report_for(ctx, check);
    let mut results = BTreeMap::new();
    for p in parts {
        let prefix = p.check.clone();
        for (k, v) in p.params {
            out.params.insert(format!("{prefix}.{k}"), v);
        }
        for (k, c) in p.counts {
            out.counts.insert(format!("{prefix}/{k}"), c);
        }
        for f in p.failures {
            out.failures.push(Failure { relation: format!("{prefix}/{}", f.relation), ..f });
        }
        if p.status == Status::Fail {
            out.status = Status::Fail;
        }
        if let Some(r) = p.result {
            results.insert(prefix, r);
        }
    }
    if !results.is_empty() {
        out.result = Some(Value::Object(results.into_iter().collect()));
    }
    out
}

fn renamed(mut r: Report, check: &str) -> Report {
    r.check = check.into();
    r
}

pub fn verify(ctx: &Arc<Context>, suite: VerifySuite, degree: u32, mode: Option<Mode>) -> Result<Report, CliError> {
    let rs = ctx.root_system();
    let type_a = rs.family() == Family::A;
    let n = ctx.rank();
    let name = suite.name();
    let report = match suite {
        VerifySuite::RelationsSo => renamed(relations(ctx, Suite::So)?, name),
        VerifySuite::RelationsGl => renamed(relations(ctx, Suite::Gl)?, name),
        VerifySuite::So3Example => renamed(relations(ctx, Suite::So3)?, name),
        VerifySuite::Pfaffian => renamed(relations(ctx, Suite::Pfaffian)?, name),
        VerifySuite::Crossing => filter_relations(relations(ctx, Suite::So)?, name, |k| k.contains("crossing")),
        VerifySuite::CoxeterGeneral => {
            combine(ctx, name, vec![relations(ctx, Suite::Coxeter)?, relations(ctx, Suite::Decomposition)?])
        }
        VerifySuite::Pbw => {
            let sub = SubAlgebra::new(ctx, subalgebra_kind(mode)?);
            pbw_rank_check(&sub, degree)?.param("degree_bound", degree)
        }
        VerifySuite::Hamiltonian => DunklContext::new(ctx).verify_hamiltonian_identity(degree.max(1), 1, true),
        VerifySuite::Restriction => {
            let mut parts = vec![DunklContext::new(ctx).restrict_check(degree.max(1))];
            if type_a && n >= 2 {
                parts.push(verify_gamma(&(2..=n).collect::<Vec<_>>()));
            }
            combine(ctx, name, parts)
        }
        VerifySuite::Centre => {
            let sub = SubAlgebra::new(ctx, subalgebra_kind(mode)?);
            combine(ctx, name, vec![relations(ctx, Suite::Centre)?, centralizer(&sub, degree)?.report])
        }
        VerifySuite::All => {
            let mut picks = vec![VerifySuite::RelationsSo, VerifySuite::CoxeterGeneral];
            if type_a {
                picks.push(VerifySuite::RelationsGl);
                if n == 3 {
                    picks.push(VerifySuite::So3Example);
                }
                if n >= 4 && n % 2 == 0 {
                    picks.push(VerifySuite::Pfaffian);
                }
            }
            picks.extend([VerifySuite::Hamiltonian, VerifySuite::Restriction, VerifySuite::Pbw, VerifySuite::Centre]);
            let parts = picks
                .into_iter()
                .map(|s| verify(ctx, s, degree, mode).map(|r| renamed(r, s.name())))
                .collect::<Result<Vec<_>, _>>()?;
            combine(ctx, name, parts)
        }
    };
    Ok(report)
}

fn basis_listing(
    ctx: &Arc<Context>,
    kind: Kind,
    degree: u32,
    format: Format,
    finish: impl Fn(Report) -> Report,
) -> String {
    let n = ctx.rank();
    let per_degree: Vec<usize> = (0..=degree).map(|d| enumerate_basis(kind, n, d).len()).collect();
    let group = ctx.group();
    let words: Vec<String> = enumerate_basis(kind, n, degree)
        .iter()
        .map(|w| {
            let mut s = String::new();
            w.write(kind, |g| group.render(g), &mut s).unwrap();
            if s.is_empty() {
                s.push('1');
            }
            s
        })
        .collect();
    let report = finish(report_for(ctx, "basis").param("algebra", kind.to_string()).param("degree", degree));
    match format {
        Format::Json => {
            let result = json!({
                "per_degree": per_degree,
                "words": words,
                "group_order": group.len(),
            });
            Report { result: Some(result), ..report }.to_json()
        }
        Format::Text => {
            let mut s = format!("{kind} basis words, N = {n}, times group elements ({} of them)\n", group.len());
            for (d, c) in per_degree.iter().enumerate() {
                let _ = writeln!(s, "degree {d}: {c}");
            }
            let _ = writeln!(s, "words of degree {degree}:");
            for w in &words {
                let _ = writeln!(s, "  {w}");
            }
            if let Some(t) = &report.timing {
                let _ = writeln!(s, "wall time: {:.3}s", t.wall_seconds);
            }
            s
        }
    }
}
