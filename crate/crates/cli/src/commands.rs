use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qf_core::closed::{
    ext_trace_closed, sym_trace_closed, sym_trace_displayed, trace_form, ClosedForm, TraceParams,
};
use qf_core::harness::{
    self, IdentityReport, ParamValues, Params, SuiteConfig, VerifyOptions, REGISTRY,
};
use qf_core::power::{lambda_power, sym_power};
use qf_core::{normalize, FieldMode};
use serde_json::json;

use crate::eval::evaluate;
use crate::parser::parse;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "qf",
    version,
    about = "Exact arithmetic on diagonal quadratic forms and their symmetric and exterior powers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Evaluate a form expression, e.g. "S^2(<1,1> + H)".
    Eval(EvalArgs),
    /// Check one identity against the power engine.
    Verify(VerifyArgs),
    /// Print the trace-form power table for one degree n.
    Table(TableArgs),
    /// Run a sweep of identity checks.
    Suite(SuiteArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    /// -1 is not assumed to be a square.
    R,
    /// -1 is a square.
    C,
}

impl From<Mode> for FieldMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::R => FieldMode::Generic,
            Mode::C => FieldMode::MinusOneSquare,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug)]
struct EvalArgs {
    expr: String,
    #[arg(long, value_enum, default_value = "r")]
    mode: Mode,
    /// Print the Witt decomposition instead of the raw diagonal form.
    #[arg(long)]
    normalize: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// Parameter values are `7`, `1,3,5` or the inclusive range `0..10`.
#[derive(Args, Debug)]
struct VerifyArgs {
    id: String,
    #[arg(long, allow_hyphen_values = true)]
    h: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    sample: Option<String>,
    #[arg(long)]
    max_dim: Option<String>,
    #[arg(long)]
    max_classes: Option<String>,
    #[arg(long)]
    atoms: Option<String>,
    /// Override the mode each identity requires.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

impl VerifyArgs {
    fn params(&self) -> Vec<(&'static str, &Option<String>)> {
        vec![
            ("h", &self.h),
            ("k", &self.k),
            ("n", &self.n),
            ("m", &self.m),
            ("p", &self.p),
            ("q", &self.q),
            ("r", &self.r),
            ("s", &self.s),
            ("sign", &self.sign),
            ("seed", &self.seed),
            ("sample", &self.sample),
            ("max_dim", &self.max_dim),
            ("max_classes", &self.max_classes),
            ("atoms", &self.atoms),
        ]
    }
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    #[arg(long)]
    k_max: u64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    /// TOML sweep description; the full default sweep when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Print every cell, not only failures.
    #[arg(long)]
    verbose: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval(a) => eval(&a, out),
        Command::Verify(a) => verify(&a, out),
        Command::Table(a) => table(&a, out),
        Command::Suite(a) => suite(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "qf: {msg}");
            EXIT_USAGE
        }
    }
}

type CmdResult = Result<i32, String>;

fn io(e: std::io::Error) -> String {
    e.to_string()
}

fn json_line(out: &mut dyn Write, v: &impl serde::Serialize) -> Result<(), String> {
    let s = serde_json::to_string_pretty(v).map_err(|e| e.to_string())?;
    writeln!(out, "{s}").map_err(io)
}

fn eval(a: &EvalArgs, out: &mut dyn Write) -> CmdResult {
    let expr = parse(&a.expr).map_err(|e| format!("parse error at {e}"))?;
    let form = evaluate(&expr).map_err(|e| e.to_string())?;
    match (a.normalize, a.format) {
        (true, Format::Text) => writeln!(out, "{}", normalize(&form, a.mode.into())).map_err(io)?,
        (true, Format::Json) => json_line(out, &normalize(&form, a.mode.into()))?,
        (false, Format::Text) => writeln!(out, "{form}").map_err(io)?,
        (false, Format::Json) => json_line(out, &form)?,
    }
    Ok(EXIT_PASS)
}

pub(crate) fn parse_values(name: &str, text: &str) -> Result<ParamValues, String> {
    let int = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| format!("--{name}: cannot read '{s}' as an integer"))
    };
    if let Some((from, to)) = text.split_once("..") {
        let (from, to) = (int(from)?, int(to)?);
        if from > to {
            return Err(format!("--{name}: empty range {text}"));
        }
        Ok(ParamValues::range(from, to))
    } else if text.contains(',') {
        Ok(ParamValues::List(
            text.split(',').map(int).collect::<Result<_, _>>()?,
        ))
    } else {
        Ok(ParamValues::Single(int(text)?))
    }
}

fn print_reports(
    reports: &[IdentityReport],
    verbose: bool,
    out: &mut dyn Write,
) -> Result<(), String> {
    for r in reports {
        if r.passed {
            if verbose {
                writeln!(out, "PASS {}: {}", r.label(), r.lhs).map_err(io)?;
            }
        } else {
            writeln!(out, "FAIL {}", r.label()).map_err(io)?;
            writeln!(out, "  engine: {}", r.lhs).map_err(io)?;
            writeln!(out, "  closed: {}", r.rhs).map_err(io)?;
        }
        if let (Some(note), true) = (&r.note, verbose || !r.passed) {
            writeln!(out, "  note: {note}").map_err(io)?;
        }
    }
    Ok(())
}

fn summary(reports: &[IdentityReport], out: &mut dyn Write) -> Result<(), String> {
    let failed = reports.iter().filter(|r| !r.passed).count();
    writeln!(
        out,
        "{} cells, {} passed, {} failed",
        reports.len(),
        reports.len() - failed,
        failed
    )
    .map_err(io)
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    if !REGISTRY.contains(&a.id.as_str()) {
        return Err(format!(
            "unknown identity '{}' (known: {})",
            a.id,
            REGISTRY.join(", ")
        ));
    }
    let mut sweep = BTreeMap::new();
    for (name, value) in a.params() {
        if let Some(text) = value {
            sweep.insert(name.to_string(), parse_values(name, text)?);
        }
    }
    let opts = VerifyOptions {
        mode: a.mode.map(Into::into),
        ..SuiteConfig::default().options()
    };
    let single: Option<Params> = sweep
        .iter()
        .map(|(k, v)| match v {
            ParamValues::Single(x) => Some((k.clone(), *x)),
            _ => None,
        })
        .collect();
    let reports = if let Some(params) = single {
        vec![harness::verify(&a.id, &params, &opts).map_err(|e| e.to_string())?]
    } else {
        let config = SuiteConfig {
            mode: opts.mode,
            ..SuiteConfig::default()
        }
        .with(
            &a.id,
            &sweep
                .iter()
                .map(|(k, v)| (k.as_str(), v.clone()))
                .collect::<Vec<_>>(),
        );
        let cells = harness::cells(&config);
        if cells.is_empty() {
            return Err(format!(
                "no parameter combination lies in the domain of {}",
                a.id
            ));
        }
        for (id, params) in &cells {
            harness::check_domain(id, params).map_err(|e| e.to_string())?;
        }
        harness::run_suite(&config).reports
    };
    let all = reports.iter().all(|r| r.passed);
    match a.format {
        Format::Json => json_line(out, &reports)?,
        Format::Text => {
            print_reports(&reports, true, out)?;
            if reports.len() > 1 {
                summary(&reports, out)?;
            }
        }
    }
    Ok(if all { EXIT_PASS } else { EXIT_MISMATCH })
}

struct Cell {
    closed: Result<ClosedForm, String>,
    engine: qf_core::NormalForm,
    verified: bool,
}

impl Cell {
    fn new(
        closed: qf_core::Result<ClosedForm>,
        engine: &qf_core::DiagonalForm,
        mode: FieldMode,
    ) -> Self {
        let engine = normalize(engine, mode);
        let closed = closed.map(|c| c.tidy()).map_err(|e| e.to_string());
        let verified = matches!(&closed, Ok(c) if normalize(&c.form(), mode) == engine);
        Cell {
            closed,
            engine,
            verified,
        }
    }

    fn text(&self) -> String {
        let shown = match &self.closed {
            Ok(c) => c.to_string(),
            Err(e) => format!("error: {e}"),
        };
        if self.verified {
            shown
        } else {
            format!("{shown} [MISMATCH, engine gives {}]", self.engine)
        }
    }

    fn json(&self) -> serde_json::Value {
        json!({
            "form": self.closed.as_ref().map(|c| c.to_string()).unwrap_or_default(),
            "error": self.closed.as_ref().err(),
            "engine": self.engine,
            "verified": self.verified,
        })
    }
}

type Row = (u64, Cell, Cell);

/// Rows `k = 0..=k_max` of `Λ^k T_S` and `S^k T_S`. The symmetric column
/// uses the single-coefficient result where it is defined.
fn table_rows(n: u64, k_max: u64) -> Result<(FieldMode, Vec<Row>), String> {
    let tp = TraceParams::new(n).map_err(|e| e.to_string())?;
    let mode = tp.required_mode();
    let t = trace_form(&tp);
    let mut rows = Vec::new();
    for k in 0..=k_max {
        let ki = i64::try_from(k).map_err(|e| e.to_string())?;
        let ext = Cell::new(ext_trace_closed(&tp, k), &lambda_power(&t, ki), mode);
        let sym_closed = match sym_trace_displayed(&tp, k) {
            Ok(Some(c)) => Ok(c),
            Ok(None) => sym_trace_closed(&tp, k),
            Err(e) => Err(e),
        };
        let engine = sym_power(&t, ki).map_err(|e| e.to_string())?;
        rows.push((k, ext, Cell::new(sym_closed, &engine, mode)));
    }
    Ok((mode, rows))
}

fn table(a: &TableArgs, out: &mut dyn Write) -> CmdResult {
    let (mode, rows) = table_rows(a.n, a.k_max)?;
    let all = rows.iter().all(|(_, e, s)| e.verified && s.verified);
    match a.format {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(k, e, s)| json!({ "k": k, "ext": e.json(), "sym": s.json() }))
                .collect();
            json_line(out, &json!({ "n": a.n, "mode": mode, "rows": rows }))?;
        }
        Format::Text => {
            writeln!(out, "n = {}, mode {mode}", a.n).map_err(io)?;
            for (k, e, s) in &rows {
                writeln!(out, "k={k} | L: {} | S: {}", e.text(), s.text()).map_err(io)?;
            }
        }
    }
    Ok(if all { EXIT_PASS } else { EXIT_MISMATCH })
}

fn suite(a: &SuiteArgs, out: &mut dyn Write) -> CmdResult {
    let config = match &a.config {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let config: SuiteConfig =
                toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            for id in config.sweep.keys() {
                if !REGISTRY.contains(&id.as_str()) {
                    return Err(format!("{}: unknown identity '{id}'", path.display()));
                }
            }
            config
        }
        None => SuiteConfig::defaults(),
    };
    let outcome = harness::run_suite(&config);
    match a.format {
        Format::Json => json_line(out, &outcome)?,
        Format::Text => {
            print_reports(&outcome.reports, a.verbose, out)?;
            summary(&outcome.reports, out)?;
        }
    }
    Ok(if outcome.all_passed {
        EXIT_PASS
    } else {
        EXIT_MISMATCH
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("qf").chain(args.iter().copied()),
            &mut o,
            &mut e,
        );
        (
            code,
            String::from_utf8(o).unwrap(),
            String::from_utf8(e).unwrap(),
        )
    }

    #[test]
    fn values() {
        assert_eq!(parse_values("k", "0..3").unwrap(), ParamValues::range(0, 3));
        assert_eq!(
            parse_values("k", "1,-1").unwrap(),
            ParamValues::List(vec![1, -1])
        );
        assert_eq!(parse_values("k", "-1").unwrap(), ParamValues::Single(-1));
        assert!(parse_values("k", "3..1").is_err());
        assert!(parse_values("k", "x").is_err());
    }

    #[test]
    fn table_examples() {
        let (code, out, _) = run_str(&["table", "--n", "3", "--k-max", "3"]);
        assert_eq!(code, 0, "{out}");
        assert!(
            out.contains("k=3 | L: 4 x <1> + 40 x H | S: 5 x <-1> + 80 x H"),
            "{out}"
        );
        let (code, out, _) = run_str(&["table", "--n", "2", "--k-max", "2"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("k=2 | L: 3 x H |"), "{out}");
        let (_, out, _) = run_str(&["table", "--n", "1", "--k-max", "2"]);
        for k in 0..=2 {
            assert!(out.contains(&format!("k={k} | L: ")), "{out}");
            assert!(
                out.contains(&format!("k={k} |"))
                    && out
                        .lines()
                        .nth(k + 1)
                        .unwrap()
                        .ends_with("S: 1 x <1> + 0 x H"),
                "{out}"
            );
        }
    }

    #[test]
    fn table_all_cells_verified() {
        for n in 1..=8 {
            let (_, rows) = table_rows(n, 8).unwrap();
            for (k, e, s) in rows {
                assert!(e.verified, "n={n} k={k} L: {}", e.text());
                assert!(s.verified, "n={n} k={k} S: {}", s.text());
            }
        }
    }
}
