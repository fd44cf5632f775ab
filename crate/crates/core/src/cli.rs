//! Command-line front end. Every command is a thin wrapper over library calls.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::forest::Tree;
use crate::skein::scalar::{format_float, Arith, Numeric, Scalar};
use crate::thompson::FElement;
use crate::verify;
use crate::wysiwyg::{min_eigenvalue, Engine, Threshold};
use crate::Vacuum;

#[derive(Parser, Debug)]
#[command(name = "wysiwyg", version, about = "Thompson's group F and its Wysiwyg representations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Out::Text)]
    out: Out,
    /// Worker threads for independent evaluations.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Fill the millis column (makes output timing dependent).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Out {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Psi,
    Omega,
}

impl From<ModeArg> for Vacuum {
    fn from(m: ModeArg) -> Vacuum {
        match m {
            ModeArg::Psi => Vacuum::Psi,
            ModeArg::Omega => Vacuum::Omega,
        }
    }
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct DeltaArgs {
    /// Symbolic δ: exact rational functions.
    #[arg(long)]
    delta_exact: bool,
    /// Numeric δ.
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    /// δ = 2cos(π/n).
    #[arg(long)]
    delta_root: Option<u32>,
}

impl DeltaArgs {
    fn numeric(&self) -> Option<f64> {
        if self.delta_exact {
            None
        } else if let Some(d) = self.delta {
            Some(d)
        } else {
            self.delta_root.map(|n| Numeric::root_of_unity(n).delta)
        }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Product g·h (h acts first).
    Mul {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Inverse of g.
    Inv {
        #[arg(long)]
        g: String,
    },
    /// Vacuum coefficient ⟨gξ, ξ⟩.
    Coeff {
        #[arg(long, value_enum, default_value_t = ModeArg::Psi)]
        mode: ModeArg,
        #[arg(long)]
        elem: String,
        #[command(flatten)]
        delta: DeltaArgs,
    },
    /// Gram matrix ⟨g_i ξ, g_j ξ⟩ of the given elements (repeat --elem).
    Gram {
        #[arg(long, value_enum, default_value_t = ModeArg::Psi)]
        mode: ModeArg,
        #[arg(long = "elem", required = true)]
        elems: Vec<String>,
        #[command(flatten)]
        delta: DeltaArgs,
    },
    /// Threshold for ⟨AⁿgΨ, hΨ⟩ = ⟨gΨ,Ψ⟩⟨Ψ,hΨ⟩.
    Lemma43 {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = 15)]
        n_max: usize,
        #[command(flatten)]
        delta: DeltaArgs,
    },
    /// Threshold for ⟨σⁿ(g)ξ, ξ⟩ = ⟨gΩ,Ω⟩⟨ξ,ξ⟩ with ξ the vacuum on --tree.
    SigmaLimit {
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "((.,.),(.,.))")]
        tree: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Psi)]
        mode: ModeArg,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[command(flatten)]
        delta: DeltaArgs,
    },
    /// ⟨Aⁿξ, ξ⟩ for n = 1..n_max and consecutive ratios.
    AnDecay {
        #[arg(long, value_enum, default_value_t = ModeArg::Omega)]
        mode: ModeArg,
        #[arg(long, default_value_t = 15)]
        n_max: usize,
        #[command(flatten)]
        delta: DeltaArgs,
    },
    /// Runs the acceptance suite.
    Verify,
}

struct Row {
    n: usize,
    mode: Vacuum,
    value: Scalar,
    terms: usize,
    millis: u128,
}

#[derive(Default)]
struct Report {
    rows: Vec<Row>,
    /// Plain text form; rows are listed when this is empty.
    text: String,
    extra: serde_json::Map<String, Value>,
}

fn mode_name(m: Vacuum) -> &'static str {
    match m {
        Vacuum::Psi => "psi",
        Vacuum::Omega => "omega",
    }
}

fn parse_elem(s: &str) -> Result<FElement> {
    s.parse()
}

fn threshold_report(t: &Threshold, mode: Vacuum) -> Report {
    let mut r = Report::default();
    let mut text = String::new();
    for row in &t.rows {
        let _ = writeln!(text, "{} {} {}", row.n, row.lhs, if row.holds { "=" } else { "≠" });
        r.rows.push(Row {
            n: row.n,
            mode,
            value: row.lhs.clone(),
            terms: row.terms,
            millis: row.millis,
        });
    }
    let rhs = t.rows.first().map(|r| r.rhs.to_string()).unwrap_or_default();
    let n = t.n.map_or("none".to_string(), |n| n.to_string());
    let _ = writeln!(text, "limit {rhs}");
    let _ = write!(text, "N = {n}");
    r.text = text;
    r.extra.insert("limit".into(), json!(rhs));
    r.extra.insert("threshold".into(), json!(t.n));
    r
}

fn compute<A: Arith>(e: &Engine<A>, cmd: &Cmd, delta: Option<f64>) -> Result<Report> {
    match cmd {
        Cmd::Coeff { mode, elem, .. } => {
            let g = parse_elem(elem)?;
            let c = e.coeff_report((*mode).into(), &g)?;
            Ok(Report {
                text: c.value.to_string(),
                rows: vec![Row {
                    n: 0,
                    mode: c.mode,
                    value: c.value,
                    terms: c.terms,
                    millis: c.millis,
                }],
                ..Report::default()
            })
        }
        Cmd::Gram { mode, elems, .. } => {
            let els = elems.iter().map(|s| parse_elem(s)).collect::<Result<Vec<_>>>()?;
            let start = Instant::now();
            let g = e.gram((*mode).into(), &els)?;
            let millis = start.elapsed().as_millis();
            let mut r = Report::default();
            let k = g.len();
            for (i, row) in g.iter().enumerate() {
                let line: Vec<String> = row.iter().map(|s| s.to_string()).collect();
                let _ = writeln!(r.text, "{}", line.join("  "));
                for (j, v) in row.iter().enumerate() {
                    r.rows.push(Row {
                        n: i * k + j,
                        mode: (*mode).into(),
                        value: v.clone(),
                        terms: 0,
                        millis,
                    });
                }
            }
            if let Some(d) = delta {
                let m = min_eigenvalue(&g, d);
                let _ = writeln!(r.text, "min eigenvalue {}", format_float(m));
                r.extra.insert("min_eigenvalue".into(), json!(m));
            }
            r.text = r.text.trim_end().to_string();
            Ok(r)
        }
        Cmd::Lemma43 { g, h, n_max, .. } => {
            let t = e.lemma43_threshold(&parse_elem(g)?, &parse_elem(h)?, *n_max)?;
            Ok(threshold_report(&t, Vacuum::Psi))
        }
        Cmd::SigmaLimit {
            g, tree, mode, n_max, ..
        } => {
            let t: Tree = tree.parse()?;
            let xi = e.vacuum_on((*mode).into(), &t)?;
            let th = e.sigma_limit_check(&parse_elem(g)?, &xi, &xi, *n_max)?;
            Ok(threshold_report(&th, (*mode).into()))
        }
        Cmd::AnDecay { mode, n_max, .. } => {
            let table = e.decay_table((*mode).into(), *n_max)?;
            let mut r = Report::default();
            let mut ratios = Vec::new();
            for (n, v, ratio) in table {
                let ratio_s = ratio.as_ref().map_or("-".to_string(), |x| x.to_string());
                let _ = writeln!(r.text, "{n} {v} {ratio_s}");
                ratios.push(json!(ratio.map(|x| x.to_string())));
                r.rows.push(Row {
                    n,
                    mode: (*mode).into(),
                    value: v,
                    terms: 0,
                    millis: 0,
                });
            }
            r.text = r.text.trim_end().to_string();
            r.extra.insert("ratios".into(), Value::Array(ratios));
            Ok(r)
        }
        Cmd::Mul { .. } | Cmd::Inv { .. } | Cmd::Verify => unreachable!("handled without an engine"),
    }
}

fn delta_of(cmd: &Cmd) -> Option<&DeltaArgs> {
    match cmd {
        Cmd::Coeff { delta, .. }
        | Cmd::Gram { delta, .. }
        | Cmd::Lemma43 { delta, .. }
        | Cmd::SigmaLimit { delta, .. }
        | Cmd::AnDecay { delta, .. } => Some(delta),
        _ => None,
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render(report: &Report, out: Out, timing: bool) -> String {
    let millis = |m: u128| if timing { m.to_string() } else { String::new() };
    let split = |v: &Scalar| match v {
        Scalar::Exact(r) => (r.to_string(), String::new()),
        Scalar::Numeric(x) => (String::new(), format_float(*x)),
    };
    match out {
        Out::Text => report.text.clone(),
        Out::Csv => {
            let mut s = String::from("n,mode,exact,numeric,terms,millis");
            for r in &report.rows {
                let (ex, nu) = split(&r.value);
                let _ = write!(
                    s,
                    "\n{},{},{},{},{},{}",
                    r.n,
                    mode_name(r.mode),
                    csv_field(&ex),
                    nu,
                    r.terms,
                    millis(r.millis)
                );
            }
            s
        }
        Out::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    let (ex, nu) = split(&r.value);
                    json!({
                        "n": r.n,
                        "mode": mode_name(r.mode),
                        "exact": (!ex.is_empty()).then_some(ex),
                        "numeric": (!nu.is_empty()).then_some(nu),
                        "terms": r.terms,
                        "millis": timing.then_some(r.millis),
                    })
                })
                .collect();
            let mut obj = report.extra.clone();
            obj.insert("rows".into(), Value::Array(rows));
            Value::Object(obj).to_string()
        }
    }
}

fn element_output(g: &FElement, out: Out) -> String {
    match out {
        Out::Text => g.to_string(),
        Out::Csv => format!("element\n{}", csv_field(&g.to_string())),
        Out::Json => json!({ "element": g.to_string() }).to_string(),
    }
}

fn verify_output(results: &[verify::CriterionResult], out: Out, timing: bool) -> String {
    match out {
        Out::Text => results.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
        Out::Csv => {
            let mut s = String::from("id,name,passed,detail,millis");
            for r in results {
                let m = if timing { r.millis.to_string() } else { String::new() };
                let _ = write!(s, "\n{},{},{},{},{m}", r.id, csv_field(r.name), r.passed, csv_field(&r.detail));
            }
            s
        }
        Out::Json => Value::Array(
            results
                .iter()
                .map(|r| {
                    json!({
                        "id": r.id,
                        "name": r.name,
                        "passed": r.passed,
                        "detail": r.detail,
                        "millis": timing.then_some(r.millis),
                    })
                })
                .collect(),
        )
        .to_string(),
    }
}

fn execute(cli: &Cli, stdout: &mut String) -> Result<i32> {
    match &cli.cmd {
        Cmd::Mul { g, h } => {
            let p = parse_elem(g)?.multiply(&parse_elem(h)?);
            *stdout = element_output(&p, cli.out);
            Ok(0)
        }
        Cmd::Inv { g } => {
            *stdout = element_output(&parse_elem(g)?.inverse(), cli.out);
            Ok(0)
        }
        Cmd::Verify => {
            let results = verify::run_all();
            *stdout = verify_output(&results, cli.out, cli.timing);
            Ok(if results.iter().all(|r| r.passed) { 0 } else { 1 })
        }
        cmd => {
            let delta = delta_of(cmd).and_then(DeltaArgs::numeric);
            let report = match delta {
                None => compute(&Engine::exact(), cmd, None)?,
                Some(d) => compute(&Engine::numeric(d), cmd, Some(d))?,
            };
            *stdout = render(&report, cli.out, cli.timing);
            Ok(0)
        }
    }
}

/// Runs the command line `argv` (program name first), printing to stdout and
/// stderr. Returns the exit code: 0 on success, 1 on a domain error or failed
/// verification, 2 when a resource cap is hit.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, out, err) = run_captured(argv);
    if !out.is_empty() {
        println!("{out}");
    }
    if !err.is_empty() {
        eprintln!("{err}");
    }
    code
}

/// Like [`run`] but returns `(exit code, stdout, stderr)` instead of printing.
pub fn run_captured<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text.trim_end().to_string(), String::new())
            } else {
                (1, String::new(), text.trim_end().to_string())
            };
        }
    };
    let mut stdout = String::new();
    let result = match cli.jobs {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build() {
            Ok(pool) => pool.install(|| execute(&cli, &mut stdout)),
            Err(e) => Err(Error::Incompatible(format!("cannot start {k} workers: {e}"))),
        },
        None => execute(&cli, &mut stdout),
    };
    match result {
        Ok(code) => (code, stdout, String::new()),
        Err(e) => (if e.is_cap() { 2 } else { 1 }, String::new(), format!("error: {e}")),
    }
}
