//! The `casing` command line.
//!
//! Exit codes: 0 success, 1 usage (including objectives without a known
//! algorithm), 2 invalid input, 3 search budget or oracle cap exceeded.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use casing::arrangement::{Arrangement, ArrangementError};
use casing::fixtures::generate_fixture;
use casing::io::{parse_casing, parse_drawing, serialize_casing, serialize_drawing, CasingDocument};
use casing::objective::{Model, Objective};
use casing::oracle::{enumerate_optimal_casing, OracleCaps};
use casing::geometry::{validate_drawing, Drawing};
use casing::solve::{is_open_problem, solve, SolveError, SolveOptions};
use casing::svg::{render_svg, SvgStyle};
use casing::switches::full_report;
use clap::{Parser, Subcommand};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Invalid(String),
    Budget(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Invalid(m) | CliError::Budget(m) => m,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "casing", version, about = "Optimal casings for straight-line drawings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a drawing document against the input restrictions.
    Validate { input: PathBuf },
    /// Compute an optimal casing.
    Solve {
        #[arg(long)]
        model: String,
        #[arg(long)]
        objective: String,
        /// Node budget for the exact min-max-tunnel-length search.
        #[arg(long, default_value_t = 2_000_000)]
        exact_budget: u64,
        /// On budget exhaustion, write the stacking upper bound instead of
        /// failing.
        #[arg(long)]
        allow_heuristic: bool,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Optimum by exhaustive enumeration (small inputs only).
    Oracle {
        #[arg(long)]
        model: String,
        #[arg(long)]
        objective: String,
        #[arg(long, default_value_t = OracleCaps::default().max_crossings)]
        max_crossings: usize,
        #[arg(long, default_value_t = OracleCaps::default().max_edges)]
        max_edges: usize,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw a cased drawing as SVG.
    Render {
        input: PathBuf,
        casing: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Background margin on each side of an edge, in drawing units.
        #[arg(long)]
        margin: Option<f64>,
        #[arg(long)]
        edge_width: Option<f64>,
        #[arg(long, default_value_t = 40.0)]
        scale: f64,
    },
    /// Write a fixture drawing; parameters as key=value.
    Gen {
        fixture: String,
        params: Vec<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<(Drawing, Arrangement), CliError> {
    let d = parse_drawing(&read(path)?).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let arr = Arrangement::build(&d).map_err(|e: ArrangementError| CliError::Invalid(e.to_string()))?;
    Ok((d, arr))
}

fn model(s: &str) -> Result<Model, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("{e}")))
}

fn objective(s: &str) -> Result<Objective, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("{e}")))
}

fn solve_error(e: SolveError) -> CliError {
    match e {
        SolveError::OpenProblem { .. } => {
            CliError::Usage(format!("{e}; `casing oracle` can still enumerate small inputs"))
        }
        SolveError::Budget(_) => CliError::Budget(format!("{e}; raise --exact-budget or pass --allow-heuristic")),
    }
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, String>, CliError> {
    raw.iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| CliError::Usage(format!("parameter {p:?} is not key=value")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { input } => {
            let text = read(&input)?;
            let d = casing::io::parse_drawing_unchecked(&text)
                .map_err(|e| CliError::Invalid(format!("{}: {e}", input.display())))?;
            let r = validate_drawing(&d, None);
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            for e in &r.errors {
                eprintln!("error: {e}");
            }
            if !r.is_valid() {
                return Err(CliError::Invalid(format!("{} validation error(s)", r.errors.len())));
            }
            let arr = Arrangement::build(&d).map_err(|e| CliError::Invalid(e.to_string()))?;
            println!(
                "ok: {} vertices, {} edges, {} crossings, {} warning(s)",
                d.num_vertices(),
                d.num_edges(),
                arr.num_crossings(),
                r.warnings.len()
            );
        }
        Command::Solve { model: ms, objective: os, exact_budget, allow_heuristic, input, output } => {
            let (m, o) = (model(&ms)?, objective(&os)?);
            if is_open_problem(m, o) {
                return Err(solve_error(SolveError::OpenProblem { model: m, objective: o }));
            }
            let (_, arr) = load(&input)?;
            let s = solve(&arr, m, o, SolveOptions { exact_budget, allow_heuristic }).map_err(solve_error)?;
            let mut doc = CasingDocument::new(&arr, &s.casing).with_provenance(m, o).with_metrics(&s.report);
            doc.value = Some(s.value.to_string());
            if !s.optimal {
                doc.note = Some("exact search budget exhausted; value is the stacking upper bound".into());
            }
            eprintln!("{m} {o}: {}{}", s.value, if s.optimal { "" } else { " (upper bound)" });
            write(output.as_deref(), &serialize_casing(&doc))?;
        }
        Command::Oracle { model: ms, objective: os, max_crossings, max_edges, input, output } => {
            let (m, o) = (model(&ms)?, objective(&os)?);
            let (_, arr) = load(&input)?;
            let caps = OracleCaps { max_crossings, max_edges };
            let res = enumerate_optimal_casing(&arr, m, o, caps).map_err(|e| CliError::Budget(e.to_string()))?;
            let r = full_report(&arr, &res.witness).expect("witness matches its arrangement");
            let mut doc = CasingDocument::new(&arr, &res.witness).with_provenance(m, o).with_metrics(&r);
            doc.value = Some(res.value.to_string());
            let order = res.order.as_ref().map(|ord| {
                ord.bottom_first.iter().map(|&e| arr.drawing().edges()[e].id).collect::<Vec<_>>()
            });
            let out = serde_json::json!({
                "model": m.name(),
                "objective": o.name(),
                "value": res.value.to_string(),
                "value_approx": res.value.to_f64(),
                "fingerprint": format!("{:016x}", res.fingerprint),
                "stacking_order_bottom_first": order,
                "witness": doc,
            });
            eprintln!("{m} {o}: {}", res.value);
            let mut text = serde_json::to_string_pretty(&out).expect("plain JSON");
            text.push('\n');
            write(output.as_deref(), &text)?;
        }
        Command::Render { input, casing, output, margin, edge_width, scale } => {
            let (_, arr) = load(&input)?;
            let doc = parse_casing(&read(&casing)?).map_err(|e| CliError::Invalid(format!("{}: {e}", casing.display())))?;
            let c = doc.to_casing(&arr).map_err(|e| CliError::Invalid(format!("{}: {e}", casing.display())))?;
            let style = SvgStyle { casing_margin: margin, edge_width, scale, ..SvgStyle::default() };
            let svg = render_svg(&arr, &c, &style).map_err(|e| CliError::Invalid(e.to_string()))?;
            write(output.as_deref(), &svg)?;
        }
        Command::Gen { fixture, params, seed, output } => {
            let params = parse_params(&params)?;
            let d = generate_fixture(&fixture, &params, seed).map_err(|e| CliError::Usage(e.to_string()))?;
            write(output.as_deref(), &serialize_drawing(&d))?;
        }
    }
    Ok(())
}

/// Runs the command line on `argv` (program name first) and returns the
/// exit code. Diagnostics go to stderr.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}
