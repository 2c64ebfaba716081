//! `hankel`: list the identity registry, run verification suites and
//! evaluate single transforms.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hankel_core::identities::{self, quad_config_for, registry, SuiteRun};
use hankel_core::report::RunConfig;
use hankel_core::{
    transform, FunctionDescriptor, IdentityKind, IdentitySummary, QuadConfig, ReportDocument, TransformKind,
};

/// Overrides the quadrature evaluation budget.
const MAX_EVALS_ENV: &str = "HANKEL_MAX_EVALS";

#[derive(Parser)]
#[command(name = "hankel", version, about = "Integral transforms and numerical checks of their identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Print the identity index.
    List {
        #[arg(long)]
        kind: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check identities over their parameter grids and emit a report.
    Verify {
        /// Comma-separated identity ids (default: all).
        #[arg(long, value_delimiter = ',')]
        ids: Vec<String>,
        #[arg(long)]
        kind: Option<String>,
        #[arg(long, default_value_t = 3)]
        grid: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Functions replacing the default pairings, e.g. `--fn exp_decay:a=1`.
        #[arg(long = "fn")]
        functions: Vec<String>,
        /// Accepted for scripting; grids are deterministic and nothing is random.
        #[arg(long)]
        seedless: bool,
    },
    /// Evaluate one transform of a catalog function at one point.
    Transform {
        #[arg(long)]
        kind: String,
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        at: f64,
        #[arg(long)]
        nu: Option<f64>,
        #[arg(long, default_value_t = 1e-10)]
        rel_tol: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::List { kind, format } => list(parse_kind(kind.as_deref())?, format),
        Command::Verify { ids, kind, grid, tol, format, out, functions, seedless: _ } => {
            verify(ids, parse_kind(kind.as_deref())?, grid, tol, format, out, &functions)
        }
        Command::Transform { kind, function, at, nu, rel_tol, format } => {
            eval_transform(&kind, &function, at, nu, rel_tol, format)
        }
    }
}

fn parse_kind(kind: Option<&str>) -> Result<Option<IdentityKind>> {
    kind.map(|k| {
        IdentityKind::from_name(k).with_context(|| {
            format!("unknown kind '{k}' (expected iteration, parseval_exchange, closed_form or moment)")
        })
    })
    .transpose()
}

fn max_evals_override(cfg: &mut QuadConfig) -> Result<()> {
    if let Ok(v) = std::env::var(MAX_EVALS_ENV) {
        cfg.max_evals = v.trim().parse().with_context(|| format!("{MAX_EVALS_ENV}={v} is not a count"))?;
        if cfg.max_evals == 0 {
            bail!("{MAX_EVALS_ENV} must be positive");
        }
    }
    Ok(())
}

fn list(kind: Option<IdentityKind>, format: Format) -> Result<ExitCode> {
    let rows: Vec<_> = registry().iter().filter(|i| kind.is_none_or(|k| i.kind == k)).collect();
    let text = match format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|i| {
                    serde_json::json!({
                        "id": i.id,
                        "kind": i.kind.name(),
                        "citation": i.citation,
                        "domain": i.domain,
                        "arity": i.arity,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "kind", "citation", "domain"])?;
            for i in &rows {
                w.write_record([i.id, i.kind.name(), i.citation, &i.domain])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Md => {
            let mut s = String::from("| id | kind | citation | domain |\n|---|---|---|---|\n");
            for i in &rows {
                s.push_str(&format!("| {} | {} | {} | {} |\n", i.id, i.kind.name(), i.citation, i.domain));
            }
            s
        }
        Format::Text => {
            rows.iter().map(|i| format!("{:<6} {:<18} {}  [{}]\n", i.id, i.kind.name(), i.citation, i.domain)).collect()
        }
    };
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn verify(
    ids: Vec<String>,
    kind: Option<IdentityKind>,
    grid: usize,
    tol: f64,
    format: Format,
    out: Option<PathBuf>,
    functions: &[String],
) -> Result<ExitCode> {
    if tol.is_nan() || tol <= 0.0 || tol.is_infinite() {
        bail!("--tol must be positive, got {tol}");
    }
    if grid == 0 {
        bail!("--grid must be at least 1");
    }
    for id in &ids {
        identities::find(id)?;
    }
    let functions: Vec<FunctionDescriptor> =
        functions.iter().map(|s| s.parse().with_context(|| format!("bad --fn '{s}'"))).collect::<Result<_>>()?;
    let mut cfg = quad_config_for(tol);
    max_evals_override(&mut cfg)?;

    let selection = (!ids.is_empty()).then_some(ids);
    let start = Instant::now();
    let run = if functions.is_empty() {
        identities::check_all(grid, tol, &cfg, selection.as_deref(), kind)
    } else {
        run_with_functions(selection.as_deref(), kind, &functions, grid, tol, &cfg)?
    };
    let elapsed = start.elapsed().as_secs_f64();
    let config = RunConfig { quad: cfg, tol, grid, ids: selection, kind };
    let report = ReportDocument::new(config, run, elapsed);

    let text = match format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Md | Format::Text => report.to_markdown(),
    };
    match &out {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    let t = &report.totals;
    eprintln!(
        "{} identities, {} points: {} passed, {} failed, {} inconclusive ({:.1} s)",
        t.identities, t.points, t.passed, t.failed, t.inconclusive, elapsed
    );
    Ok(if t.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// User-supplied functions go to every selected identity of matching arity.
fn run_with_functions(
    ids: Option<&[String]>,
    kind: Option<IdentityKind>,
    functions: &[FunctionDescriptor],
    grid: usize,
    tol: f64,
    cfg: &QuadConfig,
) -> Result<SuiteRun> {
    let selected: Vec<_> = registry()
        .iter()
        .filter(|i| ids.is_none_or(|ids| ids.iter().any(|s| s == i.id)))
        .filter(|i| kind.is_none_or(|k| i.kind == k))
        .filter(|i| ids.is_some() || i.arity == functions.len())
        .collect();
    let mut summaries = Vec::new();
    let mut seconds = BTreeMap::new();
    for i in selected {
        let start = Instant::now();
        let points = identities::check(i.id, Some(functions), grid, tol, cfg)?;
        seconds.insert(i.id.to_string(), start.elapsed().as_secs_f64());
        summaries.push(IdentitySummary::from_points(i, points));
    }
    Ok(SuiteRun { summaries, seconds })
}

fn eval_transform(
    kind: &str,
    function: &str,
    at: f64,
    nu: Option<f64>,
    rel_tol: f64,
    format: Format,
) -> Result<ExitCode> {
    let kind = TransformKind::from_name(kind, nu)?;
    let f: FunctionDescriptor = function.parse().with_context(|| format!("bad --fn '{function}'"))?;
    let mut cfg = QuadConfig { rel_tol, ..QuadConfig::default() };
    max_evals_override(&mut cfg)?;
    let v = transform(kind, &f, at, &cfg)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&v)?),
        _ => println!(
            "{kind}{{{f}}}({at}) = {:.15e} ± {:.1e}{}",
            v.value,
            v.abs_err,
            if v.converged { "" } else { " (not converged)" }
        ),
    }
    Ok(ExitCode::SUCCESS)
}
