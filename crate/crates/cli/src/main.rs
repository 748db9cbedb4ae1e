//! Command-line frontend: table validation, single-order solves, full-group
//! runs, the prime-graph verdict and cache inspection.
//!
//! Exit codes: 0 success / graphs equal, 1 data error or unequal graphs,
//! 2 unbounded system, 3 capped.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use help_core::lp::{CharacterSelection, FormSpec, LpError};
use help_core::pipeline::{
    render_verdict, OrderStatus, Pipeline, PipelineConfig, PipelineError,
    SolutionCache,
};
use help_core::solver::SolveError;
use help_core::tables::{self, TableKind};

#[derive(Parser)]
#[command(name = "help-cli", version, about = "Exact HeLP-method torsion unit engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Directory holding the table documents for one group
    #[arg(long)]
    tables: PathBuf,
    /// Character selection: every admissible row, or the published subsets
    #[arg(long, default_value = "all")]
    characters: String,
    /// Cap on the number of coherent power profiles per order
    #[arg(long, default_value_t = 10_000)]
    profile_cap: u64,
    /// Cap on candidate lattice points per enumeration box
    #[arg(long, default_value_t = 100_000_000)]
    box_cap: u128,
    /// Output format: text or json
    #[arg(long, default_value = "text")]
    format: String,
    /// Cache directory for solution sets
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Worker threads for independent profiles
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate every table document in a directory
    Validate {
        #[arg(long)]
        tables: PathBuf,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Solve a single candidate order
    Solve {
        #[command(flatten)]
        run: RunArgs,
        /// Candidate unit order (must divide the exponent)
        #[arg(long)]
        order: u64,
    },
    /// Solve every divisor of the exponent
    RunAll {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Full run plus the prime-graph comparison
    Kimmerle {
        #[command(flatten)]
        run: RunArgs,
    },
    /// List the cached solution sets
    ShowCache {
        #[arg(long)]
        cache: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Validate { tables, format } => cmd_validate(&tables, &format),
        Command::Solve { run, order } => cmd_solve(&run, order),
        Command::RunAll { run } => cmd_run_all(&run),
        Command::Kimmerle { run } => cmd_kimmerle(&run),
        Command::ShowCache { cache } => cmd_show_cache(&cache),
    }
}

fn cmd_validate(dir: &Path, format: &str) -> Result<ExitCode, String> {
    let mut entries: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().map(|e| e == "json").unwrap_or(false))
        .collect();
    entries.sort();
    if entries.is_empty() {
        return Err(format!("no tables found in {}", dir.display()));
    }
    let mut all_clean = true;
    let mut results = Vec::new();
    for path in entries {
        let bytes = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        match tables::parse_table(&bytes) {
            Err(e) => {
                all_clean = false;
                results.push((path, vec![e.to_string()]));
            }
            Ok(table) => {
                let report = tables::validate_table(&table);
                if !report.is_clean() {
                    all_clean = false;
                }
                results.push((path, report.violations));
            }
        }
    }
    if format == "json" {
        let doc: Vec<serde_json::Value> = results
            .iter()
            .map(|(p, v)| serde_json::json!({ "file": p.display().to_string(), "violations": v }))
            .collect();
        println!("{}", serde_json::Value::Array(doc));
    } else {
        for (path, violations) in &results {
            if violations.is_empty() {
                println!("{}: ok", path.display());
            } else {
                println!("{}: {} violation(s)", path.display(), violations.len());
                for v in violations {
                    println!("  - {v}");
                }
            }
        }
    }
    Ok(if all_clean { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

struct Prepared {
    bundle: help_core::TableBundle,
    config: PipelineConfig,
    cache: Option<PathBuf>,
    format: String,
    warnings: Vec<String>,
}

fn prepare(run: &RunArgs) -> Result<Prepared, String> {
    let (bundle, mut warnings) =
        tables::load_bundle(&run.tables).map_err(|e| e.to_string())?;
    let selection = match run.characters.as_str() {
        "all" => CharacterSelection::All,
        "paper" => {
            let (sel, mut warns) = load_paper_selection(&run.tables, &bundle)?;
            warnings.append(&mut warns);
            sel
        }
        other => return Err(format!("unknown character selection `{other}`")),
    };
    let config = PipelineConfig {
        selection,
        profile_cap: run.profile_cap,
        box_cap: run.box_cap,
        jobs: run.jobs,
    };
    Ok(Prepared {
        bundle,
        config,
        cache: run.cache.clone(),
        format: run.format.clone(),
        warnings,
    })
}

/// Load the published per-order character subsets; missing tables produce
/// warnings and their constraints are skipped.
fn load_paper_selection(
    tables_dir: &Path,
    bundle: &help_core::TableBundle,
) -> Result<(CharacterSelection, Vec<String>), String> {
    let candidates = [
        tables_dir.join("paper_characters.json"),
        tables_dir.join("..").join("paper_characters.json"),
    ];
    let path = candidates
        .iter()
        .find(|p| p.exists())
        .ok_or("paper_characters.json not found near the tables directory")?;
    let bytes = std::fs::read(path).map_err(|e| e.to_string())?;
    let doc: serde_json::Value = serde_json::from_slice(&bytes).map_err(|e| e.to_string())?;
    let mut map: BTreeMap<u64, Vec<FormSpec>> = BTreeMap::new();
    let mut warnings = Vec::new();
    let obj = doc.as_object().ok_or("selection file must be an object")?;
    for (order, specs) in obj {
        let k: u64 = order.parse().map_err(|_| format!("bad order key `{order}`"))?;
        let mut out = Vec::new();
        for spec in specs.as_array().ok_or("selection entries must be arrays")? {
            let table = match spec.get("table").and_then(|v| v.as_str()) {
                Some("*") => TableKind::Ordinary,
                Some(p) => TableKind::Brauer(
                    p.parse().map_err(|_| format!("bad table key `{p}`"))?,
                ),
                None => return Err("selection entry is missing `table`".into()),
            };
            let chi = spec
                .get("chi")
                .and_then(|v| v.as_str())
                .ok_or("selection entry is missing `chi`")?;
            let ls: Vec<u64> = spec
                .get("l")
                .and_then(|v| v.as_array())
                .ok_or("selection entry is missing `l`")?
                .iter()
                .filter_map(|v| v.as_u64())
                .collect();
            if bundle.table(table).is_none() {
                warnings.push(format!(
                    "order {k}: skipping mu(u,{chi},{table}) - table not loaded"
                ));
                continue;
            }
            out.push(FormSpec { table, character: chi.to_string(), ls });
        }
        map.insert(k, out);
    }
    Ok((CharacterSelection::Named(map), warnings))
}

fn pipeline_error_exit(e: &PipelineError) -> ExitCode {
    match e {
        PipelineError::Solve(SolveError::Unbounded { .. }) => ExitCode::from(2),
        PipelineError::Lp(LpError::NonIntegralTrace { .. }) => ExitCode::from(1),
        _ => ExitCode::from(1),
    }
}

fn cmd_solve(run: &RunArgs, order: u64) -> Result<ExitCode, String> {
    let prepared = prepare(run)?;
    let exponent = prepared.bundle.ordinary.exponent();
    if order < 2 || exponent % order != 0 {
        return Err(format!("order {order} does not divide the exponent {exponent}"));
    }
    for w in &prepared.warnings {
        eprintln!("warning: {w}");
    }
    let cache = match &prepared.cache {
        Some(dir) => SolutionCache::with_dir(dir.clone()),
        None => SolutionCache::in_memory(),
    };
    let mut pipeline = Pipeline::new(&prepared.bundle, prepared.config.clone()).with_cache(cache);
    match pipeline.solve_order(order) {
        Err(e) => {
            eprintln!("error: {e}");
            Ok(pipeline_error_exit(&e))
        }
        Ok(verdict) => {
            let status = verdict.status;
            if prepared.format == "json" {
                let v = &pipeline.verdicts[&order];
                let doc = serde_json::json!({
                    "order": v.k,
                    "status": v.status.as_str(),
                    "profiles": v.profile_count,
                    "variables": v.variables(),
                    "tuples": v
                        .union_tuples()
                        .iter()
                        .map(|t| t.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "cap_note": v.cap_note,
                });
                println!("{doc}");
            } else {
                print!("{}", render_verdict(&pipeline.verdicts[&order]));
            }
            pipeline.write_manifest().map_err(|e| e.to_string())?;
            Ok(match status {
                OrderStatus::Capped => ExitCode::from(3),
                _ => ExitCode::SUCCESS,
            })
        }
    }
}

fn run_pipeline_to_end(prepared: &Prepared) -> Result<(Pipeline<'_>, ExitCode), String> {
    for w in &prepared.warnings {
        eprintln!("warning: {w}");
    }
    let cache = match &prepared.cache {
        Some(dir) => SolutionCache::with_dir(dir.clone()),
        None => SolutionCache::in_memory(),
    };
    let mut pipeline = Pipeline::new(&prepared.bundle, prepared.config.clone()).with_cache(cache);
    if let Err(e) = pipeline.run_all() {
        eprintln!("error: {e}");
        return Ok((pipeline, pipeline_error_exit(&e)));
    }
    pipeline.write_manifest().map_err(|e| e.to_string())?;
    let any_capped = pipeline
        .verdicts
        .values()
        .any(|v| v.status == OrderStatus::Capped);
    let code = if any_capped { ExitCode::from(3) } else { ExitCode::SUCCESS };
    Ok((pipeline, code))
}

fn cmd_run_all(run: &RunArgs) -> Result<ExitCode, String> {
    let prepared = prepare(run)?;
    let (pipeline, code) = run_pipeline_to_end(&prepared)?;
    if prepared.format == "json" {
        println!("{}", pipeline.report_json());
    } else {
        print!("{}", pipeline.report_text());
    }
    Ok(code)
}

fn cmd_kimmerle(run: &RunArgs) -> Result<ExitCode, String> {
    let prepared = prepare(run)?;
    let (pipeline, code) = run_pipeline_to_end(&prepared)?;
    if code == ExitCode::from(2) || code == ExitCode::from(1) {
        return Ok(code);
    }
    let kr = pipeline.kimmerle_check();
    if prepared.format == "json" {
        println!("{}", pipeline.report_json());
    } else {
        print!("{}", pipeline.report_text());
    }
    Ok(if kr.equal { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_show_cache(dir: &Path) -> Result<ExitCode, String> {
    if !dir.exists() {
        return Err(format!("cache directory {} does not exist", dir.display()));
    }
    let mut orders: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_dir())
        .collect();
    orders.sort();
    for order_dir in orders {
        let mut files: Vec<PathBuf> = std::fs::read_dir(&order_dir)
            .map_err(|e| e.to_string())?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().map(|e| e == "json").unwrap_or(false))
            .collect();
        files.sort();
        for f in files {
            let bytes = std::fs::read(&f).map_err(|e| e.to_string())?;
            let doc: serde_json::Value =
                serde_json::from_slice(&bytes).map_err(|e| e.to_string())?;
            let order = doc.get("order").and_then(|v| v.as_u64()).unwrap_or(0);
            let digest = doc
                .get("profile_digest")
                .and_then(|v| v.as_str())
                .unwrap_or("?");
            let tuples = doc
                .get("tuples")
                .and_then(|v| v.as_array())
                .map(|a| a.len())
                .unwrap_or(0);
            println!("order {order} profile {digest}: {tuples} tuple(s)");
        }
    }
    if dir.join("run_manifest.json").exists() {
        println!("run_manifest.json present");
    }
    Ok(ExitCode::SUCCESS)
}
