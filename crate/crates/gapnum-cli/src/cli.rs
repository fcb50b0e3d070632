//! Command definitions and dispatch.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gapnum::reference::{run_checks, CheckLevel, Workspace};
use gapnum::{Density, Error, FringeDigraph, OracleConfig, RunLength, Solver, MAX_WIDTH};

use crate::render;

/// Exit codes: 0 success, 1 failed checks or domain errors, 2 usage errors
/// (from clap), 3 capacity or budget limits.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Parser)]
#[command(
    name = "gapnum",
    about = "Exact gap numbers for T-tetromino tilings of rectangles",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Compute the gap number of a rectangle with a witness tiling.
    Compute(ComputeArgs),
    /// Build the fringe digraph of a strip width; print stats or export it.
    Digraph(DigraphArgs),
    /// Density lower bound for a width from negative-cycle analysis.
    Bound(WidthArgs),
    /// Longest monomino-free column run for a width.
    Run(WidthArgs),
    /// Search for a periodic (cylinder) tiling with few monominoes.
    Cylinder(CylinderArgs),
    /// Exhaustive brute-force gap number for small rectangles.
    Oracle(OracleArgs),
    /// Re-verify the published reference values this toolkit reproduces.
    #[command(name = "verify-paper")]
    VerifyPaper(VerifyArgs),
}

#[derive(Args)]
pub struct ComputeArgs {
    #[arg(long)]
    pub width: usize,
    #[arg(long)]
    pub length: usize,
    /// Write the witness tiling here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
    pub format: RenderFormat,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

#[derive(Args)]
pub struct DigraphArgs {
    #[arg(long)]
    pub width: usize,
    /// Print node/edge statistics.
    #[arg(long, conflicts_with = "export")]
    pub stats: bool,
    /// Export the digraph as JSON to a path (`-` for stdout).
    #[arg(long)]
    pub export: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct WidthArgs {
    #[arg(long)]
    pub width: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct CylinderArgs {
    #[arg(long)]
    pub width: usize,
    #[arg(long)]
    pub period: usize,
    #[arg(long = "max-monominoes")]
    pub max_monominoes: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub width: usize,
    #[arg(long)]
    pub length: usize,
    /// Largest accepted area in cells (hard ceiling 64).
    #[arg(long, default_value_t = 64)]
    pub area_cap: usize,
    /// Search-node budget; exhausting it is an error, not an answer.
    #[arg(long, default_value_t = 20_000_000_000)]
    pub node_budget: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
    pub level: LevelArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Fast,
    Full,
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::CapacityExceeded { .. } | Error::BudgetExhausted { .. } => EXIT_CAPACITY,
        _ => EXIT_FAIL,
    }
}

fn fail(out: &mut impl Write, err: &Error) -> i32 {
    let _ = writeln!(out, "error: {err}");
    exit_code_for(err)
}

pub fn dispatch(cli: Cli, out: &mut impl Write) -> i32 {
    match cli.command {
        Command::Compute(args) => cmd_compute(args, out),
        Command::Digraph(args) => cmd_digraph(args, out),
        Command::Bound(args) => cmd_bound(args, out),
        Command::Run(args) => cmd_run(args, out),
        Command::Cylinder(args) => cmd_cylinder(args, out),
        Command::Oracle(args) => cmd_oracle(args, out),
        Command::VerifyPaper(args) => cmd_verify(args, out),
    }
}

#[derive(Serialize)]
struct ComputeJson<'a> {
    width: usize,
    length: usize,
    gap_number: u64,
    lower_bound: u64,
    method: gapnum::SolveMethod,
    transposed: bool,
    witness: &'a gapnum::Tiling,
}

fn cmd_compute(args: ComputeArgs, out: &mut impl Write) -> i32 {
    // The gap number is symmetric; solve over the smaller side when the
    // requested width exceeds the strip cap.
    let transposed = args.width > MAX_WIDTH && args.length <= MAX_WIDTH;
    let (w, n) = if transposed {
        (args.length, args.width)
    } else {
        (args.width, args.length)
    };
    let result = (|| {
        let g = FringeDigraph::build(w)?;
        let solver = Solver::new(&g);
        solver.gap_number(n)
    })();
    let result = match result {
        Ok(r) => r,
        Err(e) => return fail(out, &e),
    };

    let rendered = match args.format {
        RenderFormat::Ascii => render::render_ascii(&result.witness),
        RenderFormat::Svg => render::render_svg(&result.witness),
    };
    if let Some(path) = &args.output {
        if let Err(e) = std::fs::write(path, &rendered) {
            let _ = writeln!(out, "error: cannot write {}: {e}", path.display());
            return EXIT_FAIL;
        }
    }

    if args.json {
        let doc = ComputeJson {
            width: args.width,
            length: args.length,
            gap_number: result.gap_number,
            lower_bound: result.lower_bound_used,
            method: result.method,
            transposed,
            witness: &result.witness,
        };
        let _ = writeln!(out, "{}", serde_json::to_string(&doc).expect("serializable"));
        return EXIT_OK;
    }

    let _ = writeln!(
        out,
        "M({}, {}) = {}",
        args.width, args.length, result.gap_number
    );
    if transposed {
        let _ = writeln!(out, "solved as the transposed {w}x{n} strip");
    }
    let _ = writeln!(
        out,
        "density lower bound: {} monomino(es); witness uses {} tiles ({} monominoes)",
        result.lower_bound_used,
        result.witness.placements.len(),
        result.witness.monomino_count
    );
    match &args.output {
        Some(path) => {
            let _ = writeln!(out, "witness written to {}", path.display());
        }
        None => {
            let _ = write!(out, "{rendered}");
        }
    }
    EXIT_OK
}

fn cmd_digraph(args: DigraphArgs, out: &mut impl Write) -> i32 {
    let g = match FringeDigraph::build(args.width) {
        Ok(g) => g,
        Err(e) => return fail(out, &e),
    };
    if let Some(path) = &args.export {
        let result = if path.as_os_str() == "-" {
            g.export(out)
        } else {
            std::fs::File::create(path)
                .map(std::io::BufWriter::new)
                .and_then(|mut f| {
                    g.export(&mut f)?;
                    f.flush()
                })
        };
        if let Err(e) = result {
            let _ = writeln!(out, "error: export failed: {e}");
            return EXIT_FAIL;
        }
        if path.as_os_str() == "-" {
            let _ = writeln!(out);
        } else {
            let _ = writeln!(out, "digraph written to {}", path.display());
        }
        return EXIT_OK;
    }
    let stats = g.stats();
    if args.json {
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string(&stats).expect("serializable")
        );
    } else {
        let _ = writeln!(out, "width        {:>10}", args.width);
        let _ = writeln!(out, "nodes        {:>10}", stats.node_count);
        let _ = writeln!(out, "T-edges      {:>10}", stats.t_edge_count);
        let _ = writeln!(out, "M-edges      {:>10}", stats.m_edge_count);
        let _ = writeln!(out, "max degree   {:>10}", stats.max_out_degree);
    }
    EXIT_OK
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum BoundJson {
    Finite {
        width: usize,
        minimal_m: u64,
        columns_per_monomino: String,
        numerator: u64,
        denominator: u64,
    },
    Unbounded {
        width: usize,
    },
}

fn cmd_bound(args: WidthArgs, out: &mut impl Write) -> i32 {
    let g = match FringeDigraph::build(args.width) {
        Ok(g) => g,
        Err(e) => return fail(out, &e),
    };
    let solver = Solver::new(&g);
    match solver.density() {
        Density::Finite(b) => {
            if args.json {
                let doc = BoundJson::Finite {
                    width: b.width,
                    minimal_m: b.minimal_m,
                    columns_per_monomino: b.columns_per_monomino.to_string(),
                    numerator: b.columns_per_monomino.num,
                    denominator: b.columns_per_monomino.den,
                };
                let _ = writeln!(out, "{}", serde_json::to_string(&doc).expect("serializable"));
            } else {
                let _ = writeln!(
                    out,
                    "width {}: minimal M-edge weight m = {} (T-edges weigh -1)",
                    b.width, b.minimal_m
                );
                let _ = writeln!(
                    out,
                    "every tiling needs at least one monomino per {} columns ((4m+1)/w = {}/{})",
                    b.columns_per_monomino,
                    4 * b.minimal_m + 1,
                    b.width
                );
            }
        }
        Density::Unbounded => {
            if args.json {
                let doc = BoundJson::Unbounded { width: args.width };
                let _ = writeln!(out, "{}", serde_json::to_string(&doc).expect("serializable"));
            } else {
                let _ = writeln!(
                    out,
                    "width {}: unbounded (a monomino-free cycle exists; no density bound)",
                    args.width
                );
            }
        }
    }
    EXIT_OK
}

#[derive(Serialize)]
struct RunJson {
    width: usize,
    unbounded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_gapless_columns: Option<u64>,
    witness_edges: usize,
}

fn cmd_run(args: WidthArgs, out: &mut impl Write) -> i32 {
    let g = match FringeDigraph::build(args.width) {
        Ok(g) => g,
        Err(e) => return fail(out, &e),
    };
    let run = Solver::new(&g).max_gapless_run();
    match run.max_gapless_columns {
        RunLength::Finite(v) => {
            if args.json {
                let doc = RunJson {
                    width: args.width,
                    unbounded: false,
                    max_gapless_columns: Some(v),
                    witness_edges: run.witness_path.len(),
                };
                let _ = writeln!(out, "{}", serde_json::to_string(&doc).expect("serializable"));
            } else {
                let _ = writeln!(
                    out,
                    "width {}: at most {v} consecutive columns can be tiled without a monomino",
                    args.width
                );
                let _ = writeln!(out, "witness path: {} placements", run.witness_path.len());
            }
        }
        RunLength::Unbounded => {
            if args.json {
                let doc = RunJson {
                    width: args.width,
                    unbounded: true,
                    max_gapless_columns: None,
                    witness_edges: run.witness_path.len(),
                };
                let _ = writeln!(out, "{}", serde_json::to_string(&doc).expect("serializable"));
            } else {
                let _ = writeln!(
                    out,
                    "width {}: unbounded (a monomino-free cycle of {} placements exists)",
                    args.width,
                    run.witness_path.len()
                );
            }
        }
    }
    EXIT_OK
}

#[derive(Serialize)]
struct CylinderJson<'a> {
    width: usize,
    period: usize,
    max_monominoes: usize,
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a gapnum::CylinderWitness>,
}

fn cmd_cylinder(args: CylinderArgs, out: &mut impl Write) -> i32 {
    let g = match FringeDigraph::build(args.width) {
        Ok(g) => g,
        Err(e) => return fail(out, &e),
    };
    let solver = Solver::new(&g);
    match solver.cylinder_search(args.period, args.max_monominoes) {
        Ok(found) => {
            if args.json {
                let doc = CylinderJson {
                    width: args.width,
                    period: args.period,
                    max_monominoes: args.max_monominoes,
                    found: found.is_some(),
                    witness: found.as_ref(),
                };
                let _ = writeln!(out, "{}", serde_json::to_string(&doc).expect("serializable"));
            } else {
                match found {
                    Some(w) => {
                        let _ = writeln!(
                            out,
                            "found a {}x{} cylinder with {} monomino(es): {} placements from node {}",
                            args.width,
                            w.period,
                            w.monominoes,
                            w.cycle.len(),
                            w.start_node
                        );
                    }
                    None => {
                        let _ = writeln!(
                            out,
                            "no {}x{} cylinder with at most {} monomino(es) exists (exhaustive)",
                            args.width, args.period, args.max_monominoes
                        );
                    }
                }
            }
            EXIT_OK
        }
        Err(e) => fail(out, &e),
    }
}

#[derive(Serialize)]
struct OracleJson {
    width: usize,
    length: usize,
    gap_number: u64,
    method: &'static str,
}

fn cmd_oracle(args: OracleArgs, out: &mut impl Write) -> i32 {
    let cfg = OracleConfig {
        area_cap: args.area_cap,
        node_budget: args.node_budget,
    };
    match gapnum::brute_gap_number(args.width, args.length, &cfg) {
        Ok(v) => {
            if args.json {
                let doc = OracleJson {
                    width: args.width,
                    length: args.length,
                    gap_number: v,
                    method: "oracle",
                };
                let _ = writeln!(out, "{}", serde_json::to_string(&doc).expect("serializable"));
            } else {
                let _ = writeln!(
                    out,
                    "M({}, {}) = {v} (exhaustive search)",
                    args.width, args.length
                );
            }
            EXIT_OK
        }
        Err(e) => fail(out, &e),
    }
}

fn cmd_verify(args: VerifyArgs, out: &mut impl Write) -> i32 {
    let level = match args.level {
        LevelArg::Fast => CheckLevel::Fast,
        LevelArg::Full => CheckLevel::Full,
    };
    let ws = Workspace::new();
    let outcomes = run_checks(&ws, level);
    let failed: Vec<&str> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id.as_str())
        .collect();
    if args.json {
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string(&outcomes).expect("serializable")
        );
    } else {
        for o in &outcomes {
            let mark = if o.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "[{mark}] {}: {} ({})", o.id, o.description, o.detail);
        }
        let _ = writeln!(
            out,
            "{} checks, {} failed",
            outcomes.len(),
            failed.len()
        );
        if !failed.is_empty() {
            let _ = writeln!(out, "failed: {}", failed.join(", "));
        }
    }
    if failed.is_empty() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}
