use std::fmt::Write as _;
use std::time::Instant;

use clap::Args;
use flowtab::{generate, run_heuristic, solve_exact, GapReport, Instance, SolveStatus, SupplyMode};
use rayon::prelude::*;

use crate::{format_ratio, GenArgs};

#[derive(Args)]
pub(crate) struct BenchArgs {
    /// Comma-separated node counts
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Seeds per size, counting up from --seed
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    /// Largest size that is also solved exactly
    #[arg(long, default_value_t = 300)]
    exact_cutoff: usize,
    /// Append wall-clock columns (these vary between runs)
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    gen: GenArgs,
}

struct Row {
    size: usize,
    seed: u64,
    arcs: usize,
    supply: i64,
    heuristic_status: SolveStatus,
    heuristic_shipped: i64,
    heuristic_cost: i64,
    dispatches: usize,
    exact: Option<GapReport<i64>>,
    heuristic_ms: f64,
    exact_ms: Option<f64>,
}

fn cell(args: &BenchArgs, size: usize, seed: u64) -> Result<Row, String> {
    let config = args.gen.config(size, seed, SupplyMode::MaxFlow);
    let inst: Instance = generate(&config).map_err(|e| e.to_string())?;
    let t = Instant::now();
    let heur = run_heuristic(&inst);
    let heuristic_ms = t.elapsed().as_secs_f64() * 1e3;
    let (exact, exact_ms) = if size <= args.exact_cutoff {
        let t = Instant::now();
        let sol = solve_exact(&inst);
        let ms = t.elapsed().as_secs_f64() * 1e3;
        (Some(GapReport::from_solutions(&heur, &sol)), Some(ms))
    } else {
        (None, None)
    };
    Ok(Row {
        size,
        seed,
        arcs: inst.arcs().len(),
        supply: inst.supply(),
        heuristic_status: heur.status,
        heuristic_shipped: heur.shipped,
        heuristic_cost: heur.total_cost,
        dispatches: heur.trace.len(),
        exact,
        heuristic_ms,
        exact_ms,
    })
}

pub(crate) const HEADER: &str = "size,seed,arcs,supply,heuristic_status,heuristic_shipped,heuristic_cost,dispatches,exact_status,exact_cost,absolute_gap,relative_gap";

fn render(rows: &[Row], timings: bool) -> String {
    let mut out = String::from(HEADER);
    if timings {
        out.push_str(",wall_heuristic_ms,wall_exact_ms");
    }
    out.push('\n');
    for r in rows {
        write!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.size,
            r.seed,
            r.arcs,
            r.supply,
            r.heuristic_status,
            r.heuristic_shipped,
            r.heuristic_cost,
            r.dispatches
        )
        .unwrap();
        match &r.exact {
            Some(g) => {
                let (_, decimal) = format_ratio(g);
                let abs = g.absolute_gap.map(|v| v.to_string()).unwrap_or_default();
                write!(
                    out,
                    ",{},{},{},{}",
                    g.exact_status, g.exact_cost, abs, decimal
                )
                .unwrap();
            }
            None => out.push_str(",,,,"),
        }
        if timings {
            write!(out, ",{:.3},", r.heuristic_ms).unwrap();
            if let Some(ms) = r.exact_ms {
                write!(out, "{ms:.3}").unwrap();
            }
        }
        out.push('\n');
    }
    out
}

pub(crate) fn run(args: &BenchArgs) -> Result<u8, String> {
    let cells: Vec<(usize, u64)> = args
        .sizes
        .iter()
        .flat_map(|&size| (0..args.seeds).map(move |k| (size, args.gen.seed + k)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(size, seed)| cell(args, size, seed))
        .collect::<Result<Vec<_>, _>>()?;
    print!("{}", render(&rows, args.timings));
    Ok(0)
}
