//! `flowtab` command-line front end.
//!
//! Exit codes: 0 completed, 1 stranded, 2 supply exceeds what the network can
//! carry, 3 unreadable instance, 4 usage or I/O error.

mod bench;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use flowtab::io::{parse_instance, write_instance, write_trace};
use flowtab::{
    fixtures, generate, max_feasible_flow, run_heuristic, solve_exact, verify_solution, Format,
    GapReport, GenConfig, Instance, Solution, SolveStatus, SupplyMode,
};

const EXIT_COMPLETED: u8 = 0;
const EXIT_STRANDED: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_USAGE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "flowtab",
    version,
    about = "Tableau summation heuristic and exact solver for min-cost flow"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance with the summation heuristic
    Solve {
        #[command(flatten)]
        input: InputArgs,
        /// Write the dispatch trace as CSV
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Solve an instance exactly (successive shortest paths)
    Exact {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Compare the heuristic against the exact optimum
    Verify {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Generate a seeded random instance
    Gen {
        #[arg(long, default_value_t = 50)]
        nodes: usize,
        #[command(flatten)]
        gen: GenArgs,
        /// Fixed supply instead of the maximum flow
        #[arg(long)]
        supply: Option<u64>,
        #[arg(long, default_value = "matrix")]
        format: Format,
        /// Output file; standard output when absent
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sweep generated instances over sizes and seeds, CSV to standard output
    Bench(bench::BenchArgs),
    /// Solve the built-in worked examples and matrices, CSV to standard output
    Fixtures {
        /// Also write every fixture as a matrix file (and DIMACS) into this directory
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    path: PathBuf,
    /// Input format; inferred from the extension when absent
    #[arg(long)]
    format: Option<Format>,
    /// Override the instance supply
    #[arg(long)]
    supply: Option<i64>,
}

#[derive(Args, Clone)]
pub(crate) struct GenArgs {
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    #[arg(long, default_value = "1:15", value_parser = parse_range)]
    cap_range: (u64, u64),
    #[arg(long, default_value = "1:15", value_parser = parse_range)]
    cost_range: (u64, u64),
    /// Seed (the first seed of a bench sweep)
    #[arg(long, default_value_t = 0)]
    pub(crate) seed: u64,
}

impl GenArgs {
    pub(crate) fn config(&self, nodes: usize, seed: u64, supply: SupplyMode) -> GenConfig {
        GenConfig {
            node_count: nodes,
            density: self.density,
            capacity_range: self.cap_range,
            cost_range: self.cost_range,
            seed,
            supply_mode: supply,
        }
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got `{s}`"))?;
    let lo = lo
        .trim()
        .parse()
        .map_err(|e| format!("bad lower bound: {e}"))?;
    let hi = hi
        .trim()
        .parse()
        .map_err(|e| format!("bad upper bound: {e}"))?;
    Ok((lo, hi))
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

fn load(input: &InputArgs) -> Result<Instance, Failure> {
    let text = fs::read_to_string(&input.path)
        .map_err(|e| Failure::usage(format!("{}: {e}", input.path.display())))?;
    let format = input
        .format
        .unwrap_or_else(|| Format::from_path(&input.path));
    let inst = parse_instance(&text, format).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{}: {e}", input.path.display()),
    })?;
    match input.supply {
        Some(s) => inst
            .with_supply(s)
            .map_err(|e| Failure::usage(e.to_string())),
        None => Ok(inst),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn report(status: &str, inst: &Instance, sol: &Solution, dispatches: Option<usize>) -> String {
    let mut out = String::new();
    writeln!(out, "status {status}").unwrap();
    writeln!(out, "supply {}", inst.supply()).unwrap();
    writeln!(out, "shipped {}", sol.shipped).unwrap();
    writeln!(out, "cost {}", sol.total_cost).unwrap();
    if let Some(d) = dispatches {
        writeln!(out, "dispatches {d}").unwrap();
    }
    out
}

fn status_code(status: SolveStatus) -> u8 {
    match status {
        SolveStatus::Completed => EXIT_COMPLETED,
        SolveStatus::Stranded => EXIT_STRANDED,
        SolveStatus::Infeasible => EXIT_INFEASIBLE,
    }
}

fn cmd_solve(input: &InputArgs, trace: Option<&Path>) -> Result<u8, Failure> {
    let inst = load(input)?;
    let sol = run_heuristic(&inst);
    // a supply the network cannot carry is reported as such even if the heuristic strands first
    let status = if sol.status != SolveStatus::Completed && max_feasible_flow(&inst) < inst.supply()
    {
        SolveStatus::Infeasible
    } else {
        sol.status
    };
    print!(
        "{}",
        report(status.as_str(), &inst, &sol, Some(sol.trace.len()))
    );
    if let Some(path) = trace {
        write_file(path, &write_trace(&sol))?;
    }
    Ok(status_code(status))
}

fn cmd_exact(input: &InputArgs) -> Result<u8, Failure> {
    let inst = load(input)?;
    let sol = solve_exact(&inst);
    print!("{}", report(sol.status.as_str(), &inst, &sol, None));
    Ok(status_code(sol.status))
}

pub(crate) fn format_ratio(report: &GapReport<i64>) -> (String, String) {
    match report.relative_gap {
        Some(r) => (
            r.to_string(),
            format!("{:.6}", *r.numer() as f64 / *r.denom() as f64),
        ),
        None => (String::new(), String::new()),
    }
}

fn cmd_verify(input: &InputArgs) -> Result<u8, Failure> {
    let inst = load(input)?;
    let heur = run_heuristic(&inst);
    let exact = solve_exact(&inst);
    let report = GapReport::from_solutions(&heur, &exact);
    let mut out = String::new();
    writeln!(out, "heuristic_status {}", report.heuristic_status).unwrap();
    writeln!(out, "heuristic_shipped {}", report.heuristic_shipped).unwrap();
    writeln!(out, "heuristic_cost {}", report.heuristic_cost).unwrap();
    writeln!(out, "exact_status {}", report.exact_status).unwrap();
    writeln!(out, "exact_shipped {}", report.exact_shipped).unwrap();
    writeln!(out, "exact_cost {}", report.exact_cost).unwrap();
    if let Some(g) = report.absolute_gap {
        writeln!(out, "absolute_gap {g}").unwrap();
        let (ratio, decimal) = format_ratio(&report);
        if !ratio.is_empty() {
            writeln!(out, "relative_gap {ratio}").unwrap();
            writeln!(out, "relative_gap_decimal {decimal}").unwrap();
        }
    }
    for problem in verify_solution(&inst, &heur) {
        eprintln!("heuristic solution: {problem}");
    }
    for problem in verify_solution(&inst, &exact) {
        eprintln!("exact solution: {problem}");
    }
    print!("{out}");
    Ok(EXIT_COMPLETED)
}

fn cmd_gen(
    nodes: usize,
    args: &GenArgs,
    supply: Option<u64>,
    format: Format,
    output: Option<&Path>,
) -> Result<u8, Failure> {
    let mode = supply.map_or(SupplyMode::MaxFlow, SupplyMode::Fixed);
    let config = args.config(nodes, args.seed, mode);
    let inst: Instance = generate(&config).map_err(|e| Failure::usage(e.to_string()))?;
    let mut echo = String::new();
    writeln!(echo, "nodes {}", config.node_count).unwrap();
    writeln!(echo, "density {}", config.density).unwrap();
    writeln!(
        echo,
        "cap_range {}:{}",
        config.capacity_range.0, config.capacity_range.1
    )
    .unwrap();
    writeln!(
        echo,
        "cost_range {}:{}",
        config.cost_range.0, config.cost_range.1
    )
    .unwrap();
    writeln!(echo, "seed {}", config.seed).unwrap();
    match mode {
        SupplyMode::MaxFlow => writeln!(echo, "supply maxflow {}", inst.supply()).unwrap(),
        SupplyMode::Fixed(k) => writeln!(echo, "supply fixed {k}").unwrap(),
    }
    writeln!(echo, "arcs {}", inst.arcs().len()).unwrap();
    let text = write_instance(&inst, format);
    match output {
        Some(path) => {
            write_file(path, &text)?;
            print!("{echo}");
        }
        None => {
            eprint!("{echo}");
            print!("{text}");
        }
    }
    Ok(EXIT_COMPLETED)
}

fn cmd_fixtures(export: Option<&Path>) -> Result<u8, Failure> {
    println!("name,nodes,supply,reported_cost,heuristic_status,heuristic_shipped,heuristic_cost,exact_status,exact_cost,absolute_gap");
    for f in fixtures::builtin_fixtures() {
        let heur = run_heuristic(&f.instance);
        let exact = solve_exact(&f.instance);
        let report = GapReport::from_solutions(&heur, &exact);
        println!(
            "{},{},{},{},{},{},{},{},{},{}",
            f.name,
            f.instance.node_count(),
            f.instance.supply(),
            f.reported_cost,
            heur.status,
            heur.shipped,
            heur.total_cost,
            exact.status,
            exact.total_cost,
            report
                .absolute_gap
                .map(|g| g.to_string())
                .unwrap_or_default()
        );
        if let Some(dir) = export {
            fs::create_dir_all(dir)
                .map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
            write_file(
                &dir.join(format!("{}.matrix", f.name)),
                &write_instance(&f.instance, Format::Matrix),
            )?;
            write_file(
                &dir.join(format!("{}.dimacs", f.name)),
                &write_instance(&f.instance, Format::Dimacs),
            )?;
        }
    }
    Ok(EXIT_COMPLETED)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_COMPLETED
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Solve { input, trace } => cmd_solve(input, trace.as_deref()),
        Command::Exact { input } => cmd_exact(input),
        Command::Verify { input } => cmd_verify(input),
        Command::Gen {
            nodes,
            gen,
            supply,
            format,
            output,
        } => cmd_gen(*nodes, gen, *supply, *format, output.as_deref()),
        Command::Bench(args) => bench::run(args).map_err(Failure::usage),
        Command::Fixtures { export } => cmd_fixtures(export.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
