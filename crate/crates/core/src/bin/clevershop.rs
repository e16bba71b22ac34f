//! Command-line front end.
//!
//! Exit codes: 0 solved (and within budget), 1 over budget, 2 bad input or
//! unmet solver precondition, 3 resource cap exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use clevershop::io::bench::run_bench;
use clevershop::io::sources::{parse_cnf, parse_graph, parse_weights, parse_x3c};
use clevershop::io::{
    check_solution, parse_instance, serialize_instance, serialize_solution, CheckError,
};
use clevershop::model::{Instance, Money};
use clevershop::reductions::random::{random_instance, RandomParams};
use clevershop::reductions::x3c::{x3c_or_composition, X3cOptions, DEFAULT_T};
use clevershop::reductions::{
    from_bin_packing, from_max3sat, from_partition, from_perfect_code, CnfFormula,
};
use clevershop::solve::{solve, Algorithm, Limits};

#[derive(Parser)]
#[command(
    name = "clevershop",
    version,
    about = "Buy every book at the lowest total price after shop discounts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_algorithm)]
        algo: Algorithm,
        /// Overrides the instance's BUDGET line.
        #[arg(long)]
        budget: Option<Money>,
        /// Where to write the solution file; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Accepted for script compatibility; every solver is deterministic.
        #[arg(long)]
        seedless: bool,
    },
    /// Write an instance built from a source problem.
    Generate(Box<GenerateArgs>),
    /// Verify a solution file against an instance.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long)]
        budget: Option<Money>,
    },
    /// Run algorithms over a directory of instances and write a JSON report.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        /// Comma-separated algorithm names.
        #[arg(long, value_delimiter = ',', value_parser = parse_algorithm)]
        algos: Vec<Algorithm>,
        /// Seconds allowed per (instance, algorithm) run.
        #[arg(long)]
        timeout: f64,
        #[arg(long)]
        report: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Partition,
    Binpacking,
    Perfectcode,
    X3c,
    Max3sat,
    Random,
}

#[derive(Args)]
struct GenerateArgs {
    source: Source,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Item weights, comma-separated.
    #[arg(long)]
    weights: Option<String>,
    #[arg(long)]
    bins: Option<usize>,
    #[arg(long)]
    capacity: Option<Money>,
    /// DIMACS edge file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Perfect code size.
    #[arg(long)]
    k: Option<usize>,
    /// DIMACS CNF file; without it a random formula on `--vars` variables.
    #[arg(long)]
    cnf: Option<PathBuf>,
    #[arg(long)]
    vars: Option<usize>,
    /// Exact-cover component file, repeatable.
    #[arg(long)]
    x3c: Vec<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_T)]
    t_const: Money,
    /// Skip the every-item-in-three-sets check.
    #[arg(long)]
    any_occurrences: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    max_price: Option<Money>,
    #[arg(long)]
    max_discount: Option<Money>,
    #[arg(long)]
    degree_cap: Option<usize>,
    #[arg(long)]
    density: Option<f64>,
    #[arg(long)]
    unit_prices: bool,
    #[arg(long)]
    fixed_prices: bool,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

/// An error carrying its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn input(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: 2,
            error: error.into(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Self::input(error)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve {
            input,
            algo,
            budget,
            output,
            seedless: _,
        } => run_solve(&input, algo, budget, output.as_deref()),
        Command::Generate(args) => run_generate(&args),
        Command::Check {
            input,
            solution,
            budget,
        } => run_check(&input, &solution, budget),
        Command::Bench {
            dir,
            algos,
            timeout,
            report,
        } => run_bench_command(&dir, &algos, timeout, &report),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::input)
}

fn verdict(within_budget: Option<bool>) -> u8 {
    match within_budget {
        Some(false) => 1,
        _ => 0,
    }
}

fn run_solve(
    input: &Path,
    algo: Algorithm,
    budget: Option<Money>,
    output: Option<&Path>,
) -> Result<u8, Failure> {
    let instance = read_instance(input)?;
    let out = solve(&instance, algo, budget, &Limits::default()).map_err(|e| Failure {
        code: if e.is_resource_limit() { 3 } else { 2 },
        error: e.into(),
    })?;
    let text = serialize_solution(&out.result);
    match output {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    let r = &out.result;
    let budget_note = match (out.within_budget, budget.or(instance.budget())) {
        (Some(ok), Some(k)) => format!(", budget {k} {}", if ok { "met" } else { "exceeded" }),
        _ => String::new(),
    };
    eprintln!(
        "{algo}: cost {} discount {}{budget_note}",
        r.total_cost, r.total_discount
    );
    Ok(verdict(out.within_budget))
}

fn run_check(input: &Path, solution: &Path, budget: Option<Money>) -> Result<u8, Failure> {
    let instance = read_instance(input)?;
    let text = std::fs::read_to_string(solution)
        .with_context(|| format!("reading {}", solution.display()))?;
    let budget = budget.or(instance.budget());
    match check_solution(&instance, &text, budget) {
        Ok(report) => {
            let r = &report.result;
            print!(
                "verified: cost {} discount {}",
                r.total_cost, r.total_discount
            );
            match (report.within_budget, budget) {
                (Some(ok), Some(k)) => {
                    println!(", {} budget {k}", if ok { "within" } else { "over" })
                }
                _ => println!(),
            }
            Ok(verdict(report.within_budget))
        }
        Err(e @ CheckError::DeclaredCostMismatch { .. }) => Err(Failure::input(e)),
        Err(e) => Err(Failure::input(
            anyhow::Error::new(e).context(format!("checking {}", solution.display())),
        )),
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::input(anyhow::anyhow!("this source needs --{flag}")))
}

fn read_source<T, E: std::error::Error + Send + Sync + 'static>(
    path: &Path,
    parse: impl Fn(&str) -> Result<T, E>,
) -> Result<T, Failure> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::input)
}

fn run_generate(args: &GenerateArgs) -> Result<u8, Failure> {
    let source_name = args
        .source
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let generated = match args.source {
        Source::Partition => {
            let w = parse_weights(&require(args.weights.clone(), "weights")?)
                .map_err(Failure::input)?;
            from_partition(&w)
        }
        Source::Binpacking => {
            let w = parse_weights(&require(args.weights.clone(), "weights")?)
                .map_err(Failure::input)?;
            from_bin_packing(
                &w,
                require(args.bins, "bins")?,
                require(args.capacity, "capacity")?,
            )
        }
        Source::Perfectcode => {
            let graph = read_source(&require(args.graph.clone(), "graph")?, parse_graph)?;
            from_perfect_code(&graph, require(args.k, "k")?)
        }
        Source::X3c => {
            if args.x3c.is_empty() {
                return Err(Failure::input(anyhow::anyhow!(
                    "this source needs at least one --x3c"
                )));
            }
            let parts = args
                .x3c
                .iter()
                .map(|p| read_source(p, parse_x3c))
                .collect::<Result<Vec<_>, _>>()?;
            let options = X3cOptions {
                t_const: args.t_const,
                require_exactly_three: !args.any_occurrences,
            };
            x3c_or_composition(&parts, options)
        }
        Source::Max3sat => {
            let formula = match &args.cnf {
                Some(path) => read_source(path, parse_cnf)?,
                None => CnfFormula::random_exactly_twice(require(args.vars, "vars")?, args.seed)
                    .map_err(Failure::input)?,
            };
            from_max3sat(&formula)
        }
        Source::Random => {
            let defaults = RandomParams::default();
            let params = RandomParams {
                n: require(args.n, "n")?,
                m: require(args.m, "m")?,
                max_price: args.max_price.unwrap_or(defaults.max_price),
                shop_degree_cap: args.degree_cap,
                unit_prices: args.unit_prices,
                fixed_prices: args.fixed_prices,
                max_discount: args.max_discount.unwrap_or(defaults.max_discount),
                density: args.density.unwrap_or(defaults.density),
            };
            let instance = random_instance(&params, args.seed).map_err(Failure::input)?;
            let header = format!("# clevershop generate random, seed {}\n", args.seed);
            write_output(&args.output, &(header + &serialize_instance(&instance)))?;
            return Ok(0);
        }
    }
    .map_err(Failure::input)?;

    let mut text = format!("# clevershop generate {source_name}\n");
    for line in generated.header_lines() {
        text.push_str(&format!("# {line}\n"));
    }
    text.push_str(&serialize_instance(&generated.instance));
    write_output(&args.output, &text)?;
    Ok(0)
}

fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::input)
}

fn run_bench_command(
    dir: &Path,
    algos: &[Algorithm],
    timeout: f64,
    report: &Path,
) -> Result<u8, Failure> {
    if algos.is_empty() {
        return Err(Failure::input(anyhow::anyhow!("--algos is empty")));
    }
    let limit = Duration::try_from_secs_f64(timeout)
        .map_err(|e| Failure::input(anyhow::anyhow!("--timeout: {e}")))?;
    let result =
        run_bench(dir, algos, limit).with_context(|| format!("reading {}", dir.display()))?;
    let json = serde_json::to_string_pretty(&result).context("encoding report")?;
    write_output(report, &(json + "\n"))?;
    let timeouts = result
        .entries
        .iter()
        .filter(|e| e.status == clevershop::io::bench::Status::Timeout)
        .count();
    eprintln!("{} runs, {timeouts} timed out", result.entries.len());
    Ok(0)
}
