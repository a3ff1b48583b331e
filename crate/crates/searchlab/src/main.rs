use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use searchlab::bench::{self, BenchConfig, ScenarioLabel};
use searchlab::dataset::{self, Scenario};
use searchlab::report::{self, Metric};
use searchlab::search::{self, Algorithm, Element, SortedArray};
use searchlab::verify::{self, FuzzConfig};

/// Search-algorithm laboratory: run instrumented searches, benchmark them
/// over scenario grids, fuzz them against a brute-force oracle, and render
/// benchmark CSVs as SVG charts.
#[derive(Debug, Parser)]
#[command(name = "searchlab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one search and print its result, work counters, and optionally a
    /// per-pass trace.
    Search(SearchArgs),
    /// Benchmark algorithms over a (scenario, size) grid and write a CSV.
    Bench(BenchArgs),
    /// Differentially fuzz one algorithm against the linear-scan oracle.
    Fuzz(FuzzArgs),
    /// Render a benchmark CSV as one SVG chart per scenario.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Algorithm: linear, binary, modified, or modified-paper.
    #[arg(long, value_parser = parse_algorithm)]
    algo: Algorithm,
    #[command(flatten)]
    input: DataInput,
    /// The element to search for.
    #[arg(long, allow_hyphen_values = true)]
    x: Element,
    /// Print one line per pass before the result.
    #[arg(long)]
    trace: bool,
}

/// Where the array comes from: a file with one integer per line, or an
/// inline comma-separated list (empty string for an empty array).
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct DataInput {
    /// Data file: one integer per line, non-decreasing.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Inline comma-separated integers, e.g. "2,13,17"; "" is empty.
    #[arg(long, allow_hyphen_values = true)]
    inline: Option<String>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Comma-separated dataset sizes.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Comma-separated scenarios (first-half, first-or-last,
    /// absent-out-of-range, absent-in-range).
    #[arg(long, value_delimiter = ',', value_parser = parse_scenario)]
    scenarios: Option<Vec<Scenario>>,
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', value_parser = parse_algorithm)]
    algos: Option<Vec<Algorithm>>,
    /// Timed searches per sample.
    #[arg(long)]
    repetitions: Option<u32>,
    /// (dataset, query) draws per cell.
    #[arg(long)]
    trials: Option<u32>,
    /// Untimed searches before each timed loop.
    #[arg(long)]
    warmup: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Benchmark this data file instead of generated grids (requires --x).
    #[arg(long, requires = "x")]
    data: Option<PathBuf>,
    /// Query element for --data.
    #[arg(long, requires = "data", allow_hyphen_values = true)]
    x: Option<Element>,
    /// Output CSV path.
    #[arg(long, default_value = "bench.csv")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct FuzzArgs {
    /// Algorithm to fuzz.
    #[arg(long, value_parser = parse_algorithm)]
    algo: Algorithm,
    /// Number of generated cases.
    #[arg(long, default_value_t = 100_000)]
    cases: u64,
    /// Maximum array length.
    #[arg(long, default_value_t = 512)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Generate strictly increasing arrays only.
    #[arg(long)]
    no_duplicates: bool,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Input CSV produced by `bench`.
    #[arg(long)]
    csv: PathBuf,
    /// Directory for the fig_<scenario>.svg files.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Only render this scenario.
    #[arg(long, value_parser = parse_label)]
    scenario: Option<ScenarioLabel>,
    /// Y-axis quantity: time or passes.
    #[arg(long, default_value_t = Metric::Time, value_parser = parse_metric)]
    metric: Metric,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: search::UnknownAlgorithm| e.to_string())
}

fn parse_scenario(s: &str) -> Result<Scenario, String> {
    s.parse().map_err(|e: dataset::UnknownScenario| e.to_string())
}

fn parse_label(s: &str) -> Result<ScenarioLabel, String> {
    s.parse().map_err(|e: dataset::UnknownScenario| e.to_string())
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    s.parse().map_err(|e: report::UnknownMetric| e.to_string())
}

const EXIT_NOT_FOUND: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DIVERGENCE: u8 = 3;

fn fail(message: impl Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Search(args) => cmd_search(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::Fuzz(args) => cmd_fuzz(&args),
        Command::Report(args) => cmd_report(&args),
    }
}

fn load_input(input: &DataInput) -> Result<SortedArray, String> {
    match (&input.data, &input.inline) {
        (Some(path), None) => {
            dataset::load_file(path).map_err(|e| format!("{}: {e}", path.display()))
        }
        (None, Some(text)) => parse_inline(text),
        _ => unreachable!("clap enforces exactly one input source"),
    }
}

fn parse_inline(text: &str) -> Result<SortedArray, String> {
    let mut elems = Vec::new();
    for raw in text.split(',') {
        let token = raw.trim();
        if token.is_empty() {
            continue;
        }
        let value: Element = token
            .parse()
            .map_err(|_| format!("inline list: `{token}` is not an integer"))?;
        elems.push(value);
    }
    SortedArray::new(elems).map_err(|e| format!("inline list: {e}"))
}

fn cmd_search(args: &SearchArgs) -> ExitCode {
    let array = match load_input(&args.input) {
        Ok(a) => a,
        Err(e) => return fail(e),
    };
    let (outcome, trace) = search::search_with_trace(args.algo, &array, args.x);
    if args.trace {
        for step in &trace {
            println!(
                "Pass {}: low={} high={} mid={} action={}",
                step.pass_index, step.low, step.high, step.mid, step.action
            );
        }
    }
    println!(
        "index={} passes={} comparisons={}",
        outcome.result.sentinel(),
        outcome.metrics.passes,
        outcome.metrics.comparisons
    );
    if outcome.result.is_found() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NOT_FOUND)
    }
}

fn cmd_bench(args: &BenchArgs) -> ExitCode {
    let defaults = BenchConfig::default();
    let config = BenchConfig {
        sizes: args.sizes.clone().unwrap_or(defaults.sizes),
        scenarios: args.scenarios.clone().unwrap_or(defaults.scenarios),
        algorithms: args.algos.clone().unwrap_or(defaults.algorithms),
        repetitions: args.repetitions.unwrap_or(defaults.repetitions),
        trials: args.trials.unwrap_or(defaults.trials),
        seed: args.seed,
        warmup: args.warmup.unwrap_or(defaults.warmup),
    };

    let report = match &args.data {
        Some(path) => {
            let array = match dataset::load_file(path) {
                Ok(a) => a,
                Err(e) => return fail(format!("{}: {e}", path.display())),
            };
            let x = args.x.expect("clap ties --data to --x");
            bench::run_fixed(&config, &array, x)
        }
        None => bench::run(&config),
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => return fail(e),
    };

    let file = match fs::File::create(&args.out) {
        Ok(f) => f,
        Err(e) => return fail(format!("{}: {e}", args.out.display())),
    };
    if let Err(e) = bench::write_csv(&report, file) {
        return fail(format!("{}: {e}", args.out.display()));
    }
    println!("wrote {} ({} cells)", args.out.display(), report.cells.len());
    ExitCode::SUCCESS
}

fn cmd_fuzz(args: &FuzzArgs) -> ExitCode {
    if args.cases == 0 || args.max_n == 0 {
        return fail("--cases and --max-n must be at least 1");
    }
    let config = FuzzConfig {
        cases: args.cases,
        max_n: args.max_n,
        seed: args.seed,
        duplicates_allowed: !args.no_duplicates,
    };
    let divergences = verify::fuzz(&config, args.algo);
    for d in &divergences {
        println!("{d}");
        match verify::shrink(d) {
            Ok(shrunk) => println!("{:?}", shrunk.array.as_slice()),
            Err(e) => return fail(e),
        }
    }
    println!("cases={} divergences={}", config.cases, divergences.len());
    if divergences.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_DIVERGENCE)
    }
}

fn cmd_report(args: &ReportArgs) -> ExitCode {
    let file = match fs::File::open(&args.csv) {
        Ok(f) => f,
        Err(e) => return fail(format!("{}: {e}", args.csv.display())),
    };
    let report = match bench::parse_csv(file) {
        Ok(r) => r,
        Err(e) => return fail(format!("{}: {e}", args.csv.display())),
    };

    let scenarios = match args.scenario {
        Some(label) => vec![label],
        None => report::scenarios_in(&report),
    };
    if scenarios.is_empty() {
        return fail(format!("{}: no rows to plot", args.csv.display()));
    }
    if let Err(e) = fs::create_dir_all(&args.out_dir) {
        return fail(format!("{}: {e}", args.out_dir.display()));
    }

    for scenario in scenarios {
        let svg = match report::render_svg(&report, scenario, args.metric) {
            Ok(svg) => svg,
            Err(e) => return fail(e),
        };
        let path = args.out_dir.join(format!("fig_{scenario}.svg"));
        if let Err(e) = write_file(&path, &svg) {
            return fail(e);
        }
        println!("wrote {}", path.display());
    }
    ExitCode::SUCCESS
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}
