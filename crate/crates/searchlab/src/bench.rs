//! Benchmark harness over (algorithm, scenario, size) grids.
//!
//! Within one trial every algorithm is measured against the identical
//! (dataset, query) pair, so the comparison is fair by construction. Wall
//! clock is read from a monotonic [`Instant`] around `repetitions`
//! back-to-back calls and divided through; pass and comparison counts are
//! recorded alongside because they are the hardware-independent half of the
//! story. Timed loops run on the calling thread only.
//!
//! Reports serialize to a fixed CSV layout (see [`CSV_HEADER`]): rows sorted
//! by (scenario, algorithm, n), floats in shortest round-trip decimal form,
//! `\n` line endings. [`parse_csv`] reads the same layout back.

use std::hint::black_box;
use std::io::{self, Read, Write};
use std::time::Instant;

use crate::dataset::{self, DatasetError, DatasetSpec, Scenario};
use crate::search::{self, Algorithm, Element, Metrics, SortedArray};

/// Everything [`run`] needs: the grid axes and the sampling plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub scenarios: Vec<Scenario>,
    pub algorithms: Vec<Algorithm>,
    /// Timed searches per sample; one sample is the loop total divided by this.
    pub repetitions: u32,
    /// Distinct (dataset, query) draws per cell.
    pub trials: u32,
    pub seed: u64,
    /// Untimed searches before each timed loop.
    pub warmup: u32,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: vec![1_000, 10_000, 100_000, 1_000_000],
            scenarios: Scenario::ALL.to_vec(),
            algorithms: vec![Algorithm::Binary, Algorithm::Modified],
            repetitions: 1_000,
            trials: 30,
            seed: 0,
            warmup: 100,
        }
    }
}

/// Value of the `scenario` CSV column: a grid scenario, or `fixed` for cells
/// benchmarked against a caller-supplied (dataset, query) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScenarioLabel {
    Grid(Scenario),
    Fixed,
}

impl ScenarioLabel {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioLabel::Grid(s) => s.name(),
            ScenarioLabel::Fixed => "fixed",
        }
    }
}

impl std::fmt::Display for ScenarioLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ScenarioLabel {
    type Err = dataset::UnknownScenario;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "fixed" {
            Ok(ScenarioLabel::Fixed)
        } else {
            s.parse::<Scenario>().map(ScenarioLabel::Grid)
        }
    }
}

/// One row of the report: statistics for a single (algorithm, scenario, n).
#[derive(Debug, Clone, PartialEq)]
pub struct BenchCell {
    pub scenario: ScenarioLabel,
    pub algorithm: Algorithm,
    pub n: usize,
    pub trials: u32,
    pub repetitions: u32,
    pub mean_time_ns: f64,
    pub median_time_ns: f64,
    pub stddev_time_ns: f64,
    pub mean_passes: f64,
    pub max_passes: u64,
    pub mean_comparisons: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchReport {
    pub cells: Vec<BenchCell>,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("summarize requires at least one sample")]
    NoSamples,
    #[error("refusing to write an empty report")]
    EmptyReport,
    #[error("invalid benchmark config: {0}")]
    InvalidConfig(String),
    #[error("scenario {scenario}, n={n}, trial {trial}: {source}")]
    Dataset {
        scenario: Scenario,
        n: usize,
        trial: u32,
        source: DatasetError,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Mean, median, and population standard deviation of a sample list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    /// Lower-middle element for even-length lists.
    pub median: f64,
    /// Population form: divide by n, not n-1.
    pub stddev: f64,
}

pub fn summarize(samples: &[f64]) -> Result<Summary, BenchError> {
    if samples.is_empty() {
        return Err(BenchError::NoSamples);
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[(sorted.len() - 1) / 2];
    let variance = samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / n;
    Ok(Summary { mean, median, stddev: variance.sqrt() })
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn mix(words: &[u64]) -> u64 {
    words.iter().fold(0, |h, &w| splitmix64(h ^ w))
}

/// The (dataset, query) pair for one trial. Pure in all four arguments;
/// every algorithm timed in that trial receives exactly this pair.
pub fn trial_inputs(
    seed: u64,
    scenario: Scenario,
    n: usize,
    trial: u32,
) -> Result<(SortedArray, Element), DatasetError> {
    let h = mix(&[seed, scenario as u64, n as u64, u64::from(trial)]);
    let array = dataset::generate(&DatasetSpec { n, seed: h, min_gap: 1, max_gap: 10 })?;
    let x = dataset::pick_query(scenario, &array, splitmix64(h ^ 0x5175_6572_7953_616C))?;
    Ok((array, x))
}

fn fold_outcome(outcome: search::SearchOutcome) -> u64 {
    let idx = outcome.result.index().map_or(0, |i| i as u64 + 1);
    idx ^ outcome.metrics.passes.rotate_left(17)
}

/// Times one algorithm on one input: `warmup` untimed calls, then
/// `repetitions` timed calls whose results fold into a sink the optimizer
/// cannot discard. Returns nanoseconds per call and the (deterministic)
/// per-call metrics.
fn time_one(
    algorithm: Algorithm,
    a: &SortedArray,
    x: Element,
    warmup: u32,
    repetitions: u32,
) -> (f64, Metrics) {
    let mut sink = 0u64;
    for _ in 0..warmup {
        sink = sink.wrapping_add(fold_outcome(search::search(algorithm, black_box(a), black_box(x))));
    }
    let start = Instant::now();
    for _ in 0..repetitions {
        sink = sink.wrapping_add(fold_outcome(search::search(algorithm, black_box(a), black_box(x))));
    }
    let elapsed = start.elapsed();
    black_box(sink);
    let metrics = search::search(algorithm, a, x).metrics;
    (elapsed.as_nanos() as f64 / f64::from(repetitions), metrics)
}

fn validate(config: &BenchConfig) -> Result<(), BenchError> {
    if config.repetitions == 0 || config.trials == 0 {
        return Err(BenchError::InvalidConfig(
            "repetitions and trials must be at least 1".to_string(),
        ));
    }
    if config.algorithms.is_empty() {
        return Err(BenchError::InvalidConfig("no algorithms selected".to_string()));
    }
    Ok(())
}

/// Runs the full grid: one cell per (algorithm, scenario, n), `trials`
/// independent (dataset, query) draws per cell, all algorithms measured
/// against identical inputs within a trial. Cells come back sorted by
/// (scenario, algorithm, n).
pub fn run(config: &BenchConfig) -> Result<BenchReport, BenchError> {
    validate(config)?;
    if config.sizes.is_empty() || config.sizes.contains(&0) {
        return Err(BenchError::InvalidConfig(
            "sizes must be non-empty and strictly positive".to_string(),
        ));
    }
    if config.scenarios.is_empty() {
        return Err(BenchError::InvalidConfig("no scenarios selected".to_string()));
    }

    let mut cells = Vec::new();
    for &scenario in &config.scenarios {
        for &n in &config.sizes {
            let mut samples: Vec<CellSamples> =
                config.algorithms.iter().map(|_| CellSamples::default()).collect();
            for trial in 0..config.trials {
                let (array, x) = trial_inputs(config.seed, scenario, n, trial)
                    .map_err(|source| BenchError::Dataset { scenario, n, trial, source })?;
                for (slot, &algorithm) in samples.iter_mut().zip(&config.algorithms) {
                    let (ns, metrics) = time_one(algorithm, &array, x, config.warmup, config.repetitions);
                    slot.push(ns, metrics);
                }
            }
            for (slot, &algorithm) in samples.iter().zip(&config.algorithms) {
                cells.push(slot.to_cell(ScenarioLabel::Grid(scenario), algorithm, n, config)?);
            }
        }
    }
    cells.sort_by_key(|c| (c.scenario, c.algorithm, c.n));
    Ok(BenchReport { cells })
}

/// Benchmarks a caller-supplied (dataset, query) pair instead of the
/// generated grid. Rows are labeled `fixed` with `n` set to the array
/// length. `trials` here only multiplies timing samples: the inputs never
/// change, so pass statistics are a single deterministic value.
pub fn run_fixed(
    config: &BenchConfig,
    array: &SortedArray,
    x: Element,
) -> Result<BenchReport, BenchError> {
    validate(config)?;
    if array.is_empty() {
        return Err(BenchError::InvalidConfig("fixed dataset is empty".to_string()));
    }
    let mut cells = Vec::new();
    for &algorithm in &config.algorithms {
        let mut slot = CellSamples::default();
        for _ in 0..config.trials {
            let (ns, metrics) = time_one(algorithm, array, x, config.warmup, config.repetitions);
            slot.push(ns, metrics);
        }
        cells.push(slot.to_cell(ScenarioLabel::Fixed, algorithm, array.len(), config)?);
    }
    cells.sort_by_key(|c| (c.scenario, c.algorithm, c.n));
    Ok(BenchReport { cells })
}

#[derive(Default)]
struct CellSamples {
    times_ns: Vec<f64>,
    passes: Vec<u64>,
    comparisons: Vec<u64>,
}

impl CellSamples {
    fn push(&mut self, ns: f64, metrics: Metrics) {
        self.times_ns.push(ns);
        self.passes.push(metrics.passes);
        self.comparisons.push(metrics.comparisons);
    }

    fn to_cell(
        &self,
        scenario: ScenarioLabel,
        algorithm: Algorithm,
        n: usize,
        config: &BenchConfig,
    ) -> Result<BenchCell, BenchError> {
        let time = summarize(&self.times_ns)?;
        let mean_of = |xs: &[u64]| xs.iter().map(|&v| v as f64).sum::<f64>() / xs.len() as f64;
        Ok(BenchCell {
            scenario,
            algorithm,
            n,
            trials: config.trials,
            repetitions: config.repetitions,
            mean_time_ns: time.mean,
            median_time_ns: time.median,
            stddev_time_ns: time.stddev,
            mean_passes: mean_of(&self.passes),
            max_passes: self.passes.iter().copied().max().unwrap_or(0),
            mean_comparisons: mean_of(&self.comparisons),
        })
    }
}

/// Exact header line of the report CSV.
pub const CSV_HEADER: &str = "scenario,algorithm,n,trials,repetitions,mean_time_ns,median_time_ns,stddev_time_ns,mean_passes,max_passes,mean_comparisons";

/// Writes the report CSV: header, then one row per cell sorted by
/// (scenario, algorithm, n). Floats print in shortest round-trip form; the
/// line terminator is a single `\n`.
pub fn write_csv<W: Write>(report: &BenchReport, mut dest: W) -> Result<(), BenchError> {
    if report.cells.is_empty() {
        return Err(BenchError::EmptyReport);
    }
    let mut cells: Vec<&BenchCell> = report.cells.iter().collect();
    cells.sort_by_key(|c| (c.scenario, c.algorithm, c.n));
    writeln!(dest, "{CSV_HEADER}")?;
    for c in cells {
        writeln!(
            dest,
            "{},{},{},{},{},{},{},{},{},{},{}",
            c.scenario,
            c.algorithm,
            c.n,
            c.trials,
            c.repetitions,
            c.mean_time_ns,
            c.median_time_ns,
            c.stddev_time_ns,
            c.mean_passes,
            c.max_passes,
            c.mean_comparisons,
        )?;
    }
    Ok(())
}

/// Failure while reading a report CSV; `line` is 1-based (the header is
/// line 1).
#[derive(Debug, thiserror::Error)]
pub enum CsvError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line 1: expected header `{CSV_HEADER}`")]
    BadHeader,
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
}

/// Parses a CSV produced by [`write_csv`]. Cell-for-cell inverse of the
/// writer.
pub fn parse_csv<R: Read>(mut src: R) -> Result<BenchReport, CsvError> {
    let mut text = String::new();
    src.read_to_string(&mut text)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        _ => return Err(CsvError::BadHeader),
    }
    let mut cells = Vec::new();
    for (idx, row) in lines {
        let line = idx + 1;
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 11 {
            return Err(CsvError::Malformed {
                line,
                msg: format!("expected 11 fields, found {}", fields.len()),
            });
        }
        let field = |i: usize| fields[i];
        fn parse<T: std::str::FromStr>(line: usize, name: &str, raw: &str) -> Result<T, CsvError>
        where
            T::Err: std::fmt::Display,
        {
            raw.parse().map_err(|e| CsvError::Malformed {
                line,
                msg: format!("bad {name} `{raw}`: {e}"),
            })
        }
        cells.push(BenchCell {
            scenario: parse(line, "scenario", field(0))?,
            algorithm: parse(line, "algorithm", field(1))?,
            n: parse(line, "n", field(2))?,
            trials: parse(line, "trials", field(3))?,
            repetitions: parse(line, "repetitions", field(4))?,
            mean_time_ns: parse(line, "mean_time_ns", field(5))?,
            median_time_ns: parse(line, "median_time_ns", field(6))?,
            stddev_time_ns: parse(line, "stddev_time_ns", field(7))?,
            mean_passes: parse(line, "mean_passes", field(8))?,
            max_passes: parse(line, "max_passes", field(9))?,
            mean_comparisons: parse(line, "mean_comparisons", field(10))?,
        });
    }
    Ok(BenchReport { cells })
}
