//! Acceptance suite: eight end-to-end criteria, one test and one printed
//! verdict line each (run with `--nocapture` to see the lines for passing
//! tests).

use std::process::Command;
use std::time::{Duration, Instant};

use searchlab::bench::{self, BenchConfig};
use searchlab::dataset::{self, DatasetSpec, Scenario};
use searchlab::report::{self, Metric};
use searchlab::search::{self, pass_bound, Algorithm, SearchResult, SortedArray};
use searchlab::verify::{self, FuzzConfig};

fn verdict(number: usize, label: &str, failures: &[String], elapsed: Duration, budget: Duration) {
    let mut failures = failures.to_vec();
    if elapsed > budget {
        failures.push(format!("runtime {elapsed:?} exceeds budget {budget:?}"));
    }
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {number}: {status} — {label} ({elapsed:.2?})");
    assert!(failures.is_empty(), "criterion {number}: {}", failures.join("; "));
}

fn golden_array() -> SortedArray {
    SortedArray::new(vec![2, 13, 17, 29, 37, 77, 89, 145, 159, 201]).unwrap()
}

#[test]
fn criterion_1_golden_pass_count_matrix() {
    let start = Instant::now();
    let golden = golden_array();
    let expectations = [
        (Algorithm::Binary, 2, SearchResult::Found(0), 3),
        (Algorithm::Binary, 77, SearchResult::Found(5), 3),
        (Algorithm::Binary, 220, SearchResult::NotFound, 4),
        (Algorithm::Modified, 2, SearchResult::Found(0), 1),
        (Algorithm::Modified, 77, SearchResult::Found(5), 2),
        (Algorithm::Modified, 220, SearchResult::NotFound, 1),
    ];
    let mut failures = Vec::new();
    for (algorithm, x, want, want_passes) in expectations {
        let out = search::search(algorithm, &golden, x);
        if out.result != want || out.metrics.passes != want_passes {
            failures.push(format!(
                "{algorithm} x={x}: got {} in {} passes, want {want} in {want_passes}",
                out.result, out.metrics.passes
            ));
        }
    }
    verdict(
        1,
        "golden pass-count matrix reproduced exactly",
        &failures,
        start.elapsed(),
        Duration::from_secs(1),
    );
}

const ORACLE_SEEDS: [u64; 3] = [0, 1, 2];

fn oracle_corpus(seed: u64) -> FuzzConfig {
    FuzzConfig { cases: 100_000, max_n: 512, seed, duplicates_allowed: true }
}

#[test]
fn criterion_2_oracle_equivalence() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked: u64 = 0;
    for seed in ORACLE_SEEDS {
        let config = oracle_corpus(seed);
        for algorithm in [Algorithm::Binary, Algorithm::Modified] {
            let divergences = verify::fuzz(&config, algorithm);
            checked += config.cases;
            if let Some(d) = divergences.first() {
                failures.push(format!(
                    "{algorithm} diverged on seed {seed} ({} total), first: {d}",
                    divergences.len()
                ));
            }
        }
    }
    if failures.is_empty() {
        println!("  checked {checked} (algorithm, case) pairs against the oracle");
    }
    verdict(
        2,
        "zero divergences for binary and modified over 3 seeded corpora",
        &failures,
        start.elapsed(),
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_3_documented_defect_witness() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let config = FuzzConfig { cases: 10_000, ..FuzzConfig::default() };
    let divergences = verify::fuzz(&config, Algorithm::ModifiedPaper);
    if divergences.is_empty() {
        failures.push("no divergence within 10^4 cases".to_string());
    }
    let min_len = divergences
        .iter()
        .map(|d| verify::shrink(d).expect("divergences re-check").array.len())
        .min();
    match min_len {
        Some(len) if len <= 4 => {
            println!(
                "  {} divergences; smallest shrunken witness has length {len}",
                divergences.len()
            );
        }
        Some(len) => failures.push(format!("smallest shrunken witness has length {len} > 4")),
        None => {}
    }
    verdict(
        3,
        "modified-paper misses are found and shrink to the minimal class",
        &failures,
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_4_one_pass_guarantees() {
    use rand::{Rng, SeedableRng};
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4242);
    for i in 0..1_000u64 {
        let n = rng.gen_range(1..=10_000);
        let array = dataset::generate(&DatasetSpec::new(n, i)).unwrap();
        let s = array.as_slice();
        let queries = [s[0], s[n - 1], s[0] - 1, s[n - 1] + 1];
        for x in queries {
            let out = search::modified_search(&array, x);
            if out.metrics.passes != 1 {
                failures.push(format!(
                    "n={n} seed={i} x={x}: {} passes (expected 1)",
                    out.metrics.passes
                ));
            }
        }
        if failures.len() > 5 {
            break;
        }
    }
    verdict(
        4,
        "endpoint and out-of-range queries decide in one pass on 1000 arrays",
        &failures,
        start.elapsed(),
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_5_pass_bound_across_corpus() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked: u64 = 0;
    'outer: for seed in ORACLE_SEEDS {
        for case in verify::cases(&oracle_corpus(seed)) {
            let n = case.array.len();
            if n == 0 {
                continue;
            }
            for algorithm in [Algorithm::Binary, Algorithm::Modified] {
                let passes = search::search(algorithm, &case.array, case.x).metrics.passes;
                checked += 1;
                if passes > pass_bound(n) {
                    failures.push(format!(
                        "{algorithm} case {} (seed {seed}): {passes} passes > bound {} at n={n}",
                        case.index,
                        pass_bound(n)
                    ));
                    break 'outer;
                }
            }
        }
    }
    if failures.is_empty() {
        println!("  {checked} searches stayed within floor(log2(n)) + 1 passes");
    }
    verdict(
        5,
        "halving pass bound holds across the criterion-2 corpus",
        &failures,
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_6_scenario_dominance() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let config = BenchConfig {
        sizes: vec![1_000, 10_000, 100_000],
        scenarios: vec![Scenario::FirstOrLast, Scenario::AbsentOutOfRange],
        algorithms: vec![Algorithm::Binary, Algorithm::Modified],
        ..BenchConfig::default()
    };
    let report = bench::run(&config).expect("grid is feasible");
    let cell = |scenario, algorithm, n| {
        report
            .cells
            .iter()
            .find(|c| {
                c.scenario == bench::ScenarioLabel::Grid(scenario)
                    && c.algorithm == algorithm
                    && c.n == n
            })
            .expect("cell exists")
    };
    for &scenario in &config.scenarios {
        for &n in &config.sizes {
            let modified = cell(scenario, Algorithm::Modified, n);
            let binary = cell(scenario, Algorithm::Binary, n);
            if modified.mean_passes != 1.0 {
                failures.push(format!(
                    "{scenario} n={n}: modified mean_passes {} != 1.0",
                    modified.mean_passes
                ));
            }
            if modified.mean_passes >= binary.mean_passes {
                failures.push(format!(
                    "{scenario} n={n}: modified {} not below binary {}",
                    modified.mean_passes, binary.mean_passes
                ));
            }
            if n == 1_000 && binary.mean_passes < 9.0 {
                failures.push(format!(
                    "{scenario} n=1000: binary mean_passes {} < 9.0",
                    binary.mean_passes
                ));
            }
        }
    }
    verdict(
        6,
        "modified takes one pass where binary takes ~log n",
        &failures,
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_7_artifact_formats() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let config = BenchConfig {
        sizes: vec![100, 1_000],
        scenarios: vec![Scenario::FirstHalf, Scenario::AbsentInRange],
        algorithms: vec![Algorithm::Binary, Algorithm::Modified],
        repetitions: 10,
        trials: 3,
        seed: 7,
        warmup: 2,
    };
    let report = bench::run(&config).expect("grid is feasible");

    let mut buf = Vec::new();
    bench::write_csv(&report, &mut buf).expect("writable buffer");
    match bench::parse_csv(buf.as_slice()) {
        Ok(parsed) if parsed == report => {}
        Ok(_) => failures.push("CSV round-trip changed at least one cell".to_string()),
        Err(e) => failures.push(format!("CSV written by the harness failed to parse: {e}")),
    }

    for scenario in report::scenarios_in(&report) {
        let svg = match report::render_svg(&report, scenario, Metric::Time) {
            Ok(svg) => svg,
            Err(e) => {
                failures.push(format!("{scenario}: {e}"));
                continue;
            }
        };
        match roxmltree::Document::parse(&svg) {
            Ok(doc) => {
                let polylines = doc
                    .descendants()
                    .filter(|node| node.tag_name().name() == "polyline")
                    .count();
                if polylines != config.algorithms.len() {
                    failures.push(format!(
                        "{scenario}: {polylines} polylines for {} algorithms",
                        config.algorithms.len()
                    ));
                }
            }
            Err(e) => failures.push(format!("{scenario}: SVG is not well-formed XML: {e}")),
        }
    }
    verdict(
        7,
        "CSV round-trips cell-for-cell and SVG is well-formed with one polyline per algorithm",
        &failures,
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_8_cli_exit_codes() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let bin = env!("CARGO_BIN_EXE_searchlab");
    let golden = "2,13,17,29,37,77,89,145,159,201";

    let run = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .output()
            .expect("binary invocation")
    };
    let mut expect = |label: &str, args: &[&str], code: i32, needle: Option<&str>| {
        let out = run(args);
        let got = out.status.code();
        if got != Some(code) {
            failures.push(format!("{label}: exit {got:?}, want {code}"));
        }
        if let Some(needle) = needle {
            let stdout = String::from_utf8_lossy(&out.stdout);
            if !stdout.contains(needle) {
                failures.push(format!("{label}: stdout missing `{needle}`: {stdout:?}"));
            }
        }
    };

    expect(
        "found exits 0",
        &["search", "--algo", "modified", "--inline", golden, "--x", "2"],
        0,
        Some("index=0 passes=1"),
    );
    expect(
        "not-found exits 1",
        &["search", "--algo", "binary", "--inline", golden, "--x", "220"],
        1,
        Some("index=-1 passes=4"),
    );
    expect(
        "unknown algorithm exits 2",
        &["search", "--algo", "quantum", "--inline", golden, "--x", "2"],
        2,
        None,
    );
    expect(
        "unsorted inline data exits 2",
        &["search", "--algo", "binary", "--inline", "3,2,1", "--x", "2"],
        2,
        None,
    );
    expect(
        "clean fuzz exits 0",
        &["fuzz", "--algo", "modified", "--cases", "3000"],
        0,
        Some("divergences=0"),
    );
    expect(
        "divergent fuzz exits 3",
        &["fuzz", "--algo", "modified-paper", "--cases", "3000"],
        3,
        None,
    );
    expect(
        "missing report input exits 2",
        &["report", "--csv", "/nonexistent/bench.csv"],
        2,
        None,
    );

    verdict(
        8,
        "exit codes 0/1/2/3 honored by scripted invocations",
        &failures,
        start.elapsed(),
        Duration::from_secs(60),
    );
}
