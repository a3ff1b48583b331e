//! Deterministic dataset generation and query placement.
//!
//! [`generate`] builds strictly increasing arrays from a seeded gap
//! construction; [`pick_query`] realizes one of the four [`Scenario`]s over
//! such an array. Both are pure functions of their arguments: the PRNG is
//! ChaCha8 seeded with `seed_from_u64`, so the same spec reproduces the same
//! bytes on every platform. [`load_file`] reads the one-integer-per-line
//! dataset format and insists on non-decreasing order.

use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::search::{Element, SortedArray};

/// Query-placement regime for a benchmark cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scenario {
    /// Query present somewhere in the first half of the array.
    FirstHalf,
    /// Query equal to the first or last element, picked by one coin flip.
    FirstOrLast,
    /// Query strictly greater than every element.
    AbsentOutOfRange,
    /// Query strictly between the endpoints but not present.
    AbsentInRange,
}

impl Scenario {
    pub const ALL: [Scenario; 4] = [
        Scenario::FirstHalf,
        Scenario::FirstOrLast,
        Scenario::AbsentOutOfRange,
        Scenario::AbsentInRange,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::FirstHalf => "first-half",
            Scenario::FirstOrLast => "first-or-last",
            Scenario::AbsentOutOfRange => "absent-out-of-range",
            Scenario::AbsentInRange => "absent-in-range",
        }
    }
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Unrecognized scenario name.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown scenario `{0}`; expected first-half, first-or-last, absent-out-of-range, or absent-in-range")]
pub struct UnknownScenario(pub String);

impl std::str::FromStr for Scenario {
    type Err = UnknownScenario;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| UnknownScenario(s.to_string()))
    }
}

/// Recipe for one generated dataset. Same spec, bit-identical array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DatasetSpec {
    pub n: usize,
    pub seed: u64,
    /// Smallest gap between consecutive elements; >= 1 keeps them distinct.
    pub min_gap: i64,
    pub max_gap: i64,
}

impl DatasetSpec {
    /// Spec with the default gap range `[1, 10]`.
    pub fn new(n: usize, seed: u64) -> Self {
        Self { n, seed, min_gap: 1, max_gap: 10 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DatasetError {
    #[error("dataset size must be at least 1")]
    EmptyDataset,
    #[error("invalid gap bounds {min_gap}..={max_gap}: need 1 <= min_gap <= max_gap")]
    InvalidGaps { min_gap: i64, max_gap: i64 },
    #[error("scenario {scenario} is infeasible here: {reason}")]
    Infeasible { scenario: Scenario, reason: String },
}

/// Builds a strictly increasing array of length `spec.n`.
///
/// `a[0]` is the first gap and every later element adds another gap, each
/// drawn uniformly from `[min_gap, max_gap]` off a ChaCha8 stream seeded with
/// `spec.seed`. With `min_gap >= 1` all elements are distinct.
pub fn generate(spec: &DatasetSpec) -> Result<SortedArray, DatasetError> {
    if spec.n == 0 {
        return Err(DatasetError::EmptyDataset);
    }
    if spec.min_gap < 1 || spec.max_gap < spec.min_gap {
        return Err(DatasetError::InvalidGaps { min_gap: spec.min_gap, max_gap: spec.max_gap });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut elems = Vec::with_capacity(spec.n);
    let mut value = 0i64;
    for _ in 0..spec.n {
        value += rng.gen_range(spec.min_gap..=spec.max_gap);
        elems.push(value);
    }
    Ok(SortedArray::new(elems).expect("positive gaps produce increasing values"))
}

/// Picks the query element realizing `scenario` over a non-empty, strictly
/// increasing array.
///
/// Seeded draws: `FirstHalf` picks a uniform position among the first
/// `floor(n/2)` cells (position 0 when `n == 1`); `FirstOrLast` flips one
/// coin; `AbsentOutOfRange` returns `a[n-1] + 1`; `AbsentInRange` probes
/// seeded random positions until it lands on a gap wider than 1 and returns
/// `a[i] + 1`.
pub fn pick_query(scenario: Scenario, a: &SortedArray, seed: u64) -> Result<Element, DatasetError> {
    let elems = a.as_slice();
    let n = elems.len();
    if n == 0 {
        return Err(DatasetError::Infeasible {
            scenario,
            reason: "array is empty".to_string(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match scenario {
        Scenario::FirstHalf => {
            let half = n / 2;
            let i = if half == 0 { 0 } else { rng.gen_range(0..half) };
            Ok(elems[i])
        }
        Scenario::FirstOrLast => {
            Ok(if rng.gen_bool(0.5) { elems[0] } else { elems[n - 1] })
        }
        Scenario::AbsentOutOfRange => {
            elems[n - 1].checked_add(1).ok_or_else(|| DatasetError::Infeasible {
                scenario,
                reason: "no representable value above the maximum element".to_string(),
            })
        }
        Scenario::AbsentInRange => {
            let has_gap = elems
                .windows(2)
                .any(|w| w[1] as i128 - w[0] as i128 > 1);
            if !has_gap {
                return Err(DatasetError::Infeasible {
                    scenario,
                    reason: "every adjacent gap is 1, so no in-range value is absent".to_string(),
                });
            }
            loop {
                let i = rng.gen_range(0..n - 1);
                if elems[i + 1] as i128 - elems[i] as i128 > 1 {
                    return Ok(elems[i] + 1);
                }
            }
        }
    }
}

/// Error while loading a dataset file. Lines are 1-based.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        source: std::num::ParseIntError,
    },
    #[error("line {line}: value {value} is less than the preceding value {prev}")]
    Unsorted {
        line: usize,
        value: Element,
        prev: Element,
    },
}

/// Loads a dataset file: UTF-8 text, one decimal integer per line,
/// non-decreasing. The first offending line is named in the error.
pub fn load_file(path: &Path) -> Result<SortedArray, LoadError> {
    parse_lines(&fs::read_to_string(path)?)
}

/// Same as [`load_file`] over in-memory text.
pub fn parse_lines(text: &str) -> Result<SortedArray, LoadError> {
    let mut elems: Vec<Element> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let value: Element = raw
            .trim()
            .parse()
            .map_err(|source| LoadError::Parse { line, source })?;
        if let Some(&prev) = elems.last() {
            if value < prev {
                return Err(LoadError::Unsorted { line, value, prev });
            }
        }
        elems.push(value);
    }
    Ok(SortedArray::new(elems).expect("order checked above"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::linear_search;
    use proptest::prelude::*;

    #[test]
    fn generate_is_deterministic() {
        let spec = DatasetSpec::new(200, 42);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other = DatasetSpec::new(200, 43);
        assert_ne!(generate(&other).unwrap(), generate(&spec).unwrap());
    }

    #[test]
    fn unit_gaps_force_the_array() {
        let spec = DatasetSpec { n: 1, seed: 7, min_gap: 1, max_gap: 1 };
        assert_eq!(generate(&spec).unwrap().as_slice(), &[1]);
        let spec = DatasetSpec { n: 5, seed: 99, min_gap: 1, max_gap: 1 };
        assert_eq!(generate(&spec).unwrap().as_slice(), &[1, 2, 3, 4, 5]);
    }

    #[test]
    fn generated_arrays_are_strictly_increasing() {
        let a = generate(&DatasetSpec::new(1000, 42)).unwrap();
        assert_eq!(a.len(), 1000);
        assert!(a.as_slice().windows(2).all(|w| w[0] < w[1]));
        assert!(a.as_slice()[0] >= 1);
    }

    #[test]
    fn generate_rejects_bad_specs() {
        assert!(matches!(
            generate(&DatasetSpec::new(0, 1)),
            Err(DatasetError::EmptyDataset)
        ));
        assert!(matches!(
            generate(&DatasetSpec { n: 3, seed: 1, min_gap: 0, max_gap: 5 }),
            Err(DatasetError::InvalidGaps { .. })
        ));
        assert!(matches!(
            generate(&DatasetSpec { n: 3, seed: 1, min_gap: 4, max_gap: 2 }),
            Err(DatasetError::InvalidGaps { .. })
        ));
    }

    fn golden() -> SortedArray {
        SortedArray::new(vec![2, 13, 17, 29, 37, 77, 89, 145, 159, 201]).unwrap()
    }

    #[test]
    fn absent_out_of_range_is_max_plus_one() {
        for seed in 0..5 {
            assert_eq!(pick_query(Scenario::AbsentOutOfRange, &golden(), seed).unwrap(), 202);
        }
    }

    #[test]
    fn first_or_last_hits_both_endpoints() {
        let a = golden();
        let mut seen = std::collections::HashSet::new();
        for seed in 0..32 {
            let x = pick_query(Scenario::FirstOrLast, &a, seed).unwrap();
            assert!(x == 2 || x == 201);
            seen.insert(x);
        }
        assert_eq!(seen.len(), 2, "both endpoints should occur across seeds");
    }

    #[test]
    fn first_half_queries_live_in_the_first_half() {
        let a = generate(&DatasetSpec::new(101, 5)).unwrap();
        for seed in 0..40 {
            let x = pick_query(Scenario::FirstHalf, &a, seed).unwrap();
            let idx = linear_search(&a, x).result.index().unwrap();
            assert!(idx < a.len().div_ceil(2), "idx={idx}");
        }
        // Degenerate single-element array.
        let one = SortedArray::new(vec![41]).unwrap();
        assert_eq!(pick_query(Scenario::FirstHalf, &one, 0).unwrap(), 41);
    }

    #[test]
    fn absent_in_range_returns_the_only_gap_value() {
        let a = SortedArray::new(vec![1, 3]).unwrap();
        for seed in 0..5 {
            assert_eq!(pick_query(Scenario::AbsentInRange, &a, seed).unwrap(), 2);
        }
    }

    #[test]
    fn absent_in_range_rejects_gapless_arrays() {
        let a = SortedArray::new(vec![4, 5, 6, 7]).unwrap();
        assert!(matches!(
            pick_query(Scenario::AbsentInRange, &a, 0),
            Err(DatasetError::Infeasible { scenario: Scenario::AbsentInRange, .. })
        ));
    }

    #[test]
    fn scenario_names_round_trip() {
        for sc in Scenario::ALL {
            assert_eq!(sc.name().parse::<Scenario>().unwrap(), sc);
        }
        assert!("middle".parse::<Scenario>().is_err());
    }

    #[test]
    fn load_parses_valid_files() {
        let a = parse_lines("2\n13\n17\n").unwrap();
        assert_eq!(a.as_slice(), &[2, 13, 17]);
        // CRLF and surrounding whitespace are tolerated; duplicates are legal.
        let a = parse_lines("1\r\n1\r\n 5 \r\n").unwrap();
        assert_eq!(a.as_slice(), &[1, 1, 5]);
        assert!(parse_lines("").unwrap().is_empty());
    }

    #[test]
    fn load_names_the_offending_line() {
        match parse_lines("1\n9\n5\n") {
            Err(LoadError::Unsorted { line, value, prev }) => {
                assert_eq!((line, value, prev), (3, 5, 9));
            }
            other => panic!("expected order violation, got {other:?}"),
        }
        match parse_lines("1\n\n3\n") {
            Err(LoadError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse failure, got {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn queries_satisfy_their_scenario(n in 2usize..300, seed in 0u64..1000, qseed in 0u64..1000) {
            let a = generate(&DatasetSpec::new(n, seed)).unwrap();
            let first = a.as_slice()[0];
            let last = a.as_slice()[n - 1];

            let x = pick_query(Scenario::FirstHalf, &a, qseed).unwrap();
            prop_assert!(linear_search(&a, x).result.index().unwrap() < n.div_ceil(2));

            let x = pick_query(Scenario::FirstOrLast, &a, qseed).unwrap();
            prop_assert!(x == first || x == last);

            let x = pick_query(Scenario::AbsentOutOfRange, &a, qseed).unwrap();
            prop_assert!(!linear_search(&a, x).result.is_found());
            prop_assert!(x > last);

            if let Ok(x) = pick_query(Scenario::AbsentInRange, &a, qseed) {
                prop_assert!(!linear_search(&a, x).result.is_found());
                prop_assert!(first < x && x < last);
            }
        }
    }
}
