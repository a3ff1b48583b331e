//! The four search algorithms, instrumented.
//!
//! Every algorithm runs over a [`SortedArray`] and returns a [`SearchOutcome`]
//! carrying the result plus [`Metrics`]: passes (entered loop iterations),
//! element comparisons, and element accesses. The counters are deterministic
//! functions of `(array, query, algorithm)`.
//!
//! Two variants of the modified binary search are kept side by side:
//! [`modified_search`] loops while `low <= high` and is correct on all inputs;
//! [`modified_search_paper`] keeps the original `low < high` condition and
//! therefore misses a match whenever the window narrows to a single
//! unexamined cell. The defective variant exists so the miss can be
//! demonstrated and fuzzed, not fixed.

use std::fmt;
use std::str::FromStr;

/// Array element. All searches compare elements by the standard `i64` order.
pub type Element = i64;

/// A non-decreasing array of elements. Sortedness is validated once at
/// construction; every search algorithm relies on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedArray {
    elems: Vec<Element>,
}

/// Order violation found while constructing a [`SortedArray`], reported at
/// the first offending (0-based) index.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("index {index}: value {value} is less than its predecessor {prev}")]
pub struct UnsortedError {
    pub index: usize,
    pub value: Element,
    pub prev: Element,
}

impl SortedArray {
    /// Validates non-decreasing order and wraps the elements.
    pub fn new(elems: Vec<Element>) -> Result<Self, UnsortedError> {
        for i in 1..elems.len() {
            if elems[i] < elems[i - 1] {
                return Err(UnsortedError {
                    index: i,
                    value: elems[i],
                    prev: elems[i - 1],
                });
            }
        }
        Ok(Self { elems })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.elems
    }

    pub fn into_vec(self) -> Vec<Element> {
        self.elems
    }
}

/// Identifier for one of the four algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Left-to-right scan; returns the first match. The oracle for the rest.
    Linear,
    /// Classic halving with a three-way comparison at `mid` only.
    Binary,
    /// Per-pass range rejection plus `low`/`high`/`mid` probes, corrected
    /// loop condition `low <= high`.
    Modified,
    /// Same pass body as `Modified` but with the original `low < high`
    /// condition, preserving its single-cell miss.
    ModifiedPaper,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Linear,
        Algorithm::Binary,
        Algorithm::Modified,
        Algorithm::ModifiedPaper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Linear => "linear",
            Algorithm::Binary => "binary",
            Algorithm::Modified => "modified",
            Algorithm::ModifiedPaper => "modified-paper",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Unrecognized algorithm name.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown algorithm `{0}`; expected linear, binary, modified, or modified-paper")]
pub struct UnknownAlgorithm(pub String);

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}

/// Where the query was found, if anywhere. Indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchResult {
    Found(usize),
    NotFound,
}

impl SearchResult {
    pub fn is_found(self) -> bool {
        matches!(self, SearchResult::Found(_))
    }

    pub fn index(self) -> Option<usize> {
        match self {
            SearchResult::Found(i) => Some(i),
            SearchResult::NotFound => None,
        }
    }

    /// The classic index-or-`-1` encoding, used by the CLI output.
    pub fn sentinel(self) -> i64 {
        match self {
            SearchResult::Found(i) => i as i64,
            SearchResult::NotFound => -1,
        }
    }
}

impl fmt::Display for SearchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchResult::Found(i) => write!(f, "Found({i})"),
            SearchResult::NotFound => f.write_str("NotFound"),
        }
    }
}

/// Work counters for a single search.
///
/// A pass is one entered iteration of the algorithm's main loop. Each
/// element-vs-query relational test (`==`, `<`, `>`) counts one comparison
/// and one access; index-vs-index bookkeeping counts nothing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Metrics {
    pub passes: u64,
    pub comparisons: u64,
    pub accesses: u64,
}

/// Result of one search, always paired with its metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOutcome {
    pub result: SearchResult,
    pub metrics: Metrics,
}

/// The decision an algorithm took in one pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepAction {
    RangeReject,
    FoundAtLow,
    FoundAtHigh,
    FoundAtMid,
    GoLeft,
    GoRight,
}

impl StepAction {
    pub fn name(self) -> &'static str {
        match self {
            StepAction::RangeReject => "range-reject",
            StepAction::FoundAtLow => "found-at-low",
            StepAction::FoundAtHigh => "found-at-high",
            StepAction::FoundAtMid => "found-at-mid",
            StepAction::GoLeft => "go-left",
            StepAction::GoRight => "go-right",
        }
    }
}

impl fmt::Display for StepAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One recorded pass: the live window at pass entry and the decision taken.
/// `pass_index` starts at 1. Always `low <= mid <= high`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub pass_index: u64,
    pub low: usize,
    pub high: usize,
    pub mid: usize,
    pub action: StepAction,
}

/// Worst-case pass count of a halving search over `n >= 1` elements:
/// `floor(log2(n)) + 1`.
pub fn pass_bound(n: usize) -> u64 {
    assert!(n >= 1, "pass bound is defined for non-empty arrays");
    u64::from(n.ilog2()) + 1
}

/// Counts every element read and element-vs-query test performed through it.
struct Probe<'a> {
    elems: &'a [Element],
    metrics: Metrics,
}

impl<'a> Probe<'a> {
    fn new(a: &'a SortedArray) -> Self {
        Self {
            elems: a.as_slice(),
            metrics: Metrics::default(),
        }
    }

    fn enter_pass(&mut self) -> u64 {
        self.metrics.passes += 1;
        self.metrics.passes
    }

    fn read(&mut self, i: usize) -> Element {
        self.metrics.accesses += 1;
        self.elems[i]
    }

    fn eq(&mut self, i: usize, x: Element) -> bool {
        self.metrics.comparisons += 1;
        self.read(i) == x
    }

    fn gt(&mut self, i: usize, x: Element) -> bool {
        self.metrics.comparisons += 1;
        self.read(i) > x
    }

    fn lt(&mut self, i: usize, x: Element) -> bool {
        self.metrics.comparisons += 1;
        self.read(i) < x
    }

    fn found(self, i: usize) -> SearchOutcome {
        SearchOutcome {
            result: SearchResult::Found(i),
            metrics: self.metrics,
        }
    }

    fn not_found(self) -> SearchOutcome {
        SearchOutcome {
            result: SearchResult::NotFound,
            metrics: self.metrics,
        }
    }
}

fn record(trace: &mut Option<&mut Vec<TraceStep>>, step: TraceStep) {
    if let Some(t) = trace {
        t.push(step);
    }
}

/// Left-to-right scan returning the **first** index holding the query.
///
/// One pass per examined cell. This is the brute-force oracle the other
/// algorithms are checked against; it does not need the array to be sorted.
pub fn linear_search(a: &SortedArray, x: Element) -> SearchOutcome {
    linear_impl(a, x, None)
}

fn linear_impl(a: &SortedArray, x: Element, mut trace: Option<&mut Vec<TraceStep>>) -> SearchOutcome {
    let mut probe = Probe::new(a);
    for i in 0..a.len() {
        let pass_index = probe.enter_pass();
        if probe.eq(i, x) {
            record(
                &mut trace,
                TraceStep { pass_index, low: i, high: i, mid: i, action: StepAction::FoundAtMid },
            );
            return probe.found(i);
        }
        record(
            &mut trace,
            TraceStep { pass_index, low: i, high: i, mid: i, action: StepAction::GoRight },
        );
    }
    probe.not_found()
}

/// Classic binary search: closed window `[low, high]`, loop while
/// `low <= high`, three-way comparison at `mid` only.
pub fn binary_search(a: &SortedArray, x: Element) -> SearchOutcome {
    binary_impl(a, x, None)
}

fn binary_impl(a: &SortedArray, x: Element, mut trace: Option<&mut Vec<TraceStep>>) -> SearchOutcome {
    let mut probe = Probe::new(a);
    if a.is_empty() {
        return probe.not_found();
    }
    // i64 window bounds: `high` legitimately reaches -1 when the query
    // precedes the first element.
    let mut low: i64 = 0;
    let mut high: i64 = a.len() as i64 - 1;
    while low <= high {
        let pass_index = probe.enter_pass();
        let mid = low + (high - low) / 2;
        let (l, h, m) = (low as usize, high as usize, mid as usize);
        if probe.eq(m, x) {
            record(
                &mut trace,
                TraceStep { pass_index, low: l, high: h, mid: m, action: StepAction::FoundAtMid },
            );
            return probe.found(m);
        }
        if probe.gt(m, x) {
            record(
                &mut trace,
                TraceStep { pass_index, low: l, high: h, mid: m, action: StepAction::GoLeft },
            );
            high = mid - 1;
        } else {
            record(
                &mut trace,
                TraceStep { pass_index, low: l, high: h, mid: m, action: StepAction::GoRight },
            );
            low = mid + 1;
        }
    }
    probe.not_found()
}

/// Modified binary search, corrected loop condition `low <= high`.
///
/// Each pass checks, in order: range rejection (`a[low] > x` or
/// `a[high] < x`), equality at `low`, at `high`, then the three-way test at
/// `mid`; on a halving step the window additionally shrinks by one from the
/// untouched end (`low += 1` when going left, `high -= 1` when going right).
/// Matches at the `low` probe win ties, so a single-cell window reports its
/// index as `low`.
///
/// One-pass guarantees for non-empty arrays: a query equal to the first or
/// last element, or lying outside `[a[0], a[n-1]]`, is decided in exactly one
/// pass.
pub fn modified_search(a: &SortedArray, x: Element) -> SearchOutcome {
    modified_impl(a, x, true, None)
}

/// The modified binary search exactly as originally written, including the
/// `low < high` loop condition and `-1`-style not-found result.
///
/// The condition is a genuine defect: when the window narrows to one
/// unexamined cell (or starts there, `n == 1`), the loop exits without
/// probing it and reports the element missing even when present. Kept
/// verbatim so the divergence can be witnessed; use [`modified_search`] for
/// correct answers.
pub fn modified_search_paper(a: &SortedArray, x: Element) -> SearchOutcome {
    modified_impl(a, x, false, None)
}

fn modified_impl(
    a: &SortedArray,
    x: Element,
    inclusive: bool,
    mut trace: Option<&mut Vec<TraceStep>>,
) -> SearchOutcome {
    let mut probe = Probe::new(a);
    // n == 0 would make `high = n - 1` meaningless; decide before the loop.
    if a.is_empty() {
        return probe.not_found();
    }
    let mut low: i64 = 0;
    let mut high: i64 = a.len() as i64 - 1;
    loop {
        let in_window = if inclusive { low <= high } else { low < high };
        if !in_window {
            break;
        }
        let pass_index = probe.enter_pass();
        let mid = low + (high - low) / 2;
        let (l, h, m) = (low as usize, high as usize, mid as usize);
        let step = |action| TraceStep { pass_index, low: l, high: h, mid: m, action };

        // The query cannot live outside [a[low], a[high]].
        if probe.gt(l, x) || probe.lt(h, x) {
            record(&mut trace, step(StepAction::RangeReject));
            return probe.not_found();
        }
        if probe.eq(l, x) {
            record(&mut trace, step(StepAction::FoundAtLow));
            return probe.found(l);
        } else if probe.eq(h, x) {
            record(&mut trace, step(StepAction::FoundAtHigh));
            return probe.found(h);
        } else if probe.eq(m, x) {
            record(&mut trace, step(StepAction::FoundAtMid));
            return probe.found(m);
        } else if probe.gt(m, x) {
            record(&mut trace, step(StepAction::GoLeft));
            // a[low] < x < a[mid] here, so mid > low >= 0.
            high = mid - 1;
            low += 1;
        } else if probe.lt(m, x) {
            record(&mut trace, step(StepAction::GoRight));
            low = mid + 1;
            high -= 1;
        }
    }
    probe.not_found()
}

/// Runs `algorithm` by identifier. Same outcome as calling it directly.
pub fn search(algorithm: Algorithm, a: &SortedArray, x: Element) -> SearchOutcome {
    match algorithm {
        Algorithm::Linear => linear_search(a, x),
        Algorithm::Binary => binary_search(a, x),
        Algorithm::Modified => modified_search(a, x),
        Algorithm::ModifiedPaper => modified_search_paper(a, x),
    }
}

/// Runs `algorithm` and records one [`TraceStep`] per pass.
pub fn search_with_trace(
    algorithm: Algorithm,
    a: &SortedArray,
    x: Element,
) -> (SearchOutcome, Vec<TraceStep>) {
    let mut trace = Vec::new();
    let outcome = match algorithm {
        Algorithm::Linear => linear_impl(a, x, Some(&mut trace)),
        Algorithm::Binary => binary_impl(a, x, Some(&mut trace)),
        Algorithm::Modified => modified_impl(a, x, true, Some(&mut trace)),
        Algorithm::ModifiedPaper => modified_impl(a, x, false, Some(&mut trace)),
    };
    (outcome, trace)
}
