//! An instrumented laboratory for comparing search algorithms over sorted
//! integer arrays.
//!
//! Four algorithms share one interface: a left-to-right [`search::linear_search`]
//! scan, classic [`search::binary_search`], a [`search::modified_search`] that
//! also probes the window endpoints and rejects out-of-range queries in a
//! single pass, and [`search::modified_search_paper`] — the same idea exactly
//! as originally published, whose `low < high` loop condition makes it miss
//! elements when the window narrows to one unexamined cell. Every call
//! reports how many passes, element comparisons, and element accesses it
//! spent, and can replay its decisions pass by pass.
//!
//! Around that core:
//!
//! - [`dataset`] deterministically generates sorted arrays and picks queries
//!   realizing four placement scenarios (first half, first-or-last, absent
//!   out of range, absent in range),
//! - [`bench`] times the algorithms over (scenario, size) grids and writes
//!   the statistics as CSV,
//! - [`verify`] fuzzes every algorithm against a linear-scan oracle and
//!   shrinks any disagreement to a small witness,
//! - [`report`] renders benchmark CSVs as SVG line charts.
//!
//! The `searchlab` binary exposes all of it as `search`, `bench`, `fuzz`,
//! and `report` subcommands.

pub mod bench;
pub mod dataset;
pub mod report;
pub mod search;
pub mod verify;

pub use search::{
    Algorithm, Element, Metrics, SearchOutcome, SearchResult, SortedArray,
};
