//! Pit, arena and colosseum sizes per graph.

use std::fmt;

use pidwidth_core::oracle::{arena_size, colosseum_size};
use pidwidth_core::{discover_with, DiscoverError, DiscoverOptions, Graph};

pub const CSV_HEADER: &str = "graph,n,m,k,pit,arena,colosseum";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatsRow {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub pit: u64,
    pub arena: u128,
    /// Node count of the colosseum plus the cleared configuration; `None`
    /// above the enumeration cap.
    pub colosseum: Option<u64>,
}

impl fmt::Display for StatsRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{},{},", csv_field(&self.graph), self.n, self.m, self.k, self.pit, self.arena)?;
        match self.colosseum {
            Some(c) => write!(f, "{c}"),
            None => f.write_str("-"),
        }
    }
}

/// Quotes a CSV field when it needs it.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Smallest `k` at which the searchers win, with the pit at that `k`.
pub fn minimal_k<const W: usize>(graph: &Graph<W>, options: DiscoverOptions) -> Result<(usize, u64), DiscoverError> {
    if graph.n() == 0 {
        return Ok((0, 0));
    }
    for k in graph.min_degree() + 1..=graph.n() {
        let pit = discover_with(graph, k, options)?;
        if pit.is_winnable() {
            return Ok((k, pit.len() as u64));
        }
    }
    unreachable!("n searchers always win")
}

/// Stats at `k`; the pit is discovered, the arena is a formula and the
/// colosseum is counted by enumeration when `n <= max_n`.
pub fn row_at<const W: usize>(
    name: &str,
    graph: &Graph<W>,
    k: usize,
    max_n: usize,
    options: DiscoverOptions,
) -> Result<StatsRow, DiscoverError> {
    let pit = discover_with(graph, k, options)?.len() as u64;
    Ok(row_with_pit(name, graph, k, pit, max_n))
}

fn row_with_pit<const W: usize>(name: &str, graph: &Graph<W>, k: usize, pit: u64, max_n: usize) -> StatsRow {
    let colosseum = if graph.n() <= max_n {
        colosseum_size(graph, k, max_n).ok().map(|c| c + 1)
    } else {
        None
    };
    StatsRow {
        graph: name.to_string(),
        n: graph.n(),
        m: graph.edge_count(),
        k,
        pit,
        arena: arena_size(graph.n() as u64, k as u64),
        colosseum,
    }
}

/// The row at the minimal winning `k`.
pub fn row<const W: usize>(name: &str, graph: &Graph<W>, max_n: usize, options: DiscoverOptions) -> Result<StatsRow, DiscoverError> {
    let (k, pit) = minimal_k(graph, options)?;
    Ok(row_with_pit(name, graph, k, pit, max_n))
}

/// One row per `k` from 2 (or 1 on graphs with fewer than two vertices) up
/// to the minimal winning `k`.
pub fn growth<const W: usize>(
    name: &str,
    graph: &Graph<W>,
    max_n: usize,
    options: DiscoverOptions,
) -> Result<Vec<StatsRow>, DiscoverError> {
    let (best, _) = minimal_k(graph, options)?;
    let first = 2.min(best.max(1));
    (first..=best).map(|k| row_at(name, graph, k, max_n, options)).collect()
}
