//! Brute-force references: the memoized recursive game solver, full
//! colosseum enumeration with backward winning-region computation, the arena
//! size formula, and a universal-consistency checker.
//!
//! Everything here enumerates subsets and is meant for small graphs, tests,
//! and the size statistics.

use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;

use hashbrown::HashMap;

use crate::ealt::{alternating_reach, CycleError, EdgeAltGraph, NodeId};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Colosseum and pit nodes are configurations: the contaminated vertex set.
pub type ConfigGraph<const W: usize> = EdgeAltGraph<VertexSet<W>>;

pub const DEFAULT_ENUMERATION_CAP: usize = 26;
pub const DEFAULT_FANOUT_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// Full subset enumeration was requested above the cap.
    EnumerationCap { n: usize, cap: usize },
    Cycle(CycleError),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::EnumerationCap { n, cap } => {
                write!(f, "refusing to enumerate 2^{n} configurations (cap is n <= {cap})")
            }
            OracleError::Cycle(e) => fmt::Display::fmt(e, f),
        }
    }
}

impl core::error::Error for OracleError {}

impl From<CycleError> for OracleError {
    fn from(e: CycleError) -> Self {
        OracleError::Cycle(e)
    }
}

/// Decides whether `k` searchers win the monotone search game on `graph`.
///
/// This is the direct recursive procedure: covered searchers are dropped
/// implicitly, a disconnected contaminated area is revealed and every part
/// must be won, and otherwise one searcher is placed on some contaminated
/// vertex. Results are memoized on the contaminated set; the recursion runs on
/// an explicit stack.
pub fn general_graph_searching<const W: usize>(graph: &Graph<W>, k: usize) -> bool {
    enum Resolved<const W: usize> {
        Done(bool),
        Branch { all: bool, children: Vec<VertexSet<W>> },
    }

    let expand = |config: &VertexSet<W>| -> Resolved<W> {
        if config.is_empty() {
            return Resolved::Done(true);
        }
        let separator = graph.neighborhood(config).len();
        if separator > k {
            return Resolved::Done(false);
        }
        let components = graph.connected_components(config);
        if components.len() > 1 {
            return Resolved::Branch {
                all: true,
                children: components,
            };
        }
        if separator >= k {
            // placing one more searcher would exceed the budget
            return Resolved::Done(false);
        }
        Resolved::Branch {
            all: false,
            children: config.iter().map(|v| config.without(v)).collect(),
        }
    };

    struct Frame<const W: usize> {
        config: VertexSet<W>,
        all: bool,
        children: Vec<VertexSet<W>>,
        next: usize,
    }

    let mut memo: HashMap<VertexSet<W>, bool> = HashMap::new();
    let start = graph.vertices();
    let mut stack: Vec<Frame<W>> = Vec::new();
    match expand(&start) {
        Resolved::Done(r) => return r,
        Resolved::Branch { all, children } => stack.push(Frame {
            config: start,
            all,
            children,
            next: 0,
        }),
    }

    while let Some(top) = stack.last_mut() {
        if top.next == top.children.len() {
            // exhausted without short-circuit: AND is true, OR is false
            let frame = stack.pop().unwrap();
            memo.insert(frame.config, frame.all);
            continue;
        }
        let child = top.children[top.next];
        let known = match memo.get(&child) {
            Some(&r) => Some(r),
            None => match expand(&child) {
                Resolved::Done(r) => {
                    memo.insert(child, r);
                    Some(r)
                }
                Resolved::Branch { all, children } => {
                    stack.push(Frame {
                        config: child,
                        all,
                        children,
                        next: 0,
                    });
                    None
                }
            },
        };
        if let Some(r) = known {
            let top = stack.last_mut().unwrap();
            if r != top.all {
                let frame = stack.pop().unwrap();
                memo.insert(frame.config, r);
            } else {
                top.next += 1;
            }
        }
    }
    memo[&start]
}

/// Calls `visit(mask, |N(mask)|)` for every nonempty subset of a graph on at
/// most 64 vertices, using split lookup tables for the closed neighborhood.
fn for_each_subset<const W: usize>(graph: &Graph<W>, mut visit: impl FnMut(u64, u32)) {
    let n = graph.n();
    debug_assert!(n <= 40);
    let word = |v: usize| graph.neighbors(v).words()[0];
    let low_bits = n / 2;
    let high_bits = n - low_bits;
    let table = |offset: usize, bits: usize| -> Vec<u64> {
        let mut t = alloc::vec![0u64; 1 << bits];
        for m in 1usize..(1 << bits) {
            let low = m.trailing_zeros() as usize;
            t[m] = t[m & (m - 1)] | word(offset + low);
        }
        t
    };
    let low = table(0, low_bits);
    let high = table(low_bits, high_bits);
    let low_mask = (1u64 << low_bits) - 1;
    for mask in 1u64..(1u64 << n) {
        let adjacent = low[(mask & low_mask) as usize] | high[(mask >> low_bits) as usize];
        visit(mask, (adjacent & !mask).count_ones());
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), OracleError> {
    if n > cap || n > 40 {
        Err(OracleError::EnumerationCap { n, cap })
    } else {
        Ok(())
    }
}

fn mask_to_set<const W: usize>(mask: u64) -> VertexSet<W> {
    let mut words = [0u64; W];
    words[0] = mask;
    VertexSet::from_words(words)
}

/// Number of nonempty configurations `C` with `|N(C)| <= k`, i.e. the node
/// count of the colosseum, without building it.
pub fn colosseum_size<const W: usize>(graph: &Graph<W>, k: usize, cap: usize) -> Result<u64, OracleError> {
    check_cap(graph.n(), cap)?;
    let mut count = 0u64;
    for_each_subset(graph, |_, separator| {
        if separator as usize <= k {
            count += 1;
        }
    });
    Ok(count)
}

/// Builds the full colosseum: all nonempty `C` with `|N(C)| <= k`,
/// existential arcs `C -> C \ {v}` when `|N(C)| < k`, and universal arcs from
/// every disconnected `C` to each of its components.
pub fn build_colosseum<const W: usize>(graph: &Graph<W>, k: usize, cap: usize) -> Result<ConfigGraph<W>, OracleError> {
    check_cap(graph.n(), cap)?;
    let mut configs: Vec<VertexSet<W>> = Vec::new();
    for_each_subset(graph, |mask, separator| {
        if separator as usize <= k {
            configs.push(mask_to_set(mask));
        }
    });
    // ascending size, then canonical order, so arc targets already exist
    configs.sort_unstable_by_key(|c| (c.len(), *c));
    let mut h = ConfigGraph::new();
    h.reserve(configs.len());
    for &config in &configs {
        let (id, _) = h.add_node(config);
        let separator = graph.neighborhood(&config).len();
        let mut existential = Vec::new();
        if separator < k {
            for v in config.iter() {
                if let Some(target) = h.id_of(&config.without(v)) {
                    existential.push(target);
                }
            }
        }
        let components = graph.connected_components(&config);
        let mut universal = Vec::new();
        if components.len() >= 2 {
            for c in &components {
                universal.push(h.id_of(c).expect("components of a configuration are configurations"));
            }
        }
        h.set_arcs(id, existential, universal);
    }
    h.canonicalize();
    Ok(h)
}

/// `Q`: singletons `{v}` with `deg(v) < k`.
pub fn winning_configs<const W: usize>(graph: &Graph<W>, k: usize) -> Vec<VertexSet<W>> {
    (0..graph.n())
        .filter(|&v| graph.degree(v) < k)
        .map(VertexSet::singleton)
        .collect()
}

/// Ids of the configurations in `q` that are nodes of `h`.
pub fn target_ids<N: Copy + Eq + Hash + Ord>(h: &EdgeAltGraph<N>, q: &[N]) -> Vec<NodeId> {
    q.iter().filter_map(|c| h.id_of(c)).collect()
}

/// `B(Q)`: every configuration on an edge-alternating path into `q`, sorted
/// canonically.
pub fn winning_region<const W: usize>(h: &ConfigGraph<W>, q: &[VertexSet<W>]) -> Result<Vec<VertexSet<W>>, OracleError> {
    let reach = alternating_reach(h, &target_ids(h, q))?;
    let mut region: Vec<VertexSet<W>> = reach
        .iter()
        .enumerate()
        .filter(|(_, &r)| r)
        .map(|(id, _)| *h.node(id as NodeId))
        .collect();
    region.sort_unstable();
    Ok(region)
}

/// The subgraph of `h` induced by `keep`, arcs canonicalized.
pub fn induced_subgraph<N: Copy + Eq + Hash + Ord>(h: &EdgeAltGraph<N>, keep: &[N]) -> EdgeAltGraph<N> {
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    let mut out = EdgeAltGraph::new();
    for node in &sorted {
        out.add_node(*node);
    }
    for node in &sorted {
        let from_old = h.id_of(node).expect("kept node exists");
        let from_new = out.id_of(node).unwrap();
        for &to in h.existential(from_old) {
            if let Some(t) = out.id_of(h.node(to)) {
                out.add_existential(from_new, t);
            }
        }
        for &to in h.universal(from_old) {
            if let Some(t) = out.id_of(h.node(to)) {
                out.add_universal(from_new, t);
            }
        }
    }
    out.canonicalize();
    out
}

/// `C(n, r)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Size of the folklore arena for `k` searchers on `n` vertices:
/// `2 * C(n, k + 1)`.
pub fn arena_size(n: u64, k: u64) -> u128 {
    binomial(n, k + 1).saturating_mul(2)
}

/// `Σ_{i=1..k} C(|V_i|, i)` with `V_i = { v : deg(v) >= i }`, a lower bound on
/// the colosseum size.
pub fn colosseum_lower_bound<const W: usize>(graph: &Graph<W>, k: usize) -> u128 {
    (1..=k)
        .map(|i| {
            let high = (0..graph.n()).filter(|&v| graph.degree(v) >= i).count();
            binomial(high as u64, i as u64)
        })
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// `Σ_{i=1..k} C(n, i) * 4^i`, an upper bound on the colosseum size of a
/// connected claw-free graph.
pub fn claw_free_upper_bound(n: u64, k: u64) -> u128 {
    (1..=k)
        .map(|i| binomial(n, i).saturating_mul(4u128.saturating_pow(i as u32)))
        .fold(0u128, |a, b| a.saturating_add(b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConsistencyViolation {
    /// A winning node has a universal child outside the winning region.
    ChildOutsideRegion { node: NodeId, child: NodeId },
    /// No winning node has exactly this subset of some node's universal
    /// children as its universal neighborhood.
    MissingUnion { node: NodeId, subset: Vec<NodeId> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    /// No violation was found among the checked nodes.
    pub consistent: bool,
    /// Nodes whose subset condition was fully checked.
    pub checked: usize,
    /// Nodes whose universal fan-out exceeded the cap; their subset
    /// condition was skipped, so the report is partial when nonzero.
    pub skipped: usize,
    pub violation: Option<ConsistencyViolation>,
}

impl ConsistencyReport {
    pub fn is_complete(&self) -> bool {
        self.skipped == 0
    }
}

/// Checks universal consistency of `h` with respect to `targets`: every
/// winning non-target node has all universal children winning, and every
/// subset of at least two of them is exactly the universal neighborhood of
/// some winning node.
pub fn check_universal_consistency<N: Copy + Eq + Hash + Ord>(
    h: &EdgeAltGraph<N>,
    targets: &[NodeId],
    fanout_cap: usize,
) -> Result<ConsistencyReport, OracleError> {
    let region = alternating_reach(h, targets)?;
    let is_target = h.mark(targets);

    let mut by_children: HashMap<Vec<NodeId>, Vec<NodeId>> = HashMap::new();
    for id in 0..h.len() as NodeId {
        let children = h.universal(id);
        if !children.is_empty() {
            let mut key = children.to_vec();
            key.sort_unstable();
            by_children.entry(key).or_default().push(id);
        }
    }

    let mut report = ConsistencyReport {
        consistent: true,
        checked: 0,
        skipped: 0,
        violation: None,
    };
    for id in 0..h.len() as NodeId {
        if !region[id as usize] || is_target[id as usize] {
            continue;
        }
        let mut children = h.universal(id).to_vec();
        if children.is_empty() {
            continue;
        }
        children.sort_unstable();
        if let Some(&child) = children.iter().find(|&&c| !region[c as usize]) {
            report.consistent = false;
            report.violation = Some(ConsistencyViolation::ChildOutsideRegion { node: id, child });
            return Ok(report);
        }
        if children.len() > fanout_cap {
            report.skipped += 1;
            continue;
        }
        let r = children.len();
        for bits in 0u64..(1u64 << r) {
            if bits.count_ones() < 2 {
                continue;
            }
            let subset: Vec<NodeId> = (0..r).filter(|i| bits >> i & 1 == 1).map(|i| children[i]).collect();
            let realized = by_children
                .get(&subset)
                .is_some_and(|owners| owners.iter().any(|&o| region[o as usize]));
            if !realized {
                report.consistent = false;
                report.violation = Some(ConsistencyViolation::MissingUnion { node: id, subset });
                return Ok(report);
            }
        }
        report.checked += 1;
    }
    Ok(report)
}
