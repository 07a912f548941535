//! Parameter queries on top of the pit: weight schemes, single-k decisions,
//! iterative deepening, witness decompositions and their validation.
//!
//! With `k` searchers a query decides width `<= k - 1` for treewidth,
//! pathwidth, q-branched treewidth and dependency-treewidth, and depth
//! `<= k` for treedepth. [`compute`] hides this offset.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::ealt::{
    distance, extract_strategy, Acceptance, ArcWeight, NodeId, Step, StrategyDag, Weight, WeightScheme,
};
use crate::graph::Graph;
use crate::order::PartialOrder;
use crate::pid::{discover_with, DiscoverError, DiscoverOptions, Pit};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParameterKind {
    Treewidth,
    Pathwidth,
    Treedepth,
    QBranched,
    Dependency,
}

impl ParameterKind {
    /// Short name used on the command line and in output.
    pub fn name(self) -> &'static str {
        match self {
            ParameterKind::Treewidth => "tw",
            ParameterKind::Pathwidth => "pw",
            ParameterKind::Treedepth => "td",
            ParameterKind::QBranched => "twq",
            ParameterKind::Dependency => "dtw",
        }
    }

    /// Whether the value is a width (as opposed to treedepth's depth).
    pub fn is_width(self) -> bool {
        self != ParameterKind::Treedepth
    }
}

impl fmt::Display for ParameterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One parameter together with its extra argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Query<'a, const W: usize> {
    Treewidth,
    Pathwidth,
    Treedepth,
    /// At most `q` branching nodes on any root-leaf path.
    QBranched(u64),
    /// Searchers may only be placed on minimal contaminated vertices.
    Dependency(&'a PartialOrder<W>),
}

impl<const W: usize> Query<'_, W> {
    pub fn kind(&self) -> ParameterKind {
        match self {
            Query::Treewidth => ParameterKind::Treewidth,
            Query::Pathwidth => ParameterKind::Pathwidth,
            Query::Treedepth => ParameterKind::Treedepth,
            Query::QBranched(_) => ParameterKind::QBranched,
            Query::Dependency(_) => ParameterKind::Dependency,
        }
    }
}

/// The weight scheme deciding `query` on `pit(G, k)`.
pub fn scheme_for<'a, const W: usize>(query: &Query<'a, W>, k: usize, pit: &'a Pit<W>) -> WeightScheme<'a> {
    let zero = Weight::ZERO;
    match *query {
        Query::Treewidth => WeightScheme::constant(zero, zero, zero, Acceptance::Finite),
        Query::Pathwidth => WeightScheme::constant(zero, Weight::Infinite, zero, Acceptance::Zero),
        Query::Treedepth => WeightScheme::constant(Weight::ONE, zero, Weight::ONE, Acceptance::AtMost(k as u64)),
        Query::QBranched(q) => WeightScheme::constant(zero, Weight::ONE, zero, Acceptance::AtMost(q)),
        Query::Dependency(order) => WeightScheme {
            existential: ArcWeight::PerArc(Box::new(move |from: NodeId, to: NodeId| {
                let config = pit.config(from);
                let placed = (*config - *pit.config(to)).first().expect("fly arcs remove one vertex");
                if order.predecessors(placed).is_disjoint(config) {
                    Weight::ZERO
                } else {
                    Weight::Infinite
                }
            })),
            universal: ArcWeight::Constant(zero),
            terminal: zero,
            acceptance: Acceptance::Finite,
        },
    }
}

/// Result of one single-k decision.
pub struct Decision<const W: usize> {
    pub k: usize,
    pub winnable: bool,
    /// Distance label of `V(G)`, `Infinite` when it is not in the pit.
    pub distance: Weight,
    /// Present iff `winnable`.
    pub strategy: Option<StrategyDag>,
    pub pit: Pit<W>,
}

/// Decides `query` with `k` searchers.
pub fn decide<const W: usize>(
    graph: &Graph<W>,
    k: usize,
    query: &Query<'_, W>,
    options: DiscoverOptions,
) -> Result<Decision<W>, DiscoverError> {
    let pit = discover_with(graph, k, options)?;
    let Some(start) = pit.start() else {
        return Ok(Decision {
            k,
            winnable: false,
            distance: Weight::Infinite,
            strategy: None,
            pit,
        });
    };
    let targets = pit.targets();
    let (distance_at_start, strategy) = {
        let scheme = scheme_for(query, k, &pit);
        let labels = distance(pit.graph(), &targets, &scheme).expect("the pit is acyclic");
        let d = labels[start as usize];
        let strategy = if scheme.acceptance.accepts(d) {
            Some(extract_strategy(pit.graph(), start, &targets, &scheme, &labels).expect("labels are consistent"))
        } else {
            None
        };
        (d, strategy)
    };
    Ok(Decision {
        k,
        winnable: strategy.is_some(),
        distance: distance_at_start,
        strategy,
        pit,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComputeError {
    EmptyGraph,
    /// Discovery ran out of memory; the parameter is at least `lower_bound`.
    BudgetExceeded { lower_bound: usize, k: usize, source: DiscoverError },
}

impl fmt::Display for ComputeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComputeError::EmptyGraph => f.write_str("graph has no vertices"),
            ComputeError::BudgetExceeded { lower_bound, k, source } => {
                write!(f, "{source} at k = {k}; proven lower bound {lower_bound}")
            }
        }
    }
}

impl core::error::Error for ComputeError {}

/// Exact value with a validated witness.
pub struct Solution<const W: usize> {
    pub kind: ParameterKind,
    pub value: usize,
    /// Smallest accepting searcher count.
    pub k: usize,
    pub witness: TreeDecomposition<W>,
    pub pit_size: usize,
}

/// Iterative deepening over `k`, starting at one more than the minimum
/// degree (a lower bound for every supported parameter).
pub fn compute<const W: usize>(
    graph: &Graph<W>,
    query: &Query<'_, W>,
    options: DiscoverOptions,
) -> Result<Solution<W>, ComputeError> {
    if graph.n() == 0 {
        return Err(ComputeError::EmptyGraph);
    }
    let kind = query.kind();
    let value_for = |k: usize| if kind.is_width() { k - 1 } else { k };
    let start = graph.min_degree() + 1;
    for k in start..=graph.n() {
        let decision = decide(graph, k, query, options).map_err(|source| ComputeError::BudgetExceeded {
            lower_bound: value_for(k),
            k,
            source,
        })?;
        if let Some(strategy) = &decision.strategy {
            let witness = decomposition_from_strategy(graph, &decision.pit, strategy, kind);
            return Ok(Solution {
                kind,
                value: value_for(k),
                k,
                witness,
                pit_size: decision.pit.len(),
            });
        }
    }
    unreachable!("n searchers always win every supported game")
}

/// Rooted tree (parent array) with a bag per node. Node `0` is the root and
/// every parent precedes its children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition<const W: usize> {
    parent: Vec<Option<usize>>,
    bags: Vec<VertexSet<W>>,
}

impl<const W: usize> TreeDecomposition<W> {
    /// Builds a decomposition from raw parts without checking anything;
    /// use [`validate_decomposition`] on untrusted input.
    pub fn from_parts(parent: Vec<Option<usize>>, bags: Vec<VertexSet<W>>) -> Self {
        assert_eq!(parent.len(), bags.len());
        TreeDecomposition { parent, bags }
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn bag(&self, node: usize) -> &VertexSet<W> {
        &self.bags[node]
    }

    pub fn bags(&self) -> &[VertexSet<W>] {
        &self.bags
    }

    /// Largest bag size minus one (0 for no bags).
    pub fn width(&self) -> usize {
        self.bags.iter().map(VertexSet::len).max().unwrap_or(1).saturating_sub(1)
    }

    /// Tree edges `(parent, child)`, ordered by child.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent.iter().enumerate().filter_map(|(c, p)| p.map(|p| (p, c)))
    }

    fn push(&mut self, parent: Option<usize>, bag: VertexSet<W>) -> usize {
        self.parent.push(parent);
        self.bags.push(bag);
        self.bags.len() - 1
    }
}

/// Rooted forest on the vertices where every edge joins an ancestor to a
/// descendant; its height is the treedepth it certifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationForest {
    parent: Vec<Option<usize>>,
}

impl EliminationForest {
    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Number of vertices on the longest root-leaf path.
    pub fn height(&self) -> usize {
        (0..self.parent.len()).map(|v| self.depth_of(v)).max().unwrap_or(0)
    }

    fn depth_of(&self, mut v: usize) -> usize {
        let mut d = 1;
        while let Some(p) = self.parent[v] {
            d += 1;
            v = p;
        }
        d
    }

    /// Nested-bag form: one node per vertex with bag `{v}` plus all of its
    /// ancestors, under an extra empty root when the forest has several
    /// trees.
    pub fn to_nested<const W: usize>(&self) -> TreeDecomposition<W> {
        let n = self.parent.len();
        let mut children: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
        let mut roots = Vec::new();
        for v in 0..n {
            match self.parent[v] {
                Some(p) => children[p].push(v),
                None => roots.push(v),
            }
        }
        let mut out = TreeDecomposition::from_parts(Vec::new(), Vec::new());
        let top = if roots.len() > 1 {
            Some(out.push(None, VertexSet::empty()))
        } else {
            None
        };
        let mut stack: Vec<(usize, Option<usize>)> = roots.iter().rev().map(|&r| (r, top)).collect();
        while let Some((v, parent)) = stack.pop() {
            let above = parent.map_or(VertexSet::empty(), |p| out.bags[p]);
            let node = out.push(parent, above.with(v));
            stack.extend(children[v].iter().rev().map(|&c| (c, Some(node))));
        }
        out
    }
}

/// The elimination forest read off a treedepth strategy: each placed vertex
/// hangs below the previously placed one and universal moves fork.
pub fn elimination_forest<const W: usize>(graph: &Graph<W>, pit: &Pit<W>, strategy: &StrategyDag) -> EliminationForest {
    let mut parent = alloc::vec![None; graph.n()];
    let mut stack: Vec<(NodeId, Option<usize>)> = alloc::vec![(strategy.root(), None)];
    while let Some((id, last)) = stack.pop() {
        let config = pit.config(id);
        match strategy.step(id).expect("strategy covers its nodes") {
            Step::Terminal => {
                for v in config.iter() {
                    parent[v] = last;
                }
            }
            Step::Existential(child) => {
                let placed = (*config - *pit.config(*child)).first().expect("fly arcs remove one vertex");
                parent[placed] = last;
                stack.push((*child, Some(placed)));
            }
            Step::Universal(children) => {
                stack.extend(children.iter().rev().map(|&c| (c, last)));
            }
        }
    }
    EliminationForest { parent }
}

/// Turns a strategy on `pit` into a decomposition. A fly-move at `C`
/// placing `v` yields the bag `N(C) ∪ {v}`, a terminal `{v}` yields
/// `N({v}) ∪ {v}`, and a reveal at `C` yields the bag `N(C)` with one
/// subtree per component. Treedepth witnesses come out in nested-bag form.
pub fn decomposition_from_strategy<const W: usize>(
    graph: &Graph<W>,
    pit: &Pit<W>,
    strategy: &StrategyDag,
    kind: ParameterKind,
) -> TreeDecomposition<W> {
    if kind == ParameterKind::Treedepth {
        return elimination_forest(graph, pit, strategy).to_nested();
    }
    let mut out = TreeDecomposition::from_parts(Vec::new(), Vec::new());
    let mut stack: Vec<(NodeId, Option<usize>)> = alloc::vec![(strategy.root(), None)];
    while let Some((id, parent)) = stack.pop() {
        let config = pit.config(id);
        let separator = *pit.separator(id);
        match strategy.step(id).expect("strategy covers its nodes") {
            Step::Terminal => {
                out.push(parent, separator | *config);
            }
            Step::Existential(child) => {
                let placed = (*config - *pit.config(*child)).first().expect("fly arcs remove one vertex");
                let node = out.push(parent, separator.with(placed));
                stack.push((*child, Some(node)));
            }
            Step::Universal(children) => {
                let node = out.push(parent, separator);
                stack.extend(children.iter().rev().map(|&c| (c, Some(node))));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionViolation {
    NoBags,
    /// Not exactly one root, a parent out of range, or a cycle.
    NotATree,
    /// Node `0` is not the root or some parent does not precede its child.
    NotPreordered,
    BagVertexOutOfRange { node: usize, vertex: usize },
    VertexMissing(usize),
    VertexDisconnected(usize),
    EdgeUncovered(usize, usize),
    NotAPath,
    NotNested { parent: usize, child: usize },
    TooManyBranches { count: usize, q: u64 },
    /// `u` enters the tree strictly above `v` although `v ⋖ u`.
    OrderViolated { u: usize, v: usize },
}

impl fmt::Display for DecompositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DecompositionViolation::*;
        // vertices and bags are reported 1-based, as in the file formats
        match *self {
            NoBags => f.write_str("decomposition has no bags"),
            NotATree => f.write_str("nodes do not form a rooted tree"),
            NotPreordered => f.write_str("parents must precede their children"),
            BagVertexOutOfRange { node, vertex } => write!(f, "bag {} holds unknown vertex {}", node + 1, vertex + 1),
            VertexMissing(v) => write!(f, "vertex {} is in no bag", v + 1),
            VertexDisconnected(v) => write!(f, "bags holding vertex {} are not connected", v + 1),
            EdgeUncovered(u, v) => write!(f, "edge {} {} is in no bag", u + 1, v + 1),
            NotAPath => f.write_str("tree is not a path"),
            NotNested { parent, child } => write!(f, "bag {} is not a proper superset of bag {}", child + 1, parent + 1),
            TooManyBranches { count, q } => write!(f, "{count} branching nodes on one root-leaf path, at most {q} allowed"),
            OrderViolated { u, v } => write!(f, "vertex {} is introduced above vertex {} but {} < {}", u + 1, v + 1, v + 1, u + 1),
        }
    }
}

/// Outcome of [`validate_decomposition`]. The measures are filled in
/// whenever the tree structure itself is sound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub width: usize,
    /// Nonempty-bag nodes on the longest root-leaf path.
    pub depth: usize,
    /// Nodes on the longest root-leaf path.
    pub height: usize,
    /// `max(width, height)`.
    pub mixed_depth: usize,
    /// Most branching nodes on any root-leaf path.
    pub branch_count: usize,
    pub violations: Vec<DecompositionViolation>,
}

/// Checks the tree decomposition axioms plus the shape required by `query`.
pub fn validate_decomposition<const W: usize>(
    graph: &Graph<W>,
    td: &TreeDecomposition<W>,
    query: &Query<'_, W>,
) -> ValidationReport {
    let mut report = ValidationReport {
        valid: false,
        width: td.width(),
        depth: 0,
        height: 0,
        mixed_depth: 0,
        branch_count: 0,
        violations: Vec::new(),
    };
    let m = td.len();
    if m == 0 {
        report.violations.push(DecompositionViolation::NoBags);
        report.valid = graph.n() == 0;
        if report.valid {
            report.violations.clear();
        }
        return report;
    }
    let roots = td.parent.iter().filter(|p| p.is_none()).count();
    if roots != 1 || td.parent.iter().any(|p| p.is_some_and(|p| p >= m)) {
        report.violations.push(DecompositionViolation::NotATree);
        return report;
    }
    if td.parent[0].is_some() || td.parent.iter().enumerate().any(|(c, p)| p.is_some_and(|p| p >= c)) {
        report.violations.push(DecompositionViolation::NotPreordered);
        return report;
    }

    let mut child_count = alloc::vec![0usize; m];
    for (p, _) in td.edges() {
        child_count[p] += 1;
    }
    // parents precede children, so one forward pass computes path measures
    let mut height = alloc::vec![0usize; m];
    let mut depth = alloc::vec![0usize; m];
    let mut branches = alloc::vec![0usize; m];
    for x in 0..m {
        let (h, d, b) = match td.parent[x] {
            None => (0, 0, 0),
            Some(p) => (height[p], depth[p], branches[p]),
        };
        height[x] = h + 1;
        depth[x] = d + usize::from(!td.bags[x].is_empty());
        branches[x] = b + usize::from(child_count[x] > 1);
    }
    report.height = height.iter().copied().max().unwrap_or(0);
    report.depth = depth.iter().copied().max().unwrap_or(0);
    report.branch_count = branches.iter().copied().max().unwrap_or(0);
    report.mixed_depth = report.width.max(report.height);

    let n = graph.n();
    for (x, bag) in td.bags.iter().enumerate() {
        if let Some(v) = bag.iter().find(|&v| v >= n) {
            report.violations.push(DecompositionViolation::BagVertexOutOfRange { node: x, vertex: v });
        }
    }

    // a vertex's nodes are connected iff exactly one of them has its parent
    // outside the set; that node is the topmost occurrence
    let mut top: Vec<Option<usize>> = alloc::vec![None; n];
    let mut tops = alloc::vec![0usize; n];
    for x in 0..m {
        for v in td.bags[x].iter().filter(|&v| v < n) {
            let parent_has = td.parent[x].is_some_and(|p| td.bags[p].contains(v));
            if !parent_has {
                tops[v] += 1;
                if top[v].is_none() {
                    top[v] = Some(x);
                }
            }
        }
    }
    for v in 0..n {
        match tops[v] {
            0 => report.violations.push(DecompositionViolation::VertexMissing(v)),
            1 => {}
            _ => report.violations.push(DecompositionViolation::VertexDisconnected(v)),
        }
    }
    for (u, v) in graph.edges() {
        if !td.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
            report.violations.push(DecompositionViolation::EdgeUncovered(u, v));
        }
    }

    match *query {
        Query::Pathwidth => {
            if child_count.iter().any(|&c| c > 1) {
                report.violations.push(DecompositionViolation::NotAPath);
            }
        }
        Query::Treedepth => {
            for (p, c) in td.edges() {
                let (outer, inner) = (&td.bags[p], &td.bags[c]);
                if !(outer.is_subset(inner) && outer.len() < inner.len()) {
                    report.violations.push(DecompositionViolation::NotNested { parent: p, child: c });
                }
            }
        }
        Query::QBranched(q) => {
            if report.branch_count as u64 > q {
                report.violations.push(DecompositionViolation::TooManyBranches {
                    count: report.branch_count,
                    q,
                });
            }
        }
        Query::Dependency(order) => {
            if order.n() == n {
                'pairs: for (v, u) in order.pairs() {
                    // v ⋖ u: u must not enter strictly above v
                    let (Some(fu), Some(mut x)) = (top[u], top[v]) else { continue };
                    while let Some(p) = td.parent[x] {
                        if p == fu {
                            report.violations.push(DecompositionViolation::OrderViolated { u, v });
                            continue 'pairs;
                        }
                        x = p;
                    }
                }
            }
        }
        Query::Treewidth => {}
    }

    report.valid = report.violations.is_empty();
    report
}
