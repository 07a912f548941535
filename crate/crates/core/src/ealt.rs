//! Edge-alternating graphs and weighted distance queries on them.
//!
//! An edge-alternating graph carries two arc relations over one node set:
//! existential arcs, of which a path picks one, and universal arcs, all of
//! which a path must follow. [`distance`] evaluates the min/max recursion
//! over an acyclic instance in one backward sweep, and [`extract_strategy`]
//! backtracks the labels into an explicit [`StrategyDag`].

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;
use core::hash::Hash;
use core::ops::Add;

use hashbrown::HashMap;

pub type NodeId = u32;

/// Extended non-negative integer; `Infinite` absorbs addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Weight {
    Finite(u64),
    Infinite,
}

impl Weight {
    pub const ZERO: Weight = Weight::Finite(0);
    pub const ONE: Weight = Weight::Finite(1);

    pub fn is_finite(self) -> bool {
        matches!(self, Weight::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Weight::Finite(x) => Some(x),
            Weight::Infinite => None,
        }
    }
}

impl Add for Weight {
    type Output = Weight;
    #[inline]
    fn add(self, rhs: Weight) -> Weight {
        match (self, rhs) {
            (Weight::Finite(a), Weight::Finite(b)) => match a.checked_add(b) {
                Some(s) => Weight::Finite(s),
                None => Weight::Infinite,
            },
            _ => Weight::Infinite,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(x) => write!(f, "{x}"),
            Weight::Infinite => f.write_str("inf"),
        }
    }
}

/// Digraph with existential and universal arcs. Nodes carry a payload `N`
/// (a configuration for colosseum and pit) that is unique per node and
/// whose order is used for every tie-break.
#[derive(Clone)]
pub struct EdgeAltGraph<N> {
    nodes: Vec<N>,
    index: HashMap<N, NodeId>,
    existential: Vec<Vec<NodeId>>,
    universal: Vec<Vec<NodeId>>,
}

impl<N: Copy + Eq + Hash + Ord + fmt::Debug> fmt::Debug for EdgeAltGraph<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EdgeAltGraph")
            .field("nodes", &self.nodes)
            .field("existential", &self.existential_arcs())
            .field("universal", &self.universal_arcs())
            .finish()
    }
}

impl<N: Copy + Eq + Hash + Ord> Default for EdgeAltGraph<N> {
    fn default() -> Self {
        Self::new()
    }
}

impl<N: Copy + Eq + Hash + Ord> EdgeAltGraph<N> {
    pub fn new() -> Self {
        EdgeAltGraph {
            nodes: Vec::new(),
            index: HashMap::new(),
            existential: Vec::new(),
            universal: Vec::new(),
        }
    }

    /// Adds `node` if absent; returns its id and whether it was new.
    pub fn add_node(&mut self, node: N) -> (NodeId, bool) {
        if let Some(&id) = self.index.get(&node) {
            return (id, false);
        }
        let id = self.nodes.len() as NodeId;
        self.nodes.push(node);
        self.index.insert(node, id);
        self.existential.push(Vec::new());
        self.universal.push(Vec::new());
        (id, true)
    }

    pub fn add_existential(&mut self, from: NodeId, to: NodeId) {
        self.existential[from as usize].push(to);
    }

    pub fn add_universal(&mut self, from: NodeId, to: NodeId) {
        self.universal[from as usize].push(to);
    }

    /// Replaces the arc lists of `from` wholesale.
    pub(crate) fn set_arcs(&mut self, from: NodeId, existential: Vec<NodeId>, universal: Vec<NodeId>) {
        self.existential[from as usize] = existential;
        self.universal[from as usize] = universal;
    }

    pub(crate) fn reserve(&mut self, additional: usize) {
        self.nodes.reserve(additional);
        self.index.reserve(additional);
        self.existential.reserve(additional);
        self.universal.reserve(additional);
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    #[inline]
    pub fn node(&self, id: NodeId) -> &N {
        &self.nodes[id as usize]
    }

    pub fn nodes(&self) -> &[N] {
        &self.nodes
    }

    #[inline]
    pub fn id_of(&self, node: &N) -> Option<NodeId> {
        self.index.get(node).copied()
    }

    pub fn contains(&self, node: &N) -> bool {
        self.index.contains_key(node)
    }

    #[inline]
    pub fn existential(&self, id: NodeId) -> &[NodeId] {
        &self.existential[id as usize]
    }

    #[inline]
    pub fn universal(&self, id: NodeId) -> &[NodeId] {
        &self.universal[id as usize]
    }

    pub fn existential_arc_count(&self) -> usize {
        self.existential.iter().map(Vec::len).sum()
    }

    pub fn universal_arc_count(&self) -> usize {
        self.universal.iter().map(Vec::len).sum()
    }

    pub fn is_sink(&self, id: NodeId) -> bool {
        self.existential(id).is_empty() && self.universal(id).is_empty()
    }

    /// Sorts every arc list by target payload, giving a representation that
    /// is independent of arc insertion order.
    pub fn canonicalize(&mut self) {
        let nodes = &self.nodes;
        for list in self.existential.iter_mut().chain(self.universal.iter_mut()) {
            list.sort_unstable_by(|a, b| nodes[*a as usize].cmp(&nodes[*b as usize]));
            list.dedup();
        }
    }

    /// Existential arcs as payload pairs, sorted.
    pub fn existential_arcs(&self) -> Vec<(N, N)> {
        self.arc_pairs(&self.existential)
    }

    /// Universal arcs as payload pairs, sorted.
    pub fn universal_arcs(&self) -> Vec<(N, N)> {
        self.arc_pairs(&self.universal)
    }

    fn arc_pairs(&self, lists: &[Vec<NodeId>]) -> Vec<(N, N)> {
        let mut out: Vec<(N, N)> = lists
            .iter()
            .enumerate()
            .flat_map(|(from, list)| {
                list.iter()
                    .map(move |&to| (self.nodes[from], self.nodes[to as usize]))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Membership vector for a list of node ids.
    pub fn mark(&self, ids: &[NodeId]) -> Vec<bool> {
        let mut marked = alloc::vec![false; self.len()];
        for &id in ids {
            marked[id as usize] = true;
        }
        marked
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleError {
    /// Nodes that could not be ordered; all lie on or behind a cycle.
    pub unordered: usize,
}

impl fmt::Display for CycleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "edge-alternating graph has a cycle ({} nodes unordered)",
            self.unordered
        )
    }
}

impl core::error::Error for CycleError {}

/// Kahn ordering over `E ∪ A`: every arc points forward. Among the nodes
/// ready at any step the smallest payload goes first.
pub fn topological_order<N>(graph: &EdgeAltGraph<N>) -> Result<Vec<NodeId>, CycleError>
where
    N: Copy + Eq + Hash + Ord,
{
    let n = graph.len();
    let mut indegree = alloc::vec![0u32; n];
    for id in 0..n as NodeId {
        for &to in graph.existential(id).iter().chain(graph.universal(id)) {
            indegree[to as usize] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<(N, NodeId)>> = (0..n as NodeId)
        .filter(|&id| indegree[id as usize] == 0)
        .map(|id| Reverse((*graph.node(id), id)))
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse((_, id))) = ready.pop() {
        order.push(id);
        for &to in graph.existential(id).iter().chain(graph.universal(id)) {
            indegree[to as usize] -= 1;
            if indegree[to as usize] == 0 {
                ready.push(Reverse((*graph.node(to), to)));
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err(CycleError {
            unordered: n - order.len(),
        })
    }
}

/// Nodes with an edge-alternating path into `targets`, as a membership
/// vector. A node qualifies if it is a target, has an existential child that
/// qualifies, or has a nonempty universal neighborhood that qualifies
/// entirely.
pub fn alternating_reach<N>(graph: &EdgeAltGraph<N>, targets: &[NodeId]) -> Result<Vec<bool>, CycleError>
where
    N: Copy + Eq + Hash + Ord,
{
    let order = topological_order(graph)?;
    let mut reach = graph.mark(targets);
    for &id in order.iter().rev() {
        let v = id as usize;
        if reach[v] {
            continue;
        }
        let universal = graph.universal(id);
        reach[v] = graph.existential(id).iter().any(|&w| reach[w as usize])
            || (!universal.is_empty() && universal.iter().all(|&w| reach[w as usize]));
    }
    Ok(reach)
}

/// Weight of an arc, either constant or computed per arc.
pub enum ArcWeight<'a> {
    Constant(Weight),
    PerArc(Box<dyn Fn(NodeId, NodeId) -> Weight + 'a>),
}

impl ArcWeight<'_> {
    #[inline]
    pub fn weight(&self, from: NodeId, to: NodeId) -> Weight {
        match self {
            ArcWeight::Constant(w) => *w,
            ArcWeight::PerArc(f) => f(from, to),
        }
    }
}

impl fmt::Debug for ArcWeight<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcWeight::Constant(w) => write!(f, "Constant({w})"),
            ArcWeight::PerArc(_) => f.write_str("PerArc(..)"),
        }
    }
}

/// Predicate on the final distance at the start node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Acceptance {
    Finite,
    Zero,
    AtMost(u64),
}

impl Acceptance {
    pub fn accepts(self, d: Weight) -> bool {
        match (self, d) {
            (_, Weight::Infinite) => false,
            (Acceptance::Finite, _) => true,
            (Acceptance::Zero, Weight::Finite(x)) => x == 0,
            (Acceptance::AtMost(bound), Weight::Finite(x)) => x <= bound,
        }
    }
}

/// Arc weights, terminal constant and acceptance predicate of one query.
#[derive(Debug)]
pub struct WeightScheme<'a> {
    pub existential: ArcWeight<'a>,
    pub universal: ArcWeight<'a>,
    pub terminal: Weight,
    pub acceptance: Acceptance,
}

impl WeightScheme<'_> {
    pub fn constant(existential: Weight, universal: Weight, terminal: Weight, acceptance: Acceptance) -> Self {
        WeightScheme {
            existential: ArcWeight::Constant(existential),
            universal: ArcWeight::Constant(universal),
            terminal,
            acceptance,
        }
    }
}

/// Distance labels `d(v, Q)` for every node.
///
/// Targets get the terminal constant. Any other node takes the smaller of
/// its best existential option and its worst universal option; an empty
/// universal neighborhood counts as `Infinite`, so a sink outside the target
/// set is unreachable.
pub fn distance<N>(
    graph: &EdgeAltGraph<N>,
    targets: &[NodeId],
    scheme: &WeightScheme<'_>,
) -> Result<Vec<Weight>, CycleError>
where
    N: Copy + Eq + Hash + Ord,
{
    let order = topological_order(graph)?;
    let is_target = graph.mark(targets);
    let mut label = alloc::vec![Weight::Infinite; graph.len()];
    for &id in order.iter().rev() {
        label[id as usize] = node_label(graph, id, &is_target, &label, scheme);
    }
    Ok(label)
}

#[inline]
fn node_label<N>(
    graph: &EdgeAltGraph<N>,
    id: NodeId,
    is_target: &[bool],
    label: &[Weight],
    scheme: &WeightScheme<'_>,
) -> Weight
where
    N: Copy + Eq + Hash + Ord,
{
    if is_target[id as usize] {
        return scheme.terminal;
    }
    let best_existential = best_existential(graph, id, label, scheme).map_or(Weight::Infinite, |(_, w)| w);
    let worst_universal = worst_universal(graph, id, label, scheme);
    best_existential.min(worst_universal)
}

/// Minimizing existential child and its value; ties go to the smaller payload.
fn best_existential<N>(
    graph: &EdgeAltGraph<N>,
    id: NodeId,
    label: &[Weight],
    scheme: &WeightScheme<'_>,
) -> Option<(NodeId, Weight)>
where
    N: Copy + Eq + Hash + Ord,
{
    let mut best: Option<(NodeId, Weight)> = None;
    for &w in graph.existential(id) {
        let value = label[w as usize] + scheme.existential.weight(id, w);
        best = match best {
            None => Some((w, value)),
            Some((b, bv)) => {
                if value < bv || (value == bv && graph.node(w) < graph.node(b)) {
                    Some((w, value))
                } else {
                    Some((b, bv))
                }
            }
        };
    }
    best
}

fn worst_universal<N>(graph: &EdgeAltGraph<N>, id: NodeId, label: &[Weight], scheme: &WeightScheme<'_>) -> Weight
where
    N: Copy + Eq + Hash + Ord,
{
    let universal = graph.universal(id);
    if universal.is_empty() {
        return Weight::Infinite;
    }
    universal
        .iter()
        .map(|&w| label[w as usize] + scheme.universal.weight(id, w))
        .max()
        .unwrap_or(Weight::Infinite)
}

/// The move a strategy takes at one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// The node is a target.
    Terminal,
    /// Follow one existential arc.
    Existential(NodeId),
    /// Follow every universal arc.
    Universal(Vec<NodeId>),
}

/// An edge-alternating path from `root` into the targets, with the distance
/// label of each node it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyDag {
    root: NodeId,
    steps: BTreeMap<NodeId, (Step, Weight)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyError {
    /// The start node has infinite distance.
    Unreachable,
    /// Labels do not satisfy the distance recursion at this node.
    InconsistentLabel(NodeId),
}

impl fmt::Display for StrategyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyError::Unreachable => f.write_str("no strategy: start node has infinite distance"),
            StrategyError::InconsistentLabel(id) => write!(f, "labels inconsistent at node {id}"),
        }
    }
}

impl core::error::Error for StrategyError {}

/// Backtracks distance labels from `start`. At each node the existential
/// move is taken when it attains the label; otherwise all universal arcs.
pub fn extract_strategy<N>(
    graph: &EdgeAltGraph<N>,
    start: NodeId,
    targets: &[NodeId],
    scheme: &WeightScheme<'_>,
    labels: &[Weight],
) -> Result<StrategyDag, StrategyError>
where
    N: Copy + Eq + Hash + Ord,
{
    if !labels[start as usize].is_finite() {
        return Err(StrategyError::Unreachable);
    }
    let is_target = graph.mark(targets);
    let mut steps = BTreeMap::new();
    let mut stack = alloc::vec![start];
    while let Some(id) = stack.pop() {
        if steps.contains_key(&id) {
            continue;
        }
        let d = labels[id as usize];
        let step = if is_target[id as usize] {
            Step::Terminal
        } else {
            match best_existential(graph, id, labels, scheme) {
                Some((child, value)) if value == d && d.is_finite() => {
                    stack.push(child);
                    Step::Existential(child)
                }
                _ => {
                    let universal = graph.universal(id);
                    if universal.is_empty() || worst_universal(graph, id, labels, scheme) != d || !d.is_finite() {
                        return Err(StrategyError::InconsistentLabel(id));
                    }
                    stack.extend_from_slice(universal);
                    Step::Universal(universal.to_vec())
                }
            }
        };
        steps.insert(id, (step, d));
    }
    Ok(StrategyDag { root: start, steps })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyViolation {
    MissingNode(NodeId),
    TerminalNotTarget(NodeId),
    NotAnExistentialArc(NodeId, NodeId),
    UniversalMismatch(NodeId),
    /// The heaviest root-to-target path exceeds the root label.
    PathTooHeavy { heaviest: Weight, label: Weight },
}

impl StrategyDag {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn step(&self, id: NodeId) -> Option<&Step> {
        self.steps.get(&id).map(|(s, _)| s)
    }

    pub fn label(&self, id: NodeId) -> Option<Weight> {
        self.steps.get(&id).map(|&(_, w)| w)
    }

    pub fn root_label(&self) -> Weight {
        self.steps[&self.root].1
    }

    /// Node ids in ascending order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.steps.keys().copied()
    }

    /// Largest number of universal arcs on any root-to-target path.
    pub fn max_universal_arcs(&self) -> usize {
        self.longest(|_| 1, |_| 0, 0)
    }

    /// Largest number of existential arcs on any root-to-target path.
    pub fn max_existential_arcs(&self) -> usize {
        self.longest(|_| 0, |_| 1, 0)
    }

    fn longest(&self, universal: impl Fn(NodeId) -> usize, existential: impl Fn(NodeId) -> usize, terminal: usize) -> usize {
        let mut memo: BTreeMap<NodeId, usize> = BTreeMap::new();
        self.post_order(|id, step| {
            let value = match step {
                Step::Terminal => terminal,
                Step::Existential(c) => existential(id) + memo[c],
                Step::Universal(cs) => universal(id) + cs.iter().map(|c| memo[c]).max().unwrap_or(0),
            };
            memo.insert(id, value);
        });
        memo[&self.root]
    }

    /// Visits every node after all of its children.
    fn post_order(&self, mut visit: impl FnMut(NodeId, &Step)) {
        let mut done: BTreeMap<NodeId, bool> = BTreeMap::new();
        let mut stack: Vec<(NodeId, bool)> = alloc::vec![(self.root, false)];
        while let Some((id, expanded)) = stack.pop() {
            if done.contains_key(&id) {
                continue;
            }
            let Some((step, _)) = self.steps.get(&id) else { continue };
            if expanded {
                done.insert(id, true);
                visit(id, step);
                continue;
            }
            stack.push((id, true));
            match step {
                Step::Terminal => {}
                Step::Existential(c) => stack.push((*c, false)),
                Step::Universal(cs) => stack.extend(cs.iter().map(|&c| (c, false))),
            }
        }
    }

    /// Checks that the node set is an edge-alternating path into `targets`
    /// and that no root-to-target path outweighs the root label.
    pub fn validate<N>(
        &self,
        graph: &EdgeAltGraph<N>,
        targets: &[NodeId],
        scheme: &WeightScheme<'_>,
    ) -> Result<(), StrategyViolation>
    where
        N: Copy + Eq + Hash + Ord,
    {
        let is_target = graph.mark(targets);
        for (&id, (step, _)) in &self.steps {
            match step {
                Step::Terminal => {
                    if !is_target[id as usize] {
                        return Err(StrategyViolation::TerminalNotTarget(id));
                    }
                }
                Step::Existential(c) => {
                    if !graph.existential(id).contains(c) {
                        return Err(StrategyViolation::NotAnExistentialArc(id, *c));
                    }
                    if !self.steps.contains_key(c) {
                        return Err(StrategyViolation::MissingNode(*c));
                    }
                }
                Step::Universal(cs) => {
                    let mut expected = graph.universal(id).to_vec();
                    let mut got = cs.clone();
                    expected.sort_unstable();
                    got.sort_unstable();
                    if expected.is_empty() || expected != got {
                        return Err(StrategyViolation::UniversalMismatch(id));
                    }
                    if let Some(missing) = cs.iter().find(|c| !self.steps.contains_key(c)) {
                        return Err(StrategyViolation::MissingNode(*missing));
                    }
                }
            }
        }
        let mut heaviest: BTreeMap<NodeId, Weight> = BTreeMap::new();
        self.post_order(|id, step| {
            let value = match step {
                Step::Terminal => scheme.terminal,
                Step::Existential(c) => heaviest[c] + scheme.existential.weight(id, *c),
                Step::Universal(cs) => cs
                    .iter()
                    .map(|c| heaviest[c] + scheme.universal.weight(id, *c))
                    .max()
                    .unwrap_or(Weight::Infinite),
            };
            heaviest.insert(id, value);
        });
        let label = self.root_label();
        let heaviest = heaviest[&self.root];
        if heaviest > label {
            return Err(StrategyViolation::PathTooHeavy { heaviest, label });
        }
        Ok(())
    }
}
