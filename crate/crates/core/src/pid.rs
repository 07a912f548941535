//! Positive-instance driven discovery of the pit.
//!
//! The pit is the colosseum restricted to the searchers' winning region.
//! [`discover`] builds it backwards from the winning singletons without ever
//! touching a losing configuration:
//!
//! 1. seed the queue with every `{v}` where one free searcher remains;
//! 2. for each dequeued `C`, undo fly-moves (`C ∪ {v}` for `v ∈ N(C)`, kept
//!    when at most `k - 1` searchers are needed) and undo reveal-moves (glue
//!    `C` to an already known `C'` that neither meets nor touches it, kept
//!    when the union needs at most `k` searchers);
//! 3. once the queue drains, add every colosseum arc between known
//!    configurations.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::ealt::NodeId;
use crate::graph::Graph;
use crate::oracle::ConfigGraph;
use crate::vertex_set::VertexSet;

/// Default cap on configuration storage.
pub const DEFAULT_MEMORY_BUDGET: usize = 2 << 30;

/// How reverse reveal-moves pick partners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GluePolicy {
    /// Like `NonAdjacent`, but a union is only formed by adding a connected
    /// configuration whose first vertex lies above the first vertex of every
    /// component of the other side. Each disconnected configuration then has
    /// exactly one way to be built. Same pit as `NonAdjacent`.
    #[default]
    Componentwise,
    /// Partners must be disjoint from `C` and have no edge to it.
    NonAdjacent,
    /// Partners need only be disjoint from `C`. This admits configurations
    /// outside the winning region and exists for comparison only.
    Disjoint,
}

/// How the reverse reveal scan walks the known configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RevealScan {
    /// Visit every known configuration.
    Linear,
    /// Visit configurations grouped by separator, skipping whole groups whose
    /// separator would overflow the budget. Offers the same unions in the
    /// same order as `Linear`.
    BySeparator,
    /// Per configuration, either look up every subset of the vertices outside
    /// `C ∪ N(C)` or fall back to `BySeparator`, whichever is cheaper. Same
    /// unions in the same order as `Linear`.
    #[default]
    Indexed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiscoverOptions {
    pub glue: GluePolicy,
    pub scan: RevealScan,
    /// Approximate byte budget for configuration storage.
    pub memory_budget: usize,
}

impl Default for DiscoverOptions {
    fn default() -> Self {
        DiscoverOptions {
            glue: GluePolicy::default(),
            scan: RevealScan::default(),
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

impl DiscoverOptions {
    /// Number of configurations that fit into the memory budget.
    pub fn max_configurations<const W: usize>(&self) -> usize {
        // configuration, separator, hash entry, group slot, origin, arc lists
        let per_config = 4 * core::mem::size_of::<VertexSet<W>>() + 96;
        (self.memory_budget / per_config).max(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiscoverError {
    /// The memory budget was exhausted after `discovered` configurations.
    BudgetExceeded { discovered: usize, limit: usize },
}

impl fmt::Display for DiscoverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiscoverError::BudgetExceeded { discovered, limit } => write!(
                f,
                "memory budget exhausted after {discovered} configurations (limit {limit})"
            ),
        }
    }
}

impl core::error::Error for DiscoverError {}

/// How a configuration entered the pit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    Seed,
    Fly,
    Reveal,
}

impl Origin {
    pub fn as_str(self) -> &'static str {
        match self {
            Origin::Seed => "seed",
            Origin::Fly => "fly",
            Origin::Reveal => "reveal",
        }
    }
}

/// Incremental state of one discovery run. Exposed so that the individual
/// steps can be driven and inspected; [`discover`] runs them all.
pub struct Discovery<'g, const W: usize> {
    graph: &'g Graph<W>,
    k: usize,
    options: DiscoverOptions,
    limit: usize,
    configs: Vec<VertexSet<W>>,
    separators: Vec<VertexSet<W>>,
    origins: Vec<Origin>,
    index: HashMap<VertexSet<W>, NodeId>,
    // first vertex of the last component, and whether there is only one;
    // kept for `Componentwise` only
    keys: Vec<u32>,
    connected: Vec<bool>,
    groups: Groups<W>,
    connected_groups: Groups<W>,
    head: usize,
    candidates: Vec<NodeId>,
}

impl<'g, const W: usize> Discovery<'g, W> {
    pub fn new(graph: &'g Graph<W>, k: usize, options: DiscoverOptions) -> Self {
        Discovery {
            graph,
            k,
            options,
            limit: options.max_configurations::<W>(),
            configs: Vec::new(),
            separators: Vec::new(),
            origins: Vec::new(),
            index: HashMap::new(),
            keys: Vec::new(),
            connected: Vec::new(),
            groups: Groups::default(),
            connected_groups: Groups::default(),
            head: 0,
            candidates: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn contains(&self, config: &VertexSet<W>) -> bool {
        self.index.contains_key(config)
    }

    /// Configurations discovered so far, in insertion order.
    pub fn configs(&self) -> &[VertexSet<W>] {
        &self.configs
    }

    /// Adds `config` if it is new and `|N(config)| <= threshold`. Returns
    /// whether it was added.
    pub fn insert(&mut self, config: VertexSet<W>, threshold: usize) -> Result<bool, DiscoverError> {
        let separator = self.graph.neighborhood(&config);
        self.insert_with(config, separator, threshold, Origin::Seed, None)
    }

    fn shape(&self, config: &VertexSet<W>) -> (u32, bool) {
        let mut rest = *config;
        let mut key = 0;
        let mut count = 0;
        while let Some(v) = rest.first() {
            rest -= self.graph.component_of(v, &rest);
            key = v as u32;
            count += 1;
        }
        (key, count == 1)
    }

    fn insert_with(
        &mut self,
        config: VertexSet<W>,
        separator: VertexSet<W>,
        threshold: usize,
        origin: Origin,
        shape: Option<(u32, bool)>,
    ) -> Result<bool, DiscoverError> {
        if separator.len() > threshold || self.index.contains_key(&config) {
            return Ok(false);
        }
        if self.configs.len() >= self.limit {
            return Err(DiscoverError::BudgetExceeded {
                discovered: self.configs.len(),
                limit: self.limit,
            });
        }
        let id = self.configs.len() as NodeId;
        self.configs.push(config);
        self.separators.push(separator);
        self.origins.push(origin);
        self.index.insert(config, id);
        let by_separator = self.options.scan != RevealScan::Linear;
        if self.options.glue == GluePolicy::Componentwise {
            let (key, connected) = shape.unwrap_or_else(|| self.shape(&config));
            self.keys.push(key);
            self.connected.push(connected);
            if connected && by_separator {
                self.connected_groups.add(separator, id);
            }
        }
        if by_separator {
            self.groups.add(separator, id);
        }
        Ok(true)
    }

    /// Phase I: every singleton with degree below `k`.
    pub fn seed(&mut self) -> Result<(), DiscoverError> {
        if self.k == 0 {
            return Ok(());
        }
        for v in 0..self.graph.n() {
            let config = VertexSet::singleton(v);
            let separator = *self.graph.neighbors(v);
            self.insert_with(config, separator, self.k - 1, Origin::Seed, Some((v as u32, true)))?;
        }
        Ok(())
    }

    /// Undoes fly-moves into the configuration `id`: offers `C ∪ {v}` for
    /// every `v ∈ N(C)` with threshold `k - 1`.
    pub fn reverse_fly_expand(&mut self, id: NodeId) -> Result<(), DiscoverError> {
        let config = self.configs[id as usize];
        let separator = self.separators[id as usize];
        let threshold = match self.k.checked_sub(1) {
            Some(t) => t,
            None => return Ok(()),
        };
        for v in separator.iter() {
            let grown = config.with(v);
            let grown_separator = (separator | *self.graph.neighbors(v)) - grown;
            self.insert_with(grown, grown_separator, threshold, Origin::Fly, None)?;
        }
        Ok(())
    }

    /// Undoes reveal-moves into the configuration `id`: offers `C ∪ C'` for
    /// every partner `C'` known when the scan starts, with threshold `k`.
    pub fn reverse_reveal_expand(&mut self, id: NodeId) -> Result<(), DiscoverError> {
        let i = id as usize;
        let config = self.configs[i];
        let separator = self.separators[i];
        let known = self.configs.len();
        if self.options.glue == GluePolicy::Disjoint {
            for j in 0..known {
                let partner = self.configs[j];
                if !partner.is_disjoint(&config) {
                    continue;
                }
                let union = config | partner;
                let union_separator = self.graph.neighborhood(&union);
                self.insert_with(union, union_separator, self.k, Origin::Reveal, None)?;
            }
            return Ok(());
        }
        let mut candidates = core::mem::take(&mut self.candidates);
        candidates.clear();
        self.collect_partners(i, known, &mut candidates);
        let mut result = Ok(());
        for &j in &candidates {
            let j = j as usize;
            // partners do not touch C, so the separators simply add up
            let union = config | self.configs[j];
            let union_separator = separator | self.separators[j];
            let shape = match self.options.glue {
                GluePolicy::Componentwise => Some((self.keys[i].max(self.keys[j]), false)),
                _ => None,
            };
            if let Err(e) = self.insert_with(union, union_separator, self.k, Origin::Reveal, shape) {
                result = Err(e);
                break;
            }
        }
        self.candidates = candidates;
        result
    }

    /// Known configurations below `known` that may be glued to `C = configs[i]`,
    /// in id order. Every scan returns the same list.
    fn collect_partners(&self, i: usize, known: usize, out: &mut Vec<NodeId>) {
        let config = self.configs[i];
        let separator = self.separators[i];
        let outside = !(config | separator) & VertexSet::full(self.graph.n());
        let k = self.k;
        let componentwise = self.options.glue == GluePolicy::Componentwise;
        let (key, connected) = if componentwise {
            (self.keys[i], self.connected[i])
        } else {
            (0, false)
        };
        // With componentwise gluing `C` either sits below a connected
        // partner that starts above all of its components, or, when `C` is
        // connected itself, above a partner whose components all start
        // below it.
        let fits = |j: usize| -> bool {
            self.configs[j].is_subset(&outside)
                && self.separators[j].union_len(&separator) <= k
                && (!componentwise || (self.connected[j] && self.keys[j] > key) || (connected && self.keys[j] < key))
        };
        let groups = if componentwise && !connected {
            &self.connected_groups
        } else {
            &self.groups
        };
        let scan = match self.options.scan {
            RevealScan::Indexed => {
                // walking the subsets of the free area costs a hash lookup
                // each; walking the groups costs a popcount each
                let free = if componentwise && !connected {
                    outside.iter().filter(|&v| v as u32 > key).count()
                } else {
                    outside.len()
                };
                if free < 32 && (1usize << free) < groups.list.len() / 8 {
                    RevealScan::Indexed
                } else {
                    RevealScan::BySeparator
                }
            }
            scan => scan,
        };
        match scan {
            RevealScan::Linear => out.extend((0..known).filter(|&j| fits(j)).map(|j| j as NodeId)),
            RevealScan::BySeparator => {
                for (group_separator, members) in &groups.list {
                    if group_separator.union_len(&separator) > k {
                        continue;
                    }
                    out.extend(members.iter().copied().filter(|&j| (j as usize) < known && fits(j as usize)));
                }
                out.sort_unstable();
            }
            RevealScan::Indexed => {
                let vertices: Vec<usize> = if componentwise && !connected {
                    outside.iter().filter(|&v| v as u32 > key).collect()
                } else {
                    outside.iter().collect()
                };
                // Gray code order: one vertex toggles per step
                let mut subset = VertexSet::<W>::empty();
                for step in 1u64..(1u64 << vertices.len()) {
                    let v = vertices[step.trailing_zeros() as usize];
                    if subset.contains(v) {
                        subset.remove(v);
                    } else {
                        subset.insert(v);
                    }
                    if let Some(&j) = self.index.get(&subset) {
                        if (j as usize) < known && fits(j as usize) {
                            out.push(j);
                        }
                    }
                }
                out.sort_unstable();
            }
        }
    }

    /// Phase II: drains the FIFO queue.
    pub fn run(&mut self) -> Result<(), DiscoverError> {
        while self.head < self.configs.len() {
            let id = self.head as NodeId;
            self.head += 1;
            self.reverse_fly_expand(id)?;
            self.reverse_reveal_expand(id)?;
        }
        Ok(())
    }

    /// Phase III: adds fly arcs `C -> C \ {v}` (only where `|N(C)| < k`) and
    /// reveal arcs from every disconnected `C` whose components are all
    /// known, then freezes the result.
    pub fn discover_edges(self) -> Pit<W> {
        let mut graph = ConfigGraph::new();
        graph.reserve(self.configs.len());
        for &config in &self.configs {
            graph.add_node(config);
        }
        for (i, config) in self.configs.iter().enumerate() {
            let id = i as NodeId;
            let mut existential = Vec::new();
            if self.separators[i].len() < self.k {
                for v in config.iter() {
                    if let Some(&target) = self.index.get(&config.without(v)) {
                        existential.push(target);
                    }
                }
            }
            let mut universal = Vec::new();
            let components = self.graph.connected_components(config);
            if components.len() >= 2 {
                let ids: Option<Vec<NodeId>> = components.iter().map(|c| self.index.get(c).copied()).collect();
                if let Some(ids) = ids {
                    universal = ids;
                }
            }
            graph.set_arcs(id, existential, universal);
        }
        graph.canonicalize();
        Pit {
            graph,
            k: self.k,
            n: self.graph.n(),
            separators: self.separators,
            origins: self.origins,
        }
    }
}

/// Configuration ids bucketed by separator, buckets in first-seen order.
struct Groups<const W: usize> {
    list: Vec<(VertexSet<W>, Vec<NodeId>)>,
    of: HashMap<VertexSet<W>, usize>,
}

impl<const W: usize> Default for Groups<W> {
    fn default() -> Self {
        Groups {
            list: Vec::new(),
            of: HashMap::new(),
        }
    }
}

impl<const W: usize> Groups<W> {
    fn add(&mut self, separator: VertexSet<W>, id: NodeId) {
        let next = self.list.len();
        let g = *self.of.entry(separator).or_insert(next);
        if g == next {
            self.list.push((separator, Vec::new()));
        }
        self.list[g].1.push(id);
    }
}

/// The winning region of the colosseum with its induced arcs, plus the
/// discovery trace.
#[derive(Clone)]
pub struct Pit<const W: usize> {
    graph: ConfigGraph<W>,
    k: usize,
    n: usize,
    separators: Vec<VertexSet<W>>,
    origins: Vec<Origin>,
}

impl<const W: usize> Pit<W> {
    pub fn graph(&self) -> &ConfigGraph<W> {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn config(&self, id: NodeId) -> &VertexSet<W> {
        self.graph.node(id)
    }

    pub fn separator(&self, id: NodeId) -> &VertexSet<W> {
        &self.separators[id as usize]
    }

    pub fn origin(&self, id: NodeId) -> Origin {
        self.origins[id as usize]
    }

    pub fn id_of(&self, config: &VertexSet<W>) -> Option<NodeId> {
        self.graph.id_of(config)
    }

    /// Node id of the start configuration `V(G)`, if it is winning.
    pub fn start(&self) -> Option<NodeId> {
        self.graph.id_of(&VertexSet::full(self.n))
    }

    pub fn is_winnable(&self) -> bool {
        self.n > 0 && self.start().is_some()
    }

    /// Ids of the winning configurations `Q` (exactly the seeds).
    pub fn targets(&self) -> Vec<NodeId> {
        (0..self.len() as NodeId)
            .filter(|&id| self.origins[id as usize] == Origin::Seed)
            .collect()
    }

    /// One record per configuration, in discovery order.
    pub fn trace(&self) -> impl Iterator<Item = TraceLine<'_, W>> + '_ {
        (0..self.len()).map(move |i| TraceLine {
            origin: self.origins[i],
            config: self.graph.node(i as NodeId),
            separator_size: self.separators[i].len(),
        })
    }

    /// The full trace as text, one line per configuration.
    pub fn trace_text(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for line in self.trace() {
            let _ = writeln!(out, "{line}");
        }
        out
    }
}

/// `<origin> <v,..> <|N(C)|>` with 1-based vertex ids.
pub struct TraceLine<'a, const W: usize> {
    pub origin: Origin,
    pub config: &'a VertexSet<W>,
    pub separator_size: usize,
}

impl<const W: usize> fmt::Display for TraceLine<'_, W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.origin.as_str())?;
        let mut sep = ' ';
        for v in self.config.iter() {
            write!(f, "{sep}{}", v + 1)?;
            sep = ',';
        }
        write!(f, " {}", self.separator_size)
    }
}

/// Computes the pit for `k` searchers with default options.
pub fn discover<const W: usize>(graph: &Graph<W>, k: usize) -> Result<Pit<W>, DiscoverError> {
    discover_with(graph, k, DiscoverOptions::default())
}

pub fn discover_with<const W: usize>(
    graph: &Graph<W>,
    k: usize,
    options: DiscoverOptions,
) -> Result<Pit<W>, DiscoverError> {
    let mut state = Discovery::new(graph, k, options);
    state.seed()?;
    state.run()?;
    Ok(state.discover_edges())
}
