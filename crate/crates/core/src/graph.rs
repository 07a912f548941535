use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop { vertex: usize },
    VertexOutOfRange { vertex: usize, n: usize },
    TooManyVertices { n: usize, capacity: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for a graph on {n} vertices")
            }
            GraphError::TooManyVertices { n, capacity } => {
                write!(f, "{n} vertices exceed the bitset capacity {capacity}")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// Simple undirected graph on vertices `0..n` with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph<const W: usize> {
    n: usize,
    adjacency: Vec<VertexSet<W>>,
    labels: Option<Vec<String>>,
}

impl<const W: usize> Graph<W> {
    /// Builds a graph from an edge list. Parallel edges collapse into one;
    /// self-loops are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > VertexSet::<W>::CAPACITY {
            return Err(GraphError::TooManyVertices {
                n,
                capacity: VertexSet::<W>::CAPACITY,
            });
        }
        let mut adjacency = alloc::vec![VertexSet::empty(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        Ok(Graph {
            n,
            adjacency,
            labels: None,
        })
    }

    /// Attaches original vertex names, kept only for output.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet<W> {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet<W> {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adjacency[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Union of the adjacency rows of `set`, including vertices of `set`.
    #[inline]
    pub fn adjacent_to(&self, set: &VertexSet<W>) -> VertexSet<W> {
        let mut out = VertexSet::empty();
        for v in set.iter() {
            out |= self.adjacency[v];
        }
        out
    }

    /// Open neighborhood `N(C) = (⋃_{v∈C} N(v)) \ C`.
    #[inline]
    pub fn neighborhood(&self, set: &VertexSet<W>) -> VertexSet<W> {
        self.adjacent_to(set) - *set
    }

    /// Connected components of `G[set]`, ordered by their minimum vertex.
    pub fn connected_components(&self, set: &VertexSet<W>) -> Vec<VertexSet<W>> {
        let mut out = Vec::new();
        let mut rest = *set;
        while let Some(start) = rest.first() {
            let component = self.component_of(start, &rest);
            rest -= component;
            out.push(component);
        }
        out
    }

    /// The component of `G[within]` containing `start`.
    pub fn component_of(&self, start: usize, within: &VertexSet<W>) -> VertexSet<W> {
        let mut component = VertexSet::singleton(start);
        let mut frontier = component;
        while !frontier.is_empty() {
            let next = (self.adjacent_to(&frontier) & *within) - component;
            component |= next;
            frontier = next;
        }
        component
    }

    pub fn is_connected_set(&self, set: &VertexSet<W>) -> bool {
        match set.first() {
            None => true,
            Some(v) => self.component_of(v, set) == *set,
        }
    }

    /// True iff no vertex has three pairwise non-adjacent neighbors.
    pub fn is_claw_free(&self) -> bool {
        for center in 0..self.n {
            let nb: Vec<usize> = self.adjacency[center].iter().collect();
            for (i, &a) in nb.iter().enumerate() {
                for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                    if self.has_edge(a, b) {
                        continue;
                    }
                    for &c in &nb[j + 1..] {
                        if !self.has_edge(a, c) && !self.has_edge(b, c) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Subgraph induced by `set`, relabelled to `0..|set|` in ascending order.
    pub fn induced(&self, set: &VertexSet<W>) -> Graph<W> {
        let ids: Vec<usize> = set.iter().collect();
        let mut position = alloc::vec![usize::MAX; self.n];
        for (i, &v) in ids.iter().enumerate() {
            position[v] = i;
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| set.contains(u) && set.contains(v))
            .map(|(u, v)| (position[u], position[v]));
        Graph::from_edges(ids.len(), edges).expect("induced subgraph of a valid graph")
    }
}

impl<const W: usize> fmt::Debug for Graph<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
