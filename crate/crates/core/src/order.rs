//! Strict partial orders on vertices, used by dependency-treewidth.

use alloc::vec::Vec;
use core::fmt;

use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderError {
    VertexOutOfRange { vertex: usize, n: usize },
    /// The relation is not acyclic; the vertices form a cycle in the given
    /// order, each related to the next and the last to the first.
    Cycle(Vec<usize>),
}

impl fmt::Display for OrderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for {n} vertices")
            }
            OrderError::Cycle(cycle) => {
                write!(f, "order relation has a cycle:")?;
                for v in cycle {
                    write!(f, " {v}")?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for OrderError {}

/// Transitively closed strict order, stored as per-vertex predecessor sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialOrder<const W: usize> {
    predecessors: Vec<VertexSet<W>>,
}

impl<const W: usize> PartialOrder<W> {
    pub fn empty(n: usize) -> Self {
        PartialOrder {
            predecessors: alloc::vec![VertexSet::empty(); n],
        }
    }

    /// Closes `pairs` (each `(u, v)` meaning `u ⋖ v`) transitively.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self, OrderError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut direct = alloc::vec![VertexSet::<W>::empty(); n];
        for (u, v) in pairs {
            for x in [u, v] {
                if x >= n {
                    return Err(OrderError::VertexOutOfRange { vertex: x, n });
                }
            }
            direct[v].insert(u);
        }
        if let Some(cycle) = find_cycle(&direct) {
            return Err(OrderError::Cycle(cycle));
        }
        let mut predecessors = direct;
        loop {
            let mut changed = false;
            for v in 0..n {
                let mut closed = predecessors[v];
                for u in predecessors[v].iter() {
                    closed |= predecessors[u];
                }
                if closed != predecessors[v] {
                    predecessors[v] = closed;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(PartialOrder { predecessors })
    }

    pub fn n(&self) -> usize {
        self.predecessors.len()
    }

    /// `u ⋖ v`.
    #[inline]
    pub fn less(&self, u: usize, v: usize) -> bool {
        self.predecessors[v].contains(u)
    }

    pub fn predecessors(&self, v: usize) -> &VertexSet<W> {
        &self.predecessors[v]
    }

    pub fn is_empty(&self) -> bool {
        self.predecessors.iter().all(VertexSet::is_empty)
    }

    /// Number of related pairs after closure.
    pub fn len(&self) -> usize {
        self.predecessors.iter().map(VertexSet::len).sum()
    }

    /// All related pairs `(u, v)` with `u ⋖ v`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.predecessors
            .iter()
            .enumerate()
            .flat_map(|(v, preds)| preds.iter().map(move |u| (u, v)))
    }

    /// `μ(C)`: elements of `set` with no predecessor inside `set`.
    pub fn minimal_elements(&self, set: &VertexSet<W>) -> VertexSet<W> {
        set.iter()
            .filter(|&v| self.predecessors[v].is_disjoint(set))
            .collect()
    }
}

/// Depth-first search over `u -> v` for `u ∈ direct[v]`, returning one cycle.
fn find_cycle<const W: usize>(direct: &[VertexSet<W>]) -> Option<Vec<usize>> {
    let n = direct.len();
    let mut successors: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for (v, preds) in direct.iter().enumerate() {
        for u in preds.iter() {
            successors[u].push(v);
        }
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = alloc::vec![0u8; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = alloc::vec![(root, 0)];
        state[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < successors[v].len() {
                let w = successors[v][*next];
                *next += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => {
                        let start = stack.iter().position(|&(x, _)| x == w).unwrap();
                        return Some(stack[start..].iter().map(|&(x, _)| x).collect());
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet<1> {
        vs.iter().copied().collect()
    }

    #[test]
    fn minimal_elements_examples() {
        let empty = PartialOrder::<1>::empty(3);
        assert_eq!(empty.minimal_elements(&set(&[0, 1, 2])), set(&[0, 1, 2]));

        let total = PartialOrder::<1>::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(total.minimal_elements(&set(&[0, 1, 2])), set(&[0]));

        // a ⋖ c only; C = {b, c}
        let partial = PartialOrder::<1>::from_pairs(3, [(0, 2)]).unwrap();
        assert_eq!(partial.minimal_elements(&set(&[1, 2])), set(&[1, 2]));
        assert_eq!(partial.minimal_elements(&set(&[0, 1, 2])), set(&[0, 1]));
    }

    #[test]
    fn closure_is_transitive() {
        let order = PartialOrder::<1>::from_pairs(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(order.less(0, 3));
        assert!(!order.less(3, 0));
        assert_eq!(order.len(), 6);
    }

    #[test]
    fn cycles_are_rejected() {
        let err = PartialOrder::<1>::from_pairs(3, [(0, 1), (1, 2), (2, 0)]).unwrap_err();
        match err {
            OrderError::Cycle(c) => assert_eq!(c.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(PartialOrder::<1>::from_pairs(2, [(1, 1)]).is_err());
    }
}
