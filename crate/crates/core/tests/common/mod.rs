//! Brute-force references that share no code with the game machinery.
#![allow(dead_code)]

use std::collections::HashMap;

use pidwidth_core::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type G = Graph<1>;

pub fn path(n: usize) -> G {
    G::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn cycle(n: usize) -> G {
    G::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn complete(n: usize) -> G {
    G::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> G {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    G::from_edges(n, edges).unwrap()
}

/// Mixed bag of small graphs for equivalence checks.
pub fn small_corpus() -> Vec<G> {
    let mut out = vec![path(1), path(2), path(5), cycle(5), complete(4)];
    out.push(G::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap());
    out.push(G::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap());
    for seed in 0..24u64 {
        let n = 4 + (seed as usize % 6);
        let p = [0.25, 0.4, 0.6][seed as usize % 3];
        out.push(random_graph(n, p, seed));
    }
    out
}

fn mask(set: VertexSet<1>) -> u64 {
    set.words()[0]
}

fn adjacency(g: &G) -> Vec<u64> {
    (0..g.n()).map(|v| mask(*g.neighbors(v))).collect()
}

/// Treewidth as the best elimination ordering: eliminating `v` after the
/// set `s` costs the number of uneliminated vertices it reaches through `s`.
pub fn treewidth(g: &G) -> usize {
    let n = g.n();
    let adj = adjacency(g);
    let full = (1u64 << n) - 1;
    let reach = |s: u64, v: usize| -> u32 {
        let mut seen = 1u64 << v;
        let mut stack = vec![v];
        let mut out = 0u64;
        while let Some(x) = stack.pop() {
            let mut nb = adj[x] & !seen;
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                seen |= 1 << w;
                if s >> w & 1 == 1 {
                    stack.push(w);
                } else {
                    out |= 1 << w;
                }
            }
        }
        out.count_ones()
    };
    let mut best = vec![u32::MAX; 1 << n];
    best[full as usize] = 0;
    for s in (0..full).rev() {
        let mut b = u32::MAX;
        for v in 0..n {
            if s >> v & 1 == 0 {
                b = b.min(reach(s, v).max(best[(s | 1 << v) as usize]));
            }
        }
        best[s as usize] = b;
    }
    best[0] as usize
}

/// Pathwidth as the vertex separation number over all orderings.
pub fn pathwidth(g: &G) -> usize {
    let n = g.n();
    let adj = adjacency(g);
    let full = (1u64 << n) - 1;
    let boundary = |s: u64| (0..n).filter(|&v| s >> v & 1 == 1 && adj[v] & !s != 0).count() as u32;
    let mut best = vec![u32::MAX; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        let here = boundary(s);
        let mut b = u32::MAX;
        for v in 0..n {
            if s >> v & 1 == 1 {
                b = b.min(best[(s & !(1 << v)) as usize]);
            }
        }
        best[s as usize] = b.max(here);
    }
    best[full as usize] as usize
}

/// Treedepth by the component recursion: a singleton has depth 1, a
/// disconnected set takes its deepest component, otherwise remove the best
/// vertex and add one.
pub fn treedepth(g: &G) -> usize {
    let adj = adjacency(g);
    let mut memo = HashMap::new();
    td_star(&adj, (1u64 << g.n()) - 1, &mut memo)
}

fn td_star(adj: &[u64], c: u64, memo: &mut HashMap<u64, usize>) -> usize {
    if c.count_ones() <= 1 {
        return c.count_ones() as usize;
    }
    if let Some(&d) = memo.get(&c) {
        return d;
    }
    let mut components = Vec::new();
    let mut rest = c;
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        loop {
            let mut grown = comp;
            let mut bits = comp;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grown |= adj[v] & c;
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        rest &= !comp;
        components.push(comp);
    }
    let d = if components.len() > 1 {
        components.iter().map(|&x| td_star(adj, x, memo)).max().unwrap()
    } else {
        let mut best = usize::MAX;
        let mut bits = c;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            best = best.min(td_star(adj, c & !(1 << v), memo) + 1);
        }
        best
    };
    memo.insert(c, d);
    d
}
