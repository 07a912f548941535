//! Seeded random graph models and the P_{n,k} family.
//!
//! Every random model draws from ChaCha8 seeded with the 64-bit seed, so the
//! output only depends on the arguments.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::io::GraphFile;

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("probability {0} is not in [0, 1]")]
    Probability(f64),
    #[error("{0}")]
    Invalid(String),
}

fn check_p(p: f64) -> Result<(), GenError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GenError::Probability(p))
    }
}

fn named(mut file: GraphFile, name: String) -> GraphFile {
    file.name = Some(name);
    file
}

/// Erdős–Rényi G(n, p): every pair independently, pairs visited in
/// lexicographic order.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<GraphFile, GenError> {
    check_p(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(named(GraphFile::from_edges(n, edges), format!("er n={n} p={p} seed={seed}")))
}

/// Watts–Strogatz: a ring where each vertex is joined to its `k` nearest
/// neighbours on either side, then each lattice edge `(u, u+j)` is rewired
/// with probability `p` to `(u, w)` for a uniform `w` that keeps the graph
/// simple.
pub fn watts_strogatz(n: usize, k: usize, p: f64, seed: u64) -> Result<GraphFile, GenError> {
    check_p(p)?;
    if 2 * k >= n {
        return Err(GenError::Invalid(format!("ws needs n > 2K, got n={n}, K={k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adjacent = vec![vec![false; n]; n];
    let set = |adj: &mut Vec<Vec<bool>>, u: usize, v: usize, on: bool| {
        adj[u][v] = on;
        adj[v][u] = on;
    };
    for u in 0..n {
        for j in 1..=k {
            set(&mut adjacent, u, (u + j) % n, true);
        }
    }
    for j in 1..=k {
        for u in 0..n {
            let v = (u + j) % n;
            if !rng.gen_bool(p) {
                continue;
            }
            let free: Vec<usize> = (0..n).filter(|&w| w != u && !adjacent[u][w]).collect();
            if let Some(&w) = free.choose(&mut rng) {
                set(&mut adjacent, u, v, false);
                set(&mut adjacent, u, w, true);
            }
        }
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| adjacent[u][v]);
    let edges: Vec<_> = edges.collect();
    Ok(named(GraphFile::from_edges(n, edges), format!("ws n={n} K={k} p={p} seed={seed}")))
}

/// Barabási–Albert: start from a `k`-clique, then attach every new vertex to
/// `k` distinct existing vertices chosen with probability proportional to
/// their degree.
pub fn barabasi_albert(n: usize, k: usize, seed: u64) -> Result<GraphFile, GenError> {
    if k == 0 || k > n {
        return Err(GenError::Invalid(format!("ba needs 1 <= K <= n, got n={n}, K={k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    // each vertex appears once per incident edge
    let mut endpoints = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    for new in k..n {
        let mut targets: Vec<usize> = Vec::with_capacity(k);
        while targets.len() < k {
            let t = if endpoints.is_empty() {
                rng.gen_range(0..new)
            } else {
                endpoints[rng.gen_range(0..endpoints.len())]
            };
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for t in targets {
            edges.push((t, new));
            endpoints.extend([t, new]);
        }
    }
    Ok(named(GraphFile::from_edges(n, edges), format!("ba n={n} K={k} seed={seed}")))
}

/// P_{n,k}: cliques `X_1..X_n` of size `k` along a path, consecutive cliques
/// completely joined, plus single end vertices `X_0 = {0}` and
/// `X_{n+1} = {nk+1}` joined to `X_1` and `X_n`. The width bounds of the
/// family are stated for `n >= 2k`, but the construction is defined for any
/// positive `n` and `k`.
pub fn pnk(n: usize, k: usize) -> Result<GraphFile, GenError> {
    if k == 0 || n == 0 {
        return Err(GenError::Invalid(format!("pnk needs n, k >= 1, got n={n}, k={k}")));
    }
    let mut groups = vec![vec![0]];
    for i in 1..=n {
        groups.push(((i - 1) * k + 1..=i * k).collect());
    }
    groups.push(vec![n * k + 1]);
    let mut edges = Vec::new();
    for (i, group) in groups.iter().enumerate() {
        for (a, &u) in group.iter().enumerate() {
            for &v in &group[a + 1..] {
                edges.push((u, v));
            }
        }
        if let Some(next) = groups.get(i + 1) {
            for &u in group {
                for &v in next {
                    edges.push((u, v));
                }
            }
        }
    }
    Ok(named(GraphFile::from_edges(n * k + 2, edges), format!("pnk n={n} k={k}")))
}

/// A connected claw-free graph on at most `max_n` vertices: a path, a cycle
/// or the line graph of a random connected graph.
pub fn claw_free(max_n: usize, seed: u64) -> Result<GraphFile, GenError> {
    if max_n < 3 {
        return Err(GenError::Invalid(format!("claw-free needs n >= 3, got {max_n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let file = match rng.gen_range(0..4) {
        0 => {
            let n = rng.gen_range(3..=max_n);
            GraphFile::from_edges(n, (1..n).map(|v| (v - 1, v)))
        }
        1 => {
            let n = rng.gen_range(3..=max_n);
            GraphFile::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
        }
        _ => line_graph_of_random(max_n, &mut rng),
    };
    Ok(named(file, format!("claw-free n<={max_n} seed={seed}")))
}

fn line_graph_of_random(max_edges: usize, rng: &mut ChaCha8Rng) -> GraphFile {
    // a random tree plus a few chords, with at most `max_edges` edges
    let h = rng.gen_range(3..=(max_edges / 2 + 1).max(3));
    let mut base: Vec<(usize, usize)> = (1..h).map(|v| (rng.gen_range(0..v), v)).collect();
    let extra = rng.gen_range(0..=max_edges.saturating_sub(base.len()).min(h));
    for _ in 0..extra {
        let u = rng.gen_range(0..h);
        let v = rng.gen_range(0..h);
        let e = (u.min(v), u.max(v));
        if u != v && !base.iter().any(|&(a, b)| (a.min(b), a.max(b)) == e) && base.len() < max_edges {
            base.push(e);
        }
    }
    let mut edges = Vec::new();
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            let (a, b) = base[i];
            let (c, d) = base[j];
            if a == c || a == d || b == c || b == d {
                edges.push((i, j));
            }
        }
    }
    GraphFile::from_edges(base.len(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_extremes() {
        assert_eq!(erdos_renyi(25, 0.0, 1).unwrap().m(), 0);
        assert_eq!(erdos_renyi(6, 1.0, 1).unwrap().m(), 15);
        assert!(erdos_renyi(5, 1.5, 1).is_err());
    }

    #[test]
    fn same_seed_same_graph() {
        assert_eq!(erdos_renyi(20, 0.3, 7), erdos_renyi(20, 0.3, 7));
        assert_ne!(erdos_renyi(20, 0.3, 7).unwrap().edges, erdos_renyi(20, 0.3, 8).unwrap().edges);
        assert_eq!(watts_strogatz(25, 5, 0.33, 3), watts_strogatz(25, 5, 0.33, 3));
        assert_eq!(barabasi_albert(25, 5, 3), barabasi_albert(25, 5, 3));
    }

    #[test]
    fn ws_keeps_edge_count() {
        for seed in 0..5 {
            assert_eq!(watts_strogatz(25, 5, 0.33, seed).unwrap().m(), 125);
        }
        assert_eq!(watts_strogatz(10, 2, 0.0, 0).unwrap().m(), 20);
    }

    #[test]
    fn ba_edge_count() {
        // seed clique plus K edges per later vertex
        assert_eq!(barabasi_albert(25, 5, 9).unwrap().m(), 10 + 20 * 5);
    }

    #[test]
    fn pnk_shape() {
        assert_eq!(pnk(3, 2).unwrap().n, 8);
        assert!(pnk(0, 2).is_err());
        let g = pnk(4, 2).unwrap();
        assert_eq!(g.n, 10);
        // 4 inner cliques, 3 joins of 4 edges, 2 pendant joins of 2 edges
        assert_eq!(g.m(), 4 + 3 * 4 + 2 * 2);
    }

    #[test]
    fn claw_free_outputs_are_claw_free() {
        for seed in 0..40 {
            let file = claw_free(14, seed).unwrap();
            assert!(file.n <= 14);
            let g = file.to_graph::<1>().unwrap();
            assert!(g.is_claw_free(), "seed {seed}");
            assert!(g.is_connected_set(&g.vertices()), "seed {seed}");
        }
    }
}
