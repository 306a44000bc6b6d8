//! Shared builders and brute-force oracles for unit tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, NodeId};

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (0..n.saturating_sub(1))
        .map(|i| (i as NodeId, (i + 1) as NodeId))
        .collect();
    Graph::from_edges(n, &edges)
}

pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i as NodeId)).collect();
    Graph::from_edges(leaves + 1, &edges)
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .map(|i| (i as NodeId, ((i + 1) % n) as NodeId))
        .collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i as NodeId, j as NodeId));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Triangle 0-1-2 plus a pendant node 3 attached to 0.
pub fn triangle_with_pendant() -> Graph {
    Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)])
}

/// Erdős–Rényi style random graph with a fixed seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(p) {
                edges.push((i as NodeId, j as NodeId));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Naive repeated-peeling k-shell oracle, straight from the definition:
/// for k = 0, 1, 2, … repeatedly remove every node of residual degree ≤ k.
pub fn k_shell_peeling_oracle(g: &Graph) -> Vec<u32> {
    let n = g.node_count();
    let mut alive = vec![true; n];
    let mut shell = vec![0u32; n];
    let mut remaining = n;
    let mut k = 0u32;
    let residual_degree = |v: usize, alive: &[bool]| {
        g.neighbors(v as NodeId)
            .unwrap()
            .iter()
            .filter(|&&u| alive[u as usize])
            .count() as u32
    };
    while remaining > 0 {
        loop {
            let peel: Vec<usize> = (0..n)
                .filter(|&v| alive[v] && residual_degree(v, &alive) <= k)
                .collect();
            if peel.is_empty() {
                break;
            }
            for v in peel {
                alive[v] = false;
                shell[v] = k;
                remaining -= 1;
            }
        }
        k += 1;
    }
    shell
}

/// Exhaustive O(n²) pair-counting Kendall correlation with the
/// ties-count-toward-neither rule and the all-pairs denominator.
pub fn kendall_tau_pair_oracle(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let mut concordant = 0i64;
    let mut discordant = 0i64;
    for i in 0..n {
        for j in (i + 1)..n {
            if x[i] == x[j] || y[i] == y[j] {
                continue;
            }
            if (x[i] < x[j]) == (y[i] < y[j]) {
                concordant += 1;
            } else {
                discordant += 1;
            }
        }
    }
    (2 * (concordant - discordant)) as f64 / (n * (n - 1)) as f64
}
