//! Builders and brute-force oracles shared by the integration suites.
//!
//! The oracles restate the defining computations as directly as possible and
//! stay independent of the library's implementation paths.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spreadrank::{Graph, NodeId};

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

/// Naive repeated-peeling k-shell oracle: for k = 0, 1, 2, … remove every
/// node of residual degree ≤ k until none is left.
pub fn k_shell_peeling_oracle(g: &Graph) -> Vec<u32> {
    let n = g.node_count();
    let mut alive = vec![true; n];
    let mut shell = vec![0u32; n];
    let mut remaining = n;
    let mut k = 0u32;
    let residual = |v: usize, alive: &[bool]| {
        g.neighbors(v as NodeId)
            .unwrap()
            .iter()
            .filter(|&&u| alive[u as usize])
            .count() as u32
    };
    while remaining > 0 {
        loop {
            let peel: Vec<usize> = (0..n)
                .filter(|&v| alive[v] && residual(v, &alive) <= k)
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

/// Exhaustive O(n²) pair enumeration: ties in either vector count toward
/// neither side; the denominator is the count of all ordered pairs.
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

/// All permutations of `0..n` (small n only).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for slot in 0..=rest.len() {
            let mut perm = rest.clone();
            perm.insert(slot, n - 1);
            out.push(perm);
        }
    }
    out
}
