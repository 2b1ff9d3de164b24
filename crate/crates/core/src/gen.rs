//! Seeded random graph generators for test corpora and the CLI.
//!
//! Every model is deterministic given its seed (ChaCha8 keyed directly by the
//! seed), so fixtures and acceptance corpora are reproducible across runs and
//! platforms.

use crate::error::{Error, Result};
use crate::graph::Graph;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// G(n, p): each pair is an edge independently with probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("gnp emits valid edges")
}

/// Random graph with maximum degree at most `max_deg`, targeting `m` edges.
/// Candidate edges are drawn uniformly; draws violating the cap are rejected
/// and resampled. Errors when `m` edges cannot be placed.
pub fn max_deg(n: usize, max_deg: usize, m: usize, seed: u64) -> Result<Graph> {
    if m > 0 && (max_deg == 0 || n < 2) {
        return Err(Error::MalformedInstance(format!(
            "cannot place {m} edges with n={n}, max degree {max_deg}"
        )));
    }
    if m > n * max_deg / 2 || m > n.saturating_sub(1) * n / 2 {
        return Err(Error::MalformedInstance(format!(
            "{m} edges infeasible with n={n}, max degree {max_deg}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Shuffle all pairs and greedily take cap-respecting ones; a fresh
    // shuffle is attempted a few times since a greedy pass can dead-end.
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    for _ in 0..64 {
        pairs.shuffle(&mut rng);
        let mut deg = vec![0usize; n];
        let mut chosen = Vec::with_capacity(m);
        for &(a, b) in &pairs {
            if chosen.len() == m {
                break;
            }
            if deg[a] < max_deg && deg[b] < max_deg {
                deg[a] += 1;
                deg[b] += 1;
                chosen.push((a, b));
            }
        }
        if chosen.len() == m {
            return Graph::from_edges(n, chosen);
        }
    }
    Err(Error::MalformedInstance(format!(
        "failed to place {m} edges with n={n}, max degree {max_deg}"
    )))
}

/// d-degenerate graph built by vertex addition: each new vertex picks at most
/// `d` back-neighbors uniformly at random.
pub fn d_degenerate(n: usize, d: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        let cap = d.min(v);
        let count = rng.gen_range(0..=cap);
        let mut earlier: Vec<usize> = (0..v).collect();
        earlier.shuffle(&mut rng);
        for &u in earlier.iter().take(count) {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges).expect("construction emits valid edges")
}

/// Connected graph with maximum degree at most `max_deg`: resamples seeds
/// derived from `seed` until the generated graph is connected.
pub fn max_deg_connected(n: usize, cap: usize, m: usize, seed: u64) -> Result<Graph> {
    for attempt in 0..1000u64 {
        let g = max_deg(
            n,
            cap,
            m,
            seed.wrapping_add(attempt.wrapping_mul(0x9E3779B97F4A7C15)),
        )?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::MalformedInstance(format!(
        "no connected graph with n={n}, max degree {cap}, m={m} found"
    )))
}
