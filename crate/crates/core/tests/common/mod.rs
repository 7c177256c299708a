#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use square_energy::graph::enumerate_graphs;
use square_energy::{Graph, VertexSet};

/// Connected classes on 1..=max_n vertices.
pub fn connected_corpus(max_n: usize) -> Vec<Graph> {
    (1..=max_n)
        .flat_map(|n| enumerate_graphs(n, true).unwrap())
        .collect()
}

pub fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// `G(n, p)` with `n` and `p` drawn uniformly from the given ranges.
pub fn random_graph(n_lo: usize, n_hi: usize, rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.random_range(n_lo..=n_hi);
    let p = rng.random_range(0.05..0.95);
    gnp(n, p, rng)
}

pub fn random_connected(n_lo: usize, n_hi: usize, rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let g = random_graph(n_lo, n_hi, rng);
        if g.is_connected() {
            return g;
        }
    }
}

/// Induced subgraph on the non-isolated vertices.
pub fn drop_isolated(g: &Graph) -> Graph {
    let keep = VertexSet::from_vertices(g.n(), (0..g.n()).filter(|&v| g.degree(v) > 0)).unwrap();
    g.induced_subgraph(&keep)
}

/// Every vertex triple inducing a path, as `(end, middle, end)`.
pub fn induced_p3_triples(g: &Graph) -> Vec<(usize, usize, usize)> {
    let n = g.n();
    let mut out = Vec::new();
    for v in 0..n {
        for u in 0..n {
            for w in u + 1..n {
                if u != v && w != v && g.has_edge(u, v) && g.has_edge(v, w) && !g.has_edge(u, w) {
                    out.push((u, v, w));
                }
            }
        }
    }
    out
}
