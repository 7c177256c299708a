//! Isomorphism-free enumeration of small graphs.
//!
//! The canonical form of a graph is the lexicographically least adjacency
//! bit-string (graph6 bit order) over all vertex permutations. Classes on
//! `n` vertices are generated by attaching one new vertex, in every possible
//! way, to each class on `n - 1` vertices and deduplicating canonical codes.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::Graph;
use crate::error::{Error, Result};

pub const MAX_ENUMERATION_N: usize = 8;

/// Largest `n` whose upper triangle fits in a `u64` code.
const MAX_CODE_N: usize = 11;

struct CanonSearch<'a> {
    adj: &'a [u64],
    n: usize,
    total_bits: u32,
    perm: Vec<usize>,
    best: Option<u64>,
}

impl CanonSearch<'_> {
    fn descend(&mut self, used: u64, code: u64) {
        let k = self.perm.len();
        if k == self.n {
            if self.best.is_none_or(|b| code < b) {
                self.best = Some(code);
            }
            return;
        }
        let placed_bits = ((k + 1) * k / 2) as u32;
        let remaining = self.total_bits - placed_bits;
        for v in 0..self.n {
            if used >> v & 1 == 1 {
                continue;
            }
            let mut col = 0u64;
            for (i, &p) in self.perm.iter().enumerate() {
                col |= (self.adj[p] >> v & 1) << (k - 1 - i);
            }
            let next = (code << k) | col;
            if let Some(best) = self.best {
                if next > best >> remaining {
                    continue;
                }
            }
            self.perm.push(v);
            self.descend(used | 1 << v, next);
            self.perm.pop();
        }
    }
}

fn canonical_code_masks(adj: &[u64]) -> u64 {
    let n = adj.len();
    let mut search = CanonSearch {
        adj,
        n,
        total_bits: (n * n.saturating_sub(1) / 2) as u32,
        perm: Vec::with_capacity(n),
        best: None,
    };
    search.descend(0, 0);
    search.best.unwrap_or(0)
}

/// Minimal adjacency bit-string over all relabellings, packed with the first
/// graph6 bit as the most significant. Supports `n <= 11`.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    if g.n() > MAX_CODE_N {
        return Err(Error::UnsupportedSize {
            n: g.n(),
            limit: MAX_CODE_N,
        });
    }
    let adj: Vec<u64> = (0..g.n()).map(|v| g.row_mask(v)).collect();
    Ok(canonical_code_masks(&adj))
}

fn graph_from_code(n: usize, code: u64) -> Graph {
    let total = n * n.saturating_sub(1) / 2;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> (total - 1 - k) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    g
}

fn all_codes(n: usize) -> BTreeSet<u64> {
    let mut level: BTreeSet<u64> = BTreeSet::from([0]);
    for size in 2..=n {
        let prev = size - 1;
        let parents: Vec<u64> = level.iter().copied().collect();
        level = parents
            .par_iter()
            .map(|&code| {
                let base = graph_from_code(prev, code);
                let mut adj: Vec<u64> = (0..prev).map(|v| base.row_mask(v)).collect();
                adj.push(0);
                let mut found = BTreeSet::new();
                for nbrs in 0u64..1 << prev {
                    for (v, row) in adj.iter_mut().enumerate().take(prev) {
                        *row = (*row & !(1 << prev)) | ((nbrs >> v & 1) << prev);
                    }
                    adj[prev] = nbrs;
                    found.insert(canonical_code_masks(&adj));
                }
                found
            })
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            });
    }
    level
}

/// One representative per isomorphism class on `n` vertices, in ascending
/// canonical-code order. Representatives are returned in canonical labelling.
pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<Vec<Graph>> {
    if !(1..=MAX_ENUMERATION_N).contains(&n) {
        return Err(Error::UnsupportedSize {
            n,
            limit: MAX_ENUMERATION_N,
        });
    }
    Ok(all_codes(n)
        .into_iter()
        .map(|code| graph_from_code(n, code))
        .filter(|g| !connected_only || g.is_connected())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::write_graph6;

    #[test]
    fn connected_counts_small() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| enumerate_graphs(n, true).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn all_graph_counts_small() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| enumerate_graphs(n, false).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn out_of_range_sizes() {
        assert!(enumerate_graphs(0, true).is_err());
        assert!(enumerate_graphs(9, true).is_err());
    }

    #[test]
    fn canonical_code_is_relabelling_invariant() {
        let p = families::petersen();
        let c = canonical_code(&p).unwrap();
        let perm = [3, 7, 1, 0, 9, 2, 8, 5, 4, 6];
        assert_eq!(canonical_code(&p.permute(&perm)).unwrap(), c);
        assert_ne!(canonical_code(&families::cycle(10).unwrap()).unwrap(), c);
    }

    #[test]
    fn representatives_are_canonical_and_round_trip() {
        for g in enumerate_graphs(5, false).unwrap() {
            let code = canonical_code(&g).unwrap();
            assert_eq!(graph_from_code(5, code), g);
            let s = write_graph6(&g).unwrap();
            assert_eq!(crate::graph::parse_graph6(&s).unwrap(), g);
        }
    }
}
