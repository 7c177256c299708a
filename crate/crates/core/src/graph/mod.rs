//! Simple undirected graphs stored as adjacency bitsets.
//!
//! Every row of the adjacency matrix is a packed bitset of `u64` words. The
//! graph algebra used throughout the crate (induced subgraphs, vertex deletion,
//! complement, disjoint union and join) lives here, together with graph6 I/O
//! and isomorphism-free enumeration of small graphs.

mod enumerate;
mod graph6;

pub use enumerate::{canonical_code, enumerate_graphs, MAX_ENUMERATION_N};
pub use graph6::{parse_graph6, write_graph6, MAX_GRAPH6_N};

use std::collections::VecDeque;
use std::fmt;

use nalgebra::DMatrix;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A subset of `{0, .., ambient_n - 1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    ambient_n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(ambient_n: usize) -> Self {
        VertexSet {
            ambient_n,
            words: vec![0; words_for(ambient_n)],
        }
    }

    pub fn full(ambient_n: usize) -> Self {
        let mut s = Self::new(ambient_n);
        for v in 0..ambient_n {
            s.insert(v);
        }
        s
    }

    pub fn from_vertices<I>(ambient_n: usize, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = Self::new(ambient_n);
        for v in vertices {
            if v >= ambient_n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: ambient_n,
                });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Builds a set from the low `ambient_n` bits of `mask`.
    pub fn from_mask(ambient_n: usize, mask: u64) -> Self {
        assert!(ambient_n <= 64, "mask sets need ambient_n <= 64");
        let mut s = Self::new(ambient_n);
        if ambient_n > 0 {
            let keep = if ambient_n == 64 {
                u64::MAX
            } else {
                (1u64 << ambient_n) - 1
            };
            s.words[0] = mask & keep;
        }
        s
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.ambient_n, "vertex {v} out of range");
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.ambient_n {
            self.words[v / 64] &= !(1 << (v % 64));
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.ambient_n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// The members as a `u64` mask; only valid for `ambient_n <= 64`.
    pub fn as_mask(&self) -> u64 {
        assert!(self.ambient_n <= 64, "mask view needs ambient_n <= 64");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet::full(self.ambient_n).difference(self)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    fn zip_with(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> VertexSet {
        assert_eq!(self.ambient_n, other.ambient_n, "ambient sizes differ");
        VertexSet {
            ambient_n: self.ambient_n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let stride = words_for(n);
        Graph {
            n,
            stride,
            bits: vec![0; n * stride],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Adds the edge `uv`. Panics on loops or out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u}, {v})");
        self.bits[u * self.stride + v / 64] |= 1 << (v % 64);
        self.bits[v * self.stride + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "bad edge ({u}, {v})");
        self.bits[u * self.stride + v / 64] &= !(1 << (v % 64));
        self.bits[v * self.stride + u / 64] &= !(1 << (u % 64));
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.stride..(v + 1) * self.stride]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet {
            ambient_n: self.n,
            words: self.row(v).to_vec(),
        }
    }

    /// Neighbourhood of `v` as a mask; requires `n <= 64`.
    #[inline]
    pub fn row_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.bits[v * self.stride]
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n {
            for v in self.neighbors(u).iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| {
            if self.has_edge(i, j) {
                1.0
            } else {
                0.0
            }
        })
    }

    /// Checks the structural invariants: symmetric rows, empty diagonal,
    /// no bits beyond `n`.
    pub fn check_invariants(&self) -> bool {
        for u in 0..self.n {
            if self.has_edge(u, u) {
                return false;
            }
            for v in 0..self.n {
                if self.has_edge(u, v) != self.has_edge(v, u) {
                    return false;
                }
            }
            let total: usize = self.degree(u);
            if total != (0..self.n).filter(|&v| self.has_edge(u, v)).count() {
                return false;
            }
        }
        true
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// `G[s]`, with the kept vertices relabelled in ascending order.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Graph {
        assert_eq!(s.ambient_n(), self.n, "vertex set belongs to another graph");
        let kept = s.to_vec();
        let mut h = Graph::empty(kept.len());
        for (i, &u) in kept.iter().enumerate() {
            for (j, &v) in kept.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    h.add_edge(i, j);
                }
            }
        }
        h
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let mut keep = self.vertex_set();
        keep.remove(v);
        Ok(self.induced_subgraph(&keep))
    }

    /// `G \ s`.
    pub fn delete_vertices(&self, s: &VertexSet) -> Graph {
        self.induced_subgraph(&s.complement())
    }

    pub fn complement(&self) -> Graph {
        let mut h = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    h.add_edge(u, v);
                }
            }
        }
        h
    }

    /// Vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut h = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            h.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            h.add_edge(self.n + u, self.n + v);
        }
        h
    }

    pub fn join(&self, other: &Graph) -> Graph {
        let mut h = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                h.add_edge(u, self.n + v);
            }
        }
        h
    }

    /// Components sorted by least element.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.n);
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let comp = self.component_of(start, &seen);
            seen = seen.union(&comp);
            out.push(comp);
        }
        out
    }

    /// The component of `start` in the graph with `blocked` removed.
    pub(crate) fn component_of(&self, start: usize, blocked: &VertexSet) -> VertexSet {
        let mut comp = VertexSet::new(self.n);
        let mut queue = VecDeque::from([start]);
        comp.insert(start);
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u).iter() {
                if !comp.contains(v) && !blocked.contains(v) {
                    comp.insert(v);
                    queue.push_back(v);
                }
            }
        }
        comp
    }

    /// Connected in the usual sense; the null graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0, &VertexSet::new(self.n)).len() == self.n
    }

    /// A proper 2-colouring (`true` = second side) if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for v in self.neighbors(u).iter() {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// The common degree when the graph is regular (and non-null).
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        let first = *d.first()?;
        d.iter().all(|&x| x == first).then_some(first)
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.m() == self.n - 1
    }

    /// Connected with exactly one cycle.
    pub fn is_unicyclic(&self) -> bool {
        self.n >= 3 && self.is_connected() && self.m() == self.n
    }

    pub fn is_complete(&self) -> bool {
        self.n * self.n.saturating_sub(1) / 2 == self.m()
    }

    /// `K_{1,n-1}` for `n >= 2` (so `K_2` counts as a star).
    pub fn is_star(&self) -> bool {
        if self.n < 2 || self.m() != self.n - 1 {
            return false;
        }
        (0..self.n).any(|v| self.degree(v) == self.n - 1)
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 0).collect()
    }

    /// Least vertex adjacent to all others.
    pub fn dominating_vertex(&self) -> Option<usize> {
        (0..self.n).find(|&v| self.degree(v) + 1 == self.n)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut h = Graph::empty(self.n);
        for (u, v) in self.edges() {
            h.add_edge(perm[u], perm[v]);
        }
        h
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}
