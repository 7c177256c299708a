//! Exact exponential-time oracles: domination and independence numbers,
//! maximum cut and surplus, triangle counts, induced `P_3` detection and the
//! two structural properties required of a minimal counterexample.
//!
//! The subset searches work on `u64` neighbourhood masks and are limited to
//! [`MAX_ORACLE_N`] vertices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const MAX_ORACLE_N: usize = 24;

/// Largest number of subsets a property-(**) scan may visit.
pub const MAX_SUBSET_SCAN: u64 = 1 << 16;

const MAX_REPORTED_VIOLATIONS: usize = 16;

fn check_budget(g: &Graph, what: &str) -> Result<()> {
    if g.n() > MAX_ORACLE_N {
        return Err(Error::Budget(format!(
            "{what} needs n <= {MAX_ORACLE_N}, got {}",
            g.n()
        )));
    }
    Ok(())
}

#[inline]
fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.row_mask(v)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DominationCertificate {
    pub gamma: usize,
    pub witness: VertexSet,
}

pub fn is_dominating(g: &Graph, set: &VertexSet) -> bool {
    let mut covered = set.clone();
    for v in set.iter() {
        covered = covered.union(&g.neighbors(v));
    }
    covered.len() == g.n()
}

struct DominationSearch<'a> {
    closed: &'a [u64],
    /// `reach[u]` = largest vertex in the closed neighbourhood of `u`
    reach: Vec<usize>,
    full: u64,
    n: usize,
}

impl DominationSearch<'_> {
    fn search(&self, start: usize, chosen: u64, covered: u64, left: usize) -> Option<u64> {
        if covered == self.full {
            return Some(chosen);
        }
        if left == 0 {
            return None;
        }
        let lowest = (!covered & self.full).trailing_zeros() as usize;
        if self.reach[lowest] < start {
            return None;
        }
        for v in start..self.n {
            if self.reach[lowest] < v {
                break;
            }
            if let Some(found) = self.search(v + 1, chosen | 1 << v, covered | self.closed[v], left - 1) {
                return Some(found);
            }
        }
        None
    }
}

/// Minimum dominating set; the witness is the lexicographically first of
/// minimum size.
pub fn domination_number(g: &Graph) -> Result<DominationCertificate> {
    check_budget(g, "domination number")?;
    let n = g.n();
    let closed: Vec<u64> = masks(g)
        .into_iter()
        .enumerate()
        .map(|(v, m)| m | 1 << v)
        .collect();
    let search = DominationSearch {
        reach: closed.iter().map(|&c| 63 - c.leading_zeros() as usize).collect(),
        closed: &closed,
        full: full_mask(n),
        n,
    };
    for k in 0..=n {
        if let Some(mask) = search.search(0, 0, 0, k) {
            return Ok(DominationCertificate {
                gamma: k,
                witness: VertexSet::from_mask(n, mask),
            });
        }
    }
    Err(Error::Internal("the full vertex set always dominates".into()))
}

struct IndependentSearch<'a> {
    adj: &'a [u64],
    best: u64,
    best_size: u32,
}

impl IndependentSearch<'_> {
    fn descend(&mut self, chosen: u64, candidates: u64) {
        let size = chosen.count_ones();
        if size > self.best_size {
            self.best = chosen;
            self.best_size = size;
        }
        let mut rest = candidates;
        while rest != 0 {
            if size + rest.count_ones() <= self.best_size {
                return;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // only later vertices, so sets are visited in lexicographic order
            self.descend(chosen | 1 << v, rest & !self.adj[v]);
        }
    }
}

/// Maximum independent set; the witness is the lexicographically first of
/// maximum size.
pub fn independence_number(g: &Graph) -> Result<(usize, VertexSet)> {
    check_budget(g, "independence number")?;
    let adj = masks(g);
    let mut search = IndependentSearch {
        adj: &adj,
        best: 0,
        best_size: 0,
    };
    search.descend(0, full_mask(g.n()));
    Ok((
        search.best_size as usize,
        VertexSet::from_mask(g.n(), search.best),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct CutReport {
    pub maxcut: usize,
    pub surplus: f64,
    pub side: VertexSet,
}

/// Number of edges with exactly one endpoint in `side`.
pub fn cut_size(g: &Graph, side: &VertexSet) -> usize {
    g.edges()
        .into_iter()
        .filter(|&(u, v)| side.contains(u) != side.contains(v))
        .count()
}

/// Exact maximum cut by a Gray-code sweep over the `2^(n-1)` bipartitions
/// that keep vertex 0 outside `side`.
pub fn max_cut(g: &Graph) -> Result<CutReport> {
    check_budget(g, "max cut")?;
    let n = g.n();
    let m = g.m();
    let adj = masks(g);
    let mut side = 0u64;
    let mut cut: i64 = 0;
    let mut best = (0i64, 0u64);
    if n >= 2 {
        for step in 1u64..1 << (n - 1) {
            let v = step.trailing_zeros() as usize + 1;
            let inside = (adj[v] & side & !(1 << v)).count_ones() as i64;
            let outside = (adj[v] & !side).count_ones() as i64;
            if side >> v & 1 == 0 {
                cut += outside - inside;
            } else {
                cut += inside - outside;
            }
            side ^= 1 << v;
            if cut > best.0 {
                best = (cut, side);
            }
        }
    }
    let maxcut = best.0 as usize;
    Ok(CutReport {
        maxcut,
        surplus: maxcut as f64 - m as f64 / 2.0,
        side: VertexSet::from_mask(n, best.1),
    })
}

pub fn triangle_count_exact(g: &Graph) -> usize {
    let mut count = 0;
    for (u, v) in g.edges() {
        count += g
            .neighbors(u)
            .intersection(&g.neighbors(v))
            .iter()
            .filter(|&w| w > v)
            .count();
    }
    count
}

/// Lexicographically least `(u, v, w)` with `uv, vw` edges and `uw` a
/// non-edge. `None` exactly when every component is a clique.
pub fn find_induced_p3(g: &Graph) -> Option<(usize, usize, usize)> {
    let n = g.n();
    for u in 0..n {
        for v in g.neighbors(u).iter() {
            for w in g.neighbors(v).iter() {
                if w != u && !g.has_edge(u, w) {
                    return Some((u, v, w));
                }
            }
        }
    }
    None
}

/// `true` when `G \ {v}` has at least two components.
pub fn is_cut_vertex(g: &Graph, v: usize) -> bool {
    let mut blocked = VertexSet::new(g.n());
    blocked.insert(v);
    let Some(start) = (0..g.n()).find(|&u| u != v) else {
        return false;
    };
    g.component_of(start, &blocked).len() < g.n() - 1
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub property: &'static str,
    pub holds: bool,
    /// Vertex sets the property quantifies over that met its hypothesis.
    pub qualifying: usize,
    pub violations: Vec<Vec<usize>>,
    pub violations_truncated: bool,
}

impl PropertyReport {
    fn new(property: &'static str) -> Self {
        PropertyReport {
            property,
            holds: true,
            qualifying: 0,
            violations: Vec::new(),
            violations_truncated: false,
        }
    }

    fn record_violation(&mut self, set: Vec<usize>) {
        self.holds = false;
        if self.violations.len() < MAX_REPORTED_VIOLATIONS {
            self.violations.push(set);
        } else {
            self.violations_truncated = true;
        }
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Precondition("graph must be connected".into()));
    }
    Ok(())
}

/// (*): every vertex triple inducing `P_3` contains a cut vertex.
pub fn check_property_star(g: &Graph) -> Result<PropertyReport> {
    require_connected(g)?;
    let n = g.n();
    let cut: Vec<bool> = (0..n).map(|v| is_cut_vertex(g, v)).collect();
    let mut report = PropertyReport::new("*");
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let edges = g.has_edge(a, b) as u8 + g.has_edge(b, c) as u8 + g.has_edge(a, c) as u8;
                if edges != 2 {
                    continue;
                }
                report.qualifying += 1;
                if !(cut[a] || cut[b] || cut[c]) {
                    report.record_violation(vec![a, b, c]);
                }
            }
        }
    }
    Ok(report)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn mask_is_bipartite(adj: &[u64], set: u64) -> bool {
    let mut colour_a = 0u64;
    let mut colour_b = 0u64;
    let mut unseen = set;
    while unseen != 0 {
        let root = unseen.trailing_zeros() as usize;
        colour_a |= 1 << root;
        unseen &= !(1 << root);
        let mut frontier = 1u64 << root;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let (own, other) = if colour_a >> v & 1 == 1 {
                (colour_a, colour_b)
            } else {
                (colour_b, colour_a)
            };
            let nbrs = adj[v] & set;
            if nbrs & own != 0 {
                return false;
            }
            let fresh = nbrs & !other;
            if colour_a >> v & 1 == 1 {
                colour_b |= fresh;
            } else {
                colour_a |= fresh;
            }
            unseen &= !fresh;
            frontier |= fresh;
        }
    }
    true
}

fn mask_is_connected(adj: &[u64], set: u64) -> bool {
    if set == 0 {
        return true;
    }
    let mut reached = 1u64 << set.trailing_zeros();
    loop {
        let mut next = reached;
        let mut walk = reached;
        while walk != 0 {
            let v = walk.trailing_zeros() as usize;
            walk &= walk - 1;
            next |= adj[v] & set;
        }
        if next == reached {
            return reached == set;
        }
        reached = next;
    }
}

/// (**): every `U` (with `|U| <= max_subset_size`) such that `G[U]` is
/// bipartite with at least `|U|` edges leaves `G \ U` disconnected or empty.
///
/// The scan is exhaustive; it fails with a budget error rather than sample
/// when more than [`MAX_SUBSET_SCAN`] subsets would be visited.
pub fn check_property_double_star(g: &Graph, max_subset_size: usize) -> Result<PropertyReport> {
    require_connected(g)?;
    let n = g.n();
    let cap = max_subset_size.min(n);
    let subsets: u64 = (0..=cap as u64).map(|k| binomial(n as u64, k)).fold(0, u64::saturating_add);
    if n > 64 || subsets > MAX_SUBSET_SCAN {
        return Err(Error::Budget(format!(
            "property (**) would scan {subsets} subsets of a {n}-vertex graph (limit {MAX_SUBSET_SCAN})"
        )));
    }
    let adj = masks(g);
    let all = full_mask(n);
    let mut report = PropertyReport::new("**");

    let mut visit = |set: u64| {
        let size = set.count_ones() as usize;
        let edges: u32 = (0..n)
            .filter(|&v| set >> v & 1 == 1)
            .map(|v| (adj[v] & set).count_ones())
            .sum::<u32>()
            / 2;
        if (edges as usize) < size || !mask_is_bipartite(&adj, set) {
            return;
        }
        report.qualifying += 1;
        let rest = all & !set;
        if rest != 0 && mask_is_connected(&adj, rest) {
            report.record_violation(VertexSet::from_mask(n, set).to_vec());
        }
    };

    // combinations in increasing size, lexicographic within a size
    for k in 1..=cap {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            visit(idx.iter().fold(0u64, |m, &v| m | 1 << v));
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, complete, cycle, path, petersen, star};

    /// Plain subset enumeration, independent of the pruned searches.
    fn brute_gamma(g: &Graph) -> usize {
        let n = g.n();
        (0u64..1 << n)
            .filter(|&s| is_dominating(g, &VertexSet::from_mask(n, s)))
            .map(|s| s.count_ones() as usize)
            .min()
            .unwrap()
    }

    fn brute_alpha(g: &Graph) -> usize {
        let n = g.n();
        (0u64..1 << n)
            .filter(|&s| g.edges().iter().all(|&(u, v)| !(s >> u & 1 == 1 && s >> v & 1 == 1)))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    fn brute_maxcut(g: &Graph) -> usize {
        let n = g.n();
        (0u64..1 << n)
            .map(|s| cut_size(g, &VertexSet::from_mask(n, s)))
            .max()
            .unwrap()
    }

    #[test]
    fn domination_examples() {
        assert_eq!(domination_number(&cycle(5).unwrap()).unwrap().gamma, 2);
        let s = domination_number(&star(7)).unwrap();
        assert_eq!((s.gamma, s.witness.to_vec()), (1, vec![0]));
        let p = domination_number(&petersen()).unwrap();
        assert_eq!(p.gamma, brute_gamma(&petersen()));
        assert_eq!(p.gamma, 3);
        assert!(is_dominating(&petersen(), &p.witness));
        assert_eq!(domination_number(&Graph::empty(3)).unwrap().gamma, 3);
        assert_eq!(domination_number(&Graph::empty(0)).unwrap().gamma, 0);
    }

    #[test]
    fn domination_witness_is_lexicographically_first() {
        // P_4: {0,2}, {0,3}, {1,2}, {1,3} all dominate
        let c = domination_number(&path(4)).unwrap();
        assert_eq!(c.witness.to_vec(), vec![0, 2]);
    }

    #[test]
    fn independence_examples() {
        assert_eq!(independence_number(&complete(5)).unwrap().0, 1);
        assert_eq!(independence_number(&cycle(5).unwrap()).unwrap().0, 2);
        let (alpha, w) = independence_number(&star(7)).unwrap();
        assert_eq!((alpha, w.to_vec()), (6, vec![1, 2, 3, 4, 5, 6]));
        assert_eq!(independence_number(&petersen()).unwrap().0, brute_alpha(&petersen()));
        let (_, w) = independence_number(&path(4)).unwrap();
        assert_eq!(w.to_vec(), vec![0, 2]);
    }

    #[test]
    fn max_cut_examples() {
        let k4 = max_cut(&complete(4)).unwrap();
        assert_eq!((k4.maxcut, k4.surplus), (4, 1.0));
        let c5 = max_cut(&cycle(5).unwrap()).unwrap();
        assert_eq!((c5.maxcut, c5.surplus), (4, 1.5));
        let c6 = max_cut(&cycle(6).unwrap()).unwrap();
        assert_eq!((c6.maxcut, c6.surplus), (6, 3.0));
        for g in [petersen(), families::c_k3(4).unwrap(), families::friendship(3)] {
            let r = max_cut(&g).unwrap();
            assert_eq!(r.maxcut, brute_maxcut(&g));
            assert_eq!(cut_size(&g, &r.side), r.maxcut);
        }
        assert_eq!(max_cut(&Graph::empty(1)).unwrap().maxcut, 0);
    }

    #[test]
    fn oracles_respect_budget() {
        let big = cycle(25).unwrap();
        assert!(matches!(domination_number(&big), Err(Error::Budget(_))));
        assert!(matches!(independence_number(&big), Err(Error::Budget(_))));
        assert!(matches!(max_cut(&big), Err(Error::Budget(_))));
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(triangle_count_exact(&complete(4)), 4);
        assert_eq!(triangle_count_exact(&cycle(6).unwrap()), 0);
        assert_eq!(triangle_count_exact(&petersen()), 0);
        assert_eq!(triangle_count_exact(&families::c_k3(7).unwrap()), 7);
    }

    #[test]
    fn induced_p3_examples() {
        assert_eq!(find_induced_p3(&path(3)), Some((0, 1, 2)));
        let cliques = complete(4).disjoint_union(&complete(2));
        assert_eq!(find_induced_p3(&cliques), None);
        assert_eq!(find_induced_p3(&cycle(4).unwrap()), Some((0, 1, 2)));
        assert_eq!(find_induced_p3(&star(4)), Some((1, 0, 2)));
    }

    #[test]
    fn property_star_examples() {
        assert!(!check_property_star(&cycle(5).unwrap()).unwrap().holds);
        assert!(check_property_star(&path(3)).unwrap().holds);
        let k4 = check_property_star(&complete(4)).unwrap();
        assert!(k4.holds);
        assert_eq!(k4.qualifying, 0);
        let disconnected = complete(2).disjoint_union(&complete(2));
        assert!(matches!(check_property_star(&disconnected), Err(Error::Precondition(_))));
    }

    #[test]
    fn property_double_star_examples() {
        let c4 = check_property_double_star(&cycle(4).unwrap(), 4).unwrap();
        assert!(c4.holds);
        assert_eq!(c4.qualifying, 1);

        // C_6 with a pendant vertex: removing the hexagon leaves one vertex
        let mut g = Graph::empty(7);
        for (u, v) in cycle(6).unwrap().edges() {
            g.add_edge(u, v);
        }
        g.add_edge(0, 6);
        let r = check_property_double_star(&g, 7).unwrap();
        assert!(!r.holds);
        assert!(r.violations.contains(&vec![0, 1, 2, 3, 4, 5]));

        for t in [path(6), star(7)] {
            let r = check_property_double_star(&t, t.n()).unwrap();
            assert!(r.holds);
            assert_eq!(r.qualifying, 0);
        }
    }

    #[test]
    fn property_double_star_budget() {
        let big = cycle(17).unwrap();
        assert!(matches!(check_property_double_star(&big, 17), Err(Error::Budget(_))));
        assert!(check_property_double_star(&big, 3).is_ok());
        assert!(check_property_double_star(&cycle(16).unwrap(), 16).is_ok());
    }
}
