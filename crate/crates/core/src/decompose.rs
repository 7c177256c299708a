//! Vertex partitions behind the lower bounds: the star/clique partition, the
//! blocks around a dominating set, the degree classes used for the `m^{6/7}`
//! bound, and the superadditivity certificate that consumes any of them.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracles::{is_dominating, DominationCertificate};
use crate::spectral::{square_energies, tau_num};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartLabel {
    Star,
    Clique,
    DominatedBlock,
    DegreeClass(usize),
}

impl fmt::Display for PartLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartLabel::Star => f.write_str("star"),
            PartLabel::Clique => f.write_str("clique"),
            PartLabel::DominatedBlock => f.write_str("dominated-block"),
            PartLabel::DegreeClass(i) => write!(f, "degree-class-{i}"),
        }
    }
}

impl Serialize for PartLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Ordered vertex partition with one label per part.
///
/// Degree-class partitions may contain empty parts so that part `i` is
/// always class `V_i`; every other kind has non-empty parts.
#[derive(Clone, Debug, Serialize)]
pub struct Partition {
    pub parts: Vec<VertexSet>,
    pub labels: Vec<PartLabel>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<VertexSet>, labels: Vec<PartLabel>) -> Result<Self> {
        let p = Partition { parts, labels };
        p.validate(n)?;
        Ok(p)
    }

    /// Partition from plain vertex lists, every part labelled `label`.
    pub fn from_lists(n: usize, lists: &[Vec<usize>], label: PartLabel) -> Result<Self> {
        let parts = lists
            .iter()
            .map(|l| VertexSet::from_vertices(n, l.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        let labels = vec![label; parts.len()];
        Partition::new(n, parts, labels)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.parts.iter().map(VertexSet::to_vec).collect()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidPartition(msg));
        if self.labels.len() != self.parts.len() {
            return bad(format!(
                "{} parts but {} labels",
                self.parts.len(),
                self.labels.len()
            ));
        }
        let mut seen = VertexSet::new(n);
        for (i, (part, label)) in self.parts.iter().zip(&self.labels).enumerate() {
            if part.ambient_n() != n {
                return bad(format!("part {i} lives on {} vertices, not {n}", part.ambient_n()));
            }
            if part.is_empty() && !matches!(label, PartLabel::DegreeClass(_)) {
                return bad(format!("part {i} is empty"));
            }
            if !seen.is_disjoint(part) {
                return bad(format!("part {i} overlaps an earlier part"));
            }
            seen = seen.union(part);
        }
        if seen.len() != n {
            let missing = seen.complement().first().unwrap_or(0);
            return bad(format!("vertex {missing} is not covered"));
        }
        Ok(())
    }
}

fn require_no_isolated(g: &Graph) -> Result<()> {
    if let Some(&v) = g.isolated_vertices().first() {
        return Err(Error::Precondition(format!("vertex {v} is isolated")));
    }
    Ok(())
}

fn bfs_tree_degrees(g: &Graph, component: &VertexSet, root: usize) -> (Vec<usize>, Vec<Option<usize>>) {
    let n = g.n();
    let mut parent = vec![None; n];
    let mut tree_degree = vec![0; n];
    let mut seen = VertexSet::new(n);
    seen.insert(root);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v).intersection(component).iter() {
            if !seen.contains(w) {
                seen.insert(w);
                parent[w] = Some(v);
                tree_degree[v] += 1;
                tree_degree[w] += 1;
                queue.push_back(w);
            }
        }
    }
    (tree_degree, parent)
}

fn tree_adjacent(parent: &[Option<usize>], a: usize, b: usize) -> bool {
    parent[a] == Some(b) || parent[b] == Some(a)
}

/// Partition into parts of size at least two, each inducing a star
/// (`K_2` included) or a clique.
///
/// Repeatedly takes the component of the least remaining vertex. Components
/// on at most three vertices become a part. Otherwise, with `T` the BFS tree
/// from the least vertex, `u` the least vertex adjacent in `T` to a leaf and
/// `L` the leaves adjacent to `u`: the lexicographically least edge inside
/// `L` becomes a part if one exists, else `{u} ∪ L` does.
pub fn star_clique_partition(g: &Graph) -> Result<Partition> {
    require_no_isolated(g)?;
    let n = g.n();
    let mut remaining = VertexSet::full(n);
    let mut parts = Vec::new();
    while let Some(root) = remaining.first() {
        let component = g.component_of(root, &remaining.complement());
        let part = if component.len() <= 3 {
            component
        } else {
            let (tree_degree, parent) = bfs_tree_degrees(g, &component, root);
            let is_leaf = |v: usize| tree_degree[v] == 1;
            let u = component
                .iter()
                .find(|&u| component.iter().any(|l| is_leaf(l) && tree_adjacent(&parent, u, l)))
                .ok_or_else(|| Error::Internal("spanning tree without leaves".into()))?;
            let leaves: Vec<usize> = component
                .iter()
                .filter(|&l| is_leaf(l) && tree_adjacent(&parent, u, l))
                .collect();
            let inner_edge = leaves.iter().enumerate().find_map(|(i, &a)| {
                leaves[i + 1..].iter().find(|&&b| g.has_edge(a, b)).map(|&b| (a, b))
            });
            match inner_edge {
                Some((a, b)) => VertexSet::from_vertices(n, [a, b])?,
                None => VertexSet::from_vertices(n, std::iter::once(u).chain(leaves))?,
            }
        };
        remaining = remaining.difference(&part);
        parts.push(part);
    }
    let labels = parts
        .iter()
        .map(|p| {
            if g.induced_subgraph(p).is_complete() {
                PartLabel::Clique
            } else {
                PartLabel::Star
            }
        })
        .collect();
    Partition::new(n, parts, labels)
}

/// One block per dominator `i`: `i` itself plus every non-dominator whose
/// least neighbour in the dominating set is `i`. Blocks follow the order of
/// the witness.
pub fn domination_partition(g: &Graph, d: &DominationCertificate) -> Result<Partition> {
    let n = g.n();
    if d.witness.ambient_n() != n || !is_dominating(g, &d.witness) {
        return Err(Error::Precondition("witness does not dominate the graph".into()));
    }
    let dominators = d.witness.to_vec();
    let mut parts: Vec<VertexSet> = dominators
        .iter()
        .map(|&i| VertexSet::from_vertices(n, [i]))
        .collect::<Result<_>>()?;
    for v in d.witness.complement().iter() {
        let owner = g
            .neighbors(v)
            .intersection(&d.witness)
            .first()
            .ok_or_else(|| Error::Internal(format!("vertex {v} undominated")))?;
        let slot = dominators.binary_search(&owner).expect("owner is a dominator");
        parts[slot].insert(v);
    }
    let labels = vec![PartLabel::DominatedBlock; parts.len()];
    Partition::new(n, parts, labels)
}

/// `m^{3/7}`, the degree scale of the classes.
pub fn degree_scale(m: usize) -> f64 {
    (m as f64).powf(3.0 / 7.0)
}

/// Lower degree threshold of class `i` (`V_0` has `0.5 t`, `V_i` has
/// `2^{-2^i} t`), before the last class is extended down to degree 1.
pub fn degree_class_threshold(t: f64, i: usize) -> f64 {
    if i == 0 {
        0.5 * t
    } else {
        t * 0.5f64.powf(2f64.powi(i as i32))
    }
}

/// Number of degree classes for a graph with `m` edges.
pub fn degree_class_count(m: usize) -> usize {
    let t = degree_scale(m);
    let mut k = 1;
    while degree_class_threshold(t, k - 1) > 1.0 {
        k += 1;
    }
    k
}

/// Degree classes `V_0, …, V_{k-1}`; the last one extends down to degree 1.
/// Empty classes are kept so that part `i` is always `V_i`.
pub fn degree_class_partition(g: &Graph) -> Result<Partition> {
    if g.m() == 0 {
        return Err(Error::Precondition("graph has no edges".into()));
    }
    require_no_isolated(g)?;
    let n = g.n();
    let t = degree_scale(g.m());
    let k = degree_class_count(g.m());
    let mut parts = vec![VertexSet::new(n); k];
    for v in 0..n {
        let d = g.degree(v) as f64;
        let class = (0..k)
            .find(|&i| d >= degree_class_threshold(t, i))
            .unwrap_or(k - 1);
        parts[class].insert(v);
    }
    let labels = (0..k).map(PartLabel::DegreeClass).collect();
    Partition::new(n, parts, labels)
}

#[derive(Clone, Debug, Serialize)]
pub struct SuperadditivityReport {
    pub s_plus: f64,
    pub s_minus: f64,
    /// `(s⁺, s⁻)` of each induced part.
    pub parts: Vec<(f64, f64)>,
    pub parts_s_plus: f64,
    pub parts_s_minus: f64,
    pub slack_plus: f64,
    pub slack_minus: f64,
    pub violation: bool,
}

/// Compares `s^±(G)` with `Σ s^±(G[V_i])` over the parts of `p`.
pub fn certify_superadditivity(g: &Graph, p: &Partition) -> Result<SuperadditivityReport> {
    p.validate(g.n())?;
    let whole = square_energies(g)?;
    let parts = p
        .parts
        .iter()
        .map(|part| square_energies(&g.induced_subgraph(part)).map(|e| (e.s_plus, e.s_minus)))
        .collect::<Result<Vec<_>>>()?;
    let parts_s_plus: f64 = parts.iter().map(|x| x.0).sum();
    let parts_s_minus: f64 = parts.iter().map(|x| x.1).sum();
    let slack_plus = whole.s_plus - parts_s_plus;
    let slack_minus = whole.s_minus - parts_s_minus;
    let tau = tau_num(g.n());
    Ok(SuperadditivityReport {
        s_plus: whole.s_plus,
        s_minus: whole.s_minus,
        parts,
        parts_s_plus,
        parts_s_minus,
        slack_plus,
        slack_minus,
        violation: slack_plus < -tau || slack_minus < -tau,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, path, petersen, star};
    use crate::oracles::domination_number;

    #[test]
    fn star_clique_examples() {
        let p4 = star_clique_partition(&path(4)).unwrap();
        assert_eq!(p4.to_lists(), vec![vec![0, 1], vec![2, 3]]);

        let k15 = star_clique_partition(&star(6)).unwrap();
        assert_eq!(k15.to_lists(), vec![(0..6).collect::<Vec<_>>()]);
        assert_eq!(k15.labels, vec![PartLabel::Star]);

        let two_triangles = complete(3).disjoint_union(&complete(3));
        let p = star_clique_partition(&two_triangles).unwrap();
        assert_eq!(p.to_lists(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(p.labels, vec![PartLabel::Clique; 2]);
    }

    #[test]
    fn star_clique_parts_are_stars_or_cliques() {
        for g in [petersen(), cycle(7).unwrap(), complete(6), crate::families::c_k3(5).unwrap()] {
            let p = star_clique_partition(&g).unwrap();
            for part in &p.parts {
                assert!(part.len() >= 2);
                let h = g.induced_subgraph(part);
                assert!(h.is_star() || h.is_complete());
            }
        }
    }

    #[test]
    fn star_clique_rejects_isolated_vertex() {
        let g = complete(2).disjoint_union(&Graph::empty(1));
        match star_clique_partition(&g) {
            Err(Error::Precondition(msg)) => assert!(msg.contains('2')),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn domination_partition_examples() {
        let s = star(5);
        let p = domination_partition(&s, &domination_number(&s).unwrap()).unwrap();
        assert_eq!(p.to_lists(), vec![(0..5).collect::<Vec<_>>()]);

        let c4 = cycle(4).unwrap();
        let d = DominationCertificate {
            gamma: 2,
            witness: VertexSet::from_vertices(4, [0, 2]).unwrap(),
        };
        assert_eq!(
            domination_partition(&c4, &d).unwrap().to_lists(),
            vec![vec![0, 1, 3], vec![2]]
        );

        let pg = petersen();
        let cert = domination_number(&pg).unwrap();
        let p = domination_partition(&pg, &cert).unwrap();
        assert_eq!(p.len(), 3);
        for (part, i) in p.parts.iter().zip(cert.witness.iter()) {
            assert!(part.contains(i));
            assert!(part.iter().all(|v| v == i || pg.has_edge(i, v)));
        }
    }

    #[test]
    fn domination_partition_rejects_non_dominating() {
        let d = DominationCertificate {
            gamma: 1,
            witness: VertexSet::from_vertices(4, [0]).unwrap(),
        };
        assert!(domination_partition(&path(4), &d).is_err());
    }

    #[test]
    fn degree_class_counts() {
        assert_eq!(degree_class_count(100), 3);
        let t = degree_scale(100);
        assert!((degree_class_threshold(t, 0) - 3.598).abs() < 1e-3);
        assert!((degree_class_threshold(t, 1) - 1.799).abs() < 1e-3);
        assert!(degree_class_threshold(t, 2) < 1.0);

        let k4 = degree_class_partition(&complete(4)).unwrap();
        assert_eq!(k4.len(), 2);
        assert_eq!(k4.parts[0].len(), 4);
        assert!(k4.parts[1].is_empty());

        let p2 = degree_class_partition(&path(2)).unwrap();
        assert_eq!(p2.to_lists(), vec![vec![0, 1]]);

        assert!(degree_class_partition(&Graph::empty(2)).is_err());
    }

    #[test]
    fn degree_classes_cover_all_degrees() {
        for m in 1..3000 {
            let t = degree_scale(m);
            let k = degree_class_count(m);
            assert!(degree_class_threshold(t, k - 1) <= 1.0);
            let bound = t.max(2.0).log2().log2().max(0.0).ceil() as usize + 2;
            assert!(k <= bound, "m={m} k={k}");
        }
    }

    #[test]
    fn superadditivity_examples() {
        let c5 = cycle(5).unwrap();
        let p = Partition::from_lists(5, &[vec![0, 1, 2], vec![3, 4]], PartLabel::Star).unwrap();
        let r = certify_superadditivity(&c5, &p).unwrap();
        assert!((r.parts_s_plus - 3.0).abs() < 1e-9);
        assert!((r.s_plus - 4.763932).abs() < 1e-5);
        assert!(!r.violation);

        let whole = Partition::from_lists(5, &[(0..5).collect()], PartLabel::Star).unwrap();
        let r = certify_superadditivity(&c5, &whole).unwrap();
        assert!(r.slack_plus.abs() < 1e-9 && r.slack_minus.abs() < 1e-9);

        let k4 = complete(4);
        let p = Partition::from_lists(4, &[vec![0, 1], vec![2, 3]], PartLabel::Clique).unwrap();
        let r = certify_superadditivity(&k4, &p).unwrap();
        assert!((r.s_minus - 3.0).abs() < 1e-9);
        assert!((r.parts_s_minus - 2.0).abs() < 1e-9);
    }

    #[test]
    fn invalid_partitions_rejected() {
        let overlap = Partition::from_lists(3, &[vec![0, 1], vec![1, 2]], PartLabel::Star);
        assert!(matches!(overlap, Err(Error::InvalidPartition(_))));
        let uncovered = Partition::from_lists(3, &[vec![0, 1]], PartLabel::Star);
        assert!(matches!(uncovered, Err(Error::InvalidPartition(_))));
        let empty = Partition::from_lists(2, &[vec![0, 1], vec![]], PartLabel::Star);
        assert!(matches!(empty, Err(Error::InvalidPartition(_))));
    }
}
