//! One certifier per lower bound. Each evaluates both sides of an explicit
//! finite inequality on a concrete graph and reports slack plus a witness.

use serde::Serialize;
use serde_json::{json, Value};

use crate::decompose::{degree_class_partition, degree_class_threshold, degree_scale, domination_partition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracles::{domination_number, max_cut};
use crate::sdp::verify_min_characterization;
use crate::spectral::{default_zero_tolerance, inertia, spectrum, square_energies, tau_num, EnergyReport, Spectrum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    Checked,
    /// The bound's hypothesis fails; nothing is asserted.
    NotApplicable,
    /// Reported for inspection only, never a violation.
    Informational,
    /// The certifier could not run (budget or numeric failure).
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundVerdict {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub status: VerdictStatus,
    pub witness: Option<Value>,
    /// For bounds with an equality characterization: whether equality is
    /// attained exactly on the characterized graphs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality_consistent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundVerdict {
    fn new(name: &'static str, n: usize, lhs: f64, rhs: f64) -> Self {
        let slack = lhs - rhs;
        BoundVerdict {
            name,
            lhs,
            rhs,
            slack,
            holds: slack >= -tau_num(n),
            status: VerdictStatus::Checked,
            witness: None,
            equality_consistent: None,
            note: None,
        }
    }

    fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    fn with_status(mut self, status: VerdictStatus) -> Self {
        self.status = status;
        self
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Verdict for a bound whose hypothesis `g` does not meet.
    pub fn not_applicable(name: &'static str, reason: impl Into<String>) -> Self {
        BoundVerdict {
            name,
            lhs: 0.0,
            rhs: 0.0,
            slack: 0.0,
            holds: true,
            status: VerdictStatus::NotApplicable,
            witness: None,
            equality_consistent: None,
            note: Some(reason.into()),
        }
    }

    /// Record for a certifier that failed to run on `g`.
    pub fn error(name: &'static str, err: &Error) -> Self {
        BoundVerdict {
            status: VerdictStatus::Error,
            holds: false,
            ..BoundVerdict::not_applicable(name, err.to_string())
        }
    }

    pub fn is_violation(&self) -> bool {
        self.status == VerdictStatus::Checked && (!self.holds || self.equality_consistent == Some(false))
    }
}

fn energies_of(g: &Graph) -> Result<(Spectrum, EnergyReport)> {
    let s = spectrum(g)?;
    let e = s.energies(default_zero_tolerance(g.n()), g.m());
    Ok((s, e))
}

fn require_edges(g: &Graph) -> Result<()> {
    if g.m() == 0 {
        return Err(Error::Precondition("graph has no edges".into()));
    }
    Ok(())
}

/// `min(s⁺, s⁻) >= n - 1` for connected graphs.
pub fn bound_efgw(g: &Graph) -> Result<BoundVerdict> {
    if !g.is_connected() {
        return Err(Error::Precondition("graph must be connected".into()));
    }
    let e = square_energies(g)?;
    let n = g.n();
    Ok(BoundVerdict::new("efgw", n, e.min_square_energy(), n.saturating_sub(1) as f64))
}

/// `min(s⁺, s⁻) >= n - γ`, witnessed by the blocks of a minimum dominating set.
pub fn bound_domination(g: &Graph) -> Result<BoundVerdict> {
    let cert = domination_number(g)?;
    let partition = domination_partition(g, &cert)?;
    let e = square_energies(g)?;
    let n = g.n();
    Ok(
        BoundVerdict::new("domination", n, e.min_square_energy(), (n - cert.gamma) as f64).with_witness(json!({
            "gamma": cert.gamma,
            "dominating_set": cert.witness,
            "partition": partition.to_lists(),
        })),
    )
}

/// `min(s⁺, s⁻) >= max(n⁺, n⁰, n⁻)` for graphs without isolated vertices.
pub fn bound_inertia(g: &Graph) -> Result<BoundVerdict> {
    if let Some(&v) = g.isolated_vertices().first() {
        return Err(Error::Precondition(format!("vertex {v} is isolated")));
    }
    let (s, e) = energies_of(g)?;
    let tol = default_zero_tolerance(g.n()).max(s.residual_bound);
    let inr = inertia(&s, tol)?;
    Ok(
        BoundVerdict::new("inertia", g.n(), e.min_square_energy(), inr.max_count() as f64)
            .with_witness(serde_json::to_value(inr)?),
    )
}

const EQUALITY_TOL: f64 = 1e-6;

/// `s⁻ >= n - 1` when some vertex is adjacent to all others, with equality
/// exactly for stars and cliques.
pub fn bound_dominating_vertex(g: &Graph) -> Result<BoundVerdict> {
    let v = g
        .dominating_vertex()
        .ok_or_else(|| Error::Precondition("no dominating vertex".into()))?;
    let e = square_energies(g)?;
    let n = g.n();
    let mut verdict = BoundVerdict::new("dominating-vertex", n, e.s_minus, n.saturating_sub(1) as f64);
    let attained = verdict.slack.abs() <= EQUALITY_TOL;
    let classified = if g.is_complete() {
        "clique"
    } else if g.is_star() {
        "star"
    } else {
        "neither"
    };
    verdict.equality_consistent = Some(attained == (classified != "neither"));
    Ok(verdict.with_witness(json!({
        "dominating_vertex": v,
        "equality": attained,
        "classified": classified,
    })))
}

fn triangle_rhs(m: usize, n: usize, lambda1: f64) -> f64 {
    (m as f64).powf(4.0 / 3.0) / ((n as f64).cbrt() * lambda1.powf(2.0 / 3.0))
}

/// `s⁺ >= m^{4/3} / (n^{1/3} λ₁^{2/3})`.
pub fn bound_triangle(g: &Graph) -> Result<BoundVerdict> {
    require_edges(g)?;
    let (s, e) = energies_of(g)?;
    let lambda1 = s.largest().unwrap_or(0.0);
    Ok(
        BoundVerdict::new("triangle", g.n(), e.s_plus, triangle_rhs(g.m(), g.n(), lambda1))
            .with_witness(json!({ "lambda1": lambda1 })),
    )
}

/// `s⁻ / s⁺ <= 2 n^{1/4}`, reported with `lhs = 2n^{1/4}` and `rhs` the ratio.
pub fn bound_ratio(g: &Graph) -> Result<BoundVerdict> {
    let e = square_energies(g)?;
    let n = g.n();
    if e.s_plus <= tau_num(n) {
        return Err(Error::Precondition("s⁺ is zero".into()));
    }
    Ok(BoundVerdict::new("ratio", n, 2.0 * (n as f64).powf(0.25), e.s_minus / e.s_plus))
}

/// `s⁺ >= (k/4)^{2/3} n` for `k`-regular graphs, `k >= 1`.
pub fn bound_regular(g: &Graph) -> Result<BoundVerdict> {
    let k = g
        .regular_degree()
        .filter(|&k| k >= 1)
        .ok_or_else(|| Error::Precondition("graph is not k-regular with k >= 1".into()))?;
    let e = square_energies(g)?;
    let n = g.n();
    Ok(
        BoundVerdict::new("regular", n, e.s_plus, (k as f64 / 4.0).powf(2.0 / 3.0) * n as f64)
            .with_witness(json!({ "k": k })),
    )
}

/// If `λ₁ <= m^{1/2} (2n)^{-1/8}` then
/// `λ₂² >= (m^{4/3} / (n^{1/3} λ₁^{2/3}) - λ₁²) / n`.
///
/// `lhs` is `max(λ₂, 0)²`. When the hypothesis fails the verdict is
/// not-applicable and `rhs` is 0.
pub fn bound_alon_boppana(g: &Graph) -> Result<BoundVerdict> {
    require_edges(g)?;
    let s = spectrum(g)?;
    let (n, m) = (g.n(), g.m());
    let lambda1 = s.largest().unwrap_or(0.0);
    let lambda2 = s.second().unwrap_or(0.0);
    let threshold = (m as f64).sqrt() * (2.0 * n as f64).powf(-0.125);
    let lhs = lambda2.max(0.0).powi(2);
    let witness = json!({ "lambda1": lambda1, "lambda2": lambda2, "threshold": threshold });
    if lambda1 > threshold {
        return Ok(BoundVerdict::new("alon-boppana", n, lhs, 0.0)
            .with_status(VerdictStatus::NotApplicable)
            .with_witness(witness)
            .with_note(format!("λ₁ = {lambda1} exceeds {threshold}")));
    }
    let rhs = (triangle_rhs(m, n, lambda1) - lambda1 * lambda1) / n as f64;
    Ok(BoundVerdict::new("alon-boppana", n, lhs, rhs).with_witness(witness))
}

/// `min(s⁺, s⁻) >= surp² / m` with the exact maximum cut.
pub fn bound_surplus(g: &Graph) -> Result<BoundVerdict> {
    require_edges(g)?;
    let cut = max_cut(g)?;
    let e = square_energies(g)?;
    Ok(
        BoundVerdict::new("surplus", g.n(), e.min_square_energy(), cut.surplus.powi(2) / g.m() as f64)
            .with_witness(json!({
                "maxcut": cut.maxcut,
                "surplus": cut.surplus,
                "side": cut.side,
            })),
    )
}

fn edges_between(g: &Graph, a: &VertexSet, b: &VertexSet) -> usize {
    a.iter().map(|v| g.neighbors(v).intersection(b).len()).sum()
}

fn edges_within(g: &Graph, a: &VertexSet) -> usize {
    edges_between(g, a, a) / 2
}

/// Certified lower bound on `s⁺` from the degree-class argument.
///
/// With classes `V_0..V_{k-1}`, `m_i` edges inside `V_i` and `m_{ij}`
/// between `V_i` and `V_j`:
/// * case 1, `m_0 >= m/2k²`: `m_0 / (2|V_0|^{1/4})` on `G[V_0]`;
/// * case 2, `m_i >= m/2k²` for some `i >= 1`: the triangle bound on
///   `G[V_i]` with the maximum degree in place of `λ₁`;
/// * case 3, the pair with the most edges, required to have
///   `m_{ij} >= m/k²`: `surp² / m_H` on `H = G[V_i ∪ V_j]` with the
///   surplus of the cut `(V_i, V_j)`.
///
/// The certified value is lifted to `G` by superadditivity.
pub fn certify_s_plus_pipeline(g: &Graph) -> Result<BoundVerdict> {
    let partition = degree_class_partition(g)?;
    let classes = &partition.parts;
    let k = classes.len();
    let m = g.m();
    let mf = m as f64;
    let kf = k as f64;
    let case_threshold = mf / (2.0 * kf * kf);
    let within: Vec<usize> = classes.iter().map(|c| edges_within(g, c)).collect();
    let sizes: Vec<usize> = classes.iter().map(VertexSet::len).collect();

    let (case, sub, certified, detail) = if within[0] as f64 >= case_threshold {
        let value = within[0] as f64 / (2.0 * (sizes[0] as f64).powf(0.25));
        (1, classes[0].clone(), value, json!({ "class": 0 }))
    } else if let Some(i) = (1..k).find(|&i| within[i] as f64 >= case_threshold) {
        let h = g.induced_subgraph(&classes[i]);
        let delta = h.max_degree();
        let value = triangle_rhs(within[i], sizes[i], delta as f64);
        (2, classes[i].clone(), value, json!({ "class": i, "max_degree": delta }))
    } else {
        let safe = mf / (kf * kf);
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..k {
            for j in i + 1..k {
                let mij = edges_between(g, &classes[i], &classes[j]);
                if best.is_none_or(|b| mij > b.2) {
                    best = Some((i, j, mij));
                }
            }
        }
        let (i, j, mij) = best
            .filter(|b| b.2 as f64 >= safe)
            .ok_or_else(|| Error::Internal("no case of the degree-class argument applies".into()))?;
        let m_h = within[i] + within[j] + mij;
        let surplus = 0.5 * (mij as f64 - within[i] as f64 - within[j] as f64);
        let value = surplus.max(0.0).powi(2) / m_h as f64;
        let detail = json!({
            "pair": [i, j],
            "m_ij": mij,
            "safe_threshold": safe,
            "claimed_threshold": 2.0 * safe,
            "cut_surplus": surplus,
        });
        (3, classes[i].union(&classes[j]), value, detail)
    };

    let s_plus = square_energies(g)?.s_plus;
    let s_plus_sub = square_energies(&g.induced_subgraph(&sub))?.s_plus;
    let t = degree_scale(m);
    let thresholds: Vec<f64> = (0..k).map(|i| degree_class_threshold(t, i)).collect();
    Ok(BoundVerdict::new("pipeline", g.n(), s_plus, certified).with_witness(json!({
        "case": case,
        "k": k,
        "class_sizes": sizes,
        "class_edges": within,
        "class_thresholds": thresholds,
        "case_threshold": case_threshold,
        "subgraph": sub,
        "s_plus_subgraph": s_plus_sub,
        "detail": detail,
    })))
}

/// `𝓔 >= 2 min(n⁺, n⁻)`; open in general, so informational only.
pub fn energy_wall_check(g: &Graph) -> Result<BoundVerdict> {
    let (s, e) = energies_of(g)?;
    let inr = inertia(&s, default_zero_tolerance(g.n()).max(s.residual_bound))?;
    Ok(
        BoundVerdict::new("energy-wall", g.n(), e.energy, 2.0 * inr.n_plus.min(inr.n_minus) as f64)
            .with_status(VerdictStatus::Informational)
            .with_witness(serde_json::to_value(inr)?),
    )
}

/// `s⁺ / surp` and `s⁻ / surp^{6/7}`, reported without a threshold.
pub fn conjecture_checks(g: &Graph) -> Result<Vec<BoundVerdict>> {
    let cut = max_cut(g)?;
    let e = square_energies(g)?;
    let n = g.n();
    let names = ["surplus-ratio-plus", "surplus-ratio-minus"];
    if cut.surplus <= 0.0 {
        return Ok(names
            .into_iter()
            .map(|name| BoundVerdict::not_applicable(name, "surplus is zero"))
            .collect());
    }
    let witness = json!({ "surplus": cut.surplus });
    Ok(vec![
        BoundVerdict::new(names[0], n, e.s_plus / cut.surplus, 0.0)
            .with_status(VerdictStatus::Informational)
            .with_witness(witness.clone()),
        BoundVerdict::new(names[1], n, e.s_minus / cut.surplus.powf(6.0 / 7.0), 0.0)
            .with_status(VerdictStatus::Informational)
            .with_witness(witness),
    ])
}

/// Spectrum of `join(H̄, H̄)` predicted from a `k`-regular `H` on `h`
/// vertices: `2h - 1 - k`, `-k - 1`, and `-λ - 1` twice for every eigenvalue
/// `λ` of `H` other than one copy of `k`. Sorted descending.
pub fn join_complement_predicted_spectrum(h: &Graph) -> Result<Vec<f64>> {
    let k = h
        .regular_degree()
        .ok_or_else(|| Error::Precondition("graph is not regular".into()))?;
    let s = spectrum(h)?;
    let hn = h.n() as f64;
    let kf = k as f64;
    let mut values = vec![2.0 * hn - 1.0 - kf, -kf - 1.0];
    for &l in s.values.iter().skip(1) {
        values.extend([-l - 1.0, -l - 1.0]);
    }
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Compares the spectrum of `join(H̄, H̄)` with its prediction from `H`.
/// `lhs` is `τ_num`, `rhs` the largest eigenvalue deviation.
pub fn join_complement_check(h: &Graph) -> Result<BoundVerdict> {
    let predicted = join_complement_predicted_spectrum(h)?;
    let g = crate::families::join_complement(h)?;
    let actual = spectrum(&g)?;
    let deviation = predicted
        .iter()
        .zip(&actual.values)
        .map(|(p, a)| (p - a).abs())
        .fold(0.0, f64::max);
    let n = g.n();
    Ok(BoundVerdict::new("join-complement", n, tau_num(n), deviation)
        .with_status(VerdictStatus::Informational)
        .with_witness(json!({ "predicted": predicted, "actual": actual.values })))
}

pub const SDP_MIN_TRIALS: usize = 20;

/// The min form on random PSD witnesses: `lhs` is the smallest margin
/// `‖A ± M‖² - s^±` over both signs, the trials and the spectral split
/// (where the margin is minus the absolute deviation).
pub fn sdp_min_check(g: &Graph, trials: usize, seed: u64) -> Result<BoundVerdict> {
    let r = verify_min_characterization(g, trials, seed)?;
    let split_dev = (r.split_value_plus - r.s_plus)
        .abs()
        .max((r.split_value_minus - r.s_minus).abs());
    let margin = (r.trial_min_plus - r.s_plus)
        .min(r.trial_min_minus - r.s_minus)
        .min(-split_dev);
    Ok(BoundVerdict::new("sdp-min", g.n(), margin, 0.0).with_witness(json!({
        "trials": trials,
        "seed": seed,
        "split_deviation": split_dev,
        "counterexample": r.counterexample,
    })))
}

/// Certifier names accepted by [`evaluate`], in the order `all` runs them.
pub const BOUND_NAMES: &[&str] = &[
    "efgw",
    "domination",
    "inertia",
    "dominating-vertex",
    "triangle",
    "ratio",
    "regular",
    "alon-boppana",
    "surplus",
    "pipeline",
    "energy-wall",
    "conjectures",
    "join-complement",
    "sdp-min",
];

/// Expands `all` and validates names.
pub fn resolve_bound_names(names: &[String]) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for name in names {
        if name == "all" {
            out.extend_from_slice(BOUND_NAMES);
        } else {
            let known = BOUND_NAMES
                .iter()
                .find(|&&b| b == name)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown bound {name:?}")))?;
            out.push(*known);
        }
    }
    Ok(out)
}

fn static_name(name: &str) -> &'static str {
    BOUND_NAMES.iter().find(|&&b| b == name).copied().unwrap_or("unknown")
}

/// Runs one named certifier; `seed` drives the randomized ones. A failed
/// hypothesis becomes a single not-applicable verdict; other errors
/// propagate.
pub fn evaluate(name: &str, g: &Graph, seed: u64) -> Result<Vec<BoundVerdict>> {
    let result = match name {
        "efgw" => bound_efgw(g).map(|v| vec![v]),
        "domination" => bound_domination(g).map(|v| vec![v]),
        "inertia" => bound_inertia(g).map(|v| vec![v]),
        "dominating-vertex" => bound_dominating_vertex(g).map(|v| vec![v]),
        "triangle" => bound_triangle(g).map(|v| vec![v]),
        "ratio" => bound_ratio(g).map(|v| vec![v]),
        "regular" => bound_regular(g).map(|v| vec![v]),
        "alon-boppana" => bound_alon_boppana(g).map(|v| vec![v]),
        "surplus" => bound_surplus(g).map(|v| vec![v]),
        "pipeline" => certify_s_plus_pipeline(g).map(|v| vec![v]),
        "energy-wall" => energy_wall_check(g).map(|v| vec![v]),
        "conjectures" => conjecture_checks(g),
        "join-complement" => join_complement_check(g).map(|v| vec![v]),
        "sdp-min" => sdp_min_check(g, SDP_MIN_TRIALS, seed).map(|v| vec![v]),
        other => return Err(Error::InvalidParameter(format!("unknown bound {other:?}"))),
    };
    match result {
        Err(Error::Precondition(reason)) => Ok(vec![BoundVerdict::not_applicable(static_name(name), reason)]),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, complete, cycle, friendship, path, petersen, star};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn efgw_examples() {
        for t in [path(6), star(5)] {
            let v = bound_efgw(&t).unwrap();
            assert!(close(v.slack, 0.0, 1e-8), "{v:?}");
        }
        let k5 = bound_efgw(&complete(5)).unwrap();
        assert!(close(k5.slack, 0.0, 1e-8));
        let c5 = bound_efgw(&cycle(5).unwrap()).unwrap();
        assert!(close(c5.lhs, 4.763932, 1e-5) && c5.holds);
        assert!(bound_efgw(&Graph::empty(2)).is_err());
    }

    #[test]
    fn domination_bound_examples() {
        let p = bound_domination(&petersen()).unwrap();
        assert!(close(p.lhs, 14.0, 1e-8) && close(p.rhs, 7.0, 0.0));
        let s = bound_domination(&star(5)).unwrap();
        assert!(close(s.slack, 0.0, 1e-8));
        let two_k2 = complete(2).disjoint_union(&complete(2));
        let v = bound_domination(&two_k2).unwrap();
        assert!(close(v.lhs, 2.0, 1e-8) && close(v.rhs, 2.0, 0.0));
        assert!(v.witness.unwrap()["partition"].is_array());
    }

    #[test]
    fn inertia_bound_examples() {
        let s = bound_inertia(&star(5)).unwrap();
        assert!(close(s.lhs, 4.0, 1e-8) && s.rhs == 3.0);
        let k4 = bound_inertia(&complete(4)).unwrap();
        assert!(close(k4.slack, 0.0, 1e-8));
        let c4 = bound_inertia(&cycle(4).unwrap()).unwrap();
        assert!(close(c4.lhs, 4.0, 1e-8) && c4.rhs == 2.0);
        assert!(bound_inertia(&Graph::empty(3)).is_err());
    }

    #[test]
    fn dominating_vertex_examples() {
        let k5 = bound_dominating_vertex(&complete(5)).unwrap();
        assert!(close(k5.slack, 0.0, 1e-8));
        assert_eq!(k5.witness.as_ref().unwrap()["classified"], "clique");
        assert_eq!(k5.equality_consistent, Some(true));
        let s = bound_dominating_vertex(&star(6)).unwrap();
        assert_eq!(s.witness.as_ref().unwrap()["classified"], "star");
        assert!(close(s.slack, 0.0, 1e-8));
        let f2 = bound_dominating_vertex(&friendship(2)).unwrap();
        let expected = ((1.0 - 17f64.sqrt()) / 2.0).powi(2) + 2.0;
        assert!(close(f2.lhs, expected, 1e-8) && f2.slack > 0.4);
        assert_eq!(f2.equality_consistent, Some(true));
        assert!(!f2.is_violation());
        assert!(bound_dominating_vertex(&path(4)).is_err());
    }

    #[test]
    fn triangle_bound_examples() {
        let k4 = bound_triangle(&complete(4)).unwrap();
        assert!(close(k4.rhs, 3.3019, 1e-3) && close(k4.lhs, 9.0, 1e-8));
        let k2 = bound_triangle(&complete(2)).unwrap();
        assert!(close(k2.rhs, 2f64.powf(-1.0 / 3.0), 1e-12));
        let gq = bound_triangle(&families::gq_collinearity_graph(2).unwrap()).unwrap();
        assert!(close(gq.lhs, 120.0, 1e-6) && close(gq.rhs, 49.7344, 1e-3));
    }

    #[test]
    fn ratio_and_regular_examples() {
        let gq = bound_ratio(&families::gq_collinearity_graph(2).unwrap()).unwrap();
        assert!(close(gq.rhs, 1.25, 1e-8) && close(gq.lhs, 2.0 * 27f64.powf(0.25), 1e-12));
        let k6 = bound_ratio(&complete(6)).unwrap();
        assert!(close(k6.rhs, 0.2, 1e-8));
        assert!(close(bound_ratio(&cycle(4).unwrap()).unwrap().rhs, 1.0, 1e-8));

        let p = bound_regular(&petersen()).unwrap();
        assert!(close(p.rhs, 0.75f64.powf(2.0 / 3.0) * 10.0, 1e-12) && p.holds);
        let c9 = bound_regular(&cycle(9).unwrap()).unwrap();
        assert!(close(c9.rhs, 0.5f64.powf(2.0 / 3.0) * 9.0, 1e-12) && c9.holds);
        assert!(bound_regular(&path(3)).is_err());
    }

    #[test]
    fn alon_boppana_examples() {
        let c50 = bound_alon_boppana(&cycle(50).unwrap()).unwrap();
        assert_eq!(c50.status, VerdictStatus::Checked);
        assert!(c50.holds && c50.rhs < c50.lhs);
        let k4 = bound_alon_boppana(&complete(4)).unwrap();
        assert_eq!(k4.status, VerdictStatus::NotApplicable);
        assert!(!k4.is_violation());
        let p = bound_alon_boppana(&petersen()).unwrap();
        assert!(close(p.lhs, 1.0, 1e-8));
    }

    #[test]
    fn surplus_bound_examples() {
        let k4 = bound_surplus(&complete(4)).unwrap();
        assert!(close(k4.lhs, 3.0, 1e-8) && close(k4.rhs, 1.0 / 6.0, 1e-12));
        let c5 = bound_surplus(&cycle(5).unwrap()).unwrap();
        assert!(close(c5.rhs, 0.45, 1e-12));
        let c6 = bound_surplus(&cycle(6).unwrap()).unwrap();
        assert!(close(c6.lhs, 6.0, 1e-8) && close(c6.rhs, 1.5, 1e-12));
    }

    fn pipeline_case(g: &Graph) -> u64 {
        let v = certify_s_plus_pipeline(g).unwrap();
        assert!(v.holds, "{v:?}");
        v.witness.unwrap()["case"].as_u64().unwrap()
    }

    #[test]
    fn pipeline_examples() {
        assert_eq!(pipeline_case(&complete(4)), 1);
        let two_k2 = complete(2).disjoint_union(&complete(2));
        let v = certify_s_plus_pipeline(&two_k2).unwrap();
        assert!(v.rhs <= 2.0 + 1e-8);
        assert_eq!(pipeline_case(&star(41)), 3);
        assert!(certify_s_plus_pipeline(&Graph::empty(3)).is_err());
    }

    #[test]
    fn energy_wall_examples() {
        let k4 = energy_wall_check(&complete(4)).unwrap();
        assert!(close(k4.lhs, 6.0, 1e-8) && k4.rhs == 2.0);
        assert_eq!(k4.status, VerdictStatus::Informational);
        let c4 = energy_wall_check(&cycle(4).unwrap()).unwrap();
        assert!(close(c4.lhs, 4.0, 1e-8) && c4.rhs == 2.0);
        let k2 = energy_wall_check(&complete(2)).unwrap();
        assert!(close(k2.slack, 0.0, 1e-8));
    }

    #[test]
    fn conjecture_ratio_examples() {
        let c6 = conjecture_checks(&cycle(6).unwrap()).unwrap();
        assert!(close(c6[0].lhs, 2.0, 1e-8));
        let ck3 = conjecture_checks(&families::c_k3(5).unwrap()).unwrap();
        assert!(ck3.iter().all(|v| v.lhs > 0.0 && v.status == VerdictStatus::Informational));
        let none = conjecture_checks(&Graph::empty(3)).unwrap();
        assert!(none.iter().all(|v| v.status == VerdictStatus::NotApplicable));
    }

    #[test]
    fn join_complement_relation() {
        let v = join_complement_check(&petersen()).unwrap();
        assert!(v.holds, "{v:?}");
        assert!(join_complement_check(&cycle(7).unwrap()).unwrap().holds);
        assert!(join_complement_check(&path(3)).is_err());
    }

    #[test]
    fn registry() {
        assert_eq!(resolve_bound_names(&["all".into()]).unwrap().len(), BOUND_NAMES.len());
        assert!(resolve_bound_names(&["nope".into()]).is_err());
        let na = evaluate("regular", &path(3), 0).unwrap();
        assert_eq!(na[0].status, VerdictStatus::NotApplicable);
        assert_eq!(na[0].name, "regular");
        for name in BOUND_NAMES {
            assert!(evaluate(name, &petersen(), 0).is_ok(), "{name}");
        }
        let sdp = evaluate("sdp-min", &petersen(), 4).unwrap();
        assert!(sdp[0].holds && sdp[0].lhs.abs() < 1e-7);
    }
}
