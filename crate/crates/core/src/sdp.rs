//! Semidefinite characterizations of the square energies.
//!
//! Min form: `s⁺ = min ‖A + M‖²` and `s⁻ = min ‖A - M‖²` over PSD `M`, both
//! attained at the spectral split. Max form: `s^± = max max(±⟨A, M⟩, 0)² /
//! ⟨M, M⟩`. Also the 3×3 PSD lemma for `P_3` and the vertex-removal
//! witness it yields.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{min_eigenvalue, project_psd, spectral_split, square_energies, tau_num};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `+1` for plus, `-1` for minus.
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            other => Err(Error::InvalidParameter(format!("unknown sign {other:?}"))),
        }
    }
}

fn rows(mat: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..mat.nrows())
        .map(|i| mat.row(i).iter().copied().collect())
        .collect()
}

/// Symmetric matrix together with its least eigenvalue.
#[derive(Clone, Debug)]
pub struct PsdWitness {
    pub mat: DMatrix<f64>,
    pub min_eigenvalue: f64,
}

impl PsdWitness {
    /// Fails unless `mat` is symmetric with least eigenvalue `>= -tau_num`.
    pub fn new(mat: DMatrix<f64>) -> Result<Self> {
        let min_eig = min_eigenvalue(&mat)?;
        let tol = tau_num(mat.nrows());
        if min_eig < -tol {
            return Err(Error::Precondition(format!(
                "matrix is not PSD: least eigenvalue {min_eig:e} < -{tol:e}"
            )));
        }
        Ok(PsdWitness {
            min_eigenvalue: if mat.nrows() == 0 { 0.0 } else { min_eig },
            mat,
        })
    }
}

impl Serialize for PsdWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PsdWitness", 2)?;
        st.serialize_field("mat", &rows(&self.mat))?;
        st.serialize_field("min_eigenvalue", &self.min_eigenvalue)?;
        st.end()
    }
}

/// `s_i(M)`: squares of the entries in row `i` or column `i`, with `(i, i)`
/// counted once.
pub fn row_col_square_sum(mat: &DMatrix<f64>, i: usize) -> f64 {
    let row: f64 = mat.row(i).iter().map(|x| x * x).sum();
    let col: f64 = mat.column(i).iter().map(|x| x * x).sum();
    row + col - mat[(i, i)] * mat[(i, i)]
}

/// `‖A + σM‖²` with `σ = +1` for plus and `-1` for minus.
pub fn min_objective(a: &DMatrix<f64>, mat: &DMatrix<f64>, sign: Sign) -> f64 {
    (a + mat * sign.factor()).norm_squared()
}

/// Random PSD matrix `c/n · FᵀF` with `F` standard normal and `c` uniform in
/// `[0, 1.5)`, so diagonal entries are of order one.
pub fn random_psd(n: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let f = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let scale = rng.random_range(0.0..1.5) / n as f64;
    let mut m = f.transpose() * f * scale;
    // exact symmetry for the eigensolver's input check
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct MinCounterexample {
    pub sign: Sign,
    pub trial: usize,
    pub value: f64,
    pub target: f64,
    pub witness: PsdWitness,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinCharacterizationReport {
    pub s_plus: f64,
    pub s_minus: f64,
    /// `‖A + A⁻‖²`
    pub split_value_plus: f64,
    /// `‖A - A⁺‖²`
    pub split_value_minus: f64,
    pub trials: usize,
    /// Least `‖A + M‖²` over the random trials (`+∞` with no trials).
    pub trial_min_plus: f64,
    pub trial_min_minus: f64,
    pub holds: bool,
    pub counterexample: Option<MinCounterexample>,
}

/// Checks that the spectral split attains the min form and that `trials`
/// random PSD matrices never go below it.
pub fn verify_min_characterization(g: &Graph, trials: usize, seed: u64) -> Result<MinCharacterizationReport> {
    let n = g.n();
    let tau = tau_num(n);
    let a = g.adjacency_matrix();
    let e = square_energies(g)?;
    let split = spectral_split(g)?;
    let split_value_plus = min_objective(&a, &split.a_minus, Sign::Plus);
    let split_value_minus = min_objective(&a, &split.a_plus, Sign::Minus);
    let mut holds = (split_value_plus - e.s_plus).abs() <= tau && (split_value_minus - e.s_minus).abs() <= tau;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trial_min = [f64::INFINITY; 2];
    let mut counterexample = None;
    for trial in 0..trials {
        let m = random_psd(n, &mut rng);
        for (slot, sign) in Sign::BOTH.into_iter().enumerate() {
            let target = if sign == Sign::Plus { e.s_plus } else { e.s_minus };
            let value = min_objective(&a, &m, sign);
            trial_min[slot] = trial_min[slot].min(value);
            if value < target - tau && counterexample.is_none() {
                holds = false;
                counterexample = Some(MinCounterexample {
                    sign,
                    trial,
                    value,
                    target,
                    witness: PsdWitness::new(m.clone())?,
                });
            }
        }
    }
    Ok(MinCharacterizationReport {
        s_plus: e.s_plus,
        s_minus: e.s_minus,
        split_value_plus,
        split_value_minus,
        trials,
        trial_min_plus: trial_min[0],
        trial_min_minus: trial_min[1],
        holds,
        counterexample,
    })
}

pub const DEFAULT_PG_STEP: f64 = 0.5;
pub const DEFAULT_PG_MAX_ITERS: usize = 10_000;
const TRAJECTORY_TAIL: usize = 10;

/// Default stopping tolerance `1e-4 · max(1, 2m)`.
pub fn default_pg_tolerance(m: usize) -> f64 {
    1e-4 * (2 * m).max(1) as f64
}

/// Minimizes `‖A + σM‖²` over PSD `M` by projected gradient with the
/// default step, starting from `M = 0`.
pub fn projected_gradient_min(g: &Graph, sign: Sign, max_iters: usize, tol: f64) -> Result<f64> {
    projected_gradient_min_with_step(g, sign, DEFAULT_PG_STEP, max_iters, tol)
}

/// Projected gradient with an explicit step. Stops once an iteration moves
/// `M` by at most `tol` in Frobenius norm.
pub fn projected_gradient_min_with_step(
    g: &Graph,
    sign: Sign,
    step: f64,
    max_iters: usize,
    tol: f64,
) -> Result<f64> {
    let n = g.n();
    let a = g.adjacency_matrix();
    let sigma = sign.factor();
    let mut m = DMatrix::<f64>::zeros(n, n);
    let mut tail = Vec::with_capacity(TRAJECTORY_TAIL);
    for _ in 0..max_iters {
        let grad = (&a + &m * sigma) * (2.0 * sigma);
        let next = project_psd(&(&m - grad * step))?;
        let moved = (&next - &m).norm();
        m = next;
        let value = min_objective(&a, &m, sign);
        if tail.len() == TRAJECTORY_TAIL {
            tail.remove(0);
        }
        tail.push(value);
        if moved <= tol {
            return Ok(value);
        }
    }
    Err(Error::Convergence {
        iters: max_iters,
        tol,
        tail,
    })
}

/// `max(±⟨A, M⟩, 0)² / ⟨M, M⟩`.
pub fn rayleigh_max_value(g: &Graph, w: &PsdWitness, sign: Sign) -> Result<f64> {
    if w.mat.nrows() != g.n() || w.mat.ncols() != g.n() {
        return Err(Error::Precondition(format!(
            "witness is {}x{}, graph has {} vertices",
            w.mat.nrows(),
            w.mat.ncols(),
            g.n()
        )));
    }
    let norm2 = w.mat.norm_squared();
    if norm2 == 0.0 {
        return Err(Error::Precondition("witness matrix is zero".into()));
    }
    let inner = g.adjacency_matrix().dot(&w.mat) * sign.factor();
    Ok(inner.max(0.0).powi(2) / norm2)
}

/// `16x⁴ - 6(1 - 4(1-x)²)(1 - 2(1-x)²)`, positive on `[0.5, 1]`.
pub fn lemma_polynomial(x: f64) -> f64 {
    let y = (1.0 - x) * (1.0 - x);
    16.0 * x.powi(4) - 6.0 * (1.0 - 4.0 * y) * (1.0 - 2.0 * y)
}

pub fn p3_adjacency() -> DMatrix<f64> {
    DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0])
}

/// `max_i s_i(A(P_3) + σM)`.
pub fn lemma_3by3_margin(mat: &DMatrix<f64>, sign: Sign) -> f64 {
    let shifted = p3_adjacency() + mat * sign.factor();
    (0..3)
        .map(|i| row_col_square_sum(&shifted, i))
        .fold(f64::NEG_INFINITY, f64::max)
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma3Report {
    pub grid_step: f64,
    pub grid_points: usize,
    pub grid_min: f64,
    pub grid_argmin: f64,
    pub trials: usize,
    /// Least `max_i s_i(A - M)` seen over the trials.
    pub worst_minus: f64,
    /// Least `max_j s_j(A + M)` seen over the trials.
    pub worst_plus: f64,
    pub holds: bool,
    pub counterexample: Option<PsdWitness>,
}

pub const LEMMA_LEEWAY: f64 = 0.5;

/// Grid scan of [`lemma_polynomial`] over `[0.5, 1]` plus random 3×3 PSD
/// trials of the `> 1` conclusion for both signs.
pub fn lemma_3by3_scan(grid_step: f64, random_trials: usize, seed: u64) -> Result<Lemma3Report> {
    if !(grid_step > 0.0 && grid_step <= 1e-3) {
        return Err(Error::InvalidParameter(format!(
            "grid step must lie in (0, 1e-3], got {grid_step}"
        )));
    }
    let steps = (0.5 / grid_step).ceil() as usize;
    let (grid_min, grid_argmin) = (0..=steps)
        .map(|i| (0.5 + i as f64 * grid_step).min(1.0))
        .map(|x| (lemma_polynomial(x), x))
        .fold((f64::INFINITY, f64::NAN), |best, cur| if cur.0 < best.0 { cur } else { best });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = [f64::INFINITY; 2];
    let mut counterexample = None;
    for _ in 0..random_trials {
        let m = random_psd(3, &mut rng);
        let minus = lemma_3by3_margin(&m, Sign::Minus);
        let plus = lemma_3by3_margin(&m, Sign::Plus);
        worst[0] = worst[0].min(minus);
        worst[1] = worst[1].min(plus);
        if (minus <= 1.0 || plus <= 1.0) && counterexample.is_none() {
            counterexample = Some(PsdWitness::new(m)?);
        }
    }
    Ok(Lemma3Report {
        grid_step,
        grid_points: steps + 1,
        grid_min,
        grid_argmin,
        trials: random_trials,
        worst_minus: worst[0],
        worst_plus: worst[1],
        holds: grid_min >= LEMMA_LEEWAY && counterexample.is_none(),
        counterexample,
    })
}

/// Removal drops at or below this do not count as exceeding one.
pub const REMOVAL_STRICTNESS: f64 = 1.0 + 1e-9;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RemovalChoice {
    pub vertex: usize,
    pub drop: f64,
    pub exceeds_one: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct P3RemovalWitness {
    pub triple: (usize, usize, usize),
    pub plus: RemovalChoice,
    pub minus: RemovalChoice,
}

fn require_induced_p3(g: &Graph, (u, v, w): (usize, usize, usize)) -> Result<()> {
    let n = g.n();
    if u >= n || v >= n || w >= n {
        return Err(Error::VertexOutOfRange {
            vertex: u.max(v).max(w),
            n,
        });
    }
    if u == v || v == w || u == w {
        return Err(Error::Precondition("triple has repeated vertices".into()));
    }
    let edges = g.has_edge(u, v) as u8 + g.has_edge(v, w) as u8 + g.has_edge(u, w) as u8;
    if edges != 2 {
        return Err(Error::Precondition(format!(
            "({u}, {v}, {w}) spans {edges} edges, not an induced P_3"
        )));
    }
    Ok(())
}

/// For each sign, the vertex of the triple whose deletion lowers `s^±` the
/// most (least index on ties) and the size of that drop.
pub fn p3_removal_witness(g: &Graph, triple: (usize, usize, usize)) -> Result<P3RemovalWitness> {
    require_induced_p3(g, triple)?;
    let whole = square_energies(g)?;
    let mut best: [Option<(usize, f64)>; 2] = [None, None];
    let mut vertices = [triple.0, triple.1, triple.2];
    vertices.sort_unstable();
    for x in vertices {
        let e = square_energies(&g.delete_vertex(x)?)?;
        let drops = [whole.s_plus - e.s_plus, whole.s_minus - e.s_minus];
        for (slot, drop) in best.iter_mut().zip(drops) {
            if slot.is_none_or(|(_, d)| drop > d + 1e-12) {
                *slot = Some((x, drop));
            }
        }
    }
    let choice = |b: Option<(usize, f64)>| {
        let (vertex, drop) = b.expect("three candidates");
        RemovalChoice {
            vertex,
            drop,
            exceeds_one: drop >= REMOVAL_STRICTNESS,
        }
    };
    Ok(P3RemovalWitness {
        triple,
        plus: choice(best[0]),
        minus: choice(best[1]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{c_k3, complete, cycle, path, petersen};

    const TOL: f64 = 1e-8;

    #[test]
    fn row_col_examples() {
        let a = p3_adjacency();
        assert_eq!(row_col_square_sum(&a, 0), 2.0);
        assert_eq!(row_col_square_sum(&a, 1), 4.0);
        assert_eq!(row_col_square_sum(&DMatrix::zeros(3, 3), 2), 0.0);
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 3.0]);
        assert_eq!(row_col_square_sum(&m, 0), 4.0 + 1.0 + 1.0);
    }

    #[test]
    fn row_col_split_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..7 {
            let m = random_psd(n, &mut rng);
            for i in 0..n {
                let keep: Vec<usize> = (0..n).filter(|&j| j != i).collect();
                let rest = m.select_rows(&keep).select_columns(&keep);
                assert!(m.norm_squared() >= rest.norm_squared() + row_col_square_sum(&m, i) - 1e-12);
            }
        }
    }

    #[test]
    fn min_characterization_examples() {
        let k3 = complete(3);
        let split = spectral_split(&k3).unwrap();
        let v = min_objective(&k3.adjacency_matrix(), &split.a_minus, Sign::Plus);
        assert!((v - 4.0).abs() < TOL);

        let pg = petersen();
        let a = pg.adjacency_matrix();
        let zero = DMatrix::zeros(10, 10);
        assert!((min_objective(&a, &zero, Sign::Plus) - 30.0).abs() < TOL);

        let r = verify_min_characterization(&path(3), 100, 1).unwrap();
        assert!(r.holds, "{r:?}");
        assert!(r.trial_min_plus >= 2.0 - TOL);
        assert!((r.split_value_plus - 2.0).abs() < TOL);
    }

    #[test]
    fn min_characterization_is_seeded() {
        let a = verify_min_characterization(&cycle(5).unwrap(), 20, 9).unwrap();
        let b = verify_min_characterization(&cycle(5).unwrap(), 20, 9).unwrap();
        assert_eq!(a.trial_min_plus, b.trial_min_plus);
        assert_eq!(a.trial_min_minus, b.trial_min_minus);
    }

    #[test]
    fn projected_gradient_examples() {
        let k2 = complete(2);
        let v = projected_gradient_min(&k2, Sign::Plus, DEFAULT_PG_MAX_ITERS, default_pg_tolerance(1)).unwrap();
        assert!((v - 1.0).abs() < 1e-4);
        let v = projected_gradient_min(&complete(4), Sign::Minus, DEFAULT_PG_MAX_ITERS, default_pg_tolerance(6)).unwrap();
        assert!((v - 3.0).abs() < 1e-3);
        let v = projected_gradient_min(&cycle(5).unwrap(), Sign::Plus, DEFAULT_PG_MAX_ITERS, default_pg_tolerance(5)).unwrap();
        assert!((v - 4.763932).abs() < 1e-3);
    }

    #[test]
    fn projected_gradient_reports_tail_on_budget() {
        let err = projected_gradient_min_with_step(&cycle(5).unwrap(), Sign::Plus, 1e-3, 5, 1e-12).unwrap_err();
        match err {
            Error::Convergence { iters, tail, .. } => {
                assert_eq!(iters, 5);
                assert_eq!(tail.len(), 5);
                assert!(tail.windows(2).all(|w| w[1] <= w[0] + 1e-12));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rayleigh_examples() {
        let c5 = cycle(5).unwrap();
        let e = square_energies(&c5).unwrap();
        let split = spectral_split(&c5).unwrap();
        let w = PsdWitness::new(split.a_plus.clone()).unwrap();
        assert!((rayleigh_max_value(&c5, &w, Sign::Plus).unwrap() - e.s_plus).abs() < TOL);

        let id = PsdWitness::new(DMatrix::identity(5, 5)).unwrap();
        assert_eq!(rayleigh_max_value(&c5, &id, Sign::Plus).unwrap(), 0.0);

        let k4 = complete(4);
        let w = PsdWitness::new(spectral_split(&k4).unwrap().a_minus).unwrap();
        assert!((rayleigh_max_value(&k4, &w, Sign::Minus).unwrap() - 3.0).abs() < TOL);

        let zero = PsdWitness::new(DMatrix::zeros(4, 4)).unwrap();
        assert!(rayleigh_max_value(&k4, &zero, Sign::Plus).is_err());
    }

    #[test]
    fn psd_witness_rejects_indefinite() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert!(PsdWitness::new(m).is_err());
    }

    #[test]
    fn lemma_polynomial_examples() {
        assert!((lemma_polynomial(1.0) - 10.0).abs() < 1e-12);
        assert!((lemma_polynomial(0.5) - 1.0).abs() < 1e-12);
        assert_eq!(lemma_3by3_margin(&DMatrix::zeros(3, 3), Sign::Minus), 4.0);
    }

    #[test]
    fn lemma_scan() {
        let r = lemma_3by3_scan(1e-4, 2000, 3).unwrap();
        assert!(r.holds, "{r:?}");
        assert!((0.5..=0.6).contains(&r.grid_min));
        assert!(r.worst_minus > 1.0 && r.worst_plus > 1.0);
        assert!(lemma_3by3_scan(1e-2, 1, 0).is_err());
    }

    #[test]
    fn removal_examples() {
        let p3 = path(3);
        let w = p3_removal_witness(&p3, (0, 1, 2)).unwrap();
        assert_eq!(w.minus.vertex, 1);
        assert!((w.minus.drop - 2.0).abs() < TOL);
        assert!(w.minus.exceeds_one && w.plus.exceeds_one);

        let c5 = cycle(5).unwrap();
        let w = p3_removal_witness(&c5, (0, 1, 2)).unwrap();
        assert!(w.minus.drop > 1.0 && w.plus.drop > 1.0);

        let g = c_k3(4).unwrap();
        // pendant triangle on cycle vertex 0
        assert!(matches!(p3_removal_witness(&g, (0, 4, 5)), Err(Error::Precondition(_))));
        assert!(p3_removal_witness(&g, (0, 1, 99)).is_err());
    }

    #[test]
    fn sign_parsing() {
        assert_eq!("plus".parse::<Sign>().unwrap(), Sign::Plus);
        assert_eq!("-".parse::<Sign>().unwrap(), Sign::Minus);
        assert!("up".parse::<Sign>().is_err());
    }
}
