//! Dense symmetric eigensolver and the spectrum-derived quantities:
//! square energies, energy, inertia, the spectral split `A = A⁺ - A⁻`, and
//! the spectral triangle count.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Global numeric tolerance, `1e-8 * max(1, n)`.
pub fn tau_num(n: usize) -> f64 {
    1e-8 * n.max(1) as f64
}

/// Default half-width of the band of eigenvalues treated as zero.
pub fn default_zero_tolerance(n: usize) -> f64 {
    1e-8 * n as f64
}

const SYMMETRY_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 64;

/// Eigenvalues sorted descending, plus the largest eigenpair residual.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub residual_bound: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn largest(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn smallest(&self) -> Option<f64> {
        self.values.last().copied()
    }

    /// `λ_2`, when there are at least two eigenvalues.
    pub fn second(&self) -> Option<f64> {
        self.values.get(1).copied()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum()
    }

    /// Square energies and energy with eigenvalues in `[-zero_tol, zero_tol]`
    /// contributing to neither sum.
    pub fn energies(&self, zero_tol: f64, m: usize) -> EnergyReport {
        let mut report = EnergyReport {
            s_plus: 0.0,
            s_minus: 0.0,
            energy: 0.0,
            m,
        };
        for &x in &self.values {
            report.energy += x.abs();
            if x > zero_tol {
                report.s_plus += x * x;
            } else if x < -zero_tol {
                report.s_minus += x * x;
            }
        }
        report
    }
}

/// Eigenvalues (descending) with matching orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub spectrum: Spectrum,
    pub vectors: DMatrix<f64>,
}

impl EigenDecomposition {
    /// `Σ f(λ) v vᵀ` over eigenpairs with `keep(λ)`.
    pub fn reassemble(&self, keep: impl Fn(f64) -> bool, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
        let n = self.vectors.nrows();
        let mut out = DMatrix::zeros(n, n);
        for (k, &lambda) in self.spectrum.values.iter().enumerate() {
            if !keep(lambda) {
                continue;
            }
            let v = self.vectors.column(k);
            out += f(lambda) * (v * v.transpose());
        }
        out
    }
}

/// Cyclic Jacobi rotations on a dense symmetric matrix.
///
/// Converges when the off-diagonal mass drops below `1e-14 * ‖mat‖_F`.
/// Eigenvalues are returned in descending order; equal values keep the order
/// in which they appear on the converged diagonal.
pub fn eigen_decompose_symmetric(mat: &DMatrix<f64>) -> Result<EigenDecomposition> {
    let n = mat.nrows();
    if mat.ncols() != n {
        return Err(Error::Precondition(format!(
            "matrix is {}x{}, expected square",
            n,
            mat.ncols()
        )));
    }
    for i in 0..n {
        for j in i + 1..n {
            let (upper, lower) = (mat[(i, j)], mat[(j, i)]);
            if (upper - lower).abs() > SYMMETRY_TOL || !upper.is_finite() {
                return Err(Error::NotSymmetric {
                    row: i,
                    col: j,
                    upper,
                    lower,
                });
            }
        }
    }

    // row-major working copies
    let mut a: Vec<f64> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            0.5 * (mat[(i, j)] + mat[(j, i)])
        })
        .collect();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = 1e-14 * norm;

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&a) <= target;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        converged = off_norm(&a) <= target;
    }
    if !converged {
        return Err(Error::NoConvergence { n, sweeps });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = DMatrix::from_fn(n, n, |row, col| v[row * n + order[col]]);

    let mut residual_bound: f64 = 0.0;
    for (k, &lambda) in values.iter().enumerate() {
        let col = vectors.column(k);
        let r = (mat * col - lambda * col).norm();
        residual_bound = residual_bound.max(r);
    }
    if residual_bound > 1e-10 * norm.max(1.0) {
        return Err(Error::NoConvergence { n, sweeps });
    }

    Ok(EigenDecomposition {
        spectrum: Spectrum {
            values,
            residual_bound,
        },
        vectors,
    })
}

pub fn decompose_graph(g: &Graph) -> Result<EigenDecomposition> {
    eigen_decompose_symmetric(&g.adjacency_matrix())
}

pub fn spectrum(g: &Graph) -> Result<Spectrum> {
    Ok(decompose_graph(g)?.spectrum)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnergyReport {
    pub s_plus: f64,
    pub s_minus: f64,
    pub energy: f64,
    pub m: usize,
}

impl EnergyReport {
    pub fn min_square_energy(&self) -> f64 {
        self.s_plus.min(self.s_minus)
    }
}

pub fn square_energies(g: &Graph) -> Result<EnergyReport> {
    let s = spectrum(g)?;
    Ok(s.energies(default_zero_tolerance(g.n()), g.m()))
}

/// The PSD pair with `A = a_plus - a_minus`.
#[derive(Clone, Debug)]
pub struct SpectralSplit {
    pub a_plus: DMatrix<f64>,
    pub a_minus: DMatrix<f64>,
}

impl SpectralSplit {
    pub fn from_decomposition(eig: &EigenDecomposition, zero_tol: f64) -> Self {
        SpectralSplit {
            a_plus: eig.reassemble(|l| l > zero_tol, |l| l),
            a_minus: eig.reassemble(|l| l < -zero_tol, |l| -l),
        }
    }
}

pub fn spectral_split(g: &Graph) -> Result<SpectralSplit> {
    let eig = decompose_graph(g)?;
    Ok(SpectralSplit::from_decomposition(
        &eig,
        default_zero_tolerance(g.n()),
    ))
}

/// Nearest PSD matrix in Frobenius norm: negative eigenvalues clamped to zero.
pub fn project_psd(mat: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let eig = eigen_decompose_symmetric(mat)?;
    Ok(eig.reassemble(|l| l > 0.0, |l| l))
}

/// Smallest eigenvalue of a symmetric matrix (`+∞` for the empty matrix).
pub fn min_eigenvalue(mat: &DMatrix<f64>) -> Result<f64> {
    Ok(eigen_decompose_symmetric(mat)?
        .spectrum
        .smallest()
        .unwrap_or(f64::INFINITY))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
    pub zero_tolerance: f64,
}

impl Inertia {
    pub fn max_count(&self) -> usize {
        self.n_plus.max(self.n_zero).max(self.n_minus)
    }
}

pub fn inertia(s: &Spectrum, zero_tolerance: f64) -> Result<Inertia> {
    if zero_tolerance < s.residual_bound {
        return Err(Error::ToleranceBelowResidual {
            tolerance: zero_tolerance,
            residual: s.residual_bound,
        });
    }
    let n_plus = s.values.iter().filter(|&&x| x > zero_tolerance).count();
    let n_minus = s.values.iter().filter(|&&x| x < -zero_tolerance).count();
    Ok(Inertia {
        n_plus,
        n_zero: s.len() - n_plus - n_minus,
        n_minus,
        zero_tolerance,
    })
}

/// `Σ λ³ / 6`, the number of triangles when `s` is a graph spectrum.
pub fn triangle_count_spectral(s: &Spectrum) -> f64 {
    s.values.iter().map(|x| x * x * x).sum::<f64>() / 6.0
}
