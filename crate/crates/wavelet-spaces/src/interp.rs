//! Gram matrices of phase-space point kernels over finite point sets,
//! positive-semidefiniteness checks, feasibility of interpolation data, and
//! minimal-norm interpolants.

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, HermitianEigen};
use crate::tf::{point_kernel_eval, TFPoint, Window};
use num_complex::Complex64;

/// Relative eigenvalue cutoff of the pseudo-inverse; separates structural
/// zeros of singular Gram matrices from quadrature noise.
pub const PSEUDO_INVERSE_CUTOFF: f64 = 1e-12;

/// Default relative feasibility tolerance on the residual |K a - values|.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-8;

/// Relative eigenvalue threshold below which a Gram matrix counts as
/// singular.
pub const PSD_TOLERANCE: f64 = 1e-10;

/// An ordered list of pairwise-distinct phase-space points.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<TFPoint>,
}

impl PointSet {
    /// Builds a point set; points must be nonempty, share one dimension,
    /// and be pairwise distinct under exact coordinate comparison.
    pub fn new(points: Vec<TFPoint>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let dim = first.dim();
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: p.dim(),
                    right: dim,
                });
            }
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(Error::DuplicatePoint { i, j });
                }
            }
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.points[0].dim()
    }

    pub fn get(&self, i: usize) -> &TFPoint {
        &self.points[i]
    }

    pub fn points(&self) -> &[TFPoint] {
        &self.points
    }
}

/// Hermitian matrix of kernel inner products over a point set. Entry (i, j)
/// is the kernel centered at point j evaluated at point i; the upper
/// triangle is computed and the lower triangle mirrored, so Hermitian
/// symmetry is exact.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    entries: CMatrix,
    window_id: String,
    points: Option<PointSet>,
}

impl GramMatrix {
    /// Wraps an explicitly given matrix, e.g. one exported from a finite
    /// group. The input must be Hermitian within 1e-8; it is symmetrized
    /// exactly on acceptance.
    pub fn from_entries(entries: CMatrix, label: &str) -> Result<GramMatrix> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                left: entries.nrows(),
                right: entries.ncols(),
            });
        }
        if entries.nrows() == 0 {
            return Err(Error::EmptyPointSet);
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let defect = linalg::hermiticity_defect(&entries);
        if defect > 1e-8 {
            return Err(Error::NotHermitian { defect });
        }
        let mut sym = entries.clone();
        for i in 0..sym.nrows() {
            sym[(i, i)] = Complex64::new(sym[(i, i)].re, 0.0);
            for j in (i + 1)..sym.ncols() {
                let v = (entries[(i, j)] + entries[(j, i)].conj()).scale(0.5);
                sym[(i, j)] = v;
                sym[(j, i)] = v.conj();
            }
        }
        Ok(GramMatrix {
            entries: sym,
            window_id: label.to_string(),
            points: None,
        })
    }

    pub(crate) fn from_assembly(
        entries: CMatrix,
        window_id: String,
        points: PointSet,
    ) -> GramMatrix {
        GramMatrix {
            entries,
            window_id,
            points: Some(points),
        }
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn window_id(&self) -> &str {
        &self.window_id
    }

    pub fn points(&self) -> Option<&PointSet> {
        self.points.as_ref()
    }
}

/// Assembles the Gram matrix of point kernels of `g` over `omega`. The
/// window must be admissible; a norm within 1e-3 of 1 is rescaled silently.
pub fn gram_assemble(g: &Window, omega: &PointSet) -> Result<GramMatrix> {
    if g.dimension() != omega.dimension() {
        return Err(Error::DimensionMismatch {
            left: g.dimension(),
            right: omega.dimension(),
        });
    }
    let g = g.admissible()?;
    let m = omega.len();
    let mut entries = CMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v = point_kernel_eval(&g, omega.get(j), omega.get(i))?;
            entries[(i, j)] = v;
            if j > i {
                entries[(j, i)] = v.conj();
            }
        }
    }
    Ok(GramMatrix::from_assembly(entries, g.id(), omega.clone()))
}

/// Result of the positive-semidefiniteness check.
#[derive(Debug, Clone, Copy)]
pub struct PsdReport {
    pub min_eig: f64,
    pub max_eig: f64,
    pub psd: bool,
}

/// Smallest and largest eigenvalue of the Gram matrix; `psd` holds when the
/// smallest eigenvalue clears -1e-10 times the largest.
pub fn psd_check(k: &GramMatrix) -> PsdReport {
    let eig = linalg::hermitian_eigen(k.entries());
    let min_eig = eig.min();
    let max_eig = eig.max();
    PsdReport {
        min_eig,
        max_eig,
        psd: min_eig >= -PSD_TOLERANCE * max_eig,
    }
}

fn minimal_norm_core(k: &GramMatrix, values: &[Complex64]) -> Result<(CVector, f64, HermitianEigen)> {
    if values.len() != k.size() {
        return Err(Error::LengthMismatch {
            expected: k.size(),
            got: values.len(),
        });
    }
    let rhs = CVector::from_column_slice(values);
    let eig = linalg::hermitian_eigen(k.entries());
    let alpha = linalg::pseudo_solve(&eig, &rhs, PSEUDO_INVERSE_CUTOFF);
    let residual = (k.entries() * &alpha - &rhs).norm();
    Ok((alpha, residual, eig))
}

/// True when `values` lies in the image of the Gram matrix: the residual of
/// the minimal-norm solution stays within `tol * max(1, |values|)`.
pub fn interpolation_feasible_with_tol(
    k: &GramMatrix,
    values: &[Complex64],
    tol: f64,
) -> Result<bool> {
    let (_, residual, _) = minimal_norm_core(k, values)?;
    let scale = CVector::from_column_slice(values).norm().max(1.0);
    Ok(residual <= tol * scale)
}

pub fn interpolation_feasible(k: &GramMatrix, values: &[Complex64]) -> Result<bool> {
    interpolation_feasible_with_tol(k, values, FEASIBILITY_TOLERANCE)
}

/// A kernel expansion F = sum_k alpha_k k_{x_k} with its reproducing-norm.
#[derive(Debug, Clone)]
pub struct Interpolant {
    coefficients: CVector,
    points: Option<PointSet>,
    window_id: String,
    norm: f64,
}

impl Interpolant {
    pub fn coefficients(&self) -> &CVector {
        &self.coefficients
    }

    pub fn points(&self) -> Option<&PointSet> {
        self.points.as_ref()
    }

    pub fn window_id(&self) -> &str {
        &self.window_id
    }

    /// Norm of the interpolant in the kernel space: the square root of
    /// conj(alpha)^T K alpha.
    pub fn norm(&self) -> f64 {
        self.norm
    }
}

/// Solves K alpha = values with the eigenvalue-truncated pseudo-inverse and
/// packages the minimal-norm interpolant. Fails when the data is not in the
/// image of K.
pub fn solve_minimal_norm_with_tol(
    k: &GramMatrix,
    values: &[Complex64],
    tol: f64,
) -> Result<Interpolant> {
    let (alpha, residual, _) = minimal_norm_core(k, values)?;
    let scale = CVector::from_column_slice(values).norm().max(1.0);
    if residual > tol * scale {
        return Err(Error::Infeasible { residual });
    }
    let norm_sq = (k.entries() * &alpha).dotc(&alpha).re.max(0.0);
    Ok(Interpolant {
        coefficients: alpha,
        points: k.points().cloned(),
        window_id: k.window_id().to_string(),
        norm: norm_sq.sqrt(),
    })
}

pub fn solve_minimal_norm(k: &GramMatrix, values: &[Complex64]) -> Result<Interpolant> {
    solve_minimal_norm_with_tol(k, values, FEASIBILITY_TOLERANCE)
}

/// Evaluates the interpolant at a phase-space point through the kernels of
/// `g`, which must be the window the interpolant was built from.
pub fn interpolant_eval(f: &Interpolant, g: &Window, at: &TFPoint) -> Result<Complex64> {
    let points = f.points().ok_or(Error::MissingPoints)?;
    let g = g.admissible()?;
    if g.id() != f.window_id() {
        return Err(Error::WindowMismatch {
            expected: f.window_id().to_string(),
            got: g.id(),
        });
    }
    if at.dim() != points.dimension() {
        return Err(Error::DimensionMismatch {
            left: at.dim(),
            right: points.dimension(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (kth, alpha) in f.coefficients().iter().enumerate() {
        acc += alpha * point_kernel_eval(&g, points.get(kth), at)?;
    }
    Ok(acc)
}

/// Rectangular evaluation grid over one-dimensional phase space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub omega_min: f64,
    pub omega_max: f64,
    pub step: f64,
}

/// One evaluated grid sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub x: f64,
    pub omega: f64,
    pub re: f64,
    pub im: f64,
}

fn axis_count(min: f64, max: f64, step: f64) -> Option<usize> {
    if !(min.is_finite() && max.is_finite() && step.is_finite()) {
        return None;
    }
    if step <= 0.0 || max < min {
        return None;
    }
    Some(((max - min) / step + 1e-9).floor() as usize + 1)
}

/// Evaluates the interpolant over the grid, row-major with x as the outer
/// axis. Only one-dimensional interpolants carry a planar grid.
pub fn interpolant_grid(f: &Interpolant, g: &Window, grid: &GridSpec) -> Result<Vec<GridRow>> {
    let points = f.points().ok_or(Error::MissingPoints)?;
    if points.dimension() != 1 {
        return Err(Error::DimensionMismatch {
            left: points.dimension(),
            right: 1,
        });
    }
    let nx = axis_count(grid.x_min, grid.x_max, grid.step).ok_or(Error::EmptyGrid)?;
    let nw = axis_count(grid.omega_min, grid.omega_max, grid.step).ok_or(Error::EmptyGrid)?;
    let mut rows = Vec::with_capacity(nx * nw);
    for ix in 0..nx {
        let x = grid.x_min + ix as f64 * grid.step;
        for iw in 0..nw {
            let omega = grid.omega_min + iw as f64 * grid.step;
            let at = TFPoint::new(vec![x], vec![omega])?;
            let v = interpolant_eval(f, g, &at)?;
            rows.push(GridRow {
                x,
                omega,
                re: v.re,
                im: v.im,
            });
        }
    }
    Ok(rows)
}
