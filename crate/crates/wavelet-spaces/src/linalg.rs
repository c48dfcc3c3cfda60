//! Dense complex linear algebra shared by every module: Hermitian
//! eigendecompositions with sorted spectra, eigenvalue-truncated
//! pseudo-inverse solves, numerical rank, and principal angles.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvector columns, ordered like `eigenvalues`.
    pub eigenvectors: CMatrix,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }
}

/// Largest absolute entry of `m - m^H`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let mut defect = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            defect = defect.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    defect
}

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
/// (m + m^H)/2 first so round-off in callers cannot leak into the solver.
pub fn hermitian_eigen(m: &CMatrix) -> HermitianEigen {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "eigendecomposition needs a square matrix");
    if n == 0 {
        return HermitianEigen {
            eigenvalues: Vec::new(),
            eigenvectors: CMatrix::zeros(0, 0),
        };
    }
    let sym = (m + m.adjoint()).scale(0.5);
    let se = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let mut eigenvectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &se.eigenvectors.column(src));
    }
    HermitianEigen {
        eigenvalues,
        eigenvectors,
    }
}

/// Minimal-norm least-squares solution of `K a = rhs` from a Hermitian
/// eigendecomposition of K, dropping eigenvalues with magnitude at or below
/// `rel_cutoff` times the largest magnitude.
pub fn pseudo_solve(eig: &HermitianEigen, rhs: &CVector, rel_cutoff: f64) -> CVector {
    let n = rhs.len();
    let scale = eig
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, &l| acc.max(l.abs()));
    let cutoff = rel_cutoff * scale;
    let mut solution = CVector::zeros(n);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda.abs() <= cutoff {
            continue;
        }
        let v = eig.eigenvectors.column(k);
        let coeff = v.dotc(rhs) / Complex64::new(lambda, 0.0);
        solution += v * coeff;
    }
    solution
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let svd = m.clone().svd(false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Number of singular values above `rel_tol` times the largest.
pub fn numerical_rank(m: &CMatrix, rel_tol: f64) -> usize {
    let sv = singular_values(m);
    match sv.first() {
        Some(&smax) if smax > 0.0 => sv.iter().filter(|&&s| s > rel_tol * smax).count(),
        _ => 0,
    }
}

/// Moore-Penrose pseudo-inverse via SVD with a relative singular-value cutoff.
pub fn pseudo_inverse(m: &CMatrix, rel_tol: f64) -> CMatrix {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("svd requested u");
    let vt = svd.v_t.expect("svd requested v_t");
    let smax = svd
        .singular_values
        .iter()
        .fold(0.0f64, |acc, &s| acc.max(s));
    let cutoff = rel_tol * smax;
    let mut inv_s = DMatrix::<Complex64>::zeros(vt.nrows(), u.ncols());
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > cutoff {
            inv_s[(k, k)] = Complex64::new(1.0 / s, 0.0);
        }
    }
    vt.adjoint() * inv_s * u.adjoint()
}

/// Cosines of the principal angles between the column spans of `a` and `b`.
/// Both inputs must have orthonormal columns; the result is descending and
/// clamped to [0, 1].
pub fn principal_cosines(a: &CMatrix, b: &CMatrix) -> Vec<f64> {
    let overlap = a.adjoint() * b;
    singular_values(&overlap)
        .into_iter()
        .map(|s| s.clamp(0.0, 1.0))
        .collect()
}
