//! Exact wavelet transforms over finite groups and checkers for the
//! structural facts that drive the toolkit: Schur orthogonality, wavelet
//! subspaces with their reproducing formula, the all-or-nothing overlap of
//! two wavelet spaces, positive-type matrices, convex mixtures, tensor
//! factorization, and completeness.
//!
//! All L2(G) pairings use the probability Haar measure, weight 1/|G|; with
//! that choice a window is admissible exactly when its norm is sqrt(d).

use crate::error::{Error, Result};
use crate::finite::group::FiniteGroup;
use crate::finite::rep::{decompose_regular, UnitaryRep};
use crate::interp::{psd_check, GramMatrix};
use crate::linalg::{self, CMatrix, CVector};
use num_complex::Complex64;

/// Cosine threshold above which a principal direction counts as shared.
pub const INTERSECTION_COSINE: f64 = 1.0 - 1e-9;

/// Tolerance on the intertwiner residuals in `rigidity_check`.
pub const RIGIDITY_TOLERANCE: f64 = 1e-9;

/// Strict admissibility tolerance on |norm - sqrt(d)|.
const ADMISSIBLE_TOLERANCE: f64 = 1e-8;

/// Inner product linear in the first argument, matching the pairing
/// conventions of the transform definitions.
fn inner(u: &CVector, v: &CVector) -> Complex64 {
    v.dotc(u)
}

/// Probability-Haar inner product on functions over the group.
pub fn haar_inner(u: &CVector, v: &CVector) -> Complex64 {
    inner(u, v) / (u.len() as f64)
}

/// A wavelet transform x -> <f, pi(x) g> sampled on the whole group.
#[derive(Debug, Clone)]
pub struct WaveletVector {
    values: CVector,
    rep_dim: usize,
    window: CVector,
    analyzed: CVector,
}

impl WaveletVector {
    pub fn values(&self) -> &CVector {
        &self.values
    }

    pub fn value(&self, x: usize) -> Complex64 {
        self.values[x]
    }

    pub fn rep_dim(&self) -> usize {
        self.rep_dim
    }

    pub fn window(&self) -> &CVector {
        &self.window
    }

    pub fn analyzed(&self) -> &CVector {
        &self.analyzed
    }
}

/// Evaluates the wavelet transform of `f` against window `g` under `pi`,
/// entry by entry over the group.
pub fn wavelet_transform(pi: &UnitaryRep, g: &CVector, f: &CVector) -> Result<WaveletVector> {
    if g.len() != pi.dim() {
        return Err(Error::DimensionMismatch {
            left: g.len(),
            right: pi.dim(),
        });
    }
    if f.len() != pi.dim() {
        return Err(Error::DimensionMismatch {
            left: f.len(),
            right: pi.dim(),
        });
    }
    let n = pi.group().order();
    let mut values = CVector::zeros(n);
    for x in 0..n {
        let shifted = pi.matrix(x) * g;
        values[x] = inner(f, &shifted);
    }
    Ok(WaveletVector {
        values,
        rep_dim: pi.dim(),
        window: g.clone(),
        analyzed: f.clone(),
    })
}

/// Rescales `g` to the admissible norm sqrt(d), under which the wavelet
/// transform is an isometry into L2(G).
pub fn admissible_rescale(pi: &UnitaryRep, g: &CVector) -> Result<CVector> {
    if g.len() != pi.dim() {
        return Err(Error::DimensionMismatch {
            left: g.len(),
            right: pi.dim(),
        });
    }
    let norm = g.norm();
    if norm <= 0.0 || !norm.is_finite() {
        return Err(Error::ZeroVector);
    }
    Ok(g.scale((pi.dim() as f64).sqrt() / norm))
}

fn ensure_admissible(pi: &UnitaryRep, g: &CVector) -> Result<()> {
    let target = (pi.dim() as f64).sqrt();
    let norm = g.norm();
    if (norm - target).abs() > ADMISSIBLE_TOLERANCE {
        return Err(Error::NotAdmissible { norm });
    }
    Ok(())
}

/// The image of the wavelet transform inside L2(G), carried by a basis of
/// columns orthonormal under the probability Haar inner product.
#[derive(Debug, Clone)]
pub struct WaveletSubspace {
    basis: CMatrix,
    group_order: usize,
}

impl WaveletSubspace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Haar-orthonormal basis columns, |G| rows.
    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    /// The same basis rescaled to orthonormality in the standard inner
    /// product, as principal-angle computations expect.
    pub fn std_orthonormal(&self) -> CMatrix {
        self.basis.scale(1.0 / (self.group_order as f64).sqrt())
    }
}

/// Builds the wavelet space of `g` under `pi` by transforming the standard
/// basis and orthonormalizing. A non-admissible `g` is rescaled first.
pub fn wavelet_subspace(pi: &UnitaryRep, g: &CVector) -> Result<WaveletSubspace> {
    let g = admissible_rescale(pi, g)?;
    let n = pi.group().order();
    let d = pi.dim();
    let mut stacked = CMatrix::zeros(n, d);
    for k in 0..d {
        let mut e = CVector::zeros(d);
        e[k] = Complex64::new(1.0, 0.0);
        let w = wavelet_transform(pi, &g, &e)?;
        stacked.set_column(k, w.values());
    }
    // Haar-orthonormal target: orthonormalize columns of A/sqrt(|G|) in
    // the standard product, then scale back.
    let scaled = stacked.scale(1.0 / (n as f64).sqrt());
    if linalg::numerical_rank(&scaled, 1e-10) != d {
        return Err(Error::RankDeficientSubspace);
    }
    let qr = scaled.qr();
    let q = qr.q();
    Ok(WaveletSubspace {
        basis: q.scale((n as f64).sqrt()),
        group_order: n,
    })
}

/// Outcome of comparing two wavelet spaces.
#[derive(Debug, Clone)]
pub struct RigidityReport {
    pub intersection_dim: usize,
    pub equal: bool,
    /// Unitary T with T g = h intertwining the two representations;
    /// present exactly when the spaces are equal.
    pub intertwiner: Option<CMatrix>,
}

/// Compares the wavelet spaces of (pi, g) and (rho, h). The spaces either
/// coincide or meet only in zero; a partial overlap is inconsistent and
/// reported as an error. When they coincide, the unitary mapping the orbit
/// of g onto the orbit of h is returned after verification.
pub fn rigidity_check(
    pi: &UnitaryRep,
    rho: &UnitaryRep,
    g: &CVector,
    h: &CVector,
) -> Result<RigidityReport> {
    if pi.group() != rho.group() {
        return Err(Error::GroupMismatch);
    }
    let g = admissible_rescale(pi, g)?;
    let h = admissible_rescale(rho, h)?;
    let s1 = wavelet_subspace(pi, &g)?;
    let s2 = wavelet_subspace(rho, &h)?;
    let cosines = linalg::principal_cosines(&s1.std_orthonormal(), &s2.std_orthonormal());
    let intersection_dim = cosines.iter().filter(|&&c| c >= INTERSECTION_COSINE).count();
    if intersection_dim == 0 {
        return Ok(RigidityReport {
            intersection_dim: 0,
            equal: false,
            intertwiner: None,
        });
    }
    if pi.dim() != rho.dim() || intersection_dim != pi.dim() {
        return Err(Error::RigidityViolation);
    }
    let n = pi.group().order();
    let d = pi.dim();
    let mut a_g = CMatrix::zeros(d, n);
    let mut a_h = CMatrix::zeros(d, n);
    for x in 0..n {
        a_g.set_column(x, &(pi.matrix(x) * &g));
        a_h.set_column(x, &(rho.matrix(x) * &h));
    }
    let t = &a_h * linalg::pseudo_inverse(&a_g, 1e-12);
    let max_abs = |m: &CMatrix| m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
    if (&t * &g - &h).norm() > RIGIDITY_TOLERANCE {
        return Err(Error::RigidityViolation);
    }
    for x in 0..n {
        if max_abs(&(&t * pi.matrix(x) - rho.matrix(x) * &t)) > RIGIDITY_TOLERANCE {
            return Err(Error::RigidityViolation);
        }
    }
    if max_abs(&(t.adjoint() * &t - CMatrix::identity(d, d))) > RIGIDITY_TOLERANCE {
        return Err(Error::RigidityViolation);
    }
    Ok(RigidityReport {
        intersection_dim,
        equal: true,
        intertwiner: Some(t),
    })
}

/// The |G| x |G| matrix with entry (i, j) equal to phi at x_j^{-1} x_i.
/// Its spectrum decides whether phi is of positive type.
pub fn positive_type_matrix(group: &FiniteGroup, phi: &CVector) -> Result<CMatrix> {
    let n = group.order();
    if phi.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: phi.len(),
        });
    }
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = phi[group.mul(group.inv(j), i)];
        }
    }
    Ok(m)
}

/// Rank report on a convex mixture of two rank-one window operators.
#[derive(Debug, Clone, Copy)]
pub struct ConvexityReport {
    pub second_singular_value: f64,
    /// True when the mixture has rank at least two, so it cannot arise as
    /// a single window's rank-one operator.
    pub is_extreme_violation: bool,
}

/// Forms D = t g1 g1* + (1-t) g2 g2* and inspects its second singular
/// value. All three windows must be admissible at the strict tolerance.
pub fn convexity_check(
    pi: &UnitaryRep,
    g: &CVector,
    g1: &CVector,
    g2: &CVector,
    t: f64,
) -> Result<ConvexityReport> {
    if !(0.0..=1.0).contains(&t) || !t.is_finite() {
        return Err(Error::BadMixingWeight { t });
    }
    for v in [g, g1, g2] {
        if v.len() != pi.dim() {
            return Err(Error::DimensionMismatch {
                left: v.len(),
                right: pi.dim(),
            });
        }
        ensure_admissible(pi, v)?;
    }
    let d = pi.dim();
    let mix = (g1 * g1.adjoint()).scale(t) + (g2 * g2.adjoint()).scale(1.0 - t);
    let svs = linalg::singular_values(&mix);
    let second_singular_value = if d >= 2 { svs[1] } else { 0.0 };
    Ok(ConvexityReport {
        second_singular_value,
        is_extreme_violation: second_singular_value > 1e-10,
    })
}

/// Largest pointwise deviation between the wavelet transform of g (x) h
/// under the tensor representation on G x H and the product of the two
/// factor transforms. Zero up to round-off.
pub fn tensor_product_check(
    pi: &UnitaryRep,
    rho: &UnitaryRep,
    g: &CVector,
    h: &CVector,
) -> Result<f64> {
    let order = pi.group().order() * rho.group().order();
    if order > 256 {
        return Err(Error::GroupTooLarge { order, limit: 256 });
    }
    let g = admissible_rescale(pi, g)?;
    let h = admissible_rescale(rho, h)?;
    let product = pi.group().direct_product(rho.group())?;
    let nh = rho.group().order();
    let mut matrices = Vec::with_capacity(order);
    for x in 0..pi.group().order() {
        for y in 0..nh {
            matrices.push(pi.matrix(x).kronecker(rho.matrix(y)));
        }
    }
    let tensor = UnitaryRep::new(product, matrices)?;
    let dh = rho.dim();
    let mut gh = CVector::zeros(pi.dim() * dh);
    for i in 0..pi.dim() {
        for j in 0..dh {
            gh[i * dh + j] = g[i] * h[j];
        }
    }
    let wt = wavelet_transform(&tensor, &gh, &gh)?;
    let wg = wavelet_transform(pi, &g, &g)?;
    let wh = wavelet_transform(rho, &h, &h)?;
    let mut deviation = 0.0f64;
    for x in 0..pi.group().order() {
        for y in 0..nh {
            let gap = wt.value(x * nh + y) - wg.value(x) * wh.value(y);
            deviation = deviation.max(gap.norm());
        }
    }
    Ok(deviation)
}

/// Span of all wavelet vectors over all irreducible classes.
#[derive(Debug, Clone, Copy)]
pub struct CompletenessReport {
    pub span_dim: usize,
    pub complete: bool,
}

/// Stacks the wavelet transforms of every basis pair under every
/// irreducible class of the group and measures the dimension they span
/// inside L2(G). Finite groups are compact, so the span must be everything.
pub fn peter_weyl_completeness(group: &FiniteGroup) -> Result<CompletenessReport> {
    let reps = decompose_regular(group)?;
    let n = group.order();
    let total: usize = reps.iter().map(|r| r.dim() * r.dim()).sum();
    let mut stacked = CMatrix::zeros(n, total);
    let mut col = 0;
    for rep in &reps {
        let d = rep.dim();
        for a in 0..d {
            let mut g = CVector::zeros(d);
            g[a] = Complex64::new(1.0, 0.0);
            for b in 0..d {
                let mut f = CVector::zeros(d);
                f[b] = Complex64::new(1.0, 0.0);
                let w = wavelet_transform(rep, &g, &f)?;
                stacked.set_column(col, w.values());
                col += 1;
            }
        }
    }
    let span_dim = linalg::numerical_rank(&stacked, 1e-10);
    Ok(CompletenessReport {
        span_dim,
        complete: span_dim == n,
    })
}

/// A fixed window with distinct, non-symmetric entries; generic enough to
/// avoid accidental orthogonality in the demos.
pub fn generic_window(d: usize) -> CVector {
    CVector::from_iterator(
        d,
        (0..d).map(|k| Complex64::new(1.0 + 0.37 * (k + 1) as f64, 0.21 * (k + 1) as f64)),
    )
}

/// Gram matrix of m shifted windows together with its smallest eigenvalue.
#[derive(Debug, Clone)]
pub struct FailureDemoReport {
    pub min_eig: f64,
    pub gram: GramMatrix,
}

/// Builds the Gram matrix of the orbit vectors pi(x_i)g over the first m
/// group elements. For m exceeding the representation dimension the rank
/// bound forces a singular matrix; smaller m is reported as-is.
pub fn interpolation_failure_demo(pi: &UnitaryRep, m: usize) -> Result<FailureDemoReport> {
    let order = pi.group().order();
    if m == 0 {
        return Err(Error::EmptyPointSet);
    }
    if m > order {
        return Err(Error::DemoTooLarge { m, order });
    }
    let g = admissible_rescale(pi, &generic_window(pi.dim()))?;
    let shifted: Vec<CVector> = (0..m).map(|x| pi.matrix(x) * &g).collect();
    let mut entries = CMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            entries[(i, j)] = inner(&shifted[j], &shifted[i]);
        }
    }
    let gram = GramMatrix::from_entries(entries, &format!("orbit(dim={})", pi.dim()))?;
    let report = psd_check(&gram);
    Ok(FailureDemoReport {
        min_eig: report.min_eig,
        gram,
    })
}
