//! Linear independence of finite families of time-frequency shifts, decided
//! through the spectrum of their Gram matrix, with a diagonal-dominance
//! certificate for widely spaced point sets and a search for the spacing
//! radius that forces the certificate.

use crate::error::{Error, Result};
use crate::interp::{gram_assemble, GramMatrix, PointSet};
use crate::linalg;
use crate::tf::{self_transform, TFPoint, Window};
use num_complex::Complex64;

/// Relative eigenvalue tolerance below which a shift family counts as
/// dependent; verdicts within two decades of it are flagged as borderline.
pub const INDEPENDENCE_TOLERANCE: f64 = 1e-10;

/// Entrywise bound for the agreement between the assembled Gram matrix and
/// its direct phase-formula recomputation.
pub const CONVENTION_TOLERANCE: f64 = 1e-10;

/// Angular samples per ring in the spacing search, a step of pi/64.
const ANGULAR_SAMPLES: usize = 128;

/// Off-diagonal row sums of the Gram matrix. When every row sum stays
/// strictly below the unit diagonal, Gershgorin discs keep the spectrum
/// away from zero, so the shifts are independent.
#[derive(Debug, Clone)]
pub struct DominanceCertificate {
    /// Sum of |entry| over the off-diagonal of each row.
    pub row_sums: Vec<f64>,
    pub max_row_sum: f64,
    pub holds: bool,
}

/// Spectral verdict on a family of time-frequency shifts.
#[derive(Debug, Clone)]
pub struct HrtVerdict {
    pub min_eig: f64,
    pub max_eig: f64,
    /// max_eig / min_eig, infinite when the spectrum touches zero.
    pub cond: f64,
    pub independent: bool,
    /// Present exactly when diagonal dominance holds.
    pub certificate: Option<DominanceCertificate>,
    /// True when min_eig/max_eig sits within two decades of the tolerance,
    /// where the verdict should not be trusted without a finer look.
    pub near_threshold: bool,
}

/// Search grid for `spacing_radius`: rings at multiples of `step` out to
/// `r_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacingSearch {
    pub r_max: f64,
    pub step: f64,
}

impl Default for SpacingSearch {
    fn default() -> Self {
        SpacingSearch {
            r_max: 8.0,
            step: 0.05,
        }
    }
}

/// Gram matrix of the shifted windows over `omega`, cross-checked entry by
/// entry against the direct phase formula. The two computations share the
/// underlying transform but fill opposite triangles independently, so a
/// broken phase convention cannot stay Hermitian and is caught here.
pub fn hrt_gram(g: &Window, omega: &PointSet) -> Result<GramMatrix> {
    let assembled = gram_assemble(g, omega)?;
    let g = g.admissible()?;
    let m = omega.len();
    for i in 0..m {
        for j in 0..m {
            let pi = omega.get(i);
            let pj = omega.get(j);
            let mut dot = 0.0;
            for d in 0..pi.dim() {
                dot += pj.x()[d] * (pi.omega()[d] - pj.omega()[d]);
            }
            let direct = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * dot)
                * self_transform(&g, &pi.sub(pj)?)?;
            let deviation = (direct - assembled.entries()[(i, j)]).norm();
            if deviation > CONVENTION_TOLERANCE {
                return Err(Error::KernelConventionMismatch { i, j, deviation });
            }
        }
    }
    Ok(assembled)
}

/// Verdict from an already-built Gram matrix.
pub fn verdict_from_gram(k: &GramMatrix, tol: f64) -> HrtVerdict {
    let eig = linalg::hermitian_eigen(k.entries());
    let min_eig = eig.min();
    let max_eig = eig.max();
    let independent = min_eig > tol * max_eig;
    let cond = if min_eig > 0.0 {
        max_eig / min_eig
    } else {
        f64::INFINITY
    };
    let near_threshold = if max_eig > 0.0 {
        let ratio = min_eig / max_eig;
        ratio >= tol / 100.0 && ratio <= tol * 100.0
    } else {
        false
    };
    let cert = dominance_from_gram(k);
    HrtVerdict {
        min_eig,
        max_eig,
        cond,
        independent,
        certificate: if cert.holds { Some(cert) } else { None },
        near_threshold,
    }
}

pub fn hrt_verdict_with_tol(g: &Window, omega: &PointSet, tol: f64) -> Result<HrtVerdict> {
    Ok(verdict_from_gram(&hrt_gram(g, omega)?, tol))
}

/// Eigenvalue verdict on the shifts of `g` over `omega` at the default
/// independence tolerance.
pub fn hrt_verdict(g: &Window, omega: &PointSet) -> Result<HrtVerdict> {
    hrt_verdict_with_tol(g, omega, INDEPENDENCE_TOLERANCE)
}

/// Dominance certificate from an already-built Gram matrix.
pub fn dominance_from_gram(k: &GramMatrix) -> DominanceCertificate {
    let m = k.size();
    let mut row_sums = Vec::with_capacity(m);
    let mut max_row_sum = 0.0f64;
    for i in 0..m {
        let mut sum = 0.0;
        for j in 0..m {
            if j != i {
                sum += k.entries()[(i, j)].norm();
            }
        }
        max_row_sum = max_row_sum.max(sum);
        row_sums.push(sum);
    }
    DominanceCertificate {
        row_sums,
        max_row_sum,
        holds: max_row_sum < 1.0,
    }
}

/// Off-diagonal row sums of the Gram matrix of `g` over `omega`.
pub fn dominance_check(g: &Window, omega: &PointSet) -> Result<DominanceCertificate> {
    Ok(dominance_from_gram(&hrt_gram(g, omega)?))
}

/// Smallest sampled radius R such that (m-1) times the sampled envelope of
/// |V_g g| beyond R stays below 1. Any m points with pairwise phase-space
/// distances above R then satisfy the dominance certificate, up to the
/// resolution of the polar sampling grid. One-dimensional windows only; the
/// reported radius depends on the grid as well as on g and m.
pub fn spacing_radius(g: &Window, m: usize, search: SpacingSearch) -> Result<f64> {
    if m < 2 {
        return Err(Error::SpacingTooFew { m });
    }
    if g.dimension() != 1 {
        return Err(Error::DimensionMismatch {
            left: g.dimension(),
            right: 1,
        });
    }
    if !(search.step.is_finite() && search.r_max.is_finite())
        || search.step <= 0.0
        || search.step > search.r_max
    {
        return Err(Error::BadSearchGrid);
    }
    let g = g.admissible()?;
    let rings = (search.r_max / search.step).floor() as usize;
    let mut ring_max = Vec::with_capacity(rings);
    for j in 1..=rings {
        let r = j as f64 * search.step;
        let mut peak = 0.0f64;
        for k in 0..ANGULAR_SAMPLES {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / ANGULAR_SAMPLES as f64;
            let q = TFPoint::new(vec![r * theta.cos()], vec![r * theta.sin()])?;
            peak = peak.max(self_transform(&g, &q)?.norm());
        }
        ring_max.push(peak);
    }
    // Envelope at ring j is the suffix maximum, the sampled stand-in for
    // the supremum over all radii at or beyond j.
    let mut envelope = ring_max;
    for j in (0..envelope.len().saturating_sub(1)).rev() {
        envelope[j] = envelope[j].max(envelope[j + 1]);
    }
    let factor = (m - 1) as f64;
    for (idx, &env) in envelope.iter().enumerate() {
        if factor * env < 1.0 {
            return Ok((idx + 1) as f64 * search.step);
        }
    }
    Err(Error::SearchExhausted {
        r_max: search.r_max,
    })
}
