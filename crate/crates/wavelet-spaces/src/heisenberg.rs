//! Wavelet analysis attached to the reduced Heisenberg group: the dilated
//! representation family indexed by a nonzero integer, and the quadrature
//! demonstration that functions ignoring the central coordinate are
//! orthogonal to every wavelet transform, which rules out completeness.

use crate::error::{Error, Result};
use crate::tf::{integrate, stft_eval, QuadratureSpec, TFPoint, Window};
use num_complex::Complex64;
use std::f64::consts::PI;

/// A point (x, omega, tau) of phase space extended by the central circle
/// coordinate tau in [0, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedHeisenbergPoint {
    x: Vec<f64>,
    omega: Vec<f64>,
    tau: f64,
}

impl ReducedHeisenbergPoint {
    pub fn new(x: Vec<f64>, omega: Vec<f64>, tau: f64) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if x.len() != omega.len() {
            return Err(Error::DimensionMismatch {
                left: x.len(),
                right: omega.len(),
            });
        }
        if x.iter().chain(omega.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if !tau.is_finite() || !(0.0..1.0).contains(&tau) {
            return Err(Error::BadTau { tau });
        }
        Ok(ReducedHeisenbergPoint { x, omega, tau })
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// The square-integrable representation of the reduced Heisenberg group
/// with nonzero integer dilation index m; m = 1 is the plain
/// time-frequency-shift action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DilatedSchrodingerRep {
    m: i32,
}

impl DilatedSchrodingerRep {
    pub fn new(m: i32) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroDilation);
        }
        Ok(DilatedSchrodingerRep { m })
    }

    pub fn m(&self) -> i32 {
        self.m
    }
}

/// Quadrature plan for pairings over the truncated group: one rule per
/// phase-space axis plus an equispaced tau rule, which annihilates the
/// central characters exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergQuad {
    pub phase_space: QuadratureSpec,
    pub tau_nodes: usize,
}

impl HeisenbergQuad {
    /// Default plan for dilation index m: half-width 6 with 129 nodes per
    /// phase-space axis, and max(16, 8|m|) tau nodes.
    pub fn default_for_m(m: i32) -> Self {
        HeisenbergQuad {
            phase_space: QuadratureSpec::new(6.0, 129).expect("static quadrature parameters"),
            tau_nodes: 16usize.max(8 * m.unsigned_abs() as usize),
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

/// Wavelet transform of `f` against `g` under the dilated representation:
/// e^{-2 pi i m tau} e^{pi i m x.omega} V_g f(m x, omega).
pub fn dilated_wavelet_eval(
    rep: &DilatedSchrodingerRep,
    g: &Window,
    f: &Window,
    p: &ReducedHeisenbergPoint,
) -> Result<Complex64> {
    let m = rep.m() as f64;
    let scaled: Vec<f64> = p.x().iter().map(|&v| m * v).collect();
    let at = TFPoint::new(scaled, p.omega().to_vec())?;
    let phase = Complex64::from_polar(
        1.0,
        -2.0 * PI * m * p.tau() + PI * m * dot(p.x(), p.omega()),
    );
    Ok(phase * stft_eval(f, g, &at)?)
}

/// Function on the reduced group, sampled as `(x, omega, tau)`.
pub type ProfileFn = dyn Fn(&[f64], &[f64], f64) -> Complex64;

/// L2 norm of `h` over the truncated group box, with the phase-space
/// trapezoid rule and the equispaced tau mean.
pub fn box_norm(h: &ProfileFn, quad: &HeisenbergQuad, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if quad.tau_nodes == 0 {
        return Err(Error::InvalidQuadrature);
    }
    let nt = quad.tau_nodes;
    let value = integrate(&quad.phase_space, 2 * n, |coords| {
        let (x, omega) = coords.split_at(n);
        let mut acc = 0.0f64;
        for j in 0..nt {
            let tau = j as f64 / nt as f64;
            acc += h(x, omega, tau).norm_sqr();
        }
        Complex64::new(acc / nt as f64, 0.0)
    });
    Ok(value.re.max(0.0).sqrt())
}

/// Magnitude of the pairing between `h` and the wavelet transform of `f`
/// against `g`, over the truncated box times one period of tau. The
/// equispaced tau rule integrates the central character exactly, so for
/// any `h` that ignores its tau argument the result is pure round-off;
/// a tau-dependent `h` exposes the transform instead.
pub fn tau_independent_orthogonality(
    rep: &DilatedSchrodingerRep,
    h: &ProfileFn,
    g: &Window,
    f: &Window,
    quad: &HeisenbergQuad,
) -> Result<f64> {
    let n = g.dimension();
    if f.dimension() != n {
        return Err(Error::DimensionMismatch {
            left: f.dimension(),
            right: n,
        });
    }
    let needed = 8 * rep.m().unsigned_abs() as usize;
    if quad.tau_nodes < needed {
        return Err(Error::TooFewTauNodes {
            needed,
            m: rep.m().unsigned_abs(),
            got: quad.tau_nodes,
        });
    }
    let m = rep.m() as f64;
    let nt = quad.tau_nodes;
    let mut scaled = vec![0f64; n];
    let mut failure: Option<Error> = None;
    let value = integrate(&quad.phase_space, 2 * n, |coords| {
        let (x, omega) = coords.split_at(n);
        // tau integral of h against the conjugated central character.
        let mut a = Complex64::new(0.0, 0.0);
        for j in 0..nt {
            let tau = j as f64 / nt as f64;
            a += h(x, omega, tau) * Complex64::from_polar(1.0, 2.0 * PI * m * tau);
        }
        a /= nt as f64;
        for k in 0..n {
            scaled[k] = m * x[k];
        }
        let v = TFPoint::new(scaled.clone(), omega.to_vec())
            .and_then(|at| stft_eval(f, g, &at));
        match v {
            Ok(v) => {
                let phase = Complex64::from_polar(1.0, PI * m * dot(x, omega));
                a * (phase * v).conj()
            }
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(value.norm()),
    }
}
