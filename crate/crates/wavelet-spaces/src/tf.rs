//! Windows on R^n, short-time Fourier transforms by quadrature, closed-form
//! Gaussian kernels, phase-space point kernels, the Wigner distribution, and
//! the phase-corrected transform attached to the reduced Heisenberg group.
//!
//! Conventions. The transform of f against a window g at the phase-space
//! point (x, omega) is
//!
//! ```text
//! V_g f(x, omega) = integral f(t) conj(g(t - x)) e^{-2 pi i t.omega} dt
//! ```
//!
//! and the reference Gaussian is g(t) = e^{-(pi/2)|t|^2}, which has unit L2
//! norm in every dimension. Integrals use a composite trapezoid rule on
//! [-T, T]^n with a fixed lexicographic summation order, so every result is
//! bit-reproducible.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::borrow::Cow;
use std::f64::consts::PI;

/// A point (x, omega) in time-frequency phase space R^{2n}.
#[derive(Debug, Clone, PartialEq)]
pub struct TFPoint {
    x: Vec<f64>,
    omega: Vec<f64>,
}

impl TFPoint {
    /// Builds a phase-space point. `x` and `omega` must share a positive
    /// length and contain only finite values.
    pub fn new(x: Vec<f64>, omega: Vec<f64>) -> Result<Self> {
        if x.len() != omega.len() {
            return Err(Error::DimensionMismatch {
                left: x.len(),
                right: omega.len(),
            });
        }
        if x.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if x.iter().chain(omega.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(TFPoint { x, omega })
    }

    /// The phase-space origin in dimension `n`.
    pub fn origin(n: usize) -> Result<Self> {
        TFPoint::new(vec![0.0; n], vec![0.0; n])
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

    /// Componentwise difference `self - rhs`.
    pub fn sub(&self, rhs: &TFPoint) -> Result<TFPoint> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: rhs.dim(),
            });
        }
        let x = self.x.iter().zip(&rhs.x).map(|(a, b)| a - b).collect();
        let omega = self
            .omega
            .iter()
            .zip(&rhs.omega)
            .map(|(a, b)| a - b)
            .collect();
        TFPoint::new(x, omega)
    }

    /// Euclidean norm of the full phase-space vector (x, omega).
    pub fn phase_space_norm(&self) -> f64 {
        self.x
            .iter()
            .chain(self.omega.iter())
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Composite trapezoid rule with `nodes` points per axis on [-T, T]^n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    half_width: f64,
    nodes: usize,
}

impl QuadratureSpec {
    pub fn new(half_width: f64, nodes: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) || nodes < 2 {
            return Err(Error::InvalidQuadrature);
        }
        Ok(QuadratureSpec { half_width, nodes })
    }

    /// Default rule for integrands with Gaussian-like decay: T = 6 with 2048
    /// nodes in one dimension, 256 per axis in two, 64 per axis above that.
    pub fn default_for(dimension: usize) -> Self {
        let nodes = match dimension {
            0 | 1 => 2048,
            2 => 256,
            _ => 64,
        };
        QuadratureSpec {
            half_width: 6.0,
            nodes,
        }
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// The finer of two rules: larger domain and more nodes.
    pub fn merge(&self, other: &QuadratureSpec) -> QuadratureSpec {
        QuadratureSpec {
            half_width: self.half_width.max(other.half_width),
            nodes: self.nodes.max(other.nodes),
        }
    }

    fn step(&self) -> f64 {
        2.0 * self.half_width / (self.nodes - 1) as f64
    }

    fn node(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.step()
    }

    fn weight(&self, i: usize) -> f64 {
        if i == 0 || i == self.nodes - 1 {
            0.5 * self.step()
        } else {
            self.step()
        }
    }
}

/// Integrates `f` over [-T, T]^n with the tensor trapezoid rule. Nodes are
/// visited in lexicographic order and accumulated in that fixed order.
pub(crate) fn integrate<F>(spec: &QuadratureSpec, n: usize, mut f: F) -> Complex64
where
    F: FnMut(&[f64]) -> Complex64,
{
    let mut idx = vec![0usize; n];
    let mut t = vec![0f64; n];
    let mut acc = Complex64::new(0.0, 0.0);
    loop {
        let mut w = 1.0;
        for k in 0..n {
            t[k] = spec.node(idx[k]);
            w *= spec.weight(idx[k]);
        }
        acc += f(&t) * w;
        let mut axis = n;
        loop {
            if axis == 0 {
                return acc;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < spec.nodes {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// Shape of a window's evaluator.
#[derive(Debug, Clone, PartialEq)]
pub enum WindowKind {
    /// e^{-(pi/2)|t|^2}, unit L2 norm in every dimension.
    Gaussian,
    /// Product over axes of the k-th normalized Hermite function.
    Hermite(u32),
    /// One-dimensional table with linear interpolation, zero outside.
    Tabulated,
}

#[derive(Debug, Clone, PartialEq)]
struct Table {
    x0: f64,
    dx: f64,
    samples: Vec<f64>,
}

impl Table {
    fn eval(&self, t: f64) -> f64 {
        let u = (t - self.x0) / self.dx;
        if u < 0.0 || u > (self.samples.len() - 1) as f64 {
            return 0.0;
        }
        let i = (u.floor() as usize).min(self.samples.len() - 2);
        let frac = u - i as f64;
        self.samples[i] + frac * (self.samples[i + 1] - self.samples[i])
    }
}

/// An evaluable square-integrable function on R^n with quadrature metadata.
///
/// The cached `norm_l2` is always the value measured by the window's own
/// quadrature rule, so admissibility checks see exactly what the integrals
/// see.
#[derive(Debug, Clone)]
pub struct Window {
    dimension: usize,
    kind: WindowKind,
    quadrature: QuadratureSpec,
    amplitude: f64,
    reflected: bool,
    table: Option<Table>,
    hermite_scale: f64,
    norm_l2: f64,
}

impl Window {
    /// The reference Gaussian in dimension `n` with the default quadrature.
    pub fn gaussian(n: usize) -> Result<Window> {
        Window::gaussian_with(n, QuadratureSpec::default_for(n))
    }

    pub fn gaussian_with(n: usize, quadrature: QuadratureSpec) -> Result<Window> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut w = Window {
            dimension: n,
            kind: WindowKind::Gaussian,
            quadrature,
            amplitude: 1.0,
            reflected: false,
            table: None,
            hermite_scale: 1.0,
            norm_l2: 0.0,
        };
        w.norm_l2 = w.measure_norm();
        Ok(w)
    }

    /// The k-th Hermite window in dimension `n`: the product over axes of
    /// (2^k k!)^{-1/2} H_k(sqrt(pi) t) e^{-(pi/2)t^2} with H_k from the
    /// three-term recurrence. Order 0 reproduces the Gaussian, and every
    /// order has unit L2 norm.
    pub fn hermite(n: usize, k: u32) -> Result<Window> {
        Window::hermite_with(n, k, QuadratureSpec::default_for(n))
    }

    pub fn hermite_with(n: usize, k: u32, quadrature: QuadratureSpec) -> Result<Window> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if k == 0 {
            let mut w = Window::gaussian_with(n, quadrature)?;
            w.kind = WindowKind::Hermite(0);
            return Ok(w);
        }
        if k > 60 {
            // 2^k k! overflows f64 range well before k = 60 matters in
            // practice; reject rather than return garbage scales.
            return Err(Error::NonFinite);
        }
        let mut log_scale = 0.0f64;
        for j in 1..=k {
            log_scale += (2.0 * j as f64).ln();
        }
        let mut w = Window {
            dimension: n,
            kind: WindowKind::Hermite(k),
            quadrature,
            amplitude: 1.0,
            reflected: false,
            table: None,
            hermite_scale: (-0.5 * log_scale).exp(),
            norm_l2: 0.0,
        };
        w.norm_l2 = w.measure_norm();
        Ok(w)
    }

    /// A one-dimensional window sampled on the uniform grid
    /// x0, x0 + dx, ..., interpolated linearly and extended by zero.
    pub fn tabulated(x0: f64, dx: f64, samples: Vec<f64>) -> Result<Window> {
        Window::tabulated_with(x0, dx, samples, QuadratureSpec::default_for(1))
    }

    pub fn tabulated_with(
        x0: f64,
        dx: f64,
        samples: Vec<f64>,
        quadrature: QuadratureSpec,
    ) -> Result<Window> {
        if samples.len() < 2 || !(dx.is_finite() && dx > 0.0) || !x0.is_finite() {
            return Err(Error::InvalidTable);
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut w = Window {
            dimension: 1,
            kind: WindowKind::Tabulated,
            quadrature,
            amplitude: 1.0,
            reflected: false,
            table: Some(Table { x0, dx, samples }),
            hermite_scale: 1.0,
            norm_l2: 0.0,
        };
        w.norm_l2 = w.measure_norm();
        Ok(w)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn kind(&self) -> &WindowKind {
        &self.kind
    }

    pub fn quadrature(&self) -> &QuadratureSpec {
        &self.quadrature
    }

    /// L2 norm measured by this window's quadrature rule.
    pub fn norm_l2(&self) -> f64 {
        self.norm_l2
    }

    /// Short identifier used to tie interpolants to the window they were
    /// built from.
    pub fn id(&self) -> String {
        let tag = match self.kind {
            WindowKind::Gaussian => "gaussian".to_string(),
            WindowKind::Hermite(k) => format!("hermite({k})"),
            WindowKind::Tabulated => "tabulated".to_string(),
        };
        let refl = if self.reflected { ",reflected" } else { "" };
        if (self.amplitude - 1.0).abs() > 1e-14 {
            format!("{tag}(n={}{refl},rescaled)", self.dimension)
        } else {
            format!("{tag}(n={}{refl})", self.dimension)
        }
    }

    /// Evaluates the window at `t`, which must have the window's dimension.
    pub fn eval(&self, t: &[f64]) -> Complex64 {
        assert_eq!(t.len(), self.dimension, "window evaluated off-dimension");
        let sign = if self.reflected { -1.0 } else { 1.0 };
        let value = match &self.kind {
            WindowKind::Gaussian => {
                let q: f64 = t.iter().map(|v| v * v).sum();
                (-0.5 * PI * q).exp()
            }
            WindowKind::Hermite(0) => {
                let q: f64 = t.iter().map(|v| v * v).sum();
                (-0.5 * PI * q).exp()
            }
            WindowKind::Hermite(k) => {
                let mut prod = 1.0f64;
                for &ti in t {
                    let s = sign * ti;
                    let u = PI.sqrt() * s;
                    let mut h_prev = 1.0f64;
                    let mut h = if *k == 0 { 1.0 } else { 2.0 * u };
                    for j in 1..*k {
                        let next = 2.0 * u * h - 2.0 * j as f64 * h_prev;
                        h_prev = h;
                        h = next;
                    }
                    prod *= self.hermite_scale * h * (-0.5 * PI * s * s).exp();
                }
                prod
            }
            WindowKind::Tabulated => self.table.as_ref().unwrap().eval(sign * t[0]),
        };
        Complex64::new(self.amplitude * value, 0.0)
    }

    /// A copy rescaled to unit L2 norm as measured by its quadrature.
    pub fn normalized(&self) -> Result<Window> {
        if self.norm_l2 <= 0.0 {
            return Err(Error::ZeroVector);
        }
        let mut w = self.clone();
        w.amplitude /= self.norm_l2;
        w.norm_l2 = w.measure_norm();
        Ok(w)
    }

    /// The reflection t -> g(-t) of this window.
    pub fn reflected_copy(&self) -> Window {
        let mut w = self.clone();
        w.reflected = !w.reflected;
        w
    }

    /// Admissible view of the window: unchanged when the norm is within
    /// 1e-8 of 1, silently rescaled when within 1e-3, rejected otherwise.
    pub(crate) fn admissible(&self) -> Result<Cow<'_, Window>> {
        let dev = (self.norm_l2 - 1.0).abs();
        if dev <= 1e-8 {
            Ok(Cow::Borrowed(self))
        } else if dev <= 1e-3 {
            Ok(Cow::Owned(self.normalized()?))
        } else {
            Err(Error::NotAdmissible { norm: self.norm_l2 })
        }
    }

    /// True when the closed-form Gaussian kernel applies to this window.
    fn closed_form_gaussian(&self) -> bool {
        matches!(self.kind, WindowKind::Gaussian)
    }

    fn measure_norm(&self) -> f64 {
        let norm_sq = integrate(&self.quadrature, self.dimension, |t| {
            let v = self.eval(t);
            Complex64::new(v.norm_sqr(), 0.0)
        });
        norm_sq.re.max(0.0).sqrt()
    }
}

/// Numerical short-time Fourier transform V_g f at the point `p`, using the
/// finer of the two windows' quadrature rules.
pub fn stft_eval(f: &Window, g: &Window, p: &TFPoint) -> Result<Complex64> {
    if f.dimension() != g.dimension() {
        return Err(Error::DimensionMismatch {
            left: f.dimension(),
            right: g.dimension(),
        });
    }
    if p.dim() != f.dimension() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: f.dimension(),
        });
    }
    let n = f.dimension();
    let quad = f.quadrature().merge(g.quadrature());
    let mut shifted = vec![0f64; n];
    Ok(integrate(&quad, n, |t| {
        for k in 0..n {
            shifted[k] = t[k] - p.x()[k];
        }
        let phase = Complex64::from_polar(1.0, -2.0 * PI * dot(t, p.omega()));
        f.eval(t) * g.eval(&shifted).conj() * phase
    }))
}

/// Closed form of the Gaussian self-transform:
/// V_g g(x, omega) = e^{-pi i x.omega} e^{-(pi/4)|x|^2} e^{-pi |omega|^2}.
pub fn gaussian_stft_closed_form(n: usize, p: &TFPoint) -> Result<Complex64> {
    if p.dim() != n {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: n,
        });
    }
    let x_sq = dot(p.x(), p.x());
    let omega_sq = dot(p.omega(), p.omega());
    let magnitude = (-0.25 * PI * x_sq - PI * omega_sq).exp();
    Ok(Complex64::from_polar(magnitude, -PI * dot(p.x(), p.omega())))
}

/// Gaussian self-transform for a window known to be Gaussian up to a real
/// amplitude; the amplitude enters squared.
fn gaussian_self_transform(g: &Window, p: &TFPoint) -> Result<Complex64> {
    let base = gaussian_stft_closed_form(g.dimension(), p)?;
    Ok(base * (g.amplitude * g.amplitude))
}

/// Self-transform V_g g, through the closed form for Gaussian windows and
/// through quadrature otherwise.
pub(crate) fn self_transform(g: &Window, p: &TFPoint) -> Result<Complex64> {
    if g.closed_form_gaussian() {
        gaussian_self_transform(g, p)
    } else {
        stft_eval(g, g, p)
    }
}

/// Kernel of the phase-space point `center` evaluated at `at`:
/// V_g(M_omega T_x g)(at) = e^{-2 pi i x_c.(omega_at - omega_c)}
/// V_g g(at - center). The window must be normalized to 1 within 1e-8.
pub fn point_kernel_eval(g: &Window, center: &TFPoint, at: &TFPoint) -> Result<Complex64> {
    if center.dim() != g.dimension() || at.dim() != g.dimension() {
        return Err(Error::DimensionMismatch {
            left: center.dim().max(at.dim()),
            right: g.dimension(),
        });
    }
    if (g.norm_l2() - 1.0).abs() > 1e-8 {
        return Err(Error::NotAdmissible { norm: g.norm_l2() });
    }
    let diff = at.sub(center)?;
    let mut arg = 0.0;
    for k in 0..g.dimension() {
        arg += center.x()[k] * (at.omega()[k] - center.omega()[k]);
    }
    let phase = Complex64::from_polar(1.0, -2.0 * PI * arg);
    Ok(phase * self_transform(g, &diff)?)
}

/// Wigner distribution W g(x, omega) = 2^n e^{4 pi i x.omega}
/// V_{Ig} g(2x, 2 omega) with I the reflection (Ig)(t) = g(-t).
pub fn wigner_eval(g: &Window, p: &TFPoint) -> Result<Complex64> {
    if p.dim() != g.dimension() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: g.dimension(),
        });
    }
    let n = g.dimension();
    let doubled = TFPoint::new(
        p.x().iter().map(|v| 2.0 * v).collect(),
        p.omega().iter().map(|v| 2.0 * v).collect(),
    )?;
    let inner = if g.closed_form_gaussian() {
        // The Gaussian is even, so the reflection is the window itself.
        gaussian_self_transform(g, &doubled)?
    } else {
        stft_eval(g, &g.reflected_copy(), &doubled)?
    };
    let phase = Complex64::from_polar(1.0, 4.0 * PI * dot(p.x(), p.omega()));
    Ok(inner * phase * (1u64 << n) as f64)
}

/// Phase-corrected transform attached to the reduced Heisenberg group:
/// e^{-2 pi i tau} e^{pi i x.omega} V_g f(x, omega), with tau in [0, 1).
pub fn heisenberg_wavelet_eval(
    g: &Window,
    f: &Window,
    x: &[f64],
    omega: &[f64],
    tau: f64,
) -> Result<Complex64> {
    if !tau.is_finite() || !(0.0..1.0).contains(&tau) {
        return Err(Error::BadTau { tau });
    }
    let p = TFPoint::new(x.to_vec(), omega.to_vec())?;
    let phase = Complex64::from_polar(1.0, -2.0 * PI * tau + PI * dot(x, omega));
    Ok(phase * stft_eval(f, g, &p)?)
}
