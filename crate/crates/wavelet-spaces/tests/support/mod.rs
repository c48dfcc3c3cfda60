//! Reference implementations used only to cross-check the library.
//! Everything here deliberately takes a different route than the crate:
//! Simpson instead of trapezoid quadrature, a cyclic Jacobi sweep instead
//! of the library eigensolver, determinants instead of a pseudo-inverse,
//! and conjugacy classes read straight off the multiplication table.

use num_complex::Complex64;
use std::f64::consts::PI;
use wavelet_spaces::finite::FiniteGroup;
use wavelet_spaces::tf::Window;

/// Composite Simpson nodes and weights on [-half_width, half_width].
/// `nodes` must be odd and at least 3.
pub fn simpson_rule(half_width: f64, nodes: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(nodes >= 3 && nodes % 2 == 1, "Simpson needs an odd node count");
    let h = 2.0 * half_width / (nodes - 1) as f64;
    let xs: Vec<f64> = (0..nodes).map(|i| -half_width + i as f64 * h).collect();
    let ws: Vec<f64> = (0..nodes)
        .map(|i| {
            if i == 0 || i == nodes - 1 {
                h / 3.0
            } else if i % 2 == 1 {
                4.0 * h / 3.0
            } else {
                2.0 * h / 3.0
            }
        })
        .collect();
    (xs, ws)
}

/// Tensor-product composite Simpson over the cube [-half_width, half_width]^n.
pub fn simpson_nd(
    half_width: f64,
    nodes: usize,
    n: usize,
    mut f: impl FnMut(&[f64]) -> Complex64,
) -> Complex64 {
    let (xs, ws) = simpson_rule(half_width, nodes);
    let mut idx = vec![0usize; n];
    let mut point = vec![0.0f64; n];
    let mut acc = Complex64::new(0.0, 0.0);
    loop {
        let mut w = 1.0;
        for (k, &i) in idx.iter().enumerate() {
            point[k] = xs[i];
            w *= ws[i];
        }
        acc += f(&point) * w;
        let mut carry = 0;
        while carry < n {
            idx[carry] += 1;
            if idx[carry] < nodes {
                break;
            }
            idx[carry] = 0;
            carry += 1;
        }
        if carry == n {
            return acc;
        }
    }
}

/// V_g f(x, omega) by Simpson quadrature, independent of the library rule.
pub fn stft_oracle(f: &Window, g: &Window, x: &[f64], omega: &[f64], nodes: usize) -> Complex64 {
    let n = x.len();
    simpson_nd(8.0, nodes, n, |t| {
        let shifted: Vec<f64> = t.iter().zip(x).map(|(a, b)| a - b).collect();
        let dot: f64 = t.iter().zip(omega).map(|(a, b)| a * b).sum();
        f.eval(t) * g.eval(&shifted).conj() * Complex64::from_polar(1.0, -2.0 * PI * dot)
    })
}

/// L2 inner product of two windows by Simpson quadrature, linear in `u`.
pub fn inner_l2_oracle(u: &Window, v: &Window, nodes: usize) -> Complex64 {
    let n = u.dimension();
    simpson_nd(8.0, nodes, n, |t| u.eval(t) * v.eval(t).conj())
}

/// Wigner distribution of a one-dimensional window straight from its
/// defining integral over the symmetric correlation variable.
pub fn wigner_oracle(g: &Window, x: f64, omega: f64, nodes: usize) -> Complex64 {
    simpson_nd(16.0, nodes, 1, |t| {
        let plus = [x + t[0] / 2.0];
        let minus = [x - t[0] / 2.0];
        g.eval(&plus) * g.eval(&minus).conj() * Complex64::from_polar(1.0, -2.0 * PI * t[0] * omega)
    })
}

/// Eigenpairs of a Hermitian matrix given as rows of `Vec<Complex64>`.
pub struct JacobiEigen {
    /// Ascending eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// Eigenvector columns, `vectors[r][c]` matching eigenvalue `c`.
    pub vectors: Vec<Vec<Complex64>>,
}

/// Cyclic Jacobi diagonalization with complex rotations. Converges to
/// machine precision for any Hermitian input of modest size.
pub fn jacobi_hermitian_eigen(m: &[Vec<Complex64>]) -> JacobiEigen {
    let n = m.len();
    let mut a: Vec<Vec<Complex64>> = m.to_vec();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| Complex64::new(if r == c { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    let scale: f64 = m
        .iter()
        .flat_map(|row| row.iter().map(|z| z.norm()))
        .fold(1.0f64, f64::max);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for (r, row) in a.iter().enumerate() {
            for (c, z) in row.iter().enumerate() {
                if r != c {
                    off += z.norm_sqr();
                }
            }
        }
        if off.sqrt() <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let gamma = a[p][q].norm();
                if gamma <= 1e-300 {
                    continue;
                }
                let u = a[p][q] / gamma;
                let theta = 0.5 * (2.0 * gamma).atan2(a[q][q].re - a[p][p].re);
                let (s, c) = theta.sin_cos();
                let su = u * s;
                // Rows of U^H A, then columns of (U^H A) U.
                let (head, tail) = a.split_at_mut(q);
                for (ap_k, aq_k) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                    let ap = *ap_k;
                    let aq = *aq_k;
                    *ap_k = ap * c - aq * su;
                    *aq_k = ap * su.conj() + aq * c;
                }
                for row in a.iter_mut() {
                    let ap = row[p];
                    let aq = row[q];
                    row[p] = ap * c - aq * su.conj();
                    row[q] = ap * su + aq * c;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = vp * c - vq * su.conj();
                    row[q] = vp * su + vq * c;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].re.total_cmp(&a[j][j].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i][i].re).collect();
    let vectors: Vec<Vec<Complex64>> = (0..n)
        .map(|r| order.iter().map(|&c| v[r][c]).collect())
        .collect();
    JacobiEigen {
        eigenvalues,
        vectors,
    }
}

/// Number of conjugacy classes, read directly off the group table.
pub fn conjugacy_class_count(g: &FiniteGroup) -> usize {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut classes = 0;
    for x in 0..n {
        if seen[x] {
            continue;
        }
        classes += 1;
        for y in 0..n {
            let conj = g.mul(g.mul(y, x), g.inv(y));
            seen[conj] = true;
        }
    }
    classes
}

/// Character chi_k of the cyclic group of order n: j maps to e^{2 pi i jk/n}.
pub fn dft_character(n: usize, k: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * (j * k) as f64 / n as f64))
        .collect()
}

/// Solves a 3x3 complex system by Cramer determinants.
pub fn cramer_solve_3(a: &[[Complex64; 3]; 3], b: &[Complex64; 3]) -> [Complex64; 3] {
    let det3 = |m: &[[Complex64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det3(a);
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for col in 0..3 {
        let mut ac = *a;
        for row in 0..3 {
            ac[row][col] = b[row];
        }
        out[col] = det3(&ac) / d;
    }
    out
}
