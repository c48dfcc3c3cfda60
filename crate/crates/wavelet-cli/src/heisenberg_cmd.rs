//! Orthogonality checks for the dilated transform on the reduced group.
//! Profiles constant in tau must pair to zero; the control profile
//! carries the matching central character and must not.

use num_complex::Complex64;
use wavelet_spaces::heisenberg::{
    box_norm, tau_independent_orthogonality, DilatedSchrodingerRep, HeisenbergQuad, ProfileFn,
};
use wavelet_spaces::tf::Window;

use crate::report::{line, num};
use crate::{input_error, HeisenbergArgs, ProfileName, EXIT_OK, EXIT_VIOLATION};

/// Orthogonality must hold down to quadrature round-off.
const DEFAULT_TOLERANCE: f64 = 1e-6;

/// The control pairing must stay clearly away from zero.
const CONTROL_FLOOR: f64 = 1e-3;

fn bump(x: &[f64], omega: &[f64]) -> f64 {
    let q: f64 = x.iter().map(|v| v * v).sum::<f64>() + omega.iter().map(|v| v * v).sum::<f64>();
    (-0.5 * std::f64::consts::PI * q).exp()
}

pub fn run(args: &HeisenbergArgs) -> u8 {
    if args.m == 0 {
        return input_error("the dilation index m must be a non-zero integer");
    }
    let rep = match DilatedSchrodingerRep::new(args.m) {
        Ok(r) => r,
        Err(e) => return input_error(&e.to_string()),
    };
    let g = Window::gaussian(1).expect("dimension 1 is valid");
    let f = Window::gaussian(1).expect("dimension 1 is valid");
    let quad = HeisenbergQuad::default_for_m(args.m);
    let m = args.m;
    let profile: Box<ProfileFn> = match args.profile {
        ProfileName::Constant => Box::new(|_, _, _| Complex64::new(1.0, 0.0)),
        ProfileName::Gaussian => Box::new(|x: &[f64], omega: &[f64], _| {
            Complex64::new(bump(x, omega), 0.0)
        }),
        // Carries the central character of the representation, so the
        // tau average no longer cancels.
        ProfileName::Control => Box::new(move |x: &[f64], omega: &[f64], tau: f64| {
            Complex64::from_polar(bump(x, omega), -2.0 * std::f64::consts::PI * m as f64 * tau)
        }),
    };
    let overlap = match tau_independent_orthogonality(&rep, &*profile, &g, &f, &quad) {
        Ok(v) => v,
        Err(e) => return input_error(&e.to_string()),
    };
    let hnorm = match box_norm(&*profile, &quad, 1) {
        Ok(v) => v,
        Err(e) => return input_error(&e.to_string()),
    };
    // The transform has box norm 1/sqrt(|m|), which sets the scale the
    // pairing is measured against.
    let scale = hnorm / (m.abs() as f64).sqrt();
    let relative = if scale > 0.0 { overlap / scale } else { overlap };
    let tol = args.tol.unwrap_or(DEFAULT_TOLERANCE);
    line("command", "heisenberg");
    line("m", m.to_string());
    line("profile", args.profile.as_str());
    line("phase_nodes", quad.phase_space.nodes().to_string());
    line("tau_nodes", quad.tau_nodes.to_string());
    line("overlap", num(overlap));
    line("profile_norm", num(hnorm));
    line("relative", num(relative));
    match args.profile {
        ProfileName::Control => {
            if relative > CONTROL_FLOOR {
                line("verdict", "CONTROL");
                EXIT_OK
            } else {
                line("verdict", "FAIL");
                EXIT_VIOLATION
            }
        }
        _ => {
            if relative <= tol {
                line("verdict", "PASS");
                EXIT_OK
            } else {
                line("verdict", "FAIL");
                EXIT_VIOLATION
            }
        }
    }
}
