//! Finite-group demonstrations. Each prints its certified quantities as
//! report lines and a PASS/FAIL verdict; FAIL means a structural
//! invariant did not hold and maps to the violation exit code.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::TAU;
use wavelet_spaces::finite::{
    admissible_rescale, build_group, convexity_check, decompose_regular, generic_window,
    interpolation_failure_demo, peter_weyl_completeness, positive_type_matrix, rigidity_check,
    tensor_product_check, wavelet_transform, FiniteGroup, GroupSpec, UnitaryRep,
};
use wavelet_spaces::linalg::{hermitian_eigen, CVector};
use wavelet_spaces::Error;

use crate::problem::{GramSection, ProblemFile};
use crate::report::{line, num};
use crate::{input_error, DemoName, FiniteArgs, EXIT_OK, EXIT_VIOLATION};

/// Parses group specifications of the form kind:N.
fn parse_group(text: &str) -> Result<GroupSpec, String> {
    let (kind, count) = text
        .split_once(':')
        .ok_or("group spec must look like kind:N, e.g. dihedral:4")?;
    let n: usize = count
        .parse()
        .map_err(|_| format!("group size {count:?} is not a number"))?;
    match kind {
        "cyclic" => Ok(GroupSpec::Cyclic(n)),
        "dihedral" => Ok(GroupSpec::Dihedral(n)),
        "heisenberg" => Ok(GroupSpec::FiniteHeisenberg(n)),
        other => Err(format!("unknown group kind {other:?}")),
    }
}

/// Splits decomposition failures into bad inputs and broken invariants.
fn decompose(group: &FiniteGroup) -> Result<Vec<UnitaryRep>, u8> {
    match decompose_regular(group) {
        Ok(reps) => Ok(reps),
        Err(e @ Error::GroupTooLarge { .. }) => Err(input_error(&e.to_string())),
        Err(e) => {
            eprintln!("error: {e}");
            Err(EXIT_VIOLATION)
        }
    }
}

fn verdict(pass: bool) -> u8 {
    line("verdict", if pass { "PASS" } else { "FAIL" });
    if pass {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

fn random_window(dim: usize, rng: &mut ChaCha8Rng) -> CVector {
    loop {
        let v = CVector::from_fn(dim, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        if v.norm() > 1e-6 {
            return v;
        }
    }
}

fn require_seed(args: &FiniteArgs) -> Result<u64, u8> {
    let seed = args
        .seed
        .ok_or_else(|| input_error("this demo is randomized and requires --seed"))?;
    line("seed", seed.to_string());
    Ok(seed)
}

pub fn run(args: &FiniteArgs) -> u8 {
    let spec = match parse_group(&args.group) {
        Ok(s) => s,
        Err(e) => return input_error(&e),
    };
    let group = match build_group(&spec) {
        Ok(g) => g,
        Err(e) => return input_error(&e.to_string()),
    };
    line("command", "finite");
    line("group", &args.group);
    line("demo", args.demo.as_str());
    match args.demo {
        DemoName::ClassEquation => class_equation(&group),
        DemoName::Completeness => completeness(&group),
        DemoName::Tensor => tensor(&group),
        DemoName::InterpolationFailure => interpolation_failure(&group, args),
        DemoName::Rigidity => rigidity(&group, args),
        DemoName::PositiveType => positive_type(&group, args),
        DemoName::Convexity => convexity(&group, args),
    }
}

fn class_equation(group: &FiniteGroup) -> u8 {
    let reps = match decompose(group) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let dims: Vec<String> = reps.iter().map(|r| r.dim().to_string()).collect();
    let square_sum: usize = reps.iter().map(|r| r.dim() * r.dim()).sum();
    line("dims", dims.join(","));
    line("square_sum", square_sum.to_string());
    line("order", group.order().to_string());
    verdict(square_sum == group.order())
}

fn completeness(group: &FiniteGroup) -> u8 {
    let report = match peter_weyl_completeness(group) {
        Ok(r) => r,
        Err(e @ Error::GroupTooLarge { .. }) => return input_error(&e.to_string()),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_VIOLATION;
        }
    };
    line("span_dim", report.span_dim.to_string());
    line("order", group.order().to_string());
    verdict(report.complete)
}

fn tensor(group: &FiniteGroup) -> u8 {
    let reps = match decompose(group) {
        Ok(r) => r,
        Err(code) => return code,
    };
    // Highest-dimensional class, paired with a non-trivial character of
    // the cyclic group of order three.
    let pi = reps.last().expect("decomposition is never empty");
    let rho_group = build_group(&GroupSpec::Cyclic(3)).expect("fixed valid spec");
    let rho_reps = match decompose(&rho_group) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let rho = &rho_reps[1];
    let g = generic_window(pi.dim());
    let h = generic_window(rho.dim());
    line("left_dim", pi.dim().to_string());
    line("right_dim", rho.dim().to_string());
    match tensor_product_check(pi, rho, &g, &h) {
        Ok(deviation) => {
            line("deviation", num(deviation));
            verdict(deviation <= 1e-12)
        }
        Err(e @ Error::GroupTooLarge { .. }) => input_error(&e.to_string()),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_VIOLATION
        }
    }
}

fn interpolation_failure(group: &FiniteGroup, args: &FiniteArgs) -> u8 {
    let reps = match decompose(group) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let pi = reps.last().expect("decomposition is never empty");
    let d = pi.dim();
    let m = args.m.unwrap_or_else(|| (2 * d + 1).min(group.order()));
    let report = match interpolation_failure_demo(pi, m) {
        Ok(r) => r,
        Err(e) => return input_error(&e.to_string()),
    };
    line("rep_dim", d.to_string());
    line("m", m.to_string());
    line("min_eig", num(report.min_eig));
    let singular_expected = m > d;
    line("singular_expected", singular_expected.to_string());
    if let Some(path) = &args.out {
        // Export the Gram with targets in the bottom eigenspace; for a
        // singular Gram those targets are unreachable.
        let eig = hermitian_eigen(report.gram.entries());
        let bottom = eig.eigenvectors.column(0);
        let values: Vec<[f64; 2]> = bottom.iter().map(|z| [z.re, z.im]).collect();
        let entries: Vec<Vec<[f64; 2]>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let z = report.gram.entries()[(i, j)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        let file = ProblemFile {
            points: Vec::new(),
            values: Some(values),
            window: None,
            grid: None,
            gram: Some(GramSection {
                label: Some(report.gram.window_id().to_string()),
                entries,
            }),
        };
        let text = match toml::to_string(&file) {
            Ok(t) => t,
            Err(e) => return input_error(&format!("serializing export: {e}")),
        };
        if let Err(e) = std::fs::write(path, text) {
            return input_error(&format!("writing {}: {e}", path.display()));
        }
        line("exported", path.display().to_string());
    }
    let pass = if singular_expected {
        report.min_eig.abs() <= 1e-10
    } else {
        true
    };
    verdict(pass)
}

fn rigidity(group: &FiniteGroup, args: &FiniteArgs) -> u8 {
    let seed = match require_seed(args) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let trials = args.trials.unwrap_or(100);
    let reps = match decompose(group) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut equal = 0usize;
    let mut disjoint = 0usize;
    let mut violations = 0usize;
    for trial in 0..trials {
        let pi_idx = rng.gen_range(0..reps.len());
        let pi = &reps[pi_idx];
        let g = random_window(pi.dim(), &mut rng);
        // Cycle through colinear, generic, and inequivalent pairs.
        let mode = trial % 3;
        let (rho, h, must_equal, must_differ) = match mode {
            0 => {
                let scale =
                    Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..TAU));
                (pi, &g * scale, true, false)
            }
            1 => (pi, random_window(pi.dim(), &mut rng), false, false),
            _ => {
                if reps.len() == 1 {
                    (pi, random_window(pi.dim(), &mut rng), false, false)
                } else {
                    let mut rho_idx = rng.gen_range(0..reps.len() - 1);
                    if rho_idx >= pi_idx {
                        rho_idx += 1;
                    }
                    let rho = &reps[rho_idx];
                    (rho, random_window(rho.dim(), &mut rng), false, true)
                }
            }
        };
        match rigidity_check(pi, rho, &g, &h) {
            Ok(report) => {
                if report.equal {
                    equal += 1;
                } else {
                    disjoint += 1;
                }
                let consistent = report.intersection_dim == 0
                    || report.intersection_dim == pi.dim();
                let certified = !report.equal || report.intertwiner.is_some();
                let expectation_met =
                    (!must_equal || report.equal) && (!must_differ || !report.equal);
                if !(consistent && certified && expectation_met) {
                    violations += 1;
                    eprintln!("trial {trial}: inconsistent rigidity report");
                }
            }
            Err(e) => {
                violations += 1;
                eprintln!("trial {trial}: {e}");
            }
        }
    }
    line("trials", trials.to_string());
    line("equal", equal.to_string());
    line("disjoint", disjoint.to_string());
    line("intermediate", violations.to_string());
    verdict(violations == 0)
}

fn positive_type(group: &FiniteGroup, args: &FiniteArgs) -> u8 {
    let seed = match require_seed(args) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let trials = args.trials.unwrap_or(50);
    let reps = match decompose(group) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut violations = 0usize;
    let mut worst = f64::NEG_INFINITY;
    for trial in 0..trials {
        let pi_idx = rng.gen_range(0..reps.len());
        let pi = &reps[pi_idx];
        // Pairing partner of the same dimension keeps the difference
        // traceless after admissible rescaling.
        let same_dim: Vec<usize> = (0..reps.len())
            .filter(|&i| reps[i].dim() == pi.dim())
            .collect();
        let rho = &reps[same_dim[rng.gen_range(0..same_dim.len())]];
        let g = admissible_rescale(pi, &random_window(pi.dim(), &mut rng))
            .expect("non-zero by construction");
        let h = admissible_rescale(rho, &random_window(rho.dim(), &mut rng))
            .expect("non-zero by construction");
        let wg = wavelet_transform(pi, &g, &g).expect("dimensions match");
        let wh = wavelet_transform(rho, &h, &h).expect("dimensions match");
        for w in [&wg, &wh] {
            let m = positive_type_matrix(group, w.values()).expect("lengths match");
            let eig = hermitian_eigen(&m);
            if eig.min() < -1e-8 * eig.max().max(1.0) {
                violations += 1;
                eprintln!("trial {trial}: diagonal transform is not positive type");
            }
        }
        let phi = wg.values() - wh.values();
        let sup = phi.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if sup <= 1e-6 {
            skipped += 1;
            continue;
        }
        let m = positive_type_matrix(group, &phi).expect("lengths match");
        let eig = hermitian_eigen(&m);
        checked += 1;
        worst = worst.max(eig.min());
        if eig.min() > -1e-8 {
            violations += 1;
            eprintln!("trial {trial}: difference kernel has no negative eigenvalue");
        }
    }
    line("trials", trials.to_string());
    line("checked", checked.to_string());
    line("skipped", skipped.to_string());
    if checked > 0 {
        line("worst_min_eig", num(worst));
    }
    verdict(violations == 0)
}

fn convexity(group: &FiniteGroup, args: &FiniteArgs) -> u8 {
    let seed = match require_seed(args) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let trials = args.trials.unwrap_or(50);
    let reps = match decompose(group) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let pi = reps.last().expect("decomposition is never empty");
    if pi.dim() < 2 {
        return input_error(
            "convexity needs an irreducible representation of dimension at least 2; try dihedral:4",
        );
    }
    let d = pi.dim() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut violations = 0usize;
    let mut min_mixture = f64::INFINITY;
    let mut max_colinear = 0.0f64;
    for trial in 0..trials {
        let g1 = admissible_rescale(pi, &random_window(pi.dim(), &mut rng))
            .expect("non-zero by construction");
        let g2 = admissible_rescale(pi, &random_window(pi.dim(), &mut rng))
            .expect("non-zero by construction");
        if g2.dotc(&g1).norm() >= 0.99 * d {
            skipped += 1;
            continue;
        }
        checked += 1;
        match convexity_check(pi, &g1, &g1, &g2, 0.5) {
            Ok(mix) => {
                min_mixture = min_mixture.min(mix.second_singular_value);
                if mix.second_singular_value <= 1e-6 || !mix.is_extreme_violation {
                    violations += 1;
                    eprintln!("trial {trial}: mixture looks like a single window");
                }
            }
            Err(e) => {
                violations += 1;
                eprintln!("trial {trial}: {e}");
            }
        }
        let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
        let colinear = &g1 * phase;
        match convexity_check(pi, &g1, &g1, &colinear, 0.5) {
            Ok(ctrl) => {
                max_colinear = max_colinear.max(ctrl.second_singular_value);
                if ctrl.second_singular_value > 1e-10 {
                    violations += 1;
                    eprintln!("trial {trial}: colinear mixture gained rank");
                }
            }
            Err(e) => {
                violations += 1;
                eprintln!("trial {trial}: {e}");
            }
        }
    }
    line("trials", trials.to_string());
    line("checked", checked.to_string());
    line("skipped", skipped.to_string());
    if checked > 0 {
        line("min_mixture_sv", num(min_mixture));
        line("max_colinear_sv", num(max_colinear));
    }
    verdict(violations == 0)
}
