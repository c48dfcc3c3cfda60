//! Acceptance gate for the toolkit. Each test covers one numbered
//! criterion, prints exactly one "criterion NN PASS/FAIL" line, and
//! enforces the runtime budget for that criterion.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use wavelet_spaces::finite::{
    admissible_rescale, build_group, decompose_regular, convexity_check, generic_window,
    peter_weyl_completeness, positive_type_matrix, rigidity_check, tensor_product_check,
    wavelet_transform, GroupSpec, UnitaryRep,
};
use wavelet_spaces::heisenberg::{
    box_norm, tau_independent_orthogonality, DilatedSchrodingerRep, HeisenbergQuad, ProfileFn,
};
use wavelet_spaces::hrt::{
    hrt_verdict_with_tol, spacing_radius, SpacingSearch, INDEPENDENCE_TOLERANCE,
};
use wavelet_spaces::interp::{gram_assemble, psd_check, PointSet};
use wavelet_spaces::linalg::{hermitian_eigen, CMatrix, CVector};
use wavelet_spaces::tf::{gaussian_stft_closed_form, stft_eval, TFPoint, Window};

/// Prints the verdict line for one criterion and enforces its runtime
/// budget; any recorded failure turns the line into FAIL and panics.
fn finish(number: &str, start: Instant, limit: Duration, mut fails: Vec<String>) {
    let elapsed = start.elapsed();
    if elapsed > limit {
        fails.push(format!("runtime {elapsed:?} exceeds the {limit:?} budget"));
    }
    if fails.is_empty() {
        println!("criterion {number} PASS");
    } else {
        println!("criterion {number} FAIL");
        panic!("criterion {number}: {}", fails.join("; "));
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wavelet-cli"))
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn report_value<'a>(text: &'a str, key: &str) -> &'a str {
    for line in text.lines() {
        if let Some((k, v)) = line.split_once(" = ") {
            if k == key {
                return v;
            }
        }
    }
    panic!("report has no line for {key}:\n{text}");
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wavelet-acceptance-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

fn gaussian() -> Window {
    Window::gaussian(1).expect("dimension 1 is valid")
}

/// Point sets used by criteria 3 and 12: up to eight uniform draws from
/// the phase-space box [-3, 3]^2.
fn random_point_set(seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(1..=8);
    let points = (0..m)
        .map(|_| {
            TFPoint::new(
                vec![rng.gen_range(-3.0..3.0)],
                vec![rng.gen_range(-3.0..3.0)],
            )
            .expect("finite coordinates")
        })
        .collect();
    PointSet::new(points).expect("random points are distinct")
}

/// Point sets used by criteria 4 and 12: rejection-sampled so every pair
/// sits at phase-space distance at least the certified spacing radius.
fn spaced_point_set(seed: u64, g: &Window) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(2..=8);
    let r = spacing_radius(g, m, SpacingSearch::default()).expect("radius exists within search");
    let side = (r * (m as f64 + 1.0)).max(2.0);
    let mut coords: Vec<(f64, f64)> = Vec::new();
    let mut attempts = 0usize;
    while coords.len() < m {
        attempts += 1;
        assert!(attempts < 100_000, "rejection sampling stalled");
        let c = (
            rng.gen_range(-side / 2.0..side / 2.0),
            rng.gen_range(-side / 2.0..side / 2.0),
        );
        if coords
            .iter()
            .all(|p| ((p.0 - c.0).powi(2) + (p.1 - c.1).powi(2)).sqrt() >= r)
        {
            coords.push(c);
        }
    }
    let points = coords
        .into_iter()
        .map(|(x, w)| TFPoint::new(vec![x], vec![w]).expect("finite coordinates"))
        .collect();
    PointSet::new(points).expect("spaced points are distinct")
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

#[test]
fn criterion_01_three_point_gaussian_interpolation() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let dir = scratch("c01");
    let path = dir.join("three.toml");
    std::fs::write(
        &path,
        "points = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]\n\
         values = [[1.0, 0.0], [1.0, 0.0], [1.0, 0.0]]\n\n\
         [window]\nkind = \"gaussian\"\ndimension = 1\n",
    )
    .expect("problem file written");
    let out = bin()
        .args(["interpolate", "--problem", path.to_str().expect("utf-8")])
        .output()
        .expect("binary runs");
    if out.status.code() != Some(0) {
        fails.push(format!("exit code {:?}", out.status.code()));
    } else {
        let text = stdout(&out);
        let expected = [0.6218, 0.7360, 0.9876];
        for (i, want) in expected.iter().enumerate() {
            let value = report_value(&text, &format!("alpha[{i}]"));
            let mut parts = value.split_whitespace();
            let re: f64 = parts.next().expect("re").parse().expect("parses");
            let im: f64 = parts.next().expect("im").parse().expect("parses");
            if (re - want).abs() > 5e-4 || im.abs() > 5e-4 {
                fails.push(format!("alpha[{i}] = {re} {im}, expected {want} within 5e-4"));
            }
        }
    }
    finish("01", start, Duration::from_secs(1), fails);
}

#[test]
fn criterion_02_transform_matches_the_closed_form_on_a_grid() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let g = gaussian();
    let mut worst = 0.0f64;
    for i in 0..13 {
        for j in 0..13 {
            let x = -3.0 + 0.5 * i as f64;
            let w = -3.0 + 0.5 * j as f64;
            let p = TFPoint::new(vec![x], vec![w]).expect("finite coordinates");
            let numeric = stft_eval(&g, &g, &p).expect("quadrature evaluates");
            let exact = gaussian_stft_closed_form(1, &p).expect("closed form evaluates");
            worst = worst.max((numeric - exact).norm());
        }
    }
    if worst > 1e-8 {
        fails.push(format!("largest grid deviation {worst:e} exceeds 1e-8"));
    }
    finish("02", start, Duration::from_secs(5), fails);
}

#[test]
fn criterion_03_random_point_sets_are_independent() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let g = gaussian();
    for i in 1..=50u64 {
        let set = random_point_set(3000 + i);
        let verdict =
            hrt_verdict_with_tol(&g, &set, INDEPENDENCE_TOLERANCE).expect("verdict computes");
        if !verdict.independent || verdict.min_eig <= 1e-6 {
            fails.push(format!(
                "seed {}: independent = {}, min_eig = {:e}",
                3000 + i,
                verdict.independent,
                verdict.min_eig
            ));
        }
    }
    finish("03", start, Duration::from_secs(30), fails);
}

#[test]
fn criterion_04_spaced_point_sets_carry_a_dominance_certificate() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let g = gaussian();
    for i in 1..=20u64 {
        let set = spaced_point_set(4000 + i, &g);
        let verdict =
            hrt_verdict_with_tol(&g, &set, INDEPENDENCE_TOLERANCE).expect("verdict computes");
        match &verdict.certificate {
            Some(cert) => {
                if verdict.min_eig < 1.0 - cert.max_row_sum - 1e-9 {
                    fails.push(format!(
                        "seed {}: min_eig {:e} under the Gershgorin bound {:e}",
                        4000 + i,
                        verdict.min_eig,
                        1.0 - cert.max_row_sum
                    ));
                }
            }
            None => fails.push(format!("seed {}: dominance does not hold", 4000 + i)),
        }
    }
    finish("04", start, Duration::from_secs(30), fails);
}

#[test]
fn criterion_05_orbit_gram_is_singular_and_interpolation_is_infeasible() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let dir = scratch("c05");
    let path = dir.join("singular.toml");
    let demo = bin()
        .args([
            "finite",
            "--group",
            "dihedral:4",
            "--demo",
            "interpolation-failure",
            "--m",
            "5",
            "--out",
            path.to_str().expect("utf-8"),
        ])
        .output()
        .expect("binary runs");
    if demo.status.code() != Some(0) {
        fails.push(format!("demo exit code {:?}", demo.status.code()));
    } else {
        let text = stdout(&demo);
        let min_eig: f64 = report_value(&text, "min_eig").parse().expect("parses");
        if min_eig.abs() > 1e-10 {
            fails.push(format!("orbit Gram min_eig {min_eig:e} is not numerically zero"));
        }
        let interp = bin()
            .args(["interpolate", "--problem", path.to_str().expect("utf-8")])
            .output()
            .expect("binary runs");
        if interp.status.code() != Some(2) {
            fails.push(format!(
                "interpolate exit code {:?}, expected 2",
                interp.status.code()
            ));
        }
    }
    finish("05", start, Duration::from_secs(1), fails);
}

#[test]
fn criterion_06_wavelet_space_intersections_are_all_or_nothing() {
    let start = Instant::now();
    let mut fails = Vec::new();
    for (spec, seed_base) in [
        (GroupSpec::Dihedral(4), 6000u64),
        (GroupSpec::FiniteHeisenberg(3), 6200u64),
    ] {
        let group = build_group(&spec).expect("valid spec");
        let reps = decompose_regular(&group).expect("decomposition succeeds");
        for i in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed_base + i);
            let pi_idx = rng.gen_range(0..reps.len());
            let pi = &reps[pi_idx];
            let g = random_window(pi.dim(), &mut rng);
            let colinear = i % 3 == 0;
            let (rho, h): (&UnitaryRep, CVector) = if colinear {
                let scale =
                    Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU));
                (pi, &g * scale)
            } else if i % 3 == 1 {
                (pi, random_window(pi.dim(), &mut rng))
            } else {
                let mut rho_idx = rng.gen_range(0..reps.len() - 1);
                if rho_idx >= pi_idx {
                    rho_idx += 1;
                }
                (&reps[rho_idx], random_window(reps[rho_idx].dim(), &mut rng))
            };
            match rigidity_check(pi, rho, &g, &h) {
                Ok(report) => {
                    if report.intersection_dim != 0 && report.intersection_dim != pi.dim() {
                        fails.push(format!(
                            "trial {i}: intermediate intersection {}",
                            report.intersection_dim
                        ));
                    }
                    if colinear {
                        if report.intersection_dim != pi.dim() {
                            fails.push(format!("trial {i}: colinear pair not recognized"));
                            continue;
                        }
                        let Some(t) = &report.intertwiner else {
                            fails.push(format!("trial {i}: no intertwiner on a colinear pair"));
                            continue;
                        };
                        let gs = admissible_rescale(pi, &g).expect("non-zero");
                        let hs = admissible_rescale(rho, &h).expect("non-zero");
                        let map_residual = (t * &gs - &hs).norm();
                        let mut entwine_residual = 0.0f64;
                        for x in 0..group.order() {
                            let gap: CMatrix = t * pi.matrix(x) - rho.matrix(x) * t;
                            entwine_residual = entwine_residual
                                .max(gap.iter().fold(0.0f64, |acc, z| acc.max(z.norm())));
                        }
                        if map_residual > 1e-9 || entwine_residual > 1e-9 {
                            fails.push(format!(
                                "trial {i}: intertwiner residuals {map_residual:e}, {entwine_residual:e}"
                            ));
                        }
                    }
                }
                Err(e) => fails.push(format!("trial {i}: {e}")),
            }
        }
    }
    finish("06", start, Duration::from_secs(60), fails);
}

#[test]
fn criterion_07_distinct_diagonal_transforms_fail_positive_type() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let group = build_group(&GroupSpec::Dihedral(4)).expect("valid spec");
    let reps = decompose_regular(&group).expect("decomposition succeeds");
    let mut rng = ChaCha8Rng::seed_from_u64(7000);
    let mut checked = 0usize;
    let mut attempts = 0usize;
    while checked < 50 {
        attempts += 1;
        assert!(attempts < 2_000, "pair sampling stalled");
        let pi_idx = rng.gen_range(0..reps.len());
        let pi = &reps[pi_idx];
        let same_dim: Vec<usize> = (0..reps.len())
            .filter(|&k| reps[k].dim() == pi.dim())
            .collect();
        let rho = &reps[same_dim[rng.gen_range(0..same_dim.len())]];
        let g = admissible_rescale(pi, &random_window(pi.dim(), &mut rng)).expect("non-zero");
        let h = admissible_rescale(rho, &random_window(rho.dim(), &mut rng)).expect("non-zero");
        let wg = wavelet_transform(pi, &g, &g).expect("dimensions match");
        let wh = wavelet_transform(rho, &h, &h).expect("dimensions match");
        let phi = wg.values() - wh.values();
        let sup = phi.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if sup <= 1e-6 {
            continue;
        }
        checked += 1;
        let m = positive_type_matrix(&group, &phi).expect("lengths match");
        let eig = hermitian_eigen(&m);
        if eig.min() > -1e-8 {
            fails.push(format!(
                "attempt {attempts}: difference kernel min eigenvalue {:e} is not negative",
                eig.min()
            ));
        }
    }
    finish("07", start, Duration::from_secs(30), fails);
}

#[test]
fn criterion_08_window_mixtures_lose_extremality() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let group = build_group(&GroupSpec::Dihedral(4)).expect("valid spec");
    let reps = decompose_regular(&group).expect("decomposition succeeds");
    let pi = reps.last().expect("non-empty decomposition");
    assert!(pi.dim() >= 2, "the demo representation must have dim >= 2");
    let d = pi.dim() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(8000);
    let mut checked = 0usize;
    let mut attempts = 0usize;
    while checked < 50 {
        attempts += 1;
        assert!(attempts < 2_000, "pair sampling stalled");
        let g1 = admissible_rescale(pi, &random_window(pi.dim(), &mut rng)).expect("non-zero");
        let g2 = admissible_rescale(pi, &random_window(pi.dim(), &mut rng)).expect("non-zero");
        if g2.dotc(&g1).norm() >= 0.99 * d {
            continue;
        }
        checked += 1;
        match convexity_check(pi, &g1, &g1, &g2, 0.5) {
            Ok(mix) => {
                if mix.second_singular_value <= 1e-6 {
                    fails.push(format!(
                        "pair {checked}: mixture second singular value {:e}",
                        mix.second_singular_value
                    ));
                }
            }
            Err(e) => fails.push(format!("pair {checked}: {e}")),
        }
        let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let colinear = &g1 * phase;
        match convexity_check(pi, &g1, &g1, &colinear, 0.5) {
            Ok(ctrl) => {
                if ctrl.second_singular_value > 1e-10 {
                    fails.push(format!(
                        "pair {checked}: colinear second singular value {:e}",
                        ctrl.second_singular_value
                    ));
                }
            }
            Err(e) => fails.push(format!("pair {checked} control: {e}")),
        }
    }
    finish("08", start, Duration::from_secs(10), fails);
}

#[test]
fn criterion_09_irreducible_dimensions_and_spans_are_exact() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let cases: [(&str, GroupSpec, Vec<usize>); 3] = [
        ("cyclic:6", GroupSpec::Cyclic(6), vec![1, 1, 1, 1, 1, 1]),
        ("dihedral:4", GroupSpec::Dihedral(4), vec![1, 1, 1, 1, 2]),
        (
            "heisenberg:3",
            GroupSpec::FiniteHeisenberg(3),
            vec![1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3],
        ),
    ];
    for (name, spec, expected_dims) in cases {
        let group = build_group(&spec).expect("valid spec");
        let reps = decompose_regular(&group).expect("decomposition succeeds");
        let mut dims: Vec<usize> = reps.iter().map(|r| r.dim()).collect();
        dims.sort_unstable();
        if dims != expected_dims {
            fails.push(format!("{name}: dimensions {dims:?}, expected {expected_dims:?}"));
        }
        let square_sum: usize = dims.iter().map(|d| d * d).sum();
        if square_sum != group.order() {
            fails.push(format!(
                "{name}: squared dimensions sum to {square_sum}, order is {}",
                group.order()
            ));
        }
        let completeness = peter_weyl_completeness(&group).expect("span computes");
        if completeness.span_dim != group.order() {
            fails.push(format!(
                "{name}: span {} misses the order {}",
                completeness.span_dim,
                group.order()
            ));
        }
    }
    finish("09", start, Duration::from_secs(60), fails);
}

#[test]
fn criterion_10_tensor_transform_factorizes() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let d4 = build_group(&GroupSpec::Dihedral(4)).expect("valid spec");
    let c3 = build_group(&GroupSpec::Cyclic(3)).expect("valid spec");
    let pi = decompose_regular(&d4).expect("decomposition succeeds");
    let rho = decompose_regular(&c3).expect("decomposition succeeds");
    let pi = pi.last().expect("non-empty decomposition");
    let rho = &rho[1];
    let g = generic_window(pi.dim());
    let h = generic_window(rho.dim());
    match tensor_product_check(pi, rho, &g, &h) {
        Ok(deviation) => {
            if deviation > 1e-12 {
                fails.push(format!("tensor deviation {deviation:e} exceeds 1e-12"));
            }
        }
        Err(e) => fails.push(format!("tensor check failed: {e}")),
    }
    finish("10", start, Duration::from_secs(5), fails);
}

#[test]
fn criterion_11_tau_independent_profiles_annihilate_the_transform() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let g = gaussian();
    fn bump(x: &[f64], omega: &[f64]) -> f64 {
        let q: f64 =
            x.iter().map(|v| v * v).sum::<f64>() + omega.iter().map(|v| v * v).sum::<f64>();
        (-0.5 * std::f64::consts::PI * q).exp()
    }
    for m in [1i32, 2] {
        let rep = DilatedSchrodingerRep::new(m).expect("non-zero index");
        let quad = HeisenbergQuad::default_for_m(m);
        let constant = |_: &[f64], _: &[f64], _: f64| Complex64::new(1.0, 0.0);
        let smooth =
            |x: &[f64], omega: &[f64], _: f64| Complex64::new(bump(x, omega), 0.0);
        let control = move |x: &[f64], omega: &[f64], tau: f64| {
            Complex64::from_polar(
                bump(x, omega),
                -2.0 * std::f64::consts::PI * m as f64 * tau,
            )
        };
        let relative = |h: &ProfileFn| -> f64 {
            let overlap =
                tau_independent_orthogonality(&rep, h, &g, &g, &quad).expect("pairing computes");
            let hnorm = box_norm(h, &quad, 1).expect("norm computes");
            overlap / (hnorm / (m.abs() as f64).sqrt())
        };
        let flat = relative(&constant);
        if flat > 1e-6 {
            fails.push(format!("m = {m}: constant profile pairing {flat:e} exceeds 1e-6"));
        }
        let smooth_rel = relative(&smooth);
        if smooth_rel > 1e-6 {
            fails.push(format!(
                "m = {m}: smooth profile pairing {smooth_rel:e} exceeds 1e-6"
            ));
        }
        let control_rel = relative(&control);
        if control_rel <= 1e-3 {
            fails.push(format!(
                "m = {m}: control pairing {control_rel:e} does not exceed 1e-3"
            ));
        }
    }
    finish("11", start, Duration::from_secs(30), fails);
}

#[test]
fn criterion_12_spectral_verdicts_agree_across_commands() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let g = gaussian();
    let sets: Vec<(u64, PointSet)> = (1..=50u64)
        .map(|i| (3000 + i, random_point_set(3000 + i)))
        .chain((1..=20u64).map(|i| (4000 + i, spaced_point_set(4000 + i, &g))))
        .collect();
    for (seed, set) in sets {
        let verdict =
            hrt_verdict_with_tol(&g, &set, INDEPENDENCE_TOLERANCE).expect("verdict computes");
        let k = gram_assemble(&g, &set).expect("assembly succeeds");
        let psd = psd_check(&k);
        let strictly_pd = psd.min_eig > INDEPENDENCE_TOLERANCE * psd.max_eig;
        if verdict.min_eig.to_bits() != psd.min_eig.to_bits()
            || verdict.max_eig.to_bits() != psd.max_eig.to_bits()
        {
            fails.push(format!("seed {seed}: eigenvalue mismatch across commands"));
        }
        if verdict.independent != strictly_pd {
            fails.push(format!(
                "seed {seed}: verdict {} vs strict positive-definiteness {strictly_pd}",
                verdict.independent
            ));
        }
    }
    finish("12", start, Duration::from_secs(60), fails);
}

