//! Command-line driver: parses problem files, dispatches to the library,
//! and emits verdicts, coefficients, and plot-ready CSV grids.
//!
//! Exit codes: 0 success, 1 malformed input or bad specification,
//! 2 infeasible interpolation, 3 dependent at tolerance, 4 violated
//! structural invariant.

mod finite_demos;
mod heisenberg_cmd;
mod problem;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::path::PathBuf;
use std::process::ExitCode;
use wavelet_spaces::hrt::{hrt_verdict_with_tol, verdict_from_gram, INDEPENDENCE_TOLERANCE};
use wavelet_spaces::interp::{
    gram_assemble, interpolant_grid, psd_check, solve_minimal_norm_with_tol, GramMatrix, PointSet,
    FEASIBILITY_TOLERANCE,
};
use wavelet_spaces::tf::Window;
use wavelet_spaces::Error;

use problem::ProblemFile;
use report::{complex, line, num, write_csv};

pub const EXIT_OK: u8 = 0;
pub const EXIT_BAD_INPUT: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_DEPENDENT: u8 = 3;
pub const EXIT_VIOLATION: u8 = 4;

#[derive(Parser)]
#[command(
    name = "wavelet-cli",
    version,
    about = "Reproducing-kernel analysis of Gabor and wavelet spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the minimal-norm interpolation problem from a problem file.
    Interpolate(ProblemArgs),
    /// Judge linear independence of the time-frequency shifts.
    Hrt(ProblemArgs),
    /// Evaluate the reproducing kernel of the first point over the grid.
    KernelGrid(ProblemArgs),
    /// Run a finite-group demonstration.
    Finite(FiniteArgs),
    /// Pair profiles on the reduced group against a dilated transform.
    Heisenberg(HeisenbergArgs),
}

#[derive(Args)]
struct ProblemArgs {
    /// Problem description file.
    #[arg(long)]
    problem: Option<PathBuf>,
    /// Output path for CSV grids.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Verdict tolerance override.
    #[arg(long)]
    tol: Option<f64>,
    /// Print a commented template problem file and exit.
    #[arg(long)]
    emit_template: bool,
}

#[derive(Args)]
pub struct FiniteArgs {
    /// Group specification, e.g. cyclic:6, dihedral:4, heisenberg:3.
    #[arg(long)]
    group: String,
    /// Which demonstration to run.
    #[arg(long)]
    demo: DemoName,
    /// Seed for randomized demos; required by them and echoed.
    #[arg(long)]
    seed: Option<u64>,
    /// Trial count for randomized demos.
    #[arg(long)]
    trials: Option<usize>,
    /// Orbit length for the interpolation-failure demo.
    #[arg(long)]
    m: Option<usize>,
    /// Output path for exported problem files.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    ClassEquation,
    Completeness,
    Tensor,
    InterpolationFailure,
    Rigidity,
    PositiveType,
    Convexity,
}

impl DemoName {
    fn as_str(self) -> &'static str {
        match self {
            DemoName::ClassEquation => "class-equation",
            DemoName::Completeness => "completeness",
            DemoName::Tensor => "tensor",
            DemoName::InterpolationFailure => "interpolation-failure",
            DemoName::Rigidity => "rigidity",
            DemoName::PositiveType => "positive-type",
            DemoName::Convexity => "convexity",
        }
    }
}

#[derive(Args)]
pub struct HeisenbergArgs {
    /// Dilation index of the representation; must be non-zero.
    #[arg(long, allow_negative_numbers = true)]
    m: i32,
    /// Profile to pair against the transform.
    #[arg(long)]
    profile: ProfileName,
    /// Relative tolerance for the orthogonality verdict.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileName {
    Constant,
    Gaussian,
    Control,
}

impl ProfileName {
    fn as_str(self) -> &'static str {
        match self {
            ProfileName::Constant => "constant",
            ProfileName::Gaussian => "gaussian",
            ProfileName::Control => "control",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_BAD_INPUT)
            };
        }
    };
    let code = match &cli.command {
        Command::Interpolate(args) => cmd_interpolate(args),
        Command::Hrt(args) => cmd_hrt(args),
        Command::KernelGrid(args) => cmd_kernel_grid(args),
        Command::Finite(args) => finite_demos::run(args),
        Command::Heisenberg(args) => heisenberg_cmd::run(args),
    };
    ExitCode::from(code)
}

/// Prints the error and returns the malformed-input exit code.
pub fn input_error(message: &str) -> u8 {
    eprintln!("error: {message}");
    EXIT_BAD_INPUT
}

/// Loads the problem behind `--problem`, or emits the template.
fn load_problem(args: &ProblemArgs) -> Result<Option<ProblemFile>, u8> {
    if args.emit_template {
        print!("{}", problem::TEMPLATE);
        return Ok(None);
    }
    let path = args
        .problem
        .as_ref()
        .ok_or_else(|| input_error("a --problem file is required"))?;
    ProblemFile::load(path).map(Some).map_err(|e| input_error(&e))
}

/// The Gram matrix named by the problem: explicit [gram] section when
/// present, otherwise assembled from the window over the point set.
fn problem_gram(problem: &ProblemFile) -> Result<(GramMatrix, Option<(Window, PointSet)>), u8> {
    if problem.gram.is_some() {
        let k = problem.gram_matrix().map_err(|e| input_error(&e))?;
        return Ok((k, None));
    }
    let g = problem.window().map_err(|e| input_error(&e))?;
    let points = problem.point_set().map_err(|e| input_error(&e))?;
    let k = gram_assemble(&g, &points).map_err(|e| input_error(&e.to_string()))?;
    Ok((k, Some((g, points))))
}

fn cmd_interpolate(args: &ProblemArgs) -> u8 {
    let problem = match load_problem(args) {
        Ok(Some(p)) => p,
        Ok(None) => return EXIT_OK,
        Err(code) => return code,
    };
    let values = match problem.target_values() {
        Ok(v) => v,
        Err(e) => return input_error(&e),
    };
    let (k, window_points) = match problem_gram(&problem) {
        Ok(pair) => pair,
        Err(code) => return code,
    };
    if values.len() != k.size() {
        return input_error(&format!(
            "{} values given for a {}-point Gram matrix",
            values.len(),
            k.size()
        ));
    }
    let psd = psd_check(&k);
    line("command", "interpolate");
    line("window", k.window_id());
    line("points", k.size().to_string());
    line("min_eig", num(psd.min_eig));
    line("max_eig", num(psd.max_eig));
    let tol = args.tol.unwrap_or(FEASIBILITY_TOLERANCE);
    match solve_minimal_norm_with_tol(&k, &values, tol) {
        Ok(interp) => {
            line("feasible", "true");
            line("norm", num(interp.norm()));
            for (i, a) in interp.coefficients().iter().enumerate() {
                line(&format!("alpha[{i}]"), complex(*a));
            }
            // The grid is only rendered when a CSV destination is given.
            if let (true, Some(out)) = (problem.grid.is_some(), &args.out) {
                let Some((g, _)) = &window_points else {
                    return input_error("a grid needs a window and points, not an explicit gram");
                };
                let grid = match problem.grid_spec() {
                    Ok(grid) => grid,
                    Err(e) => return input_error(&e),
                };
                let rows = match interpolant_grid(&interp, g, &grid) {
                    Ok(rows) => rows,
                    Err(e) => return input_error(&e.to_string()),
                };
                if let Err(e) = write_csv(out, &rows) {
                    return input_error(&e);
                }
                line("grid_rows", rows.len().to_string());
                line("csv", out.display().to_string());
            }
            EXIT_OK
        }
        Err(Error::Infeasible { residual }) => {
            line("feasible", "false");
            line("residual", num(residual));
            EXIT_INFEASIBLE
        }
        Err(e) => input_error(&e.to_string()),
    }
}

fn cmd_hrt(args: &ProblemArgs) -> u8 {
    let problem = match load_problem(args) {
        Ok(Some(p)) => p,
        Ok(None) => return EXIT_OK,
        Err(code) => return code,
    };
    let tol = args.tol.unwrap_or(INDEPENDENCE_TOLERANCE);
    let (verdict, label, size) = if problem.gram.is_some() {
        let k = match problem.gram_matrix() {
            Ok(k) => k,
            Err(e) => return input_error(&e),
        };
        (
            verdict_from_gram(&k, tol),
            k.window_id().to_string(),
            k.size(),
        )
    } else {
        let g = match problem.window() {
            Ok(g) => g,
            Err(e) => return input_error(&e),
        };
        let points = match problem.point_set() {
            Ok(p) => p,
            Err(e) => return input_error(&e),
        };
        let size = points.len();
        let id = g.id();
        match hrt_verdict_with_tol(&g, &points, tol) {
            Ok(v) => (v, id, size),
            Err(e) => return input_error(&e.to_string()),
        }
    };
    line("command", "hrt");
    line("window", label);
    line("points", size.to_string());
    line("min_eig", num(verdict.min_eig));
    line("max_eig", num(verdict.max_eig));
    line("cond", num(verdict.cond));
    line("independent", verdict.independent.to_string());
    line("near_threshold", verdict.near_threshold.to_string());
    if let Some(cert) = &verdict.certificate {
        line("row_sum_max", num(cert.max_row_sum));
        line("dominance", "holds");
    }
    if verdict.independent {
        EXIT_OK
    } else {
        EXIT_DEPENDENT
    }
}

fn cmd_kernel_grid(args: &ProblemArgs) -> u8 {
    let problem = match load_problem(args) {
        Ok(Some(p)) => p,
        Ok(None) => return EXIT_OK,
        Err(code) => return code,
    };
    let g = match problem.window() {
        Ok(g) => g,
        Err(e) => return input_error(&e),
    };
    let points = match problem.point_set() {
        Ok(p) => p,
        Err(e) => return input_error(&e),
    };
    let grid = match problem.grid_spec() {
        Ok(grid) => grid,
        Err(e) => return input_error(&e),
    };
    let Some(out) = &args.out else {
        return input_error("--out is required to write the grid CSV");
    };
    let center = points.get(0).clone();
    // A one-point interpolation with value 1 has the kernel itself as its
    // minimal-norm interpolant.
    let single = match PointSet::new(vec![center.clone()]) {
        Ok(s) => s,
        Err(e) => return input_error(&e.to_string()),
    };
    let k = match gram_assemble(&g, &single) {
        Ok(k) => k,
        Err(e) => return input_error(&e.to_string()),
    };
    let interp = match solve_minimal_norm_with_tol(&k, &[Complex64::new(1.0, 0.0)], 1e-6) {
        Ok(i) => i,
        Err(e) => return input_error(&e.to_string()),
    };
    let rows = match interpolant_grid(&interp, &g, &grid) {
        Ok(rows) => rows,
        Err(e) => return input_error(&e.to_string()),
    };
    if let Err(e) = write_csv(out, &rows) {
        return input_error(&e);
    }
    let coords: Vec<String> = center
        .x()
        .iter()
        .chain(center.omega().iter())
        .map(|&v| num(v))
        .collect();
    line("command", "kernel-grid");
    line("window", g.id());
    line("center", coords.join(" "));
    line("grid_rows", rows.len().to_string());
    line("csv", out.display().to_string());
    EXIT_OK
}
