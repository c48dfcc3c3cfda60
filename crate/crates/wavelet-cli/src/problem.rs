//! Problem files: a small TOML document holding a window description, a
//! phase-space point set, optional target values, an optional explicit
//! Gram matrix, and an optional evaluation grid.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use wavelet_spaces::interp::{GramMatrix, GridSpec, PointSet};
use wavelet_spaces::linalg::CMatrix;
use wavelet_spaces::tf::{TFPoint, Window};

/// Commented example problem emitted by `--emit-template`.
pub const TEMPLATE: &str = r#"# Problem description for the wavelet toolkit.
#
# points: phase-space nodes, each written [x..., omega...] with the
#   window's dimension of x entries followed by as many omega entries.
# values: complex interpolation targets as [re, im] pairs, one per point.
# window: kind gaussian, hermite (order k), or tabulated (x0, dx,
#   samples); tabulated windows are rescaled to unit norm on load.
# grid: optional evaluation rectangle; interpolate writes it as CSV to
#   the --out path. One-dimensional problems only.
# gram: optional explicit Gram matrix given as rows of [re, im] pairs;
#   it replaces window + points for interpolate and hrt.

points = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]
values = [[1.0, 0.0], [1.0, 0.0], [1.0, 0.0]]

[window]
kind = "gaussian"
dimension = 1

[grid]
x_min = -2.0
x_max = 3.0
omega_min = -2.0
omega_max = 3.0
step = 0.05
"#;

/// Parsed problem description. Arrays come before the tables so the
/// structure serializes back to valid TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram: Option<GramSection>,
}

/// Window description inside a problem file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub kind: String,
    #[serde(default = "default_dimension")]
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dx: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<f64>>,
}

fn default_dimension() -> usize {
    1
}

/// Evaluation rectangle for CSV grids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub x_min: f64,
    pub x_max: f64,
    pub omega_min: f64,
    pub omega_max: f64,
    pub step: f64,
}

/// Explicit Gram matrix: square, rows of [re, im] pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl ProblemFile {
    /// Parses and structurally validates a problem document.
    pub fn parse(text: &str) -> Result<ProblemFile, String> {
        let problem: ProblemFile =
            toml::from_str(text).map_err(|e| format!("problem file: {e}"))?;
        problem.validate()?;
        Ok(problem)
    }

    /// Reads a problem file from disk.
    pub fn load(path: &std::path::Path) -> Result<ProblemFile, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("reading {}: {e}", path.display()))?;
        ProblemFile::parse(&text)
    }

    fn validate(&self) -> Result<(), String> {
        if let Some(w) = &self.window {
            w.validate()?;
        }
        if !self.points.is_empty() {
            let len = self.points[0].len();
            if len == 0 || !len.is_multiple_of(2) {
                return Err("each point needs an even, positive number of coordinates".into());
            }
            if self.points.iter().any(|p| p.len() != len) {
                return Err("all points must have the same number of coordinates".into());
            }
            if let Some(w) = &self.window {
                if len != 2 * w.dimension {
                    return Err(format!(
                        "points have {} coordinates but the window dimension {} needs {}",
                        len,
                        w.dimension,
                        2 * w.dimension
                    ));
                }
            }
            for (i, a) in self.points.iter().enumerate() {
                for b in &self.points[i + 1..] {
                    if a == b {
                        return Err(format!("duplicate point {a:?}"));
                    }
                }
            }
        }
        if let Some(values) = &self.values {
            let expected = if !self.points.is_empty() {
                self.points.len()
            } else if let Some(gram) = &self.gram {
                gram.entries.len()
            } else {
                values.len()
            };
            if values.len() != expected {
                return Err(format!(
                    "{} values given for {} interpolation nodes",
                    values.len(),
                    expected
                ));
            }
        }
        if let Some(grid) = &self.grid {
            if !(grid.step.is_finite() && grid.step > 0.0) {
                return Err("grid step must be a positive finite number".into());
            }
            if grid.x_max < grid.x_min || grid.omega_max < grid.omega_min {
                return Err("grid bounds must satisfy min <= max".into());
            }
        }
        if let Some(gram) = &self.gram {
            let m = gram.entries.len();
            if m == 0 {
                return Err("gram must have at least one row".into());
            }
            if gram.entries.iter().any(|row| row.len() != m) {
                return Err("gram must be square".into());
            }
        }
        Ok(())
    }

    /// Builds the window; tabulated tables are rescaled to unit norm.
    pub fn window(&self) -> Result<Window, String> {
        let spec = self
            .window
            .as_ref()
            .ok_or("problem needs a [window] section")?;
        spec.build()
    }

    /// The phase-space nodes as a point set.
    pub fn point_set(&self) -> Result<PointSet, String> {
        if self.points.is_empty() {
            return Err("problem needs a non-empty points list".into());
        }
        let n = self.points[0].len() / 2;
        let points: Vec<TFPoint> = self
            .points
            .iter()
            .map(|row| {
                TFPoint::new(row[..n].to_vec(), row[n..].to_vec())
                    .map_err(|e| format!("point {row:?}: {e}"))
            })
            .collect::<Result<_, _>>()?;
        PointSet::new(points).map_err(|e| e.to_string())
    }

    /// The complex interpolation targets.
    pub fn target_values(&self) -> Result<Vec<Complex64>, String> {
        let values = self
            .values
            .as_ref()
            .ok_or("problem needs a values list")?;
        Ok(values
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect())
    }

    /// The explicit Gram matrix, validated by the library constructor.
    pub fn gram_matrix(&self) -> Result<GramMatrix, String> {
        let gram = self.gram.as_ref().ok_or("problem has no [gram] section")?;
        let m = gram.entries.len();
        let entries = CMatrix::from_fn(m, m, |i, j| {
            let [re, im] = gram.entries[i][j];
            Complex64::new(re, im)
        });
        let label = gram.label.as_deref().unwrap_or("imported");
        GramMatrix::from_entries(entries, label).map_err(|e| e.to_string())
    }

    /// The evaluation grid.
    pub fn grid_spec(&self) -> Result<GridSpec, String> {
        let grid = self.grid.as_ref().ok_or("problem has no [grid] section")?;
        Ok(GridSpec {
            x_min: grid.x_min,
            x_max: grid.x_max,
            omega_min: grid.omega_min,
            omega_max: grid.omega_max,
            step: grid.step,
        })
    }
}

impl WindowSpec {
    fn validate(&self) -> Result<(), String> {
        let table_fields = self.x0.is_some() || self.dx.is_some() || self.samples.is_some();
        match self.kind.as_str() {
            "gaussian" => {
                if self.order.is_some() || table_fields {
                    return Err("gaussian windows take only a dimension".into());
                }
            }
            "hermite" => {
                if self.order.is_none() {
                    return Err("hermite windows need an order".into());
                }
                if table_fields {
                    return Err("hermite windows take no table fields".into());
                }
            }
            "tabulated" => {
                if self.order.is_some() {
                    return Err("tabulated windows take no order".into());
                }
                if self.x0.is_none() || self.dx.is_none() || self.samples.is_none() {
                    return Err("tabulated windows need x0, dx, and samples".into());
                }
                if self.dimension != 1 {
                    return Err("tabulated windows are one-dimensional".into());
                }
            }
            other => return Err(format!("unknown window kind {other:?}")),
        }
        if self.dimension == 0 {
            return Err("window dimension must be positive".into());
        }
        Ok(())
    }

    fn build(&self) -> Result<Window, String> {
        let window = match self.kind.as_str() {
            "gaussian" => Window::gaussian(self.dimension),
            "hermite" => Window::hermite(self.dimension, self.order.unwrap()),
            "tabulated" => Window::tabulated(
                self.x0.unwrap(),
                self.dx.unwrap(),
                self.samples.clone().unwrap(),
            )
            .and_then(|w| w.normalized()),
            _ => unreachable!("validated kinds only"),
        };
        window.map_err(|e| e.to_string())
    }
}
