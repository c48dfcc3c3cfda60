//! Output formatting: report lines and CSV grids. Numbers are printed
//! with 17 significant digits so every value round-trips exactly.

use num_complex::Complex64;
use std::fs;
use std::path::Path;
use wavelet_spaces::interp::GridRow;

/// A floating-point value in exact round-trip form.
pub fn num(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{v:.16e}")
}

/// A complex value as two round-trip floats separated by a space.
pub fn complex(v: Complex64) -> String {
    format!("{} {}", num(v.re), num(v.im))
}

/// One report line in `key = value` form.
pub fn line(key: &str, value: impl AsRef<str>) {
    println!("{key} = {}", value.as_ref());
}

/// Writes grid samples as CSV with the fixed header `x,omega,re,im`.
pub fn write_csv(path: &Path, rows: &[GridRow]) -> Result<(), String> {
    let mut out = String::with_capacity(rows.len() * 96 + 16);
    out.push_str("x,omega,re,im\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            num(r.x),
            num(r.omega),
            num(r.re),
            num(r.im)
        ));
    }
    fs::write(path, out).map_err(|e| format!("writing {}: {e}", path.display()))
}
