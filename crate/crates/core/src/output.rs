//! Number formatting and file helpers shared by the CSV writers.

use std::fs::File;
use std::path::Path;

use crate::error::{Error, Result};

/// Cell value written for cells whose evaluation failed.
pub const SENTINEL: f64 = -999.0;

/// Integers (codes, masks, the sentinel) are written as integers, infinities
/// as `inf`/`-inf`, everything else with 17 significant digits.
pub fn format_value(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:.16e}")
    }
}

/// `n` significant digits in plain notation where that stays readable.
pub fn format_sig(v: f64, n: usize) -> String {
    if !v.is_finite() {
        return format_value(v);
    }
    if v == 0.0 {
        return "0".into();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (n as i32 - 1 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{:.*e}", n.saturating_sub(1), v)
    }
}

pub(crate) fn create_file(path: &Path) -> Result<File> {
    File::create(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}
