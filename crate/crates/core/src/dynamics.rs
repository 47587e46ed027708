//! Orbits, Lyapunov exponents at the turning point, and bifurcation
//! diagrams.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::{Assignment, MapFamily, Param};
use crate::grid::Axis;
use crate::maps::{DeformedMap, UnimodalMap, TURNING_POINT};
use crate::output::{create_file, format_value};

pub const DEFAULT_ORBIT_LENGTH: usize = 10_000;
pub const DEFAULT_TAIL: usize = 100;
pub const DEFAULT_X0: f64 = 0.45;
/// `|Φ'|` below which an orbit is treated as hitting the turning point.
pub const SUPERSTABLE_DERIVATIVE: f64 = 1e-300;
const BOUNDARY_CLAMP: f64 = 1e-15;

/// `(x_1, …, x_n)` with `x_{i+1} = Φ(x_i)`.
pub fn orbit(m: &DeformedMap, x0: f64, n: usize) -> Result<Vec<f64>> {
    let mut x = m.eval(x0)?;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(x);
        x = clamp_to_unit(m.apply(x));
    }
    Ok(out)
}

#[inline]
fn clamp_to_unit(x: f64) -> f64 {
    if x < 0.0 && x > -BOUNDARY_CLAMP {
        0.0
    } else if x > 1.0 && x < 1.0 + BOUNDARY_CLAMP {
        1.0
    } else {
        x
    }
}

/// Lyapunov exponent estimate at the turning point,
/// `(1/n) Σ_{i=1}^{n} log|Φ'(Φ^i(1/2))|`.
///
/// Returns `f64::NEG_INFINITY` when the orbit (numerically) hits the turning
/// point, i.e. for superstable cycles.
pub fn lyapunov_turning(m: &DeformedMap, n: usize) -> Result<f64> {
    if n < 100 {
        return Err(Error::Domain(format!("Lyapunov estimate needs n ≥ 100, got {n}")));
    }
    let mut x = TURNING_POINT;
    let mut sum = 0.0;
    for _ in 0..n {
        x = clamp_to_unit(m.apply(x));
        let d = m.derivative(x).abs();
        if d < SUPERSTABLE_DERIVATIVE {
            return Ok(f64::NEG_INFINITY);
        }
        sum += d.ln();
    }
    Ok(sum / n as f64)
}

/// Tails of orbits over a parameter range.
#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationDataset {
    pub param: Param,
    pub values: Vec<f64>,
    /// `tails[i]` is the retained tail for `values[i]`.
    pub tails: Vec<Vec<f64>>,
    pub orbit_length: usize,
    pub tail_length: usize,
    pub x0: f64,
}

#[derive(Debug, Clone)]
pub struct BifurcationSpec {
    pub family: MapFamily,
    pub param: Param,
    pub range: Axis,
    /// Values for the family's other free parameters.
    pub fixed: Assignment,
    pub x0: f64,
    pub orbit_length: usize,
    pub tail: usize,
}

impl BifurcationSpec {
    pub fn new(family: MapFamily, param: Param, range: Axis, fixed: Assignment) -> Self {
        Self {
            family,
            param,
            range,
            fixed,
            x0: DEFAULT_X0,
            orbit_length: DEFAULT_ORBIT_LENGTH,
            tail: DEFAULT_TAIL,
        }
    }
}

/// Runs one orbit per parameter value and keeps its last `tail` points.
pub fn bifurcation_scan(spec: &BifurcationSpec) -> Result<BifurcationDataset> {
    if !(spec.x0 > 0.0 && spec.x0 < 1.0) {
        return Err(Error::Domain(format!("initial condition must lie in (0, 1), got {}", spec.x0)));
    }
    if spec.tail > spec.orbit_length || spec.orbit_length == 0 {
        return Err(Error::Domain(format!(
            "tail {} must not exceed orbit length {}",
            spec.tail, spec.orbit_length
        )));
    }
    if !spec.family.uses(spec.param) {
        return Err(Error::InvalidSpec(format!("the family does not depend on {}", spec.param)));
    }
    let values = spec.range.values();
    let tails = values
        .par_iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut assignment = spec.fixed;
            assignment.set(spec.param, v);
            let m = spec
                .family
                .map_at(&assignment)
                .map_err(|e| Error::Domain(format!("{} = {v} (index {i}): {e}", spec.param)))?;
            let orbit = orbit(&m, spec.x0, spec.orbit_length)?;
            Ok(orbit[spec.orbit_length - spec.tail..].to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BifurcationDataset {
        param: spec.param,
        values,
        tails,
        orbit_length: spec.orbit_length,
        tail_length: spec.tail,
        x0: spec.x0,
    })
}

impl BifurcationDataset {
    /// CSV with header `param,iterate_index,x`; `iterate_index` is the
    /// 1-based position in the orbit.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        out.write_all(b"param,iterate_index,x\n")?;
        let first = self.orbit_length - self.tail_length + 1;
        for (v, tail) in self.values.iter().zip(&self.tails) {
            for (k, x) in tail.iter().enumerate() {
                writeln!(out, "{},{},{}", v, first + k, format_value(*x))?;
            }
        }
        out.flush()
    }

    pub fn export_csv(&self, path: &std::path::Path) -> Result<()> {
        let file = create_file(path)?;
        self.write_csv(std::io::BufWriter::new(file))
            .map_err(|source| Error::Io { path: path.to_path_buf(), source })
    }
}
