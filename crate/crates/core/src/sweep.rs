//! Rectangular parameter sweeps of entropy, Lyapunov exponents and
//! stability codes.
//!
//! Cells are laid out row-major with the first axis outer. Every cell is a
//! pure function of the specification and its indices, so the sweep may be
//! evaluated on any number of threads without changing a single bit of the
//! output. Cells that cannot be evaluated hold [`SENTINEL`].

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::dynamics::{lyapunov_turning, DEFAULT_ORBIT_LENGTH};
use crate::entropy::{entropy_bisection, DEFAULT_MAX_LEN, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::family::{Assignment, Param, Pattern};
use crate::fixed_points::stability_code;
use crate::grid::Axis;
use crate::maps::DeformedMap;
pub use crate::output::SENTINEL;
use crate::output::{create_file, format_value};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    Entropy,
    Lyapunov,
    LyapunovPositiveMask,
    StabilityCode,
    /// `1` where a source grid exceeded `threshold`, else `0`.
    Mask {
        threshold: f64,
    },
}

impl Quantity {
    pub fn is_mask(self) -> bool {
        matches!(self, Quantity::LyapunovPositiveMask | Quantity::Mask { .. })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Entropy => f.write_str("entropy"),
            Quantity::Lyapunov => f.write_str("lyapunov"),
            Quantity::LyapunovPositiveMask => f.write_str("lyapunov-positive"),
            Quantity::StabilityCode => f.write_str("stability"),
            Quantity::Mask { threshold } => write!(f, "mask>{threshold}"),
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "entropy" => Ok(Quantity::Entropy),
            "lyapunov" => Ok(Quantity::Lyapunov),
            "lyapunov-positive" => Ok(Quantity::LyapunovPositiveMask),
            "stability" => Ok(Quantity::StabilityCode),
            other => Err(Error::InvalidSpec(format!("unknown quantity `{other}`"))),
        }
    }
}

/// What to sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub pattern: Pattern,
    pub quantity: Quantity,
    /// `q` or `q1`; non-positive grid points are skipped.
    pub axis1: Axis,
    /// `r` for one-valued patterns, `q2` for two-valued ones.
    pub axis2: Axis,
    /// Fixed `r` for two-valued patterns.
    pub r: Option<f64>,
    pub tolerance: f64,
    pub max_len: usize,
    pub orbit_length: usize,
}

impl SweepSpec {
    pub fn new(pattern: Pattern, quantity: Quantity, axis1: Axis, axis2: Axis, r: Option<f64>) -> Self {
        Self {
            pattern,
            quantity,
            axis1,
            axis2,
            r,
            tolerance: DEFAULT_TOLERANCE,
            max_len: DEFAULT_MAX_LEN,
            orbit_length: DEFAULT_ORBIT_LENGTH,
        }
    }

    /// Checks the specification and returns it with deformation axes cut
    /// down to their positive part.
    pub fn validated(&self) -> Result<SweepSpec> {
        if self.quantity.is_mask() && self.quantity != Quantity::LyapunovPositiveMask {
            return Err(Error::InvalidSpec("threshold masks are derived with threshold_mask".into()));
        }
        if !(self.tolerance > 0.0) || self.max_len == 0 || self.orbit_length < 100 {
            return Err(Error::InvalidSpec("tolerance, max_len or orbit length out of range".into()));
        }
        let (p1, p2) = self.pattern.axes();
        let mut spec = self.clone();
        spec.axis1 = self.axis1.positive_part()?;
        if p2.is_deformation() {
            spec.axis2 = self.axis2.positive_part()?;
        }
        match (self.pattern.is_two_valued(), self.r) {
            (true, Some(r)) if r > 0.0 && r <= 4.0 => {}
            (true, _) => {
                return Err(Error::InvalidSpec(format!("pattern {} needs a fixed r in (0, 4]", self.pattern)))
            }
            (false, Some(_)) => {
                return Err(Error::InvalidSpec(format!(
                    "pattern {} sweeps r; drop the fixed r",
                    self.pattern
                )))
            }
            (false, None) => {}
        }
        debug_assert!(p1 == Param::Q1);
        Ok(spec)
    }

    fn assignment(&self, i: usize, j: usize) -> Assignment {
        let (p1, p2) = self.pattern.axes();
        let mut a = Assignment::new().with(p1, self.axis1.value(i)).with(p2, self.axis2.value(j));
        if let Some(r) = self.r {
            a.set(Param::R, r);
        }
        a
    }

    /// The map at cell `(i, j)` of a validated spec.
    pub fn map_at(&self, i: usize, j: usize) -> Result<DeformedMap> {
        self.pattern.family(self.r)?.map_at(&self.assignment(i, j))
    }

    /// Value of cell `(i, j)` of a validated spec.
    pub fn cell_value(&self, i: usize, j: usize) -> f64 {
        self.try_cell(i, j).unwrap_or(SENTINEL)
    }

    fn try_cell(&self, i: usize, j: usize) -> Result<f64> {
        let m = self.map_at(i, j)?;
        Ok(match self.quantity {
            Quantity::Entropy => entropy_bisection(&m, self.tolerance, self.max_len)?.value,
            Quantity::Lyapunov => lyapunov_turning(&m, self.orbit_length)?,
            Quantity::LyapunovPositiveMask => (lyapunov_turning(&m, self.orbit_length)? > 0.0) as u8 as f64,
            Quantity::StabilityCode => stability_code(&m)? as f64,
            Quantity::Mask { .. } => unreachable!("rejected by validation"),
        })
    }
}

/// A computed sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub pattern: Pattern,
    pub quantity: Quantity,
    pub axis1_param: Param,
    pub axis1: Axis,
    pub axis2_param: Param,
    pub axis2: Axis,
    pub r: Option<f64>,
    /// Row-major, `axis1` outer.
    pub cells: Vec<f64>,
}

impl SweepGrid {
    pub fn rows(&self) -> usize {
        self.axis1.len()
    }

    pub fn cols(&self) -> usize {
        self.axis2.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.cols() + j]
    }

    /// `(axis1 value, axis2 value, cell value)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let cols = self.cols();
        self.cells
            .iter()
            .enumerate()
            .map(move |(k, &v)| (self.axis1.value(k / cols), self.axis2.value(k % cols), v))
    }

    /// CSV with header `axis1,axis2,value`, LF line endings.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        out.write_all(b"axis1,axis2,value\n")?;
        for (a, b, v) in self.iter() {
            writeln!(out, "{a},{b},{}", format_value(v))?;
        }
        out.flush()
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ASCII output")
    }

    pub fn export_csv(&self, path: &Path) -> Result<()> {
        let file = create_file(path)?;
        self.write_csv(std::io::BufWriter::new(file))
            .map_err(|source| Error::Io { path: path.to_path_buf(), source })
    }
}

/// Evaluates every cell of `spec` on the current rayon pool.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepGrid> {
    let spec = spec.validated()?;
    let (rows, cols) = (spec.axis1.len(), spec.axis2.len());
    let cells: Vec<f64> =
        (0..rows * cols).into_par_iter().map(|k| spec.cell_value(k / cols, k % cols)).collect();
    let (axis1_param, axis2_param) = spec.pattern.axes();
    Ok(SweepGrid {
        pattern: spec.pattern,
        quantity: spec.quantity,
        axis1_param,
        axis1: spec.axis1,
        axis2_param,
        axis2: spec.axis2,
        r: spec.r,
        cells,
    })
}

/// `1` where the value exceeds `threshold`, `0` elsewhere; sentinel cells
/// are kept.
pub fn threshold_mask(grid: &SweepGrid, threshold: f64) -> Result<SweepGrid> {
    if !matches!(grid.quantity, Quantity::Entropy | Quantity::Lyapunov) {
        return Err(Error::Type(format!("cannot threshold a {} grid", grid.quantity)));
    }
    let cells = grid
        .cells
        .iter()
        .map(|&v| if v == SENTINEL { SENTINEL } else { (v > threshold) as u8 as f64 })
        .collect();
    Ok(SweepGrid { quantity: Quantity::Mask { threshold }, cells, ..grid.clone() })
}

/// Writes a plain-text record of the sweep settings next to the data.
pub fn write_manifest(spec: &SweepSpec, path: &Path, software: &str) -> Result<()> {
    let io = |source| Error::Io { path: path.to_path_buf(), source };
    let mut f = create_file(path)?;
    let spec = spec.validated()?;
    let (p1, p2) = spec.pattern.axes();
    let text = format!(
        "software = {software}\npattern = {}\nquantity = {}\n{p1} = {}\n{p2} = {}\nr = {}\n\
         entropy_tolerance = {}\nkneading_max_len = {}\nlyapunov_orbit_length = {}\nsentinel = {}\n",
        spec.pattern,
        spec.quantity,
        spec.axis1,
        spec.axis2,
        spec.r.map_or("swept".to_string(), |r| r.to_string()),
        spec.tolerance,
        spec.max_len,
        spec.orbit_length,
        format_value(SENTINEL),
    );
    f.write_all(text.as_bytes()).map_err(io)
}
