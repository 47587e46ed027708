//! Uniform parameter axes.
//!
//! An axis is written `MIN..MAX:STEP` (half-open, `MAX` excluded) or
//! `MIN..=MAX:STEP` (closed). Grid values are `MIN + i * STEP`, rounded to
//! twelve decimals so that printed coordinates are stable.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub step: f64,
    /// Whether `max` itself belongs to the grid when it is hit exactly.
    pub closed: bool,
}

impl Axis {
    pub fn new(min: f64, max: f64, step: f64, closed: bool) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && step.is_finite()) {
            return Err(Error::InvalidSpec("axis bounds must be finite".into()));
        }
        if !(step > 0.0) {
            return Err(Error::InvalidSpec(format!("axis step must be positive, got {step}")));
        }
        if max < min || (!closed && max == min) {
            return Err(Error::InvalidSpec(format!("empty axis range {min}..{max}")));
        }
        Ok(Self { min, max, step, closed })
    }

    pub fn half_open(min: f64, max: f64, step: f64) -> Result<Self> {
        Self::new(min, max, step, false)
    }

    pub fn closed(min: f64, max: f64, step: f64) -> Result<Self> {
        Self::new(min, max, step, true)
    }

    /// A single-point axis.
    pub fn point(value: f64) -> Self {
        Self { min: value, max: value, step: 1.0, closed: true }
    }

    pub fn len(&self) -> usize {
        let span = (self.max - self.min) / self.step;
        let last = (span + SLACK).floor() as usize;
        let hits_max = (span - last as f64).abs() <= SLACK;
        if hits_max && !self.closed {
            last
        } else {
            last + 1
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn value(&self, i: usize) -> f64 {
        round12(self.min + i as f64 * self.step)
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.value(i)).collect()
    }

    /// Drops grid points that are not strictly positive, e.g. `q = 0` on an
    /// axis written `0..100:0.1`.
    pub fn positive_part(&self) -> Result<Self> {
        let first = (0..self.len())
            .find(|&i| self.value(i) > 0.0)
            .ok_or_else(|| Error::InvalidSpec(format!("axis {self} has no positive grid point")))?;
        Self::new(self.value(first), self.max, self.step, self.closed)
    }
}

fn round12(v: f64) -> f64 {
    let r = (v * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dots = if self.closed { "..=" } else { ".." };
        write!(f, "{}{}{}:{}", self.min, dots, self.max, self.step)
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(format!("expected MIN..MAX:STEP or MIN..=MAX:STEP, got `{s}`"));
        let (range, step) = s.rsplit_once(':').ok_or_else(bad)?;
        let (min, rest) = range.split_once("..").ok_or_else(bad)?;
        let (closed, max) = match rest.strip_prefix('=') {
            Some(max) => (true, max),
            None => (false, rest),
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        Axis::new(num(min)?, num(max)?, num(step)?, closed)
    }
}
