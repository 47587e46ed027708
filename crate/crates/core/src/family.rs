//! Parametrised families of deformed maps, used by bifurcation scans and
//! parameter sweeps.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::maps::DeformedMap;

/// A free parameter of a family. `q` is an alias of `q1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    R,
    Q1,
    Q2,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::R => "r",
            Param::Q1 => "q1",
            Param::Q2 => "q2",
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    /// Whether the parameter is a deformation parameter (must be positive,
    /// unbounded above).
    pub fn is_deformation(self) -> bool {
        self != Param::R
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "r" => Ok(Param::R),
            "q" | "q1" => Ok(Param::Q1),
            "q2" => Ok(Param::Q2),
            other => Err(Error::InvalidSpec(format!("unknown parameter `{other}`"))),
        }
    }
}

/// Values for the free parameters of a family.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Assignment([Option<f64>; 3]);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, p: Param, value: f64) -> Self {
        self.0[p.index()] = Some(value);
        self
    }

    pub fn set(&mut self, p: Param, value: f64) {
        self.0[p.index()] = Some(value);
    }

    pub fn get(&self, p: Param) -> Option<f64> {
        self.0[p.index()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Slot {
    Fixed(f64),
    Var(Param),
}

impl Slot {
    fn resolve(&self, values: &Assignment) -> Result<f64> {
        match *self {
            Slot::Fixed(v) => Ok(v),
            Slot::Var(p) => {
                values.get(p).ok_or_else(|| Error::InvalidSpec(format!("no value given for parameter {p}")))
            }
        }
    }
}

impl FromStr for Slot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.parse::<f64>() {
            Ok(v) => Ok(Slot::Fixed(v)),
            Err(_) => s.parse::<Param>().map(Slot::Var),
        }
    }
}

/// `r` together with a chain template in application order.
#[derive(Debug, Clone, PartialEq)]
pub struct MapFamily {
    pub r: Slot,
    pub chain: Vec<Slot>,
}

impl MapFamily {
    pub fn new(r: Slot, chain: Vec<Slot>) -> Self {
        Self { r, chain }
    }

    /// Parses a comma-separated chain template such as `q2,q2,3`.
    /// An empty string is the empty chain.
    pub fn parse_chain(s: &str) -> Result<Vec<Slot>> {
        if s.trim().is_empty() {
            return Ok(Vec::new());
        }
        s.split(',').map(str::parse).collect()
    }

    pub fn map_at(&self, values: &Assignment) -> Result<DeformedMap> {
        let r = self.r.resolve(values)?;
        let chain = self.chain.iter().map(|s| s.resolve(values)).collect::<Result<Vec<_>>>()?;
        DeformedMap::new(r, &chain)
    }

    pub fn uses(&self, p: Param) -> bool {
        self.r == Slot::Var(p) || self.chain.contains(&Slot::Var(p))
    }
}

/// The chain layouts studied as parameter sweeps.
///
/// Names follow the composition order of the written map: `q1q2` is
/// `phi_{q1} ∘ phi_{q2} ∘ f_r`, so `q2` is applied first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    /// `phi_q ∘ f_r`
    Single,
    /// `phi_q^k ∘ f_r`
    Repeated(usize),
    Q1Q2,
    Q1Q1Q2,
    Q1Q2Q2,
    Q1Q2Q1,
}

impl Pattern {
    pub const ALL: [Pattern; 8] = [
        Pattern::Single,
        Pattern::Repeated(2),
        Pattern::Repeated(3),
        Pattern::Repeated(5),
        Pattern::Q1Q2,
        Pattern::Q1Q1Q2,
        Pattern::Q1Q2Q2,
        Pattern::Q1Q2Q1,
    ];

    /// Chain template in application order.
    pub fn chain(self) -> Vec<Slot> {
        use Param::{Q1, Q2};
        use Slot::Var;
        match self {
            Pattern::Single => vec![Var(Q1)],
            Pattern::Repeated(k) => vec![Var(Q1); k],
            Pattern::Q1Q2 => vec![Var(Q2), Var(Q1)],
            Pattern::Q1Q1Q2 => vec![Var(Q2), Var(Q1), Var(Q1)],
            Pattern::Q1Q2Q2 => vec![Var(Q2), Var(Q2), Var(Q1)],
            Pattern::Q1Q2Q1 => vec![Var(Q1), Var(Q2), Var(Q1)],
        }
    }

    /// Whether the pattern mixes two deformation parameters, swept at a
    /// fixed `r`.
    pub fn is_two_valued(self) -> bool {
        !matches!(self, Pattern::Single | Pattern::Repeated(_))
    }

    /// The two swept parameters: `(q, r)` or `(q1, q2)`.
    pub fn axes(self) -> (Param, Param) {
        if self.is_two_valued() {
            (Param::Q1, Param::Q2)
        } else {
            (Param::Q1, Param::R)
        }
    }

    /// The family, with `r` free for one-valued patterns and fixed otherwise.
    pub fn family(self, fixed_r: Option<f64>) -> Result<MapFamily> {
        let r = if self.is_two_valued() {
            Slot::Fixed(fixed_r.ok_or_else(|| Error::InvalidSpec(format!("pattern {self} needs a fixed r")))?)
        } else {
            Slot::Var(Param::R)
        };
        Ok(MapFamily::new(r, self.chain()))
    }

    pub fn name(self) -> &'static str {
        match self {
            Pattern::Single => "single",
            Pattern::Repeated(2) => "k2",
            Pattern::Repeated(3) => "k3",
            Pattern::Repeated(5) => "k5",
            Pattern::Repeated(_) => "k",
            Pattern::Q1Q2 => "q1q2",
            Pattern::Q1Q1Q2 => "q1q1q2",
            Pattern::Q1Q2Q2 => "q1q2q2",
            Pattern::Q1Q2Q1 => "q1q2q1",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Repeated(k) if ![2, 3, 5].contains(k) => write!(f, "k{k}"),
            _ => f.write_str(self.name()),
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Pattern::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown chain pattern `{s}`")))
    }
}
