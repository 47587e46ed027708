//! Topological entropy of unimodal maps.
//!
//! The main estimator bisects over tent slopes `s ∈ [1, 2]`: since the
//! entropy of a unimodal map is a monotone function of its kneading sequence
//! in the parity-lexicographic order, `h(f) ≥ log s` exactly when the
//! kneading sequence of `f` is at least that of the tent map `T_s`.
//!
//! Lap counting (`h = lim (1/n) log c_n`) gives an independent, much slower
//! estimate used as a cross-check.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::maps::{TentMap, UnimodalMap};
use crate::roots::bisect;

/// Distance from the turning point at which an orbit point gets symbol `C`.
pub const CRITICAL_EPSILON: f64 = 1e-12;
pub const DEFAULT_TOLERANCE: f64 = 1e-4;
pub const DEFAULT_MAX_LEN: usize = 10_000;
/// Minimum number of bisection steps on the slope.
pub const MIN_BISECTION_STEPS: u32 = 15;
/// Slope at which positive entropy is first tested.
pub const ZERO_ENTROPY_SLOPE: f64 = 1.0 + 1e-6;
/// Largest `n` accepted by [`lap_count`].
pub const MAX_LAP_ITERATE: usize = 25;
const PREIMAGE_TOLERANCE: f64 = 1e-13;
const DEDUP_DISTANCE: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    L,
    C,
    R,
}

impl Symbol {
    fn of(x: f64, turning_point: f64, band: f64) -> Symbol {
        if x < turning_point - band {
            Symbol::L
        } else if x > turning_point + band {
            Symbol::R
        } else {
            Symbol::C
        }
    }
}

/// Itinerary of the critical value `f(c)`, ending at the first `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KneadingSequence {
    pub symbols: Vec<Symbol>,
    /// The length limit was reached before any `C`.
    pub truncated: bool,
}

impl fmt::Display for KneadingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{s:?}")?;
        }
        if self.truncated {
            f.write_str("…")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for KneadingSequence {
    type Err = Error;

    /// Parses `RLRC`-style strings; sequences without a final `C` are
    /// marked truncated.
    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|c| match c {
                'L' => Ok(Symbol::L),
                'C' => Ok(Symbol::C),
                'R' => Ok(Symbol::R),
                _ => Err(Error::Domain(format!("invalid kneading symbol `{c}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(i) = symbols.iter().position(|&s| s == Symbol::C) {
            if i + 1 != symbols.len() {
                return Err(Error::Domain("`C` may only appear last".into()));
            }
            return Ok(Self { symbols, truncated: false });
        }
        Ok(Self { symbols, truncated: true })
    }
}

/// Lazily extended itinerary of the critical value.
struct Itinerary<M: UnimodalMap> {
    map: M,
    c: f64,
    x: f64,
    symbols: Vec<Symbol>,
    max_len: usize,
}

impl<M: UnimodalMap> Itinerary<M> {
    fn new(map: M, max_len: usize) -> Self {
        let c = map.turning_point();
        let x = map.apply(c);
        Self { map, c, x, symbols: Vec::new(), max_len }
    }

    fn get(&mut self, i: usize) -> Option<Symbol> {
        while self.symbols.len() <= i {
            if self.symbols.len() >= self.max_len || self.symbols.last() == Some(&Symbol::C) {
                return None;
            }
            let s = Symbol::of(self.x, self.c, self.map.critical_band());
            self.symbols.push(s);
            self.x = self.map.apply(self.x);
        }
        Some(self.symbols[i])
    }

    fn into_sequence(mut self) -> KneadingSequence {
        let mut i = 0;
        while self.get(i).is_some() {
            i += 1;
        }
        let truncated = self.symbols.last() != Some(&Symbol::C);
        KneadingSequence { symbols: self.symbols, truncated }
    }
}

impl Symbol {
    fn flipped(self) -> Symbol {
        match self {
            Symbol::L => Symbol::R,
            Symbol::C => Symbol::C,
            Symbol::R => Symbol::L,
        }
    }
}

/// Tent itinerary, renormalised for slopes up to √2: the kneading of `T_s`
/// is `R b̄_1 R b̄_2 …` where `b` is the kneading of `T_{s²}` and the bar
/// swaps `L` and `R`. Iterating `T_s` directly loses the orbit near `s = 1`,
/// where it stays within `(s - 1)^k` of the turning point.
struct TentItinerary {
    base: Itinerary<TentMap>,
    depth: u32,
    max_len: usize,
}

impl TentItinerary {
    fn new(s: f64, max_len: usize) -> Result<Self> {
        let mut slope = TentMap::new(s)?.slope();
        let mut depth = 0;
        while slope <= std::f64::consts::SQRT_2 {
            slope = (slope * slope).min(2.0);
            depth += 1;
        }
        let base = Itinerary::new(TentMap::new(slope)?, max_len);
        Ok(Self { base, depth, max_len })
    }

    fn get(&mut self, i: usize) -> Option<Symbol> {
        if i >= self.max_len {
            return None;
        }
        self.symbol(i, self.depth)
    }

    fn symbol(&mut self, i: usize, depth: u32) -> Option<Symbol> {
        if depth == 0 {
            return self.base.get(i);
        }
        if i % 2 == 1 {
            return self.symbol(i / 2, depth - 1).map(Symbol::flipped);
        }
        if i > 0 {
            // the sequence stops after the inner one reaches C
            match self.symbol(i / 2 - 1, depth - 1) {
                None | Some(Symbol::C) => return None,
                _ => {}
            }
        }
        Some(Symbol::R)
    }
}

/// Kneading sequence of any unimodal map.
pub fn kneading_of<M: UnimodalMap + ?Sized>(m: &M, max_len: usize) -> KneadingSequence {
    Itinerary::new(m, max_len).into_sequence()
}

/// Kneading sequence of a deformed logistic map.
pub fn kneading(m: &crate::maps::DeformedMap, max_len: usize) -> KneadingSequence {
    kneading_of(m, max_len)
}

/// Kneading sequence of the tent map with slope `s ∈ (1, 2]`.
pub fn tent_kneading(s: f64, max_len: usize) -> Result<KneadingSequence> {
    let mut it = TentItinerary::new(s, max_len)?;
    let mut symbols = Vec::new();
    while let Some(sym) = it.get(symbols.len()) {
        symbols.push(sym);
        if sym == Symbol::C {
            break;
        }
    }
    let truncated = symbols.last() != Some(&Symbol::C);
    Ok(KneadingSequence { symbols, truncated })
}

/// Outcome of comparing two symbol streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Comparison {
    Decided(Ordering),
    /// Both streams ended together (at a `C` or both exhausted).
    Equal,
    /// One stream ran out before the other differed.
    Tie,
}

fn compare_streams(
    mut a: impl FnMut(usize) -> Option<Symbol>,
    mut b: impl FnMut(usize) -> Option<Symbol>,
) -> Comparison {
    let mut odd = false;
    let mut i = 0;
    loop {
        match (a(i), b(i)) {
            (None, None) => return Comparison::Equal,
            (None, Some(_)) | (Some(_), None) => return Comparison::Tie,
            (Some(x), Some(y)) if x != y => {
                let natural = x.cmp(&y);
                return Comparison::Decided(if odd { natural.reverse() } else { natural });
            }
            (Some(x), Some(_)) => {
                if x == Symbol::C {
                    return Comparison::Equal;
                }
                odd ^= x == Symbol::R;
            }
        }
        i += 1;
    }
}

/// Parity-lexicographic order on kneading sequences: `L < C < R`, reversed
/// after an odd number of `R`s. Sequences that agree until one of them is
/// exhausted compare equal.
pub fn kneading_compare(a: &KneadingSequence, b: &KneadingSequence) -> Ordering {
    match compare_streams(|i| a.symbols.get(i).copied(), |i| b.symbols.get(i).copied()) {
        Comparison::Decided(o) => o,
        Comparison::Equal | Comparison::Tie => Ordering::Equal,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyStatus {
    Converged,
    /// Entropy below `log(1 + 1e-6)`, reported as 0.
    Zero,
    /// Some comparison was left undecided at the length limit.
    MaxLengthTie,
}

impl fmt::Display for EntropyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntropyStatus::Converged => "CONVERGED",
            EntropyStatus::Zero => "ZERO",
            EntropyStatus::MaxLengthTie => "MAX_LENGTH_TIE",
        })
    }
}

/// Entropy in natural-log units with the bracket it was bisected to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyResult {
    pub value: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub status: EntropyStatus,
}

/// Topological entropy by kneading bisection against tent maps.
pub fn entropy_bisection(m: &crate::maps::DeformedMap, tol: f64, max_len: usize) -> Result<EntropyResult> {
    entropy_of(m, tol, max_len)
}

/// [`entropy_bisection`] for any unimodal map with turning point at 1/2.
pub fn entropy_of<M: UnimodalMap + ?Sized>(m: &M, tol: f64, max_len: usize) -> Result<EntropyResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut itinerary = Itinerary::new(m, max_len);
    let mut tie = false;
    let mut at_least = |s: f64| -> bool {
        let mut tent_itinerary = TentItinerary::new(s, max_len).expect("bisection slopes lie in (1, 2)");
        match compare_streams(|i| itinerary.get(i), |i| tent_itinerary.get(i)) {
            Comparison::Decided(o) => o != Ordering::Less,
            Comparison::Equal => true,
            Comparison::Tie => {
                tie = true;
                true
            }
        }
    };

    if !at_least(ZERO_ENTROPY_SLOPE) {
        return Ok(EntropyResult {
            value: 0.0,
            bracket_lo: 0.0,
            bracket_hi: ZERO_ENTROPY_SLOPE.ln(),
            status: EntropyStatus::Zero,
        });
    }

    // the log-bracket is at most as wide as the slope bracket
    let needed = (1.0 / (2.0 * tol)).log2().ceil().max(0.0) as u32;
    let steps = needed.max(MIN_BISECTION_STEPS);
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    for _ in 0..steps {
        let mid = 0.5 * (lo + hi);
        if at_least(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (bracket_lo, bracket_hi) = (lo.ln(), hi.ln());
    Ok(EntropyResult {
        value: 0.5 * (bracket_lo + bracket_hi),
        bracket_lo,
        bracket_hi,
        status: if tie { EntropyStatus::MaxLengthTie } else { EntropyStatus::Converged },
    })
}

/// Lap numbers `c_1, …, c_n` of the iterates of `m`, counted as one plus
/// the number of distinct points of `⋃_{i<n} m^{-i}(c)`.
pub fn lap_counts<M: UnimodalMap + ?Sized>(m: &M, n: usize) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::Domain("lap number needs n ≥ 1".into()));
    }
    if n > MAX_LAP_ITERATE {
        return Err(Error::ResourceLimit(format!(
            "lap counting is limited to n ≤ {MAX_LAP_ITERATE}, got {n}"
        )));
    }
    let c = m.turning_point();
    let top = m.apply(c);
    let mut level = vec![c];
    let mut seen = vec![c];
    let mut counts = vec![2];
    for _ in 1..n {
        let mut next = Vec::with_capacity(2 * level.len());
        for &y in &level {
            if y > top || y < 0.0 {
                continue;
            }
            let g = |x: f64| m.apply(x) - y;
            next.push(bisect(g, 0.0, c, PREIMAGE_TOLERANCE)?);
            next.push(bisect(g, c, 1.0, PREIMAGE_TOLERANCE)?);
        }
        dedup_sorted(&mut next);
        seen.extend_from_slice(&next);
        dedup_sorted(&mut seen);
        counts.push(1 + seen.len() as u64);
        level = next;
    }
    Ok(counts)
}

fn dedup_sorted(points: &mut Vec<f64>) {
    points.sort_by(f64::total_cmp);
    points.dedup_by(|b, a| (*b - *a).abs() < DEDUP_DISTANCE);
}

/// Lap number `c_n` of the `n`-th iterate.
pub fn lap_count<M: UnimodalMap + ?Sized>(m: &M, n: usize) -> Result<u64> {
    Ok(*lap_counts(m, n)?.last().expect("n ≥ 1"))
}

/// Growth-rate estimate `log(c_n / c_{n-1})`.
pub fn entropy_lap_estimate<M: UnimodalMap + ?Sized>(m: &M, n: usize) -> Result<f64> {
    if n < 4 {
        return Err(Error::Domain(format!("lap estimate needs n ≥ 4, got {n}")));
    }
    let counts = lap_counts(m, n)?;
    Ok((counts[n - 1] as f64 / counts[n - 2] as f64).ln())
}
