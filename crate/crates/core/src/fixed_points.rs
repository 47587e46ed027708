//! Fixed points of deformed logistic maps and their stability.
//!
//! `0` is a fixed point of every map in the family, with multiplier
//! `r ∏ log(q_i)/(q_i - 1)`. Non-zero fixed points have no closed form and
//! are located by a sign scan of `Φ(x) - x` followed by bisection. Because
//! every map has negative Schwarzian derivative, a LAS fixed point is GAS
//! as soon as no other attractor can compete with it, which is what
//! [`gas_check`] tests.

use std::fmt;

use crate::error::Result;
use crate::family::{Assignment, Param, Pattern};
use crate::maps::{DeformedMap, UnimodalMap, TURNING_POINT};
use crate::output::format_value;
use crate::roots::bisect;
use crate::sweep::{run_sweep, Quantity, SweepGrid, SweepSpec};

/// Width of the band around `|multiplier| = 1` treated as neutral.
pub const NEUTRAL_BAND: f64 = 1e-9;
/// Subintervals used by the sign scan for non-zero fixed points.
pub const SCAN_INTERVALS: usize = 10_000;
/// Left end of the scan; excludes the fixed point 0.
pub const SCAN_CUTOFF: f64 = 1e-6;
/// `|Φ(x) - x|` below which a local minimum without sign change is a
/// tangential root.
pub const TANGENCY_THRESHOLD: f64 = 1e-10;
/// Bracket width at which fixed-point bisection stops.
pub const ROOT_TOLERANCE: f64 = 1e-12;
/// Points of `(0, 1)` on which `Φ(x) < x` is checked for global stability of 0.
pub const GAS_GRID: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stability {
    /// Locally asymptotically stable, `|multiplier| < 1`.
    Las,
    /// `|multiplier| > 1`.
    Unstable,
    /// Neutral multiplier, stable by higher-order terms.
    NeutralLas,
    /// Neutral multiplier, not shown to be stable.
    NeutralUnresolved,
}

impl Stability {
    /// LAS, including the neutral case decided by higher derivatives.
    pub fn is_stable(self) -> bool {
        matches!(self, Stability::Las | Stability::NeutralLas)
    }
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Las => "LAS",
            Stability::Unstable => "UNSTABLE",
            Stability::NeutralLas => "NEUTRAL_LAS",
            Stability::NeutralUnresolved => "NEUTRAL_UNRESOLVED",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointRecord {
    pub location: f64,
    pub multiplier: f64,
    pub classification: Stability,
    pub gas: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    ZeroGas,
    NonzeroGas,
    /// 0 is LAS and `[x1, x1*]` is forward invariant, so a second attractor
    /// lives inside it.
    CoexistInvariant,
    /// 0 is LAS and the critical value leaves `[x1, x1*]`; almost every
    /// orbit ends up in the basin of 0.
    CoexistEscaping,
    /// No fixed point is GAS and the coexistence picture does not apply,
    /// e.g. a periodic or chaotic attractor with 0 unstable.
    NoGasFixedPoint,
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScenarioKind::ZeroGas => "ZERO_GAS",
            ScenarioKind::NonzeroGas => "NONZERO_GAS",
            ScenarioKind::CoexistInvariant => "COEXIST_INVARIANT",
            ScenarioKind::CoexistEscaping => "COEXIST_ESCAPING",
            ScenarioKind::NoGasFixedPoint => "NO_GAS_FIXED_POINT",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttractorScenario {
    pub kind: ScenarioKind,
    pub zero_record: FixedPointRecord,
    pub nonzero_records: Vec<FixedPointRecord>,
    /// `max Φ^{-1}(x1)` in the coexistence cases.
    pub x1_star: Option<f64>,
}

/// `Φ'(0) = r ∏ log(q_i)/(q_i - 1)`.
pub fn multiplier_at_zero(m: &DeformedMap) -> f64 {
    m.multiplier_at_zero()
}

/// Local stability of the fixed point 0.
///
/// In the neutral band a single deformation is decided by `q ≤ 3`
/// (`Φ''(0) = q - 3` on the curve `r log q = q - 1`, and `Φ'''(0) = -8` at
/// `q = 3`); longer chains are decided by the signs of `Φ''(0)` and `Φ'''(0)`.
pub fn classify_zero(m: &DeformedMap) -> FixedPointRecord {
    let multiplier = m.multiplier_at_zero();
    let classification = if multiplier < 1.0 - NEUTRAL_BAND {
        Stability::Las
    } else if multiplier > 1.0 + NEUTRAL_BAND {
        Stability::Unstable
    } else {
        let mut active = m.deformations().iter().filter(|d| !d.is_identity());
        match (active.next(), active.next()) {
            (None, _) => Stability::NeutralLas, // f_1: f''(0) = -2 < 0
            (Some(d), None) => {
                if d.q() <= 3.0 {
                    Stability::NeutralLas
                } else {
                    Stability::NeutralUnresolved
                }
            }
            _ => {
                let jet = m.jet(0.0).expect("0 is in the domain");
                if jet.d2 < -NEUTRAL_BAND || (jet.d2.abs() <= NEUTRAL_BAND && jet.d3 < 0.0) {
                    Stability::NeutralLas
                } else {
                    Stability::NeutralUnresolved
                }
            }
        }
    };
    FixedPointRecord { location: 0.0, multiplier, classification, gas: false }
}

fn classify_interior(m: &DeformedMap, location: f64) -> FixedPointRecord {
    let multiplier = m.derivative(location);
    let classification = if multiplier.abs() < 1.0 - NEUTRAL_BAND {
        Stability::Las
    } else if multiplier.abs() > 1.0 + NEUTRAL_BAND {
        Stability::Unstable
    } else if multiplier < 0.0 && m.schwarzian(location).is_ok_and(|s| s < 0.0) {
        // multiplier -1 with negative Schwarzian derivative
        Stability::NeutralLas
    } else {
        Stability::NeutralUnresolved
    };
    FixedPointRecord { location, multiplier, classification, gas: false }
}

/// Non-zero fixed points, sorted by location.
pub fn find_nonzero_fixed_points(m: &DeformedMap) -> Result<Vec<FixedPointRecord>> {
    let g = |x: f64| m.apply(x) - x;
    let h = (1.0 - SCAN_CUTOFF) / SCAN_INTERVALS as f64;
    let xs: Vec<f64> = (0..=SCAN_INTERVALS)
        .map(|i| if i == SCAN_INTERVALS { 1.0 } else { SCAN_CUTOFF + i as f64 * h })
        .collect();
    let gs: Vec<f64> = xs.iter().map(|&x| g(x)).collect();

    let mut roots = Vec::new();
    for i in 0..SCAN_INTERVALS {
        let (ga, gb) = (gs[i], gs[i + 1]);
        if ga == 0.0 {
            roots.push(xs[i]);
        } else if gb != 0.0 && ga.signum() != gb.signum() {
            roots.push(bisect(g, xs[i], xs[i + 1], ROOT_TOLERANCE)?);
        } else if i > 0 {
            let touches = ga.abs() < TANGENCY_THRESHOLD
                && ga.abs() <= gs[i - 1].abs()
                && ga.abs() <= gb.abs()
                && gs[i - 1].signum() == ga.signum();
            if touches {
                roots.push(xs[i]);
            }
        }
    }
    Ok(roots.into_iter().map(|x| classify_interior(m, x)).collect())
}

/// The globally asymptotically stable fixed point, when there is one.
///
/// 0 is GAS iff it is LAS and `Φ(x) < x` on `(0, 1)`; a non-zero LAS fixed
/// point is GAS iff 0 is not LAS.
pub fn gas_check(m: &DeformedMap) -> Result<Option<FixedPointRecord>> {
    let zero = classify_zero(m);
    if zero.classification.is_stable() {
        let n = GAS_GRID as f64 + 1.0;
        let below = (1..=GAS_GRID).all(|i| {
            let x = i as f64 / n;
            m.apply(x) < x
        });
        return Ok(below.then_some(FixedPointRecord { gas: true, ..zero }));
    }
    Ok(find_nonzero_fixed_points(m)?
        .into_iter()
        .find(|p| p.classification.is_stable())
        .map(|p| FixedPointRecord { gas: true, ..p }))
}

/// `r1(q) = (q - 1)/log q`, the curve `Φ'(0) = 1` for one deformation.
pub fn curve_r1(q: f64) -> f64 {
    let l = q.ln();
    if l.abs() < 1e-300 {
        1.0
    } else {
        l.exp_m1() / l
    }
}

/// `r2(q) = 4 log((1 + q)/2)/log q`, the curve `Φ(1/2) = 1/2` for one
/// deformation.
pub fn curve_r2(q: f64) -> f64 {
    let l = q.ln();
    if l.abs() < 1e-300 {
        2.0
    } else {
        4.0 * (0.5 * l.exp_m1()).ln_1p() / l
    }
}

/// `(q0, q1)`: `r1(q0) = 4` and `r1(q1) = r2(q1)`.
pub fn solve_special_constants() -> Result<(f64, f64)> {
    let q0 = bisect(|q| curve_r1(q) - 4.0, 2.0, 20.0, 1e-12)?;
    let q1 = bisect(|q| curve_r1(q) - curve_r2(q), 2.0, 20.0, 1e-12)?;
    Ok((q0, q1))
}

/// Classifies the attractor picture of `m`, including the case where 0
/// coexists with a second attractor bounded by `x1 < x2`.
pub fn attractor_scenario(m: &DeformedMap) -> Result<AttractorScenario> {
    let zero_record = classify_zero(m);
    let mut nonzero_records = find_nonzero_fixed_points(m)?;

    if zero_record.classification.is_stable() && nonzero_records.len() == 2 {
        let x1 = nonzero_records[0].location;
        let critical_value = m.apply(TURNING_POINT);
        // x1 = Φ(x1) ≤ Φ(1/2), so the decreasing branch brackets a preimage.
        let x1_star = bisect(|x| m.apply(x) - x1, TURNING_POINT, 1.0, ROOT_TOLERANCE)?;
        let kind = if critical_value <= x1_star {
            ScenarioKind::CoexistInvariant
        } else {
            ScenarioKind::CoexistEscaping
        };
        return Ok(AttractorScenario { kind, zero_record, nonzero_records, x1_star: Some(x1_star) });
    }

    let gas = gas_check(m)?;
    let kind = match gas {
        Some(p) if p.location == 0.0 => ScenarioKind::ZeroGas,
        Some(p) => {
            for rec in nonzero_records.iter_mut() {
                if rec.location == p.location {
                    rec.gas = true;
                }
            }
            ScenarioKind::NonzeroGas
        }
        None => ScenarioKind::NoGasFixedPoint,
    };
    let zero_record = FixedPointRecord { gas: kind == ScenarioKind::ZeroGas, ..zero_record };
    Ok(AttractorScenario { kind, zero_record, nonzero_records, x1_star: None })
}

/// Region code: bit 0 set when 0 is LAS, bit 1 when a non-zero fixed point
/// is LAS.
pub fn stability_code(m: &DeformedMap) -> Result<u8> {
    let zero = classify_zero(m).classification.is_stable() as u8;
    let nonzero = find_nonzero_fixed_points(m)?.iter().any(|p| p.classification.is_stable()) as u8;
    Ok(zero | (nonzero << 1))
}

/// A stability-code grid together with samples of the curves `Φ'(0) = 1`
/// and `Φ(1/2) = 1/2` along the first axis.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityRegion {
    pub grid: SweepGrid,
    pub boundary: Vec<BoundarySample>,
}

/// Second-axis coordinates of the two boundary curves at one first-axis
/// value; `None` when the curve does not cross the searched range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample {
    pub axis1: f64,
    pub multiplier_one: Option<f64>,
    pub critical_half: Option<f64>,
}

/// Sweeps stability codes (see [`stability_code`]) and samples the
/// analytic boundary curves.
pub fn stability_region_sweep(spec: &SweepSpec) -> Result<StabilityRegion> {
    let spec = SweepSpec { quantity: Quantity::StabilityCode, ..spec.clone() };
    let grid = run_sweep(&spec)?;
    let boundary = grid
        .axis1
        .values()
        .into_iter()
        .map(|v| boundary_sample(spec.pattern, spec.r, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(StabilityRegion { grid, boundary })
}

fn boundary_sample(pattern: Pattern, r: Option<f64>, a1: f64) -> Result<BoundarySample> {
    if pattern == Pattern::Single {
        return Ok(BoundarySample {
            axis1: a1,
            multiplier_one: Some(curve_r1(a1)),
            critical_half: Some(curve_r2(a1)),
        });
    }
    let family = pattern.family(r)?;
    if !pattern.is_two_valued() {
        // both curves are explicit in r
        let m = family.map_at(&Assignment::new().with(Param::Q1, a1).with(Param::R, 1.0))?;
        return Ok(BoundarySample {
            axis1: a1,
            multiplier_one: Some(1.0 / m.multiplier_at_zero()),
            critical_half: Some(4.0 * m.invert_chain(0.5)),
        });
    }
    // both sides decrease in q2; solve on log q2
    let at =
        |log_q2: f64| family.map_at(&Assignment::new().with(Param::Q1, a1).with(Param::Q2, log_q2.exp()));
    let solve = |f: &dyn Fn(f64) -> f64| -> Option<f64> {
        bisect(f, -BOUNDARY_LOG_RANGE, BOUNDARY_LOG_RANGE, 1e-12).ok().map(f64::exp)
    };
    let multiplier_one = solve(&|t| at(t).map_or(f64::NAN, |m| m.multiplier_at_zero() - 1.0));
    let critical_half = solve(&|t| at(t).map_or(f64::NAN, |m| m.apply(TURNING_POINT) - 0.5));
    Ok(BoundarySample { axis1: a1, multiplier_one, critical_half })
}

const BOUNDARY_LOG_RANGE: f64 = 40.0;

impl StabilityRegion {
    /// CSV with header `axis1,multiplier_one,critical_half`; missing crossings
    /// are left empty.
    pub fn write_boundary_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        out.write_all(b"axis1,multiplier_one,critical_half\n")?;
        let opt = |v: Option<f64>| v.map(format_value).unwrap_or_default();
        for b in &self.boundary {
            writeln!(out, "{},{},{}", b.axis1, opt(b.multiplier_one), opt(b.critical_half))?;
        }
        out.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(q: f64, r: f64) -> DeformedMap {
        DeformedMap::new(r, &[q]).unwrap()
    }

    #[test]
    fn multiplier_examples() {
        assert_eq!(multiplier_at_zero(&DeformedMap::logistic(2.7).unwrap()), 2.7);
        assert!((multiplier_at_zero(&single(0.5, 2.0)) - 2.772588722239781).abs() < 1e-12);
        let m = DeformedMap::new(1.0, &[0.5, 0.5]).unwrap();
        assert!((multiplier_at_zero(&m) - 1.921812055672806).abs() < 1e-12);
    }

    #[test]
    fn classify_zero_examples() {
        let rec = classify_zero(&single(0.5, 1.0));
        assert!((rec.multiplier - 1.3862943611198906).abs() < 1e-12);
        assert_eq!(rec.classification, Stability::Unstable);

        let rec = classify_zero(&single(2.0, 1.0 / 2f64.ln()));
        assert_eq!(rec.classification, Stability::NeutralLas);

        assert!(curve_r1(10.5) > 4.04);
        assert_eq!(classify_zero(&single(10.5, 4.0)).classification, Stability::Las);

        let q = 4.0;
        let rec = classify_zero(&single(q, curve_r1(q)));
        assert_eq!(rec.classification, Stability::NeutralUnresolved);

        assert_eq!(classify_zero(&DeformedMap::logistic(1.0).unwrap()).classification, Stability::NeutralLas);
    }

    #[test]
    fn classify_zero_multi_chain_neutral() {
        // Φ = phi_q ∘ phi_q ∘ f_r on the curve Φ'(0) = 1 with small q:
        // decided by the sign of Φ''(0).
        let q: f64 = 0.8;
        let a = q.ln() / (q - 1.0);
        let m = DeformedMap::new(1.0 / (a * a), &[q, q]).unwrap();
        let jet = m.jet(0.0).unwrap();
        let rec = classify_zero(&m);
        assert!((rec.multiplier - 1.0).abs() < NEUTRAL_BAND);
        let expected = if jet.d2 < 0.0 { Stability::NeutralLas } else { Stability::NeutralUnresolved };
        assert_eq!(rec.classification, expected);
    }

    #[test]
    fn logistic_fixed_points() {
        let m = DeformedMap::new(2.5, &[1.0]).unwrap();
        let pts = find_nonzero_fixed_points(&m).unwrap();
        assert_eq!(pts.len(), 1);
        assert!((pts[0].location - 0.6).abs() < 1e-11);
        assert!((pts[0].multiplier + 0.5).abs() < 1e-10);
        assert_eq!(pts[0].classification, Stability::Las);

        let m = DeformedMap::new(0.8, &[1.0]).unwrap();
        assert!(find_nonzero_fixed_points(&m).unwrap().is_empty());
    }

    #[test]
    fn gas_examples() {
        let p = gas_check(&DeformedMap::new(2.5, &[1.0]).unwrap()).unwrap().unwrap();
        assert!((p.location - 0.6).abs() < 1e-11);
        assert!(p.gas);
        let p = gas_check(&DeformedMap::new(0.5, &[1.0]).unwrap()).unwrap().unwrap();
        assert_eq!(p.location, 0.0);
        assert!(p.gas);
        assert!(gas_check(&DeformedMap::logistic(3.5).unwrap()).unwrap().is_none());
    }

    #[test]
    fn curves() {
        assert!((curve_r1(10.34665192905221) - 4.0).abs() < 1e-9);
        assert_eq!(curve_r1(1.0), 1.0);
        assert!((curve_r1(1.0 + 1e-12) - 1.0).abs() < 1e-11);
        assert!((curve_r1(std::f64::consts::E) - 1.718281828459045).abs() < 1e-14);

        assert!((curve_r2(3.0) - 4.0 * 2f64.ln() / 3f64.ln()).abs() < 1e-14);
        assert!((curve_r2(3.0) - 2.5237190142858297).abs() < 1e-12);
        assert_eq!(curve_r2(1.0), 2.0);
        assert!((curve_r2(1.0 - 1e-10) - 2.0).abs() < 1e-9);
        assert!(curve_r2(1e6) < 4.0 && curve_r2(1e6) > curve_r2(1e5));
        let q1 = 6.025724834504679;
        assert!((curve_r1(q1) - curve_r2(q1)).abs() < 1e-9);
    }

    #[test]
    fn r2_is_where_critical_value_is_one_half() {
        for &q in &[0.05, 0.7, 2.0, 9.0] {
            let m = single(q, curve_r2(q).min(4.0));
            if curve_r2(q) <= 4.0 {
                assert!((m.apply(0.5) - 0.5).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn constants() {
        let (q0, q1) = solve_special_constants().unwrap();
        assert!((q0 - 10.34665192905221).abs() < 1e-9, "{q0}");
        assert!((q1 - 6.025724834504679).abs() < 1e-9, "{q1}");
        assert!((curve_r1(q0) - 4.0).abs() <= 1e-9);
    }

    #[test]
    fn scenario_logistic() {
        let s = attractor_scenario(&DeformedMap::new(2.5, &[1.0]).unwrap()).unwrap();
        assert_eq!(s.kind, ScenarioKind::NonzeroGas);
        assert!(s.nonzero_records[0].gas);
        let s = attractor_scenario(&DeformedMap::new(0.7, &[]).unwrap()).unwrap();
        assert_eq!(s.kind, ScenarioKind::ZeroGas);
        assert!(s.zero_record.gas);
        let s = attractor_scenario(&DeformedMap::new(3.9, &[]).unwrap()).unwrap();
        assert_eq!(s.kind, ScenarioKind::NoGasFixedPoint);
    }

    #[test]
    fn region_boundaries() {
        let axis = |s: &str| s.parse::<crate::grid::Axis>().unwrap();
        let spec =
            SweepSpec::new(Pattern::Single, Quantity::Entropy, axis("0..=3:1"), axis("0.5..=4:0.5"), None);
        let region = stability_region_sweep(&spec).unwrap();
        assert_eq!(region.grid.quantity, Quantity::StabilityCode);
        assert_eq!(region.boundary.len(), 3);
        assert_eq!(region.boundary[0].multiplier_one, Some(1.0));
        assert_eq!(region.boundary[0].critical_half, Some(2.0));
        // below r1(q) the code contains "0 LAS"
        for (q, r, code) in region.grid.iter() {
            if r < curve_r1(q) {
                assert_eq!(code as u8 & 1, 1, "q = {q}, r = {r}");
            }
        }

        // k-fold chains: the curves are where Φ'(0) = 1 and Φ(1/2) = 1/2
        let spec = SweepSpec::new(
            Pattern::Repeated(2),
            Quantity::Entropy,
            axis("0.5..=2:0.5"),
            axis("3..=3:1"),
            None,
        );
        for b in stability_region_sweep(&spec).unwrap().boundary {
            let r = b.multiplier_one.unwrap();
            let m = DeformedMap::new(r.min(4.0), &[b.axis1; 2]).unwrap();
            if r <= 4.0 {
                assert!((m.multiplier_at_zero() - 1.0).abs() < 1e-12);
            }
            let r = b.critical_half.unwrap();
            if r <= 4.0 {
                let m = DeformedMap::new(r, &[b.axis1; 2]).unwrap();
                assert!((m.apply(0.5) - 0.5).abs() < 1e-12);
            }
        }

        // two-valued chains: solved in q2
        let spec = SweepSpec::new(
            Pattern::Q1Q2,
            Quantity::Entropy,
            axis("0.5..=1.5:0.5"),
            axis("0.5..=1:0.5"),
            Some(3.5),
        );
        let region = stability_region_sweep(&spec).unwrap();
        for b in &region.boundary {
            let q2 = b.critical_half.unwrap();
            let m = DeformedMap::new(3.5, &[q2, b.axis1]).unwrap();
            assert!((m.apply(0.5) - 0.5).abs() < 1e-10);
            let q2 = b.multiplier_one.unwrap();
            let m = DeformedMap::new(3.5, &[q2, b.axis1]).unwrap();
            assert!((m.multiplier_at_zero() - 1.0).abs() < 1e-10);
        }
        let mut buf = Vec::new();
        region.write_boundary_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 4);
    }

    #[test]
    fn stability_codes() {
        assert_eq!(stability_code(&DeformedMap::new(3.5, &[1.0]).unwrap()).unwrap(), 0);
        assert_eq!(stability_code(&DeformedMap::new(2.5, &[1.0]).unwrap()).unwrap(), 2);
        assert_eq!(stability_code(&DeformedMap::new(0.5, &[1.0]).unwrap()).unwrap(), 1);
        assert_eq!(stability_code(&single(12.5, 4.0)).unwrap() & 1, 1);
    }
}
