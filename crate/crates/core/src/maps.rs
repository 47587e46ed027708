//! The logistic family `f_r(x) = r x (1 - x)`, the q-deformation
//! `phi_q(x) = (1 - q^x) / (1 - q)` and their compositions
//! `phi_{q_k} ∘ … ∘ phi_{q_1} ∘ f_r`.
//!
//! Chains are stored in application order: the first element is applied
//! immediately after `f_r`. A map written `Φ_{q_k,…,q_1,r}` therefore has the
//! chain `[q_1, …, q_k]`.
//!
//! `q^x` is always evaluated as `exp(x log q)`, and `phi_q` as
//! `expm1(x log q) / expm1(log q)`, which stays accurate as `q → 1`.

use crate::error::{Error, Result};

/// The turning point shared by every map in the family.
pub const TURNING_POINT: f64 = 0.5;

/// Below this distance from 1, `phi_q` is evaluated as the identity.
pub const IDENTITY_THRESHOLD: f64 = 1e-8;

/// Slack allowed on `x ∈ [0, 1]` before an argument is rejected.
pub const DOMAIN_TOLERANCE: f64 = 1e-12;

/// A continuous self-map of `[0, 1]` with a single turning point.
///
/// Implemented by [`DeformedMap`] and by [`TentMap`]; the symbolic and
/// lap-counting machinery only needs pointwise evaluation.
pub trait UnimodalMap {
    /// Evaluates the map at `x ∈ [0, 1]` without argument checks.
    fn apply(&self, x: f64) -> f64;

    fn turning_point(&self) -> f64 {
        TURNING_POINT
    }

    /// Half-width of the band around the turning point coded as `C`.
    fn critical_band(&self) -> f64 {
        crate::entropy::CRITICAL_EPSILON
    }
}

impl<T: UnimodalMap + ?Sized> UnimodalMap for &T {
    fn apply(&self, x: f64) -> f64 {
        (**self).apply(x)
    }

    fn turning_point(&self) -> f64 {
        (**self).turning_point()
    }

    fn critical_band(&self) -> f64 {
        (**self).critical_band()
    }
}

/// Value and first three derivatives of a map at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeBundle {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

/// A single deformation `phi_q`, with `log q` and `expm1(log q)` cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deformation {
    q: f64,
    log_q: f64,
    denom: f64,
    identity: bool,
}

impl Deformation {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0) || !q.is_finite() {
            return Err(Error::Domain(format!("deformation parameter q must be positive, got {q}")));
        }
        let log_q = q.ln();
        Ok(Self { q, log_q, denom: log_q.exp_m1(), identity: (q - 1.0).abs() < IDENTITY_THRESHOLD })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    /// `phi_q'(0) = log q / (q - 1)`, equal to 1 for the identity.
    pub fn slope_at_zero(&self) -> f64 {
        if self.identity {
            1.0
        } else {
            self.log_q / self.denom
        }
    }

    #[inline]
    pub fn apply(&self, x: f64) -> f64 {
        if self.identity {
            x
        } else {
            ((x * self.log_q).exp_m1() / self.denom).clamp(0.0, 1.0)
        }
    }

    /// Inverse of `phi_q` on `[0, 1]`.
    pub fn invert(&self, y: f64) -> f64 {
        if self.identity {
            y
        } else {
            ((y * self.denom).ln_1p() / self.log_q).clamp(0.0, 1.0)
        }
    }

    /// `(phi(y), phi'(y), phi''(y), phi'''(y))`.
    fn derivatives(&self, y: f64) -> (f64, f64, f64, f64) {
        if self.identity {
            return (y, 1.0, 0.0, 0.0);
        }
        let g1 = self.slope_at_zero() * (y * self.log_q).exp();
        let g2 = g1 * self.log_q;
        let g3 = g2 * self.log_q;
        (self.apply(y), g1, g2, g3)
    }

    /// `S(phi_q) = -(log q)^2 / 2`, constant in `x`.
    pub fn schwarzian(&self) -> f64 {
        if self.identity {
            0.0
        } else {
            -0.5 * self.log_q * self.log_q
        }
    }
}

/// The logistic map composed with an ordered chain of q-deformations.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformedMap {
    r: f64,
    chain: Vec<Deformation>,
}

impl DeformedMap {
    /// Builds `phi_{q_k} ∘ … ∘ phi_{q_1} ∘ f_r` from `chain = [q_1, …, q_k]`.
    pub fn new(r: f64, chain: &[f64]) -> Result<Self> {
        if !(r > 0.0 && r <= 4.0) {
            return Err(Error::Domain(format!("logistic parameter r must lie in (0, 4], got {r}")));
        }
        let chain = chain.iter().map(|&q| Deformation::new(q)).collect::<Result<Vec<_>>>()?;
        Ok(Self { r, chain })
    }

    /// The plain logistic map `f_r`.
    pub fn logistic(r: f64) -> Result<Self> {
        Self::new(r, &[])
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn deformations(&self) -> &[Deformation] {
        &self.chain
    }

    /// The deformation parameters in application order.
    pub fn chain(&self) -> Vec<f64> {
        self.chain.iter().map(Deformation::q).collect()
    }

    /// Checked evaluation.
    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.apply(check_unit(x)?))
    }

    /// Value and derivatives up to third order, by exact composition of jets.
    pub fn jet(&self, x: f64) -> Result<DerivativeBundle> {
        let x = check_unit(x)?;
        let r = self.r;
        let mut jet =
            DerivativeBundle { value: r * x * (1.0 - x), d1: r * (1.0 - 2.0 * x), d2: -2.0 * r, d3: 0.0 };
        for phi in &self.chain {
            let (v, g1, g2, g3) = phi.derivatives(jet.value);
            let (f1, f2, f3) = (jet.d1, jet.d2, jet.d3);
            jet = DerivativeBundle {
                value: v,
                d1: g1 * f1,
                d2: g2 * f1 * f1 + g1 * f2,
                d3: g3 * f1 * f1 * f1 + 3.0 * g2 * f1 * f2 + g1 * f3,
            };
        }
        debug_assert!(x != TURNING_POINT || jet.d1 == 0.0);
        Ok(jet)
    }

    /// First derivative only; cheaper than [`DeformedMap::jet`].
    pub fn derivative(&self, x: f64) -> f64 {
        let mut y = self.r * x * (1.0 - x);
        let mut d = self.r * (1.0 - 2.0 * x);
        for phi in &self.chain {
            if !phi.identity {
                d *= phi.slope_at_zero() * (y * phi.log_q).exp();
                y = phi.apply(y);
            }
        }
        d
    }

    /// Schwarzian derivative, built up link by link with
    /// `S(g ∘ f)(x) = S(g)(f(x)) f'(x)^2 + S(f)(x)`.
    pub fn schwarzian(&self, x: f64) -> Result<f64> {
        let x = check_unit(x)?;
        let u = 1.0 - 2.0 * x;
        if u == 0.0 {
            return Err(Error::Singularity(
                "the Schwarzian derivative is undefined at the turning point 1/2".into(),
            ));
        }
        let mut s = -6.0 / (u * u);
        let mut y = self.r * x * (1.0 - x);
        let mut d = self.r * u;
        for phi in &self.chain {
            s += phi.schwarzian() * d * d;
            let (v, g1, _, _) = phi.derivatives(y);
            d *= g1;
            y = v;
        }
        Ok(s)
    }

    /// `Φ'(0) = r ∏ log(q_i) / (q_i - 1)`.
    pub fn multiplier_at_zero(&self) -> f64 {
        self.chain.iter().fold(self.r, |acc, phi| acc * phi.slope_at_zero())
    }

    /// Applies the chain of deformations (without `f_r`).
    pub fn apply_chain(&self, y: f64) -> f64 {
        self.chain.iter().fold(y, |acc, phi| phi.apply(acc))
    }

    /// Inverse of the deformation chain.
    pub fn invert_chain(&self, y: f64) -> f64 {
        self.chain.iter().rev().fold(y, |acc, phi| phi.invert(acc))
    }
}

impl UnimodalMap for DeformedMap {
    #[inline]
    fn apply(&self, x: f64) -> f64 {
        let y = self.r * x * (1.0 - x);
        self.apply_chain(y)
    }
}

/// Tent map `T_s(x) = s x` on `[0, 1/2]`, `s (1 - x)` on `(1/2, 1]`, with
/// entropy `log s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TentMap {
    slope: f64,
}

impl TentMap {
    pub fn new(slope: f64) -> Result<Self> {
        if !(slope > 1.0 && slope <= 2.0) {
            return Err(Error::Domain(format!("tent slope must lie in (1, 2], got {slope}")));
        }
        Ok(Self { slope })
    }

    pub fn slope(&self) -> f64 {
        self.slope
    }
}

impl UnimodalMap for TentMap {
    #[inline]
    fn apply(&self, x: f64) -> f64 {
        if x <= 0.5 {
            self.slope * x
        } else {
            self.slope * (1.0 - x)
        }
    }
}

fn check_unit(x: f64) -> Result<f64> {
    if (-DOMAIN_TOLERANCE..=1.0 + DOMAIN_TOLERANCE).contains(&x) {
        Ok(x.clamp(0.0, 1.0))
    } else {
        Err(Error::Domain(format!("point must lie in [0, 1], got {x}")))
    }
}

/// `phi_q(x) = (1 - q^x) / (1 - q)`.
pub fn eval_phi(q: f64, x: f64) -> Result<f64> {
    let x = check_unit(x)?;
    Ok(Deformation::new(q)?.apply(x))
}

/// `f_r(x) = r x (1 - x)`.
pub fn eval_logistic(r: f64, x: f64) -> Result<f64> {
    DeformedMap::logistic(r)?.eval(x)
}

/// The unique stationary point of `phi_{q1} - phi_{q2}`.
pub fn critical_point_of_difference(q1: f64, q2: f64) -> Result<f64> {
    let (d1, d2) = (Deformation::new(q1)?, Deformation::new(q2)?);
    if d1.is_identity() || d2.is_identity() || q1 == q2 {
        return Err(Error::Domain(format!("need distinct q1, q2 different from 1, got ({q1}, {q2})")));
    }
    let ratio = ((1.0 - q2) * d1.log_q) / ((1.0 - q1) * d2.log_q);
    if !(ratio > 0.0) {
        return Err(Error::Domain(format!("non-positive logarithm argument {ratio}")));
    }
    Ok(-ratio.ln() / (d1.log_q - d2.log_q))
}
