//! Dynamics of q-deformed logistic maps `phi_{q_k} ∘ … ∘ phi_{q_1} ∘ f_r`
//! with `phi_q(x) = (1 - q^x)/(1 - q)` and `f_r(x) = r x (1 - x)`.
//!
//! * [`maps`]: evaluation, exact derivatives and Schwarzian derivatives.
//! * [`fixed_points`]: fixed points, local/global stability, region curves.
//! * [`entropy`]: topological entropy by kneading bisection, lap counting.
//! * [`dynamics`]: orbits, Lyapunov exponents, bifurcation diagrams.
//! * [`sweep`]: deterministic parameter-grid evaluation and CSV output.

pub mod dynamics;
pub mod entropy;
pub mod error;
pub mod family;
pub mod fixed_points;
pub mod grid;
pub mod maps;
pub mod output;
mod roots;
pub mod sweep;

pub use dynamics::{bifurcation_scan, lyapunov_turning, orbit, BifurcationDataset, BifurcationSpec};
pub use entropy::{
    entropy_bisection, entropy_lap_estimate, kneading, kneading_compare, lap_count, tent_kneading,
    EntropyResult, EntropyStatus, KneadingSequence, Symbol,
};
pub use error::{Error, Result};
pub use family::{Assignment, MapFamily, Param, Pattern, Slot};
pub use fixed_points::{
    attractor_scenario, classify_zero, curve_r1, curve_r2, find_nonzero_fixed_points, gas_check,
    multiplier_at_zero, solve_special_constants, stability_region_sweep, AttractorScenario, FixedPointRecord,
    ScenarioKind, Stability,
};
pub use grid::Axis;
pub use maps::{
    critical_point_of_difference, eval_logistic, eval_phi, DeformedMap, DerivativeBundle, TentMap,
    UnimodalMap,
};
pub use sweep::{run_sweep, threshold_mask, Quantity, SweepGrid, SweepSpec, SENTINEL};
