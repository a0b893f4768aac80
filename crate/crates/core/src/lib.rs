//! Competitive online search for rays in the upper half-plane.
//!
//! A searcher starts at the origin on the baseline `y = 0` and looks for an
//! unknown ray whose source lies on the baseline and which points toward the
//! origin. The crate builds generalized cow-path strategies (exponential
//! turning depths `r^i` with a constant climb angle `alpha`), evaluates their
//! competitive ratio in closed form and by direct geometric simulation,
//! optimizes the parameters, evaluates the lower-bound constructions, and
//! adapts the strategy to 1.5D terrains.
//!
//! Module map:
//!
//! - [`geometry`]: points, rays, polylines and the first-hit kernel.
//! - [`strategy`]: turning points, axis heights and explicit strategy paths.
//! - [`ratio`]: closed-form competitive ratios and the worst-case angle.
//! - [`optimizer`]: box narrowing, balancing and the 1D outer search.
//! - [`lowerbound`]: triangle and circle-avoiding lower bounds.
//! - [`simulator`]: geometric oracle for single rays and ray sweeps.
//! - [`terrain`]: terrain model, adapted strategy, geodesic optimum, wedge
//!   constants and the vertical-barrier core.
//! - [`report`]: CSV/JSON emission used by the command-line tool.
//! - [`acceptance`]: the regression checks behind `raysearch verify`.

pub mod acceptance;
pub mod error;
pub mod geometry;
pub mod lowerbound;
pub mod optimizer;
pub mod ratio;
pub mod report;
pub mod search;
pub mod simulator;
pub mod strategy;
pub mod terrain;

pub use error::{Error, Result};
pub use geometry::{Hit, HitKind, Point, RaySpec, SearchPath, Side};
pub use ratio::{WorstCase, WorstCaseKind};
pub use strategy::{StrategyParams, TurnIndex};

/// Near-optimal strategy parameters reported for the pure ray search.
pub const NEAR_OPTIMAL_R: f64 = 1.978624821;
/// Slope angle paired with [`NEAR_OPTIMAL_R`].
pub const NEAR_OPTIMAL_ALPHA: f64 = 0.166547577;
/// Interior worst-case angle for the near-optimal parameters.
pub const NEAR_OPTIMAL_BETA_MAX: f64 = 0.190681180073897;
/// Guaranteed upper bound on the competitive ratio of the near-optimal strategy.
pub const UPPER_BOUND: f64 = 9.12725;

/// The near-optimal parameter pair as a ready-made [`StrategyParams`].
pub fn near_optimal() -> StrategyParams {
    StrategyParams::new(NEAR_OPTIMAL_R, NEAR_OPTIMAL_ALPHA).expect("constant parameters are valid")
}
