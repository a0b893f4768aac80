//! Generalized cow-path strategies.
//!
//! Excursion `j` (0-based) leaves the y-axis at height `h_j`, runs outward to
//! horizontal depth `r^j` while climbing at angle `alpha`, turns, and climbs
//! back to the y-axis at `h_{j+1}`. The first excursion goes to the right.
//! Turning points use the 1-based index `i` with `p_{i-1}` the `i`-th turn.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, SearchPath, Side};

/// Default number of turns for explicit paths.
pub const DEFAULT_TURNS: u32 = 30;

/// Exponential base `r` and climb angle `alpha` of a strategy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyParams {
    pub r: f64,
    pub alpha: f64,
}

impl StrategyParams {
    pub fn new(r: f64, alpha: f64) -> Result<Self> {
        if !(r.is_finite() && r > 1.0) {
            return Err(Error::InvalidParams { r, alpha, reason: "r must exceed 1" });
        }
        if !(alpha.is_finite() && (0.0..std::f64::consts::FRAC_PI_2).contains(&alpha)) {
            return Err(Error::InvalidParams { r, alpha, reason: "alpha must lie in [0, pi/2)" });
        }
        Ok(StrategyParams { r, alpha })
    }

    /// `r / (r - 1)`, the recurring geometric-series factor.
    pub fn q(&self) -> f64 {
        self.r / (self.r - 1.0)
    }

    /// `sum_{j<i} r^j`
    pub fn geometric_sum(&self, i: u32) -> f64 {
        (self.r.powi(i as i32) - 1.0) / (self.r - 1.0)
    }
}

/// 1-based turn index; turn `i` is the vertex `p_{i-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TurnIndex(u32);

impl TurnIndex {
    pub fn new(i: u32) -> Result<Self> {
        if i == 0 {
            return Err(Error::InvalidArgument("turn index must be at least 1".into()));
        }
        Ok(TurnIndex(i))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Side of the turn for a strategy that starts to the right.
    pub fn side(self) -> Side {
        if self.0 % 2 == 1 {
            Side::Right
        } else {
            Side::Left
        }
    }
}

impl TryFrom<u32> for TurnIndex {
    type Error = Error;
    fn try_from(i: u32) -> Result<Self> {
        TurnIndex::new(i)
    }
}

/// Height `h_i` at which the strategy crosses the y-axis for the `i`-th time.
pub fn axis_height(params: &StrategyParams, i: u32) -> f64 {
    2.0 * params.alpha.tan() * params.geometric_sum(i)
}

/// Turning point `p_{i-1}`.
pub fn turning_point(params: &StrategyParams, i: TurnIndex) -> Point {
    let i = i.get();
    let depth = params.r.powi(i as i32 - 1);
    let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
    let y = 2.0 * params.alpha.tan() * (params.geometric_sum(i) - 0.5 * depth);
    Point::new(sign * depth, y)
}

/// Explicit polyline `s, p_0, (0, h_1), p_1, (0, h_2), ..., p_{n-1}`.
pub fn build_path(params: &StrategyParams, n_turns: u32) -> Result<SearchPath> {
    if n_turns < 1 {
        return Err(Error::InvalidArgument("n_turns must be at least 1".into()));
    }
    let mut path = SearchPath::start_at(Point::ORIGIN);
    for i in 1..=n_turns {
        if i > 1 {
            path.push(Point::new(0.0, axis_height(params, i - 1)))?;
        }
        path.push(turning_point(params, TurnIndex(i)))?;
    }
    Ok(path)
}

/// Arc length from the start to turning point `p_k` (0-based vertex index).
pub fn arc_length_to_turn(params: &StrategyParams, k: u32) -> f64 {
    let cos_a = params.alpha.cos();
    (2.0 * params.geometric_sum(k) + params.r.powi(k as i32)) / cos_a
}

/// Closed-form path length until the tangent ray at `p_{i-1}` with angle
/// `beta` is detected, after the strategy has turned at `p_i`.
pub fn analytic_detection_length(params: &StrategyParams, i: TurnIndex, beta: f64) -> Result<f64> {
    check_beta(params, beta)?;
    let i = i.get();
    let (r, a) = (params.r, params.alpha);
    let ri = r.powi(i as i32);
    let back = (beta - a).sin() / (beta + a).sin() * (ri + ri / r) / a.cos();
    Ok(arc_length_to_turn(params, i) + back)
}

pub(crate) fn check_beta(params: &StrategyParams, beta: f64) -> Result<()> {
    let hi = std::f64::consts::FRAC_PI_2;
    if !(beta >= params.alpha && beta <= hi) {
        return Err(Error::BetaOutOfRange { beta, lo: params.alpha, hi });
    }
    Ok(())
}
