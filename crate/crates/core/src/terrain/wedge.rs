//! Constants behind the domination argument for rays that meet the path
//! after a terrain episode has exhausted its budget on a barrier.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::strategy::{StrategyParams, TurnIndex};

/// Geometry of the wedge between the minimal-slope ray `R_gamma` and the
/// vertical ray at a turn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WedgeConstants {
    /// Angle of the minimal return slope `(2 - sin a) / cos a`.
    pub gamma: f64,
    /// Slope of the line `l` through `p2` and `p3`.
    pub slope_l: f64,
    /// `atan(|slope_l|)`.
    pub delta: f64,
    /// Meeting point of `Y = cot(gamma) X` and `Y = tan(a) X + h_{i-1}`.
    pub p1: Point,
    /// On the turn's vertical ray, at the height of `p1`.
    pub p2: Point,
    /// Foot of the turn on `Y = cot(gamma) X`.
    pub p3: Point,
}

/// Slope `(2 - sin a) / cos a` of the steepest possible return after a
/// budget-exhausting barrier.
pub fn minimal_slope(params: &StrategyParams) -> f64 {
    (2.0 - params.alpha.sin()) / params.alpha.cos()
}

fn check_turn(i: TurnIndex) -> Result<u32> {
    match i.get() {
        i if i >= 2 => Ok(i),
        _ => Err(Error::InvalidArgument("wedge constants need a turn index of at least 2".into())),
    }
}

/// Wedge constants at turn `i`, in the turn's outward coordinates.
pub fn wedge_constants(params: &StrategyParams, i: TurnIndex) -> Result<WedgeConstants> {
    let i = check_turn(i)?;
    let (r, a) = (params.r, params.alpha);
    let gamma = minimal_slope(params).atan();
    let (sg, cg) = gamma.sin_cos();
    let depth = r.powi(i as i32 - 1);
    let g = params.geometric_sum(i - 1);
    let k = 2.0 * a.sin() / (gamma + a).cos();
    let p1 = Point::new(k * sg * g, k * cg * g);
    let p2 = Point::new(depth, p1.y);
    let m = 2.0 * a.tan() * (g + 0.5 * depth);
    let p3 = Point::new(sg * sg * depth + sg * cg * m, sg * cg * depth + cg * cg * m);
    let slope_l = (p3.y - p2.y) / (p3.x - p2.x);
    Ok(WedgeConstants { gamma, slope_l, delta: slope_l.abs().atan(), p1, p2, p3 })
}

/// Slope of `l` with all terms of order `r^{-i}` dropped.
pub fn slope_l_limit(params: &StrategyParams) -> f64 {
    let a = params.alpha;
    let gamma = minimal_slope(params).atan();
    let (sg, cg) = gamma.sin_cos();
    let q = 1.0 / (params.r - 1.0);
    let m = 2.0 * a.tan() * (q + 0.5);
    let k = 2.0 * a.sin() / (gamma + a).cos();
    (sg * cg + cg * cg * m - k * cg * q) / (sg * sg + sg * cg * m - 1.0)
}

/// Margin by which the pure strategy's boundary worst case dominates the
/// wedge rays at turn `i`; positive means dominated.
pub fn w2_margin(params: &StrategyParams, i: TurnIndex, delta: f64) -> Result<f64> {
    let i = check_turn(i)?;
    let r = params.r;
    let decay = 1.0 - (r - 1.0) / r.powi(i as i32 - 1);
    Ok(margin(params, delta, decay))
}

/// [`w2_margin`] as `i` grows without bound.
pub fn w2_margin_asymptotic(params: &StrategyParams, delta: f64) -> f64 {
    margin(params, delta, 1.0)
}

fn margin(params: &StrategyParams, delta: f64, decay: f64) -> f64 {
    let (r, a) = (params.r, params.alpha);
    let gamma = minimal_slope(params).atan();
    (1.0 - gamma.sin() * delta.sin()) * (2.0 * a.sin() / (gamma + a).cos()) * decay - (1.0 - delta.sin()) * (r - 1.0)
}

/// Distance from the start to `R_gamma`, the minimal-slope line through the
/// planned turn `p_{i-1}`.
pub fn dist_to_r_gamma(params: &StrategyParams, i: TurnIndex) -> Result<f64> {
    Ok(r_gamma_factor(params, i)? * params.r.powi(i.get() as i32 - 1))
}

/// Factor in front of `r^{i-1}` in [`dist_to_r_gamma`].
pub fn r_gamma_factor(params: &StrategyParams, i: TurnIndex) -> Result<f64> {
    let i = check_turn(i)?;
    let (r, a) = (params.r, params.alpha);
    let gamma = minimal_slope(params).atan();
    let tail = a.tan() * (r - r.powi(1 - i as i32)) / (r - 1.0);
    Ok(2.0 * gamma.cos() * ((1.0 - a.sin()) / a.cos() + tail))
}
