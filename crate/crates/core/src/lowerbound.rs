//! Lower bounds for any ray-search strategy.
//!
//! Both constructions unfold a strategy's path up to a local worst case at
//! `(d, d_y)` with `d = 1`, starting from `(-p, 0)` with `p = 8`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;

/// Unfolded X-distance coefficient.
pub const DEFAULT_P_COEFF: f64 = 8.0;
/// Grid size of the monotonicity check in [`lower_bound`].
pub const MONOTONICITY_GRID: usize = 10_000;

/// Straight-line bound: the worse of the vertical- and horizontal-ray ratios.
pub fn triangle_bound(d_y: f64, p_coeff: f64) -> Result<f64> {
    if !(d_y > 0.0 && d_y.is_finite()) {
        return Err(Error::InvalidArgument(format!("d_y={d_y} must be positive")));
    }
    let x = p_coeff + 1.0;
    let hyp = (x * x + d_y * d_y).sqrt();
    Ok(hyp.max(hyp / d_y))
}

/// Circle-avoiding bound `R(d_y)`.
pub fn circle_bound(d_y: f64) -> Result<f64> {
    if !(d_y > 0.0 && d_y <= 1.0) {
        return Err(Error::InvalidArgument(format!("d_y={d_y} must lie in (0, 1]")));
    }
    let t = (64.0 - d_y * d_y).sqrt();
    Ok((64.0 / (d_y * d_y) - 1.0).sqrt() + 1.0 / d_y + (d_y / t).asin())
}

/// `R(1)`, after checking that `R` decreases on a fine grid of `(0, 1]`.
pub fn lower_bound() -> Result<f64> {
    let mut prev = f64::INFINITY;
    for k in 1..=MONOTONICITY_GRID {
        let d_y = k as f64 / MONOTONICITY_GRID as f64;
        let v = circle_bound(d_y)?;
        if !(v < prev) {
            return Err(Error::MonotonicityViolation { d_y });
        }
        prev = v;
    }
    circle_bound(1.0)
}

/// Samples of `R` on `(0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundCurve {
    pub samples: Vec<(f64, f64)>,
}

impl LowerBoundCurve {
    /// `n` equally spaced samples `d_y = k/n`, `k = 1..=n`.
    pub fn sample(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("need at least one sample".into()));
        }
        let samples = (1..=n)
            .map(|k| {
                let d_y = k as f64 / n as f64;
                circle_bound(d_y).map(|v| (d_y, v))
            })
            .collect::<Result<_>>()?;
        Ok(LowerBoundCurve { samples })
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.samples.windows(2).all(|w| w[1].1 < w[0].1)
    }
}

/// Arc angle used by [`circle_construction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArcAngle {
    /// `arcsin(d_y / sqrt(64 - d_y^2))`, the angle inside `R(d_y)`.
    Stated,
    /// `arcsin(d_y / 8)`, from the tangent point to the top of the circle.
    Exact,
}

/// Tangent, arc and horizontal pieces of the circle-avoiding path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleConstruction {
    pub d_y: f64,
    pub start: Point,
    pub tangent_point: Point,
    pub arc_end: Point,
    pub end: Point,
    pub tangent_len: f64,
    pub arc_angle: f64,
    pub arc_len: f64,
    pub horizontal_len: f64,
}

impl CircleConstruction {
    pub fn total(&self) -> f64 {
        self.tangent_len + self.arc_len + self.horizontal_len
    }

    /// Path length over the horizontal-ray distance `d_y`.
    pub fn ratio(&self) -> f64 {
        self.total() / self.d_y
    }
}

/// Builds the path from `(-8, 0)` around the circle of radius `d_y` to `(1, d_y)`.
pub fn circle_construction(d_y: f64, arc: ArcAngle) -> Result<CircleConstruction> {
    if !(d_y > 0.0 && d_y <= 1.0) {
        return Err(Error::InvalidArgument(format!("d_y={d_y} must lie in (0, 1]")));
    }
    let start = Point::new(-DEFAULT_P_COEFF, 0.0);
    let c = d_y / DEFAULT_P_COEFF;
    let tangent_point = Point::new(-d_y * c, d_y * (1.0 - c * c).sqrt());
    let arc_end = Point::new(0.0, d_y);
    let end = Point::new(1.0, d_y);
    let arc_angle = match arc {
        ArcAngle::Stated => (d_y / (64.0 - d_y * d_y).sqrt()).asin(),
        ArcAngle::Exact => c.asin(),
    };
    Ok(CircleConstruction {
        d_y,
        start,
        tangent_point,
        arc_end,
        end,
        tangent_len: start.dist(tangent_point),
        arc_angle,
        arc_len: d_y * arc_angle,
        horizontal_len: arc_end.dist(end),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_values() {
        assert!((triangle_bound(1.0, 8.0).unwrap() - 82f64.sqrt()).abs() < 1e-12);
        assert!((triangle_bound(0.5, 8.0).unwrap() - 81.25f64.sqrt() / 0.5).abs() < 1e-12);
        assert!((triangle_bound(2.0, 8.0).unwrap() - 85f64.sqrt()).abs() < 1e-12);
        assert!(triangle_bound(0.0, 8.0).is_err());
    }

    #[test]
    fn triangle_minimum_at_equal_distances() {
        let at_one = triangle_bound(1.0, 8.0).unwrap();
        for d in [0.5, 0.9, 0.999, 1.001, 1.5] {
            assert!(triangle_bound(d, 8.0).unwrap() > at_one);
        }
    }

    #[test]
    fn circle_value_at_one() {
        assert!((circle_bound(1.0).unwrap() - 9.063577796336).abs() < 1e-9);
        assert!(circle_bound(0.5).unwrap() > circle_bound(1.0).unwrap());
        assert!(circle_bound(1e-9).unwrap() > 1e9);
        assert!(circle_bound(0.0).is_err() && circle_bound(1.1).is_err());
    }

    #[test]
    fn improvement_over_triangle() {
        let gain = lower_bound().unwrap() - 82f64.sqrt();
        assert!(gain > 0.008 && gain < 0.0085);
    }

    #[test]
    fn curve_decreases() {
        let c = LowerBoundCurve::sample(500).unwrap();
        assert!(c.is_strictly_decreasing());
        assert_eq!(c.samples.last().unwrap().0, 1.0);
    }

    #[test]
    fn construction_reproduces_formula() {
        for k in 1..=50 {
            let d_y = k as f64 / 50.0;
            let c = circle_construction(d_y, ArcAngle::Stated).unwrap();
            assert!((c.tangent_point.norm() - d_y).abs() < 1e-12);
            assert!((c.total() - circle_bound(d_y).unwrap() * d_y).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_arc_is_slightly_shorter() {
        let exact = circle_construction(1.0, ArcAngle::Exact).unwrap();
        let stated = circle_construction(1.0, ArcAngle::Stated).unwrap();
        assert!(exact.arc_angle < stated.arc_angle);
        assert!(exact.ratio() > 82f64.sqrt());
        // the arc meets the tangent where the tangent touches the circle
        let t = exact.tangent_point;
        let swept = t.x.atan2(t.y).abs();
        assert!((swept - exact.arc_angle).abs() < 1e-12);
    }
}
