//! Parameter search for the best generalized cow-path strategy.
//!
//! [`narrow_box`] restricts `(r, alpha)` using only boundary cases,
//! [`balance_alpha`] equalizes the interior and `beta = pi/2` maxima for a
//! fixed `r`, and [`optimize`] minimizes the balanced ratio over `r`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratio::{local_maximum, ratio_boundary_alpha, ratio_boundary_pi_half, worst_case_beta};
use crate::search::golden_min;
use crate::strategy::StrategyParams;

/// Default target ratio used to narrow the search box.
pub const DEFAULT_TARGET: f64 = 9.1273;
/// Bisection bracket for the balancing angle.
pub const BALANCE_BRACKET: (f64, f64) = (0.10, 0.18);
/// Balancing tolerance in ratio units.
pub const BALANCE_TOL: f64 = 1e-10;
/// Outer golden-section tolerance in `r`.
pub const OUTER_TOL: f64 = 1e-9;

/// Open parameter box `(r_lo, r_hi) x (alpha_lo, alpha_hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamBox {
    pub r_lo: f64,
    pub r_hi: f64,
    pub alpha_lo: f64,
    pub alpha_hi: f64,
}

impl ParamBox {
    pub fn contains(&self, r: f64, alpha: f64) -> bool {
        r > self.r_lo && r < self.r_hi && alpha > self.alpha_lo && alpha < self.alpha_hi
    }

    pub fn is_empty(&self) -> bool {
        !(self.r_lo < self.r_hi && self.alpha_lo < self.alpha_hi)
    }
}

/// One inequality applied during narrowing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NarrowingStep {
    pub rule: String,
    pub bound: f64,
}

/// Result of the alternating narrowing chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Narrowing {
    pub target: f64,
    /// Box after the first full pass of the chain.
    pub first_pass: ParamBox,
    /// Box once the alternation stops moving.
    pub bounds: ParamBox,
    /// Unfolding bound `1 / sin(alpha) < target`.
    pub unfolding_alpha_lo: f64,
    pub steps: Vec<NarrowingStep>,
}

/// Smaller root in `r > 1` of `C(r, alpha, pi/2) = target`.
fn boundary_r_lo(alpha: f64, target: f64) -> Option<f64> {
    // (2/cos a)(r^2/(r-1) + 1/2) = T  <=>  r^2 - k r + k - 1/2 ... with k = T cos(a)/2
    let k = 0.5 * target * alpha.cos();
    // r^2 + (1/2 - k)(r - 1) = 0  with m = k - 1/2:  r^2 - m r + m = 0
    let m = k - 0.5;
    let disc = m * m - 4.0 * m;
    if disc < 0.0 {
        return None;
    }
    let lo = 0.5 * (m - disc.sqrt());
    (lo > 1.0).then_some(lo)
}

/// Replays the boundary-case narrowing for a target ratio.
pub fn narrow_box(target: f64) -> Result<Narrowing> {
    if !(target.is_finite() && target > 1.0) {
        return Err(Error::InvalidArgument(format!("target {target} must exceed 1")));
    }
    let infeasible = |reason: &str| Error::InfeasibleTarget { target, reason: reason.to_string() };
    let mut steps = Vec::new();

    let ratio = 9.0 / target;
    if ratio >= 1.0 {
        return Err(infeasible("9/cos(alpha) < target has no solution"));
    }
    let alpha_hi = ratio.acos();
    steps.push(NarrowingStep { rule: "alpha_hi: 9/cos(alpha) < target".into(), bound: alpha_hi });

    let unfolding = (1.0 / target).asin();
    steps.push(NarrowingStep { rule: "alpha_lo: 1/sin(alpha) < target".into(), bound: unfolding });
    if unfolding >= alpha_hi {
        return Err(infeasible("unfolding bound exceeds the upper alpha bound"));
    }

    let s = (2.0 * alpha_hi).sin();
    let r_hi = target * s - 1.0;
    steps.push(NarrowingStep { rule: "r_hi: (r+1)/sin(2 alpha_hi) < target".into(), bound: r_hi });
    if r_hi <= 1.0 {
        return Err(infeasible("beta = alpha boundary forces r <= 1"));
    }

    let mut alpha_lo = unfolding;
    let mut r_lo = boundary_r_lo(alpha_lo, target).ok_or_else(|| infeasible("beta = pi/2 boundary unattainable"))?;
    steps.push(NarrowingStep { rule: "r_lo: C(r, alpha_lo, pi/2) < target".into(), bound: r_lo });

    let mut first_pass = None;
    for pass in 0..200 {
        let sin_lo = (r_lo + 1.0) / target;
        if sin_lo >= 1.0 {
            return Err(infeasible("beta = alpha boundary unattainable"));
        }
        let next_alpha = 0.5 * sin_lo.asin();
        if next_alpha <= alpha_lo {
            break;
        }
        alpha_lo = next_alpha;
        steps.push(NarrowingStep { rule: "alpha_lo: (r_lo+1)/sin(2 alpha) < target".into(), bound: alpha_lo });
        if alpha_lo >= alpha_hi {
            return Err(infeasible("alpha interval empty"));
        }
        let next_r = boundary_r_lo(alpha_lo, target).ok_or_else(|| infeasible("beta = pi/2 boundary unattainable"))?;
        steps.push(NarrowingStep { rule: "r_lo: C(r, alpha_lo, pi/2) < target".into(), bound: next_r });
        if next_r >= r_hi {
            return Err(infeasible("r interval empty"));
        }
        if pass == 0 {
            first_pass = Some(ParamBox { r_lo: next_r, r_hi, alpha_lo, alpha_hi });
        }
        let moved = (next_r - r_lo).abs();
        r_lo = next_r;
        if moved <= 1e-15 * r_lo {
            break;
        }
    }
    let bounds = ParamBox { r_lo, r_hi, alpha_lo, alpha_hi };
    Ok(Narrowing { target, first_pass: first_pass.unwrap_or(bounds), bounds, unfolding_alpha_lo: unfolding, steps })
}

/// Interior and `pi/2` maxima at a balanced angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Balanced {
    pub r: f64,
    pub alpha: f64,
    pub beta_interior: f64,
    pub interior: f64,
    pub boundary: f64,
}

impl Balanced {
    pub fn ratio(&self) -> f64 {
        self.interior.max(self.boundary)
    }
}

/// Interior maximum minus the `beta = pi/2` maximum.
fn imbalance(r: f64, alpha: f64) -> Result<(f64, f64, f64)> {
    let p = StrategyParams::new(r, alpha)?;
    let boundary = ratio_boundary_pi_half(&p);
    let (beta, interior) = match local_maximum(&p)? {
        Some(m) => m,
        None => (alpha, ratio_boundary_alpha(&p)?),
    };
    Ok((interior - boundary, beta, interior))
}

/// Angle at which the interior and boundary maxima coincide for base `r`.
pub fn balance_alpha(r: f64, tol: f64) -> Result<f64> {
    Ok(balanced_at(r, tol)?.alpha)
}

/// Balanced strategy for base `r`, found by bisection over [`BALANCE_BRACKET`].
pub fn balanced_at(r: f64, tol: f64) -> Result<Balanced> {
    let (mut lo, mut hi) = BALANCE_BRACKET;
    let (f_lo, ..) = imbalance(r, lo)?;
    let (f_hi, ..) = imbalance(r, hi)?;
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { what: "interior minus boundary maximum", lo, hi });
    }
    let rising = f_hi > f_lo;
    let mut best = None;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let (f, beta, interior) = imbalance(r, mid)?;
        best = Some((mid, f, beta, interior));
        if f.abs() < tol || mid <= lo || mid >= hi {
            break;
        }
        if (f > 0.0) == rising {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (alpha, _, beta_interior, interior) = best.expect("bisection ran at least once");
    let boundary = ratio_boundary_pi_half(&StrategyParams::new(r, alpha)?);
    Ok(Balanced { r, alpha, beta_interior, interior, boundary })
}

/// One outer-search evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub r: f64,
    pub alpha: f64,
    pub c: f64,
}

/// Best balanced strategy and the outer-search trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub r_star: f64,
    pub alpha_star: f64,
    pub c_star: f64,
    pub beta_interior: f64,
    pub trace: Vec<TracePoint>,
}

impl OptimizationResult {
    pub fn params(&self) -> Result<StrategyParams> {
        StrategyParams::new(self.r_star, self.alpha_star)
    }
}

/// Minimizes the balanced worst case over `r` in the narrowed box for `target`.
pub fn optimize_with_target(tol: f64, target: f64) -> Result<OptimizationResult> {
    let bounds = narrow_box(target)?.bounds;
    optimize_on(bounds.r_lo, bounds.r_hi, tol)
}

/// Minimizes the balanced worst case over `r` in the default box.
pub fn optimize(tol: f64) -> Result<OptimizationResult> {
    optimize_with_target(tol, DEFAULT_TARGET)
}

/// Minimizes the balanced worst case over `r ∈ [r_lo, r_hi]`.
pub fn optimize_on(r_lo: f64, r_hi: f64, tol: f64) -> Result<OptimizationResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let mut trace = Vec::new();
    let mut failure = None;
    let mut g = |r: f64| match balanced_at(r, BALANCE_TOL) {
        Ok(b) => {
            trace.push(TracePoint { r, alpha: b.alpha, c: b.ratio() });
            b.ratio()
        }
        Err(e) => {
            failure.get_or_insert(e);
            f64::INFINITY
        }
    };
    let e = golden_min(&mut g, r_lo, r_hi, tol);
    if let Some(err) = failure {
        return Err(err);
    }
    let b = balanced_at(e.x, BALANCE_TOL)?;
    let wc = worst_case_beta(&StrategyParams::new(b.r, b.alpha)?)?;
    Ok(OptimizationResult { r_star: b.r, alpha_star: b.alpha, c_star: wc.c_star, beta_interior: b.beta_interior, trace })
}
