//! Closed-form competitive ratios of generalized cow-path strategies.
//!
//! The tangent ray at turn `p_{i-1}` with angle `beta` is missed there and
//! detected after the next turn. Its ratio `C(r, alpha, beta)` converges
//! quickly in `i`; the asymptotic form is what the optimizer works with.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::{golden_max, linspace};
use crate::strategy::{analytic_detection_length, check_beta, StrategyParams, TurnIndex};

/// Golden-section tolerance in `beta` for the interior maximum.
pub const BETA_TOL: f64 = 1e-12;
/// Grid resolution of the fallback worst-case scan.
pub const FALLBACK_GRID: usize = 2000;

/// Which part of `[alpha, pi/2]` produced the worst case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WorstCaseKind {
    InteriorMax,
    BoundaryPiHalf,
    BoundaryAlpha,
}

/// Supremum of `C(r, alpha, .)` over `[alpha, pi/2]` together with its parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorstCase {
    pub beta_star: f64,
    pub c_star: f64,
    pub kind: WorstCaseKind,
    /// Interior local maximum `(beta, C)` if one exists.
    pub interior: Option<(f64, f64)>,
    pub boundary_pi_half: f64,
    pub boundary_alpha: f64,
}

/// `1 + 2 * sum_{i=1}^{k+1} x_i / x_k` for a one-dimensional search sequence.
///
/// `k` is 1-based. Entries alternate sides, so depths must grow per side.
pub fn classic_cowpath_ratio(x: &[f64], k: usize) -> Result<f64> {
    if k == 0 || k + 1 > x.len() {
        return Err(Error::InvalidArgument(format!("k={k} needs k+1 <= {} entries", x.len())));
    }
    if x.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::InvalidArgument("search depths must be positive".into()));
    }
    if x.windows(3).any(|w| w[2] <= w[0]) {
        return Err(Error::InvalidArgument("search depths must increase per side".into()));
    }
    let sum: f64 = x[..=k].iter().sum();
    Ok(1.0 + 2.0 * sum / x[k - 1])
}

/// Offline distance to the tangent ray at `p_{i-1}` (right-side form).
fn tangent_offset(params: &StrategyParams, i: u32, beta: f64) -> f64 {
    let depth = params.r.powi(i as i32 - 1);
    let y = 2.0 * params.alpha.tan() * (params.geometric_sum(i) - 0.5 * depth);
    beta.sin() * depth + cos_beta(beta) * y
}

fn cos_beta(beta: f64) -> f64 {
    if beta == FRAC_PI_2 {
        0.0
    } else {
        beta.cos()
    }
}

/// Pre-asymptotic ratio for the tangent ray at `p_{i-1}`.
pub fn ratio_finite(params: &StrategyParams, i: TurnIndex, beta: f64) -> Result<f64> {
    check_beta(params, beta)?;
    let len = analytic_detection_length(params, i, beta)?;
    let d = tangent_offset(params, i.get(), beta);
    if !(d > 0.0) {
        return Err(Error::Degenerate("tangent ray passes through the start"));
    }
    Ok(len / d)
}

fn check_asymptotic(params: &StrategyParams, beta: f64) -> Result<()> {
    check_beta(params, beta)?;
    if beta == 0.0 {
        return Err(Error::Degenerate("alpha = beta = 0"));
    }
    Ok(())
}

/// Asymptotic ratio `C(r, alpha, beta)`.
pub fn ratio_asymptotic(params: &StrategyParams, beta: f64) -> Result<f64> {
    check_asymptotic(params, beta)?;
    Ok(asymptotic_compact(params, beta))
}

/// `(r+1)(q + s) / (2 cos(beta) sin(alpha) q + sin(beta - alpha))`
fn asymptotic_compact(params: &StrategyParams, beta: f64) -> f64 {
    let (r, a, q) = (params.r, params.alpha, params.q());
    let s = (beta - a).sin() / (beta + a).sin();
    (r + 1.0) * (q + s) / (2.0 * cos_beta(beta) * a.sin() * q + (beta - a).sin())
}

/// Direct limit of the finite ratio after dividing by `r^{i-1} / cos(alpha)`.
fn asymptotic_expanded(params: &StrategyParams, beta: f64) -> f64 {
    let (r, a, q) = (params.r, params.alpha, params.q());
    let s = (beta - a).sin() / (beta + a).sin();
    let num = 2.0 * (q + 0.5 * r) + s * (r + 1.0);
    let den = 2.0 * cos_beta(beta) * a.sin() * (q - 0.5) + a.cos() * beta.sin();
    num / den
}

/// Form with `cos(alpha)` pulled out of the denominator.
fn asymptotic_tangent(params: &StrategyParams, beta: f64) -> f64 {
    let (r, a, q) = (params.r, params.alpha, params.q());
    let s = (beta - a).sin() / (beta + a).sin();
    let den = beta.sin() + cos_beta(beta) * a.tan() * (r + 1.0) / (r - 1.0);
    (r + 1.0) / a.cos() * (q + s) / den
}

/// The three algebraically equivalent asymptotic forms, for cross-checking.
pub fn ratio_asymptotic_forms(params: &StrategyParams, beta: f64) -> Result<[f64; 3]> {
    check_asymptotic(params, beta)?;
    Ok([asymptotic_expanded(params, beta), asymptotic_compact(params, beta), asymptotic_tangent(params, beta)])
}

/// `C(r, alpha, pi/2) = (2 / cos alpha)(r^2 / (r - 1) + 1/2)`
pub fn ratio_boundary_pi_half(params: &StrategyParams) -> f64 {
    let r = params.r;
    2.0 / params.alpha.cos() * (r * r / (r - 1.0) + 0.5)
}

/// `C(r, alpha, alpha) = (r + 1) / sin(2 alpha)`
pub fn ratio_boundary_alpha(params: &StrategyParams) -> Result<f64> {
    if params.alpha == 0.0 {
        return Err(Error::Degenerate("alpha = 0 has no finite beta = alpha boundary"));
    }
    Ok((params.r + 1.0) / (2.0 * params.alpha).sin())
}

/// Derivative of `C(r, alpha, beta)` with respect to `beta`.
pub fn ratio_derivative(params: &StrategyParams, beta: f64) -> Result<f64> {
    check_asymptotic(params, beta)?;
    let (r, a, q) = (params.r, params.alpha, params.q());
    let sp = (beta + a).sin();
    let s = (beta - a).sin() / sp;
    let den = 2.0 * cos_beta(beta) * a.sin() * q + (beta - a).sin();
    let num = den * (2.0 * a).sin() / (sp * sp) + (2.0 * beta.sin() * a.sin() * q - (beta - a).cos()) * (q + s);
    Ok((r + 1.0) * num / (den * den))
}

/// Interior maximum on `[alpha, 2 alpha]`, bracketed by the derivative signs.
///
/// Fails with [`Error::BracketFailure`] unless `C' > 0` at `alpha` and
/// `C' < 0` at `2 alpha`.
pub fn interior_maximum(params: &StrategyParams) -> Result<(f64, f64)> {
    let a = params.alpha;
    if a == 0.0 || 2.0 * a > FRAC_PI_2 {
        return Err(Error::BracketFailure { r: params.r, alpha: a, at_alpha: f64::NAN, at_two_alpha: f64::NAN });
    }
    let at_alpha = ratio_derivative(params, a)?;
    let at_two_alpha = ratio_derivative(params, 2.0 * a)?;
    if !(at_alpha > 0.0 && at_two_alpha < 0.0) {
        return Err(Error::BracketFailure { r: params.r, alpha: a, at_alpha, at_two_alpha });
    }
    let e = golden_max(|b| asymptotic_compact(params, b), a, 2.0 * a, BETA_TOL);
    Ok((e.x, e.value))
}

/// Interior local maximum anywhere in `(alpha, pi/2)`.
///
/// Uses the bracketed search when the derivative pattern holds and a grid
/// scan with golden refinement otherwise.
pub fn local_maximum(params: &StrategyParams) -> Result<Option<(f64, f64)>> {
    match interior_maximum(params) {
        Ok(m) => return Ok(Some(m)),
        Err(Error::BracketFailure { .. }) => {}
        Err(e) => return Err(e),
    }
    let grid = beta_grid(params.alpha, FALLBACK_GRID);
    let vals: Vec<f64> = grid.iter().map(|&b| asymptotic_compact(params, b)).collect();
    let mut best: Option<(f64, f64)> = None;
    for k in 1..grid.len() - 1 {
        if vals[k] >= vals[k - 1] && vals[k] > vals[k + 1] {
            let e = golden_max(|b| asymptotic_compact(params, b), grid[k - 1], grid[k + 1], BETA_TOL);
            if best.is_none_or(|(_, c)| e.value > c) {
                best = Some((e.x, e.value));
            }
        }
    }
    Ok(best)
}

/// `n` angles covering `[alpha, pi/2]`; the left end is dropped when `alpha = 0`.
pub fn beta_grid(alpha: f64, n: usize) -> Vec<f64> {
    if alpha > 0.0 {
        linspace(alpha, FRAC_PI_2, n)
    } else {
        (1..=n).map(|k| FRAC_PI_2 * k as f64 / n as f64).collect()
    }
}

/// Worst-case angle and ratio of a strategy.
///
/// `alpha = 0` is rejected: the ratio diverges as `beta -> 0`.
pub fn worst_case_beta(params: &StrategyParams) -> Result<WorstCase> {
    let boundary_alpha = ratio_boundary_alpha(params)?;
    let boundary_pi_half = ratio_boundary_pi_half(params);
    let interior = local_maximum(params)?;
    let mut wc = WorstCase {
        beta_star: FRAC_PI_2,
        c_star: boundary_pi_half,
        kind: WorstCaseKind::BoundaryPiHalf,
        interior,
        boundary_pi_half,
        boundary_alpha,
    };
    if let Some((b, c)) = interior {
        if c > wc.c_star {
            wc.beta_star = b;
            wc.c_star = c;
            wc.kind = WorstCaseKind::InteriorMax;
        }
    }
    if boundary_alpha > wc.c_star {
        wc.beta_star = params.alpha;
        wc.c_star = boundary_alpha;
        wc.kind = WorstCaseKind::BoundaryAlpha;
    }
    Ok(wc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(r: f64, a: f64) -> StrategyParams {
        StrategyParams::new(r, a).unwrap()
    }

    fn turn(i: u32) -> TurnIndex {
        TurnIndex::new(i).unwrap()
    }

    #[test]
    fn doubling_is_nine_competitive_in_the_limit() {
        let x: Vec<f64> = (0..60).map(|i| 2f64.powi(i)).collect();
        for k in 1..40 {
            let exact = 9.0 - 4.0 / 2f64.powi(k as i32);
            let got = classic_cowpath_ratio(&x, k).unwrap();
            assert!((got - exact).abs() < 1e-12, "k={k}");
        }
        assert!((classic_cowpath_ratio(&x, 55).unwrap() - 9.0).abs() < 1e-12);
        assert!(classic_cowpath_ratio(&x, 60).is_err());
        assert!(classic_cowpath_ratio(&x, 0).is_err());
    }

    #[test]
    fn slow_growth_is_worse_than_nine() {
        let x: Vec<f64> = (0..40).map(|i| 1.0001f64.powi(i)).collect();
        assert!((1..39).any(|k| classic_cowpath_ratio(&x, k).unwrap() > 9.0));
        assert!(classic_cowpath_ratio(&[1.0, 2.0, 0.5], 1).is_err());
    }

    #[test]
    fn finite_ratio_matches_classic_sequence() {
        let p = params(2.0, 0.0);
        let x: Vec<f64> = (0..20).map(|i| 2f64.powi(i)).collect();
        for i in 1..15u32 {
            let f = ratio_finite(&p, turn(i), FRAC_PI_2).unwrap();
            let c = classic_cowpath_ratio(&x, i as usize).unwrap();
            assert!((f - c).abs() < 1e-12, "i={i}: {f} vs {c}");
        }
    }

    #[test]
    fn finite_ratio_converges_to_asymptotic() {
        for &(r, a, b) in &[(1.98, 0.165, 0.192355), (1.978624821, 0.166547577, 0.3), (2.0, 0.231477, 1.2)] {
            let p = params(r, a);
            let lim = ratio_asymptotic(&p, b).unwrap();
            let f30 = ratio_finite(&p, turn(30), b).unwrap();
            assert!((f30 - lim).abs() < 1e-7, "{f30} vs {lim}");
            let mut prev = f64::INFINITY;
            for i in 3..30 {
                let d = (ratio_finite(&p, turn(i), b).unwrap() - lim).abs();
                assert!(d <= prev * (1.0 + 1e-9) + 1e-13);
                prev = d;
            }
        }
    }

    #[test]
    fn asymptotic_forms_agree() {
        let p = params(1.95, 0.16);
        for b in linspace(0.16, FRAC_PI_2, 101) {
            let [e, c, t] = ratio_asymptotic_forms(&p, b).unwrap();
            assert!((e - c).abs() < 1e-12 * c && (t - c).abs() < 1e-12 * c);
        }
    }

    #[test]
    fn boundary_values() {
        assert_eq!(ratio_boundary_pi_half(&params(2.0, 0.0)), 9.0);
        let a = 0.17;
        let p = params(2.0, a);
        assert!((ratio_boundary_pi_half(&p) - 9.0 / a.cos()).abs() < 1e-14 * 9.0);
        assert!((ratio_asymptotic(&p, FRAC_PI_2).unwrap() - ratio_boundary_pi_half(&p)).abs() < 1e-13);
        assert!((ratio_asymptotic(&p, a).unwrap() - ratio_boundary_alpha(&p).unwrap()).abs() < 1e-13);
        let q = StrategyParams { r: 1.0, alpha: std::f64::consts::FRAC_PI_4 };
        assert!((ratio_boundary_alpha(&q).unwrap() - 2.0).abs() < 1e-15);
        assert!(ratio_boundary_alpha(&params(2.0, 0.0)).is_err());
    }

    #[test]
    fn boundary_pi_half_minimized_at_two() {
        let a = 0.15;
        let at_two = ratio_boundary_pi_half(&params(2.0, a));
        for r in [1.5, 1.9, 1.99, 2.01, 2.1, 3.0] {
            assert!(ratio_boundary_pi_half(&params(r, a)) > at_two);
        }
    }

    #[test]
    fn derivative_at_alpha() {
        for &(r, a) in &[(1.95, 0.16), (2.0, 0.2), (1.5, 0.4)] {
            let p = params(r, a);
            let d = ratio_derivative(&p, a).unwrap();
            assert!((d - (r + 1.0) / (2.0 * a.cos().powi(2))).abs() < 1e-12 * d);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = params(1.95, 0.161);
        let h = 1e-6;
        for b in linspace(0.17, 1.5, 40) {
            let fd = (asymptotic_compact(&p, b + h) - asymptotic_compact(&p, b - h)) / (2.0 * h);
            let d = ratio_derivative(&p, b).unwrap();
            assert!((fd - d).abs() < 1e-5 * d.abs().max(1.0), "beta={b}: {d} vs {fd}");
        }
    }

    #[test]
    fn rejects_out_of_range_angles() {
        let p = params(2.0, 0.2);
        assert!(ratio_asymptotic(&p, 0.1).is_err());
        assert!(ratio_asymptotic(&p, 1.6).is_err());
        assert!(ratio_asymptotic(&params(2.0, 0.0), 0.0).is_err());
        assert!(ratio_finite(&p, turn(3), 0.1).is_err());
    }

    #[test]
    fn near_optimal_worst_case_is_balanced() {
        let wc = worst_case_beta(&params(1.978624821, 0.166547577)).unwrap();
        let (b, c) = wc.interior.unwrap();
        assert!((b - 0.190681180073897).abs() < 1e-6);
        assert!((c - wc.boundary_pi_half).abs() < 1e-4);
        assert!(wc.c_star < 9.12725);
        assert!(wc.boundary_alpha < wc.c_star);
    }

    #[test]
    fn terrain_parameters_are_boundary_dominated() {
        let p = params(2.0, 0.231477);
        let wc = worst_case_beta(&p).unwrap();
        assert!(wc.interior.unwrap().1 < wc.boundary_pi_half - 1.0);
        assert_eq!(wc.kind, WorstCaseKind::BoundaryPiHalf);
        assert!((wc.c_star - 3.0 * 9.5f64.sqrt()).abs() < 2e-4);
    }

    #[test]
    fn local_maximum_found_for_unbalanced_parameters() {
        // frozen from an independent bounded scalar maximization
        let wc = worst_case_beta(&params(1.98, 0.165)).unwrap();
        assert_eq!(wc.kind, WorstCaseKind::InteriorMax);
        assert!((wc.beta_star - 0.188308).abs() < 1e-5);
        assert!((wc.c_star - 9.213188).abs() < 1e-5);
    }

    #[test]
    fn flat_strategy_has_unbounded_worst_case() {
        assert!(worst_case_beta(&params(2.0, 0.0)).is_err());
        let p = params(2.0, 0.0);
        for b in linspace(0.1, FRAC_PI_2, 20) {
            assert!((ratio_asymptotic(&p, b).unwrap() - 9.0 / b.sin()).abs() < 1e-12 * 9.0 / b.sin());
        }
    }
}
