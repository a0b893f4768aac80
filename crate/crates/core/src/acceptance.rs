//! Regression checks behind `raysearch verify`.
//!
//! Each check recomputes its quantities from scratch and compares them with
//! the published or independently derived values at fixed tolerances.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::geometry::RaySpec;
use crate::lowerbound::{circle_bound, lower_bound, triangle_bound, LowerBoundCurve, MONOTONICITY_GRID};
use crate::optimizer::{balanced_at, narrow_box, optimize, BALANCE_TOL, DEFAULT_TARGET, OUTER_TOL};
use crate::ratio::{
    ratio_asymptotic, ratio_asymptotic_forms, ratio_boundary_pi_half, ratio_derivative, ratio_finite, worst_case_beta,
};
use crate::search::linspace;
use crate::simulator::simulate;
use crate::strategy::{build_path, turning_point, StrategyParams, TurnIndex};
use crate::terrain::{
    adapt_strategy_detailed, minimal_slope, random_barrier_terrain, terrain_ray_grid, terrain_sweep_rays,
    w2_margin, w2_margin_asymptotic, wedge_constants, AdaptedPath, BarrierConfig, Terrain,
};

/// Result of one criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub measured: String,
    pub expected: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} [{}] {}: measured {}; expected {}", self.id, self.name, self.measured, self.expected)
    }
}

fn outcome(id: u32, name: &'static str, checks: &[(bool, String, String)]) -> Outcome {
    let mark = |ok: bool| if ok { "" } else { " (x)" };
    Outcome {
        id,
        name,
        passed: checks.iter().all(|c| c.0),
        measured: checks.iter().map(|c| format!("{}{}", c.1, mark(c.0))).collect::<Vec<_>>().join("; "),
        expected: checks.iter().map(|c| c.2.clone()).collect::<Vec<_>>().join("; "),
    }
}

fn failed(id: u32, name: &'static str, err: crate::Error) -> Outcome {
    Outcome { id, name, passed: false, measured: format!("error: {err}"), expected: "no error".into() }
}

fn near(v: f64, want: f64, tol: f64) -> bool {
    (v - want).abs() <= tol
}

/// Number of criteria.
pub const CRITERIA: u32 = 11;

/// Runs criterion `id` (1-based).
pub fn criterion(id: u32) -> Outcome {
    let (name, run): (&'static str, fn() -> Result<Outcome>) = match id {
        1 => ("optimizer", check_optimizer),
        2 => ("boundary ratio", check_boundary),
        3 => ("worst-case angle", check_worst_case),
        4 => ("balance at r = 2", check_balance),
        5 => ("lower bounds", check_lower_bounds),
        6 => ("box narrowing", check_narrowing),
        7 => ("oracle equivalence", check_oracle),
        8 => ("derivative", check_derivative),
        9 => ("terrain constants", check_wedge),
        10 => ("terrain dominance", check_dominance),
        11 => ("empty terrain", check_empty_terrain),
        _ => return failed(id, "unknown", crate::Error::InvalidArgument(format!("no criterion {id}"))),
    };
    run().unwrap_or_else(|e| failed(id, name, e))
}

/// All criteria in order.
pub fn run_all() -> Vec<Outcome> {
    (1..=CRITERIA).map(criterion).collect()
}

fn check_optimizer() -> Result<Outcome> {
    let o = optimize(OUTER_TOL)?;
    Ok(judge_optimizer(o.r_star, o.alpha_star, o.c_star, o.beta_interior))
}

/// Compares optimizer output with the published optimum.
pub fn judge_optimizer(r: f64, alpha: f64, c: f64, beta: f64) -> Outcome {
    outcome(
        1,
        "optimizer",
        &[
            (near(r, 1.978624821, 1e-5), format!("r*={r:.9}"), "1.978624821 +- 1e-5".into()),
            (near(alpha, 0.166547577, 1e-5), format!("alpha*={alpha:.9}"), "0.166547577 +- 1e-5".into()),
            (c > 9.1271 && c < 9.12725, format!("c*={c:.9}"), "in (9.1271, 9.12725)".into()),
            (near(beta, 0.190681180073897, 1e-6), format!("beta_max={beta:.12}"), "0.190681180073897 +- 1e-6".into()),
        ],
    )
}

fn check_boundary() -> Result<Outcome> {
    let at_zero = ratio_boundary_pi_half(&StrategyParams::new(2.0, 0.0)?);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let a = rng.gen_range(0.0..1.5);
        let v = ratio_boundary_pi_half(&StrategyParams::new(2.0, a)?);
        let want = 9.0 / a.cos();
        worst = worst.max(((v - want) / want).abs());
    }
    Ok(outcome(
        2,
        "boundary ratio",
        &[
            (near(at_zero, 9.0, f64::EPSILON * 9.0), format!("C(2,0,pi/2)={at_zero:.17}"), "9".into()),
            (worst < 1e-14, format!("max rel err vs 9/cos(alpha)={worst:.2e}"), "< 1e-14 over 20 alphas".into()),
        ],
    ))
}

fn check_worst_case() -> Result<Outcome> {
    let a = worst_case_beta(&StrategyParams::new(2.0, 0.231477)?)?;
    let p = StrategyParams::new(1.98, 0.165)?;
    let b = worst_case_beta(&p)?;
    let at_published = ratio_asymptotic(&p, 0.192355)?;
    Ok(outcome(
        3,
        "worst-case angle",
        &[
            (near(a.c_star, 9.24663, 2e-4), format!("C*(2,0.231477)={:.6}", a.c_star), "9.24663 +- 2e-4".into()),
            (
                near(b.c_star, 9.21274, 2e-4),
                format!("C*(1.98,0.165)={:.6} (C at beta 0.192355 is {at_published:.6})", b.c_star),
                "9.21274 +- 2e-4".into(),
            ),
            (near(b.beta_star, 0.192355, 1e-4), format!("beta*={:.6}", b.beta_star), "0.192355 +- 1e-4".into()),
        ],
    ))
}

fn check_balance() -> Result<Outcome> {
    let b = balanced_at(2.0, BALANCE_TOL)?;
    Ok(judge_balance(b.alpha, b.ratio()))
}

/// Compares a balanced angle for `r = 2` and its ratio with the published values.
pub fn judge_balance(alpha: f64, ratio: f64) -> Outcome {
    outcome(
        4,
        "balance at r = 2",
        &[
            (near(alpha, 0.1677775, 1e-4), format!("alpha={alpha:.8}"), "0.1677775 +- 1e-4".into()),
            (ratio < 9.1282, format!("ratio={ratio:.7}"), "< 9.1282".into()),
        ],
    )
}

fn check_lower_bounds() -> Result<Outcome> {
    let c1 = circle_bound(1.0)?;
    let t1 = triangle_bound(1.0, 8.0)?;
    let decreasing = LowerBoundCurve::sample(MONOTONICITY_GRID)?.is_strictly_decreasing() && lower_bound().is_ok();
    let c_star = worst_case_beta(&crate::near_optimal())?.c_star;
    Ok(outcome(
        5,
        "lower bounds",
        &[
            (near(c1, 9.063577796336, 1e-9), format!("R(1)={c1:.12}"), "9.063577796336 +- 1e-9".into()),
            (near(t1, 82f64.sqrt(), 1e-12), format!("triangle(1)={t1:.12}"), "sqrt(82) +- 1e-12".into()),
            (decreasing, format!("strictly decreasing on 1e4 grid: {decreasing}"), "true".into()),
            (c_star > c1, format!("c*={c_star:.6} > R(1)"), "c* > R(1)".into()),
        ],
    ))
}

fn check_narrowing() -> Result<Outcome> {
    let n = narrow_box(DEFAULT_TARGET)?;
    let b = n.first_pass;
    let end = |v: f64, want: f64, name: &str| (near(v, want, 1e-3), format!("{name}={v:.6}"), format!("{want} +- 1e-3"));
    Ok(outcome(
        6,
        "box narrowing",
        &[
            end(b.r_lo, 1.913, "r_lo"),
            end(b.r_hi, 1.9885, "r_hi"),
            end(b.alpha_lo, 0.156, "alpha_lo"),
            end(b.alpha_hi, 0.1673, "alpha_hi"),
            (
                near(n.unfolding_alpha_lo, 0.109781, 1e-5),
                format!("unfolding alpha_lo={:.7}", n.unfolding_alpha_lo),
                "0.109781 +- 1e-5".into(),
            ),
        ],
    ))
}

fn check_oracle() -> Result<Outcome> {
    let p = crate::near_optimal();
    let path = build_path(&p, 32)?;
    let betas = linspace(p.alpha, FRAC_PI_2, 100);
    let mut sim_err = 0.0f64;
    for i in 2..=30 {
        let t = TurnIndex::new(i)?;
        for &b in &betas {
            let ray = RaySpec::new(t.side(), b, turning_point(&p, t))?;
            let sim = simulate(&path, &ray)?.ratio;
            sim_err = sim_err.max((sim - ratio_finite(&p, t, b)?).abs());
        }
    }
    let mut conv = 0.0f64;
    for &b in &betas {
        conv = conv.max((ratio_finite(&p, TurnIndex::new(30)?, b)? - ratio_asymptotic(&p, b)?).abs());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut forms = 0.0f64;
    for _ in 0..100_000 {
        let r = rng.gen_range(1.05..4.0);
        let a = rng.gen_range(0.01..0.7);
        let b = rng.gen_range(a..FRAC_PI_2);
        let f = ratio_asymptotic_forms(&StrategyParams::new(r, a)?, b)?;
        let scale = f[1].abs();
        forms = forms.max((f[0] - f[1]).abs() / scale).max((f[2] - f[1]).abs() / scale);
    }
    Ok(outcome(
        7,
        "oracle equivalence",
        &[
            (sim_err < 1e-8, format!("max |simulated - finite|={sim_err:.2e}"), "< 1e-8".into()),
            (conv < 1e-7, format!("max |finite(30) - asymptotic|={conv:.2e}"), "< 1e-7".into()),
            (forms < 1e-12, format!("max rel spread of the three forms={forms:.2e}"), "< 1e-12".into()),
        ],
    ))
}

/// Box in which the derivative claims are checked.
pub const DERIVATIVE_BOX: (f64, f64, f64, f64) = (1.913, 1.9885, 0.156, 0.1673);

fn check_derivative() -> Result<Outcome> {
    let (r_lo, r_hi, a_lo, a_hi) = DERIVATIVE_BOX;
    let h = 1e-6;
    let mut fd = 0.0f64;
    let mut pattern = true;
    for r in linspace(r_lo, r_hi, 20) {
        for a in linspace(a_lo, a_hi, 20) {
            let p = StrategyParams::new(r, a)?;
            for b in linspace(a + h, FRAC_PI_2 - h, 20) {
                let d = ratio_derivative(&p, b)?;
                let c = (ratio_asymptotic(&p, b + h)? - ratio_asymptotic(&p, b - h)?) / (2.0 * h);
                fd = fd.max((d - c).abs() / d.abs().max(1.0));
            }
            pattern &= ratio_derivative(&p, a)? > 0.0
                && ratio_derivative(&p, 2.0 * a)? < 0.0
                && ratio_derivative(&p, FRAC_PI_2 - a)? > 0.0;
        }
    }
    Ok(outcome(
        8,
        "derivative",
        &[
            (fd < 1e-5, format!("max rel err vs central differences={fd:.2e}"), "< 1e-5".into()),
            (pattern, format!("sign pattern (+, -, +) everywhere: {pattern}"), "true".into()),
        ],
    ))
}

fn check_wedge() -> Result<Outcome> {
    let p = crate::near_optimal();
    let w = wedge_constants(&p, TurnIndex::new(30)?)?;
    let slope = minimal_slope(&p);
    let deg = w.delta.to_degrees();
    let d71 = 71f64.to_radians();
    let m2 = w2_margin(&p, TurnIndex::new(2)?, d71)?;
    let m5 = w2_margin(&p, TurnIndex::new(5)?, d71)?;
    let m_inf = w2_margin_asymptotic(&p, 71.277f64.to_radians());
    Ok(outcome(
        9,
        "terrain constants",
        &[
            (near(slope, 1.859957576113, 1e-9), format!("slope={slope:.12}"), "1.859957576113 +- 1e-9".into()),
            (near(w.slope_l, -2.95062869307, 1e-8), format!("s_l={:.11}", w.slope_l), "-2.95062869307 +- 1e-8".into()),
            (near(deg, 71.2779240409, 1e-6), format!("delta={deg:.10} deg"), "71.2779240409 +- 1e-6".into()),
            (m2 > 0.0339, format!("margin(i=2)={m2:.6}"), "> 0.0339".into()),
            (m5 > 0.1, format!("margin(i=5)={m5:.6}"), "> 0.1".into()),
            (m_inf > 0.1195, format!("margin(inf)={m_inf:.8}"), "> 0.1195".into()),
        ],
    ))
}

/// Turns, ray excursions and ray count used by the terrain checks.
pub const TERRAIN_TURNS: u32 = 26;
pub const TERRAIN_EXCURSIONS: (u32, u32) = (14, 23);
pub const TERRAIN_RAYS: usize = 10_000;

/// Angles giving about [`TERRAIN_RAYS`] rays through the swept vertices.
pub fn terrain_betas(adapted: &AdaptedPath) -> Vec<f64> {
    let (first, last) = TERRAIN_EXCURSIONS;
    let anchors = adapted.vertex_range(first, last).len().max(1);
    linspace(adapted.params.alpha, FRAC_PI_2, TERRAIN_RAYS.div_ceil(anchors))
}

/// Violations of the episode invariants of an adapted path.
pub fn episode_violations(adapted: &AdaptedPath, terrain: &Terrain) -> Vec<String> {
    let mut out = Vec::new();
    for e in &adapted.episodes {
        let scale = e.plan_arc_at_regained.max(1.0);
        if (e.arc_at_regained - e.plan_arc_at_regained).abs() > 1e-9 * scale {
            out.push(format!("excursion {}: length {} vs plan {}", e.excursion, e.arc_at_regained, e.plan_arc_at_regained));
        }
        if e.regained.x != e.planned_regained.x || e.regained.y < e.planned_regained.y {
            out.push(format!("excursion {}: regained point below or beside the plan", e.excursion));
        }
    }
    if let Some(k) = terrain.clearance_violation(&adapted.path, 1e-9) {
        out.push(format!("path enters the terrain at vertex {k}"));
    }
    out
}

/// Worst terrain ratio, episodes checked and invariant violations for one terrain.
pub fn terrain_check(params: &StrategyParams, terrain: &Terrain) -> Result<(f64, usize, Vec<String>)> {
    let adapted = adapt_strategy_detailed(params, terrain, TERRAIN_TURNS)?;
    let violations = episode_violations(&adapted, terrain);
    let (first, last) = TERRAIN_EXCURSIONS;
    let rays = terrain_ray_grid(&adapted, first, last, &terrain_betas(&adapted));
    let rep = terrain_sweep_rays(&adapted, terrain, &rays, 0, false)?;
    Ok((rep.worst.ratio, adapted.episodes.len(), violations))
}

fn check_dominance() -> Result<Outcome> {
    let p = crate::near_optimal();
    let c_star = worst_case_beta(&p)?.c_star;
    let mut worst = 0.0f64;
    let mut episodes = 0;
    let mut violations = Vec::new();
    for seed in 0..100 {
        let t = random_barrier_terrain(&p, seed, &BarrierConfig::default())?;
        let (w, e, v) = terrain_check(&p, &t)?;
        worst = worst.max(w);
        episodes += e;
        violations.extend(v.into_iter().map(|m| format!("seed {seed}: {m}")));
    }
    Ok(outcome(
        10,
        "terrain dominance",
        &[
            (worst <= c_star + 1e-3, format!("max ratio over 100 terrains={worst:.7}"), format!("<= c* + 1e-3 = {:.7}", c_star + 1e-3)),
            (
                violations.is_empty(),
                match violations.first() {
                    Some(v) => format!("{episodes} episodes, {} invariant violations (first: {v})", violations.len()),
                    None => format!("{episodes} episodes, 0 invariant violations"),
                },
                "0 violations".into(),
            ),
        ],
    ))
}

fn check_empty_terrain() -> Result<Outcome> {
    let p = crate::near_optimal();
    let empty = Terrain::empty();
    let adapted = adapt_strategy_detailed(&p, &empty, TERRAIN_TURNS)?;
    let plan = build_path(&p, TERRAIN_TURNS)?;
    let identical = adapted.path == plan;
    let (first, last) = TERRAIN_EXCURSIONS;
    let rays = terrain_ray_grid(&adapted, first, last, &terrain_betas(&adapted));
    let rep = terrain_sweep_rays(&adapted, &empty, &rays, 0, true)?;
    let mut diff = 0.0f64;
    for (ray, t) in rays.iter().zip(rep.ratios.as_deref().unwrap_or(&[])) {
        diff = diff.max((simulate(&plan, ray)?.ratio - t).abs());
    }
    Ok(outcome(
        11,
        "empty terrain",
        &[
            (identical, format!("vertex-identical to the plan: {identical}"), "true".into()),
            (diff <= 1e-12, format!("max |terrain - simulator| over {} rays={diff:.2e}", rays.len()), "<= 1e-12".into()),
        ],
    ))
}
