use std::f64::consts::FRAC_PI_2;

use raysearch::ratio::ratio_boundary_pi_half;
use raysearch::search::linspace;
use raysearch::strategy::{axis_height, build_path};
use raysearch::terrain::{
    adapt_strategy, adapt_strategy_detailed, barrier_core_reduce, geodesic_opt, minimal_slope, terrain_ray_grid,
    terrain_sweep, terrain_sweep_rays, AdaptMode, Barrier, Terrain, TerrainKind, TerrainSweepConfig,
};
use raysearch::{Point, RaySpec, Side};

/// Barrier on excursion `j` at `u * r^j` that the plan meets at height `y_c`.
fn barrier_on_leg(j: u32, u: f64, extra: f64) -> (Barrier, f64, f64) {
    let p = raysearch::near_optimal();
    let depth = p.r.powi(j as i32);
    let x = u * depth;
    let y_c = axis_height(&p, j) + x * p.alpha.tan();
    let budget = 2.0 * (depth - x) / p.alpha.cos();
    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
    (Barrier { x: sign * x, height: y_c + extra * budget }, y_c, budget)
}

#[test]
fn exhausted_budget_returns_on_the_minimal_slope_ray() {
    let p = raysearch::near_optimal();
    for (j, u) in [(6, 0.5), (9, 0.8), (16, 0.35)] {
        let (bar, y_c, budget) = barrier_on_leg(j, u, 1.0);
        let t = Terrain::barriers(vec![bar]).unwrap();
        let a = adapt_strategy_detailed(&p, &t, j + 4).unwrap();
        assert_eq!(a.episodes.len(), 1);
        let e = a.episodes[0];
        assert_eq!(e.turn, e.regained);
        assert!((e.turn.y - (y_c + budget)).abs() < 1e-9 * budget);
        let q = e.planned_turn;
        let slope = (e.regained.y - q.y) / (q.x - e.regained.x).abs();
        assert!((slope - minimal_slope(&p)).abs() < 1e-9, "{slope}");
    }
}

#[test]
fn partial_climb_leaves_at_the_climb_angle() {
    let p = raysearch::near_optimal();
    let (bar, y_c, budget) = barrier_on_leg(8, 0.5, 0.3);
    let t = Terrain::barriers(vec![bar]).unwrap();
    let a = adapt_strategy_detailed(&p, &t, 12).unwrap();
    let e = a.episodes[0];
    assert!((e.top.y - bar.height).abs() < 1e-9 * bar.height);
    assert!(e.turn.x > bar.x && e.turn.x < e.planned_turn.x);
    // climbing 0.3 B leaves 0.7 B, split evenly between the climb-angle legs
    let leg = 0.35 * budget;
    assert!((e.turn.x - (bar.x + leg * p.alpha.cos())).abs() < 1e-9 * e.turn.x);
    assert!((e.regained.y - (y_c + 0.3 * budget + 2.0 * leg * p.alpha.sin())).abs() < 1e-9 * e.regained.y);
    assert!((e.arc_at_regained - e.plan_arc_at_regained).abs() < 1e-9 * e.plan_arc_at_regained);
    let modes: Vec<_> = a.transitions.iter().filter(|s| s.excursion == 8).map(|s| s.mode).collect();
    assert_eq!(modes, [AdaptMode::OnPlan, AdaptMode::OnTerrain, AdaptMode::Returning, AdaptMode::OnPlan]);
    let ret = a.transitions.iter().find(|s| s.mode == AdaptMode::Returning).unwrap();
    assert_eq!(ret.target_x, e.regained.x);
    assert!(ret.budget_used <= ret.budget_total);
}

#[test]
fn wedge_rays_at_an_exhausted_return_are_dominated() {
    let p = raysearch::near_optimal();
    let (bar, _, _) = barrier_on_leg(18, 0.6, 1.0);
    let t = Terrain::barriers(vec![bar]).unwrap();
    let a = adapt_strategy_detailed(&p, &t, 24).unwrap();
    let ret = a.episodes[0].regained;
    let betas = linspace(minimal_slope(&p).atan(), FRAC_PI_2, 400);
    let rays: Vec<_> = betas.iter().map(|&b| RaySpec::new(Side::Right, b, ret).unwrap()).collect();
    let rep = terrain_sweep_rays(&a, &t, &rays, 1, true).unwrap();
    let ratios = rep.ratios.unwrap();
    let k = ratios.iter().enumerate().max_by(|x, y| x.1.total_cmp(y.1)).unwrap().0;
    assert_eq!(rays[k].beta, FRAC_PI_2);
    assert!(rep.worst.ratio < ratio_boundary_pi_half(&p), "{}", rep.worst.ratio);
}

#[test]
fn single_barrier_sweep_stays_below_the_pure_worst_case() {
    let p = raysearch::near_optimal();
    let (bar, _, _) = barrier_on_leg(17, 0.5, 1.0);
    let t = Terrain::barriers(vec![bar]).unwrap();
    let rep = terrain_sweep(&p, &t, &TerrainSweepConfig::new(&p, 300)).unwrap();
    assert_eq!(rep.n_episodes, 1);
    assert!(rep.worst.ratio <= 9.1272278 + 1e-3, "{}", rep.worst.ratio);
}

#[test]
fn empty_terrain_is_the_plan() {
    let p = raysearch::near_optimal();
    for n in [1, 2, 7, 30] {
        assert_eq!(adapt_strategy(&p, &Terrain::empty(), n).unwrap(), build_path(&p, n).unwrap());
    }
}

#[test]
fn geodesic_over_two_barriers() {
    let ray = RaySpec::vertical(5.0).unwrap();
    // the segment to the taller top clears the first barrier
    let t = Terrain::barriers(vec![Barrier { x: 1.0, height: 1.0 }, Barrier { x: 3.0, height: 4.0 }]).unwrap();
    assert!((geodesic_opt(&t, &ray).unwrap() - 7.0).abs() < 1e-12);
    // here it does not, and the path bends at both tops
    let t = Terrain::barriers(vec![Barrier { x: 1.0, height: 2.0 }, Barrier { x: 3.0, height: 4.0 }]).unwrap();
    let want = 5f64.sqrt() + 8f64.sqrt() + 2.0;
    assert!((geodesic_opt(&t, &ray).unwrap() - want).abs() < 1e-12);
    // a ray the start sees directly ignores the barriers
    let ray = RaySpec::new(Side::Left, 0.7, Point::new(-4.0, 0.0)).unwrap();
    assert_eq!(geodesic_opt(&t, &ray).unwrap(), ray.perp_distance());
}

#[test]
fn reduced_terrain_is_no_easier() {
    let p = raysearch::near_optimal();
    for (scale, risers) in [(1.0, [1.5, 6.0, 30.0]), (3.0, [0.7, 9.0, 80.0])] {
        let mut pts = vec![Point::new(-1e4, 0.0), Point::new(0.5, 0.0)];
        let mut h = 0.0;
        for x in risers {
            h += scale * x;
            pts.push(Point::new(x, pts.last().unwrap().y));
            pts.push(Point::new(x + 1e-3, h));
        }
        pts.push(Point::new(1e9, h));
        let chain = Terrain::monotone(pts).unwrap();
        let reduced = barrier_core_reduce(&p, &chain, 26).unwrap();
        assert!(matches!(reduced.kind(), TerrainKind::Barriers(b) if !b.is_empty()));
        let mut cfg = TerrainSweepConfig::new(&p, 200);
        cfg.first_excursion = 1;
        let on_chain = terrain_sweep(&p, &chain, &cfg).unwrap();
        let on_bars = terrain_sweep(&p, &reduced, &cfg).unwrap();
        assert!(on_bars.worst.ratio >= on_chain.worst.ratio - 1e-9, "{} < {}", on_bars.worst.ratio, on_chain.worst.ratio);
    }
}

#[test]
fn grid_covers_both_sides_on_the_axis() {
    let p = raysearch::near_optimal();
    let a = adapt_strategy_detailed(&p, &Terrain::empty(), 10).unwrap();
    let rays = terrain_ray_grid(&a, 3, 3, &[0.5, 1.0]);
    // excursion 3: one axis vertex (both sides) and one turn
    assert_eq!(rays.len(), 6);
    assert_eq!(rays.iter().filter(|r| r.side == Side::Left).count(), 4);
}
