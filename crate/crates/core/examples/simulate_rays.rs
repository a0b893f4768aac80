//! Geometric simulation of single rays and a sweep over tangent rays.

use raysearch::ratio::{beta_grid, ratio_finite, worst_case_beta};
use raysearch::simulator::{simulate, sweep, SweepConfig};
use raysearch::strategy::{build_path, turning_point};
use raysearch::{RaySpec, TurnIndex};

fn main() -> raysearch::Result<()> {
    let p = raysearch::near_optimal();
    let t = TurnIndex::new(12)?;
    let path = build_path(&p, 15)?;
    for beta in [p.alpha, raysearch::NEAR_OPTIMAL_BETA_MAX, 1.0, std::f64::consts::FRAC_PI_2] {
        let ray = RaySpec::new(t.side(), beta, turning_point(&p, t))?;
        let rep = simulate(&path, &ray)?;
        println!(
            "beta {beta:.6}: hit at ({:.4}, {:.4}) after {:.4}, ratio {:.9}, closed form {:.9}",
            rep.hit.point.x,
            rep.hit.point.y,
            rep.alg_length,
            rep.ratio,
            ratio_finite(&p, t, beta)?
        );
    }

    let mut cfg = SweepConfig::new(20, 30, beta_grid(p.alpha, 400));
    cfg.mirrored = true;
    cfg.workers = 0;
    let rep = sweep(&p, &cfg)?;
    println!(
        "sweep over {} rays: worst {:.9} at turn {}, beta {:.6}; mirrored {:.9}",
        rep.n_rays,
        rep.worst.ratio,
        rep.worst_turn,
        rep.worst_beta,
        rep.mirrored_worst.unwrap_or(f64::NAN)
    );
    println!("closed-form worst case {:.9}", worst_case_beta(&p)?.c_star);
    Ok(())
}
