//! Asymptotic ratio over the ray angle, and where it peaks.
//!
//! Pass `r alpha` on the command line to look at other strategies.

use raysearch::ratio::{beta_grid, ratio_asymptotic, ratio_derivative, worst_case_beta};
use raysearch::StrategyParams;

fn main() -> raysearch::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let p = match args[..] {
        [r, alpha] => StrategyParams::new(r, alpha)?,
        _ => raysearch::near_optimal(),
    };
    for beta in beta_grid(p.alpha, 12) {
        println!("beta {beta:.6}  C {:.9}  C' {:+.6}", ratio_asymptotic(&p, beta)?, ratio_derivative(&p, beta)?);
    }
    let wc = worst_case_beta(&p)?;
    println!("worst case {:?} at beta {:.12}: {:.9}", wc.kind, wc.beta_star, wc.c_star);
    if let Some((b, c)) = wc.interior {
        println!("interior maximum {c:.9} at {b:.12}, vertical rays {:.9}", wc.boundary_pi_half);
    }
    Ok(())
}
