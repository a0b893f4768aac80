//! The one-dimensional doubling strategy as the flat special case.

use raysearch::ratio::{classic_cowpath_ratio, ratio_asymptotic, ratio_boundary_pi_half};
use raysearch::StrategyParams;

fn main() -> raysearch::Result<()> {
    let depths: Vec<f64> = (0..20).map(|i| 2f64.powi(i)).collect();
    for k in [1, 2, 5, 10, 18] {
        println!("doubling, target beyond turn {k:>2}: ratio {:.6}", classic_cowpath_ratio(&depths, k)?);
    }

    let flat = StrategyParams::new(2.0, 0.0)?;
    println!("flat strategy, vertical rays: {}", ratio_boundary_pi_half(&flat));
    for beta in [0.3, 0.8, 1.3] {
        println!("flat strategy, beta={beta}: {:.6}", ratio_asymptotic(&flat, beta)?);
    }
    Ok(())
}
