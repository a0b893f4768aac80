//! Random barrier terrains placed against the planned strategy.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::model::{Barrier, Terrain};
use crate::error::{Error, Result};
use crate::strategy::{axis_height, StrategyParams};

/// Knobs of [`random_barrier_terrain`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarrierConfig {
    /// At most this many barriers per side.
    pub max_per_side: usize,
    /// Excursions that may receive a barrier.
    pub first_excursion: u32,
    pub last_excursion: u32,
    /// Barrier position as a fraction of the excursion depth.
    pub depth_fraction: (f64, f64),
    /// Barrier height above the planned leg as a fraction of the local budget.
    pub budget_fraction: (f64, f64),
}

impl Default for BarrierConfig {
    fn default() -> Self {
        BarrierConfig {
            max_per_side: 8,
            first_excursion: 1,
            last_excursion: 22,
            depth_fraction: (0.3, 1.0),
            budget_fraction: (0.1, 1.0),
        }
    }
}

/// Barriers at `x = ±r^j u` on excursions of the matching side. Each one
/// rises above the planned forth leg by a fraction of the budget
/// `2 (r^j - r^j u) / cos(alpha)`; heights are then made nondecreasing
/// outward on each side.
pub fn random_barrier_terrain(params: &StrategyParams, seed: u64, config: &BarrierConfig) -> Result<Terrain> {
    let (u_lo, u_hi) = config.depth_fraction;
    let (f_lo, f_hi) = config.budget_fraction;
    if !(0.0 < u_lo && u_lo < u_hi && u_hi <= 1.0 && 0.0 <= f_lo && f_lo <= f_hi) {
        return Err(Error::InvalidArgument("bad barrier generator ranges".into()));
    }
    if config.first_excursion > config.last_excursion {
        return Err(Error::InvalidArgument("empty excursion range".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (t, cos_a) = (params.alpha.tan(), params.alpha.cos());
    let mut all = Vec::new();
    for parity in [0, 1] {
        let mut slots: Vec<u32> =
            (config.first_excursion..=config.last_excursion).filter(|j| j % 2 == parity).collect();
        slots.shuffle(&mut rng);
        let count = rng.gen_range(1..=config.max_per_side.min(slots.len()).max(1)).min(slots.len());
        let sign = if parity == 0 { 1.0 } else { -1.0 };
        let mut side: Vec<Barrier> = slots[..count]
            .iter()
            .map(|&j| {
                let depth = params.r.powi(j as i32);
                let u = depth * rng.gen_range(u_lo..u_hi);
                let f = if f_hi > f_lo { rng.gen_range(f_lo..=f_hi) } else { f_lo };
                let leg = axis_height(params, j) + u * t;
                Barrier { x: sign * u, height: leg + f * 2.0 * (depth - u) / cos_a }
            })
            .collect();
        side.sort_by(|a, b| a.x.abs().total_cmp(&b.x.abs()));
        let mut top = 0.0f64;
        for b in &mut side {
            top = top.max(b.height);
            b.height = top;
        }
        all.extend(side);
    }
    Terrain::barriers(all)
}
