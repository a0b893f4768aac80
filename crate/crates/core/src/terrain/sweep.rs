//! Competitive ratio of the adapted strategy against the geodesic optimum.

use serde::{Deserialize, Serialize};

use super::adapt::{adapt_strategy_detailed, AdaptedPath};
use super::geodesic::GeodesicOracle;
use super::model::Terrain;
use crate::error::{Error, Result};
use crate::geometry::{first_hit, RaySpec, Side};
use crate::search::linspace;
use crate::simulator::{argmax, ratio_against, run_pool, RatioReport};
use crate::strategy::{build_path, StrategyParams};

/// Which rays a terrain sweep shoots at the adapted path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TerrainSweepConfig {
    pub n_turns: u32,
    /// Rays pass through the vertices of excursions `first..=last`.
    pub first_excursion: u32,
    pub last_excursion: u32,
    pub betas: Vec<f64>,
    pub workers: usize,
    pub keep_ratios: bool,
}

impl TerrainSweepConfig {
    /// 26 turns, rays through excursions 14 to 23 and `n_betas` angles in `[alpha, pi/2]`.
    pub fn new(params: &StrategyParams, n_betas: usize) -> Self {
        TerrainSweepConfig {
            n_turns: 26,
            first_excursion: 14,
            last_excursion: 23,
            betas: linspace(params.alpha.max(1e-6), std::f64::consts::FRAC_PI_2, n_betas),
            workers: 0,
            keep_ratios: false,
        }
    }
}

/// Outcome of a terrain sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TerrainSweepReport {
    pub params: StrategyParams,
    pub n_rays: usize,
    pub n_episodes: usize,
    pub worst: RatioReport,
    /// Rays the adapted path detects later than the plan would have.
    pub later_than_plan: usize,
    pub ratios: Option<Vec<f64>>,
}

/// Rays with every angle in `betas` through each vertex of the given
/// excursions. Vertices on the axis get rays on both sides.
pub fn terrain_ray_grid(adapted: &AdaptedPath, first: u32, last: u32, betas: &[f64]) -> Vec<RaySpec> {
    let v = adapted.path.vertices();
    let mut rays = Vec::new();
    for &p in &v[adapted.vertex_range(first, last)] {
        let tol = 1e-12 * p.x.abs().max(p.y.abs()).max(1.0);
        let sides: &[Side] = if p.x > tol {
            &[Side::Right]
        } else if p.x < -tol {
            &[Side::Left]
        } else {
            &[Side::Right, Side::Left]
        };
        for &side in sides {
            rays.extend(betas.iter().filter_map(|&b| RaySpec::new(side, b, p).ok()));
        }
    }
    rays
}

/// Adapts the strategy to `terrain` and runs the ray grid of `config` on it.
pub fn terrain_sweep(params: &StrategyParams, terrain: &Terrain, config: &TerrainSweepConfig) -> Result<TerrainSweepReport> {
    if config.betas.is_empty() || config.first_excursion > config.last_excursion || config.last_excursion + 2 >= config.n_turns {
        return Err(Error::InvalidArgument("terrain sweep grid is empty or too close to the horizon".into()));
    }
    let adapted = adapt_strategy_detailed(params, terrain, config.n_turns)?;
    let rays = terrain_ray_grid(&adapted, config.first_excursion, config.last_excursion, &config.betas);
    terrain_sweep_rays(&adapted, terrain, &rays, config.workers, config.keep_ratios)
}

/// Runs explicit `rays` against an adapted path.
pub fn terrain_sweep_rays(
    adapted: &AdaptedPath,
    terrain: &Terrain,
    rays: &[RaySpec],
    workers: usize,
    keep_ratios: bool,
) -> Result<TerrainSweepReport> {
    if rays.is_empty() {
        return Err(Error::InvalidArgument("no rays to sweep".into()));
    }
    let oracle = GeodesicOracle::new(terrain);
    let plan = build_path(&adapted.params, adapted.excursion_starts.len() as u32)?;
    let results = run_pool(rays, workers, |ray| {
        let opt = oracle.distance(ray)?;
        let report = ratio_against(&adapted.path, ray, opt)?;
        let later = first_hit(&plan, ray, true).is_some_and(|h| report.alg_length > h.arc_length * (1.0 + 1e-12));
        Ok((report, later))
    })?;
    let k = argmax(results.iter().map(|(r, _)| r.ratio)).expect("rays are non-empty");
    Ok(TerrainSweepReport {
        params: adapted.params,
        n_rays: rays.len(),
        n_episodes: adapted.episodes.len(),
        worst: results[k].0,
        later_than_plan: results.iter().filter(|(_, l)| *l).count(),
        ratios: keep_ratios.then(|| results.iter().map(|(r, _)| r.ratio).collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terrain::generator::{random_barrier_terrain, BarrierConfig};

    #[test]
    fn empty_terrain_matches_the_pure_bound() {
        let p = crate::near_optimal();
        let mut cfg = TerrainSweepConfig::new(&p, 120);
        cfg.first_excursion = 20;
        let rep = terrain_sweep(&p, &Terrain::empty(), &cfg).unwrap();
        assert_eq!(rep.n_episodes, 0);
        assert_eq!(rep.later_than_plan, 0);
        assert!(rep.worst.ratio < crate::UPPER_BOUND + 1e-5, "{}", rep.worst.ratio);
        assert!(rep.worst.ratio > 9.0);
    }

    #[test]
    fn random_terrain_runs() {
        let p = crate::near_optimal();
        let t = random_barrier_terrain(&p, 3, &BarrierConfig::default()).unwrap();
        let rep = terrain_sweep(&p, &t, &TerrainSweepConfig::new(&p, 60)).unwrap();
        assert!(rep.n_episodes > 0);
        assert!(rep.worst.ratio.is_finite());
    }
}
