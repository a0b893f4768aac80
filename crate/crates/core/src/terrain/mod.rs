//! Ray search above a 1.5D terrain.
//!
//! The free space lies above an x-monotone chain or above vertical barriers
//! standing on the baseline. The strategy follows translated copies of its
//! plan and spends the plan's own length budget whenever the terrain blocks
//! it ([`adapt`]); the offline optimum is a geodesic above the terrain
//! ([`geodesic`]).

pub mod adapt;
pub mod generator;
pub mod geodesic;
pub mod model;
pub mod reduce;
pub mod sweep;
pub mod wedge;

pub use adapt::{adapt_strategy, adapt_strategy_detailed, AdaptMode, AdaptedPath, AdaptedState, Episode};
pub use generator::{random_barrier_terrain, BarrierConfig};
pub use geodesic::{geodesic_opt, GeodesicOracle};
pub use model::{Barrier, Terrain, TerrainKind};
pub use reduce::barrier_core_reduce;
pub use sweep::{terrain_ray_grid, terrain_sweep, terrain_sweep_rays, TerrainSweepConfig, TerrainSweepReport};
pub use wedge::{
    dist_to_r_gamma, minimal_slope, r_gamma_factor, slope_l_limit, w2_margin, w2_margin_asymptotic, wedge_constants,
    WedgeConstants,
};
