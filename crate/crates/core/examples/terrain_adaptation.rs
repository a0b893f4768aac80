//! Adapts the strategy to a barrier terrain and compares it with the
//! shortest obstacle-avoiding path to every ray.

use raysearch::terrain::{
    adapt_strategy_detailed, barrier_core_reduce, random_barrier_terrain, terrain_sweep, BarrierConfig, Terrain,
    TerrainKind, TerrainSweepConfig,
};

fn main() -> raysearch::Result<()> {
    let p = raysearch::near_optimal();
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let terrain = random_barrier_terrain(&p, seed, &BarrierConfig::default())?;
    if let TerrainKind::Barriers(b) = terrain.kind() {
        println!("seed {seed}: {} barriers", b.len());
    }

    let adapted = adapt_strategy_detailed(&p, &terrain, 26)?;
    for e in adapted.episodes.iter().take(6) {
        println!(
            "excursion {:>2} {:?}: contact ({:.3}, {:.3}) turn ({:.3}, {:.3}) regained y {:.3}, shift {:+.3}",
            e.excursion,
            e.side,
            e.contact.x,
            e.contact.y,
            e.turn.x,
            e.turn.y,
            e.regained.y,
            e.shift()
        );
    }
    println!("clearance violation: {:?}", terrain.clearance_violation(&adapted.path, 1e-9));

    let rep = terrain_sweep(&p, &terrain, &TerrainSweepConfig::new(&p, 200))?;
    println!("{} rays, {} episodes, worst ratio {:.9}", rep.n_rays, rep.n_episodes, rep.worst.ratio);
    println!("detected later than planned: {}", rep.later_than_plan);

    let staircase = Terrain::from_json(r#"{"chain": [[-1e6, 0], [2, 0], [2.01, 1.5], [9, 1.5], [9.01, 12], [1e9, 12]]}"#)?;
    if let TerrainKind::Barriers(b) = barrier_core_reduce(&p, &staircase, 20)?.kind() {
        for bar in b {
            println!("staircase core barrier at x {:.4}, height {:.4}", bar.x, bar.height);
        }
    }
    Ok(())
}
