//! Replacing a monotone terrain by the barriers the strategy actually feels.

use super::adapt::adapt_strategy_detailed;
use super::model::{Barrier, Terrain, TerrainKind};
use crate::error::Result;
use crate::geometry::Side;
use crate::strategy::StrategyParams;

/// One vertical barrier per terrain episode of the adapted strategy, topped
/// by the highest point where the path touched the terrain. Heights are made
/// nondecreasing outward on each side. Barrier terrains are returned as is.
pub fn barrier_core_reduce(params: &StrategyParams, terrain: &Terrain, n_turns: u32) -> Result<Terrain> {
    if let TerrainKind::Barriers(_) = terrain.kind() {
        return Ok(terrain.clone());
    }
    let adapted = adapt_strategy_detailed(params, terrain, n_turns)?;
    let mut out = Vec::new();
    for side in [Side::Right, Side::Left] {
        let mut bars: Vec<Barrier> = adapted
            .episodes
            .iter()
            .filter(|e| e.side == side && e.top.x != 0.0 && e.top.y > 0.0)
            .map(|e| Barrier { x: e.top.x, height: e.top.y })
            .collect();
        bars.sort_by(|a, b| a.x.abs().total_cmp(&b.x.abs()));
        bars.dedup_by(|b, a| {
            let same = a.x == b.x;
            if same {
                a.height = a.height.max(b.height);
            }
            same
        });
        let mut top = 0.0f64;
        for b in &mut bars {
            top = top.max(b.height);
            b.height = top;
        }
        out.extend(bars);
    }
    Terrain::barriers(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    #[test]
    fn barriers_are_kept() {
        let t = Terrain::barriers(vec![Barrier { x: 3.0, height: 2.0 }]).unwrap();
        assert_eq!(barrier_core_reduce(&crate::near_optimal(), &t, 10).unwrap(), t);
    }

    #[test]
    fn staircase_gives_one_barrier_per_riser() {
        let p = StrategyParams::new(2.0, 0.2).unwrap();
        // risers at x = 1.5 and x = 6, tall enough to stop the plan
        let chain = vec![
            Point::new(-1.0, 0.0),
            Point::new(1.5, 0.0),
            Point::new(1.5 + 1e-6, 3.0),
            Point::new(6.0, 3.0),
            Point::new(6.0 + 1e-6, 12.0),
            Point::new(50.0, 12.0),
        ];
        let t = Terrain::monotone(chain).unwrap();
        let reduced = barrier_core_reduce(&p, &t, 8).unwrap();
        let TerrainKind::Barriers(bs) = reduced.kind() else { panic!() };
        assert_eq!(bs.len(), 2);
        assert!((bs[0].x - 1.5).abs() < 1e-5 && (bs[1].x - 6.0).abs() < 1e-5);
        assert!(bs[1].height >= bs[0].height);
    }
}
