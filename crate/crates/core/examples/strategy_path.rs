//! Builds an explicit strategy path and prints its turning points.

use raysearch::strategy::{arc_length_to_turn, axis_height, build_path, turning_point};
use raysearch::TurnIndex;

fn main() -> raysearch::Result<()> {
    let p = raysearch::near_optimal();
    let path = build_path(&p, 8)?;
    println!("{} vertices, total length {:.6}", path.len(), path.total_length());
    println!("{:>4} {:>14} {:>14} {:>14} {:>14}", "i", "x", "y", "axis height", "arc length");
    for i in 1..=8 {
        let t = turning_point(&p, TurnIndex::new(i)?);
        println!(
            "{i:>4} {:>14.6} {:>14.6} {:>14.6} {:>14.6}",
            t.x,
            t.y,
            axis_height(&p, i),
            arc_length_to_turn(&p, i)
        );
    }
    Ok(())
}
