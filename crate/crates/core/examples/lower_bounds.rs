//! Triangle and circle-avoiding lower bounds, with the explicit construction.

use raysearch::lowerbound::{circle_bound, circle_construction, lower_bound, triangle_bound, ArcAngle, DEFAULT_P_COEFF};

fn main() -> raysearch::Result<()> {
    println!("triangle bound at d_y = 1: {:.9}", triangle_bound(1.0, DEFAULT_P_COEFF)?);
    println!("circle bound R(1):         {:.9}", lower_bound()?);
    for d in [0.25, 0.5, 0.75, 1.0] {
        let c = circle_construction(d, ArcAngle::Stated)?;
        // the pieces add up to R(d_y) * d_y
        println!(
            "d_y {d:.2}: tangent {:.6} + arc {:.6} + segment {:.1} -> ratio {:.9} (closed form {:.9})",
            c.tangent_len,
            c.arc_len,
            c.horizontal_len,
            c.ratio(),
            circle_bound(d)?
        );
    }
    let exact = circle_construction(1.0, ArcAngle::Exact)?;
    println!("with the swept arc angle: {:.9}", exact.ratio());
    Ok(())
}
