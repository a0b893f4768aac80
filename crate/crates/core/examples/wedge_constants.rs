use raysearch::terrain::{dist_to_r_gamma, minimal_slope, r_gamma_factor, slope_l_limit, w2_margin, wedge_constants};
use raysearch::TurnIndex;

fn main() -> raysearch::Result<()> {
    let p = raysearch::near_optimal();
    println!("minimal return slope {:.12}", minimal_slope(&p));
    println!("limit slope of l     {:.12}", slope_l_limit(&p));
    let delta = 71f64.to_radians();
    for i in [2, 5, 10, 20, 40] {
        let t = TurnIndex::new(i)?;
        let w = wedge_constants(&p, t)?;
        println!(
            "i={i:>2} gamma {:.6} delta {:.6} P1 ({:.4}, {:.4}) margin {:.6} dist {:.4} factor {:.6}",
            w.gamma,
            w.delta,
            w.p1.x,
            w.p1.y,
            w2_margin(&p, t, delta)?,
            dist_to_r_gamma(&p, t)?,
            r_gamma_factor(&p, t)?
        );
    }
    Ok(())
}
