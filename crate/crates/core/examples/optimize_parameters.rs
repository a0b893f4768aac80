//! Narrows the parameter box, then balances and minimizes over `r`.

use raysearch::optimizer::{narrow_box, optimize, DEFAULT_TARGET, OUTER_TOL};

fn main() -> raysearch::Result<()> {
    let n = narrow_box(DEFAULT_TARGET)?;
    let b = n.bounds;
    println!("box for target {DEFAULT_TARGET}: r in [{:.6}, {:.6}], alpha in [{:.6}, {:.6}]", b.r_lo, b.r_hi, b.alpha_lo, b.alpha_hi);

    let res = optimize(OUTER_TOL)?;
    println!("{} outer evaluations", res.trace.len());
    println!("r* = {:.9}", res.r_star);
    println!("alpha* = {:.9}", res.alpha_star);
    println!("c* = {:.9} (interior maximum at beta {:.12})", res.c_star, res.beta_interior);
    Ok(())
}
