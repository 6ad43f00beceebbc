//! Interval arithmetic and the `d_theta` distance.
//!
//! `cargo run --example metric`

use interval_robust::{add, d_theta, scale, to_plane, Interval, Theta};

fn main() -> interval_robust::Result<()> {
    let a = Interval::new(1.0, 3.0)?;
    let b = Interval::from_mid_spr(5.0, 0.5)?;

    println!("a = {a} (mid {}, spr {})", a.mid(), a.spr());
    println!("b = {b} (mid {}, spr {})", b.mid(), b.spr());
    println!("a + b = {}", add(&a, &b)?);
    println!("-2 * a = {}", scale(-2.0, &a)?);

    for t in [0.25, 1.0, 3.0] {
        let theta = Theta::new(t)?;
        // same number two ways: the metric, and Euclidean distance in the plane
        let plane = to_plane(&a, theta).distance(&to_plane(&b, theta));
        println!(
            "theta {t:>4}: d = {:.6}  plane = {plane:.6}",
            d_theta(&a, &b, theta)
        );
    }
    Ok(())
}
