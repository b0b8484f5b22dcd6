//! Group indices and group delays, and a bracketing search for the
//! wavelength where the group index bottoms out (zero group-velocity
//! dispersion).
//!
//! Run with: cargo run --example group_delay

use pdc_match::dispersion::{group_delay, group_index};
use pdc_match::materials::{bundled_database, Axis};

fn main() -> Result<(), pdc_match::Error> {
    let db = bundled_database();
    let ppln = db.get("PPLN")?;

    println!("MgO:LiNbO3 extraordinary axis at 300 K:");
    println!("{:>10} {:>12} {:>12} {:>16}", "lambda/um", "n", "n_g", "GD (s/m)");
    for lambda in [0.8, 1.064, 1.55, 1.9, 2.5, 3.5] {
        let n = ppln.refractive_index(Axis::ExtraordinaryZ, lambda, 300.0)?;
        let ng = group_index(ppln, Axis::ExtraordinaryZ, lambda, 300.0)?;
        let gd = group_delay(ppln, Axis::ExtraordinaryZ, lambda, 300.0)?;
        println!("{lambda:>10.3} {n:>12.6} {ng:>12.6} {:>16.6e}", gd.value_s_per_m);
    }

    // bisection on the slope of n_g
    let ng = |l: f64| group_index(ppln, Axis::ExtraordinaryZ, l, 300.0).unwrap();
    let slope = |l: f64| (ng(l + 5e-4) - ng(l - 5e-4)) / 1e-3;
    let (mut a, mut b) = (1.5, 2.5);
    for _ in 0..50 {
        let mid = 0.5 * (a + b);
        if slope(mid) < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    println!(
        "\ngroup-index minimum (zero-GVD wavelength): {:.4} um",
        0.5 * (a + b)
    );

    let zgp = db.get("ZGP")?;
    println!("\nZGP group delays per axis at 3.014 um (pump) and 6.028 um (daughters):");
    for (axis, lambda) in [
        (Axis::OrdinaryY, 3.014),
        (Axis::ExtraordinaryZ, 6.028),
        (Axis::OrdinaryY, 6.028),
    ] {
        let gd = group_delay(zgp, axis, lambda, 300.0)?;
        println!("  {axis} at {lambda} um: {:.9e} s/m", gd.value_s_per_m);
    }
    Ok(())
}
