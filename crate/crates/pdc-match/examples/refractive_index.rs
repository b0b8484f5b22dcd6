//! Refractive indices across the transparency window, including the
//! multi-set averaging on the KTP ordinary axis and the temperature
//! response of the lithium niobate sets.
//!
//! Run with: cargo run --example refractive_index

use pdc_match::materials::{bundled_database, Axis};

fn main() -> Result<(), pdc_match::Error> {
    let db = bundled_database();

    let ppln = db.get("PPLN")?;
    println!("MgO:LiNbO3 extraordinary axis at 300 K:");
    for lambda in [0.532, 0.8, 1.064, 1.55, 2.0, 3.0, 4.0] {
        let n = ppln.refractive_index(Axis::ExtraordinaryZ, lambda, 300.0)?;
        println!("  n({lambda:5.3} um) = {n:.6}");
    }

    println!("\ntemperature response at 1.064 um:");
    for t in [250.0, 300.0, 350.0, 400.0] {
        let n = ppln.refractive_index(Axis::ExtraordinaryZ, 1.064, t)?;
        println!("  T = {t:5.1} K  n = {n:.6}");
    }

    let ktp = db.get("PPKTP")?;
    println!("\nKTP ordinary axis: the published sets and their average at 1.064 um:");
    for form in ktp.forms(Axis::OrdinaryY)? {
        println!(
            "  {:24} n = {:.6}",
            form.source_tag,
            form.refractive_index(1.064, 300.0)
        );
    }
    println!(
        "  {:24} n = {:.6}",
        "average",
        ktp.refractive_index(Axis::OrdinaryY, 1.064, 300.0)?
    );

    println!("\nout-of-range evaluation is an error, masking is not:");
    println!("  n(PPLN, 0.2 um): {:?}", ppln.refractive_index(Axis::ExtraordinaryZ, 0.2, 300.0).err());
    println!(
        "  n(PPLN, 4.8 um) = {:.6} (beyond the 4.5 um window, still evaluable)",
        ppln.refractive_index(Axis::ExtraordinaryZ, 4.8, 300.0)?
    );
    Ok(())
}
