//! Seeded difference-frequency up-conversion: shift mid-infrared photons
//! into the silicon-SPAD or InGaAs detector bands and solve the type-0
//! grating that phase-matches the process.
//!
//! Run with: cargo run --example upconversion

use pdc_match::materials::bundled_database;
use pdc_match::upconv::{seed_for_target, upconvert};

fn main() -> Result<(), pdc_match::Error> {
    let db = bundled_database();
    let gap = db.get("OPGaP")?;
    let ppln = db.get("PPLN")?;

    println!("mid-IR photons from the chalcopyrite operating points, 1.25 um seed in OP-GaP:");
    for mid_ir in [6.028, 6.620, 7.384] {
        let sol = upconvert(gap, 1.250, mid_ir, 300.0)?;
        println!(
            "  {:5.3} um -> {:.4} um  band {:?}  grating {:7.2} um",
            sol.mid_ir_um, sol.output_um, sol.detector_band, sol.grating_period_um
        );
    }

    println!("\n3-5 um band to the silicon-SPAD region, 660 nm seed in PPLN:");
    for mid_ir in [3.0, 4.0, 5.0] {
        let sol = upconvert(ppln, 0.660, mid_ir, 300.0)?;
        println!(
            "  {:5.3} um -> {:.4} um  band {:?}  grating {:7.2} um",
            sol.mid_ir_um, sol.output_um, sol.detector_band, sol.grating_period_um
        );
    }

    println!("\ninverse problem: which seed lands 6.028 um exactly on 1.55 um?");
    let sol = seed_for_target(gap, 6.028, 1.550, 300.0)?;
    println!(
        "  seed {:.4} um, grating {:.2} um, band {:?}",
        sol.seed_um, sol.grating_period_um, sol.detector_band
    );
    Ok(())
}
