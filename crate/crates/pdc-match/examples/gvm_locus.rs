//! Group-velocity-matched operating points: degenerate scans for the
//! asymmetric (theta = 0, 90) and symmetric (theta = 45) conditions, and a
//! fixed-pump signal scan.
//!
//! Run with: cargo run --example gvm_locus

use pdc_match::gvm::{find_degenerate_locus, find_nondegenerate_locus};
use pdc_match::materials::{bundled_database, PmType};
use pdc_match::MatchSolution;

fn show(sol: &MatchSolution) {
    println!(
        "  pump {:7.4} um -> {:7.4} + {:7.4} um ({} -> {} + {})  theta {:6.2} deg  |L| {:9.1} um",
        sol.triple.pump_um,
        sol.triple.signal_um,
        sol.triple.idler_um,
        sol.config.pump_axis,
        sol.config.signal_axis,
        sol.config.idler_axis,
        sol.theta_deg,
        sol.grating_period_um.abs(),
    );
}

fn main() -> Result<(), pdc_match::Error> {
    let db = bundled_database();

    println!("PPKTP type-II, degenerate symmetric point (indistinguishable pair):");
    let ktp = db.get("PPKTP")?;
    let cfg = ktp.config(PmType::TypeII)?;
    for sol in find_degenerate_locus(ktp, cfg, 45.0, (0.70, 0.90), 300.0)? {
        show(&sol);
    }

    println!("\nPPKTP type-II, degenerate asymmetric point (pure heralds):");
    for sol in find_degenerate_locus(ktp, cfg, 0.0, (1.00, 1.50), 300.0)? {
        show(&sol);
    }

    println!("\nCSP type-II, both asymmetric points land in one scan (the two");
    println!("daughter-role assignments mirror the angle):");
    let csp = db.get("CSP")?;
    for sol in find_degenerate_locus(csp, csp.config(PmType::TypeII)?, 0.0, (1.8, 3.8), 300.0)? {
        show(&sol);
    }

    println!("\nZGP type-II, symmetric mid-band point:");
    let zgp = db.get("ZGP")?;
    for sol in find_degenerate_locus(zgp, zgp.config(PmType::TypeII)?, 45.0, (2.6, 3.4), 300.0)? {
        show(&sol);
    }

    println!("\nKTP fixed 745.6 nm pump, theta = 45 signal roots in 0.9-1.2 um:");
    for sol in find_nondegenerate_locus(ktp, cfg, 45.0, 0.7456, (0.90, 1.20), 300.0)? {
        show(&sol);
    }

    println!("\nPPLN type-I degenerate scan returns the singular pinch point,");
    println!("where the asymmetric contours terminate on the degeneracy line:");
    let ppln = db.get("PPLN")?;
    for sol in find_degenerate_locus(ppln, ppln.config(PmType::TypeI)?, 0.0, (0.70, 0.90), 300.0)? {
        println!(
            "  pump {:7.4} um -> {:7.4} um x2, regime {:?}",
            sol.triple.pump_um, sol.triple.signal_um, sol.regime
        );
    }
    Ok(())
}
