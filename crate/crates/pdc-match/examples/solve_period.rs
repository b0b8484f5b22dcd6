//! Grating-period solving for a few representative processes: poled-oxide
//! quasi-phase-matching, a chalcopyrite point deep in the birefringent
//! regime, and the feasibility flags on a masked configuration.
//!
//! Run with: cargo run --example solve_period

use pdc_match::materials::{bundled_database, PmType};
use pdc_match::phasematch::solve_period;

fn main() -> Result<(), pdc_match::Error> {
    let db = bundled_database();

    println!("PPLN type-0, 1.064 um -> 1.55 um + idler:");
    let ppln = db.get("PPLN")?;
    let sol = solve_period(ppln, ppln.config(PmType::Type0)?, 1.064, 1.55, 300.0)?;
    println!(
        "  idler {:.4} um, grating {:.3} um, residual {:.2e} rad/um, theta {:.2} deg",
        sol.triple.idler_um, sol.grating_period_um, sol.delta_k_residual_rad_per_um, sol.theta_deg
    );

    println!("\nCSP type-II at the degenerate symmetric point (2.573 um pump):");
    let csp = db.get("CSP")?;
    let sol = solve_period(csp, csp.config(PmType::TypeII)?, 2.573, 5.146, 300.0)?;
    println!(
        "  |grating| {:.0} um (threshold {:?} um) -> birefringent QPM possible: {}",
        sol.grating_period_um.abs(),
        csp.birefringent_qpm_threshold_um,
        sol.feasibility.birefringent_qpm_possible
    );
    println!("  D = {:.4}, theta = {:.3} deg, regime {:?}", sol.d, sol.theta_deg, sol.regime);

    println!("\nZGP pumped below its two-photon edge (flagged, not rejected):");
    let zgp = db.get("ZGP")?;
    let sol = solve_period(zgp, zgp.config(PmType::TypeII)?, 1.5, 3.0, 300.0)?;
    println!(
        "  pump above TPA: {}, within window: {}, grating {:.2} um",
        sol.feasibility.pump_above_tpa, sol.feasibility.within_transparency, sol.grating_period_um
    );

    println!("\ntype-II daughter roles matter (PPLN, 1.064 um pump):");
    let cfg = ppln.config(PmType::TypeII)?;
    let a = solve_period(ppln, cfg, 1.064, 1.55, 300.0)?;
    let b = solve_period(ppln, cfg, 1.064, a.triple.idler_um, 300.0)?;
    println!(
        "  extraordinary daughter at 1.55 um: grating {:.3} um",
        a.grating_period_um
    );
    println!(
        "  extraordinary daughter at {:.3} um: grating {:.3} um",
        b.triple.idler_um, b.grating_period_um
    );
    Ok(())
}
