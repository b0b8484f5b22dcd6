//! Walk the bundled crystal database: window limits, allowed
//! phase-matching configurations and the dispersion sets behind each axis.
//!
//! Run with: cargo run --example materials_catalog

use pdc_match::materials::bundled_database;

fn main() {
    let db = bundled_database();
    println!("database version {}\n", db.version);

    for m in &db.materials {
        println!(
            "{:8} {:12}  window {:.2}-{:.2} um, TPA edge {:.2} um, poleable {}",
            m.id,
            format!("{:?}", m.crystal_class),
            m.transparency_um.0,
            m.transparency_um.1,
            m.tpa_edge_um,
            m.poleable,
        );
        for cfg in &m.configs {
            println!(
                "  {:7} {} -> {} + {}   d_eff {:.1} pm/V",
                cfg.pm_type.to_string(),
                cfg.pump_axis,
                cfg.signal_axis,
                cfg.idler_axis,
                cfg.d_eff_max_pm_per_v
            );
        }
        for (axis, forms) in &m.axes {
            for f in forms {
                println!(
                    "  {axis}: {:?} [{}] valid {:.2}-{:.2} um{}",
                    f.form_id,
                    f.source_tag,
                    f.valid_range_um.0,
                    f.valid_range_um.1,
                    if f.temperature_dependent { ", T-dependent" } else { "" }
                );
            }
        }
        println!();
    }
}
