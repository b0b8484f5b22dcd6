//! A pump x signal survey map: masks, iso-theta loci and deterministic
//! CSV/JSON export.
//!
//! Run with: cargo run --example grid_map

use pdc_match::materials::{bundled_database, PmType};
use pdc_match::sweep::{self, CellMask};

fn main() -> Result<(), pdc_match::Error> {
    let db = bundled_database();
    let ktp = db.get("PPKTP")?;
    let cfg = ktp.config(PmType::TypeII)?;

    let map = sweep::scan(ktp, cfg, (0.7, 1.3), (0.9, 3.0), 128, 300.0, &db.version)?;

    let mut counts = std::collections::BTreeMap::new();
    for &mask in &map.mask {
        *counts.entry(mask.as_str()).or_insert(0usize) += 1;
    }
    println!("PPKTP type-II map, 128x128 cells over 0.7-1.3 x 0.9-3.0 um:");
    for (mask, count) in counts {
        println!("  {mask:28} {count}");
    }

    println!("\nextracted loci:");
    for line in &map.loci {
        println!(
            "  {:12} target {:?} deg, {} vertices",
            line.name,
            line.theta_target_deg,
            line.points.len()
        );
    }

    // nearest theta=45 vertex to the known 791 nm degenerate point
    let nearest = map
        .loci
        .iter()
        .filter(|l| l.theta_target_deg == Some(45.0))
        .flat_map(|l| l.points.iter())
        .map(|&(p, s)| (((p - 0.791).powi(2) + (s - 1.582).powi(2)).sqrt(), p, s))
        .min_by(|a, b| a.0.total_cmp(&b.0));
    if let Some((d, p, s)) = nearest {
        println!("\ntheta=45 vertex nearest (0.791, 1.582): ({p:.4}, {s:.4}), {:.1} nm away", d * 1000.0);
    }

    let out = std::env::temp_dir().join("ppktp-type2-map.csv");
    sweep::export_csv(&map, &out)?;
    println!("\nwrote {} (+ {}.loci.csv)", out.display(), out.with_extension("").display());

    let ok = map.mask.iter().filter(|&&m| m == CellMask::Ok).count();
    println!("{ok} of {} cells carry finite theta and |grating|", map.mask.len());
    Ok(())
}
