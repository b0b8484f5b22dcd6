//! Run the full survey: export every per-crystal map and check the built-in
//! reference operating points, writing a machine-readable summary.
//!
//! Run with: cargo run --release --example reproduce_survey [-- <out_dir> [resolution]]

use pdc_match::cli::reproduce_all;
use pdc_match::materials::bundled_database;

fn main() -> Result<(), pdc_match::Error> {
    let mut args = std::env::args().skip(1);
    let out_dir = std::path::PathBuf::from(args.next().unwrap_or_else(|| "out".into()));
    let resolution: usize = args
        .next()
        .and_then(|s| s.parse().ok())
        .unwrap_or(192);

    let db = bundled_database();
    let summary = reproduce_all(&db, &out_dir, resolution, 300.0)?;

    println!("maps ({}x{} cells each):", resolution, resolution);
    for map in &summary.maps {
        println!(
            "  {:16} {:7} ok cells, {} loci -> {}",
            map.name, map.ok_cells, map.loci, map.path
        );
    }
    println!("\nreference checks:");
    for check in &summary.checks {
        println!(
            "  [{}] {:45} expected {:>12.5}  computed {}",
            if check.passed { "pass" } else { "FAIL" },
            check.name,
            check.expected,
            check
                .computed
                .map(|v| format!("{v:>12.5}"))
                .unwrap_or_else(|| "-".into()),
        );
    }
    println!(
        "\n{} of {} checks passed; summary at {}",
        summary.checks.iter().filter(|c| c.passed).count(),
        summary.checks.len(),
        out_dir.join("summary.json").display()
    );
    if !summary.all_passed {
        std::process::exit(1);
    }
    Ok(())
}
