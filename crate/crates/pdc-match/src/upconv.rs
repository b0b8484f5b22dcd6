//! Seeded difference-frequency up-conversion of mid-infrared photons to
//! detector-friendly wavelengths.
//!
//! The seed acts as the pump of a type-0 parametric interaction,
//! `1/seed = 1/output + 1/mid_ir`, so the mid-infrared photon is shifted to
//! `output = (1/seed - 1/mid_ir)^-1`; the required grating is the type-0
//! quasi-phase-matching period at that triple.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::materials::{MaterialRecord, PmType};
use crate::phasematch::{self, MatchSolution};

/// Silicon SPAD band, um (lower-inclusive).
pub const SI_SPAD_BAND_UM: (f64, f64) = (0.7, 0.9);
/// InGaAs band, um (lower-inclusive).
pub const INGAAS_BAND_UM: (f64, f64) = (1.5, 1.7);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DetectorBand {
    #[serde(rename = "si_spad")]
    SiSpad,
    #[serde(rename = "ingaas")]
    InGaAs,
    #[serde(rename = "none")]
    None,
}

/// Half-open, lower-inclusive interval classification.
pub fn classify_detector_band(output_um: f64) -> DetectorBand {
    if output_um >= SI_SPAD_BAND_UM.0 && output_um < SI_SPAD_BAND_UM.1 {
        DetectorBand::SiSpad
    } else if output_um >= INGAAS_BAND_UM.0 && output_um < INGAAS_BAND_UM.1 {
        DetectorBand::InGaAs
    } else {
        DetectorBand::None
    }
}

fn ser_finite_or_null<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_some(v)
    } else {
        s.serialize_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UpconversionSolution {
    pub material_id: String,
    pub mid_ir_um: f64,
    pub seed_um: f64,
    pub output_um: f64,
    /// Signed type-0 grating period, um.
    #[serde(serialize_with = "ser_finite_or_null")]
    pub grating_period_um: f64,
    pub detector_band: DetectorBand,
    /// The converted wavelength sits inside the crystal window.
    pub output_within_transparency: bool,
    /// Seed, output and mid-IR all inside the crystal window.
    pub within_transparency: bool,
}

fn build(
    material: &MaterialRecord,
    seed_um: f64,
    mid_ir_um: f64,
    output_um: f64,
    temperature_k: f64,
) -> Result<UpconversionSolution> {
    let config = material.config(PmType::Type0)?;
    // pump = seed, signal = output, idler = mid-IR (roles normalise if the
    // output lands beyond the mid-IR wavelength)
    let solution: MatchSolution =
        phasematch::solve_period(material, config, seed_um, output_um, temperature_k)?;
    debug_assert!(
        (solution.triple.idler_um - mid_ir_um).abs() < 1e-9 * mid_ir_um
            || (solution.triple.signal_um - mid_ir_um).abs() < 1e-9 * mid_ir_um
    );
    Ok(UpconversionSolution {
        material_id: material.id.clone(),
        mid_ir_um,
        seed_um,
        output_um,
        grating_period_um: solution.grating_period_um,
        detector_band: classify_detector_band(output_um),
        output_within_transparency: material.within_transparency(output_um),
        within_transparency: solution.feasibility.within_transparency,
    })
}

/// Convert `mid_ir_um` with a given seed.
pub fn upconvert(
    material: &MaterialRecord,
    seed_um: f64,
    mid_ir_um: f64,
    temperature_k: f64,
) -> Result<UpconversionSolution> {
    if !(seed_um > 0.0) {
        return Err(Error::domain(format!("seed wavelength {seed_um} um is not positive")));
    }
    if !(seed_um < mid_ir_um) {
        return Err(Error::domain(format!(
            "seed ({seed_um} um) must be below the mid-IR wavelength ({mid_ir_um} um)"
        )));
    }
    let output_um = 1.0 / (1.0 / seed_um - 1.0 / mid_ir_um);
    build(material, seed_um, mid_ir_um, output_um, temperature_k)
}

/// Seed required to land the converted photon on `target_output_um`.
pub fn seed_for_target(
    material: &MaterialRecord,
    mid_ir_um: f64,
    target_output_um: f64,
    temperature_k: f64,
) -> Result<UpconversionSolution> {
    if !(target_output_um > 0.0) {
        return Err(Error::domain("target wavelength must be positive".to_string()));
    }
    if !(target_output_um < mid_ir_um) {
        return Err(Error::domain(format!(
            "target output ({target_output_um} um) must be below the mid-IR wavelength ({mid_ir_um} um)"
        )));
    }
    let seed_um = 1.0 / (1.0 / target_output_um + 1.0 / mid_ir_um);
    build(material, seed_um, mid_ir_um, target_output_um, temperature_k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::bundled_database;
    use approx::assert_relative_eq;

    #[test]
    fn gap_seed_1250_shifts_6028_into_the_ingaas_band() {
        let db = bundled_database();
        let gap = db.get("OPGaP").unwrap();
        let sol = upconvert(gap, 1.250, 6.028, 300.0).unwrap();
        // arithmetic oracle: 1/(1/1.250 - 1/6.028)
        assert_relative_eq!(sol.output_um, 1.5770197, max_relative = 1e-6);
        assert_eq!(sol.detector_band, DetectorBand::InGaAs);
        assert!(sol.grating_period_um.is_finite());
        assert!(sol.output_within_transparency);
    }

    #[test]
    fn ppln_seed_660_shifts_3000_into_the_si_spad_band() {
        let db = bundled_database();
        let ppln = db.get("PPLN").unwrap();
        let sol = upconvert(ppln, 0.660, 3.000, 300.0).unwrap();
        assert_relative_eq!(sol.output_um, 0.8461538, max_relative = 1e-6);
        assert_eq!(sol.detector_band, DetectorBand::SiSpad);
    }

    #[test]
    fn seed_must_be_strictly_below_the_mid_ir_wavelength() {
        let db = bundled_database();
        let ppln = db.get("PPLN").unwrap();
        assert!(upconvert(ppln, 2.0, 2.0, 300.0).is_err());
        assert!(upconvert(ppln, 2.5, 2.0, 300.0).is_err());
    }

    #[test]
    fn seed_solver_reproduces_known_targets() {
        let db = bundled_database();
        let gap = db.get("OPGaP").unwrap();
        let sol = seed_for_target(gap, 6.028, 1.550, 300.0).unwrap();
        assert_relative_eq!(sol.seed_um, 1.2329638, max_relative = 1e-6);

        let ppln = db.get("PPLN").unwrap();
        let sol = seed_for_target(ppln, 5.000, 0.760, 300.0).unwrap();
        assert_relative_eq!(sol.seed_um, 0.6597222, max_relative = 1e-6);
        assert_eq!(sol.detector_band, DetectorBand::SiSpad);
    }

    #[test]
    fn seed_solver_inverts_upconvert() {
        let db = bundled_database();
        let gap = db.get("OPGaP").unwrap();
        let forward = upconvert(gap, 1.31, 7.0, 300.0).unwrap();
        let back = seed_for_target(gap, 7.0, forward.output_um, 300.0).unwrap();
        assert_relative_eq!(back.seed_um, 1.31, max_relative = 1e-12);
    }

    #[test]
    fn energy_relation_holds_on_solutions() {
        let db = bundled_database();
        let gap = db.get("OPGaP").unwrap();
        let sol = upconvert(gap, 1.2, 6.5, 300.0).unwrap();
        let residual =
            1.0 / sol.seed_um - 1.0 / sol.output_um - 1.0 / sol.mid_ir_um;
        assert!((residual * sol.seed_um).abs() <= 1e-12);
        assert!(sol.seed_um < sol.output_um && sol.output_um < sol.mid_ir_um);
    }

    #[test]
    fn band_boundaries_classify_lower_inclusive() {
        assert_eq!(classify_detector_band(0.7), DetectorBand::SiSpad);
        assert_eq!(classify_detector_band(0.9), DetectorBand::None);
        assert_eq!(classify_detector_band(1.5), DetectorBand::InGaAs);
        assert_eq!(classify_detector_band(1.7), DetectorBand::None);
        assert_eq!(classify_detector_band(1.0), DetectorBand::None);
    }

    #[test]
    fn chalcopyrites_without_gratings_are_rejected() {
        let db = bundled_database();
        let zgp = db.get("ZGP").unwrap();
        assert!(matches!(
            upconvert(zgp, 2.0, 8.0, 300.0),
            Err(crate::Error::MissingConfig { .. })
        ));
    }

    #[test]
    fn output_beyond_the_window_is_flagged_not_fatal() {
        let db = bundled_database();
        let gaas = db.get("OPGaAs").unwrap();
        // mid-IR photon beyond the 15 um window but still inside the fitted
        // dispersion range: evaluation succeeds, the window flag clears
        let sol = upconvert(gaas, 2.0, 15.5, 300.0).unwrap();
        assert!(!sol.within_transparency);
        assert!(sol.output_within_transparency);
    }
}
