//! Collinear wave-vector mismatch and grating-period solving.
//!
//! For a pump/signal/idler triple on the axes of a phase-matching
//! configuration the mismatch is
//! `dk = 2 pi (n_p/L_p - n_s/L_s - n_i/L_i - 1/Lambda)`;
//! the first-order grating period (or equivalent birefringently matched
//! length) is the `Lambda` that nulls it.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gvm::{self, Regime};
use crate::materials::{Axis, MaterialRecord, PhaseMatchConfig};

/// Mismatch magnitudes below this (1/um) count as exact birefringent
/// matching and report the infinite-period sentinel.
pub const EXACT_MATCH_EPS_PER_UM: f64 = 1e-12;

/// Energy-conservation partner of a pump/signal pair.
pub fn idler_wavelength(pump_um: f64, signal_um: f64) -> Result<f64> {
    if !(pump_um > 0.0) || !pump_um.is_finite() {
        return Err(Error::domain(format!("pump wavelength {pump_um} um is not positive")));
    }
    if !(signal_um > pump_um) {
        return Err(Error::domain(format!(
            "signal ({signal_um} um) must be longer than the pump ({pump_um} um); no real idler"
        )));
    }
    Ok(1.0 / (1.0 / pump_um - 1.0 / signal_um))
}

/// Pump/signal/idler wavelengths bound by energy conservation, normalised
/// so that `signal_um <= idler_um`.  `swapped` records that the caller's
/// requested signal was the longer photon; axis assignment honours it for
/// type-II configurations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WavelengthTriple {
    pub pump_um: f64,
    pub signal_um: f64,
    pub idler_um: f64,
    pub swapped: bool,
}

impl WavelengthTriple {
    pub fn from_pump_signal(pump_um: f64, signal_um: f64) -> Result<Self> {
        let partner = idler_wavelength(pump_um, signal_um)?;
        if partner >= signal_um {
            Ok(WavelengthTriple {
                pump_um,
                signal_um,
                idler_um: partner,
                swapped: false,
            })
        } else {
            Ok(WavelengthTriple {
                pump_um,
                signal_um: partner,
                idler_um: signal_um,
                swapped: true,
            })
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.signal_um == self.idler_um
    }

    /// Residual of `1/L_p - 1/L_s - 1/L_i`, relative to `1/L_p`.
    pub fn energy_residual_rel(&self) -> f64 {
        let lhs = 1.0 / self.pump_um;
        (lhs - 1.0 / self.signal_um - 1.0 / self.idler_um) / lhs
    }

    /// Axes for (pump, photon at `signal_um`, photon at `idler_um`).
    pub fn axes(&self, config: &PhaseMatchConfig) -> (Axis, Axis, Axis) {
        if self.swapped {
            (config.pump_axis, config.idler_axis, config.signal_axis)
        } else {
            (config.pump_axis, config.signal_axis, config.idler_axis)
        }
    }
}

/// Feasibility flags; masking never blocks a solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Feasibility {
    pub within_transparency: bool,
    pub pump_above_tpa: bool,
    pub birefringent_qpm_possible: bool,
}

fn ser_finite_or_null<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_some(v)
    } else {
        s.serialize_none()
    }
}

/// A solved phase-matching point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchSolution {
    pub material_id: String,
    pub config: PhaseMatchConfig,
    pub triple: WavelengthTriple,
    /// Signed first-order grating period in um; negative means reversed
    /// domain orientation, non-finite is the exact-birefringent sentinel
    /// (serialised as null).
    #[serde(serialize_with = "ser_finite_or_null")]
    pub grating_period_um: f64,
    pub delta_k_residual_rad_per_um: f64,
    /// Dispersion parameter; NaN (null in JSON) in the singular regime.
    #[serde(serialize_with = "ser_finite_or_null")]
    pub d: f64,
    /// Group-velocity-matching angle in degrees, `(-90, 90]`.
    #[serde(serialize_with = "ser_finite_or_null")]
    pub theta_deg: f64,
    pub regime: Regime,
    pub feasibility: Feasibility,
    pub temperature_k: f64,
}

/// Wave-vector mismatch in rad/um; the grating term is omitted when
/// `grating_period_um` is `None`.
pub fn delta_k(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    triple: &WavelengthTriple,
    grating_period_um: Option<f64>,
    temperature_k: f64,
) -> Result<f64> {
    let (pump_axis, signal_axis, idler_axis) = triple.axes(config);
    let n_p = material.refractive_index(pump_axis, triple.pump_um, temperature_k)?;
    let n_s = material.refractive_index(signal_axis, triple.signal_um, temperature_k)?;
    let n_i = material.refractive_index(idler_axis, triple.idler_um, temperature_k)?;
    let mut mismatch =
        n_p / triple.pump_um - n_s / triple.signal_um - n_i / triple.idler_um;
    if let Some(period) = grating_period_um {
        mismatch -= 1.0 / period; // 1/inf = 0: the sentinel removes the grating
    }
    Ok(std::f64::consts::TAU * mismatch)
}

/// Solve the grating period nulling the mismatch and attach the
/// group-velocity-matching data and feasibility flags.
pub fn solve_period(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    pump_um: f64,
    signal_um: f64,
    temperature_k: f64,
) -> Result<MatchSolution> {
    let triple = WavelengthTriple::from_pump_signal(pump_um, signal_um)?;
    solve_for_triple(material, config, &triple, temperature_k)
}

/// As `solve_period`, for a caller-constructed triple (used to pin a
/// specific daughter-role assignment).
pub fn solve_for_triple(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    triple: &WavelengthTriple,
    temperature_k: f64,
) -> Result<MatchSolution> {
    let triple = *triple;
    let mismatch = delta_k(material, config, &triple, None, temperature_k)?
        / std::f64::consts::TAU;
    let grating_period_um = if mismatch.abs() < EXACT_MATCH_EPS_PER_UM {
        f64::INFINITY
    } else {
        1.0 / mismatch
    };
    let delta_k_residual =
        delta_k(material, config, &triple, Some(grating_period_um), temperature_k)?;
    let gvm_point = gvm::dispersion_parameter(material, config, &triple, temperature_k)?;

    let birefringent_qpm_possible = if !grating_period_um.is_finite() {
        true
    } else {
        match material.birefringent_qpm_threshold_um {
            Some(threshold) => grating_period_um.abs() >= threshold,
            None => false,
        }
    };
    let feasibility = Feasibility {
        within_transparency: material.within_transparency(triple.pump_um)
            && material.within_transparency(triple.signal_um)
            && material.within_transparency(triple.idler_um),
        pump_above_tpa: material.pump_above_tpa(triple.pump_um),
        birefringent_qpm_possible,
    };
    Ok(MatchSolution {
        material_id: material.id.clone(),
        config: *config,
        triple,
        grating_period_um,
        delta_k_residual_rad_per_um: delta_k_residual,
        d: gvm_point.d,
        theta_deg: gvm_point.theta_deg,
        regime: gvm_point.regime,
        feasibility,
        temperature_k,
    })
}
