//! Dispersion parameter, group-velocity-matching angle and locus finding.
//!
//! With `GD` the group delays of pump, signal and idler on their assigned
//! axes, the dispersion parameter is `D = -(GD_p - GD_s)/(GD_p - GD_i)` and
//! the matching angle is `theta = arctan(D)`.  `theta = 0` and `theta = 90`
//! are the asymmetric conditions (one group delay matched to the pump),
//! `theta = 45` the symmetric one (`D = 1`).

use serde::{Deserialize, Serialize, Serializer};

use crate::dispersion;
use crate::error::{Error, Result};
use crate::materials::{MaterialRecord, PhaseMatchConfig};
use crate::phasematch::{self, MatchSolution, WavelengthTriple};

/// Absolute tolerance on theta for regime classification, degrees.
pub const CLASSIFY_TOL_DEG: f64 = 0.5;

/// Group delays closer than this (s/m) count as matched; ~3e-8 in group
/// index, far below the spread of published dispersion sets.
pub const GD_EPS_S_PER_M: f64 = 1e-16;

/// Pre-scan step of the locus finders, um (1 nm).
pub const PRESCAN_STEP_UM: f64 = 1e-3;

/// Bisection width target of the locus finders, um (1e-4 nm).
pub const ROOT_TOL_UM: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// theta = 0: pump group-delay matched to the signal.
    #[serde(rename = "asymmetric_zero")]
    AsymmetricZero,
    /// theta = 45: D = 1.
    #[serde(rename = "symmetric")]
    Symmetric,
    /// |theta| = 90: pump group-delay matched to the idler.
    #[serde(rename = "asymmetric_ninety")]
    AsymmetricNinety,
    #[serde(rename = "generic")]
    Generic,
    /// Both group-delay differences vanish (degenerate type-0/type-I).
    #[serde(rename = "singular")]
    Singular,
}

fn ser_finite_or_null<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_some(v)
    } else {
        s.serialize_none()
    }
}

/// Dispersion parameter and matching angle at one triple.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GvmPoint {
    pub triple: WavelengthTriple,
    /// NaN in the singular regime, +inf on the `theta = 90` boundary.
    #[serde(serialize_with = "ser_finite_or_null")]
    pub d: f64,
    /// Degrees in `(-90, 90]`; 90 represents the `D -> inf` limit; NaN when
    /// singular.
    #[serde(serialize_with = "ser_finite_or_null")]
    pub theta_deg: f64,
    pub regime: Regime,
}

/// Classification from the raw group delays (s/m).
pub(crate) fn classify(gd_pump: f64, gd_signal: f64, gd_idler: f64) -> (f64, f64, Regime) {
    let num = gd_pump - gd_signal;
    let den = gd_pump - gd_idler;
    if num.abs() <= GD_EPS_S_PER_M && den.abs() <= GD_EPS_S_PER_M {
        return (f64::NAN, f64::NAN, Regime::Singular);
    }
    if den.abs() <= GD_EPS_S_PER_M {
        return (f64::INFINITY, 90.0, Regime::AsymmetricNinety);
    }
    let d = -num / den;
    let theta = d.atan().to_degrees();
    let regime = if theta.abs() <= CLASSIFY_TOL_DEG {
        Regime::AsymmetricZero
    } else if (theta - 45.0).abs() <= CLASSIFY_TOL_DEG {
        Regime::Symmetric
    } else if (theta.abs() - 90.0).abs() <= CLASSIFY_TOL_DEG {
        Regime::AsymmetricNinety
    } else {
        Regime::Generic
    };
    (d, theta, regime)
}

/// Group delays ordered by role: pump, then the photon carrying the
/// caller's signal designation, then its partner.  With the swap flag set
/// the designated signal is the triple's longer photon.
fn group_delays(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    triple: &WavelengthTriple,
    temperature_k: f64,
) -> Result<(f64, f64, f64)> {
    let (pump_axis, short_axis, long_axis) = triple.axes(config);
    let gd_p = dispersion::group_delay(material, pump_axis, triple.pump_um, temperature_k)?;
    let gd_short = dispersion::group_delay(material, short_axis, triple.signal_um, temperature_k)?;
    let gd_long = dispersion::group_delay(material, long_axis, triple.idler_um, temperature_k)?;
    if triple.swapped {
        Ok((gd_p.value_s_per_m, gd_long.value_s_per_m, gd_short.value_s_per_m))
    } else {
        Ok((gd_p.value_s_per_m, gd_short.value_s_per_m, gd_long.value_s_per_m))
    }
}

/// Relative wavelength separation below which signal and idler count as the
/// same photon state.
const DEGENERACY_EPS_REL: f64 = 1e-12;

/// Dispersion parameter at a triple; the singular case is reported, never a
/// crash.
pub fn dispersion_parameter(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    triple: &WavelengthTriple,
    temperature_k: f64,
) -> Result<GvmPoint> {
    let (gd_p, gd_s, gd_i) = group_delays(material, config, triple, temperature_k)?;
    // Same-axis daughters at exact degeneracy are one photon state: the
    // role split is arbitrary and theta carries no information there.
    let same_state = config.signal_axis == config.idler_axis
        && (triple.idler_um - triple.signal_um) <= DEGENERACY_EPS_REL * triple.idler_um;
    let (d, theta_deg, regime) = if same_state {
        (f64::NAN, f64::NAN, Regime::Singular)
    } else {
        classify(gd_p, gd_s, gd_i)
    };
    Ok(GvmPoint {
        triple: *triple,
        d,
        theta_deg,
        regime,
    })
}

/// What the locus pre-scan tracks for a given target angle.
enum TrackedFunction {
    /// `theta - target` on intervals free of the `|theta| = 90` pole.
    Angle(f64),
    /// `GD_p - GD_i`; its roots are the `|theta| = 90` boundary.
    Denominator,
    /// `GD_p - GD_s`; the pinch points of same-axis (type-0/I) degenerate
    /// scans, where every special contour terminates.
    Numerator,
}

fn theta_value(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    triple: &WavelengthTriple,
    temperature_k: f64,
    tracked: &TrackedFunction,
) -> Result<f64> {
    let (gd_p, gd_s, gd_i) = group_delays(material, config, triple, temperature_k)?;
    Ok(match tracked {
        TrackedFunction::Angle(target) => {
            let (_, theta, _) = classify(gd_p, gd_s, gd_i);
            theta - target
        }
        TrackedFunction::Denominator => gd_p - gd_i,
        TrackedFunction::Numerator => gd_p - gd_s,
    })
}

fn pick_tracked(config: &PhaseMatchConfig, theta_target_deg: f64, degenerate: bool) -> TrackedFunction {
    if degenerate && config.signal_axis == config.idler_axis {
        // Signal and idler share an axis: on the degeneracy line theta is
        // pinned at -45 except at the pinch points where both group-delay
        // differences vanish; those points are what a locus query means
        // there, whatever the target.
        TrackedFunction::Numerator
    } else if (theta_target_deg.abs() - 90.0).abs() < 1e-9 {
        TrackedFunction::Denominator
    } else {
        TrackedFunction::Angle(theta_target_deg)
    }
}

/// Angle samples that straddle the pole wrap (jump larger than this) are
/// never treated as brackets.
const WRAP_GUARD_DEG: f64 = 90.0;

fn bisect_root<F: Fn(f64) -> Result<f64>>(f: &F, mut a: f64, mut b: f64, fa0: f64) -> Result<f64> {
    let mut fa = fa0;
    while (b - a) > ROOT_TOL_UM {
        let mid = 0.5 * (a + b);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fa < 0.0) != (fm < 0.0) {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    Ok(0.5 * (a + b))
}

fn scan_for_roots<F: Fn(f64) -> Result<f64> + Sync>(
    f: &F,
    lo: f64,
    hi: f64,
    step: f64,
    wrap_guard: Option<f64>,
) -> Result<Vec<f64>> {
    use rayon::prelude::*;

    if !(hi > lo) {
        return Err(Error::domain(format!("empty scan range [{lo}, {hi}]")));
    }
    let n = ((hi - lo) / step).ceil() as usize;
    let n = n.max(1);
    let xs: Vec<f64> = (0..=n)
        .map(|k| if k == n { hi } else { lo + step * k as f64 })
        .collect();
    // pre-scan sampling is data-parallel; bracketing stays sequential
    let sampled: Vec<Result<f64>> = xs.par_iter().map(|&x| f(x)).collect();
    let mut values = Vec::with_capacity(sampled.len());
    for v in sampled {
        values.push(v?);
    }

    let mut roots = Vec::new();
    for k in 1..=n {
        let (prev_x, x) = (xs[k - 1], xs[k]);
        let (prev_v, v) = (values[k - 1], values[k]);
        if prev_v == 0.0 {
            roots.push(prev_x);
        } else if (prev_v < 0.0) != (v < 0.0) {
            let wrapped = wrap_guard.is_some_and(|g| (v - prev_v).abs() > g);
            if !wrapped {
                roots.push(bisect_root(f, prev_x, x, prev_v)?);
            }
        }
    }
    if values[n] == 0.0 {
        roots.push(hi);
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 10.0 * ROOT_TOL_UM);
    Ok(roots)
}

/// The same process with the daughter polarisations exchanged (the "(b)"
/// panel of a type-II survey): signal and idler axes swapped, identical
/// nonlinearity.
fn mirrored(config: &PhaseMatchConfig) -> PhaseMatchConfig {
    PhaseMatchConfig {
        signal_axis: config.idler_axis,
        idler_axis: config.signal_axis,
        ..*config
    }
}

/// Roots of `theta(pump, signal = 2 pump) = target` over a pump range, by
/// 1 nm sign-change pre-scan and bisection.
///
/// A type-II process admits two daughter-role assignments whose angles
/// mirror (`theta -> 90 - theta`); the scan covers both and reports
/// exchanged-role roots under the daughter-swapped configuration.  For
/// same-axis configurations the degeneracy line pins theta at -45 and the
/// finder returns the pinch points instead, whatever the target (every
/// special contour terminates there).  No sign change yields an empty
/// list.
pub fn find_degenerate_locus(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    theta_target_deg: f64,
    pump_range_um: (f64, f64),
    temperature_k: f64,
) -> Result<Vec<MatchSolution>> {
    find_degenerate_locus_with_step(
        material,
        config,
        theta_target_deg,
        pump_range_um,
        temperature_k,
        PRESCAN_STEP_UM,
    )
}

fn degenerate_scan(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    theta_target_deg: f64,
    pump_range_um: (f64, f64),
    temperature_k: f64,
    step_um: f64,
) -> Result<Vec<MatchSolution>> {
    let tracked = pick_tracked(config, theta_target_deg, true);
    let wrap = matches!(tracked, TrackedFunction::Angle(_)).then_some(WRAP_GUARD_DEG);
    let f = |pump: f64| -> Result<f64> {
        let triple = WavelengthTriple::from_pump_signal(pump, 2.0 * pump)?;
        theta_value(material, config, &triple, temperature_k, &tracked)
    };
    let roots = scan_for_roots(&f, pump_range_um.0, pump_range_um.1, step_um, wrap)?;
    roots
        .into_iter()
        .map(|pump| phasematch::solve_period(material, config, pump, 2.0 * pump, temperature_k))
        .collect()
}

pub fn find_degenerate_locus_with_step(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    theta_target_deg: f64,
    pump_range_um: (f64, f64),
    temperature_k: f64,
    step_um: f64,
) -> Result<Vec<MatchSolution>> {
    let mut solutions = degenerate_scan(
        material,
        config,
        theta_target_deg,
        pump_range_um,
        temperature_k,
        step_um,
    )?;
    if config.signal_axis != config.idler_axis {
        solutions.extend(degenerate_scan(
            material,
            &mirrored(config),
            theta_target_deg,
            pump_range_um,
            temperature_k,
            step_um,
        )?);
    }
    solutions.sort_by(|a, b| a.triple.pump_um.total_cmp(&b.triple.pump_um));
    solutions.dedup_by(|a, b| (a.triple.pump_um - b.triple.pump_um).abs() < 1e-5);
    Ok(solutions)
}

/// Roots of `theta(pump fixed, signal) = target` over a requested-signal
/// range.
///
/// For type-II configurations both daughter-role assignments are searched
/// (the exchanged one under the daughter-swapped configuration), so every
/// pair whose in-range daughter meets the target is reported; solutions are
/// normalised with the shorter daughter in `signal_um`.
pub fn find_nondegenerate_locus(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    theta_target_deg: f64,
    pump_um: f64,
    signal_range_um: (f64, f64),
    temperature_k: f64,
) -> Result<Vec<MatchSolution>> {
    find_nondegenerate_locus_with_step(
        material,
        config,
        theta_target_deg,
        pump_um,
        signal_range_um,
        temperature_k,
        PRESCAN_STEP_UM,
    )
}

fn nondegenerate_scan(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    theta_target_deg: f64,
    pump_um: f64,
    signal_range_um: (f64, f64),
    temperature_k: f64,
    step_um: f64,
) -> Result<Vec<MatchSolution>> {
    let tracked = pick_tracked(config, theta_target_deg, false);
    let wrap = matches!(tracked, TrackedFunction::Angle(_)).then_some(WRAP_GUARD_DEG);
    let f = |signal: f64| -> Result<f64> {
        let triple = WavelengthTriple::from_pump_signal(pump_um, signal)?;
        theta_value(material, config, &triple, temperature_k, &tracked)
    };
    let roots = scan_for_roots(&f, signal_range_um.0, signal_range_um.1, step_um, wrap)?;
    roots
        .into_iter()
        .map(|signal| phasematch::solve_period(material, config, pump_um, signal, temperature_k))
        .collect()
}

pub fn find_nondegenerate_locus_with_step(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    theta_target_deg: f64,
    pump_um: f64,
    signal_range_um: (f64, f64),
    temperature_k: f64,
    step_um: f64,
) -> Result<Vec<MatchSolution>> {
    let mut solutions = nondegenerate_scan(
        material,
        config,
        theta_target_deg,
        pump_um,
        signal_range_um,
        temperature_k,
        step_um,
    )?;
    if config.signal_axis != config.idler_axis {
        solutions.extend(nondegenerate_scan(
            material,
            &mirrored(config),
            theta_target_deg,
            pump_um,
            signal_range_um,
            temperature_k,
            step_um,
        )?);
    }
    solutions.sort_by(|a, b| a.triple.signal_um.total_cmp(&b.triple.signal_um));
    solutions.dedup_by(|a, b| {
        (a.triple.signal_um - b.triple.signal_um).abs() < 1e-5
            && a.config.signal_axis == b.config.signal_axis
    });
    Ok(solutions)
}
