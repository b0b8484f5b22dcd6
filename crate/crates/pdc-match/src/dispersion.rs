//! Group delays (inverse group velocities) derived from the dispersion sets.
//!
//! The group index is `n_g = n - L dn/dL`; the group delay per unit length
//! is `n_g / c`.  Derivatives of averaged indices are the averages of the
//! per-set derivatives.

use serde::Serialize;

use crate::error::Result;
use crate::materials::{Axis, MaterialRecord};

/// Vacuum speed of light in m/s.
pub const SPEED_OF_LIGHT_M_PER_S: f64 = 299_792_458.0;

/// Group delay per unit length at one wavelength on one axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupDelay {
    /// s/m; equals group index / c.
    pub value_s_per_m: f64,
    pub lambda_um: f64,
    pub axis: Axis,
    pub material_id: String,
}

/// dn/dL of the (averaged) index, in 1/um.
pub fn dn_dlambda(
    material: &MaterialRecord,
    axis: Axis,
    lambda_um: f64,
    temperature_k: f64,
) -> Result<f64> {
    material.dn_dlambda(axis, lambda_um, temperature_k)
}

/// Group index `n - L dn/dL`.
pub fn group_index(
    material: &MaterialRecord,
    axis: Axis,
    lambda_um: f64,
    temperature_k: f64,
) -> Result<f64> {
    let n = material.refractive_index(axis, lambda_um, temperature_k)?;
    let dn = material.dn_dlambda(axis, lambda_um, temperature_k)?;
    Ok(n - lambda_um * dn)
}

pub fn group_delay(
    material: &MaterialRecord,
    axis: Axis,
    lambda_um: f64,
    temperature_k: f64,
) -> Result<GroupDelay> {
    let ng = group_index(material, axis, lambda_um, temperature_k)?;
    Ok(GroupDelay {
        value_s_per_m: ng / SPEED_OF_LIGHT_M_PER_S,
        lambda_um,
        axis,
        material_id: material.id.clone(),
    })
}
