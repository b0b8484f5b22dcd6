//! Error taxonomy shared across the crate.
//!
//! Parse and validation failures are raised while loading the material
//! database; domain errors are raised by evaluation (a wavelength outside
//! every fitted range, an unphysical wavelength pair).  Transparency and
//! two-photon-absorption limits are *not* errors: they surface as
//! feasibility flags on solutions.

use crate::materials::{Axis, PmType};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read '{path}': {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// The file does not match the documented schema.
    #[error("database parse error: {0}")]
    Parse(String),

    /// The file parsed but a record violates an invariant.
    #[error("invalid material '{material}': {reason}")]
    Validation { material: String, reason: String },

    #[error("unknown material '{0}'")]
    UnknownMaterial(String),

    #[error("material '{material}' has no {axis} axis")]
    MissingAxis { material: String, axis: Axis },

    #[error("material '{material}' has no {pm_type} configuration")]
    MissingConfig { material: String, pm_type: PmType },

    /// Wavelength outside the union of fitted ranges for an axis.
    #[error(
        "wavelength {lambda_um} um outside the evaluable range \
         [{lo_um}, {hi_um}] um of {material}/{axis}"
    )]
    WavelengthOutOfRange {
        material: String,
        axis: Axis,
        lambda_um: f64,
        lo_um: f64,
        hi_um: f64,
    },

    /// An unphysical argument combination (e.g. signal not longer than pump).
    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn validation(material: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            material: material.into(),
            reason: reason.into(),
        }
    }
}
