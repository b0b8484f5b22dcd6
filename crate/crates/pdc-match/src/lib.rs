//! Phase-matching, group-velocity matching and up-conversion calculations
//! for mid-infrared nonlinear crystals.
//!
//! The crate solves the collinear quasi-phase-matching problem (grating
//! period or equivalent birefringently matched length) for six crystals —
//! PPKTP, PPLN, OP-GaP, OP-GaAs, CSP and ZGP — classifies group-velocity
//! matching through the dispersion parameter `D` and its angle
//! `theta = arctan D`, sweeps pump/signal grids into plot-ready maps with
//! transparency and two-photon-absorption masking, and solves seeded
//! difference-frequency up-conversion of mid-infrared photons into silicon
//! and InGaAs detector bands.
//!
//! Dispersion data live in a TOML database (`data/materials.toml`,
//! documented in `docs/database-format.md`); a bundled copy is compiled in.
//! All wavelengths are vacuum wavelengths in micrometres, temperatures in
//! kelvin (default 300 K).
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `pdc-match` binary for the scripted command-line surface.

// Negated comparisons such as `!(x > 0.0)` are used on purpose: they treat
// NaN arguments as precondition failures.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dispersion;
pub mod error;
pub mod gvm;
pub mod materials;
pub mod phasematch;
pub mod sweep;
pub mod upconv;
pub mod validation;

pub mod cli;

pub use error::{Error, Result};
pub use materials::{
    bundled_database, load_database, Axis, CrystalClass, MaterialDatabase, MaterialRecord,
    PhaseMatchConfig, PmType, SellmeierForm, DEFAULT_TEMPERATURE_K,
};
pub use phasematch::{idler_wavelength, solve_period, MatchSolution, WavelengthTriple};
