//! Crystal database: dispersion sets, transparency limits and the allowed
//! phase-matching configurations with their effective nonlinearities.
//!
//! Coefficients are not hard-coded; they are loaded from a TOML database
//! (see `data/materials.toml` and `docs/database-format.md`).  Several
//! published Sellmeier sets may coexist for one axis; queries average the
//! resulting refractive indices at the requested wavelength.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default evaluation temperature in kelvin.
pub const DEFAULT_TEMPERATURE_K: f64 = 300.0;

/// The six crystals the database may describe.
pub const KNOWN_IDS: [&str; 6] = ["PPKTP", "PPLN", "OPGaP", "OPGaAs", "CSP", "ZGP"];

/// Polarisation axis in the principal plane convention (o = y, e = z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    #[serde(rename = "ordinary_y")]
    OrdinaryY,
    #[serde(rename = "extraordinary_z")]
    ExtraordinaryZ,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::OrdinaryY => write!(f, "ordinary_y"),
            Axis::ExtraordinaryZ => write!(f, "extraordinary_z"),
        }
    }
}

impl std::str::FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "o" | "y" | "ordinary" | "ordinary_y" => Ok(Axis::OrdinaryY),
            "e" | "z" | "extraordinary" | "extraordinary_z" => Ok(Axis::ExtraordinaryZ),
            other => Err(Error::domain(format!(
                "unknown axis '{other}' (expected ordinary_y or extraordinary_z)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CrystalClass {
    #[serde(rename = "isotropic")]
    Isotropic,
    #[serde(rename = "uniaxial_positive")]
    UniaxialPositive,
    #[serde(rename = "uniaxial_negative")]
    UniaxialNegative,
    #[serde(rename = "biaxial_principal_plane")]
    BiaxialPrincipalPlane,
}

/// Downconversion polarisation type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PmType {
    #[serde(rename = "type0")]
    Type0,
    #[serde(rename = "typeI")]
    TypeI,
    #[serde(rename = "typeII")]
    TypeII,
}

impl fmt::Display for PmType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PmType::Type0 => write!(f, "type0"),
            PmType::TypeI => write!(f, "typeI"),
            PmType::TypeII => write!(f, "typeII"),
        }
    }
}

impl std::str::FromStr for PmType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "0" | "type0" | "type-0" => Ok(PmType::Type0),
            "1" | "i" | "typei" | "type-i" | "type1" | "type-1" => Ok(PmType::TypeI),
            "2" | "ii" | "typeii" | "type-ii" | "type2" | "type-2" => Ok(PmType::TypeII),
            other => Err(Error::domain(format!(
                "unknown phase-matching type '{other}' (expected type0, typeI or typeII)"
            ))),
        }
    }
}

/// One allowed pump -> signal + idler polarisation assignment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseMatchConfig {
    pub pm_type: PmType,
    pub pump_axis: Axis,
    pub signal_axis: Axis,
    pub idler_axis: Axis,
    pub d_eff_max_pm_per_v: f64,
}

/// Identifier of a supported dispersion-model shape.  Adding a shape is a
/// code change; adding coefficients is a data change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormId {
    /// `n^2 = a + d L^2 + sum_k b_k / (L^2 - c_k)`, coefficients
    /// `[a, d, b1, c1, b2, c2, ...]`.
    #[serde(rename = "pole_offset")]
    PoleOffset,
    /// `n^2 = a + d L^2 + sum_k b_k L^2 / (L^2 - c_k)`, coefficients
    /// `[a, d, b1, c1, ...]`.
    #[serde(rename = "pole_lambda_sq")]
    PoleLambdaSq,
    /// Temperature-parameterised two-pole form,
    /// `n^2 = (a1+b1 f) + (a2+b2 f)/(L^2-(a3+b3 f)^2) + (a4+b4 f)/(L^2-a5^2) - a6 L^2`
    /// with `f = (Tc - 24.5)(Tc + 570.82)`, `Tc` in Celsius; coefficients
    /// `[a1, b1, a2, b2, a3, b3, a4, b4, a5, a6]`.
    #[serde(rename = "thermal_pole_offset")]
    ThermalPoleOffset,
    /// Resonance form in inverse squared wavelength,
    /// `n^2 = a + g1/(l1^-2 - L^-2) + g2(dT)/(l2^-2 - L^-2) + g3/(l3^-2 - L^-2)`
    /// with `g2(dT) = g20 + g21 dT + g22 dT^2`, `dT` in Celsius from 22 C;
    /// coefficients `[a, l1, g1, l2, g20, g21, g22, l3, g3]`.
    #[serde(rename = "inverse_sq_resonances")]
    InverseSqResonances,
    /// Fixed index (diagnostic/testing), coefficients `[n]`.
    #[serde(rename = "constant")]
    Constant,
}

/// One published dispersion set for one axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SellmeierForm {
    pub form_id: FormId,
    pub coefficients: Vec<f64>,
    pub valid_range_um: (f64, f64),
    pub temperature_dependent: bool,
    pub source_tag: String,
}

impl SellmeierForm {
    pub fn in_range(&self, lambda_um: f64) -> bool {
        lambda_um >= self.valid_range_um.0 && lambda_um <= self.valid_range_um.1
    }

    /// Squared index; assumes `lambda_um` is inside the valid range.
    pub fn n_squared(&self, lambda_um: f64, temperature_k: f64) -> f64 {
        let l2 = lambda_um * lambda_um;
        let c = &self.coefficients;
        match self.form_id {
            FormId::PoleOffset => {
                let mut s = c[0] + c[1] * l2;
                for pair in c[2..].chunks_exact(2) {
                    s += pair[0] / (l2 - pair[1]);
                }
                s
            }
            FormId::PoleLambdaSq => {
                let mut s = c[0] + c[1] * l2;
                for pair in c[2..].chunks_exact(2) {
                    s += pair[0] * l2 / (l2 - pair[1]);
                }
                s
            }
            FormId::ThermalPoleOffset => {
                let tc = temperature_k - 273.15;
                let f = (tc - 24.5) * (tc + 570.82);
                let pole1 = c[4] + c[5] * f;
                (c[0] + c[1] * f)
                    + (c[2] + c[3] * f) / (l2 - pole1 * pole1)
                    + (c[6] + c[7] * f) / (l2 - c[8] * c[8])
                    - c[9] * l2
            }
            FormId::InverseSqResonances => {
                let dt = (temperature_k - 273.15) - 22.0;
                let inv_l2 = 1.0 / l2;
                let g2 = c[4] + c[5] * dt + c[6] * dt * dt;
                c[0] + c[2] / (1.0 / (c[1] * c[1]) - inv_l2)
                    + g2 / (1.0 / (c[3] * c[3]) - inv_l2)
                    + c[8] / (1.0 / (c[7] * c[7]) - inv_l2)
            }
            FormId::Constant => c[0] * c[0],
        }
    }

    /// Refractive index; assumes `lambda_um` is inside the valid range.
    pub fn refractive_index(&self, lambda_um: f64, temperature_k: f64) -> f64 {
        self.n_squared(lambda_um, temperature_k).sqrt()
    }

    /// Closed-form d(n^2)/dL in 1/um.
    pub fn dn2_dlambda(&self, lambda_um: f64, temperature_k: f64) -> f64 {
        let l = lambda_um;
        let l2 = l * l;
        let c = &self.coefficients;
        match self.form_id {
            FormId::PoleOffset => {
                let mut s = 2.0 * c[1] * l;
                for pair in c[2..].chunks_exact(2) {
                    let d = l2 - pair[1];
                    s += -2.0 * pair[0] * l / (d * d);
                }
                s
            }
            FormId::PoleLambdaSq => {
                // d/dL [b L^2/(L^2-c)] = -2 b c L / (L^2-c)^2
                let mut s = 2.0 * c[1] * l;
                for pair in c[2..].chunks_exact(2) {
                    let d = l2 - pair[1];
                    s += -2.0 * pair[0] * pair[1] * l / (d * d);
                }
                s
            }
            FormId::ThermalPoleOffset => {
                let tc = temperature_k - 273.15;
                let f = (tc - 24.5) * (tc + 570.82);
                let pole1 = c[4] + c[5] * f;
                let d1 = l2 - pole1 * pole1;
                let d2 = l2 - c[8] * c[8];
                -2.0 * (c[2] + c[3] * f) * l / (d1 * d1) - 2.0 * (c[6] + c[7] * f) * l / (d2 * d2)
                    - 2.0 * c[9] * l
            }
            FormId::InverseSqResonances => {
                // d/dL [g/(A - L^-2)] = -2 g / (L^3 (A - L^-2)^2)
                let dt = (temperature_k - 273.15) - 22.0;
                let inv_l2 = 1.0 / l2;
                let g2 = c[4] + c[5] * dt + c[6] * dt * dt;
                let term = |li: f64, g: f64| {
                    let d = 1.0 / (li * li) - inv_l2;
                    -2.0 * g / (l2 * l * d * d)
                };
                term(c[1], c[2]) + term(c[3], g2) + term(c[7], c[8])
            }
            FormId::Constant => 0.0,
        }
    }

    /// dn/dL in 1/um; assumes `lambda_um` inside the valid range.
    pub fn dn_dlambda(&self, lambda_um: f64, temperature_k: f64) -> f64 {
        self.dn2_dlambda(lambda_um, temperature_k)
            / (2.0 * self.refractive_index(lambda_um, temperature_k))
    }

    pub fn has_analytic_derivative(&self) -> bool {
        // All shipped shapes differentiate in closed form; the flag keeps the
        // finite-difference fallback path honest should a shape be added
        // without one.
        true
    }

    fn expected_arity(&self) -> std::result::Result<(), String> {
        let n = self.coefficients.len();
        let ok = match self.form_id {
            FormId::PoleOffset | FormId::PoleLambdaSq => n >= 4 && n.is_multiple_of(2),
            FormId::ThermalPoleOffset => n == 10,
            FormId::InverseSqResonances => n == 9,
            FormId::Constant => n == 1,
        };
        if ok {
            Ok(())
        } else {
            Err(format!(
                "form {:?} expects a different coefficient count, got {n}",
                self.form_id
            ))
        }
    }
}

/// One crystal: dispersion per axis, window limits and allowed configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialRecord {
    pub id: String,
    pub name: String,
    pub crystal_class: CrystalClass,
    /// Dispersion sets per axis; duplicates with distinct source tags are
    /// retained and averaged on evaluation.
    pub axes: BTreeMap<Axis, Vec<SellmeierForm>>,
    pub transparency_um: (f64, f64),
    /// Pump wavelengths below this edge suffer two-photon absorption.
    /// Equals the lower transparency bound when TPA is absent.
    pub tpa_edge_um: f64,
    pub poleable: bool,
    /// |grating period| above which birefringent phase matching is treated
    /// as practical; absent for materials presented as poled-only.
    pub birefringent_qpm_threshold_um: Option<f64>,
    pub configs: Vec<PhaseMatchConfig>,
    /// Suggested scan window for survey maps.
    pub default_pump_um: (f64, f64),
    pub default_signal_um: (f64, f64),
}

impl MaterialRecord {
    pub fn forms(&self, axis: Axis) -> Result<&[SellmeierForm]> {
        self.axes
            .get(&axis)
            .map(|v| v.as_slice())
            .ok_or(Error::MissingAxis {
                material: self.id.clone(),
                axis,
            })
    }

    pub fn config(&self, pm_type: PmType) -> Result<&PhaseMatchConfig> {
        self.configs
            .iter()
            .find(|c| c.pm_type == pm_type)
            .ok_or(Error::MissingConfig {
                material: self.id.clone(),
                pm_type,
            })
    }

    /// Union of the fitted ranges for an axis.
    pub fn evaluable_range(&self, axis: Axis) -> Result<(f64, f64)> {
        let forms = self.forms(axis)?;
        let lo = forms.iter().map(|f| f.valid_range_um.0).fold(f64::INFINITY, f64::min);
        let hi = forms.iter().map(|f| f.valid_range_um.1).fold(0.0f64, f64::max);
        Ok((lo, hi))
    }

    fn usable_forms(&self, axis: Axis, lambda_um: f64) -> Result<Vec<&SellmeierForm>> {
        let forms = self.forms(axis)?;
        let usable: Vec<&SellmeierForm> =
            forms.iter().filter(|f| f.in_range(lambda_um)).collect();
        if usable.is_empty() {
            let (lo, hi) = self.evaluable_range(axis)?;
            return Err(Error::WavelengthOutOfRange {
                material: self.id.clone(),
                axis,
                lambda_um,
                lo_um: lo,
                hi_um: hi,
            });
        }
        Ok(usable)
    }

    /// Refractive index at `lambda_um` / `temperature_k`.  When several
    /// dispersion sets cover the wavelength their indices are averaged.
    pub fn refractive_index(&self, axis: Axis, lambda_um: f64, temperature_k: f64) -> Result<f64> {
        let usable = self.usable_forms(axis, lambda_um)?;
        let sum: f64 = usable
            .iter()
            .map(|f| f.refractive_index(lambda_um, temperature_k))
            .sum();
        Ok(sum / usable.len() as f64)
    }

    /// dn/dL of the averaged index: the average of the per-set derivatives.
    pub fn dn_dlambda(&self, axis: Axis, lambda_um: f64, temperature_k: f64) -> Result<f64> {
        let usable = self.usable_forms(axis, lambda_um)?;
        let sum: f64 = usable
            .iter()
            .map(|f| {
                if f.has_analytic_derivative() {
                    f.dn_dlambda(lambda_um, temperature_k)
                } else {
                    fd_dn_dlambda(f, lambda_um, temperature_k)
                }
            })
            .sum();
        Ok(sum / usable.len() as f64)
    }

    pub fn within_transparency(&self, lambda_um: f64) -> bool {
        lambda_um >= self.transparency_um.0 && lambda_um <= self.transparency_um.1
    }

    pub fn pump_above_tpa(&self, lambda_um: f64) -> bool {
        lambda_um >= self.tpa_edge_um
    }

    fn validate(&self) -> Result<()> {
        let fail = |reason: String| Err(Error::validation(self.id.clone(), reason));

        if !KNOWN_IDS.contains(&self.id.as_str()) {
            return fail(format!("id must be one of {KNOWN_IDS:?}"));
        }
        let (t_lo, t_hi) = self.transparency_um;
        if !(t_lo > 0.0 && t_lo < t_hi) {
            return fail("transparency interval must satisfy 0 < lo < hi".into());
        }
        if self.tpa_edge_um < t_lo || self.tpa_edge_um >= t_hi {
            return fail("tpa_edge must lie in [transparency lo, transparency hi)".into());
        }
        if self.poleable && matches!(self.id.as_str(), "CSP" | "ZGP") {
            return fail("chalcopyrite crystals cannot be poled".into());
        }
        if !self.poleable && !matches!(self.id.as_str(), "CSP" | "ZGP") {
            return fail("oxide and orientation-patterned crystals are poleable".into());
        }

        let axis_count = self.axes.len();
        match self.crystal_class {
            CrystalClass::Isotropic => {
                if axis_count != 1 {
                    return fail("isotropic materials carry exactly one axis entry".into());
                }
            }
            _ => {
                if axis_count != 2 {
                    return fail("anisotropic materials carry ordinary and extraordinary axes".into());
                }
            }
        }

        for (axis, forms) in &self.axes {
            if forms.is_empty() {
                return fail(format!("axis {axis} has no dispersion sets"));
            }
            let mut tags: Vec<&str> = forms.iter().map(|f| f.source_tag.as_str()).collect();
            tags.sort_unstable();
            tags.dedup();
            if tags.len() != forms.len() {
                return fail(format!("axis {axis} has duplicate source tags"));
            }
            for form in forms {
                if let Err(e) = form.expected_arity() {
                    return fail(format!("axis {axis}, set '{}': {e}", form.source_tag));
                }
                let (lo, hi) = form.valid_range_um;
                if !(lo > 0.0 && lo < hi) {
                    return fail(format!(
                        "axis {axis}, set '{}': invalid wavelength range",
                        form.source_tag
                    ));
                }
                let thermal = matches!(
                    form.form_id,
                    FormId::ThermalPoleOffset | FormId::InverseSqResonances
                );
                if thermal != form.temperature_dependent {
                    return fail(format!(
                        "axis {axis}, set '{}': temperature_dependent flag does not match the form",
                        form.source_tag
                    ));
                }
                for probe in [lo, 0.5 * (lo + hi), hi] {
                    let n2 = form.n_squared(probe, DEFAULT_TEMPERATURE_K);
                    if !(n2.is_finite() && n2 > 1.0) {
                        return fail(format!(
                            "axis {axis}, set '{}': n^2 = {n2} at {probe} um is not a physical index",
                            form.source_tag
                        ));
                    }
                }
            }
        }

        for cfg in &self.configs {
            if !(cfg.d_eff_max_pm_per_v > 0.0) {
                return fail(format!(
                    "{} config: d_eff must be positive (zero / N/A entries are omitted)",
                    cfg.pm_type
                ));
            }
            let type_ok = match cfg.pm_type {
                PmType::Type0 => {
                    cfg.pump_axis == cfg.signal_axis && cfg.signal_axis == cfg.idler_axis
                }
                PmType::TypeI => {
                    cfg.signal_axis == cfg.idler_axis && cfg.signal_axis != cfg.pump_axis
                }
                PmType::TypeII => cfg.signal_axis != cfg.idler_axis,
            };
            if !type_ok {
                return fail(format!(
                    "{} config: axis assignment contradicts the type definition",
                    cfg.pm_type
                ));
            }
            if cfg.pm_type == PmType::Type0 && !self.poleable {
                return fail("type0 requires a quasi-phase-matching grating (poleable crystal)".into());
            }
            if self.crystal_class == CrystalClass::Isotropic && cfg.pm_type != PmType::Type0 {
                return fail("isotropic crystals support only type0".into());
            }
            for axis in [cfg.pump_axis, cfg.signal_axis, cfg.idler_axis] {
                if !self.axes.contains_key(&axis) {
                    return fail(format!("{} config references missing axis {axis}", cfg.pm_type));
                }
            }
        }

        let (p_lo, p_hi) = self.default_pump_um;
        let (s_lo, s_hi) = self.default_signal_um;
        if !(p_lo > 0.0 && p_lo < p_hi && s_lo > 0.0 && s_lo < s_hi) {
            return fail("default scan windows must be non-empty".into());
        }
        Ok(())
    }
}

/// Central finite difference with one Richardson refinement; fallback for
/// dispersion shapes without a closed-form derivative.
pub(crate) fn fd_dn_dlambda(form: &SellmeierForm, lambda_um: f64, temperature_k: f64) -> f64 {
    let h = 1e-6 * lambda_um;
    let d_h = (form.refractive_index(lambda_um + h, temperature_k)
        - form.refractive_index(lambda_um - h, temperature_k))
        / (2.0 * h);
    let d_h2 = (form.refractive_index(lambda_um + h / 2.0, temperature_k)
        - form.refractive_index(lambda_um - h / 2.0, temperature_k))
        / h;
    (4.0 * d_h2 - d_h) / 3.0
}

/// The loaded database: a version string plus the material records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialDatabase {
    pub version: String,
    pub materials: Vec<MaterialRecord>,
}

impl MaterialDatabase {
    pub fn get(&self, id: &str) -> Result<&MaterialRecord> {
        self.materials
            .iter()
            .find(|m| m.id.eq_ignore_ascii_case(id))
            .ok_or_else(|| Error::UnknownMaterial(id.to_string()))
    }

    pub fn ids(&self) -> Vec<&str> {
        self.materials.iter().map(|m| m.id.as_str()).collect()
    }
}

// ---------------------------------------------------------------------------
// TOML wire format
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
struct FileRoot {
    database: FileMeta,
    #[serde(rename = "material")]
    materials: Vec<FileMaterial>,
}

#[derive(Debug, Deserialize)]
struct FileMeta {
    version: String,
}

#[derive(Debug, Deserialize)]
struct FileMaterial {
    id: String,
    name: String,
    crystal_class: CrystalClass,
    transparency_um: [f64; 2],
    tpa_edge_um: f64,
    poleable: bool,
    birefringent_qpm_threshold_um: Option<f64>,
    default_pump_um: [f64; 2],
    default_signal_um: [f64; 2],
    #[serde(rename = "sellmeier", default)]
    sellmeier: Vec<FileSellmeier>,
    #[serde(rename = "config", default)]
    configs: Vec<PhaseMatchConfig>,
}

#[derive(Debug, Deserialize)]
struct FileSellmeier {
    axis: Axis,
    form_id: FormId,
    coefficients: Vec<f64>,
    valid_range_um: [f64; 2],
    temperature_dependent: bool,
    source_tag: String,
}

fn from_file_material(fm: FileMaterial) -> MaterialRecord {
    let mut axes: BTreeMap<Axis, Vec<SellmeierForm>> = BTreeMap::new();
    for s in fm.sellmeier {
        axes.entry(s.axis).or_default().push(SellmeierForm {
            form_id: s.form_id,
            coefficients: s.coefficients,
            valid_range_um: (s.valid_range_um[0], s.valid_range_um[1]),
            temperature_dependent: s.temperature_dependent,
            source_tag: s.source_tag,
        });
    }
    MaterialRecord {
        id: fm.id,
        name: fm.name,
        crystal_class: fm.crystal_class,
        axes,
        transparency_um: (fm.transparency_um[0], fm.transparency_um[1]),
        tpa_edge_um: fm.tpa_edge_um,
        poleable: fm.poleable,
        birefringent_qpm_threshold_um: fm.birefringent_qpm_threshold_um,
        configs: fm.configs,
        default_pump_um: (fm.default_pump_um[0], fm.default_pump_um[1]),
        default_signal_um: (fm.default_signal_um[0], fm.default_signal_um[1]),
    }
}

/// Bundled copy of `data/materials.toml`.
pub const BUNDLED_DATABASE_TOML: &str = include_str!("../data/materials.toml");

/// Parse and validate a database from TOML text.
pub fn parse_database(text: &str) -> Result<MaterialDatabase> {
    let root: FileRoot = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let materials: Vec<MaterialRecord> = root.materials.into_iter().map(from_file_material).collect();
    let db = MaterialDatabase {
        version: root.database.version,
        materials,
    };
    for m in &db.materials {
        m.validate()?;
    }
    let mut ids: Vec<&str> = db.materials.iter().map(|m| m.id.as_str()).collect();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() != db.materials.len() {
        return Err(Error::Parse("duplicate material ids".into()));
    }
    Ok(db)
}

/// Load and validate a database file.
pub fn load_database(path: impl AsRef<Path>) -> Result<MaterialDatabase> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_database(&text)
}

/// The database shipped with the crate.
pub fn bundled_database() -> MaterialDatabase {
    parse_database(BUNDLED_DATABASE_TOML).expect("bundled database must validate")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bundled_covers_all_six_crystals() {
        let db = bundled_database();
        assert_eq!(db.materials.len(), 6);
        for id in KNOWN_IDS {
            assert!(db.get(id).is_ok(), "missing {id}");
        }
    }

    #[test]
    fn lookup_is_case_insensitive_and_rejects_unknown() {
        let db = bundled_database();
        assert!(db.get("ppln").is_ok());
        assert!(matches!(db.get("NOSUCH"), Err(Error::UnknownMaterial(_))));
    }

    /// Independent transcription of the MgO:LiNbO3 extraordinary set, kept
    /// deliberately separate from the generic form evaluator.
    fn oracle_ppln_ne(lambda_um: f64, t_kelvin: f64) -> f64 {
        let tc = t_kelvin - 273.15;
        let f = (tc - 24.5) * (tc + 570.82);
        let l2 = lambda_um * lambda_um;
        let n2 = (5.756 + 2.860e-6 * f)
            + (0.0983 + 4.700e-8 * f) / (l2 - (0.2020 + 6.113e-8 * f).powi(2))
            + (189.32 + 1.516e-4 * f) / (l2 - 12.52 * 12.52)
            - 1.32e-2 * l2;
        n2.sqrt()
    }

    #[test]
    fn ppln_extraordinary_matches_hand_evaluated_set() {
        let db = bundled_database();
        let ppln = db.get("PPLN").unwrap();
        let n = ppln
            .refractive_index(Axis::ExtraordinaryZ, 1.064, 300.0)
            .unwrap();
        assert_relative_eq!(n, oracle_ppln_ne(1.064, 300.0), max_relative = 1e-14);
        // frozen oracle evaluation
        assert_relative_eq!(n, 2.148785398, max_relative = 1e-8);
        assert!(n > 1.0);
    }

    #[test]
    fn out_of_range_wavelength_is_a_domain_error() {
        let db = bundled_database();
        let ppln = db.get("PPLN").unwrap();
        let err = ppln
            .refractive_index(Axis::ExtraordinaryZ, 0.2, 300.0)
            .unwrap_err();
        assert!(matches!(err, Error::WavelengthOutOfRange { .. }));
        // Transparency masking is a flag, not an evaluation error: 4.8 um is
        // beyond the 4.5 um window but inside the fitted range.
        assert!(ppln.refractive_index(Axis::ExtraordinaryZ, 4.8, 300.0).is_ok());
        assert!(!ppln.within_transparency(4.8));
    }

    #[test]
    fn averaging_is_the_arithmetic_mean_of_set_indices() {
        let db = bundled_database();
        let ktp = db.get("PPKTP").unwrap();
        let forms = ktp.forms(Axis::OrdinaryY).unwrap();
        assert_eq!(forms.len(), 2);
        let n1 = forms[0].refractive_index(1.064, 300.0);
        let n2 = forms[1].refractive_index(1.064, 300.0);
        let avg = ktp.refractive_index(Axis::OrdinaryY, 1.064, 300.0).unwrap();
        assert_relative_eq!(avg, 0.5 * (n1 + n2), max_relative = 1e-15);
    }

    #[test]
    fn temperature_is_ignored_by_static_forms() {
        let db = bundled_database();
        let zgp = db.get("ZGP").unwrap();
        let a = zgp.refractive_index(Axis::OrdinaryY, 4.0, 250.0).unwrap();
        let b = zgp.refractive_index(Axis::OrdinaryY, 4.0, 400.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn temperature_shifts_thermal_forms() {
        let db = bundled_database();
        let ppln = db.get("PPLN").unwrap();
        let a = ppln.refractive_index(Axis::ExtraordinaryZ, 1.064, 300.0).unwrap();
        let b = ppln.refractive_index(Axis::ExtraordinaryZ, 1.064, 400.0).unwrap();
        assert!((a - b).abs() > 1e-4, "thermal set must respond to T");
    }

    #[test]
    fn isotropic_materials_have_one_axis_and_no_ordinary_entry() {
        let db = bundled_database();
        let gaas = db.get("OPGaAs").unwrap();
        assert_eq!(gaas.axes.len(), 1);
        assert!(matches!(
            gaas.refractive_index(Axis::OrdinaryY, 4.0, 300.0),
            Err(Error::MissingAxis { .. })
        ));
    }

    #[test]
    fn index_is_continuous_on_nanometre_steps() {
        // Each 1 nm increment must be explained by the local slope to 1e-6:
        // a seam between dispersion sets would show up as a jump.
        let db = bundled_database();
        for m in &db.materials {
            for &axis in m.axes.keys() {
                let (lo, hi) = m.evaluable_range(axis).unwrap();
                let h = 1e-3;
                let mut l = lo + h;
                while l < hi - 2.0 * h {
                    let n0 = m.refractive_index(axis, l, 300.0).unwrap();
                    let n1 = m.refractive_index(axis, l + h, 300.0).unwrap();
                    let slope = 0.5
                        * (m.dn_dlambda(axis, l, 300.0).unwrap()
                            + m.dn_dlambda(axis, l + h, 300.0).unwrap());
                    assert!(
                        (n1 - n0 - h * slope).abs() < 1e-6,
                        "{}/{axis}: jump at {l} um ({} vs predicted {})",
                        m.id,
                        n1 - n0,
                        h * slope
                    );
                    l += h;
                }
            }
        }
    }

    #[test]
    fn effective_nonlinearity_pattern_matches_the_allowed_table() {
        use Axis::{ExtraordinaryZ as E, OrdinaryY as O};
        let db = bundled_database();
        // (id, type, pump, signal, idler, d_eff); everything else must be absent.
        let expected: &[(&str, PmType, Axis, Axis, Axis, f64)] = &[
            ("PPKTP", PmType::Type0, E, E, E, 15.3),
            ("PPKTP", PmType::TypeI, E, O, O, 3.9),
            ("PPKTP", PmType::TypeII, O, E, O, 3.9),
            ("PPLN", PmType::Type0, E, E, E, 25.0),
            ("PPLN", PmType::TypeI, E, O, O, 4.6),
            ("PPLN", PmType::TypeII, O, E, O, 4.6),
            ("OPGaP", PmType::Type0, E, E, E, 75.0),
            ("OPGaAs", PmType::Type0, E, E, E, 95.0),
            ("CSP", PmType::TypeI, E, O, O, 84.0),
            ("CSP", PmType::TypeII, E, O, E, 84.0),
            ("ZGP", PmType::TypeI, O, E, E, 75.4),
            ("ZGP", PmType::TypeII, O, E, O, 75.4),
        ];
        let mut seen = 0;
        for (id, ty, p, s, i, d) in expected {
            let m = db.get(id).unwrap();
            let cfg = m.config(*ty).unwrap_or_else(|_| panic!("{id} {ty} missing"));
            assert_eq!((cfg.pump_axis, cfg.signal_axis, cfg.idler_axis), (*p, *s, *i), "{id} {ty}");
            assert_relative_eq!(cfg.d_eff_max_pm_per_v, d);
            seen += 1;
        }
        let total: usize = db.materials.iter().map(|m| m.configs.len()).sum();
        assert_eq!(total, seen, "extra configurations beyond the allowed table");
        // Explicit absences (zero / N/A in the table).
        assert!(db.get("CSP").unwrap().config(PmType::Type0).is_err());
        assert!(db.get("ZGP").unwrap().config(PmType::Type0).is_err());
        assert!(db.get("OPGaP").unwrap().config(PmType::TypeII).is_err());
    }

    #[test]
    fn serialisation_round_trips_field_for_field() {
        let db = bundled_database();
        let json = serde_json::to_string(&db).unwrap();
        let back: MaterialDatabase = serde_json::from_str(&json).unwrap();
        assert_eq!(db, back);
    }

    #[test]
    fn poled_chalcopyrite_is_rejected() {
        let text = BUNDLED_DATABASE_TOML.replace(
            "id = \"ZGP\"\nname = \"Zinc germanium phosphide (ZnGeP2)\"\ncrystal_class = \"uniaxial_positive\"\ntransparency_um = [0.70, 12.3]\ntpa_edge_um = 1.9\npoleable = false",
            "id = \"ZGP\"\nname = \"Zinc germanium phosphide (ZnGeP2)\"\ncrystal_class = \"uniaxial_positive\"\ntransparency_um = [0.70, 12.3]\ntpa_edge_um = 1.9\npoleable = true",
        );
        assert_ne!(text, BUNDLED_DATABASE_TOML, "fixture edit must apply");
        let err = parse_database(&text).unwrap_err();
        match err {
            Error::Validation { material, .. } => assert_eq!(material, "ZGP"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn chalcopyrite_type0_entry_is_rejected() {
        let extra = "\n[[material.config]]\npm_type = \"type0\"\npump_axis = \"extraordinary_z\"\nsignal_axis = \"extraordinary_z\"\nidler_axis = \"extraordinary_z\"\nd_eff_max_pm_per_v = 10.0\n";
        // Append a forbidden type-0 entry to CSP (its config block ends right
        // before the ZGP material header).
        let marker = "# Zinc germanium phosphide.";
        let text = BUNDLED_DATABASE_TOML.replace(
            marker,
            &format!("{}# ---\n{}", extra, marker),
        );
        // TOML array-of-tables attach to the last [[material]]; inserting
        // before the ZGP header appends to CSP.
        let err = parse_database(&text).unwrap_err();
        match err {
            Error::Validation { material, reason } => {
                assert_eq!(material, "CSP");
                assert!(reason.contains("type0"), "{reason}");
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_toml_is_a_parse_error() {
        assert!(matches!(parse_database("not toml ["), Err(Error::Parse(_))));
        assert!(matches!(
            parse_database("[database]\nversion='x'\n"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn wrong_coefficient_arity_is_reported_with_the_offending_set() {
        let text = BUNDLED_DATABASE_TOML.replace(
            "coefficients = [8.0929, 0.0, 1.8649, 0.41468, 0.84052, 452.05]",
            "coefficients = [8.0929, 0.0, 1.8649, 0.41468, 0.84052]",
        );
        let err = parse_database(&text).unwrap_err();
        match err {
            Error::Validation { material, reason } => {
                assert_eq!(material, "ZGP");
                assert!(reason.contains("zelmon-2001"), "{reason}");
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }
}
