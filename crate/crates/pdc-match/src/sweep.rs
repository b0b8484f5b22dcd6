//! Pump x signal survey maps: theta and |grating period| layers with
//! masking, iso-theta contour extraction and deterministic CSV/JSON export.
//!
//! A map cell means "signal photon at `signal_um` on the configuration's
//! signal axis, partner at the energy-conservation wavelength"; the
//! degeneracy line `signal = 2 pump` therefore runs through the grid and
//! the two half-planes show the two daughter-role assignments.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gvm::{self, Regime};
use crate::materials::{MaterialRecord, PhaseMatchConfig};
use crate::phasematch::{self, WavelengthTriple};

/// Cap on |grating period| stored in maps, um; effectively birefringently
/// matched cells would otherwise carry non-finite values.
pub const GRATING_CAP_UM: f64 = 1e12;

/// Contour vertices are refined along cell edges to this width, um (1e-3 nm).
pub const VERTEX_TOL_UM: f64 = 1e-6;

/// Per-cell mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CellMask {
    #[serde(rename = "ok")]
    Ok,
    #[serde(rename = "pump_below_tpa")]
    PumpBelowTpa,
    #[serde(rename = "idler_beyond_transparency")]
    IdlerBeyondTransparency,
    #[serde(rename = "signal_out_of_range")]
    SignalOutOfRange,
    #[serde(rename = "singular")]
    Singular,
}

impl CellMask {
    pub fn as_str(self) -> &'static str {
        match self {
            CellMask::Ok => "ok",
            CellMask::PumpBelowTpa => "pump_below_tpa",
            CellMask::IdlerBeyondTransparency => "idler_beyond_transparency",
            CellMask::SignalOutOfRange => "signal_out_of_range",
            CellMask::Singular => "singular",
        }
    }
}

/// A named polyline in (pump, signal) coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub name: String,
    /// Target angle in degrees; `None` for the analytic degeneracy line.
    pub theta_target_deg: Option<f64>,
    pub points: Vec<(f64, f64)>,
}

/// Rectangular (pump x signal) scan with theta and |grating| layers,
/// masks and extracted loci.  Layers are row-major over
/// `pump_samples_um x signal_samples_um` (pump index slowest).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMap {
    pub material_id: String,
    pub config: PhaseMatchConfig,
    pub temperature_k: f64,
    pub database_version: String,
    pub birefringent_qpm_threshold_um: Option<f64>,
    pub pump_samples_um: Vec<f64>,
    pub signal_samples_um: Vec<f64>,
    /// Degrees; `None` where masked.
    pub theta_deg: Vec<Option<f64>>,
    /// |grating period| in um, capped at `GRATING_CAP_UM`; `None` where
    /// masked.
    pub grating_abs_um: Vec<Option<f64>>,
    pub mask: Vec<CellMask>,
    pub loci: Vec<Polyline>,
}

impl GridMap {
    pub fn index(&self, pump_idx: usize, signal_idx: usize) -> usize {
        pump_idx * self.signal_samples_um.len() + signal_idx
    }

    pub fn resolution(&self) -> (usize, usize) {
        (self.pump_samples_um.len(), self.signal_samples_um.len())
    }

    /// Bilinear interpolation of theta at an arbitrary in-grid point;
    /// `None` if any supporting cell is masked.
    pub fn interpolate_theta(&self, pump_um: f64, signal_um: f64) -> Option<f64> {
        let (p, s) = (&self.pump_samples_um, &self.signal_samples_um);
        if pump_um < p[0] || pump_um > *p.last().unwrap() || signal_um < s[0]
            || signal_um > *s.last().unwrap()
        {
            return None;
        }
        let fi = (pump_um - p[0]) / (p[1] - p[0]);
        let fj = (signal_um - s[0]) / (s[1] - s[0]);
        let i = (fi.floor() as usize).min(p.len() - 2);
        let j = (fj.floor() as usize).min(s.len() - 2);
        let (u, v) = (fi - i as f64, fj - j as f64);
        let q = |ii: usize, jj: usize| self.theta_deg[self.index(ii, jj)];
        let (a, b, c, d) = (q(i, j)?, q(i, j + 1)?, q(i + 1, j)?, q(i + 1, j + 1)?);
        Some((1.0 - u) * ((1.0 - v) * a + v * b) + u * ((1.0 - v) * c + v * d))
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect()
}

struct CellValue {
    theta: Option<f64>,
    grating_abs: Option<f64>,
    mask: CellMask,
}

fn evaluate_cell(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    pump: f64,
    signal: f64,
    half_step_signal: f64,
    temperature_k: f64,
) -> CellValue {
    let masked = |mask| CellValue {
        theta: None,
        grating_abs: None,
        mask,
    };
    if signal <= pump {
        return masked(CellMask::SignalOutOfRange);
    }
    let idler = match phasematch::idler_wavelength(pump, signal) {
        Ok(v) => v,
        Err(_) => return masked(CellMask::SignalOutOfRange),
    };
    if idler > material.transparency_um.1 {
        return masked(CellMask::IdlerBeyondTransparency);
    }
    if !material.pump_above_tpa(pump) {
        return masked(CellMask::PumpBelowTpa);
    }
    // Same-axis daughters develop the theta singularity on the degeneracy
    // line; flag the cells containing it rather than interpolating across.
    if config.signal_axis == config.idler_axis
        && (signal - 2.0 * pump).abs() <= half_step_signal
    {
        return masked(CellMask::Singular);
    }
    match phasematch::solve_period(material, config, pump, signal, temperature_k) {
        Err(_) => masked(CellMask::SignalOutOfRange),
        Ok(sol) => {
            if sol.regime == Regime::Singular || !sol.theta_deg.is_finite() {
                return masked(CellMask::Singular);
            }
            CellValue {
                theta: Some(sol.theta_deg),
                grating_abs: Some(sol.grating_period_um.abs().min(GRATING_CAP_UM)),
                mask: CellMask::Ok,
            }
        }
    }
}

/// Scan a configuration over pump/signal ranges at `resolution` samples per
/// axis, extracting iso-theta loci for 0, 45 and 90 degrees.
pub fn scan(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    pump_range_um: (f64, f64),
    signal_range_um: (f64, f64),
    resolution: usize,
    temperature_k: f64,
    database_version: &str,
) -> Result<GridMap> {
    if resolution < 2 {
        return Err(Error::domain("resolution must be at least 2 samples per axis"));
    }
    if !(pump_range_um.0 < pump_range_um.1) || !(signal_range_um.0 < signal_range_um.1) {
        return Err(Error::domain("scan ranges must be non-empty"));
    }
    let pump_samples = linspace(pump_range_um.0, pump_range_um.1, resolution);
    let signal_samples = linspace(signal_range_um.0, signal_range_um.1, resolution);
    let half_step_signal = 0.5 * (signal_samples[1] - signal_samples[0]);

    let cells: Vec<CellValue> = pump_samples
        .par_iter()
        .flat_map_iter(|&pump| {
            signal_samples.iter().map(move |&signal| (pump, signal))
        })
        .map(|(pump, signal)| {
            evaluate_cell(material, config, pump, signal, half_step_signal, temperature_k)
        })
        .collect();

    let mut map = GridMap {
        material_id: material.id.clone(),
        config: *config,
        temperature_k,
        database_version: database_version.to_string(),
        birefringent_qpm_threshold_um: material.birefringent_qpm_threshold_um,
        pump_samples_um: pump_samples,
        signal_samples_um: signal_samples,
        theta_deg: cells.iter().map(|c| c.theta).collect(),
        grating_abs_um: cells.iter().map(|c| c.grating_abs).collect(),
        mask: cells.iter().map(|c| c.mask).collect(),
        loci: Vec::new(),
    };
    extract_loci(material, config, temperature_k, &mut map);
    Ok(map)
}

// ---------------------------------------------------------------------------
// Contour extraction: marching squares on the theta layer with per-vertex
// bisection refinement against the exact angle function.
// ---------------------------------------------------------------------------

fn theta_exact(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    pump: f64,
    signal: f64,
    temperature_k: f64,
) -> Option<f64> {
    let triple = WavelengthTriple::from_pump_signal(pump, signal).ok()?;
    let point = gvm::dispersion_parameter(material, config, &triple, temperature_k).ok()?;
    point.theta_deg.is_finite().then_some(point.theta_deg)
}

/// Scalar field whose zero set is the target contour.  The `|theta| = 90`
/// boundary coincides with the angle wrap, so it is contoured on the
/// cotangent, which passes through zero there; other targets use
/// `theta - target` on wrap-free cells.
#[derive(Clone, Copy)]
enum ContourField {
    Angle(f64),
    CoTangent,
}

impl ContourField {
    fn for_target(target: f64) -> ContourField {
        if (target.abs() - 90.0).abs() < 1e-9 {
            ContourField::CoTangent
        } else {
            ContourField::Angle(target)
        }
    }

    fn value(self, theta_deg: f64) -> f64 {
        match self {
            ContourField::Angle(target) => theta_deg - target,
            ContourField::CoTangent => 1.0 / theta_deg.to_radians().tan(),
        }
    }

    /// Cells where the field itself wraps must not be contoured.
    fn cell_is_wrapped(self, corners: &[f64; 4]) -> bool {
        match self {
            ContourField::Angle(_) => {
                let max = corners.iter().cloned().fold(f64::MIN, f64::max);
                let min = corners.iter().cloned().fold(f64::MAX, f64::min);
                max - min > 90.0
            }
            // the cotangent wraps at theta = 0
            ContourField::CoTangent => corners.iter().any(|t| t.abs() < 45.0),
        }
    }
}

/// Refine a sign change of the contour field between two points on a grid
/// edge (an axis-aligned segment).
fn refine_on_edge(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    field: ContourField,
    a: (f64, f64),
    b: (f64, f64),
    fa: f64,
    temperature_k: f64,
) -> (f64, f64) {
    let mut lo = a;
    let mut hi = b;
    let mut flo = fa;
    let dist = |p: (f64, f64), q: (f64, f64)| (p.0 - q.0).abs().max((p.1 - q.1).abs());
    while dist(lo, hi) > VERTEX_TOL_UM {
        let mid = (0.5 * (lo.0 + hi.0), 0.5 * (lo.1 + hi.1));
        let fm = match theta_exact(material, config, mid.0, mid.1, temperature_k) {
            Some(t) => field.value(t),
            None => break,
        };
        if fm == 0.0 {
            return mid;
        }
        if (flo < 0.0) != (fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    (0.5 * (lo.0 + hi.0), 0.5 * (lo.1 + hi.1))
}

/// A refined contour vertex keyed by the grid edge it sits on.
type EdgeVertex = (usize, (f64, f64));

/// Join refined segments into polylines via shared integer edge keys.
fn chain_segments(segments: Vec<(EdgeVertex, EdgeVertex)>) -> Vec<Vec<(f64, f64)>> {
    use std::collections::BTreeMap;
    // adjacency: edge key -> (segment index, other endpoint key)
    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (si, ((ka, _), (kb, _))) in segments.iter().enumerate() {
        adjacency.entry(*ka).or_default().push(si);
        adjacency.entry(*kb).or_default().push(si);
    }
    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let ((ka, pa), (kb, pb)) = segments[start];
        let mut keys = vec![ka, kb];
        let mut points = vec![pa, pb];
        // grow forward from the tail, then backward from the head
        for end in [true, false] {
            loop {
                let key = if end { *keys.last().unwrap() } else { keys[0] };
                let Some(cands) = adjacency.get(&key) else { break };
                let Some(&si) = cands.iter().find(|&&si| !used[si]) else {
                    break;
                };
                used[si] = true;
                let ((k1, p1), (k2, p2)) = segments[si];
                let (nk, np) = if k1 == key { (k2, p2) } else { (k1, p1) };
                if end {
                    keys.push(nk);
                    points.push(np);
                } else {
                    keys.insert(0, nk);
                    points.insert(0, np);
                }
            }
        }
        lines.push(points);
    }
    lines
}

fn extract_target(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    temperature_k: f64,
    map: &GridMap,
    target: f64,
) -> Vec<Vec<(f64, f64)>> {
    let (np, ns) = map.resolution();
    let pump = &map.pump_samples_um;
    let signal = &map.signal_samples_um;
    let field = ContourField::for_target(target);
    let theta = |i: usize, j: usize| -> Option<f64> { map.theta_deg[map.index(i, j)] };
    // Edge keys: horizontal edge (i,j)-(i,j+1) -> 2*(i*ns+j), vertical edge
    // (i,j)-(i+1,j) -> 2*(i*ns+j)+1.
    let h_edge = |i: usize, j: usize| 2 * (i * ns + j);
    let v_edge = |i: usize, j: usize| 2 * (i * ns + j) + 1;
    let mut segments: Vec<(EdgeVertex, EdgeVertex)> = Vec::new();

    let crossing = |key: usize,
                        a: (f64, f64),
                        b: (f64, f64),
                        fa: f64,
                        fb: f64|
     -> Option<EdgeVertex> {
        if fa == 0.0 {
            return Some((key, a));
        }
        if (fa < 0.0) == (fb < 0.0) {
            return None;
        }
        Some((key, refine_on_edge(material, config, field, a, b, fa, temperature_k)))
    };

    for i in 0..np - 1 {
        for j in 0..ns - 1 {
            let corners = [
                theta(i, j),
                theta(i, j + 1),
                theta(i + 1, j),
                theta(i + 1, j + 1),
            ];
            let [Some(t00), Some(t01), Some(t10), Some(t11)] = corners else {
                continue; // masked cells never contribute vertices
            };
            if field.cell_is_wrapped(&[t00, t01, t10, t11]) {
                continue;
            }
            let (f00, f01, f10, f11) = (
                field.value(t00),
                field.value(t01),
                field.value(t10),
                field.value(t11),
            );
            let p0 = (pump[i], signal[j]);
            let p1 = (pump[i], signal[j + 1]);
            let p2 = (pump[i + 1], signal[j]);
            let p3 = (pump[i + 1], signal[j + 1]);
            let mut hits: Vec<EdgeVertex> = Vec::new();
            if let Some(h) = crossing(h_edge(i, j), p0, p1, f00, f01) {
                hits.push(h);
            }
            if let Some(h) = crossing(h_edge(i + 1, j), p2, p3, f10, f11) {
                hits.push(h);
            }
            if let Some(h) = crossing(v_edge(i, j), p0, p2, f00, f10) {
                hits.push(h);
            }
            if let Some(h) = crossing(v_edge(i, j + 1), p1, p3, f01, f11) {
                hits.push(h);
            }
            match hits.len() {
                2 => segments.push((hits[0], hits[1])),
                4 => {
                    // saddle: pair by the cell-centre sign
                    let centre = 0.25 * (f00 + f01 + f10 + f11);
                    let (a, b, c, d) = (hits[0], hits[1], hits[2], hits[3]);
                    if (centre < 0.0) == (f00 < 0.0) {
                        segments.push((a, d));
                        segments.push((b, c));
                    } else {
                        segments.push((a, b));
                        segments.push((c, d));
                    }
                }
                _ => {}
            }
        }
    }
    chain_segments(segments)
}

fn extract_loci(
    material: &MaterialRecord,
    config: &PhaseMatchConfig,
    temperature_k: f64,
    map: &mut GridMap,
) {
    let mut loci = Vec::new();
    for target in [0.0, 45.0, 90.0] {
        let lines = extract_target(material, config, temperature_k, map, target);
        for (k, points) in lines.into_iter().enumerate() {
            loci.push(Polyline {
                name: format!("theta{}_{k}", target as i64),
                theta_target_deg: Some(target),
                points,
            });
        }
    }
    // Analytic degeneracy line, clipped to the grid box.
    let (p_lo, p_hi) = (
        map.pump_samples_um[0],
        *map.pump_samples_um.last().unwrap(),
    );
    let (s_lo, s_hi) = (
        map.signal_samples_um[0],
        *map.signal_samples_um.last().unwrap(),
    );
    let points: Vec<(f64, f64)> = map
        .pump_samples_um
        .iter()
        .filter(|&&p| 2.0 * p >= s_lo && 2.0 * p <= s_hi && p >= p_lo && p <= p_hi)
        .map(|&p| (p, 2.0 * p))
        .collect();
    if points.len() >= 2 {
        loci.push(Polyline {
            name: "degeneracy".into(),
            theta_target_deg: None,
            points,
        });
    }
    map.loci = loci;
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::domain(format!("unknown export format '{other}'"))),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Write the cell grid as CSV (one row per cell, fixed column order) and
/// the loci to a sibling `<stem>.loci.csv` file.
pub fn export_csv(map: &GridMap, path: &Path) -> Result<()> {
    let mut out = String::new();
    out.push_str("lambda_p_um,lambda_s_um,lambda_i_um,theta_deg,grating_abs_um,mask\n");
    for (i, &p) in map.pump_samples_um.iter().enumerate() {
        for (j, &s) in map.signal_samples_um.iter().enumerate() {
            let k = map.index(i, j);
            let idler = phasematch::idler_wavelength(p, s)
                .map(|v| format!("{v:.6}"))
                .unwrap_or_default();
            let theta = map.theta_deg[k]
                .map(|v| format!("{v:.4}"))
                .unwrap_or_default();
            let grating = map.grating_abs_um[k]
                .map(|v| format!("{v:.4}"))
                .unwrap_or_default();
            out.push_str(&format!(
                "{p:.6},{s:.6},{idler},{theta},{grating},{}\n",
                map.mask[k].as_str()
            ));
        }
    }
    std::fs::write(path, out).map_err(io_err(path))?;

    let loci_path = path.with_extension("loci.csv");
    let mut out = String::new();
    out.push_str("locus,vertex,lambda_p_um,lambda_s_um\n");
    for line in &map.loci {
        for (v, (p, s)) in line.points.iter().enumerate() {
            out.push_str(&format!("{},{v},{p:.7},{s:.7}\n", line.name));
        }
    }
    std::fs::write(&loci_path, out).map_err(io_err(&loci_path))?;
    Ok(())
}

/// Full structure including metadata; stable byte-for-byte for identical
/// inputs.
pub fn export_json(map: &GridMap, path: &Path) -> Result<()> {
    let mut buf = serde_json::to_vec_pretty(map)
        .map_err(|e| Error::Parse(format!("serialising map: {e}")))?;
    buf.push(b'\n');
    let mut file = std::fs::File::create(path).map_err(io_err(path))?;
    file.write_all(&buf).map_err(io_err(path))?;
    Ok(())
}

pub fn export(map: &GridMap, format: ExportFormat, path: &Path) -> Result<()> {
    match format {
        ExportFormat::Csv => export_csv(map, path),
        ExportFormat::Json => export_json(map, path),
    }
}

/// Read back a JSON export.
pub fn load_json(path: &Path) -> Result<GridMap> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("parsing map: {e}")))
}
