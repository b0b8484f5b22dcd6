//! Acceptance suite: every reference operating point and every property
//! budget pinned with explicit tolerances, one printed pass/fail line per
//! criterion.
//!
//! Wavelength targets carry 1% relative tolerance and length targets 15%
//! (published dispersion sets disagree at that level); up-conversion
//! arithmetic carries 0.1 nm.

use pdc_match::gvm;
use pdc_match::materials::{bundled_database, MaterialDatabase, PmType};
use pdc_match::phasematch::{self, WavelengthTriple};
use pdc_match::sweep::{self, CellMask};
use pdc_match::upconv::{self, DetectorBand};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const T: f64 = 300.0;
const WL_TOL: f64 = 0.01;
const LEN_TOL: f64 = 0.15;

fn db() -> MaterialDatabase {
    bundled_database()
}

fn report(criterion: &str, passed: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {criterion}: {detail}");
}

fn within(computed: f64, expected: f64, tol: f64) -> bool {
    (computed - expected).abs() <= tol * expected.abs()
}

/// Nearest root (by pump) of a degenerate locus scan.
fn degenerate_root(
    db: &MaterialDatabase,
    id: &str,
    theta: f64,
    range: (f64, f64),
    near: f64,
) -> pdc_match::MatchSolution {
    let m = db.get(id).unwrap();
    let cfg = m.config(PmType::TypeII).unwrap();
    let roots = gvm::find_degenerate_locus(m, cfg, theta, range, T).unwrap();
    roots
        .into_iter()
        .min_by(|a, b| {
            (a.triple.pump_um - near)
                .abs()
                .total_cmp(&(b.triple.pump_um - near).abs())
        })
        .expect("no degenerate root in range")
}

#[test]
fn criterion_01_ppktp_symmetric_degenerate_791nm() {
    let db = db();
    let sol = degenerate_root(&db, "PPKTP", 45.0, (0.70, 0.90), 0.791);
    let pump_nm = sol.triple.pump_um * 1000.0;
    report(
        "01",
        within(pump_nm, 791.0, WL_TOL),
        &format!("PPKTP type-II degenerate theta=45 pump root {pump_nm:.2} nm vs 791 nm +-1%"),
    );
}

#[test]
fn criterion_02_ppktp_asymmetric_degenerate_1200nm() {
    let db = db();
    let sol = degenerate_root(&db, "PPKTP", 0.0, (1.00, 1.50), 1.2);
    let pump_nm = sol.triple.pump_um * 1000.0;
    report(
        "02",
        within(pump_nm, 1200.0, WL_TOL),
        &format!("PPKTP type-II degenerate theta=0 pump root {pump_nm:.2} nm vs 1200 nm +-1%"),
    );
}

#[test]
fn criterion_03_ktp_nondegenerate_745nm_pump() {
    let db = db();
    let ktp = db.get("PPKTP").unwrap();
    let cfg = ktp.config(PmType::TypeII).unwrap();
    let roots =
        gvm::find_nondegenerate_locus(ktp, cfg, 45.0, 0.7456, (0.90, 1.20), T).unwrap();
    let sol = roots
        .iter()
        .min_by(|a, b| {
            (a.triple.signal_um - 1.0714)
                .abs()
                .total_cmp(&(b.triple.signal_um - 1.0714).abs())
        })
        .expect("no theta=45 signal root");
    let signal_nm = sol.triple.signal_um * 1000.0;
    let signal_ok = within(signal_nm, 1071.4, WL_TOL);
    // stated idler follows from energy conservation at the stated signal
    let partner = phasematch::idler_wavelength(0.7456, 1.0714).unwrap() * 1000.0;
    let idler_ok = (partner - 2451.8).abs() <= 0.25; // paper-rounded value, nm
    let grating_ok = sol.grating_period_um.abs() > 250.0;
    report(
        "03",
        signal_ok && idler_ok && grating_ok,
        &format!(
            "KTP 745.6 nm pump: theta=45 signal root {signal_nm:.2} nm vs 1071.4 +-1%; \
             energy-conservation idler of 1071.4 nm = {partner:.1} nm vs 2451.8; \
             |grating| {:.0} um > 250 um (birefringent regime)",
            sol.grating_period_um.abs()
        ),
    );
}

#[test]
fn criterion_04_ppln_type_i_degenerate_784nm() {
    let db = db();
    let ppln = db.get("PPLN").unwrap();
    let cfg = ppln.config(PmType::TypeI).unwrap();
    let roots = gvm::find_degenerate_locus(ppln, cfg, 0.0, (0.70, 0.90), T).unwrap();
    assert_eq!(roots.len(), 1, "expected a single pinch point");
    let pump_nm = roots[0].triple.pump_um * 1000.0;
    report(
        "04",
        within(pump_nm, 784.0, WL_TOL),
        &format!("PPLN type-I degenerate solution at pump {pump_nm:.2} nm vs 784 nm +-1%"),
    );
}

#[test]
fn criterion_05_ppln_type_ii_symmetric_1775nm() {
    let db = db();
    let sol = degenerate_root(&db, "PPLN", 45.0, (1.50, 2.00), 1.775);
    let pump_nm = sol.triple.pump_um * 1000.0;
    report(
        "05",
        within(pump_nm, 1775.0, WL_TOL),
        &format!("PPLN type-II degenerate theta=45 pump root {pump_nm:.2} nm vs 1775 nm +-1%"),
    );
}

#[test]
fn criterion_06_csp_type_ii_operating_points() {
    let db = db();
    // theta=0 under either daughter-role assignment: two roots in one scan
    let m = db.get("CSP").unwrap();
    let cfg = m.config(PmType::TypeII).unwrap();
    let zero_roots = gvm::find_degenerate_locus(m, cfg, 0.0, (1.80, 3.80), T).unwrap();
    let sym = degenerate_root(&db, "CSP", 45.0, (2.20, 3.00), 2.573);

    let mut all = true;
    let mut detail = String::new();
    for (label, expected_nm, expected_len_um) in
        [("theta0-a", 2090.0, 1900.0), ("theta0-b", 3310.0, 2200.0)]
    {
        let sol = zero_roots
            .iter()
            .min_by(|a, b| {
                (a.triple.pump_um * 1000.0 - expected_nm)
                    .abs()
                    .total_cmp(&(b.triple.pump_um * 1000.0 - expected_nm).abs())
            })
            .expect("missing CSP theta=0 root");
        let pump_nm = sol.triple.pump_um * 1000.0;
        let len = sol.grating_period_um.abs();
        all &= within(pump_nm, expected_nm, WL_TOL) && within(len, expected_len_um, LEN_TOL);
        detail.push_str(&format!(
            "{label}: {pump_nm:.1} nm (vs {expected_nm}), |L| {len:.0} um (vs {expected_len_um}); "
        ));
    }
    let pump_nm = sym.triple.pump_um * 1000.0;
    let len = sym.grating_period_um.abs();
    all &= within(pump_nm, 2573.0, WL_TOL) && within(len, 1600.0, LEN_TOL);
    detail.push_str(&format!(
        "theta45: {pump_nm:.1} nm (vs 2573), |L| {len:.0} um (vs 1600)"
    ));
    report("06", all, &format!("CSP type-II degenerate: {detail}"));
}

#[test]
fn criterion_07_zgp_type_ii_operating_points() {
    // The listed 3014 nm point is the D = 1 (theta = 45) event: the pump
    // group delay falls midway between the daughters', as at CSP 2573 nm;
    // the outer points are the asymmetric events of the two daughter-role
    // assignments.
    let db = db();
    let m = db.get("ZGP").unwrap();
    let cfg = m.config(PmType::TypeII).unwrap();
    let zero_roots = gvm::find_degenerate_locus(m, cfg, 0.0, (2.20, 4.20), T).unwrap();
    let sym = degenerate_root(&db, "ZGP", 45.0, (2.60, 3.40), 3.014);

    let mut all = true;
    let mut detail = String::new();
    for (label, expected_nm, expected_len_um) in
        [("theta0-a", 2520.0, 1300.0), ("theta0-b", 3692.0, 1500.0)]
    {
        let sol = zero_roots
            .iter()
            .min_by(|a, b| {
                (a.triple.pump_um * 1000.0 - expected_nm)
                    .abs()
                    .total_cmp(&(b.triple.pump_um * 1000.0 - expected_nm).abs())
            })
            .expect("missing ZGP theta=0 root");
        let pump_nm = sol.triple.pump_um * 1000.0;
        let len = sol.grating_period_um.abs();
        all &= within(pump_nm, expected_nm, WL_TOL) && within(len, expected_len_um, LEN_TOL);
        detail.push_str(&format!(
            "{label}: {pump_nm:.1} nm (vs {expected_nm}), |L| {len:.0} um (vs {expected_len_um}); "
        ));
    }
    let pump_nm = sym.triple.pump_um * 1000.0;
    let len = sym.grating_period_um.abs();
    all &= within(pump_nm, 3014.0, WL_TOL) && within(len, 8600.0, LEN_TOL);
    detail.push_str(&format!(
        "mid point (D=1): {pump_nm:.1} nm (vs 3014), |L| {len:.0} um (vs 8600)"
    ));
    report("07", all, &format!("ZGP type-II degenerate: {detail}"));
}

#[test]
fn criterion_08_window_masking() {
    let db = db();
    let cases: &[(&str, PmType, Option<f64>, Option<f64>)] = &[
        // (material, type, min unmasked pump, max unmasked idler)
        ("OPGaAs", PmType::Type0, Some(1.73), None),
        ("OPGaP", PmType::Type0, Some(1.0), None),
        ("PPLN", PmType::Type0, None, Some(4.5)),
        ("PPKTP", PmType::TypeII, None, Some(4.5)),
        ("ZGP", PmType::TypeII, None, Some(12.3)),
        ("CSP", PmType::TypeII, None, Some(9.0)),
    ];
    let mut all = true;
    let mut detail = String::new();
    for &(id, ty, pump_floor, idler_cap) in cases {
        let m = db.get(id).unwrap();
        let cfg = m.config(ty).unwrap();
        let map = sweep::scan(m, cfg, m.default_pump_um, m.default_signal_um, 64, T, "test")
            .unwrap();
        let mut ok = true;
        for (i, &p) in map.pump_samples_um.iter().enumerate() {
            for (j, &s) in map.signal_samples_um.iter().enumerate() {
                if map.mask[map.index(i, j)] != CellMask::Ok {
                    continue;
                }
                if let Some(floor) = pump_floor {
                    ok &= p >= floor;
                }
                if let Some(cap) = idler_cap {
                    let idler = phasematch::idler_wavelength(p, s).unwrap();
                    ok &= idler <= cap * (1.0 + 1e-12);
                }
            }
        }
        all &= ok;
        detail.push_str(&format!("{id} {}; ", if ok { "ok" } else { "VIOLATED" }));
    }
    report("08", all, &format!("transparency/TPA masking on survey maps: {detail}"));
}

#[test]
fn criterion_09_type0_degeneracy_singularity() {
    let db = db();
    let mut all = true;
    let mut detail = String::new();
    for id in ["PPKTP", "PPLN", "OPGaP", "OPGaAs"] {
        let m = db.get(id).unwrap();
        let cfg = m.config(PmType::Type0).unwrap();
        let map = sweep::scan(m, cfg, m.default_pump_um, m.default_signal_um, 97, T, "test")
            .unwrap();
        let signal_step = map.signal_samples_um[1] - map.signal_samples_um[0];
        let mut on_line_ok = 0usize;
        let mut singular_cells = 0usize;
        for (i, &p) in map.pump_samples_um.iter().enumerate() {
            for (j, &s) in map.signal_samples_um.iter().enumerate() {
                let k = map.index(i, j);
                if (s - 2.0 * p).abs() <= 0.5 * signal_step {
                    if map.mask[k] == CellMask::Ok {
                        on_line_ok += 1;
                    }
                    if map.mask[k] == CellMask::Singular {
                        singular_cells += 1;
                    }
                }
            }
        }
        // no high-purity locus vertex may sit on the degeneracy line
        let mut vertex_ok = true;
        for line in &map.loci {
            if !matches!(line.theta_target_deg, Some(t) if t == 0.0 || t == 90.0) {
                continue;
            }
            for &(p, s) in &line.points {
                vertex_ok &= (s - 2.0 * p).abs() > 0.5 * signal_step;
            }
        }
        let ok = on_line_ok == 0 && singular_cells > 0 && vertex_ok;
        all &= ok;
        detail.push_str(&format!(
            "{id}: {singular_cells} singular cells, {on_line_ok} unmasked on-line, loci clear {vertex_ok}; "
        ));
    }
    report("09", all, &format!("type-0 degeneracy flagged singular: {detail}"));
}

#[test]
fn criterion_10_upconversion_arithmetic() {
    let db = db();
    // 1/(1/1.250 - 1/6.028) = 1.5770197 um by the energy relation (the
    // arithmetic oracle governs; see the checks module note on rounding)
    let cases: &[(&str, f64, f64, f64, DetectorBand)] = &[
        ("OPGaP", 1.250, 6.028, 1577.0197, DetectorBand::InGaAs),
        ("PPLN", 0.660, 3.000, 846.1538, DetectorBand::SiSpad),
        ("PPLN", 0.660, 5.000, 760.3687, DetectorBand::SiSpad),
    ];
    let mut all = true;
    let mut detail = String::new();
    for &(id, seed, midir, expected_nm, band) in cases {
        let m = db.get(id).unwrap();
        let sol = upconv::upconvert(m, seed, midir, T).unwrap();
        let out_nm = sol.output_um * 1000.0;
        let ok = (out_nm - expected_nm).abs() <= 0.1 && sol.detector_band == band;
        all &= ok;
        detail.push_str(&format!(
            "{id} seed {seed} um, mid-IR {midir} um -> {out_nm:.2} nm ({:?}); ",
            sol.detector_band
        ));
    }
    report("10", all, &format!("up-conversion arithmetic +-0.1 nm with bands: {detail}"));
}

#[test]
fn criterion_11a_energy_conservation_100k_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..100_000 {
        let pump: f64 = rng.gen_range(0.3..6.0);
        let signal: f64 = pump * rng.gen_range(1.0001..25.0);
        let t = WavelengthTriple::from_pump_signal(pump, signal).unwrap();
        worst = worst.max(t.energy_residual_rel().abs());
    }
    report(
        "11a",
        worst <= 1e-12,
        &format!("energy conservation on 1e5 random triples: worst residual {worst:.3e} <= 1e-12"),
    );
}

#[test]
fn criterion_11b_derivative_agreement() {
    let db = db();
    let mut worst: f64 = 0.0;
    for m in &db.materials {
        for &axis in m.axes.keys() {
            let (lo, hi) = m.evaluable_range(axis).unwrap();
            let a = lo + 0.02 * (hi - lo);
            let b = hi - 0.02 * (hi - lo);
            for k in 0..100 {
                let l = a + (b - a) * k as f64 / 99.0;
                let analytic = m.dn_dlambda(axis, l, T).unwrap();
                let h = 1e-5 * l;
                let n = |x: f64| m.refractive_index(axis, x, T).unwrap();
                let d1 = (n(l + h) - n(l - h)) / (2.0 * h);
                let d2 = (n(l + h / 2.0) - n(l - h / 2.0)) / h;
                let fd = (4.0 * d2 - d1) / 3.0;
                worst = worst.max(((analytic - fd) / fd).abs());
            }
        }
    }
    report(
        "11b",
        worst <= 1e-8,
        &format!("analytic vs finite-difference dn/dL on 100-point grids: worst {worst:.3e} <= 1e-8"),
    );
}

#[test]
fn criterion_11c_solve_then_evaluate_residual() {
    let db = db();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce5);
    let mut worst: f64 = 0.0;
    let mut evaluated = 0usize;
    for m in &db.materials {
        for cfg in &m.configs {
            let mut count = 0usize;
            while count < 2500 {
                let pump = rng.gen_range(m.default_pump_um.0..m.default_pump_um.1);
                let signal = rng.gen_range(m.default_signal_um.0..m.default_signal_um.1);
                if signal <= pump {
                    continue;
                }
                count += 1;
                match phasematch::solve_period(m, cfg, pump, signal, T) {
                    Err(_) => continue, // outside the evaluable region
                    Ok(sol) => {
                        evaluated += 1;
                        worst = worst.max(sol.delta_k_residual_rad_per_um.abs());
                    }
                }
            }
        }
    }
    report(
        "11c",
        worst <= 1e-9 && evaluated > 10_000,
        &format!(
            "solve->evaluate mismatch residual on 50x50 random grids per config: \
             worst {worst:.3e} rad/um over {evaluated} solutions"
        ),
    );
}

#[test]
fn criterion_11d_locus_roots_reevaluate() {
    let db = db();
    let mut worst: f64 = 0.0;
    let mut n_roots = 0usize;
    for (id, theta, range) in [
        ("PPKTP", 45.0, (0.70, 0.90)),
        ("PPKTP", 0.0, (1.00, 1.50)),
        ("PPLN", 45.0, (1.50, 2.00)),
        ("CSP", 0.0, (1.80, 3.80)),
        ("CSP", 45.0, (2.20, 3.00)),
        ("ZGP", 0.0, (2.20, 4.20)),
        ("ZGP", 45.0, (2.60, 3.40)),
    ] {
        let m = db.get(id).unwrap();
        let cfg = m.config(PmType::TypeII).unwrap();
        for sol in gvm::find_degenerate_locus(m, cfg, theta, range, T).unwrap() {
            worst = worst.max((sol.theta_deg - theta).abs());
            n_roots += 1;
        }
    }
    report(
        "11d",
        worst <= 1e-3 && n_roots >= 9,
        &format!("{n_roots} locus roots re-evaluate to their target within {worst:.2e} deg <= 1e-3"),
    );
}

#[test]
fn criterion_11e_map_resolution_convergence() {
    let db = db();
    let m = db.get("PPLN").unwrap();
    let cfg = m.config(PmType::TypeII).unwrap();
    // smooth window: unmasked, non-degenerate, clear of the |theta| = 90 pole
    let window = ((0.85, 0.95), (2.20, 2.60));
    let coarse = sweep::scan(m, cfg, window.0, window.1, 97, T, "test").unwrap();
    let fine = sweep::scan(m, cfg, window.0, window.1, 193, T, "test").unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..24 {
        for j in 0..24 {
            let p = 0.853 + 0.094 * i as f64 / 24.0;
            let s = 2.21 + 0.38 * j as f64 / 24.0;
            let a = coarse.interpolate_theta(p, s).unwrap();
            let b = fine.interpolate_theta(p, s).unwrap();
            worst = worst.max((a - b).abs());
        }
    }
    report(
        "11e",
        worst <= 0.05,
        &format!("doubling map resolution moves interpolated theta by {worst:.4} deg <= 0.05"),
    );
}

// ---------------------------------------------------------------------------
// Criterion 12: figure-level colour values are not desk-verifiable; the
// substitute is the property budget above plus a locus-topology check
// against a brute-force fine-grid classification.
// ---------------------------------------------------------------------------

/// Count connected components of the theta = target crossing set on a
/// brute-force grid, with the same masking rules as the map scan.
fn brute_force_components(
    m: &pdc_match::MaterialRecord,
    cfg: &pdc_match::PhaseMatchConfig,
    pump_range: (f64, f64),
    signal_range: (f64, f64),
    res: usize,
    target: f64,
) -> usize {
    let pump: Vec<f64> = (0..res)
        .map(|k| pump_range.0 + (pump_range.1 - pump_range.0) * k as f64 / (res - 1) as f64)
        .collect();
    let signal: Vec<f64> = (0..res)
        .map(|k| signal_range.0 + (signal_range.1 - signal_range.0) * k as f64 / (res - 1) as f64)
        .collect();
    let half_step = 0.5 * (signal[1] - signal[0]);
    let theta = |p: f64, s: f64| -> Option<f64> {
        if s <= p {
            return None;
        }
        let idler = phasematch::idler_wavelength(p, s).ok()?;
        if idler > m.transparency_um.1 || !m.pump_above_tpa(p) {
            return None;
        }
        if cfg.signal_axis == cfg.idler_axis && (s - 2.0 * p).abs() <= half_step {
            return None;
        }
        let t = WavelengthTriple::from_pump_signal(p, s).ok()?;
        let point = gvm::dispersion_parameter(m, cfg, &t, T).ok()?;
        point.theta_deg.is_finite().then_some(point.theta_deg)
    };
    let field: Vec<Option<f64>> = pump
        .iter()
        .flat_map(|&p| signal.iter().map(move |&s| theta(p, s)))
        .collect();
    let idx = |i: usize, j: usize| i * res + j;
    let ninety = (target.abs() - 90.0).abs() < 1e-9;
    // crossing cells
    let mut crossing = vec![false; (res - 1) * (res - 1)];
    let cidx = |i: usize, j: usize| i * (res - 1) + j;
    for i in 0..res - 1 {
        for j in 0..res - 1 {
            let vals = [
                field[idx(i, j)],
                field[idx(i, j + 1)],
                field[idx(i + 1, j)],
                field[idx(i + 1, j + 1)],
            ];
            let [Some(a), Some(b), Some(c), Some(d)] = vals else {
                continue;
            };
            let thetas = [a, b, c, d];
            // same field and wrap rules as the map contour extraction: the
            // ninety-degree boundary is the angle pole, contoured on the
            // cotangent
            let f: Vec<f64> = if ninety {
                if thetas.iter().any(|t| t.abs() < 45.0) {
                    continue;
                }
                thetas.iter().map(|t| 1.0 / t.to_radians().tan()).collect()
            } else {
                let spread = thetas.iter().cloned().fold(f64::MIN, f64::max)
                    - thetas.iter().cloned().fold(f64::MAX, f64::min);
                if spread > 90.0 {
                    continue;
                }
                thetas.iter().map(|t| t - target).collect()
            };
            let has_pos = f.iter().any(|&v| v > 0.0);
            let has_neg = f.iter().any(|&v| v < 0.0);
            crossing[cidx(i, j)] = has_pos && has_neg;
        }
    }
    // union-find over edge-adjacent crossing cells
    let mut parent: Vec<usize> = (0..crossing.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..res - 1 {
        for j in 0..res - 1 {
            if !crossing[cidx(i, j)] {
                continue;
            }
            if i + 1 < res - 1 && crossing[cidx(i + 1, j)] {
                let (a, b) = (find(&mut parent, cidx(i, j)), find(&mut parent, cidx(i + 1, j)));
                parent[a] = b;
            }
            if j + 1 < res - 1 && crossing[cidx(i, j + 1)] {
                let (a, b) = (find(&mut parent, cidx(i, j)), find(&mut parent, cidx(i, j + 1)));
                parent[a] = b;
            }
        }
    }
    let mut sizes = std::collections::BTreeMap::new();
    let hits: Vec<usize> = (0..crossing.len()).filter(|&k| crossing[k]).collect();
    for k in hits {
        *sizes.entry(find(&mut parent, k)).or_insert(0usize) += 1;
    }
    // macroscopic components only: sub-grid fragments where contours meet
    // are extraction noise at any finite resolution
    sizes.values().filter(|&&s| s >= 5).count()
}

#[test]
fn criterion_12_ppln_type_i_boundary_topology() {
    let db = db();
    let m = db.get("PPLN").unwrap();
    let cfg = m.config(PmType::TypeI).unwrap();
    let window = ((0.55, 1.00), (0.70, 2.20));
    let map = sweep::scan(m, cfg, window.0, window.1, 161, T, "test").unwrap();
    let mut all = true;
    let mut detail = String::new();
    for target in [0.0, 90.0] {
        let polylines = map
            .loci
            .iter()
            .filter(|l| l.theta_target_deg == Some(target) && l.points.len() >= 5)
            .count();
        let oracle = brute_force_components(m, cfg, window.0, window.1, 321, target);
        all &= polylines == oracle;
        detail.push_str(&format!(
            "theta={target}: {polylines} map components vs {oracle} brute-force; "
        ));
    }
    report(
        "12",
        all,
        &format!(
            "figure colour values are not desk-verifiable; substituted by the property \
             budget plus locus topology: {detail}"
        ),
    );
}

#[test]
fn reference_suite_is_green_end_to_end() {
    // The machine-readable summary the `reproduce` command writes must agree
    // with the criteria above.
    let db = db();
    let results = pdc_match::validation::run_all(&db, T);
    for r in &results {
        println!(
            "reference {} [{}] expected {} computed {:?}",
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.expected,
            r.computed
        );
    }
    assert!(results.iter().all(|r| r.passed && !r.skipped));
}
