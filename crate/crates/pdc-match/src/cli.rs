//! Command-line surface: every library operation as a subcommand, with a
//! shared database/temperature/format configuration.
//!
//! Exit codes: 0 success, 1 domain or validation failure, 2 usage error.
//! Diagnostics go to stderr, data to stdout or `--output`.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::dispersion;
use crate::error::{Error, Result};
use crate::gvm;
use crate::materials::{self, Axis, MaterialDatabase, PmType};
use crate::phasematch::{self, MatchSolution};
use crate::sweep::{self, ExportFormat};
use crate::upconv;
use crate::validation;

/// Environment variable overriding the database path.
pub const DATABASE_ENV: &str = "PDC_MATCH_DB";

#[derive(Debug, Parser)]
#[command(
    name = "pdc-match",
    about = "Phase-matching, group-velocity matching and up-conversion for mid-IR nonlinear crystals",
    disable_version_flag = true
)]
struct CliArgs {
    /// Print tool and database versions.
    #[arg(long, global = false)]
    version: bool,

    #[command(flatten)]
    run: RunConfig,

    #[command(subcommand)]
    command: Option<Command>,
}

/// Shared run configuration.
#[derive(Debug, Args)]
struct RunConfig {
    /// Material database path (default: bundled copy, or $PDC_MATCH_DB).
    #[arg(long, global = true, env = DATABASE_ENV)]
    database: Option<PathBuf>,

    /// Evaluation temperature in kelvin.
    #[arg(long = "temp-k", global = true, default_value_t = materials::DEFAULT_TEMPERATURE_K)]
    temperature_k: f64,

    /// Interpret wavelength arguments as nanometres.
    #[arg(long, global = true)]
    nm: bool,

    /// Output format (csv applies to locus rows and map exports).
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "json", "csv"])]
    format: String,

    /// Write data output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

impl RunConfig {
    fn wavelength(&self, value: f64) -> f64 {
        if self.nm {
            value / 1000.0
        } else {
            value
        }
    }

    fn range(&self, pair: (f64, f64)) -> (f64, f64) {
        (self.wavelength(pair.0), self.wavelength(pair.1))
    }

    fn database(&self) -> Result<MaterialDatabase> {
        match &self.database {
            Some(path) => materials::load_database(path),
            None => Ok(materials::bundled_database()),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.temperature_k > 0.0) {
            return Err(Error::domain("temperature must be positive kelvin"));
        }
        Ok(())
    }
}

fn parse_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected 'lo,hi'".into());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| "bad number".to_string())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| "bad number".to_string())?;
    Ok((lo, hi))
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect the material database.
    Materials {
        #[command(subcommand)]
        action: MaterialsAction,
    },
    /// Refractive index of one axis at one wavelength.
    Nindex {
        id: String,
        axis: String,
        lambda: f64,
    },
    /// Phase index, group index and group delay.
    Gd {
        id: String,
        axis: String,
        lambda: f64,
    },
    /// Solve the grating period for a pump/signal pair.
    Solve {
        id: String,
        pm_type: String,
        pump: f64,
        signal: f64,
    },
    /// Find group-velocity-matching roots along the degeneracy line or at
    /// fixed pump.
    Locus {
        id: String,
        pm_type: String,
        /// Target matching angle in degrees.
        #[arg(long)]
        theta: f64,
        /// Scan the degenerate line (signal = 2 pump).
        #[arg(long, conflicts_with = "pump")]
        degenerate: bool,
        /// Fixed pump wavelength for a signal scan.
        #[arg(long)]
        pump: Option<f64>,
        /// Scan range 'lo,hi' (pump range when degenerate, signal range
        /// otherwise).
        #[arg(long, value_parser = parse_pair)]
        range: (f64, f64),
    },
    /// Sweep a pump x signal grid and export theta / grating maps
    /// (`--format csv` is the default; `--format json` for the full
    /// structure).
    Map {
        id: String,
        pm_type: String,
        /// Pump range 'lo,hi' (defaults to the database per-crystal window).
        #[arg(long, value_parser = parse_pair)]
        pump: Option<(f64, f64)>,
        /// Signal range 'lo,hi'.
        #[arg(long, value_parser = parse_pair)]
        signal: Option<(f64, f64)>,
        /// Samples per axis.
        #[arg(long, default_value_t = 512)]
        res: usize,
        /// Output file (required).
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Up-convert a mid-IR photon with a seed, or solve the seed for a
    /// target output.
    Upconvert {
        id: String,
        #[arg(long)]
        midir: f64,
        #[arg(long, conflicts_with = "target")]
        seed: Option<f64>,
        #[arg(long)]
        target: Option<f64>,
    },
    /// Export every survey map and run the reference checks, writing a
    /// machine-readable summary.
    Reproduce {
        /// Output directory.
        #[arg(long = "out-dir")]
        out_dir: PathBuf,
        /// Samples per axis for the exported maps.
        #[arg(long, default_value_t = 512)]
        res: usize,
    },
}

#[derive(Debug, Subcommand)]
enum MaterialsAction {
    /// One line per material.
    List,
    /// Full record for one material.
    Show { id: String },
}

struct Output<'a> {
    target: Option<&'a Path>,
}

impl<'a> Output<'a> {
    fn write(&self, data: &str) -> Result<()> {
        match self.target {
            Some(path) => std::fs::write(path, data).map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            }),
            None => {
                print!("{data}");
                std::io::stdout().flush().ok();
                Ok(())
            }
        }
    }
}

fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

fn solution_text(sol: &MatchSolution) -> String {
    let grating = if sol.grating_period_um.is_finite() {
        format!("{:.4} um", sol.grating_period_um)
    } else {
        "birefringent (exact)".to_string()
    };
    let theta = if sol.theta_deg.is_finite() {
        format!("{:.4} deg", sol.theta_deg)
    } else {
        "undefined (singular)".to_string()
    };
    let d = if sol.d.is_finite() {
        format!("{:.6}", sol.d)
    } else if sol.d.is_infinite() {
        "inf".to_string()
    } else {
        "undefined".to_string()
    };
    format!(
        "material            {}\n\
         configuration       {} ({} -> {} + {}), d_eff {} pm/V\n\
         pump                {:.6} um\n\
         signal              {:.6} um{}\n\
         idler               {:.6} um\n\
         grating period      {grating}\n\
         delta-k residual    {:.3e} rad/um\n\
         dispersion param D  {d}\n\
         gvm angle theta     {theta}\n\
         regime              {:?}\n\
         within transparency {}\n\
         pump above TPA      {}\n\
         birefringent QPM    {}\n",
        sol.material_id,
        sol.config.pm_type,
        sol.config.pump_axis,
        sol.config.signal_axis,
        sol.config.idler_axis,
        sol.config.d_eff_max_pm_per_v,
        sol.triple.pump_um,
        sol.triple.signal_um,
        if sol.triple.swapped { " (roles swapped)" } else { "" },
        sol.triple.idler_um,
        sol.delta_k_residual_rad_per_um,
        sol.regime,
        sol.feasibility.within_transparency,
        sol.feasibility.pump_above_tpa,
        sol.feasibility.birefringent_qpm_possible,
    )
}

fn run_command(cfg: &RunConfig, command: Command) -> Result<()> {
    cfg.validate()?;
    let db = cfg.database()?;
    let out = Output {
        target: cfg.output.as_deref(),
    };
    let temperature = cfg.temperature_k;

    match command {
        Command::Materials { action } => match action {
            MaterialsAction::List => {
                if cfg.format == "json" {
                    let rows: Vec<_> = db
                        .materials
                        .iter()
                        .map(|m| {
                            json!({
                                "id": m.id,
                                "name": m.name,
                                "crystal_class": m.crystal_class,
                                "transparency_um": [m.transparency_um.0, m.transparency_um.1],
                                "tpa_edge_um": m.tpa_edge_um,
                                "poleable": m.poleable,
                                "configs": m.configs.iter().map(|c| c.pm_type.to_string()).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    out.write(&to_json_pretty(&json!({
                        "database_version": db.version,
                        "materials": rows,
                    })))?;
                } else {
                    let mut text = format!(
                        "{:8} {:17} {:9} {:9} {:23} configs\n",
                        "id", "window (um)", "TPA (um)", "poleable", "class"
                    );
                    for m in &db.materials {
                        text.push_str(&format!(
                            "{:8} {:17} {:<9.2} {:9} {:23} {}\n",
                            m.id,
                            format!("{:.2} - {:.2}", m.transparency_um.0, m.transparency_um.1),
                            m.tpa_edge_um,
                            m.poleable,
                            format!("{:?}", m.crystal_class),
                            m.configs
                                .iter()
                                .map(|c| c.pm_type.to_string())
                                .collect::<Vec<_>>()
                                .join(",")
                        ));
                    }
                    out.write(&text)?;
                }
            }
            MaterialsAction::Show { id } => {
                let m = db.get(&id)?;
                out.write(&to_json_pretty(m))?;
            }
        },
        Command::Nindex { id, axis, lambda } => {
            let m = db.get(&id)?;
            let axis: Axis = axis.parse()?;
            let lambda_um = cfg.wavelength(lambda);
            let n = m.refractive_index(axis, lambda_um, temperature)?;
            if cfg.format == "json" {
                out.write(&to_json_pretty(&json!({
                    "material": m.id,
                    "axis": axis,
                    "lambda_um": lambda_um,
                    "temperature_k": temperature,
                    "n": n,
                })))?;
            } else {
                out.write(&format!(
                    "n({}, {axis}, {lambda_um} um, {temperature} K) = {n:.9}\n",
                    m.id
                ))?;
            }
        }
        Command::Gd { id, axis, lambda } => {
            let m = db.get(&id)?;
            let axis: Axis = axis.parse()?;
            let lambda_um = cfg.wavelength(lambda);
            let n = m.refractive_index(axis, lambda_um, temperature)?;
            let ng = dispersion::group_index(m, axis, lambda_um, temperature)?;
            let gd = dispersion::group_delay(m, axis, lambda_um, temperature)?;
            if cfg.format == "json" {
                out.write(&to_json_pretty(&json!({
                    "material": m.id,
                    "axis": axis,
                    "lambda_um": lambda_um,
                    "temperature_k": temperature,
                    "n": n,
                    "group_index": ng,
                    "group_delay_s_per_m": gd.value_s_per_m,
                })))?;
            } else {
                out.write(&format!(
                    "material     {}\naxis         {axis}\nlambda       {lambda_um} um\nn            {n:.9}\ngroup index  {ng:.9}\ngroup delay  {:.6e} s/m\n",
                    m.id, gd.value_s_per_m
                ))?;
            }
        }
        Command::Solve {
            id,
            pm_type,
            pump,
            signal,
        } => {
            let m = db.get(&id)?;
            let config = m.config(pm_type.parse()?)?;
            let sol = phasematch::solve_period(
                m,
                config,
                cfg.wavelength(pump),
                cfg.wavelength(signal),
                temperature,
            )?;
            if cfg.format == "json" {
                out.write(&to_json_pretty(&sol))?;
            } else {
                out.write(&solution_text(&sol))?;
            }
        }
        Command::Locus {
            id,
            pm_type,
            theta,
            degenerate,
            pump,
            range,
        } => {
            let m = db.get(&id)?;
            let config = m.config(pm_type.parse()?)?;
            let range = cfg.range(range);
            let roots = if degenerate {
                gvm::find_degenerate_locus(m, config, theta, range, temperature)?
            } else {
                let pump = pump.ok_or_else(|| {
                    Error::domain("either --degenerate or --pump <um> is required")
                })?;
                gvm::find_nondegenerate_locus(
                    m,
                    config,
                    theta,
                    cfg.wavelength(pump),
                    range,
                    temperature,
                )?
            };
            if cfg.format == "csv" {
                let mut text =
                    String::from("lambda_p_um,lambda_s_um,lambda_i_um,theta_deg,d,grating_period_um\n");
                for sol in &roots {
                    text.push_str(&format!(
                        "{:.7},{:.7},{:.7},{:.5},{:.7},{:.5}\n",
                        sol.triple.pump_um,
                        sol.triple.signal_um,
                        sol.triple.idler_um,
                        sol.theta_deg,
                        sol.d,
                        sol.grating_period_um
                    ));
                }
                out.write(&text)?;
            } else if cfg.format == "json" {
                out.write(&to_json_pretty(&json!({
                    "material": m.id,
                    "pm_type": config.pm_type,
                    "theta_target_deg": theta,
                    "mode": if degenerate { "degenerate" } else { "fixed_pump" },
                    "roots": roots,
                })))?;
            } else if roots.is_empty() {
                out.write("no roots in range\n")?;
            } else {
                let mut text = String::new();
                for sol in &roots {
                    text.push_str(&solution_text(sol));
                    text.push('\n');
                }
                out.write(&text)?;
            }
        }
        Command::Map {
            id,
            pm_type,
            pump,
            signal,
            res,
            out: out_path,
        } => {
            let m = db.get(&id)?;
            let config = m.config(pm_type.parse()?)?;
            let pump_range = pump.map(|p| cfg.range(p)).unwrap_or(m.default_pump_um);
            let signal_range = signal.map(|s| cfg.range(s)).unwrap_or(m.default_signal_um);
            let map = sweep::scan(
                m,
                config,
                pump_range,
                signal_range,
                res,
                temperature,
                &db.version,
            )?;
            let format = match cfg.format.as_str() {
                "json" => ExportFormat::Json,
                _ => ExportFormat::Csv, // csv is the map default
            };
            sweep::export(&map, format, &out_path)?;
            eprintln!(
                "wrote {} ({}x{} cells, {} loci)",
                out_path.display(),
                res,
                res,
                map.loci.len()
            );
        }
        Command::Upconvert {
            id,
            midir,
            seed,
            target,
        } => {
            let m = db.get(&id)?;
            let midir = cfg.wavelength(midir);
            let sol = match (seed, target) {
                (Some(seed), None) => {
                    upconv::upconvert(m, cfg.wavelength(seed), midir, temperature)?
                }
                (None, Some(target)) => {
                    upconv::seed_for_target(m, midir, cfg.wavelength(target), temperature)?
                }
                _ => {
                    return Err(Error::domain(
                        "exactly one of --seed or --target is required",
                    ))
                }
            };
            if cfg.format == "json" {
                out.write(&to_json_pretty(&sol))?;
            } else {
                let grating = if sol.grating_period_um.is_finite() {
                    format!("{:.4} um", sol.grating_period_um)
                } else {
                    "birefringent (exact)".into()
                };
                out.write(&format!(
                    "material        {}\nmid-IR          {:.6} um\nseed            {:.6} um\noutput          {:.6} um\ndetector band   {:?}\ngrating period  {grating}\nwithin window   {}\n",
                    sol.material_id,
                    sol.mid_ir_um,
                    sol.seed_um,
                    sol.output_um,
                    sol.detector_band,
                    sol.within_transparency,
                ))?;
            }
        }
        Command::Reproduce { out_dir, res } => {
            let summary = reproduce_all(&db, &out_dir, res, temperature)?;
            let passed = summary.all_passed;
            out.write(&format!(
                "summary: {}\nchecks passed: {}/{}\n",
                out_dir.join("summary.json").display(),
                summary.checks.iter().filter(|c| c.passed).count(),
                summary.checks.len(),
            ))?;
            if !passed {
                return Err(Error::domain("one or more reference checks failed"));
            }
        }
    }
    Ok(())
}

/// Survey-map inventory exported by `reproduce`.
const SURVEY_MAPS: [(&str, PmType); 9] = [
    ("PPKTP", PmType::Type0),
    ("PPLN", PmType::Type0),
    ("OPGaP", PmType::Type0),
    ("OPGaAs", PmType::Type0),
    ("PPLN", PmType::TypeI),
    ("PPKTP", PmType::TypeII),
    ("PPLN", PmType::TypeII),
    ("CSP", PmType::TypeII),
    ("ZGP", PmType::TypeII),
];

#[derive(Debug, Serialize)]
pub struct MapRun {
    pub name: String,
    pub material: String,
    pub pm_type: PmType,
    pub path: String,
    pub resolution: usize,
    pub ok_cells: usize,
    pub loci: usize,
    pub skipped: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct ReproduceSummary {
    pub tool_version: String,
    pub database_version: String,
    pub temperature_k: f64,
    pub resolution: usize,
    pub maps: Vec<MapRun>,
    pub checks: Vec<validation::CheckResult>,
    pub all_passed: bool,
}

/// Export the full survey-map suite and run the reference checks; the
/// summary is deterministic for identical inputs.
pub fn reproduce_all(
    db: &MaterialDatabase,
    out_dir: &Path,
    resolution: usize,
    temperature_k: f64,
) -> Result<ReproduceSummary> {
    let maps_dir = out_dir.join("maps");
    std::fs::create_dir_all(&maps_dir).map_err(|source| Error::Io {
        path: maps_dir.display().to_string(),
        source,
    })?;

    let mut maps = Vec::new();
    for (id, pm_type) in SURVEY_MAPS {
        let name = format!("{}-{}", id.to_ascii_lowercase(), pm_type);
        let path = maps_dir.join(format!("{name}.csv"));
        let run = (|| -> Result<MapRun> {
            let m = db.get(id)?;
            let config = m.config(pm_type)?;
            let map = sweep::scan(
                m,
                config,
                m.default_pump_um,
                m.default_signal_um,
                resolution,
                temperature_k,
                &db.version,
            )?;
            sweep::export_csv(&map, &path)?;
            Ok(MapRun {
                name: name.clone(),
                material: id.to_string(),
                pm_type,
                path: path.display().to_string(),
                resolution,
                ok_cells: map
                    .mask
                    .iter()
                    .filter(|&&m| m == sweep::CellMask::Ok)
                    .count(),
                loci: map.loci.len(),
                skipped: false,
                detail: String::new(),
            })
        })();
        maps.push(run.unwrap_or_else(|e| MapRun {
            name,
            material: id.to_string(),
            pm_type,
            path: String::new(),
            resolution,
            ok_cells: 0,
            loci: 0,
            skipped: true,
            detail: e.to_string(),
        }));
    }

    let checks = validation::run_all(db, temperature_k);
    let all_passed =
        checks.iter().all(|c| c.passed) && maps.iter().all(|m| !m.skipped);
    let summary = ReproduceSummary {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        database_version: db.version.clone(),
        temperature_k,
        resolution,
        maps,
        checks,
        all_passed,
    };
    let path = out_dir.join("summary.json");
    let mut text = serde_json::to_string_pretty(&summary)
        .map_err(|e| Error::Parse(format!("serialising summary: {e}")))?;
    text.push('\n');
    std::fs::write(&path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(summary)
}

/// Parse and run; returns the process exit status.
pub fn run_from<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match CliArgs::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) => {
            // clap exits 0 for --help, 2 for usage errors
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    if args.version {
        let db_version = args
            .run
            .database()
            .map(|db| db.version)
            .unwrap_or_else(|_| "unavailable".into());
        println!(
            "pdc-match {} (database {})",
            env!("CARGO_PKG_VERSION"),
            db_version
        );
        return 0;
    }
    let Some(command) = args.command else {
        let mut cmd = <CliArgs as clap::CommandFactory>::command();
        let _ = cmd.print_help();
        return 2;
    };
    match run_command(&args.run, command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}
