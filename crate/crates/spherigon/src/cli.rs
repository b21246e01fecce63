//! Command-line interface.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use reduced_polygon::{
    decompose, is_reduced, perturbed_reduced_polygon, regular_odd_gon, DecompositionDocument, REDUCED_TOL,
};
use sphere_core::io::{load_polygon, polygon_to_json, LoadedPolygon};

use crate::error::{exit, CliError, Result};
use crate::grid::{parse_list, SweepGrid};
use crate::measure::{decomposition_of, measure, MEASURE_SAMPLES};
use crate::plot::render_svg;
use crate::verify::{perturbation_for, run_suite, Suite, VerifyOptions};

#[derive(Debug, Parser)]
#[command(
    name = "spherigon",
    version,
    about = "Reduced spherical polygons: generation, measurement and verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the regular odd-gon of the given thickness.
    GenRegular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        thickness: f64,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a seeded non-regular reduced odd-gon.
    GenPerturbed {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        thickness: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Vertex perturbation in radians; defaults to a quarter of side times exterior angle, at most 0.03.
        #[arg(long)]
        delta: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print areas, thickness, reducedness and the per-vertex table as JSON.
    Measure {
        input: PathBuf,
        /// Human-readable table instead of JSON.
        #[arg(long)]
        pretty: bool,
        #[arg(long, default_value_t = MEASURE_SAMPLES)]
        mc_samples: u64,
        /// Also write the decomposition document (reduced polygons only).
        #[arg(long)]
        decomp: Option<PathBuf>,
    },
    /// Exit 0 if the polygon is reduced, 1 otherwise.
    CheckReduced {
        input: PathBuf,
        #[arg(long, default_value_t = REDUCED_TOL)]
        tol: f64,
    },
    /// Run a verification suite over a sweep grid.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Grid JSON file; the list flags below override its fields.
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long)]
        lambdas: Option<String>,
        #[arg(long)]
        ns: Option<String>,
        #[arg(long)]
        omegas: Option<String>,
        #[arg(long)]
        seeds: Option<String>,
        #[arg(long)]
        mc_samples: Option<u64>,
        /// JSON report path.
        #[arg(long)]
        report: Option<PathBuf>,
        /// CSV summary path.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[cfg(feature = "sabotage")]
        #[arg(long, value_enum)]
        sabotage: Option<crate::verify::Sabotage>,
    },
    /// Write an SVG figure of the polygon.
    Plot {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => write(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

fn load(path: &Path) -> Result<LoadedPolygon> {
    let loaded = load_polygon(&read(path)?)?;
    for w in &loaded.warnings {
        log::warn!("{}: {w}", path.display());
    }
    Ok(loaded)
}

fn polygon_file(p: &sphere_core::SphericalPolygon, omega: f64) -> String {
    let mut text = polygon_to_json(p, Some(omega));
    text.push('\n');
    text
}

fn build_grid(
    grid: Option<&Path>,
    lambdas: Option<&str>,
    ns: Option<&str>,
    omegas: Option<&str>,
    seeds: Option<&str>,
    mc_samples: Option<u64>,
) -> Result<SweepGrid> {
    let mut g = match grid {
        Some(path) => SweepGrid::from_json(&read(path)?)?,
        None => SweepGrid::default(),
    };
    if let Some(v) = lambdas {
        g.lambda_values = parse_list(v)?;
    }
    if let Some(v) = ns {
        g.n_values = parse_list(v)?;
    }
    if let Some(v) = omegas {
        g.omega_values = parse_list(v)?;
    }
    if let Some(v) = seeds {
        g.seeds = parse_list(v)?;
    }
    if let Some(v) = mc_samples {
        g.mc_samples = v;
    }
    g.validate()?;
    Ok(g)
}

fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::GenRegular { n, thickness, output } => {
            let p = regular_odd_gon(n, thickness)?;
            emit(output.as_deref(), &polygon_file(&p, thickness))?;
        }
        Command::GenPerturbed {
            n,
            thickness,
            seed,
            delta,
            output,
        } => {
            let delta = delta.unwrap_or_else(|| perturbation_for(n, thickness));
            let p = perturbed_reduced_polygon(n, thickness, seed, delta)?;
            emit(output.as_deref(), &polygon_file(&p, thickness))?;
        }
        Command::Measure {
            input,
            pretty,
            mc_samples,
            decomp,
        } => {
            if mc_samples == 0 {
                return Err(CliError::Usage("--mc-samples must be positive".into()));
            }
            let loaded = load(&input)?;
            let m = measure(&loaded.polygon, loaded.thickness_hint, loaded.warnings, mc_samples);
            if let Some(path) = decomp {
                let d = decomposition_of(&loaded.polygon, &m.reducedness, loaded.thickness_hint).ok_or_else(|| {
                    CliError::Usage(format!("{}: polygon is not reduced, no decomposition", input.display()))
                })?;
                let mut text = DecompositionDocument::from_decomposition(&d).to_json();
                text.push('\n');
                write(&path, &text)?;
            }
            emit(None, &if pretty { m.to_table() } else { m.to_json() })?;
        }
        Command::CheckReduced { input, tol } => {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(CliError::Usage(format!("--tol {tol} must be positive")));
            }
            let loaded = load(&input)?;
            let report = is_reduced(&loaded.polygon, tol);
            if report.reduced {
                // the full decomposition also asserts the derived invariants
                if let Some(omega) = report.mean_distance {
                    decompose(&loaded.polygon, omega)?;
                }
            }
            let mut text = serde_json::to_string_pretty(&report).expect("report is serializable");
            text.push('\n');
            emit(None, &text)?;
            if !report.reduced {
                return Ok(exit::VERIFICATION_FAILED);
            }
        }
        Command::Verify {
            suite,
            grid,
            lambdas,
            ns,
            omegas,
            seeds,
            mc_samples,
            report,
            csv,
            #[cfg(feature = "sabotage")]
            sabotage,
        } => {
            let g = build_grid(
                grid.as_deref(),
                lambdas.as_deref(),
                ns.as_deref(),
                omegas.as_deref(),
                seeds.as_deref(),
                mc_samples,
            )?;
            let opts = VerifyOptions {
                threads: None,
                #[cfg(feature = "sabotage")]
                sabotage,
            };
            let r = run_suite(suite, &g, &opts)?;
            if let Some(path) = report {
                write(&path, &r.to_canonical_json())?;
            }
            if let Some(path) = csv {
                write(&path, &r.to_csv())?;
            }
            let mut summary = String::new();
            for rec in &r.records {
                summary.push_str(&format!(
                    "{} {:<36} margin {:>10.3e} cases {:>4}  {}\n",
                    if rec.passed() { "PASS" } else { "FAIL" },
                    rec.id,
                    rec.margin,
                    rec.cases,
                    if rec.passed() { "" } else { rec.worst_case.as_str() }
                ));
            }
            let failed = r.failures().count();
            summary.push_str(&format!(
                "{} checks, {} failed, {:.2} s on {} threads\n",
                r.records.len(),
                failed,
                r.runtime_s,
                r.threads
            ));
            emit(None, &summary)?;
            if !r.pass {
                return Ok(exit::VERIFICATION_FAILED);
            }
        }
        Command::Plot { input, output } => {
            let loaded = load(&input)?;
            write(&output, &render_svg(&loaded.polygon, loaded.thickness_hint)?)?;
        }
    }
    Ok(exit::PASS)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::PASS };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
