//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage, input or file errors, 2 when a
//! geometry pipeline rejects its parameters or a verify suite fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::build::{build_scene, ArcSpec, BuildRequest, Family, TorusMode};
use crate::obj::export_obj;
use crate::scene::{read_scene, write_scene, Space};
use crate::verify::{self, Suite};

#[derive(Debug, Parser)]
#[command(
    name = "hopf4d",
    version,
    about = "Hopf fibration scenes: fibers, tori, lifts, constellations and packings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExportSpace {
    Xi,
    Omega,
    Stereo,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExportFormat {
    Obj,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Kappa,
    Mu,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Xy,
    Z,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One fiber with its base point, both conjugated images and its stereographic image.
    Fiber {
        #[arg(long, allow_hyphen_values = true)]
        phi: f64,
        #[arg(long, allow_hyphen_values = true)]
        psi: f64,
        #[arg(long, default_value_t = hopf4d_core::DEFAULT_FIBER_SAMPLES)]
        samples: usize,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A kappa torus (fixed psi) or mu torus (fixed phi).
    Torus {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, allow_hyphen_values = true)]
        psi: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<f64>,
        /// Samples along each fiber by number of fibers, e.g. 96x96.
        #[arg(long, value_parser = parse_grid, default_value = "96x96")]
        grid: [usize; 2],
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A nested family of tori (xy: fixed psi per torus, z: fixed phi per torus).
    Nested {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Defaults to 12 for xy and 6 for z.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, value_parser = parse_grid, default_value = "48x48")]
        grid: [usize; 2],
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fibers over a base curve read from CSV rows of `phi,psi`.
    Lift {
        #[arg(long)]
        curve: PathBuf,
        /// Join the last sample back to the first.
        #[arg(long)]
        closed: bool,
        #[arg(long, default_value_t = crate::build::DEFAULT_LIFT_BETA)]
        n_beta: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fibers over a chain of planar arcs read from JSON.
    Arcs {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Phase points on the fibers over a polyhedron's vertices.
    Modulation {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        beta_offset: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Filaments over a polyhedron's vertices with disk and filament tangencies.
    Packing {
        #[arg(long)]
        poly: String,
        /// Angular disk radius; defaults to half the smallest vertex separation.
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = crate::build::DEFAULT_PACKING_SAMPLES)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the meshes and polylines of one space of a scene.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        space: ExportSpace,
        #[arg(long, value_enum, default_value = "obj")]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the property suites and print a report.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Overrides HOPF4D_SEED.
        #[arg(long, value_parser = |s: &str| verify::parse_seed(s).ok_or("expected a decimal or 0x-hex integer"))]
        seed: Option<u64>,
    },
    /// Serve `POST /scene` over HTTP.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: String,
    },
}

fn parse_grid(s: &str) -> Result<[usize; 2], String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or("expected <n_u>x<n_v>, e.g. 96x96")?;
    let p = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad grid size `{t}`: {e}"))
    };
    Ok([p(a)?, p(b)?])
}

/// Failures mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Domain(_) => 2,
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Domain(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}

/// Replaces `path` in one step so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(p) => write_atomic(p, bytes)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::Usage(format!("cannot write to standard output: {e}"))),
    }
}

fn build_and_emit(request: BuildRequest, out: Option<&Path>) -> Result<(), Failure> {
    let doc = build_scene(&request).map_err(|e| Failure::Domain(e.to_string()))?;
    let bytes = write_scene(&doc).map_err(|e| Failure::Domain(e.to_string()))?;
    emit(out, &bytes)
}

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Reads `phi,psi` rows; a first row that is not numeric is taken as a header.
/// Lines starting with `#` are skipped.
pub fn read_curve_csv(bytes: &[u8]) -> Result<Vec<[f64; 2]>, String> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| e.to_string())?;
        if record.len() != 2 {
            return Err(format!(
                "row {}: expected 2 fields (phi,psi), found {}",
                i + 1,
                record.len()
            ));
        }
        let parsed = (record[0].parse::<f64>(), record[1].parse::<f64>());
        match parsed {
            (Ok(phi), Ok(psi)) => rows.push([phi, psi]),
            _ if i == 0 => continue,
            _ => return Err(format!("row {}: fields must be numbers", i + 1)),
        }
    }
    Ok(rows)
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ArcsFile {
    Bare(Vec<ArcSpec>),
    Full {
        arcs: Vec<ArcSpec>,
        #[serde(default)]
        samples_per_arc: Option<usize>,
        #[serde(default)]
        n_beta: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Fiber {
            phi,
            psi,
            samples,
            out,
        } => build_and_emit(
            BuildRequest::Fiber {
                phi,
                psi,
                samples: Some(samples),
            },
            out.as_deref(),
        ),
        Command::Torus {
            mode,
            psi,
            phi,
            grid,
            out,
        } => {
            let mode = match mode {
                ModeArg::Kappa if psi.is_none() => {
                    return Err(Failure::Usage("--mode kappa needs --psi".into()))
                }
                ModeArg::Mu if phi.is_none() => {
                    return Err(Failure::Usage("--mode mu needs --phi".into()))
                }
                ModeArg::Kappa => TorusMode::Kappa,
                ModeArg::Mu => TorusMode::Mu,
            };
            build_and_emit(
                BuildRequest::Torus {
                    mode,
                    psi,
                    phi,
                    grid: Some(grid),
                },
                out.as_deref(),
            )
        }
        Command::Nested {
            family,
            count,
            grid,
            out,
        } => {
            let family = match family {
                FamilyArg::Xy => Family::Xy,
                FamilyArg::Z => Family::Z,
            };
            build_and_emit(
                BuildRequest::Nested {
                    family,
                    count,
                    grid: Some(grid),
                },
                out.as_deref(),
            )
        }
        Command::Lift {
            curve,
            closed,
            n_beta,
            out,
        } => {
            let samples = read_curve_csv(&read_file(&curve)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", curve.display())))?;
            build_and_emit(
                BuildRequest::CurveLift {
                    samples,
                    closed,
                    n_beta: Some(n_beta),
                },
                out.as_deref(),
            )
        }
        Command::Arcs { spec, out } => {
            let file: ArcsFile = serde_json::from_slice(&read_file(&spec)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", spec.display())))?;
            let request = match file {
                ArcsFile::Bare(arcs) => BuildRequest::ArcsShape {
                    arcs,
                    samples_per_arc: None,
                    n_beta: None,
                },
                ArcsFile::Full {
                    arcs,
                    samples_per_arc,
                    n_beta,
                } => BuildRequest::ArcsShape {
                    arcs,
                    samples_per_arc,
                    n_beta,
                },
            };
            build_and_emit(request, out.as_deref())
        }
        Command::Modulation {
            poly,
            m,
            beta_offset,
            out,
        } => build_and_emit(
            BuildRequest::Modulation {
                poly,
                m,
                beta_offset,
            },
            out.as_deref(),
        ),
        Command::Packing {
            poly,
            radius,
            samples,
            out,
        } => build_and_emit(
            BuildRequest::Packing {
                poly,
                radius,
                samples: Some(samples),
            },
            out.as_deref(),
        ),
        Command::Export {
            input,
            space,
            format: ExportFormat::Obj,
            out,
        } => {
            let doc = read_scene(&read_file(&input)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
            let space = match space {
                ExportSpace::Xi => Space::Xi,
                ExportSpace::Omega => Space::Omega,
                ExportSpace::Stereo => Space::Stereo,
            };
            let text = export_obj(&doc, space).map_err(|e| Failure::Usage(e.to_string()))?;
            emit(out.as_deref(), text.as_bytes())
        }
        Command::Verify { suite, seed } => {
            let seed = seed.unwrap_or_else(verify::seed_from_env);
            println!("seed {seed}");
            let checks = verify::run(suite, seed);
            for c in &checks {
                println!("{c}");
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            println!("{} passed, {failed} failed", checks.len() - failed);
            if failed == 0 {
                Ok(())
            } else {
                Err(Failure::Domain(format!("{failed} check(s) failed")))
            }
        }
        Command::Serve { addr } => {
            let runtime =
                tokio::runtime::Runtime::new().map_err(|e| Failure::Usage(e.to_string()))?;
            runtime
                .block_on(crate::service::serve(&addr))
                .map_err(|e| Failure::Usage(format!("cannot serve on {addr}: {e}")))
        }
    }
}
