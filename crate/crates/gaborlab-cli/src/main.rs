//! Batch CLI for Gaussian Gabor frame bounds over planar lattices.
//!
//! Exit codes: 0 success, 2 domain error (e.g. sharp bounds at odd
//! density), 1 numerical-consistency or I/O error, 64 usage error.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gaborlab::{
    converge_compare, from_tau, heuristic_bounds, landau_hex, landau_square, make_hexagonal,
    make_rectangular, montgomery_argmin, rect_sweep, scan_landscape, sharp_bounds,
    verify_constants_link, verify_proof_chain, Error as LabError, GridSpec, Lattice2D,
    LatticeBasis, ModuliPoint, ScanRegion, TruncationSpec,
};

use output::{
    bounds_csv, envelope, format_full, format_sig, identities_csv, identities_json,
    landscape_csv, landscape_json, oracle_csv, oracle_json, sweep_csv, sweep_json,
};

#[derive(Parser)]
#[command(
    name = "gaborlab",
    version,
    about = "Frame bounds of Gaussian Gabor systems over 2-D lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sharp (default) or heuristic frame bounds of one lattice.
    Bounds {
        /// Lattice spec: hex | square | rect:A,B | matrix:M11,M12,M21,M22 | tau:X,Y
        #[arg(long)]
        lattice: LatticeSpec,
        /// Lattice density; must match the spec when the spec implies one.
        #[arg(long)]
        density: f64,
        /// Sharp bounds from the adjoint-lattice series (even density only).
        #[arg(long, conflicts_with = "heuristic")]
        sharp: bool,
        /// Heuristic bracket from the periodized spectrogram (any density).
        #[arg(long)]
        heuristic: bool,
        #[command(flatten)]
        numerics: NumericArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sharp-bound landscape over a grid of lattice shapes.
    Landscape {
        /// Even integer lattice density.
        #[arg(long)]
        delta: f64,
        #[command(flatten)]
        region: RegionArgs,
        #[command(flatten)]
        numerics: NumericArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Bounds along the rectangular family at fixed density.
    RectSweep {
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 0.4)]
        alpha_min: f64,
        #[arg(long, default_value_t = 1.25)]
        alpha_max: f64,
        /// Number of sweep samples.
        #[arg(long, default_value_t = 18)]
        samples: u32,
        #[command(flatten)]
        numerics: NumericArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Special-function identity checks with internally computed values.
    Identities {
        #[command(flatten)]
        numerics: NumericArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Landau constants in Gamma closed form.
    Landau {
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Shape minimizing the Gaussian lattice theta sum.
    Montgomery {
        /// Gaussian width parameter t > 0.
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        #[command(flatten)]
        region: RegionArgs,
        #[command(flatten)]
        numerics: NumericArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Finite-dimensional eigenvalue oracle vs the continuous bounds.
    Oracle {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        /// Comma-separated list of dimensions, each a perfect square.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[command(flatten)]
        numerics: NumericArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct NumericArgs {
    /// Points per axis of the coarse extremum grid.
    #[arg(long, default_value_t = 64)]
    base_resolution: u32,
    /// Zoom refinement rounds after the coarse pass.
    #[arg(long, default_value_t = 3)]
    refine_levels: u32,
    /// Grid shrink factor per refinement round.
    #[arg(long, default_value_t = 8)]
    zoom_factor: u32,
    /// Absolute tail bound for truncated lattice sums.
    #[arg(long, default_value_t = 1e-14)]
    tail_tol: f64,
}

impl NumericArgs {
    fn grid(&self) -> Result<GridSpec, Failure> {
        Ok(GridSpec::new(self.base_resolution, self.refine_levels, self.zoom_factor)?)
    }

    fn trunc(&self) -> Result<TruncationSpec, Failure> {
        Ok(TruncationSpec::new(self.tail_tol)?)
    }

    fn params(&self) -> Value {
        json!({
            "base_resolution": self.base_resolution,
            "refine_levels": self.refine_levels,
            "zoom_factor": self.zoom_factor,
            "tail_tol": self.tail_tol,
        })
    }
}

#[derive(Args)]
struct RegionArgs {
    #[arg(long, default_value_t = -0.5)]
    x_min: f64,
    #[arg(long, default_value_t = 0.5)]
    x_max: f64,
    #[arg(long, default_value_t = 0.8660254037844386)]
    y_min: f64,
    #[arg(long, default_value_t = 2.0)]
    y_max: f64,
    #[arg(long, default_value_t = 40)]
    nx: u32,
    #[arg(long, default_value_t = 40)]
    ny: u32,
}

impl RegionArgs {
    fn region(&self) -> Result<ScanRegion, Failure> {
        Ok(ScanRegion::new(
            self.x_min, self.x_max, self.y_min, self.y_max, self.nx, self.ny,
        )?)
    }

    fn params(&self) -> Value {
        json!({
            "x_min": self.x_min,
            "x_max": self.x_max,
            "y_min": self.y_min,
            "y_max": self.y_max,
            "nx": self.nx,
            "ny": self.ny,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Write results to this file instead of only stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// File format for --output.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

/// Lattice selection grammar shared by the bounds command.
#[derive(Clone, Debug)]
enum LatticeSpec {
    Hex,
    Square,
    Rect(f64, f64),
    Matrix(f64, f64, f64, f64),
    Tau(f64, f64),
}

impl FromStr for LatticeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_fields = |body: &str, n: usize| -> Result<Vec<f64>, String> {
            let fields: Vec<&str> = body.split(',').collect();
            if fields.len() != n {
                return Err(format!("expected {n} comma-separated numbers, got '{body}'"));
            }
            fields
                .iter()
                .map(|f| f.trim().parse::<f64>().map_err(|e| format!("'{f}': {e}")))
                .collect()
        };
        match s {
            "hex" => Ok(Self::Hex),
            "square" => Ok(Self::Square),
            _ => {
                if let Some(body) = s.strip_prefix("rect:") {
                    let v = parse_fields(body, 2)?;
                    Ok(Self::Rect(v[0], v[1]))
                } else if let Some(body) = s.strip_prefix("matrix:") {
                    let v = parse_fields(body, 4)?;
                    Ok(Self::Matrix(v[0], v[1], v[2], v[3]))
                } else if let Some(body) = s.strip_prefix("tau:") {
                    let v = parse_fields(body, 2)?;
                    Ok(Self::Tau(v[0], v[1]))
                } else {
                    Err(format!(
                        "unknown lattice spec '{s}'; use hex, square, rect:A,B, \
                         matrix:M11,M12,M21,M22 or tau:X,Y"
                    ))
                }
            }
        }
    }
}

impl LatticeSpec {
    fn describe(&self) -> String {
        match self {
            Self::Hex => "hex".to_string(),
            Self::Square => "square".to_string(),
            Self::Rect(a, b) => format!("rect:{a},{b}"),
            Self::Matrix(a, b, c, d) => format!("matrix:{a},{b},{c},{d}"),
            Self::Tau(x, y) => format!("tau:{x},{y}"),
        }
    }

    /// Builds the lattice; an implied density disagreeing with the explicit
    /// flag by more than 1e-9 is a usage error.
    fn build(&self, density: f64) -> Result<Lattice2D, Failure> {
        let check_implied = |implied: f64| -> Result<(), Failure> {
            if (implied - density).abs() > 1e-9 {
                Err(Failure::Usage(format!(
                    "lattice spec implies density {implied}, which contradicts --density {density}"
                )))
            } else {
                Ok(())
            }
        };
        match *self {
            Self::Hex => Ok(make_hexagonal(density)?),
            Self::Square => {
                if !(density > 0.0) {
                    return Err(Failure::App(LabError::Domain(format!(
                        "density must be positive, got {density}"
                    ))));
                }
                let side = density.sqrt().recip();
                Ok(make_rectangular(side, side)?)
            }
            Self::Rect(alpha, beta) => {
                let lat = make_rectangular(alpha, beta)?;
                check_implied(lat.density())?;
                Ok(lat)
            }
            Self::Matrix(m11, m12, m21, m22) => {
                let lat = Lattice2D::from_basis(LatticeBasis::new(m11, m12, m21, m22)?);
                check_implied(lat.density())?;
                Ok(lat)
            }
            Self::Tau(x, y) => Ok(from_tau(ModuliPoint::new(x, y)?, density)?),
        }
    }
}

enum Failure {
    Usage(String),
    App(LabError),
    Io(std::io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::App(LabError::Numerics(_)) => 1,
            Failure::App(_) => 2,
            Failure::Io(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::App(e) => e.to_string(),
            Failure::Io(e) => format!("i/o error: {e}"),
        }
    }
}

impl From<LabError> for Failure {
    fn from(e: LabError) -> Self {
        Failure::App(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn write_output(
    out: &OutputArgs,
    path_required: bool,
    csv: impl FnOnce() -> String,
    json_value: impl FnOnce() -> Value,
) -> Result<(), Failure> {
    if let Some(path) = &out.output {
        let text = match out.format {
            OutputFormat::Csv => csv(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&json_value())
                    .expect("results serialize to JSON");
                s.push('\n');
                s
            }
        };
        std::fs::write(path, text)?;
        println!("wrote {}", path.display());
    } else if path_required {
        // tabular commands stream the file format to stdout when no path given
        match out.format {
            OutputFormat::Csv => print!("{}", csv()),
            OutputFormat::Json => println!(
                "{}",
                serde_json::to_string_pretty(&json_value()).expect("results serialize to JSON")
            ),
        }
    }
    Ok(())
}

fn effective_threads() -> Result<Option<usize>, Failure> {
    match std::env::var("GABORLAB_THREADS") {
        Ok(raw) => {
            let parsed: usize = raw.parse().map_err(|_| {
                Failure::Usage(format!(
                    "GABORLAB_THREADS must be a positive integer, got '{raw}'"
                ))
            })?;
            if parsed == 0 {
                return Err(Failure::Usage(
                    "GABORLAB_THREADS must be a positive integer, got '0'".to_string(),
                ));
            }
            Ok(Some(parsed))
        }
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Bounds {
            lattice,
            density,
            sharp: _, // sharp is the default mode; the flag only documents intent
            heuristic,
            numerics,
            out,
        } => {
            let grid = numerics.grid()?;
            let trunc = numerics.trunc()?;
            let lat = lattice.build(density)?;
            let mode = if heuristic { "heuristic" } else { "sharp" };
            let params = json!({
                "lattice": lattice.describe(),
                "density": density,
                "mode": mode,
                "numerics": numerics.params(),
            });
            if heuristic {
                let (min_p, max_p) = heuristic_bounds(&lat, &grid, &trunc);
                println!("min_p={} max_p={}", format_sig(min_p), format_sig(max_p));
                write_output(
                    &out,
                    false,
                    || {
                        format!(
                            "min_p,max_p\n{},{}\n",
                            format_full(min_p),
                            format_full(max_p)
                        )
                    },
                    || envelope("bounds", params.clone(), json!({"min_p": min_p, "max_p": max_p})),
                )?;
            } else {
                let bounds = sharp_bounds(&lat, &grid, &trunc)?;
                println!(
                    "A={} B={} cond={}",
                    format_sig(bounds.lower),
                    format_sig(bounds.upper),
                    format_sig(bounds.cond)
                );
                write_output(
                    &out,
                    false,
                    || bounds_csv(&bounds),
                    || {
                        envelope(
                            "bounds",
                            params.clone(),
                            json!({"A": bounds.lower, "B": bounds.upper, "cond": bounds.cond}),
                        )
                    },
                )?;
            }
            Ok(())
        }
        Command::Landscape {
            delta,
            region,
            numerics,
            out,
        } => {
            let grid = numerics.grid()?;
            let trunc = numerics.trunc()?;
            let scan_region = region.region()?;
            let outcome = scan_landscape(delta, &scan_region, &grid, &trunc)?;
            let params = json!({
                "delta": delta,
                "region": region.params(),
                "numerics": numerics.params(),
                "skipped_nodes": outcome.skipped.len(),
            });
            match (&out.output, out.format) {
                (Some(path), OutputFormat::Csv) => {
                    output::write_landscape_csv(&outcome.samples, path)?;
                    println!("wrote {}", path.display());
                }
                (Some(path), OutputFormat::Json) => {
                    let mut text = serde_json::to_string_pretty(&envelope(
                        "landscape",
                        params,
                        landscape_json(&outcome.samples),
                    ))
                    .expect("results serialize to JSON");
                    text.push('\n');
                    std::fs::write(path, text)?;
                    println!("wrote {}", path.display());
                }
                (None, OutputFormat::Csv) => print!("{}", landscape_csv(&outcome.samples)),
                (None, OutputFormat::Json) => println!(
                    "{}",
                    serde_json::to_string_pretty(&envelope(
                        "landscape",
                        params,
                        landscape_json(&outcome.samples),
                    ))
                    .expect("results serialize to JSON")
                ),
            }
            Ok(())
        }
        Command::RectSweep {
            delta,
            alpha_min,
            alpha_max,
            samples,
            numerics,
            out,
        } => {
            let grid = numerics.grid()?;
            let trunc = numerics.trunc()?;
            let rows = rect_sweep(delta, alpha_min, alpha_max, samples, &grid, &trunc)?;
            let params = json!({
                "delta": delta,
                "alpha_min": alpha_min,
                "alpha_max": alpha_max,
                "samples": samples,
                "numerics": numerics.params(),
            });
            write_output(
                &out,
                true,
                || sweep_csv(&rows),
                || envelope("rect-sweep", params.clone(), sweep_json(&rows)),
            )?;
            Ok(())
        }
        Command::Identities { numerics, out } => {
            let grid = numerics.grid()?;
            let trunc = numerics.trunc()?;
            let mut reports = verify_proof_chain();
            reports.extend(verify_constants_link(&grid, &trunc)?);
            for r in &reports {
                println!(
                    "{} lhs={} rhs={} residual={:.2e}",
                    r.name,
                    format_sig(r.lhs),
                    format_sig(r.rhs),
                    r.residual
                );
            }
            write_output(
                &out,
                false,
                || identities_csv(&reports),
                || envelope("identities", json!({"numerics": numerics.params()}), identities_json(&reports)),
            )?;
            Ok(())
        }
        Command::Landau { out } => {
            let hex = landau_hex();
            let square = landau_square();
            println!("L_hex={hex:.6}");
            println!("L_square={square:.6}");
            write_output(
                &out,
                false,
                || {
                    format!(
                        "name,value\nL_hex,{}\nL_square,{}\n",
                        format_full(hex),
                        format_full(square)
                    )
                },
                || envelope("landau", json!({}), json!({"L_hex": hex, "L_square": square})),
            )?;
            Ok(())
        }
        Command::Montgomery {
            t,
            delta,
            region,
            numerics,
            out,
        } => {
            let trunc = numerics.trunc()?;
            let scan_region = region.region()?;
            let tau = montgomery_argmin(t, delta, &scan_region, &trunc)?;
            println!("tau_x={} tau_y={}", format_sig(tau.x), format_sig(tau.y));
            let params = json!({
                "t": t,
                "delta": delta,
                "region": region.params(),
                "tail_tol": numerics.tail_tol,
            });
            write_output(
                &out,
                false,
                || format!("tau_x,tau_y\n{},{}\n", format_full(tau.x), format_full(tau.y)),
                || envelope("montgomery", params.clone(), json!({"tau_x": tau.x, "tau_y": tau.y})),
            )?;
            Ok(())
        }
        Command::Oracle {
            alpha,
            beta,
            dims,
            numerics,
            out,
        } => {
            let grid = numerics.grid()?;
            let trunc = numerics.trunc()?;
            let rows = converge_compare(alpha, beta, &dims, &grid, &trunc)?;
            let params = json!({
                "alpha": alpha,
                "beta": beta,
                "dims": dims,
                "numerics": numerics.params(),
            });
            write_output(
                &out,
                true,
                || oracle_csv(&rows),
                || envelope("oracle", params.clone(), oracle_json(&rows)),
            )?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = match effective_threads() {
        Ok(t) => t,
        Err(f) => {
            eprintln!("error: {}", f.message());
            return ExitCode::from(f.code());
        }
    };
    if let Some(k) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: failed to configure thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

