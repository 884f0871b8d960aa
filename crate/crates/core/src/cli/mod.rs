//! `cusphere` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 for invalid arguments.

pub mod angle;
pub mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::closed_form::{group_matrix, group_matrix_ce, group_matrix_u3};
use crate::dynamics::{
    format_f64, plane_orbit, trajectory_with, trapezoid_periodic, Action, Axis, Integrand, Plane,
    QuadratureDim, SixVector, MIN_QUADRATURE_NODES,
};
use crate::generators::{Angles, ScaleParams};
use crate::group::{cayley_mismatches, cayley_table, format_cayley_text, relation_audit, Label};
use crate::numerics::{det, ComplexMatrix};

use angle::parse_angle;
use verify::{run_suites, Suite, VerifyConfig};

pub const SEED_ENV: &str = "CUSPHERE_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cusphere",
    version,
    about = "Rotation group of the six-dimensional complex unit sphere"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Cayley table of the signed permutation group.
    Cayley(CayleyArgs),
    /// Evaluate a group matrix at the given angles.
    Eval(EvalArgs),
    /// Run seeded verification suites.
    Verify(VerifyArgs),
    /// Iterate a rotation and write the trajectory as CSV.
    Rotate(RotateArgs),
    /// Print the discrete orbit of an oriented plane.
    Orbit(OrbitArgs),
    /// Trapezoid quadrature of the phase over full periods.
    Integrate(IntegrateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AngleArgs {
    /// Real part of ∠X (radians, or a fraction like pi/200).
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub x: f64,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub y: f64,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub z: f64,
    /// Imaginary part of ∠X.
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub xi: f64,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub yi: f64,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub zi: f64,
    /// Scaling factors for the c and e slots.
    #[arg(long, num_args = 2, value_names = ["C", "E"], value_parser = parse_angle, allow_hyphen_values = true)]
    pub ce: Option<Vec<f64>>,
}

impl AngleArgs {
    fn is_real(&self) -> bool {
        self.xi == 0.0 && self.yi == 0.0 && self.zi == 0.0
    }

    fn real(&self) -> Angles {
        Angles::new(self.x, self.y, self.z)
    }

    fn complex(&self) -> Angles<Complex64> {
        Angles::new(
            Complex64::new(self.x, self.xi),
            Complex64::new(self.y, self.yi),
            Complex64::new(self.z, self.zi),
        )
    }

    fn scales(&self) -> Option<ScaleParams> {
        self.ce.as_ref().map(|v| ScaleParams::new(v[0], v[1]))
    }

    fn meta(&self) -> Value {
        let scales = self.scales().unwrap_or_default();
        json!({
            "angles": {
                "x": [self.x, self.xi],
                "y": [self.y, self.yi],
                "z": [self.z, self.zi],
            },
            "scales": { "c": scales.c, "e": scales.e },
        })
    }
}

#[derive(Debug, Args)]
pub struct CayleyArgs {
    /// Append the audit of the claimed generator relations.
    #[arg(long)]
    pub audit: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub angles: AngleArgs,
    /// Evaluate the 3×3 unitary form instead of the 6×6 matrix.
    #[arg(long, conflicts_with = "ce")]
    pub u3: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn positive_tolerance(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("tolerance must be positive".into())
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Overridden by the CUSPHERE_SEED environment variable.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9, value_parser = positive_tolerance)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RotateArgs {
    #[command(flatten)]
    pub angles: AngleArgs,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    /// Initial six-vector, comma separated.
    #[arg(long, default_value = "1,0,0,0,0,0", allow_hyphen_values = true)]
    pub v0: String,
    /// Use the column action G·v instead of v·G.
    #[arg(long)]
    pub column: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlaneArg {
    C,
    E,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[arg(long, value_enum)]
    pub plane: PlaneArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    #[arg(long, default_value_t = 1, value_parser = parse_dim)]
    pub dim: u8,
    #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u64).range(MIN_QUADRATURE_NODES as u64..))]
    pub n: u64,
    #[arg(long, default_value_t = 1e-9, value_parser = positive_tolerance)]
    pub tol: f64,
    /// Integrate the constant 1 instead of the phase.
    #[arg(long)]
    pub control: bool,
}

fn parse_dim(s: &str) -> Result<u8, String> {
    match s {
        "1" => Ok(1),
        "3" => Ok(3),
        _ => Err("dimension must be 1 or 3".into()),
    }
}

/// Parses `args` (including the program name) and runs the command.
/// `env_seed` is the value of `CUSPHERE_SEED`, if set.
pub fn run<I, S>(args: I, env_seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli, env_seed, out) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILED
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut f =
                File::create(p).map_err(|e| CliError::Failed(format!("{}: {e}", p.display())))?;
            f.write_all(content.as_bytes())?;
        }
        None => out.write_all(content.as_bytes())?,
    }
    Ok(())
}

fn dispatch(cli: Cli, env_seed: Option<&str>, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Cayley(a) => cmd_cayley(&a, out),
        Command::Eval(a) => cmd_eval(&a, out),
        Command::Verify(a) => cmd_verify(&a, env_seed, out),
        Command::Rotate(a) => cmd_rotate(&a, out),
        Command::Orbit(a) => cmd_orbit(&a, out),
        Command::Integrate(a) => cmd_integrate(&a, out),
    }
}

fn cmd_cayley(args: &CayleyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let table = cayley_table();
    let matches = cayley_mismatches().is_empty();
    let content = match args.output.format {
        Format::Json => {
            let rows: Vec<Vec<String>> = table
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect();
            let mut doc = json!({
                "labels": Label::ALL.map(|l| l.to_string()),
                "rows": rows,
                "matches_reference": matches,
            });
            if args.audit {
                doc["audit"] = relation_audit()
                    .iter()
                    .map(|r| {
                        json!({
                            "relation": r.text,
                            "holds": r.holds(),
                            "actual": r.lhs.signed_token(),
                        })
                    })
                    .collect();
            }
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Text | Format::Csv => {
            let mut s = if args.output.format == Format::Csv {
                let mut s = String::from("row,a,b,c,d,e,f\n");
                for (l, row) in Label::ALL.iter().zip(&table) {
                    let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                    s.push_str(&format!("{l},{}\n", cells.join(",")));
                }
                s
            } else {
                format_cayley_text(&table)
            };
            if args.audit {
                s.push('\n');
                for r in relation_audit() {
                    s.push_str(&format!("{r}\n"));
                }
            }
            s
        }
    };
    emit(out, args.output.out.as_ref(), &content)?;
    Ok(if matches { EXIT_OK } else { EXIT_FAILED })
}

fn format_complex(z: Complex64) -> String {
    format!("{:>+.10}{:+.10}i", z.re, z.im)
}

fn matrix_text(m: &ComplexMatrix, complex: bool) -> String {
    let mut s = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row
            .iter()
            .map(|z| {
                if complex {
                    format!("{:>30}", format_complex(*z))
                } else {
                    format!("{:>15.10}", z.re)
                }
            })
            .collect();
        s.push_str(cells.join(" ").trim_end());
        s.push('\n');
    }
    s
}

fn cmd_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = &args.angles;
    let (m, complex) = if args.u3 {
        (group_matrix_u3(&a.complex()), true)
    } else if let Some(scales) = a.scales() {
        if a.is_real() {
            (group_matrix_ce(&a.real(), &scales)?.to_complex(), false)
        } else {
            (group_matrix_ce(&a.complex(), &scales)?, true)
        }
    } else if a.is_real() {
        (group_matrix(&a.real()).to_complex(), false)
    } else {
        (group_matrix(&a.complex()), true)
    };
    let content = match args.output.format {
        Format::Json => {
            let rows: Vec<Vec<[f64; 2]>> = m
                .rows()
                .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
                .collect();
            let doc = json!({ "rows": rows, "complex": complex, "meta": a.meta() });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Csv => {
            let mut s = String::from("row,col,re,im\n");
            for i in 0..m.dim() {
                for j in 0..m.dim() {
                    let z = m[(i, j)];
                    s.push_str(&format!(
                        "{i},{j},{},{}\n",
                        format_f64(z.re),
                        format_f64(z.im)
                    ));
                }
            }
            s
        }
        Format::Text => {
            let mut s = matrix_text(&m, complex);
            s.push_str(&format!("det = {}\n", format_complex(det(&m))));
            s
        }
    };
    emit(out, args.output.out.as_ref(), &content)?;
    Ok(EXIT_OK)
}

fn cmd_verify(
    args: &VerifyArgs,
    env_seed: Option<&str>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let seed = match env_seed {
        Some(s) => s
            .trim()
            .parse::<u64>()
            .map_err(|e| CliError::Usage(format!("{SEED_ENV}={s:?}: {e}")))?,
        None => args.seed,
    };
    let cfg = VerifyConfig {
        suite: args.suite,
        samples: args.samples as usize,
        seed,
        tol: args.tol,
    };
    let report = run_suites(&cfg);
    let content = match args.output.format {
        Format::Json => {
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| {
                    let (kind, bound) = match c.bound {
                        verify::Bound::AtMost(b) => ("at_most", b),
                        verify::Bound::Above(b) => ("above", b),
                    };
                    json!({
                        "suite": c.suite,
                        "property": c.property,
                        "value": c.value,
                        "bound": bound,
                        "kind": kind,
                        "pass": c.passed(),
                    })
                })
                .collect();
            let doc = json!({
                "seed": seed,
                "samples": cfg.samples,
                "tol": cfg.tol,
                "notes": report.notes,
                "checks": checks,
                "pass": report.all_passed(),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Text | Format::Csv => format!(
            "verify: suite={:?} samples={} seed={} tol={:e}\n{report}\n",
            cfg.suite, cfg.samples, seed, cfg.tol
        ),
    };
    emit(out, args.output.out.as_ref(), &content)?;
    Ok(if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn parse_v0(s: &str) -> Result<[f64; 6], CliError> {
    let vals: Vec<f64> = s
        .split(',')
        .map(|t| parse_angle(t).map_err(CliError::Usage))
        .collect::<Result<_, _>>()?;
    vals.try_into()
        .map_err(|v: Vec<f64>| CliError::Usage(format!("--v0 needs 6 components, got {}", v.len())))
}

fn cmd_rotate(args: &RotateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let v0 = parse_v0(&args.v0)?;
    let a = &args.angles;
    let scales = a.scales().unwrap_or_default();
    let action = if args.column {
        Action::Column
    } else {
        Action::Row
    };
    let mut sink: Box<dyn Write + '_> = match &args.out {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                CliError::Failed(format!("{}: {e}", p.display()))
            })?))
        }
        None => Box::new(BufWriter::new(out)),
    };
    if a.is_real() {
        trajectory_with(a.real(), scales, args.steps, SixVector(v0), action)?
            .write_csv(&mut sink)?;
    } else {
        let v0 = SixVector(v0.map(|x| Complex64::new(x, 0.0)));
        trajectory_with(a.complex(), scales, args.steps, v0, action)?.write_csv(&mut sink)?;
    }
    sink.flush()?;
    Ok(EXIT_OK)
}

fn cmd_orbit(args: &OrbitArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let plane = match args.plane {
        PlaneArg::C => Plane::MinusC,
        PlaneArg::E => Plane::MinusE,
    };
    let orbit = plane_orbit(plane);
    let ok = orbit[2].is_negation() && orbit[5].is_identity();
    let axis_cell = |m: &crate::dynamics::AxisMap, axis: Axis| match m.axis_image(axis) {
        Some((dest, neg)) => format!("{}{dest}", if neg { "-" } else { "" }),
        None => "?".into(),
    };
    let content = match args.output.format {
        Format::Json => {
            let steps: Vec<Value> = orbit
                .iter()
                .enumerate()
                .map(|(k, m)| {
                    json!({
                        "step": k + 1,
                        "axes": Axis::ALL.map(|ax| axis_cell(m, ax)),
                        "slots": m.0.map(|s| s.to_string()),
                    })
                })
                .collect();
            let doc = json!({ "plane": plane.to_string(), "steps": steps, "closed": ok });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Text | Format::Csv => {
            let mut s = format!("{plane} oriented plane orbit (v -> v·({plane})^k)\n");
            for (k, m) in orbit.iter().enumerate() {
                let axes: Vec<String> = Axis::ALL
                    .iter()
                    .map(|&ax| format!("{ax} -> {}", axis_cell(m, ax)))
                    .collect();
                s.push_str(&format!("step {}: {}  |  {m}\n", k + 1, axes.join(", ")));
            }
            s
        }
    };
    emit(out, args.output.out.as_ref(), &content)?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_integrate(args: &IntegrateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let dim = if args.dim == 3 {
        QuadratureDim::Three
    } else {
        QuadratureDim::One
    };
    let integrand = if args.control {
        Integrand::Unit
    } else {
        Integrand::Phase
    };
    let value = trapezoid_periodic(dim, args.n as usize, integrand)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let magnitude = value.norm();
    writeln!(
        out,
        "dim={} n={} integral = {} {}i\n|integral| = {:.6e}",
        args.dim,
        args.n,
        format_f64(value.re),
        format_f64(value.im),
        magnitude
    )?;
    if args.control {
        return Ok(EXIT_OK);
    }
    Ok(if magnitude <= args.tol {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}
