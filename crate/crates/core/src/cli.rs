//! Command-line front end: state files in, reports and CSV sweeps out.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use crate::channels::{apply_local_bitflip, NoiseProbability};
use crate::error::Error;
use crate::oracle::{sqd_bruteforce, OracleConfig};
use crate::qstate::{
    correlation_params, joint_entropy, reduced_a, reduced_b, xstate_spectrum, ComplexScalar,
    StateFile, XState,
};
use crate::sqd::{quantum_discord, super_discord, MinimizerConfig};
use crate::weakmeas::{direction_from_unitary, WeakStrength};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse state file: {0}")]
    Parse(String),
    #[error("invalid state: {0}")]
    Invalid(#[from] Error),
    #[error("bad arguments: {0}")]
    BadFlags(String),
}

impl CliError {
    pub const IO_EXIT: u8 = 2;
    pub const PARSE_EXIT: u8 = 3;
    pub const INVALID_EXIT: u8 = 4;
    pub const BAD_FLAGS_EXIT: u8 = 5;

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => Self::IO_EXIT,
            CliError::Parse(_) => Self::PARSE_EXIT,
            CliError::Invalid(_) => Self::INVALID_EXIT,
            CliError::BadFlags(_) => Self::BAD_FLAGS_EXIT,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "sqd", version, about = "Super quantum discord of two-qubit X-states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Analytic,
    Oracle,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a state file and print its parameters and spectra.
    Validate { file: PathBuf },
    /// Compute SQD at one strength (`inf` for the projective limit).
    Compute {
        file: PathBuf,
        #[arg(long)]
        x: WeakStrength,
        #[arg(long, value_enum, default_value_t = Method::Analytic)]
        method: Method,
        /// Oracle grid size (unitaries on the 3-sphere).
        #[arg(long, default_value_t = 20_000)]
        oracle_grid: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// SQD and QD as a function of x.
    SweepX {
        file: PathBuf,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// SQD and QD of the bit-flipped state as a function of p.
    SweepP {
        file: PathBuf,
        #[arg(long)]
        x: WeakStrength,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// SQD/QD surface over (x, p).
    Surface {
        file: PathBuf,
        #[arg(long)]
        x_min: f64,
        #[arg(long)]
        x_max: f64,
        #[arg(long)]
        x_steps: usize,
        #[arg(long)]
        p_min: f64,
        #[arg(long)]
        p_max: f64,
        #[arg(long)]
        p_steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub min: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub max: f64,
    #[arg(long)]
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    X,
    P,
}

/// Inclusive linear grid over one variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    variable: SweepVariable,
    min: f64,
    max: f64,
    steps: usize,
}

impl SweepSpec {
    pub fn new(variable: SweepVariable, min: f64, max: f64, steps: usize) -> Result<Self, CliError> {
        if !(min.is_finite() && max.is_finite()) || min > max {
            return Err(CliError::BadFlags(format!("need finite min <= max, got [{min}, {max}]")));
        }
        if steps < 2 {
            return Err(CliError::BadFlags(format!("steps must be >= 2, got {steps}")));
        }
        match variable {
            SweepVariable::X if min < 0.0 => {
                return Err(CliError::BadFlags(format!("x range must be >= 0, got min {min}")))
            }
            SweepVariable::P if min < 0.0 || max > 1.0 => {
                return Err(CliError::BadFlags(format!("p range [{min}, {max}] not inside [0, 1]")))
            }
            _ => {}
        }
        Ok(Self {
            variable,
            min,
            max,
            steps,
        })
    }

    pub fn variable(&self) -> SweepVariable {
        self.variable
    }

    pub fn points(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.max
                } else {
                    self.min + (self.max - self.min) * i as f64 / last as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSpec {
    pub x_spec: SweepSpec,
    pub p_spec: SweepSpec,
}

impl SurfaceSpec {
    pub fn new(x_spec: SweepSpec, p_spec: SweepSpec) -> Result<Self, CliError> {
        if x_spec.variable != SweepVariable::X || p_spec.variable != SweepVariable::P {
            return Err(CliError::BadFlags("surface needs an x grid and a p grid".into()));
        }
        Ok(Self { x_spec, p_spec })
    }
}

/// Fixed-point rendering with 12 significant digits.
pub fn format_number(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0.00000000000".into();
    }
    let sci = format!("{:.11e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exp >= 0 {
        let int_len = exp as usize + 1;
        if int_len >= digits.len() {
            out.push_str(&digits);
            out.extend(std::iter::repeat_n('0', int_len - digits.len()));
        } else {
            out.push_str(&digits[..int_len]);
            out.push('.');
            out.push_str(&digits[int_len..]);
        }
    } else {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(&digits);
    }
    out
}

fn format_strength(x: WeakStrength) -> String {
    match x {
        WeakStrength::Finite(v) => format_number(v),
        WeakStrength::Projective => "inf".into(),
    }
}

fn format_complex(c: ComplexScalar) -> String {
    let sign = if c.im < 0.0 { '-' } else { '+' };
    format!("{}{}{}i", format_number(c.re), sign, format_number(c.im.abs()))
}

pub fn load_state(path: &Path) -> Result<XState, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_state(&text)
}

pub fn parse_state(text: &str) -> Result<XState, CliError> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(file.into_xstate()?)
}

pub fn validate_report(s: &XState) -> String {
    let p = correlation_params(s);
    let spectrum = xstate_spectrum(s).values();
    let ra = reduced_a(s).matrix().map(|c| c.re);
    let rb = reduced_b(s).matrix().map(|c| c.re);
    let n = format_number;
    let mut out = String::new();
    let _ = writeln!(out, "valid X-state");
    let _ = writeln!(
        out,
        "entries: a11={} a22={} a33={} a44={} a14={} a23={}",
        n(s.a11()),
        n(s.a22()),
        n(s.a33()),
        n(s.a44()),
        format_complex(s.a14()),
        format_complex(s.a23())
    );
    let _ = writeln!(
        out,
        "params: a3={} b3={} c3={} c1={} c2={}",
        n(p.a3),
        n(p.b3),
        n(p.c3),
        format_complex(p.c1),
        format_complex(p.c2)
    );
    let _ = writeln!(out, "d: {} {} {} {}", n(p.d1), n(p.d2), n(p.d3), n(p.d4));
    let _ = writeln!(
        out,
        "spectrum: {}",
        spectrum.iter().map(|v| n(*v)).collect::<Vec<_>>().join(" ")
    );
    let _ = writeln!(out, "S(rho_AB): {}", n(joint_entropy(s)));
    let _ = writeln!(out, "rho_A: diag({}, {})", n(ra[(0, 0)]), n(ra[(1, 1)]));
    let _ = writeln!(out, "rho_B: diag({}, {})", n(rb[(0, 0)]), n(rb[(1, 1)]));
    out
}

fn csv(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn compute_csv(
    s: &XState,
    x: WeakStrength,
    method: Method,
    oracle: &OracleConfig,
    cfg: &MinimizerConfig,
) -> String {
    let header = "x,sqd,qd,s_w_min,s_b,s_ab,z1,z2,z3";
    let row = match method {
        Method::Analytic => {
            let r = super_discord(s, x, cfg);
            let qd = quantum_discord(s, cfg);
            let [z1, z2, z3] = r.direction.components();
            [r.value, qd.value, r.s_w_min, r.s_b, r.s_ab, z1, z2, z3]
        }
        Method::Oracle => {
            let (sqd, u) = sqd_bruteforce(s, x, oracle);
            let (qd, _) = sqd_bruteforce(s, WeakStrength::Projective, oracle);
            let s_b = reduced_b(s).entropy();
            let s_ab = joint_entropy(s);
            let [z1, z2, z3] = direction_from_unitary(&u).components();
            [sqd, qd, sqd - s_b + s_ab, s_b, s_ab, z1, z2, z3]
        }
    };
    let mut fields = vec![format_strength(x)];
    fields.extend(row.iter().map(|v| format_number(*v)));
    csv(header, [fields])
}

pub fn sweep_x_csv(s: &XState, spec: &SweepSpec, cfg: &MinimizerConfig) -> String {
    let qd = quantum_discord(s, cfg).value;
    let rows: Vec<Vec<String>> = spec
        .points()
        .par_iter()
        .map(|&x| {
            let sqd = super_discord(s, WeakStrength::Finite(x), cfg).value;
            vec![format_number(x), format_number(sqd), format_number(qd)]
        })
        .collect();
    csv("x,sqd,qd", rows)
}

pub fn sweep_p_csv(s: &XState, x: WeakStrength, spec: &SweepSpec, cfg: &MinimizerConfig) -> String {
    let rows: Vec<Vec<String>> = spec
        .points()
        .par_iter()
        .map(|&p| {
            let noisy = apply_local_bitflip(s, NoiseProbability::new(p).expect("validated range"));
            let sqd = super_discord(&noisy, x, cfg).value;
            let qd = quantum_discord(&noisy, cfg).value;
            vec![format_number(p), format_number(sqd), format_number(qd)]
        })
        .collect();
    csv("p,sqd_noisy,qd_noisy", rows)
}

pub fn surface_csv(s: &XState, spec: &SurfaceSpec, cfg: &MinimizerConfig) -> String {
    let qd_clean = quantum_discord(s, cfg).value;
    let ps = spec.p_spec.points();
    let qd_noisy: Vec<f64> = ps
        .par_iter()
        .map(|&p| {
            let noisy = apply_local_bitflip(s, NoiseProbability::new(p).expect("validated range"));
            quantum_discord(&noisy, cfg).value
        })
        .collect();
    let grid: Vec<(f64, usize)> = spec
        .x_spec
        .points()
        .into_iter()
        .flat_map(|x| (0..ps.len()).map(move |j| (x, j)))
        .collect();
    let rows: Vec<Vec<String>> = grid
        .par_iter()
        .map(|&(x, j)| {
            let noisy = apply_local_bitflip(s, NoiseProbability::new(ps[j]).expect("validated range"));
            let sqd = super_discord(&noisy, WeakStrength::Finite(x), cfg).value;
            vec![
                format_number(x),
                format_number(ps[j]),
                format_number(sqd),
                format_number(qd_noisy[j]),
                format_number(qd_clean),
            ]
        })
        .collect();
    csv("x,p,sqd_noisy,qd_noisy,qd_clean", rows)
}

fn write_output(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Executes one command; returns what should go to stdout.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let cfg = MinimizerConfig::default();
    match &cli.command {
        Command::Validate { file } => Ok(validate_report(&load_state(file)?)),
        Command::Compute {
            file,
            x,
            method,
            oracle_grid,
            seed,
        } => {
            let oracle = OracleConfig::new(*oracle_grid, true, *seed)
                .map_err(|e| CliError::BadFlags(e.to_string()))?;
            let s = load_state(file)?;
            Ok(compute_csv(&s, *x, *method, &oracle, &cfg))
        }
        Command::SweepX { file, range, out } => {
            let spec = SweepSpec::new(SweepVariable::X, range.min, range.max, range.steps)?;
            let s = load_state(file)?;
            write_output(out, &sweep_x_csv(&s, &spec, &cfg))?;
            Ok(String::new())
        }
        Command::SweepP {
            file,
            x,
            range,
            out,
        } => {
            let spec = SweepSpec::new(SweepVariable::P, range.min, range.max, range.steps)?;
            let s = load_state(file)?;
            write_output(out, &sweep_p_csv(&s, *x, &spec, &cfg))?;
            Ok(String::new())
        }
        Command::Surface {
            file,
            x_min,
            x_max,
            x_steps,
            p_min,
            p_max,
            p_steps,
            out,
        } => {
            let spec = SurfaceSpec::new(
                SweepSpec::new(SweepVariable::X, *x_min, *x_max, *x_steps)?,
                SweepSpec::new(SweepVariable::P, *p_min, *p_max, *p_steps)?,
            )?;
            let s = load_state(file)?;
            write_output(out, &surface_csv(&s, &spec, &cfg))?;
            Ok(String::new())
        }
    }
}
