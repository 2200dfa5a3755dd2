//! Command-line grammar and value parsers.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C;
use solvops::operators::Coupling;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "solvops", version, about = "Resolvent kernels, spectra and numerical checks for solvable 1d Schrödinger operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a special function at one or more points.
    Eval(EvalArgs),
    /// Tabulate a resolvent kernel on an (x, y) grid.
    Kernel(KernelArgs),
    /// List the point spectrum of a family.
    Spectrum(SpectrumArgs),
    /// Compare a resolvent kernel against the finite-difference oracle.
    Verify(VerifyArgs),
    /// Evaluate both sides of a transmutation identity.
    Transmute(TransmuteArgs),
    /// Sample a kernel over a plane of one complex parameter.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Bessel,
    Exponential,
    NegExponential,
    Whittaker,
    Morse,
    Isotonic,
    Harmonic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

/// Parameters shared by every command; each command reads the ones it needs.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub m: Option<C>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub k: Option<C>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub beta: Option<C>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Option<C>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub b: Option<C>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub c: Option<C>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub alpha: Option<C>,
    /// Strength ℓ > 0 of the negative exponential potential.
    #[arg(long, allow_hyphen_values = true)]
    pub ell: Option<f64>,
    /// Boundary parameter at +∞: "re,im" or "inf".
    #[arg(long, value_parser = parse_coupling, allow_hyphen_values = true)]
    pub gamma: Option<Coupling>,
    /// Hankel sign or Weber parity.
    #[arg(long, value_enum)]
    pub sign: Option<SignArg>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// Function name, e.g. macdonald_k2d, f01_reg, weber_k.
    #[arg(long = "fn")]
    pub function: String,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Argument "re,im" or real; repeatable.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub at: Vec<C>,
    /// Real arguments "a:b:n".
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub range: Option<Axis>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct KernelArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Spectral parameter.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: C,
    /// "a:b:n" or a single value.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub x: Axis,
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub y: Axis,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 5)]
    pub count: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: C,
    /// Target grid spacing.
    #[arg(long, default_value_t = 1e-3)]
    pub h: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub max_rel_l2: f64,
    #[arg(long, default_value_t = 1e-7)]
    pub max_jump: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairName {
    ExpBessel,
    IsotonicWhittaker,
    MorseWhittaker,
    IsotonicMorse,
    NegexpBessel,
}

#[derive(Debug, Clone, Args)]
pub struct TransmuteArgs {
    #[arg(long, value_enum)]
    pub pair: PairName,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub x: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub y: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlaneName {
    /// The exponential coefficient `k`.
    K,
    /// `c = k²`, mapped to `k = √c` on the principal branch.
    C,
    M,
    Beta,
    Z,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    /// Which parameter spans the plane.
    #[arg(long, value_enum)]
    pub plane: PlaneName,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Real parts "a:b:n".
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub re: Axis,
    /// Imaginary parts "a:b:n".
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub im: Axis,
    /// Spectral parameter, unless the plane is `z`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Option<C>,
    /// Kernel argument `x`.
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub x: f64,
    /// Kernel argument `y`.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub y: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not finite: {s:?}"))
    }
}

/// `"re,im"` or a bare real.
pub fn parse_complex(s: &str) -> Result<C, String> {
    match s.split_once(',') {
        Some((re, im)) => Ok(C::new(parse_real(re)?, parse_real(im)?)),
        None => Ok(C::new(parse_real(s)?, 0.0)),
    }
}

/// `"inf"` or a complex value.
pub fn parse_coupling(s: &str) -> Result<Coupling, String> {
    match s {
        "inf" | "infinity" => Ok(Coupling::Infinity),
        _ => parse_complex(s).map(Coupling::Finite),
    }
}

/// Points along one real axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis(pub Vec<f64>);

/// `"a:b:n"` (n equally spaced points, endpoints included) or a single value.
pub fn parse_grid(s: &str) -> Result<Axis, String> {
    parse_points(s).map(Axis)
}

fn parse_points(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [v] => Ok(vec![parse_real(v)?]),
        [a, b, n] => {
            let (a, b) = (parse_real(a)?, parse_real(b)?);
            let n: usize = n.parse().map_err(|_| format!("bad point count in {s:?}"))?;
            match n {
                0 => Err(format!("empty grid {s:?}")),
                1 => Ok(vec![a]),
                _ => Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()),
            }
        }
        _ => Err(format!("expected \"a:b:n\" or a number, got {s:?}")),
    }
}
