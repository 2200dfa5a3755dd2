//! One function per subcommand. Each returns a [`Report`]; rendering and exit
//! codes are handled by the caller.

use crate::args::*;
use crate::error::{error_class, CliError};
use crate::table::Row;
use num_complex::Complex64 as C;
use rayon::prelude::*;
use serde::Serialize;
use solvops::bessel::{self, Sign};
use solvops::hypergeom::{self, SeriesPolicy};
use solvops::operators::{
    kernel_factors, resolvent_kernel, spectrum_with_limit, transmute, Interval, OperatorSpec,
    TransmutationPair,
};
use solvops::verify::green_residual_default;
use solvops::whittaker::{self, WhittakerParams};
use solvops::SpecialValue;

/// What a command produced: a table, a structured record, or both.
#[derive(Debug, Clone)]
pub struct Report {
    pub rows: Option<Vec<Row>>,
    /// Pretty-printed JSON of the command's report type.
    pub record: Option<String>,
    /// False when a checked quantity exceeded its threshold.
    pub passed: bool,
}

impl Report {
    fn table(rows: Vec<Row>) -> Self {
        Report { rows: Some(rows), record: None, passed: true }
    }

    fn record<T: Serialize>(value: &T, passed: bool) -> Result<Self, CliError> {
        Ok(Report { rows: None, record: Some(serde_json::to_string_pretty(value)?), passed })
    }
}

pub fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Eval(a) => cmd_eval(a),
        Command::Kernel(a) => cmd_kernel(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Transmute(a) => cmd_transmute(a),
        Command::Scan(a) => cmd_scan(a),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, what: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Validation(format!("{what} needs --{flag}")))
}

pub fn build_spec(family: FamilyName, p: &ParamArgs) -> Result<OperatorSpec, CliError> {
    let what = format!("family {family:?}").to_lowercase();
    let spec = match family {
        FamilyName::Bessel => OperatorSpec::bessel(need(p.m, "m", &what)?),
        FamilyName::Exponential => OperatorSpec::exponential(need(p.k, "k", &what)?),
        FamilyName::NegExponential => {
            OperatorSpec::neg_exponential(need(p.ell, "ell", &what)?, need(p.gamma, "gamma", &what)?)
        }
        FamilyName::Whittaker => OperatorSpec::whittaker(need(p.beta, "beta", &what)?, need(p.m, "m", &what)?),
        FamilyName::Morse => OperatorSpec::morse(need(p.beta, "beta", &what)?, need(p.k, "k", &what)?),
        FamilyName::Isotonic => OperatorSpec::isotonic(need(p.k, "k", &what)?, need(p.m, "m", &what)?),
        FamilyName::Harmonic => OperatorSpec::harmonic(need(p.k, "k", &what)?),
    };
    Ok(spec?)
}

fn check_points(spec: &OperatorSpec, pts: &[f64]) -> Result<(), CliError> {
    if spec.interval == Interval::HalfLine {
        if let Some(x) = pts.iter().find(|&&x| x <= 0.0) {
            return Err(CliError::Validation(format!("{} acts on x > 0, got {x}", spec.name())));
        }
    }
    Ok(())
}

/// Names accepted by `eval --fn`.
pub const EVAL_FUNCTIONS: &[&str] = &[
    "f01_reg",
    "f11_reg",
    "f20_asymptotic",
    "u_alpha",
    "bessel_i1d",
    "bessel_i2d",
    "macdonald_k1d",
    "macdonald_k2d",
    "bessel_j1d",
    "bessel_j2d",
    "hankel1d",
    "hankel2d",
    "whit_i1d",
    "whit_i2d",
    "whit_k1d",
    "whit_k2d",
    "isotonic_i",
    "isotonic_k",
    "weber_i",
    "weber_k",
];

fn sign(p: &ParamArgs, what: &str) -> Result<Sign, CliError> {
    Ok(match need(p.sign, "sign", what)? {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    })
}

/// Evaluate the named function at `w`.
pub fn eval_function(name: &str, p: &ParamArgs, w: C) -> Result<SpecialValue, CliError> {
    let whit = || -> Result<WhittakerParams, CliError> {
        Ok(WhittakerParams::new(need(p.beta, "beta", name)?, need(p.m, "m", name)?))
    };
    let m = || need(p.m, "m", name);
    let v = match name {
        "f01_reg" => hypergeom::f01_reg(need(p.c, "c", name)?, w, SeriesPolicy::default()),
        "f11_reg" => hypergeom::f11_reg(need(p.a, "a", name)?, need(p.c, "c", name)?, w, SeriesPolicy::default()),
        "f20_asymptotic" => hypergeom::f20_asymptotic(need(p.a, "a", name)?, need(p.b, "b", name)?, w),
        "u_alpha" => hypergeom::u_alpha(need(p.alpha, "alpha", name)?, w),
        "bessel_i1d" => bessel::bessel_i1d(m()?, w),
        "bessel_i2d" => bessel::bessel_i2d(m()?, w),
        "macdonald_k1d" => bessel::macdonald_k1d(m()?, w),
        "macdonald_k2d" => bessel::macdonald_k2d(m()?, w),
        "bessel_j1d" => bessel::bessel_j1d(m()?, w),
        "bessel_j2d" => bessel::bessel_j2d(m()?, w),
        "hankel1d" => bessel::hankel1d(sign(p, name)?, m()?, w),
        "hankel2d" => bessel::hankel2d(sign(p, name)?, m()?, w),
        "whit_i1d" => whittaker::whit_i1d(whit()?, w),
        "whit_i2d" => whittaker::whit_i2d(whit()?, w),
        "whit_k1d" => whittaker::whit_k1d(whit()?, w),
        "whit_k2d" => whittaker::whit_k2d(whit()?, w),
        "isotonic_i" => whittaker::isotonic_i(whit()?, w),
        "isotonic_k" => whittaker::isotonic_k(whit()?, w),
        "weber_i" => whittaker::weber_i(need(p.beta, "beta", name)?, sign(p, name)?, w),
        "weber_k" => whittaker::weber_k(need(p.beta, "beta", name)?, w),
        _ => {
            return Err(CliError::Validation(format!(
                "unknown function {name:?}; known: {}",
                EVAL_FUNCTIONS.join(", ")
            )))
        }
    };
    Ok(v?)
}

fn cmd_eval(a: &EvalArgs) -> Result<Report, CliError> {
    let mut points = a.at.clone();
    if let Some(r) = &a.range {
        points.extend(r.0.iter().map(|&x| C::new(x, 0.0)));
    }
    if points.is_empty() {
        return Err(CliError::Validation("eval needs --at or --range".into()));
    }
    let rows = points
        .iter()
        .map(|&w| {
            let v = eval_function(&a.function, &a.params, w)?;
            Ok(Row {
                x: w.re,
                y: w.im,
                re: v.value.re,
                im: v.value.im,
                err_est: v.err_est,
                path: v.path.as_str().into(),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Report::table(rows))
}

const CLOSED_FORM: &str = "closed_form";

fn cmd_kernel(a: &KernelArgs) -> Result<Report, CliError> {
    let spec = build_spec(a.family, &a.params)?;
    check_points(&spec, &a.x.0)?;
    check_points(&spec, &a.y.0)?;
    let kf = kernel_factors(&spec, a.z)?;
    let mut rows = Vec::with_capacity(a.x.0.len() * a.y.0.len());
    for &x in &a.x.0 {
        for &y in &a.y.0 {
            let k = kf.eval(x, y)?;
            rows.push(Row {
                x,
                y,
                re: k.value.re,
                im: k.value.im,
                err_est: k.err_est,
                path: CLOSED_FORM.into(),
            });
        }
    }
    Ok(Report::table(rows))
}

fn cmd_spectrum(a: &SpectrumArgs) -> Result<Report, CliError> {
    if a.count == 0 {
        return Err(CliError::Validation("--count must be positive".into()));
    }
    let spec = build_spec(a.family, &a.params)?;
    let d = spectrum_with_limit(&spec, a.count);
    let rows = d
        .point
        .iter()
        .map(|e| Row {
            x: e.n as f64,
            y: 0.0,
            re: e.eigenvalue.re,
            im: e.eigenvalue.im,
            err_est: 0.0,
            path: CLOSED_FORM.into(),
        })
        .collect();
    Ok(Report { rows: Some(rows), ..Report::record(&d, true)? })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Report, CliError> {
    if !(a.h > 0.0 && a.h.is_finite()) {
        return Err(CliError::Validation("--h must be positive".into()));
    }
    let spec = build_spec(a.family, &a.params)?;
    let r = green_residual_default(&spec, a.z, a.h)?;
    let passed = r.rel_l2_error < a.max_rel_l2 && r.jump_error < a.max_jump;
    Report::record(&r, passed)
}

#[derive(Debug, Serialize)]
pub struct TransmuteReport {
    pub pair: TransmutationPair,
    pub from: OperatorSpec,
    pub to: OperatorSpec,
    pub x: f64,
    pub y: f64,
    pub lhs: C,
    pub rhs: C,
    pub rel_mismatch: f64,
    pub tol: f64,
    pub pass: bool,
}

fn cmd_transmute(a: &TransmuteArgs) -> Result<Report, CliError> {
    let p = &a.params;
    let what = format!("pair {:?}", a.pair).to_lowercase();
    let (from, to) = match a.pair {
        PairName::ExpBessel => (
            OperatorSpec::bessel(need(p.m, "m", &what)?)?,
            OperatorSpec::exponential(need(p.k, "k", &what)?)?,
        ),
        PairName::IsotonicWhittaker => {
            let m = need(p.m, "m", &what)?;
            (
                OperatorSpec::whittaker(need(p.beta, "beta", &what)?, m / 2.0)?,
                OperatorSpec::isotonic(need(p.k, "k", &what)?, m)?,
            )
        }
        PairName::MorseWhittaker => {
            let beta = need(p.beta, "beta", &what)?;
            (
                OperatorSpec::whittaker(beta, need(p.m, "m", &what)?)?,
                OperatorSpec::morse(beta, need(p.k, "k", &what)?)?,
            )
        }
        PairName::IsotonicMorse => {
            let k = need(p.k, "k", &what)?;
            (
                OperatorSpec::morse(need(p.beta, "beta", &what)?, k)?,
                OperatorSpec::isotonic(k, need(p.m, "m", &what)?)?,
            )
        }
        PairName::NegexpBessel => (
            OperatorSpec::bessel(need(p.m, "m", &what)?)?,
            OperatorSpec::neg_exponential(need(p.ell, "ell", &what)?, need(p.gamma, "gamma", &what)?)?,
        ),
    };
    check_points(&to, &[a.x, a.y])?;
    let t = transmute(&from, &to, a.x, a.y)?;
    let rel_mismatch = t.rel_mismatch();
    let pass = rel_mismatch <= a.tol;
    let report = TransmuteReport {
        pair: t.pair,
        from,
        to,
        x: a.x,
        y: a.y,
        lhs: t.lhs,
        rhs: t.rhs,
        rel_mismatch,
        tol: a.tol,
        pass,
    };
    Report::record(&report, pass)
}

fn plane_applies(plane: PlaneName, family: FamilyName) -> bool {
    use FamilyName::*;
    match plane {
        PlaneName::K | PlaneName::C => matches!(family, Exponential | Morse | Isotonic | Harmonic),
        PlaneName::M => matches!(family, Bessel | Whittaker | Isotonic),
        PlaneName::Beta => matches!(family, Whittaker | Morse),
        PlaneName::Z => true,
    }
}

/// Kernel at one cell of the plane; failures become a status in `path`.
fn scan_cell(a: &ScanArgs, p: C) -> Result<Row, CliError> {
    let mut params = a.params.clone();
    let mut z = a.z;
    match a.plane {
        PlaneName::K => params.k = Some(p),
        PlaneName::C => params.k = Some(p.sqrt()),
        PlaneName::M => params.m = Some(p),
        PlaneName::Beta => params.beta = Some(p),
        PlaneName::Z => z = Some(p),
    }
    let z = need(z, "z", "scan")?;
    let value = match build_spec(a.family, &params) {
        Ok(spec) => resolvent_kernel(&spec, z, a.x, a.y),
        Err(CliError::Core(e)) => Err(e),
        Err(e) => return Err(e),
    };
    let (re, im, err_est, path) = match value {
        Ok(k) => (k.value.re, k.value.im, k.err_est, CLOSED_FORM),
        Err(e) => (f64::NAN, f64::NAN, f64::NAN, error_class(&e)),
    };
    Ok(Row { x: p.re, y: p.im, re, im, err_est, path: path.into() })
}

fn cmd_scan(a: &ScanArgs) -> Result<Report, CliError> {
    if !plane_applies(a.plane, a.family) {
        return Err(CliError::Validation(format!(
            "family {:?} has no {:?} parameter",
            a.family, a.plane
        )));
    }
    if a.plane != PlaneName::Z && a.z.is_none() {
        return Err(CliError::Validation("scan needs --z unless the plane is z".into()));
    }
    let half_line = matches!(a.family, FamilyName::Bessel | FamilyName::Whittaker | FamilyName::Isotonic);
    if half_line && (a.x <= 0.0 || a.y <= 0.0) {
        return Err(CliError::Validation("half-line families need x, y > 0".into()));
    }
    // Cells in row-major order: imaginary part outer, real part inner.
    let cells: Vec<C> = a
        .im
        .0
        .iter()
        .flat_map(|&im| a.re.0.iter().map(move |&re| C::new(re, im)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&p| scan_cell(a, p))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Report::table(rows))
}
