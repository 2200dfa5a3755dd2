//! Regularized confluent hypergeometric functions.
//!
//! - `₀𝐅₁(c; w) = Σ wⁿ/(n! Γ(c+n))`, entire in `c` and `w`.
//! - `₁𝐅₁(a; c; r) = Σ (a)ₖ rᵏ/(k! Γ(c+k))`, entire in `a`, `c`, `r`.
//! - `₂F₀(a, b; −; w)` summed as an asymptotic series with optimal truncation.
//! - `U_α(z)`, the solution of `z v'' + (α+1) v' − v = 0` that decays like
//!   `e^{−2√z} z^{−α/2−1/4}` as `z → +∞`.
//!
//! Every evaluation reports which path produced it and a heuristic error
//! estimate. `U_α` picks between a connection formula, the asymptotic series,
//! a two-sided average at integer `α`, and Taylor-series ODE continuation when
//! neither closed form is accurate.

use crate::complexmath::{carg, pochhammer, reciprocal_gamma, sin_pi, Lifted, C};
use crate::error::{Error, Result};
use crate::ode::{continue_solution, LocalCoeffs, OdeState};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// How a special-function value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EvalPath {
    SeriesAt0,
    AsymptoticAtInf,
    ConnectionFormula,
    EpsilonLimit,
    OdeContinuation,
}

impl EvalPath {
    pub fn as_str(&self) -> &'static str {
        match self {
            EvalPath::SeriesAt0 => "series_at_0",
            EvalPath::AsymptoticAtInf => "asymptotic_at_inf",
            EvalPath::ConnectionFormula => "connection_formula",
            EvalPath::EpsilonLimit => "epsilon_limit",
            EvalPath::OdeContinuation => "ode_continuation",
        }
    }
}

impl std::fmt::Display for EvalPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A value with its evaluation path and a heuristic absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecialValue {
    pub value: C,
    pub path: EvalPath,
    pub err_est: f64,
}

/// Value and first derivative of a special function at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jet {
    pub value: C,
    pub deriv: C,
    pub err_est: f64,
    pub path: EvalPath,
}

impl Jet {
    pub fn special(&self) -> SpecialValue {
        SpecialValue {
            value: self.value,
            path: self.path,
            err_est: self.err_est,
        }
    }

    /// Multiply value, derivative and error by a constant.
    pub fn scaled(self, factor: C) -> Jet {
        Jet {
            value: self.value * factor,
            deriv: self.deriv * factor,
            err_est: self.err_est * factor.norm(),
            path: self.path,
        }
    }
}

/// Stopping rule for power series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPolicy {
    pub tol: f64,
    pub max_terms: usize,
    pub consecutive_small: usize,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy {
            tol: 1e-16,
            max_terms: 10_000,
            consecutive_small: 3,
        }
    }
}

/// Raw result of a power-series summation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSum {
    pub value: C,
    pub err: f64,
}

/// Sum `Σ_{n ≥ n0} t_n` with `t_{n+1} = t_n · ratio(n)`.
fn sum_series(first: C, n0: usize, ratio: impl Fn(usize) -> C, policy: &SeriesPolicy) -> Result<SeriesSum> {
    let mut term = first;
    let mut sum = C::new(0.0, 0.0);
    let mut max_term = 0.0f64;
    let mut small = 0usize;
    for n in n0..n0 + policy.max_terms {
        sum += term;
        let tn = term.norm();
        max_term = max_term.max(tn);
        let next = term * ratio(n);
        let shrinking = next.norm() <= tn || tn == 0.0;
        let scale = sum.norm();
        let is_small = tn == 0.0 || (if scale > 0.0 { tn <= policy.tol * scale } else { tn <= policy.tol });
        if is_small && shrinking {
            small += 1;
            if small >= policy.consecutive_small {
                return Ok(SeriesSum {
                    value: sum,
                    err: tn + 4.0 * f64::EPSILON * max_term,
                });
            }
        } else {
            small = 0;
        }
        term = next;
    }
    Err(Error::NonConvergence {
        terms: policy.max_terms,
        partial: sum,
    })
}

/// First index `n ≥ 0` with `c + n` not a nonpositive integer.
fn first_regular_index(c: C) -> usize {
    if c.im == 0.0 && c.re <= 0.0 && c.re.fract() == 0.0 {
        (-c.re) as usize + 1
    } else {
        0
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

pub(crate) fn f01_sum(c: C, w: C, policy: &SeriesPolicy) -> Result<SeriesSum> {
    if w == C::new(0.0, 0.0) {
        let v = reciprocal_gamma(c);
        return Ok(SeriesSum {
            value: v,
            err: f64::EPSILON * v.norm(),
        });
    }
    let n0 = first_regular_index(c);
    let first = w.powi(n0 as i32) * reciprocal_gamma(c + n0 as f64) / factorial(n0);
    sum_series(first, n0, |n| w / ((n as f64 + 1.0) * (c + n as f64)), policy)
}

pub(crate) fn f11_sum(a: C, c: C, r: C, policy: &SeriesPolicy) -> Result<SeriesSum> {
    if r == C::new(0.0, 0.0) {
        let v = reciprocal_gamma(c);
        return Ok(SeriesSum {
            value: v,
            err: f64::EPSILON * v.norm(),
        });
    }
    let k0 = first_regular_index(c);
    let first = pochhammer(a, k0 as u32) * r.powi(k0 as i32) * reciprocal_gamma(c + k0 as f64) / factorial(k0);
    sum_series(first, k0, |k| (a + k as f64) * r / ((k as f64 + 1.0) * (c + k as f64)), policy)
}

/// Regularized `₀𝐅₁(c; w)`.
pub fn f01_reg(c: C, w: C, policy: SeriesPolicy) -> Result<SpecialValue> {
    let s = f01_sum(c, w, &policy)?;
    Ok(SpecialValue {
        value: s.value,
        path: EvalPath::SeriesAt0,
        err_est: s.err,
    })
}

/// `₀𝐅₁(c; w)` and its `w`-derivative `₀𝐅₁(c+1; w)`.
pub fn f01_reg_jet(c: C, w: C) -> Result<Jet> {
    let p = SeriesPolicy::default();
    let v = f01_sum(c, w, &p)?;
    let d = f01_sum(c + 1.0, w, &p)?;
    Ok(Jet {
        value: v.value,
        deriv: d.value,
        err_est: v.err,
        path: EvalPath::SeriesAt0,
    })
}

/// Regularized `₁𝐅₁(a; c; r)`.
pub fn f11_reg(a: C, c: C, r: C, policy: SeriesPolicy) -> Result<SpecialValue> {
    let s = f11_sum(a, c, r, &policy)?;
    Ok(SpecialValue {
        value: s.value,
        path: EvalPath::SeriesAt0,
        err_est: s.err,
    })
}

/// `₁𝐅₁(a; c; r)` and its `r`-derivative `a·₁𝐅₁(a+1; c+1; r)`.
pub fn f11_reg_jet(a: C, c: C, r: C) -> Result<Jet> {
    let p = SeriesPolicy::default();
    let v = f11_sum(a, c, r, &p)?;
    let d = f11_sum(a + 1.0, c + 1.0, r, &p)?;
    Ok(Jet {
        value: v.value,
        deriv: a * d.value,
        err_est: v.err,
        path: EvalPath::SeriesAt0,
    })
}

/// Asymptotic sum of `₂F₀(a, b; −; w) = Σ (a)ₙ(b)ₙ wⁿ/n!`, truncated just
/// before its smallest term. The error estimate is that omitted term.
pub fn f20_asymptotic(a: C, b: C, w: C) -> Result<SpecialValue> {
    let mut term = C::new(1.0, 0.0);
    let mut sum = C::new(0.0, 0.0);
    let mut n = 0usize;
    loop {
        let next = term * (a + n as f64) * (b + n as f64) * w / (n as f64 + 1.0);
        if next.norm() == 0.0 {
            // Terminating series: exact.
            return Ok(SpecialValue {
                value: sum + term,
                path: EvalPath::AsymptoticAtInf,
                err_est: f64::EPSILON * (sum + term).norm(),
            });
        }
        if next.norm() >= term.norm() {
            if n == 0 {
                return Err(Error::AsymptoticRegime(format!(
                    "₂F₀({a}, {b}; {w}) grows from its first term"
                )));
            }
            // `term` is the smallest; omit it.
            return Ok(SpecialValue {
                value: sum,
                path: EvalPath::AsymptoticAtInf,
                err_est: term.norm() + f64::EPSILON * sum.norm(),
            });
        }
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            return Ok(SpecialValue {
                value: sum,
                path: EvalPath::AsymptoticAtInf,
                err_est: term.norm() + f64::EPSILON * sum.norm(),
            });
        }
        term = next;
        n += 1;
        if n > 100_000 {
            return Err(Error::NonConvergence { terms: n, partial: sum });
        }
    }
}

/// Distance from `p` to the nearest integer.
pub(crate) fn dist_to_integer(p: C) -> f64 {
    (p - C::new(p.re.round(), 0.0)).norm()
}

/// Two-sided average `(f(p+δ) + f(p−δ))/2` with `|δ| = 10⁻⁵(1+|p|)`. The
/// displacement is taken perpendicular to `p − n` (n the nearest integer), so
/// neither evaluation point can land on the integer.
pub(crate) fn epsilon_average(p: C, f: impl Fn(C) -> Result<Jet>) -> Result<Jet> {
    let eps = 1e-5 * (1.0 + p.norm());
    let d = p - C::new(p.re.round(), 0.0);
    let delta = if d.norm() == 0.0 {
        C::new(eps, 0.0)
    } else {
        C::new(0.0, eps) * d / d.norm()
    };
    let hi = f(p + delta)?;
    let lo = f(p - delta)?;
    let value = 0.5 * (hi.value + lo.value);
    // The average is exact to second order in |δ|; the spread bounds it.
    let curvature = 1e-10 * (hi.value - lo.value).norm() + 1e-10 * value.norm();
    Ok(Jet {
        value,
        deriv: 0.5 * (hi.deriv + lo.deriv),
        err_est: hi.err_est.max(lo.err_est) + curvature,
        path: EvalPath::EpsilonLimit,
    })
}

/// Whether a parameter is close enough to an integer to need the average.
pub(crate) fn needs_epsilon(p: C) -> bool {
    dist_to_integer(p) < 1e-3
}

/// Largest accepted cancellation exponent for the connection formula; beyond
/// it the result carries more than about e⁷ ulps of noise.
const U_CONNECTION_MAX_LOSS: f64 = 7.0;

fn u_asymptotic_threshold(alpha: C) -> f64 {
    100.0 * (1.0 + alpha.norm_sqr())
}

/// Cancellation exponent of the connection formula for `U_α` at `z = s²`.
fn u_connection_loss(s: &Lifted) -> f64 {
    2.0 * s.norm() + 2.0 * s.value().re
}

fn u_connection(alpha: C, z: &Lifted) -> Result<Jet> {
    let p = SeriesPolicy::default();
    let zv = z.value();
    let fa = f01_sum(1.0 + alpha, zv, &p)?;
    let fa1 = f01_sum(2.0 + alpha, zv, &p)?;
    let fm = f01_sum(1.0 - alpha, zv, &p)?;
    let fm1 = f01_sum(2.0 - alpha, zv, &p)?;
    let zpow = z.pow(-alpha)?;
    let coef = PI.sqrt() / sin_pi(alpha);
    let value = coef * (zpow * fm.value - fa.value);
    let deriv = coef * (-alpha * zpow / zv * fm.value + zpow * fm1.value - fa1.value);
    let err = coef.norm() * (zpow.norm() * fm.err + fa.err);
    Ok(Jet {
        value,
        deriv,
        err_est: err,
        path: EvalPath::ConnectionFormula,
    })
}

fn u_connection_or_average(alpha: C, z: &Lifted) -> Result<Jet> {
    if needs_epsilon(alpha) {
        epsilon_average(alpha, |a| u_connection(a, z))
    } else {
        u_connection(alpha, z)
    }
}

fn u_asymptotic_raw(alpha: C, z: &Lifted) -> Result<(C, f64)> {
    let s = z.sqrt();
    let w = -1.0 / (4.0 * s.value());
    let series = f20_asymptotic(0.5 + alpha, 0.5 - alpha, w)?;
    if series.err_est > 1e-13 * series.value.norm() {
        return Err(Error::AsymptoticRegime(format!(
            "U_α asymptotic series error {:e} at |z| = {}",
            series.err_est / series.value.norm(),
            z.norm()
        )));
    }
    let pref = z.pow(-alpha / 2.0 - 0.25)? * (-2.0 * s.value()).exp();
    Ok((pref * series.value, pref.norm() * series.err_est))
}

fn u_asymptotic(alpha: C, z: &Lifted) -> Result<Jet> {
    if z.sqrt().arg().abs() > PI + 1e-12 {
        return Err(Error::AsymptoticRegime("argument beyond the Stokes sector".into()));
    }
    let (v, e) = u_asymptotic_raw(alpha, z)?;
    let (d, e2) = u_asymptotic_raw(alpha + 1.0, z)?;
    Ok(Jet {
        value: v,
        deriv: -d,
        err_est: e + 1e-3 * e2,
        path: EvalPath::AsymptoticAtInf,
    })
}

fn u_ode(alpha: C, z: &Lifted) -> Result<Jet> {
    let s = z.sqrt();
    let theta = s.arg();
    let coeffs = move |z0: C| LocalCoeffs {
        p2: vec![z0, C::new(1.0, 0.0)],
        p1: vec![alpha + 1.0],
        p0: vec![C::new(-1.0, 0.0)],
    };
    let max_step = |x: C| (0.4 * x.norm()).min(x.norm().sqrt().max(0.5));
    let start_jet;
    let start_point;
    if s.value().re >= -0.05 * s.norm() {
        // Recessive direction: integrate inward from the asymptotic region.
        let mut radius = u_asymptotic_threshold(alpha).max(z.norm());
        let mut found = None;
        for _ in 0..8 {
            let zs = Lifted::from_polar(radius, z.arg());
            if let Ok(j) = u_asymptotic(alpha, &zs) {
                found = Some((zs, j));
                break;
            }
            radius *= 2.0;
        }
        let (zs, j) = found.ok_or_else(|| Error::NoValidPath("no asymptotic start for U_α".into()))?;
        start_point = zs;
        start_jet = j;
    } else {
        // Dominant direction: integrate outward from the cancellation-free disc.
        let smod = 0.5 * U_CONNECTION_MAX_LOSS / (1.0 + theta.cos()).max(1e-12);
        let radius = (smod * smod).min(0.5 * z.norm());
        let zs = Lifted::from_polar(radius, z.arg());
        start_jet = u_connection_or_average(alpha, &zs)?;
        start_point = zs;
    }
    let (end, steps) = continue_solution(
        &coeffs,
        OdeState {
            x: start_point.value(),
            f: start_jet.value,
            df: start_jet.deriv,
        },
        z.value(),
        &max_step,
    )?;
    let rel = start_jet.err_est / start_jet.value.norm().max(1e-300);
    Ok(Jet {
        value: end.f,
        deriv: end.df,
        err_est: end.f.norm() * (rel + 1e-15 * (steps as f64 + 1.0)),
        path: EvalPath::OdeContinuation,
    })
}

/// `U_α(z)` and `U_α'(z) = −U_{α+1}(z)` on the sheet carried by `z`.
pub fn u_alpha_jet(alpha: C, z: Lifted) -> Result<Jet> {
    if z.value() == C::new(0.0, 0.0) {
        return Err(Error::Domain("U_α at z = 0".into()));
    }
    let s = z.sqrt();
    if z.norm() > u_asymptotic_threshold(alpha) {
        if let Ok(j) = u_asymptotic(alpha, &z) {
            return Ok(j);
        }
    }
    if u_connection_loss(&s) <= U_CONNECTION_MAX_LOSS {
        return u_connection_or_average(alpha, &z);
    }
    u_ode(alpha, &z)
}

/// `U_α(z)` forced through one evaluation path.
///
/// `ConnectionFormula` divides by `sin πα` and fails only at exact integers;
/// `OdeContinuation` always starts from the automatically chosen region.
pub fn u_alpha_via(alpha: C, z: Lifted, path: EvalPath) -> Result<Jet> {
    match path {
        EvalPath::ConnectionFormula => {
            if dist_to_integer(alpha) == 0.0 {
                return Err(Error::Domain("connection formula at integer α".into()));
            }
            u_connection(alpha, &z)
        }
        EvalPath::EpsilonLimit => epsilon_average(alpha, |a| u_connection(a, &z)),
        EvalPath::AsymptoticAtInf => u_asymptotic(alpha, &z),
        EvalPath::OdeContinuation => u_ode(alpha, &z),
        EvalPath::SeriesAt0 => Err(Error::NoValidPath("U_α has no single power series at 0".into())),
    }
}

/// `U_α(z)` on the principal sheet.
pub fn u_alpha(alpha: C, z: C) -> Result<SpecialValue> {
    u_alpha_jet(alpha, Lifted::principal(z)).map(|j| j.special())
}

/// Principal-branch argument helper re-exported for callers that build
/// lifted points from explicit angles.
pub fn principal_arg(z: C) -> f64 {
    carg(z)
}
