//! Bessel-type functions in two normalizations.
//!
//! 2d forms: `I_m(r) = (r/2)^m ₀𝐅₁(m+1; r²/4)`, `K_m(r) = (√π/2)(r/2)^m U_m(r²/4)`,
//! `J_m(r) = e^{±iπm/2} I_m(e^{∓iπ/2} r)`, `H^±_m(r) = (2/π) e^{∓iπ(m+1)/2} K_m(e^{∓iπ/2} r)`.
//!
//! 1d forms carry the gauge `√(πr/2)` (for ℐ, 𝒥, ℋ^±) or `√(2r/π)` (for 𝒦),
//! which turns the Bessel equation into `(−∂² + (m²−¼)/r² ± 1) f = 0`.
//!
//! Every function has a jet variant returning the `r`-derivative, computed
//! from differentiated series and contiguous relations. Arguments are
//! [`Lifted`] so rotated points keep their sheet.

use crate::complexmath::{exp_i_pi, rotate, Lifted, Rotation, C, I};
use crate::error::Result;
use crate::hypergeom::{f01_reg_jet, u_alpha_jet, u_alpha_via, EvalPath, Jet, SpecialValue};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dim {
    OneD,
    TwoD,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    HyperbolicI,
    MacdonaldK,
    TrigJ,
    HankelPlus,
    HankelMinus,
}

/// One of the ten Bessel-type functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BesselKind {
    pub dim: Dim,
    pub flavor: Flavor,
}

/// Sign selector for Hankel functions and rotation choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Loss exponent of the `I` series: largest term over result magnitude.
fn i_series_loss(r: &Lifted) -> f64 {
    r.norm() - r.value().re.abs()
}

const I_SERIES_MAX_LOSS: f64 = 10.0;

fn i_series(m: C, r: &Lifted) -> Result<Jet> {
    let half = r.scale(0.5);
    let pre = half.pow(m)?;
    let w = half.value() * half.value();
    let f = f01_reg_jet(m + 1.0, w)?;
    let value = pre * f.value;
    let deriv = m / r.value() * value + pre * half.value() * f.deriv;
    Ok(Jet {
        value,
        deriv,
        err_est: pre.norm() * f.err_est,
        path: EvalPath::SeriesAt0,
    })
}

/// `I_m` from two Macdonald functions on adjacent sheets.
fn i_from_k(m: C, r: &Lifted) -> Result<Jet> {
    if r.arg() >= 0.0 {
        let down = k2d_jet(m, rotate(*r, Rotation::MinusPi))?;
        let here = k2d_jet(m, *r)?;
        let ph = exp_i_pi(m);
        let den = PI * I;
        Ok(Jet {
            value: (down.value - ph * here.value) / den,
            deriv: (-down.deriv - ph * here.deriv) / den,
            err_est: (down.err_est + ph.norm() * here.err_est) / PI,
            path: EvalPath::ConnectionFormula,
        })
    } else {
        let up = k2d_jet(m, rotate(*r, Rotation::PlusPi))?;
        let here = k2d_jet(m, *r)?;
        let ph = exp_i_pi(-m);
        let den = PI * I;
        Ok(Jet {
            value: (ph * here.value - up.value) / den,
            deriv: (ph * here.deriv + up.deriv) / den,
            err_est: (up.err_est + ph.norm() * here.err_est) / PI,
            path: EvalPath::ConnectionFormula,
        })
    }
}

/// `I_m(r)` and its derivative.
pub fn i2d_jet(m: C, r: impl Into<Lifted>) -> Result<Jet> {
    let r = r.into();
    if i_series_loss(&r) <= I_SERIES_MAX_LOSS {
        i_series(m, &r)
    } else {
        i_from_k(m, &r)
    }
}

fn k_from_u(m: C, r: &Lifted, u: Jet) -> Result<Jet> {
    let half = r.scale(0.5);
    let pre = 0.5 * PI.sqrt() * half.pow(m)?;
    let value = pre * u.value;
    let deriv = m / r.value() * value + pre * u.deriv * half.value();
    Ok(Jet {
        value,
        deriv,
        err_est: pre.norm() * u.err_est,
        path: u.path,
    })
}

/// `K_m(r)` and its derivative.
pub fn k2d_jet(m: C, r: impl Into<Lifted>) -> Result<Jet> {
    let r = r.into();
    let z = r.scale(0.5).square();
    let u = u_alpha_jet(m, z)?;
    k_from_u(m, &r, u)
}

/// `K_m(r)` forced through one evaluation path of `U_m`.
pub fn k2d_via(m: C, r: impl Into<Lifted>, path: EvalPath) -> Result<Jet> {
    let r = r.into();
    let z = r.scale(0.5).square();
    let u = u_alpha_via(m, z, path)?;
    k_from_u(m, &r, u)
}

/// `I_m(r)` forced onto the power series.
pub fn i2d_series(m: C, r: impl Into<Lifted>) -> Result<Jet> {
    i_series(m, &r.into())
}

fn gauge_plus(j: Jet, r: &Lifted, factor: f64) -> Jet {
    // √(factor·r) · f, derivative by the product rule.
    let g = r.sqrt().value() * factor.sqrt();
    let rv = r.value();
    Jet {
        value: g * j.value,
        deriv: g * (j.deriv + j.value / (2.0 * rv)),
        err_est: g.norm() * j.err_est,
        path: j.path,
    }
}

/// `J_m(r) = e^{±iπm/2} I_m(e^{∓iπ/2} r)` for the chosen sign.
pub fn j2d_jet_sign(sign: Sign, m: C, r: impl Into<Lifted>) -> Result<Jet> {
    let r = r.into();
    let s = sign.as_i32();
    let rr = rotate(r, Rotation::half_pi(-s));
    let inner = i2d_jet(m, rr)?;
    let ph = exp_i_pi(sign.as_f64() * m / 2.0);
    let dr = rr.value() / r.value();
    Ok(Jet {
        value: ph * inner.value,
        deriv: ph * inner.deriv * dr,
        err_est: ph.norm() * inner.err_est,
        path: inner.path,
    })
}

/// `J_m(r)` and its derivative.
pub fn j2d_jet(m: C, r: impl Into<Lifted>) -> Result<Jet> {
    let r = r.into();
    let sign = if r.arg() >= 0.0 { Sign::Plus } else { Sign::Minus };
    j2d_jet_sign(sign, m, r)
}

/// `H^±_m(r)` and its derivative.
pub fn hankel2d_jet(sign: Sign, m: C, r: impl Into<Lifted>) -> Result<Jet> {
    let r = r.into();
    let s = sign.as_i32();
    let rr = rotate(r, Rotation::half_pi(-s));
    let inner = k2d_jet(m, rr)?;
    let ph = 2.0 / PI * exp_i_pi(-sign.as_f64() * (m + 1.0) / 2.0);
    let dr = rr.value() / r.value();
    Ok(Jet {
        value: ph * inner.value,
        deriv: ph * inner.deriv * dr,
        err_est: ph.norm() * inner.err_est,
        path: inner.path,
    })
}

/// `ℐ_m(r) = √(πr/2) I_m(r)` and its derivative.
pub fn i1d_jet(m: C, r: impl Into<Lifted>) -> Result<Jet> {
    let r = r.into();
    Ok(gauge_plus(i2d_jet(m, r)?, &r, PI / 2.0))
}

/// `𝒦_m(r) = √(2r/π) K_m(r)` and its derivative.
pub fn k1d_jet(m: C, r: impl Into<Lifted>) -> Result<Jet> {
    let r = r.into();
    Ok(gauge_plus(k2d_jet(m, r)?, &r, 2.0 / PI))
}

/// `𝒦_m` forced through one path of `U_m`.
pub fn k1d_via(m: C, r: impl Into<Lifted>, path: EvalPath) -> Result<Jet> {
    let r = r.into();
    Ok(gauge_plus(k2d_via(m, r, path)?, &r, 2.0 / PI))
}

/// `𝒥_m(r) = √(πr/2) J_m(r)` and its derivative.
pub fn j1d_jet(m: C, r: impl Into<Lifted>) -> Result<Jet> {
    let r = r.into();
    Ok(gauge_plus(j2d_jet(m, r)?, &r, PI / 2.0))
}

/// `ℋ^±_m(r) = √(πr/2) H^±_m(r)` and its derivative.
pub fn hankel1d_jet(sign: Sign, m: C, r: impl Into<Lifted>) -> Result<Jet> {
    let r = r.into();
    Ok(gauge_plus(hankel2d_jet(sign, m, r)?, &r, PI / 2.0))
}

/// Any of the ten functions by kind.
pub fn bessel_jet(kind: BesselKind, m: C, r: impl Into<Lifted>) -> Result<Jet> {
    let r = r.into();
    match (kind.dim, kind.flavor) {
        (Dim::TwoD, Flavor::HyperbolicI) => i2d_jet(m, r),
        (Dim::TwoD, Flavor::MacdonaldK) => k2d_jet(m, r),
        (Dim::TwoD, Flavor::TrigJ) => j2d_jet(m, r),
        (Dim::TwoD, Flavor::HankelPlus) => hankel2d_jet(Sign::Plus, m, r),
        (Dim::TwoD, Flavor::HankelMinus) => hankel2d_jet(Sign::Minus, m, r),
        (Dim::OneD, Flavor::HyperbolicI) => i1d_jet(m, r),
        (Dim::OneD, Flavor::MacdonaldK) => k1d_jet(m, r),
        (Dim::OneD, Flavor::TrigJ) => j1d_jet(m, r),
        (Dim::OneD, Flavor::HankelPlus) => hankel1d_jet(Sign::Plus, m, r),
        (Dim::OneD, Flavor::HankelMinus) => hankel1d_jet(Sign::Minus, m, r),
    }
}

/// `I_m(r)`, principal branch.
pub fn bessel_i2d(m: C, r: C) -> Result<SpecialValue> {
    i2d_jet(m, r).map(|j| j.special())
}

/// `K_m(r)`, principal branch.
pub fn macdonald_k2d(m: C, r: C) -> Result<SpecialValue> {
    k2d_jet(m, r).map(|j| j.special())
}

/// `ℐ_m(r)`, principal branch.
pub fn bessel_i1d(m: C, r: C) -> Result<SpecialValue> {
    i1d_jet(m, r).map(|j| j.special())
}

/// `𝒦_m(r)`, principal branch.
pub fn macdonald_k1d(m: C, r: C) -> Result<SpecialValue> {
    k1d_jet(m, r).map(|j| j.special())
}

/// `J_m(r)`, principal branch.
pub fn bessel_j2d(m: C, r: C) -> Result<SpecialValue> {
    j2d_jet(m, r).map(|j| j.special())
}

/// `H^±_m(r)`, principal branch.
pub fn hankel2d(sign: Sign, m: C, r: C) -> Result<SpecialValue> {
    hankel2d_jet(sign, m, r).map(|j| j.special())
}

/// `𝒥_m(r)`, principal branch.
pub fn bessel_j1d(m: C, r: C) -> Result<SpecialValue> {
    j1d_jet(m, r).map(|j| j.special())
}

/// `ℋ^±_m(r)`, principal branch.
pub fn hankel1d(sign: Sign, m: C, r: C) -> Result<SpecialValue> {
    hankel1d_jet(sign, m, r).map(|j| j.special())
}
