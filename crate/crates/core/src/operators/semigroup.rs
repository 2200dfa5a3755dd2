//! Heat and propagator kernels of the Bessel operator, the oscillator
//! propagator, and the Hankel transform with its multiplier.

use crate::bessel::{self, Sign};
use crate::complexmath::{exp_i_pi, gamma_ratio, principal_sqrt, C, I};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

/// Kernel of `e^{−tH_m/2}`: `√(2/(πt)) ℐ_m(xy/t) e^{−(x²+y²)/(2t)}`, `Re t ≥ 0`.
pub fn heat_kernel_bessel(m: C, t: C, x: f64, y: f64) -> Result<C> {
    if t.re < 0.0 || t == C::new(0.0, 0.0) {
        return Err(Error::InvalidParameter("heat kernel needs Re t ≥ 0, t ≠ 0".into()));
    }
    let pre = principal_sqrt(2.0 / (PI * t));
    let w = x * y / t;
    let i = bessel::bessel_i1d(m, w)?.value;
    Ok(pre * i * (-(x * x + y * y) / (2.0 * t)).exp())
}

/// Kernel of `e^{±itH_m/2}`:
/// `e^{±iπ(m+1)/2} √(2/(πt)) 𝒥_m(xy/t) e^{∓i(x²+y²)/(2t)}`.
pub fn propagator_bessel(m: C, t: f64, sign: Sign, x: f64, y: f64) -> Result<C> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::SingularTime(t));
    }
    let s = sign.as_f64();
    let pre = exp_i_pi(s * (m + 1.0) / 2.0) * principal_sqrt(C::new(2.0 / (PI * t), 0.0));
    let j = bessel::bessel_j1d(m, C::new(x * y / t, 0.0))?.value;
    Ok(pre * j * (-s * I * (x * x + y * y) / (2.0 * t)).exp())
}

/// Cross-term convention of the oscillator propagator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MehlerVariant {
    /// `(1+ρ²)(u²+v²) − 4ρuv`, the kernel of `e^{−itN₁/2}`.
    Classical,
    /// `(1+ρ²)(u²+v²) − 2ρuv`.
    AsPrinted,
}

/// `(1/√π) √(ρ/(1−ρ²)) exp(−((1+ρ²)(u²+v²) − cρuv)/(2(1−ρ²)))`, `ρ = e^{−it}`.
/// The square root follows `t` continuously from `0⁺`, picking up `e^{−iπ/2}`
/// at each multiple of `π`.
pub fn mehler_kernel(t: f64, u: f64, v: f64, variant: MehlerVariant) -> Result<C> {
    mehler_kernel_at(t, C::new(u, 0.0), C::new(v, 0.0), variant)
}

/// [`mehler_kernel`] continued to complex `u`, `v` (entire in both).
pub fn mehler_kernel_at(t: f64, u: C, v: C, variant: MehlerVariant) -> Result<C> {
    let s = t.sin();
    if !t.is_finite() || s.abs() < 1e-14 * (1.0 + t.abs()) {
        return Err(Error::SingularTime(t));
    }
    let j = (t / PI).floor();
    let root = exp_i_pi(C::new(-0.25 - 0.5 * j, 0.0)) / (2.0 * s.abs()).sqrt();
    let rho = (-I * t).exp();
    let c = match variant {
        MehlerVariant::Classical => 4.0,
        MehlerVariant::AsPrinted => 2.0,
    };
    let rho2 = rho * rho;
    let num = (1.0 + rho2) * (u * u + v * v) - c * rho * u * v;
    Ok(root / PI.sqrt() * (-num / (2.0 * (1.0 - rho2))).exp())
}

/// Hankel transform kernel `√(2/π) 𝒥_m(xy)`.
pub fn hankel_transform_kernel(m: C, x: f64, y: f64) -> Result<C> {
    Ok((2.0 / PI).sqrt() * bessel::bessel_j1d(m, C::new(x * y, 0.0))?.value)
}

/// `Ξ_m(t) = e^{it ln 2} Γ((m+1+it)/2)/Γ((m+1−it)/2)`.
pub fn xi_multiplier(m: C, t: f64) -> C {
    let a = (m + 1.0 + I * t) / 2.0;
    let b = (m + 1.0 - I * t) / 2.0;
    (I * t * LN_2).exp() * gamma_ratio(a, b)
}
