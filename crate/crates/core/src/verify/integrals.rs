//! Oscillatory integrals needed by the checks: the norm of the
//! negative-exponential eigenfunctions and the Hankel transform.

use super::quadrature::{quadrature, quadrature_ray};
use crate::bessel::{self, Sign};
use crate::complexmath::C;
use crate::error::{Error, Result};
use crate::operators::hankel_transform_kernel;

/// Where the `x`-integral hands over to the tail in `r = ℓe^x`.
const TAIL_START: f64 = 20.0;

/// `∫_ℝ |J_m(ℓe^x)|² dx` for real `m > 0`, with its error estimate.
///
/// Up to `ℓe^x = 20` the integral is done in `x`. The rest equals
/// `∫ J_m(r)²/r dr` over `[20, ∞)`; with `J = (H⁺ + H⁻)/2` the `H⁺²` and
/// `H⁻²` parts are taken along vertical rays where they decay, and the
/// `H⁺H⁻` part along the real axis, where it is smooth.
pub fn normalization_integral(m: f64, ell: f64, tol: f64) -> Result<(f64, f64)> {
    if !(m > 0.0 && ell > 0.0) {
        return Err(Error::InvalidParameter(format!("need m > 0 and ℓ > 0, got m = {m}, ℓ = {ell}")));
    }
    let mc = C::new(m, 0.0);
    let eval = |f: Result<C>| f.unwrap_or(C::new(f64::NAN, f64::NAN));
    let head = |x: f64| {
        let r = ell * x.exp();
        if r < 1e-280 {
            return C::new(0.0, 0.0);
        }
        let j = eval(bessel::bessel_j2d(mc, C::new(r, 0.0)).map(|v| v.value));
        j * j
    };
    let x_split = (TAIL_START / ell).ln();
    let (h, eh) = quadrature(&head, f64::NEG_INFINITY, x_split, tol)?;

    let start = C::new(TAIL_START, 0.0);
    let sq = |s: Sign| move |r: C| {
        let v = eval(bessel::hankel2d(s, mc, r).map(|v| v.value));
        v * v / r
    };
    let (pp, epp) = quadrature_ray(&sq(Sign::Plus), start, C::new(0.0, 1.0), tol)?;
    let (mm, emm) = quadrature_ray(&sq(Sign::Minus), start, C::new(0.0, -1.0), tol)?;
    let cross = |r: f64| {
        let rc = C::new(r, 0.0);
        let a = eval(bessel::hankel2d(Sign::Plus, mc, rc).map(|v| v.value));
        let b = eval(bessel::hankel2d(Sign::Minus, mc, rc).map(|v| v.value));
        a * b / r
    };
    let (pm, epm) = quadrature(&cross, TAIL_START, f64::INFINITY, tol)?;
    let tail = (pp + mm + 2.0 * pm) / 4.0;
    let value = h + tail;
    Ok((value.re, eh + (epp + emm + 2.0 * epm) / 4.0 + value.im.abs()))
}

/// `∫_0^∞ √(2/π) 𝒥_m(xy) f(x) dx` by adaptive quadrature; `f` must decay.
pub fn hankel_transform(m: C, f: &dyn Fn(f64) -> C, y: f64, tol: f64) -> Result<(C, f64)> {
    let g = |x: f64| {
        if x == 0.0 {
            return C::new(0.0, 0.0);
        }
        let fx = f(x);
        if fx == C::new(0.0, 0.0) {
            return fx;
        }
        hankel_transform_kernel(m, x, y).unwrap_or(C::new(f64::NAN, f64::NAN)) * fx
    };
    quadrature(&g, 0.0, f64::INFINITY, tol)
}
