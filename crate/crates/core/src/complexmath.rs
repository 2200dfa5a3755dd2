//! Complex scalars with a pinned principal branch, the complex gamma function,
//! Pochhammer symbols, and a winding-tracked argument type for rotations
//! such as `e^{±iπ/2} r` and `e^{±iπ} r`.
//!
//! The principal argument lies in `(−π, π]`; every power and logarithm of a
//! plain [`C`] uses that branch. Functions that must follow a value across the
//! negative real axis take a [`Lifted`] instead, which carries an unwrapped
//! argument.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// The universal complex scalar.
pub type C = Complex64;

/// Imaginary unit.
pub const I: C = C::new(0.0, 1.0);

/// Shorthand constructor.
#[inline]
pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Real scalar as a complex number.
#[inline]
pub fn cr(re: f64) -> C {
    C::new(re, 0.0)
}

/// Principal argument in `(−π, π]`. A signed zero imaginary part never
/// produces `−π`.
pub fn carg(z: C) -> f64 {
    let a = z.im.atan2(z.re);
    if a <= -PI {
        PI
    } else {
        a
    }
}

/// Principal logarithm `ln|z| + i·arg z`.
pub fn principal_ln(z: C) -> C {
    C::new(z.norm().ln(), carg(z))
}

/// Principal power `exp(a·(ln|z| + i·arg z))`.
///
/// `0^a` is `0` when `Re a > 0` and a domain error otherwise.
pub fn principal_pow(z: C, a: C) -> Result<C> {
    if z == C::new(0.0, 0.0) {
        if a.re > 0.0 {
            return Ok(C::new(0.0, 0.0));
        }
        return Err(Error::Domain(format!("0 raised to {a}")));
    }
    Ok((a * principal_ln(z)).exp())
}

/// Principal square root with the same branch rule as [`principal_pow`].
pub fn principal_sqrt(z: C) -> C {
    Lifted::principal(z).sqrt().value()
}

fn sin_pi_real(x: f64) -> f64 {
    let n = x.round();
    let f = x - n;
    let s = (PI * f).sin();
    if (n as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

fn cos_pi_real(x: f64) -> f64 {
    let n = x.round();
    let f = x - n;
    let s = if f.abs() == 0.5 { 0.0 } else { (PI * f).cos() };
    if (n as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

/// `sin(πz)` with argument reduction, exact zeros at the integers.
pub fn sin_pi(z: C) -> C {
    let (s, co) = (sin_pi_real(z.re), cos_pi_real(z.re));
    let y = PI * z.im;
    C::new(s * y.cosh(), co * y.sinh())
}

/// `cos(πz)` with argument reduction, exact zeros at the half-integers.
pub fn cos_pi(z: C) -> C {
    let (s, co) = (sin_pi_real(z.re), cos_pi_real(z.re));
    let y = PI * z.im;
    C::new(co * y.cosh(), -s * y.sinh())
}

/// `e^{iπa}` with exact values at integer and half-integer `a`.
pub fn exp_i_pi(a: C) -> C {
    let scale = (-PI * a.im).exp();
    C::new(cos_pi_real(a.re) * scale, sin_pi_real(a.re) * scale)
}

/// Result of a gamma evaluation. Poles are reported in-band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaValue {
    pub value: C,
    pub is_pole: bool,
    pub pole_order: u32,
}

/// True when `z` is exactly `0, −1, −2, …`.
pub fn is_nonpositive_integer(z: C) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

const LANCZOS_G: f64 = 5.242_187_5;
#[allow(clippy::excessive_precision)]
const LANCZOS_C0: f64 = 0.999_999_999_999_997_1;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
#[allow(clippy::excessive_precision)]
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Lanczos log-gamma, valid for `Re z ≥ 1/2`.
fn lanczos_ln_gamma(z: C) -> C {
    let t = z + LANCZOS_G;
    let head = (z + 0.5) * t.ln() - t;
    let mut ser = C::new(LANCZOS_C0, 0.0);
    let mut y = z;
    for coef in LANCZOS {
        y += 1.0;
        ser += coef / y;
    }
    head + (ser * SQRT_2PI / z).ln()
}

/// Logarithm of `Γ(z)` on some branch; only differences and exponentials of
/// it are meaningful. Returns `None` at poles.
pub fn ln_gamma(z: C) -> Option<C> {
    if is_nonpositive_integer(z) {
        return None;
    }
    if z.re >= 0.5 {
        Some(lanczos_ln_gamma(z))
    } else {
        Some(C::new(PI.ln(), 0.0) - sin_pi(z).ln() - lanczos_ln_gamma(1.0 - z))
    }
}

/// Complex gamma function.
pub fn gamma(z: C) -> GammaValue {
    if is_nonpositive_integer(z) {
        return GammaValue {
            value: C::new(f64::INFINITY, 0.0),
            is_pole: true,
            pole_order: 1,
        };
    }
    let value = if z.re >= 0.5 {
        lanczos_ln_gamma(z).exp()
    } else {
        PI / (sin_pi(z) * lanczos_ln_gamma(1.0 - z).exp())
    };
    GammaValue {
        value,
        is_pole: false,
        pole_order: 0,
    }
}

/// `1/Γ(z)`, entire, exactly zero at the nonpositive integers.
pub fn reciprocal_gamma(z: C) -> C {
    if is_nonpositive_integer(z) {
        return C::new(0.0, 0.0);
    }
    if z.re >= 0.5 {
        (-lanczos_ln_gamma(z)).exp()
    } else {
        sin_pi(z) * lanczos_ln_gamma(1.0 - z).exp() / PI
    }
}

/// `Γ(a)/Γ(b)` without intermediate overflow. A pole of the numerator gives
/// an infinite value; a pole of the denominator gives zero.
pub fn gamma_ratio(a: C, b: C) -> C {
    if is_nonpositive_integer(b) {
        return C::new(0.0, 0.0);
    }
    if is_nonpositive_integer(a) {
        return C::new(f64::INFINITY, 0.0);
    }
    if a.norm() < 60.0 && b.norm() < 60.0 {
        return gamma(a).value * reciprocal_gamma(b);
    }
    match (ln_gamma(a), ln_gamma(b)) {
        (Some(la), Some(lb)) => (la - lb).exp(),
        _ => unreachable!("poles handled above"),
    }
}

/// Rising factorial `(c)_k = c(c+1)···(c+k−1)`, `(c)_0 = 1`.
pub fn pochhammer(c: C, k: u32) -> C {
    let mut p = C::new(1.0, 0.0);
    for j in 0..k {
        p *= c + j as f64;
    }
    p
}

/// A point on the logarithmic Riemann surface: the numeric value together
/// with an unwrapped argument. Powers and logarithms use the carried
/// argument, so `e^{iπ}r` and `e^{−iπ}r` stay distinct.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lifted {
    value: C,
    arg: f64,
}

/// Rotations supported by [`rotate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rotation {
    PlusHalfPi,
    MinusHalfPi,
    PlusPi,
    MinusPi,
}

impl Rotation {
    /// `+π/2` for `sign > 0`, `−π/2` otherwise.
    pub fn half_pi(sign: i32) -> Self {
        if sign > 0 {
            Rotation::PlusHalfPi
        } else {
            Rotation::MinusHalfPi
        }
    }

    /// `+π` for `sign > 0`, `−π` otherwise.
    pub fn pi(sign: i32) -> Self {
        if sign > 0 {
            Rotation::PlusPi
        } else {
            Rotation::MinusPi
        }
    }
}

/// Rotate `z` by a multiple of `π/2`, adjusting the carried argument.
pub fn rotate(z: impl Into<Lifted>, rot: Rotation) -> Lifted {
    let z = z.into();
    match rot {
        Rotation::PlusHalfPi => Lifted {
            value: C::new(-z.value.im, z.value.re),
            arg: z.arg + PI / 2.0,
        },
        Rotation::MinusHalfPi => Lifted {
            value: C::new(z.value.im, -z.value.re),
            arg: z.arg - PI / 2.0,
        },
        Rotation::PlusPi => Lifted {
            value: -z.value,
            arg: z.arg + PI,
        },
        Rotation::MinusPi => Lifted {
            value: -z.value,
            arg: z.arg - PI,
        },
    }
}

impl Lifted {
    /// Principal lift of `z`.
    pub fn principal(z: C) -> Self {
        Lifted { value: z, arg: carg(z) }
    }

    /// Point with the given modulus and unwrapped argument.
    pub fn from_polar(modulus: f64, arg: f64) -> Self {
        Lifted {
            value: C::from_polar(modulus, arg),
            arg,
        }
    }

    pub fn value(&self) -> C {
        self.value
    }

    pub fn arg(&self) -> f64 {
        self.arg
    }

    pub fn norm(&self) -> f64 {
        self.value.norm()
    }

    /// Number of full turns separating the carried argument from the
    /// principal one.
    pub fn winding(&self) -> i64 {
        ((self.arg - carg(self.value)) / (2.0 * PI)).round() as i64
    }

    /// `ln|z| + i·arg` with the carried argument.
    pub fn ln(&self) -> C {
        C::new(self.value.norm().ln(), self.arg)
    }

    /// `z^a` on the carried sheet.
    pub fn pow(&self, a: C) -> Result<C> {
        if self.value == C::new(0.0, 0.0) {
            return principal_pow(self.value, a);
        }
        if a.im == 0.0 && a.re.fract() == 0.0 && a.re.abs() < 64.0 {
            return Ok(self.value.powi(a.re as i32));
        }
        Ok((a * self.ln()).exp())
    }

    /// Square root on the carried sheet; the result carries half the argument.
    pub fn sqrt(&self) -> Lifted {
        let r = self.value.norm().sqrt();
        let half = 0.5 * self.arg;
        Lifted {
            value: C::from_polar(r, half),
            arg: half,
        }
    }

    /// Square; the result carries twice the argument.
    pub fn square(&self) -> Lifted {
        Lifted {
            value: self.value * self.value,
            arg: 2.0 * self.arg,
        }
    }

    /// Product of two lifted points.
    pub fn mul(&self, other: Lifted) -> Lifted {
        Lifted {
            value: self.value * other.value,
            arg: self.arg + other.arg,
        }
    }

    /// Scale by a positive real factor, keeping the argument.
    pub fn scale(&self, s: f64) -> Lifted {
        debug_assert!(s > 0.0);
        Lifted {
            value: self.value * s,
            arg: self.arg,
        }
    }

    /// Reciprocal; the argument changes sign.
    pub fn recip(&self) -> Lifted {
        Lifted {
            value: 1.0 / self.value,
            arg: -self.arg,
        }
    }
}

impl From<C> for Lifted {
    fn from(z: C) -> Self {
        Lifted::principal(z)
    }
}

impl From<f64> for Lifted {
    fn from(x: f64) -> Self {
        Lifted::principal(C::new(x, 0.0))
    }
}
