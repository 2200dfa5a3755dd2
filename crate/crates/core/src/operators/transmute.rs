//! Identities between resolvents of different families, the boundary values
//! of the Bessel resolvent on its continuous spectrum, and the rank-one
//! (Krein) form of the negative exponential family.

use super::kernels::{kernel_factors, resolvent_kernel};
use super::{Coupling, Family, OperatorSpec};
use crate::bessel::{self, Sign};
use crate::complexmath::{exp_i_pi, principal_sqrt, C, I};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransmutationPair {
    /// `(M_k + m²)^{−1}(x,y) = e^{−x/2} (H_m + k²)^{−1}(e^x, e^y) e^{−y/2}`.
    ExponentialBessel,
    /// `(N_{k,m} − 2β)^{−1}(u,v) = 2^{−1/2} (u²/2)^{−1/4} (H_{β,m/2} + k²)^{−1}(u²/2, v²/2) (v²/2)^{−1/4}`.
    IsotonicWhittaker,
    /// `(M_{β,k} + m²)^{−1}(x,y) = e^{−x/2} (H_{β,m} + k²)^{−1}(e^x, e^y) e^{−y/2}`.
    MorseWhittaker,
    /// `(N_{k,m} − 2β)^{−1}(u,v) = 2^{−1/2} (u²/2)^{1/4} (M_{β,k} + m²/4)^{−1}(ln(u²/2), ln(v²/2)) (v²/2)^{1/4}`.
    IsotonicMorse,
    /// `(M^γ_{iℓ} + m²)^{−1}(x,y) = [e^{iπm} B₊ − γ B₋] / (e^{iπm} − γ)` with
    /// `B_± = e^{−x/2} (H_m − ℓ² ∓ i0)^{−1}(e^x, e^y) e^{−y/2}`.
    NegExponentialBessel,
}

/// Both sides of one identity, each evaluated from its own closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transmutation {
    pub pair: TransmutationPair,
    pub lhs: C,
    pub rhs: C,
}

impl Transmutation {
    pub fn rel_mismatch(&self) -> f64 {
        (self.lhs - self.rhs).norm() / self.lhs.norm().max(1e-300)
    }
}

fn close(a: C, b: C) -> bool {
    (a - b).norm() <= 1e-14 * (1.0 + a.norm())
}

fn mismatch(what: &str) -> Error {
    Error::InvalidParameter(format!("incompatible parameters: {what}"))
}

fn need_positive_re(m: C, what: &str) -> Result<()> {
    if m.re > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} needs positive real part")))
    }
}

/// Boundary value `(H_m − (ℓ² ± i0))^{−1}(x, y)`: `±(i/ℓ) 𝒥_m(ℓx_<) ℋ^±_m(ℓx_>)`.
pub fn bessel_boundary_kernel(m: C, ell: f64, side: Sign, x: f64, y: f64) -> Result<C> {
    if ell.is_nan() || ell <= 0.0 {
        return Err(Error::InvalidParameter("ℓ must be positive".into()));
    }
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    let j = bessel::bessel_j1d(m, C::new(ell * lo, 0.0))?.value;
    let h = bessel::hankel1d(side, m, C::new(ell * hi, 0.0))?.value;
    Ok(side.as_f64() * I / ell * j * h)
}

/// Evaluate the identity linking `from` (right-hand side) and `to`
/// (left-hand side) at `(x, y)`. The spectral parameter of each side is the
/// coupling constant of the other, so none is passed.
pub fn transmute(from: &OperatorSpec, to: &OperatorSpec, x: f64, y: f64) -> Result<Transmutation> {
    use Family::*;
    match (from.family, to.family) {
        (Bessel { m }, Exponential { k }) => {
            need_positive_re(m, "m")?;
            need_positive_re(k, "k")?;
            let lhs = resolvent_kernel(to, -m * m, x, y)?.value;
            let h = resolvent_kernel(from, -k * k, x.exp(), y.exp())?.value;
            let rhs = (-(x + y) / 2.0).exp() * h;
            Ok(Transmutation { pair: TransmutationPair::ExponentialBessel, lhs, rhs })
        }
        (Whittaker { beta, m: mu }, Isotonic { k, m }) => {
            if !close(mu, m / 2.0) {
                return Err(mismatch("Whittaker order must be half the isotonic order"));
            }
            need_positive_re(k, "k")?;
            let lhs = resolvent_kernel(to, 2.0 * beta, x, y)?.value;
            let (ru, rv) = (x * x / 2.0, y * y / 2.0);
            let h = resolvent_kernel(from, -k * k, ru, rv)?.value;
            let rhs = h * (ru * rv).powf(-0.25) / SQRT_2;
            Ok(Transmutation { pair: TransmutationPair::IsotonicWhittaker, lhs, rhs })
        }
        (Whittaker { beta, m }, Morse { beta: b2, k }) => {
            if !close(beta, b2) {
                return Err(mismatch("both sides need the same β"));
            }
            need_positive_re(m, "m")?;
            let lhs = resolvent_kernel(to, -m * m, x, y)?.value;
            let h = resolvent_kernel(from, -k * k, x.exp(), y.exp())?.value;
            let rhs = (-(x + y) / 2.0).exp() * h;
            Ok(Transmutation { pair: TransmutationPair::MorseWhittaker, lhs, rhs })
        }
        (Morse { beta, k: k1 }, Isotonic { k, m }) => {
            if !close(k1, k) {
                return Err(mismatch("both sides need the same k"));
            }
            need_positive_re(m, "m")?;
            let lhs = resolvent_kernel(to, 2.0 * beta, x, y)?.value;
            let (ru, rv) = (x * x / 2.0, y * y / 2.0);
            let h = resolvent_kernel(from, -m * m / 4.0, ru.ln(), rv.ln())?.value;
            let rhs = h * (ru * rv).powf(0.25) / SQRT_2;
            Ok(Transmutation { pair: TransmutationPair::IsotonicMorse, lhs, rhs })
        }
        (Bessel { m }, NegExponential { ell, gamma }) => {
            need_positive_re(m, "m")?;
            let lhs = resolvent_kernel(to, -m * m, x, y)?.value;
            let w = (-(x + y) / 2.0).exp();
            let (ex, ey) = (x.exp(), y.exp());
            let minus = w * bessel_boundary_kernel(m, ell, Sign::Minus, ex, ey)?;
            let rhs = match gamma {
                Coupling::Infinity => minus,
                Coupling::Finite(g) => {
                    let plus = w * bessel_boundary_kernel(m, ell, Sign::Plus, ex, ey)?;
                    let e = exp_i_pi(m);
                    (e * plus - g * minus) / (e - g)
                }
            };
            Ok(Transmutation { pair: TransmutationPair::NegExponentialBessel, lhs, rhs })
        }
        _ => Err(Error::Unsupported(format!(
            "no transmutation identity from {} to {}",
            from.name(),
            to.name()
        ))),
    }
}

/// `(𝒲⁰, 𝒲¹)` of the negative exponential family at `z = −m²`:
/// `𝒲^i = 𝒲(Ψ^i, J_m(ℓe^·))` with `Ψ⁰ = e^{iπm} H⁺_m(ℓe^·)/2` and
/// `Ψ¹ = H⁻_m(ℓe^·)/2`, normalized so that `Ψ¹ − (𝒲¹/𝒲⁰) Ψ⁰ = J_m(ℓe^·)`.
/// Evaluated numerically at `x = 0`.
pub fn krein_wronskians(ell: f64, m: C) -> Result<(C, C)> {
    let r = C::new(ell, 0.0);
    let j = bessel::j2d_jet(m, r)?;
    let hp = bessel::hankel2d_jet(Sign::Plus, m, r)?;
    let hm = bessel::hankel2d_jet(Sign::Minus, m, r)?;
    // x-derivatives carry the factor dr/dx = r.
    let w = |f: &crate::hypergeom::Jet| (f.value * j.deriv - f.deriv * j.value) * r;
    Ok((exp_i_pi(m) * w(&hp) / 2.0, w(&hm) / 2.0))
}

/// Resolvent of the negative exponential family with boundary parameter
/// `κ`, as the `κ = 0` resolvent plus the rank-one term
/// `J(x)J(y)/(κ^{−1}𝒲⁰ + 𝒲¹)`.
pub fn krein_resolvent(base: &OperatorSpec, kappa: Coupling, z: C, x: f64, y: f64) -> Result<C> {
    let ell = match base.family {
        Family::NegExponential { ell, .. } => ell,
        _ => {
            return Err(Error::Unsupported(
                "the rank-one form is implemented for the negative exponential family".into(),
            ))
        }
    };
    let r0_spec = OperatorSpec::neg_exponential(ell, Coupling::Finite(C::new(0.0, 0.0)))?;
    let r0 = kernel_factors(&r0_spec, z)?;
    let base_value = r0.eval(x, y)?.value;
    let m = principal_sqrt(-z);
    let (w0, w1) = krein_wronskians(ell, m)?;
    let den = match kappa {
        Coupling::Finite(k) if k == C::new(0.0, 0.0) => return Ok(base_value),
        Coupling::Finite(k) => w0 / k + w1,
        Coupling::Infinity => w1,
    };
    if den.norm() <= 1e-13 * (w0.norm() + w1.norm()) {
        return Err(Error::SpectralPoint(format!(
            "z = {z} is an eigenvalue of the mixed realization"
        )));
    }
    let jx = r0.left(x)?.value;
    let jy = r0.left(y)?.value;
    Ok(base_value + jx * jy / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexmath::{c, cr};

    #[test]
    fn exponential_from_bessel() {
        let from = OperatorSpec::bessel(cr(0.7)).unwrap();
        let to = OperatorSpec::exponential(c(1.0, 0.2)).unwrap();
        let t = transmute(&from, &to, 0.3, 0.9).unwrap();
        assert!(t.rel_mismatch() < 1e-10, "{t:?}");
    }

    #[test]
    fn isotonic_from_whittaker_and_morse() {
        let (k, m, beta) = (cr(1.0), cr(0.8), cr(0.3));
        let iso = OperatorSpec::isotonic(k, m).unwrap();
        let whit = OperatorSpec::whittaker(beta, m / 2.0).unwrap();
        let t = transmute(&whit, &iso, 0.7, 1.4).unwrap();
        assert!(t.rel_mismatch() < 1e-10, "{t:?}");
        let morse = OperatorSpec::morse(beta, k).unwrap();
        let t = transmute(&morse, &iso, 0.7, 1.4).unwrap();
        assert!(t.rel_mismatch() < 1e-10, "{t:?}");
        let whit_m = OperatorSpec::whittaker(beta, m).unwrap();
        let morse = OperatorSpec::morse(beta, c(0.9, 0.4)).unwrap();
        let t = transmute(&whit_m, &morse, -0.4, 0.5).unwrap();
        assert!(t.rel_mismatch() < 1e-10, "{t:?}");
    }

    #[test]
    fn neg_exponential_from_bessel_boundary_values() {
        let from = OperatorSpec::bessel(cr(0.6)).unwrap();
        for g in [Coupling::Finite(c(0.0, 2.0)), Coupling::Finite(cr(0.0)), Coupling::Infinity] {
            let to = OperatorSpec::neg_exponential(1.0, g).unwrap();
            let t = transmute(&from, &to, 0.2, 0.8).unwrap();
            assert!(t.rel_mismatch() < 1e-9, "{g:?}: {t:?}");
        }
    }

    #[test]
    fn boundary_kernel_is_limit_of_resolvent() {
        let m = cr(0.6);
        let spec = OperatorSpec::bessel(m).unwrap();
        for (side, s) in [(Sign::Plus, 1.0), (Sign::Minus, -1.0)] {
            let b = bessel_boundary_kernel(m, 1.3, side, 0.4, 1.1).unwrap();
            let r = resolvent_kernel(&spec, c(1.69, s * 1e-9), 0.4, 1.1).unwrap().value;
            assert!((b - r).norm() < 1e-7 * b.norm());
        }
    }

    #[test]
    fn unsupported_pair() {
        let a = OperatorSpec::harmonic(cr(1.0)).unwrap();
        let b = OperatorSpec::bessel(cr(1.0)).unwrap();
        assert!(matches!(transmute(&a, &b, 0.1, 0.2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn krein_reproduces_mixed_kernels() {
        let base = OperatorSpec::neg_exponential(1.0, Coupling::Finite(cr(0.0))).unwrap();
        let m = cr(0.6);
        let z = -m * m;
        let (w0, w1) = krein_wronskians(1.0, m).unwrap();
        assert!((w0 + I * exp_i_pi(m) / std::f64::consts::PI).norm() < 1e-12);
        assert!((w1 - I / std::f64::consts::PI).norm() < 1e-12);
        for kappa in [Coupling::Finite(c(0.3, -1.2)), Coupling::Finite(cr(2.5)), Coupling::Infinity] {
            let k = krein_resolvent(&base, kappa, z, 0.2, 0.8).unwrap();
            let spec = OperatorSpec::neg_exponential(1.0, kappa).unwrap();
            let r = resolvent_kernel(&spec, z, 0.2, 0.8).unwrap().value;
            assert!((k - r).norm() < 1e-10 * r.norm(), "{kappa:?}");
        }
        let k0 = krein_resolvent(&base, Coupling::Finite(cr(0.0)), z, 0.2, 0.8).unwrap();
        let r0 = resolvent_kernel(&base, z, 0.2, 0.8).unwrap().value;
        assert_eq!(k0, r0);
        let tiny = krein_resolvent(&base, Coupling::Finite(cr(1e-12)), z, 0.2, 0.8).unwrap();
        assert!((tiny - r0).norm() < 1e-9 * r0.norm());
        // At an eigenvalue of the γ = e^{0.6iπ} realization the denominator vanishes.
        let g = Coupling::Finite(exp_i_pi(cr(0.6)));
        assert!(matches!(krein_resolvent(&base, g, cr(-0.36), 0.2, 0.8), Err(Error::SpectralPoint(_))));
    }
}
