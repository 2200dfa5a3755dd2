//! Resolvent kernels `P·ψ_a(min(x,y))·ψ_b(max(x,y))`, where `ψ_a` satisfies the
//! left boundary condition, `ψ_b` the right one, and `P = 1/𝒲(ψ_b, ψ_a)`.

use super::{Coupling, Family, OperatorSpec};
use crate::bessel::{self, Sign};
use crate::complexmath::{exp_i_pi, gamma, principal_sqrt, C, I};
use crate::error::{Error, Result};
use crate::hypergeom::{EvalPath, Jet};
use crate::whittaker::{self, WhittakerParams};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// One kernel value together with the Wronskian that normalized it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelEval {
    pub z: C,
    pub x: f64,
    pub y: f64,
    pub value: C,
    pub wronskian_used: C,
    pub err_est: f64,
}

type SolutionFn = Box<dyn Fn(f64) -> Result<Jet> + Send + Sync>;

/// The two boundary-adapted solutions and the prefactor of one resolvent.
pub struct KernelFactors {
    pub spec: OperatorSpec,
    pub z: C,
    pub prefactor: C,
    left: SolutionFn,
    right: SolutionFn,
}

impl std::fmt::Debug for KernelFactors {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KernelFactors")
            .field("spec", &self.spec)
            .field("z", &self.z)
            .field("prefactor", &self.prefactor)
            .finish()
    }
}

impl KernelFactors {
    /// `𝒲(ψ_b, ψ_a) = 1/P`.
    pub fn wronskian_used(&self) -> C {
        1.0 / self.prefactor
    }

    /// The solution obeying the left boundary condition, with its `x`-derivative.
    pub fn left(&self, x: f64) -> Result<Jet> {
        (self.left)(x)
    }

    /// The solution obeying the right boundary condition, with its `x`-derivative.
    pub fn right(&self, x: f64) -> Result<Jet> {
        (self.right)(x)
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<KernelEval> {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        let a = self.left(lo)?;
        let b = self.right(hi)?;
        let value = self.prefactor * a.value * b.value;
        let err_est = self.prefactor.norm() * (a.err_est * b.value.norm() + a.value.norm() * b.err_est);
        Ok(KernelEval {
            z: self.z,
            x,
            y,
            value,
            wronskian_used: self.wronskian_used(),
            err_est,
        })
    }

    /// `∂_x K(x, y)` for `x ≠ y`.
    pub fn eval_dx(&self, x: f64, y: f64) -> Result<C> {
        if x < y {
            Ok(self.prefactor * self.left(x)?.deriv * self.right(y)?.value)
        } else {
            Ok(self.prefactor * self.left(y)?.value * self.right(x)?.deriv)
        }
    }

    /// `∂_x K(y⁺, y) − ∂_x K(y⁻, y)`; equals −1 for a Green's function.
    pub fn jump(&self, y: f64) -> Result<C> {
        let a = self.left(y)?;
        let b = self.right(y)?;
        Ok(self.prefactor * (a.value * b.deriv - a.deriv * b.value))
    }
}

fn spectral(msg: impl Into<String>) -> Error {
    Error::SpectralPoint(msg.into())
}

fn on_ray_from_zero(z: C) -> bool {
    z.im == 0.0 && z.re >= 0.0
}

/// `Γ(a)`, or a spectral-point error when `a` sits on a pole.
fn gamma_off_pole(a: C, what: &str) -> Result<C> {
    let n = a.re.round();
    if n <= 0.0 && (a - C::new(n, 0.0)).norm() <= 1e-12 * (1.0 + a.norm()) {
        return Err(spectral(format!("{what}: Γ({a}) has a pole")));
    }
    Ok(gamma(a).value)
}

fn chain(j: Jet, dr_dx: C) -> Jet {
    Jet {
        deriv: j.deriv * dr_dx,
        ..j
    }
}

fn free_factors(spec: OperatorSpec, z: C) -> Result<KernelFactors> {
    if on_ray_from_zero(z) {
        return Err(spectral(format!("z = {z} lies in [0, ∞)")));
    }
    let p = principal_sqrt(-z);
    let exp_jet = move |s: f64| {
        move |x: f64| {
            let v = (s * p * x).exp();
            Ok(Jet {
                value: v,
                deriv: s * p * v,
                err_est: 1e-16 * v.norm(),
                path: EvalPath::SeriesAt0,
            })
        }
    };
    Ok(KernelFactors {
        spec,
        z,
        prefactor: 1.0 / (2.0 * p),
        left: Box::new(exp_jet(1.0)),
        right: Box::new(exp_jet(-1.0)),
    })
}

fn bessel_factors(spec: OperatorSpec, m: C, z: C) -> Result<KernelFactors> {
    if on_ray_from_zero(z) {
        return Err(spectral(format!("z = {z} lies in [0, ∞)")));
    }
    let k = principal_sqrt(-z);
    Ok(KernelFactors {
        spec,
        z,
        prefactor: 1.0 / k,
        left: Box::new(move |x| Ok(chain(bessel::i1d_jet(m, k * x)?, k))),
        right: Box::new(move |x| Ok(chain(bessel::k1d_jet(m, k * x)?, k))),
    })
}

/// Isotonic kernel with `Re k ≥ 0`, `k ≠ 0` already resolved to the branch used.
fn isotonic_factors(spec: OperatorSpec, k: C, m: C, z: C) -> Result<KernelFactors> {
    let b = z / (2.0 * k);
    let g = gamma_off_pole(0.5 + m / 2.0 - b / 2.0, "isotonic")?;
    let sk = principal_sqrt(k);
    let p = WhittakerParams::new(b, m);
    Ok(KernelFactors {
        spec,
        z,
        prefactor: g / (2.0 * sk),
        left: Box::new(move |v| Ok(chain(whittaker::isotonic_i_jet(&p, sk * v)?, sk))),
        right: Box::new(move |v| Ok(chain(whittaker::isotonic_k_jet(&p, sk * v)?, sk))),
    })
}

fn harmonic_factors(spec: OperatorSpec, k: C, z: C) -> Result<KernelFactors> {
    let b = z / (2.0 * k);
    let g = gamma_off_pole(0.5 - b, "harmonic")?;
    let sk = principal_sqrt(k);
    let two_b = (b * std::f64::consts::LN_2).exp();
    Ok(KernelFactors {
        spec,
        z,
        prefactor: two_b * g / (2.0 * (2.0 * PI).sqrt() * sk),
        left: Box::new(move |u| Ok(chain(whittaker::weber_k_jet(b, -sk * u)?, -sk))),
        right: Box::new(move |u| Ok(chain(whittaker::weber_k_jet(b, sk * u)?, sk))),
    })
}

/// For `Re k = 0`, `k ≠ 0`, the branch `k' = ∓i|k|` selected by `±Im z > 0`.
fn imaginary_branch(k: C, z: C) -> Result<C> {
    let ell = k.im.abs();
    if z.im > 0.0 {
        Ok(C::new(0.0, -ell))
    } else if z.im < 0.0 {
        Ok(C::new(0.0, ell))
    } else {
        Err(spectral(format!("z = {z} is real and the spectrum is ℝ")))
    }
}

/// Factors `P`, `ψ_a`, `ψ_b` of `(L − z)^{−1}`.
pub fn kernel_factors(spec: &OperatorSpec, z: C) -> Result<KernelFactors> {
    let spec = *spec;
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidParameter("z must be finite".into()));
    }
    let zero = C::new(0.0, 0.0);
    match spec.family {
        Family::Bessel { m } => bessel_factors(spec, m, z),
        Family::Exponential { k } => {
            if k == zero {
                return free_factors(spec, z);
            }
            if on_ray_from_zero(z) {
                return Err(spectral(format!("z = {z} lies in [0, ∞)")));
            }
            let m = principal_sqrt(-z);
            Ok(KernelFactors {
                spec,
                z,
                prefactor: C::new(1.0, 0.0),
                left: Box::new(move |x| {
                    let r = k * x.exp();
                    Ok(chain(bessel::i2d_jet(m, r)?, r))
                }),
                right: Box::new(move |x| {
                    let r = k * x.exp();
                    Ok(chain(bessel::k2d_jet(m, r)?, r))
                }),
            })
        }
        Family::NegExponential { ell, gamma } => {
            if on_ray_from_zero(z) {
                return Err(spectral(format!("z = {z} lies in [0, ∞)")));
            }
            let m = principal_sqrt(-z);
            let e = exp_i_pi(m);
            let (prefactor, cp, cm) = match gamma {
                Coupling::Finite(g) => {
                    let den = e - g;
                    if den.norm() <= 1e-13 * (1.0 + g.norm()) {
                        return Err(spectral(format!("e^{{iπm}} = γ at m = {m}")));
                    }
                    (PI * I / (2.0 * den), e, g)
                }
                Coupling::Infinity => (-PI * I / 2.0, zero, C::new(1.0, 0.0)),
            };
            Ok(KernelFactors {
                spec,
                z,
                prefactor,
                left: Box::new(move |x| {
                    let r = ell * x.exp();
                    Ok(chain(bessel::j2d_jet(m, C::new(r, 0.0))?, C::new(r, 0.0)))
                }),
                right: Box::new(move |x| {
                    let r = C::new(ell * x.exp(), 0.0);
                    let mut acc = Jet {
                        value: zero,
                        deriv: zero,
                        err_est: 0.0,
                        path: EvalPath::ConnectionFormula,
                    };
                    for (c, s) in [(cp, Sign::Plus), (cm, Sign::Minus)] {
                        if c == zero {
                            continue;
                        }
                        let h = bessel::hankel2d_jet(s, m, r)?;
                        acc.value += c * h.value;
                        acc.deriv += c * h.deriv * r;
                        acc.err_est += c.norm() * h.err_est;
                        acc.path = h.path;
                    }
                    Ok(acc)
                }),
            })
        }
        Family::Whittaker { beta, m } => {
            if on_ray_from_zero(z) {
                return Err(spectral(format!("z = {z} lies in [0, ∞)")));
            }
            let k = principal_sqrt(-z);
            let kappa = beta / (2.0 * k);
            let g = gamma_off_pole(0.5 + m - kappa, "Whittaker")?;
            let p = WhittakerParams::new(kappa, m);
            let two_k = 2.0 * k;
            Ok(KernelFactors {
                spec,
                z,
                prefactor: g / two_k,
                left: Box::new(move |x| Ok(chain(whittaker::i_jet(&p, two_k * x)?, two_k))),
                right: Box::new(move |x| Ok(chain(whittaker::k_jet(&p, two_k * x)?, two_k))),
            })
        }
        Family::Morse { beta, k } => {
            if on_ray_from_zero(z) {
                return Err(spectral(format!("z = {z} lies in [0, ∞)")));
            }
            let m = principal_sqrt(-z);
            let kappa = beta / (2.0 * k);
            let g = gamma_off_pole(0.5 + m - kappa, "Morse")?;
            let p = WhittakerParams::new(kappa, m);
            Ok(KernelFactors {
                spec,
                z,
                prefactor: g,
                left: Box::new(move |x| {
                    let r = 2.0 * k * x.exp();
                    Ok(chain(whittaker::i2d_jet(&p, r)?, r))
                }),
                right: Box::new(move |x| {
                    let r = 2.0 * k * x.exp();
                    Ok(chain(whittaker::k2d_jet(&p, r)?, r))
                }),
            })
        }
        Family::Isotonic { k, m } => {
            if k == zero {
                return bessel_factors(spec, m, z);
            }
            let kk = if k.re > 0.0 { k } else { imaginary_branch(k, z)? };
            isotonic_factors(spec, kk, m, z)
        }
        Family::Harmonic { k } => {
            if k == zero {
                return free_factors(spec, z);
            }
            let kk = if k.re > 0.0 { k } else { imaginary_branch(k, z)? };
            harmonic_factors(spec, kk, z)
        }
    }
}

fn check_point(spec: &OperatorSpec, x: f64) -> Result<()> {
    let (a, b) = spec.domain();
    if !(x > a && x < b) {
        return Err(Error::InvalidParameter(format!(
            "point {x} outside the open interval of the {} operator",
            spec.name()
        )));
    }
    Ok(())
}

/// Kernel of `(L − z)^{−1}` at `(x, y)`.
pub fn resolvent_kernel(spec: &OperatorSpec, z: C, x: f64, y: f64) -> Result<KernelEval> {
    check_point(spec, x)?;
    check_point(spec, y)?;
    kernel_factors(spec, z)?.eval(x, y)
}

/// `I_m(k e^{min})·K_m(k e^{max})` with principal branches and no restriction
/// on `k`. For `Re k < 0` this is the continuation of the exponential-family
/// kernel that fails to define a bounded operator.
pub fn exponential_kernel_raw(k: C, m: C, x: f64, y: f64) -> Result<C> {
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    let a = bessel::bessel_i2d(m, k * lo.exp())?;
    let b = bessel::macdonald_k2d(m, k * hi.exp())?;
    Ok(a.value * b.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexmath::{c, cr};
    use crate::operators::Coupling;

    fn rel(a: C, b: C) -> f64 {
        (a - b).norm() / b.norm()
    }

    fn sample_specs() -> Vec<(OperatorSpec, C)> {
        vec![
            (OperatorSpec::bessel(cr(0.7)).unwrap(), c(-1.0, 0.3)),
            (OperatorSpec::exponential(c(1.0, 0.2)).unwrap(), cr(-0.49)),
            (OperatorSpec::exponential(cr(0.0)).unwrap(), c(-0.8, 0.1)),
            (
                OperatorSpec::neg_exponential(1.0, Coupling::Finite(c(0.0, 2.0))).unwrap(),
                cr(-0.36),
            ),
            (OperatorSpec::neg_exponential(1.0, Coupling::Infinity).unwrap(), c(-0.5, 0.2)),
            (OperatorSpec::whittaker(c(0.5, 0.1), cr(0.3)).unwrap(), c(-1.2, 0.4)),
            (OperatorSpec::morse(cr(0.5), c(1.0, 0.3)).unwrap(), cr(-0.64)),
            (OperatorSpec::isotonic(c(1.0, 0.2), cr(0.4)).unwrap(), c(0.7, 0.2)),
            (OperatorSpec::isotonic(c(0.0, 1.0), cr(0.4)).unwrap(), c(0.7, 0.5)),
            (OperatorSpec::isotonic(c(0.0, 1.0), cr(0.4)).unwrap(), c(0.7, -0.5)),
            (OperatorSpec::harmonic(c(1.0, -0.3)).unwrap(), c(0.4, 0.3)),
            (OperatorSpec::harmonic(c(0.0, 1.0)).unwrap(), c(0.4, -0.6)),
            (OperatorSpec::harmonic(cr(0.0)).unwrap(), cr(-1.0)),
        ]
    }

    fn sample_points(spec: &OperatorSpec) -> Vec<f64> {
        match spec.interval {
            super::super::Interval::HalfLine => vec![0.3, 0.9, 1.7],
            super::super::Interval::FullLine => vec![-1.1, 0.2, 0.8],
        }
    }

    #[test]
    fn free_harmonic_kernel() {
        let h = OperatorSpec::harmonic(cr(0.0)).unwrap();
        let v = resolvent_kernel(&h, cr(-1.0), 0.0, 1.0).unwrap().value;
        assert!(rel(v, cr((-1.0f64).exp() / 2.0)) < 1e-15);
    }

    #[test]
    fn bessel_half_reduces_to_dirichlet_free_kernel() {
        let b = OperatorSpec::bessel(cr(0.5)).unwrap();
        let v = resolvent_kernel(&b, cr(-1.0), 0.5, 1.0).unwrap().value;
        let expected = 0.5f64.sinh() * (-1.0f64).exp();
        assert!(rel(v, cr(expected)) < 1e-13);
        let images = ((-0.5f64).exp() - (-1.5f64).exp()) / 2.0;
        assert!((expected - images).abs() < 1e-15);
    }

    #[test]
    fn kernels_are_symmetric() {
        for (spec, z) in sample_specs() {
            let kf = kernel_factors(&spec, z).unwrap();
            let pts = sample_points(&spec);
            for &x in &pts {
                for &y in &pts {
                    let a = kf.eval(x, y).unwrap().value;
                    let b = kf.eval(y, x).unwrap().value;
                    assert!((a - b).norm() <= 1e-14 * a.norm(), "{}", spec.name());
                }
            }
        }
    }

    #[test]
    fn derivative_jump_is_minus_one() {
        for (spec, z) in sample_specs() {
            let kf = kernel_factors(&spec, z).unwrap();
            for &y in &sample_points(&spec) {
                let j = kf.jump(y).unwrap();
                assert!((j + 1.0).norm() < 1e-7, "{} at y = {y}: jump {j}", spec.name());
            }
        }
    }

    #[test]
    fn whittaker_hydrogen_pole() {
        let w = OperatorSpec::whittaker(cr(2.0), cr(0.5)).unwrap();
        let v = resolvent_kernel(&w, cr(-0.5), 0.5, 1.0).unwrap().value;
        assert!(v.norm().is_finite());
        // Residue-like growth (z + 1)·K stays bounded as z → −1.
        let mut last = None;
        for d in [1e-3, 1e-5, 1e-7] {
            let z = cr(-1.0 + d);
            let v = resolvent_kernel(&w, z, 0.5, 1.0).unwrap().value * d;
            if let Some(prev) = last {
                assert!(rel(v, prev) < 1e-2);
            }
            last = Some(v);
        }
        assert!(matches!(resolvent_kernel(&w, cr(-1.0), 0.5, 1.0), Err(Error::SpectralPoint(_))));
    }

    #[test]
    fn family_boundaries_reduce_to_bessel_and_free() {
        let m = c(0.35, 0.1);
        let z = c(-0.9, 0.3);
        let bes = OperatorSpec::bessel(m).unwrap();
        let whit = OperatorSpec::whittaker(cr(0.0), m).unwrap();
        let iso = OperatorSpec::isotonic(cr(0.0), m).unwrap();
        for (x, y) in [(0.4, 1.3), (2.0, 0.7)] {
            let b = resolvent_kernel(&bes, z, x, y).unwrap().value;
            assert!(rel(resolvent_kernel(&whit, z, x, y).unwrap().value, b) < 1e-10);
            assert!(rel(resolvent_kernel(&iso, z, x, y).unwrap().value, b) < 1e-10);
        }
        let e0 = OperatorSpec::exponential(cr(0.0)).unwrap();
        let p = principal_sqrt(-z);
        let v = resolvent_kernel(&e0, z, -0.3, 0.8).unwrap().value;
        assert!(rel(v, (-p * 1.1).exp() / (2.0 * p)) < 1e-14);
    }

    #[test]
    fn harmonic_parity_split() {
        let k = c(1.0, 0.25);
        let z = c(0.6, 0.4);
        let h = kernel_factors(&OperatorSpec::harmonic(k).unwrap(), z).unwrap();
        let nn = kernel_factors(&OperatorSpec::isotonic(k, cr(-0.5)).unwrap(), z).unwrap();
        let nd = kernel_factors(&OperatorSpec::isotonic(k, cr(0.5)).unwrap(), z).unwrap();
        for (u, v) in [(0.4, 1.1), (-0.7, 0.5), (1.5, -0.9), (-0.3, -1.2)] {
            let a = h.eval(u, v).unwrap().value;
            let b = h.eval(u, -v).unwrap().value;
            let even = nn.eval(f64::abs(u), f64::abs(v)).unwrap().value;
            let odd = nd.eval(f64::abs(u), f64::abs(v)).unwrap().value * (u * v).signum();
            assert!(rel(a + b, even) < 1e-9);
            assert!(rel(a - b, odd) < 1e-9);
        }
    }

    #[test]
    fn spectrum_points_rejected() {
        let b = OperatorSpec::bessel(cr(0.3)).unwrap();
        assert!(matches!(resolvent_kernel(&b, cr(2.0), 1.0, 2.0), Err(Error::SpectralPoint(_))));
        let h = OperatorSpec::harmonic(cr(1.0)).unwrap();
        assert!(matches!(resolvent_kernel(&h, cr(3.0), 0.1, 0.2), Err(Error::SpectralPoint(_))));
        let hi = OperatorSpec::harmonic(c(0.0, 1.0)).unwrap();
        assert!(matches!(resolvent_kernel(&hi, cr(3.0), 0.1, 0.2), Err(Error::SpectralPoint(_))));
        assert!(resolvent_kernel(&b, cr(-1.0), -1.0, 2.0).is_err());
    }

    #[test]
    fn raw_exponential_matches_kernel_for_positive_k() {
        let k = c(1.0, 0.2);
        let m = cr(0.5);
        let spec = OperatorSpec::exponential(k).unwrap();
        let a = resolvent_kernel(&spec, -m * m, 0.1, 0.6).unwrap().value;
        let b = exponential_kernel_raw(k, m, 0.1, 0.6).unwrap();
        assert!(rel(a, b) < 1e-14);
    }
}
