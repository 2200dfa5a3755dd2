//! Continuous and point spectra, with closed-form eigenfunctions.

use super::{Coupling, Family, OperatorSpec};
use crate::bessel;
use crate::complexmath::{principal_ln, principal_sqrt, C, I};
use crate::error::{Error, Result};
use crate::hypergeom::Jet;
use crate::whittaker::{self, WhittakerParams};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Default cap on the number of enumerated eigenvalues.
pub const DEFAULT_EIGENVALUE_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContinuousSpectrum {
    RayFromZero,
    FullRealLine,
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointEigenvalue {
    pub eigenvalue: C,
    pub n: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDescriptor {
    pub spec: OperatorSpec,
    pub continuous: ContinuousSpectrum,
    /// Eigenvalues in order of increasing `n`.
    pub point: Vec<PointEigenvalue>,
    /// Set when the enumeration stopped at the limit with more eigenvalues left.
    pub truncated: bool,
}

impl SpectrumDescriptor {
    /// Eigenfunction of the `idx`-th enumerated eigenvalue.
    pub fn eigenfunction(&self, idx: usize) -> Result<Eigenfunction> {
        let p = self
            .point
            .get(idx)
            .ok_or_else(|| Error::InvalidParameter(format!("no eigenvalue with index {idx}")))?;
        eigenfunction(&self.spec, p.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum EigenKind {
    /// `ℐ_{p}(s·x)`
    Whittaker { p: WhittakerParams, s: C },
    /// `I_{p}(s·e^x)`
    Morse { p: WhittakerParams, s: C },
    /// `𝕀_{p}(s·v)`
    Isotonic { p: WhittakerParams, s: C },
    /// `𝕂_b(s·u)`
    Weber { b: C, s: C },
    /// `J_order(ℓ e^x)`
    NegExponential { order: C, ell: f64 },
}

/// Unnormalized closed-form eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenfunction {
    pub spec: OperatorSpec,
    pub n: i64,
    pub eigenvalue: C,
    kind: EigenKind,
}

impl Eigenfunction {
    /// Value and `x`-derivative.
    pub fn eval(&self, x: f64) -> Result<Jet> {
        let scale = |j: Jet, d: C| Jet {
            deriv: j.deriv * d,
            ..j
        };
        match self.kind {
            EigenKind::Whittaker { p, s } => Ok(scale(whittaker::i_jet(&p, s * x)?, s)),
            EigenKind::Morse { p, s } => {
                let r = s * x.exp();
                Ok(scale(whittaker::i2d_jet(&p, r)?, r))
            }
            EigenKind::Isotonic { p, s } => Ok(scale(whittaker::isotonic_i_jet(&p, s * x)?, s)),
            EigenKind::Weber { b, s } => Ok(scale(whittaker::weber_k_jet(b, s * x)?, s)),
            EigenKind::NegExponential { order, ell } => {
                let r = C::new(ell * x.exp(), 0.0);
                Ok(scale(bessel::j2d_jet(order, r)?, r))
            }
        }
    }
}

fn continuous_part(spec: &OperatorSpec) -> ContinuousSpectrum {
    match spec.family {
        Family::Isotonic { k, .. } | Family::Harmonic { k } => {
            if k.re > 0.0 {
                ContinuousSpectrum::Empty
            } else if k == C::new(0.0, 0.0) {
                ContinuousSpectrum::RayFromZero
            } else {
                ContinuousSpectrum::FullRealLine
            }
        }
        _ => ContinuousSpectrum::RayFromZero,
    }
}

/// Exponent `α` with `γ = e^{iπα}`, `Re α ∈ (−1, 1]`.
fn neg_exp_alpha(g: C) -> C {
    -I * principal_ln(g) / PI
}

/// Eigenvalue and eigenfunction kind for index `n`, when admissible.
fn eigen_at(spec: &OperatorSpec, n: i64) -> Option<(C, EigenKind)> {
    match spec.family {
        Family::Bessel { .. } | Family::Exponential { .. } => None,
        Family::Whittaker { beta, m } => {
            if n < 0 {
                return None;
            }
            let d = m + n as f64 + 0.5;
            if d.norm() == 0.0 || (beta / d).re <= 0.0 {
                return None;
            }
            let k = beta / (2.0 * d);
            let p = WhittakerParams::new(d, m);
            Some((-k * k, EigenKind::Whittaker { p, s: 2.0 * k }))
        }
        Family::Morse { beta, k } => {
            if n < 0 {
                return None;
            }
            let kappa = beta / (2.0 * k);
            let mn = kappa - n as f64 - 0.5;
            if mn.re <= 0.0 {
                return None;
            }
            let p = WhittakerParams::new(kappa, mn);
            Some((-mn * mn, EigenKind::Morse { p, s: 2.0 * k }))
        }
        Family::Isotonic { k, m } => {
            if n < 0 || k.re <= 0.0 {
                return None;
            }
            let b = 2.0 * n as f64 + m + 1.0;
            let p = WhittakerParams::new(b, m);
            Some((2.0 * k * b, EigenKind::Isotonic { p, s: principal_sqrt(k) }))
        }
        Family::Harmonic { k } => {
            if n < 0 || k.re <= 0.0 {
                return None;
            }
            let b = C::new(n as f64 + 0.5, 0.0);
            Some((2.0 * k * b, EigenKind::Weber { b, s: principal_sqrt(k) }))
        }
        Family::NegExponential { ell, gamma } => {
            let g = match gamma {
                Coupling::Finite(g) if g != C::new(0.0, 0.0) => g,
                _ => return None,
            };
            if n.rem_euclid(2) != 0 {
                return None;
            }
            let order = neg_exp_alpha(g) + n as f64;
            if order.re <= 0.0 {
                return None;
            }
            Some((-order * order, EigenKind::NegExponential { order, ell }))
        }
    }
}

/// Range of `n` to scan, in increasing order.
fn index_range(spec: &OperatorSpec, limit: usize) -> Box<dyn Iterator<Item = i64>> {
    let cap = 64 * limit as i64 + 4096;
    match spec.family {
        Family::NegExponential { .. } => Box::new((-2..cap).step_by(2)),
        Family::Morse { beta, k } => {
            let top = (beta / (2.0 * k)).re.ceil().max(0.0) as i64 + 1;
            Box::new(0..top.min(cap))
        }
        _ => Box::new(0..cap),
    }
}

/// Spectrum with at most `limit` enumerated eigenvalues.
pub fn spectrum_with_limit(spec: &OperatorSpec, limit: usize) -> SpectrumDescriptor {
    let mut point = Vec::new();
    let mut truncated = false;
    for n in index_range(spec, limit) {
        if let Some((eigenvalue, _)) = eigen_at(spec, n) {
            if point.len() == limit {
                truncated = true;
                break;
            }
            point.push(PointEigenvalue { eigenvalue, n });
        }
    }
    SpectrumDescriptor {
        spec: *spec,
        continuous: continuous_part(spec),
        point,
        truncated,
    }
}

/// Spectrum with the default enumeration limit.
pub fn spectrum(spec: &OperatorSpec) -> SpectrumDescriptor {
    spectrum_with_limit(spec, DEFAULT_EIGENVALUE_LIMIT)
}

/// Closed-form eigenfunction for index `n` of the family's eigenvalue formula.
pub fn eigenfunction(spec: &OperatorSpec, n: i64) -> Result<Eigenfunction> {
    let (eigenvalue, kind) = eigen_at(spec, n)
        .ok_or_else(|| Error::InvalidParameter(format!("index n = {n} is not admissible")))?;
    Ok(Eigenfunction {
        spec: *spec,
        n,
        eigenvalue,
        kind,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexmath::{c, cr, exp_i_pi};
    use crate::operators::kernel_factors;

    #[test]
    fn harmonic_odd_integers() {
        let s = spectrum(&OperatorSpec::harmonic(cr(1.0)).unwrap());
        assert_eq!(s.continuous, ContinuousSpectrum::Empty);
        for (i, p) in s.point.iter().take(4).enumerate() {
            assert!((p.eigenvalue - cr(2.0 * i as f64 + 1.0)).norm() < 1e-15);
        }
        assert!(s.truncated);
        assert_eq!(s.point.len(), DEFAULT_EIGENVALUE_LIMIT);
    }

    #[test]
    fn hydrogen_sequence() {
        let s = spectrum_with_limit(&OperatorSpec::whittaker(cr(2.0), cr(0.5)).unwrap(), 5);
        for (n, p) in s.point.iter().enumerate() {
            let exact = -1.0 / ((n + 1) as f64).powi(2);
            assert!((p.eigenvalue - cr(exact)).norm() < 1e-12);
        }
        assert!(s.truncated);
        let none = spectrum(&OperatorSpec::whittaker(cr(-2.0), cr(0.5)).unwrap());
        assert!(none.point.is_empty() && !none.truncated);
    }

    #[test]
    fn isotonic_and_morse_and_neg_exponential() {
        let iso = spectrum(&OperatorSpec::isotonic(cr(1.0), cr(1.5)).unwrap());
        assert!((iso.point[0].eigenvalue - cr(5.0)).norm() < 1e-15);
        let iso_i = spectrum(&OperatorSpec::isotonic(c(0.0, 1.0), cr(1.5)).unwrap());
        assert_eq!(iso_i.continuous, ContinuousSpectrum::FullRealLine);
        assert!(iso_i.point.is_empty());

        let morse = spectrum(&OperatorSpec::morse(cr(5.0), cr(1.0)).unwrap());
        let ms: Vec<f64> = morse.point.iter().map(|p| p.eigenvalue.re).collect();
        assert_eq!(ms.len(), 2);
        assert!((ms[0] + 4.0).abs() < 1e-14 && (ms[1] + 1.0).abs() < 1e-14);
        assert!(!morse.truncated);

        let ne = spectrum(&OperatorSpec::neg_exponential(1.0, Coupling::Finite(exp_i_pi(cr(0.6)))).unwrap());
        assert!((ne.point[0].eigenvalue - cr(-0.36)).norm() < 1e-12);
        assert!((ne.point[1].eigenvalue - cr(-6.76)).norm() < 1e-12);
        assert_eq!(ne.point[1].n, 2);
        let neg = spectrum(&OperatorSpec::neg_exponential(1.0, Coupling::Finite(exp_i_pi(cr(-0.4)))).unwrap());
        assert_eq!(neg.point[0].n, 2);
        assert!((neg.point[0].eigenvalue - cr(-2.56)).norm() < 1e-12);
        let ne0 = spectrum(&OperatorSpec::neg_exponential(1.0, Coupling::Finite(cr(0.0))).unwrap());
        assert!(ne0.point.is_empty());
    }

    #[test]
    fn eigenvalues_are_kernel_poles() {
        let specs = [
            OperatorSpec::whittaker(c(2.0, 0.3), cr(0.5)).unwrap(),
            OperatorSpec::morse(cr(11.0), c(1.0, 0.2)).unwrap(),
            OperatorSpec::isotonic(c(1.0, 0.3), cr(0.2)).unwrap(),
            OperatorSpec::harmonic(c(1.0, -0.4)).unwrap(),
        ];
        for spec in specs {
            for p in spectrum_with_limit(&spec, 5).point {
                assert!(matches!(kernel_factors(&spec, p.eigenvalue), Err(Error::SpectralPoint(_))));
                let shift = c(1e-9, 1e-9) * p.eigenvalue.norm();
                let near = kernel_factors(&spec, p.eigenvalue + shift).unwrap();
                assert!(near.wronskian_used().norm() < 1e-6, "{}: {}", spec.name(), p.eigenvalue);
            }
        }
    }

    #[test]
    fn ground_states() {
        let h = eigenfunction(&OperatorSpec::harmonic(cr(1.0)).unwrap(), 0).unwrap();
        let r0 = h.eval(0.3).unwrap().value / (-0.045f64).exp();
        for u in [-1.5, -0.2, 0.8, 2.2] {
            let r = h.eval(u).unwrap().value / (-u * u / 2.0).exp();
            assert!((r - r0).norm() < 1e-10 * r0.norm());
        }
        let d = eigenfunction(&OperatorSpec::isotonic(cr(1.0), cr(0.5)).unwrap(), 0).unwrap();
        assert!((d.eigenvalue - cr(3.0)).norm() < 1e-15);
        let r0 = d.eval(0.5).unwrap().value / (0.5 * (-0.125f64).exp());
        for v in [0.2, 1.0, 2.5] {
            let r = d.eval(v).unwrap().value / (v * (-v * v / 2.0).exp());
            assert!((r - r0).norm() < 1e-10 * r0.norm());
        }
        assert!(eigenfunction(&OperatorSpec::harmonic(cr(1.0)).unwrap(), -1).is_err());
    }

    #[test]
    fn eigenfunctions_solve_the_equation() {
        // Residual of −ψ'' + Vψ − λψ by central differences of the analytic derivative.
        let specs = [
            OperatorSpec::whittaker(cr(2.0), cr(0.5)).unwrap(),
            OperatorSpec::morse(cr(5.0), cr(1.0)).unwrap(),
            OperatorSpec::isotonic(c(1.0, 0.2), cr(0.3)).unwrap(),
            OperatorSpec::harmonic(cr(1.0)).unwrap(),
            OperatorSpec::neg_exponential(1.0, Coupling::Finite(exp_i_pi(cr(0.6)))).unwrap(),
        ];
        for spec in specs {
            for p in spectrum_with_limit(&spec, 2).point {
                let f = eigenfunction(&spec, p.n).unwrap();
                let x = 0.7;
                let h = 1e-4;
                let d2 = (f.eval(x + h).unwrap().deriv - f.eval(x - h).unwrap().deriv) / (2.0 * h);
                let v = f.eval(x).unwrap().value;
                let res = -d2 + (spec.potential(x) - p.eigenvalue) * v;
                assert!(res.norm() < 1e-6 * (1.0 + v.norm()), "{} n={}", spec.name(), p.n);
            }
        }
    }
}
