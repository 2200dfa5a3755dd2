//! Wronskian scans and boundary-condition limits at singular endpoints.

use crate::bessel::{self, Sign};
use crate::complexmath::{principal_sqrt, C, I};
use crate::error::{Error, Result};
use crate::hypergeom::{EvalPath, Jet};
use crate::operators::{endpoint_indices, Coupling, Family, OperatorSpec};
use serde::{Deserialize, Serialize};

/// `𝒲(f, g) = f g' − f' g`.
pub fn wronskian(f: &Jet, g: &Jet) -> C {
    f.value * g.deriv - f.deriv * g.value
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WronskianScan {
    pub values: Vec<C>,
    pub mean: C,
    /// `max |𝒲(x) − mean|`.
    pub spread: f64,
    /// `spread / |mean|`.
    pub rel_spread: f64,
}

/// `𝒲(f, g)` at each of `points`.
pub fn wronskian_scan(
    f: &dyn Fn(f64) -> Result<Jet>,
    g: &dyn Fn(f64) -> Result<Jet>,
    points: &[f64],
) -> Result<WronskianScan> {
    if points.is_empty() {
        return Err(Error::InvalidParameter("no scan points".into()));
    }
    let values = points
        .iter()
        .map(|&x| Ok(wronskian(&f(x)?, &g(x)?)))
        .collect::<Result<Vec<C>>>()?;
    let mean = values.iter().sum::<C>() / values.len() as f64;
    let spread = values.iter().map(|w| (w - mean).norm()).fold(0.0, f64::max);
    Ok(WronskianScan {
        rel_spread: spread / mean.norm(),
        values,
        mean,
        spread,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Endpoint {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BcLimit {
    /// False when the endpoint needs no boundary condition.
    pub applicable: bool,
    /// Extrapolated `lim 𝒲(Φ, Ξ)`.
    pub value: C,
    /// Size of the two products in the Wronskian along the approach.
    pub scale: f64,
    /// `|value| ≤ 10⁻⁶·scale`.
    pub satisfied: bool,
}

type Solution = Box<dyn Fn(f64) -> Result<Jet>>;

fn jet(value: C, deriv: C) -> Jet {
    Jet {
        value,
        deriv,
        err_est: 1e-16 * value.norm(),
        path: EvalPath::SeriesAt0,
    }
}

/// `x^{1/2+m}` with its derivative.
fn power(m: C) -> Solution {
    Box::new(move |x: f64| {
        let p = m + 0.5;
        let v = C::new(x, 0.0).powc(p);
        Ok(jet(v, p * v / x))
    })
}

/// The function `Φ` whose Wronskian with a solution vanishes at the endpoint
/// exactly when that solution satisfies the family's boundary condition.
///
/// At a singular origin `Φ` is the leading power `x^{1/2+m}` (for the Coulomb
/// case `x^{1/4} 𝒥_{2m}(2√(βx))`). At `+∞` for the negative exponential
/// family it is `H⁺_{1/2}(ℓe^x) − iγ H⁻_{1/2}(ℓe^x)`, which selects the same
/// solution as the coupling `γ` of the resolvent.
pub fn boundary_function(spec: &OperatorSpec, endpoint: Endpoint) -> Option<Box<dyn Fn(f64) -> Result<Jet>>> {
    let idx = endpoint_indices(spec);
    match (endpoint, spec.family) {
        (Endpoint::Left, _) if idx.at_left != 2 => None,
        (Endpoint::Right, _) if idx.at_right != 2 => None,
        (Endpoint::Left, Family::Bessel { m }) | (Endpoint::Left, Family::Isotonic { m, .. }) => Some(power(m)),
        (Endpoint::Left, Family::Whittaker { beta, m }) => {
            if beta == C::new(0.0, 0.0) {
                return Some(power(m));
            }
            let sb = principal_sqrt(beta);
            Some(Box::new(move |x: f64| {
                let sx = x.sqrt();
                let w = 2.0 * sb * sx;
                let j = bessel::j1d_jet(2.0 * m, w)?;
                let q = x.powf(0.25);
                Ok(jet(q * j.value, 0.25 * q / x * j.value + q * j.deriv * sb / sx))
            }))
        }
        (Endpoint::Right, Family::NegExponential { ell, gamma }) => {
            let (cp, cm) = match gamma {
                Coupling::Finite(g) => (C::new(1.0, 0.0), -I * g),
                Coupling::Infinity => (C::new(0.0, 0.0), C::new(1.0, 0.0)),
            };
            Some(Box::new(move |x: f64| {
                let r = C::new(ell * x.exp(), 0.0);
                let mut v = C::new(0.0, 0.0);
                let mut d = C::new(0.0, 0.0);
                for (c, s) in [(cp, Sign::Plus), (cm, Sign::Minus)] {
                    if c == C::new(0.0, 0.0) {
                        continue;
                    }
                    let h = bessel::hankel2d_jet(s, C::new(0.5, 0.0), r)?;
                    v += c * h.value;
                    d += c * h.deriv * r;
                }
                Ok(jet(v, d))
            }))
        }
        _ => None,
    }
}

const APPROACH_STEPS: usize = 32;

/// `lim 𝒲(Φ, Ξ)` at the endpoint, from a geometric approach (`x = 0.2·2^{−j}`
/// at the origin, `ℓe^x` doubling-ish at `+∞`) followed by Aitken
/// extrapolation, or by the raw tail once it has settled.
pub fn bc_wronskian_limit(
    spec: &OperatorSpec,
    solution: &dyn Fn(f64) -> Result<Jet>,
    endpoint: Endpoint,
) -> Result<BcLimit> {
    let Some(phi) = boundary_function(spec, endpoint) else {
        return Ok(BcLimit {
            applicable: false,
            value: C::new(0.0, 0.0),
            scale: 0.0,
            satisfied: true,
        });
    };
    let points: Vec<f64> = (0..APPROACH_STEPS)
        .map(|j| match endpoint {
            Endpoint::Left => 0.2 * 0.5f64.powi(j as i32),
            Endpoint::Right => 1.0 + 0.5 * j as f64,
        })
        .collect();
    let mut w = Vec::with_capacity(points.len());
    let mut scale: f64 = 0.0;
    for &x in &points {
        let p = phi(x)?;
        let s = solution(x)?;
        scale = scale.max((p.value * s.deriv).norm() + (p.deriv * s.value).norm());
        w.push(wronskian(&p, &s));
    }
    let value = extrapolate(&w, scale)?;
    Ok(BcLimit {
        applicable: true,
        value,
        scale,
        satisfied: value.norm() <= 1e-6 * scale,
    })
}

fn extrapolate(w: &[C], scale: f64) -> Result<C> {
    let aitken = |j: usize| {
        let d2 = w[j] - 2.0 * w[j - 1] + w[j - 2];
        if d2.norm() <= 1e-300 {
            w[j]
        } else {
            w[j] - (w[j] - w[j - 1]) * (w[j] - w[j - 1]) / d2
        }
    };
    let n = w.len();
    let est: Vec<C> = (2..n).map(aitken).collect();
    let stable = |k: usize| (est[k] - est[k - 1]).norm() <= 1e-10 * scale;
    if let Some(k) = (2..est.len()).find(|&k| stable(k) && stable(k - 1)) {
        return Ok(est[k]);
    }
    let settled = (n - 3..n).all(|j| (w[j] - w[j - 1]).norm() <= 1e-6 * scale);
    if settled {
        return Ok(w[n - 1]);
    }
    Err(Error::Extrapolation(format!(
        "boundary Wronskian did not settle: last values {} and {}",
        w[n - 2],
        w[n - 1]
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexmath::{c, cr, exp_i_pi};
    use crate::operators::kernel_factors;

    #[test]
    fn bessel_factor_wronskian_is_constant() {
        let m = c(0.3, 0.4);
        let k = c(1.1, 0.7);
        let f = |x: f64| bessel::i1d_jet(m, k * x).map(|j| Jet { deriv: j.deriv * k, ..j });
        let g = |x: f64| bessel::k1d_jet(m, k * x).map(|j| Jet { deriv: j.deriv * k, ..j });
        let pts: Vec<f64> = (1..=20).map(|i| 0.25 * i as f64).collect();
        let s = wronskian_scan(&g, &f, &pts).unwrap();
        assert!((s.mean - k).norm() < 1e-12 * k.norm());
        assert!(s.rel_spread < 1e-12);
    }

    #[test]
    fn origin_condition_selects_regular_solution() {
        let spec = OperatorSpec::bessel(cr(0.7)).unwrap();
        let kf = kernel_factors(&spec, cr(-1.0)).unwrap();
        let good = bc_wronskian_limit(&spec, &|x| kf.left(x), Endpoint::Left).unwrap();
        assert!(good.applicable && good.satisfied, "{good:?}");
        let bad = bc_wronskian_limit(&spec, &|x| kf.right(x), Endpoint::Left).unwrap();
        assert!(!bad.satisfied, "{bad:?}");
    }

    #[test]
    fn coulomb_origin_condition() {
        let spec = OperatorSpec::whittaker(c(0.8, 0.1), cr(0.35)).unwrap();
        let kf = kernel_factors(&spec, c(-0.6, 0.2)).unwrap();
        assert!(bc_wronskian_limit(&spec, &|x| kf.left(x), Endpoint::Left).unwrap().satisfied);
        assert!(!bc_wronskian_limit(&spec, &|x| kf.right(x), Endpoint::Left).unwrap().satisfied);
    }

    #[test]
    fn infinity_condition_matches_coupling() {
        for g in [cr(0.0), c(0.0, 2.0), c(0.4, -0.3)] {
            let spec = OperatorSpec::neg_exponential(1.0, Coupling::Finite(g)).unwrap();
            let kf = kernel_factors(&spec, c(-0.8, 0.3)).unwrap();
            let l = bc_wronskian_limit(&spec, &|x| kf.right(x), Endpoint::Right).unwrap();
            assert!(l.satisfied, "γ = {g}: {l:?}");
            let l = bc_wronskian_limit(&spec, &|x| kf.left(x), Endpoint::Right).unwrap();
            assert!(!l.satisfied, "γ = {g}: {l:?}");
        }
        let spec = OperatorSpec::neg_exponential(1.0, Coupling::Infinity).unwrap();
        let kf = kernel_factors(&spec, c(-0.8, 0.3)).unwrap();
        assert!(bc_wronskian_limit(&spec, &|x| kf.right(x), Endpoint::Right).unwrap().satisfied);
        // The outgoing wave alone fails the γ = ∞ condition.
        let m = principal_sqrt(c(0.8, -0.3));
        let out = move |x: f64| {
            let r = C::new(x.exp(), 0.0);
            let h = bessel::hankel2d_jet(Sign::Plus, m, r)?;
            Ok(Jet { value: exp_i_pi(m) * h.value, deriv: exp_i_pi(m) * h.deriv * r, ..h })
        };
        assert!(!bc_wronskian_limit(&spec, &out, Endpoint::Right).unwrap().satisfied);
    }

    #[test]
    fn regular_endpoint_needs_no_condition() {
        let spec = OperatorSpec::bessel(cr(1.5)).unwrap();
        let kf = kernel_factors(&spec, cr(-1.0)).unwrap();
        let l = bc_wronskian_limit(&spec, &|x| kf.right(x), Endpoint::Left).unwrap();
        assert!(!l.applicable);
    }
}
