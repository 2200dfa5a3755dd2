//! Operator families, their spectra, resolvent kernels, semigroup kernels and
//! the identities linking them.
//!
//! Every resolvent kernel is returned for `(L − z)^{−1}` with `z` the true
//! spectral parameter. Each family also has a natural parameter (`k`, `m` or
//! `β`) in which its closed form is written; [`natural_parameter`] and
//! [`z_from_natural`] convert between the two.

mod kernels;
mod semigroup;
mod spectrum;
mod transmute;

pub use kernels::{exponential_kernel_raw, kernel_factors, resolvent_kernel, KernelEval, KernelFactors};
pub use semigroup::{
    hankel_transform_kernel, heat_kernel_bessel, mehler_kernel, mehler_kernel_at, propagator_bessel, xi_multiplier,
    MehlerVariant,
};
pub use spectrum::{
    eigenfunction, spectrum, spectrum_with_limit, ContinuousSpectrum, Eigenfunction, PointEigenvalue,
    SpectrumDescriptor, DEFAULT_EIGENVALUE_LIMIT,
};
pub use transmute::{
    bessel_boundary_kernel, krein_resolvent, krein_wronskians, transmute, Transmutation,
    TransmutationPair,
};

use crate::complexmath::{principal_sqrt, C};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Boundary parameter `γ ∈ ℂ ∪ {∞}` of the negative exponential family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Coupling {
    Finite(C),
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Family {
    /// `−∂² + (m²−¼)/r²` on the half-line.
    Bessel { m: C },
    /// `−∂² + k² e^{2x}` on the line.
    Exponential { k: C },
    /// `−∂² − ℓ² e^{2x}` on the line with boundary parameter `γ` at `+∞`.
    NegExponential { ell: f64, gamma: Coupling },
    /// `−∂² + (m²−¼)/r² − β/r` on the half-line.
    Whittaker { beta: C, m: C },
    /// `−∂² + k² e^{2x} − β e^x` on the line.
    Morse { beta: C, k: C },
    /// `−∂² + (m²−¼)/v² + k² v²` on the half-line.
    Isotonic { k: C, m: C },
    /// `−∂² + k² v²` on the line.
    Harmonic { k: C },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Interval {
    HalfLine,
    FullLine,
}

/// A validated operator family with its interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorSpec {
    pub family: Family,
    pub interval: Interval,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn finite(z: C) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

impl OperatorSpec {
    pub fn new(family: Family) -> Result<Self> {
        let interval = match family {
            Family::Bessel { m } => {
                if !finite(m) || m.re <= -1.0 {
                    return Err(invalid("Bessel requires Re m > −1"));
                }
                Interval::HalfLine
            }
            Family::Exponential { k } => {
                if !finite(k) || !(k.re > 0.0 || k == C::new(0.0, 0.0)) {
                    return Err(invalid("Exponential requires Re k > 0 or k = 0"));
                }
                Interval::FullLine
            }
            Family::NegExponential { ell, gamma } => {
                if !(ell.is_finite() && ell > 0.0) {
                    return Err(invalid("NegExponential requires ℓ > 0"));
                }
                if let Coupling::Finite(g) = gamma {
                    if !finite(g) {
                        return Err(invalid("γ must be finite or Infinity"));
                    }
                }
                Interval::FullLine
            }
            Family::Whittaker { beta, m } => {
                if !finite(beta) || !finite(m) || m.re <= -1.0 {
                    return Err(invalid("Whittaker requires Re m > −1"));
                }
                if beta == C::new(0.0, 0.0) && m == C::new(-0.5, 0.0) {
                    return Err(invalid("Whittaker (β, m) = (0, −1/2) is excluded"));
                }
                Interval::HalfLine
            }
            Family::Morse { beta, k } => {
                if !finite(beta) || !finite(k) {
                    return Err(invalid("Morse parameters must be finite"));
                }
                if k.re == 0.0 {
                    return Err(Error::Unsupported("Morse with Re k = 0".into()));
                }
                if k.re < 0.0 {
                    return Err(invalid("Morse requires Re k > 0"));
                }
                Interval::FullLine
            }
            Family::Isotonic { k, m } => {
                if !finite(k) || !finite(m) || k.re < 0.0 || m.re <= -1.0 {
                    return Err(invalid("Isotonic requires Re k ≥ 0 and Re m > −1"));
                }
                Interval::HalfLine
            }
            Family::Harmonic { k } => {
                if !finite(k) || k.re < 0.0 {
                    return Err(invalid("Harmonic requires Re k ≥ 0"));
                }
                Interval::FullLine
            }
        };
        Ok(OperatorSpec { family, interval })
    }

    pub fn bessel(m: C) -> Result<Self> {
        Self::new(Family::Bessel { m })
    }

    pub fn exponential(k: C) -> Result<Self> {
        Self::new(Family::Exponential { k })
    }

    pub fn neg_exponential(ell: f64, gamma: Coupling) -> Result<Self> {
        Self::new(Family::NegExponential { ell, gamma })
    }

    pub fn whittaker(beta: C, m: C) -> Result<Self> {
        Self::new(Family::Whittaker { beta, m })
    }

    pub fn morse(beta: C, k: C) -> Result<Self> {
        Self::new(Family::Morse { beta, k })
    }

    pub fn isotonic(k: C, m: C) -> Result<Self> {
        Self::new(Family::Isotonic { k, m })
    }

    pub fn harmonic(k: C) -> Result<Self> {
        Self::new(Family::Harmonic { k })
    }

    /// Short lowercase family name.
    pub fn name(&self) -> &'static str {
        match self.family {
            Family::Bessel { .. } => "bessel",
            Family::Exponential { .. } => "exponential",
            Family::NegExponential { .. } => "neg_exponential",
            Family::Whittaker { .. } => "whittaker",
            Family::Morse { .. } => "morse",
            Family::Isotonic { .. } => "isotonic",
            Family::Harmonic { .. } => "harmonic",
        }
    }

    /// Open interval `(a, b)` the operator acts on.
    pub fn domain(&self) -> (f64, f64) {
        match self.interval {
            Interval::HalfLine => (0.0, f64::INFINITY),
            Interval::FullLine => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// The potential `V(x)`.
    pub fn potential(&self, x: f64) -> C {
        match self.family {
            Family::Bessel { m } => (m * m - 0.25) / (x * x),
            Family::Exponential { k } => k * k * (2.0 * x).exp(),
            Family::NegExponential { ell, .. } => C::new(-ell * ell * (2.0 * x).exp(), 0.0),
            Family::Whittaker { beta, m } => (m * m - 0.25) / (x * x) - beta / x,
            Family::Morse { beta, k } => k * k * (2.0 * x).exp() - beta * x.exp(),
            Family::Isotonic { k, m } => (m * m - 0.25) / (x * x) + k * k * x * x,
            Family::Harmonic { k } => k * k * x * x,
        }
    }
}

/// Number of boundary conditions needed at each endpoint (0 or 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointIndex {
    pub at_left: u8,
    pub at_right: u8,
}

pub fn endpoint_indices(spec: &OperatorSpec) -> EndpointIndex {
    let singular_origin = |m: C| if m.re.abs() < 1.0 { 2 } else { 0 };
    let (at_left, at_right) = match spec.family {
        Family::Bessel { m } | Family::Whittaker { m, .. } | Family::Isotonic { m, .. } => {
            (singular_origin(m), 0)
        }
        Family::Exponential { .. } | Family::Morse { .. } | Family::Harmonic { .. } => (0, 0),
        Family::NegExponential { .. } => (0, 2),
    };
    EndpointIndex { at_left, at_right }
}

/// The family's natural parameter at spectral point `z`: `k = √(−z)` for
/// Bessel and Whittaker, `m = √(−z)` for the exponential-type families,
/// `β = z/2` for the isotonic and harmonic oscillators.
pub fn natural_parameter(spec: &OperatorSpec, z: C) -> C {
    match spec.family {
        Family::Isotonic { .. } | Family::Harmonic { .. } => z / 2.0,
        _ => principal_sqrt(-z),
    }
}

/// Inverse of [`natural_parameter`].
pub fn z_from_natural(spec: &OperatorSpec, p: C) -> C {
    match spec.family {
        Family::Isotonic { .. } | Family::Harmonic { .. } => 2.0 * p,
        _ => -p * p,
    }
}
