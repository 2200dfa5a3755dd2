//! Truncation windows, the three-point finite-difference operator and a
//! banded LU solver for complex tridiagonal systems.

use crate::complexmath::C;
use crate::error::{Error, Result};
use crate::operators::OperatorSpec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Clustering {
    Uniform,
    /// Uniform in `ξ = x + R ln x`: geometric near 0, uniform far away.
    GeometricTowardLeft,
    /// Uniform in `ξ = x + R e^x`: spacing shrinks like `e^{−x}` on the
    /// right, where the local wavenumber of an `e^{2x}` potential grows.
    ExponentialTowardRight,
}

/// `n` interior nodes between the edge nodes `a` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub a: f64,
    pub b: f64,
    pub n: usize,
    pub clustering: Clustering,
    /// `R` of the clustering map; unused for uniform grids.
    pub stretch: f64,
}

/// Interval counts are rounded up to a multiple of this, so that halving
/// `h` keeps every sample node of the coarser grid.
pub const INTERVAL_QUANTUM: usize = 512;

impl Grid {
    pub fn new(a: f64, b: f64, n: usize, clustering: Clustering) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidParameter(format!("bad window [{a}, {b}]")));
        }
        if n < 16 {
            return Err(Error::InvalidParameter("a grid needs at least 16 points".into()));
        }
        if clustering == Clustering::GeometricTowardLeft && a <= 0.0 {
            return Err(Error::InvalidParameter("geometric clustering needs a > 0".into()));
        }
        Ok(Grid {
            a,
            b,
            n,
            clustering,
            stretch: 1.0,
        })
    }

    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Self> {
        Self::new(a, b, n, Clustering::Uniform)
    }

    pub fn geometric(a: f64, b: f64, n: usize) -> Result<Self> {
        Self::new(a, b, n, Clustering::GeometricTowardLeft)
    }

    /// Grid whose spacing (in `x`, or in `ξ` when clustered) is at most `h`.
    pub fn with_spacing(a: f64, b: f64, h: f64, clustering: Clustering) -> Result<Self> {
        if clustering == Clustering::GeometricTowardLeft && a <= 0.0 {
            return Err(Error::InvalidParameter("geometric clustering needs a > 0".into()));
        }
        let len = match clustering {
            Clustering::Uniform => b - a,
            c => map(c, b, 1.0) - map(c, a, 1.0),
        };
        let intervals = (len / h).ceil() as usize;
        let intervals = intervals.div_ceil(INTERVAL_QUANTUM).max(1) * INTERVAL_QUANTUM;
        Self::new(a, b, intervals - 1, clustering)
    }

    /// `(b − a)/(n + 1)`, or the `ξ`-spacing for clustered grids.
    pub fn spacing(&self) -> f64 {
        match self.clustering {
            Clustering::Uniform => (self.b - self.a) / (self.n + 1) as f64,
            c => (map(c, self.b, self.stretch) - map(c, self.a, self.stretch)) / (self.n + 1) as f64,
        }
    }

    /// All `n + 2` nodes including both edges.
    pub fn nodes(&self) -> Vec<f64> {
        let m = self.n + 1;
        match self.clustering {
            Clustering::Uniform => {
                let h = (self.b - self.a) / m as f64;
                (0..=m)
                    .map(|i| if i == m { self.b } else { self.a + i as f64 * h })
                    .collect()
            }
            c => {
                let r = self.stretch;
                let (x0, x1) = (map(c, self.a, r), map(c, self.b, r));
                let h = (x1 - x0) / m as f64;
                (0..=m)
                    .map(|i| match i {
                        0 => self.a,
                        i if i == m => self.b,
                        i => map_inverse(c, x0 + i as f64 * h, r),
                    })
                    .collect()
            }
        }
    }

    /// Interior nodes only.
    pub fn interior(&self) -> Vec<f64> {
        let all = self.nodes();
        all[1..all.len() - 1].to_vec()
    }
}

fn map(c: Clustering, x: f64, r: f64) -> f64 {
    match c {
        Clustering::Uniform => x,
        Clustering::GeometricTowardLeft => x + r * x.ln(),
        Clustering::ExponentialTowardRight => x + r * x.exp(),
    }
}

fn map_inverse(c: Clustering, target: f64, r: f64) -> f64 {
    match c {
        Clustering::Uniform => target,
        Clustering::GeometricTowardLeft => xi_inverse(target, r),
        Clustering::ExponentialTowardRight => exp_map_inverse(target, r),
    }
}

/// Solve `x + R e^x = ξ` by Newton from the right of the root, where the
/// convex residual makes the iteration monotone.
fn exp_map_inverse(target: f64, r: f64) -> f64 {
    let mut x = if target > r { target.min((target / r).ln()) } else { target };
    for _ in 0..200 {
        let e = r * x.exp();
        let step = (x + e - target) / (1.0 + e);
        x -= step;
        if step.abs() < 1e-15 * (1.0 + x.abs()) {
            break;
        }
    }
    x
}

/// Solve `x + R ln x = ξ` by Newton in `t = ln x`.
fn xi_inverse(target: f64, r: f64) -> f64 {
    let mut t = if target > 1.0 { target.ln().max(0.0) } else { (target / r).min(0.0) };
    for _ in 0..100 {
        let e = t.exp();
        let g = e + r * t - target;
        let step = g / (e + r);
        t -= step;
        if step.abs() < 1e-15 * (1.0 + t.abs()) {
            break;
        }
    }
    t.exp()
}

/// Three-point coefficients of `−∂²` at interior node `i` (1-based in `nodes`).
pub(crate) fn stencil(nodes: &[f64], i: usize) -> (f64, f64, f64) {
    let hm = nodes[i] - nodes[i - 1];
    let hp = nodes[i + 1] - nodes[i];
    let s = hm + hp;
    (-2.0 / (hm * s), 2.0 / (hm * hp), -2.0 / (hp * s))
}

/// `(−∂² + V) u` on the interior nodes with `u = 0` at both edges.
pub fn fd_apply(spec: &OperatorSpec, grid: &Grid, u: &[C]) -> Result<Vec<C>> {
    fd_apply_with(&|x| spec.potential(x), grid, u)
}

/// [`fd_apply`] for an arbitrary potential.
pub fn fd_apply_with(potential: &dyn Fn(f64) -> C, grid: &Grid, u: &[C]) -> Result<Vec<C>> {
    if u.len() != grid.n {
        return Err(Error::InvalidParameter(format!(
            "vector has {} entries, grid has {} interior nodes",
            u.len(),
            grid.n
        )));
    }
    let nodes = grid.nodes();
    let zero = C::new(0.0, 0.0);
    Ok((1..=grid.n)
        .map(|i| {
            let (l, d, r) = stencil(&nodes, i);
            let um = if i > 1 { u[i - 2] } else { zero };
            let up = if i < grid.n { u[i] } else { zero };
            l * um + (d + potential(nodes[i])) * u[i - 1] + r * up
        })
        .collect())
}

fn cabs1(z: C) -> f64 {
    z.re.abs() + z.im.abs()
}

/// LU factorization with partial pivoting of a tridiagonal matrix.
pub(crate) struct TridiagLu {
    dl: Vec<C>,
    d: Vec<C>,
    du: Vec<C>,
    du2: Vec<C>,
    swap: Vec<bool>,
    norm1: f64,
}

impl TridiagLu {
    /// `lower[i]` couples row `i+1` to column `i`, `upper[i]` row `i` to column `i+1`.
    pub fn factor(lower: &[C], diag: &[C], upper: &[C]) -> Result<Self> {
        let n = diag.len();
        let mut dl = lower.to_vec();
        let mut d = diag.to_vec();
        let mut du = upper.to_vec();
        let mut du2 = vec![C::new(0.0, 0.0); n.saturating_sub(2)];
        let mut swap = vec![false; n.saturating_sub(1)];
        let mut norm1: f64 = 0.0;
        for j in 0..n {
            let mut s = diag[j].norm();
            if j > 0 {
                s += upper[j - 1].norm();
            }
            if j + 1 < n {
                s += lower[j].norm();
            }
            norm1 = norm1.max(s);
        }
        for i in 0..n.saturating_sub(1) {
            if cabs1(d[i]) >= cabs1(dl[i]) {
                if d[i] != C::new(0.0, 0.0) {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swap[i] = true;
            }
        }
        if d.iter().any(|v| *v == C::new(0.0, 0.0) || !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::OracleUnreliable("singular tridiagonal system".into()));
        }
        Ok(TridiagLu {
            dl,
            d,
            du,
            du2,
            swap,
            norm1,
        })
    }

    pub fn solve(&self, b: &mut [C]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if !self.swap[i] {
                b[i + 1] -= self.dl[i] * b[i];
            } else {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }

    /// Lower estimate of the 1-norm condition number from a few probe solves.
    pub fn condition_estimate(&self) -> f64 {
        let n = self.d.len();
        let mut best: f64 = 0.0;
        for probe in 0..3 {
            let mut b: Vec<C> = (0..n)
                .map(|i| match probe {
                    0 => C::new(1.0, 0.0),
                    1 => C::new(if i % 2 == 0 { 1.0 } else { -1.0 }, 0.0),
                    _ => C::from_polar(1.0, (i as f64 * 0.618_033_988_749_895).fract() * std::f64::consts::TAU),
                })
                .collect();
            let bn = n as f64;
            self.solve(&mut b);
            let xn: f64 = b.iter().map(|v| v.norm()).sum();
            best = best.max(xn / bn);
        }
        best * self.norm1
    }
}
