//! Finite-difference resolvent oracle and the Green's-function residual that
//! compares it with the closed-form kernel.

use super::grid::{stencil, Clustering, Grid, TridiagLu};
use super::quadrature::gauss_legendre;
use crate::complexmath::{principal_sqrt, C};
use crate::error::{Error, Result};
use crate::operators::{kernel_factors, Family, KernelFactors, OperatorSpec};
use serde::{Deserialize, Serialize};

/// How the discrete solution is closed at a window edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeCondition {
    /// `u = 0` on the edge node.
    Dirichlet,
    /// `u(edge) = ρ·u(next)` with `ρ` taken from the boundary-adapted
    /// solution. Used where that solution does not decay, or where it is the
    /// larger one near a singular endpoint.
    SolutionRatio,
}

/// Truncation window for one operator at one `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub a: f64,
    pub b: f64,
    pub clustering: Clustering,
    pub left: EdgeCondition,
    pub right: EdgeCondition,
    /// Where the test functions live.
    pub region: (f64, f64),
}

impl Window {
    pub fn grid(&self, h: f64) -> Result<Grid> {
        Grid::with_spacing(self.a, self.b, h, self.clustering)
    }

    /// Same window with each truncating edge twice as far from the test
    /// region. Edges that impose the boundary-adapted solution's ratio do not
    /// truncate anything and stay put, as does a left edge clustered toward
    /// the origin.
    pub fn doubled(&self) -> Window {
        let a = match (self.clustering, self.left) {
            (Clustering::GeometricTowardLeft, _) | (_, EdgeCondition::SolutionRatio) => self.a,
            _ => self.region.0 - 2.0 * (self.region.0 - self.a),
        };
        let b = match self.right {
            EdgeCondition::SolutionRatio => self.b,
            EdgeCondition::Dirichlet => self.region.1 + 2.0 * (self.b - self.region.1),
        };
        Window { a, b, ..*self }
    }
}

/// Decay lengths kept between the test region and a Dirichlet edge.
const DECAY_LENGTHS: f64 = 30.0;
const MIN_RATE: f64 = 0.05;

fn rate(p: C) -> f64 {
    p.re.max(MIN_RATE)
}

fn test_region(spec: &OperatorSpec) -> (f64, f64) {
    match spec.family {
        Family::Bessel { .. } | Family::Whittaker { .. } => (0.5, 3.5),
        Family::Isotonic { .. } => (0.4, 2.2),
        Family::Harmonic { .. } => (-2.0, 2.0),
        Family::Exponential { .. } | Family::Morse { .. } | Family::NegExponential { .. } => (-2.0, 1.0),
    }
}

/// Left edge near a singular origin where `ψ_a ~ x^{1/2+m}`.
fn origin_edge(m: C) -> (f64, EdgeCondition) {
    if m.re >= 0.25 {
        // Dirichlet at `a` perturbs the selected solution by about `a^{2m}`.
        ((-6.5 / m.re * std::f64::consts::LN_10).exp().max(1e-30), EdgeCondition::Dirichlet)
    } else {
        (1e-6, EdgeCondition::SolutionRatio)
    }
}

/// Window and edge conditions used by the oracle for `spec` at `z`.
pub fn default_window(spec: &OperatorSpec, z: C) -> Result<Window> {
    let region = test_region(spec);
    let (r0, r1) = region;
    let sq = principal_sqrt(-z);
    let dir = EdgeCondition::Dirichlet;
    let zero = C::new(0.0, 0.0);
    let half_line = |m: C, right_rate: f64| {
        let (a, left) = origin_edge(m);
        Window {
            a,
            b: r1 + DECAY_LENGTHS / right_rate,
            clustering: Clustering::GeometricTowardLeft,
            left,
            right: dir,
            region,
        }
    };
    let full_line = |a: f64, b: f64, left, right| Window {
        a,
        b,
        clustering: Clustering::Uniform,
        left,
        right,
        region,
    };
    let left_exp = r0 - DECAY_LENGTHS / rate(sq);
    Ok(match spec.family {
        Family::Bessel { m } | Family::Whittaker { m, .. } => half_line(m, rate(sq)),
        Family::Isotonic { k, m } => {
            if k == zero {
                half_line(m, rate(sq))
            } else if k.re > 0.0 {
                let (a, left) = origin_edge(m);
                Window {
                    a,
                    b: (r1 * r1 + 2.0 * DECAY_LENGTHS / k.re.max(MIN_RATE)).sqrt(),
                    clustering: Clustering::GeometricTowardLeft,
                    left,
                    right: dir,
                    region,
                }
            } else {
                let (a, left) = origin_edge(m);
                Window {
                    a,
                    b: r1 + 4.0,
                    clustering: Clustering::GeometricTowardLeft,
                    left,
                    right: EdgeCondition::SolutionRatio,
                    region,
                }
            }
        }
        Family::Harmonic { k } => {
            if k == zero {
                let d = DECAY_LENGTHS / rate(sq);
                full_line(r0 - d, r1 + d, dir, dir)
            } else if k.re > 0.0 {
                let b = (r1 * r1 + 2.0 * DECAY_LENGTHS / k.re.max(MIN_RATE)).sqrt();
                full_line(-b, b, dir, dir)
            } else {
                let ratio = EdgeCondition::SolutionRatio;
                full_line(r0 - 4.0, r1 + 4.0, ratio, ratio)
            }
        }
        Family::Exponential { k } => {
            if k == zero {
                full_line(left_exp, r1 + DECAY_LENGTHS / rate(sq), dir, dir)
            } else {
                let b = (r1 + 1.0).max((DECAY_LENGTHS / k.re.max(MIN_RATE)).ln());
                full_line(left_exp, b, dir, dir)
            }
        }
        Family::Morse { k, .. } => {
            let b = (r1 + 1.0).max((DECAY_LENGTHS / k.re.max(MIN_RATE)).ln());
            full_line(left_exp, b, dir, dir)
        }
        Family::NegExponential { .. } => Window {
            clustering: Clustering::ExponentialTowardRight,
            ..full_line(left_exp, r1 + 1.0, dir, EdgeCondition::SolutionRatio)
        },
    })
}

/// Result of one finite-difference solve.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSolution {
    /// Values on the interior nodes.
    pub u: Vec<C>,
    /// The `z` actually solved at; differs from the request after a nudge.
    pub z: C,
    pub condition: f64,
}

const CONDITION_LIMIT: f64 = 1e12;
const NUDGE: f64 = 1e-6;

/// Solve `(L − z) u = f` on the interior nodes of `grid` by three-point
/// finite differences, closing the edges as [`default_window`] prescribes.
pub fn oracle_resolve(spec: &OperatorSpec, z: C, grid: &Grid, f: &[C]) -> Result<Vec<C>> {
    let w = default_window(spec, z)?;
    Ok(oracle_resolve_with(spec, z, grid, (w.left, w.right), f)?.u)
}

/// [`oracle_resolve`] with explicit edge conditions. A near-singular system
/// is retried once at `z + 10⁻⁶ i`.
pub fn oracle_resolve_with(
    spec: &OperatorSpec,
    z: C,
    grid: &Grid,
    edges: (EdgeCondition, EdgeCondition),
    f: &[C],
) -> Result<OracleSolution> {
    if f.len() != grid.n {
        return Err(Error::InvalidParameter(format!(
            "right-hand side has {} entries, grid has {} interior nodes",
            f.len(),
            grid.n
        )));
    }
    let first = solve_once(spec, z, grid, edges, f)?;
    if first.condition <= CONDITION_LIMIT {
        return Ok(first);
    }
    let nudged = z + C::new(0.0, NUDGE);
    let second = solve_once(spec, nudged, grid, edges, f)?;
    if second.condition <= CONDITION_LIMIT {
        return Ok(second);
    }
    Err(Error::OracleUnreliable(format!(
        "condition estimate {:.3e} at z = {z} and {:.3e} after nudging",
        first.condition, second.condition
    )))
}

fn edge_ratio(psi: &dyn Fn(f64) -> Result<crate::hypergeom::Jet>, edge: f64, inner: f64) -> Result<C> {
    let e = psi(edge)?.value;
    let i = psi(inner)?.value;
    let r = e / i;
    if !(r.re.is_finite() && r.im.is_finite()) {
        return Err(Error::OracleUnreliable(format!("edge ratio undefined at {edge}")));
    }
    Ok(r)
}

fn solve_once(
    spec: &OperatorSpec,
    z: C,
    grid: &Grid,
    edges: (EdgeCondition, EdgeCondition),
    f: &[C],
) -> Result<OracleSolution> {
    let n = grid.n;
    let x = grid.nodes();
    let mut lower = Vec::with_capacity(n - 1);
    let mut diag = Vec::with_capacity(n);
    let mut upper = Vec::with_capacity(n - 1);
    let mut rhs = f.to_vec();
    let mut first_lower = C::new(0.0, 0.0);
    let mut last_upper = C::new(0.0, 0.0);
    for i in 1..=n {
        let (l, d, r) = stencil(&x, i);
        diag.push(d + spec.potential(x[i]) - z);
        if i == 1 {
            first_lower = C::new(l, 0.0);
        } else {
            lower.push(C::new(l, 0.0));
        }
        if i == n {
            last_upper = C::new(r, 0.0);
        } else {
            upper.push(C::new(r, 0.0));
        }
    }
    let needs_factors = edges.0 == EdgeCondition::SolutionRatio || edges.1 == EdgeCondition::SolutionRatio;
    let factors = if needs_factors { Some(kernel_factors(spec, z)?) } else { None };
    if edges.0 == EdgeCondition::SolutionRatio {
        let kf = factors.as_ref().expect("factors built");
        diag[0] += first_lower * edge_ratio(&|t| kf.left(t), x[0], x[1])?;
    }
    if edges.1 == EdgeCondition::SolutionRatio {
        let kf = factors.as_ref().expect("factors built");
        diag[n - 1] += last_upper * edge_ratio(&|t| kf.right(t), x[n + 1], x[n])?;
    }
    // Row equilibration keeps the condition estimate independent of the
    // scale of the potential and of the local spacing.
    for i in 0..n {
        let mut s = diag[i].norm();
        if i > 0 {
            s += lower[i - 1].norm();
        }
        if i + 1 < n {
            s += upper[i].norm();
        }
        let inv = 1.0 / s;
        diag[i] *= inv;
        if i > 0 {
            lower[i - 1] *= inv;
        }
        if i + 1 < n {
            upper[i] *= inv;
        }
        rhs[i] *= inv;
    }
    let lu = TridiagLu::factor(&lower, &diag, &upper)?;
    let condition = lu.condition_estimate();
    lu.solve(&mut rhs);
    Ok(OracleSolution {
        u: rhs,
        z,
        condition,
    })
}

/// Outcome of comparing the closed-form kernel with the oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreenResidualReport {
    pub spec: OperatorSpec,
    pub z: C,
    pub grid: Grid,
    /// Largest relative L² mismatch over the three test functions.
    pub rel_l2_error: f64,
    /// Largest `|jump + 1|` of `∂_x K` across the diagonal.
    pub jump_error: f64,
    /// Relative spread of `P·𝒲(ψ_b, ψ_a)` over the test region.
    pub wronskian_spread: f64,
}

fn bump(center: f64, half_width: f64) -> impl Fn(f64) -> f64 {
    move |x| {
        let t = (x - center) / half_width;
        if t.abs() >= 1.0 {
            0.0
        } else {
            (-1.0 / (1.0 - t * t)).exp()
        }
    }
}

/// Three smooth bumps on disjoint thirds of the test region.
fn test_functions(region: (f64, f64)) -> Vec<(f64, f64)> {
    let third = (region.1 - region.0) / 3.0;
    (0..3)
        .map(|j| (region.0 + (j as f64 + 0.5) * third, 0.45 * third))
        .collect()
}

const SAMPLES: usize = 512;
const PANELS: usize = 64;
const GL_ORDER: usize = 10;

/// `∫ K(x, y) f(y) dy` at each sample `x` for a bump `f`, by composite
/// Gauss–Legendre with the diagonal on panel edges.
fn kernel_apply(kf: &KernelFactors, center: f64, half_width: f64, samples: &[f64]) -> Result<Vec<C>> {
    let f = bump(center, half_width);
    let (s0, s1) = (center - half_width, center + half_width);
    let mut edges: Vec<f64> = (0..=PANELS)
        .map(|i| s0 + (s1 - s0) * i as f64 / PANELS as f64)
        .collect();
    edges.extend(samples.iter().copied().filter(|&x| x > s0 && x < s1));
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    let (gx, gw) = gauss_legendre(GL_ORDER);
    let mut cum_a = vec![C::new(0.0, 0.0); edges.len()];
    let mut cum_b = vec![C::new(0.0, 0.0); edges.len()];
    for p in 0..edges.len() - 1 {
        let (lo, hi) = (edges[p], edges[p + 1]);
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        let mut sa = C::new(0.0, 0.0);
        let mut sb = C::new(0.0, 0.0);
        for (t, w) in gx.iter().zip(&gw) {
            let y = mid + half * t;
            let fy = f(y) * w * half;
            if fy == 0.0 {
                continue;
            }
            sa += kf.left(y)?.value * fy;
            sb += kf.right(y)?.value * fy;
        }
        cum_a[p + 1] = cum_a[p] + sa;
        cum_b[p + 1] = cum_b[p] + sb;
    }
    let total_b = *cum_b.last().expect("nonempty");
    let total_a = *cum_a.last().expect("nonempty");
    samples
        .iter()
        .map(|&x| {
            let (a_part, b_part) = if x <= s0 {
                (C::new(0.0, 0.0), total_b)
            } else if x >= s1 {
                (total_a, C::new(0.0, 0.0))
            } else {
                let q = edges.binary_search_by(|e| e.total_cmp(&x)).expect("sample is an edge");
                (cum_a[q], total_b - cum_b[q])
            };
            let mut u = C::new(0.0, 0.0);
            if a_part != C::new(0.0, 0.0) {
                u += kf.right(x)?.value * a_part;
            }
            if b_part != C::new(0.0, 0.0) {
                u += kf.left(x)?.value * b_part;
            }
            Ok(kf.prefactor * u)
        })
        .collect()
}

/// Interior node indices used for comparison; nested under halving of `h`
/// when `n + 1` is a multiple of [`SAMPLES`].
fn sample_indices(n: usize) -> Vec<usize> {
    let m = n + 1;
    let count = SAMPLES.min(m);
    let mut idx: Vec<usize> = (1..count).map(|j| (j * m) / count).filter(|&i| i >= 1 && i <= n).collect();
    idx.dedup();
    idx
}

/// Compare the closed-form kernel of `spec` at `z` with the finite-difference
/// oracle on `grid`, using three bump test functions.
pub fn green_residual(spec: &OperatorSpec, z: C, grid: &Grid) -> Result<GreenResidualReport> {
    let window = default_window(spec, z)?;
    let region = window.region;
    if !(grid.a < region.0 && grid.b > region.1) {
        return Err(Error::InvalidParameter(format!(
            "grid [{}, {}] does not contain the test region [{}, {}]",
            grid.a, grid.b, region.0, region.1
        )));
    }
    let x = grid.nodes();
    let interior = &x[1..=grid.n];
    let idx = sample_indices(grid.n);
    let samples: Vec<f64> = idx.iter().map(|&i| x[i]).collect();
    let weights: Vec<f64> = idx.iter().map(|&i| 0.5 * (x[(i + 1).min(grid.n + 1)] - x[i - 1])).collect();

    let mut rel_l2_error: f64 = 0.0;
    let mut z_used = z;
    let mut factors: Option<KernelFactors> = None;
    for (center, hw) in test_functions(region) {
        let f = bump(center, hw);
        let rhs: Vec<C> = interior.iter().map(|&t| C::new(f(t), 0.0)).collect();
        let sol = oracle_resolve_with(spec, z, grid, (window.left, window.right), &rhs)?;
        if factors.as_ref().map(|k| k.z) != Some(sol.z) {
            factors = Some(kernel_factors(spec, sol.z)?);
        }
        z_used = sol.z;
        let kf = factors.as_ref().expect("factors built");
        let exact = kernel_apply(kf, center, hw, &samples)?;
        let (mut num, mut den) = (0.0, 0.0);
        for ((&i, e), w) in idx.iter().zip(&exact).zip(&weights) {
            num += w * (sol.u[i - 1] - e).norm_sqr();
            den += w * e.norm_sqr();
        }
        rel_l2_error = rel_l2_error.max((num / den).sqrt());
    }
    let kf = factors.expect("three test functions");

    let probe = |j: usize, count: usize| region.0 + (region.1 - region.0) * j as f64 / (count - 1) as f64;
    let mut jump_error: f64 = 0.0;
    for j in 0..7 {
        jump_error = jump_error.max((kf.jump(probe(j, 7))? + 1.0).norm());
    }
    let mut ws = Vec::with_capacity(41);
    for j in 0..41 {
        let t = probe(j, 41);
        let (a, b) = (kf.left(t)?, kf.right(t)?);
        ws.push(kf.prefactor * (b.value * a.deriv - b.deriv * a.value));
    }
    let mean: C = ws.iter().sum::<C>() / ws.len() as f64;
    let wronskian_spread = ws.iter().map(|w| (w - mean).norm()).fold(0.0, f64::max) / mean.norm();

    Ok(GreenResidualReport {
        spec: *spec,
        z: z_used,
        grid: *grid,
        rel_l2_error,
        jump_error,
        wronskian_spread,
    })
}

/// [`green_residual`] on the default window with spacing `h`.
pub fn green_residual_default(spec: &OperatorSpec, z: C, h: f64) -> Result<GreenResidualReport> {
    let grid = default_window(spec, z)?.grid(h)?;
    green_residual(spec, z, &grid)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinementReport {
    pub spacings: Vec<f64>,
    pub errors: Vec<f64>,
    /// Least-squares slope of `log error` against `log h`.
    pub order: f64,
}

/// Residuals on grids refined by successive halving from `h0`, `levels` in all.
pub fn refinement_study(spec: &OperatorSpec, z: C, h0: f64, levels: usize) -> Result<RefinementReport> {
    if levels < 2 {
        return Err(Error::InvalidParameter("refinement needs at least two levels".into()));
    }
    let w = default_window(spec, z)?;
    let coarse = w.grid(h0)?;
    let mut spacings = Vec::with_capacity(levels);
    let mut errors = Vec::with_capacity(levels);
    for l in 0..levels {
        let g = Grid {
            n: (coarse.n + 1) * (1 << l) - 1,
            ..coarse
        };
        let r = green_residual(spec, z, &g)?;
        spacings.push(g.spacing());
        errors.push(r.rel_l2_error);
    }
    let lx: Vec<f64> = spacings.iter().map(|h| h.ln()).collect();
    let ly: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(RefinementReport {
        spacings,
        errors,
        order: sxy / sxx,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowDoubling {
    pub base: f64,
    pub doubled: f64,
    /// `|doubled − base| / base`.
    pub rel_change: f64,
}

/// Residual at spacing `h` on the default window and on the doubled one.
pub fn window_doubling(spec: &OperatorSpec, z: C, h: f64) -> Result<WindowDoubling> {
    let w = default_window(spec, z)?;
    let base = green_residual(spec, z, &w.grid(h)?)?.rel_l2_error;
    let doubled = green_residual(spec, z, &w.doubled().grid(h)?)?.rel_l2_error;
    Ok(WindowDoubling {
        base,
        doubled,
        rel_change: (doubled - base).abs() / base,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexmath::{c, cr};

    #[test]
    fn bessel_residual_meets_targets() {
        let spec = OperatorSpec::bessel(cr(0.7)).unwrap();
        let k = c(1.0, 0.2);
        let r = green_residual_default(&spec, -k * k, 1e-3).unwrap();
        assert!(r.rel_l2_error < 1e-3, "{}", r.rel_l2_error);
        assert!(r.jump_error < 1e-7, "{}", r.jump_error);
        assert!(r.wronskian_spread < 1e-8, "{}", r.wronskian_spread);
    }

    #[test]
    fn free_line_gaussian_source() {
        // (−∂² + 1)^{−1} has kernel e^{−|x−y|}/2.
        let spec = OperatorSpec::harmonic(cr(0.0)).unwrap();
        let g = Grid::uniform(-20.0, 20.0, 40_000 - 1).unwrap();
        let x = g.interior();
        let s = 0.05;
        let f: Vec<C> = x.iter().map(|t| cr((-(t / s).powi(2)).exp() / (s * std::f64::consts::PI.sqrt()))).collect();
        let u = oracle_resolve(&spec, cr(-1.0), &g, &f).unwrap();
        let mut worst: f64 = 0.0;
        for (t, v) in x.iter().zip(&u) {
            if t.abs() < 5.0 {
                let exact = 0.25 * (s * s / 4.0).exp()
                    * ((-t).exp() * libm_erfc(s / 2.0 - t / s) + t.exp() * libm_erfc(s / 2.0 + t / s));
                worst = worst.max((v.re - exact).abs());
            }
        }
        assert!(worst < 1e-3, "{worst}");
    }

    /// Complementary error function via the continued fraction of the
    /// incomplete gamma function; adequate for a test reference.
    fn libm_erfc(x: f64) -> f64 {
        if x < 0.0 {
            return 2.0 - libm_erfc(-x);
        }
        if x < 2.0 {
            // Series for erf.
            let mut sum = x;
            let mut term = x;
            for n in 1..80 {
                term *= -x * x / n as f64;
                sum += term / (2 * n + 1) as f64;
            }
            return 1.0 - 2.0 / std::f64::consts::PI.sqrt() * sum;
        }
        let mut f = 0.0;
        for n in (1..120).rev() {
            f = n as f64 / 2.0 / (x + f);
        }
        (-x * x).exp() / std::f64::consts::PI.sqrt() / (x + f)
    }

    #[test]
    fn dirichlet_window_enlargement_is_invisible() {
        let spec = OperatorSpec::harmonic(cr(0.0)).unwrap();
        let solve = |half: f64| {
            let n = (2.0 * half / 1e-2) as usize - 1;
            let g = Grid::uniform(-half, half, n).unwrap();
            let x = g.interior();
            let f: Vec<C> = x.iter().map(|t| cr(bump(0.0, 1.0)(*t))).collect();
            let u = oracle_resolve(&spec, cr(-1.0), &g, &f).unwrap();
            x.into_iter().zip(u).filter(|(t, _)| t.abs() <= 5.0).collect::<Vec<_>>()
        };
        let a = solve(10.0);
        let b = solve(14.0);
        assert_eq!(a.len(), b.len());
        for (p, q) in a.iter().zip(b.iter()) {
            assert!((p.0 - q.0).abs() < 1e-9);
            assert!((p.1 - q.1).norm() < 1e-6);
        }
    }

    #[test]
    fn near_eigenvalue_is_nudged_or_reported() {
        // −∂² on (0, π) with Dirichlet edges has eigenvalue 1.
        let spec = OperatorSpec::bessel(cr(0.5)).unwrap();
        let g = Grid::uniform(0.0, std::f64::consts::PI, 4095).unwrap();
        let h = g.spacing();
        let discrete = (4.0 / (h * h)) * (h / 2.0).sin().powi(2);
        let f = vec![cr(1.0); g.n];
        match oracle_resolve_with(&spec, cr(discrete), &g, (EdgeCondition::Dirichlet, EdgeCondition::Dirichlet), &f) {
            Ok(sol) => assert_ne!(sol.z, cr(discrete)),
            Err(e) => assert!(matches!(e, Error::OracleUnreliable(_))),
        }
    }

    #[test]
    fn window_must_contain_test_region() {
        let spec = OperatorSpec::bessel(cr(0.7)).unwrap();
        let g = Grid::geometric(1e-6, 2.0, 1000).unwrap();
        assert!(matches!(green_residual(&spec, cr(-1.0), &g), Err(Error::InvalidParameter(_))));
    }
}
