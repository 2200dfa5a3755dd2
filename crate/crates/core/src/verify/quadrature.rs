//! Adaptive 7/15-point Gauss–Kronrod quadrature on finite and infinite
//! intervals, and along straight paths in the complex plane.

use crate::complexmath::C;
use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl QuadOptions {
    pub fn tol(tol: f64) -> Self {
        QuadOptions {
            abs_tol: tol,
            rel_tol: tol,
            max_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: C,
    /// Sum of `|K15 − G7|` over the final partition.
    pub err: f64,
    pub intervals: usize,
}

fn gk15(f: &dyn Fn(f64) -> C, a: f64, b: f64) -> Result<(C, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    let (k, g) = (k * h, g * h);
    if !(k.re.is_finite() && k.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite integrand on [{a}, {b}]")));
    }
    Ok((k, (k - g).norm()))
}

/// Adaptive integration over a finite interval.
pub fn integrate_finite(f: &dyn Fn(f64) -> C, a: f64, b: f64, opts: QuadOptions) -> Result<QuadResult> {
    let (v0, e0) = gk15(f, a, b)?;
    let mut parts = vec![(a, b, v0, e0)];
    loop {
        let value: C = parts.iter().map(|p| p.2).sum();
        let err: f64 = parts.iter().map(|p| p.3).sum();
        if err <= opts.abs_tol.max(opts.rel_tol * value.norm()) {
            return Ok(QuadResult {
                value,
                err,
                intervals: parts.len(),
            });
        }
        if parts.len() >= opts.max_intervals {
            return Err(Error::Quadrature { value, err });
        }
        let (idx, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("nonempty");
        let (pa, pb, _, _) = parts.swap_remove(idx);
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            return Err(Error::Quadrature { value, err });
        }
        let (v1, e1) = gk15(f, pa, mid)?;
        let (v2, e2) = gk15(f, mid, pb)?;
        parts.push((pa, mid, v1, e1));
        parts.push((mid, pb, v2, e2));
    }
}

/// `∫_a^b f`, with either end possibly infinite; infinite ends are mapped by
/// `x = a + t/(1−t)`.
pub fn quadrature_with(f: &dyn Fn(f64) -> C, a: f64, b: f64, opts: QuadOptions) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult {
            value: C::new(0.0, 0.0),
            err: 0.0,
            intervals: 0,
        });
    }
    if a > b {
        let r = quadrature_with(f, b, a, opts)?;
        return Ok(QuadResult { value: -r.value, ..r });
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => integrate_finite(f, a, b, opts),
        (true, false) => {
            let g = |t: f64| {
                let s = 1.0 - t;
                f(a + t / s) / (s * s)
            };
            integrate_finite(&g, 0.0, 1.0, opts)
        }
        (false, true) => {
            let g = |t: f64| {
                let s = 1.0 - t;
                f(b - t / s) / (s * s)
            };
            integrate_finite(&g, 0.0, 1.0, opts)
        }
        (false, false) => {
            let half = QuadOptions {
                abs_tol: opts.abs_tol / 2.0,
                ..opts
            };
            let l = quadrature_with(f, f64::NEG_INFINITY, 0.0, half)?;
            let r = quadrature_with(f, 0.0, f64::INFINITY, half)?;
            Ok(QuadResult {
                value: l.value + r.value,
                err: l.err + r.err,
                intervals: l.intervals + r.intervals,
            })
        }
    }
}

/// `∫_a^b f` to tolerance `tol` (absolute or relative, whichever is looser).
pub fn quadrature(f: &dyn Fn(f64) -> C, a: f64, b: f64, tol: f64) -> Result<(C, f64)> {
    let r = quadrature_with(f, a, b, QuadOptions::tol(tol))?;
    Ok((r.value, r.err))
}

/// `∫_0^∞ f(z₀ + s·d) d ds`, the integral along a ray.
pub fn quadrature_ray(f: &dyn Fn(C) -> C, z0: C, dir: C, tol: f64) -> Result<(C, f64)> {
    let g = |s: f64| f(z0 + dir * s) * dir;
    quadrature(&g, 0.0, f64::INFINITY, tol)
}

/// Integral over the line through the saddle `−b/(2a)` of `e^{aw² + bw}`,
/// oriented along its steepest-descent direction (left to right in `Re`).
/// For an entire integrand with that Gaussian behaviour this equals the
/// integral over the real line. The line is cut where the Gaussian has fallen
/// by `e^{−800}`, so factors of the integrand that grow along it on their own
/// are never evaluated at overflowing distances.
pub fn quadrature_steepest_line(f: &dyn Fn(C) -> C, a: C, b: C, tol: f64) -> Result<(C, f64)> {
    if a == C::new(0.0, 0.0) {
        return Err(Error::InvalidParameter("quadratic coefficient must be nonzero".into()));
    }
    let center = -b / (2.0 * a);
    let mut phi = (std::f64::consts::PI - a.arg()) / 2.0;
    if phi.cos() < 0.0 {
        phi -= std::f64::consts::PI;
    }
    let dir = C::from_polar(1.0, phi);
    if dir.re <= 0.0 {
        return Err(Error::InvalidParameter("steepest-descent line is vertical".into()));
    }
    let g = |s: f64| f(center + dir * s) * dir;
    let reach = (800.0 / a.norm()).sqrt();
    quadrature(&g, -reach, reach, tol)
}

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else if n == 1 { t } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (t * pn - pm) / (t * t - 1.0);
            let step = pn / dp;
            t -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}
