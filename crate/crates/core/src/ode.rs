//! Taylor-series continuation for linear second-order ODEs with polynomial
//! coefficients, `P2 f'' + P1 f' + P0 f = 0`.

use crate::complexmath::C;
use crate::error::{Error, Result};

/// Coefficients of `P2`, `P1`, `P0` expanded as polynomials in `t = x − x0`.
pub(crate) struct LocalCoeffs {
    pub p2: Vec<C>,
    pub p1: Vec<C>,
    pub p0: Vec<C>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct OdeState {
    pub x: C,
    pub f: C,
    pub df: C,
}

const MAX_TERMS: usize = 160;
const TERM_TOL: f64 = 1e-17;

fn taylor_step(lc: &LocalCoeffs, f: C, df: C, h: C) -> Option<(C, C)> {
    let q2: Vec<C> = lc.p2.iter().enumerate().map(|(j, p)| p * h.powi(j as i32)).collect();
    let q1: Vec<C> = lc.p1.iter().enumerate().map(|(j, p)| p * h.powi(j as i32 + 1)).collect();
    let q0: Vec<C> = lc.p0.iter().enumerate().map(|(j, p)| p * h.powi(j as i32 + 2)).collect();
    let lead = q2[0];
    if lead == C::new(0.0, 0.0) {
        return None;
    }
    let mut b: Vec<C> = Vec::with_capacity(MAX_TERMS + 2);
    b.push(f);
    b.push(df * h);
    let mut val = b[0] + b[1];
    let mut der = b[1];
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let mut acc = C::new(0.0, 0.0);
        for (j, q) in q2.iter().enumerate().skip(1) {
            if j <= n {
                let k = n - j + 2;
                acc += q * (k * (k - 1)) as f64 * b[k];
            }
        }
        for (j, q) in q1.iter().enumerate() {
            if j <= n {
                let k = n - j + 1;
                acc += q * k as f64 * b[k];
            }
        }
        for (j, q) in q0.iter().enumerate() {
            if j <= n {
                acc += q * b[n - j];
            }
        }
        let next = -acc / (lead * ((n + 2) * (n + 1)) as f64);
        if !next.re.is_finite() || !next.im.is_finite() {
            return None;
        }
        b.push(next);
        val += next;
        der += next * (n + 2) as f64;
        let scale = val.norm().max(der.norm()).max(1e-300);
        if next.norm() * (n + 2) as f64 <= TERM_TOL * scale {
            small += 1;
            if small >= 3 {
                return Some((val, der / h));
            }
        } else {
            small = 0;
        }
    }
    None
}

/// Carry `(f, f')` from `start.x` to `target` along the straight segment.
/// `max_step(x)` bounds the step length at `x`. Returns the final state and
/// the number of steps taken.
pub(crate) fn continue_solution(
    coeffs: &dyn Fn(C) -> LocalCoeffs,
    start: OdeState,
    target: C,
    max_step: &dyn Fn(C) -> f64,
) -> Result<(OdeState, usize)> {
    let mut s = start;
    let mut steps = 0usize;
    loop {
        let remaining = target - s.x;
        let dist = remaining.norm();
        if dist <= 1e-15 * target.norm().max(1.0) {
            return Ok((OdeState { x: target, ..s }, steps));
        }
        let mut hlen = dist.min(max_step(s.x));
        let lc = coeffs(s.x);
        let mut done = None;
        for _ in 0..40 {
            let h = remaining / dist * hlen;
            if let Some((f, df)) = taylor_step(&lc, s.f, s.df, h) {
                done = Some((h, f, df));
                break;
            }
            hlen *= 0.5;
        }
        let (h, f, df) = done.ok_or_else(|| {
            Error::NoValidPath(format!("ODE continuation stalled at x = {}", s.x))
        })?;
        let x = if hlen >= dist { target } else { s.x + h };
        s = OdeState { x, f, df };
        steps += 1;
        if steps > 100_000 {
            return Err(Error::NoValidPath("ODE continuation exceeded step budget".into()));
        }
    }
}
