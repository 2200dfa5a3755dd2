//! Schur-test bounds and Hilbert–Schmidt norms of tabulated kernels.

use crate::complexmath::C;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// `c₁ = sup_x ∫|K(x,y)| dy`, `c₂ = sup_y ∫|K(x,y)| dx`, `bound = √(c₁c₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchurBlock {
    pub c1: f64,
    pub c2: f64,
    pub bound: f64,
}

impl SchurBlock {
    fn new(c1: f64, c2: f64) -> Self {
        SchurBlock {
            c1,
            c2,
            bound: (c1 * c2).sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchurReport {
    /// The kernel taken as a whole.
    pub whole: SchurBlock,
    /// Blocks `(x<c, y<c)`, `(x<c, y>c)`, `(x>c, y<c)`, `(x>c, y>c)`.
    pub blocks: [SchurBlock; 4],
    /// Sum of the four block bounds.
    pub split_bound: f64,
}

/// Trapezoid nodes and weights on `[a, c] ∪ [c, b]` with `n` intervals on
/// each side; `c` is node `n`.
fn nodes(a: f64, c: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = Vec::with_capacity(2 * n + 1);
    let mut w = vec![0.0; 2 * n + 1];
    let (hl, hr) = ((c - a) / n as f64, (b - c) / n as f64);
    for i in 0..=n {
        x.push(a + i as f64 * hl);
    }
    for i in 1..=n {
        x.push(if i == n { b } else { c + i as f64 * hr });
    }
    for i in 0..n {
        w[i] += hl / 2.0;
        w[i + 1] += hl / 2.0;
        w[n + i] += hr / 2.0;
        w[n + i + 1] += hr / 2.0;
    }
    (x, w)
}

/// Schur bounds of `K` on `[a, b]²`, whole and split at `c`, from an
/// `(2n+1)²` trapezoid tabulation. A non-finite entry means the kernel is
/// not bounded on this window.
pub fn schur_bound(kernel: &dyn Fn(f64, f64) -> Result<C>, a: f64, b: f64, c: f64, n: usize) -> Result<SchurReport> {
    if !(a < c && c < b) || n < 2 {
        return Err(Error::InvalidParameter(format!("need a < c < b and n ≥ 2, got [{a}, {c}, {b}], n = {n}")));
    }
    let (x, w) = nodes(a, c, b, n);
    let len = x.len();
    let mut table = vec![0.0; len * len];
    for i in 0..len {
        for j in 0..len {
            let v = kernel(x[i], x[j])?.norm();
            if !v.is_finite() {
                return Err(Error::Unbounded(format!("|K({}, {})| is not finite", x[i], x[j])));
            }
            table[i * len + j] = v;
        }
    }
    // c1[s][t]: sup over x in side s of the integral over y in side t.
    let mut c1 = [[0.0f64; 2]; 2];
    let mut c2 = [[0.0f64; 2]; 2];
    let mut whole1: f64 = 0.0;
    let mut whole2: f64 = 0.0;
    for i in 0..len {
        let mut row = [0.0; 2];
        let mut col = [0.0; 2];
        for j in 0..len {
            // Node c belongs to both sides with its half weight on each.
            let (wl, wr) = if j == n { (w[j] / 2.0, w[j] / 2.0) } else if j < n { (w[j], 0.0) } else { (0.0, w[j]) };
            row[0] += wl * table[i * len + j];
            row[1] += wr * table[i * len + j];
            col[0] += wl * table[j * len + i];
            col[1] += wr * table[j * len + i];
        }
        let sides: &[usize] = if i == n { &[0, 1] } else if i < n { &[0] } else { &[1] };
        for &s in sides {
            for t in 0..2 {
                c1[s][t] = c1[s][t].max(row[t]);
                c2[t][s] = c2[t][s].max(col[t]);
            }
        }
        whole1 = whole1.max(row[0] + row[1]);
        whole2 = whole2.max(col[0] + col[1]);
    }
    let blocks = [
        SchurBlock::new(c1[0][0], c2[0][0]),
        SchurBlock::new(c1[0][1], c2[0][1]),
        SchurBlock::new(c1[1][0], c2[1][0]),
        SchurBlock::new(c1[1][1], c2[1][1]),
    ];
    Ok(SchurReport {
        whole: SchurBlock::new(whole1, whole2),
        split_bound: blocks.iter().map(|b| b.bound).sum(),
        blocks,
    })
}

/// `(∫∫ |K|²)^{1/2}` over `xs × ys` by an `n × n` Gauss–Legendre product rule
/// on each of `panels` panels per axis.
pub fn hilbert_schmidt_norm(
    kernel: &dyn Fn(f64, f64) -> Result<C>,
    xs: (f64, f64),
    ys: (f64, f64),
    n: usize,
    panels: usize,
) -> Result<f64> {
    let (g, gw) = super::quadrature::gauss_legendre(n);
    let rule = |(lo, hi): (f64, f64)| {
        let h = (hi - lo) / panels as f64;
        let mut pts = Vec::with_capacity(panels * n);
        for p in 0..panels {
            let mid = lo + (p as f64 + 0.5) * h;
            for (t, w) in g.iter().zip(&gw) {
                pts.push((mid + 0.5 * h * t, 0.5 * h * w));
            }
        }
        pts
    };
    let (px, py) = (rule(xs), rule(ys));
    let mut sum = 0.0;
    for &(x, wx) in &px {
        for &(y, wy) in &py {
            let v = kernel(x, y)?.norm_sqr();
            if !v.is_finite() {
                return Err(Error::Unbounded(format!("|K({x}, {y})|² is not finite")));
            }
            sum += wx * wy * v;
        }
    }
    Ok(sum.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexmath::cr;

    #[test]
    fn convolution_kernel_bound() {
        let k = |x: f64, y: f64| Ok(cr((-(x - y).abs()).exp()));
        let r = schur_bound(&k, -40.0, 40.0, 0.0, 800).unwrap();
        assert!((r.whole.c1 - 2.0).abs() < 1e-3, "{:?}", r.whole);
        assert!((r.whole.c2 - 2.0).abs() < 1e-3);
        assert!((r.whole.bound - 2.0).abs() < 1e-3);
        // Diagonal blocks see almost the whole mass, off-diagonal ones at most 1.
        assert!((r.blocks[0].bound - 2.0).abs() < 1e-3);
        assert!((r.blocks[1].bound - 1.0).abs() < 1e-2);
        assert!(r.split_bound >= r.whole.bound);
    }

    #[test]
    fn separable_kernel_hs_norm() {
        // K = e^{−x−y} on [0, ∞)²: HS norm 1/2.
        let k = |x: f64, y: f64| Ok(cr((-x - y).exp()));
        let hs = hilbert_schmidt_norm(&k, (0.0, 40.0), (0.0, 40.0), 10, 40).unwrap();
        assert!((hs - 0.5).abs() < 1e-10);
    }

    #[test]
    fn overflow_is_unbounded() {
        let k = |x: f64, y: f64| Ok(cr((x * y * 1e3).exp()));
        assert!(matches!(schur_bound(&k, -1.0, 1.0, 0.0, 8), Err(Error::Unbounded(_))));
    }
}
