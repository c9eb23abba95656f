//! Gauss rules used for moments, normalisers and validation integrals.

use gauss_quad::{FiniteAboveNegOneF64, GaussJacobi, GaussLegendre};
use std::num::NonZeroUsize;

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn legendre(n: usize) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(NonZeroUsize::new(n.max(1)).unwrap());
    rule.as_node_weight_pairs().to_vec()
}

/// Gauss–Jacobi nodes and weights on [-1, 1] for the weight (1-t)^a (1+t)^b.
pub fn jacobi(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let fa = FiniteAboveNegOneF64::new(a).expect("jacobi exponent must exceed -1");
    let fb = FiniteAboveNegOneF64::new(b).expect("jacobi exponent must exceed -1");
    if a == 0.0 && b == 0.0 {
        return legendre(n);
    }
    let rule = GaussJacobi::new(NonZeroUsize::new(n.max(2)).unwrap(), fa, fb);
    rule.as_node_weight_pairs().to_vec()
}

/// A composite rule with weights already multiplied by the endpoint factors
/// `(x - lo)^b_lo * (hi - x)^a_hi`.
#[derive(Debug, Clone)]
pub struct WeightedRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl WeightedRule {
    /// Composite rule for `∫_lo^hi (x-lo)^b_lo (hi-x)^a_hi h(x) dx` with smooth `h`.
    ///
    /// Panels shrink geometrically (ratio 4) toward both ends down to about
    /// `1e-14 (hi - lo)`; the two outermost panels use Gauss–Jacobi so the
    /// algebraic endpoint behaviour is integrated exactly. The middle is cut
    /// into panels no wider than `max_width`.
    pub fn endpoint(lo: f64, hi: f64, a_hi: f64, b_lo: f64, max_width: f64) -> Self {
        const ORDER: usize = 16;
        let len = hi - lo;
        let gl = legendre(ORDER);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        // Endpoint factors are evaluated from exact distances to the ends:
        // `1 - x` recomputed from a node next to 1 would lose all precision.
        let factor = |dl: f64, dh: f64| -> f64 {
            let l = if b_lo == 0.0 { 1.0 } else { dl.powf(b_lo) };
            let r = if a_hi == 0.0 { 1.0 } else { dh.powf(a_hi) };
            l * r
        };

        let mut offsets = vec![0.25 * len];
        while *offsets.last().unwrap() > 1e-14 * len {
            let next = offsets.last().unwrap() * 0.25;
            offsets.push(next);
        }
        let tiny = *offsets.last().unwrap();

        // innermost panel at lo, weight (x-lo)^b_lo handled by Gauss–Jacobi
        let h = 0.5 * tiny;
        for (t, w) in jacobi(ORDER, 0.0, b_lo) {
            let dl = h * (1.0 + t);
            nodes.push(lo + dl);
            weights.push(w * h.powf(1.0 + b_lo) * factor(1.0, len - dl));
        }
        for win in offsets.windows(2).rev() {
            let (c, hw) = (0.5 * (win[0] + win[1]), 0.5 * (win[0] - win[1]));
            for &(t, w) in &gl {
                let dl = c + hw * t;
                nodes.push(lo + dl);
                weights.push(w * hw * factor(dl, len - dl));
            }
        }
        let (m0, m1) = (lo + offsets[0], hi - offsets[0]);
        let panels = ((m1 - m0) / max_width).ceil().max(1.0) as usize;
        let step = (m1 - m0) / panels as f64;
        for j in 0..panels {
            let c = m0 + (j as f64 + 0.5) * step;
            for &(t, w) in &gl {
                let x = c + 0.5 * step * t;
                nodes.push(x);
                weights.push(w * 0.5 * step * factor(x - lo, hi - x));
            }
        }
        for win in offsets.windows(2) {
            let (c, hw) = (0.5 * (win[0] + win[1]), 0.5 * (win[0] - win[1]));
            for &(t, w) in &gl {
                let dh = c - hw * t;
                nodes.push(hi - dh);
                weights.push(w * hw * factor(len - dh, dh));
            }
        }
        for (t, w) in jacobi(ORDER, a_hi, 0.0) {
            let dh = h * (1.0 - t);
            nodes.push(hi - dh);
            weights.push(w * h.powf(1.0 + a_hi) * factor(len - dh, 1.0));
        }
        Self { nodes, weights }
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// `Σ w_j h(x_j) x_j^k` for every k in 0..=kmax, accumulated by running powers.
    pub fn power_moments<F: FnMut(f64) -> f64>(&self, mut h: F, kmax: usize) -> Vec<f64> {
        let mut out = vec![0.0; kmax + 1];
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let mut term = w * h(x);
            for slot in out.iter_mut() {
                *slot += term;
                term *= x;
                if term == 0.0 {
                    break;
                }
            }
        }
        out
    }
}

/// Adaptive Gauss–Legendre integration: a panel is accepted when its 15-point
/// value agrees with the sum over its two halves.
pub fn adaptive<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> f64 {
    let rule = legendre(15);
    let eval = |p: f64, q: f64, f: &mut F| -> f64 {
        let c = 0.5 * (p + q);
        let h = 0.5 * (q - p);
        rule.iter().map(|&(t, w)| w * f(c + h * t)).sum::<f64>() * h
    };
    let mut total = 0.0;
    let mut stack = vec![(a, b, eval(a, b, &mut f), 0u32)];
    while let Some((p, q, whole, depth)) = stack.pop() {
        let m = 0.5 * (p + q);
        let left = eval(p, m, &mut f);
        let right = eval(m, q, &mut f);
        let err = (left + right - whole).abs();
        if err <= tol.max(1e-15 * (left + right).abs()) || depth >= 50 {
            total += left + right;
        } else {
            stack.push((p, m, left, depth + 1));
            stack.push((m, q, right, depth + 1));
        }
    }
    total
}
