//! Cauchy-type integrals `∫_{-1}^{1} h(x) w(x) / (1 − z x) dx` for `z` on the
//! unit circle.
//!
//! The pole `x = 1/z` approaches ±1 as λ → 0 or π. The rule therefore keeps
//! exact distances to both ends for every node and grades panels
//! geometrically toward each end until they are well below the distance from
//! the pole; the innermost panel is then smooth and absorbs the algebraic
//! endpoint weight through Gauss–Jacobi.

use hetero_distributions::quad::{jacobi, legendre};
use num_complex::Complex64;
use std::ops::Range;

const ORDER: usize = 16;
const LEVELS: usize = 30;

/// A point `z = e^{-iλ}` with `1 − z` and `1 + z` computed without cancellation.
#[derive(Debug, Clone, Copy)]
pub struct UnitPoint {
    pub lambda: f64,
    pub z: Complex64,
    /// `1 − z`
    pub u: Complex64,
    /// `1 + z`
    pub v: Complex64,
}

impl UnitPoint {
    pub fn new(lambda: f64) -> Self {
        let half = Complex64::new((0.5 * lambda).cos(), -(0.5 * lambda).sin());
        let s = (0.5 * lambda).sin();
        let c = (0.5 * lambda).cos();
        Self {
            lambda,
            z: Complex64::new(lambda.cos(), -lambda.sin()),
            u: half * Complex64::new(0.0, 2.0 * s),
            v: half * (2.0 * c),
        }
    }

    /// `1 − z x` from the node's exact distances to the ends.
    #[inline]
    pub fn denom(&self, n: &Node) -> Complex64 {
        if n.x >= 0.0 {
            n.x * self.u + n.dhi
        } else {
            self.v - self.z * n.dlo
        }
    }

    /// `∫_{-1}^{1} dx/(1 − zx)` and `∫_{-1}^{1} x dx/(1 − zx)`.
    pub fn linear_integrals(&self) -> (Complex64, Complex64) {
        let l0 = (self.v.ln() - self.u.ln()) / self.z;
        (l0, (l0 - 2.0) / self.z)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Node {
    pub x: f64,
    pub dlo: f64,
    pub dhi: f64,
    pub w: f64,
}

/// Composite rule on [-1, 1] with endpoint weights `(1−x)^a (1+x)^b` folded in.
#[derive(Debug, Clone)]
pub struct CauchyGrid {
    pub nodes: Vec<Node>,
    core: Range<usize>,
    hi_levels: Vec<Range<usize>>,
    hi_tails: Vec<Range<usize>>,
    lo_levels: Vec<Range<usize>>,
    lo_tails: Vec<Range<usize>>,
    deltas: Vec<f64>,
}

impl CauchyGrid {
    /// `wend`: width of the graded end regions; `core_width`: panel width in between.
    pub fn new(wend: f64, core_width: f64, a_hi: f64, b_lo: f64) -> Self {
        let gl = legendre(ORDER);
        let mut nodes = Vec::new();
        let factor = |dlo: f64, dhi: f64| -> f64 {
            let l = if b_lo == 0.0 { 1.0 } else { dlo.powf(b_lo) };
            let r = if a_hi == 0.0 { 1.0 } else { dhi.powf(a_hi) };
            l * r
        };
        let (c0, c1) = (-1.0 + wend, 1.0 - wend);
        let panels = ((c1 - c0) / core_width).ceil().max(1.0) as usize;
        let step = (c1 - c0) / panels as f64;
        for j in 0..panels {
            let c = c0 + (j as f64 + 0.5) * step;
            for &(t, w) in &gl {
                let x = c + 0.5 * step * t;
                nodes.push(Node {
                    x,
                    dlo: 1.0 + x,
                    dhi: 1.0 - x,
                    w: w * 0.5 * step * factor(1.0 + x, 1.0 - x),
                });
            }
        }
        let core = 0..nodes.len();
        let deltas: Vec<f64> = (0..=LEVELS)
            .map(|k| wend * 0.25f64.powi(k as i32))
            .collect();

        // distance `t` from the end; `hi` selects which end
        let build = |hi: bool, nodes: &mut Vec<Node>| -> (Vec<Range<usize>>, Vec<Range<usize>>) {
            let mk = |t: f64, w: f64| -> Node {
                if hi {
                    Node {
                        x: 1.0 - t,
                        dlo: 2.0 - t,
                        dhi: t,
                        w,
                    }
                } else {
                    Node {
                        x: -1.0 + t,
                        dlo: t,
                        dhi: 2.0 - t,
                        w,
                    }
                }
            };
            let (e_near, e_far) = if hi { (a_hi, b_lo) } else { (b_lo, a_hi) };
            let far = |t: f64| {
                if e_far == 0.0 {
                    1.0
                } else {
                    (2.0 - t).powf(e_far)
                }
            };
            let mut levels = Vec::new();
            for k in 0..LEVELS {
                let (a, b) = (deltas[k + 1], deltas[k]);
                let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
                let s = nodes.len();
                for &(t, w) in &gl {
                    let tt = c + h * t;
                    let near = if e_near == 0.0 { 1.0 } else { tt.powf(e_near) };
                    nodes.push(mk(tt, w * h * near * far(tt)));
                }
                levels.push(s..nodes.len());
            }
            let jac = jacobi(ORDER, 0.0, e_near);
            let mut tails = Vec::new();
            for k in 0..=LEVELS {
                let h = 0.5 * deltas[k];
                let s = nodes.len();
                for &(t, w) in &jac {
                    let tt = h * (1.0 + t);
                    nodes.push(mk(tt, w * h.powf(1.0 + e_near) * far(tt)));
                }
                tails.push(s..nodes.len());
            }
            (levels, tails)
        };
        let (hi_levels, hi_tails) = build(true, &mut nodes);
        let (lo_levels, lo_tails) = build(false, &mut nodes);
        Self {
            nodes,
            core,
            hi_levels,
            hi_tails,
            lo_levels,
            lo_tails,
            deltas,
        }
    }

    fn depth(&self, dist: f64) -> usize {
        let target = dist / 40.0;
        self.deltas
            .iter()
            .position(|&d| d <= target)
            .unwrap_or(LEVELS)
    }

    /// Node ranges forming the rule adapted to the pole of `pt`.
    pub fn ranges(&self, pt: &UnitPoint) -> Vec<Range<usize>> {
        let mut r = vec![self.core.clone()];
        let kh = self.depth(pt.u.norm());
        r.extend(self.hi_levels[..kh].iter().cloned());
        r.push(self.hi_tails[kh].clone());
        let kl = self.depth(pt.v.norm());
        r.extend(self.lo_levels[..kl].iter().cloned());
        r.push(self.lo_tails[kl].clone());
        r
    }

    /// `Σ w_j h_j / (1 − z x_j)` over the adapted rule, with `h` given per node.
    pub fn apply(&self, pt: &UnitPoint, h: &[f64]) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for r in self.ranges(pt) {
            for j in r {
                let n = &self.nodes[j];
                s += n.w * h[j] / pt.denom(n);
            }
        }
        s
    }
}

/// `∫ cos(nπx)/(1−zx)` and `∫ sin(nπx)/(1−zx)` for n = 0..=q, from which the
/// regular part `N₁(z) = E₁[1/(1−zφ)]` of any order-q Fourier density follows.
#[derive(Debug, Clone)]
pub struct FourierCauchy {
    grid: CauchyGrid,
    q: usize,
    /// `cos(nπx_j) − (−1)^n`, node-major
    cosv: Vec<f64>,
    sinv: Vec<f64>,
}

impl FourierCauchy {
    pub fn new(q: usize) -> Self {
        let width = (1.2 / (q.max(1) as f64)).min(0.125);
        let grid = CauchyGrid::new(width, width, 0.0, 0.0);
        let mut cosv = Vec::with_capacity(grid.nodes.len() * (q + 1));
        let mut sinv = Vec::with_capacity(grid.nodes.len() * (q + 1));
        for n in &grid.nodes {
            for k in 0..=q {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let kp = k as f64 * std::f64::consts::PI;
                // angles from the nearer end keep small offsets exact
                let (c, s) = if n.x >= 0.0 {
                    let a = kp * n.dhi;
                    (sign * a.cos() - sign, -sign * a.sin())
                } else {
                    let a = kp * n.dlo;
                    (sign * a.cos() - sign, sign * a.sin())
                };
                cosv.push(c);
                sinv.push(s);
            }
        }
        Self {
            grid,
            q,
            cosv,
            sinv,
        }
    }

    pub fn order(&self) -> usize {
        self.q
    }

    /// `(C_n, S_n)` for n = 0..=q.
    pub fn basis(&self, pt: &UnitPoint) -> (Vec<Complex64>, Vec<Complex64>) {
        let q1 = self.q + 1;
        let mut c = vec![Complex64::new(0.0, 0.0); q1];
        let mut s = vec![Complex64::new(0.0, 0.0); q1];
        for r in self.grid.ranges(pt) {
            for j in r {
                let n = &self.grid.nodes[j];
                let k = n.w / pt.denom(n);
                let base = j * q1;
                for m in 0..q1 {
                    c[m] += k * self.cosv[base + m];
                    s[m] += k * self.sinv[base + m];
                }
            }
        }
        let (l0, _) = pt.linear_integrals();
        for (m, cm) in c.iter_mut().enumerate() {
            *cm += if m % 2 == 0 { l0 } else { -l0 };
        }
        (c, s)
    }

    /// `N₁(z)` for coefficient vectors of length ≤ q.
    pub fn n1(&self, pt: &UnitPoint, a: &[f64], b: &[f64]) -> Complex64 {
        let (c, s) = self.basis(pt);
        let mut v = 0.5 * c[0];
        for (n, (&an, &bn)) in a.iter().zip(b).enumerate() {
            v += an * c[n + 1] + bn * s[n + 1];
        }
        v
    }
}
