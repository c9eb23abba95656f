//! Power-series products, inverses and autocorrelations through the FFT.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

fn fft_real(x: &[f64], n: usize, planner: &mut FftPlanner<f64>) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    buf.resize(n, Complex64::new(0.0, 0.0));
    planner.plan_fft_forward(n).process(&mut buf);
    buf
}

/// First `len` coefficients of the product of two power series.
pub fn multiply(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let (a, b) = (&a[..a.len().min(len)], &b[..b.len().min(len)]);
    if a.is_empty() || b.is_empty() {
        return vec![0.0; len];
    }
    if a.len().min(b.len()) <= 32 {
        let mut out = vec![0.0; len];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate().take(len - i) {
                out[i + j] += x * y;
            }
        }
        return out;
    }
    let n = (a.len() + b.len()).next_power_of_two();
    let mut planner = FftPlanner::new();
    let fa = fft_real(a, n, &mut planner);
    let mut fb = fft_real(b, n, &mut planner);
    for (y, x) in fb.iter_mut().zip(&fa) {
        *y *= x;
    }
    planner.plan_fft_inverse(n).process(&mut fb);
    let mut out: Vec<f64> = fb.iter().take(len).map(|v| v.re / n as f64).collect();
    out.resize(len, 0.0);
    out
}

/// First `len` coefficients of `1/q(z)` by Newton iteration, `q[0] ≠ 0`.
pub fn inverse(q: &[f64], len: usize) -> Vec<f64> {
    let mut g = vec![1.0 / q[0]];
    let mut m = 1;
    while m < len {
        let m2 = (2 * m).min(len);
        let mut e = multiply(&q[..q.len().min(m2)], &g, m2);
        for v in e.iter_mut() {
            *v = -*v;
        }
        e[0] += 2.0;
        g = multiply(&g, &e, m2);
        m = m2;
    }
    g.truncate(len);
    g
}

/// `Σ_k x_k x_{k+h}` for h = 0..=lmax.
pub fn autocorrelation(x: &[f64], lmax: usize) -> Vec<f64> {
    if (x.len() as f64) * (lmax as f64 + 1.0) <= 2e8 {
        return (0..=lmax)
            .map(|h| {
                if h < x.len() {
                    x[..x.len() - h]
                        .iter()
                        .zip(&x[h..])
                        .map(|(a, b)| a * b)
                        .sum()
                } else {
                    0.0
                }
            })
            .collect();
    }
    let n = (2 * x.len()).next_power_of_two();
    let mut planner = FftPlanner::new();
    let mut f = fft_real(x, n, &mut planner);
    for v in f.iter_mut() {
        *v = Complex64::new(v.norm_sqr(), 0.0);
    }
    planner.plan_fft_inverse(n).process(&mut f);
    f.iter().take(lmax + 1).map(|v| v.re / n as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_one_minus_cz() {
        let g = inverse(&[1.0, -0.6], 200);
        for (k, v) in g.iter().enumerate() {
            assert!((v - 0.6f64.powi(k as i32)).abs() < 1e-14);
        }
    }

    #[test]
    fn fft_product_matches_direct() {
        let a: Vec<f64> = (0..300).map(|i| (i as f64 * 0.37).sin()).collect();
        let b: Vec<f64> = (0..250).map(|i| 1.0 / (1.0 + i as f64)).collect();
        let fast = multiply(&a, &b, 400);
        for k in [0usize, 17, 299, 399] {
            let direct: f64 = (0..=k)
                .filter(|&i| i < a.len() && k - i < b.len())
                .map(|i| a[i] * b[k - i])
                .sum();
            assert!((fast[k] - direct).abs() < 1e-12);
        }
    }
}
