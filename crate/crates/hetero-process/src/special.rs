//! Riemann zeta on the real line and the Gauss hypergeometric function for
//! complex argument.

use crate::error::{ProcessError, Result};
use num_complex::Complex64;
use statrs::function::gamma::gamma;
use std::f64::consts::PI;

/// `1/Γ(x)`, zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

/// Dirichlet eta by Borwein's accelerated alternating series (n = 40).
fn eta(s: f64) -> f64 {
    const N: usize = 40;
    let mut d = [0.0f64; N + 1];
    let nf = N as f64;
    let mut term = 1.0 / nf;
    let mut acc = term;
    d[0] = nf * acc;
    for i in 1..=N {
        let fi = i as f64;
        term *= (nf + fi - 1.0) * 4.0 * (nf - fi + 1.0) / ((2.0 * fi - 1.0) * (2.0 * fi));
        acc += term;
        d[i] = nf * acc;
    }
    let mut sum = 0.0;
    for k in 0..N {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (d[k] - d[N]) / (k as f64 + 1.0).powf(s);
    }
    -sum / d[N]
}

/// Riemann `ζ(s)` for real `s ≠ 1`.
pub fn zeta(s: f64) -> f64 {
    if s == 0.0 {
        return -0.5;
    }
    if s < 0.0 && s == s.round() && (s as i64) % 2 == 0 {
        return 0.0;
    }
    if s >= 0.5 {
        if s > 40.0 {
            return 1.0 + 2f64.powf(-s) + 3f64.powf(-s);
        }
        return eta(s) / (1.0 - 2f64.powf(1.0 - s));
    }
    // functional equation, ζ(1-s) with 1-s > 1/2
    let t = 1.0 - s;
    2f64.powf(s) * PI.powf(s - 1.0) * (0.5 * PI * s).sin() * gamma(t) * zeta(t)
}

const SERIES_TERMS: usize = 2000;

/// Gauss series; `None` if it has not converged.
fn series(a: f64, b: f64, c: f64, z: Complex64) -> Option<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..SERIES_TERMS {
        let nf = n as f64;
        term *= z * ((a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            return Some(sum);
        }
        if term.norm() == 0.0 {
            return Some(sum);
        }
    }
    None
}

fn near_integer(x: f64) -> bool {
    (x - x.round()).abs() < 1e-6
}

/// Connection formula around `z = 1` for non-integer `c − a − b`.
fn around_one(a: f64, b: f64, c: f64, z: Complex64) -> Option<Complex64> {
    let s = c - a - b;
    let w = Complex64::new(1.0, 0.0) - z;
    let g = gamma(c);
    let k1 = g * gamma(s) * rgamma(c - a) * rgamma(c - b);
    let k2 = g * gamma(-s) * rgamma(a) * rgamma(b);
    let f1 = if k1 == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        series(a, b, 1.0 - s, w)?
    };
    let f2 = if k2 == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        series(c - a, c - b, 1.0 + s, w)?
    };
    Some(k1 * f1 + k2 * w.powf(s) * f2)
}

/// Taylor coefficients of the solution of the hypergeometric equation about
/// `z0`, given `F(z0)` and `F'(z0)`; returns `(F, F')` at `z0 + h`.
fn taylor_step(
    a: f64,
    b: f64,
    c: f64,
    z0: Complex64,
    f: Complex64,
    fp: Complex64,
    h: Complex64,
) -> (Complex64, Complex64) {
    let p0 = z0 * (Complex64::new(1.0, 0.0) - z0);
    let p1 = Complex64::new(1.0, 0.0) - 2.0 * z0;
    let q0 = c - (a + b + 1.0) * z0;
    let q1 = -(a + b + 1.0);
    let ab = a * b;
    let (mut fm1, mut f0) = (f, fp);
    let mut val = f + fp * h;
    let mut der = fp;
    let mut hp = h;
    let mut hk = h;
    for n in 0..400 {
        let nf = n as f64;
        // coefficients c_n = fm1, c_{n+1} = f0
        let next = -((p1 * nf + q0) * (nf + 1.0) * f0 + (-nf * (nf - 1.0) + q1 * nf - ab) * fm1)
            / (p0 * (nf + 2.0) * (nf + 1.0));
        hk *= h;
        let tv = next * hk;
        let td = next * (nf + 2.0) * hp;
        hp *= h;
        val += tv;
        der += td;
        fm1 = f0;
        f0 = next;
        if n > 4 && tv.norm() <= 1e-18 * val.norm() && td.norm() <= 1e-18 * der.norm().max(1e-300) {
            break;
        }
    }
    (val, der)
}

/// Integrate the hypergeometric ODE from the series disk to `z` along a ray.
fn continue_ode(a: f64, b: f64, c: f64, z: Complex64) -> Result<Complex64> {
    let dir = z / z.norm();
    let mut cur = dir * 0.4;
    let mut f = series(a, b, c, cur).ok_or_else(|| ProcessError::Numerical("2F1 start".into()))?;
    let fp = series(a + 1.0, b + 1.0, c + 1.0, cur)
        .ok_or_else(|| ProcessError::Numerical("2F1 start".into()))?
        * (a * b / c);
    let mut fp = fp;
    let mut steps = 0;
    while (z - cur).norm() > 0.0 {
        let r = cur.norm().min((Complex64::new(1.0, 0.0) - cur).norm());
        let remaining = z - cur;
        let h = if remaining.norm() <= 0.5 * r {
            remaining
        } else {
            remaining / remaining.norm() * (0.5 * r)
        };
        let (nf, nfp) = taylor_step(a, b, c, cur, f, fp, h);
        f = nf;
        fp = nfp;
        cur += h;
        steps += 1;
        if steps > 10_000 || r < 1e-8 {
            return Err(ProcessError::Numerical(format!(
                "2F1 continuation stalled near z = {cur}"
            )));
        }
    }
    Ok(f)
}

/// `₂F₁(a, b; c; z)` for real parameters and complex `z` off the cut `[1, ∞)`.
///
/// Gauss series near the origin, Pfaff's transformation when `z/(z−1)` is
/// small, the connection formula near `z = 1`, and Taylor continuation of
/// the hypergeometric equation elsewhere.
pub fn hypergeometric_2f1(a: f64, b: f64, c: f64, z: Complex64) -> Result<Complex64> {
    if c <= 0.0 && c == c.round() {
        return Err(ProcessError::InvalidArgument(format!(
            "c = {c} is a non-positive integer"
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    if z.norm() == 0.0 {
        return Ok(one);
    }
    if z.im == 0.0 && z.re >= 1.0 {
        if z.re == 1.0 && c - a - b > 0.0 {
            return Ok(Complex64::new(
                gamma(c) * gamma(c - a - b) * rgamma(c - a) * rgamma(c - b),
                0.0,
            ));
        }
        return Err(ProcessError::Numerical(format!(
            "z = {} lies on the branch cut",
            z.re
        )));
    }
    if z.norm() <= 0.6 {
        if let Some(v) = series(a, b, c, z) {
            return Ok(v);
        }
    }
    let zp = z / (z - one);
    if zp.norm() <= 0.6 {
        if let Some(v) = series(a, c - b, c, zp) {
            return Ok((one - z).powf(-a) * v);
        }
    }
    if (one - z).norm() <= 0.6 && !near_integer(c - a - b) {
        if let Some(v) = around_one(a, b, c, z) {
            return Ok(v);
        }
    }
    // a ray through 1 would cross the singular point; go around it
    if z.re > 1.0 && z.im.abs() < 0.5 {
        let detour = Complex64::new(1.0, if z.im >= 0.0 { 0.7 } else { -0.7 });
        return continue_via(a, b, c, detour, z);
    }
    continue_ode(a, b, c, z)
}

fn continue_via(a: f64, b: f64, c: f64, mid: Complex64, z: Complex64) -> Result<Complex64> {
    let f = continue_ode(a, b, c, mid)?;
    let fp = continue_ode(a + 1.0, b + 1.0, c + 1.0, mid)? * (a * b / c);
    let (mut f, mut fp, mut cur) = (f, fp, mid);
    let one = Complex64::new(1.0, 0.0);
    while (z - cur).norm() > 0.0 {
        let r = cur.norm().min((one - cur).norm());
        let rem = z - cur;
        let h = if rem.norm() <= 0.5 * r {
            rem
        } else {
            rem / rem.norm() * (0.5 * r)
        };
        let (nf, nfp) = taylor_step(a, b, c, cur, f, fp, h);
        f = nf;
        fp = nfp;
        cur += h;
    }
    Ok(f)
}
