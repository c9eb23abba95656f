use crate::coupling::Coupling;
use crate::density::{density_cdf, Density, ParametricDensity};
use crate::error::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Points in the CDF table.
pub const CDF_GRID: usize = 4097;
const END_POINTS: usize = 512;

/// CDF tabulated on a grid that is uniform in the middle and geometric
/// toward both ends of the support; inverted by linear interpolation,
/// which keeps the inverse monotone.
#[derive(Debug, Clone)]
pub struct TabulatedCdf {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
}

fn support(density: &Density) -> (f64, f64) {
    match density {
        Density::Singular(_) | Density::Parametric(ParametricDensity::BetaNegAlpha { .. }) => {
            (0.0, 1.0)
        }
        _ => (-1.0, 1.0),
    }
}

impl TabulatedCdf {
    pub fn new(density: &Density) -> Result<Self> {
        density.check_parameters()?;
        let (lo, hi) = support(density);
        let len = hi - lo;
        let mut x = Vec::with_capacity(CDF_GRID);
        // geometric offsets from 1e-12·len up to 0.02·len
        let (g0, g1) = (1e-12f64, 0.02f64);
        let ratio = (g1 / g0).powf(1.0 / (END_POINTS - 1) as f64);
        let offsets: Vec<f64> = (0..END_POINTS)
            .map(|i| g0 * ratio.powi(i as i32) * len)
            .collect();
        x.push(lo);
        x.extend(offsets.iter().map(|o| lo + o));
        let middle = CDF_GRID - 2 * END_POINTS - 2;
        let (m0, m1) = (lo + offsets[END_POINTS - 1], hi - offsets[END_POINTS - 1]);
        for i in 1..=middle {
            x.push(m0 + (m1 - m0) * i as f64 / (middle + 1) as f64);
        }
        x.extend(offsets.iter().rev().map(|o| hi - o));
        x.push(hi);
        debug_assert_eq!(x.len(), CDF_GRID);

        let mut f: Vec<f64> = x.iter().map(|&v| density_cdf(density, v)).collect();
        let mut run = 0.0f64;
        for v in f.iter_mut() {
            run = run.max(*v);
            *v = run;
        }
        let top = *f.last().unwrap();
        for v in f.iter_mut() {
            *v /= top;
        }
        Ok(Self { x, f })
    }

    pub fn cdf(&self, v: f64) -> f64 {
        interp(&self.x, &self.f, v)
    }

    pub fn quantile(&self, u: f64) -> f64 {
        interp(&self.f, &self.x, u.clamp(0.0, 1.0))
    }
}

fn interp(xs: &[f64], ys: &[f64], v: f64) -> f64 {
    if v <= xs[0] {
        return ys[0];
    }
    let n = xs.len();
    if v >= xs[n - 1] {
        return ys[n - 1];
    }
    let i = xs.partition_point(|&t| t <= v);
    let (x0, x1) = (xs[i - 1], xs[i]);
    if x1 == x0 {
        return ys[i];
    }
    ys[i - 1] + (ys[i] - ys[i - 1]) * (v - x0) / (x1 - x0)
}

/// Draws `n` i.i.d. pairs `(φᵢ, ψᵢ = g(φᵢ))`, reproducible from `seed`.
pub fn sample_phi_psi(
    density: &Density,
    coupling: &Coupling,
    n: usize,
    seed: u64,
) -> Result<Vec<(f64, f64)>> {
    coupling.check_parameters()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Density::PointMass { at } = density {
        density.check_parameters()?;
        return Ok(vec![(*at, coupling.g(*at)); n]);
    }
    let table = TabulatedCdf::new(density)?;
    Ok((0..n)
        .map(|_| {
            let phi = table.quantile(rng.random::<f64>());
            (phi, coupling.g(phi))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::FourierDensity;

    #[test]
    fn rational_pairs_are_exact() {
        let d = Density::mixture(0.5, vec![0.1], vec![0.0], 0.3).unwrap();
        for (phi, psi) in sample_phi_psi(&d, &Coupling::Rational, 1000, 7).unwrap() {
            assert_eq!(psi, -phi);
        }
    }

    #[test]
    fn reproducible() {
        let d = Density::Fourier(FourierDensity::uniform());
        let a = sample_phi_psi(&d, &Coupling::Rational, 50, 3).unwrap();
        let b = sample_phi_psi(&d, &Coupling::Rational, 50, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn table_is_monotone_with_grid_size() {
        let t = TabulatedCdf::new(&Density::stretched_beta(5.0, 0.75)).unwrap();
        assert_eq!(t.x.len(), CDF_GRID);
        assert!(t.x.windows(2).all(|w| w[1] > w[0]));
        assert!(t.f.windows(2).all(|w| w[1] >= w[0]));
    }
}
