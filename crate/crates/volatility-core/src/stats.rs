use crate::error::{Result, VolError};
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

#[derive(Debug, Clone, PartialEq)]
pub struct SampleMoments {
    pub autocov: Vec<f64>,
    pub acf: Vec<f64>,
    pub skewness: f64,
    pub excess_kurtosis: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normality {
    pub skewness: f64,
    pub excess_kurtosis: f64,
    /// Jarque–Bera statistic `T/6 (S² + K²/4)`.
    pub jarque_bera: f64,
}

fn check_lag(t: usize, l: usize) -> Result<()> {
    if l >= t {
        return Err(VolError::InvalidArgument(format!(
            "max lag {l} must be below the length {t}"
        )));
    }
    Ok(())
}

fn centered(x: &[f64]) -> Vec<f64> {
    let m = x.iter().sum::<f64>() / x.len() as f64;
    x.iter().map(|v| v - m).collect()
}

/// `γ̂(h) = (1/T) Σ_{i<T-h} (ω_i − ω̄)(ω_{i+h} − ω̄)` for h = 0..=L.
pub fn sample_autocov(x: &[f64], l: usize) -> Result<Vec<f64>> {
    check_lag(x.len(), l)?;
    let c = centered(x);
    let t = x.len() as f64;
    Ok((0..=l)
        .map(|h| {
            c[..c.len() - h]
                .iter()
                .zip(&c[h..])
                .map(|(a, b)| a * b)
                .sum::<f64>()
                / t
        })
        .collect())
}

/// Same as [`sample_autocov`], through a zero-padded FFT.
pub fn sample_autocov_fft(x: &[f64], l: usize) -> Result<Vec<f64>> {
    check_lag(x.len(), l)?;
    let c = centered(x);
    let n = (2 * c.len()).next_power_of_two();
    let mut buf: Vec<Complex64> = c.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    buf.resize(n, Complex64::new(0.0, 0.0));
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);
    for v in buf.iter_mut() {
        *v = Complex64::new(v.norm_sqr(), 0.0);
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / (n as f64 * x.len() as f64);
    Ok(buf[..=l].iter().map(|v| v.re * scale).collect())
}

/// `ρ̂(h) = γ̂(h)/γ̂(0)`.
pub fn sample_acf(x: &[f64], l: usize) -> Result<Vec<f64>> {
    let g = if x.len() > 4096 && l > 64 {
        sample_autocov_fft(x, l)?
    } else {
        sample_autocov(x, l)?
    };
    if g[0] <= 0.0 {
        return Err(VolError::Degenerate("zero sample variance".into()));
    }
    Ok(g.iter().map(|v| v / g[0]).collect())
}

/// Sample skewness, excess kurtosis and the Jarque–Bera statistic.
pub fn normality_diagnostics(x: &[f64]) -> Result<Normality> {
    if x.len() < 8 {
        return Err(VolError::InvalidArgument(format!(
            "need at least 8 observations, got {}",
            x.len()
        )));
    }
    let c = centered(x);
    let t = x.len() as f64;
    let m2 = c.iter().map(|v| v * v).sum::<f64>() / t;
    if m2 == 0.0 {
        return Err(VolError::Degenerate("zero variance".into()));
    }
    let m3 = c.iter().map(|v| v.powi(3)).sum::<f64>() / t;
    let m4 = c.iter().map(|v| v.powi(4)).sum::<f64>() / t;
    let skewness = m3 / m2.powf(1.5);
    let excess_kurtosis = m4 / (m2 * m2) - 3.0;
    let jarque_bera = t / 6.0 * (skewness * skewness + 0.25 * excess_kurtosis * excess_kurtosis);
    Ok(Normality {
        skewness,
        excess_kurtosis,
        jarque_bera,
    })
}

pub fn sample_moments(x: &[f64], l: usize) -> Result<SampleMoments> {
    let autocov = sample_autocov(x, l)?;
    let acf = sample_acf(x, l)?;
    let n = normality_diagnostics(x)?;
    Ok(SampleMoments {
        autocov,
        acf,
        skewness: n.skewness,
        excess_kurtosis: n.excess_kurtosis,
    })
}
