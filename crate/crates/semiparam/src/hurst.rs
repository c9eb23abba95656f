//! Classical rescaled-range analysis.

use crate::error::{Result, SemiparamError};

/// Shortest series accepted by [`rs_hurst`].
pub const MIN_LENGTH: usize = 64;
/// Exponents at or above this are reported as trend-dominated.
pub const TREND_THRESHOLD: f64 = 0.95;

#[derive(Debug, Clone, PartialEq)]
pub struct HurstResult {
    pub h: f64,
    /// `H − ½`.
    pub d_hurst: f64,
    pub block_sizes: Vec<usize>,
    /// Mean R/S over the blocks of each size.
    pub rs: Vec<f64>,
    /// Blocks left out because their standard deviation is zero.
    pub skipped: usize,
    pub trend_dominated: bool,
}

/// `points` geometrically spaced block sizes from 16 to `T/4`, rounded and deduplicated.
pub fn default_blocks(t: usize, points: usize) -> Vec<usize> {
    let (lo, hi) = (16.0f64, (t / 4) as f64);
    let mut v: Vec<usize> = (0..points)
        .map(|i| {
            let f = if points > 1 {
                i as f64 / (points - 1) as f64
            } else {
                0.0
            };
            (lo * (hi / lo).powf(f)).round() as usize
        })
        .collect();
    v.dedup();
    v
}

/// `R/S` of one block, `None` when its standard deviation is zero.
fn block_rs(x: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let (mut cum, mut lo, mut hi, mut ss) = (0.0, 0.0f64, 0.0f64, 0.0);
    for v in x {
        let e = v - mean;
        cum += e;
        lo = lo.min(cum);
        hi = hi.max(cum);
        ss += e * e;
    }
    let s = (ss / n).sqrt();
    (s > 0.0).then(|| (hi - lo) / s)
}

/// Slope of `ln(R/S)` on `ln n` across non-overlapping blocks of each size.
/// `blocks = None` uses eight sizes from [`default_blocks`].
pub fn rs_hurst(series: &[f64], blocks: Option<&[usize]>) -> Result<HurstResult> {
    let t = series.len();
    if t < MIN_LENGTH {
        return Err(SemiparamError::TooShort(format!(
            "R/S needs T >= {MIN_LENGTH}, got {t}"
        )));
    }
    let sizes = match blocks {
        Some(b) => b.to_vec(),
        None => default_blocks(t, 8),
    };
    if let Some(n) = sizes.iter().find(|&&n| n < 2 || n > t) {
        return Err(SemiparamError::InvalidArgument(format!(
            "block size {n} outside [2, {t}]"
        )));
    }
    let mut skipped = 0;
    let mut used = Vec::new();
    let mut rs = Vec::new();
    for &n in &sizes {
        let vals: Vec<f64> = series.chunks_exact(n).filter_map(block_rs).collect();
        skipped += t / n - vals.len();
        if !vals.is_empty() {
            used.push(n);
            rs.push(vals.iter().sum::<f64>() / vals.len() as f64);
        }
    }
    if used.len() < 2 {
        return Err(SemiparamError::Degenerate(
            "fewer than two block sizes with non-constant blocks".into(),
        ));
    }
    let x: Vec<f64> = used.iter().map(|&n| (n as f64).ln()).collect();
    let y: Vec<f64> = rs.iter().map(|v| v.ln()).collect();
    let k = x.len() as f64;
    let (xm, ym) = (x.iter().sum::<f64>() / k, y.iter().sum::<f64>() / k);
    let sxx: f64 = x.iter().map(|v| (v - xm).powi(2)).sum();
    let h = x
        .iter()
        .zip(&y)
        .map(|(a, b)| (a - xm) * (b - ym))
        .sum::<f64>()
        / sxx;
    Ok(HurstResult {
        h,
        d_hurst: h - 0.5,
        block_sizes: used,
        rs,
        skipped,
        trend_dominated: h >= TREND_THRESHOLD,
    })
}
