use crate::error::{Result, VolError};

/// One trading day of `(seconds within day, price)` observations.
#[derive(Debug, Clone, PartialEq)]
pub struct IntradayDay {
    pub date: String,
    pub obs: Vec<(u32, f64)>,
}

impl IntradayDay {
    pub fn new(date: impl Into<String>, obs: Vec<(u32, f64)>) -> Self {
        Self {
            date: date.into(),
            obs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntradaySeries {
    pub symbol: String,
    pub days: Vec<IntradayDay>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealizedDay {
    pub rv: f64,
    pub returns: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RVSeries {
    pub symbol: String,
    pub dates: Vec<String>,
    pub rv: Vec<f64>,
    pub n_obs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RejectedDay {
    pub date: String,
    pub reason: String,
}

/// Daily log realized volatility `ω_t = ½ ln rv_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogVolSeries {
    pub dates: Vec<String>,
    pub omega: Vec<f64>,
    pub mean_omega: f64,
}

impl LogVolSeries {
    pub fn from_omega(dates: Vec<String>, omega: Vec<f64>) -> Self {
        let mean_omega = if omega.is_empty() {
            0.0
        } else {
            omega.iter().sum::<f64>() / omega.len() as f64
        };
        Self {
            dates,
            omega,
            mean_omega,
        }
    }

    /// Series with dates `t0, t1, …`, for simulated paths.
    pub fn from_values(omega: Vec<f64>) -> Self {
        let dates = (0..omega.len()).map(|t| format!("t{t}")).collect();
        Self::from_omega(dates, omega)
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }
}

fn check_day(day: &IntradayDay) -> Result<()> {
    if day.obs.len() < 2 {
        return Err(VolError::DayRejected {
            date: day.date.clone(),
            reason: format!("{} observation(s), need at least 2", day.obs.len()),
        });
    }
    if let Some(&(_, p)) = day.obs.iter().find(|(_, p)| !(*p > 0.0) || !p.is_finite()) {
        return Err(VolError::NonPositivePrice {
            date: day.date.clone(),
            price: p,
        });
    }
    if day.obs.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(VolError::DayRejected {
            date: day.date.clone(),
            reason: "timestamps not strictly increasing".into(),
        });
    }
    Ok(())
}

fn realized_from_prices(prices: &[f64]) -> RealizedDay {
    let returns: Vec<f64> = prices.windows(2).map(|w| w[1].ln() - w[0].ln()).collect();
    let rv = returns.iter().map(|r| r * r).sum();
    RealizedDay { rv, returns }
}

/// Sum of squared log returns over the day.
pub fn compute_realized_variance(day: &IntradayDay) -> Result<RealizedDay> {
    check_day(day)?;
    let prices: Vec<f64> = day.obs.iter().map(|o| o.1).collect();
    Ok(realized_from_prices(&prices))
}

/// Realized variance from prices sampled at least `min_interval` seconds apart
/// (previous-tick; the first observation is always kept).
pub fn compute_realized_variance_sampled(
    day: &IntradayDay,
    min_interval: u32,
) -> Result<RealizedDay> {
    check_day(day)?;
    let mut prices = vec![day.obs[0].1];
    let mut last = day.obs[0].0;
    for &(t, p) in &day.obs[1..] {
        if t - last >= min_interval {
            prices.push(p);
            last = t;
        }
    }
    if prices.len() < 2 {
        return Err(VolError::DayRejected {
            date: day.date.clone(),
            reason: format!("fewer than 2 observations at a {min_interval}s sampling interval"),
        });
    }
    Ok(realized_from_prices(&prices))
}

/// Denominators of the standardized realized-variance statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBand {
    /// `√(⅔ Σ r⁴)`, scale of `σ̂² − σ²`.
    pub plain: f64,
    /// `√(⅔ Σ r⁴ / (Σ r²)²)`, scale of `ln σ̂² − ln σ²`.
    pub log: f64,
}

pub fn rv_error_band(returns: &[f64]) -> Result<ErrorBand> {
    if returns.is_empty() {
        return Err(VolError::InvalidArgument("no returns".into()));
    }
    let s2: f64 = returns.iter().map(|r| r * r).sum();
    let s4: f64 = returns.iter().map(|r| r.powi(4)).sum();
    if s2 == 0.0 {
        return Err(VolError::Degenerate(
            "all returns are zero; log band undefined".into(),
        ));
    }
    Ok(ErrorBand {
        plain: (2.0 / 3.0 * s4).sqrt(),
        log: (2.0 / 3.0 * s4 / (s2 * s2)).sqrt(),
    })
}

/// Realized variance per accepted day; rejected days are reported with a reason.
pub fn build_rv_series(
    series: &IntradaySeries,
    min_interval: Option<u32>,
) -> (RVSeries, Vec<RejectedDay>) {
    let mut out = RVSeries {
        symbol: series.symbol.clone(),
        dates: vec![],
        rv: vec![],
        n_obs: vec![],
    };
    let mut rejected = Vec::new();
    for day in &series.days {
        let r = match min_interval {
            Some(s) if s > 0 => compute_realized_variance_sampled(day, s),
            _ => compute_realized_variance(day),
        };
        match r {
            Ok(r) => {
                out.dates.push(day.date.clone());
                out.n_obs.push(r.returns.len() + 1);
                out.rv.push(r.rv);
            }
            Err(e) => rejected.push(RejectedDay {
                date: day.date.clone(),
                reason: e.to_string(),
            }),
        }
    }
    (out, rejected)
}

/// `ω_t = ½ ln rv_t`; errors on the first day with zero variance.
pub fn log_vol_series(rv: &RVSeries) -> Result<LogVolSeries> {
    let mut omega = Vec::with_capacity(rv.rv.len());
    for (date, &v) in rv.dates.iter().zip(&rv.rv) {
        if !(v > 0.0) {
            return Err(VolError::ZeroVariance(date.clone()));
        }
        omega.push(0.5 * v.ln());
    }
    Ok(LogVolSeries::from_omega(rv.dates.clone(), omega))
}
