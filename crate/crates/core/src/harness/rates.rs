//! Least-squares convergence rates on log-log data.

use crate::error::{Result, WsmError};

#[derive(Clone, Debug, PartialEq)]
pub struct RateFit {
    pub metric: String,
    pub pairs: Vec<(f64, f64)>,
    /// Slope of `log e` against `log h` over the last three pairs.
    pub slope: f64,
    pub r2: f64,
}

/// Fits `log e ≈ a + slope·log h` on the final three `(h, e)` pairs.
pub fn fit_rate(metric: &str, pairs: &[(f64, f64)]) -> Result<RateFit> {
    if pairs.len() < 3 {
        return Err(WsmError::InvalidRateData(format!("{metric}: need at least 3 points, got {}", pairs.len())));
    }
    for w in pairs.windows(2) {
        if !(w[1].0 < w[0].0) {
            return Err(WsmError::InvalidRateData(format!("{metric}: h must be strictly decreasing")));
        }
    }
    if let Some(p) = pairs.iter().find(|p| !(p.0 > 0.0 && p.1 > 0.0 && p.0.is_finite() && p.1.is_finite())) {
        return Err(WsmError::InvalidRateData(format!("{metric}: nonpositive or non-finite value {p:?}")));
    }
    let tail = &pairs[pairs.len() - 3..];
    let xs: Vec<f64> = tail.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|p| p.1.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Ok(RateFit { metric: metric.to_string(), pairs: pairs.to_vec(), slope, r2 })
}
