use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares line through `(ln n, ln value)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
}

/// Ordinary least squares on the log-log points. The slope error is
/// `sqrt(SSR / (k − 2) / Sxx)`.
pub fn fit_slope(points: &[(usize, f64)]) -> Result<SlopeFit> {
    if points.len() < 3 {
        return Err(Error::Data(format!("slope fit needs at least 3 points, got {}", points.len())));
    }
    for (i, &(n, v)) in points.iter().enumerate() {
        if n == 0 || !(v > 0.0) || !v.is_finite() {
            return Err(Error::Data(format!("point {i} (n = {n}, value = {v}) cannot be log-transformed")));
        }
    }
    let k = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, v)| v.ln()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Data("all points share the same n".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let slope_stderr = (ssr / (k - 2.0) / sxx).sqrt();
    Ok(SlopeFit { slope, intercept, slope_stderr })
}
