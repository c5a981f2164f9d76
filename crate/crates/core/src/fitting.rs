//! Ordinary least-squares fitting of log-log data and the fit report type
//! shared by the decay, scaling and hypothesis checks.

use serde::Serialize;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AbscissaKind {
    /// ln t on the x axis (decay-in-time fits).
    LogTime,
    /// j ln 2 on the x axis (dyadic-scaling fits).
    ScaleLn2,
    /// ln r on the x axis (hypothesis-exponent fits).
    LogArgument,
}

/// Least-squares line through (x_i, y_i) with per-point residuals and a
/// confidence half-width for the slope (two standard errors).
#[derive(Debug, Clone, Serialize)]
pub struct LinearFit {
    pub abscissa: AbscissaKind,
    pub slope: f64,
    pub intercept: f64,
    pub residuals: Vec<f64>,
    pub residual_rms: f64,
    pub slope_half_width: f64,
}

/// Unweighted OLS. Requires at least `min_points` samples.
pub fn ols(abscissa: AbscissaKind, x: &[f64], y: &[f64], min_points: usize) -> Result<LinearFit> {
    if x.len() != y.len() {
        return Err(Error::InvalidParameter("x/y length mismatch in fit".into()));
    }
    let n = x.len();
    if n < min_points.max(2) {
        return Err(Error::InvalidParameter(format!(
            "fit needs at least {} points, got {n}",
            min_points.max(2)
        )));
    }
    let nf = n as f64;
    let mean_x = x.iter().sum::<f64>() / nf;
    let mean_y = y.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for i in 0..n {
        let dx = x[i] - mean_x;
        sxx += dx * dx;
        sxy += dx * (y[i] - mean_y);
    }
    if sxx == 0.0 {
        return Err(Error::InvalidParameter("degenerate abscissa in fit".into()));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residuals: Vec<f64> = (0..n).map(|i| y[i] - (intercept + slope * x[i])).collect();
    let ss_res: f64 = residuals.iter().map(|r| r * r).sum();
    let residual_rms = (ss_res / nf).sqrt();
    let slope_half_width = if n > 2 {
        2.0 * (ss_res / (nf - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok(LinearFit {
        abscissa,
        slope,
        intercept,
        residuals,
        residual_rms,
        slope_half_width,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 - 0.5 * v).collect();
        let fit = ols(AbscissaKind::LogTime, &x, &y, 6).unwrap();
        assert!((fit.slope + 0.5).abs() < 1e-14);
        assert!((fit.intercept - 3.0).abs() < 1e-14);
        assert!(fit.residual_rms < 1e-14);
        assert!(fit.slope_half_width < 1e-13);
    }

    #[test]
    fn rejects_too_few_points() {
        assert!(ols(AbscissaKind::LogTime, &[1.0, 2.0], &[1.0, 2.0], 6).is_err());
    }

    #[test]
    fn noise_widens_band() {
        let x: Vec<f64> = (0..20).map(|i| i as f64 / 2.0).collect();
        let y: Vec<f64> = x
            .iter()
            .enumerate()
            .map(|(i, v)| 2.0 * v + if i % 2 == 0 { 0.1 } else { -0.1 })
            .collect();
        let fit = ols(AbscissaKind::ScaleLn2, &x, &y, 6).unwrap();
        assert!((fit.slope - 2.0).abs() < 0.02);
        assert!(fit.slope_half_width > 0.0);
        assert!(fit.residual_rms > 0.05);
    }
}
