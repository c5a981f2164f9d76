//! Group-level parameters of the Heisenberg group H^n.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Dimensional constants of H^n = C^n x R.
///
/// `N = 2n + 2` is the homogeneous dimension: Haar measure scales by `a^N`
/// under the anisotropic dilations `delta_a(z, s) = (a z, a^2 s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupParams {
    /// Complex dimension n >= 1.
    pub n: u32,
    /// Homogeneous dimension N = 2n + 2.
    pub homogeneous_dim: u32,
    /// Surface measure of the unit sphere in R^{2n}; reduces the dz integral
    /// to a radial one.
    pub sphere_measure: f64,
}

impl GroupParams {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("group dimension n must be >= 1".into()));
        }
        Ok(GroupParams {
            n,
            homogeneous_dim: 2 * n + 2,
            sphere_measure: sphere_surface_measure(2 * n),
        })
    }

    /// Eigenvalue b_m(lambda) = 4 (2m + n) |lambda| of the sub-Laplacian on
    /// the (m, lambda) spherical component.
    pub fn eigenvalue(&self, m: u32, lambda: f64) -> f64 {
        4.0 * (2.0 * m as f64 + self.n as f64) * lambda.abs()
    }

    /// 2m + n as f64; the mode weight that recurs in every formula.
    pub fn mode_weight(&self, m: u32) -> f64 {
        2.0 * m as f64 + self.n as f64
    }

    /// Normalization constant 2^{n-1} / pi^{n+1} of the inversion formula.
    pub fn inversion_constant(&self) -> f64 {
        2f64.powi(self.n as i32 - 1) / std::f64::consts::PI.powi(self.n as i32 + 1)
    }

    /// binom(m + n - 1, m), the Plancherel weight of mode m.
    pub fn mode_multiplicity(&self, m: u32) -> f64 {
        binomial(m + self.n - 1, m)
    }
}

/// Surface measure of the unit sphere S^{d-1} in R^d: 2 pi^{d/2} / Gamma(d/2).
/// Only even d = 2n occurs here, so Gamma(n) = (n-1)!.
fn sphere_surface_measure(d: u32) -> f64 {
    debug_assert!(d % 2 == 0);
    let n = d / 2;
    let mut gamma = 1.0;
    for k in 1..n {
        gamma *= k as f64;
    }
    2.0 * std::f64::consts::PI.powi(n as i32) / gamma
}

/// Exact binomial coefficient in f64 (arguments stay small here).
pub fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k.min(n));
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}
