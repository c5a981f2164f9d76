//! The dyadic window R* and the smooth bump primitive it is built from.
//!
//! R* is an even C^infinity function supported on the annulus
//! `C0 = { 1/2 <= |tau| <= 4 }` with `sum_j R*(4^{-j} tau) = 1` for every
//! nonzero tau. The partition identity holds by construction: a raw window
//! w is normalized by the (at most two-term) sum of its own dyadic dilates.

use serde::{Deserialize, Serialize};

/// h(x) = e^{-1/x} for x > 0, else 0; the C^infinity glue function.
fn glue(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-1.0 / x).exp()
    }
}

/// Smooth step: 0 for x <= 0, 1 for x >= 1, C^infinity in between.
pub fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let a = glue(x);
    a / (a + glue(1.0 - x))
}

/// Steepness configuration of the raw window. The defaults produce the
/// annulus C0 = [1/2, 4] with transition zones [1/2, 1] and [2, 4].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WindowConfig {
    /// Inner edge of the support.
    pub inner: f64,
    /// End of the rising transition.
    pub inner_top: f64,
    /// Start of the falling transition.
    pub outer_top: f64,
    /// Outer edge of the support.
    pub outer: f64,
}

impl Default for WindowConfig {
    fn default() -> Self {
        WindowConfig { inner: 0.5, inner_top: 1.0, outer_top: 2.0, outer: 4.0 }
    }
}

/// The normalized dyadic window R*.
#[derive(Debug, Clone)]
pub struct DyadicWindow {
    config: WindowConfig,
}

impl DyadicWindow {
    pub fn new(config: WindowConfig) -> Self {
        DyadicWindow { config }
    }

    /// Raw (unnormalized) window w(tau), supported on [inner, outer] in |tau|.
    fn raw(&self, tau: f64) -> f64 {
        let t = tau.abs();
        let c = &self.config;
        smooth_step((t - c.inner) / (c.inner_top - c.inner))
            * smooth_step((c.outer - t) / (c.outer - c.outer_top))
    }

    /// R*(tau) = w(tau) / sum_j w(4^{-j} tau). The normalizing sum has at
    /// most two nonzero terms since adjacent scales differ by a factor 4.
    pub fn eval(&self, tau: f64) -> f64 {
        let t = tau.abs();
        if t <= self.config.inner || t >= self.config.outer {
            return 0.0;
        }
        let num = self.raw(tau);
        if num == 0.0 {
            return 0.0;
        }
        // scales j with 4^{-j} t inside the support
        let j_lo = (t / self.config.outer).log2() / 2.0;
        let j_hi = (t / self.config.inner).log2() / 2.0;
        let mut denom = 0.0;
        let mut j = j_lo.ceil() as i32 - 1;
        while (j as f64) <= j_hi + 1.0 {
            denom += self.raw(4f64.powi(-j) * t);
            j += 1;
        }
        num / denom
    }

    /// Window evaluated at the dyadic scale j: R*(4^{-j} tau).
    pub fn eval_at_scale(&self, j: i32, tau: f64) -> f64 {
        self.eval(scale_factor(-j) * tau)
    }

    /// Support of mode scaling: |tau| range where R* is nonzero.
    pub fn support(&self) -> (f64, f64) {
        (self.config.inner, self.config.outer)
    }
}

impl Default for DyadicWindow {
    fn default() -> Self {
        DyadicWindow::new(WindowConfig::default())
    }
}

/// 4^j as f64, exact for the scales used here.
pub fn scale_factor(j: i32) -> f64 {
    4f64.powi(j)
}

/// Smooth bump Q on a neighborhood of 1 with Q(1) = 1 and compact support
/// in [lo, hi] (0 outside); built from the same smooth-step primitive.
#[derive(Debug, Clone, Copy)]
pub struct Bump {
    pub lo: f64,
    pub hi: f64,
}

impl Default for Bump {
    fn default() -> Self {
        // the neighborhood D0 = [0.7, 1.3] of 1; 0 is outside
        Bump { lo: 0.7, hi: 1.3 }
    }
}

impl Bump {
    pub fn eval(&self, x: f64) -> f64 {
        smooth_step((x - self.lo) / (1.0 - self.lo)) * smooth_step((self.hi - x) / (self.hi - 1.0))
    }
}
