//! Littlewood-Paley kernels phi_j, spectral projectors, the mode-truncation
//! error model, and discrete Besov norms.
//!
//! The kernel phi_j of R*(4^{-j} L) has coefficients
//! `c[m](lambda) = R*(4^{-j} (2m+n) |lambda|)`, so mode m contributes on
//! `|lambda| in 4^j [1/2, 4] / (2m+n)` and every mode contributes a
//! shrinking window: the m-sum is genuinely infinite and must be truncated
//! with a certified tail bound.

use num_complex::Complex64;

use crate::group::GroupParams;
use crate::quad::{panel_nodes, Kahan};
use crate::special::weighted_laguerre;
use crate::spherical::{eval_inverse, ModeCoefficients, SphericalCoefficients};
use crate::window::{scale_factor, DyadicWindow};
use crate::{Error, Result};

/// Truncation and quadrature settings for kernel construction.
#[derive(Debug, Clone, Copy)]
pub struct LPSettings {
    /// Gauss-Legendre panels per mode window half (16 nodes each).
    pub panels_per_mode: usize,
    /// Hard cap on the number of Laguerre modes retained.
    pub m_max: u32,
}

impl Default for LPSettings {
    fn default() -> Self {
        LPSettings { panels_per_mode: 4, m_max: 64 }
    }
}

/// A band-limited Littlewood-Paley kernel at dyadic scale j.
#[derive(Debug, Clone)]
pub struct LPKernel {
    pub j: i32,
    pub coefficients: SphericalCoefficients,
}

/// Per-mode sup-norm contribution bound at scale j = 0:
/// `2 (2^{n-1}/pi^{n+1}) J_n B_m (2m+n)^{-(n+1)}`, where
/// `J_n = int R*(x) x^n dx` and `B_m = sup_tau |L_m^{(n-1)} e^{-tau/2}|`.
fn mode_bound(m: u32, g: &GroupParams, j_n: f64) -> f64 {
    let w = g.mode_weight(m);
    2.0 * g.inversion_constant() * j_n * laguerre_sup(m, g.n) * w.powi(-(g.n as i32) - 1)
}

fn laguerre_sup(m: u32, n: u32) -> f64 {
    // value at tau = 0 is binomial(m+n-1, m); scan past the turning point
    let mut sup = weighted_laguerre(m, n, 0.0).abs();
    let hi = (8 * m + 4 * n) as f64;
    let pts = 240;
    for i in 0..pts {
        let tau = 1e-3 * (hi / 1e-3).powf(i as f64 / (pts - 1) as f64);
        sup = sup.max(weighted_laguerre(m, n, tau).abs());
    }
    sup
}

/// Calibrated constant K_n of the tail model
/// `sup-contribution of mode m <= K_n (2m+n)^{-2} 2^{Nj}`:
/// direct evaluation for m <= 32, safety factor 4.
pub fn calibrate_mode_constant(g: &GroupParams, window: &DyadicWindow) -> f64 {
    let (lo, hi) = window.support();
    let mut j_n = Kahan::default();
    for (x, w) in panel_nodes(lo, hi, 8) {
        j_n.add(w * window.eval(x) * x.powi(g.n as i32));
    }
    let j_n = j_n.value();
    let mut k_n = 0.0f64;
    for m in 0..=32 {
        k_n = k_n.max(mode_bound(m, g, j_n) * g.mode_weight(m).powi(2));
    }
    4.0 * k_n
}

/// Certified bound on the sup-norm mass of the discarded modes m > m_max
/// of phi_j, from `sum_{m>M} (2m+n)^{-2} <= 1/(2(2M+n))`.
pub fn truncation_tail_bound(k_n: f64, m_max: u32, g: &GroupParams, j: i32) -> f64 {
    k_n / (2.0 * g.mode_weight(m_max)) * scale_factor(j).powi(g.n as i32 + 1)
}

/// Smallest m_max with truncation_tail_bound below eps at scale 0, capped.
pub fn mode_cap(k_n: f64, eps: f64, g: &GroupParams, cap: u32) -> u32 {
    let needed = (k_n / (2.0 * eps) - g.n as f64) / 2.0;
    if !needed.is_finite() || needed <= 0.0 {
        return 1;
    }
    (needed.ceil() as u64).min(cap as u64) as u32
}

/// Per-mode lambda grid of phi_j: signed nodes covering
/// `|lambda| in 4^j [1/2, 4] / (2m+n)`, mirrored to negative lambda.
pub fn mode_grid(m: u32, j: i32, g: &GroupParams, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let scale = scale_factor(j) / g.mode_weight(m);
    let pos = panel_nodes(0.5 * scale, 4.0 * scale, panels);
    let mut nodes: Vec<f64> = pos.iter().rev().map(|&(x, _)| -x).collect();
    let mut weights: Vec<f64> = pos.iter().rev().map(|&(_, w)| w).collect();
    nodes.extend(pos.iter().map(|&(x, _)| x));
    weights.extend(pos.iter().map(|&(_, w)| w));
    (nodes, weights)
}

/// Builds the kernel phi_j with the coefficient rule
/// `c[m](lambda) = R*(4^{-j} (2m+n) |lambda|)` and a certified tail bound.
pub fn kernel_phi_j(
    j: i32,
    g: &GroupParams,
    window: &DyadicWindow,
    settings: &LPSettings,
) -> LPKernel {
    let k_n = calibrate_mode_constant(g, window);
    let inv_scale = scale_factor(-j);
    let modes = (0..=settings.m_max)
        .map(|m| {
            let (nodes, weights) = mode_grid(m, j, g, settings.panels_per_mode);
            let w = g.mode_weight(m);
            let values = nodes
                .iter()
                .map(|&l| Complex64::new(window.eval(inv_scale * w * l.abs()), 0.0))
                .collect();
            ModeCoefficients { m, nodes, weights, values }
        })
        .collect();
    LPKernel {
        j,
        coefficients: SphericalCoefficients {
            n: g.n,
            modes,
            tail_bound: truncation_tail_bound(k_n, settings.m_max, g, j),
        },
    }
}

/// The reproducing kernel phi~_j: window tripled over adjacent scales,
/// sampled on phi_j's grids.
pub fn kernel_phi_tilde_j(
    j: i32,
    g: &GroupParams,
    window: &DyadicWindow,
    settings: &LPSettings,
) -> LPKernel {
    let mut kernel = kernel_phi_j(j, g, window, settings);
    for mode in &mut kernel.coefficients.modes {
        let w = g.mode_weight(mode.m);
        for (k, v) in mode.values.iter_mut().enumerate() {
            let tau = w * mode.nodes[k].abs();
            *v = Complex64::new(
                window.eval(scale_factor(-(j - 1)) * tau)
                    + window.eval(scale_factor(-j) * tau)
                    + window.eval(scale_factor(-(j + 1)) * tau),
                0.0,
            );
        }
    }
    kernel.coefficients.tail_bound *= 3.0;
    kernel
}

/// The projector Delta_j on the frequency side: multiplies c by the window
/// symbol `R*(4^{-j} (2m+n) |lambda|)`.
pub fn project(
    c: &SphericalCoefficients,
    j: i32,
    g: &GroupParams,
    window: &DyadicWindow,
) -> SphericalCoefficients {
    let inv_scale = scale_factor(-j);
    let mut out = c.clone();
    for mode in &mut out.modes {
        let w = g.mode_weight(mode.m);
        for (k, v) in mode.values.iter_mut().enumerate() {
            *v *= window.eval(inv_scale * w * mode.nodes[k].abs());
        }
    }
    out
}

/// An integration exponent: finite p >= 1 or infinity (handled as max).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "inf" | "infinity" => Ok(Exponent::Infinity),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| Error::Config(format!("bad exponent '{other}'")))?;
                if p < 1.0 {
                    return Err(Error::InvalidParameter(format!("exponent {p} < 1")));
                }
                Ok(Exponent::Finite(p))
            }
        }
    }
}

/// Discrete homogeneous Besov norm specification.
#[derive(Debug, Clone)]
pub struct BesovSpec {
    /// Regularity exponent rho; admissibility requires rho < N/p.
    pub rho: f64,
    pub p: Exponent,
    pub r: Exponent,
    pub j_range: (i32, i32),
}

impl BesovSpec {
    pub fn validate(&self, g: &GroupParams) -> Result<()> {
        if self.j_range.0 > self.j_range.1 {
            return Err(Error::InvalidParameter("empty j_range".into()));
        }
        if let Exponent::Finite(p) = self.p {
            if self.rho >= g.homogeneous_dim as f64 / p {
                return Err(Error::InvalidParameter(format!(
                    "inadmissible Besov regularity: rho = {} >= N/p",
                    self.rho
                )));
            }
        }
        Ok(())
    }
}

/// Grid sizes for the physical-space block norms.
#[derive(Debug, Clone, Copy)]
pub struct NormGrid {
    pub r_points: usize,
    pub s_points: usize,
}

impl Default for NormGrid {
    fn default() -> Self {
        NormGrid { r_points: 96, s_points: 192 }
    }
}

/// L^p norm of the reconstruction of c over the group, on a quadrature grid
/// with the radial measure `sphere_measure r^{2n-1} dr ds`.
pub fn block_lp_norm(
    c: &SphericalCoefficients,
    p: Exponent,
    g: &GroupParams,
    grid: &NormGrid,
) -> f64 {
    let lambda_min = c
        .modes
        .iter()
        .flat_map(|m| m.nodes.iter().map(|l| l.abs()))
        .filter(|l| *l > 0.0)
        .fold(f64::INFINITY, f64::min);
    if !lambda_min.is_finite() {
        return 0.0;
    }
    // Gaussian factor bounds the r extent; the smallest mode window width
    // sets the s decay scale of the band-limited kernel
    let r_max = (32.0 / lambda_min).sqrt();
    let width_min = c
        .modes
        .iter()
        .filter(|m| !m.nodes.is_empty())
        .map(|m| m.nodes.last().unwrap() - m.nodes.first().unwrap())
        .fold(f64::INFINITY, f64::min);
    let s_max = 24.0 / width_min.max(1e-12);
    let inv_const = g.inversion_constant();
    let r_nodes = panel_nodes(0.0, r_max, grid.r_points.div_ceil(16));
    let s_nodes = panel_nodes(-s_max, s_max, grid.s_points.div_ceil(16));
    let two_n_minus_1 = (2 * g.n - 1) as i32;
    match p {
        Exponent::Infinity => {
            let mut sup = 0.0f64;
            for &(s, _) in &s_nodes {
                for &(r, _) in &r_nodes {
                    sup = sup.max(eval_inverse(c, g, inv_const, r, s).norm());
                }
            }
            sup
        }
        Exponent::Finite(p) => {
            let mut acc = Kahan::default();
            for &(s, ws) in &s_nodes {
                for &(r, wr) in &r_nodes {
                    let v = eval_inverse(c, g, inv_const, r, s).norm();
                    acc.add(ws * wr * g.sphere_measure * r.powi(two_n_minus_1) * v.powf(p));
                }
            }
            acc.value().powf(1.0 / p)
        }
    }
}

/// Discrete Besov norm: `( sum_j (2^{j rho} ||Delta_j f||_p)^r )^{1/r}`
/// over the finite j_range, which must cover the spectral support.
pub fn besov_norm(
    c: &SphericalCoefficients,
    spec: &BesovSpec,
    g: &GroupParams,
    window: &DyadicWindow,
    grid: &NormGrid,
) -> Result<f64> {
    spec.validate(g)?;
    // spectral mass outside the covered scales must be negligible
    let (j_lo, j_hi) = spec.j_range;
    let mut outside = 0.0f64;
    let mut inside = 0.0f64;
    for mode in &c.modes {
        let w = g.mode_weight(mode.m);
        for (k, v) in mode.values.iter().enumerate() {
            let tau = w * mode.nodes[k].abs();
            let mut covered = 0.0;
            for j in j_lo..=j_hi {
                covered += window.eval(scale_factor(-j) * tau);
            }
            let mass = mode.weights[k] * v.norm();
            inside += mass * covered;
            outside += mass * (1.0 - covered).max(0.0);
        }
    }
    if outside > 1e-10 * (inside + outside).max(1e-300) {
        return Err(Error::UnresolvedTail { mass: outside, tol: 1e-10 * (inside + outside) });
    }
    let mut blocks = Vec::new();
    for j in j_lo..=j_hi {
        let block = project(c, j, g, window);
        let norm = block_lp_norm(&block, spec.p, g, grid);
        blocks.push(2f64.powf(j as f64 * spec.rho) * norm);
    }
    Ok(match spec.r {
        Exponent::Infinity => blocks.iter().fold(0.0f64, |a, &b| a.max(b)),
        Exponent::Finite(r) => {
            let mut acc = Kahan::default();
            for b in &blocks {
                acc.add(b.powf(r));
            }
            acc.value().powf(1.0 / r)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spherical::convolve;

    fn small_settings() -> LPSettings {
        LPSettings { panels_per_mode: 2, m_max: 24 }
    }

    #[test]
    fn phi_hat_zero_outside_window() {
        let g = GroupParams::new(1).unwrap();
        let w = DyadicWindow::default();
        let kernel = kernel_phi_j(0, &g, &w, &small_settings());
        for mode in &kernel.coefficients.modes {
            let weight = g.mode_weight(mode.m);
            for (k, v) in mode.values.iter().enumerate() {
                let tau = weight * mode.nodes[k].abs();
                if !(0.5..=4.0).contains(&tau) {
                    assert_eq!(v.norm(), 0.0);
                }
            }
        }
    }

    #[test]
    fn phi_kernel_real_positive_at_origin() {
        let g = GroupParams::new(1).unwrap();
        let w = DyadicWindow::default();
        let kernel = kernel_phi_j(0, &g, &w, &small_settings());
        let f = crate::spherical::inverse_transform(&kernel.coefficients, &g);
        let v = f.eval(0.0, 0.0);
        assert!(v.re > 0.0, "{v}");
        assert!(v.im.abs() < 1e-10 * v.re);
    }

    #[test]
    fn reproducing_identity() {
        let g = GroupParams::new(1).unwrap();
        let w = DyadicWindow::default();
        let phi = kernel_phi_j(0, &g, &w, &small_settings());
        let tilde = kernel_phi_tilde_j(0, &g, &w, &small_settings());
        let prod = convolve(&phi.coefficients, &tilde.coefficients).unwrap();
        for (ma, mb) in prod.modes.iter().zip(&phi.coefficients.modes) {
            for (va, vb) in ma.values.iter().zip(&mb.values) {
                assert!((va - vb).norm() <= 1e-12, "m={} {va} vs {vb}", ma.m);
            }
        }
    }

    #[test]
    fn projector_partition_recovers_coefficients() {
        let g = GroupParams::new(1).unwrap();
        let w = DyadicWindow::default();
        let c = kernel_phi_j(0, &g, &w, &small_settings()).coefficients;
        let mut sum = c.clone();
        sum.map_values(|_, _, _| Complex64::new(0.0, 0.0));
        for j in -8..=8 {
            let block = project(&c, j, &g, &w);
            for (ms, mb) in sum.modes.iter_mut().zip(&block.modes) {
                for (vs, vb) in ms.values.iter_mut().zip(&mb.values) {
                    *vs += vb;
                }
            }
        }
        for (ma, mb) in sum.modes.iter().zip(&c.modes) {
            for (va, vb) in ma.values.iter().zip(&mb.values) {
                assert!((va - vb).norm() <= 1e-12 * vb.norm().max(1e-300));
            }
        }
    }

    #[test]
    fn distant_projectors_annihilate() {
        let g = GroupParams::new(1).unwrap();
        let w = DyadicWindow::default();
        let c = kernel_phi_j(0, &g, &w, &small_settings()).coefficients;
        let twice = project(&project(&c, 0, &g, &w), 3, &g, &w);
        for mode in &twice.modes {
            for v in &mode.values {
                assert_eq!(v.norm(), 0.0);
            }
        }
    }

    #[test]
    fn tail_bound_decreases_in_m_max() {
        let g = GroupParams::new(1).unwrap();
        let w = DyadicWindow::default();
        let k_n = calibrate_mode_constant(&g, &w);
        assert!(k_n > 0.0);
        let t16 = truncation_tail_bound(k_n, 16, &g, 0);
        let t64 = truncation_tail_bound(k_n, 64, &g, 0);
        assert!(t64 < t16);
        // j-scaling 2^{Nj}
        let t_j2 = truncation_tail_bound(k_n, 16, &g, 2);
        assert!((t_j2 / t16 - 2f64.powi((g.homogeneous_dim * 2) as i32)).abs() < 1e-9 * t_j2 / t16);
    }

    #[test]
    fn mode_cap_monotone() {
        let g = GroupParams::new(1).unwrap();
        let w = DyadicWindow::default();
        let k_n = calibrate_mode_constant(&g, &w);
        let loose = mode_cap(k_n, 1e-2, &g, 1 << 24);
        let tight = mode_cap(k_n, 1e-4, &g, 1 << 24);
        assert!(tight > loose);
        assert!(truncation_tail_bound(k_n, tight, &g, 0) < 1e-4);
        assert_eq!(mode_cap(k_n, 1e-12, &g, 512), 512);
    }

    #[test]
    fn besov_single_block() {
        let g = GroupParams::new(1).unwrap();
        let w = DyadicWindow::default();
        let settings = LPSettings { panels_per_mode: 2, m_max: 8 };
        let c = kernel_phi_j(0, &g, &w, &settings).coefficients;
        let grid = NormGrid { r_points: 64, s_points: 128 };
        let spec = BesovSpec {
            rho: 1.0,
            p: Exponent::Finite(1.0),
            r: Exponent::Finite(1.0),
            j_range: (-2, 2),
        };
        let full = besov_norm(&c, &spec, &g, &w, &grid).unwrap();
        // only blocks j in {-1, 0, 1} are nonzero for phi_0
        let mut manual = 0.0;
        for j in -1..=1 {
            manual += 2f64.powf(j as f64 * spec.rho)
                * block_lp_norm(&project(&c, j, &g, &w), spec.p, &g, &grid);
        }
        assert!((full - manual).abs() < 1e-12 * manual, "{full} vs {manual}");
        assert!(full > 0.0);
    }

    #[test]
    fn besov_rejects_uncovered_support() {
        let g = GroupParams::new(1).unwrap();
        let w = DyadicWindow::default();
        let settings = LPSettings { panels_per_mode: 2, m_max: 8 };
        let c = kernel_phi_j(3, &g, &w, &settings).coefficients;
        let spec = BesovSpec {
            rho: 0.5,
            p: Exponent::Finite(1.0),
            r: Exponent::Finite(1.0),
            j_range: (-1, 1),
        };
        assert!(matches!(
            besov_norm(&c, &spec, &g, &w, &NormGrid::default()),
            Err(Error::UnresolvedTail { .. })
        ));
    }

    #[test]
    fn besov_rejects_inadmissible_rho() {
        let g = GroupParams::new(1).unwrap();
        let spec = BesovSpec {
            rho: 5.0,
            p: Exponent::Finite(1.0),
            r: Exponent::Finite(1.0),
            j_range: (-1, 1),
        };
        assert!(spec.validate(&g).is_err());
    }

    #[test]
    fn sigma_scaling_inequality() {
        // ||L^{sigma/2} Delta_j f||_2 / ||Delta_j f||_2 <= C 2^{j sigma},
        // with measured C stable across j
        let g = GroupParams::new(1).unwrap();
        let w = DyadicWindow::default();
        let settings = LPSettings { panels_per_mode: 2, m_max: 8 };
        let sigma = 1.0;
        let mut consts = Vec::new();
        for j in -3..=3 {
            let c = kernel_phi_j(j, &g, &w, &settings).coefficients;
            let h = crate::spherical::Multiplier::new(
                move |x: f64| Complex64::new(x.powf(sigma / 2.0), 0.0),
                false,
            );
            let lc = crate::spherical::apply_multiplier(&c, &h, &g);
            let num = crate::spherical::plancherel_norm_sq(&lc, &g).sqrt();
            let den = crate::spherical::plancherel_norm_sq(&c, &g).sqrt();
            consts.push(num / den / 2f64.powf(j as f64 * sigma));
        }
        let max = consts.iter().cloned().fold(0.0f64, f64::max);
        let min = consts.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(max / min < 1.5, "constants not stable: {consts:?}");
    }
}
