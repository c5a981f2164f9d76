//! Evaluation of the band-limited dispersive kernels U_t phi_j =
//! e^{it phi(L)} phi_j, sup-norm search, and decay/scaling regressions.
//!
//! On mode m the kernel is a 1-D lambda-integral over the window
//! `lambda in 4^j [1/2, 4] / (2m+n)` with phase
//! `Theta(lambda) - lambda s`, `Theta(lambda) = t phi(4 (2m+n) lambda)`.
//! The integral is computed by the linearized-phase (Filon) scheme of
//! [`crate::oscillatory`]: panel count grows like sqrt of the total phase
//! variation instead of linearly, the panels are shared by every (r, s)
//! evaluation point, the amplitude-times-residual factor is fitted once per
//! (panel, r), and the s-dependence enters only through exact moments.
//! The field is even in s (even window, signed lambda), so only s >= 0 is
//! ever searched.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::fitting::{ols, AbscissaKind, LinearFit};
use crate::group::GroupParams;
use crate::lp::{calibrate_mode_constant, truncation_tail_bound};
use crate::oscillatory::{
    cheb_coeffs, cheb_points, cheb_to_mono, interval_moments, plan_panels, ChebToMono, FIT_POINTS,
    THETA_MAX,
};
use crate::phase::PhaseFunction;
use crate::special::weighted_laguerre;
use crate::window::{scale_factor, DyadicWindow};
use crate::{Error, Result};

/// Truncation, grid, and quadrature settings of a kernel evaluation.
#[derive(Debug, Clone, Copy)]
pub struct EvolveSettings {
    /// Laguerre modes retained; the discarded tail is certified separately.
    pub m_max: u32,
    /// Coarse sup-search grid sizes.
    pub r_points: usize,
    pub s_points: usize,
    /// Cap on Filon panels per mode.
    pub panel_budget: usize,
    /// Multiplier on the per-panel phase-residual budget; < 1 refines.
    pub theta_scale: f64,
}

impl Default for EvolveSettings {
    fn default() -> Self {
        EvolveSettings {
            m_max: 48,
            r_points: 64,
            s_points: 257,
            panel_budget: 1 << 20,
            theta_scale: 1.0,
        }
    }
}

/// Sampled kernel values over an (r, s) grid with certified error metadata.
#[derive(Debug, Clone)]
pub struct KernelField {
    pub r: Vec<f64>,
    pub s: Vec<f64>,
    /// Row-major: values[si * r.len() + ri].
    pub values: Vec<Complex64>,
    pub t: f64,
    pub j: i32,
    pub m_max: u32,
    /// Accumulated bound on the panel-fit truncation error.
    pub quad_err: f64,
    /// Certified bound on the discarded m > m_max mass.
    pub tail_bound: f64,
}

impl KernelField {
    pub fn at(&self, ri: usize, si: usize) -> Complex64 {
        self.values[si * self.r.len() + ri]
    }
}

fn mode_window(m: u32, j: i32, g: &GroupParams) -> (f64, f64) {
    let scale = scale_factor(j) / g.mode_weight(m);
    (0.5 * scale, 4.0 * scale)
}

/// Evaluates U_t phi_j on explicit r and s grids.
pub fn evolve_on_grid(
    phi: &PhaseFunction,
    t: f64,
    j: i32,
    g: &GroupParams,
    window: &DyadicWindow,
    r_grid: &[f64],
    s_grid: &[f64],
    settings: &EvolveSettings,
) -> Result<KernelField> {
    let nr = r_grid.len();
    let ns = s_grid.len();
    if nr == 0 || ns == 0 {
        return Err(Error::InvalidParameter("empty evaluation grid".into()));
    }
    let conv = ChebToMono::build();
    let pts = cheb_points();
    let inv_scale = scale_factor(-j);
    let n_pow = g.n as i32;

    // independent modes in parallel; summed afterwards in ascending m
    let per_mode: Vec<Result<(Vec<Complex64>, f64)>> = (0..=settings.m_max)
        .into_par_iter()
        .map(|m| {
            let w = g.mode_weight(m);
            let (lo, hi) = mode_window(m, j, g);
            let theta = |l: f64| t * phi.value(4.0 * w * l);
            let theta_d1 = |l: f64| 4.0 * w * t * phi.first_derivative(4.0 * w * l);
            let theta_d2 = |l: f64| 16.0 * w * w * t * phi.second_derivative(4.0 * w * l);
            // floor on the panel count so the amplitude (the window's
            // glue-function transitions and the Laguerre oscillations in
            // lambda) stays resolved by the degree-12 fits even at t = 0
            let min_panels = (m as usize / 2 + 32).max(32);
            let max_width = (hi - lo) / min_panels as f64;
            let panels = plan_panels(
                lo,
                hi,
                theta,
                theta_d1,
                theta_d2,
                THETA_MAX * settings.theta_scale,
                max_width,
                settings.panel_budget,
            )?;
            let mut field = vec![Complex64::new(0.0, 0.0); ns * nr];
            let mut err = 0.0f64;
            let mut fits = vec![[Complex64::new(0.0, 0.0); FIT_POINTS]; nr];
            let mut lam = [0.0f64; FIT_POINTS];
            let mut base = [0.0f64; FIT_POINTS];
            let mut erho = [Complex64::new(0.0, 0.0); FIT_POINTS];
            let mut vals = [Complex64::new(0.0, 0.0); FIT_POINTS];
            let mut mom = [Complex64::new(0.0, 0.0); FIT_POINTS];
            for p in &panels {
                for i in 0..FIT_POINTS {
                    let l = p.center + p.half * pts[i];
                    lam[i] = l;
                    base[i] = window.eval(inv_scale * w * l) * l.powi(n_pow);
                    let rho = theta(l) - p.theta_c - p.theta_d1_c * (l - p.center);
                    erho[i] = Complex64::new(0.0, rho).exp();
                }
                let mut tail_max = 0.0f64;
                for (ri, &r) in r_grid.iter().enumerate() {
                    let r2 = 2.0 * r * r;
                    for i in 0..FIT_POINTS {
                        vals[i] = base[i] * weighted_laguerre(m, g.n, lam[i] * r2) * erho[i];
                    }
                    let cheb = cheb_coeffs(&vals);
                    tail_max = tail_max
                        .max(cheb[FIT_POINTS - 2].norm() + cheb[FIT_POINTS - 1].norm());
                    fits[ri] = cheb_to_mono(&cheb, &conv);
                }
                // moments bounded by 2; both lambda half-lines hit each fit
                err += 4.0 * p.half * tail_max;
                for (si, &s) in s_grid.iter().enumerate() {
                    // field(r, s) = I_+(s) + I_+(-s) by lambda -> -lambda
                    for &sv in &[s, -s] {
                        let omega = (p.theta_d1_c - sv) * p.half;
                        interval_moments(omega, &mut mom);
                        let pref =
                            p.half * Complex64::new(0.0, p.theta_c - p.center * sv).exp();
                        let row = &mut field[si * nr..(si + 1) * nr];
                        for (ri, out) in row.iter_mut().enumerate() {
                            let mut acc = Complex64::new(0.0, 0.0);
                            for k in 0..FIT_POINTS {
                                acc += fits[ri][k] * mom[k];
                            }
                            *out += pref * acc;
                        }
                    }
                }
            }
            Ok((field, err))
        })
        .collect();

    let inv_const = g.inversion_constant();
    let mut values = vec![Complex64::new(0.0, 0.0); ns * nr];
    let mut quad_err = 0.0f64;
    for mode in per_mode {
        let (field, err) = mode?;
        for (v, f) in values.iter_mut().zip(&field) {
            *v += f;
        }
        quad_err += err;
    }
    for v in &mut values {
        *v *= inv_const;
    }
    let k_n = calibrate_mode_constant(g, window);
    Ok(KernelField {
        r: r_grid.to_vec(),
        s: s_grid.to_vec(),
        values,
        t,
        j,
        m_max: settings.m_max,
        quad_err: inv_const * quad_err,
        tail_bound: truncation_tail_bound(k_n, settings.m_max, g, j),
    })
}

/// r extent from the Gaussian factor at the smallest retained |lambda|.
fn r_extent(j: i32, g: &GroupParams, settings: &EvolveSettings) -> f64 {
    let lambda_min = mode_window(settings.m_max, j, g).0;
    (18.4 / lambda_min).sqrt()
}

/// Stationary band of mode m: the range of Theta'(lambda) over the window.
fn stationary_band(phi: &PhaseFunction, t: f64, m: u32, j: i32, g: &GroupParams) -> f64 {
    let w = g.mode_weight(m);
    let (lo, hi) = mode_window(m, j, g);
    let mut sup = 0.0f64;
    for i in 0..=32 {
        let l = lo + (hi - lo) * i as f64 / 32.0;
        sup = sup.max((4.0 * w * t * phi.first_derivative(4.0 * w * l)).abs());
    }
    sup
}

/// Search grids for the sup-norm: uniform in r up to the Gaussian cutoff;
/// in s, most points cover the stationary band of the low modes (which
/// carry the mass), the rest extend log-spaced to the highest mode's band.
pub fn search_grids(
    phi: &PhaseFunction,
    t: f64,
    j: i32,
    g: &GroupParams,
    settings: &EvolveSettings,
) -> (Vec<f64>, Vec<f64>) {
    let r_max = r_extent(j, g, settings);
    let r_grid: Vec<f64> = (0..settings.r_points)
        .map(|i| r_max * i as f64 / (settings.r_points - 1) as f64)
        .collect();
    // Schwartz decay scale of the band-limited kernel in s (covers t = 0)
    let s_decay = 24.0 * g.mode_weight(settings.m_max) * scale_factor(-j) / 3.5;
    let s_core = (1.5 * stationary_band(phi, t, 0, j, g)).max(s_decay);
    let s_far = 1.5 * stationary_band(phi, t, settings.m_max, j, g);
    let mut s_grid = Vec::with_capacity(settings.s_points);
    if s_far > s_core {
        let n_core = settings.s_points * 3 / 5;
        for i in 0..n_core {
            s_grid.push(s_core * i as f64 / (n_core - 1) as f64);
        }
        let n_tail = settings.s_points - n_core;
        for i in 1..=n_tail {
            s_grid.push(s_core * (s_far / s_core).powf(i as f64 / n_tail as f64));
        }
    } else {
        for i in 0..settings.s_points {
            s_grid.push(s_core * i as f64 / (settings.s_points - 1) as f64);
        }
    }
    (r_grid, s_grid)
}

/// Sup-norm estimate with its argmax location.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SupResult {
    pub value: f64,
    pub argmax_r: f64,
    pub argmax_s: f64,
    pub quad_err: f64,
    pub tail_bound: f64,
}

fn parabolic_peak(ym: f64, y0: f64, yp: f64) -> f64 {
    // refine only a genuine interior local max: for a monotone or nearly
    // collinear triple the parabola is degenerate and its vertex
    // extrapolates arbitrarily far from the samples. With y0 >= ym, yp the
    // vertex stays within the cell and the correction below denom / 8.
    if y0 < ym || y0 < yp {
        return y0;
    }
    let denom = 2.0 * y0 - ym - yp;
    if denom > 0.0 {
        let d = yp - ym;
        y0 + d * d / (8.0 * denom)
    } else {
        y0
    }
}

/// Locates sup |field| on the grid, refines the top candidates by local
/// parabolic interpolation in r and s, and rejects an argmax sitting on the
/// outer search boundary.
pub fn sup_of_field(field: &KernelField) -> Result<SupResult> {
    let nr = field.r.len();
    let ns = field.s.len();
    let mags: Vec<f64> = field.values.iter().map(|v| v.norm()).collect();
    // indices of the top 5 magnitudes
    let mut top: Vec<usize> = (0..mags.len()).collect();
    top.sort_by(|&a, &b| mags[b].total_cmp(&mags[a]));
    top.truncate(5);
    let best = top[0];
    let (bsi, bri) = (best / nr, best % nr);
    if bri + 1 == nr || bsi + 1 == ns {
        return Err(Error::BoundaryArgmax { r: field.r[bri], s: field.s[bsi] });
    }
    let mut refined = 0.0f64;
    let mut arg = (field.r[bri], field.s[bsi]);
    for &idx in &top {
        let (si, ri) = (idx / nr, idx % nr);
        let mut v = mags[idx];
        if ri > 0 && ri + 1 < nr {
            v = v.max(parabolic_peak(mags[idx - 1], mags[idx], mags[idx + 1]));
        }
        if si > 0 && si + 1 < ns {
            v = v.max(parabolic_peak(mags[idx - nr], mags[idx], mags[idx + nr]));
        }
        if v > refined {
            refined = v;
            arg = (field.r[ri], field.s[si]);
        }
    }
    Ok(SupResult {
        value: refined,
        argmax_r: arg.0,
        argmax_s: arg.1,
        quad_err: field.quad_err,
        tail_bound: field.tail_bound,
    })
}

/// Evaluates the kernel on its search grids and returns the sup-norm.
pub fn sup_norm(
    phi: &PhaseFunction,
    t: f64,
    j: i32,
    g: &GroupParams,
    window: &DyadicWindow,
    settings: &EvolveSettings,
) -> Result<SupResult> {
    let (r_grid, s_grid) = search_grids(phi, t, j, g, settings);
    let field = evolve_on_grid(phi, t, j, g, window, &r_grid, &s_grid, settings)?;
    sup_of_field(&field)
}

/// One sup-norm measurement row (CSV-facing).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SupRow {
    pub t: f64,
    pub j: i32,
    pub sup: f64,
    pub argmax_r: f64,
    pub argmax_s: f64,
    pub quad_err: f64,
    pub tail_bound: f64,
}

/// Fits ln sup|U_t phi_j| against ln t; the expected slope is -theta/2
/// (-1/2 for the built-in families).
pub fn decay_fit(
    phi: &PhaseFunction,
    j: i32,
    ts: &[f64],
    g: &GroupParams,
    window: &DyadicWindow,
    settings: &EvolveSettings,
) -> Result<(LinearFit, Vec<SupRow>)> {
    let rows: Vec<Result<SupRow>> = ts
        .par_iter()
        .map(|&t| {
            let sup = sup_norm(phi, t, j, g, window, settings)?;
            Ok(SupRow {
                t,
                j,
                sup: sup.value,
                argmax_r: sup.argmax_r,
                argmax_s: sup.argmax_s,
                quad_err: sup.quad_err,
                tail_bound: sup.tail_bound,
            })
        })
        .collect();
    let rows: Vec<SupRow> = rows.into_iter().collect::<Result<_>>()?;
    let x: Vec<f64> = rows.iter().map(|r| r.t.ln()).collect();
    let y: Vec<f64> = rows.iter().map(|r| r.sup.ln()).collect();
    let fit = ols(AbscissaKind::LogTime, &x, &y, 6)?;
    Ok((fit, rows))
}

/// Fits ln(sup * t^{1/2}) against j ln 2 at fixed t; the expected slope is
/// N - alpha_1 at theta = 1.
pub fn scale_fit(
    phi: &PhaseFunction,
    t: f64,
    js: &[i32],
    g: &GroupParams,
    window: &DyadicWindow,
    settings: &EvolveSettings,
) -> Result<(LinearFit, Vec<SupRow>)> {
    let rows: Vec<Result<SupRow>> = js
        .par_iter()
        .map(|&j| {
            let sup = sup_norm(phi, t, j, g, window, settings)?;
            Ok(SupRow {
                t,
                j,
                sup: sup.value,
                argmax_r: sup.argmax_r,
                argmax_s: sup.argmax_s,
                quad_err: sup.quad_err,
                tail_bound: sup.tail_bound,
            })
        })
        .collect();
    let rows: Vec<SupRow> = rows.into_iter().collect::<Result<_>>()?;
    let x: Vec<f64> = rows.iter().map(|r| r.j as f64 * std::f64::consts::LN_2).collect();
    let y: Vec<f64> = rows.iter().map(|r| (r.sup * r.t.sqrt()).ln()).collect();
    let fit = ols(AbscissaKind::ScaleLn2, &x, &y, 5)?;
    Ok((fit, rows))
}

/// One boundedness measurement of the pointwise dispersive inequality.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DispersiveRatioRow {
    pub t: f64,
    pub sup: f64,
    pub besov: f64,
    /// sup * t^{1/2} / Besov norm; boundedness across t is the check.
    pub ratio: f64,
}

/// Measures `||U_t u0||_inf * t^{1/2} / ||u0||_{B^{rho}_{1,1}}` across the
/// t-list for u0 = sum of Littlewood-Paley kernels phi_j over `blocks`.
#[allow(clippy::too_many_arguments)]
pub fn dispersive_ratio(
    phi: &PhaseFunction,
    rho: f64,
    blocks: &[i32],
    ts: &[f64],
    g: &GroupParams,
    window: &DyadicWindow,
    settings: &EvolveSettings,
    lp_settings: &crate::lp::LPSettings,
) -> Result<Vec<DispersiveRatioRow>> {
    if blocks.is_empty() {
        return Err(Error::ZeroInput("dispersive ratio needs a nonempty initial datum".into()));
    }
    let j_lo = *blocks.iter().min().unwrap();
    let j_hi = *blocks.iter().max().unwrap();
    let u0 = union_coefficients(blocks, g, window, lp_settings);
    if u0.modes.iter().all(|m| m.values.iter().all(|v| v.norm() == 0.0)) {
        return Err(Error::ZeroInput("initial datum vanishes identically".into()));
    }
    let spec = crate::lp::BesovSpec {
        rho,
        p: crate::lp::Exponent::Finite(1.0),
        r: crate::lp::Exponent::Finite(1.0),
        j_range: (j_lo - 1, j_hi + 1),
    };
    let besov = crate::lp::besov_norm(&u0, &spec, g, window, &crate::lp::NormGrid::default())?;
    let mut out = Vec::with_capacity(ts.len());
    for &t in ts {
        // common grid wide enough for every block
        let r_max = blocks.iter().map(|&j| r_extent(j, g, settings)).fold(0.0f64, f64::max);
        let r_grid: Vec<f64> = (0..settings.r_points)
            .map(|i| r_max * i as f64 / (settings.r_points - 1) as f64)
            .collect();
        let mut s_grid: Vec<f64> = Vec::new();
        for &j in blocks {
            s_grid.extend(search_grids(phi, t, j, g, settings).1);
        }
        s_grid.sort_by(f64::total_cmp);
        s_grid.dedup();
        let mut combined: Option<KernelField> = None;
        for &j in blocks {
            let field = evolve_on_grid(phi, t, j, g, window, &r_grid, &s_grid, settings)?;
            combined = Some(match combined {
                None => field,
                Some(mut acc) => {
                    for (a, b) in acc.values.iter_mut().zip(&field.values) {
                        *a += b;
                    }
                    acc.quad_err += field.quad_err;
                    acc.tail_bound += field.tail_bound;
                    acc
                }
            });
        }
        let sup = sup_of_field(&combined.unwrap())?;
        out.push(DispersiveRatioRow {
            t,
            sup: sup.value,
            besov,
            ratio: sup.value * t.abs().sqrt() / besov,
        });
    }
    Ok(out)
}

/// Coefficients of `sum_j phi_j` over the given blocks: per mode, a fresh
/// per-octave grid covering the union of the block windows, with the summed
/// window symbol sampled on it. (Block grids cannot simply be concatenated:
/// adjacent scales overlap in lambda and would double-count quadrature.)
pub fn union_coefficients(
    blocks: &[i32],
    g: &GroupParams,
    window: &DyadicWindow,
    lp_settings: &crate::lp::LPSettings,
) -> crate::spherical::SphericalCoefficients {
    let j_lo = *blocks.iter().min().unwrap();
    let j_hi = *blocks.iter().max().unwrap();
    let modes = (0..=lp_settings.m_max)
        .map(|m| {
            let w = g.mode_weight(m);
            let lo = 0.5 * scale_factor(j_lo) / w;
            let hi = 4.0 * scale_factor(j_hi) / w;
            let mut pos: Vec<(f64, f64)> = Vec::new();
            let mut a = lo;
            while a < hi * (1.0 - 1e-14) {
                let b = (4.0 * a).min(hi);
                pos.extend(crate::quad::panel_nodes(a, b, 2 * lp_settings.panels_per_mode));
                a = b;
            }
            let mut nodes: Vec<f64> = pos.iter().rev().map(|&(x, _)| -x).collect();
            let mut weights: Vec<f64> = pos.iter().rev().map(|&(_, wq)| wq).collect();
            nodes.extend(pos.iter().map(|&(x, _)| x));
            weights.extend(pos.iter().map(|&(_, wq)| wq));
            let values = nodes
                .iter()
                .map(|&l| {
                    let symbol: f64 = blocks
                        .iter()
                        .map(|&j| window.eval(scale_factor(-j) * w * l.abs()))
                        .sum();
                    Complex64::new(symbol, 0.0)
                })
                .collect();
            crate::spherical::ModeCoefficients { m, nodes, weights, values }
        })
        .collect();
    crate::spherical::SphericalCoefficients { n: g.n, modes, tail_bound: 0.0 }
}
