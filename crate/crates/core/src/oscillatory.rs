//! Oscillatory quadrature.
//!
//! Two engines live here:
//!
//! * [`oscillatory_integral`]: dense composite Gauss-Legendre with the panel
//!   count tied to the total phase variation. Robust and self-validating,
//!   but cost grows linearly with t. It is the reference engine for the
//!   1-D stationary-phase checks and the correctness oracle for the second
//!   engine.
//! * A Filon-type linearized-phase scheme ([`plan_panels`], [`fit_monomial`],
//!   [`interval_moments`]): panels are sized by phase *curvature* (cost grows
//!   like sqrt(t)); on each panel the phase is split into its linearization
//!   at the center plus a small residual that is folded into the amplitude,
//!   and the linear-phase integral is computed from exact polynomial moments
//!   `M_k(omega) = int x^k e^{i omega x} dx`. The panels do not depend on the
//!   linear-phase frequency, so one panel plan serves a whole grid of
//!   evaluation points.

use std::sync::Arc;

use num_complex::Complex64;

use crate::quad::integrate_adaptive_complex;
use crate::{Error, Result};

type ComplexMap = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;
type RealMap = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `int_a^b psi(x) e^{i t Psi(x)} dx` with smooth psi supported in [a, b].
#[derive(Clone)]
pub struct OscillatoryIntegrand {
    pub amplitude: ComplexMap,
    pub phase: RealMap,
    pub phase_d1: RealMap,
    pub phase_d2: RealMap,
    pub a: f64,
    pub b: f64,
}

impl OscillatoryIntegrand {
    pub fn new<A, P, P1, P2>(amplitude: A, phase: P, d1: P1, d2: P2, a: f64, b: f64) -> Self
    where
        A: Fn(f64) -> Complex64 + Send + Sync + 'static,
        P: Fn(f64) -> f64 + Send + Sync + 'static,
        P1: Fn(f64) -> f64 + Send + Sync + 'static,
        P2: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        OscillatoryIntegrand {
            amplitude: Arc::new(amplitude),
            phase: Arc::new(phase),
            phase_d1: Arc::new(d1),
            phase_d2: Arc::new(d2),
            a,
            b,
        }
    }
}

/// Dense evaluation with panels proportional to total phase variation,
/// refined by doubling until two levels agree to `tol`.
pub fn oscillatory_integral(i: &OscillatoryIntegrand, t: f64, tol: f64) -> Result<Complex64> {
    let samples = 65;
    let mut sup_d1 = 0.0f64;
    for k in 0..samples {
        let x = i.a + (i.b - i.a) * k as f64 / (samples - 1) as f64;
        sup_d1 = sup_d1.max((i.phase_d1)(x).abs());
    }
    let variation = t.abs() * sup_d1 * (i.b - i.a);
    // a 16-node panel resolves several radians comfortably; budget ~8 per panel
    let panels0 = ((variation / 8.0).ceil() as usize).max(4);
    let amp = &i.amplitude;
    let ph = &i.phase;
    let r = integrate_adaptive_complex(i.a, i.b, panels0, tol, 8, |x| {
        amp(x) * Complex64::new(0.0, t * ph(x)).exp()
    })?;
    Ok(r.value)
}

// --- Filon machinery ---------------------------------------------------------

/// Degree of the per-panel polynomial model of amplitude x residual phase.
pub const FIT_DEGREE: usize = 12;
/// Number of Chebyshev sample points (= FIT_DEGREE + 1).
pub const FIT_POINTS: usize = FIT_DEGREE + 1;
/// Largest quadratic phase residual (radians) a panel may carry; degree-12
/// polynomials represent e^{i rho} with |rho| <= 1.5 to better than 1e-9.
pub const THETA_MAX: f64 = 1.0;

/// One Filon panel: center, half-width, and the phase linearization there.
#[derive(Debug, Clone, Copy)]
pub struct FilonPanel {
    pub center: f64,
    pub half: f64,
    pub theta_c: f64,
    pub theta_d1_c: f64,
}

/// Chebyshev-Gauss sample points on [-1, 1], descending.
pub fn cheb_points() -> [f64; FIT_POINTS] {
    let mut out = [0.0; FIT_POINTS];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (std::f64::consts::PI * (i as f64 + 0.5) / FIT_POINTS as f64).cos();
    }
    out
}

/// Conversion matrix from Chebyshev coefficients to monomial coefficients:
/// mono[p] = sum_k table[k][p] cheb[k].
pub struct ChebToMono(pub [[f64; FIT_POINTS]; FIT_POINTS]);

impl ChebToMono {
    pub fn build() -> Self {
        let mut t = [[0.0f64; FIT_POINTS]; FIT_POINTS];
        t[0][0] = 1.0;
        if FIT_POINTS > 1 {
            t[1][1] = 1.0;
        }
        for k in 2..FIT_POINTS {
            // T_k = 2 x T_{k-1} - T_{k-2}
            for p in 0..k {
                t[k][p + 1] += 2.0 * t[k - 1][p];
            }
            for p in 0..FIT_POINTS {
                t[k][p] -= t[k - 2][p];
            }
        }
        ChebToMono(t)
    }
}

/// Chebyshev interpolation coefficients of values sampled at [`cheb_points`].
pub fn cheb_coeffs(values: &[Complex64; FIT_POINTS]) -> [Complex64; FIT_POINTS] {
    let n = FIT_POINTS as f64;
    let mut cheb = [Complex64::new(0.0, 0.0); FIT_POINTS];
    for (k, c) in cheb.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, v) in values.iter().enumerate() {
            let angle = std::f64::consts::PI * k as f64 * (i as f64 + 0.5) / n;
            acc += v * angle.cos();
        }
        *c = acc * (if k == 0 { 1.0 } else { 2.0 } / n);
    }
    cheb
}

/// Converts Chebyshev coefficients to monomial coefficients.
pub fn cheb_to_mono(
    cheb: &[Complex64; FIT_POINTS],
    conv: &ChebToMono,
) -> [Complex64; FIT_POINTS] {
    let mut mono = [Complex64::new(0.0, 0.0); FIT_POINTS];
    for (k, c) in cheb.iter().enumerate() {
        for (p, m) in mono.iter_mut().enumerate() {
            *m += c * conv.0[k][p];
        }
    }
    mono
}

/// Interpolates the values sampled at [`cheb_points`] by a degree-12
/// polynomial and returns its monomial coefficients.
pub fn fit_monomial(values: &[Complex64; FIT_POINTS], conv: &ChebToMono) -> [Complex64; FIT_POINTS] {
    cheb_to_mono(&cheb_coeffs(values), conv)
}

/// Exact moments `M_k(omega) = int_{-1}^{1} x^k e^{i omega x} dx` for
/// k = 0..=FIT_DEGREE. Taylor series for small omega (the forward recurrence
/// amplifies roundoff by ~k!/omega^k there), integration-by-parts recurrence
/// otherwise (the Taylor sum loses ~e^{|omega|} eps to cancellation for
/// large omega). At the switch point both branches are accurate to ~1e-13.
pub fn interval_moments(omega: f64, out: &mut [Complex64; FIT_POINTS]) {
    if omega.abs() <= 6.0 {
        let iw = Complex64::new(0.0, omega);
        for (k, o) in out.iter_mut().enumerate() {
            // M_k = sum_j (i omega)^j / j! * (1 + (-1)^{k+j}) / (k + j + 1)
            let mut term = Complex64::new(1.0, 0.0);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..160 {
                if (k + j) % 2 == 0 {
                    acc += term * (2.0 / (k + j + 1) as f64);
                }
                term *= iw / (j + 1) as f64;
                if term.norm() < 1e-18 {
                    break;
                }
            }
            *o = acc;
        }
    } else {
        let e_plus = Complex64::new(0.0, omega).exp();
        let e_minus = e_plus.conj();
        let inv = 1.0 / Complex64::new(0.0, omega);
        out[0] = (e_plus - e_minus) * inv;
        for k in 1..FIT_POINTS {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            out[k] = (e_plus - sign * e_minus) * inv - k as f64 * inv * out[k - 1];
        }
    }
}

/// Splits [a, b] into panels whose quadratic phase residual stays below
/// `theta_max`: the width law is `h = sqrt(8 theta_max / |Theta''|)`, then
/// the actual residual against the center linearization is checked on
/// sample points and the panel is halved until it complies. `max_width`
/// additionally caps the panel width so the amplitude stays resolved by the
/// degree-12 fit even where the phase is flat.
pub fn plan_panels<T, T1, T2>(
    a: f64,
    b: f64,
    theta: T,
    theta_d1: T1,
    theta_d2: T2,
    theta_max: f64,
    max_width: f64,
    budget: usize,
) -> Result<Vec<FilonPanel>>
where
    T: Fn(f64) -> f64,
    T1: Fn(f64) -> f64,
    T2: Fn(f64) -> f64,
{
    let mut panels = Vec::new();
    let mut pos = a;
    let width = b - a;
    while pos < b - 1e-14 * width {
        let mut h = panel_width(pos, b, &theta_d2, theta_max).min(max_width);
        // residual check against the center linearization; halve on failure
        loop {
            let c = pos + h / 2.0;
            let tc = theta(c);
            let d1 = theta_d1(c);
            let mut rho_max = 0.0f64;
            for i in 0..7 {
                let x = pos + h * i as f64 / 6.0;
                rho_max = rho_max.max((theta(x) - tc - d1 * (x - c)).abs());
            }
            if rho_max <= 1.5 * theta_max || h < 1e-12 * width {
                panels.push(FilonPanel { center: c, half: h / 2.0, theta_c: tc, theta_d1_c: d1 });
                break;
            }
            h /= 2.0;
        }
        if panels.len() > budget {
            return Err(Error::PanelBudgetExceeded { requested: panels.len(), cap: budget });
        }
        pos += h;
    }
    Ok(panels)
}

fn panel_width<T2: Fn(f64) -> f64>(pos: f64, b: f64, theta_d2: &T2, theta_max: f64) -> f64 {
    let remaining = b - pos;
    let mut h = remaining;
    // two refinement sweeps of the curvature-limited width
    for _ in 0..2 {
        let mut curv = 0.0f64;
        for i in 0..=4 {
            curv = curv.max(theta_d2(pos + h * i as f64 / 4.0).abs());
        }
        if curv > 0.0 {
            h = (8.0 * theta_max / curv).sqrt().min(remaining);
        }
    }
    h
}

/// Reference implementation of the full Filon pipeline for a single scalar
/// integral `int_a^b A(x) e^{i(Theta(x) - omega0 x)} dx`; the production
/// kernel evaluator reuses the pieces with amplitude fits shared across a
/// grid. Used to validate the machinery against [`oscillatory_integral`].
pub fn filon_integral<A, T, T1, T2>(
    amplitude: A,
    theta: T,
    theta_d1: T1,
    theta_d2: T2,
    a: f64,
    b: f64,
    omega0: f64,
    budget: usize,
) -> Result<Complex64>
where
    A: Fn(f64) -> Complex64,
    T: Fn(f64) -> f64,
    T1: Fn(f64) -> f64,
    T2: Fn(f64) -> f64,
{
    let panels =
        plan_panels(a, b, &theta, &theta_d1, &theta_d2, THETA_MAX, (b - a) / 8.0, budget)?;
    let conv = ChebToMono::build();
    let pts = cheb_points();
    let mut total = Complex64::new(0.0, 0.0);
    let mut moments = [Complex64::new(0.0, 0.0); FIT_POINTS];
    for p in &panels {
        let mut values = [Complex64::new(0.0, 0.0); FIT_POINTS];
        for (i, &x) in pts.iter().enumerate() {
            let lam = p.center + p.half * x;
            let rho = theta(lam) - p.theta_c - p.theta_d1_c * (lam - p.center);
            values[i] = amplitude(lam) * Complex64::new(0.0, rho).exp();
        }
        let mono = fit_monomial(&values, &conv);
        let omega = (p.theta_d1_c - omega0) * p.half;
        interval_moments(omega, &mut moments);
        let mut panel_sum = Complex64::new(0.0, 0.0);
        for k in 0..FIT_POINTS {
            panel_sum += mono[k] * moments[k];
        }
        total += p.half
            * Complex64::new(0.0, p.theta_c - omega0 * p.center).exp()
            * panel_sum;
    }
    Ok(total)
}
