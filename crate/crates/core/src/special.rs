//! Overflow-safe evaluation of Laguerre polynomials, weighted Laguerre
//! functions and their Euler-operator derivatives.
//!
//! The weighted function `L_m^{(d-1)}(tau) e^{-tau/2}` is the building block
//! of every radial kernel in this crate. Evaluating `L_m` alone overflows
//! f64 near the turning point `tau ~ 4m`, so the recurrence runs on a scaled
//! representation `value * exp(log_offset)` that starts from the weight
//! `e^{-tau/2}` and renormalizes on the fly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::{Error, Result};

/// Largest degree accepted by the series oracle; above this the exact
/// rational sum gets needlessly expensive and the recurrence is the
/// production path anyway.
pub const SERIES_MAX_DEGREE: u32 = 25;

/// Laguerre polynomial L_m^{(d)}(t) by the finite alternating series
/// `sum_k (-1)^k binom(m+d, m-k) t^k / k!`, evaluated in exact rational
/// arithmetic (the alternating sum cancels by up to ~1e7 near polynomial
/// zeros, which would cost a naive f64 sum nine digits) and rounded once
/// at the end.
///
/// Small-m test oracle only; rejects m > 25.
pub fn laguerre_series(m: u32, d: u32, t: f64) -> Result<f64> {
    if m > SERIES_MAX_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "laguerre_series is an oracle for m <= {SERIES_MAX_DEGREE}, got m = {m}"
        )));
    }
    let t = BigRational::from_float(t)
        .ok_or_else(|| Error::InvalidParameter("non-finite argument".into()))?;
    let mut sum = BigRational::new(BigInt::from(0), BigInt::from(1));
    let mut t_pow_over_fact = BigRational::one(); // t^k / k!
    for k in 0..=m {
        let binom = binomial_exact(m + d, m - k);
        let term = &t_pow_over_fact * BigRational::from_integer(binom);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        t_pow_over_fact *= &t / BigRational::from_integer(BigInt::from(k + 1));
    }
    Ok(sum.to_f64().expect("finite rational"))
}

fn binomial_exact(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Scaled pair (value, log_offset) with true value `value * exp(log_offset)`.
#[derive(Clone, Copy)]
struct Scaled {
    value: f64,
    log_offset: f64,
}

impl Scaled {
    fn collapse(self) -> f64 {
        if self.value == 0.0 {
            return 0.0;
        }
        if self.log_offset.abs() < 700.0 {
            // exp is exactly representable here; keep full precision of value
            self.value * self.log_offset.exp()
        } else {
            let l = self.log_offset + self.value.abs().ln();
            self.value.signum() * l.exp()
        }
    }
}

const RESCALE_THRESHOLD: f64 = 1e150;

/// Weighted Laguerre function `L_m^{(a)}(tau) e^{-tau/2}` for integer type
/// a >= 0, by the three-term recurrence
/// `(k+1) L_{k+1}^{(a)} = (2k+a+1-tau) L_k^{(a)} - (k+a) L_{k-1}^{(a)}`
/// run on the scaled representation seeded with the weight.
fn weighted_laguerre_typed(m: u32, a: u32, tau: f64) -> f64 {
    let a = a as f64;
    let mut prev = Scaled { value: 0.0, log_offset: -tau / 2.0 };
    let mut cur = Scaled { value: 1.0, log_offset: -tau / 2.0 };
    for k in 0..m {
        let k = k as f64;
        let next = ((2.0 * k + a + 1.0 - tau) * cur.value - (k + a) * prev.value) / (k + 1.0);
        prev = cur;
        cur = Scaled { value: next, log_offset: cur.log_offset };
        let mag = cur.value.abs().max(prev.value.abs());
        if mag > RESCALE_THRESHOLD {
            cur.value /= RESCALE_THRESHOLD;
            prev.value /= RESCALE_THRESHOLD;
            cur.log_offset += RESCALE_THRESHOLD.ln();
            prev.log_offset = cur.log_offset;
        } else if mag != 0.0 && mag < 1.0 / RESCALE_THRESHOLD {
            cur.value *= RESCALE_THRESHOLD;
            prev.value *= RESCALE_THRESHOLD;
            cur.log_offset -= RESCALE_THRESHOLD.ln();
            prev.log_offset = cur.log_offset;
        }
    }
    cur.collapse()
}

/// Weighted Laguerre function `L_m^{(d-1)}(tau) e^{-tau/2}` (d >= 1).
///
/// Finite for all m up to at least 10^6 and any tau >= 0.
pub fn weighted_laguerre(m: u32, d: u32, tau: f64) -> f64 {
    debug_assert!(d >= 1, "type parameter d must be >= 1");
    weighted_laguerre_typed(m, d - 1, tau)
}

/// Evaluates `L_k^{(a)}(tau) e^{-tau/2}` for every k in 0..=m_max in one
/// recurrence sweep, writing into `out` (length m_max + 1).
pub fn weighted_laguerre_sweep(m_max: u32, a: u32, tau: f64, out: &mut [f64]) {
    debug_assert_eq!(out.len(), m_max as usize + 1);
    let a = a as f64;
    let mut prev = Scaled { value: 0.0, log_offset: -tau / 2.0 };
    let mut cur = Scaled { value: 1.0, log_offset: -tau / 2.0 };
    let mut exp_off = (-tau / 2.0f64).exp();
    out[0] = cur.value * exp_off;
    for k in 0..m_max {
        let kf = k as f64;
        let next = ((2.0 * kf + a + 1.0 - tau) * cur.value - (kf + a) * prev.value) / (kf + 1.0);
        prev = cur;
        cur = Scaled { value: next, log_offset: cur.log_offset };
        let mag = cur.value.abs().max(prev.value.abs());
        if mag > RESCALE_THRESHOLD {
            cur.value /= RESCALE_THRESHOLD;
            prev.value /= RESCALE_THRESHOLD;
            cur.log_offset += RESCALE_THRESHOLD.ln();
            prev.log_offset = cur.log_offset;
            exp_off = safe_exp(cur.log_offset);
        } else if mag != 0.0 && mag < 1.0 / RESCALE_THRESHOLD {
            cur.value *= RESCALE_THRESHOLD;
            prev.value *= RESCALE_THRESHOLD;
            cur.log_offset -= RESCALE_THRESHOLD.ln();
            prev.log_offset = cur.log_offset;
            exp_off = safe_exp(cur.log_offset);
        }
        out[k as usize + 1] = cur.value * exp_off;
    }
}

fn safe_exp(x: f64) -> f64 {
    if x < -745.0 {
        0.0
    } else {
        x.exp()
    }
}

/// One term of the Euler-operator expansion:
/// `coeff * tau^tau_power * L_degree^{(kind)}(tau) e^{-tau/2}`.
#[derive(Clone, Copy, PartialEq)]
struct EulerTerm {
    degree: u32,
    kind: u32,
    tau_power: u32,
}

/// `(tau d/dtau)^alpha [ L_m^{(d-1)}(tau) e^{-tau/2} ]`, computed analytically
/// via `d/dt L_k^{(a)} = -L_{k-1}^{(a+1)}` and the product rule. Requires
/// 0 <= alpha <= d.
pub fn weighted_laguerre_euler(alpha: u32, m: u32, d: u32, tau: f64) -> Result<f64> {
    if d < 1 {
        return Err(Error::InvalidParameter("type parameter d must be >= 1".into()));
    }
    if alpha > d {
        return Err(Error::InvalidParameter(format!(
            "Euler power alpha = {alpha} outside [0, d] with d = {d}"
        )));
    }
    let mut terms: Vec<(EulerTerm, f64)> =
        vec![(EulerTerm { degree: m, kind: d - 1, tau_power: 0 }, 1.0)];
    for _ in 0..alpha {
        let mut next: Vec<(EulerTerm, f64)> = Vec::with_capacity(terms.len() * 3);
        let mut push = |term: EulerTerm, coeff: f64| {
            if coeff == 0.0 {
                return;
            }
            if let Some(entry) = next.iter_mut().find(|(t, _)| *t == term) {
                entry.1 += coeff;
            } else {
                next.push((term, coeff));
            }
        };
        for &(t, c) in &terms {
            // tau d/dtau applied to tau^p L_q^{(b)} e^{-tau/2}:
            //   p tau^p L_q^{(b)}           (power rule)
            //   - tau^{p+1} L_{q-1}^{(b+1)} (Laguerre derivative identity)
            //   - (1/2) tau^{p+1} L_q^{(b)} (weight)
            if t.tau_power > 0 {
                push(t, c * t.tau_power as f64);
            }
            if t.degree > 0 {
                push(
                    EulerTerm {
                        degree: t.degree - 1,
                        kind: t.kind + 1,
                        tau_power: t.tau_power + 1,
                    },
                    -c,
                );
            }
            push(EulerTerm { tau_power: t.tau_power + 1, ..t }, -c / 2.0);
        }
        terms = next;
    }
    let mut sum = 0.0;
    for &(t, c) in &terms {
        sum += c * tau.powi(t.tau_power as i32) * weighted_laguerre_typed(t.degree, t.kind, tau);
    }
    Ok(sum)
}

/// Worst relative disagreement between the recurrence and the series oracle
/// over the grid m <= 15, d <= 5, tau in {0.1, 1, 3, 10}.
pub fn oracle_max_rel_err() -> f64 {
    let mut worst = 0.0f64;
    for m in 0..=15u32 {
        for d in 1..=5u32 {
            for &tau in &[0.1, 1.0, 3.0, 10.0] {
                let series =
                    laguerre_series(m, d - 1, tau).expect("oracle range") * (-tau / 2.0).exp();
                let rec = weighted_laguerre(m, d, tau);
                worst = worst.max((rec - series).abs() / series.abs().max(1e-300));
            }
        }
    }
    worst
}

/// max over a log-spaced tau grid in [1e-3, 8m+4d] of
/// |(tau d/dtau)^alpha W_m| normalized by (2m+d)^power.
pub fn normalized_euler_sup(alpha: u32, m: u32, d: u32, power: f64) -> f64 {
    let tau_max = (8 * m + 4 * d) as f64;
    let tau_min = 1e-3;
    let n_pts = 60;
    let mut best = 0.0f64;
    for i in 0..n_pts {
        let f = i as f64 / (n_pts - 1) as f64;
        let tau = tau_min * (tau_max / tau_min).powf(f);
        let v = weighted_laguerre_euler(alpha, m, d, tau)
            .expect("alpha within range")
            .abs();
        best = best.max(v);
    }
    best / (2.0 * m as f64 + d as f64).powf(power)
}

/// Growth-proxy pair for the weighted-Laguerre sup bound: the normalized sup
/// over m <= 64 (coarse step) and over 64 < m <= 512; bounded growth means
/// the second stays within a small factor of the first.
pub fn growth_proxy(alpha: u32, d: u32, power: f64) -> (f64, f64) {
    let mut low = 0.0f64;
    for m in (0..=64).step_by(4) {
        low = low.max(normalized_euler_sup(alpha, m, d, power));
    }
    let mut high = 0.0f64;
    for m in (80..=512).step_by(16) {
        high = high.max(normalized_euler_sup(alpha, m, d, power));
    }
    (low, high)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn series_degree_zero_is_one() {
        assert_eq!(laguerre_series(0, 3, 7.2).unwrap(), 1.0);
    }

    #[test]
    fn series_degree_one() {
        // L_1^{(d)}(t) = d + 1 - t
        assert_eq!(laguerre_series(1, 2, 1.0).unwrap(), 2.0);
    }

    #[test]
    fn series_at_zero_is_binomial() {
        assert_eq!(laguerre_series(2, 1, 0.0).unwrap(), 3.0);
    }

    #[test]
    fn series_rejects_large_degree() {
        assert!(laguerre_series(26, 1, 1.0).is_err());
    }

    #[test]
    fn weighted_trivial() {
        assert_eq!(weighted_laguerre(0, 1, 0.0), 1.0);
    }

    #[test]
    fn weighted_matches_series_oracle() {
        let tau = 3.7;
        let oracle = laguerre_series(5, 1, tau).unwrap() * (-tau / 2.0).exp();
        assert!(rel_err(weighted_laguerre(5, 2, tau), oracle) < 1e-12);
    }

    #[test]
    fn oracle_equivalence_grid() {
        // recurrence vs series for m <= 15, d <= 5, tau in {0.1, 1, 3, 10}
        let worst = oracle_max_rel_err();
        assert!(worst < 1e-10, "max rel err {worst}");
    }

    #[test]
    fn weighted_far_tail_is_finite_and_small() {
        let v = weighted_laguerre(400, 2, 1600.0);
        assert!(v.is_finite());
        assert!(v.abs() < 1.0);
        // deep in the exponential tail
        let v = weighted_laguerre(100, 1, 5000.0);
        assert!(v.is_finite());
        assert!(v.abs() < 1e-100);
    }

    #[test]
    fn weighted_huge_degree_finite() {
        for &tau in &[0.5, 1e3, 4e6, 9e6] {
            let v = weighted_laguerre(1_000_000, 2, tau);
            assert!(v.is_finite(), "tau={tau} gave {v}");
        }
    }

    #[test]
    fn weighted_at_zero_equals_binomial() {
        for m in 0..=25u32 {
            for d in 1..=5u32 {
                if m + d > 30 {
                    continue;
                }
                let expect = crate::group::binomial(m + d - 1, m);
                assert_eq!(weighted_laguerre(m, d, 0.0), expect, "m={m} d={d}");
            }
        }
    }

    #[test]
    fn sweep_matches_single() {
        let tau = 7.3;
        let mut out = vec![0.0; 33];
        weighted_laguerre_sweep(32, 2, tau, &mut out);
        for m in 0..=32u32 {
            let single = weighted_laguerre(m, 3, tau);
            assert!(rel_err(out[m as usize], single) < 1e-12, "m={m}");
        }
    }

    #[test]
    fn euler_zeroth_power_is_identity() {
        let v = weighted_laguerre_euler(0, 3, 2, 1.1).unwrap();
        assert_eq!(v, weighted_laguerre(3, 2, 1.1));
    }

    #[test]
    fn euler_mode_zero_closed_form() {
        // m = 0: weighted function is e^{-tau/2}; Euler operator gives
        // -(tau/2) e^{-tau/2}, at tau = 2 this is -e^{-1}.
        let v = weighted_laguerre_euler(1, 0, 1, 2.0).unwrap();
        assert!(rel_err(v, -(-1.0f64).exp()) < 1e-14);
    }

    #[test]
    fn euler_matches_finite_difference() {
        let tau = 0.5;
        let h = 1e-6 * tau;
        let fd = tau * (weighted_laguerre(2, 2, tau + h) - weighted_laguerre(2, 2, tau - h))
            / (2.0 * h);
        let v = weighted_laguerre_euler(1, 2, 2, tau).unwrap();
        assert!(rel_err(v, fd) < 1e-5, "{v} vs fd {fd}");
    }

    #[test]
    fn euler_second_power_matches_finite_difference() {
        // (tau d/dtau)^2 via nested central differences of the first power
        let tau = 2.3;
        let h = 1e-5 * tau;
        let e1 = |t: f64| weighted_laguerre_euler(1, 4, 3, t).unwrap();
        let fd = tau * (e1(tau + h) - e1(tau - h)) / (2.0 * h);
        let v = weighted_laguerre_euler(2, 4, 3, tau).unwrap();
        assert!(rel_err(v, fd) < 1e-4, "{v} vs fd {fd}");
    }

    #[test]
    fn euler_rejects_alpha_above_d() {
        assert!(weighted_laguerre_euler(3, 2, 2, 1.0).is_err());
    }

    #[test]
    fn growth_bound_proxy() {
        // |(tau d/dtau)^alpha (L_m^{(d-1)} e^{-tau/2})| <= C (2m+d)^{d-1/4}:
        // the normalized sup must stop growing with m.
        for d in 1..=3u32 {
            for alpha in 0..=d {
                let (low, high) = growth_proxy(alpha, d, d as f64 - 0.25);
                assert!(
                    high <= 2.0 * low,
                    "d={d} alpha={alpha}: R(512)={high} > 2 R(64)={low}"
                );
            }
        }
    }

    #[test]
    fn growth_bound_proxy_sharper_below_d() {
        // for alpha <= d-1 the sharper normalizer (2m+d)^{d-1} works too
        for d in 1..=3u32 {
            for alpha in 0..d {
                let (low, high) = growth_proxy(alpha, d, d as f64 - 1.0);
                assert!(
                    high <= 2.0 * low,
                    "d={d} alpha={alpha}: R(512)={high} > 2 R(64)={low}"
                );
            }
        }
    }
}
