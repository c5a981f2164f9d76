//! Subcommand drivers: each `run_*` executes one verification suite against
//! an [`ExperimentConfig`] and returns a [`Summary`] of named verdicts plus
//! CSV/SVG artifacts for the caller to persist.

use std::time::Instant;

use num_complex::Complex64;

use crate::config::ExperimentConfig;
use crate::evolve::{self, SupRow};
use crate::group::GroupParams;
use crate::lp::LPSettings;
use crate::phase::{builtin_phase, check_hypotheses, PhaseFamily};
use crate::quad::panel_nodes;
use crate::report::{self, format_float, NamedFit, Summary, Verdict};
use crate::sharpness::{
    family_critical_point_closed_form, family_s0, find_critical_point, sharpness_integrand,
    sharpness_run, vdc_bound_check,
};
use crate::special;
use crate::spherical::{
    apply_multiplier, forward_transform, inverse_transform, plancherel_norm_sq, ForwardQuad,
    ModeCoefficients, Multiplier, SphericalCoefficients,
};
use crate::window::DyadicWindow;
use crate::{Error, Result};

/// Result of one subcommand: the run summary and the files it produced,
/// as (name, contents) pairs relative to the output directory.
pub struct RunOutput {
    pub summary: Summary,
    pub artifacts: Vec<(String, String)>,
}

fn summarize(command: &str, verdicts: Vec<Verdict>, fits: Vec<NamedFit>, start: Instant) -> Summary {
    Summary {
        command: command.to_string(),
        verdicts,
        fits,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    }
}

/// The three canonical phase families of the decay and sharpness suites.
fn canonical_families() -> [PhaseFamily; 3] {
    [
        PhaseFamily::FracSchrodinger { alpha: 0.5 },
        PhaseFamily::FracWave { alpha: 1.0 },
        PhaseFamily::FourthOrder,
    ]
}

fn family_slug(family: PhaseFamily) -> &'static str {
    match family {
        PhaseFamily::FracSchrodinger { .. } => "frac_schrodinger",
        PhaseFamily::FracWave { .. } => "frac_wave",
        PhaseFamily::FourthOrder => "fourth_order",
    }
}

fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    (0..count)
        .map(|i| lo * (hi / lo).powf(i as f64 / (count - 1) as f64))
        .collect()
}

/// Special-function oracle equivalence, the Laguerre growth proxy, the
/// phase power-law hypotheses, and the van der Corput constant.
pub fn run_verify_lemmas(_cfg: &ExperimentConfig) -> Result<RunOutput> {
    let start = Instant::now();
    let mut verdicts = Vec::new();

    let err = special::oracle_max_rel_err();
    verdicts.push(Verdict::new(
        "laguerre-oracle-equivalence",
        err < 1e-10,
        format!("recurrence vs series max rel error {err:.3e} (tolerance 1e-10)"),
    ));

    let mut worst_ratio = 0.0f64;
    for d in 1..=3u32 {
        for alpha in 0..=d {
            let (low, high) = special::growth_proxy(alpha, d, d as f64 - 0.25);
            worst_ratio = worst_ratio.max(high / low);
        }
    }
    verdicts.push(Verdict::new(
        "laguerre-growth-proxy",
        worst_ratio <= 2.0,
        format!("max R(512)/R(64) = {worst_ratio:.3} over alpha <= d <= 3 (bound 2)"),
    ));

    let mut hypotheses_pass = true;
    let mut detail = String::new();
    for family in canonical_families() {
        let phi = builtin_phase(family)?;
        phi.validate_derivatives(&[0.3, 1.0, 5.0])?;
        let rep = check_hypotheses(&phi)?;
        hypotheses_pass &= rep.all_pass();
        detail.push_str(&format!(
            "{}: {}; ",
            rep.label,
            if rep.all_pass() { "exponents match" } else { "MISMATCH" }
        ));
    }
    verdicts.push(Verdict::new("phase-hypotheses", hypotheses_pass, detail));

    // van der Corput constant for the stationary 1-D phase
    let family = PhaseFamily::FracSchrodinger { alpha: 0.5 };
    let s0 = family_s0(family, 1);
    let (integrand, _) = sharpness_integrand(family, 1, s0)?;
    let mut curvature_min = f64::INFINITY;
    for k in 0..=200 {
        let x = integrand.a + (integrand.b - integrand.a) * k as f64 / 200.0;
        curvature_min = curvature_min.min((integrand.phase_d2)(x).abs());
    }
    let ts = log_spaced(1e2, 1e5, 7);
    let worst = vdc_bound_check(&integrand, 0.99 * curvature_min, &ts)?;
    verdicts.push(Verdict::new(
        "vdc-bound",
        worst < 10.0,
        format!("normalized max {worst:.4} over t in [1e2, 1e5] (bound 10)"),
    ));

    Ok(RunOutput { summary: summarize("verify-lemmas", verdicts, vec![], start), artifacts: vec![] })
}

/// Partition of unity, evenness, and support of the dyadic window.
pub fn run_partition_check(_cfg: &ExperimentConfig) -> Result<RunOutput> {
    let start = Instant::now();
    let window = DyadicWindow::default();
    let mut verdicts = Vec::new();

    let lo: f64 = 2f64.powi(-20);
    let hi: f64 = 2f64.powi(20);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let tau = lo * (hi / lo).powf(i as f64 / 199.0);
        let mut sum = 0.0;
        for j in -24..=24 {
            sum += window.eval_at_scale(j, tau);
        }
        worst = worst.max((sum - 1.0).abs());
    }
    verdicts.push(Verdict::new(
        "partition-of-unity",
        worst < 1e-12,
        format!("max deviation {worst:.3e} on 200 points in [2^-20, 2^20] (tolerance 1e-12)"),
    ));

    let mut even_dev = 0.0f64;
    for i in 0..100 {
        let tau = 0.4 + 3.8 * i as f64 / 99.0;
        even_dev = even_dev.max((window.eval(tau) - window.eval(-tau)).abs());
    }
    verdicts.push(Verdict::new(
        "window-evenness",
        even_dev == 0.0,
        format!("max |R*(tau) - R*(-tau)| = {even_dev:.3e}"),
    ));

    let (inner, outer) = window.support();
    let support_ok = window.eval(inner) == 0.0
        && window.eval(outer) == 0.0
        && window.eval(0.5 * inner) == 0.0
        && window.eval(2.0 * outer) == 0.0
        && window.eval(1.0) > 0.0;
    verdicts.push(Verdict::new(
        "window-support",
        support_ok,
        format!("vanishes outside [{inner}, {outer}], positive inside"),
    ));

    Ok(RunOutput {
        summary: summarize("partition-check", verdicts, vec![], start),
        artifacts: vec![],
    })
}

/// Smooth band-limited test coefficients on modes 0..=2: a Gaussian bump
/// centered mid-grid, conjugate-symmetric in lambda. The bump is machine-zero
/// at the grid edges and its reconstruction decays like e^{-s^2/64} in s, so
/// the forward transform recovers the coefficients from a truncated domain.
fn band_limited_coefficients(g: &GroupParams) -> SphericalCoefficients {
    let modes = (0..=2u32)
        .map(|m| {
            let pos = panel_nodes(0.05, 3.0, 6);
            let mut nodes: Vec<f64> = pos.iter().rev().map(|&(x, _)| -x).collect();
            let mut weights: Vec<f64> = pos.iter().rev().map(|&(_, w)| w).collect();
            nodes.extend(pos.iter().map(|&(x, _)| x));
            weights.extend(pos.iter().map(|&(_, w)| w));
            let values = nodes
                .iter()
                .map(|&l| {
                    let a = l.abs();
                    let bump = (-16.0 * (a - 1.5) * (a - 1.5)).exp();
                    Complex64::new(bump * (1.0 + m as f64), 0.0)
                })
                .collect();
            ModeCoefficients { m, nodes, weights, values }
        })
        .collect();
    SphericalCoefficients { n: g.n, modes, tail_bound: 0.0 }
}

const KERNEL_HEADER: [&str; 6] = ["j", "r", "s", "re", "im", "quad_err"];

/// Kernel fields at t = 0, the dyadic scaling identity, the transform
/// round-trip, and the unimodular-evolution conservation laws.
pub fn run_kernel_eval(cfg: &ExperimentConfig) -> Result<RunOutput> {
    let start = Instant::now();
    let g = GroupParams::new(cfg.group.n)?;
    let window = DyadicWindow::default();
    let phi = builtin_phase(cfg.phase.family()?)?;
    let settings = cfg.evolve_settings();
    let mut verdicts = Vec::new();
    let mut csv_rows: Vec<Vec<String>> = Vec::new();

    // scaling identity: phi_j(r, s) = 2^{Nj} phi_0(2^j r, 4^j s) at t = 0
    let n_dim = g.homogeneous_dim as i32;
    let r0: Vec<f64> = (0..10).map(|i| 2.7 * i as f64 / 9.0).collect();
    let s0: Vec<f64> = (0..10).map(|i| 12.0 * i as f64 / 9.0).collect();
    let base = evolve::evolve_on_grid(&phi, 0.0, 0, &g, &window, &r0, &s0, &settings)?;
    let base_sup = base.values.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    let mut worst_rel = 0.0f64;
    for j in -2..=3 {
        let factor = 2f64.powi(n_dim * j);
        let rj: Vec<f64> = r0.iter().map(|r| r * 2f64.powi(-j)).collect();
        let sj: Vec<f64> = s0.iter().map(|s| s * 4f64.powi(-j)).collect();
        let field = evolve::evolve_on_grid(&phi, 0.0, j, &g, &window, &rj, &sj, &settings)?;
        for (si, &s) in sj.iter().enumerate() {
            for (ri, &r) in rj.iter().enumerate() {
                let got = field.at(ri, si);
                let expect = base.at(ri, si) * factor;
                worst_rel = worst_rel.max((got - expect).norm() / (base_sup * factor));
                csv_rows.push(vec![
                    j.to_string(),
                    format_float(r),
                    format_float(s),
                    format_float(got.re),
                    format_float(got.im),
                    format_float(field.quad_err),
                ]);
            }
        }
    }
    verdicts.push(Verdict::new(
        "scaling-identity",
        worst_rel < 1e-6,
        format!("max rel deviation {worst_rel:.3e} for j in -2..=3 (tolerance 1e-6)"),
    ));

    // transform round-trip on band-limited coefficients
    let c = band_limited_coefficients(&g);
    let mut f = inverse_transform(&c, &g);
    f.decay_radius = 10.0;
    f.s_extent = 40.0;
    let quad = ForwardQuad { panels_r: 8, panels_s: 24, tol: 1e-9, max_levels: 6 };
    let back = forward_transform(&f, &c.modes, &g, &quad)?;
    let coeff_scale: f64 = c
        .modes
        .iter()
        .flat_map(|m| m.values.iter().map(|v| v.norm()))
        .fold(0.0, f64::max);
    let mut round_worst = 0.0f64;
    for (ma, mb) in c.modes.iter().zip(&back.modes) {
        for (va, vb) in ma.values.iter().zip(&mb.values) {
            round_worst = round_worst.max((va - vb).norm() / coeff_scale);
        }
    }
    verdicts.push(Verdict::new(
        "transform-round-trip",
        round_worst < 1e-6,
        format!("max rel coefficient error {round_worst:.3e} (tolerance 1e-6)"),
    ));

    // unimodular evolution: Plancherel conservation and the group property
    let evolution = |t: f64| {
        let p = phi.clone();
        Multiplier::evolution(move |x| p.value(x), t)
    };
    let (t1, t2) = (7.3, -2.1);
    let before = plancherel_norm_sq(&c, &g);
    let c1 = apply_multiplier(&c, &evolution(t1), &g);
    let after = plancherel_norm_sq(&c1, &g);
    let plancherel_dev = (before - after).abs() / before;
    verdicts.push(Verdict::new(
        "plancherel-invariance",
        plancherel_dev <= 1e-13,
        format!("relative norm drift {plancherel_dev:.3e} (tolerance 1e-13)"),
    ));
    let composed = apply_multiplier(&c1, &evolution(t2), &g);
    let direct = apply_multiplier(&c, &evolution(t1 + t2), &g);
    let mut group_worst = 0.0f64;
    for (ma, mb) in composed.modes.iter().zip(&direct.modes) {
        for (va, vb) in ma.values.iter().zip(&mb.values) {
            group_worst = group_worst.max((va - vb).norm() / coeff_scale);
        }
    }
    verdicts.push(Verdict::new(
        "group-property",
        group_worst <= 1e-13,
        format!("max rel deviation of U_t1 U_t2 vs U_(t1+t2): {group_worst:.3e} (tolerance 1e-13)"),
    ));

    let csv = report::render_csv(&KERNEL_HEADER, &csv_rows);
    Ok(RunOutput {
        summary: summarize("kernel-eval", verdicts, vec![], start),
        artifacts: vec![("kernel_eval.csv".to_string(), csv)],
    })
}

struct DecaySuite {
    verdicts: Vec<Verdict>,
    fits: Vec<NamedFit>,
    rows: Vec<SupRow>,
    svg: String,
}

/// Time-decay regression per configured j, plus the dyadic-scaling
/// regression over j in -2..=2 at the geometric-mean time.
fn decay_suite(cfg: &ExperimentConfig, family: PhaseFamily) -> Result<DecaySuite> {
    let g = GroupParams::new(cfg.group.n)?;
    let window = DyadicWindow::default();
    let phi = builtin_phase(family)?;
    let settings = cfg.evolve_settings();
    let ts = cfg.experiment.t_list();
    let mut verdicts = Vec::new();
    let mut fits = Vec::new();
    let mut rows: Vec<SupRow> = Vec::new();
    let mut svg = String::new();

    for &j in &cfg.experiment.j_list {
        let (fit, j_rows) = evolve::decay_fit(&phi, j, &ts, &g, &window, &settings)?;
        let name = format!("decay-slope-{}-j{}", family_slug(family), j);
        verdicts.push(Verdict::new(
            &name,
            (-0.55..=-0.45).contains(&fit.slope),
            format!(
                "ln-sup vs ln-t slope {:.4} +/- {:.4} for {} (expected in [-0.55, -0.45])",
                fit.slope, fit.slope_half_width, phi.label
            ),
        ));
        fits.push(NamedFit::new(&name, &fit));
        if svg.is_empty() {
            let points: Vec<(f64, f64)> =
                j_rows.iter().map(|r| (r.t.ln(), r.sup.ln())).collect();
            svg = report::svg_loglog(
                &format!("sup-norm decay, {}", phi.label),
                "ln t",
                "ln sup",
                &points,
                Some(&fit),
            );
        }
        rows.extend(j_rows);
    }

    let t_mid = (cfg.experiment.t_min * cfg.experiment.t_max).sqrt();
    let js = [-2, -1, 0, 1, 2];
    let (scale, scale_rows) = evolve::scale_fit(&phi, t_mid, &js, &g, &window, &settings)?;
    let expected = g.homogeneous_dim as f64 - phi.declared.map(|d| d.alpha1).unwrap_or(0.0);
    let name = format!("dyadic-scaling-{}", family_slug(family));
    verdicts.push(Verdict::new(
        &name,
        (scale.slope - expected).abs() <= 0.05 * expected,
        format!(
            "ln(sup t^1/2) vs j ln2 slope {:.4} vs expected {expected:.2} at t = {t_mid:.0} (5% tolerance)",
            scale.slope
        ),
    ));
    fits.push(NamedFit::new(&name, &scale));
    rows.extend(scale_rows);

    Ok(DecaySuite { verdicts, fits, rows, svg })
}

/// The theta = 0 bound sup|U_t phi_j| <= 1.01 * 2^{Nj} ||phi_0||_inf over
/// every measured (t, j) row.
fn theta_zero_verdict(
    rows: &[SupRow],
    cfg: &ExperimentConfig,
    family: PhaseFamily,
) -> Result<Verdict> {
    let g = GroupParams::new(cfg.group.n)?;
    let window = DyadicWindow::default();
    let phi = builtin_phase(family)?;
    let settings = cfg.evolve_settings();
    let phi0 = evolve::sup_norm(&phi, 0.0, 0, &g, &window, &settings)?;
    let n_dim = g.homogeneous_dim as f64;
    let mut worst = 0.0f64;
    for row in rows {
        worst = worst.max(row.sup / (2f64.powf(n_dim * row.j as f64) * phi0.value));
    }
    Ok(Verdict::new(
        "theta-zero-bound",
        worst <= 1.01,
        format!("max sup / (2^Nj ||phi_0||_inf) = {worst:.5} over all rows (bound 1.01)"),
    ))
}

/// Byte-compares the sup CSV from a fixed small workload computed in local
/// thread pools of size 1 and 4.
fn determinism_verdict(family: PhaseFamily) -> Result<Verdict> {
    let phi = builtin_phase(family)?;
    let g = GroupParams::new(1)?;
    let window = DyadicWindow::default();
    let settings = evolve::EvolveSettings {
        m_max: 6,
        r_points: 24,
        s_points: 65,
        panel_budget: 1 << 18,
        theta_scale: 1.0,
    };
    let ts = log_spaced(20.0, 200.0, 6);
    let mut outputs = Vec::new();
    for threads in [1usize, 4] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?;
        let (_, rows) = pool.install(|| evolve::decay_fit(&phi, 0, &ts, &g, &window, &settings))?;
        outputs.push(report::render_csv(&report::SUP_HEADER, &report::sup_rows(&rows)));
    }
    let pass = outputs[0] == outputs[1];
    Ok(Verdict::new(
        "determinism",
        pass,
        if pass {
            "sup CSV byte-identical across thread counts {1, 4}".to_string()
        } else {
            "sup CSV differs across thread counts {1, 4}".to_string()
        },
    ))
}

/// Time-decay and dyadic-scaling regressions for the configured family,
/// the theta = 0 bound, and the determinism contract.
pub fn run_decay_fit(cfg: &ExperimentConfig) -> Result<RunOutput> {
    let start = Instant::now();
    let family = cfg.phase.family()?;
    let suite = decay_suite(cfg, family)?;
    let mut verdicts = suite.verdicts;
    verdicts.push(theta_zero_verdict(&suite.rows, cfg, family)?);
    verdicts.push(determinism_verdict(family)?);
    let csv = report::render_csv(&report::SUP_HEADER, &report::sup_rows(&suite.rows));
    Ok(RunOutput {
        summary: summarize("decay-fit", verdicts, suite.fits, start),
        artifacts: vec![
            ("decay_fit.csv".to_string(), csv),
            ("decay_fit.svg".to_string(), suite.svg),
        ],
    })
}

const SHARPNESS_HEADER: [&str; 7] =
    ["family", "n", "t", "magnitude", "normalized", "leading", "ratio"];

/// Critical points vs closed forms, t^{1/2}-normalized magnitudes, and the
/// stationary-phase leading-term ratio for all families, n in {1, 2}.
pub fn run_sharpness(_cfg: &ExperimentConfig) -> Result<RunOutput> {
    let start = Instant::now();
    let ts = log_spaced(1e3, 1e5, 9);
    let mut csv_rows: Vec<Vec<String>> = Vec::new();
    let mut cp_worst = 0.0f64;
    let mut var_worst = 0.0f64;
    let mut ratio_worst = 0.0f64;
    for n in [1u32, 2] {
        for family in canonical_families() {
            let s0 = family_s0(family, n);
            let (integrand, _) = sharpness_integrand(family, n, s0)?;
            let cp = find_critical_point(
                |l| (integrand.phase_d1)(l),
                |l| (integrand.phase_d2)(l),
                (integrand.a, integrand.b),
            )?;
            let closed = family_critical_point_closed_form(family, n, s0);
            cp_worst = cp_worst.max((cp.location - closed).abs() / closed.abs());
            let rows = sharpness_run(family, n, &ts)?;
            let norm_max = rows.iter().map(|r| r.normalized).fold(0.0f64, f64::max);
            let norm_min = rows.iter().map(|r| r.normalized).fold(f64::INFINITY, f64::min);
            var_worst = var_worst.max(norm_max / norm_min - 1.0);
            let last = rows.last().expect("nonempty t-list");
            ratio_worst = ratio_worst.max((last.ratio - 1.0).abs());
            for row in &rows {
                csv_rows.push(vec![
                    family_slug(family).to_string(),
                    n.to_string(),
                    format_float(row.t),
                    format_float(row.magnitude),
                    format_float(row.normalized),
                    format_float(row.leading),
                    format_float(row.ratio),
                ]);
            }
        }
    }
    let verdicts = vec![
        Verdict::new(
            "critical-points-closed-form",
            cp_worst < 1e-10,
            format!("max rel deviation {cp_worst:.3e} over 3 families x n in {{1, 2}} (tolerance 1e-10)"),
        ),
        Verdict::new(
            "sharpness-normalized-variation",
            var_worst < 0.10,
            format!("max variation of t^1/2 |u| over [1e3, 1e5]: {var_worst:.4} (bound 0.10)"),
        ),
        Verdict::new(
            "sharpness-leading-term",
            ratio_worst < 0.02,
            format!("max |ratio - 1| at t = 1e5: {ratio_worst:.4} (bound 0.02)"),
        ),
    ];
    let csv = report::render_csv(&SHARPNESS_HEADER, &csv_rows);
    Ok(RunOutput {
        summary: summarize("sharpness", verdicts, vec![], start),
        artifacts: vec![("sharpness.csv".to_string(), csv)],
    })
}

const RATIO_HEADER: [&str; 4] = ["t", "sup", "besov", "ratio"];

/// Boundedness of sup|U_t u0| t^{1/2} / ||u0||_Besov across the t-list.
pub fn run_dispersive_ratio(cfg: &ExperimentConfig) -> Result<RunOutput> {
    let start = Instant::now();
    let g = GroupParams::new(cfg.group.n)?;
    let window = DyadicWindow::default();
    let phi = builtin_phase(cfg.phase.family()?)?;
    // datum and fields share one truncation so the inequality is measured
    // on a single well-defined function
    let m_max = cfg.tolerances.m_max.min(16);
    let lp_settings = LPSettings { panels_per_mode: 2, m_max };
    let mut settings = cfg.evolve_settings();
    settings.m_max = m_max;
    let alpha1 = phi.declared.map(|d| d.alpha1).unwrap_or(1.0);
    let rho = g.homogeneous_dim as f64 - alpha1;
    let rows = evolve::dispersive_ratio(
        &phi,
        rho,
        &cfg.experiment.j_list,
        &cfg.experiment.t_list(),
        &g,
        &window,
        &settings,
        &lp_settings,
    )?;
    let ratio_max = rows.iter().map(|r| r.ratio).fold(0.0f64, f64::max);
    let ratio_min = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let pass = ratio_max.is_finite() && ratio_max / ratio_min < 3.0;
    let verdicts = vec![Verdict::new(
        "dispersive-ratio-bounded",
        pass,
        format!(
            "sup t^1/2 / Besov(rho = {rho:.2}) in [{ratio_min:.4e}, {ratio_max:.4e}], spread {:.3} (bound 3)",
            ratio_max / ratio_min
        ),
    )];
    let csv_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                format_float(r.t),
                format_float(r.sup),
                format_float(r.besov),
                format_float(r.ratio),
            ]
        })
        .collect();
    let csv = report::render_csv(&RATIO_HEADER, &csv_rows);
    Ok(RunOutput {
        summary: summarize("dispersive-ratio", verdicts, vec![], start),
        artifacts: vec![("dispersive_ratio.csv".to_string(), csv)],
    })
}

/// The full acceptance suite: every other subcommand, with the decay
/// regressions run for all three canonical families.
pub fn run_all(cfg: &ExperimentConfig) -> Result<RunOutput> {
    let start = Instant::now();
    let mut verdicts = Vec::new();
    let mut fits = Vec::new();
    let mut artifacts = Vec::new();

    for out in [run_verify_lemmas(cfg)?, run_partition_check(cfg)?, run_kernel_eval(cfg)?] {
        verdicts.extend(out.summary.verdicts);
        fits.extend(out.summary.fits);
        artifacts.extend(out.artifacts);
    }

    let mut all_rows: Vec<SupRow> = Vec::new();
    for family in canonical_families() {
        let suite = decay_suite(cfg, family)?;
        verdicts.extend(suite.verdicts);
        fits.extend(suite.fits);
        let csv = report::render_csv(&report::SUP_HEADER, &report::sup_rows(&suite.rows));
        artifacts.push((format!("decay_fit_{}.csv", family_slug(family)), csv));
        artifacts.push((format!("decay_fit_{}.svg", family_slug(family)), suite.svg));
        all_rows.extend(suite.rows);
    }
    verdicts.push(theta_zero_verdict(&all_rows, cfg, cfg.phase.family()?)?);
    verdicts.push(determinism_verdict(cfg.phase.family()?)?);

    for out in [run_sharpness(cfg)?, run_dispersive_ratio(cfg)?] {
        verdicts.extend(out.summary.verdicts);
        fits.extend(out.summary.fits);
        artifacts.extend(out.artifacts);
    }

    Ok(RunOutput { summary: summarize("all", verdicts, fits, start), artifacts })
}
