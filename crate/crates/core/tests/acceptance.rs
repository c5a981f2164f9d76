//! The acceptance gate: runs the full verification suite at the default
//! configuration and prints one PASS/FAIL line per criterion. Every
//! criterion aggregates the named verdicts produced by the harness; the
//! test fails if any criterion fails or a criterion matches no verdict.

use hgwave::config::ExperimentConfig;
use hgwave::harness::run_all;

/// (criterion label, verdict-name prefixes that must all pass).
const CRITERIA: [(&str, &[&str]); 11] = [
    (
        "01 Laguerre oracle equivalence and growth proxy",
        &["laguerre-oracle-equivalence", "laguerre-growth-proxy"],
    ),
    ("02 partition of unity", &["partition-of-unity"]),
    ("03 dyadic scaling identity at t = 0", &["scaling-identity"]),
    ("04 transform round-trip", &["transform-round-trip"]),
    (
        "05 unimodular conservation and group property",
        &["plancherel-invariance", "group-property"],
    ),
    ("06 time-decay exponent -1/2, all families", &["decay-slope-"]),
    ("07 dyadic scaling exponent N - alpha1", &["dyadic-scaling-"]),
    ("08 theta = 0 sup bound", &["theta-zero-bound"]),
    (
        "09 sharpness: critical points and leading term",
        &[
            "critical-points-closed-form",
            "sharpness-normalized-variation",
            "sharpness-leading-term",
        ],
    ),
    ("10 van der Corput bound", &["vdc-bound"]),
    ("11 determinism across thread counts", &["determinism"]),
];

#[test]
fn acceptance_criteria() {
    let cfg = ExperimentConfig::default();
    let out = run_all(&cfg).expect("acceptance suite must run to completion");
    let verdicts = &out.summary.verdicts;

    let mut all_ok = true;
    for (label, prefixes) in CRITERIA {
        let mut ok = true;
        let mut details = Vec::new();
        for prefix in prefixes {
            let matched: Vec<_> =
                verdicts.iter().filter(|v| v.criterion.starts_with(prefix)).collect();
            if matched.is_empty() {
                ok = false;
                details.push(format!("no verdict named {prefix}*"));
                continue;
            }
            for v in matched {
                ok &= v.pass;
                details.push(format!("{}: {}", v.criterion, v.detail));
            }
        }
        println!(
            "criterion {label}: {} - {}",
            if ok { "PASS" } else { "FAIL" },
            details.join("; ")
        );
        all_ok &= ok;
    }

    // the harness also emits supporting verdicts (phase hypotheses, window
    // shape, dispersive ratio); they are part of the full suite and must
    // hold as well
    for v in verdicts {
        if !v.pass {
            println!("supporting verdict {}: FAIL - {}", v.criterion, v.detail);
        }
        all_ok &= v.pass;
    }

    assert!(all_ok, "acceptance criteria failed:\n{}", out.summary.to_json());
}
