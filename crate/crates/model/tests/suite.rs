use std::time::{Duration, Instant};

use att_model::shipped;
use att_model::verify::{verify_model, SuiteOptions};

const REQUIRED: &[&str] = &[
    "pseudofunctor",
    "total groupoid",
    "splitness",
    "pullback square",
    "cloven transport",
    "cleavage",
    "transport stability",
    "normality",
    "identity structure",
    "arrow object",
    "arrow object naturality",
    "factorization",
    "pairing naturality",
    "elimination",
    "stability",
    "discreteness",
];

#[test]
fn every_shipped_model_passes_the_whole_suite() {
    let start = Instant::now();
    for m in shipped::all() {
        let r = verify_model(&m, &SuiteOptions::default()).unwrap();
        for e in &r.entries {
            assert!(e.report.ok(), "{} / {}: {}", m.name, e.display_map, e.report);
        }
        let checks = r.checks();
        for c in REQUIRED {
            assert!(checks.iter().any(|x| x == c), "{}: {c} missing", m.name);
        }
        assert!(r.instances() > 1000);
        for (_, g) in &m.groupoids {
            assert!(g.mor_count() <= 64);
        }
    }
    assert!(start.elapsed() < Duration::from_secs(30));
}

#[test]
fn strict_models_run_the_normal_collapse_check() {
    for m in [shipped::strict(), shipped::counterexample()] {
        let r = verify_model(&m, &SuiteOptions::default()).unwrap();
        let collapse: Vec<_> = r
            .entries
            .iter()
            .filter(|e| e.report.structure == "normal collapse")
            .collect();
        assert!(!collapse.is_empty(), "{}", m.name);
        assert!(collapse.iter().all(|e| e.report.ok() && e.report.instances > 0));
    }
}

#[test]
fn some_shipped_model_is_not_normal() {
    let r = verify_model(&shipped::nonnormal(), &SuiteOptions::default()).unwrap();
    let witnessed = r.notes.iter().any(|n| {
        n.contains("transports along identity 2-cells are nontrivial") && !n.contains(": 0 of")
    });
    assert!(witnessed, "{:?}", r.notes);
}

#[test]
fn reports_are_deterministic_for_a_seed() {
    let opts = SuiteOptions {
        seed: 11,
        ..SuiteOptions::default()
    };
    let a = serde_json::to_string(&verify_model(&shipped::twisted(), &opts).unwrap()).unwrap();
    let b = serde_json::to_string(&verify_model(&shipped::twisted(), &opts).unwrap()).unwrap();
    assert_eq!(a, b);
}
