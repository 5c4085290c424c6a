use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use att_cli::{att_files, bench, coverage, with_deep_stack};
use att_core::redex::contract;
use att_core::subst::erase_tm;
use att_core::{
    check_document, check_judgment, defeq_tm, parse_document, Judgment, Subject, Tm, Ty,
};
use att_interp::{redex_witness, soundness, Interpreter};
use att_model::format::Model;
use att_model::shipped;
use att_model::verify::{comp_rule_counterexample, verify_model, SuiteOptions, SuiteReport};

type Outcome = Result<String, String>;

fn corpus() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus"))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rule_coverage() -> Outcome {
    let c = coverage(&corpus()).map_err(|e| e.to_string())?;
    let bad: Vec<_> = c.accept.iter().chain(&c.reject).filter(|f| !f.ok).collect();
    ensure(bad.is_empty(), format!("failing files: {bad:?}"))?;
    ensure(c.missing_rules.is_empty(), format!("missing {:?}", c.missing_rules))?;
    ensure(c.accept.len() >= 25, "fewer than 25 accept files")?;
    ensure(c.reject.len() >= 10, "fewer than 10 reject files")?;
    ensure(c.seconds < 5.0, format!("{:.2} s", c.seconds))?;
    Ok(format!(
        "{} accept, {} reject, {} rules, {:.3} s",
        c.accept.len(),
        c.reject.len(),
        c.rule_counts.len(),
        c.seconds
    ))
}

fn is_axiom(t: &Tm) -> bool {
    matches!(
        t,
        Tm::H { .. }
            | Tm::SigmaComp { .. }
            | Tm::Beta { .. }
            | Tm::Beta1 { .. }
            | Tm::Beta2Bot { .. }
            | Tm::Beta2Top { .. }
            | Tm::BetaN0 { .. }
            | Tm::BetaNs { .. }
    )
}

/// Every computation axiom in the accept corpus relates a redex to its
/// contractum, and the checker refuses the corresponding equation.
fn no_computation() -> Outcome {
    let mut pairs = 0;
    for path in att_files(&corpus()).map_err(|e| e.to_string())? {
        let doc = parse_document(&std::fs::read_to_string(&path).unwrap()).unwrap();
        for r in check_document(&doc) {
            let j = &r.item.judgment;
            let Subject::Term(t, Ty::Id(c, l, rt)) = &j.subject else {
                continue;
            };
            if !is_axiom(t) {
                continue;
            }
            let name = path.display();
            ensure(r.result.is_ok(), format!("{name}: axiom does not check"))?;
            ensure(!defeq_tm(l, rt), format!("{name}: sides are defeq"))?;
            ensure(
                contract(&erase_tm(l)).map(|x| erase_tm(&x)) == Some(erase_tm(rt)),
                format!("{name}: sides are not a redex pair"),
            )?;
            let eq = Judgment::new(
                j.ctx.clone(),
                Subject::TermEq((**l).clone(), (**rt).clone(), (**c).clone()),
            );
            match check_judgment(&eq, &doc.signature) {
                Err(e) if e.is_no_computation() => pairs += 1,
                Err(e) => return Err(format!("{name}: wrong rejection: {e}")),
                Ok(_) => return Err(format!("{name}: equation accepted")),
            }
        }
    }
    ensure(pairs >= 9, format!("only {pairs} redex pairs"))?;
    Ok(format!("{pairs} redex pairs rejected judgmentally, all axioms check"))
}

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

fn suites() -> Result<Vec<(Model, SuiteReport, f64)>, String> {
    shipped::all()
        .into_iter()
        .map(|m| {
            let t = Instant::now();
            let r = verify_model(&m, &SuiteOptions::default()).map_err(|e| e.to_string())?;
            Ok((m, r, t.elapsed().as_secs_f64()))
        })
        .collect()
}

fn model_axioms(suites: &[(Model, SuiteReport, f64)]) -> Outcome {
    ensure(suites.len() >= 3, "fewer than 3 models")?;
    let mut seconds = 0.0;
    for (m, r, s) in suites {
        seconds += s;
        ensure(r.ok(), format!("{}: {} failures", m.name, r.failures()))?;
        let checks = r.checks();
        for c in REQUIRED {
            ensure(checks.iter().any(|x| x == c), format!("{}: {c} missing", m.name))?;
        }
        for (name, g) in &m.groupoids {
            ensure(g.mor_count() <= 64, format!("{}: {name} too large", m.name))?;
        }
    }
    ensure(seconds < 30.0, format!("{seconds:.1} s"))?;
    let instances: usize = suites.iter().map(|(_, r, _)| r.instances()).sum();
    Ok(format!(
        "{} models, {} checks each, {instances} instances, {seconds:.2} s",
        suites.len(),
        REQUIRED.len()
    ))
}

fn counterexample() -> Outcome {
    let ce = comp_rule_counterexample(&shipped::counterexample()).map_err(|e| e.to_string())?;
    ensure(!ce.functor_eq, "J_c[r_A] equals c")?;
    ensure(
        ce.h_section.ok() && ce.h_section.instances > 0,
        "H_c is not a verified section",
    )?;
    let w = redex_witness(&shipped::counterexample()).map_err(|e| e.to_string())?;
    ensure(!w.functor_eq && w.axiom_interprets, "the syntactic redex collapses")?;
    ensure(w.rejection.contains("no judgmental computation"), w.rejection.clone())?;
    Ok(format!(
        "functor_eq = false, first difference {}",
        ce.first_difference.unwrap_or_default()
    ))
}

fn structure_entries(
    suites: &[(Model, SuiteReport, f64)],
    structure: &str,
    models: &[&str],
) -> Outcome {
    let mut instances = 0;
    for name in models {
        let (_, r, _) = suites
            .iter()
            .find(|(m, _, _)| m.name == *name)
            .ok_or(format!("no model {name}"))?;
        let entries: Vec<_> = r
            .entries
            .iter()
            .filter(|e| e.report.structure == structure)
            .collect();
        ensure(!entries.is_empty(), format!("{name}: no {structure} entries"))?;
        for e in entries {
            ensure(e.report.ok(), format!("{name}: {}", e.report))?;
            instances += e.report.instances;
        }
    }
    ensure(instances > 0, "no instances")?;
    Ok(format!("{} models, {instances} instances", models.len()))
}

/// Soundness on every corpus file, in every shipped model that declares
/// the file's base types.
fn soundness_on_corpus() -> Outcome {
    let mut runs = 0;
    let (mut eqs, mut moves, mut judgments) = (0, 0, 0);
    for path in att_files(&corpus()).map_err(|e| e.to_string())? {
        let doc = parse_document(&std::fs::read_to_string(&path).unwrap()).unwrap();
        for m in shipped::all() {
            if !Interpreter::new(&m, &doc.signature).covers_signature() {
                continue;
            }
            let r = soundness(&doc, &m);
            ensure(r.ok(), format!("{}: {r}", path.display()))?;
            if r.interpreted > 0 {
                runs += 1;
            }
            judgments += r.interpreted;
            eqs += r.count("equality holds");
            moves += r.count("weakening") + r.count("substitution");
        }
    }
    ensure(runs > 0 && eqs > 0 && moves > 0, "nothing was interpreted")?;
    Ok(format!(
        "{runs} file/model runs, {judgments} judgments, {eqs} equalities, {moves} weakening and substitution squares"
    ))
}

fn benchmark() -> Outcome {
    let r = bench(&[64, 128, 256, 512], 3)?;
    ensure(r.exponent <= 2.5, format!("exponent {:.3}", r.exponent))?;
    ensure(r.total_seconds < 60.0, format!("{:.1} s", r.total_seconds))?;
    Ok(format!(
        "exponent {:.3}, total {:.2} s",
        r.exponent, r.total_seconds
    ))
}

#[test]
fn acceptance_criteria() {
    let suites = suites();
    let results: Vec<(&str, Outcome)> = vec![
        ("rule coverage", with_deep_stack(rule_coverage)),
        ("no judgmental computation", with_deep_stack(no_computation)),
        (
            "model axiom suite",
            suites.as_ref().map_err(Clone::clone).and_then(|s| model_axioms(s)),
        ),
        ("computation-rule counterexample", counterexample()),
        (
            "normal collapse on strict models",
            suites.as_ref().map_err(Clone::clone).and_then(|s| {
                structure_entries(s, "normal collapse", &["strict", "counterexample"])
            }),
        ),
        (
            "discreteness of identity types",
            suites.as_ref().map_err(Clone::clone).and_then(|s| {
                let names: Vec<&str> = s.iter().map(|(m, _, _)| m.name.as_str()).collect();
                structure_entries(s, "discreteness", &names)
            }),
        ),
        ("soundness on the corpus", with_deep_stack(soundness_on_corpus)),
        ("checker scaling", benchmark()),
    ];
    let mut failed = Vec::new();
    for (k, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {} ({name}): pass: {detail}", k + 1),
            Err(why) => {
                println!("criterion {} ({name}): FAIL: {why}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

fn att(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_att"))
        .args(args)
        .current_dir(corpus())
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

#[test]
fn binary_exit_codes() {
    assert_eq!(att(&["check", "refl.att"]).0, 0);
    let (code, out) = att(&["check", "reject/j-conversion.att"]);
    assert_eq!(code, 1);
    assert!(out.contains("no judgmental computation"), "{out}");
    assert_eq!(att(&["check", "missing.att"]).0, 2);
    assert_eq!(att(&["no-such-command"]).0, 2);
    assert_eq!(att(&["coverage", "."]).0, 0);
    let (code, out) = att(&["counterexample"]);
    assert_eq!(code, 0);
    assert!(out.contains("false"), "{out}");
}

#[test]
fn json_reports_parse() {
    let (code, out) = att(&["--report", "json", "soundness", "refl.att", "--model", "strict"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}"));
    assert!(v.is_object() || v.is_array());
}
