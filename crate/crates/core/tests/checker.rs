use std::path::PathBuf;

use att_core::{
    bench_family, check_document, check_judgment, check_source, parse_document, replay_checked,
    Ctx, Judgment, Reason, Rule, Signature, Subject, Tm, Ty,
};

fn corpus(sub: &str) -> Vec<PathBuf> {
    let dir = PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus")).join(sub);
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "att"))
        .collect();
    files.sort();
    files
}

fn reason(src: &str) -> Reason {
    let doc = parse_document(src).unwrap();
    let last = check_document(&doc).pop().unwrap();
    last.result.err().expect("the judgment is rejected").reason
}

#[test]
fn accept_corpus_checks_and_replays() {
    let files = corpus("");
    assert!(files.len() >= 25);
    for path in files {
        let src = std::fs::read_to_string(&path).unwrap();
        let doc = parse_document(&src).unwrap();
        for r in check_document(&doc) {
            let c = r
                .result
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(c.derivation.conclusion, r.item.judgment);
            replay_checked(&c, &doc.signature)
                .unwrap_or_else(|e| panic!("{}: replay failed: {e}", path.display()));
        }
    }
}

#[test]
fn reject_corpus_fails_on_the_last_judgment() {
    let files = corpus("reject");
    assert!(files.len() >= 10);
    for path in files {
        let src = std::fs::read_to_string(&path).unwrap();
        let expect = src
            .lines()
            .find_map(|l| l.strip_prefix("-- expect:"))
            .unwrap()
            .trim()
            .to_string();
        let doc = parse_document(&src).unwrap();
        let mut reports = check_document(&doc);
        let last = reports.pop().unwrap();
        assert!(reports.iter().all(|r| r.result.is_ok()), "{}", path.display());
        let msg = last.result.err().unwrap().to_string();
        assert!(msg.contains(&expect), "{}: {msg}", path.display());
    }
}

#[test]
fn every_rule_is_exercised_by_the_corpus() {
    let mut seen = std::collections::BTreeSet::new();
    for path in corpus("") {
        let src = std::fs::read_to_string(&path).unwrap();
        for c in check_source(&src).unwrap() {
            seen.extend(c.rule_counts().into_keys());
        }
    }
    let missing: Vec<_> = Rule::all_labels()
        .into_iter()
        .filter(|l| !seen.contains(l))
        .collect();
    assert!(missing.is_empty(), "{missing:?}");
}

#[test]
fn reasons_are_specific() {
    assert!(matches!(
        reason("type A\ntype B\nx:A |- x : B\n"),
        Reason::TypeMismatch { .. }
    ));
    assert!(matches!(
        reason("type A\n|- lam x. x : A\n"),
        Reason::ExpectedForm { expected: "Pi-type", .. }
    ));
    assert!(matches!(
        reason("type A\nx:A |- ev(lam y. y, x) : A\n"),
        Reason::CannotSynthesize
    ));
    assert!(matches!(
        reason("type A\nx:A, y:A |- ev(x, y) : A\n"),
        Reason::ExpectedForm { expected: "Pi-type", .. }
    ));
    assert!(matches!(
        reason("type A\nx:A, y:A |- x == y : A\n"),
        Reason::NotDefEq { .. }
    ));
    assert!(matches!(
        reason("type A\nb:A, x:A |- J(u v w. A, z. b, x, x, r(x)) == b : A\n"),
        Reason::NoJudgmentalComputation { .. }
    ));
}

#[test]
fn abstract_syntax_is_scope_checked() {
    let sig = Signature::with_types(&["A"]);
    let ctx = Ctx::empty().push("x", Ty::base("A"));
    let undeclared = Judgment::new(ctx.clone(), Subject::Type(Ty::base("C")));
    let e = check_judgment(&undeclared, &sig).unwrap_err();
    assert_eq!(e.reason, Reason::UnknownBaseType("C".into()));
    let unbound = Judgment::new(ctx, Subject::Term(Tm::Var(3), Ty::base("A")));
    let e = check_judgment(&unbound, &sig).unwrap_err();
    assert_eq!(e.reason, Reason::UnboundVariable(3));
}

#[test]
fn derivations_name_their_rules() {
    let c = &check_source("type A\nx:A |- r(x) : Id(A, x, x)\n").unwrap()[0];
    assert_eq!(c.derivation.rule.label(), "Id-Intro");
    let counts = c.rule_counts();
    assert_eq!(counts.get("Var"), Some(&3));
    assert_eq!(counts.get("Ctx-Ext"), Some(&1));
    assert_eq!(counts.get("Ctx-Empty"), Some(&1));

    let c = &check_source("type A\nx:A, e:Id(A, (x : A), x) |- e : Id(A, x, x)\n").unwrap()[0];
    assert_eq!(c.derivation.rule.label(), "Conv");
    assert_eq!(c.derivation.premises[0].rule.label(), "Var");
}

#[test]
fn annotations_are_invisible_to_definitional_equality() {
    let ok = check_source("type A\nx:A |- (x : A) == x : A\n");
    assert!(ok.is_ok());
}

#[test]
fn benchmark_derivations_grow_at_most_quadratically() {
    let size = |n| {
        let doc = bench_family(n);
        check_document(&doc)
            .into_iter()
            .map(|r| r.result.unwrap().size())
            .sum::<usize>()
    };
    let (a, b) = (size(64), size(128));
    let ratio = b as f64 / a as f64;
    assert!((2.0..4.5).contains(&ratio), "ratio {ratio}");
}
