use att_core::redex::contract;
use att_core::subst::erase_tm;
use att_core::{check_judgment, defeq_tm, parse_document, parse_judgment, Document, Subject, Tm};
use proptest::prelude::*;

/// One computation axiom: its context, the axiom term, the motive type and
/// the two sides it relates.
struct Redex {
    name: &'static str,
    ctx: &'static str,
    axiom: &'static str,
    ty: &'static str,
    lhs: &'static str,
    rhs: &'static str,
}

const SIG: &str = "type A\ntype B\n";

const REDEXES: &[Redex] = &[
    Redex {
        name: "J on refl",
        ctx: "b:B, x:A",
        axiom: "H(u v w. B, z. b, x)",
        ty: "B",
        lhs: "J(u v w. B, z. b, x, x, r(x))",
        rhs: "b",
    },
    Redex {
        name: "J on refl, dependent motive",
        ctx: "x:A",
        axiom: "H(u v w. Id(A, v, u), z. r(z), x)",
        ty: "Id(A, x, x)",
        lhs: "J(u v w. Id(A, v, u), z. r(z), x, x, r(x))",
        rhs: "r(x)",
    },
    Redex {
        name: "split on pair",
        ctx: "x:A, b:B",
        axiom: "sigma(Sigma y:A. B, z. A, a c. a, x, b)",
        ty: "A",
        lhs: "split(z. A, a c. a, (pair(x, b) : Sigma y:A. B))",
        rhs: "x",
    },
    Redex {
        name: "application of a lambda",
        ctx: "b:B, a:A",
        axiom: "beta(x. b, a)",
        ty: "B",
        lhs: "ev((lam x. b : Pi x:A. B), a)",
        rhs: "b",
    },
    Redex {
        name: "ind1 on star",
        ctx: "b:B",
        axiom: "beta1(x. B, b)",
        ty: "B",
        lhs: "ind1(x. B, b, star)",
        rhs: "b",
    },
    Redex {
        name: "ind2 on bot",
        ctx: "b:B, c:B",
        axiom: "beta2bot(x. B, b, c)",
        ty: "B",
        lhs: "ind2(x. B, b, c, bot)",
        rhs: "b",
    },
    Redex {
        name: "ind2 on top",
        ctx: "b:B, c:B",
        axiom: "beta2top(x. B, b, c)",
        ty: "B",
        lhs: "ind2(x. B, b, c, top)",
        rhs: "c",
    },
    Redex {
        name: "indN on zero",
        ctx: "b:B",
        axiom: "betaN0(x. B, b, m y. y)",
        ty: "B",
        lhs: "indN(x. B, b, m y. y, zero)",
        rhs: "b",
    },
    Redex {
        name: "indN on succ",
        ctx: "n:Nat",
        axiom: "betaNs(x. Nat, zero, m y. succ(y), n)",
        ty: "Nat",
        lhs: "indN(x. Nat, zero, m y. succ(y), succ(n))",
        rhs: "succ(indN(x. Nat, zero, m y. succ(y), n))",
    },
];

fn doc(src: &str) -> Document {
    parse_document(&format!("{SIG}{src}\n")).unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn term_of(d: &Document) -> Tm {
    match &d.items[0].judgment.subject {
        Subject::Term(t, _) => t.clone(),
        _ => unreachable!(),
    }
}

/// Checks one redex pair against the contraction oracle and the checker.
fn check_redex(r: &Redex) {
    let axiom = doc(&format!(
        "{} |- {} : Id({}, {}, {})",
        r.ctx, r.axiom, r.ty, r.lhs, r.rhs
    ));
    check_judgment(&axiom.items[0].judgment, &axiom.signature)
        .unwrap_or_else(|e| panic!("{}: the axiom does not check: {e}", r.name));

    let lhs = doc(&format!("{} |- {} : {}", r.ctx, r.lhs, r.ty));
    let rhs = doc(&format!("{} |- {} : {}", r.ctx, r.rhs, r.ty));
    for side in [&lhs, &rhs] {
        check_judgment(&side.items[0].judgment, &side.signature)
            .unwrap_or_else(|e| panic!("{}: a side does not check: {e}", r.name));
    }
    let (l, rt) = (term_of(&lhs), term_of(&rhs));
    assert!(!defeq_tm(&l, &rt), "{}: the sides are definitionally equal", r.name);
    assert_eq!(
        contract(&erase_tm(&l)).map(|t| erase_tm(&t)),
        Some(erase_tm(&rt)),
        "{}: the left side does not contract to the right",
        r.name
    );

    let eq = doc(&format!("{} |- {} == {} : {}", r.ctx, r.lhs, r.rhs, r.ty));
    let err = check_judgment(&eq.items[0].judgment, &eq.signature)
        .expect_err(&format!("{}: the equation was accepted", r.name));
    assert!(err.is_no_computation(), "{}: {err}", r.name);
}

#[test]
fn every_computation_rule_is_only_propositional() {
    for r in REDEXES {
        check_redex(r);
    }
}

#[test]
fn function_extensionality_axioms_hold_only_propositionally() {
    let ctx = "f:Pi x:A. B, g:Pi x:A. B, h:Pi x:A. Id(B, ev(f, x), ev(g, x))";
    let happly = "J(w w' e. Pi x:A. Id(B, ev(w, x), ev(w', x)), w. lam x. r(ev(w, x)), f, g, funext(f, g, h))";
    let hom = "Pi x:A. Id(B, ev(f, x), ev(g, x))";
    let axiom = doc(&format!("{ctx} |- betaPi(f, g, h) : Id({hom}, {happly}, h)"));
    assert!(check_judgment(&axiom.items[0].judgment, &axiom.signature).is_ok());
    let eq = doc(&format!("{ctx} |- {happly} == h : {hom}"));
    assert!(check_judgment(&eq.items[0].judgment, &eq.signature).is_err());
}

fn numeral(n: usize) -> String {
    (0..n).fold("zero".to_string(), |t, _| format!("succ({t})"))
}

proptest! {
    #[test]
    fn nat_recursion_never_unfolds(n in 0usize..6, step in prop::sample::select(vec!["y", "succ(y)", "m", "succ(m)"])) {
        let sig = parse_document(SIG).unwrap().signature;
        let lhs = format!("indN(x. Nat, zero, m y. {step}, succ({}))", numeral(n));
        let rec = format!("indN(x. Nat, zero, m y. {step}, {})", numeral(n));
        let rhs_body = match step {
            "y" => rec,
            "succ(y)" => format!("succ({rec})"),
            "m" => numeral(n),
            _ => format!("succ({})", numeral(n)),
        };
        let axiom = format!(
            "|- betaNs(x. Nat, zero, m y. {step}, {}) : Id(Nat, {lhs}, {rhs_body})",
            numeral(n)
        );
        let j = parse_judgment(&axiom, &sig).unwrap();
        prop_assert!(check_judgment(&j, &sig).is_ok(), "{}", axiom);
        let eq = parse_judgment(&format!("|- {lhs} == {rhs_body} : Nat"), &sig).unwrap();
        let err = check_judgment(&eq, &sig).unwrap_err();
        prop_assert!(err.is_no_computation());
    }

    #[test]
    fn j_never_unfolds_on_refl(depth in 0usize..4) {
        let sig = parse_document(SIG).unwrap().signature;
        let mut point = "x".to_string();
        let mut ty = "A".to_string();
        for _ in 0..depth {
            ty = format!("Id({ty}, {point}, {point})");
            point = format!("r({point})");
        }
        let lhs = format!("J(u v w. {ty}, z. {point}, x, x, r(x))");
        let src = format!("x:A |- {lhs} == {point} : {ty}");
        let j = parse_judgment(&src, &sig).unwrap();
        let err = check_judgment(&j, &sig).unwrap_err();
        prop_assert!(err.is_no_computation(), "{}", err);
        let ax = format!("x:A |- H(u v w. {ty}, z. {point}, x) : Id({ty}, {lhs}, {point})");
        let j = parse_judgment(&ax, &sig).unwrap();
        prop_assert!(check_judgment(&j, &sig).is_ok(), "{}", ax);
    }
}
