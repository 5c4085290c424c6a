use std::sync::Arc;

use att_core::print::print_tm_in;
use att_core::subst::{erase_tm, instantiate_tm, shift_tm};
use att_core::{
    defeq_tm, parse_document, parse_tm, print_document, subst_tm, weaken_tm, Bind, Ctx, Signature,
    Subst, Tm, Ty,
};
use proptest::prelude::*;

const NAMES: [&str; 4] = ["x", "y", "p", "x'"];

fn name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(&NAMES[..])
}

/// Types whose free variables are below `scope`.
fn ty(scope: usize, depth: u32) -> BoxedStrategy<Ty> {
    let leaf = prop_oneof![
        Just(Ty::base("A")),
        Just(Ty::Nat),
        Just(Ty::One),
        Just(Ty::Two),
    ];
    if depth == 0 {
        return leaf.boxed();
    }
    prop_oneof![
        2 => leaf,
        2 => (ty(scope, depth - 1), tm(scope, depth - 1), tm(scope, depth - 1))
            .prop_map(|(a, t, u)| Ty::id(a, t, u)),
        1 => (name(), ty(scope, depth - 1), ty(scope + 1, depth - 1))
            .prop_map(|(x, a, b)| Ty::pi(x, a, b)),
        1 => (name(), ty(scope, depth - 1), ty(scope + 1, depth - 1))
            .prop_map(|(x, a, b)| Ty::sigma(x, a, b)),
    ]
    .boxed()
}

/// Terms whose free variables are below `scope`.
fn tm(scope: usize, depth: u32) -> BoxedStrategy<Tm> {
    let mut leaves: Vec<BoxedStrategy<Tm>> = vec![
        Just(Tm::Star).boxed(),
        Just(Tm::NatZero).boxed(),
        Just(Tm::Bot).boxed(),
    ];
    if scope > 0 {
        leaves.push((0..scope).prop_map(Tm::Var).boxed());
        leaves.push((0..scope).prop_map(Tm::Var).boxed());
    }
    let leaf = prop::strategy::Union::new(leaves);
    if depth == 0 {
        return leaf.boxed();
    }
    let d = depth - 1;
    prop_oneof![
        3 => leaf,
        1 => tm(scope, d).prop_map(Tm::refl),
        1 => tm(scope, d).prop_map(Tm::succ),
        1 => (tm(scope, d), tm(scope, d)).prop_map(|(z, t)| Tm::ev(z, t)),
        1 => (name(), tm(scope + 1, d)).prop_map(|(x, b)| Tm::lam(x, b)),
        1 => (tm(scope, d), ty(scope, d)).prop_map(|(t, a)| Tm::ann(t, a)),
        1 => (ty(scope + 3, d), tm(scope + 1, d), tm(scope, d), tm(scope, d), tm(scope, d))
            .prop_map(|(c, b, t, u, p)| Tm::J {
                motive: Bind::new(&["a", "b", "q"], c),
                branch: Bind::new(&["z"], b),
                left: Arc::new(t),
                right: Arc::new(u),
                path: Arc::new(p),
            }),
        1 => (ty(scope + 1, d), tm(scope, d), tm(scope + 2, d), tm(scope, d))
            .prop_map(|(c, base, step, s)| Tm::IndN {
                motive: Bind::new(&["n"], c),
                base: Arc::new(base),
                step: Bind::new(&["m", "y"], step),
                scrut: Arc::new(s),
            }),
    ]
    .boxed()
}

fn ctx(n: usize) -> Ctx {
    ["u", "v", "w", "s"][..n]
        .iter()
        .fold(Ctx::empty(), |c, x| c.push(x, Ty::base("A")))
}

fn subst(scope: usize) -> impl Strategy<Value = Subst> {
    (prop::collection::vec(tm(scope, 1), 0..3), 0..3usize)
        .prop_map(|(top, shift)| Subst { top, shift })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_parse_round_trip(t in tm(3, 3)) {
        let sig = Signature::with_types(&["A"]);
        let c = ctx(3);
        let printed = print_tm_in(&t, &c, &sig);
        let back = parse_tm(&printed, &sig, &c)
            .unwrap_or_else(|e| panic!("`{printed}` does not parse: {e}"));
        prop_assert_eq!(back, t, "printed as `{}`", printed);
    }

    #[test]
    fn identity_substitution_is_neutral(t in tm(4, 3)) {
        prop_assert_eq!(subst_tm(&t, &Subst::identity()), t);
    }

    #[test]
    fn instantiating_a_weakened_term_gives_it_back(t in tm(4, 3), u in tm(4, 2)) {
        prop_assert_eq!(subst_tm(&weaken_tm(&t, 0), &Subst::instantiate(&[u])), t);
    }

    #[test]
    fn substitution_composes(t in tm(4, 3), f in subst(4), g in subst(4)) {
        prop_assert_eq!(
            subst_tm(&subst_tm(&t, &f), &g),
            subst_tm(&t, &f.compose(&g))
        );
    }

    #[test]
    fn shifts_add(t in tm(4, 3), a in 0..3usize, b in 0..3usize, c in 0..3usize) {
        prop_assert_eq!(shift_tm(&shift_tm(&t, a, c), b, c), shift_tm(&t, a + b, c));
    }

    #[test]
    fn lifting_commutes_with_weakening(t in tm(4, 3), f in subst(4)) {
        prop_assert_eq!(
            subst_tm(&weaken_tm(&t, 0), &f.lift()),
            weaken_tm(&subst_tm(&t, &f), 0)
        );
    }

    #[test]
    fn erasure_is_idempotent_and_defeq_reflexive(t in tm(4, 3)) {
        let e = erase_tm(&t);
        prop_assert_eq!(erase_tm(&e), e.clone());
        prop_assert!(defeq_tm(&t, &t));
        prop_assert!(defeq_tm(&t, &e));
    }

    #[test]
    fn instantiation_is_substitution_under_the_binder(b in tm(5, 3), u in tm(4, 2)) {
        let bind = Bind::new(&["z"], b.clone());
        prop_assert_eq!(
            instantiate_tm(&bind, std::slice::from_ref(&u)),
            subst_tm(&b, &Subst::identity().extend(u))
        );
    }
}

#[test]
fn bound_names_do_not_matter() {
    let sig = Signature::with_types(&["A"]);
    let c = ctx(1);
    let a = parse_tm("lam y. ev(y, u)", &sig, &c).unwrap();
    let b = parse_tm("lam q. ev(q, u)", &sig, &c).unwrap();
    assert_eq!(a, b);
}

#[test]
fn printing_avoids_capture() {
    let sig = Signature::with_types(&["A"]);
    let c = ctx(1);
    let t = Tm::lam("u", Tm::ev(Tm::Var(0), Tm::Var(1)));
    let printed = print_tm_in(&t, &c, &sig);
    assert_ne!(printed, "lam u. ev(u, u)");
    assert_eq!(parse_tm(&printed, &sig, &c).unwrap(), t);
}

#[test]
fn documents_round_trip() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "att") {
            continue;
        }
        let src = std::fs::read_to_string(&path).unwrap();
        let doc = parse_document(&src).unwrap();
        let again = parse_document(&print_document(&doc)).unwrap();
        assert_eq!(doc.signature.base_types, again.signature.base_types);
        let judgments = |d: &att_core::Document| {
            d.items.iter().map(|i| i.judgment.clone()).collect::<Vec<_>>()
        };
        assert_eq!(judgments(&doc), judgments(&again), "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 25);
}

#[test]
fn names_must_be_in_scope() {
    let err = parse_document("type A\nx:A |- y : A\n").unwrap_err();
    assert!(err.to_string().contains("unbound name `y`"), "{err}");
    let err = parse_document("type A\nx:C |- x : C\n").unwrap_err();
    assert!(err.to_string().contains("unbound name `C`"), "{err}");
}
