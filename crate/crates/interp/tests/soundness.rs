use att_core::parse_document;
use att_interp::{redex_witness, soundness};
use att_model::shipped;

const SMALL: &str = "\
type A
type B
x:A |- x : A
x:A, y:A |- Id(A, x, y) type
x:A |- r(x) : Id(A, x, x)
x:A, y:A, p:Id(A, x, y) |- J(a b q. Id(A, b, a), a. r(a), x, y, p) : Id(A, y, x)
x:A |- H(a b q. A, a. a, x) : Id(A, J(a b q. A, a. a, x, x, r(x)), x)
x:A |- x == x : A
x:A, y:B |- Id(B, y, y) == Id(B, y, y) type
";

#[test]
fn small_document_is_sound_in_every_model() {
    let doc = parse_document(SMALL).unwrap();
    for m in shipped::all() {
        if !m.types.iter().any(|(t, _)| t == "B") {
            continue;
        }
        let r = soundness(&doc, &m);
        println!("{r}");
        assert!(r.ok(), "{r}");
    }
}

#[test]
fn redex_differs_only_in_the_counterexample() {
    let w = redex_witness(&shipped::counterexample()).unwrap();
    println!("{w:?}");
    assert!(!w.functor_eq);
    assert!(w.axiom_interprets);
    let s = redex_witness(&shipped::strict()).unwrap();
    assert!(s.functor_eq);
}
