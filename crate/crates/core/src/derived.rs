//! Derived terms and the scaling family used by the benchmark.

use std::sync::Arc;

use crate::check::{CResult, CheckError, Checker, Reason};
use crate::rules::{happly, Rule};
use crate::subst::{shift_tm, subst_ty, Subst};
use crate::syntax::{Bind, Ctx, Document, Item, Judgment, Name, Signature, Span, Subject, Tm, Ty};

fn path_parts(ctx: &Ctx, sig: &Signature, path: &Tm) -> CResult<(Ty, Tm, Tm)> {
    let d = Checker::new(sig).infer(ctx, path)?;
    match d.term_type() {
        Some(Ty::Id(a, t, u)) => Ok(((**a).clone(), (**t).clone(), (**u).clone())),
        Some(other) => Err(CheckError {
            judgment: format!("{path} : {other}"),
            rule: Rule::IdElim.label(),
            reason: Reason::ExpectedForm {
                expected: "identity type",
                found: other.to_string(),
            },
            span: None,
        }),
        None => unreachable!("inference concludes a term judgment"),
    }
}

/// The transport motive `Π w:B(x). B(x')` over `x, x', q`.
fn transport_motive(fam: &Bind<Ty>) -> Bind<Ty> {
    let at_x = subst_ty(
        &fam.body,
        &Subst {
            top: vec![Tm::Var(2)],
            shift: 3,
        },
    );
    let at_x2 = subst_ty(
        &fam.body,
        &Subst {
            top: vec![Tm::Var(2)],
            shift: 4,
        },
    );
    Bind {
        names: vec![Name::new("x"), Name::new("x'"), Name::new("q")],
        body: Arc::new(Ty::Pi(
            Arc::new(at_x),
            Bind {
                names: vec![Name::new("w")],
                body: Arc::new(at_x2),
            },
        )),
    }
}

fn identity_branch() -> Bind<Tm> {
    Bind::new(&["x"], Tm::lam("w", Tm::Var(0)))
}

/// Transport `p^* y : B(u)` of `y : B(t)` along `p : Id(A,t,u)`, defined
/// by J. Along `r(t)` it is only propositionally the identity.
pub fn derived_transport(
    ctx: &Ctx,
    sig: &Signature,
    fam: &Bind<Ty>,
    path: &Tm,
    y: &Tm,
) -> CResult<Tm> {
    let (_, t, u) = path_parts(ctx, sig, path)?;
    let j = Tm::J {
        motive: transport_motive(fam),
        branch: identity_branch(),
        left: Arc::new(t),
        right: Arc::new(u),
        path: Arc::new(path.clone()),
    };
    Ok(Tm::ev(j, y.clone()))
}

/// The propositional computation law of transport along `r(t)`:
/// `H : Id(Π B(t) B(t), J(..., t, t, r(t)), λw.w)`.
pub fn transport_on_refl(fam: &Bind<Ty>, point: &Tm) -> Tm {
    Tm::H {
        motive: transport_motive(fam),
        branch: identity_branch(),
        point: Arc::new(point.clone()),
    }
}

/// `happly(z, z', p)`, the J-term sending a path between functions to a
/// pointwise homotopy.
pub fn derived_happly(
    ctx: &Ctx,
    sig: &Signature,
    z: &Tm,
    z2: &Tm,
    p: &Tm,
) -> CResult<Tm> {
    let d = Checker::new(sig).infer(ctx, z)?;
    match d.term_type() {
        Some(Ty::Pi(a, b)) => Ok(happly(a, b, z, z2, p)),
        Some(other) => Err(CheckError {
            judgment: format!("{z} : {other}"),
            rule: Rule::FunextComp.label(),
            reason: Reason::ExpectedForm {
                expected: "Pi-type",
                found: other.to_string(),
            },
            span: None,
        }),
        None => unreachable!("inference concludes a term judgment"),
    }
}

fn numeral(k: usize) -> Tm {
    (0..k).fold(Tm::NatZero, |n, _| Tm::succ(n))
}

/// The benchmark family: in `x:A`, `n` nested layers alternating a J on a
/// path `Id(A,x,x)` and an `indN` over the numeral of the layer's depth.
/// Checking layer `k` touches the numeral `k`, so the family is quadratic.
pub fn bench_family(n: usize) -> Document {
    let sig = Signature::with_types(&["A"]);
    let x = Tm::Var(0);
    let mut t = Tm::refl(x.clone());
    for k in 0..n {
        t = if k % 2 == 0 {
            Tm::J {
                motive: Bind::new(
                    &["a", "b", "q"],
                    Ty::id(Ty::base("A"), Tm::Var(2), Tm::Var(1)),
                ),
                branch: Bind::new(&["a"], Tm::refl(Tm::Var(0))),
                left: Arc::new(x.clone()),
                right: Arc::new(x.clone()),
                path: Arc::new(t),
            }
        } else {
            Tm::IndN {
                motive: Bind::new(
                    &["m"],
                    Ty::id(Ty::base("A"), shift_tm(&x, 1, 0), shift_tm(&x, 1, 0)),
                ),
                base: Arc::new(t),
                step: Bind::new(&["m", "y"], Tm::Var(0)),
                scrut: Arc::new(numeral(k)),
            }
        };
    }
    let ctx = Ctx::empty().push("x", Ty::base("A"));
    let goal = Ty::id(Ty::base("A"), x.clone(), x);
    Document {
        signature: sig,
        items: vec![Item {
            judgment: Judgment::new(ctx, Subject::Term(t, goal)),
            span: Span { line: 1, col: 1 },
        }],
    }
}
