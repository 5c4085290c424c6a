//! Rule schemas.
//!
//! [`conclude`] instantiates a rule from the conclusions of its premises.
//! The checker builds every derivation node through it and
//! [`crate::check::replay`] re-runs it on stored trees, so a rule has exactly
//! one definition.

use std::sync::Arc;

use crate::subst::{instantiate_tm, instantiate_ty, shift_tm, shift_ty, subst_ty, Subst};
use crate::syntax::{Bind, Ctx, Judgment, Name, Signature, Subject, Tm, Ty};

/// Rule labels. A few carry the side data the premises do not determine.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Rule {
    CtxEmpty,
    CtxExt,
    /// Formation of a declared base type.
    BaseForm(Arc<str>),
    IdForm,
    SigmaForm,
    PiForm,
    ZeroForm,
    OneForm,
    TwoForm,
    NatForm,
    Var(usize),
    Ann,
    /// Conversion to the carried type along definitional equality.
    Conv(Ty),
    IdIntro,
    IdElim,
    IdComp,
    /// Pairing; carries the family of the Σ-type it checks against.
    SigmaIntro(Bind<Ty>),
    SigmaElim,
    SigmaComp,
    PiIntro,
    PiElim,
    PiComp,
    FunextIntro,
    FunextComp,
    FunextExp,
    OneIntro,
    OneElim,
    OneComp,
    TwoIntroBot,
    TwoIntroTop,
    TwoElim,
    TwoCompBot,
    TwoCompTop,
    NatIntroZero,
    NatIntroSucc,
    NatElim,
    NatCompZero,
    NatCompSucc,
    ZeroElim,
    TypeEqRefl,
    TermEqRefl,
}

impl Rule {
    pub fn label(&self) -> &'static str {
        match self {
            Rule::CtxEmpty => "Ctx-Empty",
            Rule::CtxExt => "Ctx-Ext",
            Rule::BaseForm(_) => "Base-Form",
            Rule::IdForm => "Id-Form",
            Rule::SigmaForm => "Sigma-Form",
            Rule::PiForm => "Pi-Form",
            Rule::ZeroForm => "Zero-Form",
            Rule::OneForm => "One-Form",
            Rule::TwoForm => "Two-Form",
            Rule::NatForm => "Nat-Form",
            Rule::Var(_) => "Var",
            Rule::Ann => "Ann",
            Rule::Conv(_) => "Conv",
            Rule::IdIntro => "Id-Intro",
            Rule::IdElim => "Id-Elim",
            Rule::IdComp => "Id-Comp-Axiom",
            Rule::SigmaIntro(_) => "Sigma-Intro",
            Rule::SigmaElim => "Sigma-Elim",
            Rule::SigmaComp => "Sigma-Comp-Axiom",
            Rule::PiIntro => "Pi-Intro",
            Rule::PiElim => "Pi-Elim",
            Rule::PiComp => "Pi-Comp-Axiom",
            Rule::FunextIntro => "Funext-Intro",
            Rule::FunextComp => "Funext-Comp-Axiom",
            Rule::FunextExp => "Funext-Exp-Axiom",
            Rule::OneIntro => "One-Intro",
            Rule::OneElim => "One-Elim",
            Rule::OneComp => "One-Comp-Axiom",
            Rule::TwoIntroBot => "Two-Intro-Bot",
            Rule::TwoIntroTop => "Two-Intro-Top",
            Rule::TwoElim => "Two-Elim",
            Rule::TwoCompBot => "Two-Comp-Axiom-Bot",
            Rule::TwoCompTop => "Two-Comp-Axiom-Top",
            Rule::NatIntroZero => "Nat-Intro-Zero",
            Rule::NatIntroSucc => "Nat-Intro-Succ",
            Rule::NatElim => "Nat-Elim",
            Rule::NatCompZero => "Nat-Comp-Axiom-Zero",
            Rule::NatCompSucc => "Nat-Comp-Axiom-Succ",
            Rule::ZeroElim => "Zero-Elim",
            Rule::TypeEqRefl => "Type-Eq-Refl",
            Rule::TermEqRefl => "Term-Eq-Refl",
        }
    }

    /// Every rule label, for coverage reports.
    pub fn all_labels() -> Vec<&'static str> {
        let fam = Bind::new(&["x"], Ty::One);
        [
            Rule::CtxEmpty,
            Rule::CtxExt,
            Rule::BaseForm(Arc::from("A")),
            Rule::IdForm,
            Rule::SigmaForm,
            Rule::PiForm,
            Rule::ZeroForm,
            Rule::OneForm,
            Rule::TwoForm,
            Rule::NatForm,
            Rule::Var(0),
            Rule::Ann,
            Rule::Conv(Ty::One),
            Rule::IdIntro,
            Rule::IdElim,
            Rule::IdComp,
            Rule::SigmaIntro(fam),
            Rule::SigmaElim,
            Rule::SigmaComp,
            Rule::PiIntro,
            Rule::PiElim,
            Rule::PiComp,
            Rule::FunextIntro,
            Rule::FunextComp,
            Rule::FunextExp,
            Rule::OneIntro,
            Rule::OneElim,
            Rule::OneComp,
            Rule::TwoIntroBot,
            Rule::TwoIntroTop,
            Rule::TwoElim,
            Rule::TwoCompBot,
            Rule::TwoCompTop,
            Rule::NatIntroZero,
            Rule::NatIntroSucc,
            Rule::NatElim,
            Rule::NatCompZero,
            Rule::NatCompSucc,
            Rule::ZeroElim,
            Rule::TypeEqRefl,
            Rule::TermEqRefl,
        ]
        .iter()
        .map(Rule::label)
        .collect()
    }
}

/// Definitional equality: α-equality of substitution-normal syntax,
/// ignoring annotations. No β, no η, no J-conversion.
pub fn defeq_ty(a: &Ty, b: &Ty) -> bool {
    a == b || crate::subst::erase_ty(a) == crate::subst::erase_ty(b)
}

pub fn defeq_tm(a: &Tm, b: &Tm) -> bool {
    a == b || crate::subst::erase_tm(a) == crate::subst::erase_tm(b)
}

/// `Γ, x:A, y:A, p:Id(A,x,y)`, the context of an identity-type motive.
pub fn id_motive_ctx(ctx: &Ctx, a: &Ty, names: &[Name]) -> Ctx {
    let n = |k: usize| names.get(k).cloned().unwrap_or_else(|| Name::new("x"));
    ctx.extend(n(0), a.clone())
        .extend(n(1), shift_ty(a, 1, 0))
        .extend(
            n(2),
            Ty::Id(
                Arc::new(shift_ty(a, 2, 0)),
                Arc::new(Tm::Var(1)),
                Arc::new(Tm::Var(0)),
            ),
        )
}

/// `C[x, x, r(x)]` in the context `Γ, x:A`.
pub fn id_motive_on_refl(motive: &Bind<Ty>) -> Ty {
    let s = Subst {
        top: vec![Tm::refl(Tm::Var(0)), Tm::Var(0), Tm::Var(0)],
        shift: 1,
    };
    subst_ty(&motive.body, &s)
}

/// The annotated pair `(pair(x, y) : Σ)` in the context `Γ, x:A, y:B`.
pub fn generic_pair(sigma: &Ty) -> Tm {
    Tm::ann(
        Tm::pair(Tm::Var(1), Tm::Var(0)),
        shift_ty(sigma, 2, 0),
    )
}

/// `C[(pair(x,y) : Σ)]` in the context `Γ, x:A, y:B`.
pub fn sigma_motive_on_pair(motive: &Bind<Ty>, sigma: &Ty) -> Ty {
    let s = Subst {
        top: vec![generic_pair(sigma)],
        shift: 2,
    };
    subst_ty(&motive.body, &s)
}

/// `C[succ(n)]` in the context `Γ, n:Nat, y:C(n)`.
pub fn nat_motive_on_succ(motive: &Bind<Ty>) -> Ty {
    let s = Subst {
        top: vec![Tm::succ(Tm::Var(1))],
        shift: 2,
    };
    subst_ty(&motive.body, &s)
}

/// `Π x:A. Id(B(x), ev(z,x), ev(z',x))`.
pub fn homotopy_ty(a: &Ty, b: &Bind<Ty>, z: &Tm, z2: &Tm) -> Ty {
    Ty::Pi(
        Arc::new(a.clone()),
        Bind {
            names: b.names.clone(),
            body: Arc::new(Ty::Id(
                b.body.clone(),
                Arc::new(Tm::ev(shift_tm(z, 1, 0), Tm::Var(0))),
                Arc::new(Tm::ev(shift_tm(z2, 1, 0), Tm::Var(0))),
            )),
        },
    )
}

fn shift_bind_ty(b: &Bind<Ty>, by: usize) -> Bind<Ty> {
    Bind {
        names: b.names.clone(),
        body: Arc::new(shift_ty(&b.body, by, b.arity())),
    }
}

/// Function extensionality's inverse direction, defined by J with motive
/// `Π x:A. Id(B, ev(w,x), ev(w',x))` and branch `λx. r(ev(w,x))`.
pub fn happly(a: &Ty, b: &Bind<Ty>, z: &Tm, z2: &Tm, p: &Tm) -> Tm {
    let a3 = shift_ty(a, 3, 0);
    let b3 = shift_bind_ty(b, 3);
    let motive = Bind {
        names: vec![Name::new("w"), Name::new("w'"), Name::new("e")],
        body: Arc::new(homotopy_ty(&a3, &b3, &Tm::Var(2), &Tm::Var(1))),
    };
    let branch = Bind::new(
        &["w"],
        Tm::lam(
            b.names[0].as_str(),
            Tm::refl(Tm::ev(Tm::Var(1), Tm::Var(0))),
        ),
    );
    Tm::J {
        motive,
        branch,
        left: Arc::new(z.clone()),
        right: Arc::new(z2.clone()),
        path: Arc::new(p.clone()),
    }
}

type R<T> = Result<T, String>;

fn term_of(j: &Judgment) -> R<(&Tm, &Ty)> {
    match &j.subject {
        Subject::Term(t, ty) => Ok((t, ty)),
        _ => Err(format!("expected a term premise, found a {} judgment", j.kind())),
    }
}

fn type_of(j: &Judgment) -> R<&Ty> {
    match &j.subject {
        Subject::Type(t) => Ok(t),
        _ => Err(format!("expected a type premise, found a {} judgment", j.kind())),
    }
}

fn in_ctx(j: &Judgment, ctx: &Ctx, what: &str) -> R<()> {
    if j.ctx == *ctx {
        Ok(())
    } else {
        Err(format!("premise `{what}` lives in the wrong context"))
    }
}

fn same(found: &Ty, expected: &Ty, what: &str) -> R<()> {
    if found == expected {
        Ok(())
    } else {
        Err(format!(
            "premise `{what}` has type {found}, the rule requires {expected}"
        ))
    }
}

fn arity(premises: &[&Judgment], n: usize) -> R<()> {
    if premises.len() == n {
        Ok(())
    } else {
        Err(format!("expected {n} premises, found {}", premises.len()))
    }
}

fn last_names(ctx: &Ctx, k: usize) -> Vec<Name> {
    let names = ctx.names();
    names[names.len().saturating_sub(k)..].to_vec()
}

fn term_j(ctx: &Ctx, t: Tm, ty: Ty) -> Judgment {
    Judgment::new(ctx.clone(), Subject::Term(t, ty))
}

fn type_j(ctx: &Ctx, ty: Ty) -> Judgment {
    Judgment::new(ctx.clone(), Subject::Type(ty))
}

/// A motive premise `Γ, x:X ⊢ C type` for a one-variable motive over `x_ty`.
fn motive1(ctx: &Ctx, p: &Judgment, x_ty: &Ty) -> R<Bind<Ty>> {
    let names = last_names(&p.ctx, 1);
    let expected = ctx.extend(
        names.first().cloned().unwrap_or_else(|| Name::new("x")),
        x_ty.clone(),
    );
    in_ctx(p, &expected, "motive")?;
    Ok(Bind {
        names,
        body: Arc::new(type_of(p)?.clone()),
    })
}

/// A one-variable term premise `Γ, x:X ⊢ c : T`.
fn branch_in(p: &Judgment, expected_ctx: &Ctx, expected_ty: &Ty, k: usize) -> R<Bind<Tm>> {
    in_ctx(p, expected_ctx, "branch")?;
    let (c, ty) = term_of(p)?;
    same(ty, expected_ty, "branch")?;
    Ok(Bind {
        names: last_names(&p.ctx, k),
        body: Arc::new(c.clone()),
    })
}

fn closed_term<'a>(p: &'a Judgment, ctx: &Ctx, what: &str) -> R<(&'a Tm, &'a Ty)> {
    in_ctx(p, ctx, what)?;
    term_of(p)
}

fn checked_term<'a>(p: &'a Judgment, ctx: &Ctx, ty: &Ty, what: &str) -> R<&'a Tm> {
    let (t, found) = closed_term(p, ctx, what)?;
    same(found, ty, what)?;
    Ok(t)
}

fn pi_parts(ty: &Ty) -> R<(&Arc<Ty>, &Bind<Ty>)> {
    match ty {
        Ty::Pi(a, b) => Ok((a, b)),
        other => Err(format!("expected a Pi-type, found {other}")),
    }
}

fn sigma_parts(ty: &Ty) -> R<(&Arc<Ty>, &Bind<Ty>)> {
    match ty {
        Ty::Sigma(a, b) => Ok((a, b)),
        other => Err(format!("expected a Sigma-type, found {other}")),
    }
}

fn a(t: &Tm) -> Arc<Tm> {
    Arc::new(t.clone())
}

/// The conclusion of `rule` in context `ctx` from the given premises.
pub fn conclude(rule: &Rule, ctx: &Ctx, ps: &[&Judgment], sig: &Signature) -> R<Judgment> {
    match rule {
        Rule::CtxEmpty => {
            arity(ps, 0)?;
            if !ctx.is_empty() {
                return Err("the empty context rule concludes only the empty context".into());
            }
            Ok(Judgment::new(Ctx::empty(), Subject::Ctx))
        }
        Rule::CtxExt => {
            arity(ps, 2)?;
            let (_, ty, prefix) = ctx
                .split_last()
                .ok_or("context extension needs a non-empty context")?;
            in_ctx(ps[0], prefix, "context")?;
            if ps[0].subject != Subject::Ctx {
                return Err("first premise must be a context judgment".into());
            }
            in_ctx(ps[1], prefix, "type")?;
            if type_of(ps[1])? != ty {
                return Err("second premise must form the new entry's type".into());
            }
            Ok(Judgment::new(ctx.clone(), Subject::Ctx))
        }
        Rule::BaseForm(name) => {
            arity(ps, 0)?;
            if sig.has(name) {
                Ok(type_j(ctx, Ty::Base(name.clone())))
            } else {
                Err(format!("base type `{name}` is not declared"))
            }
        }
        Rule::IdForm => {
            arity(ps, 3)?;
            in_ctx(ps[0], ctx, "type")?;
            let a_ty = type_of(ps[0])?;
            let t = checked_term(ps[1], ctx, a_ty, "left endpoint")?;
            let u = checked_term(ps[2], ctx, a_ty, "right endpoint")?;
            Ok(type_j(ctx, Ty::id(a_ty.clone(), t.clone(), u.clone())))
        }
        Rule::SigmaForm | Rule::PiForm => {
            arity(ps, 2)?;
            in_ctx(ps[0], ctx, "domain")?;
            let dom = type_of(ps[0])?;
            let fam = motive1(ctx, ps[1], dom)?;
            let dom = Arc::new(dom.clone());
            Ok(type_j(
                ctx,
                if *rule == Rule::SigmaForm {
                    Ty::Sigma(dom, fam)
                } else {
                    Ty::Pi(dom, fam)
                },
            ))
        }
        Rule::ZeroForm | Rule::OneForm | Rule::TwoForm | Rule::NatForm => {
            arity(ps, 0)?;
            let ty = match rule {
                Rule::ZeroForm => Ty::Zero,
                Rule::OneForm => Ty::One,
                Rule::TwoForm => Ty::Two,
                _ => Ty::Nat,
            };
            Ok(type_j(ctx, ty))
        }
        Rule::Var(i) => {
            arity(ps, 0)?;
            let (_, ty) = ctx
                .entry(*i)
                .ok_or_else(|| format!("variable #{i} is not bound"))?;
            Ok(term_j(ctx, Tm::Var(*i), shift_ty(ty, i + 1, 0)))
        }
        Rule::Ann => {
            arity(ps, 2)?;
            in_ctx(ps[0], ctx, "annotation")?;
            let ty = type_of(ps[0])?;
            let t = checked_term(ps[1], ctx, ty, "annotated term")?;
            Ok(term_j(ctx, Tm::ann(t.clone(), ty.clone()), ty.clone()))
        }
        Rule::Conv(target) => {
            arity(ps, 1)?;
            let (t, ty) = closed_term(ps[0], ctx, "converted term")?;
            if !defeq_ty(ty, target) {
                return Err(format!(
                    "{ty} and {target} are not definitionally equal"
                ));
            }
            Ok(term_j(ctx, t.clone(), target.clone()))
        }
        Rule::IdIntro => {
            arity(ps, 1)?;
            let (t, ty) = closed_term(ps[0], ctx, "point")?;
            Ok(term_j(
                ctx,
                Tm::refl(t.clone()),
                Ty::id(ty.clone(), t.clone(), t.clone()),
            ))
        }
        Rule::IdElim | Rule::IdComp => {
            let elim = *rule == Rule::IdElim;
            arity(ps, if elim { 5 } else { 3 })?;
            let (t, a_ty) = closed_term(ps[0], ctx, "left endpoint")?;
            let (u, p, mp, bp) = if elim {
                let u = checked_term(ps[1], ctx, a_ty, "right endpoint")?;
                let id_ty = Ty::id(a_ty.clone(), t.clone(), u.clone());
                let p = checked_term(ps[2], ctx, &id_ty, "path")?;
                (u.clone(), p.clone(), ps[3], ps[4])
            } else {
                (t.clone(), Tm::refl(t.clone()), ps[1], ps[2])
            };
            let names = last_names(&mp.ctx, 3);
            in_ctx(mp, &id_motive_ctx(ctx, a_ty, &names), "motive")?;
            let motive = Bind {
                names,
                body: Arc::new(type_of(mp)?.clone()),
            };
            let bctx = ctx.extend(
                last_names(&bp.ctx, 1).pop().unwrap_or_else(|| Name::new("x")),
                a_ty.clone(),
            );
            let branch = branch_in(bp, &bctx, &id_motive_on_refl(&motive), 1)?;
            let j = Tm::J {
                motive: motive.clone(),
                branch: branch.clone(),
                left: a(t),
                right: a(&u),
                path: a(&p),
            };
            let c_at = instantiate_ty(&motive, &[t.clone(), u.clone(), p.clone()]);
            if elim {
                Ok(term_j(ctx, j, c_at))
            } else {
                let c_t = instantiate_tm(&branch, &[t.clone()]);
                Ok(term_j(
                    ctx,
                    Tm::H {
                        motive,
                        branch,
                        point: a(t),
                    },
                    Ty::id(c_at, j, c_t),
                ))
            }
        }
        Rule::SigmaIntro(fam) => {
            arity(ps, 2)?;
            let (x, a_ty) = closed_term(ps[0], ctx, "first component")?;
            let b_x = instantiate_ty(fam, &[x.clone()]);
            let y = checked_term(ps[1], ctx, &b_x, "second component")?;
            Ok(term_j(
                ctx,
                Tm::pair(x.clone(), y.clone()),
                Ty::Sigma(Arc::new(a_ty.clone()), fam.clone()),
            ))
        }
        Rule::SigmaElim | Rule::SigmaComp => {
            let elim = *rule == Rule::SigmaElim;
            arity(ps, if elim { 3 } else { 5 })?;
            let (sigma, fst, snd, mp, bp) = if elim {
                let (w, sigma) = closed_term(ps[0], ctx, "scrutinee")?;
                (sigma.clone(), w.clone(), None, ps[1], ps[2])
            } else {
                in_ctx(ps[0], ctx, "Sigma-type")?;
                let sigma = type_of(ps[0])?.clone();
                let (a_ty, fam) = sigma_parts(&sigma)?;
                let t = checked_term(ps[1], ctx, a_ty, "first component")?;
                let b_t = instantiate_ty(fam, &[t.clone()]);
                let s = checked_term(ps[2], ctx, &b_t, "second component")?;
                (sigma.clone(), t.clone(), Some(s.clone()), ps[3], ps[4])
            };
            let (a_ty, fam) = sigma_parts(&sigma)?;
            let motive = motive1(ctx, mp, &sigma)?;
            let bnames = last_names(&bp.ctx, 2);
            let nm = |k: usize| bnames.get(k).cloned().unwrap_or_else(|| Name::new("x"));
            let bctx = ctx
                .extend(nm(0), (**a_ty).clone())
                .extend(nm(1), (*fam.body).clone());
            let branch = branch_in(bp, &bctx, &sigma_motive_on_pair(&motive, &sigma), 2)?;
            match snd {
                None => Ok(term_j(
                    ctx,
                    Tm::Split {
                        motive: motive.clone(),
                        branch,
                        scrut: a(&fst),
                    },
                    instantiate_ty(&motive, &[fst]),
                )),
                Some(snd) => {
                    let pair = Tm::ann(Tm::pair(fst.clone(), snd.clone()), sigma.clone());
                    let split = Tm::Split {
                        motive: motive.clone(),
                        branch: branch.clone(),
                        scrut: a(&pair),
                    };
                    let c_ts = instantiate_tm(&branch, &[fst.clone(), snd.clone()]);
                    Ok(term_j(
                        ctx,
                        Tm::SigmaComp {
                            sigma: Arc::new(sigma.clone()),
                            motive: motive.clone(),
                            branch,
                            fst: a(&fst),
                            snd: a(&snd),
                        },
                        Ty::id(instantiate_ty(&motive, &[pair]), split, c_ts),
                    ))
                }
            }
        }
        Rule::PiIntro => {
            arity(ps, 1)?;
            let (name, dom, prefix) = ps[0]
                .ctx
                .split_last()
                .ok_or("the body of a lambda lives in an extended context")?;
            if prefix != ctx {
                return Err("the body of a lambda lives in the wrong context".into());
            }
            let (body, cod) = term_of(ps[0])?;
            Ok(term_j(
                ctx,
                Tm::Lam(Bind {
                    names: vec![name.clone()],
                    body: a(body),
                }),
                Ty::Pi(
                    Arc::new(dom.clone()),
                    Bind {
                        names: vec![name.clone()],
                        body: Arc::new(cod.clone()),
                    },
                ),
            ))
        }
        Rule::PiElim => {
            arity(ps, 2)?;
            let (z, pi) = closed_term(ps[0], ctx, "function")?;
            let (dom, fam) = pi_parts(pi)?;
            let t = checked_term(ps[1], ctx, dom, "argument")?;
            Ok(term_j(
                ctx,
                Tm::ev(z.clone(), t.clone()),
                instantiate_ty(fam, &[t.clone()]),
            ))
        }
        Rule::PiComp => {
            arity(ps, 2)?;
            let (t, dom) = closed_term(ps[0], ctx, "argument")?;
            let (name, bdom, prefix) = ps[1]
                .ctx
                .split_last()
                .ok_or("the body lives in an extended context")?;
            if prefix != ctx || bdom != dom {
                return Err("the body must live in the context extended by the argument type".into());
            }
            let (v, cod) = term_of(ps[1])?;
            let body = Bind {
                names: vec![name.clone()],
                body: a(v),
            };
            let fam = Bind {
                names: vec![name.clone()],
                body: Arc::new(cod.clone()),
            };
            let lam = Tm::ann(Tm::Lam(body.clone()), Ty::Pi(Arc::new(dom.clone()), fam.clone()));
            Ok(term_j(
                ctx,
                Tm::Beta {
                    body: body.clone(),
                    arg: a(t),
                },
                Ty::id(
                    instantiate_ty(&fam, &[t.clone()]),
                    Tm::ev(lam, t.clone()),
                    instantiate_tm(&body, &[t.clone()]),
                ),
            ))
        }
        Rule::FunextIntro | Rule::FunextComp | Rule::FunextExp => {
            arity(ps, 3)?;
            let (z, pi) = closed_term(ps[0], ctx, "left function")?;
            let (dom, fam) = pi_parts(pi)?;
            let z2 = checked_term(ps[1], ctx, pi, "right function")?;
            let hom = homotopy_ty(dom, fam, z, z2);
            let path_ty = Ty::id(pi.clone(), z.clone(), z2.clone());
            let (z, z2) = (z.clone(), z2.clone());
            match rule {
                Rule::FunextIntro | Rule::FunextComp => {
                    let q = checked_term(ps[2], ctx, &hom, "homotopy")?.clone();
                    let fe = Tm::Funext {
                        left: a(&z),
                        right: a(&z2),
                        homotopy: a(&q),
                    };
                    if *rule == Rule::FunextIntro {
                        Ok(term_j(ctx, fe, path_ty))
                    } else {
                        let back = happly(dom, fam, &z, &z2, &fe);
                        Ok(term_j(
                            ctx,
                            Tm::BetaPi {
                                left: a(&z),
                                right: a(&z2),
                                homotopy: a(&q),
                            },
                            Ty::id(hom, back, q),
                        ))
                    }
                }
                _ => {
                    let p = checked_term(ps[2], ctx, &path_ty, "path")?.clone();
                    let fe = Tm::Funext {
                        left: a(&z),
                        right: a(&z2),
                        homotopy: a(&happly(dom, fam, &z, &z2, &p)),
                    };
                    Ok(term_j(
                        ctx,
                        Tm::EtaPi {
                            left: a(&z),
                            right: a(&z2),
                            path: a(&p),
                        },
                        Ty::id(path_ty, p, fe),
                    ))
                }
            }
        }
        Rule::OneIntro => {
            arity(ps, 0)?;
            Ok(term_j(ctx, Tm::Star, Ty::One))
        }
        Rule::OneElim | Rule::OneComp => {
            let elim = *rule == Rule::OneElim;
            arity(ps, if elim { 3 } else { 2 })?;
            let motive = motive1(ctx, ps[0], &Ty::One)?;
            let c_star = instantiate_ty(&motive, &[Tm::Star]);
            let c = checked_term(ps[1], ctx, &c_star, "base case")?.clone();
            if elim {
                let t = checked_term(ps[2], ctx, &Ty::One, "scrutinee")?.clone();
                let ty = instantiate_ty(&motive, &[t.clone()]);
                Ok(term_j(
                    ctx,
                    Tm::Ind1 {
                        motive,
                        base: a(&c),
                        scrut: a(&t),
                    },
                    ty,
                ))
            } else {
                let ind = Tm::Ind1 {
                    motive: motive.clone(),
                    base: a(&c),
                    scrut: a(&Tm::Star),
                };
                Ok(term_j(
                    ctx,
                    Tm::Beta1 {
                        motive,
                        base: a(&c),
                    },
                    Ty::id(c_star, ind, c),
                ))
            }
        }
        Rule::TwoIntroBot => {
            arity(ps, 0)?;
            Ok(term_j(ctx, Tm::Bot, Ty::Two))
        }
        Rule::TwoIntroTop => {
            arity(ps, 0)?;
            Ok(term_j(ctx, Tm::Top, Ty::Two))
        }
        Rule::TwoElim | Rule::TwoCompBot | Rule::TwoCompTop => {
            let elim = *rule == Rule::TwoElim;
            arity(ps, if elim { 4 } else { 3 })?;
            let motive = motive1(ctx, ps[0], &Ty::Two)?;
            let c_bot = instantiate_ty(&motive, &[Tm::Bot]);
            let c_top = instantiate_ty(&motive, &[Tm::Top]);
            let c = checked_term(ps[1], ctx, &c_bot, "bottom case")?.clone();
            let d = checked_term(ps[2], ctx, &c_top, "top case")?.clone();
            let ind = |scrut: Tm| Tm::Ind2 {
                motive: motive.clone(),
                on_bot: a(&c),
                on_top: a(&d),
                scrut: a(&scrut),
            };
            match rule {
                Rule::TwoElim => {
                    let t = checked_term(ps[3], ctx, &Ty::Two, "scrutinee")?.clone();
                    let ty = instantiate_ty(&motive, &[t.clone()]);
                    Ok(term_j(ctx, ind(t), ty))
                }
                Rule::TwoCompBot => Ok(term_j(
                    ctx,
                    Tm::Beta2Bot {
                        motive: motive.clone(),
                        on_bot: a(&c),
                        on_top: a(&d),
                    },
                    Ty::id(c_bot, ind(Tm::Bot), c.clone()),
                )),
                _ => Ok(term_j(
                    ctx,
                    Tm::Beta2Top {
                        motive: motive.clone(),
                        on_bot: a(&c),
                        on_top: a(&d),
                    },
                    Ty::id(c_top, ind(Tm::Top), d.clone()),
                )),
            }
        }
        Rule::NatIntroZero => {
            arity(ps, 0)?;
            Ok(term_j(ctx, Tm::NatZero, Ty::Nat))
        }
        Rule::NatIntroSucc => {
            arity(ps, 1)?;
            let n = checked_term(ps[0], ctx, &Ty::Nat, "predecessor")?;
            Ok(term_j(ctx, Tm::succ(n.clone()), Ty::Nat))
        }
        Rule::NatElim | Rule::NatCompZero | Rule::NatCompSucc => {
            arity(ps, if *rule == Rule::NatCompZero { 3 } else { 4 })?;
            let motive = motive1(ctx, ps[0], &Ty::Nat)?;
            let c_zero = instantiate_ty(&motive, &[Tm::NatZero]);
            let c = checked_term(ps[1], ctx, &c_zero, "base case")?.clone();
            let snames = last_names(&ps[2].ctx, 2);
            let nm = |k: usize| snames.get(k).cloned().unwrap_or_else(|| Name::new("n"));
            let sctx = ctx.extend(nm(0), Ty::Nat).extend(nm(1), (*motive.body).clone());
            let step = branch_in(ps[2], &sctx, &nat_motive_on_succ(&motive), 2)?;
            let ind = |scrut: Tm| Tm::IndN {
                motive: motive.clone(),
                base: a(&c),
                step: step.clone(),
                scrut: a(&scrut),
            };
            match rule {
                Rule::NatCompZero => Ok(term_j(
                    ctx,
                    Tm::BetaN0 {
                        motive: motive.clone(),
                        base: a(&c),
                        step: step.clone(),
                    },
                    Ty::id(c_zero, ind(Tm::NatZero), c.clone()),
                )),
                _ => {
                    let t = checked_term(ps[3], ctx, &Ty::Nat, "scrutinee")?.clone();
                    if *rule == Rule::NatElim {
                        let ty = instantiate_ty(&motive, &[t.clone()]);
                        return Ok(term_j(ctx, ind(t), ty));
                    }
                    let st = Tm::succ(t.clone());
                    let rhs = instantiate_tm(&step, &[t.clone(), ind(t.clone())]);
                    Ok(term_j(
                        ctx,
                        Tm::BetaNs {
                            motive: motive.clone(),
                            base: a(&c),
                            step: step.clone(),
                            scrut: a(&t),
                        },
                        Ty::id(instantiate_ty(&motive, &[st.clone()]), ind(st), rhs),
                    ))
                }
            }
        }
        Rule::ZeroElim => {
            arity(ps, 2)?;
            let motive = motive1(ctx, ps[0], &Ty::Zero)?;
            let t = checked_term(ps[1], ctx, &Ty::Zero, "scrutinee")?.clone();
            let ty = instantiate_ty(&motive, &[t.clone()]);
            Ok(term_j(
                ctx,
                Tm::Ind0 {
                    motive,
                    scrut: a(&t),
                },
                ty,
            ))
        }
        Rule::TypeEqRefl => {
            arity(ps, 2)?;
            in_ctx(ps[0], ctx, "left type")?;
            in_ctx(ps[1], ctx, "right type")?;
            let (x, y) = (type_of(ps[0])?, type_of(ps[1])?);
            if !defeq_ty(x, y) {
                return Err(format!("{x} and {y} are not definitionally equal"));
            }
            Ok(Judgment::new(ctx.clone(), Subject::TypeEq(x.clone(), y.clone())))
        }
        Rule::TermEqRefl => {
            arity(ps, 2)?;
            let (t, ty) = closed_term(ps[0], ctx, "left term")?;
            let u = checked_term(ps[1], ctx, ty, "right term")?;
            if !defeq_tm(t, u) {
                return Err(format!("{t} and {u} are not definitionally equal"));
            }
            Ok(Judgment::new(
                ctx.clone(),
                Subject::TermEq(t.clone(), u.clone(), ty.clone()),
            ))
        }
    }
}
