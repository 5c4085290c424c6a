//! Syntax-directed bidirectional checking.
//!
//! Introductions check, eliminations synthesize. Each call returns a
//! [`Derivation`] whose nodes are built by [`crate::rules::conclude`].
//! Definitional equality is α-equality only, so every computation rule is
//! available solely as a propositional axiom.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::print::{print_judgment, print_tm_in, print_ty_in};
use crate::redex::normalize_ty;
use crate::rules::{
    conclude, defeq_tm, defeq_ty, homotopy_ty, id_motive_ctx, id_motive_on_refl,
    nat_motive_on_succ, sigma_motive_on_pair, Rule,
};
use crate::subst::instantiate_ty;
use crate::syntax::{Bind, Ctx, Judgment, Signature, Span, Subject, Tm, Ty};

/// A derivation tree; every node's conclusion follows from its premises by
/// its rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Judgment,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    /// How often each rule label occurs.
    pub fn rule_counts(&self, out: &mut BTreeMap<&'static str, usize>) {
        *out.entry(self.rule.label()).or_default() += 1;
        for p in &self.premises {
            p.rule_counts(out);
        }
    }

    /// The type of a term conclusion.
    pub fn term_type(&self) -> Option<&Ty> {
        match &self.conclusion.subject {
            Subject::Term(_, ty) => Some(ty),
            _ => None,
        }
    }

    /// An indented rendering of the tree, conclusion first.
    pub fn render(&self, sig: &Signature) -> String {
        let mut out = String::new();
        self.render_into(sig, 0, &mut out);
        out
    }

    fn render_into(&self, sig: &Signature, depth: usize, out: &mut String) {
        let _ = writeln!(
            out,
            "{:indent$}[{}] {}",
            "",
            self.rule.label(),
            print_judgment(&self.conclusion, sig),
            indent = depth * 2
        );
        for p in &self.premises {
            p.render_into(sig, depth + 1, out);
        }
    }
}

/// Why a rule could not be applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    UnboundVariable(usize),
    UnknownBaseType(String),
    CannotSynthesize,
    ExpectedForm {
        expected: &'static str,
        found: String,
    },
    TypeMismatch {
        expected: String,
        found: String,
    },
    /// The two sides agree only after a computation step that the theory
    /// provides propositionally, never judgmentally.
    NoJudgmentalComputation {
        left: String,
        right: String,
    },
    NotDefEq {
        left: String,
        right: String,
    },
    Schema(String),
}

impl std::fmt::Display for Reason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Reason::UnboundVariable(i) => write!(f, "variable #{i} is not bound"),
            Reason::UnknownBaseType(n) => write!(f, "base type `{n}` is not declared"),
            Reason::CannotSynthesize => write!(
                f,
                "cannot synthesize a type for an introduction form; add an annotation `(t : T)`"
            ),
            Reason::ExpectedForm { expected, found } => {
                write!(f, "expected a {expected}, found `{found}`")
            }
            Reason::TypeMismatch { expected, found } => {
                write!(f, "type mismatch: expected `{expected}`, found `{found}`")
            }
            Reason::NoJudgmentalComputation { left, right } => write!(
                f,
                "no judgmental computation: `{left}` and `{right}` are related only by a \
                 propositional computation axiom, not by definitional equality"
            ),
            Reason::NotDefEq { left, right } => {
                write!(f, "`{left}` and `{right}` are not definitionally equal")
            }
            Reason::Schema(m) => f.write_str(m),
        }
    }
}

/// A failed check: the judgment being derived, the rule attempted, the
/// reason, and the source position when known.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{}rule {rule} failed: {reason}\n  while deriving: {judgment}", span.map(|s| format!("{s}: ")).unwrap_or_default())]
pub struct CheckError {
    pub judgment: String,
    pub rule: &'static str,
    pub reason: Reason,
    pub span: Option<Span>,
}

impl CheckError {
    pub fn with_span(mut self, span: Span) -> Self {
        if self.span.is_none() {
            self.span = Some(span);
        }
        self
    }

    /// Whether the failure is an attempted judgmental computation.
    pub fn is_no_computation(&self) -> bool {
        matches!(self.reason, Reason::NoJudgmentalComputation { .. })
    }
}

pub type CResult<T> = Result<T, CheckError>;

/// A checked judgment: the context derivation plus the subject derivation.
#[derive(Clone, Debug)]
pub struct Checked {
    pub context: Derivation,
    /// Well-formedness of the type a term or equation is stated at.
    pub presupposition: Option<Derivation>,
    pub derivation: Derivation,
}

impl Checked {
    pub fn size(&self) -> usize {
        self.context.size()
            + self.presupposition.as_ref().map_or(0, Derivation::size)
            + self.derivation.size()
    }

    pub fn rule_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut m = BTreeMap::new();
        self.context.rule_counts(&mut m);
        if let Some(p) = &self.presupposition {
            p.rule_counts(&mut m);
        }
        self.derivation.rule_counts(&mut m);
        m
    }
}

pub struct Checker<'a> {
    pub sig: &'a Signature,
}

enum Focus<'a> {
    Tm(&'a Tm, Option<&'a Ty>),
    Ty(&'a Ty),
    Ctx,
}

impl<'a> Checker<'a> {
    pub fn new(sig: &'a Signature) -> Self {
        Checker { sig }
    }

    fn describe(&self, ctx: &Ctx, focus: Focus<'_>) -> String {
        let subject = match focus {
            Focus::Tm(t, Some(ty)) => Subject::Term(t.clone(), ty.clone()),
            Focus::Tm(t, None) => {
                let mut s = print_judgment(&Judgment::new(ctx.clone(), Subject::Ctx), self.sig);
                s.truncate(s.len() - "ctx".len());
                return format!("{s}{} : ?", print_tm_in(t, ctx, self.sig));
            }
            Focus::Ty(t) => Subject::Type(t.clone()),
            Focus::Ctx => Subject::Ctx,
        };
        print_judgment(&Judgment::new(ctx.clone(), subject), self.sig)
    }

    fn fail(&self, rule: &Rule, ctx: &Ctx, focus: Focus<'_>, reason: Reason) -> CheckError {
        CheckError {
            judgment: self.describe(ctx, focus),
            rule: rule.label(),
            reason,
            span: None,
        }
    }

    fn node(
        &self,
        rule: Rule,
        ctx: &Ctx,
        premises: Vec<Derivation>,
        focus: Focus<'_>,
    ) -> CResult<Derivation> {
        let refs: Vec<&Judgment> = premises.iter().map(|d| &d.conclusion).collect();
        match conclude(&rule, ctx, &refs, self.sig) {
            Ok(conclusion) => Ok(Derivation {
                rule,
                conclusion,
                premises,
            }),
            Err(m) => Err(self.fail(&rule, ctx, focus, Reason::Schema(m))),
        }
    }

    /// Checks a whole judgment.
    pub fn check_judgment(&self, j: &Judgment) -> CResult<Checked> {
        let context = self.check_context(&j.ctx)?;
        let ctx = &j.ctx;
        let (presupposition, derivation) = match &j.subject {
            Subject::Ctx => (None, context.clone()),
            Subject::Type(t) => (None, self.check_type(ctx, t)?),
            Subject::Term(t, ty) => {
                let dty = self.check_type(ctx, ty)?;
                (Some(dty), self.check(ctx, t, ty)?)
            }
            Subject::TypeEq(a, b) => {
                let da = self.check_type(ctx, a)?;
                let db = self.check_type(ctx, b)?;
                if !defeq_ty(a, b) {
                    let reason = self.inequality_reason_ty(ctx, a, b);
                    return Err(self.fail(&Rule::TypeEqRefl, ctx, Focus::Ty(a), reason)
                        .with_judgment(print_judgment(j, self.sig)));
                }
                (None, self.node(Rule::TypeEqRefl, ctx, vec![da, db], Focus::Ty(a))?)
            }
            Subject::TermEq(t, u, ty) => {
                let dty = self.check_type(ctx, ty)?;
                let dt = self.check(ctx, t, ty)?;
                let du = self.check(ctx, u, ty)?;
                if !defeq_tm(t, u) {
                    let reason = self.inequality_reason_tm(ctx, t, u);
                    return Err(self
                        .fail(&Rule::TermEqRefl, ctx, Focus::Tm(t, Some(ty)), reason)
                        .with_judgment(print_judgment(j, self.sig)));
                }
                (
                    Some(dty),
                    self.node(Rule::TermEqRefl, ctx, vec![dt, du], Focus::Tm(t, Some(ty)))?,
                )
            }
        };
        Ok(Checked {
            context,
            presupposition,
            derivation,
        })
    }

    fn inequality_reason_tm(&self, ctx: &Ctx, t: &Tm, u: &Tm) -> Reason {
        let left = print_tm_in(t, ctx, self.sig);
        let right = print_tm_in(u, ctx, self.sig);
        if crate::redex::normalize_tm(t) == crate::redex::normalize_tm(u) {
            Reason::NoJudgmentalComputation { left, right }
        } else {
            Reason::NotDefEq { left, right }
        }
    }

    fn inequality_reason_ty(&self, ctx: &Ctx, a: &Ty, b: &Ty) -> Reason {
        let left = print_ty_in(a, ctx, self.sig);
        let right = print_ty_in(b, ctx, self.sig);
        if normalize_ty(a) == normalize_ty(b) {
            Reason::NoJudgmentalComputation { left, right }
        } else {
            Reason::NotDefEq { left, right }
        }
    }

    pub fn check_context(&self, ctx: &Ctx) -> CResult<Derivation> {
        match ctx.split_last() {
            None => self.node(Rule::CtxEmpty, ctx, vec![], Focus::Ctx),
            Some((_, ty, prefix)) => {
                let dp = self.check_context(prefix)?;
                let dt = self.check_type(prefix, ty)?;
                self.node(Rule::CtxExt, ctx, vec![dp, dt], Focus::Ctx)
            }
        }
    }

    pub fn check_type(&self, ctx: &Ctx, ty: &Ty) -> CResult<Derivation> {
        let focus = || Focus::Ty(ty);
        match ty {
            Ty::Base(name) => {
                if !self.sig.has(name) {
                    return Err(self.fail(
                        &Rule::BaseForm(name.clone()),
                        ctx,
                        focus(),
                        Reason::UnknownBaseType(name.to_string()),
                    ));
                }
                self.node(Rule::BaseForm(name.clone()), ctx, vec![], focus())
            }
            Ty::Id(a, t, u) => {
                let da = self.check_type(ctx, a)?;
                let dt = self.check(ctx, t, a)?;
                let du = self.check(ctx, u, a)?;
                self.node(Rule::IdForm, ctx, vec![da, dt, du], focus())
            }
            Ty::Sigma(a, b) | Ty::Pi(a, b) => {
                let da = self.check_type(ctx, a)?;
                let db = self.check_type(&ctx.extend(b.names[0].clone(), (**a).clone()), &b.body)?;
                let rule = if matches!(ty, Ty::Sigma(..)) {
                    Rule::SigmaForm
                } else {
                    Rule::PiForm
                };
                self.node(rule, ctx, vec![da, db], focus())
            }
            Ty::Zero => self.node(Rule::ZeroForm, ctx, vec![], focus()),
            Ty::One => self.node(Rule::OneForm, ctx, vec![], focus()),
            Ty::Two => self.node(Rule::TwoForm, ctx, vec![], focus()),
            Ty::Nat => self.node(Rule::NatForm, ctx, vec![], focus()),
        }
    }

    /// Checks `t` against `ty`, which is presupposed well formed.
    pub fn check(&self, ctx: &Ctx, t: &Tm, ty: &Ty) -> CResult<Derivation> {
        let focus = || Focus::Tm(t, Some(ty));
        match (t, ty) {
            (Tm::Pair(x, y), Ty::Sigma(a, fam)) => {
                let dx = self.check(ctx, x, a)?;
                let dy = self.check(ctx, y, &instantiate_ty(fam, &[(**x).clone()]))?;
                self.node(Rule::SigmaIntro(fam.clone()), ctx, vec![dx, dy], focus())
            }
            (Tm::Pair(..), other) => Err(self.fail(
                &Rule::SigmaIntro(Bind::new(&["x"], Ty::One)),
                ctx,
                focus(),
                Reason::ExpectedForm {
                    expected: "Sigma-type",
                    found: print_ty_in(other, ctx, self.sig),
                },
            )),
            (Tm::Lam(b), Ty::Pi(a, fam)) => {
                let inner = ctx.extend(b.names[0].clone(), (**a).clone());
                let db = self.check(&inner, &b.body, &fam.body)?;
                self.node(Rule::PiIntro, ctx, vec![db], focus())
            }
            (Tm::Lam(_), other) => Err(self.fail(
                &Rule::PiIntro,
                ctx,
                focus(),
                Reason::ExpectedForm {
                    expected: "Pi-type",
                    found: print_ty_in(other, ctx, self.sig),
                },
            )),
            _ => {
                let d = self.infer(ctx, t)?;
                let found = d.term_type().expect("inference concludes a term judgment");
                if found == ty {
                    return Ok(d);
                }
                if defeq_ty(found, ty) {
                    return self.node(Rule::Conv(ty.clone()), ctx, vec![d], focus());
                }
                let reason = if normalize_ty(found) == normalize_ty(ty) {
                    Reason::NoJudgmentalComputation {
                        left: print_ty_in(found, ctx, self.sig),
                        right: print_ty_in(ty, ctx, self.sig),
                    }
                } else {
                    Reason::TypeMismatch {
                        expected: print_ty_in(ty, ctx, self.sig),
                        found: print_ty_in(found, ctx, self.sig),
                    }
                };
                Err(self.fail(&Rule::Conv(ty.clone()), ctx, focus(), reason))
            }
        }
    }

    fn infer_ty(&self, ctx: &Ctx, t: &Tm) -> CResult<(Derivation, Ty)> {
        let d = self.infer(ctx, t)?;
        let ty = d.term_type().expect("inference concludes a term judgment").clone();
        Ok((d, ty))
    }

    fn expect_pi(&self, rule: Rule, ctx: &Ctx, t: &Tm, ty: &Ty) -> CResult<(Ty, Bind<Ty>)> {
        match ty {
            Ty::Pi(a, b) => Ok(((**a).clone(), b.clone())),
            other => Err(self.fail(
                &rule,
                ctx,
                Focus::Tm(t, None),
                Reason::ExpectedForm {
                    expected: "Pi-type",
                    found: print_ty_in(other, ctx, self.sig),
                },
            )),
        }
    }

    fn id_motive_premises(
        &self,
        ctx: &Ctx,
        a: &Ty,
        motive: &Bind<Ty>,
        branch: &Bind<Tm>,
    ) -> CResult<(Derivation, Derivation)> {
        let mctx = id_motive_ctx(ctx, a, &motive.names);
        let dm = self.check_type(&mctx, &motive.body)?;
        let bctx = ctx.extend(branch.names[0].clone(), a.clone());
        let db = self.check(&bctx, &branch.body, &id_motive_on_refl(motive))?;
        Ok((dm, db))
    }

    fn motive1(&self, ctx: &Ctx, over: Ty, motive: &Bind<Ty>) -> CResult<Derivation> {
        self.check_type(&ctx.extend(motive.names[0].clone(), over), &motive.body)
    }

    fn sigma_premises(
        &self,
        ctx: &Ctx,
        sigma: &Ty,
        motive: &Bind<Ty>,
        branch: &Bind<Tm>,
    ) -> CResult<(Derivation, Derivation)> {
        let Ty::Sigma(a, fam) = sigma else {
            unreachable!("callers pass a Sigma-type")
        };
        let dm = self.motive1(ctx, sigma.clone(), motive)?;
        let bctx = ctx
            .extend(branch.names[0].clone(), (**a).clone())
            .extend(branch.names[1].clone(), (*fam.body).clone());
        let db = self.check(&bctx, &branch.body, &sigma_motive_on_pair(motive, sigma))?;
        Ok((dm, db))
    }

    fn nat_premises(
        &self,
        ctx: &Ctx,
        motive: &Bind<Ty>,
        base: &Tm,
        step: &Bind<Tm>,
    ) -> CResult<Vec<Derivation>> {
        let dm = self.motive1(ctx, Ty::Nat, motive)?;
        let dc = self.check(ctx, base, &instantiate_ty(motive, &[Tm::NatZero]))?;
        let sctx = ctx
            .extend(step.names[0].clone(), Ty::Nat)
            .extend(step.names[1].clone(), (*motive.body).clone());
        let ds = self.check(&sctx, &step.body, &nat_motive_on_succ(motive))?;
        Ok(vec![dm, dc, ds])
    }

    /// Synthesizes the type of `t`.
    pub fn infer(&self, ctx: &Ctx, t: &Tm) -> CResult<Derivation> {
        let focus = || Focus::Tm(t, None);
        match t {
            Tm::Var(i) => {
                if ctx.entry(*i).is_none() {
                    return Err(self.fail(
                        &Rule::Var(*i),
                        ctx,
                        focus(),
                        Reason::UnboundVariable(*i),
                    ));
                }
                self.node(Rule::Var(*i), ctx, vec![], focus())
            }
            Tm::Ann(x, ty) => {
                let dty = self.check_type(ctx, ty)?;
                let dx = self.check(ctx, x, ty)?;
                self.node(Rule::Ann, ctx, vec![dty, dx], focus())
            }
            Tm::Refl(x) => {
                let dx = self.infer(ctx, x)?;
                self.node(Rule::IdIntro, ctx, vec![dx], focus())
            }
            Tm::J {
                motive,
                branch,
                left,
                right,
                path,
            } => {
                let (dt, a) = self.infer_ty(ctx, left)?;
                let du = self.check(ctx, right, &a)?;
                let id = Ty::id(a.clone(), (**left).clone(), (**right).clone());
                let dp = self.check(ctx, path, &id)?;
                let (dm, db) = self.id_motive_premises(ctx, &a, motive, branch)?;
                self.node(Rule::IdElim, ctx, vec![dt, du, dp, dm, db], focus())
            }
            Tm::H {
                motive,
                branch,
                point,
            } => {
                let (dt, a) = self.infer_ty(ctx, point)?;
                let (dm, db) = self.id_motive_premises(ctx, &a, motive, branch)?;
                self.node(Rule::IdComp, ctx, vec![dt, dm, db], focus())
            }
            Tm::Pair(..) | Tm::Lam(_) => {
                let rule = if matches!(t, Tm::Pair(..)) {
                    Rule::SigmaIntro(Bind::new(&["x"], Ty::One))
                } else {
                    Rule::PiIntro
                };
                Err(self.fail(&rule, ctx, focus(), Reason::CannotSynthesize))
            }
            Tm::Split {
                motive,
                branch,
                scrut,
            } => {
                let (dw, sigma) = self.infer_ty(ctx, scrut)?;
                if !matches!(sigma, Ty::Sigma(..)) {
                    return Err(self.fail(
                        &Rule::SigmaElim,
                        ctx,
                        focus(),
                        Reason::ExpectedForm {
                            expected: "Sigma-type",
                            found: print_ty_in(&sigma, ctx, self.sig),
                        },
                    ));
                }
                let (dm, db) = self.sigma_premises(ctx, &sigma, motive, branch)?;
                self.node(Rule::SigmaElim, ctx, vec![dw, dm, db], focus())
            }
            Tm::SigmaComp {
                sigma,
                motive,
                branch,
                fst,
                snd,
            } => {
                let ds = self.check_type(ctx, sigma)?;
                let Ty::Sigma(a, fam) = &**sigma else {
                    return Err(self.fail(
                        &Rule::SigmaComp,
                        ctx,
                        focus(),
                        Reason::ExpectedForm {
                            expected: "Sigma-type",
                            found: print_ty_in(sigma, ctx, self.sig),
                        },
                    ));
                };
                let dt = self.check(ctx, fst, a)?;
                let dsnd = self.check(ctx, snd, &instantiate_ty(fam, &[(**fst).clone()]))?;
                let (dm, db) = self.sigma_premises(ctx, sigma, motive, branch)?;
                self.node(Rule::SigmaComp, ctx, vec![ds, dt, dsnd, dm, db], focus())
            }
            Tm::Ev(z, x) => {
                let (dz, pi) = self.infer_ty(ctx, z)?;
                let (a, _) = self.expect_pi(Rule::PiElim, ctx, t, &pi)?;
                let dx = self.check(ctx, x, &a)?;
                self.node(Rule::PiElim, ctx, vec![dz, dx], focus())
            }
            Tm::Beta { body, arg } => {
                let (dt, a) = self.infer_ty(ctx, arg)?;
                let dv = self.infer(&ctx.extend(body.names[0].clone(), a), &body.body)?;
                self.node(Rule::PiComp, ctx, vec![dt, dv], focus())
            }
            Tm::Funext {
                left,
                right,
                homotopy,
            }
            | Tm::BetaPi {
                left,
                right,
                homotopy,
            } => {
                let (dz, pi) = self.infer_ty(ctx, left)?;
                let rule = if matches!(t, Tm::Funext { .. }) {
                    Rule::FunextIntro
                } else {
                    Rule::FunextComp
                };
                let (a, fam) = self.expect_pi(rule.clone(), ctx, t, &pi)?;
                let dz2 = self.check(ctx, right, &pi)?;
                let hom = homotopy_ty(&a, &fam, left, right);
                let dq = self.check(ctx, homotopy, &hom)?;
                self.node(rule, ctx, vec![dz, dz2, dq], focus())
            }
            Tm::EtaPi { left, right, path } => {
                let (dz, pi) = self.infer_ty(ctx, left)?;
                self.expect_pi(Rule::FunextExp, ctx, t, &pi)?;
                let dz2 = self.check(ctx, right, &pi)?;
                let id = Ty::id(pi.clone(), (**left).clone(), (**right).clone());
                let dp = self.check(ctx, path, &id)?;
                self.node(Rule::FunextExp, ctx, vec![dz, dz2, dp], focus())
            }
            Tm::Star => self.node(Rule::OneIntro, ctx, vec![], focus()),
            Tm::Ind1 {
                motive,
                base,
                scrut,
            } => {
                let dm = self.motive1(ctx, Ty::One, motive)?;
                let dc = self.check(ctx, base, &instantiate_ty(motive, &[Tm::Star]))?;
                let dt = self.check(ctx, scrut, &Ty::One)?;
                self.node(Rule::OneElim, ctx, vec![dm, dc, dt], focus())
            }
            Tm::Beta1 { motive, base } => {
                let dm = self.motive1(ctx, Ty::One, motive)?;
                let dc = self.check(ctx, base, &instantiate_ty(motive, &[Tm::Star]))?;
                self.node(Rule::OneComp, ctx, vec![dm, dc], focus())
            }
            Tm::Bot => self.node(Rule::TwoIntroBot, ctx, vec![], focus()),
            Tm::Top => self.node(Rule::TwoIntroTop, ctx, vec![], focus()),
            Tm::Ind2 {
                motive,
                on_bot,
                on_top,
                ..
            }
            | Tm::Beta2Bot {
                motive,
                on_bot,
                on_top,
            }
            | Tm::Beta2Top {
                motive,
                on_bot,
                on_top,
            } => {
                let dm = self.motive1(ctx, Ty::Two, motive)?;
                let dc = self.check(ctx, on_bot, &instantiate_ty(motive, &[Tm::Bot]))?;
                let dd = self.check(ctx, on_top, &instantiate_ty(motive, &[Tm::Top]))?;
                let mut ps = vec![dm, dc, dd];
                let rule = match t {
                    Tm::Ind2 { scrut, .. } => {
                        ps.push(self.check(ctx, scrut, &Ty::Two)?);
                        Rule::TwoElim
                    }
                    Tm::Beta2Bot { .. } => Rule::TwoCompBot,
                    _ => Rule::TwoCompTop,
                };
                self.node(rule, ctx, ps, focus())
            }
            Tm::NatZero => self.node(Rule::NatIntroZero, ctx, vec![], focus()),
            Tm::Succ(n) => {
                let dn = self.check(ctx, n, &Ty::Nat)?;
                self.node(Rule::NatIntroSucc, ctx, vec![dn], focus())
            }
            Tm::IndN {
                motive,
                base,
                step,
                scrut,
            }
            | Tm::BetaNs {
                motive,
                base,
                step,
                scrut,
            } => {
                let mut ps = self.nat_premises(ctx, motive, base, step)?;
                ps.push(self.check(ctx, scrut, &Ty::Nat)?);
                let rule = if matches!(t, Tm::IndN { .. }) {
                    Rule::NatElim
                } else {
                    Rule::NatCompSucc
                };
                self.node(rule, ctx, ps, focus())
            }
            Tm::BetaN0 { motive, base, step } => {
                let ps = self.nat_premises(ctx, motive, base, step)?;
                self.node(Rule::NatCompZero, ctx, ps, focus())
            }
            Tm::Ind0 { motive, scrut } => {
                let dm = self.motive1(ctx, Ty::Zero, motive)?;
                let dt = self.check(ctx, scrut, &Ty::Zero)?;
                self.node(Rule::ZeroElim, ctx, vec![dm, dt], focus())
            }
        }
    }
}

trait WithJudgment {
    fn with_judgment(self, judgment: String) -> Self;
}

impl WithJudgment for CheckError {
    fn with_judgment(mut self, judgment: String) -> Self {
        self.judgment = judgment;
        self
    }
}

/// Re-instantiates every rule of `d` from its premises and compares the
/// result with the stored conclusion.
pub fn replay(d: &Derivation, sig: &Signature) -> Result<(), String> {
    for p in &d.premises {
        replay(p, sig)?;
    }
    let refs: Vec<&Judgment> = d.premises.iter().map(|p| &p.conclusion).collect();
    let again = conclude(&d.rule, &d.conclusion.ctx, &refs, sig)
        .map_err(|m| format!("{}: {m}", d.rule.label()))?;
    if again == d.conclusion {
        Ok(())
    } else {
        Err(format!(
            "{}: stored conclusion `{}` differs from the re-instantiated `{}`",
            d.rule.label(),
            print_judgment(&d.conclusion, sig),
            print_judgment(&again, sig)
        ))
    }
}

/// Replays all parts of a checked judgment.
pub fn replay_checked(c: &Checked, sig: &Signature) -> Result<(), String> {
    replay(&c.context, sig)?;
    if let Some(p) = &c.presupposition {
        replay(p, sig)?;
    }
    replay(&c.derivation, sig)
}

/// Checks a judgment against a signature.
pub fn check_judgment(j: &Judgment, sig: &Signature) -> CResult<Checked> {
    Checker::new(sig).check_judgment(j)
}

/// Checks the context of a judgment-free context.
pub fn check_context(ctx: &Ctx, sig: &Signature) -> CResult<Derivation> {
    Checker::new(sig).check_context(ctx)
}

pub fn check_type(ctx: &Ctx, ty: &Ty, sig: &Signature) -> CResult<Derivation> {
    Checker::new(sig).check_type(ctx, ty)
}

/// Synthesizes a type; the context is presupposed well formed.
pub fn infer_term(ctx: &Ctx, t: &Tm, sig: &Signature) -> CResult<(Ty, Derivation)> {
    let d = Checker::new(sig).infer(ctx, t)?;
    let ty = d.term_type().expect("inference concludes a term judgment").clone();
    Ok((ty, d))
}

/// Definitional equality on types and terms.
pub fn defeq(a: &Ty, b: &Ty) -> bool {
    defeq_ty(a, b)
}
