//! Soundness checks of the interpretation on a document: every judgment
//! of the fragment interprets, equalities hold as equalities of functors,
//! and weakening and substitution commute with interpretation.

use std::fmt;

use att_core::print::print_tm_in;
use att_core::subst::{shift_ty, subst_tm, subst_ty};
use att_core::{
    check_judgment, defeq_ty, parse_document, parse_judgment, replay, Checked, Ctx, Derivation,
    Document, Judgment, Rule, Signature, Subject, Subst, Tm, Ty,
};
use att_model::format::Model;
use att_model::grothendieck::reindex_section;
use att_model::pseudo::reindex;
use serde::Serialize;

use crate::error::{IResult, InterpError};
use crate::interpret::{in_fragment, Interpreter, Meaning};

/// One check on one item.
#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub item: usize,
    pub line: usize,
    pub check: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SoundnessReport {
    pub model: String,
    pub items: usize,
    pub interpreted: usize,
    pub skipped: usize,
    pub findings: Vec<Finding>,
}

impl SoundnessReport {
    pub fn ok(&self) -> bool {
        self.findings.iter().all(|f| f.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| !f.ok)
    }

    pub fn count(&self, check: &str) -> usize {
        self.findings
            .iter()
            .filter(|f| f.check.starts_with(check))
            .count()
    }
}

impl fmt::Display for SoundnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "model {}: {} items, {} interpreted, {} outside the fragment, {} checks, {} failed",
            self.model,
            self.items,
            self.interpreted,
            self.skipped,
            self.findings.len(),
            self.failures().count()
        )?;
        for x in self.failures() {
            writeln!(f, "  item {} (line {}): {}: {}", x.item, x.line, x.check, x.detail)?;
        }
        Ok(())
    }
}

enum Part {
    Ty(Ty),
    Tm(Tm, Ty),
}

fn parts(s: &Subject) -> Vec<Part> {
    match s {
        Subject::Ctx => Vec::new(),
        Subject::Type(a) => vec![Part::Ty(a.clone())],
        Subject::Term(t, a) => vec![Part::Tm(t.clone(), a.clone())],
        Subject::TypeEq(a, b) => vec![Part::Ty(a.clone()), Part::Ty(b.clone())],
        Subject::TermEq(t, u, a) => vec![
            Part::Tm(t.clone(), a.clone()),
            Part::Tm(u.clone(), a.clone()),
        ],
    }
}

fn lifted(s: Subst, times: usize) -> Subst {
    (0..times).fold(s, |s, _| s.lift())
}

/// A context morphism `σ : Δ → Γ` given syntactically.
struct Morphism {
    delta: Ctx,
    sigma: Subst,
}

/// Inserts `b` as entry `k` of `ctx`.
fn weakening(ctx: &Ctx, k: usize, b: &Ty) -> Morphism {
    let entries = ctx.entries();
    let mut delta = Ctx::from_entries(entries[..k].iter().cloned());
    delta = delta.push("_w", b.clone());
    for (j, (name, ty)) in entries.iter().enumerate().skip(k) {
        delta = delta.extend(name.clone(), subst_ty(ty, &lifted(Subst::weakening(1), j - k)));
    }
    Morphism {
        delta,
        sigma: lifted(Subst::weakening(1), entries.len() - k),
    }
}

/// Replaces entry `k` of `ctx` by the term `s` of the prefix before it.
fn substitution(ctx: &Ctx, k: usize, s: &Tm) -> Morphism {
    let entries = ctx.entries();
    let mut delta = Ctx::from_entries(entries[..k].iter().cloned());
    let inst = Subst::instantiate(std::slice::from_ref(s));
    for (j, (name, ty)) in entries.iter().enumerate().skip(k + 1) {
        delta = delta.extend(name.clone(), subst_ty(ty, &lifted(inst.clone(), j - k - 1)));
    }
    Morphism {
        delta,
        sigma: lifted(inst, entries.len() - k - 1),
    }
}

/// A term of the prefix `Γ_k` at the type of entry `k`: a variable of that
/// type, or a reflexivity proof when the entry is `Id(A, t, t)`.
fn witness(ctx: &Ctx, k: usize) -> Option<Tm> {
    let entries = ctx.entries();
    let target = &entries[k].1;
    for j in 0..k {
        let i = k - 1 - j;
        if defeq_ty(&shift_ty(&entries[j].1, i + 1, 0), target) {
            return Some(Tm::Var(i));
        }
    }
    match target {
        Ty::Id(_, t, u) if att_core::defeq_tm(t, u) => Some(Tm::refl((**t).clone())),
        _ => None,
    }
}

fn commutes(interp: &mut Interpreter, gamma: &Ctx, m: &Morphism, subject: &Subject) -> IResult<()> {
    let f = interp.substitution(&m.delta, gamma, &m.sigma)?;
    for part in parts(subject) {
        match part {
            Part::Ty(a) => {
                let fam = interp.type_in(gamma, &a)?;
                let moved = interp.type_in(&m.delta, &subst_ty(&a, &m.sigma))?;
                if reindex(&fam, &f)? != *moved {
                    return Err(InterpError::Mismatch(
                        "re-indexing the type differs from the moved type".into(),
                    ));
                }
            }
            Part::Tm(t, a) => {
                let st = interp.term_in(gamma, &t, &a)?;
                let moved =
                    interp.term_in(&m.delta, &subst_tm(&t, &m.sigma), &subst_ty(&a, &m.sigma))?;
                let (d, s) = reindex_section(&st.display, &st.section, &f)?;
                if *d.fam != *moved.display.fam || s != moved.section {
                    return Err(InterpError::Mismatch(
                        "re-indexing the term differs from the moved term".into(),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// The same derivation with a redundant conversion step on top.
fn with_redundant_conv(d: &Derivation) -> Option<Derivation> {
    let ty = d.term_type()?.clone();
    Some(Derivation {
        rule: Rule::Conv(ty),
        conclusion: d.conclusion.clone(),
        premises: vec![d.clone()],
    })
}

fn reassociation(interp: &mut Interpreter, c: &Checked) -> IResult<bool> {
    let Some(d2) = with_redundant_conv(&c.derivation) else {
        return Ok(true);
    };
    replay(&d2, interp.signature()).map_err(InterpError::Mismatch)?;
    Ok(interp.tm(&c.derivation)?.same(&interp.tm(&d2)?))
}

/// Runs every soundness check on the items of `doc` in `model`. Items
/// using rules outside the interpreted fragment are counted as skipped.
pub fn soundness(doc: &Document, model: &Model) -> SoundnessReport {
    let mut interp = Interpreter::new(model, &doc.signature);
    let mut report = SoundnessReport {
        model: model.name.clone(),
        items: doc.items.len(),
        interpreted: 0,
        skipped: 0,
        findings: Vec::new(),
    };
    let weak_ty = doc
        .signature
        .base_types
        .first()
        .map(|b| Ty::Base(b.clone()));
    for (ix, item) in doc.items.iter().enumerate() {
        let line = item.span.line;
        let push = |report: &mut SoundnessReport, check: String, r: IResult<bool>| {
            let (ok, detail) = match r {
                Ok(true) => (true, String::new()),
                Ok(false) => (false, "does not hold".into()),
                Err(e) => (false, e.to_string()),
            };
            report.findings.push(Finding {
                item: ix,
                line,
                check,
                ok,
                detail,
            });
        };
        let j = &item.judgment;
        let c = match check_judgment(j, &doc.signature) {
            Ok(c) => c,
            Err(e) => {
                push(&mut report, "checks".into(), Err(e.into()));
                continue;
            }
        };
        if !in_fragment(&c) {
            report.skipped += 1;
            continue;
        }
        let interpreted = interp.judgment(&c);
        let holds = interpreted.as_ref().map(|i| i.holds()).unwrap_or(false);
        let is_eq = interpreted
            .as_ref()
            .is_ok_and(|i| matches!(i.meaning, Meaning::TypeEq { .. } | Meaning::TermEq { .. }));
        let ok = interpreted.is_ok();
        push(&mut report, "interprets".into(), interpreted.map(|_| true));
        if !ok {
            continue;
        }
        report.interpreted += 1;
        if is_eq {
            push(&mut report, "equality holds".into(), Ok(holds));
        }
        if matches!(j.subject, Subject::Term(..)) {
            push(&mut report, "conversion reassociation".into(), reassociation(&mut interp, &c));
        }
        let n = j.ctx.len();
        if let Some(b) = &weak_ty {
            for k in 0..=n {
                let m = weakening(&j.ctx, k, b);
                let r = commutes(&mut interp, &j.ctx, &m, &j.subject).map(|_| true);
                push(&mut report, format!("weakening at {k}"), r);
            }
        }
        for k in 0..n {
            if let Some(s) = witness(&j.ctx, k) {
                let m = substitution(&j.ctx, k, &s);
                let r = commutes(&mut interp, &j.ctx, &m, &j.subject).map(|_| true);
                push(&mut report, format!("substitution at {k}"), r);
            }
        }
    }
    report
}

/// The `J`-redex on a reflexivity proof against its branch, both well
/// typed, interpreted side by side.
#[derive(Clone, Debug, Serialize)]
pub struct RedexWitness {
    pub model: String,
    pub redex: String,
    pub branch: String,
    /// The checker's verdict on the judgmental equation.
    pub rejection: String,
    pub functor_eq: bool,
    pub first_difference: Option<String>,
    /// Whether the computation axiom term interprets as a section of its
    /// `Id`-type.
    pub axiom_interprets: bool,
}

const WITNESS: &str = "\
type A
type B
b:B, x:A |- J(a a2 p. B, a. b, x, x, r(x)) : B
b:B, x:A |- b : B
b:B, x:A |- H(a a2 p. B, a. b, x) : Id(B, J(a a2 p. B, a. b, x, x, r(x)), b)
";

const EQUATION: &str = "b:B, x:A |- J(a a2 p. B, a. b, x, x, r(x)) == b : B";

fn term_of(j: &Judgment, sig: &Signature) -> String {
    match &j.subject {
        Subject::Term(t, _) => print_tm_in(t, &j.ctx, sig),
        _ => String::new(),
    }
}

/// Interprets `J(B, b, x, x, r(x))` and `b` in `b:B, x:A` and compares them.
pub fn redex_witness(model: &Model) -> IResult<RedexWitness> {
    let doc = parse_document(WITNESS).expect("the witness document parses");
    let rejection = match parse_judgment(EQUATION, &doc.signature)
        .map(|j| check_judgment(&j, &doc.signature))
    {
        Ok(Ok(_)) => "accepted".to_string(),
        Ok(Err(e)) => e.to_string(),
        Err(e) => e.to_string(),
    };
    let mut interp = Interpreter::new(model, &doc.signature);
    let mut terms = Vec::new();
    for item in &doc.items {
        let c = check_judgment(&item.judgment, &doc.signature)?;
        terms.push(interp.judgment(&c)?);
    }
    let sem = |i: usize| match &terms[i].meaning {
        Meaning::Term(t) => t.clone(),
        _ => unreachable!("witness items are term judgments"),
    };
    let (redex, branch) = (sem(0), sem(1));
    Ok(RedexWitness {
        model: model.name.clone(),
        redex: term_of(&doc.items[0].judgment, &doc.signature),
        branch: term_of(&doc.items[1].judgment, &doc.signature),
        rejection,
        functor_eq: redex.same(&branch),
        first_difference: redex.section.first_difference(&branch.section),
        axiom_interprets: matches!(terms[2].meaning, Meaning::Term(_)),
    })
}
