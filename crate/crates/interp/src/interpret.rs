//! The interpretation of derivations.
//!
//! A context is a groupoid built by iterated total groupoids, a type is a
//! pseudofunctor over its context, and a term is a section of the display
//! map of its type. Each rule node is interpreted from its premises.

use std::collections::HashMap;
use std::sync::Arc;

use att_core::subst::erase_ty;
use att_core::{Checked, Checker, Ctx, Derivation, Rule, Signature, Subject, Subst, Tm, Ty};
use att_model::format::Model;
use att_model::grothendieck::{
    check_section, pullback_pair, reindex_display, reindex_section, total_groupoid,
    upper_functor, DisplayMap,
};
use att_model::groupoid::{FinGroupoid, Functor};
use att_model::id_former::{build_id, IdStructure};
use att_model::pseudo::{reindex, PseudoFunctor};

use crate::error::{IResult, InterpError};

/// The interpretation of a context `x₁:A₁, …, xₙ:Aₙ`.
#[derive(Clone, Debug)]
pub struct SemCtx {
    /// `levels[k]` interprets the prefix with `k` entries.
    pub levels: Vec<Arc<FinGroupoid>>,
    /// `displays[k] : levels[k+1] → levels[k]`.
    pub displays: Vec<DisplayMap>,
}

impl SemCtx {
    pub fn groupoid(&self) -> &Arc<FinGroupoid> {
        self.levels.last().expect("a context has a base level")
    }

    pub fn len(&self) -> usize {
        self.displays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.displays.is_empty()
    }

    /// The projection onto the prefix with `k` entries.
    pub fn projection(&self, k: usize) -> Functor {
        let mut f = Functor::identity(self.groupoid());
        for d in self.displays[k..].iter().rev() {
            f = d.proj.after(&f);
        }
        f
    }
}

/// A section of the display map of a type.
#[derive(Clone, Debug)]
pub struct SemTerm {
    pub display: DisplayMap,
    pub section: Functor,
}

impl SemTerm {
    /// Equality of sections over the same family.
    pub fn same(&self, o: &SemTerm) -> bool {
        *self.display.fam == *o.display.fam && self.section == o.section
    }
}

#[derive(Clone, Debug)]
pub enum Meaning {
    Ctx,
    Type(Arc<PseudoFunctor>),
    Term(SemTerm),
    TypeEq {
        left: Arc<PseudoFunctor>,
        right: Arc<PseudoFunctor>,
    },
    TermEq {
        left: SemTerm,
        right: SemTerm,
    },
}

#[derive(Clone, Debug)]
pub struct Interpretation {
    pub ctx: Arc<SemCtx>,
    pub meaning: Meaning,
}

impl Interpretation {
    /// Whether an equality judgment holds as an equality of functors;
    /// true for the other judgment forms.
    pub fn holds(&self) -> bool {
        match &self.meaning {
            Meaning::TypeEq { left, right } => left == right,
            Meaning::TermEq { left, right } => left.same(right),
            _ => true,
        }
    }
}

fn key(ctx: &Ctx) -> Vec<Ty> {
    ctx.entries().iter().map(|(_, t)| erase_ty(t)).collect()
}

fn type_of(d: &Derivation) -> &Ty {
    match &d.conclusion.subject {
        Subject::Type(t) => t,
        Subject::Term(_, t) => t,
        _ => unreachable!("premise concludes a type or term judgment"),
    }
}

/// Interprets derivations in one model, caching contexts, types and
/// identity structures.
pub struct Interpreter<'m> {
    model: &'m Model,
    sig: Signature,
    terminal: Arc<FinGroupoid>,
    ctxs: HashMap<Vec<Ty>, Arc<SemCtx>>,
    types: HashMap<(Vec<Ty>, Ty), Arc<PseudoFunctor>>,
    ids: HashMap<Vec<Ty>, Arc<IdStructure>>,
}

/// Rule labels the interpreter handles.
pub const FRAGMENT: &[&str] = &[
    "Ctx-Empty",
    "Ctx-Ext",
    "Base-Form",
    "Id-Form",
    "Var",
    "Ann",
    "Conv",
    "Id-Intro",
    "Id-Elim",
    "Id-Comp-Axiom",
    "Type-Eq-Refl",
    "Term-Eq-Refl",
];

/// Whether every rule of a checked judgment lies in [`FRAGMENT`].
pub fn in_fragment(c: &Checked) -> bool {
    c.rule_counts().keys().all(|l| FRAGMENT.contains(l))
}

impl<'m> Interpreter<'m> {
    pub fn new(model: &'m Model, sig: &Signature) -> Self {
        Interpreter {
            model,
            sig: sig.clone(),
            terminal: Arc::new(FinGroupoid::terminal()),
            ctxs: HashMap::new(),
            types: HashMap::new(),
            ids: HashMap::new(),
        }
    }

    pub fn model(&self) -> &Model {
        self.model
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    /// Whether the model interprets every declared base type.
    pub fn covers_signature(&self) -> bool {
        self.sig
            .base_types
            .iter()
            .all(|t| self.model.base_type(t).is_some())
    }

    /// Interprets a checked judgment.
    pub fn judgment(&mut self, c: &Checked) -> IResult<Interpretation> {
        let ctx = self.ctx_from(&c.context)?;
        let d = &c.derivation;
        let meaning = match &d.conclusion.subject {
            Subject::Ctx => Meaning::Ctx,
            Subject::Type(_) => Meaning::Type(self.ty(d)?),
            Subject::Term(..) => {
                let t = self.tm(d)?;
                if let Some(p) = &c.presupposition {
                    let fam = self.ty(p)?;
                    self.agrees(&t, &fam)?;
                }
                Meaning::Term(t)
            }
            Subject::TypeEq(..) => Meaning::TypeEq {
                left: self.ty(&d.premises[0])?,
                right: self.ty(&d.premises[1])?,
            },
            Subject::TermEq(..) => {
                let (left, right) = (self.tm(&d.premises[0])?, self.tm(&d.premises[1])?);
                if let Some(p) = &c.presupposition {
                    let fam = self.ty(p)?;
                    self.agrees(&left, &fam)?;
                    self.agrees(&right, &fam)?;
                }
                Meaning::TermEq { left, right }
            }
        };
        Ok(Interpretation { ctx, meaning })
    }

    /// Checks that a term lies over the interpretation of its type and is
    /// a section there.
    fn agrees(&self, t: &SemTerm, fam: &PseudoFunctor) -> IResult<()> {
        if *t.display.fam != *fam {
            return Err(InterpError::Mismatch(
                "a term is interpreted over a family other than its type".into(),
            ));
        }
        check_section(&t.display, &t.section).into_result()?;
        Ok(())
    }

    /// The interpretation of a context, through its formation derivation.
    pub fn context(&mut self, ctx: &Ctx) -> IResult<Arc<SemCtx>> {
        if let Some(s) = self.ctxs.get(&key(ctx)) {
            return Ok(s.clone());
        }
        let d = Checker::new(&self.sig).check_context(ctx)?;
        self.ctx_from(&d)
    }

    fn ctx_from(&mut self, d: &Derivation) -> IResult<Arc<SemCtx>> {
        let k = key(&d.conclusion.ctx);
        if let Some(s) = self.ctxs.get(&k) {
            return Ok(s.clone());
        }
        let sem = match &d.rule {
            Rule::CtxEmpty => SemCtx {
                levels: vec![self.terminal.clone()],
                displays: Vec::new(),
            },
            Rule::CtxExt => {
                let parent = self.ctx_from(&d.premises[0])?;
                let fam = self.ty(&d.premises[1])?;
                let disp = total_groupoid(fam)?;
                let mut sem = (*parent).clone();
                sem.levels.push(disp.total.clone());
                sem.displays.push(disp);
                sem
            }
            other => return Err(InterpError::Unsupported(other.label())),
        };
        let sem = Arc::new(sem);
        self.ctxs.insert(k, sem.clone());
        Ok(sem)
    }

    /// The interpretation of a type formation derivation.
    pub fn ty(&mut self, d: &Derivation) -> IResult<Arc<PseudoFunctor>> {
        let ctx = &d.conclusion.ctx;
        let k = (key(ctx), erase_ty(type_of(d)));
        if let Some(f) = self.types.get(&k) {
            return Ok(f.clone());
        }
        let fam = match &d.rule {
            Rule::BaseForm(name) => {
                let sem = self.context(ctx)?;
                let closed = self.model.base_type(name).ok_or_else(|| {
                    InterpError::MissingBaseType {
                        ty: name.to_string(),
                        model: self.model.name.clone(),
                    }
                })?;
                let bang = Functor::to_terminal(sem.groupoid(), &closed.base);
                reindex(closed, &bang)?
            }
            Rule::IdForm => {
                let ids = self.ids(ctx, type_of(&d.premises[0]))?;
                let t = self.tm(&d.premises[1])?;
                let u = self.tm(&d.premises[2])?;
                reindex(&ids.id.fam, &ids.pair(&t.section, &u.section))?
            }
            other => return Err(InterpError::Unsupported(other.label())),
        };
        let fam = Arc::new(fam);
        self.types.insert(k, fam.clone());
        Ok(fam)
    }

    /// The identity structure of `A` over the interpretation of `ctx`.
    pub fn ids(&mut self, ctx: &Ctx, a: &Ty) -> IResult<Arc<IdStructure>> {
        let ext = ctx.push("_", a.clone());
        let k = key(&ext);
        if let Some(s) = self.ids.get(&k) {
            return Ok(s.clone());
        }
        let sem = self.context(&ext)?;
        let ids = Arc::new(build_id(sem.displays.last().expect("extended context"))?);
        self.ids.insert(k, ids.clone());
        Ok(ids)
    }

    /// The interpretation of a term derivation.
    pub fn tm(&mut self, d: &Derivation) -> IResult<SemTerm> {
        let ctx = &d.conclusion.ctx;
        let ps = &d.premises;
        match &d.rule {
            Rule::Var(i) => {
                let sem = self.context(ctx)?;
                let m = sem.len() - 1 - i;
                let dm = &sem.displays[m];
                let display = reindex_display(dm, &sem.projection(m))?;
                let section = pullback_pair(
                    &display,
                    &Functor::identity(sem.groupoid()),
                    &sem.projection(m + 1),
                    dm,
                );
                Ok(SemTerm { display, section })
            }
            Rule::Ann => self.tm(&ps[1]),
            Rule::Conv(_) => self.tm(&ps[0]),
            Rule::IdIntro => {
                let ids = self.ids(ctx, type_of(&ps[0]))?;
                let t = self.tm(&ps[0])?;
                let (rd, rs) = ids.refl()?;
                let (display, section) = reindex_section(&rd, &rs, &t.section)?;
                Ok(SemTerm { display, section })
            }
            Rule::IdElim => {
                let ids = self.ids(ctx, type_of(&ps[0]))?;
                let (t, u, p) = (self.tm(&ps[0])?, self.tm(&ps[1])?, self.tm(&ps[2])?);
                let motive = self.ty(&ps[3])?;
                let c = self.tm(&ps[4])?;
                let je = ids.j_elim(motive, &c.section)?;
                let pair = ids.pair(&t.section, &u.section);
                let w = upper_functor(&ids.id, &pair, &p.display).after(&p.section);
                let (display, section) = reindex_section(&je.motive, &je.j, &w)?;
                Ok(SemTerm { display, section })
            }
            Rule::IdComp => {
                let ids = self.ids(ctx, type_of(&ps[0]))?;
                let t = self.tm(&ps[0])?;
                let motive = self.ty(&ps[1])?;
                let c = self.tm(&ps[2])?;
                let je = ids.j_elim(motive, &c.section)?;
                let hc = ids.h_comp(&je)?;
                let (display, section) = reindex_section(&hc.display, &hc.section, &t.section)?;
                Ok(SemTerm { display, section })
            }
            other => Err(InterpError::Unsupported(other.label())),
        }
    }

    /// Checks and interprets `ctx ⊢ t : ty`.
    pub fn term_in(&mut self, ctx: &Ctx, t: &Tm, ty: &Ty) -> IResult<SemTerm> {
        let d = Checker::new(&self.sig).check(ctx, t, ty)?;
        self.tm(&d)
    }

    /// Checks and interprets `ctx ⊢ ty type`.
    pub fn type_in(&mut self, ctx: &Ctx, ty: &Ty) -> IResult<Arc<PseudoFunctor>> {
        let d = Checker::new(&self.sig).check_type(ctx, ty)?;
        self.ty(&d)
    }

    /// The functor `⟦Δ⟧ → ⟦Γ⟧` of a substitution `σ : Δ → Γ`, built entry
    /// by entry from the sections interpreting its components.
    pub fn substitution(&mut self, delta: &Ctx, gamma: &Ctx, sigma: &Subst) -> IResult<Functor> {
        let sg = self.context(gamma)?;
        let sd = self.context(delta)?;
        let entries = gamma.entries();
        let n = entries.len();
        let mut f = Functor::to_terminal(sd.groupoid(), &sg.levels[0]);
        for (k, (_, a)) in entries.iter().enumerate() {
            let i = n - 1 - k;
            let comp = sigma.lookup(i);
            let var_ty = att_core::subst::shift_ty(a, i + 1, 0);
            let ty = att_core::subst_ty(&var_ty, sigma);
            let s = self.term_in(delta, &comp, &ty)?;
            let df = reindex_display(&sg.displays[k], &f)?;
            if *df.fam != *s.display.fam {
                return Err(InterpError::Mismatch(format!(
                    "component {k} of the substitution lies over the wrong family"
                )));
            }
            f = upper_functor(&sg.displays[k], &f, &df).after(&s.section);
        }
        Ok(f)
    }
}
