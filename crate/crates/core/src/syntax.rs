//! Abstract syntax with de Bruijn indices.
//!
//! Binder names are kept only as printing hints: [`Name`] compares equal to
//! every other name, so the derived equality on [`Ty`] and [`Tm`] is
//! α-equality. Explicit substitutions never appear in the tree; they are
//! applied eagerly by [`crate::subst`].

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// A printing hint for a bound variable. All names are equal.
#[derive(Clone)]
pub struct Name(pub Arc<str>);

impl Name {
    pub fn new(s: &str) -> Self {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl PartialEq for Name {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Name {}

impl Hash for Name {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A body under `names.len()` binders. The last name binds index 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Bind<T> {
    pub names: Vec<Name>,
    pub body: Arc<T>,
}

impl<T> Bind<T> {
    pub fn new(names: &[&str], body: T) -> Self {
        Bind {
            names: names.iter().map(|n| Name::new(n)).collect(),
            body: Arc::new(body),
        }
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }
}

/// Type expressions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Ty {
    /// A declared closed base type.
    Base(Arc<str>),
    Id(Arc<Ty>, Arc<Tm>, Arc<Tm>),
    Sigma(Arc<Ty>, Bind<Ty>),
    Pi(Arc<Ty>, Bind<Ty>),
    Zero,
    One,
    Two,
    Nat,
}

/// Term expressions. Motives are explicit arguments of every eliminator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Tm {
    Var(usize),
    /// `(t : T)`; switches an introduction form into synthesis mode.
    Ann(Arc<Tm>, Arc<Ty>),
    Refl(Arc<Tm>),
    J {
        motive: Bind<Ty>,
        branch: Bind<Tm>,
        left: Arc<Tm>,
        right: Arc<Tm>,
        path: Arc<Tm>,
    },
    H {
        motive: Bind<Ty>,
        branch: Bind<Tm>,
        point: Arc<Tm>,
    },
    Pair(Arc<Tm>, Arc<Tm>),
    Split {
        motive: Bind<Ty>,
        branch: Bind<Tm>,
        scrut: Arc<Tm>,
    },
    SigmaComp {
        sigma: Arc<Ty>,
        motive: Bind<Ty>,
        branch: Bind<Tm>,
        fst: Arc<Tm>,
        snd: Arc<Tm>,
    },
    Lam(Bind<Tm>),
    Ev(Arc<Tm>, Arc<Tm>),
    Beta {
        body: Bind<Tm>,
        arg: Arc<Tm>,
    },
    Funext {
        left: Arc<Tm>,
        right: Arc<Tm>,
        homotopy: Arc<Tm>,
    },
    BetaPi {
        left: Arc<Tm>,
        right: Arc<Tm>,
        homotopy: Arc<Tm>,
    },
    EtaPi {
        left: Arc<Tm>,
        right: Arc<Tm>,
        path: Arc<Tm>,
    },
    Star,
    Ind1 {
        motive: Bind<Ty>,
        base: Arc<Tm>,
        scrut: Arc<Tm>,
    },
    Beta1 {
        motive: Bind<Ty>,
        base: Arc<Tm>,
    },
    Bot,
    Top,
    Ind2 {
        motive: Bind<Ty>,
        on_bot: Arc<Tm>,
        on_top: Arc<Tm>,
        scrut: Arc<Tm>,
    },
    Beta2Bot {
        motive: Bind<Ty>,
        on_bot: Arc<Tm>,
        on_top: Arc<Tm>,
    },
    Beta2Top {
        motive: Bind<Ty>,
        on_bot: Arc<Tm>,
        on_top: Arc<Tm>,
    },
    NatZero,
    Succ(Arc<Tm>),
    IndN {
        motive: Bind<Ty>,
        base: Arc<Tm>,
        step: Bind<Tm>,
        scrut: Arc<Tm>,
    },
    BetaN0 {
        motive: Bind<Ty>,
        base: Arc<Tm>,
        step: Bind<Tm>,
    },
    BetaNs {
        motive: Bind<Ty>,
        base: Arc<Tm>,
        step: Bind<Tm>,
        scrut: Arc<Tm>,
    },
    Ind0 {
        motive: Bind<Ty>,
        scrut: Arc<Tm>,
    },
}

impl Ty {
    pub fn base(name: &str) -> Ty {
        Ty::Base(Arc::from(name))
    }

    pub fn id(a: Ty, t: Tm, u: Tm) -> Ty {
        Ty::Id(Arc::new(a), Arc::new(t), Arc::new(u))
    }

    pub fn sigma(x: &str, a: Ty, b: Ty) -> Ty {
        Ty::Sigma(Arc::new(a), Bind::new(&[x], b))
    }

    pub fn pi(x: &str, a: Ty, b: Ty) -> Ty {
        Ty::Pi(Arc::new(a), Bind::new(&[x], b))
    }
}

impl Tm {
    pub fn var(i: usize) -> Tm {
        Tm::Var(i)
    }

    pub fn refl(t: Tm) -> Tm {
        Tm::Refl(Arc::new(t))
    }

    pub fn ann(t: Tm, ty: Ty) -> Tm {
        Tm::Ann(Arc::new(t), Arc::new(ty))
    }

    pub fn ev(z: Tm, t: Tm) -> Tm {
        Tm::Ev(Arc::new(z), Arc::new(t))
    }

    pub fn succ(t: Tm) -> Tm {
        Tm::Succ(Arc::new(t))
    }

    pub fn lam(x: &str, body: Tm) -> Tm {
        Tm::Lam(Bind::new(&[x], body))
    }

    pub fn pair(t: Tm, u: Tm) -> Tm {
        Tm::Pair(Arc::new(t), Arc::new(u))
    }

    /// Removes every annotation node.
    pub fn erase(&self) -> Tm {
        crate::subst::erase_tm(self)
    }
}

/// A context as a persistent list; extension shares the prefix.
#[derive(Clone, Default)]
pub struct Ctx(Option<Arc<CtxNode>>);

struct CtxNode {
    name: Name,
    ty: Ty,
    len: usize,
    parent: Ctx,
}

impl Ctx {
    pub fn empty() -> Ctx {
        Ctx(None)
    }

    pub fn len(&self) -> usize {
        self.0.as_ref().map_or(0, |n| n.len)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn extend(&self, name: Name, ty: Ty) -> Ctx {
        Ctx(Some(Arc::new(CtxNode {
            name,
            ty,
            len: self.len() + 1,
            parent: self.clone(),
        })))
    }

    pub fn push(&self, name: &str, ty: Ty) -> Ctx {
        self.extend(Name::new(name), ty)
    }

    /// The last entry and the prefix before it.
    pub fn split_last(&self) -> Option<(&Name, &Ty, &Ctx)> {
        self.0.as_ref().map(|n| (&n.name, &n.ty, &n.parent))
    }

    /// The entry bound by de Bruijn index `i`, typed in its own prefix.
    pub fn entry(&self, i: usize) -> Option<(&Name, &Ty)> {
        let mut cur = self;
        let mut k = i;
        loop {
            let node = cur.0.as_ref()?;
            if k == 0 {
                return Some((&node.name, &node.ty));
            }
            k -= 1;
            cur = &node.parent;
        }
    }

    /// Entries from outermost to innermost.
    pub fn entries(&self) -> Vec<(Name, Ty)> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = self;
        while let Some(node) = cur.0.as_ref() {
            out.push((node.name.clone(), node.ty.clone()));
            cur = &node.parent;
        }
        out.reverse();
        out
    }

    pub fn from_entries<I: IntoIterator<Item = (Name, Ty)>>(entries: I) -> Ctx {
        entries
            .into_iter()
            .fold(Ctx::empty(), |c, (n, t)| c.extend(n, t))
    }

    /// The prefix of length `n`.
    pub fn prefix(&self, n: usize) -> Ctx {
        let mut cur = self.clone();
        while cur.len() > n {
            cur = cur.split_last().map(|(_, _, p)| p.clone()).unwrap_or_default();
        }
        cur
    }

    pub fn names(&self) -> Vec<Name> {
        self.entries().into_iter().map(|(n, _)| n).collect()
    }
}

impl PartialEq for Ctx {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                Arc::ptr_eq(a, b) || (a.len == b.len && a.ty == b.ty && a.parent == b.parent)
            }
            _ => false,
        }
    }
}

impl Eq for Ctx {}

impl fmt::Debug for Ctx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries()).finish()
    }
}

/// The five judgment forms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Subject {
    Ctx,
    Type(Ty),
    Term(Tm, Ty),
    TypeEq(Ty, Ty),
    TermEq(Tm, Tm, Ty),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Judgment {
    pub ctx: Ctx,
    pub subject: Subject,
}

impl Judgment {
    pub fn new(ctx: Ctx, subject: Subject) -> Self {
        Judgment { ctx, subject }
    }

    pub fn kind(&self) -> &'static str {
        match self.subject {
            Subject::Ctx => "ctx",
            Subject::Type(_) => "type",
            Subject::Term(..) => "term",
            Subject::TypeEq(..) => "type-eq",
            Subject::TermEq(..) => "term-eq",
        }
    }
}

/// A position in a source file, 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// The declared base types of a document.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Signature {
    pub base_types: Vec<Arc<str>>,
}

impl Signature {
    pub fn with_types(names: &[&str]) -> Self {
        Signature {
            base_types: names.iter().map(|n| Arc::from(*n)).collect(),
        }
    }

    pub fn has(&self, name: &str) -> bool {
        self.base_types.iter().any(|b| &**b == name)
    }
}

/// A judgment together with where it was written.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Item {
    pub judgment: Judgment,
    pub span: Span,
}

/// A parsed source file: base type declarations and judgments.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Document {
    pub signature: Signature,
    pub items: Vec<Item>,
}
