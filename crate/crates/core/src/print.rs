//! Printing in the surface syntax accepted by [`crate::parse`].
//!
//! Bound names are freshened so that printing never captures, which makes
//! `parse(print(j)) == j` up to α-equivalence.

use std::fmt::{self, Write};

use crate::parse::is_keyword;
use crate::syntax::{Bind, Ctx, Document, Judgment, Signature, Subject, Tm, Ty};

pub struct Printer<'a> {
    sig: &'a Signature,
    scope: Vec<String>,
}

impl<'a> Printer<'a> {
    pub fn new(sig: &'a Signature) -> Self {
        Printer {
            sig,
            scope: Vec::new(),
        }
    }

    fn fresh(&self, hint: &str) -> String {
        let base = if hint.is_empty() || is_keyword(hint) {
            "x"
        } else {
            hint
        };
        let taken = |s: &str| self.scope.iter().any(|n| n == s) || self.sig.has(s) || is_keyword(s);
        if !taken(base) {
            return base.to_string();
        }
        let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
        let stem = if stem.is_empty() { "x" } else { stem };
        (1..)
            .map(|k| format!("{stem}{k}"))
            .find(|s| !taken(s))
            .expect("unbounded supply of names")
    }

    fn with_names<T>(&mut self, hints: &[&str], f: impl FnOnce(&mut Self, &[String]) -> T) -> T {
        let depth = self.scope.len();
        let mut names = Vec::new();
        for h in hints {
            let n = self.fresh(h);
            self.scope.push(n.clone());
            names.push(n);
        }
        let r = f(self, &names);
        self.scope.truncate(depth);
        r
    }

    fn var(&self, i: usize) -> String {
        if i < self.scope.len() {
            self.scope[self.scope.len() - 1 - i].clone()
        } else {
            format!("#{}", i - self.scope.len())
        }
    }

    pub fn ty(&mut self, t: &Ty) -> String {
        let mut s = String::new();
        self.write_ty(&mut s, t);
        s
    }

    pub fn tm(&mut self, t: &Tm) -> String {
        let mut s = String::new();
        self.write_tm(&mut s, t);
        s
    }

    fn write_ty(&mut self, s: &mut String, t: &Ty) {
        match t {
            Ty::Base(n) => s.push_str(n),
            Ty::Id(a, x, y) => {
                s.push_str("Id(");
                self.write_ty(s, a);
                s.push_str(", ");
                self.write_tm(s, x);
                s.push_str(", ");
                self.write_tm(s, y);
                s.push(')');
            }
            Ty::Sigma(a, b) | Ty::Pi(a, b) => {
                s.push_str(if matches!(t, Ty::Sigma(..)) {
                    "Sigma "
                } else {
                    "Pi "
                });
                let name = self.fresh(b.names[0].as_str());
                s.push_str(&name);
                s.push(':');
                let wrap = matches!(**a, Ty::Sigma(..) | Ty::Pi(..));
                if wrap {
                    s.push('(');
                }
                self.write_ty(s, a);
                if wrap {
                    s.push(')');
                }
                s.push_str(". ");
                self.scope.push(name);
                self.write_ty(s, &b.body);
                self.scope.pop();
            }
            Ty::Zero => s.push_str("Zero"),
            Ty::One => s.push_str("One"),
            Ty::Two => s.push_str("Two"),
            Ty::Nat => s.push_str("Nat"),
        }
    }

    fn write_bind_ty(&mut self, s: &mut String, b: &Bind<Ty>) {
        let hints: Vec<&str> = b.names.iter().map(|n| n.as_str()).collect();
        self.with_names(&hints, |p, names| {
            s.push_str(&names.join(" "));
            s.push_str(". ");
            p.write_ty(s, &b.body);
        });
    }

    fn write_bind_tm(&mut self, s: &mut String, b: &Bind<Tm>) {
        let hints: Vec<&str> = b.names.iter().map(|n| n.as_str()).collect();
        self.with_names(&hints, |p, names| {
            s.push_str(&names.join(" "));
            s.push_str(". ");
            p.write_tm(s, &b.body);
        });
    }

    fn call(&mut self, s: &mut String, head: &str, args: &[Arg<'_>]) {
        s.push_str(head);
        s.push('(');
        for (k, a) in args.iter().enumerate() {
            if k > 0 {
                s.push_str(", ");
            }
            match a {
                Arg::Tm(t) => self.write_tm(s, t),
                Arg::Ty(t) => self.write_ty(s, t),
                Arg::BTy(b) => self.write_bind_ty(s, b),
                Arg::BTm(b) => self.write_bind_tm(s, b),
            }
        }
        s.push(')');
    }

    fn write_tm(&mut self, s: &mut String, t: &Tm) {
        use Arg::{BTm, BTy, Tm as T, Ty as Y};
        match t {
            Tm::Var(i) => s.push_str(&self.var(*i)),
            Tm::Ann(x, ty) => {
                s.push('(');
                self.write_tm(s, x);
                s.push_str(" : ");
                self.write_ty(s, ty);
                s.push(')');
            }
            Tm::Refl(x) => self.call(s, "r", &[T(x)]),
            Tm::J {
                motive,
                branch,
                left,
                right,
                path,
            } => self.call(
                s,
                "J",
                &[BTy(motive), BTm(branch), T(left), T(right), T(path)],
            ),
            Tm::H {
                motive,
                branch,
                point,
            } => self.call(s, "H", &[BTy(motive), BTm(branch), T(point)]),
            Tm::Pair(a, b) => self.call(s, "pair", &[T(a), T(b)]),
            Tm::Split {
                motive,
                branch,
                scrut,
            } => self.call(s, "split", &[BTy(motive), BTm(branch), T(scrut)]),
            Tm::SigmaComp {
                sigma,
                motive,
                branch,
                fst,
                snd,
            } => self.call(
                s,
                "sigma",
                &[Y(sigma), BTy(motive), BTm(branch), T(fst), T(snd)],
            ),
            Tm::Lam(b) => {
                s.push_str("lam ");
                self.write_bind_tm(s, b);
            }
            Tm::Ev(z, x) => self.call(s, "ev", &[T(z), T(x)]),
            Tm::Beta { body, arg } => self.call(s, "beta", &[BTm(body), T(arg)]),
            Tm::Funext {
                left,
                right,
                homotopy,
            } => self.call(s, "funext", &[T(left), T(right), T(homotopy)]),
            Tm::BetaPi {
                left,
                right,
                homotopy,
            } => self.call(s, "betaPi", &[T(left), T(right), T(homotopy)]),
            Tm::EtaPi { left, right, path } => {
                self.call(s, "etaPi", &[T(left), T(right), T(path)])
            }
            Tm::Star => s.push_str("star"),
            Tm::Bot => s.push_str("bot"),
            Tm::Top => s.push_str("top"),
            Tm::NatZero => s.push_str("zero"),
            Tm::Succ(n) => self.call(s, "succ", &[T(n)]),
            Tm::Ind1 {
                motive,
                base,
                scrut,
            } => self.call(s, "ind1", &[BTy(motive), T(base), T(scrut)]),
            Tm::Beta1 { motive, base } => self.call(s, "beta1", &[BTy(motive), T(base)]),
            Tm::Ind2 {
                motive,
                on_bot,
                on_top,
                scrut,
            } => self.call(s, "ind2", &[BTy(motive), T(on_bot), T(on_top), T(scrut)]),
            Tm::Beta2Bot {
                motive,
                on_bot,
                on_top,
            } => self.call(s, "beta2bot", &[BTy(motive), T(on_bot), T(on_top)]),
            Tm::Beta2Top {
                motive,
                on_bot,
                on_top,
            } => self.call(s, "beta2top", &[BTy(motive), T(on_bot), T(on_top)]),
            Tm::IndN {
                motive,
                base,
                step,
                scrut,
            } => self.call(s, "indN", &[BTy(motive), T(base), BTm(step), T(scrut)]),
            Tm::BetaN0 { motive, base, step } => {
                self.call(s, "betaN0", &[BTy(motive), T(base), BTm(step)])
            }
            Tm::BetaNs {
                motive,
                base,
                step,
                scrut,
            } => self.call(s, "betaNs", &[BTy(motive), T(base), BTm(step), T(scrut)]),
            Tm::Ind0 { motive, scrut } => self.call(s, "ind0", &[BTy(motive), T(scrut)]),
        }
    }

    /// Prints a context and leaves its names in scope.
    pub fn ctx(&mut self, ctx: &Ctx) -> String {
        let mut parts = Vec::new();
        for (name, ty) in ctx.entries() {
            let ty_s = self.ty(&ty);
            let n = self.fresh(name.as_str());
            parts.push(format!("{n}:{ty_s}"));
            self.scope.push(n);
        }
        parts.join(", ")
    }

    pub fn judgment(&mut self, j: &Judgment) -> String {
        self.scope.clear();
        let ctx = self.ctx(&j.ctx);
        let subject = match &j.subject {
            Subject::Ctx => "ctx".to_string(),
            Subject::Type(t) => format!("{} type", self.ty(t)),
            Subject::Term(t, ty) => format!("{} : {}", self.tm(t), self.ty(ty)),
            Subject::TypeEq(a, b) => format!("{} == {} type", self.ty(a), self.ty(b)),
            Subject::TermEq(t, u, ty) => {
                format!("{} == {} : {}", self.tm(t), self.tm(u), self.ty(ty))
            }
        };
        if ctx.is_empty() {
            format!("|- {subject}")
        } else {
            format!("{ctx} |- {subject}")
        }
    }
}

enum Arg<'a> {
    Tm(&'a Tm),
    Ty(&'a Ty),
    BTy(&'a Bind<Ty>),
    BTm(&'a Bind<Tm>),
}

/// Prints a judgment with its context names in scope.
pub fn print_judgment(j: &Judgment, sig: &Signature) -> String {
    Printer::new(sig).judgment(j)
}

/// Prints a type or term in the scope of `ctx`.
pub fn print_ty_in(t: &Ty, ctx: &Ctx, sig: &Signature) -> String {
    let mut p = Printer::new(sig);
    p.ctx(ctx);
    p.ty(t)
}

pub fn print_tm_in(t: &Tm, ctx: &Ctx, sig: &Signature) -> String {
    let mut p = Printer::new(sig);
    p.ctx(ctx);
    p.tm(t)
}

pub fn print_document(doc: &Document) -> String {
    let mut out = String::new();
    for b in &doc.signature.base_types {
        let _ = writeln!(out, "type {b}");
    }
    for item in &doc.items {
        let _ = writeln!(out, "{}", print_judgment(&item.judgment, &doc.signature));
    }
    out
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = Signature::default();
        f.write_str(&Printer::new(&sig).ty(self))
    }
}

impl fmt::Display for Tm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = Signature::default();
        f.write_str(&Printer::new(&sig).tm(self))
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = Signature::default();
        f.write_str(&print_judgment(self, &sig))
    }
}
