//! Weakening, substitution and their composition.
//!
//! A [`Subst`] from Δ to Γ sends index `i < top.len()` to `top[i]` and every
//! other index `i` to `Var(i - top.len() + shift)`. The identity is
//! `{top: [], shift: 0}` and the weakening by `k` entries is `{[], k}`.

use std::sync::Arc;

use crate::syntax::{Bind, Tm, Ty};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Subst {
    pub top: Vec<Tm>,
    pub shift: usize,
}

impl Subst {
    pub fn identity() -> Subst {
        Subst::default()
    }

    /// The projection that forgets the last `k` entries of the context.
    pub fn weakening(k: usize) -> Subst {
        Subst {
            top: Vec::new(),
            shift: k,
        }
    }

    /// Instantiates the last `args.len()` variables; `args[0]` is the
    /// outermost of them.
    pub fn instantiate(args: &[Tm]) -> Subst {
        Subst {
            top: args.iter().rev().cloned().collect(),
            shift: 0,
        }
    }

    /// `f` extended by one term for a new innermost variable.
    pub fn extend(&self, t: Tm) -> Subst {
        let mut top = Vec::with_capacity(self.top.len() + 1);
        top.push(t);
        top.extend(self.top.iter().cloned());
        Subst {
            top,
            shift: self.shift,
        }
    }

    /// The substitution acting under one more binder.
    pub fn lift(&self) -> Subst {
        let mut top = Vec::with_capacity(self.top.len() + 1);
        top.push(Tm::Var(0));
        top.extend(self.top.iter().map(|t| shift_tm(t, 1, 0)));
        Subst {
            top,
            shift: self.shift + 1,
        }
    }

    pub fn lookup(&self, i: usize) -> Tm {
        if i < self.top.len() {
            self.top[i].clone()
        } else {
            Tm::Var(i - self.top.len() + self.shift)
        }
    }

    /// `self` followed by `g`: `t[self][g] == t[self.compose(g)]`.
    pub fn compose(&self, g: &Subst) -> Subst {
        let mut top: Vec<Tm> = self.top.iter().map(|t| subst_tm(t, g)).collect();
        if g.top.len() > self.shift {
            top.extend(g.top[self.shift..].iter().cloned());
            Subst {
                top,
                shift: g.shift,
            }
        } else {
            Subst {
                top,
                shift: self.shift - g.top.len() + g.shift,
            }
        }
    }
}

/// The substitution `a;b : Γ → Γ.A.A` used to instantiate identity types.
pub fn pair_subst(a: Tm, b: Tm) -> Subst {
    Subst::instantiate(&[a, b])
}

enum Action<'a> {
    Shift { by: usize },
    Subst(&'a Subst),
    Erase,
}

struct Mapper<'a> {
    action: Action<'a>,
}

impl Mapper<'_> {
    fn var(&self, i: usize, depth: usize) -> Tm {
        if i < depth {
            return Tm::Var(i);
        }
        match &self.action {
            Action::Shift { by } => Tm::Var(i + by),
            Action::Subst(s) => {
                let t = s.lookup(i - depth);
                if depth == 0 {
                    t
                } else {
                    shift_tm(&t, depth, 0)
                }
            }
            Action::Erase => Tm::Var(i),
        }
    }

    fn ty(&self, t: &Ty, d: usize) -> Ty {
        match t {
            Ty::Base(_) | Ty::Zero | Ty::One | Ty::Two | Ty::Nat => t.clone(),
            Ty::Id(a, x, y) => Ty::Id(self.aty(a, d), self.atm(x, d), self.atm(y, d)),
            Ty::Sigma(a, b) => Ty::Sigma(self.aty(a, d), self.bty(b, d)),
            Ty::Pi(a, b) => Ty::Pi(self.aty(a, d), self.bty(b, d)),
        }
    }

    fn aty(&self, t: &Arc<Ty>, d: usize) -> Arc<Ty> {
        Arc::new(self.ty(t, d))
    }

    fn atm(&self, t: &Arc<Tm>, d: usize) -> Arc<Tm> {
        Arc::new(self.tm(t, d))
    }

    fn bty(&self, b: &Bind<Ty>, d: usize) -> Bind<Ty> {
        Bind {
            names: b.names.clone(),
            body: Arc::new(self.ty(&b.body, d + b.arity())),
        }
    }

    fn btm(&self, b: &Bind<Tm>, d: usize) -> Bind<Tm> {
        Bind {
            names: b.names.clone(),
            body: Arc::new(self.tm(&b.body, d + b.arity())),
        }
    }

    fn tm(&self, t: &Tm, d: usize) -> Tm {
        match t {
            Tm::Var(i) => self.var(*i, d),
            Tm::Ann(x, ty) => {
                if matches!(self.action, Action::Erase) {
                    self.tm(x, d)
                } else {
                    Tm::Ann(self.atm(x, d), self.aty(ty, d))
                }
            }
            Tm::Refl(x) => Tm::Refl(self.atm(x, d)),
            Tm::J {
                motive,
                branch,
                left,
                right,
                path,
            } => Tm::J {
                motive: self.bty(motive, d),
                branch: self.btm(branch, d),
                left: self.atm(left, d),
                right: self.atm(right, d),
                path: self.atm(path, d),
            },
            Tm::H {
                motive,
                branch,
                point,
            } => Tm::H {
                motive: self.bty(motive, d),
                branch: self.btm(branch, d),
                point: self.atm(point, d),
            },
            Tm::Pair(a, b) => Tm::Pair(self.atm(a, d), self.atm(b, d)),
            Tm::Split {
                motive,
                branch,
                scrut,
            } => Tm::Split {
                motive: self.bty(motive, d),
                branch: self.btm(branch, d),
                scrut: self.atm(scrut, d),
            },
            Tm::SigmaComp {
                sigma,
                motive,
                branch,
                fst,
                snd,
            } => Tm::SigmaComp {
                sigma: self.aty(sigma, d),
                motive: self.bty(motive, d),
                branch: self.btm(branch, d),
                fst: self.atm(fst, d),
                snd: self.atm(snd, d),
            },
            Tm::Lam(b) => Tm::Lam(self.btm(b, d)),
            Tm::Ev(z, x) => Tm::Ev(self.atm(z, d), self.atm(x, d)),
            Tm::Beta { body, arg } => Tm::Beta {
                body: self.btm(body, d),
                arg: self.atm(arg, d),
            },
            Tm::Funext {
                left,
                right,
                homotopy,
            } => Tm::Funext {
                left: self.atm(left, d),
                right: self.atm(right, d),
                homotopy: self.atm(homotopy, d),
            },
            Tm::BetaPi {
                left,
                right,
                homotopy,
            } => Tm::BetaPi {
                left: self.atm(left, d),
                right: self.atm(right, d),
                homotopy: self.atm(homotopy, d),
            },
            Tm::EtaPi { left, right, path } => Tm::EtaPi {
                left: self.atm(left, d),
                right: self.atm(right, d),
                path: self.atm(path, d),
            },
            Tm::Star | Tm::Bot | Tm::Top | Tm::NatZero => t.clone(),
            Tm::Ind1 {
                motive,
                base,
                scrut,
            } => Tm::Ind1 {
                motive: self.bty(motive, d),
                base: self.atm(base, d),
                scrut: self.atm(scrut, d),
            },
            Tm::Beta1 { motive, base } => Tm::Beta1 {
                motive: self.bty(motive, d),
                base: self.atm(base, d),
            },
            Tm::Ind2 {
                motive,
                on_bot,
                on_top,
                scrut,
            } => Tm::Ind2 {
                motive: self.bty(motive, d),
                on_bot: self.atm(on_bot, d),
                on_top: self.atm(on_top, d),
                scrut: self.atm(scrut, d),
            },
            Tm::Beta2Bot {
                motive,
                on_bot,
                on_top,
            } => Tm::Beta2Bot {
                motive: self.bty(motive, d),
                on_bot: self.atm(on_bot, d),
                on_top: self.atm(on_top, d),
            },
            Tm::Beta2Top {
                motive,
                on_bot,
                on_top,
            } => Tm::Beta2Top {
                motive: self.bty(motive, d),
                on_bot: self.atm(on_bot, d),
                on_top: self.atm(on_top, d),
            },
            Tm::Succ(n) => Tm::Succ(self.atm(n, d)),
            Tm::IndN {
                motive,
                base,
                step,
                scrut,
            } => Tm::IndN {
                motive: self.bty(motive, d),
                base: self.atm(base, d),
                step: self.btm(step, d),
                scrut: self.atm(scrut, d),
            },
            Tm::BetaN0 { motive, base, step } => Tm::BetaN0 {
                motive: self.bty(motive, d),
                base: self.atm(base, d),
                step: self.btm(step, d),
            },
            Tm::BetaNs {
                motive,
                base,
                step,
                scrut,
            } => Tm::BetaNs {
                motive: self.bty(motive, d),
                base: self.atm(base, d),
                step: self.btm(step, d),
                scrut: self.atm(scrut, d),
            },
            Tm::Ind0 { motive, scrut } => Tm::Ind0 {
                motive: self.bty(motive, d),
                scrut: self.atm(scrut, d),
            },
        }
    }
}

/// Adds `by` to every index `>= cutoff`.
pub fn shift_tm(t: &Tm, by: usize, cutoff: usize) -> Tm {
    if by == 0 {
        return t.clone();
    }
    Mapper {
        action: Action::Shift { by },
    }
    .tm(t, cutoff)
}

pub fn shift_ty(t: &Ty, by: usize, cutoff: usize) -> Ty {
    if by == 0 {
        return t.clone();
    }
    Mapper {
        action: Action::Shift { by },
    }
    .ty(t, cutoff)
}

/// Inserts one fresh variable below the `at` innermost ones.
pub fn weaken_tm(t: &Tm, at: usize) -> Tm {
    shift_tm(t, 1, at)
}

pub fn weaken_ty(t: &Ty, at: usize) -> Ty {
    shift_ty(t, 1, at)
}

pub fn subst_tm(t: &Tm, s: &Subst) -> Tm {
    if s.top.is_empty() && s.shift == 0 {
        return t.clone();
    }
    Mapper {
        action: Action::Subst(s),
    }
    .tm(t, 0)
}

pub fn subst_ty(t: &Ty, s: &Subst) -> Ty {
    if s.top.is_empty() && s.shift == 0 {
        return t.clone();
    }
    Mapper {
        action: Action::Subst(s),
    }
    .ty(t, 0)
}

/// Substitutes `args` for the binders of `b`; free variables of the body
/// beyond the binders are left alone.
pub fn instantiate_ty(b: &Bind<Ty>, args: &[Tm]) -> Ty {
    debug_assert_eq!(b.arity(), args.len());
    subst_ty(&b.body, &Subst::instantiate(args))
}

pub fn instantiate_tm(b: &Bind<Tm>, args: &[Tm]) -> Tm {
    debug_assert_eq!(b.arity(), args.len());
    subst_tm(&b.body, &Subst::instantiate(args))
}

pub fn erase_tm(t: &Tm) -> Tm {
    Mapper {
        action: Action::Erase,
    }
    .tm(t, 0)
}

pub fn erase_ty(t: &Ty) -> Ty {
    Mapper {
        action: Action::Erase,
    }
    .ty(t, 0)
}
