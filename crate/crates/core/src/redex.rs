//! Computation the theory deliberately lacks.
//!
//! The checker never uses this module to decide anything. It only reports
//! whether a failed equation would hold if eliminators computed on
//! introductions, so the error can say which propositional axiom to use.

use std::cell::Cell;
use std::sync::Arc;

use crate::subst::{erase_tm, erase_ty, instantiate_tm};
use crate::syntax::{Bind, Tm, Ty};

const FUEL: usize = 10_000;

struct Norm {
    fuel: Cell<usize>,
}

impl Norm {
    fn spend(&self) -> bool {
        let f = self.fuel.get();
        if f == 0 {
            return false;
        }
        self.fuel.set(f - 1);
        true
    }

    fn ty(&self, t: &Ty) -> Ty {
        match t {
            Ty::Id(a, x, y) => Ty::id(self.ty(a), self.tm(x), self.tm(y)),
            Ty::Sigma(a, b) => Ty::Sigma(Arc::new(self.ty(a)), self.bty(b)),
            Ty::Pi(a, b) => Ty::Pi(Arc::new(self.ty(a)), self.bty(b)),
            other => other.clone(),
        }
    }

    fn bty(&self, b: &Bind<Ty>) -> Bind<Ty> {
        Bind {
            names: b.names.clone(),
            body: Arc::new(self.ty(&b.body)),
        }
    }

    fn btm(&self, b: &Bind<Tm>) -> Bind<Tm> {
        Bind {
            names: b.names.clone(),
            body: Arc::new(self.tm(&b.body)),
        }
    }

    fn a(&self, t: &Tm) -> Arc<Tm> {
        Arc::new(self.tm(t))
    }

    /// Normalizes children, then contracts a head redex if there is one.
    fn tm(&self, t: &Tm) -> Tm {
        if !self.spend() {
            return t.clone();
        }
        let t = match t {
            Tm::Var(_) | Tm::Star | Tm::Bot | Tm::Top | Tm::NatZero => t.clone(),
            Tm::Ann(x, _) => self.tm(x),
            Tm::Refl(x) => Tm::Refl(self.a(x)),
            Tm::J {
                motive,
                branch,
                left,
                right,
                path,
            } => Tm::J {
                motive: self.bty(motive),
                branch: self.btm(branch),
                left: self.a(left),
                right: self.a(right),
                path: self.a(path),
            },
            Tm::H {
                motive,
                branch,
                point,
            } => Tm::H {
                motive: self.bty(motive),
                branch: self.btm(branch),
                point: self.a(point),
            },
            Tm::Pair(x, y) => Tm::Pair(self.a(x), self.a(y)),
            Tm::Split {
                motive,
                branch,
                scrut,
            } => Tm::Split {
                motive: self.bty(motive),
                branch: self.btm(branch),
                scrut: self.a(scrut),
            },
            Tm::SigmaComp {
                sigma,
                motive,
                branch,
                fst,
                snd,
            } => Tm::SigmaComp {
                sigma: Arc::new(self.ty(sigma)),
                motive: self.bty(motive),
                branch: self.btm(branch),
                fst: self.a(fst),
                snd: self.a(snd),
            },
            Tm::Lam(b) => Tm::Lam(self.btm(b)),
            Tm::Ev(z, x) => Tm::Ev(self.a(z), self.a(x)),
            Tm::Beta { body, arg } => Tm::Beta {
                body: self.btm(body),
                arg: self.a(arg),
            },
            Tm::Funext {
                left,
                right,
                homotopy,
            } => Tm::Funext {
                left: self.a(left),
                right: self.a(right),
                homotopy: self.a(homotopy),
            },
            Tm::BetaPi {
                left,
                right,
                homotopy,
            } => Tm::BetaPi {
                left: self.a(left),
                right: self.a(right),
                homotopy: self.a(homotopy),
            },
            Tm::EtaPi { left, right, path } => Tm::EtaPi {
                left: self.a(left),
                right: self.a(right),
                path: self.a(path),
            },
            Tm::Ind1 {
                motive,
                base,
                scrut,
            } => Tm::Ind1 {
                motive: self.bty(motive),
                base: self.a(base),
                scrut: self.a(scrut),
            },
            Tm::Beta1 { motive, base } => Tm::Beta1 {
                motive: self.bty(motive),
                base: self.a(base),
            },
            Tm::Ind2 {
                motive,
                on_bot,
                on_top,
                scrut,
            } => Tm::Ind2 {
                motive: self.bty(motive),
                on_bot: self.a(on_bot),
                on_top: self.a(on_top),
                scrut: self.a(scrut),
            },
            Tm::Beta2Bot {
                motive,
                on_bot,
                on_top,
            } => Tm::Beta2Bot {
                motive: self.bty(motive),
                on_bot: self.a(on_bot),
                on_top: self.a(on_top),
            },
            Tm::Beta2Top {
                motive,
                on_bot,
                on_top,
            } => Tm::Beta2Top {
                motive: self.bty(motive),
                on_bot: self.a(on_bot),
                on_top: self.a(on_top),
            },
            Tm::Succ(n) => Tm::Succ(self.a(n)),
            Tm::IndN {
                motive,
                base,
                step,
                scrut,
            } => Tm::IndN {
                motive: self.bty(motive),
                base: self.a(base),
                step: self.btm(step),
                scrut: self.a(scrut),
            },
            Tm::BetaN0 { motive, base, step } => Tm::BetaN0 {
                motive: self.bty(motive),
                base: self.a(base),
                step: self.btm(step),
            },
            Tm::BetaNs {
                motive,
                base,
                step,
                scrut,
            } => Tm::BetaNs {
                motive: self.bty(motive),
                base: self.a(base),
                step: self.btm(step),
                scrut: self.a(scrut),
            },
            Tm::Ind0 { motive, scrut } => Tm::Ind0 {
                motive: self.bty(motive),
                scrut: self.a(scrut),
            },
        };
        match contract(&t) {
            Some(next) => self.tm(&next),
            None => t,
        }
    }
}

/// One head contraction, if `t` is an eliminator applied to an introduction.
pub fn contract(t: &Tm) -> Option<Tm> {
    match t {
        Tm::J {
            branch,
            left,
            path,
            ..
        } if matches!(&**path, Tm::Refl(_)) => Some(instantiate_tm(branch, &[(**left).clone()])),
        Tm::Split { branch, scrut, .. } => match &**scrut {
            Tm::Pair(a, b) => Some(instantiate_tm(branch, &[(**a).clone(), (**b).clone()])),
            _ => None,
        },
        Tm::Ev(z, x) => match &**z {
            Tm::Lam(b) => Some(instantiate_tm(b, &[(**x).clone()])),
            _ => None,
        },
        Tm::Ind1 { base, scrut, .. } if **scrut == Tm::Star => Some((**base).clone()),
        Tm::Ind2 {
            on_bot,
            on_top,
            scrut,
            ..
        } => match &**scrut {
            Tm::Bot => Some((**on_bot).clone()),
            Tm::Top => Some((**on_top).clone()),
            _ => None,
        },
        Tm::IndN {
            motive,
            base,
            step,
            scrut,
        } => match &**scrut {
            Tm::NatZero => Some((**base).clone()),
            Tm::Succ(n) => {
                let rec = Tm::IndN {
                    motive: motive.clone(),
                    base: base.clone(),
                    step: step.clone(),
                    scrut: n.clone(),
                };
                Some(instantiate_tm(step, &[(**n).clone(), rec]))
            }
            _ => None,
        },
        _ => None,
    }
}

/// The normal form under the computation rules the theory omits.
pub fn normalize_tm(t: &Tm) -> Tm {
    Norm {
        fuel: Cell::new(FUEL),
    }
    .tm(&erase_tm(t))
}

pub fn normalize_ty(t: &Ty) -> Ty {
    Norm {
        fuel: Cell::new(FUEL),
    }
    .ty(&erase_ty(t))
}
