//! Pseudofunctors from a finite groupoid into groupoids.

use std::sync::Arc;

use crate::error::{MResult, ModelError, Report};
use crate::groupoid::{check_functor, check_groupoid, same_groupoid, FinGroupoid, Functor};

/// `(A, φ, ψ)` over a base groupoid.
///
/// `fmap[p] : A_γ → A_γ'` for `p : γ → γ'`. For composable `p : γ → γ'` and
/// `q : γ' → γ''`, `phi[p][q][x] : A_q A_p x → A_{qp} x`; `psi[γ][x] : A_{1γ} x → x`.
#[derive(Clone, Debug)]
pub struct PseudoFunctor {
    pub base: Arc<FinGroupoid>,
    pub fibers: Vec<Arc<FinGroupoid>>,
    pub fmap: Vec<Functor>,
    phi: Vec<Vec<Vec<usize>>>,
    psi: Vec<Vec<usize>>,
}

impl PartialEq for PseudoFunctor {
    fn eq(&self, o: &Self) -> bool {
        same_groupoid(&self.base, &o.base)
            && self.fibers.len() == o.fibers.len()
            && self
                .fibers
                .iter()
                .zip(&o.fibers)
                .all(|(a, b)| same_groupoid(a, b))
            && self.fmap == o.fmap
            && self.phi == o.phi
            && self.psi == o.psi
    }
}

impl Eq for PseudoFunctor {}

impl PseudoFunctor {
    /// Assembles a pseudofunctor. `phi(p, q)` gives the components of
    /// `φ_{p,q}` and `psi(γ)` those of `ψ_γ`; only shapes are validated here.
    pub fn new(
        base: Arc<FinGroupoid>,
        fibers: Vec<Arc<FinGroupoid>>,
        fmap: Vec<Functor>,
        phi: impl Fn(usize, usize) -> Vec<usize>,
        psi: impl Fn(usize) -> Vec<usize>,
    ) -> MResult<Self> {
        if fibers.len() != base.obj_count() || fmap.len() != base.mor_count() {
            return Err(ModelError::malformed(
                "fiber or fiber-functor list does not match the base",
            ));
        }
        for p in base.morphisms() {
            let f = &fmap[p];
            if !same_groupoid(&f.dom, &fibers[base.src(p)])
                || !same_groupoid(&f.cod, &fibers[base.tgt(p)])
            {
                return Err(ModelError::malformed(format!(
                    "fiber functor over `{}` has the wrong endpoints",
                    base.mor_name(p)
                )));
            }
        }
        let m = base.mor_count();
        let mut table = vec![vec![Vec::new(); m]; m];
        for p in base.morphisms() {
            for q in base.morphisms().filter(|&q| base.src(q) == base.tgt(p)) {
                let c = phi(p, q);
                if c.len() != fibers[base.src(p)].obj_count() {
                    return Err(ModelError::malformed(format!(
                        "φ over ({}, {}) has {} components",
                        base.mor_name(p),
                        base.mor_name(q),
                        c.len()
                    )));
                }
                table[p][q] = c;
            }
        }
        let mut units = Vec::with_capacity(base.obj_count());
        for g in base.objects() {
            let c = psi(g);
            if c.len() != fibers[g].obj_count() {
                return Err(ModelError::malformed(format!(
                    "ψ at {} has {} components",
                    base.obj_name(g),
                    c.len()
                )));
            }
            units.push(c);
        }
        Ok(PseudoFunctor {
            base,
            fibers,
            fmap,
            phi: table,
            psi: units,
        })
    }

    /// A strict functor into groupoids: all coherence components are identities.
    pub fn strict(
        base: Arc<FinGroupoid>,
        fibers: Vec<Arc<FinGroupoid>>,
        fmap: Vec<Functor>,
    ) -> MResult<Self> {
        let b = base.clone();
        let fs = fibers.clone();
        let fs2 = fibers.clone();
        let fm = fmap.clone();
        PseudoFunctor::new(
            base,
            fibers,
            fmap,
            move |p, q| {
                let a = &fs[b.src(p)];
                let cod = &fs[b.tgt(q)];
                a.objects()
                    .map(|x| cod.id(fm[q].obj[fm[p].obj[x]]))
                    .collect()
            },
            move |g| fs2[g].objects().map(|x| fs2[g].id(x)).collect(),
        )
    }

    /// The constant strict pseudofunctor at `fiber`.
    pub fn constant(base: Arc<FinGroupoid>, fiber: Arc<FinGroupoid>) -> Self {
        let fibers = vec![fiber.clone(); base.obj_count()];
        let fmap = vec![Functor::identity(&fiber); base.mor_count()];
        PseudoFunctor::strict(base, fibers, fmap).expect("constant data is well shaped")
    }

    pub fn fiber(&self, g: usize) -> &Arc<FinGroupoid> {
        &self.fibers[g]
    }

    /// `A_p x`.
    pub fn act_obj(&self, p: usize, x: usize) -> usize {
        self.fmap[p].obj[x]
    }

    /// `A_p m`.
    pub fn act_mor(&self, p: usize, m: usize) -> usize {
        self.fmap[p].mor[m]
    }

    /// `φ_{p,q}` at `x`, a morphism `A_q A_p x → A_{qp} x` of the fiber over `tgt q`.
    pub fn phi(&self, p: usize, q: usize, x: usize) -> usize {
        self.phi[p][q][x]
    }

    /// `ψ_γ` at `x`, a morphism `A_{1γ} x → x`.
    pub fn psi(&self, g: usize, x: usize) -> usize {
        self.psi[g][x]
    }

    pub fn phi_components(&self, p: usize, q: usize) -> &[usize] {
        &self.phi[p][q]
    }

    pub fn psi_components(&self, g: usize) -> &[usize] {
        &self.psi[g]
    }

    /// Whether every coherence component is an identity and the fiber
    /// functors compose strictly.
    pub fn is_strict(&self) -> bool {
        let b = &self.base;
        b.morphisms().all(|p| {
            b.morphisms()
                .filter(|&q| b.src(q) == b.tgt(p))
                .all(|q| {
                    let f = &self.fibers[b.tgt(q)];
                    self.phi[p][q].iter().all(|&m| f.is_identity(m))
                })
        }) && b.objects().all(|g| {
            let f = &self.fibers[g];
            self.psi[g].iter().all(|&m| f.is_identity(m))
        })
    }

    /// Total number of fiber morphisms, used for size limits.
    pub fn fiber_morphisms(&self) -> usize {
        self.fibers.iter().map(|f| f.mor_count()).sum()
    }

    /// Replaces one coherence component, for mutation tests.
    pub fn with_phi_component(mut self, p: usize, q: usize, x: usize, m: usize) -> Self {
        self.phi[p][q][x] = m;
        self
    }

    pub fn with_psi_component(mut self, g: usize, x: usize, m: usize) -> Self {
        self.psi[g][x] = m;
        self
    }
}

/// Checks fibers, fiber functors, the typing and naturality of φ and ψ,
/// the triple law and both unit laws, exhaustively.
pub fn check_pseudofunctor(a: &PseudoFunctor) -> Report {
    let mut r = Report::new("pseudofunctor");
    let b = &*a.base;
    r.absorb(check_groupoid(b));
    for f in &a.fibers {
        r.absorb(check_groupoid(f));
    }
    for f in &a.fmap {
        r.absorb(check_functor(f));
    }
    if !r.ok() {
        return r;
    }
    let pname = |p: usize| b.mor_name(p).to_string();
    for p in b.morphisms() {
        for q in b.morphisms().filter(|&q| b.src(q) == b.tgt(p)) {
            let qp = b.comp(q, p);
            let (src, cod) = (&a.fibers[b.src(p)], &a.fibers[b.tgt(q)]);
            for x in src.objects() {
                let m = a.phi(p, q, x);
                r.check(
                    m < cod.mor_count()
                        && cod.src(m) == a.act_obj(q, a.act_obj(p, x))
                        && cod.tgt(m) == a.act_obj(qp, x),
                    "φ component typing",
                    || format!("φ[{},{}] at {}", pname(p), pname(q), src.obj_name(x)),
                );
            }
        }
    }
    for g in b.objects() {
        let f = &a.fibers[g];
        let one = b.id(g);
        for x in f.objects() {
            let m = a.psi(g, x);
            r.check(
                m < f.mor_count() && f.src(m) == a.act_obj(one, x) && f.tgt(m) == x,
                "ψ component typing",
                || format!("ψ[{}] at {}", b.obj_name(g), f.obj_name(x)),
            );
        }
    }
    if !r.ok() {
        return r;
    }
    for p in b.morphisms() {
        for q in b.morphisms().filter(|&q| b.src(q) == b.tgt(p)) {
            let qp = b.comp(q, p);
            let (src, cod) = (&a.fibers[b.src(p)], &a.fibers[b.tgt(q)]);
            for m in src.morphisms() {
                let (x, y) = (src.src(m), src.tgt(m));
                let lhs = cod.comp(a.act_mor(qp, m), a.phi(p, q, x));
                let rhs = cod.comp(a.phi(p, q, y), a.act_mor(q, a.act_mor(p, m)));
                r.check(lhs == rhs, "φ naturality", || {
                    format!("φ[{},{}] at {}", pname(p), pname(q), src.mor_name(m))
                });
            }
        }
    }
    for g in b.objects() {
        let f = &a.fibers[g];
        let one = b.id(g);
        for m in f.morphisms() {
            let (x, y) = (f.src(m), f.tgt(m));
            r.check(
                f.comp(m, a.psi(g, x)) == f.comp(a.psi(g, y), a.act_mor(one, m)),
                "ψ naturality",
                || format!("ψ[{}] at {}", b.obj_name(g), f.mor_name(m)),
            );
        }
    }
    if !r.ok() {
        return r;
    }
    for p in b.morphisms() {
        for q in b.morphisms().filter(|&q| b.src(q) == b.tgt(p)) {
            let qp = b.comp(q, p);
            for s in b.morphisms().filter(|&s| b.src(s) == b.tgt(q)) {
                let sq = b.comp(s, q);
                let cod = &a.fibers[b.tgt(s)];
                for x in a.fibers[b.src(p)].objects() {
                    let lhs = cod.comp(a.phi(p, sq, x), a.phi(q, s, a.act_obj(p, x)));
                    let rhs = cod.comp(a.phi(qp, s, x), a.act_mor(s, a.phi(p, q, x)));
                    r.check(lhs == rhs, "triple coherence", || {
                        format!("({}, {}, {}) at {}", pname(p), pname(q), pname(s), x)
                    });
                }
            }
        }
    }
    for p in b.morphisms() {
        let (g, g2) = (b.src(p), b.tgt(p));
        for x in a.fibers[g].objects() {
            r.check(
                a.act_mor(p, a.psi(g, x)) == a.phi(b.id(g), p, x),
                "left unit coherence",
                || format!("{} at {}", pname(p), a.fibers[g].obj_name(x)),
            );
            r.check(
                a.psi(g2, a.act_obj(p, x)) == a.phi(p, b.id(g2), x),
                "right unit coherence",
                || format!("{} at {}", pname(p), a.fibers[g].obj_name(x)),
            );
        }
    }
    r
}

/// `A[f]`: the pseudofunctor `(A∘f, φ_{f-,f-}, ψ_{f-})` over the domain of `f`.
pub fn reindex(a: &PseudoFunctor, f: &Functor) -> MResult<PseudoFunctor> {
    if !same_groupoid(&f.cod, &a.base) {
        return Err(ModelError::malformed(
            "re-indexing functor does not land in the base",
        ));
    }
    let d = &f.dom;
    Ok(PseudoFunctor {
        base: d.clone(),
        fibers: d.objects().map(|x| a.fibers[f.obj[x]].clone()).collect(),
        fmap: d.morphisms().map(|p| a.fmap[f.mor[p]].clone()).collect(),
        phi: d
            .morphisms()
            .map(|p| {
                d.morphisms()
                    .map(|q| {
                        if d.src(q) == d.tgt(p) {
                            a.phi[f.mor[p]][f.mor[q]].clone()
                        } else {
                            Vec::new()
                        }
                    })
                    .collect()
            })
            .collect(),
        psi: d.objects().map(|x| a.psi[f.obj[x]].clone()).collect(),
    })
}
