//! Total groupoids of pseudofunctors and the structure of their projections.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{MResult, ModelError, Report};
use crate::groupoid::{check_functor, check_nat_iso, same_groupoid, FinGroupoid, Functor, NatIso};
use crate::pseudo::{check_pseudofunctor, reindex, PseudoFunctor};

/// The projection `P_A : Γ.A → Γ` of the total groupoid of `A`.
///
/// Objects of `Γ.A` are `(γ, x)` with `x` in `A_γ`. Morphisms are triples
/// `(p₁, x, p₂)` with `p₁ : γ → γ'` and `p₂ : A_{p₁} x → x'`; the source
/// fiber object is kept since `A_{p₁}` need not be injective.
#[derive(Clone, Debug)]
pub struct DisplayMap {
    pub fam: Arc<PseudoFunctor>,
    pub total: Arc<FinGroupoid>,
    pub proj: Functor,
    objs: Vec<(usize, usize)>,
    obj_ix: HashMap<(usize, usize), usize>,
    mors: Vec<(usize, usize, usize)>,
    mor_ix: HashMap<(usize, usize, usize), usize>,
}

impl PartialEq for DisplayMap {
    fn eq(&self, o: &Self) -> bool {
        *self.fam == *o.fam
    }
}

impl DisplayMap {
    pub fn base(&self) -> &Arc<FinGroupoid> {
        &self.fam.base
    }

    /// The index of `(γ, x)` in the total groupoid.
    pub fn obj(&self, g: usize, x: usize) -> usize {
        self.obj_ix[&(g, x)]
    }

    /// The index of the morphism `(p₁, x, p₂)`.
    pub fn mor(&self, p1: usize, x: usize, p2: usize) -> usize {
        self.mor_ix[&(p1, x, p2)]
    }

    pub fn try_mor(&self, p1: usize, x: usize, p2: usize) -> Option<usize> {
        self.mor_ix.get(&(p1, x, p2)).copied()
    }

    pub fn split_obj(&self, o: usize) -> (usize, usize) {
        self.objs[o]
    }

    pub fn split_mor(&self, m: usize) -> (usize, usize, usize) {
        self.mors[m]
    }

    /// The fiber component of an object.
    pub fn fib(&self, o: usize) -> usize {
        self.objs[o].1
    }

    /// The fiber component `p₂` of a morphism.
    pub fn fib_mor(&self, m: usize) -> usize {
        self.mors[m].2
    }

    /// Morphisms of the total groupoid lying over a base identity.
    pub fn is_vertical(&self, m: usize) -> bool {
        self.base().is_identity(self.mors[m].0)
    }
}

/// Builds `Γ.A` with the composite, identity and inverse formulas of the
/// Grothendieck construction, after checking the coherence of `A`.
pub fn total_groupoid(a: Arc<PseudoFunctor>) -> MResult<DisplayMap> {
    check_pseudofunctor(&a).into_result()?;
    Ok(total_groupoid_unchecked(a))
}

/// As [`total_groupoid`], trusting the coherence of `A`.
pub fn total_groupoid_unchecked(a: Arc<PseudoFunctor>) -> DisplayMap {
    let b = a.base.clone();
    let mut objs = Vec::new();
    let mut obj_names = Vec::new();
    for g in b.objects() {
        for x in a.fiber(g).objects() {
            objs.push((g, x));
            obj_names.push(format!("({},{})", b.obj_name(g), a.fiber(g).obj_name(x)));
        }
    }
    let obj_ix: HashMap<_, _> = objs.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut mors = Vec::new();
    let mut specs = Vec::new();
    for p1 in b.morphisms() {
        let (src, tgt) = (a.fiber(b.src(p1)), a.fiber(b.tgt(p1)));
        for x in src.objects() {
            let ax = a.act_obj(p1, x);
            for y in tgt.objects() {
                for &p2 in tgt.hom(ax, y) {
                    let name = if src.obj_count() == 1 {
                        format!("({},{})", b.mor_name(p1), tgt.mor_name(p2))
                    } else {
                        format!(
                            "({},{},{})",
                            b.mor_name(p1),
                            src.obj_name(x),
                            tgt.mor_name(p2)
                        )
                    };
                    specs.push((name, obj_ix[&(b.src(p1), x)], obj_ix[&(b.tgt(p1), y)]));
                    mors.push((p1, x, p2));
                }
            }
        }
    }
    let mor_ix: HashMap<_, _> = mors.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let compose = |g: usize, f: usize| -> Option<usize> {
        let (p1, x, p2) = mors[f];
        let (q1, _, q2) = mors[g];
        let c = b.comp(q1, p1);
        let fib = a.fiber(b.tgt(q1));
        let lifted = fib.comp_all(&[q2, a.act_mor(q1, p2), fib.inv(a.phi(p1, q1, x))]);
        mor_ix.get(&(c, x, lifted)).copied()
    };
    let ident = objs
        .iter()
        .map(|&(g, x)| mor_ix[&(b.id(g), x, a.psi(g, x))])
        .collect();
    let inv = mors
        .iter()
        .map(|&(p1, x, p2)| {
            let g = b.src(p1);
            let back = b.inv(p1);
            let fib = a.fiber(g);
            let y = a.fiber(b.tgt(p1)).tgt(p2);
            let p2i = a.fiber(b.tgt(p1)).inv(p2);
            let m = fib.comp_all(&[a.psi(g, x), a.phi(p1, back, x), a.act_mor(back, p2i)]);
            mor_ix[&(back, y, m)]
        })
        .collect();
    let total = FinGroupoid::from_tables(obj_names, specs, compose, ident, inv)
        .expect("total groupoid tables are well typed");
    let total = Arc::new(total);
    let proj = Functor {
        dom: total.clone(),
        cod: b.clone(),
        obj: objs.iter().map(|&(g, _)| g).collect(),
        mor: mors.iter().map(|&(p, _, _)| p).collect(),
    };
    DisplayMap {
        fam: a,
        total,
        proj,
        objs,
        obj_ix,
        mors,
        mor_ix,
    }
}

/// The display map of `A[f]`.
pub fn reindex_display(d: &DisplayMap, f: &Functor) -> MResult<DisplayMap> {
    Ok(total_groupoid_unchecked(Arc::new(reindex(&d.fam, f)?)))
}

/// The 1-cell `f.A : Δ.A[f] → Γ.A`, `(δ,x) ↦ (fδ,x)` and `(p₁,x,p₂) ↦ (fp₁,x,p₂)`.
pub fn upper_functor(d: &DisplayMap, f: &Functor, df: &DisplayMap) -> Functor {
    let t = &df.total;
    Functor {
        dom: t.clone(),
        cod: d.total.clone(),
        obj: t
            .objects()
            .map(|o| {
                let (g, x) = df.split_obj(o);
                d.obj(f.obj[g], x)
            })
            .collect(),
        mor: t
            .morphisms()
            .map(|m| {
                let (p1, x, p2) = df.split_mor(m);
                d.mor(f.mor[p1], x, p2)
            })
            .collect(),
    }
}

/// The pullback pairing `⟨b, u⟩ : Ω → Δ.A[f]` for `b : Ω → Δ` and
/// `u : Ω → Γ.A` with `P_A u = f b`. Here `df` is the display map of `A[f]`.
pub fn pullback_pair(df: &DisplayMap, b: &Functor, u: &Functor, d: &DisplayMap) -> Functor {
    let om = &b.dom;
    Functor {
        dom: om.clone(),
        cod: df.total.clone(),
        obj: om
            .objects()
            .map(|w| df.obj(b.obj[w], d.fib(u.obj[w])))
            .collect(),
        mor: om
            .morphisms()
            .map(|m| {
                let (_, x, p2) = d.split_mor(u.mor[m]);
                df.mor(b.mor[m], x, p2)
            })
            .collect(),
    }
}

/// Whether `P_A u = f b`, the precondition of [`pullback_pair`].
pub fn pairing_compatible(d: &DisplayMap, f: &Functor, b: &Functor, u: &Functor) -> bool {
    d.proj.after(u) == f.after(b)
}

/// Checks that a functor is a strict section of a display map.
pub fn check_section(d: &DisplayMap, s: &Functor) -> Report {
    let mut r = check_functor(s);
    r.structure = "section".into();
    if !r.ok() {
        return r;
    }
    r.check(
        same_groupoid(&s.cod, &d.total) && same_groupoid(&s.dom, d.base()),
        "section typing",
        || "functor does not run from the base to the total groupoid".into(),
    );
    if r.ok() {
        let back = d.proj.after(s);
        r.check(back.is_identity(), "P ∘ s = 1", || {
            back.first_difference(&Functor::identity(d.base()))
                .unwrap_or_default()
        });
    }
    r
}

/// A commuting square
/// ```text
/// Q --top--> X
/// |left      |right
/// Δ --bot--> Γ
/// ```
pub struct Square<'a> {
    pub top: &'a Functor,
    pub left: &'a Functor,
    pub right: &'a Functor,
    pub bot: &'a Functor,
}

/// A 2-cell cone over a square: `a, b : K → Q` with 2-cells
/// `on_left : left a ⇒ left b` and `on_top : top a ⇒ top b` agreeing in `Γ`.
pub struct Cone {
    pub a: Functor,
    pub b: Functor,
    pub on_left: NatIso,
    pub on_top: NatIso,
}

/// Checks that the square commutes, that the comparison into the strict
/// pullback `Δ ×_Γ X` is bijective on objects and morphisms, and that every
/// given cone factors through a unique 2-cell `a ⇒ b`.
pub fn check_pullback(sq: &Square, cones: &[Cone]) -> Report {
    let mut r = Report::new("pullback square");
    let lhs = sq.bot.after(sq.left);
    let rhs = sq.right.after(sq.top);
    if !r.check(lhs == rhs, "commutation", || {
        lhs.first_difference(&rhs).unwrap_or_default()
    }) {
        return r;
    }
    let (dl, xr) = (&sq.bot.dom, &sq.right.dom);
    let q = &sq.top.dom;
    let mut pb_objs = HashMap::new();
    for d in dl.objects() {
        for x in xr.objects() {
            if sq.bot.obj[d] == sq.right.obj[x] {
                pb_objs.insert((d, x), None);
            }
        }
    }
    let mut pb_mors = HashMap::new();
    for m in dl.morphisms() {
        for n in xr.morphisms() {
            if sq.bot.mor[m] == sq.right.mor[n] {
                pb_mors.insert((m, n), None);
            }
        }
    }
    r.check(pb_objs.len() == q.obj_count(), "object count", || {
        format!("pullback has {}, corner has {}", pb_objs.len(), q.obj_count())
    });
    r.check(pb_mors.len() == q.mor_count(), "morphism count", || {
        format!("pullback has {}, corner has {}", pb_mors.len(), q.mor_count())
    });
    for o in q.objects() {
        let key = (sq.left.obj[o], sq.top.obj[o]);
        let slot = pb_objs.get_mut(&key).expect("commutation places it in the pullback");
        r.check(slot.is_none(), "comparison injective on objects", || {
            q.obj_name(o).to_string()
        });
        *slot = Some(o);
    }
    for m in q.morphisms() {
        let key = (sq.left.mor[m], sq.top.mor[m]);
        let slot = pb_mors.get_mut(&key).expect("commutation places it in the pullback");
        r.check(slot.is_none(), "comparison injective on morphisms", || {
            q.mor_name(m).to_string()
        });
        *slot = Some(m);
    }
    if !r.ok() {
        return r;
    }
    for (i, c) in cones.iter().enumerate() {
        let agree = c.on_left.post(sq.bot).comp == c.on_top.post(sq.right).comp;
        if !r.check(agree, "cone agreement", || format!("cone {i}")) {
            continue;
        }
        let comps: Option<Vec<usize>> = c
            .a
            .dom
            .objects()
            .map(|k| {
                pb_mors
                    .get(&(c.on_left.comp[k], c.on_top.comp[k]))
                    .copied()
                    .flatten()
            })
            .collect();
        let Some(comp) = comps else {
            r.fail("cone factorization", format!("cone {i}"));
            continue;
        };
        let cell = NatIso {
            source: c.a.clone(),
            target: c.b.clone(),
            comp,
        };
        let nat = check_nat_iso(&cell);
        r.check(nat.ok(), "factorization is natural", || format!("cone {i}"));
        if nat.ok() {
            r.check(
                cell.post(sq.left).comp == c.on_left.comp
                    && cell.post(sq.top).comp == c.on_top.comp,
                "factorization whiskers back",
                || format!("cone {i}"),
            );
        }
    }
    r
}

/// The cloven transport of `g : Δ → Γ.A` along `π : f ⇒ P_A g`.
///
/// Returns `t` with `P_A t = f` and `τ : t ⇒ g` with `P_A * τ = π`.
pub fn cloven_transport(d: &DisplayMap, g: &Functor, pi: &NatIso) -> MResult<(Functor, NatIso)> {
    let a = &d.fam;
    let b = d.base();
    let dl = &g.dom;
    if !same_groupoid(&g.cod, &d.total) || !same_groupoid(pi.cod(), b) {
        return Err(ModelError::malformed("transport data does not fit the display map"));
    }
    if pi.target != d.proj.after(g) {
        return Err(ModelError::malformed("the 2-cell does not end at P ∘ g"));
    }
    let f = &pi.source;
    let back: Vec<usize> = pi.comp.iter().map(|&m| b.inv(m)).collect();
    let obj: Vec<usize> = dl
        .objects()
        .map(|w| {
            let y = d.fib(g.obj[w]);
            d.obj(f.obj[w], a.act_obj(back[w], y))
        })
        .collect();
    let mor = dl
        .morphisms()
        .map(|m| {
            let (w, w2) = (dl.src(m), dl.tgt(m));
            let (g1p, _, g2p) = d.split_mor(g.mor[m]);
            let y = d.fib(g.obj[w]);
            let fib = a.fiber(f.obj[w2]);
            let p2 = fib.comp_all(&[
                a.act_mor(back[w2], g2p),
                fib.inv(a.phi(g1p, back[w2], y)),
                a.phi(back[w], f.mor[m], y),
            ]);
            d.mor(f.mor[m], a.act_obj(back[w], y), p2)
        })
        .collect();
    let t = Functor {
        dom: dl.clone(),
        cod: d.total.clone(),
        obj,
        mor,
    };
    let comp = dl
        .objects()
        .map(|w| {
            let y = d.fib(g.obj[w]);
            let g1 = d.split_obj(g.obj[w]).0;
            let fib = a.fiber(g1);
            let p2 = fib.comp(a.psi(g1, y), a.phi(back[w], pi.comp[w], y));
            d.mor(pi.comp[w], a.act_obj(back[w], y), p2)
        })
        .collect();
    let tau = NatIso {
        source: t.clone(),
        target: g.clone(),
        comp,
    };
    Ok((t, tau))
}

/// Checks the outputs of [`cloven_transport`]: `t` is a functor, `P t = f`,
/// `τ` is natural, and `P * τ = π`.
pub fn check_transport(d: &DisplayMap, g: &Functor, pi: &NatIso) -> Report {
    let mut r = Report::new("cloven transport");
    match cloven_transport(d, g, pi) {
        Err(e) => r.fail("transport defined", e.to_string()),
        Ok((t, tau)) => {
            r.absorb(check_functor(&t));
            r.check(d.proj.after(&t) == pi.source, "P ∘ t = f", String::new);
            r.absorb(check_nat_iso(&tau));
            r.check(tau.post(&d.proj).comp == pi.comp, "P * τ = π", String::new);
        }
    }
    r
}

/// Checks the cleavage laws `t_{gh}^{π*h} = t_g^π h` and `τ_{gh}^{π*h} = τ_g^π * h`.
pub fn check_cleavage(d: &DisplayMap, g: &Functor, pi: &NatIso, h: &Functor) -> Report {
    let mut r = Report::new("cleavage");
    let (Ok((t, tau)), Ok((th, tauh))) = (
        cloven_transport(d, g, pi),
        cloven_transport(d, &g.after(h), &pi.pre(h)),
    ) else {
        r.fail("transport defined", String::new());
        return r;
    };
    let lhs = t.after(h);
    r.check(th == lhs, "t along a precomposite", || {
        th.first_difference(&lhs).unwrap_or_default()
    });
    r.check(tauh == tau.pre(h), "τ along a precomposite", String::new);
    r
}

/// Checks that transport commutes with re-indexing along `f`: for `g'` into
/// `Δ.A[f]` and `π'` into `P_{A[f]} g'`,
/// `f.A ∘ t_{g'}^{π'} = t_{f.A g'}^{f*π'}` and `f.A * τ_{g'}^{π'} = τ_{f.A g'}^{f*π'}`.
pub fn check_transport_stability(
    d: &DisplayMap,
    f: &Functor,
    df: &DisplayMap,
    g: &Functor,
    pi: &NatIso,
) -> Report {
    let mut r = Report::new("transport stability");
    let up = upper_functor(d, f, df);
    let (Ok((t, tau)), Ok((t2, tau2))) = (
        cloven_transport(df, g, pi),
        cloven_transport(d, &up.after(g), &pi.post(f)),
    ) else {
        r.fail("transport defined", String::new());
        return r;
    };
    let lhs = up.after(&t);
    r.check(lhs == t2, "t stable under re-indexing", || {
        lhs.first_difference(&t2).unwrap_or_default()
    });
    r.check(tau.post(&up) == tau2, "τ stable under re-indexing", String::new);
    r
}

/// The re-indexing `s[f]` of a section `s` of `P_A` along `f : Δ → Γ`,
/// a section of `P_{A[f]}`, together with that display map.
pub fn reindex_section(d: &DisplayMap, s: &Functor, f: &Functor) -> MResult<(DisplayMap, Functor)> {
    let df = reindex_display(d, f)?;
    let sec = pullback_pair(&df, &Functor::identity(&f.dom), &s.after(f), d);
    Ok((df, sec))
}
