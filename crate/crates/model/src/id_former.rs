//! Identity types in the groupoid model: the Id pseudofunctor, the arrow
//! object `α_A`, reflexivity, the cloven eliminator `J_c` and the
//! computation section `H_c`.

use std::sync::Arc;

use crate::enumerate::{functors_with, lifts, natisos_with, sections, vertical_natisos};
use crate::error::{MResult, ModelError, Report};
use crate::grothendieck::{
    check_section, cloven_transport, pullback_pair, reindex_display, reindex_section,
    total_groupoid, upper_functor, DisplayMap,
};
use crate::groupoid::{check_functor, check_nat_iso, same_groupoid, FinGroupoid, Functor, NatIso};
use crate::pseudo::{reindex, PseudoFunctor};

/// The `=`-type structure of a display map `P_A : Γ.A → Γ`.
#[derive(Clone, Debug)]
pub struct IdStructure {
    /// `P_A`.
    pub base: DisplayMap,
    /// `P_{A▽} : Γ.A.A▽ → Γ.A`, with `A▽ = A[P_A]`.
    pub tri: DisplayMap,
    /// `P_{Id_A} : Γ.A.A▽.Id_A → Γ.A.A▽`.
    pub id: DisplayMap,
    /// `P_A• : Γ.A.A▽ → Γ.A`.
    pub upper: Functor,
    /// `P_{A▽} P_{Id_A}`.
    pub s: Functor,
    /// `P_A• P_{Id_A}`.
    pub t: Functor,
    /// `α_A : s ⇒ t`.
    pub alpha: NatIso,
    /// `δ_A : Γ.A → Γ.A.A▽`.
    pub delta: Functor,
    /// `r_A : Γ.A → Γ.A.A▽.Id_A`.
    pub r: Functor,
    /// `φ_A : 1 ⇒ r_A t`.
    pub phi: NatIso,
}

/// A proof object `(γ, x, y, p)` of `Γ.A.A▽.Id_A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProofObject {
    pub ctx: usize,
    pub left: usize,
    pub right: usize,
    pub path: usize,
}

fn unique(cands: Vec<usize>, what: impl FnOnce() -> String) -> MResult<usize> {
    match cands.len() {
        1 => Ok(cands[0]),
        0 => Err(ModelError::NoSolution(what())),
        count => Err(ModelError::NotUnique {
            what: what(),
            count,
        }),
    }
}

/// Builds `Id_A`, `α_A`, `δ_A`, and solves for `r_A` and `φ_A`.
pub fn build_id(a: &DisplayMap) -> MResult<IdStructure> {
    let fam = &a.fam;
    let ga = &a.total;
    let tri = reindex_display(a, &a.proj)?;
    let w = &tri.total;
    let hom_of = |om: usize| {
        let (o, y) = tri.split_obj(om);
        let (g, x) = a.split_obj(o);
        (g, fam.fiber(g).hom(x, y))
    };
    let fibers: Vec<Arc<FinGroupoid>> = w
        .objects()
        .map(|om| {
            let (g, hom) = hom_of(om);
            let f = fam.fiber(g);
            let names: Vec<String> = hom.iter().map(|&p| f.mor_name(p).to_string()).collect();
            Arc::new(FinGroupoid::discrete(&names))
        })
        .collect();
    let fmap = w
        .morphisms()
        .map(|mm| {
            let (m1, _, p3) = tri.split_mor(mm);
            let (p1, _, p2) = a.split_mor(m1);
            let (om, om2) = (w.src(mm), w.tgt(mm));
            let (_, src_hom) = hom_of(om);
            let (g2, tgt_hom) = hom_of(om2);
            let f2 = fam.fiber(g2);
            let map: Vec<usize> = src_hom
                .iter()
                .map(|&p| {
                    let q = f2.comp_all(&[p3, fam.act_mor(p1, p), f2.inv(p2)]);
                    tgt_hom
                        .iter()
                        .position(|&h| h == q)
                        .expect("the conjugate lies in the target hom-set")
                })
                .collect();
            Functor {
                dom: fibers[om].clone(),
                cod: fibers[om2].clone(),
                obj: map.clone(),
                mor: map,
            }
        })
        .collect();
    let id_fam = PseudoFunctor::strict(w.clone(), fibers, fmap)?;
    let id = total_groupoid(Arc::new(id_fam))?;
    let upper = upper_functor(a, &a.proj, &tri);
    let s = tri.proj.after(&id.proj);
    let t = upper.after(&id.proj);
    let one = Functor::identity(ga);
    let delta = pullback_pair(&tri, &one, &one, a);
    let mut ids = IdStructure {
        base: a.clone(),
        tri,
        id,
        upper,
        alpha: NatIso::identity(&s),
        s,
        t,
        delta,
        r: one.clone(),
        phi: NatIso::identity(&one),
    };
    ids.alpha = NatIso {
        source: ids.s.clone(),
        target: ids.t.clone(),
        comp: ids
            .id
            .total
            .objects()
            .map(|e| {
                let po = ids.proof_object(e);
                let f = fam.fiber(po.ctx);
                let b = a.base();
                a.mor(
                    b.id(po.ctx),
                    po.left,
                    f.comp(po.path, fam.psi(po.ctx, po.left)),
                )
            })
            .collect(),
    };
    ids.r = ids.factor(&one, &one, &NatIso::identity(&one))?;
    ids.phi = ids.solve_phi()?;
    Ok(ids)
}

impl IdStructure {
    /// `Γ.A`.
    pub fn ctx_total(&self) -> &Arc<FinGroupoid> {
        &self.base.total
    }

    /// `Γ.A.A▽.Id_A`.
    pub fn proofs(&self) -> &Arc<FinGroupoid> {
        &self.id.total
    }

    /// Decodes an object of `Γ.A.A▽.Id_A`.
    pub fn proof_object(&self, e: usize) -> ProofObject {
        let (om, i) = self.id.split_obj(e);
        let (o, y) = self.tri.split_obj(om);
        let (g, x) = self.base.split_obj(o);
        ProofObject {
            ctx: g,
            left: x,
            right: y,
            path: self.base.fam.fiber(g).hom(x, y)[i],
        }
    }

    /// The semantic pairing `a;b : K → Γ.A.A▽` of `a, b : K → Γ.A` over the same base map.
    pub fn pair(&self, a: &Functor, b: &Functor) -> Functor {
        pullback_pair(&self.tri, a, b, &self.base)
    }

    /// The unique `u : K → Γ.A.A▽.Id_A` with `s u = a`, `t u = b` and
    /// `α_A * u = θ`, found by searching fibers and counting solutions.
    pub fn factor(&self, a: &Functor, b: &Functor, theta: &NatIso) -> MResult<Functor> {
        if self.base.proj.after(a) != self.base.proj.after(b) {
            return Err(ModelError::malformed(
                "factorization endpoints lie over different base maps",
            ));
        }
        let k = &a.dom;
        let w = self.pair(a, b);
        let e = self.proofs();
        let mut obj = Vec::with_capacity(k.obj_count());
        for kk in k.objects() {
            let cands = e
                .objects()
                .filter(|&o| self.id.proj.obj[o] == w.obj[kk] && self.alpha.comp[o] == theta.comp[kk])
                .collect();
            obj.push(unique(cands, || {
                format!("the factorization at {}", k.obj_name(kk))
            })?);
        }
        let mut mor = Vec::with_capacity(k.mor_count());
        for m in k.morphisms() {
            let cands = e
                .hom(obj[k.src(m)], obj[k.tgt(m)])
                .iter()
                .copied()
                .filter(|&n| self.id.proj.mor[n] == w.mor[m])
                .collect();
            mor.push(unique(cands, || {
                format!("the factorization at {}", k.mor_name(m))
            })?);
        }
        Ok(Functor {
            dom: k.clone(),
            cod: e.clone(),
            obj,
            mor,
        })
    }

    fn solve_phi(&self) -> MResult<NatIso> {
        let e = self.proofs();
        let ga = self.ctx_total();
        let target = self.r.after(&self.t);
        let comp = e
            .objects()
            .map(|o| {
                let cands = e
                    .hom(o, target.obj[o])
                    .iter()
                    .copied()
                    .filter(|&n| {
                        self.s.mor[n] == self.alpha.comp[o] && ga.is_identity(self.t.mor[n])
                    })
                    .collect();
                unique(cands, || format!("φ_A at {}", e.obj_name(o)))
            })
            .collect::<MResult<Vec<_>>>()?;
        Ok(NatIso {
            source: Functor::identity(e),
            target,
            comp,
        })
    }

    /// `refl_A`, a section of `Γ.A.Id_A[δ_A] → Γ.A`, with that display map.
    pub fn refl(&self) -> MResult<(DisplayMap, Functor)> {
        let d = reindex_display(&self.id, &self.delta)?;
        let sec = pullback_pair(&d, &Functor::identity(self.ctx_total()), &self.r, &self.id);
        Ok((d, sec))
    }

    /// The display map `Γ.Id_A[a;b] → Γ` for sections `a`, `b` of `P_A`.
    pub fn id_over(&self, a: &Functor, b: &Functor) -> MResult<DisplayMap> {
        reindex_display(&self.id, &self.pair(a, b))
    }

    /// `{p}`: the section of `Γ.Id_A[a;b]` classifying the vertical 2-cell `p : a ⇒ b`.
    pub fn factor_section(
        &self,
        a: &Functor,
        b: &Functor,
        p: &NatIso,
    ) -> MResult<(DisplayMap, Functor)> {
        let u = self.factor(a, b, p)?;
        let d = self.id_over(a, b)?;
        let sec = pullback_pair(&d, &Functor::identity(&a.dom), &u, &self.id);
        Ok((d, sec))
    }

    /// The eliminator `J_c` for a family `C` over `Γ.A.A▽.Id_A` and a section
    /// `c` of `P_{C[r_A]}`: the cloven transport of `(r_A.C) c t` along `φ_A`.
    pub fn j_elim(&self, motive: Arc<PseudoFunctor>, c: &Functor) -> MResult<JElim> {
        if !same_groupoid(&motive.base, self.proofs()) {
            return Err(ModelError::malformed(
                "the motive does not live over the identity-proof groupoid",
            ));
        }
        let dc = total_groupoid(motive)?;
        let dcr = reindex_display(&dc, &self.r)?;
        check_section(&dcr, c).into_result()?;
        let upper_r = upper_functor(&dc, &self.r, &dcr);
        let lifted = upper_r.after(c).after(&self.t);
        let (j, tau) = cloven_transport(&dc, &lifted, &self.phi)?;
        let j_r = pullback_pair(
            &dcr,
            &Functor::identity(self.ctx_total()),
            &j.after(&self.r),
            &dc,
        );
        Ok(JElim {
            motive: dc,
            motive_r: dcr,
            upper_r,
            c: c.clone(),
            j,
            tau,
            j_r,
        })
    }

    /// `h_c : J_c[r_A] ⇒ c`, the vertical 2-cell with `r_A.C * h_c = τ * r_A`,
    /// and `H_c = {h_c}`.
    pub fn h_comp(&self, je: &JElim) -> MResult<HComp> {
        let ga = self.ctx_total();
        let tot = &je.motive_r.total;
        let comp = ga
            .objects()
            .map(|k| {
                let want = je.tau.comp[self.r.obj[k]];
                let cands = tot
                    .hom(je.j_r.obj[k], je.c.obj[k])
                    .iter()
                    .copied()
                    .filter(|&n| je.upper_r.mor[n] == want)
                    .collect();
                unique(cands, || format!("h_c at {}", ga.obj_name(k)))
            })
            .collect::<MResult<Vec<_>>>()?;
        let cell = NatIso {
            source: je.j_r.clone(),
            target: je.c.clone(),
            comp,
        };
        check_nat_iso(&cell).into_result()?;
        let ids = build_id(&je.motive_r)?;
        let (display, section) = ids.factor_section(&je.j_r, &je.c, &cell)?;
        Ok(HComp {
            cell,
            ids,
            display,
            section,
        })
    }
}

/// The data of an elimination `J_c`.
#[derive(Clone, Debug)]
pub struct JElim {
    /// `P_C : Γ.A.A▽.Id_A.C → Γ.A.A▽.Id_A`.
    pub motive: DisplayMap,
    /// `P_{C[r_A]} : Γ.A.C[r_A] → Γ.A`.
    pub motive_r: DisplayMap,
    /// `r_A.C`.
    pub upper_r: Functor,
    pub c: Functor,
    /// `J_c`, a section of `P_C`.
    pub j: Functor,
    /// The transport 2-cell `J_c ⇒ (r_A.C) c t`.
    pub tau: NatIso,
    /// `J_c[r_A]`, a section of `P_{C[r_A]}`.
    pub j_r: Functor,
}

/// The data of a computation section `H_c`.
#[derive(Clone, Debug)]
pub struct HComp {
    pub cell: NatIso,
    /// The `=`-type structure of `P_{C[r_A]}`.
    pub ids: IdStructure,
    /// `Γ.A.Id_{C[r_A]}[J_c[r_A]; c] → Γ.A`.
    pub display: DisplayMap,
    pub section: Functor,
}

/// Checks the defining equations of an `=`-type structure.
pub fn check_id_structure(s: &IdStructure) -> Report {
    let mut r = Report::new("identity structure");
    let ga = s.ctx_total();
    let one = Functor::identity(ga);
    r.check(
        s.id.fam.fibers.iter().all(|f| f.is_discrete()),
        "Id fibers are discrete",
        String::new,
    );
    r.check(
        s.id.fam.is_strict(),
        "Id is strict",
        String::new,
    );
    r.absorb(check_nat_iso(&s.alpha));
    r.check(
        s.alpha.post(&s.base.proj).is_identity(),
        "α_A lies over the identity",
        String::new,
    );
    r.absorb(check_functor(&s.delta));
    r.absorb(check_functor(&s.r));
    r.check(s.id.proj.after(&s.r) == s.delta, "P_Id r_A = δ_A", String::new);
    r.check(s.s.after(&s.r) == one, "s r_A = 1", String::new);
    r.check(s.t.after(&s.r) == one, "t r_A = 1", String::new);
    r.check(
        s.alpha.pre(&s.r) == NatIso::identity(&one),
        "α_A * r_A = 1",
        String::new,
    );
    for k in ga.objects() {
        let po = s.proof_object(s.r.obj[k]);
        let (g, x) = s.base.split_obj(k);
        r.check(
            po.ctx == g
                && po.left == x
                && po.right == x
                && po.path == s.base.fam.fiber(g).id(x),
            "r_A(γ,x) = (γ,x,x,1_x)",
            || ga.obj_name(k).to_string(),
        );
    }
    r.absorb(check_nat_iso(&s.phi));
    r.check(s.phi.post(&s.s).comp == s.alpha.comp, "s * φ_A = α_A", String::new);
    r.check(s.phi.post(&s.t).is_identity(), "t * φ_A = 1", String::new);
    r.check(s.phi.pre(&s.r).is_identity(), "φ_A * r_A = 1", String::new);
    r
}

/// The arrow-object property at `h : K → Γ`: whiskering with `α_A` is a
/// bijection from lifts of `h` through `P_A s` onto vertical 2-cells
/// between lifts of `h` through `P_A`, on objects and on morphisms.
pub fn check_arrow_object(s: &IdStructure, h: &Functor, limit: usize) -> MResult<Report> {
    let mut r = Report::new("arrow object");
    let ps = s.base.proj.after(&s.s);
    let left = functors_with(
        &h.dom,
        s.proofs(),
        |k, o| ps.obj[o] == h.obj[k],
        |m, n| ps.mor[n] == h.mor[m],
        limit,
    )?;
    let base_lifts = lifts(&s.base, h, limit)?;
    let mut right = Vec::new();
    for a in &base_lifts {
        for b in &base_lifts {
            right.extend(vertical_natisos(&s.base, a, b, limit)?);
        }
    }
    let image: Vec<NatIso> = left.iter().map(|u| s.alpha.pre(u)).collect();
    r.check(image.len() == right.len(), "object count", || {
        format!("{} lifts, {} 2-cells", image.len(), right.len())
    });
    for (i, x) in image.iter().enumerate() {
        r.check(
            image[..i].iter().all(|y| y != x),
            "injective on objects",
            || format!("lift {i}"),
        );
        r.check(right.contains(x), "image is a vertical 2-cell", || {
            format!("lift {i}")
        });
    }
    let vertical_ps = |n: usize| s.base.base().is_identity(ps.mor[n]);
    for (i, u) in left.iter().enumerate() {
        for (j, v) in left.iter().enumerate() {
            let cells = natisos_with(u, v, |_, n| vertical_ps(n), limit)?;
            let (th, th2) = (&image[i], &image[j]);
            let mut squares = 0usize;
            for sa in vertical_natisos(&s.base, &th.source, &th2.source, limit)? {
                for sb in vertical_natisos(&s.base, &th.target, &th2.target, limit)? {
                    let ga = s.ctx_total();
                    let commutes = h.dom.objects().all(|k| {
                        ga.comp(th2.comp[k], sa.comp[k]) == ga.comp(sb.comp[k], th.comp[k])
                    });
                    if commutes {
                        squares += 1;
                    }
                }
            }
            r.check(cells.len() == squares, "morphism count", || {
                format!("lifts {i}, {j}: {} 2-cells, {squares} squares", cells.len())
            });
            let pairs: Vec<(Vec<usize>, Vec<usize>)> = cells
                .iter()
                .map(|c| (c.post(&s.s).comp, c.post(&s.t).comp))
                .collect();
            for (k, p) in pairs.iter().enumerate() {
                r.check(!pairs[..k].contains(p), "injective on morphisms", || {
                    format!("lifts {i}, {j}")
                });
            }
        }
    }
    Ok(r)
}

/// 2-naturality in `h`: whiskering with `α_A` commutes with precomposition by `k`.
pub fn check_arrow_naturality(s: &IdStructure, u: &Functor, k: &Functor) -> Report {
    let mut r = Report::new("arrow object naturality");
    let uk = u.after(k);
    r.check(
        s.alpha.pre(&uk) == s.alpha.pre(u).pre(k),
        "α_A * (u k) = (α_A * u) * k",
        String::new,
    );
    r
}

/// Every pair of sections of `d` joined by a vertical 2-cell is equal, and
/// every such 2-cell is an identity.
pub fn check_discreteness(d: &DisplayMap, limit: usize) -> MResult<Report> {
    let mut r = Report::new("discreteness");
    let secs = sections(d, limit)?;
    for (i, p) in secs.iter().enumerate() {
        for (j, q) in secs.iter().enumerate() {
            for cell in vertical_natisos(d, p, q, limit)? {
                r.check(p == q, "parallel proofs joined by a 2-cell coincide", || {
                    format!("sections {i}, {j}")
                });
                r.check(cell.is_identity(), "2-cells between proofs are identities", || {
                    format!("sections {i}, {j}")
                });
            }
        }
    }
    Ok(r)
}

/// Motive and section instances for eliminator checks.
pub struct Elimination {
    pub name: String,
    pub motive: Arc<PseudoFunctor>,
    pub section: Functor,
}

/// Checks the stability equations under re-indexing along `f : Δ → Γ`:
/// `Id_A[f••] = Id_{A[f]}`, `α_A[f] = α_{A[f]}`, `r_A f• = f••• r_{A[f]}`,
/// `refl_A[f•] = refl_{A[f]}`, and for each elimination
/// `J_c[f•••] = J_{c[f•]}` and `H_c[f•] = H_{c[f•]}`.
pub fn check_stability(s: &IdStructure, f: &Functor, elims: &[Elimination]) -> MResult<Report> {
    let mut r = Report::new("stability");
    let af = reindex_display(&s.base, f)?;
    let sf = build_id(&af)?;
    let f1 = upper_functor(&s.base, f, &af);
    r.check(
        reindex(&s.tri.fam, &f1)? == *sf.tri.fam,
        "A▽[f•] = A[f]▽",
        String::new,
    );
    let f2 = upper_functor(&s.tri, &f1, &sf.tri);
    r.check(
        reindex(&s.id.fam, &f2)? == *sf.id.fam,
        "Id_A[f••] = Id_{A[f]}",
        String::new,
    );
    let f3 = upper_functor(&s.id, &f2, &sf.id);
    r.check(
        s.alpha.pre(&f3) == sf.alpha.post(&f1),
        "α_A[f] = α_{A[f]}",
        String::new,
    );
    r.check(
        s.r.after(&f1) == f3.after(&sf.r),
        "r_A f• = f••• r_{A[f]}",
        String::new,
    );
    r.check(
        s.phi.pre(&f3).comp == sf.phi.post(&f3).comp,
        "φ_A[f] = φ_{A[f]}",
        String::new,
    );
    let (rd, refl) = s.refl()?;
    let (_, refl_f) = reindex_section(&rd, &refl, &f1)?;
    let (_, refl2) = sf.refl()?;
    r.check(refl_f == refl2, "refl_A[f•] = refl_{A[f]}", || {
        refl_f.first_difference(&refl2).unwrap_or_default()
    });
    for e in elims {
        let je = s.j_elim(e.motive.clone(), &e.section)?;
        let motive_f = Arc::new(reindex(&e.motive, &f3)?);
        let (_, c_f) = reindex_section(&je.motive_r, &e.section, &f1)?;
        let je2 = sf.j_elim(motive_f, &c_f)?;
        let (_, j_f) = reindex_section(&je.motive, &je.j, &f3)?;
        r.check(j_f == je2.j, "J_c[f•••] = J_{c[f•]}", || {
            format!("{}: {}", e.name, j_f.first_difference(&je2.j).unwrap_or_default())
        });
        let hc = s.h_comp(&je)?;
        let hc2 = sf.h_comp(&je2)?;
        let (_, h_f) = reindex_section(&hc.display, &hc.section, &f1)?;
        r.check(h_f == hc2.section, "H_c[f•] = H_{c[f•]}", || {
            format!(
                "{}: {}",
                e.name,
                h_f.first_difference(&hc2.section).unwrap_or_default()
            )
        });
    }
    Ok(r)
}

/// The equations of the `=`-type structure specific to one elimination:
/// `J_c` is a section, `J_c` acts on objects as `e ↦ (e, C_{φ_e⁻¹} c(t e))`,
/// and `H_c` is a section whose 2-cell is recovered by `α`.
pub fn check_elimination(s: &IdStructure, e: &Elimination) -> MResult<Report> {
    let mut r = Report::new("elimination");
    let je = s.j_elim(e.motive.clone(), &e.section)?;
    let mut sec = check_section(&je.motive, &je.j);
    sec.structure = format!("J_c section ({})", e.name);
    r.absorb(sec);
    let c = &je.motive.fam;
    let ex = s.proofs();
    for o in ex.objects() {
        let back = ex.inv(s.phi.comp[o]);
        let ct = je.c.obj[s.t.obj[o]];
        let want = c.act_obj(back, je.motive_r.fib(ct));
        r.check(
            je.motive.split_obj(je.j.obj[o]) == (o, want),
            "J_c on objects",
            || ex.obj_name(o).to_string(),
        );
    }
    let mut sec = check_section(&je.motive_r, &je.j_r);
    sec.structure = format!("J_c[r_A] section ({})", e.name);
    r.absorb(sec);
    let hc = s.h_comp(&je)?;
    let mut sec = check_section(&hc.display, &hc.section);
    sec.structure = format!("H_c section ({})", e.name);
    r.absorb(sec);
    let u = hc.ids.factor(&je.j_r, &je.c, &hc.cell)?;
    r.check(
        hc.ids.alpha.pre(&u) == hc.cell,
        "α recovers h_c from H_c",
        String::new,
    );
    r.check(
        hc.cell.post(&je.upper_r) == je.tau.pre(&s.r),
        "r_A.C * h_c = τ * r_A",
        String::new,
    );
    Ok(r)
}

/// The collapse expected when `C` is strict: `J_c[r_A] = c` and
/// `H_c = refl_{C[r_A]}[c]`.
pub fn check_normal_collapse(s: &IdStructure, e: &Elimination) -> MResult<Report> {
    let mut r = Report::new("normal collapse");
    let je = s.j_elim(e.motive.clone(), &e.section)?;
    r.check(je.j_r == je.c, "J_c[r_A] = c", || {
        format!("{}: {}", e.name, je.j_r.first_difference(&je.c).unwrap_or_default())
    });
    let hc = s.h_comp(&je)?;
    let (rd, refl) = hc.ids.refl()?;
    let (_, refl_c) = reindex_section(&rd, &refl, &je.c)?;
    r.check(hc.section == refl_c, "H_c = refl[c]", || {
        format!(
            "{}: {}",
            e.name,
            hc.section.first_difference(&refl_c).unwrap_or_default()
        )
    });
    Ok(r)
}

/// The family over any groupoid whose fibers are the codiscrete groupoid on
/// `{a, b}`, whose fiber functors all swap `a` and `b`, and whose coherence
/// components are the unique codiscrete fillers.
pub fn swap_family(base: &Arc<FinGroupoid>) -> PseudoFunctor {
    let fiber = Arc::new(FinGroupoid::codiscrete(&["a", "b"]));
    let swap = Functor {
        dom: fiber.clone(),
        cod: fiber.clone(),
        obj: vec![1, 0],
        mor: fiber
            .morphisms()
            .map(|m| {
                let (i, j) = (fiber.src(m), fiber.tgt(m));
                fiber.hom(1 - i, 1 - j)[0]
            })
            .collect(),
    };
    let f2 = fiber.clone();
    let f3 = fiber.clone();
    PseudoFunctor::new(
        base.clone(),
        vec![fiber.clone(); base.obj_count()],
        vec![swap; base.mor_count()],
        move |_, _| vec![f2.hom(0, 1)[0], f2.hom(1, 0)[0]],
        move |_| vec![f3.hom(1, 0)[0], f3.hom(0, 1)[0]],
    )
    .expect("swap family data is well shaped")
}
