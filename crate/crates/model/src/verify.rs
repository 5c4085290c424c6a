//! The model axiom suite and the computation-rule counterexample.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::enumerate::{cells_into, functors, sections, vertical_natisos};
use crate::error::{MResult, ModelError, Report};
use crate::format::Model;
use crate::grothendieck::{
    check_cleavage, check_pullback, check_section, check_transport, check_transport_stability,
    cloven_transport, reindex_display, reindex_section, total_groupoid_unchecked, upper_functor,
    Cone, DisplayMap, Square,
};
use crate::groupoid::{check_functor, check_groupoid, functor_eq, FinGroupoid, Functor, NatIso};
use crate::id_former::{
    build_id, check_arrow_naturality, check_arrow_object, check_discreteness, check_elimination,
    check_id_structure, check_normal_collapse, check_stability, swap_family, Elimination,
    IdStructure,
};
use crate::pseudo::{check_pseudofunctor, reindex, PseudoFunctor};

/// Bounds for the suite. `samples` caps how many instances of each kind
/// are drawn; `search_limit` caps every enumeration.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub search_limit: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            search_limit: 4096,
            samples: 6,
            seed: 7,
        }
    }
}

/// One check of the suite, run against one display map.
#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub display_map: String,
    pub report: Report,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub model: String,
    pub entries: Vec<Entry>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.report.ok())
    }

    pub fn instances(&self) -> usize {
        self.entries.iter().map(|e| e.report.instances).sum()
    }

    pub fn failures(&self) -> usize {
        self.entries.iter().map(|e| e.report.failures).sum()
    }

    /// The names of the checks that ran.
    pub fn checks(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for e in &self.entries {
            if !out.contains(&e.report.structure) {
                out.push(e.report.structure.clone());
            }
        }
        out
    }
}

/// The small groupoids used as domains of test functors.
pub fn test_groupoids() -> Vec<Arc<FinGroupoid>> {
    vec![
        Arc::new(FinGroupoid::terminal()),
        Arc::new(FinGroupoid::discrete(&["0".into(), "1".into()])),
        Arc::new(FinGroupoid::codiscrete(&["0", "1"])),
        Arc::new(FinGroupoid::cyclic(2)),
    ]
}

struct Ctx<'a> {
    opts: &'a SuiteOptions,
    rng: ChaCha8Rng,
    entries: Vec<Entry>,
    notes: Vec<String>,
    name: String,
}

impl Ctx<'_> {
    fn push(&mut self, report: Report) {
        self.entries.push(Entry {
            display_map: self.name.clone(),
            report,
        });
    }

    fn take<T>(&self, v: Vec<T>) -> Vec<T> {
        v.into_iter().take(self.opts.samples).collect()
    }

    /// Functors from each test groupoid into `cod`, capped per domain.
    fn probes(&self, cod: &Arc<FinGroupoid>) -> MResult<Vec<Functor>> {
        let mut out = Vec::new();
        for t in test_groupoids() {
            out.extend(self.take(functors(&t, cod, self.opts.search_limit)?));
        }
        Ok(out)
    }

    fn cells(&mut self, target: &Functor) -> Vec<NatIso> {
        cells_into(target, self.opts.samples, &mut self.rng)
    }
}

/// Runs every check of the suite on each display map of the model.
pub fn verify_model(model: &Model, opts: &SuiteOptions) -> MResult<SuiteReport> {
    let mut cx = Ctx {
        opts,
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        entries: Vec::new(),
        notes: Vec::new(),
        name: String::new(),
    };
    for name in &model.display_maps {
        let fam = model
            .pseudofunctor(name)
            .ok_or_else(|| ModelError::malformed(format!("unknown display map `{name}`")))?
            .clone();
        cx.name = name.clone();
        let coherence = check_pseudofunctor(&fam);
        let coherent = coherence.ok();
        cx.push(coherence);
        if !coherent {
            continue;
        }
        let d = total_groupoid_unchecked(fam.clone());
        cx.push(check_total(&d));
        let mut base_maps = vec![Functor::identity(d.base())];
        base_maps.extend(cx.probes(d.base())?);
        splitness(&mut cx, &d, &base_maps)?;
        pullbacks(&mut cx, &d, &base_maps)?;
        transport(&mut cx, &d, &base_maps)?;
        let ids = build_id(&d)?;
        cx.push(check_id_structure(&ids));
        arrow_object(&mut cx, &ids)?;
        let secs = cx.take(sections(&d, opts.search_limit)?);
        factorizations(&mut cx, &ids, &secs, &base_maps)?;
        eliminations(&mut cx, &ids, &base_maps)?;
        let mut disc = check_discreteness(&ids.id, opts.search_limit)?;
        for a in &secs {
            for b in &secs {
                disc.absorb(check_discreteness(&ids.id_over(a, b)?, opts.search_limit)?);
            }
        }
        cx.push(disc);
        let normal = fam
            .base
            .objects()
            .all(|g| fam.psi_components(g).iter().all(|&m| fam.fiber(g).is_identity(m)));
        cx.notes.push(format!(
            "{name}: {}, {}",
            if fam.is_strict() { "strict" } else { "not strict" },
            if normal { "normal" } else { "not normal" }
        ));
    }
    Ok(SuiteReport {
        model: model.name.clone(),
        entries: cx.entries,
        notes: cx.notes,
    })
}

/// The group laws of `Γ.A`, plus identities and inverses recomputed by
/// brute force from composition alone.
fn check_total(d: &DisplayMap) -> Report {
    let t = &*d.total;
    let mut r = check_groupoid(t);
    r.structure = "total groupoid".into();
    for x in t.objects() {
        let idem: Vec<usize> = t
            .hom(x, x)
            .iter()
            .copied()
            .filter(|&e| t.comp(e, e) == e)
            .collect();
        r.check(idem == [t.id(x)], "identity is the unique idempotent", || {
            t.obj_name(x).to_string()
        });
    }
    for m in t.morphisms() {
        let invs: Vec<usize> = t
            .hom(t.tgt(m), t.src(m))
            .iter()
            .copied()
            .filter(|&n| t.comp(n, m) == t.id(t.src(m)))
            .collect();
        r.check(invs == [t.inv(m)], "inverse formula", || {
            t.mor_name(m).to_string()
        });
    }
    r.absorb(check_functor(&d.proj));
    r
}

/// `A[1] = A`, `A[f][g] = A[fg]`, `(fg).A = f.A ∘ g.A[f]` and the
/// commuting squares `P_A ∘ f.A = f ∘ P_{A[f]}`.
fn splitness(cx: &mut Ctx, d: &DisplayMap, base_maps: &[Functor]) -> MResult<()> {
    let mut r = Report::new("splitness");
    let a = &d.fam;
    r.check(
        reindex(a, &Functor::identity(d.base()))? == **a,
        "A[1] = A",
        String::new,
    );
    for (i, f) in base_maps.iter().enumerate() {
        let af = reindex(a, f)?;
        let df = reindex_display(d, f)?;
        let fa = upper_functor(d, f, &df);
        r.absorb(check_functor(&fa));
        r.check(
            d.proj.after(&fa) == f.after(&df.proj),
            "P_A ∘ f.A = f ∘ P_{A[f]}",
            || format!("base map {i}"),
        );
        for g in cx.probes(&f.dom)? {
            let fg = f.after(&g);
            r.check(reindex(&af, &g)? == reindex(a, &fg)?, "A[f][g] = A[fg]", || {
                format!("base map {i}")
            });
            let dfg = reindex_display(d, &fg)?;
            let dfgf = reindex_display(&df, &g)?;
            let lhs = upper_functor(d, &fg, &dfg);
            let rhs = fa.after(&upper_functor(&df, &g, &dfgf));
            r.check(lhs == rhs, "(fg).A = f.A ∘ g.A[f]", || {
                format!("base map {i}")
            });
        }
    }
    cx.push(r);
    Ok(())
}

/// The re-indexing squares are pullbacks: strict counts, and cones built
/// from cloven transports factor uniquely.
fn pullbacks(cx: &mut Ctx, d: &DisplayMap, base_maps: &[Functor]) -> MResult<()> {
    let mut r = Report::new("pullback square");
    for f in base_maps {
        let df = reindex_display(d, f)?;
        let fa = upper_functor(d, f, &df);
        let mut gs = cx.take(sections(&df, cx.opts.search_limit)?);
        gs.extend(cx.probes(&df.total)?);
        let mut cones = Vec::new();
        for g in &gs {
            for pi in cx.cells(&df.proj.after(g)) {
                let (t, tau) = cloven_transport(&df, g, &pi)?;
                cones.push(Cone {
                    on_left: tau.post(&df.proj),
                    on_top: tau.post(&fa),
                    a: t,
                    b: g.clone(),
                });
            }
        }
        r.absorb(check_pullback(
            &Square {
                top: &fa,
                left: &df.proj,
                right: &d.proj,
                bot: f,
            },
            &cones,
        ));
    }
    cx.push(r);
    Ok(())
}

/// Cloven transport, the cleavage laws and stability of transport.
fn transport(cx: &mut Ctx, d: &DisplayMap, base_maps: &[Functor]) -> MResult<()> {
    let mut tr = Report::new("cloven transport");
    let mut cl = Report::new("cleavage");
    let mut gs = cx.take(sections(d, cx.opts.search_limit)?);
    gs.extend(cx.probes(&d.total)?);
    for g in &gs {
        for pi in cx.cells(&d.proj.after(g)) {
            tr.absorb(check_transport(d, g, &pi));
            for h in cx.take(cx.probes(&g.dom)?) {
                cl.absorb(check_cleavage(d, g, &pi, &h));
            }
        }
    }
    cx.push(tr);
    cx.push(cl);
    let mut nr = Report::new("normality");
    let normal = d.base().objects().all(|g| {
        d.fam.psi_components(g).iter().all(|&m| d.fam.fiber(g).is_identity(m))
    });
    let mut witnesses = 0usize;
    for g in &gs {
        let (t, tau) = cloven_transport(d, g, &NatIso::identity(&d.proj.after(g)))?;
        let moved = t != *g || !tau.is_identity();
        if moved {
            witnesses += 1;
        }
        nr.check(!(normal && moved), "normal families transport trivially along identities", || {
            format!("probe into {}", g.dom.obj_count())
        });
    }
    cx.push(nr);
    cx.notes.push(format!(
        "{}: {witnesses} of {} transports along identity 2-cells are nontrivial",
        cx.name,
        gs.len()
    ));
    let mut st = Report::new("transport stability");
    for f in base_maps {
        let df = reindex_display(d, f)?;
        let mut gs = cx.take(sections(&df, cx.opts.search_limit)?);
        gs.extend(cx.take(cx.probes(&df.total)?));
        for g in &gs {
            for pi in cx.cells(&df.proj.after(g)) {
                st.absorb(check_transport_stability(d, f, &df, g, &pi));
            }
        }
    }
    cx.push(st);
    Ok(())
}

/// The arrow-object bijection at several `h`, and its 2-naturality.
fn arrow_object(cx: &mut Ctx, ids: &IdStructure) -> MResult<()> {
    let limit = cx.opts.search_limit;
    let base = ids.base.base().clone();
    let mut hs = vec![Functor::identity(&base), ids.base.proj.clone()];
    for t in test_groupoids().into_iter().take(3) {
        hs.extend(cx.take(functors(&t, &base, limit)?));
    }
    let mut r = Report::new("arrow object");
    for h in &hs {
        r.absorb(check_arrow_object(ids, h, limit)?);
    }
    cx.push(r);
    let mut nat = Report::new("arrow object naturality");
    let secs = cx.take(sections(&ids.base, limit)?);
    let ks = cx.probes(&base)?;
    for a in &secs {
        for b in &secs {
            for p in vertical_natisos(&ids.base, a, b, limit)? {
                let u = ids.factor(a, b, &p)?;
                for k in &ks {
                    nat.absorb(check_arrow_naturality(ids, &u, k));
                }
            }
        }
    }
    cx.push(nat);
    Ok(())
}

/// `p[f]`: the vertical 2-cell `a[f] ⇒ b[f]` induced by `p : a ⇒ b`.
fn reindex_cell(df: &DisplayMap, d: &DisplayMap, p: &NatIso, f: &Functor, af: &Functor, bf: &Functor) -> NatIso {
    let comp = f
        .dom
        .objects()
        .map(|w| {
            let (_, x, p2) = d.split_mor(p.comp[f.obj[w]]);
            df.mor(f.dom.id(w), x, p2)
        })
        .collect();
    NatIso {
        source: af.clone(),
        target: bf.clone(),
        comp,
    }
}

/// `{p}` is a section recovering `p`, `{p}[f] = {p[f]}`, and
/// `(a;b) ∘ f = f•• ∘ (a[f];b[f])`.
fn factorizations(
    cx: &mut Ctx,
    ids: &IdStructure,
    secs: &[Functor],
    base_maps: &[Functor],
) -> MResult<()> {
    let limit = cx.opts.search_limit;
    let d = &ids.base;
    let mut r = Report::new("factorization");
    let mut pr = Report::new("pairing naturality");
    let restricted: Vec<_> = base_maps
        .iter()
        .map(|f| {
            let df = reindex_display(d, f)?;
            let sf = build_id(&df)?;
            let f1 = upper_functor(d, f, &df);
            let f2 = upper_functor(&ids.tri, &f1, &sf.tri);
            Ok((f, df, sf, f2))
        })
        .collect::<MResult<_>>()?;
    for a in secs {
        for b in secs {
            for p in vertical_natisos(d, a, b, limit)? {
                let (dab, sec) = ids.factor_section(a, b, &p)?;
                r.absorb(check_section(&dab, &sec));
                let u = ids.factor(a, b, &p)?;
                r.check(ids.alpha.pre(&u) == p, "α_A * {p} = p", String::new);
                for (f, df, sf, f2) in &restricted {
                    let (_, af) = reindex_section(d, a, f)?;
                    let (_, bf) = reindex_section(d, b, f)?;
                    let pf = reindex_cell(df, d, &p, f, &af, &bf);
                    let (_, lhs) = reindex_section(&dab, &sec, f)?;
                    let (_, rhs) = sf.factor_section(&af, &bf, &pf)?;
                    r.check(lhs == rhs, "{p}[f] = {p[f]}", || {
                        lhs.first_difference(&rhs).unwrap_or_default()
                    });
                    let lhs = ids.pair(a, b).after(f);
                    let rhs = f2.after(&sf.pair(&af, &bf));
                    pr.check(lhs == rhs, "(a;b) f = f•• (a[f];b[f])", || {
                        lhs.first_difference(&rhs).unwrap_or_default()
                    });
                }
            }
        }
    }
    cx.push(r);
    cx.push(pr);
    Ok(())
}

/// Motive families over `Γ.A.A▽.Id_A` used for eliminator checks.
pub fn motives(ids: &IdStructure) -> MResult<Vec<(String, Arc<PseudoFunctor>)>> {
    let e = ids.proofs().clone();
    let two = Arc::new(FinGroupoid::discrete(&["0".into(), "1".into()]));
    let back = ids.base.proj.after(&ids.s);
    Ok(vec![
        ("constant".into(), Arc::new(PseudoFunctor::constant(e.clone(), two))),
        ("A[P s]".into(), Arc::new(reindex(&ids.base.fam, &back)?)),
        ("swap".into(), Arc::new(swap_family(&e))),
    ])
}

fn eliminations(cx: &mut Ctx, ids: &IdStructure, base_maps: &[Functor]) -> MResult<()> {
    let limit = cx.opts.search_limit;
    let mut elims = Vec::new();
    for (name, motive) in motives(ids)? {
        let dc = total_groupoid_unchecked(motive.clone());
        let dcr = reindex_display(&dc, &ids.r)?;
        for section in cx.take(sections(&dcr, limit)?) {
            elims.push(Elimination {
                name: name.clone(),
                motive: motive.clone(),
                section,
            });
        }
    }
    let mut r = Report::new("elimination");
    let mut collapse = Report::new("normal collapse");
    let strict_a = ids.base.fam.is_strict();
    let mut moved = 0usize;
    for e in &elims {
        r.absorb(check_elimination(ids, e)?);
        if strict_a && e.motive.is_strict() {
            collapse.absorb(check_normal_collapse(ids, e)?);
        } else if !check_normal_collapse(ids, e)?.ok() {
            moved += 1;
        }
    }
    cx.push(r);
    if collapse.instances > 0 {
        cx.push(collapse);
    }
    cx.notes.push(format!(
        "{}: {moved} of {} eliminations outside the strict fragment differ from c",
        cx.name,
        elims.len()
    ));
    let mut st = Report::new("stability");
    let few: Vec<Elimination> = elims
        .into_iter()
        .step_by(2)
        .take(cx.opts.samples)
        .collect();
    for f in base_maps {
        st.absorb(check_stability(ids, f, &few)?);
    }
    cx.push(st);
    Ok(())
}

/// One object of `Γ.A` with the values of `J_c[r_A]` and `c` there.
#[derive(Clone, Debug, Serialize)]
pub struct PointRow {
    pub object: String,
    pub j_r: String,
    pub c: String,
}

/// The computation rule failing in a model: `J_c[r_A] ≠ c` while the
/// section `H_c` of `Id_{C[r_A]}[J_c[r_A]; c]` exists.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub model: String,
    pub motive: String,
    pub rows: Vec<PointRow>,
    pub functor_eq: bool,
    pub first_difference: Option<String>,
    pub h_cell: Vec<String>,
    pub h_section: Report,
}

/// Runs `J` with the motive `B` weakened over the proofs of `A = B`, on
/// the section of `B[r_A]` choosing the first fiber point.
pub fn comp_rule_counterexample(model: &Model) -> MResult<Counterexample> {
    let get = |ty: &str| {
        model
            .base_type(ty)
            .cloned()
            .ok_or_else(|| ModelError::malformed(format!("model has no type `{ty}`")))
    };
    let (a, b) = (get("A")?, get("B")?);
    let d = total_groupoid_unchecked(a);
    let ids = build_id(&d)?;
    let weak = Functor::to_terminal(ids.proofs(), &b.base);
    let motive = Arc::new(reindex(&b, &weak)?);
    let dc = total_groupoid_unchecked(motive.clone());
    let dcr = reindex_display(&dc, &ids.r)?;
    let c = sections(&dcr, 64)?
        .into_iter()
        .find(|s| s.obj.iter().all(|&o| dcr.fib(o) == 0))
        .ok_or_else(|| ModelError::NoSolution("a section at the first fiber point".into()))?;
    let je = ids.j_elim(motive, &c)?;
    let hc = ids.h_comp(&je)?;
    let ga = ids.ctx_total();
    let tot = &dcr.total;
    let rows = ga
        .objects()
        .map(|k| PointRow {
            object: ga.obj_name(k).to_string(),
            j_r: tot.obj_name(je.j_r.obj[k]).to_string(),
            c: tot.obj_name(c.obj[k]).to_string(),
        })
        .collect();
    let mut h_section = check_section(&hc.display, &hc.section);
    h_section.structure = "H_c section".into();
    let u = hc.ids.factor(&je.j_r, &je.c, &hc.cell)?;
    h_section.check(
        hc.ids.alpha.pre(&u) == hc.cell,
        "α recovers h_c from H_c",
        String::new,
    );
    Ok(Counterexample {
        model: model.name.clone(),
        motive: "B weakened over Γ.A.A▽.Id_A".into(),
        rows,
        functor_eq: functor_eq(&je.j_r, &c),
        first_difference: je.j_r.first_difference(&c),
        h_cell: hc.cell.comp.iter().map(|&m| tot.mor_name(m).to_string()).collect(),
        h_section,
    })
}
