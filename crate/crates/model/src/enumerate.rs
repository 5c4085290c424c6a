//! Exhaustive enumeration of functors and natural isomorphisms.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{MResult, ModelError};
use crate::grothendieck::DisplayMap;
use crate::groupoid::{FinGroupoid, Functor, NatIso};

/// Every functor `dom → cod` whose object and morphism images satisfy the
/// given filters. Fails once more than `limit` functors are found.
pub fn functors_with(
    dom: &Arc<FinGroupoid>,
    cod: &Arc<FinGroupoid>,
    obj_ok: impl Fn(usize, usize) -> bool,
    mor_ok: impl Fn(usize, usize) -> bool,
    limit: usize,
) -> MResult<Vec<Functor>> {
    let mut triples = vec![Vec::new(); dom.mor_count()];
    for g in dom.morphisms() {
        for f in dom.morphisms().filter(|&f| dom.tgt(f) == dom.src(g)) {
            let h = dom.comp(g, f);
            triples[g.max(f).max(h)].push((g, f, h));
        }
    }
    let mut search = FunctorSearch {
        dom,
        triples,
        cod,
        obj_ok: &obj_ok,
        mor_ok: &mor_ok,
        obj: vec![usize::MAX; dom.obj_count()],
        mor: vec![usize::MAX; dom.mor_count()],
        found: Vec::new(),
        limit,
    };
    search.objects(0)?;
    Ok(search.found)
}

/// Every functor `dom → cod`.
pub fn functors(
    dom: &Arc<FinGroupoid>,
    cod: &Arc<FinGroupoid>,
    limit: usize,
) -> MResult<Vec<Functor>> {
    functors_with(dom, cod, |_, _| true, |_, _| true, limit)
}

/// Every lift `u : K → Γ.A` of `h : K → Γ` through the projection.
pub fn lifts(d: &DisplayMap, h: &Functor, limit: usize) -> MResult<Vec<Functor>> {
    functors_with(
        &h.dom,
        &d.total,
        |k, o| d.proj.obj[o] == h.obj[k],
        |m, n| d.proj.mor[n] == h.mor[m],
        limit,
    )
}

/// Every strict section of a display map.
pub fn sections(d: &DisplayMap, limit: usize) -> MResult<Vec<Functor>> {
    lifts(d, &Functor::identity(d.base()), limit)
}

struct FunctorSearch<'a> {
    dom: &'a Arc<FinGroupoid>,
    triples: Vec<Vec<(usize, usize, usize)>>,
    cod: &'a Arc<FinGroupoid>,
    obj_ok: &'a dyn Fn(usize, usize) -> bool,
    mor_ok: &'a dyn Fn(usize, usize) -> bool,
    obj: Vec<usize>,
    mor: Vec<usize>,
    found: Vec<Functor>,
    limit: usize,
}

impl FunctorSearch<'_> {
    fn objects(&mut self, k: usize) -> MResult<()> {
        if k == self.dom.obj_count() {
            return self.morphisms(0);
        }
        for o in self.cod.objects() {
            if (self.obj_ok)(k, o) {
                self.obj[k] = o;
                self.objects(k + 1)?;
            }
        }
        self.obj[k] = usize::MAX;
        Ok(())
    }

    fn consistent(&self, m: usize, n: usize) -> bool {
        let (d, c) = (&**self.dom, &**self.cod);
        if d.is_identity(m) && n != c.id(self.obj[d.src(m)]) {
            return false;
        }
        let inv = d.inv(m);
        if inv < m && self.mor[inv] != c.inv(n) {
            return false;
        }
        let img = |k: usize| if k == m { n } else { self.mor[k] };
        self.triples[m]
            .iter()
            .all(|&(g, f, h)| img(h) == c.comp(img(g), img(f)))
    }

    fn morphisms(&mut self, m: usize) -> MResult<()> {
        if m == self.dom.mor_count() {
            if self.found.len() >= self.limit {
                return Err(ModelError::SearchLimit(format!(
                    "functors {} → {}",
                    describe(self.dom),
                    describe(self.cod)
                )));
            }
            self.found.push(Functor {
                dom: self.dom.clone(),
                cod: self.cod.clone(),
                obj: self.obj.clone(),
                mor: self.mor.clone(),
            });
            return Ok(());
        }
        let (s, t) = (self.obj[self.dom.src(m)], self.obj[self.dom.tgt(m)]);
        let cands: Vec<usize> = self.cod.hom(s, t).to_vec();
        for n in cands {
            if (self.mor_ok)(m, n) && self.consistent(m, n) {
                self.mor[m] = n;
                self.morphisms(m + 1)?;
            }
        }
        self.mor[m] = usize::MAX;
        Ok(())
    }
}

fn describe(g: &FinGroupoid) -> String {
    format!("({} objects, {} morphisms)", g.obj_count(), g.mor_count())
}

/// Every natural isomorphism `a ⇒ b` whose components satisfy `comp_ok`.
pub fn natisos_with(
    a: &Functor,
    b: &Functor,
    comp_ok: impl Fn(usize, usize) -> bool,
    limit: usize,
) -> MResult<Vec<NatIso>> {
    let mut comp = vec![usize::MAX; a.dom.obj_count()];
    let mut found = Vec::new();
    fn go(
        k: usize,
        a: &Functor,
        b: &Functor,
        comp_ok: &dyn Fn(usize, usize) -> bool,
        comp: &mut Vec<usize>,
        found: &mut Vec<NatIso>,
        limit: usize,
    ) -> MResult<()> {
        let (d, c) = (&a.dom, &a.cod);
        if k == d.obj_count() {
            if found.len() >= limit {
                return Err(ModelError::SearchLimit("natural isomorphisms".into()));
            }
            found.push(NatIso {
                source: a.clone(),
                target: b.clone(),
                comp: comp.clone(),
            });
            return Ok(());
        }
        for &n in c.hom(a.obj[k], b.obj[k]) {
            if !comp_ok(k, n) {
                continue;
            }
            comp[k] = n;
            let natural = d.morphisms().all(|m| {
                let (x, y) = (d.src(m), d.tgt(m));
                x > k || y > k || c.comp(b.mor[m], comp[x]) == c.comp(comp[y], a.mor[m])
            });
            if natural {
                go(k + 1, a, b, comp_ok, comp, found, limit)?;
            }
        }
        comp[k] = usize::MAX;
        Ok(())
    }
    go(0, a, b, &comp_ok, &mut comp, &mut found, limit)?;
    Ok(found)
}

/// Every natural isomorphism `a ⇒ b`.
pub fn natisos(a: &Functor, b: &Functor, limit: usize) -> MResult<Vec<NatIso>> {
    natisos_with(a, b, |_, _| true, limit)
}

/// Every natural isomorphism `a ⇒ b` between lifts of the same functor
/// whose image under the projection is an identity.
pub fn vertical_natisos(
    d: &DisplayMap,
    a: &Functor,
    b: &Functor,
    limit: usize,
) -> MResult<Vec<NatIso>> {
    natisos_with(a, b, |_, n| d.is_vertical(n), limit)
}

/// The natural isomorphism `f ⇒ target` with the given components, where
/// `f` is the unique functor making it natural.
pub fn cell_into(target: &Functor, comp: Vec<usize>) -> NatIso {
    let (d, c) = (&target.dom, &target.cod);
    let obj = comp.iter().map(|&m| c.src(m)).collect();
    let mor = d
        .morphisms()
        .map(|m| {
            let (x, y) = (d.src(m), d.tgt(m));
            c.comp_all(&[c.inv(comp[y]), target.mor[m], comp[x]])
        })
        .collect();
    NatIso {
        source: Functor {
            dom: d.clone(),
            cod: c.clone(),
            obj,
            mor,
        },
        target: target.clone(),
        comp,
    }
}

/// Natural isomorphisms into `target` with a free source functor: all of
/// them when there are at most `limit`, otherwise `limit` sampled by `rng`.
pub fn cells_into(target: &Functor, limit: usize, rng: &mut impl Rng) -> Vec<NatIso> {
    let (d, c) = (&target.dom, &target.cod);
    let choices: Vec<Vec<usize>> = d
        .objects()
        .map(|k| {
            c.morphisms()
                .filter(|&m| c.tgt(m) == target.obj[k])
                .collect()
        })
        .collect();
    let total = choices
        .iter()
        .try_fold(1usize, |acc, v| acc.checked_mul(v.len()));
    match total {
        Some(n) if n <= limit => {
            let mut out = Vec::with_capacity(n);
            let mut idx = vec![0usize; choices.len()];
            for _ in 0..n {
                out.push(cell_into(
                    target,
                    idx.iter().zip(&choices).map(|(&i, v)| v[i]).collect(),
                ));
                for (i, v) in idx.iter_mut().zip(&choices) {
                    *i += 1;
                    if *i < v.len() {
                        break;
                    }
                    *i = 0;
                }
            }
            out
        }
        _ => (0..limit)
            .map(|_| {
                cell_into(
                    target,
                    choices
                        .iter()
                        .map(|v| *v.choose(rng).expect("a component exists"))
                        .collect(),
                )
            })
            .collect(),
    }
}
