//! Finite groupoids, functors and natural isomorphisms.
//!
//! Objects and morphisms are dense indices. Composition is a full table;
//! `comp(g, f)` is `g ∘ f` and is defined iff `tgt(f) == src(g)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{MResult, ModelError, Report};

const NONE: u32 = u32::MAX;

#[derive(Clone)]
pub struct FinGroupoid {
    pub obj_names: Vec<String>,
    pub mor_names: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    comp: Vec<u32>,
    ident: Vec<usize>,
    inv: Vec<usize>,
    homs: Vec<Vec<usize>>,
}

impl PartialEq for FinGroupoid {
    fn eq(&self, o: &Self) -> bool {
        self.src == o.src
            && self.tgt == o.tgt
            && self.ident == o.ident
            && self.inv == o.inv
            && self.comp == o.comp
    }
}

impl Eq for FinGroupoid {}

impl fmt::Debug for FinGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinGroupoid({} objects, {} morphisms)",
            self.obj_count(),
            self.mor_count()
        )
    }
}

/// Whether two shared groupoids are the same structure.
pub fn same_groupoid(a: &Arc<FinGroupoid>, b: &Arc<FinGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FinGroupoid {
    /// Builds a groupoid from explicit tables. Only index bounds and typing
    /// of the tables are validated here; the laws are [`check_groupoid`]'s job.
    pub fn from_tables(
        obj_names: Vec<String>,
        mors: Vec<(String, usize, usize)>,
        compose: impl Fn(usize, usize) -> Option<usize>,
        ident: Vec<usize>,
        inv: Vec<usize>,
    ) -> MResult<Self> {
        let n = obj_names.len();
        let m = mors.len();
        let mut mor_names = Vec::with_capacity(m);
        let mut src = Vec::with_capacity(m);
        let mut tgt = Vec::with_capacity(m);
        for (name, s, t) in mors {
            if s >= n || t >= n {
                return Err(ModelError::malformed(format!(
                    "morphism `{name}` has an endpoint outside the object list"
                )));
            }
            mor_names.push(name);
            src.push(s);
            tgt.push(t);
        }
        if ident.len() != n || inv.len() != m {
            return Err(ModelError::malformed(
                "identity or inverse table has the wrong length",
            ));
        }
        if ident.iter().chain(inv.iter()).any(|&k| k >= m) {
            return Err(ModelError::malformed(
                "identity or inverse table names an unknown morphism",
            ));
        }
        let mut comp = vec![NONE; m * m];
        for g in 0..m {
            for f in 0..m {
                if tgt[f] == src[g] {
                    if let Some(h) = compose(g, f) {
                        if h >= m {
                            return Err(ModelError::malformed(
                                "composition table names an unknown morphism",
                            ));
                        }
                        comp[g * m + f] = h as u32;
                    }
                }
            }
        }
        let mut homs = vec![Vec::new(); n * n];
        for k in 0..m {
            homs[src[k] * n + tgt[k]].push(k);
        }
        Ok(FinGroupoid {
            obj_names,
            mor_names,
            src,
            tgt,
            comp,
            ident,
            inv,
            homs,
        })
    }

    /// A group with one object, given by its multiplication table.
    pub fn group(name: &str, elems: &[&str], mul: impl Fn(usize, usize) -> usize) -> Self {
        let k = elems.len();
        let e = (0..k)
            .find(|&e| (0..k).all(|a| mul(e, a) == a && mul(a, e) == a))
            .expect("a group has a unit");
        let inv = (0..k)
            .map(|a| (0..k).find(|&b| mul(a, b) == e).expect("a group has inverses"))
            .collect();
        FinGroupoid::from_tables(
            vec![name.to_string()],
            elems.iter().map(|s| (s.to_string(), 0, 0)).collect(),
            |g, f| Some(mul(g, f)),
            vec![e],
            inv,
        )
        .expect("group tables are well typed")
    }

    /// The cyclic group of order `k`.
    pub fn cyclic(k: usize) -> Self {
        let names: Vec<String> = (0..k).map(|i| format!("g{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        FinGroupoid::group("*", &refs, |a, b| (a + b) % k)
    }

    /// The discrete groupoid on the given objects.
    pub fn discrete(objs: &[String]) -> Self {
        let n = objs.len();
        FinGroupoid::from_tables(
            objs.to_vec(),
            objs.iter().enumerate().map(|(i, o)| (format!("1_{o}"), i, i)).collect(),
            |g, f| (g == f).then_some(g),
            (0..n).collect(),
            (0..n).collect(),
        )
        .expect("discrete tables are well typed")
    }

    /// The codiscrete groupoid: exactly one morphism between any two objects.
    pub fn codiscrete(objs: &[&str]) -> Self {
        let n = objs.len();
        let mors = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (format!("{}>{}", objs[i], objs[j]), i, j))
            .collect();
        FinGroupoid::from_tables(
            objs.iter().map(|s| s.to_string()).collect(),
            mors,
            |g, f| {
                let (s, t) = (f / n, g % n);
                Some(s * n + t)
            },
            (0..n).map(|i| i * n + i).collect(),
            (0..n * n).map(|k| (k % n) * n + k / n).collect(),
        )
        .expect("codiscrete tables are well typed")
    }

    /// The terminal groupoid.
    pub fn terminal() -> Self {
        FinGroupoid::discrete(&["*".to_string()])
    }

    pub fn obj_count(&self) -> usize {
        self.ident.len()
    }

    pub fn mor_count(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, m: usize) -> usize {
        self.src[m]
    }

    pub fn tgt(&self, m: usize) -> usize {
        self.tgt[m]
    }

    pub fn id(&self, x: usize) -> usize {
        self.ident[x]
    }

    pub fn inv(&self, m: usize) -> usize {
        self.inv[m]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.ident[self.src[m]] == m
    }

    /// `g ∘ f`, if defined.
    pub fn try_comp(&self, g: usize, f: usize) -> Option<usize> {
        let c = self.comp[g * self.mor_count() + f];
        (c != NONE).then_some(c as usize)
    }

    /// `g ∘ f`; panics when the table has no entry, which cannot happen in
    /// a groupoid that passed [`check_groupoid`].
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.try_comp(g, f).unwrap_or_else(|| {
            panic!(
                "composite {} ∘ {} is undefined",
                self.mor_names[g], self.mor_names[f]
            )
        })
    }

    /// Composite of a path given in application order: `comp_all(&[h, g, f]) = h∘g∘f`.
    pub fn comp_all(&self, ms: &[usize]) -> usize {
        let (last, rest) = ms.split_last().expect("a nonempty path");
        rest.iter().rev().fold(*last, |acc, &g| self.comp(g, acc))
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.homs[x * self.obj_count() + y]
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.obj_count()
    }

    pub fn morphisms(&self) -> std::ops::Range<usize> {
        0..self.mor_count()
    }

    pub fn obj_name(&self, x: usize) -> &str {
        &self.obj_names[x]
    }

    pub fn mor_name(&self, m: usize) -> &str {
        &self.mor_names[m]
    }

    pub fn is_discrete(&self) -> bool {
        self.morphisms().all(|m| self.is_identity(m))
    }
}

/// Checks composition typing, associativity, units and inverses.
pub fn check_groupoid(g: &FinGroupoid) -> Report {
    let mut r = Report::new("groupoid");
    for f in g.morphisms() {
        for h in g.morphisms() {
            let composable = g.tgt(f) == g.src(h);
            let name = || format!("{} ∘ {}", g.mor_name(h), g.mor_name(f));
            match g.try_comp(h, f) {
                Some(c) if composable => {
                    r.check(
                        g.src(c) == g.src(f) && g.tgt(c) == g.tgt(h),
                        "composite typing",
                        name,
                    );
                }
                None if composable => r.fail("totality of composition", name()),
                _ => {}
            }
        }
    }
    if !r.ok() {
        return r;
    }
    for x in g.objects() {
        let e = g.id(x);
        r.check(g.src(e) == x && g.tgt(e) == x, "identity typing", || {
            g.obj_name(x).to_string()
        });
    }
    for f in g.morphisms() {
        r.check(
            g.try_comp(g.id(g.tgt(f)), f) == Some(f) && g.try_comp(f, g.id(g.src(f))) == Some(f),
            "unit law",
            || g.mor_name(f).to_string(),
        );
        let i = g.inv(f);
        r.check(
            g.src(i) == g.tgt(f)
                && g.tgt(i) == g.src(f)
                && g.try_comp(i, f) == Some(g.id(g.src(f)))
                && g.try_comp(f, i) == Some(g.id(g.tgt(f))),
            "inverse law",
            || g.mor_name(f).to_string(),
        );
    }
    for f in g.morphisms() {
        for h in g.morphisms().filter(|&h| g.src(h) == g.tgt(f)) {
            let hf = g.comp(h, f);
            for k in g.morphisms().filter(|&k| g.src(k) == g.tgt(h)) {
                r.check(
                    g.comp(k, hf) == g.comp(g.comp(k, h), f),
                    "associativity",
                    || {
                        format!(
                            "({} ∘ {}) ∘ {}",
                            g.mor_name(k),
                            g.mor_name(h),
                            g.mor_name(f)
                        )
                    },
                );
            }
        }
    }
    r
}

/// A functor between finite groupoids, given by its object and morphism maps.
#[derive(Clone, Debug)]
pub struct Functor {
    pub dom: Arc<FinGroupoid>,
    pub cod: Arc<FinGroupoid>,
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl PartialEq for Functor {
    fn eq(&self, o: &Self) -> bool {
        self.obj == o.obj
            && self.mor == o.mor
            && same_groupoid(&self.dom, &o.dom)
            && same_groupoid(&self.cod, &o.cod)
    }
}

impl Eq for Functor {}

impl Functor {
    pub fn identity(g: &Arc<FinGroupoid>) -> Functor {
        Functor {
            dom: g.clone(),
            cod: g.clone(),
            obj: g.objects().collect(),
            mor: g.morphisms().collect(),
        }
    }

    /// The unique functor to the terminal groupoid `to`.
    pub fn to_terminal(dom: &Arc<FinGroupoid>, to: &Arc<FinGroupoid>) -> Functor {
        Functor {
            dom: dom.clone(),
            cod: to.clone(),
            obj: vec![0; dom.obj_count()],
            mor: vec![0; dom.mor_count()],
        }
    }

    /// The constant functor at object `x`.
    pub fn constant(dom: &Arc<FinGroupoid>, cod: &Arc<FinGroupoid>, x: usize) -> Functor {
        Functor {
            dom: dom.clone(),
            cod: cod.clone(),
            obj: vec![x; dom.obj_count()],
            mor: vec![cod.id(x); dom.mor_count()],
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Functor {
        debug_assert!(same_groupoid(&first.cod, &self.dom));
        Functor {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            obj: first.obj.iter().map(|&x| self.obj[x]).collect(),
            mor: first.mor.iter().map(|&m| self.mor[m]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        same_groupoid(&self.dom, &self.cod)
            && self.obj.iter().enumerate().all(|(i, &x)| i == x)
            && self.mor.iter().enumerate().all(|(i, &m)| i == m)
    }

    /// A description of the first point where two parallel functors differ.
    pub fn first_difference(&self, o: &Functor) -> Option<String> {
        if !same_groupoid(&self.dom, &o.dom) {
            return Some("domains differ".into());
        }
        if !same_groupoid(&self.cod, &o.cod) {
            return Some("codomains differ".into());
        }
        for x in self.dom.objects() {
            if self.obj[x] != o.obj[x] {
                return Some(format!(
                    "object {}: {} vs {}",
                    self.dom.obj_name(x),
                    self.cod.obj_name(self.obj[x]),
                    o.cod.obj_name(o.obj[x])
                ));
            }
        }
        for m in self.dom.morphisms() {
            if self.mor[m] != o.mor[m] {
                return Some(format!(
                    "morphism {}: {} vs {}",
                    self.dom.mor_name(m),
                    self.cod.mor_name(self.mor[m]),
                    o.cod.mor_name(o.mor[m])
                ));
            }
        }
        None
    }
}

/// Checks that the maps are typed and preserve identities and composition.
pub fn check_functor(f: &Functor) -> Report {
    let (d, c) = (&*f.dom, &*f.cod);
    let mut r = Report::new("functor");
    let sized = f.obj.len() == d.obj_count() && f.mor.len() == d.mor_count();
    if !r.check(sized, "map sizes", || "map has the wrong length".into()) {
        return r;
    }
    let in_range =
        f.obj.iter().all(|&x| x < c.obj_count()) && f.mor.iter().all(|&m| m < c.mor_count());
    if !r.check(in_range, "map range", || "image outside the codomain".into()) {
        return r;
    }
    for m in d.morphisms() {
        let fm = f.mor[m];
        r.check(
            c.src(fm) == f.obj[d.src(m)] && c.tgt(fm) == f.obj[d.tgt(m)],
            "morphism typing",
            || d.mor_name(m).to_string(),
        );
    }
    if !r.ok() {
        return r;
    }
    for x in d.objects() {
        r.check(f.mor[d.id(x)] == c.id(f.obj[x]), "identities", || {
            d.obj_name(x).to_string()
        });
    }
    for m in d.morphisms() {
        for n in d.morphisms().filter(|&n| d.src(n) == d.tgt(m)) {
            r.check(
                f.mor[d.comp(n, m)] == c.comp(f.mor[n], f.mor[m]),
                "composition",
                || format!("{} ∘ {}", d.mor_name(n), d.mor_name(m)),
            );
        }
    }
    r
}

/// A natural isomorphism `source ⇒ target`; `comp[x] : source(x) → target(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatIso {
    pub source: Functor,
    pub target: Functor,
    pub comp: Vec<usize>,
}

impl NatIso {
    pub fn identity(f: &Functor) -> NatIso {
        NatIso {
            source: f.clone(),
            target: f.clone(),
            comp: f.obj.iter().map(|&x| f.cod.id(x)).collect(),
        }
    }

    pub fn cod(&self) -> &Arc<FinGroupoid> {
        &self.source.cod
    }

    pub fn dom(&self) -> &Arc<FinGroupoid> {
        &self.source.dom
    }

    pub fn inverse(&self) -> NatIso {
        NatIso {
            source: self.target.clone(),
            target: self.source.clone(),
            comp: self.comp.iter().map(|&m| self.cod().inv(m)).collect(),
        }
    }

    /// Vertical composite `next · self`.
    pub fn then(&self, next: &NatIso) -> NatIso {
        let c = self.cod();
        NatIso {
            source: self.source.clone(),
            target: next.target.clone(),
            comp: self
                .comp
                .iter()
                .zip(&next.comp)
                .map(|(&a, &b)| c.comp(b, a))
                .collect(),
        }
    }

    /// `F * self`: components `F(self_x)`.
    pub fn post(&self, f: &Functor) -> NatIso {
        NatIso {
            source: f.after(&self.source),
            target: f.after(&self.target),
            comp: self.comp.iter().map(|&m| f.mor[m]).collect(),
        }
    }

    /// `self * F`: components `self_{F x}`.
    pub fn pre(&self, f: &Functor) -> NatIso {
        NatIso {
            source: self.source.after(f),
            target: self.target.after(f),
            comp: f.obj.iter().map(|&x| self.comp[x]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.comp
            .iter()
            .all(|&m| self.cod().is_identity(m))
    }
}

/// Checks component typing and naturality.
pub fn check_nat_iso(a: &NatIso) -> Report {
    let (d, c) = (a.dom(), a.cod());
    let mut r = Report::new("natural isomorphism");
    let parallel = same_groupoid(d, &a.target.dom) && same_groupoid(c, &a.target.cod);
    if !r.check(parallel, "parallel functors", || "source and target differ".into()) {
        return r;
    }
    if !r.check(a.comp.len() == d.obj_count(), "component count", || {
        format!("{} components", a.comp.len())
    }) {
        return r;
    }
    for x in d.objects() {
        let m = a.comp[x];
        r.check(
            m < c.mor_count() && c.src(m) == a.source.obj[x] && c.tgt(m) == a.target.obj[x],
            "component typing",
            || d.obj_name(x).to_string(),
        );
    }
    if !r.ok() {
        return r;
    }
    for m in d.morphisms() {
        let (x, y) = (d.src(m), d.tgt(m));
        r.check(
            c.comp(a.target.mor[m], a.comp[x]) == c.comp(a.comp[y], a.source.mor[m]),
            "naturality",
            || d.mor_name(m).to_string(),
        );
    }
    r
}

/// Whether two functors agree; same as `==`.
pub fn functor_eq(f: &Functor, g: &Functor) -> bool {
    f == g
}
