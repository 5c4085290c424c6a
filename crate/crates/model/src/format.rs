//! The JSON model file format.
//!
//! A model names its groupoids, functors and pseudofunctors. Pseudofunctor
//! coherence components default to identities when omitted. `display_maps`
//! lists the pseudofunctors checked by the verification suite, and `types`
//! assigns a pseudofunctor over a one-object, one-morphism groupoid to each
//! base type of the theory.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{MResult, ModelError};
use crate::groupoid::{check_functor, check_groupoid, same_groupoid, FinGroupoid, Functor};
use crate::pseudo::{check_pseudofunctor, PseudoFunctor};

/// Default soft limit on the number of morphisms of a loaded groupoid.
pub const DEFAULT_MAX_SIZE: usize = 64;

/// The environment variable overriding [`DEFAULT_MAX_SIZE`].
pub const MAX_SIZE_VAR: &str = "ATT_MAX_GROUPOID_SIZE";

/// The size limit in force: the environment override if set and valid.
pub fn max_size_from_env() -> usize {
    std::env::var(MAX_SIZE_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_SIZE)
}

/// A loaded, validated model.
#[derive(Clone, Debug, Default)]
pub struct Model {
    pub name: String,
    pub description: String,
    pub groupoids: Vec<(String, Arc<FinGroupoid>)>,
    pub functors: Vec<(String, Functor)>,
    pub pseudofunctors: Vec<(String, Arc<PseudoFunctor>)>,
    pub display_maps: Vec<String>,
    pub types: Vec<(String, String)>,
}

impl Model {
    pub fn groupoid(&self, name: &str) -> Option<&Arc<FinGroupoid>> {
        self.groupoids.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }

    pub fn functor(&self, name: &str) -> Option<&Functor> {
        self.functors.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn pseudofunctor(&self, name: &str) -> Option<&Arc<PseudoFunctor>> {
        self.pseudofunctors
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
    }

    /// The closed family assigned to a base type.
    pub fn base_type(&self, ty: &str) -> Option<&Arc<PseudoFunctor>> {
        let (_, p) = self.types.iter().find(|(t, _)| t == ty)?;
        self.pseudofunctor(p)
    }

    /// Registers a groupoid under a fresh name and returns the shared handle.
    pub fn add_groupoid(&mut self, name: &str, g: FinGroupoid) -> Arc<FinGroupoid> {
        let g = Arc::new(g);
        self.groupoids.push((name.to_string(), g.clone()));
        g
    }

    pub fn add_functor(&mut self, name: &str, f: Functor) -> Functor {
        self.functors.push((name.to_string(), f.clone()));
        f
    }

    pub fn add_pseudofunctor(&mut self, name: &str, p: PseudoFunctor) -> Arc<PseudoFunctor> {
        let p = Arc::new(p);
        self.pseudofunctors.push((name.to_string(), p.clone()));
        p
    }

    fn groupoid_name(&self, g: &Arc<FinGroupoid>) -> MResult<&str> {
        let by_ptr = self.groupoids.iter().find(|(_, h)| Arc::ptr_eq(g, h));
        by_ptr
            .or_else(|| self.groupoids.iter().find(|(_, h)| same_groupoid(g, h)))
            .map(|(n, _)| n.as_str())
            .ok_or_else(|| ModelError::malformed("an unregistered groupoid is referenced"))
    }

    fn functor_name(&self, f: &Functor) -> MResult<&str> {
        self.functors
            .iter()
            .find(|(_, h)| h == f)
            .map(|(n, _)| n.as_str())
            .ok_or_else(|| ModelError::malformed("an unregistered fiber functor is referenced"))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    name: String,
    #[serde(default)]
    description: String,
    groupoids: Vec<GroupoidSpec>,
    #[serde(default)]
    functors: Vec<FunctorSpec>,
    #[serde(default)]
    pseudofunctors: Vec<PseudoSpec>,
    #[serde(default)]
    display_maps: Vec<String>,
    #[serde(default)]
    types: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupoidSpec {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<MorSpec>,
    compose: Vec<[String; 3]>,
    identities: BTreeMap<String, String>,
    inverses: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorSpec {
    name: String,
    src: String,
    tgt: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctorSpec {
    name: String,
    dom: String,
    cod: String,
    objects: BTreeMap<String, String>,
    morphisms: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PseudoSpec {
    name: String,
    base: String,
    fibers: BTreeMap<String, String>,
    fiber_functors: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    phi: Vec<PhiSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    psi: Vec<PsiSpec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhiSpec {
    p: String,
    q: String,
    components: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PsiSpec {
    object: String,
    components: BTreeMap<String, String>,
}

fn index(names: &[String], what: &str) -> MResult<HashMap<String, usize>> {
    let mut ix = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if ix.insert(n.clone(), i).is_some() {
            return Err(ModelError::malformed(format!("duplicate {what} `{n}`")));
        }
    }
    Ok(ix)
}

fn look(ix: &HashMap<String, usize>, name: &str, what: &str) -> MResult<usize> {
    ix.get(name)
        .copied()
        .ok_or_else(|| ModelError::malformed(format!("unknown {what} `{name}`")))
}

fn lookup<'a, T>(items: &'a [(String, T)], name: &str, what: &str) -> MResult<&'a T> {
    items
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, t)| t)
        .ok_or_else(|| ModelError::malformed(format!("unknown {what} `{name}`")))
}

fn build_groupoid(spec: &GroupoidSpec, limit: usize) -> MResult<FinGroupoid> {
    if spec.morphisms.len() > limit {
        return Err(ModelError::TooLarge {
            name: spec.name.clone(),
            size: spec.morphisms.len(),
            limit,
        });
    }
    let oix = index(&spec.objects, "object")?;
    let mor_names: Vec<String> = spec.morphisms.iter().map(|m| m.name.clone()).collect();
    let mix = index(&mor_names, "morphism")?;
    let mors = spec
        .morphisms
        .iter()
        .map(|m| {
            Ok((
                m.name.clone(),
                look(&oix, &m.src, "object")?,
                look(&oix, &m.tgt, "object")?,
            ))
        })
        .collect::<MResult<Vec<_>>>()?;
    let mut table = HashMap::new();
    for [g, f, h] in &spec.compose {
        let key = (look(&mix, g, "morphism")?, look(&mix, f, "morphism")?);
        if table.insert(key, look(&mix, h, "morphism")?).is_some() {
            return Err(ModelError::malformed(format!("composite {g} ∘ {f} given twice")));
        }
    }
    let ident = spec
        .objects
        .iter()
        .map(|o| {
            let m = spec
                .identities
                .get(o)
                .ok_or_else(|| ModelError::malformed(format!("object `{o}` has no identity")))?;
            look(&mix, m, "morphism")
        })
        .collect::<MResult<Vec<_>>>()?;
    let inv = mor_names
        .iter()
        .map(|m| {
            let i = spec
                .inverses
                .get(m)
                .ok_or_else(|| ModelError::malformed(format!("morphism `{m}` has no inverse")))?;
            look(&mix, i, "morphism")
        })
        .collect::<MResult<Vec<_>>>()?;
    let g = FinGroupoid::from_tables(
        spec.objects.clone(),
        mors,
        |g, f| table.get(&(g, f)).copied(),
        ident,
        inv,
    )?;
    check_groupoid(&g).into_result()?;
    Ok(g)
}

fn name_index(g: &FinGroupoid) -> (HashMap<String, usize>, HashMap<String, usize>) {
    (
        g.objects().map(|o| (g.obj_name(o).to_string(), o)).collect(),
        g.morphisms().map(|m| (g.mor_name(m).to_string(), m)).collect(),
    )
}

/// Parses and validates a model with the given size limit.
pub fn load_model(text: &str, limit: usize) -> MResult<Model> {
    let file: ModelFile =
        serde_json::from_str(text).map_err(|e| ModelError::malformed(e.to_string()))?;
    let mut model = Model {
        name: file.name,
        description: file.description,
        ..Model::default()
    };
    for spec in &file.groupoids {
        if model.groupoid(&spec.name).is_some() {
            return Err(ModelError::malformed(format!("duplicate groupoid `{}`", spec.name)));
        }
        let g = build_groupoid(spec, limit)?;
        model.add_groupoid(&spec.name, g);
    }
    for spec in &file.functors {
        let dom = lookup(&model.groupoids, &spec.dom, "groupoid")?.clone();
        let cod = lookup(&model.groupoids, &spec.cod, "groupoid")?.clone();
        let (dobj, dmor) = name_index(&dom);
        let (cobj, cmor) = name_index(&cod);
        let mut obj = vec![usize::MAX; dom.obj_count()];
        for (k, v) in &spec.objects {
            obj[look(&dobj, k, "object")?] = look(&cobj, v, "object")?;
        }
        let mut mor = vec![usize::MAX; dom.mor_count()];
        for (k, v) in &spec.morphisms {
            mor[look(&dmor, k, "morphism")?] = look(&cmor, v, "morphism")?;
        }
        if obj.contains(&usize::MAX) || mor.contains(&usize::MAX) {
            return Err(ModelError::malformed(format!(
                "functor `{}` is not defined everywhere",
                spec.name
            )));
        }
        let f = Functor { dom, cod, obj, mor };
        check_functor(&f).into_result()?;
        model.add_functor(&spec.name, f);
    }
    for spec in &file.pseudofunctors {
        let p = build_pseudo(&model, spec)?;
        check_pseudofunctor(&p).into_result()?;
        model.add_pseudofunctor(&spec.name, p);
    }
    for d in &file.display_maps {
        lookup(&model.pseudofunctors, d, "pseudofunctor")?;
    }
    model.display_maps = file.display_maps;
    for (ty, p) in &file.types {
        let fam = lookup(&model.pseudofunctors, p, "pseudofunctor")?;
        if fam.base.obj_count() != 1 || fam.base.mor_count() != 1 {
            return Err(ModelError::malformed(format!(
                "type `{ty}` is assigned `{p}`, which is not over the terminal groupoid"
            )));
        }
        model.types.push((ty.clone(), p.clone()));
    }
    Ok(model)
}

fn build_pseudo(model: &Model, spec: &PseudoSpec) -> MResult<PseudoFunctor> {
    let base = lookup(&model.groupoids, &spec.base, "groupoid")?.clone();
    let (bobj, bmor) = name_index(&base);
    let mut fibers = vec![None; base.obj_count()];
    for (o, g) in &spec.fibers {
        fibers[look(&bobj, o, "object")?] = Some(lookup(&model.groupoids, g, "groupoid")?.clone());
    }
    let fibers: Vec<Arc<FinGroupoid>> = fibers
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| ModelError::malformed(format!("`{}` lacks a fiber", spec.name)))?;
    let mut fmap = vec![None; base.mor_count()];
    for (p, f) in &spec.fiber_functors {
        fmap[look(&bmor, p, "morphism")?] = Some(lookup(&model.functors, f, "functor")?.clone());
    }
    let fmap: Vec<Functor> = fmap
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| ModelError::malformed(format!("`{}` lacks a fiber functor", spec.name)))?;
    let mut phi = HashMap::new();
    for e in &spec.phi {
        let (p, q) = (look(&bmor, &e.p, "morphism")?, look(&bmor, &e.q, "morphism")?);
        if base.src(q) != base.tgt(p) {
            return Err(ModelError::malformed(format!(
                "φ given for the non-composable pair ({}, {})",
                e.p, e.q
            )));
        }
        let (sobj, _) = name_index(&fibers[base.src(p)]);
        let (_, cmor) = name_index(&fibers[base.tgt(q)]);
        let mut comps = HashMap::new();
        for (x, m) in &e.components {
            comps.insert(look(&sobj, x, "object")?, look(&cmor, m, "morphism")?);
        }
        phi.insert((p, q), comps);
    }
    let mut psi = HashMap::new();
    for e in &spec.psi {
        let g = look(&bobj, &e.object, "object")?;
        let (fobj, fmor) = name_index(&fibers[g]);
        let mut comps = HashMap::new();
        for (x, m) in &e.components {
            comps.insert(look(&fobj, x, "object")?, look(&fmor, m, "morphism")?);
        }
        psi.insert(g, comps);
    }
    let (b2, fib2, fm2) = (base.clone(), fibers.clone(), fmap.clone());
    let fib3 = fibers.clone();
    PseudoFunctor::new(
        base,
        fibers,
        fmap,
        move |p, q| {
            let cod = &fib2[b2.tgt(q)];
            fib2[b2.src(p)]
                .objects()
                .map(|x| {
                    phi.get(&(p, q))
                        .and_then(|c| c.get(&x).copied())
                        .unwrap_or_else(|| cod.id(fm2[q].obj[fm2[p].obj[x]]))
                })
                .collect()
        },
        move |g| {
            fib3[g]
                .objects()
                .map(|x| {
                    psi.get(&g)
                        .and_then(|c| c.get(&x).copied())
                        .unwrap_or_else(|| fib3[g].id(x))
                })
                .collect()
        },
    )
}

/// Serializes a model. Every groupoid and fiber functor referenced by a
/// pseudofunctor must be registered; identity coherence components are omitted.
pub fn to_json(model: &Model) -> MResult<String> {
    let groupoids = model
        .groupoids
        .iter()
        .map(|(name, g)| GroupoidSpec {
            name: name.clone(),
            objects: g.obj_names.clone(),
            morphisms: g
                .morphisms()
                .map(|m| MorSpec {
                    name: g.mor_name(m).to_string(),
                    src: g.obj_name(g.src(m)).to_string(),
                    tgt: g.obj_name(g.tgt(m)).to_string(),
                })
                .collect(),
            compose: g
                .morphisms()
                .flat_map(|f| {
                    g.morphisms()
                        .filter(move |&h| g.src(h) == g.tgt(f))
                        .map(move |h| {
                            [
                                g.mor_name(h).to_string(),
                                g.mor_name(f).to_string(),
                                g.mor_name(g.comp(h, f)).to_string(),
                            ]
                        })
                })
                .collect(),
            identities: g
                .objects()
                .map(|o| (g.obj_name(o).to_string(), g.mor_name(g.id(o)).to_string()))
                .collect(),
            inverses: g
                .morphisms()
                .map(|m| (g.mor_name(m).to_string(), g.mor_name(g.inv(m)).to_string()))
                .collect(),
        })
        .collect();
    let functors = model
        .functors
        .iter()
        .map(|(name, f)| {
            Ok(FunctorSpec {
                name: name.clone(),
                dom: model.groupoid_name(&f.dom)?.to_string(),
                cod: model.groupoid_name(&f.cod)?.to_string(),
                objects: f
                    .dom
                    .objects()
                    .map(|o| (f.dom.obj_name(o).to_string(), f.cod.obj_name(f.obj[o]).to_string()))
                    .collect(),
                morphisms: f
                    .dom
                    .morphisms()
                    .map(|m| (f.dom.mor_name(m).to_string(), f.cod.mor_name(f.mor[m]).to_string()))
                    .collect(),
            })
        })
        .collect::<MResult<Vec<_>>>()?;
    let pseudofunctors = model
        .pseudofunctors
        .iter()
        .map(|(name, p)| pseudo_spec(model, name, p))
        .collect::<MResult<Vec<_>>>()?;
    let file = ModelFile {
        name: model.name.clone(),
        description: model.description.clone(),
        groupoids,
        functors,
        pseudofunctors,
        display_maps: model.display_maps.clone(),
        types: model.types.iter().cloned().collect(),
    };
    serde_json::to_string_pretty(&file).map_err(|e| ModelError::malformed(e.to_string()))
}

fn pseudo_spec(model: &Model, name: &str, p: &PseudoFunctor) -> MResult<PseudoSpec> {
    let b = &p.base;
    let mut phi = Vec::new();
    for pm in b.morphisms() {
        for q in b.morphisms().filter(|&q| b.src(q) == b.tgt(pm)) {
            let (src, cod) = (p.fiber(b.src(pm)), p.fiber(b.tgt(q)));
            let components: BTreeMap<String, String> = src
                .objects()
                .filter(|&x| !cod.is_identity(p.phi(pm, q, x)))
                .map(|x| (src.obj_name(x).to_string(), cod.mor_name(p.phi(pm, q, x)).to_string()))
                .collect();
            if !components.is_empty() {
                phi.push(PhiSpec {
                    p: b.mor_name(pm).to_string(),
                    q: b.mor_name(q).to_string(),
                    components,
                });
            }
        }
    }
    let mut psi = Vec::new();
    for g in b.objects() {
        let f = p.fiber(g);
        let components: BTreeMap<String, String> = f
            .objects()
            .filter(|&x| !f.is_identity(p.psi(g, x)))
            .map(|x| (f.obj_name(x).to_string(), f.mor_name(p.psi(g, x)).to_string()))
            .collect();
        if !components.is_empty() {
            psi.push(PsiSpec {
                object: b.obj_name(g).to_string(),
                components,
            });
        }
    }
    Ok(PseudoSpec {
        name: name.to_string(),
        base: model.groupoid_name(b)?.to_string(),
        fibers: b
            .objects()
            .map(|g| Ok((b.obj_name(g).to_string(), model.groupoid_name(p.fiber(g))?.to_string())))
            .collect::<MResult<_>>()?,
        fiber_functors: b
            .morphisms()
            .map(|m| Ok((b.mor_name(m).to_string(), model.functor_name(&p.fmap[m])?.to_string())))
            .collect::<MResult<_>>()?,
        phi,
        psi,
    })
}
