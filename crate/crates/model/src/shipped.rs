//! The models shipped with the repository, built programmatically. The JSON
//! files under `models/` are serializations of these builders.

use std::sync::Arc;

use crate::format::Model;
use crate::groupoid::{FinGroupoid, Functor};
use crate::id_former::swap_family;
use crate::pseudo::{reindex, PseudoFunctor};

fn z2() -> FinGroupoid {
    FinGroupoid::group("*", &["e", "s"], |a, b| a ^ b)
}

fn swap(g: &Arc<FinGroupoid>) -> Functor {
    let n = g.obj_count();
    Functor {
        dom: g.clone(),
        cod: g.clone(),
        obj: (0..n).map(|x| n - 1 - x).collect(),
        mor: g
            .morphisms()
            .map(|m| g.hom(n - 1 - g.src(m), n - 1 - g.tgt(m))[0])
            .collect(),
    }
}

/// Strict families: a two-point fiber over `Z2` swapped by the generator,
/// and closed types with a discrete and a group fiber.
pub fn strict() -> Model {
    let mut m = Model {
        name: "strict".into(),
        description: "Strict pseudofunctors: every coherence component is an identity.".into(),
        ..Model::default()
    };
    let one = m.add_groupoid("1", FinGroupoid::terminal());
    let z = m.add_groupoid("Z2", z2());
    let d2 = m.add_groupoid("D2", FinGroupoid::discrete(&["0".into(), "1".into()]));
    let idd = m.add_functor("id_D2", Functor::identity(&d2));
    let sw = m.add_functor("swap_D2", swap(&d2));
    let idz = m.add_functor("id_Z2", Functor::identity(&z));
    let a = PseudoFunctor::strict(z.clone(), vec![d2.clone()], vec![idd.clone(), sw])
        .expect("strict data is well shaped");
    m.add_pseudofunctor("A", a);
    let a0 = PseudoFunctor::strict(one.clone(), vec![d2], vec![idd]).expect("well shaped");
    m.add_pseudofunctor("A0", a0);
    let b0 = PseudoFunctor::strict(one, vec![z], vec![idz]).expect("well shaped");
    m.add_pseudofunctor("B0", b0);
    m.display_maps = vec!["A".into(), "A0".into(), "B0".into()];
    m.types = vec![("A".into(), "A0".into()), ("B".into(), "B0".into())];
    m
}

/// The non-normal family `N` over the terminal groupoid: fiber `Z2`,
/// `N_1` the identity functor, and `ψ`, `φ_{1,1}` both the generator.
pub fn nonnormal_family(one: &Arc<FinGroupoid>, z: &Arc<FinGroupoid>) -> PseudoFunctor {
    PseudoFunctor::new(
        one.clone(),
        vec![z.clone()],
        vec![Functor::identity(z)],
        |_, _| vec![1],
        |_| vec![1],
    )
    .expect("well shaped")
}

pub fn nonnormal() -> Model {
    let mut m = Model {
        name: "nonnormal".into(),
        description: "A pseudofunctor whose unit ψ is not an identity: the cloven \
                      structure is not normal."
            .into(),
        ..Model::default()
    };
    let one = m.add_groupoid("1", FinGroupoid::terminal());
    let z = m.add_groupoid("Z2", z2());
    m.add_functor("id_Z2", Functor::identity(&z));
    m.add_pseudofunctor("N", nonnormal_family(&one, &z));
    m.display_maps = vec!["N".into()];
    m.types = vec![("A".into(), "N".into())];
    m
}

/// A coboundary twist of the constant family at `Z2` over `Z2`: with
/// `θ_e = s` and `θ_s = e`, `φ_{p,q} = θ_p θ_q θ_{qp}` and `ψ = θ_e`.
pub fn twisted() -> Model {
    let mut m = Model {
        name: "twisted".into(),
        description: "A non-normal family over a nontrivial base, twisted by a coboundary."
            .into(),
        ..Model::default()
    };
    let one = m.add_groupoid("1", FinGroupoid::terminal());
    let z = m.add_groupoid("Z2", z2());
    let idz = m.add_functor("id_Z2", Functor::identity(&z));
    let theta = |p: usize| 1 - p;
    let t = PseudoFunctor::new(
        z.clone(),
        vec![z.clone()],
        vec![idz.clone(), idz],
        move |p, q| vec![theta(p) ^ theta(q) ^ theta(p ^ q)],
        move |_| vec![theta(0)],
    )
    .expect("well shaped");
    let point = Functor::constant(&one, &z, 0);
    let t0 = reindex(&t, &point).expect("the point lands in the base");
    m.add_pseudofunctor("T", t);
    m.add_pseudofunctor("T0", t0);
    m.display_maps = vec!["T".into(), "T0".into()];
    m.types = vec![("A".into(), "T0".into())];
    m
}

/// The model refuting the computation rule: a one-point type `A` and a
/// type `B` whose fiber functor swaps the two points of a codiscrete fiber.
pub fn counterexample() -> Model {
    let mut m = Model {
        name: "counterexample".into(),
        description: "A strict one-point type and a codiscrete two-point type whose \
                      identity fiber functor is a swap."
            .into(),
        ..Model::default()
    };
    let one = m.add_groupoid("1", FinGroupoid::terminal());
    let c2 = m.add_groupoid("C2", FinGroupoid::codiscrete(&["a", "b"]));
    let id1 = m.add_functor("id_1", Functor::identity(&one));
    m.add_functor("swap_C2", swap(&c2));
    let a = PseudoFunctor::strict(one.clone(), vec![one.clone()], vec![id1]).expect("well shaped");
    m.add_pseudofunctor("A", a);
    m.add_pseudofunctor("B", swap_family(&one));
    m.display_maps = vec!["A".into(), "B".into()];
    m.types = vec![("A".into(), "A".into()), ("B".into(), "B".into())];
    m
}

/// All shipped models, in file order.
pub fn all() -> Vec<Model> {
    vec![strict(), nonnormal(), twisted(), counterexample()]
}
