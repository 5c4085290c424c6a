use std::sync::Arc;

use att_model::enumerate::{cells_into, functors, sections};
use att_model::grothendieck::{
    check_cleavage, check_pullback, check_transport, check_transport_stability, cloven_transport,
    reindex_display, total_groupoid, total_groupoid_unchecked, upper_functor, Square,
};
use att_model::groupoid::{check_groupoid, FinGroupoid, Functor, NatIso};
use att_model::id_former::swap_family;
use att_model::pseudo::{check_pseudofunctor, reindex, PseudoFunctor};
use att_model::shipped;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn z2() -> Arc<FinGroupoid> {
    Arc::new(FinGroupoid::group("*", &["e", "s"], |a, b| a ^ b))
}

fn one() -> Arc<FinGroupoid> {
    Arc::new(FinGroupoid::terminal())
}

fn n_family() -> PseudoFunctor {
    shipped::nonnormal_family(&one(), &z2())
}

fn violated_laws(p: &PseudoFunctor) -> Vec<String> {
    check_pseudofunctor(p)
        .violations
        .into_iter()
        .map(|v| v.law)
        .collect()
}

#[test]
fn nonnormal_family_is_coherent() {
    let r = check_pseudofunctor(&n_family());
    assert!(r.ok(), "{r}");
    assert!(!n_family().is_strict());
}

#[test]
fn identity_composition_cell_breaks_the_unit_law() {
    let bad = n_family().with_phi_component(0, 0, 0, 0);
    let laws = violated_laws(&bad);
    assert!(laws.iter().any(|l| l.contains("unit coherence")), "{laws:?}");
}

#[test]
fn twisted_family_is_coherent_and_mutations_are_caught() {
    let m = shipped::twisted();
    let t = m.pseudofunctor("T").unwrap();
    assert!(check_pseudofunctor(t).ok());
    let bad = (**t).clone().with_phi_component(0, 1, 0, 0);
    assert!(!check_pseudofunctor(&bad).ok());
    let other_cocycle = (**t).clone().with_phi_component(1, 1, 0, 0);
    assert!(check_pseudofunctor(&other_cocycle).ok());
    assert_ne!(&other_cocycle, &**t);
    let bad = (**t).clone().with_psi_component(0, 0, 0);
    assert!(!violated_laws(&bad).is_empty());
}

#[test]
fn swap_family_is_coherent_over_any_small_base() {
    for base in [one(), z2(), Arc::new(FinGroupoid::codiscrete(&["a", "b", "c"]))] {
        let r = check_pseudofunctor(&swap_family(&base));
        assert!(r.ok(), "{r}");
    }
}

#[test]
fn strict_constant_total_groupoid_is_the_group() {
    let z = z2();
    let d = total_groupoid(Arc::new(PseudoFunctor::constant(one(), z.clone()))).unwrap();
    assert_eq!(d.total.obj_count(), 1);
    assert_eq!(d.total.mor_count(), 2);
    for a in z.morphisms() {
        for b in z.morphisms() {
            let (ma, mb) = (d.mor(0, 0, a), d.mor(0, 0, b));
            assert_eq!(d.total.comp(ma, mb), d.mor(0, 0, z.comp(a, b)));
        }
    }
}

#[test]
fn nonnormal_identity_is_the_generator() {
    let d = total_groupoid(Arc::new(n_family())).unwrap();
    let ident = d.total.id(d.obj(0, 0));
    assert_eq!(d.split_mor(ident), (0, 0, 1));
    assert!(check_groupoid(&d.total).ok());
}

#[test]
fn reindexing_n_along_a_discrete_base_gives_two_nonnormal_fibers() {
    let d2 = Arc::new(FinGroupoid::discrete(&["0".into(), "1".into()]));
    let bang = Functor::to_terminal(&d2, &one());
    let n2 = reindex(&n_family(), &bang).unwrap();
    assert_eq!(n2.fibers.len(), 2);
    for g in d2.objects() {
        assert_eq!(n2.fiber(g).mor_count(), 2);
        assert_eq!(n2.psi_components(g), &[1]);
        assert_eq!(n2.phi_components(g, g), &[1]);
    }
    assert!(check_pseudofunctor(&n2).ok());
    let d = total_groupoid(Arc::new(n2)).unwrap();
    assert_eq!(d.total.obj_count(), 2);
    assert!(d.total.hom(0, 1).is_empty());
}

#[test]
fn reindexing_along_identity_and_composites_is_split() {
    for m in shipped::all() {
        for (_, p) in &m.pseudofunctors {
            assert_eq!(reindex(p, &Functor::identity(&p.base)).unwrap(), **p);
            let small = [one(), z2(), Arc::new(FinGroupoid::codiscrete(&["a", "b"]))];
            for dom in &small {
                for f in functors(dom, &p.base, 1000).unwrap() {
                    for dom2 in &small {
                        for g in functors(dom2, dom, 1000).unwrap() {
                            let lhs = reindex(&reindex(p, &f).unwrap(), &g).unwrap();
                            assert_eq!(lhs, reindex(p, &f.after(&g)).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn upper_functor_of_identity_is_identity() {
    let m = shipped::strict();
    let a = m.pseudofunctor("A").unwrap().clone();
    let d = total_groupoid(a).unwrap();
    let id = Functor::identity(d.base());
    let df = reindex_display(&d, &id).unwrap();
    assert!(upper_functor(&d, &id, &df).is_identity());
}

#[test]
fn reindexing_squares_are_pullbacks_and_a_collapsing_square_is_not() {
    let m = shipped::strict();
    let a = m.pseudofunctor("A").unwrap().clone();
    let d = total_groupoid(a).unwrap();
    let c2 = Arc::new(FinGroupoid::codiscrete(&["a", "b"]));
    for f in functors(&c2, d.base(), 100).unwrap() {
        let df = reindex_display(&d, &f).unwrap();
        let fa = upper_functor(&d, &f, &df);
        let sq = Square {
            top: &fa,
            left: &df.proj,
            right: &d.proj,
            bot: &f,
        };
        let r = check_pullback(&sq, &[]);
        assert!(r.ok(), "{r}");
        let expected: usize = c2.objects().map(|x| d.fam.fiber(f.obj[x]).obj_count()).sum();
        assert_eq!(df.total.obj_count(), expected);
    }
    let swap = m.functor("swap_D2").unwrap();
    let fiber_total = {
        let a0 = m.pseudofunctor("A0").unwrap().clone();
        total_groupoid(a0).unwrap()
    };
    let up = Functor {
        dom: fiber_total.total.clone(),
        cod: fiber_total.total.clone(),
        obj: swap.obj.clone(),
        mor: swap.mor.clone(),
    };
    let id1 = Functor::identity(fiber_total.base());
    let squashed = Functor::to_terminal(&fiber_total.total, fiber_total.base());
    let twisted = up.after(&Functor::identity(&fiber_total.total));
    let good = check_pullback(
        &Square {
            top: &twisted,
            left: &squashed,
            right: &fiber_total.proj,
            bot: &id1,
        },
        &[],
    );
    assert!(good.ok(), "an automorphism square over the identity is still a pullback");
    let not_injective = Functor::constant(&fiber_total.total, &fiber_total.total, 0);
    let bad = check_pullback(
        &Square {
            top: &not_injective,
            left: &fiber_total.proj,
            right: &fiber_total.proj,
            bot: &id1,
        },
        &[],
    );
    assert!(!bad.ok());
}

#[test]
fn strict_transport_along_identity_is_trivial() {
    let m = shipped::strict();
    let a = m.pseudofunctor("A").unwrap().clone();
    let d = total_groupoid(a).unwrap();
    for g in sections(&d, 100).unwrap() {
        let pi = NatIso::identity(&d.proj.after(&g));
        let (t, tau) = cloven_transport(&d, &g, &pi).unwrap();
        assert_eq!(t, g);
        assert!(tau.is_identity());
    }
}

#[test]
fn nonnormal_transport_along_identity_moves() {
    let d = total_groupoid(Arc::new(n_family())).unwrap();
    let g = sections(&d, 10).unwrap().remove(0);
    let pi = NatIso::identity(&d.proj.after(&g));
    let (t, tau) = cloven_transport(&d, &g, &pi).unwrap();
    assert_eq!(d.proj.after(&t), pi.source);
    let ident = d.total.id(g.obj[0]);
    assert_eq!(d.split_mor(tau.comp[0]), (0, 0, 0));
    assert_ne!(tau.comp[0], ident);
    assert!(!tau.is_identity());
}

#[test]
fn transport_stability_fails_for_an_incoherent_family() {
    let bad = Arc::new(
        shipped::twisted()
            .pseudofunctor("T")
            .unwrap()
            .as_ref()
            .clone()
            .with_phi_component(0, 1, 0, 0),
    );
    let d = total_groupoid_unchecked(bad);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = 0;
    let c2 = Arc::new(FinGroupoid::codiscrete(&["a", "b"]));
    for f in functors(&c2, d.base(), 100).unwrap() {
        let df = reindex_display(&d, &f).unwrap();
        for g in functors(&c2, &df.total, 100).unwrap() {
            for pi in cells_into(&df.proj.after(&g), 16, &mut rng) {
                if !check_transport_stability(&d, &f, &df, &g, &pi).ok()
                    || !check_transport(&df, &g, &pi).ok()
                {
                    failures += 1;
                }
            }
        }
    }
    assert!(failures > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transport_and_cleavage_hold_on_shipped_families(
        model in 0usize..4, pick in any::<usize>(), cell in any::<u64>(), h in any::<usize>()
    ) {
        let m = &shipped::all()[model];
        let p = m.pseudofunctors[pick % m.pseudofunctors.len()].1.clone();
        let d = total_groupoid(p).unwrap();
        let c2 = Arc::new(FinGroupoid::codiscrete(&["a", "b"]));
        let gs = functors(&c2, &d.total, 1000).unwrap();
        let g = &gs[pick % gs.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(cell);
        let pi = cells_into(&d.proj.after(g), 1, &mut rng).remove(0);
        prop_assert!(check_transport(&d, g, &pi).ok());
        let z = z2();
        let hs = functors(&z, &c2, 100).unwrap();
        prop_assert!(check_cleavage(&d, g, &pi, &hs[h % hs.len()]).ok());
    }
}
