use std::sync::Arc;

use att_model::enumerate::{sections, vertical_natisos};
use att_model::grothendieck::{
    check_section, reindex_display, total_groupoid, total_groupoid_unchecked, DisplayMap,
};
use att_model::groupoid::{FinGroupoid, Functor, NatIso};
use att_model::id_former::{
    build_id, check_arrow_object, check_discreteness, check_elimination, check_id_structure,
    check_normal_collapse, check_stability, swap_family, Elimination, IdStructure,
};
use att_model::pseudo::{check_pseudofunctor, PseudoFunctor};
use att_model::shipped;

fn display(model: &att_model::format::Model, name: &str) -> DisplayMap {
    total_groupoid(model.pseudofunctor(name).unwrap().clone()).unwrap()
}

fn ids_of(model: &att_model::format::Model, name: &str) -> IdStructure {
    build_id(&display(model, name)).unwrap()
}

fn constant_two(base: &Arc<FinGroupoid>) -> Arc<PseudoFunctor> {
    Arc::new(PseudoFunctor::constant(
        base.clone(),
        Arc::new(FinGroupoid::discrete(&["0".into(), "1".into()])),
    ))
}

fn elims(ids: &IdStructure, motive: Arc<PseudoFunctor>, name: &str) -> Vec<Elimination> {
    let dc = total_groupoid_unchecked(motive.clone());
    let dcr = reindex_display(&dc, &ids.r).unwrap();
    sections(&dcr, 1000)
        .unwrap()
        .into_iter()
        .map(|section| Elimination {
            name: name.into(),
            motive: motive.clone(),
            section,
        })
        .collect()
}

#[test]
fn group_fiber_gives_discrete_hom_fiber_of_two_points() {
    let s = ids_of(&shipped::strict(), "B0");
    let tri_obj = s.tri.obj(s.base.obj(0, 0), 0);
    let fiber = s.id.fam.fiber(tri_obj);
    assert_eq!(fiber.obj_count(), 2);
    assert!(fiber.is_discrete());
    assert!(check_pseudofunctor(&s.id.fam).ok());
    assert!(s.id.fam.is_strict());
}

#[test]
fn discrete_fiber_gives_singleton_hom_fiber_on_the_diagonal() {
    let s = ids_of(&shipped::strict(), "A0");
    for x in 0..2 {
        let diag = s.tri.obj(s.base.obj(0, x), x);
        assert_eq!(s.id.fam.fiber(diag).obj_count(), 1);
        let off = s.tri.obj(s.base.obj(0, x), 1 - x);
        assert_eq!(s.id.fam.fiber(off).obj_count(), 0);
    }
}

#[test]
fn arrow_component_at_a_reflexive_proof_is_the_unit() {
    let s = ids_of(&shipped::nonnormal(), "N");
    let e = s.r.obj[0];
    let po = s.proof_object(e);
    assert_eq!((po.ctx, po.left, po.right, po.path), (0, 0, 0, 0));
    let comp = s.alpha.comp[e];
    assert_eq!(s.base.split_mor(comp), (0, 0, s.base.fam.psi(0, 0)));
    assert_eq!(comp, s.base.total.id(0));
    assert_ne!(s.base.split_mor(comp), (0, 0, 0));
    for e in s.proofs().objects() {
        let po = s.proof_object(e);
        let fib = s.base.fam.fiber(po.ctx);
        let want = s.base.mor(
            s.base.base().id(po.ctx),
            po.left,
            fib.comp(po.path, s.base.fam.psi(po.ctx, po.left)),
        );
        assert_eq!(s.alpha.comp[e], want);
    }
}

#[test]
fn factoring_an_identity_cell_picks_the_identity_path() {
    let s = ids_of(&shipped::nonnormal(), "N");
    let a = sections(&s.base, 10).unwrap().remove(0);
    let p = NatIso::identity(&a);
    let u = s.factor(&a, &a, &p).unwrap();
    let po = s.proof_object(u.obj[0]);
    let fib = s.base.fam.fiber(0);
    assert_eq!(po.path, fib.id(0));
    assert_eq!(s.alpha.pre(&u), p);
}

#[test]
fn factorization_recovers_every_cell_uniquely() {
    for m in shipped::all() {
        for name in &m.display_maps {
            let s = ids_of(&m, name);
            let secs = sections(&s.base, 64).unwrap();
            for a in &secs {
                for b in &secs {
                    for p in vertical_natisos(&s.base, a, b, 64).unwrap() {
                        let u = s.factor(a, b, &p).unwrap();
                        assert_eq!(s.alpha.pre(&u), p);
                        let (d, sec) = s.factor_section(a, b, &p).unwrap();
                        assert!(check_section(&d, &sec).ok());
                    }
                }
            }
        }
    }
}

#[test]
fn reflexivity_acts_on_objects_by_identity_paths() {
    for m in shipped::all() {
        for name in &m.display_maps {
            let s = ids_of(&m, name);
            for k in s.ctx_total().objects() {
                let (g, x) = s.base.split_obj(k);
                let po = s.proof_object(s.r.obj[k]);
                assert_eq!((po.ctx, po.left, po.right), (g, x, x));
                assert_eq!(po.path, s.base.fam.fiber(g).id(x));
            }
            let r = check_id_structure(&s);
            assert!(r.ok(), "{r}");
        }
    }
}

#[test]
fn strict_reflexivity_acts_on_morphisms_diagonally() {
    let s = ids_of(&shipped::strict(), "A");
    for m in s.ctx_total().morphisms() {
        let (p1, x, p2) = s.base.split_mor(m);
        let n = s.r.mor[m];
        let (tm, _, _) = s.id.split_mor(n);
        let (m1, y, p3) = s.tri.split_mor(tm);
        assert_eq!(s.base.split_mor(m1), (p1, x, p2));
        assert_eq!(y, x);
        assert_eq!(p3, p2);
    }
}

#[test]
fn phi_components_follow_the_closed_formula() {
    for m in shipped::all() {
        for name in &m.display_maps {
            let s = ids_of(&m, name);
            let a = &s.base.fam;
            for e in s.proofs().objects() {
                let po = s.proof_object(e);
                let fib = a.fiber(po.ctx);
                let one = s.base.base().id(po.ctx);
                let (tm, _, _) = s.id.split_mor(s.phi.comp[e]);
                let (m1, y, p3) = s.tri.split_mor(tm);
                assert_eq!(
                    s.base.split_mor(m1),
                    (one, po.left, fib.comp(po.path, a.psi(po.ctx, po.left)))
                );
                assert_eq!(y, po.right);
                assert_eq!(p3, a.psi(po.ctx, po.right));
            }
        }
    }
}

#[test]
fn strict_phi_at_reflexive_proofs_is_an_identity() {
    let s = ids_of(&shipped::strict(), "A");
    for k in s.ctx_total().objects() {
        let e = s.r.obj[k];
        assert!(s.proofs().is_identity(s.phi.comp[e]));
    }
}

#[test]
fn strict_motives_collapse_and_swap_motives_do_not() {
    let s = ids_of(&shipped::strict(), "A");
    for e in elims(&s, constant_two(s.proofs()), "constant") {
        let r = check_normal_collapse(&s, &e).unwrap();
        assert!(r.ok(), "{r}");
    }
    let swap = Arc::new(swap_family(s.proofs()));
    for e in elims(&s, swap, "swap") {
        let r = check_elimination(&s, &e).unwrap();
        assert!(r.ok(), "{r}");
        let je = s.j_elim(e.motive.clone(), &e.section).unwrap();
        for k in s.ctx_total().objects() {
            let (_, x) = je.motive_r.split_obj(je.j_r.obj[k]);
            let (_, y) = je.motive_r.split_obj(je.c.obj[k]);
            assert_eq!(x, 1 - y);
        }
        assert!(!check_normal_collapse(&s, &e).unwrap().ok());
    }
}

#[test]
fn eliminators_are_sections_on_every_model() {
    for m in shipped::all() {
        for name in &m.display_maps {
            let s = ids_of(&m, name);
            for e in elims(&s, constant_two(s.proofs()), "constant")
                .into_iter()
                .chain(elims(&s, Arc::new(swap_family(s.proofs())), "swap"))
                .take(6)
            {
                let je = s.j_elim(e.motive.clone(), &e.section).unwrap();
                assert!(je.motive.proj.after(&je.j).is_identity());
                let r = check_elimination(&s, &e).unwrap();
                assert!(r.ok(), "{r}");
            }
        }
    }
}

#[test]
fn stability_under_reindexing_along_points() {
    let m = shipped::twisted();
    let s = ids_of(&m, "T");
    let one = Arc::new(FinGroupoid::terminal());
    let es: Vec<Elimination> = elims(&s, Arc::new(swap_family(s.proofs())), "swap")
        .into_iter()
        .take(2)
        .collect();
    for x in 0..1 {
        let f = Functor::constant(&one, s.base.base(), x);
        let r = check_stability(&s, &f, &es).unwrap();
        assert!(r.ok(), "{r}");
    }
}

#[test]
fn arrow_object_counts_match_and_a_corrupted_alpha_fails() {
    let strict = ids_of(&shipped::strict(), "A");
    let r = check_arrow_object(&strict, &strict.base.proj, 4096).unwrap();
    assert!(r.ok(), "{r}");
    let mut s = ids_of(&shipped::nonnormal(), "N");
    let h = Functor::identity(s.base.base());
    let r = check_arrow_object(&s, &h, 4096).unwrap();
    assert!(r.ok(), "{r}");
    assert!(r.instances > 2);
    let ga = s.ctx_total().clone();
    let k = s.alpha.comp[0];
    s.alpha.comp[0] = ga
        .hom(ga.src(k), ga.tgt(k))
        .iter()
        .copied()
        .find(|&n| n != k)
        .unwrap();
    let r = check_arrow_object(&s, &h, 4096).unwrap();
    assert!(!r.ok());
}

#[test]
fn arrow_object_on_a_trivial_base() {
    let s = ids_of(&shipped::counterexample(), "A");
    let r = check_arrow_object(&s, &Functor::identity(s.base.base()), 64).unwrap();
    assert!(r.ok(), "{r}");
    assert_eq!(s.proofs().mor_count(), 1);
}

#[test]
fn identity_display_maps_are_discrete() {
    for m in shipped::all() {
        for name in &m.display_maps {
            let s = ids_of(&m, name);
            let r = check_discreteness(&s.id, 4096).unwrap();
            assert!(r.ok(), "{r}");
        }
    }
}

#[test]
fn a_group_fiber_posing_as_identity_proofs_is_not_discrete() {
    let z = Arc::new(FinGroupoid::group("*", &["e", "s"], |a, b| a ^ b));
    let fake = total_groupoid(Arc::new(PseudoFunctor::constant(
        Arc::new(FinGroupoid::terminal()),
        z,
    )))
    .unwrap();
    let r = check_discreteness(&fake, 64).unwrap();
    assert!(!r.ok());
}

#[test]
fn counterexample_computation_fails_while_the_axiom_holds() {
    let c = att_model::verify::comp_rule_counterexample(&shipped::counterexample()).unwrap();
    assert!(!c.functor_eq);
    assert!(c.h_section.ok(), "{}", c.h_section);
    assert_eq!(c.rows.len(), 1);
    assert!(c.rows[0].j_r.ends_with(",b)"));
    assert!(c.rows[0].c.ends_with(",a)"));
    let b = shipped::counterexample();
    assert!(check_pseudofunctor(b.pseudofunctor("B").unwrap()).ok());
}
