use std::sync::Arc;

use att_model::enumerate::{functors, natisos};
use att_model::groupoid::{check_functor, check_groupoid, check_nat_iso, FinGroupoid, Functor, NatIso};
use proptest::prelude::*;

fn z2() -> FinGroupoid {
    FinGroupoid::group("*", &["e", "s"], |a, b| a ^ b)
}

/// The symmetric group on three letters, as permutations in one-line notation.
fn s3() -> FinGroupoid {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let names: Vec<String> = perms
        .iter()
        .map(|p| format!("{}{}{}", p[0], p[1], p[2]))
        .collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let find = |q: [usize; 3]| perms.iter().position(|p| *p == q).unwrap();
    let mul = |a: usize, b: usize| {
        let (g, f) = (perms[a], perms[b]);
        find([g[f[0]], g[f[1]], g[f[2]]])
    };
    FinGroupoid::group("*", &refs, mul)
}

#[test]
fn z2_satisfies_every_law() {
    let r = check_groupoid(&z2());
    assert!(r.ok(), "{r}");
    assert!(r.instances > 0);
}

#[test]
fn idempotent_generator_breaks_the_inverse_law() {
    let g = FinGroupoid::from_tables(
        vec!["*".into()],
        vec![("e".into(), 0, 0), ("s".into(), 0, 0)],
        |g, f| Some(if g == 0 { f } else if f == 0 { g } else { 1 }),
        vec![0],
        vec![0, 1],
    )
    .unwrap();
    let r = check_groupoid(&g);
    assert!(!r.ok());
    let msgs: Vec<String> = r.violations.iter().map(|v| v.to_string()).collect();
    assert!(msgs.contains(&"groupoid: inverse law violated at s".to_string()), "{msgs:?}");
}

#[test]
fn codiscrete_on_two_objects_satisfies_every_law() {
    let g = FinGroupoid::codiscrete(&["a", "b"]);
    assert_eq!(g.mor_count(), 4);
    assert!(check_groupoid(&g).ok());
}

#[test]
fn identity_functor_and_identity_cell_pass() {
    let g = Arc::new(s3());
    let f = Functor::identity(&g);
    assert!(check_functor(&f).ok());
    assert!(check_nat_iso(&NatIso::identity(&f)).ok());
}

#[test]
fn non_central_component_breaks_naturality() {
    let g = Arc::new(s3());
    let f = Functor::identity(&g);
    let mut cell = NatIso::identity(&f);
    for m in g.morphisms().filter(|&m| !g.is_identity(m)) {
        cell.comp = vec![m];
        let r = check_nat_iso(&cell);
        assert!(!r.ok(), "S3 has trivial center, so {} is not natural", g.mor_name(m));
    }
}

#[test]
fn natural_isomorphisms_of_identity_on_s3_are_the_center() {
    let g = Arc::new(s3());
    let f = Functor::identity(&g);
    assert_eq!(natisos(&f, &f, 100).unwrap().len(), 1);
    let z = Arc::new(z2());
    let fz = Functor::identity(&z);
    assert_eq!(natisos(&fz, &fz, 100).unwrap().len(), 2);
}

#[test]
fn automorphisms_of_s3_number_six() {
    let g = Arc::new(s3());
    let autos: Vec<Functor> = functors(&g, &g, 1000)
        .unwrap()
        .into_iter()
        .filter(|f| {
            let mut seen = f.mor.clone();
            seen.sort_unstable();
            seen.dedup();
            seen.len() == g.mor_count()
        })
        .collect();
    assert_eq!(autos.len(), 6);
    assert!(autos.iter().all(|f| check_functor(f).ok()));
}

fn small(ix: usize) -> Arc<FinGroupoid> {
    match ix % 5 {
        0 => Arc::new(FinGroupoid::terminal()),
        1 => Arc::new(z2()),
        2 => Arc::new(FinGroupoid::codiscrete(&["a", "b"])),
        3 => Arc::new(FinGroupoid::discrete(&["0".into(), "1".into()])),
        _ => Arc::new(s3()),
    }
}

proptest! {
    #[test]
    fn cyclic_groups_satisfy_the_laws(k in 1usize..8) {
        prop_assert!(check_groupoid(&FinGroupoid::cyclic(k)).ok());
    }

    #[test]
    fn codiscrete_groupoids_satisfy_the_laws(n in 1usize..5) {
        let names: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        prop_assert!(check_groupoid(&FinGroupoid::codiscrete(&refs)).ok());
    }

    #[test]
    fn enumerated_functors_compose_associatively(
        a in 0usize..5, b in 0usize..5, c in 0usize..5, d in 0usize..5,
        i in any::<usize>(), j in any::<usize>(), k in any::<usize>()
    ) {
        let (ga, gb, gc, gd) = (small(a), small(b), small(c), small(d));
        let fs = functors(&ga, &gb, 10_000).unwrap();
        let gs = functors(&gb, &gc, 10_000).unwrap();
        let hs = functors(&gc, &gd, 10_000).unwrap();
        let (f, g, h) = (&fs[i % fs.len()], &gs[j % gs.len()], &hs[k % hs.len()]);
        prop_assert!(check_functor(f).ok());
        prop_assert!(check_functor(&g.after(f)).ok());
        prop_assert_eq!(h.after(g).after(f), h.after(&g.after(f)));
        prop_assert_eq!(Functor::identity(&gb).after(f), f.clone());
    }

    #[test]
    fn interchange_law(
        a in 0usize..5, b in 0usize..5, c in 0usize..5,
        i in any::<usize>(), j in any::<usize>(), k in any::<usize>(), l in any::<usize>()
    ) {
        let (ga, gb, gc) = (small(a), small(b), small(c));
        let fs = functors(&ga, &gb, 10_000).unwrap();
        let hs = functors(&gb, &gc, 10_000).unwrap();
        let (f, g) = (&fs[i % fs.len()], &fs[j % fs.len()]);
        let (h, kk) = (&hs[k % hs.len()], &hs[l % hs.len()]);
        let thetas = natisos(f, g, 10_000).unwrap();
        let etas = natisos(h, kk, 10_000).unwrap();
        for theta in thetas.iter().take(4) {
            prop_assert!(check_nat_iso(theta).ok());
            for eta in etas.iter().take(4) {
                let lhs = theta.post(h).then(&eta.pre(g));
                let rhs = eta.pre(f).then(&theta.post(kk));
                prop_assert_eq!(&lhs, &rhs);
                prop_assert!(check_nat_iso(&lhs).ok());
                prop_assert_eq!(theta.then(&theta.inverse()), NatIso::identity(f));
            }
        }
    }
}
