use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use wreathcat::disks::{disk_hom, enumerate_disks, validate_disk, validate_disk_morphism};
use wreathcat::duality::verify_bj_duality;
use wreathcat::fincat::{pullback, validate_category, Functor};
use wreathcat::interchange::{category_to_string, document, read_category};
use wreathcat::sieves::{
    ambient_site, delta_part, enumerate_sieves, family_to_sieve, induce_crossed_sieve, sieve_to_family,
    window_stable, DownFamily,
};
use wreathcat::sites::{
    binomial, degeneracy, delta_compose, delta_hom, face, gamma_compose, gamma_hom,
    interval_duality, lambda_compose, lambda_hom, materialize, nabla_hom, p_to_pointed,
    pointed_compose, Ambient, CyclicMorphism, Site, SimplexMorphism,
};
use wreathcat::{Obj, Payload};

fn site() -> impl Strategy<Value = Site> {
    prop_oneof![
        Just(Site::Delta),
        Just(Site::Nabla),
        Just(Site::Gamma),
        Just(Site::Pointed),
        Just(Site::Lambda),
        Just(Site::Z2),
    ]
}

fn pick<T: Clone>(v: &[T], seed: usize) -> T {
    v[seed % v.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn materialized_sites_are_categories(s in site(), rank in 1usize..=3) {
        let c = materialize(s, rank);
        prop_assert!(validate_category(&c).is_empty());
    }

    #[test]
    fn opposite_is_a_strict_involution_on_documents(s in site(), rank in 1usize..=2) {
        let c = materialize(s, rank);
        let doc = category_to_string(&c);
        prop_assert_eq!(category_to_string(&c.opposite().opposite()), doc.clone());
        prop_assert_eq!(category_to_string(&read_category(&doc).unwrap()), doc);
    }

    #[test]
    fn delta_composition_is_associative(
        (a, b, c, d) in (0usize..=3, 0usize..=3, 0usize..=3, 0usize..=3),
        seeds in any::<(usize, usize, usize)>(),
    ) {
        let f = pick(&delta_hom(a, b), seeds.0);
        let g = pick(&delta_hom(b, c), seeds.1);
        let h = pick(&delta_hom(c, d), seeds.2);
        let left = delta_compose(&h, &delta_compose(&g, &f).unwrap()).unwrap();
        let right = delta_compose(&delta_compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn interval_duality_is_contravariant(
        (a, b, c) in (0usize..=3, 0usize..=3, 0usize..=3),
        seeds in any::<(usize, usize)>(),
    ) {
        let f = pick(&delta_hom(a, b), seeds.0);
        let g = pick(&delta_hom(b, c), seeds.1);
        let gf = delta_compose(&g, &f).unwrap();
        let df = interval_duality(&f).payload();
        let dg = interval_duality(&g).payload();
        // D(g∘f) = D(f) ∘ D(g) : [c+1] → [a+1]
        let composite = Site::Nabla.compose(&df, &dg, c + 1, b + 1, a + 1).unwrap();
        prop_assert_eq!(interval_duality(&gf).payload(), composite);
    }

    #[test]
    fn gamma_is_associative_and_p_is_contravariant(
        (a, b, c, d) in (0usize..=3, 0usize..=3, 0usize..=3, 0usize..=3),
        seeds in any::<(usize, usize, usize)>(),
    ) {
        let f = pick(&gamma_hom(a, b), seeds.0);
        let g = pick(&gamma_hom(b, c), seeds.1);
        let h = pick(&gamma_hom(c, d), seeds.2);
        let gf = gamma_compose(&g, &f).unwrap();
        prop_assert_eq!(
            gamma_compose(&h, &gf).unwrap(),
            gamma_compose(&gamma_compose(&h, &g).unwrap(), &f).unwrap()
        );
        let pf = p_to_pointed(&f);
        let pg = p_to_pointed(&g);
        prop_assert_eq!(p_to_pointed(&gf), pointed_compose(&pf, &pg).unwrap());
    }

    #[test]
    fn crossed_factorization_recomposes(
        amb in prop_oneof![Just(Ambient::Lambda), Just(Ambient::Z2)],
        (m, n) in (0usize..=3, 0usize..=3),
        seed in any::<usize>(),
    ) {
        let homs = ambient_site(amb).hom(m, n);
        let f = pick(&homs, seed);
        let fac = amb.factorize(&f, m, n).unwrap();
        let again = amb.compose_ranked(&amb.embed(&fac.phi), &fac.g, m, m, n).unwrap();
        prop_assert_eq!(again, f);
    }

    #[test]
    fn lambda_composition_is_associative(
        (a, b, c, d) in (0usize..=2, 0usize..=2, 0usize..=2, 0usize..=2),
        seeds in any::<(usize, usize, usize)>(),
    ) {
        let f = pick(&lambda_hom(a, b), seeds.0);
        let g = pick(&lambda_hom(b, c), seeds.1);
        let h = pick(&lambda_hom(c, d), seeds.2);
        let left = lambda_compose(&h, &lambda_compose(&g, &f).unwrap()).unwrap();
        let right = lambda_compose(&lambda_compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn families_round_trip_through_sieves(n in 0usize..=2, mask in any::<u8>()) {
        // a random family of generators, closed downwards
        let subsets: Vec<Vec<usize>> = (1u32..1 << (n + 1))
            .map(|s| (0..=n).filter(|i| s >> i & 1 == 1).collect())
            .collect();
        let gens: Vec<&Vec<usize>> =
            subsets.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| s).collect();
        let closed: BTreeSet<Vec<usize>> = subsets
            .iter()
            .filter(|s| gens.iter().any(|g| s.iter().all(|v| g.contains(v))))
            .cloned()
            .collect();
        let fam = DownFamily::new(n, closed).unwrap();
        let s = family_to_sieve(&fam, n + 1).unwrap();
        prop_assert!(s.is_sieve());
        prop_assert_eq!(sieve_to_family(&s).unwrap(), fam);
    }
}

#[test]
fn hom_counts_match_closed_forms() {
    for n in 0..=6usize {
        for m in 0..=6usize {
            let d = binomial((n + m + 1) as u64, (n + 1) as u64) as usize;
            assert_eq!(delta_hom(n, m).len(), d);
            if n <= 5 && m <= 5 {
                assert_eq!(nabla_hom(m + 1, n + 1).len(), d);
            }
            if n <= 4 && m <= 4 {
                // rotations of the source times monotone maps
                assert_eq!(lambda_hom(m, n).len(), (m + 1) * binomial((n + m + 1) as u64, (m + 1) as u64) as usize);
            }
        }
    }
}

fn cyc(f: &SimplexMorphism) -> CyclicMorphism {
    CyclicMorphism::from_delta(f)
}

fn lc(g: &CyclicMorphism, f: &CyclicMorphism) -> CyclicMorphism {
    lambda_compose(g, f).unwrap()
}

/// `t` is the rotation `l ↦ l − 1` of `⟨n⟩`.
#[test]
fn lambda_presentation_relations() {
    let t = CyclicMorphism::rotation;
    for n in 1..=4usize {
        for i in 1..=n {
            assert_eq!(lc(&t(n), &cyc(&face(n, i))), lc(&cyc(&face(n, i - 1)), &t(n - 1)));
        }
        assert_eq!(lc(&t(n), &cyc(&face(n, 0))), cyc(&face(n, n)));
        for i in 1..=n {
            assert_eq!(lc(&t(n), &cyc(&degeneracy(n, i))), lc(&cyc(&degeneracy(n, i - 1)), &t(n + 1)));
        }
        let t2 = lc(&t(n + 1), &t(n + 1));
        assert_eq!(lc(&t(n), &cyc(&degeneracy(n, 0))), lc(&cyc(&degeneracy(n, n)), &t2));
    }
}

#[test]
fn pullback_is_symmetric() {
    let x = Arc::new(materialize(Site::Delta, 2));
    // the automorphism f ↦ (i ↦ m − f(n − i)) of Δ
    let mor_map = (0..x.num_morphisms())
        .map(|f| {
            let m = x.object(x.cod(f)).rank().unwrap();
            let Payload::Seq(v) = x.payload(f) else { unreachable!() };
            let r = Payload::Seq(v.iter().rev().map(|&t| m - t).collect());
            x.find_morphism(x.dom(f), x.cod(f), &r).unwrap()
        })
        .collect();
    let reverse = Functor::new(
        "reverse",
        x.clone(),
        x.clone(),
        (0..x.num_objects()).collect(),
        mor_map,
    )
    .unwrap();
    assert!(reverse.is_functor());
    let id = Functor::identity(x.clone());
    for (f, g) in [(&reverse, &id), (&reverse, &reverse)] {
        let p = pullback(f, g).unwrap();
        let q = pullback(g, f).unwrap();
        let swap = Functor::from_labels(
            "swap",
            p.category.clone(),
            q.category.clone(),
            |o| match o {
                Obj::Pair(a, b) => Ok(Obj::Pair(b.clone(), a.clone())),
                _ => unreachable!(),
            },
            |m| match p.category.payload(m) {
                Payload::Pair(a, b) => Ok(Payload::Pair(b.clone(), a.clone())),
                _ => unreachable!(),
            },
        )
        .unwrap();
        assert!(swap.check_isomorphism());
        assert!(validate_category(&p.category).is_empty());
    }
}

#[test]
fn disks_and_their_morphisms_validate() {
    for n in 1..=3 {
        let disks = enumerate_disks(n, 9);
        for x in &disks {
            assert!(validate_disk(x).is_empty());
        }
        for x in &disks {
            for y in &disks {
                for f in disk_hom(x, y) {
                    assert!(validate_disk_morphism(x, y, &f).is_empty());
                }
            }
        }
    }
}

#[test]
fn sieve_windows_are_stable() {
    for n in 0..=2 {
        for k in n..=n + 2 {
            assert!(window_stable(Ambient::Delta, n, k).unwrap(), "n = {n}, K = {k}");
        }
    }
}

#[test]
fn crossed_induction_is_compatible() {
    for amb in [Ambient::Lambda, Ambient::Z2] {
        for n in 0..=1 {
            for s in enumerate_sieves(Ambient::Delta, n, n + 1).unwrap() {
                let sg = induce_crossed_sieve(&s, amb).unwrap();
                assert!(sg.is_sieve());
                assert_eq!(delta_part(&sg).unwrap(), s);
            }
            for t in enumerate_sieves(amb, n, n + 1).unwrap() {
                assert_eq!(induce_crossed_sieve(&delta_part(&t).unwrap(), amb).unwrap(), t);
            }
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let a = verify_bj_duality(2, &[1, 1], 8, None).unwrap();
    let b = verify_bj_duality(2, &[1, 1], 8, None).unwrap();
    assert!(a.passed);
    assert_eq!(document("report", &a), document("report", &b));
}
