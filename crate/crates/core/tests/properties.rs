use mendel_core::algebra::{make_field, roots_of_f};
use mendel_core::constructions::{affine_mendelsohn, spectrum_construct, spectrum_member};
use mendel_core::designs::{is_proper, mts_to_quasigroup, quasigroup_to_mts};
use mendel_core::moufang::{affine_over_loop, LoopTable};
use mendel_core::quasigroup::{
    converse, direct_product, is_isomorphic, predicate_suite, CayleyTable, Law,
};
use mendel_core::{AbelianGroup, Budget, GroupAutomorphism};
use proptest::prelude::*;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `x ∘ y = a x + b y + c (mod n)` with `a, b` units.
fn linear() -> impl Strategy<Value = CayleyTable> {
    (1usize..=12)
        .prop_flat_map(|n| (Just(n), 0..n, 0..n, 0..n))
        .prop_filter_map("units", |(n, a, b, c)| {
            (gcd(a, n) == 1 && gcd(b, n) == 1)
                .then(|| CayleyTable::from_fn(n, |x, y| (a * x + b * y + c) % n).unwrap())
        })
}

fn relabelled(q: CayleyTable) -> impl Strategy<Value = (CayleyTable, CayleyTable, Vec<usize>)> {
    let perm: Vec<usize> = (0..q.order()).collect();
    Just(perm).prop_shuffle().prop_map(move |p| {
        let r = q.relabel(&p).unwrap();
        (q.clone(), r, p)
    })
}

/// A Mendelsohn quasigroup from the existence spectrum, relabelled.
fn mendelsohn() -> impl Strategy<Value = CayleyTable> {
    (1u64..=40)
        .prop_filter("spectrum", |&v| spectrum_member(v))
        .prop_flat_map(|v| relabelled(spectrum_construct(v).unwrap()))
        .prop_map(|(_, r, _)| r)
}

fn is_hom(a: &CayleyTable, b: &CayleyTable, phi: &[usize]) -> bool {
    let n = a.order();
    (0..n).all(|x| (0..n).all(|y| phi[a.op(x, y)] == b.op(phi[x], phi[y])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn converse_is_an_involution(q in linear()) {
        let c = converse(&q);
        for x in 0..q.order() {
            for y in 0..q.order() {
                prop_assert_eq!(c.op(x, y), q.op(y, x));
            }
        }
        prop_assert_eq!(converse(&c), q);
    }

    #[test]
    fn direct_product_order_multiplies(a in linear(), b in linear()) {
        let p = direct_product(&a, &b).unwrap();
        prop_assert_eq!(p.order(), a.order() * b.order());
    }

    #[test]
    fn isomorphism_found_for_relabellings((q, r, _) in linear().prop_flat_map(relabelled)) {
        let budget = Budget::default();
        let phi = is_isomorphic(&q, &r, &budget).unwrap().expect("relabelling is an isomorphism");
        prop_assert!(is_hom(&q, &r, &phi));
        let psi = is_isomorphic(&r, &q, &budget).unwrap().expect("isomorphism is symmetric");
        prop_assert!(is_hom(&r, &q, &psi));
        prop_assert!(is_isomorphic(&q, &q, &budget).unwrap().is_some());
    }

    #[test]
    fn predicate_implications(q in linear()) {
        let r = predicate_suite(&q);
        prop_assert!(r.translations_agree);
        if r.is_distributive() {
            prop_assert!(r.is_idempotent());
        }
        if r.is_medial() && r.is_idempotent() {
            prop_assert!(r.is_distributive());
        }
        if r.is_semisymmetric() {
            prop_assert_eq!(r.is_left_distributive(), r.is_right_distributive());
        }
    }

    #[test]
    fn witnesses_are_counterexamples(q in linear()) {
        let r = predicate_suite(&q);
        if let Law::Violated(x) = r.idempotent {
            prop_assert_ne!(q.op(x, x), x);
        }
        if let Law::Violated([x, y]) = r.commutative {
            prop_assert_ne!(q.op(x, y), q.op(y, x));
        }
        if let Law::Violated([x, y]) = r.semisymmetric {
            prop_assert_ne!(q.op(x, q.op(y, x)), y);
        }
        if let Law::Violated([x, y, z]) = r.left_distributive {
            prop_assert_ne!(q.op(x, q.op(y, z)), q.op(q.op(x, y), q.op(x, z)));
        }
        if let Law::Violated([x, y, z]) = r.right_distributive {
            prop_assert_ne!(q.op(q.op(x, y), z), q.op(q.op(x, z), q.op(y, z)));
        }
    }

    #[test]
    fn semisymmetric_laws_agree_on_mendelsohn_tables(q in mendelsohn()) {
        let r = predicate_suite(&q);
        prop_assert!(r.is_mendelsohn() && r.is_medial());
        prop_assert_eq!(r.is_left_distributive(), r.is_right_distributive());
    }

    #[test]
    fn mts_round_trip_and_properness(q in mendelsohn()) {
        let s = quasigroup_to_mts(&q).unwrap();
        prop_assert_eq!(s.blocks().len(), q.order() * (q.order() - 1) / 3);
        prop_assert_eq!(&mts_to_quasigroup(&s), &q);
        prop_assert_eq!(quasigroup_to_mts(&mts_to_quasigroup(&s)).unwrap(), s.clone());
        prop_assert_eq!(is_proper(&s), !predicate_suite(&q).is_commutative());
    }

    #[test]
    fn roots_match_trial_division(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 19, 31, 37, 43, 97]), d in 1u32..=4) {
        let m = p.pow(d);
        prop_assume!(m <= 10_000);
        let trial: Vec<u64> = (0..m).filter(|&k| (k * k + 1 + m - k) % m == 0).collect();
        prop_assert_eq!(roots_of_f(p, d), trial);
    }

    #[test]
    fn automorphisms_permute_and_fix_zero(
        f in prop::sample::select(vec![vec![7u64], vec![3, 3], vec![9, 3], vec![2, 2, 2], vec![4, 2]]),
        entries in prop::collection::vec(-10i64..10, 9),
    ) {
        let g = AbelianGroup::new(&f).unwrap();
        let m = g.rank();
        let rows: Vec<Vec<i64>> = (0..m).map(|i| entries[i * m..(i + 1) * m].to_vec()).collect();
        if let Ok(k) = GroupAutomorphism::new(&g, &rows) {
            prop_assert_eq!(k.apply(0), 0);
            let mut seen = vec![false; g.order()];
            for x in g.elements() {
                prop_assert!(!std::mem::replace(&mut seen[k.apply(x)], true));
                for y in g.elements() {
                    prop_assert_eq!(k.apply(g.add_idx(x, y)), g.add_idx(k.apply(x), k.apply(y)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_on_random_triples(
        (p, d) in prop::sample::select(vec![(2u64, 1u32), (2, 3), (2, 6), (3, 2), (5, 2), (7, 2), (13, 1), (3, 3)]),
        i in any::<u64>(), j in any::<u64>(), l in any::<u64>(),
    ) {
        let f = make_field(p, d).unwrap();
        let q = f.order();
        let (a, b, c) = (f.from_index(i % q), f.from_index(j % q), f.from_index(l % q));
        prop_assert_eq!(f.mul(&a, &f.mul(&b, &c)), f.mul(&f.mul(&a, &b), &c));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        if let Some(inv) = f.inv(&a) {
            prop_assert_eq!(f.mul(&a, &inv), f.one());
        } else {
            prop_assert!(f.is_zero(&a));
        }
        prop_assert_eq!(f.pow(f.omega(), q - 1), f.one());
    }

    #[test]
    fn affine_over_group_is_idempotent(
        n in prop::sample::select(vec![2usize, 3, 4, 5, 7, 8, 9, 11, 13, 16, 19, 25, 27]),
        c in 1usize..30,
    ) {
        let c = c % n;
        prop_assume!(gcd(c, n) == 1 && gcd((n + 1 - c) % n, n) == 1);
        let g = AbelianGroup::new(&[n as u64]).unwrap();
        let l = LoopTable::from_group(&g);
        let k: Vec<usize> = (0..n).map(|x| c * x % n).collect();
        let q = affine_over_loop(&l, &k).unwrap();
        let r = predicate_suite(&q);
        prop_assert!(r.is_idempotent() && r.is_medial());
        prop_assert_eq!(r.is_semisymmetric(), (c * c + 1 + n - c) % n == 0);
        let aut = GroupAutomorphism::new(&g, &[vec![c as i64]]).unwrap();
        if aut.satisfies_f() {
            prop_assert_eq!(affine_mendelsohn(&aut).unwrap(), q);
        }
    }
}
