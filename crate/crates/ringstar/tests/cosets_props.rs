mod common;

use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::RngExt;
use ringstar::cosets::*;
use ringstar::ideals::{principal, relative_index, IndexValue};
use ringstar::scalar;

fn z_coset() -> impl Strategy<Value = (i64, i64)> {
    (1i64..=36).prop_flat_map(|m| (0..m, Just(m)))
}

fn same_set(a: &Option<Coset>, b: &Option<Coset>) -> bool {
    let r = z();
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => coset_eq(&r, x, y),
        _ => false,
    }
}

proptest! {
    #[test]
    fn intersection_laws(a in z_coset(), b in z_coset(), c in z_coset()) {
        let r = z();
        let (ka, kb, kc) = (zc(a.0, a.1), zc(b.0, b.1), zc(c.0, c.1));
        let ab = coset_intersect(&r, &ka, &kb).unwrap();
        prop_assert!(same_set(&ab, &coset_intersect(&r, &kb, &ka).unwrap()));
        if let Some(m) = &ab {
            prop_assert!(coset_contains(&r, &ka, m) && coset_contains(&r, &kb, m));
        }
        let left = match &ab {
            Some(m) => coset_intersect(&r, m, &kc).unwrap(),
            None => None,
        };
        let right = match coset_intersect(&r, &kb, &kc).unwrap() {
            Some(m) => coset_intersect(&r, &ka, &m).unwrap(),
            None => None,
        };
        prop_assert!(same_set(&left, &right));
        for x in -40i64..40 {
            let inside = coset_has(&r, &ka, &r.int(x)) && coset_has(&r, &kb, &r.int(x));
            prop_assert_eq!(inside, ab.as_ref().is_some_and(|m| coset_has(&r, m, &r.int(x))));
        }
    }

    #[test]
    fn cover_matches_brute_force(c in z_coset(), fam in prop::collection::vec(z_coset(), 1..4)) {
        let r = z();
        let family: Vec<Coset> = fam.iter().map(|&(a, m)| zc(a, m)).collect();
        let got = cover_decide(&r, &zc(c.0, c.1), &family).unwrap();
        match (got, z_cover_brute(c, &fam)) {
            (Cover::Covered, None) => {}
            (Cover::Witness(w), Some(_)) => {
                prop_assert!(coset_has(&r, &zc(c.0, c.1), &w));
                for k in &family {
                    prop_assert!(!coset_has(&r, k, &w));
                }
            }
            (got, brute) => prop_assert!(false, "{:?} vs brute {:?}", got, brute),
        }
    }

    #[test]
    fn zero_test_matches_pointwise(parts in prop::collection::vec((z_coset(), -3i64..=3), 1..5)) {
        let r = z();
        let mut f = IndicatorCombo::new();
        for ((a, m), c) in &parts {
            f.push(&r, zc(*a, *m), scalar::int(*c));
        }
        let pointwise = (-250i64..250).all(|x| f.eval(&r, &r.int(x)).is_zero());
        prop_assert_eq!(indicator_zero_test(&r, &f).unwrap(), pointwise);
    }
}

#[test]
fn zero_test_on_cancelling_combinations() {
    let r = z();
    let mut f = IndicatorCombo::new();
    f.push(&r, Coset::whole(&r), scalar::one());
    for a in 0..3 {
        f.push(&r, zc(a, 3), scalar::int(-1));
    }
    assert!(indicator_zero_test(&r, &f).unwrap());
    assert!((-250i64..250).all(|x| f.eval(&r, &r.int(x)).is_zero()));
    f.push(&r, zc(0, 6), scalar::one());
    assert!(!indicator_zero_test(&r, &f).unwrap());
}

#[test]
fn infinite_index_families_never_cover() {
    let q = qpoly();
    let mut g = rng(7);
    let mut instances = 0;
    while instances < 100 {
        let deg = g.random_range(1..=2);
        let b = random_nonzero_poly(&mut g, &q, deg, 3);
        let a = random_poly(&mut g, &q, 1, 3);
        let n = g.random_range(1..=4);
        let fam: Vec<(ringstar::Elem, ringstar::Elem)> = (0..n)
            .map(|_| {
                let d = g.random_range(1..=2);
                (random_poly(&mut g, &q, 1, 3), random_nonzero_poly(&mut g, &q, d, 3))
            })
            .collect();
        let ib = principal(&q, &b).unwrap();
        if fam
            .iter()
            .any(|(_, m)| relative_index(&q, &ib, &principal(&q, m).unwrap()) != IndexValue::Infinite)
        {
            continue;
        }
        instances += 1;
        let c = coset(&q, &a, &b);
        let family: Vec<Coset> = fam.iter().map(|(x, m)| coset(&q, x, m)).collect();
        match cover_decide(&q, &c, &family).unwrap() {
            Cover::Covered => panic!("covered by infinite-index family"),
            Cover::Witness(w) => {
                assert!(coset_has(&q, &c, &w));
                assert!(family.iter().all(|k| !coset_has(&q, k, &w)));
            }
        }
    }
}

#[test]
fn atoms_partition_the_support() {
    let r = z();
    let mut f = IndicatorCombo::new();
    f.push(&r, zc(0, 2), scalar::int(2));
    f.push(&r, zc(0, 3), scalar::int(5));
    let atoms = atoms(&r, &f).unwrap();
    for x in -60i64..60 {
        let hits: Vec<&Atom> = atoms.iter().filter(|a| coset_has(&r, &a.region, &r.int(x))).collect();
        let pattern = vec![x.rem_euclid(2) == 0, x.rem_euclid(3) == 0];
        let value = f.eval(&r, &r.int(x));
        let owner = atoms.iter().find(|a| a.pattern == pattern);
        assert!(owner.is_some() || value.is_zero(), "no atom for {x}");
        if let Some(a) = owner {
            assert!(hits.iter().any(|h| h.pattern == a.pattern));
            assert_eq!(a.value, value);
        }
    }
}
