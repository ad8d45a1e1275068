use akcone_core::cones::{self, Verdict};
use akcone_core::enumerate::{exceptional_classes, is_exceptional, is_spherical, spherical_classes, SquareFilter};
use akcone_core::weyl::cremona_reduce;
use akcone_core::{IntClass, Model};
use proptest::prelude::*;

fn class() -> impl Strategy<Value = IntClass> {
    (0u32..=7).prop_flat_map(|k| {
        proptest::collection::vec(-6i64..=6, k as usize + 1)
            .prop_map(move |v| IntClass::from_i64(Model::Blowup(k), &v).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn reduction_words_are_isometries(e in class()) {
        let (nf, word) = cremona_reduce(&e).unwrap();
        prop_assert!(word.verify());
        prop_assert_eq!(&word.push_forward(&e), &nf);
        prop_assert_eq!(&word.pull_back(&nf), &e);
        prop_assert_eq!(nf.square(), e.square());
        prop_assert_eq!(nf.k_dot(), e.k_dot());
        let (again, w2) = cremona_reduce(&nf).unwrap();
        prop_assert_eq!(again, nf);
        prop_assert!(w2.is_empty());
    }

    #[test]
    fn words_permute_exceptional_classes(e in class()) {
        let (_, word) = cremona_reduce(&e).unwrap();
        let k = match e.model() { Model::Blowup(k) => k, Model::SphereBundle => unreachable!() };
        for x in &exceptional_classes(e.model(), 3).unwrap().classes {
            prop_assert!(is_exceptional(&word.push_forward(x)), "{} on {} blow-ups", x, k);
        }
    }

    #[test]
    fn membership_certificates_replay(e in class()) {
        let r = e.to_ray();
        for cert in [cones::in_positive_cone(&r), cones::in_ck(&r).unwrap(), cones::in_pk(&r).unwrap()] {
            prop_assert!(cones::replay(&cert).is_ok());
        }
        if cones::in_pk(&r).unwrap().verdict == Verdict::In && r.model().rank() <= 7 {
            let d = cones::decompose_sp(&r).unwrap();
            prop_assert_eq!(d.verdict, Verdict::In);
            prop_assert!(cones::replay(&d).is_ok());
        }
    }
}

#[test]
fn exceptional_counts_through_the_public_api() {
    let counts: Vec<usize> = (1..=8)
        .map(|k| {
            let t = exceptional_classes(Model::Blowup(k), 6).unwrap();
            assert!(t.verify().is_ok());
            t.len()
        })
        .collect();
    assert_eq!(counts, vec![1, 3, 6, 10, 16, 27, 56, 240]);
}

#[test]
fn spherical_tables_are_spherical() {
    let t = spherical_classes(Model::Blowup(3), 5, SquareFilter::NonNegative).unwrap();
    assert!(!t.classes.is_empty());
    assert!(t.classes.iter().all(|c| is_spherical(c) && c.square() >= 0.into()));
}
