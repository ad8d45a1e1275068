use alloc::vec::Vec;

use num_bigint::BigInt;

use super::*;

fn c(k: u32, v: &[i64]) -> IntClass {
    IntClass::from_i64(Model::Blowup(k), v).unwrap()
}

fn s(a: i64, b: i64) -> IntClass {
    IntClass::from_i64(Model::SphereBundle, &[a, b]).unwrap()
}

/// `2H - E_i` on `k` blow-ups.
fn two_h_minus(k: u32, i: usize) -> IntClass {
    let mut v = alloc::vec![0; k as usize + 1];
    v[0] = 2;
    v[i] = 1;
    c(k, &v)
}

fn part(class: IntClass, m: u32) -> Part {
    Part { class, multiplicity: m }
}

#[test]
fn package_classes_are_nef() {
    let spec = CurveConeSpec::disjoint_minus_ones(4);
    for n in 1..6 {
        assert_eq!(is_nef(&c(4, &[n, n - 1, 0, 0, 0]), &spec).unwrap(), NefVerdict::Nef);
        assert_eq!(is_nef(&c(4, &[n, 0, n - 1, 1, 0]), &spec).unwrap(), NefVerdict::Nef);
    }
    assert_eq!(is_nef(&c(4, &[2, 0, 0, 0, 0]), &spec).unwrap(), NefVerdict::Nef);
    assert_eq!(is_nef(&c(4, &[1, 0, 0, 1, 0]), &spec).unwrap(), NefVerdict::Nef);
    // 2H - E1 - E2 - E3 is not covered without more information
    assert_eq!(is_nef(&c(4, &[2, 1, 1, 1, 0]), &spec).unwrap(), NefVerdict::Unknown);
    assert!(matches!(is_nef(&c(4, &[1, -1, 0, 0, 0]), &spec).unwrap(), NefVerdict::NotNef { .. }));
}

#[test]
fn line_through_three_points() {
    let spec = CurveConeSpec::disjoint_minus_ones(3).with_negative(c(3, &[1, 1, 1, 1]));
    spec.validate().unwrap();
    assert_eq!(
        is_nef(&c(3, &[2, 1, 1, 1]), &spec).unwrap(),
        NefVerdict::NotNef { witness: c(3, &[1, 1, 1, 1]), pairing: BigInt::from(-1) }
    );
}

#[test]
fn bundle_thresholds() {
    for p in -4..0 {
        let spec = CurveConeSpec::bundle(BundleCase::II { p });
        for l in -p..-p + 4 {
            assert_eq!(is_nef(&s(1, l), &spec).unwrap(), NefVerdict::Nef, "p = {p}, l = {l}");
        }
        assert_eq!(
            is_nef(&s(1, -p - 1), &spec).unwrap(),
            NefVerdict::NotNef { witness: s(1, p), pairing: BigInt::from(-1) }
        );
        assert_eq!(is_nef(&s(0, 1), &spec).unwrap(), NefVerdict::Nef);
        let edge = vanishing_locus(&s(1, -p), &spec).unwrap();
        assert_eq!(edge.classes, alloc::vec![s(1, p)]);
        assert!(vanishing_locus(&s(1, -p + 1), &spec).unwrap().is_ample());

        let spec = CurveConeSpec::bundle(BundleCase::III { p });
        assert_eq!(is_nef(&s(-p, 1), &spec).unwrap(), NefVerdict::Nef);
        assert!(matches!(is_nef(&s(-p - 1, 1), &spec).unwrap(), NefVerdict::NotNef { .. }));
    }
    let spec = CurveConeSpec::bundle(BundleCase::I);
    assert!(vanishing_locus(&s(1, 1), &spec).unwrap().is_ample());
    assert_eq!(is_nef(&s(1, 0), &spec).unwrap(), NefVerdict::Nef);
}

#[test]
fn twisted_thresholds() {
    // D_l = lH - (l-1)E is nef for l >= 1 - s and ample for l >= 2 - s
    for s_ in -3..=0 {
        let spec = CurveConeSpec::bundle(BundleCase::Twisted { s: s_ });
        assert_eq!(is_nef(&c(1, &[1, 1]), &spec).unwrap(), NefVerdict::Nef);
        let d = |l: i64| c(1, &[l, l - 1]);
        let l0 = 1 - s_;
        assert!(matches!(is_nef(&d(l0 - 1), &spec).unwrap(), NefVerdict::NotNef { .. }));
        assert_eq!(is_nef(&d(l0), &spec).unwrap(), NefVerdict::Nef);
        if l0 >= 2 {
            assert!(!vanishing_locus(&d(l0), &spec).unwrap().is_ample());
        }
        assert!(vanishing_locus(&d(l0 + 1), &spec).unwrap().is_ample());
    }
    assert_eq!(is_nef(&c(1, &[3, 3]), &CurveConeSpec::bare(Model::Blowup(1))).unwrap(), NefVerdict::Nef);
}

#[test]
fn top_stratum_nef() {
    let spec = CurveConeSpec::top_stratum(Model::Blowup(3));
    assert_eq!(is_nef(&c(3, &[2, 1, 1, 1]), &spec).unwrap(), NefVerdict::Nef);
    assert_eq!(is_nef(&c(3, &[1, 1, 1, 1]), &spec).unwrap(), NefVerdict::Unknown);
    assert_eq!(is_nef(&c(3, &[1, 1, 0, 0]), &spec).unwrap(), NefVerdict::Nef);
}

#[test]
fn invalid_specs() {
    assert!(CurveConeSpec::bare(Model::Blowup(2)).with_negative(c(2, &[1, 0, 0])).validate().is_err());
    assert!(CurveConeSpec::bundle(BundleCase::II { p: 1 }).validate().is_err());
    let mut spec = CurveConeSpec::disjoint_minus_ones(3);
    spec.model = Model::Blowup(4);
    assert!(matches!(spec.validate(), Err(SpecError::MinusOnesCount { .. })));
    let bad = CurveConeSpec::disjoint_minus_ones(2).with_negative(c(2, &[0, 1, -1]));
    assert!(matches!(bad.validate(), Err(SpecError::AdjunctionScreen(_))));
    let top = CurveConeSpec::top_stratum(Model::Blowup(3)).with_negative(c(3, &[1, 1, 1, 1]));
    assert!(matches!(top.validate(), Err(SpecError::NotMinusOne(_))));
}

#[test]
fn loci_of_conics_through_a_point() {
    for k in 2..=6u32 {
        let spec = CurveConeSpec::disjoint_minus_ones(k);
        for i in 1..=k as usize {
            let locus = vanishing_locus(&two_h_minus(k, i), &spec).unwrap();
            let want: Vec<IntClass> = {
                let mut v: Vec<IntClass> =
                    (1..=k as usize).filter(|&j| j != i).map(|j| -IntClass::basis(Model::Blowup(k), j)).collect();
                v.sort();
                v
            };
            assert_eq!(locus.classes, want);
            assert!(locus.complete);
        }
    }
    let locus = vanishing_locus(&c(0, &[1]), &CurveConeSpec::bare(Model::Blowup(0))).unwrap();
    assert!(locus.is_ample());
    let err = vanishing_locus(&c(2, &[1, 1, 0]), &CurveConeSpec::disjoint_minus_ones(2));
    assert!(matches!(err, Err(ConfigError::Precondition { .. })));
}

#[test]
fn taubes_bookkeeping() {
    for k in 2..=6u32 {
        let spec = CurveConeSpec::disjoint_minus_ones(k);
        let inputs: Vec<(IntClass, CurveConeSpec)> =
            (1..=k as usize).map(|i| (two_h_minus(k, i), spec.clone())).collect();
        let mut want = alloc::vec![1; k as usize + 1];
        want[0] = 2 * k as i64;
        assert_eq!(taubes_class(&inputs).unwrap(), c(k, &want));
    }
    let spec = CurveConeSpec::bare(Model::Blowup(0));
    assert_eq!(taubes_class(&[(c(0, &[1]), spec)]).unwrap(), c(0, &[1]));
    let spec = CurveConeSpec::disjoint_minus_ones(3);
    let dup = [(two_h_minus(3, 1), spec.clone()), (two_h_minus(3, 1), spec)];
    assert_eq!(taubes_class(&dup), Err(ConfigError::LociIntersect { common: c(3, &[0, 0, -1, 0]) }));
}

#[test]
fn census_examples() {
    let e = c(1, &[2, 1]);
    let census = enumerate_configurations(&e, &CurveConeSpec::bare(Model::Blowup(1)), 6, 6).unwrap();
    let two = Configuration::new(alloc::vec![part(c(1, &[1, 0]), 1), part(c(1, &[1, 1]), 1)], e).unwrap();
    assert!(census.configurations.contains(&two));
    assert_eq!(classify_shape(&two), Shape::TwoPieceTransverse);
    let report = check_dimension_bounds(&two).unwrap();
    assert_eq!(report.bound, BoundCheck::Checked { lhs: 3.into(), rhs: 3.into(), holds: true, equality: true });

    let e = c(0, &[2]);
    let census = enumerate_configurations(&e, &CurveConeSpec::bare(Model::Blowup(0)), 6, 6).unwrap();
    let double = Configuration::new(alloc::vec![part(c(0, &[1]), 2)], e.clone()).unwrap();
    let pair = Configuration::new(alloc::vec![part(c(0, &[1]), 1), part(c(0, &[1]), 1)], e).unwrap();
    assert_eq!(census.configurations, alloc::vec![pair.clone(), double.clone()]);
    assert!(!census.truncated);
    assert!(check_dimension_bounds(&double).unwrap().is_equality());
    assert!(check_dimension_bounds(&pair).unwrap().is_equality());

    let census = enumerate_configurations(&c(0, &[1]), &CurveConeSpec::bare(Model::Blowup(0)), 6, 6).unwrap();
    assert!(census.configurations.is_empty());
    assert!(!census.truncated);
}

#[test]
fn census_reports_truncation() {
    let e = c(0, &[2]);
    let spec = CurveConeSpec::bare(Model::Blowup(0));
    assert!(enumerate_configurations(&e, &spec, 1, 6).unwrap().truncated);
    assert!(!enumerate_configurations(&e, &spec, 2, 6).unwrap().truncated);
    assert!(enumerate_configurations(&e, &spec, 6, 1).unwrap().truncated);
    assert!(enumerate_configurations(&c(0, &[7]), &spec, 6, 8).unwrap().truncated);
    assert!(!enumerate_configurations(&c(0, &[5]), &spec, 6, 8).unwrap().truncated);
    assert!(enumerate_configurations(&c(1, &[2, 2]), &CurveConeSpec::bare(Model::Blowup(1)), 6, 6).is_err());
}

#[test]
fn census_is_canonical() {
    let spec = CurveConeSpec::top_stratum(Model::Blowup(2));
    let e = c(2, &[3, 1, 1]);
    let census = enumerate_configurations(&e, &spec, 6, 6).unwrap();
    assert!(!census.configurations.is_empty());
    for config in &census.configurations {
        let mut shuffled = config.parts.clone();
        shuffled.reverse();
        assert_eq!(&Configuration::new(shuffled, e.clone()).unwrap(), config);
        for (i, p) in config.parts.iter().enumerate() {
            for q in &config.parts[i + 1..] {
                assert!(p.class.dot(&q.class) >= BigInt::from(0));
            }
        }
    }
}

#[test]
fn bounds_hold_on_censuses() {
    let cases = [
        (c(1, &[2, 1]), CurveConeSpec::top_stratum(Model::Blowup(1))),
        (c(0, &[2]), CurveConeSpec::bare(Model::Blowup(0))),
        (c(2, &[3, 1, 1]), CurveConeSpec::top_stratum(Model::Blowup(2))),
        (two_h_minus(4, 2), CurveConeSpec::disjoint_minus_ones(4)),
    ];
    for (e, spec) in cases {
        let census = enumerate_configurations(&e, &spec, 6, 6).unwrap();
        let mut connected = 0;
        for config in &census.configurations {
            let report = check_dimension_bounds(config).unwrap();
            assert!(report.holds(), "{config:?}: {report:?}");
            if report.is_equality() {
                assert_ne!(classify_shape(config), Shape::Other, "{config:?}");
            }
            connected += usize::from(config.is_connected());
        }
        assert!(connected > 0, "{e}");
    }
}

#[test]
fn shapes() {
    // hub H - E1 - E2 - E3 of square -2 with two fibres H - E4
    let e = c(4, &[3, 1, 1, 1, 2]);
    let comb = Configuration::new(
        alloc::vec![part(c(4, &[1, 1, 1, 1, 0]), 1), part(c(4, &[1, 0, 0, 0, 1]), 1), part(c(4, &[1, 0, 0, 0, 1]), 1)],
        e,
    )
    .unwrap();
    assert_eq!(classify_shape(&comb), Shape::Comb);
    assert!(check_dimension_bounds(&comb).unwrap().is_equality());

    // three lines through no common point
    let e = c(0, &[3]);
    let triangle =
        Configuration::new(alloc::vec![part(c(0, &[1]), 1), part(c(0, &[1]), 1), part(c(0, &[1]), 1)], e).unwrap();
    assert_eq!(classify_shape(&triangle), Shape::Other);

    // E1 + (H - E1) is a two-curve tree with a negative part
    let chain =
        Configuration::new(alloc::vec![part(c(1, &[0, -1]), 1), part(c(1, &[1, 1]), 1)], c(1, &[1, 0])).unwrap();
    assert_eq!(classify_shape(&chain), Shape::Tree);
    let report = check_dimension_bounds(&chain).unwrap();
    assert!(report.is_equality());
    assert!(report.sharper.is_empty());

    // E1 + 2 fibres in 2H - E1: the exceptional curve meets the total once
    let comb_like = Configuration::new(
        alloc::vec![part(c(1, &[0, -1]), 1), part(c(1, &[1, 1]), 1), part(c(1, &[1, 1]), 1)],
        c(1, &[2, 1]),
    )
    .unwrap();
    assert_eq!(classify_shape(&comb_like), Shape::Tree);
    let report = check_dimension_bounds(&comb_like).unwrap();
    assert!(!report.is_equality());
    assert_eq!(report.sharper, alloc::vec![SharperBound { part: 0, lhs: 3.into(), rhs: 3.into(), holds: true }]);

    let single = Configuration::new(alloc::vec![part(c(1, &[2, 1]), 1)], c(1, &[2, 1])).unwrap();
    assert_eq!(check_dimension_bounds(&single).unwrap().bound, BoundCheck::Irreducible);
    let apart =
        Configuration::new(alloc::vec![part(c(2, &[1, 1, 1]), 1), part(c(2, &[0, -1, 0]), 1)], c(2, &[1, 0, 1]))
            .unwrap();
    assert_eq!(classify_shape(&apart), Shape::Tree);
}
