use akcone_core::configs::{
    check_dimension_bounds, classify_shape, enumerate_configurations, is_nef, taubes_class, vanishing_locus,
    ConfigError, CurveConeSpec, NefVerdict, Shape,
};
use akcone_core::{IntClass, Model};

fn b(k: u32, v: &[i64]) -> IntClass {
    IntClass::from_i64(Model::Blowup(k), v).unwrap()
}

#[test]
fn nef_classes_and_their_loci() {
    let spec = CurveConeSpec::disjoint_minus_ones(3);
    let e = b(3, &[2, 1, 0, 0]);
    assert_eq!(is_nef(&e, &spec).unwrap(), NefVerdict::Nef);
    let z = vanishing_locus(&e, &spec).unwrap();
    assert!(z.complete);
    assert_eq!(z.classes, vec![b(3, &[0, 0, -1, 0]), b(3, &[0, 0, 0, -1])]);
    assert!(matches!(is_nef(&b(3, &[1, -1, 0, 0]), &spec).unwrap(), NefVerdict::NotNef { .. }));
    assert_eq!(is_nef(&b(3, &[1, 2, 0, 0]), &spec).unwrap(), NefVerdict::Unknown);
}

#[test]
fn taubes_sums_need_disjoint_loci() {
    let spec = CurveConeSpec::disjoint_minus_ones(2);
    let inputs = vec![(b(2, &[2, 1, 0]), spec.clone()), (b(2, &[2, 0, 1]), spec.clone())];
    assert_eq!(taubes_class(&inputs).unwrap(), b(2, &[4, 1, 1]));
    match taubes_class(&inputs[..1]) {
        Err(ConfigError::LociIntersect { common }) => assert_eq!(common, b(2, &[0, 0, -1])),
        other => panic!("{other:?}"),
    }
}

#[test]
fn conic_splits_into_two_lines() {
    let e = b(0, &[2]);
    let census = enumerate_configurations(&e, &CurveConeSpec::bare(Model::Blowup(0)), 4, 2).unwrap();
    assert!(!census.truncated);
    let split = census
        .configurations
        .iter()
        .find(|c| c.parts.len() == 2 && c.parts.iter().all(|p| p.multiplicity == 1))
        .expect("two distinct lines");
    assert_eq!(classify_shape(split), Shape::TwoPieceTransverse);
    assert!(check_dimension_bounds(split).unwrap().holds());
}
