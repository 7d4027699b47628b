use gzeta_core::{
    assemble, check_duality, enumerate_types, order_of, zeta_at_level, GroupSpec, RatPoly, Sign, ZetaSeries,
};

#[test]
fn unitary_level_two_class_count() {
    let z = assemble(2, Sign::Minus).unwrap();
    assert_eq!(z.special_value(0).eval_integer(2), Some(42.into()));
    assert_eq!(
        z.special_value(-2),
        order_of(&GroupSpec::linear(2, 2, Sign::Minus, 1)).unwrap()
    );
}

#[test]
fn level_one_matches_registry_and_type_counts() {
    for eps in Sign::BOTH {
        for n in 1..=4 {
            let z = zeta_at_level(n, 1, eps).unwrap();
            assert_eq!(z.special_value(-2), order_of(&GroupSpec::linear(n, 1, eps, 1)).unwrap());
        }
    }
    assert_eq!(enumerate_types(4).len(), 22);
}

#[test]
fn json_round_trip_of_an_assembled_series() {
    let z = assemble(3, Sign::Plus).unwrap();
    let js = serde_json::to_string(&z.to_json()).unwrap();
    let back = ZetaSeries::from_json(&serde_json::from_str(&js).unwrap());
    assert_eq!(back.special_value(-1), z.special_value(-1));
    assert_eq!(back.len(), z.len());
}

#[test]
fn duality_for_n_equal_two() {
    let r = check_duality(2, 2).unwrap();
    assert!(r.holds());
    assert!(r.gl_cores.contains(&RatPoly::parse("q+1").unwrap()));
}
