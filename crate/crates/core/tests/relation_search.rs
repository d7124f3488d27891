use autseq::catalog::objects;
use autseq::series::{power_relation_search, SeriesError};

#[test]
fn inverse_of_t3_needs_degree_above_twelve() {
    let inv = objects::thue_morse_series(3, 729)
        .unwrap()
        .reversion()
        .unwrap();
    assert!(power_relation_search(&inv, 3, 12).unwrap().is_none());
    let r = power_relation_search(&inv, 3, 24)
        .unwrap()
        .expect("relation of degree 24");
    // independent confirmation on four times as many coefficients
    let longer = objects::thue_morse_series(3, 4 * 729)
        .unwrap()
        .reversion()
        .unwrap();
    assert!(r.residual(&longer).unwrap().is_zero());
}

#[test]
fn thue_morse_relations_are_recovered() {
    for p in [2u32, 3, 5] {
        let t = objects::thue_morse_series(p, 2048).unwrap();
        let r = power_relation_search(&t, 1, 6).unwrap().expect("relation");
        let longer = objects::thue_morse_series(p, 8192).unwrap();
        assert!(r.residual(&longer).unwrap().is_zero(), "p = {p}");
    }
}

#[test]
fn period_doubling_relation_found_and_verified() {
    let d = objects::period_doubling_series(1024);
    let r = power_relation_search(&d, 1, 3).unwrap().expect("relation");
    assert!(r
        .residual(&objects::period_doubling_series(8192))
        .unwrap()
        .is_zero());
}

#[test]
fn precision_guard() {
    let d = objects::period_doubling_series(16);
    assert!(matches!(
        power_relation_search(&d, 2, 3),
        Err(SeriesError::PrecisionTooSmall { .. })
    ));
}
