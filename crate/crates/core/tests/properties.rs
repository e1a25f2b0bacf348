mod common;

#[test]
fn jacobian_samples_have_full_rank() {
    assert_eq!(common::jacobian_suite().unwrap(), common::CASES);
}

#[test]
fn birational_maps_at_rational_parameters() {
    assert_eq!(common::birational_suite().unwrap(), common::CASES);
}

#[test]
fn pluecker_and_bracket_round_trips() {
    assert_eq!(common::pluecker_suite().unwrap(), 2 * common::CASES);
}

#[test]
fn division_and_substitution_homomorphisms() {
    assert_eq!(common::algebra_suite().unwrap(), 3 * common::CASES);
}
