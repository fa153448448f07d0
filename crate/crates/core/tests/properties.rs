mod common;

#[test]
fn partial_order_axioms() {
    common::partial_order_axioms().unwrap();
}

#[test]
fn ord_of_scaled_cycle() {
    common::ord_of_scaled_cycle().unwrap();
}

#[test]
fn group_ring_axioms() {
    common::group_ring_axioms().unwrap();
}

#[test]
fn conservation_under_perturbed_slices() {
    common::conservation_under_perturbed_slices().unwrap();
}

#[test]
fn multiplicity_is_slice_independent() {
    common::multiplicity_is_slice_independent().unwrap();
}

#[test]
fn vogel_set_identity_on_planar_runs() {
    common::vogel_set_identity_on_planar_runs().unwrap();
}

#[test]
fn vogel_set_identity_on_two_planes() {
    common::vogel_set_identity_on_two_planes().unwrap();
}
