//! Randomised invariants, 1000 cases each with a fixed seed.

mod suites;

#[test]
fn field_laws_hold_in_every_kind() {
    suites::field_laws_hold_in_every_kind();
}

#[test]
fn rendering_parses_back() {
    suites::rendering_parses_back();
}

#[test]
fn specialisation_is_a_homomorphism() {
    suites::specialisation_is_a_homomorphism();
}

#[test]
fn rref_rank_and_kernel() {
    suites::rref_rank_and_kernel();
}

#[test]
fn quotient_projection_is_multiplicative() {
    suites::quotient_projection_is_multiplicative();
}

#[test]
fn miyamoto_involutions_are_coherent() {
    suites::miyamoto_involutions_are_coherent();
}

#[test]
fn relation_transforms_match_formal_application() {
    suites::relation_transforms_match_formal_application();
}

#[test]
fn transformed_relations_vanish_on_entries() {
    suites::transformed_relations_vanish_on_entries();
}

#[test]
fn symbolic_tables_specialise_to_concrete_ones() {
    suites::symbolic_tables_specialise_to_concrete_ones();
}
