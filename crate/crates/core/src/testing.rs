//! Shared fixtures for unit tests.

use crate::catalog;
use crate::coxeter::{CoxeterGroup, GroupElement};

pub fn group(name: &str) -> CoxeterGroup {
    CoxeterGroup::new(catalog::named(name).expect("known type"))
}

pub fn affine_a1() -> CoxeterGroup {
    group("affine-A1")
}

pub fn word(g: &CoxeterGroup, w: &[usize]) -> GroupElement {
    g.element_from_word(w).unwrap()
}
