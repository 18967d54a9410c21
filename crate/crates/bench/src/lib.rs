//! Shared fixtures for the benchmark targets.

use ultrahom::finite_group::FiniteGroup;
use ultrahom::partial_aut::PartialAutomorphism;

/// S_4 with the partial automorphism swapping two transpositions.
pub fn s4_swap() -> (FiniteGroup, PartialAutomorphism) {
    let s4 = FiniteGroup::symmetric(4);
    let twos: Vec<usize> = (0..24).filter(|&x| s4.element_order(x) == 2).collect();
    let p = PartialAutomorphism::validate(&s4, &[(twos[0], twos[1])]).unwrap();
    (s4, p)
}
