//! Property tests for the algebraic invariants the crate leans on.

use proptest::prelude::*;
use ultrahom::abelian::{invariants_from_orders, AbelianGroup};
use ultrahom::perm::Permutation;
use ultrahom::perm_group::PermGroup;

fn arb_perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just(()).prop_perturb(move |_, mut rng| {
        let mut images: Vec<usize> = (0..degree).collect();
        for i in (1..degree).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            images.swap(i, j);
        }
        Permutation::from_images(images).unwrap()
    })
}

proptest! {
    #[test]
    fn conjugation_is_a_right_action(
        g in arb_perm(9),
        h1 in arb_perm(9),
        h2 in arb_perm(9),
    ) {
        let left = g.conjugate_by(&h1).conjugate_by(&h2);
        let right = g.conjugate_by(&(&h1 * &h2));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_is_associative(
        a in arb_perm(8),
        b in arb_perm(8),
        c in arb_perm(8),
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn inverse_and_order(p in arb_perm(10)) {
        prop_assert!((&p * &p.inverse()).is_identity());
        // independent order route: repeated multiplication
        let mut x = p.clone();
        let mut k: u128 = 1;
        while !x.is_identity() {
            x = &x * &p;
            k += 1;
            prop_assert!(k <= 2520, "order bounded by lcm(1..10)");
        }
        prop_assert_eq!(k, p.order());
    }

    #[test]
    fn conjugation_preserves_cycle_type(g in arb_perm(9), h in arb_perm(9)) {
        prop_assert_eq!(g.conjugate_by(&h).cycle_type(), g.cycle_type());
    }

    #[test]
    fn permutation_serde_roundtrip(p in arb_perm(12)) {
        let json = serde_json::to_string(&p).unwrap();
        let back: Permutation = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn generator_products_are_members(
        seed in 0u64..1000,
        i in 0usize..3,
        j in 0usize..3,
        k in 0usize..3,
    ) {
        let _ = seed;
        let g = PermGroup::dihedral(7);
        let gens = g.generators();
        let pick = |x: usize| &gens[x % gens.len()];
        let p = &(pick(i) * pick(j)) * pick(k);
        prop_assert!(g.contains(&p));
    }

    #[test]
    fn abelian_normal_form_is_canonical(orders in proptest::collection::vec(2u64..30, 1..4)) {
        let g = AbelianGroup::from_cyclic_orders(&orders);
        // a valid divisor chain with the right total order
        let product: u64 = orders.iter().product();
        prop_assert_eq!(g.order(), product);
        for w in g.invariant_factors().windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        // reconstructing from the element orders gives the same form
        if product <= 512 {
            let elem_orders: Vec<u64> =
                g.elements().iter().map(|t| g.element_order(t)).collect();
            prop_assert_eq!(invariants_from_orders(&elem_orders), g.invariant_factors());
        }
    }

    #[test]
    fn quotient_subgroup_matches_smith_form(
        factors in proptest::collection::vec(2u64..9, 1..3),
        picks in proptest::collection::vec(0usize..64, 0..2),
    ) {
        let b = AbelianGroup::from_cyclic_orders(&factors);
        if b.order() > 64 {
            return Ok(());
        }
        let n = b.order() as usize;
        let gens: Vec<Vec<u64>> = picks.iter().map(|&i| b.tuple_of(i % n)).collect();
        let smith = b.quotient_invariants(&gens);
        let (embedded, reported) = b.quotient_subgroup(&gens).unwrap();
        prop_assert_eq!(&reported, &smith);
        // the embedded subgroup's invariants agree via the element-order
        // counting route
        prop_assert_eq!(b.subgroup_invariants(&embedded), smith);
    }
}
