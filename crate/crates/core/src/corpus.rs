//! The shared small-group corpus the exhaustive checks and cross-oracle
//! comparisons run over: cyclic and dihedral groups, all abelian groups
//! up to the order bound, the named small nonabelian groups, and small
//! direct products of these.

use crate::abelian::AbelianGroup;
use crate::finite_group::FiniteGroup;
use crate::perm::Permutation;
use crate::perm_group::PermGroup;

/// Abstract groups of order at most `max_order`, with names. The list
/// intentionally contains a few isomorphic duplicates (e.g. S_3 and the
/// dihedral group on 3 points); checks are per-entry.
pub fn small_groups(max_order: usize) -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    out.push(("trivial".into(), FiniteGroup::trivial()));
    for n in 2..=max_order {
        out.push((format!("Z{n}"), FiniteGroup::cyclic(n)));
    }
    for n in 3..=max_order / 2 {
        out.push((format!("D{n}"), FiniteGroup::dihedral(n)));
    }
    // non-cyclic abelian groups
    for order in 4..=max_order as u64 {
        for g in abelian_groups_of_order(order) {
            if g.rank() > 1 {
                let name = format!(
                    "Ab[{}]",
                    g.invariant_factors()
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                out.push((name, g.to_finite_group()));
            }
        }
    }
    if max_order >= 6 {
        out.push(("S3".into(), FiniteGroup::symmetric(3)));
    }
    if max_order >= 8 {
        out.push(("Q8".into(), FiniteGroup::quaternion8()));
    }
    if max_order >= 12 {
        out.push(("A4".into(), FiniteGroup::alternating(4)));
    }
    if max_order >= 24 {
        out.push(("S4".into(), FiniteGroup::symmetric(4)));
    }
    // small products of the named groups with cyclic factors
    let named: Vec<(String, FiniteGroup)> = vec![
        ("S3".into(), FiniteGroup::symmetric(3)),
        ("D4".into(), FiniteGroup::dihedral(4)),
        ("Q8".into(), FiniteGroup::quaternion8()),
        ("A4".into(), FiniteGroup::alternating(4)),
    ];
    for (name, g) in &named {
        for k in 2..=4usize {
            if g.order() * k <= max_order {
                let (prod, _, _) = FiniteGroup::direct_product(g, &FiniteGroup::cyclic(k));
                out.push((format!("{name}xZ{k}"), prod));
            }
        }
    }
    if max_order >= 36 {
        let s3 = FiniteGroup::symmetric(3);
        let (prod, _, _) = FiniteGroup::direct_product(&s3, &s3);
        out.push(("S3xS3".into(), prod));
    }
    out.retain(|(_, g)| g.order() <= max_order);
    out
}

/// All abelian groups of exactly the given order, one per isomorphism
/// class, via partitions of the prime exponents.
pub fn abelian_groups_of_order(order: u64) -> Vec<AbelianGroup> {
    if order == 0 {
        return vec![];
    }
    if order == 1 {
        return vec![AbelianGroup::trivial()];
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut n = order;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        factors.push((n, 1));
    }

    // cartesian product of partition choices per prime
    let mut variants: Vec<Vec<u64>> = vec![vec![]];
    for (p, e) in factors {
        let parts = partitions(e);
        let mut next = Vec::new();
        for v in &variants {
            for part in &parts {
                let mut w = v.clone();
                for &x in part {
                    w.push(p.pow(x));
                }
                next.push(w);
            }
        }
        variants = next;
    }
    variants
        .into_iter()
        .map(|orders| AbelianGroup::from_cyclic_orders(&orders))
        .collect()
}

fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Permutation-group corpus for the centralizer cross-oracle: everything
/// of order at most `max_order`, small enough to enumerate.
pub fn perm_group_corpus(max_order: u128) -> Vec<(String, PermGroup)> {
    let mut out: Vec<(String, PermGroup)> = vec![
        ("S3".into(), PermGroup::symmetric(3)),
        ("S4".into(), PermGroup::symmetric(4)),
        ("S5".into(), PermGroup::symmetric(5)),
        ("S6".into(), PermGroup::symmetric(6)),
        ("A4".into(), PermGroup::alternating(4)),
        ("A5".into(), PermGroup::alternating(5)),
        ("A6".into(), PermGroup::alternating(6)),
        ("A7".into(), PermGroup::alternating(7)),
        ("D4".into(), PermGroup::dihedral(4)),
        ("D6".into(), PermGroup::dihedral(6)),
        ("D12".into(), PermGroup::dihedral(12)),
        ("Z60".into(), PermGroup::cyclic(60)),
        ("Z512".into(), PermGroup::cyclic(512)),
    ];
    {
        // the simple group of order 168 in its projective action
        let a = Permutation::from_cycles(8, &[vec![0, 1, 2, 3, 4, 5, 6]]).unwrap();
        let b = Permutation::from_cycles(8, &[vec![0, 7], vec![1, 6], vec![2, 3], vec![4, 5]])
            .unwrap();
        out.push((
            "PSL(2,7)".into(),
            PermGroup::from_generators(8, vec![a, b]).unwrap(),
        ));
    }
    // disjoint products: S4 x S3, S3 x S3 x Z2, elementary abelian 2^8
    out.push((
        "S4xS3".into(),
        disjoint_product(&[PermGroup::symmetric(4), PermGroup::symmetric(3)]),
    ));
    out.push((
        "S3xS3xZ2".into(),
        disjoint_product(&[
            PermGroup::symmetric(3),
            PermGroup::symmetric(3),
            PermGroup::cyclic(2),
        ]),
    ));
    {
        let mut gens = Vec::new();
        for i in 0..8 {
            gens.push(Permutation::from_cycles(16, &[vec![2 * i, 2 * i + 1]]).unwrap());
        }
        out.push(("E256".into(), PermGroup::from_generators(16, gens).unwrap()));
    }
    // regular images of a few abstract groups
    for (name, g) in [
        ("Q8", FiniteGroup::quaternion8()),
        ("D4", FiniteGroup::dihedral(4)),
        (
            "Z3xZ9",
            AbelianGroup::new(vec![3, 9]).unwrap().to_finite_group(),
        ),
    ] {
        let gens: Vec<Permutation> = {
            let all: Vec<usize> = (0..g.order()).collect();
            g.generating_sequence(&all)
                .into_iter()
                .map(|x| g.regular_image(x))
                .collect()
        };
        out.push((
            format!("reg({name})"),
            PermGroup::from_generators(g.order(), gens).unwrap(),
        ));
    }
    out.retain(|(_, g)| {
        let o = g.order();
        o <= &num_bigint::BigUint::from(max_order)
    });
    out
}

/// Direct product of permutation groups acting on disjoint point sets.
pub fn disjoint_product(groups: &[PermGroup]) -> PermGroup {
    let degree: usize = groups.iter().map(|g| g.degree()).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for g in groups {
        for gen in g.generators() {
            let mut images: Vec<usize> = (0..degree).collect();
            for (x, &y) in gen.images().iter().enumerate() {
                images[offset + x] = offset + y;
            }
            gens.push(Permutation::from_images(images).unwrap());
        }
        offset += g.degree();
    }
    PermGroup::from_generators(degree, gens).unwrap()
}
