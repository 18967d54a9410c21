//! The specific automorphism families the abelian-subgroup arguments run
//! on: the matrix family sigma_f on (Z/2)^n, the sigma/tau family on
//! (Z/2^k) x (Z/2)^m, and the fixing automorphism of an odd abelian group.

use crate::abelian::{invariants_from_orders, AbelianGroup, Tuple};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::perm_group::enumerate_closure;

// ---------------------------------------------------------------------
// sigma_f on (Z/2)^n: sigma_f(v1, w, v2) = (v1 + f(v2), w, v2)
// ---------------------------------------------------------------------

/// Vectors of (Z/2)^n are bitmasks: bits `0..m` hold v1, bit `m` holds w
/// when n is odd, bits `n-m..n` hold v2, with m = floor(n/2).
#[derive(Debug, Clone)]
pub struct ExplosionFamily {
    pub n: usize,
    pub m: usize,
    /// The family is elementary abelian of order 2^(m*m).
    pub log2_order: usize,
    /// sigma_f then sigma_g equals sigma_(f+g) on every checked pair.
    pub homomorphism_ok: bool,
    /// f = 0 is the only matrix acting as the identity.
    pub injective_ok: bool,
    /// Fixed points of sigma_id are exactly the vectors with v2 = 0.
    pub fixed_points_ok: bool,
    pub fixed_point_count: usize,
    pub pairs_checked: usize,
    pub exhaustive: bool,
}

/// Apply sigma_f; `f` holds m rows as bitmasks over the v2 bits.
pub fn sigma_apply(n: usize, m: usize, f: &[u32], x: u32) -> u32 {
    let v2 = x >> (n - m);
    let mut fv2 = 0u32;
    for (i, row) in f.iter().enumerate() {
        fv2 |= ((row & v2).count_ones() & 1) << i;
    }
    x ^ fv2
}

pub fn matrix_from_index(m: usize, idx: u64) -> Vec<u32> {
    (0..m)
        .map(|i| ((idx >> (i * m)) & ((1u64 << m) - 1)) as u32)
        .collect()
}

pub fn identity_matrix(m: usize) -> Vec<u32> {
    (0..m).map(|i| 1u32 << i).collect()
}

/// Build and check the sigma_f family on (Z/2)^n; cap n <= 10. All matrix
/// pairs are checked for m <= 3, a deterministic sample above that.
pub fn sigma_family_2explosion(n: usize) -> Result<ExplosionFamily> {
    if !(2..=10).contains(&n) {
        return Err(Error::CapExceeded {
            what: "explosion family dimension",
            needed: n,
            cap: 10,
        });
    }
    let m = n / 2;
    let count: u64 = 1 << (m * m);
    let basis: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();

    let exhaustive = m <= 3;
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    if exhaustive {
        for a in 0..count {
            for b in 0..count {
                pairs.push((a, b));
            }
        }
    } else {
        let mut s: u64 = 0x243f_6a88_85a3_08d3;
        let mut next = || {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (s >> 17) % count
        };
        for _ in 0..4096 {
            let a = next();
            let b = next();
            pairs.push((a, b));
        }
    }

    // linear maps agree iff they agree on a basis
    let mut homomorphism_ok = true;
    for &(fa, fb) in &pairs {
        let f = matrix_from_index(m, fa);
        let g = matrix_from_index(m, fb);
        let sum = matrix_from_index(m, fa ^ fb);
        for &e in &basis {
            if sigma_apply(n, m, &f, sigma_apply(n, m, &g, e)) != sigma_apply(n, m, &sum, e) {
                homomorphism_ok = false;
            }
        }
    }

    let mut injective_ok = true;
    let ids: Vec<u64> = if exhaustive {
        (0..count).collect()
    } else {
        let mut v: Vec<u64> = pairs.iter().map(|p| p.0).collect();
        v.push(0);
        v
    };
    for fi in ids {
        let f = matrix_from_index(m, fi);
        let is_id = basis.iter().all(|&e| sigma_apply(n, m, &f, e) == e);
        if is_id != (fi == 0) {
            injective_ok = false;
        }
    }

    let f_id = identity_matrix(m);
    let mut fixed = 0usize;
    let mut fixed_points_ok = true;
    for x in 0..(1u32 << n) {
        let is_fixed = sigma_apply(n, m, &f_id, x) == x;
        let v2_zero = (x >> (n - m)) == 0;
        if is_fixed != v2_zero {
            fixed_points_ok = false;
        }
        if is_fixed {
            fixed += 1;
        }
    }

    Ok(ExplosionFamily {
        n,
        m,
        log2_order: m * m,
        homomorphism_ok,
        injective_ok,
        fixed_points_ok,
        fixed_point_count: fixed,
        pairs_checked: pairs.len(),
        exhaustive,
    })
}

// ---------------------------------------------------------------------
// sigma_1, sigma_2, tau_i on (Z/2^k) x (Z/2)^m
// ---------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct CyclicTwoFamily {
    pub k: u32,
    pub m: usize,
    /// Automorphisms as permutations of the element indices
    /// `(a, bits) -> a * 2^m + bits`.
    pub sigma1: Permutation,
    pub sigma2: Permutation,
    pub taus: Vec<Permutation>,
    pub all_commute: bool,
    pub sigma1_order: u128,
    /// order(sigma1) = 2^(k-2), reading 2^0 = 1 at the degenerate k = 2.
    pub sigma1_order_ok: bool,
    pub sigma2_outside_sigma1: bool,
    pub tau_orders_ok: bool,
    pub generated_invariants: Vec<u64>,
    /// Generated group is (Z/2^(k-2)) x (Z/2)^(m+1) by abelian invariants.
    pub generated_invariants_ok: bool,
    pub fixed_points_ok: bool,
}

/// Build and check the family; caps k <= 7, m <= 4.
pub fn sigma_tau_cyclic2(k: u32, m: usize) -> Result<CyclicTwoFamily> {
    if !(2..=7).contains(&k) || m > 4 {
        return Err(Error::CapExceeded {
            what: "cyclic 2-group family parameters",
            needed: k as usize + m,
            cap: 11,
        });
    }
    let q: usize = 1 << k;
    let t: usize = 1 << m;
    let size = q * t;
    let idx = |a: usize, bits: usize| a * t + bits;

    let make = |f: &dyn Fn(usize, usize) -> (usize, usize)| -> Permutation {
        let mut images = vec![0usize; size];
        for a in 0..q {
            for bits in 0..t {
                let (a2, b2) = f(a, bits);
                images[idx(a, bits)] = idx(a2 % q, b2 % t);
            }
        }
        Permutation::from_images(images).expect("automorphism is a bijection")
    };

    // k = 2 is degenerate: 3 has order 2 mod 4, so the multiply-by-3 map
    // cannot have order 2^(k-2) = 1; the family takes sigma1 = id there
    let sigma1 = if k == 2 {
        Permutation::identity(size)
    } else {
        make(&|a, bits| ((3 * a) % q, bits))
    };
    let sigma2 = make(&|a, bits| ((q - a) % q, bits));
    let taus: Vec<Permutation> = (0..m)
        .map(|i| make(&move |a, bits| (a, bits ^ ((a & 1) << i))))
        .collect();

    let mut family = vec![sigma1.clone(), sigma2.clone()];
    family.extend(taus.iter().cloned());

    let all_commute = family
        .iter()
        .enumerate()
        .all(|(i, f)| family.iter().skip(i + 1).all(|g| f.commutes_with(g)));

    let sigma1_order = sigma1.order();
    let expected_sigma1 = if k == 2 { 1u128 } else { 1u128 << (k - 2) };
    let sigma1_order_ok = sigma1_order == expected_sigma1;

    let mut power = Permutation::identity(size);
    let mut sigma2_outside_sigma1 = true;
    loop {
        if power == sigma2 {
            sigma2_outside_sigma1 = false;
        }
        power = &power * &sigma1;
        if power.is_identity() {
            break;
        }
    }

    let tau_orders_ok = taus.iter().all(|t| t.order() == 2);

    let generated = enumerate_closure(size, &family, 1 << 14)?;
    let orders: Vec<u64> = generated.iter().map(|p| p.order() as u64).collect();
    let generated_invariants = invariants_from_orders(&orders);
    let mut expected: Vec<u64> = vec![2; m + 1];
    if k > 2 {
        expected.push(1 << (k - 2));
    }
    let expected = AbelianGroup::from_cyclic_orders(&expected);
    let generated_invariants_ok = generated_invariants == expected.invariant_factors();

    // fixed points of sigma2 are (2^(k-1) Z / 2^k Z) x (Z/2)^m and the
    // whole family fixes them
    let mut fixed_points_ok = true;
    for a in 0..q {
        for bits in 0..t {
            let x = idx(a, bits);
            let is_fixed = sigma2.apply(x) == x;
            let expected_fixed = a == 0 || 2 * a == q;
            if is_fixed != expected_fixed {
                fixed_points_ok = false;
            }
            if is_fixed && family.iter().any(|f| f.apply(x) != x) {
                fixed_points_ok = false;
            }
        }
    }

    Ok(CyclicTwoFamily {
        k,
        m,
        sigma1,
        sigma2,
        taus,
        all_commute,
        sigma1_order,
        sigma1_order_ok,
        sigma2_outside_sigma1,
        tau_orders_ok,
        generated_invariants,
        generated_invariants_ok,
        fixed_points_ok,
    })
}

// ---------------------------------------------------------------------
// nontrivial automorphism of an odd abelian group fixing a non-generator
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixCase {
    /// Multiply one prime-power coordinate component by d+1, where d is
    /// the order of g's projection there.
    CoordinateScale {
        coordinate: usize,
        prime: u64,
    },
    /// Invert a complement of the cyclic subgroup generated by g.
    ComplementInversion,
    Exhaustive,
}

#[derive(Debug, Clone)]
pub struct FixingAutomorphism {
    /// Total map on element indices of the group.
    pub map: Vec<usize>,
    pub case: FixCase,
}

/// A nontrivial automorphism of the odd abelian `group` fixing `g`, which
/// must not generate the group. Tries the coordinate-scale case, then
/// complement inversion, then exhaustive search; the result is verified
/// by application before it is returned.
pub fn odd_abelian_fixing_automorphism(
    group: &AbelianGroup,
    g: &Tuple,
) -> Result<FixingAutomorphism> {
    if group.order() % 2 == 0 {
        return Err(Error::Precondition("group order must be odd".into()));
    }
    if group.order() == 1 {
        return Err(Error::Precondition(
            "the trivial group has no nontrivial automorphism".into(),
        ));
    }
    if group.element_order(g) == group.order() {
        return Err(Error::Precondition("element generates the group".into()));
    }

    let auto = coordinate_scale_case(group, g)
        .or_else(|| complement_inversion_case(group, g))
        .or_else(|| exhaustive_case(group, g))
        .ok_or_else(|| Error::Internal("no fixing automorphism found".into()))?;
    verify_fixing(group, g, &auto)?;
    Ok(auto)
}

fn verify_fixing(group: &AbelianGroup, g: &Tuple, auto: &FixingAutomorphism) -> Result<()> {
    let n = group.order() as usize;
    let map = &auto.map;
    if map.len() != n {
        return Err(Error::Internal("map has wrong size".into()));
    }
    let mut seen = vec![false; n];
    for &v in map {
        if v >= n || seen[v] {
            return Err(Error::Internal("map is not a bijection".into()));
        }
        seen[v] = true;
    }
    if map[group.index_of(g)] != group.index_of(g) {
        return Err(Error::Internal("map does not fix g".into()));
    }
    if (0..n).all(|i| map[i] == i) {
        return Err(Error::Internal("map is trivial".into()));
    }
    let elems = group.elements();
    for a in 0..n {
        for b in 0..=a {
            let sum = group.index_of(&group.add(&elems[a], &elems[b]));
            let f_sum = group.index_of(&group.add(&elems[map[a]], &elems[map[b]]));
            if map[sum] != f_sum {
                return Err(Error::Internal("map is not additive".into()));
            }
        }
    }
    Ok(())
}

fn coordinate_scale_case(group: &AbelianGroup, g: &Tuple) -> Option<FixingAutomorphism> {
    for (i, &d) in group.invariant_factors().iter().enumerate() {
        let mut rest = d;
        let mut p = 3u64;
        while rest > 1 && p * p <= d {
            if rest % p == 0 {
                let mut pe = 1u64;
                while rest % p == 0 {
                    rest /= p;
                    pe *= p;
                }
                if let Some(auto) = try_scale(group, g, i, p, pe) {
                    return Some(auto);
                }
            }
            p += 2;
        }
        if rest > 1 {
            if let Some(auto) = try_scale(group, g, i, rest, rest) {
                return Some(auto);
            }
        }
    }
    None
}

fn try_scale(
    group: &AbelianGroup,
    g: &Tuple,
    coord: usize,
    p: u64,
    pe: u64,
) -> Option<FixingAutomorphism> {
    let gi = g[coord] % pe;
    if gi % p != 0 && gi != 0 {
        return None; // projection generates Z_(p^e)
    }
    let d = group.invariant_factors()[coord];
    let ord = pe / num_integer::gcd(gi, pe);
    let other = d / pe;
    let c = crt_pair(ord + 1, pe, 1, other);
    let map = scale_coordinate_map(group, coord, c);
    Some(FixingAutomorphism {
        map,
        case: FixCase::CoordinateScale {
            coordinate: coord,
            prime: p,
        },
    })
}

/// x = a mod m and x = b mod n for coprime m, n. Linear scan is plenty at
/// desk scale.
pub(crate) fn crt_pair(a: u64, m: u64, b: u64, n: u64) -> u64 {
    if n == 1 {
        return a % m;
    }
    if m == 1 {
        return b % n;
    }
    let mut x = a % m;
    while x % n != b % n {
        x += m;
    }
    x
}

pub(crate) fn scale_coordinate_map(group: &AbelianGroup, coord: usize, c: u64) -> Vec<usize> {
    let n = group.order() as usize;
    let d = group.invariant_factors()[coord];
    (0..n)
        .map(|i| {
            let mut t = group.tuple_of(i);
            t[coord] = (t[coord] as u128 * c as u128 % d as u128) as u64;
            group.index_of(&t)
        })
        .collect()
}

fn complement_inversion_case(group: &AbelianGroup, g: &Tuple) -> Option<FixingAutomorphism> {
    let n = group.order();
    let g_ord = group.element_order(g);
    if g_ord != group.exponent() || g_ord == n {
        return None;
    }
    // greedily grow a subgroup meeting <g> trivially; a maximal such
    // subgroup complements a cyclic subgroup of maximal order
    let g_span: std::collections::HashSet<usize> = group
        .subgroup_elements(&[g.clone()])
        .iter()
        .map(|t| group.index_of(t))
        .collect();
    let mut h_gens: Vec<Tuple> = Vec::new();
    let mut h_elems: Vec<Tuple> = vec![group.zero()];
    let target = (n / g_ord) as usize;
    for i in 0..n as usize {
        if h_elems.len() == target {
            break;
        }
        let x = group.tuple_of(i);
        let mut cand = h_gens.clone();
        cand.push(x);
        let span = group.subgroup_elements(&cand);
        if span
            .iter()
            .all(|t| group.index_of(t) == 0 || !g_span.contains(&group.index_of(t)))
        {
            h_gens = cand;
            h_elems = span;
        }
    }
    if h_elems.len() != target {
        return None;
    }
    let mut decomp: Vec<Option<(u64, Tuple)>> = vec![None; n as usize];
    for a in 0..g_ord {
        let ag = group.scale(a, g);
        for h in &h_elems {
            let x = group.add(&ag, h);
            decomp[group.index_of(&x)] = Some((a, h.clone()));
        }
    }
    if decomp.iter().any(|d| d.is_none()) {
        return None;
    }
    let map: Vec<usize> = decomp
        .into_iter()
        .map(|d| {
            let (a, h) = d.unwrap();
            group.index_of(&group.add(&group.scale(a, g), &group.neg(&h)))
        })
        .collect();
    Some(FixingAutomorphism {
        map,
        case: FixCase::ComplementInversion,
    })
}

fn exhaustive_case(group: &AbelianGroup, g: &Tuple) -> Option<FixingAutomorphism> {
    let f = group.to_finite_group();
    let whole: Vec<usize> = (0..f.order()).collect();
    let gi = group.index_of(g);
    for iso in f.isomorphisms(&whole, &whole) {
        if iso[&gi] == gi && whole.iter().any(|&x| iso[&x] != x) {
            let map: Vec<usize> = whole.iter().map(|&x| iso[&x]).collect();
            return Some(FixingAutomorphism {
                map,
                case: FixCase::Exhaustive,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explosion_family_small() {
        for n in 2..=8 {
            let fam = sigma_family_2explosion(n).unwrap();
            assert!(fam.homomorphism_ok, "hom law at n={n}");
            assert!(fam.injective_ok, "injectivity at n={n}");
            assert!(fam.fixed_points_ok, "fixed points at n={n}");
            assert_eq!(fam.log2_order, (n / 2) * (n / 2));
            assert_eq!(fam.fixed_point_count, 1 << (n - n / 2));
        }
    }

    #[test]
    fn explosion_family_n6_exceeds_n() {
        let fam = sigma_family_2explosion(6).unwrap();
        assert_eq!(fam.log2_order, 9);
        assert!(fam.log2_order > 6);
    }

    #[test]
    fn explosion_family_n7_fixed_points() {
        let fam = sigma_family_2explosion(7).unwrap();
        assert_eq!(fam.fixed_point_count, 1 << 4);
    }

    #[test]
    fn cyclic2_family_k4() {
        let fam = sigma_tau_cyclic2(4, 0).unwrap();
        assert!(fam.all_commute);
        assert_eq!(fam.sigma1_order, 4); // order of 3 mod 16
        assert!(fam.sigma1_order_ok);
        assert!(fam.sigma2_outside_sigma1);
        assert!(fam.generated_invariants_ok);
        assert!(fam.fixed_points_ok);
    }

    #[test]
    fn cyclic2_family_k2_degenerate() {
        let fam = sigma_tau_cyclic2(2, 0).unwrap();
        assert_eq!(fam.sigma1_order, 1);
        assert!(fam.sigma1_order_ok);
        assert!(fam.sigma2_outside_sigma1);
    }

    #[test]
    fn cyclic2_family_k3_m1_invariants() {
        let fam = sigma_tau_cyclic2(3, 1).unwrap();
        assert_eq!(fam.generated_invariants, vec![2, 2, 2]);
        assert!(fam.generated_invariants_ok);
    }

    #[test]
    fn odd_fix_z9() {
        // G = Z/9, g = 3: the map x -> 4x fixes 3 and is nontrivial
        let g9 = AbelianGroup::new(vec![9]).unwrap();
        let auto = odd_abelian_fixing_automorphism(&g9, &vec![3]).unwrap();
        assert_eq!(auto.map[g9.index_of(&vec![1])], g9.index_of(&vec![4]));
        assert_eq!(
            auto.case,
            FixCase::CoordinateScale {
                coordinate: 0,
                prime: 3
            }
        );
    }

    #[test]
    fn odd_fix_z3_squared() {
        let g = AbelianGroup::new(vec![3, 3]).unwrap();
        let auto = odd_abelian_fixing_automorphism(&g, &vec![1, 0]).unwrap();
        assert_eq!(auto.map[g.index_of(&vec![1, 0])], g.index_of(&vec![1, 0]));
    }

    #[test]
    fn odd_fix_identity_element() {
        let g5 = AbelianGroup::new(vec![5]).unwrap();
        let auto = odd_abelian_fixing_automorphism(&g5, &vec![0]).unwrap();
        assert_eq!(auto.map[g5.index_of(&vec![1])], g5.index_of(&vec![2]));
    }

    #[test]
    fn odd_fix_rejects_generators_and_even_groups() {
        let g5 = AbelianGroup::new(vec![5]).unwrap();
        assert!(odd_abelian_fixing_automorphism(&g5, &vec![1]).is_err());
        let g4 = AbelianGroup::new(vec![4]).unwrap();
        assert!(odd_abelian_fixing_automorphism(&g4, &vec![0]).is_err());
    }
}
