//! Finite abelian groups in invariant-factor normal form.
//!
//! Elements are tuples of residues, one per invariant factor. Isomorphism
//! checks reduce to equality of factor lists, and quotient types are read
//! off the Smith normal form of a relation matrix.

use crate::error::{Error, Result};
use crate::finite_group::FiniteGroup;
use crate::smith::quotient_invariants;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    /// `d_1 | d_2 | ... | d_k`, each at least 2. Empty for the trivial group.
    invariant_factors: Vec<u64>,
}

pub type Tuple = Vec<u64>;

impl AbelianGroup {
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        for w in invariant_factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::Precondition(format!(
                    "invariant factors must form a divisor chain: {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        if invariant_factors.iter().any(|&d| d < 2) {
            return Err(Error::Precondition(
                "invariant factors must be at least 2".into(),
            ));
        }
        Ok(AbelianGroup { invariant_factors })
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            invariant_factors: vec![],
        }
    }

    /// Normalize an arbitrary list of cyclic orders into invariant factors
    /// by splitting into prime powers and realigning largest-with-largest.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &n in orders {
            let mut n = n;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    let mut e = 0;
                    while n % p == 0 {
                        n /= p;
                        e += 1;
                    }
                    by_prime.entry(p).or_default().push(e);
                }
                p += 1;
            }
            if n > 1 {
                by_prime.entry(n).or_default().push(1);
            }
        }
        let rank = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; rank];
        for (p, mut exps) in by_prime {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (i, e) in exps.into_iter().enumerate() {
                factors[i] *= p.pow(e);
            }
        }
        factors.reverse(); // ascending divisor chain
        AbelianGroup {
            invariant_factors: factors,
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> Tuple {
        vec![0; self.rank()]
    }

    pub fn add(&self, a: &Tuple, b: &Tuple) -> Tuple {
        a.iter()
            .zip(b)
            .zip(&self.invariant_factors)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect()
    }

    pub fn neg(&self, a: &Tuple) -> Tuple {
        a.iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &d)| (d - x) % d)
            .collect()
    }

    pub fn scale(&self, k: u64, a: &Tuple) -> Tuple {
        a.iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &d)| (x as u128 * k as u128 % d as u128) as u64)
            .collect()
    }

    pub fn element_order(&self, a: &Tuple) -> u64 {
        a.iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &d)| d / num_integer::gcd(x, d))
            .fold(1, num_integer::lcm)
    }

    pub fn index_of(&self, a: &Tuple) -> usize {
        let mut idx = 0usize;
        for (x, d) in a.iter().zip(&self.invariant_factors) {
            idx = idx * (*d as usize) + *x as usize;
        }
        idx
    }

    pub fn tuple_of(&self, mut idx: usize) -> Tuple {
        let mut out = vec![0u64; self.rank()];
        for i in (0..self.rank()).rev() {
            let d = self.invariant_factors[i] as usize;
            out[i] = (idx % d) as u64;
            idx /= d;
        }
        out
    }

    pub fn elements(&self) -> Vec<Tuple> {
        (0..self.order() as usize)
            .map(|i| self.tuple_of(i))
            .collect()
    }

    /// Coordinate generator of the i-th factor.
    pub fn basis(&self, i: usize) -> Tuple {
        let mut t = self.zero();
        t[i] = 1;
        t
    }

    /// Multiplication-table form, index 0 the identity.
    pub fn to_finite_group(&self) -> FiniteGroup {
        let n = self.order() as usize;
        let elems: Vec<Tuple> = self.elements();
        let table: Vec<Vec<u32>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| self.index_of(&self.add(&elems[a], &elems[b])) as u32)
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table).expect("abelian table is a group")
    }

    /// Invariant factors of the subgroup generated by `gens`, computed
    /// independently of any matrix route: enumerate the subgroup and read
    /// the p-primary types off element-order counts.
    pub fn subgroup_invariants(&self, gens: &[Tuple]) -> Vec<u64> {
        let elems = self.subgroup_elements(gens);
        invariants_from_orders(
            &elems
                .iter()
                .map(|t| self.element_order(t))
                .collect::<Vec<_>>(),
        )
    }

    pub fn subgroup_elements(&self, gens: &[Tuple]) -> Vec<Tuple> {
        let mut seen = std::collections::HashSet::new();
        let mut out = vec![self.zero()];
        seen.insert(self.zero());
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(self.zero());
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(y.clone()) {
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        out
    }

    /// Invariant factors of the quotient by the subgroup generated by
    /// `gens`, via the Smith normal form of the relation matrix.
    pub fn quotient_invariants(&self, gens: &[Tuple]) -> Vec<u64> {
        let k = self.rank();
        let mut cols: Vec<Vec<i128>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if i == j {
                            self.invariant_factors[i] as i128
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        for g in gens {
            cols.push(g.iter().map(|&x| x as i128).collect());
        }
        quotient_invariants(k, &cols)
    }

    /// A subgroup `B_0 <= self` isomorphic to `self / <gens>`, returned as
    /// generators realizing each invariant factor of the quotient. The
    /// embedding works prime by prime: the quotient's p-type is dominated
    /// by the group's p-type, so each quotient factor of order `p^m` sits
    /// inside a coordinate factor of order `p^e` (m <= e) as the multiple
    /// `(d/p^m) * basis`. The result is verified against an element-order
    /// count of the generated subgroup.
    pub fn quotient_subgroup(&self, gens: &[Tuple]) -> Result<(Vec<Tuple>, Vec<u64>)> {
        let target = self.quotient_invariants(gens);
        if target.is_empty() {
            return Ok((vec![], vec![]));
        }

        // per prime: quotient exponents (descending) matched against the
        // group's coordinate exponents (descending)
        let mut primes: Vec<u64> = Vec::new();
        for &d in target.iter().chain(self.invariant_factors.iter()) {
            let mut n = d;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    primes.push(p);
                    while n % p == 0 {
                        n /= p;
                    }
                }
                p += 1;
            }
            if n > 1 {
                primes.push(n);
            }
        }
        primes.sort_unstable();
        primes.dedup();

        let vp = |mut n: u64, p: u64| {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            e
        };

        // collect generators per quotient factor index, combined across primes
        let mut combined: Vec<Tuple> = vec![self.zero(); target.len()];
        for &p in &primes {
            // group coordinates sorted by descending p-exponent
            let mut coords: Vec<(u32, usize)> = self
                .invariant_factors
                .iter()
                .enumerate()
                .map(|(i, &d)| (vp(d, p), i))
                .filter(|&(e, _)| e > 0)
                .collect();
            coords.sort_unstable_by(|a, b| b.cmp(a));
            // quotient factors sorted by descending p-exponent, remembering
            // which target factor they belong to
            let mut quo: Vec<(u32, usize)> = target
                .iter()
                .enumerate()
                .map(|(i, &d)| (vp(d, p), i))
                .filter(|&(e, _)| e > 0)
                .collect();
            quo.sort_unstable_by(|a, b| b.cmp(a));

            for (qi, &(m, tf)) in quo.iter().enumerate() {
                let Some(&(e, coord)) = coords.get(qi) else {
                    return Err(Error::Internal(
                        "quotient p-type not dominated by group p-type".into(),
                    ));
                };
                if m > e {
                    return Err(Error::Internal(
                        "quotient p-type not dominated by group p-type".into(),
                    ));
                }
                let d = self.invariant_factors[coord];
                let gen_of_order_pm = self.scale(d / p.pow(m), &self.basis(coord));
                combined[tf] = self.add(&combined[tf], &gen_of_order_pm);
            }
        }

        let got = self.subgroup_invariants(&combined);
        if got != target {
            return Err(Error::Internal(format!(
                "embedded subgroup has invariants {got:?}, expected {target:?}"
            )));
        }
        Ok((combined, target))
    }
}

/// Invariant factors of an abelian group given the multiset of its
/// element orders. For each prime p, the number of parts of the p-type
/// that are >= j is log_p of the ratio of consecutive counts of elements
/// killed by p^j.
pub fn invariants_from_orders(orders: &[u64]) -> Vec<u64> {
    let n = orders.len() as u64;
    if n <= 1 {
        return vec![];
    }
    let mut primes: Vec<u64> = Vec::new();
    {
        let mut m = n;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                primes.push(p);
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 1;
        }
        if m > 1 {
            primes.push(m);
        }
    }
    let mut cyclic_orders: Vec<u64> = Vec::new();
    for &p in &primes {
        // counts[j] = number of elements of order dividing p^j
        let mut counts = vec![1u64];
        for j in 1.. {
            let pj = p.pow(j);
            let count = orders.iter().filter(|&&o| pj % o == 0).count() as u64;
            if count == *counts.last().unwrap() {
                break;
            }
            counts.push(count);
        }
        // the number of parts of the p-type that are >= j is
        // log_p(counts[j] / counts[j-1])
        let mut parts_ge: Vec<u32> = Vec::new();
        for j in 1..counts.len() {
            let ratio = counts[j] / counts[j - 1];
            let mut parts = 0u32;
            let mut r = ratio;
            while r > 1 {
                r /= p;
                parts += 1;
            }
            parts_ge.push(parts);
        }
        // part i (0-based, largest first) has exponent = #{j : parts_ge[j] > i}
        let max_parts = parts_ge.first().copied().unwrap_or(0);
        for i in 0..max_parts {
            let exp = parts_ge.iter().filter(|&&c| c > i).count() as u32;
            cyclic_orders.push(p.pow(exp));
        }
    }
    AbelianGroup::from_cyclic_orders(&cyclic_orders)
        .invariant_factors()
        .to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_from_cyclic_orders() {
        let g = AbelianGroup::from_cyclic_orders(&[2, 4]);
        assert_eq!(g.invariant_factors(), &[2, 4]);
        let g = AbelianGroup::from_cyclic_orders(&[2, 3]);
        assert_eq!(g.invariant_factors(), &[6]);
        let g = AbelianGroup::from_cyclic_orders(&[12, 18]);
        assert_eq!(g.invariant_factors(), &[6, 36]);
    }

    #[test]
    fn rejects_broken_chains() {
        assert!(AbelianGroup::new(vec![2, 3]).is_err());
        assert!(AbelianGroup::new(vec![1]).is_err());
        assert!(AbelianGroup::new(vec![2, 4, 8]).is_ok());
    }

    #[test]
    fn element_orders() {
        let g = AbelianGroup::new(vec![2, 4]).unwrap();
        assert_eq!(g.element_order(&vec![0, 0]), 1);
        assert_eq!(g.element_order(&vec![1, 0]), 2);
        assert_eq!(g.element_order(&vec![0, 1]), 4);
        assert_eq!(g.element_order(&vec![1, 2]), 2);
    }

    #[test]
    fn quotient_trivial_subgroup_is_whole() {
        let g = AbelianGroup::new(vec![2, 4]).unwrap();
        let (gens, inv) = g.quotient_subgroup(&[]).unwrap();
        assert_eq!(inv, vec![2, 4]);
        assert_eq!(g.subgroup_elements(&gens).len(), 8);
    }

    #[test]
    fn quotient_z4_by_two() {
        let g = AbelianGroup::new(vec![4]).unwrap();
        let (gens, inv) = g.quotient_subgroup(&[vec![2]]).unwrap();
        assert_eq!(inv, vec![2]);
        assert_eq!(gens, vec![vec![2]]);
    }

    #[test]
    fn quotient_z2_x_z4_by_diagonal() {
        let g = AbelianGroup::new(vec![2, 4]).unwrap();
        let (gens, inv) = g.quotient_subgroup(&[vec![1, 2]]).unwrap();
        assert_eq!(inv, vec![4]);
        assert_eq!(g.subgroup_invariants(&gens), vec![4]);
    }

    #[test]
    fn invariants_from_order_counts() {
        let g = AbelianGroup::new(vec![2, 2, 4]).unwrap();
        let orders: Vec<u64> = g.elements().iter().map(|t| g.element_order(t)).collect();
        assert_eq!(invariants_from_orders(&orders), vec![2, 2, 4]);
        let g = AbelianGroup::new(vec![3, 9]).unwrap();
        let orders: Vec<u64> = g.elements().iter().map(|t| g.element_order(t)).collect();
        assert_eq!(invariants_from_orders(&orders), vec![3, 9]);
    }

    #[test]
    fn to_finite_group_is_consistent() {
        let g = AbelianGroup::new(vec![2, 4]).unwrap();
        let f = g.to_finite_group();
        assert_eq!(f.order(), 8);
        assert!(f.is_abelian());
        assert_eq!(f.element_order(g.index_of(&vec![0, 1])), 4);
    }

    #[test]
    fn serde_format() {
        let g = AbelianGroup::new(vec![2, 6]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"invariant_factors":[2,6]}"#);
    }
}
