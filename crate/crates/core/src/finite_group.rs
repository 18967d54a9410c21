//! Abstract finite groups with enumerated elements.
//!
//! Elements are indices `0..n` with index 0 the identity. Small groups
//! carry a dense multiplication table; larger ones are backed by their
//! permutation elements and multiply through a lookup map. Groups built
//! from a `PermGroup` keep the breadth-first element enumeration, so the
//! index order is reproducible.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::perm_group::PermGroup;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Option<Vec<u32>>,
    perms: Option<PermBacking>,
    inv: Vec<u32>,
}

#[derive(Clone)]
struct PermBacking {
    degree: usize,
    elems: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

/// On-disk form: either a dense table or a permutation group plus the
/// element enumeration order.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum FiniteGroupData {
    Table {
        order: usize,
        table: Vec<Vec<u32>>,
    },
    Perms {
        perm_group: crate::perm_group::PermGroupData,
        elements: Vec<Permutation>,
    },
}

impl FiniteGroup {
    /// Build from a dense table `table[a][b] = a*b`. Checks the identity
    /// laws, inverses, and associativity (exhaustively for n <= 256, on a
    /// deterministic sample above that).
    pub fn from_table(table: Vec<Vec<u32>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Precondition("empty multiplication table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n {
                return Err(Error::Precondition("table is not square".into()));
            }
            for &x in row {
                if x as usize >= n {
                    return Err(Error::Precondition("table entry out of range".into()));
                }
                flat.push(x);
            }
        }
        let g = |a: usize, b: usize| flat[a * n + b] as usize;
        for a in 0..n {
            if g(0, a) != a || g(a, 0) != a {
                return Err(Error::Precondition("index 0 is not an identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if g(a, b) == 0 {
                    inv[a] = b as u32;
                }
            }
            if inv[a] == u32::MAX {
                return Err(Error::Precondition(format!("element {a} has no inverse")));
            }
        }
        let check = |a: usize, b: usize, c: usize| g(g(a, b), c) == g(a, g(b, c));
        if n <= 256 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(Error::Precondition(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut s: usize = 0x9e37;
            for _ in 0..50_000 {
                s = s.wrapping_mul(0x2545f491).wrapping_add(0x4f6c);
                let a = (s >> 8) % n;
                let b = (s >> 16) % n;
                let c = (s >> 24) % n;
                if !check(a, b, c) {
                    return Err(Error::Precondition(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            table: Some(flat),
            perms: None,
            inv,
        })
    }

    /// Enumerate a permutation group and wrap it as an abstract group.
    pub fn from_perm_group(group: &PermGroup, cap: usize) -> Result<Self> {
        let elems = group.elements(cap)?;
        FiniteGroup::from_perm_elements(group.degree(), elems)
    }

    /// Wrap an explicit element list (identity first, closed under
    /// products) as an abstract group.
    pub fn from_perm_elements(degree: usize, elems: Vec<Permutation>) -> Result<Self> {
        if elems.is_empty() || !elems[0].is_identity() {
            return Err(Error::Precondition(
                "element enumeration must start with the identity".into(),
            ));
        }
        let mut index = HashMap::with_capacity(elems.len());
        for (i, e) in elems.iter().enumerate() {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: e.degree(),
                });
            }
            if index.insert(e.clone(), i as u32).is_some() {
                return Err(Error::Precondition("duplicate element".into()));
            }
        }
        let n = elems.len();
        let mut inv = vec![u32::MAX; n];
        for (i, e) in elems.iter().enumerate() {
            let j = *index
                .get(&e.inverse())
                .ok_or_else(|| Error::Precondition("elements not closed under inverse".into()))?;
            inv[i] = j;
        }
        let backing = PermBacking {
            degree,
            elems,
            index,
        };
        let mut group = FiniteGroup {
            order: n,
            table: None,
            perms: Some(backing),
            inv,
        };
        if n <= 1024 {
            group.materialize_table()?;
        }
        Ok(group)
    }

    fn materialize_table(&mut self) -> Result<()> {
        if self.table.is_some() {
            return Ok(());
        }
        let n = self.order;
        let b = self.perms.as_ref().expect("perm backing");
        let mut flat = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let p = &b.elems[i] * &b.elems[j];
                flat[i * n + j] = *b.index.get(&p).ok_or_else(|| {
                    Error::Precondition("elements not closed under product".into())
                })?;
            }
        }
        self.table = Some(flat);
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.table {
            return t[a * self.order + b] as usize;
        }
        let backing = self.perms.as_ref().expect("group has a backing");
        let p = &backing.elems[a] * &backing.elems[b];
        backing.index[&p] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn conjugate(&self, a: usize, by: usize) -> usize {
        self.mul(self.mul(self.inv(by), a), by)
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = 0usize;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1usize, |e, a| num_integer::lcm(e, self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.order {
            for b in 0..a {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    /// Image of `g` under the regular embedding into Sym(|G|): the
    /// left-multiplication permutation `a -> g*a` of element indices.
    /// Images are fixed-point-free and order-preserving, and the map is
    /// a homomorphism for the crate's composition convention.
    pub fn regular_image(&self, g: usize) -> Permutation {
        let im: Vec<usize> = (0..self.order).map(|a| self.mul(g, a)).collect();
        Permutation::from_images(im).expect("left multiplication permutes the group")
    }

    /// The permutation element behind index `a`, when perm-backed.
    pub fn perm_of(&self, a: usize) -> Option<&Permutation> {
        self.perms.as_ref().map(|b| &b.elems[a])
    }

    pub fn perm_index(&self, p: &Permutation) -> Option<usize> {
        self.perms
            .as_ref()
            .and_then(|b| b.index.get(p).map(|&i| i as usize))
    }

    pub fn perm_degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|b| b.degree)
    }

    /// Subgroup generated by `seed`, as a sorted index list.
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0usize];
        let mut queue: VecDeque<usize> = VecDeque::new();
        queue.push_back(0);
        let gens: Vec<usize> = seed.iter().copied().filter(|&x| x != 0).collect();
        if gens.is_empty() {
            return out;
        }
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All subgroups, each a sorted index list, in a deterministic order.
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let trivial = vec![0usize];
        seen.insert(trivial.clone());
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            for x in 1..self.order {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                let mut seed = h.clone();
                seed.push(x);
                let bigger = self.closure(&seed);
                if seen.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// A small generating sequence for the subgroup `elems` (sorted
    /// indices): greedily add the least element not yet generated.
    pub fn generating_sequence(&self, elems: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut have = vec![0usize];
        for &x in elems {
            if have.binary_search(&x).is_err() {
                gens.push(x);
                have = self.closure(&gens);
                if have.len() == elems.len() {
                    break;
                }
            }
        }
        gens
    }

    /// All isomorphisms from the subgroup `dom` onto the subgroup `ran`
    /// (both sorted index lists), as total maps `dom -> ran` in a
    /// deterministic order. Backtracks over generator images and verifies
    /// multiplicativity on every pair.
    pub fn isomorphisms(&self, dom: &[usize], ran: &[usize]) -> Vec<HashMap<usize, usize>> {
        let mut out = Vec::new();
        if dom.len() != ran.len() {
            return out;
        }
        if dom.len() == 1 {
            let mut m = HashMap::new();
            m.insert(0usize, 0usize);
            out.push(m);
            return out;
        }
        let gens = self.generating_sequence(dom);
        let mut images: Vec<usize> = Vec::new();
        self.iso_backtrack(dom, ran, &gens, &mut images, &mut out);
        out
    }

    fn iso_backtrack(
        &self,
        dom: &[usize],
        ran: &[usize],
        gens: &[usize],
        images: &mut Vec<usize>,
        out: &mut Vec<HashMap<usize, usize>>,
    ) {
        if images.len() == gens.len() {
            if let Some(map) = self.build_hom(dom, gens, images) {
                // bijectivity onto ran, then full multiplicativity
                let vals: BTreeSet<usize> = map.values().copied().collect();
                if vals.len() == dom.len() && vals.iter().all(|v| ran.binary_search(v).is_ok()) {
                    let good = dom.iter().all(|&x| {
                        dom.iter()
                            .all(|&y| map[&self.mul(x, y)] == self.mul(map[&x], map[&y]))
                    });
                    if good {
                        out.push(map);
                    }
                }
            }
            return;
        }
        let g = gens[images.len()];
        let g_ord = self.element_order(g);
        for &candidate in ran {
            if self.element_order(candidate) == g_ord {
                images.push(candidate);
                self.iso_backtrack(dom, ran, gens, images, out);
                images.pop();
            }
        }
    }

    /// Extend generator images to a map on the generated subgroup by
    /// breadth-first closure; `None` on inconsistency.
    fn build_hom(
        &self,
        dom: &[usize],
        gens: &[usize],
        images: &[usize],
    ) -> Option<HashMap<usize, usize>> {
        let mut map: HashMap<usize, usize> = HashMap::with_capacity(dom.len());
        map.insert(0, 0);
        let mut queue: VecDeque<usize> = VecDeque::new();
        queue.push_back(0);
        while let Some(x) = queue.pop_front() {
            let fx = map[&x];
            for (&g, &fg) in gens.iter().zip(images.iter()) {
                let y = self.mul(x, g);
                let fy = self.mul(fx, fg);
                match map.get(&y) {
                    Some(&v) => {
                        if v != fy {
                            return None;
                        }
                    }
                    None => {
                        map.insert(y, fy);
                        queue.push_back(y);
                    }
                }
            }
        }
        if map.len() == dom.len() {
            Some(map)
        } else {
            None
        }
    }

    // ---- constructors for the standard small families ----

    pub fn trivial() -> Self {
        FiniteGroup::from_table(vec![vec![0]]).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n)
            .map(|a| (0..n).map(|b| ((a + b) % n) as u32).collect())
            .collect();
        FiniteGroup::from_table(table).unwrap()
    }

    /// Dihedral group of order 2n, elements `r^a` (indices 0..n) and
    /// `r^a s` (indices n..2n).
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let idx = |rot: usize, flip: bool| if flip { n + rot } else { rot };
        let mut table = vec![vec![0u32; 2 * n]; 2 * n];
        for a in 0..2 * n {
            for b in 0..2 * n {
                let (ra, fa) = if a < n { (a, false) } else { (a - n, true) };
                let (rb, fb) = if b < n { (b, false) } else { (b - n, true) };
                // (r^ra s^fa)(r^rb s^fb): move s^fa past r^rb
                let rot = if fa {
                    (ra + n - rb % n) % n
                } else {
                    (ra + rb) % n
                };
                let flip = fa ^ fb;
                table[a][b] = idx(rot, flip) as u32;
            }
        }
        FiniteGroup::from_table(table).unwrap()
    }

    /// Quaternion group: elements 1, -1, i, -i, j, -j, k, -k.
    pub fn quaternion8() -> Self {
        // encode q = sign * unit with units 1,i,j,k
        let unit = |x: usize| x / 2;
        let sign = |x: usize| if x % 2 == 0 { 1i32 } else { -1i32 };
        let encode = |u: usize, s: i32| 2 * u + usize::from(s < 0);
        // unit multiplication table with result sign
        let umul = |a: usize, b: usize| -> (usize, i32) {
            match (a, b) {
                (0, x) => (x, 1),
                (x, 0) => (x, 1),
                (1, 1) => (0, -1),
                (2, 2) => (0, -1),
                (3, 3) => (0, -1),
                (1, 2) => (3, 1),
                (2, 1) => (3, -1),
                (2, 3) => (1, 1),
                (3, 2) => (1, -1),
                (3, 1) => (2, 1),
                (1, 3) => (2, -1),
                _ => unreachable!(),
            }
        };
        let mut table = vec![vec![0u32; 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                let (u, s) = umul(unit(a), unit(b));
                table[a][b] = encode(u, sign(a) * sign(b) * s) as u32;
            }
        }
        FiniteGroup::from_table(table).unwrap()
    }

    pub fn symmetric(n: usize) -> Self {
        FiniteGroup::from_perm_group(&PermGroup::symmetric(n), 50_000).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        FiniteGroup::from_perm_group(&PermGroup::alternating(n), 50_000).unwrap()
    }

    /// Direct product, with indices `(a, b) -> a * |H| + b` and the two
    /// coordinate embeddings.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> (Self, Vec<usize>, Vec<usize>) {
        let ng = g.order;
        let nh = h.order;
        let n = ng * nh;
        let mut table = vec![vec![0u32; n]; n];
        for a1 in 0..ng {
            for b1 in 0..nh {
                for a2 in 0..ng {
                    for b2 in 0..nh {
                        table[a1 * nh + b1][a2 * nh + b2] =
                            (g.mul(a1, a2) * nh + h.mul(b1, b2)) as u32;
                    }
                }
            }
        }
        let product = FiniteGroup::from_table(table).unwrap();
        let embed_g: Vec<usize> = (0..ng).map(|a| a * nh).collect();
        let embed_h: Vec<usize> = (0..nh).collect();
        (product, embed_g, embed_h)
    }

    pub fn to_data(&self) -> FiniteGroupData {
        if let Some(b) = &self.perms {
            // prefer the compact perm form when available and large
            if self.order > 64 {
                let group = PermGroup::from_element_closure(b.degree, &b.elems)
                    .expect("elements close under product");
                return FiniteGroupData::Perms {
                    perm_group: group.to_data(),
                    elements: b.elems.clone(),
                };
            }
        }
        let n = self.order;
        let table = (0..n)
            .map(|a| (0..n).map(|b| self.mul(a, b) as u32).collect())
            .collect();
        FiniteGroupData::Table { order: n, table }
    }

    pub fn from_data(data: FiniteGroupData) -> Result<Self> {
        match data {
            FiniteGroupData::Table { order, table } => {
                if table.len() != order {
                    return Err(Error::Precondition("order does not match table".into()));
                }
                FiniteGroup::from_table(table)
            }
            FiniteGroupData::Perms {
                perm_group,
                elements,
            } => FiniteGroup::from_perm_elements(perm_group.degree, elements),
        }
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order={})", self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_arithmetic() {
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(z6.order(), 6);
        assert_eq!(z6.mul(4, 5), 3);
        assert_eq!(z6.inv(2), 4);
        assert_eq!(z6.element_order(1), 6);
        assert_eq!(z6.element_order(2), 3);
        assert!(z6.is_abelian());
    }

    #[test]
    fn dihedral_group_structure() {
        let d4 = FiniteGroup::dihedral(4);
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        assert_eq!(d4.center().len(), 2);
        // every reflection has order 2
        for a in 4..8 {
            assert_eq!(d4.element_order(a), 2);
        }
    }

    #[test]
    fn quaternion_group_structure() {
        let q8 = FiniteGroup::quaternion8();
        assert_eq!(q8.order(), 8);
        assert!(!q8.is_abelian());
        assert_eq!(q8.center(), vec![0, 1]);
        // exactly one element of order 2
        let twos: Vec<usize> = (0..8).filter(|&a| q8.element_order(a) == 2).collect();
        assert_eq!(twos, vec![1]);
        // six elements of order 4
        assert_eq!((0..8).filter(|&a| q8.element_order(a) == 4).count(), 6);
    }

    #[test]
    fn symmetric_as_finite_group() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.element_order(0), 1);
        assert!(!s3.is_abelian());
        assert_eq!(s3.center(), vec![0]);
    }

    #[test]
    fn direct_product_embeddings() {
        let (g, e1, e2) =
            FiniteGroup::direct_product(&FiniteGroup::symmetric(3), &FiniteGroup::cyclic(2));
        assert_eq!(g.order(), 12);
        assert_eq!(g.center().len(), 2);
        // embeddings are homomorphisms
        let s3 = FiniteGroup::symmetric(3);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(g.mul(e1[a], e1[b]), e1[s3.mul(a, b)]);
            }
        }
        assert_eq!(e2.len(), 2);
    }

    #[test]
    fn klein_four_from_product() {
        let (v4, _, _) =
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(v4.order(), 4);
        assert_eq!((0..4).filter(|&a| v4.element_order(a) == 2).count(), 3);
    }

    #[test]
    fn subgroup_lattice_of_s3() {
        let s3 = FiniteGroup::symmetric(3);
        let subs = s3.all_subgroups();
        assert_eq!(subs.len(), 6); // 1, three Z2, Z3, S3
        let sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 3);
        assert_eq!(sizes.iter().filter(|&&s| s == 3).count(), 1);
    }

    #[test]
    fn isomorphism_enumeration() {
        let s3 = FiniteGroup::symmetric(3);
        let subs = s3.all_subgroups();
        let z3: Vec<usize> = subs.iter().find(|s| s.len() == 3).unwrap().clone();
        let isos = s3.isomorphisms(&z3, &z3);
        assert_eq!(isos.len(), 2); // identity and inversion
        let whole: Vec<usize> = (0..6).collect();
        assert_eq!(s3.isomorphisms(&whole, &whole).len(), 6); // Aut(S3) = Inn
    }

    #[test]
    fn table_serialization_roundtrip() {
        let d4 = FiniteGroup::dihedral(4);
        let data = d4.to_data();
        let json = serde_json::to_string(&data).unwrap();
        let back = FiniteGroup::from_data(serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.order(), 8);
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(back.mul(a, b), d4.mul(a, b));
            }
        }
    }
}
