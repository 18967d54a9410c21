//! Centralizers, normalizers and conjugacy search.
//!
//! The centralizer search is a backtrack over the stabilizer chain of the
//! ambient group with constraint propagation: fixing one image `g(x) = y`
//! forces `g(s(x)) = s(y)` for every target `s`, so images spread across
//! whole orbits of the target set and the search visits little more than
//! the centralizer itself. An exhaustive-enumeration route is kept as an
//! independent oracle and as the engine for normalizers, which are only
//! offered at enumerable scale.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::perm_group::PermGroup;

/// Elements of the centralizer of `targets` in `group`, found by chain
/// backtrack with propagation. Errors once more than `cap` elements exist.
pub fn centralizer_elements(
    group: &PermGroup,
    targets: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>> {
    for t in targets {
        if !group.contains(t) {
            return Err(Error::NotInGroup);
        }
    }
    let degree = group.degree();
    let live: Vec<&Permutation> = targets.iter().filter(|t| !t.is_identity()).collect();
    if live.is_empty() {
        return group.elements(cap);
    }
    let constraints: Vec<(Permutation, Permutation)> =
        live.iter().map(|s| ((*s).clone(), s.inverse())).collect();

    let mut search = Search {
        constraints: &constraints,
        pmap: vec![None; degree],
        pinv: vec![None; degree],
        found: Vec::new(),
        cap,
    };
    let id = Permutation::identity(degree);
    search.dfs(group, 0, &id)?;
    Ok(search.found)
}

struct Search<'a> {
    constraints: &'a [(Permutation, Permutation)],
    pmap: Vec<Option<usize>>,
    pinv: Vec<Option<usize>>,
    found: Vec<Permutation>,
    cap: usize,
}

impl Search<'_> {
    /// Assign g(x) = y and propagate; records touched points in `trail`
    /// for undo. Returns false on contradiction.
    fn assign(&mut self, x: usize, y: usize, trail: &mut Vec<usize>) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            match self.pmap[x] {
                Some(v) => {
                    if v != y {
                        return false;
                    }
                }
                None => {
                    if let Some(u) = self.pinv[y] {
                        if u != x {
                            return false;
                        }
                        continue;
                    }
                    self.pmap[x] = Some(y);
                    self.pinv[y] = Some(x);
                    trail.push(x);
                    for (s, sinv) in self.constraints {
                        queue.push((s.apply(x), s.apply(y)));
                        queue.push((sinv.apply(x), sinv.apply(y)));
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, trail: &[usize]) {
        for &x in trail {
            let y = self.pmap[x].take().expect("trail point was assigned");
            self.pinv[y] = None;
        }
    }

    fn dfs(&mut self, group: &PermGroup, level: usize, prefix: &Permutation) -> Result<()> {
        if level == group.chain().len() {
            let ok = self
                .constraints
                .iter()
                .all(|(s, _)| prefix.commutes_with(s));
            if ok {
                if self.found.len() >= self.cap {
                    return Err(Error::CapExceeded {
                        what: "centralizer elements",
                        needed: self.found.len() + 1,
                        cap: self.cap,
                    });
                }
                self.found.push(prefix.clone());
            }
            return Ok(());
        }
        let beta = group.chain()[level].base_point;
        let forced = self.pmap[beta];
        for oi in 0..group.chain()[level].orbit.len() {
            let gamma = group.chain()[level].orbit[oi];
            let y = prefix.apply(gamma);
            if let Some(v) = forced {
                if v != y {
                    continue;
                }
            }
            let mut trail = Vec::new();
            if self.assign(beta, y, &mut trail) {
                let t = group.chain()[level].transversal[gamma]
                    .as_ref()
                    .expect("orbit point has transversal");
                let next = prefix * t;
                let r = self.dfs(group, level + 1, &next);
                self.undo(&trail);
                r?;
            } else {
                self.undo(&trail);
            }
        }
        Ok(())
    }
}

/// The centralizer `C_G(S)` as a group.
pub fn centralizer(group: &PermGroup, targets: &[Permutation], cap: usize) -> Result<PermGroup> {
    let elems = centralizer_elements(group, targets, cap)?;
    PermGroup::from_element_closure(group.degree(), &elems)
}

/// Exhaustive-enumeration route for the centralizer: the independent
/// oracle the backtrack is checked against.
pub fn centralizer_by_enumeration(
    group: &PermGroup,
    targets: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>> {
    for t in targets {
        if !group.contains(t) {
            return Err(Error::NotInGroup);
        }
    }
    let elems = group.elements(cap)?;
    Ok(elems
        .into_iter()
        .filter(|g| targets.iter().all(|s| g.commutes_with(s)))
        .collect())
}

/// `C_G(C_G(S))`, computed through the generators of the inner centralizer.
pub fn double_centralizer(
    group: &PermGroup,
    targets: &[Permutation],
    cap: usize,
) -> Result<PermGroup> {
    let inner = centralizer(group, targets, cap)?;
    centralizer(group, inner.generators(), cap)
}

/// Generators of the centralizer of a single permutation inside the full
/// symmetric group of its degree: each cycle as a rotation, plus a
/// parallel swap for each pair of consecutive same-length cycles (fixed
/// points count as cycles of length one).
pub fn full_symmetric_centralizer_gens(p: &Permutation) -> Vec<Permutation> {
    let degree = p.degree();
    let mut all_cycles: Vec<Vec<usize>> = p.cycles();
    for f in p.fixed_points() {
        all_cycles.push(vec![f]);
    }
    all_cycles.sort_by_key(|c| (c.len(), c[0]));

    let mut gens = Vec::new();
    for c in &all_cycles {
        if c.len() >= 2 {
            gens.push(Permutation::from_cycles(degree, &[c.clone()]).unwrap());
        }
    }
    for w in all_cycles.windows(2) {
        if w[0].len() == w[1].len() {
            let mut images: Vec<usize> = (0..degree).collect();
            for j in 0..w[0].len() {
                images[w[0][j]] = w[1][j];
                images[w[1][j]] = w[0][j];
            }
            gens.push(Permutation::from_images(images).unwrap());
        }
    }
    gens
}

/// Normalizer `N_G(H)` by enumeration; desk scale only.
pub fn normalizer(group: &PermGroup, subgroup: &PermGroup, cap: usize) -> Result<PermGroup> {
    if !subgroup.is_subgroup_of(group) {
        return Err(Error::NotInGroup);
    }
    let elems = group.elements(cap)?;
    let normalizing: Vec<Permutation> = elems
        .into_iter()
        .filter(|g| {
            subgroup
                .generators()
                .iter()
                .all(|h| subgroup.contains(&h.conjugate_by(g)))
        })
        .collect();
    PermGroup::from_element_closure(group.degree(), &normalizing)
}

/// Some `g` in `group` with `a^g = b`, or `None` if they are not
/// conjugate. Full symmetric ambients use direct cycle matching; other
/// groups fall back to enumeration under the cap.
pub fn conjugacy_witness(
    group: &PermGroup,
    a: &Permutation,
    b: &Permutation,
    cap: usize,
) -> Result<Option<Permutation>> {
    if !group.contains(a) || !group.contains(b) {
        return Err(Error::NotInGroup);
    }
    if a == b {
        return Ok(Some(Permutation::identity(group.degree())));
    }
    if a.cycle_type() != b.cycle_type() {
        return Ok(None);
    }
    if group.is_full_symmetric() {
        let w = match_cycles(a, b);
        debug_assert_eq!(&a.conjugate_by(&w), b);
        return Ok(Some(w));
    }
    for g in group.elements(cap)? {
        if &a.conjugate_by(&g) == b {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// A permutation `w` with `a^w = b`, built by matching cycles of equal
/// length in least-point order. Requires equal cycle types.
pub fn match_cycles(a: &Permutation, b: &Permutation) -> Permutation {
    assert_eq!(a.cycle_type(), b.cycle_type(), "cycle types must agree");
    let degree = a.degree();
    let key = |c: &Vec<usize>| (c.len(), c[0]);
    let mut ca: Vec<Vec<usize>> = a.cycles();
    let mut cb: Vec<Vec<usize>> = b.cycles();
    for f in a.fixed_points() {
        ca.push(vec![f]);
    }
    for f in b.fixed_points() {
        cb.push(vec![f]);
    }
    ca.sort_by_key(key);
    cb.sort_by_key(key);
    let mut images = vec![usize::MAX; degree];
    for (x, y) in ca.iter().zip(cb.iter()) {
        for j in 0..x.len() {
            images[x[j]] = y[j];
        }
    }
    let m = Permutation::from_images(images).expect("cycle matching is a bijection");
    // conjugation relabels points by the inverse of the witness, so the
    // point map sending a's cycles onto b's is inverted here
    let w = m.inverse();
    if &a.conjugate_by(&w) == b {
        w
    } else {
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let v: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &v).unwrap()
    }

    #[test]
    fn centralizer_of_identity_is_whole_group() {
        let s3 = PermGroup::symmetric(3);
        let c = centralizer(&s3, &[Permutation::identity(3)], 1000).unwrap();
        assert_eq!(c.order(), s3.order());
    }

    #[test]
    fn centralizer_of_three_cycle_in_s3() {
        let s3 = PermGroup::symmetric(3);
        let c = centralizer(&s3, &[cyc(3, &[&[0, 1, 2]])], 1000).unwrap();
        assert_eq!(c.order_u128(), Some(3));
    }

    #[test]
    fn centralizer_of_double_transposition_in_s4() {
        let s4 = PermGroup::symmetric(4);
        let c = centralizer(&s4, &[cyc(4, &[&[0, 1], &[2, 3]])], 1000).unwrap();
        assert_eq!(c.order_u128(), Some(8));
    }

    #[test]
    fn backtrack_agrees_with_enumeration() {
        let groups = vec![
            PermGroup::symmetric(4),
            PermGroup::symmetric(5),
            PermGroup::alternating(5),
            PermGroup::dihedral(6),
        ];
        for g in groups {
            let targets = vec![g.generators()[0].clone()];
            let mut fast = centralizer_elements(&g, &targets, 100_000).unwrap();
            let mut slow = centralizer_by_enumeration(&g, &targets, 100_000).unwrap();
            fast.sort();
            slow.sort();
            assert_eq!(fast, slow, "group of order {}", g.order());
        }
    }

    #[test]
    fn double_centralizer_examples() {
        // C^2(five-cycle) in S_5 is the cyclic group it generates
        let s5 = PermGroup::symmetric(5);
        let five = cyc(5, &[&[0, 1, 2, 3, 4]]);
        let dc = double_centralizer(&s5, &[five.clone()], 100_000).unwrap();
        assert_eq!(dc.order_u128(), Some(5));
        assert!(dc.contains(&five));

        // C^2((0 1)) in S_4 is <(0 1), (2 3)>
        let s4 = PermGroup::symmetric(4);
        let dc = double_centralizer(&s4, &[cyc(4, &[&[0, 1]])], 100_000).unwrap();
        assert_eq!(dc.order_u128(), Some(4));
        assert!(dc.contains(&cyc(4, &[&[2, 3]])));

        // C^2 of the generators of S_3 is all of S_3
        let s3 = PermGroup::symmetric(3);
        let dc = double_centralizer(&s3, s3.generators(), 100_000).unwrap();
        assert_eq!(dc.order_u128(), Some(6));
    }

    #[test]
    fn full_symmetric_centralizer_gens_have_right_order() {
        // centralizer of (0 1 2)(3 4 5) in S_6 has order 3*3*2 = 18
        let p = cyc(6, &[&[0, 1, 2], &[3, 4, 5]]);
        let gens = full_symmetric_centralizer_gens(&p);
        let c = PermGroup::from_generators(6, gens).unwrap();
        assert_eq!(c.order_u128(), Some(18));
        let s6 = PermGroup::symmetric(6);
        let direct = centralizer(&s6, &[p], 100_000).unwrap();
        assert_eq!(direct.order(), c.order());
        assert!(direct.generators().iter().all(|g| c.contains(g)));
    }

    #[test]
    fn centralizer_with_fixed_points_counts_symmetric_part() {
        // centralizer of (0 1 2) in S_6 is Z_3 x S_3: order 18
        let p = cyc(6, &[&[0, 1, 2]]);
        let gens = full_symmetric_centralizer_gens(&p);
        let c = PermGroup::from_generators(6, gens).unwrap();
        assert_eq!(c.order_u128(), Some(18));
    }

    #[test]
    fn normalizer_examples() {
        let s4 = PermGroup::symmetric(4);
        let four_cycle = PermGroup::from_generators(4, vec![cyc(4, &[&[0, 1, 2, 3]])]).unwrap();
        let n = normalizer(&s4, &four_cycle, 100_000).unwrap();
        assert_eq!(n.order_u128(), Some(8));

        let s3 = PermGroup::symmetric(3);
        let t = PermGroup::from_generators(3, vec![cyc(3, &[&[0, 1]])]).unwrap();
        let n = normalizer(&s3, &t, 1000).unwrap();
        assert_eq!(n.order_u128(), Some(2));

        let whole = normalizer(&s4, &s4, 100_000).unwrap();
        assert_eq!(whole.order(), s4.order());
    }

    #[test]
    fn conjugacy_witness_by_cycle_matching() {
        let s4 = PermGroup::symmetric(4);
        let a = cyc(4, &[&[0, 1]]);
        let b = cyc(4, &[&[2, 3]]);
        let w = conjugacy_witness(&s4, &a, &b, 1000).unwrap().unwrap();
        assert_eq!(a.conjugate_by(&w), b);
    }

    #[test]
    fn conjugacy_witness_absent_for_distinct_orders() {
        let s3 = PermGroup::symmetric(3);
        let a = cyc(3, &[&[0, 1]]);
        let b = cyc(3, &[&[0, 1, 2]]);
        assert!(conjugacy_witness(&s3, &a, &b, 1000).unwrap().is_none());
    }

    #[test]
    fn conjugacy_witness_in_proper_subgroup() {
        // (0 1 2) and (0 2 1) are not conjugate in A_4
        let a4 = PermGroup::alternating(4);
        let a = cyc(4, &[&[0, 1, 2]]);
        let b = cyc(4, &[&[0, 2, 1]]);
        assert!(conjugacy_witness(&a4, &a, &b, 1000).unwrap().is_none());
        // but they are in S_4
        let s4 = PermGroup::symmetric(4);
        let w = conjugacy_witness(&s4, &a, &b, 1000).unwrap().unwrap();
        assert_eq!(a.conjugate_by(&w), b);
    }
}
