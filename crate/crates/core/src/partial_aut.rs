//! Partial automorphisms of a finite group, validated by the diagonal
//! subgroup test: the pairs `(a_i, b_i)` extend to an isomorphism of the
//! generated subgroups iff the subgroup of `G x G` generated by the pairs
//! has the same order as both projections. A failed validation yields a
//! concrete relation word holding on one side only.

use crate::error::{Error, RejectionWitness, Result, Side};
use crate::finite_group::FiniteGroup;
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct PartialAutomorphism {
    pairs: Vec<(usize, usize)>,
    /// Sorted element indices of the generated domain subgroup.
    dom: Vec<usize>,
    /// Sorted element indices of the generated range subgroup.
    ran: Vec<usize>,
    /// Total extension on the domain subgroup.
    extension: HashMap<usize, usize>,
}

impl PartialAutomorphism {
    /// Validate `a_i -> b_i` inside `group`.
    pub fn validate(group: &FiniteGroup, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = group.order();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Precondition(format!(
                    "pair ({a},{b}) out of range for group of order {n}"
                )));
            }
        }

        // close the diagonal subgroup of G x G, tracking derivations as
        // (parent position, pair index) so a rejection word can be read
        // back without storing whole words
        let idx = |a: usize, b: usize| a * n + b;
        let mut derivation: HashMap<usize, (usize, usize)> = HashMap::new();
        let mut queue: Vec<(usize, usize)> = vec![(0, 0)];
        derivation.insert(idx(0, 0), (usize::MAX, usize::MAX));
        let mut head = 0;
        while head < queue.len() {
            let (x, y) = queue[head];
            head += 1;
            for (k, &(a, b)) in pairs.iter().enumerate() {
                let nx = group.mul(x, a);
                let ny = group.mul(y, b);
                derivation.entry(idx(nx, ny)).or_insert_with(|| {
                    queue.push((nx, ny));
                    (head - 1, k)
                });
            }
        }
        let word_for = |pos: usize| -> Vec<usize> {
            let mut word = Vec::new();
            let mut at = pos;
            loop {
                let (x, y) = queue[at];
                let (parent, k) = derivation[&idx(x, y)];
                if parent == usize::MAX {
                    break;
                }
                word.push(k);
                at = parent;
            }
            word.reverse();
            word
        };

        // any (x, 1) or (1, y) with a nontrivial side witnesses failure
        for (pos, &(x, y)) in queue.iter().enumerate() {
            if x == 0 && y != 0 {
                return Err(RejectionWitness {
                    word: word_for(pos),
                    trivial_side: Side::Left,
                }
                .into());
            }
            if y == 0 && x != 0 {
                return Err(RejectionWitness {
                    word: word_for(pos),
                    trivial_side: Side::Right,
                }
                .into());
            }
        }

        let dom_gens: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let ran_gens: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        let dom = group.closure(&dom_gens);
        let ran = group.closure(&ran_gens);
        if queue.len() != dom.len() || queue.len() != ran.len() {
            // both kernels trivial forces equality; reaching here means an
            // internal inconsistency
            return Err(Error::Internal(
                "diagonal order differs from projections with trivial kernels".into(),
            ));
        }

        let extension: HashMap<usize, usize> = queue.iter().copied().collect();
        Ok(PartialAutomorphism {
            pairs: pairs.to_vec(),
            dom,
            ran,
            extension,
        })
    }

    /// The partial automorphism induced by a total automorphism map.
    pub fn from_total(group: &FiniteGroup, map: &HashMap<usize, usize>) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = {
            let elems = group.generating_sequence(&(0..group.order()).collect::<Vec<_>>());
            elems.iter().map(|&a| (a, map[&a])).collect()
        };
        PartialAutomorphism::validate(group, &pairs)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn dom_subgroup(&self) -> &[usize] {
        &self.dom
    }

    pub fn ran_subgroup(&self) -> &[usize] {
        &self.ran
    }

    pub fn apply(&self, a: usize) -> Option<usize> {
        self.extension.get(&a).copied()
    }

    pub fn extension(&self) -> &HashMap<usize, usize> {
        &self.extension
    }

    /// True if the map is defined on the whole group.
    pub fn is_total(&self, group: &FiniteGroup) -> bool {
        self.dom.len() == group.order()
    }

    /// Whether this map fixes `elems` pointwise.
    pub fn fixes_pointwise(&self, elems: &[usize]) -> bool {
        elems.iter().all(|&a| self.apply(a) == Some(a))
    }

    /// Composition `other after self`, defined when the range generators
    /// land in `other`'s domain.
    pub fn compose(&self, group: &FiniteGroup, other: &PartialAutomorphism) -> Result<Self> {
        let pairs: Result<Vec<(usize, usize)>> = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                other
                    .apply(b)
                    .map(|c| (a, c))
                    .ok_or_else(|| Error::Precondition("composition leaves the domain".into()))
            })
            .collect();
        PartialAutomorphism::validate(group, &pairs?)
    }
}

/// Brute-force oracle for validation: try to extend the pair map to an
/// isomorphism of the generated subgroups by explicit construction, with
/// no order counting. Used to cross-check `validate`.
pub fn extends_by_brute_force(group: &FiniteGroup, pairs: &[(usize, usize)]) -> bool {
    let dom_gens: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let ran_gens: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    let dom = group.closure(&dom_gens);
    let ran = group.closure(&ran_gens);
    if dom.len() != ran.len() {
        return false;
    }
    // breadth-first extension from the pair map
    let mut map: HashMap<usize, usize> = HashMap::new();
    map.insert(0, 0);
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = map[&x];
        for &(a, b) in pairs {
            let y = group.mul(x, a);
            let fy = group.mul(fx, b);
            match map.get(&y) {
                Some(&v) => {
                    if v != fy {
                        return false;
                    }
                }
                None => {
                    map.insert(y, fy);
                    queue.push(y);
                }
            }
        }
    }
    if map.len() != dom.len() {
        return false;
    }
    // injectivity and multiplicativity on all pairs
    let mut image: Vec<usize> = map.values().copied().collect();
    image.sort_unstable();
    image.dedup();
    if image.len() != dom.len() || image != ran {
        return false;
    }
    dom.iter().all(|&x| {
        dom.iter()
            .all(|&y| map[&group.mul(x, y)] == group.mul(map[&x], map[&y]))
    })
}
