//! Validated homomorphisms between abstract finite groups.

use crate::error::{Error, Result};
use crate::finite_group::FiniteGroup;

#[derive(Debug, Clone)]
pub struct GroupHomomorphism {
    /// Total map on element indices.
    map: Vec<usize>,
    injective: bool,
}

impl GroupHomomorphism {
    /// Validate a total map `source -> target`: identity to identity and
    /// multiplicative on every pair (sources here are desk scale).
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::Precondition(format!(
                "map length {} does not match source order {}",
                map.len(),
                source.order()
            )));
        }
        for &v in &map {
            if v >= target.order() {
                return Err(Error::Precondition("image out of range".into()));
            }
        }
        if map[0] != 0 {
            return Err(Error::Precondition("identity must map to identity".into()));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::Precondition(format!(
                        "multiplicativity fails at ({a},{b})"
                    )));
                }
            }
        }
        let mut image = map.clone();
        image.sort_unstable();
        image.dedup();
        let injective = image.len() == map.len();
        Ok(GroupHomomorphism { map, injective })
    }

    /// Identity embedding of a group into itself.
    pub fn identity(group: &FiniteGroup) -> Self {
        GroupHomomorphism {
            map: (0..group.order()).collect(),
            injective: true,
        }
    }

    /// Build from generator images by closing the source; fails if the
    /// images are inconsistent.
    pub fn from_generator_images(
        source: &FiniteGroup,
        target: &FiniteGroup,
        gens: &[usize],
        images: &[usize],
    ) -> Result<Self> {
        let mut map = vec![usize::MAX; source.order()];
        map[0] = 0;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (&g, &fg) in gens.iter().zip(images) {
                let y = source.mul(x, g);
                let fy = target.mul(map[x], fg);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return Err(Error::Precondition(
                        "generator images are inconsistent".into(),
                    ));
                }
            }
        }
        if map.contains(&usize::MAX) {
            return Err(Error::Precondition(
                "generators do not generate the source".into(),
            ));
        }
        GroupHomomorphism::new(source, target, map)
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn require_embedding(self) -> Result<Self> {
        if self.injective {
            Ok(self)
        } else {
            Err(Error::Precondition("homomorphism is not injective".into()))
        }
    }

    /// Indices in the target that are hit, sorted.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusion_of_z2_in_z4() {
        let z2 = FiniteGroup::cyclic(2);
        let z4 = FiniteGroup::cyclic(4);
        let h = GroupHomomorphism::new(&z2, &z4, vec![0, 2]).unwrap();
        assert!(h.is_injective());
        assert_eq!(h.image(), vec![0, 2]);
    }

    #[test]
    fn quotient_map_is_not_injective() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let h = GroupHomomorphism::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        assert!(!h.is_injective());
        assert!(h.require_embedding().is_err());
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let z4 = FiniteGroup::cyclic(4);
        assert!(GroupHomomorphism::new(&z4, &z4, vec![0, 1, 1, 3]).is_err());
    }

    #[test]
    fn from_generator_images() {
        let z4 = FiniteGroup::cyclic(4);
        let h = GroupHomomorphism::from_generator_images(&z4, &z4, &[1], &[3]).unwrap();
        assert_eq!(h.map(), &[0, 3, 2, 1]);
        assert!(h.is_injective());
    }
}
