//! Permutations on `0..degree` with the composition and conjugation
//! conventions used throughout the crate.
//!
//! The product `p * q` is the map `x -> p(q(x))`, i.e. `q` acts first.
//! Conjugation is `g^h = h^-1 * g * h`, so `(g^h1)^h2 = g^(h1*h2)` holds
//! exactly. Under these conventions the cycle identity
//! `(0,1,..,n-1)(n-1,n,n-2,..,1) = (0,1)(n-1,n)` evaluates true; the
//! flipped composition order makes it false (see theoremlab's identity
//! suite, which asserts both).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Mul;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Build from the image array, checking that it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::NotABijection {
                    degree: n,
                    detail: format!("image {x} out of range"),
                });
            }
            if seen[x] {
                return Err(Error::NotABijection {
                    degree: n,
                    detail: format!("image {x} repeated"),
                });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from disjoint-or-not cycles; later cycles are applied first,
    /// matching the product convention.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut result = Permutation::identity(degree);
        for cycle in cycles.iter().rev() {
            let mut images: Vec<usize> = (0..degree).collect();
            for (i, &pt) in cycle.iter().enumerate() {
                if pt >= degree {
                    return Err(Error::NotABijection {
                        degree,
                        detail: format!("cycle point {pt} out of range"),
                    });
                }
                images[pt] = cycle[(i + 1) % cycle.len()];
            }
            let one = Permutation::from_images(images)?;
            result = &result * &one;
        }
        Ok(result)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// `self^h = h^-1 * self * h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        assert_eq!(self.degree(), h.degree(), "conjugation degree mismatch");
        let hinv = h.inverse();
        let mut images = vec![0; self.degree()];
        for x in 0..self.degree() {
            images[x] = hinv.images[self.images[h.images[x]]];
        }
        Permutation { images }
    }

    /// Commutator `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        &(&self.inverse() * &other.inverse()) * &(self * other)
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let n = self.degree();
        if k == 0 {
            return Permutation::identity(n);
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(n);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each starting at its least point, sorted by
    /// least point. Fixed points are omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted lengths of nontrivial cycles. Two permutations of the same
    /// degree are conjugate in the full symmetric group iff these agree.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable();
        t
    }

    /// Least `k >= 1` with `self^k = id`: the lcm of the cycle lengths.
    pub fn order(&self) -> u128 {
        let mut ord: u128 = 1;
        for c in self.cycles() {
            ord = num_integer::lcm(ord, c.len() as u128);
        }
        ord
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.degree())
            .filter(|&x| self.images[x] != x)
            .collect()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree())
            .filter(|&x| self.images[x] == x)
            .collect()
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.degree() == other.degree()
            && (0..self.degree())
                .all(|x| self.images[other.images[x]] == other.images[self.images[x]])
    }

    /// Same permutation on a larger point set (new points fixed).
    pub fn extend_degree(&self, degree: usize) -> Result<Permutation> {
        if degree < self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: degree,
            });
        }
        let mut images: Vec<usize> = (0..degree).collect();
        images[..self.degree()].copy_from_slice(&self.images);
        Ok(Permutation { images })
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// `(p * q)(x) = p(q(x))`: apply `q`, then `p`.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            rhs.degree(),
            "composition degree mismatch: {} vs {}",
            self.degree(),
            rhs.degree()
        );
        let mut images = vec![0; self.degree()];
        for x in 0..self.degree() {
            images[x] = self.images[rhs.images[x]];
        }
        Permutation { images }
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::from_images(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}[", self.degree())?;
        let cycles = self.cycles();
        if cycles.is_empty() {
            write!(f, "id")?;
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
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
    fn compose_identity() {
        let p = cyc(3, &[&[0, 1]]);
        let id = Permutation::identity(3);
        assert_eq!(&p * &id, p);
        assert_eq!(&id * &p, p);
    }

    #[test]
    fn compose_matches_cycle_identity_convention() {
        // (0 1 2) * (2 3 1) must be (0 1)(2 3): the right factor acts first.
        let p = cyc(4, &[&[0, 1, 2]]);
        let q = cyc(4, &[&[2, 3, 1]]);
        assert_eq!(&p * &q, cyc(4, &[&[0, 1], &[2, 3]]));
    }

    #[test]
    fn conjugation_example() {
        // (0 1)^(1 2) = (0 2)
        let g = cyc(3, &[&[0, 1]]);
        let h = cyc(3, &[&[1, 2]]);
        assert_eq!(g.conjugate_by(&h), cyc(3, &[&[0, 2]]));
    }

    #[test]
    fn inverse_roundtrip() {
        let p = cyc(6, &[&[0, 2, 4], &[1, 5]]);
        assert!((&p * &p.inverse()).is_identity());
        assert!((&p.inverse() * &p).is_identity());
    }

    #[test]
    fn order_is_lcm_of_cycle_lengths() {
        assert_eq!(Permutation::identity(4).order(), 1);
        assert_eq!(cyc(5, &[&[0, 1, 2], &[3, 4]]).order(), 6);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn serde_as_image_array() {
        let p = cyc(3, &[&[0, 1]]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[1,0,2]");
        let back: Permutation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Permutation>("[0,0]").is_err());
    }

    #[test]
    fn pow_negative() {
        let p = cyc(4, &[&[0, 1, 2, 3]]);
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.pow(3), p.pow(-1));
        assert!(p.pow(0).is_identity());
    }
}
