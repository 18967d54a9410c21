//! Permutational product of two finite groups over a common subgroup.
//!
//! The point set is A x S x T where S and T are transversals of the
//! cosets A.s in B and A.t in C (representatives in increasing element
//! order). The point (a, s, t) stands for the element a.s of B and a.t
//! of C; a group element acts by left multiplication and normal-form
//! rewriting in its own factor, leaving the other transversal coordinate
//! alone. Elements of A move only the first coordinate, identically
//! through both factors, which is what makes the two embeddings agree on
//! A and intersect in exactly its image.

use crate::error::{Error, Result};
use crate::finite_group::FiniteGroup;
use crate::homomorphism::GroupHomomorphism;
use crate::perm::Permutation;
use crate::perm_group::{PermGroup, PermGroupData};
use crate::witness::WitnessCertificate;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntersectionStatus {
    /// Verified element by element: images meet exactly in the base.
    Exact,
    /// Above the pairwise-check cap; flagged, not silently skipped.
    SkippedAboveCap,
}

#[derive(Debug)]
pub struct AmalgamResult {
    pub degree: usize,
    pub group: PermGroup,
    /// Total maps: image permutation of every element of B, resp. C.
    pub embed_b: Vec<Permutation>,
    pub embed_c: Vec<Permutation>,
    /// Images of A's elements (in A's index order) under both embeddings.
    pub base_image: Vec<Permutation>,
    pub intersection: IntersectionStatus,
    pub witnesses: Vec<WitnessCertificate>,
}

#[derive(Serialize, Deserialize)]
pub struct AmalgamResultData {
    pub degree: usize,
    pub group: PermGroupData,
    pub embed_b: Vec<Permutation>,
    pub embed_c: Vec<Permutation>,
    pub base_image: Vec<Permutation>,
    pub intersection: IntersectionStatus,
    pub witnesses: Vec<WitnessCertificate>,
}

impl AmalgamResult {
    pub fn to_data(&self) -> AmalgamResultData {
        AmalgamResultData {
            degree: self.degree,
            group: self.group.to_data(),
            embed_b: self.embed_b.clone(),
            embed_c: self.embed_c.clone(),
            base_image: self.base_image.clone(),
            intersection: self.intersection,
            witnesses: self.witnesses.clone(),
        }
    }
}

struct Factor {
    /// element -> (a index, transversal index) with element = a . s
    arep: Vec<usize>,
    srep: Vec<usize>,
    reps: Vec<usize>,
}

fn factor_decomposition(group: &FiniteGroup, embed: &GroupHomomorphism, a_order: usize) -> Factor {
    let n = group.order();
    let mut arep = vec![usize::MAX; n];
    let mut srep = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for q in 0..n {
        if arep[q] == usize::MAX {
            let si = reps.len();
            reps.push(q);
            for a in 0..a_order {
                let covered = group.mul(embed.apply(a), q);
                arep[covered] = a;
                srep[covered] = si;
            }
        }
    }
    Factor { arep, srep, reps }
}

/// Permutational product of `b` and `c` over `a` along the embeddings
/// `i_ab`, `i_ac`. `pairwise_cap` bounds |B| * |C| for the element-wise
/// intersection check; `degree_cap` bounds the point count.
pub fn permutational_product(
    a: &FiniteGroup,
    b: &FiniteGroup,
    c: &FiniteGroup,
    i_ab: &GroupHomomorphism,
    i_ac: &GroupHomomorphism,
    degree_cap: usize,
    pairwise_cap: usize,
) -> Result<AmalgamResult> {
    if !i_ab.is_injective() || !i_ac.is_injective() {
        return Err(Error::Precondition("embeddings must be injective".into()));
    }
    let na = a.order();
    let fb = factor_decomposition(b, i_ab, na);
    let fc = factor_decomposition(c, i_ac, na);
    let ns = fb.reps.len();
    let nt = fc.reps.len();
    let degree = na * ns * nt;
    if degree > degree_cap {
        return Err(Error::CapExceeded {
            what: "permutational product degree",
            needed: degree,
            cap: degree_cap,
        });
    }
    let point = |ai: usize, si: usize, ti: usize| (ai * ns + si) * nt + ti;

    let embed_b: Vec<Permutation> = (0..b.order())
        .map(|x| {
            let mut images = vec![0usize; degree];
            for ai in 0..na {
                for si in 0..ns {
                    let q = b.mul(x, b.mul(i_ab.apply(ai), fb.reps[si]));
                    let (a2, s2) = (fb.arep[q], fb.srep[q]);
                    for ti in 0..nt {
                        images[point(ai, si, ti)] = point(a2, s2, ti);
                    }
                }
            }
            Permutation::from_images(images).expect("left action is a bijection")
        })
        .collect();

    let embed_c: Vec<Permutation> = (0..c.order())
        .map(|x| {
            let mut images = vec![0usize; degree];
            for ai in 0..na {
                for ti in 0..nt {
                    let q = c.mul(x, c.mul(i_ac.apply(ai), fc.reps[ti]));
                    let (a2, t2) = (fc.arep[q], fc.srep[q]);
                    for si in 0..ns {
                        images[point(ai, si, ti)] = point(a2, si, t2);
                    }
                }
            }
            Permutation::from_images(images).expect("left action is a bijection")
        })
        .collect();

    // the two copies of A must agree pointwise
    let base_image: Vec<Permutation> = (0..na).map(|ai| embed_b[i_ab.apply(ai)].clone()).collect();
    for ai in 0..na {
        if embed_c[i_ac.apply(ai)] != base_image[ai] {
            return Err(Error::Internal(
                "the two embeddings disagree on the base".into(),
            ));
        }
    }

    // injectivity and the embedding homomorphism law
    verify_embedding(b, &embed_b)?;
    verify_embedding(c, &embed_c)?;

    // element-wise intersection check
    let intersection = if b.order() * c.order() <= pairwise_cap {
        let set_b: HashSet<&Permutation> = embed_b.iter().collect();
        let set_c: HashSet<&Permutation> = embed_c.iter().collect();
        let base: HashSet<&Permutation> = base_image.iter().collect();
        let meet: HashSet<&Permutation> = set_b.intersection(&set_c).copied().collect();
        if meet != base {
            return Err(Error::Internal(format!(
                "image intersection has {} elements, base has {}",
                meet.len(),
                base.len()
            )));
        }
        IntersectionStatus::Exact
    } else {
        IntersectionStatus::SkippedAboveCap
    };

    // generators of D: images of small generating sets of B and C
    let all_b: Vec<usize> = (0..b.order()).collect();
    let all_c: Vec<usize> = (0..c.order()).collect();
    let mut gens: Vec<Permutation> = b
        .generating_sequence(&all_b)
        .into_iter()
        .map(|x| embed_b[x].clone())
        .collect();
    gens.extend(
        c.generating_sequence(&all_c)
            .into_iter()
            .map(|x| embed_c[x].clone()),
    );
    let group = PermGroup::from_generators(degree, gens)?;

    Ok(AmalgamResult {
        degree,
        group,
        embed_b,
        embed_c,
        base_image,
        intersection,
        witnesses: Vec::new(),
    })
}

fn verify_embedding(source: &FiniteGroup, images: &[Permutation]) -> Result<()> {
    let n = source.order();
    let set: HashSet<&Permutation> = images.iter().collect();
    if set.len() != n {
        return Err(Error::Internal("embedding is not injective".into()));
    }
    // exhaustive at desk scale, generator pairs against everything above
    if n * n <= 250_000 {
        for x in 0..n {
            for y in 0..n {
                if &images[x] * &images[y] != images[source.mul(x, y)] {
                    return Err(Error::Internal(format!(
                        "embedding not multiplicative at ({x},{y})"
                    )));
                }
            }
        }
    } else {
        let gens = source.generating_sequence(&(0..n).collect::<Vec<_>>());
        for &g in &gens {
            for y in 0..n {
                if &images[g] * &images[y] != images[source.mul(g, y)] {
                    return Err(Error::Internal(format!(
                        "embedding not multiplicative at ({g},{y})"
                    )));
                }
            }
        }
    }
    Ok(())
}
