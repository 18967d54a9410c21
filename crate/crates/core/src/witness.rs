//! Conjugation-witness construction inside the symmetric group on a
//! group's own elements.
//!
//! Given a finite group G and a validated partial automorphism p with
//! domain subgroup D and range R, the witness is assembled from coset
//! transversals: enumerate G as disjoint cosets D x_i and R y_i with
//! x_1 = y_1 = 1 (representatives are least element index, so the
//! construction is reproducible), map the point d*x_i to p(d)*y_i, and
//! orient the resulting permutation so that e(d)^w = e(p(d)) holds for
//! every d in D, where e is the regular embedding. Every equation is
//! verified before a certificate is returned.

use crate::error::{Error, Result};
use crate::finite_group::FiniteGroup;
use crate::partial_aut::PartialAutomorphism;
use crate::perm::Permutation;
use serde::{Deserialize, Serialize};

/// Cap on recorded equation bytes; everything is verified regardless.
const EQUATION_RECORD_LIMIT: usize = 400_000;

/// A conjugating element together with verified conjugation equations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub witness: Permutation,
    /// Pairs (a, p(a)) with a^witness = p(a), re-checked on construction.
    pub equations: Vec<(Permutation, Permutation)>,
    /// Total number of equations verified; when the ambient is large only
    /// a prefix of the pairs stays recorded.
    pub verified_equations: usize,
    pub tag: String,
}

impl WitnessCertificate {
    /// Build after verifying `a^witness = b` for every pair.
    pub fn checked(
        witness: Permutation,
        equations: Vec<(Permutation, Permutation)>,
        tag: impl Into<String>,
    ) -> Result<Self> {
        for (a, b) in &equations {
            let got = a.conjugate_by(&witness);
            if &got != b {
                return Err(Error::Internal(format!(
                    "witness equation failed: {a} ^ w = {got}, expected {b}"
                )));
            }
        }
        let verified = equations.len();
        let mut equations = equations;
        if verified.saturating_mul(witness.degree()) > EQUATION_RECORD_LIMIT {
            equations.truncate(64);
        }
        Ok(WitnessCertificate {
            witness,
            equations,
            verified_equations: verified,
            tag: tag.into(),
        })
    }

    /// Re-run every recorded equation.
    pub fn verify(&self) -> bool {
        self.equations
            .iter()
            .all(|(a, b)| &a.conjugate_by(&self.witness) == b)
    }
}

/// Result of the witness construction: a certificate for
/// `e(d)^w = e(p(d))` over the whole domain subgroup, where `e` is
/// `FiniteGroup::regular_image`.
#[derive(Debug)]
pub struct HallWitness {
    pub certificate: WitnessCertificate,
}

/// Conjugation witness for a validated partial automorphism, inside
/// Sym(|G|) via the regular embedding.
pub fn hall_witness(group: &FiniteGroup, p: &PartialAutomorphism) -> Result<HallWitness> {
    hall_witness_tagged(group, p, "hall_witness")
}

pub fn hall_witness_tagged(
    group: &FiniteGroup,
    p: &PartialAutomorphism,
    tag: &str,
) -> Result<HallWitness> {
    let n = group.order();
    let dom = p.dom_subgroup();
    let ran = p.ran_subgroup();

    // disjoint coset decompositions G = ⊔ D x_i = ⊔ R y_i, representatives
    // in increasing element order, so x_1 = y_1 = identity
    let cosets = |sub: &[usize]| -> Vec<usize> {
        let mut covered = vec![false; n];
        let mut reps = Vec::new();
        for a in 0..n {
            if !covered[a] {
                reps.push(a);
                for &d in sub {
                    covered[group.mul(d, a)] = true;
                }
            }
        }
        reps
    };
    let x_reps = cosets(dom);
    let y_reps = cosets(ran);
    if x_reps.len() != y_reps.len() {
        return Err(Error::Internal(
            "domain and range have different coset counts".into(),
        ));
    }

    // point map d*x_i -> p(d)*y_i
    let mut beta_images = vec![usize::MAX; n];
    for (xi, yi) in x_reps.iter().zip(y_reps.iter()) {
        for &d in dom {
            let from = group.mul(d, *xi);
            let to = group.mul(p.apply(d).expect("domain element"), *yi);
            if beta_images[from] != usize::MAX {
                return Err(Error::Internal("coset decomposition overlaps".into()));
            }
            beta_images[from] = to;
        }
    }
    let beta = Permutation::from_images(beta_images)?;

    // orientation: test one equation with beta^-1, fall back to beta
    let first = dom.first().copied();
    let orient = |w: Permutation| -> Option<Permutation> {
        match first {
            None => Some(w),
            Some(d) => {
                let a = group.regular_image(d);
                let b = group.regular_image(p.apply(d).expect("domain element"));
                if a.conjugate_by(&w) == b {
                    Some(w)
                } else {
                    None
                }
            }
        }
    };
    let witness = orient(beta.inverse())
        .or_else(|| orient(beta))
        .ok_or_else(|| Error::Internal("neither orientation conjugates the domain".into()))?;

    let equations: Vec<(Permutation, Permutation)> = dom
        .iter()
        .map(|&d| {
            (
                group.regular_image(d),
                group.regular_image(p.apply(d).expect("domain element")),
            )
        })
        .collect();
    let certificate = WitnessCertificate::checked(witness, equations, tag)?;
    Ok(HallWitness { certificate })
}
