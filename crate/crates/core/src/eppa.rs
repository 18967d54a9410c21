//! Amalgams that carry conjugation witnesses for matching families of
//! partial automorphisms, and the closure that turns witnesses into
//! total automorphisms of a finite overgroup.
//!
//! The pipeline for `eppa_amalgam_with_automorphisms` runs through the
//! direct product: form B x C, realize each pair p_k x q_k by one
//! witness g_k in Sym(|B x C|), pass to H = G x <g_1..g_n> acting on two
//! disjoint point blocks, lift B and C to B-bar = <B, (g_k, g_k)> and
//! C-bar = <C, (g_k, g_k)>, identify the common subgroup <A, (g_k, g_k)>
//! on both sides, and finish with the permutational product. The
//! returned amalgam carries elements that conjugate the B-image by p_k
//! and the C-image by q_k simultaneously, all equations checked.

use crate::amalgam::{permutational_product, AmalgamResult};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::finite_group::FiniteGroup;
use crate::homomorphism::GroupHomomorphism;
use crate::partial_aut::PartialAutomorphism;
use crate::perm::Permutation;
use crate::perm_group::{enumerate_closure, PermGroup};
use crate::witness::{hall_witness_tagged, WitnessCertificate};
use std::collections::HashMap;

/// Witnesses for an n-tuple of partial automorphisms of `a`, realized as
/// conjugations inside `Sym(|a|)`: the generated overgroup contains the
/// regular image of `a` and one witness per partial automorphism, and
/// conjugation by the k-th witness extends the k-th map.
pub struct NEppaClosure {
    pub group: PermGroup,
    pub certificates: Vec<WitnessCertificate>,
}

pub fn n_eppa_closure(a: &FiniteGroup, partials: &[PartialAutomorphism]) -> Result<NEppaClosure> {
    let mut certificates = Vec::new();
    let mut gens: Vec<Permutation> = {
        let all: Vec<usize> = (0..a.order()).collect();
        a.generating_sequence(&all)
            .into_iter()
            .map(|g| a.regular_image(g))
            .collect()
    };
    for (i, p) in partials.iter().enumerate() {
        let hw = hall_witness_tagged(a, p, &format!("n_eppa_closure[{i}]"))?;
        gens.push(hw.certificate.witness.clone());
        certificates.push(hw.certificate);
    }
    let group = PermGroup::from_generators(a.order(), gens)?;
    Ok(NEppaClosure {
        group,
        certificates,
    })
}

struct Stage {
    completed: Vec<String>,
}

impl Stage {
    fn new() -> Self {
        Stage {
            completed: Vec::new(),
        }
    }
    fn done(&mut self, name: &str) {
        self.completed.push(name.to_string());
    }
    fn fail(&self, e: Error) -> Error {
        Error::Pipeline {
            completed: self.completed.clone(),
            source: Box::new(e),
        }
    }
}

/// Amalgamate `b` and `c` over `a` while realizing matched families of
/// partial automorphisms by common witnesses. `pairs_b[k]` and
/// `pairs_c[k]` must restrict to the same total automorphism of `a`.
#[allow(clippy::too_many_arguments)]
pub fn eppa_amalgam_with_automorphisms(
    a: &FiniteGroup,
    b: &FiniteGroup,
    c: &FiniteGroup,
    i_ab: &GroupHomomorphism,
    i_ac: &GroupHomomorphism,
    pairs_b: &[Vec<(usize, usize)>],
    pairs_c: &[Vec<(usize, usize)>],
    config: &Config,
) -> Result<AmalgamResult> {
    let mut stage = Stage::new();
    if pairs_b.len() != pairs_c.len() {
        return Err(Error::Precondition(
            "partial automorphism families differ in length".into(),
        ));
    }
    let n = pairs_b.len();
    if n == 0 {
        return permutational_product(
            a,
            b,
            c,
            i_ab,
            i_ac,
            config.neumann_cap,
            config.enumeration_cap,
        );
    }

    // stage: validate the families and their restrictions to a
    let ps: Vec<PartialAutomorphism> = pairs_b
        .iter()
        .map(|pairs| PartialAutomorphism::validate(b, pairs))
        .collect::<Result<_>>()
        .map_err(|e| stage.fail(e))?;
    let qs: Vec<PartialAutomorphism> = pairs_c
        .iter()
        .map(|pairs| PartialAutomorphism::validate(c, pairs))
        .collect::<Result<_>>()
        .map_err(|e| stage.fail(e))?;
    for k in 0..n {
        let restriction_b = restriction_to_base(a, i_ab, &ps[k]).map_err(|e| stage.fail(e))?;
        let restriction_c = restriction_to_base(a, i_ac, &qs[k]).map_err(|e| stage.fail(e))?;
        if restriction_b != restriction_c {
            return Err(stage.fail(Error::Precondition(format!(
                "family member {k} restricts differently to the base"
            ))));
        }
    }
    stage.done("validate");

    // stage: direct product B x C with the product partial automorphisms
    if b.order() * c.order() > config.enumeration_cap {
        return Err(stage.fail(Error::CapExceeded {
            what: "direct product order",
            needed: b.order() * c.order(),
            cap: config.enumeration_cap,
        }));
    }
    let (bc, eb, ec) = FiniteGroup::direct_product(b, c);
    stage.done("direct-product");

    let mut product_partials = Vec::new();
    for k in 0..n {
        let mut pairs: Vec<(usize, usize)> =
            ps[k].pairs().iter().map(|&(x, y)| (eb[x], eb[y])).collect();
        pairs.extend(qs[k].pairs().iter().map(|&(x, y)| (ec[x], ec[y])));
        product_partials
            .push(PartialAutomorphism::validate(&bc, &pairs).map_err(|e| stage.fail(e))?);
    }
    stage.done("product-partial-automorphisms");

    // stage: one witness per product map, inside Sym(|B x C|)
    let mut witnesses_bc: Vec<Permutation> = Vec::new();
    for (k, pp) in product_partials.iter().enumerate() {
        let hw = hall_witness_tagged(&bc, pp, &format!("eppa_product_witness[{k}]"))
            .map_err(|e| stage.fail(e))?;
        witnesses_bc.push(hw.certificate.witness.clone());
    }
    stage.done("product-witnesses");

    // stage: H acts on two disjoint blocks of |B x C| points; lift the
    // copies of B, C and A together with the diagonal witnesses
    let block_degree = bc.order();
    let two_blocks = 2 * block_degree;
    let block = |first: &Permutation, second: &Permutation| -> Permutation {
        let mut images: Vec<usize> = Vec::with_capacity(two_blocks);
        images.extend(first.images().iter().copied());
        images.extend(second.images().iter().map(|&x| x + block_degree));
        Permutation::from_images(images).expect("block permutation")
    };
    let id_block = Permutation::identity(block_degree);
    let diag_witnesses: Vec<Permutation> = witnesses_bc.iter().map(|w| block(w, w)).collect();

    let all_b: Vec<usize> = (0..b.order()).collect();
    let all_c: Vec<usize> = (0..c.order()).collect();
    let all_a: Vec<usize> = (0..a.order()).collect();
    let lift_b = |x: usize| block(&bc.regular_image(eb[x]), &id_block);
    let lift_c = |x: usize| block(&bc.regular_image(ec[x]), &id_block);

    let mut gens_b_bar: Vec<Permutation> = b
        .generating_sequence(&all_b)
        .into_iter()
        .map(lift_b)
        .collect();
    gens_b_bar.extend(diag_witnesses.iter().cloned());
    let mut gens_c_bar: Vec<Permutation> = c
        .generating_sequence(&all_c)
        .into_iter()
        .map(lift_c)
        .collect();
    gens_c_bar.extend(diag_witnesses.iter().cloned());
    let mut gens_a_bar: Vec<Permutation> = a
        .generating_sequence(&all_a)
        .into_iter()
        .map(|x| lift_b(i_ab.apply(x)))
        .collect();
    gens_a_bar.extend(diag_witnesses.iter().cloned());

    let b_bar = FiniteGroup::from_perm_elements(
        two_blocks,
        enumerate_closure(two_blocks, &gens_b_bar, config.enumeration_cap)
            .map_err(|e| stage.fail(e))?,
    )
    .map_err(|e| stage.fail(e))?;
    let c_bar = FiniteGroup::from_perm_elements(
        two_blocks,
        enumerate_closure(two_blocks, &gens_c_bar, config.enumeration_cap)
            .map_err(|e| stage.fail(e))?,
    )
    .map_err(|e| stage.fail(e))?;
    let a_bar = FiniteGroup::from_perm_elements(
        two_blocks,
        enumerate_closure(two_blocks, &gens_a_bar, config.enumeration_cap)
            .map_err(|e| stage.fail(e))?,
    )
    .map_err(|e| stage.fail(e))?;
    stage.done("lift");

    // stage: the two embeddings of the common subgroup. Inclusion on the
    // B side; on the C side, factor x = (u , v) as u * v^-1 in the lifted
    // A-copy times the diagonal witness part, and swap the A-copy over.
    let incl_map: Vec<usize> = (0..a_bar.order())
        .map(|x| {
            b_bar
                .perm_index(a_bar.perm_of(x).expect("perm-backed"))
                .ok_or(Error::NotInGroup)
        })
        .collect::<Result<_>>()
        .map_err(|e| stage.fail(e))?;
    let incl = GroupHomomorphism::new(&a_bar, &b_bar, incl_map)
        .and_then(GroupHomomorphism::require_embedding)
        .map_err(|e| stage.fail(e))?;

    let a_copy_b: HashMap<Permutation, usize> =
        (0..a.order()).map(|x| (lift_b(i_ab.apply(x)), x)).collect();
    let swap_map: Vec<usize> = (0..a_bar.order())
        .map(|x| -> Result<usize> {
            let p = a_bar.perm_of(x).expect("perm-backed");
            // v is the action on the second block
            let v_images: Vec<usize> = (0..block_degree)
                .map(|i| p.apply(i + block_degree) - block_degree)
                .collect();
            let v = Permutation::from_images(v_images)?;
            let u_images: Vec<usize> = (0..block_degree).map(|i| p.apply(i)).collect();
            let u = Permutation::from_images(u_images)?;
            let a_part = &u * &v.inverse();
            let a_idx = a_copy_b
                .get(&block(&a_part, &id_block))
                .copied()
                .ok_or_else(|| {
                    Error::Internal("element does not factor through the base copy".into())
                })?;
            let image =
                &block(&bc.regular_image(ec[i_ac.apply(a_idx)]), &id_block) * &block(&v, &v);
            c_bar.perm_index(&image).ok_or(Error::NotInGroup)
        })
        .collect::<Result<_>>()
        .map_err(|e| stage.fail(e))?;
    let swap = GroupHomomorphism::new(&a_bar, &c_bar, swap_map)
        .and_then(GroupHomomorphism::require_embedding)
        .map_err(|e| stage.fail(e))?;
    stage.done("base-isomorphism");

    // stage: the permutational product of the lifted groups
    let mut amalgam = permutational_product(
        &a_bar,
        &b_bar,
        &c_bar,
        &incl,
        &swap,
        config.neumann_cap,
        config.enumeration_cap,
    )
    .map_err(|e| stage.fail(e))?;
    stage.done("amalgam");

    // stage: verify both conjugation-equation families inside D
    for k in 0..n {
        let w_idx = b_bar
            .perm_index(&diag_witnesses[k])
            .ok_or_else(|| stage.fail(Error::Internal("witness missing from lift".into())))?;
        let w_in_d = amalgam.embed_b[w_idx].clone();
        let mut equations: Vec<(Permutation, Permutation)> = Vec::new();
        for &(x, y) in ps[k].pairs() {
            let xb = b_bar.perm_index(&lift_b(x)).ok_or(Error::NotInGroup)?;
            let yb = b_bar.perm_index(&lift_b(y)).ok_or(Error::NotInGroup)?;
            equations.push((amalgam.embed_b[xb].clone(), amalgam.embed_b[yb].clone()));
        }
        for &(x, y) in qs[k].pairs() {
            let xc = c_bar.perm_index(&lift_c(x)).ok_or(Error::NotInGroup)?;
            let yc = c_bar.perm_index(&lift_c(y)).ok_or(Error::NotInGroup)?;
            equations.push((amalgam.embed_c[xc].clone(), amalgam.embed_c[yc].clone()));
        }
        let cert = WitnessCertificate::checked(w_in_d, equations, format!("eppa_amalgam[{k}]"))
            .map_err(|e| stage.fail(e))?;
        amalgam.witnesses.push(cert);
    }
    stage.done("conjugation-verification");

    Ok(amalgam)
}

/// The total automorphism of `a` induced by restricting `p` along the
/// embedding; errors if `p` does not restrict.
fn restriction_to_base(
    a: &FiniteGroup,
    embed: &GroupHomomorphism,
    p: &PartialAutomorphism,
) -> Result<Vec<usize>> {
    let image: HashMap<usize, usize> = (0..a.order()).map(|x| (embed.apply(x), x)).collect();
    let mut restriction = Vec::with_capacity(a.order());
    for x in 0..a.order() {
        let y = p.apply(embed.apply(x)).ok_or_else(|| {
            Error::Precondition("partial automorphism is not defined on the base".into())
        })?;
        let back = image.get(&y).copied().ok_or_else(|| {
            Error::Precondition("partial automorphism does not preserve the base".into())
        })?;
        restriction.push(back);
    }
    let mut seen = restriction.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != a.order() {
        return Err(Error::Precondition(
            "restriction to the base is not bijective".into(),
        ));
    }
    Ok(restriction)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_eppa_single_identity() {
        let z4 = FiniteGroup::cyclic(4);
        let p = PartialAutomorphism::validate(&z4, &[(1, 1)]).unwrap();
        let cl = n_eppa_closure(&z4, &[p]).unwrap();
        assert!(cl.certificates[0].witness.is_identity());
        assert_eq!(cl.group.order_u128(), Some(4));
    }

    #[test]
    fn n_eppa_inversion_and_partial_identity() {
        let z4 = FiniteGroup::cyclic(4);
        let inv = PartialAutomorphism::validate(&z4, &[(1, 3)]).unwrap();
        let half = PartialAutomorphism::validate(&z4, &[(2, 2)]).unwrap();
        let cl = n_eppa_closure(&z4, &[inv, half]).unwrap();
        assert_eq!(cl.certificates.len(), 2);
        assert!(cl.certificates.iter().all(|c| c.verify()));
        for c in &cl.certificates {
            assert!(cl.group.contains(&c.witness));
        }
    }

    #[test]
    fn n_eppa_klein_swap() {
        let (v4, _, _) =
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        let swap = PartialAutomorphism::validate(&v4, &[(1, 2), (2, 1)]).unwrap();
        let cl = n_eppa_closure(&v4, &[swap]).unwrap();
        let w = &cl.certificates[0].witness;
        assert_eq!(v4.regular_image(1).conjugate_by(w), v4.regular_image(2));
        assert_eq!(v4.regular_image(2).conjugate_by(w), v4.regular_image(1));
    }

    #[test]
    fn eppa_amalgam_reduces_to_plain_product_for_empty_family() {
        let z2 = FiniteGroup::cyclic(2);
        let z4 = FiniteGroup::cyclic(4);
        let i = GroupHomomorphism::new(&z2, &z4, vec![0, 2]).unwrap();
        let am =
            eppa_amalgam_with_automorphisms(&z2, &z4, &z4, &i, &i, &[], &[], &Config::default())
                .unwrap();
        assert_eq!(am.degree, 8);
        assert!(am.witnesses.is_empty());
    }

    #[test]
    fn eppa_amalgam_trivial_base_identity_maps() {
        // A trivial, B = C = Z/2, one pair of identity maps: witnesses
        // centralize both images
        let triv = FiniteGroup::trivial();
        let z2 = FiniteGroup::cyclic(2);
        let i = GroupHomomorphism::new(&triv, &z2, vec![0]).unwrap();
        let am = eppa_amalgam_with_automorphisms(
            &triv,
            &z2,
            &z2,
            &i,
            &i,
            &[vec![(1, 1)]],
            &[vec![(1, 1)]],
            &Config::default(),
        )
        .unwrap();
        assert_eq!(am.witnesses.len(), 1);
        let w = &am.witnesses[0].witness;
        assert!(am.embed_b[1].commutes_with(w));
        assert!(am.embed_c[1].commutes_with(w));
    }

    #[test]
    fn eppa_amalgam_z4_and_klein_over_z2() {
        // the inversion of Z/4 and a swap of Z/2 x Z/2, agreeing on the
        // embedded Z/2
        let z2 = FiniteGroup::cyclic(2);
        let z4 = FiniteGroup::cyclic(4);
        let (v4, _, _) = FiniteGroup::direct_product(&z2, &z2);
        let i_b = GroupHomomorphism::new(&z2, &z4, vec![0, 2]).unwrap();
        let i_c = GroupHomomorphism::new(&z2, &v4, vec![0, 3]).unwrap();
        // inversion fixes 2 in Z/4; swapping coordinates of V4 fixes 3
        let p = vec![(1usize, 3usize)];
        let q = vec![(1usize, 2usize), (2usize, 1usize)];
        let am = eppa_amalgam_with_automorphisms(
            &z2,
            &z4,
            &v4,
            &i_b,
            &i_c,
            &[p],
            &[q],
            &Config::default(),
        )
        .unwrap();
        assert_eq!(am.witnesses.len(), 1);
        assert!(am.witnesses[0].verify());
        assert_eq!(am.intersection, crate::amalgam::IntersectionStatus::Exact);
    }

    #[test]
    fn eppa_amalgam_rejects_mismatched_restrictions() {
        // over the base Z/3, identity on one side and inversion on the
        // other restrict differently
        let z3 = FiniteGroup::cyclic(3);
        let id = GroupHomomorphism::identity(&z3);
        let p = vec![(1usize, 1usize)];
        let q = vec![(1usize, 2usize)];
        let r = eppa_amalgam_with_automorphisms(
            &z3,
            &z3,
            &z3,
            &id,
            &id,
            &[p],
            &[q],
            &Config::default(),
        );
        assert!(r.is_err());
    }
}
