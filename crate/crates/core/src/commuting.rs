//! Pairwise-commuting conjugation witnesses for a commuting family of
//! automorphisms whose common fixed points are controlled by the first
//! member, and the abelian-subgroup builder that trades an odd prime
//! divisor for the order of a cyclic automorphism group.

use crate::abelian::AbelianGroup;
use crate::aut_families::{crt_pair, scale_coordinate_map};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::finite_group::FiniteGroup;
use crate::partial_aut::PartialAutomorphism;
use crate::perm::Permutation;
use crate::perm_group::PermGroup;
use crate::witness::{hall_witness_tagged, WitnessCertificate};

/// Output of the recursion: all witnesses live in one final ambient
/// symmetric group, pairwise commute, and each realizes its automorphism
/// on the (re-embedded) images of the original group's elements.
#[derive(Debug)]
pub struct CommutingWitnesses {
    pub ambient_degree: usize,
    /// Final images of the original group's elements, by element index.
    pub base_images: Vec<Permutation>,
    pub certificates: Vec<WitnessCertificate>,
}

/// Realize each `sigma` in `sigmas` (total automorphisms of `a`, given as
/// index maps) as conjugation by pairwise-commuting elements.
///
/// Preconditions, re-checked here rather than trusted: the maps are
/// automorphisms, commute pairwise, and every fixed point of `sigmas[0]`
/// is fixed by the whole family.
///
/// The recursion keeps an ambient group D = <image of a, witnesses so
/// far>. Each step extends the next automorphism by the identity on the
/// previous witnesses (the diagonal validation certifies that this is
/// well defined on the generated group) and realizes it by one witness in
/// Sym(|D|); everything already built is pushed forward through the
/// regular embedding.
pub fn commuting_witnesses(
    a: &FiniteGroup,
    sigmas: &[Vec<usize>],
    config: &Config,
) -> Result<CommutingWitnesses> {
    if sigmas.is_empty() {
        return Err(Error::Precondition("empty automorphism family".into()));
    }
    let n = a.order();
    for (i, s) in sigmas.iter().enumerate() {
        if s.len() != n {
            return Err(Error::Precondition(format!("sigma {i} has wrong size")));
        }
    }
    for (i, s) in sigmas.iter().enumerate() {
        for (j, t) in sigmas.iter().enumerate().skip(i + 1) {
            if (0..n).any(|x| s[t[x]] != t[s[x]]) {
                return Err(Error::Precondition(format!(
                    "sigmas {i} and {j} do not commute"
                )));
            }
        }
    }
    for x in 0..n {
        if sigmas[0][x] == x {
            for (j, s) in sigmas.iter().enumerate() {
                if s[x] != x {
                    return Err(Error::Precondition(format!(
                        "sigma {j} moves a fixed point of sigma 0"
                    )));
                }
            }
        }
    }

    let mut completed: Vec<String> = Vec::new();

    // ambient state: D as a finite group, the indices of the embedded
    // original elements, and indices of the witnesses found so far
    let sigma0_pairs = total_pairs(a, &sigmas[0]);
    let p0 = PartialAutomorphism::validate(a, &sigma0_pairs)?;
    let hw0 = hall_witness_tagged(a, &p0, "commuting_witnesses[0]")?;
    let mut gens: Vec<Permutation> = (0..n).map(|x| a.regular_image(x)).collect();
    gens.push(hw0.certificate.witness.clone());
    let mut ambient = FiniteGroup::from_perm_group(
        &PermGroup::from_generators(n, gens)?,
        config.enumeration_cap,
    )
    .map_err(|e| Error::Pipeline {
        completed: completed.clone(),
        source: Box::new(e),
    })?;
    let mut base_idx: Vec<usize> = (0..n)
        .map(|x| {
            ambient
                .perm_index(&a.regular_image(x))
                .expect("image in closure")
        })
        .collect();
    let mut witness_idx: Vec<usize> = vec![ambient
        .perm_index(&hw0.certificate.witness)
        .expect("witness in closure")];
    completed.push("sigma 0".into());

    for (k, sigma) in sigmas.iter().enumerate().skip(1) {
        // pairs: sigma on the embedded copy of a, identity on witnesses
        let mut pairs: Vec<(usize, usize)> =
            (0..n).map(|x| (base_idx[x], base_idx[sigma[x]])).collect();
        for &w in &witness_idx {
            pairs.push((w, w));
        }
        let step = (|| -> Result<(FiniteGroup, Permutation)> {
            let p = PartialAutomorphism::validate(&ambient, &pairs)?;
            let hw = hall_witness_tagged(&ambient, &p, &format!("commuting_witnesses[{k}]"))?;
            let mut gens: Vec<Permutation> = {
                let all: Vec<usize> = (0..ambient.order()).collect();
                ambient
                    .generating_sequence(&all)
                    .into_iter()
                    .map(|g| ambient.regular_image(g))
                    .collect()
            };
            gens.push(hw.certificate.witness.clone());
            let next = FiniteGroup::from_perm_group(
                &PermGroup::from_generators(ambient.order(), gens)?,
                config.enumeration_cap,
            )?;
            Ok((next, hw.certificate.witness.clone()))
        })()
        .map_err(|e| Error::Pipeline {
            completed: completed.clone(),
            source: Box::new(e),
        })?;
        let (next, new_witness) = step;

        base_idx = base_idx
            .iter()
            .map(|&x| {
                next.perm_index(&ambient.regular_image(x))
                    .expect("re-embedded base element")
            })
            .collect();
        witness_idx = witness_idx
            .iter()
            .map(|&w| {
                next.perm_index(&ambient.regular_image(w))
                    .expect("re-embedded witness")
            })
            .collect();
        witness_idx.push(next.perm_index(&new_witness).expect("new witness"));
        ambient = next;
        completed.push(format!("sigma {k}"));
    }

    // final exact verification: conjugation equations and pairwise
    // commutativity in the last ambient
    let base_images: Vec<Permutation> = base_idx
        .iter()
        .map(|&x| ambient.perm_of(x).expect("perm backed").clone())
        .collect();
    let witness_perms: Vec<Permutation> = witness_idx
        .iter()
        .map(|&w| ambient.perm_of(w).expect("perm backed").clone())
        .collect();
    for (i, wi) in witness_perms.iter().enumerate() {
        for wj in witness_perms.iter().skip(i + 1) {
            if !wi.commutes_with(wj) {
                return Err(Error::Internal("witnesses do not commute".into()));
            }
        }
    }
    let mut certificates = Vec::new();
    for (k, sigma) in sigmas.iter().enumerate() {
        let equations: Vec<(Permutation, Permutation)> = (0..n)
            .map(|x| (base_images[x].clone(), base_images[sigma[x]].clone()))
            .collect();
        certificates.push(WitnessCertificate::checked(
            witness_perms[k].clone(),
            equations,
            format!("commuting_witnesses[{k}]"),
        )?);
    }

    Ok(CommutingWitnesses {
        ambient_degree: ambient.perm_degree().expect("perm backed"),
        base_images,
        certificates,
    })
}

fn total_pairs(a: &FiniteGroup, sigma: &[usize]) -> Vec<(usize, usize)> {
    let all: Vec<usize> = (0..a.order()).collect();
    a.generating_sequence(&all)
        .into_iter()
        .map(|x| (x, sigma[x]))
        .collect()
}

/// Result of the odd-prime abelian build: an abelian overgroup whose
/// order is divisible by (p-1)/p times the input order.
#[derive(Debug)]
pub struct OddPrimeBuild {
    pub group: PermGroup,
    pub certificate: WitnessCertificate,
    pub sigma_order: u64,
    pub required_divisor: u64,
}

/// Given an abelian `a` of order divisible by the odd prime `p`, split
/// off the p-part of the largest invariant factor, act on it by a
/// generator of its (cyclic) automorphism group, extend by the identity
/// elsewhere, realize the automorphism by one witness, and return
/// B = <witness, complement> together with the verified divisibility
/// (p-1)/p * |A| divides |B|.
pub fn odd_prime_abelian_builder(
    a: &AbelianGroup,
    p: u64,
    config: &Config,
) -> Result<OddPrimeBuild> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    if a.order() % p != 0 {
        return Err(Error::Precondition(format!(
            "{p} does not divide the group order {}",
            a.order()
        )));
    }
    if a.order() as usize > config.degree_cap {
        return Err(Error::CapExceeded {
            what: "abelian builder degree",
            needed: a.order() as usize,
            cap: config.degree_cap,
        });
    }

    // p-part p^k of the largest invariant factor (the exponent)
    let coord = a.rank() - 1;
    let d = a.invariant_factors()[coord];
    let mut pk = 1u64;
    let mut rest = d;
    while rest % p == 0 {
        rest /= p;
        pk *= p;
    }
    let sigma_order = pk / p * (p - 1);
    let root = primitive_root_mod_prime_power(p, pk);
    let c = crt_pair(root, pk, 1, d / pk);
    let sigma = scale_coordinate_map(a, coord, c);

    let fin = a.to_finite_group();
    let pairs: Vec<(usize, usize)> = (0..a.rank())
        .map(|i| {
            let b = a.basis(i);
            (a.index_of(&b), sigma[a.index_of(&b)])
        })
        .collect();
    let pa = PartialAutomorphism::validate(&fin, &pairs)?;
    let hw = hall_witness_tagged(&fin, &pa, "odd_prime_abelian_builder")?;

    // complement generators: every coordinate below, plus the non-p part
    // of the split coordinate
    let mut comp_gens: Vec<Permutation> = Vec::new();
    for i in 0..coord {
        let idx = a.index_of(&a.basis(i));
        comp_gens.push(fin.regular_image(idx));
    }
    if d / pk > 1 {
        let mut t = a.zero();
        t[coord] = pk;
        comp_gens.push(fin.regular_image(a.index_of(&t)));
    }
    let mut gens = comp_gens;
    gens.push(hw.certificate.witness.clone());
    let group = PermGroup::from_generators(fin.order(), gens)?;

    // the witness centralizes the complement and generates an abelian B
    for x in group.generators() {
        for y in group.generators() {
            if !x.commutes_with(y) {
                return Err(Error::Internal("builder output is not abelian".into()));
            }
        }
    }
    let required_divisor = a.order() / p * (p - 1);
    let order = group
        .order_u128()
        .ok_or_else(|| Error::Internal("order overflow".into()))?;
    if order % required_divisor as u128 != 0 {
        return Err(Error::Internal(format!(
            "builder order {order} is not divisible by {required_divisor}"
        )));
    }

    Ok(OddPrimeBuild {
        group,
        certificate: hw.certificate,
        sigma_order,
        required_divisor,
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Least generator of the cyclic unit group mod p^k, p odd.
fn primitive_root_mod_prime_power(p: u64, pk: u64) -> u64 {
    let target = pk / p * (p - 1);
    'outer: for r in 2..pk {
        if r % p == 0 {
            continue;
        }
        let mut x = r;
        let mut ord = 1;
        while x != 1 {
            x = x * r % pk;
            ord += 1;
            if ord > target {
                continue 'outer;
            }
        }
        if ord == target {
            return r;
        }
    }
    unreachable!("odd prime powers have primitive roots")
}
