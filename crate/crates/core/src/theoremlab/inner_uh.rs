//! Exhaustive inner-ultrahomogeneity check for small groups: every
//! isomorphism between subgroups must be realized by conjugation.

use crate::config::Config;
use crate::corpus;
use crate::error::{Error, Result};
use crate::finite_group::FiniteGroup;
use crate::report::{ReportBuilder, VerificationReport};
use serde_json::json;

#[derive(Debug, Clone)]
pub struct InnerUhOutcome {
    pub is_inner_uh: bool,
    pub subgroup_count: usize,
    pub isomorphisms_checked: usize,
    /// First unwitnessed isomorphism: (domain, range, generator pairs).
    pub counterexample: Option<(Vec<usize>, Vec<usize>, Vec<(usize, usize)>)>,
}

/// Enumerate all pairs of isomorphic subgroups and all isomorphisms
/// between them; search the group for a conjugating element realizing
/// each. True iff every one is witnessed.
pub fn check_inner_ultrahomogeneous(group: &FiniteGroup) -> Result<InnerUhOutcome> {
    if group.order() > 48 {
        return Err(Error::CapExceeded {
            what: "inner ultrahomogeneity check",
            needed: group.order(),
            cap: 48,
        });
    }
    let subgroups = group.all_subgroups();
    let mut isomorphisms_checked = 0usize;
    for dom in &subgroups {
        let dom_gens = group.generating_sequence(dom);
        for ran in &subgroups {
            if dom.len() != ran.len() {
                continue;
            }
            for iso in group.isomorphisms(dom, ran) {
                isomorphisms_checked += 1;
                // conjugation by w agrees with iso on the whole domain as
                // soon as it does on a generating set
                let witnessed = (0..group.order())
                    .any(|w| dom_gens.iter().all(|&d| group.conjugate(d, w) == iso[&d]));
                if !witnessed {
                    let pairs: Vec<(usize, usize)> =
                        dom_gens.iter().map(|&d| (d, iso[&d])).collect();
                    return Ok(InnerUhOutcome {
                        is_inner_uh: false,
                        subgroup_count: subgroups.len(),
                        isomorphisms_checked,
                        counterexample: Some((dom.clone(), ran.clone(), pairs)),
                    });
                }
            }
        }
    }
    Ok(InnerUhOutcome {
        is_inner_uh: true,
        subgroup_count: subgroups.len(),
        isomorphisms_checked,
        counterexample: None,
    })
}

/// The classification suite: over the corpus of groups of order <= 24,
/// exactly the trivial group, Z/2 and the nonabelian group of order 6
/// pass the check.
pub fn suite_inner_uh_small(_config: &Config) -> VerificationReport {
    let mut report = ReportBuilder::new("inner-uh-small");
    for (name, group) in corpus::small_groups(24) {
        let expected =
            matches!(group.order(), 1 | 2) || (group.order() == 6 && !group.is_abelian());
        match check_inner_ultrahomogeneous(&group) {
            Ok(outcome) => {
                report.case(
                    format!("inner-uh[{name}]"),
                    json!({
                        "group": name,
                        "order": group.order(),
                        "isomorphisms": outcome.isomorphisms_checked,
                    }),
                    json!(expected),
                    json!(outcome.is_inner_uh),
                );
            }
            Err(e) => report.error(format!("inner-uh[{name}]"), json!({ "group": name }), &e),
        }
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_z2_and_s3_pass() {
        assert!(
            check_inner_ultrahomogeneous(&FiniteGroup::trivial())
                .unwrap()
                .is_inner_uh
        );
        assert!(
            check_inner_ultrahomogeneous(&FiniteGroup::cyclic(2))
                .unwrap()
                .is_inner_uh
        );
        assert!(
            check_inner_ultrahomogeneous(&FiniteGroup::symmetric(3))
                .unwrap()
                .is_inner_uh
        );
    }

    #[test]
    fn z3_fails_via_inversion() {
        let out = check_inner_ultrahomogeneous(&FiniteGroup::cyclic(3)).unwrap();
        assert!(!out.is_inner_uh);
        let (_, _, pairs) = out.counterexample.unwrap();
        // the unwitnessed map inverts a generator
        assert!(pairs.iter().any(|&(a, b)| a != b));
    }

    #[test]
    fn s4_q8_a4_fail() {
        for g in [
            FiniteGroup::symmetric(4),
            FiniteGroup::quaternion8(),
            FiniteGroup::alternating(4),
        ] {
            assert!(!check_inner_ultrahomogeneous(&g).unwrap().is_inner_uh);
        }
    }

    #[test]
    fn cap_enforced() {
        let (big, _, _) =
            FiniteGroup::direct_product(&FiniteGroup::symmetric(4), &FiniteGroup::cyclic(3));
        assert!(check_inner_ultrahomogeneous(&big).is_err());
    }
}
