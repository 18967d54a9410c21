//! Exhaustive automorphism check for the quaternion group: its
//! automorphism group has order 24 and contains elements of order 4.

use crate::config::Config;
use crate::finite_group::FiniteGroup;
use crate::report::{ReportBuilder, VerificationReport};
use serde_json::json;

#[derive(Debug)]
pub struct Q8Automorphism {
    pub automorphism_count: usize,
    /// Total map of an order-4 automorphism on element indices.
    pub order_four: Option<Vec<usize>>,
}

pub fn q8_order4_automorphism() -> Q8Automorphism {
    let q8 = FiniteGroup::quaternion8();
    let whole: Vec<usize> = (0..8).collect();
    let autos = q8.isomorphisms(&whole, &whole);
    let order_of = |map: &std::collections::HashMap<usize, usize>| -> usize {
        let mut cur: Vec<usize> = (0..8).collect();
        for k in 1..=24 {
            cur = cur.iter().map(|&x| map[&x]).collect();
            if cur.iter().enumerate().all(|(i, &x)| i == x) {
                return k;
            }
        }
        unreachable!("automorphism order divides |Aut|")
    };
    let order_four = autos
        .iter()
        .find(|a| order_of(a) == 4)
        .map(|a| (0..8).map(|x| a[&x]).collect());
    Q8Automorphism {
        automorphism_count: autos.len(),
        order_four,
    }
}

pub fn suite_q8(_config: &Config) -> VerificationReport {
    let mut report = ReportBuilder::new("q8-automorphism");
    let out = q8_order4_automorphism();
    report.case(
        "aut-count",
        json!({}),
        json!(24),
        json!(out.automorphism_count),
    );
    report.check("order-four-exists", json!({}), out.order_four.is_some());
    if let Some(map) = &out.order_four {
        // sigma^4 = id, sigma^2 != id, explicitly
        let apply = |v: &Vec<usize>| -> Vec<usize> { v.iter().map(|&x| map[x]).collect() };
        let id: Vec<usize> = (0..8).collect();
        let s2 = apply(&apply(&id));
        let s4 = apply(&apply(&s2));
        report.check("sigma4-id", json!({}), s4 == id);
        report.check("sigma2-nontrivial", json!({}), s2 != id);
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q8_has_24_automorphisms_and_one_of_order_4() {
        let out = q8_order4_automorphism();
        assert_eq!(out.automorphism_count, 24);
        let map = out.order_four.expect("order-4 automorphism");
        let apply = |v: &Vec<usize>| -> Vec<usize> { v.iter().map(|&x| map[x]).collect() };
        let id: Vec<usize> = (0..8).collect();
        let s2 = apply(&apply(&id));
        assert_ne!(s2, id);
        assert_eq!(apply(&apply(&s2)), id);
    }
}
