//! Finite fragments of the wildness witnesses: centralizer gaps realized
//! in extensions, the consistency half of the omitted 2-type, and
//! commuting patterns realized against arbitrary 0/1 matrices.

use crate::abelian::AbelianGroup;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::finite_group::FiniteGroup;
use crate::partial_aut::PartialAutomorphism;
use crate::perm::Permutation;
use crate::report::{ReportBuilder, VerificationReport};
use crate::witness::{hall_witness_tagged, WitnessCertificate};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Witness that C(g) is properly contained in C(g^n) in an extension:
/// realize <g> x Z/n regularly, send g to g*g0 fixing g0, and conjugate.
/// The returned data carries the two commutation facts, both verified.
#[derive(Debug)]
pub struct CentralizerGap {
    pub certificate: WitnessCertificate,
    pub commutes_with_g_power: bool,
    pub commutes_with_g: bool,
}

/// `m` is the order of g; requires `n >= 2` and `n | m`.
pub fn centralizer_gap_witness(m: u64, n: u64, config: &Config) -> Result<CentralizerGap> {
    if n < 2 {
        return Err(Error::Precondition("no gap is claimed for n = 1".into()));
    }
    if m % n != 0 {
        return Err(Error::Precondition(format!("{n} does not divide {m}")));
    }
    let degree = (m * n) as usize;
    if degree > config.degree_cap {
        return Err(Error::CapExceeded {
            what: "centralizer gap degree",
            needed: degree,
            cap: config.degree_cap,
        });
    }
    // <g> x Z/n with g = (1, 0), g0 = (0, 1)
    let (prod, eg, e0) = FiniteGroup::direct_product(
        &FiniteGroup::cyclic(m as usize),
        &FiniteGroup::cyclic(n as usize),
    );
    let g = eg[1];
    let g0 = e0[1];
    // the map g -> g*g0, g0 -> g0 extends to (a, b) -> (a, a + b)
    let pairs = vec![(g, prod.mul(g, g0)), (g0, g0)];
    let p = PartialAutomorphism::validate(&prod, &pairs)?;
    let hw = hall_witness_tagged(&prod, &p, &format!("centralizer_gap[m={m},n={n}]"))?;
    let w = &hw.certificate.witness;
    let gp = prod.regular_image(prod.pow(g, n as i64));
    let gg = prod.regular_image(g);
    Ok(CentralizerGap {
        commutes_with_g_power: gp.commutes_with(w),
        commutes_with_g: gg.commutes_with(w),
        certificate: hw.certificate,
    })
}

pub fn suite_centralizer_gap(config: &Config) -> VerificationReport {
    let mut report = ReportBuilder::new("centralizer-gap");
    for (m, n) in [(4u64, 2u64), (9, 3), (12, 2), (12, 3), (20, 4)] {
        match centralizer_gap_witness(m, n, config) {
            Ok(out) => report.case(
                format!("gap[m={m},n={n}]"),
                json!({"m": m, "n": n}),
                json!({"commutes_with_power": true, "commutes_with_g": false}),
                json!({
                    "commutes_with_power": out.commutes_with_g_power,
                    "commutes_with_g": out.commutes_with_g,
                }),
            ),
            Err(e) => report.error(format!("gap[m={m},n={n}]"), json!({"m": m, "n": n}), &e),
        }
    }
    // n = 1 rejected
    report.check(
        "gap[n=1-rejected]",
        json!({}),
        centralizer_gap_witness(4, 1, config).is_err(),
    );
    // deterministic sample of 50 further (m, n) pairs
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a_b5);
    let mut sampled = 0;
    let mut failures = 0;
    while sampled < 50 {
        let m = rng.gen_range(2u64..=24);
        let divisors: Vec<u64> = (2..=m).filter(|d| m % d == 0).collect();
        if divisors.is_empty() {
            continue;
        }
        let n = divisors[rng.gen_range(0..divisors.len())];
        sampled += 1;
        match centralizer_gap_witness(m, n, config) {
            Ok(out) => {
                if !out.commutes_with_g_power || out.commutes_with_g {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    report.case(
        "gap[50-samples]",
        json!({"samples": sampled}),
        json!(0),
        json!(failures),
    );
    report.finish()
}

/// The consistency half of the omitted 2-type at parameter N: with g an
/// N^2-cycle, `g^k (g^N)^l` is never the identity for -N < k, l < N,
/// (k, l) != (0, 0); and the corresponding centralizer gap is witnessed.
pub fn omitted_type_fragment(n: u64, config: &Config) -> Result<OmittedTypeOutcome> {
    if !(2..=6).contains(&n) {
        return Err(Error::CapExceeded {
            what: "omitted type parameter",
            needed: n as usize,
            cap: 6,
        });
    }
    let nn = (n * n) as usize;
    let g = Permutation::from_cycles(nn, &[(0..nn).collect()])?;
    let gn = g.pow(n as i64);
    let mut checked = 0usize;
    let mut failures = 0usize;
    for k in -(n as i64 - 1)..(n as i64) {
        for l in -(n as i64 - 1)..(n as i64) {
            if k == 0 && l == 0 {
                continue;
            }
            checked += 1;
            let prod = &g.pow(k) * &gn.pow(l);
            if prod.is_identity() {
                failures += 1;
            }
        }
    }
    let gap = centralizer_gap_witness(n * n, n, config)?;
    Ok(OmittedTypeOutcome {
        checked,
        failures,
        gap_ok: gap.commutes_with_g_power && !gap.commutes_with_g,
    })
}

#[derive(Debug)]
pub struct OmittedTypeOutcome {
    pub checked: usize,
    pub failures: usize,
    pub gap_ok: bool,
}

pub fn suite_omitted_type(config: &Config) -> VerificationReport {
    let mut report = ReportBuilder::new("omitted-type");
    for n in 2..=6u64 {
        match omitted_type_fragment(n, config) {
            Ok(out) => {
                let expected_checked = ((2 * n - 1) * (2 * n - 1) - 1) as usize;
                report.case(
                    format!("no-collapse[N={n}]"),
                    json!({"N": n, "checked": out.checked}),
                    json!({"failures": 0, "checked": expected_checked, "gap": true}),
                    json!({
                        "failures": out.failures,
                        "checked": out.checked,
                        "gap": out.gap_ok,
                    }),
                );
            }
            Err(e) => report.error(format!("no-collapse[N={n}]"), json!({"N": n}), &e),
        }
    }
    report.finish()
}

/// Realize a 0/1 commuting pattern: generators a_0..a_(2r-1) of
/// (Z/2)^(2r) in Sym(2^(2r)), one witness per column conjugating a_(2i)
/// to itself when M[i][j] holds and to a_(2i+1) otherwise; the commutator
/// [a_(2i), gamma_j] vanishes exactly on the pattern.
pub fn commuting_pattern_realizer(matrix: &[Vec<bool>]) -> Result<PatternOutcome> {
    let rows = matrix.len();
    if rows == 0 || rows > 4 {
        return Err(Error::CapExceeded {
            what: "pattern rows",
            needed: rows,
            cap: 4,
        });
    }
    let cols = matrix[0].len();
    if cols == 0 || cols > 8 || matrix.iter().any(|r| r.len() != cols) {
        return Err(Error::CapExceeded {
            what: "pattern columns",
            needed: cols,
            cap: 8,
        });
    }
    let group = AbelianGroup::new(vec![2; 2 * rows])?;
    let fin = group.to_finite_group();
    let a_idx: Vec<usize> = (0..2 * rows)
        .map(|i| group.index_of(&group.basis(i)))
        .collect();

    let mut pattern_ok = true;
    let mut witnesses = Vec::new();
    for j in 0..cols {
        let pairs: Vec<(usize, usize)> = (0..rows)
            .map(|i| {
                let from = a_idx[2 * i];
                let to = if matrix[i][j] {
                    a_idx[2 * i]
                } else {
                    a_idx[2 * i + 1]
                };
                (from, to)
            })
            .collect();
        let p = PartialAutomorphism::validate(&fin, &pairs)?;
        let hw = hall_witness_tagged(&fin, &p, &format!("commuting_pattern[col {j}]"))?;
        let gamma = hw.certificate.witness.clone();
        for (i, row) in matrix.iter().enumerate() {
            let a = fin.regular_image(a_idx[2 * i]);
            if a.commutes_with(&gamma) != row[j] {
                pattern_ok = false;
            }
        }
        witnesses.push(hw.certificate);
    }
    Ok(PatternOutcome {
        pattern_ok,
        witnesses,
    })
}

#[derive(Debug)]
pub struct PatternOutcome {
    pub pattern_ok: bool,
    pub witnesses: Vec<WitnessCertificate>,
}

/// Finite fragment of the uncountably-many-types family: a shift witness
/// conjugating a_i to a_(i+2) and one pattern witness per subset, so that
/// `(x^(y^k))^z = x^(y^k)` holds exactly when `k` lies in the subset.
pub fn type_fragment(rows: usize, subset: &[bool]) -> Result<bool> {
    if rows == 0 || rows > 4 || subset.len() != rows {
        return Err(Error::Precondition(
            "subset must have one flag per row".into(),
        ));
    }
    let group = AbelianGroup::new(vec![2; 2 * rows])?;
    let fin = group.to_finite_group();
    let a_idx: Vec<usize> = (0..2 * rows)
        .map(|i| group.index_of(&group.basis(i)))
        .collect();

    // shift: a_i -> a_(i+2)
    let shift_pairs: Vec<(usize, usize)> = (0..2 * rows - 2)
        .map(|i| (a_idx[i], a_idx[i + 2]))
        .collect();
    let shift = PartialAutomorphism::validate(&fin, &shift_pairs)?;
    let y = hall_witness_tagged(&fin, &shift, "type_fragment[shift]")?
        .certificate
        .witness;

    // pattern witness for the subset
    let col: Vec<Vec<bool>> = subset.iter().map(|&b| vec![b]).collect();
    let z = commuting_pattern_realizer(&col)?.witnesses[0]
        .witness
        .clone();

    let x0 = fin.regular_image(a_idx[0]);
    let mut ok = true;
    for (k, &member) in subset.iter().enumerate() {
        let mut x = x0.clone();
        for _ in 0..k {
            x = x.conjugate_by(&y);
        }
        // x is now the image of a_(2k)
        if x != fin.regular_image(a_idx[2 * k]) {
            ok = false;
        }
        if (x.conjugate_by(&z) == x) != member {
            ok = false;
        }
    }
    Ok(ok)
}

pub fn suite_commuting_pattern(_config: &Config) -> VerificationReport {
    let mut report = ReportBuilder::new("commuting-pattern");
    // all-ones and identity 2x2 named cases
    let all_ones = vec![vec![true; 3]; 3];
    match commuting_pattern_realizer(&all_ones) {
        Ok(out) => report.check("pattern[all-ones-3x3]", json!({}), out.pattern_ok),
        Err(e) => report.error("pattern[all-ones-3x3]", json!({}), &e),
    }
    let id2 = vec![vec![true, false], vec![false, true]];
    match commuting_pattern_realizer(&id2) {
        Ok(out) => report.check("pattern[identity-2x2]", json!({}), out.pattern_ok),
        Err(e) => report.error("pattern[identity-2x2]", json!({}), &e),
    }
    // all 512 3x3 matrices
    let mut failures = 0usize;
    for bits in 0..512u32 {
        let matrix: Vec<Vec<bool>> = (0..3)
            .map(|i| (0..3).map(|j| bits >> (3 * i + j) & 1 == 1).collect())
            .collect();
        match commuting_pattern_realizer(&matrix) {
            Ok(out) if out.pattern_ok => {}
            _ => failures += 1,
        }
    }
    report.case(
        "pattern[all-3x3]",
        json!({"matrices": 512}),
        json!(0),
        json!(failures),
    );
    // type fragments for every subset at r = 3
    let mut frag_failures = 0usize;
    for bits in 0..8u32 {
        let subset: Vec<bool> = (0..3).map(|i| bits >> i & 1 == 1).collect();
        match type_fragment(3, &subset) {
            Ok(true) => {}
            _ => frag_failures += 1,
        }
    }
    report.case(
        "type-fragments[r=3]",
        json!({"subsets": 8}),
        json!(0),
        json!(frag_failures),
    );
    report.finish()
}
