//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. All checks are discrete; there are no tolerances anywhere.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ultrahom::centralizer::{centralizer_by_enumeration, centralizer_elements};
use ultrahom::config::Config;
use ultrahom::corpus;
use ultrahom::error::Error;
use ultrahom::partial_aut::{extends_by_brute_force, PartialAutomorphism};
use ultrahom::perm::Permutation;
use ultrahom::perm_group::PermGroup;
use ultrahom::report::VerificationReport;
use ultrahom::theoremlab;
use ultrahom::tower::{LevelGroup, Tower};

fn gate(criterion: &str, report: &VerificationReport) {
    let status = if report.passed() { "PASS" } else { "FAIL" };
    println!("[{status}] {criterion}: {}", report.summary());
    if !report.passed() {
        for c in report.counterexamples.iter().take(5) {
            println!("    counterexample: {c}");
        }
    }
    assert!(report.passed(), "{criterion} failed");
}

fn gate_bool(criterion: &str, detail: &str, ok: bool) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("[{status}] {criterion}: {detail}");
    assert!(ok, "{criterion} failed: {detail}");
}

#[test]
fn criterion_01_inner_uh_classification() {
    let report = theoremlab::run_suite("inner-uh-small", &Config::default()).unwrap();
    gate(
        "criterion 1 (inner-UH classification over order <= 24)",
        &report,
    );
}

#[test]
fn criterion_02_conjugation_witnesses_at_desk_scale() {
    let report = theoremlab::run_suite("hall-desk", &Config::default()).unwrap();
    let total: u64 = report
        .cases
        .iter()
        .filter_map(|c| c.inputs.get("witnesses").and_then(|v| v.as_u64()))
        .sum();
    gate(
        &format!("criterion 2 (witness construction, {total} subgroup isomorphisms)"),
        &report,
    );
    assert!(total > 1000, "expected thousands of cases, got {total}");
}

#[test]
fn criterion_03_amalgam_intersections() {
    let report = theoremlab::run_suite("amalgam-desk", &Config::default()).unwrap();
    let total: u64 = report
        .cases
        .iter()
        .filter_map(|c| c.inputs.get("amalgams").and_then(|v| v.as_u64()))
        .sum();
    gate(
        &format!("criterion 3 (permutational products, {total} diagrams)"),
        &report,
    );
}

#[test]
fn criterion_04_eppa_pipeline_instance() {
    let report = theoremlab::run_suite("eppa-pipeline", &Config::default()).unwrap();
    gate("criterion 4 (amalgam with matched automorphisms)", &report);
}

#[test]
fn criterion_05_cycle_identity_and_order_products() {
    let r1 = theoremlab::run_suite("ncycle-identity", &Config::default()).unwrap();
    gate("criterion 5a (n-cycle identity, n = 3..12)", &r1);
    let r2 = theoremlab::run_suite("order-product", &Config::default()).unwrap();
    gate("criterion 5b (order products, full grid)", &r2);
}

#[test]
fn criterion_06_nth_roots() {
    let tower = Tower::build(2, &Config::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0600);
    let mut verified = 0usize;
    let mut skipped_no_root = 0usize;
    let mut attempts = 0usize;
    while verified < 200 && attempts < 2000 {
        attempts += 1;
        let level = rng.gen_range(0..=1usize);
        let g = match &tower.level(level).unwrap().group {
            LevelGroup::Concrete(group) => group.random_element(&mut rng),
            _ => unreachable!(),
        };
        let m = g.order() as u64;
        let kmax = 720 / m;
        if kmax < 2 {
            continue;
        }
        let k = rng.gen_range(2..=kmax);
        match tower.nth_root(level, &g, k) {
            Ok(root) => {
                assert_eq!(
                    root.root.pow(k as i64),
                    root.target,
                    "root equation must be exact (level {level}, k {k})"
                );
                verified += 1;
            }
            Err(Error::NoFiniteRoot(_)) => skipped_no_root += 1,
            Err(e) => panic!("unexpected nth_root failure: {e}"),
        }
    }
    gate_bool(
        "criterion 6 (k-th roots exact)",
        &format!("{verified} roots verified exactly, {skipped_no_root} ruled out by cycle counts"),
        verified >= 200,
    );
}

#[test]
fn criterion_07_abelian_family_arithmetic() {
    let r1 = theoremlab::run_suite("cyclic-2", &Config::default()).unwrap();
    gate("criterion 7a (sigma/tau family, k <= 6, m <= 3)", &r1);
    let r2 = theoremlab::run_suite("explosion-2", &Config::default()).unwrap();
    gate("criterion 7b (matrix family on (Z/2)^n, n <= 8)", &r2);
    let r3 = theoremlab::run_suite("prime-peeling", &Config::default()).unwrap();
    gate("criterion 7c (prime peeling to 10^6)", &r3);
}

#[test]
fn criterion_08_odd_abelian_fixing_automorphisms() {
    let report = theoremlab::run_suite("odd-abelian-fix", &Config::default()).unwrap();
    gate("criterion 8 (fixing automorphisms, order <= 225)", &report);
}

#[test]
fn criterion_09_wildness_fragments() {
    let r1 = theoremlab::run_suite("omitted-type", &Config::default()).unwrap();
    gate("criterion 9a (omitted-type fragments, N = 2..6)", &r1);
    let r2 = theoremlab::run_suite("centralizer-gap", &Config::default()).unwrap();
    gate("criterion 9b (centralizer gaps, 50 samples)", &r2);
    let r3 = theoremlab::run_suite("commuting-pattern", &Config::default()).unwrap();
    gate("criterion 9c (all 512 3x3 commuting patterns)", &r3);
    let r4 = theoremlab::run_suite("straight-maximality", &Config::default()).unwrap();
    gate("criterion 9d (Boolean algebra over {3,5,7})", &r4);
}

#[test]
fn criterion_10_tower_witness_services() {
    let tower = Tower::build(2, &Config::default()).unwrap();

    // every partial automorphism of the base level (as a subgroup
    // isomorphism) is witnessed one level up
    let level0 = tower.level(0).unwrap();
    let fin = level0.finite_group().unwrap();
    let elems = level0.elements().unwrap().to_vec();
    let subgroups = fin.all_subgroups();
    let mut witnessed = 0usize;
    for dom in &subgroups {
        let gens = fin.generating_sequence(dom);
        for ran in &subgroups {
            if dom.len() != ran.len() {
                continue;
            }
            for iso in fin.isomorphisms(dom, ran) {
                let pairs: Vec<(Permutation, Permutation)> = gens
                    .iter()
                    .map(|&d| (elems[d].clone(), elems[iso[&d]].clone()))
                    .collect();
                let cert = tower
                    .inner_uh_witness(0, &pairs)
                    .expect("every base-level map must be witnessed");
                assert!(cert.verify());
                assert_eq!(cert.witness.degree(), 6);
                witnessed += 1;
            }
        }
    }
    gate_bool(
        "criterion 10a (exhaustive base-level witnesses)",
        &format!("{witnessed} subgroup isomorphisms witnessed in Sym(6)"),
        witnessed == 18,
    );

    // 1000 random same-order pairs at levels 0 and 1
    let mut rng = ChaCha8Rng::seed_from_u64(0x1000);
    let mut done = 0usize;
    while done < 1000 {
        let level = rng.gen_range(0..=1usize);
        let LevelGroup::Concrete(group) = &tower.level(level).unwrap().group else {
            unreachable!()
        };
        let a = group.random_element(&mut rng);
        let b = group.random_element(&mut rng);
        if a.order() != b.order() {
            continue;
        }
        let cert = tower.conjugacy_witness_same_order(level, &a, &b).unwrap();
        assert!(cert.verify());
        done += 1;
    }
    // including a pair that is non-conjugate at its own level
    let a = Permutation::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap();
    let b = Permutation::from_cycles(6, &[vec![0, 1, 2], vec![3, 4]]).unwrap();
    assert_ne!(a.cycle_type(), b.cycle_type());
    let cert = tower.conjugacy_witness_same_order(1, &a, &b).unwrap();
    assert!(cert.verify());
    gate_bool(
        "criterion 10b (same-order conjugacy service)",
        "1000 random pairs plus one non-conjugate pair joined one level up",
        done == 1000,
    );
}

#[test]
fn criterion_11_cross_oracle_consistency() {
    // centralizer backtrack vs exhaustive enumeration
    let mut rng = ChaCha8Rng::seed_from_u64(0x1100);
    let mut compared = 0usize;
    for (name, group) in corpus::perm_group_corpus(5000) {
        let mut targets: Vec<Vec<Permutation>> = Vec::new();
        if let Some(g) = group.generators().first() {
            targets.push(vec![g.clone()]);
        }
        targets.push(vec![group.random_element(&mut rng)]);
        targets.push(vec![
            group.random_element(&mut rng),
            group.random_element(&mut rng),
        ]);
        for t in targets {
            let mut fast = centralizer_elements(&group, &t, 100_000)
                .unwrap_or_else(|e| panic!("{name}: backtrack failed: {e}"));
            let mut slow = centralizer_by_enumeration(&group, &t, 100_000).unwrap();
            fast.sort();
            slow.sort();
            assert_eq!(fast, slow, "centralizer mismatch in {name}");
            compared += 1;
        }
    }
    gate_bool(
        "criterion 11a (centralizer backtrack vs enumeration)",
        &format!("{compared} target sets agree on the full corpus"),
        compared > 0,
    );

    // partial-automorphism validation vs brute-force extension search
    let mut checked = 0usize;
    for (name, group) in corpus::small_groups(16) {
        let n = group.order();
        for a in 0..n {
            for b in 0..n {
                let verdict = PartialAutomorphism::validate(&group, &[(a, b)]).is_ok();
                let oracle = extends_by_brute_force(&group, &[(a, b)]);
                assert_eq!(verdict, oracle, "{name}: singleton ({a},{b})");
                checked += 1;
            }
        }
        for _ in 0..30 {
            let pairs: Vec<(usize, usize)> = (0..2)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect();
            let verdict = PartialAutomorphism::validate(&group, &pairs).is_ok();
            let oracle = extends_by_brute_force(&group, &pairs);
            assert_eq!(verdict, oracle, "{name}: pairs {pairs:?}");
            checked += 1;
        }
    }
    gate_bool(
        "criterion 11b (validation vs brute-force isomorphism search)",
        &format!("{checked} pair lists agree over order <= 16"),
        checked > 0,
    );
}

#[test]
fn membership_sanity_outside_random_permutations() {
    // membership is consistent: products of generators are members and a
    // random same-degree permutation outside a proper subgroup is not
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a6 = PermGroup::alternating(6);
    for _ in 0..100 {
        let mut images: Vec<usize> = (0..6).collect();
        for i in (1..6).rev() {
            let j = rng.gen_range(0..=i);
            images.swap(i, j);
        }
        let p = Permutation::from_images(images).unwrap();
        let parity_odd = p.cycle_type().iter().map(|l| l - 1).sum::<usize>() % 2 == 1;
        assert_eq!(!a6.contains(&p), parity_odd);
    }
}
