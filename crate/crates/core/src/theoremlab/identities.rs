//! Executable identity checks: the n-cycle product identity that pins
//! the composition convention, the inversion consequence, the permuted
//! generator conjugation law, bounded-width products of fixed-order
//! elements, and the brute-force conjugate-width oracle.

use crate::abelian::AbelianGroup;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::partial_aut::PartialAutomorphism;
use crate::perm::Permutation;
use crate::perm_group::PermGroup;
use crate::report::{ReportBuilder, VerificationReport};
use crate::witness::hall_witness_tagged;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::collections::HashMap;

/// Evaluate the identity `(0,1,..,n-1)(n-1,n,n-2,..,1) = (0,1)(n-1,n)` in
/// Sym(n+1) under the crate convention and under the flipped composition
/// order. Exactly one of the two returned flags can be true.
pub fn ncycle_identity_check(n: usize) -> Result<(bool, bool)> {
    if !(3..=12).contains(&n) {
        return Err(Error::CapExceeded {
            what: "n-cycle identity parameter",
            needed: n,
            cap: 12,
        });
    }
    let degree = n + 1;
    let c1: Vec<usize> = (0..n).collect();
    let mut c2: Vec<usize> = vec![n - 1, n];
    c2.extend((1..=n - 2).rev());
    let p1 = Permutation::from_cycles(degree, &[c1])?;
    let p2 = Permutation::from_cycles(degree, &[c2])?;
    let rhs = Permutation::from_cycles(degree, &[vec![0, 1], vec![n - 1, n]])?;
    Ok((&p1 * &p2 == rhs, &p2 * &p1 == rhs))
}

pub fn suite_ncycle_identity(_config: &Config) -> VerificationReport {
    let mut report = ReportBuilder::new("ncycle-identity");
    for n in 3..=12 {
        match ncycle_identity_check(n) {
            Ok((ours, flipped)) => {
                report.check(
                    format!("holds-under-convention[n={n}]"),
                    json!({"n": n}),
                    ours,
                );
                report.check(
                    format!("fails-when-flipped[n={n}]"),
                    json!({"n": n}),
                    !flipped,
                );
            }
            Err(e) => report.error(format!("ncycle[{n}]"), json!({"n": n}), &e),
        }
    }
    report.finish()
}

/// For pairs with `g^h = g^-1`, the consequence is `h^(g^-1) h^-1 = g^2`.
/// (Squares and inverse squares generate the same normal content; with
/// this crate's conventions the squared form is the one that holds, and
/// it agrees with the inverse-squared form exactly when g^4 = 1.)
pub fn inversion_identity_holds(g: &Permutation, h: &Permutation) -> bool {
    let lhs = &h.conjugate_by(&g.inverse()) * &h.inverse();
    lhs == g.pow(2)
}

pub fn suite_inversion_identity(_config: &Config) -> VerificationReport {
    let mut report = ReportBuilder::new("inversion-identity");
    let groups = vec![
        ("S3", PermGroup::symmetric(3)),
        ("S4", PermGroup::symmetric(4)),
        ("D5", PermGroup::dihedral(5)),
    ];
    for (name, group) in groups {
        let elems = group.elements(10_000).expect("small group");
        let mut inverting_pairs = 0usize;
        let mut failures = 0usize;
        for g in &elems {
            let ginv = g.inverse();
            if g == &ginv {
                continue;
            }
            for h in &elems {
                if g.conjugate_by(h) == ginv {
                    inverting_pairs += 1;
                    if !inversion_identity_holds(g, h) {
                        failures += 1;
                    }
                }
            }
        }
        report.case(
            format!("inversion-identity[{name}]"),
            json!({"group": name, "inverting_pairs": inverting_pairs}),
            json!(0),
            json!(failures),
        );
    }
    report.finish()
}

/// Realize (Z/2)^N with generators g_k inside Sym(2^N), realize coordinate
/// permutations by conjugation witnesses, and verify
/// `g_k ^ (g_sigma ^ g_tau) = g_(tau sigma tau^-1 (k))`.
pub fn permuted_generator_identity(
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<PermutedGeneratorOutcome> {
    if !(2..=8).contains(&n) {
        return Err(Error::CapExceeded {
            what: "permuted generator rank",
            needed: n,
            cap: 8,
        });
    }
    let group = AbelianGroup::new(vec![2; n])?;
    let fin = group.to_finite_group();
    let basis_idx: Vec<usize> = (0..n).map(|i| group.index_of(&group.basis(i))).collect();

    let mut witness_cache: HashMap<Vec<usize>, Permutation> = HashMap::new();
    let mut witness_of = |sigma: &[usize]| -> Result<Permutation> {
        if let Some(w) = witness_cache.get(sigma) {
            return Ok(w.clone());
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .map(|k| (basis_idx[k], basis_idx[sigma[k]]))
            .collect();
        let p = PartialAutomorphism::validate(&fin, &pairs)?;
        let w = hall_witness_tagged(&fin, &p, "permuted_generator")?
            .certificate
            .witness;
        witness_cache.insert(sigma.to_vec(), w.clone());
        Ok(w)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_perm = |rng: &mut ChaCha8Rng| -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            v.swap(i, j);
        }
        v
    };

    let mut pairs: Vec<(Vec<usize>, Vec<usize>)> = vec![
        ((0..n).collect(), (0..n).collect()), // identity case
    ];
    if n >= 3 {
        // a 3-cycle against a transposition
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.swap(0, 1);
        sigma.swap(1, 2);
        let mut tau: Vec<usize> = (0..n).collect();
        tau.swap(1, 2);
        pairs.push((sigma, tau));
        // a full cycle against a transposition
        let full: Vec<usize> = (1..n).chain(std::iter::once(0)).collect();
        let mut tau2: Vec<usize> = (0..n).collect();
        tau2.swap(0, 1);
        pairs.push((full, tau2));
    }
    for _ in 0..samples {
        pairs.push((random_perm(&mut rng), random_perm(&mut rng)));
    }

    let mut checked = 0usize;
    let mut failures = 0usize;
    for (sigma, tau) in &pairs {
        let w_sigma = witness_of(sigma)?;
        let w_tau = witness_of(tau)?;
        let w = w_sigma.conjugate_by(&w_tau);
        // tau sigma tau^-1 as a point map
        let mut tau_inv = vec![0usize; n];
        for (i, &v) in tau.iter().enumerate() {
            tau_inv[v] = i;
        }
        for k in 0..n {
            let expect = tau[sigma[tau_inv[k]]];
            let lhs = fin.regular_image(basis_idx[k]).conjugate_by(&w);
            let rhs = fin.regular_image(basis_idx[expect]);
            checked += 1;
            if lhs != rhs {
                failures += 1;
            }
        }
    }
    Ok(PermutedGeneratorOutcome { checked, failures })
}

#[derive(Debug)]
pub struct PermutedGeneratorOutcome {
    pub checked: usize,
    pub failures: usize,
}

pub fn suite_permuted_generators(_config: &Config) -> VerificationReport {
    let mut report = ReportBuilder::new("permuted-generators");
    for n in [5usize, 6] {
        match permuted_generator_identity(n, 6, 0x5eed_0001 + n as u64) {
            Ok(out) => report.case(
                format!("conjugation-law[N={n}]"),
                json!({"N": n, "checked": out.checked}),
                json!(0),
                json!(out.failures),
            ),
            Err(e) => report.error(format!("conjugation-law[N={n}]"), json!({"N": n}), &e),
        }
    }
    report.finish()
}

/// Up to four permutations of order n whose product has order m; unused
/// slots hold the identity, so the certified claim is "at most 4".
#[derive(Debug)]
pub struct OrderProductWitness {
    pub degree: usize,
    pub factors: [Permutation; 4],
    pub product: Permutation,
}

pub fn order_product_check(n: u64, m: u64) -> Result<OrderProductWitness> {
    if !(2..=6).contains(&n) || !(1..=8).contains(&m) {
        return Err(Error::CapExceeded {
            what: "order product grid",
            needed: (n * 10 + m) as usize,
            cap: 68,
        });
    }
    let witness = build_order_product(n, m).or_else(|_| search_order_product(n, m))?;
    verify_order_product(&witness, n, m)?;
    Ok(witness)
}

fn verify_order_product(w: &OrderProductWitness, n: u64, m: u64) -> Result<()> {
    for f in &w.factors {
        if !f.is_identity() && f.order() != n as u128 {
            return Err(Error::Internal(format!(
                "factor order {} instead of {n}",
                f.order()
            )));
        }
    }
    let prod = w
        .factors
        .iter()
        .skip(1)
        .fold(w.factors[0].clone(), |acc, f| &acc * f);
    if prod != w.product || prod.order() != m as u128 {
        return Err(Error::Internal(format!(
            "product order {} instead of {m}",
            prod.order()
        )));
    }
    Ok(())
}

fn build_order_product(n: u64, m: u64) -> Result<OrderProductWitness> {
    // identity target: two canceling factors
    if m == 1 {
        let c = order_n_element(n, 0, n as usize);
        let degree = c.degree();
        let id = Permutation::identity(degree);
        let prod = &c * &c.inverse();
        return Ok(OrderProductWitness {
            degree,
            factors: [c.clone(), c.inverse(), id.clone(), id],
            product: prod,
        });
    }
    // m = n: the element itself
    if m == n {
        let x = order_n_element(n, 0, n as usize);
        let degree = x.degree();
        let id = Permutation::identity(degree);
        return Ok(OrderProductWitness {
            degree,
            factors: [x.clone(), id.clone(), id.clone(), id],
            product: x,
        });
    }

    // an even-parity target of order m
    let (target_cycles, mut support) = even_target_cycles(m);

    // two reversal involutions per cycle, composed so sigma * tau = x
    let mut sigma_t: Vec<(usize, usize)> = Vec::new();
    let mut tau_t: Vec<(usize, usize)> = Vec::new();
    for cy in &target_cycles {
        let len = cy.len();
        // sigma: z_i <-> z_(len-i mod len); tau: z_i <-> z_(len-1-i)
        for i in 1..=(len - 1) / 2 {
            sigma_t.push((cy[i], cy[len - i]));
        }
        for i in 0..len / 2 {
            if cy[i] != cy[len - 1 - i] {
                tau_t.push((cy[i], cy[len - 1 - i]));
            }
        }
    }

    // parity pad: a common fresh transposition added to both involutions
    // keeps the product and lets the transposition counts both be even
    if n > 2 && sigma_t.len() % 2 == 1 {
        sigma_t.push((support, support + 1));
        tau_t.push((support, support + 1));
        support += 2;
    }
    if n > 2 && tau_t.len() % 2 == 1 {
        // counts have equal parity for an even target; reaching here
        // would mean the target was odd
        return Err(Error::Internal("involution parities disagree".into()));
    }

    let make_involution = |t: &[(usize, usize)], degree: usize| -> Result<Permutation> {
        let cycles: Vec<Vec<usize>> = t.iter().map(|&(a, b)| vec![a, b]).collect();
        Permutation::from_cycles(degree, &cycles)
    };

    if n == 2 {
        let sigma = make_involution(&sigma_t, support)?;
        let tau = make_involution(&tau_t, support)?;
        let x = Permutation::from_cycles(support, &target_cycles)?;
        let (sigma, tau) = orient_product(sigma, tau, &x)?;
        let id = Permutation::identity(support);
        return Ok(OrderProductWitness {
            degree: support,
            factors: [sigma, tau, id.clone(), id],
            product: x,
        });
    }

    let fresh_per_pair = (n as usize).saturating_sub(3);
    let degree = support + (sigma_t.len() / 2 + tau_t.len() / 2) * fresh_per_pair;
    let mut fresh = support;

    // each even involution becomes a product of two order-n elements:
    // every pair of its transpositions turns into two n-cycles through
    // (a,b,f_1..f_(n-3),c)(c,d,f_(n-3)..f_1,b) = (a b)(c d)
    let split =
        |t: &[(usize, usize)], fresh: &mut usize| -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for pair in t.chunks(2) {
                if pair.len() == 1 {
                    return Err(Error::Internal("odd transposition count".into()));
                }
                let (a, b) = pair[0];
                let (c, d) = pair[1];
                let f: Vec<usize> = (*fresh..*fresh + fresh_per_pair).collect();
                *fresh += fresh_per_pair;
                let mut c1 = vec![a, b];
                c1.extend(&f);
                c1.push(c);
                let mut c2 = vec![c, d];
                c2.extend(f.iter().rev());
                c2.push(b);
                left.push(c1);
                right.push(c2);
            }
            Ok((left, right))
        };

    let (s1, s2) = split(&sigma_t, &mut fresh)?;
    let (t1, t2) = split(&tau_t, &mut fresh)?;
    debug_assert_eq!(fresh, degree);

    let build = |cycles: &[Vec<usize>]| -> Result<Permutation> {
        if cycles.is_empty() {
            return Ok(Permutation::identity(degree));
        }
        Permutation::from_cycles(degree, cycles)
    };
    let sigma1 = build(&s1)?;
    let sigma2 = build(&s2)?;
    let tau1 = build(&t1)?;
    let tau2 = build(&t2)?;

    let sigma = make_involution(&sigma_t, degree)?;
    let tau = make_involution(&tau_t, degree)?;
    let x = Permutation::from_cycles(degree, &target_cycles)?;
    let (sigma, tau) = orient_product(sigma, tau, &x)?;

    // tie factor pairs to their involution, orienting each product
    let (sigma1, sigma2) = orient_product(sigma1, sigma2, &sigma)?;
    let (tau1, tau2) = orient_product(tau1, tau2, &tau)?;
    let product = &(&(&sigma1 * &sigma2) * &tau1) * &tau2;
    Ok(OrderProductWitness {
        degree,
        factors: [sigma1, sigma2, tau1, tau2],
        product,
    })
}

/// Swap the two factors if needed so that `a * b = x`.
fn orient_product(
    a: Permutation,
    b: Permutation,
    x: &Permutation,
) -> Result<(Permutation, Permutation)> {
    if &(&a * &b) == x {
        Ok((a, b))
    } else if &(&b * &a) == x {
        Ok((b, a))
    } else {
        Err(Error::Internal(
            "neither factor order yields the target".into(),
        ))
    }
}

/// Canonical even permutation of order m: an m-cycle, with one extra
/// transposition when the cycle alone is odd.
fn even_target_cycles(m: u64) -> (Vec<Vec<usize>>, usize) {
    let m = m as usize;
    let mut cycles = vec![(0..m).collect::<Vec<usize>>()];
    let mut support = m;
    if m % 2 == 0 {
        cycles.push(vec![m, m + 1]);
        support = m + 2;
    }
    (cycles, support)
}

/// Disjoint prime-power cycles realizing order n, starting at `offset`.
fn order_n_element(n: u64, offset: usize, min_degree: usize) -> Permutation {
    let mut parts: Vec<usize> = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut pe = 1u64;
            while rest % p == 0 {
                rest /= p;
                pe *= p;
            }
            parts.push(pe as usize);
        }
        p += 1;
    }
    if rest > 1 {
        parts.push(rest as usize);
    }
    let total: usize = parts.iter().sum();
    let degree = (offset + total).max(min_degree);
    let mut cycles = Vec::new();
    let mut next = offset;
    for len in parts {
        cycles.push((next..next + len).collect::<Vec<usize>>());
        next += len;
    }
    Permutation::from_cycles(degree, &cycles).expect("disjoint cycles")
}

/// Meet-in-the-middle fallback: products of up to four order-n elements
/// of Sym(d) for small d.
fn search_order_product(n: u64, m: u64) -> Result<OrderProductWitness> {
    for d in (n as usize).max(3)..=7 {
        let sym = PermGroup::symmetric(d);
        let elems = sym.elements(6000).expect("small symmetric group");
        let order_n: Vec<&Permutation> = elems.iter().filter(|p| p.order() == n as u128).collect();
        if order_n.is_empty() {
            continue;
        }
        // single factor
        if n == m {
            let x = order_n[0].clone();
            let id = Permutation::identity(d);
            return Ok(OrderProductWitness {
                degree: d,
                factors: [x.clone(), id.clone(), id.clone(), id],
                product: x,
            });
        }
        // two factors
        let mut two: HashMap<Permutation, (usize, usize)> = HashMap::new();
        for (i, a) in order_n.iter().enumerate() {
            for (j, b) in order_n.iter().enumerate() {
                let p = *a * *b;
                two.entry(p).or_insert((i, j));
            }
        }
        let id = Permutation::identity(d);
        for (p, &(i, j)) in &two {
            if p.order() == m as u128 {
                return Ok(OrderProductWitness {
                    degree: d,
                    factors: [
                        order_n[i].clone(),
                        order_n[j].clone(),
                        id.clone(),
                        id.clone(),
                    ],
                    product: p.clone(),
                });
            }
        }
        // four factors: u * v with u, v products of two
        for (u, &(i, j)) in &two {
            for target in elems.iter().filter(|p| p.order() == m as u128) {
                let v = &u.inverse() * target;
                if let Some(&(k, l)) = two.get(&v) {
                    return Ok(OrderProductWitness {
                        degree: d,
                        factors: [
                            order_n[i].clone(),
                            order_n[j].clone(),
                            order_n[k].clone(),
                            order_n[l].clone(),
                        ],
                        product: target.clone(),
                    });
                }
            }
        }
    }
    Err(Error::Internal(format!(
        "no product of at most four order-{n} elements of order {m} found"
    )))
}

pub fn suite_order_product(_config: &Config) -> VerificationReport {
    let mut report = ReportBuilder::new("order-product");
    for n in 2..=6u64 {
        for m in 1..=8u64 {
            match order_product_check(n, m) {
                Ok(w) => {
                    let used = w.factors.iter().filter(|f| !f.is_identity()).count();
                    report.case(
                        format!("order-product[n={n},m={m}]"),
                        json!({"n": n, "m": m, "degree": w.degree, "factors_used": used}),
                        json!(m),
                        json!(w.product.order() as u64),
                    );
                }
                Err(e) => report.error(
                    format!("order-product[n={n},m={m}]"),
                    json!({"n": n, "m": m}),
                    &e,
                ),
            }
        }
    }
    report.finish()
}

/// Shortest decomposition of `h` as a product of at most `max_width`
/// conjugates of `g`, by breadth-first search over the conjugate set.
pub fn conjugate_width_oracle(
    group: &PermGroup,
    g: &Permutation,
    h: &Permutation,
    max_width: usize,
    cap: usize,
) -> Result<Option<Vec<Permutation>>> {
    if g.is_identity() {
        return Err(Error::Precondition("g must not be the identity".into()));
    }
    let elems = group.elements(cap.min(5000))?;
    let mut conjugates: Vec<Permutation> = Vec::new();
    {
        let mut seen = std::collections::HashSet::new();
        for x in &elems {
            let c = g.conjugate_by(x);
            if seen.insert(c.clone()) {
                conjugates.push(c);
            }
        }
    }
    let mut parent: HashMap<Permutation, (Permutation, usize)> = HashMap::new();
    let mut frontier: Vec<Permutation> = vec![Permutation::identity(group.degree())];
    for width in 1..=max_width {
        let mut next = Vec::new();
        for cur in &frontier {
            for c in &conjugates {
                let p = cur * c;
                if !parent.contains_key(&p) {
                    parent.insert(p.clone(), (cur.clone(), width));
                    next.push(p);
                }
            }
        }
        if parent.contains_key(h) {
            // reconstruct
            let mut out = Vec::new();
            let mut cur = h.clone();
            while !cur.is_identity() {
                let (prev, _) = parent[&cur].clone();
                out.push(&prev.inverse() * &cur);
                cur = prev;
            }
            out.reverse();
            return Ok(Some(out));
        }
        frontier = next;
    }
    Ok(None)
}

pub fn suite_conjugate_width(_config: &Config) -> VerificationReport {
    let mut report = ReportBuilder::new("conjugate-width");
    let a5 = PermGroup::alternating(5);
    let g = Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
    // width 1: h = g
    match conjugate_width_oracle(&a5, &g, &g, 4, 5000) {
        Ok(Some(d)) => report.case(
            "width[h=g]",
            json!({"group": "A5"}),
            json!(1),
            json!(d.len()),
        ),
        Ok(None) => report.check("width[h=g]", json!({}), false),
        Err(e) => report.error("width[h=g]", json!({}), &e),
    }
    // a double transposition is a product of at most 2 conjugate 3-cycles
    let h = Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3]]).unwrap();
    match conjugate_width_oracle(&a5, &g, &h, 4, 5000) {
        Ok(Some(d)) => report.check(
            "width[double-transposition]",
            json!({"group": "A5", "width": d.len()}),
            d.len() <= 2,
        ),
        Ok(None) => report.check("width[double-transposition]", json!({}), false),
        Err(e) => report.error("width[double-transposition]", json!({}), &e),
    }
    // parity obstruction: odd target from even conjugates never appears
    let s5 = PermGroup::symmetric(5);
    let odd = Permutation::from_cycles(5, &[vec![0, 1]]).unwrap();
    match conjugate_width_oracle(&s5, &g, &odd, 4, 5000) {
        Ok(found) => report.case(
            "width[parity-obstruction]",
            json!({"group": "S5"}),
            json!(false),
            json!(found.is_some()),
        ),
        Err(e) => report.error("width[parity-obstruction]", json!({}), &e),
    }
    report.finish()
}
