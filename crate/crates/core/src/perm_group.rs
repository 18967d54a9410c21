//! Permutation groups backed by a base and strong generating set.
//!
//! The chain is built with the deterministic Schreier-Sims procedure:
//! base points are chosen smallest-moved-point first and orbits are
//! explored breadth first in generator order, so rebuilding a group from
//! the same generator list reproduces the same chain bit for bit.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};

#[derive(Debug, Clone)]
pub struct ChainLevel {
    pub base_point: usize,
    /// Orbit of the base point in discovery order.
    pub orbit: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`, when `p` is in the orbit.
    pub transversal: Vec<Option<Permutation>>,
}

#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong: Vec<Permutation>,
    chain: Vec<ChainLevel>,
    order: BigUint,
}

/// Serialized form: generators only; the chain is recomputed on load.
#[derive(Serialize, Deserialize)]
pub struct PermGroupData {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl PermGroup {
    pub fn from_generators(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let (strong, chain) = schreier_sims(degree, &gens);
        let order = chain
            .iter()
            .map(|l| BigUint::from(l.orbit.len()))
            .product::<BigUint>();
        Ok(PermGroup {
            degree,
            generators: gens,
            strong,
            chain,
            order,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::from_generators(degree, vec![]).expect("trivial group")
    }

    /// Full symmetric group on `0..n` in its natural action.
    pub fn symmetric(n: usize) -> Self {
        let gens = match n {
            0 | 1 => vec![],
            2 => vec![Permutation::from_cycles(2, &[vec![0, 1]]).unwrap()],
            _ => vec![
                Permutation::from_cycles(n, &[(0..n).collect()]).unwrap(),
                Permutation::from_cycles(n, &[vec![0, 1]]).unwrap(),
            ],
        };
        PermGroup::from_generators(n, gens).expect("symmetric group")
    }

    /// Alternating group on `0..n`.
    pub fn alternating(n: usize) -> Self {
        let gens = if n < 3 {
            vec![]
        } else if n == 3 {
            vec![Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap()]
        } else if n % 2 == 1 {
            vec![
                Permutation::from_cycles(n, &[(0..n).collect()]).unwrap(),
                Permutation::from_cycles(n, &[vec![0, 1, 2]]).unwrap(),
            ]
        } else {
            vec![
                Permutation::from_cycles(n, &[(1..n).collect()]).unwrap(),
                Permutation::from_cycles(n, &[vec![0, 1, 2]]).unwrap(),
            ]
        };
        PermGroup::from_generators(n, gens).expect("alternating group")
    }

    /// Cyclic group generated by the n-cycle on `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let gens = if n <= 1 {
            vec![]
        } else {
            vec![Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()]
        };
        PermGroup::from_generators(n.max(1), gens).expect("cyclic group")
    }

    /// Dihedral group of order 2n acting on the n-gon.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3, "dihedral action needs n >= 3");
        let rot = Permutation::from_cycles(n, &[(0..n).collect()]).unwrap();
        let refl_images: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        let refl = Permutation::from_images(refl_images).unwrap();
        PermGroup::from_generators(n, vec![rot, refl]).expect("dihedral group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.base_point).collect()
    }

    pub fn chain(&self) -> &[ChainLevel] {
        &self.chain
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u128(&self) -> Option<u128> {
        u128::try_from(&self.order).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.chain.is_empty()
    }

    /// True iff this group is the full symmetric group of its degree.
    pub fn is_full_symmetric(&self) -> bool {
        let mut fact = BigUint::from(1u32);
        for k in 2..=self.degree {
            fact *= BigUint::from(k);
        }
        self.order == fact
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.sift(p).is_identity()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Residue of sifting `p` through the chain; identity iff member.
    pub fn sift(&self, p: &Permutation) -> Permutation {
        let mut h = p.clone();
        for level in &self.chain {
            let target = h.apply(level.base_point);
            match &level.transversal[target] {
                Some(t) => h = &t.inverse() * &h,
                None => return h,
            }
        }
        h
    }

    /// All elements in breadth-first order from the generators, identity
    /// first. This order is the canonical element enumeration used for
    /// regular embeddings and the tower cache.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        enumerate_closure(self.degree, &self.generators, cap)
    }

    /// Uniformly random element via random transversal picks.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in &self.chain {
            let p = level.orbit[rng.gen_range(0..level.orbit.len())];
            let t = level.transversal[p].as_ref().expect("orbit point");
            g = &g * t;
        }
        g
    }

    pub fn to_data(&self) -> PermGroupData {
        PermGroupData {
            degree: self.degree,
            generators: self.generators.clone(),
        }
    }

    pub fn from_data(data: PermGroupData) -> Result<Self> {
        PermGroup::from_generators(data.degree, data.generators)
    }

    /// Subgroup generated by `elems`, with a reduced generating set:
    /// elements already generated by earlier ones are dropped.
    pub fn from_element_closure(degree: usize, elems: &[Permutation]) -> Result<Self> {
        let mut group = PermGroup::trivial(degree);
        let mut kept: Vec<Permutation> = Vec::new();
        for e in elems {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: e.degree(),
                });
            }
            if !group.contains(e) {
                kept.push(e.clone());
                group = PermGroup::from_generators(degree, kept.clone())?;
            }
        }
        Ok(group)
    }
}

/// Breadth-first closure of a generator list, identity first.
pub fn enumerate_closure(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut out: Vec<Permutation> = Vec::new();
    let mut queue: VecDeque<Permutation> = VecDeque::new();
    seen.insert(id.clone());
    out.push(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = &x * g;
            if seen.insert(y.clone()) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "element enumeration",
                        needed: out.len() + 1,
                        cap,
                    });
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

fn orbit_transversal(
    degree: usize,
    base_point: usize,
    gens: &[&Permutation],
) -> (Vec<usize>, Vec<Option<Permutation>>) {
    let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
    let mut orbit = vec![base_point];
    transversal[base_point] = Some(Permutation::identity(degree));
    let mut i = 0;
    while i < orbit.len() {
        let p = orbit[i];
        for s in gens {
            let q = s.apply(p);
            if transversal[q].is_none() {
                let t = *s * transversal[p].as_ref().unwrap();
                transversal[q] = Some(t);
                orbit.push(q);
            }
        }
        i += 1;
    }
    (orbit, transversal)
}

/// Number of leading base points fixed by `g`.
fn level_of(g: &Permutation, base: &[usize]) -> usize {
    base.iter().take_while(|&&b| g.apply(b) == b).count()
}

/// Deterministic Schreier-Sims. Returns the strong generating set and the
/// stabilizer chain.
fn schreier_sims(degree: usize, gens: &[Permutation]) -> (Vec<Permutation>, Vec<ChainLevel>) {
    let mut base: Vec<usize> = Vec::new();
    let mut strong: Vec<Permutation> = Vec::new();

    let add_generator = |g: Permutation, base: &mut Vec<usize>, strong: &mut Vec<Permutation>| {
        if level_of(&g, base) == base.len() {
            // fixes every existing base point: a new base point is needed
            let pt = (0..degree)
                .find(|&x| g.apply(x) != x)
                .expect("non-identity permutation moves a point");
            base.push(pt);
        }
        strong.push(g);
    };

    for g in gens {
        if !g.is_identity() {
            add_generator(g.clone(), &mut base, &mut strong);
        }
    }
    if strong.is_empty() {
        return (strong, Vec::new());
    }

    let gens_at = |strong: &[Permutation], base: &[usize], i: usize| -> Vec<Permutation> {
        strong
            .iter()
            .filter(|g| level_of(g, base) >= i)
            .cloned()
            .collect()
    };

    // strip through levels `from..`, returning the residue and the level
    // where it lives (base.len() means it fixes every base point)
    let strip = |chain: &[ChainLevel], from: usize, g: &Permutation| -> (Permutation, usize) {
        let mut h = g.clone();
        for (idx, level) in chain.iter().enumerate().skip(from) {
            if h.is_identity() {
                return (h, idx);
            }
            let target = h.apply(level.base_point);
            match &level.transversal[target] {
                Some(t) => h = &t.inverse() * &h,
                None => return (h, idx),
            }
        }
        (h, chain.len())
    };

    // chain levels are (re)built on demand during the downward sweep
    let mut chain: Vec<ChainLevel> = Vec::new();
    let rebuild_level =
        |chain: &mut Vec<ChainLevel>, strong: &[Permutation], base: &[usize], i: usize| {
            let level_gens: Vec<&Permutation> =
                strong.iter().filter(|g| level_of(g, base) >= i).collect();
            let (orbit, transversal) = orbit_transversal(degree, base[i], &level_gens);
            let level = ChainLevel {
                base_point: base[i],
                orbit,
                transversal,
            };
            if i < chain.len() {
                chain[i] = level;
            } else {
                assert_eq!(chain.len(), i, "levels are built top-down");
                chain.push(level);
            }
        };

    for i in 0..base.len() {
        rebuild_level(&mut chain, &strong, &base, i);
    }

    let mut i = base.len() as isize - 1;
    while i >= 0 {
        let iu = i as usize;
        rebuild_level(&mut chain, &strong, &base, iu);
        let level_gens = gens_at(&strong, &base, iu);
        let mut new_gen: Option<Permutation> = None;

        'scan: for oi in 0..chain[iu].orbit.len() {
            let p = chain[iu].orbit[oi];
            let tp = chain[iu].transversal[p].clone().unwrap();
            for s in &level_gens {
                let sp = s.apply(p);
                let tsp = chain[iu].transversal[sp].clone().unwrap();
                let schreier = &(&tsp.inverse() * s) * &tp;
                if schreier.is_identity() {
                    continue;
                }
                let (residue, _) = strip(&chain, iu + 1, &schreier);
                if !residue.is_identity() {
                    new_gen = Some(residue);
                    break 'scan;
                }
            }
        }

        match new_gen {
            Some(h) => {
                let extends_base = level_of(&h, &base) == base.len();
                let lives_at = if extends_base {
                    base.len()
                } else {
                    level_of(&h, &base)
                };
                add_generator(h, &mut base, &mut strong);
                if extends_base {
                    rebuild_level(&mut chain, &strong, &base, lives_at);
                }
                // re-verify closure from the new generator's level downward
                i = lives_at as isize;
            }
            None => {
                i -= 1;
            }
        }
    }

    (strong, chain)
}
