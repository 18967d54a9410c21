//! The ascending tower `G_0 = S_3`, `G_1 = Sym(6)`, `G_2 = Sym(720)`,
//! where each level is the full symmetric group on the point set
//! enumerating the elements of the level below, and the embedding between
//! levels is the regular one (left multiplication on element indices).
//!
//! Level 2 is held abstractly: membership is trivially true and the
//! order 720! is only ever printed, never enumerated; its elements are
//! materialized lazily as degree-720 permutations by the witness
//! services. Element enumerations are breadth-first from the generator
//! list, identity first, and are persisted to disk so levels are stable
//! across runs: each cache file carries a format-version header and a
//! content hash of the level below.

use crate::centralizer::match_cycles;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::finite_group::FiniteGroup;
use crate::homomorphism::GroupHomomorphism;
use crate::partial_aut::PartialAutomorphism;
use crate::perm::Permutation;
use crate::perm_group::PermGroup;
use crate::witness::{hall_witness_tagged, WitnessCertificate};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

pub const CACHE_FORMAT_VERSION: u32 = 1;
pub const MAX_LEVEL: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheOutcome {
    Fresh,
    Loaded,
    RebuiltAfterMismatch,
}

pub struct TowerLevel {
    pub index: usize,
    pub group: LevelGroup,
    /// Enumerated elements (the point set of the next level); absent at
    /// the abstract top level.
    elements: Option<Vec<Permutation>>,
    element_index: OnceLock<HashMap<Permutation, usize>>,
    finite: OnceLock<FiniteGroup>,
    pub cache_outcome: CacheOutcome,
}

pub enum LevelGroup {
    Concrete(PermGroup),
    /// Full symmetric group, order stored symbolically.
    SymmetricAbstract {
        degree: usize,
    },
}

impl TowerLevel {
    pub fn degree(&self) -> usize {
        match &self.group {
            LevelGroup::Concrete(g) => g.degree(),
            LevelGroup::SymmetricAbstract { degree } => *degree,
        }
    }

    pub fn order(&self) -> BigUint {
        match &self.group {
            LevelGroup::Concrete(g) => g.order().clone(),
            LevelGroup::SymmetricAbstract { degree } => {
                let mut f = BigUint::from(1u32);
                for k in 2..=*degree {
                    f *= BigUint::from(k);
                }
                f
            }
        }
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        match &self.group {
            LevelGroup::Concrete(g) => g.contains(p),
            LevelGroup::SymmetricAbstract { degree } => p.degree() == *degree,
        }
    }

    pub fn elements(&self) -> Option<&[Permutation]> {
        self.elements.as_deref()
    }

    fn index_of(&self, p: &Permutation) -> Option<usize> {
        let elems = self.elements.as_ref()?;
        let index = self.element_index.get_or_init(|| {
            elems
                .iter()
                .enumerate()
                .map(|(i, e)| (e.clone(), i))
                .collect()
        });
        index.get(p).copied()
    }

    /// This level's group as an abstract finite group over its element
    /// enumeration (identity first).
    pub fn finite_group(&self) -> Result<&FiniteGroup> {
        let elems = self
            .elements
            .as_ref()
            .ok_or(Error::LevelOutOfRange(self.index))?;
        if let Some(f) = self.finite.get() {
            return Ok(f);
        }
        let f = FiniteGroup::from_perm_elements(self.degree(), elems.clone())?;
        let _ = self.finite.set(f);
        Ok(self.finite.get().expect("just set"))
    }
}

#[derive(Serialize, Deserialize)]
struct LevelData {
    format_version: u32,
    level: usize,
    parent_hash: String,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

pub struct Tower {
    levels: Vec<TowerLevel>,
}

impl Tower {
    /// Build (or load from `config.cache_dir`) levels `0..=max_level`.
    pub fn build(max_level: usize, config: &Config) -> Result<Tower> {
        if max_level > MAX_LEVEL {
            return Err(Error::LevelOutOfRange(max_level));
        }
        let mut levels: Vec<TowerLevel> = Vec::new();
        let mut parent_hash = String::new();
        for n in 0..=max_level {
            let level = match n {
                0 => build_concrete_level(0, PermGroup::symmetric(3), &parent_hash, config)?,
                1 => {
                    let degree = levels[0].elements().expect("level 0 enumerated").len();
                    build_concrete_level(1, PermGroup::symmetric(degree), &parent_hash, config)?
                }
                2 => {
                    let degree = levels[1].elements().expect("level 1 enumerated").len();
                    TowerLevel {
                        index: 2,
                        group: LevelGroup::SymmetricAbstract { degree },
                        elements: None,
                        element_index: OnceLock::new(),
                        finite: OnceLock::new(),
                        cache_outcome: CacheOutcome::Fresh,
                    }
                }
                _ => unreachable!(),
            };
            if let Some(elems) = level.elements() {
                parent_hash = hash_level(level.degree(), elems);
            }
            levels.push(level);
        }
        Ok(Tower { levels })
    }

    pub fn levels(&self) -> &[TowerLevel] {
        &self.levels
    }

    pub fn level(&self, n: usize) -> Result<&TowerLevel> {
        self.levels.get(n).ok_or(Error::LevelOutOfRange(n))
    }

    /// Regular embedding of an element of level `n` into level `n+1`.
    pub fn embed_up(&self, n: usize, g: &Permutation) -> Result<Permutation> {
        let level = self.level(n)?;
        if self.levels.len() <= n + 1 {
            return Err(Error::LevelOutOfRange(n + 1));
        }
        let elems = level.elements().ok_or(Error::LevelOutOfRange(n))?;
        if !level.contains(g) {
            return Err(Error::NotInGroup);
        }
        let mut images = Vec::with_capacity(elems.len());
        for e in elems {
            let prod = g * e;
            images.push(level.index_of(&prod).ok_or(Error::NotInGroup)?);
        }
        Permutation::from_images(images)
    }

    /// Embed from level `n` all the way to level `to`.
    pub fn embed_to(&self, n: usize, to: usize, g: &Permutation) -> Result<Permutation> {
        let mut x = g.clone();
        for lvl in n..to {
            x = self.embed_up(lvl, &x)?;
        }
        Ok(x)
    }

    /// Witness in level `n+1` conjugating the regular image of the
    /// partial automorphism's domain onto its range; the pairs are
    /// elements of level `n`.
    pub fn inner_uh_witness(
        &self,
        n: usize,
        pairs: &[(Permutation, Permutation)],
    ) -> Result<WitnessCertificate> {
        if n > 1 {
            return Err(Error::LevelOutOfRange(n));
        }
        let level = self.level(n)?;
        let fin = level.finite_group()?;
        let index_pairs: Vec<(usize, usize)> = pairs
            .iter()
            .map(|(a, b)| {
                let ia = level.index_of(a).ok_or(Error::NotInGroup)?;
                let ib = level.index_of(b).ok_or(Error::NotInGroup)?;
                Ok((ia, ib))
            })
            .collect::<Result<_>>()?;
        let p = PartialAutomorphism::validate(fin, &index_pairs)?;
        let hw = hall_witness_tagged(fin, &p, &format!("inner_uh_witness[level {n}]"))?;
        Ok(hw.certificate)
    }

    /// Conjugating witness in level `n+1` for two same-order elements of
    /// level `n`, found by direct cycle matching of their regular images
    /// (which are fixed-point-free of identical type whenever the orders
    /// agree, even if the elements are not conjugate at their own level).
    pub fn conjugacy_witness_same_order(
        &self,
        n: usize,
        a: &Permutation,
        b: &Permutation,
    ) -> Result<WitnessCertificate> {
        if n > 1 {
            return Err(Error::LevelOutOfRange(n));
        }
        if a.order() != b.order() {
            return Err(Error::OrderMismatch {
                left: a.order(),
                right: b.order(),
            });
        }
        let ea = self.embed_up(n, a)?;
        let eb = self.embed_up(n, b)?;
        let w = match_cycles(&ea, &eb);
        WitnessCertificate::checked(
            w,
            vec![(ea, eb)],
            format!("conjugacy_witness_same_order[level {n}]"),
        )
    }

    /// A `k`-th root of (the embedded image of) `g` at a level above.
    /// Prefers the small route through an order-`k*m` element of the same
    /// level followed by the same-order conjugation service; otherwise
    /// weaves cycles directly at level 2. Fails with `NoFiniteRoot` when
    /// the cycle-count arithmetic rules a root out at every accessible
    /// level.
    pub fn nth_root(&self, n: usize, g: &Permutation, k: u64) -> Result<NthRoot> {
        if n > 1 {
            return Err(Error::LevelOutOfRange(n));
        }
        let level = self.level(n)?;
        if !level.contains(g) {
            return Err(Error::NotInGroup);
        }
        if k == 0 {
            return Err(Error::Precondition("k must be positive".into()));
        }
        if k == 1 {
            return Ok(NthRoot {
                root: g.clone(),
                level: n,
                target: g.clone(),
            });
        }
        let m = g.order() as u64;
        let km = k
            .checked_mul(m)
            .ok_or_else(|| Error::Precondition("k*m overflows".into()))?;
        if km > 720 {
            return Err(Error::CapExceeded {
                what: "root order k*m",
                needed: km as usize,
                cap: 720,
            });
        }

        // small route: an element of order k*m inside this level's group
        if self.levels.len() > n + 2 {
            if let Some(h0) = element_of_order_in_symmetric(level.degree(), km) {
                if level.contains(&h0) {
                    let a = h0.pow(k as i64);
                    let cert = self.conjugacy_witness_same_order(n, &a, g)?;
                    let root = self.embed_up(n, &h0)?.conjugate_by(&cert.witness);
                    let target = self.embed_up(n, g)?;
                    if root.pow(k as i64) != target {
                        return Err(Error::Internal("small-route root failed".into()));
                    }
                    return Ok(NthRoot {
                        root,
                        level: n + 1,
                        target,
                    });
                }
            }
        }

        // direct route at the top: weave the regular image's cycles
        let top = self.levels.len() - 1;
        if top <= n {
            return Err(Error::LevelOutOfRange(n + 1));
        }
        let x = self.embed_to(n, top, g)?;
        let root = weave_root(&x, k, m)?;
        if root.pow(k as i64) != x {
            return Err(Error::Internal("woven root failed".into()));
        }
        Ok(NthRoot {
            root,
            level: top,
            target: x,
        })
    }

    /// A witness in an extension fixing `a0` pointwise and moving `b`
    /// (which must lie outside the subgroup generated by `a0`): the level
    /// group is amalgamated with a disjoint copy of itself over that
    /// subgroup, and the partial automorphism fixing the subgroup while
    /// swapping `b` for its twin is realized by conjugation.
    pub fn escape_witness(
        &self,
        n: usize,
        a0: &[Permutation],
        b: &Permutation,
        config: &Config,
    ) -> Result<WitnessCertificate> {
        if n > 1 {
            return Err(Error::LevelOutOfRange(n));
        }
        let level = self.level(n)?;
        let degree = level.degree();
        for a in a0 {
            if !level.contains(a) {
                return Err(Error::NotInGroup);
            }
        }
        if !level.contains(b) {
            return Err(Error::NotInGroup);
        }
        let span = PermGroup::from_generators(degree, a0.to_vec())?;
        if span.contains(b) {
            return Err(Error::Precondition(
                "element lies in the generated subgroup".into(),
            ));
        }

        if a0.is_empty() {
            // in-group escape: the first enumerated element not commuting
            // with b
            let elems = level.elements().ok_or(Error::LevelOutOfRange(n))?;
            for c in elems {
                if !b.commutes_with(c) {
                    return WitnessCertificate::checked(
                        c.clone(),
                        vec![(b.clone(), b.conjugate_by(c))],
                        format!("escape_witness[level {n}, in-group]"),
                    );
                }
            }
            return Err(Error::Precondition("element is central".into()));
        }

        let fin = level.finite_group()?;
        let sub_elems = span.elements(config.enumeration_cap)?;
        let a_fin = FiniteGroup::from_perm_elements(degree, sub_elems.clone())?;
        let incl_map: Vec<usize> = sub_elems
            .iter()
            .map(|p| level.index_of(p).ok_or(Error::NotInGroup))
            .collect::<Result<_>>()?;
        let incl = GroupHomomorphism::new(&a_fin, fin, incl_map)?.require_embedding()?;

        let amalgam = crate::amalgam::permutational_product(
            &a_fin,
            fin,
            fin,
            &incl,
            &incl,
            config.neumann_cap,
            config.enumeration_cap,
        )?;
        let d_fin =
            FiniteGroup::from_perm_group(&amalgam.group, config.enumeration_cap).map_err(|e| {
                Error::Pipeline {
                    completed: vec!["amalgam".into()],
                    source: Box::new(e),
                }
            })?;

        let b_idx = level.index_of(b).ok_or(Error::NotInGroup)?;
        let b1 = &amalgam.embed_b[b_idx];
        let b2 = &amalgam.embed_c[b_idx];
        if b1 == b2 {
            return Err(Error::Internal(
                "twin copies of the escaping element coincide".into(),
            ));
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for a in a0 {
            let ai = level.index_of(a).ok_or(Error::NotInGroup)?;
            let img = d_fin
                .perm_index(&amalgam.embed_b[ai])
                .ok_or(Error::NotInGroup)?;
            pairs.push((img, img));
        }
        let b1i = d_fin.perm_index(b1).ok_or(Error::NotInGroup)?;
        let b2i = d_fin.perm_index(b2).ok_or(Error::NotInGroup)?;
        pairs.push((b1i, b2i));

        let p = PartialAutomorphism::validate(&d_fin, &pairs)?;
        let hw = hall_witness_tagged(&d_fin, &p, &format!("escape_witness[level {n}]"))?;
        // the certificate already verifies a^c = a and b1^c = b2 != b1
        Ok(hw.certificate)
    }
}

#[derive(Debug)]
pub struct NthRoot {
    pub root: Permutation,
    pub level: usize,
    /// The embedded image of the input at the root's level; root^k equals
    /// this exactly.
    pub target: Permutation,
}

/// A permutation of the given degree and exact order `ord`, as disjoint
/// prime-power cycles, when one fits; least cycle lengths first.
pub fn element_of_order_in_symmetric(degree: usize, ord: u64) -> Option<Permutation> {
    if ord == 1 {
        return Some(Permutation::identity(degree));
    }
    let mut parts: Vec<u64> = Vec::new();
    let mut n = ord;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut pe = 1;
            while n % p == 0 {
                n /= p;
                pe *= p;
            }
            parts.push(pe);
        }
        p += 1;
    }
    if n > 1 {
        parts.push(n);
    }
    parts.sort_unstable();
    if parts.iter().sum::<u64>() as usize > degree {
        return None;
    }
    let mut cycles = Vec::new();
    let mut next = 0usize;
    for &len in &parts {
        cycles.push((next..next + len as usize).collect::<Vec<_>>());
        next += len as usize;
    }
    Some(Permutation::from_cycles(degree, &cycles).expect("disjoint cycles"))
}

/// Given `x` regular of order m (cycle type m^(N/m)) and k with k*m <=
/// its degree, weave bundles of its cycles into longer cycles whose k-th
/// power is exactly `x`. Bundle sizes d must satisfy d | k and
/// gcd(k/d, m) = 1; the cycle count N/m is decomposed over the valid
/// sizes by a coin-change search, largest sizes first.
fn weave_root(x: &Permutation, k: u64, m: u64) -> Result<Permutation> {
    let cycles = {
        let mut c = x.cycles();
        c.sort_by_key(|cy| cy[0]);
        c
    };
    if m == 1 {
        // x is the identity; a root is any element of order dividing k,
        // and the identity itself is canonical
        if x.is_identity() {
            return Ok(x.clone());
        }
        return Err(Error::Internal(
            "order-1 element is not the identity".into(),
        ));
    }
    for c in &cycles {
        if c.len() as u64 != m {
            return Err(Error::Internal("input is not regular".into()));
        }
    }
    let count = cycles.len();

    let valid: Vec<usize> = (1..=k)
        .filter(|d| k % d == 0 && num_integer::gcd(k / d, m) == 1)
        .map(|d| d as usize)
        .collect();
    // coin change: reach `count` with the valid bundle sizes
    let mut reach: Vec<Option<usize>> = vec![None; count + 1];
    reach[0] = Some(0);
    for t in 1..=count {
        for &d in valid.iter().rev() {
            if d <= t && reach[t - d].is_some() {
                reach[t] = Some(d);
                break;
            }
        }
    }
    if reach[count].is_none() {
        return Err(Error::NoFiniteRoot(format!(
            "no decomposition of {count} cycles of length {m} into k-th-power bundles \
             (valid bundle sizes {valid:?} for k = {k})"
        )));
    }
    let mut bundles: Vec<usize> = Vec::new();
    let mut t = count;
    while t > 0 {
        let d = reach[t].unwrap();
        bundles.push(d);
        t -= d;
    }
    bundles.sort_unstable_by(|a, b| b.cmp(a));

    let mut images: Vec<usize> = (0..x.degree()).collect();
    let mut cursor = 0usize;
    for d in bundles {
        let group = &cycles[cursor..cursor + d];
        cursor += d;
        let dm = d * m as usize;
        // positions: z[(i + j*k) mod dm] = group[i][j]
        let mut z = vec![usize::MAX; dm];
        for (i, cy) in group.iter().enumerate() {
            for (j, &pt) in cy.iter().enumerate() {
                let pos = (i + j * k as usize) % dm;
                if z[pos] != usize::MAX {
                    return Err(Error::Internal("weave positions collide".into()));
                }
                z[pos] = pt;
            }
        }
        for t in 0..dm {
            images[z[t]] = z[(t + 1) % dm];
        }
    }
    Permutation::from_images(images)
}

fn build_concrete_level(
    index: usize,
    group: PermGroup,
    parent_hash: &str,
    config: &Config,
) -> Result<TowerLevel> {
    let path = config
        .cache_dir
        .as_ref()
        .map(|d| level_cache_path(d, index));
    let mut outcome = CacheOutcome::Fresh;
    if let Some(p) = &path {
        match try_load_level(p, index, parent_hash, &group) {
            Ok(Some(elements)) => {
                return Ok(TowerLevel {
                    index,
                    group: LevelGroup::Concrete(group),
                    elements: Some(elements),
                    element_index: OnceLock::new(),
                    finite: OnceLock::new(),
                    cache_outcome: CacheOutcome::Loaded,
                });
            }
            Ok(None) => {}
            Err(_) => {
                outcome = CacheOutcome::RebuiltAfterMismatch;
            }
        }
    }
    let elements = group.elements(1_000_000)?;
    if let Some(p) = &path {
        let data = LevelData {
            format_version: CACHE_FORMAT_VERSION,
            level: index,
            parent_hash: parent_hash.to_string(),
            degree: group.degree(),
            generators: group.generators().to_vec(),
            elements: elements.clone(),
        };
        if let Some(dir) = p.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(p, serde_json::to_string(&data)?)?;
    }
    Ok(TowerLevel {
        index,
        group: LevelGroup::Concrete(group),
        elements: Some(elements),
        element_index: OnceLock::new(),
        finite: OnceLock::new(),
        cache_outcome: outcome,
    })
}

pub fn level_cache_path(dir: &Path, level: usize) -> PathBuf {
    dir.join(format!("level_{level}.json"))
}

fn try_load_level(
    path: &Path,
    index: usize,
    parent_hash: &str,
    group: &PermGroup,
) -> Result<Option<Vec<Permutation>>> {
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(path)?;
    let data: LevelData = serde_json::from_str(&text)
        .map_err(|e| Error::CacheCorrupt(format!("level {index}: {e}")))?;
    if data.format_version != CACHE_FORMAT_VERSION {
        return Err(Error::CacheCorrupt(format!(
            "level {index}: format version {}",
            data.format_version
        )));
    }
    if data.level != index
        || data.degree != group.degree()
        || data.parent_hash != parent_hash
        || data.elements.len() != group.order_u128().map(|o| o as usize).unwrap_or(usize::MAX)
        || data.elements.first().map(|e| e.is_identity()) != Some(true)
    {
        return Err(Error::CacheCorrupt(format!("level {index}: stale content")));
    }
    Ok(Some(data.elements))
}

fn hash_level(degree: usize, elements: &[Permutation]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(degree.to_le_bytes());
    for e in elements {
        for &x in e.images() {
            hasher.update((x as u64).to_le_bytes());
        }
    }
    hex_string(&hasher.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower() -> Tower {
        Tower::build(2, &Config::default()).unwrap()
    }

    #[test]
    fn level_orders() {
        let t = tower();
        assert_eq!(t.level(0).unwrap().order(), BigUint::from(6u32));
        assert_eq!(t.level(1).unwrap().order(), BigUint::from(720u32));
        let top = t.level(2).unwrap().order();
        // 720! has 1747 digits
        assert_eq!(top.to_string().len(), 1747);
    }

    #[test]
    fn embeddings_preserve_order_and_products() {
        let t = tower();
        let g0 = t.level(0).unwrap();
        let LevelGroup::Concrete(s3) = &g0.group else {
            panic!()
        };
        for a in s3.generators() {
            let ea = t.embed_up(0, a).unwrap();
            assert_eq!(ea.order(), a.order());
            assert!(ea.fixed_points().is_empty() || a.is_identity());
            for b in s3.generators() {
                let eb = t.embed_up(0, b).unwrap();
                let eab = t.embed_up(0, &(a * b)).unwrap();
                assert_eq!(&ea * &eb, eab);
            }
        }
    }

    #[test]
    fn regular_six_cycle_count_at_level_two() {
        let t = tower();
        let six = Permutation::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap();
        let e = t.embed_up(1, &six).unwrap();
        assert_eq!(e.degree(), 720);
        assert_eq!(e.order(), 6);
        assert_eq!(e.cycles().len(), 120); // 120 six-cycles
    }

    #[test]
    fn inner_uh_witness_for_three_cycle_inversion() {
        let t = tower();
        let r = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let cert = t.inner_uh_witness(0, &[(r.clone(), r.inverse())]).unwrap();
        assert_eq!(cert.witness.degree(), 6);
        assert!(cert.verify());
    }

    #[test]
    fn inner_uh_witness_rejects_top_level() {
        let t = tower();
        let p = Permutation::identity(720);
        assert!(t.inner_uh_witness(2, &[(p.clone(), p)]).is_err());
    }

    #[test]
    fn conjugacy_witness_same_order_levels() {
        let t = tower();
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![0, 2]]).unwrap();
        let cert = t.conjugacy_witness_same_order(0, &a, &b).unwrap();
        assert_eq!(cert.witness.degree(), 6);
        assert!(cert.verify());
    }

    #[test]
    fn conjugacy_witness_joins_nonconjugate_pairs_one_level_up() {
        // order 6 in S_6: a 6-cycle and a (3,2,1) type are not conjugate
        // in S_6 but their regular images in Sym(720) are
        let t = tower();
        let a = Permutation::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap();
        let b = Permutation::from_cycles(6, &[vec![0, 1, 2], vec![3, 4]]).unwrap();
        assert_ne!(a.cycle_type(), b.cycle_type());
        let cert = t.conjugacy_witness_same_order(1, &a, &b).unwrap();
        assert_eq!(cert.witness.degree(), 720);
        assert!(cert.verify());
    }

    #[test]
    fn conjugacy_witness_requires_equal_orders() {
        let t = tower();
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        assert!(matches!(
            t.conjugacy_witness_same_order(0, &a, &b),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn nth_root_square_of_transposition() {
        let t = tower();
        let g = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let r = t.nth_root(0, &g, 2).unwrap();
        assert_eq!(r.root.pow(2), r.target);
        assert_eq!(r.root.order(), 4);
    }

    #[test]
    fn nth_root_k1_is_the_element_itself() {
        let t = tower();
        let g = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let r = t.nth_root(0, &g, 1).unwrap();
        assert_eq!(r.level, 0);
        assert_eq!(r.root, g);
    }

    #[test]
    fn nth_root_fourth_root_of_three_cycle() {
        let t = tower();
        let g = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let r = t.nth_root(0, &g, 4).unwrap();
        assert_eq!(r.root.pow(4), r.target);
        assert_eq!(r.root.order(), 12);
    }

    #[test]
    fn nth_root_with_shared_prime_factors() {
        // m = 3, k = 6: valid bundle sizes are 3 and 6, never 1 or 2
        let t = tower();
        let g = Permutation::from_cycles(6, &[vec![0, 1, 2]]).unwrap();
        let r = t.nth_root(1, &g, 6).unwrap();
        assert_eq!(r.root.pow(6), r.target);
        assert_eq!(r.root.order() % 18, 0);
    }

    #[test]
    fn nth_root_detects_unreachable_bundles() {
        // no 16th root of a regular involution exists in Sym(720):
        // bundles must have size 16 but there are 360 two-cycles
        let t = tower();
        let g = Permutation::from_cycles(6, &[vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        match t.nth_root(1, &g, 16) {
            Err(Error::NoFiniteRoot(_)) => {}
            other => panic!("expected NoFiniteRoot, got {other:?}"),
        }
    }

    #[test]
    fn inner_uh_witness_at_level_one_swaps_commuting_involutions() {
        let t = tower();
        let a = Permutation::from_cycles(6, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(6, &[vec![2, 3]]).unwrap();
        let cert = t
            .inner_uh_witness(1, &[(a.clone(), b.clone()), (b, a)])
            .unwrap();
        assert_eq!(cert.witness.degree(), 720);
        assert_eq!(cert.verified_equations, 4);
        assert!(cert.verify());
    }

    #[test]
    #[ignore = "expensive: enumerates the 1440-element self-amalgam of Sym(6)"]
    fn escape_witness_at_level_one() {
        let t = tower();
        let a0 = vec![
            Permutation::from_cycles(6, &[vec![1, 2, 3, 4, 5]]).unwrap(),
            Permutation::from_cycles(6, &[vec![0, 1, 2]]).unwrap(),
        ];
        let odd = Permutation::from_cycles(6, &[vec![0, 1]]).unwrap();
        let cert = t.escape_witness(1, &a0, &odd, &Config::default()).unwrap();
        assert_eq!(cert.verified_equations, 720);
        let (from, to) = cert.equations.last().unwrap();
        assert!(from != to || cert.equations.len() < cert.verified_equations);
    }

    #[test]
    fn escape_witness_at_level_zero() {
        let t = tower();
        let a0 = vec![Permutation::from_cycles(3, &[vec![0, 1]]).unwrap()];
        let b = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let cert = t.escape_witness(0, &a0, &b, &Config::default()).unwrap();
        assert!(cert.verify());
        // last equation moves b's copy
        let (from, to) = cert.equations.last().unwrap();
        assert_ne!(from, to);
    }

    #[test]
    fn escape_witness_empty_base() {
        let t = tower();
        let b = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let cert = t.escape_witness(0, &[], &b, &Config::default()).unwrap();
        let (from, to) = &cert.equations[0];
        assert_ne!(from, to);
    }

    #[test]
    fn escape_witness_rejects_generated_elements() {
        let t = tower();
        let a0 = vec![Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap()];
        let b = Permutation::from_cycles(3, &[vec![0, 2, 1]]).unwrap();
        assert!(t.escape_witness(0, &a0, &b, &Config::default()).is_err());
    }

    #[test]
    fn cache_roundtrip_and_corruption_detection() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = Config::default();
        config.cache_dir = Some(dir.path().to_path_buf());
        let t1 = Tower::build(1, &config).unwrap();
        assert_eq!(t1.level(0).unwrap().cache_outcome, CacheOutcome::Fresh);
        let t2 = Tower::build(1, &config).unwrap();
        assert_eq!(t2.level(0).unwrap().cache_outcome, CacheOutcome::Loaded);
        assert_eq!(t2.level(1).unwrap().cache_outcome, CacheOutcome::Loaded);
        assert_eq!(
            t1.level(1).unwrap().elements().unwrap(),
            t2.level(1).unwrap().elements().unwrap()
        );
        // corrupt level 0: level 1 must be rebuilt (parent hash changes)
        let p0 = level_cache_path(dir.path(), 0);
        std::fs::write(&p0, "{\"format_version\":99}").unwrap();
        let t3 = Tower::build(1, &config).unwrap();
        assert_eq!(
            t3.level(0).unwrap().cache_outcome,
            CacheOutcome::RebuiltAfterMismatch
        );
        assert_eq!(
            t3.level(1).unwrap().elements().unwrap(),
            t2.level(1).unwrap().elements().unwrap()
        );
    }
}
