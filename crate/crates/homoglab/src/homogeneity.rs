//! Per-k homogeneity decisions. A structure is k-homogeneous when every
//! isomorphism between induced k-vertex substructures extends to an
//! automorphism.
//!
//! The engine decides one k at subset granularity: group the k-subsets
//! into automorphism orbits, key each orbit by the canonical form of its
//! induced substructure, and require (1) one orbit per canonical class
//! and (2) at one representative per class, that the setwise stabilizer
//! restricts onto the full automorphism group of the induced
//! substructure. Orders settle (2) without a stabilizer search:
//! |restriction| = |Aut| / orbit size / |pointwise stabilizer|.
//!
//! `naive_spectrum_oracle` answers the same question for n <= 8 with no
//! group theory at all and exists to check the engine.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::symmetry::{
    automorphism_group, canonical_form, ColoredStructure, MaskTables, Perm, PermGroup,
};

/// A pair of pattern-isomorphic tuples lying in different automorphism
/// orbits: a concrete non-extendable embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// Outcome at one k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KVerdict {
    Holds,
    Fails(Witness),
    /// The per-k budget ran out; recorded, never fatal to the spectrum.
    Unknown(Error),
}

impl KVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, KVerdict::Holds)
    }

    pub fn label(&self) -> &'static str {
        match self {
            KVerdict::Holds => "holds",
            KVerdict::Fails(_) => "fails",
            KVerdict::Unknown(_) => "unknown",
        }
    }
}

/// Homogeneity verdicts for every k in 1..=n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    n: usize,
    verdicts: Vec<KVerdict>,
}

/// Smallest k* such that every k in k*..=n holds. With unknown entries
/// the threshold is an interval: `lo` treats unknowns as holding, `hi`
/// as failing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum GeqThreshold {
    Exact(usize),
    Interval { lo: usize, hi: usize },
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Verdict at k (1-indexed).
    pub fn verdict(&self, k: usize) -> &KVerdict {
        &self.verdicts[k - 1]
    }

    pub fn verdicts(&self) -> &[KVerdict] {
        &self.verdicts
    }

    pub fn all_holds(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds())
    }

    pub fn holds_at(&self, k: usize) -> bool {
        self.verdict(k).holds()
    }

    pub fn geq_threshold(&self) -> GeqThreshold {
        let lo = self.threshold_where(|v| !matches!(v, KVerdict::Fails(_)));
        let hi = self.threshold_where(|v| v.holds());
        if lo == hi {
            GeqThreshold::Exact(lo)
        } else {
            GeqThreshold::Interval { lo, hi }
        }
    }

    fn threshold_where(&self, counts_as_holding: impl Fn(&KVerdict) -> bool) -> usize {
        let mut k_star = self.n + 1;
        for k in (1..=self.n).rev() {
            if counts_as_holding(self.verdict(k)) {
                k_star = k;
            } else {
                break;
            }
        }
        k_star
    }

    /// JSON-stable report; witnesses are kept for the smallest and
    /// largest failing k.
    pub fn report(&self) -> SpectrumReport {
        let mut witnesses = BTreeMap::new();
        let failing: Vec<usize> = (1..=self.n)
            .filter(|&k| matches!(self.verdict(k), KVerdict::Fails(_)))
            .collect();
        for k in [failing.first(), failing.last()].into_iter().flatten() {
            if let KVerdict::Fails(w) = self.verdict(*k) {
                witnesses.insert(format!("{k}"), w.clone());
            }
        }
        SpectrumReport {
            n: self.n,
            verdicts: self.verdicts.iter().map(|v| v.label().to_string()).collect(),
            geq_threshold: self.geq_threshold(),
            witnesses,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub verdicts: Vec<String>,
    pub geq_threshold: GeqThreshold,
    pub witnesses: BTreeMap<String, Witness>,
}

/// Shared state for deciding several k on one structure.
pub struct HomogeneityEngine {
    s: ColoredStructure,
    group: PermGroup,
    tables: Vec<MaskTables>,
}

impl HomogeneityEngine {
    pub fn new(s: ColoredStructure, budget: &Budget) -> Result<Self> {
        let group = automorphism_group(&s, budget)?;
        let tables = if s.n() <= 64 {
            group.generators().iter().map(MaskTables::new).collect()
        } else {
            Vec::new()
        };
        Ok(HomogeneityEngine { s, group, tables })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn structure(&self) -> &ColoredStructure {
        &self.s
    }

    /// Orbits of the k-subsets as (least mask, orbit size), ascending.
    fn subset_orbits(&self, k: usize, budget: &Budget) -> Result<Vec<(u64, u64)>> {
        let n = self.s.n();
        let total = binomial(n, k);
        budget.charge(u64::try_from(total).unwrap_or(u64::MAX))?;
        let mut visited: HashSet<u64> = HashSet::with_capacity(total as usize);
        let mut orbits = Vec::new();
        for mask in KSubsets::new(n, k) {
            if visited.contains(&mask) {
                continue;
            }
            let mut queue = vec![mask];
            visited.insert(mask);
            let mut head = 0;
            while head < queue.len() {
                let current = queue[head];
                head += 1;
                for t in &self.tables {
                    let image = t.apply(current);
                    if visited.insert(image) {
                        queue.push(image);
                    }
                }
            }
            orbits.push((mask, queue.len() as u64));
        }
        Ok(orbits)
    }

    /// Decides k-homogeneity; `Ok(None)` means it holds.
    pub fn check_k(&self, k: usize, budget: &Budget) -> Result<Option<Witness>> {
        let n = self.s.n();
        if k < 1 || k > n {
            return Err(Error::domain(format!("k={k} out of range 1..={n}")));
        }
        if n > 63 {
            return Err(Error::Budget {
                context: format!("subset sweep needs n <= 63, got {n}"),
                limit: 0,
            });
        }
        let orbits = self.subset_orbits(k, budget)?;

        // canonical class per orbit
        let mut class_of: Vec<Vec<u8>> = Vec::with_capacity(orbits.len());
        let mut classes: BTreeMap<&[u8], Vec<usize>> = BTreeMap::new();
        for &(rep, _) in &orbits {
            let sub = self.s.induced(&VertexSet::from_mask(n, rep))?;
            let (_, bytes) = canonical_form(&sub, budget)?;
            class_of.push(bytes);
        }
        for (idx, bytes) in class_of.iter().enumerate() {
            classes.entry(bytes).or_default().push(idx);
        }

        // (1) two orbits sharing a canonical form: the composed canonical
        // labelings give a pattern bijection with no setwise image
        let type1 = classes
            .values()
            .filter(|idxs| idxs.len() > 1)
            .map(|idxs| (orbits[idxs[0]].0, orbits[idxs[1]].0))
            .min();
        if let Some((rep1, rep2)) = type1 {
            return Ok(Some(self.type1_witness(rep1, rep2, budget)?));
        }

        // (2) at each orbit representative the induced action of the
        // setwise stabilizer must be all of Aut(induced substructure)
        for &(rep, size) in &orbits {
            let members = VertexSet::from_mask(n, rep).to_vec();
            let sub = self.s.induced(&VertexSet::from_mask(n, rep))?;
            let aut_sub = automorphism_group(&sub, budget)?;
            if *aut_sub.order() == BigUint::from(1u32) {
                continue; // restriction is always at least trivial
            }
            let rebased = PermGroup::with_base_prefix(
                n,
                self.group.generators().to_vec(),
                &members,
            );
            budget.charge(members.len() as u64)?;
            let pointwise = rebased.stabilizer_order_below(members.len());
            let setwise = self.group.order() / BigUint::from(size);
            let image = setwise / pointwise;
            if image != *aut_sub.order() {
                return Ok(Some(self.type2_witness(&members, &aut_sub)?));
            }
        }
        Ok(None)
    }

    fn type1_witness(&self, rep1: u64, rep2: u64, budget: &Budget) -> Result<Witness> {
        let n = self.s.n();
        let s1 = VertexSet::from_mask(n, rep1).to_vec();
        let s2 = VertexSet::from_mask(n, rep2).to_vec();
        let (l1, _) = canonical_form(&self.s.induced(&VertexSet::from_mask(n, rep1))?, budget)?;
        let (l2, _) = canonical_form(&self.s.induced(&VertexSet::from_mask(n, rep2))?, budget)?;
        let l2_inv = l2.inverse();
        let b: Vec<usize> = (0..s1.len())
            .map(|i| s2[l2_inv.apply(l1.apply(i))])
            .collect();
        let witness = Witness { a: s1, b };
        debug_assert!(self.s.tuples_pattern_equal(&witness.a, &witness.b));
        Ok(witness)
    }

    fn type2_witness(&self, members: &[usize], aut_sub: &PermGroup) -> Result<Witness> {
        for sigma in aut_sub.generators() {
            let b: Vec<usize> = (0..members.len())
                .map(|i| members[sigma.apply(i)])
                .collect();
            if self.group.map_tuple(members, &b)?.is_none() {
                return Ok(Witness {
                    a: members.to_vec(),
                    b,
                });
            }
        }
        unreachable!("strict subgroup must reject some generator")
    }

    /// Verdicts for every k with a fresh budget of `per_k_limit` nodes
    /// per entry; budget exhaustion degrades single entries to Unknown.
    pub fn spectrum_with_budget(&self, per_k_limit: u64) -> Spectrum {
        let n = self.s.n();
        let verdicts = (1..=n)
            .map(|k| {
                let budget = Budget::new(per_k_limit, "spectrum");
                match self.check_k(k, &budget) {
                    Ok(None) => KVerdict::Holds,
                    Ok(Some(w)) => KVerdict::Fails(w),
                    Err(e) => KVerdict::Unknown(e),
                }
            })
            .collect();
        Spectrum { n, verdicts }
    }
}

/// One-k convenience entry point.
pub fn is_k_homogeneous(
    s: &ColoredStructure,
    k: usize,
    budget: &Budget,
) -> Result<Option<Witness>> {
    HomogeneityEngine::new(s.clone(), budget)?.check_k(k, budget)
}

/// Full spectrum with standard per-k budgets.
pub fn spectrum(s: &ColoredStructure) -> Spectrum {
    let limit = Budget::standard("spectrum").limit();
    spectrum_with_budget(s, limit)
}

pub fn spectrum_with_budget(s: &ColoredStructure, per_k_limit: u64) -> Spectrum {
    let n = s.n();
    match HomogeneityEngine::new(s.clone(), &Budget::new(per_k_limit, "automorphism group")) {
        Ok(engine) => engine.spectrum_with_budget(per_k_limit),
        Err(e) => Spectrum {
            n,
            verdicts: (0..n).map(|_| KVerdict::Unknown(e.clone())).collect(),
        },
    }
}

/// The number of distinct ordered patterns realized by injective
/// k-tuples: when it equals the number of tuple orbits, the structure is
/// k-homogeneous (independent route used in tests).
pub fn count_realized_ktypes(
    s: &ColoredStructure,
    k: usize,
    budget: &Budget,
) -> Result<u64> {
    let n = s.n();
    if k < 1 || k > n {
        return Err(Error::domain(format!("k={k} out of range 1..={n}")));
    }
    if k > 8 {
        return Err(Error::domain("realized k-types support k <= 8"));
    }
    let mut total: u64 = 1;
    for i in 0..k {
        total = total
            .checked_mul((n - i) as u64)
            .ok_or_else(|| Error::domain("tuple count overflow"))?;
    }
    budget.charge(total)?;
    let mut patterns: HashSet<Vec<u8>> = HashSet::new();
    let mut tuple = vec![0usize; k];
    enumerate_injective(n, k, &mut tuple, 0, &mut |t: &[usize]| {
        patterns.insert(pattern_key(s, t));
    });
    Ok(patterns.len() as u64)
}

/// Spectrum computed with no group theory: enumerate every injective
/// k-tuple, bucket by pattern, and demand each bucket be one orbit under
/// the exhaustively-listed automorphisms. Enforced to n <= 8.
pub fn naive_spectrum_oracle(s: &ColoredStructure) -> Result<Spectrum> {
    let n = s.n();
    if n > 8 {
        return Err(Error::domain(format!("oracle is capped at n <= 8, got {n}")));
    }
    let mut autos: Vec<Perm> = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    permutations(&mut images, 0, &mut |p| {
        let perm = Perm::from_images(p.to_vec()).expect("permutation");
        if s.is_automorphism(&perm) {
            autos.push(perm);
        }
    });

    let mut verdicts = Vec::with_capacity(n);
    for k in 1..=n {
        let mut buckets: BTreeMap<Vec<u8>, Vec<Vec<usize>>> = BTreeMap::new();
        let mut tuple = vec![0usize; k];
        enumerate_injective(n, k, &mut tuple, 0, &mut |t: &[usize]| {
            buckets.entry(pattern_key(s, t)).or_default().push(t.to_vec());
        });
        let mut verdict = KVerdict::Holds;
        'buckets: for bucket in buckets.values() {
            let rep = &bucket[0];
            let orbit: HashSet<Vec<usize>> = autos
                .iter()
                .map(|g| rep.iter().map(|&v| g.apply(v)).collect())
                .collect();
            if orbit.len() != bucket.len() {
                let stray = bucket
                    .iter()
                    .find(|t| !orbit.contains(*t))
                    .expect("bucket exceeds orbit");
                verdict = KVerdict::Fails(Witness {
                    a: rep.clone(),
                    b: stray.clone(),
                });
                break 'buckets;
            }
        }
        verdicts.push(verdict);
    }
    Ok(Spectrum { n, verdicts })
}

fn pattern_key(s: &ColoredStructure, t: &[usize]) -> Vec<u8> {
    let mut key = Vec::with_capacity(2 * t.len() + t.len() * t.len() / 2);
    for &v in t {
        key.extend_from_slice(&s.vertex_color(v).to_le_bytes());
    }
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            key.push(s.pair_color(t[i], t[j]));
        }
    }
    key
}

fn enumerate_injective(
    n: usize,
    k: usize,
    tuple: &mut Vec<usize>,
    depth: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        f(tuple);
        return;
    }
    for v in 0..n {
        if !tuple[..depth].contains(&v) {
            tuple[depth] = v;
            enumerate_injective(n, k, tuple, depth + 1, f);
        }
    }
}

fn permutations(arr: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == arr.len() {
        f(arr);
        return;
    }
    for j in i..arr.len() {
        arr.swap(i, j);
        permutations(arr, i + 1, f);
        arr.swap(i, j);
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Ascending enumeration of k-subset masks of `0..n-1` (Gosper's hack).
struct KSubsets {
    n: usize,
    next: Option<u64>,
}

impl KSubsets {
    fn new(n: usize, k: usize) -> Self {
        assert!(n <= 63 && k >= 1);
        let next = (k <= n).then(|| (1u64 << k) - 1);
        KSubsets { n, next }
    }
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let current = self.next?;
        let c = current & current.wrapping_neg();
        let r = current + c;
        let following = (((r ^ current) >> 2) / c) | r;
        self.next = (following < 1u64 << self.n).then_some(following);
        Some(current)
    }
}
