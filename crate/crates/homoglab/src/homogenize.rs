//! Homogenizing expansions: a unary predicate splitting the two vertex
//! orbits (for graphs that are not 1-homogeneous), or a single symmetric
//! binary relation assembled from 2-orbits (for graphs that are 1- but
//! not 2-homogeneous). Expansions are verified, never assumed: reduct
//! identity, automorphism-group comparison, and a full spectrum run.

use num_bigint::BigUint;
use serde::Serialize;

use crate::budget::Budget;
use crate::classifier::pair_orbits;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homogeneity::{GeqThreshold, HomogeneityEngine, Spectrum};
use crate::symmetry::{automorphism_group, ColoredStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpansionKind {
    Unary,
    Binary,
}

/// A base graph plus one added relation, kept as the colored structure
/// the homogeneity engine consumes directly.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub base: Graph,
    pub kind: ExpansionKind,
    pub structure: ColoredStructure,
    /// Vertices colored 1 (unary case).
    pub colored_vertices: Vec<usize>,
    /// Pairs carrying the added relation (binary case), ascending.
    pub related_pairs: Vec<(usize, usize)>,
    /// Representatives of the orbits that were promoted.
    pub promoted_orbits: Vec<(usize, usize)>,
}

/// Colors the smaller of exactly two vertex orbits. Ties break toward
/// the orbit with the larger least member, so color 1 never lands on
/// vertex 0 ambiguously.
pub fn unary_expansion(g: &Graph, budget: &Budget) -> Result<Expansion> {
    let group = automorphism_group(&ColoredStructure::plain(g.clone()), budget)?;
    let orbits = group.vertex_orbits();
    if orbits.len() != 2 {
        return Err(Error::NotApplicable(format!(
            "unary expansion needs exactly two vertex orbits, found {}",
            orbits.len()
        )));
    }
    let marked = if orbits[0].len() == orbits[1].len() {
        &orbits[1]
    } else if orbits[0].len() < orbits[1].len() {
        &orbits[0]
    } else {
        &orbits[1]
    };
    let mut vcolor = vec![0u16; g.n()];
    for &v in marked {
        vcolor[v] = 1;
    }
    let structure = ColoredStructure::with_vertex_colors(g.clone(), vcolor)?;
    Ok(Expansion {
        base: g.clone(),
        kind: ExpansionKind::Unary,
        structure,
        colored_vertices: marked.clone(),
        related_pairs: Vec::new(),
        promoted_orbits: Vec::new(),
    })
}

/// Searches unions of at most two 2-orbits, smallest union first, for a
/// relation whose expansion is homogeneous with an unchanged
/// automorphism group. `Ok(None)` reports an exhausted search.
pub fn binary_expansion(g: &Graph, budget: &Budget) -> Result<Option<Expansion>> {
    let plain = ColoredStructure::plain(g.clone());
    let engine = HomogeneityEngine::new(plain, budget)?;
    let group = engine.group();
    let n = g.n();
    if n >= 1 && engine.check_k(1, budget)?.is_some() {
        return Err(Error::NotApplicable(
            "binary expansion needs a 1-homogeneous base".into(),
        ));
    }
    if n >= 2 && engine.check_k(2, budget)?.is_none() {
        return Err(Error::NotApplicable(
            "base is already 2-homogeneous; nothing to expand".into(),
        ));
    }

    let orbits = pair_orbits(group);
    let count = orbits.len();
    // candidate orbit unions: singletons then pairs, by total size, then
    // by orbit position for equal sizes
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for i in 0..count {
        candidates.push(vec![i]);
    }
    for i in 0..count {
        for j in i + 1..count {
            candidates.push(vec![i, j]);
        }
    }
    candidates.sort_by_key(|c| {
        (
            c.iter().map(|&i| orbits[i].0.len()).sum::<usize>(),
            c.clone(),
        )
    });

    for candidate in candidates {
        budget.charge(1)?;
        let mut pairs: Vec<(usize, usize)> = candidate
            .iter()
            .flat_map(|&i| orbits[i].0.iter().copied())
            .collect();
        pairs.sort_unstable();
        if pairs.len() == n * n.saturating_sub(1) / 2 {
            continue; // relating every pair distinguishes nothing
        }
        let structure = ColoredStructure::with_pair_relation(g.clone(), &pairs)?;
        let expanded_group = automorphism_group(&structure, budget)?;
        if !expanded_group.same_group(group) {
            continue;
        }
        if !all_k_hold(&structure, budget)? {
            continue;
        }
        return Ok(Some(Expansion {
            base: g.clone(),
            kind: ExpansionKind::Binary,
            structure,
            colored_vertices: Vec::new(),
            related_pairs: pairs,
            promoted_orbits: candidate.iter().map(|&i| orbits[i].1).collect(),
        }));
    }
    Ok(None)
}

/// Early-exit homogeneity check: false at the first failing k.
fn all_k_hold(s: &ColoredStructure, budget: &Budget) -> Result<bool> {
    let engine = HomogeneityEngine::new(s.clone(), budget)?;
    for k in 1..=s.n() {
        if engine.check_k(k, budget)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How the expansion's automorphism group relates to the base's.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "relation", rename_all = "kebab-case")]
pub enum AutComparison {
    Equal { order: String },
    /// Proper subgroup, as expected for unary expansions; the index
    /// quantifies how much symmetry the predicate removed.
    Subgroup { order: String, index: String },
    NotSubgroup,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub reduct_ok: bool,
    pub aut: AutComparison,
    pub spectrum_all_holds: bool,
    pub geq_threshold: GeqThreshold,
    /// True when the promoted relation is invariant under every base
    /// generator (binary case; trivially true for unary).
    pub relation_invariant: bool,
}

impl VerificationReport {
    pub fn passed(&self, kind: ExpansionKind) -> bool {
        self.reduct_ok
            && self.spectrum_all_holds
            && self.relation_invariant
            && match kind {
                ExpansionKind::Binary => matches!(self.aut, AutComparison::Equal { .. }),
                ExpansionKind::Unary => !matches!(self.aut, AutComparison::NotSubgroup),
            }
    }
}

/// Checks reduct identity, automorphism relation, and the full spectrum
/// of the expansion. Failures land in the report, not in `Err`.
pub fn verify_expansion(e: &Expansion, budget: &Budget) -> Result<(VerificationReport, Spectrum)> {
    let reduct_ok = e.structure.reduct() == e.base;

    let base_group = automorphism_group(&ColoredStructure::plain(e.base.clone()), budget)?;
    let expansion_group = automorphism_group(&e.structure, budget)?;
    let aut = if expansion_group.same_group(&base_group) {
        AutComparison::Equal {
            order: base_group.order().to_string(),
        }
    } else if expansion_group.is_subgroup_of(&base_group) {
        let index = base_group.order() / expansion_group.order();
        AutComparison::Subgroup {
            order: expansion_group.order().to_string(),
            index: index.to_string(),
        }
    } else {
        AutComparison::NotSubgroup
    };

    let relation_invariant = match e.kind {
        ExpansionKind::Unary => true,
        ExpansionKind::Binary => {
            let related: std::collections::BTreeSet<(usize, usize)> =
                e.related_pairs.iter().copied().collect();
            base_group.generators().iter().all(|g| {
                related.iter().all(|&(u, v)| {
                    let (x, y) = (g.apply(u), g.apply(v));
                    related.contains(&if x < y { (x, y) } else { (y, x) })
                })
            })
        }
    };

    let engine = HomogeneityEngine::new(e.structure.clone(), budget)?;
    let spectrum = engine.spectrum_with_budget(budget.limit());
    let report = VerificationReport {
        reduct_ok,
        aut,
        spectrum_all_holds: spectrum.all_holds(),
        geq_threshold: spectrum.geq_threshold(),
        relation_invariant,
    };
    debug_assert!(
        BigUint::parse_bytes(
            match &report.aut {
                AutComparison::Equal { order } | AutComparison::Subgroup { order, .. } =>
                    order.as_bytes(),
                AutComparison::NotSubgroup => b"1",
            },
            10
        )
        .is_some()
    );
    Ok((report, spectrum))
}
