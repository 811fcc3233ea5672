//! Individualization-refinement search producing a canonical labeling and
//! the automorphism generators discovered along the way.
//!
//! Target cell: first smallest non-singleton cell after refinement.
//! Branch order: ascending vertex index. Ties everywhere are broken
//! deterministically, so canonical bytes are reproducible across runs.
//! Discovered automorphisms prune sibling branches (orbit pruning), which
//! is what keeps the tree small on highly symmetric inputs.

use crate::budget::Budget;
use crate::error::Result;
use crate::symmetry::colored::{ColoredStructure, Coloring};
use crate::symmetry::perm::Perm;
use crate::symmetry::refine::color_refine;

pub struct CanonOutcome {
    /// Maps input vertices to canonical positions.
    pub labeling: Perm,
    /// Equal for two structures iff they are isomorphic as colored
    /// structures.
    pub bytes: Vec<u8>,
    /// Generators of the automorphism group.
    pub generators: Vec<Perm>,
}

struct Leaf {
    labeling: Perm,
    bytes: Vec<u8>,
}

struct Search<'a> {
    s: &'a ColoredStructure,
    budget: &'a Budget,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Perm>,
}

pub fn canon_search(s: &ColoredStructure, budget: &Budget) -> Result<CanonOutcome> {
    let initial = Coloring::from_vertex_colors(s.vertex_colors());
    let mut search = Search {
        s,
        budget,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let root = color_refine(s, &initial);
    search.descend(root, &[])?;
    let best = search.best.expect("at least one leaf");
    Ok(CanonOutcome {
        labeling: best.labeling,
        bytes: best.bytes,
        generators: search.autos,
    })
}

impl Search<'_> {
    fn descend(&mut self, partition: Coloring, prefix: &[usize]) -> Result<()> {
        self.budget.charge(1)?;
        let Some(cell_index) = partition.target_cell() else {
            self.leaf(&partition);
            return Ok(());
        };
        let cell = partition.cells()[cell_index].clone();
        let mut branched: Vec<usize> = Vec::new();
        for &v in &cell {
            if !branched.is_empty() && self.in_known_orbit(&branched, v, prefix) {
                continue;
            }
            branched.push(v);
            let child = partition.individualize(cell_index, v);
            let refined = color_refine(self.s, &child);
            let mut child_prefix = prefix.to_vec();
            child_prefix.push(v);
            self.descend(refined, &child_prefix)?;
        }
        Ok(())
    }

    /// True when some automorphism discovered so far fixes the branch
    /// prefix pointwise and maps an already-branched vertex to `v`.
    fn in_known_orbit(&self, branched: &[usize], v: usize, prefix: &[usize]) -> bool {
        let fixing: Vec<&Perm> = self
            .autos
            .iter()
            .filter(|a| prefix.iter().all(|&p| a.apply(p) == p))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        let n = self.s.n();
        let mut reached = vec![false; n];
        let mut queue: Vec<usize> = branched.to_vec();
        for &u in branched {
            reached[u] = true;
        }
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for a in &fixing {
                let w = a.apply(u);
                if !reached[w] {
                    if w == v {
                        return true;
                    }
                    reached[w] = true;
                    queue.push(w);
                }
            }
        }
        reached[v]
    }

    fn leaf(&mut self, partition: &Coloring) {
        let labeling = partition.labeling().expect("leaf partitions are discrete");
        let bytes = certificate(self.s, &labeling);

        if let Some(first) = &self.first {
            if first.bytes == bytes {
                self.record_auto(&first.labeling.clone(), &labeling);
            }
        }
        match &self.best {
            None => {
                self.best = Some(Leaf {
                    labeling: labeling.clone(),
                    bytes: bytes.clone(),
                });
            }
            Some(best) => {
                if bytes < best.bytes {
                    self.best = Some(Leaf {
                        labeling: labeling.clone(),
                        bytes: bytes.clone(),
                    });
                } else if bytes == best.bytes {
                    self.record_auto(&best.labeling.clone(), &labeling);
                }
            }
        }
        if self.first.is_none() {
            self.first = Some(Leaf { labeling, bytes });
        }
    }

    /// Two labelings with equal certificates compose to an automorphism.
    fn record_auto(&mut self, l1: &Perm, l2: &Perm) {
        let auto = l2.inverse().compose(l1);
        if auto.is_identity() || self.autos.contains(&auto) {
            return;
        }
        debug_assert!(self.s.is_automorphism(&auto));
        self.autos.push(auto);
    }
}

/// Serializes the structure under a labeling: vertex count, vertex colors
/// by canonical position, then the pair-color upper triangle.
fn certificate(s: &ColoredStructure, labeling: &Perm) -> Vec<u8> {
    let n = s.n();
    let inverse = labeling.inverse();
    let mut bytes = Vec::with_capacity(4 + 2 * n + n * n.saturating_sub(1) / 2);
    bytes.extend_from_slice(&(n as u32).to_le_bytes());
    for pos in 0..n {
        bytes.extend_from_slice(&s.vertex_color(inverse.apply(pos)).to_le_bytes());
    }
    for i in 0..n {
        for j in i + 1..n {
            bytes.push(s.pair_color(inverse.apply(i), inverse.apply(j)));
        }
    }
    bytes
}
