//! Permutation groups as base / strong-generating-set chains
//! (incremental Schreier–Sims). Orders are exact big integers; membership
//! is decided by sifting. Construction is deterministic: orbits are
//! explored breadth-first with generators in list order.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::symmetry::perm::Perm;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Perm>,
    /// point -> u with u(base) = point
    transversal: BTreeMap<usize, Perm>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut transversal = BTreeMap::new();
        transversal.insert(base, Perm::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            transversal,
        }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.transversal.clear();
        self.transversal.insert(self.base, Perm::identity(degree));
        let mut queue = vec![self.base];
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            let u_p = self.transversal[&p].clone();
            for s in &self.gens {
                let q = s.apply(p);
                if !self.transversal.contains_key(&q) {
                    self.transversal.insert(q, s.compose(&u_p));
                    queue.push(q);
                }
            }
        }
    }
}

/// A permutation group on `0..degree-1` with a stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
    order: BigUint,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
            order: BigUint::one(),
        }
    }

    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Self {
        Self::with_base_prefix(degree, gens, &[])
    }

    /// Builds the chain with the given points forced to head the base, in
    /// order. Needed for tuple mapping and pointwise-stabilizer orders.
    pub fn with_base_prefix(degree: usize, gens: Vec<Perm>, prefix: &[usize]) -> Self {
        let mut generators: Vec<Perm> = Vec::new();
        for g in gens {
            assert_eq!(g.degree(), degree);
            if !g.is_identity() && !generators.contains(&g) {
                generators.push(g);
            }
        }

        let mut levels: Vec<Level> = prefix
            .iter()
            .map(|&b| {
                assert!(b < degree);
                Level::new(degree, b)
            })
            .collect();
        // every generator must move some base point
        for g in &generators {
            if levels.iter().all(|l| g.apply(l.base) == l.base) {
                let b = g.first_moved().expect("non-identity");
                levels.push(Level::new(degree, b));
            }
        }
        for k in 0..levels.len() {
            let base_prefix: Vec<usize> = levels[..k].iter().map(|l| l.base).collect();
            levels[k].gens = generators
                .iter()
                .filter(|g| base_prefix.iter().all(|&b| g.apply(b) == b))
                .cloned()
                .collect();
            levels[k].recompute_orbit(degree);
        }

        let mut group = PermGroup {
            degree,
            generators,
            levels,
            order: BigUint::one(),
        };
        group.complete_chain();
        group.order = group
            .levels
            .iter()
            .map(|l| BigUint::from(l.transversal.len()))
            .product();
        group
    }

    /// Bottom-up verification: every Schreier generator of level `i` must
    /// sift to identity through the deeper levels; residues become new
    /// strong generators and verification restarts at their level.
    fn complete_chain(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        'verify: loop {
            let level = &self.levels[i];
            let points: Vec<usize> = level.transversal.keys().copied().collect();
            for p in points {
                let u_p = self.levels[i].transversal[&p].clone();
                for gi in 0..self.levels[i].gens.len() {
                    let s = self.levels[i].gens[gi].clone();
                    let q = s.apply(p);
                    let u_q = self.levels[i].transversal[&q].clone();
                    let schreier = u_q.inverse().compose(&s).compose(&u_p);
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, j) = self.sift_from(i + 1, schreier);
                    if residue.is_identity() {
                        continue;
                    }
                    // new strong generator fixing base[..j]
                    if j == self.levels.len() {
                        let b = residue.first_moved().expect("non-identity");
                        self.levels.push(Level::new(self.degree, b));
                    }
                    for k in i + 1..=j {
                        self.levels[k].gens.push(residue.clone());
                        self.levels[k].recompute_orbit(self.degree);
                    }
                    i = j;
                    continue 'verify;
                }
            }
            if i == 0 {
                break;
            }
            i -= 1;
        }
    }

    fn sift_from(&self, start: usize, g: Perm) -> (Perm, usize) {
        let mut h = g;
        for j in start..self.levels.len() {
            let img = h.apply(self.levels[j].base);
            match self.levels[j].transversal.get(&img) {
                None => return (h, j),
                Some(u) => h = u.inverse().compose(&h),
            }
        }
        let end = self.levels.len();
        (h, end)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.sift_from(0, p.clone());
        residue.is_identity()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// Group equality: equal orders plus one-way generator containment.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// Orbit sizes along the base; their product is the order.
    pub fn fundamental_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.transversal.len()).collect()
    }

    /// Order of the pointwise stabilizer of the first `k` base points.
    /// Callers arrange the base via [`PermGroup::with_base_prefix`].
    pub fn stabilizer_order_below(&self, k: usize) -> BigUint {
        self.levels
            .iter()
            .skip(k)
            .map(|l| BigUint::from(l.transversal.len()))
            .product()
    }

    pub fn orbit_of(&self, v: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[v] = true;
        let mut queue = vec![v];
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    queue.push(q);
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    /// Vertex orbits as a partition, ordered by smallest member.
    pub fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.degree];
        let mut out = Vec::new();
        for v in 0..self.degree {
            if !assigned[v] {
                let orbit = self.orbit_of(v);
                for &p in &orbit {
                    assigned[p] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    /// Some element mapping tuple `a` pointwise to tuple `b`, if one
    /// exists. Entries of each tuple must be distinct. Walks the
    /// transversals of a chain rebased onto `a`; no backtracking is
    /// needed for pointwise images.
    pub fn map_tuple(&self, a: &[usize], b: &[usize]) -> Result<Option<Perm>> {
        if a.len() != b.len() {
            return Err(Error::domain(format!(
                "tuple lengths differ: {} vs {}",
                a.len(),
                b.len()
            )));
        }
        for t in [a, b] {
            for (idx, &v) in t.iter().enumerate() {
                if v >= self.degree {
                    return Err(Error::domain(format!("tuple entry {v} out of range")));
                }
                if t[..idx].contains(&v) {
                    return Err(Error::domain(format!("tuple entry {v} repeated")));
                }
            }
        }
        let rebased = PermGroup::with_base_prefix(self.degree, self.generators.clone(), a);
        let mut g = Perm::identity(self.degree);
        for (i, (&_ai, &bi)) in a.iter().zip(b).enumerate() {
            let target = g.inverse().apply(bi);
            match rebased.levels[i].transversal.get(&target) {
                None => return Ok(None),
                Some(u) => g = g.compose(u),
            }
        }
        debug_assert!(a.iter().zip(b).all(|(&x, &y)| g.apply(x) == y));
        Ok(Some(g))
    }

    /// The subgroup stabilizing `s` as a set, via Schreier generators on
    /// the orbit of `s` under the subset action. Degree is unchanged.
    pub fn set_stabilizer(&self, s: &VertexSet, budget: &Budget) -> Result<PermGroup> {
        let mask = s
            .as_mask()
            .ok_or_else(|| Error::domain("set stabilizer requires degree <= 64"))?;
        let mut transversal: BTreeMap<u64, Perm> = BTreeMap::new();
        transversal.insert(mask, Perm::identity(self.degree));
        let mut queue = vec![mask];
        let mut head = 0;
        let mut accepted: Vec<Perm> = Vec::new();
        let mut partial = PermGroup::trivial(self.degree);
        while head < queue.len() {
            let m = queue[head];
            head += 1;
            budget.charge(1)?;
            let u_m = transversal[&m].clone();
            for g in &self.generators {
                let m2 = g.apply_mask(m);
                match transversal.get(&m2) {
                    None => {
                        transversal.insert(m2, g.compose(&u_m));
                        queue.push(m2);
                    }
                    Some(u_m2) => {
                        let schreier = u_m2.inverse().compose(g).compose(&u_m);
                        if !schreier.is_identity() && !partial.contains(&schreier) {
                            accepted.push(schreier);
                            partial =
                                PermGroup::from_generators(self.degree, accepted.clone());
                        }
                    }
                }
            }
        }
        Ok(partial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Perm {
        Perm::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn symmetric_group_order() {
        // S_5 from a transposition and a 5-cycle
        let gens = vec![perm(&[1, 0, 2, 3, 4]), perm(&[1, 2, 3, 4, 0])];
        let g = PermGroup::from_generators(5, gens);
        assert_eq!(g.order(), &BigUint::from(120u32));
        assert!(g.contains(&perm(&[4, 3, 2, 1, 0])));
    }

    #[test]
    fn dihedral_group_on_pentagon() {
        let rot = perm(&[1, 2, 3, 4, 0]);
        let refl = perm(&[0, 4, 3, 2, 1]);
        let g = PermGroup::from_generators(5, vec![rot.clone(), refl.clone()]);
        assert_eq!(g.order(), &BigUint::from(10u32));
        assert!(g.contains(&rot.compose(&refl)));
        assert!(!g.contains(&perm(&[1, 0, 2, 3, 4])));
    }

    #[test]
    fn order_matches_brute_force_on_random_subgroups() {
        // oracle: closure enumeration from the same generators
        use std::collections::BTreeSet;
        let cases: Vec<Vec<Perm>> = vec![
            vec![perm(&[1, 2, 0, 3])],
            vec![perm(&[1, 0, 3, 2]), perm(&[2, 3, 0, 1])],
            vec![perm(&[0, 2, 1, 4, 3]), perm(&[1, 0, 2, 3, 4])],
            vec![perm(&[5, 4, 3, 2, 1, 0]), perm(&[1, 2, 3, 4, 5, 0])],
        ];
        for gens in cases {
            let degree = gens[0].degree();
            let mut closure: BTreeSet<Perm> = BTreeSet::new();
            closure.insert(Perm::identity(degree));
            loop {
                let mut grew = false;
                let snapshot: Vec<Perm> = closure.iter().cloned().collect();
                for a in &snapshot {
                    for g in &gens {
                        if closure.insert(g.compose(a)) {
                            grew = true;
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            let group = PermGroup::from_generators(degree, gens);
            assert_eq!(group.order(), &BigUint::from(closure.len()));
            for elem in &closure {
                assert!(group.contains(elem));
            }
        }
    }

    #[test]
    fn tuple_mapping_in_dihedral() {
        let rot = perm(&[1, 2, 3, 4, 0]);
        let refl = perm(&[0, 4, 3, 2, 1]);
        let g = PermGroup::from_generators(5, vec![rot, refl]);
        // edge (0,1) to edge (2,3): rotation by 2
        let found = g.map_tuple(&[0, 1], &[2, 3]).unwrap().unwrap();
        assert_eq!(found.apply(0), 2);
        assert_eq!(found.apply(1), 3);
        // edge to non-edge is impossible inside the dihedral group
        assert!(g.map_tuple(&[0, 1], &[0, 2]).unwrap().is_none());
        // identity case
        assert!(g.map_tuple(&[3, 1], &[3, 1]).unwrap().is_some());
    }

    #[test]
    fn map_tuple_rejects_bad_tuples() {
        let g = PermGroup::from_generators(4, vec![perm(&[1, 0, 2, 3])]);
        assert!(g.map_tuple(&[0, 1], &[2]).is_err());
        assert!(g.map_tuple(&[0, 0], &[1, 2]).is_err());
    }

    #[test]
    fn set_stabilizer_of_pair_in_s4() {
        let s4 = PermGroup::from_generators(
            4,
            vec![perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])],
        );
        let pair = VertexSet::from_iter(4, [0, 1]);
        let budget = Budget::new(1_000, "test");
        let stab = s4.set_stabilizer(&pair, &budget).unwrap();
        // {0,1} stabilizer in S_4: swap within times S_2 on {2,3} = order 4
        assert_eq!(stab.order(), &BigUint::from(4u32));
        for g in stab.generators() {
            let image: Vec<usize> = [0, 1].iter().map(|&v| g.apply(v)).collect();
            assert!(image.contains(&0) && image.contains(&1) || image == vec![1, 0] || image == vec![0, 1]);
        }
    }

    #[test]
    fn stabilizer_order_below_prefix() {
        let s4 = PermGroup::with_base_prefix(
            4,
            vec![perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])],
            &[0, 1],
        );
        // pointwise stabilizer of {0,1} in S_4 is S_2 on {2,3}
        assert_eq!(s4.stabilizer_order_below(2), BigUint::from(2u32));
        assert_eq!(s4.stabilizer_order_below(0), BigUint::from(24u32));
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::trivial(6);
        assert_eq!(g.order(), &BigUint::one());
        assert!(g.contains(&Perm::identity(6)));
        assert!(!g.contains(&perm(&[1, 0, 2, 3, 4, 5])));
        assert_eq!(g.vertex_orbits().len(), 6);
    }
}
