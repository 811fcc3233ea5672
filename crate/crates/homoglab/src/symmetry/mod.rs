//! Automorphism groups, canonical labeling, and orbit queries on
//! vertices, tuples, and subsets. Everything downstream (spectra, the
//! classifier, expansions) runs on this engine.

mod canon;
mod colored;
mod group;
mod perm;
mod refine;

pub use canon::CanonOutcome;
pub use colored::{ColoredStructure, Coloring, PAIR_EDGE, PAIR_NONEDGE};
pub use group::PermGroup;
pub use perm::{MaskTables, Perm};
pub use refine::color_refine;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// Exact automorphism group of a colored structure.
pub fn automorphism_group(s: &ColoredStructure, budget: &Budget) -> Result<PermGroup> {
    let outcome = canon::canon_search(s, budget)?;
    Ok(PermGroup::from_generators(s.n(), outcome.generators))
}

/// Canonical labeling plus certificate bytes: two structures get equal
/// bytes iff they are isomorphic as colored structures.
pub fn canonical_form(s: &ColoredStructure, budget: &Budget) -> Result<(Perm, Vec<u8>)> {
    let outcome = canon::canon_search(s, budget)?;
    Ok((outcome.labeling, outcome.bytes))
}

/// Canonical form and the automorphism group from one search.
pub fn canon_full(s: &ColoredStructure, budget: &Budget) -> Result<(CanonOutcome, PermGroup)> {
    let outcome = canon::canon_search(s, budget)?;
    let group = PermGroup::from_generators(s.n(), outcome.generators.clone());
    Ok((outcome, group))
}

/// True iff some group element maps tuple `a` to tuple `b` pointwise.
pub fn tuple_orbit_same(grp: &PermGroup, a: &[usize], b: &[usize]) -> Result<bool> {
    Ok(grp.map_tuple(a, b)?.is_some())
}

/// Isomorphism test with a mapping witness (`a`-labels to `b`-labels),
/// by composing the two canonical labelings.
pub fn are_isomorphic(
    a: &crate::graph::Graph,
    b: &crate::graph::Graph,
    budget: &Budget,
) -> Result<Option<Perm>> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let (la, bytes_a) = canonical_form(&ColoredStructure::plain(a.clone()), budget)?;
    let (lb, bytes_b) = canonical_form(&ColoredStructure::plain(b.clone()), budget)?;
    if bytes_a != bytes_b {
        return Ok(None);
    }
    let mapping = lb.inverse().compose(&la);
    debug_assert_eq!(&a.relabel(mapping.images()), b);
    Ok(Some(mapping))
}

/// One orbit of injective k-tuples: its lexicographically least member
/// and the orbit size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleOrbit {
    pub representative: Vec<usize>,
    pub size: u64,
}

/// Partition of all injective k-tuples into automorphism orbits, ordered
/// by representative. Sizes sum to n!/(n-k)!.
pub fn orbits_on_ktuples(
    grp: &PermGroup,
    k: usize,
    budget: &Budget,
) -> Result<Vec<TupleOrbit>> {
    let n = grp.degree();
    if k == 0 || k > n {
        return Err(Error::domain(format!("k={k} out of range 1..={n}")));
    }
    if n > 255 || k > 8 {
        return Err(Error::domain("tuple orbits support n <= 255 and k <= 8"));
    }
    let mut total: u64 = 1;
    for i in 0..k {
        total = total
            .checked_mul((n - i) as u64)
            .ok_or_else(|| Error::domain("tuple count overflow"))?;
    }
    budget.charge(total)?;

    let pack = |t: &[usize]| -> u64 {
        t.iter().fold(0u64, |acc, &v| acc << 8 | v as u64)
    };

    let mut visited = std::collections::HashSet::with_capacity(total as usize);
    let mut orbits = Vec::new();
    let mut tuple = vec![0usize; k];
    enumerate_injective(n, k, &mut tuple, 0, &mut |rep: &[usize]| {
        if visited.contains(&pack(rep)) {
            return;
        }
        let mut queue: Vec<Vec<usize>> = vec![rep.to_vec()];
        visited.insert(pack(rep));
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head].clone();
            head += 1;
            for g in grp.generators() {
                let image: Vec<usize> = current.iter().map(|&v| g.apply(v)).collect();
                if visited.insert(pack(&image)) {
                    queue.push(image);
                }
            }
        }
        orbits.push(TupleOrbit {
            representative: rep.to_vec(),
            size: queue.len() as u64,
        });
    });
    debug_assert_eq!(orbits.iter().map(|o| o.size).sum::<u64>(), total);
    Ok(orbits)
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

/// The permutation group induced on `s` by the setwise stabilizer of `s`
/// in `grp`, acting on positions of the ascending member list.
pub fn set_stabilizer_restriction(
    grp: &PermGroup,
    s: &VertexSet,
    budget: &Budget,
) -> Result<PermGroup> {
    let members = s.to_vec();
    if members.iter().any(|&v| v >= grp.degree()) {
        return Err(Error::domain("subset member outside group degree"));
    }
    let stab = grp.set_stabilizer(s, budget)?;
    let position = |v: usize| members.binary_search(&v).expect("member");
    let restricted: Vec<Perm> = stab
        .generators()
        .iter()
        .map(|g| {
            let images: Vec<usize> = members.iter().map(|&v| position(g.apply(v))).collect();
            Perm::from_images(images).expect("setwise stabilizer acts on s")
        })
        .collect();
    Ok(PermGroup::from_generators(members.len(), restricted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use num_bigint::BigUint;

    fn budget() -> Budget {
        Budget::new(10_000_000, "test")
    }

    fn plain(g: Graph) -> ColoredStructure {
        ColoredStructure::plain(g)
    }

    fn prism() -> Graph {
        Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
    }

    /// Exhaustive n!-filter oracle for automorphism groups.
    fn brute_force_autos(s: &ColoredStructure) -> Vec<Perm> {
        let n = s.n();
        let mut out = Vec::new();
        let mut images: Vec<usize> = (0..n).collect();
        permute(&mut images, 0, &mut |p| {
            let perm = Perm::from_images(p.to_vec()).unwrap();
            if s.is_automorphism(&perm) {
                out.push(perm);
            }
        });
        out
    }

    fn permute(arr: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
        if i == arr.len() {
            f(arr);
            return;
        }
        for j in i..arr.len() {
            arr.swap(i, j);
            permute(arr, i + 1, f);
            arr.swap(i, j);
        }
    }

    #[test]
    fn k4_has_full_symmetric_group() {
        let g = automorphism_group(&plain(Graph::complete(4)), &budget()).unwrap();
        assert_eq!(g.order(), &BigUint::from(24u32));
    }

    #[test]
    fn c5_group_is_dihedral_of_order_10() {
        let g = automorphism_group(&plain(Graph::cycle(5)), &budget()).unwrap();
        assert_eq!(g.order(), &BigUint::from(10u32));
    }

    #[test]
    fn octahedron_order_matches_brute_force() {
        let octa = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).complement();
        let s = plain(octa);
        let oracle = brute_force_autos(&s);
        assert_eq!(oracle.len(), 48);
        let g = automorphism_group(&s, &budget()).unwrap();
        assert_eq!(g.order(), &BigUint::from(oracle.len()));
        for p in &oracle {
            assert!(g.contains(p));
        }
    }

    #[test]
    fn engine_matches_brute_force_on_small_graphs() {
        let cases = vec![
            Graph::empty(1),
            Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]),
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (3, 4)]),
            Graph::cycle(6),
            prism(),
            Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (4, 5), (5, 6)]),
        ];
        for g in cases {
            let s = plain(g);
            let oracle = brute_force_autos(&s);
            let engine = automorphism_group(&s, &budget()).unwrap();
            assert_eq!(engine.order(), &BigUint::from(oracle.len()), "{s:?}");
            for p in &oracle {
                assert!(engine.contains(p), "{s:?} missing {p:?}");
            }
        }
    }

    #[test]
    fn colored_structure_groups_respect_colors() {
        // marking one triangle of 2K_3 halves the swap symmetry
        let two_k3 = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let s = ColoredStructure::with_vertex_colors(
            two_k3.clone(),
            vec![1, 1, 1, 0, 0, 0],
        )
        .unwrap();
        let colored = automorphism_group(&s, &budget()).unwrap();
        assert_eq!(colored.order(), &BigUint::from(36u32));
        let plain_group = automorphism_group(&plain(two_k3), &budget()).unwrap();
        assert_eq!(plain_group.order(), &BigUint::from(72u32));
    }

    #[test]
    fn ktuple_orbits_on_c5() {
        let g = automorphism_group(&plain(Graph::cycle(5)), &budget()).unwrap();
        let orbits = orbits_on_ktuples(&g, 2, &budget()).unwrap();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits.iter().map(|o| o.size).sum::<u64>(), 20);
        assert!(orbits.iter().all(|o| o.size == 10));
    }

    #[test]
    fn ktuple_orbits_on_prism_vertices() {
        let g = automorphism_group(&plain(prism()), &budget()).unwrap();
        let orbits = orbits_on_ktuples(&g, 1, &budget()).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].size, 6);
    }

    #[test]
    fn ktuple_orbits_split_union_components() {
        let octa = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).complement();
        let g =
            automorphism_group(&plain(octa.disjoint_union(&Graph::complete(3))), &budget())
                .unwrap();
        let orbits = orbits_on_ktuples(&g, 1, &budget()).unwrap();
        let sizes: Vec<u64> = orbits.iter().map(|o| o.size).collect();
        assert_eq!(sizes, vec![6, 3]);
    }

    #[test]
    fn tuple_orbit_queries_on_c5_and_prism() {
        let c5 = automorphism_group(&plain(Graph::cycle(5)), &budget()).unwrap();
        assert!(tuple_orbit_same(&c5, &[0, 1], &[2, 3]).unwrap());
        assert!(tuple_orbit_same(&c5, &[0, 1], &[0, 1]).unwrap());

        let pg = automorphism_group(&plain(prism()), &budget()).unwrap();
        // matching edge endpoints vs triangle edge endpoints
        assert!(!tuple_orbit_same(&pg, &[0, 3], &[0, 1]).unwrap());
    }

    #[test]
    fn set_stabilizer_restriction_examples() {
        let k4 = automorphism_group(&plain(Graph::complete(4)), &budget()).unwrap();
        let restr =
            set_stabilizer_restriction(&k4, &VertexSet::from_iter(4, [1, 3]), &budget())
                .unwrap();
        assert_eq!(restr.order(), &BigUint::from(2u32));

        let pg = automorphism_group(&plain(prism()), &budget()).unwrap();
        let edge = set_stabilizer_restriction(
            &pg,
            &VertexSet::from_iter(6, [0, 3]),
            &budget(),
        )
        .unwrap();
        assert_eq!(edge.order(), &BigUint::from(2u32));

        let c5 = automorphism_group(&plain(Graph::cycle(5)), &budget()).unwrap();
        let nonedge = set_stabilizer_restriction(
            &c5,
            &VertexSet::from_iter(5, [0, 2]),
            &budget(),
        )
        .unwrap();
        assert_eq!(nonedge.order(), &BigUint::from(2u32));
    }

    #[test]
    fn aut_equals_aut_of_complement() {
        for g in [Graph::cycle(6), prism(), Graph::from_edges(5, &[(0, 1), (2, 3)])] {
            let a = automorphism_group(&plain(g.clone()), &budget()).unwrap();
            let b = automorphism_group(&plain(g.complement()), &budget()).unwrap();
            assert!(a.same_group(&b));
        }
    }
}
