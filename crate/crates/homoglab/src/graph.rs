//! Finite simple graphs over dense vertex indices `0..n-1`, with bitset
//! adjacency rows. Values are immutable once built (construction goes
//! through [`GraphBuilder`] or the named constructors), so they are safe
//! to share across threads.

use std::fmt;

use crate::error::{Error, Result};

/// A set of vertices of a host graph, packed 64 per word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    capacity: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(capacity: usize) -> Self {
        VertexSet {
            capacity,
            words: vec![0; capacity.div_ceil(64)],
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::empty(capacity);
        for v in 0..capacity {
            s.insert(v);
        }
        s
    }

    pub fn from_iter(capacity: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(capacity);
        for v in members {
            s.insert(v);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.capacity, "vertex {v} out of range {}", self.capacity);
        self.words[v / 64] |= 1u64 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        assert!(v < self.capacity);
        self.words[v / 64] &= !(1u64 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersect(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            capacity: self.capacity,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    /// The single-word mask for hosts with at most 64 vertices.
    pub fn as_mask(&self) -> Option<u64> {
        if self.capacity <= 64 {
            Some(self.words.first().copied().unwrap_or(0))
        } else {
            None
        }
    }

    pub fn from_mask(capacity: usize, mask: u64) -> Self {
        assert!(capacity <= 64);
        VertexSet {
            capacity,
            words: vec![mask],
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Finite simple graph: symmetric, irreflexive adjacency over `0..n-1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rows: (0..n).map(|_| VertexSet::empty(n)).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v);
            }
        }
        b.build()
    }

    pub fn cycle(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for v in 0..n {
            b.add_edge(v, (v + 1) % n);
        }
        b.build()
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v);
        }
        b.build()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.rows[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn is_regular(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Same vertex set, complemented edge relation.
    pub fn complement(&self) -> Graph {
        let mut b = GraphBuilder::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    b.add_edge(u, v);
                }
            }
        }
        b.build()
    }

    /// `self` followed by `other` with indices shifted by `self.n`; no cross edges.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut b = GraphBuilder::new(n);
        for (u, v) in self.edges() {
            b.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            b.add_edge(u + self.n, v + self.n);
        }
        b.build()
    }

    /// The subgraph induced on `s`, vertices relabeled `0..|s|-1` in
    /// ascending original order.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Graph> {
        if let Some(v) = s.iter().find(|&v| v >= self.n) {
            return Err(Error::domain(format!(
                "induced subgraph member {v} out of range 0..{}",
                self.n
            )));
        }
        let members = s.to_vec();
        let mut b = GraphBuilder::new(members.len());
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.add_edge(i, j);
                }
            }
        }
        Ok(b.build())
    }

    /// The image of the graph under a vertex bijection given as an image
    /// table (`map[v]` = new label of `v`).
    pub fn relabel(&self, map: &[usize]) -> Graph {
        assert_eq!(map.len(), self.n);
        let mut b = GraphBuilder::new(self.n);
        for (u, v) in self.edges() {
            b.add_edge(map[u], map[v]);
        }
        b.build()
    }

    /// Connected components, each as a vertex set, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::empty(self.n);
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::empty(self.n);
            let mut stack = vec![start];
            comp.insert(start);
            seen.insert(start);
            while let Some(u) = stack.pop() {
                for v in self.rows[u].iter() {
                    if !seen.contains(v) {
                        seen.insert(v);
                        comp.insert(v);
                        stack.push(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// DOT text for external visualization. `colors[v]`, when given,
    /// becomes a `color` attribute on the vertex.
    pub fn to_dot(&self, colors: Option<&[u16]>) -> String {
        use std::fmt::Write;
        let mut s = String::from("graph {\n");
        for v in 0..self.n {
            match colors {
                Some(c) => writeln!(s, "  {v} [color={}];", c[v]).unwrap(),
                None => writeln!(s, "  {v};").unwrap(),
            }
        }
        for (u, v) in self.edges() {
            writeln!(s, "  {u} -- {v};").unwrap();
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Mutable construction stage for [`Graph`]. Loops are rejected; adding an
/// edge twice is idempotent (no multi-edges representable).
pub struct GraphBuilder {
    n: usize,
    rows: Vec<VertexSet>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            rows: (0..n).map(|_| VertexSet::empty(n)).collect(),
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range");
        assert_ne!(u, v, "loops are not simple");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn build(self) -> Graph {
        Graph {
            n: self.n,
            rows: self.rows,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> Graph {
        // complement of 3 disjoint K_2: parts {0,1},{2,3},{4,5}
        let three_k2 = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]);
        three_k2.complement()
    }

    #[test]
    fn complement_of_complete_is_empty() {
        let g = Graph::complete(3).complement();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.n(), 3);
    }

    #[test]
    fn complement_is_involution_on_c5() {
        let c5 = Graph::cycle(5);
        assert_eq!(c5.complement().complement(), c5);
    }

    #[test]
    fn complement_of_three_k2_checked_pairwise() {
        // Oracle: enumerate all 15 pairs of the expected octahedron directly.
        let g = octahedron();
        for u in 0..6 {
            for v in (u + 1)..6 {
                let same_part = u / 2 == v / 2;
                assert_eq!(g.has_edge(u, v), !same_part, "pair ({u},{v})");
            }
        }
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.is_regular(), Some(4));
    }

    #[test]
    fn disjoint_union_shifts_and_keeps_degrees() {
        let two = Graph::complete(1).disjoint_union(&Graph::complete(1));
        assert_eq!(two.n(), 2);
        assert_eq!(two.edge_count(), 0);

        let c4c4 = Graph::cycle(4).disjoint_union(&Graph::cycle(4));
        assert_eq!(c4c4.n(), 8);
        assert_eq!(c4c4.degree_sequence(), vec![2; 8]);

        let mix = octahedron().disjoint_union(&Graph::complete(3));
        assert_eq!(mix.n(), 9);
        assert_eq!(mix.edge_count(), 15);
    }

    #[test]
    fn induced_subgraph_of_c5_prefix_is_path() {
        let c5 = Graph::cycle(5);
        let s = VertexSet::from_iter(5, [0, 1, 2]);
        let p3 = c5.induced_subgraph(&s).unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn induced_subgraph_full_set_is_identity() {
        let g = octahedron();
        let h = g.induced_subgraph(&VertexSet::full(6)).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn induced_subgraph_of_octahedron_part_is_empty() {
        let g = octahedron();
        let part = VertexSet::from_iter(6, [0, 1]);
        assert_eq!(g.induced_subgraph(&part).unwrap().edge_count(), 0);
    }

    #[test]
    fn induced_subgraph_rejects_out_of_range() {
        let g = Graph::cycle(4);
        let mut s = VertexSet::empty(9);
        s.insert(7);
        assert!(matches!(
            g.induced_subgraph(&s),
            Err(Error::InputDomain(_))
        ));
    }

    #[test]
    fn components_of_union() {
        let g = Graph::cycle(4).disjoint_union(&Graph::complete(3));
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(comps[1].to_vec(), vec![4, 5, 6]);
    }

    #[test]
    fn vertex_set_iter_and_mask() {
        let s = VertexSet::from_iter(70, [0, 63, 64, 69]);
        assert_eq!(s.to_vec(), vec![0, 63, 64, 69]);
        assert_eq!(s.len(), 4);
        assert!(s.as_mask().is_none());
        let t = VertexSet::from_iter(10, [1, 3]);
        assert_eq!(t.as_mask(), Some(0b1010));
    }

    #[test]
    fn dot_export_mentions_all_edges() {
        let dot = Graph::cycle(3).to_dot(None);
        assert!(dot.contains("0 -- 1;"));
        assert!(dot.contains("1 -- 2;"));
        assert!(dot.contains("0 -- 2;"));
    }
}
