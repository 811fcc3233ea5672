//! Graphs enriched with vertex colors and pair colors. A plain graph is
//! the all-plain coloring; unary and binary expansions are the same type
//! with extra colors, so homogeneity and canonical-form code is shared.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::symmetry::perm::Perm;

/// Pair color values: bit 0 carries the edge relation of the underlying
/// graph, higher bits carry added binary relations. The reduct is always
/// recoverable from bit 0 alone.
pub const PAIR_NONEDGE: u8 = 0;
pub const PAIR_EDGE: u8 = 1;

#[derive(Clone, PartialEq, Eq)]
pub struct ColoredStructure {
    graph: Graph,
    vcolor: Vec<u16>,
    /// Upper-triangle pair colors, row-major over u < v.
    pcolor: Vec<u8>,
    color_count: u8,
}

fn tri_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

impl ColoredStructure {
    /// The trivially colored structure of a plain graph.
    pub fn plain(graph: Graph) -> Self {
        let n = graph.n();
        let mut pcolor = vec![PAIR_NONEDGE; n * n.saturating_sub(1) / 2];
        for (u, v) in graph.edges() {
            pcolor[tri_index(n, u, v)] = PAIR_EDGE;
        }
        ColoredStructure {
            graph,
            vcolor: vec![0; n],
            pcolor,
            color_count: 2,
        }
    }

    /// Adds a vertex 2-coloring (unary expansion).
    pub fn with_vertex_colors(graph: Graph, vcolor: Vec<u16>) -> Result<Self> {
        if vcolor.len() != graph.n() {
            return Err(Error::domain("vertex color table length mismatch"));
        }
        let mut s = Self::plain(graph);
        s.vcolor = vcolor;
        Ok(s)
    }

    /// Marks a symmetric irreflexive pair relation (binary expansion):
    /// related pairs get bit 1 set on top of their edge bit.
    pub fn with_pair_relation(graph: Graph, related: &[(usize, usize)]) -> Result<Self> {
        let n = graph.n();
        let mut s = Self::plain(graph);
        for &(u, v) in related {
            if u == v {
                return Err(Error::domain("pair relation must be irreflexive"));
            }
            if u >= n || v >= n {
                return Err(Error::domain("pair relation member out of range"));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            s.pcolor[tri_index(n, a, b)] |= 2;
        }
        s.color_count = 4;
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// The graph obtained by dropping every added relation.
    pub fn reduct(&self) -> Graph {
        self.graph.clone()
    }

    pub fn vertex_color(&self, v: usize) -> u16 {
        self.vcolor[v]
    }

    pub fn vertex_colors(&self) -> &[u16] {
        &self.vcolor
    }

    pub fn pair_color(&self, u: usize, v: usize) -> u8 {
        debug_assert_ne!(u, v);
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.pcolor[tri_index(self.n(), a, b)]
    }

    /// One above the largest pair color value that can occur.
    pub fn pair_color_count(&self) -> u8 {
        self.color_count
    }

    /// Pairs `(u, v)`, `u < v`, whose color has the added-relation bit.
    pub fn related_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.pcolor[tri_index(n, u, v)] & 2 != 0 {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The substructure induced on `s`, relabeled ascending.
    pub fn induced(&self, s: &VertexSet) -> Result<ColoredStructure> {
        let members = s.to_vec();
        if members.iter().any(|&v| v >= self.n()) {
            return Err(Error::domain("induced member out of range"));
        }
        let graph = self.graph.induced_subgraph(s)?;
        let k = members.len();
        let mut out = ColoredStructure::plain(graph);
        out.color_count = self.color_count;
        for (i, &u) in members.iter().enumerate() {
            out.vcolor[i] = self.vcolor[u];
            for (j, &v) in members.iter().enumerate().skip(i + 1) {
                out.pcolor[tri_index(k, i, j)] = self.pair_color(u, v);
            }
        }
        Ok(out)
    }

    /// Image under a vertex bijection (`map[v]` = new label).
    pub fn relabel(&self, map: &Perm) -> ColoredStructure {
        let n = self.n();
        assert_eq!(map.degree(), n);
        let graph = self.graph.relabel(map.images());
        let mut out = ColoredStructure::plain(graph);
        out.color_count = self.color_count;
        for v in 0..n {
            out.vcolor[map.apply(v)] = self.vcolor[v];
        }
        for u in 0..n {
            for v in u + 1..n {
                let (a, b) = {
                    let (x, y) = (map.apply(u), map.apply(v));
                    if x < y {
                        (x, y)
                    } else {
                        (y, x)
                    }
                };
                out.pcolor[tri_index(n, a, b)] = self.pcolor[tri_index(n, u, v)];
            }
        }
        out
    }

    /// True when `p` preserves vertex colors and pair colors.
    pub fn is_automorphism(&self, p: &Perm) -> bool {
        let n = self.n();
        if p.degree() != n {
            return false;
        }
        (0..n).all(|v| self.vcolor[p.apply(v)] == self.vcolor[v])
            && (0..n).all(|u| {
                (u + 1..n)
                    .all(|v| self.pair_color(p.apply(u), p.apply(v)) == self.pair_color(u, v))
            })
    }

    /// True when the map `a[i] -> b[i]` is an isomorphism between the
    /// substructures induced on the two tuples.
    pub fn tuples_pattern_equal(&self, a: &[usize], b: &[usize]) -> bool {
        a.len() == b.len()
            && a.iter()
                .zip(b)
                .all(|(&x, &y)| self.vcolor[x] == self.vcolor[y])
            && (0..a.len()).all(|i| {
                (i + 1..a.len())
                    .all(|j| self.pair_color(a[i], a[j]) == self.pair_color(b[i], b[j]))
            })
    }
}

impl std::fmt::Debug for ColoredStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ColoredStructure(n={}, vcolor={:?}, related={:?})",
            self.n(),
            self.vcolor,
            self.related_pairs()
        )
    }
}

/// An ordered partition of `0..n-1`; cell order is significant and each
/// cell is kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    n: usize,
    cells: Vec<Vec<usize>>,
}

impl Coloring {
    pub fn unit(n: usize) -> Self {
        if n == 0 {
            return Coloring { n, cells: vec![] };
        }
        Coloring {
            n,
            cells: vec![(0..n).collect()],
        }
    }

    /// Cells grouped by color value, ascending.
    pub fn from_vertex_colors(vcolor: &[u16]) -> Self {
        let n = vcolor.len();
        let mut values: Vec<u16> = vcolor.to_vec();
        values.sort_unstable();
        values.dedup();
        let cells = values
            .iter()
            .map(|&c| (0..n).filter(|&v| vcolor[v] == c).collect())
            .collect();
        Coloring { n, cells }
    }

    pub fn from_cells(n: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for cell in &cells {
            for &v in cell {
                if v >= n || seen[v] {
                    return Err(Error::domain("cells must partition 0..n-1"));
                }
                seen[v] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::domain("cells must cover 0..n-1"));
        }
        let mut cells = cells;
        cells.retain(|c| !c.is_empty());
        for cell in &mut cells {
            cell.sort_unstable();
        }
        Ok(Coloring { n, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// Index of the first smallest non-singleton cell, if any.
    pub fn target_cell(&self) -> Option<usize> {
        let best = self
            .cells
            .iter()
            .map(|c| c.len())
            .filter(|&s| s > 1)
            .min()?;
        self.cells.iter().position(|c| c.len() == best)
    }

    /// Splits `v` out of its cell into a singleton placed directly before
    /// the remainder.
    pub fn individualize(&self, cell_index: usize, v: usize) -> Coloring {
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        for (i, cell) in self.cells.iter().enumerate() {
            if i == cell_index {
                cells.push(vec![v]);
                let rest: Vec<usize> = cell.iter().copied().filter(|&u| u != v).collect();
                debug_assert_eq!(rest.len() + 1, cell.len());
                cells.push(rest);
            } else {
                cells.push(cell.clone());
            }
        }
        Coloring { n: self.n, cells }
    }

    /// For a discrete coloring, the labeling sending the occupant of cell
    /// `i` to position `i`.
    pub fn labeling(&self) -> Option<Perm> {
        if !self.is_discrete() {
            return None;
        }
        let mut images = vec![0usize; self.n];
        for (pos, cell) in self.cells.iter().enumerate() {
            images[cell[0]] = pos;
        }
        Perm::from_images(images)
    }
}
