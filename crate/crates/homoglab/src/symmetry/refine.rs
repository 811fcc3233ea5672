//! Color refinement: 1-dimensional Weisfeiler–Leman extended to pair
//! colors. The stable partition is label-invariant because vertices are
//! keyed only by per-cell, per-color incidence counts and new cells are
//! ordered by key.

use crate::symmetry::colored::{ColoredStructure, Coloring};

/// The coarsest stable refinement of `initial`: vertices stay in one cell
/// only if they see equal counts of every pair color into every cell.
pub fn color_refine(s: &ColoredStructure, initial: &Coloring) -> Coloring {
    let n = s.n();
    debug_assert_eq!(initial.n(), n);
    if n == 0 {
        return initial.clone();
    }
    let colors = s.pair_color_count() as usize;

    let mut cells: Vec<Vec<usize>> = initial.cells().to_vec();
    loop {
        let mut cell_of = vec![0usize; n];
        for (ci, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci;
            }
        }
        // key[v][d * colors + c] = #neighbors of color c inside cell d
        let key = |v: usize| -> Vec<u32> {
            let mut counts = vec![0u32; cells.len() * colors];
            for u in 0..n {
                if u != v {
                    counts[cell_of[u] * colors + s.pair_color(v, u) as usize] += 1;
                }
            }
            counts
        };

        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> =
                cell.iter().map(|&v| (key(v), v)).collect();
            keyed.sort();
            let mut groups: Vec<Vec<usize>> = Vec::new();
            let mut prev: Option<Vec<u32>> = None;
            for (k, v) in keyed {
                if prev.as_ref() == Some(&k) {
                    groups.last_mut().expect("non-empty").push(v);
                } else {
                    groups.push(vec![v]);
                    prev = Some(k);
                }
            }
            if groups.len() > 1 {
                changed = true;
            }
            next.extend(groups);
        }
        cells = next;
        if !changed {
            break;
        }
    }
    for cell in &mut cells {
        cell.sort_unstable();
    }
    Coloring::from_cells(n, cells).expect("refinement preserves the partition")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn regular_vertex_transitive_graph_stays_one_cell() {
        let s = ColoredStructure::plain(Graph::cycle(5));
        let refined = color_refine(&s, &Coloring::unit(5));
        assert_eq!(refined.cell_sizes(), vec![5]);
    }

    #[test]
    fn degree_split_on_union() {
        // octahedron ⊔ K_3: degrees 4 vs 2
        let octa = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).complement();
        let g = octa.disjoint_union(&Graph::complete(3));
        let refined = color_refine(&ColoredStructure::plain(g), &Coloring::unit(9));
        assert_eq!(refined.cell_sizes(), vec![6, 3]);
    }

    #[test]
    fn pair_colors_feed_refinement() {
        // prism with the matching recolored is still vertex-transitive
        let prism = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        );
        let s = ColoredStructure::with_pair_relation(prism.clone(), &[(0, 3), (1, 4), (2, 5)])
            .unwrap();
        let refined = color_refine(&s, &Coloring::unit(6));
        assert_eq!(refined.cell_sizes(), vec![6]);

        // marking a single edge instead breaks transitivity
        let s2 = ColoredStructure::with_pair_relation(prism, &[(0, 1)]).unwrap();
        let refined2 = color_refine(&s2, &Coloring::unit(6));
        assert!(refined2.cells().len() > 1);
    }

    #[test]
    fn path_splits_middle_from_ends() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let refined = color_refine(&ColoredStructure::plain(p3), &Coloring::unit(3));
        let mut sizes = refined.cell_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2]);
    }
}
