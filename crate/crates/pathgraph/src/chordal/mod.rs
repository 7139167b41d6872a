//! Chordality: LexBFS, perfect elimination orders, holes and maximal cliques.

mod clique_tree;
mod separators;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

pub(crate) use clique_tree::bfs_parents;
pub use clique_tree::{build_clique_tree, clique_tree_from_cliques, CliqueTree, CliqueTreeJson, TreeDefect};
pub use separators::{minimal_separators, separator_multiplicity, separators_of_tree, Separator, SeparatorSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChordalError {
    #[error("graph is not chordal; hole {hole:?}")]
    NotChordal { hole: Vec<usize> },
    #[error("order is not a perfect elimination order at vertex {vertex}; run check_peo for details")]
    NotPeo { vertex: usize },
    #[error("order is not a permutation of the vertex set")]
    NotPermutation,
    #[error("{0:?} is not a minimal separator")]
    NotASeparator(VertexSet),
}

/// A vertex sequence; [`lex_bfs`] returns visit order, whose reversal is the
/// elimination order checked by [`check_peo`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrder(pub Vec<usize>);

impl EliminationOrder {
    pub fn reversed(&self) -> EliminationOrder {
        EliminationOrder(self.0.iter().rev().copied().collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Outcome of [`check_peo`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeoCheck {
    Valid,
    /// A chordless cycle of length at least four, in cyclic order.
    Hole(Vec<usize>),
    /// The order fails at `vertex` but the graph has no hole (it is chordal,
    /// the order is just not perfect).
    Violation {
        vertex: usize,
        pair: (usize, usize),
    },
}

/// Lexicographic breadth-first search; ties go to the smallest index.
pub fn lex_bfs(g: &Graph) -> EliminationOrder {
    EliminationOrder(lex_bfs_in(g, &g.vertex_set()))
}

/// LexBFS visit order of `G[within]`.
pub fn lex_bfs_in(g: &Graph, within: &VertexSet) -> Vec<usize> {
    let verts = within.to_vec();
    let k = verts.len();
    let mut label: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    let mut visited = g.empty_set();
    let mut order = Vec::with_capacity(k);
    for step in 0..k {
        let mut best: Option<usize> = None;
        for &v in &verts {
            if visited.contains(v) {
                continue;
            }
            match best {
                Some(b) if label[v] <= label[b] => {}
                _ => best = Some(v),
            }
        }
        let v = best.expect("an unvisited vertex remains");
        visited.insert(v);
        order.push(v);
        for w in g.neighbors(v).iter() {
            if within.contains(w) && !visited.contains(w) {
                label[w].push(k - step);
            }
        }
    }
    order
}

/// Check that each vertex's later neighbors form a clique.
///
/// On failure, look for a hole: for a vertex `v` with non-adjacent later
/// neighbors `x, y`, a shortest `x`–`y` path avoiding `N[v] \ {x, y}` closes
/// into a chordless cycle through `v`. Every hole arises this way from its
/// earliest vertex, so a hole is reported whenever the graph has one.
pub fn check_peo(g: &Graph, order: &EliminationOrder) -> PeoCheck {
    check_peo_in(g, &g.vertex_set(), order.as_slice())
}

pub(crate) fn check_peo_in(g: &Graph, within: &VertexSet, order: &[usize]) -> PeoCheck {
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let later = |v: usize| -> VertexSet {
        let mut s = g.neighbors(v).intersection(within);
        for w in s.clone().iter() {
            if pos[w] < pos[v] {
                s.remove(w);
            }
        }
        s
    };
    let mut first_violation = None;
    for &v in order {
        let lv = later(v);
        let Some(p) = lv.iter().min_by_key(|&w| pos[w]) else { continue };
        if let Some(x) = lv.without(p).first_not_in(g.neighbors(p)) {
            first_violation = Some((v, (p.min(x), p.max(x))));
            break;
        }
    }
    let Some((vertex, pair)) = first_violation else { return PeoCheck::Valid };
    for &v in order {
        let lv = later(v);
        let nv = g.closed_neighbors(v);
        for x in lv.iter() {
            for y in lv.iter().filter(|&y| y > x && !g.has_edge(x, y)) {
                let avoid = within.difference(&nv).with(x).with(y);
                if let Some(path) = g.shortest_path_in(x, y, &avoid) {
                    let mut hole = vec![v];
                    hole.extend(path);
                    return PeoCheck::Hole(hole);
                }
            }
        }
    }
    PeoCheck::Violation { vertex, pair }
}

/// A hole of `G[within]`, if any, found via LexBFS.
pub fn find_hole_in(g: &Graph, within: &VertexSet) -> Option<Vec<usize>> {
    let mut order = lex_bfs_in(g, within);
    order.reverse();
    match check_peo_in(g, within, &order) {
        PeoCheck::Hole(h) => Some(h),
        PeoCheck::Valid => None,
        PeoCheck::Violation { .. } => unreachable!("reverse LexBFS fails only on non-chordal graphs"),
    }
}

pub fn is_chordal(g: &Graph) -> bool {
    find_hole_in(g, &g.vertex_set()).is_none()
}

/// Maximal cliques from a perfect elimination order, sorted lexicographically.
pub fn maximal_cliques(g: &Graph, peo: &EliminationOrder) -> Result<Vec<VertexSet>, ChordalError> {
    cliques_from_peo(g, &g.vertex_set(), peo.as_slice())
}

pub(crate) fn cliques_from_peo(g: &Graph, within: &VertexSet, peo: &[usize]) -> Result<Vec<VertexSet>, ChordalError> {
    let mut seen = g.empty_set();
    for &v in peo {
        if !within.contains(v) || seen.contains(v) {
            return Err(ChordalError::NotPermutation);
        }
        seen.insert(v);
    }
    if seen != *within {
        return Err(ChordalError::NotPermutation);
    }
    let mut remaining = within.clone();
    let mut candidates = Vec::with_capacity(peo.len());
    for &v in peo {
        let c = g.neighbors(v).intersection(&remaining).with(v);
        if !g.is_clique(&c) {
            return Err(ChordalError::NotPeo { vertex: v });
        }
        candidates.push(c);
        remaining.remove(v);
    }
    candidates.sort();
    candidates.dedup();
    let maximal: Vec<VertexSet> =
        candidates.iter().filter(|c| !candidates.iter().any(|d| d != *c && c.is_subset(d))).cloned().collect();
    Ok(maximal)
}

/// Maximal cliques of the chordal graph `G[within]`, or a hole.
pub fn cliques_in(g: &Graph, within: &VertexSet) -> Result<Vec<VertexSet>, ChordalError> {
    let mut order = lex_bfs_in(g, within);
    order.reverse();
    match check_peo_in(g, within, &order) {
        PeoCheck::Valid => cliques_from_peo(g, within, &order),
        PeoCheck::Hole(hole) => Err(ChordalError::NotChordal { hole }),
        PeoCheck::Violation { .. } => unreachable!("reverse LexBFS fails only on non-chordal graphs"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_graph() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)])
    }

    fn lexbfs_example() -> Graph {
        // a b c d e f = 0..5; edges ab, bc, cd, eb, ec, fb, fc
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (4, 1), (4, 2), (5, 1), (5, 2)])
    }

    fn is_hole(g: &Graph, cycle: &[usize]) -> bool {
        let k = cycle.len();
        k >= 4
            && (0..k).all(|i| {
                (0..k).all(|j| {
                    let d = (i + k - j) % k;
                    let adjacent = d == 1 || d == k - 1;
                    i == j || g.has_edge(cycle[i], cycle[j]) == adjacent
                })
            })
    }

    #[test]
    fn lexbfs_example_eliminates_a_or_d_first() {
        let peo = lex_bfs(&lexbfs_example()).reversed();
        assert!([0, 3].contains(&peo.0[0]));
        assert_eq!(check_peo(&lexbfs_example(), &peo), PeoCheck::Valid);
    }

    #[test]
    fn triangle_any_order() {
        let k3 = Graph::complete(3);
        assert_eq!(check_peo(&k3, &lex_bfs(&k3).reversed()), PeoCheck::Valid);
        assert_eq!(check_peo(&k3, &EliminationOrder(vec![2, 0, 1])), PeoCheck::Valid);
    }

    #[test]
    fn c4_has_hole_for_every_order() {
        let c4 = Graph::cycle(4);
        for order in [[0, 1, 2, 3], [1, 3, 0, 2], [3, 2, 1, 0]] {
            match check_peo(&c4, &EliminationOrder(order.to_vec())) {
                PeoCheck::Hole(h) => assert!(is_hole(&c4, &h) && h.len() == 4),
                other => panic!("expected hole, got {other:?}"),
            }
        }
    }

    #[test]
    fn h_with_hand_order_is_perfect() {
        // c, a, e, b, d
        assert_eq!(check_peo(&h_graph(), &EliminationOrder(vec![2, 0, 4, 1, 3])), PeoCheck::Valid);
    }

    #[test]
    fn c6_with_short_chord_gives_five_hole() {
        let mut g = Graph::cycle(6);
        g.add_edge(0, 2);
        match check_peo(&g, &lex_bfs(&g).reversed()) {
            PeoCheck::Hole(h) => assert!(is_hole(&g, &h) && h.len() == 5),
            other => panic!("expected hole, got {other:?}"),
        }
    }

    #[test]
    fn chordal_graph_with_bad_order_reports_violation() {
        let p3 = Graph::path(3);
        assert_eq!(check_peo(&p3, &EliminationOrder(vec![1, 0, 2])), PeoCheck::Violation { vertex: 1, pair: (0, 2) });
    }

    #[test]
    fn cliques_of_h() {
        let g = h_graph();
        let cl = maximal_cliques(&g, &lex_bfs(&g).reversed()).unwrap();
        assert_eq!(cl, vec![g.set_of(&[0, 1]), g.set_of(&[1, 2, 3]), g.set_of(&[3, 4])]);
    }

    #[test]
    fn complete_graph_single_clique() {
        let k5 = Graph::complete(5);
        assert_eq!(maximal_cliques(&k5, &lex_bfs(&k5).reversed()).unwrap(), vec![k5.vertex_set()]);
    }

    #[test]
    fn invalid_order_is_rejected() {
        let p3 = Graph::path(3);
        assert_eq!(maximal_cliques(&p3, &EliminationOrder(vec![1, 0, 2])), Err(ChordalError::NotPeo { vertex: 1 }));
    }
}
