//! Simplicial, special and co-special vertices; asteroidal triples; middle vertices.

use thiserror::Error;

use crate::chordal::{build_clique_tree, cliques_in, separators_of_tree, ChordalError, CliqueTree, SeparatorSet};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("graph is not chordal; hole {hole:?}")]
    NotChordal { hole: Vec<usize> },
    #[error("graph is a clique: no separator exists")]
    Clique,
    #[error("graph is disconnected")]
    Disconnected,
}

impl From<ChordalError> for SimplicialError {
    fn from(e: ChordalError) -> Self {
        match e {
            ChordalError::NotChordal { hole } => SimplicialError::NotChordal { hole },
            other => unreachable!("unexpected chordal error {other}"),
        }
    }
}

/// `Q_v = N[v]`, `S_v = Q_v ∩ N(V \ Q_v)` and the derived flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialProfile {
    pub vertex: usize,
    pub q_v: VertexSet,
    pub s_v: VertexSet,
    pub is_simplicial: bool,
    pub is_special: bool,
    pub is_co_special: bool,
}

pub fn is_simplicial(g: &Graph, v: usize) -> bool {
    g.is_clique(g.neighbors(v))
}

/// Profile of `v` in the chordal graph `G`.
pub fn simplicial_profile(g: &Graph, v: usize) -> Result<SimplicialProfile, SimplicialError> {
    let all = g.vertex_set();
    let tree = build_clique_tree(g)?;
    Ok(profile_in(g, &all, v, &separators_of_tree(&tree)))
}

/// Profile of `v` inside `G[within]`, given 𝒮(G[within]).
pub(crate) fn profile_in(g: &Graph, within: &VertexSet, v: usize, seps: &SeparatorSet) -> SimplicialProfile {
    let q_v = g.neighbors(v).intersection(within).with(v);
    let outside = within.difference(&q_v);
    let s_v: VertexSet = {
        let mut s = g.empty_set();
        for w in q_v.iter() {
            if g.neighbors(w).intersects(&outside) {
                s.insert(w);
            }
        }
        s
    };
    let is_simplicial = g.is_clique(&q_v);
    let member = is_simplicial && seps.contains(&s_v);
    let is_special = member && seps.is_maximal(&s_v);
    let is_co_special = member && g.components_in(&within.difference(&s_v)).len() == 2;
    SimplicialProfile { vertex: v, q_v, s_v, is_simplicial, is_special, is_co_special }
}

/// Two non-adjacent special simplicial vertices of a connected chordal non-clique graph.
pub fn find_special_pair(g: &Graph) -> Result<(usize, usize), SimplicialError> {
    let all = g.vertex_set();
    let cliques = cliques_in(g, &all)?;
    if cliques.len() == 1 {
        return Err(SimplicialError::Clique);
    }
    if !g.is_connected() {
        return Err(SimplicialError::Disconnected);
    }
    let tree = crate::chordal::clique_tree_from_cliques(cliques);
    Ok(special_pair_on_tree(&tree))
}

/// The two-case recursion on clique subtrees. `tree` is a clique tree of
/// `G(𝒬(tree))` with at least two nodes; the result is sorted.
pub(crate) fn special_pair_on_tree(tree: &CliqueTree) -> (usize, usize) {
    debug_assert!(tree.len() >= 2);
    let seps = separators_of_tree(tree);
    let maximal = seps.maximal();
    let edge_with = |s: &VertexSet| (0..tree.edges.len()).find(|&e| tree.label(e) == *s).expect("label present");
    if maximal.len() == 1 {
        let s = &maximal[0];
        let (i, j) = tree.edges[edge_with(s)];
        let v = tree.cliques[i].first_not_in(s).expect("maximal cliques differ");
        let w = tree.cliques[j].first_not_in(s).expect("maximal cliques differ");
        return (v.min(w), v.max(w));
    }
    let e = tree.edges[edge_with(&maximal[0])];
    let f = tree.edges[edge_with(&maximal[1])];
    let v = side_vertex(tree, e, f);
    let w = side_vertex(tree, f, e);
    (v.min(w), v.max(w))
}

/// Recurse into the part of the tree hanging beyond edge `e` away from `f`
/// and return a special vertex of the whole graph found there.
fn side_vertex(tree: &CliqueTree, e: (usize, usize), f: (usize, usize)) -> usize {
    let dist = tree.distances(f.0);
    let (q1, q2) = if dist[e.0] < dist[e.1] { (e.0, e.1) } else { (e.1, e.0) };
    let mut keep = tree.reachable_without(q2, &[(q1, q2)]);
    keep[q1] = true;
    let z = tree.subtree(&keep);
    let (a, b) = special_pair_on_tree(&z);
    if tree.cliques[q1].contains(a) {
        b
    } else {
        a
    }
}

/// Three pairwise non-adjacent vertices, each pair joined by a path avoiding
/// the closed neighborhood of the third.
pub fn is_asteroidal_triple(g: &Graph, a: usize, b: usize, c: usize) -> bool {
    is_asteroidal_triple_in(g, &g.vertex_set(), a, b, c)
}

pub(crate) fn is_asteroidal_triple_in(g: &Graph, within: &VertexSet, a: usize, b: usize, c: usize) -> bool {
    if a == b || b == c || a == c || g.has_edge(a, b) || g.has_edge(b, c) || g.has_edge(a, c) {
        return false;
    }
    [(a, b, c), (b, a, c), (c, a, b)]
        .into_iter()
        .all(|(x, y, z)| g.connected_in(y, z, &within.difference(&g.closed_neighbors(x))))
}

/// An asteroidal triple inside `G[within]`, smallest in lexicographic order.
pub(crate) fn find_asteroidal_triple_in(g: &Graph, within: &VertexSet) -> Option<(usize, usize, usize)> {
    let verts = within.to_vec();
    for (i, &a) in verts.iter().enumerate() {
        for (j, &b) in verts.iter().enumerate().skip(i + 1) {
            if g.has_edge(a, b) {
                continue;
            }
            for &c in &verts[j + 1..] {
                if is_asteroidal_triple_in(g, within, a, b, c) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// A vertex whose neighborhood contains an asteroidal triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtViolation {
    pub center: usize,
    pub triple: (usize, usize, usize),
}

/// First vertex (in index order) whose neighborhood contains an asteroidal triple.
pub fn neighborhood_at_free(g: &Graph) -> Option<AtViolation> {
    (0..g.order())
        .find_map(|u| find_asteroidal_triple_in(g, g.neighbors(u)).map(|triple| AtViolation { center: u, triple }))
}

/// `a` is the middle of `b, c`, decided on a clique tree: every tree path from
/// a clique holding `b` to a clique holding `c` has a label inside `N(a)`.
pub fn is_middle(g: &Graph, t: &CliqueTree, a: usize, b: usize, c: usize) -> bool {
    if a == b || b == c || a == c || g.has_edge(a, b) || g.has_edge(b, c) || g.has_edge(a, c) {
        return false;
    }
    let na = g.neighbors(a);
    for qb in t.nodes_containing(b) {
        for qc in t.nodes_containing(c) {
            let Some(path) = t.path(qb, qc) else { continue };
            let blocked = path.windows(2).any(|w| t.cliques[w[0]].intersection(&t.cliques[w[1]]).is_subset(na));
            if !blocked {
                return false;
            }
        }
    }
    true
}

/// `a` is the middle of `b, c` by definition: every `b`–`c` path meets `N(a)`.
pub fn is_middle_by_paths(g: &Graph, a: usize, b: usize, c: usize) -> bool {
    if a == b || b == c || a == c || g.has_edge(a, b) || g.has_edge(b, c) || g.has_edge(a, c) {
        return false;
    }
    !g.connected_in(b, c, &g.vertex_set().difference(g.neighbors(a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_graph() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)])
    }

    fn lexbfs_example() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (4, 1), (4, 2), (5, 1), (5, 2)])
    }

    fn long_claw() -> Graph {
        Graph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    }

    #[test]
    fn c_in_h_is_simplicial_not_special() {
        let g = h_graph();
        let p = simplicial_profile(&g, 2).unwrap();
        assert!(p.is_simplicial && !p.is_special);
        assert_eq!(p.s_v, g.set_of(&[1, 3]));
    }

    #[test]
    fn lexbfs_example_profiles() {
        let g = lexbfs_example();
        let a = simplicial_profile(&g, 0).unwrap();
        assert!(a.is_simplicial && !a.is_special);
        let e = simplicial_profile(&g, 4).unwrap();
        assert!(e.is_special && e.s_v == g.set_of(&[1, 2]));
    }

    #[test]
    fn special_pairs() {
        assert_eq!(find_special_pair(&Graph::path(3)), Ok((0, 2)));
        assert_eq!(find_special_pair(&lexbfs_example()), Ok((4, 5)));
        assert_eq!(find_special_pair(&h_graph()), Ok((0, 4)));
        assert_eq!(find_special_pair(&Graph::complete(3)), Err(SimplicialError::Clique));
        assert!(matches!(find_special_pair(&Graph::cycle(4)), Err(SimplicialError::NotChordal { .. })));
    }

    #[test]
    fn asteroidal_triples() {
        assert!(is_asteroidal_triple(&long_claw(), 2, 4, 6));
        assert!(!is_asteroidal_triple(&Graph::path(5), 0, 2, 4));
        assert!(is_asteroidal_triple(&Graph::cycle(6), 0, 2, 4));
        assert!(!is_asteroidal_triple(&Graph::path(3), 0, 1, 2));
    }

    #[test]
    fn neighborhood_at() {
        assert_eq!(neighborhood_at_free(&Graph::path(6)), None);
        assert_eq!(neighborhood_at_free(&Graph::complete(5)), None);
        let mut cone = Graph::new(8);
        for (u, v) in long_claw().edges() {
            cone.add_edge(u, v);
        }
        for v in 0..7 {
            cone.add_edge(7, v);
        }
        assert_eq!(neighborhood_at_free(&cone), Some(AtViolation { center: 7, triple: (2, 4, 6) }));
    }

    #[test]
    fn middle_on_p5() {
        let g = Graph::path(5);
        let t = build_clique_tree(&g).unwrap();
        assert!(is_middle(&g, &t, 2, 0, 4));
        assert!(!is_middle(&g, &t, 0, 2, 4));
        assert!(is_middle_by_paths(&g, 2, 0, 4));
        assert!(!is_middle_by_paths(&g, 0, 2, 4));
        let k12 = Graph::path(3);
        let t = build_clique_tree(&k12).unwrap();
        assert!(!is_middle(&k12, &t, 1, 0, 2));
    }
}
