//! Simple undirected graphs over dense bitset adjacency rows.

mod io;
mod iso;
mod vertex_set;

use std::collections::VecDeque;

pub use io::{parse_edge_list, parse_graph6, parse_graph_text, to_edge_list, to_graph6, ParseError};
pub use iso::find_isomorphism;
pub use vertex_set::VertexSet;

/// Finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    names: Option<Vec<String>>,
}

/// Index maps produced by [`induced_subgraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabel {
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![VertexSet::new(n); n], names: None }
    }

    /// Panics on self-loops or out-of-range endpoints; duplicates are harmless.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    /// Attach a name table; names must be distinct and one per vertex.
    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.order(), "one name per vertex");
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len(), "vertex names must be distinct");
        self.names = Some(names);
        self
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of `v`: its name if the graph has a name table, else the index.
    pub fn name(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.names.as_ref()?.iter().position(|n| n == name)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        self.adj[v].with(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order() {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.order())
    }

    pub fn set_of(&self, vertices: &[usize]) -> VertexSet {
        VertexSet::from_slice(self.order(), vertices)
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset(&self.adj[v]))
    }

    /// Every vertex of `s` is adjacent to `v`.
    pub fn is_complete_to(&self, v: usize, s: &VertexSet) -> bool {
        s.without(v).is_subset(&self.adj[v])
    }

    /// `N(S)`: vertices outside `s` with a neighbor in `s`.
    pub fn neighborhood_of_set(&self, s: &VertexSet) -> VertexSet {
        let mut out = self.empty_set();
        for v in s.iter() {
            out.union_with(&self.adj[v]);
        }
        out.difference_with(s);
        out
    }

    /// Degree of `v` inside the subgraph induced by `within`.
    pub fn degree_in(&self, v: usize, within: &VertexSet) -> usize {
        self.adj[v].intersection_len(within)
    }

    /// Connected components of `G[within]`, ordered by smallest vertex.
    pub fn components_in(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut seen = self.empty_set();
        let mut out = Vec::new();
        for s in within.iter() {
            if seen.contains(s) {
                continue;
            }
            let comp = self.reach_in(s, within);
            seen.union_with(&comp);
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `s` inside `G[within]` (`s` must be in `within`).
    pub fn reach_in(&self, s: usize, within: &VertexSet) -> VertexSet {
        let mut comp = self.empty_set();
        comp.insert(s);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in self.adj[u].iter() {
                if within.contains(w) && !comp.contains(w) {
                    comp.insert(w);
                    queue.push_back(w);
                }
            }
        }
        comp
    }

    pub fn connected_in(&self, a: usize, b: usize, within: &VertexSet) -> bool {
        within.contains(a) && within.contains(b) && self.reach_in(a, within).contains(b)
    }

    /// A shortest `a`–`b` path inside `G[within]`, endpoints included.
    ///
    /// Ties are broken towards smaller vertex indices, so the result is
    /// deterministic and chordless in `G[within]`.
    pub fn shortest_path_in(&self, a: usize, b: usize, within: &VertexSet) -> Option<Vec<usize>> {
        if !within.contains(a) || !within.contains(b) {
            return None;
        }
        let n = self.order();
        let mut parent = vec![usize::MAX; n];
        parent[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            if u == b {
                break;
            }
            for w in self.adj[u].iter() {
                if within.contains(w) && parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if parent[b] == usize::MAX {
            return None;
        }
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    pub fn is_connected(&self) -> bool {
        self.components_in(&self.vertex_set()).len() <= 1
    }

    /// Edges of `G[within]`.
    pub fn edge_count_in(&self, within: &VertexSet) -> usize {
        within.iter().map(|v| self.degree_in(v, within)).sum::<usize>() / 2
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.order())?;
        for (i, (u, v)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}-{}", self.name(u), self.name(v))?;
        }
        write!(f, "])")
    }
}

/// Subgraph induced by `s`; new indices follow the increasing order of `s`.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> (Graph, Relabel) {
    let new_to_old = s.to_vec();
    let mut old_to_new = vec![None; g.order()];
    for (i, &v) in new_to_old.iter().enumerate() {
        old_to_new[v] = Some(i);
    }
    let mut h = Graph::new(new_to_old.len());
    for (i, &u) in new_to_old.iter().enumerate() {
        for w in g.neighbors(u).iter() {
            if let Some(j) = old_to_new[w] {
                if j > i {
                    h.add_edge(i, j);
                }
            }
        }
    }
    if let Some(names) = g.names() {
        h = h.with_names(new_to_old.iter().map(|&v| names[v].clone()).collect());
    }
    (h, Relabel { old_to_new, new_to_old })
}

/// Partition of `V \ removed` into connected components, ordered by smallest vertex.
pub fn components(g: &Graph, removed: &VertexSet) -> Vec<VertexSet> {
    g.components_in(&g.vertex_set().difference(removed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_graph() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)])
    }

    #[test]
    fn induced_triangle_in_h() {
        let g = h_graph();
        let (t, map) = induced_subgraph(&g, &g.set_of(&[1, 2, 3]));
        assert_eq!(t, Graph::complete(3));
        assert_eq!(map.new_to_old, vec![1, 2, 3]);
        assert_eq!(map.old_to_new[0], None);
    }

    #[test]
    fn induced_empty() {
        let g = h_graph();
        let (e, _) = induced_subgraph(&g, &g.empty_set());
        assert_eq!(e.order(), 0);
    }

    #[test]
    fn cycle_minus_vertex_is_path() {
        let c5 = Graph::cycle(5);
        for v in 0..5 {
            let (p, _) = induced_subgraph(&c5, &c5.vertex_set().without(v));
            assert!(find_isomorphism(&p, &Graph::path(4)).is_some());
        }
    }

    #[test]
    fn components_of_h_minus_b() {
        let g = h_graph();
        let comps = components(&g, &g.set_of(&[1]));
        assert_eq!(comps, vec![g.set_of(&[0]), g.set_of(&[2, 3, 4])]);
        assert_eq!(components(&g, &g.empty_set()).len(), 1);
        let c4 = Graph::cycle(4);
        let split = components(&c4, &c4.set_of(&[0, 2]));
        assert_eq!(split, vec![c4.set_of(&[1]), c4.set_of(&[3])]);
    }

    #[test]
    fn shortest_path_is_chordless() {
        let g = h_graph();
        assert_eq!(g.shortest_path_in(0, 4, &g.vertex_set()), Some(vec![0, 1, 3, 4]));
        assert_eq!(g.shortest_path_in(0, 4, &g.vertex_set().without(3)), None);
    }
}
