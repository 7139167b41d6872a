use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{cliques_in, ChordalError};
use crate::graph::{Graph, VertexSet};

/// A tree (or forest, one tree per graph component) whose nodes are the
/// maximal cliques of a graph. Edge labels are the intersections of their
/// endpoints and are computed on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueTree {
    pub cliques: Vec<VertexSet>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeDefect {
    #[error("node {0} is not a maximal clique")]
    NotMaximalClique(usize),
    #[error("nodes {0} and {1} are the same clique")]
    DuplicateNode(usize, usize),
    #[error("vertex {0} lies in no node")]
    UncoveredVertex(usize),
    #[error("edge {0}-{1} lies in no node")]
    UncoveredEdge(usize, usize),
    #[error("edge {0}-{1} does not join two distinct nodes")]
    BadEdge(usize, usize),
    #[error("the edges contain a cycle")]
    Cycle,
    #[error("tree has {trees} components but the graph has {graph}")]
    ComponentMismatch { trees: usize, graph: usize },
    #[error("nodes containing vertex {0} do not induce a subtree")]
    Incoherent(usize),
    #[error("nodes containing vertex {0} do not induce a path")]
    NotPath(usize),
}

/// Serialized form: `{cliques, edges, labels}` with sorted vertex ids.
/// Labels are derived, so input may omit them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueTreeJson {
    pub cliques: Vec<Vec<usize>>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub labels: Vec<Vec<usize>>,
}

impl CliqueTree {
    pub fn single(clique: VertexSet) -> Self {
        CliqueTree { cliques: vec![clique], edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn label(&self, edge: usize) -> VertexSet {
        let (i, j) = self.edges[edge];
        self.cliques[i].intersection(&self.cliques[j])
    }

    pub fn labels(&self) -> Vec<VertexSet> {
        (0..self.edges.len()).map(|e| self.label(e)).collect()
    }

    /// Neighbor lists, each sorted by node index.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn index_of(&self, clique: &VertexSet) -> Option<usize> {
        self.cliques.iter().position(|c| c == clique)
    }

    pub fn nodes_containing(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.cliques[i].contains(v)).collect()
    }

    /// Node sequence of the tree path from `a` to `b`.
    pub fn path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let adj = self.adjacency();
        let parent = bfs_parents(&adj, a);
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

    /// Distances (in edges) from `a`; unreachable nodes get `usize::MAX`.
    pub fn distances(&self, a: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut dist = vec![usize::MAX; self.len()];
        dist[a] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// The subtree on the nodes flagged in `keep`, re-indexed in node order.
    pub fn subtree(&self, keep: &[bool]) -> CliqueTree {
        let mut index = vec![usize::MAX; self.len()];
        let mut cliques = Vec::new();
        for i in 0..self.len() {
            if keep[i] {
                index[i] = cliques.len();
                cliques.push(self.cliques[i].clone());
            }
        }
        let edges =
            self.edges.iter().filter(|&&(i, j)| keep[i] && keep[j]).map(|&(i, j)| (index[i], index[j])).collect();
        CliqueTree { cliques, edges }
    }

    /// Nodes reachable from `start` without using any edge in `cut`
    /// (edges given as unordered node pairs).
    pub fn reachable_without(&self, start: usize, cut: &[(usize, usize)]) -> Vec<bool> {
        let is_cut = |a: usize, b: usize| cut.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a));
        let adj = self.adjacency();
        let mut seen = vec![false; self.len()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] && !is_cut(u, w) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Union of all node cliques.
    pub fn vertices(&self, universe: usize) -> VertexSet {
        let mut out = VertexSet::new(universe);
        for c in &self.cliques {
            out.union_with(c);
        }
        out
    }

    /// Check the clique-tree invariants against `G[within]`.
    pub fn check_clique_tree(&self, g: &Graph, within: &VertexSet) -> Result<(), TreeDefect> {
        self.check(g, within, false)
    }

    /// Clique-tree invariants plus: every vertex's subtree is a path.
    pub fn check_path_tree(&self, g: &Graph, within: &VertexSet) -> Result<(), TreeDefect> {
        self.check(g, within, true)
    }

    pub fn is_clique_path_tree(&self, g: &Graph) -> bool {
        self.check_path_tree(g, &g.vertex_set()).is_ok()
    }

    fn check(&self, g: &Graph, within: &VertexSet, path: bool) -> Result<(), TreeDefect> {
        // Nodes are distinct maximal cliques covering every vertex and edge.
        // With coherence, Helly's property for subtrees then forces the node
        // set to be exactly the set of maximal cliques.
        for (i, c) in self.cliques.iter().enumerate() {
            let extendable = within.difference(c).iter().any(|v| g.is_complete_to(v, c));
            if c.is_empty() || !c.is_subset(within) || !g.is_clique(c) || extendable {
                return Err(TreeDefect::NotMaximalClique(i));
            }
            if let Some(j) = self.cliques[..i].iter().position(|d| d == c) {
                return Err(TreeDefect::DuplicateNode(j, i));
            }
        }
        let covered = self.vertices(g.order());
        if let Some(v) = within.first_not_in(&covered) {
            return Err(TreeDefect::UncoveredVertex(v));
        }
        for u in within.iter() {
            for v in g.neighbors(u).iter().filter(|&v| v > u && within.contains(v)) {
                if !self.cliques.iter().any(|c| c.contains(u) && c.contains(v)) {
                    return Err(TreeDefect::UncoveredEdge(u, v));
                }
            }
        }
        let mut uf = UnionFind::new(self.len());
        for &(i, j) in &self.edges {
            if i >= self.len() || j >= self.len() || i == j {
                return Err(TreeDefect::BadEdge(i, j));
            }
            if !uf.union(i, j) {
                return Err(TreeDefect::Cycle);
            }
        }
        let trees = self.len() - self.edges.len();
        let graph = g.components_in(within).len();
        if trees != graph {
            return Err(TreeDefect::ComponentMismatch { trees, graph });
        }
        let mut incident = vec![0usize; self.len()];
        for v in within.iter() {
            let nodes = self.nodes_containing(v).len();
            incident.iter_mut().for_each(|d| *d = 0);
            let mut inner = 0;
            for &(i, j) in &self.edges {
                if self.cliques[i].contains(v) && self.cliques[j].contains(v) {
                    inner += 1;
                    incident[i] += 1;
                    incident[j] += 1;
                }
            }
            if inner + 1 != nodes {
                return Err(TreeDefect::Incoherent(v));
            }
            if path && incident.iter().any(|&d| d > 2) {
                return Err(TreeDefect::NotPath(v));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> CliqueTreeJson {
        CliqueTreeJson {
            cliques: self.cliques.iter().map(VertexSet::to_vec).collect(),
            edges: self.edges.iter().map(|&(i, j)| [i, j]).collect(),
            labels: self.labels().iter().map(VertexSet::to_vec).collect(),
        }
    }

    pub fn from_json(json: &CliqueTreeJson, universe: usize) -> CliqueTree {
        CliqueTree {
            cliques: json.cliques.iter().map(|c| VertexSet::from_slice(universe, c)).collect(),
            edges: json.edges.iter().map(|&[i, j]| (i, j)).collect(),
        }
    }

    /// Graphviz rendering; cliques and labels use the graph's vertex names.
    pub fn to_dot(&self, g: &Graph) -> String {
        let caption = |s: &VertexSet| {
            let names: Vec<String> = s.iter().map(|v| g.name(v)).collect();
            format!("{{{}}}", names.join(","))
        };
        let mut out = String::from("graph clique_tree {\n");
        for (i, c) in self.cliques.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", caption(c));
        }
        for (e, &(i, j)) in self.edges.iter().enumerate() {
            let _ = writeln!(out, "  n{i} -- n{j} [label=\"{}\"];", caption(&self.label(e)));
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn bfs_parents(adj: &[Vec<usize>], root: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; adj.len()];
    parent[root] = root;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    parent
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Maximum-weight spanning forest of the clique intersection graph.
///
/// Weights are intersection sizes; ties go to the lexicographically smallest
/// index pair. Pairs with empty intersection are never joined.
pub fn clique_tree_from_cliques(cliques: Vec<VertexSet>) -> CliqueTree {
    let k = cliques.len();
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let w = cliques[i].intersection_len(&cliques[j]);
            if w > 0 {
                pairs.push((std::cmp::Reverse(w), i, j));
            }
        }
    }
    pairs.sort_unstable();
    let mut uf = UnionFind::new(k);
    let mut edges = Vec::new();
    for (_, i, j) in pairs {
        if uf.union(i, j) {
            edges.push((i, j));
        }
    }
    CliqueTree { cliques, edges }
}

/// Clique tree (forest for disconnected input) of a chordal graph.
pub fn build_clique_tree(g: &Graph) -> Result<CliqueTree, ChordalError> {
    Ok(clique_tree_from_cliques(cliques_in(g, &g.vertex_set())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_graph() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)])
    }

    #[test]
    fn h_tree_is_a_path_with_labels_b_d() {
        let g = h_graph();
        let t = build_clique_tree(&g).unwrap();
        assert_eq!(t.edges, vec![(0, 1), (1, 2)]);
        assert_eq!(t.labels(), vec![g.set_of(&[1]), g.set_of(&[3])]);
        assert!(t.is_clique_path_tree(&g));
    }

    #[test]
    fn single_clique_tree() {
        let t = build_clique_tree(&Graph::complete(4)).unwrap();
        assert_eq!((t.len(), t.edges.len()), (1, 0));
    }

    #[test]
    fn non_chordal_carries_hole() {
        assert!(matches!(
            build_clique_tree(&Graph::cycle(5)),
            Err(ChordalError::NotChordal { hole }) if hole.len() == 5
        ));
    }

    #[test]
    fn checker_catches_defects() {
        let g = h_graph();
        let all = g.vertex_set();
        let mut t = build_clique_tree(&g).unwrap();
        t.edges = vec![(0, 2), (1, 2)];
        assert_eq!(t.check_clique_tree(&g, &all), Err(TreeDefect::Incoherent(1)));
        t.edges = vec![(0, 1)];
        assert!(matches!(t.check_clique_tree(&g, &all), Err(TreeDefect::ComponentMismatch { .. })));
        // Claw: the three edge cliques around the center form a star, never a path.
        let claw = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let star = build_clique_tree(&claw).unwrap();
        assert!(star.check_clique_tree(&claw, &claw.vertex_set()).is_ok());
        let chain = CliqueTree { cliques: star.cliques.clone(), edges: vec![(0, 1), (1, 2)] };
        assert!(chain.is_clique_path_tree(&claw));
    }

    #[test]
    fn forest_for_disconnected_graph() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        let t = build_clique_tree(&g).unwrap();
        assert!(t.edges.is_empty());
        assert!(t.check_path_tree(&g, &g.vertex_set()).is_ok());
    }

    #[test]
    fn json_and_dot() {
        let g = h_graph();
        let t = build_clique_tree(&g).unwrap();
        let json = serde_json::to_string(&t.to_json()).unwrap();
        assert_eq!(json, r#"{"cliques":[[0,1],[1,2,3],[3,4]],"edges":[[0,1],[1,2]],"labels":[[1],[3]]}"#);
        let back: CliqueTreeJson = serde_json::from_str(&json).unwrap();
        assert_eq!(CliqueTree::from_json(&back, 5), t);
        let dot = t.to_dot(&g);
        assert!(dot.starts_with("graph clique_tree {") && dot.contains("n0 -- n1 [label=\"{1}\"]"));
    }
}
