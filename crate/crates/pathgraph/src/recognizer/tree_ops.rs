use crate::chordal::CliqueTree;
use crate::graph::VertexSet;

/// Nodes reachable from `start` using only edges accepted by `pass`.
pub(crate) fn reach(t: &CliqueTree, start: usize, pass: impl Fn(usize, usize) -> bool) -> Vec<bool> {
    let adj = t.adjacency();
    let mut seen = vec![false; t.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] && pass(u, w) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Union of the cliques flagged in `keep`.
pub(crate) fn vertices_of(t: &CliqueTree, keep: &[bool], universe: usize) -> VertexSet {
    let mut out = VertexSet::new(universe);
    for (c, _) in t.cliques.iter().zip(keep).filter(|(_, &k)| k) {
        out.union_with(c);
    }
    out
}

/// Node of `t` meeting `s` that is farthest from `from`; ties go to the
/// smallest index.
pub(crate) fn farthest_meeting(t: &CliqueTree, from: usize, s: &VertexSet) -> Option<usize> {
    let dist = t.distances(from);
    (0..t.len())
        .filter(|&i| t.cliques[i].intersects(s) && dist[i] != usize::MAX)
        .min_by_key(|&i| (std::cmp::Reverse(dist[i]), i))
}

/// Smallest clique (in set order) containing `s`.
pub(crate) fn smallest_containing(t: &CliqueTree, s: &VertexSet) -> Option<usize> {
    (0..t.len()).filter(|&i| s.is_subset(&t.cliques[i])).min_by(|&a, &b| t.cliques[a].cmp(&t.cliques[b]))
}

pub(crate) fn degree(t: &CliqueTree, node: usize) -> usize {
    t.edges.iter().filter(|&&(a, b)| a == node || b == node).count()
}

/// Assembles a tree from pieces of other trees; nodes are addressed by clique.
#[derive(Default)]
pub(crate) struct TreeBuilder {
    cliques: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

impl TreeBuilder {
    pub(crate) fn add_tree(&mut self, t: &CliqueTree) {
        self.add_part(t, &vec![true; t.len()]);
    }

    /// Adds the flagged nodes of `t` and the edges of `t` among them.
    pub(crate) fn add_part(&mut self, t: &CliqueTree, keep: &[bool]) {
        let mut index = vec![usize::MAX; t.len()];
        for i in (0..t.len()).filter(|&i| keep[i]) {
            index[i] = self.cliques.len();
            self.cliques.push(t.cliques[i].clone());
        }
        for &(a, b) in &t.edges {
            if keep[a] && keep[b] {
                self.edges.push((index[a], index[b]));
            }
        }
    }

    fn node(&self, c: &VertexSet) -> Option<usize> {
        self.cliques.iter().position(|d| d == c)
    }

    /// False when either clique is missing.
    pub(crate) fn connect(&mut self, a: &VertexSet, b: &VertexSet) -> bool {
        match (self.node(a), self.node(b)) {
            (Some(i), Some(j)) => {
                self.edges.push((i, j));
                true
            }
            _ => false,
        }
    }

    pub(crate) fn disconnect(&mut self, a: &VertexSet, b: &VertexSet) -> bool {
        let (Some(i), Some(j)) = (self.node(a), self.node(b)) else { return false };
        let before = self.edges.len();
        self.edges.retain(|&e| e != (i, j) && e != (j, i));
        before != self.edges.len()
    }

    /// A node containing `s` where every vertex of `s` ends its current
    /// subtree, so a new leaf labelled `s` keeps those subtrees paths.
    pub(crate) fn end_containing(&self, s: &VertexSet) -> Option<VertexSet> {
        (0..self.cliques.len())
            .filter(|&i| s.is_subset(&self.cliques[i]))
            .find(|&i| {
                s.iter().all(|v| {
                    let along = self.edges.iter().filter(|&&(a, b)| {
                        (a == i && self.cliques[b].contains(v)) || (b == i && self.cliques[a].contains(v))
                    });
                    along.count() <= 1
                })
            })
            .map(|i| self.cliques[i].clone())
    }

    pub(crate) fn finish(self) -> CliqueTree {
        CliqueTree { cliques: self.cliques, edges: self.edges }
    }
}
