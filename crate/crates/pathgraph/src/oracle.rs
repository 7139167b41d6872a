//! Brute-force ground truth for small graphs.
//!
//! Nothing here reuses the chordal module: cliques come from Bron–Kerbosch,
//! holes from exhaustive chordless-path search, clique path trees from
//! enumerating every labeled tree by its Prüfer sequence.

use rayon::prelude::*;

use crate::chordal::{CliqueTree, Separator, SeparatorSet};
use crate::graph::{Graph, VertexSet};

/// Size limits for the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest number of maximal cliques (per component) for tree enumeration.
    pub max_cliques: usize,
    /// Largest vertex count for subset and hole searches.
    pub max_vertices: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_cliques: 8, max_vertices: 12 }
    }
}

impl OracleBudget {
    pub fn new(max_cliques: usize, max_vertices: usize) -> Self {
        assert!(max_cliques > 0 && max_vertices > 0, "budget limits must be positive");
        OracleBudget { max_cliques, max_vertices }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CptVerdict {
    /// A clique path tree (a forest for disconnected input).
    Tree(CliqueTree),
    /// No clique path tree exists. `hole` is set when one was found; holes are
    /// only searched for within the vertex budget.
    NoTree {
        hole: Option<Vec<usize>>,
    },
    OverBudget {
        cliques: usize,
        vertices: usize,
    },
}

impl CptVerdict {
    pub fn is_tree(&self) -> bool {
        matches!(self, CptVerdict::Tree(_))
    }

    pub fn is_none(&self) -> bool {
        matches!(self, CptVerdict::NoTree { .. })
    }
}

fn masks(g: &Graph) -> Vec<u64> {
    assert!(g.order() <= 64, "oracle works on at most 64 vertices");
    (0..g.order()).map(|v| g.neighbors(v).iter().fold(0u64, |m, w| m | 1 << w)).collect()
}

fn reach(adj: &[u64], start: usize, within: u64) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

fn mask_components(adj: &[u64], within: u64) -> Vec<u64> {
    let mut rest = within;
    let mut out = Vec::new();
    while rest != 0 {
        let c = reach(adj, rest.trailing_zeros() as usize, within);
        out.push(c);
        rest &= !c;
    }
    out
}

/// Maximal cliques of `G[within]` by Bron–Kerbosch with pivoting.
fn bron_kerbosch(adj: &[u64], within: u64) -> Vec<u64> {
    fn go(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 {
            if x == 0 {
                out.push(r);
            }
            return;
        }
        let pivot = (p | x).trailing_zeros() as usize;
        let mut cand = p & !adj[pivot];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            go(adj, r | 1 << v, p & adj[v], x & adj[v], out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let mut out = Vec::new();
    go(adj, 0, within, 0, &mut out);
    out.sort_unstable_by_key(|&c| bits(c));
    out
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Edges of the labeled tree with Prüfer sequence `seq` on `q` nodes.
fn prufer_edges(seq: &[usize], q: usize, edges: &mut Vec<(usize, usize)>) {
    edges.clear();
    let mut degree = [1u8; 64];
    for &s in seq {
        degree[s] += 1;
    }
    for &s in seq {
        let leaf = (0..q).find(|&i| degree[i] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] = 0;
        degree[s] -= 1;
    }
    let mut last = (0..q).filter(|&i| degree[i] == 1);
    let a = last.next().expect("two nodes remain");
    let b = last.next().expect("two nodes remain");
    edges.push((a, b));
}

/// Does the tree on `cliques` given by `edges` make every vertex's node set a path?
fn is_path_tree(cliques: &[u64], members: &[u64], edges: &[(usize, usize)]) -> bool {
    if edges.iter().any(|&(i, j)| cliques[i] & cliques[j] == 0) {
        return false;
    }
    for &m in members {
        let mut inner = 0u32;
        let mut degree = [0u8; 64];
        for &(i, j) in edges {
            if m >> i & 1 == 1 && m >> j & 1 == 1 {
                inner += 1;
                degree[i] += 1;
                degree[j] += 1;
                if degree[i] > 2 || degree[j] > 2 {
                    return false;
                }
            }
        }
        if inner + 1 != m.count_ones() {
            return false;
        }
    }
    true
}

/// First clique path tree of one connected chordal component, by Prüfer order.
fn component_tree(comp: u64, cliques: &[u64]) -> Option<Vec<(usize, usize)>> {
    let q = cliques.len();
    if q == 1 {
        return Some(Vec::new());
    }
    if q == 2 {
        return (cliques[0] & cliques[1] != 0).then(|| vec![(0, 1)]);
    }
    let members: Vec<u64> = bits(comp)
        .into_iter()
        .map(|v| (0..q).filter(|&i| cliques[i] >> v & 1 == 1).fold(0u64, |m, i| m | 1 << i))
        .collect();
    let len = q - 2;
    let total = (q as u64).pow(len as u32);
    (0..total).into_par_iter().find_map_first(|mut code| {
        let mut seq = [0usize; 64];
        for slot in seq[..len].iter_mut().rev() {
            *slot = (code % q as u64) as usize;
            code /= q as u64;
        }
        let mut edges = Vec::with_capacity(q - 1);
        prufer_edges(&seq[..len], q, &mut edges);
        is_path_tree(cliques, &members, &edges).then_some(edges)
    })
}

/// Exhaustive clique-path-tree search.
///
/// Within the vertex budget a hole is searched for first, so non-chordal
/// input yields [`CptVerdict::NoTree`] with the hole attached.
pub fn cpt_exists_bruteforce(g: &Graph, budget: OracleBudget) -> CptVerdict {
    let n = g.order();
    if n > 64 {
        return CptVerdict::OverBudget { cliques: 0, vertices: n };
    }
    let adj = masks(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let comps = mask_components(&adj, all);
    let per_comp: Vec<Vec<u64>> = comps.iter().map(|&c| bron_kerbosch(&adj, c)).collect();
    if n <= budget.max_vertices {
        if let Some(hole) = hole_search_bruteforce(g) {
            return CptVerdict::NoTree { hole: Some(hole) };
        }
    }
    let most = per_comp.iter().map(Vec::len).max().unwrap_or(0);
    if most > budget.max_cliques {
        return CptVerdict::OverBudget { cliques: most, vertices: n };
    }
    let mut tree = CliqueTree { cliques: Vec::new(), edges: Vec::new() };
    let mut failed = false;
    for cliques in &per_comp {
        let comp = cliques.iter().fold(0, |m, c| m | c);
        match component_tree(comp, cliques) {
            Some(edges) => {
                let base = tree.cliques.len();
                tree.cliques.extend(cliques.iter().map(|&c| VertexSet::from_slice(n, &bits(c))));
                tree.edges.extend(edges.into_iter().map(|(i, j)| (base + i.min(j), base + i.max(j))));
            }
            None => failed = true,
        }
    }
    if failed {
        CptVerdict::NoTree { hole: None }
    } else {
        CptVerdict::Tree(tree)
    }
}

/// Smallest hole by length, then lexicographically smallest as a sequence
/// that starts at its least vertex and has its second vertex below its last.
pub fn hole_search_bruteforce(g: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    let adj = masks(g);
    for k in 4..=n {
        for s in 0..n {
            let mut path = vec![s];
            if extend_hole(&adj, k, 1u64 << s, &mut path) {
                return Some(path);
            }
        }
    }
    None
}

fn extend_hole(adj: &[u64], k: usize, used: u64, path: &mut Vec<usize>) -> bool {
    let s = path[0];
    let last = *path.last().expect("non-empty");
    let closing = path.len() == k - 1;
    // Vertices adjacent to some path vertex other than the last (and the start,
    // which only the closing vertex may touch) would create a chord.
    let interior = match path.len() {
        1 => 0,
        len => path[1..len - 1].iter().fold(0u64, |m, &v| m | adj[v]),
    };
    let mut cand = adj[last] & !used & !interior & !((1u64 << (s + 1)) - 1);
    while cand != 0 {
        let w = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let touches_start = adj[w] >> s & 1 == 1;
        if path.len() >= 2 && touches_start != closing {
            continue;
        }
        if closing && w < path[1] {
            continue;
        }
        path.push(w);
        if closing || extend_hole(adj, k, used | 1 << w, path) {
            return true;
        }
        path.pop();
    }
    false
}

/// All minimal `{u, v}`-separators over non-adjacent pairs in a common
/// component, by subset enumeration. Each member records the first pair (in
/// lexicographic order) it separates minimally.
pub fn pairwise_minimal_separators_bruteforce(g: &Graph) -> SeparatorSet {
    let n = g.order();
    let adj = masks(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let separates = |s: u64, u: usize, v: usize| reach(&adj, u, all & !s) >> v & 1 == 0;
    let mut found: Vec<(u64, (usize, usize))> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if adj[u] >> v & 1 == 1 || !reach(&adj, u, all) >> v & 1 == 1 {
                continue;
            }
            let rest = bits(all & !(1 << u) & !(1 << v));
            for code in 0u64..1 << rest.len() {
                let s = bits(code).iter().fold(0u64, |m, &i| m | 1 << rest[i]);
                if !separates(s, u, v) || bits(s).iter().any(|&x| separates(s & !(1 << x), u, v)) {
                    continue;
                }
                if !found.iter().any(|&(t, _)| t == s) {
                    found.push((s, (u, v)));
                }
            }
        }
    }
    let mut members: Vec<Separator> =
        found.into_iter().map(|(s, witness)| Separator { set: VertexSet::from_slice(n, &bits(s)), witness }).collect();
    members.sort_by(|a, b| a.set.cmp(&b.set));
    SeparatorSet { members }
}

/// Maximal cliques by Bron–Kerbosch, sorted lexicographically.
pub fn maximal_cliques_bruteforce(g: &Graph) -> Vec<VertexSet> {
    let n = g.order();
    let adj = masks(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out: Vec<VertexSet> =
        bron_kerbosch(&adj, all).into_iter().map(|c| VertexSet::from_slice(n, &bits(c))).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_graph() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)])
    }

    #[test]
    fn h_has_a_path_tree() {
        let g = h_graph();
        match cpt_exists_bruteforce(&g, OracleBudget::default()) {
            CptVerdict::Tree(t) => {
                assert_eq!(t.len(), 3);
                assert!(t.is_clique_path_tree(&g));
            }
            other => panic!("expected a tree, got {other:?}"),
        }
    }

    #[test]
    fn clique_is_one_node() {
        match cpt_exists_bruteforce(&Graph::complete(5), OracleBudget::default()) {
            CptVerdict::Tree(t) => assert_eq!((t.len(), t.edges.len()), (1, 0)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cycle_reports_hole() {
        assert_eq!(
            cpt_exists_bruteforce(&Graph::cycle(5), OracleBudget::default()),
            CptVerdict::NoTree { hole: Some(vec![0, 1, 2, 3, 4]) }
        );
    }

    #[test]
    fn holes() {
        assert_eq!(hole_search_bruteforce(&Graph::cycle(4)), Some(vec![0, 1, 2, 3]));
        assert_eq!(hole_search_bruteforce(&h_graph()), None);
        let mut g = Graph::cycle(6);
        g.add_edge(0, 3);
        assert_eq!(hole_search_bruteforce(&g), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn separators() {
        let g = h_graph();
        assert_eq!(pairwise_minimal_separators_bruteforce(&g).sets(), vec![g.set_of(&[1]), g.set_of(&[3])]);
        assert!(pairwise_minimal_separators_bruteforce(&Graph::complete(4)).is_empty());
        let c4 = Graph::cycle(4);
        assert_eq!(pairwise_minimal_separators_bruteforce(&c4).sets(), vec![c4.set_of(&[0, 2]), c4.set_of(&[1, 3])]);
    }

    #[test]
    fn budget_is_reported() {
        let star = Graph::from_edges(10, &(1..10).map(|v| (0, v)).collect::<Vec<_>>());
        assert_eq!(
            cpt_exists_bruteforce(&star, OracleBudget::default()),
            CptVerdict::OverBudget { cliques: 9, vertices: 10 }
        );
    }

    #[test]
    fn disconnected_gives_forest() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4)]);
        match cpt_exists_bruteforce(&g, OracleBudget::default()) {
            CptVerdict::Tree(t) => assert_eq!((t.len(), t.edges.len()), (3, 1)),
            other => panic!("{other:?}"),
        }
    }
}
