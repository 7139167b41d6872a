//! Backtracking isomorphism for small graphs.

use super::Graph;

/// Find `phi` with `g.has_edge(u, v) == h.has_edge(phi[u], phi[v])` for all pairs.
///
/// Candidates are pruned by degree and by the sorted multiset of neighbor
/// degrees; vertices of `g` are matched in BFS order so each new vertex is
/// usually constrained by an already matched neighbor.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    if n != h.order() || g.edge_count() != h.edge_count() {
        return None;
    }
    let sig_g: Vec<_> = (0..n).map(|v| signature(g, v)).collect();
    let sig_h: Vec<_> = (0..n).map(|v| signature(h, v)).collect();
    let mut sorted_g = sig_g.clone();
    let mut sorted_h = sig_h.clone();
    sorted_g.sort();
    sorted_h.sort();
    if sorted_g != sorted_h {
        return None;
    }

    let order = matching_order(g);
    let candidates: Vec<Vec<usize>> = (0..n).map(|v| (0..n).filter(|&w| sig_h[w] == sig_g[v]).collect()).collect();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, h, &order, 0, &candidates, &mut phi, &mut used) {
        Some(phi)
    } else {
        None
    }
}

fn signature(g: &Graph, v: usize) -> (usize, Vec<usize>) {
    let mut nd: Vec<usize> = g.neighbors(v).iter().map(|w| g.degree(w)).collect();
    nd.sort_unstable();
    (g.degree(v), nd)
}

fn matching_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        // Start each component at its highest-degree vertex.
        let root = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex");
        placed[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let u = order[head];
            head += 1;
            for w in g.neighbors(u).iter() {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

fn extend(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    depth: usize,
    candidates: &[Vec<usize>],
    phi: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for &w in &candidates[v] {
        if used[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| g.has_edge(u, v) == h.has_edge(phi[u], w));
        if !consistent {
            continue;
        }
        phi[v] = w;
        used[w] = true;
        if extend(g, h, order, depth + 1, candidates, phi, used) {
            return true;
        }
        used[w] = false;
        phi[v] = usize::MAX;
    }
    false
}
