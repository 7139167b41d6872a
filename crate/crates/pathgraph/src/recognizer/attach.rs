//! A special simplicial vertex that is not co-special: attach it to a tree of
//! the graph without it.

use std::collections::VecDeque;

use super::tree_ops::{degree, farthest_meeting, reach, smallest_containing, vertices_of, TreeBuilder};
use super::{pick, pick_common, set_from, InternalError, Outcome, Recognizer, Res};
use crate::chordal::CliqueTree;
use crate::graph::VertexSet;
use crate::simplicial::SimplicialProfile;

/// A subtree of `T0` hanging off `T′` through the edge `anchor`-`root`.
struct Hanging {
    root: usize,
    anchor: usize,
    s: VertexSet,
    v: usize,
}

/// Everything the extractions need to know about the attachment.
struct Attachment<'a> {
    scope: &'a VertexSet,
    q: usize,
    big_q: &'a VertexSet,
    s_q: &'a VertexSet,
    t0: &'a CliqueTree,
    q_prime: usize,
    in_tp: &'a [bool],
    hanging: &'a [Hanging],
}

impl Recognizer<'_> {
    pub(super) fn handle_non_cospecial(&mut self, w: &VertexSet, p: &SimplicialProfile) -> Res {
        let g = self.g;
        let (q, big_q, s_q) = (p.vertex, &p.q_v, &p.s_v);
        let t0 = match self.subtree_or_cert(&w.without(q))? {
            Ok(t) => t,
            Err(c) => return Ok(Outcome::Cert(c)),
        };
        if let Some(i) = t0.index_of(&big_q.without(q)) {
            let mut t = t0;
            t.cliques[i] = big_q.clone();
            return Ok(Outcome::Tree(t));
        }
        let q_prime = smallest_containing(&t0, s_q)
            .ok_or_else(|| self.internal("attachment", format!("no clique of T0 contains S_q = {s_q:?}")))?;
        let in_tp = reach(&t0, q_prime, |a, b| !t0.cliques[a].intersection(&t0.cliques[b]).is_subset(s_q));
        if in_tp.iter().all(|&x| x) {
            return Err(self.internal("attachment", format!("T′ is all of T0 for q = {q} in {w:?}")));
        }
        let sub = vertices_of(&t0, &in_tp, g.order()).union(big_q);
        let t = match self.subtree_or_cert(&sub)? {
            Ok(t) => t,
            Err(c) => return Ok(Outcome::Cert(c)),
        };
        let leaf = t.index_of(big_q).filter(|&i| degree(&t, i) == 1).ok_or_else(|| {
            self.internal("attachment", format!("Q = {big_q:?} is not a leaf of the tree of {sub:?}"))
        })?;

        let mut hanging = Vec::new();
        for &(a, b) in &t0.edges {
            if in_tp[a] != in_tp[b] {
                let (anchor, root) = if in_tp[a] { (a, b) } else { (b, a) };
                let s = t0.cliques[root].intersection(&t0.cliques[anchor]);
                let v = pick(&t0.cliques[root], &t0.cliques[anchor]).expect("distinct maximal cliques");
                hanging.push(Hanging { root, anchor, s, v });
            }
        }
        let n = hanging.len();
        let h: Vec<Vec<usize>> =
            (0..n).map(|i| (0..n).filter(|&j| j != i && hanging[i].s.intersects(&hanging[j].s)).collect()).collect();
        let tp_labels: Vec<VertexSet> = t0
            .edges
            .iter()
            .filter(|&&(a, b)| in_tp[a] && in_tp[b])
            .map(|&(a, b)| t0.cliques[a].intersection(&t0.cliques[b]))
            .collect();
        let in_x: Vec<bool> =
            hanging.iter().map(|hi| tp_labels.iter().any(|r| r.intersects(&hi.s) && !hi.s.is_subset(r))).collect();

        let ctx = Attachment { scope: w, q, big_q, s_q, t0: &t0, q_prime, in_tp: &in_tp, hanging: &hanging };
        if let Some(cycle) = shortest_odd_cycle(&h) {
            return self.extract_odd_cycle(&ctx, &cycle).map(Outcome::Cert);
        }
        let side_b = two_colour(&h, &in_x);
        if let Some(path) = shortest_odd_x_path(&h, &side_b, &in_x) {
            return self.extract_odd_x_path(&ctx, &path).map(Outcome::Cert);
        }

        let mut out = TreeBuilder::default();
        out.add_tree(&t);
        for (i, hi) in hanging.iter().enumerate() {
            let part = reach(&t0, hi.root, |a, b| (a, b) != (hi.root, hi.anchor) && (a, b) != (hi.anchor, hi.root));
            out.add_part(&t0, &part);
            let target = if side_b[i] {
                farthest_meeting(&t, leaf, &hi.s)
                    .ok_or_else(|| self.internal("attachment", format!("no clique meets S_{i} = {:?}", hi.s)))?
            } else {
                leaf
            };
            if !out.connect(&t.cliques[target], &t0.cliques[hi.root]) {
                return Err(self.internal("attachment", "lost a node while assembling".into()));
            }
        }
        Ok(Outcome::Tree(out.finish()))
    }

    /// 𝓗 has an odd cycle: some `F11`, `F12`, `F2` or `F14` around `q`, `q′`.
    fn extract_odd_cycle(&mut self, a: &Attachment, cycle: &[usize]) -> Result<super::Certificate, InternalError> {
        let g = self.g;
        let p = cycle.len();
        let q_prime_v = pick(&a.t0.cliques[a.q_prime], a.big_q)
            .ok_or_else(|| self.internal("odd cycle", "Q′ is inside Q".into()))?;
        let mut s = Vec::with_capacity(p);
        for j in 0..p {
            let meet = a.hanging[cycle[j]].s.intersection(&a.hanging[cycle[(j + 1) % p]].s);
            let chosen = meet.iter().find(|x| !s.contains(x)).or_else(|| meet.first());
            s.push(chosen.ok_or_else(|| self.internal("odd cycle", "consecutive S_i are disjoint".into()))?);
        }
        let v: Vec<usize> = cycle.iter().map(|&i| a.hanging[i].v).collect();
        let mut candidates = vec![set_from(g, &[&[a.q, q_prime_v], &v, &s])];
        let hits: Vec<usize> = (0..p).filter(|&j| g.has_edge(q_prime_v, v[j])).collect();
        if let [j, k] = hits[..] {
            if k == j + 1 || (j == 0 && k == p - 1) {
                // Consecutive v_j, v_{j+1}, with s_j between them.
                let (j, k) = if k == j + 1 { (j, k) } else { (k, j) };
                let prev = (j + p - 1) % p;
                candidates.push(set_from(g, &[&[a.q, q_prime_v, v[j], v[k], s[prev], s[j], s[k]]]));
            }
            for (from, len) in [(j, k - j), (k, p - (k - j))] {
                let vs: Vec<usize> = (0..=len).map(|i| v[(from + i) % p]).collect();
                let ss: Vec<usize> = (0..len).map(|i| s[(from + i) % p]).collect();
                candidates.push(set_from(g, &[&[a.q, q_prime_v], &vs, &ss]));
            }
        }
        let hull = candidates[0].clone();
        self.certify(&candidates, &hull, a.scope, "odd cycle")
    }

    /// 𝓗 has an odd path between two members of `X`.
    fn extract_odd_x_path(&mut self, a: &Attachment, path: &[usize]) -> Result<super::Certificate, InternalError> {
        let g = self.g;
        let t0 = a.t0;
        let p = path.len();
        let (first, last) = (&a.hanging[path[0]], &a.hanging[path[p - 1]]);
        let mut mids = Vec::new();
        for j in 0..p - 1 {
            let meet = a.hanging[path[j]].s.intersection(&a.hanging[path[j + 1]].s);
            let chosen = meet.iter().find(|x| !mids.contains(x)).or_else(|| meet.first());
            mids.push(chosen.ok_or_else(|| self.internal("odd X path", "consecutive S_i are disjoint".into()))?);
        }
        let vs: Vec<usize> = path.iter().map(|&i| a.hanging[i].v).collect();
        let tree_path = t0
            .path(first.anchor, last.anchor)
            .ok_or_else(|| self.internal("odd X path", "anchors are not connected in T0".into()))?;
        let adj = t0.adjacency();
        // (L, K, R) for one end: the node of the tree path closest to that
        // end with an incident T′ edge whose label is in R_i.
        let end = |s_i: &VertexSet, order: Vec<usize>| -> Option<(usize, usize, VertexSet)> {
            order.into_iter().find_map(|l| {
                let mut ks: Vec<usize> = adj[l]
                    .iter()
                    .copied()
                    .filter(|&k| a.in_tp[k])
                    .filter(|&k| {
                        let r = t0.cliques[l].intersection(&t0.cliques[k]);
                        r.intersects(s_i) && !s_i.is_subset(&r)
                    })
                    .collect();
                ks.sort_by_key(|k| (!tree_path.contains(k), *k));
                ks.first().map(|&k| (l, k, t0.cliques[l].intersection(&t0.cliques[k])))
            })
        };
        let (l1, k1, r1) = end(&first.s, tree_path.clone())
            .ok_or_else(|| self.internal("odd X path", "first end has empty R".into()))?;
        let (lp, kp, rp) = end(&last.s, tree_path.iter().rev().copied().collect())
            .ok_or_else(|| self.internal("odd X path", "last end has empty R".into()))?;
        let missing = || self.internal("odd X path", "a required vertex does not exist".into());
        let v0 = pick(&t0.cliques[k1], &t0.cliques[l1]).ok_or_else(missing)?;
        let vp1 = pick(&t0.cliques[kp], &t0.cliques[lp]).ok_or_else(missing)?;
        let s0 = pick_common(&first.s, &r1).ok_or_else(missing)?;
        let sp = pick_common(&last.s, &rp).ok_or_else(missing)?;
        let s0x = pick(&first.s, &r1).ok_or_else(missing)?;
        let spx = pick(&last.s, &rp).ok_or_else(missing)?;

        let mut candidates = Vec::new();
        let mut hull = set_from(g, &[&[a.q, v0, vp1, s0, sp, s0x, spx], &vs, &mids]);
        if k1 == kp {
            let y = pick(&r1, a.s_q).ok_or_else(missing)?;
            candidates.push(set_from(g, &[&[a.q, y, v0, s0, sp], &vs, &mids]));
            hull.insert(y);
        } else {
            let k_path = t0.path(k1, kp).ok_or_else(missing)?;
            let mut allowed = g.empty_set();
            for w in k_path.windows(2) {
                allowed.union_with(&t0.cliques[w[0]].intersection(&t0.cliques[w[1]]));
            }
            allowed.difference_with(a.s_q);
            allowed.insert(v0);
            allowed.insert(vp1);
            let xs = g.shortest_path_in(v0, vp1, &allowed).ok_or_else(missing)?;
            let xs = &xs[1..xs.len() - 1];
            let all_s: Vec<usize> = std::iter::once(s0).chain(mids.iter().copied()).chain([sp]).collect();
            let all_v: Vec<usize> = std::iter::once(v0).chain(vs.iter().copied()).chain([vp1]).collect();
            let x1 = xs.first().copied();
            let x12: Vec<usize> = xs.iter().take(2).copied().collect();
            if let Some(x1) = x1 {
                // Both K outside the tree path.
                candidates.push(set_from(g, &[&[a.q, x1], &all_v, &all_s]));
                candidates.push(set_from(g, &[&[a.q], &x12, &all_v, &all_s]));
                // One K on the path.
                let left: Vec<usize> = std::iter::once(s0x).chain(mids.iter().copied()).chain([sp]).collect();
                let right: Vec<usize> = std::iter::once(s0).chain(mids.iter().copied()).chain([spx]).collect();
                candidates.push(set_from(g, &[&[a.q, x1], &all_v, &left]));
                candidates.push(set_from(g, &[&[a.q, x1], &all_v, &right]));
                // Both K on the path.
                if let Some(&s1) = mids.first() {
                    candidates.push(set_from(g, &[&[a.q, v0, vp1, s0x, s1, spx, x1]]));
                    candidates.push(set_from(g, &[&[a.q, v0, vp1, s0x, s1, spx], &x12]));
                }
            }
            candidates.push(set_from(g, &[&[a.q, v0, vp1, s0, sp], xs]));
            candidates.push(set_from(g, &[&[a.q, v0, vp1, s0x, sp], xs]));
            candidates.push(set_from(g, &[&[a.q, v0, vp1, s0, spx], xs]));
            candidates.push(set_from(g, &[&[a.q, v0, vp1, s0x, spx], xs]));
            xs.iter().for_each(|&x| hull.insert(x));
        }
        self.certify(&candidates, &hull, a.scope, "odd X path")
    }
}

/// Shortest odd cycle, found by BFS in the bipartite double cover.
fn shortest_odd_cycle(h: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = h.len();
    let mut best: Option<Vec<usize>> = None;
    for r in 0..n {
        let mut parent = vec![[usize::MAX; 2]; n];
        let mut seen = vec![[false; 2]; n];
        seen[r][0] = true;
        let mut queue = VecDeque::from([(r, 0usize)]);
        while let Some((u, par)) = queue.pop_front() {
            if (u, par) == (r, 1) {
                break;
            }
            for &w in &h[u] {
                let np = 1 - par;
                if !seen[w][np] {
                    seen[w][np] = true;
                    parent[w][np] = u;
                    queue.push_back((w, np));
                }
            }
        }
        if !seen[r][1] {
            continue;
        }
        let mut walk = Vec::new();
        let (mut cur, mut par) = (r, 1);
        while !(cur == r && par == 0) {
            walk.push(cur);
            cur = parent[cur][par];
            par = 1 - par;
        }
        walk.reverse();
        if best.as_ref().is_none_or(|b| walk.len() < b.len()) {
            best = Some(walk);
        }
    }
    best
}

/// Colours of a bipartite `h` (true = side B), each component started from
/// its first `X` member so that `X` lands on side A where possible.
fn two_colour(h: &[Vec<usize>], in_x: &[bool]) -> Vec<bool> {
    let n = h.len();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let starts = (0..n).filter(|&i| in_x[i]).chain((0..n).filter(|&i| !in_x[i]));
    for s in starts.collect::<Vec<_>>() {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &h[u] {
                if colour[w].is_none() {
                    colour[w] = Some(!colour[u].expect("coloured"));
                    queue.push_back(w);
                }
            }
        }
    }
    colour.into_iter().map(|c| c.expect("all coloured")).collect()
}

/// Shortest path between two `X` members on opposite sides.
fn shortest_odd_x_path(h: &[Vec<usize>], side_b: &[bool], in_x: &[bool]) -> Option<Vec<usize>> {
    let n = h.len();
    let mut best: Option<Vec<usize>> = None;
    for a in (0..n).filter(|&i| in_x[i]) {
        let mut parent = vec![usize::MAX; n];
        parent[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            for &w in &h[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        for b in (a + 1..n).filter(|&b| in_x[b] && side_b[b] != side_b[a] && parent[b] != usize::MAX) {
            let mut path = vec![b];
            while *path.last().expect("nonempty") != a {
                path.push(parent[*path.last().expect("nonempty")]);
            }
            path.reverse();
            if best.as_ref().is_none_or(|p| path.len() < p.len()) {
                best = Some(path);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_cycle_in_triangle_with_tail() {
        let h = vec![vec![1, 2], vec![0, 2], vec![0, 1, 3], vec![2]];
        assert_eq!(shortest_odd_cycle(&h).map(|c| c.len()), Some(3));
        let path = vec![vec![1], vec![0, 2], vec![1]];
        assert_eq!(shortest_odd_cycle(&path), None);
    }

    #[test]
    fn x_members_start_on_side_a() {
        let h = vec![vec![1], vec![0, 2], vec![1, 3], vec![2]];
        let side = two_colour(&h, &[false, true, false, false]);
        assert!(!side[1] && side[0] && side[2]);
        assert_eq!(shortest_odd_x_path(&h, &side, &[false, true, false, false]), None);
        let in_x = [true, false, false, true];
        let side = two_colour(&h, &in_x);
        assert_eq!(shortest_odd_x_path(&h, &side, &in_x), Some(vec![0, 1, 2, 3]));
    }
}
