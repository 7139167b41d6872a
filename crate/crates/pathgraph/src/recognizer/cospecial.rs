//! A special simplicial vertex that is also co-special: glue `Q` onto a tree
//! of the other cliques, repairing the tree around the cliques that share
//! `S_Q`.

use super::tree_ops::{degree, farthest_meeting, reach, smallest_containing, vertices_of, TreeBuilder};
use super::{pick, pick_common, set_from, Certificate, InternalError, Outcome, Recognizer, Res};
use crate::chordal::{bfs_parents, CliqueTree};
use crate::graph::VertexSet;
use crate::simplicial::SimplicialProfile;

/// Per-clique data for every node `L ≠ Q′` of `T0`.
#[derive(Clone)]
struct LInfo {
    s_l: VertexSet,
    bar: usize,
    in_family: bool,
    /// `T_L` as flags over the nodes of `T0′`.
    t_l: Vec<bool>,
    size: usize,
}

/// First member of `s` outside every set in `avoid`, else the first member.
fn prefer(s: &VertexSet, avoid: &[&VertexSet]) -> Option<usize> {
    s.iter().find(|&v| avoid.iter().all(|a| !a.contains(v))).or_else(|| s.first())
}

/// Data fixed once `T0′` is known.
#[derive(Clone, Copy)]
struct Base<'a> {
    scope: &'a VertexSet,
    q: usize,
    big_q: &'a VertexSet,
    s_big: &'a VertexSet,
    /// `T0` plus `Q` as node `qn`, joined to `Q′`.
    t0p: &'a CliqueTree,
    qp: usize,
    qn: usize,
    par: &'a [usize],
}

/// Data for the chosen clique `L`.
struct Ctx<'a> {
    base: Base<'a>,
    s_q_vertex: usize,
    l: usize,
    s_l: &'a VertexSet,
    /// Tree of the vertices of `T_L′` and the index of `L` in it.
    t: &'a CliqueTree,
    l_in_t: usize,
    /// Whether a missing child of `W` may restart the analysis from `W`.
    allow_swap: bool,
}

impl<'a> std::ops::Deref for Ctx<'a> {
    type Target = Base<'a>;
    fn deref(&self) -> &Base<'a> {
        &self.base
    }
}

impl Ctx<'_> {
    fn label(&self, a: usize, b: usize) -> VertexSet {
        self.t0p.cliques[a].intersection(&self.t0p.cliques[b])
    }

    fn s_of(&self, m: usize) -> VertexSet {
        self.label(m, self.par[m])
    }

    fn clique(&self, m: usize) -> &VertexSet {
        &self.t0p.cliques[m]
    }

    fn u_i(&self, m: usize) -> Option<usize> {
        pick(self.clique(m), &self.s_of(m))
    }
}

/// `V_0, U_1, V_1, ..., U_p` ending at `u_p`, consecutive members intersecting.
fn chain(ctx: &Ctx, us: &[Vec<usize>], vs: &[Vec<usize>], p: usize, u_p: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut u_chain = vec![u_p];
    let mut v_chain = Vec::new();
    for i in (1..=p).rev() {
        let u_i = *u_chain.last()?;
        let v = *vs[i - 1].iter().find(|&&v| ctx.clique(v).intersects(ctx.clique(u_i)))?;
        v_chain.push(v);
        if i > 1 {
            let u = *us[i - 1].iter().find(|&&u| ctx.clique(u).intersects(ctx.clique(v)))?;
            u_chain.push(u);
        }
    }
    u_chain.reverse();
    v_chain.reverse();
    Some((u_chain, v_chain))
}

/// `x_1 ∈ V_0 ∩ U_1, x_2 ∈ U_1 ∩ V_1, ...` along a chain.
fn chain_xs(ctx: &Ctx, u_chain: &[usize], v_chain: &[usize]) -> Option<Vec<usize>> {
    let mut xs = Vec::new();
    for i in 0..u_chain.len() {
        xs.push(pick_common(ctx.clique(v_chain[i]), ctx.clique(u_chain[i]))?);
        if i + 1 < v_chain.len() {
            xs.push(pick_common(ctx.clique(u_chain[i]), ctx.clique(v_chain[i + 1]))?);
        }
    }
    Some(xs)
}

impl Recognizer<'_> {
    pub(super) fn handle_cospecial(&mut self, w: &VertexSet, p: &SimplicialProfile) -> Res {
        let (q, big_q, s_big) = (p.vertex, &p.q_v, &p.s_v);
        let w0 = w.difference(&big_q.difference(s_big));
        let t0 = match self.subtree_or_cert(&w0)? {
            Ok(t) => t,
            Err(c) => return Ok(Outcome::Cert(c)),
        };
        let qp = smallest_containing(&t0, s_big)
            .ok_or_else(|| self.internal("co-special", format!("no clique of T0 contains S_Q = {s_big:?}")))?;
        let m = t0.len();
        let qn = m;
        let mut t0p = t0.clone();
        t0p.cliques.push(big_q.clone());
        t0p.edges.push((qp, qn));
        let adj = t0.adjacency();
        let a_set: Vec<usize> =
            s_big.iter().filter(|&a| adj[qp].iter().filter(|&&n| t0.cliques[n].contains(a)).count() == 2).collect();
        if a_set.is_empty() {
            return Ok(Outcome::Tree(t0p));
        }
        let par = bfs_parents(&adj, qp);
        let label = |a: usize, b: usize| t0.cliques[a].intersection(&t0.cliques[b]);

        let mut info: Vec<Option<LInfo>> = vec![None; m];
        for l in (0..m).filter(|&l| l != qp) {
            let s_l = label(l, par[l]);
            let (mut bar, mut cur) = (l, l);
            while cur != qp {
                if label(cur, par[cur]).is_subset(&s_l) {
                    bar = cur;
                }
                cur = par[cur];
            }
            let s_bar = label(bar, par[bar]);
            let in_family = adj[l].iter().all(|&n| {
                let r = label(l, n);
                r == s_l || !s_bar.is_subset(&r)
            });
            let t_l = reach(&t0p, qp, |a, b| !t0p.cliques[a].intersection(&t0p.cliques[b]).is_subset(&s_l));
            let size = t_l.iter().filter(|&&x| x).count();
            if !t_l[qn] {
                return self.claim_failed(w, "T_L misses Q");
            }
            info[l] = Some(LInfo { s_l, bar, in_family, t_l, size });
        }

        // Every L in 𝓛 has L′ in T_L.
        for l in (0..m).filter(|&l| l != qp) {
            let li = info[l].as_ref().expect("set above");
            if li.in_family && !li.t_l[par[l]] {
                return self.rebuild_around_bar(w, &t0p, &par, l, li.bar);
            }
        }

        let star = |l: usize| info[l].as_ref().is_some_and(|i| i.in_family && i.size < t0p.len() - 1);
        for &a in &a_set {
            let nodes = t0.nodes_containing(a);
            let leaves: Vec<usize> = nodes
                .iter()
                .copied()
                .filter(|&n| adj[n].iter().filter(|&&k| t0.cliques[k].contains(a)).count() <= 1)
                .collect();
            let [l1, l2] = leaves[..] else { return self.claim_failed(w, "T0^a is not a path") };
            let fam = |l: usize| info[l].as_ref().is_some_and(|i| i.in_family);
            if !fam(l1) || !fam(l2) {
                return self.claim_failed(w, "leaf of T0^a outside the family");
            }
            if !star(l1) && !star(l2) {
                let lv = |l: usize| pick(&t0.cliques[l], &info[l].as_ref().expect("set").s_l);
                let (Some(v1), Some(v2)) = (lv(l1), lv(l2)) else {
                    return self.claim_failed(w, "leaf clique equals its label");
                };
                return self.at_extraction(w, a, (q, v1, v2), "neither leaf strict").map(Outcome::Cert);
            }
        }

        // Largest T_L first; among ties, a choice that hits an inconsistency
        // (possible when the far end of T is Q itself) gives way to the next.
        let size = |l: usize| info[l].as_ref().expect("set").size;
        let Some(best) = (0..m).filter(|&l| star(l)).map(size).max() else {
            return self.claim_failed(w, "no strict family member");
        };
        let base = Base { scope: w, q, big_q, s_big, t0p: &t0p, qp, qn, par: &par };
        let mut first_err = None;
        for l in (0..m).filter(|&l| star(l) && size(l) == best) {
            match self.with_chosen_l(base, l, true) {
                Ok(out) => return Ok(out),
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        Err(first_err.expect("at least one candidate"))
    }

    /// Recurse on `T_L′` and run the layer analysis around `L`.
    fn with_chosen_l(&mut self, base: Base, l: usize, allow_swap: bool) -> Res {
        let g = self.g;
        let t0p = base.t0p;
        let label = |a: usize, b: usize| t0p.cliques[a].intersection(&t0p.cliques[b]);
        let s_l = label(l, base.par[l]);
        let to_qp = t0p.path(l, base.qp).expect("connected");
        let s_qprime = label(to_qp[to_qp.len() - 2], base.qp);
        let Some(s_q_vertex) = pick(base.s_big, &s_qprime) else {
            return self.claim_failed(base.scope, "S_Q inside the label at Q′");
        };
        let mut tlp = reach(t0p, base.qp, |a, b| !label(a, b).is_subset(&s_l));
        tlp[l] = true;
        let w_l = vertices_of(t0p, &tlp, g.order());
        let t = match self.subtree_or_cert(&w_l)? {
            Ok(t) => t,
            Err(c) => return Ok(Outcome::Cert(c)),
        };
        let Some(l_in_t) = t.index_of(&t0p.cliques[l]).filter(|&i| degree(&t, i) == 1) else {
            return self.claim_failed(base.scope, "L is not a leaf");
        };
        let ctx = Ctx { base, s_q_vertex, l, s_l: &s_l, t: &t, l_in_t, allow_swap };
        self.layers(&ctx, &tlp)
    }

    /// Any failed claim without a dedicated extraction: shrink the whole subproblem.
    fn claim_failed(&mut self, w: &VertexSet, context: &'static str) -> Res {
        self.certify(&[], w, w, context).map(Outcome::Cert)
    }

    /// `L′` fell outside `T_L`: move the segment between `L` and `L̄` next to `L`.
    fn rebuild_around_bar(&mut self, w: &VertexSet, t0p: &CliqueTree, par: &[usize], l: usize, bar: usize) -> Res {
        let g = self.g;
        let (lp, barp) = (par[l], par[bar]);
        if bar == l {
            return self.claim_failed(w, "L′ outside T_L with L̄ = L");
        }
        let cut = [(l, lp), (bar, barp)];
        let t1 = t0p.reachable_without(l, &cut);
        let t2 = t0p.reachable_without(lp, &cut);
        let t3 = t0p.reachable_without(barp, &cut);
        let keep: Vec<bool> = t1.iter().zip(&t3).map(|(a, b)| *a || *b).collect();
        let w4 = vertices_of(t0p, &keep, g.order());
        let t5 = match self.subtree_or_cert(&w4)? {
            Ok(t) => t,
            Err(c) => return Ok(Outcome::Cert(c)),
        };
        let s_bar = t0p.cliques[bar].intersection(&t0p.cliques[barp]);
        let big_l = &t0p.cliques[l];
        let Some(li) = t5.index_of(big_l) else { return self.claim_failed(w, "L missing from rebuilt tree") };
        let l2 = t5.adjacency()[li].iter().copied().find(|&k| t5.cliques[k].intersection(big_l) == s_bar);
        let Some(l2) = l2 else { return self.claim_failed(w, "no edge at L labelled S_L̄") };
        let mut out = TreeBuilder::default();
        out.add_tree(&t5);
        let l2c = t5.cliques[l2].clone();
        let ok = out.disconnect(big_l, &l2c) && {
            out.add_part(t0p, &t2);
            out.connect(big_l, &t0p.cliques[lp]) && out.connect(&t0p.cliques[bar], &l2c)
        };
        if !ok {
            return Err(self.internal("rebuild around L̄", "lost a node while assembling".into()));
        }
        Ok(Outcome::Tree(out.finish()))
    }

    /// The layered sets `𝒰_p`, `𝒱_p` and the three outcomes on `k`.
    fn layers(&mut self, ctx: &Ctx, tlp: &[bool]) -> Res {
        let t0p = ctx.t0p;
        let n = t0p.len();
        let q_prime = ctx.clique(ctx.qp).clone();
        let all_u: Vec<usize> = (0..ctx.qn).filter(|&x| x != ctx.qp && ctx.par[x] == ctx.l).collect();
        let all_v: Vec<usize> = (0..ctx.qn)
            .filter(|&x| x != ctx.qp && !tlp[x] && tlp[ctx.par[x]] && x != ctx.l && ctx.par[x] != ctx.l)
            .collect();
        // us[p] = 𝒰_p (us[0] unused), vs[p] = 𝒱_p.
        let mut us: Vec<Vec<usize>> = vec![Vec::new()];
        let mut vs: Vec<Vec<usize>> =
            vec![all_v.iter().copied().filter(|&v| ctx.clique(v).intersects(ctx.big_q)).collect()];
        let mut used_u = vec![false; n];
        let mut used_v = vec![false; n];
        vs[0].iter().for_each(|&v| used_v[v] = true);
        loop {
            let prev = vs.last().expect("nonempty");
            let next_u: Vec<usize> = all_u
                .iter()
                .copied()
                .filter(|&u| !used_u[u] && prev.iter().any(|&v| ctx.clique(u).intersects(ctx.clique(v))))
                .collect();
            if next_u.is_empty() {
                break;
            }
            next_u.iter().for_each(|&u| used_u[u] = true);
            let next_v: Vec<usize> = all_v
                .iter()
                .copied()
                .filter(|&v| !used_v[v] && next_u.iter().any(|&u| ctx.clique(u).intersects(ctx.clique(v))))
                .collect();
            next_v.iter().for_each(|&v| used_v[v] = true);
            us.push(next_u);
            vs.push(next_v);
        }
        let k = (1..us.len()).find(|&p| us[p].iter().any(|&u| !ctx.s_of(u).is_subset(&q_prime)));

        let limit = k.unwrap_or(us.len());
        for p in 1..limit {
            for &u in &us[p] {
                let s_u = ctx.s_of(u);
                let far = farthest_meeting(ctx.t, ctx.l_in_t, &s_u);
                if !far.is_some_and(|f| s_u.is_subset(&ctx.t.cliques[f])) {
                    // When the split clique is Q itself no obstruction follows;
                    // the attachment below places U elsewhere and is checked.
                    if let Ok(c) = self.far_end_violation(ctx, &us, &vs, p, u) {
                        return Ok(Outcome::Cert(c));
                    }
                }
            }
        }
        match k {
            Some(1) => self.first_layer_escape(ctx, &us, &vs),
            Some(k) => self.deep_escape(ctx, &us, &vs, k).map(Outcome::Cert),
            None => self.attach_layers(ctx, tlp, &all_u, &all_v, &used_u, &used_v),
        }
    }

    /// No layer escapes `Q′`: hang every outside component back onto `T`.
    fn attach_layers(
        &mut self,
        ctx: &Ctx,
        tlp: &[bool],
        all_u: &[usize],
        all_v: &[usize],
        used_u: &[bool],
        used_v: &[bool],
    ) -> Res {
        let t0p = ctx.t0p;
        let mut out = TreeBuilder::default();
        out.add_tree(ctx.t);
        let big_l = ctx.clique(ctx.l).clone();
        for &mm in all_v.iter().chain(all_u) {
            let part = reach(t0p, mm, |_, b| !tlp[b]);
            out.add_part(t0p, &part);
            let target = if all_u.contains(&mm) {
                if used_u[mm] {
                    let s_u = ctx.s_of(mm);
                    farthest_meeting(ctx.t, ctx.l_in_t, &s_u)
                        .map(|f| ctx.t.cliques[f].clone())
                        .filter(|f| s_u.is_subset(f))
                        .or_else(|| out.end_containing(&s_u))
                } else {
                    Some(big_l.clone())
                }
            } else if used_v[mm] {
                Some(big_l.clone())
            } else {
                farthest_meeting(ctx.t, ctx.l_in_t, &ctx.s_of(mm)).map(|f| ctx.t.cliques[f].clone())
            };
            let Some(target) = target else { return self.claim_failed(ctx.scope, "no clique of T meets S_M") };
            if !out.connect(&target, ctx.clique(mm)) {
                return Err(self.internal("layer attachment", "lost a node while assembling".into()));
            }
        }
        Ok(Outcome::Tree(out.finish()))
    }

    /// Some `U ∈ 𝒰_k`, `k ≥ 2`, escapes `Q′`: an `F16(4k+3)`.
    fn deep_escape(
        &mut self,
        ctx: &Ctx,
        us: &[Vec<usize>],
        vs: &[Vec<usize>],
        k: usize,
    ) -> Result<Certificate, InternalError> {
        let g = self.g;
        let q_prime = ctx.clique(ctx.qp).clone();
        let u_k = *us[k].iter().find(|&&u| !ctx.s_of(u).is_subset(&q_prime)).expect("k is defined by this");
        let Some((uc, vc)) = chain(ctx, us, vs, k, u_k) else {
            return self.certify(&[], ctx.scope, ctx.scope, "layer chain");
        };
        let pieces = (|| {
            let u_vs: Vec<usize> = uc.iter().map(|&u| ctx.u_i(u)).collect::<Option<_>>()?;
            let v_vs: Vec<usize> = vc.iter().map(|&v| ctx.u_i(v)).collect::<Option<_>>()?;
            let xs = chain_xs(ctx, &uc, &vc)?;
            let x0 = prefer(&ctx.clique(vc[0]).intersection(ctx.big_q), &[ctx.clique(uc[0])])?;
            let s_uk = pick(&ctx.s_of(u_k), &q_prime)?;
            Some(set_from(g, &[&u_vs, &v_vs, &xs, &[x0, s_uk, ctx.s_q_vertex, ctx.q]]))
        })();
        match pieces {
            Some(c) => self.certify(std::slice::from_ref(&c), &c, ctx.scope, "deep layer escape"),
            None => self.certify(&[], ctx.scope, ctx.scope, "deep layer escape"),
        }
    }

    /// `S_U` is split by the far end of `T`: an asteroidal triple, `F14`, `F15` or `F10`.
    fn far_end_violation(
        &mut self,
        ctx: &Ctx,
        us: &[Vec<usize>],
        vs: &[Vec<usize>],
        p: usize,
        u_p: usize,
    ) -> Result<Certificate, InternalError> {
        let g = self.g;
        let fallback = |me: &mut Self, why| me.certify(&[], ctx.scope, ctx.scope, why);
        let Some((uc, vc)) = chain(ctx, us, vs, p, u_p) else { return fallback(self, "layer chain") };
        let (Some(u_vs), Some(v_vs), Some(xs)) = (
            uc.iter().map(|&u| ctx.u_i(u)).collect::<Option<Vec<_>>>(),
            vc.iter().map(|&v| ctx.u_i(v)).collect::<Option<Vec<_>>>(),
            chain_xs(ctx, &uc, &vc),
        ) else {
            return fallback(self, "layer chain");
        };
        let Some(x0) = prefer(&ctx.clique(vc[0]).intersection(ctx.big_q), &[ctx.clique(uc[0])]) else {
            return fallback(self, "layer chain");
        };
        let s_up = ctx.s_of(u_p);
        let z = (0..ctx.qn).find(|&z| {
            let zp = ctx.par[z];
            z != ctx.qp
                && ctx.t0p.cliques[zp].contains(x0)
                && s_up.is_subset(ctx.clique(zp))
                && s_up.intersects(ctx.clique(z))
                && !s_up.is_subset(ctx.clique(z))
                && reach(ctx.t0p, ctx.qp, |a, b| !ctx.label(a, b).is_subset(ctx.s_l))[z]
        });
        let Some(z) = z else { return fallback(self, "no split clique Z") };
        let Some(zv) = pick(ctx.clique(z), ctx.clique(ctx.par[z])) else { return fallback(self, "Z inside Z′") };
        let Some(ell) = pick(ctx.clique(ctx.l), ctx.s_l) else { return fallback(self, "L equals S_L") };
        let path = ctx.t0p.path(z, ctx.qn).expect("connected");
        let mut allowed = g.empty_set();
        for e in path.windows(2) {
            allowed.union_with(&ctx.label(e[0], e[1]));
        }
        allowed.difference_with(ctx.s_l);
        allowed.insert(zv);
        allowed.insert(ctx.q);
        let Some(yp) = g.shortest_path_in(zv, ctx.q, &allowed) else { return fallback(self, "no y path") };
        let ys = &yp[1..yp.len() - 1];
        if ctx.clique(z).contains(x0) {
            return self.at_extraction(ctx.scope, x0, (zv, ell, ctx.q), "split clique at x0");
        }
        let Some(x_last) = pick_common(ctx.clique(z), ctx.clique(u_p)) else { return fallback(self, "Z misses U_p") };
        if ctx.big_q.contains(x_last) {
            return self.at_extraction(ctx.scope, x_last, (zv, ell, ctx.q), "split clique in Q");
        }
        let core = set_from(g, &[&u_vs, &v_vs, &xs, &[x0, x_last, ctx.q, zv, ell]]);
        let mut candidates = Vec::new();
        for t in 1..=2.min(ys.len()) {
            let mut c = core.clone();
            ys[..t].iter().for_each(|&y| c.insert(y));
            candidates.push(c);
        }
        candidates.push(set_from(g, &[ys, &[ell, x0, x_last, zv, ctx.q]]));
        let mut hull = core;
        ys.iter().for_each(|&y| hull.insert(y));
        self.certify(&candidates, &hull, ctx.scope, "split clique")
    }

    /// The first layer escapes `Q′`: `F6`..`F10(8)` from `U`, `W` and a child `X` of `W`.
    fn first_layer_escape(&mut self, ctx: &Ctx, us: &[Vec<usize>], vs: &[Vec<usize>]) -> Res {
        let g = self.g;
        let (q, big_q) = (ctx.q, ctx.big_q);
        let fallback = |me: &mut Self, why| me.claim_failed(ctx.scope, why);
        let q_prime = ctx.clique(ctx.qp).clone();
        let u = *us[1].iter().find(|&&u| !ctx.s_of(u).is_subset(&q_prime)).expect("k = 1");
        let Some(wn) = vs[0].iter().copied().find(|&v| ctx.clique(v).intersects(ctx.clique(u))) else {
            return fallback(self, "U meets no member of V_0");
        };
        let (cu, cw) = (ctx.clique(u).clone(), ctx.clique(wn).clone());
        let (s_u, s_w) = (ctx.s_of(u), ctx.s_of(wn));
        let (Some(su), Some(uv), Some(wv)) = (pick(&s_u, &q_prime), ctx.u_i(u), ctx.u_i(wn)) else {
            return fallback(self, "first layer vertices");
        };
        let sq = ctx.s_q_vertex;

        if s_w != *ctx.s_l {
            let (Some(b), Some(c)) = (prefer(&cw.intersection(big_q), &[&cu]), prefer(&cu.intersection(&cw), &[big_q]))
            else {
                return fallback(self, "S_W differs from S_L");
            };
            let path = ctx.t0p.path(u, ctx.qn).expect("connected");
            let mut allowed = g.empty_set();
            for e in path.windows(2) {
                allowed.union_with(&ctx.label(e[0], e[1]));
            }
            allowed.difference_with(&s_w);
            allowed.difference_with(g.neighbors(wv));
            allowed.insert(uv);
            allowed.insert(q);
            let Some(xp) = g.shortest_path_in(uv, q, &allowed) else { return fallback(self, "no x path") };
            let xs = &xp[1..xp.len() - 1];
            let mut candidates = Vec::new();
            if let Some(&x1) = xs.first() {
                candidates.push(set_from(g, &[&[wv, b, c, uv, su, x1, sq, q]]));
            }
            if xs.len() >= 2 {
                candidates.push(set_from(g, &[&[wv, b, c, uv, xs[0], xs[1], sq, q]]));
            }
            candidates.push(set_from(g, &[&[wv, b, c, uv, q], xs]));
            let hull = set_from(g, &[&[wv, b, c, uv, su, sq, q], xs]);
            return self.certify(&candidates, &hull, ctx.scope, "S_W differs from S_L").map(Outcome::Cert);
        }

        let xn = (0..ctx.qn).find(|&x| {
            x != ctx.qp && ctx.par[x] == wn && !ctx.s_of(x).is_subset(&q_prime) && ctx.clique(x).intersects(&s_w)
        });
        let Some(xn) = xn else {
            // T_W = T_L, so the layer analysis can start again from W.
            if ctx.allow_swap {
                return self.with_chosen_l(ctx.base, wn, false);
            }
            return fallback(self, "no escaping child of W");
        };
        let cx = ctx.clique(xn).clone();
        let s_x = ctx.s_of(xn);
        let (Some(xv), Some(sx)) = (pick(&cx, &cw), pick(&s_x, &q_prime)) else {
            return fallback(self, "child of W vertices");
        };
        let base = [q, uv, xv, sq, su, sx];
        let mut candidates = Vec::new();
        let mut hull = set_from(g, &[&base, &[wv]]);
        let first = |s: VertexSet| s.first();
        for a in cu.intersection(&cx).iter().take(3) {
            if let Some(b) = first(s_w.intersection(big_q)) {
                candidates.push(set_from(g, &[&base, &[a, b]]));
                hull.insert(b);
                if let Some(c) = pick(&s_w, &s_x) {
                    candidates.push(set_from(g, &[&[xv, a, b, uv, su, c, sq, q]]));
                    hull.insert(c);
                }
                if let Some(c) = pick(&s_w, &s_u) {
                    candidates.push(set_from(g, &[&[uv, a, b, xv, sx, c, sq, q]]));
                    hull.insert(c);
                }
            }
            hull.insert(a);
        }
        for a in cu.intersection(&cw).iter().take(3) {
            hull.insert(a);
            if let Some(b) = first(cx.intersection(big_q)) {
                candidates.push(set_from(g, &[&base, &[a, b]]));
                hull.insert(b);
            }
            let c = prefer(&cw.intersection(big_q), &[&cx]);
            let d = prefer(&cx.intersection(&s_w), &[big_q, &cu]);
            if let (Some(c), Some(d)) = (c, d) {
                candidates.push(set_from(g, &[&base, &[c, d]]));
                candidates.push(set_from(g, &[&base, &[a, c, d]]));
                hull.insert(c);
                hull.insert(d);
            }
            if let Some(e) = first(cx.intersection(&s_w)) {
                candidates.push(set_from(g, &[&base, &[a, e]]));
                hull.insert(e);
                if let Some(f) = pick(&s_w, big_q) {
                    candidates.push(set_from(g, &[&[q, uv, xv, su, sx, a, e, f]]));
                    hull.insert(f);
                }
            }
        }
        self.certify(&candidates, &hull, ctx.scope, "first layer escape").map(Outcome::Cert)
    }
}
