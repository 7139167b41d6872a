//! Certifying recognition: a clique path tree or a forbidden induced subgraph.
//!
//! The recursion works on vertex subsets of the host graph. Each connected
//! chordal subproblem picks a special simplicial vertex `q` and either
//! attaches `q` to a tree of a smaller subproblem or, when a structural
//! claim fails, extracts a forbidden subgraph from the failure. Every
//! extracted candidate goes through [`certify_or_fallback`]'s logic, so a
//! wrong case analysis becomes an error rather than a wrong answer.

mod attach;
mod cospecial;
mod tree_ops;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chordal::{
    clique_tree_from_cliques, cliques_in, find_hole_in, separators_of_tree, CliqueTree, CliqueTreeJson, SeparatorSet,
};
use crate::families::{
    find_forbidden_within, generate, validate_certificate, Certificate, CertificateJson, FamilyId, ForbiddenSearch,
};
use crate::graph::{find_isomorphism, induced_subgraph, Graph, VertexSet};
use crate::simplicial::{is_asteroidal_triple_in, profile_in, special_pair_on_tree};

/// Hulls up to this size are searched exhaustively.
const HULL_SEARCH_LIMIT: usize = 18;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecognitionResult {
    /// A clique path tree (a forest when the input is disconnected).
    PathGraph(CliqueTree),
    NotPathGraph(Certificate),
}

/// Wire form: `{verdict, tree?, certificate?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecognitionJson {
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<CliqueTreeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
}

impl RecognitionResult {
    pub fn is_path_graph(&self) -> bool {
        matches!(self, RecognitionResult::PathGraph(_))
    }

    pub fn tree(&self) -> Option<&CliqueTree> {
        match self {
            RecognitionResult::PathGraph(t) => Some(t),
            RecognitionResult::NotPathGraph(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            RecognitionResult::PathGraph(_) => None,
            RecognitionResult::NotPathGraph(c) => Some(c),
        }
    }

    pub fn to_json(&self) -> RecognitionJson {
        match self {
            RecognitionResult::PathGraph(t) => {
                RecognitionJson { verdict: "path-graph".into(), tree: Some(t.to_json()), certificate: None }
            }
            RecognitionResult::NotPathGraph(c) => {
                RecognitionJson { verdict: "not-path-graph".into(), tree: None, certificate: Some(c.to_json()) }
            }
        }
    }
}

/// A structural claim failed and no certificate could be recovered. This is
/// a bug; `detail` carries the state needed to reproduce it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("internal inconsistency ({context}): {detail}")]
pub struct InternalError {
    pub context: &'static str,
    pub detail: String,
}

/// Counters describing how a run reached its answer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub subproblems: usize,
    pub memo_hits: usize,
    /// Certificates whose extracted vertex set matched a family directly.
    pub direct_certificates: usize,
    /// Certificates found by exhaustive search inside a small hull.
    pub hull_certificates: usize,
    /// Certificates found by shrinking a hull with recursive recognition.
    pub minimized_certificates: usize,
    /// Subproblems answered only from the second special vertex.
    pub second_starts: usize,
}

impl Stats {
    /// Certificates that needed the safety net.
    pub fn fallbacks(&self) -> usize {
        self.hull_certificates + self.minimized_certificates
    }
}

/// Decide whether `G` is a path graph.
///
/// # Panics
/// On an internal inconsistency, which indicates a bug. Use
/// [`try_recognize`] to observe it as a value.
pub fn recognize(g: &Graph) -> RecognitionResult {
    match try_recognize(g) {
        Ok((r, _)) => r,
        Err(e) => panic!("{e}"),
    }
}

pub fn try_recognize(g: &Graph) -> Result<(RecognitionResult, Stats), InternalError> {
    let mut r = Recognizer::new(g);
    let out = r.decide(&g.vertex_set())?;
    let result = match out {
        Outcome::Tree(t) => RecognitionResult::PathGraph(t),
        Outcome::Cert(c) => RecognitionResult::NotPathGraph(c),
    };
    Ok((result, r.stats))
}

/// Return `candidate` if it is valid in `G`, otherwise a certificate found
/// inside `hull`, otherwise an error. Never returns an unvalidated certificate.
pub fn certify_or_fallback(g: &Graph, candidate: &Certificate, hull: &VertexSet) -> Result<Certificate, InternalError> {
    if validate_certificate(g, candidate) == Ok(true) {
        return Ok(candidate.clone());
    }
    let mut r = Recognizer::new(g);
    r.certify(&[], hull, hull, "certify_or_fallback")
}

#[derive(Clone, Debug)]
pub(crate) enum Outcome {
    Tree(CliqueTree),
    Cert(Certificate),
}

type Res = Result<Outcome, InternalError>;

pub(crate) struct Recognizer<'g> {
    g: &'g Graph,
    memo: HashMap<VertexSet, Outcome>,
    /// `(cliques, vertices)` of the subproblems on the current call stack.
    measures: Vec<(usize, usize)>,
    patterns: HashMap<usize, Vec<(FamilyId, Graph)>>,
    stats: Stats,
}

impl<'g> Recognizer<'g> {
    pub(crate) fn new(g: &'g Graph) -> Self {
        Recognizer { g, memo: HashMap::new(), measures: Vec::new(), patterns: HashMap::new(), stats: Stats::default() }
    }

    fn internal(&self, context: &'static str, detail: String) -> InternalError {
        InternalError { context, detail: format!("{detail}; call stack measures {:?}", self.measures) }
    }

    /// Any vertex subset: hole check, then each component.
    pub(crate) fn decide(&mut self, w: &VertexSet) -> Res {
        if let Some(hole) = find_hole_in(self.g, w) {
            let cert = Certificate { family: FamilyId::of(0, Some(hole.len())), witness: hole.clone() };
            if validate_certificate(self.g, &cert) == Ok(true) {
                self.stats.direct_certificates += 1;
                return Ok(Outcome::Cert(cert));
            }
            let set = VertexSet::from_slice(self.g.order(), &hole);
            return self.certify(std::slice::from_ref(&set), &set, w, "hole").map(Outcome::Cert);
        }
        let mut forest = tree_ops::TreeBuilder::default();
        for comp in self.g.components_in(w) {
            match self.solve(&comp)? {
                Outcome::Tree(t) => forest.add_tree(&t),
                cert => return Ok(cert),
            }
        }
        Ok(Outcome::Tree(forest.finish()))
    }

    /// Connected chordal subset, memoized.
    fn solve(&mut self, w: &VertexSet) -> Res {
        if let Some(out) = self.memo.get(w) {
            self.stats.memo_hits += 1;
            return Ok(out.clone());
        }
        self.stats.subproblems += 1;
        let cliques = cliques_in(self.g, w).map_err(|e| self.internal("subproblem", format!("{e} on {w:?}")))?;
        let measure = (cliques.len(), w.len());
        if self.measures.last().is_some_and(|&top| measure >= top) {
            return Err(self.internal("recursion", format!("measure {measure:?} did not decrease on {w:?}")));
        }
        self.measures.push(measure);
        let out = self.solve_connected(w, cliques);
        self.measures.pop();
        let out = out?;
        self.memo.insert(w.clone(), out.clone());
        Ok(out)
    }

    fn solve_connected(&mut self, w: &VertexSet, cliques: Vec<VertexSet>) -> Res {
        if cliques.len() == 1 {
            return Ok(Outcome::Tree(CliqueTree::single(cliques.into_iter().next().expect("one clique"))));
        }
        let tree = clique_tree_from_cliques(cliques);
        let seps = separators_of_tree(&tree);
        let (q1, q2) = special_pair_on_tree(&tree);
        // Either special vertex is a valid start. A construction can still
        // come out wrong when a recursive tree is less symmetric than the
        // argument assumes, so the second vertex gets a turn before giving up.
        let first = match self.solve_from(w, q1, &seps) {
            Ok(out) => return Ok(out),
            Err(e) => e,
        };
        if let Ok(out) = self.solve_from(w, q2, &seps) {
            self.stats.second_starts += 1;
            return Ok(out);
        }
        self.certify(&[], w, w, first.context)
            .map(Outcome::Cert)
            .map_err(|e| self.internal(first.context, format!("{}; {e}", first.detail)))
    }

    /// One attempt from `q`; a tree is returned only after it checks out.
    fn solve_from(&mut self, w: &VertexSet, q: usize, seps: &SeparatorSet) -> Res {
        let profile = profile_in(self.g, w, q, seps);
        if !profile.is_special {
            return Err(self.internal("special vertex", format!("{q} is not special in {w:?}")));
        }
        let (ctx, out) = if profile.is_co_special {
            ("co-special tree", self.handle_cospecial(w, &profile)?)
        } else {
            ("attachment tree", self.handle_non_cospecial(w, &profile)?)
        };
        match out {
            Outcome::Tree(t) => match t.check_path_tree(self.g, w) {
                Ok(()) => Ok(Outcome::Tree(t)),
                Err(defect) => Err(self.internal(ctx, format!("built tree fails ({defect:?}) on {w:?} with q = {q}"))),
            },
            cert => Ok(cert),
        }
    }

    /// Recurse on a subproblem and hand back its tree, or stop with its certificate.
    fn subtree_or_cert(&mut self, w: &VertexSet) -> Result<Result<CliqueTree, Certificate>, InternalError> {
        Ok(match self.decide(w)? {
            Outcome::Tree(t) => Ok(t),
            Outcome::Cert(c) => Err(c),
        })
    }

    /// Match `G[set]` against the forbidden graphs of its order.
    fn identify(&mut self, set: &VertexSet) -> Option<Certificate> {
        let n = set.len();
        let g = self.g;
        let patterns = self
            .patterns
            .entry(n)
            .or_insert_with(|| FamilyId::all_of_order(n).into_iter().map(|f| (f, generate(f))).collect());
        let edges = g.edge_count_in(set);
        let (sub, relabel) = induced_subgraph(g, set);
        patterns.iter().filter(|(_, p)| p.edge_count() == edges).find_map(|(family, p)| {
            find_isomorphism(p, &sub).map(|phi| Certificate {
                family: *family,
                witness: phi.iter().map(|&j| relabel.new_to_old[j]).collect(),
            })
        })
    }

    /// Candidates first, then exhaustive search in `hull`, then shrinking
    /// `hull` and finally `scope` by recursive recognition.
    pub(crate) fn certify(
        &mut self,
        candidates: &[VertexSet],
        hull: &VertexSet,
        scope: &VertexSet,
        context: &'static str,
    ) -> Result<Certificate, InternalError> {
        for c in candidates {
            if let Some(cert) = self.identify(c) {
                self.stats.direct_certificates += 1;
                return Ok(cert);
            }
        }
        if hull.len() <= HULL_SEARCH_LIMIT {
            if let ForbiddenSearch::Found(cert) = find_forbidden_within(self.g, hull, HULL_SEARCH_LIMIT) {
                self.stats.hull_certificates += 1;
                return Ok(cert);
            }
        }
        if let Some(cert) = self.minimize(hull)? {
            self.stats.minimized_certificates += 1;
            return Ok(cert);
        }
        if scope != hull {
            if let Some(cert) = self.minimize(scope)? {
                self.stats.minimized_certificates += 1;
                return Ok(cert);
            }
        }
        Err(self.internal(
            context,
            format!("no forbidden subgraph in hull {hull:?} (scope {scope:?}); candidates {candidates:?}"),
        ))
    }

    /// A certificate inside `set` when `set` is not a path graph: either some
    /// `set - v` already fails, or `set` itself is minimal and is identified.
    fn minimize(&mut self, set: &VertexSet) -> Result<Option<Certificate>, InternalError> {
        if set.len() < 4 {
            return Ok(None);
        }
        for v in set.to_vec() {
            if let Outcome::Cert(c) = self.decide(&set.without(v))? {
                return Ok(Some(c));
            }
        }
        Ok(self.identify(set))
    }

    /// Certificate inside `N[center]` from an asteroidal triple of `N(center)`.
    fn at_extraction(
        &mut self,
        scope: &VertexSet,
        center: usize,
        (a, b, c): (usize, usize, usize),
        context: &'static str,
    ) -> Result<Certificate, InternalError> {
        let g = self.g;
        let nbr = g.neighbors(center).intersection(scope);
        let closed = nbr.with(center);
        if !is_asteroidal_triple_in(g, &nbr, a, b, c) {
            return self.certify(&[], &closed, scope, context);
        }
        let mut hull = g.set_of(&[a, b, c]);
        for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
            let avoid = nbr.difference(&g.closed_neighbors(z));
            if let Some(p) = g.shortest_path_in(x, y, &avoid) {
                p.into_iter().for_each(|v| hull.insert(v));
            }
        }
        // Drop vertices while an asteroidal triple survives.
        for v in hull.to_vec() {
            let smaller = hull.without(v);
            if crate::simplicial::find_asteroidal_triple_in(g, &smaller).is_some() {
                hull = smaller;
            }
        }
        let cone = hull.with(center);
        self.certify(std::slice::from_ref(&cone), &cone, scope, context)
    }
}

/// First vertex of `a \ b`.
fn pick(a: &VertexSet, b: &VertexSet) -> Option<usize> {
    a.first_not_in(b)
}

/// First vertex of `a ∩ b`.
fn pick_common(a: &VertexSet, b: &VertexSet) -> Option<usize> {
    a.intersection(b).first()
}

fn set_from(g: &Graph, parts: &[&[usize]]) -> VertexSet {
    let mut s = g.empty_set();
    for part in parts {
        for &v in *part {
            s.insert(v);
        }
    }
    s
}
