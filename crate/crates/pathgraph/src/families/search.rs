use rayon::prelude::*;

use super::{generate, Certificate, FamilyId};
use crate::graph::{find_isomorphism, induced_subgraph, Graph, VertexSet};
use crate::oracle::{cpt_exists_bruteforce, CptVerdict, OracleBudget};

/// Outcome of [`verify_minimal_non_path`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Minimality {
    /// No clique path tree, and one exists after deleting any vertex.
    Minimal,
    NotMinimal(String),
    /// The oracle ran out of budget somewhere; nothing is claimed.
    Unverifiable(String),
}

impl Minimality {
    pub fn is_minimal(&self) -> bool {
        matches!(self, Minimality::Minimal)
    }
}

/// Check with the brute-force oracle that the family member is a minimal non
/// path graph.
pub fn verify_minimal_non_path(family: FamilyId, budget: OracleBudget) -> Minimality {
    let f = generate(family);
    match cpt_exists_bruteforce(&f, budget) {
        CptVerdict::Tree(_) => return Minimality::NotMinimal(format!("{family} has a clique path tree")),
        CptVerdict::OverBudget { cliques, vertices } => {
            return Minimality::Unverifiable(format!(
                "{family}: {cliques} cliques on {vertices} vertices exceeds the oracle budget"
            ))
        }
        CptVerdict::NoTree { .. } => {}
    }
    let verdicts: Vec<(usize, CptVerdict)> = (0..f.order())
        .into_par_iter()
        .map(|x| {
            let (h, _) = induced_subgraph(&f, &f.vertex_set().without(x));
            (x, cpt_exists_bruteforce(&h, budget))
        })
        .collect();
    for (x, v) in verdicts {
        match v {
            CptVerdict::Tree(_) => {}
            CptVerdict::NoTree { .. } => {
                return Minimality::NotMinimal(format!("{family} minus {} has no clique path tree", f.name(x)))
            }
            CptVerdict::OverBudget { cliques, vertices } => {
                return Minimality::Unverifiable(format!(
                    "{family} minus {}: {cliques} cliques on {vertices} vertices exceeds the oracle budget",
                    f.name(x)
                ))
            }
        }
    }
    Minimality::Minimal
}

/// Outcome of a bounded certificate search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ForbiddenSearch {
    Found(Certificate),
    Absent,
    /// The search space was larger than allowed; nothing is claimed.
    BudgetExhausted,
}

/// Search all induced subgraphs of `G` for a forbidden graph, smallest first.
pub fn find_forbidden_bounded(g: &Graph, max_vertices: usize) -> ForbiddenSearch {
    find_forbidden_within(g, &g.vertex_set(), max_vertices)
}

struct Pattern {
    family: FamilyId,
    graph: Graph,
    edges: usize,
    degrees: Vec<usize>,
}

fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

/// As [`find_forbidden_bounded`], restricted to subsets of `within`.
pub fn find_forbidden_within(g: &Graph, within: &VertexSet, max_vertices: usize) -> ForbiddenSearch {
    let verts = within.to_vec();
    let m = verts.len();
    if m > max_vertices || m > 63 {
        return ForbiddenSearch::BudgetExhausted;
    }
    let local: Vec<u64> = verts
        .iter()
        .map(|&v| verts.iter().enumerate().filter(|&(_, &w)| g.has_edge(v, w)).fold(0u64, |acc, (j, _)| acc | 1 << j))
        .collect();
    for s in 4..=m {
        let patterns: Vec<Pattern> = FamilyId::all_of_order(s)
            .into_iter()
            .map(|family| {
                let graph = generate(family);
                Pattern { family, edges: graph.edge_count(), degrees: sorted_degrees(&graph), graph }
            })
            .collect();
        if patterns.is_empty() {
            continue;
        }
        // Gosper's hack: all s-subsets of 0..m in increasing numeric order.
        let mut mask: u64 = (1u64 << s) - 1;
        while mask < 1u64 << m {
            if let Some(cert) = match_subset(g, &verts, &local, mask, &patterns) {
                return ForbiddenSearch::Found(cert);
            }
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    ForbiddenSearch::Absent
}

fn match_subset(g: &Graph, verts: &[usize], local: &[u64], mask: u64, patterns: &[Pattern]) -> Option<Certificate> {
    let mut degrees = Vec::with_capacity(mask.count_ones() as usize);
    let mut bits = mask;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        degrees.push((local[i] & mask).count_ones() as usize);
    }
    let edges = degrees.iter().sum::<usize>() / 2;
    if !patterns.iter().any(|p| p.edges == edges) {
        return None;
    }
    degrees.sort_unstable();
    let chosen: Vec<usize> = (0..verts.len()).filter(|&i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
    let (sub, relabel) = induced_subgraph(g, &VertexSet::from_slice(g.order(), &chosen));
    for p in patterns.iter().filter(|p| p.edges == edges && p.degrees == degrees) {
        if let Some(phi) = find_isomorphism(&p.graph, &sub) {
            let witness = phi.iter().map(|&j| relabel.new_to_old[j]).collect();
            return Some(Certificate { family: p.family, witness });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::validate_certificate;

    #[test]
    fn small_members_are_minimal() {
        for f in [FamilyId::of(0, Some(4)), FamilyId::of(2, None), FamilyId::of(11, Some(8))] {
            assert_eq!(verify_minimal_non_path(f, OracleBudget::default()), Minimality::Minimal, "{f}");
        }
    }

    #[test]
    fn path_has_no_forbidden_subgraph() {
        assert_eq!(find_forbidden_bounded(&Graph::path(6), 12), ForbiddenSearch::Absent);
    }

    #[test]
    fn cycle_is_found_whole() {
        match find_forbidden_bounded(&Graph::cycle(7), 12) {
            ForbiddenSearch::Found(c) => {
                assert_eq!(c.family, FamilyId::of(0, Some(7)));
                assert_eq!(c.vertex_list(), (0..7).collect::<Vec<_>>());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pendant_vertex_is_ignored() {
        let f2 = generate(FamilyId::of(2, None));
        let mut g = Graph::new(8);
        for (u, v) in f2.edges() {
            g.add_edge(u, v);
        }
        g.add_edge(0, 7);
        match find_forbidden_bounded(&g, 12) {
            ForbiddenSearch::Found(c) => {
                assert_eq!(c.family, FamilyId::of(2, None));
                assert_eq!(c.vertex_list(), (0..7).collect::<Vec<_>>());
                assert_eq!(validate_certificate(&g, &c), Ok(true));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_is_explicit() {
        assert_eq!(find_forbidden_bounded(&Graph::path(20), 12), ForbiddenSearch::BudgetExhausted);
    }
}
