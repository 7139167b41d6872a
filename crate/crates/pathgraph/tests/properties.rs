//! Randomized properties of the recognizer and the structural helpers.

use pathgraph::chordal::{build_clique_tree, is_chordal};
use pathgraph::families::{generate, validate_certificate, FamilyId};
use pathgraph::graph::induced_subgraph;
use pathgraph::oracle::{cpt_exists_bruteforce, pairwise_minimal_separators_bruteforce, CptVerdict, OracleBudget};
use pathgraph::recognizer::try_recognize;
use pathgraph::simplicial::{
    find_special_pair, is_middle, is_middle_by_paths, neighborhood_at_free, simplicial_profile,
};
use pathgraph::{Graph, RecognitionResult};
use proptest::prelude::*;

const BUDGET: OracleBudget = OracleBudget { max_cliques: 9, max_vertices: 16 };

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::new(n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits[k] {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    g
}

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Fill-in along a shuffled elimination order.
fn chordal(max_n: usize) -> impl Strategy<Value = Graph> {
    chordal_with(max_n, false)
}

/// As [`chordal`], made connected by a random spanning tree first.
fn connected_chordal(max_n: usize) -> impl Strategy<Value = Graph> {
    chordal_with(max_n, true)
}

fn chordal_with(max_n: usize, connected: bool) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let bits = proptest::collection::vec(prop::bool::weighted(0.35), n * (n - 1) / 2);
            let order = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            let tree = (1..n.max(1)).map(|i| 0..i).collect::<Vec<_>>();
            (Just(n), bits, order, tree)
        })
        .prop_map(move |(n, bits, order, tree)| {
            let mut g = graph_from_bits(n, &bits);
            if connected {
                tree.iter().enumerate().for_each(|(i, &p)| g.add_edge(i + 1, p));
            }
            let mut gone = vec![false; n];
            for &v in &order {
                let later: Vec<usize> = g.neighbors(v).iter().filter(|&w| !gone[w]).collect();
                for (i, &a) in later.iter().enumerate() {
                    for &b in &later[i + 1..] {
                        g.add_edge(a, b);
                    }
                }
                gone[v] = true;
            }
            g
        })
}

/// Intersection graph of random subpaths of a random tree: a path graph by
/// construction, of any size.
fn subpath_graph(max_nodes: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_nodes, 1..=max_n)
        .prop_flat_map(|(k, n)| {
            let parents = (1..k).map(|i| 0..i).collect::<Vec<_>>();
            let ends = proptest::collection::vec((0..k, 0..k), n);
            (Just(k), parents, ends)
        })
        .prop_map(|(k, parents, ends)| {
            let parent = |i: usize| if i == 0 { None } else { Some(parents[i - 1]) };
            let root_path = |mut i: usize| {
                let mut p = vec![i];
                while let Some(j) = parent(i) {
                    p.push(j);
                    i = j;
                }
                p
            };
            let nodes: Vec<Vec<bool>> = ends
                .iter()
                .map(|&(a, b)| {
                    let (pa, pb) = (root_path(a), root_path(b));
                    let meet = *pa.iter().find(|x| pb.contains(x)).expect("common root");
                    let mut on = vec![false; k];
                    pa.iter()
                        .take_while(|&&x| x != meet)
                        .chain(pb.iter().take_while(|&&x| x != meet))
                        .for_each(|&x| on[x] = true);
                    on[meet] = true;
                    on
                })
                .collect();
            let n = nodes.len();
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if (0..k).any(|x| nodes[u][x] && nodes[v][x]) {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
}

fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    let mut h = Graph::new(g.order());
    for (a, b) in g.edges() {
        h.add_edge(perm[a], perm[b]);
    }
    h
}

/// Checks the answer on its own terms; returns the verdict.
fn sound_answer(g: &Graph) -> Result<bool, TestCaseError> {
    let (result, _) = try_recognize(g).map_err(|e| TestCaseError::fail(e.to_string()))?;
    match &result {
        RecognitionResult::PathGraph(t) => {
            prop_assert!(t.is_clique_path_tree(g), "bad tree {t:?}");
            Ok(true)
        }
        RecognitionResult::NotPathGraph(c) => {
            prop_assert_eq!(validate_certificate(g, c), Ok(true), "bad certificate {:?}", c);
            Ok(false)
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 400,
        max_global_rejects: 1 << 20,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn verdict_matches_oracle_on_any_graph(g in any_graph(9)) {
        let ours = sound_answer(&g)?;
        match cpt_exists_bruteforce(&g, BUDGET) {
            CptVerdict::Tree(_) => prop_assert!(ours),
            CptVerdict::NoTree { .. } => prop_assert!(!ours),
            CptVerdict::OverBudget { .. } => {}
        }
    }

    #[test]
    fn verdict_matches_oracle_on_chordal_graphs(g in chordal(10)) {
        let ours = sound_answer(&g)?;
        match cpt_exists_bruteforce(&g, BUDGET) {
            CptVerdict::Tree(_) => prop_assert!(ours),
            CptVerdict::NoTree { .. } => prop_assert!(!ours),
            CptVerdict::OverBudget { .. } => {}
        }
    }

    #[test]
    fn certificate_witness_has_no_tree(g in chordal(10)) {
        let (result, _) = try_recognize(&g).map_err(|e| TestCaseError::fail(e.to_string()))?;
        if let RecognitionResult::NotPathGraph(c) = result {
            let (w, _) = induced_subgraph(&g, &g.set_of(&c.witness));
            prop_assert!(!cpt_exists_bruteforce(&w, BUDGET).is_tree());
        }
    }

    #[test]
    fn answers_on_larger_chordal_graphs_check_out(g in chordal(16)) {
        sound_answer(&g)?;
    }

    #[test]
    fn subpath_intersection_graphs_are_accepted(g in subpath_graph(12, 24)) {
        prop_assert!(sound_answer(&g)?);
    }

    #[test]
    fn neighborhoods_of_path_graphs_have_no_asteroidal_triple(g in subpath_graph(8, 14)) {
        prop_assert_eq!(neighborhood_at_free(&g), None);
    }

    #[test]
    fn embedded_forbidden_graph_is_found(
        which in 0usize..1000,
        extra in 0usize..5,
        bits in proptest::collection::vec(any::<bool>(), 80),
    ) {
        let census = FamilyId::census();
        let f = generate(census[which % census.len()]);
        let n = f.order() + extra;
        let mut g = Graph::new(n);
        for (a, b) in f.edges() {
            g.add_edge(a, b);
        }
        let mut k = 0;
        for v in f.order()..n {
            for u in 0..v {
                if bits[k % bits.len()] {
                    g.add_edge(u, v);
                }
                k += 1;
            }
        }
        prop_assert!(!sound_answer(&g)?);
    }

    #[test]
    fn recognition_is_deterministic(g in chordal(12)) {
        let a = try_recognize(&g).map(|(r, _)| serde_json::to_string(&r.to_json()).unwrap());
        let b = try_recognize(&g.clone()).map(|(r, _)| serde_json::to_string(&r.to_json()).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn verdict_survives_relabelling(
        (g, perm) in chordal(10).prop_flat_map(|g| {
            let n = g.order();
            (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        prop_assert_eq!(sound_answer(&g)?, sound_answer(&permuted(&g, &perm))?);
    }

    #[test]
    fn special_pair_is_two_maximal_separator_owners(g in connected_chordal(10)) {
        prop_assume!(build_clique_tree(&g).unwrap().len() > 1);
        let (a, b) = find_special_pair(&g).unwrap();
        prop_assert!(a != b && !g.has_edge(a, b));
        let seps = pairwise_minimal_separators_bruteforce(&g);
        for v in [a, b] {
            let p = simplicial_profile(&g, v).unwrap();
            prop_assert!(p.is_simplicial && p.is_special);
            prop_assert!(seps.contains(&p.s_v) && seps.is_maximal(&p.s_v), "S_{} = {:?}", v, p.s_v);
        }
    }

    #[test]
    fn co_special_vertex_leaves_a_connected_outside(g in connected_chordal(11)) {
        prop_assume!(build_clique_tree(&g).unwrap().len() > 1);
        let (a, b) = find_special_pair(&g).unwrap();
        for q in [a, b] {
            let p = simplicial_profile(&g, q).unwrap();
            if !p.is_co_special {
                continue;
            }
            let outside = g.vertex_set().difference(&p.q_v);
            for u in outside.iter() {
                for w in outside.iter().filter(|&w| w > u && !g.has_edge(u, w)) {
                    prop_assert!(g.connected_in(u, w, &outside), "{} and {} split by N({})", u, w, q);
                }
            }
        }
    }

    #[test]
    fn middle_on_tree_matches_middle_by_paths(g in chordal(7)) {
        prop_assert!(is_chordal(&g));
        let t = build_clique_tree(&g).unwrap();
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                for c in b + 1..n {
                    prop_assert_eq!(is_middle(&g, &t, a, b, c), is_middle_by_paths(&g, a, b, c), "{} {} {}", a, b, c);
                }
            }
        }
    }
}
