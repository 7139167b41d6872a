//! One PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.

use std::process::ExitCode;
use std::time::Instant;

use pathgraph::chordal::{build_clique_tree, is_chordal, lex_bfs};
use pathgraph::families::{generate, verify_minimal_non_path, FamilyId, Minimality};
use pathgraph::oracle::{pairwise_minimal_separators_bruteforce, OracleBudget};
use pathgraph::simplicial::{
    find_special_pair, is_middle, is_middle_by_paths, is_simplicial, neighborhood_at_free, simplicial_profile,
};
use pathgraph::sweep::{
    check_instance, graph_from_mask, random_chordal_instances, InstanceReport, Outcome, SweepConfig,
};
use pathgraph::Graph;
use rayon::prelude::*;

const BUDGET: OracleBudget = OracleBudget { max_cliques: 9, max_vertices: 16 };

struct Verdict {
    failures: Vec<String>,
    summary: String,
}

impl Verdict {
    fn new(failures: Vec<String>, summary: impl Into<String>) -> Self {
        Verdict { failures, summary: summary.into() }
    }
}

fn report(name: &str, start: Instant, v: Verdict) -> bool {
    let ok = v.failures.is_empty();
    let status = if ok { "PASS" } else { "FAIL" };
    println!("{status} {name}: {} ({:.1}s)", v.summary, start.elapsed().as_secs_f64());
    for f in v.failures.iter().take(5) {
        println!("    {f}");
    }
    ok
}

fn describe(g: &Graph) -> String {
    format!("{} vertices, edges {:?}", g.order(), g.edges())
}

fn census() -> Verdict {
    let results: Vec<(FamilyId, Minimality)> =
        FamilyId::census().into_par_iter().map(|f| (f, verify_minimal_non_path(f, BUDGET))).collect();
    let failures: Vec<String> =
        results.iter().filter(|(_, m)| !m.is_minimal()).map(|(f, m)| format!("{f}: {m:?}")).collect();
    Verdict::new(failures, format!("{} family members minimal non path graphs", results.len()))
}

fn equivalence(name: &str, graphs: &[Graph], reports: &[InstanceReport]) -> Verdict {
    let failures: Vec<String> = reports
        .iter()
        .filter(|r| matches!(r.outcome, Outcome::Mismatch(_) | Outcome::OverBudget | Outcome::Internal(_)))
        .map(|r| format!("{:?} on {}", r.outcome, describe(&graphs[r.id])))
        .collect();
    let paths = reports.iter().filter(|r| r.outcome == Outcome::Agree(true)).count();
    Verdict::new(
        failures,
        format!("{name}: {} graphs, {paths} path graphs, {} not", reports.len(), reports.len() - paths),
    )
}

fn soundness(all: &[(&[Graph], &[InstanceReport])]) -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (graphs, reports) in all {
        for r in reports.iter() {
            match &r.outcome {
                Outcome::Agree(false) => checked += 1,
                Outcome::Unsound(why) => failures.push(format!("{why} on {}", describe(&graphs[r.id]))),
                _ => {}
            }
        }
    }
    Verdict::new(failures, format!("{checked} certificates embed and their witnesses have no tree"))
}

fn worked_examples() -> Verdict {
    let mut failures = Vec::new();
    // a b c d e with edges ab bc cd de bd.
    let h = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)]);
    let seps = pairwise_minimal_separators_bruteforce(&h).sets();
    if seps != vec![h.set_of(&[1]), h.set_of(&[3])] {
        failures.push(format!("separators of H are {seps:?}"));
    }
    let c = simplicial_profile(&h, 2).unwrap();
    if c.s_v != h.set_of(&[1, 3]) || c.is_special {
        failures.push(format!("profile of c: {c:?}"));
    }

    // a b c d e f with edges ab bc cd eb ec fb fc. LexBFS must end on a or d
    // whatever order ties are broken in, so run it under every relabelling.
    let six = [(0, 1), (1, 2), (2, 3), (4, 1), (4, 2), (5, 1), (5, 2)];
    let g = Graph::from_edges(6, &six);
    let mut perm: Vec<usize> = (0..6).collect();
    let mut ends = std::collections::BTreeSet::new();
    permutations(&mut perm, 0, &mut |p| {
        let relabelled: Vec<(usize, usize)> = six.iter().map(|&(a, b)| (p[a], p[b])).collect();
        let order = lex_bfs(&Graph::from_edges(6, &relabelled));
        let last = *order.as_slice().last().unwrap();
        ends.insert(p.iter().position(|&x| x == last).unwrap());
    });
    if !ends.iter().all(|v| [0, 3].contains(v)) {
        failures.push(format!("LexBFS ends on {ends:?}"));
    }
    for v in &ends {
        let p = simplicial_profile(&g, *v).unwrap();
        if !p.is_simplicial || p.is_special {
            failures.push(format!("vertex {v}: {p:?}"));
        }
    }
    match find_special_pair(&g) {
        Ok((a, b)) if a != b && !g.has_edge(a, b) => {
            for v in [a, b] {
                if !simplicial_profile(&g, v).unwrap().is_special {
                    failures.push(format!("{v} returned but not special"));
                }
            }
        }
        other => failures.push(format!("special pair {other:?}")),
    }
    Verdict::new(failures, format!("H separators and S_c; LexBFS ends {ends:?} over 720 relabellings"))
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

fn special_pairs(graphs: &[Graph]) -> Verdict {
    let targets: Vec<&Graph> = graphs
        .iter()
        .filter(|g| g.is_connected() && build_clique_tree(g).map(|t| t.len() > 1).unwrap_or(false))
        .collect();
    let failures: Vec<String> = targets
        .par_iter()
        .filter_map(|g| {
            let (a, b) = match find_special_pair(g) {
                Ok(pair) => pair,
                Err(e) => return Some(format!("{e} on {}", describe(g))),
            };
            if a == b || g.has_edge(a, b) {
                return Some(format!("adjacent pair {a} {b} on {}", describe(g)));
            }
            let seps = pairwise_minimal_separators_bruteforce(g);
            for v in [a, b] {
                let p = simplicial_profile(g, v).unwrap();
                if !(p.is_simplicial && seps.contains(&p.s_v) && seps.is_maximal(&p.s_v)) {
                    return Some(format!("vertex {v} ({p:?}) on {}", describe(g)));
                }
            }
            None
        })
        .collect();
    Verdict::new(failures, format!("{} connected chordal non-clique graphs", targets.len()))
}

fn neighborhoods_and_middles(all: &[(&[Graph], &[InstanceReport])], small: &[Graph]) -> Verdict {
    let path_graphs: Vec<&Graph> = all
        .iter()
        .flat_map(|(gs, rs)| rs.iter().filter(|r| r.outcome == Outcome::Agree(true)).map(move |r| &gs[r.id]))
        .collect();
    let mut failures: Vec<String> = path_graphs
        .par_iter()
        .filter_map(|g| neighborhood_at_free(g).map(|at| format!("{at:?} in {}", describe(g))))
        .collect();
    let chordal: Vec<&Graph> = small.iter().filter(|g| is_chordal(g)).collect();
    failures.par_extend(chordal.par_iter().filter_map(|g| {
        let t = build_clique_tree(g).unwrap();
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                for c in b + 1..n {
                    let distinct = a != b && a != c;
                    if distinct && is_middle(g, &t, a, b, c) != is_middle_by_paths(g, a, b, c) {
                        return Some(format!("middle {a} of {b} {c} in {}", describe(g)));
                    }
                }
            }
        }
        None
    }));
    Verdict::new(
        failures,
        format!(
            "{} path graphs AT-free around every vertex; middles agree on {} chordal graphs",
            path_graphs.len(),
            chordal.len()
        ),
    )
}

fn captions() -> (Verdict, String) {
    let mut failures = Vec::new();
    let universal = |g: &Graph| (0..g.order()).any(|v| g.degree(v) + 1 == g.order());
    let simplicial = |g: &Graph| (0..g.order()).filter(|&v| is_simplicial(g, v)).count();
    let census = FamilyId::census();
    for f in &census {
        let g = generate(*f);
        let ok = match f.index() {
            0 => simplicial(&g) == 0,
            1..=5 => universal(&g),
            6..=10 => !universal(&g) && simplicial(&g) == 3,
            _ => true,
        };
        if !ok {
            failures.push(format!("{f}: universal {} simplicial {}", universal(&g), simplicial(&g)));
        }
    }
    let info: Vec<String> = census
        .iter()
        .filter(|f| (11..=15).contains(&f.index()))
        .map(|f| {
            let g = generate(*f);
            let simp: Vec<usize> = (0..g.order()).filter(|&v| is_simplicial(&g, v)).collect();
            let plain = simp.iter().filter(|&&v| !simplicial_profile(&g, v).unwrap().is_co_special).count();
            format!("{f} {plain}/{}", simp.len())
        })
        .collect();
    (
        Verdict::new(
            failures,
            "F0 no simplicial vertex, F1-F5 universal vertex, F6-F10 three simplicial and none universal",
        ),
        format!("simplicial vertices that are not co-special: {}", info.join(", ")),
    )
}

fn main() -> ExitCode {
    let mut ok = true;

    let start = Instant::now();
    ok &= report("minimality census", start, census());

    let start = Instant::now();
    let six: Vec<Graph> = (0..1u64 << 15).map(|m| graph_from_mask(6, m)).collect();
    let six_reports: Vec<InstanceReport> =
        six.par_iter().enumerate().map(|(i, g)| check_instance(i, g, BUDGET)).collect();
    ok &= report("oracle equivalence, exhaustive", start, equivalence("all graphs on 6 vertices", &six, &six_reports));

    let start = Instant::now();
    let config = SweepConfig {
        samples: 3334,
        random_orders: vec![7, 8, 9],
        densities: vec![0.2, 0.35, 0.5, 0.7],
        seed: 0,
        ..SweepConfig::default()
    };
    let random = random_chordal_instances(&config);
    let random_reports: Vec<InstanceReport> =
        random.par_iter().enumerate().map(|(i, g)| check_instance(i, g, BUDGET)).collect();
    ok &= report(
        "oracle equivalence, random chordal",
        start,
        equivalence("chordal fill-ins on 7-9 vertices, seed 0", &random, &random_reports),
    );

    let start = Instant::now();
    let census_graphs: Vec<Graph> = FamilyId::census().into_iter().map(generate).collect();
    let census_reports: Vec<InstanceReport> =
        census_graphs.par_iter().enumerate().map(|(i, g)| check_instance(i, g, BUDGET)).collect();
    let all: [(&[Graph], &[InstanceReport]); 3] =
        [(&census_graphs, &census_reports), (&six, &six_reports), (&random, &random_reports)];
    ok &= report("certificate soundness", start, soundness(&all));

    let start = Instant::now();
    ok &= report("worked examples", start, worked_examples());

    let start = Instant::now();
    ok &= report("special pair owns maximal separators", start, special_pairs(&random));

    let start = Instant::now();
    let small: Vec<Graph> =
        (1..=6).flat_map(|n| (0..1u64 << (n * (n - 1) / 2)).map(move |m| graph_from_mask(n, m))).collect();
    ok &= report("neighborhoods and middles", start, neighborhoods_and_middles(&all, &small));

    let start = Instant::now();
    let (verdict, info) = captions();
    ok &= report("caption invariants", start, verdict);
    println!("INFO {info}");

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
