//! Instance generation and the recognizer-versus-oracle comparison.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::families::validate_certificate;
use crate::graph::{induced_subgraph, Graph};
use crate::oracle::{cpt_exists_bruteforce, CptVerdict, OracleBudget};
use crate::recognizer::{try_recognize, RecognitionResult};

/// The graph on `0..n` whose edges are the set bits of `mask`, pairs `(i, j)`
/// with `i < j` numbered in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new(n);
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    g
}

pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Chordal supergraph by elimination along a random order: each eliminated
/// vertex turns its remaining neighbors into a clique.
pub fn chordal_fill_in(g: &Graph, rng: &mut impl Rng) -> Graph {
    let n = g.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut h = g.clone();
    let mut gone = vec![false; n];
    for &v in &order {
        let later: Vec<usize> = h.neighbors(v).iter().filter(|&w| !gone[w]).collect();
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                h.add_edge(a, b);
            }
        }
        gone[v] = true;
    }
    h
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    /// Both sides agree; `true` for a path graph.
    Agree(bool),
    Mismatch(String),
    /// The oracle could not decide within budget.
    OverBudget,
    /// A returned certificate or tree failed its independent check.
    Unsound(String),
    /// The recognizer reported an internal inconsistency.
    Internal(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    pub id: usize,
    pub order: usize,
    pub edges: usize,
    pub outcome: Outcome,
    pub fallbacks: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Recognize `G`, check the answer independently and compare with the oracle.
pub fn check_instance(id: usize, g: &Graph, budget: OracleBudget) -> InstanceReport {
    let start = Instant::now();
    let recognized = try_recognize(g);
    let elapsed = start.elapsed();
    let report = |outcome, fallbacks| InstanceReport {
        id,
        order: g.order(),
        edges: g.edge_count(),
        outcome,
        fallbacks,
        elapsed,
    };
    let (result, stats) = match recognized {
        Ok(r) => r,
        Err(e) => return report(Outcome::Internal(e.to_string()), 0),
    };
    let oracle = cpt_exists_bruteforce(g, budget);
    let outcome = match (&result, &oracle) {
        (_, CptVerdict::OverBudget { .. }) => Outcome::OverBudget,
        (RecognitionResult::PathGraph(t), CptVerdict::Tree(_)) => {
            if t.is_clique_path_tree(g) {
                Outcome::Agree(true)
            } else {
                Outcome::Unsound("returned tree fails the clique path tree check".into())
            }
        }
        (RecognitionResult::NotPathGraph(c), CptVerdict::NoTree { .. }) => {
            let (witness, _) = induced_subgraph(g, &g.set_of(&c.witness));
            if validate_certificate(g, c) != Ok(true) {
                Outcome::Unsound(format!("certificate {} does not embed", c.family))
            } else if cpt_exists_bruteforce(&witness, budget).is_tree() {
                Outcome::Unsound(format!("witness of {} has a clique path tree", c.family))
            } else {
                Outcome::Agree(false)
            }
        }
        (r, o) => Outcome::Mismatch(format!(
            "recognizer says path graph = {}, oracle says {}",
            r.is_path_graph(),
            if o.is_tree() { "tree" } else { "no tree" }
        )),
    };
    report(outcome, stats.fallbacks())
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Every graph on up to this many vertices.
    pub exhaustive_up_to: usize,
    /// Random instances per order in `random_orders`.
    pub samples: usize,
    pub random_orders: Vec<usize>,
    /// Edge probabilities, cycled through by instance number.
    pub densities: Vec<f64>,
    /// Also add the chordal fill-in of each random graph.
    pub chordal_variants: bool,
    pub seed: u64,
    pub budget: OracleBudget,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            exhaustive_up_to: 6,
            samples: 1000,
            random_orders: vec![7, 8, 9],
            densities: vec![0.5],
            chordal_variants: true,
            seed: 0,
            budget: OracleBudget::new(9, 16),
        }
    }
}

/// All instances of a sweep, in id order.
pub fn sweep_instances(config: &SweepConfig) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=config.exhaustive_up_to {
        let pairs = n * (n - 1) / 2;
        out.extend((0..1u64 << pairs).map(|mask| graph_from_mask(n, mask)));
    }
    out.extend(random_instances(config));
    out
}

/// The random part alone: per order, `samples` graphs and their fill-ins.
pub fn random_instances(config: &SweepConfig) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::new();
    for &n in &config.random_orders {
        for i in 0..config.samples {
            let p = config.densities[i % config.densities.len()];
            let g = random_graph(n, p, &mut rng);
            let h = chordal_fill_in(&g, &mut rng);
            out.push(g);
            if config.chordal_variants {
                out.push(h);
            }
        }
    }
    out
}

/// Only the chordal fill-ins, `samples` per order.
pub fn random_chordal_instances(config: &SweepConfig) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::new();
    for &n in &config.random_orders {
        for i in 0..config.samples {
            let p = config.densities[i % config.densities.len()];
            let g = random_graph(n, p, &mut rng);
            out.push(chordal_fill_in(&g, &mut rng));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub instances: usize,
    pub path_graphs: usize,
    pub non_path_graphs: usize,
    pub fallbacks: usize,
    /// Instances that did not agree cleanly, sorted by id.
    pub failures: Vec<InstanceReport>,
    pub p50_micros: u128,
    pub p99_micros: u128,
    pub max_micros: u128,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_instances(graphs: &[Graph], budget: OracleBudget, seed: u64) -> SweepReport {
    let mut reports: Vec<InstanceReport> =
        graphs.par_iter().enumerate().map(|(id, g)| check_instance(id, g, budget)).collect();
    reports.sort_by_key(|r| r.id);
    let mut times: Vec<u128> = reports.iter().map(|r| r.elapsed.as_micros()).collect();
    times.sort_unstable();
    let pct = |p: f64| times.get(((times.len() as f64 - 1.0) * p).round() as usize).copied().unwrap_or(0);
    let count = |want: bool| reports.iter().filter(|r| r.outcome == Outcome::Agree(want)).count();
    SweepReport {
        seed,
        instances: reports.len(),
        path_graphs: count(true),
        non_path_graphs: count(false),
        fallbacks: reports.iter().map(|r| r.fallbacks).sum(),
        p50_micros: pct(0.5),
        p99_micros: pct(0.99),
        max_micros: times.last().copied().unwrap_or(0),
        failures: reports.into_iter().filter(|r| !matches!(r.outcome, Outcome::Agree(_))).collect(),
    }
}

pub fn run_sweep(config: &SweepConfig) -> SweepReport {
    run_instances(&sweep_instances(config), config.budget, config.seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::is_chordal;

    #[test]
    fn masks_cover_all_pairs() {
        assert_eq!(graph_from_mask(4, 0b111111).edge_count(), 6);
        assert!(graph_from_mask(3, 0b001).has_edge(0, 1));
        assert!(graph_from_mask(3, 0b100).has_edge(1, 2));
    }

    #[test]
    fn fill_in_is_chordal_and_deterministic() {
        let config = SweepConfig { samples: 50, ..SweepConfig::default() };
        let a = random_chordal_instances(&config);
        assert!(a.iter().all(is_chordal));
        let b = random_chordal_instances(&config);
        assert!(a.iter().zip(&b).all(|(x, y)| x.edges() == y.edges()));
    }
}
