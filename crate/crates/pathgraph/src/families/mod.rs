//! The minimal non path graphs `F0`..`F16` and the certificates built from them.
//!
//! Vertex names follow the roles the vertices play during extraction
//! (`q`, `s*`, `u*`, `v*`, `x*`, ...); `F1`..`F5` are a universal vertex `z`
//! over a minimal non-interval graph (Lekkerkerker and Boland, 1962).

mod certificate;
mod search;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;

pub use certificate::{validate_certificate, Certificate, CertificateError, CertificateJson};
pub use search::{find_forbidden_bounded, find_forbidden_within, verify_minimal_non_path, ForbiddenSearch, Minimality};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family {0:?}; expected F0..F16")]
    Unknown(String),
    #[error("F{index} takes no parameter")]
    UnexpectedParameter { index: u8 },
    #[error("F{index}({parameter}) is out of range: parameter must be {domain}")]
    OutOfDomain { index: u8, parameter: usize, domain: &'static str },
    #[error("F{index} needs a parameter: {domain}")]
    MissingParameter { index: u8, domain: &'static str },
}

/// `F<index>` with its vertex count when the family is infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyId {
    index: u8,
    parameter: Option<usize>,
}

/// Fixed order of each unparameterized family.
const FIXED: [(u8, usize); 8] = [(1, 8), (2, 7), (3, 8), (4, 8), (6, 8), (7, 9), (8, 8), (9, 8)];

/// Description of the valid parameters and the test for them.
type Domain = (&'static str, fn(usize) -> bool);

fn domain(index: u8) -> Option<Domain> {
    Some(match index {
        0 => ("at least 4", |n| n >= 4),
        5 => ("at least 7", |n| n >= 7),
        10 => ("at least 8", |n| n >= 8),
        11 | 12 => ("a multiple of 4, at least 8", |n| n >= 8 && n % 4 == 0),
        13 | 14 => ("1 mod 4, at least 9", |n| n >= 9 && n % 4 == 1),
        15 => ("2 mod 4, at least 10", |n| n >= 10 && n % 4 == 2),
        16 => ("3 mod 4, at least 11", |n| n >= 11 && n % 4 == 3),
        _ => return None,
    })
}

impl FamilyId {
    pub fn new(index: u8, parameter: Option<usize>) -> Result<Self, FamilyError> {
        if index > 16 {
            return Err(FamilyError::Unknown(format!("F{index}")));
        }
        match (domain(index), parameter) {
            (None, None) => Ok(FamilyId { index, parameter }),
            (None, Some(_)) => Err(FamilyError::UnexpectedParameter { index }),
            (Some((domain, _)), None) => Err(FamilyError::MissingParameter { index, domain }),
            (Some((domain, ok)), Some(p)) if !ok(p) => Err(FamilyError::OutOfDomain { index, parameter: p, domain }),
            (Some(_), Some(_)) => Ok(FamilyId { index, parameter }),
        }
    }

    /// Shorthand that panics on a bad id; for tests and constants.
    pub fn of(index: u8, parameter: Option<usize>) -> Self {
        FamilyId::new(index, parameter).expect("valid family id")
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn parameter(&self) -> Option<usize> {
        self.parameter
    }

    pub fn is_parameterized(&self) -> bool {
        domain(self.index).is_some()
    }

    /// Number of vertices of the generated graph.
    pub fn order(&self) -> usize {
        self.parameter.unwrap_or_else(|| FIXED.iter().find(|&&(i, _)| i == self.index).expect("fixed family").1)
    }

    /// "F11" style name without the parameter.
    pub fn name(&self) -> String {
        format!("F{}", self.index)
    }

    /// Every family member with exactly `n` vertices.
    pub fn all_of_order(n: usize) -> Vec<FamilyId> {
        (0..=16u8)
            .filter_map(|i| match domain(i) {
                Some((_, ok)) => ok(n).then_some(FamilyId { index: i, parameter: Some(n) }),
                None => FIXED
                    .iter()
                    .any(|&(j, order)| j == i && order == n)
                    .then_some(FamilyId { index: i, parameter: None }),
            })
            .collect()
    }

    /// The instances the minimality census runs over: every fixed family and
    /// the smallest few members of each infinite one.
    pub fn census() -> Vec<FamilyId> {
        let mut out = Vec::new();
        let p = |i: u8, ns: &[usize], out: &mut Vec<FamilyId>| {
            out.extend(ns.iter().map(|&n| FamilyId::of(i, Some(n))));
        };
        p(0, &[4, 5, 6, 7, 8], &mut out);
        for i in 1..=4 {
            out.push(FamilyId::of(i, None));
        }
        p(5, &[7, 8, 9], &mut out);
        for i in 6..=9 {
            out.push(FamilyId::of(i, None));
        }
        p(10, &[8, 9, 10], &mut out);
        p(11, &[8, 12], &mut out);
        p(12, &[8, 12], &mut out);
        p(13, &[9, 13], &mut out);
        p(14, &[9, 13], &mut out);
        p(15, &[10, 14], &mut out);
        p(16, &[11, 15], &mut out);
        out
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter {
            Some(p) => write!(f, "F{}({p})", self.index),
            None => write!(f, "F{}", self.index),
        }
    }
}

/// Parses "F11(8)", "F11" (no parameter), "F6".
impl FromStr for FamilyId {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || FamilyError::Unknown(s.to_string());
        let body = s.trim().strip_prefix(['F', 'f']).ok_or_else(unknown)?;
        let (index, parameter) = match body.split_once('(') {
            Some((i, rest)) => {
                let p = rest.strip_suffix(')').ok_or_else(unknown)?;
                (i, Some(p.parse::<usize>().map_err(|_| unknown())?))
            }
            None => (body, None),
        };
        FamilyId::new(index.parse().map_err(|_| unknown())?, parameter)
    }
}

/// Small helper for building named graphs.
struct Builder {
    names: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn new() -> Self {
        Builder { names: Vec::new(), edges: Vec::new() }
    }

    fn id(&mut self, name: &str) -> usize {
        match self.names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                self.names.push(name.to_string());
                self.names.len() - 1
            }
        }
    }

    fn vertices(&mut self, names: &[String]) {
        for n in names {
            self.id(n);
        }
    }

    fn edge(&mut self, a: &str, b: &str) {
        let (a, b) = (self.id(a), self.id(b));
        self.edges.push((a, b));
    }

    fn star(&mut self, center: &str, others: &[&str]) {
        for o in others {
            self.edge(center, o);
        }
    }

    fn clique(&mut self, names: &[String]) {
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                self.edge(a, b);
            }
        }
    }

    fn cone(&mut self, apex: &str) {
        let all: Vec<String> = self.names.clone();
        for v in &all {
            self.edge(apex, v);
        }
    }

    fn build(self) -> Graph {
        Graph::from_edges(self.names.len(), &self.edges).with_names(self.names)
    }
}

fn seq(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

/// `s`, `t` adjacent hubs with common neighbor `q`; path `v x1 .. xr w` with
/// every `xi` adjacent to both hubs, `v` to `s` and `w` to `t`.
fn tent(b: &mut Builder, r: usize) {
    let xs = seq("x", 1..=r);
    b.vertices(&["s", "t", "q"].map(String::from));
    b.edge("s", "t");
    b.star("q", &["s", "t"]);
    let mut path = vec!["v".to_string()];
    path.extend(xs.iter().cloned());
    path.push("w".to_string());
    for x in &xs {
        b.star(x, &["s", "t"]);
    }
    for p in path.windows(2) {
        b.edge(&p[0], &p[1]);
    }
    b.edge("v", "s");
    b.edge("w", "t");
}

/// Path `x1 .. xr` with hub `s` adjacent to all of it; pendants `v` at `x1`,
/// `w` at `xr` and `q` at `s`.
fn net(b: &mut Builder, r: usize) {
    let xs = seq("x", 1..=r);
    b.vertices(&xs);
    for p in xs.windows(2) {
        b.edge(&p[0], &p[1]);
    }
    for x in &xs {
        b.edge("s", x);
    }
    b.edge("v", &xs[0]);
    b.edge("w", &xs[r - 1]);
    b.edge("q", "s");
}

/// Build the family member; vertex names are set on the returned graph.
pub fn generate(family: FamilyId) -> Graph {
    let mut b = Builder::new();
    let n = family.order();
    match family.index {
        0 => {
            let cs = seq("c", 0..=n - 1);
            b.vertices(&cs);
            for i in 0..n {
                b.edge(&cs[i], &cs[(i + 1) % n]);
            }
        }
        1 => {
            for arm in ["a", "b", "d"] {
                b.edge("c", &format!("{arm}1"));
                b.edge(&format!("{arm}1"), &format!("{arm}2"));
            }
            b.cone("z");
        }
        2 | 3 => {
            tent(&mut b, family.index as usize - 1);
            b.cone("z");
        }
        4 => {
            let ps = seq("p", 1..=5);
            b.vertices(&ps);
            for p in ps.windows(2) {
                b.edge(&p[0], &p[1]);
            }
            for p in &ps {
                b.edge("s", p);
            }
            b.edge("q", "p3");
            b.cone("z");
        }
        5 => {
            net(&mut b, n - 5);
            b.cone("z");
        }
        6 => {
            b.edge("a", "b");
            for s in ["sq", "su", "sx"] {
                b.star(s, &["a", "b"]);
            }
            b.star("q", &["sq", "b"]);
            b.star("u", &["su", "a"]);
            b.star("x", &["sx", "a"]);
        }
        7 => {
            b.clique(&["a", "c", "d"].map(String::from));
            for s in ["sq", "su", "sx"] {
                b.star(s, &["a", "c", "d"]);
            }
            b.star("q", &["sq", "c"]);
            b.star("u", &["su", "a"]);
            b.star("x", &["sx", "d"]);
        }
        8 => {
            b.star("w", &["b", "c"]);
            b.star("u", &["c", "su", "x1"]);
            b.star("q", &["b", "x1", "sq"]);
            b.star("b", &["c", "x1", "sq", "su"]);
            b.star("c", &["su", "x1", "sq"]);
            b.edge("su", "x1");
            b.edge("x1", "sq");
        }
        9 => {
            b.star("w", &["b", "c"]);
            b.star("u", &["c", "x1"]);
            b.star("q", &["b", "x2", "sq"]);
            b.star("b", &["c", "x2", "sq", "x1"]);
            b.edge("x1", "x2");
            b.edge("x2", "sq");
            b.star("c", &["x2", "sq", "x1"]);
        }
        10 => tent(&mut b, n - 5),
        11 | 12 => {
            let m = n / 2 - 1;
            let us = seq("u", 1..=m);
            let vs = seq("v", 1..=m);
            b.vertices(&us);
            b.vertices(&vs);
            b.vertices(&["a", "b"].map(String::from));
            b.clique(&vs);
            for j in 0..m {
                b.edge(&us[j], &vs[(j + m - 1) % m]);
                b.edge(&us[j], &vs[j]);
            }
            for v in &vs {
                b.star(v, &["a", "b"]);
            }
            if family.index == 12 {
                b.edge("b", "u1");
            }
        }
        13 => {
            let p = (n - 5) / 2;
            let mut d = seq("s", 0..=p);
            d.push("x1".to_string());
            let vs = seq("v", 0..=p + 1);
            b.vertices(&["q".to_string()]);
            b.vertices(&vs);
            b.vertices(&d);
            b.clique(&d);
            for s in &d[..=p] {
                b.edge("q", s);
            }
            for s in &d[1..] {
                b.edge("v0", s);
            }
            for i in 1..=p + 1 {
                b.edge(&vs[i], &d[i - 1]);
                b.edge(&vs[i], &d[i]);
            }
        }
        14 | 15 => {
            let p = if family.index == 14 { (n - 5) / 2 } else { (n - 6) / 2 };
            let ss = seq("s", 0..=p);
            let vs = seq("v", 0..=p + 1);
            let last = if family.index == 14 { "x1" } else { "x2" };
            let mut clique = ss.clone();
            clique.push("x1".to_string());
            if family.index == 15 {
                clique.push("x2".to_string());
            }
            b.vertices(&["q".to_string()]);
            b.vertices(&vs);
            b.vertices(&ss);
            b.clique(&clique);
            for s in &ss {
                b.edge("q", s);
            }
            b.star("v0", &["x1", "s0"]);
            for i in 1..=p {
                b.edge(&vs[i], &ss[i - 1]);
                b.edge(&vs[i], &ss[i]);
            }
            b.star(&vs[p + 1], &[&ss[p], last]);
        }
        16 => {
            let k = (n - 3) / 4;
            let xs = seq("x", 0..=2 * k - 1);
            b.vertices(&["q".to_string()]);
            b.vertices(&seq("u", 1..=k));
            b.vertices(&seq("v", 0..=k - 1));
            b.vertices(&xs);
            b.vertices(&["sq", "su"].map(String::from));
            b.clique(&xs);
            for x in &xs {
                b.star(x, &["sq", "su"]);
            }
            b.star("q", &["sq", "x0"]);
            for i in 0..k {
                b.edge(&format!("v{i}"), &xs[2 * i]);
                b.edge(&format!("v{i}"), &xs[2 * i + 1]);
            }
            for i in 1..k {
                b.edge(&format!("u{i}"), &xs[2 * i - 1]);
                b.edge(&format!("u{i}"), &xs[2 * i]);
            }
            b.star(&format!("u{k}"), &[&xs[2 * k - 1], "su"]);
        }
        _ => unreachable!("family index checked on construction"),
    }
    let g = b.build();
    debug_assert_eq!(g.order(), n, "{family} has the wrong order");
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplicial_count(g: &Graph) -> usize {
        (0..g.order()).filter(|&v| g.is_clique(g.neighbors(v))).count()
    }

    fn universal(g: &Graph) -> bool {
        (0..g.order()).any(|v| g.degree(v) + 1 == g.order())
    }

    #[test]
    fn orders_match_parameters() {
        for f in FamilyId::census() {
            assert_eq!(generate(f).order(), f.order(), "{f}");
        }
    }

    #[test]
    fn domains() {
        assert!(FamilyId::new(11, Some(9)).is_err());
        assert!(FamilyId::new(11, Some(4)).is_err());
        assert!(FamilyId::new(6, Some(8)).is_err());
        assert!(FamilyId::new(0, None).is_err());
        assert!(FamilyId::new(17, None).is_err());
        assert!(FamilyId::new(16, Some(15)).is_ok());
        assert_eq!("F11(8)".parse::<FamilyId>(), Ok(FamilyId::of(11, Some(8))));
        assert_eq!("F6".parse::<FamilyId>(), Ok(FamilyId::of(6, None)));
        assert!("G3".parse::<FamilyId>().is_err());
    }

    #[test]
    fn small_members() {
        let c5 = generate(FamilyId::of(0, Some(5)));
        assert_eq!((c5.order(), c5.edge_count(), simplicial_count(&c5)), (5, 5, 0));
        let f11 = generate(FamilyId::of(11, Some(8)));
        assert_eq!((f11.order(), f11.edge_count()), (8, 15));
        let simp: Vec<String> = (0..8).filter(|&v| f11.is_clique(f11.neighbors(v))).map(|v| f11.name(v)).collect();
        // a and b are simplicial too: their neighborhoods are the v-clique.
        assert_eq!(simp, ["u1", "u2", "u3", "a", "b"]);
        let f10 = generate(FamilyId::of(10, Some(8)));
        assert!(!universal(&f10) && simplicial_count(&f10) == 3);
    }

    #[test]
    fn all_of_order_lists_families() {
        let eight: Vec<String> = FamilyId::all_of_order(8).iter().map(|f| f.to_string()).collect();
        assert_eq!(eight, ["F0(8)", "F1", "F3", "F4", "F5(8)", "F6", "F8", "F9", "F10(8)", "F11(8)", "F12(8)"]);
    }
}
