//! Edge-list and graph6 text formats.

use thiserror::Error;

use super::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("expected {expected} edge lines, found {found}")]
    MissingEdges { expected: usize, found: usize },
    #[error("graph6: {0}")]
    Graph6(String),
}

const NAMES_TAG: &str = "# names";

/// Parse the `n m` header plus `m` lines of `u v`.
///
/// Blank lines and `#` comments are skipped. A comment of the form
/// `# names a b c ...` with exactly `n` distinct tokens attaches a name table.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut names: Option<Vec<String>> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix(NAMES_TAG) {
            names = Some(rest.split_whitespace().map(str::to_string).collect());
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let fields = parse_pair(line, line_no)?;
        match header {
            None => header = Some(fields),
            Some((n, m)) => {
                if edges.len() == m {
                    return Err(ParseError::Malformed {
                        line: line_no,
                        message: format!("more than the declared {m} edges"),
                    });
                }
                let (u, v) = fields;
                for w in [u, v] {
                    if w >= n {
                        return Err(ParseError::OutOfRange { line: line_no, vertex: w, n });
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop { line: line_no, vertex: u });
                }
                edges.push((u, v));
            }
        }
    }
    let (n, m) =
        header.ok_or(ParseError::Malformed { line: last_line.max(1), message: "missing \"n m\" header".into() })?;
    if edges.len() != m {
        return Err(ParseError::MissingEdges { expected: m, found: edges.len() });
    }
    let g = Graph::from_edges(n, &edges);
    match names {
        Some(names) => {
            let mut sorted = names.clone();
            sorted.sort();
            sorted.dedup();
            if names.len() != n || sorted.len() != n {
                return Err(ParseError::Malformed {
                    line: 0,
                    message: format!("name table must list {n} distinct names"),
                });
            }
            Ok(g.with_names(names))
        }
        None => Ok(g),
    }
}

fn parse_pair(line: &str, line_no: usize) -> Result<(usize, usize), ParseError> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize, ParseError> {
        let tok = it.next().ok_or_else(|| ParseError::Malformed {
            line: line_no,
            message: format!("expected two integers, got {line:?}"),
        })?;
        tok.parse().map_err(|_| ParseError::Malformed {
            line: line_no,
            message: format!("not a non-negative integer: {tok:?}"),
        })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(ParseError::Malformed { line: line_no, message: format!("expected two integers, got {line:?}") });
    }
    Ok((a, b))
}

/// Edge-list text for `g`, including the name table when present.
pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.order(), edges.len());
    if let Some(names) = g.names() {
        out.push_str(NAMES_TAG);
        for name in names {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
    }
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Decode one graph6 string (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(ParseError::Graph6(format!("invalid byte 0x{b:02x}")));
    }
    let (n, body) = decode_order(bytes)?;
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if body.len() != bytes_needed {
        return Err(ParseError::Graph6(format!(
            "expected {bytes_needed} adjacency bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

fn decode_order(bytes: &[u8]) -> Result<(usize, &[u8]), ParseError> {
    let short = || ParseError::Graph6("truncated vertex count".into());
    let first = *bytes.first().ok_or_else(short)?;
    if first != 126 {
        return Ok(((first - 63) as usize, &bytes[1..]));
    }
    let (width, start) = if bytes.get(1) == Some(&126) { (6, 2) } else { (3, 1) };
    let digits = bytes.get(start..start + width).ok_or_else(short)?;
    let n = digits.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    Ok((n, &bytes[start + width..]))
}

/// Encode `g` as graph6 (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            used += 1;
            if used == 6 {
                out.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((acc << (6 - used)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Accept either an edge list or a single graph6 line.
pub fn parse_graph_text(text: &str) -> Result<Graph, ParseError> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
    if first.split_whitespace().count() >= 2 {
        parse_edge_list(text)
    } else {
        parse_graph6(first)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_from_edge_list() {
        let g = parse_edge_list("5 5\n0 1\n1 2\n2 3\n3 4\n1 3").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (1, 3), (2, 3), (3, 4)]);
    }

    #[test]
    fn single_vertex() {
        let g = parse_edge_list("1 0").unwrap();
        assert_eq!((g.order(), g.edge_count()), (1, 0));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = parse_edge_list("3 3\n0 1\n1 0\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn errors_name_the_line() {
        assert_eq!(parse_edge_list("3 1\n1 1\n"), Err(ParseError::SelfLoop { line: 2, vertex: 1 }));
        assert_eq!(parse_edge_list("3 2\n0 1\n0 3\n"), Err(ParseError::OutOfRange { line: 3, vertex: 3, n: 3 }));
        assert!(matches!(parse_edge_list("3 1\n0 x\n"), Err(ParseError::Malformed { line: 2, .. })));
        assert_eq!(parse_edge_list("3 2\n0 1\n"), Err(ParseError::MissingEdges { expected: 2, found: 1 }));
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn names_round_trip() {
        let g = Graph::path(3).with_names(vec!["a".into(), "b".into(), "c".into()]);
        let back = parse_edge_list(&to_edge_list(&g)).unwrap();
        assert_eq!(back, g);
    }

    // Expected strings produced by networkx.to_graph6_bytes (header stripped).
    #[test]
    fn graph6_reference_strings() {
        assert_eq!(to_graph6(&Graph::cycle(4)), "Cl");
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(to_graph6(&Graph::new(1)), "@");
        assert_eq!(parse_graph6("Cl").unwrap(), Graph::cycle(4));
        assert_eq!(parse_graph6(">>graph6<<C~").unwrap(), Graph::complete(4));
        assert_eq!(parse_graph6("@").unwrap(), Graph::new(1));
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(parse_graph6("C").is_err());
        assert!(parse_graph6("C\u{7f}").is_err());
        assert!(parse_graph6("").is_err());
    }

    #[test]
    fn large_order_header() {
        let g = Graph::path(70);
        let text = to_graph6(&g);
        assert!(text.starts_with('~'));
        assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn auto_detect() {
        assert_eq!(parse_graph_text("Cl\n").unwrap(), Graph::cycle(4));
        assert_eq!(parse_graph_text("4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap(), Graph::cycle(4));
    }
}
