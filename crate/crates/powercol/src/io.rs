//! Edge-list and DIMACS graph files.
//!
//! Edge list: a header `n m`, then `m` lines `u v` with `0 ≤ u, v < n`.
//! DIMACS: `p edge n m` then `e u v` with 1-based ids. Lines starting with
//! `#` (or `c` in DIMACS) are comments; blank lines are skipped.

use std::fmt::Write as _;
use std::path::Path;

use powercol_core::Graph;

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("empty document")]
    Empty,
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn malformed(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Malformed { line, msg: msg.into() }
}

fn numbers<const N: usize>(line: usize, fields: &[&str]) -> Result<[usize; N], ParseError> {
    if fields.len() != N {
        return Err(malformed(line, format!("expected {N} fields, found {}", fields.len())));
    }
    let mut out = [0; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().map_err(|_| malformed(line, format!("not a vertex count or id: {f:?}")))?;
    }
    Ok(out)
}

/// Parses either format, picking DIMACS when the first content line starts
/// with `p `.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#') && !is_dimacs_comment(l));
    let Some((first_no, first)) = lines.next() else {
        return Err(ParseError::Empty);
    };
    if first.starts_with("p ") {
        return parse_dimacs(first_no, first, lines);
    }
    let [n, m] = numbers::<2>(first_no, &first.split_whitespace().collect::<Vec<_>>())?;
    let mut edges = Vec::with_capacity(m);
    for (no, l) in lines {
        let [u, v] = numbers::<2>(no, &l.split_whitespace().collect::<Vec<_>>())?;
        check_edge(no, u, v, n)?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(malformed(first_no, format!("header declares {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, edges).map_err(|e| malformed(first_no, e.to_string()))
}

fn is_dimacs_comment(l: &str) -> bool {
    l == "c" || l.starts_with("c ")
}

fn check_edge(line: usize, u: usize, v: usize, n: usize) -> Result<(), ParseError> {
    if u >= n || v >= n {
        return Err(malformed(line, format!("vertex {} out of range for n = {n}", u.max(v))));
    }
    if u == v {
        return Err(malformed(line, format!("self-loop at {u}")));
    }
    Ok(())
}

fn parse_dimacs<'a>(
    header_no: usize,
    header: &str,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Graph, ParseError> {
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || !matches!(fields[1], "edge" | "col") {
        return Err(malformed(header_no, "expected `p edge n m`"));
    }
    let [n, m] = numbers::<2>(header_no, &fields[2..])?;
    let mut edges = Vec::with_capacity(m);
    for (no, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.first() != Some(&"e") {
            return Err(malformed(no, "expected `e u v`"));
        }
        let [u, v] = numbers::<2>(no, &fields[1..])?;
        if u == 0 || v == 0 {
            return Err(malformed(no, "DIMACS ids start at 1"));
        }
        check_edge(no, u - 1, v - 1, n)?;
        edges.push((u - 1, v - 1));
    }
    if edges.len() != m {
        return Err(malformed(header_no, format!("header declares {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, edges).map_err(|e| malformed(header_no, e.to_string()))
}

/// Edge-list text with edges sorted, `u < v`.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_graph(path: &Path) -> Result<Graph, ParseError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| ParseError::Io { path: path.display().to_string(), source })?;
    parse_graph(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_lists() {
        let p3 = parse_graph("3 2\n0 1\n1 2").unwrap();
        assert_eq!((p3.n(), p3.m()), (3, 2));
        let k1 = parse_graph("1 0").unwrap();
        assert_eq!((k1.n(), k1.m()), (1, 0));
        let tri = parse_graph("# triangle\n3 3\n0 1\n1 2\n\n0 2\n").unwrap();
        assert_eq!(tri.max_degree(), 2);
        let dup = parse_graph("2 2\n0 1\n1 0").unwrap();
        assert_eq!(dup.m(), 1);
    }

    #[test]
    fn rejects_with_line_numbers() {
        let err = |t: &str| match parse_graph(t) {
            Err(ParseError::Malformed { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(err("3 1\n0 3"), 2);
        assert_eq!(err("3 1\n\n1 1"), 3);
        assert_eq!(err("3 1\n0 x"), 2);
        assert_eq!(err("3 2\n0 1"), 1);
        assert!(matches!(parse_graph("# nothing\n"), Err(ParseError::Empty)));
    }

    #[test]
    fn dimacs() {
        let g = parse_graph("c example\np edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), [(0, 1), (1, 2)]);
        assert!(parse_graph("p edge 2 1\ne 0 1").is_err());
        assert!(parse_graph("p edge 2 1\ne 1 3").is_err());
    }

    #[test]
    fn round_trip() {
        let g = parse_graph("4 3\n3 0\n2 1\n0 1").unwrap();
        let text = serialize_graph(&g);
        assert_eq!(text, "4 3\n0 1\n0 3\n1 2\n");
        assert_eq!(parse_graph(&text).unwrap(), g);
    }
}
