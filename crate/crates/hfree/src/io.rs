//! File formats.
//!
//! The native format is a plain edge list:
//!
//! ```text
//! n m
//! u v        (m lines, 0-based endpoints)
//! ```
//!
//! DIMACS coloring files (`c` comments, `p edge n m`, `e u v` with 1-based
//! endpoints) are read as well, detected by their leading `c`/`p` line.
//! [`serialize_edge_list`] writes the native format with edges sorted, so
//! parse/serialize round-trips are bit-exact.
//!
//! Pattern files are edge lists with an optional trailing `root r` line.
//! Vertex-set files are whitespace-separated indices; `#` starts a comment.

use crate::graph::{Graph, VertexSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("malformed header at line {line}: expected \"n m\"")]
    BadHeader { line: usize },
    #[error("malformed edge at line {line}")]
    BadEdge { line: usize },
    #[error("loop at line {line}")]
    Loop { line: usize },
    #[error("duplicate edge at line {line}")]
    Duplicate { line: usize },
    #[error("vertex out of range at line {line}")]
    OutOfRange { line: usize },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("unexpected content at line {line}")]
    Trailing { line: usize },
    #[error("bad token {token:?} at line {line}")]
    BadToken { token: String, line: usize },
    #[error("missing \"p edge\" header")]
    MissingProblemLine,
}

/// Accumulates validated edges, attributing each failure to its input line.
struct EdgeAccum {
    n: usize,
    edges: Vec<(usize, usize)>,
    seen: std::collections::HashSet<(usize, usize)>,
}

impl EdgeAccum {
    fn new(n: usize) -> Self {
        EdgeAccum {
            n,
            edges: Vec::new(),
            seen: std::collections::HashSet::new(),
        }
    }

    fn push(&mut self, u: usize, v: usize, line: usize) -> Result<(), ParseError> {
        if u >= self.n || v >= self.n {
            return Err(ParseError::OutOfRange { line });
        }
        if u == v {
            return Err(ParseError::Loop { line });
        }
        if !self.seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::Duplicate { line });
        }
        self.edges.push((u, v));
        Ok(())
    }

    fn build(self) -> Graph {
        Graph::from_edges(self.n, &self.edges).expect("edges validated line by line")
    }
}

fn parse_two(s: &str) -> Option<(usize, usize)> {
    let mut it = s.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

/// Parses the native `n m` edge-list format.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(ParseError::Empty)?;
    let (n, m) = parse_two(header).ok_or(ParseError::BadHeader { line: 1 })?;
    let mut acc = EdgeAccum::new(n);
    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        if acc.edges.len() == m {
            return Err(ParseError::Trailing { line });
        }
        let (u, v) = parse_two(raw).ok_or(ParseError::BadEdge { line })?;
        acc.push(u, v, line)?;
    }
    if acc.edges.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: acc.edges.len(),
        });
    }
    Ok(acc.build())
}

/// Parses DIMACS `.col` content (`p edge n m`, `e u v` 1-based).
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut acc: Option<EdgeAccum> = None;
    let mut expected = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('c') {
            continue;
        }
        if let Some(rest) = s.strip_prefix("p ") {
            if acc.is_some() {
                return Err(ParseError::Trailing { line });
            }
            let mut it = rest.split_whitespace();
            if it.next() != Some("edge") {
                return Err(ParseError::BadHeader { line });
            }
            let n: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(ParseError::BadHeader { line })?;
            expected = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(ParseError::BadHeader { line })?;
            if it.next().is_some() {
                return Err(ParseError::BadHeader { line });
            }
            acc = Some(EdgeAccum::new(n));
        } else if let Some(rest) = s.strip_prefix("e ") {
            let acc = acc.as_mut().ok_or(ParseError::MissingProblemLine)?;
            let (u1, v1) = parse_two(rest).ok_or(ParseError::BadEdge { line })?;
            if u1 == 0 || v1 == 0 {
                return Err(ParseError::OutOfRange { line });
            }
            acc.push(u1 - 1, v1 - 1, line)?;
        } else {
            return Err(ParseError::BadToken {
                token: s.chars().take(8).collect(),
                line,
            });
        }
    }
    let acc = acc.ok_or(ParseError::MissingProblemLine)?;
    if acc.edges.len() != expected {
        return Err(ParseError::EdgeCount {
            expected,
            found: acc.edges.len(),
        });
    }
    Ok(acc.build())
}

/// Reads either supported graph format, picking by the first non-blank line.
pub fn parse_graph_auto(text: &str) -> Result<Graph, ParseError> {
    let first = text.lines().map(str::trim).find(|s| !s.is_empty());
    match first {
        Some(s) if s.starts_with('c') || s.starts_with('p') => parse_dimacs(text),
        Some(_) => parse_edge_list(text),
        None => Err(ParseError::Empty),
    }
}

/// Writes the native edge-list format; edges sorted, one per line, trailing
/// newline. Parsing this text reproduces the graph exactly.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses a pattern file: an edge list with an optional final `root r` line.
pub fn parse_pattern_file(text: &str) -> Result<(Graph, Option<usize>), ParseError> {
    let mut root = None;
    let mut body = String::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if let Some(rest) = s.strip_prefix("root ") {
            if root.is_some() {
                return Err(ParseError::Trailing { line });
            }
            let r: usize = rest.trim().parse().map_err(|_| ParseError::BadToken {
                token: rest.trim().to_string(),
                line,
            })?;
            root = Some((r, line));
        } else if root.is_some() && !s.is_empty() {
            return Err(ParseError::Trailing { line });
        } else {
            body.push_str(raw);
            body.push('\n');
        }
    }
    let g = parse_edge_list(&body)?;
    if let Some((r, line)) = root {
        if r >= g.n() {
            return Err(ParseError::OutOfRange { line });
        }
        return Ok((g, Some(r)));
    }
    Ok((g, None))
}

/// Parses a whitespace-separated list of vertex indices; `#` starts a
/// comment that runs to the end of the line.
pub fn parse_vertex_set(text: &str, host_n: usize) -> Result<VertexSet, ParseError> {
    let mut members = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.split('#').next().unwrap_or("");
        for token in s.split_whitespace() {
            let v: usize = token.parse().map_err(|_| ParseError::BadToken {
                token: token.to_string(),
                line,
            })?;
            if v >= host_n {
                return Err(ParseError::OutOfRange { line });
            }
            members.push(v);
        }
    }
    Ok(VertexSet::from_vec(host_n, members).expect("range checked above"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path_on_three() {
        let g = parse_edge_list("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn parses_single_vertex() {
        let g = parse_edge_list("1 0\n").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn rejects_loop_with_line_number() {
        assert_eq!(
            parse_edge_list("2 1\n0 0\n"),
            Err(ParseError::Loop { line: 2 })
        );
    }

    #[test]
    fn rejects_duplicates_and_range_errors() {
        assert_eq!(
            parse_edge_list("3 2\n0 1\n1 0\n"),
            Err(ParseError::Duplicate { line: 3 })
        );
        assert_eq!(
            parse_edge_list("3 1\n0 3\n"),
            Err(ParseError::OutOfRange { line: 2 })
        );
        assert_eq!(
            parse_edge_list("3 2\n0 1\n"),
            Err(ParseError::EdgeCount {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            parse_edge_list("2 1\n0 1\n1 0\n"),
            Err(ParseError::Trailing { line: 3 })
        );
        assert_eq!(parse_edge_list(""), Err(ParseError::Empty));
        assert_eq!(
            parse_edge_list("x y\n"),
            Err(ParseError::BadHeader { line: 1 })
        );
    }

    #[test]
    fn round_trip_is_bit_exact() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..25 {
            let n = rng.random_range(1..20);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.3) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let text = serialize_edge_list(&g);
            let g2 = parse_edge_list(&text).unwrap();
            assert_eq!(g, g2);
            assert_eq!(serialize_edge_list(&g2), text);
        }
    }

    #[test]
    fn dimacs_reads_one_based_endpoints() {
        let text = "c a comment\np edge 3 2\ne 1 2\ne 2 3\n";
        assert_eq!(parse_dimacs(text).unwrap(), Graph::path(3));
        assert_eq!(parse_graph_auto(text).unwrap(), Graph::path(3));
        assert_eq!(parse_graph_auto("3 2\n0 1\n1 2\n").unwrap(), Graph::path(3));
    }

    #[test]
    fn dimacs_error_paths() {
        assert_eq!(parse_dimacs("e 1 2\n"), Err(ParseError::MissingProblemLine));
        assert_eq!(
            parse_dimacs("p edge 2 1\ne 0 1\n"),
            Err(ParseError::OutOfRange { line: 2 })
        );
        assert_eq!(
            parse_dimacs("p edge 2 1\ne 1 2\ne 2 1\n"),
            Err(ParseError::Duplicate { line: 3 })
        );
    }

    #[test]
    fn pattern_file_with_root() {
        let (g, root) = parse_pattern_file("3 2\n0 1\n1 2\nroot 2\n").unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(root, Some(2));
        let (_, none) = parse_pattern_file("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(none, None);
        assert_eq!(
            parse_pattern_file("2 1\n0 1\nroot 5\n"),
            Err(ParseError::OutOfRange { line: 3 })
        );
    }

    #[test]
    fn vertex_set_files() {
        let s = parse_vertex_set("0 2 # picked pair\n5\n", 6).unwrap();
        assert_eq!(s.members(), &[0, 2, 5]);
        assert_eq!(
            parse_vertex_set("7", 6),
            Err(ParseError::OutOfRange { line: 1 })
        );
        assert!(parse_vertex_set("a", 6).is_err());
    }
}
