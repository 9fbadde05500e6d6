//! Plain-text edge list exchange format.
//!
//! The canonical form is a header line `n m`, followed by exactly `m`
//! lines `u v` with 0-based vertex ids, separated by single spaces and
//! terminated by LF. Lines starting with `#` are comments and are skipped
//! on input; blank lines are tolerated. Writing always produces the
//! canonical form, so a given graph serializes to identical bytes on every
//! run.

use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("missing `n m` header line")]
    MissingHeader,
    #[error("line {line}: expected `{expected}`, got {got:?}")]
    Malformed {
        line: usize,
        expected: &'static str,
        got: String,
    },
    #[error("expected {expected} edges, found {found}")]
    WrongEdgeCount { expected: usize, found: usize },
    #[error("line {line}: {source}")]
    BadGraph { line: usize, source: GraphError },
}

/// Parses the edge list format. Structural violations (self-loops,
/// duplicates, out-of-range endpoints) are reported with the offending
/// line number.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut data_lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = data_lines.next().ok_or(FormatError::MissingHeader)?;
    let mut words = header.split_whitespace();
    let parse_usize = |w: Option<&str>| w.and_then(|w| w.parse::<usize>().ok());
    let (n, m) = match (
        parse_usize(words.next()),
        parse_usize(words.next()),
        words.next(),
    ) {
        (Some(n), Some(m), None) => (n, m),
        _ => {
            return Err(FormatError::Malformed {
                line: header_line,
                expected: "n m",
                got: header.to_string(),
            })
        }
    };

    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(m);
    let mut edge_lines: Vec<usize> = Vec::with_capacity(m);
    for (line, text) in data_lines {
        let mut words = text.split_whitespace();
        let parse_vertex = |w: Option<&str>| w.and_then(|w| w.parse::<VertexId>().ok());
        match (
            parse_vertex(words.next()),
            parse_vertex(words.next()),
            words.next(),
        ) {
            (Some(u), Some(v), None) => {
                edges.push((u, v));
                edge_lines.push(line);
            }
            _ => {
                return Err(FormatError::Malformed {
                    line,
                    expected: "u v",
                    got: text.to_string(),
                })
            }
        }
    }
    if edges.len() != m {
        return Err(FormatError::WrongEdgeCount {
            expected: m,
            found: edges.len(),
        });
    }

    Graph::from_edges(n, edges).map_err(|source| {
        let index = match &source {
            GraphError::SelfLoop { index, .. }
            | GraphError::DuplicateEdge { index, .. }
            | GraphError::VertexOutOfRange { index, .. } => *index,
        };
        FormatError::BadGraph {
            line: edge_lines[index],
            source,
        }
    })
}

/// Serializes `g` in canonical form (header, then edges in id order, LF
/// endings, no comments).
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.vertex_count(), g.edge_count()));
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_input() {
        let g = parse_edge_list("3 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let text = "# a triangle\n\n3 3\n0 1\n# middle note\n1 2\n\n2 0\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn reports_errors_with_line_numbers() {
        assert_eq!(
            parse_edge_list("# nothing\n").unwrap_err(),
            FormatError::MissingHeader
        );
        assert!(matches!(
            parse_edge_list("2 1\n0 x\n"),
            Err(FormatError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("2 2\n0 1\n"),
            Err(FormatError::WrongEdgeCount {
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n# dup next\n1 0\n"),
            Err(FormatError::BadGraph {
                line: 4,
                source: GraphError::DuplicateEdge { .. }
            })
        ));
        assert!(matches!(
            parse_edge_list("1 1\n0 0\n"),
            Err(FormatError::BadGraph {
                line: 2,
                source: GraphError::SelfLoop { .. }
            })
        ));
        assert!(matches!(
            parse_edge_list("2 1\n0 5\n"),
            Err(FormatError::BadGraph {
                line: 2,
                source: GraphError::VertexOutOfRange { .. }
            })
        ));
        assert!(matches!(
            parse_edge_list("2 1\n0 1 9\n"),
            Err(FormatError::Malformed { line: 2, .. })
        ));
    }

    proptest::proptest! {
        #[test]
        fn write_then_parse_is_identity(
            n in 1usize..12,
            picks in proptest::collection::vec(proptest::arbitrary::any::<u32>(), 0..20)
        ) {
            let mut edges = Vec::new();
            for p in picks {
                let u = (p % n as u32) as VertexId;
                let v = ((p / n as u32) % n as u32) as VertexId;
                if u != v && !edges.contains(&(u, v)) && !edges.contains(&(v, u)) {
                    edges.push((u, v));
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            let text = write_edge_list(&g);
            let h = parse_edge_list(&text).unwrap();
            proptest::prop_assert_eq!(g.vertex_count(), h.vertex_count());
            proptest::prop_assert_eq!(g.edges(), h.edges());
            // Canonical output is stable byte-for-byte.
            proptest::prop_assert_eq!(text.clone(), write_edge_list(&h));
            proptest::prop_assert!(text.ends_with('\n') || text.lines().count() == 1);
        }
    }
}
