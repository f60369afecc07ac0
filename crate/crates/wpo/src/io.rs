//! Text formats: weighted graphs (`p wpo <n> <m>` header, 1-indexed
//! edge lines), orientation witnesses (`<tail> <head>` per edge), and
//! PACE-style tree decompositions (`s td` header, `b` bag lines, bag
//! tree edges).

use crate::decomposition::TreeDecomposition;
use crate::graph::{GraphError, Orientation, WeightedGraph};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: expected {expected} fields, got {got}")]
    FieldCount {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("missing header line")]
    MissingHeader,
    #[error("declared {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("declared {declared} bags, found {found}")]
    BagCountMismatch { declared: usize, found: usize },
    #[error("line {line}: vertex {v} out of range 1..={n}")]
    VertexOutOfRange { line: usize, v: usize, n: usize },
    #[error("orientation lists {found} arcs, graph has {expected} edges")]
    IncompleteOrientation { expected: usize, found: usize },
    #[error("line {line}: arc {u} {v} does not match any graph edge (or repeats one)")]
    UnknownArc { line: usize, u: usize, v: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn bad(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        msg: msg.into(),
    }
}

fn parse_num(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| bad(line, format!("not a number: {tok:?}")))
}

/// Parse a graph file: optional `c` comment lines, one `p wpo <n> <m>`
/// header, then `<u> <v> <w>` edge lines with 1-indexed endpoints.
pub fn parse_graph(text: &str) -> Result<WeightedGraph, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None; // (line, n, m)
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = s.split_whitespace().collect();
        if header.is_none() {
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "wpo" {
                return Err(bad(line, "expected header `p wpo <n> <m>`"));
            }
            header = Some((
                line,
                parse_num(fields[2], line)?,
                parse_num(fields[3], line)?,
            ));
            continue;
        }
        if fields.len() != 3 {
            return Err(ParseError::FieldCount {
                line,
                expected: 3,
                got: fields.len(),
            });
        }
        let n = header.unwrap().1;
        let u = parse_num(fields[0], line)?;
        let v = parse_num(fields[1], line)?;
        for &x in &[u, v] {
            if x == 0 || x > n {
                return Err(ParseError::VertexOutOfRange { line, v: x, n });
            }
        }
        let w = fields[2]
            .parse::<u64>()
            .map_err(|_| bad(line, format!("not a weight: {:?}", fields[2])))?;
        edges.push((u - 1, v - 1, w));
        edge_lines.push(line);
    }
    let Some((_, n, m)) = header else {
        return Err(ParseError::MissingHeader);
    };
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(WeightedGraph::new(n, &edges)?)
}

/// Emit a graph with optional leading comment lines (passed without the
/// `c ` prefix). Inverse of [`parse_graph`] up to comments.
pub fn emit_graph(g: &WeightedGraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "c {c}").unwrap();
    }
    writeln!(out, "p wpo {} {}", g.n(), g.m()).unwrap();
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u + 1, e.v + 1, e.w).unwrap();
    }
    out
}

/// Parse an orientation file against `g`: one `<tail> <head>` line per
/// edge in any order, 1-indexed, matched as unordered pairs. Every edge
/// must be covered exactly once.
pub fn parse_orientation(text: &str, g: &WeightedGraph) -> Result<Orientation, ParseError> {
    use std::collections::HashMap;
    let mut lookup: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (eid, e) in g.edges().iter().enumerate() {
        lookup
            .entry((e.u.min(e.v), e.u.max(e.v)))
            .or_default()
            .push(eid);
    }
    let mut dir: Vec<Option<bool>> = vec![None; g.m()];
    let mut found = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = s.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(ParseError::FieldCount {
                line,
                expected: 2,
                got: fields.len(),
            });
        }
        let t = parse_num(fields[0], line)?;
        let h = parse_num(fields[1], line)?;
        for &x in &[t, h] {
            if x == 0 || x > g.n() {
                return Err(ParseError::VertexOutOfRange {
                    line,
                    v: x,
                    n: g.n(),
                });
            }
        }
        let (tail, head) = (t - 1, h - 1);
        let key = (tail.min(head), tail.max(head));
        // parallel edges cannot occur, but an already-used pair must not
        // absorb a duplicate line
        let eid = lookup
            .get_mut(&key)
            .and_then(|v| v.pop())
            .ok_or(ParseError::UnknownArc { line, u: t, v: h })?;
        dir[eid] = Some(g.edge(eid).u == tail);
        found += 1;
    }
    if found != g.m() {
        return Err(ParseError::IncompleteOrientation {
            expected: g.m(),
            found,
        });
    }
    Ok(Orientation::new(
        dir.into_iter().map(|d| d.unwrap()).collect(),
    ))
}

/// Emit an orientation as 1-indexed `<tail> <head>` lines in edge order.
pub fn emit_orientation(g: &WeightedGraph, d: &Orientation) -> String {
    let mut out = String::new();
    for eid in 0..g.m() {
        writeln!(out, "{} {}", d.tail(g, eid) + 1, d.head(g, eid) + 1).unwrap();
    }
    out
}

/// Parse a PACE-style tree decomposition: `s td <bags> <width+1> <n>`
/// header, `b <id> <vertices...>` bag lines, then bag-tree edge lines.
/// The first bag is taken as the root. Validation against a graph is a
/// separate step.
pub fn parse_td(text: &str) -> Result<TreeDecomposition, ParseError> {
    let mut declared: Option<(usize, usize)> = None; // (bags, n)
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = s.split_whitespace().collect();
        if declared.is_none() {
            if fields.len() != 5 || fields[0] != "s" || fields[1] != "td" {
                return Err(bad(
                    line,
                    "expected header `s td <bags> <max-bag-size> <n>`",
                ));
            }
            let nb = parse_num(fields[2], line)?;
            let n = parse_num(fields[4], line)?;
            declared = Some((nb, n));
            bags = vec![None; nb];
            continue;
        }
        let (nb, n) = declared.unwrap();
        if fields[0] == "b" {
            if fields.len() < 2 {
                return Err(bad(line, "bag line needs an index"));
            }
            let id = parse_num(fields[1], line)?;
            if id == 0 || id > nb {
                return Err(bad(line, format!("bag index {id} out of range 1..={nb}")));
            }
            let mut bag = Vec::new();
            for tok in &fields[2..] {
                let v = parse_num(tok, line)?;
                if v == 0 || v > n {
                    return Err(ParseError::VertexOutOfRange { line, v, n });
                }
                bag.push(v - 1);
            }
            bag.sort_unstable();
            bag.dedup();
            bags[id - 1] = Some(bag);
        } else {
            if fields.len() != 2 {
                return Err(ParseError::FieldCount {
                    line,
                    expected: 2,
                    got: fields.len(),
                });
            }
            let a = parse_num(fields[0], line)?;
            let b = parse_num(fields[1], line)?;
            for &x in &[a, b] {
                if x == 0 || x > nb {
                    return Err(bad(line, format!("bag index {x} out of range 1..={nb}")));
                }
            }
            tree_edges.push((a - 1, b - 1));
        }
    }
    let Some((nb, _)) = declared else {
        return Err(ParseError::MissingHeader);
    };
    let found = bags.iter().filter(|b| b.is_some()).count();
    if found != nb {
        return Err(ParseError::BagCountMismatch {
            declared: nb,
            found,
        });
    }
    Ok(TreeDecomposition {
        bags: bags.into_iter().map(|b| b.unwrap()).collect(),
        tree_edges,
        root: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_proper, mu_minus};

    #[test]
    fn graph_round_trip() {
        let g = WeightedGraph::new(4, &[(0, 1, 2), (1, 2, 1), (2, 3, 7)]).unwrap();
        let text = emit_graph(&g, &["example".into()]);
        let back = parse_graph(&text).unwrap();
        assert_eq!(back.n(), g.n());
        assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn graph_parse_errors() {
        assert!(matches!(parse_graph(""), Err(ParseError::MissingHeader)));
        assert!(matches!(
            parse_graph("p wpo 2 1\n"),
            Err(ParseError::EdgeCountMismatch {
                declared: 1,
                found: 0
            })
        ));
        assert!(matches!(
            parse_graph("p wpo 2 1\n1 3 1\n"),
            Err(ParseError::VertexOutOfRange {
                line: 2,
                v: 3,
                n: 2
            })
        ));
        assert!(matches!(
            parse_graph("p wpo 2 1\n1 1 1\n"),
            Err(ParseError::Graph(GraphError::SelfLoop { .. }))
        ));
    }

    #[test]
    fn orientation_round_trip() {
        let g = WeightedGraph::new(3, &[(0, 1, 1), (1, 2, 2)]).unwrap();
        let d = Orientation::new(vec![true, false]);
        let text = emit_orientation(&g, &d);
        let back = parse_orientation(&text, &g).unwrap();
        assert_eq!(mu_minus(&g, &back), mu_minus(&g, &d));
        assert_eq!(is_proper(&g, &back), is_proper(&g, &d));
        // reversed listing order also works
        let lines: Vec<&str> = text.lines().rev().collect();
        let back = parse_orientation(&lines.join("\n"), &g).unwrap();
        assert_eq!(back.tail(&g, 0), d.tail(&g, 0));
    }

    #[test]
    fn orientation_errors() {
        let g = WeightedGraph::new(3, &[(0, 1, 1), (1, 2, 2)]).unwrap();
        assert!(matches!(
            parse_orientation("1 2\n", &g),
            Err(ParseError::IncompleteOrientation {
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            parse_orientation("1 2\n1 3\n", &g),
            Err(ParseError::UnknownArc {
                line: 2,
                u: 1,
                v: 3
            })
        ));
        assert!(matches!(
            parse_orientation("1 2\n2 1\n", &g),
            Err(ParseError::UnknownArc { .. })
        ));
    }

    #[test]
    fn td_parse() {
        let text = "c comment\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n";
        let td = parse_td(text).unwrap();
        assert_eq!(td.bags, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(td.tree_edges, vec![(0, 1)]);
        let g = WeightedGraph::new(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(crate::decomposition::validate_td(&g, &td).is_ok());
    }

    #[test]
    fn td_parse_errors() {
        assert!(parse_td("s td 2 2 3\nb 1 1 2\n1 2\n").is_err()); // missing bag
        assert!(parse_td("s td 1 2 3\nb 1 1 4\n").is_err()); // vertex range
    }
}
