//! Graph files: `p edge <n> <m>`, `e <u> <v>` (1-based), optional level
//! lines `l <v> <level>`, comment lines starting with `c`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use lpds_core::graph::Graph;
use lpds_core::planar::LevelAssignment;

use crate::text::{lines, ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    /// Present when the file has level lines; then every node has one.
    pub levels: Option<LevelAssignment>,
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    parse_graph_file(text).map(|f| f.graph)
}

pub fn parse_graph_file(text: &str) -> Result<GraphFile, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut levels: Vec<Option<usize>> = Vec::new();
    let mut level_lines = 0;
    for line in lines(text) {
        match (line.key(), header) {
            ("p", None) => {
                let args = line.args();
                if args.len() != 3 || args[0] != "edge" {
                    return Err(ParseError::new(
                        line.number,
                        ParseErrorKind::Header("expected `p edge <n> <m>`".into()),
                    ));
                }
                let n: usize = line.number_at(2)?;
                header = Some((n, line.number_at(3)?));
                levels = vec![None; n];
            }
            ("p", Some(_)) => {
                return Err(ParseError::new(
                    line.number,
                    ParseErrorKind::Header("second header line".into()),
                ))
            }
            (_, None) => return Err(ParseError::new(line.number, ParseErrorKind::MissingHeader)),
            ("e", Some((n, _))) => {
                line.expect_args(2)?;
                let u = line.id_at(1, n)?;
                let v = line.id_at(2, n)?;
                if u == v {
                    return Err(ParseError::new(
                        line.number,
                        ParseErrorKind::SelfLoop(u + 1),
                    ));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(ParseError::new(
                        line.number,
                        ParseErrorKind::DuplicateEdge(u + 1, v + 1),
                    ));
                }
                edges.push((u, v));
            }
            ("l", Some((n, _))) => {
                line.expect_args(2)?;
                let v = line.id_at(1, n)?;
                let level: usize = line.number_at(2)?;
                if level == 0 {
                    return Err(ParseError::syntax(line.number, "levels start at 1"));
                }
                if levels[v].replace(level).is_some() {
                    return Err(ParseError::syntax(
                        line.number,
                        format!("second level for node {}", v + 1),
                    ));
                }
                level_lines += 1;
            }
            (key, _) => {
                return Err(ParseError::syntax(
                    line.number,
                    format!("unknown line type `{key}`"),
                ))
            }
        }
    }
    let (n, m) = header.ok_or(ParseError::new(0, ParseErrorKind::MissingHeader))?;
    if edges.len() != m {
        return Err(ParseError::new(
            0,
            ParseErrorKind::Count {
                what: "edges",
                expected: m,
                found: edges.len(),
            },
        ));
    }
    let levels = match level_lines {
        0 => None,
        k if k == n => Some(LevelAssignment {
            level: levels.into_iter().map(|l| l.expect("all set")).collect(),
        }),
        k => {
            return Err(ParseError::new(
                0,
                ParseErrorKind::Count {
                    what: "level lines",
                    expected: n,
                    found: k,
                },
            ))
        }
    };
    let graph = Graph::from_edges(n, edges)
        .map_err(|e| ParseError::new(0, ParseErrorKind::Invalid(e.to_string())))?;
    Ok(GraphFile { graph, levels })
}

/// Canonical text: header, then edges sorted lexicographically.
pub fn emit_graph(g: &Graph) -> String {
    emit_graph_with(g, None, &[])
}

/// Canonical text with optional level lines and leading comment lines.
pub fn emit_graph_with(g: &Graph, levels: Option<&LevelAssignment>, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p edge {} {}", g.node_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    if let Some(levels) = levels {
        for (v, l) in levels.level.iter().enumerate() {
            let _ = writeln!(out, "l {} {l}", v + 1);
        }
    }
    out
}
