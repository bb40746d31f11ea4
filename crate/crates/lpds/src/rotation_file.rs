//! Planar embeddings. Either rotation lines `r <v> <u...>` (neighbours in
//! counter-clockwise order) plus one exterior dart `o <u> <v>`, or integer
//! coordinates `x <v> <X> <Y>` for every node. Header `p rotation <n>`.

use std::fmt::Write as _;

use lpds_core::graph::Graph;
use lpds_core::planar::RotationSystem;

use crate::text::{lines, ParseError, ParseErrorKind};

pub fn parse_rotation(text: &str, g: &Graph) -> Result<RotationSystem, ParseError> {
    let n = g.node_count();
    let mut header = false;
    let mut rotation: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut coords: Vec<Option<(i64, i64)>> = vec![None; n];
    let mut outer = None;
    for line in lines(text) {
        if !header {
            if line.key() != "p" || line.args().len() != 2 || line.args()[0] != "rotation" {
                return Err(ParseError::new(
                    line.number,
                    ParseErrorKind::Header("expected `p rotation <n>`".into()),
                ));
            }
            let declared: usize = line.number_at(2)?;
            if declared != n {
                return Err(ParseError::new(
                    line.number,
                    ParseErrorKind::Header(format!("declares {declared} nodes, graph has {n}")),
                ));
            }
            header = true;
            continue;
        }
        match line.key() {
            "r" => {
                if line.args().is_empty() {
                    return Err(ParseError::syntax(
                        line.number,
                        "rotation line needs a node",
                    ));
                }
                let v = line.id_at(1, n)?;
                let order = (2..line.tokens.len())
                    .map(|i| line.id_at(i, n))
                    .collect::<Result<Vec<_>, _>>()?;
                if rotation[v].replace(order).is_some() {
                    return Err(ParseError::syntax(
                        line.number,
                        format!("second rotation for node {}", v + 1),
                    ));
                }
            }
            "x" => {
                line.expect_args(3)?;
                let v = line.id_at(1, n)?;
                if coords[v]
                    .replace((line.number_at(2)?, line.number_at(3)?))
                    .is_some()
                {
                    return Err(ParseError::syntax(
                        line.number,
                        format!("second position for node {}", v + 1),
                    ));
                }
            }
            "o" => {
                line.expect_args(2)?;
                if outer
                    .replace((line.id_at(1, n)?, line.id_at(2, n)?))
                    .is_some()
                {
                    return Err(ParseError::syntax(line.number, "second exterior dart"));
                }
            }
            key => {
                return Err(ParseError::syntax(
                    line.number,
                    format!("unknown line type `{key}`"),
                ))
            }
        }
    }
    if !header {
        return Err(ParseError::new(0, ParseErrorKind::MissingHeader));
    }
    let invalid = |e: lpds_core::planar::EmbeddingError| {
        ParseError::new(0, ParseErrorKind::Invalid(e.to_string()))
    };
    let given = coords.iter().filter(|c| c.is_some()).count();
    if given > 0 {
        if given != n {
            return Err(ParseError::new(
                0,
                ParseErrorKind::Count {
                    what: "positions",
                    expected: n,
                    found: given,
                },
            ));
        }
        let coords: Vec<(i64, i64)> = coords.into_iter().map(|c| c.expect("counted")).collect();
        return RotationSystem::from_integer_coordinates(g, &coords).map_err(invalid);
    }
    let rotation: Vec<Vec<usize>> = rotation
        .into_iter()
        .map(Option::unwrap_or_default)
        .collect();
    RotationSystem::new(g, rotation, outer).map_err(invalid)
}

pub fn emit_rotation(rs: &RotationSystem, n: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p rotation {n}");
    for v in 0..n {
        let _ = write!(out, "r {}", v + 1);
        for u in rs.rotation(v) {
            let _ = write!(out, " {}", u + 1);
        }
        out.push('\n');
    }
    if let Some((a, b)) = rs.outer_dart() {
        let _ = writeln!(out, "o {} {}", a + 1, b + 1);
    }
    out
}
