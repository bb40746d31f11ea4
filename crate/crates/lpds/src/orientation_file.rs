//! Timed-orientation files: `d <u> <v>` (edge oriented u to v), `u <u> <v>`
//! (undirected edge), `t <v> <label>` with label a round number or `inf`.

use std::fmt::Write as _;

use lpds_core::orientation::TimedOrientation;
use lpds_core::propagation::Time;

use crate::text::{lines, ParseError, ParseErrorKind};

/// Reads an orientation for a graph on `n` nodes; every node needs a `t`
/// line. Edge membership is checked later by validation.
pub fn parse_orientation(text: &str, n: usize, ell: usize) -> Result<TimedOrientation, ParseError> {
    let mut directed = Vec::new();
    let mut undirected = Vec::new();
    let mut times: Vec<Option<Time>> = vec![None; n];
    for line in lines(text) {
        match line.key() {
            "d" | "u" => {
                line.expect_args(2)?;
                let pair = (line.id_at(1, n)?, line.id_at(2, n)?);
                if line.key() == "d" {
                    directed.push(pair);
                } else {
                    undirected.push(pair);
                }
            }
            "t" => {
                line.expect_args(2)?;
                let v = line.id_at(1, n)?;
                let time = match line.tokens[2] {
                    "inf" => Time::Never,
                    _ => Time::At(line.number_at(2)?),
                };
                if times[v].replace(time).is_some() {
                    return Err(ParseError::syntax(
                        line.number,
                        format!("second label for node {}", v + 1),
                    ));
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
    let found = times.iter().filter(|t| t.is_some()).count();
    if found != n {
        return Err(ParseError::new(
            0,
            ParseErrorKind::Count {
                what: "node labels",
                expected: n,
                found,
            },
        ));
    }
    Ok(TimedOrientation {
        directed,
        undirected,
        times: times.into_iter().map(|t| t.expect("counted")).collect(),
        ell,
    })
}

pub fn emit_orientation(to: &TimedOrientation) -> String {
    let mut out = String::new();
    for &(u, v) in &to.directed {
        let _ = writeln!(out, "d {} {}", u + 1, v + 1);
    }
    for &(u, v) in &to.undirected {
        let _ = writeln!(out, "u {} {}", u + 1, v + 1);
    }
    for (v, t) in to.times.iter().enumerate() {
        let _ = writeln!(out, "t {} {t}", v + 1);
    }
    out
}
