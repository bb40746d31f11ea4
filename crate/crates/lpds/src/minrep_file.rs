//! MinRep instance files: `p minrep <qA> <mA> <qB> <mB> <m>` followed by `m`
//! lines `e <a> <b>`, with `a` in `1..=qA*mA` and `b` in `1..=qB*mB`.

use std::fmt::Write as _;

use lpds_core::generators::{MinRepInstance, Role, Side};

use crate::text::{lines, ParseError, ParseErrorKind};

pub fn parse_minrep(text: &str) -> Result<MinRepInstance, ParseError> {
    let mut header: Option<[usize; 5]> = None;
    let mut edges = Vec::new();
    for line in lines(text) {
        match (line.key(), header) {
            ("p", None) => {
                if line.args().len() != 6 || line.args()[0] != "minrep" {
                    return Err(ParseError::new(
                        line.number,
                        ParseErrorKind::Header(
                            "expected `p minrep <qA> <mA> <qB> <mB> <m>`".into(),
                        ),
                    ));
                }
                let mut h = [0; 5];
                for (k, slot) in h.iter_mut().enumerate() {
                    *slot = line.number_at(k + 2)?;
                }
                header = Some(h);
            }
            (_, None) => return Err(ParseError::new(line.number, ParseErrorKind::MissingHeader)),
            ("e", Some([qa, ma, qb, mb, _])) => {
                line.expect_args(2)?;
                edges.push((line.id_at(1, qa * ma)?, line.id_at(2, qb * mb)?));
            }
            (key, _) => {
                return Err(ParseError::syntax(
                    line.number,
                    format!("unknown line type `{key}`"),
                ))
            }
        }
    }
    let [qa, ma, qb, mb, m] = header.ok_or(ParseError::new(0, ParseErrorKind::MissingHeader))?;
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
    MinRepInstance::new(qa, ma, qb, mb, edges)
        .map_err(|e| ParseError::new(0, ParseErrorKind::Invalid(e.to_string())))
}

pub fn emit_minrep(inst: &MinRepInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "p minrep {} {} {} {} {}",
        inst.q_a,
        inst.m_a,
        inst.q_b,
        inst.m_b,
        inst.edges().len()
    );
    for &(a, b) in inst.edges() {
        let _ = writeln!(out, "e {} {}", a + 1, b + 1);
    }
    out
}

/// Human-readable role with 1-based group, copy and edge indices.
pub fn describe_role(role: Role) -> String {
    let side = |s: Side| match s {
        Side::U => "u",
        Side::V => "v",
    };
    let at =
        |(i, j): (usize, usize), copy: usize| format!("A{}B{} copy {}", i + 1, j + 1, copy + 1);
    match role {
        Role::A { group } => format!("A group {}", group + 1),
        Role::B { group } => format!("B group {}", group + 1),
        Role::Master => "master".into(),
        Role::MasterPendant => "master pendant".into(),
        Role::Center { super_edge, copy } => format!("center {}", at(super_edge, copy)),
        Role::EdgeU {
            super_edge,
            copy,
            edge,
        } => format!("u{} {}", edge + 1, at(super_edge, copy)),
        Role::EdgeV {
            super_edge,
            copy,
            edge,
        } => format!("v{} {}", edge + 1, at(super_edge, copy)),
        Role::EdgeD {
            super_edge,
            copy,
            edge,
        } => format!("d{} {}", edge + 1, at(super_edge, copy)),
        Role::Alpha {
            super_edge,
            copy,
            edge,
            side: s,
        } => {
            format!("alpha{}{} {}", side(s), edge + 1, at(super_edge, copy))
        }
        Role::Beta {
            super_edge,
            copy,
            edge,
            side: s,
        } => {
            format!("beta{}{} {}", side(s), edge + 1, at(super_edge, copy))
        }
        Role::Gamma {
            super_edge,
            copy,
            edge,
            side: s,
        } => {
            format!("gamma{}{} {}", side(s), edge + 1, at(super_edge, copy))
        }
    }
}
