//! Tree decomposition files: `s td <bags> <width+1> <n>`, bag lines
//! `b <i> <v...>` and tree edge lines `<i> <j>`, all 1-based.

use std::fmt::Write as _;

use lpds_core::treewidth::TreeDecomposition;

use crate::text::{lines, ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdFile {
    pub td: TreeDecomposition,
    /// Node count declared in the header.
    pub node_count: usize,
}

pub fn parse_td(text: &str) -> Result<TdFile, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    let mut parent: Vec<usize> = Vec::new();
    for line in lines(text) {
        let Some((k, _, n)) = header else {
            if line.key() != "s" || line.args().len() != 4 || line.args()[0] != "td" {
                return Err(ParseError::new(
                    line.number,
                    ParseErrorKind::Header("expected `s td <bags> <width+1> <n>`".into()),
                ));
            }
            let k: usize = line.number_at(2)?;
            header = Some((k, line.number_at(3)?, line.number_at(4)?));
            bags = vec![None; k];
            parent = (0..k).collect();
            continue;
        };
        match line.key() {
            "s" => {
                return Err(ParseError::new(
                    line.number,
                    ParseErrorKind::Header("second header line".into()),
                ))
            }
            "b" => {
                if line.args().is_empty() {
                    return Err(ParseError::syntax(line.number, "bag line needs an index"));
                }
                let i = line.id_at(1, k)?;
                let mut bag = Vec::with_capacity(line.args().len() - 1);
                for idx in 2..line.tokens.len() {
                    bag.push(line.id_at(idx, n)?);
                }
                if bags[i].replace(bag).is_some() {
                    return Err(ParseError::syntax(
                        line.number,
                        format!("bag {} listed twice", i + 1),
                    ));
                }
            }
            _ => {
                if line.tokens.len() != 2 {
                    return Err(ParseError::syntax(
                        line.number,
                        "tree edge line takes two bag indices",
                    ));
                }
                let i = line.id_at(0, k)?;
                let j = line.id_at(1, k)?;
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri == rj {
                    return Err(ParseError::new(
                        line.number,
                        ParseErrorKind::Invalid("tree edges form a cycle".into()),
                    ));
                }
                parent[ri] = rj;
                edges.push((i, j));
            }
        }
    }
    let (k, declared, n) = header.ok_or(ParseError::new(0, ParseErrorKind::MissingHeader))?;
    if let Some(i) = bags.iter().position(Option::is_none) {
        return Err(ParseError::syntax(0, format!("bag {} is missing", i + 1)));
    }
    if k > 0 && edges.len() != k - 1 {
        return Err(ParseError::new(
            0,
            ParseErrorKind::Invalid("bag tree is not connected".into()),
        ));
    }
    let td = TreeDecomposition::new(
        bags.into_iter().map(|b| b.expect("checked")).collect(),
        edges,
    );
    let actual = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    if actual != declared {
        return Err(ParseError::new(
            0,
            ParseErrorKind::Header(format!(
                "declares largest bag size {declared}, actual {actual}"
            )),
        ));
    }
    Ok(TdFile { td, node_count: n })
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Canonical text: sorted bags in index order, tree edges as `(min, max)`
/// sorted.
pub fn emit_td(td: &TreeDecomposition, node_count: usize) -> String {
    let mut out = String::new();
    let size = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    let _ = writeln!(out, "s td {} {size} {node_count}", td.bags.len());
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    let mut edges: Vec<(usize, usize)> = td
        .edges
        .iter()
        .map(|&(i, j)| (i.min(j), i.max(j)))
        .collect();
    edges.sort_unstable();
    for (i, j) in edges {
        let _ = writeln!(out, "{} {}", i + 1, j + 1);
    }
    out
}
