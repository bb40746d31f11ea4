//! Integer programs for round-bounded and unbounded power domination, an
//! exact checker for (fractional) assignments and an LP file writer.
//!
//! Node ids in variable names and constraint tags are 1-based, matching the
//! graph file format.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{Graph, Node, NodeSet};
use crate::propagation::{propagate, PropagationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(Node),
    Z { t: usize, v: Node },
    Y { t: usize, from: Node, to: Node },
}

impl Var {
    pub fn name(&self) -> String {
        match *self {
            Var::X(v) => format!("x_v{}", v + 1),
            Var::Z { t, v } => format!("z_t{t}_v{}", v + 1),
            Var::Y { t, from, to } => format!("Y_t{t}_{}_to_{}", from + 1, to + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }
}

/// `sum coef * var  sense  rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub family: u8,
    pub tag: String,
    pub terms: Vec<(Var, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

impl Constraint {
    /// Row name usable in an LP file: `(3)[u=2,v=5,t=1]` becomes `f3_u2_v5_t1`.
    pub fn row_name(&self) -> String {
        let mut name = format!("f{}", self.family);
        let params = self
            .tag
            .split_once('[')
            .map(|(_, rest)| rest.trim_end_matches(']'));
        for part in params.into_iter().flat_map(|p| p.split(',')) {
            if let Some((key, val)) = part.split_once('=') {
                let _ = write!(name, "_{key}{val}");
            }
        }
        name
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formulation {
    Rounds(usize),
    Ordering,
}

/// A 0/1 program minimising the number of chosen nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpModel {
    pub formulation: Formulation,
    pub node_count: usize,
    /// Sorted by name.
    pub variables: Vec<Var>,
    /// Ordered by family, then by generation order.
    pub constraints: Vec<Constraint>,
}

impl IpModel {
    pub fn objective(&self) -> impl Iterator<Item = Var> {
        (0..self.node_count).map(Var::X)
    }

    pub fn family_count(&self, family: u8) -> usize {
        self.constraints
            .iter()
            .filter(|c| c.family == family)
            .count()
    }
}

fn finish(
    formulation: Formulation,
    g: &Graph,
    rounds: usize,
    mut constraints: Vec<Constraint>,
) -> IpModel {
    let n = g.node_count();
    let mut variables: Vec<Var> = (0..n).map(Var::X).collect();
    for t in 1..=rounds {
        variables.extend((0..n).map(|v| Var::Z { t, v }));
        for &(u, v) in g.edges() {
            variables.push(Var::Y { t, from: u, to: v });
            variables.push(Var::Y { t, from: v, to: u });
        }
    }
    let mut named: Vec<(String, Var)> = variables.into_iter().map(|v| (v.name(), v)).collect();
    named.sort();
    constraints.sort_by_key(|c| c.family);
    IpModel {
        formulation,
        node_count: n,
        variables: named.into_iter().map(|(_, v)| v).collect(),
        constraints,
    }
}

fn row(family: u8, tag: String, terms: Vec<(Var, i64)>, sense: Sense, rhs: i64) -> Constraint {
    Constraint {
        family,
        tag,
        terms,
        sense,
        rhs,
    }
}

/// Ordered adjacent pairs `(u, v)` in edge order, both orientations.
fn arcs(g: &Graph) -> impl Iterator<Item = (Node, Node)> + '_ {
    g.edges().iter().flat_map(|&(u, v)| [(u, v), (v, u)])
}

/// Propagation "if" rows: node `v` covered at round `t >= 2` needs a ready
/// neighbour at `t - 1` or to be chosen.
fn rounds_rows(g: &Graph, rounds: usize, out: &mut Vec<Constraint>) {
    for t in 2..=rounds {
        for v in g.nodes() {
            let mut terms = alloc::vec![(Var::Z { t, v }, 1), (Var::X(v), -1)];
            terms.extend(g.neighbors(v).iter().map(|&u| {
                (
                    Var::Y {
                        t: t - 1,
                        from: u,
                        to: v,
                    },
                    -1,
                )
            }));
            out.push(row(
                4,
                format!("(4)[v={},t={t}]", v + 1),
                terms,
                Sense::Le,
                0,
            ));
        }
    }
}

/// The round-indexed program with rounds `1..=ell`.
pub fn build_ip_ell(g: &Graph, ell: usize, with_valid_ineqs: bool) -> IpModel {
    let mut rows = Vec::new();
    for v in g.nodes() {
        rows.push(row(
            1,
            format!("(1)[v={}]", v + 1),
            alloc::vec![(Var::Z { t: ell, v }, 1)],
            Sense::Ge,
            1,
        ));
    }
    for v in g.nodes() {
        let mut terms = alloc::vec![(Var::Z { t: 1, v }, 1), (Var::X(v), -1)];
        terms.extend(g.neighbors(v).iter().map(|&u| (Var::X(u), -1)));
        rows.push(row(2, format!("(2)[v={}]", v + 1), terms, Sense::Le, 0));
    }
    for (u, v) in arcs(g) {
        for w in core::iter::once(u).chain(g.neighbors(u).iter().copied().filter(|&w| w != v)) {
            for t in 1..=ell {
                rows.push(row(
                    3,
                    format!("(3)[u={},v={},w={},t={t}]", u + 1, v + 1, w + 1),
                    alloc::vec![(Var::Y { t, from: u, to: v }, 1), (Var::Z { t, v: w }, -1)],
                    Sense::Le,
                    0,
                ));
            }
        }
    }
    rounds_rows(g, ell, &mut rows);
    if with_valid_ineqs {
        let delta = g.min_degree().unwrap_or(0) as i64;
        let terms = g.nodes().map(|v| (Var::Z { t: 1, v }, 1)).collect();
        rows.push(row(6, String::from("(6)"), terms, Sense::Ge, delta + 1));
        for t in 2..=ell {
            let mut terms: Vec<(Var, i64)> = g.nodes().map(|v| (Var::Z { t, v }, 1)).collect();
            terms.extend(g.nodes().map(|v| (Var::Z { t: t - 1, v }, -1)));
            rows.push(row(7, format!("(7)[t={t}]"), terms, Sense::Ge, 1));
        }
    }
    finish(Formulation::Rounds(ell), g, ell, rows)
}

/// The ordering program: one node is covered per step, `n` steps.
pub fn build_ip_ordering(g: &Graph, with_valid_ineq: bool) -> IpModel {
    let n = g.node_count();
    let mut rows = Vec::new();
    for v in g.nodes() {
        let terms = (1..=n).map(|t| (Var::Z { t, v }, 1)).collect();
        rows.push(row(1, format!("(1)[v={}]", v + 1), terms, Sense::Eq, 1));
    }
    for t in 1..=n {
        let terms = g.nodes().map(|v| (Var::Z { t, v }, 1)).collect();
        rows.push(row(2, format!("(2)[t={t}]"), terms, Sense::Eq, 1));
    }
    for (u, v) in arcs(g) {
        for w in core::iter::once(u).chain(g.neighbors(u).iter().copied().filter(|&w| w != v)) {
            for t in 1..n {
                let mut terms = alloc::vec![(Var::Y { t, from: u, to: v }, 1), (Var::X(u), -1)];
                terms.extend((1..=t).map(|s| (Var::Z { t: s, v: w }, -1)));
                rows.push(row(
                    3,
                    format!("(3)[u={},v={},w={},t={t}]", u + 1, v + 1, w + 1),
                    terms,
                    Sense::Le,
                    0,
                ));
            }
        }
    }
    rounds_rows(g, n, &mut rows);
    if with_valid_ineq {
        for t in 1..n {
            let terms = arcs(g)
                .map(|(u, v)| (Var::Y { t, from: u, to: v }, 1))
                .collect();
            rows.push(row(6, format!("(6)[t={t}]"), terms, Sense::Ge, 1));
        }
    }
    finish(Formulation::Ordering, g, n, rows)
}

/// Variable values keyed by variable name.
pub type Assignment = BTreeMap<String, BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IpError {
    #[error("assignment has no value for variable {0}")]
    MissingVariable(String),
    #[error("value of {0} lies outside [0, 1]")]
    OutOfRange(String),
    #[error("source set does not cover the graph within {0} rounds")]
    Infeasible(usize),
    #[error(transparent)]
    Propagation(#[from] PropagationError),
}

fn bit(b: bool) -> BigRational {
    if b {
        BigRational::one()
    } else {
        BigRational::zero()
    }
}

/// The 0/1 assignment read off the propagation of `s` over `ell` rounds,
/// for any `s`.
pub fn canonical_assignment_unchecked(
    g: &Graph,
    s: &NodeSet,
    ell: usize,
) -> Result<Assignment, IpError> {
    let trace = propagate(g, s, ell)?;
    let mut a = Assignment::new();
    for v in g.nodes() {
        a.insert(Var::X(v).name(), bit(s.contains(v)));
    }
    for t in 1..=ell {
        let covered = trace.covered_within(t);
        for v in g.nodes() {
            a.insert(Var::Z { t, v }.name(), bit(covered.contains(v)));
        }
        for (u, v) in arcs(g) {
            let ready = covered.contains(u)
                && g.neighbors(u)
                    .iter()
                    .all(|&w| w == v || covered.contains(w));
            a.insert(Var::Y { t, from: u, to: v }.name(), bit(ready));
        }
    }
    Ok(a)
}

/// As [`canonical_assignment_unchecked`], rejecting sets that do not cover
/// every node within `ell` rounds.
pub fn canonical_assignment(g: &Graph, s: &NodeSet, ell: usize) -> Result<Assignment, IpError> {
    let trace = propagate(g, s, ell)?;
    if !trace.covers(&NodeSet::full(g.node_count())) {
        return Err(IpError::Infeasible(ell));
    }
    canonical_assignment_unchecked(g, s, ell)
}

pub fn objective_value(model: &IpModel, a: &Assignment) -> Result<BigRational, IpError> {
    let mut total = BigRational::zero();
    for v in model.objective() {
        let name = v.name();
        total += a.get(&name).ok_or(IpError::MissingVariable(name))?;
    }
    Ok(total)
}

/// Evaluates every row exactly. Returns the tags of violated rows, in model
/// order; an empty list means the assignment is feasible.
pub fn check_assignment(model: &IpModel, a: &Assignment) -> Result<Vec<String>, IpError> {
    let mut values: BTreeMap<Var, &BigRational> = BTreeMap::new();
    for &var in &model.variables {
        let name = var.name();
        let value = a
            .get(&name)
            .ok_or_else(|| IpError::MissingVariable(name.clone()))?;
        if *value < BigRational::zero() || *value > BigRational::one() {
            return Err(IpError::OutOfRange(name));
        }
        values.insert(var, value);
    }
    let mut violated = Vec::new();
    for c in &model.constraints {
        let mut lhs = BigRational::zero();
        for (var, coef) in &c.terms {
            lhs += values[var] * BigRational::from_integer(BigInt::from(*coef));
        }
        let rhs = BigRational::from_integer(BigInt::from(c.rhs));
        let ok = match c.sense {
            Sense::Le => lhs <= rhs,
            Sense::Ge => lhs >= rhs,
            Sense::Eq => lhs == rhs,
        };
        if !ok {
            violated.push(c.tag.clone());
        }
    }
    Ok(violated)
}

const TERMS_PER_LINE: usize = 8;

fn write_terms(out: &mut String, terms: impl Iterator<Item = (Var, i64)>) {
    for (k, (var, coef)) in terms.enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = match (k, coef < 0) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        out.push_str(sign);
        if coef.unsigned_abs() != 1 {
            let _ = write!(out, "{} ", coef.unsigned_abs());
        }
        out.push_str(&var.name());
    }
}

/// CPLEX LP text. With `relax` the binary section becomes `[0, 1]` bounds.
pub fn emit_lp(model: &IpModel, relax: bool) -> String {
    let mut out = String::new();
    out.push_str("Minimize\n obj: ");
    if model.node_count == 0 {
        out.push('0');
    }
    write_terms(&mut out, model.objective().map(|v| (v, 1)));
    out.push_str("\nSubject To\n");
    for c in &model.constraints {
        let _ = write!(out, " {}: ", c.row_name());
        write_terms(&mut out, c.terms.iter().copied());
        let _ = writeln!(out, " {} {}", c.sense.symbol(), c.rhs);
    }
    if relax {
        out.push_str("Bounds\n");
        for v in &model.variables {
            let _ = writeln!(out, " 0 <= {} <= 1", v.name());
        }
    } else {
        out.push_str("Binary\n");
        for v in &model.variables {
            let _ = writeln!(out, " {}", v.name());
        }
    }
    out.push_str("End\n");
    out
}
