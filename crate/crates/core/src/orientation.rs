//! Timed orientations: an edge orientation plus covering times that
//! certifies a source set, and the checker for the five validity properties.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::graph::{Graph, Node, NodeSet};
use crate::propagation::{PropagationTrace, Time};

/// Edge orientation with node times.
///
/// `directed` holds `(u, v)` meaning `u` covers `v`; `undirected` holds
/// `(u, v)` with `u < v`. Together they partition the graph's edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimedOrientation {
    pub directed: Vec<(Node, Node)>,
    pub undirected: Vec<(Node, Node)>,
    pub times: Vec<Time>,
    pub ell: usize,
}

impl TimedOrientation {
    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = alloc::vec![0; self.times.len()];
        for &(_, v) in &self.directed {
            d[v] += 1;
        }
        d
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = alloc::vec![0; self.times.len()];
        for &(u, _) in &self.directed {
            d[u] += 1;
        }
        d
    }

    /// The nodes with time 0.
    pub fn origin(&self) -> NodeSet {
        let mut set = NodeSet::new(self.times.len());
        for (v, &t) in self.times.iter().enumerate() {
            if t == Time::At(0) {
                set.insert(v);
            }
        }
        set
    }
}

/// Which validity property failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    P1,
    P2,
    P3,
    P4,
    P5,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            Property::P1 => 1,
            Property::P2 => 2,
            Property::P3 => 3,
            Property::P4 => 4,
            Property::P5 => 5,
        };
        write!(f, "P{n}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("{property} violated at node {node}")]
    AtNode { property: Property, node: Node },
    #[error("{property} violated on edge ({0}, {1})", .edge.0, .edge.1)]
    AtEdge {
        property: Property,
        edge: (Node, Node),
    },
}

impl Violation {
    pub fn property(&self) -> Property {
        match self {
            Violation::AtNode { property, .. } | Violation::AtEdge { property, .. } => *property,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientationError {
    #[error("edge ({0}, {1}) is not an edge of the graph")]
    UnknownEdge(Node, Node),
    #[error("edge {{{0}, {1}}} is listed more than once")]
    RepeatedEdge(Node, Node),
    #[error("edge {{{0}, {1}}} is neither oriented nor undirected")]
    MissingEdge(Node, Node),
    #[error("time vector has {found} entries, graph has {expected} nodes")]
    TimeCount { expected: usize, found: usize },
    #[error("node {node} has time {time}, outside 0..={ell} and not inf")]
    TimeOutOfRange { node: Node, time: usize, ell: usize },
    #[error("trace does not belong to this graph")]
    TraceMismatch,
    #[error("no node justifies the time of node {0}")]
    Unjustified(Node),
    #[error(transparent)]
    Invalid(#[from] Violation),
}

fn edge_key(u: Node, v: Node) -> (Node, Node) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Orients each covered node's edge from the smallest-id node that justifies
/// its time; every other edge stays undirected.
pub fn orientation_from_trace(
    g: &Graph,
    trace: &PropagationTrace,
) -> Result<TimedOrientation, OrientationError> {
    let n = g.node_count();
    if trace.times.len() != n || trace.source_set.universe() != n {
        return Err(OrientationError::TraceMismatch);
    }
    let t = &trace.times;
    let mut directed = Vec::new();
    for v in g.nodes() {
        let tv = match t[v] {
            Time::At(0) | Time::Never => continue,
            Time::At(r) => r,
        };
        let witness = g.neighbors(v).iter().copied().find(|&u| {
            if tv == 1 {
                t[u] == Time::At(0)
            } else {
                t[u] >= Time::At(1)
                    && core::iter::once(u)
                        .chain(g.neighbors(u).iter().copied())
                        .filter(|&w| w != v)
                        .all(|w| t[w].within(tv - 1))
            }
        });
        let u = witness.ok_or(OrientationError::Unjustified(v))?;
        directed.push((u, v));
    }
    directed.sort_unstable();
    let oriented: BTreeSet<(Node, Node)> = directed.iter().map(|&(u, v)| edge_key(u, v)).collect();
    let undirected = g
        .edges()
        .iter()
        .copied()
        .filter(|e| !oriented.contains(e))
        .collect();
    Ok(TimedOrientation {
        directed,
        undirected,
        times: t.clone(),
        ell: trace.rounds_run,
    })
}

/// Checks the edge partition, then properties P1 to P5 in order; the first
/// failure is reported as [`OrientationError::Invalid`].
pub fn validate(
    g: &Graph,
    to: &TimedOrientation,
    targets: &NodeSet,
) -> Result<(), OrientationError> {
    let n = g.node_count();
    if to.times.len() != n {
        return Err(OrientationError::TimeCount {
            expected: n,
            found: to.times.len(),
        });
    }
    let mut seen = BTreeSet::new();
    let listed = to
        .directed
        .iter()
        .copied()
        .chain(to.undirected.iter().copied());
    for (u, v) in listed {
        if u >= n || v >= n || !g.has_edge(u, v) {
            return Err(OrientationError::UnknownEdge(u, v));
        }
        let key = edge_key(u, v);
        if !seen.insert(key) {
            return Err(OrientationError::RepeatedEdge(key.0, key.1));
        }
    }
    if let Some(&(u, v)) = g.edges().iter().find(|e| !seen.contains(e)) {
        return Err(OrientationError::MissingEdge(u, v));
    }
    for (v, &t) in to.times.iter().enumerate() {
        if let Time::At(r) = t {
            if r > to.ell {
                return Err(OrientationError::TimeOutOfRange {
                    node: v,
                    time: r,
                    ell: to.ell,
                });
            }
        }
    }

    let at_node = |property, node| Err(Violation::AtNode { property, node }.into());
    let din = to.in_degrees();
    let dout = to.out_degrees();
    let t = &to.times;
    for v in targets.iter() {
        if v < n && !t[v].is_finite() {
            return at_node(Property::P1, v);
        }
    }
    for v in g.nodes() {
        if t[v] >= Time::At(1) && t[v].is_finite() && din[v] != 1 {
            return at_node(Property::P2, v);
        }
    }
    for v in g.nodes() {
        if t[v] == Time::Never && (din[v] != 0 || dout[v] != 0) {
            return at_node(Property::P3, v);
        }
    }
    for v in g.nodes() {
        if t[v] == Time::At(0) && din[v] != 0 {
            return at_node(Property::P4, v);
        }
    }
    for &(u, v) in &to.directed {
        let expected = if t[u] == Time::At(0) {
            Time::At(1)
        } else {
            // Never absorbs: a covering move after an uncovered node cannot happen.
            core::iter::once(u)
                .chain(g.neighbors(u).iter().copied())
                .filter(|&w| w != v)
                .map(|w| t[w])
                .max()
                .map_or(Time::Never, |m| match m {
                    Time::At(r) => Time::At(r + 1),
                    Time::Never => Time::Never,
                })
        };
        if expected == Time::Never || t[v] != expected {
            return Err(Violation::AtEdge {
                property: Property::P5,
                edge: (u, v),
            }
            .into());
        }
    }
    Ok(())
}

/// The origin `{v : t_v = 0}`.
pub fn origin(to: &TimedOrientation) -> NodeSet {
    to.origin()
}
