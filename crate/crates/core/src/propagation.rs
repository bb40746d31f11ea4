//! Parallel power-domination rounds.
//!
//! Round 1 covers the closed neighbourhood of every source node. In each
//! later round, every covered node `u` whose closed neighbourhood has exactly
//! one uncovered node `v` covers `v`; all such moves are evaluated against the
//! set covered at the end of the previous round.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::graph::{Graph, Node, NodeSet};

/// Round in which a node becomes covered. `Never` orders after every round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Time {
    At(usize),
    Never,
}

impl Time {
    pub fn is_finite(self) -> bool {
        matches!(self, Time::At(_))
    }

    pub fn round(self) -> Option<usize> {
        match self {
            Time::At(r) => Some(r),
            Time::Never => None,
        }
    }

    pub fn within(self, rounds: usize) -> bool {
        matches!(self, Time::At(r) if r <= rounds)
    }
}

impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Time::At(r) => write!(f, "{r}"),
            Time::Never => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropagationError {
    #[error("the number of rounds must be at least 1")]
    NoRounds,
    #[error("source set universe {found} does not match graph with {expected} nodes")]
    UniverseMismatch { expected: usize, found: usize },
}

/// Per-node covering times for a source set after at most `rounds_run` rounds.
///
/// `times[v] == At(0)` exactly for the sources; `At(r)` for `r >= 1` means `v`
/// is first covered in round `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagationTrace {
    pub times: Vec<Time>,
    pub rounds_run: usize,
    pub source_set: NodeSet,
}

impl PropagationTrace {
    /// Nodes covered within `r` rounds (`r >= 1`), i.e. the closure after `r` rounds.
    pub fn covered_within(&self, r: usize) -> NodeSet {
        let mut set = NodeSet::new(self.times.len());
        for (v, t) in self.times.iter().enumerate() {
            if t.within(r) {
                set.insert(v);
            }
        }
        set
    }

    pub fn covers(&self, targets: &NodeSet) -> bool {
        targets.iter().all(|v| self.times[v].is_finite())
    }
}

fn check_universe(g: &Graph, set: &NodeSet) -> Result<(), PropagationError> {
    if set.universe() != g.node_count() {
        return Err(PropagationError::UniverseMismatch {
            expected: g.node_count(),
            found: set.universe(),
        });
    }
    Ok(())
}

/// Simulates up to `k` parallel rounds from the source set `s`.
pub fn propagate(g: &Graph, s: &NodeSet, k: usize) -> Result<PropagationTrace, PropagationError> {
    if k == 0 {
        return Err(PropagationError::NoRounds);
    }
    check_universe(g, s)?;
    let mut sim = Propagator::new(g);
    sim.run(s.iter(), k, None);
    let times = sim
        .time
        .iter()
        .map(|&t| {
            if t == UNSET {
                Time::Never
            } else {
                Time::At(t as usize)
            }
        })
        .collect();
    Ok(PropagationTrace {
        times,
        rounds_run: k,
        source_set: s.clone(),
    })
}

/// True iff every target is covered within `ell` rounds from `s`.
pub fn is_feasible(
    g: &Graph,
    s: &NodeSet,
    targets: &NodeSet,
    ell: usize,
) -> Result<bool, PropagationError> {
    check_universe(g, targets)?;
    Ok(propagate(g, s, ell)?.covers(targets))
}

const UNSET: u32 = u32::MAX;

/// Reusable simulation buffers; used by the exhaustive solvers, which run
/// millions of closures on the same graph.
pub struct Propagator<'g> {
    g: &'g Graph,
    time: Vec<u32>,
    uncovered_nbrs: Vec<u32>,
    touched: Vec<Node>,
    mark: Vec<u32>,
    epoch: u32,
    covered: usize,
}

impl<'g> Propagator<'g> {
    pub fn new(g: &'g Graph) -> Self {
        let n = g.node_count();
        Propagator {
            g,
            time: vec![UNSET; n],
            uncovered_nbrs: vec![0; n],
            touched: Vec::new(),
            mark: vec![0; n],
            epoch: 0,
            covered: 0,
        }
    }

    fn reset(&mut self) {
        self.time.fill(UNSET);
        for v in self.g.nodes() {
            self.uncovered_nbrs[v] = self.g.degree(v) as u32;
        }
        self.covered = 0;
        self.touched.clear();
    }

    fn cover(&mut self, v: Node, round: u32) {
        self.time[v] = round;
        self.covered += 1;
        self.touched.push(v);
        for &u in self.g.neighbors(v) {
            self.uncovered_nbrs[u] -= 1;
            self.touched.push(u);
        }
    }

    /// Runs the rounds; when `stop_when_covered` is given, returns early once
    /// that many nodes are covered. Returns the number of covered nodes.
    fn run<I>(&mut self, sources: I, k: usize, stop_when_covered: Option<usize>) -> usize
    where
        I: IntoIterator<Item = Node>,
    {
        self.reset();
        let mut frontier = Vec::new();
        for v in sources {
            if self.time[v] == UNSET {
                self.cover(v, 0);
            }
            frontier.push(v);
        }
        for v in frontier.drain(..) {
            for &u in self.g.neighbors(v) {
                if self.time[u] == UNSET {
                    self.cover(u, 1);
                }
            }
        }
        let mut round = 2u32;
        let mut moves = Vec::new();
        while (round as usize) <= k {
            if stop_when_covered.is_some_and(|c| self.covered >= c) {
                break;
            }
            self.epoch = self.epoch.wrapping_add(1);
            if self.epoch == 0 {
                self.mark.fill(0);
                self.epoch = 1;
            }
            moves.clear();
            for &u in &self.touched {
                if self.mark[u] == self.epoch {
                    continue;
                }
                self.mark[u] = self.epoch;
                if self.time[u] != UNSET && self.uncovered_nbrs[u] == 1 {
                    let v = self
                        .g
                        .neighbors(u)
                        .iter()
                        .copied()
                        .find(|&w| self.time[w] == UNSET)
                        .expect("counter says one neighbour is uncovered");
                    moves.push(v);
                }
            }
            self.touched.clear();
            if moves.is_empty() {
                break;
            }
            for &v in &moves {
                if self.time[v] == UNSET {
                    self.cover(v, round);
                }
            }
            round += 1;
        }
        self.covered
    }

    /// Whether every node is covered within `ell` rounds from `sources`.
    pub fn covers_all<I>(&mut self, sources: I, ell: usize) -> bool
    where
        I: IntoIterator<Item = Node>,
    {
        let n = self.g.node_count();
        self.run(sources, ell, Some(n)) == n
    }

    /// Whether every target is covered within `ell` rounds from `sources`.
    pub fn covers<I>(&mut self, sources: I, targets: &[Node], ell: usize) -> bool
    where
        I: IntoIterator<Item = Node>,
    {
        if targets.len() == self.g.node_count() {
            return self.covers_all(sources, ell);
        }
        self.run(sources, ell, None);
        targets.iter().all(|&v| self.time[v] != UNSET)
    }
}
