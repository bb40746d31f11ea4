//! Exhaustive reference solvers. Subsets are tried by increasing size and in
//! lexicographic order within a size, so the first feasible set is optimal and
//! the witness is deterministic.

use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{Graph, Node, NodeSet};
use crate::propagation::Propagator;

/// Largest graph accepted unless [`BfOptions::allow_large`] is set.
pub const DEFAULT_NODE_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BfError {
    #[error("graph has {n} nodes; brute force is limited to {limit} unless overridden")]
    TooLarge { n: usize, limit: usize },
    #[error("the number of rounds must be at least 1")]
    NoRounds,
    #[error("target set universe {found} does not match graph with {expected} nodes")]
    UniverseMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BfOptions {
    /// Give up once every subset of this size has been tried.
    pub size_cap: Option<usize>,
    pub allow_large: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BfOutcome {
    Found {
        opt: usize,
        witness: NodeSet,
    },
    /// No feasible set of size at most the cap.
    Exceeded {
        cap: usize,
    },
}

impl BfOutcome {
    pub fn opt(&self) -> Option<usize> {
        match self {
            BfOutcome::Found { opt, .. } => Some(*opt),
            BfOutcome::Exceeded { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&NodeSet> {
        match self {
            BfOutcome::Found { witness, .. } => Some(witness),
            BfOutcome::Exceeded { .. } => None,
        }
    }
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `feasible` on every subset in order; returns the first accepted one.
fn search<F>(n: usize, cap: usize, mut feasible: F) -> Option<Vec<Node>>
where
    F: FnMut(&[Node]) -> bool,
{
    for k in 0..=cap.min(n) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if feasible(&idx) {
                return Some(idx);
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    None
}

fn guard(g: &Graph, options: &BfOptions) -> Result<(), BfError> {
    let n = g.node_count();
    if n > DEFAULT_NODE_LIMIT && !options.allow_large {
        return Err(BfError::TooLarge {
            n,
            limit: DEFAULT_NODE_LIMIT,
        });
    }
    Ok(())
}

fn outcome(n: usize, cap: usize, found: Option<Vec<Node>>) -> BfOutcome {
    match found {
        Some(s) => BfOutcome::Found {
            opt: s.len(),
            witness: NodeSet::from_nodes(n, s).expect("subset of the node range"),
        },
        None => BfOutcome::Exceeded { cap },
    }
}

/// Smallest set covering all targets within `ell` rounds.
pub fn solve_bf(
    g: &Graph,
    targets: &NodeSet,
    ell: usize,
    options: &BfOptions,
) -> Result<BfOutcome, BfError> {
    guard(g, options)?;
    if ell == 0 {
        return Err(BfError::NoRounds);
    }
    let n = g.node_count();
    if targets.universe() != n {
        return Err(BfError::UniverseMismatch {
            expected: n,
            found: targets.universe(),
        });
    }
    let target_list = targets.to_vec();
    let mut sim = Propagator::new(g);
    let cap = options.size_cap.unwrap_or(n);
    let found = search(n, cap, |s| sim.covers(s.iter().copied(), &target_list, ell));
    Ok(outcome(n, cap, found))
}

/// Minimum dominating set, checked directly through closed neighbourhoods.
pub fn solve_domset_bf(g: &Graph, options: &BfOptions) -> Result<BfOutcome, BfError> {
    guard(g, options)?;
    let n = g.node_count();
    let closed: Vec<NodeSet> = g
        .nodes()
        .map(|v| g.closed_neighborhood(v).expect("node in range"))
        .collect();
    let cap = options.size_cap.unwrap_or(n);
    let found = search(n, cap, |s| {
        let mut seen = NodeSet::new(n);
        for &v in s {
            seen.union_with(&closed[v]);
        }
        seen.len() == n
    });
    Ok(outcome(n, cap, found))
}
