//! Exact generalized ℓ-round power domination by dynamic programming over a
//! nice tree decomposition.
//!
//! A table entry describes a partial timed orientation of the graph induced on
//! the nodes seen so far: a time label for each bag node, an orientation for
//! each bag edge, and a summary of the edges to forgotten nodes. Labels in
//! `1..=ell` are either justified (`Plain`, the single incoming edge has been
//! seen) or still waiting for one (`Hat`).

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use rustc_hash::FxBuildHasher;
use thiserror::Error;

use crate::graph::{Graph, Node, NodeSet};
use crate::treewidth::{validate_td, NiceError, NiceKind, NiceTreeDecomposition, TdViolation};

/// Value of the `Inf` label and the "blocked" marker for [`NodeState::below_max`].
pub const INF: u32 = u32::MAX;

/// Time label of a bag node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Zero,
    /// Time `a >= 1` whose incoming edge is already present.
    Plain(u32),
    /// Time `a >= 1` whose incoming edge has not been seen yet.
    Hat(u32),
    Inf,
}

impl Label {
    pub fn value(self) -> u32 {
        match self {
            Label::Zero => 0,
            Label::Plain(a) | Label::Hat(a) => a,
            Label::Inf => INF,
        }
    }

    pub fn is_timed(self) -> bool {
        matches!(self, Label::Plain(_) | Label::Hat(_))
    }
}

/// Per-node part of a bag state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeState {
    pub label: Label,
    /// The incoming edge comes from a forgotten node.
    pub in_from_below: bool,
    /// Label of the forgotten node this node points to. Every other neighbour
    /// and the node itself must stay strictly below it.
    pub out_head: Option<u32>,
    /// Largest label among forgotten neighbours other than the head, tracked
    /// for timed nodes with `Inf` counted as `ell + 1`. Once the outgoing edge
    /// is known only equality with the head's label minus one matters, and
    /// smaller values are stored as 0.
    pub below_max: u32,
    /// Second largest such label, kept only while there is no outgoing edge.
    pub below_second: u32,
}

impl NodeState {
    pub fn new(label: Label) -> Self {
        NodeState {
            label,
            in_from_below: false,
            out_head: None,
            below_max: 0,
            below_second: 0,
        }
    }
}

/// Orientation of a bag edge `(a, b)` with `a < b` as bag positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeState {
    Undirected,
    /// `a -> b`.
    Forward,
    /// `b -> a`.
    Backward,
}

/// Node states in bag order and edge states in [`BagContext::edges`] order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BagState {
    pub nodes: Vec<NodeState>,
    pub edges: Vec<EdgeState>,
}

/// Everything about a bag that does not depend on the state.
#[derive(Debug, Clone)]
pub struct BagContext {
    /// Sorted bag nodes.
    pub bag: Vec<Node>,
    /// Graph edges inside the bag, as position pairs `(a, b)` with `a < b`.
    pub edges: Vec<(usize, usize)>,
    pub is_target: Vec<bool>,
    /// The node has a neighbour not yet introduced below this tree node.
    pub has_outside: Vec<bool>,
    pub ell: u32,
    nbrs: Vec<Vec<(usize, usize)>>,
}

impl BagContext {
    /// `present` is the set of nodes introduced in the subtree, bag included.
    pub fn new(g: &Graph, bag: &[Node], targets: &NodeSet, present: &NodeSet, ell: u32) -> Self {
        let b = bag.len();
        let mut edges = Vec::new();
        let mut nbrs = vec![Vec::new(); b];
        for i in 0..b {
            for j in i + 1..b {
                if g.has_edge(bag[i], bag[j]) {
                    nbrs[i].push((j, edges.len()));
                    nbrs[j].push((i, edges.len()));
                    edges.push((i, j));
                }
            }
        }
        BagContext {
            bag: bag.to_vec(),
            edges,
            is_target: bag.iter().map(|&v| targets.contains(v)).collect(),
            has_outside: bag
                .iter()
                .map(|&v| g.neighbors(v).iter().any(|&w| !present.contains(w)))
                .collect(),
            ell,
            nbrs,
        }
    }

    pub fn position(&self, v: Node) -> Option<usize> {
        self.bag.binary_search(&v).ok()
    }

    /// `(position, edge index)` for every bag neighbour of position `p`.
    pub fn neighbors(&self, p: usize) -> &[(usize, usize)] {
        &self.nbrs[p]
    }

    fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.nbrs[a].iter().find(|&&(q, _)| q == b).map(|&(_, e)| e)
    }

    /// `(tail, head)` of edge `e` in state `s`, if directed.
    fn arc(&self, s: &BagState, e: usize) -> Option<(usize, usize)> {
        let (a, b) = self.edges[e];
        match s.edges[e] {
            EdgeState::Undirected => None,
            EdgeState::Forward => Some((a, b)),
            EdgeState::Backward => Some((b, a)),
        }
    }

    fn orient(&self, tail: usize, head: usize) -> EdgeState {
        if tail < head {
            EdgeState::Forward
        } else {
            EdgeState::Backward
        }
    }
}

/// True if some local condition of a valid timed orientation already fails
/// for `s`: a target at `Inf`, an `Inf` node with a directed edge, a `Zero`
/// node with an incoming edge, a `Plain` label without exactly one incoming
/// edge, a `Hat` label with one, a timed node with two outgoing edges, or a
/// directed edge whose head is not later than every other neighbour of its tail.
pub fn is_invalid_state(ctx: &BagContext, s: &BagState) -> bool {
    let value = |p: usize| s.nodes[p].label.value();
    for (p, ns) in s.nodes.iter().enumerate() {
        let mut bag_in = 0usize;
        let mut bag_out = 0usize;
        for &(_, e) in &ctx.nbrs[p] {
            match ctx.arc(s, e) {
                Some((t, _)) if t == p => bag_out += 1,
                Some(_) => bag_in += 1,
                None => {}
            }
        }
        let in_count = bag_in + usize::from(ns.in_from_below);
        let bad = match ns.label {
            Label::Inf => ctx.is_target[p] || in_count > 0 || bag_out > 0 || ns.out_head.is_some(),
            Label::Zero => in_count > 0,
            Label::Plain(a) => in_count != 1 || a == 0 || a > ctx.ell,
            Label::Hat(a) => in_count != 0 || a == 0 || a > ctx.ell,
        };
        if bad {
            return true;
        }
        if !ns.label.is_timed() {
            if ns.out_head.is_some() {
                return true;
            }
        } else {
            if bag_out + usize::from(ns.out_head.is_some()) > 1 {
                return true;
            }
            if let Some(h) = ns.out_head {
                if value(p) >= h || ns.below_max >= h {
                    return true;
                }
                if ctx.nbrs[p].iter().any(|&(q, _)| value(q) >= h) {
                    return true;
                }
            }
        }
        if ns.label == Label::Zero && ctx.nbrs[p].iter().any(|&(q, _)| value(q) > 1) {
            return true;
        }
        for &(q, e) in &ctx.nbrs[p] {
            if ctx.arc(s, e) != Some((p, q)) {
                continue;
            }
            let vq = value(q);
            if ns.label == Label::Zero {
                if vq != 1 {
                    return true;
                }
                continue;
            }
            let mut need = value(p).max(ns.below_max);
            for &(w, _) in &ctx.nbrs[p] {
                if w != q {
                    need = need.max(value(w));
                }
            }
            if need == INF || vq == INF || vq < need + 1 {
                return true;
            }
        }
    }
    false
}

/// A `Hat` node whose neighbours are all introduced can never be justified.
fn has_dead_hat(ctx: &BagContext, s: &BagState) -> bool {
    s.nodes
        .iter()
        .zip(&ctx.has_outside)
        .any(|(ns, &outside)| matches!(ns.label, Label::Hat(_)) && !outside)
}

/// Label the outgoing edge of timed position `p` points at, with the bag
/// position of the head when it is still in the bag.
fn out_target(ctx: &BagContext, s: &BagState, p: usize) -> Option<(u32, Option<usize>)> {
    if let Some(h) = s.nodes[p].out_head {
        return Some((h, None));
    }
    ctx.nbrs[p]
        .iter()
        .find(|&&(q, e)| ctx.arc(s, e) == Some((p, q)))
        .map(|&(q, _)| (s.nodes[q].label.value(), Some(q)))
}

/// Whether the outgoing edge of `p` (if any) is timed exactly: the head's
/// label is one more than the largest label in the rest of `N[p]`. Only
/// meaningful once every neighbour of `p` has been introduced.
fn is_tight(ctx: &BagContext, s: &BagState, p: usize) -> bool {
    let ns = s.nodes[p];
    if !ns.label.is_timed() {
        return true;
    }
    let Some((h, head_pos)) = out_target(ctx, s, p) else {
        return true;
    };
    let mut m = ns.label.value().max(ns.below_max);
    for &(w, _) in &ctx.nbrs[p] {
        if Some(w) != head_pos {
            m = m.max(s.nodes[w].label.value());
        }
    }
    m <= ctx.ell && m + 1 == h
}

/// For a timed node without an outgoing edge whose neighbours have all been
/// introduced: propagation from it would have covered its latest neighbour
/// one round after the rest of its closed neighbourhood, so that neighbour's
/// label must not leave a larger gap.
fn is_settled(ctx: &BagContext, s: &BagState, p: usize) -> bool {
    let ns = s.nodes[p];
    if !ns.label.is_timed() || out_target(ctx, s, p).is_some() {
        return true;
    }
    let cap = |v: u32| v.min(ctx.ell + 1);
    let (mut first, mut second) = (ns.below_max, ns.below_second);
    let mut add = |v: u32| {
        if v > first {
            second = first;
            first = v;
        } else if v > second {
            second = v;
        }
    };
    for &(w, _) in &ctx.nbrs[p] {
        add(cap(s.nodes[w].label.value()));
    }
    let own = cap(ns.label.value());
    first <= own || first <= second.max(own) + 1
}

/// Whether `p` satisfies every check that needs its full neighbourhood.
fn is_closed(ctx: &BagContext, s: &BagState, p: usize) -> bool {
    !matches!(s.nodes[p].label, Label::Hat(_)) && is_tight(ctx, s, p) && is_settled(ctx, s, p)
}

fn normalize(ctx: &BagContext, s: &mut BagState) {
    for p in 0..s.nodes.len() {
        if !s.nodes[p].label.is_timed() {
            s.nodes[p].below_max = 0;
            s.nodes[p].below_second = 0;
            continue;
        }
        if let Some((h, _)) = out_target(ctx, s, p) {
            let ns = &mut s.nodes[p];
            ns.below_second = 0;
            if h != INF && h >= 1 && ns.below_max < h - 1 {
                ns.below_max = 0;
            }
        }
    }
}

fn push_below(ns: &mut NodeState, v: u32) {
    if v > ns.below_max {
        ns.below_second = ns.below_max;
        ns.below_max = v;
    } else if v > ns.below_second {
        ns.below_second = v;
    }
}

/// How an entry was derived, for witness reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Back {
    Leaf,
    Insert { child: u32 },
    Forget { child: u32 },
    Join { left: u32, right: u32 },
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub state: BagState,
    /// Number of `Zero` labels in the partial solution.
    pub cost: u32,
    pub back: Back,
}

/// Valid states of one tree node with their minimum origin counts.
#[derive(Debug, Clone, Default)]
pub struct StateTable {
    entries: Vec<Entry>,
    index: HashMap<BagState, usize, FxBuildHasher>,
}

impl StateTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn cost(&self, s: &BagState) -> Option<u32> {
        self.index.get(s).map(|&i| self.entries[i].cost)
    }

    fn offer(&mut self, state: BagState, cost: u32, back: Back) {
        match self.index.get(&state) {
            Some(&i) => {
                let e = &mut self.entries[i];
                if cost < e.cost {
                    e.cost = cost;
                    e.back = back;
                }
            }
            None => {
                self.index.insert(state.clone(), self.entries.len());
                self.entries.push(Entry { state, cost, back });
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DpError {
    #[error("the number of rounds must be at least 1")]
    NoRounds,
    #[error("target set universe {found} does not match graph with {expected} nodes")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("invalid decomposition: {0}")]
    Decomposition(#[from] TdViolation),
    #[error("invalid nice decomposition: {0}")]
    Nice(#[from] NiceError),
    #[error("state table of {size} entries exceeds the budget of {limit}")]
    BudgetExceeded { limit: usize, size: usize },
    #[error("internal error: {0}")]
    Internal(&'static str),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DpOptions {
    /// Upper bound on the size of any single table.
    pub max_states: Option<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DpStats {
    pub tree_nodes: usize,
    pub largest_table: usize,
    pub total_states: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpSolution {
    pub opt: usize,
    pub witness: NodeSet,
    pub stats: DpStats,
}

/// Nominal count of bag states,
/// `3^m · (2ℓ+2)^n · 5^n · (ℓ+2)^n`, saturating at `u64::MAX`.
pub fn state_space_size(n_i: u32, m_i: u32, ell: u64) -> u64 {
    let mut total: u64 = 1;
    let mut mul = |base: u64, exp: u32| {
        for _ in 0..exp {
            total = total.saturating_mul(base);
        }
    };
    mul(3, m_i);
    mul(ell.saturating_mul(2).saturating_add(2), n_i);
    mul(5, n_i);
    mul(ell.saturating_add(2), n_i);
    total
}

/// Size of a greedy dominating set of the targets, an upper bound on the optimum.
fn greedy_upper_bound(g: &Graph, targets: &NodeSet) -> usize {
    let mut uncovered = targets.clone();
    let mut picks = 0;
    while !uncovered.is_empty() {
        let gain = |v: Node| {
            usize::from(uncovered.contains(v))
                + g.neighbors(v)
                    .iter()
                    .filter(|&&w| uncovered.contains(w))
                    .count()
        };
        let best = g
            .nodes()
            .max_by_key(|&v| (gain(v), core::cmp::Reverse(v)))
            .expect("nonempty");
        uncovered.remove(best);
        for &w in g.neighbors(best) {
            uncovered.remove(w);
        }
        picks += 1;
    }
    picks
}

/// Minimum `|S|` with every target covered within `ell` rounds, with one
/// optimal `S`.
pub fn solve_dp(
    g: &Graph,
    targets: &NodeSet,
    ell: usize,
    ntd: &NiceTreeDecomposition,
) -> Result<DpSolution, DpError> {
    solve_dp_with(g, targets, ell, ntd, &DpOptions::default())
}

pub fn solve_dp_with(
    g: &Graph,
    targets: &NodeSet,
    ell: usize,
    ntd: &NiceTreeDecomposition,
    options: &DpOptions,
) -> Result<DpSolution, DpError> {
    let n = g.node_count();
    if ell == 0 {
        return Err(DpError::NoRounds);
    }
    if targets.universe() != n {
        return Err(DpError::UniverseMismatch {
            expected: n,
            found: targets.universe(),
        });
    }
    if n == 0 {
        return Ok(DpSolution {
            opt: 0,
            witness: NodeSet::new(0),
            stats: DpStats::default(),
        });
    }
    ntd.check_shape()?;
    validate_td(g, &ntd.to_td())?;
    let ell = ell.min(n.saturating_sub(1)).max(1) as u32;
    let upper = greedy_upper_bound(g, targets) as u32;
    let lower = u32::from(!targets.is_empty());
    let mut stats = DpStats::default();
    // Costs only grow towards the root, so the first bound that admits a root
    // state is the optimum.
    for bound in lower..=upper {
        let solver = Solver {
            g,
            targets,
            ell,
            bound,
            ntd,
            options,
        };
        if let Some(sol) = solver.run(&mut stats)? {
            return Ok(sol);
        }
    }
    Err(DpError::Internal("no feasible state at the root"))
}

struct Solver<'a> {
    g: &'a Graph,
    targets: &'a NodeSet,
    ell: u32,
    bound: u32,
    ntd: &'a NiceTreeDecomposition,
    options: &'a DpOptions,
}

impl Solver<'_> {
    fn run(&self, stats: &mut DpStats) -> Result<Option<DpSolution>, DpError> {
        let count = self.ntd.nodes.len();
        let mut present: Vec<NodeSet> = Vec::with_capacity(count);
        let mut contexts: Vec<BagContext> = Vec::with_capacity(count);
        let mut tables: Vec<StateTable> = Vec::with_capacity(count);
        stats.tree_nodes = count;
        for node in &self.ntd.nodes {
            let mut here = NodeSet::new(self.g.node_count());
            for &c in &node.children {
                here.union_with(&present[c]);
            }
            for &v in &node.bag {
                here.insert(v);
            }
            let ctx = BagContext::new(self.g, &node.bag, self.targets, &here, self.ell);
            let table = match node.kind {
                NiceKind::Leaf => self.insert(None, &ctx, node.bag[0]),
                NiceKind::Insert(x) => {
                    let c = node.children[0];
                    self.insert(Some((&contexts[c], &tables[c])), &ctx, x)
                }
                NiceKind::Forget(x) => {
                    let c = node.children[0];
                    self.forget(&contexts[c], &tables[c], &ctx, x)
                }
                NiceKind::Join => {
                    let (l, r) = (node.children[0], node.children[1]);
                    self.join(&tables[l], &tables[r], &ctx)
                }
            };
            if let Some(limit) = self.options.max_states {
                if table.len() > limit {
                    return Err(DpError::BudgetExceeded {
                        limit,
                        size: table.len(),
                    });
                }
            }
            stats.largest_table = stats.largest_table.max(table.len());
            stats.total_states += table.len();
            present.push(here);
            contexts.push(ctx);
            tables.push(table);
        }
        let root = self.ntd.root;
        let rctx = &contexts[root];
        let best = tables[root]
            .entries
            .iter()
            .enumerate()
            .filter(|(_, e)| (0..e.state.nodes.len()).all(|p| is_closed(rctx, &e.state, p)))
            .min_by(|(_, a), (_, b)| (a.cost, &a.state).cmp(&(b.cost, &b.state)))
            .map(|(i, _)| i);
        let Some(best) = best else {
            return Ok(None);
        };
        let opt = tables[root].entries[best].cost as usize;
        let witness = self.witness(&contexts, &tables, best);
        if witness.len() != opt {
            return Err(DpError::Internal("witness size differs from the optimum"));
        }
        Ok(Some(DpSolution {
            opt,
            witness,
            stats: *stats,
        }))
    }

    fn witness(&self, contexts: &[BagContext], tables: &[StateTable], best: usize) -> NodeSet {
        let mut set = NodeSet::new(self.g.node_count());
        let mut stack = vec![(self.ntd.root, best)];
        while let Some((i, idx)) = stack.pop() {
            let entry = &tables[i].entries[idx];
            let node = &self.ntd.nodes[i];
            if let NiceKind::Leaf | NiceKind::Insert(_) = node.kind {
                let x = match node.kind {
                    NiceKind::Insert(x) => x,
                    _ => node.bag[0],
                };
                let px = contexts[i]
                    .position(x)
                    .expect("inserted node is in the bag");
                if entry.state.nodes[px].label == Label::Zero {
                    set.insert(x);
                }
            }
            match entry.back {
                Back::Leaf => {}
                Back::Insert { child } | Back::Forget { child } => {
                    stack.push((node.children[0], child as usize));
                }
                Back::Join { left, right } => {
                    stack.push((node.children[0], left as usize));
                    stack.push((node.children[1], right as usize));
                }
            }
        }
        set
    }

    fn accept(&self, ctx: &BagContext, s: &BagState, cost: u32) -> bool {
        cost <= self.bound && !has_dead_hat(ctx, s) && !is_invalid_state(ctx, s)
    }

    /// Introduces `x`; `child` is `None` for a leaf.
    fn insert(
        &self,
        child: Option<(&BagContext, &StateTable)>,
        ctx: &BagContext,
        x: Node,
    ) -> StateTable {
        let px = ctx.position(x).expect("inserted node is in the bag");
        let empty_ctx;
        let empty_table;
        let (cctx, ctable) = match child {
            Some(c) => c,
            None => {
                empty_ctx = BagContext {
                    bag: Vec::new(),
                    edges: Vec::new(),
                    is_target: Vec::new(),
                    has_outside: Vec::new(),
                    ell: self.ell,
                    nbrs: Vec::new(),
                };
                let mut t = StateTable::default();
                t.offer(
                    BagState {
                        nodes: Vec::new(),
                        edges: Vec::new(),
                    },
                    0,
                    Back::Leaf,
                );
                empty_table = t;
                (&empty_ctx, &empty_table)
            }
        };
        // Parent edge -> child edge index, or `None` for edges at x.
        let edge_src: Vec<Option<usize>> = ctx
            .edges
            .iter()
            .map(|&(a, b)| {
                if a == px || b == px {
                    None
                } else {
                    let ca = if a > px { a - 1 } else { a };
                    let cb = if b > px { b - 1 } else { b };
                    cctx.edge_index(ca, cb)
                }
            })
            .collect();
        let xn: Vec<(usize, usize)> = ctx.nbrs[px].clone();
        let mut table = StateTable::default();
        for (ci, entry) in ctable.entries.iter().enumerate() {
            let back = if child.is_some() {
                Back::Insert { child: ci as u32 }
            } else {
                Back::Leaf
            };
            let mut nodes = entry.state.nodes.clone();
            nodes.insert(px, NodeState::new(Label::Inf));
            let edges: Vec<EdgeState> = edge_src
                .iter()
                .map(|src| src.map_or(EdgeState::Undirected, |e| entry.state.edges[e]))
                .collect();
            let base = BagState { nodes, edges };
            let mut emit = |label: Label, incoming: Option<usize>, outs: &[usize]| {
                let mut s = base.clone();
                s.nodes[px].label = label;
                if let Some(v) = incoming {
                    let e = ctx.edge_index(v, px).expect("bag edge");
                    s.edges[e] = ctx.orient(v, px);
                }
                for &v in outs {
                    let e = ctx.edge_index(px, v).expect("bag edge");
                    s.edges[e] = ctx.orient(px, v);
                    let Label::Hat(a) = s.nodes[v].label else {
                        return;
                    };
                    s.nodes[v].label = Label::Plain(a);
                }
                let cost = entry.cost + u32::from(label == Label::Zero);
                normalize(ctx, &mut s);
                if self.accept(ctx, &s, cost) {
                    table.offer(s, cost, back);
                }
            };
            let label_of = |v: usize| base.nodes[v].label;
            if !ctx.is_target[px] {
                emit(Label::Inf, None, &[]);
            }
            // Zero: any set of Hat(1) neighbours may be justified by x.
            let hat_ones: Vec<usize> = xn
                .iter()
                .map(|&(v, _)| v)
                .filter(|&v| label_of(v) == Label::Hat(1))
                .collect();
            for mask in 0u64..(1u64 << hat_ones.len().min(63)) {
                let outs: Vec<usize> = hat_ones
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                emit(Label::Zero, None, &outs);
            }
            for a in 1..=self.ell {
                let outs_for = |skip: Option<usize>| {
                    xn.iter()
                        .map(|&(v, _)| v)
                        .filter(move |&v| Some(v) != skip)
                        .filter(move |&v| matches!(label_of(v), Label::Hat(b) if b > a))
                };
                if ctx.has_outside[px] {
                    emit(Label::Hat(a), None, &[]);
                    for v in outs_for(None) {
                        emit(Label::Hat(a), None, &[v]);
                    }
                }
                for &(u, _) in &xn {
                    let lu = label_of(u);
                    let feeds = match lu {
                        Label::Zero => a == 1,
                        Label::Plain(b) | Label::Hat(b) => b < a,
                        Label::Inf => false,
                    };
                    if !feeds {
                        continue;
                    }
                    emit(Label::Plain(a), Some(u), &[]);
                    for v in outs_for(Some(u)) {
                        emit(Label::Plain(a), Some(u), &[v]);
                    }
                }
            }
        }
        table
    }

    fn forget(
        &self,
        cctx: &BagContext,
        ctable: &StateTable,
        ctx: &BagContext,
        x: Node,
    ) -> StateTable {
        let px = cctx
            .position(x)
            .expect("forgotten node is in the child bag");
        let edge_src: Vec<usize> = ctx
            .edges
            .iter()
            .map(|&(a, b)| {
                let ca = if a >= px { a + 1 } else { a };
                let cb = if b >= px { b + 1 } else { b };
                cctx.edge_index(ca, cb).expect("bag edge present in child")
            })
            .collect();
        let mut table = StateTable::default();
        for (ci, entry) in ctable.entries.iter().enumerate() {
            let cs = &entry.state;
            let xl = cs.nodes[px].label;
            if !is_closed(cctx, cs, px) {
                continue;
            }
            let xv = xl.value().min(self.ell + 1);
            let mut nodes = cs.nodes.clone();
            for &(v, e) in &cctx.nbrs[px] {
                let ns = &mut nodes[v];
                match cctx.arc(cs, e) {
                    Some((t, _)) if t == px => ns.in_from_below = true,
                    Some(_) => {
                        if ns.label.is_timed() {
                            ns.out_head = Some(xv);
                        }
                    }
                    None => {
                        if ns.label.is_timed() {
                            push_below(ns, xv);
                        }
                    }
                }
            }
            nodes.remove(px);
            let edges = edge_src.iter().map(|&e| cs.edges[e]).collect();
            let mut s = BagState { nodes, edges };
            normalize(ctx, &mut s);
            if self.accept(ctx, &s, entry.cost) {
                table.offer(s, entry.cost, Back::Forget { child: ci as u32 });
            }
        }
        table
    }

    fn join(&self, left: &StateTable, right: &StateTable, ctx: &BagContext) -> StateTable {
        type Key = (Vec<EdgeState>, Vec<u32>);
        let key = |s: &BagState| -> Key {
            let labels = s
                .nodes
                .iter()
                .map(|ns| match ns.label {
                    Label::Zero => 0,
                    Label::Inf => INF,
                    Label::Plain(a) | Label::Hat(a) => a,
                })
                .collect();
            (s.edges.clone(), labels)
        };
        let mut groups: HashMap<Key, Vec<usize>, FxBuildHasher> = HashMap::default();
        for (ri, e) in right.entries.iter().enumerate() {
            groups.entry(key(&e.state)).or_default().push(ri);
        }
        let mut table = StateTable::default();
        for (li, le) in left.entries.iter().enumerate() {
            let Some(partners) = groups.get(&key(&le.state)) else {
                continue;
            };
            let zeros = le
                .state
                .nodes
                .iter()
                .filter(|ns| ns.label == Label::Zero)
                .count() as u32;
            'pairs: for &ri in partners {
                let re = &right.entries[ri];
                let mut nodes = le.state.nodes.clone();
                for (p, ns) in nodes.iter_mut().enumerate() {
                    let r = re.state.nodes[p];
                    if ns.in_from_below && r.in_from_below {
                        continue 'pairs;
                    }
                    ns.in_from_below |= r.in_from_below;
                    if let Label::Plain(a) | Label::Hat(a) = ns.label {
                        let bag_in = ctx.nbrs[p]
                            .iter()
                            .filter(|&&(q, e)| ctx.arc(&le.state, e) == Some((q, p)))
                            .count();
                        ns.label = if bag_in + usize::from(ns.in_from_below) > 0 {
                            Label::Plain(a)
                        } else {
                            Label::Hat(a)
                        };
                        match (ns.out_head, r.out_head) {
                            (Some(_), Some(_)) => continue 'pairs,
                            (Some(h), None) => {
                                if r.below_max >= h {
                                    continue 'pairs;
                                }
                            }
                            (None, Some(h)) => {
                                if ns.below_max >= h {
                                    continue 'pairs;
                                }
                                ns.out_head = Some(h);
                            }
                            (None, None) => {}
                        }
                        push_below(ns, r.below_max);
                        push_below(ns, r.below_second);
                    }
                }
                let mut s = BagState {
                    nodes,
                    edges: le.state.edges.clone(),
                };
                normalize(ctx, &mut s);
                let cost = le.cost + re.cost - zeros;
                if self.accept(ctx, &s, cost) {
                    table.offer(
                        s,
                        cost,
                        Back::Join {
                            left: li as u32,
                            right: ri as u32,
                        },
                    );
                }
            }
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treewidth::{heuristic_td, to_nice, TreeDecomposition};

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn solve(g: &Graph, ell: usize) -> DpSolution {
        let ntd = to_nice(&heuristic_td(g)).unwrap();
        solve_dp(g, &NodeSet::full(g.node_count()), ell, &ntd).unwrap()
    }

    #[test]
    fn state_space_formula() {
        assert_eq!(state_space_size(1, 0, 1), 60);
        assert_eq!(state_space_size(0, 0, 7), 1);
        assert_eq!(state_space_size(2, 1, 2), 43200);
        assert_eq!(state_space_size(3, 3, 3), 216_000_000);
        assert_eq!(state_space_size(64, 64, 1 << 40), u64::MAX);
    }

    #[test]
    fn p3_one_round() {
        let g = path(3);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        let sol = solve_dp(&g, &NodeSet::full(3), 1, &to_nice(&td).unwrap()).unwrap();
        assert_eq!(sol.opt, 1);
        assert_eq!(sol.witness.to_vec(), vec![1]);
    }

    #[test]
    fn paths_and_cycles() {
        assert_eq!(solve(&path(1), 1).opt, 1);
        assert_eq!(solve(&path(7), 1).opt, 3);
        assert_eq!(solve(&path(7), 6).opt, 1);
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert_eq!(solve(&c6, 1).opt, 2);
        assert_eq!(solve(&c6, 2).opt, 2);
        assert_eq!(solve(&c6, 3).opt, 1);
    }

    #[test]
    fn invalid_state_examples() {
        let g = Graph::empty(1);
        let targets = NodeSet::full(1);
        let ctx = BagContext::new(&g, &[0], &targets, &NodeSet::full(1), 1);
        let s = BagState {
            nodes: vec![NodeState::new(Label::Inf)],
            edges: vec![],
        };
        assert!(is_invalid_state(&ctx, &s));

        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let ctx = BagContext::new(&g, &[0, 1], &NodeSet::full(2), &NodeSet::full(2), 2);
        let s = BagState {
            nodes: vec![NodeState::new(Label::Zero), NodeState::new(Label::Plain(1))],
            edges: vec![EdgeState::Forward],
        };
        assert!(!is_invalid_state(&ctx, &s));
        let s = BagState {
            nodes: vec![NodeState::new(Label::Zero), NodeState::new(Label::Plain(2))],
            edges: vec![EdgeState::Undirected],
        };
        assert!(is_invalid_state(&ctx, &s));
    }

    #[test]
    fn empty_targets_cost_nothing() {
        let g = path(4);
        let ntd = to_nice(&heuristic_td(&g)).unwrap();
        let sol = solve_dp(&g, &NodeSet::new(4), 2, &ntd).unwrap();
        assert_eq!(sol.opt, 0);
    }

    #[test]
    fn budget_is_enforced() {
        let g = path(6);
        let ntd = to_nice(&heuristic_td(&g)).unwrap();
        let err = solve_dp_with(
            &g,
            &NodeSet::full(6),
            5,
            &ntd,
            &DpOptions {
                max_states: Some(1),
            },
        );
        assert!(matches!(err, Err(DpError::BudgetExceeded { limit: 1, .. })));
    }
}
