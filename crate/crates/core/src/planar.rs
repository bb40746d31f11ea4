//! Embedded planar graphs, outerplanarity levels and the shifting scheme.

use alloc::collections::btree_map::Entry;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::dp::{solve_dp_with, DpError, DpOptions};
use crate::graph::{Graph, Node, NodeSet};
use crate::propagation::is_feasible;
use crate::treewidth::{heuristic_td, to_nice, validate_td, TdViolation, TreeDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("rotation has {found} entries for {expected} nodes")]
    NodeCount { expected: usize, found: usize },
    #[error("rotation at node {0} is not a permutation of its neighbours")]
    NotAPermutation(Node),
    #[error("outer dart ({0}, {1}) is not an edge")]
    BadOuterDart(Node, Node),
    #[error("graph with edges needs an outer dart")]
    MissingOuterDart,
    #[error("graph is not connected")]
    Disconnected,
    #[error("Euler check failed: {nodes} nodes, {edges} edges, {faces} faces")]
    NotPlanar {
        nodes: usize,
        edges: usize,
        faces: usize,
    },
    #[error("coordinate count {found} does not match {expected} nodes")]
    CoordinateCount { expected: usize, found: usize },
    #[error("nodes {0} and {1} share a position or direction")]
    Degenerate(Node, Node),
}

/// Counter-clockwise neighbour order around every node plus one dart on the
/// exterior face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    rotation: Vec<Vec<Node>>,
    outer: Option<(Node, Node)>,
    /// `slot[v][k]`: index in `rotation[v]` of the `k`-th smallest neighbour.
    slot: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn new(
        g: &Graph,
        rotation: Vec<Vec<Node>>,
        outer: Option<(Node, Node)>,
    ) -> Result<Self, EmbeddingError> {
        let n = g.node_count();
        if rotation.len() != n {
            return Err(EmbeddingError::NodeCount {
                expected: n,
                found: rotation.len(),
            });
        }
        let mut slot = Vec::with_capacity(n);
        for (v, rot) in rotation.iter().enumerate() {
            let nbrs = g.neighbors(v);
            if rot.len() != nbrs.len() {
                return Err(EmbeddingError::NotAPermutation(v));
            }
            let mut s = vec![usize::MAX; nbrs.len()];
            for (idx, u) in rot.iter().enumerate() {
                match nbrs.binary_search(u) {
                    Ok(k) if s[k] == usize::MAX => s[k] = idx,
                    _ => return Err(EmbeddingError::NotAPermutation(v)),
                }
            }
            slot.push(s);
        }
        match outer {
            Some((a, b)) if !g.has_edge(a, b) => return Err(EmbeddingError::BadOuterDart(a, b)),
            None if g.edge_count() > 0 => return Err(EmbeddingError::MissingOuterDart),
            _ => {}
        }
        let rs = RotationSystem {
            rotation,
            outer,
            slot,
        };
        if !g.is_connected() {
            return Err(EmbeddingError::Disconnected);
        }
        let faces = rs.faces(g, &NodeSet::full(n)).len();
        let (v, e) = (n as i64, g.edge_count() as i64);
        if g.edge_count() > 0 && v - e + faces as i64 != 2 {
            return Err(EmbeddingError::NotPlanar {
                nodes: n,
                edges: g.edge_count(),
                faces,
            });
        }
        Ok(rs)
    }

    /// Embedding from integer straight-line coordinates. Neighbours are
    /// sorted by exact angle; the exterior face is the face with the most
    /// negative signed area.
    pub fn from_integer_coordinates(
        g: &Graph,
        coords: &[(i64, i64)],
    ) -> Result<Self, EmbeddingError> {
        let n = g.node_count();
        if coords.len() != n {
            return Err(EmbeddingError::CoordinateCount {
                expected: n,
                found: coords.len(),
            });
        }
        let mut rotation = Vec::with_capacity(n);
        for v in g.nodes() {
            let (x0, y0) = coords[v];
            let dir = |u: Node| (coords[u].0 - x0, coords[u].1 - y0);
            let mut nbrs = g.neighbors(v).to_vec();
            for &u in &nbrs {
                if dir(u) == (0, 0) {
                    return Err(EmbeddingError::Degenerate(v, u));
                }
            }
            nbrs.sort_by(|&a, &b| angle_cmp(dir(a), dir(b)));
            if let Some(w) = nbrs
                .windows(2)
                .find(|w| angle_cmp(dir(w[0]), dir(w[1])).is_eq())
            {
                return Err(EmbeddingError::Degenerate(w[0], w[1]));
            }
            rotation.push(nbrs);
        }
        let mut rs = RotationSystem::new(g, rotation, g.edges().first().copied())?;
        let outer = rs
            .faces(g, &NodeSet::full(n))
            .into_iter()
            .min_by_key(|face| {
                let mut twice_area: i128 = 0;
                for &(a, b) in face {
                    let (xa, ya) = coords[a];
                    let (xb, yb) = coords[b];
                    twice_area += xa as i128 * yb as i128 - xb as i128 * ya as i128;
                }
                twice_area
            })
            .map(|face| face[0]);
        rs.outer = outer;
        Ok(rs)
    }

    pub fn rotation(&self, v: Node) -> &[Node] {
        &self.rotation[v]
    }

    pub fn outer_dart(&self) -> Option<(Node, Node)> {
        self.outer
    }

    /// Neighbour of `v` preceding `u` counter-clockwise among `alive` nodes.
    fn pred_alive(&self, g: &Graph, alive: &NodeSet, v: Node, u: Node) -> Node {
        let rot = &self.rotation[v];
        let k = g
            .neighbors(v)
            .binary_search(&u)
            .expect("u is a neighbour of v");
        let start = self.slot[v][k];
        let d = rot.len();
        (1..=d)
            .map(|step| rot[(start + d - step) % d])
            .find(|&w| alive.contains(w))
            .expect("u itself is alive")
    }

    /// Darts of the face of `G[alive]` containing dart `(a, b)`. The face lies
    /// to the left of each dart.
    pub fn face_of(&self, g: &Graph, alive: &NodeSet, a: Node, b: Node) -> Vec<(Node, Node)> {
        let mut face = vec![(a, b)];
        let (mut u, mut v) = (a, b);
        loop {
            let w = self.pred_alive(g, alive, v, u);
            (u, v) = (v, w);
            if (u, v) == (a, b) {
                return face;
            }
            face.push((u, v));
        }
    }

    /// All faces of `G[alive]` as dart cycles, in order of their smallest dart.
    pub fn faces(&self, g: &Graph, alive: &NodeSet) -> Vec<Vec<(Node, Node)>> {
        let mut seen = BTreeSet::new();
        let mut faces = Vec::new();
        for &(x, y) in g.edges() {
            if !alive.contains(x) || !alive.contains(y) {
                continue;
            }
            for (a, b) in [(x, y), (y, x)] {
                if seen.contains(&(a, b)) {
                    continue;
                }
                let face = self.face_of(g, alive, a, b);
                for &d in &face {
                    seen.insert(d);
                }
                faces.push(face);
            }
        }
        faces
    }
}

fn half(d: (i64, i64)) -> u8 {
    if d.1 > 0 || (d.1 == 0 && d.0 > 0) {
        0
    } else {
        1
    }
}

/// Counter-clockwise order of directions starting from the positive x axis.
fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> core::cmp::Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        0.cmp(&cross)
    })
}

/// Level (1-based) of every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelAssignment {
    pub level: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LevelError {
    #[error("level count {found} does not match {expected} nodes")]
    Count { expected: usize, found: usize },
    #[error("node {0} has level 0; levels start at 1")]
    Zero(Node),
    #[error("no node has level 1")]
    NoFirstLevel,
    #[error("edge ({0}, {1}) skips a level")]
    Skip(Node, Node),
}

impl LevelAssignment {
    pub fn max_level(&self) -> usize {
        self.level.iter().copied().max().unwrap_or(0)
    }

    /// Nodes whose level lies in `lo..=hi`.
    pub fn range(&self, lo: usize, hi: usize) -> Vec<Node> {
        (0..self.level.len())
            .filter(|&v| (lo..=hi).contains(&self.level[v]))
            .collect()
    }

    /// Structural check for supplied levels: the lowest level is 1 and no
    /// edge joins levels more than one apart.
    pub fn validate(&self, g: &Graph) -> Result<(), LevelError> {
        if self.level.len() != g.node_count() {
            return Err(LevelError::Count {
                expected: g.node_count(),
                found: self.level.len(),
            });
        }
        if let Some(v) = self.level.iter().position(|&l| l == 0) {
            return Err(LevelError::Zero(v));
        }
        if !self.level.is_empty() && !self.level.contains(&1) {
            return Err(LevelError::NoFirstLevel);
        }
        for &(u, v) in g.edges() {
            if self.level[u].abs_diff(self.level[v]) > 1 {
                return Err(LevelError::Skip(u, v));
            }
        }
        Ok(())
    }
}

/// Peels exterior faces: level 1 is the exterior face of `g`, level `i + 1`
/// the exterior faces of the components left after deleting levels `1..=i`.
pub fn compute_levels(g: &Graph, rs: &RotationSystem) -> LevelAssignment {
    let n = g.node_count();
    let mut level = vec![0usize; n];
    let mut alive = NodeSet::full(n);
    let mut current = 1;
    let mut first: Vec<Node> = match rs.outer {
        Some((a, b)) => rs
            .face_of(g, &alive, a, b)
            .into_iter()
            .map(|(u, _)| u)
            .collect(),
        None => (0..n).collect(),
    };
    while !first.is_empty() {
        for &v in &first {
            if level[v] == 0 {
                level[v] = current;
            }
        }
        for &v in &first {
            alive.remove(v);
        }
        current += 1;
        let mut next = Vec::new();
        let mut done = NodeSet::new(n);
        for h in alive.iter() {
            if done.contains(h) {
                continue;
            }
            let Some(&x) = g.neighbors(h).iter().find(|&&x| !alive.contains(x)) else {
                continue;
            };
            let component = component_of(g, &alive, h);
            // The exterior face of this component holds the angle at `h`
            // where the deleted neighbour `x` sat.
            let live_nbr = g.neighbors(h).iter().any(|&w| alive.contains(w));
            if live_nbr {
                let s = succ_alive(rs, g, &alive, h, x);
                for (u, _) in rs.face_of(g, &alive, s, h) {
                    next.push(u);
                }
            } else {
                next.push(h);
            }
            for v in component {
                done.insert(v);
            }
        }
        next.sort_unstable();
        next.dedup();
        first = next;
    }
    LevelAssignment { level }
}

fn succ_alive(rs: &RotationSystem, g: &Graph, alive: &NodeSet, v: Node, u: Node) -> Node {
    let rot = &rs.rotation[v];
    let k = g
        .neighbors(v)
        .binary_search(&u)
        .expect("u is a neighbour of v");
    let start = rs.slot[v][k];
    let d = rot.len();
    (1..=d)
        .map(|step| rot[(start + step) % d])
        .find(|&w| alive.contains(w))
        .expect("caller checked for a live neighbour")
}

fn component_of(g: &Graph, alive: &NodeSet, start: Node) -> Vec<Node> {
    let mut seen = NodeSet::new(g.node_count());
    seen.insert(start);
    let mut stack = vec![start];
    let mut out = Vec::new();
    while let Some(v) = stack.pop() {
        out.push(v);
        for &w in g.neighbors(v) {
            if alive.contains(w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    out
}

/// Inclusive range of levels.
pub type LevelRange = (usize, usize);

/// One block of a shift: solve on `G[b]` covering `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub shift: usize,
    pub j: i64,
    /// Clamped level ranges.
    pub b_levels: LevelRange,
    pub c_levels: LevelRange,
    pub b: Vec<Node>,
    pub c: Vec<Node>,
}

/// Blocks of shift `i` for every `j` whose core level range meets
/// `1..=max_level`. Core ranges of one shift tile the levels.
pub fn build_blocks(levels: &LevelAssignment, i: usize, k: usize, ell: usize) -> Vec<Block> {
    let max = levels.max_level() as i64;
    let (i, k, ell) = (i as i64, k as i64, ell as i64);
    let clamp = |lo: i64, hi: i64| (lo.max(1) as usize, hi.min(max) as usize);
    let mut blocks = Vec::new();
    let mut j = (2 - i - k).div_euclid(k);
    loop {
        let c_lo = j * k + i;
        let c_hi = (j + 1) * k + i - 1;
        if c_lo > max {
            break;
        }
        if c_hi >= 1 {
            let c_levels = clamp(c_lo, c_hi);
            let b_levels = clamp(c_lo - 2 * ell + 1, c_hi + 2 * ell - 1);
            blocks.push(Block {
                shift: i as usize,
                j,
                b_levels,
                c_levels,
                b: levels.range(b_levels.0, b_levels.1),
                c: levels.range(c_levels.0, c_levels.1),
            });
        }
        j += 1;
    }
    blocks
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PtasError {
    #[error("epsilon must satisfy 0 < eps <= 1, got {0}/{1}")]
    BadEpsilon(u64, u64),
    #[error("the number of rounds must be at least 1")]
    NoRounds,
    #[error(transparent)]
    Levels(#[from] LevelError),
    #[error("block solver failed: {0}")]
    Dp(#[from] DpError),
    #[error("decomposition for block {j} of shift {shift}: {violation}")]
    BlockDecomposition {
        shift: usize,
        j: i64,
        violation: TdViolation,
    },
    #[error("combined solution of shift {0} is not feasible")]
    Infeasible(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtasResult {
    pub k: usize,
    /// The chosen shift `i`.
    pub shift: usize,
    pub solution: NodeSet,
    /// `(j, block solution size)` for the chosen shift.
    pub block_sizes: Vec<(i64, usize)>,
    /// Solution size of every shift, index `i - 1`.
    pub shift_sizes: Vec<usize>,
    /// Largest width among the decompositions used for blocks.
    pub max_block_width: usize,
}

/// Width bound `3 * (k + 4 * ell)` for a block of `k + 4 * ell - 2` levels.
pub fn block_width_bound(k: usize, ell: usize) -> usize {
    3 * (k + 4 * ell)
}

/// `4 * ceil(ell / eps)` for `eps = num / den`.
pub fn block_width(ell: usize, eps_num: u64, eps_den: u64) -> usize {
    let top = ell as u64 * eps_den;
    (4 * top.div_ceil(eps_num)) as usize
}

/// The shifting algorithm: for each shift solve every block exactly, take
/// the union, and return the smallest union over all shifts.
pub fn ptas(
    g: &Graph,
    levels: &LevelAssignment,
    ell: usize,
    eps_num: u64,
    eps_den: u64,
    options: &DpOptions,
) -> Result<PtasResult, PtasError> {
    ptas_with(g, levels, ell, (eps_num, eps_den), options, &mut |_, _| {
        None
    })
}

/// As [`ptas`], asking `td_for` for a decomposition of each block subgraph
/// `G[B]` (ids as in the induced subgraph) and falling back to
/// [`heuristic_td`] when it returns `None`. Blocks with equal level ranges
/// are solved once, so `td_for` sees each distinct block once.
pub fn ptas_with(
    g: &Graph,
    levels: &LevelAssignment,
    ell: usize,
    (eps_num, eps_den): (u64, u64),
    options: &DpOptions,
    td_for: &mut dyn FnMut(&Block, &Graph) -> Option<TreeDecomposition>,
) -> Result<PtasResult, PtasError> {
    if eps_num == 0 || eps_den == 0 || eps_num > eps_den {
        return Err(PtasError::BadEpsilon(eps_num, eps_den));
    }
    if ell == 0 {
        return Err(PtasError::NoRounds);
    }
    levels.validate(g)?;
    let n = g.node_count();
    let k = block_width(ell, eps_num, eps_den);
    let mut cache: BTreeMap<(LevelRange, LevelRange), NodeSet> = BTreeMap::new();
    let mut best: Option<PtasResult> = None;
    let mut shift_sizes = Vec::with_capacity(k);
    let mut max_block_width = 0;
    for i in 1..=k {
        let mut union = NodeSet::new(n);
        let mut sizes = Vec::new();
        for block in build_blocks(levels, i, k, ell) {
            if block.c.is_empty() {
                sizes.push((block.j, 0));
                continue;
            }
            let key = (block.b_levels, block.c_levels);
            let sol = match cache.entry(key) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => {
                    let (sol, width) = solve_block(g, &block, ell, options, td_for)?;
                    max_block_width = max_block_width.max(width);
                    e.insert(sol)
                }
            };
            sizes.push((block.j, sol.len()));
            union.union_with(sol);
        }
        if !is_feasible(g, &union, &NodeSet::full(n), ell).expect("universe matches") {
            return Err(PtasError::Infeasible(i));
        }
        shift_sizes.push(union.len());
        if best.as_ref().is_none_or(|b| union.len() < b.solution.len()) {
            best = Some(PtasResult {
                k,
                shift: i,
                solution: union,
                block_sizes: sizes,
                shift_sizes: Vec::new(),
                max_block_width: 0,
            });
        }
    }
    let mut best = best.expect("k >= 4 shifts");
    best.shift_sizes = shift_sizes;
    best.max_block_width = max_block_width;
    Ok(best)
}

fn solve_block(
    g: &Graph,
    block: &Block,
    ell: usize,
    options: &DpOptions,
    td_for: &mut dyn FnMut(&Block, &Graph) -> Option<TreeDecomposition>,
) -> Result<(NodeSet, usize), PtasError> {
    let n = g.node_count();
    let keep = NodeSet::from_nodes(n, block.b.iter().copied()).expect("in range");
    let (sub, map) = g.induced_subgraph(&keep).expect("in range");
    let targets = NodeSet::from_nodes(
        sub.node_count(),
        block
            .c
            .iter()
            .map(|&v| map.old_to_new[v].expect("core inside block")),
    )
    .expect("in range");
    let td = match td_for(block, &sub) {
        Some(td) => {
            validate_td(&sub, &td).map_err(|violation| PtasError::BlockDecomposition {
                shift: block.shift,
                j: block.j,
                violation,
            })?;
            td
        }
        None => heuristic_td(&sub),
    };
    let ntd = to_nice(&td).map_err(DpError::from)?;
    let sol = solve_dp_with(&sub, &targets, ell, &ntd, options)?;
    let witness =
        NodeSet::from_nodes(n, sol.witness.iter().map(|v| map.new_to_old[v])).expect("in range");
    Ok((witness, td.width()))
}
