//! Tree decompositions: validation, a min-fill builder, and conversion to the
//! nice (leaf / insert / forget / join) normal form the exact solver walks.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{Graph, Node, NodeSet};

/// Bags plus an undirected tree on bag indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Each bag is sorted and duplicate-free.
    pub bags: Vec<Vec<Node>>,
    /// Tree edges `(i, j)` between bag indices.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TdViolation {
    #[error("node {0} is in no bag")]
    MissingNode(Node),
    #[error("edge {{{0}, {1}}} is in no bag")]
    UncoveredEdge(Node, Node),
    #[error("the bags containing node {0} are not connected in the tree")]
    Disconnected(Node),
    #[error("bag {bag} contains node {node}, which is not in the graph")]
    UnknownNode { bag: usize, node: Node },
    #[error("tree edge ({0}, {1}) refers to a missing bag")]
    BadTreeEdge(usize, usize),
    #[error("the bag tree is not a tree (it is disconnected or has a cycle)")]
    NotATree,
    #[error("decomposition has no bags")]
    NoBags,
}

impl TreeDecomposition {
    /// Sorts and deduplicates bag contents.
    pub fn new(bags: Vec<Vec<Node>>, edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, edges }
    }

    /// Largest bag size minus one (0 when every bag is empty).
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Largest number of graph edges inside a single bag.
    pub fn max_bag_edges(&self, g: &Graph) -> usize {
        self.bags
            .iter()
            .map(|b| {
                let mut count = 0;
                for (i, &u) in b.iter().enumerate() {
                    for &v in &b[i + 1..] {
                        if g.has_edge(u, v) {
                            count += 1;
                        }
                    }
                }
                count
            })
            .max()
            .unwrap_or(0)
    }

    fn adjacency(&self) -> Result<Vec<Vec<usize>>, TdViolation> {
        let k = self.bags.len();
        let mut adj = vec![Vec::new(); k];
        for &(i, j) in &self.edges {
            if i >= k || j >= k || i == j {
                return Err(TdViolation::BadTreeEdge(i, j));
            }
            adj[i].push(j);
            adj[j].push(i);
        }
        Ok(adj)
    }

    /// Checks that the bag tree is a tree and that every node's bags form a
    /// connected subtree. Does not need the graph.
    pub fn check_structure(&self) -> Result<(), TdViolation> {
        let k = self.bags.len();
        if k == 0 {
            return Err(TdViolation::NoBags);
        }
        let adj = self.adjacency()?;
        if self.edges.len() != k - 1 || !connected(&adj, |_| true) {
            return Err(TdViolation::NotATree);
        }
        let max_node = self.bags.iter().flatten().copied().max();
        if let Some(max_node) = max_node {
            let mut holders: Vec<Vec<usize>> = vec![Vec::new(); max_node + 1];
            for (i, b) in self.bags.iter().enumerate() {
                for &v in b {
                    holders[v].push(i);
                }
            }
            for (v, hs) in holders.iter().enumerate() {
                if hs.len() > 1 {
                    let mut member = vec![false; k];
                    for &h in hs {
                        member[h] = true;
                    }
                    if !connected_from(&adj, hs[0], hs.len(), |i| member[i]) {
                        return Err(TdViolation::Disconnected(v));
                    }
                }
            }
        }
        Ok(())
    }
}

fn connected(adj: &[Vec<usize>], keep: impl Fn(usize) -> bool) -> bool {
    let members = (0..adj.len()).filter(|&i| keep(i)).count();
    match (0..adj.len()).find(|&i| keep(i)) {
        None => true,
        Some(start) => connected_from(adj, start, members, keep),
    }
}

fn connected_from(
    adj: &[Vec<usize>],
    start: usize,
    members: usize,
    keep: impl Fn(usize) -> bool,
) -> bool {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if !seen[j] && keep(j) {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == members
}

/// Checks the three decomposition properties (coverage of nodes, coverage of
/// edges, connectivity), plus that the bag tree is a tree.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> Result<(), TdViolation> {
    let n = g.node_count();
    if td.bags.is_empty() {
        return if n == 0 {
            Ok(())
        } else {
            Err(TdViolation::MissingNode(0))
        };
    }
    let mut present = NodeSet::new(n);
    for (i, b) in td.bags.iter().enumerate() {
        for &v in b {
            if v >= n {
                return Err(TdViolation::UnknownNode { bag: i, node: v });
            }
            present.insert(v);
        }
    }
    if let Some(v) = g.nodes().find(|&v| !present.contains(v)) {
        return Err(TdViolation::MissingNode(v));
    }
    for &(u, v) in g.edges() {
        let covered = td
            .bags
            .iter()
            .any(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok());
        if !covered {
            return Err(TdViolation::UncoveredEdge(u, v));
        }
    }
    td.check_structure()
}

/// Decomposition from a min-fill elimination ordering (ties go to the smaller
/// node id). Bags contained in a neighbouring bag are merged away afterwards.
pub fn heuristic_td(g: &Graph) -> TreeDecomposition {
    let n = g.node_count();
    if n == 0 {
        return TreeDecomposition::new(vec![Vec::new()], Vec::new());
    }
    let mut adj: Vec<BTreeSet<Node>> = g
        .nodes()
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut eliminated = vec![false; n];
    let mut position = vec![0usize; n];
    let mut bags = Vec::with_capacity(n);
    let mut later_nbrs = Vec::with_capacity(n);
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !eliminated[v])
            .min_by_key(|&v| (fill_in(&adj, v), v))
            .expect("a node remains");
        eliminated[v] = true;
        position[v] = step;
        let nbrs: Vec<Node> = adj[v].iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            adj[a].remove(&v);
        }
        let mut bag = nbrs.clone();
        bag.push(v);
        bags.push(bag);
        later_nbrs.push(nbrs);
    }
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (step, nbrs) in later_nbrs.iter().enumerate().take(n - 1) {
        let parent = nbrs.iter().map(|&u| position[u]).min().unwrap_or(step + 1);
        edges.push((step, parent));
    }
    simplify(TreeDecomposition::new(bags, edges))
}

fn fill_in(adj: &[BTreeSet<Node>], v: Node) -> usize {
    let nbrs: Vec<Node> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

fn is_subset(a: &[Node], b: &[Node]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Contracts tree edges whose one side is contained in the other.
fn simplify(td: TreeDecomposition) -> TreeDecomposition {
    let k = td.bags.len();
    let mut alive = vec![true; k];
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    for &(i, j) in &td.edges {
        adj[i].insert(j);
        adj[j].insert(i);
    }
    let bags = td.bags;
    loop {
        let mut merged = false;
        for a in 0..k {
            if !alive[a] {
                continue;
            }
            let target = adj[a]
                .iter()
                .copied()
                .find(|&b| is_subset(&bags[a], &bags[b]));
            if let Some(b) = target {
                alive[a] = false;
                let nbrs: Vec<usize> = adj[a].iter().copied().collect();
                for c in nbrs {
                    adj[c].remove(&a);
                    if c != b {
                        adj[c].insert(b);
                        adj[b].insert(c);
                    }
                }
                adj[a].clear();
                merged = true;
            }
        }
        if !merged {
            break;
        }
    }
    let mut remap = vec![usize::MAX; k];
    let mut new_bags = Vec::new();
    for i in 0..k {
        if alive[i] {
            remap[i] = new_bags.len();
            new_bags.push(bags[i].clone());
        }
    }
    let mut edges = Vec::new();
    for i in 0..k {
        for &j in &adj[i] {
            if alive[i] && i < j {
                edges.push((remap[i], remap[j]));
            }
        }
    }
    TreeDecomposition {
        bags: new_bags,
        edges,
    }
}

/// Kind of a node in a nice tree decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    /// A single-node bag with no children.
    Leaf,
    /// Child bag plus the given node.
    Insert(Node),
    /// Child bag minus the given node.
    Forget(Node),
    /// Two children with the same bag.
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted bag contents.
    pub bag: Vec<Node>,
    pub children: Vec<usize>,
}

/// Rooted nice decomposition. Nodes are stored children-first, so iterating
/// `nodes` in order is a valid bottom-up schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NiceError {
    #[error("node {node}: {reason}")]
    Malformed { node: usize, reason: &'static str },
    #[error(transparent)]
    Decomposition(#[from] TdViolation),
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|x| x.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The same bags viewed as a plain decomposition.
    pub fn to_td(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|x| x.bag.clone()).collect();
        let mut edges = Vec::new();
        for (i, x) in self.nodes.iter().enumerate() {
            for &c in &x.children {
                edges.push((c, i));
            }
        }
        TreeDecomposition { bags, edges }
    }

    /// Checks the per-kind shape rules and the children-first order.
    pub fn check_shape(&self) -> Result<(), NiceError> {
        let bad = |node, reason| Err(NiceError::Malformed { node, reason });
        if self.root >= self.nodes.len() {
            return bad(self.root, "root index out of range");
        }
        let mut parents = vec![0usize; self.nodes.len()];
        for (i, x) in self.nodes.iter().enumerate() {
            if x.children.iter().any(|&c| c >= i) {
                return bad(i, "child stored after its parent");
            }
            for &c in &x.children {
                parents[c] += 1;
            }
            match x.kind {
                NiceKind::Leaf => {
                    if !x.children.is_empty() || x.bag.len() != 1 {
                        return bad(i, "leaf must have one node and no children");
                    }
                }
                NiceKind::Insert(v) => {
                    let [c] = x.children[..] else {
                        return bad(i, "insert must have one child");
                    };
                    let child = &self.nodes[c].bag;
                    if x.bag.len() != child.len() + 1
                        || child.contains(&v)
                        || x.bag.binary_search(&v).is_err()
                        || !is_subset(child, &x.bag)
                    {
                        return bad(i, "insert bag must be child bag plus one node");
                    }
                }
                NiceKind::Forget(v) => {
                    let [c] = x.children[..] else {
                        return bad(i, "forget must have one child");
                    };
                    let child = &self.nodes[c].bag;
                    if child.len() != x.bag.len() + 1
                        || x.bag.contains(&v)
                        || child.binary_search(&v).is_err()
                        || !is_subset(&x.bag, child)
                    {
                        return bad(i, "forget bag must be child bag minus one node");
                    }
                }
                NiceKind::Join => {
                    let [a, b] = x.children[..] else {
                        return bad(i, "join must have two children");
                    };
                    if self.nodes[a].bag != x.bag || self.nodes[b].bag != x.bag {
                        return bad(i, "join children must share the bag");
                    }
                }
            }
        }
        for (i, &p) in parents.iter().enumerate() {
            if (i == self.root && p != 0) || (i != self.root && p != 1) {
                return bad(i, "every non-root node needs exactly one parent");
            }
        }
        Ok(())
    }
}

struct NiceBuilder {
    nodes: Vec<NiceNode>,
}

impl NiceBuilder {
    fn push(&mut self, kind: NiceKind, bag: Vec<Node>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode {
            kind,
            bag,
            children,
        });
        self.nodes.len() - 1
    }

    fn leaf_chain(&mut self, bag: &[Node]) -> usize {
        let mut cur = self.push(NiceKind::Leaf, vec![bag[0]], Vec::new());
        let mut have = vec![bag[0]];
        for &v in &bag[1..] {
            have.push(v);
            have.sort_unstable();
            cur = self.push(NiceKind::Insert(v), have.clone(), vec![cur]);
        }
        cur
    }

    /// Forgets `from \ to`, then inserts `to \ from`, both in increasing order.
    fn transition(&mut self, mut cur: usize, from: &[Node], to: &[Node]) -> usize {
        let mut have = from.to_vec();
        for &v in from {
            if to.binary_search(&v).is_err() {
                have.retain(|&x| x != v);
                cur = self.push(NiceKind::Forget(v), have.clone(), vec![cur]);
            }
        }
        for &v in to {
            if from.binary_search(&v).is_err() {
                have.push(v);
                have.sort_unstable();
                cur = self.push(NiceKind::Insert(v), have.clone(), vec![cur]);
            }
        }
        cur
    }
}

/// Converts a decomposition to nice form rooted at its first non-empty bag.
/// Empty bags are dropped; every non-empty bag appears in the result.
pub fn to_nice(td: &TreeDecomposition) -> Result<NiceTreeDecomposition, NiceError> {
    td.check_structure()?;
    let td = drop_empty_bags(td);
    if td.bags.is_empty() {
        return Err(NiceError::Malformed {
            node: 0,
            reason: "decomposition has only empty bags",
        });
    }
    let adj = td.adjacency()?;
    let k = td.bags.len();
    // Breadth-first order from bag 0, then build bottom-up in reverse.
    let mut order = Vec::with_capacity(k);
    let mut parent = vec![usize::MAX; k];
    let mut seen = vec![false; k];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        order.push(i);
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                parent[j] = i;
                queue.push_back(j);
            }
        }
    }
    let mut builder = NiceBuilder { nodes: Vec::new() };
    let mut top = vec![usize::MAX; k];
    for &t in order.iter().rev() {
        let bag = &td.bags[t];
        let children: Vec<usize> = adj[t].iter().copied().filter(|&c| parent[c] == t).collect();
        let mut tops = children
            .iter()
            .map(|&c| builder.transition(top[c], &td.bags[c], bag))
            .collect::<Vec<_>>()
            .into_iter();
        top[t] = match tops.next() {
            None => builder.leaf_chain(bag),
            Some(first) => tops.fold(first, |acc, next| {
                builder.push(NiceKind::Join, bag.clone(), vec![acc, next])
            }),
        };
    }
    Ok(NiceTreeDecomposition {
        root: top[0],
        nodes: builder.nodes,
    })
}

fn drop_empty_bags(td: &TreeDecomposition) -> TreeDecomposition {
    if td.bags.iter().all(|b| !b.is_empty()) {
        return td.clone();
    }
    let k = td.bags.len();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    for &(i, j) in &td.edges {
        adj[i].insert(j);
        adj[j].insert(i);
    }
    // Removing an empty bag splits the tree into parts sharing no nodes, so
    // reattaching all parts to one of them keeps every property.
    for e in 0..k {
        if !td.bags[e].is_empty() {
            continue;
        }
        let nbrs: Vec<usize> = adj[e].iter().copied().collect();
        for &c in &nbrs {
            adj[c].remove(&e);
        }
        adj[e].clear();
        if let Some((&hub, rest)) = nbrs.split_first() {
            for &c in rest {
                adj[c].insert(hub);
                adj[hub].insert(c);
            }
        }
    }
    let mut remap = vec![usize::MAX; k];
    let mut bags = Vec::new();
    for (i, b) in td.bags.iter().enumerate() {
        if !b.is_empty() {
            remap[i] = bags.len();
            bags.push(b.clone());
        }
    }
    let mut edges = Vec::new();
    for i in 0..k {
        for &j in &adj[i] {
            if i < j && remap[i] != usize::MAX && remap[j] != usize::MAX {
                edges.push((remap[i], remap[j]));
            }
        }
    }
    TreeDecomposition { bags, edges }
}
