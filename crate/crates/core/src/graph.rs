//! Simple undirected graphs over dense node ids and node subsets.

use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

/// Node identifier. Nodes of a graph with `n` nodes are exactly `0..n`.
pub type Node = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at node {0}")]
    SelfLoop(Node),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Node, Node),
    #[error("node {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: Node, n: usize },
    #[error("graph has no nodes")]
    Empty,
}

/// A subset of the nodes `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeSet {
    bits: FixedBitSet,
}

impl NodeSet {
    pub fn new(universe: usize) -> Self {
        NodeSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        NodeSet { bits }
    }

    /// Builds a set from node ids; fails on the first id outside the universe.
    pub fn from_nodes<I>(universe: usize, nodes: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Node>,
    {
        let mut set = NodeSet::new(universe);
        for v in nodes {
            if v >= universe {
                return Err(GraphError::NodeOutOfRange {
                    node: v,
                    n: universe,
                });
            }
            set.bits.insert(v);
        }
        Ok(set)
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: Node) -> bool {
        let was = self.bits.contains(v);
        self.bits.insert(v);
        !was
    }

    pub fn remove(&mut self, v: Node) -> bool {
        let was = self.bits.contains(v);
        if was {
            self.bits.set(v, false);
        }
        was
    }

    pub fn contains(&self, v: Node) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Node> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<Node> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn union_with(&mut self, other: &NodeSet) {
        for v in other.iter() {
            self.bits.insert(v);
        }
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Order-preserving relabelling produced by [`Graph::induced_subgraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdMap {
    pub old_to_new: Vec<Option<Node>>,
    pub new_to_old: Vec<Node>,
}

/// Simple undirected graph. Edges are stored as `(u, v)` with `u < v`,
/// sorted lexicographically; adjacency lists are sorted.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    edges: Vec<(Node, Node)>,
    adj: Vec<Vec<Node>>,
}

impl Graph {
    /// Graph with `n` isolated nodes.
    pub fn empty(n: usize) -> Self {
        Graph {
            edges: Vec::new(),
            adj: alloc::vec![Vec::new(); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Node, Node)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        g.finish();
        Ok(g)
    }

    fn add_edge(&mut self, u: Node, v: Node) -> Result<(), GraphError> {
        let n = self.node_count();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::NodeOutOfRange { node: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if self.adj[a].contains(&b) {
            return Err(GraphError::DuplicateEdge(a, b));
        }
        self.adj[a].push(b);
        self.adj[b].push(a);
        self.edges.push((a, b));
        Ok(())
    }

    fn finish(&mut self) {
        self.edges.sort_unstable();
        for list in &mut self.adj {
            list.sort_unstable();
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> core::ops::Range<Node> {
        0..self.node_count()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> &[(Node, Node)] {
        &self.edges
    }

    /// Sorted open neighbourhood. Panics if `v` is out of range.
    pub fn neighbors(&self, v: Node) -> &[Node] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Node) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Node, v: Node) -> bool {
        u < self.node_count() && self.adj[u].binary_search(&v).is_ok()
    }

    /// `N[v]`: the neighbours of `v` together with `v`.
    pub fn closed_neighborhood(&self, v: Node) -> Result<NodeSet, GraphError> {
        let n = self.node_count();
        if v >= n {
            return Err(GraphError::NodeOutOfRange { node: v, n });
        }
        let mut set = NodeSet::new(n);
        set.insert(v);
        for &u in &self.adj[v] {
            set.insert(u);
        }
        Ok(set)
    }

    /// `G[keep]`, relabelled so that the relative order of kept nodes is preserved.
    pub fn induced_subgraph(&self, keep: &NodeSet) -> Result<(Graph, IdMap), GraphError> {
        let n = self.node_count();
        if let Some(v) = keep.iter().find(|&v| v >= n) {
            return Err(GraphError::NodeOutOfRange { node: v, n });
        }
        let mut old_to_new = alloc::vec![None; n];
        let mut new_to_old = Vec::with_capacity(keep.len());
        for v in keep.iter() {
            old_to_new[v] = Some(new_to_old.len());
            new_to_old.push(v);
        }
        let mut sub = Graph::empty(new_to_old.len());
        for &(u, v) in &self.edges {
            if let (Some(a), Some(b)) = (old_to_new[u], old_to_new[v]) {
                sub.adj[a].push(b);
                sub.adj[b].push(a);
                sub.edges.push((a, b));
            }
        }
        sub.finish();
        Ok((
            sub,
            IdMap {
                old_to_new,
                new_to_old,
            },
        ))
    }

    /// Minimum degree; `min_degree + 1` is the size of the smallest closed neighbourhood.
    pub fn min_degree(&self) -> Result<usize, GraphError> {
        self.adj.iter().map(Vec::len).min().ok_or(GraphError::Empty)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n == 0 {
            return true;
        }
        let mut seen = NodeSet::new(n);
        let mut stack = alloc::vec![0];
        seen.insert(0);
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen.len() == n
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.node_count())
            .field("edges", &self.edges)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(4, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::NodeOutOfRange { node: 2, n: 2 })
        );
    }

    #[test]
    fn closed_neighborhoods() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.closed_neighborhood(1).unwrap().to_vec(), vec![0, 1, 2]);
        let g = Graph::empty(3);
        assert_eq!(g.closed_neighborhood(2).unwrap().to_vec(), vec![2]);
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for v in 0..4 {
            assert_eq!(k4.closed_neighborhood(v).unwrap().len(), 4);
        }
        assert!(k4.closed_neighborhood(4).is_err());
    }

    #[test]
    fn induced_subgraphs() {
        let c4 = cycle(4);
        let keep = NodeSet::from_nodes(4, [0, 1, 2]).unwrap();
        let (sub, map) = c4.induced_subgraph(&keep).unwrap();
        assert_eq!(sub.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(map.new_to_old, vec![0, 1, 2]);
        assert_eq!(map.old_to_new[3], None);

        let (same, map) = c4.induced_subgraph(&NodeSet::full(4)).unwrap();
        assert_eq!(same, c4);
        assert_eq!(map.new_to_old, vec![0, 1, 2, 3]);

        let (none, _) = c4.induced_subgraph(&NodeSet::new(4)).unwrap();
        assert_eq!(none.node_count(), 0);
    }

    #[test]
    fn min_degrees() {
        assert_eq!(cycle(5).min_degree(), Ok(2));
        let star = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.min_degree(), Ok(1));
        let iso = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(iso.min_degree(), Ok(0));
        assert_eq!(Graph::empty(0).min_degree(), Err(GraphError::Empty));
    }
}
