//! Instance families: spiders, pendant cycles, the path-attachment reduction
//! from dominating set, and the MinRep reduction with its one-way gadgets.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Node, NodeSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("{what} must be at least {min}, got {got}")]
    TooSmall {
        what: &'static str,
        min: usize,
        got: usize,
    },
    #[error("edge {index} ({a}, {b}) leaves the node range of its side")]
    EdgeOutOfRange { index: usize, a: usize, b: usize },
    #[error("edge ({0}, {1}) is listed twice")]
    DuplicateEdge(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn at_least(what: &'static str, min: usize, got: usize) -> Result<(), GenError> {
    if got < min {
        return Err(GenError::TooSmall { what, min, got });
    }
    Ok(())
}

/// `m` paths of `k` nodes hanging off a common center. Node 0 is the center;
/// node `1 + p*k + q` is position `q` (0-based, 0 next to the center) of path `p`.
pub fn spider(m: usize, k: usize) -> Result<Graph, GenError> {
    at_least("path count", 1, m)?;
    at_least("path length", 1, k)?;
    let id = |p: usize, q: usize| 1 + p * k + q;
    let mut edges = Vec::with_capacity(m * k);
    for p in 0..m {
        edges.push((0, id(p, 0)));
        for q in 1..k {
            edges.push((id(p, q - 1), id(p, q)));
        }
    }
    Ok(Graph::from_edges(1 + m * k, edges)?)
}

/// Cycle `0..m` with a pendant node `m + i` attached to each cycle node `i`.
pub fn pendant_cycle(m: usize) -> Result<Graph, GenError> {
    at_least("cycle length", 3, m)?;
    let cycle = (0..m).map(|i| (i, (i + 1) % m));
    let pendants = (0..m).map(|i| (i, m + i));
    Ok(Graph::from_edges(2 * m, cycle.chain(pendants))?)
}

/// Hangs a fresh path of `ell - 1` nodes off every node. Path node `j`
/// (0-based, 0 adjacent to `v`) of node `v` gets id `n + v*(ell-1) + j`.
pub fn attach_paths(g: &Graph, ell: usize) -> Result<Graph, GenError> {
    at_least("number of rounds", 1, ell)?;
    if ell == 1 {
        return Ok(g.clone());
    }
    let n = g.node_count();
    let len = ell - 1;
    let id = |v: Node, j: usize| n + v * len + j;
    let mut edges: Vec<(Node, Node)> = g.edges().to_vec();
    for v in g.nodes() {
        edges.push((v, id(v, 0)));
        for j in 1..len {
            edges.push((id(v, j - 1), id(v, j)));
        }
    }
    Ok(Graph::from_edges(n * ell, edges)?)
}

/// Bipartite MinRep instance. Side A has `q_a` groups of `m_a` nodes (node `a`
/// is in group `a / m_a`), side B likewise; edges are `(a, b)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinRepInstance {
    pub q_a: usize,
    pub m_a: usize,
    pub q_b: usize,
    pub m_b: usize,
    edges: Vec<(usize, usize)>,
}

impl MinRepInstance {
    pub fn new(
        q_a: usize,
        m_a: usize,
        q_b: usize,
        m_b: usize,
        mut edges: Vec<(usize, usize)>,
    ) -> Result<Self, GenError> {
        for (what, v) in [("q_A", q_a), ("m_A", m_a), ("q_B", q_b), ("m_B", m_b)] {
            at_least(what, 1, v)?;
        }
        for (index, &(a, b)) in edges.iter().enumerate() {
            if a >= q_a * m_a || b >= q_b * m_b {
                return Err(GenError::EdgeOutOfRange { index, a, b });
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GenError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(MinRepInstance {
            q_a,
            m_a,
            q_b,
            m_b,
            edges,
        })
    }

    pub fn a_count(&self) -> usize {
        self.q_a * self.m_a
    }

    pub fn b_count(&self) -> usize {
        self.q_b * self.m_b
    }

    /// Sorted `(a, b)` edges.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Group pairs `(i, j)` joined by at least one edge, with their edges.
    pub fn super_edges(&self) -> BTreeMap<(usize, usize), Vec<(usize, usize)>> {
        let mut map: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for &(a, b) in &self.edges {
            map.entry((a / self.m_a, b / self.m_b))
                .or_default()
                .push((a, b));
        }
        map
    }
}

/// Whether the picked nodes cover every super edge. `pick` ranges over
/// `0..|A| + |B|` with B node `b` at index `|A| + b`.
pub fn minrep_cover_check(inst: &MinRepInstance, pick: &NodeSet) -> bool {
    let na = inst.a_count();
    inst.super_edges().values().all(|es| {
        es.iter()
            .any(|&(a, b)| pick.contains(a) && pick.contains(na + b))
    })
}

/// Smallest covering pick by exhaustive search in increasing size.
pub fn minrep_optimum(inst: &MinRepInstance) -> (usize, NodeSet) {
    let total = inst.a_count() + inst.b_count();
    for k in 0..=total {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let pick = NodeSet::from_nodes(total, idx.iter().copied()).expect("in range");
            if minrep_cover_check(inst, &pick) {
                return (k, pick);
            }
            let mut i = k;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if idx[i] < total - k + i {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    unreachable!("picking every node covers every super edge")
}

/// Number of gadget copies per super edge.
pub const LAMBDA: usize = 4;

/// Which end of an edge a one-way gadget feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    U,
    V,
}

/// Role of a node in the reduction output. `copy` is in `0..LAMBDA`, `edge`
/// indexes the edges of the super edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    A {
        group: usize,
    },
    B {
        group: usize,
    },
    Master,
    MasterPendant,
    Center {
        super_edge: (usize, usize),
        copy: usize,
    },
    EdgeU {
        super_edge: (usize, usize),
        copy: usize,
        edge: usize,
    },
    EdgeV {
        super_edge: (usize, usize),
        copy: usize,
        edge: usize,
    },
    EdgeD {
        super_edge: (usize, usize),
        copy: usize,
        edge: usize,
    },
    Alpha {
        super_edge: (usize, usize),
        copy: usize,
        edge: usize,
        side: Side,
    },
    Beta {
        super_edge: (usize, usize),
        copy: usize,
        edge: usize,
        side: Side,
    },
    Gamma {
        super_edge: (usize, usize),
        copy: usize,
        edge: usize,
        side: Side,
    },
}

impl Role {
    /// Nodes drawn with a dashed line to the master node.
    pub fn is_dashed(self) -> bool {
        matches!(
            self,
            Role::EdgeD { .. } | Role::Alpha { .. } | Role::Gamma { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub graph: Graph,
    pub roles: Vec<Role>,
    /// The master node `w*`.
    pub master: Node,
}

/// The reduction from MinRep to ℓ-round PDS. A nodes keep ids `0..|A|`, B
/// nodes follow, then `w*` and its three pendants, then the gadget copies.
///
/// Each copy of a super edge has a center `c` and, per edge `e_q = (a, b)`,
/// nodes `u_q ~ a`, `v_q ~ b` and `d_q ~ {u_q, v_q, c}`. A one-way gadget
/// `alpha ~ {c, beta, x}`, `beta ~ gamma`, `gamma ~ c` joins `c` to each
/// `x` in `{u_q, v_q}`. The nodes `d_q`, `alpha`, `gamma` are also adjacent
/// to `w*`. Once `c` is covered the gadget covers `x` within two more rounds,
/// but covering `x` never lets propagation reach `c`.
pub fn minrep_to_pds(inst: &MinRepInstance) -> Result<Reduction, GenError> {
    let na = inst.a_count();
    let nb = inst.b_count();
    let mut roles: Vec<Role> = Vec::new();
    roles.extend((0..na).map(|a| Role::A {
        group: a / inst.m_a,
    }));
    roles.extend((0..nb).map(|b| Role::B {
        group: b / inst.m_b,
    }));
    let master = roles.len();
    roles.push(Role::Master);
    roles.extend([Role::MasterPendant; 3]);
    let mut edges: Vec<(Node, Node)> = Vec::new();
    for v in 0..master {
        edges.push((v, master));
    }
    for k in 1..=3 {
        edges.push((master, master + k));
    }
    let fresh = |roles: &mut Vec<Role>, role: Role| {
        roles.push(role);
        roles.len() - 1
    };
    for (&se, es) in &inst.super_edges() {
        for copy in 0..LAMBDA {
            let c = fresh(
                &mut roles,
                Role::Center {
                    super_edge: se,
                    copy,
                },
            );
            for (q, &(a, b)) in es.iter().enumerate() {
                let u = fresh(
                    &mut roles,
                    Role::EdgeU {
                        super_edge: se,
                        copy,
                        edge: q,
                    },
                );
                let v = fresh(
                    &mut roles,
                    Role::EdgeV {
                        super_edge: se,
                        copy,
                        edge: q,
                    },
                );
                let d = fresh(
                    &mut roles,
                    Role::EdgeD {
                        super_edge: se,
                        copy,
                        edge: q,
                    },
                );
                edges.extend([(u, a), (v, na + b), (d, u), (d, v), (d, c), (d, master)]);
                for (side, x) in [(Side::U, u), (Side::V, v)] {
                    let alpha = fresh(
                        &mut roles,
                        Role::Alpha {
                            super_edge: se,
                            copy,
                            edge: q,
                            side,
                        },
                    );
                    let beta = fresh(
                        &mut roles,
                        Role::Beta {
                            super_edge: se,
                            copy,
                            edge: q,
                            side,
                        },
                    );
                    let gamma = fresh(
                        &mut roles,
                        Role::Gamma {
                            super_edge: se,
                            copy,
                            edge: q,
                            side,
                        },
                    );
                    edges.extend([
                        (alpha, c),
                        (alpha, beta),
                        (alpha, x),
                        (alpha, master),
                        (beta, gamma),
                        (gamma, c),
                        (gamma, master),
                    ]);
                }
            }
        }
    }
    let graph = Graph::from_edges(roles.len(), edges)?;
    Ok(Reduction {
        graph,
        roles,
        master,
    })
}

/// Upper bound `4 + |V| + 10·λ·|E|` on the reduction's node count.
pub fn minrep_size_bound(inst: &MinRepInstance) -> usize {
    4 + inst.a_count() + inst.b_count() + 10 * LAMBDA * inst.edges().len()
}

/// A single copy of the gadget for one edge: nodes
/// `[w*, c, u, v, d, alpha_u, beta_u, gamma_u, alpha_v, beta_v, gamma_v]`.
pub fn single_gadget() -> Graph {
    let inst = MinRepInstance::new(1, 1, 1, 1, vec![(0, 0)]).expect("valid instance");
    let red = minrep_to_pds(&inst).expect("valid instance");
    let keep: Vec<Node> = red
        .roles
        .iter()
        .enumerate()
        .filter(|(_, r)| match r {
            Role::Master => true,
            Role::Center { copy, .. }
            | Role::EdgeU { copy, .. }
            | Role::EdgeV { copy, .. }
            | Role::EdgeD { copy, .. }
            | Role::Alpha { copy, .. }
            | Role::Beta { copy, .. }
            | Role::Gamma { copy, .. } => *copy == 0,
            _ => false,
        })
        .map(|(v, _)| v)
        .collect();
    let set = NodeSet::from_nodes(red.graph.node_count(), keep).expect("in range");
    red.graph.induced_subgraph(&set).expect("in range").0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagation::propagate;

    #[test]
    fn spider_shapes() {
        let g = spider(3, 2).unwrap();
        assert_eq!((g.node_count(), g.edge_count(), g.degree(0)), (7, 6, 3));
        assert_eq!(spider(1, 1).unwrap().edges(), &[(0, 1)]);
        assert_eq!(spider(2, 1).unwrap().edges(), &[(0, 1), (0, 2)]);
        assert!(spider(0, 1).is_err());
    }

    #[test]
    fn pendant_cycle_shape() {
        let g = pendant_cycle(9).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (18, 18));
        assert_eq!(pendant_cycle(3).unwrap().node_count(), 6);
        assert!(pendant_cycle(2).is_err());
    }

    #[test]
    fn attach_paths_shape() {
        let p2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(attach_paths(&p2, 1).unwrap(), p2);
        let g = attach_paths(&p2, 3).unwrap();
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 4), (2, 3), (4, 5)]);
    }

    #[test]
    fn reduction_without_edges() {
        let inst = MinRepInstance::new(1, 2, 1, 2, vec![]).unwrap();
        let red = minrep_to_pds(&inst).unwrap();
        assert_eq!(red.graph.node_count(), 4 + 4);
        assert_eq!(red.graph.degree(red.master), 4 + 3);
    }

    #[test]
    fn reduction_with_one_edge() {
        let inst = MinRepInstance::new(1, 1, 1, 1, vec![(0, 0)]).unwrap();
        let red = minrep_to_pds(&inst).unwrap();
        assert_eq!(red.graph.node_count(), 2 + 4 + LAMBDA * 10);
        assert!(red.graph.node_count() <= minrep_size_bound(&inst));
        let centers = red
            .roles
            .iter()
            .filter(|r| matches!(r, Role::Center { .. }))
            .count();
        assert_eq!(centers, LAMBDA);
        assert!(!red.graph.has_edge(0, 1));
    }

    #[test]
    fn gadget_is_one_way() {
        let g = single_gadget();
        assert_eq!(g.node_count(), 11);
        let (w, c, u, v) = (0, 1, 2, 3);
        let from = |s: &[Node]| NodeSet::from_nodes(11, s.iter().copied()).unwrap();
        let forward = propagate(&g, &from(&[w, c]), 4).unwrap();
        assert!(forward.times.iter().all(|t| t.within(4)));
        let backward = propagate(&g, &from(&[w, u]), 10).unwrap();
        assert!(!backward.times[c].is_finite());
        let both = propagate(&g, &from(&[w, u, v]), 10).unwrap();
        assert!(both.times[c].is_finite());
    }

    #[test]
    fn cover_checks() {
        let inst = MinRepInstance::new(1, 2, 1, 2, vec![(0, 1), (1, 0)]).unwrap();
        assert!(minrep_cover_check(&inst, &NodeSet::full(4)));
        assert!(!minrep_cover_check(&inst, &NodeSet::new(4)));
        let (opt, pick) = minrep_optimum(&inst);
        assert_eq!(opt, 2);
        assert_eq!(pick.to_vec(), vec![0, 3]);
    }
}
