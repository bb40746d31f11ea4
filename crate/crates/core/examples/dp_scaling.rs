//! Times the exact solver on random graphs of growing density and round bound.

use lpds_core::dp::solve_dp;
use lpds_core::graph::{Graph, NodeSet};
use lpds_core::treewidth::{heuristic_td, to_nice};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [7usize, 8, 10] {
        for p in [0.3, 0.5, 0.8] {
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let td = heuristic_td(&g);
            let ntd = to_nice(&td).unwrap();
            for ell in [1, 2, n - 1] {
                let t = Instant::now();
                let s = solve_dp(&g, &NodeSet::full(n), ell, &ntd).unwrap();
                println!(
                    "n={n} p={p} w={} ell={ell} opt={} largest={} total={} {:?}",
                    td.width(),
                    s.opt,
                    s.stats.largest_table,
                    s.stats.total_states,
                    t.elapsed()
                );
            }
        }
    }
}
