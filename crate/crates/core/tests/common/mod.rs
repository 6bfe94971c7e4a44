#![allow(dead_code)]

use proptest::prelude::*;
use spanres::graph::Multigraph;
use spanres::linalg::frac;

/// Multigraphs on `2..=max_n` vertices with `p/q` weights, possibly disconnected.
pub fn multigraph(max_n: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n, 1i64..=4, 1i64..=3), 0..=2 * n + 2).prop_map(
            move |raw| {
                let edges = raw
                    .into_iter()
                    .filter(|(u, v, _, _)| u != v)
                    .map(|(u, v, p, q)| (u, v, frac(p, q)));
                Multigraph::from_edges(n, edges).unwrap()
            },
        )
    })
}

/// Connected multigraphs: a random tree plus extra edges.
pub fn connected_multigraph(max_n: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(|n| {
        let tree =
            proptest::collection::vec((any::<prop::sample::Index>(), 1i64..=4, 1i64..=3), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n, 1i64..=4, 1i64..=3), 0..=n);
        (tree, extra).prop_map(move |(tree, extra)| {
            let mut g = Multigraph::new(n);
            for (v, (parent, p, q)) in tree.into_iter().enumerate() {
                g.add_edge(v + 1, parent.index(v + 1), frac(p, q)).unwrap();
            }
            for (u, v, p, q) in extra {
                if u != v {
                    g.add_edge(u, v, frac(p, q)).unwrap();
                }
            }
            g
        })
    })
}
