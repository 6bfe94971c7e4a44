//! Spanning-tree polynomial `tau(G) = sum over spanning trees of the
//! product of edge weights`, by Matrix-Tree and by brute force.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Multigraph, UnionFind};
use crate::linalg::{det_exact, ExactMatrix, Rational};

/// Largest vertex count [`tau_brute`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// Weighted Laplacian `D - A` of the parallel-merged graph.
pub fn laplacian(g: &Multigraph) -> ExactMatrix {
    let simple = g.simplify_parallel();
    let mut l = ExactMatrix::zeros(g.vertex_count(), g.vertex_count());
    for e in simple.edges() {
        l[(e.u, e.u)] += &e.weight;
        l[(e.v, e.v)] += &e.weight;
        l[(e.u, e.v)] -= &e.weight;
        l[(e.v, e.u)] -= &e.weight;
    }
    l
}

/// Matrix-Tree count: determinant of the Laplacian with row and column 0
/// removed. The one-vertex graph has the single empty tree.
pub fn tau(g: &Multigraph) -> Rational {
    if g.vertex_count() <= 1 {
        return Rational::one();
    }
    det_exact(&laplacian(g).minor(0, 0)).expect("reduced Laplacian is square")
}

/// Sums tree weights over every acyclic `(n-1)`-edge subset, parallel
/// edges counted as distinct. Oracle for [`tau`].
pub fn tau_brute(g: &Multigraph) -> Result<Rational> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGuard {
            vertices: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if n <= 1 {
        return Ok(Rational::one());
    }
    let mut total = Rational::zero();
    extend_forest(g, 0, n - 1, &UnionFind::new(n), Rational::one(), &mut total);
    Ok(total)
}

fn extend_forest(
    g: &Multigraph,
    from: usize,
    remaining: usize,
    forest: &UnionFind,
    weight: Rational,
    total: &mut Rational,
) {
    if remaining == 0 {
        // n-1 acyclic edges on n vertices always span
        *total += weight;
        return;
    }
    let edges = g.edges();
    if edges.len() - from < remaining {
        return;
    }
    for (i, e) in edges.iter().enumerate().skip(from) {
        if edges.len() - i < remaining {
            break;
        }
        let mut next = forest.clone();
        if next.union(e.u, e.v) {
            extend_forest(g, i + 1, remaining - 1, &next, &weight * &e.weight, total);
        }
    }
}

/// Weighted count of spanning trees containing every edge of `set`:
/// `w(F) * tau(G / F)`, or zero when `F` holds a cycle.
pub fn tau_containing(g: &Multigraph, set: &[usize]) -> Result<Rational> {
    let set: Vec<usize> = set
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut uf = UnionFind::new(g.vertex_count());
    for &e in &set {
        let edge = g.edge(e)?;
        if !uf.union(edge.u, edge.v) {
            return Ok(Rational::zero());
        }
    }
    Ok(g.weight_product(&set)? * tau(&g.contract_edge_set(&set)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_kmn_over_matching, complete_bipartite, complete_graph};
    use crate::linalg::{frac, int};
    use proptest::prelude::*;

    fn weighted_triangle() -> Multigraph {
        Multigraph::from_edges(3, [(0, 1, int(1)), (1, 2, int(2)), (2, 0, int(3))]).unwrap()
    }

    #[test]
    fn triangle_and_k33() {
        assert_eq!(tau(&complete_graph(3).unwrap()), int(3));
        assert_eq!(tau(&complete_bipartite(3, 3).unwrap()), int(81));
        assert_eq!(tau(&weighted_triangle()), int(11));
        assert_eq!(tau(&Multigraph::new(1)), int(1));
        assert_eq!(tau(&Multigraph::new(3)), int(0));
    }

    #[test]
    fn brute_force_values() {
        assert_eq!(tau_brute(&complete_graph(4).unwrap()).unwrap(), int(16));
        assert_eq!(tau_brute(&Multigraph::new(2)).unwrap(), int(0));
        let pair = Multigraph::from_edges(2, [(0, 1, int(1)), (0, 1, int(3))]).unwrap();
        assert_eq!(tau_brute(&pair).unwrap(), int(4));
        assert_eq!(tau_brute(&weighted_triangle()).unwrap(), int(11));
        assert!(matches!(
            tau_brute(&complete_graph(11).unwrap()),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn containing_cases() {
        let k22 = complete_bipartite(2, 2).unwrap();
        assert_eq!(tau_containing(&k22, &[0]).unwrap(), int(3));
        let k33 = complete_bipartite(3, 3).unwrap();
        // star at x_0 plus x_1-y_0 and x_2-y_0: edges 0,1,2,3,6
        assert_eq!(tau_containing(&k33, &[0, 1, 2, 3, 6]).unwrap(), int(1));
        // x0-y0, y0-x1, x1-y1, y1-x0 is a 4-cycle
        assert_eq!(tau_containing(&k33, &[0, 3, 4, 1]).unwrap(), int(0));
        let pair = Multigraph::from_unit_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(tau_containing(&pair, &[0, 1]).unwrap(), int(0));
        assert!(tau_containing(&pair, &[5]).is_err());
    }

    #[test]
    fn weighted_containing_scales_by_weight() {
        // trees of the 1,2,3 triangle containing the weight-2 edge: 1*2 + 2*3
        assert_eq!(tau_containing(&weighted_triangle(), &[1]).unwrap(), int(8));
    }

    #[test]
    fn matching_contraction_has_brute_force_count() {
        let g = build_kmn_over_matching(3, 3, 1).unwrap();
        assert_eq!(tau(&g), tau_brute(&g).unwrap());
    }

    pub(crate) fn arb_multigraph(max_n: usize) -> impl Strategy<Value = Multigraph> {
        (2..=max_n).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n, 1i64..=4, 1i64..=3), 0..=(2 * n + 2)).prop_map(
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

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn matrix_tree_matches_enumeration(g in arb_multigraph(7)) {
            prop_assert_eq!(tau(&g), tau_brute(&g).unwrap());
        }

        #[test]
        fn simplification_preserves_tau(g in arb_multigraph(7)) {
            prop_assert_eq!(tau(&g.simplify_parallel()), tau_brute(&g).unwrap());
        }

        #[test]
        fn relabelling_preserves_tau(g in arb_multigraph(7), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(tau(&g.relabel(&perm).unwrap()), tau(&g));
        }

        #[test]
        fn deletion_contraction(g in arb_multigraph(7), pick in any::<prop::sample::Index>()) {
            prop_assume!(g.edge_count() > 0);
            let e = pick.index(g.edge_count());
            let w = g.edges()[e].weight.clone();
            let lhs = tau(&g);
            let rhs = tau(&g.delete_edge(e).unwrap()) + w * tau(&g.contract_edge(e).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn tau_zero_iff_disconnected(g in arb_multigraph(7)) {
            prop_assert_eq!(tau(&g).is_zero(), !g.is_connected());
        }

        #[test]
        fn edge_tree_double_counting(n in 2usize..=7, raw in proptest::collection::vec((0usize..7, 0usize..7), 0..16)) {
            let edges: Vec<(usize, usize)> = raw.into_iter()
                .map(|(u, v)| (u % n, v % n))
                .filter(|(u, v)| u != v)
                .collect();
            let g = Multigraph::from_unit_edges(n, &edges).unwrap();
            let sum: Rational = (0..g.edge_count()).map(|e| tau_containing(&g, &[e]).unwrap()).sum();
            prop_assert_eq!(sum, int(n as i64 - 1) * tau(&g));
        }

        #[test]
        fn constraints_are_monotone(g in arb_multigraph(6), a in proptest::collection::vec(any::<prop::sample::Index>(), 0..3), b in proptest::collection::vec(any::<prop::sample::Index>(), 0..3)) {
            prop_assume!(g.edge_count() > 0);
            let unit = Multigraph::from_unit_edges(
                g.vertex_count(),
                &g.edges().iter().map(|e| (e.u, e.v)).collect::<Vec<_>>(),
            ).unwrap();
            let f1: Vec<usize> = a.iter().map(|i| i.index(unit.edge_count())).collect();
            let mut f12 = f1.clone();
            f12.extend(b.iter().map(|i| i.index(unit.edge_count())));
            prop_assert!(tau_containing(&unit, &f12).unwrap() <= tau_containing(&unit, &f1).unwrap());
        }
    }
}
