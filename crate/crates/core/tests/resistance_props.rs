mod common;

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use spanres::graph::Multigraph;
use spanres::linalg::int;
use spanres::resistance::{
    effective_resistance, effective_resistance_tau, find_twins, foster_residual,
    fundamental_cycle_basis, kcl_residuals, kirchhoff_index, kvl_residuals, local_rule_residual,
    potential_flow, resistance_matrix, series_parallel_reduce, ResistorNetwork,
};

fn spanning_tree(g: &Multigraph) -> Vec<usize> {
    let mut seen = vec![false; g.vertex_count()];
    seen[0] = true;
    let mut tree = Vec::new();
    while tree.len() + 1 < g.vertex_count() {
        let (e, _) = g
            .edges()
            .iter()
            .enumerate()
            .find(|(_, e)| seen[e.u] != seen[e.v])
            .expect("connected");
        let edge = &g.edges()[e];
        seen[edge.u] = true;
        seen[edge.v] = true;
        tree.push(e);
    }
    tree
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn methods_agree(g in common::connected_multigraph(8), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let net = ResistorNetwork::new(g).unwrap();
        let n = net.vertex_count();
        let (u, v) = (a.index(n), b.index(n));
        let solve = effective_resistance(&net, u, v).unwrap();
        prop_assert_eq!(&solve, &effective_resistance_tau(&net, u, v).unwrap());
        if u != v {
            if let Ok((reduced, _)) = series_parallel_reduce(&net, u, v) {
                prop_assert_eq!(reduced, solve);
            }
        }
    }

    #[test]
    fn resistance_is_a_metric(g in common::connected_multigraph(8)) {
        let r = resistance_matrix(&ResistorNetwork::new(g).unwrap()).unwrap();
        let n = r.len();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(r[x][y].is_zero(), x == y);
                prop_assert!(!r[x][y].is_negative());
                prop_assert_eq!(&r[x][y], &r[y][x]);
                for z in 0..n {
                    prop_assert!(r[x][y] <= &r[x][z] + &r[z][y]);
                }
            }
        }
    }

    #[test]
    fn foster_and_local_rules(g in common::connected_multigraph(8), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let net = ResistorNetwork::new(g).unwrap();
        prop_assert_eq!(foster_residual(&net).unwrap(), int(0));
        let n = net.vertex_count();
        let u = a.index(n);
        let v = (u + 1 + b.index(n - 1)) % n;
        prop_assert_eq!(local_rule_residual(&net, u, v).unwrap(), int(0));
    }

    #[test]
    fn kirchhoff_is_pair_sum(g in common::connected_multigraph(6)) {
        let net = ResistorNetwork::new(g).unwrap();
        let n = net.vertex_count();
        let mut total = int(0);
        for u in 0..n {
            for v in u + 1..n {
                total += effective_resistance_tau(&net, u, v).unwrap();
            }
        }
        prop_assert_eq!(kirchhoff_index(&net).unwrap(), total);
    }

    #[test]
    fn potential_flows_obey_both_laws(g in common::connected_multigraph(8), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let net = ResistorNetwork::new(g).unwrap();
        let n = net.vertex_count();
        let s = a.index(n);
        let t = (s + 1 + b.index(n - 1)) % n;
        let flow = potential_flow(&net, s, t).unwrap();
        prop_assert!(kcl_residuals(&net, &flow).unwrap().iter().all(Zero::is_zero));
        let basis = fundamental_cycle_basis(net.graph(), &spanning_tree(net.graph())).unwrap();
        prop_assert_eq!(basis.len(), net.graph().edge_count() + 1 - n);
        prop_assert!(kvl_residuals(&net, &flow, &basis).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn twin_rules(g in common::connected_multigraph(8)) {
        let edges: Vec<(usize, usize)> = g.simplify_parallel().edges().iter().map(|e| (e.u, e.v)).collect();
        let unit = Multigraph::from_unit_edges(g.vertex_count(), &edges).unwrap();
        let net = ResistorNetwork::new(unit.clone()).unwrap();
        for tw in find_twins(&unit) {
            prop_assert_eq!(effective_resistance(&net, tw.a, tw.b).unwrap(), tw.resistance());
        }
    }
}
