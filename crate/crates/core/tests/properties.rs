use proptest::prelude::*;
use square_energy::decompose::{certify_superadditivity, PartLabel, Partition};
use square_energy::graph::{parse_graph6, write_graph6};
use square_energy::oracles::{cut_size, max_cut};
use square_energy::spectral::{spectral_split, square_energies, tau_num};
use square_energy::{Graph, VertexSet};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in graph_strategy(20)) {
        prop_assert_eq!(parse_graph6(&write_graph6(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn complement_is_involution(g in graph_strategy(16)) {
        let c = g.complement();
        prop_assert_eq!(c.m() + g.m(), g.n() * (g.n() - 1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn join_edge_count(g in graph_strategy(9), h in graph_strategy(9)) {
        prop_assert_eq!(g.join(&h).m(), g.m() + h.m() + g.n() * h.n());
    }

    #[test]
    fn induced_and_delete_agree(g in graph_strategy(12), pick in any::<prop::sample::Index>()) {
        prop_assert_eq!(g.induced_subgraph(&VertexSet::full(g.n())), g.clone());
        let v = pick.index(g.n());
        let mut rest = VertexSet::full(g.n());
        rest.remove(v);
        prop_assert_eq!(g.delete_vertex(v).unwrap(), g.induced_subgraph(&rest));
    }

    #[test]
    fn square_energies_sum_to_twice_edges(g in graph_strategy(14)) {
        let e = square_energies(&g).unwrap();
        prop_assert!((e.s_plus + e.s_minus - 2.0 * g.m() as f64).abs() <= tau_num(g.n()));
        if g.is_bipartite() {
            prop_assert!((e.s_plus - e.s_minus).abs() <= tau_num(g.n()));
        }
    }

    #[test]
    fn split_is_orthogonal_and_reassembles(g in graph_strategy(12)) {
        let s = spectral_split(&g).unwrap();
        let a = g.adjacency_matrix();
        let tau = tau_num(g.n());
        prop_assert!((&s.a_plus - &s.a_minus - a).amax() <= tau);
        prop_assert!(s.a_plus.dot(&s.a_minus).abs() <= tau);
    }

    #[test]
    fn superadditive_on_random_bipartitions(g in graph_strategy(12), mask in any::<u64>()) {
        let n = g.n();
        prop_assume!(n >= 2);
        let mut side = VertexSet::from_mask(n, mask & ((1u64 << n) - 1));
        if side.is_empty() { side.insert(0); }
        if side.len() == n { side.remove(0); }
        let p = Partition::new(n, vec![side.clone(), side.complement()], vec![PartLabel::DominatedBlock; 2]).unwrap();
        let r = certify_superadditivity(&g, &p).unwrap();
        prop_assert!(!r.violation, "{:?}", r);
    }

    #[test]
    fn surplus_nonnegative_and_witnessed(g in graph_strategy(12)) {
        let r = max_cut(&g).unwrap();
        prop_assert!(r.surplus >= 0.0);
        prop_assert_eq!(cut_size(&g, &r.side), r.maxcut);
        if g.is_bipartite() {
            prop_assert_eq!(r.maxcut, g.m());
        }
    }
}
