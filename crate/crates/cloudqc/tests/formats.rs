use cloudqc::formats::circuit::{parse_circuit, write_circuit};
use cloudqc::formats::graph::{parse_graph, write_graph};
use cloudqc_core::{Basis, Circuit, Gate, GraphAdjacency, QubitId, SingleQubitGate};
use proptest::prelude::*;

fn circuit() -> impl Strategy<Value = Circuit> {
    (2usize..=5).prop_flat_map(|n| {
        let single = (0..SingleQubitGate::ALL.len(), 1..=n).prop_map(|(k, q)| Gate::single(SingleQubitGate::ALL[k], QubitId::new(q)));
        let cnot = (1..=n, 1..n).prop_map(move |(c, d)| Gate::cnot(c, (c - 1 + d) % n + 1));
        let gates = proptest::collection::vec(prop_oneof![single, cnot], 0..20);
        (gates, proptest::collection::vec(0u8..3, n)).prop_map(move |(g, m)| {
            let mut c = Circuit::from_gates(n, g).unwrap();
            for (i, tag) in m.into_iter().enumerate() {
                match tag {
                    1 => c.measure(QubitId::new(i + 1), Basis::Z).unwrap(),
                    2 => c.measure(QubitId::new(i + 1), Basis::X).unwrap(),
                    _ => {}
                }
            }
            c
        })
    })
}

proptest! {
    #[test]
    fn circuit_text_round_trips(c in circuit()) {
        prop_assert_eq!(parse_circuit(&write_circuit(&c)).unwrap(), c);
    }

    #[test]
    fn graph_text_round_trips(n in 1usize..=8, bits in proptest::collection::vec(any::<bool>(), 28)) {
        let pairs = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)));
        let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
        let g = GraphAdjacency::from_edges(n, &edges).unwrap();
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }
}
