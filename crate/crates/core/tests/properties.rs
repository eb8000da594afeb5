use cloudqc_core::circuit::{invert_circuit, validate_against_device};
use cloudqc_core::graph::{graph_state_prep, graph_to_stabilizers, lc_unitary, local_complement};
use cloudqc_core::pauli::pauli_expectation;
use cloudqc_core::routing::route_circuit;
use cloudqc_core::sampling::{run_noisy_shots, run_shots, sample_counts};
use cloudqc_core::statevector::run_ideal;
use cloudqc_core::syndrome::postselect_histogram;
use cloudqc_core::unitary::{circuit_unitary, UnitaryMatrix};
use cloudqc_core::*;
use proptest::prelude::*;

fn gate(n: usize) -> impl Strategy<Value = Gate> {
    let single = (0..SingleQubitGate::ALL.len(), 1..=n).prop_map(|(k, q)| Gate::single(SingleQubitGate::ALL[k], QubitId::new(q)));
    let cnot = (1..=n, 1..n).prop_map(move |(c, d)| Gate::cnot(c, (c - 1 + d) % n + 1));
    if n == 1 {
        single.boxed()
    } else {
        prop_oneof![2 => single, 1 => cnot].boxed()
    }
}

fn circuit(max_qubits: usize, max_gates: usize) -> impl Strategy<Value = Circuit> {
    (1..=max_qubits)
        .prop_flat_map(move |n| proptest::collection::vec(gate(n), 0..=max_gates).prop_map(move |g| Circuit::from_gates(n, g).unwrap()))
}

fn graph(max_nodes: usize) -> impl Strategy<Value = GraphAdjacency> {
    (2..=max_nodes).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            GraphAdjacency::from_edges(n, &edges).unwrap()
        })
    })
}

fn random_state(n: usize) -> impl Strategy<Value = StateVector> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n).prop_filter_map("nonzero", |v| {
        let norm: f64 = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
        (norm > 1e-3).then(|| StateVector::from_amplitudes(v.iter().map(|&(a, b)| Complex64::new(a, b) / norm).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_undoes_circuit(c in circuit(5, 12)) {
        let u = circuit_unitary(&c).unwrap();
        let v = circuit_unitary(&invert_circuit(&c).unwrap()).unwrap();
        prop_assert!(v.mul(&u).max_deviation(&UnitaryMatrix::identity(c.qubit_count())) < 1e-9);
    }

    #[test]
    fn validation_is_total(c in circuit(5, 12)) {
        let _ = validate_against_device(&c, &DeviceModel::star5());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn apply_gate_agrees_with_unitary((state, g) in (1usize..=4).prop_flat_map(|n| (random_state(n), gate(n)))) {
        let n = state.qubit_count();
        let direct = state.clone().apply_gate(&g).unwrap();
        prop_assert!((direct.norm_sqr() - 1.0).abs() < 1e-10);
        let via = UnitaryMatrix::embed(&g, n).apply(state.amplitudes());
        for (a, b) in direct.amplitudes().iter().zip(&via) {
            prop_assert!((a - b).norm() < 1e-9);
        }
    }

    #[test]
    fn local_complement_is_an_involution(g in graph(8), v in 1usize..=8) {
        let v = QubitId::new((v - 1) % g.node_count() + 1);
        prop_assert_eq!(local_complement(&local_complement(&g, v).unwrap(), v).unwrap(), g);
    }

    #[test]
    fn routing_preserves_semantics(c in circuit(5, 10)) {
        let device = DeviceModel::star5();
        let wide = c.widened(5).unwrap();
        let (routed, perm) = route_circuit(&wide, &device).unwrap();
        prop_assert!(validate_against_device(&routed, &device).is_valid());
        let lhs = circuit_unitary(&routed).unwrap();
        let rhs = perm.unitary().mul(&circuit_unitary(&wide).unwrap());
        prop_assert!(lhs.max_deviation_up_to_phase(&rhs) < 1e-9);
        prop_assert_eq!(route_circuit(&wide, &device).unwrap(), (routed, perm));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn lc_transports_stabilizers(g in graph(6), v in 1usize..=6) {
        let v = QubitId::new((v - 1) % g.node_count() + 1);
        let mut c = graph_state_prep(&g);
        c.append(&lc_unitary(&g, v).unwrap()).unwrap();
        let state = run_ideal(&c).unwrap();
        for s in graph_to_stabilizers(&local_complement(&g, v).unwrap()) {
            let e = pauli_expectation(&state, &s).unwrap();
            prop_assert!((e.abs() - 1.0).abs() < 1e-9, "{} -> {}", s, e);
        }
    }

    #[test]
    fn graph_stabilizers_commute(g in graph(10)) {
        let s = graph_to_stabilizers(&g);
        for a in &s {
            for b in &s {
                prop_assert!(a.commutes_with(b));
            }
        }
    }

    #[test]
    fn postselection_only_removes_shots(counts in proptest::collection::vec(0u64..50, 8), support in proptest::collection::btree_set(1usize..=3, 1..=3)) {
        let mut h = ShotHistogram::new(3);
        for (i, &c) in counts.iter().enumerate() {
            h.add(Bitstring::new(i as u32, 3), c);
        }
        let check = SyndromeCheck::even(support).unwrap();
        let (kept, f) = postselect_histogram(&h, &[check]);
        prop_assert!((0.0..=1.0).contains(&f));
        for (b, c) in kept.iter() {
            prop_assert!(c <= h.count(&b));
        }
    }

    #[test]
    fn histogram_total_equals_shots(c in circuit(4, 8), shots in 1u64..300, seed in any::<u64>()) {
        let noise = NoiseModel::new(0.05, 0.1, 0.05).unwrap();
        prop_assert_eq!(run_noisy_shots(&c, &noise, shots, RngSeed(seed)).unwrap().shots(), shots);
        prop_assert_eq!(run_shots(&c, None, shots, RngSeed(seed)).unwrap().shots(), shots);
    }

    #[test]
    fn zero_noise_matches_ideal_sampling(c in circuit(4, 8), seed in any::<u64>()) {
        let ideal = sample_counts(&run_ideal(&c).unwrap(), 200, RngSeed(seed)).unwrap();
        let zero = run_noisy_shots(&c, &NoiseModel::IDEAL, 200, RngSeed(seed)).unwrap();
        prop_assert_eq!(ideal, zero);
    }

    #[test]
    fn sampling_is_seed_deterministic(c in circuit(4, 8), seed in any::<u64>()) {
        let noise = NoiseModel::default();
        prop_assert_eq!(
            run_noisy_shots(&c, &noise, 100, RngSeed(seed)).unwrap(),
            run_noisy_shots(&c, &noise, 100, RngSeed(seed)).unwrap()
        );
    }
}
