//! Walking a graph state around its local-complementation orbit and
//! measuring the stabilizers of each graph visited.

use alloc::vec::Vec;

use super::point_seed;
use crate::circuit::{Basis, Circuit, DeviceModel, Gate, QubitId};
use crate::error::Result;
use crate::graph::{graph_state_prep, graph_to_stabilizers, lc_unitary, local_complement, GraphAdjacency};
use crate::pauli::{pauli_expectation, Pauli, PauliString};
use crate::routing::route_circuit;
use crate::sampling::{run_shots, NoiseModel, RngSeed, ShotHistogram};
use crate::statevector::run_ideal;
use crate::syndrome::bitstring_parity;

/// One graph of the orbit with its measured stabilizer parities.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitStep {
    pub graph: GraphAdjacency,
    /// Node complemented to reach this graph; `None` for the initial graph.
    pub lc_node: Option<QubitId>,
    pub stabilizers: Vec<PauliString>,
    /// Sampled `<K_i>` in `[-1, 1]`.
    pub parities: Vec<f64>,
    /// Exact `<K_i>` of the physical state, `+1` or `-1`.
    pub expected: Vec<f64>,
    pub shots: u64,
}

impl OrbitStep {
    /// Sign of each sampled parity.
    pub fn signs(&self) -> Vec<i8> {
        self.parities.iter().map(|&p| if p < 0.0 { -1 } else { 1 }).collect()
    }

    pub fn signs_match_oracle(&self) -> bool {
        self.parities.iter().zip(&self.expected).all(|(p, e)| p * e > 0.0)
    }
}

/// Graph-state preparation followed by each LC unitary in turn, unmeasured.
///
/// Returns the circuit and the graph after each step, starting with `initial`.
pub fn orbit_circuit(initial: &GraphAdjacency, steps: &[usize]) -> Result<(Circuit, Vec<GraphAdjacency>)> {
    let mut circuit = graph_state_prep(initial);
    let mut graphs = alloc::vec![initial.clone()];
    for &node in steps {
        let g = graphs.last().expect("nonempty");
        let q = QubitId::try_new(node).ok_or(crate::error::Error::QubitOutOfRange { qubit: node, qubit_count: g.node_count() })?;
        circuit.append(&lc_unitary(g, q)?)?;
        graphs.push(local_complement(g, q)?);
    }
    Ok((circuit, graphs))
}

/// Rotate each letter of `stabilizer` onto `Z` and measure every qubit in `Z`.
pub fn stabilizer_measurement(state_prep: &Circuit, stabilizer: &PauliString) -> Result<Circuit> {
    let mut c = state_prep.clone();
    for (i, letter) in stabilizer.letters().iter().enumerate() {
        match letter {
            Pauli::X => c.push(Gate::h(i + 1))?,
            Pauli::Y => c.extend([Gate::sdg(i + 1), Gate::h(i + 1)])?,
            _ => {}
        }
    }
    c.measure_all(Basis::Z);
    Ok(c)
}

/// Sampled `<P>` from a `Z`-basis histogram of the rotated state.
pub fn signed_parity(hist: &ShotHistogram, stabilizer: &PauliString) -> f64 {
    if hist.shots() == 0 {
        return 0.0;
    }
    let support = stabilizer.support();
    let sum: i64 = hist.iter().map(|(b, c)| bitstring_parity(&b, &support).sign() as i64 * c as i64).sum();
    let sign = stabilizer.phase().sign().unwrap_or(1) as f64;
    sign * sum as f64 / hist.shots() as f64
}

/// Prepare `initial`, apply LC at each node of `steps` in order, and after each
/// graph (including the first) measure all of its stabilizers.
///
/// Every measurement circuit is routed onto the star device, sampled with its
/// own derived seed and read out in logical order.
pub fn graph_orbit_run(
    initial: &GraphAdjacency,
    steps: &[usize],
    shots: u64,
    noise: Option<&NoiseModel>,
    seed: RngSeed,
) -> Result<Vec<OrbitStep>> {
    let device = DeviceModel::star5();
    let mut out = Vec::with_capacity(steps.len() + 1);
    for k in 0..=steps.len() {
        let (prep, graphs) = orbit_circuit(initial, &steps[..k])?;
        let graph = graphs.last().expect("nonempty").clone();
        let stabilizers = graph_to_stabilizers(&graph);
        let state = run_ideal(&prep)?;
        let (mut parities, mut expected) = (Vec::new(), Vec::new());
        for (i, s) in stabilizers.iter().enumerate() {
            expected.push(pauli_expectation(&state, s)?);
            let c = stabilizer_measurement(&prep, s)?;
            let c = c.widened(c.qubit_count().max(device.qubit_count()))?;
            let (routed, perm) = route_circuit(&c, &device)?;
            let index = (k * stabilizers.len() + i) as u64;
            let readout = &perm.logical_readout()[..graph.node_count()];
            let hist = run_shots(&routed, noise, shots, point_seed(seed, index))?.select(readout);
            parities.push(signed_parity(&hist, s));
        }
        let lc_node = k.checked_sub(1).map(|j| QubitId::new(steps[j]));
        out.push(OrbitStep { graph, lc_node, stabilizers, parities, expected, shots });
    }
    Ok(out)
}

/// Star on five nodes centred on qubit 3, complemented at 3 (giving `K5`) and then at 1.
pub fn star_orbit() -> (GraphAdjacency, Vec<usize>) {
    (GraphAdjacency::star(5, 3).expect("valid"), alloc::vec![3, 1])
}

/// Five-node ring complemented at 5 and then at 3.
pub fn loop_orbit() -> (GraphAdjacency, Vec<usize>) {
    (GraphAdjacency::ring(5).expect("valid"), alloc::vec![5, 3])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(g: &GraphAdjacency, steps: &[usize]) -> Vec<OrbitStep> {
        graph_orbit_run(g, steps, 64, None, RngSeed(3)).unwrap()
    }

    #[test]
    fn initial_star_parities_are_all_plus() {
        let steps = run(&GraphAdjacency::star(5, 3).unwrap(), &[]);
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].parities, [1.0; 5]);
        assert_eq!(steps[0].lc_node, None);
    }

    #[test]
    fn star_orbit_returns_to_a_star_on_the_complemented_node() {
        let (g, s) = star_orbit();
        let steps = run(&g, &s);
        assert_eq!(steps.iter().map(|s| s.parities.len()).sum::<usize>(), 15);
        assert_eq!(steps[1].graph, GraphAdjacency::complete(5).unwrap());
        assert_eq!(steps[2].graph, GraphAdjacency::star(5, 1).unwrap());
        for step in &steps {
            assert!(step.signs_match_oracle());
            assert!(step.parities.iter().all(|p| p.abs() == 1.0));
        }
    }

    #[test]
    fn complementing_the_centre_flips_some_signs() {
        let (g, s) = star_orbit();
        let steps = run(&g, &s[..1]);
        assert!(steps[1].parities.iter().any(|&p| p < 0.0));
    }

    #[test]
    fn loop_orbit_signs_match_oracle() {
        let (g, s) = loop_orbit();
        for step in run(&g, &s) {
            assert!(step.signs_match_oracle(), "{:?}", step.graph);
            assert!(step.expected.iter().all(|e| (e.abs() - 1.0).abs() < 1e-9));
        }
    }

    #[test]
    fn y_letters_are_rotated() {
        // |+i> is stabilized by Y.
        let prep = Circuit::from_gates(1, [Gate::h(1), Gate::s(1)]).unwrap();
        let y: PauliString = "+Y".parse().unwrap();
        let c = stabilizer_measurement(&prep, &y).unwrap();
        let hist = run_shots(&c, None, 32, RngSeed(1)).unwrap();
        assert_eq!(signed_parity(&hist, &y), 1.0);
    }
}
