//! Rabi oscillations of a logical qubit in the distance-2 surface code.
//!
//! Code conventions: stabilizers `K1 = Z1Z3Z4`, `K2 = Z2Z3Z5`,
//! `K3 = X1X2X3`, `K4 = X3X4X5`; logical operators `Z_L = Z1Z2`, `X_L = X1X4`.

use alloc::vec::Vec;

use crate::circuit::{Basis, Circuit, DeviceModel, Gate, QubitId};
use crate::error::{Error, Result};
use crate::math;
use crate::pauli::PauliString;
use crate::routing::{route_circuit, QubitPermutation};
use crate::sampling::{run_shots, standard_error, Bitstring, NoiseModel, RngSeed, ShotHistogram};
use crate::statevector::run_ideal;
use crate::syndrome::{bitstring_parity, postselect_histogram, Parity, SyndromeCheck};

use super::point_seed;

/// One full oscillation: eight T steps take `|0>` to `|1>` and back.
pub const MAX_STEPS: usize = 8;

/// Surface-code stabilizers in `K1..K4` order.
pub fn stabilizers() -> [PauliString; 4] {
    ["+ZIZZI", "+IZZIZ", "+XXXII", "+IIXXX"].map(|s| s.parse().expect("literal"))
}

pub fn logical_z() -> PauliString {
    "+ZZIII".parse().expect("literal")
}

pub fn logical_x() -> PauliString {
    "+XIIXI".parse().expect("literal")
}

/// The two Z-type checks used for post-selection.
pub fn z_checks() -> [SyndromeCheck; 2] {
    [SyndromeCheck::even([1, 3, 4]).expect("literal"), SyndromeCheck::even([2, 3, 5]).expect("literal")]
}

fn logical_z_support() -> [QubitId; 2] {
    [QubitId::new(1), QubitId::new(2)]
}

/// `H T^n H` on `qubit`: `P(0) = cos^2(n pi / 8)`.
pub fn rotation(qubit: usize, steps: usize) -> Vec<Gate> {
    let mut gates = Vec::with_capacity(steps + 2);
    gates.push(Gate::h(qubit));
    gates.extend(core::iter::repeat_n(Gate::t(qubit), steps));
    gates.push(Gate::h(qubit));
    gates
}

fn cz(a: usize, b: usize) -> [Gate; 3] {
    [Gate::h(b), Gate::cnot(a, b), Gate::h(b)]
}

fn check_steps(steps: usize) -> Result<()> {
    if steps > MAX_STEPS {
        return Err(Error::OutOfRange { name: "theta_steps", value: steps as i64 });
    }
    Ok(())
}

/// Logical state `cos(n pi/8)|0_L> + (phase) sin(n pi/8)|1_L>` on five qubits, unmeasured.
///
/// The rotated qubit 3 is copied onto qubits 1 and 5, the three are put in
/// the `|+++>/|--->` basis, qubits 2 and 4 are added as `|+>`, the linear
/// cluster `1-2-3-4-5` is entangled with CZs, and qubits 1, 3, 5 are rotated back.
pub fn encode_surface_code(theta_steps: usize) -> Result<Circuit> {
    check_steps(theta_steps)?;
    let mut gates = rotation(3, theta_steps);
    gates.extend([Gate::cnot(3, 1), Gate::cnot(3, 5)]);
    gates.extend([1, 3, 5, 2, 4].map(Gate::h));
    for (a, b) in [(1, 2), (2, 3), (3, 4), (4, 5)] {
        gates.extend(cz(a, b));
    }
    gates.extend([1, 3, 5].map(Gate::h));
    Circuit::from_gates(5, gates)
}

/// Transversal Hadamard on the encoded state of `encode_surface_code`.
///
/// Followed by relabelling qubits 2 and 4 (the returned permutation) this is a
/// logical Hadamard, so the logical qubit can be read in the X basis through
/// the same Z-type parity bookkeeping.
pub fn encode_surface_code_transversal_h(theta_steps: usize) -> Result<(Circuit, QubitPermutation)> {
    let mut c = encode_surface_code(theta_steps)?;
    c.extend((1..=5).map(Gate::h))?;
    Ok((c, QubitPermutation::from_labels(&[1, 4, 3, 2, 5])?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RabiMode {
    /// One qubit, `H T^n H`, then measure.
    Bare,
    /// Encoded and routed; logical value from the `Z1 Z2` parity of all shots.
    EncodedRaw,
    /// As `EncodedRaw`, keeping only shots with even `K1` and `K2`.
    EncodedPostselected,
}

impl RabiMode {
    pub const ALL: [RabiMode; 3] = [RabiMode::Bare, RabiMode::EncodedRaw, RabiMode::EncodedPostselected];

    pub fn name(self) -> &'static str {
        match self {
            RabiMode::Bare => "bare",
            RabiMode::EncodedRaw => "encoded_raw",
            RabiMode::EncodedPostselected => "encoded_postselected",
        }
    }

    pub fn from_name(name: &str) -> Option<RabiMode> {
        RabiMode::ALL.into_iter().find(|m| m.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RabiPoint {
    pub n_steps: usize,
    pub mode: RabiMode,
    pub p_logical_zero: f64,
    pub retained_fraction: f64,
    /// Standard error over the retained shots.
    pub se: f64,
    pub shots: u64,
}

/// The measured circuit for one point and the readout order mapping its bits to logical qubits.
pub fn rabi_circuit(mode: RabiMode, steps: usize, device: &DeviceModel) -> Result<(Circuit, Vec<QubitId>)> {
    check_steps(steps)?;
    match mode {
        RabiMode::Bare => {
            let mut c = Circuit::from_gates(1, rotation(1, steps))?;
            c.measure_all(Basis::Z);
            Ok((c, alloc::vec![QubitId::new(1)]))
        }
        RabiMode::EncodedRaw | RabiMode::EncodedPostselected => {
            let mut logical = encode_surface_code(steps)?;
            logical.measure_all(Basis::Z);
            let (routed, perm) = route_circuit(&logical, device)?;
            Ok((routed, perm.logical_readout()))
        }
    }
}

/// Reduce a logical-order histogram to `(p(0_L), retained_fraction, kept shots)`.
fn logical_zero(mode: RabiMode, hist: &ShotHistogram) -> (f64, f64, u64) {
    let (kept, fraction) = match mode {
        RabiMode::Bare => {
            let p = hist.probability(&Bitstring::zeros(1));
            return (p, 1.0, hist.shots());
        }
        RabiMode::EncodedRaw => (hist.clone(), 1.0),
        RabiMode::EncodedPostselected => postselect_histogram(hist, &z_checks()),
    };
    let zeros: u64 = kept.iter().filter(|(b, _)| bitstring_parity(b, &logical_z_support()) == Parity::Even).map(|(_, c)| c).sum();
    let p = if kept.shots() == 0 { 0.0 } else { zeros as f64 / kept.shots() as f64 };
    (p, fraction, kept.shots())
}

/// Exact `P(0_L)` and retained fraction from state-vector probabilities.
pub fn rabi_exact(mode: RabiMode, steps: usize) -> Result<(f64, f64)> {
    let (circuit, readout) = rabi_circuit(mode, steps, &DeviceModel::star5())?;
    let state = run_ideal(&circuit)?;
    let n = circuit.qubit_count();
    let (mut kept, mut zero) = (0.0, 0.0);
    for (i, p) in state.probabilities().into_iter().enumerate() {
        let bits = Bitstring::new(i as u32, n).select(&readout);
        let keep = mode != RabiMode::EncodedPostselected || z_checks().iter().all(|c| c.passes(&bits));
        if keep {
            kept += p;
            let even = match mode {
                RabiMode::Bare => !bits.bit(QubitId::new(1)),
                _ => bitstring_parity(&bits, &logical_z_support()).is_even(),
            };
            if even {
                zero += p;
            }
        }
    }
    Ok((if kept > 0.0 { zero / kept } else { 0.0 }, kept))
}

/// Nine sampled points `n = 0..=8` for one mode.
///
/// `noise = None` samples the ideal state. Each point draws from its own seed
/// derived from `seed` and `n`.
pub fn rabi_curve(mode: RabiMode, shots: u64, noise: Option<&NoiseModel>, seed: RngSeed) -> Result<Vec<RabiPoint>> {
    let device = DeviceModel::star5();
    (0..=MAX_STEPS)
        .map(|n| {
            let (circuit, readout) = rabi_circuit(mode, n, &device)?;
            let hist = run_shots(&circuit, noise, shots, point_seed(seed, n as u64))?.select(&readout);
            let (p, retained_fraction, kept) = logical_zero(mode, &hist);
            let se = if kept == 0 { 0.0 } else { standard_error(p, kept) };
            Ok(RabiPoint { n_steps: n, mode, p_logical_zero: p, retained_fraction, se, shots })
        })
        .collect()
}

/// Least-squares fit `p_n = a + b cos(n pi / 4)`; the visibility is `2 b`.
pub fn fit_visibility(points: &[(usize, f64)]) -> f64 {
    let k = points.len() as f64;
    if points.len() < 2 {
        return 0.0;
    }
    let c: Vec<f64> = points.iter().map(|&(n, _)| math::cos(n as f64 * core::f64::consts::FRAC_PI_4)).collect();
    let c_mean = c.iter().sum::<f64>() / k;
    let p_mean = points.iter().map(|&(_, p)| p).sum::<f64>() / k;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (ci, &(_, p)) in c.iter().zip(points) {
        sxy += (ci - c_mean) * (p - p_mean);
        sxx += (ci - c_mean) * (ci - c_mean);
    }
    if sxx == 0.0 {
        0.0
    } else {
        2.0 * sxy / sxx
    }
}

pub fn curve_visibility(points: &[RabiPoint]) -> f64 {
    let pts: Vec<(usize, f64)> = points.iter().map(|p| (p.n_steps, p.p_logical_zero)).collect();
    fit_visibility(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::validate_against_device;
    use crate::pauli::pauli_expectation;
    use crate::statevector::StateVector;

    fn cos_sq(n: usize) -> f64 {
        let c = math::cos(n as f64 * core::f64::consts::PI / 8.0);
        c * c
    }

    fn expect(state: &StateVector, p: &PauliString) -> f64 {
        pauli_expectation(state, p).unwrap()
    }

    #[test]
    fn zero_steps_is_logical_zero() {
        let s = run_ideal(&encode_surface_code(0).unwrap()).unwrap();
        for k in stabilizers() {
            assert!((expect(&s, &k) - 1.0).abs() < 1e-12, "{k}");
        }
        assert!((expect(&s, &logical_z()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn four_steps_is_logical_one_and_two_is_balanced() {
        let s = run_ideal(&encode_surface_code(4).unwrap()).unwrap();
        assert!((expect(&s, &logical_z()) + 1.0).abs() < 1e-12);
        let s = run_ideal(&encode_surface_code(2).unwrap()).unwrap();
        assert!(expect(&s, &logical_z()).abs() < 1e-12);
        assert!(encode_surface_code(9).is_err());
    }

    #[test]
    fn every_step_stays_in_the_code_space() {
        for n in 0..=MAX_STEPS {
            let s = run_ideal(&encode_surface_code(n).unwrap()).unwrap();
            for k in stabilizers() {
                assert!((expect(&s, &k) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn stabilizers_and_logicals_commute_as_a_code() {
        let ks = stabilizers();
        for a in &ks {
            for b in &ks {
                assert!(a.commutes_with(b));
            }
            assert!(a.commutes_with(&logical_z()) && a.commutes_with(&logical_x()));
        }
        assert!(!logical_z().commutes_with(&logical_x()));
    }

    #[test]
    fn routed_encoder_is_device_legal() {
        let dev = DeviceModel::star5();
        let (c, readout) = rabi_circuit(RabiMode::EncodedRaw, 3, &dev).unwrap();
        assert!(validate_against_device(&c, &dev).is_valid());
        assert_eq!(readout.len(), 5);
    }

    #[test]
    fn exact_curve_is_cos_squared() {
        for mode in RabiMode::ALL {
            for n in 0..=MAX_STEPS {
                let want = cos_sq(n);
                let (p, kept) = rabi_exact(mode, n).unwrap();
                assert!((p - want).abs() < 1e-9, "{mode:?} n={n}");
                assert!((kept - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn transversal_h_with_relabel_is_logical_hadamard() {
        // P24 H^5 E(G|0>) == E(H G|0>) up to phase
        for n in 0..=MAX_STEPS {
            let (c, perm) = encode_surface_code_transversal_h(n).unwrap();
            let s = run_ideal(&c).unwrap();
            let relabelled = StateVector::from_amplitudes(perm.unitary().apply(s.amplitudes())).unwrap();
            let mut direct = Circuit::from_gates(5, rotation(3, n)).unwrap();
            direct.push(Gate::h(3)).unwrap();
            let rest = encode_surface_code(0).unwrap();
            direct.extend(rest.gates()[2..].iter().copied()).unwrap();
            let want = run_ideal(&direct).unwrap();
            assert!((relabelled.fidelity(&want) - 1.0).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn visibility_fit() {
        let ideal: Vec<_> = (0..=8).map(|n| (n, cos_sq(n))).collect();
        assert!((fit_visibility(&ideal) - 1.0).abs() < 1e-12);
        let damped: Vec<_> = ideal.iter().map(|&(n, p)| (n, 0.5 + 0.8 * (p - 0.5))).collect();
        assert!((fit_visibility(&damped) - 0.8).abs() < 1e-12);
    }
}
