//! Dense state-vector evolution.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::circuit::{Basis, Circuit, Gate, QubitId, SingleQubitGate};
use crate::error::{Error, Result};
use crate::math::{self, ONE, ZERO};

/// Register size cap: 2^24 amplitudes is already 256 MiB.
pub const MAX_STATE_QUBITS: usize = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubit_count: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>` on `qubit_count` qubits.
    pub fn zero(qubit_count: usize) -> Result<Self> {
        if qubit_count > MAX_STATE_QUBITS {
            return Err(Error::TooManyQubits { qubit_count, limit: MAX_STATE_QUBITS });
        }
        let mut amplitudes = vec![ZERO; 1 << qubit_count];
        amplitudes[0] = ONE;
        Ok(StateVector { qubit_count, amplitudes })
    }

    /// Wrap amplitudes; the length must be a power of two and the norm 1 to 1e-10.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() {
            return Err(Error::LengthMismatch { expected: len.next_power_of_two(), found: len });
        }
        let state = StateVector { qubit_count: len.trailing_zeros() as usize, amplitudes };
        let norm = state.norm_sqr();
        if math::abs(norm - 1.0) > 1e-10 {
            return Err(Error::InvalidProbability { name: "norm", value: norm });
        }
        Ok(state)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Bit mask of `qubit` inside an amplitude index.
    #[inline]
    pub fn mask(&self, qubit: QubitId) -> usize {
        1 << (self.qubit_count - qubit.label())
    }

    fn check(&self, qubit: QubitId) -> Result<()> {
        if qubit.label() > self.qubit_count {
            return Err(Error::QubitOutOfRange { qubit: qubit.label(), qubit_count: self.qubit_count });
        }
        Ok(())
    }

    /// Apply a gate in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        match *gate {
            Gate::Single { kind, qubit } => {
                self.check(qubit)?;
                self.apply_single(kind, qubit);
            }
            Gate::Cnot { control, target } => {
                self.check(control)?;
                self.check(target)?;
                if control == target {
                    return Err(Error::DuplicateOperand { qubit: control.label() });
                }
                let (cm, tm) = (self.mask(control), self.mask(target));
                for i in 0..self.amplitudes.len() {
                    if i & cm != 0 && i & tm == 0 {
                        self.amplitudes.swap(i, i | tm);
                    }
                }
            }
        }
        Ok(())
    }

    fn apply_single(&mut self, kind: SingleQubitGate, qubit: QubitId) {
        let mask = self.mask(qubit);
        match kind {
            SingleQubitGate::I => {}
            // diagonal gates only touch the |1> half
            SingleQubitGate::Z | SingleQubitGate::S | SingleQubitGate::Sdg | SingleQubitGate::T | SingleQubitGate::Tdg => {
                let d = kind.matrix()[1][1];
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    if i & mask != 0 {
                        *a *= d;
                    }
                }
            }
            _ => {
                let [[m00, m01], [m10, m11]] = kind.matrix();
                for i in 0..self.amplitudes.len() {
                    if i & mask == 0 {
                        let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | mask]);
                        self.amplitudes[i] = m00 * a0 + m01 * a1;
                        self.amplitudes[i | mask] = m10 * a0 + m11 * a1;
                    }
                }
            }
        }
    }

    /// Functional form of [`StateVector::apply`].
    pub fn apply_gate(mut self, gate: &Gate) -> Result<Self> {
        self.apply(gate)?;
        Ok(self)
    }

    /// Apply every gate of `circuit` (measurement tags ignored).
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.qubit_count() != self.qubit_count {
            return Err(Error::LengthMismatch { expected: self.qubit_count, found: circuit.qubit_count() });
        }
        circuit.gates().iter().try_for_each(|g| self.apply(g))
    }

    /// Rotate X-tagged qubits so a computational-basis readout measures X.
    pub fn apply_basis_changes(&mut self, circuit: &Circuit) -> Result<()> {
        for gate in basis_change_gates(circuit) {
            self.apply(&gate)?;
        }
        Ok(())
    }

    /// `|<self|other>|^2`
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        let inner: Complex64 = self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum();
        inner.norm_sqr()
    }
}

/// Hadamards realizing the circuit's X-basis tags, in qubit order.
pub fn basis_change_gates(circuit: &Circuit) -> impl Iterator<Item = Gate> + '_ {
    circuit.measurements().iter().enumerate().filter(|(_, m)| **m == Some(Basis::X)).map(|(i, _)| Gate::h(i + 1))
}

/// The state after all gates starting from `|0...0>`, X-basis tags contributing a trailing H.
pub fn run_ideal(circuit: &Circuit) -> Result<StateVector> {
    let mut state = StateVector::zero(circuit.qubit_count())?;
    state.apply_circuit(circuit)?;
    state.apply_basis_changes(circuit)?;
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{phase, FRAC_1_SQRT_2};

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn hadamard_on_zero() {
        let s = StateVector::zero(1).unwrap().apply_gate(&Gate::h(1)).unwrap();
        assert!(close(s.amplitude(0), Complex64::new(FRAC_1_SQRT_2, 0.0)));
        assert!(close(s.amplitude(1), Complex64::new(FRAC_1_SQRT_2, 0.0)));
    }

    #[test]
    fn t_on_plus() {
        let s = StateVector::zero(1).unwrap().apply_gate(&Gate::h(1)).unwrap().apply_gate(&Gate::t(1)).unwrap();
        assert!(close(s.amplitude(1), phase(core::f64::consts::FRAC_PI_4) * FRAC_1_SQRT_2));
    }

    #[test]
    fn cnot_on_ten() {
        let s = StateVector::zero(2).unwrap().apply_gate(&Gate::x(1)).unwrap().apply_gate(&Gate::cnot(1, 2)).unwrap();
        assert!(close(s.amplitude(0b11), ONE));
    }

    #[test]
    fn empty_circuit_stays_zero() {
        let s = run_ideal(&Circuit::new(5)).unwrap();
        assert_eq!(s, StateVector::zero(5).unwrap());
    }

    #[test]
    fn x_tag_adds_hadamard() {
        let mut c = Circuit::new(1);
        c.measure(QubitId::new(1), Basis::X).unwrap();
        let s = run_ideal(&c).unwrap();
        assert!((s.probabilities()[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn operand_out_of_range() {
        let mut s = StateVector::zero(2).unwrap();
        assert!(matches!(s.apply(&Gate::h(3)), Err(Error::QubitOutOfRange { .. })));
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(StateVector::from_amplitudes(vec![ONE, ONE]).is_err());
        assert!(StateVector::from_amplitudes(vec![ONE, ZERO, ZERO]).is_err());
    }
}
