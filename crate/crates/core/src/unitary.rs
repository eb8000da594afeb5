//! Dense unitaries: the brute-force oracle behind routing, inversion and
//! state-vector cross checks.
//!
//! Gate matrices are embedded on the full register entry by entry and
//! multiplied densely. This is deliberately independent of the in-place
//! amplitude updates in [`crate::statevector`].

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::math::{self, ONE, ZERO};

/// Resource guard for dense construction.
pub const MAX_UNITARY_QUBITS: usize = 10;

/// Row-major `2^n x 2^n` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    qubit_count: usize,
    data: Vec<Complex64>,
}

impl UnitaryMatrix {
    pub fn identity(qubit_count: usize) -> Self {
        let dim = 1usize << qubit_count;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        UnitaryMatrix { qubit_count, data }
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn dim(&self) -> usize {
        1 << self.qubit_count
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim() + col]
    }

    /// The full-register matrix of a single gate, built entry by entry.
    pub fn embed(gate: &Gate, qubit_count: usize) -> Self {
        let dim = 1usize << qubit_count;
        let mut data = vec![ZERO; dim * dim];
        let bit = |q: usize| qubit_count - q;
        match *gate {
            Gate::Single { kind, qubit } => {
                let m = kind.matrix();
                let shift = bit(qubit.label());
                for row in 0..dim {
                    for col in 0..dim {
                        if (row ^ col) & !(1 << shift) == 0 {
                            data[row * dim + col] = m[(row >> shift) & 1][(col >> shift) & 1];
                        }
                    }
                }
            }
            Gate::Cnot { control, target } => {
                let (cs, ts) = (bit(control.label()), bit(target.label()));
                for col in 0..dim {
                    let row = if (col >> cs) & 1 == 1 { col ^ (1 << ts) } else { col };
                    data[row * dim + col] = ONE;
                }
            }
        }
        UnitaryMatrix { qubit_count, data }
    }

    /// The permutation operator sending the tensor factor at position `i`
    /// (0-based) to position `mapping[i]`.
    pub fn permutation(mapping: &[usize]) -> Self {
        let n = mapping.len();
        let dim = 1usize << n;
        let mut data = vec![ZERO; dim * dim];
        for col in 0..dim {
            let mut row = 0;
            for (from, &to) in mapping.iter().enumerate() {
                if (col >> (n - 1 - from)) & 1 == 1 {
                    row |= 1 << (n - 1 - to);
                }
            }
            data[row * dim + col] = ONE;
        }
        UnitaryMatrix { qubit_count: n, data }
    }

    /// `self * rhs`
    pub fn mul(&self, rhs: &UnitaryMatrix) -> UnitaryMatrix {
        assert_eq!(self.qubit_count, rhs.qubit_count, "dimension mismatch");
        let dim = self.dim();
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let a = self.data[i * dim + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * dim..(k + 1) * dim];
                let out = &mut data[i * dim..(i + 1) * dim];
                for (o, &b) in out.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        UnitaryMatrix { qubit_count: self.qubit_count, data }
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        let dim = self.dim();
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                data[j * dim + i] = self.data[i * dim + j].conj();
            }
        }
        UnitaryMatrix { qubit_count: self.qubit_count, data }
    }

    /// Largest elementwise `|self - other|`.
    pub fn max_deviation(&self, other: &UnitaryMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest elementwise deviation after removing the best single global phase.
    pub fn max_deviation_up_to_phase(&self, other: &UnitaryMatrix) -> f64 {
        if self.qubit_count != other.qubit_count {
            return f64::INFINITY;
        }
        // phase of the overlap tr(other^dagger self)
        let overlap: Complex64 = self.data.iter().zip(&other.data).map(|(a, b)| b.conj() * a).sum();
        let norm = overlap.norm();
        let phase = if norm > 0.0 { overlap / norm } else { ONE };
        self.data.iter().zip(&other.data).map(|(a, b)| (a - phase * b).norm()).fold(0.0, f64::max)
    }

    pub fn equals_up_to_phase(&self, other: &UnitaryMatrix, tol: f64) -> bool {
        self.max_deviation_up_to_phase(other) < tol
    }

    /// `max |U^dagger U - I|`
    pub fn unitarity_error(&self) -> f64 {
        self.adjoint().mul(self).max_deviation(&UnitaryMatrix::identity(self.qubit_count))
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let dim = self.dim();
        (0..dim).map(|i| self.data[i * dim..(i + 1) * dim].iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}

/// Ordered product of gate matrices, last gate leftmost.
pub fn circuit_unitary(circuit: &Circuit) -> Result<UnitaryMatrix> {
    if circuit.has_measurements() {
        return Err(Error::HasMeasurements);
    }
    let n = circuit.qubit_count();
    if n > MAX_UNITARY_QUBITS {
        return Err(Error::TooManyQubits { qubit_count: n, limit: MAX_UNITARY_QUBITS });
    }
    Ok(circuit.gates().iter().fold(UnitaryMatrix::identity(n), |acc, g| UnitaryMatrix::embed(g, n).mul(&acc)))
}

/// `|<a|b>|` between two normalized vectors, used for state equality up to phase.
pub fn overlap_magnitude(a: &[Complex64], b: &[Complex64]) -> f64 {
    let inner: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    math::abs(inner.norm())
}
