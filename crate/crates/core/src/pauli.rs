//! Signed Pauli strings and their action on state vectors.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;
use core::str::FromStr;

use num_complex::Complex64;

use crate::circuit::{Gate, QubitId, SingleQubitGate};
use crate::error::{Error, Result};
use crate::math::{I, ONE};
use crate::statevector::StateVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn x_bit(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    pub fn z_bit(self) -> bool {
        matches!(self, Pauli::Z | Pauli::Y)
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// `self * other = i^k * product`, returned as `(k, product)`.
    pub fn mul_with_phase(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (a, b) if a == b => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }

    pub fn gate(self) -> SingleQubitGate {
        match self {
            Pauli::I => SingleQubitGate::I,
            Pauli::X => SingleQubitGate::X,
            Pauli::Y => SingleQubitGate::Y,
            Pauli::Z => SingleQubitGate::Z,
        }
    }
}

/// Global phase `i^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const PLUS_ONE: Phase = Phase(0);
    pub const PLUS_I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(k: u8) -> Phase {
        Phase(k % 4)
    }

    pub fn power(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn negated(self) -> Phase {
        Phase((self.0 + 2) % 4)
    }

    pub fn value(self) -> Complex64 {
        [ONE, I, -ONE, -I][self.0 as usize]
    }

    /// `+1` or `-1` for real phases.
    pub fn sign(self) -> Option<i8> {
        match self.0 {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    phase: Phase,
    letters: Vec<Pauli>,
}

impl PauliString {
    pub fn new(phase: Phase, letters: Vec<Pauli>) -> Self {
        PauliString { phase, letters }
    }

    pub fn identity(n: usize) -> Self {
        PauliString { phase: Phase::PLUS_ONE, letters: vec![Pauli::I; n] }
    }

    /// `+P` on `qubits`, identity elsewhere.
    pub fn with_letters(n: usize, letter: Pauli, qubits: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for &q in qubits {
            p.letters[q - 1] = letter;
        }
        p
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn letter(&self, qubit: QubitId) -> Pauli {
        self.letters[qubit.offset()]
    }

    pub fn set_letter(&mut self, qubit: QubitId, letter: Pauli) {
        self.letters[qubit.offset()] = letter;
    }

    pub fn negated(&self) -> Self {
        PauliString { phase: self.phase.negated(), letters: self.letters.clone() }
    }

    pub fn with_phase(&self, phase: Phase) -> Self {
        PauliString { phase, letters: self.letters.clone() }
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_real()
    }

    /// Qubits with a non-identity letter, ascending.
    pub fn support(&self) -> Vec<QubitId> {
        self.letters.iter().enumerate().filter(|(_, l)| **l != Pauli::I).map(|(i, _)| QubitId::new(i + 1)).collect()
    }

    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|l| **l != Pauli::I).count()
    }

    /// Symplectic check: the strings commute iff they anticommute on an even number of sites.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        assert_eq!(self.len(), other.len(), "pauli string length");
        let anti = self.letters.iter().zip(&other.letters).filter(|(a, b)| (a.x_bit() && b.z_bit()) ^ (a.z_bit() && b.x_bit())).count();
        anti % 2 == 0
    }

    pub fn try_mul(&self, other: &PauliString) -> Result<PauliString> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: other.len() });
        }
        let mut k = self.phase.0 + other.phase.0;
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .map(|(a, b)| {
                let (p, l) = a.mul_with_phase(*b);
                k += p;
                l
            })
            .collect();
        Ok(PauliString { phase: Phase::from_power(k), letters })
    }

    /// `U P U^dagger` for a Clifford gate `U`.
    pub fn conjugated_by(&self, gate: &Gate) -> Result<PauliString> {
        let mut out = self.clone();
        match *gate {
            Gate::Single { kind, qubit } => {
                let q = qubit.offset();
                if q >= self.len() {
                    return Err(Error::QubitOutOfRange { qubit: qubit.label(), qubit_count: self.len() });
                }
                let l = self.letters[q];
                let (flip, new) = conjugate_single(kind, l).ok_or(Error::UnsupportedGate)?;
                out.letters[q] = new;
                if flip {
                    out.phase = out.phase.negated();
                }
            }
            Gate::Cnot { control, target } => {
                let (c, t) = (control.offset(), target.offset());
                if c.max(t) >= self.len() {
                    return Err(Error::QubitOutOfRange { qubit: c.max(t) + 1, qubit_count: self.len() });
                }
                let (lc, lt) = (self.letters[c], self.letters[t]);
                // X_c -> X_c X_t, Z_t -> Z_c Z_t; sign via the standard tableau rule
                let (xc, zc, xt, zt) = (lc.x_bit(), lc.z_bit(), lt.x_bit(), lt.z_bit());
                let sign_flip = xc && zt && (xt == zc);
                out.letters[c] = Pauli::from_bits(xc, zc ^ zt);
                out.letters[t] = Pauli::from_bits(xt ^ xc, zt);
                if sign_flip {
                    out.phase = out.phase.negated();
                }
            }
        }
        Ok(out)
    }

    /// `P|psi>`.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        let n = state.qubit_count();
        if self.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: self.len() });
        }
        let (xmask, _) = self.masks(n);
        let mut out = alloc::vec![Complex64::new(0.0, 0.0); 1 << n];
        for (i, a) in state.amplitudes().iter().enumerate() {
            out[i ^ xmask] = self.factor(i, n) * a;
        }
        StateVector::from_amplitudes(out)
    }

    fn masks(&self, n: usize) -> (usize, usize) {
        self.letters.iter().enumerate().fold((0, 0), |(x, z), (q, l)| {
            let bit = 1 << (n - 1 - q);
            (x | if l.x_bit() { bit } else { 0 }, z | if l.z_bit() { bit } else { 0 })
        })
    }

    /// Coefficient of `|i ^ xmask>` in `P|i>`.
    fn factor(&self, i: usize, n: usize) -> Complex64 {
        let mut k = self.phase.0 as u32;
        for (q, l) in self.letters.iter().enumerate() {
            let b = (i >> (n - 1 - q)) & 1 == 1;
            k += match (l, b) {
                (Pauli::Z, true) => 2,
                (Pauli::Y, false) => 1, // Y|0> = i|1>
                (Pauli::Y, true) => 3,  // Y|1> = -i|0>
                _ => 0,
            };
        }
        Phase::from_power((k % 4) as u8).value()
    }
}

fn conjugate_single(kind: SingleQubitGate, l: Pauli) -> Option<(bool, Pauli)> {
    use Pauli::*;
    use SingleQubitGate as G;
    Some(match (kind, l) {
        (_, I) | (G::I, _) => (false, l),
        (G::X, X) | (G::Y, Y) | (G::Z, Z) => (false, l),
        (G::X, _) | (G::Y, _) | (G::Z, _) => (true, l),
        (G::H, X) => (false, Z),
        (G::H, Z) => (false, X),
        (G::H, Y) => (true, Y),
        // S X S^dagger = Y, S Y S^dagger = -X
        (G::S, X) => (false, Y),
        (G::S, Y) => (true, X),
        (G::Sdg, X) => (true, Y),
        (G::Sdg, Y) => (false, X),
        (G::S, Z) | (G::Sdg, Z) => (false, Z),
        (G::T, _) | (G::Tdg, _) => return None,
    })
}

/// `<psi|P|psi>` for a Hermitian Pauli string, computed directly on amplitudes.
pub fn pauli_expectation(state: &StateVector, p: &PauliString) -> Result<f64> {
    let n = state.qubit_count();
    if p.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: p.len() });
    }
    if !p.is_hermitian() {
        return Err(Error::NonHermitian);
    }
    let (xmask, _) = p.masks(n);
    let amps = state.amplitudes();
    let value: Complex64 = amps.iter().enumerate().map(|(i, a)| amps[i ^ xmask].conj() * p.factor(i, n) * a).sum();
    Ok(value.re)
}

impl fmt::Display for PauliString {
    /// `+XZIII`, `-iYY`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["+", "+i", "-", "-i"][self.phase.0 as usize])?;
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (phase, rest) = if let Some(r) = s.strip_prefix("+i") {
            (Phase::PLUS_I, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (Phase::MINUS_I, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (Phase::PLUS_ONE, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (Phase::MINUS_ONE, r)
        } else {
            (Phase::PLUS_ONE, s)
        };
        let letters = rest
            .chars()
            .map(|c| Pauli::from_char(c).ok_or(Error::OutOfRange { name: "pauli letter", value: c as i64 }))
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString { phase, letters })
    }
}
