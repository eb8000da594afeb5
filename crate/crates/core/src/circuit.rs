//! Gate set, circuit IR and the directional device model.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{self, FRAC_1_SQRT_2, ONE, ZERO};

/// A 1-based qubit label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitId(u8);

impl QubitId {
    /// # Panics
    /// If `index` is zero.
    pub const fn new(index: usize) -> Self {
        assert!(index >= 1 && index <= u8::MAX as usize, "qubit labels start at 1");
        QubitId(index as u8)
    }

    pub fn try_new(index: usize) -> Option<Self> {
        (1..=u8::MAX as usize).contains(&index).then_some(QubitId(index as u8))
    }

    /// The 1-based label.
    pub const fn label(self) -> usize {
        self.0 as usize
    }

    /// The 0-based position.
    pub const fn offset(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type Matrix2 = [[Complex64; 2]; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SingleQubitGate {
    I,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
}

impl SingleQubitGate {
    pub const ALL: [SingleQubitGate; 9] = [
        SingleQubitGate::I,
        SingleQubitGate::X,
        SingleQubitGate::Y,
        SingleQubitGate::Z,
        SingleQubitGate::H,
        SingleQubitGate::S,
        SingleQubitGate::Sdg,
        SingleQubitGate::T,
        SingleQubitGate::Tdg,
    ];

    pub fn inverse(self) -> Self {
        use SingleQubitGate::*;
        match self {
            S => Sdg,
            Sdg => S,
            T => Tdg,
            Tdg => T,
            g => g,
        }
    }

    /// S = diag(1, i), T = diag(1, e^{i pi/4}), H = [[1, 1], [1, -1]] / sqrt 2.
    pub fn matrix(self) -> Matrix2 {
        use SingleQubitGate::*;
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let t = math::phase(core::f64::consts::FRAC_PI_4);
        let i = math::I;
        match self {
            I => [[ONE, ZERO], [ZERO, ONE]],
            X => [[ZERO, ONE], [ONE, ZERO]],
            Y => [[ZERO, -i], [i, ZERO]],
            Z => [[ONE, ZERO], [ZERO, -ONE]],
            H => [[h, h], [h, -h]],
            S => [[ONE, ZERO], [ZERO, i]],
            Sdg => [[ONE, ZERO], [ZERO, -i]],
            T => [[ONE, ZERO], [ZERO, t]],
            Tdg => [[ONE, ZERO], [ZERO, t.conj()]],
        }
    }

    /// Mnemonic used by the circuit text format.
    pub fn name(self) -> &'static str {
        use SingleQubitGate::*;
        match self {
            I => "I",
            X => "X",
            Y => "Y",
            Z => "Z",
            H => "H",
            S => "S",
            Sdg => "SDG",
            T => "T",
            Tdg => "TDG",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.name().eq_ignore_ascii_case(name))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    Single { kind: SingleQubitGate, qubit: QubitId },
    Cnot { control: QubitId, target: QubitId },
}

macro_rules! single_ctor {
    ($($fn_name:ident => $kind:ident),* $(,)?) => {
        $(
            pub const fn $fn_name(qubit: usize) -> Gate {
                Gate::Single { kind: SingleQubitGate::$kind, qubit: QubitId::new(qubit) }
            }
        )*
    };
}

impl Gate {
    single_ctor! {
        id => I, x => X, y => Y, z => Z, h => H, s => S, sdg => Sdg, t => T, tdg => Tdg,
    }

    pub const fn single(kind: SingleQubitGate, qubit: QubitId) -> Gate {
        Gate::Single { kind, qubit }
    }

    pub const fn cnot(control: usize, target: usize) -> Gate {
        Gate::Cnot { control: QubitId::new(control), target: QubitId::new(target) }
    }

    pub fn inverse(self) -> Gate {
        match self {
            Gate::Single { kind, qubit } => Gate::Single { kind: kind.inverse(), qubit },
            cnot => cnot,
        }
    }

    pub fn qubits(&self) -> impl Iterator<Item = QubitId> {
        let (a, b) = match *self {
            Gate::Single { qubit, .. } => (qubit, None),
            Gate::Cnot { control, target } => (control, Some(target)),
        };
        core::iter::once(a).chain(b)
    }

    pub fn touches(&self, qubit: QubitId) -> bool {
        self.qubits().any(|q| q == qubit)
    }

    /// Relabel every operand through `map`.
    pub fn map_qubits(self, mut map: impl FnMut(QubitId) -> QubitId) -> Gate {
        match self {
            Gate::Single { kind, qubit } => Gate::Single { kind, qubit: map(qubit) },
            Gate::Cnot { control, target } => Gate::Cnot { control: map(control), target: map(target) },
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Single { kind, qubit } => write!(f, "{} {}", kind.name(), qubit),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
        }
    }
}

/// Terminal measurement basis. X is realized as a Hadamard followed by a Z readout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Z,
    X,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Z => "Z",
            Basis::X => "X",
        }
    }
}

/// Ordered gates over `qubit_count` qubits plus per-qubit terminal measurement tags.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    qubit_count: usize,
    gates: Vec<Gate>,
    measurements: Vec<Option<Basis>>,
}

impl Circuit {
    pub fn new(qubit_count: usize) -> Self {
        Circuit { qubit_count, gates: Vec::new(), measurements: vec![None; qubit_count] }
    }

    pub fn from_gates(qubit_count: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut circuit = Circuit::new(qubit_count);
        circuit.extend(gates)?;
        Ok(circuit)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    fn check(&self, qubit: QubitId) -> Result<()> {
        if qubit.label() > self.qubit_count {
            return Err(Error::QubitOutOfRange { qubit: qubit.label(), qubit_count: self.qubit_count });
        }
        Ok(())
    }

    pub fn check_gate(&self, gate: &Gate) -> Result<()> {
        for q in gate.qubits() {
            self.check(q)?;
        }
        if let Gate::Cnot { control, target } = gate {
            if control == target {
                return Err(Error::DuplicateOperand { qubit: control.label() });
            }
        }
        Ok(())
    }

    /// Append a gate. Gates cannot follow measurement tags.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        self.check_gate(&gate)?;
        if self.has_measurements() {
            return Err(Error::HasMeasurements);
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Append another circuit's gates (its measurement tags are ignored).
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        self.extend(other.gates.iter().copied())
    }

    /// Tag `qubit` for terminal measurement in `basis`.
    pub fn measure(&mut self, qubit: QubitId, basis: Basis) -> Result<()> {
        self.check(qubit)?;
        self.measurements[qubit.offset()] = Some(basis);
        Ok(())
    }

    pub fn measure_all(&mut self, basis: Basis) {
        self.measurements.iter_mut().for_each(|m| *m = Some(basis));
    }

    pub fn measurement(&self, qubit: QubitId) -> Option<Basis> {
        self.measurements.get(qubit.offset()).copied().flatten()
    }

    pub fn measurements(&self) -> &[Option<Basis>] {
        &self.measurements
    }

    pub fn has_measurements(&self) -> bool {
        self.measurements.iter().any(Option::is_some)
    }

    pub fn without_measurements(&self) -> Circuit {
        Circuit { measurements: vec![None; self.qubit_count], ..self.clone() }
    }

    /// The same gates on a register of `qubit_count >= self.qubit_count()` qubits.
    pub fn widened(&self, qubit_count: usize) -> Result<Circuit> {
        if qubit_count < self.qubit_count {
            return Err(Error::LengthMismatch { expected: self.qubit_count, found: qubit_count });
        }
        let mut measurements = self.measurements.clone();
        measurements.resize(qubit_count, None);
        Ok(Circuit { qubit_count, gates: self.gates.clone(), measurements })
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Cnot { .. })).count()
    }
}

/// Reverse the gate list and invert each gate.
pub fn invert_circuit(circuit: &Circuit) -> Result<Circuit> {
    if circuit.has_measurements() {
        return Err(Error::HasMeasurements);
    }
    let gates = circuit.gates.iter().rev().map(|g| g.inverse()).collect();
    Ok(Circuit { gates, ..circuit.clone() })
}

/// Directional two-qubit connectivity of a device.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeviceModel {
    qubit_count: usize,
    allowed_cnots: BTreeSet<(QubitId, QubitId)>,
}

impl DeviceModel {
    pub fn new(qubit_count: usize, allowed: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut allowed_cnots = BTreeSet::new();
        for (c, t) in allowed {
            for q in [c, t] {
                if q == 0 || q > qubit_count {
                    return Err(Error::QubitOutOfRange { qubit: q, qubit_count });
                }
            }
            if c == t {
                return Err(Error::DuplicateOperand { qubit: c });
            }
            allowed_cnots.insert((QubitId::new(c), QubitId::new(t)));
        }
        Ok(DeviceModel { qubit_count, allowed_cnots })
    }

    /// Five qubits; every CNOT targets qubit 3.
    pub fn star5() -> Self {
        Self::new(5, [(1, 3), (2, 3), (4, 3), (5, 3)]).expect("static device is valid")
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn allowed_cnots(&self) -> impl Iterator<Item = (QubitId, QubitId)> + '_ {
        self.allowed_cnots.iter().copied()
    }

    pub fn allows(&self, control: QubitId, target: QubitId) -> bool {
        self.allowed_cnots.contains(&(control, target))
    }

    /// True if a CNOT is available in at least one direction.
    pub fn coupled(&self, a: QubitId, b: QubitId) -> bool {
        self.allows(a, b) || self.allows(b, a)
    }

    /// Undirected neighbours of `qubit`, ascending.
    pub fn neighbors(&self, qubit: QubitId) -> Vec<QubitId> {
        let set: BTreeSet<QubitId> = self
            .allowed_cnots
            .iter()
            .filter_map(|&(c, t)| {
                if c == qubit {
                    Some(t)
                } else if t == qubit {
                    Some(c)
                } else {
                    None
                }
            })
            .collect();
        set.into_iter().collect()
    }
}

impl Default for DeviceModel {
    fn default() -> Self {
        Self::star5()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub gate_index: usize,
    pub control: QubitId,
    pub target: QubitId,
}

/// CNOTs the device cannot execute as written.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_against_device(circuit: &Circuit, device: &DeviceModel) -> ValidationReport {
    let violations = circuit
        .gates()
        .iter()
        .enumerate()
        .filter_map(|(gate_index, g)| match *g {
            Gate::Cnot { control, target } if !device.allows(control, target) => Some(Violation { gate_index, control, target }),
            _ => None,
        })
        .collect();
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, gates: &[Gate]) -> Circuit {
        Circuit::from_gates(n, gates.iter().copied()).unwrap()
    }

    #[test]
    fn legal_cnot_on_star_device() {
        let report = validate_against_device(&c(5, &[Gate::cnot(1, 3)]), &DeviceModel::star5());
        assert!(report.is_valid());
    }

    #[test]
    fn reversed_cnot_is_flagged() {
        let report = validate_against_device(&c(5, &[Gate::h(2), Gate::cnot(3, 1)]), &DeviceModel::star5());
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].gate_index, 1);
    }

    #[test]
    fn single_qubit_gates_are_unconstrained() {
        let report = validate_against_device(&c(5, &[Gate::h(2), Gate::t(4)]), &DeviceModel::star5());
        assert!(report.is_valid());
    }

    #[test]
    fn invert_reverses_and_daggers() {
        let inv = invert_circuit(&c(1, &[Gate::t(1)])).unwrap();
        assert_eq!(inv.gates(), &[Gate::tdg(1)]);
        let inv = invert_circuit(&c(3, &[Gate::h(1), Gate::s(2), Gate::cnot(1, 3)])).unwrap();
        assert_eq!(inv.gates(), &[Gate::cnot(1, 3), Gate::sdg(2), Gate::h(1)]);
    }

    #[test]
    fn invert_rejects_measured_circuit() {
        let mut circuit = c(1, &[Gate::h(1)]);
        circuit.measure(QubitId::new(1), Basis::Z).unwrap();
        assert_eq!(invert_circuit(&circuit), Err(Error::HasMeasurements));
    }

    #[test]
    fn push_checks_operands() {
        let mut circuit = Circuit::new(2);
        assert!(matches!(circuit.push(Gate::h(3)), Err(Error::QubitOutOfRange { .. })));
        assert_eq!(circuit.push(Gate::cnot(2, 2)), Err(Error::DuplicateOperand { qubit: 2 }));
        circuit.measure(QubitId::new(1), Basis::X).unwrap();
        assert_eq!(circuit.push(Gate::h(1)), Err(Error::HasMeasurements));
    }

    #[test]
    fn star_neighbors() {
        let dev = DeviceModel::star5();
        assert_eq!(dev.neighbors(QubitId::new(3)).len(), 4);
        assert_eq!(dev.neighbors(QubitId::new(1)), [QubitId::new(3)]);
    }
}
