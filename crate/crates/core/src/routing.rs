//! Routing onto devices with directional CNOT couplings.
//!
//! Disallowed CNOT directions are fixed by Hadamard conjugation. Uncoupled
//! pairs are fixed by swapping the target along a shortest coupling path
//! until it sits next to the control. Swaps are not undone; the final
//! placement is returned as a [`QubitPermutation`].

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::circuit::{Circuit, DeviceModel, Gate, QubitId};
use crate::error::{Error, Result};
use crate::unitary::UnitaryMatrix;

/// Where each logical qubit ends up: `physical(i)` is the output wire holding logical qubit `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QubitPermutation {
    mapping: Vec<u8>,
}

impl QubitPermutation {
    pub fn identity(n: usize) -> Self {
        QubitPermutation { mapping: (0..n as u8).collect() }
    }

    /// From 1-based labels, `labels[i - 1]` being the physical wire of logical qubit `i`.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let n = labels.len();
        let mut seen = vec![false; n];
        for &l in labels {
            if l == 0 || l > n {
                return Err(Error::QubitOutOfRange { qubit: l, qubit_count: n });
            }
            if core::mem::replace(&mut seen[l - 1], true) {
                return Err(Error::DuplicateOperand { qubit: l });
            }
        }
        Ok(QubitPermutation { mapping: labels.iter().map(|&l| (l - 1) as u8).collect() })
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    pub fn physical(&self, logical: QubitId) -> QubitId {
        QubitId::new(self.mapping[logical.offset()] as usize + 1)
    }

    pub fn logical(&self, physical: QubitId) -> QubitId {
        let i = self.mapping.iter().position(|&p| p as usize == physical.offset()).expect("bijection");
        QubitId::new(i + 1)
    }

    /// 1-based physical wires, indexed by logical qubit.
    pub fn labels(&self) -> Vec<usize> {
        self.mapping.iter().map(|&p| p as usize + 1).collect()
    }

    /// Physical wires of logical qubits `1..=n` in order; feed to
    /// [`crate::ShotHistogram::select`] to read a routed histogram in logical order.
    pub fn logical_readout(&self) -> Vec<QubitId> {
        (1..=self.len()).map(|l| self.physical(QubitId::new(l))).collect()
    }

    /// Permutation operator moving each logical factor to its physical wire.
    pub fn unitary(&self) -> UnitaryMatrix {
        let m: Vec<usize> = self.mapping.iter().map(|&p| p as usize).collect();
        UnitaryMatrix::permutation(&m)
    }

    fn swap_physical(&mut self, a: usize, b: usize) {
        for p in self.mapping.iter_mut() {
            if *p as usize == a {
                *p = b as u8;
            } else if *p as usize == b {
                *p = a as u8;
            }
        }
    }
}

fn device_circuit(device: &DeviceModel, gates: Vec<Gate>) -> Result<Circuit> {
    Circuit::from_gates(device.qubit_count(), gates)
}

/// Device-legal gates implementing `CNOT(control, target)`: the gate itself, or
/// the opposite direction conjugated by Hadamards on both qubits.
fn legal_cnot(control: QubitId, target: QubitId, device: &DeviceModel) -> Result<Vec<Gate>> {
    let (c, t) = (control.label(), target.label());
    if device.allows(control, target) {
        Ok(vec![Gate::cnot(c, t)])
    } else if device.allows(target, control) {
        Ok(vec![Gate::h(c), Gate::h(t), Gate::cnot(t, c), Gate::h(c), Gate::h(t)])
    } else {
        Err(Error::NoCoupling { control: c, target: t })
    }
}

pub fn reverse_cnot(control: QubitId, target: QubitId, device: &DeviceModel) -> Result<Circuit> {
    device_circuit(device, legal_cnot(control, target, device)?)
}

fn adjacent_swap(a: QubitId, b: QubitId, device: &DeviceModel) -> Result<Vec<Gate>> {
    let (c, t) = if device.allows(a, b) { (a, b) } else { (b, a) };
    let mut gates = legal_cnot(c, t, device)?;
    gates.extend(legal_cnot(t, c, device)?);
    gates.extend(legal_cnot(c, t, device)?);
    Ok(gates)
}

/// Shortest coupling path `from -> to` (inclusive), ties broken by lowest label.
fn shortest_path(from: QubitId, to: QubitId, device: &DeviceModel) -> Result<Vec<QubitId>> {
    let n = device.qubit_count();
    let mut prev: Vec<Option<QubitId>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([from]);
    seen[from.offset()] = true;
    while let Some(q) = queue.pop_front() {
        if q == to {
            let mut path = vec![to];
            let mut cur = to;
            while let Some(p) = prev[cur.offset()] {
                path.push(p);
                cur = p;
            }
            path.reverse();
            return Ok(path);
        }
        for nb in device.neighbors(q) {
            if !seen[nb.offset()] {
                seen[nb.offset()] = true;
                prev[nb.offset()] = Some(q);
                queue.push_back(nb);
            }
        }
    }
    Err(Error::Unreachable { from: from.label(), to: to.label() })
}

/// Device-legal gates implementing `SWAP(a, b)`; non-adjacent pairs go along a shortest path.
pub fn swap_chain(a: QubitId, b: QubitId, device: &DeviceModel) -> Result<Circuit> {
    if a == b {
        return Err(Error::DuplicateOperand { qubit: a.label() });
    }
    for q in [a, b] {
        if q.label() > device.qubit_count() {
            return Err(Error::QubitOutOfRange { qubit: q.label(), qubit_count: device.qubit_count() });
        }
    }
    let path = shortest_path(a, b, device)?;
    let hops: Vec<_> = path.windows(2).map(|w| (w[0], w[1])).collect();
    let mut gates = Vec::new();
    for &(x, y) in hops.iter().chain(hops.iter().rev().skip(1)) {
        gates.extend(adjacent_swap(x, y, device)?);
    }
    device_circuit(device, gates)
}

/// Remove adjacent gate/inverse pairs where at least one gate was inserted by routing.
fn cancel_inverses(gates: Vec<(Gate, bool)>) -> Vec<Gate> {
    let mut out: Vec<(Gate, bool)> = Vec::with_capacity(gates.len());
    for (g, inserted) in gates {
        let last = out.iter().rposition(|(h, _)| g.qubits().any(|q| h.touches(q)));
        if let Some(i) = last {
            let (h, h_inserted) = out[i];
            if (inserted || h_inserted) && h == g.inverse() && h.qubits().eq(g.qubits()) {
                out.remove(i);
                continue;
            }
        }
        out.push((g, inserted));
    }
    out.into_iter().map(|(g, _)| g).collect()
}

/// Rewrite `circuit` into device-legal gates.
///
/// The result `r` satisfies `U(r) = P * U(circuit)` up to global phase, `P`
/// being the permutation operator of the returned placement. Terminal
/// measurement tags move with their qubits.
pub fn route_circuit(circuit: &Circuit, device: &DeviceModel) -> Result<(Circuit, QubitPermutation)> {
    let n = device.qubit_count();
    if circuit.qubit_count() > n {
        return Err(Error::TooManyQubits { qubit_count: circuit.qubit_count(), limit: n });
    }
    let mut layout = QubitPermutation::identity(n);
    let mut out: Vec<(Gate, bool)> = Vec::new();
    for gate in circuit.gates() {
        match *gate {
            Gate::Single { kind, qubit } => out.push((Gate::single(kind, layout.physical(qubit)), false)),
            Gate::Cnot { control, target } => {
                let pc = layout.physical(control);
                let mut pt = layout.physical(target);
                if !device.coupled(pc, pt) {
                    let path = shortest_path(pt, pc, device)?;
                    for &next in &path[1..path.len() - 1] {
                        out.extend(adjacent_swap(pt, next, device)?.into_iter().map(|g| (g, true)));
                        layout.swap_physical(pt.offset(), next.offset());
                        pt = next;
                    }
                }
                let gates = legal_cnot(pc, pt, device)?;
                let original = gates.len() == 1;
                out.extend(gates.into_iter().map(|g| (g, !(original || matches!(g, Gate::Cnot { .. })))));
            }
        }
    }
    let mut routed = device_circuit(device, cancel_inverses(out))?;
    for (i, basis) in circuit.measurements().iter().enumerate() {
        if let Some(b) = basis {
            routed.measure(layout.physical(QubitId::new(i + 1)), *b)?;
        }
    }
    Ok((routed, layout))
}
