//! Pauli frames: classical bookkeeping of teleportation by-products.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::circuit::{Basis, Gate, QubitId, SingleQubitGate};
use crate::error::{Error, Result};
use crate::sampling::Bitstring;

/// A pending Pauli correction, up to global phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliLabel {
    I,
    X,
    Z,
    /// Both flips; printed `ZX` in correction tables and `Y` in frames.
    ZX,
}

impl PauliLabel {
    pub fn from_flips(x: bool, z: bool) -> PauliLabel {
        match (x, z) {
            (false, false) => PauliLabel::I,
            (true, false) => PauliLabel::X,
            (false, true) => PauliLabel::Z,
            (true, true) => PauliLabel::ZX,
        }
    }

    pub fn x_flip(self) -> bool {
        matches!(self, PauliLabel::X | PauliLabel::ZX)
    }

    pub fn z_flip(self) -> bool {
        matches!(self, PauliLabel::Z | PauliLabel::ZX)
    }

    /// Accepts `I`, `X`, `Z`, `ZX`, `XZ` and `Y`.
    pub fn parse(s: &str) -> Option<PauliLabel> {
        Some(match s {
            "I" => PauliLabel::I,
            "X" => PauliLabel::X,
            "Z" => PauliLabel::Z,
            "ZX" | "XZ" | "Y" => PauliLabel::ZX,
            _ => return None,
        })
    }

    /// Frame notation: `I`, `X`, `Z`, `Y`.
    pub fn frame_symbol(self) -> &'static str {
        ["I", "X", "Z", "Y"][self as usize]
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["I", "X", "Z", "ZX"][*self as usize])
    }
}

/// The two legal basis sequences for the four teleportation measurements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternKind {
    Xzzx,
    Zxxz,
}

impl PatternKind {
    pub fn bases(self) -> [Basis; 4] {
        use Basis::{X, Z};
        match self {
            PatternKind::Xzzx => [X, Z, Z, X],
            PatternKind::Zxxz => [Z, X, X, Z],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PatternKind::Xzzx => "XZZX",
            PatternKind::Zxxz => "ZXXZ",
        }
    }
}

/// Bases and outcomes of the four teleportation measurements, in table order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MeasurementPattern {
    pub bases: [Basis; 4],
    pub results: [bool; 4],
}

impl MeasurementPattern {
    pub fn new(kind: PatternKind, results: [bool; 4]) -> Self {
        MeasurementPattern { bases: kind.bases(), results }
    }

    pub fn kind(&self) -> Result<PatternKind> {
        [PatternKind::Xzzx, PatternKind::Zxxz].into_iter().find(|k| k.bases() == self.bases).ok_or(Error::UnknownBasisPattern)
    }

    /// Results read as a 4-bit row index, first result most significant.
    pub fn row_index(&self) -> usize {
        self.results.iter().fold(0, |acc, &r| acc << 1 | r as usize)
    }
}

use PauliLabel::{I as PI, X as PX, Z as PZ, ZX as PY};

/// Corrections indexed by `row_index`, for the XZZX column and the ZXXZ column.
const TABLE: [[PauliLabel; 2]; 16] = {
    let mut t = [[PI; 2]; 16];
    // (r1, r2, r3, r4) as listed
    t[0b0000] = [PI, PI];
    t[0b1000] = [PZ, PX];
    t[0b0100] = [PX, PZ];
    t[0b1100] = [PY, PY];
    t[0b0001] = [PZ, PX];
    t[0b1001] = [PI, PI];
    t[0b0101] = [PY, PY];
    t[0b1101] = [PX, PZ];
    t[0b0010] = [PX, PZ];
    t[0b1010] = [PY, PY];
    t[0b0110] = [PI, PI];
    t[0b1110] = [PZ, PX];
    t[0b0011] = [PY, PY];
    t[0b1011] = [PX, PZ];
    t[0b0111] = [PZ, PX];
    t[0b1111] = [PI, PI];
    t
};

/// The tabulated output correction for a measurement record.
pub fn correction_for(pattern: &MeasurementPattern) -> Result<PauliLabel> {
    let column = match pattern.kind()? {
        PatternKind::Xzzx => 0,
        PatternKind::Zxxz => 1,
    };
    Ok(TABLE[pattern.row_index()][column])
}

/// Per-qubit `(x_flip, z_flip)` record; composition is XOR.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliFrame {
    flips: Vec<(bool, bool)>,
}

impl PauliFrame {
    pub fn identity(n: usize) -> Self {
        PauliFrame { flips: vec![(false, false); n] }
    }

    pub fn len(&self) -> usize {
        self.flips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.flips.iter().all(|&(x, z)| !x && !z)
    }

    pub fn get(&self, qubit: QubitId) -> PauliLabel {
        let (x, z) = self.flips[qubit.offset()];
        PauliLabel::from_flips(x, z)
    }

    pub fn x_flip(&self, qubit: QubitId) -> bool {
        self.flips[qubit.offset()].0
    }

    pub fn z_flip(&self, qubit: QubitId) -> bool {
        self.flips[qubit.offset()].1
    }

    pub fn compose(&self, other: &PauliFrame) -> Result<PauliFrame> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: other.len() });
        }
        let flips = self.flips.iter().zip(&other.flips).map(|(a, b)| (a.0 ^ b.0, a.1 ^ b.1)).collect();
        Ok(PauliFrame { flips })
    }

    /// `(qubit, label)` pairs in qubit order.
    pub fn entries(&self) -> impl Iterator<Item = (QubitId, PauliLabel)> + '_ {
        self.flips.iter().enumerate().map(|(i, &(x, z))| (QubitId::new(i + 1), PauliLabel::from_flips(x, z)))
    }

    fn check(&self, qubit: QubitId) -> Result<()> {
        if qubit.label() > self.len() {
            return Err(Error::QubitOutOfRange { qubit: qubit.label(), qubit_count: self.len() });
        }
        Ok(())
    }
}

/// XOR `correction` into the frame entry of `qubit`.
pub fn frame_update(frame: &PauliFrame, qubit: QubitId, correction: PauliLabel) -> Result<PauliFrame> {
    frame.check(qubit)?;
    let mut out = frame.clone();
    let f = &mut out.flips[qubit.offset()];
    f.0 ^= correction.x_flip();
    f.1 ^= correction.z_flip();
    Ok(out)
}

/// Push the frame past `gate`.
///
/// Returns `(frame', gate')` with `gate' * F = F' * gate` up to global phase:
/// running `gate'` on the frame-afflicted state is the intended `gate`
/// followed by the pending correction `F'`. Cliffords keep the gate and
/// conjugate the frame. `T` and `Tdg` keep the frame and swap with each other
/// when an X flip is pending, since `T X = X Tdg` up to phase.
pub fn conjugate_through(frame: &PauliFrame, gate: &Gate) -> Result<(PauliFrame, Gate)> {
    let mut out = frame.clone();
    match *gate {
        Gate::Single { kind, qubit } => {
            frame.check(qubit)?;
            let (x, z) = &mut out.flips[qubit.offset()];
            use SingleQubitGate as G;
            match kind {
                G::I | G::X | G::Y | G::Z => {}
                G::H => core::mem::swap(x, z),
                G::S | G::Sdg => *z ^= *x,
                G::T | G::Tdg => {
                    if *x {
                        return Ok((out, Gate::single(kind.inverse(), qubit)));
                    }
                }
            }
        }
        Gate::Cnot { control, target } => {
            frame.check(control)?;
            frame.check(target)?;
            let (c, t) = (control.offset(), target.offset());
            out.flips[t].0 ^= frame.flips[c].0;
            out.flips[c].1 ^= frame.flips[t].1;
        }
    }
    Ok((out, *gate))
}

/// XOR each pending X flip into the matching Z-basis outcome bit.
pub fn apply_frame_to_bits(frame: &PauliFrame, bits: &Bitstring) -> Result<Bitstring> {
    if frame.len() != bits.len() {
        return Err(Error::LengthMismatch { expected: frame.len(), found: bits.len() });
    }
    Ok(frame.entries().fold(*bits, |b, (q, l)| if l.x_flip() { b.flip(q) } else { b }))
}
