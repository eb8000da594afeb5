//! Line-oriented circuit text format.
//!
//! ```text
//! # Bell pair
//! QUBITS 2
//! H 1
//! CNOT 1 2
//! MEASURE 1 Z
//! MEASURE 2 X
//! ```
//!
//! Keywords are case-insensitive and `#` starts a comment. `QUBITS` is
//! optional; without it the register is as wide as the largest label used.
//! Measurement tags are terminal wherever they appear in the file.

use std::fmt::{self, Write as _};

use cloudqc_core::{Basis, Circuit, Gate, QubitId, SingleQubitGate};

use super::ParseError;

pub fn write_circuit(circuit: &Circuit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "QUBITS {}", circuit.qubit_count());
    for gate in circuit.gates() {
        let _ = match gate {
            Gate::Single { kind, qubit } => writeln!(out, "{} {}", kind.name(), qubit),
            Gate::Cnot { control, target } => writeln!(out, "CNOT {control} {target}"),
        };
    }
    for (i, m) in circuit.measurements().iter().enumerate() {
        if let Some(basis) = m {
            let _ = writeln!(out, "MEASURE {} {}", i + 1, basis.name());
        }
    }
    out
}

enum Line {
    Qubits(usize),
    Gate(Gate),
    Measure(QubitId, Basis),
}

fn qubit(token: Option<&str>, line: usize) -> Result<QubitId, ParseError> {
    let token = token.ok_or_else(|| ParseError::new(line, "missing qubit label"))?;
    token
        .parse::<usize>()
        .ok()
        .and_then(QubitId::try_new)
        .ok_or_else(|| ParseError::new(line, format!("bad qubit label `{token}` (labels start at 1)")))
}

fn parse_line(text: &str, line: usize) -> Result<Option<Line>, ParseError> {
    let text = text.split('#').next().unwrap_or("");
    let mut tokens = text.split_whitespace();
    let Some(op) = tokens.next() else { return Ok(None) };
    let parsed = match op.to_ascii_uppercase().as_str() {
        "QUBITS" => {
            let n = tokens.next().and_then(|t| t.parse::<usize>().ok());
            Line::Qubits(n.ok_or_else(|| ParseError::new(line, "QUBITS needs a count"))?)
        }
        "CNOT" | "CX" => {
            let c = qubit(tokens.next(), line)?;
            let t = qubit(tokens.next(), line)?;
            Line::Gate(Gate::Cnot { control: c, target: t })
        }
        "MEASURE" => {
            let q = qubit(tokens.next(), line)?;
            let basis = match tokens.next().map(str::to_ascii_uppercase).as_deref() {
                Some("Z") | None => Basis::Z,
                Some("X") => Basis::X,
                Some(other) => return Err(ParseError::new(line, format!("unknown basis `{other}`"))),
            };
            Line::Measure(q, basis)
        }
        name => {
            let kind = SingleQubitGate::from_name(name).ok_or_else(|| ParseError::new(line, format!("unknown gate `{op}`")))?;
            Line::Gate(Gate::single(kind, qubit(tokens.next(), line)?))
        }
    };
    if let Some(extra) = tokens.next() {
        return Err(ParseError::new(line, format!("unexpected token `{extra}`")));
    }
    Ok(Some(parsed))
}

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut declared = None;
    let mut items = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        match parse_line(raw, i + 1)? {
            Some(Line::Qubits(n)) => {
                if declared.is_some() {
                    return Err(ParseError::new(i + 1, "QUBITS given twice"));
                }
                declared = Some(n);
            }
            Some(other) => items.push((i + 1, other)),
            None => {}
        }
    }
    let widest = items
        .iter()
        .flat_map(|(_, l)| match l {
            Line::Gate(g) => g.qubits().collect::<Vec<_>>(),
            Line::Measure(q, _) => vec![*q],
            Line::Qubits(_) => vec![],
        })
        .map(QubitId::label)
        .max()
        .unwrap_or(0);
    let mut circuit = Circuit::new(declared.unwrap_or(widest));
    for (line, item) in items {
        let result = match item {
            Line::Gate(g) => circuit.push(g),
            Line::Measure(q, b) => circuit.measure(q, b),
            Line::Qubits(_) => unreachable!(),
        };
        result.map_err(|e| ParseError::new(line, e.to_string()))?;
    }
    Ok(circuit)
}

/// Adapter so circuits can be used with `{}`.
pub struct Text<'a>(pub &'a Circuit);

impl fmt::Display for Text<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_circuit(self.0))
    }
}
