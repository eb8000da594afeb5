//! Two-register Fourier adder: `|a>|b> -> |a>|a + b mod 4>`.
//!
//! Logical bit order is `a1 a2 b1 b2`, most significant first, so
//! `a = 2 a1 + a2` and `b = 2 b1 + b2`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::circuit::{invert_circuit, Basis, Circuit, DeviceModel, Gate};
use crate::error::{Error, Result};
use crate::routing::{route_circuit, QubitPermutation};
use crate::sampling::{run_shots, Bitstring, NoiseModel, RngSeed, ShotHistogram};
use crate::statevector::run_ideal;

/// Probabilities below this are treated as absent when flagging outcomes.
const SUPPORT_EPS: f64 = 1e-12;

/// Input preparation on the four logical qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct AdderCase {
    pub name: String,
    pub prep: Vec<Gate>,
}

impl AdderCase {
    /// Basis inputs `a, b` in `0..4`.
    pub fn basis(a: u8, b: u8) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b)] {
            if v > 3 {
                return Err(Error::OutOfRange { name, value: v as i64 });
            }
        }
        let bits = [a >> 1 & 1, a & 1, b >> 1 & 1, b & 1];
        let prep = bits.iter().enumerate().filter(|(_, &bit)| bit == 1).map(|(i, _)| Gate::x(i + 1)).collect();
        Ok(AdderCase { name: alloc::format!("a={a},b={b}"), prep })
    }

    /// `a = 1`, target `(|00> + |11>)/sqrt 2`: input `(|0100> + |0111>)/sqrt 2`.
    pub fn entangled_target() -> Self {
        AdderCase { name: "a=1,b=00+11".into(), prep: alloc::vec![Gate::x(2), Gate::h(3), Gate::cnot(3, 4)] }
    }

    /// `a` in `(|00> + |11>)/sqrt 2`, `b = 1`.
    pub fn superposed_addend() -> Self {
        AdderCase { name: "a=00+11,b=1".into(), prep: alloc::vec![Gate::h(1), Gate::cnot(1, 2), Gate::x(4)] }
    }

    /// The sixteen basis cases followed by the two superposition inputs.
    pub fn presets() -> Vec<AdderCase> {
        let mut cases: Vec<_> = (0..4).flat_map(|a| (0..4).map(move |b| AdderCase::basis(a, b).expect("in range"))).collect();
        cases.push(AdderCase::entangled_target());
        cases.push(AdderCase::superposed_addend());
        cases
    }

    fn prep_circuit(&self) -> Result<Circuit> {
        Circuit::from_gates(4, self.prep.iter().copied())
    }
}

fn cz(a: usize, b: usize) -> [Gate; 3] {
    [Gate::h(b), Gate::cnot(a, b), Gate::h(b)]
}

/// Controlled-S from T gates: `T(c) T(t) CNOT(c,t) Tdg(t) CNOT(c,t)`.
fn controlled_s(c: usize, t: usize) -> [Gate; 5] {
    [Gate::t(c), Gate::t(t), Gate::cnot(c, t), Gate::tdg(t), Gate::cnot(c, t)]
}

/// QFT on the target register `b1 b2` (qubits 3, 4), without the final bit reversal.
fn qft_b() -> Vec<Gate> {
    let mut g = alloc::vec![Gate::h(3)];
    g.extend(controlled_s(4, 3));
    g.push(Gate::h(4));
    g
}

/// Fourier-space addition of `a` into `b`: `CZ(1,3)`, `CS(2,3)`, `CZ(2,4)`.
fn phase_add() -> Vec<Gate> {
    let mut g = Vec::new();
    g.extend(cz(1, 3));
    g.extend(controlled_s(2, 3));
    g.extend(cz(2, 4));
    g
}

/// Prep, QFT on `b`, controlled phases, inverse QFT, Z measurement of all four qubits.
pub fn adder_circuit(case: &AdderCase) -> Result<Circuit> {
    let mut c = case.prep_circuit()?;
    let qft = Circuit::from_gates(4, qft_b())?;
    c.append(&qft)?;
    c.extend(phase_add())?;
    c.append(&invert_circuit(&qft)?)?;
    c.measure_all(Basis::Z);
    Ok(c)
}

/// Output distribution implied by applying `(a, b) -> (a, a + b mod 4)` to the prepared input.
pub fn expected_distribution(case: &AdderCase) -> Result<BTreeMap<Bitstring, f64>> {
    let input = run_ideal(&case.prep_circuit()?)?;
    let mut out = BTreeMap::new();
    for (i, p) in input.probabilities().into_iter().enumerate() {
        if p > SUPPORT_EPS {
            let (a, b) = (i >> 2, i & 3);
            let key = Bitstring::new(((a << 2) | ((a + b) & 3)) as u32, 4);
            *out.entry(key).or_insert(0.0) += p;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdderRun {
    pub case: AdderCase,
    /// Histogram in logical bit order `a1 a2 b1 b2`.
    pub histogram: ShotHistogram,
    /// Outcomes with nonzero ideal probability.
    pub expected: Vec<Bitstring>,
    pub permutation: QubitPermutation,
}

impl AdderRun {
    pub fn is_flagged(&self, bits: &Bitstring) -> bool {
        self.expected.contains(bits)
    }

    pub fn flagged_probability(&self) -> f64 {
        self.expected.iter().map(|b| self.histogram.probability(b)).sum()
    }

    /// Whether the most frequent outcome is a correct one.
    pub fn mode_is_flagged(&self) -> bool {
        self.histogram.mode().is_some_and(|m| self.is_flagged(&m))
    }
}

/// The adder routed onto `device` (widened to its size) and the placement of logical qubits.
pub fn routed_adder(case: &AdderCase, device: &DeviceModel) -> Result<(Circuit, QubitPermutation)> {
    route_circuit(&adder_circuit(case)?.widened(device.qubit_count())?, device)
}

pub fn run_adder(case: &AdderCase, shots: u64, noise: Option<&NoiseModel>, seed: RngSeed) -> Result<AdderRun> {
    let (circuit, permutation) = routed_adder(case, &DeviceModel::star5())?;
    let readout = &permutation.logical_readout()[..4];
    let histogram = run_shots(&circuit, noise, shots, seed)?.select(readout);
    let expected = expected_distribution(case)?.into_keys().collect();
    Ok(AdderRun { case: case.clone(), histogram, expected, permutation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::validate_against_device;

    fn b(s: &str) -> Bitstring {
        s.parse().unwrap()
    }

    fn ideal_probabilities(case: &AdderCase) -> Vec<f64> {
        run_ideal(&adder_circuit(case).unwrap()).unwrap().probabilities()
    }

    #[test]
    fn zero_plus_zero() {
        let p = ideal_probabilities(&AdderCase::basis(0, 0).unwrap());
        assert!((p[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn one_plus_two_is_three() {
        let p = ideal_probabilities(&AdderCase::basis(1, 2).unwrap());
        assert!((p[b("0111").value() as usize] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entangled_target_maps_as_stated() {
        let case = AdderCase::entangled_target();
        let input = run_ideal(&case.prep_circuit().unwrap()).unwrap().probabilities();
        assert!((input[0b0100] - 0.5).abs() < 1e-12 && (input[0b0111] - 0.5).abs() < 1e-12);
        let p = ideal_probabilities(&case);
        assert!((p[0b0101] - 0.5).abs() < 1e-12 && (p[0b0100] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn expected_distribution_is_a_permutation_of_the_input() {
        let d = expected_distribution(&AdderCase::superposed_addend()).unwrap();
        assert_eq!(d.keys().copied().collect::<Vec<_>>(), [b("0001"), b("1100")]);
    }

    #[test]
    fn routed_adder_is_legal() {
        let dev = DeviceModel::star5();
        for case in AdderCase::presets() {
            let (c, _) = routed_adder(&case, &dev).unwrap();
            assert!(validate_against_device(&c, &dev).is_valid(), "{}", case.name);
        }
    }

    #[test]
    fn default_noise_keeps_the_correct_sum_modal() {
        let noise = NoiseModel::default();
        let modal = (0..4u8)
            .flat_map(|a| (0..4u8).map(move |b| (a, b)))
            .filter(|&(a, b)| {
                let case = AdderCase::basis(a, b).unwrap();
                run_adder(&case, 2048, Some(&noise), RngSeed(u64::from(a * 4 + b))).unwrap().mode_is_flagged()
            })
            .count();
        assert!(modal >= 14, "{modal}/16");
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(AdderCase::basis(4, 0).is_err());
    }
}
