//! Deterministic teleported T gate.
//!
//! Qubit 1 holds `G|+>` with `G` either `T` or `Tdg`, which stands in for the
//! output of a teleported T gate with a random `T`/`Tdg` outcome. The other
//! four qubits form an ICM block (initialisations, CNOTs, measurements) that
//! moves the state to qubit 3 and applies an `S` correction or not,
//! depending only on the measurement bases of qubits 1, 2, 4, 5:
//!
//! ```text
//! q1: G|+> ─────────X───●─────── measure
//! q2: |+>   ──●─────│───│─────── measure
//! q3: |0>   ──X─────│───X───●─── output
//! q4: |Y>   ──●─────│───────│─── measure
//! q5: |0>   ──X─────●───────X─── measure
//! ```
//!
//! With bases `X Z Z X` on `(q1, q2, q4, q5)` the block teleports the data
//! unchanged; with `Z X X Z` it teleports `S` times the data. Either way qubit
//! 3 ends in `P T|+>` for a Pauli `P` fixed by the four results. The output is
//! then rotated by `H Tdg` (or `H T`) and measured, which gives `0` after the
//! frame correction whenever the inversion gate commutes with `P`.
//!
//! Byproducts are obtained by simulating the block ([`simulate_corrections`]),
//! not copied from a table.

use alloc::vec::Vec;

use crate::circuit::{Basis, Circuit, DeviceModel, Gate, Matrix2, QubitId, SingleQubitGate};
use crate::error::{Error, Result};
use crate::frame::{
    apply_frame_to_bits, conjugate_through, correction_for, frame_update, MeasurementPattern, PatternKind, PauliFrame, PauliLabel,
};
use crate::routing::{route_circuit, QubitPermutation};
use crate::sampling::{run_shots, Bitstring, NoiseModel, RngSeed, ShotHistogram};
use crate::statevector::{run_ideal, StateVector};
use crate::Complex64;

pub const DATA: usize = 1;
pub const OUTPUT: usize = 3;
/// Measured qubits in result order `r1 r2 r3 r4`.
pub const MEASURED: [usize; 4] = [1, 2, 4, 5];
const QUBITS: usize = 5;
/// Width of the reported bitstrings: four results, then the output bit.
pub const RESULT_WIDTH: usize = 5;

const CNOTS: [(usize, usize); 5] = [(2, 3), (4, 5), (5, 1), (1, 3), (3, 5)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GChoice {
    T,
    Tdg,
}

impl GChoice {
    pub fn kind(self) -> SingleQubitGate {
        match self {
            GChoice::T => SingleQubitGate::T,
            GChoice::Tdg => SingleQubitGate::Tdg,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GChoice::T => "T",
            GChoice::Tdg => "Tdg",
        }
    }

    /// Measurement bases that turn `G|+>` into `T|+>`: no correction after `T`,
    /// an `S` after `Tdg`.
    pub fn pattern(self) -> PatternKind {
        match self {
            GChoice::T => PatternKind::Xzzx,
            GChoice::Tdg => PatternKind::Zxxz,
        }
    }
}

/// Gate used to undo the T rotation before the final `H` and readout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Inversion {
    /// Always `Tdg`, as on hardware without feed-forward.
    StaticTdg,
    /// Always `T`.
    StaticT,
    /// `Tdg`, swapped for `T` whenever the frame holds an `X` on the output.
    FrameAware,
}

impl Inversion {
    pub const ALL: [Inversion; 3] = [Inversion::StaticTdg, Inversion::StaticT, Inversion::FrameAware];

    pub fn name(self) -> &'static str {
        match self {
            Inversion::StaticTdg => "static_tdg",
            Inversion::StaticT => "static_t",
            Inversion::FrameAware => "frame_aware",
        }
    }

    pub fn from_name(name: &str) -> Option<Inversion> {
        Inversion::ALL.into_iter().find(|i| i.name() == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DetTConfig {
    pub g: GChoice,
    pub inversion: Inversion,
}

/// `|A> = |0> + e^{i pi/4}|1>` on `qubit`.
pub fn magic_a(qubit: usize) -> [Gate; 2] {
    [Gate::h(qubit), Gate::t(qubit)]
}

/// `|Y> = |0> + i|1>` on `qubit`.
pub fn magic_y(qubit: usize) -> [Gate; 2] {
    [Gate::h(qubit), Gate::s(qubit)]
}

/// Ancilla preparation and the CNOT array, without the data preparation.
fn icm_block() -> Vec<Gate> {
    let mut g = alloc::vec![Gate::h(2)];
    g.extend(magic_y(4));
    g.extend(CNOTS.iter().map(|&(c, t)| Gate::cnot(c, t)));
    g
}

/// `H` on every qubit measured in `X`; afterwards all four are read in `Z`.
fn basis_rotations(kind: PatternKind) -> impl Iterator<Item = Gate> {
    MEASURED.into_iter().zip(kind.bases()).filter(|(_, b)| *b == Basis::X).map(|(q, _)| Gate::h(q))
}

fn mat_mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

/// `a = c b` for some nonzero `c`.
fn proportional(a: &Matrix2, b: &Matrix2) -> bool {
    let (mut num, mut den) = (Complex64::new(0.0, 0.0), 0.0);
    for i in 0..2 {
        for j in 0..2 {
            num += b[i][j].conj() * a[i][j];
            den += b[i][j].norm_sqr();
        }
    }
    let c = num / den;
    if c.norm() < 1e-9 {
        return false;
    }
    let err: f64 = (0..4).map(|k| (a[k / 2][k % 2] - c * b[k / 2][k % 2]).norm_sqr()).sum();
    err < 1e-18
}

fn label_matrix(label: PauliLabel) -> Matrix2 {
    let mut m = SingleQubitGate::I.matrix();
    if label.z_flip() {
        m = mat_mul(&SingleQubitGate::Z.matrix(), &m);
    }
    if label.x_flip() {
        m = mat_mul(&SingleQubitGate::X.matrix(), &m);
    }
    m
}

/// Index of the basis state with results `r` (r1 most significant) and output bit `o`.
fn amplitude_index(r: usize, o: usize) -> usize {
    let mut idx = o << (QUBITS - OUTPUT);
    for (j, q) in MEASURED.into_iter().enumerate() {
        idx |= (r >> (3 - j) & 1) << (QUBITS - q);
    }
    idx
}

/// What the block does to the data for one basis pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockAction {
    /// The Clifford applied on top of the Pauli byproduct: `I` or `S`.
    pub gate: SingleQubitGate,
    /// Byproduct for each result row, indexed with `r1` as the most significant bit.
    pub corrections: [PauliLabel; 16],
}

/// Simulate the block on the data basis states `|0>` and `|1>` and read off,
/// for every result row, the map `K_r` from data to output. Each must equal
/// `P_r V` up to a scalar for one Clifford `V` in `{I, S}` shared by all rows.
pub fn simulate_corrections(kind: PatternKind) -> Result<BlockAction> {
    let mut columns = Vec::new();
    for j in 0..2 {
        let mut c = Circuit::new(QUBITS);
        if j == 1 {
            c.push(Gate::x(DATA))?;
        }
        c.extend(icm_block())?;
        c.extend(basis_rotations(kind))?;
        columns.push(run_ideal(&c)?);
    }
    let kraus = |r: usize| -> Matrix2 {
        let mut k = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (j, col) in columns.iter().enumerate() {
            for (o, row) in k.iter_mut().enumerate() {
                row[j] = col.amplitude(amplitude_index(r, o));
            }
        }
        k
    };
    let labels = [PauliLabel::I, PauliLabel::X, PauliLabel::Z, PauliLabel::ZX];
    for gate in [SingleQubitGate::I, SingleQubitGate::S] {
        let mut corrections = [PauliLabel::I; 16];
        let all = (0..16).all(|r| {
            let k = kraus(r);
            labels.iter().find(|&&p| proportional(&k, &mat_mul(&label_matrix(p), &gate.matrix()))).map(|&p| corrections[r] = p).is_some()
        });
        if all {
            return Ok(BlockAction { gate, corrections });
        }
    }
    Err(Error::UnknownBasisPattern)
}

/// Number of the 32 (row, basis) entries where `correction_for` agrees with
/// the simulated byproducts.
pub fn table_agreement() -> Result<usize> {
    let mut n = 0;
    for kind in [PatternKind::Xzzx, PatternKind::Zxxz] {
        let sim = simulate_corrections(kind)?;
        for (r, &p) in sim.corrections.iter().enumerate() {
            let results = core::array::from_fn(|j| r >> (3 - j) & 1 == 1);
            if correction_for(&MeasurementPattern::new(kind, results))? == p {
                n += 1;
            }
        }
    }
    Ok(n)
}

/// Result positions `j` whose bit enters the `X` part of the byproduct, plus
/// the constant `X` part of row `0000`.
fn x_dependence(action: &BlockAction) -> (Vec<usize>, bool) {
    let base = action.corrections[0].x_flip();
    let deps = (0..4).filter(|&j| action.corrections[1 << (3 - j)].x_flip() != base).collect();
    (deps, base)
}

fn controlled_phase(c: usize, t: usize, inverse: bool) -> [Gate; 5] {
    if inverse {
        [Gate::tdg(c), Gate::tdg(t), Gate::cnot(c, t), Gate::t(t), Gate::cnot(c, t)]
    } else {
        [Gate::t(c), Gate::t(t), Gate::cnot(c, t), Gate::tdg(t), Gate::cnot(c, t)]
    }
}

/// The inversion stage on the output qubit.
///
/// The frame-aware version cannot branch mid-circuit, so it defers the choice
/// coherently: `Tdg` followed by an `S` controlled on the parity of the
/// results that carry an `X` byproduct (`T = S Tdg`). The parity is gathered
/// on one measured qubit with CNOTs and uncomputed again, so the recorded
/// results are unchanged.
fn inversion_gates(config: &DetTConfig, action: &BlockAction) -> Vec<Gate> {
    match config.inversion {
        Inversion::StaticTdg => alloc::vec![Gate::tdg(OUTPUT)],
        Inversion::StaticT => alloc::vec![Gate::t(OUTPUT)],
        Inversion::FrameAware => {
            let (deps, flipped) = x_dependence(action);
            // with a constant X part the default flips to T and the correction to Sdg
            let mut g = alloc::vec![if flipped { Gate::t(OUTPUT) } else { Gate::tdg(OUTPUT) }];
            if let Some((&last, rest)) = deps.split_last() {
                let target = MEASURED[last];
                let gather: Vec<Gate> = rest.iter().map(|&j| Gate::cnot(MEASURED[j], target)).collect();
                g.extend(gather.iter().copied());
                g.extend(controlled_phase(target, OUTPUT, flipped));
                g.extend(gather.iter().rev().copied());
            }
            g
        }
    }
}

/// Full five-qubit circuit; with `data_prep = false` qubit 1 is left for the caller to prepare.
fn build(config: &DetTConfig, action: &BlockAction, data_prep: bool) -> Result<Circuit> {
    let mut c = Circuit::new(QUBITS);
    if data_prep {
        c.extend([Gate::h(DATA), Gate::single(config.g.kind(), QubitId::new(DATA))])?;
    }
    c.extend(icm_block())?;
    c.extend(basis_rotations(config.g.pattern()))?;
    c.extend(inversion_gates(config, action))?;
    c.push(Gate::h(OUTPUT))?;
    c.measure_all(Basis::Z);
    Ok(c)
}

pub fn dett_circuit(config: &DetTConfig) -> Result<Circuit> {
    build(config, &simulate_corrections(config.g.pattern())?, true)
}

/// Output frame for every result row (output at position 5 of the reported
/// bitstring), pushed through the inversion gate and the final `H`.
fn readout_frames(config: &DetTConfig, action: &BlockAction) -> Result<Vec<(Bitstring, PauliFrame)>> {
    let out = QubitId::new(RESULT_WIDTH);
    let inversion = match config.inversion {
        Inversion::StaticT => Gate::t(RESULT_WIDTH),
        _ => Gate::tdg(RESULT_WIDTH),
    };
    (0..16)
        .map(|r| {
            let frame = frame_update(&PauliFrame::identity(RESULT_WIDTH), out, action.corrections[r])?;
            let (frame, _) = conjugate_through(&frame, &inversion)?;
            let (frame, _) = conjugate_through(&frame, &Gate::h(RESULT_WIDTH))?;
            Ok((Bitstring::new(r as u32, 4), frame))
        })
        .collect()
}

/// Physical readout in result order `r1 r2 r3 r4 out`.
fn readout_order(perm: &QubitPermutation) -> Vec<QubitId> {
    let logical = perm.logical_readout();
    MEASURED.into_iter().chain([OUTPUT]).map(|q| logical[q - 1]).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetTRun {
    pub config: DetTConfig,
    pub pattern: PatternKind,
    /// Outcomes as `r1 r2 r3 r4 out`.
    pub histogram: ShotHistogram,
    /// Output-qubit frame for each four-bit result row.
    pub frames: Vec<(Bitstring, PauliFrame)>,
    /// Fraction of shots whose frame-corrected output bit is `0`.
    pub success: f64,
    pub permutation: QubitPermutation,
}

fn corrected_is_zero(frames: &[(Bitstring, PauliFrame)], bits: &Bitstring) -> bool {
    let row = bits.value() as usize >> 1;
    apply_frame_to_bits(&frames[row].1, bits).is_ok_and(|b| !b.bit(QubitId::new(RESULT_WIDTH)))
}

impl DetTRun {
    pub fn is_success(&self, bits: &Bitstring) -> bool {
        bits.len() == RESULT_WIDTH && corrected_is_zero(&self.frames, bits)
    }

    /// The sixteen outcomes that decode to `0`.
    pub fn success_outcomes(&self) -> Vec<Bitstring> {
        (0..1u32 << RESULT_WIDTH).map(|v| Bitstring::new(v, RESULT_WIDTH)).filter(|b| self.is_success(b)).collect()
    }
}

pub fn deterministic_t_run(config: &DetTConfig, shots: u64, noise: Option<&NoiseModel>, seed: RngSeed) -> Result<DetTRun> {
    let pattern = config.g.pattern();
    let action = simulate_corrections(pattern)?;
    let circuit = build(config, &action, true)?;
    let (routed, permutation) = route_circuit(&circuit, &DeviceModel::star5())?;
    let histogram = run_shots(&routed, noise, shots, seed)?.select(&readout_order(&permutation));
    let frames = readout_frames(config, &action)?;
    let good: u64 = histogram.iter().filter(|(b, _)| corrected_is_zero(&frames, b)).map(|(_, c)| c).sum();
    let success = good as f64 / histogram.shots() as f64;
    Ok(DetTRun { config: *config, pattern, histogram, frames, success, permutation })
}

/// Exact probabilities of the 32 outcomes `r1 r2 r3 r4 out` and the decoded success flag of each.
pub fn exact_outcomes(config: &DetTConfig) -> Result<Vec<(Bitstring, f64, bool)>> {
    let action = simulate_corrections(config.g.pattern())?;
    let state = run_ideal(&build(config, &action, true)?)?;
    outcomes_from_state(config, &action, &state)
}

fn outcomes_from_state(config: &DetTConfig, action: &BlockAction, state: &StateVector) -> Result<Vec<(Bitstring, f64, bool)>> {
    let frames = readout_frames(config, action)?;
    Ok((0..16)
        .flat_map(|r| (0..2).map(move |o| (r, o)))
        .map(|(r, o)| {
            let bits = Bitstring::new((r << 1 | o) as u32, RESULT_WIDTH);
            (bits, state.amplitude(amplitude_index(r, o)).norm_sqr(), corrected_is_zero(&frames, &bits))
        })
        .collect())
}

pub fn exact_success(config: &DetTConfig) -> Result<f64> {
    Ok(exact_outcomes(config)?.iter().filter(|o| o.2).map(|o| o.1).sum())
}

/// Exact success when qubit 1 starts in `data` (normalized two-amplitude state)
/// instead of `G|+>`.
pub fn exact_success_with_data(config: &DetTConfig, data: [Complex64; 2]) -> Result<f64> {
    let action = simulate_corrections(config.g.pattern())?;
    let mut amps = alloc::vec![Complex64::new(0.0, 0.0); 1 << QUBITS];
    amps[0] = data[0];
    amps[1 << (QUBITS - DATA)] = data[1];
    let mut state = StateVector::from_amplitudes(amps)?;
    state.apply_circuit(&build(config, &action, false)?.without_measurements())?;
    Ok(outcomes_from_state(config, &action, &state)?.iter().filter(|o| o.2).map(|o| o.1).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::validate_against_device;
    use crate::math;

    const TOL: f64 = 1e-9;

    fn cfg(g: GChoice, inversion: Inversion) -> DetTConfig {
        DetTConfig { g, inversion }
    }

    #[test]
    fn bases_select_identity_or_s() {
        assert_eq!(simulate_corrections(PatternKind::Xzzx).unwrap().gate, SingleQubitGate::I);
        assert_eq!(simulate_corrections(PatternKind::Zxxz).unwrap().gate, SingleQubitGate::S);
    }

    #[test]
    fn every_result_bit_matters() {
        for kind in [PatternKind::Xzzx, PatternKind::Zxxz] {
            let a = simulate_corrections(kind).unwrap();
            for j in 0..4 {
                assert_ne!(a.corrections[0], a.corrections[1 << j], "{kind:?} bit {j}");
            }
        }
    }

    #[test]
    fn x_measured_bits_give_z_byproducts_in_xzzx() {
        let a = simulate_corrections(PatternKind::Xzzx).unwrap();
        let single: Vec<_> = (0..4).map(|j| a.corrections[1 << (3 - j)]).collect();
        assert_eq!(single, [PauliLabel::Z, PauliLabel::X, PauliLabel::X, PauliLabel::Z]);
    }

    #[test]
    fn success_probabilities() {
        for g in [GChoice::T, GChoice::Tdg] {
            assert!((exact_success(&cfg(g, Inversion::StaticTdg)).unwrap() - 0.75).abs() < TOL);
            assert!((exact_success(&cfg(g, Inversion::FrameAware)).unwrap() - 1.0).abs() < TOL);
        }
    }

    #[test]
    fn failures_are_spread_evenly() {
        let out = exact_outcomes(&cfg(GChoice::T, Inversion::StaticTdg)).unwrap();
        let wrong: Vec<f64> = out.iter().filter(|o| !o.2 && o.1 > TOL).map(|o| o.1).collect();
        assert_eq!(wrong.len(), 8);
        assert!(wrong.iter().all(|p| (p - 0.25 / 8.0).abs() < TOL));
    }

    #[test]
    fn sampled_ideal_run_matches_exact() {
        let run = deterministic_t_run(&cfg(GChoice::T, Inversion::StaticTdg), 4096, None, RngSeed(5)).unwrap();
        assert!((run.success - 0.75).abs() < 4.0 * math::sqrt(0.75 * 0.25 / 4096.0));
        let fa = deterministic_t_run(&cfg(GChoice::Tdg, Inversion::FrameAware), 512, None, RngSeed(5)).unwrap();
        assert_eq!(fa.success, 1.0);
    }

    #[test]
    fn routed_circuit_is_legal() {
        for inv in Inversion::ALL {
            let c = dett_circuit(&cfg(GChoice::Tdg, inv)).unwrap();
            let (r, _) = route_circuit(&c, &DeviceModel::star5()).unwrap();
            assert!(validate_against_device(&r, &DeviceModel::star5()).is_valid());
        }
    }

    #[test]
    fn eighth_turn_magic_phase_is_excluded() {
        let s = math::FRAC_1_SQRT_2;
        for g in [GChoice::T, GChoice::Tdg] {
            let sign = if g == GChoice::T { 1.0 } else { -1.0 };
            let quarter = [Complex64::new(s, 0.0), Complex64::from_polar(s, sign * core::f64::consts::FRAC_PI_4)];
            let eighth = [Complex64::new(s, 0.0), Complex64::from_polar(s, sign * core::f64::consts::FRAC_PI_8)];
            let c = cfg(g, Inversion::FrameAware);
            assert!((exact_success_with_data(&c, quarter).unwrap() - 1.0).abs() < TOL);
            assert!(exact_success_with_data(&c, eighth).unwrap() < 1.0 - 1e-3);
        }
    }

    #[test]
    fn static_t_result() {
        // Inverting with T is right exactly when the frame holds an X, which is half the rows.
        let p = exact_success(&cfg(GChoice::T, Inversion::StaticT)).unwrap();
        assert!((p - 0.75).abs() < TOL, "{p}");
    }
}
