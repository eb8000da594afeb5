//! Shot sampling, Monte-Carlo Pauli noise and histogram bookkeeping.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::circuit::{Circuit, Gate, QubitId, SingleQubitGate};
use crate::error::{Error, Result};
use crate::math;
use crate::rng::{Channel, ShotRng};
use crate::statevector::{basis_change_gates, run_ideal, StateVector};

/// Register sizes above this do not fit a [`Bitstring`].
pub const MAX_BITSTRING_LEN: usize = 32;

/// A measured bitstring; qubit 1 is the leftmost character and the most significant bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitstring {
    len: u8,
    bits: u32,
}

impl Bitstring {
    pub fn new(bits: u32, len: usize) -> Self {
        assert!(len <= MAX_BITSTRING_LEN, "bitstring too long");
        let bits = if len == 32 { bits } else { bits & ((1u32 << len) - 1) };
        Bitstring { len: len as u8, bits }
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(0, len)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The basis-state index this bitstring labels.
    pub fn value(&self) -> u32 {
        self.bits
    }

    fn mask(&self, qubit: QubitId) -> u32 {
        1 << (self.len as usize - qubit.label())
    }

    /// Bit of `qubit` (1-based).
    pub fn bit(&self, qubit: QubitId) -> bool {
        assert!(qubit.label() <= self.len());
        self.bits & self.mask(qubit) != 0
    }

    pub fn with_bit(mut self, qubit: QubitId, value: bool) -> Self {
        assert!(qubit.label() <= self.len());
        let m = self.mask(qubit);
        if value {
            self.bits |= m;
        } else {
            self.bits &= !m;
        }
        self
    }

    pub fn flip(self, qubit: QubitId) -> Self {
        let value = !self.bit(qubit);
        self.with_bit(qubit, value)
    }

    /// A new bitstring made of the bits at `positions`, in that order.
    pub fn select(&self, positions: &[QubitId]) -> Bitstring {
        positions.iter().enumerate().fold(Bitstring::zeros(positions.len()), |acc, (i, &q)| acc.with_bit(QubitId::new(i + 1), self.bit(q)))
    }

    pub fn count_ones(&self) -> u32 {
        self.bits.count_ones()
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.len).rev() {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > MAX_BITSTRING_LEN {
            return Err(Error::LengthMismatch { expected: MAX_BITSTRING_LEN, found: s.len() });
        }
        let mut bits = 0u32;
        for c in s.chars() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::OutOfRange { name: "bit character", value: c as i64 }),
                };
        }
        Ok(Bitstring::new(bits, s.len()))
    }
}

/// 64-bit run seed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RngSeed(pub u64);

/// Bitstring counts of a sampled run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShotHistogram {
    width: usize,
    shots: u64,
    counts: BTreeMap<Bitstring, u64>,
}

impl ShotHistogram {
    pub fn new(width: usize) -> Self {
        ShotHistogram { width, shots: 0, counts: BTreeMap::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn record(&mut self, bits: Bitstring) {
        self.add(bits, 1);
    }

    pub fn add(&mut self, bits: Bitstring, count: u64) {
        assert_eq!(bits.len(), self.width, "bitstring width");
        if count == 0 {
            return;
        }
        *self.counts.entry(bits).or_insert(0) += count;
        self.shots += count;
    }

    pub fn count(&self, bits: &Bitstring) -> u64 {
        self.counts.get(bits).copied().unwrap_or(0)
    }

    /// Empirical probability; 0 for an empty histogram.
    pub fn probability(&self, bits: &Bitstring) -> f64 {
        if self.shots == 0 {
            0.0
        } else {
            self.count(bits) as f64 / self.shots as f64
        }
    }

    /// `(bitstring, count)` in ascending bitstring order.
    pub fn iter(&self) -> impl Iterator<Item = (Bitstring, u64)> + '_ {
        self.counts.iter().map(|(b, c)| (*b, *c))
    }

    /// Commutative count addition.
    pub fn merge(&mut self, other: &ShotHistogram) {
        for (b, c) in other.iter() {
            self.add(b, c);
        }
    }

    /// Keep only bitstrings satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Bitstring) -> bool) -> ShotHistogram {
        let mut out = ShotHistogram::new(self.width);
        for (b, c) in self.iter().filter(|(b, _)| keep(b)) {
            out.add(b, c);
        }
        out
    }

    /// Marginal over `positions`, reordered so position `i` becomes bit `i + 1`.
    pub fn select(&self, positions: &[QubitId]) -> ShotHistogram {
        let mut out = ShotHistogram::new(positions.len());
        for (b, c) in self.iter() {
            out.add(b.select(positions), c);
        }
        out
    }

    /// Apply `f` to every key, merging collisions.
    pub fn map_keys(&self, width: usize, mut f: impl FnMut(Bitstring) -> Bitstring) -> ShotHistogram {
        let mut out = ShotHistogram::new(width);
        for (b, c) in self.iter() {
            out.add(f(b), c);
        }
        out
    }

    /// Bitstring with the largest count; ties go to the smaller bitstring.
    pub fn mode(&self) -> Option<Bitstring> {
        self.iter()
            .fold(None, |best: Option<(Bitstring, u64)>, (b, c)| match best {
                Some((_, bc)) if bc >= c => best,
                _ => Some((b, c)),
            })
            .map(|(b, _)| b)
    }
}

/// Symmetric depolarizing gate noise plus independent readout flips.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    /// Probability of a uniformly random X, Y or Z after each 1-qubit gate.
    pub p1: f64,
    /// Probability of one of the 15 non-identity 2-qubit Paulis after each CNOT.
    pub p2: f64,
    /// Probability that each read-out bit is flipped.
    pub p_readout: f64,
}

impl NoiseModel {
    pub const IDEAL: NoiseModel = NoiseModel { p1: 0.0, p2: 0.0, p_readout: 0.0 };

    pub fn new(p1: f64, p2: f64, p_readout: f64) -> Result<Self> {
        for (name, value) in [("p1", p1), ("p2", p2), ("p_readout", p_readout)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidProbability { name, value });
            }
        }
        Ok(NoiseModel { p1, p2, p_readout })
    }

    pub fn is_ideal(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0 && self.p_readout == 0.0
    }
}

impl Default for NoiseModel {
    /// Order-of-magnitude rates for an early superconducting device.
    fn default() -> Self {
        NoiseModel { p1: 0.002, p2: 0.03, p_readout: 0.05 }
    }
}

/// `sqrt(p (1 - p) / shots)`
pub fn standard_error(p: f64, shots: u64) -> f64 {
    if shots == 0 {
        return 0.0;
    }
    let v = p * (1.0 - p);
    if v <= 0.0 {
        0.0
    } else {
        math::sqrt(v / shots as f64)
    }
}

fn cumulative(state: &StateVector) -> Vec<f64> {
    let mut acc = 0.0;
    state
        .amplitudes()
        .iter()
        .map(|a| {
            acc += a.norm_sqr();
            acc
        })
        .collect()
}

fn draw_index(cdf: &[f64], u: f64) -> usize {
    // scale by the total so rounding in the normalization cannot leave u past the end
    let target = u * cdf[cdf.len() - 1];
    cdf.partition_point(|&c| c <= target).min(cdf.len() - 1)
}

/// Draw `shots` computational-basis outcomes from `|a_i|^2`.
pub fn sample_counts(state: &StateVector, shots: u64, seed: RngSeed) -> Result<ShotHistogram> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let n = state.qubit_count();
    if n > MAX_BITSTRING_LEN {
        return Err(Error::TooManyQubits { qubit_count: n, limit: MAX_BITSTRING_LEN });
    }
    let cdf = cumulative(state);
    let mut hist = ShotHistogram::new(n);
    for shot in 0..shots {
        let mut rng = ShotRng::new(seed.0, shot, Channel::Outcome);
        hist.record(Bitstring::new(draw_index(&cdf, rng.uniform()) as u32, n));
    }
    Ok(hist)
}

const ONE_QUBIT_PAULIS: [SingleQubitGate; 3] = [SingleQubitGate::X, SingleQubitGate::Y, SingleQubitGate::Z];
const PAULI_OR_ID: [SingleQubitGate; 4] = [SingleQubitGate::I, SingleQubitGate::X, SingleQubitGate::Y, SingleQubitGate::Z];

/// Pauli error gates inserted after `gate`, drawn from `rng`.
fn draw_error(gate: &Gate, noise: &NoiseModel, rng: &mut ShotRng, out: &mut Vec<Gate>) {
    match *gate {
        Gate::Single { qubit, .. } => {
            if rng.bernoulli(noise.p1) {
                out.push(Gate::single(ONE_QUBIT_PAULIS[rng.below(3) as usize], qubit));
            }
        }
        Gate::Cnot { control, target } => {
            if rng.bernoulli(noise.p2) {
                let k = rng.below(15) + 1;
                for (kind, q) in [(PAULI_OR_ID[(k / 4) as usize], control), (PAULI_OR_ID[(k % 4) as usize], target)] {
                    if kind != SingleQubitGate::I {
                        out.push(Gate::single(kind, q));
                    }
                }
            }
        }
    }
}

/// One Monte-Carlo trajectory per shot: after every gate (including the
/// Hadamards realizing X-basis readout) a random Pauli is inserted with the
/// configured probability, then each read-out bit flips with `p_readout`.
///
/// Shots with no inserted error reuse the ideal final state; erroneous
/// shots resume from the ideal checkpoint just before their first error.
pub fn run_noisy_shots(circuit: &Circuit, noise: &NoiseModel, shots: u64, seed: RngSeed) -> Result<ShotHistogram> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let n = circuit.qubit_count();
    if n > MAX_BITSTRING_LEN {
        return Err(Error::TooManyQubits { qubit_count: n, limit: MAX_BITSTRING_LEN });
    }
    let steps: Vec<Gate> = circuit.gates().iter().copied().chain(basis_change_gates(circuit)).collect();

    // checkpoints[i] = ideal state after the first i steps
    let mut checkpoints = Vec::with_capacity(steps.len() + 1);
    let mut state = StateVector::zero(n)?;
    checkpoints.push(state.clone());
    for g in &steps {
        state.apply(g)?;
        checkpoints.push(state.clone());
    }
    let ideal_cdf = cumulative(&state);
    debug_assert_eq!(ideal_cdf, cumulative(&run_ideal(circuit)?));

    let mut hist = ShotHistogram::new(n);
    let mut errors: Vec<(usize, Gate)> = Vec::new();
    let mut scratch = Vec::new();
    for shot in 0..shots {
        errors.clear();
        if noise.p1 > 0.0 || noise.p2 > 0.0 {
            let mut rng = ShotRng::new(seed.0, shot, Channel::GateNoise);
            for (i, g) in steps.iter().enumerate() {
                scratch.clear();
                draw_error(g, noise, &mut rng, &mut scratch);
                errors.extend(scratch.iter().map(|e| (i, *e)));
            }
        }

        let mut outcome_rng = ShotRng::new(seed.0, shot, Channel::Outcome);
        let index = match errors.first() {
            None => draw_index(&ideal_cdf, outcome_rng.uniform()),
            Some(&(first, _)) => {
                let mut traj = checkpoints[first + 1].clone();
                let mut pending = errors.iter().peekable();
                for (i, g) in steps.iter().enumerate().skip(first) {
                    if i > first {
                        traj.apply(g)?;
                    }
                    while let Some(&&(at, e)) = pending.peek() {
                        if at != i {
                            break;
                        }
                        traj.apply(&e)?;
                        pending.next();
                    }
                }
                draw_index(&cumulative(&traj), outcome_rng.uniform())
            }
        };

        let mut bits = Bitstring::new(index as u32, n);
        if noise.p_readout > 0.0 {
            let mut rng = ShotRng::new(seed.0, shot, Channel::Readout);
            for q in 1..=n {
                if rng.bernoulli(noise.p_readout) {
                    bits = bits.flip(QubitId::new(q));
                }
            }
        }
        hist.record(bits);
    }
    Ok(hist)
}

/// `run_noisy_shots` when `noise` is given, ideal sampling otherwise.
pub fn run_shots(circuit: &Circuit, noise: Option<&NoiseModel>, shots: u64, seed: RngSeed) -> Result<ShotHistogram> {
    match noise {
        Some(noise) if !noise.is_ideal() => run_noisy_shots(circuit, noise, shots, seed),
        _ => sample_counts(&run_ideal(circuit)?, shots, seed),
    }
}

/// Render `hist` as `bitstring:count` pairs (debug aid).
pub fn describe(hist: &ShotHistogram) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (b, c) in hist.iter() {
        let _ = write!(s, "{b}:{c} ");
    }
    s
}
