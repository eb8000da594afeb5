//! The four experiment protocols: logical Rabi oscillations, Fourier
//! addition, graph-state orbits and the teleported T gate.

pub mod adder;
pub mod orbit;
pub mod rabi;
pub mod teleport_t;

use crate::sampling::RngSeed;

/// Shots per run unless configured otherwise (the cloud interface maximum).
pub const DEFAULT_SHOTS: u64 = 8192;

/// Seed for the `index`-th independent run inside one experiment.
///
/// SplitMix64 finalizer over `seed + index`, so neighbouring points do not
/// share streams with neighbouring seeds.
pub fn point_seed(seed: RngSeed, index: u64) -> RngSeed {
    let mut z = seed.0.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    RngSeed(z ^ (z >> 31))
}
