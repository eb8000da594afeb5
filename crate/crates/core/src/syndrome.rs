//! Parity checks on measured bitstrings and syndrome post-selection.

use alloc::vec::Vec;

use crate::circuit::QubitId;
use crate::error::{Error, Result};
use crate::sampling::{Bitstring, ShotHistogram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_odd(odd: bool) -> Parity {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_even(self) -> bool {
        self == Parity::Even
    }

    /// `+1` for even, `-1` for odd: the eigenvalue of the measured Pauli product.
    pub fn sign(self) -> i8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

/// A Z-type check: the parity of the bits on `support` should be `expected`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndromeCheck {
    support: Vec<QubitId>,
    expected: Parity,
}

impl SyndromeCheck {
    pub fn new(support: impl IntoIterator<Item = usize>, expected: Parity) -> Result<Self> {
        let support: Vec<QubitId> = support
            .into_iter()
            .map(|q| QubitId::try_new(q).ok_or(Error::QubitOutOfRange { qubit: q, qubit_count: 0 }))
            .collect::<Result<_>>()?;
        if support.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(SyndromeCheck { support, expected })
    }

    pub fn even(support: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(support, Parity::Even)
    }

    pub fn support(&self) -> &[QubitId] {
        &self.support
    }

    pub fn expected(&self) -> Parity {
        self.expected
    }

    pub fn passes(&self, bits: &Bitstring) -> bool {
        bitstring_parity(bits, &self.support) == self.expected
    }
}

/// XOR of the bits at `support`.
pub fn bitstring_parity(bits: &Bitstring, support: &[QubitId]) -> Parity {
    Parity::from_odd(support.iter().filter(|&&q| bits.bit(q)).count() % 2 == 1)
}

/// Keep the shots passing every check; returns the kept histogram and the kept fraction.
pub fn postselect_histogram(hist: &ShotHistogram, checks: &[SyndromeCheck]) -> (ShotHistogram, f64) {
    let kept = hist.filter(|b| checks.iter().all(|c| c.passes(b)));
    let fraction = if hist.shots() == 0 { 0.0 } else { kept.shots() as f64 / hist.shots() as f64 };
    (kept, fraction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn b(s: &str) -> Bitstring {
        s.parse().unwrap()
    }

    fn q(labels: &[usize]) -> Vec<QubitId> {
        labels.iter().map(|&l| QubitId::new(l)).collect()
    }

    #[test]
    fn parity_examples() {
        assert_eq!(bitstring_parity(&b("00000"), &q(&[1, 2])), Parity::Even);
        assert_eq!(bitstring_parity(&b("10100"), &q(&[1, 3, 4])), Parity::Even);
        assert_eq!(bitstring_parity(&b("10000"), &q(&[1, 2])), Parity::Odd);
    }

    #[test]
    fn postselect_examples() {
        let mut h = ShotHistogram::new(5);
        h.add(b("00000"), 100);
        let (kept, f) = postselect_histogram(&h, &[SyndromeCheck::even([1, 3, 4]).unwrap()]);
        assert_eq!((kept.shots(), f), (100, 1.0));

        let mut h = ShotHistogram::new(5);
        h.add(b("10000"), 50);
        h.add(b("00000"), 50);
        let (kept, f) = postselect_histogram(&h, &[SyndromeCheck::even([1]).unwrap()]);
        assert_eq!(kept.iter().collect::<Vec<_>>(), vec![(b("00000"), 50)]);
        assert_eq!(f, 0.5);
    }

    #[test]
    fn empty_histogram_and_support() {
        let (kept, f) = postselect_histogram(&ShotHistogram::new(2), &[]);
        assert_eq!((kept.shots(), f), (0, 0.0));
        assert_eq!(SyndromeCheck::even([]), Err(Error::EmptySupport));
        assert!(SyndromeCheck::even([0]).is_err());
    }
}
