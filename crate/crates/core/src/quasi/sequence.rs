//! Sequences of operation choices, their signs and counting laws.

use super::ops::OpKind;
use crate::error::{Error, Result};
use std::fmt;

/// Largest CNOT count whose sequence census fits in `u64`.
pub const MAX_CENSUS_CNOTS: usize = 38;

/// One operation kind per CNOT, in circuit order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SequenceChoice(pub Vec<OpKind>);

impl SequenceChoice {
    /// Decodes `index` in base 3, first CNOT on the most significant digit,
    /// digits ordered L1, L2, L̄3.
    pub fn from_index(mut index: u64, n_cnots: usize) -> Self {
        let mut kinds = vec![OpKind::L1; n_cnots];
        for slot in kinds.iter_mut().rev() {
            *slot = OpKind::from_index((index % 3) as usize);
            index /= 3;
        }
        SequenceChoice(kinds)
    }

    pub fn to_index(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, k| acc * 3 + k.index() as u64)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sign(&self) -> i32 {
        sequence_sign(self)
    }

    /// `L1-L2-L3bar`; the empty sequence renders as `-`.
    pub fn label(&self) -> String {
        if self.0.is_empty() {
            return "-".to_string();
        }
        self.0.iter().map(ToString::to_string).collect::<Vec<_>>().join("-")
    }
}

impl fmt::Display for SequenceChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// −1 iff the sequence contains an odd number of L̄3.
pub fn sequence_sign(choice: &SequenceChoice) -> i32 {
    choice.0.iter().map(|k| k.weight()).product()
}

/// `3^n` or `None` on overflow.
pub fn sequence_count(n_cnots: usize) -> Option<u64> {
    3u64.checked_pow(u32::try_from(n_cnots).ok()?)
}

/// Numbers of positive and negative sequences for `n_cnots` CNOTs.
///
/// Counted by propagating (even, odd) L̄3-parity tallies one CNOT at a time;
/// the result is checked against `((3^N+1)/2, (3^N−1)/2)`.
pub fn sequence_census(n_cnots: usize) -> Result<(u64, u64)> {
    if n_cnots > MAX_CENSUS_CNOTS {
        return Err(Error::Overflow(n_cnots));
    }
    let (mut even, mut odd) = (1u64, 0u64);
    for _ in 0..n_cnots {
        // L1, L2 keep the parity; L̄3 flips it.
        (even, odd) = (2 * even + odd, 2 * odd + even);
    }
    let total = sequence_count(n_cnots).expect("guarded above");
    assert_eq!((even, odd), ((total + 1) / 2, (total - 1) / 2), "census disagrees with closed form");
    Ok((even, odd))
}

/// `Σ_i |p(i)| / Σ_i p(i)`: trials needed per quantum trial.
pub fn overhead_ratio(n_cnots: usize) -> f64 {
    match sequence_census(n_cnots) {
        Ok((pos, neg)) => (pos + neg) as f64 / (pos - neg) as f64,
        Err(_) => 3f64.powi(n_cnots as i32),
    }
}

/// `3^N` as a float; the factor relating signed classical frequencies to
/// quantum probabilities.
pub fn amplification(n_cnots: usize) -> f64 {
    3f64.powi(n_cnots as i32)
}
