//! Exhaustive signed enumeration: `p(m) = Σ_i p(m|i) p(i)` over all `3^N`
//! operation sequences, with each sequence's measurement and mixing
//! branches expanded exactly.

use super::ops::{decompose_cnot, LocalOperation};
use super::product::ProductState;
use super::sequence::{amplification, sequence_count, SequenceChoice};
use super::trajectory::expand_branches;
use crate::circuit::{Circuit, Gate, Observable};
use crate::error::{Error, Result};
use crate::real::Real;
use rayon::prelude::*;

/// Default cap on `3^N · 2^N` weighted branches.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub budget: u128,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { budget: DEFAULT_BUDGET }
    }
}

/// `3^N · 2^N`, saturating.
pub fn required_branches(n_cnots: usize) -> u128 {
    u32::try_from(n_cnots).ok().and_then(|n| 6u128.checked_pow(n)).unwrap_or(u128::MAX)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SequenceRow<T: Real> {
    pub choice: SequenceChoice,
    pub sign: i32,
    /// `p(m|i)`, one per observable.
    pub conditionals: Vec<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Enumeration<T: Real> {
    pub n_qubits: usize,
    pub n_cnots: usize,
    pub observables: Vec<Observable>,
    pub rows: Vec<SequenceRow<T>>,
    /// Recombined `p(m)`, one per observable.
    pub totals: Vec<T>,
    pub amplification: f64,
}

impl<T: Real> Enumeration<T> {
    /// Σ_i p(i); always 1.
    pub fn sign_sum(&self) -> i64 {
        self.rows.iter().map(|r| i64::from(r.sign)).sum()
    }

    pub fn row(&self, label: &str) -> Option<&SequenceRow<T>> {
        self.rows.iter().find(|r| r.choice.label() == label)
    }
}

pub(crate) fn check_inputs<T: Real>(circuit: &Circuit<T>, input: &ProductState<T>, observables: &[Observable]) -> Result<()> {
    let n = circuit.n_qubits();
    if input.n_qubits() != n {
        return Err(Error::DimensionMismatch { expected: n, found: input.n_qubits() });
    }
    for obs in observables {
        if obs.pauli.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: obs.pauli.len() });
        }
    }
    Ok(())
}

/// Enumerates every sequence, parallel over sequence index. The output is
/// independent of the worker count.
pub fn enumerate<T: Real>(
    circuit: &Circuit<T>,
    input: &ProductState<T>,
    observables: &[Observable],
    options: EnumerateOptions,
) -> Result<Enumeration<T>> {
    check_inputs(circuit, input, observables)?;
    let n_cnots = circuit.cnot_count();
    let required = required_branches(n_cnots);
    if required > options.budget {
        return Err(Error::BudgetExceeded { required, budget: options.budget });
    }
    let count = sequence_count(n_cnots).expect("within budget implies no overflow");
    let ops = decompose_cnot::<T>();

    let rows: Vec<SequenceRow<T>> = (0..count)
        .into_par_iter()
        .map(|index| {
            let choice = SequenceChoice::from_index(index, n_cnots);
            let conditionals = conditionals(circuit, input, &choice, &ops, observables);
            SequenceRow { sign: choice.sign(), choice, conditionals }
        })
        .collect();

    let mut totals = vec![T::zero(); observables.len()];
    for row in &rows {
        let s = T::lit(f64::from(row.sign));
        for (t, c) in totals.iter_mut().zip(&row.conditionals) {
            *t += s * *c;
        }
    }

    Ok(Enumeration {
        n_qubits: circuit.n_qubits(),
        n_cnots,
        observables: observables.to_vec(),
        rows,
        totals,
        amplification: amplification(n_cnots),
    })
}

/// `p(m|i)` for one sequence: the branch-weighted average of the parity
/// probabilities of every leaf product state.
pub fn conditionals<T: Real>(
    circuit: &Circuit<T>,
    input: &ProductState<T>,
    choice: &SequenceChoice,
    ops: &[LocalOperation<T>; 3],
    observables: &[Observable],
) -> Vec<T> {
    let gates = circuit.gates();
    let mut acc = vec![T::zero(); observables.len()];
    // (next gate, next cnot slot, state, accumulated branch weight)
    let mut stack = vec![(0usize, 0usize, input.clone(), T::one())];

    while let Some((mut g, cnot_slot, mut state, weight)) = stack.pop() {
        loop {
            match gates.get(g) {
                None => {
                    for (a, obs) in acc.iter_mut().zip(observables) {
                        *a += weight * state.parity_probability(obs);
                    }
                    break;
                }
                Some(Gate::LocalUnitary { qubit, matrix, .. }) => {
                    state.apply_1q(*qubit, matrix);
                    g += 1;
                }
                Some(Gate::Cnot { control, target }) => {
                    let op = &ops[choice.0[cnot_slot].index()];
                    for (child, w, _) in expand_branches(&state, op, *control, *target).into_iter().rev() {
                        stack.push((g + 1, cnot_slot + 1, child, weight * w));
                    }
                    break;
                }
            }
        }
    }
    acc
}
