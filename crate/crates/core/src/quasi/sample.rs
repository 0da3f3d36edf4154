//! Signed Monte Carlo estimation.
//!
//! Every shot draws each CNOT's operation uniformly from {L1, L2, L̄3},
//! follows the trajectory with Born-rule measurement branches, samples one
//! outcome per observable and records the sequence sign. The quantum
//! probability is recovered as `3^N (p_pos − p_neg)`.
//!
//! Shot `t` uses ChaCha8 stream `t` under the run seed, and shot tallies are
//! integer counts merged over a fixed binary split of the shot range, so a
//! run is bitwise reproducible under any rayon pool size.

use super::enumerate::check_inputs;
use super::ops::{decompose_cnot, LocalOperation, OpKind};
use super::product::ProductState;
use super::sequence::{amplification, SequenceChoice};
use super::trajectory::apply_local_op_in_place;
use crate::circuit::{Circuit, Gate, Observable, Pauli};
use crate::error::{Error, Result};
use crate::real::Real;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shots per leaf of the reduction tree.
const LEAF_SHOTS: u64 = 2048;

#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryRecord<T: Real> {
    pub choice: SequenceChoice,
    /// Branch drawn at each CNOT.
    pub branch_outcomes: Vec<usize>,
    pub sign: i32,
    pub final_state: ProductState<T>,
    /// Sampled parity (±1) per queried observable.
    pub observable_outcomes: Vec<i32>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuasiEstimate {
    /// Fraction of shots with sign +1 whose outcome matched.
    pub p_pos: f64,
    /// Fraction of shots with sign −1 whose outcome matched.
    pub p_neg: f64,
    pub amplification: f64,
    /// `amplification · (p_pos − p_neg)`.
    pub estimate: f64,
    pub shots: u64,
    pub std_error: f64,
}

/// The random stream for shot `t`.
pub fn trajectory_rng(seed: u64, t: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t);
    rng
}

fn walk<T: Real, R: Rng + ?Sized>(
    circuit: &Circuit<T>,
    ops: &[LocalOperation<T>; 3],
    state: &mut ProductState<T>,
    rng: &mut R,
    mut on_cnot: impl FnMut(OpKind, usize),
) -> i32 {
    let mut sign = 1;
    for gate in circuit.gates() {
        match gate {
            Gate::LocalUnitary { qubit, matrix, .. } => state.apply_1q(*qubit, matrix),
            Gate::Cnot { control, target } => {
                let op = &ops[rng.random_range(0..3usize)];
                let branch = apply_local_op_in_place(state, op, *control, *target, rng);
                sign *= op.weight;
                on_cnot(op.kind, branch);
            }
        }
    }
    sign
}

/// Samples the product of single-qubit outcomes of `obs.pauli`; identity
/// letters contribute +1.
pub fn sample_parity<T: Real, R: Rng + ?Sized>(state: &ProductState<T>, obs: &Observable, rng: &mut R) -> i32 {
    let mut parity = 1;
    for (q, &p) in obs.pauli.letters().iter().enumerate() {
        if p == Pauli::I {
            continue;
        }
        let plus = (1.0 + state.local_expectation(q, p).as_f64()) * 0.5;
        if rng.random::<f64>() >= plus {
            parity = -parity;
        }
    }
    parity
}

/// Runs one signed trajectory and samples each observable on its final state.
pub fn run_trajectory<T: Real, R: Rng + ?Sized>(
    circuit: &Circuit<T>,
    input: &ProductState<T>,
    observables: &[Observable],
    rng: &mut R,
) -> TrajectoryRecord<T> {
    let ops = decompose_cnot::<T>();
    let mut state = input.clone();
    let mut kinds = Vec::with_capacity(circuit.cnot_count());
    let mut branches = Vec::with_capacity(circuit.cnot_count());
    let sign = walk(circuit, &ops, &mut state, rng, |k, b| {
        kinds.push(k);
        branches.push(b);
    });
    let observable_outcomes = observables.iter().map(|o| sample_parity(&state, o, rng)).collect();
    TrajectoryRecord { choice: SequenceChoice(kinds), branch_outcomes: branches, sign, final_state: state, observable_outcomes }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Tally {
    /// Per observable: sign +1 shots whose outcome matched.
    pos: Vec<u64>,
    /// Per observable: sign −1 shots whose outcome matched.
    neg: Vec<u64>,
}

impl Tally {
    fn zero(n: usize) -> Self {
        Tally { pos: vec![0; n], neg: vec![0; n] }
    }

    fn merge(mut self, other: Tally) -> Self {
        for (a, b) in self.pos.iter_mut().zip(other.pos) {
            *a += b;
        }
        for (a, b) in self.neg.iter_mut().zip(other.neg) {
            *a += b;
        }
        self
    }
}

struct Job<'a, T: Real> {
    circuit: &'a Circuit<T>,
    input: &'a ProductState<T>,
    observables: &'a [Observable],
    ops: [LocalOperation<T>; 3],
    base: ChaCha8Rng,
}

impl<T: Real> Job<'_, T> {
    fn leaf(&self, lo: u64, hi: u64) -> Tally {
        let mut tally = Tally::zero(self.observables.len());
        let mut state = self.input.clone();
        for t in lo..hi {
            let mut rng = self.base.clone();
            rng.set_stream(t);
            state.clone_from(self.input);
            let sign = walk(self.circuit, &self.ops, &mut state, &mut rng, |_, _| {});
            for (k, obs) in self.observables.iter().enumerate() {
                if sample_parity(&state, obs, &mut rng) == obs.parity.sign() {
                    if sign > 0 {
                        tally.pos[k] += 1;
                    } else {
                        tally.neg[k] += 1;
                    }
                }
            }
        }
        tally
    }

    fn reduce(&self, lo: u64, hi: u64) -> Tally {
        if hi - lo <= LEAF_SHOTS {
            return self.leaf(lo, hi);
        }
        let mid = lo + (hi - lo) / 2;
        let (a, b) = rayon::join(|| self.reduce(lo, mid), || self.reduce(mid, hi));
        a.merge(b)
    }
}

/// Signed Monte Carlo estimate for each observable. Parallel over shots in
/// the current rayon pool; deterministic in `(seed, shots)`.
pub fn sample<T: Real>(
    circuit: &Circuit<T>,
    input: &ProductState<T>,
    observables: &[Observable],
    shots: u64,
    seed: u64,
) -> Result<Vec<QuasiEstimate>> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    check_inputs(circuit, input, observables)?;
    let job = Job { circuit, input, observables, ops: decompose_cnot(), base: ChaCha8Rng::seed_from_u64(seed) };
    let tally = job.reduce(0, shots);
    let amp = amplification(circuit.cnot_count());
    Ok(tally.pos.iter().zip(&tally.neg).map(|(&pos, &neg)| estimate_from_counts(pos, neg, shots, amp)).collect())
}

/// Builds the estimate from the signed indicator `x_t ∈ {−1, 0, +1}`;
/// `std_error` is its sample standard deviation times `amp / √shots`.
pub fn estimate_from_counts(pos: u64, neg: u64, shots: u64, amp: f64) -> QuasiEstimate {
    let s = shots as f64;
    let p_pos = pos as f64 / s;
    let p_neg = neg as f64 / s;
    let mean = p_pos - p_neg;
    let var = if shots > 1 { (((pos + neg) as f64) - s * mean * mean).max(0.0) / (s - 1.0) } else { 0.0 };
    QuasiEstimate { p_pos, p_neg, amplification: amp, estimate: amp * mean, shots, std_error: amp * var.sqrt() / s.sqrt() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Gate, NamedGate};

    #[test]
    fn zero_shots_rejected() {
        let c = Circuit::<f64>::ghz3();
        let o = Observable::parse("XXX", 3).unwrap();
        assert_eq!(sample(&c, &ProductState::zeros(3), &[o], 0, 1).unwrap_err(), Error::ZeroShots);
    }

    #[test]
    fn zero_cnot_circuit_has_no_negative_shots() {
        let c = Circuit::<f64>::new(2, vec![Gate::named(NamedGate::H, 0)]).unwrap();
        let o = Observable::parse("XZ=+1", 2).unwrap();
        let est = sample(&c, &ProductState::zeros(2), &[o], 5000, 3).unwrap()[0];
        assert_eq!(est.p_neg, 0.0);
        assert_eq!(est.amplification, 1.0);
        assert_eq!(est.estimate, 1.0);
    }

    #[test]
    fn ghz_amplification_is_nine() {
        let o = Observable::parse("XXX=+1", 3).unwrap();
        let est = sample(&Circuit::<f64>::ghz3(), &ProductState::zeros(3), &[o], 100, 0).unwrap()[0];
        assert_eq!(est.amplification, 9.0);
        assert_eq!(est.estimate, 9.0 * (est.p_pos - est.p_neg));
    }

    #[test]
    fn trajectory_record_is_consistent() {
        let o = Observable::parse("XYY=-1", 3).unwrap();
        let mut rng = trajectory_rng(9, 4);
        let rec = run_trajectory(&Circuit::<f64>::ghz3(), &ProductState::zeros(3), &[o], &mut rng);
        assert_eq!(rec.choice.len(), 2);
        assert_eq!(rec.branch_outcomes.len(), 2);
        assert_eq!(rec.sign, rec.choice.sign());
        assert_eq!(rec.observable_outcomes.len(), 1);
        assert!(rec.final_state.norm_deviation() < 1e-12);
    }

    #[test]
    fn estimate_from_counts_matches_direct_formula() {
        let e = estimate_from_counts(3, 2, 9, 9.0);
        assert!((e.estimate - 1.0).abs() < 1e-15);
        // indicator values: three +1, two −1, four 0 → mean 1/9
        let xs = [1.0, 1.0, 1.0, -1.0, -1.0, 0.0, 0.0, 0.0, 0.0];
        let m = xs.iter().sum::<f64>() / 9.0;
        let var = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / 8.0;
        assert!((e.std_error - 9.0 * var.sqrt() / 3.0).abs() < 1e-14);
    }
}
