//! GHZ-circuit experiment and entanglement/negativity checks.

use crate::circuit::{parse_pauli, Circuit, Observable, Parity};
use crate::error::{Error, Result};
use crate::exact::{apply_channel, StateVector};
use crate::linalg::CMatrix;
use crate::quasi::{decompose_cnot, enumerate, signed_decomposition_channel, EnumerateOptions, Enumeration, ProductState};
use crate::real::{c, Real};

/// The four certain correlations of the three-qubit GHZ state.
pub const GHZ_CORRELATIONS: [(&str, Parity); 4] =
    [("XXX", Parity::Plus), ("XYY", Parity::Minus), ("YXY", Parity::Minus), ("YYX", Parity::Minus)];

/// Expected `(sequence, p(i), p(m|i))` for the GHZ circuit, columns in
/// [`GHZ_CORRELATIONS`] order.
pub const GHZ_REFERENCE_TABLE: [(&str, i32, [f64; 4]); 9] = [
    ("L1-L1", 1, [0.5, 0.5, 0.5, 0.5]),
    ("L1-L2", 1, [0.5, 0.5, 0.5, 0.5]),
    ("L1-L3bar", -1, [0.5, 0.5, 0.5, 0.5]),
    ("L2-L1", 1, [0.5, 0.5, 0.5, 0.5]),
    ("L2-L2", 1, [1.0, 0.5, 0.5, 0.5]),
    ("L2-L3bar", -1, [0.5, 0.5, 0.0, 0.5]),
    ("L3bar-L1", -1, [0.5, 0.5, 0.5, 0.5]),
    ("L3bar-L2", -1, [0.5, 0.5, 0.5, 0.0]),
    ("L3bar-L3bar", 1, [0.5, 1.0, 0.5, 0.5]),
];

pub fn ghz_observables() -> Vec<Observable> {
    GHZ_CORRELATIONS
        .iter()
        .map(|&(p, parity)| Observable::new(parse_pauli(p, 3).expect("valid literal"), parity).expect("non-identity"))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct GhzRow<T: Real> {
    /// First CNOT's operation, then the second's.
    pub label: String,
    pub sign: i32,
    pub conditionals: [T; 4],
}

/// Signed-frequency view of one observable when all nine sequences are run
/// with equal frequency 1/9.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalFrequency<T: Real> {
    pub observable: Observable,
    pub p_pos: T,
    pub p_neg: T,
    pub amplification: T,
    /// `amplification · (p_pos − p_neg)`.
    pub reconstruction: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GhzReport<T: Real> {
    pub observables: Vec<Observable>,
    pub rows: Vec<GhzRow<T>>,
    pub recombined: [T; 4],
    pub classical_frequencies: Vec<ClassicalFrequency<T>>,
}

fn ghz_enumeration<T: Real>() -> Enumeration<T> {
    enumerate(&Circuit::ghz3(), &ProductState::zeros(3), &ghz_observables(), EnumerateOptions::default())
        .expect("GHZ circuit is within any budget")
}

/// Runs the GHZ circuit through signed enumeration for the four GHZ
/// correlations.
pub fn ghz_table<T: Real>() -> GhzReport<T> {
    let e = ghz_enumeration::<T>();
    let rows: Vec<GhzRow<T>> = e
        .rows
        .iter()
        .map(|r| GhzRow {
            label: r.choice.label(),
            sign: r.sign,
            conditionals: r.conditionals.clone().try_into().expect("four observables"),
        })
        .collect();
    debug_assert_eq!(rows.len(), 9);
    debug_assert_eq!(rows.iter().map(|r| r.sign).sum::<i32>(), 1);
    let recombined: [T; 4] = e.totals.clone().try_into().expect("four observables");
    let classical_frequencies = classical_from_rows(&e.observables, &rows, &recombined);
    GhzReport { observables: e.observables, rows, recombined, classical_frequencies }
}

fn classical_from_rows<T: Real>(observables: &[Observable], rows: &[GhzRow<T>], recombined: &[T; 4]) -> Vec<ClassicalFrequency<T>> {
    let n = T::lit(rows.len() as f64);
    let uniform = T::one() / n;
    observables
        .iter()
        .enumerate()
        .map(|(k, obs)| {
            let (mut p_pos, mut p_neg) = (T::zero(), T::zero());
            for row in rows {
                if row.sign > 0 {
                    p_pos += row.conditionals[k] * uniform;
                } else {
                    p_neg += row.conditionals[k] * uniform;
                }
            }
            let reconstruction = n * (p_pos - p_neg);
            assert!(
                (reconstruction - recombined[k]).abs() <= T::tol(1e-12),
                "classical reconstruction {reconstruction} disagrees with recombined total {}",
                recombined[k]
            );
            ClassicalFrequency { observable: obs.clone(), p_pos, p_neg, amplification: n, reconstruction }
        })
        .collect()
}

/// `p_pos`, `p_neg` and their amplified difference for each GHZ correlation.
pub fn ghz_classical_frequencies<T: Real>() -> Vec<ClassicalFrequency<T>> {
    ghz_table::<T>().classical_frequencies
}

/// Largest squared Schmidt coefficient of a two-qubit pure state, i.e.
/// `max |⟨a,b|ψ⟩|²` over product states.
///
/// The singular values of the amplitude matrix `M = [[ψ00, ψ01], [ψ10, ψ11]]`
/// satisfy `σ1² + σ2² = ‖M‖²` and `σ1² σ2² = |det M|²`.
pub fn max_product_fidelity<T: Real>(state: &StateVector<T>) -> Result<T> {
    if state.n_qubits() != 2 {
        return Err(Error::DimensionMismatch { expected: 4, found: state.amplitudes().len() });
    }
    let norm_sqr = state.norm_sqr();
    if (norm_sqr - T::one()).abs() > T::tol(1e-10) {
        return Err(Error::NotNormalized { norm_sqr: norm_sqr.as_f64() });
    }
    let a = state.amplitudes();
    let det = (a[0] * a[3] - a[1] * a[2]).norm_sqr();
    let disc = (norm_sqr * norm_sqr - T::lit(4.0) * det).max(T::zero());
    Ok((norm_sqr + disc.sqrt()) / T::lit(2.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct NegativityReport<T: Real> {
    /// Total magnitude of negative weights in the CNOT decomposition.
    pub achieved_negativity: T,
    /// Fidelity of the decomposition's output on `|+0⟩` with the Bell state.
    pub bell_fidelity: T,
    /// Best fidelity of a product state with the Bell state.
    pub product_fidelity: T,
    /// Minimal negativity `n` allowed by `F ≤ (1+n)·F_product`.
    pub bound: T,
    pub saturated: bool,
}

/// Checks that the decomposition reaches the Bell state with exactly the
/// least negativity compatible with `F ≤ (1+n)/2`.
pub fn negativity_lower_bound_check<T: Real>() -> NegativityReport<T> {
    let achieved_negativity = decompose_cnot::<T>()
        .iter()
        .filter(|op| op.weight < 0)
        .fold(T::zero(), |acc, op| acc + T::lit(f64::from(op.weight.abs())));

    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus_zero = ProductState::<T>::from_labels("+0").expect("valid labels").to_state_vector();
    let signed = signed_decomposition_channel::<T>(0, 1, 2).expect("two-qubit channel");
    let rho = apply_channel(&signed, plus_zero.density_matrix().matrix()).expect("dimensions match");
    let bell = StateVector::from_amplitudes(vec![c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)]).expect("normalized");
    let bell_fidelity = expectation(&rho, &bell);

    let product_fidelity = max_product_fidelity(&bell).expect("two-qubit normalized state");
    // F ≤ (1+n)·F_p  ⇒  n ≥ F/F_p − 1
    let bound = bell_fidelity / product_fidelity - T::one();
    let saturated = (achieved_negativity - bound).abs() <= T::tol(1e-9);
    NegativityReport { achieved_negativity, bell_fidelity, product_fidelity, bound, saturated }
}

fn expectation<T: Real>(rho: &CMatrix<T>, psi: &StateVector<T>) -> T {
    let v = rho.mul_vec(psi.amplitudes());
    psi.amplitudes().iter().zip(&v).fold(T::zero(), |acc, (a, b)| acc + (a.conj() * *b).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat2;

    #[test]
    fn table_matches_reference() {
        let report = ghz_table::<f64>();
        assert_eq!(report.rows.len(), 9);
        for (row, (label, sign, cond)) in report.rows.iter().zip(GHZ_REFERENCE_TABLE) {
            assert_eq!(row.label, label);
            assert_eq!(row.sign, sign);
            for k in 0..4 {
                assert!((row.conditionals[k] - cond[k]).abs() < 1e-9, "{label} col {k}");
            }
        }
        for t in report.recombined {
            assert!((t - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn each_column_has_one_distinguished_sequence() {
        let report = ghz_table::<f64>();
        for k in 0..4 {
            let halves = report.rows.iter().filter(|r| (r.conditionals[k] - 0.5).abs() < 1e-9).count();
            assert_eq!(halves, 8, "column {k}");
        }
    }

    #[test]
    fn classical_frequencies_for_xxx() {
        let f = &ghz_classical_frequencies::<f64>()[0];
        assert_eq!(f.observable.label(), "XXX=+1");
        assert!((f.p_pos - 3.0 / 9.0).abs() < 1e-12);
        assert!((f.p_neg - 2.0 / 9.0).abs() < 1e-12);
        assert_eq!(f.amplification, 9.0);
        assert!((f.reconstruction - 1.0).abs() < 1e-12);
        let xyy = &ghz_classical_frequencies::<f64>()[1];
        assert!((xyy.reconstruction - 1.0).abs() < 1e-12);
    }

    fn two_qubit(amps: [(f64, f64); 4]) -> StateVector<f64> {
        StateVector::from_amplitudes(amps.iter().map(|&(r, i)| c(r, i)).collect()).unwrap()
    }

    #[test]
    fn fidelity_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = two_qubit([(h, 0.0), (0.0, 0.0), (0.0, 0.0), (h, 0.0)]);
        assert!((max_product_fidelity(&bell).unwrap() - 0.5).abs() < 1e-12);
        let prod = StateVector::<f64>::basis(2, 1);
        assert!((max_product_fidelity(&prod).unwrap() - 1.0).abs() < 1e-12);
        let skew = two_qubit([(0.9f64.sqrt(), 0.0), (0.0, 0.0), (0.0, 0.0), (0.1f64.sqrt(), 0.0)]);
        let f = max_product_fidelity(&skew).unwrap();
        assert!((f - 0.9).abs() < 1e-12);

        // grid search over product states |a⟩|b⟩ with real-phase parametrization
        let steps = 90;
        let mut best: f64 = 0.0;
        for i in 0..=steps {
            for j in 0..=steps {
                let ta = std::f64::consts::PI * i as f64 / steps as f64;
                let tb = std::f64::consts::PI * j as f64 / steps as f64;
                let a = [(ta / 2.0).cos(), (ta / 2.0).sin()];
                let b = [(tb / 2.0).cos(), (tb / 2.0).sin()];
                let amps = skew.amplitudes();
                let overlap = a[0] * b[0] * amps[0].re + a[1] * b[1] * amps[3].re;
                best = best.max(overlap * overlap);
            }
        }
        assert!((best - f).abs() < 1e-9, "{best} vs {f}");
    }

    #[test]
    fn fidelity_rejects_unnormalized_and_wrong_size() {
        let mut amps = StateVector::<f64>::basis(2, 0).amplitudes().to_vec();
        amps[1] = c(1.0, 0.0);
        assert!(StateVector::from_amplitudes(amps).is_err());
        assert!(max_product_fidelity(&StateVector::<f64>::zero_state(3)).is_err());
    }

    #[test]
    fn fidelity_is_local_unitary_invariant() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut s = two_qubit([(0.6, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.8)]);
        let f0 = max_product_fidelity(&s).unwrap();
        s.apply_1q(0, &Mat2::phase_t());
        s.apply_1q(1, &Mat2::hadamard());
        s.apply_1q(0, &Mat2::new(c(h, 0.0), c(0.0, h), c(0.0, h), c(h, 0.0)));
        assert!((max_product_fidelity(&s).unwrap() - f0).abs() < 1e-10);
    }

    #[test]
    fn decomposition_saturates_negativity_bound() {
        let r = negativity_lower_bound_check::<f64>();
        assert_eq!(r.achieved_negativity, 1.0);
        assert!((r.bell_fidelity - 1.0).abs() < 1e-12);
        assert!((r.bound - 1.0).abs() < 1e-12);
        assert!(r.saturated);
    }

    #[test]
    fn observables_in_table_order() {
        let labels: Vec<String> = ghz_observables().iter().map(Observable::label).collect();
        assert_eq!(labels, ["XXX=+1", "XYY=-1", "YXY=-1", "YYX=-1"]);
    }
}
