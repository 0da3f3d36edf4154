use crate::circuit::{Observable, Parity, Pauli};
use crate::error::{Error, Result};
use crate::exact::StateVector;
use crate::linalg::Mat2;
use crate::real::{c, one, zero, Real, C};

/// Unentangled pure state stored as one normalized 2-vector per qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductState<T: Real> {
    qubits: Vec<[C<T>; 2]>,
}

impl<T: Real> ProductState<T> {
    pub fn zeros(n_qubits: usize) -> Self {
        ProductState { qubits: vec![[one(), zero()]; n_qubits] }
    }

    /// Each entry must have unit norm within 1e-12.
    pub fn new(qubits: Vec<[C<T>; 2]>) -> Result<Self> {
        for q in &qubits {
            let norm_sqr = q[0].norm_sqr() + q[1].norm_sqr();
            if (norm_sqr - T::one()).abs() > T::tol(1e-12) {
                return Err(Error::NotNormalized { norm_sqr: norm_sqr.as_f64() });
            }
        }
        Ok(ProductState { qubits })
    }

    /// One character per qubit: `0 1 + - r l` for the Z, X and Y eigenstates
    /// (`r`/`l` are `(|0⟩ ± i|1⟩)/√2`).
    pub fn from_labels(labels: &str) -> Result<Self> {
        let h = T::FRAC_1_SQRT_2().as_f64();
        let qubits = labels
            .chars()
            .map(|ch| match ch {
                '0' => Ok([one(), zero()]),
                '1' => Ok([zero(), one()]),
                '+' => Ok([c(h, 0.0), c(h, 0.0)]),
                '-' => Ok([c(h, 0.0), c(-h, 0.0)]),
                'r' => Ok([c(h, 0.0), c(0.0, h)]),
                'l' => Ok([c(h, 0.0), c(0.0, -h)]),
                other => Err(Error::InvalidObservable(format!("unknown single-qubit state label `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if qubits.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        Ok(ProductState { qubits })
    }

    /// Factors a state vector; fails with [`Error::EntangledInput`] when the
    /// state is not a product within 1e-10 fidelity.
    pub fn from_state_vector(state: &StateVector<T>) -> Result<Self> {
        let n = state.n_qubits();
        let amps = state.amplitudes();
        let pivot = (0..amps.len())
            .max_by(|&a, &b| amps[a].norm_sqr().partial_cmp(&amps[b].norm_sqr()).expect("finite amplitude"))
            .expect("non-empty state");
        let mut qubits = Vec::with_capacity(n);
        for q in 0..n {
            let mask = 1 << (n - 1 - q);
            let v = [amps[pivot & !mask], amps[pivot | mask]];
            let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
            qubits.push([v[0] / norm, v[1] / norm]);
        }
        let product = ProductState { qubits };
        let overlap = product.to_state_vector().inner(state).norm_sqr();
        if (overlap - T::one()).abs() > T::tol(1e-10) {
            return Err(Error::EntangledInput);
        }
        Ok(product)
    }

    pub fn n_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubit(&self, q: usize) -> &[C<T>; 2] {
        &self.qubits[q]
    }

    pub fn qubits(&self) -> &[[C<T>; 2]] {
        &self.qubits
    }

    /// Kronecker product of the factors, qubit 0 most significant.
    pub fn to_state_vector(&self) -> StateVector<T> {
        let mut amps = vec![one::<T>()];
        for q in &self.qubits {
            amps = amps.iter().flat_map(|a| [*a * q[0], *a * q[1]]).collect();
        }
        StateVector::from_amplitudes(amps).expect("product of unit vectors is normalized")
    }

    #[inline]
    pub fn apply_1q(&mut self, q: usize, m: &Mat2<T>) {
        self.qubits[q] = normalized(m.apply(&self.qubits[q]));
    }

    #[inline]
    pub(crate) fn set(&mut self, q: usize, v: [C<T>; 2]) {
        self.qubits[q] = v;
    }

    /// Largest per-qubit deviation of the norm from 1.
    pub fn norm_deviation(&self) -> T {
        self.qubits
            .iter()
            .fold(T::zero(), |d, q| d.max(((q[0].norm_sqr() + q[1].norm_sqr()).sqrt() - T::one()).abs()))
    }

    /// `⟨P⟩` on a single qubit.
    #[inline]
    pub fn local_expectation(&self, q: usize, p: Pauli) -> T {
        let [a, b] = self.qubits[q];
        match p {
            Pauli::I => T::one(),
            Pauli::Z => a.norm_sqr() - b.norm_sqr(),
            Pauli::X => T::lit(2.0) * (a.conj() * b).re,
            Pauli::Y => T::lit(2.0) * (a.conj() * b).im,
        }
    }

    /// Probability of the observable's parity, by convolving the per-qubit
    /// ±1 outcome distributions.
    pub fn parity_probability(&self, obs: &Observable) -> T {
        let half = T::lit(0.5);
        // (P[product = +1], P[product = −1])
        let mut dist = (T::one(), T::zero());
        for (q, &p) in obs.pauli.letters().iter().enumerate() {
            if p == Pauli::I {
                continue;
            }
            let plus = ((T::one() + self.local_expectation(q, p)) * half).max(T::zero()).min(T::one());
            let minus = T::one() - plus;
            dist = (dist.0 * plus + dist.1 * minus, dist.0 * minus + dist.1 * plus);
        }
        match obs.parity {
            Parity::Plus => dist.0,
            Parity::Minus => dist.1,
        }
    }
}

#[inline]
pub(crate) fn normalized<T: Real>(v: [C<T>; 2]) -> [C<T>; 2] {
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / norm, v[1] / norm]
}
