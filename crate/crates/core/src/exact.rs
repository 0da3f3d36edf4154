//! Dense state-vector and density-matrix oracle.
//!
//! Pauli products are used unnormalized (eigenvalues ±1); the process matrix
//! carries the resulting 1/4 factors, so `χ_ij` satisfies
//! `E(ρ) = Σ_ij χ_ij P_i ρ P_j†` with `P_i` a plain two-qubit Pauli product.

use crate::circuit::{Circuit, Gate, Observable, Parity, Pauli, PauliString};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Mat2};
use crate::real::{one, real, zero, Real, C};

/// Largest imaginary part tolerated in a quantity that must be real.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-10;

/// Largest register the dense oracle accepts.
pub const MAX_DENSE_QUBITS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    n_qubits: usize,
    amps: Vec<C<T>>,
}

impl<T: Real> StateVector<T> {
    /// `|0…0⟩`.
    pub fn zero_state(n_qubits: usize) -> Self {
        let mut amps = vec![zero(); 1 << n_qubits];
        amps[0] = one();
        StateVector { n_qubits, amps }
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amps = vec![zero(); 1 << n_qubits];
        amps[index] = one();
        StateVector { n_qubits, amps }
    }

    /// Wraps raw amplitudes; length must be a power of two and the norm 1.
    pub fn from_amplitudes(amps: Vec<C<T>>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::DimensionMismatch { expected: len.next_power_of_two().max(2), found: len });
        }
        let s = StateVector { n_qubits: len.trailing_zeros() as usize, amps };
        let norm_sqr = s.norm_sqr();
        if (norm_sqr - T::one()).abs() > T::tol(1e-10) {
            return Err(Error::NotNormalized { norm_sqr: norm_sqr.as_f64() });
        }
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn inner(&self, other: &Self) -> C<T> {
        self.amps.iter().zip(&other.amps).fold(zero(), |acc, (a, b)| acc + a.conj() * *b)
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    pub fn apply_1q(&mut self, qubit: usize, m: &Mat2<T>) {
        let mask = self.mask(qubit);
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let j = i | mask;
                let [a, b] = m.apply(&[self.amps[i], self.amps[j]]);
                self.amps[i] = a;
                self.amps[j] = b;
            }
        }
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        let (cm, tm) = (self.mask(control), self.mask(target));
        for i in 0..self.amps.len() {
            if i & cm != 0 && i & tm == 0 {
                self.amps.swap(i, i | tm);
            }
        }
    }

    pub fn apply_pauli(&mut self, p: &PauliString) {
        for (q, &letter) in p.letters().iter().enumerate() {
            if letter != Pauli::I {
                self.apply_1q(q, &letter.matrix());
            }
        }
    }

    pub fn density_matrix(&self) -> DensityMatrix<T> {
        DensityMatrix { n_qubits: self.n_qubits, rho: CMatrix::outer(&self.amps, &self.amps) }
    }
}

/// Applies the circuit's gates in order.
pub fn run_exact<T: Real>(circuit: &Circuit<T>, input: &StateVector<T>) -> Result<StateVector<T>> {
    if input.n_qubits != circuit.n_qubits() {
        return Err(Error::DimensionMismatch { expected: 1 << circuit.n_qubits(), found: input.amps.len() });
    }
    if input.n_qubits > MAX_DENSE_QUBITS {
        return Err(Error::DimensionMismatch { expected: 1 << MAX_DENSE_QUBITS, found: input.amps.len() });
    }
    let mut state = input.clone();
    for gate in circuit.gates() {
        match gate {
            Gate::LocalUnitary { qubit, matrix, .. } => state.apply_1q(*qubit, matrix),
            Gate::Cnot { control, target } => state.apply_cnot(*control, *target),
        }
    }
    Ok(state)
}

/// `⟨ψ|P|ψ⟩`. Errors when the imaginary residue exceeds
/// [`IMAGINARY_RESIDUE_TOL`].
pub fn pauli_expectation<T: Real>(state: &StateVector<T>, p: &PauliString) -> Result<T> {
    if p.len() != state.n_qubits {
        return Err(Error::DimensionMismatch { expected: state.n_qubits, found: p.len() });
    }
    let mut image = state.clone();
    image.apply_pauli(p);
    let e = state.inner(&image);
    if e.im.abs() > T::tol(IMAGINARY_RESIDUE_TOL) {
        return Err(Error::ImaginaryResidue { residue: e.im.as_f64() });
    }
    Ok(e.re.max(-T::one()).min(T::one()))
}

/// Probability that measuring every non-identity letter of `obs.pauli`
/// yields outcomes whose product is `obs.parity`.
pub fn parity_probability<T: Real>(state: &StateVector<T>, obs: &Observable) -> Result<T> {
    if obs.pauli.is_identity() {
        return Err(Error::InvalidPauli(format!("`{}` has no non-identity letter", obs.pauli)));
    }
    let e = pauli_expectation(state, &obs.pauli)?;
    let s = match obs.parity {
        Parity::Plus => e,
        Parity::Minus => -e,
    };
    Ok((T::one() + s) / T::lit(2.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T: Real> {
    n_qubits: usize,
    rho: CMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates hermiticity, unit trace and positivity.
    pub fn new(rho: CMatrix<T>) -> Result<Self> {
        let dim = rho.dim();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::DimensionMismatch { expected: dim.next_power_of_two().max(2), found: dim });
        }
        if !rho.is_hermitian(T::tol(1e-12)) {
            return Err(Error::InvalidDensityMatrix("not Hermitian".into()));
        }
        let tr = rho.trace();
        if (tr - one()).norm() > T::tol(1e-12) {
            return Err(Error::InvalidDensityMatrix(format!("trace {} ≠ 1", tr.re)));
        }
        let min_eig = rho.hermitian_eigenvalues()[0];
        if min_eig < -T::tol(1e-10) {
            return Err(Error::InvalidDensityMatrix(format!("eigenvalue {min_eig} < 0")));
        }
        Ok(DensityMatrix { n_qubits: dim.trailing_zeros() as usize, rho })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.rho
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.rho
    }
}

/// One operator-sum term `weight · K ρ K†`, `K` acting on `qubits`.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausBranch<T: Real> {
    pub qubits: Vec<usize>,
    pub operator: CMatrix<T>,
    pub weight: T,
}

/// Linear map in signed operator-sum form over an `n_qubits` register.
#[derive(Clone, Debug, PartialEq)]
pub struct Channel<T: Real> {
    n_qubits: usize,
    branches: Vec<KrausBranch<T>>,
}

impl<T: Real> Channel<T> {
    pub fn new(n_qubits: usize, branches: Vec<KrausBranch<T>>) -> Result<Self> {
        for b in &branches {
            if b.operator.dim() != 1 << b.qubits.len() {
                return Err(Error::DimensionMismatch { expected: 1 << b.qubits.len(), found: b.operator.dim() });
            }
            for &q in &b.qubits {
                if q >= n_qubits {
                    return Err(Error::QubitOutOfRange { index: q, n_qubits });
                }
            }
        }
        Ok(Channel { n_qubits, branches })
    }

    pub fn identity(n_qubits: usize) -> Self {
        Channel {
            n_qubits,
            branches: vec![KrausBranch {
                qubits: (0..n_qubits).collect(),
                operator: CMatrix::identity(1 << n_qubits),
                weight: T::one(),
            }],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn branches(&self) -> &[KrausBranch<T>] {
        &self.branches
    }

    /// Concatenates branch lists, scaling `other`'s weights by `sign`.
    pub fn signed_sum(&self, other: &Self, sign: T) -> Result<Self> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch { expected: self.n_qubits, found: other.n_qubits });
        }
        let mut branches = self.branches.clone();
        branches.extend(other.branches.iter().map(|b| KrausBranch { weight: b.weight * sign, ..b.clone() }));
        Ok(Channel { n_qubits: self.n_qubits, branches })
    }

    /// Register-wide Kraus operators with their weights.
    pub fn full_operators(&self) -> Vec<(CMatrix<T>, T)> {
        self.branches.iter().map(|b| (b.operator.embed(&b.qubits, self.n_qubits), b.weight)).collect()
    }

    /// `‖Σ w K†K − I‖_max`; zero for a trace-preserving map.
    pub fn completeness_deviation(&self) -> T {
        let dim = 1 << self.n_qubits;
        let mut acc = CMatrix::zeros(dim);
        for (k, w) in self.full_operators() {
            acc = &acc + &(&k.dagger() * &k).scale(real(w));
        }
        acc.max_abs_diff(&CMatrix::identity(dim))
    }
}

/// `Σ_b w_b K_b ρ K_b†` for an arbitrary operator `rho`; the output is not
/// required to be positive.
pub fn apply_channel<T: Real>(ch: &Channel<T>, rho: &CMatrix<T>) -> Result<CMatrix<T>> {
    let dim = 1 << ch.n_qubits;
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: rho.dim() });
    }
    let mut out = CMatrix::zeros(dim);
    for (k, w) in ch.full_operators() {
        let term = &(&k * rho) * &k.dagger();
        out = &out + &term.scale(real(w));
    }
    Ok(out)
}

/// The controlled-NOT written as `½(II + ZI + IX − ZX)`, single branch,
/// weight +1.
pub fn cnot_channel<T: Real>() -> Channel<T> {
    Channel {
        n_qubits: 2,
        branches: vec![KrausBranch { qubits: vec![0, 1], operator: cnot_pauli_sum(), weight: T::one() }],
    }
}

pub fn cnot_pauli_sum<T: Real>() -> CMatrix<T> {
    let p = |a: Pauli, b: Pauli| a.matrix::<T>().to_cmatrix().kron(&b.matrix::<T>().to_cmatrix());
    let sum = &(&(&p(Pauli::I, Pauli::I) + &p(Pauli::Z, Pauli::I)) + &p(Pauli::I, Pauli::X)) - &p(Pauli::Z, Pauli::X);
    sum.scale(real(T::lit(0.5)))
}

/// The textbook CNOT permutation matrix, control on the high bit.
pub fn cnot_permutation<T: Real>() -> CMatrix<T> {
    let mut m = CMatrix::zeros(4);
    for (r, c) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        m[(r, c)] = one();
    }
    m
}

/// Two-qubit Pauli products in the order II, IX, IY, IZ, XI, …, ZZ.
pub fn pauli_product_basis<T: Real>() -> Vec<(String, CMatrix<T>)> {
    let mut out = Vec::with_capacity(16);
    for a in Pauli::ALL {
        for b in Pauli::ALL {
            let label = format!("{}{}", a.letter(), b.letter());
            out.push((label, a.matrix::<T>().to_cmatrix().kron(&b.matrix::<T>().to_cmatrix())));
        }
    }
    out
}

/// 16×16 process matrix in the two-qubit Pauli product basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiMatrix<T: Real>(pub CMatrix<T>);

impl<T: Real> ChiMatrix<T> {
    pub fn label(index: usize) -> String {
        let a = Pauli::ALL[index / 4].letter();
        let b = Pauli::ALL[index % 4].letter();
        format!("{a}{b}")
    }

    pub fn index_of(label: &str) -> Option<usize> {
        (0..16).find(|&i| Self::label(i) == label)
    }

    pub fn get(&self, row: &str, col: &str) -> Option<C<T>> {
        Some(self.0[(Self::index_of(row)?, Self::index_of(col)?)])
    }

    /// Basis indices whose diagonal entry exceeds `tol`.
    pub fn support(&self, tol: T) -> Vec<usize> {
        (0..16).filter(|&i| self.0[(i, i)].norm() > tol).collect()
    }

    /// `Σ χ_ij P_i ρ P_j†`.
    pub fn reconstruct(&self, rho: &CMatrix<T>) -> CMatrix<T> {
        let basis = pauli_product_basis::<T>();
        let mut out = CMatrix::zeros(4);
        for (i, (_, pi)) in basis.iter().enumerate() {
            let left = pi * rho;
            for (j, (_, pj)) in basis.iter().enumerate() {
                let chi = self.0[(i, j)];
                if chi == zero() {
                    continue;
                }
                out = &out + &(&left * &pj.dagger()).scale(chi);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        ChiMatrix(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        ChiMatrix(&self.0 - &other.0)
    }
}

/// Expands each Kraus operator as `K = Σ_i c_i P_i` with `c_i = Tr(P_i K)/4`
/// and sums `w c_i c_j*`.
pub fn chi_of_channel<T: Real>(ch: &Channel<T>) -> Result<ChiMatrix<T>> {
    if ch.n_qubits != 2 {
        return Err(Error::DimensionMismatch { expected: 4, found: 1 << ch.n_qubits });
    }
    let basis = pauli_product_basis::<T>();
    let quarter = real(T::lit(0.25));
    let mut chi = CMatrix::zeros(16);
    for (k, w) in ch.full_operators() {
        let coeffs: Vec<C<T>> = basis.iter().map(|(_, p)| (p * &k).trace() * quarter).collect();
        for i in 0..16 {
            for j in 0..16 {
                chi[(i, j)] += coeffs[i] * coeffs[j].conj() * real(w);
            }
        }
    }
    Ok(ChiMatrix(chi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{parse_pauli, Circuit, Gate, NamedGate};

    fn ghz() -> StateVector<f64> {
        run_exact(&Circuit::ghz3(), &StateVector::zero_state(3)).unwrap()
    }

    fn obs(s: &str) -> Observable {
        Observable::parse(s, s.split('=').next().unwrap().len()).unwrap()
    }

    #[test]
    fn hadamard_on_zero() {
        let c = Circuit::new(1, vec![Gate::named(NamedGate::H, 0)]).unwrap();
        let out = run_exact(&c, &StateVector::<f64>::zero_state(1)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((out.amplitudes()[0].re - h).abs() < 1e-15);
        assert!((out.amplitudes()[1].re - h).abs() < 1e-15);
    }

    #[test]
    fn cnot_truth_table() {
        let c = Circuit::new(2, vec![Gate::cnot(0, 1)]).unwrap();
        // |10⟩ has index 2 with qubit 0 as the high bit
        let out = run_exact(&c, &StateVector::<f64>::basis(2, 2)).unwrap();
        assert_eq!(out, StateVector::basis(2, 3));
    }

    #[test]
    fn ghz_output() {
        let s = ghz();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for (i, a) in s.amplitudes().iter().enumerate() {
            let expected = if i == 0 || i == 7 { h } else { 0.0 };
            assert!((a - C::new(expected, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn dimension_mismatch() {
        assert!(run_exact(&Circuit::ghz3(), &StateVector::<f64>::zero_state(2)).is_err());
        let p = parse_pauli("XX", 2).unwrap();
        assert!(pauli_expectation(&ghz(), &p).is_err());
    }

    #[test]
    fn ghz_expectations() {
        let s = ghz();
        let xxx = pauli_expectation(&s, &parse_pauli("XXX", 3).unwrap()).unwrap();
        let xyy = pauli_expectation(&s, &parse_pauli("XYY", 3).unwrap()).unwrap();
        assert!((xxx - 1.0).abs() < 1e-12);
        assert!((xyy + 1.0).abs() < 1e-12);
        let z = pauli_expectation(&StateVector::<f64>::zero_state(1), &parse_pauli("Z", 1).unwrap()).unwrap();
        assert_eq!(z, 1.0);
    }

    #[test]
    fn ghz_parity_probabilities() {
        let s = ghz();
        assert!((parity_probability(&s, &obs("XXX=+1")).unwrap() - 1.0).abs() < 1e-12);
        assert!((parity_probability(&s, &obs("YXY=-1")).unwrap() - 1.0).abs() < 1e-12);
        assert!((parity_probability(&s, &obs("ZII=+1")).unwrap() - 0.5).abs() < 1e-12);
        let zz = parity_probability(&StateVector::<f64>::zero_state(2), &obs("ZZ=-1")).unwrap();
        assert!(zz.abs() < 1e-15);
        let ident = Observable { pauli: parse_pauli("II", 2).unwrap(), parity: Parity::Plus };
        assert!(parity_probability(&StateVector::<f64>::zero_state(2), &ident).is_err());
    }

    #[test]
    fn cnot_pauli_sum_is_permutation() {
        let d = cnot_pauli_sum::<f64>().max_abs_diff(&cnot_permutation());
        assert!(d <= 1e-15, "{d}");
        let u = &cnot_channel::<f64>().full_operators()[0].0;
        assert_eq!(u.mul_vec(StateVector::<f64>::basis(2, 0).amplitudes()), StateVector::<f64>::basis(2, 0).amplitudes());
        assert_eq!(u.mul_vec(StateVector::<f64>::basis(2, 2).amplitudes()), StateVector::<f64>::basis(2, 3).amplitudes());
    }

    #[test]
    fn identity_channel_is_identity() {
        let s = ghz().density_matrix();
        let out = apply_channel(&Channel::identity(3), s.matrix()).unwrap();
        assert!(out.max_abs_diff(s.matrix()) < 1e-15);
        assert!(apply_channel(&Channel::identity(2), s.matrix()).is_err());
    }

    #[test]
    fn chi_identity_single_entry() {
        let chi = chi_of_channel(&Channel::<f64>::identity(2)).unwrap();
        for i in 0..16 {
            for j in 0..16 {
                let expected = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                assert!((chi.0[(i, j)] - C::new(expected, 0.0)).norm() < 1e-15);
            }
        }
        assert!(chi_of_channel(&Channel::<f64>::identity(3)).is_err());
    }

    #[test]
    fn chi_of_cnot_is_rank_one_on_four_paulis() {
        let chi = chi_of_channel(&cnot_channel::<f64>()).unwrap();
        let support: Vec<String> = chi.support(1e-12).into_iter().map(ChiMatrix::<f64>::label).collect();
        let mut sorted = support.clone();
        sorted.sort();
        assert_eq!(sorted, vec!["II", "IX", "ZI", "ZX"]);
        for i in chi.support(1e-12) {
            for j in chi.support(1e-12) {
                assert!((chi.0[(i, j)].norm() - 0.25).abs() < 1e-15);
            }
        }
        // rank one: every 2x2 minor on the support vanishes
        let s = chi.support(1e-12);
        for &a in &s {
            for &b in &s {
                let minor = chi.0[(a, a)] * chi.0[(b, b)] - chi.0[(a, b)] * chi.0[(b, a)];
                assert!(minor.norm() < 1e-15);
            }
        }
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::new(ghz().density_matrix().into_matrix()).is_ok());
        // trace 0
        assert!(DensityMatrix::new(Mat2::<f64>::pauli_z().to_cmatrix()).is_err());
        let mut m = CMatrix::<f64>::zeros(2);
        m[(0, 0)] = C::new(1.5, 0.0);
        m[(1, 1)] = C::new(-0.5, 0.0);
        assert!(matches!(DensityMatrix::new(m), Err(Error::InvalidDensityMatrix(_))));
    }
}
