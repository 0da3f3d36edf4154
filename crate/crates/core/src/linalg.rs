//! Small dense complex matrices.
//!
//! `Mat2` is the single-qubit workhorse used on the trajectory hot path;
//! `CMatrix` is a square row-major matrix for the register-wide oracle.

use crate::real::{c, one, real, zero, Real, C};
use std::ops::{Add, Mul, Sub};

/// 2×2 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2<T: Real>(pub [[C<T>; 2]; 2]);

impl<T: Real> Mat2<T> {
    pub fn new(m00: C<T>, m01: C<T>, m10: C<T>, m11: C<T>) -> Self {
        Mat2([[m00, m01], [m10, m11]])
    }

    pub fn identity() -> Self {
        Self::new(one(), zero(), zero(), one())
    }

    pub fn pauli_x() -> Self {
        Self::new(zero(), one(), one(), zero())
    }

    pub fn pauli_y() -> Self {
        Self::new(zero(), c(0.0, -1.0), c(0.0, 1.0), zero())
    }

    pub fn pauli_z() -> Self {
        Self::new(one(), zero(), zero(), c(-1.0, 0.0))
    }

    pub fn hadamard() -> Self {
        let h = real(T::FRAC_1_SQRT_2());
        Self::new(h, h, h, -h)
    }

    pub fn phase_s() -> Self {
        Self::new(one(), zero(), zero(), c(0.0, 1.0))
    }

    pub fn phase_t() -> Self {
        let r = T::FRAC_1_SQRT_2();
        Self::new(one(), zero(), zero(), C::new(r, r))
    }

    pub fn scale(&self, s: C<T>) -> Self {
        let m = &self.0;
        Self::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Self::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    #[inline]
    pub fn apply(&self, v: &[C<T>; 2]) -> [C<T>; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut d = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        d
    }

    /// Entrywise distance of `U·U†` from the identity.
    pub fn unitarity_deviation(&self) -> T {
        (*self * self.dagger()).max_abs_diff(&Self::identity())
    }

    pub fn to_cmatrix(&self) -> CMatrix<T> {
        CMatrix::from_rows(2, vec![self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1]])
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Mat2<T>;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl<T: Real> Add for Mat2<T> {
    type Output = Mat2<T>;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        Mat2::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl<T: Real> Sub for Mat2<T> {
    type Output = Mat2<T>;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale(c(-1.0, 0.0))
    }
}

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T: Real> {
    dim: usize,
    data: Vec<C<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        CMatrix { dim, data: vec![zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = one();
        }
        m
    }

    pub fn from_rows(dim: usize, data: Vec<C<T>>) -> Self {
        assert_eq!(data.len(), dim * dim, "row data does not fill a {dim}x{dim} matrix");
        CMatrix { dim, data }
    }

    /// `|a⟩⟨b|`.
    pub fn outer(a: &[C<T>], b: &[C<T>]) -> Self {
        assert_eq!(a.len(), b.len());
        let dim = a.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = a[i] * b[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: C<T>) -> Self {
        CMatrix { dim: self.dim, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn trace(&self) -> C<T> {
        (0..self.dim).fold(zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |d, (a, b)| d.max((*a - *b).norm()))
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |d, a| d.max(a.norm()))
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let mut m = Self::zeros(da * db);
        for i in 0..da {
            for j in 0..da {
                let a = self[(i, j)];
                if a == zero() {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        m[(i * db + k, j * db + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let row = &self.data[i * self.dim..(i + 1) * self.dim];
                row.iter().zip(v).fold(zero(), |acc, (a, b)| acc + *a * *b)
            })
            .collect()
    }

    /// Lifts an operator on `qubits` (first listed = most significant bit of
    /// the operator's own index) to an `n_qubits` register where qubit `k`
    /// sits at bit `n_qubits - 1 - k`.
    pub fn embed(&self, qubits: &[usize], n_qubits: usize) -> Self {
        let m = qubits.len();
        assert_eq!(self.dim, 1 << m, "operator dimension does not match qubit count");
        let full = 1usize << n_qubits;
        let masks: Vec<usize> = qubits.iter().map(|&q| 1 << (n_qubits - 1 - q)).collect();
        let sub_index = |basis: usize| {
            masks.iter().fold(0usize, |acc, &mask| (acc << 1) | usize::from(basis & mask != 0))
        };
        let with_sub = |basis: usize, sub: usize| {
            let mut b = basis;
            for (pos, &mask) in masks.iter().enumerate() {
                let bit = (sub >> (m - 1 - pos)) & 1;
                b = if bit == 1 { b | mask } else { b & !mask };
            }
            b
        };
        let mut out = Self::zeros(full);
        for r in 0..full {
            let sr = sub_index(r);
            for sc in 0..self.dim {
                let v = self[(sr, sc)];
                if v != zero() {
                    out[(r, with_sub(r, sc))] = v;
                }
            }
        }
        out
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.max_abs_diff(&self.dagger()) <= tol
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    ///
    /// Runs cyclic Jacobi on the real symmetric embedding `[[A, -B], [B, A]]`
    /// of `A + iB`, whose spectrum is that of the input with every eigenvalue
    /// doubled.
    pub fn hermitian_eigenvalues(&self) -> Vec<T> {
        let n = self.dim;
        let m = 2 * n;
        let mut a = vec![T::zero(); m * m];
        for i in 0..n {
            for j in 0..n {
                let z = self[(i, j)];
                a[i * m + j] = z.re;
                a[(i + n) * m + (j + n)] = z.re;
                a[i * m + (j + n)] = -z.im;
                a[(i + n) * m + j] = z.im;
            }
        }
        let mut evals = jacobi_symmetric(&mut a, m);
        evals.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalue"));
        evals.into_iter().step_by(2).collect()
    }
}

fn jacobi_symmetric<T: Real>(a: &mut [T], n: usize) -> Vec<T> {
    let two = T::lit(2.0);
    for _sweep in 0..100 {
        let mut off = T::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i * n + j] * a[i * n + j];
            }
        }
        if off <= T::epsilon() * T::epsilon() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let cs = T::one() / (t * t + T::one()).sqrt();
                let sn = t * cs;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = cs * akp - sn * akq;
                    a[k * n + q] = sn * akp + cs * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = cs * apk - sn * aqk;
                    a[q * n + k] = sn * apk + cs * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

impl<T: Real> std::ops::Index<(usize, usize)> for CMatrix<T> {
    type Output = C<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T: Real> std::ops::IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl<T: Real> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}
