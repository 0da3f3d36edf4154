//! The three local operations whose signed sum is the controlled-NOT.
//!
//! ```text
//! E_CNOT = L1 + L2 − L̄3
//! L1: { ½(I+Z) ⊗ I,  ½(I−Z) ⊗ X }                measure Z on control, flip target on −1
//! L2: { I ⊗ ½(I+X),  Z ⊗ ½(I−X) }                measure X on target, phase control on −1
//! L̄3: ½ U_a·U_a† + ½ U_b·U_b†,  U_a = (I+iZ)/√2 ⊗ (I−iX)/√2,  U_b = U_a⁻¹
//! ```

use crate::error::Result;
use crate::exact::{Channel, KrausBranch};
use crate::linalg::Mat2;
use crate::real::{c, real, Real};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    L1,
    L2,
    L3Bar,
}

impl OpKind {
    pub const ALL: [OpKind; 3] = [OpKind::L1, OpKind::L2, OpKind::L3Bar];

    /// Quasi-probability of the operation: +1, +1, −1.
    pub fn weight(self) -> i32 {
        match self {
            OpKind::L1 | OpKind::L2 => 1,
            OpKind::L3Bar => -1,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OpKind::L1 => "L1",
            OpKind::L2 => "L2",
            OpKind::L3Bar => "L3bar",
        })
    }
}

/// How a branch is selected: by its Born probability (measurement) or
/// with fixed probability ½ (classical mixing).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchRule {
    Born,
    Half,
}

/// Kraus operator factored as `control ⊗ target`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalBranch<T: Real> {
    pub control: Mat2<T>,
    pub target: Mat2<T>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalOperation<T: Real> {
    pub kind: OpKind,
    pub weight: i32,
    pub rule: BranchRule,
    pub branches: [LocalBranch<T>; 2],
}

impl<T: Real> LocalOperation<T> {
    pub fn new(kind: OpKind) -> Self {
        let i = Mat2::<T>::identity();
        let x = Mat2::<T>::pauli_x();
        let z = Mat2::<T>::pauli_z();
        let half = real(T::lit(0.5));
        let (rule, branches) = match kind {
            OpKind::L1 => (
                BranchRule::Born,
                [
                    LocalBranch { control: (i + z).scale(half), target: i },
                    LocalBranch { control: (i - z).scale(half), target: x },
                ],
            ),
            OpKind::L2 => (
                BranchRule::Born,
                [
                    LocalBranch { control: i, target: (i + x).scale(half) },
                    LocalBranch { control: z, target: (i - x).scale(half) },
                ],
            ),
            OpKind::L3Bar => {
                let r = real(T::FRAC_1_SQRT_2());
                let iu = c::<T>(0.0, 1.0);
                let rz = (i + z.scale(iu)).scale(r);
                let rx = (i - x.scale(iu)).scale(r);
                (
                    BranchRule::Half,
                    [
                        LocalBranch { control: rz, target: rx },
                        LocalBranch { control: rz.dagger(), target: rx.dagger() },
                    ],
                )
            }
        };
        LocalOperation { kind, weight: kind.weight(), rule, branches }
    }

    /// Unsigned operator-sum form acting on `(control, target)` of an
    /// `n_qubits` register. Half-rule branches carry weight ½; the
    /// operation's sign is not applied.
    pub fn to_channel(&self, control: usize, target: usize, n_qubits: usize) -> Result<Channel<T>> {
        let branch_weight = match self.rule {
            BranchRule::Born => T::one(),
            BranchRule::Half => T::lit(0.5),
        };
        let branches = self
            .branches
            .iter()
            .map(|b| KrausBranch {
                qubits: vec![control, target],
                operator: b.control.to_cmatrix().kron(&b.target.to_cmatrix()),
                weight: branch_weight,
            })
            .collect();
        Channel::new(n_qubits, branches)
    }
}

/// L1 (+1), L2 (+1), L̄3 (−1).
pub fn decompose_cnot<T: Real>() -> [LocalOperation<T>; 3] {
    OpKind::ALL.map(LocalOperation::new)
}

/// `Σ_k weight_k · L_k` as one signed channel.
pub fn signed_decomposition_channel<T: Real>(control: usize, target: usize, n_qubits: usize) -> Result<Channel<T>> {
    let mut acc: Option<Channel<T>> = None;
    for op in decompose_cnot::<T>() {
        let ch = op.to_channel(control, target, n_qubits)?;
        let sign = T::lit(op.weight as f64);
        acc = Some(match acc {
            None => Channel::new(n_qubits, Vec::new())?.signed_sum(&ch, sign)?,
            Some(a) => a.signed_sum(&ch, sign)?,
        });
    }
    Ok(acc.expect("three operations"))
}
