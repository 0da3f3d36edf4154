//! Self-check suite: operator identities, positivity of the physical
//! pieces, the GHZ golden table, counting laws and the negativity bound.

use crate::analysis::{ghz_classical_frequencies, ghz_table, max_product_fidelity, negativity_lower_bound_check, GHZ_REFERENCE_TABLE};
use crate::exact::{apply_channel, chi_of_channel, cnot_channel, cnot_pauli_sum, cnot_permutation, pauli_product_basis, ChiMatrix, StateVector};
use crate::linalg::Mat2;
use crate::quasi::{decompose_cnot, overhead_ratio, sequence_census, signed_decomposition_channel, LocalOperation, OpKind};
use crate::real::c;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Channel and process-matrix identities.
    pub identity: f64,
    /// Literal matrix identities between exact constants.
    pub literal: f64,
    /// Completeness and unitarity of the physical operations.
    pub physical: f64,
    /// GHZ table, recombination and fidelity values.
    pub table: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { identity: 1e-10, literal: 1e-15, physical: 1e-12, table: 1e-9 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub residual: f64,
    pub detail: String,
}

impl CheckResult {
    fn within(name: &'static str, residual: f64, tol: f64, detail: impl Into<String>) -> Self {
        CheckResult { name, passed: residual <= tol, residual, detail: detail.into() }
    }

    fn flag(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult { name, passed, residual: 0.0, detail: detail.into() }
    }
}

/// Largest entrywise residual of `L1 + L2 − L̄3` against CNOT conjugation
/// over the sixteen Pauli-product inputs.
pub fn decomposition_residual() -> f64 {
    let signed = signed_decomposition_channel::<f64>(0, 1, 2).expect("two-qubit channel");
    let cnot = cnot_channel::<f64>();
    pauli_product_basis::<f64>()
        .iter()
        .map(|(_, b)| {
            let lhs = apply_channel(&signed, b).expect("4x4");
            let rhs = apply_channel(&cnot, b).expect("4x4");
            lhs.max_abs_diff(&rhs)
        })
        .fold(0.0, f64::max)
}

/// Largest entrywise residual of `χ(L1) + χ(L2) − χ(L̄3) − χ(CNOT)`.
pub fn chi_residual() -> f64 {
    let [l1, l2, l3] = decompose_cnot::<f64>().map(|op| chi_of_channel(&op.to_channel(0, 1, 2).expect("valid")).expect("2 qubits"));
    let cnot = chi_of_channel(&cnot_channel::<f64>()).expect("2 qubits");
    l1.add(&l2).sub(&l3).0.max_abs_diff(&cnot.0)
}

pub fn run_all(tol: &Tolerances) -> Vec<CheckResult> {
    let mut out = Vec::new();

    for kind in [OpKind::L1, OpKind::L2] {
        let dev = LocalOperation::<f64>::new(kind).to_channel(0, 1, 2).expect("valid").completeness_deviation();
        let name = if kind == OpKind::L1 { "L1 completeness" } else { "L2 completeness" };
        out.push(CheckResult::within(name, dev, tol.physical, "max |Σ M†M − I|"));
    }

    let l3 = LocalOperation::<f64>::new(OpKind::L3Bar);
    let [a, b] = l3.branches;
    let unit = [a.control, a.target, b.control, b.target].iter().map(Mat2::unitarity_deviation).fold(0.0, f64::max);
    let inverse = (a.control * b.control).max_abs_diff(&Mat2::identity()).max((a.target * b.target).max_abs_diff(&Mat2::identity()));
    out.push(CheckResult::within("L3bar unitary branches", unit.max(inverse), tol.physical, "U_a, U_b unitary and U_b = U_a⁻¹"));

    let lit = cnot_pauli_sum::<f64>().max_abs_diff(&cnot_permutation());
    out.push(CheckResult::within("CNOT Pauli sum", lit, tol.literal, "½(II+ZI+IX−ZX) vs permutation matrix"));

    out.push(CheckResult::within("decomposition identity", decomposition_residual(), tol.identity, "L1+L2−L3bar vs CNOT on 16 Pauli inputs"));
    out.push(CheckResult::within("process matrix identity", chi_residual(), tol.identity, "χ(L1)+χ(L2)−χ(L3bar) vs χ(CNOT)"));

    let chi = chi_of_channel(&cnot_channel::<f64>()).expect("2 qubits");
    let mut support: Vec<String> = chi.support(tol.identity).into_iter().map(ChiMatrix::<f64>::label).collect();
    support.sort();
    out.push(CheckResult::flag("CNOT chi support", support == ["II", "IX", "ZI", "ZX"], format!("{{{}}}", support.join(", "))));

    let census: Vec<(u64, u64)> = (0..=12).map(|n| sequence_census(n).expect("small N")).collect();
    let census_ok = census.iter().enumerate().all(|(n, &(p, m))| {
        let total = 3u64.pow(n as u32);
        p == (total + 1) / 2 && m == (total - 1) / 2
    });
    out.push(CheckResult::flag("sequence census", census_ok && census[2] == (5, 4), format!("N=2 → {:?}", census[2])));

    let overhead = (0..=10).map(|n| (overhead_ratio(n) - 3f64.powi(n as i32)).abs()).fold(0.0, f64::max);
    out.push(CheckResult::within("overhead ratio", overhead, 0.0, "Σ|p(i)|/Σp(i) = 3^N for N ≤ 10"));

    let report = ghz_table::<f64>();
    let mut table_res: f64 = 0.0;
    let mut signs_ok = report.rows.len() == GHZ_REFERENCE_TABLE.len();
    for (row, (label, sign, cond)) in report.rows.iter().zip(GHZ_REFERENCE_TABLE) {
        signs_ok &= row.label == label && row.sign == sign;
        for k in 0..4 {
            table_res = table_res.max((row.conditionals[k] - cond[k]).abs());
        }
    }
    out.push(CheckResult {
        name: "GHZ table",
        passed: signs_ok && table_res <= tol.table,
        residual: table_res,
        detail: "36 conditionals and 9 signs".into(),
    });
    let recomb = report.recombined.iter().map(|t| (t - 1.0).abs()).fold(0.0, f64::max);
    out.push(CheckResult::within("GHZ recombination", recomb, tol.table, "four totals equal 1"));

    let xxx = &ghz_classical_frequencies::<f64>()[0];
    let freq = (xxx.p_pos - 3.0 / 9.0).abs().max((xxx.p_neg - 2.0 / 9.0).abs()).max((xxx.reconstruction - 1.0).abs());
    out.push(CheckResult::within("classical frequencies", freq, 1e-12, format!("XXX: p_pos={:.6}, p_neg={:.6}", xxx.p_pos, xxx.p_neg)));

    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bell = StateVector::from_amplitudes(vec![c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)]).expect("normalized");
    let f: f64 = max_product_fidelity(&bell).expect("two qubits");
    let neg = negativity_lower_bound_check::<f64>();
    out.push(CheckResult {
        name: "negativity bound",
        passed: (f - 0.5).abs() <= tol.table && neg.saturated,
        residual: (f - 0.5).abs().max((neg.achieved_negativity - neg.bound).abs()),
        detail: format!("F_product(Bell)={f:.12}, negativity={} ≥ bound={:.12}", neg.achieved_negativity, neg.bound),
    });

    out
}
