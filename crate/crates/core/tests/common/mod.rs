#![allow(dead_code)]

use negsim::circuit::{Circuit, Gate, NamedGate, Observable, Parity, Pauli, PauliString};
use negsim::linalg::Mat2;
use negsim::quasi::ProductState;
use num_complex::Complex64;
use rand::Rng;

/// `e^{iφ} [[cos θ e^{iα}, −sin θ e^{iβ}], [sin θ e^{−iβ}, cos θ e^{−iα}]]`.
pub fn random_unitary<R: Rng>(rng: &mut R) -> Mat2<f64> {
    let tau = std::f64::consts::TAU;
    let mut angle = || rng.random::<f64>() * tau;
    let (theta, alpha, beta, phi) = (angle() / 4.0, angle(), angle(), angle());
    let e = |x: f64| Complex64::from_polar(1.0, x);
    let (cs, sn) = (theta.cos(), theta.sin());
    Mat2::new(e(alpha) * cs, -e(beta) * sn, e(-beta) * sn, e(-alpha) * cs).scale(e(phi))
}

pub fn random_circuit<R: Rng>(rng: &mut R, n_qubits: usize, n_cnots: usize, n_local: usize) -> Circuit<f64> {
    let mut kinds: Vec<bool> = (0..n_cnots).map(|_| true).chain((0..n_local).map(|_| false)).collect();
    // Fisher-Yates
    for i in (1..kinds.len()).rev() {
        let j = rng.random_range(0..=i);
        kinds.swap(i, j);
    }
    let mut c = Circuit::empty(n_qubits).unwrap();
    for is_cnot in kinds {
        let gate = if is_cnot {
            let control = rng.random_range(0..n_qubits);
            let mut target = rng.random_range(0..n_qubits - 1);
            if target >= control {
                target += 1;
            }
            Gate::cnot(control, target)
        } else if rng.random_bool(0.5) {
            Gate::named(NamedGate::ALL[rng.random_range(0..NamedGate::ALL.len())], rng.random_range(0..n_qubits))
        } else {
            Gate::unitary(rng.random_range(0..n_qubits), random_unitary(rng), 1e-12).unwrap()
        };
        c.push(gate).unwrap();
    }
    c
}

pub fn random_product_state<R: Rng>(rng: &mut R, n_qubits: usize) -> ProductState<f64> {
    let qubits = (0..n_qubits)
        .map(|_| {
            let v = random_unitary(rng).apply(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
            let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
            [v[0] / norm, v[1] / norm]
        })
        .collect();
    ProductState::new(qubits).unwrap()
}

pub fn random_observable<R: Rng>(rng: &mut R, n_qubits: usize) -> Observable {
    loop {
        let letters: Vec<Pauli> = (0..n_qubits).map(|_| Pauli::ALL[rng.random_range(0..4)]).collect();
        let p = PauliString::new(letters);
        if !p.is_identity() {
            let parity = if rng.random_bool(0.5) { Parity::Plus } else { Parity::Minus };
            return Observable::new(p, parity).unwrap();
        }
    }
}
