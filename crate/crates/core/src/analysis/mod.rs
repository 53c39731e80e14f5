//! Figures of merit of the simulated gate: fidelity and purity, truth tables
//! with leakage columns, and process tomography.

pub mod fidelity;
pub mod tomography;
pub mod truth_table;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::atomic_physics::levels::{IDX_A, IDX_B, N_LEVELS};
use crate::dynamics::density::TwoAtomDensityMatrix;

pub use fidelity::{cz_target, fidelity, fidelity_purity, purity, werner_state, MetricsEntry};
pub use tomography::{chi_reconstruct, closest_unitary, tomography_inputs, ClosestUnitary, ProcessMatrix};
pub use truth_table::{postselect, TruthTable, OUTPUT_LABELS};

/// Nine-level operator acting as `g` on `{a, b}` and as identity elsewhere.
pub fn embed_qubit_gate(g: &[[Complex64; 2]; 2]) -> DMatrix<Complex64> {
    let mut m = DMatrix::identity(N_LEVELS, N_LEVELS);
    let idx = [IDX_A, IDX_B];
    for i in 0..2 {
        for j in 0..2 {
            m[(idx[i], idx[j])] = g[i][j];
        }
    }
    m
}

/// `|b> -> e^{-i theta} |b>`.
pub fn z_phase(theta: f64) -> [[Complex64; 2]; 2] {
    let z = Complex64::new(0.0, 0.0);
    [[Complex64::new(1.0, 0.0), z], [z, Complex64::from_polar(1.0, -theta)]]
}

pub fn hadamard() -> [[Complex64; 2]; 2] {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

/// `(u_A (x) u_B) rho (u_A (x) u_B)^+` for nine-level single-atom operators.
pub fn apply_local(rho: &TwoAtomDensityMatrix, ua: &DMatrix<Complex64>, ub: &DMatrix<Complex64>) -> TwoAtomDensityMatrix {
    let w = ua.kronecker(ub);
    TwoAtomDensityMatrix { m: &w * &rho.m * w.adjoint() }
}

/// Removes the single-qubit `Z` rotations `[theta_A, theta_B]`.
pub fn compensate(rho: &TwoAtomDensityMatrix, theta: [f64; 2]) -> TwoAtomDensityMatrix {
    apply_local(rho, &embed_qubit_gate(&z_phase(theta[0])), &embed_qubit_gate(&z_phase(theta[1])))
}
