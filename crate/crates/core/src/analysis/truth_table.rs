//! CNOT truth tables built from the CZ protocol with ideal Hadamard gates on
//! the target atom, including columns for atoms lost from the qubit levels.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::{apply_local, embed_qubit_gate, hadamard, z_phase};
use crate::atomic_physics::levels::{pair_index, IDX_A, IDX_B, N_LEVELS};
use crate::dynamics::density::TwoAtomDensityMatrix;
use crate::error::{Error, Result};

pub const INPUT_LABELS: [&str; 4] = ["aa", "ab", "ba", "bb"];
/// Output columns; `_` marks an atom outside `{a, b}`.
pub const OUTPUT_LABELS: [&str; 9] = ["aa", "ab", "ba", "bb", "a_", "b_", "_a", "_b", "__"];

/// Smallest computational-subspace weight accepted by [`postselect`].
pub const MIN_ROW_WEIGHT: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruthTable {
    /// `rows[input][output]` over [`INPUT_LABELS`] x [`OUTPUT_LABELS`].
    pub rows: [[f64; 9]; 4],
}

/// Column of a qubit level (0 = a, 1 = b) or 2 for any other level.
fn slot(level: usize) -> usize {
    match level {
        IDX_A => 0,
        IDX_B => 1,
        _ => 2,
    }
}

fn column(sa: usize, sb: usize) -> usize {
    match (sa, sb) {
        (2, 2) => 8,
        (2, b) => 6 + b,
        (a, 2) => 4 + a,
        (a, b) => 2 * a + b,
    }
}

impl TruthTable {
    /// Partitions the diagonal of each output state into the nine columns.
    pub fn from_outputs(outputs: &[TwoAtomDensityMatrix]) -> Result<Self> {
        if outputs.len() != 4 {
            return Err(Error::Argument(format!("truth table needs 4 outputs, got {}", outputs.len())));
        }
        let mut rows = [[0.0; 9]; 4];
        for (row, rho) in rows.iter_mut().zip(outputs) {
            for ia in 0..N_LEVELS {
                for ib in 0..N_LEVELS {
                    let k = pair_index(ia, ib);
                    row[column(slot(ia), slot(ib))] += rho.m[(k, k)].re;
                }
            }
        }
        Ok(Self { rows })
    }

    /// Largest deviation of a row sum from 1.
    pub fn row_sum_error(&self) -> f64 {
        self.rows.iter().map(|r| (r.iter().sum::<f64>() - 1.0).abs()).fold(0.0, f64::max)
    }

    /// Checks entries in `[0, 1]` and unit row sums within `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let e = self.row_sum_error();
        if e > tol {
            return Err(Error::ModelValidity(format!("truth-table row sum off by {e:.3e}")));
        }
        if self.rows.iter().flatten().any(|&p| !(-tol..=1.0 + tol).contains(&p)) {
            return Err(Error::ModelValidity("truth-table entry outside [0, 1]".into()));
        }
        Ok(())
    }

    /// Sum of the computational diagonal `P(aa|aa) + ...`, a measure of dominance.
    pub fn diagonal_weight(&self, pattern: &[usize; 4]) -> f64 {
        (0..4).map(|i| self.rows[i][pattern[i]]).sum()
    }
}

/// Rows restricted to the computational outputs and renormalized.
pub fn postselect(table: &TruthTable) -> Result<[[f64; 4]; 4]> {
    let mut out = [[0.0; 4]; 4];
    for (row, (o, r)) in out.iter_mut().zip(&table.rows).enumerate() {
        let weight: f64 = r[..4].iter().sum();
        if weight <= MIN_ROW_WEIGHT {
            return Err(Error::DegenerateRow { row, weight });
        }
        for k in 0..4 {
            o[k] = r[k] / weight;
        }
    }
    Ok(out)
}

/// Output column of each input under an ideal CNOT with atom A as control.
pub const CNOT_PATTERN: [usize; 4] = [0, 1, 3, 2];

/// `(I (x) H) rho (I (x) H)` on a 4x4 qubit matrix: the Hadamard applied to
/// the target before the CZ protocol.
pub fn hadamard_on_target(rho: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let h = hadamard();
    let w = DMatrix::from_fn(4, 4, |i, j| if i / 2 == j / 2 { h[i % 2][j % 2] } else { Complex64::new(0.0, 0.0) });
    &w * rho * w.adjoint()
}

/// Qubit input `(I (x) H) |alpha beta>` for computational input `k`.
pub fn cnot_input(k: usize) -> DMatrix<Complex64> {
    let mut basis = DMatrix::zeros(4, 4);
    basis[(k, k)] = Complex64::new(1.0, 0.0);
    hadamard_on_target(&basis)
}

/// Final Hadamard on atom B after compensating `theta` and applying `Z (x) Z`,
/// so that the `-1` phase convention of the protocol becomes a standard CNOT.
pub fn cnot_frame(rho: &TwoAtomDensityMatrix, theta: [f64; 2]) -> TwoAtomDensityMatrix {
    let pi = std::f64::consts::PI;
    let ua = embed_qubit_gate(&z_phase(theta[0] + pi));
    let ub = embed_qubit_gate(&hadamard()) * embed_qubit_gate(&z_phase(theta[1] + pi));
    apply_local(rho, &ua, &ub)
}

/// Truth table of the CNOT built around `run`, which maps a qubit input to
/// the final two-atom state of the CZ protocol. Returns the CNOT-frame outputs.
pub fn truth_table(
    run: impl Fn(&DMatrix<Complex64>) -> Result<TwoAtomDensityMatrix>,
    theta: [f64; 2],
) -> Result<(TruthTable, Vec<TwoAtomDensityMatrix>)> {
    let outputs = (0..4).map(|k| run(&cnot_input(k)).map(|r| cnot_frame(&r, theta))).collect::<Result<Vec<_>>>()?;
    Ok((TruthTable::from_outputs(&outputs)?, outputs))
}
