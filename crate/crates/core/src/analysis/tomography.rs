//! Process tomography of the two-qubit gate: the 16x16 process matrix over
//! the dyadic basis `E_m = |m1><m2|`, `m = 4 m1 + m2`, and the unitary
//! closest to the process.
//!
//! With `rho_out = sum_{mn} chi_{mn} E_m rho_in E_n^+`, a trace-preserving
//! map has `Tr chi = 4` and the identity map has `chi_{mn} = 1` whenever
//! `m1 = m2` and `n1 = n2`.

use log::warn;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

const D: usize = 4;
const D2: usize = D * D;

/// Relative singular-value floor of the input set.
pub const COMPLETENESS_TOL: f64 = 1e-10;
/// Eigenvalue gap below which the closest unitary is ambiguous.
pub const GAP_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct ProcessMatrix {
    pub chi: DMatrix<Complex64>,
    /// Frobenius norm of the anti-Hermitian part removed during reconstruction.
    pub anti_hermitian_residual: f64,
}

impl ProcessMatrix {
    /// Process matrix of the operator-sum map `rho -> sum_k K_k rho K_k^+`.
    pub fn from_kraus(ops: &[DMatrix<Complex64>]) -> Self {
        let mut chi = DMatrix::zeros(D2, D2);
        for k in ops {
            let c = DVector::from_fn(D2, |m, _| k[(m / D, m % D)]);
            chi += &c * c.adjoint();
        }
        Self { chi, anti_hermitian_residual: 0.0 }
    }

    /// `sum_{mn} chi_{mn} E_m rho E_n^+`.
    pub fn apply(&self, rho: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        DMatrix::from_fn(D, D, |j, k| {
            let mut s = Complex64::new(0.0, 0.0);
            for m2 in 0..D {
                for n2 in 0..D {
                    s += self.chi[(D * j + m2, D * k + n2)] * rho[(m2, n2)];
                }
            }
            s
        })
    }

    pub fn trace(&self) -> Complex64 {
        self.chi.trace()
    }
}

/// Single-qubit preparations `a, b, (a + b)/sqrt2, (a + i b)/sqrt2`.
fn qubit_states() -> [[Complex64; 2]; 4] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    [
        [Complex64::new(1.0, 0.0), z],
        [z, Complex64::new(1.0, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(0.0, s)],
    ]
}

/// The 16 product inputs, qubit A's preparation varying slowest.
pub fn tomography_inputs() -> Vec<DMatrix<Complex64>> {
    let q = qubit_states();
    let mut out = Vec::with_capacity(D2);
    for a in &q {
        for b in &q {
            let v = DVector::from_fn(D, |n, _| a[n / 2] * b[n % 2]);
            out.push(&v * v.adjoint());
        }
    }
    out
}

/// Solves `rho_out[j,k] = sum chi_{(j,m2),(k,n2)} rho_in[m2,n2]` for `chi`
/// by least squares over the supplied input/output pairs.
pub fn chi_reconstruct(pairs: &[(DMatrix<Complex64>, DMatrix<Complex64>)]) -> Result<ProcessMatrix> {
    if pairs.iter().any(|(i, o)| i.shape() != (D, D) || o.shape() != (D, D)) {
        return Err(Error::Argument("tomography pairs must be 4x4 matrices".into()));
    }
    let n = pairs.len();
    let a = DMatrix::from_fn(n, D2, |s, c| pairs[s].0[(c / D, c % D)]);
    let b = DMatrix::from_fn(n, D2, |s, c| pairs[s].1[(c / D, c % D)]);
    let svd = a.svd(true, true);
    let sv = &svd.singular_values;
    let smax = sv.max();
    let smin = if n < D2 { 0.0 } else { sv.min() };
    if smin <= COMPLETENESS_TOL * smax {
        return Err(Error::TomographicIncompleteness(smin));
    }
    let x = svd.solve(&b, COMPLETENESS_TOL * smax).map_err(|e| Error::Argument(e.into()))?;
    // x[(m2, n2), (j, k)] -> chi[(j, m2), (k, n2)]
    let raw = DMatrix::from_fn(D2, D2, |r, c| {
        let (j, m2, k, n2) = (r / D, r % D, c / D, c % D);
        x[(D * m2 + n2, D * j + k)]
    });
    let herm = (&raw + raw.adjoint()) * Complex64::new(0.5, 0.0);
    let anti_hermitian_residual = (&raw - &herm).norm();
    Ok(ProcessMatrix { chi: herm, anti_hermitian_residual })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosestUnitary {
    /// Top eigenvector of `chi` reshaped by `m = 4 m1 + m2`, scaled to unit operator norm for unitaries.
    pub matrix: DMatrix<Complex64>,
    pub eigenvalue: f64,
    /// Gap to the second eigenvalue.
    pub gap: f64,
    /// `|| U^+ U - I ||_F`.
    pub unitarity_deviation: f64,
}

/// Unitary closest to the process: the eigenvector of the largest eigenvalue of `chi`.
pub fn closest_unitary(p: &ProcessMatrix) -> ClosestUnitary {
    let eig = p.chi.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..D2).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let (top, second) = (eig.eigenvalues[order[0]], eig.eigenvalues[order[1]]);
    let gap = top - second;
    if gap < GAP_TOL {
        warn!("closest unitary is ambiguous: top eigenvalue gap {gap:.3e}");
    }
    let v = eig.eigenvectors.column(order[0]).into_owned();
    // fix the global phase on the largest entry
    let k = v.iter().enumerate().max_by(|a, b| a.1.norm().total_cmp(&b.1.norm())).map(|(i, _)| i).unwrap_or(0);
    let phase = Complex64::from_polar(1.0, -v[k].arg());
    let scale = Complex64::new((D as f64).sqrt(), 0.0) * phase;
    let matrix = DMatrix::from_fn(D, D, |m1, m2| v[D * m1 + m2] * scale);
    let unitarity_deviation = (matrix.adjoint() * &matrix - DMatrix::identity(D, D)).norm();
    ClosestUnitary { matrix, eigenvalue: top, gap, unitarity_deviation }
}
