//! Two-atom density matrices over the 81-dimensional internal basis.

use nalgebra::{DMatrix, DVector, SMatrix};
use num_complex::Complex64;

use crate::atomic_physics::levels::{pair_index, IDX_A, IDX_B, IDX_R, N_LEVELS, N_PAIR};
use crate::error::{Error, Result};

/// Levels reachable by the coherent dynamics of one atom: `a`, `b`, `r`.
pub const SUPPORT: [usize; 3] = [IDX_A, IDX_B, IDX_R];
/// Computational levels of one atom.
pub const QUBIT: [usize; 2] = [IDX_A, IDX_B];

/// Density matrix restricted to `{a, b, r} x {a, b, r}`; index `3 * i_A + i_B`.
pub type CompactRho = SMatrix<Complex64, 9, 9>;

/// Hermitian, unit-trace, positive matrix over `(atom A) x (atom B)` with
/// basis index `9 * i_A + i_B` (see [`crate::atomic_physics::levels`]).
#[derive(Clone, Debug, PartialEq)]
pub struct TwoAtomDensityMatrix {
    pub m: DMatrix<Complex64>,
}

impl TwoAtomDensityMatrix {
    pub fn zeros() -> Self {
        Self { m: DMatrix::zeros(N_PAIR, N_PAIR) }
    }

    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != N_PAIR || m.ncols() != N_PAIR {
            return Err(Error::Argument(format!("expected {N_PAIR}x{N_PAIR}, got {}x{}", m.nrows(), m.ncols())));
        }
        Ok(Self { m })
    }

    pub fn from_pure(psi: &DVector<Complex64>) -> Self {
        Self { m: psi * psi.adjoint() }
    }

    /// Embed a compact `{a,b,r}^2` matrix.
    pub fn from_compact(c: &CompactRho) -> Self {
        let mut m = DMatrix::zeros(N_PAIR, N_PAIR);
        for i in 0..9 {
            for j in 0..9 {
                m[(compact_to_full(i), compact_to_full(j))] = c[(i, j)];
            }
        }
        Self { m }
    }

    /// Product-state vector from per-atom amplitudes over the 9 levels.
    pub fn product_vector(a: &[Complex64; N_LEVELS], b: &[Complex64; N_LEVELS]) -> DVector<Complex64> {
        DVector::from_fn(N_PAIR, |k, _| a[k / N_LEVELS] * b[k % N_LEVELS])
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    pub fn purity(&self) -> f64 {
        // Tr(rho^2) for Hermitian rho is the squared Frobenius norm
        self.m.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn population(&self, i_a: usize, i_b: usize) -> f64 {
        let k = pair_index(i_a, i_b);
        self.m[(k, k)].re
    }

    /// Population with atom A (`atom = 0`) or B (`atom = 1`) in level `level`.
    pub fn single_atom_population(&self, atom: usize, level: usize) -> f64 {
        (0..N_LEVELS)
            .map(|o| if atom == 0 { self.population(level, o) } else { self.population(o, level) })
            .sum()
    }

    pub fn hermiticity_error(&self) -> f64 {
        (&self.m - self.m.adjoint()).iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn hermitize(&mut self) {
        self.m = (&self.m + self.m.adjoint()) * Complex64::new(0.5, 0.0);
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let h = (&self.m + self.m.adjoint()) * Complex64::new(0.5, 0.0);
        let mut v: Vec<f64> = h.symmetric_eigenvalues().iter().cloned().collect();
        v.sort_by(|a, b| a.total_cmp(b));
        v
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Checks Hermiticity, unit trace and positivity within the given tolerances.
    pub fn validate(&self, herm_tol: f64, trace_tol: f64, eig_floor: f64) -> Result<()> {
        let h = self.hermiticity_error();
        if h > herm_tol {
            return Err(Error::ModelValidity(format!("density matrix not Hermitian (error {h:.3e})")));
        }
        let t = self.trace();
        if (t.re - 1.0).abs() > trace_tol || t.im.abs() > trace_tol {
            return Err(Error::ModelValidity(format!("density matrix trace {t}")));
        }
        let e = self.min_eigenvalue();
        if e < eig_floor {
            return Err(Error::ModelValidity(format!("density matrix eigenvalue {e:.3e}")));
        }
        Ok(())
    }

    /// Unnormalized 4x4 block on `{aa, ab, ba, bb}`.
    pub fn computational_block(&self) -> DMatrix<Complex64> {
        let idx: Vec<usize> = computational_indices().to_vec();
        DMatrix::from_fn(4, 4, |i, j| self.m[(idx[i], idx[j])])
    }

    /// Reduced state of one atom (9x9).
    pub fn partial_trace(&self, keep_atom: usize) -> DMatrix<Complex64> {
        DMatrix::from_fn(N_LEVELS, N_LEVELS, |i, j| {
            (0..N_LEVELS)
                .map(|o| {
                    if keep_atom == 0 {
                        self.m[(pair_index(i, o), pair_index(j, o))]
                    } else {
                        self.m[(pair_index(o, i), pair_index(o, j))]
                    }
                })
                .sum()
        })
    }
}

/// Full basis indices of `aa, ab, ba, bb`.
pub fn computational_indices() -> [usize; 4] {
    [pair_index(IDX_A, IDX_A), pair_index(IDX_A, IDX_B), pair_index(IDX_B, IDX_A), pair_index(IDX_B, IDX_B)]
}

pub fn compact_to_full(c: usize) -> usize {
    pair_index(SUPPORT[c / 3], SUPPORT[c % 3])
}

/// Compact position of a per-atom level, if it lies in the support.
pub fn support_position(level: usize) -> Option<usize> {
    SUPPORT.iter().position(|&s| s == level)
}

/// Restrict a full matrix to the `{a,b,r}^2` support.
pub fn to_compact(m: &DMatrix<Complex64>) -> CompactRho {
    CompactRho::from_fn(|i, j| m[(compact_to_full(i), compact_to_full(j))])
}
