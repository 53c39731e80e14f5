//! Fidelity to the ideal CZ output and purity, with single-qubit phase
//! compensation and an optional numerical refinement of the phases.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::dynamics::density::TwoAtomDensityMatrix;

/// Grid points per phase axis in the refinement search.
pub const REFINE_GRID: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MetricsEntry {
    pub fidelity: f64,
    pub purity: f64,
    /// Compensation phases `[theta_A, theta_B]` actually applied.
    pub theta: [f64; 2],
}

/// `(|aa> - |ab> - |ba> - |bb>) / 2` over `{aa, ab, ba, bb}`.
pub fn cz_target() -> DVector<Complex64> {
    DVector::from_vec(vec![Complex64::new(0.5, 0.0), Complex64::new(-0.5, 0.0), Complex64::new(-0.5, 0.0), Complex64::new(-0.5, 0.0)])
}

/// `<psi| rho |psi>` for a 4x4 block over `{aa, ab, ba, bb}`.
pub fn fidelity(block: &DMatrix<Complex64>, target: &DVector<Complex64>) -> f64 {
    (target.adjoint() * block * target)[(0, 0)].re
}

/// `Tr rho^2` of a Hermitian matrix.
pub fn purity(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|v| v.norm_sqr()).sum()
}

/// `(1 - x) |psi><psi| + x I / 4` on the two-qubit space.
pub fn werner_state(psi: &DVector<Complex64>, x: f64) -> DMatrix<Complex64> {
    let p = psi / Complex64::new(psi.norm(), 0.0);
    &p * p.adjoint() * Complex64::new(1.0 - x, 0.0) + DMatrix::identity(4, 4) * Complex64::new(x / 4.0, 0.0)
}

/// Fidelity of `block` after `|b> -> e^{-i theta} |b>` on each qubit.
fn compensated_fidelity(block: &DMatrix<Complex64>, target: &DVector<Complex64>, theta: [f64; 2]) -> f64 {
    let d = [0.0, theta[1], theta[0], theta[0] + theta[1]];
    let mut f = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            f += target[i].conj() * Complex64::from_polar(1.0, d[j] - d[i]) * block[(i, j)] * target[j];
        }
    }
    f.re
}

/// Maximizes the compensated fidelity over both phases: the analytic phases
/// and a `REFINE_GRID^2` grid seed a local parabolic polish. Never returns a
/// lower fidelity than the starting phases.
fn refine(block: &DMatrix<Complex64>, target: &DVector<Complex64>, start: [f64; 2]) -> ([f64; 2], f64) {
    let f = |t: [f64; 2]| compensated_fidelity(block, target, t);
    let mut best = (start, f(start));
    let step = 2.0 * PI / REFINE_GRID as f64;
    for i in 0..REFINE_GRID {
        for j in 0..REFINE_GRID {
            let t = [start[0] - PI + step * i as f64, start[1] - PI + step * j as f64];
            let v = f(t);
            if v > best.1 {
                best = (t, v);
            }
        }
    }
    let (mut t, mut v) = best;
    let mut h = step;
    while h > 1e-10 {
        let mut moved = false;
        for k in 0..2 {
            let mut lo = t;
            let mut hi = t;
            lo[k] -= h;
            hi[k] += h;
            let (fl, fh) = (f(lo), f(hi));
            let curv = fl + fh - 2.0 * v;
            let mut cand = if fl > fh { lo } else { hi };
            if curv < 0.0 {
                let mut c = t;
                c[k] += 0.5 * h * (fl - fh) / curv;
                if f(c) > f(cand) {
                    cand = c;
                }
            }
            let fc = f(cand);
            if fc > v {
                t = cand;
                v = fc;
                moved = true;
            }
        }
        if !moved {
            h *= 0.5;
        }
    }
    (t, v)
}

/// Fidelity to `target` and purity of the full two-atom state after
/// compensating the phases `theta`, optionally refined numerically.
pub fn fidelity_purity(rho: &TwoAtomDensityMatrix, target: &DVector<Complex64>, theta: [f64; 2], refine_phases: bool) -> MetricsEntry {
    let block = rho.computational_block();
    let (theta, fidelity) = if refine_phases {
        refine(&block, target, theta)
    } else {
        (theta, compensated_fidelity(&block, target, theta))
    };
    MetricsEntry { fidelity, purity: rho.purity(), theta }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::compensate;
    use crate::dynamics::density::computational_indices;

    fn embed(block: &DMatrix<Complex64>) -> TwoAtomDensityMatrix {
        let mut r = TwoAtomDensityMatrix::zeros();
        let idx = computational_indices();
        for i in 0..4 {
            for j in 0..4 {
                r.m[(idx[i], idx[j])] = block[(i, j)];
            }
        }
        r
    }

    #[test]
    fn ideal_state_has_unit_fidelity_and_purity() {
        let t = cz_target();
        let m = fidelity_purity(&embed(&(&t * t.adjoint())), &t, [0.0, 0.0], false);
        assert!((m.fidelity - 1.0).abs() < 1e-14 && (m.purity - 1.0).abs() < 1e-14);
    }

    #[test]
    fn maximally_mixed_gives_quarter() {
        let t = cz_target();
        let m = fidelity_purity(&embed(&werner_state(&t, 1.0)), &t, [0.3, -1.0], true);
        assert!((m.fidelity - 0.25).abs() < 1e-12 && (m.purity - 0.25).abs() < 1e-12);
    }

    #[test]
    fn refinement_recovers_hidden_phases() {
        let t = cz_target();
        let rho = embed(&(&t * t.adjoint()));
        let rotated = compensate(&rho, [-0.7, 1.9]);
        let plain = fidelity_purity(&rotated, &t, [0.0, 0.0], false);
        let refined = fidelity_purity(&rotated, &t, [0.0, 0.0], true);
        assert!(plain.fidelity < 0.9);
        assert!((refined.fidelity - 1.0).abs() < 1e-12, "{}", refined.fidelity);
    }

    #[test]
    fn compensation_matches_full_state_rotation() {
        let t = cz_target();
        let rho = embed(&werner_state(&DVector::from_fn(4, |i, _| Complex64::new(1.0 + i as f64, 0.5 * i as f64)), 0.2));
        let theta = [0.4, -1.3];
        let direct = fidelity(&compensate(&rho, theta).computational_block(), &t);
        let fast = fidelity_purity(&rho, &t, theta, false).fidelity;
        assert!((direct - fast).abs() < 1e-14);
    }

    #[test]
    fn werner_fidelity_exceeds_purity() {
        let t = cz_target();
        for x in [0.01, 0.1, 0.3, 0.5] {
            let w = werner_state(&t, x);
            assert!(fidelity(&w, &t) > purity(&w));
        }
        let w = werner_state(&t, 0.0);
        assert!((fidelity(&w, &t) - purity(&w)).abs() < 1e-15);
    }
}
