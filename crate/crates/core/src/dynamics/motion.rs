//! Joint spin-motion states, tracing out vibrational modes, and the recoil
//! fidelity bound for displaced motional states.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::atomic_physics::species::HBAR;
use crate::error::{Error, Result};

/// Pure state over `spin x mode_1 x ... x mode_k`, spin index slowest.
#[derive(Clone, Debug, PartialEq)]
pub struct JointState {
    pub spin_dim: usize,
    pub mode_dims: Vec<usize>,
    pub amplitudes: DVector<Complex64>,
}

impl JointState {
    pub fn new(spin_dim: usize, mode_dims: Vec<usize>, amplitudes: DVector<Complex64>) -> Result<Self> {
        let motion: usize = mode_dims.iter().product();
        if amplitudes.len() != spin_dim * motion {
            return Err(Error::Argument(format!(
                "joint state has {} amplitudes, expected {}",
                amplitudes.len(),
                spin_dim * motion
            )));
        }
        Ok(Self { spin_dim, mode_dims, amplitudes })
    }

    /// Superposition `sum_k c_k |spin_k> (x) |motion_k>` of product terms.
    pub fn from_terms(spin_dim: usize, terms: &[(Complex64, usize, Vec<DVector<Complex64>>)]) -> Result<Self> {
        let first = terms.first().ok_or_else(|| Error::Argument("no terms".into()))?;
        let mode_dims: Vec<usize> = first.2.iter().map(|v| v.len()).collect();
        let motion: usize = mode_dims.iter().product();
        let mut amps = DVector::zeros(spin_dim * motion);
        for (c, spin, modes) in terms {
            if *spin >= spin_dim || modes.iter().map(|v| v.len()).collect::<Vec<_>>() != mode_dims {
                return Err(Error::Argument("inconsistent joint-state term".into()));
            }
            let prod = kron_all(modes);
            for (k, v) in prod.iter().enumerate() {
                amps[spin * motion + k] += c * v;
            }
        }
        Self::new(spin_dim, mode_dims, amps)
    }

    fn motion_dim(&self) -> usize {
        self.mode_dims.iter().product()
    }
}

fn kron_all(v: &[DVector<Complex64>]) -> DVector<Complex64> {
    let mut out = DVector::from_element(1, Complex64::new(1.0, 0.0));
    for f in v {
        out = out.kronecker(f);
    }
    out
}

/// Truncated coherent state `|alpha>` over Fock states `0..=n_max`.
///
/// Fails when the discarded tail exceeds `tail`.
pub fn coherent_state(alpha: Complex64, n_max: usize, tail: f64) -> Result<DVector<Complex64>> {
    let mut v = DVector::zeros(n_max + 1);
    let mut c = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 0..=n_max {
        v[n] = c;
        c *= alpha / ((n + 1) as f64).sqrt();
    }
    let missing = 1.0 - v.norm_squared();
    if missing > tail {
        return Err(Error::Resolution(format!(
            "Fock cutoff {n_max} leaves {missing:.3e} of a coherent state with |alpha| = {:.3}",
            alpha.norm()
        )));
    }
    Ok(v)
}

/// `sum_k w_k Tr_motion |psi_k><psi_k|` over a weighted ensemble (e.g. Gibbs-weighted
/// initial Fock states).
pub fn trace_out_motion(ensemble: &[(f64, JointState)]) -> Result<DMatrix<Complex64>> {
    let first = &ensemble.first().ok_or_else(|| Error::Argument("empty ensemble".into()))?.1;
    let d = first.spin_dim;
    let mut rho = DMatrix::zeros(d, d);
    for (w, st) in ensemble {
        if st.spin_dim != d {
            return Err(Error::Argument("ensemble members differ in spin dimension".into()));
        }
        let m = st.motion_dim();
        // reshape to spin x motion; rho = Psi Psi^dagger
        let psi = DMatrix::from_fn(d, m, |i, k| st.amplitudes[i * m + k]);
        rho += (&psi * psi.adjoint()) * Complex64::new(*w, 0.0);
    }
    Ok(rho)
}

/// Fidelity bound `1/4 [1 + e^{-|a|^2/2} + e^{-|a'|^2/2} + e^{-(|a|^2+|a'|^2)/2}]`
/// for final motional displacements `alpha` (atom A) and `alpha_prime` (atom B).
pub fn recoil_fidelity_estimate(alpha: &[Complex64], alpha_prime: &[Complex64]) -> f64 {
    let a: f64 = alpha.iter().map(|v| v.norm_sqr()).sum();
    let b: f64 = alpha_prime.iter().map(|v| v.norm_sqr()).sum();
    0.25 * (1.0 + (-0.5 * a).exp() + (-0.5 * b).exp() + (-0.5 * (a + b)).exp())
}

/// Dimensionless displacement of a trap mode after `time_in_r` in the kicked
/// level: the wavepacket moves by `hbar q t / m`, measured in units of twice the
/// zero-point length `sqrt(hbar / 2 m omega)`. Valid for `omega t << 1`.
pub fn recoil_displacement(q: f64, mass: f64, omega: f64, time_in_r: f64) -> f64 {
    let shift = HBAR * q * time_in_r / mass;
    let zpf = (HBAR / (2.0 * mass * omega)).sqrt();
    shift / (2.0 * zpf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn fock(n: usize, dim: usize) -> DVector<Complex64> {
        let mut v = DVector::zeros(dim);
        v[n] = c(1.0);
        v
    }

    /// Spin basis aa, ab, ba, bb; final state with displaced motion of whichever atom is in b.
    fn recoil_state(alpha: Complex64, alpha_p: Complex64, n_max: usize) -> JointState {
        let z = coherent_state(c(0.0), n_max, 1e-15).unwrap();
        let ca = coherent_state(alpha, n_max, 1e-12).unwrap();
        let cb = coherent_state(alpha_p, n_max, 1e-12).unwrap();
        let h = 0.5;
        JointState::from_terms(
            4,
            &[
                (c(h), 0, vec![z.clone(), z.clone()]),
                (c(-h), 2, vec![ca.clone(), z.clone()]),
                (c(-h), 1, vec![z.clone(), cb.clone()]),
                (c(-h), 3, vec![ca, cb]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn traced_recoil_state_matches_closed_form() {
        let target = DVector::from_vec(vec![c(0.5), c(-0.5), c(-0.5), c(-0.5)]);
        for (a, b) in [(0.0, 0.0), (0.05, 0.03), (0.3, -0.2), (1.1, 0.7)] {
            let alpha = Complex64::new(a, 0.4 * a);
            let alpha_p = Complex64::new(b, 0.0);
            let rho = trace_out_motion(&[(1.0, recoil_state(alpha, alpha_p, 40))]).unwrap();
            let f = (target.adjoint() * &rho * &target)[(0, 0)].re;
            let expected = recoil_fidelity_estimate(&[alpha], &[alpha_p]);
            assert!((f - expected).abs() < 1e-8, "{f} vs {expected}");
        }
    }

    #[test]
    fn zero_temperature_is_pure_projection() {
        let st = JointState::from_terms(2, &[(c(0.6), 0, vec![fock(0, 5)]), (c(0.8), 1, vec![fock(0, 5)])]).unwrap();
        let rho = trace_out_motion(&[(1.0, st)]).unwrap();
        let purity: f64 = rho.iter().map(|v| v.norm_sqr()).sum();
        assert!((purity - 1.0).abs() < 1e-14);
        assert!((rho[(0, 1)].re - 0.48).abs() < 1e-14);
    }

    #[test]
    fn product_state_keeps_spin_purity() {
        let motion = coherent_state(Complex64::new(0.7, 0.2), 30, 1e-12).unwrap();
        let st = JointState::from_terms(
            2,
            &[(c(0.6), 0, vec![motion.clone()]), (Complex64::new(0.0, 0.8), 1, vec![motion])],
        )
        .unwrap();
        let rho = trace_out_motion(&[(0.3, st.clone()), (0.7, st)]).unwrap();
        let purity: f64 = rho.iter().map(|v| v.norm_sqr()).sum();
        assert!((purity - 1.0).abs() < 1e-10);
    }

    #[test]
    fn truncation_is_reported() {
        assert!(coherent_state(c(3.0), 5, 1e-6).is_err());
        assert!(coherent_state(c(0.1), 5, 1e-6).is_ok());
    }

    #[test]
    fn fidelity_limits() {
        assert_eq!(recoil_fidelity_estimate(&[c(0.0); 3], &[c(0.0); 3]), 1.0);
        let big = recoil_fidelity_estimate(&[c(40.0)], &[c(0.0), c(50.0)]);
        assert!((big - 0.25).abs() < 1e-12);
    }

    #[test]
    fn displacement_scaling() {
        let a = recoil_displacement(2e7, 1.4e-25, 2.0 * std::f64::consts::PI * 20e3, 400e-9);
        let b = recoil_displacement(2e7, 1.4e-25, 2.0 * std::f64::consts::PI * 80e3, 200e-9);
        // t sqrt(omega) is equal for both
        assert!((a / b - 1.0).abs() < 1e-12);
    }
}
