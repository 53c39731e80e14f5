//! One-dimensional momentum grids, thermal motional states, and integration of
//! the momentum-space amplitude equations with finite-beam differential terms.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::propagator::{frame_propagator, Mat3};
use crate::atomic_physics::species::{HBAR, K_B};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Trap frequencies and axial temperature at release.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrapSpec {
    /// Transverse trap angular frequency (rad/s); transverse motion is in its ground state.
    pub omega_perp: f64,
    /// Axial trap angular frequency (rad/s).
    pub omega_par: f64,
    /// Axial temperature in microkelvin.
    pub temperature_uk: f64,
}

/// Thermal (Gibbs) state of one harmonic mode.
#[derive(Clone, Debug, PartialEq)]
pub struct ThermalMode {
    pub omega: f64,
    pub temperature: f64,
    pub mass: f64,
}

impl ThermalMode {
    pub fn new(omega: f64, temperature_uk: f64, mass: f64) -> Result<Self> {
        if !(omega > 0.0 && mass > 0.0) {
            return Err(Error::Argument("trap frequency and mass must be positive".into()));
        }
        if !(temperature_uk >= 0.0 && temperature_uk.is_finite()) {
            return Err(Error::Argument(format!("temperature must be non-negative, got {temperature_uk}")));
        }
        Ok(Self { omega, temperature: temperature_uk * 1e-6, mass })
    }

    pub fn ground(omega: f64, mass: f64) -> Result<Self> {
        Self::new(omega, 0.0, mass)
    }

    /// Boltzmann ratio `exp(-hbar omega / k_B T)`.
    pub fn boltzmann_ratio(&self) -> f64 {
        if self.temperature == 0.0 {
            0.0
        } else {
            (-HBAR * self.omega / (K_B * self.temperature)).exp()
        }
    }

    pub fn mean_occupation(&self) -> f64 {
        let x = self.boltzmann_ratio();
        x / (1.0 - x)
    }

    /// Smallest cutoff whose neglected Gibbs tail is below `tail`.
    pub fn fock_cutoff(&self, tail: f64, limit: usize) -> Result<usize> {
        let x = self.boltzmann_ratio();
        if x == 0.0 {
            return Ok(0);
        }
        // tail beyond N is x^(N+1)
        let n = (tail.ln() / x.ln()).ceil() as i64 - 1;
        let n = n.max(0) as usize;
        if n > limit {
            return Err(Error::Resolution(format!(
                "Fock cutoff {n} needed for Gibbs tail < {tail:e} exceeds the limit {limit}"
            )));
        }
        Ok(n)
    }

    /// Gibbs weights over `0..=n_max`, renormalized after the cutoff.
    pub fn gibbs_weights(&self, n_max: usize) -> Vec<f64> {
        let x = self.boltzmann_ratio();
        let mut w: Vec<f64> = (0..=n_max).map(|n| x.powi(n as i32)).collect();
        let s: f64 = w.iter().sum();
        w.iter_mut().for_each(|v| *v /= s);
        w
    }

    /// Momentum scale `sqrt(hbar m omega)`; the ground state is `exp(-p^2 / 2 s^2)`.
    pub fn momentum_scale(&self) -> f64 {
        (HBAR * self.mass * self.omega).sqrt()
    }

    pub fn length_scale(&self) -> f64 {
        (HBAR / (self.mass * self.omega)).sqrt()
    }

    fn coth_factor(&self) -> f64 {
        if self.temperature == 0.0 {
            1.0
        } else {
            1.0 / (HBAR * self.omega / (2.0 * K_B * self.temperature)).tanh()
        }
    }

    /// Thermal momentum standard deviation.
    pub fn momentum_sigma(&self) -> f64 {
        self.momentum_scale() * (0.5 * self.coth_factor()).sqrt()
    }

    /// Thermal position standard deviation.
    pub fn position_sigma(&self) -> f64 {
        self.length_scale() * (0.5 * self.coth_factor()).sqrt()
    }
}

/// Normalized Hermite functions `phi_0..=phi_n_max` at dimensionless `u`.
pub fn hermite_functions(u: f64, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let p0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * u * u).exp();
    out.push(p0);
    if n_max >= 1 {
        out.push(std::f64::consts::SQRT_2 * u * p0);
    }
    for n in 1..n_max {
        let next = (2.0 / (n + 1) as f64).sqrt() * u * out[n] - (n as f64 / (n + 1) as f64).sqrt() * out[n - 1];
        out.push(next);
    }
    out
}

/// Uniform odd-sized momentum grid centred on `p = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumGrid {
    pub axis: usize,
    pub points: Vec<f64>,
    pub spacing: f64,
}

impl MomentumGrid {
    pub fn new(axis: usize, n_points: usize, half_extent: f64) -> Result<Self> {
        if n_points.is_multiple_of(2) || n_points < 3 {
            return Err(Error::Argument(format!("grid needs an odd point count >= 3, got {n_points}")));
        }
        if !(half_extent > 0.0) {
            return Err(Error::Argument("grid extent must be positive".into()));
        }
        let c = (n_points / 2) as f64;
        let spacing = half_extent / c;
        let points = (0..n_points).map(|i| (i as f64 - c) * spacing).collect();
        Ok(Self { axis, points, spacing })
    }

    /// Grid spanning `extent_widths` thermal momentum widths of `mode`.
    pub fn for_mode(axis: usize, mode: &ThermalMode, n_points: usize, extent_widths: f64) -> Result<Self> {
        Self::new(axis, n_points, extent_widths * mode.momentum_sigma())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn center(&self) -> usize {
        self.points.len() / 2
    }

    /// Fock state `n` sampled on the grid (amplitude per unit momentum).
    pub fn fock_states(&self, mode: &ThermalMode, n_max: usize) -> Vec<Vec<f64>> {
        let s = mode.momentum_scale();
        let norm = 1.0 / s.sqrt();
        let mut out = vec![Vec::with_capacity(self.len()); n_max + 1];
        for &p in &self.points {
            let h = hermite_functions(p / s, n_max);
            for (n, v) in h.into_iter().enumerate() {
                out[n].push(v * norm);
            }
        }
        out
    }

    /// Thermal momentum density `sum_n w_n |phi_n(p)|^2` at each grid point.
    pub fn thermal_density(&self, mode: &ThermalMode, n_max: usize) -> Vec<f64> {
        let w = mode.gibbs_weights(n_max);
        let s = mode.momentum_scale();
        self.points
            .iter()
            .map(|&p| {
                hermite_functions(p / s, n_max).iter().zip(&w).map(|(h, wn)| wn * h * h).sum::<f64>() / s
            })
            .collect()
    }
}

/// Standard-normal Gauss–Hermite rule: `E[f(X)] ~ sum w_i f(x_i)`, `X ~ N(0, 1)`.
pub fn gauss_hermite(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i + 1 == j || j + 1 == i {
            (i.max(j) as f64).sqrt()
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jacobi);
    let mut rule: Vec<(f64, f64)> =
        (0..n).map(|k| (eig.eigenvalues[k], eig.eigenvectors[(0, k)].powi(2))).collect();
    rule.sort_by(|a, b| a.0.total_cmp(&b.0));
    rule
}

/// Amplitudes of `a`, `b`, `r` over a momentum grid; `c_r[i]` belongs to
/// momentum `p_i + hbar q`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumAmplitudes {
    pub c_r: Vec<Complex64>,
    pub c_b: Vec<Complex64>,
    pub c_a: Vec<Complex64>,
}

impl MomentumAmplitudes {
    pub fn zeros(n: usize) -> Self {
        Self { c_r: vec![ZERO; n], c_b: vec![ZERO; n], c_a: vec![ZERO; n] }
    }

    /// Motional wavefunction `phi` placed in internal level `level` (0 = r, 1 = b, 2 = a).
    pub fn from_motion(level: usize, phi: &[f64]) -> Self {
        let mut s = Self::zeros(phi.len());
        let target = s.component_mut(level);
        for (t, &v) in target.iter_mut().zip(phi) {
            *t = Complex64::new(v, 0.0);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.c_b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c_b.is_empty()
    }

    pub fn component(&self, level: usize) -> &[Complex64] {
        match level {
            0 => &self.c_r,
            1 => &self.c_b,
            _ => &self.c_a,
        }
    }

    pub fn component_mut(&mut self, level: usize) -> &mut Vec<Complex64> {
        match level {
            0 => &mut self.c_r,
            1 => &mut self.c_b,
            _ => &mut self.c_a,
        }
    }

    /// `sum (|c_a|^2 + |c_b|^2 + |c_r|^2) dp`.
    pub fn norm(&self, dp: f64) -> f64 {
        dp * self.c_r.iter().chain(&self.c_b).chain(&self.c_a).map(|v| v.norm_sqr()).sum::<f64>()
    }

    /// Probability within `edge` points of either grid boundary.
    pub fn edge_weight(&self, dp: f64, edge: usize) -> f64 {
        let n = self.len();
        let mut s = 0.0;
        for i in (0..edge.min(n)).chain(n.saturating_sub(edge)..n) {
            s += self.c_r[i].norm_sqr() + self.c_b[i].norm_sqr() + self.c_a[i].norm_sqr();
        }
        s * dp
    }

    /// Momentum variance of the ground-level population (`a` and `b`).
    pub fn ground_momentum_variance(&self, grid: &MomentumGrid) -> f64 {
        let mut w = 0.0;
        let mut m1 = 0.0;
        let mut m2 = 0.0;
        for (i, &p) in grid.points.iter().enumerate() {
            let d = self.c_a[i].norm_sqr() + self.c_b[i].norm_sqr();
            w += d;
            m1 += d * p;
            m2 += d * p * p;
        }
        m2 / w - (m1 / w).powi(2)
    }
}

/// Recoil kinematics along the grid axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Kinematics {
    /// Recoil wave-vector component along the grid axis (rad/m).
    pub q: f64,
    pub mass: f64,
}

impl Kinematics {
    /// Doppler and recoil shift `q p / m + hbar q^2 / 2m` of the two-photon resonance.
    pub fn resonance_shift(&self, p: f64) -> f64 {
        self.q * p / self.mass + HBAR * self.q * self.q / (2.0 * self.mass)
    }
}

/// Differential-term coefficients along the beam axis (all zero for plane waves).
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct AxisProfile {
    /// `2 / z*` multiplying `i x` in the two-photon coupling.
    pub coupling_linear: f64,
    /// `1 / z*^2` multiplying `-x^2` in the two-photon coupling.
    pub coupling_quadratic: f64,
    /// `1 / z_R1^2`: axial curvature of the beam-1 light shift.
    pub shift1_quadratic: f64,
    /// `1 / z_R2^2`: axial curvature of the beam-2 light shift.
    pub shift2_quadratic: f64,
}

impl AxisProfile {
    pub fn is_plane_wave(&self) -> bool {
        self.coupling_linear == 0.0
            && self.coupling_quadratic == 0.0
            && self.shift1_quadratic == 0.0
            && self.shift2_quadratic == 0.0
    }
}

/// Parameters of one rectangular pulse (or idle interval) for one atom.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PulseParams {
    /// Effective two-photon Rabi frequency at the atom (zero when idle).
    pub omega: Complex64,
    pub duration: f64,
    /// `w1 + w2 - w~_rb` including blockade shift and any light-shift offset of the atom.
    pub detuning: f64,
    pub shift_a: f64,
    pub shift_b: f64,
    /// Light shift of `|r>` at the focus; enters only through the axial curvature.
    pub shift_r: f64,
}

impl PulseParams {
    pub fn idle(duration: f64, detuning: f64) -> Self {
        Self { omega: ZERO, duration, detuning, shift_a: 0.0, shift_b: 0.0, shift_r: 0.0 }
    }

    /// Detuning `Delta_p` at grid momentum `p`.
    pub fn delta_at(&self, kin: &Kinematics, p: f64) -> f64 {
        self.detuning - kin.resonance_shift(p)
    }

    /// Frame propagator over `t` at momentum `p`.
    pub fn propagator(&self, kin: &Kinematics, p: f64, t: f64) -> Mat3 {
        frame_propagator(self.omega, t, self.delta_at(kin, p), self.shift_b, self.shift_a)
    }
}

/// Numerical controls of the finite-beam integrator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepControl {
    pub steps: usize,
    /// Time since release at the start of the pulse (free flight shifts `x`).
    pub t_release: f64,
    /// Edge-leakage tolerance before a resolution error is raised.
    pub edge_tolerance: f64,
}

fn apply_mat3(m: &[Mat3], amps: &MomentumAmplitudes, adjoint: bool) -> MomentumAmplitudes {
    let n = amps.len();
    let mut out = MomentumAmplitudes::zeros(n);
    for i in 0..n {
        let v = [amps.c_r[i], amps.c_b[i], amps.c_a[i]];
        let u = &m[i];
        let mut w = [ZERO; 3];
        for (r, wr) in w.iter_mut().enumerate() {
            for (c, vc) in v.iter().enumerate() {
                let e = if adjoint { u[c][r].conj() } else { u[r][c] };
                *wr += e * vc;
            }
        }
        out.c_r[i] = w[0];
        out.c_b[i] = w[1];
        out.c_a[i] = w[2];
    }
    out
}

/// `d/dp` with central differences and one-sided closure at the edges.
fn derivative(f: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = f.len();
    let mut d = vec![ZERO; n];
    for i in 1..n - 1 {
        d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    }
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    d
}

/// `d^2/dp^2` with central differences and one-sided closure at the edges.
fn second_derivative(f: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = f.len();
    let mut d = vec![ZERO; n];
    let h2 = h * h;
    for i in 1..n - 1 {
        d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
    }
    if n >= 4 {
        d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
        d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    } else {
        d[0] = d[1];
        d[n - 1] = d[n - 2];
    }
    d
}

/// `x f` and `x^2 f` with `x = i hbar d/dp + p t / m` (free flight since release).
fn position_moments(f: &[Complex64], grid: &MomentumGrid, t: f64, mass: f64) -> (Vec<Complex64>, Vec<Complex64>) {
    let h = grid.spacing;
    let i_hbar = Complex64::new(0.0, HBAR);
    let d1 = derivative(f, h);
    let d2 = second_derivative(f, h);
    let vel = t / mass;
    let mut x1 = vec![ZERO; f.len()];
    let mut x2 = vec![ZERO; f.len()];
    for (i, &p) in grid.points.iter().enumerate() {
        let c = p * vel;
        x1[i] = i_hbar * d1[i] + c * f[i];
        // (i hbar d + c)^2 with c linear in p: -hbar^2 d^2 + 2 i hbar c d + i hbar vel + c^2
        x2[i] = -HBAR * HBAR * d2[i] + 2.0 * i_hbar * c * d1[i] + i_hbar * vel * f[i] + c * c * f[i];
    }
    (x1, x2)
}

/// Applies the position-dependent part `V(x)` of the generator (rad/s).
fn apply_perturbation(
    amps: &MomentumAmplitudes,
    pulse: &PulseParams,
    profile: &AxisProfile,
    grid: &MomentumGrid,
    t: f64,
    mass: f64,
) -> MomentumAmplitudes {
    let n = amps.len();
    let (xr, x2r) = position_moments(&amps.c_r, grid, t, mass);
    let (xb, x2b) = position_moments(&amps.c_b, grid, t, mass);
    let (_, x2a) = position_moments(&amps.c_a, grid, t, mass);
    let i = Complex64::i();
    let mut out = MomentumAmplitudes::zeros(n);
    let half = 0.5 * pulse.omega;
    for k in 0..n {
        // coupling profile g(x) = 2 i x / z* - x^2 / z*^2 acting on b, and g(x)^dagger on r
        let g_b = i * profile.coupling_linear * xb[k] - profile.coupling_quadratic * x2b[k];
        let gd_r = -i * profile.coupling_linear * xr[k] - profile.coupling_quadratic * x2r[k];
        out.c_r[k] = -half * g_b - pulse.shift_r * profile.shift2_quadratic * x2r[k];
        out.c_b[k] = -half.conj() * gd_r - pulse.shift_b * profile.shift1_quadratic * x2b[k];
        out.c_a[k] = -pulse.shift_a * profile.shift1_quadratic * x2a[k];
    }
    out
}

fn axpy(y: &MomentumAmplitudes, a: Complex64, x: &MomentumAmplitudes) -> MomentumAmplitudes {
    let mut out = y.clone();
    for l in 0..3 {
        let (dst, src) = (out.component_mut(l), x.component(l));
        for (d, s) in dst.iter_mut().zip(src) {
            *d += a * s;
        }
    }
    out
}

/// Propagates a set of amplitude vectors through one pulse, returning
/// snapshots at `samples + 1` equally spaced times (including both ends).
///
/// The per-momentum generator is solved exactly; the finite-beam terms are
/// integrated in its interaction picture with classical RK4, so a plane-wave
/// profile reproduces the closed-form propagator exactly.
pub fn evolve_ensemble(
    states: &[MomentumAmplitudes],
    pulse: &PulseParams,
    profile: &AxisProfile,
    grid: &MomentumGrid,
    kin: &Kinematics,
    control: &StepControl,
    samples: usize,
) -> Result<Vec<Vec<MomentumAmplitudes>>> {
    let samples = samples.max(1);
    let tau = pulse.duration;
    let mut snaps: Vec<Vec<MomentumAmplitudes>> = Vec::with_capacity(samples + 1);
    if profile.is_plane_wave() || pulse.omega.norm() == 0.0 && is_shift_free(pulse, profile) {
        for s in 0..=samples {
            let t = tau * s as f64 / samples as f64;
            let u: Vec<Mat3> = grid.points.iter().map(|&p| pulse.propagator(kin, p, t)).collect();
            snaps.push(states.iter().map(|st| apply_mat3(&u, st, false)).collect());
        }
        return Ok(snaps);
    }
    let per_sample = control.steps.div_ceil(samples).max(1);
    let h = tau / (samples * per_sample) as f64;
    let u_at = |t: f64| -> Vec<Mat3> { grid.points.iter().map(|&p| pulse.propagator(kin, p, t)).collect() };
    let mut inter: Vec<MomentumAmplitudes> = states.to_vec();
    snaps.push(states.to_vec());
    let mi = Complex64::new(0.0, -1.0);
    let mut u_now = u_at(0.0);
    for s in 0..samples {
        for k in 0..per_sample {
            let t0 = h * (s * per_sample + k) as f64;
            let u_mid = u_at(t0 + 0.5 * h);
            let u_end = u_at(t0 + h);
            let rhs = |psi: &MomentumAmplitudes, u: &[Mat3], t: f64| -> MomentumAmplitudes {
                let lab = apply_mat3(u, psi, false);
                let v = apply_perturbation(&lab, pulse, profile, grid, control.t_release + t, kin.mass);
                let mut back = apply_mat3(u, &v, true);
                for l in 0..3 {
                    back.component_mut(l).iter_mut().for_each(|z| *z *= mi);
                }
                back
            };
            for psi in inter.iter_mut() {
                let k1 = rhs(psi, &u_now, t0);
                let k2 = rhs(&axpy(psi, Complex64::new(0.5 * h, 0.0), &k1), &u_mid, t0 + 0.5 * h);
                let k3 = rhs(&axpy(psi, Complex64::new(0.5 * h, 0.0), &k2), &u_mid, t0 + 0.5 * h);
                let k4 = rhs(&axpy(psi, Complex64::new(h, 0.0), &k3), &u_end, t0 + h);
                let mut next = axpy(psi, Complex64::new(h / 6.0, 0.0), &k1);
                next = axpy(&next, Complex64::new(h / 3.0, 0.0), &k2);
                next = axpy(&next, Complex64::new(h / 3.0, 0.0), &k3);
                next = axpy(&next, Complex64::new(h / 6.0, 0.0), &k4);
                *psi = next;
            }
            u_now = u_end;
        }
        snaps.push(inter.iter().map(|psi| apply_mat3(&u_now, psi, false)).collect());
    }
    let edge = (grid.len() / 50).max(2);
    for psi in snaps.last().expect("non-empty") {
        let total = psi.norm(grid.spacing);
        let w = psi.edge_weight(grid.spacing, edge);
        if w > control.edge_tolerance * total.max(f64::MIN_POSITIVE) {
            return Err(Error::Resolution(format!(
                "probability {w:.3e} reached the momentum-grid boundary; widen the grid"
            )));
        }
    }
    Ok(snaps)
}

fn is_shift_free(pulse: &PulseParams, profile: &AxisProfile) -> bool {
    (pulse.shift_a == 0.0 && pulse.shift_b == 0.0 && pulse.shift_r == 0.0)
        || (profile.shift1_quadratic == 0.0 && profile.shift2_quadratic == 0.0)
}

/// Single-state convenience wrapper over [`evolve_ensemble`].
pub fn momentum_space_step(
    amps: &MomentumAmplitudes,
    pulse: &PulseParams,
    profile: &AxisProfile,
    grid: &MomentumGrid,
    kin: &Kinematics,
    control: &StepControl,
) -> Result<MomentumAmplitudes> {
    let mut snaps = evolve_ensemble(std::slice::from_ref(amps), pulse, profile, grid, kin, control, 1)?;
    Ok(snaps.pop().expect("final snapshot").pop().expect("one state"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atomic_physics::species::SpeciesData;
    use crate::dynamics::propagator::plane_wave_step;
    use std::f64::consts::PI;

    fn mode(t_uk: f64) -> ThermalMode {
        ThermalMode::new(2.0 * PI * 20e3, t_uk, SpeciesData::rb87().mass).unwrap()
    }

    #[test]
    fn hermite_functions_are_orthonormal() {
        let n_max = 40;
        let h = 0.01;
        let mut gram = vec![vec![0.0; n_max + 1]; n_max + 1];
        let mut u = -15.0;
        while u <= 15.0 {
            let f = hermite_functions(u, n_max);
            for i in 0..=n_max {
                for j in 0..=n_max {
                    gram[i][j] += f[i] * f[j] * h;
                }
            }
            u += h;
        }
        for i in 0..=n_max {
            for j in 0..=n_max {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((gram[i][j] - e).abs() < 1e-9, "{i} {j} {}", gram[i][j]);
            }
        }
    }

    #[test]
    fn gibbs_cutoff_and_weights() {
        let m = mode(10.0);
        let n = m.fock_cutoff(1e-6, 10_000).unwrap();
        let x = m.boltzmann_ratio();
        assert!(x.powi(n as i32 + 1) < 1e-6);
        assert!(x.powi(n as i32) >= 1e-6);
        let w = m.gibbs_weights(n);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(mode(0.0).fock_cutoff(1e-6, 10).unwrap(), 0);
        assert!(m.fock_cutoff(1e-6, 10).is_err());
    }

    #[test]
    fn thermal_density_matches_gaussian() {
        for t in [0.0, 5.0, 10.0] {
            let m = mode(t);
            let n = m.fock_cutoff(1e-10, 10_000).unwrap();
            let grid = MomentumGrid::for_mode(2, &m, 129, 6.0).unwrap();
            let d = grid.thermal_density(&m, n);
            let s = m.momentum_sigma();
            let total: f64 = d.iter().sum::<f64>() * grid.spacing;
            assert!((total - 1.0).abs() < 1e-7, "{total}");
            for (i, &p) in grid.points.iter().enumerate() {
                let g = (-p * p / (2.0 * s * s)).exp() / (2.0 * PI * s * s).sqrt();
                assert!((d[i] - g).abs() < 1e-8 * g.max(1e-3 / s), "T={t} p={p}");
            }
        }
    }

    #[test]
    fn gauss_hermite_moments() {
        let r = gauss_hermite(6);
        let m0: f64 = r.iter().map(|(_, w)| w).sum();
        let m2: f64 = r.iter().map(|(x, w)| w * x * x).sum();
        let m4: f64 = r.iter().map(|(x, w)| w * x.powi(4)).sum();
        let m10: f64 = r.iter().map(|(x, w)| w * x.powi(10)).sum();
        assert!((m0 - 1.0).abs() < 1e-13);
        assert!((m2 - 1.0).abs() < 1e-12);
        assert!((m4 - 3.0).abs() < 1e-11);
        assert!((m10 - 945.0).abs() < 1e-8);
    }

    fn setup() -> (MomentumGrid, Kinematics, ThermalMode) {
        let sp = SpeciesData::rb87();
        let m = mode(0.0);
        let grid = MomentumGrid::for_mode(2, &m, 129, 8.0).unwrap();
        (grid, Kinematics { q: sp.counter_propagating_q(), mass: sp.mass }, m)
    }

    #[test]
    fn plane_wave_limit_is_pointwise_closed_form() {
        let (grid, kin, m) = setup();
        let phi = &grid.fock_states(&m, 0)[0];
        let amps = MomentumAmplitudes::from_motion(1, phi);
        let omega = Complex64::from_polar(2.0 * PI * 3e6, 0.3);
        let pulse = PulseParams { omega, duration: PI / omega.norm(), detuning: 0.0, shift_a: 0.0, shift_b: 0.0, shift_r: 0.0 };
        let control = StepControl { steps: 200, t_release: 0.0, edge_tolerance: 1e-6 };
        let out = momentum_space_step(&amps, &pulse, &AxisProfile::default(), &grid, &kin, &control).unwrap();
        for (i, &p) in grid.points.iter().enumerate() {
            let d = pulse.delta_at(&kin, p);
            let v = plane_wave_step([ZERO, Complex64::new(phi[i], 0.0), ZERO], omega, pulse.duration, d);
            // frame: r rotates by exp(i Delta tau)
            let r = v[0] * Complex64::from_polar(1.0, d * pulse.duration);
            assert!((out.c_r[i] - r).norm() < 1e-10 * phi[grid.center()]);
            assert!((out.c_b[i] - v[1]).norm() < 1e-10 * phi[grid.center()]);
        }
    }

    fn finite_profile() -> AxisProfile {
        let zr1 = PI * (2e-6f64).powi(2) / 780e-9;
        let zr2 = PI * (2e-6f64).powi(2) / 480e-9;
        AxisProfile {
            coupling_linear: 1.0 / zr1 + 1.0 / zr2,
            coupling_quadratic: 0.5 * (1.0 / (zr1 * zr1) + 1.0 / (zr2 * zr2)),
            shift1_quadratic: 1.0 / (zr1 * zr1),
            shift2_quadratic: 1.0 / (zr2 * zr2),
        }
    }

    #[test]
    fn finite_beam_norm_and_convergence() {
        let (grid, kin, m) = setup();
        let phi = &grid.fock_states(&m, 0)[0];
        let amps = MomentumAmplitudes::from_motion(1, phi);
        let omega = Complex64::new(2.0 * PI * 3e6, 0.0);
        let pulse = PulseParams {
            omega,
            duration: PI / omega.norm(),
            detuning: 0.0,
            shift_a: 0.0,
            shift_b: -2.0 * PI * 2e6,
            shift_r: -2.0 * PI * 2e6,
        };
        let profile = finite_profile();
        let run = |steps: usize| {
            let control = StepControl { steps, t_release: 2e-6, edge_tolerance: 1e-6 };
            momentum_space_step(&amps, &pulse, &profile, &grid, &kin, &control).unwrap()
        };
        let coarse = run(200);
        let fine = run(400);
        let n0 = amps.norm(grid.spacing);
        assert!((coarse.norm(grid.spacing) - n0).abs() < 1e-6);
        let mut diff: f64 = 0.0;
        for l in 0..3 {
            for (x, y) in coarse.component(l).iter().zip(fine.component(l)) {
                diff = diff.max((x - y).norm());
            }
        }
        let scale = phi[grid.center()];
        assert!(diff < 1e-8 * scale, "{}", diff / scale);
    }

    #[test]
    fn finite_beam_perturbs_the_state_smoothly() {
        let (grid, kin, m) = setup();
        let phi = &grid.fock_states(&m, 0)[0];
        let amps = MomentumAmplitudes::from_motion(1, phi);
        let omega = Complex64::new(2.0 * PI * 3e6, 0.0);
        let pulse = PulseParams {
            omega,
            duration: 2.0 * PI / omega.norm(),
            detuning: 0.0,
            shift_a: 0.0,
            shift_b: -2.0 * PI * 20e6,
            shift_r: -2.0 * PI * 20e6,
        };
        let control = StepControl { steps: 400, t_release: 0.0, edge_tolerance: 1e-6 };
        let plane = momentum_space_step(&amps, &pulse, &AxisProfile::default(), &grid, &kin, &control).unwrap();
        let infidelity = |scale: f64| {
            let f = finite_profile();
            let prof = AxisProfile {
                coupling_linear: f.coupling_linear * scale,
                coupling_quadratic: f.coupling_quadratic * scale * scale,
                shift1_quadratic: f.shift1_quadratic * scale * scale,
                shift2_quadratic: f.shift2_quadratic * scale * scale,
            };
            let out = momentum_space_step(&amps, &pulse, &prof, &grid, &kin, &control).unwrap();
            let mut ov = ZERO;
            for l in 0..3 {
                for (x, y) in plane.component(l).iter().zip(out.component(l)) {
                    ov += x.conj() * y;
                }
            }
            1.0 - ov.norm_sqr() / (plane.norm(1.0) * out.norm(1.0))
        };
        let full = infidelity(1.0);
        let half = infidelity(0.5);
        assert!(full > 1e-8 && full < 1e-3, "{full}");
        // deviation is between second and fourth order in the inverse beam size
        let ratio = full / half;
        assert!(ratio > 3.5 && ratio < 17.0, "{ratio}");
    }

    /// A quadratic light-shift profile is a harmonic potential `hbar k x^2`;
    /// the momentum variance of a Gaussian state follows the Heisenberg
    /// solution `p cos(W t) - m W x sin(W t)` with `W^2 = 2 hbar k / m`.
    #[test]
    fn light_shift_curvature_heats() {
        let (grid, kin, m) = setup();
        let phi = &grid.fock_states(&m, 0)[0];
        let amps = MomentumAmplitudes::from_motion(1, phi);
        let sx = m.position_sigma();
        let tau = 100e-9;
        let shift_b = -2.0 * PI * 5e6;
        let kappa = 0.08 / (sx * sx * tau);
        let profile = AxisProfile { shift1_quadratic: kappa / shift_b.abs(), ..AxisProfile::default() };
        let pulse = PulseParams { omega: ZERO, duration: tau, detuning: 0.0, shift_a: 0.0, shift_b, shift_r: 0.0 };
        let control = StepControl { steps: 400, t_release: 0.0, edge_tolerance: 1e-6 };
        let out = momentum_space_step(&amps, &pulse, &profile, &grid, &kin, &control).unwrap();
        let v0 = amps.ground_momentum_variance(&grid);
        let v1 = out.ground_momentum_variance(&grid);
        let w = (2.0 * HBAR * kappa / kin.mass).sqrt();
        let (sn, cs) = (w * tau).sin_cos();
        let exact = v0 * cs * cs + (kin.mass * w * sx * sn).powi(2);
        assert!(((v1 - v0) - (exact - v0)).abs() < 1e-2 * (exact - v0), "{} vs {}", v1 - v0, exact - v0);
    }

    #[test]
    fn grid_validation() {
        assert!(MomentumGrid::new(0, 128, 1.0).is_err());
        assert!(MomentumGrid::new(0, 129, 0.0).is_err());
        let g = MomentumGrid::new(0, 129, 6.0).unwrap();
        assert_eq!(g.points[g.center()], 0.0);
        assert!((g.points[128] - 6.0).abs() < 1e-12);
    }
}
