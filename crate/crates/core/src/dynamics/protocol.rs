//! The pi (A) - 2pi (B) - pi (A) blockade protocol.
//!
//! Each atom is propagated separately on its recoil-axis momentum grid. Atom
//! A carries two branches after its first pulse (projected onto `|r>` or not);
//! atom B runs its 2pi pulse unblocked or blockade-shifted accordingly. The
//! motional traces of the branch amplitudes give per-atom Gram blocks, from
//! which the two-atom internal state follows for any qubit input.
//!
//! Transverse directions of the beams (the spectator axes) are handled
//! quasi-statically: the atom samples a fixed position drawn from its
//! thermal distribution, integrated with Gauss–Hermite quadrature.

use nalgebra::{DMatrix, SMatrix};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::density::{CompactRho, TwoAtomDensityMatrix};
use super::momentum::{
    evolve_ensemble, gauss_hermite, AxisProfile, Kinematics, MomentumAmplitudes, MomentumGrid, PulseParams,
    StepControl, ThermalMode, TrapSpec,
};
use crate::atomic_physics::fields::GeometryConfig;
use crate::atomic_physics::levels::{GeometryKind, IDX_A, IDX_B, IDX_R, N_LEVELS};
use crate::beam_optics::{effective_beam_params, GaussianBeam};
use crate::error::{Error, Result};

/// Branch Gram matrix of one atom at one time; index `6 s + 2 alpha + i` with
/// branch `s` (0: control not in `|r>`, 1: control in `|r>`), level `alpha`
/// (0 = a, 1 = b, 2 = r) and initial qubit state `i` (0 = a, 1 = b).
pub type Gram = SMatrix<Complex64, 12, 12>;
/// Thermal weight and motional amplitudes of one input.
type WeightedInput = (f64, Vec<f64>);

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Rectangular-pulse schedule with equal `|Omega|` for all three pulses.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PulseSchedule {
    pub effective_rabi: Complex64,
    pub tau_pi: f64,
    /// Two-photon detuning from the light-shifted, recoil-shifted resonance at `p = 0`.
    pub two_photon_detuning: f64,
    /// Blockade shift of the doubly excited level; `f64::INFINITY` for perfect blockade.
    pub blockade_shift: f64,
}

impl PulseSchedule {
    pub fn new(effective_rabi: Complex64, two_photon_detuning: f64, blockade_shift: f64) -> Result<Self> {
        let om = effective_rabi.norm();
        if !(om > 0.0 && om.is_finite()) {
            return Err(Error::Argument(format!("effective Rabi frequency must be finite and non-zero, got {om}")));
        }
        if !(blockade_shift > 0.0) {
            return Err(Error::Argument(format!("blockade shift must be positive, got {blockade_shift}")));
        }
        Ok(Self { effective_rabi, tau_pi: PI / om, two_photon_detuning, blockade_shift })
    }

    /// Schedule with a prescribed pi time and Rabi phase.
    pub fn from_tau_pi(tau_pi: f64, phase: f64, two_photon_detuning: f64, blockade_shift: f64) -> Result<Self> {
        if !(tau_pi > 0.0 && tau_pi.is_finite()) {
            return Err(Error::Argument(format!("pi time must be positive, got {tau_pi}")));
        }
        Self::new(Complex64::from_polar(PI / tau_pi, phase), two_photon_detuning, blockade_shift)
    }

    pub fn tau_2pi(&self) -> f64 {
        2.0 * self.tau_pi
    }

    pub fn stage_durations(&self) -> [f64; 3] {
        [self.tau_pi, self.tau_2pi(), self.tau_pi]
    }

    pub fn total_duration(&self) -> f64 {
        4.0 * self.tau_pi
    }
}

/// Recoil-axis treatment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MotionModel {
    /// Per-momentum closed-form propagation; thermal trace over the momentum density.
    #[default]
    PlaneWave,
    /// Fock-resolved integration including the axial beam-profile terms.
    FiniteBeam,
}

/// Numerical resolution of the protocol simulation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProtocolControls {
    pub grid_points: usize,
    /// Half-extent of the momentum grid in thermal widths.
    pub grid_extent: f64,
    pub steps_per_pi: usize,
    /// Sample intervals per pi time (the 2pi stage gets twice as many).
    pub samples_per_pulse: usize,
    pub fock_tail: f64,
    pub fock_limit: usize,
    /// Gauss–Hermite nodes per spectator axis.
    pub spectator_nodes: usize,
    pub edge_tolerance: f64,
    pub max_grid_points: usize,
}

impl Default for ProtocolControls {
    fn default() -> Self {
        Self {
            grid_points: 129,
            grid_extent: 6.0,
            steps_per_pi: 200,
            samples_per_pulse: 50,
            fock_tail: 1e-6,
            fock_limit: 4000,
            spectator_nodes: 5,
            edge_tolerance: 1e-6,
            max_grid_points: 4097,
        }
    }
}

/// Light shifts (rad/s) of `a`, `b`, `r` at the beam focus.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct FocusShifts {
    pub a: f64,
    pub b: f64,
    pub r: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolSetup {
    pub schedule: PulseSchedule,
    pub geometry: GeometryKind,
    pub shifts: FocusShifts,
    pub beam1: GaussianBeam,
    pub beam2: GaussianBeam,
    pub trap: TrapSpec,
    pub mass: f64,
    /// Magnitude of the two-photon recoil wave vector along the beam axis; 0 disables recoil.
    pub q: f64,
    pub motion: MotionModel,
    pub controls: ProtocolControls,
}

/// Pulse parameters of one atom at one spectator position.
#[derive(Clone, Copy, Debug, PartialEq)]
struct NodePulses {
    control: PulseParams,
    target: PulseParams,
    blocked: PulseParams,
    idle_detuning: f64,
}

impl ProtocolSetup {
    pub fn recoil_axis(&self) -> usize {
        GeometryConfig::axis_of(self.geometry)
    }

    /// Motional mode along Cartesian `axis`; z (2) is the thermal trap axis.
    pub fn axis_mode(&self, axis: usize) -> Result<ThermalMode> {
        if axis == 2 {
            ThermalMode::new(self.trap.omega_par, self.trap.temperature_uk, self.mass)
        } else {
            ThermalMode::ground(self.trap.omega_perp, self.mass)
        }
    }

    pub fn kinematics(&self) -> Kinematics {
        Kinematics { q: self.q, mass: self.mass }
    }

    /// Axial profile coefficients along the recoil (beam) axis.
    pub fn axis_profile(&self) -> AxisProfile {
        if self.motion == MotionModel::PlaneWave {
            return AxisProfile::default();
        }
        let e = effective_beam_params(&self.beam1, &self.beam2);
        let z1 = self.beam1.rayleigh_range();
        let z2 = self.beam2.rayleigh_range();
        AxisProfile {
            coupling_linear: 2.0 / e.z_star_linear,
            coupling_quadratic: 1.0 / e.z_star_quadratic.powi(2),
            shift1_quadratic: 1.0 / (z1 * z1),
            shift2_quadratic: 1.0 / (z2 * z2),
        }
    }

    /// Detuning of `|r>` in the laser frame while the atom is not illuminated.
    fn idle_detuning(&self, kin: &Kinematics) -> f64 {
        self.schedule.two_photon_detuning + kin.resonance_shift(0.0) + self.shifts.r - self.shifts.b
    }

    fn node_pulses(&self, rho2: f64, kin: &Kinematics) -> NodePulses {
        let s = &self.shifts;
        let sched = &self.schedule;
        let inv_w1 = 1.0 / self.beam1.w0.powi(2);
        let inv_w2 = 1.0 / self.beam2.w0.powi(2);
        let f_omega = 1.0 - rho2 * (inv_w1 + inv_w2);
        let f1 = 1.0 - 2.0 * rho2 * inv_w1;
        let f2 = 1.0 - 2.0 * rho2 * inv_w2;
        let (sa, sb, sr) = (s.a * f1, s.b * f1, s.r * f2);
        let detuning = sched.two_photon_detuning + kin.resonance_shift(0.0) - (sr - s.r) + (sb - s.b);
        let control = PulseParams {
            omega: sched.effective_rabi * f_omega,
            duration: sched.tau_pi,
            detuning,
            shift_a: sa,
            shift_b: sb,
            shift_r: sr,
        };
        let target = PulseParams { duration: sched.tau_2pi(), ..control };
        let blocked = if sched.blockade_shift.is_finite() {
            PulseParams { detuning: detuning - sched.blockade_shift, ..target }
        } else {
            PulseParams { omega: ZERO, ..target }
        };
        NodePulses { control, target, blocked, idle_detuning: self.idle_detuning(kin) }
    }

    /// Spectator positions as `(weight, rho^2)` pairs.
    fn spectator_nodes(&self) -> Result<Vec<(f64, f64)>> {
        let plane = self.beam1.w0.is_infinite() && self.beam2.w0.is_infinite();
        let n = if plane { 1 } else { self.controls.spectator_nodes.max(1) };
        let rule = gauss_hermite(n);
        let axis = self.recoil_axis();
        let sig: Vec<f64> = (0..3)
            .filter(|&k| k != axis)
            .map(|k| self.axis_mode(k).map(|m| m.position_sigma()))
            .collect::<Result<_>>()?;
        let mut nodes = Vec::with_capacity(n * n);
        for &(x, wx) in &rule {
            for &(y, wy) in &rule {
                let rho2 = (sig[0] * x).powi(2) + (sig[1] * y).powi(2);
                nodes.push((wx * wy, rho2));
            }
        }
        Ok(nodes)
    }

    /// Recoil-axis grid and weighted motional input vectors (amplitudes include `sqrt(dp)`).
    fn motional_inputs(&self) -> Result<(MomentumGrid, Vec<WeightedInput>)> {
        let c = &self.controls;
        let axis = self.recoil_axis();
        let mode = self.axis_mode(axis)?;
        let n_max = mode.fock_cutoff(c.fock_tail, c.fock_limit)?;
        match self.motion {
            MotionModel::PlaneWave => {
                let grid = MomentumGrid::for_mode(axis, &mode, c.grid_points, c.grid_extent.max(6.0))?;
                let dens = grid.thermal_density(&mode, n_max);
                let total: f64 = dens.iter().sum::<f64>() * grid.spacing;
                if (total - 1.0).abs() > c.fock_tail.max(1e-9) {
                    return Err(Error::Resolution(format!("momentum grid captures {total:.9} of the thermal density")));
                }
                let phi = dens.iter().map(|d| (d * grid.spacing / total).sqrt()).collect();
                Ok((grid, vec![(1.0, phi)]))
            }
            MotionModel::FiniteBeam => {
                let s = mode.momentum_scale();
                let half = (c.grid_extent.max(6.0) * mode.momentum_sigma()).max(((2 * n_max + 1) as f64).sqrt() * s + 6.0 * s);
                let weights = mode.gibbs_weights(n_max);
                let mut points = c.grid_points;
                loop {
                    let grid = MomentumGrid::new(axis, points, half)?;
                    let fock = grid.fock_states(&mode, n_max);
                    let worst = fock
                        .iter()
                        .map(|f| (1.0 - f.iter().map(|v| v * v).sum::<f64>() * grid.spacing).abs())
                        .fold(0.0, f64::max);
                    if worst <= c.fock_tail {
                        let sq = grid.spacing.sqrt();
                        let inputs = fock
                            .into_iter()
                            .zip(weights)
                            .map(|(f, w)| (w, f.into_iter().map(|v| v * sq).collect()))
                            .collect();
                        return Ok((grid, inputs));
                    }
                    if points >= c.max_grid_points {
                        return Err(Error::Resolution(format!(
                            "{points}-point grid does not resolve Fock states up to {n_max} (norm error {worst:.2e})"
                        )));
                    }
                    points = (2 * points - 1).min(c.max_grid_points | 1);
                }
            }
        }
    }

    fn stage_samples(&self) -> [usize; 3] {
        let s = self.controls.samples_per_pulse.max(1);
        [s, 2 * s, s]
    }

    /// Focus, `p = 0` propagator of one atom (0 = A, 1 = B) over `duration`
    /// inside `stage`, on the nine-level basis. `blocked` selects the
    /// blockade-shifted pulse of atom B; `level_shifts` supplies the light
    /// shifts of levels outside `{a, b, r}` while the atom is illuminated.
    pub fn level_propagator(
        &self,
        atom: usize,
        stage: usize,
        blocked: bool,
        duration: f64,
        level_shifts: &[f64; N_LEVELS],
    ) -> DMatrix<Complex64> {
        let kin = Kinematics { q: self.q, mass: self.mass };
        let np = self.node_pulses(0.0, &kin);
        let pulsed = (atom == 0) != (stage == 1);
        let params = if !pulsed {
            PulseParams::idle(duration, np.idle_detuning)
        } else if atom == 0 {
            PulseParams { duration, ..np.control }
        } else if blocked {
            PulseParams { duration, ..np.blocked }
        } else {
            PulseParams { duration, ..np.target }
        };
        let u = params.propagator(&kin, 0.0, duration);
        let order = [IDX_R, IDX_B, IDX_A];
        let mut out = DMatrix::identity(N_LEVELS, N_LEVELS);
        for (i, &li) in order.iter().enumerate() {
            for (j, &lj) in order.iter().enumerate() {
                out[(li, lj)] = u[i][j];
            }
        }
        if pulsed {
            for (m, &shift) in level_shifts.iter().enumerate() {
                if !order.contains(&m) {
                    out[(m, m)] = Complex64::from_polar(1.0, -shift * duration);
                }
            }
        }
        out
    }

    /// Z rotations `[theta_A, theta_B]` that turn the focus, `p = 0` protocol
    /// into a CZ with the `-1` phase convention; apply as `|b> -> e^{-i theta} |b>`.
    pub fn phase_compensation(&self) -> [f64; 2] {
        let kin = self.kinematics();
        let np = self.node_pulses(0.0, &kin);
        let idle = PulseParams::idle(self.schedule.tau_2pi(), np.idle_detuning);
        let u1 = np.control.propagator(&kin, 0.0, np.control.duration);
        let ui = idle.propagator(&kin, 0.0, idle.duration);
        let ua = super::propagator::mat3_mul(&u1, &super::propagator::mat3_mul(&ui, &u1));
        let ub = np.target.propagator(&kin, 0.0, np.target.duration);
        // (r, b, a) ordering
        let theta = |u: &super::propagator::Mat3| (u[1][1] / u[2][2]).arg() - PI;
        [theta(&ua), theta(&ub)]
    }
}

/// Time-resolved per-atom Gram blocks; independent of the qubit input.
#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolBlocks {
    pub times: Vec<f64>,
    /// Stage (0, 1, 2) each sample belongs to; boundary samples belong to the earlier stage.
    pub stages: Vec<usize>,
    pub control: Vec<Gram>,
    pub target: Vec<Gram>,
}

/// Internal two-atom state along the protocol.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub stages: Vec<usize>,
    pub states: Vec<CompactRho>,
}

impl Trajectory {
    pub fn final_state(&self) -> &CompactRho {
        self.states.last().expect("trajectory has samples")
    }

    pub fn final_density(&self) -> TwoAtomDensityMatrix {
        TwoAtomDensityMatrix::from_compact(self.final_state())
    }
}

/// Two-qubit density matrix over `aa, ab, ba, bb` from amplitudes.
pub fn qubit_density(psi: &[Complex64; 4]) -> DMatrix<Complex64> {
    DMatrix::from_fn(4, 4, |i, j| psi[i] * psi[j].conj())
}

fn gram_of(branches: &[[&MomentumAmplitudes; 2]; 2]) -> Gram {
    let mut vecs: Vec<&[Complex64]> = Vec::with_capacity(12);
    for br in branches {
        for alpha in 0..3 {
            for st in br {
                // compact level alpha (a, b, r) is propagation component 2 - alpha (r, b, a)
                vecs.push(st.component(2 - alpha));
            }
        }
    }
    let mut g = Gram::zeros();
    for u in 0..12 {
        for v in u..12 {
            let s: Complex64 = vecs[u].iter().zip(vecs[v]).map(|(x, y)| x * y.conj()).sum();
            g[(u, v)] = s;
            g[(v, u)] = s.conj();
        }
    }
    g
}

fn project(st: &MomentumAmplitudes, keep_r: bool) -> MomentumAmplitudes {
    let n = st.len();
    if keep_r {
        MomentumAmplitudes { c_r: st.c_r.clone(), c_b: vec![ZERO; n], c_a: vec![ZERO; n] }
    } else {
        MomentumAmplitudes { c_r: vec![ZERO; n], c_b: st.c_b.clone(), c_a: st.c_a.clone() }
    }
}

struct AtomRun<'a> {
    setup: &'a ProtocolSetup,
    grid: &'a MomentumGrid,
    kin: Kinematics,
    profile: AxisProfile,
    starts: [f64; 3],
    samples: [usize; 3],
}

impl AtomRun<'_> {
    fn evolve(&self, states: &[MomentumAmplitudes], pulse: &PulseParams, stage: usize) -> Result<Vec<Vec<MomentumAmplitudes>>> {
        let c = &self.setup.controls;
        let steps = ((c.steps_per_pi as f64) * pulse.duration / self.setup.schedule.tau_pi).ceil() as usize;
        let control = StepControl { steps: steps.max(1), t_release: self.starts[stage], edge_tolerance: c.edge_tolerance };
        evolve_ensemble(states, pulse, &self.profile, self.grid, &self.kin, &control, self.samples[stage])
    }

    fn inputs(phi: &[f64]) -> Vec<MomentumAmplitudes> {
        vec![MomentumAmplitudes::from_motion(2, phi), MomentumAmplitudes::from_motion(1, phi)]
    }

    /// Gram blocks of the control atom over all samples.
    fn control(&self, phi: &[f64], np: &NodePulses) -> Result<Vec<Gram>> {
        let sched = &self.setup.schedule;
        let zero = MomentumAmplitudes::zeros(phi.len());
        let s1 = self.evolve(&Self::inputs(phi), &np.control, 0)?;
        let end = s1.last().expect("snapshots");
        let split: Vec<MomentumAmplitudes> =
            [false, true].iter().flat_map(|&r| end.iter().map(move |st| project(st, r))).collect();
        let s2 = self.evolve(&split, &PulseParams::idle(sched.tau_2pi(), np.idle_detuning), 1)?;
        let s3 = self.evolve(s2.last().expect("snapshots"), &np.control, 2)?;
        let mut out = Vec::new();
        for snap in &s1 {
            out.push(gram_of(&[[&snap[0], &snap[1]], [&zero, &zero]]));
        }
        for snaps in [&s2, &s3] {
            for snap in snaps.iter().skip(1) {
                out.push(gram_of(&[[&snap[0], &snap[1]], [&snap[2], &snap[3]]]));
            }
        }
        Ok(out)
    }

    /// Gram blocks of the target atom over all samples.
    fn target(&self, phi: &[f64], np: &NodePulses) -> Result<Vec<Gram>> {
        let sched = &self.setup.schedule;
        let s1 = self.evolve(&Self::inputs(phi), &PulseParams::idle(sched.tau_pi, np.idle_detuning), 0)?;
        let end = s1.last().expect("snapshots").clone();
        let normal = self.evolve(&end, &np.target, 1)?;
        let blocked = self.evolve(&end, &np.blocked, 1)?;
        let mut last: Vec<MomentumAmplitudes> = normal.last().expect("snapshots").clone();
        last.extend(blocked.last().expect("snapshots").iter().cloned());
        let s3 = self.evolve(&last, &PulseParams::idle(sched.tau_pi, np.idle_detuning), 2)?;
        let mut out = Vec::new();
        for snap in &s1 {
            out.push(gram_of(&[[&snap[0], &snap[1]], [&snap[0], &snap[1]]]));
        }
        for (n, b) in normal.iter().zip(&blocked).skip(1) {
            out.push(gram_of(&[[&n[0], &n[1]], [&b[0], &b[1]]]));
        }
        for snap in s3.iter().skip(1) {
            out.push(gram_of(&[[&snap[0], &snap[1]], [&snap[2], &snap[3]]]));
        }
        Ok(out)
    }
}

/// Runs both atoms through the protocol and returns their Gram blocks.
pub fn simulate_blocks(setup: &ProtocolSetup) -> Result<ProtocolBlocks> {
    let (grid, inputs) = setup.motional_inputs()?;
    let nodes = setup.spectator_nodes()?;
    let kin = setup.kinematics();
    let durations = setup.schedule.stage_durations();
    let samples = setup.stage_samples();
    let starts = [0.0, durations[0], durations[0] + durations[1]];
    let run = AtomRun { setup, grid: &grid, kin, profile: setup.axis_profile(), starts, samples };

    let mut times = Vec::new();
    let mut stages = Vec::new();
    for k in 0..3 {
        let first = if k == 0 { 0 } else { 1 };
        for j in first..=samples[k] {
            times.push(starts[k] + durations[k] * j as f64 / samples[k] as f64);
            stages.push(if j == 0 { 0 } else { k });
        }
    }

    let tasks: Vec<(f64, f64, usize)> = nodes
        .iter()
        .flat_map(|&(wn, rho2)| inputs.iter().enumerate().map(move |(v, (wv, _))| (wn * wv, rho2, v)))
        .filter(|t| t.0 > 0.0)
        .collect();
    let results: Vec<Result<(Vec<Gram>, Vec<Gram>)>> = tasks
        .par_iter()
        .map(|&(_, rho2, v)| {
            let np = setup.node_pulses(rho2, &kin);
            let phi = &inputs[v].1;
            Ok((run.control(phi, &np)?, run.target(phi, &np)?))
        })
        .collect();

    let n = times.len();
    let mut control = vec![Gram::zeros(); n];
    let mut target = vec![Gram::zeros(); n];
    for (task, res) in tasks.iter().zip(results) {
        let (gc, gt) = res?;
        let w = Complex64::new(task.0, 0.0);
        for k in 0..n {
            control[k] += gc[k] * w;
            target[k] += gt[k] * w;
        }
    }
    Ok(ProtocolBlocks { times, stages, control, target })
}

/// Two-atom state from per-atom Gram blocks and a 4x4 qubit input.
pub fn combine(rho_in: &DMatrix<Complex64>, ga: &Gram, gb: &Gram) -> CompactRho {
    let mut out = CompactRho::zeros();
    for s in 0..2 {
        for sp in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    for ip in 0..2 {
                        for jp in 0..2 {
                            let c = rho_in[(2 * i + j, 2 * ip + jp)];
                            if c == ZERO {
                                continue;
                            }
                            for al in 0..3 {
                                for alp in 0..3 {
                                    let xa = c * ga[(6 * s + 2 * al + i, 6 * sp + 2 * alp + ip)];
                                    if xa == ZERO {
                                        continue;
                                    }
                                    for be in 0..3 {
                                        for bep in 0..3 {
                                            out[(3 * al + be, 3 * alp + bep)] +=
                                                xa * gb[(6 * s + 2 * be + j, 6 * sp + 2 * bep + jp)];
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

impl ProtocolBlocks {
    pub fn trajectory(&self, rho_in: &DMatrix<Complex64>) -> Trajectory {
        let states = self.control.iter().zip(&self.target).map(|(a, b)| combine(rho_in, a, b)).collect();
        Trajectory { times: self.times.clone(), stages: self.stages.clone(), states }
    }

    pub fn final_state(&self, rho_in: &DMatrix<Complex64>) -> CompactRho {
        combine(rho_in, self.control.last().expect("samples"), self.target.last().expect("samples"))
    }
}

/// Coherent evolution of a two-qubit input through the protocol.
pub fn apply_protocol(rho_in: &DMatrix<Complex64>, setup: &ProtocolSetup) -> Result<Trajectory> {
    if rho_in.nrows() != 4 || rho_in.ncols() != 4 {
        return Err(Error::Argument("protocol input must be a 4x4 qubit density matrix".into()));
    }
    Ok(simulate_blocks(setup)?.trajectory(rho_in))
}
