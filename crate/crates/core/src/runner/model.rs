//! Assembles the physical model of one sweep point and runs qubit inputs
//! through the coherent protocol and the loss ledger.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::config::RunConfig;
use crate::atomic_physics::fields::{effective_two_photon_rabi, light_shifts, Couplings, DriveField};
use crate::atomic_physics::levels::{GeometryKind, LevelScheme, IDX_A, IDX_B, IDX_R};
use crate::atomic_physics::species::{SpeciesData, SpeciesFile};
use crate::beam_optics::GaussianBeam;
use crate::decoherence::ledger::{apply_loss_ledger, compute_increments, IncrementLedger, LedgerContext, LedgerPlan};
use crate::decoherence::rates::ScatteringModel;
use crate::decoherence::Channel;
use crate::dynamics::density::TwoAtomDensityMatrix;
use crate::dynamics::momentum::TrapSpec;
use crate::dynamics::protocol::{simulate_blocks, FocusShifts, ProtocolBlocks, ProtocolSetup, PulseSchedule};
use crate::error::Result;

const MHZ: f64 = 2.0 * PI * 1e6;
const KHZ: f64 = 2.0 * PI * 1e3;

/// Species data from the configured file (or the bundled Rb-87), with wavelength overrides.
pub fn load_species(cfg: &RunConfig) -> Result<SpeciesData> {
    let file = match &cfg.species {
        Some(p) => SpeciesFile::load(p)?,
        None => SpeciesFile::bundled_rb87(),
    };
    let mut sp = file.resolve()?;
    if let Some([l1, l2]) = cfg.wavelengths_nm {
        sp.lambda1 = l1 * 1e-9;
        sp.lambda2 = l2 * 1e-9;
    }
    Ok(sp)
}

/// One point of the parameter grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub index: usize,
    pub geometry: GeometryKind,
    pub tau_pi_ns: f64,
    pub temperature_uk: f64,
}

/// Protocol, loss model and compensation phases of one sweep point.
#[derive(Clone, Debug)]
pub struct GateModel {
    pub setup: ProtocolSetup,
    pub ledger: LedgerContext,
    pub channels: Vec<Channel>,
    /// Compensation phases from the focus propagators.
    pub theta: [f64; 2],
    pub effective_rabi: Complex64,
}

impl GateModel {
    pub fn build(cfg: &RunConfig, species: &SpeciesData, point: &SweepPoint) -> Result<Self> {
        let kind = point.geometry;
        let tau = point.tau_pi_ns * 1e-9;
        let scheme = LevelScheme::new(kind, species);
        let [p1, p2] = cfg.peak_rabi_mhz;
        let fields = DriveField::pair(kind, species, p1 * MHZ, p2 * MHZ, cfg.intermediate_detuning_mhz * MHZ);
        let base = Couplings::new(&fields, &scheme, species)?;
        let one = Complex64::new(1.0, 0.0);
        let s = ((PI / tau) / effective_two_photon_rabi(&base, cfg.include_far_term, one)?.norm()).sqrt();
        let couplings = base.scaled(s, s);
        let effective_rabi = effective_two_photon_rabi(&couplings, cfg.include_far_term, one)?;
        let shifts = light_shifts(&couplings)?;
        let model = ScatteringModel::new(&couplings, &scheme, species)?;
        let decay = if cfg.channels.rydberg_decay { species.rydberg_decay_rate } else { 0.0 };
        let ledger = LedgerContext::new(&model, &scheme, shifts, decay);

        let schedule = PulseSchedule::from_tau_pi(
            tau,
            effective_rabi.arg(),
            cfg.pulse.two_photon_detuning_mhz * MHZ,
            cfg.blockade_shift_mhz * MHZ,
        )?;
        let (beam1, beam2) = match cfg.beam_waists_um {
            Some([w1, w2]) => (GaussianBeam::new(w1 * 1e-6, species.lambda1), GaussianBeam::new(w2 * 1e-6, species.lambda2)),
            None => (GaussianBeam::plane_wave(species.lambda1), GaussianBeam::plane_wave(species.lambda2)),
        };
        let setup = ProtocolSetup {
            schedule,
            geometry: kind,
            shifts: FocusShifts { a: shifts[IDX_A], b: shifts[IDX_B], r: shifts[IDX_R] },
            beam1,
            beam2,
            trap: TrapSpec {
                omega_perp: cfg.trap.omega_perp_khz * KHZ,
                omega_par: cfg.trap.omega_par_khz * KHZ,
                temperature_uk: point.temperature_uk,
            },
            mass: species.mass,
            q: if cfg.recoil { species.counter_propagating_q() } else { 0.0 },
            motion: cfg.motion,
            controls: cfg.numerics.clone(),
        };
        let theta = setup.phase_compensation();
        Ok(Self { setup, ledger, channels: cfg.channels.scattering(), theta, effective_rabi })
    }

    fn has_losses(&self) -> bool {
        !self.channels.is_empty() || self.ledger.rydberg_decay_rate > 0.0
    }

    /// Runs the input-independent parts: coherent blocks and the ledger plan.
    pub fn prepare(&self) -> Result<PreparedGate<'_>> {
        let blocks = simulate_blocks(&self.setup)?;
        let plan = if self.has_losses() {
            Some(LedgerPlan::new(&self.setup, &self.ledger, &blocks.times, &blocks.stages)?)
        } else {
            None
        };
        Ok(PreparedGate { model: self, blocks, plan })
    }
}

/// Final state of one qubit input with its loss diagnostics.
#[derive(Clone, Debug)]
pub struct GateOutput {
    pub rho: TwoAtomDensityMatrix,
    pub ledger: IncrementLedger,
    pub min_eigenvalue: f64,
    pub clamped: bool,
}

pub struct PreparedGate<'a> {
    pub model: &'a GateModel,
    pub blocks: ProtocolBlocks,
    plan: Option<LedgerPlan>,
}

impl PreparedGate<'_> {
    /// Final two-atom state (before phase compensation) for a 4x4 qubit input.
    pub fn run(&self, rho_in: &DMatrix<Complex64>) -> Result<GateOutput> {
        let traj = self.blocks.trajectory(rho_in);
        let ledger = match &self.plan {
            Some(plan) => compute_increments(&self.model.ledger, plan, &traj, &self.model.channels)?,
            None => IncrementLedger::zeros(),
        };
        let out = apply_loss_ledger(traj.final_state(), &ledger);
        Ok(GateOutput { rho: out.rho, ledger, min_eigenvalue: out.min_eigenvalue, clamped: out.clamped })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{cz_target, fidelity_purity};
    use crate::dynamics::protocol::qubit_density;
    use crate::runner::config::ChannelConfig;

    fn point(kind: GeometryKind, tau: f64) -> SweepPoint {
        SweepPoint { index: 0, geometry: kind, tau_pi_ns: tau, temperature_uk: 0.0 }
    }

    #[test]
    fn rabi_frequency_matches_pi_time() {
        let cfg = RunConfig::default();
        let sp = load_species(&cfg).unwrap();
        let m = GateModel::build(&cfg, &sp, &point(GeometryKind::Linear, 120.0)).unwrap();
        assert!((m.effective_rabi.norm() * 120e-9 - PI).abs() < 1e-12);
        assert!((m.setup.schedule.tau_pi - 120e-9).abs() < 1e-20);
    }

    #[test]
    fn lossless_plane_wave_point_is_ideal() {
        let cfg = RunConfig {
            channels: ChannelConfig::all(false),
            recoil: false,
            blockade_shift_mhz: f64::INFINITY,
            ..RunConfig::default()
        };
        let sp = load_species(&cfg).unwrap();
        let m = GateModel::build(&cfg, &sp, &point(GeometryKind::Circular, 150.0)).unwrap();
        let gate = m.prepare().unwrap();
        let h = Complex64::new(0.5, 0.0);
        let out = gate.run(&qubit_density(&[h; 4])).unwrap();
        let f = fidelity_purity(&out.rho, &cz_target(), m.theta, false);
        assert!(f.fidelity > 1.0 - 1e-9, "{}", f.fidelity);
    }

    #[test]
    fn losses_reduce_fidelity() {
        let cfg = RunConfig::default();
        let sp = load_species(&cfg).unwrap();
        let m = GateModel::build(&cfg, &sp, &point(GeometryKind::Circular, 150.0)).unwrap();
        let gate = m.prepare().unwrap();
        let h = Complex64::new(0.5, 0.0);
        let out = gate.run(&qubit_density(&[h; 4])).unwrap();
        let f = fidelity_purity(&out.rho, &cz_target(), m.theta, true);
        assert!(f.fidelity < 0.999 && f.fidelity > 0.5, "{}", f.fidelity);
        assert!((out.rho.trace().re - 1.0).abs() < 1e-9);
    }
}
