//! Sweep over `(geometry, temperature, pi time)` with a deterministic task
//! order; each point runs the protocol, the loss ledger and the requested analyses.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::config::RunConfig;
use super::model::{load_species, GateModel, GateOutput, PreparedGate, SweepPoint};
use crate::analysis::tomography::{chi_reconstruct, closest_unitary, tomography_inputs, ClosestUnitary, ProcessMatrix};
use crate::analysis::truth_table::{cnot_frame, hadamard_on_target, postselect, TruthTable};
use crate::analysis::{cz_target, fidelity_purity, MetricsEntry};
use crate::atomic_physics::species::SpeciesData;
use crate::dynamics::protocol::qubit_density;
use crate::error::Result;

/// Tolerance on truth-table row sums checked before output.
pub const ROW_SUM_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Analysis {
    Metrics,
    TruthTable,
    Tomography,
}

/// Loss diagnostics of the metrics input.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    pub channel_norms: Vec<(String, f64)>,
    pub rydberg_probability: f64,
    pub min_eigenvalue: f64,
    pub clamped: bool,
}

impl Diagnostics {
    fn from_output(out: &GateOutput) -> Self {
        Self {
            channel_norms: out.ledger.norms().iter().map(|(n, v)| (n.to_string(), *v)).collect(),
            rydberg_probability: out.ledger.rydberg_probability,
            min_eigenvalue: out.min_eigenvalue,
            clamped: out.clamped,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TruthTableResult {
    pub raw: TruthTable,
    pub postselected: [[f64; 4]; 4],
}

#[derive(Clone, Debug)]
pub struct TomographyResult {
    pub process: ProcessMatrix,
    pub unitary: ClosestUnitary,
}

#[derive(Clone, Debug)]
pub struct PointData {
    pub metrics: MetricsEntry,
    pub diagnostics: Diagnostics,
    pub truth_table: Option<TruthTableResult>,
    pub tomography: Option<TomographyResult>,
}

#[derive(Clone, Debug)]
pub struct PointResult {
    pub point: SweepPoint,
    pub outcome: std::result::Result<PointData, String>,
}

/// Task list: geometry slowest, then temperature, then pi time.
pub fn sweep_points(cfg: &RunConfig) -> Vec<SweepPoint> {
    let taus = cfg.tau_values_ns();
    let mut out = Vec::new();
    for &geometry in &cfg.geometries {
        for &temperature_uk in &cfg.trap.temperatures_uk {
            for &tau_pi_ns in &taus {
                out.push(SweepPoint { index: out.len(), geometry, tau_pi_ns, temperature_uk });
            }
        }
    }
    out
}

/// CNOT-frame computational block for a qubit input of the CNOT.
fn cnot_output(gate: &PreparedGate<'_>, rho_in: &DMatrix<Complex64>, theta: [f64; 2]) -> Result<DMatrix<Complex64>> {
    let out = gate.run(&hadamard_on_target(rho_in))?;
    Ok(cnot_frame(&out.rho, theta).computational_block())
}

pub fn run_point(cfg: &RunConfig, species: &SpeciesData, point: &SweepPoint, analysis: Analysis) -> Result<PointData> {
    let model = GateModel::build(cfg, species, point)?;
    let gate = model.prepare()?;
    let h = Complex64::new(0.5, 0.0);
    let out = gate.run(&qubit_density(&[h; 4]))?;
    let metrics = fidelity_purity(&out.rho, &cz_target(), model.theta, cfg.refine_phases);
    let diagnostics = Diagnostics::from_output(&out);
    // the CNOT frame uses the same compensation phases as the metrics
    let theta = metrics.theta;

    let truth_table = if analysis == Analysis::TruthTable {
        let (raw, _) = crate::analysis::truth_table::truth_table(|r| gate.run(r).map(|o| o.rho), theta)?;
        raw.validate(ROW_SUM_TOL)?;
        Some(TruthTableResult { postselected: postselect(&raw)?, raw })
    } else {
        None
    };
    let tomography = if analysis == Analysis::Tomography {
        let pairs = tomography_inputs()
            .into_iter()
            .map(|i| cnot_output(&gate, &i, theta).map(|o| (i, o)))
            .collect::<Result<Vec<_>>>()?;
        let process = chi_reconstruct(&pairs)?;
        Some(TomographyResult { unitary: closest_unitary(&process), process })
    } else {
        None
    };
    Ok(PointData { metrics, diagnostics, truth_table, tomography })
}

/// Runs every point; failures are kept per point with their parameters.
pub fn run_sweep(cfg: &RunConfig, analysis: Analysis) -> Result<Vec<PointResult>> {
    let species = load_species(cfg)?;
    let points = sweep_points(cfg);
    Ok(points
        .par_iter()
        .map(|p| PointResult {
            point: *p,
            outcome: run_point(cfg, &species, p, analysis).map_err(|e| {
                format!(
                    "{e} (geometry {:?}, tau_pi {} ns, T {} uK)",
                    p.geometry, p.tau_pi_ns, p.temperature_uk
                )
            }),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atomic_physics::levels::GeometryKind;
    use crate::runner::config::ChannelConfig;

    #[test]
    fn task_order_is_stable() {
        let mut cfg = RunConfig { geometries: vec![GeometryKind::Linear, GeometryKind::Circular], ..RunConfig::default() };
        cfg.trap.temperatures_uk = vec![0.0, 5.0];
        cfg.pulse.tau_pi_ns = vec![100.0, 200.0, 300.0];
        let p = sweep_points(&cfg);
        assert_eq!(p.len(), 12);
        assert_eq!((p[4].geometry, p[4].temperature_uk, p[4].tau_pi_ns), (GeometryKind::Linear, 5.0, 200.0));
        assert!(p.iter().enumerate().all(|(i, q)| q.index == i));
    }

    #[test]
    fn lossless_tomography_gives_cnot() {
        let cfg = RunConfig {
            channels: ChannelConfig::all(false),
            recoil: false,
            blockade_shift_mhz: f64::INFINITY,
            ..RunConfig::default()
        };
        let sp = load_species(&cfg).unwrap();
        let p = SweepPoint { index: 0, geometry: GeometryKind::Linear, tau_pi_ns: 300.0, temperature_uk: 0.0 };
        let d = run_point(&cfg, &sp, &p, Analysis::Tomography).unwrap();
        let u = &d.tomography.unwrap().unitary.matrix;
        let cnot = [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0], [0.0, 0.0, 1.0, 0.0]];
        for i in 0..4 {
            for j in 0..4 {
                assert!((u[(i, j)].norm() - cnot[i][j]).abs() < 1e-6, "{i} {j} {}", u[(i, j)].norm());
            }
        }
    }
}
