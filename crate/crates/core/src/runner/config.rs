//! Run configuration (TOML) with full defaulting and validation.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::atomic_physics::levels::GeometryKind;
use crate::decoherence::Channel;
use crate::dynamics::protocol::{MotionModel, ProtocolControls};
use crate::error::{Error, Result};

/// Evenly spaced pi times, both ends included.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TauRange {
    pub start_ns: f64,
    pub stop_ns: f64,
    pub step_ns: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PulseConfig {
    /// Explicit pi times; used when no range is given.
    pub tau_pi_ns: Vec<f64>,
    pub range: Option<TauRange>,
    /// Two-photon detuning from the shifted resonance.
    pub two_photon_detuning_mhz: f64,
}

impl Default for PulseConfig {
    fn default() -> Self {
        Self { tau_pi_ns: vec![150.0], range: None, two_photon_detuning_mhz: 0.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrapConfig {
    pub omega_perp_khz: f64,
    pub omega_par_khz: f64,
    pub temperatures_uk: Vec<f64>,
}

impl Default for TrapConfig {
    fn default() -> Self {
        Self { omega_perp_khz: 100.0, omega_par_khz: 20.0, temperatures_uk: vec![0.0] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelConfig {
    pub depopulation: bool,
    pub optical_pumping: bool,
    pub cpt_leak: bool,
    pub cpt_repopulation: bool,
    pub rydberg_decay: bool,
}

impl Default for ChannelConfig {
    fn default() -> Self {
        Self::all(true)
    }
}

impl ChannelConfig {
    pub fn all(on: bool) -> Self {
        Self { depopulation: on, optical_pumping: on, cpt_leak: on, cpt_repopulation: on, rydberg_decay: on }
    }

    /// Parses a comma-separated list of channel names, `all` or `none`.
    pub fn parse_list(list: &str) -> Result<Self> {
        let mut c = Self::all(false);
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match name {
                "all" => c = Self::all(true),
                "none" => c = Self::all(false),
                "depopulation" => c.depopulation = true,
                "optical_pumping" => c.optical_pumping = true,
                "cpt_leak" => c.cpt_leak = true,
                "cpt_repopulation" => c.cpt_repopulation = true,
                "rydberg_decay" => c.rydberg_decay = true,
                other => return Err(Error::Config(format!("unknown loss channel `{other}`"))),
            }
        }
        Ok(c)
    }

    pub fn scattering(&self) -> Vec<Channel> {
        let on = [self.depopulation, self.optical_pumping, self.cpt_leak, self.cpt_repopulation];
        Channel::ALL.into_iter().zip(on).filter(|(_, o)| *o).map(|(c, _)| c).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Species TOML file; the bundled Rb-87 data when absent.
    pub species: Option<PathBuf>,
    pub output_dir: PathBuf,
    pub geometries: Vec<GeometryKind>,
    pub blockade_shift_mhz: f64,
    /// Detuning of the lower beam from the `|b> -> F'=1` transition.
    pub intermediate_detuning_mhz: f64,
    /// Peak Rabi frequencies of the two beams; only their ratio matters, as
    /// both are rescaled together so that `|Omega| tau_pi = pi`.
    pub peak_rabi_mhz: [f64; 2],
    /// Overrides the species wavelengths of the two beams.
    pub wavelengths_nm: Option<[f64; 2]>,
    /// Beam waists; plane waves when absent.
    pub beam_waists_um: Option<[f64; 2]>,
    /// Include the counter-rotating term in the effective Rabi frequency.
    pub include_far_term: bool,
    /// Two-photon recoil along the beam axis.
    pub recoil: bool,
    pub motion: MotionModel,
    /// Refine the compensation phases numerically.
    pub refine_phases: bool,
    pub pulse: PulseConfig,
    pub trap: TrapConfig,
    pub channels: ChannelConfig,
    pub numerics: ProtocolControls,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            species: None,
            output_dir: PathBuf::from("out"),
            geometries: vec![GeometryKind::Circular],
            blockade_shift_mhz: 50.0,
            intermediate_detuning_mhz: -3000.0,
            peak_rabi_mhz: [100.0, 100.0],
            wavelengths_nm: None,
            beam_waists_um: None,
            include_far_term: false,
            recoil: true,
            motion: MotionModel::PlaneWave,
            refine_phases: true,
            pulse: PulseConfig::default(),
            trap: TrapConfig::default(),
            channels: ChannelConfig::default(),
            numerics: ProtocolControls::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let c: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Pi times in ns, from the range when given.
    pub fn tau_values_ns(&self) -> Vec<f64> {
        match &self.pulse.range {
            Some(r) => {
                let n = ((r.stop_ns - r.start_ns) / r.step_ns + 1e-9).floor() as usize;
                (0..=n).map(|k| r.start_ns + r.step_ns * k as f64).collect()
            }
            None => self.pulse.tau_pi_ns.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Config(what.to_string()));
        if let Some(r) = &self.pulse.range {
            if !(r.start_ns > 0.0 && r.step_ns > 0.0 && r.stop_ns >= r.start_ns) {
                return bad("pulse.range needs 0 < start_ns <= stop_ns and step_ns > 0");
            }
        }
        let taus = self.tau_values_ns();
        if taus.is_empty() || taus.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return bad("pi times must be a nonempty list of positive values");
        }
        if self.geometries.is_empty() {
            return bad("at least one geometry is required");
        }
        if !(self.blockade_shift_mhz > 0.0) {
            return bad("blockade_shift_mhz must be positive (inf for perfect blockade)");
        }
        if !(self.intermediate_detuning_mhz.is_finite() && self.intermediate_detuning_mhz != 0.0) {
            return bad("intermediate_detuning_mhz must be finite and non-zero");
        }
        if self.peak_rabi_mhz.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return bad("peak_rabi_mhz entries must be positive");
        }
        if let Some(w) = self.wavelengths_nm {
            if w.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                return bad("wavelengths_nm entries must be positive");
            }
        }
        if let Some(w) = self.beam_waists_um {
            if w.iter().any(|v| !(*v > 0.0)) {
                return bad("beam_waists_um entries must be positive");
            }
        }
        let t = &self.trap;
        if !(t.omega_perp_khz > 0.0 && t.omega_par_khz > 0.0) {
            return bad("trap frequencies must be positive");
        }
        if t.temperatures_uk.is_empty() || t.temperatures_uk.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return bad("trap.temperatures_uk must be a nonempty list of non-negative values");
        }
        let n = &self.numerics;
        if n.grid_points < 3 || n.grid_points.is_multiple_of(2) {
            return bad("numerics.grid_points must be odd and at least 3");
        }
        if n.samples_per_pulse < 2 || n.steps_per_pi == 0 || n.spectator_nodes == 0 {
            return bad("numerics.samples_per_pulse must be at least 2, steps_per_pi and spectator_nodes positive");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
    }

    #[test]
    fn roundtrips_through_toml() {
        let mut c = RunConfig {
            geometries: vec![GeometryKind::Linear, GeometryKind::Circular],
            blockade_shift_mhz: f64::INFINITY,
            ..RunConfig::default()
        };
        c.pulse.range = Some(TauRange { start_ns: 50.0, stop_ns: 600.0, step_ns: 10.0 });
        let back = RunConfig::from_toml(&c.to_toml()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.tau_values_ns().len(), 56);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::from_toml("blockade_shift_mhz = -1.0").is_err());
        assert!(RunConfig::from_toml("unknown_key = 1").is_err());
        assert!(RunConfig::from_toml("[pulse]\ntau_pi_ns = []").is_err());
        assert!(RunConfig::from_toml("[numerics]\ngrid_points = 10").is_err());
    }

    #[test]
    fn channel_lists() {
        assert_eq!(ChannelConfig::parse_list("all").unwrap(), ChannelConfig::all(true));
        assert_eq!(ChannelConfig::parse_list("none").unwrap(), ChannelConfig::all(false));
        let c = ChannelConfig::parse_list("cpt_leak, rydberg_decay").unwrap();
        assert_eq!(c.scattering(), vec![Channel::CptLeak]);
        assert!(c.rydberg_decay);
        assert!(ChannelConfig::parse_list("bogus").is_err());
    }
}
