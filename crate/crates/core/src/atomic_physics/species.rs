use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::angular_momentum::HalfInt;
use crate::error::{Error, Result};

pub const HBAR: f64 = 1.054_571_817e-34;
pub const K_B: f64 = 1.380_649e-23;
pub const AMU: f64 = 1.660_539_066_60e-27;
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

const BUNDLED_RB87: &str = include_str!("../../data/rb87.toml");

/// On-disk species record. Frequencies are cyclic MHz, lengths in nm.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SpeciesFile {
    pub name: String,
    pub mass_amu: f64,
    pub nuclear_spin: HalfInt,
    pub ground_j: HalfInt,
    pub intermediate_j: HalfInt,
    pub rydberg_j: HalfInt,
    pub linewidth_mhz: f64,
    pub rydberg_lifetime_us: f64,
    pub ground_hyperfine_mhz: f64,
    pub intermediate_hyperfine_mhz: f64,
    pub lambda1_nm: f64,
    pub lambda2_nm: f64,
}

/// Species constants in SI units (angular frequencies in rad/s).
#[derive(Clone, Debug, PartialEq)]
pub struct SpeciesData {
    pub name: String,
    pub mass: f64,
    pub nuclear_spin: HalfInt,
    pub ground_j: HalfInt,
    pub intermediate_j: HalfInt,
    pub rydberg_j: HalfInt,
    /// Radiative decay rate of the intermediate manifold.
    pub gamma: f64,
    pub rydberg_decay_rate: f64,
    pub ground_hyperfine: f64,
    pub intermediate_hyperfine: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

fn mhz(v: f64) -> f64 {
    2.0 * PI * v * 1e6
}

impl SpeciesFile {
    pub fn bundled_rb87() -> Self {
        toml::from_str(BUNDLED_RB87).expect("bundled species file parses")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn resolve(&self) -> Result<SpeciesData> {
        let positive = [
            ("mass_amu", self.mass_amu),
            ("linewidth_mhz", self.linewidth_mhz),
            ("rydberg_lifetime_us", self.rydberg_lifetime_us),
            ("ground_hyperfine_mhz", self.ground_hyperfine_mhz),
            ("lambda1_nm", self.lambda1_nm),
            ("lambda2_nm", self.lambda2_nm),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("species field {name} must be positive, got {v}")));
            }
        }
        if !self.intermediate_hyperfine_mhz.is_finite() {
            return Err(Error::Config("intermediate_hyperfine_mhz must be finite".into()));
        }
        let gamma = mhz(self.linewidth_mhz);
        let rydberg_decay_rate = 1.0 / (self.rydberg_lifetime_us * 1e-6);
        if rydberg_decay_rate >= gamma {
            return Err(Error::Config("Rydberg decay rate must be far below the intermediate linewidth".into()));
        }
        for (name, j) in [
            ("nuclear_spin", self.nuclear_spin),
            ("ground_j", self.ground_j),
            ("intermediate_j", self.intermediate_j),
            ("rydberg_j", self.rydberg_j),
        ] {
            if j.twice() < 0 {
                return Err(Error::Config(format!("{name} must be non-negative")));
            }
        }
        if self.ground_j != HalfInt::HALF || self.intermediate_j != HalfInt::HALF || self.rydberg_j != HalfInt::HALF {
            return Err(Error::Config("only J = 1/2 ladders (S1/2 -> P1/2 -> S1/2) are supported".into()));
        }
        if self.nuclear_spin != HalfInt::from_twice(3) {
            return Err(Error::Config(
                "the level scheme enumerates F = 1, 2 manifolds and needs nuclear spin 3/2".into(),
            ));
        }
        Ok(SpeciesData {
            name: self.name.clone(),
            mass: self.mass_amu * AMU,
            nuclear_spin: self.nuclear_spin,
            ground_j: self.ground_j,
            intermediate_j: self.intermediate_j,
            rydberg_j: self.rydberg_j,
            gamma,
            rydberg_decay_rate,
            ground_hyperfine: mhz(self.ground_hyperfine_mhz),
            intermediate_hyperfine: mhz(self.intermediate_hyperfine_mhz),
            lambda1: self.lambda1_nm * 1e-9,
            lambda2: self.lambda2_nm * 1e-9,
        })
    }
}

impl SpeciesData {
    pub fn rb87() -> Self {
        SpeciesFile::bundled_rb87().resolve().expect("bundled species data is valid")
    }

    pub fn k1(&self) -> f64 {
        2.0 * PI / self.lambda1
    }

    pub fn k2(&self) -> f64 {
        2.0 * PI / self.lambda2
    }

    /// Recoil wave number of counter-propagating beams, `|k1 - k2|`.
    pub fn counter_propagating_q(&self) -> f64 {
        (self.k1() - self.k2()).abs()
    }

    /// Optical angular-frequency difference of the two beams, `w2 - w1`.
    pub fn optical_frequency_gap(&self) -> f64 {
        2.0 * PI * SPEED_OF_LIGHT * (1.0 / self.lambda2 - 1.0 / self.lambda1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_rb87_loads() {
        let s = SpeciesData::rb87();
        assert_eq!(s.nuclear_spin, HalfInt::from_twice(3));
        assert!((s.gamma / (2.0 * PI * 1e6) - 5.75).abs() < 1e-12);
        assert!((s.rydberg_decay_rate - 1e4).abs() < 1e-6);
        assert!(s.rydberg_decay_rate < s.gamma);
        assert!((s.mass - 1.443_160_6e-25).abs() < 1e-31);
    }

    #[test]
    fn counter_propagating_recoil() {
        let s = SpeciesData::rb87();
        let q = s.counter_propagating_q();
        let expect = 2.0 * PI * (1.0 / 480e-9 - 1.0 / 780e-9);
        assert!((q - expect).abs() / expect < 1e-12);
    }

    #[test]
    fn rejects_bad_values() {
        let mut f = SpeciesFile::bundled_rb87();
        f.linewidth_mhz = -1.0;
        assert!(f.resolve().is_err());
        let mut f = SpeciesFile::bundled_rb87();
        f.rydberg_lifetime_us = 1e-3;
        assert!(f.resolve().is_err());
        let mut f = SpeciesFile::bundled_rb87();
        f.nuclear_spin = HalfInt::from_twice(5);
        assert!(f.resolve().is_err());
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = format!("{BUNDLED_RB87}\nextra = 1\n");
        assert!(toml::from_str::<SpeciesFile>(&text).is_err());
    }
}
