use std::fmt;

use serde::{Deserialize, Serialize};

use super::species::SpeciesData;
use crate::angular_momentum::HalfInt;
use crate::error::{Error, Result};

/// Number of internal levels kept per atom: 8 ground sublevels and `|r>`.
pub const N_LEVELS: usize = 9;
/// Number of ground Zeeman sublevels.
pub const N_GROUND: usize = 8;
/// Number of intermediate Zeeman sublevels (`F = 1, 2`).
pub const N_INTERMEDIATE: usize = 8;
/// Index of `|a> = |F0=1, M0=0>`.
pub const IDX_A: usize = 1;
/// Index of `|b> = |F0=2, M0=0>`.
pub const IDX_B: usize = 5;
/// Index of the Rydberg state.
pub const IDX_R: usize = 8;
/// Two-atom basis dimension.
pub const N_PAIR: usize = N_LEVELS * N_LEVELS;

/// Two-atom basis index; atom A is the slow index.
pub fn pair_index(i_a: usize, i_b: usize) -> usize {
    N_LEVELS * i_a + i_b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Manifold {
    Ground,
    Intermediate,
    Rydberg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZeemanState {
    pub manifold: Manifold,
    pub f: HalfInt,
    pub m: HalfInt,
}

impl ZeemanState {
    pub fn new(manifold: Manifold, f: HalfInt, m: HalfInt) -> Result<Self> {
        if f.twice() < 0 || m.twice().abs() > f.twice() || (f.twice() - m.twice()) % 2 != 0 {
            return Err(Error::Argument(format!("invalid Zeeman state F={f}, M={m}")));
        }
        if manifold != Manifold::Rydberg && !(f == HalfInt::ONE || f == HalfInt::from_int(2)) {
            return Err(Error::Argument(format!("{manifold:?} manifold has F in {{1, 2}}, got {f}")));
        }
        Ok(Self { manifold, f, m })
    }

    fn int(manifold: Manifold, f: i32, m: i32) -> Self {
        Self::new(manifold, HalfInt::from_int(f), HalfInt::from_int(m)).expect("valid integer state")
    }

    /// All `F = 1, 2` sublevels of a manifold in basis order.
    pub fn hyperfine_manifold(manifold: Manifold) -> Vec<ZeemanState> {
        let mut out = Vec::with_capacity(8);
        for f in 1..=2 {
            for m in -f..=f {
                out.push(Self::int(manifold, f, m));
            }
        }
        out
    }
}

impl fmt::Display for ZeemanState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.manifold {
            Manifold::Ground => "5s",
            Manifold::Intermediate => "5p",
            Manifold::Rydberg => "ns",
        };
        write!(f, "|{label}; F={}; M={}>", self.f, self.m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryKind {
    /// Counter-propagating sigma+ beams along the trap (quantization) axis.
    Circular,
    /// Counter-propagating pi-polarized beams along a transverse axis.
    Linear,
}

impl GeometryKind {
    /// Spherical polarization index `q` shared by both beams.
    pub fn polarization(self) -> i32 {
        match self {
            GeometryKind::Circular => 1,
            GeometryKind::Linear => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GeometryKind::Circular => "circular",
            GeometryKind::Linear => "linear",
        }
    }
}

impl fmt::Display for GeometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Internal basis of one atom for a chosen excitation geometry.
#[derive(Clone, Debug)]
pub struct LevelScheme {
    pub geometry: GeometryKind,
    pub qubit_a: ZeemanState,
    pub qubit_b: ZeemanState,
    pub rydberg_r: ZeemanState,
    /// Ground sublevels in basis order: `F0=1, M0=-1..1`, then `F0=2, M0=-2..2`.
    pub ground: Vec<ZeemanState>,
    pub intermediates: Vec<ZeemanState>,
    pub ground_hyperfine: f64,
    pub intermediate_hyperfine: f64,
}

impl LevelScheme {
    pub fn new(geometry: GeometryKind, species: &SpeciesData) -> Self {
        let rydberg_m = 2 * geometry.polarization();
        let ground = ZeemanState::hyperfine_manifold(Manifold::Ground);
        let scheme = Self {
            geometry,
            qubit_a: ground[IDX_A],
            qubit_b: ground[IDX_B],
            rydberg_r: ZeemanState::int(Manifold::Rydberg, 2, rydberg_m),
            ground,
            intermediates: ZeemanState::hyperfine_manifold(Manifold::Intermediate),
            ground_hyperfine: species.ground_hyperfine,
            intermediate_hyperfine: species.intermediate_hyperfine,
        };
        debug_assert_eq!(scheme.ground.len(), N_GROUND);
        scheme
    }

    /// Internal state of basis index `i` (0..9).
    pub fn level(&self, i: usize) -> ZeemanState {
        if i == IDX_R {
            self.rydberg_r
        } else {
            self.ground[i]
        }
    }

    /// Bare level energy (angular frequency) used for the slow-frame phases:
    /// `F0=1` at 0, `F0=2` at the ground splitting, and `|r>` carried in the
    /// laser frame of `|b>`.
    pub fn level_frequency(&self, i: usize) -> f64 {
        if i == IDX_R || self.ground[i].f.twice() == 4 {
            self.ground_hyperfine
        } else {
            0.0
        }
    }

    /// Intermediate energy offset above the `F=1` reference level.
    pub fn intermediate_offset(&self, n: usize) -> f64 {
        if self.intermediates[n].f.twice() == 4 {
            self.intermediate_hyperfine
        } else {
            0.0
        }
    }

    /// All Rydberg hyperfine sublevels (`F_r = 1, 2`) of the selected ns state.
    pub fn rydberg_manifold(&self) -> Vec<ZeemanState> {
        ZeemanState::hyperfine_manifold(Manifold::Rydberg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_layout() {
        let s = LevelScheme::new(GeometryKind::Linear, &SpeciesData::rb87());
        assert_eq!(s.ground.len(), 8);
        assert_eq!(s.qubit_a.f, HalfInt::ONE);
        assert_eq!(s.qubit_a.m, HalfInt::ZERO);
        assert_eq!(s.qubit_b.f, HalfInt::from_int(2));
        assert_eq!(s.qubit_b.m, HalfInt::ZERO);
        assert_eq!(s.rydberg_r.m, HalfInt::ZERO);
        let c = LevelScheme::new(GeometryKind::Circular, &SpeciesData::rb87());
        assert_eq!(c.rydberg_r.m, HalfInt::from_int(2));
        assert_eq!(pair_index(IDX_R, IDX_R), N_PAIR - 1);
    }

    #[test]
    fn invalid_states_rejected() {
        assert!(ZeemanState::new(Manifold::Ground, HalfInt::ONE, HalfInt::from_int(2)).is_err());
        assert!(ZeemanState::new(Manifold::Ground, HalfInt::from_int(3), HalfInt::ZERO).is_err());
        assert!(ZeemanState::new(Manifold::Rydberg, HalfInt::from_int(3), HalfInt::ZERO).is_ok());
    }

    #[test]
    fn frequencies() {
        let sp = SpeciesData::rb87();
        let s = LevelScheme::new(GeometryKind::Circular, &sp);
        assert_eq!(s.level_frequency(IDX_A), 0.0);
        assert_eq!(s.level_frequency(IDX_B), sp.ground_hyperfine);
        assert_eq!(s.level_frequency(IDX_R), sp.ground_hyperfine);
        assert_eq!(s.intermediate_offset(0), 0.0);
        assert_eq!(s.intermediate_offset(7), sp.intermediate_hyperfine);
    }
}
