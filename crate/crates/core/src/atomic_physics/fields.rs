use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::levels::{GeometryKind, LevelScheme, Manifold, ZeemanState, IDX_B, IDX_R, N_GROUND, N_INTERMEDIATE, N_LEVELS};
use super::species::SpeciesData;
use crate::angular_momentum::{clebsch_gordan, pumping_tensor, wigner_6j, HalfInt};
use crate::decoherence::rates::LossRates;
use crate::error::{Error, Result};

/// Which step of the ladder a beam drives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BeamMode {
    /// Ground to intermediate (mode 1).
    Lower,
    /// Intermediate to Rydberg (mode 2).
    Upper,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DriveField {
    pub mode: BeamMode,
    /// Spherical polarization component `q` in `{-1, 0, 1}`.
    pub polarization: i32,
    /// Rabi frequency on the strongest allowed Zeeman transition (rad/s).
    pub peak_rabi: f64,
    /// Mode 1: `w1 - w_nb` to the `F=1` intermediate level from `|b>`.
    /// Mode 2: `w2 - w_rn` from the `F=1` intermediate level.
    pub detuning: f64,
    pub wave_vector: [f64; 3],
}

/// Excitation geometry: polarization kind and total recoil wave vector.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometryConfig {
    pub kind: GeometryKind,
    pub q_vec: [f64; 3],
}

impl GeometryConfig {
    /// Counter-propagating beams along the geometry's beam axis.
    pub fn counter_propagating(kind: GeometryKind, species: &SpeciesData) -> Self {
        let mut q_vec = [0.0; 3];
        q_vec[Self::axis_of(kind)] = species.k1() - species.k2();
        Self { kind, q_vec }
    }

    pub fn axis_of(kind: GeometryKind) -> usize {
        match kind {
            GeometryKind::Circular => 2,
            GeometryKind::Linear => 1,
        }
    }

    /// Cartesian index of the beam (and recoil) axis; z = 2 is the trap axis.
    pub fn beam_axis(&self) -> usize {
        Self::axis_of(self.kind)
    }

    pub fn q_magnitude(&self) -> f64 {
        self.q_vec.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

impl DriveField {
    pub fn pair(
        kind: GeometryKind,
        species: &SpeciesData,
        peak1: f64,
        peak2: f64,
        delta_nb: f64,
    ) -> (DriveField, DriveField) {
        let q = kind.polarization();
        let mut k1 = [0.0; 3];
        let mut k2 = [0.0; 3];
        let axis = GeometryConfig::axis_of(kind);
        k1[axis] = species.k1();
        k2[axis] = -species.k2();
        (
            DriveField { mode: BeamMode::Lower, polarization: q, peak_rabi: peak1, detuning: delta_nb, wave_vector: k1 },
            DriveField { mode: BeamMode::Upper, polarization: q, peak_rabi: peak2, detuning: -delta_nb, wave_vector: k2 },
        )
    }
}

fn manifold_j(state: &ZeemanState, species: &SpeciesData) -> HalfInt {
    match state.manifold {
        Manifold::Ground => species.ground_j,
        Manifold::Intermediate => species.intermediate_j,
        Manifold::Rydberg => species.rydberg_j,
    }
}

/// `<upper | d_q | lower>` in units of the reduced fine-structure element.
pub fn dipole_factor(lower: &ZeemanState, upper: &ZeemanState, q: i32, species: &SpeciesData) -> Result<f64> {
    let hq = HalfInt::from_int(q);
    if lower.m + hq != upper.m {
        return Ok(0.0);
    }
    let j0 = manifold_j(lower, species);
    let j = manifold_j(upper, species);
    let i = species.nuclear_spin;
    let cg = clebsch_gordan(lower.f, lower.m, HalfInt::ONE, hq, upper.f, upper.m)?;
    if cg == 0.0 {
        return Ok(0.0);
    }
    let sixj = wigner_6j(j, j0, HalfInt::ONE, lower.f, upper.f, i)?;
    let exponent = (lower.f + j + HalfInt::ONE + i).twice();
    debug_assert!(exponent % 2 == 0);
    let phase = if (exponent / 2) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(phase * (f64::from((lower.f.twice() + 1) * (j.twice() + 1))).sqrt() * sixj * cg)
}

fn adjacent(mode: BeamMode) -> (Manifold, Manifold) {
    match mode {
        BeamMode::Lower => (Manifold::Ground, Manifold::Intermediate),
        BeamMode::Upper => (Manifold::Intermediate, Manifold::Rydberg),
    }
}

/// Largest dipole factor among all Zeeman pairs the field's mode and polarization can drive.
pub fn strongest_dipole(field: &DriveField, species: &SpeciesData) -> Result<f64> {
    let (lo, up) = adjacent(field.mode);
    let mut best: f64 = 0.0;
    for l in ZeemanState::hyperfine_manifold(lo) {
        for u in ZeemanState::hyperfine_manifold(up) {
            best = best.max(dipole_factor(&l, &u, field.polarization, species)?.abs());
        }
    }
    if best == 0.0 {
        return Err(Error::Argument(format!("polarization q={} drives no transition", field.polarization)));
    }
    Ok(best)
}

/// Rabi frequency of one Zeeman transition driven by `field`.
pub fn single_photon_rabi(
    field: &DriveField,
    lower: &ZeemanState,
    upper: &ZeemanState,
    species: &SpeciesData,
) -> Result<Complex64> {
    let (lo, up) = adjacent(field.mode);
    if lower.manifold != lo || upper.manifold != up {
        return Err(Error::Argument(format!(
            "{:?} beam couples {lo:?} to {up:?}, got {lower} -> {upper}",
            field.mode
        )));
    }
    let d = dipole_factor(lower, upper, field.polarization, species)?;
    if d == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(Complex64::new(field.peak_rabi * d / strongest_dipole(field, species)?, 0.0))
}

/// All single-photon couplings and detunings of the two-beam ladder for one geometry.
#[derive(Clone, Debug)]
pub struct Couplings {
    /// `Omega^(1)_{n alpha}` indexed `[n][level]`; the Rydberg column is zero.
    pub omega1: [[Complex64; N_LEVELS]; N_INTERMEDIATE],
    /// `Omega^(2)_{r n}` indexed by `n`.
    pub omega2: [Complex64; N_INTERMEDIATE],
    /// `Delta_{n alpha} = w1 - w_{n alpha}`.
    pub delta1: [[f64; N_LEVELS]; N_INTERMEDIATE],
    /// `Delta_{r n} = w2 - w_{r n}`.
    pub delta2: [f64; N_INTERMEDIATE],
    /// `w2 - w1`, entering the far-off-resonant term of the effective coupling.
    pub optical_gap: f64,
    /// Pumping-tensor diagonal `T(m, m, n, n)`, i.e. branching of `n` into ground `m`.
    pub branching: [[f64; N_GROUND]; N_INTERMEDIATE],
}

impl Couplings {
    pub fn new(fields: &(DriveField, DriveField), scheme: &LevelScheme, species: &SpeciesData) -> Result<Self> {
        let (f1, f2) = fields;
        if f1.mode != BeamMode::Lower || f2.mode != BeamMode::Upper {
            return Err(Error::Argument("fields must be (lower, upper) beams".into()));
        }
        let zero = Complex64::new(0.0, 0.0);
        let mut c = Couplings {
            omega1: [[zero; N_LEVELS]; N_INTERMEDIATE],
            omega2: [zero; N_INTERMEDIATE],
            delta1: [[0.0; N_LEVELS]; N_INTERMEDIATE],
            delta2: [0.0; N_INTERMEDIATE],
            optical_gap: species.optical_frequency_gap(),
            branching: [[0.0; N_GROUND]; N_INTERMEDIATE],
        };
        let e_b = scheme.level_frequency(IDX_B);
        for (n, st_n) in scheme.intermediates.iter().enumerate() {
            let off = scheme.intermediate_offset(n);
            for (alpha, st_a) in scheme.ground.iter().enumerate() {
                c.omega1[n][alpha] = single_photon_rabi(f1, st_a, st_n, species)?;
                let d = f1.detuning - off + (scheme.level_frequency(alpha) - e_b);
                if c.omega1[n][alpha].norm() > 0.0 && d == 0.0 {
                    return Err(Error::Singularity(format!("beam 1 resonant with {st_a} -> {st_n}")));
                }
                c.delta1[n][alpha] = d;
                c.branching[n][alpha] = pumping_tensor(st_a, st_a, st_n, st_n, species)?;
            }
            c.omega2[n] = single_photon_rabi(f2, st_n, &scheme.rydberg_r, species)?;
            c.delta2[n] = f2.detuning + off;
            if c.omega2[n].norm() > 0.0 && c.delta2[n] == 0.0 {
                return Err(Error::Singularity(format!("beam 2 resonant with {st_n} -> r")));
            }
        }
        Ok(c)
    }

    /// Intermediates coupled to both `|b>` and `|r>`.
    pub fn ladder_intermediates(&self) -> Vec<usize> {
        (0..N_INTERMEDIATE)
            .filter(|&n| self.omega1[n][IDX_B].norm() > 0.0 && self.omega2[n].norm() > 0.0)
            .collect()
    }

    /// Copy with both beams rescaled (`s1` multiplies every `Omega^(1)`).
    pub fn scaled(&self, s1: f64, s2: f64) -> Self {
        let mut c = self.clone();
        for row in c.omega1.iter_mut() {
            for v in row.iter_mut() {
                *v *= s1;
            }
        }
        for v in c.omega2.iter_mut() {
            *v *= s2;
        }
        c
    }
}

/// Effective two-photon Rabi frequency `b -> r`, multiplied by a local field-profile factor.
pub fn effective_two_photon_rabi(c: &Couplings, include_far_term: bool, position_scale: Complex64) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..N_INTERMEDIATE {
        let prod = c.omega2[n] * c.omega1[n][IDX_B];
        if prod.norm() == 0.0 {
            continue;
        }
        let near = -c.delta2[n];
        if near == 0.0 {
            return Err(Error::Singularity(format!("resonant intermediate {n}")));
        }
        sum += -0.5 * prod / near;
        if include_far_term {
            let far = -c.delta2[n] + c.optical_gap;
            if far == 0.0 {
                return Err(Error::Singularity(format!("resonant far term for intermediate {n}")));
            }
            sum += -0.5 * prod / far;
        }
    }
    Ok(sum * position_scale)
}

/// Light shift of basis level `i` (ground sublevel or `|r>`) at the focus.
pub fn light_shift(i: usize, c: &Couplings) -> Result<f64> {
    let mut s = 0.0;
    for n in 0..N_INTERMEDIATE {
        if i == IDX_R {
            let w = c.omega2[n].norm_sqr();
            if w > 0.0 {
                if c.delta2[n] == 0.0 {
                    return Err(Error::Singularity("resonant light shift of r".into()));
                }
                s -= 0.25 * w / c.delta2[n];
            }
        } else if i < N_GROUND {
            let w = c.omega1[n][i].norm_sqr();
            if w > 0.0 {
                if c.delta1[n][i] == 0.0 {
                    return Err(Error::Singularity(format!("resonant light shift of level {i}")));
                }
                s += 0.25 * w / c.delta1[n][i];
            }
        } else {
            return Err(Error::Argument(format!("level index {i} out of range")));
        }
    }
    Ok(s)
}

/// Light shifts of all nine basis levels.
pub fn light_shifts(c: &Couplings) -> Result<[f64; N_LEVELS]> {
    let mut out = [0.0; N_LEVELS];
    for (i, v) in out.iter_mut().enumerate() {
        *v = light_shift(i, c)?;
    }
    Ok(out)
}

/// Incoherent scattering rates of every basis level and their branching into ground sublevels.
pub fn scattering_rates(c: &Couplings, gamma: f64, rydberg_decay_rate: f64) -> LossRates {
    let mut total = [0.0; N_LEVELS];
    let mut to = [[0.0; N_GROUND]; N_LEVELS];
    let mut cpt = [Complex64::new(0.0, 0.0); N_INTERMEDIATE];
    for n in 0..N_INTERMEDIATE {
        let mut from = [0.0; N_LEVELS];
        for alpha in 0..N_GROUND {
            if c.omega1[n][alpha].norm() > 0.0 {
                from[alpha] = gamma * c.omega1[n][alpha].norm_sqr() / (4.0 * c.delta1[n][alpha].powi(2));
            }
        }
        if c.omega2[n].norm() > 0.0 {
            from[IDX_R] = gamma * c.omega2[n].norm_sqr() / (4.0 * c.delta2[n].powi(2));
            cpt[n] = gamma * c.omega2[n] * c.omega1[n][IDX_B] / (4.0 * c.delta1[n][IDX_B].powi(2));
        }
        for alpha in 0..N_LEVELS {
            total[alpha] += from[alpha];
            for m in 0..N_GROUND {
                to[alpha][m] += from[alpha] * c.branching[n][m];
            }
        }
    }
    LossRates { total, to, cpt, gamma, rydberg_decay_rate }
}
