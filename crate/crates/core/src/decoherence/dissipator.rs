//! Scattering dissipator of one illuminated atom, split into depopulation,
//! optical pumping, CPT leakage and CPT repopulation.
//!
//! With admixture matrix `K = K_g + K_r` (ground columns and the `|r>` column)
//! and jump operators `L_q = E_q K`, the dissipator
//! `gamma (sum_q L_q rho L_q^+ - {K^+ K, rho} / 2)` separates into
//!
//! * optical pumping: `L_g rho L_g^+ + L_r rho L_r^+`
//! * CPT repopulation: `L_g rho L_r^+ + L_r rho L_g^+`
//! * depopulation: `-{K_g^+ K_g + K_r^+ K_r, rho} / 2`
//! * CPT leakage: `-{K_g^+ K_r + K_r^+ K_g, rho} / 2`
//!
//! and each income/outcome pair is trace neutral on its own.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::rates::ScatteringModel;
use crate::atomic_physics::levels::{pair_index, IDX_R, N_GROUND, N_LEVELS, N_PAIR};
use crate::dynamics::density::{CompactRho, SUPPORT};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    Depopulation,
    OpticalPumping,
    CptLeak,
    CptRepopulation,
}

impl Channel {
    pub const ALL: [Channel; 4] = [Channel::Depopulation, Channel::OpticalPumping, Channel::CptLeak, Channel::CptRepopulation];

    pub fn name(self) -> &'static str {
        match self {
            Channel::Depopulation => "depopulation",
            Channel::OpticalPumping => "optical_pumping",
            Channel::CptLeak => "cpt_leak",
            Channel::CptRepopulation => "cpt_repopulation",
        }
    }
}

/// How the active atom scatters given the level of the other atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelRule {
    Full,
    /// The `|r>` column is dropped (blockade-shifted Rydberg level is not driven).
    NoRydberg,
    Off,
}

/// Rules indexed by the other atom's compact level (a, b, r).
pub type Conditioning = [LevelRule; 3];

/// Active atom A during its pulses: no scattering when B occupies `|r>`.
pub const CONTROL_STAGE: Conditioning = [LevelRule::Full, LevelRule::Full, LevelRule::Off];
/// Active atom B during its pulse: no Rydberg column when A occupies `|r>`.
pub const TARGET_STAGE: Conditioning = [LevelRule::Full, LevelRule::Full, LevelRule::NoRydberg];
pub const UNCONDITIONED: Conditioning = [LevelRule::Full; 3];

/// Precomputed jump and loss matrices of one atom.
#[derive(Clone, Debug)]
pub struct Dissipator {
    /// `gamma`-scaled ground-column jump operators `[q][m][alpha]`.
    jump_g: [[[Complex64; N_LEVELS]; N_GROUND]; 3],
    jump_r: [[[Complex64; N_LEVELS]; N_GROUND]; 3],
    /// `K_x^+ K_y` for `x, y` in {g, r}, indexed `[x][y][i][j]`.
    gen: [[[[Complex64; N_LEVELS]; N_LEVELS]; 2]; 2],
    gamma: f64,
    /// Frame-frequency class of each level in units of the ground splitting.
    class: [i32; N_LEVELS],
}

impl Dissipator {
    /// `class[i]` is the level's frame frequency in units of the ground splitting.
    pub fn new(model: &ScatteringModel, class: [i32; N_LEVELS]) -> Self {
        let g = model.restricted(|c| c != IDX_R);
        let r = model.restricted(|c| c == IDX_R);
        let mut gen = [[[[ZERO; N_LEVELS]; N_LEVELS]; 2]; 2];
        let ks = [&g.k, &r.k];
        for x in 0..2 {
            for y in 0..2 {
                for i in 0..N_LEVELS {
                    for j in 0..N_LEVELS {
                        gen[x][y][i][j] = (0..ks[x].len()).map(|n| ks[x][n][i].conj() * ks[y][n][j]).sum();
                    }
                }
            }
        }
        Self { jump_g: g.jump_operators(), jump_r: r.jump_operators(), gen, gamma: model.gamma, class }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Frequency index `(c_m - c_alpha) - (c_m' - c_alpha')`, in `-2..=2` for two classes.
    fn nu(&self, m: usize, alpha: usize, mp: usize, alphap: usize) -> i32 {
        (self.class[m] - self.class[alpha]) - (self.class[mp] - self.class[alphap])
    }

    fn jumps(&self, rule: LevelRule) -> [Option<&[[[Complex64; N_LEVELS]; N_GROUND]; 3]>; 2] {
        match rule {
            LevelRule::Full => [Some(&self.jump_g), Some(&self.jump_r)],
            LevelRule::NoRydberg => [Some(&self.jump_g), None],
            LevelRule::Off => [None, None],
        }
    }

    fn generator(&self, rule: LevelRule, channel: Channel, i: usize, j: usize) -> Complex64 {
        let (g, r) = match rule {
            LevelRule::Full => (true, true),
            LevelRule::NoRydberg => (true, false),
            LevelRule::Off => return ZERO,
        };
        match channel {
            Channel::Depopulation => {
                let mut v = if g { self.gen[0][0][i][j] } else { ZERO };
                if r {
                    v += self.gen[1][1][i][j];
                }
                v
            }
            Channel::CptLeak if g && r => self.gen[0][1][i][j] + self.gen[1][0][i][j],
            _ => ZERO,
        }
    }

    /// Rate of change of the two-atom state from one channel of atom `active`
    /// (0 = A, 1 = B), with each term multiplied by `phase(nu)` for its
    /// frame-frequency index `nu`. Returns an 81x81 matrix over the full basis.
    pub fn apply(
        &self,
        channel: Channel,
        rho: &CompactRho,
        active: usize,
        cond: &Conditioning,
        phase: &dyn Fn(i32) -> Complex64,
    ) -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(N_PAIR, N_PAIR);
        // rho[(x, o), (x', o')] with x the active and o the other atom (compact positions)
        let el = |x: usize, o: usize, xp: usize, op: usize| -> Complex64 {
            if active == 0 {
                rho[(3 * x + o, 3 * xp + op)]
            } else {
                rho[(3 * o + x, 3 * op + xp)]
            }
        };
        let full = |lx: usize, o: usize| -> usize {
            if active == 0 {
                pair_index(lx, SUPPORT[o])
            } else {
                pair_index(SUPPORT[o], lx)
            }
        };
        let gamma = Complex64::new(self.gamma, 0.0);
        match channel {
            Channel::OpticalPumping | Channel::CptRepopulation => {
                let pairs: &[(usize, usize)] =
                    if channel == Channel::OpticalPumping { &[(0, 0), (1, 1)] } else { &[(0, 1), (1, 0)] };
                for o in 0..3 {
                    let lo = self.jumps(cond[o]);
                    for op in 0..3 {
                        let lop = self.jumps(cond[op]);
                        for &(x, y) in pairs {
                            let (Some(l1), Some(l2)) = (lo[x], lop[y]) else { continue };
                            for xa in 0..3 {
                                let alpha = SUPPORT[xa];
                                for xap in 0..3 {
                                    let alphap = SUPPORT[xap];
                                    let r = el(xa, o, xap, op);
                                    if r == ZERO {
                                        continue;
                                    }
                                    for m in 0..N_GROUND {
                                        for mp in 0..N_GROUND {
                                            let mut s = ZERO;
                                            for q in 0..3 {
                                                s += l1[q][m][alpha] * l2[q][mp][alphap].conj();
                                            }
                                            if s == ZERO {
                                                continue;
                                            }
                                            let ph = phase(self.nu(m, alpha, mp, alphap));
                                            out[(full(m, o), full(mp, op))] += gamma * s * r * ph;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            Channel::Depopulation | Channel::CptLeak => {
                let half = -0.5 * gamma;
                for o in 0..3 {
                    for op in 0..3 {
                        for xa in 0..3 {
                            for xap in 0..3 {
                                let (alpha, alphap) = (SUPPORT[xa], SUPPORT[xap]);
                                let mut acc = ZERO;
                                for xm in 0..3 {
                                    let mid = SUPPORT[xm];
                                    let gl = self.generator(cond[o], channel, alpha, mid);
                                    if gl != ZERO {
                                        acc += gl * el(xm, o, xap, op) * phase(self.class[alpha] - self.class[mid]);
                                    }
                                    let gr = self.generator(cond[op], channel, mid, alphap);
                                    if gr != ZERO {
                                        acc += el(xa, o, xm, op) * gr * phase(self.class[mid] - self.class[alphap]);
                                    }
                                }
                                if acc != ZERO {
                                    out[(full(alpha, o), full(alphap, op))] += half * acc;
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}
