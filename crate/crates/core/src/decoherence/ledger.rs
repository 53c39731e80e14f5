//! First-order loss ledger: each channel's rate of change is evaluated on the
//! coherent trajectory, weighted by its frame-frequency phase, carried to the
//! end of the protocol by the focus propagators, and integrated over time.

use log::warn;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::dissipator::{Channel, Conditioning, Dissipator, CONTROL_STAGE, TARGET_STAGE};
use super::quadrature::{oscillatory_weights, smooth_weights};
use super::rates::ScatteringModel;
use crate::atomic_physics::levels::{pair_index, LevelScheme, IDX_R, N_GROUND, N_LEVELS, N_PAIR};
use crate::dynamics::density::{CompactRho, TwoAtomDensityMatrix, SUPPORT};
use crate::dynamics::protocol::{ProtocolSetup, Trajectory};
use crate::error::{Error, Result};

/// Eigenvalue floor below which the corrected state is clamped.
pub const EIGENVALUE_FLOOR: f64 = -1e-6;

/// Frame-frequency indices `-2..=2`.
const N_NU: usize = 5;

/// Static inputs of the ledger for one parameter point.
#[derive(Clone, Debug)]
pub struct LedgerContext {
    pub dissipator: Dissipator,
    /// Light shifts (rad/s) of all nine levels at the focus while illuminated.
    pub level_shifts: [f64; N_LEVELS],
    /// Ground hyperfine splitting (rad/s), the unit of frame frequencies.
    pub hyperfine: f64,
    pub rydberg_decay_rate: f64,
}

impl LedgerContext {
    pub fn new(model: &ScatteringModel, scheme: &LevelScheme, level_shifts: [f64; N_LEVELS], rydberg_decay_rate: f64) -> Self {
        let class = std::array::from_fn(|i| if scheme.level_frequency(i) > 0.0 { 1 } else { 0 });
        Self {
            dissipator: Dissipator::new(model, class),
            level_shifts,
            hyperfine: scheme.ground_hyperfine,
            rydberg_decay_rate,
        }
    }
}

/// One trajectory sample inside one stage segment.
#[derive(Clone, Debug)]
struct PlanEntry {
    sample: usize,
    active: usize,
    cond: Conditioning,
    /// Columns of the propagator from the sample time to the end of the
    /// protocol that the dissipator can reach; `None` is identity.
    forward: Option<DMatrix<Complex64>>,
    /// Quadrature weight for each frame-frequency index.
    weights: [Complex64; N_NU],
}

/// Quadrature and forward propagation for every trajectory sample.
#[derive(Clone, Debug)]
pub struct LedgerPlan {
    entries: Vec<PlanEntry>,
    /// Real quadrature weights over the whole trajectory.
    smooth: Vec<f64>,
}

type TensorTerms = Vec<(DMatrix<Complex64>, DMatrix<Complex64>)>;

/// Sample indices of each stage segment, including the shared boundary sample.
fn segments(stages: &[usize]) -> Result<[Vec<usize>; 3]> {
    let mut seg: [Vec<usize>; 3] = Default::default();
    for (j, &k) in stages.iter().enumerate() {
        if k > 2 {
            return Err(Error::Argument(format!("stage index {k} out of range")));
        }
        if seg[k].is_empty() && j > 0 {
            seg[k].push(j - 1);
        }
        seg[k].push(j);
    }
    if seg.iter().any(|s| s.len() < 2) {
        return Err(Error::Argument("every stage needs at least two trajectory samples".into()));
    }
    Ok(seg)
}

fn stage_rule(stage: usize) -> (usize, Conditioning) {
    if stage == 1 {
        (1, TARGET_STAGE)
    } else {
        (0, CONTROL_STAGE)
    }
}

fn stage_terms(setup: &ProtocolSetup, shifts: &[f64; N_LEVELS], stage: usize, d: f64) -> TensorTerms {
    let a = setup.level_propagator(0, stage, false, d, shifts);
    let b = setup.level_propagator(1, stage, false, d, shifts);
    if stage != 1 {
        return vec![(a, b)];
    }
    let mut p_r = DMatrix::zeros(N_LEVELS, N_LEVELS);
    p_r[(IDX_R, IDX_R)] = Complex64::new(1.0, 0.0);
    let p_nr = DMatrix::identity(N_LEVELS, N_LEVELS) - &p_r;
    let blocked = setup.level_propagator(1, stage, true, d, shifts);
    vec![(&p_nr * &a, b), (&p_r * &a, blocked)]
}

/// `later * earlier` for sums of tensor products.
fn compose(later: &TensorTerms, earlier: &TensorTerms) -> TensorTerms {
    later
        .iter()
        .flat_map(|(la, lb)| earlier.iter().map(move |(ea, eb)| (la * ea, lb * eb)))
        .collect()
}

fn dense(terms: &TensorTerms) -> DMatrix<Complex64> {
    let mut out = DMatrix::zeros(N_PAIR, N_PAIR);
    for (a, b) in terms {
        out += a.kronecker(b);
    }
    out
}

/// Full-basis indices with the inactive atom inside `{a, b, r}`, the only
/// rows and columns a dissipator of the active atom writes to.
fn reachable(active: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(N_LEVELS * SUPPORT.len());
    for ia in 0..N_LEVELS {
        for ib in 0..N_LEVELS {
            let other = if active == 0 { ib } else { ia };
            if SUPPORT.contains(&other) {
                out.push(pair_index(ia, ib));
            }
        }
    }
    out
}

fn frequency_weights(times: &[f64], hyperfine: f64) -> [Vec<Complex64>; N_NU] {
    std::array::from_fn(|k| oscillatory_weights(times, (k as f64 - 2.0) * hyperfine))
}

impl LedgerPlan {
    pub fn new(setup: &ProtocolSetup, ctx: &LedgerContext, times: &[f64], stages: &[usize]) -> Result<Self> {
        Self::build(times, stages, ctx.hyperfine, |k, t| {
            let durations = setup.schedule.stage_durations();
            let end = durations[..=k].iter().sum::<f64>();
            let mut f = stage_terms(setup, &ctx.level_shifts, k, (end - t).max(0.0));
            for later in k + 1..3 {
                f = compose(&stage_terms(setup, &ctx.level_shifts, later, durations[later]), &f);
            }
            Some(dense(&f))
        })
    }

    fn build(
        times: &[f64],
        stages: &[usize],
        hyperfine: f64,
        forward: impl Fn(usize, f64) -> Option<DMatrix<Complex64>> + Sync,
    ) -> Result<Self> {
        if times.len() != stages.len() {
            return Err(Error::Argument("trajectory times and stages differ in length".into()));
        }
        let seg = segments(stages)?;
        let mut smooth = vec![0.0; times.len()];
        let mut entries = Vec::new();
        for (k, idx) in seg.iter().enumerate() {
            let t: Vec<f64> = idx.iter().map(|&j| times[j]).collect();
            for (j, w) in idx.iter().zip(smooth_weights(&t)) {
                smooth[*j] += w;
            }
            let w = frequency_weights(&t, hyperfine);
            let (active, cond) = stage_rule(k);
            let cols = reachable(active);
            let fwd: Vec<Option<DMatrix<Complex64>>> =
                t.par_iter().map(|&tj| forward(k, tj).map(|f| f.select_columns(&cols))).collect();
            for (n, (&j, f)) in idx.iter().zip(fwd).enumerate() {
                entries.push(PlanEntry { sample: j, active, cond, forward: f, weights: std::array::from_fn(|v| w[v][n]) });
            }
        }
        Ok(Self { entries, smooth })
    }

    /// Plan that leaves every increment at its own sample time.
    #[cfg(test)]
    fn unpropagated(times: &[f64], stages: &[usize], hyperfine: f64) -> Result<Self> {
        Self::build(times, stages, hyperfine, |_, _| None)
    }
}

/// Accumulated first-order changes of the final two-atom state.
#[derive(Clone, Debug, PartialEq)]
pub struct IncrementLedger {
    pub depopulation: DMatrix<Complex64>,
    pub optical_pumping: DMatrix<Complex64>,
    pub cpt_leak: DMatrix<Complex64>,
    pub cpt_repopulation: DMatrix<Complex64>,
    /// Change made by the Rydberg-decay admixture on top of the other channels.
    pub rydberg_decay: DMatrix<Complex64>,
    /// Probability that either atom decayed from `|r>` during the protocol.
    pub rydberg_probability: f64,
}

impl IncrementLedger {
    pub fn zeros() -> Self {
        let z = DMatrix::zeros(N_PAIR, N_PAIR);
        Self {
            depopulation: z.clone(),
            optical_pumping: z.clone(),
            cpt_leak: z.clone(),
            cpt_repopulation: z.clone(),
            rydberg_decay: z,
            rydberg_probability: 0.0,
        }
    }

    pub fn channel(&self, c: Channel) -> &DMatrix<Complex64> {
        match c {
            Channel::Depopulation => &self.depopulation,
            Channel::OpticalPumping => &self.optical_pumping,
            Channel::CptLeak => &self.cpt_leak,
            Channel::CptRepopulation => &self.cpt_repopulation,
        }
    }

    fn channel_mut(&mut self, c: Channel) -> &mut DMatrix<Complex64> {
        match c {
            Channel::Depopulation => &mut self.depopulation,
            Channel::OpticalPumping => &mut self.optical_pumping,
            Channel::CptLeak => &mut self.cpt_leak,
            Channel::CptRepopulation => &mut self.cpt_repopulation,
        }
    }

    /// Sum of the four scattering channels.
    pub fn scattering_total(&self) -> DMatrix<Complex64> {
        &self.depopulation + &self.optical_pumping + &self.cpt_leak + &self.cpt_repopulation
    }

    /// Frobenius norm of each channel, Rydberg decay last.
    pub fn norms(&self) -> [(&'static str, f64); 5] {
        [
            (Channel::Depopulation.name(), self.depopulation.norm()),
            (Channel::OpticalPumping.name(), self.optical_pumping.norm()),
            (Channel::CptLeak.name(), self.cpt_leak.norm()),
            (Channel::CptRepopulation.name(), self.cpt_repopulation.norm()),
            ("rydberg_decay", self.rydberg_decay.norm()),
        ]
    }
}

/// Integrated increment of one channel over the trajectory.
pub fn channel_increment(
    ctx: &LedgerContext,
    plan: &LedgerPlan,
    states: &[CompactRho],
    channel: Channel,
) -> Result<DMatrix<Complex64>> {
    if plan.smooth.len() != states.len() {
        return Err(Error::Argument(format!(
            "plan covers {} samples, trajectory has {}",
            plan.smooth.len(),
            states.len()
        )));
    }
    let mut out = DMatrix::zeros(N_PAIR, N_PAIR);
    let cols = [reachable(0), reachable(1)];
    for e in &plan.entries {
        let phase = |nu: i32| e.weights[(nu + 2) as usize];
        let d = ctx.dissipator.apply(channel, &states[e.sample], e.active, &e.cond, &phase);
        let c = &cols[e.active];
        match &e.forward {
            Some(f) => {
                let ds = d.select_rows(c).select_columns(c);
                out += f * ds * f.adjoint();
            }
            None => out += d,
        }
    }
    Ok(out)
}

/// `Gamma_ryd * integral (P_r^A + P_r^B) dt` along the trajectory.
pub fn rydberg_decay_probability(plan: &LedgerPlan, states: &[CompactRho], rydberg_decay_rate: f64) -> f64 {
    let pop = |rho: &CompactRho| -> f64 { (0..3).map(|o| rho[(6 + o, 6 + o)].re + rho[(3 * o + 2, 3 * o + 2)].re).sum() };
    rydberg_decay_rate * plan.smooth.iter().zip(states).map(|(w, rho)| w * pop(rho)).sum::<f64>()
}

/// `(1 - p) rho + p I_ground / 64`, renormalized.
pub fn rydberg_decay_admixture(rho: &TwoAtomDensityMatrix, p: f64) -> Result<TwoAtomDensityMatrix> {
    if !(0.0..0.5).contains(&p) {
        return Err(Error::ModelValidity(format!("Rydberg decay probability {p:.3e} outside [0, 0.5)")));
    }
    let mut m = &rho.m * Complex64::new(1.0 - p, 0.0);
    let g = (N_GROUND * N_GROUND) as f64;
    for i in 0..N_GROUND {
        for j in 0..N_GROUND {
            let k = i * N_LEVELS + j;
            m[(k, k)] += p / g;
        }
    }
    let tr = m.trace();
    Ok(TwoAtomDensityMatrix { m: m / tr })
}

/// Computes the requested scattering channels (others stay zero) and the
/// Rydberg-decay admixture for a coherent trajectory.
pub fn compute_increments(
    ctx: &LedgerContext,
    plan: &LedgerPlan,
    traj: &Trajectory,
    channels: &[Channel],
) -> Result<IncrementLedger> {
    let results: Vec<Result<(Channel, DMatrix<Complex64>)>> = channels
        .par_iter()
        .map(|&c| channel_increment(ctx, plan, &traj.states, c).map(|d| (c, d)))
        .collect();
    let mut ledger = IncrementLedger::zeros();
    for r in results {
        let (c, d) = r?;
        *ledger.channel_mut(c) = d;
    }
    let p = rydberg_decay_probability(plan, &traj.states, ctx.rydberg_decay_rate);
    ledger.rydberg_probability = p;
    if p > 0.0 {
        let before = TwoAtomDensityMatrix { m: traj.final_density().m + ledger.scattering_total() };
        let after = rydberg_decay_admixture(&before, p)?;
        ledger.rydberg_decay = after.m - before.m;
    }
    Ok(ledger)
}

/// Corrected final state and its positivity diagnostics.
#[derive(Clone, Debug)]
pub struct LossOutcome {
    pub rho: TwoAtomDensityMatrix,
    /// Smallest eigenvalue before clamping.
    pub min_eigenvalue: f64,
    pub clamped: bool,
}

/// `rho_dyn(t_end) + sum of increments`, clamped to a positive matrix when the
/// first-order result dips below [`EIGENVALUE_FLOOR`].
pub fn apply_loss_ledger(final_state: &CompactRho, ledger: &IncrementLedger) -> LossOutcome {
    let m = TwoAtomDensityMatrix::from_compact(final_state).m + ledger.scattering_total() + &ledger.rydberg_decay;
    let mut rho = TwoAtomDensityMatrix { m };
    rho.hermitize();
    let eig = rho.m.clone().symmetric_eigen();
    let min_eigenvalue = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    let clamped = min_eigenvalue < EIGENVALUE_FLOOR;
    if clamped {
        warn!("loss ledger produced eigenvalue {min_eigenvalue:.3e}; clamping and renormalizing");
        let vals = eig.eigenvalues.map(|v| Complex64::new(v.max(0.0), 0.0));
        let v = &eig.eigenvectors;
        let m = v * DMatrix::from_diagonal(&vals) * v.adjoint();
        let tr = m.trace();
        rho = TwoAtomDensityMatrix { m: m / tr };
    }
    LossOutcome { rho, min_eigenvalue, clamped }
}
