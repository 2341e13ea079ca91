//! Violation model, differential signals, parameter extraction and the
//! seeded Monte Carlo sensitivity campaign.
//!
//! A state-dependent coupling to gravity, g -> (1 + beta(state)) g, models
//! violations of the universality of free fall; the derived combination
//! alpha = m (beta_plus - beta_minus) / dm multiplies the redshift signal.
//! The violated phase is evaluated by recomputing trajectories and proper
//! times with the modified coupling, not by pasting the linearized formula,
//! so the linearized expressions remain available as independent test
//! targets for the evaluation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::kinematics::propagate_with_state_gravity;
use crate::model::{build_redshift_geometry, Constants, InternalState, PulseSequence, Species};
use crate::phase::{reference_phase, segment_dtaus_with_redshift, PhaseBreakdown, RunSignature};

/// Validity guard for the linearized violation model.
pub const BETA_LIMIT: f64 = 1e-2;

/// State-dependent free-fall violation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ViolationParams {
    pub beta_plus: f64,
    pub beta_minus: f64,
}

impl ViolationParams {
    pub fn none() -> Self {
        ViolationParams {
            beta_plus: 0.0,
            beta_minus: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("beta_plus", self.beta_plus),
            ("beta_minus", self.beta_minus),
        ] {
            if !v.is_finite() {
                return Err(invalid("beta", format!("{name} must be finite")));
            }
            if v.abs() >= BETA_LIMIT {
                return Err(Error::BetaOutOfRange {
                    value: v.abs(),
                    limit: BETA_LIMIT,
                });
            }
        }
        Ok(())
    }

    /// beta_plus - beta_minus, the free-fall (Eotvos-type) violation.
    pub fn dbeta(&self) -> f64 {
        self.beta_plus - self.beta_minus
    }

    /// Redshift violation alpha = m (beta_plus - beta_minus) / dm.
    pub fn alpha(&self, species: &Species, constants: &Constants) -> f64 {
        species.mass * self.dbeta() / species.dm(constants)
    }

    /// Gravitational acceleration felt in a given internal state.
    pub fn gravity_of(&self, state: InternalState, constants: &Constants) -> f64 {
        let beta = match state {
            InternalState::Excited => self.beta_plus,
            InternalState::Ground => self.beta_minus,
        };
        (1.0 + beta) * constants.g
    }
}

/// Noise configuration of the measurement campaign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseModel {
    /// Atom flux, atoms/s.
    pub atom_flux: f64,
    /// Duration of one full measurement cycle (all configurations), s.
    pub cycle_time: f64,
    /// Per-shot acceleration-noise equivalent of vibrations, m/s^2.
    pub vibration_accel: f64,
    /// Shared-pulse continuous operation: successive differential pairs of
    /// the same configuration share a boundary vibration sample, so the
    /// correlated noise telescopes and averages down as 1/t_avg.
    pub interleaved: bool,
    /// Fraction of the shared vibration sample that fails to cancel
    /// (0 = perfect common mode).
    pub leakage: f64,
}

impl NoiseModel {
    /// Parameters assumed for the sensitivity estimate: 1e5 atoms/s, 4 s
    /// cycle, 5e-10 m/s^2 vibration equivalent, interleaved operation.
    pub fn reference() -> Self {
        NoiseModel {
            atom_flux: 1e5,
            cycle_time: 4.0,
            vibration_accel: 5e-10,
            interleaved: true,
            leakage: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.atom_flux.is_finite() || self.atom_flux <= 0.0 {
            return Err(invalid("atom_flux", "must be finite and > 0"));
        }
        if !self.cycle_time.is_finite() || self.cycle_time <= 0.0 {
            return Err(invalid("cycle_time", "must be finite and > 0"));
        }
        if !self.vibration_accel.is_finite() || self.vibration_accel < 0.0 {
            return Err(invalid("vibration_accel", "must be finite and >= 0"));
        }
        if !(0.0..=1.0).contains(&self.leakage) {
            return Err(invalid("leakage", "must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// Phase of the interferometer under the violation model: the trajectories
/// and the proper-time redshift factors are recomputed with the
/// state-dependent gravitational acceleration.
pub fn violated_phase(
    seq: &PulseSequence,
    species: &Species,
    constants: &Constants,
    v: &ViolationParams,
) -> Result<PhaseBreakdown> {
    v.validate()?;
    let g_of = |state: InternalState| v.gravity_of(state, constants);
    let (upper, lower) = propagate_with_state_gravity(seq, species, constants, &g_of)?;
    let ref_phase = reference_phase(seq, &upper, &lower, species, constants)?;
    let segments = segment_dtaus_with_redshift(&upper, &lower, &g_of, constants)?;
    Ok(PhaseBreakdown::assemble(
        ref_phase,
        segments,
        species.omega,
        RunSignature::of(seq, species),
    ))
}

/// Differential signal between a run and its state-inverted partner, with
/// the two phase contributions differenced separately so that the huge
/// common reference phase cancels without eating the clock-scale signal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DifferentialSignal {
    /// Reference-phase difference (the free-fall violation term; exactly
    /// zero for beta_plus = beta_minus).
    pub ref_part: f64,
    /// Clock-phase difference, 2 Omega dtau_2 at leading order.
    pub clock_part: f64,
    /// ref_part + clock_part.
    pub total: f64,
}

/// Form the differential signal; errors unless the two runs share pulse
/// times, kicks and transition frequency and have exactly inverted state
/// patterns.
pub fn differential_parts(
    normal: &PhaseBreakdown,
    inverted: &PhaseBreakdown,
) -> Result<DifferentialSignal> {
    if normal.signature != inverted.signature {
        return Err(Error::RunMismatch(
            "pulse times, kicks or transition frequency differ".into(),
        ));
    }
    if normal.segments.len() != inverted.segments.len() {
        return Err(Error::RunMismatch("segment counts differ".into()));
    }
    for (a, b) in normal.segments.iter().zip(&inverted.segments) {
        if a.lambda != b.lambda.flipped() {
            return Err(Error::RunMismatch(
                "state patterns are not mutual inversions".into(),
            ));
        }
    }
    let ref_part = normal.ref_phase - inverted.ref_phase;
    let clock_part = normal.clock_phase - inverted.clock_phase;
    Ok(DifferentialSignal {
        ref_part,
        clock_part,
        total: ref_part + clock_part,
    })
}

/// delta_phi = phase(normal) - phase(inverted).
pub fn differential_signal(normal: &PhaseBreakdown, inverted: &PhaseBreakdown) -> Result<f64> {
    Ok(differential_parts(normal, inverted)?.total)
}

// ---------------------------------------------------------------------------
// linear extraction model
// ---------------------------------------------------------------------------

/// Coefficient of T(1+alpha) in the differential signal: 2 Omega times the
/// per-unit-T middle-segment time dilation.
pub fn clock_coefficient(t1: f64, k: f64, species: &Species, constants: &Constants) -> f64 {
    4.0 * species.omega * constants.g * constants.hbar * k * t1 / (species.mass * constants.c2())
}

/// Coefficient of (T + T1) dbeta in the differential signal.
pub fn uff_coefficient(t1: f64, k: f64, constants: &Constants) -> f64 {
    2.0 * k * constants.g * t1
}

/// Result of the least-squares extraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extraction {
    pub alpha: f64,
    pub dbeta: f64,
    /// Condition number of the column-equilibrated normal matrix.
    pub condition_number: f64,
    /// Root-mean-square residual, present for over-determined systems.
    pub residual_rms: Option<f64>,
}

/// Two-column least-squares model delta_phi(T) = C1 T (1+alpha) - C2 (T+T1) dbeta.
struct DesignMatrix {
    rows: Vec<(f64, f64)>, // (a1, a2) per observation
    rho: f64,
    n1: f64,
    n2: f64,
}

impl DesignMatrix {
    fn build(t_values: &[f64], t1: f64, c1: f64, c2: f64) -> Result<Self> {
        let rows: Vec<(f64, f64)> = t_values.iter().map(|&t| (c1 * t, -c2 * (t + t1))).collect();
        let s11: f64 = rows.iter().map(|r| r.0 * r.0).sum();
        let s22: f64 = rows.iter().map(|r| r.1 * r.1).sum();
        let s12: f64 = rows.iter().map(|r| r.0 * r.1).sum();
        let (n1, n2) = (s11.sqrt(), s22.sqrt());
        if n1 <= 0.0 || n2 <= 0.0 || n1.is_nan() || n2.is_nan() {
            return Err(Error::SingularSystem { cond: f64::MAX });
        }
        let rho = s12 / (n1 * n2);
        let m = DesignMatrix { rows, rho, n1, n2 };
        if 1.0 - rho.abs() <= 1e-12 {
            return Err(Error::SingularSystem {
                cond: m.condition_number(),
            });
        }
        Ok(m)
    }

    fn condition_number(&self) -> f64 {
        (1.0 + self.rho.abs()) / (1.0 - self.rho.abs()).max(f64::MIN_POSITIVE)
    }

    /// Per-observation weights such that alpha = sum w1_i b_i and
    /// dbeta = sum w2_i b_i.
    fn weights(&self) -> Vec<(f64, f64)> {
        let det = 1.0 - self.rho * self.rho;
        self.rows
            .iter()
            .map(|&(a1, a2)| {
                let u1 = a1 / self.n1;
                let u2 = a2 / self.n2;
                (
                    (u1 - self.rho * u2) / (self.n1 * det),
                    (u2 - self.rho * u1) / (self.n2 * det),
                )
            })
            .collect()
    }

    fn solve(&self, b: &[f64]) -> (f64, f64) {
        let w = self.weights();
        let alpha: f64 = w.iter().zip(b).map(|(wi, bi)| wi.0 * bi).sum();
        let dbeta: f64 = w.iter().zip(b).map(|(wi, bi)| wi.1 * bi).sum();
        (alpha, dbeta)
    }
}

/// Least-squares extraction of (alpha, dbeta) from differential signals
/// taken at two or more distinct central-segment durations T.
pub fn extract_alpha_dbeta(
    signals: &[(f64, f64)],
    t1: f64,
    k: f64,
    species: &Species,
    constants: &Constants,
) -> Result<Extraction> {
    if signals.len() < 2 {
        return Err(Error::InsufficientData(
            "need at least two differential signals".into(),
        ));
    }
    let c1 = clock_coefficient(t1, k, species, constants);
    let c2 = uff_coefficient(t1, k, constants);
    let t_values: Vec<f64> = signals.iter().map(|s| s.0).collect();
    let m = DesignMatrix::build(&t_values, t1, c1, c2)?;
    let b: Vec<f64> = signals.iter().map(|&(t, dphi)| dphi - c1 * t).collect();
    let (alpha, dbeta) = m.solve(&b);
    let residual_rms = if signals.len() > 2 {
        let ss: f64 = m
            .rows
            .iter()
            .zip(&b)
            .map(|(&(a1, a2), &bi)| {
                let r = bi - a1 * alpha - a2 * dbeta;
                r * r
            })
            .sum();
        Some((ss / signals.len() as f64).sqrt())
    } else {
        None
    };
    Ok(Extraction {
        alpha,
        dbeta,
        condition_number: m.condition_number(),
        residual_rms,
    })
}

// ---------------------------------------------------------------------------
// noise primitives
// ---------------------------------------------------------------------------

/// Quantum projection noise of a single shot: sigma_phi = 1/sqrt(N).
pub fn shot_noise(n_atoms: f64) -> Result<f64> {
    if !n_atoms.is_finite() || n_atoms < 1.0 {
        return Err(invalid(
            "n_atoms",
            format!("need at least one atom, got {n_atoms}"),
        ));
    }
    Ok(1.0 / n_atoms.sqrt())
}

/// Per-shot phase noise from the acceleration-noise equivalent, using the
/// same acceleration-to-phase transfer as the reference phase:
/// sigma = 2 k da T1 (T + T1).
pub fn vibration_phase_noise(noise: &NoiseModel, t1: f64, t: f64, k: f64) -> f64 {
    2.0 * k * noise.vibration_accel * t1 * (t + t1)
}

fn atoms_per_shot(noise: &NoiseModel, n_t_values: usize) -> f64 {
    // one cycle covers a normal and an inverted shot per T value
    noise.atom_flux * noise.cycle_time / (2.0 * n_t_values as f64)
}

/// Variance of the M-cycle average of the per-pair vibration noise.
///
/// Non-interleaved pairs carry two independent samples each. Interleaved
/// pairs carry (a_j - (1-leak) a_{j+1}), so the sum over M cycles
/// telescopes: the average keeps the two boundary samples plus a leakage
/// floor, giving the 1/t_avg law for the correlated component.
fn vibration_mean_variance(noise: &NoiseModel, sigma_pair: f64, cycles: u64) -> f64 {
    let m = cycles as f64;
    if noise.interleaved {
        let l = noise.leakage;
        sigma_pair * sigma_pair * (1.0 + (1.0 - l) * (1.0 - l) + (m - 1.0) * l * l) / (m * m)
    } else {
        2.0 * sigma_pair * sigma_pair / m
    }
}

/// Analytic 1-sigma uncertainties on (alpha, dbeta) after averaging the
/// differential scheme for `t_avg` seconds.
pub fn sensitivity_budget(
    noise: &NoiseModel,
    t1: f64,
    k: f64,
    t_values: &[f64],
    species: &Species,
    constants: &Constants,
    t_avg: f64,
) -> Result<(f64, f64)> {
    noise.validate()?;
    if t_values.len() < 2 {
        return Err(Error::InsufficientData(
            "need at least two central-segment durations".into(),
        ));
    }
    if t_avg < noise.cycle_time {
        return Err(Error::AveragingTooShort {
            t_avg,
            cycle: noise.cycle_time,
        });
    }
    let cycles = (t_avg / noise.cycle_time).floor() as u64;
    let n = atoms_per_shot(noise, t_values.len());
    let sigma_shot = shot_noise(n)?;

    let c1 = clock_coefficient(t1, k, species, constants);
    let c2 = uff_coefficient(t1, k, constants);
    let m = DesignMatrix::build(t_values, t1, c1, c2)?;
    let w = m.weights();

    let mut var_alpha = 0.0;
    let mut var_dbeta = 0.0;
    for (i, &t) in t_values.iter().enumerate() {
        let shot_var = 2.0 * sigma_shot * sigma_shot / cycles as f64;
        let vib_pair = vibration_phase_noise(noise, t1, t, k);
        let vib_var = vibration_mean_variance(noise, vib_pair, cycles);
        let var = shot_var + vib_var;
        var_alpha += w[i].0 * w[i].0 * var;
        var_dbeta += w[i].1 * w[i].1 * var;
    }
    Ok((var_alpha.sqrt(), var_dbeta.sqrt()))
}

// ---------------------------------------------------------------------------
// Monte Carlo campaign
// ---------------------------------------------------------------------------

/// Plan for a simulated measurement campaign.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignPlan {
    /// Central-segment durations alternated within each cycle, s.
    pub t_values: Vec<f64>,
    /// Total averaging time, s.
    pub t_avg: f64,
    pub seed: u64,
    pub include_shot: bool,
    pub include_vibration: bool,
}

impl CampaignPlan {
    pub fn reference(seed: u64) -> Self {
        CampaignPlan {
            t_values: vec![0.4, 0.6],
            t_avg: 6e4,
            seed,
            include_shot: true,
            include_vibration: true,
        }
    }
}

/// One simulated shot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CycleRecord {
    /// Global shot index.
    pub index: u64,
    /// Measurement-cycle index.
    pub cycle: u64,
    pub inverted: bool,
    /// Central-segment duration, s.
    pub t: f64,
    /// Recorded phase: model phase plus the noise terms below, rad.
    pub phase: f64,
    pub shot_noise: f64,
    pub vibration_noise: f64,
}

/// Campaign output: the raw records and the accumulated estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignOutcome {
    pub cycles: u64,
    pub atoms_per_shot: f64,
    pub alpha: f64,
    pub alpha_sigma: f64,
    pub dbeta: f64,
    pub dbeta_sigma: f64,
    pub condition_number: f64,
    pub records: Vec<CycleRecord>,
}

const STREAM_SHOT: u64 = 1;
const STREAM_VIBRATION: u64 = 2;

fn mix64(mut x: u64) -> u64 {
    // splitmix64 finalizer
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Deterministic per-(cycle, stream) generator: cycles are independent given
/// the master seed, so the campaign is reproducible and order-independent.
fn substream_rng(master: u64, cycle: u64, stream: u64) -> ChaCha12Rng {
    let mut state = mix64(master ^ 0x9E37_79B9_7F4A_7C15);
    state = mix64(state ^ cycle.wrapping_mul(0xD1B5_4A32_D192_ED03));
    state = mix64(state ^ stream.wrapping_mul(0xA9B4_4C5F_9B8F_6E21));
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_exact_mut(8) {
        state = mix64(state.wrapping_add(0x9E37_79B9_7F4A_7C15));
        chunk.copy_from_slice(&state.to_le_bytes());
    }
    ChaCha12Rng::from_seed(seed)
}

/// Shared vibration sample of configuration stream `t_index` at cycle
/// boundary `cycle` (standard normal; both neighbouring cycles can
/// recompute it).
fn vibration_sample(master: u64, cycle: u64, t_index: u64) -> f64 {
    let mut rng = substream_rng(master, cycle, STREAM_VIBRATION + 16 * t_index);
    rng.sample(StandardNormal)
}

/// Simulate the interleaved campaign: per cycle and per T value a normal
/// and a state-inverted shot, shot noise 1/sqrt(N) per shot, vibration
/// noise mapped through the acceleration-to-phase transfer, differential
/// signals accumulated and passed to the least-squares extraction.
pub fn monte_carlo_campaign(
    noise: &NoiseModel,
    t1: f64,
    k: f64,
    species: &Species,
    constants: &Constants,
    v: &ViolationParams,
    plan: &CampaignPlan,
) -> Result<CampaignOutcome> {
    noise.validate()?;
    v.validate()?;
    if plan.t_values.len() < 2 {
        return Err(Error::InsufficientData(
            "need at least two central-segment durations".into(),
        ));
    }
    if plan.t_avg < noise.cycle_time {
        return Err(Error::AveragingTooShort {
            t_avg: plan.t_avg,
            cycle: noise.cycle_time,
        });
    }
    let cycles = (plan.t_avg / noise.cycle_time).floor() as u64;
    if cycles < 2 {
        return Err(Error::InsufficientData(
            "need at least two cycles for an empirical uncertainty".into(),
        ));
    }
    let n_atoms = atoms_per_shot(noise, plan.t_values.len());
    let sigma_shot = shot_noise(n_atoms)?;

    // model phases per configuration, computed once
    struct Config {
        t: f64,
        total_normal: f64,
        total_inverted: f64,
        dphi_true: f64,
        sigma_vib: f64,
    }
    let mut configs = Vec::with_capacity(plan.t_values.len());
    for &t in &plan.t_values {
        let seq_n = build_redshift_geometry(t1, t, k, false)?;
        let seq_i = build_redshift_geometry(t1, t, k, true)?;
        let pb_n = violated_phase(&seq_n, species, constants, v)?;
        let pb_i = violated_phase(&seq_i, species, constants, v)?;
        let parts = differential_parts(&pb_n, &pb_i)?;
        configs.push(Config {
            t,
            total_normal: pb_n.total,
            total_inverted: pb_i.total,
            dphi_true: parts.total,
            sigma_vib: vibration_phase_noise(noise, t1, t, k),
        });
    }

    struct StreamStats {
        sum: f64,
        sum_sq: f64,
        /// sum of x_j * x_{j+1} over adjacent cycles
        sum_adjacent: f64,
        first: f64,
        last: f64,
    }
    let mut records = Vec::with_capacity((cycles as usize) * configs.len() * 2);
    let mut stats: Vec<StreamStats> = configs
        .iter()
        .map(|_| StreamStats {
            sum: 0.0,
            sum_sq: 0.0,
            sum_adjacent: 0.0,
            first: 0.0,
            last: 0.0,
        })
        .collect();
    let mut shot_index = 0u64;
    for cycle in 0..cycles {
        for (ti, cfg) in configs.iter().enumerate() {
            let mut rng = substream_rng(plan.seed, cycle, STREAM_SHOT + 16 * ti as u64);
            let (shot_n, shot_i) = if plan.include_shot {
                let a: f64 = rng.sample(StandardNormal);
                let b: f64 = rng.sample(StandardNormal);
                (sigma_shot * a, sigma_shot * b)
            } else {
                (0.0, 0.0)
            };
            let (vib_n, vib_i) = if plan.include_vibration {
                if noise.interleaved {
                    let a = vibration_sample(plan.seed, cycle, ti as u64);
                    let b = vibration_sample(plan.seed, cycle + 1, ti as u64);
                    (cfg.sigma_vib * a, cfg.sigma_vib * (1.0 - noise.leakage) * b)
                } else {
                    let a: f64 = rng.sample(StandardNormal);
                    let b: f64 = rng.sample(StandardNormal);
                    (cfg.sigma_vib * a, cfg.sigma_vib * b)
                }
            } else {
                (0.0, 0.0)
            };

            records.push(CycleRecord {
                index: shot_index,
                cycle,
                inverted: false,
                t: cfg.t,
                phase: cfg.total_normal + shot_n + vib_n,
                shot_noise: shot_n,
                vibration_noise: vib_n,
            });
            records.push(CycleRecord {
                index: shot_index + 1,
                cycle,
                inverted: true,
                t: cfg.t,
                phase: cfg.total_inverted + shot_i + vib_i,
                shot_noise: shot_i,
                vibration_noise: vib_i,
            });
            shot_index += 2;

            // differential signal assembled from the separated parts plus
            // the per-shot noise terms
            let dphi = cfg.dphi_true + (shot_n - shot_i) + (vib_n - vib_i);
            let s = &mut stats[ti];
            if cycle == 0 {
                s.first = dphi;
            } else {
                s.sum_adjacent += s.last * dphi;
            }
            s.sum += dphi;
            s.sum_sq += dphi * dphi;
            s.last = dphi;
        }
    }

    let m = cycles as f64;
    let c1 = clock_coefficient(t1, k, species, constants);
    let c2 = uff_coefficient(t1, k, constants);
    let design = DesignMatrix::build(&plan.t_values, t1, c1, c2)?;
    let means: Vec<f64> = stats.iter().map(|s| s.sum / m).collect();
    let b: Vec<f64> = means
        .iter()
        .zip(&plan.t_values)
        .map(|(&mean, &t)| mean - c1 * t)
        .collect();
    let (alpha, dbeta) = design.solve(&b);

    // Empirical uncertainty of each per-configuration mean. Interleaved
    // operation anti-correlates adjacent cycles (the shared boundary sample
    // telescopes out of the sum), so the naive s^2/M estimate would
    // overstate the uncertainty by up to a factor M; the lag-1-corrected
    // estimator Var(mean) = [gamma0 + 2 gamma1 (M-1)/M]/M is exact for that
    // structure. The noise model never correlates cycles positively, so the
    // estimate is clamped between the surviving boundary-term variance
    // gamma0/M^2 and the uncorrelated value gamma0/M.
    let w = design.weights();
    let mut var_alpha = 0.0;
    let mut var_dbeta = 0.0;
    for (i, s) in stats.iter().enumerate() {
        let mean = means[i];
        let gamma0 = ((s.sum_sq - m * mean * mean) / (m - 1.0)).max(0.0);
        let gamma1 = (s.sum_adjacent - mean * (2.0 * s.sum - s.first - s.last)
            + (m - 1.0) * mean * mean)
            / (m - 1.0);
        let var_mean =
            ((gamma0 + 2.0 * gamma1 * (m - 1.0) / m) / m).clamp(gamma0 / (m * m), gamma0 / m);
        var_alpha += w[i].0 * w[i].0 * var_mean;
        var_dbeta += w[i].1 * w[i].1 * var_mean;
    }

    Ok(CampaignOutcome {
        cycles,
        atoms_per_shot: n_atoms,
        alpha,
        alpha_sigma: var_alpha.sqrt(),
        dbeta,
        dbeta_sigma: var_dbeta.sqrt(),
        condition_number: design.condition_number(),
        records,
    })
}
