//! Proper-time accounting and the interferometer phase.
//!
//! The phase is split into two contributions that live on very different
//! scales: the reference phase (order 1e8 rad for realistic parameters) and
//! the clock phase (order mrad). The two are computed by separate closed-form
//! expressions and are never merged into a single float except in the
//! direct-propagation cross-check, whose resolution is therefore limited to
//! one ulp of the total (~1e-7 rad at 5e8 rad); that floor sits well below
//! the mrad clock signal.
//!
//! All integrals are polynomial and evaluated with antiderivatives. Branch
//! differences (proper-time differences, action differences) are computed
//! from differenced integrands, not by subtracting per-branch totals, so the
//! tiny clock-scale quantities are not destroyed by cancellation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinematics::{
    check_pair, closure_defect, is_closed, propagate_reference, BranchTrajectory, Segment,
};
use crate::model::{Branch, Constants, InternalState, PulseSequence, Species};

/// Proper-time difference accumulated over one inter-pulse segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SegmentProperTime {
    /// Segment ordinal (0-based, counting inter-pulse segments).
    pub index: usize,
    /// Internal state occupied during the segment.
    pub lambda: InternalState,
    /// Delta tau_n = tau_n(upper) - tau_n(lower), s.
    pub dtau: f64,
}

/// Geometry/species echo used to decide whether two runs may be compared
/// differentially.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSignature {
    pub pulse_times: Vec<f64>,
    pub kicks: Vec<(f64, f64)>,
    pub omega: f64,
}

impl RunSignature {
    pub fn of(seq: &PulseSequence, species: &Species) -> Self {
        RunSignature {
            pulse_times: seq.pulses.iter().map(|p| p.t).collect(),
            kicks: seq.pulses.iter().map(|p| (p.k_upper, p.k_lower)).collect(),
            omega: species.omega,
        }
    }
}

/// The interferometer phase with its contributions kept separate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseBreakdown {
    /// Mass-defect-independent phase of the closed reference interferometer, rad.
    pub ref_phase: f64,
    /// Per-segment proper-time differences with their internal states.
    pub segments: Vec<SegmentProperTime>,
    /// -(Omega/2) * sum_n lambda_n * dtau_n, rad.
    pub clock_phase: f64,
    /// ref_phase + clock_phase, rad.
    pub total: f64,
    pub signature: RunSignature,
}

impl PhaseBreakdown {
    pub fn assemble(
        ref_phase: f64,
        segments: Vec<SegmentProperTime>,
        omega: f64,
        signature: RunSignature,
    ) -> Self {
        let clock = clock_phase(&segments, omega);
        PhaseBreakdown {
            ref_phase,
            clock_phase: clock,
            total: ref_phase + clock,
            segments,
            signature,
        }
    }
}

// ---------------------------------------------------------------------------
// polynomial building blocks
// ---------------------------------------------------------------------------

/// Integral of zdot^2 over one segment, int_0^D (v0 + a s)^2 ds.
fn velocity_square_integral(seg: &Segment) -> f64 {
    let d = seg.duration();
    let v0 = seg.v0();
    v0 * v0 * d + v0 * seg.accel * d * d + seg.accel * seg.accel * d * d * d / 3.0
}

/// Integral of z over one segment, int_0^D (z0 + v0 s + a s^2/2) ds.
fn position_integral(seg: &Segment) -> f64 {
    let d = seg.duration();
    seg.z0() * d + 0.5 * seg.v0() * d * d + seg.accel * d * d * d / 6.0
}

/// Integral of (zdot_u^2 - zdot_l^2) over a shared-boundary segment pair,
/// evaluated from the differenced integrand so that the result keeps full
/// precision when the branches nearly coincide.
fn velocity_square_difference_integral(upper: &Segment, lower: &Segment) -> f64 {
    let d = upper.duration();
    let (_, dv, da) = Segment::difference(upper, lower);
    let sv = upper.v0() + lower.v0();
    let sa = upper.accel + lower.accel;
    dv * sv * d + 0.5 * (dv * sa + da * sv) * d * d + da * sa * d * d * d / 3.0
}

/// Integral of (z_u - z_l) over a shared-boundary segment pair.
fn position_difference_integral(upper: &Segment, lower: &Segment) -> f64 {
    let d = upper.duration();
    let (dz, dv, da) = Segment::difference(upper, lower);
    dz * d + 0.5 * dv * d * d + da * d * d * d / 6.0
}

// ---------------------------------------------------------------------------
// proper time
// ---------------------------------------------------------------------------

/// Proper time along part of one segment, with an explicit redshift
/// acceleration g_red: tau = int dt [1 - zdot^2/(2c^2) + g_red z / c^2].
fn segment_proper_time(seg: &Segment, t_a: f64, t_b: f64, g_red: f64, c2: f64) -> f64 {
    // restrict to [t_a, t_b] by re-anchoring the segment
    let clipped = Segment::new(
        t_a,
        t_b,
        seg.position(t_a),
        seg.velocity(t_a),
        seg.accel,
        seg.lambda,
    );
    let d = t_b - t_a;
    d - 0.5 * velocity_square_integral(&clipped) / c2 + g_red * position_integral(&clipped) / c2
}

/// Proper time along a trajectory between t_a and t_b, to first order in
/// 1/c^2, evaluated in closed form over the piecewise-quadratic path.
pub fn proper_time(
    traj: &BranchTrajectory,
    t_a: f64,
    t_b: f64,
    constants: &Constants,
) -> Result<f64> {
    if t_b < t_a {
        return Err(Error::InvalidParameter {
            name: "t_b",
            reason: format!("reversed interval [{t_a}, {t_b}]"),
        });
    }
    if t_a < traj.start_time() || t_b > traj.end_time() {
        return Err(Error::TimeOutOfRange {
            t: if t_a < traj.start_time() { t_a } else { t_b },
            start: traj.start_time(),
            end: traj.end_time(),
        });
    }
    let c2 = constants.c2();
    let mut tau = 0.0;
    for seg in &traj.segments {
        let lo = t_a.max(seg.t_start);
        let hi = t_b.min(seg.t_end);
        if hi > lo {
            tau += segment_proper_time(seg, lo, hi, constants.g, c2);
        }
    }
    Ok(tau)
}

/// Same integral by composite Simpson quadrature with `nodes` subintervals;
/// retained purely as a cross-check of the closed form.
pub fn proper_time_quadrature(
    traj: &BranchTrajectory,
    t_a: f64,
    t_b: f64,
    constants: &Constants,
    nodes: usize,
) -> Result<f64> {
    if t_b < t_a {
        return Err(Error::InvalidParameter {
            name: "t_b",
            reason: format!("reversed interval [{t_a}, {t_b}]"),
        });
    }
    let n = nodes.max(2) & !1usize; // even
    let c2 = constants.c2();
    let h = (t_b - t_a) / n as f64;
    let f = |t: f64| -> Result<f64> {
        let z = traj.position(t)?;
        let v = traj.velocity(t)?;
        Ok(1.0 - 0.5 * v * v / c2 + constants.g * z / c2)
    };
    let mut acc = f(t_a)? + f(t_b)?;
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(t_a + i as f64 * h)?;
    }
    Ok(acc * h / 3.0)
}

/// Per-segment proper-time differences with a caller-supplied redshift
/// acceleration per internal state (the violation model passes
/// (1 + beta(state)) g; everything else passes g).
pub fn segment_dtaus_with_redshift(
    upper: &BranchTrajectory,
    lower: &BranchTrajectory,
    g_red_of: &dyn Fn(InternalState) -> f64,
    constants: &Constants,
) -> Result<Vec<SegmentProperTime>> {
    check_pair(upper, lower)?;
    let c2 = constants.c2();
    let mut out = Vec::with_capacity(upper.interpulse_segments().len());
    for (index, (su, sl)) in upper
        .interpulse_segments()
        .iter()
        .zip(lower.interpulse_segments())
        .enumerate()
    {
        let g_red = g_red_of(su.lambda);
        let kin = velocity_square_difference_integral(su, sl);
        let pot = position_difference_integral(su, sl);
        let dtau = (-0.5 * kin + g_red * pot) / c2;
        out.push(SegmentProperTime {
            index,
            lambda: su.lambda,
            dtau,
        });
    }
    Ok(out)
}

/// Per-segment proper-time differences dtau_n between the two branches of
/// the same sequence, computed from the reference-mass trajectories.
pub fn segment_dtaus(
    upper: &BranchTrajectory,
    lower: &BranchTrajectory,
    constants: &Constants,
) -> Result<Vec<SegmentProperTime>> {
    let g = constants.g;
    segment_dtaus_with_redshift(upper, lower, &|_| g, constants)
}

/// Clock phase -(Omega/2) * sum_n lambda_n * dtau_n.
pub fn clock_phase(segments: &[SegmentProperTime], omega: f64) -> f64 {
    let weighted: f64 = segments.iter().map(|s| s.lambda.lambda() * s.dtau).sum();
    -0.5 * omega * weighted
}

// ---------------------------------------------------------------------------
// reference phase
// ---------------------------------------------------------------------------

/// Action difference (S_upper - S_lower)/hbar of the mass-m Lagrangian
/// m zdot^2/2 - m g_pot z, with g_pot taken from each segment's own
/// acceleration, evaluated via differenced integrands.
fn action_difference_over_hbar(
    upper: &BranchTrajectory,
    lower: &BranchTrajectory,
    mass: f64,
    hbar: f64,
) -> f64 {
    let mut acc = 0.0;
    for (su, sl) in upper.segments.iter().zip(&lower.segments) {
        let g_pot = -su.accel;
        let kin = velocity_square_difference_integral(su, sl);
        let pot = position_difference_integral(su, sl);
        acc += mass * (0.5 * kin - g_pot * pot) / hbar;
    }
    acc
}

/// Laser-kick phase difference sum_l [k_u z_u(t_l) + phi_u - k_l z_l(t_l) - phi_l].
fn kick_phase_difference(
    seq: &PulseSequence,
    upper: &BranchTrajectory,
    lower: &BranchTrajectory,
) -> Result<f64> {
    let mut acc = 0.0;
    for p in &seq.pulses {
        acc += p.wave_number(Branch::Upper) * upper.position(p.t)? + p.phase(Branch::Upper);
        acc -= p.wave_number(Branch::Lower) * lower.position(p.t)? + p.phase(Branch::Lower);
    }
    Ok(acc)
}

/// Reference phase of a closed interferometer: action difference of the
/// reference-mass Lagrangian plus the laser kick terms. Errors if the
/// endpoints do not overlap.
pub fn reference_phase(
    seq: &PulseSequence,
    upper: &BranchTrajectory,
    lower: &BranchTrajectory,
    species: &Species,
    constants: &Constants,
) -> Result<f64> {
    check_pair(upper, lower)?;
    if !is_closed(upper, lower)? {
        let (dz, dv) = closure_defect(upper, lower)?;
        return Err(Error::OpenGeometry { dz, dv });
    }
    let action = action_difference_over_hbar(upper, lower, species.mass, constants.hbar);
    let kicks = kick_phase_difference(seq, upper, lower)?;
    Ok(action + kicks)
}

/// Full perturbative phase: reference phase plus clock phase, assembled from
/// the reference-mass trajectories and reported with both contributions kept
/// separate.
pub fn total_phase_perturbative(
    seq: &PulseSequence,
    species: &Species,
    constants: &Constants,
) -> Result<PhaseBreakdown> {
    let (upper, lower) = propagate_reference(seq, species, constants)?;
    let ref_phase = reference_phase(seq, &upper, &lower, species, constants)?;
    let segments = segment_dtaus(&upper, &lower, constants)?;
    Ok(PhaseBreakdown::assemble(
        ref_phase,
        segments,
        species.omega,
        RunSignature::of(seq, species),
    ))
}

// ---------------------------------------------------------------------------
// direct full-mass cross-check
// ---------------------------------------------------------------------------

/// Propagate both branches carrying the actual state-dependent mass: the
/// velocity change at a pulse satisfies exact momentum conservation,
/// m_after v_after = m_before v_before + hbar k.
pub fn propagate_full_mass(
    seq: &PulseSequence,
    species: &Species,
    constants: &Constants,
) -> Result<(BranchTrajectory, BranchTrajectory)> {
    crate::kinematics::propagate_full_mass_pair(seq, species, constants)
}

/// Independent cross-check of the total phase: propagates with the full
/// state-dependent masses and accumulates
/// (1/hbar) int [-m c^2 + m zdot^2/2 - m g z] dt per branch plus the kick
/// terms, without any expansion in the mass defect.
///
/// The rest-energy term is common to both branches (identical masses at
/// equal times and identical segment durations), so it drops out of the
/// branch difference identically and is skipped. If the mass defect leaves
/// the endpoints slightly apart, the wave-packet overlap contributes the
/// mean-momentum separation phase and the returned value includes
/// -p_mean * dz_end / hbar.
pub fn total_phase_direct(
    seq: &PulseSequence,
    species: &Species,
    constants: &Constants,
) -> Result<f64> {
    let (upper, lower) = propagate_full_mass(seq, species, constants)?;
    let mut phase = 0.0;
    for (su, sl) in upper.segments.iter().zip(&lower.segments) {
        let m = species.mass_of(su.lambda, constants);
        let g_pot = -su.accel;
        let kin = velocity_square_difference_integral(su, sl);
        let pot = position_difference_integral(su, sl);
        phase += m * (0.5 * kin - g_pot * pot) / constants.hbar;
    }
    phase += kick_phase_difference(seq, &upper, &lower)?;

    let dz_end = upper.final_position() - lower.final_position();
    let m_final = species.mass_of(seq.pulses.last().unwrap().lambda_after, constants);
    let p_mean = 0.5 * m_final * (upper.final_velocity + lower.final_velocity);
    phase -= p_mean * dz_end / constants.hbar;
    Ok(phase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_redshift_geometry, InitialState, LaserPulse, SR88_WAVE_NUMBER};
    use approx::assert_relative_eq;

    fn physical() -> (Constants, Species, PulseSequence) {
        let c = Constants::physical();
        let s = Species::sr88(&c);
        let seq = build_redshift_geometry(0.25, 0.5, SR88_WAVE_NUMBER, false).unwrap();
        (c, s, seq)
    }

    fn hover(z: f64, dt: f64) -> BranchTrajectory {
        // a clock held at fixed height: accel 0, v0 0
        BranchTrajectory::from_segments(
            Branch::Upper,
            vec![Segment::new(0.0, dt, z, 0.0, 0.0, InternalState::Ground)],
            0.0,
        )
        .unwrap()
    }

    #[test]
    fn static_clock_proper_times() {
        let c = Constants::physical();
        let at_origin = hover(0.0, 2.0);
        assert_eq!(proper_time(&at_origin, 0.0, 2.0, &c).unwrap(), 2.0);
        let h = 10.0;
        let lifted = hover(h, 2.0);
        let tau = proper_time(&lifted, 0.0, 2.0, &c).unwrap();
        assert_relative_eq!(tau, 2.0 * (1.0 + c.g * h / c.c2()), max_relative = 1e-15);
        assert!(proper_time(&lifted, 1.0, 0.5, &c).is_err());
        assert!(proper_time(&lifted, 0.0, 3.0, &c).is_err());
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let (c, s, seq) = physical();
        let (u, _) = propagate_reference(&seq, &s, &c).unwrap();
        let a = proper_time(&u, 0.0, 1.0, &c).unwrap();
        let b = proper_time_quadrature(&u, 0.0, 1.0, &c, 10_000).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }

    #[test]
    fn dtau_sum_vanishes_and_middle_matches_closed_form() {
        let (c, s, seq) = physical();
        let (u, l) = propagate_reference(&seq, &s, &c).unwrap();
        let dts = segment_dtaus(&u, &l, &c).unwrap();
        assert_eq!(dts.len(), 3);
        let max = dts.iter().map(|d| d.dtau.abs()).fold(0.0, f64::max);
        let sum: f64 = dts.iter().map(|d| d.dtau).sum();
        assert!(sum.abs() <= 1e-12 * max, "sum {sum} vs max {max}");
        let expected = 2.0 * c.g * c.hbar * SR88_WAVE_NUMBER * 0.25 * 0.5 / (s.mass * c.c2());
        assert_relative_eq!(dts[1].dtau, expected, max_relative = 1e-12);
    }

    #[test]
    fn zero_gravity_dtaus_are_antisymmetric_special_relativistic() {
        let c = Constants::scaled(SPEED, 1.0, 0.0).unwrap();
        let s = Species::new(1.0, 0.0, &c).unwrap();
        let seq = build_redshift_geometry(0.8, 1.0, 2.0, false)
            .unwrap()
            .with_initial(0.0, 0.35);
        let (u, l) = propagate_reference(&seq, &s, &c).unwrap();
        let dts = segment_dtaus(&u, &l, &c).unwrap();
        assert_eq!(dts[1].dtau, 0.0);
        assert_relative_eq!(dts[0].dtau, -dts[2].dtau, max_relative = 1e-12);
        assert!(dts[0].dtau != 0.0);
    }

    const SPEED: f64 = 40.0;

    #[test]
    fn clock_phase_patterns() {
        let (c, s, seq) = physical();
        let (u, l) = propagate_reference(&seq, &s, &c).unwrap();
        let dts = segment_dtaus(&u, &l, &c).unwrap();
        let clock = clock_phase(&dts, s.omega);
        assert_relative_eq!(clock, s.omega * dts[1].dtau, max_relative = 1e-12);
        assert!((3e-3..20e-3).contains(&clock));

        // uniform pattern: clock phase collapses to -(Omega/2) * sum = ~0
        let uniform: Vec<SegmentProperTime> = dts
            .iter()
            .map(|d| SegmentProperTime {
                lambda: InternalState::Excited,
                ..*d
            })
            .collect();
        let max = dts.iter().map(|d| d.dtau.abs()).fold(0.0, f64::max);
        assert!(clock_phase(&uniform, s.omega).abs() <= 1e-12 * s.omega * max);

        // lambda -> -lambda flips the sign exactly
        let flipped: Vec<SegmentProperTime> = dts
            .iter()
            .map(|d| SegmentProperTime {
                lambda: d.lambda.flipped(),
                ..*d
            })
            .collect();
        assert_eq!(clock_phase(&flipped, s.omega), -clock);
    }

    #[test]
    fn reference_phase_closed_form() {
        let (c, s, seq) = physical();
        let (u, l) = propagate_reference(&seq, &s, &c).unwrap();
        let refp = reference_phase(&seq, &u, &l, &s, &c).unwrap();
        let expected = -2.0 * SR88_WAVE_NUMBER * c.g * 0.25 * (0.5 + 0.25);
        assert_relative_eq!(refp, expected, max_relative = 1e-12);
    }

    #[test]
    fn reference_phase_vanishes_without_gravity_or_kicks() {
        let c = Constants::scaled(100.0, 1.0, 0.0).unwrap();
        let s = Species::new(1.0, 0.1, &c).unwrap();
        let seq = build_redshift_geometry(0.8, 1.0, 2.0, false)
            .unwrap()
            .with_initial(0.2, 0.35);
        let (u, l) = propagate_reference(&seq, &s, &c).unwrap();
        let refp = reference_phase(&seq, &u, &l, &s, &c).unwrap();
        assert!(refp.abs() < 1e-12);

        // k = 0: both branches coincide entirely
        let cg = Constants::scaled(100.0, 1.0, 2.0).unwrap();
        let mut seq0 = seq;
        for p in &mut seq0.pulses {
            p.k_upper = 0.0;
            p.k_lower = 0.0;
        }
        let (u0, l0) = propagate_reference(&seq0, &s, &cg).unwrap();
        assert_eq!(reference_phase(&seq0, &u0, &l0, &s, &cg).unwrap(), 0.0);
    }

    #[test]
    fn reference_phase_rejects_open_geometry() {
        let (c, s, mut seq) = physical();
        seq.pulses.pop();
        let (u, l) = propagate_reference(&seq, &s, &c).unwrap();
        match reference_phase(&seq, &u, &l, &s, &c) {
            Err(Error::OpenGeometry { .. }) => {}
            other => panic!("expected OpenGeometry, got {other:?}"),
        }
    }

    #[test]
    fn perturbative_breakdown_contract() {
        let (c, s, seq) = physical();
        let pb = total_phase_perturbative(&seq, &s, &c).unwrap();
        assert_eq!(pb.total, pb.ref_phase + pb.clock_phase);
        assert_eq!(pb.clock_phase, clock_phase(&pb.segments, s.omega));

        // Omega = 0: clock phase degenerates, total is the reference phase
        let s0 = Species::new(s.mass, 0.0, &c).unwrap();
        let pb0 = total_phase_perturbative(&seq, &s0, &c).unwrap();
        assert_eq!(pb0.clock_phase, 0.0);
        assert_eq!(pb0.total, pb0.ref_phase);

        // state inversion: same reference phase, opposite clock phase
        let pbi = total_phase_perturbative(&seq.inverted(), &s, &c).unwrap();
        assert_eq!(pbi.ref_phase, pb.ref_phase);
        assert_eq!(pbi.clock_phase, -pb.clock_phase);
    }

    #[test]
    fn clock_phase_invariant_under_height_shift() {
        let (c, s, seq) = physical();
        let pb = total_phase_perturbative(&seq, &s, &c).unwrap();
        let pbh = total_phase_perturbative(&seq.with_initial(7.3, 0.0), &s, &c).unwrap();
        assert_relative_eq!(pb.clock_phase, pbh.clock_phase, max_relative = 1e-12);
    }

    fn scaled_setup(dm_over_m: f64) -> (Constants, Species, PulseSequence) {
        let c = Constants::scaled(30.0, 1.0, 2.0).unwrap();
        let omega = dm_over_m * 1.0 * c.c2() / c.hbar;
        let s = Species::new(1.0, omega, &c).unwrap();
        let seq = build_redshift_geometry(0.8, 1.0, 2.0, false).unwrap();
        (c, s, seq)
    }

    #[test]
    fn direct_equals_reference_at_zero_mass_defect() {
        let (c, s, seq) = scaled_setup(0.0);
        let direct = total_phase_direct(&seq, &s, &c).unwrap();
        let pb = total_phase_perturbative(&seq, &s, &c).unwrap();
        assert!((direct - pb.ref_phase).abs() <= 1e-12 * pb.ref_phase.abs());
    }

    #[test]
    fn direct_minus_perturbative_is_quadratic_in_mass_defect() {
        // halving dm shrinks the residual by ~4
        let (c1, s1, seq) = scaled_setup(1e-3);
        let r1 = (total_phase_direct(&seq, &s1, &c1).unwrap()
            - total_phase_perturbative(&seq, &s1, &c1).unwrap().total)
            .abs();
        let (c2, s2, _) = scaled_setup(5e-4);
        let r2 = (total_phase_direct(&seq, &s2, &c2).unwrap()
            - total_phase_perturbative(&seq, &s2, &c2).unwrap().total)
            .abs();
        let ratio = r1 / r2;
        assert!((3.6..=4.4).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn richardson_first_order_matches_clock_phase() {
        let (c0, s0, seq) = scaled_setup(0.0);
        let ref_phase = total_phase_perturbative(&seq, &s0, &c0).unwrap().ref_phase;
        let f = |dm_over_m: f64| -> f64 {
            let (c, s, _) = scaled_setup(dm_over_m);
            total_phase_direct(&seq, &s, &c).unwrap() - ref_phase
        };
        let h = 1e-3;
        let r = |x: f64| f(x) / x;
        let c1 = 2.0 * r(0.5 * h) - r(h);
        let (ch, sh, _) = scaled_setup(h);
        let clock = total_phase_perturbative(&seq, &sh, &ch)
            .unwrap()
            .clock_phase;
        assert_relative_eq!(c1 * h, clock, max_relative = 1e-4);
    }

    #[test]
    fn direct_handles_pre_and_post_segments() {
        // first pulse after t = 0 and t_end past the last pulse
        let c = Constants::physical();
        let s = Species::sr88(&c);
        let k = SR88_WAVE_NUMBER;
        let base = build_redshift_geometry(0.25, 0.5, k, false).unwrap();
        let shifted: Vec<LaserPulse> = base
            .pulses
            .iter()
            .map(|p| LaserPulse { t: p.t + 0.1, ..*p })
            .collect();
        let seq = PulseSequence::new(
            InitialState {
                z0: 0.0,
                v0: 0.0,
                lambda0: InternalState::Ground,
            },
            shifted,
            1.3,
        )
        .unwrap();
        let pb = total_phase_perturbative(&seq, &s, &c).unwrap();
        // time-shifting the whole sequence does not change the phase
        let expected = -2.0 * k * c.g * 0.25 * 0.75;
        assert_relative_eq!(pb.ref_phase, expected, max_relative = 1e-9);
        let direct = total_phase_direct(&seq, &s, &c).unwrap();
        assert_relative_eq!(direct, pb.total, max_relative = 1e-6);
    }
}
