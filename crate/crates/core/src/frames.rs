//! Re-derivation of the interferometer phase in the freely-falling frame.
//!
//! The frame change is a Galilei transformation z' = z + g t^2 / 2 (higher
//! corrections are suppressed by the mass defect); free-fall segments become
//! straight lines. Laboratory and falling-frame times are connected by the
//! Rindler mapping t' = t [1 + g^2 t^2/(6 c^2) + g z(t)/c^2], which enters
//! the falling-frame proper time only through its time derivative.
//!
//! A subtlety of the laser phase: a pulse with wave number k imprints its
//! phase at the shifted position, so the falling-frame laser phase is
//! phi' = phi - k * g t^2 / 2 (the k-less form is not dimensionally a
//! phase). With that convention the reference phase takes the same value in
//! both frames for closed geometries.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinematics::{
    check_pair, closure_defect, is_closed, propagate_reference, BranchTrajectory, Segment,
};
use crate::model::{Branch, Constants, PulseSequence, Species};
use crate::phase::{PhaseBreakdown, RunSignature, SegmentProperTime};

/// A branch trajectory expressed in the freely-falling frame, indexed by
/// laboratory time. Reference-mass segments carry zero acceleration and a
/// constant residual velocity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FallingFrameTrajectory {
    pub inner: BranchTrajectory,
}

impl FallingFrameTrajectory {
    pub fn branch(&self) -> Branch {
        self.inner.branch
    }

    pub fn segments(&self) -> &[Segment] {
        &self.inner.segments
    }

    pub fn position(&self, t: f64) -> Result<f64> {
        self.inner.position(t)
    }

    pub fn velocity(&self, t: f64) -> Result<f64> {
        self.inner.velocity(t)
    }
}

/// Apply z' = z + g t^2/2 segment-wise: positions shift by g t^2/2,
/// velocities by g t, accelerations by +g.
pub fn galilei_transform(traj: &BranchTrajectory, constants: &Constants) -> FallingFrameTrajectory {
    FallingFrameTrajectory {
        inner: traj.galilei(constants.g),
    }
}

/// Rindler time t' = t [1 + g^2 t^2/(6 c^2) + g z(t)/c^2] for a laboratory
/// event at time t and height z.
pub fn rindler_time(t: f64, z_of_t: f64, constants: &Constants) -> f64 {
    let c2 = constants.c2();
    let g = constants.g;
    t * (1.0 + g * g * t * t / (6.0 * c2) + g * z_of_t / c2)
}

/// Residual recoil dp' = -dm * g * T1 picked up in the falling frame by the
/// mass change at the t = T1 pulse.
pub fn residual_recoil(species: &Species, t1: f64, constants: &Constants) -> Result<f64> {
    if !t1.is_finite() || t1 <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "t1",
            reason: format!("must be > 0, got {t1}"),
        });
    }
    Ok(-species.dm(constants) * constants.g * t1)
}

/// Per-segment proper-time differences evaluated in the falling frame:
/// tau' = int dt (dt'/dt) [1 - zdot'^2/(2c^2)] kept to first order in 1/c^2,
/// with dt'/dt = 1 + g^2 t^2/(2c^2) + g (z + t zdot)/c^2. Branch-common
/// terms drop out of the difference, leaving
/// dtau'_n = (1/c^2) int [ g (dz' + t dv') - (zdot'_u^2 - zdot'_l^2)/2 ] dt.
pub fn falling_segment_dtaus(
    upper: &FallingFrameTrajectory,
    lower: &FallingFrameTrajectory,
    constants: &Constants,
) -> Result<Vec<SegmentProperTime>> {
    check_pair(&upper.inner, &lower.inner)?;
    let c2 = constants.c2();
    let g = constants.g;
    let mut out = Vec::new();
    for (index, (su, sl)) in upper
        .inner
        .interpulse_segments()
        .iter()
        .zip(lower.inner.interpulse_segments())
        .enumerate()
    {
        let d = su.duration();
        let t0 = su.t_start;
        let (dz, dv, da) = Segment::difference(su, sl);
        let sv = su.v0() + sl.v0();
        let sa = su.accel + sl.accel;

        // int (z'_u - z'_l) dt
        let pos = dz * d + 0.5 * dv * d * d + da * d * d * d / 6.0;
        // int t (zdot'_u - zdot'_l) dt with absolute time t = t0 + s
        let tdv = t0 * (dv * d + 0.5 * da * d * d) + 0.5 * dv * d * d + da * d * d * d / 3.0;
        // int (zdot'_u^2 - zdot'_l^2) dt
        let kin = dv * sv * d + 0.5 * (dv * sa + da * sv) * d * d + da * sa * d * d * d / 3.0;

        let dtau = (g * (pos + tdv) - 0.5 * kin) / c2;
        out.push(SegmentProperTime {
            index,
            lambda: su.lambda,
            dtau,
        });
    }
    Ok(out)
}

/// Reference phase evaluated in the falling frame: free-particle action
/// difference plus the laser kick terms with Doppler-shifted phases
/// phi' = phi - k g t^2/2 imprinted at the shifted positions.
///
/// Branch-common pieces of the transformed Lagrangian (the g^2 t^2 term and
/// a total time derivative) cancel in the difference for closed geometries
/// and are omitted.
pub fn falling_reference_phase(
    seq: &PulseSequence,
    upper: &FallingFrameTrajectory,
    lower: &FallingFrameTrajectory,
    species: &Species,
    constants: &Constants,
) -> Result<f64> {
    check_pair(&upper.inner, &lower.inner)?;
    if !is_closed(&upper.inner, &lower.inner)? {
        let (dz, dv) = closure_defect(&upper.inner, &lower.inner)?;
        return Err(Error::OpenGeometry { dz, dv });
    }
    let g = constants.g;
    // free-particle action difference (m/hbar) int (zdot'_u^2 - zdot'_l^2)/2 dt
    let mut action = 0.0;
    for (su, sl) in upper.inner.segments.iter().zip(&lower.inner.segments) {
        let d = su.duration();
        let (_, dv, da) = Segment::difference(su, sl);
        let sv = su.v0() + sl.v0();
        let sa = su.accel + sl.accel;
        let kin = dv * sv * d + 0.5 * (dv * sa + da * sv) * d * d + da * sa * d * d * d / 3.0;
        action += 0.5 * species.mass * kin / constants.hbar;
    }
    // kick terms with transformed laser phases
    let mut kicks = 0.0;
    for p in &seq.pulses {
        let doppler = 0.5 * g * p.t * p.t;
        kicks += p.k_upper * upper.position(p.t)? + (p.phi_upper - p.k_upper * doppler);
        kicks -= p.k_lower * lower.position(p.t)? + (p.phi_lower - p.k_lower * doppler);
    }
    Ok(action + kicks)
}

/// Full perturbative phase evaluated in the freely-falling frame. For closed
/// geometries both components agree with their laboratory-frame values.
pub fn total_phase_falling_frame(
    seq: &PulseSequence,
    species: &Species,
    constants: &Constants,
) -> Result<PhaseBreakdown> {
    let (upper, lower) = propagate_reference(seq, species, constants)?;
    let fu = galilei_transform(&upper, constants);
    let fl = galilei_transform(&lower, constants);
    let ref_phase = falling_reference_phase(seq, &fu, &fl, species, constants)?;
    let segments = falling_segment_dtaus(&fu, &fl, constants)?;
    Ok(PhaseBreakdown::assemble(
        ref_phase,
        segments,
        species.omega,
        RunSignature::of(seq, species),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{
        build_redshift_geometry, Constants, InternalState, Species, SR88_WAVE_NUMBER,
    };
    use crate::phase::{propagate_full_mass, total_phase_perturbative};
    use approx::assert_relative_eq;

    fn physical() -> (Constants, Species, PulseSequence) {
        let c = Constants::physical();
        let s = Species::sr88(&c);
        let seq = build_redshift_geometry(0.25, 0.5, SR88_WAVE_NUMBER, false).unwrap();
        (c, s, seq)
    }

    #[test]
    fn comoving_point_maps_to_rest() {
        let (c, s, _) = physical();
        let seq = build_redshift_geometry(0.25, 0.5, SR88_WAVE_NUMBER, false).unwrap();
        let mut seq0 = seq;
        for p in &mut seq0.pulses {
            p.k_upper = 0.0;
            p.k_lower = 0.0;
        }
        let (u, _) = propagate_reference(&seq0, &s, &c).unwrap();
        let f = galilei_transform(&u, &c);
        for t in [0.0, 0.3, 0.7, 1.0] {
            assert_relative_eq!(f.position(t).unwrap(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn middle_segment_is_two_parallel_lines() {
        let (c, s, seq) = physical();
        let (u, l) = propagate_reference(&seq, &s, &c).unwrap();
        let fu = galilei_transform(&u, &c);
        let fl = galilei_transform(&l, &c);
        let mid_u = &fu.inner.interpulse_segments()[1];
        let mid_l = &fl.inner.interpulse_segments()[1];
        assert_eq!(mid_u.accel, 0.0);
        assert_eq!(mid_l.accel, 0.0);
        assert_relative_eq!(mid_u.v0(), mid_l.v0(), epsilon = 1e-12);
        let sep = 2.0 * c.hbar * SR88_WAVE_NUMBER * 0.25 / s.mass;
        assert_relative_eq!(mid_u.z0() - mid_l.z0(), sep, max_relative = 1e-12);

        // first upper segment: straight line of slope hbar*k/m
        let first = &fu.inner.interpulse_segments()[0];
        assert_relative_eq!(
            first.v0(),
            s.recoil_velocity(SR88_WAVE_NUMBER, &c),
            max_relative = 1e-12
        );
    }

    #[test]
    fn rindler_time_values() {
        let c = Constants::scaled(10.0, 1.0, 1.0).unwrap();
        assert_eq!(rindler_time(0.0, 5.0, &c), 0.0);
        // z = 0: pure acceleration term
        assert_relative_eq!(
            rindler_time(1.0, 0.0, &c),
            1.0 + 1.0 / 600.0,
            max_relative = 1e-15
        );
        // direct substitution with c = 10, g = 1, z = 1, t = 1
        assert_relative_eq!(
            rindler_time(1.0, 1.0, &c),
            1.0 + 1.0 / 600.0 + 1.0 / 100.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn residual_recoil_values() {
        let c = Constants::scaled(10.0, 1.0, 1.0).unwrap();
        let s = Species::new(1.0, 1e-3 * c.c2() / c.hbar, &c).unwrap();
        assert_relative_eq!(
            residual_recoil(&s, 2.0, &c).unwrap(),
            -2e-3,
            max_relative = 1e-12
        );
        let s0 = Species::new(1.0, 0.0, &c).unwrap();
        assert_eq!(residual_recoil(&s0, 2.0, &c).unwrap(), 0.0);

        let cp = Constants::physical();
        let sr = Species::sr88(&cp);
        assert_relative_eq!(
            residual_recoil(&sr, 0.25, &cp).unwrap(),
            -cp.hbar * sr.omega / cp.c2() * cp.g * 0.25,
            max_relative = 1e-15
        );
        assert!(residual_recoil(&sr, -1.0, &cp).is_err());
    }

    #[test]
    fn frame_invariance_at_physical_parameters() {
        let (c, s, seq) = physical();
        let lab = total_phase_perturbative(&seq, &s, &c).unwrap();
        let fall = total_phase_falling_frame(&seq, &s, &c).unwrap();
        assert_relative_eq!(fall.ref_phase, lab.ref_phase, max_relative = 1e-10);
        assert_relative_eq!(fall.clock_phase, lab.clock_phase, max_relative = 1e-10);
    }

    #[test]
    fn frames_coincide_without_gravity() {
        let c = Constants::scaled(50.0, 1.0, 0.0).unwrap();
        let s = Species::new(1.0, 1e-3 * c.c2(), &c).unwrap();
        let seq = build_redshift_geometry(0.8, 1.0, 2.0, false).unwrap();
        let lab = total_phase_perturbative(&seq, &s, &c).unwrap();
        let fall = total_phase_falling_frame(&seq, &s, &c).unwrap();
        assert_eq!(lab.ref_phase, fall.ref_phase);
        assert_eq!(lab.clock_phase, fall.clock_phase);
        assert_eq!(lab.total, fall.total);
    }

    #[test]
    fn clock_phase_free_of_doppler_terms() {
        // zeroing the wave numbers after the trajectories are generated must
        // leave the falling-frame clock phase untouched
        let (c, s, seq) = physical();
        let (u, l) = propagate_reference(&seq, &s, &c).unwrap();
        let fu = galilei_transform(&u, &c);
        let fl = galilei_transform(&l, &c);
        let dt1 = falling_segment_dtaus(&fu, &fl, &c).unwrap();
        let clock1 = crate::phase::clock_phase(&dt1, s.omega);

        let _zeroed = seq.with_zeroed_wave_numbers(); // no path from here into the dtaus
        let dt2 = falling_segment_dtaus(&fu, &fl, &c).unwrap();
        let clock2 = crate::phase::clock_phase(&dt2, s.omega);
        assert_eq!(clock1, clock2);
    }

    #[test]
    fn transformed_full_mass_momentum_bookkeeping() {
        // In the falling frame the kick at t = T1 carries the extra recoil
        // -dm*g*T1 on top of the photon momentum; the identity is exact.
        let c = Constants::scaled(100.0, 1.0, 1.5).unwrap();
        let dm_over_m = 1e-6;
        let s = Species::new(1.0, dm_over_m * c.c2() / c.hbar, &c).unwrap();
        let t1 = 0.7;
        let seq = build_redshift_geometry(t1, 0.9, 2.0, false).unwrap();
        let (u, _) = propagate_full_mass(&seq, &s, &c).unwrap();
        let fu = galilei_transform(&u, &c);

        let before = &fu.inner.segments[0];
        let after = &fu.inner.segments[1];
        assert_eq!(before.lambda, InternalState::Excited);
        assert_eq!(after.lambda, InternalState::Ground);
        let p_before = s.mass_of(before.lambda, &c) * before.end_velocity();
        let p_after = s.mass_of(after.lambda, &c) * after.v0();
        let photon = c.hbar * seq.pulses[1].k_upper; // -hbar k on the upper branch
        let residual = p_after - p_before - photon;
        let expected = residual_recoil(&s, t1, &c).unwrap();
        assert_relative_eq!(residual, expected, max_relative = 1e-9);
    }

    #[test]
    fn transformed_full_mass_velocity_discrepancy() {
        // With the launch velocity chosen so that the recoil-induced terms
        // cancel, the velocity jump deviates from the reference kick by
        // dp'/m to first order in dm.
        let c = Constants::scaled(100.0, 1.0, 1.5).unwrap();
        let dm_over_m = 1e-6;
        let s = Species::new(1.0, dm_over_m * c.c2() / c.hbar, &c).unwrap();
        let t1 = 0.7;
        let k = 2.0;
        let recoil = s.recoil_velocity(k, &c);
        let seq = build_redshift_geometry(t1, 0.9, k, false)
            .unwrap()
            .with_initial(0.0, -0.5 * recoil);
        let (u, _) = propagate_full_mass(&seq, &s, &c).unwrap();
        let fu = galilei_transform(&u, &c);
        let jump = fu.inner.segments[1].v0() - fu.inner.segments[0].end_velocity();
        let reference_jump = c.hbar * seq.pulses[1].k_upper / s.mass;
        let discrepancy = jump - reference_jump;
        let expected = residual_recoil(&s, t1, &c).unwrap() / s.mass;
        assert_relative_eq!(discrepancy, expected, max_relative = 1e-3);
    }
}
