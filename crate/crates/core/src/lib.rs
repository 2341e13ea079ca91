//! Simulation engine for light-pulse atom interferometers whose laser pulses
//! change the internal state of the atom on both branches simultaneously.
//!
//! The crate propagates the two branch trajectories under instantaneous
//! momentum kicks and uniform gravity, accumulates proper-time differences
//! segment by segment, and splits the interferometer phase into a large
//! reference phase and a small clock phase that is sensitive to the
//! gravitational redshift. Two independent cross-checks are provided: a
//! direct propagation that keeps the state-dependent mass in full
//! ([`phase::total_phase_direct`]) and a re-derivation of the phase in the
//! freely-falling frame ([`frames`]).
//!
//! On top of the phase engine, [`estimation`] implements a violation model
//! for the universality of free fall and of the gravitational redshift
//! (state-dependent gravitational coupling `(1 + beta)g`), least-squares
//! extraction of the violation parameters from differential runs, and a
//! seeded Monte Carlo campaign with shot and vibration noise.
//!
//! All quantities are SI; `z` increases upward, free fall accelerates with
//! `z'' = -g`, and the gravitational potential energy is `+m g z`.

pub mod error;
pub mod estimation;
pub mod frames;
pub mod kinematics;
pub mod model;
pub mod phase;

pub use error::{Error, Result};
