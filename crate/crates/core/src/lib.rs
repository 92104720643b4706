//! Holonomic gate synthesis by reverse engineering.
//!
//! Given a path of orthonormal frames, [`reverse`] builds the Hamiltonian that
//! drives it, [`analytic`] holds closed-form drives for the standard frame
//! families, [`paths`] builds the coordinate-line schedules, and [`evolve`]
//! propagates the result with and without decoherence.
//!
//! Everything is generic over [`Real`] (`f64` or `f32`). The aliases below fix
//! the scalar to `f64`, with `*32` variants for single precision.

pub mod analytic;
pub mod error;
pub mod evolve;
pub mod frames;
pub mod laws;
pub mod numerics;
pub mod paths;
pub mod reverse;
pub mod scalar;

pub use error::{Error, Result};
pub use evolve::{
    average_fidelity, kappa_sweep, propagate_lindblad, propagate_unitary, realized_gate, FidelityReport, GateReport,
    Hamiltonian, LindbladParams, SynthesizedDrive,
};
pub use frames::{FrameFamily, FramePath, StateFrame, ThreeLevelSubspace};
pub use laws::{AngleLaw, Angles, LawSegment, PathLaws, PathPoint};
pub use numerics::{CMat, CVec};
pub use paths::{op_schedule, ossp_schedule, GateTarget, Schedule};
pub use reverse::{reverse_hamiltonian, GammaLaw};
pub use scalar::Real;

pub type C64 = num_complex::Complex<f64>;
pub type CMat64 = CMat<f64>;
pub type CVec64 = CVec<f64>;
pub type Angles64 = Angles<f64>;
pub type PathLaws64 = PathLaws<f64>;
pub type StateFrame64 = StateFrame<f64>;
pub type FramePath64 = FramePath<f64>;
pub type Schedule64 = Schedule<f64>;
pub type GammaLaw64 = GammaLaw<f64>;
pub type LindbladParams64 = LindbladParams<f64>;

pub type C32 = num_complex::Complex<f32>;
pub type CMat32 = CMat<f32>;
pub type CVec32 = CVec<f32>;
pub type PathLaws32 = PathLaws<f32>;
pub type StateFrame32 = StateFrame<f32>;
pub type FramePath32 = FramePath<f32>;
pub type Schedule32 = Schedule<f32>;
