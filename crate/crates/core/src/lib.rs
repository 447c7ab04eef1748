//! Geometry, spinor algebra and field-equation residuals for three-dimensional
//! pseudo-Riemannian Sasakian space-forms.
//!
//! The crate is `no_std` (with `alloc`). Every routine is a pure function of
//! its value inputs, so callers are free to evaluate grids concurrently.
//!
//! Layout:
//! - [`geometry`]: charts, Sasakian frames, metric, connection, curvature and
//!   finite-difference exterior calculus.
//! - [`spinors`]: gamma matrices, Clifford action, the spin-invariant bilinear
//!   form, Dirac currents and spinor two-forms.
//! - [`sqk`]: SqK families, explicit solutions, the spin connection, the
//!   ξ-map, integrability and weak Killing parameters.
//! - [`fields`]: stress tensors, Dirac/Maxwell/Einstein residuals, ED and EDM
//!   solutions, closedness tables and energy conditions.
//! - [`dynamics`]: fixed-step integration of charged orbits and Dirac-current
//!   flows.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;

pub mod dynamics;
pub mod fd;
pub mod fields;
pub mod geometry;
pub mod sampling;
pub mod spinors;
pub mod sqk;
pub mod tolerances;

pub use error::{Error, Result};
pub use geometry::{ChartPoint, FrameTensor2, FrameVector, Signature, SpaceForm, TwoForm};
pub use spinors::Spinor;
pub use sqk::{Family, SpinorField, SqKType};



/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Largest modulus among complex entries.
pub fn cmax<'a, I: IntoIterator<Item = &'a C64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, |m, z| m.max(z.norm()))
}
