//! Step sizes and acceptance thresholds shared by the checks.

/// Base step for first derivatives; scaled by `max(1, |coordinate|)`.
pub const FD_STEP: f64 = 1e-5;
/// Outer step for nested (second) derivatives.
pub const FD_STEP_NESTED: f64 = 1e-4;

/// Pure algebra (closed forms, matrix identities).
pub const ALGEBRAIC: f64 = 1e-10;
/// Frame orthonormality from closed-form charts.
pub const ORTHONORMALITY: f64 = 1e-10;
/// Finite-difference Lie brackets against structure constants (relative).
pub const BRACKET: f64 = 1e-6;
/// Chart covariant derivatives of frame fields against `c_i`.
pub const CONNECTION: f64 = 1e-5;
/// Finite-difference Ricci tensor against the closed form.
pub const RICCI: f64 = 1e-4;
/// SqK defining-equation residual.
pub const SQK_RESIDUAL: f64 = 1e-6;
/// Lower bound a negative control must reach.
pub const NEGATIVE_CONTROL: f64 = 0.1;
/// First-derivative field identities (currents, stress tensors, Dirac, Einstein).
pub const FIELD: f64 = 1e-5;
/// Curvature operator by nested differences; also dF and `*d*F` identities.
pub const NESTED: f64 = 1e-4;
/// Spatial drift of `<psi, psi>`.
pub const NORM_DRIFT: f64 = 1e-10;
/// Charged-orbit equation along integrated flows.
pub const ORBIT: f64 = 1e-4;
/// Drift of `g(J, xi)` along a Dirac-current flow.
pub const J1_DRIFT: f64 = 1e-8;
/// Drift of `g(c', c')` along charged orbits.
pub const SPEED_DRIFT: f64 = 1e-6;
/// Killing-criterion separation: vanishing below, non-vanishing above.
pub const KILLING_ZERO: f64 = 1e-5;
pub const KILLING_NONZERO: f64 = 0.01;
/// Relative accuracy of measured Maxwell source constants.
pub const MAXWELL_CONSTANT: f64 = 1e-4;
/// Boundary margin used by energy-condition predicates.
pub const ENERGY_MARGIN: f64 = 1e-10;
