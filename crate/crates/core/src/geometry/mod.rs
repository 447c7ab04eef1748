//! Sasakian space-forms: charts, frames, metric, connection, curvature and
//! exterior calculus.
//!
//! Frame conventions: `e1 = ξ`, frame metric `η = diag((-1)^r, 1, 1)`,
//! `ε_123 = +1`. Frame-algebraic quantities (brackets, connection
//! coefficients, Ricci) are available for every `H`; chart quantities need
//! `3 + (-1)^r H > 0`.

mod algebra;
mod chart;
mod christoffel;
mod forms;

#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;
use core::fmt;

use nalgebra::{Matrix3, Vector3};

use crate::{Error, Result, C64};

pub use algebra::{
    connection_coeffs, frame_connection, ricci, scalar_curvature, structure_constants, Brackets,
};
pub use chart::{coframe_at, frame_at, metric_at, Frame};
pub use christoffel::{
    christoffels_fd, frame_covariant_derivative_fd, frame_derivative, frame_derivative_with, lie_bracket_fd, ricci_fd, Christoffels,
};
pub use forms::{codifferential_2form, ext_d_1form, ext_d_2form, hodge_1form, hodge_2form, hodge_3form, ThreeForm};

/// Frame components of a tangent vector.
pub type FrameVector = Vector3<f64>;

/// Signature flag `r`: 0 Riemannian, 1 Lorentzian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Signature {
    Riemannian,
    Lorentzian,
}

impl Signature {
    pub const BOTH: [Signature; 2] = [Signature::Riemannian, Signature::Lorentzian];

    pub fn from_index(r: u8) -> Result<Self> {
        match r {
            0 => Ok(Signature::Riemannian),
            1 => Ok(Signature::Lorentzian),
            _ => Err(Error::InvalidArgument("signature flag r must be 0 or 1")),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Signature::Riemannian => 0,
            Signature::Lorentzian => 1,
        }
    }

    /// `(-1)^r`
    pub fn sign(self) -> f64 {
        match self {
            Signature::Riemannian => 1.0,
            Signature::Lorentzian => -1.0,
        }
    }

    /// `i^r`
    pub fn i_pow(self) -> C64 {
        match self {
            Signature::Riemannian => C64::new(1.0, 0.0),
            Signature::Lorentzian => C64::new(0.0, 1.0),
        }
    }

    /// `(-i)^r`
    pub fn neg_i_pow(self) -> C64 {
        self.i_pow().conj()
    }

    /// `(-i)^(r-1)`: `i` for r=0, `1` for r=1.
    pub fn neg_i_pow_minus_one(self) -> C64 {
        match self {
            Signature::Riemannian => C64::new(0.0, 1.0),
            Signature::Lorentzian => C64::new(1.0, 0.0),
        }
    }

    /// Frame metric `diag((-1)^r, 1, 1)`; it is its own inverse.
    pub fn eta(self) -> Matrix3<f64> {
        Matrix3::from_diagonal(&Vector3::new(self.sign(), 1.0, 1.0))
    }

    /// `η_ii`
    pub fn eta_diag(self, i: usize) -> f64 {
        if i == 0 {
            self.sign()
        } else {
            1.0
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// A simply connected Sasakian space-form: signature and φ-sectional curvature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceForm {
    pub r: Signature,
    pub h: f64,
}

impl SpaceForm {
    pub fn new(r: Signature, h: f64) -> Result<Self> {
        if !h.is_finite() {
            return Err(Error::InvalidArgument("H must be finite"));
        }
        Ok(Self { r, h })
    }

    pub fn sign(&self) -> f64 {
        self.r.sign()
    }

    /// `3 + (-1)^r H`
    pub fn chart_discriminant(&self) -> f64 {
        3.0 + self.sign() * self.h
    }

    pub fn chart_valid(&self) -> bool {
        self.chart_discriminant() > 0.0
    }

    /// `sqrt(3 + (-1)^r H)`, present only where the S± families exist.
    pub fn root(&self) -> Option<f64> {
        let d = self.chart_discriminant();
        (d > 0.0).then(|| d.sqrt())
    }

    /// Chart parameter `α = 4 / (3 + (-1)^r H)`.
    pub fn alpha(&self) -> Result<f64> {
        if self.chart_valid() {
            Ok(4.0 / self.chart_discriminant())
        } else {
            Err(self.chart_error())
        }
    }

    pub fn require_chart(&self) -> Result<()> {
        self.alpha().map(|_| ())
    }

    pub(crate) fn chart_error(&self) -> Error {
        Error::ChartInvalid { r: self.r.index(), h: self.h }
    }

    /// Fails unless `p` is a chart point at least `margin` from the singular set.
    pub fn check_point(&self, p: &ChartPoint, margin: f64) -> Result<()> {
        self.require_chart()?;
        let x1 = p.x[0];
        let inside = match self.r {
            Signature::Riemannian => x1 > margin && x1 < core::f64::consts::PI - margin,
            Signature::Lorentzian => x1 > margin,
        };
        if inside && p.x.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::Singularity { x1 })
        }
    }
}

/// Chart coordinates `(x1, x2, x3)`: `(θ, φ, φ̃)` on the Berger sphere,
/// `(χ, φ, τ)` on the Lorentzian chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    pub x: [f64; 3],
}

impl ChartPoint {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self { x: [x1, x2, x3] }
    }

    pub fn from_vector(v: &Vector3<f64>) -> Self {
        Self::new(v[0], v[1], v[2])
    }

    pub fn to_vector(&self) -> Vector3<f64> {
        Vector3::new(self.x[0], self.x[1], self.x[2])
    }

    /// `p + t v` for a chart-coordinate displacement `v`.
    pub fn offset(&self, v: &Vector3<f64>, t: f64) -> Self {
        Self::new(self.x[0] + t * v[0], self.x[1] + t * v[1], self.x[2] + t * v[2])
    }

    pub fn max_abs(&self) -> f64 {
        self.x.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Frame components of a bilinear form (or a (1,1) tensor).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameTensor2 {
    pub t: Matrix3<f64>,
    pub symmetric: bool,
}

impl FrameTensor2 {
    /// Symmetric tensor from the upper triangle of `m`; the lower triangle is mirrored.
    pub fn symmetric(m: Matrix3<f64>) -> Self {
        let mut t = m;
        for i in 0..3 {
            for j in 0..i {
                t[(i, j)] = t[(j, i)];
            }
        }
        Self { t, symmetric: true }
    }

    pub fn general(t: Matrix3<f64>) -> Self {
        Self { t, symmetric: false }
    }

    /// `c1 * g + c2 * η⊗η` in frame components.
    pub fn metric_combination(r: Signature, c_g: f64, c_eta: f64) -> Self {
        let mut t = r.eta() * c_g;
        t[(0, 0)] += c_eta;
        Self { t, symmetric: true }
    }

    /// Trace with the frame metric, `η^{ij} t_ij`.
    pub fn trace(&self, r: Signature) -> f64 {
        (0..3).map(|i| r.eta_diag(i) * self.t[(i, i)]).sum()
    }

    /// `t(X, Y)` for frame vectors.
    pub fn apply(&self, x: &FrameVector, y: &FrameVector) -> f64 {
        (x.transpose() * self.t * y)[(0, 0)]
    }

    pub fn max_abs_diff(&self, other: &FrameTensor2) -> f64 {
        (self.t - other.t).amax()
    }
}

/// Antisymmetric frame components `f_ij = -f_ji` of a (possibly complex) 2-form,
/// with `F = ½ Σ f_ij ω^i ∧ ω^j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoForm {
    f: Matrix3<C64>,
}

impl TwoForm {
    pub fn zero() -> Self {
        Self { f: Matrix3::zeros() }
    }

    /// From the independent components `(f_12, f_13, f_23)`.
    pub fn from_components(f12: C64, f13: C64, f23: C64) -> Self {
        let z = C64::new(0.0, 0.0);
        Self {
            f: Matrix3::new(z, f12, f13, -f12, z, f23, -f13, -f23, z),
        }
    }

    pub fn real(f12: f64, f13: f64, f23: f64) -> Self {
        Self::from_components(f12.into(), f13.into(), f23.into())
    }

    /// Antisymmetric part of an arbitrary matrix.
    pub fn antisymmetrize(m: &Matrix3<C64>) -> Self {
        Self::from_components(
            (m[(0, 1)] - m[(1, 0)]) * 0.5,
            (m[(0, 2)] - m[(2, 0)]) * 0.5,
            (m[(1, 2)] - m[(2, 1)]) * 0.5,
        )
    }

    pub fn matrix(&self) -> &Matrix3<C64> {
        &self.f
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.f[(i, j)]
    }

    /// `F = 2B ω²∧ω³`, the field strength of the potential `B η`.
    pub fn contact(b: f64) -> Self {
        Self::real(0.0, 0.0, 2.0 * b)
    }

    /// `ι_X F`, as covector frame components `X^i f_ij`.
    pub fn interior(&self, x: &FrameVector) -> Vector3<C64> {
        let xc = x.map(C64::from);
        self.f.transpose() * xc
    }

    /// `‖F‖² = f_ij f^ij` (full double sum).
    pub fn norm_sq(&self, r: Signature) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                s += self.f[(i, j)] * self.f[(i, j)] * (r.eta_diag(i) * r.eta_diag(j));
            }
        }
        s
    }

    pub fn max_abs_diff(&self, other: &TwoForm) -> f64 {
        (self.f - other.f).iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn max_abs(&self) -> f64 {
        self.f.iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

/// `ε_ijk` with `ε_123 = +1` (indices 0-based).
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// `ε_ij^k = ε_ijl η^lk`.
pub fn levi_civita_mixed(r: Signature, i: usize, j: usize, k: usize) -> f64 {
    levi_civita(i, j, k) * r.eta_diag(k)
}
