//! Sasakian quasi-Killing (SqK) spinors: `∇_X ψ = a i^r X·ψ + b i^r η(X) ξ·ψ`.
//!
//! The three families on a space-form, their explicit chart solutions, the
//! spin connection, curvature of the SqK connection, the Dirac-current lemma
//! and the weak Killing (WK) specialization.

mod connection;
mod current;
mod field;
mod wk;

#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;

use core::fmt;

use crate::geometry::{Signature, SpaceForm};
use crate::{Error, Result};

pub use connection::{
    covariant_derivative, curvature_algebraic, curvature_coefficients, printed_coefficients,
    spin_connection, sqk_curvature_action, sqk_residual, sqk_rhs, SpinConnectionForm,
};
pub use current::{
    current_covariant_derivative, current_frame_derivative, current_lemma_residuals,
    killing_tensor, lemma_predictions, CurrentLemmaResiduals,
};
pub use field::{explicit_solution, FnSection, SpinorField, SpinorSection};
pub use wk::{wk_beta, wk_inversion, wk_parameters, wk_residual, WkParameters};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    S0,
    Plus,
    Minus,
    Custom,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::S0, Family::Plus, Family::Minus];

    /// Image under Clifford multiplication by ξ.
    pub fn xi_image(self) -> Family {
        match self {
            Family::Plus => Family::Minus,
            Family::Minus => Family::Plus,
            f => f,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Family::S0 => "S0",
            Family::Plus => "S+",
            Family::Minus => "S-",
            Family::Custom => "custom",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// An SqK type `(a, b)` with the family it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqKType {
    pub a: f64,
    pub b: f64,
    pub family: Family,
}

impl SqKType {
    pub fn custom(a: f64, b: f64) -> Self {
        Self { a, b, family: Family::Custom }
    }

    /// Killing spinors are the `b = 0` case.
    pub fn is_killing(&self) -> bool {
        self.b == 0.0
    }
}

/// Type of a family on `sf`; S± need `3 + (-1)^r H > 0`.
pub fn family_type(sf: &SpaceForm, family: Family) -> Result<SqKType> {
    let s = sf.sign();
    let (a, b) = match family {
        Family::S0 => (s / 2.0, (sf.h - s) / 4.0),
        Family::Plus | Family::Minus => {
            let root = sf.root().ok_or(Error::FamilyUnavailable { r: sf.r.index(), h: sf.h })?;
            let pm = if family == Family::Plus { 1.0 } else { -1.0 };
            ((s + pm * root) / 2.0, (-2.0 * s - pm * root) / 2.0)
        }
        Family::Custom => return Err(Error::InvalidArgument("custom family has no canonical type")),
    };
    Ok(SqKType { a, b, family })
}

/// All families existing on `sf`, in the order S0, S+, S−.
pub fn families(sf: &SpaceForm) -> alloc::vec::Vec<SqKType> {
    Family::ALL.iter().filter_map(|&f| family_type(sf, f).ok()).collect()
}

/// Type of `ξ·ψ` for `ψ` of type `(a, b)`: `((-1)^r - a, (-1)^(r-1) + 2a + b)`.
pub fn xi_map_type(t: &SqKType, r: Signature) -> SqKType {
    let s = r.sign();
    SqKType { a: s - t.a, b: -s + 2.0 * t.a + t.b, family: t.family.xi_image() }
}

/// Scalar curvature forced by a type: `S = (-1)^r (24 a² + 16 a b)`.
pub fn scalar_from_type(t: &SqKType, r: Signature) -> f64 {
    r.sign() * (24.0 * t.a * t.a + 16.0 * t.a * t.b)
}
