//! Einstein–Dirac (ED) and Einstein–Dirac–Maxwell (EDM) solutions from SqK spinors.

#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;

use core::fmt;

use nalgebra::Vector3;

use super::maxwell::{maxwell_residual, pair_current_field};
use super::stress::{dirac_eigen_residual, einstein_residual, t_em, t_spin};
use super::{GaugeField, StressTensor};
use crate::geometry::{scalar_curvature, ChartPoint, Signature, SpaceForm, TwoForm};
use crate::spinors::{dirac_current, Spinor};
use crate::sqk::{explicit_solution, family_type, wk_parameters, Family, SpinorField, SpinorSection, WkParameters};
use crate::{Error, Result, C64};

/// `−(S − 6Λ) / λ`, the norm an ED-normalized spinor must have.
pub fn ed_target_norm(sf: &SpaceForm, w: &WkParameters) -> Result<f64> {
    if w.lambda == 0.0 {
        return Err(Error::Degenerate("WK number vanishes"));
    }
    Ok(-(scalar_curvature(sf) - 6.0 * w.cosmological) / w.lambda)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdSolution {
    pub family: Family,
    pub wk: WkParameters,
    /// Scaled so that `⟨ψ, ψ⟩ = −(S − 6Λ)/λ`.
    pub field: SpinorField,
    /// The unscaled constants `(C1, C2)` whose norm sign matched the target.
    pub constants: [C64; 2],
    pub target: f64,
}

impl EdSolution {
    pub fn space(&self) -> &SpaceForm {
        self.field.space()
    }

    pub fn einstein_residual(&self, p: &ChartPoint) -> Result<f64> {
        let t = t_spin(&self.field, &GaugeField::vacuum(), p)?;
        Ok(einstein_residual(self.space(), &t, self.wk.cosmological))
    }

    pub fn dirac_residual(&self, p: &ChartPoint) -> Result<f64> {
        dirac_eigen_residual(&self.field, &GaugeField::vacuum(), self.wk.lambda, p)
    }
}

const SIGN_PATTERNS: [(f64, f64); 4] = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0)];

/// Normalized ED solution from the family's SqK field. Constants are chosen
/// from a fixed list of patterns by matching the sign of `⟨ψ, ψ⟩` to the target.
pub fn ed_solution(sf: &SpaceForm, family: Family) -> Result<EdSolution> {
    let wk = wk_parameters(sf, family)?;
    if sf.r == Signature::Riemannian && family == Family::Plus && !(sf.h > -3.0 && sf.h < 1.0) {
        return Err(Error::Hypothesis("Riemannian case (ii) needs -3 < H < 1"));
    }
    let target = ed_target_norm(sf, &wk)?;
    if target.abs() < 1e-12 {
        return Err(Error::Degenerate("ED normalization vanishes"));
    }
    for (c1, c2) in SIGN_PATTERNS {
        let constants = [C64::from(c1), C64::from(c2)];
        let base = explicit_solution(sf, family, constants[0], constants[1])?;
        let n = base.norm().re;
        if n.abs() > 1e-12 && n.signum() == target.signum() {
            let field = base.scaled(C64::from((target / n).sqrt()));
            return Ok(EdSolution { family, wk, field, constants, target });
        }
    }
    Err(Error::Hypothesis("no constant pattern matches the sign of the ED normalization"))
}

/// Closed-form EDM data for `q = ⟨ψ, ψ⟩` and ξ-eigen sign `±`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdmParameters {
    pub r: Signature,
    pub q: f64,
    pub sign: f64,
    pub h: f64,
    pub cosmological: f64,
    /// Gauge coefficient with `4B = ±(-1)^(r-1) q`.
    pub b: f64,
    /// Dirac eigenvalue `(-1)^(r-1)(3a + b ± B)`.
    pub lambda: f64,
}

pub fn edm_parameters(q: f64, r: Signature, sign: f64) -> Result<EdmParameters> {
    let s = r.sign();
    if !q.is_finite() || q == 0.0 {
        return Err(Error::InvalidArgument("q must be finite and nonzero"));
    }
    if sign.abs() != 1.0 {
        return Err(Error::InvalidArgument("sign must be +1 or -1"));
    }
    let den = q - 8.0 * s;
    if den.abs() < 1e-12 {
        return Err(Error::Degenerate("q = (-1)^r 8 makes H singular"));
    }
    match r {
        Signature::Riemannian if q <= 0.0 => return Err(Error::Hypothesis("Riemannian spinor norms are positive")),
        // γ1 = σ1 eigen-spinors (1, ±1) have norm ±2
        Signature::Lorentzian if sign != q.signum() => {
            return Err(Error::Hypothesis("Lorentzian ξ-eigen sign is fixed by the sign of q"))
        }
        _ => {}
    }
    let h = (-s * q * q + s * q - 8.0) / den;
    let cosmological = q * q / 8.0 - q / 4.0 + s;
    let b = sign * -s * q / 4.0;
    let (ta, tb) = (s / 2.0, (h - s) / 4.0);
    let lambda = -s * (3.0 * ta + tb + sign * b);
    Ok(EdmParameters { r, q, sign, h, cosmological, b, lambda })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceType {
    S3,
    Sl2,
    Nil,
}

impl SpaceType {
    pub fn label(self) -> &'static str {
        match self {
            SpaceType::S3 => "S³-type",
            SpaceType::Sl2 => "SL2-type",
            SpaceType::Nil => "Nil-type",
        }
    }
}

impl fmt::Display for SpaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Lorentzian space type of the EDM solution with norm `q`, from
/// `H = −1 + q² / (q + 8)`; Nil exactly at `q ∈ {−4, 8}`.
pub fn edm_classify(q: f64) -> Result<SpaceType> {
    if q == -4.0 || q == 8.0 {
        return Ok(SpaceType::Nil);
    }
    if q + 8.0 == 0.0 {
        return Err(Error::Degenerate("q = -8 makes H singular"));
    }
    let h = -1.0 + q * q / (q + 8.0);
    Ok(if h > 3.0 { SpaceType::S3 } else { SpaceType::Sl2 })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdmSolution {
    pub params: EdmParameters,
    pub space: SpaceForm,
    pub field: SpinorField,
    pub gauge: GaugeField,
    /// False when `H` has no chart; Maxwell is then checked in closed form.
    pub chart_based: bool,
}

pub fn edm_solution(q: f64, r: Signature, sign: f64) -> Result<EdmSolution> {
    let params = edm_parameters(q, r, sign)?;
    let space = SpaceForm::new(r, params.h)?;
    let base = explicit_solution(&space, Family::S0, C64::new(1.0, 0.0), C64::new(sign, 0.0))?;
    let n = base.norm().re;
    let field = base.scaled(C64::from((q / n).sqrt()));
    Ok(EdmSolution { params, space, field, gauge: GaugeField::new(params.b), chart_based: space.chart_valid() })
}

impl EdmSolution {
    pub fn dirac_residual(&self, p: &ChartPoint) -> Result<f64> {
        dirac_eigen_residual(&self.field, &self.gauge, self.params.lambda, p)
    }

    pub fn stress(&self, p: &ChartPoint) -> Result<StressTensor> {
        let spin = t_spin(&self.field, &self.gauge, p)?;
        let em = t_em(&TwoForm::contact(self.gauge.b), &self.space);
        Ok(StressTensor::total(&spin, &em))
    }

    pub fn einstein_residual(&self, p: &ChartPoint) -> Result<f64> {
        Ok(einstein_residual(&self.space, &self.stress(p)?, self.params.cosmological))
    }

    /// `‖*d*F − ♭J‖` with `F = 2B ω²∧ω³`; finite differences on the chart,
    /// `*d*F = 4B ω¹` otherwise.
    pub fn maxwell_residual(&self, p: &ChartPoint) -> Result<f64> {
        // the EDM Maxwell equation is *d*F = ♭J, i.e. c = (-1)^(r-1)
        let c = -self.space.sign();
        if self.chart_based {
            let f = |_: &ChartPoint| Ok(TwoForm::contact(self.gauge.b));
            return maxwell_residual(&self.space, f, pair_current_field(&self.field, &self.field), c, p);
        }
        let psi: Spinor = self.field.eval(p)?;
        let j = dirac_current(&psi, self.space.r);
        let flat = Vector3::new(self.space.sign() * j[0], j[1], j[2]);
        let lhs = Vector3::new(4.0 * self.gauge.b, 0.0, 0.0);
        Ok((lhs - flat).amax())
    }

    /// `|4B − ±(-1)^(r-1) q|`
    pub fn maxwell_constraint(&self) -> f64 {
        (4.0 * self.params.b - self.params.sign * -self.space.sign() * self.params.q).abs()
    }

    pub fn sqk_type(&self) -> Result<crate::SqKType> {
        family_type(&self.space, Family::S0)
    }
}
