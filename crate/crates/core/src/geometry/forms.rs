//! Exterior derivative and Hodge star on frame-component form fields.
//!
//! Fields are closures returning frame components at a chart point; the
//! exterior derivative converts to chart components, differences them and
//! converts back. The Hodge star uses `η` and `ε_123 = +1`, so `** = (-1)^r`
//! on every degree.

use nalgebra::{Matrix3, Vector3};

use super::chart::frame_at;
use super::christoffel::require_interior;
use super::{levi_civita, ChartPoint, Signature, SpaceForm, TwoForm};
use crate::fd::{central, step_for};
use crate::{Result, C64};

/// Coefficient of `ω¹∧ω²∧ω³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeForm(pub C64);

fn unit(k: usize) -> Vector3<f64> {
    let mut v = Vector3::zeros();
    v[k] = 1.0;
    v
}

fn complexify(m: &Matrix3<f64>) -> Matrix3<C64> {
    m.map(C64::from)
}

/// `dA` for a 1-form field `A = a_i ω^i`.
pub fn ext_d_1form<F>(sf: &SpaceForm, field: F, p: &ChartPoint) -> Result<TwoForm>
where
    F: Fn(&ChartPoint) -> Result<Vector3<C64>>,
{
    require_interior(sf, p)?;
    let chart = |q: &ChartPoint| -> Result<Vector3<C64>> {
        let theta = complexify(&frame_at(sf, q)?.coframe());
        Ok(theta.transpose() * field(q)?)
    };
    let mut der = [Vector3::<C64>::zeros(); 3];
    for (k, d) in der.iter_mut().enumerate() {
        let e = unit(k);
        *d = central(|t| chart(&p.offset(&e, t)), step_for(p.x[k]))?;
    }
    let mut da = Matrix3::<C64>::zeros();
    for mu in 0..3 {
        for nu in 0..3 {
            da[(mu, nu)] = der[mu][nu] - der[nu][mu];
        }
    }
    let e = complexify(&frame_at(sf, p)?.e);
    Ok(TwoForm::antisymmetrize(&(e * da * e.transpose())))
}

/// `dF` for a 2-form field.
pub fn ext_d_2form<F>(sf: &SpaceForm, field: F, p: &ChartPoint) -> Result<ThreeForm>
where
    F: Fn(&ChartPoint) -> Result<TwoForm>,
{
    require_interior(sf, p)?;
    let chart = |q: &ChartPoint| -> Result<Matrix3<C64>> {
        let theta = complexify(&frame_at(sf, q)?.coframe());
        Ok(theta.transpose() * field(q)?.matrix() * theta)
    };
    let mut der = [Matrix3::<C64>::zeros(); 3];
    for (k, d) in der.iter_mut().enumerate() {
        let e = unit(k);
        *d = central(|t| chart(&p.offset(&e, t)), step_for(p.x[k]))?;
    }
    // (dF)_{123} in chart coordinates; the frame component picks up det(e).
    let chart_123 = der[0][(1, 2)] + der[1][(2, 0)] + der[2][(0, 1)];
    let det = frame_at(sf, p)?.e.determinant();
    Ok(ThreeForm(chart_123 * det))
}

/// `(*a)_jl = a^i ε_ijl`.
pub fn hodge_1form(r: Signature, a: &Vector3<C64>) -> TwoForm {
    let up = Vector3::from_fn(|i, _| a[i] * r.eta_diag(i));
    TwoForm::from_components(up[2], -up[1], up[0])
}

/// `(*F)_l = ½ F^ij ε_ijl`.
pub fn hodge_2form(r: Signature, f: &TwoForm) -> Vector3<C64> {
    let mut out = Vector3::<C64>::zeros();
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let e = levi_civita(i, j, l);
                if e != 0.0 {
                    out[l] += f.get(i, j) * (0.5 * e * r.eta_diag(i) * r.eta_diag(j));
                }
            }
        }
    }
    out
}

/// `*(c ω¹∧ω²∧ω³) = (-1)^r c`.
pub fn hodge_3form(r: Signature, w: ThreeForm) -> C64 {
    w.0 * r.sign()
}

/// `*d*F` for a 2-form field; equals `(-1)^(r-1) ∇^i F_ik ω^k`.
pub fn codifferential_2form<F>(sf: &SpaceForm, field: F, p: &ChartPoint) -> Result<Vector3<C64>>
where
    F: Fn(&ChartPoint) -> Result<TwoForm>,
{
    let d = ext_d_1form(sf, |q| Ok(hodge_2form(sf.r, &field(q)?)), p)?;
    Ok(hodge_2form(sf.r, &d))
}
