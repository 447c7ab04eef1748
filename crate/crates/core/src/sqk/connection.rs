//! Spin connection, SqK residuals and the curvature of the SqK connection.

#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;

use super::field::SpinorSection;
use super::SqKType;
use crate::geometry::{frame_derivative, frame_derivative_with, structure_constants, ChartPoint, Signature, SpaceForm};
use crate::spinors::{GammaSet, SpinMatrix, Spinor};
use crate::tolerances::FD_STEP_NESTED;
use crate::{Error, Result, C64};

/// `ω^S(e_j)` for `j = 1, 2, 3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinConnectionForm {
    pub m: [SpinMatrix; 3],
}

/// `ω^S = ((-i)^r / 2) Σ ω^i γ_i + i^r ((H + (-1)^(r-1)) / 4) ω^1 γ_1`
pub fn spin_connection(sf: &SpaceForm) -> SpinConnectionForm {
    let g = GammaSet::new(sf.r).g;
    let half = sf.r.neg_i_pow() * 0.5;
    let mut m = g.map(|gj| gj * half);
    m[0] += g[0] * (sf.r.i_pow() * ((sf.h - sf.sign()) / 4.0));
    SpinConnectionForm { m }
}

/// `∇_{e_j} ψ = e_j(ψ) + ω^S(e_j) ψ`, with `e_j(ψ)` by central differences.
pub fn covariant_derivative<S: SpinorSection + ?Sized>(field: &S, j: usize, p: &ChartPoint) -> Result<Spinor> {
    let sf = field.space();
    let psi = field.eval(p)?;
    let d = if field.is_constant() {
        Spinor::zeros()
    } else {
        sf.check_point(p, 1e-3)?;
        frame_derivative(sf, p, j, |q| field.eval(q))?
    };
    Ok(d + spin_connection(sf).m[j] * psi)
}

/// Right-hand side `i^r a γ_j ψ + i^r b δ_1j γ_1 ψ` of the SqK equation.
pub fn sqk_rhs(t: &SqKType, r: Signature, j: usize, psi: &Spinor) -> Spinor {
    let g = GammaSet::new(r).g;
    let ir = r.i_pow();
    let mut out = g[j] * psi * (ir * t.a);
    if j == 0 {
        out += g[0] * psi * (ir * t.b);
    }
    out
}

/// `max_j ‖∇_{e_j}ψ − i^r a γ_j ψ − i^r b δ_1j γ_1 ψ‖ / ‖ψ‖`
pub fn sqk_residual<S: SpinorSection + ?Sized>(field: &S, t: &SqKType, p: &ChartPoint) -> Result<f64> {
    let psi = field.eval(p)?;
    let n = psi.norm();
    if n == 0.0 {
        return Err(Error::ZeroSpinor);
    }
    let r = field.space().r;
    let mut worst: f64 = 0.0;
    for j in 0..3 {
        let lhs = covariant_derivative(field, j, p)?;
        worst = worst.max((lhs - sqk_rhs(t, r, j, &psi)).norm() / n);
    }
    Ok(worst)
}

/// `∇^SqK_{e_j} = e_j + M_j` with `M_j = ω^S(e_j) − i^r (a γ_j + b δ_1j γ_1)`.
fn sqk_matrices(sf: &SpaceForm, t: &SqKType) -> [SpinMatrix; 3] {
    let g = GammaSet::new(sf.r).g;
    let ir = sf.r.i_pow();
    let mut m = spin_connection(sf).m;
    for (j, mj) in m.iter_mut().enumerate() {
        *mj -= g[j] * (ir * t.a);
    }
    m[0] -= g[0] * (ir * t.b);
    m
}

/// `Ω^SqK(e_i, e_j)` from the connection matrices and the structure constants.
pub fn curvature_algebraic(sf: &SpaceForm, t: &SqKType, i: usize, j: usize) -> SpinMatrix {
    let m = sqk_matrices(sf, t);
    let c = structure_constants(sf).get(i, j);
    let mut out = m[i] * m[j] - m[j] * m[i];
    for k in 0..3 {
        out -= m[k] * C64::from(c[k]);
    }
    out
}

/// Coefficients `b_k` in `Ω^SqK(e_i, e_j) = Σ_k ε_ijk b_k γ_k`, read off the
/// algebraic curvature.
pub fn curvature_coefficients(sf: &SpaceForm, t: &SqKType) -> [C64; 3] {
    let gs = GammaSet::new(sf.r);
    // γ_k⁻¹ = -η_kk γ_k
    let coeff = |k: usize, om: SpinMatrix| (gs.g[k] * om).trace() * (-sf.r.eta_diag(k) / 2.0);
    [
        coeff(0, curvature_algebraic(sf, t, 1, 2)),
        -coeff(1, curvature_algebraic(sf, t, 0, 2)),
        coeff(2, curvature_algebraic(sf, t, 0, 1)),
    ]
}

/// The printed closed forms
/// `b1 = i^r H/2 − 2 i^r a² − 2b`, `b2 = b3 = −2(−i)^r a² − 2(−i)^r ab + (−1)^r b + i^r/2`,
/// evaluated literally.
pub fn printed_coefficients(sf: &SpaceForm, t: &SqKType) -> [C64; 3] {
    let (ir, nir) = (sf.r.i_pow(), sf.r.neg_i_pow());
    let (a, b) = (t.a, t.b);
    let b1 = ir * (sf.h / 2.0) - ir * (2.0 * a * a) - 2.0 * b;
    let b23 = -nir * (2.0 * a * a) - nir * (2.0 * a * b) + sf.sign() * b + ir * 0.5;
    [b1, b23, b23]
}

/// Smooth non-constant test section equal to `psi0` at `p`.
fn test_section(psi0: Spinor, p: ChartPoint) -> impl Fn(&ChartPoint) -> Result<Spinor> {
    move |q: &ChartPoint| {
        let d = [q.x[0] - p.x[0], q.x[1] - p.x[1], q.x[2] - p.x[2]];
        let w1 = C64::new(0.0, 0.7 * d[0] + 0.3 * d[1] - 0.5 * d[2]).exp();
        let w2 = 1.0 + 0.4 * (d[0] - 0.6 * d[1] + 0.9 * d[2]).sin();
        Ok(Spinor::new(psi0[0] * w1, psi0[1] * w2))
    }
}

/// `Ω^SqK(e_i, e_j) ψ0` at `p` by nested central differences of `∇^SqK`
/// applied to a non-constant section through `ψ0`.
pub fn sqk_curvature_action(
    sf: &SpaceForm,
    t: &SqKType,
    psi0: &Spinor,
    i: usize,
    j: usize,
    p: &ChartPoint,
) -> Result<Spinor> {
    sf.check_point(p, 1e-2)?;
    let m = sqk_matrices(sf, t);
    let phi = test_section(*psi0, *p);
    let nabla = |k: usize, q: &ChartPoint| -> Result<Spinor> {
        let d = frame_derivative_with(sf, q, k, FD_STEP_NESTED, &phi)?;
        Ok(d + m[k] * phi(q)?)
    };
    let second = |a: usize, b: usize| -> Result<Spinor> {
        let d = frame_derivative_with(sf, p, a, FD_STEP_NESTED, |q| nabla(b, q))?;
        Ok(d + m[a] * nabla(b, p)?)
    };
    let c = structure_constants(sf).get(i, j);
    let mut out = second(i, j)? - second(j, i)?;
    for k in 0..3 {
        out -= nabla(k, p)? * C64::from(c[k]);
    }
    Ok(out)
}
