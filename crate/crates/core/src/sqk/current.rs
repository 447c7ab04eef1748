//! Derivatives of the Dirac current of an SqK field.

use nalgebra::Matrix3;

use super::field::SpinorSection;
use super::SqKType;
use crate::geometry::{connection_coeffs, frame_connection, frame_derivative, levi_civita, ChartPoint, FrameTensor2, FrameVector, SpaceForm};
use crate::spinors::dirac_current;
use crate::Result;

fn lower(sf: &SpaceForm, j: &FrameVector) -> FrameVector {
    FrameVector::new(sf.sign() * j[0], j[1], j[2])
}

fn current_at<S: SpinorSection + ?Sized>(field: &S, p: &ChartPoint) -> Result<FrameVector> {
    Ok(dirac_current(&field.eval(p)?, field.space().r))
}

/// `e_j(J_i)` for `i = 1, 2, 3` (lower frame components).
pub fn current_frame_derivative<S: SpinorSection + ?Sized>(field: &S, j: usize, p: &ChartPoint) -> Result<FrameVector> {
    let sf = field.space();
    if field.is_constant() {
        return Ok(FrameVector::zeros());
    }
    sf.check_point(p, 1e-3)?;
    frame_derivative(sf, p, j, |q| Ok(lower(sf, &current_at(field, q)?)))
}

/// `D[(i, j)] = g(∇_{e_j} J, e_i)`.
pub fn current_covariant_derivative<S: SpinorSection + ?Sized>(field: &S, p: &ChartPoint) -> Result<Matrix3<f64>> {
    let sf = field.space();
    let j_up = current_at(field, p)?;
    let nabla = frame_connection(sf);
    let mut d = Matrix3::zeros();
    for j in 0..3 {
        let ej = current_frame_derivative(field, j, p)?;
        let mut v = FrameVector::zeros();
        for k in 0..3 {
            v += nabla[j][k] * j_up[k];
        }
        let v = lower(sf, &v);
        for i in 0..3 {
            d[(i, j)] = ej[i] + v[i];
        }
    }
    Ok(d)
}

/// Closed forms of the lemma, both indexed `[(i, j)]`:
/// `e_j(J_i) = Σ_k (2a ε_jik + 2b η(e_j) ε_1ik − c_j ε_jik) J^k` and
/// `g(∇_{e_j} J, e_i) = Σ_k (2a ε_jik + 2b η(e_j) ε_1ik) J^k`.
pub fn lemma_predictions(sf: &SpaceForm, t: &SqKType, j_up: &FrameVector) -> (Matrix3<f64>, Matrix3<f64>) {
    let c = connection_coeffs(sf);
    let mut de = Matrix3::zeros();
    let mut dn = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let eta_j = if j == 0 { 1.0 } else { 0.0 };
            for k in 0..3 {
                let cov = 2.0 * t.a * levi_civita(j, i, k) + 2.0 * t.b * eta_j * levi_civita(0, i, k);
                dn[(i, j)] += cov * j_up[k];
                de[(i, j)] += (cov - c[j] * levi_civita(j, i, k)) * j_up[k];
            }
        }
    }
    (de, dn)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentLemmaResiduals {
    /// Worst `|e_j(J_i) − prediction|`.
    pub derivative: f64,
    /// Worst `|g(∇_{e_j}J, e_i) − prediction|`.
    pub covariant: f64,
}

pub fn current_lemma_residuals<S: SpinorSection + ?Sized>(field: &S, t: &SqKType, p: &ChartPoint) -> Result<CurrentLemmaResiduals> {
    let sf = field.space();
    let j_up = current_at(field, p)?;
    let (pe, pn) = lemma_predictions(sf, t, &j_up);
    let mut de = Matrix3::zeros();
    for j in 0..3 {
        de.set_column(j, &current_frame_derivative(field, j, p)?);
    }
    let dn = current_covariant_derivative(field, p)?;
    Ok(CurrentLemmaResiduals { derivative: (de - pe).amax(), covariant: (dn - pn).amax() })
}

/// Symmetrized `∇J`: `K_ij = g(∇_{e_i}J, e_j) + g(∇_{e_j}J, e_i)`; zero iff `J` is Killing.
pub fn killing_tensor<S: SpinorSection + ?Sized>(field: &S, p: &ChartPoint) -> Result<FrameTensor2> {
    let d = current_covariant_derivative(field, p)?;
    Ok(FrameTensor2::symmetric(d + d.transpose()))
}
