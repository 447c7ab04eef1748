//! Stress-energy tensors, the spin-c Dirac operator and the Einstein residual.

use super::{GaugeField, StressKind, StressTensor};
use crate::geometry::{ricci, ChartPoint, FrameTensor2, SpaceForm, TwoForm};
use crate::spinors::{bilinear, GammaSet, Spinor};
use crate::sqk::{covariant_derivative, SpinorSection};
use crate::{Error, Result, C64};
use nalgebra::Matrix3;

/// `∇^c_{e_j} ψ = ∇_{e_j} ψ + i q B η(e_j) ψ`.
pub fn spin_c_derivative<S: SpinorSection + ?Sized>(
    field: &S,
    gauge: &GaugeField,
    j: usize,
    p: &ChartPoint,
) -> Result<Spinor> {
    let mut d = covariant_derivative(field, j, p)?;
    if j == 0 {
        d += field.eval(p)? * C64::new(0.0, gauge.charge * gauge.b);
    }
    Ok(d)
}

/// `T^spin(e_i, e_j) = ¼ Re⟨ψ, i^r (γ_i ∇^c_j ψ + γ_j ∇^c_i ψ)⟩`.
pub fn t_spin<S: SpinorSection + ?Sized>(field: &S, gauge: &GaugeField, p: &ChartPoint) -> Result<StressTensor> {
    let r = field.space().r;
    let g = GammaSet::new(r).g;
    let psi = field.eval(p)?;
    let nabla = [
        spin_c_derivative(field, gauge, 0, p)?,
        spin_c_derivative(field, gauge, 1, p)?,
        spin_c_derivative(field, gauge, 2, p)?,
    ];
    let ir = r.i_pow();
    let t = Matrix3::from_fn(|i, j| {
        let v = (g[i] * nabla[j] + g[j] * nabla[i]) * ir;
        bilinear(&psi, &v, r).re / 4.0
    });
    Ok(StressTensor { tensor: FrameTensor2::symmetric(t), kind: StressKind::Spin })
}

/// `T^spin = −((-1)^r / 2) a q g − ((b ± B) / 2) q η⊗η` for a ξ-eigen SqK
/// field of type `(a, b)` with `q = ⟨ψ, ψ⟩`.
pub fn t_spin_closed_form(sf: &SpaceForm, a: f64, b: f64, b_gauge_signed: f64, q: f64) -> FrameTensor2 {
    FrameTensor2::metric_combination(sf.r, -sf.sign() / 2.0 * a * q, -(b + b_gauge_signed) / 2.0 * q)
}

/// `T^em(X, Y) = g*(ι_X F, ι_Y F) − ¼ ‖F‖² g(X, Y)` (real part).
pub fn t_em(f: &TwoForm, sf: &SpaceForm) -> StressTensor {
    let r = sf.r;
    let m = f.matrix();
    let norm = f.norm_sq(r);
    let t = Matrix3::from_fn(|i, j| {
        let mut s = C64::new(0.0, 0.0);
        for k in 0..3 {
            s += m[(i, k)] * m[(j, k)] * r.eta_diag(k);
        }
        let gij = if i == j { r.eta_diag(i) } else { 0.0 };
        (s - norm * (gij / 4.0)).re
    });
    StressTensor { tensor: FrameTensor2::symmetric(t), kind: StressKind::Em }
}

/// `max |Ric − T + tr(T) g − 2Λ g|` over frame components.
pub fn einstein_residual(sf: &SpaceForm, t: &StressTensor, cosmological: f64) -> f64 {
    let eta = sf.r.eta();
    let lhs = ricci(sf).t - t.tensor.t + eta * (t.tensor.trace(sf.r) - 2.0 * cosmological);
    lhs.amax()
}

/// `D^c ψ = i^r Σ_i γ^i ∇^c_{e_i} ψ`.
pub fn dirac_apply<S: SpinorSection + ?Sized>(field: &S, gauge: &GaugeField, p: &ChartPoint) -> Result<Spinor> {
    let gs = GammaSet::new(field.space().r);
    let mut out = Spinor::zeros();
    for i in 0..3 {
        out += gs.upper(i) * spin_c_derivative(field, gauge, i, p)?;
    }
    Ok(out * field.space().r.i_pow())
}

/// `‖D^c ψ − λ ψ‖ / ‖ψ‖`
pub fn dirac_eigen_residual<S: SpinorSection + ?Sized>(
    field: &S,
    gauge: &GaugeField,
    lambda: f64,
    p: &ChartPoint,
) -> Result<f64> {
    let psi = field.eval(p)?;
    let n = psi.norm();
    if n == 0.0 {
        return Err(Error::ZeroSpinor);
    }
    Ok((dirac_apply(field, gauge, p)? - psi * C64::from(lambda)).norm() / n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Signature;
    use crate::sqk::{explicit_solution, family_type, Family, FnSection};

    fn one() -> C64 {
        C64::new(1.0, 0.0)
    }

    #[test]
    fn spin_stress_killing_round_sphere() {
        let sf = SpaceForm::new(Signature::Riemannian, 1.0).unwrap();
        let f = explicit_solution(&sf, Family::S0, one(), one()).unwrap();
        let t = t_spin(&f, &GaugeField::vacuum(), &ChartPoint::new(1.0, 0.0, 0.0)).unwrap();
        let q = f.norm().re;
        let want = FrameTensor2::metric_combination(sf.r, -q / 4.0, 0.0);
        assert!(t.tensor.max_abs_diff(&want) < 1e-14);
        let zero = FnSection::new(sf, |_: &ChartPoint| Ok(Spinor::zeros()));
        let t = t_spin(&zero, &GaugeField::vacuum(), &ChartPoint::new(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(t.tensor.t.amax(), 0.0);
    }

    #[test]
    fn em_stress_examples() {
        let r0 = SpaceForm::new(Signature::Riemannian, 1.0).unwrap();
        assert_eq!(t_em(&TwoForm::contact(0.0), &r0).tensor.t.amax(), 0.0);
        let t = t_em(&TwoForm::contact(1.0), &r0).tensor;
        assert_eq!((t.t[(0, 0)], t.t[(1, 1)]), (-2.0, 2.0));
        for r in Signature::BOTH {
            let sf = SpaceForm::new(r, 0.0).unwrap();
            let b = 0.7;
            let t = t_em(&TwoForm::contact(b), &sf).tensor;
            let want = FrameTensor2::metric_combination(r, 2.0 * b * b, -sf.sign() * 4.0 * b * b);
            assert!(t.max_abs_diff(&want) < 1e-14);
            // trace by explicit contraction
            let m = TwoForm::contact(b);
            let mut tr = 0.0;
            for i in 0..3 {
                for k in 0..3 {
                    tr += r.eta_diag(i) * r.eta_diag(k) * (m.get(i, k) * m.get(i, k)).re;
                }
            }
            tr -= 0.75 * m.norm_sq(r).re;
            assert!((t.trace(r) - tr).abs() < 1e-14);
        }
    }

    #[test]
    fn einstein_vacuum_control() {
        let sf = SpaceForm::new(Signature::Riemannian, 1.0).unwrap();
        let zero = StressTensor { tensor: FrameTensor2::symmetric(Matrix3::zeros()), kind: StressKind::Total };
        assert!(einstein_residual(&sf, &zero, 1.0) < 1e-15);
        assert!(einstein_residual(&sf, &zero, 1.1) >= 0.05);
    }

    #[test]
    fn dirac_eigenvalues() {
        let sf = SpaceForm::new(Signature::Riemannian, 1.0).unwrap();
        let f = explicit_solution(&sf, Family::S0, one(), one()).unwrap();
        let p = ChartPoint::new(1.0, 0.3, 0.1);
        assert!(dirac_eigen_residual(&f, &GaugeField::vacuum(), -1.5, &p).unwrap() < 1e-14);
        assert!(dirac_eigen_residual(&f.scaled(C64::new(2.0, 0.0)), &GaugeField::vacuum(), -1.5, &p).unwrap() < 1e-14);
        for r in Signature::BOTH {
            let sf = SpaceForm::new(r, 0.5).unwrap();
            let t = family_type(&sf, Family::Minus).unwrap();
            let f = explicit_solution(&sf, Family::Minus, C64::new(0.3, 0.1), one()).unwrap();
            let lambda = -sf.sign() * (3.0 * t.a + t.b);
            assert!(dirac_eigen_residual(&f, &GaugeField::vacuum(), lambda, &p).unwrap() < 1e-6);
        }
    }
}
