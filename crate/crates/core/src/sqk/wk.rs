//! SqK spinors as weak Killing spinors in dimension three (constant norm, so
//! the `α` term vanishes).

#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;

use nalgebra::Matrix3;

use super::field::SpinorSection;
use super::{connection::covariant_derivative, Family};
use crate::geometry::{scalar_curvature, ChartPoint, FrameTensor2, SpaceForm};
use crate::spinors::GammaSet;
use crate::{Error, Result, C64};

/// WK number `λ` and cosmological constant `Λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WkParameters {
    pub lambda: f64,
    pub cosmological: f64,
}

const DEGENERATE: f64 = 1e-12;

fn denominator(sf: &SpaceForm, w: &WkParameters) -> Result<f64> {
    let d = sf.h - 3.0 * w.cosmological + 2.0 * sf.sign();
    if d.abs() < DEGENERATE {
        Err(Error::Degenerate("H - 3Λ + 2(-1)^r vanishes"))
    } else {
        Ok(d)
    }
}

/// `(λ, Λ)` for the families: S0 is case (i), S+ case (ii), S− case (iii).
pub fn wk_parameters(sf: &SpaceForm, family: Family) -> Result<WkParameters> {
    let s = sf.sign();
    let w = match family {
        Family::S0 => WkParameters { lambda: (-s * sf.h - 5.0) / 4.0, cosmological: -s },
        Family::Plus | Family::Minus => {
            let root = sf.root().ok_or(Error::FamilyUnavailable { r: sf.r.index(), h: sf.h })?;
            let pm = if family == Family::Plus { -1.0 } else { 1.0 };
            WkParameters { lambda: pm * s * root - 0.5, cosmological: pm * root + sf.h + 2.0 * s }
        }
        Family::Custom => return Err(Error::InvalidArgument("custom family has no WK parameters")),
    };
    denominator(sf, &w)?;
    Ok(w)
}

/// `(a, b) = ((-1)^r λ (Λ − (-1)^r), −(-1)^r λ (H − (-1)^r)) / (H − 3Λ + 2(-1)^r)`
pub fn wk_inversion(sf: &SpaceForm, w: &WkParameters) -> Result<(f64, f64)> {
    let d = denominator(sf, w)?;
    let s = sf.sign();
    Ok((s * w.lambda * (w.cosmological - s) / d, -s * w.lambda * (sf.h - s) / d))
}

/// `β` as an endomorphism, `β(e_j) = Σ_i β[(i, j)] e_i`:
/// `β(X) = k ((Λ − (-1)^r) X − (H − (-1)^r) η(X) ξ)`, `k = λ / (H − 3Λ + 2(-1)^r)`.
pub fn wk_beta(sf: &SpaceForm, w: &WkParameters) -> Result<FrameTensor2> {
    if (scalar_curvature(sf) - 6.0 * w.cosmological).abs() < DEGENERATE {
        return Err(Error::Hypothesis("S - 6Λ vanishes"));
    }
    let k = w.lambda / denominator(sf, w)?;
    let s = sf.sign();
    let mut m = Matrix3::identity() * (k * (w.cosmological - s));
    m[(0, 0)] -= k * (sf.h - s);
    Ok(FrameTensor2::general(m))
}

/// `max_j ‖∇_{e_j}ψ − i^{3r} β(e_j)·ψ‖ / ‖ψ‖`
pub fn wk_residual<S: SpinorSection + ?Sized>(field: &S, w: &WkParameters, p: &ChartPoint) -> Result<f64> {
    let sf = field.space();
    let beta = wk_beta(sf, w)?.t;
    let psi = field.eval(p)?;
    let n = psi.norm();
    if n == 0.0 {
        return Err(Error::ZeroSpinor);
    }
    let g = GammaSet::new(sf.r).g;
    let i3r = sf.r.i_pow().powu(3);
    let mut worst: f64 = 0.0;
    for j in 0..3 {
        let mut rhs = crate::Spinor::zeros();
        for i in 0..3 {
            rhs += g[i] * psi * (i3r * C64::from(beta[(i, j)]));
        }
        worst = worst.max((covariant_derivative(field, j, p)? - rhs).norm() / n);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Signature;
    use crate::sampling::seeded_points;
    use crate::sqk::{explicit_solution, family_type};

    #[test]
    fn parameter_examples() {
        let sf = SpaceForm::new(Signature::Riemannian, 1.0).unwrap();
        assert_eq!(wk_parameters(&sf, Family::S0).unwrap(), WkParameters { lambda: -1.5, cosmological: -1.0 });
        assert_eq!(wk_parameters(&sf, Family::Minus).unwrap(), WkParameters { lambda: 1.5, cosmological: 5.0 });
    }

    #[test]
    fn inversion_round_trip() {
        for r in Signature::BOTH {
            for k in 0..20 {
                let sf = SpaceForm::new(r, -2.9 + 0.29 * k as f64 + 0.013).unwrap();
                for fam in Family::ALL {
                    let Ok(w) = wk_parameters(&sf, fam) else { continue };
                    let t = family_type(&sf, fam).unwrap();
                    let (a, b) = wk_inversion(&sf, &w).unwrap();
                    assert!((a - t.a).abs() < 1e-12 && (b - t.b).abs() < 1e-12, "{r} {fam} {}", sf.h);
                }
            }
        }
    }

    #[test]
    fn residual_small_for_families() {
        for r in Signature::BOTH {
            let sf = SpaceForm::new(r, 0.5).unwrap();
            for fam in Family::ALL {
                let w = wk_parameters(&sf, fam).unwrap();
                let f = explicit_solution(&sf, fam, C64::new(1.0, 0.2), C64::new(0.3, -0.4)).unwrap();
                for p in seeded_points(r, 10, 42) {
                    assert!(wk_residual(&f, &w, &p).unwrap() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn degenerate_denominator() {
        // case (ii), r = 0, H = 1: λ = -5/2, Λ = 1, denominator 1 - 3 + 2 = 0
        let sf = SpaceForm::new(Signature::Riemannian, 1.0).unwrap();
        assert!(matches!(wk_parameters(&sf, Family::Plus), Err(Error::Degenerate(_))));
    }
}
