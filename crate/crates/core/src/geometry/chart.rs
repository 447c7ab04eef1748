#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;
use nalgebra::{Matrix3, Vector3};

use super::{ChartPoint, FrameVector, Signature, SpaceForm};
use crate::Result;

/// Sasakian frame at a point: row `i` holds the chart components of `e_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub e: Matrix3<f64>,
}

impl Frame {
    /// Coordinate components of `e_i` (0-based).
    pub fn vector(&self, i: usize) -> Vector3<f64> {
        self.e.row(i).transpose()
    }

    /// Frame components → chart components.
    pub fn to_chart(&self, v: &FrameVector) -> Vector3<f64> {
        self.e.transpose() * v
    }

    /// Chart components → frame components (`ω^i(v)`).
    pub fn to_frame(&self, v: &Vector3<f64>) -> FrameVector {
        self.coframe() * v
    }

    /// Row `i` holds the chart components of the coframe `ω^i`.
    pub fn coframe(&self) -> Matrix3<f64> {
        // the frame is orthonormal, so the inverse always exists on the chart
        self.e.transpose().try_inverse().unwrap_or_else(Matrix3::zeros)
    }
}

/// The Sasakian frame `{e1 = ξ, e2, e3}` in chart components.
pub fn frame_at(sf: &SpaceForm, p: &ChartPoint) -> Result<Frame> {
    let alpha = sf.alpha()?;
    sf.check_point(p, 0.0)?;
    let [x1, _, x3] = p.x;
    let k = 2.0 / alpha.sqrt();
    let (s3, c3) = x3.sin_cos();
    let e1 = [0.0, 0.0, 2.0 / alpha];
    let (e2, e3) = match sf.r {
        Signature::Riemannian => {
            let (s1, c1) = x1.sin_cos();
            let cot = c1 / s1;
            (
                [-k * s3, k * c3 / s1, -k * cot * c3],
                [k * c3, k * s3 / s1, -k * cot * s3],
            )
        }
        Signature::Lorentzian => {
            let (s1, c1) = (x1.sinh(), x1.cosh());
            let coth = c1 / s1;
            (
                [k * c3, k * s3 / s1, -k * coth * s3],
                [-k * s3, k * c3 / s1, -k * coth * c3],
            )
        }
    };
    Ok(Frame {
        e: Matrix3::new(e1[0], e1[1], e1[2], e2[0], e2[1], e2[2], e3[0], e3[1], e3[2]),
    })
}

/// Coframe `{ω^1 = η, ω^2, ω^3}`; row `i` holds the chart components of `ω^i`.
pub fn coframe_at(sf: &SpaceForm, p: &ChartPoint) -> Result<Matrix3<f64>> {
    Ok(frame_at(sf, p)?.coframe())
}

/// Coordinate components `g_μν` of the Berger-sphere / Lorentzian chart metric.
pub fn metric_at(sf: &SpaceForm, p: &ChartPoint) -> Result<Matrix3<f64>> {
    let alpha = sf.alpha()?;
    sf.check_point(p, 0.0)?;
    let x1 = p.x[0];
    let (s, c) = match sf.r {
        Signature::Riemannian => x1.sin_cos(),
        Signature::Lorentzian => (x1.sinh(), x1.cosh()),
    };
    // g = α/4 (dx1² + s² dx2²) + (-1)^r α²/4 (dx3 + c dx2)²
    let base = alpha / 4.0;
    let fiber = sf.sign() * alpha * alpha / 4.0;
    let g11 = base;
    let g22 = base * s * s + fiber * c * c;
    let g23 = fiber * c;
    let g33 = fiber;
    Ok(Matrix3::new(g11, 0.0, 0.0, 0.0, g22, g23, 0.0, g23, g33))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::seeded_points;
    use core::f64::consts::PI;

    fn sf(r: Signature, h: f64) -> SpaceForm {
        SpaceForm::new(r, h).unwrap()
    }

    #[test]
    fn frame_at_equator() {
        let f = frame_at(&sf(Signature::Riemannian, 1.0), &ChartPoint::new(PI / 2.0, 0.0, 0.0)).unwrap();
        assert!((f.vector(1) - Vector3::new(0.0, 2.0, 0.0)).amax() < 1e-15);
        assert!((f.vector(0) - Vector3::new(0.0, 0.0, 2.0)).amax() < 1e-15);
        let f = frame_at(&sf(Signature::Riemannian, 1.0), &ChartPoint::new(PI / 2.0, 0.0, PI / 2.0)).unwrap();
        assert!((f.vector(1) - Vector3::new(-2.0, 0.0, 0.0)).amax() < 1e-15);
    }

    #[test]
    fn lorentzian_frame_example() {
        let f = frame_at(&sf(Signature::Lorentzian, -1.0), &ChartPoint::new(1.0, 0.0, 0.0)).unwrap();
        let want = Vector3::new(2.0, 2.0 / 1f64.sinh(), -2.0 * 1f64.cosh() / 1f64.sinh());
        // sin τ = 0 at τ = 0, so only the ∂χ part survives
        let got = f.vector(1);
        assert!((got[0] - want[0]).abs() < 1e-15);
        assert!(got[1].abs() < 1e-15 && got[2].abs() < 1e-15);
        let f = frame_at(&sf(Signature::Lorentzian, -1.0), &ChartPoint::new(1.0, 0.0, PI / 2.0)).unwrap();
        let got = f.vector(1);
        assert!(got[0].abs() < 1e-15);
        assert!((got[1] - want[1]).abs() < 1e-14 && (got[2] - want[2]).abs() < 1e-14);
    }

    #[test]
    fn metric_examples() {
        let g = metric_at(&sf(Signature::Riemannian, 1.0), &ChartPoint::new(PI / 2.0, 0.3, 0.9)).unwrap();
        assert!((g[(0, 0)] - 0.25).abs() < 1e-15);
        assert!((g[(1, 1)] - 0.25).abs() < 1e-15);
        assert!((g[(2, 2)] - 0.25).abs() < 1e-15);
        assert!(g[(1, 2)].abs() < 1e-15);
        let g = metric_at(&sf(Signature::Lorentzian, -1.0), &ChartPoint::new(1.0, 0.3, 0.9)).unwrap();
        assert!((g[(2, 2)] + 0.25).abs() < 1e-15);
        assert!((g[(0, 0)] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn orthonormal_on_sample_points() {
        for r in Signature::BOTH {
            for h in [-2.5, -1.0, 0.0, 1.0, 2.0, 2.9] {
                let s = sf(r, h);
                for p in seeded_points(r, 50, 42) {
                    let f = frame_at(&s, &p).unwrap();
                    let g = metric_at(&s, &p).unwrap();
                    assert_eq!(g, g.transpose());
                    let m = f.e * g * f.e.transpose();
                    assert!((m - r.eta()).amax() < 1e-10, "r={r} H={h} {p:?}");
                }
            }
        }
    }

    #[test]
    fn chart_invalid_errors() {
        let p = ChartPoint::new(1.0, 0.0, 0.0);
        assert!(frame_at(&sf(Signature::Lorentzian, 5.0), &p).is_err());
        assert!(metric_at(&sf(Signature::Riemannian, -3.5), &p).is_err());
        assert!(frame_at(&sf(Signature::Riemannian, 1.0), &ChartPoint::new(0.0, 0.0, 0.0)).is_err());
    }
}
