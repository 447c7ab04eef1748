//! Chart-coordinate differential geometry by central differences.

use nalgebra::{Matrix3, Vector3};

use super::chart::{frame_at, metric_at};
use super::{ChartPoint, FrameTensor2, FrameVector, SpaceForm};
use crate::fd::{central, step_for, Differentiable};
use crate::tolerances::{FD_STEP, FD_STEP_NESTED};
use crate::Result;

/// `Γ^μ_νρ`, indexed `[μ][ν][ρ]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Christoffels {
    pub g: [[[f64; 3]; 3]; 3],
}

impl Christoffels {
    /// `Γ^μ_νρ v^ν w^ρ`
    pub fn contract(&self, v: &Vector3<f64>, w: &Vector3<f64>) -> Vector3<f64> {
        let mut out = Vector3::zeros();
        for mu in 0..3 {
            for nu in 0..3 {
                for rho in 0..3 {
                    out[mu] += self.g[mu][nu][rho] * v[nu] * w[rho];
                }
            }
        }
        out
    }
}

fn unit(k: usize) -> Vector3<f64> {
    let mut v = Vector3::zeros();
    v[k] = 1.0;
    v
}

/// Step along a chart direction `v` giving a coordinate displacement of about
/// `FD_STEP * max(1, |p|)`.
pub(crate) fn directional_step(p: &ChartPoint, v: &Vector3<f64>) -> f64 {
    FD_STEP * p.max_abs().max(1.0) / v.amax().max(1.0)
}

/// `e_j(f)` at `p`, differencing `f` along the chart components of `e_j`.
pub fn frame_derivative<T, F>(sf: &SpaceForm, p: &ChartPoint, j: usize, f: F) -> Result<T>
where
    T: Differentiable,
    F: Fn(&ChartPoint) -> Result<T>,
{
    frame_derivative_with(sf, p, j, FD_STEP, f)
}

/// [`frame_derivative`] with an explicit base step (before scaling by `|p|`).
pub fn frame_derivative_with<T, F>(sf: &SpaceForm, p: &ChartPoint, j: usize, base: f64, f: F) -> Result<T>
where
    T: Differentiable,
    F: Fn(&ChartPoint) -> Result<T>,
{
    let v = frame_at(sf, p)?.vector(j);
    let h = base * p.max_abs().max(1.0) / v.amax().max(1.0);
    central(|t| f(&p.offset(&v, t)), h)
}

pub(crate) fn require_interior(sf: &SpaceForm, p: &ChartPoint) -> Result<()> {
    sf.check_point(p, 1e-3)
}

fn metric_derivatives(sf: &SpaceForm, p: &ChartPoint) -> Result<[Matrix3<f64>; 3]> {
    let mut d = [Matrix3::zeros(); 3];
    for (k, dk) in d.iter_mut().enumerate() {
        let e = unit(k);
        *dk = central(|t| metric_at(sf, &p.offset(&e, t)), step_for(p.x[k]))?;
    }
    Ok(d)
}

/// Levi-Civita symbols of the chart metric from differenced `g_μν`.
pub fn christoffels_fd(sf: &SpaceForm, p: &ChartPoint) -> Result<Christoffels> {
    require_interior(sf, p)?;
    christoffels_unchecked(sf, p)
}

fn christoffels_unchecked(sf: &SpaceForm, p: &ChartPoint) -> Result<Christoffels> {
    let g = metric_at(sf, p)?;
    let ginv = g.try_inverse().ok_or(crate::Error::Degenerate("singular chart metric"))?;
    let dg = metric_derivatives(sf, p)?;
    let mut out = [[[0.0; 3]; 3]; 3];
    for mu in 0..3 {
        for nu in 0..3 {
            for rho in nu..3 {
                let mut s = 0.0;
                for sigma in 0..3 {
                    s += ginv[(mu, sigma)]
                        * (dg[nu][(sigma, rho)] + dg[rho][(sigma, nu)] - dg[sigma][(nu, rho)]);
                }
                out[mu][nu][rho] = 0.5 * s;
                out[mu][rho][nu] = 0.5 * s;
            }
        }
    }
    Ok(Christoffels { g: out })
}

/// `[e_i, e_j]` in frame components from differenced chart frame fields.
pub fn lie_bracket_fd(sf: &SpaceForm, p: &ChartPoint, i: usize, j: usize) -> Result<FrameVector> {
    require_interior(sf, p)?;
    let frame = frame_at(sf, p)?;
    let (x, y) = (frame.vector(i), frame.vector(j));
    let dy_along_x = central(|t| Ok(frame_at(sf, &p.offset(&x, t))?.vector(j)), directional_step(p, &x))?;
    let dx_along_y = central(|t| Ok(frame_at(sf, &p.offset(&y, t))?.vector(i)), directional_step(p, &y))?;
    Ok(frame.to_frame(&(dy_along_x - dx_along_y)))
}

/// `∇_{e_i} e_j` in frame components via chart Christoffel symbols.
pub fn frame_covariant_derivative_fd(
    sf: &SpaceForm,
    p: &ChartPoint,
    i: usize,
    j: usize,
) -> Result<FrameVector> {
    require_interior(sf, p)?;
    let frame = frame_at(sf, p)?;
    let gamma = christoffels_unchecked(sf, p)?;
    let (x, y) = (frame.vector(i), frame.vector(j));
    let dy = central(|t| Ok(frame_at(sf, &p.offset(&x, t))?.vector(j)), directional_step(p, &x))?;
    Ok(frame.to_frame(&(dy + gamma.contract(&x, &y))))
}

/// Ricci tensor in frame components from nested differences of the metric.
pub fn ricci_fd(sf: &SpaceForm, p: &ChartPoint) -> Result<FrameTensor2> {
    require_interior(sf, p)?;
    let gamma = christoffels_unchecked(sf, p)?;
    // dgamma[k][mu][nu][rho] = ∂_k Γ^mu_{nu rho}
    let mut dgamma = [[[[0.0; 3]; 3]; 3]; 3];
    for (k, dk) in dgamma.iter_mut().enumerate() {
        let e = unit(k);
        let h = FD_STEP_NESTED * p.x[k].abs().max(1.0);
        let plus = christoffels_unchecked(sf, &p.offset(&e, h))?;
        let minus = christoffels_unchecked(sf, &p.offset(&e, -h))?;
        for mu in 0..3 {
            for nu in 0..3 {
                for rho in 0..3 {
                    dk[mu][nu][rho] = (plus.g[mu][nu][rho] - minus.g[mu][nu][rho]) / (2.0 * h);
                }
            }
        }
    }
    let g = &gamma.g;
    let mut ric = Matrix3::zeros();
    for sigma in 0..3 {
        for nu in 0..3 {
            let mut s = 0.0;
            for rho in 0..3 {
                s += dgamma[rho][rho][nu][sigma] - dgamma[nu][rho][rho][sigma];
                for lam in 0..3 {
                    s += g[rho][rho][lam] * g[lam][nu][sigma] - g[rho][nu][lam] * g[lam][rho][sigma];
                }
            }
            ric[(sigma, nu)] = s;
        }
    }
    let e = frame_at(sf, p)?.e;
    Ok(FrameTensor2::general(e * ric * e.transpose()))
}
