//! Central finite differences over small fixed-size values.

use nalgebra::SMatrix;

use crate::tolerances::FD_STEP;
use crate::{Result, C64};

/// Values that can be differenced: `(a - b) * s`.
pub trait Differentiable: Sized {
    fn diff_scaled(&self, other: &Self, s: f64) -> Self;
}

impl Differentiable for f64 {
    fn diff_scaled(&self, other: &Self, s: f64) -> Self {
        (self - other) * s
    }
}

impl Differentiable for C64 {
    fn diff_scaled(&self, other: &Self, s: f64) -> Self {
        (self - other) * s
    }
}

impl<const R: usize, const C: usize> Differentiable for SMatrix<f64, R, C> {
    fn diff_scaled(&self, other: &Self, s: f64) -> Self {
        (self - other) * s
    }
}

impl<const R: usize, const C: usize> Differentiable for SMatrix<C64, R, C> {
    fn diff_scaled(&self, other: &Self, s: f64) -> Self {
        (self - other).map(|z| z * s)
    }
}

/// Coordinate step `FD_STEP * max(1, |x|)`.
pub fn step_for(x: f64) -> f64 {
    FD_STEP * x.abs().max(1.0)
}

/// `(f(h) - f(-h)) / 2h`.
pub fn central<T, F>(f: F, h: f64) -> Result<T>
where
    T: Differentiable,
    F: Fn(f64) -> Result<T>,
{
    let plus = f(h)?;
    let minus = f(-h)?;
    Ok(plus.diff_scaled(&minus, 0.5 / h))
}
