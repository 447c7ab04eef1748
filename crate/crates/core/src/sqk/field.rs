//! Spinor fields: explicit SqK solutions and arbitrary sections.

#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;

use nalgebra::Matrix2;

use super::{family_type, Family, SqKType};
use crate::geometry::{ChartPoint, Signature, SpaceForm};
use crate::spinors::{bilinear, GammaSet, SpinMatrix, Spinor};
use crate::{Error, Result, C64};

/// A spinor field in frame components over a space-form.
pub trait SpinorSection {
    fn space(&self) -> &SpaceForm;

    fn eval(&self, p: &ChartPoint) -> Result<Spinor>;

    /// Frame components independent of the point; derivatives need no chart.
    fn is_constant(&self) -> bool {
        false
    }
}

/// A section given by a closure.
pub struct FnSection<F> {
    space: SpaceForm,
    f: F,
}

impl<F> FnSection<F>
where
    F: Fn(&ChartPoint) -> Result<Spinor>,
{
    pub fn new(space: SpaceForm, f: F) -> Self {
        Self { space, f }
    }
}

impl<F> SpinorSection for FnSection<F>
where
    F: Fn(&ChartPoint) -> Result<Spinor>,
{
    fn space(&self) -> &SpaceForm {
        &self.space
    }

    fn eval(&self, p: &ChartPoint) -> Result<Spinor> {
        (self.f)(p)
    }
}

/// `scale · ξ^k · base(C)` with `k ∈ {0, 1}`, where the base is either the
/// constant `C` or the chart solution `A(x3) B(x1) D(x2) C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorField {
    space: SpaceForm,
    family: Family,
    c: [C64; 2],
    chart: bool,
    xi: bool,
    scale: C64,
}

fn half_phase(x: f64) -> C64 {
    C64::new(0.0, x / 2.0).exp()
}

/// `A(x3) B(x1) D(x2)`.
fn chart_matrix(r: Signature, p: &ChartPoint) -> SpinMatrix {
    let [x1, x2, x3] = p.x;
    let (ep, em) = (half_phase(x3), half_phase(-x3));
    let i = C64::i();
    let (a, b) = match r {
        Signature::Riemannian => {
            let (s, c) = (x1 / 2.0).sin_cos();
            (
                Matrix2::new(ep, em, -ep, em),
                Matrix2::new(c.into(), -i * s, -i * s, c.into()),
            )
        }
        Signature::Lorentzian => {
            let (s, c) = ((x1 / 2.0).sinh(), (x1 / 2.0).cosh());
            (
                Matrix2::new(ep, em, ep, -em),
                Matrix2::new(c.into(), -i * s, i * s, c.into()),
            )
        }
    };
    let zero = C64::new(0.0, 0.0);
    let d = Matrix2::new(half_phase(x2), zero, zero, half_phase(-x2));
    a * b * d
}

/// A point on which chart fields are evaluated when only a constant is needed.
pub(crate) fn reference_point(r: Signature) -> ChartPoint {
    match r {
        Signature::Riemannian => ChartPoint::new(core::f64::consts::FRAC_PI_2, 0.0, 0.0),
        Signature::Lorentzian => ChartPoint::new(1.0, 0.0, 0.0),
    }
}

/// The explicit SqK field of `family` with constants `(C1, C2)`.
///
/// S0 fields have constant frame components and exist for every `H`. On the
/// chart the matrix solution is S− for `r = 0` and S+ for `r = 1`; the other
/// sign is obtained by Clifford multiplication with ξ.
pub fn explicit_solution(sf: &SpaceForm, family: Family, c1: C64, c2: C64) -> Result<SpinorField> {
    let base = SpinorField {
        space: *sf,
        family,
        c: [c1, c2],
        chart: false,
        xi: false,
        scale: C64::new(1.0, 0.0),
    };
    match family {
        Family::S0 => Ok(base),
        Family::Custom => Err(Error::InvalidArgument("custom family has no explicit solution")),
        Family::Plus | Family::Minus => {
            if !sf.chart_valid() {
                return Err(Error::FamilyUnavailable { r: sf.r.index(), h: sf.h });
            }
            let direct = match sf.r {
                Signature::Riemannian => Family::Minus,
                Signature::Lorentzian => Family::Plus,
            };
            Ok(SpinorField { chart: true, xi: family != direct, ..base })
        }
    }
}

impl SpinorField {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn constants(&self) -> [C64; 2] {
        self.c
    }

    pub fn scale(&self) -> C64 {
        self.scale
    }

    pub fn sqk_type(&self) -> Result<SqKType> {
        family_type(&self.space, self.family)
    }

    pub fn scaled(&self, k: C64) -> Self {
        Self { scale: self.scale * k, ..*self }
    }

    /// `ξ·ψ`
    pub fn xi_map(&self) -> Self {
        let (xi, scale) = if self.xi {
            // ξ·ξ = -(-1)^r
            (false, self.scale * -self.space.sign())
        } else {
            (true, self.scale)
        };
        Self { xi, scale, family: self.family.xi_image(), ..*self }
    }

    /// `⟨ψ, ψ⟩`, which is constant on the chart.
    pub fn norm(&self) -> C64 {
        let psi = if self.chart {
            self.eval_unchecked(&reference_point(self.space.r))
        } else {
            self.eval_unchecked(&ChartPoint::new(0.0, 0.0, 0.0))
        };
        bilinear(&psi, &psi, self.space.r)
    }

    fn eval_unchecked(&self, p: &ChartPoint) -> Spinor {
        let c = Spinor::new(self.c[0], self.c[1]);
        let mut psi = if self.chart { chart_matrix(self.space.r, p) * c } else { c };
        if self.xi {
            psi = GammaSet::new(self.space.r).g[0] * psi;
        }
        psi * self.scale
    }
}

impl SpinorSection for SpinorField {
    fn space(&self) -> &SpaceForm {
        &self.space
    }

    fn eval(&self, p: &ChartPoint) -> Result<Spinor> {
        if self.chart {
            self.space.check_point(p, 0.0)?;
        }
        Ok(self.eval_unchecked(p))
    }

    fn is_constant(&self) -> bool {
        !self.chart
    }
}
