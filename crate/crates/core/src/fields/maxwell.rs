//! Maxwell fields built from pairs of SqK spinors and the closedness table.

use alloc::vec::Vec;
use core::fmt;

use nalgebra::Vector3;

use crate::geometry::{codifferential_2form, ext_d_2form, ChartPoint, SpaceForm, TwoForm};
use crate::spinors::{bilinear, bilinear_two_form, pair_current, GammaSet, Spinor};
use crate::sqk::{explicit_solution, family_type, Family, SpinorSection, SqKType};
use crate::{cmax, Error, Result, C64};

/// `q ↦ F_{ψ1,ψ2}(q)`.
pub fn pair_two_form_field<'a, A, B>(f1: &'a A, f2: &'a B) -> impl Fn(&ChartPoint) -> Result<TwoForm> + 'a
where
    A: SpinorSection + ?Sized,
    B: SpinorSection + ?Sized,
{
    move |q| Ok(bilinear_two_form(&f1.eval(q)?, &f2.eval(q)?, f1.space().r))
}

/// `q ↦ J_{ψ1,ψ2}(q)` (upper frame components).
pub fn pair_current_field<'a, A, B>(f1: &'a A, f2: &'a B) -> impl Fn(&ChartPoint) -> Result<Vector3<C64>> + 'a
where
    A: SpinorSection + ?Sized,
    B: SpinorSection + ?Sized,
{
    move |q| Ok(pair_current(&f1.eval(q)?, &f2.eval(q)?, f1.space().r))
}

fn flat(sf: &SpaceForm, j: &Vector3<C64>) -> Vector3<C64> {
    Vector3::from_fn(|i, _| j[i] * sf.r.eta_diag(i))
}

/// `max_k |(*d*F)_k − (-1)^(r-1) c (♭J)_k|`
pub fn maxwell_residual<F, J>(sf: &SpaceForm, f: F, j: J, c: f64, p: &ChartPoint) -> Result<f64>
where
    F: Fn(&ChartPoint) -> Result<TwoForm>,
    J: Fn(&ChartPoint) -> Result<Vector3<C64>>,
{
    let lhs = codifferential_2form(sf, f, p)?;
    let rhs = flat(sf, &j(p)?) * C64::from(-sf.sign() * c);
    Ok(cmax((lhs - rhs).iter()))
}

/// Least-squares constant `c` in `*d*F = (-1)^(r-1) c ♭J` over a point set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceConstant {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// Worst `‖*d*F − (-1)^(r-1) c ♭J‖ / ‖*d*F‖` at the fitted `c`.
    pub misfit: f64,
    pub points: usize,
}

impl SourceConstant {
    /// Worst relative deviation of the per-point constants from `expected`.
    pub fn relative_error(&self, expected: f64) -> f64 {
        let d = (self.min - expected).abs().max((self.max - expected).abs());
        d / expected.abs().max(f64::MIN_POSITIVE)
    }

    fn merge(self, other: SourceConstant) -> SourceConstant {
        let n = self.points + other.points;
        SourceConstant {
            mean: (self.mean * self.points as f64 + other.mean * other.points as f64) / n as f64,
            min: self.min.min(other.min),
            max: self.max.max(other.max),
            misfit: self.misfit.max(other.misfit),
            points: n,
        }
    }
}

pub fn measure_source_constant<F, J>(sf: &SpaceForm, f: F, j: J, points: &[ChartPoint]) -> Result<SourceConstant>
where
    F: Fn(&ChartPoint) -> Result<TwoForm>,
    J: Fn(&ChartPoint) -> Result<Vector3<C64>>,
{
    if points.is_empty() {
        return Err(Error::InvalidArgument("no sample points"));
    }
    let mut out = SourceConstant { mean: 0.0, min: f64::INFINITY, max: f64::NEG_INFINITY, misfit: 0.0, points: 0 };
    for p in points {
        let w = codifferential_2form(sf, &f, p)?;
        let v = flat(sf, &j(p)?) * C64::from(-sf.sign());
        let vv = v.norm_squared();
        if vv == 0.0 {
            return Err(Error::Degenerate("current vanishes at a sample point"));
        }
        let c = (v.dotc(&w)).re / vv;
        let misfit = (w - v * C64::from(c)).norm() / w.norm().max(f64::MIN_POSITIVE);
        out.mean += c;
        out.min = out.min.min(c);
        out.max = out.max.max(c);
        out.misfit = out.misfit.max(misfit);
        out.points += 1;
    }
    out.mean /= out.points as f64;
    Ok(out)
}

/// The five cases in which `F_{ψ1,ψ2}` is sourced by `J_{ψ1,ψ2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaxwellCase {
    /// Proportional ξ-eigen S0 spinors.
    I,
    /// Killing spinors, `H = (-1)^r`.
    II,
    /// `r = 0`, `H = 13`, S0 with S+.
    III,
    /// `r = 1`, `H = −13`, S0 with S−.
    IV,
    /// S0 spinors with `⟨ψ1, γ1 ψ2⟩ = 0`.
    V,
}

impl MaxwellCase {
    pub const ALL: [MaxwellCase; 5] = [MaxwellCase::I, MaxwellCase::II, MaxwellCase::III, MaxwellCase::IV, MaxwellCase::V];

    /// The constant `c` the case predicts on `sf`.
    pub fn expected(self, sf: &SpaceForm) -> f64 {
        match self {
            MaxwellCase::I | MaxwellCase::II => 4.0,
            MaxwellCase::III | MaxwellCase::IV => 12.0,
            MaxwellCase::V => sf.chart_discriminant(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MaxwellCase::I => "i",
            MaxwellCase::II => "ii",
            MaxwellCase::III => "iii",
            MaxwellCase::IV => "iv",
            MaxwellCase::V => "v",
        }
    }
}

impl fmt::Display for MaxwellCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// A spinor `ψ2` with `⟨ψ1, γ1 ψ2⟩ = 0`.
fn orthogonal_partner(sf: &SpaceForm, psi1: &Spinor) -> Spinor {
    let gs = GammaSet::new(sf.r);
    let w = (gs.bilinear_matrix() * gs.g[0]).adjoint() * psi1;
    Spinor::new(-w[1].conj(), w[0].conj())
}

/// Measures `c` for the canonical spinors of `case` on `sf` at `points`; the
/// mixed-family cases use both orderings.
pub fn maxwell_source_case(sf: &SpaceForm, case: MaxwellCase, points: &[ChartPoint]) -> Result<SourceConstant> {
    let s = sf.sign();
    let generic = (c(1.0, 0.0), c(0.0, 0.3));
    let other = (c(0.2, 0.0), c(1.0, 0.0));
    let measure = |f1: Family, a: (C64, C64), f2: Family, b: (C64, C64)| -> Result<SourceConstant> {
        let p1 = explicit_solution(sf, f1, a.0, a.1)?;
        let p2 = explicit_solution(sf, f2, b.0, b.1)?;
        measure_source_constant(sf, pair_two_form_field(&p1, &p2), pair_current_field(&p1, &p2), points)
    };
    match case {
        MaxwellCase::I => {
            let k = c(0.5, 0.5);
            measure(Family::S0, (c(1.0, 0.0), c(1.0, 0.0)), Family::S0, (k, k))
        }
        MaxwellCase::II => {
            if (sf.h - s).abs() > 1e-12 {
                return Err(Error::Hypothesis("case (ii) needs H = (-1)^r"));
            }
            measure(Family::S0, generic, Family::S0, other)
        }
        MaxwellCase::III | MaxwellCase::IV => {
            let (r_needed, h_needed, fam) = match case {
                MaxwellCase::III => (0, 13.0, Family::Plus),
                _ => (1, -13.0, Family::Minus),
            };
            if sf.r.index() != r_needed || (sf.h - h_needed).abs() > 1e-12 {
                return Err(Error::Hypothesis("cases (iii)/(iv) need (r, H) = (0, 13) or (1, -13)"));
            }
            let one = measure(Family::S0, generic, fam, other)?;
            let two = measure(fam, generic, Family::S0, other)?;
            Ok(one.merge(two))
        }
        MaxwellCase::V => {
            let psi1 = Spinor::new(c(1.0, 0.0), c(0.0, 0.0));
            let psi2 = orthogonal_partner(sf, &psi1);
            let gs = GammaSet::new(sf.r);
            if bilinear(&psi1, &(gs.g[0] * psi2), sf.r).norm() > 1e-12 {
                return Err(Error::Hypothesis("<psi1, gamma1 psi2> must vanish"));
            }
            measure(Family::S0, (psi1[0], psi1[1]), Family::S0, (psi2[0], psi2[1]))
        }
    }
}

/// `−3a1 + 3a2 − b1 + b2`, so that `dF = 2i (−3a1 + 3a2 − b1 + b2) ⟨ψ1, ψ2⟩ vol`.
pub fn df_coefficient(t1: &SqKType, t2: &SqKType) -> f64 {
    -3.0 * t1.a + 3.0 * t2.a - t1.b + t2.b
}

/// `(dF measured, dF predicted)` as coefficients of `ω¹∧ω²∧ω³` at `p`.
pub fn df_numeric<A, B>(sf: &SpaceForm, f1: &A, t1: &SqKType, f2: &B, t2: &SqKType, p: &ChartPoint) -> Result<(C64, C64)>
where
    A: SpinorSection + ?Sized,
    B: SpinorSection + ?Sized,
{
    let measured = ext_d_2form(sf, pair_two_form_field(f1, f2), p)?.0;
    let pair = bilinear(&f1.eval(p)?, &f2.eval(p)?, sf.r);
    Ok((measured, C64::new(0.0, 2.0 * df_coefficient(t1, t2)) * pair))
}

/// Grid-level closedness pattern of one cell.
#[derive(Debug, Clone, PartialEq)]
pub enum CellPattern {
    /// Closed at every grid value where both families exist.
    All,
    None,
    /// Closed only at these grid values or inside these sign-change brackets.
    Isolated { points: Vec<f64>, brackets: Vec<(f64, f64)> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table2Cell {
    /// Family of `ψ1` (column).
    pub psi1: Family,
    /// Family of `ψ2` (row).
    pub psi2: Family,
    pub valid: usize,
    pub pattern: CellPattern,
    /// Whether the pattern agrees with the expected closedness pattern.
    pub matches_expected: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table2 {
    pub r: u8,
    pub grid: Vec<f64>,
    /// Row-major: `ψ2` over S0, S+, S−, then `ψ1` over S0, S+, S−.
    pub cells: Vec<Table2Cell>,
}

const CLOSED: f64 = 1e-9;

fn isolated_point(r: u8, f1: Family, f2: Family) -> Option<Option<f64>> {
    use Family::*;
    match (f1, f2) {
        (S0, S0) | (Plus, Plus) | (Minus, Minus) => None,
        (S0, Plus) | (Plus, S0) => Some((r == 0).then_some(13.0)),
        (S0, Minus) | (Minus, S0) => Some((r == 1).then_some(-13.0)),
        _ => Some(None),
    }
}

fn matches_expected(r: u8, f1: Family, f2: Family, pattern: &CellPattern, step: f64) -> bool {
    match (isolated_point(r, f1, f2), pattern) {
        (None, CellPattern::All) => true,
        (Some(None), CellPattern::None) => true,
        (Some(Some(h0)), CellPattern::Isolated { points, brackets }) => {
            let hits = points.iter().filter(|h| (*h - h0).abs() <= step).count()
                + brackets.iter().filter(|(lo, hi)| *lo <= h0 && h0 <= *hi).count();
            hits >= 1 && points.len() + brackets.len() == hits
        }
        _ => false,
    }
}

/// The 3×3 closedness pattern of `F_{ψ1,ψ2}` over an `H` grid.
pub fn table2_scan(r: crate::Signature, grid: &[f64]) -> Result<Table2> {
    if grid.len() < 2 {
        return Err(Error::InvalidArgument("grid needs at least two values"));
    }
    let step = grid.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    let mut cells = Vec::with_capacity(9);
    for f2 in Family::ALL {
        for f1 in Family::ALL {
            let mut valid = 0;
            let mut closed = Vec::new();
            let mut brackets = Vec::new();
            let mut prev: Option<(f64, f64)> = None;
            for &h in grid {
                let sf = SpaceForm::new(r, h)?;
                let (Ok(t1), Ok(t2)) = (family_type(&sf, f1), family_type(&sf, f2)) else {
                    prev = None;
                    continue;
                };
                valid += 1;
                let k = df_coefficient(&t1, &t2);
                if k.abs() <= CLOSED {
                    closed.push(h);
                } else if let Some((ph, pk)) = prev {
                    if pk.abs() > CLOSED && pk.signum() != k.signum() {
                        brackets.push((ph, h));
                    }
                }
                prev = Some((h, k));
            }
            let pattern = if valid > 0 && closed.len() == valid {
                CellPattern::All
            } else if closed.is_empty() && brackets.is_empty() {
                CellPattern::None
            } else {
                CellPattern::Isolated { points: closed, brackets }
            };
            let matches = matches_expected(r.index(), f1, f2, &pattern, step);
            cells.push(Table2Cell { psi1: f1, psi2: f2, valid, pattern, matches_expected: matches });
        }
    }
    Ok(Table2 { r: r.index(), grid: grid.to_vec(), cells })
}
