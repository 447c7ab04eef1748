use alloc::vec::Vec;
use core::f64::consts::TAU;

#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;
use nalgebra::Vector3;

use super::magnetic::{contact_field, lorentz_ode};
use super::{integrate, Trajectory};
use crate::geometry::{frame_at, ChartPoint, FrameVector, SpaceForm};
use crate::spinors::{bilinear, dirac_current};
use crate::sqk::{current_covariant_derivative, current_frame_derivative, explicit_solution, Family, SpinorField, SpinorSection};
use crate::{Error, Result, C64};

/// Samples used for pointwise checks along a flow.
const CHECK_SAMPLES: usize = 100;

fn current_up(field: &SpinorField, p: &ChartPoint) -> Result<FrameVector> {
    Ok(dirac_current(&field.eval(p)?, field.space().r))
}

/// `g(J, ξ)`, the lower first frame component.
fn j1(field: &SpinorField, p: &ChartPoint) -> Result<f64> {
    Ok(field.space().sign() * current_up(field, p)?[0])
}

/// Chart components of `J_ψ` at `p`.
pub fn current_chart(field: &SpinorField, p: &ChartPoint) -> Result<Vector3<f64>> {
    Ok(frame_at(field.space(), p)?.to_chart(&current_up(field, p)?))
}

/// `(-1)^(r-1) b g(J, ξ)`, the charge of the orbit through `p`.
pub fn magnetic_charge(field: &SpinorField, p: &ChartPoint) -> Result<f64> {
    let b = field.sqk_type()?.b;
    Ok(-field.space().sign() * b * j1(field, p)?)
}

/// Integral curve of `J_ψ` from `p0`, with `g(J, ξ)` monitored.
pub fn dirac_flow(field: &SpinorField, p0: &ChartPoint, t_max: f64, dt: f64) -> Result<Trajectory> {
    let sf = field.space();
    sf.require_chart()?;
    if current_up(field, p0)?.amax() < 1e-14 {
        return Err(Error::Degenerate("Dirac current vanishes at the initial point"));
    }
    let out = integrate(|y| current_chart(field, &ChartPoint::from_vector(y)), p0.to_vector(), t_max, dt)?;
    let n = out.states.len();
    let (mut positions, mut velocities, mut speed2, mut j1s) =
        (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for y in &out.states {
        let p = ChartPoint::from_vector(y);
        let j = current_up(field, &p)?;
        let r = sf.r;
        speed2.push((0..3).map(|i| r.eta_diag(i) * j[i] * j[i]).sum());
        j1s.push(sf.sign() * j[0]);
        velocities.push(frame_at(sf, &p)?.to_chart(&j));
        positions.push(p);
    }
    Ok(Trajectory { dt, times: out.times, positions, velocities, speed2, j1: Some(j1s), exit: out.exit })
}

/// Frame components of `∇_J J` at `p`.
fn self_acceleration(field: &SpinorField, p: &ChartPoint) -> Result<FrameVector> {
    let d = current_covariant_derivative(field, p)?;
    let j = current_up(field, p)?;
    let lower = d * j;
    let r = field.space().r;
    Ok(FrameVector::from_fn(|i, _| r.eta_diag(i) * lower[i]))
}

fn stride(n: usize) -> usize {
    (n / CHECK_SAMPLES).max(1)
}

/// Charged-orbit verification of a Dirac flow against an independently
/// integrated Lorentz orbit from the same initial data.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitCheck {
    pub charge: f64,
    pub flow: Trajectory,
    pub orbit: Trajectory,
    /// Worst chart-coordinate gap between the two curves.
    pub position_residual: f64,
    /// Worst frame component of `∇_J J − q ♯(ι_J dη)` on sampled points.
    pub acceleration_residual: f64,
    pub j1_drift: f64,
    pub speed_drift: f64,
    /// Worst change of `⟨ψ, ψ⟩` at the sampled points.
    pub norm_drift: f64,
    /// Worst gap in `e_2(J_1) = (−2a + (-1)^r) J_3`, `e_3(J_1) = (2a − (-1)^r) J_2`.
    pub lemma_residual: f64,
}

pub fn orbit_check(field: &SpinorField, p0: &ChartPoint, t_max: f64, dt: f64) -> Result<OrbitCheck> {
    let sf = field.space();
    let t = field.sqk_type()?;
    let s = sf.sign();
    let charge = magnetic_charge(field, p0)?;
    let flow = dirac_flow(field, p0, t_max, dt)?;
    let ode = lorentz_ode(sf, charge, contact_field())?;
    let orbit = ode.trajectory(p0, &current_chart(field, p0)?, t_max, dt)?;
    if let Some(e) = flow.exit.as_ref().or(orbit.exit.as_ref()) {
        return Err(e.error.clone());
    }
    let position_residual = flow
        .positions
        .iter()
        .zip(&orbit.positions)
        .fold(0.0, |m, (a, b)| m.max((a.to_vector() - b.to_vector()).amax()));
    let n0 = bilinear(&field.eval(p0)?, &field.eval(p0)?, sf.r);
    let (mut acc, mut norm_drift, mut lemma) = (0.0_f64, 0.0_f64, 0.0_f64);
    for p in flow.positions.iter().step_by(stride(flow.len())) {
        let j = current_up(field, p)?;
        let w = contact_field().interior(&j);
        let force = FrameVector::from_fn(|i, _| charge * sf.r.eta_diag(i) * w[i].re);
        acc = acc.max((self_acceleration(field, p)? - force).amax());
        let psi = field.eval(p)?;
        norm_drift = norm_drift.max((bilinear(&psi, &psi, sf.r) - n0).norm());
        let d2 = current_frame_derivative(field, 1, p)?[0];
        let d3 = current_frame_derivative(field, 2, p)?[0];
        lemma = lemma.max((d2 - (-2.0 * t.a + s) * j[2]).abs()).max((d3 - (2.0 * t.a - s) * j[1]).abs());
    }
    Ok(OrbitCheck {
        charge,
        j1_drift: flow.j1_drift().unwrap_or(0.0),
        speed_drift: flow.speed_drift(),
        flow,
        orbit,
        position_residual,
        acceleration_residual: acc,
        norm_drift,
        lemma_residual: lemma,
    })
}

/// Constants `(1, ρ e^{iθ})` with the smallest `|g(J, ξ)(p)|` found.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthogonalSearch {
    pub constants: [C64; 2],
    pub j1: f64,
}

const GRID: usize = 8;

/// Scans `C2 / C1` over 8 moduli `2^((k−4)/2)` and 8 phases `2πm/8`, then
/// bisects towards a sign change of `g(J, ξ)(p)` next to the best cell.
pub fn orthogonal_constants(sf: &SpaceForm, family: Family, p: &ChartPoint) -> Result<OrthogonalSearch> {
    let at = |rho: f64, theta: f64| -> Result<(f64, [C64; 2])> {
        let c = [C64::new(1.0, 0.0), C64::from_polar(rho, theta)];
        Ok((j1(&explicit_solution(sf, family, c[0], c[1])?, p)?, c))
    };
    let coords = |k: usize, m: usize| (2.0_f64.powf((k as f64 - 4.0) / 2.0), TAU * m as f64 / GRID as f64);
    let mut grid = [[0.0; GRID]; GRID];
    let mut best = (0, 0);
    for k in 0..GRID {
        for m in 0..GRID {
            let (rho, theta) = coords(k, m);
            grid[k][m] = at(rho, theta)?.0;
            if grid[k][m].abs() < grid[best.0][best.1].abs() {
                best = (k, m);
            }
        }
    }
    let (k, m) = best;
    let (rho0, th0) = coords(k, m);
    let (v0, c0) = at(rho0, th0)?;
    if v0.abs() <= 1e-12 {
        return Ok(OrthogonalSearch { constants: c0, j1: v0 });
    }
    let neighbours = [
        (k.checked_sub(1), Some(m)),
        ((k + 1 < GRID).then_some(k + 1), Some(m)),
        (Some(k), Some((m + GRID - 1) % GRID)),
        (Some(k), Some((m + 1) % GRID)),
    ];
    let mut found = OrthogonalSearch { constants: c0, j1: v0 };
    for (nk, nm) in neighbours {
        let (Some(nk), Some(nm)) = (nk, nm) else { continue };
        if grid[nk][nm].signum() == v0.signum() {
            continue;
        }
        let (rho1, mut th1) = coords(nk, nm);
        // keep the phase step short across the 2π seam
        if (th1 - th0).abs() > core::f64::consts::PI {
            th1 += if th1 > th0 { -TAU } else { TAU };
        }
        let (mut lo, mut hi) = (0.0, 1.0);
        let mut cand = found;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            let (v, c) = at(rho0 + mid * (rho1 - rho0), th0 + mid * (th1 - th0))?;
            cand = OrthogonalSearch { constants: c, j1: v };
            if v.signum() == v0.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if cand.j1.abs() < found.j1.abs() {
            found = cand;
        }
    }
    Ok(found)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicCheck {
    pub j1_initial: f64,
    /// Worst `|g(J, ξ)|` along the flow.
    pub max_j1: f64,
    /// Worst frame component of `∇_ċ ċ` on sampled points.
    pub geodesic_residual: f64,
    pub flow: Trajectory,
}

/// Integral curve of a current orthogonal to ξ at `p0`, or of any current
/// when the type has `b = 0`, checked to be a geodesic.
pub fn geodesic_check(field: &SpinorField, p0: &ChartPoint, t_max: f64, dt: f64) -> Result<GeodesicCheck> {
    let b = field.sqk_type()?.b;
    let j1_initial = j1(field, p0)?;
    if b.abs() > 1e-12 && j1_initial.abs() > 1e-10 {
        return Err(Error::Hypothesis("g(J, ξ) does not vanish at the initial point"));
    }
    let flow = dirac_flow(field, p0, t_max, dt)?;
    if let Some(e) = &flow.exit {
        return Err(e.error.clone());
    }
    let max_j1 = flow.j1.as_deref().unwrap_or(&[]).iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut residual = 0.0_f64;
    for p in flow.positions.iter().step_by(stride(flow.len())) {
        residual = residual.max(self_acceleration(field, p)?.amax());
    }
    Ok(GeodesicCheck { j1_initial, max_j1, geodesic_residual: residual, flow })
}
