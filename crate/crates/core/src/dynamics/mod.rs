//! Charged-particle orbits in chart coordinates and integral curves of Dirac currents.

mod flow;
mod magnetic;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;
use nalgebra::{SVector, Vector3};

use crate::geometry::ChartPoint;
use crate::{Error, Result};

pub use flow::{
    current_chart, dirac_flow, geodesic_check, magnetic_charge, orbit_check, orthogonal_constants, GeodesicCheck,
    OrbitCheck, OrthogonalSearch,
};
pub use magnetic::{charge_flip_residual, contact_field, lorentz_ode, LorentzOde};

/// Where and why an integration stopped early.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainExit {
    /// Time of the last accepted sample.
    pub time: f64,
    pub error: Error,
}

/// Raw fixed-step output of [`integrate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Integration<const N: usize> {
    pub times: Vec<f64>,
    pub states: Vec<SVector<f64, N>>,
    pub exit: Option<DomainExit>,
}

/// Classical fixed-step RK4 for the autonomous system `y' = rhs(y)`.
///
/// Takes `round(t_max / dt)` steps. An `rhs` failure mid-run stops the
/// integration and is reported in `exit`; a failure at `initial` is an error.
pub fn integrate<const N: usize, F>(mut rhs: F, initial: SVector<f64, N>, t_max: f64, dt: f64) -> Result<Integration<N>>
where
    F: FnMut(&SVector<f64, N>) -> Result<SVector<f64, N>>,
{
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument("dt must be positive and finite"));
    }
    if !(t_max >= 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidArgument("t_max must be non-negative and finite"));
    }
    let steps = (t_max / dt).round() as usize;
    let mut k1 = rhs(&initial)?;
    let mut y = initial;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(y);
    let mut exit = None;
    for n in 1..=steps {
        let step = (|| {
            let k2 = rhs(&(y + k1 * (0.5 * dt)))?;
            let k3 = rhs(&(y + k2 * (0.5 * dt)))?;
            let k4 = rhs(&(y + k3 * dt))?;
            let next = y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
            // the next step's first stage doubles as the domain check for `next`
            let k_next = rhs(&next)?;
            Ok::<_, Error>((next, k_next))
        })();
        match step {
            Ok((next, k_next)) => {
                y = next;
                k1 = k_next;
                times.push(n as f64 * dt);
                states.push(y);
            }
            Err(error) => {
                exit = Some(DomainExit { time: (n - 1) as f64 * dt, error });
                break;
            }
        }
    }
    Ok(Integration { times, states, exit })
}

/// A sampled chart curve with its monitors.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub dt: f64,
    pub times: Vec<f64>,
    pub positions: Vec<ChartPoint>,
    pub velocities: Vec<Vector3<f64>>,
    /// `g(ċ, ċ)`
    pub speed2: Vec<f64>,
    /// `g(J, ξ)` along Dirac flows.
    pub j1: Option<Vec<f64>>,
    pub exit: Option<DomainExit>,
}

fn drift(v: &[f64]) -> f64 {
    v.first().map_or(0.0, |&v0| v.iter().fold(0.0, |m, x| m.max((x - v0).abs())))
}

/// Plain decimal with 17 significant digits.
fn decimal17(v: f64) -> String {
    let mut s = String::new();
    if v == 0.0 || !v.is_finite() {
        let _ = write!(s, "{v:.16}");
        return s;
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (16 - mag).clamp(0, 340) as usize;
    let _ = write!(s, "{v:.decimals$}");
    s
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn completed(&self) -> bool {
        self.exit.is_none()
    }

    pub fn speed_drift(&self) -> f64 {
        drift(&self.speed2)
    }

    pub fn j1_drift(&self) -> Option<f64> {
        self.j1.as_deref().map(drift)
    }

    /// Columns `t, x1, x2, x3, v1, v2, v3, speed2, J1`; `J1` is empty off Dirac flows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x1,x2,x3,v1,v2,v3,speed2,J1\n");
        for k in 0..self.len() {
            let p = &self.positions[k];
            let v = &self.velocities[k];
            let cols = [self.times[k], p.x[0], p.x[1], p.x[2], v[0], v[1], v[2], self.speed2[k]];
            for (i, c) in cols.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&decimal17(*c));
            }
            out.push(',');
            if let Some(j1) = &self.j1 {
                out.push_str(&decimal17(j1[k]));
            }
            out.push('\n');
        }
        out
    }
}
