use nalgebra::{Vector3, Vector6};

use super::{integrate, Trajectory};
use crate::geometry::{christoffels_fd, frame_at, metric_at, ChartPoint, SpaceForm, TwoForm};
use crate::{Error, Result};

/// `dη = 2 ω²∧ω³`
pub fn contact_field() -> TwoForm {
    TwoForm::contact(1.0)
}

/// `∇_ċ ċ = q ♯(ι_ċ F)` as a first-order system in chart coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzOde {
    pub space: SpaceForm,
    pub charge: f64,
    pub field: TwoForm,
}

pub fn lorentz_ode(sf: &SpaceForm, charge: f64, field: TwoForm) -> Result<LorentzOde> {
    sf.require_chart()?;
    if !charge.is_finite() {
        return Err(Error::InvalidArgument("charge must be finite"));
    }
    Ok(LorentzOde { space: *sf, charge, field })
}

impl LorentzOde {
    pub fn with_charge(&self, charge: f64) -> Self {
        Self { charge, ..*self }
    }

    /// `q ♯(ι_v F)` in chart components.
    pub fn force(&self, p: &ChartPoint, v: &Vector3<f64>) -> Result<Vector3<f64>> {
        let frame = frame_at(&self.space, p)?;
        let w = frame.to_frame(v);
        let co = self.field.interior(&w);
        let r = self.space.r;
        let up = Vector3::from_fn(|j, _| r.eta_diag(j) * co[j].re);
        Ok(frame.to_chart(&up) * self.charge)
    }

    /// `−Γ(v, v) + q ♯(ι_v F)`
    pub fn acceleration(&self, p: &ChartPoint, v: &Vector3<f64>) -> Result<Vector3<f64>> {
        let gamma = christoffels_fd(&self.space, p)?;
        Ok(self.force(p, v)? - gamma.contract(v, v))
    }

    pub fn rhs(&self, y: &Vector6<f64>) -> Result<Vector6<f64>> {
        let p = ChartPoint::new(y[0], y[1], y[2]);
        let v = Vector3::new(y[3], y[4], y[5]);
        let a = self.acceleration(&p, &v)?;
        Ok(Vector6::new(v[0], v[1], v[2], a[0], a[1], a[2]))
    }

    pub fn speed2(&self, p: &ChartPoint, v: &Vector3<f64>) -> Result<f64> {
        Ok(v.dot(&(metric_at(&self.space, p)? * v)))
    }

    /// Orbit from `x0` with chart velocity `v0`.
    pub fn trajectory(&self, x0: &ChartPoint, v0: &Vector3<f64>, t_max: f64, dt: f64) -> Result<Trajectory> {
        let y0 = Vector6::new(x0.x[0], x0.x[1], x0.x[2], v0[0], v0[1], v0[2]);
        let out = integrate(|y| self.rhs(y), y0, t_max, dt)?;
        let mut positions = alloc::vec::Vec::with_capacity(out.states.len());
        let mut velocities = alloc::vec::Vec::with_capacity(out.states.len());
        let mut speed2 = alloc::vec::Vec::with_capacity(out.states.len());
        for y in &out.states {
            let p = ChartPoint::new(y[0], y[1], y[2]);
            let v = Vector3::new(y[3], y[4], y[5]);
            speed2.push(self.speed2(&p, &v)?);
            positions.push(p);
            velocities.push(v);
        }
        Ok(Trajectory { dt, times: out.times, positions, velocities, speed2, j1: None, exit: out.exit })
    }
}

/// Runs the orbit of charge `q` forward for `t_max`, then the orbit of charge
/// `−q` from the reversed end state; returns how far it lands from `(x0, −v0)`.
pub fn charge_flip_residual(ode: &LorentzOde, x0: &ChartPoint, v0: &Vector3<f64>, t_max: f64, dt: f64) -> Result<f64> {
    let fwd = ode.trajectory(x0, v0, t_max, dt)?;
    if let Some(e) = fwd.exit {
        return Err(e.error);
    }
    let (xe, ve) = (fwd.positions[fwd.len() - 1], fwd.velocities[fwd.len() - 1]);
    let back = ode.with_charge(-ode.charge).trajectory(&xe, &(-ve), t_max, dt)?;
    if let Some(e) = back.exit {
        return Err(e.error);
    }
    let (xb, vb) = (back.positions[back.len() - 1], back.velocities[back.len() - 1]);
    Ok((xb.to_vector() - x0.to_vector()).amax().max((vb + v0).amax()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Signature;
    use core::f64::consts::{PI, TAU};
    use num_complex::Complex64;

    fn frame_velocity(sf: &SpaceForm, p: &ChartPoint, w: Vector3<f64>) -> Vector3<f64> {
        frame_at(sf, p).unwrap().to_chart(&w)
    }

    #[test]
    fn geodesic_speed_conserved() {
        let sf = SpaceForm::new(Signature::Riemannian, 1.0).unwrap();
        let p = ChartPoint::new(1.0, 0.3, 0.2);
        let ode = lorentz_ode(&sf, 0.0, contact_field()).unwrap();
        let tr = ode.trajectory(&p, &frame_velocity(&sf, &p, Vector3::new(0.0, 1.0, 0.0)), 10.0, 1e-3).unwrap();
        assert!(tr.completed());
        assert!(tr.speed_drift() < 1e-6, "{}", tr.speed_drift());
    }

    #[test]
    fn force_is_orthogonal() {
        for (r, h) in [(Signature::Riemannian, 2.0), (Signature::Lorentzian, -0.5)] {
            let sf = SpaceForm::new(r, h).unwrap();
            let ode = lorentz_ode(&sf, 1.7, contact_field()).unwrap();
            let p = ChartPoint::new(1.1, 0.4, -0.7);
            let v = Vector3::new(0.3, -0.8, 1.2);
            let f = ode.force(&p, &v).unwrap();
            let g = metric_at(&sf, &p).unwrap();
            assert!(f.dot(&(g * v)).abs() < 1e-12);
            assert!(f.norm() > 0.1);
        }
    }

    #[test]
    fn charged_speed_conserved() {
        let sf = SpaceForm::new(Signature::Lorentzian, 0.5).unwrap();
        let p = ChartPoint::new(1.0, 0.0, 0.0);
        let ode = lorentz_ode(&sf, -2.0, contact_field()).unwrap();
        let tr = ode.trajectory(&p, &frame_velocity(&sf, &p, Vector3::new(0.2, 0.6, 0.3)), 3.0, 1e-3).unwrap();
        assert!(tr.completed());
        assert!(tr.speed_drift() < 1e-6);
    }

    #[test]
    fn flipping_charge_retraces() {
        let sf = SpaceForm::new(Signature::Riemannian, 2.0).unwrap();
        let p = ChartPoint::new(1.2, 0.1, 0.5);
        let ode = lorentz_ode(&sf, 0.8, contact_field()).unwrap();
        let v = frame_velocity(&sf, &p, Vector3::new(0.4, 0.7, -0.2));
        assert!(charge_flip_residual(&ode, &p, &v, 1.0, 1e-3).unwrap() < 1e-8);
    }

    /// Hopf embedding `(cos(θ/2) e^{i(ψ+φ)/2}, sin(θ/2) e^{i(ψ−φ)/2})`; identifies equivalent chart points.
    fn embed(p: &ChartPoint) -> [Complex64; 2] {
        let [t, f, s] = p.x;
        [Complex64::from_polar((t / 2.0).cos(), (s + f) / 2.0), Complex64::from_polar((t / 2.0).sin(), (s - f) / 2.0)]
    }

    #[test]
    fn round_sphere_geodesic_period() {
        let sf = SpaceForm::new(Signature::Riemannian, 1.0).unwrap();
        let p = ChartPoint::new(1.3, 0.2, 0.4);
        let ode = lorentz_ode(&sf, 0.0, contact_field()).unwrap();
        let dt = TAU / 8000.0;
        let tr = ode.trajectory(&p, &frame_velocity(&sf, &p, Vector3::new(0.0, 0.6, 0.8)), 1.2 * TAU, dt).unwrap();
        assert!(tr.completed());
        let e0 = embed(&p);
        let dist = |q: &ChartPoint| {
            let e = embed(q);
            (e[0] - e0[0]).norm().max((e[1] - e0[1]).norm())
        };
        // closest return after leaving the start
        let (k, d) = tr.positions.iter().enumerate().skip(100).map(|(k, q)| (k, dist(q))).fold((0, f64::MAX), |a, b| if b.1 < a.1 { b } else { a });
        let period = tr.times[k];
        assert!((period - TAU).abs() <= dt, "{period}");
        assert!(d < 1e-4);
        assert!(dist(&tr.positions[(TAU / dt).round() as usize]) < 1e-4);
        let _ = PI;
    }
}
