//! Property tests for the spinor algebra, SqK type algebra and energy conditions.

use nalgebra::Matrix2;
use proptest::prelude::*;
use sqk_core::fields::{energy_conditions, sample_energy_conditions, spin_stress_closed};
use sqk_core::geometry::{levi_civita, levi_civita_mixed};
use sqk_core::spinors::{bilinear, bilinear_two_form, bilinear_two_form_reduced, dirac_current, pair_current, spinor, GammaSet};
use sqk_core::sqk::xi_map_type;
use sqk_core::{Signature, SqKType, C64};

const I: C64 = C64::new(0.0, 1.0);

fn eye() -> Matrix2<C64> {
    Matrix2::identity()
}

fn max_abs(m: &Matrix2<C64>) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

fn signature() -> impl Strategy<Value = Signature> {
    prop_oneof![Just(Signature::Riemannian), Just(Signature::Lorentzian)]
}

fn complex() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| C64::new(a, b))
}

#[test]
fn clifford_relation() {
    for r in Signature::BOTH {
        let g = GammaSet::new(r);
        for i in 0..3 {
            for j in 0..3 {
                let eta = if i == j { r.eta_diag(i) } else { 0.0 };
                let lhs = g.lower(i) * g.lower(j) + g.lower(j) * g.lower(i);
                assert!(max_abs(&(lhs + eye() * C64::from(2.0 * eta))) < 1e-15, "{r} {i} {j}");
            }
        }
    }
}

#[test]
fn commutator_reduction() {
    for r in Signature::BOTH {
        let g = GammaSet::new(r);
        for i in 0..3 {
            for j in 0..3 {
                let lhs = g.lower(i) * g.lower(j) - g.lower(j) * g.lower(i);
                let mut rhs = Matrix2::zeros();
                for k in 0..3 {
                    rhs += g.lower(k) * (r.neg_i_pow() * -2.0 * levi_civita_mixed(r, i, j, k));
                }
                assert!(max_abs(&(lhs - rhs)) < 1e-15, "{r} {i} {j}");
            }
        }
    }
}

#[test]
fn product_identity() {
    for r in Signature::BOTH {
        let g = GammaSet::new(r);
        // (-1)^(r-1) i^(r-2)
        let pref = -r.sign() * I.powi(r.index() as i32 - 2);
        for i in 0..3 {
            for j in 0..3 {
                let eta = if i == j { r.eta_diag(i) } else { 0.0 };
                let mut rhs = -eye() * C64::from(eta);
                for k in 0..3 {
                    rhs -= g.upper(k) * (pref * levi_civita(i, j, k));
                }
                assert!(max_abs(&(g.lower(i) * g.lower(j) - rhs)) < 1e-15, "{r} {i} {j}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn current_is_real(r in signature(), c1 in complex(), c2 in complex()) {
        let psi = spinor(c1, c2);
        let j = pair_current(&psi, &psi, r);
        prop_assert!(j.iter().all(|z| z.im.abs() < 1e-14 * (1.0 + z.norm())));
        prop_assert!(bilinear(&psi, &psi, r).im.abs() < 1e-14);
    }

    #[test]
    fn current_norm_identity(r in signature(), c1 in complex(), c2 in complex()) {
        let psi = spinor(c1, c2);
        let j = dirac_current(&psi, r);
        let gjj: f64 = (0..3).map(|i| r.eta_diag(i) * j[i] * j[i]).sum();
        let n = bilinear(&psi, &psi, r).re;
        prop_assert!((gjj - r.sign() * n * n).abs() < 1e-12 * (1.0 + n * n));
    }

    #[test]
    fn two_form_reduction(r in signature(), a1 in complex(), a2 in complex(), b1 in complex(), b2 in complex()) {
        let (p1, p2) = (spinor(a1, a2), spinor(b1, b2));
        let full = bilinear_two_form(&p1, &p2, r);
        let reduced = bilinear_two_form_reduced(&p1, &p2, r);
        prop_assert!(full.max_abs_diff(&reduced) < 1e-12 * (1.0 + full.max_abs()));
    }

    #[test]
    fn xi_map_involution(r in signature(), a in -5.0..5.0f64, b in -5.0..5.0f64) {
        let t = SqKType::custom(a, b);
        let back = xi_map_type(&xi_map_type(&t, r), r);
        prop_assert!((back.a - a).abs() < 1e-12 && (back.b - b).abs() < 1e-12);
    }

    #[test]
    fn energy_conditions_match_samples(h in -6.0..6.0f64, l in -6.0..6.0f64, seed in any::<u64>()) {
        let rep = energy_conditions(h, l);
        let chk = sample_energy_conditions(&spin_stress_closed(h, l), &rep, 50, seed).unwrap();
        prop_assert_eq!(chk.contradictions, 0);
    }
}
