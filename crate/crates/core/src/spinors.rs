//! Gamma matrices, Clifford multiplication, the spin-invariant bilinear form
//! and the currents and two-forms built from it.
//!
//! `γ1 = (-i)^(r-1) σ1`, `γ2 = i σ2`, `γ3 = i σ3`; they satisfy
//! `γ_i γ_j + γ_j γ_i = -2 η_ij`.

use nalgebra::{Matrix2, Vector2, Vector3};

use crate::geometry::{levi_civita_mixed, FrameVector, Signature, TwoForm};
use crate::C64;

/// Two complex components with respect to the Sasakian frame.
pub type Spinor = Vector2<C64>;
pub type SpinMatrix = Matrix2<C64>;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

pub fn spinor(c1: C64, c2: C64) -> Spinor {
    Vector2::new(c1, c2)
}

pub fn pauli() -> [SpinMatrix; 3] {
    [
        Matrix2::new(ZERO, ONE, ONE, ZERO),
        Matrix2::new(ZERO, -I, I, ZERO),
        Matrix2::new(ONE, ZERO, ZERO, -ONE),
    ]
}

/// The three gamma matrices of a signature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaSet {
    pub r: Signature,
    pub g: [SpinMatrix; 3],
}

impl GammaSet {
    pub fn new(r: Signature) -> Self {
        let [s1, s2, s3] = pauli();
        Self {
            r,
            g: [s1 * r.neg_i_pow_minus_one(), s2 * I, s3 * I],
        }
    }

    pub fn lower(&self, i: usize) -> SpinMatrix {
        self.g[i]
    }

    /// `γ^i = η^ii γ_i`
    pub fn upper(&self, i: usize) -> SpinMatrix {
        self.g[i] * C64::from(self.r.eta_diag(i))
    }

    /// `X·` as a matrix, `Σ X^i γ_i`.
    pub fn clifford_matrix(&self, x: &FrameVector) -> SpinMatrix {
        self.g[0] * C64::from(x[0]) + self.g[1] * C64::from(x[1]) + self.g[2] * C64::from(x[2])
    }

    /// `(γ1)^r`, the matrix of the bilinear form.
    pub fn bilinear_matrix(&self) -> SpinMatrix {
        match self.r {
            Signature::Riemannian => SpinMatrix::identity(),
            Signature::Lorentzian => self.g[0],
        }
    }
}

/// `X·ψ = Σ X^i γ_i ψ`
pub fn clifford(x: &FrameVector, psi: &Spinor, r: Signature) -> Spinor {
    GammaSet::new(r).clifford_matrix(x) * psi
}

/// `⟨ψ1, ψ2⟩ = ψ1† (γ1)^r ψ2`
pub fn bilinear(psi1: &Spinor, psi2: &Spinor, r: Signature) -> C64 {
    let m = GammaSet::new(r).bilinear_matrix();
    (psi1.adjoint() * m * psi2)[(0, 0)]
}

/// Pair current `J^i = (-i)^(r-1) ⟨ψ1, γ^i ψ2⟩` (upper frame components).
pub fn pair_current(psi1: &Spinor, psi2: &Spinor, r: Signature) -> Vector3<C64> {
    let gs = GammaSet::new(r);
    let f = r.neg_i_pow_minus_one();
    Vector3::from_fn(|i, _| f * bilinear(psi1, &(gs.upper(i) * psi2), r))
}

/// Dirac current `J_ψ` of a single spinor; its components are real.
pub fn dirac_current(psi: &Spinor, r: Signature) -> FrameVector {
    pair_current(psi, psi, r).map(|z| z.re)
}

/// `F_ij = i ⟨ψ1, [γ_i, γ_j] ψ2⟩`, so that `F = ½ Σ F_ij ω^i∧ω^j`.
pub fn bilinear_two_form(psi1: &Spinor, psi2: &Spinor, r: Signature) -> TwoForm {
    let gs = GammaSet::new(r);
    let comp = |i: usize, j: usize| {
        let comm = gs.g[i] * gs.g[j] - gs.g[j] * gs.g[i];
        I * bilinear(psi1, &(comm * psi2), r)
    };
    TwoForm::from_components(comp(0, 1), comp(0, 2), comp(1, 2))
}

/// The same two-form through `[γ_i, γ_j] = -2(-i)^r ε_ij^k γ_k`:
/// `F_ij = 2(-i)^(r+1) ε_ij^k ⟨ψ1, γ_k ψ2⟩`.
pub fn bilinear_two_form_reduced(psi1: &Spinor, psi2: &Spinor, r: Signature) -> TwoForm {
    let gs = GammaSet::new(r);
    let pref = r.neg_i_pow() * (-I) * 2.0;
    let comp = |i: usize, j: usize| {
        (0..3)
            .map(|k| pref * levi_civita_mixed(r, i, j, k) * bilinear(psi1, &(gs.g[k] * psi2), r))
            .sum::<C64>()
    };
    TwoForm::from_components(comp(0, 1), comp(0, 2), comp(1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmax;

    fn s(a: (f64, f64), b: (f64, f64)) -> Spinor {
        spinor(C64::new(a.0, a.1), C64::new(b.0, b.1))
    }

    #[test]
    fn clifford_examples() {
        let e1 = FrameVector::new(1.0, 0.0, 0.0);
        let out = clifford(&e1, &s((1.0, 0.0), (0.0, 0.0)), Signature::Riemannian);
        assert_eq!(out, s((0.0, 0.0), (0.0, 1.0)));
        let out = clifford(&FrameVector::zeros(), &s((1.0, 2.0), (3.0, 0.0)), Signature::Lorentzian);
        assert_eq!(out, Spinor::zeros());
        let psi = s((1.0, 0.0), (1.0, 0.0));
        assert_eq!(clifford(&e1, &psi, Signature::Lorentzian), psi);
    }

    #[test]
    fn xi_squared() {
        let e1 = FrameVector::new(1.0, 0.0, 0.0);
        for r in Signature::BOTH {
            let psi = s((0.3, -1.0), (2.0, 0.5));
            let twice = clifford(&e1, &clifford(&e1, &psi, r), r);
            assert!(cmax((twice + psi * C64::from(r.sign())).iter()) < 1e-15);
        }
    }

    #[test]
    fn bilinear_examples() {
        assert_eq!(bilinear(&s((1.0, 0.0), (0.0, 0.0)), &s((1.0, 0.0), (0.0, 0.0)), Signature::Riemannian), ONE);
        let psi = s((1.0, 0.0), (1.0, 0.0));
        assert_eq!(bilinear(&psi, &psi, Signature::Lorentzian), C64::from(2.0));
        let null = s((1.0, 0.0), (0.0, 0.0));
        assert_eq!(bilinear(&null, &null, Signature::Lorentzian), ZERO);
    }

    #[test]
    fn current_examples() {
        let j = dirac_current(&s((1.0, 0.0), (0.0, 0.0)), Signature::Riemannian);
        assert_eq!(j, FrameVector::new(0.0, 0.0, -1.0));
        let psi = s((1.0, 0.0), (1.0, 0.0));
        let j = dirac_current(&psi, Signature::Lorentzian);
        assert_eq!(j, FrameVector::new(-2.0, 0.0, 0.0));
        let gjj = (j.transpose() * Signature::Lorentzian.eta() * j)[(0, 0)];
        assert_eq!(gjj, -4.0);
        assert_eq!(dirac_current(&Spinor::zeros(), Signature::Lorentzian), FrameVector::zeros());
    }

    #[test]
    fn two_form_examples() {
        let z = Spinor::zeros();
        assert_eq!(bilinear_two_form(&z, &z, Signature::Riemannian), TwoForm::zero());
        // ψ = (1,0), r = 0: ⟨ψ,γ_k ψ⟩ vanishes except k = 3, so only F_12 survives
        let psi = s((1.0, 0.0), (0.0, 0.0));
        let f = bilinear_two_form(&psi, &psi, Signature::Riemannian);
        assert!(f.get(0, 1).norm() > 0.5);
        assert!(f.get(0, 2).norm() < 1e-15 && f.get(1, 2).norm() < 1e-15);
    }
}
