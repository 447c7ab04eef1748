use nalgebra::Vector3;

use super::{levi_civita_mixed, FrameTensor2, FrameVector, SpaceForm};

/// Lie brackets of the Sasakian frame: `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Brackets {
    pub c: [[FrameVector; 3]; 3],
}

impl Brackets {
    pub fn get(&self, i: usize, j: usize) -> FrameVector {
        self.c[i][j]
    }
}

/// `[e1,e2] = -k e3`, `[e1,e3] = k e2`, `[e2,e3] = -2 e1` with `k = (H + 3(-1)^r)/2`.
pub fn structure_constants(sf: &SpaceForm) -> Brackets {
    let k = (sf.h + 3.0 * sf.sign()) / 2.0;
    let z = Vector3::zeros();
    let mut c = [[z; 3]; 3];
    c[0][1] = Vector3::new(0.0, 0.0, -k);
    c[0][2] = Vector3::new(0.0, k, 0.0);
    c[1][2] = Vector3::new(-2.0, 0.0, 0.0);
    for i in 0..3 {
        for j in 0..i {
            c[i][j] = -c[j][i];
        }
    }
    Brackets { c }
}

/// `(c1, c2, c3)` with `∇_{e_i} e_j = -Σ_k c_i ε_ij^k e_k`.
pub fn connection_coeffs(sf: &SpaceForm) -> [f64; 3] {
    let s = sf.sign();
    [(sf.h + s) / 2.0, s, s]
}

/// `∇_{e_i} e_j` in frame components, indexed `[i][j]`.
pub fn frame_connection(sf: &SpaceForm) -> [[FrameVector; 3]; 3] {
    let c = connection_coeffs(sf);
    let mut out = [[Vector3::zeros(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j][k] = -c[i] * levi_civita_mixed(sf.r, i, j, k);
            }
        }
    }
    out
}

/// `Ric = (H + (-1)^r) g + (1 - (-1)^r H) η⊗η`.
pub fn ricci(sf: &SpaceForm) -> FrameTensor2 {
    let s = sf.sign();
    FrameTensor2::metric_combination(sf.r, sf.h + s, 1.0 - s * sf.h)
}

/// `S = 2H + 4(-1)^r`.
pub fn scalar_curvature(sf: &SpaceForm) -> f64 {
    ricci(sf).trace(sf.r)
}
