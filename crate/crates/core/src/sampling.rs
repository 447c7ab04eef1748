//! Seeded, reproducible sampling of chart points and spinor constants.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{ChartPoint, Signature};
use crate::C64;

pub const DEFAULT_SEED: u64 = 42;

/// Sampling window for `x1`; keeps clear of the cot/coth blow-up.
pub fn x1_range(r: Signature) -> (f64, f64) {
    match r {
        Signature::Riemannian => (0.2, PI - 0.2),
        Signature::Lorentzian => (0.2, 5.0),
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn point(&mut self, r: Signature) -> ChartPoint {
        let (lo, hi) = x1_range(r);
        ChartPoint::new(
            self.rng.random_range(lo..hi),
            self.rng.random_range(0.0..TAU),
            self.rng.random_range(0.0..TAU),
        )
    }

    pub fn points(&mut self, r: Signature, n: usize) -> Vec<ChartPoint> {
        (0..n).map(|_| self.point(r)).collect()
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// Complex number with components uniform in `[-1, 1)`.
    pub fn complex(&mut self) -> C64 {
        C64::new(self.rng.random_range(-1.0..1.0), self.rng.random_range(-1.0..1.0))
    }

    pub fn complex_pair(&mut self) -> [C64; 2] {
        [self.complex(), self.complex()]
    }
}

/// Deterministic point list for a seed.
pub fn seeded_points(r: Signature, n: usize, seed: u64) -> Vec<ChartPoint> {
    Sampler::new(seed).points(r, n)
}
