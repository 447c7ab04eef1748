//! Energy conditions of the Lorentzian ED solutions.
//!
//! With `T^spin = (1 + Λ) g + (1 + H) η⊗η` and `X = t e1 + x e2 + y e3`,
//! `T(X, X) = (H − Λ) t² + (1 + Λ)(x² + y²)`. Each condition is a pair of
//! linear inequalities in `ρ² = x² + y²` over the relevant causal class.

#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;

use alloc::vec::Vec;
use core::fmt;

use crate::geometry::{FrameTensor2, FrameVector, Signature};
use crate::sampling::Sampler;
use crate::tolerances::ENERGY_MARGIN;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnergyCondition {
    Nec,
    Wec,
    Dec,
    Sec,
}

impl EnergyCondition {
    pub const ALL: [EnergyCondition; 4] = [EnergyCondition::Nec, EnergyCondition::Wec, EnergyCondition::Dec, EnergyCondition::Sec];

    pub fn label(self) -> &'static str {
        match self {
            EnergyCondition::Nec => "NEC",
            EnergyCondition::Wec => "WEC",
            EnergyCondition::Dec => "DEC",
            EnergyCondition::Sec => "SEC",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for EnergyCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionResult {
    pub holds: bool,
    /// Worst value of the defining inequality over its causal class.
    pub margin: f64,
    /// A vector of the class attaining `margin`.
    pub witness: FrameVector,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyConditionReport {
    pub h: f64,
    pub cosmological: f64,
    pub results: [ConditionResult; 4],
}

impl EnergyConditionReport {
    pub fn get(&self, c: EnergyCondition) -> &ConditionResult {
        &self.results[c.index()]
    }
}

/// `(1 + Λ) g + (1 + H) η⊗η` on the Lorentzian frame.
pub fn spin_stress_closed(h: f64, cosmological: f64) -> FrameTensor2 {
    FrameTensor2::metric_combination(Signature::Lorentzian, 1.0 + cosmological, 1.0 + h)
}

/// Almost-null timelike direction used as a boundary witness.
const EDGE: f64 = 1.0 - 1e-12;

fn pair_condition(a: f64, b: f64) -> ConditionResult {
    // a t² + b ρ² over 0 ≤ ρ < t: extremes at ρ = 0 and ρ → t
    if a <= a + b {
        ConditionResult { holds: a >= -ENERGY_MARGIN && a + b >= -ENERGY_MARGIN, margin: a, witness: FrameVector::new(1.0, 0.0, 0.0) }
    } else {
        ConditionResult { holds: a >= -ENERGY_MARGIN && a + b >= -ENERGY_MARGIN, margin: a + b, witness: FrameVector::new(1.0, EDGE, 0.0) }
    }
}

/// Closed-form NEC/WEC/DEC/SEC for the Lorentzian ED stress with `(H, Λ)`.
/// DEC holds at `H − Λ = |1 + Λ|` but needs `H − Λ > 0`.
pub fn energy_conditions(h: f64, cosmological: f64) -> EnergyConditionReport {
    let a = h - cosmological;
    let b = 1.0 + cosmological;
    let nec = ConditionResult { holds: a + b >= -ENERGY_MARGIN, margin: a + b, witness: FrameVector::new(1.0, 1.0, 0.0) };
    let wec = pair_condition(a, b);
    let dec_margin = (a - b.abs()).min(a);
    let dec = ConditionResult {
        holds: a - b.abs() >= -ENERGY_MARGIN && a > ENERGY_MARGIN,
        margin: dec_margin,
        witness: if a <= a - b.abs() { FrameVector::new(1.0, 0.0, 0.0) } else { FrameVector::new(1.0, 1.0, 0.0) },
    };
    let sec = pair_condition(2.0 * b, h - 1.0 - 2.0 * cosmological);
    EnergyConditionReport { h, cosmological, results: [nec, wec, dec, sec] }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleCheck {
    pub samples: usize,
    /// Samples contradicting a closed-form verdict, plus failing verdicts whose
    /// witness does not violate the condition on the tensor.
    pub contradictions: usize,
}

fn quad(t: &FrameTensor2, x: &FrameVector) -> f64 {
    t.apply(x, x)
}

/// Evaluates one condition on the actual tensor; `true` when it is satisfied at `x`.
fn satisfied_at(t: &FrameTensor2, c: EnergyCondition, x: &FrameVector) -> bool {
    let r = Signature::Lorentzian;
    match c {
        EnergyCondition::Nec | EnergyCondition::Wec => quad(t, x) >= -ENERGY_MARGIN,
        EnergyCondition::Sec => {
            let tr = t.trace(r);
            let gxx = -x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            quad(t, x) - tr * gxx >= -ENERGY_MARGIN
        }
        EnergyCondition::Dec => {
            // v^i = -η^ii T_ij X^j
            let tx = t.t * x;
            let v = FrameVector::new(tx[0], -tx[1], -tx[2]);
            let gvv = -v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
            gvv <= ENERGY_MARGIN && v[0] > ENERGY_MARGIN
        }
    }
}

/// Samples `n` causal vectors `X = (1, v cos θ, v sin θ)` per condition (null
/// for NEC, `v ∈ [0, 1)` otherwise) and counts disagreements with `report`.
pub fn sample_energy_conditions(t: &FrameTensor2, report: &EnergyConditionReport, n: usize, seed: u64) -> Result<SampleCheck> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one sample"));
    }
    let mut rng = Sampler::new(seed);
    let mut contradictions = 0;
    for c in EnergyCondition::ALL {
        let verdict = report.get(c);
        for k in 0..n {
            let theta = rng.uniform(0.0, core::f64::consts::TAU);
            let v = match (c, k) {
                (EnergyCondition::Nec, _) => 1.0,
                (_, 0) => 0.0,
                (_, 1) => EDGE,
                _ => rng.uniform(0.0, 1.0),
            };
            let x = FrameVector::new(1.0, v * theta.cos(), v * theta.sin());
            if verdict.holds && !satisfied_at(t, c, &x) {
                contradictions += 1;
            }
        }
        if !verdict.holds && satisfied_at(t, c, &verdict.witness) {
            contradictions += 1;
        }
    }
    Ok(SampleCheck { samples: n * 4, contradictions })
}

/// The three Lorentzian ED solution types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdType {
    I,
    II,
    III,
}

impl EdType {
    pub const ALL: [EdType; 3] = [EdType::I, EdType::II, EdType::III];

    pub fn label(self) -> &'static str {
        match self {
            EdType::I => "(i)",
            EdType::II => "(ii)",
            EdType::III => "(iii)",
        }
    }

    /// `Λ` of the type at `H` (Lorentzian); `None` where the type does not exist.
    pub fn cosmological(self, h: f64) -> Option<f64> {
        match self {
            EdType::I => Some(1.0),
            EdType::II => (h < 3.0).then(|| h - 2.0 - (3.0 - h).sqrt()),
            EdType::III => (h < 3.0).then(|| h - 2.0 + (3.0 - h).sqrt()),
        }
    }

    /// Expected satisfaction window `[lo, hi)` per condition.
    pub fn expected_window(self, c: EnergyCondition) -> Option<(f64, f64)> {
        use EnergyCondition::*;
        let inf = f64::INFINITY;
        match (self, c) {
            (EdType::I, Nec) | (EdType::I, Sec) => Some((-1.0, inf)),
            (EdType::I, Wec) => Some((1.0, inf)),
            (EdType::I, Dec) => Some((3.0, inf)),
            (EdType::II, Sec) => Some((2.0, 3.0)),
            (EdType::III, Dec) => None,
            _ => Some((-1.0, 3.0)),
        }
    }
}

impl fmt::Display for EdType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table3Row {
    pub ty: EdType,
    /// Per condition: grid brackets `(H_k, H_k+1)` where the verdict flips
    /// (an absent type counts as unsatisfied).
    pub brackets: [Vec<(f64, f64)>; 4],
    pub satisfied_anywhere: [bool; 4],
    pub matches_expected: [bool; 4],
    pub samples: usize,
    pub contradictions: usize,
}

impl Table3Row {
    /// Distinct boundary values implied by the brackets (bracket ends rounded to the grid).
    pub fn boundaries(&self) -> Vec<(f64, f64)> {
        let mut all: Vec<(f64, f64)> = self.brackets.iter().flatten().copied().collect();
        all.sort_by(|a, b| a.0.total_cmp(&b.0));
        all.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-9);
        all
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table3 {
    pub grid: Vec<f64>,
    pub rows: Vec<Table3Row>,
}

fn window_matches(window: Option<(f64, f64)>, brackets: &[(f64, f64)], lo_grid: f64, hi_grid: f64, step: f64) -> bool {
    let near = |b: f64| brackets.iter().any(|(lo, hi)| b >= lo - step * 1e-6 && b <= hi + step * 1e-6);
    let expected: Vec<f64> = match window {
        None => Vec::new(),
        Some((lo, hi)) => [lo, hi].into_iter().filter(|b| b.is_finite() && *b > lo_grid && *b < hi_grid).collect(),
    };
    expected.iter().all(|&b| near(b))
        && brackets.iter().all(|(lo, hi)| expected.iter().any(|&b| b >= lo - step * 1e-6 && b <= hi + step * 1e-6))
}

/// Scans `H` over `grid` for the three types; `samples` causal vectors per
/// cell are checked against the closed-form stress.
pub fn table3_scan(grid: &[f64], samples: usize, seed: u64) -> Result<Table3> {
    if grid.len() < 2 {
        return Err(Error::InvalidArgument("grid needs at least two values"));
    }
    let step = grid.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    let (lo_grid, hi_grid) = (grid[0], grid[grid.len() - 1]);
    let mut rows = Vec::new();
    for (ti, ty) in EdType::ALL.into_iter().enumerate() {
        let mut brackets: [Vec<(f64, f64)>; 4] = Default::default();
        let mut anywhere = [false; 4];
        let mut prev: Option<(f64, [bool; 4])> = None;
        let mut total = 0;
        let mut contradictions = 0;
        for (k, &h) in grid.iter().enumerate() {
            let verdicts = match ty.cosmological(h) {
                Some(l) => {
                    let rep = energy_conditions(h, l);
                    let check = sample_energy_conditions(&spin_stress_closed(h, l), &rep, samples, seed ^ ((ti as u64) << 32 | k as u64))?;
                    total += check.samples;
                    contradictions += check.contradictions;
                    EnergyCondition::ALL.map(|c| rep.get(c).holds)
                }
                None => [false; 4],
            };
            for i in 0..4 {
                anywhere[i] |= verdicts[i];
                if let Some((ph, pv)) = prev {
                    if pv[i] != verdicts[i] {
                        brackets[i].push((ph, h));
                    }
                }
            }
            prev = Some((h, verdicts));
        }
        let matches = EnergyCondition::ALL.map(|c| window_matches(ty.expected_window(c), &brackets[c.index()], lo_grid, hi_grid, step) && (ty.expected_window(c).is_some() == anywhere[c.index()]));
        rows.push(Table3Row { ty, brackets, satisfied_anywhere: anywhere, matches_expected: matches, samples: total, contradictions });
    }
    Ok(Table3 { grid: grid.to_vec(), rows })
}
