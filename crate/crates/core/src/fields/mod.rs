//! Field equations sourced by SqK spinors: stress tensors, Dirac, Maxwell and
//! Einstein residuals, ED and EDM solutions, and energy conditions.

mod energy;
mod maxwell;
mod solutions;
mod stress;

use core::fmt;

use crate::geometry::FrameTensor2;

pub use energy::{
    energy_conditions, sample_energy_conditions, spin_stress_closed, table3_scan, ConditionResult,
    EdType, EnergyCondition, EnergyConditionReport, SampleCheck, Table3, Table3Row,
};
pub use maxwell::{
    df_coefficient, df_numeric, maxwell_residual, maxwell_source_case, measure_source_constant,
    pair_current_field, pair_two_form_field, table2_scan, CellPattern, MaxwellCase, SourceConstant,
    Table2, Table2Cell,
};
pub use solutions::{
    ed_solution, ed_target_norm, edm_classify, edm_parameters, edm_solution, EdSolution,
    EdmParameters, EdmSolution, SpaceType,
};
pub use stress::{
    dirac_apply, dirac_eigen_residual, einstein_residual, spin_c_derivative, t_em, t_spin,
    t_spin_closed_form,
};

/// U(1) gauge potential `i B η` with the particle charge (always 1 here).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeField {
    pub b: f64,
    pub charge: f64,
}

impl GaugeField {
    pub fn new(b: f64) -> Self {
        Self { b, charge: 1.0 }
    }

    pub fn vacuum() -> Self {
        Self::new(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StressKind {
    Spin,
    Em,
    Total,
}

impl fmt::Display for StressKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StressKind::Spin => "spin",
            StressKind::Em => "em",
            StressKind::Total => "total",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressTensor {
    pub tensor: FrameTensor2,
    pub kind: StressKind,
}

impl StressTensor {
    /// `T^spin + T^em`.
    pub fn total(spin: &StressTensor, em: &StressTensor) -> StressTensor {
        StressTensor {
            tensor: FrameTensor2::symmetric(spin.tensor.t + em.tensor.t),
            kind: StressKind::Total,
        }
    }
}
