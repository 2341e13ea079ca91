//! Serialized report types. Every numeric result carries its unit, every
//! record carries the units-mode flag, and serialization is byte
//! deterministic for a given configuration and seed (struct order is fixed,
//! floats use the shortest round-trip decimal form).

use aifsim_core::estimation::CycleRecord;
use aifsim_core::model::UnitsMode;
use aifsim_core::phase::PhaseBreakdown;
use serde::Serialize;

use crate::config::RawConfig;

/// A number together with its unit string.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Qty {
    pub value: f64,
    pub unit: &'static str,
}

impl Qty {
    pub fn rad(value: f64) -> Self {
        Qty { value, unit: "rad" }
    }

    pub fn seconds(value: f64) -> Self {
        Qty { value, unit: "s" }
    }

    pub fn meters(value: f64) -> Self {
        Qty { value, unit: "m" }
    }

    pub fn mps(value: f64) -> Self {
        Qty { value, unit: "m/s" }
    }

    pub fn dimensionless(value: f64) -> Self {
        Qty { value, unit: "1" }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub units_mode: UnitsMode,
    /// Effective configuration with every default spelled out.
    pub config: RawConfig,
    pub result: ReportBody,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ReportBody {
    Phase(PhaseReport),
    FrameCheck(FrameCheckReport),
    OracleCheck(OracleCheckReport),
    Sensitivity(SensitivityReport),
    MonteCarlo(MonteCarloReport),
    Sweep(SweepReport),
}

#[derive(Debug, Clone, Serialize)]
pub struct SegmentReport {
    pub index: usize,
    pub lambda: i8,
    pub dtau: Qty,
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseComponents {
    pub units_mode: UnitsMode,
    pub ref_phase: Qty,
    pub clock_phase: Qty,
    pub total: Qty,
    pub segments: Vec<SegmentReport>,
}

impl PhaseComponents {
    pub fn from_breakdown(pb: &PhaseBreakdown, units_mode: UnitsMode) -> Self {
        PhaseComponents {
            units_mode,
            ref_phase: Qty::rad(pb.ref_phase),
            clock_phase: Qty::rad(pb.clock_phase),
            total: Qty::rad(pb.total),
            segments: pb
                .segments
                .iter()
                .map(|s| SegmentReport {
                    index: s.index,
                    lambda: s.lambda.lambda() as i8,
                    dtau: Qty::seconds(s.dtau),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseReport {
    #[serde(flatten)]
    pub components: PhaseComponents,
    pub closure_dz: Qty,
    pub closure_dv: Qty,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameCheckReport {
    pub units_mode: UnitsMode,
    pub lab: PhaseComponents,
    pub falling: PhaseComponents,
    pub residual_ref: Qty,
    pub residual_clock: Qty,
    pub residual_total: Qty,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleRow {
    pub units_mode: UnitsMode,
    pub dm_over_m: Qty,
    pub direct: Qty,
    pub perturbative: Qty,
    pub residual: Qty,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleCheckReport {
    pub units_mode: UnitsMode,
    pub rows: Vec<OracleRow>,
    /// Log-log slope of |direct - perturbative| against dm.
    pub fitted_slope: Qty,
    /// |direct - reference phase| at dm = 0.
    pub zero_defect_residual: Qty,
}

#[derive(Debug, Clone, Serialize)]
pub struct SensitivityRow {
    pub units_mode: UnitsMode,
    pub t_avg: Qty,
    pub sigma_alpha: Qty,
    pub sigma_dbeta: Qty,
}

#[derive(Debug, Clone, Serialize)]
pub struct SensitivityReport {
    pub units_mode: UnitsMode,
    pub rows: Vec<SensitivityRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloReport {
    pub units_mode: UnitsMode,
    pub cycles: u64,
    pub atoms_per_shot: Qty,
    pub alpha: Qty,
    pub alpha_sigma: Qty,
    pub dbeta: Qty,
    pub dbeta_sigma: Qty,
    pub condition_number: Qty,
    pub records: Vec<CycleRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub records_csv: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub units_mode: UnitsMode,
    pub parameter: String,
    pub value: Qty,
    pub clock_phase: Qty,
    pub ref_phase: Qty,
    pub differential: Qty,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub units_mode: UnitsMode,
    pub parameter: String,
    pub rows: Vec<SweepRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<String>,
}
