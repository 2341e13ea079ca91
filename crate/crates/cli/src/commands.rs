//! The six report-producing subcommands.

use std::path::Path;

use aifsim_core::estimation::{
    differential_parts, monte_carlo_campaign, sensitivity_budget, violated_phase,
};
use aifsim_core::frames::total_phase_falling_frame;
use aifsim_core::kinematics::{closure_defect, propagate_with_state_gravity};
use aifsim_core::model::{build_redshift_geometry, InternalState, Species, UnitsMode};
use aifsim_core::phase::{total_phase_direct, total_phase_perturbative};
use serde::Serialize;

use crate::config::{ResolvedGeometry, RunConfig, SCHEMA_VERSION};
use crate::error::CliError;
use crate::report::*;

/// Report-producing subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Phase,
    FrameCheck,
    OracleCheck,
    Sensitivity,
    MonteCarlo,
    Sweep,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Phase => "phase",
            Command::FrameCheck => "frame-check",
            Command::OracleCheck => "oracle-check",
            Command::Sensitivity => "sensitivity",
            Command::MonteCarlo => "montecarlo",
            Command::Sweep => "sweep",
        }
    }
}

impl std::str::FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "phase" => Ok(Command::Phase),
            "frame-check" => Ok(Command::FrameCheck),
            "oracle-check" => Ok(Command::OracleCheck),
            "sensitivity" => Ok(Command::Sensitivity),
            "montecarlo" => Ok(Command::MonteCarlo),
            "sweep" => Ok(Command::Sweep),
            other => Err(CliError::usage(format!(
                "unknown subcommand `{other}` (expected phase, frame-check, oracle-check, \
                 sensitivity, montecarlo or sweep)"
            ))),
        }
    }
}

/// Run one subcommand against a resolved configuration. CSV artifacts are
/// written into `out_dir` when one is given.
pub fn run_subcommand(
    command: Command,
    config: &RunConfig,
    out_dir: Option<&Path>,
) -> Result<Report, CliError> {
    let (units_mode, body) = match command {
        Command::Phase => (config.constants.units_mode, phase_report(config)?),
        Command::FrameCheck => (config.constants.units_mode, frame_check_report(config)?),
        Command::OracleCheck => (UnitsMode::Scaled, oracle_check_report(config)?),
        Command::Sensitivity => (
            config.constants.units_mode,
            sensitivity_report(config, out_dir)?,
        ),
        Command::MonteCarlo => (
            config.constants.units_mode,
            monte_carlo_report(config, out_dir)?,
        ),
        Command::Sweep => (config.constants.units_mode, sweep_report(config, out_dir)?),
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        command: command.name().to_string(),
        units_mode,
        config: config.normalized(),
        result: body,
    })
}

fn phase_report(config: &RunConfig) -> Result<ReportBody, CliError> {
    let seq = config.geometry.sequence()?;
    let pb = violated_phase(&seq, &config.species, &config.constants, &config.violation)
        .map_err(CliError::physics)?;
    let g_of = |state: InternalState| config.violation.gravity_of(state, &config.constants);
    let (upper, lower) =
        propagate_with_state_gravity(&seq, &config.species, &config.constants, &g_of)
            .map_err(CliError::physics)?;
    let (dz, dv) = closure_defect(&upper, &lower).map_err(CliError::physics)?;
    Ok(ReportBody::Phase(PhaseReport {
        components: PhaseComponents::from_breakdown(&pb, config.constants.units_mode),
        closure_dz: Qty::meters(dz),
        closure_dv: Qty::mps(dv),
    }))
}

fn frame_check_report(config: &RunConfig) -> Result<ReportBody, CliError> {
    let seq = config.geometry.sequence()?;
    let lab = total_phase_perturbative(&seq, &config.species, &config.constants)
        .map_err(CliError::physics)?;
    let fall = total_phase_falling_frame(&seq, &config.species, &config.constants)
        .map_err(CliError::physics)?;
    let mode = config.constants.units_mode;
    Ok(ReportBody::FrameCheck(FrameCheckReport {
        units_mode: mode,
        residual_ref: Qty::rad(fall.ref_phase - lab.ref_phase),
        residual_clock: Qty::rad(fall.clock_phase - lab.clock_phase),
        residual_total: Qty::rad(fall.total - lab.total),
        lab: PhaseComponents::from_breakdown(&lab, mode),
        falling: PhaseComponents::from_breakdown(&fall, mode),
    }))
}

fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn oracle_check_report(config: &RunConfig) -> Result<ReportBody, CliError> {
    let o = &config.oracle;
    let seq =
        build_redshift_geometry(o.t1, o.t, o.k, false).map_err(|e| CliError::range("oracle", e))?;
    let species_for = |ratio: f64| -> Result<Species, CliError> {
        let omega = ratio * o.mass * o.constants.c2() / o.constants.hbar;
        Species::new(o.mass, omega, &o.constants).map_err(|e| CliError::range("oracle", e))
    };

    let mut rows = Vec::new();
    let mut ln_dm = Vec::new();
    let mut ln_res = Vec::new();
    for &ratio in &o.dm_over_m {
        let species = species_for(ratio)?;
        let direct = total_phase_direct(&seq, &species, &o.constants).map_err(CliError::physics)?;
        let pert = total_phase_perturbative(&seq, &species, &o.constants)
            .map_err(CliError::physics)?
            .total;
        let residual = (direct - pert).abs();
        if residual > 0.0 {
            ln_dm.push(ratio.ln());
            ln_res.push(residual.ln());
        }
        rows.push(OracleRow {
            units_mode: UnitsMode::Scaled,
            dm_over_m: Qty::dimensionless(ratio),
            direct: Qty::rad(direct),
            perturbative: Qty::rad(pert),
            residual: Qty::rad(residual),
        });
    }
    if ln_dm.len() < 2 {
        return Err(CliError::usage(
            "mass-defect residuals vanished; cannot fit a scaling slope",
        ));
    }
    let slope = fit_slope(&ln_dm, &ln_res);

    let degenerate = species_for(0.0)?;
    let direct0 = total_phase_direct(&seq, &degenerate, &o.constants).map_err(CliError::physics)?;
    let ref0 = total_phase_perturbative(&seq, &degenerate, &o.constants)
        .map_err(CliError::physics)?
        .ref_phase;

    Ok(ReportBody::OracleCheck(OracleCheckReport {
        units_mode: UnitsMode::Scaled,
        rows,
        fitted_slope: Qty::dimensionless(slope),
        zero_defect_residual: Qty::rad((direct0 - ref0).abs()),
    }))
}

#[derive(Serialize)]
struct SensitivityCsvRow<'a> {
    units_mode: &'a str,
    t_avg_s: f64,
    sigma_alpha: f64,
    sigma_dbeta: f64,
}

fn sensitivity_report(config: &RunConfig, out_dir: Option<&Path>) -> Result<ReportBody, CliError> {
    let (t1, _, k, _) = config.geometry.parametric()?;
    let grid = &config.sensitivity;
    let mode = config.constants.units_mode;
    let mut rows = Vec::with_capacity(grid.points);
    let ln_min = grid.t_avg_min.ln();
    let ln_max = grid.t_avg_max.ln();
    for i in 0..grid.points {
        let frac = i as f64 / (grid.points - 1) as f64;
        let t_avg = (ln_min + frac * (ln_max - ln_min)).exp();
        let (sa, sb) = sensitivity_budget(
            &config.noise,
            t1,
            k,
            &config.campaign.t_values,
            &config.species,
            &config.constants,
            t_avg,
        )
        .map_err(CliError::physics)?;
        rows.push(SensitivityRow {
            units_mode: mode,
            t_avg: Qty::seconds(t_avg),
            sigma_alpha: Qty::dimensionless(sa),
            sigma_dbeta: Qty::dimensionless(sb),
        });
    }

    if let Some(dir) = out_dir {
        let path = dir.join("sensitivity.csv");
        let mut w = csv::Writer::from_path(&path)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
        let mode_str = mode_str(mode);
        for r in &rows {
            w.serialize(SensitivityCsvRow {
                units_mode: mode_str,
                t_avg_s: r.t_avg.value,
                sigma_alpha: r.sigma_alpha.value,
                sigma_dbeta: r.sigma_dbeta.value,
            })
            .map_err(|e| CliError::usage(format!("csv write failed: {e}")))?;
        }
        w.flush().map_err(|e| CliError::io("flushing csv", e))?;
    }

    Ok(ReportBody::Sensitivity(SensitivityReport {
        units_mode: mode,
        rows,
    }))
}

fn mode_str(mode: UnitsMode) -> &'static str {
    match mode {
        UnitsMode::Physical => "physical",
        UnitsMode::Scaled => "scaled",
    }
}

#[derive(Serialize)]
struct RecordCsvRow<'a> {
    units_mode: &'a str,
    index: u64,
    cycle: u64,
    inverted: bool,
    t_s: f64,
    phase_rad: f64,
    shot_noise_rad: f64,
    vibration_noise_rad: f64,
}

fn monte_carlo_report(config: &RunConfig, out_dir: Option<&Path>) -> Result<ReportBody, CliError> {
    let (t1, _, k, _) = config.geometry.parametric()?;
    let outcome = monte_carlo_campaign(
        &config.noise,
        t1,
        k,
        &config.species,
        &config.constants,
        &config.violation,
        &config.campaign,
    )
    .map_err(CliError::physics)?;

    let mode = config.constants.units_mode;
    let mut records_csv = None;
    if let Some(dir) = out_dir {
        let path = dir.join("records.csv");
        let mut w = csv::Writer::from_path(&path)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
        for r in &outcome.records {
            w.serialize(RecordCsvRow {
                units_mode: mode_str(mode),
                index: r.index,
                cycle: r.cycle,
                inverted: r.inverted,
                t_s: r.t,
                phase_rad: r.phase,
                shot_noise_rad: r.shot_noise,
                vibration_noise_rad: r.vibration_noise,
            })
            .map_err(|e| CliError::usage(format!("csv write failed: {e}")))?;
        }
        w.flush().map_err(|e| CliError::io("flushing csv", e))?;
        records_csv = Some(path.display().to_string());
    }

    Ok(ReportBody::MonteCarlo(MonteCarloReport {
        units_mode: mode,
        cycles: outcome.cycles,
        atoms_per_shot: Qty::dimensionless(outcome.atoms_per_shot),
        alpha: Qty::dimensionless(outcome.alpha),
        alpha_sigma: Qty::dimensionless(outcome.alpha_sigma),
        dbeta: Qty::dimensionless(outcome.dbeta),
        dbeta_sigma: Qty::dimensionless(outcome.dbeta_sigma),
        condition_number: Qty::dimensionless(outcome.condition_number),
        records: outcome.records,
        records_csv,
    }))
}

#[derive(Serialize)]
struct SweepCsvRow<'a> {
    units_mode: &'a str,
    parameter: &'a str,
    value: f64,
    clock_phase_rad: f64,
    ref_phase_rad: f64,
    differential_rad: f64,
}

fn sweep_report(config: &RunConfig, out_dir: Option<&Path>) -> Result<ReportBody, CliError> {
    let (t1, t, k, _) = config.geometry.parametric()?;
    if matches!(config.geometry, ResolvedGeometry::Explicit(_)) {
        unreachable!("parametric() already rejected explicit geometries");
    }
    let mode = config.constants.units_mode;
    let mut rows = Vec::with_capacity(config.sweep.values.len());
    for &value in &config.sweep.values {
        let (t1v, tv, kv) = match config.sweep.parameter.as_str() {
            "t" => (t1, value, k),
            "t1" => (value, t, k),
            "k" => (t1, t, value),
            _ => unreachable!("validated at parse time"),
        };
        let normal = violated_phase(
            &build_redshift_geometry(t1v, tv, kv, false)
                .map_err(|e| CliError::range("sweep", e))?,
            &config.species,
            &config.constants,
            &config.violation,
        )
        .map_err(CliError::physics)?;
        let inverted = violated_phase(
            &build_redshift_geometry(t1v, tv, kv, true).map_err(|e| CliError::range("sweep", e))?,
            &config.species,
            &config.constants,
            &config.violation,
        )
        .map_err(CliError::physics)?;
        let parts = differential_parts(&normal, &inverted).map_err(CliError::physics)?;
        rows.push(SweepRow {
            units_mode: mode,
            parameter: config.sweep.parameter.clone(),
            value: Qty {
                value,
                unit: if config.sweep.parameter == "k" {
                    "1/m"
                } else {
                    "s"
                },
            },
            clock_phase: Qty::rad(normal.clock_phase),
            ref_phase: Qty::rad(normal.ref_phase),
            differential: Qty::rad(parts.total),
        });
    }

    let mut csv_path = None;
    if let Some(dir) = out_dir {
        let path = dir.join("sweep.csv");
        let mut w = csv::Writer::from_path(&path)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
        for r in &rows {
            w.serialize(SweepCsvRow {
                units_mode: mode_str(mode),
                parameter: &r.parameter,
                value: r.value.value,
                clock_phase_rad: r.clock_phase.value,
                ref_phase_rad: r.ref_phase.value,
                differential_rad: r.differential.value,
            })
            .map_err(|e| CliError::usage(format!("csv write failed: {e}")))?;
        }
        w.flush().map_err(|e| CliError::io("flushing csv", e))?;
        csv_path = Some(path.display().to_string());
    }

    Ok(ReportBody::Sweep(SweepReport {
        units_mode: mode,
        parameter: config.sweep.parameter.clone(),
        rows,
        csv: csv_path,
    }))
}
