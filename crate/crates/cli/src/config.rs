//! JSON run configuration: schema-checked parsing, defaults, and flat
//! dotted-path overrides.
//!
//! An empty document resolves to the reference setup: CODATA constants with
//! g = 9.81, 88Sr on the clock transition, the four-pulse geometry with
//! T1 = 0.25 s, T = 0.5 s and the eight-fold 813 nm momentum transfer, no
//! violation, and the reference noise model. Unknown keys are rejected with
//! the offending path. All quantities are SI.

use aifsim_core::estimation::{CampaignPlan, NoiseModel, ViolationParams};
use aifsim_core::model::{
    build_redshift_geometry, Constants, InitialState, InternalState, LaserPulse, PulseSequence,
    Species, UnitsMode, ATOMIC_MASS_KG, SR88_MASS_U, SR88_OMEGA, SR88_WAVE_NUMBER,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, ErrorKind};

pub const SCHEMA_VERSION: u32 = 1;

// ---------------------------------------------------------------------------
// raw (on-disk) layer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constants: Option<ConstantsConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub species: Option<SpeciesConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometryConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub campaign: Option<CampaignConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sensitivity: Option<SensitivityConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsConfig {
    /// Speed of light, m/s.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    /// Reduced Planck constant, J s.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hbar: Option<f64>,
    /// Gravitational acceleration, m/s^2.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    /// Marks non-physical constant values used for verification runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scaled_units: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesConfig {
    /// Reference mass, kg.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
    /// Internal transition angular frequency, rad/s.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    /// First/last segment duration, s (parametric form).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t1: Option<f64>,
    /// Central segment duration, s (parametric form).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    /// Effective wave number, 1/m (parametric form).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    /// Swap ground/excited roles.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverted: Option<bool>,
    /// Explicit pulse list (alternative to the parametric form).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pulses: Option<Vec<PulseConfig>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial: Option<InitialConfig>,
    /// End of the evaluated span, s (explicit form; defaults to the last pulse).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseConfig {
    pub t: f64,
    pub k_upper: f64,
    pub k_lower: f64,
    #[serde(default)]
    pub phi_upper: f64,
    #[serde(default)]
    pub phi_lower: f64,
    /// Internal state after the pulse: -1 ground, +1 excited.
    pub lambda_after: i8,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v0: Option<f64>,
    /// Initial internal state: -1 ground, +1 excited.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda0: Option<i8>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViolationConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_plus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_minus: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    /// Atom flux, atoms/s.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atom_flux: Option<f64>,
    /// Full measurement cycle duration, s.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle_time: Option<f64>,
    /// Per-shot acceleration-noise equivalent, m/s^2.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vibration_accel: Option<f64>,
    /// Shared-pulse continuous operation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interleaved: Option<bool>,
    /// Imperfect common-mode rejection fraction, 0..1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leakage: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    /// Central-segment durations alternated within each cycle, s.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_values: Option<Vec<f64>>,
    /// Total averaging time, s.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_avg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub include_shot: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub include_vibration: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensitivityConfig {
    /// Shortest averaging time of the grid, s.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_avg_min: Option<f64>,
    /// Longest averaging time of the grid, s.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_avg_max: Option<f64>,
    /// Number of logarithmically spaced grid points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    /// Scaled speed of light for the mass-defect scaling study.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hbar: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    /// Mass-defect ratios dm/m of the scaling grid.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dm_over_m: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Swept quantity: "t", "t1" or "k".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
}

// ---------------------------------------------------------------------------
// resolved layer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum ResolvedGeometry {
    Parametric {
        t1: f64,
        t: f64,
        k: f64,
        inverted: bool,
    },
    Explicit(PulseSequence),
}

impl ResolvedGeometry {
    pub fn sequence(&self) -> Result<PulseSequence, CliError> {
        match self {
            ResolvedGeometry::Parametric { t1, t, k, inverted } => {
                build_redshift_geometry(*t1, *t, *k, *inverted)
                    .map_err(|e| CliError::range("geometry", e))
            }
            ResolvedGeometry::Explicit(seq) => Ok(seq.clone()),
        }
    }

    /// (t1, k) of the parametric form; campaigns and sweeps need it.
    pub fn parametric(&self) -> Result<(f64, f64, f64, bool), CliError> {
        match self {
            ResolvedGeometry::Parametric { t1, t, k, inverted } => Ok((*t1, *t, *k, *inverted)),
            ResolvedGeometry::Explicit(_) => Err(CliError {
                kind: ErrorKind::Config,
                message: "this subcommand needs the parametric geometry form (t1/t/k)".into(),
                path: Some("geometry".into()),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityGrid {
    pub t_avg_min: f64,
    pub t_avg_max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSetup {
    pub constants: Constants,
    pub mass: f64,
    pub k: f64,
    pub t1: f64,
    pub t: f64,
    pub dm_over_m: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub parameter: String,
    pub values: Vec<f64>,
}

/// Fully validated configuration with every default filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub constants: Constants,
    pub species: Species,
    pub geometry: ResolvedGeometry,
    pub violation: ViolationParams,
    pub noise: NoiseModel,
    pub campaign: CampaignPlan,
    pub sensitivity: SensitivityGrid,
    pub oracle: OracleSetup,
    pub sweep: SweepPlan,
}

fn range_err(path: &str, e: aifsim_core::Error) -> CliError {
    CliError::range(path, e)
}

impl RunConfig {
    pub fn resolve(raw: &RawConfig) -> Result<Self, CliError> {
        if let Some(v) = raw.schema_version {
            if v != SCHEMA_VERSION {
                return Err(CliError {
                    kind: ErrorKind::Config,
                    message: format!("unsupported schema_version {v}, expected {SCHEMA_VERSION}"),
                    path: Some("schema_version".into()),
                });
            }
        }

        let kc = raw.constants.clone().unwrap_or_default();
        let scaled = kc.scaled_units.unwrap_or(false);
        let constants = Constants {
            c: kc.c.unwrap_or(aifsim_core::model::SPEED_OF_LIGHT),
            hbar: kc.hbar.unwrap_or(aifsim_core::model::HBAR),
            g: kc.g.unwrap_or(aifsim_core::model::STANDARD_GRAVITY),
            units_mode: if scaled {
                UnitsMode::Scaled
            } else {
                UnitsMode::Physical
            },
        };
        constants
            .validate()
            .map_err(|e| range_err("constants", e))?;

        let sc = raw.species.clone().unwrap_or_default();
        let species = Species::new(
            sc.mass.unwrap_or(SR88_MASS_U * ATOMIC_MASS_KG),
            sc.omega.unwrap_or(SR88_OMEGA),
            &constants,
        )
        .map_err(|e| range_err("species", e))?;

        let geometry = Self::resolve_geometry(raw.geometry.clone().unwrap_or_default())?;

        let vc = raw.violation.clone().unwrap_or_default();
        let violation = ViolationParams {
            beta_plus: vc.beta_plus.unwrap_or(0.0),
            beta_minus: vc.beta_minus.unwrap_or(0.0),
        };
        violation
            .validate()
            .map_err(|e| range_err("violation", e))?;

        let nc = raw.noise.clone().unwrap_or_default();
        let reference = NoiseModel::reference();
        let noise = NoiseModel {
            atom_flux: nc.atom_flux.unwrap_or(reference.atom_flux),
            cycle_time: nc.cycle_time.unwrap_or(reference.cycle_time),
            vibration_accel: nc.vibration_accel.unwrap_or(reference.vibration_accel),
            interleaved: nc.interleaved.unwrap_or(reference.interleaved),
            leakage: nc.leakage.unwrap_or(reference.leakage),
        };
        noise.validate().map_err(|e| range_err("noise", e))?;

        let cc = raw.campaign.clone().unwrap_or_default();
        let campaign = CampaignPlan {
            t_values: cc.t_values.unwrap_or_else(|| vec![0.4, 0.6]),
            t_avg: cc.t_avg.unwrap_or(6e4),
            seed: cc.seed.unwrap_or(42),
            include_shot: cc.include_shot.unwrap_or(true),
            include_vibration: cc.include_vibration.unwrap_or(true),
        };
        for (i, &t) in campaign.t_values.iter().enumerate() {
            if !t.is_finite() || t <= 0.0 {
                return Err(CliError {
                    kind: ErrorKind::Range,
                    message: format!("duration must be finite and > 0, got {t}"),
                    path: Some(format!("campaign.t_values[{i}]")),
                });
            }
        }
        if !campaign.t_avg.is_finite() || campaign.t_avg <= 0.0 {
            return Err(CliError {
                kind: ErrorKind::Range,
                message: "t_avg must be > 0".into(),
                path: Some("campaign.t_avg".into()),
            });
        }

        let gc = raw.sensitivity.clone().unwrap_or_default();
        let sensitivity = SensitivityGrid {
            t_avg_min: gc.t_avg_min.unwrap_or(1e2),
            t_avg_max: gc.t_avg_max.unwrap_or(6e4),
            points: gc.points.unwrap_or(13),
        };
        if !(sensitivity.t_avg_min > 0.0 && sensitivity.t_avg_max >= sensitivity.t_avg_min)
            || sensitivity.points < 2
        {
            return Err(CliError {
                kind: ErrorKind::Range,
                message: "need 0 < t_avg_min <= t_avg_max and at least two points".into(),
                path: Some("sensitivity".into()),
            });
        }

        let oc = raw.oracle.clone().unwrap_or_default();
        let oracle_constants = Constants::scaled(
            oc.c.unwrap_or(30.0),
            oc.hbar.unwrap_or(1.0),
            oc.g.unwrap_or(2.0),
        )
        .map_err(|e| range_err("oracle", e))?;
        let oracle = OracleSetup {
            constants: oracle_constants,
            mass: oc.mass.unwrap_or(1.0),
            k: oc.k.unwrap_or(2.0),
            t1: oc.t1.unwrap_or(0.8),
            t: oc.t.unwrap_or(1.0),
            dm_over_m: oc
                .dm_over_m
                .unwrap_or_else(|| vec![1e-3, 5e-4, 2.5e-4, 1.25e-4]),
        };
        if oracle.dm_over_m.len() < 2 {
            return Err(CliError {
                kind: ErrorKind::Range,
                message: "need at least two mass-defect ratios".into(),
                path: Some("oracle.dm_over_m".into()),
            });
        }
        for (i, &r) in oracle.dm_over_m.iter().enumerate() {
            if !(r > 0.0 && r < 1.0) {
                return Err(CliError {
                    kind: ErrorKind::Range,
                    message: format!("dm/m must lie in (0, 1), got {r}"),
                    path: Some(format!("oracle.dm_over_m[{i}]")),
                });
            }
        }

        let wc = raw.sweep.clone().unwrap_or_default();
        let sweep = SweepPlan {
            parameter: wc.parameter.unwrap_or_else(|| "t".into()),
            values: wc.values.unwrap_or_else(|| vec![0.4, 0.5, 0.6]),
        };
        if !["t", "t1", "k"].contains(&sweep.parameter.as_str()) {
            return Err(CliError {
                kind: ErrorKind::Range,
                message: format!(
                    "unknown sweep parameter `{}` (expected t, t1 or k)",
                    sweep.parameter
                ),
                path: Some("sweep.parameter".into()),
            });
        }
        if sweep.values.is_empty() {
            return Err(CliError {
                kind: ErrorKind::Range,
                message: "sweep needs at least one value".into(),
                path: Some("sweep.values".into()),
            });
        }

        Ok(RunConfig {
            constants,
            species,
            geometry,
            violation,
            noise,
            campaign,
            sensitivity,
            oracle,
            sweep,
        })
    }

    fn resolve_geometry(gc: GeometryConfig) -> Result<ResolvedGeometry, CliError> {
        if let Some(pulses) = gc.pulses {
            for field in [
                ("geometry.t1", gc.t1.is_some()),
                ("geometry.t", gc.t.is_some()),
                ("geometry.k", gc.k.is_some()),
                ("geometry.inverted", gc.inverted.is_some()),
            ] {
                if field.1 {
                    return Err(CliError {
                        kind: ErrorKind::Config,
                        message: "parametric fields conflict with an explicit pulse list".into(),
                        path: Some(field.0.into()),
                    });
                }
            }
            let state = |l: i8, path: &str| -> Result<InternalState, CliError> {
                match l {
                    -1 => Ok(InternalState::Ground),
                    1 => Ok(InternalState::Excited),
                    other => Err(CliError {
                        kind: ErrorKind::Range,
                        message: format!("internal state label must be -1 or +1, got {other}"),
                        path: Some(path.into()),
                    }),
                }
            };
            let ic = gc.initial.unwrap_or_default();
            let initial = InitialState {
                z0: ic.z0.unwrap_or(0.0),
                v0: ic.v0.unwrap_or(0.0),
                lambda0: state(ic.lambda0.unwrap_or(-1), "geometry.initial.lambda0")?,
            };
            let mut list = Vec::with_capacity(pulses.len());
            for (i, p) in pulses.iter().enumerate() {
                list.push(LaserPulse {
                    t: p.t,
                    k_upper: p.k_upper,
                    k_lower: p.k_lower,
                    phi_upper: p.phi_upper,
                    phi_lower: p.phi_lower,
                    lambda_after: state(
                        p.lambda_after,
                        &format!("geometry.pulses[{i}].lambda_after"),
                    )?,
                });
            }
            let t_end = gc.t_end.unwrap_or_else(|| list.last().map_or(0.0, |p| p.t));
            let seq = PulseSequence::new(initial, list, t_end)
                .map_err(|e| range_err("geometry.pulses", e))?;
            Ok(ResolvedGeometry::Explicit(seq))
        } else {
            let t1 = gc.t1.unwrap_or(0.25);
            let t = gc.t.unwrap_or(0.5);
            let k = gc.k.unwrap_or(SR88_WAVE_NUMBER);
            let inverted = gc.inverted.unwrap_or(false);
            // validate immediately so range errors surface at parse time
            build_redshift_geometry(t1, t, k, inverted).map_err(|e| range_err("geometry", e))?;
            Ok(ResolvedGeometry::Parametric { t1, t, k, inverted })
        }
    }

    /// The normalized form: every default spelled out, suitable for echoing
    /// into reports and for idempotent round-trips.
    pub fn normalized(&self) -> RawConfig {
        let geometry = match &self.geometry {
            ResolvedGeometry::Parametric { t1, t, k, inverted } => GeometryConfig {
                t1: Some(*t1),
                t: Some(*t),
                k: Some(*k),
                inverted: Some(*inverted),
                ..Default::default()
            },
            ResolvedGeometry::Explicit(seq) => GeometryConfig {
                pulses: Some(
                    seq.pulses
                        .iter()
                        .map(|p| PulseConfig {
                            t: p.t,
                            k_upper: p.k_upper,
                            k_lower: p.k_lower,
                            phi_upper: p.phi_upper,
                            phi_lower: p.phi_lower,
                            lambda_after: p.lambda_after.lambda() as i8,
                        })
                        .collect(),
                ),
                initial: Some(InitialConfig {
                    z0: Some(seq.initial.z0),
                    v0: Some(seq.initial.v0),
                    lambda0: Some(seq.initial.lambda0.lambda() as i8),
                }),
                t_end: Some(seq.t_end),
                ..Default::default()
            },
        };
        RawConfig {
            schema_version: Some(SCHEMA_VERSION),
            constants: Some(ConstantsConfig {
                c: Some(self.constants.c),
                hbar: Some(self.constants.hbar),
                g: Some(self.constants.g),
                scaled_units: Some(self.constants.units_mode == UnitsMode::Scaled),
            }),
            species: Some(SpeciesConfig {
                mass: Some(self.species.mass),
                omega: Some(self.species.omega),
            }),
            geometry: Some(geometry),
            violation: Some(ViolationConfig {
                beta_plus: Some(self.violation.beta_plus),
                beta_minus: Some(self.violation.beta_minus),
            }),
            noise: Some(NoiseConfig {
                atom_flux: Some(self.noise.atom_flux),
                cycle_time: Some(self.noise.cycle_time),
                vibration_accel: Some(self.noise.vibration_accel),
                interleaved: Some(self.noise.interleaved),
                leakage: Some(self.noise.leakage),
            }),
            campaign: Some(CampaignConfig {
                t_values: Some(self.campaign.t_values.clone()),
                t_avg: Some(self.campaign.t_avg),
                seed: Some(self.campaign.seed),
                include_shot: Some(self.campaign.include_shot),
                include_vibration: Some(self.campaign.include_vibration),
            }),
            sensitivity: Some(SensitivityConfig {
                t_avg_min: Some(self.sensitivity.t_avg_min),
                t_avg_max: Some(self.sensitivity.t_avg_max),
                points: Some(self.sensitivity.points),
            }),
            oracle: Some(OracleConfig {
                c: Some(self.oracle.constants.c),
                hbar: Some(self.oracle.constants.hbar),
                g: Some(self.oracle.constants.g),
                mass: Some(self.oracle.mass),
                k: Some(self.oracle.k),
                t1: Some(self.oracle.t1),
                t: Some(self.oracle.t),
                dm_over_m: Some(self.oracle.dm_over_m.clone()),
            }),
            sweep: Some(SweepConfig {
                parameter: Some(self.sweep.parameter.clone()),
                values: Some(self.sweep.values.clone()),
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// document handling
// ---------------------------------------------------------------------------

/// Parse a JSON document into the raw configuration, reporting the dotted
/// path of any unknown key or type mismatch.
pub fn parse_raw(doc: &Value) -> Result<RawConfig, CliError> {
    let mut track = serde_path_to_error::Track::new();
    let de = serde_path_to_error::Deserializer::new(doc, &mut track);
    RawConfig::deserialize(de).map_err(|e| {
        let path = track.path().to_string();
        CliError {
            kind: ErrorKind::Config,
            message: e.to_string(),
            path: if path.is_empty() || path == "." {
                None
            } else {
                Some(path)
            },
        }
    })
}

/// Parse and resolve a configuration document.
pub fn parse_config(doc: &Value) -> Result<RunConfig, CliError> {
    RunConfig::resolve(&parse_raw(doc)?)
}

/// Apply a flat dotted-path override such as `geometry.t=0.6` to the raw
/// JSON document before validation. Values are parsed as JSON when
/// possible, else taken as strings.
pub fn apply_override(doc: &mut Value, assignment: &str) -> Result<(), CliError> {
    let Some((path, raw_value)) = assignment.split_once('=') else {
        return Err(CliError {
            kind: ErrorKind::Usage,
            message: format!("override `{assignment}` is not of the form path=value"),
            path: None,
        });
    };
    let value: Value =
        serde_json::from_str(raw_value).unwrap_or_else(|_| Value::String(raw_value.to_string()));
    let mut cursor = doc;
    let segments: Vec<&str> = path.split('.').collect();
    for (i, seg) in segments.iter().enumerate() {
        if seg.is_empty() {
            return Err(CliError {
                kind: ErrorKind::Usage,
                message: format!("empty path segment in `{path}`"),
                path: Some(path.to_string()),
            });
        }
        if !cursor.is_object() {
            return Err(CliError {
                kind: ErrorKind::Usage,
                message: format!("`{}` is not an object", segments[..i].join(".")),
                path: Some(path.to_string()),
            });
        }
        let map = cursor.as_object_mut().unwrap();
        if i + 1 == segments.len() {
            map.insert(seg.to_string(), value);
            return Ok(());
        }
        cursor = map
            .entry(seg.to_string())
            .or_insert_with(|| Value::Object(Default::default()));
    }
    unreachable!("split produces at least one segment");
}
