//! End-to-end tests of the command-line surface: report contents, CSV
//! artifacts, error objects and the published schema.

use std::process::Command as Process;

use aifsim::{parse_config, run_subcommand, Command};
use serde_json::{json, Value};

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_aifsim"))
}

fn run_json(cmd: Command, doc: Value) -> Value {
    let cfg = parse_config(&doc).unwrap();
    let report = run_subcommand(cmd, &cfg, None).unwrap();
    serde_json::to_value(&report).unwrap()
}

#[test]
fn phase_report_on_defaults() {
    let v = run_json(Command::Phase, json!({}));
    assert_eq!(v["command"], "phase");
    assert_eq!(v["units_mode"], "physical");
    let r = &v["result"];
    let refp = r["ref_phase"]["value"].as_f64().unwrap();
    let clock = r["clock_phase"]["value"].as_f64().unwrap();
    assert!((refp + 4.5489e8).abs() < 1e5, "ref {refp}");
    assert!((clock - 6.57e-3).abs() < 1e-4, "clock {clock}");
    assert_eq!(r["ref_phase"]["unit"], "rad");
    assert_eq!(r["segments"].as_array().unwrap().len(), 3);
    // effective configuration is echoed with defaults filled in
    assert_eq!(v["config"]["geometry"]["t1"], 0.25);
    assert_eq!(v["config"]["noise"]["atom_flux"], 1e5);
}

#[test]
fn explicit_pulse_list_matches_parametric_form() {
    let parametric = run_json(Command::Phase, json!({}));
    let k = aifsim_core::model::SR88_WAVE_NUMBER;
    let pulse = |t: f64, sign: f64, lambda: i8| json!({"t": t, "k_upper": sign * k, "k_lower": -sign * k, "lambda_after": lambda});
    let explicit = run_json(
        Command::Phase,
        json!({"geometry": {
            "pulses": [pulse(0.0, 1.0, 1), pulse(0.25, -1.0, -1), pulse(0.75, -1.0, 1), pulse(1.0, 1.0, -1)],
            "initial": {"z0": 0.0, "v0": 0.0, "lambda0": -1},
            "t_end": 1.0
        }}),
    );
    assert_eq!(
        parametric["result"]["ref_phase"],
        explicit["result"]["ref_phase"]
    );
    assert_eq!(
        parametric["result"]["clock_phase"],
        explicit["result"]["clock_phase"]
    );
    assert_eq!(parametric["result"]["total"], explicit["result"]["total"]);
}

#[test]
fn frame_check_without_gravity_has_zero_residuals() {
    let v = run_json(
        Command::FrameCheck,
        json!({"constants": {"c": 50.0, "hbar": 1.0, "g": 0.0, "scaled_units": true},
               "species": {"mass": 1.0, "omega": 10.0},
               "geometry": {"t1": 0.8, "t": 1.0, "k": 2.0}}),
    );
    assert_eq!(v["units_mode"], "scaled");
    assert_eq!(v["result"]["residual_ref"]["value"], 0.0);
    assert_eq!(v["result"]["residual_clock"]["value"], 0.0);
    assert_eq!(v["result"]["residual_total"]["value"], 0.0);
}

#[test]
fn sweep_isolates_the_duration_linear_term() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = parse_config(&json!({"sweep": {"parameter": "t", "values": [0.4, 0.6]}})).unwrap();
    let report = run_subcommand(Command::Sweep, &cfg, Some(dir.path())).unwrap();
    let v = serde_json::to_value(&report).unwrap();
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let d04 = rows[0]["differential"]["value"].as_f64().unwrap();
    let d06 = rows[1]["differential"]["value"].as_f64().unwrap();
    // differential = 2 Omega dtau2(T) is linear through the origin in T
    assert!((d06 / d04 - 0.6 / 0.4).abs() < 1e-9, "{d06} vs {d04}");

    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "units_mode,parameter,value,clock_phase_rad,ref_phase_rad,differential_rad"
    );
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn unknown_key_produces_error_object_and_exit_code() {
    let out = bin()
        .args(["phase", "--set", "geometry.t11=0.3"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "config");
    assert_eq!(err["error"]["path"], "geometry.t11");
}

#[test]
fn negative_duration_is_a_range_error() {
    let out = bin()
        .args(["phase", "--set", "geometry.t1=-0.25"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "range");
}

#[test]
fn unknown_subcommand_is_rejected() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "usage");
}

#[test]
fn montecarlo_requires_enough_cycles() {
    let out = bin()
        .args(["montecarlo", "--set", "campaign.t_avg=1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "physics");
}

#[test]
fn schema_file_matches_the_config_surface() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/schema/config.schema.json"
    ))
    .unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(schema["properties"]["schema_version"]["const"], 1);

    // every key of the fully-populated normalized config must be described
    // by the schema, section by section
    let cfg = parse_config(&json!({})).unwrap();
    let normalized = serde_json::to_value(cfg.normalized()).unwrap();
    for (section, value) in normalized.as_object().unwrap() {
        let in_schema = &schema["properties"][section];
        assert!(!in_schema.is_null(), "schema misses section `{section}`");
        if let Some(obj) = value.as_object() {
            for key in obj.keys() {
                assert!(
                    !in_schema["properties"][key].is_null(),
                    "schema misses `{section}.{key}`"
                );
            }
        }
    }
}

#[test]
fn default_config_round_trips_through_the_binary() {
    // serialize(parse(doc)) must be idempotent on the normalized form
    let out1 = bin().arg("phase").output().unwrap();
    assert!(out1.status.success());
    let v: Value = serde_json::from_slice(&out1.stdout).unwrap();
    let echoed = serde_json::to_string(&v["config"]).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, &echoed).unwrap();
    let out2 = bin()
        .args(["phase", "--config", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out2.status.success());
    assert_eq!(out1.stdout, out2.stdout);
}
