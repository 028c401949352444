use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

use cmc_cli::mesh::{read_obj, Mesh};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cmc"))
}

fn spec(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("cmc runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "cmc {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&run_ok(args)).expect("JSON report on stdout")
}

fn mesh(dir: &Path, name: &str, args: &[&str]) -> Mesh {
    let path = dir.join(name);
    let mut full = vec!["mesh", "--out", path.to_str().unwrap()];
    full.extend_from_slice(args);
    run_ok(&full);
    read_obj(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn vec3(v: &Value) -> [f64; 3] {
    let a = v.as_array().expect("array");
    [0, 1, 2].map(|k| a[k].as_f64().unwrap())
}

fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    norm([a[0] - b[0], a[1] - b[1], a[2] - b[2]])
}

#[test]
fn catalog_list_names_every_entry() {
    let text = run_ok(&["catalog", "list"]);
    for name in cmc_core::catalog::NAMES {
        assert!(text.lines().any(|l| l.split_whitespace().next() == Some(name)), "{name} missing");
    }
    assert!(text.contains("waist"));
}

#[test]
fn catenoid_mesh_has_grid_vertex_count() {
    let dir = tempfile::tempdir().unwrap();
    let m = mesh(dir.path(), "c.obj", &["--surface", "catenoid", "--nu", "64", "--nv", "32"]);
    assert_eq!(m.vertices.len(), 2048);
    assert_eq!(m.faces.len(), 2 * 64 * 31);
    // open cylinder topology: two boundary circles
    assert_eq!(m.boundary_edges(), 128);
}

#[test]
fn sphere_mesh_is_watertight() {
    let dir = tempfile::tempdir().unwrap();
    let m = mesh(dir.path(), "s.obj", &["--surface", "sphere", "--nu", "48", "--nv", "24"]);
    assert!(m.is_watertight());
    // V - E + F = 2
    let e = m.faces.len() * 3 / 2;
    assert_eq!(m.vertices.len() as i64 - e as i64 + m.faces.len() as i64, 2);
    for v in &m.vertices {
        assert!((norm(*v) - 1.0).abs() < 1e-9);
    }
}

/// The conjugate member at `t = pi/2` is isometric to the catenoid: grid
/// edges agree up to the chord defect `O(h^2)`, and the vertices lie on the
/// helicoid up to a translation. The helicoid does not close up across
/// `u = 2 pi`, so its seam is left open.
#[test]
fn associate_mesh_is_isometric_and_helicoidal() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--surface", "catenoid", "--nu", "64", "--nv", "32"];
    let m0 = mesh(dir.path(), "c0.obj", &args);
    let t = FRAC_PI_2.to_string();
    let mut with_t = args.to_vec();
    with_t.extend_from_slice(&["--t", &t]);
    let m1 = mesh(dir.path(), "c1.obj", &with_t);
    assert_eq!(m1.vertices.len(), 65 * 32);
    assert_eq!(m1.faces.len(), m0.faces.len());
    // open seam adds the two columns u = 0 and u = 2 pi to the boundary
    assert_eq!(m1.boundary_edges(), 128 + 2 * 31);

    let mut worst: f64 = 0.0;
    let mut compared = 0;
    for f in m1.faces.iter().filter(|f| f.iter().all(|&k| k < 2048)) {
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            let l0 = dist(m0.vertices[a], m0.vertices[b]);
            let l1 = dist(m1.vertices[a], m1.vertices[b]);
            worst = worst.max((l0 - l1).abs() / l0);
            compared += 1;
        }
    }
    assert!(compared > 10_000);
    assert!(worst < 2e-3, "edge length mismatch {worst}");

    // helicoid (-sinh v sin u, sinh v cos u, -u) on the same grid
    let helicoid = |u: f64, v: f64| [-v.sinh() * u.sin(), v.sinh() * u.cos(), -u];
    let shift = {
        let h = helicoid(0.0, -1.0);
        let p = m1.vertices[0];
        [p[0] - h[0], p[1] - h[1], p[2] - h[2]]
    };
    for i in 0..=64 {
        for j in 0..32 {
            let (u, v) = (TAU * i as f64 / 64.0, -1.0 + 2.0 * j as f64 / 31.0);
            let h = helicoid(u, v);
            let p = m1.vertices[i * 32 + j];
            let moved = [p[0] - shift[0], p[1] - shift[1], p[2] - shift[2]];
            assert!(dist(moved, h) < 1e-9, "({u}, {v}): {moved:?} vs {h:?}");
        }
    }
}

#[test]
fn associate_mesh_edge_arclengths_match_to_1e6() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.obj");
    let t = FRAC_PI_2.to_string();
    let text = run_ok(&[
        "mesh",
        "--surface",
        "catenoid",
        "--nu",
        "64",
        "--nv",
        "32",
        "--t",
        &t,
        "--check-isometry",
        "--out",
        out.to_str().unwrap(),
    ]);
    let line = text.lines().find(|l| l.starts_with("max relative edge arclength deviation")).unwrap();
    let dev: f64 = line.split(": ").nth(1).unwrap().split_whitespace().next().unwrap().parse().unwrap();
    assert!(dev < 1e-6, "{line}");
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let path = spec("two_punctures.json");
    let once = || {
        let mut v = json(&["deformability", "--spec", path.to_str().unwrap()]);
        v.as_object_mut().unwrap().remove("wall_clock_seconds");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(once(), once());
}

#[test]
fn catenoid_deformability_names_the_waist() {
    let d = json(&["deformability", "--surface", "catenoid"]);
    assert_eq!(d["verdict"]["verdict"], "finite");
    assert_eq!(d["verdict"]["witness"]["cycle"], "waist");
    assert!((d["verdict"]["witness"]["magnitude"].as_f64().unwrap() - TAU).abs() < 1e-8);
}

#[test]
fn catenoid_waist_force_is_two_pi() {
    let r = json(&["periods", "--surface", "catenoid", "--cycle", "waist"]);
    let p = &r["periods"][0];
    assert_eq!(p["cycle"], "waist");
    let w = vec3(&p["force"]);
    assert!((norm(w) - TAU).abs() < 1e-9, "{w:?}");
    assert!(w[0].abs() < 1e-12 && w[1].abs() < 1e-12);
    assert!(r["max_error_estimate"].as_f64().unwrap() < 1e-8);
}

#[test]
fn sphere_equator_periods_vanish() {
    let r = json(&["periods", "--surface", "sphere", "--cycle", "equator", "--origin", "0.3,-0.2,0.5"]);
    let p = &r["periods"][0];
    assert!(norm(vec3(&p["force"])) < 1e-10);
    assert!(norm(vec3(&p["torque"])) < 1e-10);
    assert_eq!(vec3(&p["origin"]), [0.3, -0.2, 0.5]);
    let d = json(&["deformability", "--surface", "sphere"]);
    assert_eq!(d["verdict"]["verdict"], "circle-possible");
}

#[test]
fn unduloid_is_finite_by_its_neck_force() {
    let d = json(&["deformability", "--surface", "unduloid"]);
    assert_eq!(d["verdict"]["verdict"], "finite");
    assert!((d["verdict"]["witness"]["magnitude"].as_f64().unwrap() - 2.0 * PI * 0.3).abs() < 1e-8);
}

#[test]
fn two_puncture_file_periods_and_verdict() {
    let path = spec("two_punctures.json");
    let r = json(&["periods", "--spec", path.to_str().unwrap(), "--cycle", "all-punctures", "--form", "force"]);
    let wp = r["weierstrass_periods"].as_array().unwrap();
    assert_eq!(wp.len(), 2);
    for p in wp {
        let q = p["quadrature"].as_array().unwrap();
        let o = p["oracle"].as_array().unwrap();
        for k in 0..3 {
            for c in 0..2 {
                let (a, b) = (q[k][c].as_f64().unwrap(), o[k][c].as_f64().unwrap());
                assert!((a - b).abs() < 1e-8);
            }
        }
        // |Re| = |Im| = pi/4 on each puncture
        let re = (0..3).map(|k| q[k][0].as_f64().unwrap().abs()).fold(0.0, f64::max);
        let im = (0..3).map(|k| q[k][1].as_f64().unwrap().abs()).fold(0.0, f64::max);
        assert!((re - PI / 4.0).abs() < 1e-9 && (im - PI / 4.0).abs() < 1e-9);
    }

    let d = json(&["deformability", "--spec", path.to_str().unwrap()]);
    assert_eq!(d["verdict"]["verdict"], "ill-defined");
    let enclosing = d["weierstrass_periods"].as_array().unwrap().iter().find(|p| p["cycle"] == "cycle-0").unwrap();
    assert_eq!(enclosing["oracle_exactly_zero"], true);
    let bytes = std::fs::read(&path).unwrap();
    assert_eq!(d["input_digest"].as_str().unwrap(), format!("{:x}", Sha256::digest(bytes)));
}

#[test]
fn regular_inputs_are_circle_possible_and_catenoid_is_finite() {
    for (file, verdict) in [
        ("single_puncture.json", "circle-possible"),
        ("enneper_coefficients.json", "circle-possible"),
        ("catenoid.json", "finite"),
    ] {
        let path = spec(file);
        let d = json(&["deformability", "--spec", path.to_str().unwrap()]);
        assert_eq!(d["verdict"]["verdict"], verdict, "{file}");
    }
}

#[test]
fn report_file_and_trace_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let trace = dir.path().join("t.csv");
    let text = run_ok(&[
        "periods",
        "--surface",
        "cylinder",
        "--out",
        out.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(text.contains("report written"));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["tool"], "cmc");
    assert_eq!(r["command"], "periods");
    assert!(r["wall_clock_seconds"].as_f64().unwrap() >= 0.0);
    let w = vec3(&r["periods"][0]["force"]);
    assert!(dist(w, [0.0, 0.0, PI]) < 1e-10);

    let mut rd = csv::Reader::from_path(&trace).unwrap();
    let headers = rd.headers().unwrap().clone();
    assert_eq!(&headers[0], "cycle");
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), cmc_cli::trace::TRACE_SAMPLES + 1);
    // unit-speed equator of the unit cylinder: arclength ends at 2 pi
    let col = headers.iter().position(|h| h == "arclength").unwrap();
    let last: f64 = rows.last().unwrap()[col].parse().unwrap();
    assert!((last - TAU).abs() < 1e-9);
}

#[test]
fn cross_section_matches_force_and_applies_disc_bound() {
    let r = json(&["cross-section", "--surface", "unduloid", "--cycle", "neck", "--normal", "0,0,1"]);
    let cs = &r["cross_sections"][0];
    let f = json(&["periods", "--surface", "unduloid", "--cycle", "neck", "--form", "force"]);
    let wz = vec3(&f["periods"][0]["force"])[2];
    assert!((cs["section"]["value"].as_f64().unwrap() - wz).abs() < 1e-9);
    assert_eq!(cs["alexandrov"]["finite_family"], true);
    assert!(cs["alexandrov"]["enclosing_radius"].as_f64().unwrap() < 2.0);
}

#[test]
fn associate_report_checks_isometry() {
    let r = json(&["associate", "--surface", "enneper", "--t", "0.7"]);
    let a = &r["associate"];
    assert!(a["metric_drift"].as_f64().unwrap() < 1e-12);
    assert!(a["max_abs_h"].as_f64().unwrap() < 1e-9);
    assert!(a["gauss_drift"].as_f64().unwrap() < 1e-9);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["periods", "--surface", "no-such-surface"]).status.code(), Some(2));
    // mean curvature varies on the paraboloid
    assert_eq!(run(&["deformability", "--surface", "paraboloid"]).status.code(), Some(2));
    assert_eq!(run(&["associate", "--surface", "sphere", "--t", "1"]).status.code(), Some(2));
    assert_eq!(run(&["--quad-tol", "1e-300", "periods", "--surface", "sphere"]).status.code(), Some(3));
    assert_eq!(run(&["--quad-tol", "-1", "periods", "--surface", "sphere"]).status.code(), Some(2));
    assert_eq!(run(&["periods"]).status.code(), Some(2));
}

#[test]
fn library_entry_point_runs_commands() {
    use clap::Parser;
    let cli = cmc_cli::Cli::try_parse_from(["cmc", "catalog", "list"]).unwrap();
    let mut buf = Vec::new();
    cmc_cli::run(&cli, &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap().lines().count(), cmc_core::catalog::NAMES.len());

    let cli =
        cmc_cli::Cli::try_parse_from(["cmc", "deformability", "--surface", "delaunay", "--delaunay-h", "0.5"]).unwrap();
    let err = cmc_cli::run(&cli, &mut Vec::new()).unwrap_err();
    assert_eq!(cmc_cli::exit_code(&err), cmc_cli::exit::USAGE);
}
