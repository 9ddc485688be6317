use std::fs;
use std::process::Command;

fn weno() -> Command {
    Command::new(env!("CARGO_BIN_EXE_weno"))
}

#[test]
fn list_shows_every_preset() {
    let out = weno().arg("list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["smooth-euler-1d", "sod", "lax", "double-mach", "rti", "explosion"] {
        assert!(text.contains(name), "{name} missing");
    }
}

#[test]
fn run_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = weno()
        .args(["run", "--problem", "lax", "--scheme", "js", "--n", "60", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("lax_JS_60.csv").exists());
    let json = fs::read_to_string(dir.path().join("lax_JS_60.json")).unwrap();
    assert!(json.contains("\"scheme\": \"js\""), "{json}");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(&cfg, r#"{"problem": "sod", "scheme": "z", "n": 40}"#).unwrap();
    let out = weno().arg("run").arg("--config").arg(&cfg).args(["--n", "48", "--out"]).arg(dir.path()).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("sod_Z_48.csv").exists());
}

#[test]
fn convergence_prints_table() {
    let out = weno()
        .args(["convergence", "--problem", "smooth-euler-1d", "--scheme", "h", "--t-final", "0.1", "--ns", "20,40"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[1].starts_with("40,"));
}

#[test]
fn compare_writes_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let out = weno()
        .args(["compare", "--problem", "sod", "--n", "50", "--schemes", "js,h", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("compare_sod_50.csv")).unwrap();
    assert!(csv.lines().next().unwrap().starts_with("# x, rho_JS, rho_H, rho_ref"));
    assert_eq!(csv.lines().count(), 51);
}

#[test]
fn bad_input_is_reported() {
    let out = weno().args(["run", "--problem", "sod", "--scheme", "q"]).output().unwrap();
    assert!(!out.status.success());
    let out = weno().args(["run", "--problem", "nowhere"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("nowhere"));
    let out = weno().args(["run", "--problem", "sod", "--cfl", "2"]).output().unwrap();
    assert!(!out.status.success());
}
