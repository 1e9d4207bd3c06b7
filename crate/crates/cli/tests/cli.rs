use std::process::{Command, Output};

fn hypdrill(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypdrill")).args(args).env_remove("HYPDRILL_OUT_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["frobnicate"],
        vec!["realize", "--drum", "2"],
        vec!["drill", "--drum", "4", "--face", "top", "--edges", "0,1"],
        vec!["drill", "--drum", "4", "--face", "top"],
        vec!["brooks", "--n", "4..1"],
        vec!["deform", "--drum", "4", "--from", "1.0", "--to", "0.5"],
        vec!["realize", "--json", "--csv", "--drum", "3"],
        vec!["brooks", "--jobs", "0"],
    ] {
        assert_eq!(hypdrill(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn numeric_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    // a cube is not four-valent, so it has no ideal right-angled realization
    std::fs::write(&path, r#"{"vertices":8,"faces":[[0,1,2,3],[7,6,5,4],[0,4,5,1],[1,5,6,2],[2,6,7,3],[3,7,4,0]]}"#).unwrap();
    let o = hypdrill(&["realize", "--poly", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn drill_example_row() {
    let o = hypdrill(&["drill", "--drum", "4", "--face", "top", "--edges", "0,2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    let head: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!(lines.next().is_none());
    let col = |name: &str| row[head.iter().position(|h| *h == name).unwrap()];
    let dv: f64 = col("dV").parse().unwrap();
    let bound: f64 = col("pi_l_half").parse().unwrap();
    assert!(dv > 0.0 && dv <= bound);
    assert_eq!(col("pass_pi"), "pass");
}

#[test]
fn realize_octahedron_svg_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("oct.svg");
    let o = hypdrill(&["realize", "--drum", "3", "--svg", svg.to_str().unwrap(), "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let vol = v[0]["volume"].as_f64().unwrap();
    assert!((vol - 3.6638624).abs() < 1e-7, "{vol}");
    let text = std::fs::read_to_string(&svg).unwrap();
    let faces = text.matches("<circle").count() - text.matches("class=\"vertex\"").count();
    assert_eq!(faces, 8);
}

#[test]
fn brooks_rows_into_default_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_hypdrill"))
        .args(["brooks", "--n", "1..4", "--out", "rows.csv"])
        .env("HYPDRILL_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("rows.csv")).unwrap();
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let l: Vec<f64> = r.records().map(|x| x.unwrap()[2].parse().unwrap()).collect();
    assert_eq!(l.len(), 4);
    assert!(l.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn check_mode_reports_and_render_writes_svg() {
    let o = hypdrill(&["realize", "--drum", "4", "--check"]);
    assert!(o.status.success());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.lines().all(|l| l.starts_with("check ") && l.contains(" pass ")), "{err}");
    let o = hypdrill(&["render", "--brooks", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("<svg"));
}
