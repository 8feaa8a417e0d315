use gwgv::harness::{builtin_references, ResultBundle, TableFile};
use std::path::Path;
use std::process::{Command, Output};

fn gwgv(args: &[&str], cache_env: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gwgv"));
    c.args(args).env_remove("GWGV_CACHE");
    if let Some(p) = cache_env {
        c.env("GWGV_CACHE", p);
    }
    c.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_is_deterministic_and_cache_sound() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let (a, b, c) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("c"));
    let cold = gwgv(&["solve", "--genus", "3", "--out", path(&a), "--cache", path(&cache)], None);
    assert!(cold.status.success(), "{}", String::from_utf8_lossy(&cold.stderr));
    let warm = gwgv(&["solve", "--genus", "3", "--out", path(&b)], Some(&cache));
    assert!(warm.status.success());
    let timings = std::fs::read_to_string(b.join("timings.json")).unwrap();
    assert!(timings.replace([' ', '\n'], "").contains("\"cached_genera\":[2,3]"));
    let none = gwgv(&["solve", "--genus", "3", "--out", path(&c)], None);
    assert!(none.status.success());
    let bytes = |d: &Path| std::fs::read(d.join("bundle.json")).unwrap();
    assert_eq!(bytes(&a), bytes(&b));
    assert_eq!(bytes(&a), bytes(&c));

    for f in std::fs::read_dir(&cache).unwrap() {
        std::fs::write(f.unwrap().path(), "{ not json").unwrap();
    }
    let corrupt = gwgv(&["solve", "--genus", "3", "--out", path(&b), "--cache", path(&cache)], None);
    assert!(corrupt.status.success());
    assert_eq!(bytes(&a), bytes(&b));
}

#[test]
fn genus_two_bundle_and_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g2");
    let o = gwgv(&["solve", "--genus", "2", "--out", path(&out), "--format", "markdown"], None);
    assert!(o.status.success());
    assert!(stdout(&o).contains("k_U^2 = "));
    let text = std::fs::read_to_string(out.join("bundle.json")).unwrap();
    let bundle = ResultBundle::from_json("bundle.json", &text).unwrap();
    assert_eq!(bundle.genus(2).unwrap().coefficient("a0").unwrap().to_string(), "-359293/2520");
    assert_eq!(bundle.metadata.s_order, 10);
    assert!(text.contains("\"n\": \"846787615783681427068332\""));

    let md = std::fs::read_to_string(out.join("gv_x.md")).unwrap();
    assert!(md.starts_with("| d | g=0 | g=1 | g=2 |"));
    assert!(md.contains("| 17 | 846787615783681427068332 | 387581693402348794414352 | 65017598161994032437484 |"));

    let csv = gwgv(&["table", "--bundle", path(&out.join("bundle.json")), "--side", "z", "--format", "csv"], None);
    assert!(csv.status.success());
    assert!(stdout(&csv).lines().any(|l| l == "5,3609394096,34149668,12740"));
}

#[test]
fn verify_against_shipped_and_perturbed_references() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("full");
    assert!(gwgv(&["solve", "--out", path(&out)], None).status.success());
    let bundle = out.join("bundle.json");

    let ok = gwgv(&["verify", "--bundle", path(&bundle)], None);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("180 cells compared, 0 mismatches"));

    let mut refs = builtin_references();
    let x5 = refs[0].entries.iter_mut().find(|e| e.g == 5 && e.d == 12).unwrap();
    x5.n = "3676".into();
    let bad = dir.path().join("bad_x.json");
    std::fs::write(&bad, serde_json::to_string(&refs[0]).unwrap()).unwrap();
    let o = gwgv(&["verify", "--bundle", path(&bundle), "--reference", path(&bad)], None);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.starts_with("mismatch")).count(), 1);
    assert!(s.contains("mismatch side=x g=5 d=12 expected=3676 got=3675"));

    let mut partial: TableFile = refs[1].clone();
    partial.entries.retain(|e| e.d != 13);
    let p = dir.path().join("partial_z.json");
    std::fs::write(&p, serde_json::to_string(&partial).unwrap()).unwrap();
    let o = gwgv(&["verify", "--bundle", path(&bundle), "--reference", path(&p)], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("uncovered side=z g=3 d=13"));
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().to_str().unwrap();
    for args in [
        vec!["solve", "--order-q", "12", "--out", o],
        vec!["solve", "--genus", "3", "--order-s", "9", "--out", o],
        vec!["solve", "--genus", "7", "--out", o],
        vec!["solve", "--model", "builtin:quintic", "--out", o],
        vec!["solve", "--format", "xml", "--out", o],
        vec!["solve", "--schedule", "/nonexistent/schedule.json", "--out", o],
        vec!["verify", "--bundle", "/nonexistent/bundle.json"],
        vec!["expand", "--point", "x7"],
        vec!["expand", "--point", "x3", "--order", "6"],
        vec!["frobnicate"],
    ] {
        assert_eq!(gwgv(&args, None).status.code(), Some(2), "{args:?}");
    }
    let bad_ref = dir.path().join("r.json");
    std::fs::write(&bad_ref, "{\"side\": \"x\", \"entries\": [{\"g\": 0, \"d\": 1, \"n\": 1.5}]}").unwrap();
    let o = gwgv(&["verify", "--bundle", "/nonexistent", "--reference", path(&bad_ref)], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn underdetermined_schedule_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let sched = dir.path().join("s.json");
    std::fs::write(&sched, r#"{"genera": {"2": {"vanishing_x": [], "vanishing_z": [], "greedy": false}}}"#).unwrap();
    let o = gwgv(&["solve", "--genus", "2", "--schedule", path(&sched), "--out", path(dir.path())], None);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("genus 2"));
}

#[test]
fn expand_dumps_local_series() {
    let o = gwgv(&["expand", "--point", "x0", "--order", "5"], None);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["flat_variable"], "q");
    assert_eq!(v["w0"]["coefficients"], serde_json::json!(["1", "5", "109", "3317", "121501"]));
    let c = gwgv(&["expand", "--point", "conifold", "--order", "6"], None);
    assert!(c.status.success());
}

#[test]
fn empty_table_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g1");
    assert!(gwgv(&["solve", "--genus", "1", "--out", path(&out)], None).status.success());
    let text = std::fs::read_to_string(out.join("bundle.json")).unwrap();
    let mut b = ResultBundle::from_json("b", &text).unwrap();
    assert_eq!(b.gv_value(gwgv::anomaly::Side::X, 1, 5).unwrap(), 588);
    b.gv.clear();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, b.to_json()).unwrap();
    let o = gwgv(&["table", "--bundle", path(&empty), "--side", "x", "--format", "csv"], None);
    assert_eq!(stdout(&o), "d\n");
}
