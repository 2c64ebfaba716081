use std::process::{Command, Output};

fn hankel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel")).args(args).output().expect("spawn hankel")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn list_json_has_whole_registry() {
    let o = hankel(&["list", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert!(rows.len() >= 40);
    for r in rows {
        for key in ["id", "kind", "citation", "domain"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn list_filters_by_kind() {
    let o = hankel(&["list", "--kind", "moment", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("id,kind,citation,domain"));
    assert!(lines.all(|l| l.contains(",moment,")));
}

#[test]
fn verify_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = hankel(&["verify", "--ids", "EX1,KERN", "--out", path.to_str().unwrap(), "--seedless"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for key in ["schema_version", "config", "totals", "results", "timing"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
    assert_eq!(v["totals"]["ok"], true);
}

#[test]
fn verify_csv_and_markdown() {
    let o = hankel(&["verify", "--ids", "EX1", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("id,kind,point,functions,lhs,rhs"));
    assert_eq!(text.lines().count(), 11);

    let o = hankel(&["verify", "--ids", "EX1", "--format", "md"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("| EX1 |"));
}

#[test]
fn verify_with_user_functions() {
    let o = hankel(&["verify", "--ids", "T2.3", "--fn", "exp_decay:a=2", "--fn", "gauss:a=1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exp_decay:a=2 gauss:a=1"));
}

#[test]
fn unknown_identity_is_a_config_error() {
    let o = hankel(&["verify", "--ids", "NOPE"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown identity 'NOPE'"));
}

#[test]
fn bad_kind_and_arity_are_config_errors() {
    assert_eq!(hankel(&["verify", "--kind", "bogus"]).status.code(), Some(2));
    assert_eq!(hankel(&["verify", "--ids", "EX1", "--fn", "exp_decay:a=1"]).status.code(), Some(2));
    assert_eq!(hankel(&["verify", "--tol=-1"]).status.code(), Some(2));
}

#[test]
fn starved_budget_exits_one() {
    let o = Command::new(env!("CARGO_BIN_EXE_hankel"))
        .args(["verify", "--ids", "L1.1"])
        .env("HANKEL_MAX_EVALS", "30")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["totals"]["ok"], false);
}

#[test]
fn transform_values() {
    let cases = [
        (vec!["--kind", "laplace", "--fn", "exp_decay:a=1", "--at", "1"], 0.5),
        (vec!["--kind", "widder", "--fn", "lorentz_power:nu=0.5,a=1", "--at", "2"], std::f64::consts::PI / 6.0),
        (
            vec!["--kind", "hankel", "--nu", "0.5", "--fn", "exp_decay:a=1", "--at", "2"],
            (2.0 / std::f64::consts::PI).sqrt() * 0.4,
        ),
    ];
    for (args, want) in cases {
        let mut full = vec!["transform", "--format", "json"];
        full.extend(args);
        let o = hankel(&full);
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let got = v["value"].as_f64().unwrap();
        assert!((got - want).abs() < 1e-12 * want, "{got} vs {want}");
        assert_eq!(v["converged"], true);
    }
}

#[test]
fn transform_rejects_missing_order() {
    let o = hankel(&["transform", "--kind", "hankel", "--fn", "exp_decay:a=1", "--at", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn documented_verify_runs() {
    let o = hankel(&["verify", "--ids", "EX1", "--grid", "5", "--tol", "1e-6"]);
    assert_eq!(o.status.code(), Some(0));
    let o = hankel(&["verify", "--ids", "KERN", "--grid", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["results"][0]["max_residual"].as_f64().unwrap() <= 1e-7);
}

#[test]
fn list_closed_form_subset() {
    let o = hankel(&["list", "--kind", "closed_form", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    for id in ["EX1", "EX5", "REX1", "REX3"] {
        assert!(ids.contains(&id), "{id}");
    }
    assert!(hankel(&["list", "--format", "md"]).status.success());
}
