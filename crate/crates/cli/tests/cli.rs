//! End-to-end runs of the `gti` binary against the shipped descriptors.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn gti(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gti"))
        .args(args)
        .env_remove("GTI_TOL")
        .output()
        .expect("run gti")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn onb_parseval_passes_with_zero_residual() {
    let out = gti(&["verify", "parseval-talpha", "--sys", &path("onb.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["max_residual"].as_f64(), Some(0.0));
    assert_eq!(v["tolerance"].as_f64(), Some(1e-10));
    assert_eq!(v["provenance"]["command"], "verify parseval-talpha");
    assert_eq!(
        v["provenance"]["input_digest"].as_str().map(str::len),
        Some(64)
    );
}

#[test]
fn onb_against_doubled_onb_fails_with_unit_residual() {
    for kind in ["dual-brute", "dual-talpha"] {
        let out = gti(&[
            "verify",
            kind,
            "--sys",
            &path("onb.json"),
            "--sys2",
            &path("onb_doubled.json"),
        ]);
        assert_eq!(out.status.code(), Some(1), "{kind}");
        let v = json(&out);
        assert_eq!(v["pass"], false);
        assert!(
            (v["max_residual"].as_f64().unwrap() - 1.0).abs() < 1e-14,
            "{kind}"
        );
    }
}

#[test]
fn shipped_gabor_pair_is_dual_by_both_routes() {
    let out = gti(&[
        "verify",
        "finite-gabor",
        "--sys",
        &path("gabor_12_3_4.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["details"]["characterization"]["pass"], true);
    assert_eq!(v["details"]["bruteforce"]["pass"], true);
    assert!(v["max_residual"].as_f64().unwrap() <= 1e-10);
    let loose = gti(&[
        "verify",
        "finite-gabor",
        "--sys",
        &path("gabor_12_3_4.json"),
        "--tol",
        "0",
    ]);
    assert_eq!(loose.status.code(), Some(1));
}

#[test]
fn torus_and_janssen_verifications() {
    let out = gti(&[
        "verify",
        "parseval-talpha",
        "--sys",
        &path("halves_torus.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["details"]["alphas"]
        .as_array()
        .unwrap()
        .iter()
        .all(|a| a["exact_match"] == true));
    let out = gti(&[
        "verify",
        "janssen",
        "--sys",
        &path("unit_box_janssen.json"),
        "--tol",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = gti(&["verify", "dual-talpha", "--sys", &path("layered_tiling.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "truncation-required");
}

#[test]
fn conditions_on_shipped_systems() {
    let out = gti(&["conditions", "--sys", &path("onb.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["conditions"]["calderon_min"].as_f64(), Some(1.0));
    assert_eq!(v["conditions"]["calderon_max"].as_f64(), Some(1.0));

    let out = gti(&["conditions", "--sys", &path("layered_tiling.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let terms = v["conditions"]["lic"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 20);
    assert!(terms.iter().all(|t| t["exact"] == "1"));
    assert_eq!(
        v["conditions"]["alpha_lic"]["partial_sums"][19]["exact"],
        "1048575/1048576"
    );

    let out = gti(&["conditions", "--sys", &path("layered_tiling.json"), "--jmax", "5"]);
    let v = json(&out);
    assert_eq!(v["conditions"]["lic"]["terms"].as_array().unwrap().len(), 5);
    assert_eq!(v["conditions"]["tail_bound"], Value::Null);

    let out = gti(&["conditions", "--sys", &path("empty.json")]);
    assert_eq!(out.status.code(), Some(0));
    let c = &json(&out)["conditions"];
    for key in ["calderon_min", "calderon_max"] {
        assert_eq!(c[key].as_f64(), Some(0.0), "{key}");
    }
    for key in ["lic", "alpha_lic", "lic_discrete"] {
        assert_eq!(c[key]["total"].as_f64(), Some(0.0), "{key}");
    }
    assert_eq!(c["cc"]["lower"].as_f64(), Some(0.0));
    assert_eq!(c["cc"]["upper"].as_f64(), Some(0.0));

    let out = gti(&[
        "conditions",
        "--sys",
        &path("halves_torus.json"),
        "--K",
        &path("k_half.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["conditions"]["k_measure"], "1/2");
    assert_eq!(v["conditions"]["lic"]["partial_sums"][1]["exact"], "1/2");
}

fn repro_rows(args: &[&str]) -> (Option<i32>, Vec<Value>) {
    let out = gti(args);
    let v = json(&out);
    (
        out.status.code(),
        v["rows"].as_array().cloned().unwrap_or_default(),
    )
}

#[test]
fn repro_tables_match() {
    let (code, rows) = repro_rows(&["repro", "ex-0402e", "--N", "3", "--jmax", "12"]);
    assert_eq!(code, Some(0));
    let alpha = rows
        .iter()
        .find(|r| r["quantity"] == "alpha-lic partial sum")
        .unwrap();
    assert_eq!(alpha["expected"], "531440/531441");
    assert_eq!(alpha["computed"], "531440/531441");
    let (code, rows) = repro_rows(&["repro", "layered-tiling", "--jmax", "3"]);
    assert_eq!(code, Some(0));
    assert_eq!(rows[1]["computed"], "7/8");

    let (code, rows) = repro_rows(&[
        "repro",
        "ex-reordered-onb",
        "--N",
        "2",
        "--jstar",
        "4",
        "--k",
        "1",
    ]);
    assert_eq!(code, Some(0));
    assert_eq!(rows[0]["computed"], "0");
    assert_eq!(rows[0]["residual"].as_f64(), Some(0.0));

    let (code, rows) = repro_rows(&["repro", "ex-reordered-onb", "--N", "4", "--k", "0"]);
    assert_eq!(code, Some(0));
    assert_eq!(rows[0]["computed"], "1/3");
    assert_eq!(rows[1]["computed"], "fails");

    let (code, rows) = repro_rows(&["repro", "calderon-cont"]);
    assert_eq!(code, Some(0));
    for r in &rows {
        assert!((r["computed"].as_str().unwrap().parse::<f64>().unwrap() - 1.0).abs() <= 1e-12);
    }

    for id in ["shannon-wavelet", "gabor-finite", "janssen-unit"] {
        let (code, rows) = repro_rows(&["repro", id]);
        assert_eq!(code, Some(0), "{id}");
        assert!(
            !rows.is_empty() && rows.iter().all(|r| r["match"] == true),
            "{id}"
        );
    }
    let (code, _) = repro_rows(&["repro", "gabor-finite", "--d", "16", "--a", "4", "--b", "4"]);
    assert_eq!(code, Some(0));
}

#[test]
fn repro_csv_has_one_line_per_row() {
    let out = gti(&["repro", "shannon-wavelet", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("quantity,expected,computed,residual,tolerance,match")
    );
    assert_eq!(lines.count(), 7);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["verify", "dual-brute", "--sys", "ONB", "--sys2", "ONB2"],
        vec!["conditions", "--sys", "ONB"],
        vec!["repro", "gabor-finite"],
    ] {
        let onb = path("onb.json");
        let onb2 = path("onb_doubled.json");
        let args: Vec<&str> = args
            .iter()
            .map(|a| match *a {
                "ONB" => onb.as_str(),
                "ONB2" => onb2.as_str(),
                other => other,
            })
            .collect();
        let a = gti(&args);
        let b = gti(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn digest_follows_content_not_path() {
    let dir = tempfile::tempdir().unwrap();
    let copy = dir.path().join("copy.json");
    std::fs::copy(data("onb.json"), &copy).unwrap();
    let a = json(&gti(&[
        "verify",
        "parseval-talpha",
        "--sys",
        &path("onb.json"),
    ]));
    let b = json(&gti(&[
        "verify",
        "parseval-talpha",
        "--sys",
        copy.to_str().unwrap(),
    ]));
    assert_eq!(
        a["provenance"]["input_digest"],
        b["provenance"]["input_digest"]
    );
    let c = json(&gti(&[
        "verify",
        "parseval-talpha",
        "--sys",
        &path("onb.json"),
        "--tol",
        "1e-6",
    ]));
    assert_ne!(
        a["provenance"]["input_digest"],
        c["provenance"]["input_digest"]
    );
}

#[test]
fn invalid_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"group\": ").unwrap();
    let unknown = dir.path().join("unknown.json");
    std::fs::write(
        &unknown,
        r#"{"group": {"factors": [4]}, "layers": [], "colour": 1}"#,
    )
    .unwrap();
    let short = dir.path().join("short.json");
    std::fs::write(
        &short,
        r#"{"group": {"factors": [4]}, "layers": [{"gamma": "whole", "generators": [[1, 2]]}]}"#,
    )
    .unwrap();
    for (file, kind) in [
        (&broken, "invalid-input"),
        (&unknown, "invalid-input"),
        (&short, "shape-mismatch"),
    ] {
        let out = gti(&["verify", "dual-talpha", "--sys", file.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{}", file.display());
        assert_eq!(json(&out)["error"]["kind"], kind, "{}", file.display());
    }
    let missing = gti(&[
        "verify",
        "dual-talpha",
        "--sys",
        dir.path().join("nope.json").to_str().unwrap(),
    ]);
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(json(&missing)["error"]["kind"], "io");
    assert_eq!(gti(&["repro", "no-such-example"]).status.code(), Some(2));
    assert_eq!(
        gti(&["verify", "no-such-kind", "--sys", &path("onb.json")])
            .status
            .code(),
        Some(2)
    );
    let gabor = gti(&["verify", "gabor-time", "--sys", &path("onb.json")]);
    assert_eq!(gabor.status.code(), Some(2));
    let brute_torus = gti(&["verify", "dual-brute", "--sys", &path("halves_torus.json")]);
    assert_eq!(brute_torus.status.code(), Some(2));
}

#[test]
fn tolerance_precedence() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_gti"));
        cmd.args([
            "verify",
            "dual-brute",
            "--sys",
            &path("onb.json"),
            "--sys2",
            &path("onb_doubled.json"),
        ]);
        if let Some(f) = flag {
            cmd.args(["--tol", f]);
        }
        match env {
            Some(e) => cmd.env("GTI_TOL", e),
            None => cmd.env_remove("GTI_TOL"),
        };
        cmd.output().unwrap()
    };
    let out = run(Some("2"), None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["tolerance"].as_f64(), Some(2.0));
    let out = run(Some("2"), Some("0.5"));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["tolerance"].as_f64(), Some(0.5));
    let out = run(None, None);
    assert_eq!(json(&out)["tolerance"].as_f64(), Some(1e-10));
    let out = run(Some("loose"), None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "invalid-input");
    assert_eq!(run(None, Some("-1")).status.code(), Some(2));
}

#[test]
fn top_k_and_columnar_output() {
    let out = gti(&[
        "verify",
        "dual-talpha",
        "--sys",
        &path("onb.json"),
        "--sys2",
        &path("onb_doubled.json"),
        "--top-k",
        "3",
    ]);
    let v = json(&out);
    assert_eq!(v["details"]["entries"].as_array().unwrap().len(), 3);
    assert_eq!(v["details"]["table_size"].as_u64(), Some(8));
    let out = gti(&[
        "verify",
        "parseval-talpha",
        "--sys",
        &path("onb.json"),
        "--gnuplot-data",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# alpha omega re im target residual\n"));
    assert!(text.lines().skip(1).all(|l| l.split(' ').count() == 6));
    let both = gti(&[
        "verify",
        "parseval-talpha",
        "--sys",
        &path("onb.json"),
        "--csv",
        "--json",
    ]);
    assert_eq!(both.status.code(), Some(2));
}
