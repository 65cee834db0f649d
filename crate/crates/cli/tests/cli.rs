use std::process::{Command, Output};

use serde_json::Value;

fn skein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skein"))
        .args(args)
        .env_remove("SKEIN_PRECISION_BITS")
        .output()
        .expect("spawn skein")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn reduce_generator_is_itself() {
    let out = skein(&["reduce", "0", "0", "1"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!((terms[0]["a"].as_u64(), terms[0]["b"].as_u64(), terms[0]["c"].as_u64()), (Some(0), Some(0), Some(1)));
    assert_eq!(terms[0]["coeff"]["num"], "1*A^0");
}

#[test]
fn reduce_lands_on_generators() {
    let out = skein(&["reduce", "2", "2", "3"]);
    assert_eq!(code(&out), 0);
    let gens = [(0, 0, 0), (1, 0, 0), (0, 0, 1), (1, 0, 1), (0, 0, 2)];
    for t in stdout_json(&out)["terms"].as_array().unwrap() {
        let key = (t["a"].as_u64().unwrap(), t["b"].as_u64().unwrap(), t["c"].as_u64().unwrap());
        assert!(gens.contains(&key), "{key:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&skein(&["reduce", "1", "3", "1"])), 3);
    assert_eq!(code(&skein(&["reduce", "-1", "0", "0"])), 3);
    assert_eq!(code(&skein(&["relation", "1", "--alpha", "0", "--beta", "2", "--gamma", "0"])), 3);
    assert_eq!(code(&skein(&["frobnicate"])), 2);
    assert_eq!(code(&skein(&["reduce", "1"])), 2);
    assert_eq!(code(&skein(&["relation", "9", "--alpha", "1"])), 2);
    assert_eq!(code(&skein(&["invariant", "--r", "4"])), 2);
    assert_eq!(code(&skein(&["lehmer", "--Ns", "50"])), 2);
    assert_eq!(code(&skein(&["verify-oracle", "--cap", "99"])), 2);
    assert_eq!(code(&skein(&["--precision", "8", "gauss", "--n", "100", "--m", "3"])), 2);
}

#[test]
fn errors_go_to_stderr() {
    let out = skein(&["reduce", "1", "3", "1"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("(1, 3, 1)"));
}

#[test]
fn scan_has_one_row_per_odd_level() {
    let out = skein(&["scan", "--rmin", "17", "--rmax", "301"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,rmod16,re,im,im_shifted,sign"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 143);
    for row in rows.iter().filter(|r| r[0].parse::<u64>().unwrap() >= 33) {
        match row[1] {
            "1" => assert_eq!(row[5], "1", "{row:?}"),
            "9" => assert_eq!(row[5], "-1", "{row:?}"),
            _ => {}
        }
    }
}

#[test]
fn scan_svg() {
    let out = skein(&["scan", "--rmin", "17", "--rmax", "61", "--out", "svg"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("<svg"));
}

#[test]
fn published_forms_disagree_corrected_agree() {
    assert_eq!(code(&skein(&["verify-cases", "--max", "3"])), 1);
    assert_eq!(code(&skein(&["verify-cases", "--max", "3", "--forms", "corrected"])), 0);
}

#[test]
fn injected_fault_is_detected() {
    let cases = [
        vec!["verify-cases", "--max", "3", "--forms", "corrected"],
        vec!["verify-oracle", "--cap", "4"],
        vec!["verify-relations", "--max", "2"],
    ];
    for args in cases {
        assert_eq!(code(&skein(&args)), 0, "{args:?}");
        let mut faulty = vec!["--inject-fault"];
        faulty.extend(&args);
        assert_eq!(code(&skein(&faulty)), 1, "{faulty:?}");
    }
}

#[test]
fn vanwamelen_small() {
    let out = skein(&["vanwamelen", "--rmax", "31"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 15);
}

#[test]
fn invariant_matches_closed_form_level_five() {
    let v = stdout_json(&skein(&["invariant", "--r", "5", "--skein", "1"]));
    let (re, im) = (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap());
    assert!((re * re + im * im - 0.381966011250105).abs() < 1e-12, "{re} {im}");
}

#[test]
fn deterministic_output() {
    for args in [
        vec!["--seed", "11", "verify-relations", "--max", "3", "--sample", "6"],
        vec!["scan", "--rmin", "17", "--rmax", "99"],
        vec!["reduce", "3", "2", "2"],
    ] {
        assert_eq!(skein(&args).stdout, skein(&args).stdout, "{args:?}");
    }
}

#[test]
fn seed_changes_sample() {
    let pick = |seed: &str| stdout_json(&skein(&["--seed", seed, "verify-relations", "--max", "4", "--sample", "5"]))["checked"].clone();
    assert_eq!(pick("1"), 5);
    assert_eq!(pick("2"), 5);
}

#[test]
fn config_limits() {
    let dir = std::env::temp_dir().join(format!("skein-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("limits.toml");
    std::fs::write(&path, "[limits]\noracle_cap = 3\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(code(&skein(&["--config", p, "verify-oracle", "--cap", "4"])), 2);
    let out = skein(&["--config", p, "verify-oracle"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["cap"], 3);
    std::fs::write(&path, "[limits\n").unwrap();
    assert_eq!(code(&skein(&["--config", p, "verify-oracle"])), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn precision_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_skein"))
        .args(["gauss", "--n", "100", "--m", "3"])
        .env("SKEIN_PRECISION_BITS", "16")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}
