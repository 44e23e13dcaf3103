//! The `coqe` binary: exit codes, renderings and manifest round trips.

use std::process::{Command, Output};

use coqe::harness::{fixture, Format, Manifest, RawManifest, FIXTURE_NAMES};
use proptest::prelude::*;

fn coqe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coqe")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    coqe(args).status.code().unwrap()
}

#[test]
fn exit_codes_follow_verdicts() {
    assert_eq!(code(&["report", "godel"]), 0, "flags alone exit 0");
    assert_eq!(code(&["verify", "flat-euclidean"]), 1);
    assert_eq!(code(&["curvature", "flat-minkowski"]), 0);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(code(&["curvature", "no-such-manifest"]), 2);
    assert_eq!(code(&["report", "godel", "--checks", "curvatur"]), 2);
    assert_eq!(code(&["verify", "flat-minkowski"]), 2);
    assert_eq!(code(&["sectional", "godel", "--plane", "1,0,0,0"]), 2);
    assert_eq!(code(&["curvature", "godel", "--sample-point", "x=0.5"]), 2);
    assert_eq!(code(&["report", "godel", "--json", "--checks", "cotton,nope"]), 2);
}

#[test]
fn input_errors_name_the_problem() {
    let dir = std::env::temp_dir().join(format!("coqe-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.toml");
    let text = fixture("godel").unwrap().replace("\"2,2\" = \"-k^2\"", "\"2,2\" = \"-w^2\"");
    std::fs::write(&path, text).unwrap();
    let out = coqe(&["curvature", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("metric 2,2") && err.contains("`w`"), "{err}");
}

#[test]
fn json_report_schema() {
    let out = coqe(&["--json", "classify", "einstein-sphere"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["conventions"]["trace"], serde_json::json!(["plain", "metric"]));
    assert_eq!(v["checks"][0]["name"], "classify");
    assert_eq!(v["checks"][0]["notes"][0], "class: Einstein");
}

#[test]
fn machine_reports_are_byte_stable() {
    let a = coqe(&["--json", "--seed", "7", "report", "godel", "--checks", "all"]).stdout;
    let b = coqe(&["--json", "--seed", "7", "report", "godel", "--checks", "all"]).stdout;
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn sectional_plane_and_sample_point() {
    let out = coqe(&["sectional", "round-sphere-4", "--plane", "1,0,0,0;0,1/sin(chi),0,0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.trim() == "1"), "{text}");
    assert_eq!(code(&["curvature", "godel", "--sample-point", "x=1/2,k=3"]), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn manifests_round_trip(k in 0usize..FIXTURE_NAMES.len(), json in any::<bool>(), num in -9i64..=9, den in 1i64..=9) {
        let fmt = if json { Format::Json } else { Format::Toml };
        let mut raw = RawManifest::parse(fixture(FIXTURE_NAMES[k]).unwrap(), Format::Toml).unwrap();
        let coord = raw.chart.coords[0].clone();
        raw.chart.sample.insert(coord, format!("{num}/{den}"));
        let text = raw.to_text(fmt).unwrap();
        let again = RawManifest::parse(&text, fmt).unwrap();
        prop_assert_eq!(&again, &raw);
        // a sample point may land on a coordinate singularity; both copies must agree on that
        match (Manifest::from_raw(raw), Manifest::from_raw(again)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.metric.matrix(), b.metric.matrix());
                prop_assert_eq!(a.checks, b.checks);
            }
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a.err(), b.err()),
        }
    }
}
