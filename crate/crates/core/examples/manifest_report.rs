//! Load a manifest from text, run every check and print the JSON report.

use coqe::harness::{emit_report, run_checks, Format, Manifest, RunOptions};

const MANIFEST: &str = r#"
name = "hyperbolic-plane-times-line"
checks = ["curvature", "sectional", "weyl", "bianchi"]

[chart]
coords = ["x", "y", "z"]

[metric]
"1,1" = "1"
"2,2" = "exp(2*x)"
"3,3" = "1"
"#;

fn main() {
    let m = Manifest::from_text(MANIFEST, Format::Toml).unwrap();
    let report = run_checks(&m, &RunOptions::default());
    let bytes = emit_report(&report, "json").unwrap();
    print!("{}", String::from_utf8(bytes).unwrap());
    std::process::exit(report.exit_code());
}
