use std::path::Path;
use std::process::{Command, Output};

use orbitobs::adelic::{PowerLimitOutcome, PowerLimitTranscript, ZhatReport};
use orbitobs::elliptic::{EcSpectrumReport, TranslateOutcome, TranslateReport};
use orbitobs::order::{SpectrumReport, ZsigmondyReport};
use orbitobs::power::{LineIntersection, TrichotomyReport, TrichotomyVerdict};
use serde::de::DeserializeOwned;
use serde::Serialize;

const CURVE: &str = r#"{"a4":"0","a6":"-2","P":["3","5"]}"#;

fn run_env(args: &[&str], cache_env: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_orbitobs"));
    cmd.args(args).env_remove("ORBITOBS_CACHE");
    if let Some(p) = cache_env {
        cmd.env("ORBITOBS_CACHE", p);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_env(args, None)
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

/// Parses stdout as `T` and checks that re-serializing gives the same JSON.
fn round_trip<T: DeserializeOwned + Serialize>(args: &[&str]) -> T {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["schema_version"], 1, "{text}");
    let typed: T = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_value(&typed).unwrap(), value);
    typed
}

#[test]
fn reports_round_trip() {
    let r: SpectrumReport = round_trip(&["order-spectrum", "--lambda", "2", "--nmax", "12", "--pmax", "1000000"]);
    assert_eq!(r.missing, vec![1, 6]);
    assert_eq!(r.proven_exceptional, vec![1, 6]);
    assert!(r.verify());

    let r: SpectrumReport = round_trip(&["order-spectrum", "--lambda", "2", "--nmax", "3", "--pmax", "10"]);
    assert_eq!(r.realized.keys().copied().collect::<Vec<_>>(), vec![2, 3]);
    assert_eq!(r.missing, vec![1]);

    let r: ZsigmondyReport = round_trip(&["zsigmondy", "--lambda", "2", "--n", "4", "--pmax", "100"]);
    assert_eq!(r.witnesses.iter().map(|c| c.p).collect::<Vec<_>>(), vec![5]);

    let r: TrichotomyReport = round_trip(&["trichotomy", "--point", "2,4,1", "--curve", "1,1,2,1", "--d", "2"]);
    assert_eq!(
        r.verdict,
        TrichotomyVerdict::CaseII {
            entry_r: 0,
            preperiod_i: 0,
            period_q: 1
        }
    );
    let r: TrichotomyReport =
        round_trip(&["trichotomy", "--point", "2,3,1", "--curve", "1,1,1,1", "--d", "2", "--orbit", "3"]);
    assert!(matches!(r.verdict, TrichotomyVerdict::CaseI { ref intersection_exponents, .. } if intersection_exponents.is_empty()));
    assert_eq!(r.orbit.unwrap().len(), 4);

    let r: LineIntersection = round_trip(&["line-intersect", "--point", "2,1,1", "--line", "1,1,-5", "--d", "2"]);
    assert_eq!(r.exponents, vec![1]);

    let t: PowerLimitTranscript = round_trip(&["prop4", "--lambda", "2", "--xi", "3", "--d", "2"]);
    assert!(t.replay());
    assert_eq!(t.witnesses[0].p, 5);
    let t: PowerLimitTranscript = round_trip(&["prop4", "--lambda", "-1", "--xi", "1", "--d", "2"]);
    assert!(matches!(t.outcome, PowerLimitOutcome::RootOfUnityCase { matching_r: Some(1), .. }));

    let r: ZhatReport = round_trip(&["zhat", "--d", "6", "--m", "5"]);
    assert!(r.is_valid() && !r.possible);
    let r: ZhatReport = round_trip(&["zhat-limit", "--d", "2", "--m", "-8"]);
    assert!(r.is_valid());

    let r: EcSpectrumReport = round_trip(&[
        "ec-spectrum",
        "--curve",
        r#"{"a4":0,"a6":-2}"#,
        "--point",
        r#"["3","5"]"#,
        "--nmax",
        "8",
        "--pmax",
        "10000",
    ]);
    assert!(r.verify());
    assert_eq!(r.realized[&2].p, 5);

    let r: TranslateReport = round_trip(&["ec-translate", "--curve", CURVE, "--tbar", "inf", "--d", "2"]);
    assert!(matches!(r.outcome, TranslateOutcome::TbarForcedZero { ref witnesses } if witnesses.len() == 3));
    assert!(r.replay());
}

#[test]
fn warm_and_cold_cache_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("factors.json");
    let args = ["order-spectrum", "--lambda", "3/2", "--nmax", "30", "--pmax", "100000"];
    let plain = run(&args);
    let cold = run_env(&args, Some(&cache));
    assert!(cache.exists());
    let warm = run_env(&args, Some(&cache));
    assert_eq!(cold.status.code(), plain.status.code());
    assert_eq!(cold.stdout, plain.stdout);
    assert_eq!(warm.stdout, cold.stdout);

    // --cache wins over the environment variable
    let other = dir.path().join("other.json");
    let flag = run_env(
        &["--cache", other.to_str().unwrap(), "prop4", "--lambda", "5", "--xi", "1", "--d", "3"],
        Some(&cache),
    );
    assert_eq!(flag.status.code(), Some(0));
    assert!(other.exists());
}

#[test]
fn corrupt_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("factors.json");
    // a wrong factorization of 2^12 - 1 = 3^2 * 5 * 7 * 13
    std::fs::write(&cache, r#"{"version":1,"entries":{"4095":[["4095",1]],"65":[["5",1],["7",1]]}}"#).unwrap();
    let args = ["order-spectrum", "--lambda", "2", "--nmax", "12", "--pmax", "1000000"];
    assert_eq!(run_env(&args, Some(&cache)).stdout, run(&args).stdout);
}

#[test]
fn config_file_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "output_format = \"csv\"\nprime_budget = 100000\n").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "order-spectrum", "--lambda", "2", "--nmax", "3", "--pmax", "10"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n,status,p,proven_exceptional\n1,missing,,true\n2,realized,3,\n3,realized,7,\n"
    );
    let text = run(&["--format", "text", "zhat", "--d", "2", "--m", "0"]);
    assert!(String::from_utf8(text.stdout).unwrap().contains("p = 3"));
    std::fs::write(&cfg, "no_such_key = 1\n").unwrap();
    assert_eq!(code(&["--config", cfg.to_str().unwrap(), "zhat", "--d", "2", "--m", "0"]), 1);
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["zhat", "--d", "3", "--m", "9"], 0),
        (&["order-spectrum", "--lambda", "2", "--nmax", "12", "--pmax", "1000000"], 0),
        (&["trichotomy", "--point", "-2,1,1", "--curve", "1,-8,1,1", "--d", "3"], 0),
        // invalid input
        (&["order-spectrum", "--lambda", "1", "--nmax", "3", "--pmax", "10"], 1),
        (&["order-spectrum", "--lambda", "0", "--nmax", "3", "--pmax", "10"], 1),
        (&["order-spectrum", "--lambda", "2/0", "--nmax", "3", "--pmax", "10"], 1),
        (&["trichotomy", "--point", "1,1,1", "--curve", "1,1,2,1", "--d", "2"], 1),
        (&["trichotomy", "--point", "2,3,1", "--curve", "1,1,1,1", "--d", "1"], 1),
        (&["trichotomy", "--point", "0,0,0", "--curve", "1,1,1,1", "--d", "2"], 1),
        (&["line-intersect", "--point", "2,3,5", "--line", "1,1,1", "--d", "2"], 1),
        (&["prop4", "--lambda", "2", "--xi", "0", "--d", "2"], 1),
        (&["zhat", "--d", "1", "--m", "3"], 1),
        (&["ec-spectrum", "--curve", r#"{"a4":"0","a6":"4","P":["0","2"]}"#, "--nmax", "5", "--pmax", "100"], 1),
        (&["ec-spectrum", "--curve", r#"{"a4":"0","a6":"-2","P":["1","1"]}"#, "--nmax", "5", "--pmax", "100"], 1),
        (&["ec-spectrum", "--curve", r#"{"a4":"0","a6":"0","P":["0","0"]}"#, "--nmax", "5", "--pmax", "100"], 1),
        (&["prop4", "--lambda", "2", "--xi", "3", "--d", "2", "--format", "csv"], 1),
        (&["no-such-command"], 1),
        // budget exhaustion
        (&["order-spectrum", "--lambda", "2", "--nmax", "31", "--pmax", "1000"], 2),
        (&["zsigmondy", "--lambda", "2", "--n", "67", "--pmax", "1000", "--factor-effort", "1"], 2),
        (&["trichotomy", "--point", "3,1,1", "--curve", "1,1,1,1", "--d", "2", "--orbit", "30"], 2),
        (&["prop4", "--lambda", "2", "--xi", "1", "--d", "2", "--witnesses", "40", "--prime-budget", "200"], 2),
        (&["ec-translate", "--curve", CURVE, "--tbar", "inf", "--d", "2", "--witnesses", "30", "--prime-budget", "500"], 2),
    ];
    for (args, want) in cases {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(*want),
            "{args:?}: stderr {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    assert_eq!(code(&["--help"]), 0);
}
