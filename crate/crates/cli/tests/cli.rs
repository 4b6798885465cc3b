use std::process::{Command, Output};

use gifc_cli::{exit, ExperimentConfig};

fn gifc(args: &[&str], env_seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gifc"));
    cmd.args(args).env_remove("GIFC_SEED");
    if let Some(seed) = env_seed {
        cmd.env("GIFC_SEED", seed);
    }
    cmd.output().expect("run gifc")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data_rows(text: &str) -> Vec<&str> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .collect()
}

const SMALL: [&str; 4] = ["--n-sections", "500", "--blocks", "4"];

#[test]
fn joint_trellis_dump_has_32_rows() {
    let text = stdout(&gifc(
        &["trellis", "--scheme1", "conv:7,5", "--scheme2", "iud:2"],
        None,
    ));
    assert_eq!(
        text.lines().nth(1),
        Some("s_minus,s_plus,drive1,drive2,x1,x2")
    );
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 32);
    assert_eq!(rows[0], "0,0,0,00,++,++");
    let text = stdout(&gifc(
        &["trellis", "--only", "2", "--scheme2", "iud:2"],
        None,
    ));
    assert_eq!(data_rows(&text).len(), 4);
}

#[test]
fn estimate_is_reproducible() {
    let args = [&["estimate", "--seed", "9"][..], &SMALL].concat();
    let first = stdout(&gifc(&args, None));
    assert_eq!(first, stdout(&gifc(&args, None)));
    let rows = data_rows(&first);
    assert_eq!(rows.len(), 1);
    let fields: Vec<&str> = rows[0].split(',').collect();
    assert_eq!(fields[0], "estimate");
    assert_eq!(&fields[5..], ["4000", "4", "9"]);
}

#[test]
fn headers_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("exp.conf");
    std::fs::write(
        &file,
        "p1_db = 5.5\na = 0.25\nscheme1 = iud:1\nseed = 4\ntrials = 3\ncodes = 2\n",
    )
    .unwrap();
    let conf = file.to_str().unwrap();
    for command in [
        "trellis", "estimate", "region", "baseline", "lemma1", "lemma2",
    ] {
        let out_path = dir.path().join(format!("{command}.csv"));
        let args = [
            &[
                command,
                "--config",
                conf,
                "--p2-db",
                "3",
                "--output",
                out_path.to_str().unwrap(),
            ][..],
            &SMALL,
        ]
        .concat();
        let out = gifc(&args, None);
        assert!(
            out.status.success(),
            "{command}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let text = std::fs::read_to_string(&out_path).unwrap();
        let header = text.lines().next().unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with('#')).count(), 1);
        let (cmd, config) = ExperimentConfig::from_header(header).unwrap();
        assert_eq!(cmd.name(), command);
        let mut expected = ExperimentConfig::default();
        expected
            .apply_text(&std::fs::read_to_string(&file).unwrap())
            .unwrap();
        expected.p2_db = 3.0;
        expected.n_sections = 500;
        expected.blocks = 4;
        assert_eq!(config, expected);
    }
}

#[test]
fn seed_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("seed.conf");
    std::fs::write(&file, "seed = 1\n").unwrap();
    let conf = file.to_str().unwrap();
    let header_seed = |args: &[&str], env: Option<&str>| -> String {
        let text = stdout(&gifc(
            &[&["baseline", "--config", conf][..], args].concat(),
            env,
        ));
        text.split_whitespace()
            .find_map(|w| w.strip_prefix("seed="))
            .unwrap()
            .to_string()
    };
    assert_eq!(header_seed(&[], None), "1");
    assert_eq!(header_seed(&[], Some("2")), "2");
    assert_eq!(header_seed(&["--seed", "3"], Some("2")), "3");
}

#[test]
fn region_rows_are_labelled() {
    let text = stdout(&gifc(
        &[&["region", "--seed", "5"][..], &SMALL].concat(),
        None,
    ));
    let labels: Vec<&str> = data_rows(&text)
        .iter()
        .map(|r| r.split(',').next().unwrap())
        .collect();
    assert_eq!(&labels[..3], ["A", "B", "C"]);
    assert!(labels.contains(&"frontier/axis_r2") && labels.contains(&"frontier/axis_r1"));
    assert!(labels.iter().any(|l| l.starts_with("staircase/")));
}

#[test]
fn precise_prints_full_values() {
    let short = stdout(&gifc(&["baseline"], None));
    let full = stdout(&gifc(&["baseline", "--precise"], None));
    assert!(data_rows(&short)[0].contains(",0.950681,"));
    assert!(data_rows(&full)[0].contains(",0.9506811069257122,"));
}

#[test]
fn coding_lab_accepts_a_channel_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ic.txt");
    let ic = gifc_core::oracle::DiscreteIC::binary_flip(0.2, 0.1).unwrap();
    std::fs::write(&file, ic.to_string()).unwrap();
    let args = [
        "lemma1",
        "--seed",
        "2",
        "--ic-file",
        file.to_str().unwrap(),
        "--trials",
        "20",
        "--code-length",
        "4",
    ];
    let text = stdout(&gifc(&args, None));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
    let text = stdout(&gifc(
        &[
            "lemma2",
            "--seed",
            "2",
            "--codes",
            "5",
            "--code-length",
            "3",
        ],
        None,
    ));
    assert_eq!(data_rows(&text).len(), 15);
}

#[test]
fn failures_have_distinct_exit_codes() {
    let code = |args: &[&str]| {
        let out = gifc(args, None);
        assert_eq!(
            String::from_utf8_lossy(&out.stderr).lines().count(),
            1,
            "{args:?}"
        );
        out.status.code().unwrap()
    };
    assert_eq!(
        code(&["estimate", "--seed", "1", "--scheme1", "turbo:1"]),
        i32::from(exit::UNKNOWN_SCHEME)
    );
    assert_eq!(
        code(&["estimate", "--seed", "1", "--scheme2", "conv:7,8"]),
        i32::from(exit::INVALID_POLYNOMIAL)
    );
    assert_eq!(code(&["estimate"]), i32::from(exit::MISSING_SEED));
    assert_eq!(
        code(&["estimate", "--seed", "x"]),
        i32::from(exit::INVALID_CONFIG)
    );
    assert_eq!(
        code(&["estimate", "--seed", "1", "--blocks", "1"]),
        i32::from(exit::INVALID_CONFIG)
    );
    assert_eq!(
        code(&["baseline", "--config", "/no/such/file"]),
        i32::from(exit::IO)
    );
    assert_eq!(
        code(&["lemma1", "--seed", "1", "--code-length", "11"]),
        i32::from(exit::CHECK_FAILED)
    );
    let out = gifc(&["estimate", "--frobnicate"], None);
    assert_eq!(out.status.code(), Some(i32::from(exit::USAGE)));
    assert_eq!(
        gifc(&["estimate"], Some("nope")).status.code(),
        Some(i32::from(exit::INVALID_CONFIG))
    );
}
