use std::io::Write;
use std::process::{Command, Output};

fn cesaro(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cesaro"))
        .args(args)
        .env_remove("CESARO_CONFIG")
        .current_dir(env!("CARGO_TARGET_TMPDIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn eval_examples() {
    let o = cesaro(&["zeta", "--s", "-1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("-0.0833333333333"), "{}", stdout(&o));
    assert_eq!(stdout(&cesaro(&["gamma", "--z", "3"])), "2\n");
    let g4: f64 = stdout(&cesaro(&["gamma", "--z", "4"])).trim().parse().unwrap();
    assert!((g4 - 6.0).abs() < 1e-13);
    assert_eq!(stdout(&cesaro(&["hzeta", "--z0", "0.5", "--s", "0"])), "-1\n");
    assert_eq!(stdout(&cesaro(&["zeta", "--s", "0"])), "-0.5\n");
    assert_eq!(stdout(&cesaro(&["finite-sum", "--kind", "mono:2", "--upper", "10"])), "385\n");
    let o = cesaro(&["rsum", "--kind", "log", "--z0", "0", "--dir", "plus"]);
    let text = stdout(&o);
    assert!(text.starts_with("0.91893853320467"), "{text}");
    assert!(text.contains("tail_estimate"));
}

#[test]
fn eval_json() {
    let o = cesaro(&["--format", "json", "gamma", "--z", "0.5"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!((v["re"].as_f64().unwrap() - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    assert_eq!(v["command"], "gamma");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&cesaro(&["zeta", "--s", "1"])), 3);
    assert_eq!(code(&cesaro(&["gamma", "--z", "-2"])), 3);
    assert_eq!(code(&cesaro(&["gamma", "--z", "1+"])), 2);
    assert_eq!(code(&cesaro(&["rsum", "--kind", "sine", "--z0", "1"])), 2);
    assert_eq!(code(&cesaro(&["verify", "nosuch"])), 2);
    assert_eq!(code(&cesaro(&["--precision", "12", "zeta", "--s", "2"])), 2);
    assert_eq!(code(&cesaro(&["log-constant", "--z0", "0.5+0.3i", "--strip", "parameter"])), 4);
    assert_eq!(code(&cesaro(&["log-constant", "--z0", "0.5+0.3i"])), 0);
    assert_eq!(code(&cesaro(&["--tol", "1e-30", "verify", "reflection"])), 1);
}

#[test]
fn verify_suites_pass() {
    for suite in ["reflection", "kernel", "dilation", "staircase-gamma"] {
        let o = cesaro(&["verify", suite]);
        assert_eq!(code(&o), 0, "{suite}: {}", stdout(&o));
    }
}

#[test]
fn verify_json_rows() {
    let o = cesaro(&["--format", "json", "verify", "reflection"]);
    let rows: Vec<serde_json::Value> =
        stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 20);
    let mut ids = Vec::new();
    for r in &rows {
        assert_eq!(r["suite"], "reflection");
        assert!(r["residual"].as_f64().unwrap() < 1e-8);
        assert_eq!(r["tol"].as_f64().unwrap(), 1e-8);
        assert_eq!(r["pass"], true);
        ids.push(r["case"].as_str().unwrap().to_string());
    }
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn output_is_deterministic() {
    let a = cesaro(&["--seed", "5", "--format", "csv", "verify", "duplication"]);
    let b = cesaro(&["--seed", "5", "--format", "csv", "verify", "duplication"]);
    let c = cesaro(&["--seed", "6", "--format", "csv", "verify", "duplication"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let t1 = cesaro(&["trace", "--kind", "staircase", "--to", "20"]);
    let t2 = cesaro(&["trace", "--kind", "staircase", "--to", "20"]);
    assert_eq!(t1.stdout, t2.stdout);
}

fn parse_csv(text: &str) -> Vec<Vec<f64>> {
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t,z_re,z_im,psum_re,psum_im,averaged_re,averaged_im");
    lines
        .map(|l| {
            let cols: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            assert_eq!(cols.len(), 7);
            cols
        })
        .collect()
}

#[test]
fn trace_zeta_zero_is_floor() {
    let o = cesaro(&["trace", "--kind", "power:0", "--z0", "0.25", "--to", "10", "--step", "0.3"]);
    assert_eq!(code(&o), 0);
    for row in parse_csv(&stdout(&o)) {
        assert_eq!(row[3], row[0].floor());
        assert_eq!(row[1], 0.25 + row[0]);
    }
}

#[test]
fn trace_staircase_average_near_minus_gamma() {
    let o = cesaro(&["trace", "--kind", "staircase", "--h", "0.001", "--to", "100", "--step", "1"]);
    let rows = parse_csv(&stdout(&o));
    let last = rows.last().unwrap();
    assert_eq!(last[0], 100.0);
    assert!((last[5] + 0.5772).abs() < 0.03, "{}", last[5]);
    // fields carry 17 significant digits
    let text = stdout(&o);
    let field = text.lines().nth(2).unwrap().split(',').next().unwrap();
    assert_eq!(field.split('e').next().unwrap().replace(['.', '-'], "").len(), 17);
}

#[test]
fn trace_errors() {
    assert_eq!(code(&cesaro(&["trace", "--kind", "log", "--from", "3", "--to", "3"])), 2);
    assert_eq!(code(&cesaro(&["trace", "--kind", "log", "--from", "-1", "--to", "3"])), 2);
    assert_eq!(code(&cesaro(&["trace", "--kind", "log", "--z0", "-2", "--to", "5"])), 3);
    // the pole at z = 0 lies beyond the range here
    assert_eq!(code(&cesaro(&["trace", "--kind", "log", "--z0", "-4", "--to", "3"])), 0);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# test config\noutput_format = json\nprecision = 17").unwrap();
    drop(f);
    let run = |extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_cesaro"))
            .args(extra)
            .env("CESARO_CONFIG", &path)
            .current_dir(dir.path())
            .output()
            .unwrap()
    };
    let o = run(&["zeta", "--s", "2"]);
    assert!(stdout(&o).starts_with('{'));
    let o = run(&["--format", "human", "zeta", "--s", "2"]);
    assert!(stdout(&o).starts_with("1.64493406684822"));
    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "colour = blue\n").unwrap();
    let o = run(&["--config", bad.to_str().unwrap(), "zeta", "--s", "2"]);
    assert_eq!(code(&o), 2);
}
