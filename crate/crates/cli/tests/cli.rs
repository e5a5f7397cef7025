use std::process::{Command, Output};

fn satsec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satsec")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = satsec(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Column `name` of a single-row CSV.
fn field(csv: &str, name: &str) -> String {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    row[header.iter().position(|h| *h == name).unwrap()].to_string()
}

#[test]
fn identical_channels_have_zero_secrecy_capacity() {
    let out = stdout(&["capacity", "--gamma-g", "1", "--gamma-n", "1"]);
    assert_eq!(field(&out, "c_s"), "0");
    assert_eq!(field(&out, "positive"), "0");
}

#[test]
fn domain_errors_exit_nonzero() {
    let out = satsec(&["capacity", "--n0", "-1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("N0"));
    assert!(!satsec(&["geometry", "--rho-e", "0"]).status.success());
    assert!(!satsec(&["oracle", "--k", "6", "--k-prime", "6"]).status.success());
}

#[test]
fn unknown_figure_is_a_usage_error() {
    let out = satsec(&["reproduce", "--figure", "12"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11"), "{err}");
}

#[test]
fn figure_one_free_space_threshold_is_orbit_independent() {
    let out = stdout(&["reproduce", "--figure", "1"]);
    let thresholds: Vec<String> = out
        .lines()
        .skip(1)
        .filter(|l| l.contains(",2,0.5,"))
        .map(|l| l.rsplit(',').next().unwrap().to_string())
        .collect();
    assert_eq!(thresholds.len(), 3, "{thresholds:?}");
    assert!(thresholds.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn figure_ten_point_at_one_tenth() {
    let out = stdout(&["reproduce", "--figure", "10"]);
    assert!(out.starts_with("gamma_g,gamma_n,n,rho_sec,k_prime,s_star,log2_bound\n"));
    let row = out.lines().find(|l| l.starts_with("0.3,2,32400,") && l.contains(",3240,")).unwrap();
    let v: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
    assert!((v - -654.3816611140335).abs() < 1e-3, "{v}");
}

#[test]
fn code_round_trip_through_hex() {
    let enc = stdout(&[
        "code", "encode", "--k", "2", "--k-prime", "2", "--ecc", "hamming74", "--seed", "a0", "--message", "40",
        "--sacrifice", "c0",
    ]);
    let cw = field(&enc, "codeword");
    assert_eq!(cw, "b4");
    let dec = stdout(&["code", "decode", "--k", "2", "--k-prime", "2", "--ecc", "hamming74", "--seed", "a0", "--codeword", &cw]);
    assert_eq!(field(&dec, "message"), "40");
    assert_eq!(field(&dec, "status"), "ok");
    // One flipped bit (first bit of 0xb4) is corrected.
    let dec = stdout(&["code", "decode", "--k", "2", "--k-prime", "2", "--ecc", "hamming74", "--seed", "a0", "--codeword", "34"]);
    assert_eq!(field(&dec, "message"), "40");
    let h = stdout(&["code", "hash", "--k", "1", "--k-prime", "1", "--seed", "80", "--input", "c0"]);
    assert_eq!(field(&h, "hash"), "00");
}

#[test]
fn decode_from_channel_reals() {
    let dec = stdout(&["code", "decode", "--k", "1", "--k-prime", "1", "--seed", "80", "--reals", "0.9,-1.2"]);
    // y = (+, -) reads as bits (0, 1); hash = 0 ^ 1*1 = 1.
    assert_eq!(field(&dec, "message"), "80");
}

#[test]
fn simulate_is_deterministic_across_thread_counts() {
    let a = stdout(&["--threads", "1", "simulate", "--n0", "0.5", "--trials", "20000", "--master-seed", "42", "--json"]);
    let b = stdout(&["--threads", "4", "simulate", "--n0", "0.5", "--trials", "20000", "--master-seed", "42", "--json"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["trials"], 20000);
}

#[test]
fn config_file_sits_between_flags_and_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "gamma_g = 0.5\ngamma_n = 2.0\n").unwrap();
    let cfg = path.to_str().unwrap();
    let from_file = stdout(&["--config", cfg, "capacity"]);
    assert_eq!(field(&from_file, "gamma_g"), "0.5");
    assert_eq!(field(&from_file, "gamma_n"), "2");
    let overridden = stdout(&["--config", cfg, "capacity", "--gamma-g", "0.2"]);
    assert_eq!(field(&overridden, "gamma_g"), "0.2");
    assert_eq!(field(&overridden, "gamma_n"), "2");

    std::fs::write(&path, "gama_g = 0.5\n").unwrap();
    assert!(!satsec(&["--config", cfg, "capacity"]).status.success());
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bound.csv");
    let out = satsec(&["--out", path.to_str().unwrap(), "bound", "--n", "8192", "--gamma-g", "0.3", "--gamma-n", "2", "--k-prime", "819"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    let v: f64 = field(&text, "log2_bound").parse().unwrap();
    assert!((v - -164.5410976934427).abs() < 1e-3);
}

#[test]
fn oracle_reports_bound_ordering() {
    let out = stdout(&["oracle", "--gamma-g", "0.3", "--gamma-n", "2", "--k", "1", "--k-prime", "3"]);
    assert_eq!(field(&out, "bound_holds"), "1");
    let per_seed = stdout(&["oracle", "--gamma-g", "0.3", "--gamma-n", "2", "--k", "1", "--k-prime", "3", "--per-seed"]);
    assert_eq!(per_seed.lines().count(), 1 + 8);
}

#[test]
fn geometry_grid_and_point() {
    let out = stdout(&["geometry", "--theta-e", "2", "--a", "2", "--mu", "0.5"]);
    assert_eq!(field(&out, "gamma_g"), "0.125");
    let grid = stdout(&["geometry", "--grid-theta", "1:10:1", "--grid-ratio", "0.5:2:0.5"]);
    assert!(grid.starts_with("theta_deg,rho_ratio,gamma_g,protected\n"));
    assert_eq!(grid.lines().count(), 1 + 10 * 4);
    assert!(!satsec(&["geometry", "--grid-theta", "1:10:1"]).status.success());
}

#[test]
fn capacity_snr_sweep_and_densities() {
    let sweep = stdout(&["capacity", "--gamma-g", "0.5", "--snr-sweep", "-10:10:5"]);
    assert_eq!(sweep.lines().count(), 1 + 5);
    let dens = stdout(&["densities", "--gamma-g", "0.5", "--y-min", "-1", "--y-max", "1", "--y-step", "0.5"]);
    assert_eq!(dens.lines().count(), 1 + 5);
}
