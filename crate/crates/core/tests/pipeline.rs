use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use satsec_core::bits::BitWord;
use satsec_core::channel::{substream, BpskSymbol, StreamRole, WiretapChannelParams};
use satsec_core::figures::{figure, rate_sweep};
use satsec_core::finite_length::{min_leakage_bound, CodeParams};
use satsec_core::geometry::{gamma_g, GeometryConfig};
use satsec_core::secrecy_capacity::secrecy_capacity;
use satsec_core::sim::{exact_leakage, run_reliability, EveQuantizer, ReliabilityOptions, ReliabilityReport};
use satsec_core::wiretap_code::{ecc_by_name, ToeplitzSeed, WiretapCode, ECC_NAMES};

#[test]
fn geometry_feeds_capacity_and_bound() {
    let cfg = GeometryConfig { theta_e: 2.0, a: 1.0, mu: 0.6, ..GeometryConfig::default() };
    let gg = gamma_g(&cfg).unwrap();
    assert!((gg - 0.3).abs() < 1e-12);
    let p = WiretapChannelParams::new(gg, 2.0, 1.0).unwrap();
    let cap = secrecy_capacity(&p).unwrap();
    assert!(cap.c_s > 0.0);
    let b = min_leakage_bound(&CodeParams::from_rho_sec(8192, 0.1).unwrap(), &p, 400).unwrap();
    assert!((b.log2_bound - -164.5410976934427).abs() < 1e-3);
}

#[test]
fn hex_serialized_codewords_survive_noisy_transmission() {
    let (k, kp) = (8, 4);
    let ecc = ecc_by_name("hamming74", k + kp).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let seed = ToeplitzSeed::random(k, kp, &mut rng);
    let seed_hex = seed.bits().to_hex();
    let seed = ToeplitzSeed(BitWord::from_hex(&seed_hex, k + kp - 1).unwrap());
    let code = WiretapCode::new(k, kp, &seed, ecc.as_ref()).unwrap();

    let m = BitWord::from_hex("a5", 8).unwrap();
    let l = BitWord::random(kp, &mut rng);
    let c = code.encode(&m, &l).unwrap();
    let c = BitWord::from_hex(&c.to_hex(), c.len()).unwrap();

    let bob = WiretapChannelParams::new(1.0, 1.0, 0.05).unwrap().bob();
    let mut noise = substream(1, 0, StreamRole::Bob);
    let y: Vec<f64> = c.iter().map(|b| bob.sample(BpskSymbol::from_bit(b), &mut noise)).collect();
    assert_eq!(code.decode(&y).unwrap().to_hex(), "a5");
}

#[test]
fn every_registered_ecc_runs_end_to_end() {
    let p = WiretapChannelParams::new(1.0, 1.0, 1e-12).unwrap();
    for name in ECC_NAMES {
        let ecc = ecc_by_name(name, 8).unwrap();
        let code = CodeParams::new(ecc.block_len(), 5, 3).unwrap();
        let r = run_reliability(&code, ecc.as_ref(), &p, 2000, 7, &ReliabilityOptions::default()).unwrap();
        assert_eq!(r.frame_errors, 0, "{name}");
    }
}

#[test]
fn reliability_report_json_fields() {
    let p = WiretapChannelParams::new(1.0, 1.0, 0.5).unwrap();
    let code = CodeParams::new(4, 4, 0).unwrap();
    let ecc = ecc_by_name("identity", 4).unwrap();
    let r = run_reliability(&code, ecc.as_ref(), &p, 3000, 11, &ReliabilityOptions::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    for field in [
        "master_seed", "n", "k", "k_prime", "ecc", "trials", "bit_errors", "frame_errors",
        "decode_failures", "ber", "fer", "ber_ci95", "fer_ci95",
    ] {
        assert!(v.get(field).is_some(), "missing {field}");
    }
    let back: ReliabilityReport = serde_json::from_value(v).unwrap();
    assert_eq!(back, r);
    assert!(r.bit_errors <= r.trials * 4 && r.frame_errors <= r.trials);
}

#[test]
fn oracle_bound_ordering_on_tiny_family() {
    for (gg, gn) in [(0.3, 2.0), (0.5, 1.0), (0.8, 1.0)] {
        let p = WiretapChannelParams::new(gg, gn, 1.0).unwrap();
        let qz = EveQuantizer::default_for(&p);
        for (k, kp) in [(1, 2), (2, 2), (2, 3)] {
            let n = k + kp;
            let ecc = ecc_by_name("identity", n).unwrap();
            let r = exact_leakage(&CodeParams::new(n, k, kp).unwrap(), ecc.as_ref(), &qz, &p, 200).unwrap();
            assert!(r.exact_leak_bits >= 0.0 && r.exact_leak_bits <= k as f64);
            assert!(r.bound_holds(), "({gg},{gn}) k={k} k'={kp}: {} > {}", r.exact_leak_bits, r.bound_bits);
        }
    }
}

#[test]
fn figure_csv_round_trip_through_csv_reader() {
    let t = figure(4).unwrap();
    let text = t.to_csv_string();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["gamma_g", "gamma_n", "c_bob", "c_eve", "c_s"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), t.rows.len());
    for r in rows {
        let c_s: f64 = r[4].parse().unwrap();
        assert!((0.0..=1.0).contains(&c_s));
    }
}

#[test]
fn dvb_s2x_sweep_is_monotone_in_sacrifice_rate() {
    let t = rate_sweep(32_400, &[(0.3, 2.0)]).unwrap();
    let b = t.column_f64("log2_bound").unwrap();
    assert_eq!(b.len(), 61);
    assert!(b.windows(2).all(|w| w[1] <= w[0] + 1e-9));
    let kp = t.column_f64("k_prime").unwrap();
    let at = kp.iter().position(|&v| v == 3240.0).unwrap();
    assert!((b[at] - -654.3816611140335).abs() < 1e-3);
}

#[test]
fn substreams_do_not_depend_on_draw_order() {
    use rand::Rng;
    let a: u64 = substream(5, 17, StreamRole::Eve).random();
    let _ = substream(5, 16, StreamRole::Eve).random::<u64>();
    let b: u64 = substream(5, 17, StreamRole::Eve).random();
    assert_eq!(a, b);
}
