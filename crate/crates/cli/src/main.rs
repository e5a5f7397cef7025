mod config;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use satsec_core::bits::BitWord;
use satsec_core::figures::{self, linspace_step};
use satsec_core::finite_length::{CodeParams, ExponentCurve};
use satsec_core::geometry::{alpha, beta, eve_stronger, gamma_g, protected_region_map, GeometryConfig, RegionParams};
use satsec_core::report::{Cell, Table};
use satsec_core::secrecy_capacity::{c_separation_condition, capacity_curves, positivity_condition, secrecy_capacity};
use satsec_core::sim::{exact_leakage, run_reliability, EveQuantizer, ReliabilityOptions};
use satsec_core::wiretap_code::{bpsk, ecc_by_name, hash, ToeplitzMatrix, ToeplitzSeed, WiretapCode};
use satsec_core::{BpskSymbol, WiretapChannelParams};

use config::Config;

#[derive(Debug, Parser)]
#[command(name = "satsec", version, about = "Secrecy capacity, leakage bounds and wiretap coding for BPSK satellite links")]
struct Cli {
    /// Flat TOML file with defaults for any long flag (`gamma_g = 0.3`, ...).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Maximum worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eve's amplitude coefficient for one geometry, or a protected-region grid.
    Geometry(GeometryArgs),
    /// Bob, Eve and secrecy capacities.
    Capacity(CapacityArgs),
    /// Conditional and mixture output densities of both receivers.
    Densities(DensityArgs),
    /// Minimised finite-length leakage bound.
    Bound(BoundArgs),
    /// Wiretap encode, decode or hash with hex I/O.
    Code(CodeArgs),
    /// Monte-Carlo reliability run over Bob's channel.
    Simulate(SimulateArgs),
    /// Exact leakage of a tiny code against the bound.
    Oracle(OracleArgs),
    /// Write the data behind one figure.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
struct ChannelArgs {
    #[arg(long)]
    gamma_g: Option<f64>,
    #[arg(long)]
    gamma_n: Option<f64>,
    #[arg(long)]
    n0: Option<f64>,
    #[arg(long)]
    e0: Option<f64>,
}

impl ChannelArgs {
    fn resolve(&self, cfg: &Config) -> Result<WiretapChannelParams> {
        let d = WiretapChannelParams::default();
        let p = WiretapChannelParams {
            gamma_g: pick(self.gamma_g, cfg.f64("gamma_g")?, d.gamma_g),
            gamma_n: pick(self.gamma_n, cfg.f64("gamma_n")?, d.gamma_n),
            n0: pick(self.n0, cfg.f64("n0")?, d.n0),
            e0: pick(self.e0, cfg.f64("e0")?, d.e0),
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct GeometryArgs {
    /// Bob distance (km).
    #[arg(long)]
    rho_b: Option<f64>,
    /// Eve distance (km).
    #[arg(long)]
    rho_e: Option<f64>,
    /// Eve off-boresight angle (degrees).
    #[arg(long)]
    theta_e: Option<f64>,
    /// Eve propagation exponent.
    #[arg(long)]
    r: Option<f64>,
    /// Antenna decay exponent.
    #[arg(long)]
    a: Option<f64>,
    /// Relative antenna gain in [0, 1].
    #[arg(long)]
    mu: Option<f64>,
    /// Region map instead of a single point: angle grid `start:stop:step` (degrees).
    #[arg(long, value_name = "START:STOP:STEP", allow_hyphen_values = true)]
    grid_theta: Option<String>,
    /// Distance-ratio grid `start:stop:step` for the region map.
    #[arg(long, value_name = "START:STOP:STEP", allow_hyphen_values = true)]
    grid_ratio: Option<String>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct CapacityArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Sweep Bob's SNR `E0^2/N0` in dB, `start:stop:step`.
    #[arg(long, value_name = "START:STOP:STEP", allow_hyphen_values = true)]
    snr_sweep: Option<String>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct DensityArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    #[arg(long)]
    y_min: Option<f64>,
    #[arg(long)]
    y_max: Option<f64>,
    #[arg(long)]
    y_step: Option<f64>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct BoundArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Block length.
    #[arg(long)]
    n: Option<usize>,
    /// Sacrifice bits.
    #[arg(long, conflicts_with = "rho_sec")]
    k_prime: Option<usize>,
    /// Sacrifice rate `k'/n`.
    #[arg(long)]
    rho_sec: Option<f64>,
    /// Number of `s` samples on (0, 1].
    #[arg(long)]
    s_grid: Option<usize>,
    /// Emit the whole `(s, bound)` curve instead of the minimum.
    #[arg(long)]
    curve: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CodeOp {
    Encode,
    Decode,
    Hash,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct CodeArgs {
    #[arg(value_enum)]
    op: CodeOp,
    /// Message bits.
    #[arg(long)]
    k: Option<usize>,
    /// Sacrifice bits.
    #[arg(long)]
    k_prime: Option<usize>,
    /// Error-correcting code.
    #[arg(long)]
    ecc: Option<String>,
    /// Hash seed, hex (`k + k' - 1` bits).
    #[arg(long)]
    seed: Option<String>,
    /// Message, hex (encode).
    #[arg(long)]
    message: Option<String>,
    /// Sacrifice bits, hex (encode). Drawn from `--master-seed` if absent.
    #[arg(long)]
    sacrifice: Option<String>,
    /// Seed for drawing sacrifice bits.
    #[arg(long)]
    master_seed: Option<u64>,
    /// Hard-decision codeword, hex (decode).
    #[arg(long, conflicts_with = "reals")]
    codeword: Option<String>,
    /// Channel outputs, comma-separated reals (decode).
    #[arg(long, allow_hyphen_values = true)]
    reals: Option<String>,
    /// Hash input `(first k, last k')`, hex (hash).
    #[arg(long)]
    input: Option<String>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct SimulateArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    k_prime: Option<usize>,
    #[arg(long)]
    ecc: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    master_seed: Option<u64>,
    /// Use this hash seed (hex) for every trial.
    #[arg(long)]
    fixed_hash_seed: Option<String>,
    /// Print the JSON summary instead of a CSV row.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct OracleArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    k_prime: Option<usize>,
    #[arg(long)]
    ecc: Option<String>,
    /// Quantizer levels for Eve's outputs.
    #[arg(long)]
    levels: Option<usize>,
    /// Quantizer half-range; defaults to `gamma_g E0 + 4 sqrt(gamma_n N0)`.
    #[arg(long)]
    range: Option<f64>,
    #[arg(long)]
    s_grid: Option<usize>,
    /// Emit per-seed leakage rows.
    #[arg(long)]
    per_seed: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    #[arg(long, value_parser = ["1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11"])]
    figure: String,
}

fn pick<T>(flag: Option<T>, config: Option<T>, default: T) -> T {
    flag.or(config).unwrap_or(default)
}

fn parse_range(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<f64> = text
        .split(':')
        .map(|p| p.trim().parse::<f64>().with_context(|| format!("bad number {p:?} in range {text:?}")))
        .collect::<Result<_>>()?;
    let [start, stop, step] = parts[..] else {
        bail!("range {text:?} must be START:STOP:STEP");
    };
    if !(step > 0.0) || stop < start {
        bail!("range {text:?} needs STEP > 0 and STOP >= START");
    }
    Ok(linspace_step(start, stop, step))
}

fn parse_hex(what: &str, hex: Option<&str>, len: usize) -> Result<BitWord> {
    let hex = hex.with_context(|| format!("--{what} is required"))?;
    BitWord::from_hex(hex, len).with_context(|| format!("--{what}"))
}

fn geometry(args: &GeometryArgs, cfg: &Config) -> Result<Table> {
    let d = GeometryConfig::default();
    let rho_b = pick(args.rho_b, cfg.f64("rho_b")?, d.rho_b);
    let r = pick(args.r, cfg.f64("r")?, d.r);
    let a = pick(args.a, cfg.f64("a")?, d.a);
    let mu = pick(args.mu, cfg.f64("mu")?, d.mu);
    let grid_theta = args.grid_theta.clone().or(cfg.string("grid_theta")?);
    let grid_ratio = args.grid_ratio.clone().or(cfg.string("grid_ratio")?);
    if grid_theta.is_some() || grid_ratio.is_some() {
        let (Some(gt), Some(gr)) = (grid_theta, grid_ratio) else {
            bail!("a region map needs both --grid-theta and --grid-ratio");
        };
        let params = RegionParams { rho_b, r, a, mu };
        let mut t = Table::new(&["theta_deg", "rho_ratio", "gamma_g", "protected"]);
        for c in protected_region_map(&parse_range(&gt)?, &parse_range(&gr)?, &params)? {
            t.push(vec![c.theta_deg.into(), c.rho_ratio.into(), c.gamma_g.into(), c.protected.into()]);
        }
        return Ok(t);
    }
    let g = GeometryConfig {
        rho_b,
        rho_e: pick(args.rho_e, cfg.f64("rho_e")?, d.rho_e),
        theta_e: pick(args.theta_e, cfg.f64("theta_e")?, d.theta_e),
        r,
        a,
        mu,
        ..d
    };
    g.validate()?;
    let gg = gamma_g(&g)?;
    let mut t = Table::new(&[
        "rho_b", "rho_e", "theta_e", "r", "a", "mu", "alpha", "beta", "gamma_g", "eve_stronger", "protected", "h_bob",
    ]);
    t.push(vec![
        g.rho_b.into(),
        g.rho_e.into(),
        g.theta_e.into(),
        g.r.into(),
        g.a.into(),
        g.mu.into(),
        alpha(g.theta_e, g.a).into(),
        beta(g.r, g.rho_b, g.rho_e)?.into(),
        gg.into(),
        eve_stronger(&g)?.into(),
        (gg < 1.0).into(),
        g.bob_path_coefficient()?.into(),
    ]);
    Ok(t)
}

fn capacity(args: &CapacityArgs, cfg: &Config) -> Result<Table> {
    let p = args.channel.resolve(cfg)?;
    if let Some(text) = args.snr_sweep.clone().or(cfg.string("snr_sweep")?) {
        let snr: Vec<f64> = parse_range(&text)?.iter().map(|db| 10f64.powf(db / 10.0)).collect();
        let mut t = Table::new(&["snr_db", "c_bob", "c_eve", "c_s", "gauss_ref", "bsc_ref"]);
        for row in capacity_curves(&snr, &p)? {
            t.push(vec![
                row.snr_db.into(),
                row.c_bob.into(),
                row.c_eve.into(),
                row.c_s.into(),
                row.gauss_ref.into(),
                row.bsc_ref.into(),
            ]);
        }
        return Ok(t);
    }
    let c = secrecy_capacity(&p)?;
    let mut t = Table::new(&[
        "gamma_g", "gamma_n", "n0", "e0", "c_bob", "c_eve", "c_s", "positive", "c_separated",
    ]);
    t.push(vec![
        p.gamma_g.into(),
        p.gamma_n.into(),
        p.n0.into(),
        p.e0.into(),
        c.c_bob.into(),
        c.c_eve.into(),
        c.c_s.into(),
        positivity_condition(&p).into(),
        c_separation_condition(&p).into(),
    ]);
    Ok(t)
}

fn densities(args: &DensityArgs, cfg: &Config) -> Result<Table> {
    let p = args.channel.resolve(cfg)?;
    let lo = pick(args.y_min, cfg.f64("y_min")?, -5.0);
    let hi = pick(args.y_max, cfg.f64("y_max")?, 5.0);
    let step = pick(args.y_step, cfg.f64("y_step")?, 0.05);
    let ys = parse_range(&format!("{lo}:{hi}:{step}"))?;
    let (bob, eve) = (p.bob(), p.eve());
    let mut t = Table::new(&["y", "bob_plus", "bob_minus", "bob_mixture", "eve_plus", "eve_minus", "eve_mixture"]);
    for y in ys {
        t.push(vec![
            y.into(),
            bob.density(y, BpskSymbol::Plus).into(),
            bob.density(y, BpskSymbol::Minus).into(),
            bob.mixture(y).into(),
            eve.density(y, BpskSymbol::Plus).into(),
            eve.density(y, BpskSymbol::Minus).into(),
            eve.mixture(y).into(),
        ]);
    }
    Ok(t)
}

fn bound(args: &BoundArgs, cfg: &Config) -> Result<Table> {
    let p = args.channel.resolve(cfg)?;
    let n = pick(args.n, cfg.usize("n")?, figures::FIG10_N);
    let resolution = pick(args.s_grid, cfg.usize("s_grid")?, figures::S_RESOLUTION);
    let code = match (args.k_prime.or(cfg.usize("k_prime")?), args.rho_sec) {
        (_, Some(rho)) => CodeParams::from_rho_sec(n, rho)?,
        (Some(kp), None) => CodeParams::new(n, n.checked_sub(kp).context("k' exceeds n")?, kp)?,
        (None, None) => CodeParams::from_rho_sec(n, cfg.f64("rho_sec")?.unwrap_or(0.1))?,
    };
    let b = ExponentCurve::new(&p, resolution)?.minimize(code.n, code.k_prime)?;
    if args.curve {
        let mut t = Table::new(&["s", "log2_bound"]);
        for (s, v) in b.curve {
            t.push(vec![s.into(), v.into()]);
        }
        return Ok(t);
    }
    let mut t = Table::new(&[
        "gamma_g", "gamma_n", "n0", "e0", "n", "k", "k_prime", "rho_sec", "s_star", "log2_bound", "at_limit",
    ]);
    t.push(vec![
        p.gamma_g.into(),
        p.gamma_n.into(),
        p.n0.into(),
        p.e0.into(),
        code.n.into(),
        code.k.into(),
        code.k_prime.into(),
        code.rho_sec().into(),
        b.s_star.into(),
        b.log2_bound.into(),
        b.at_limit.into(),
    ]);
    Ok(t)
}

fn code(args: &CodeArgs, cfg: &Config) -> Result<Table> {
    let k = args.k.or(cfg.usize("k")?).context("--k is required")?;
    let kp = args.k_prime.or(cfg.usize("k_prime")?).unwrap_or(0);
    let ecc_name = args.ecc.clone().or(cfg.string("ecc")?).unwrap_or_else(|| "identity".into());
    let ecc = ecc_by_name(&ecc_name, k + kp)?;
    let seed_len = ToeplitzSeed::len_for(k, kp);
    let seed_hex = args.seed.clone().or(cfg.string("seed")?);
    let seed = ToeplitzSeed(parse_hex("seed", seed_hex.as_deref(), seed_len)?);
    let wc = WiretapCode::new(k, kp, &seed, ecc.as_ref())?;
    let seed_hex = seed.bits().to_hex();
    match args.op {
        CodeOp::Encode => {
            let m = parse_hex("message", args.message.as_deref(), k)?;
            let l = match &args.sacrifice {
                Some(h) => BitWord::from_hex(h, kp).context("--sacrifice")?,
                None => {
                    let ms = pick(args.master_seed, cfg.u64("master_seed")?, 0);
                    BitWord::random(kp, &mut satsec_core::channel::substream(ms, 0, satsec_core::channel::StreamRole::Source))
                }
            };
            let c = wc.encode(&m, &l)?;
            let mut t = Table::new(&["ecc", "k", "k_prime", "n", "seed", "message", "sacrifice", "codeword"]);
            t.push(vec![
                ecc_name.as_str().into(),
                k.into(),
                kp.into(),
                c.len().into(),
                seed_hex.as_str().into(),
                m.to_hex().as_str().into(),
                l.to_hex().as_str().into(),
                c.to_hex().as_str().into(),
            ]);
            Ok(t)
        }
        CodeOp::Decode => {
            let n = ecc.block_len();
            let y: Vec<f64> = match (&args.codeword, &args.reals) {
                (Some(h), _) => bpsk(&BitWord::from_hex(h, n).context("--codeword")?),
                (None, Some(r)) => r
                    .split(',')
                    .map(|v| v.trim().parse::<f64>().with_context(|| format!("bad real {v:?}")))
                    .collect::<Result<_>>()?,
                (None, None) => bail!("decode needs --codeword or --reals"),
            };
            let mut t = Table::new(&["ecc", "k", "k_prime", "n", "seed", "message", "status"]);
            let (msg, status) = match wc.decode(&y) {
                Ok(m) => (Cell::from(m.to_hex().as_str()), "ok"),
                Err(satsec_core::Error::DecodeFailure(_)) => (Cell::Empty, "decode_failure"),
                Err(e) => return Err(e.into()),
            };
            t.push(vec![
                ecc_name.as_str().into(),
                k.into(),
                kp.into(),
                n.into(),
                seed_hex.as_str().into(),
                msg,
                status.into(),
            ]);
            Ok(t)
        }
        CodeOp::Hash => {
            let v = parse_hex("input", args.input.as_deref(), k + kp)?;
            let h = hash(&v, &ToeplitzMatrix::from_seed(&seed, k, kp)?)?;
            let mut t = Table::new(&["k", "k_prime", "seed", "input", "hash"]);
            t.push(vec![
                k.into(),
                kp.into(),
                seed_hex.as_str().into(),
                v.to_hex().as_str().into(),
                h.to_hex().as_str().into(),
            ]);
            Ok(t)
        }
    }
}

enum Output {
    Table(Table),
    Text(String),
}

fn simulate(args: &SimulateArgs, cfg: &Config, threads: usize) -> Result<Output> {
    let p = args.channel.resolve(cfg)?;
    let k = pick(args.k, cfg.usize("k")?, 1);
    let kp = pick(args.k_prime, cfg.usize("k_prime")?, 0);
    let ecc_name = args.ecc.clone().or(cfg.string("ecc")?).unwrap_or_else(|| "identity".into());
    let ecc = ecc_by_name(&ecc_name, k + kp)?;
    let code = CodeParams::new(ecc.block_len(), k, kp)?;
    let fixed = match args.fixed_hash_seed.clone().or(cfg.string("fixed_hash_seed")?) {
        Some(h) => Some(ToeplitzSeed(BitWord::from_hex(&h, ToeplitzSeed::len_for(k, kp)).context("--fixed-hash-seed")?)),
        None => None,
    };
    let trials = pick(args.trials, cfg.u64("trials")?, 100_000);
    let seed = pick(args.master_seed, cfg.u64("master_seed")?, 0);
    let opts = ReliabilityOptions { workers: threads, fixed_hash_seed: fixed };
    let r = run_reliability(&code, ecc.as_ref(), &p, trials, seed, &opts)?;
    if args.json {
        return Ok(Output::Text(r.to_json() + "\n"));
    }
    let mut t = Table::new(&[
        "ecc", "n", "k", "k_prime", "n0", "trials", "bit_errors", "frame_errors", "decode_failures", "ber",
        "fer", "ber_ci95", "fer_ci95", "master_seed",
    ]);
    t.push(vec![
        r.ecc.as_str().into(),
        r.n.into(),
        r.k.into(),
        r.k_prime.into(),
        p.n0.into(),
        r.trials.into(),
        r.bit_errors.into(),
        r.frame_errors.into(),
        r.decode_failures.into(),
        r.ber.into(),
        r.fer.into(),
        r.ber_ci95.into(),
        r.fer_ci95.into(),
        r.master_seed.into(),
    ]);
    Ok(Output::Table(t))
}

fn oracle(args: &OracleArgs, cfg: &Config) -> Result<Output> {
    let p = args.channel.resolve(cfg)?;
    let k = pick(args.k, cfg.usize("k")?, 1);
    let kp = pick(args.k_prime, cfg.usize("k_prime")?, 3);
    let ecc_name = args.ecc.clone().or(cfg.string("ecc")?).unwrap_or_else(|| "identity".into());
    let ecc = ecc_by_name(&ecc_name, k + kp)?;
    let code = CodeParams::new(ecc.block_len(), k, kp)?;
    let default_q = EveQuantizer::default_for(&p);
    let q = EveQuantizer::new(
        pick(args.levels, cfg.usize("levels")?, default_q.levels),
        pick(args.range, cfg.f64("range")?, default_q.range),
    )?;
    let resolution = pick(args.s_grid, cfg.usize("s_grid")?, figures::S_RESOLUTION);
    let r = exact_leakage(&code, ecc.as_ref(), &q, &p, resolution)?;
    if args.json {
        return Ok(Output::Text(serde_json::to_string_pretty(&r)? + "\n"));
    }
    if args.per_seed {
        let mut t = Table::new(&["seed", "leak_bits"]);
        for (s, v) in &r.per_seed {
            t.push(vec![s.as_str().into(), (*v).into()]);
        }
        return Ok(Output::Table(t));
    }
    let mut t = Table::new(&[
        "ecc", "n", "k", "k_prime", "gamma_g", "gamma_n", "n0", "levels", "range", "exact_leak_bits", "bound_bits",
        "bound_holds",
    ]);
    t.push(vec![
        ecc_name.as_str().into(),
        r.n.into(),
        r.k.into(),
        r.k_prime.into(),
        p.gamma_g.into(),
        p.gamma_n.into(),
        p.n0.into(),
        r.quantizer.levels.into(),
        r.quantizer.range.into(),
        r.exact_leak_bits.into(),
        r.bound_bits.into(),
        r.bound_holds().into(),
    ]);
    Ok(Output::Table(t))
}

fn run(cli: Cli) -> Result<()> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let threads = match cli.threads {
        Some(t) => t,
        None => cfg.usize("threads")?.unwrap_or(0),
    };
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("starting worker pool")?;
    }
    let output = match &cli.command {
        Command::Geometry(a) => Output::Table(geometry(a, &cfg)?),
        Command::Capacity(a) => Output::Table(capacity(a, &cfg)?),
        Command::Densities(a) => Output::Table(densities(a, &cfg)?),
        Command::Bound(a) => Output::Table(bound(a, &cfg)?),
        Command::Code(a) => Output::Table(code(a, &cfg)?),
        Command::Simulate(a) => simulate(a, &cfg, threads)?,
        Command::Oracle(a) => oracle(a, &cfg)?,
        Command::Reproduce(a) => Output::Table(figures::figure(a.figure.parse()?)?),
    };
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    match (cli.format, output) {
        (Format::Csv, Output::Table(t)) => t.write_csv(&mut sink)?,
        (_, Output::Text(s)) => sink.write_all(s.as_bytes())?,
    }
    sink.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
