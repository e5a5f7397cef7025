//! Monte-Carlo reliability runs and exact leakage oracles for tiny codes.
//!
//! Trials are grouped into blocks of [`BLOCK_TRIALS`]; block `b` draws its
//! randomness from [`substream`]`(master_seed, b, role)`. Blocks are reduced
//! with integer counters (reliability) or in block order (floating-point
//! sums), so reports do not depend on the number of worker threads.

use std::f64::consts::LN_2;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitWord;
use crate::channel::{normal_cdf, substream, BiAwgn, BpskSymbol, StreamRole, WiretapChannelParams};
use crate::error::{argument, domain, Error, Result};
use crate::finite_length::{min_leakage_bound, CodeParams};
use crate::wiretap_code::{EccScheme, ToeplitzSeed, WiretapCode};

/// Trials per RNG block.
pub const BLOCK_TRIALS: u64 = 1024;

/// Normal quantile used for the reported 95% half-widths.
pub const Z95: f64 = 1.96;

/// Minimum sample count for [`mc_mutual_info`].
pub const MC_MIN_SAMPLES: u64 = 10_000;

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| argument(format!("cannot start {workers} workers: {e}")))
}

fn blocks(total: u64) -> impl Iterator<Item = (u64, u64)> {
    let n = total.div_ceil(BLOCK_TRIALS);
    (0..n).map(move |b| (b, BLOCK_TRIALS.min(total - b * BLOCK_TRIALS)))
}

/// `z * sqrt(p (1 - p) / n)`: normal-approximation binomial half-width.
pub fn binomial_half_width(p: f64, n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    Z95 * (p * (1.0 - p) / n as f64).sqrt()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ReliabilityOptions {
    /// Worker threads; 0 means the rayon default.
    pub workers: usize,
    /// Reuse one hash seed for every trial instead of a fresh one.
    pub fixed_hash_seed: Option<ToeplitzSeed>,
}

/// Outcome of [`run_reliability`]. `ber` is per message bit, `fer` per
/// trial; the `_ci95` fields are normal-approximation half-widths.
/// Decode failures count as frame errors but add no bit errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityReport {
    pub master_seed: u64,
    pub n: usize,
    pub k: usize,
    pub k_prime: usize,
    pub ecc: String,
    pub trials: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub decode_failures: u64,
    pub ber: f64,
    pub fer: f64,
    pub ber_ci95: f64,
    pub fer_ci95: f64,
}

impl ReliabilityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Tally {
    bit_errors: u64,
    frame_errors: u64,
    decode_failures: u64,
}

impl Tally {
    fn add(self, o: Tally) -> Tally {
        Tally {
            bit_errors: self.bit_errors + o.bit_errors,
            frame_errors: self.frame_errors + o.frame_errors,
            decode_failures: self.decode_failures + o.decode_failures,
        }
    }
}

/// Sends uniformly random `(m, l)` through the wiretap code over Bob's
/// channel and counts decoding errors.
pub fn run_reliability(
    code: &CodeParams,
    ecc: &dyn EccScheme,
    params: &WiretapChannelParams,
    trials: u64,
    master_seed: u64,
    options: &ReliabilityOptions,
) -> Result<ReliabilityReport> {
    params.validate()?;
    if trials == 0 {
        return Err(argument("trials must be >= 1"));
    }
    let (k, kp) = (code.k, code.k_prime);
    if ecc.message_len() != k + kp || ecc.block_len() != code.n {
        return Err(argument(format!(
            "ECC {} maps {} -> {} bits, code needs {} -> {}",
            ecc.name(),
            ecc.message_len(),
            ecc.block_len(),
            k + kp,
            code.n
        )));
    }
    if let Some(seed) = &options.fixed_hash_seed {
        WiretapCode::new(k, kp, seed, ecc)?;
    }
    let bob = params.bob();

    let run_block = |(b, count): (u64, u64)| -> Result<Tally> {
        let mut src = substream(master_seed, b, StreamRole::Source);
        let mut noise = substream(master_seed, b, StreamRole::Bob);
        let mut t = Tally::default();
        for _ in 0..count {
            let m = BitWord::random(k, &mut src);
            let l = BitWord::random(kp, &mut src);
            let seed = match &options.fixed_hash_seed {
                Some(s) => s.clone(),
                None => ToeplitzSeed::random(k, kp, &mut src),
            };
            let wc = WiretapCode::new(k, kp, &seed, ecc)?;
            let y: Vec<f64> = wc
                .encode(&m, &l)?
                .iter()
                .map(|bit| bob.sample(BpskSymbol::from_bit(bit), &mut noise))
                .collect();
            match wc.decode(&y) {
                Ok(m_hat) => {
                    let d = m_hat.hamming_distance(&m)? as u64;
                    t.bit_errors += d;
                    t.frame_errors += u64::from(d > 0);
                }
                Err(Error::DecodeFailure(_)) => {
                    t.decode_failures += 1;
                    t.frame_errors += 1;
                }
                Err(e) => return Err(e),
            }
        }
        Ok(t)
    };

    let block_list: Vec<(u64, u64)> = blocks(trials).collect();
    let tally = pool(options.workers)?.install(|| {
        block_list
            .into_par_iter()
            .map(run_block)
            .try_reduce(Tally::default, |a, b| Ok(a.add(b)))
    })?;

    let bits = trials * k as u64;
    let ber = if bits == 0 { 0.0 } else { tally.bit_errors as f64 / bits as f64 };
    let fer = tally.frame_errors as f64 / trials as f64;
    Ok(ReliabilityReport {
        master_seed,
        n: code.n,
        k,
        k_prime: kp,
        ecc: ecc.name().to_string(),
        trials,
        bit_errors: tally.bit_errors,
        frame_errors: tally.frame_errors,
        decode_failures: tally.decode_failures,
        ber,
        fer,
        ber_ci95: binomial_half_width(ber, bits),
        fer_ci95: binomial_half_width(fer, trials),
    })
}

/// Scalar quantizer for Eve's outputs: `levels` equal-width cells over
/// `[-range, range]`, the two outer cells extended to infinity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EveQuantizer {
    pub levels: usize,
    pub range: f64,
}

impl EveQuantizer {
    pub const DEFAULT_LEVELS: usize = 8;

    pub fn new(levels: usize, range: f64) -> Result<Self> {
        if levels < 2 {
            return Err(argument(format!("quantizer needs >= 2 levels, got {levels}")));
        }
        if !(range.is_finite() && range > 0.0) {
            return Err(domain(format!("quantizer range must be > 0, got {range}")));
        }
        Ok(Self { levels, range })
    }

    /// 8 levels over `±(gamma_g E0 + 4 sqrt(gamma_n N0))`.
    pub fn default_for(params: &WiretapChannelParams) -> Self {
        let range = params.gamma_g * params.e0 + 4.0 * (params.gamma_n * params.n0).sqrt();
        Self { levels: Self::DEFAULT_LEVELS, range }
    }

    /// Interior cell edges, ascending.
    pub fn edges(&self) -> Vec<f64> {
        let width = 2.0 * self.range / self.levels as f64;
        (1..self.levels).map(|j| -self.range + width * j as f64).collect()
    }

    /// `P(cell | x)` for each cell through `ch`.
    pub fn cell_probs(&self, ch: &BiAwgn, x: BpskSymbol) -> Vec<f64> {
        let mean = ch.amplitude * x.value();
        let sigma = ch.sigma();
        let mut cdf: Vec<f64> = vec![0.0];
        cdf.extend(self.edges().iter().map(|e| normal_cdf((e - mean) / sigma)));
        cdf.push(1.0);
        cdf.windows(2).map(|w| (w[1] - w[0]).max(0.0)).collect()
    }
}

/// Result of [`exact_leakage`], in bits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeakageOracleReport {
    pub n: usize,
    pub k: usize,
    pub k_prime: usize,
    pub quantizer: EveQuantizer,
    /// `I(M; Z^n)` averaged over all hash seeds, `M` uniform.
    pub exact_leak_bits: f64,
    /// `(seed as hex, I(M; Z^n) for that seed)`.
    pub per_seed: Vec<(String, f64)>,
    /// Minimised finite-length bound, converted to bits.
    pub bound_bits: f64,
    pub bound_log2_nats: f64,
}

impl LeakageOracleReport {
    /// `exact <= bound` whenever the bound is informative (`<= k`).
    pub fn bound_holds(&self) -> bool {
        self.bound_bits > self.k as f64 || self.exact_leak_bits <= self.bound_bits
    }
}

/// Largest `k + k'` accepted by [`exact_leakage`].
pub const ORACLE_MAX_INPUT_BITS: usize = 10;
/// Largest block length accepted by [`exact_leakage`].
pub const ORACLE_MAX_N: usize = 12;
/// Cap on `seeds * 2^(k+k') * levels^n * n` elementary steps.
pub const ORACLE_WORK_BUDGET: f64 = 4e9;

/// Sum in a fixed pairwise tree. Summing `2^j` equal values this way is exact.
fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        len => {
            let mid = len.next_power_of_two() / 2;
            pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
        }
    }
}

/// Exact `I(M; Z^n)` of the wiretap code over Eve's quantized channel,
/// enumerating every hash seed, message, sacrifice word and output tuple.
pub fn exact_leakage(
    code: &CodeParams,
    ecc: &dyn EccScheme,
    quantizer: &EveQuantizer,
    params: &WiretapChannelParams,
    bound_resolution: usize,
) -> Result<LeakageOracleReport> {
    params.validate()?;
    let (n, k, kp) = (code.n, code.k, code.k_prime);
    if k + kp > ORACLE_MAX_INPUT_BITS || n > ORACLE_MAX_N {
        return Err(argument(format!(
            "exact oracle needs k + k' <= {ORACLE_MAX_INPUT_BITS} and n <= {ORACLE_MAX_N}, got k + k' = {}, n = {n}",
            k + kp
        )));
    }
    if k == 0 {
        return Err(argument("exact oracle needs k >= 1"));
    }
    if ecc.message_len() != k + kp || ecc.block_len() != n {
        return Err(argument(format!(
            "ECC {} does not match (n, k + k') = ({n}, {})",
            ecc.name(),
            k + kp
        )));
    }
    let seed_len = ToeplitzSeed::len_for(k, kp);
    let q = quantizer.levels;
    let outputs = q.pow(n as u32);
    let work = (1u64 << seed_len) as f64 * (1u64 << (k + kp)) as f64 * outputs as f64 * n as f64;
    if work > ORACLE_WORK_BUDGET {
        return Err(argument(format!(
            "exact oracle instance too large: {work:.3e} steps exceeds budget {ORACLE_WORK_BUDGET:.0e}"
        )));
    }

    let eve = params.eve();
    let cells = [
        quantizer.cell_probs(&eve, BpskSymbol::Plus),
        quantizer.cell_probs(&eve, BpskSymbol::Minus),
    ];

    let per_seed: Vec<(String, f64)> = (0..1u64 << seed_len)
        .into_par_iter()
        .map(|s| {
            let seed = ToeplitzSeed(BitWord::from_u64(s, seed_len));
            let wc = WiretapCode::new(k, kp, &seed, ecc)?;
            // p_zm[m][z] = P(z | m)
            let mut p_zm = vec![vec![0.0; outputs]; 1 << k];
            for (m, row) in p_zm.iter_mut().enumerate() {
                let words: Vec<Vec<usize>> = (0..1u64 << kp)
                    .map(|l| {
                        let c = wc.encode(&BitWord::from_u64(m as u64, k), &BitWord::from_u64(l, kp))?;
                        Ok(c.iter().map(usize::from).collect())
                    })
                    .collect::<Result<_>>()?;
                let mut terms = vec![0.0; words.len()];
                for (z, slot) in row.iter_mut().enumerate() {
                    for (t, c) in terms.iter_mut().zip(&words) {
                        let mut p = 1.0;
                        let mut rest = z;
                        for &bit in c {
                            p *= cells[bit][rest % q];
                            rest /= q;
                        }
                        *t = p;
                    }
                    *slot = pairwise_sum(&terms) / words.len() as f64;
                }
            }
            let mut leak = 0.0;
            let mut col = vec![0.0; 1 << k];
            for z in 0..outputs {
                for (c, row) in col.iter_mut().zip(&p_zm) {
                    *c = row[z];
                }
                let pz = pairwise_sum(&col) / col.len() as f64;
                for &pzm in &col {
                    if pzm > 0.0 {
                        leak += pzm * (pzm / pz).log2();
                    }
                }
            }
            leak /= (1u64 << k) as f64;
            Ok((seed.bits().to_hex(), leak.max(0.0)))
        })
        .collect::<Result<_>>()?;

    let leaks: Vec<f64> = per_seed.iter().map(|(_, v)| *v).collect();
    let exact_leak_bits = pairwise_sum(&leaks) / leaks.len() as f64;
    let bound = min_leakage_bound(code, params, bound_resolution)?;
    Ok(LeakageOracleReport {
        n,
        k,
        k_prime: kp,
        quantizer: quantizer.clone(),
        exact_leak_bits,
        per_seed,
        bound_bits: bound.log2_bound.exp2() / LN_2,
        bound_log2_nats: bound.log2_bound,
    })
}

/// Monte-Carlo mutual information estimate with its standard error, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub bits: f64,
    pub std_err: f64,
    pub samples: u64,
}

/// Sample mean of `log2(W(y|x) / W(y))` over uniform `x` on a BI-AWGN
/// channel.
pub fn mc_mutual_info(amplitude: f64, noise_var: f64, samples: u64, master_seed: u64) -> Result<McEstimate> {
    if !(noise_var.is_finite() && noise_var > 0.0) {
        return Err(domain(format!("noise variance must be > 0, got {noise_var}")));
    }
    if !amplitude.is_finite() {
        return Err(domain(format!("amplitude must be finite, got {amplitude}")));
    }
    if samples < MC_MIN_SAMPLES {
        return Err(argument(format!("need >= {MC_MIN_SAMPLES} samples, got {samples}")));
    }
    let ch = BiAwgn { amplitude, noise_var };
    let block_list: Vec<(u64, u64)> = blocks(samples).collect();
    let sums: Vec<(f64, f64)> = block_list
        .into_par_iter()
        .map(|(b, count)| {
            let mut src = substream(master_seed, b, StreamRole::Source);
            let mut noise = substream(master_seed, b, StreamRole::Bob);
            let (mut s1, mut s2) = (0.0, 0.0);
            for _ in 0..count {
                let x = BpskSymbol::from_bit(src.random());
                let y = ch.sample(x, &mut noise);
                let v = ch.ln_likelihood_ratio(y, x) / LN_2;
                s1 += v;
                s2 += v * v;
            }
            (s1, s2)
        })
        .collect();
    let (s1, s2) = sums.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let nf = samples as f64;
    let mean = s1 / nf;
    let var = ((s2 / nf - mean * mean) * nf / (nf - 1.0)).max(0.0);
    Ok(McEstimate { bits: mean, std_err: (var / nf).sqrt(), samples })
}
