//! Finite-length strong-secrecy bounds for the Toeplitz-hash wiretap code.
//!
//! For a randomly drawn hash, the expected leakage `E_F I(M; Z^n)` (nats)
//! obeys, for every `s` in `(0, 1]`,
//!
//! ```text
//! E_F I(M; Z^n) <= (1/s) * 2^(-s k') * exp(n E0max(s))
//! ```
//!
//! where `E0max(s) = ln int (sum_x q(x) W(z|x)^(1/(1-s)))^(1-s) dz` at uniform
//! `q`. Exponents are kept in nats internally; bounds are reported as
//! `log2` of the right-hand side.
//!
//! At `s = 1` the exponent is evaluated as its limit `ln int max_x W(z|x) dz`,
//! and bounds that land there are flagged.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::channel::{BiAwgn, BpskSymbol, WiretapChannelParams};
use crate::error::{argument, domain, Result};
use crate::quadrature::integrate_split;

/// Absolute tolerance on the exponent integrals. They are raised to the
/// power `n` (up to ~1e5), hence the tight value.
const EXP_TOL: f64 = 1e-12;

/// Lower edge of the sampled `s` range.
pub const S_MIN: f64 = 1e-6;

/// Code dimensions: `n` channel uses carrying `k` secret bits and `k'`
/// sacrificed random bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub k_prime: usize,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, k_prime: usize) -> Result<Self> {
        if n == 0 {
            return Err(argument("block length n must be >= 1"));
        }
        if k + k_prime > n {
            return Err(argument(format!("k + k' = {} exceeds n = {n}", k + k_prime)));
        }
        Ok(Self { n, k, k_prime })
    }

    /// Code with `k' = round(rho_sec * n)` and all remaining positions spent on
    /// the message.
    pub fn from_rho_sec(n: usize, rho_sec: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&rho_sec) {
            return Err(argument(format!("rho_sec must lie in [0, 1], got {rho_sec}")));
        }
        let k_prime = (rho_sec * n as f64).round() as usize;
        Self::new(n, n.saturating_sub(k_prime), k_prime)
    }

    pub fn rho_sec(&self) -> f64 {
        self.k_prime as f64 / self.n as f64
    }
}

/// Input distribution on `{+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InputDist {
    pub p_plus: f64,
}

impl InputDist {
    pub const UNIFORM: InputDist = InputDist { p_plus: 0.5 };

    pub fn new(p_plus: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_plus) {
            return Err(argument(format!("probability must lie in [0, 1], got {p_plus}")));
        }
        Ok(Self { p_plus })
    }

    fn ln_weights(&self) -> [(BpskSymbol, f64); 2] {
        [
            (BpskSymbol::Plus, self.p_plus.ln()),
            (BpskSymbol::Minus, (1.0 - self.p_plus).ln()),
        ]
    }
}

fn check_open_unit(s: f64, what: &str) -> Result<()> {
    if !(s > 0.0 && s < 1.0) {
        return Err(domain(format!("{what}: s must lie in (0, 1), got {s}")));
    }
    Ok(())
}

fn integrate_output<F: Fn(f64) -> f64>(ch: &BiAwgn, f: F) -> Result<f64> {
    let (lo, hi) = ch.support();
    integrate_split(f, lo, hi, &[-ch.amplitude, 0.0, ch.amplitude], EXP_TOL)
}

fn ln_sum_exp(terms: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = terms.collect();
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + v.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

/// `psi(s) = ln int sum_x q(x) W(z|x)^(1+s) W_q(z)^(-s) dz` (nats).
pub fn psi(s: f64, ch: &BiAwgn, qx: InputDist) -> Result<f64> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(domain(format!("psi: s must lie in (0, 1], got {s}")));
    }
    let w = qx.ln_weights();
    let integral = integrate_output(ch, |z| {
        let ln_mix = ln_sum_exp(w.iter().map(|&(x, lq)| lq + ch.ln_density(z, x)));
        w.iter()
            .filter(|(_, lq)| lq.is_finite())
            .map(|&(x, lq)| (lq + (1.0 + s) * ch.ln_density(z, x) - s * ln_mix).exp())
            .sum()
    })?;
    Ok(integral.ln())
}

/// `E0(s) = ln int (sum_x q(x) W(z|x)^(1/(1-s)))^(1-s) dz` (nats), `s` in `(0, 1)`.
pub fn e0(s: f64, ch: &BiAwgn, qx: InputDist) -> Result<f64> {
    check_open_unit(s, "E0")?;
    let w = qx.ln_weights();
    let t = 1.0 / (1.0 - s);
    let integral = integrate_output(ch, |z| {
        let inner = ln_sum_exp(w.iter().map(|&(x, lq)| lq + t * ch.ln_density(z, x)));
        ((1.0 - s) * inner).exp()
    })?;
    Ok(integral.ln())
}

/// `E0max(s)` of Eve's channel. The channel is symmetric, so the maximum over
/// input distributions sits at the uniform one.
pub fn e0_max(s: f64, params: &WiretapChannelParams) -> Result<f64> {
    params.validate()?;
    e0(s, &params.eve(), InputDist::UNIFORM)
}

/// Limit of `E0max(s)` as `s -> 1`: `ln int max_x W(z|x) dz`.
pub fn e0_max_limit_at_one(params: &WiretapChannelParams) -> Result<f64> {
    params.validate()?;
    let ch = params.eve();
    let integral = integrate_output(&ch, |z| {
        ch.ln_density(z, BpskSymbol::Plus)
            .max(ch.ln_density(z, BpskSymbol::Minus))
            .exp()
    })?;
    Ok(integral.ln())
}

/// `E0max` on `(0, 1]`, using the limit at `s = 1`.
fn e0_max_closed(s: f64, params: &WiretapChannelParams) -> Result<f64> {
    if s == 1.0 {
        e0_max_limit_at_one(params)
    } else {
        e0_max(s, params)
    }
}

fn check_bound_s(s: f64) -> Result<()> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(domain(format!("s must lie in (0, 1], got {s}")));
    }
    Ok(())
}

/// `log2` of the bound from an already evaluated exponent.
fn log2_bound_from(s: f64, n: usize, k_prime: usize, e0_nats: f64) -> f64 {
    (-s.ln() + n as f64 * e0_nats - s * k_prime as f64 * LN_2) / LN_2
}

/// `log2[(1/s) 2^(-s k') exp(n E0max(s))]`.
pub fn leakage_bound(s: f64, code: &CodeParams, params: &WiretapChannelParams) -> Result<f64> {
    check_bound_s(s)?;
    let e = e0_max_closed(s, params)?;
    Ok(log2_bound_from(s, code.n, code.k_prime, e))
}

/// Minimised leakage bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeakageBound {
    pub s_star: f64,
    /// `log2` of the minimised bound. The bound itself is in nats.
    pub log2_bound: f64,
    /// Sampled `(s, log2 bound(s))`, sorted by `s`.
    pub curve: Vec<(f64, f64)>,
    /// The minimum sits at `s = 1`, where the exponent is a limit value.
    pub at_limit: bool,
}

/// `E0max` sampled once on an `s` grid; independent of `n` and `k'`, so one
/// instance serves a whole sweep over code rates.
#[derive(Debug, Clone)]
pub struct ExponentCurve {
    params: WiretapChannelParams,
    samples: Vec<(f64, f64)>,
}

impl ExponentCurve {
    /// Samples `resolution` points evenly over `[S_MIN, 1]`, the last one
    /// being the `s = 1` limit.
    pub fn new(params: &WiretapChannelParams, resolution: usize) -> Result<Self> {
        use rayon::prelude::*;
        params.validate()?;
        if resolution < 100 {
            return Err(argument(format!("s-grid resolution must be >= 100, got {resolution}")));
        }
        let step = (1.0 - S_MIN) / (resolution - 1) as f64;
        let samples = (0..resolution)
            .into_par_iter()
            .map(|i| {
                let s = if i + 1 == resolution { 1.0 } else { S_MIN + step * i as f64 };
                Ok((s, e0_max_closed(s, params)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { params: *params, samples })
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    /// Coarse grid scan followed by golden-section refinement around the best
    /// grid point.
    pub fn minimize(&self, n: usize, k_prime: usize) -> Result<LeakageBound> {
        let mut curve: Vec<(f64, f64)> = self
            .samples
            .iter()
            .map(|&(s, e)| (s, log2_bound_from(s, n, k_prime, e)))
            .collect();
        let best = argmin(&curve);
        let lo = curve[best.saturating_sub(1)].0;
        let hi = curve[(best + 1).min(curve.len() - 1)].0;
        let f = |s: f64| -> Result<f64> { Ok(log2_bound_from(s, n, k_prime, e0_max(s, &self.params)?)) };
        if hi > lo {
            let (s, v) = golden_section(f, lo, hi)?;
            if v < curve[best].1 {
                let pos = curve.partition_point(|&(x, _)| x < s);
                curve.insert(pos, (s, v));
            }
        }
        let best = argmin(&curve);
        let (s_star, log2_bound) = curve[best];
        Ok(LeakageBound { s_star, log2_bound, curve, at_limit: s_star == 1.0 })
    }
}

fn argmin(curve: &[(f64, f64)]) -> usize {
    curve
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

/// Golden-section search on the open interval `(lo, hi)`; endpoints are never
/// evaluated.
fn golden_section<F: Fn(f64) -> Result<f64>>(f: F, mut lo: f64, mut hi: f64) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..80 {
        if hi - lo < 1e-10 {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

/// `min_s log2` of the leakage bound.
pub fn min_leakage_bound(
    code: &CodeParams,
    params: &WiretapChannelParams,
    resolution: usize,
) -> Result<LeakageBound> {
    ExponentCurve::new(params, resolution)?.minimize(code.n, code.k_prime)
}

/// Bounds for a noiseless main channel with identity error correction
/// (`k + k' = n`), both in `log2`:
/// the tight form `(1/s) ln(1 + 2^(-s k') e^(n psi(s)))` and its relaxation
/// `(1/s) 2^(-s k') e^(n psi(s))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiselessBounds {
    pub tight: f64,
    pub relaxed: f64,
}

pub fn noiseless_main_bounds(
    s: f64,
    n: usize,
    k_prime: usize,
    params: &WiretapChannelParams,
) -> Result<NoiselessBounds> {
    if n == 0 || k_prime > n {
        return Err(argument(format!(
            "identity-code bound needs 1 <= n and k' <= n (n={n}, k'={k_prime})"
        )));
    }
    check_bound_s(s)?;
    params.validate()?;
    let x = n as f64 * psi(s, &params.eve(), InputDist::UNIFORM)? - s * k_prime as f64 * LN_2;
    Ok(NoiselessBounds {
        tight: (-s.ln() + ln_softplus(x)) / LN_2,
        relaxed: (-s.ln() + x) / LN_2,
    })
}

/// `ln(ln(1 + e^x))` without underflow for very negative `x`.
fn ln_softplus(x: f64) -> f64 {
    if x < -30.0 {
        x + (-0.5 * x.exp()).ln_1p()
    } else {
        crate::channel::softplus(x).ln()
    }
}

/// Renyi entropy of order `1 + s` in nats: `-(1/s) ln sum_x P(x)^(1+s)`.
pub fn renyi_entropy(dist: &[f64], s: f64) -> Result<f64> {
    check_bound_s(s)?;
    validate_distribution(dist)?;
    let sum: f64 = dist.iter().filter(|p| **p > 0.0).map(|p| p.powf(1.0 + s)).sum();
    Ok(-sum.ln() / s)
}

fn validate_distribution(dist: &[f64]) -> Result<()> {
    if dist.is_empty() {
        return Err(argument("distribution is empty"));
    }
    if let Some(p) = dist.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
        return Err(argument(format!("probabilities must be finite and >= 0, got {p}")));
    }
    let total: f64 = dist.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(argument(format!("probabilities sum to {total}, not 1")));
    }
    Ok(())
}

/// Leakage bound when the sacrificed randomness follows `seed_dist` rather
/// than the uniform law: `log2[(1/s) exp(n E0max(s) - s H_{1+s}(L))]`.
pub fn nonuniform_seed_bound(
    s: f64,
    code: &CodeParams,
    seed_dist: &[f64],
    params: &WiretapChannelParams,
) -> Result<f64> {
    let h = renyi_entropy(seed_dist, s)?;
    let e = e0_max_closed(s, params)?;
    Ok((-s.ln() + code.n as f64 * e - s * h) / LN_2)
}

/// `(k'/n) ln 2 - E0max(s)/s`; positive means the bound decays exponentially
/// in `n` at fixed `k'/n`.
pub fn exponent_margin(s: f64, code: &CodeParams, params: &WiretapChannelParams) -> Result<f64> {
    check_bound_s(s)?;
    Ok(code.rho_sec() * LN_2 - e0_max_closed(s, params)? / s)
}
