//! Capacities of the BPSK wiretap channel under uniform input.
//!
//! Bob's capacity, Eve's capacity and the secrecy capacity
//! `C_s = (C_B - C_E)_+`, all in bits per channel use, plus the two
//! closed-form criteria for a positive secrecy capacity.

use std::f64::consts::LN_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{binary_entropy, q_function, softplus, WiretapChannelParams};
use crate::error::{argument, domain, Result};
use crate::quadrature::integrate_split;

/// Absolute tolerance, in nats, of the mutual-information integrals.
const MI_TOL_NATS: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityResult {
    pub c_bob: f64,
    pub c_eve: f64,
    pub c_s: f64,
}

/// Mutual information (bits) of a BI-AWGN channel with symbols
/// `+-amplitude`, noise variance `noise_var` and uniform input.
///
/// The integral only depends on `amplitude / sqrt(noise_var)`, so it is
/// evaluated in noise-normalised coordinates over the union of the two
/// components' `+-10 sigma` ranges.
pub fn mi_biawgn(amplitude: f64, noise_var: f64) -> Result<f64> {
    if !(noise_var.is_finite() && noise_var > 0.0) {
        return Err(domain(format!("noise variance must be > 0, got {noise_var}")));
    }
    if !amplitude.is_finite() {
        return Err(domain(format!("amplitude must be finite, got {amplitude}")));
    }
    let r = amplitude.abs() / noise_var.sqrt();
    if r == 0.0 {
        return Ok(0.0);
    }
    let norm = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    // sum_x 1/2 W(y|x) ln(W(y|x)/W(y)) with ln(W(y|x)/W(y)) = ln2 - softplus(-2 r x y).
    let integrand = |y: f64| {
        let wp = norm * (-0.5 * (y - r) * (y - r)).exp();
        let wm = norm * (-0.5 * (y + r) * (y + r)).exp();
        0.5 * wp * (LN_2 - softplus(-2.0 * r * y)) + 0.5 * wm * (LN_2 - softplus(2.0 * r * y))
    };
    let half = r + 10.0;
    let nats = integrate_split(integrand, -half, half, &[-r, 0.0, r], MI_TOL_NATS)?;
    Ok((nats / LN_2).clamp(0.0, 1.0))
}

pub fn capacity_bob(params: &WiretapChannelParams) -> Result<f64> {
    params.validate()?;
    let ch = params.bob();
    mi_biawgn(ch.amplitude, ch.noise_var)
}

pub fn capacity_eve(params: &WiretapChannelParams) -> Result<f64> {
    params.validate()?;
    let ch = params.eve();
    mi_biawgn(ch.amplitude, ch.noise_var)
}

/// `C_s = (C_B - C_E)_+`. On and beyond the boundary `gamma_g >= sqrt(gamma_n)`
/// Eve's channel is not degraded and `c_s` is reported as exactly 0.
pub fn secrecy_capacity(params: &WiretapChannelParams) -> Result<CapacityResult> {
    let c_bob = capacity_bob(params)?;
    let c_eve = capacity_eve(params)?;
    let c_s = if positivity_condition(params) {
        (c_bob - c_eve).max(0.0)
    } else {
        0.0
    };
    Ok(CapacityResult { c_bob, c_eve, c_s })
}

/// `C_B > C_E` if and only if `gamma_g < sqrt(gamma_n)`.
pub fn positivity_condition(params: &WiretapChannelParams) -> bool {
    params.gamma_g < params.gamma_n.sqrt()
}

/// Eve's mixture is less than 2-separated: `gamma_g E0 / sqrt(gamma_n) < sqrt(N0)`.
pub fn c_separation_condition(params: &WiretapChannelParams) -> bool {
    params.gamma_g * params.e0 / params.gamma_n.sqrt() < params.n0.sqrt()
}

/// One row of the capacity-vs-SNR comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityCurveRow {
    /// `E0^2 / N0`, linear.
    pub snr: f64,
    pub snr_db: f64,
    pub c_bob: f64,
    pub c_eve: f64,
    pub c_s: f64,
    /// Real-Gaussian-input capacity `1/2 log2(1 + SNR)`.
    pub gauss_ref: f64,
    /// Hard-decision BSC capacity `1 - h2(Q(sqrt(SNR)))`.
    pub bsc_ref: f64,
}

/// Capacities over a grid of Bob SNRs `E0^2/N0`. `N0` is set from each SNR at
/// the fixed `E0`; `gamma_g` and `gamma_n` are taken from `params`.
pub fn capacity_curves(snr_grid: &[f64], params: &WiretapChannelParams) -> Result<Vec<CapacityCurveRow>> {
    if snr_grid.is_empty() {
        return Err(argument("SNR grid is empty"));
    }
    if let Some(bad) = snr_grid.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
        return Err(argument(format!("SNR values must be > 0, got {bad}")));
    }
    snr_grid
        .par_iter()
        .map(|&snr| {
            let p = WiretapChannelParams { n0: params.e0 * params.e0 / snr, ..*params };
            let cap = secrecy_capacity(&p)?;
            Ok(CapacityCurveRow {
                snr,
                snr_db: 10.0 * snr.log10(),
                c_bob: cap.c_bob,
                c_eve: cap.c_eve,
                c_s: cap.c_s,
                gauss_ref: 0.5 * (1.0 + snr).log2(),
                bsc_ref: 1.0 - binary_entropy(q_function(snr.sqrt())),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecrecySweepRow {
    pub gamma_g: f64,
    pub gamma_n: f64,
    pub c_bob: f64,
    pub c_eve: f64,
    pub c_s: f64,
    pub positive: bool,
    pub c_separated: bool,
}

/// Secrecy capacity over `gamma_g x gamma_n` (row-major in `gamma_g`).
pub fn secrecy_sweep(
    gamma_g_grid: &[f64],
    gamma_n_grid: &[f64],
    n0: f64,
    e0: f64,
) -> Result<Vec<SecrecySweepRow>> {
    if gamma_g_grid.is_empty() || gamma_n_grid.is_empty() {
        return Err(argument("sweep grids must be non-empty"));
    }
    let cells: Vec<(f64, f64)> = gamma_g_grid
        .iter()
        .flat_map(|&g| gamma_n_grid.iter().map(move |&n| (g, n)))
        .collect();
    cells
        .into_par_iter()
        .map(|(gamma_g, gamma_n)| {
            let p = WiretapChannelParams::new(gamma_g, gamma_n, n0)?.with_e0(e0)?;
            let cap = secrecy_capacity(&p)?;
            Ok(SecrecySweepRow {
                gamma_g,
                gamma_n,
                c_bob: cap.c_bob,
                c_eve: cap.c_eve,
                c_s: cap.c_s,
                positive: positivity_condition(&p),
                c_separated: c_separation_condition(&p),
            })
        })
        .collect()
}
