//! Large-scale wiretap geometry.
//!
//! Maps the relative position of an eavesdropper (distance and
//! off-boresight angle) and the antenna/propagation exponents onto the
//! amplitude-degradation coefficient `gamma_g` of Eve's channel. Eve's
//! received amplitude is below Bob's exactly when `gamma_g < 1`; the set of
//! positions where that holds is the protected region.
//!
//! Angles are in degrees, distances in kilometres.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{argument, domain, Result};

/// Geometry and antenna parameters of a satellite wiretap scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryConfig {
    /// Distance Alice to Bob (km).
    pub rho_b: f64,
    /// Distance Alice to Eve (km).
    pub rho_e: f64,
    /// Eve's off-boresight angle seen from Alice (degrees).
    pub theta_e: f64,
    /// Power-decay exponent of Eve's propagation path.
    pub r: f64,
    /// Power-decay exponent of Alice's antenna pattern.
    pub a: f64,
    /// Relative receive-antenna gain of Eve with respect to Bob, in `[0, 1]`.
    pub mu: f64,
    /// Peak gain of Alice's antenna (linear).
    pub g_a_max: f64,
    /// Peak gain of Bob's antenna (linear).
    pub g_b_max: f64,
    /// Carrier wavelength (m).
    pub lambda_c: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        Self {
            rho_b: 1000.0,
            rho_e: 1000.0,
            theta_e: 1.0,
            r: 2.0,
            a: 2.0,
            mu: 1.0,
            g_a_max: 1.0,
            g_b_max: 1.0,
            // Ka-band downlink, 20 GHz.
            lambda_c: 0.015,
        }
    }
}

impl GeometryConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("rho_b", self.rho_b),
            ("rho_e", self.rho_e),
            ("g_a_max", self.g_a_max),
            ("g_b_max", self.g_b_max),
            ("lambda_c", self.lambda_c),
            ("a", self.a),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(domain(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        if !(self.theta_e.is_finite() && self.theta_e >= 0.0) {
            return Err(domain(format!("theta_e must be >= 0, got {}", self.theta_e)));
        }
        if !(self.r.is_finite() && self.r >= 2.0) {
            return Err(domain(format!("r must be >= 2, got {}", self.r)));
        }
        if !(0.0..=1.0).contains(&self.mu) {
            return Err(domain(format!("mu must lie in [0, 1], got {}", self.mu)));
        }
        Ok(())
    }

    /// Deterministic large-scale amplitude coefficient of Bob's link,
    /// `sqrt(g_A g_B) * (lambda_c / 4 pi) / rho_B`, with `rho_B` in metres.
    ///
    /// Reported for link-budget documentation only; the secrecy quantities
    /// depend on ratios and never use it.
    pub fn bob_path_coefficient(&self) -> Result<f64> {
        self.validate()?;
        let rho_m = self.rho_b * 1e3;
        Ok((self.g_a_max * self.g_b_max).sqrt() * self.lambda_c / (4.0 * std::f64::consts::PI) / rho_m)
    }

    /// Eve's large-scale coefficient, `h_Y * alpha * mu * beta`.
    pub fn eve_path_coefficient(&self) -> Result<f64> {
        Ok(self.bob_path_coefficient()? * gamma_g(self)?)
    }
}

/// Relative propagation amplitude `beta = sqrt(rho_B^2 / rho_E^r)`.
pub fn beta(r: f64, rho_b: f64, rho_e: f64) -> Result<f64> {
    if !(rho_b > 0.0 && rho_e > 0.0) || !rho_b.is_finite() || !rho_e.is_finite() {
        return Err(domain(format!("distances must be > 0 (rho_b={rho_b}, rho_e={rho_e})")));
    }
    if !(r.is_finite() && r >= 2.0) {
        return Err(domain(format!("propagation exponent r must be >= 2, got {r}")));
    }
    // Evaluated in the log domain so large r does not overflow.
    Ok((0.5 * (2.0 * rho_b.ln() - r * rho_e.ln())).exp())
}

/// Antenna-pattern attenuation `theta^-a`, clamped to 1 for `theta <= 1`.
pub fn alpha(theta_e: f64, a: f64) -> f64 {
    if theta_e <= 1.0 {
        1.0
    } else {
        theta_e.powf(-a).min(1.0)
    }
}

/// Amplitude degradation coefficient `gamma_g = alpha * mu * beta`.
pub fn gamma_g(config: &GeometryConfig) -> Result<f64> {
    config.validate()?;
    let b = beta(config.r, config.rho_b, config.rho_e)?;
    Ok(alpha(config.theta_e, config.a) * config.mu * b)
}

/// True when Eve's received amplitude exceeds Bob's (`alpha * mu > 1 / beta`).
pub fn eve_stronger(config: &GeometryConfig) -> Result<bool> {
    config.validate()?;
    let b = beta(config.r, config.rho_b, config.rho_e)?;
    Ok(alpha(config.theta_e, config.a) * config.mu * b > 1.0)
}

/// One cell of a protected-region map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionCell {
    pub theta_deg: f64,
    pub rho_ratio: f64,
    pub gamma_g: f64,
    /// `gamma_g < 1`: Eve's amplitude is below Bob's.
    pub protected: bool,
}

/// Parameters shared by every cell of a region map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionParams {
    /// Absolute Bob distance (km). Only matters when `r != 2`.
    pub rho_b: f64,
    pub r: f64,
    pub a: f64,
    pub mu: f64,
}

impl RegionParams {
    fn config(&self, theta: f64, ratio: f64) -> GeometryConfig {
        GeometryConfig {
            rho_b: self.rho_b,
            rho_e: ratio * self.rho_b,
            theta_e: theta,
            r: self.r,
            a: self.a,
            mu: self.mu,
            ..GeometryConfig::default()
        }
    }
}

/// Evaluates `gamma_g` over the grid `theta_grid x rho_ratio_grid`
/// (`rho_ratio = rho_E / rho_B`). Rows follow `theta_grid`, row-major.
pub fn protected_region_map(
    theta_grid: &[f64],
    rho_ratio_grid: &[f64],
    params: &RegionParams,
) -> Result<Vec<RegionCell>> {
    if theta_grid.is_empty() || rho_ratio_grid.is_empty() {
        return Err(argument("region map needs non-empty angle and distance grids"));
    }
    if let Some(bad) = rho_ratio_grid.iter().find(|r| !(**r > 0.0)) {
        return Err(argument(format!("distance ratios must be > 0, got {bad}")));
    }
    let cells: Vec<(f64, f64)> = theta_grid
        .iter()
        .flat_map(|&t| rho_ratio_grid.iter().map(move |&q| (t, q)))
        .collect();
    cells
        .into_par_iter()
        .map(|(theta, ratio)| {
            let g = gamma_g(&params.config(theta, ratio))?;
            Ok(RegionCell {
                theta_deg: theta,
                rho_ratio: ratio,
                gamma_g: g,
                protected: g < 1.0,
            })
        })
        .collect()
}

/// Smallest off-boresight angle (degrees) from which Eve's amplitude stays
/// below Bob's, found by bisection on the predicate `gamma_g < 1`.
///
/// Returns 0 when every angle is protected. `theta_max` bounds the search;
/// `None` means no angle up to it is protected.
pub fn min_protected_angle(rho_ratio: f64, params: &RegionParams, theta_max: f64) -> Result<Option<f64>> {
    let protected = |theta: f64| -> Result<bool> {
        Ok(gamma_g(&params.config(theta, rho_ratio))? < 1.0)
    };
    if protected(0.0)? {
        return Ok(Some(0.0));
    }
    if !protected(theta_max)? {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0.0, theta_max);
    while hi - lo > 1e-10 * theta_max.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if protected(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}
