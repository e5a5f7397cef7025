//! BPSK binary-input AWGN wiretap channel.
//!
//! Bob observes `Y = E0 x + sqrt(N0) G` and Eve observes
//! `Z = gamma_g E0 x + sqrt(gamma_n N0) G'` for `x` in `{+1, -1}` and
//! independent standard normals `G`, `G'`. The channel is real-valued with
//! noise variance `N0` per dimension.

use std::f64::consts::{LN_2, PI};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use libm::erfc;

use crate::error::{domain, Result};

/// Degraded Gaussian wiretap channel in four scalars.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WiretapChannelParams {
    /// Eve's amplitude coefficient relative to Bob.
    pub gamma_g: f64,
    /// Eve's noise power relative to Bob.
    pub gamma_n: f64,
    /// Bob's noise variance per real dimension.
    pub n0: f64,
    /// Symbol amplitude.
    pub e0: f64,
}

impl Default for WiretapChannelParams {
    fn default() -> Self {
        Self { gamma_g: 1.0, gamma_n: 1.0, n0: 1.0, e0: 1.0 }
    }
}

impl WiretapChannelParams {
    /// Builds a validated parameter set with unit symbol amplitude.
    pub fn new(gamma_g: f64, gamma_n: f64, n0: f64) -> Result<Self> {
        let p = Self { gamma_g, gamma_n, n0, e0: 1.0 };
        p.validate()?;
        Ok(p)
    }

    pub fn with_e0(mut self, e0: f64) -> Result<Self> {
        self.e0 = e0;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma_g.is_finite() && self.gamma_g >= 0.0) {
            return Err(domain(format!("gamma_g must be >= 0, got {}", self.gamma_g)));
        }
        for (name, v) in [("gamma_n", self.gamma_n), ("N0", self.n0), ("E0", self.e0)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(domain(format!("{name} must be > 0, got {v}")));
            }
        }
        Ok(())
    }

    pub fn bob(&self) -> BiAwgn {
        BiAwgn { amplitude: self.e0, noise_var: self.n0 }
    }

    pub fn eve(&self) -> BiAwgn {
        BiAwgn { amplitude: self.gamma_g * self.e0, noise_var: self.gamma_n * self.n0 }
    }
}

/// BPSK symbol. Bit 0 maps to `+1`, bit 1 to `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BpskSymbol {
    Plus,
    Minus,
}

impl BpskSymbol {
    pub const BOTH: [BpskSymbol; 2] = [BpskSymbol::Plus, BpskSymbol::Minus];

    pub fn from_bit(bit: bool) -> Self {
        if bit {
            BpskSymbol::Minus
        } else {
            BpskSymbol::Plus
        }
    }

    pub fn to_bit(self) -> bool {
        self == BpskSymbol::Minus
    }

    pub fn value(self) -> f64 {
        match self {
            BpskSymbol::Plus => 1.0,
            BpskSymbol::Minus => -1.0,
        }
    }
}

/// A binary-input AWGN channel: output `amplitude * x + N(0, noise_var)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BiAwgn {
    pub amplitude: f64,
    pub noise_var: f64,
}

impl BiAwgn {
    pub fn sigma(&self) -> f64 {
        self.noise_var.sqrt()
    }

    /// Natural log of the conditional density `W(y | x)`.
    pub fn ln_density(&self, y: f64, x: BpskSymbol) -> f64 {
        let d = y - self.amplitude * x.value();
        -0.5 * (2.0 * PI * self.noise_var).ln() - d * d / (2.0 * self.noise_var)
    }

    pub fn density(&self, y: f64, x: BpskSymbol) -> f64 {
        self.ln_density(y, x).exp()
    }

    /// Natural log of the output density under uniform input.
    pub fn ln_mixture(&self, y: f64) -> f64 {
        let a = self.ln_density(y, BpskSymbol::Plus);
        let b = self.ln_density(y, BpskSymbol::Minus);
        ln_add_exp(a, b) - LN_2
    }

    pub fn mixture(&self, y: f64) -> f64 {
        0.5 * (self.density(y, BpskSymbol::Plus) + self.density(y, BpskSymbol::Minus))
    }

    /// `ln(W(y|x) / W(y))` under uniform input, evaluated without forming
    /// either density: `ln 2 - softplus(-2 a x y / v)`.
    pub fn ln_likelihood_ratio(&self, y: f64, x: BpskSymbol) -> f64 {
        LN_2 - softplus(-2.0 * self.amplitude * x.value() * y / self.noise_var)
    }

    pub fn sample<R: Rng + ?Sized>(&self, x: BpskSymbol, rng: &mut R) -> f64 {
        let g: f64 = rng.sample(StandardNormal);
        self.amplitude * x.value() + self.sigma() * g
    }

    /// Interval holding all but a negligible tail of both components:
    /// `[-a - 10 sigma, a + 10 sigma]`.
    pub fn support(&self) -> (f64, f64) {
        let half = self.amplitude.abs() + 10.0 * self.sigma();
        (-half, half)
    }

    /// Crossover probability of hard (sign) decisions, `Q(a / sigma)`.
    pub fn hard_decision_crossover(&self) -> f64 {
        q_function(self.amplitude / self.sigma())
    }
}

pub fn density_bob(y: f64, x: BpskSymbol, params: &WiretapChannelParams) -> f64 {
    params.bob().density(y, x)
}

pub fn density_eve(z: f64, x: BpskSymbol, params: &WiretapChannelParams) -> f64 {
    params.eve().density(z, x)
}

pub fn mixture_density_bob(y: f64, params: &WiretapChannelParams) -> f64 {
    params.bob().mixture(y)
}

pub fn mixture_density_eve(z: f64, params: &WiretapChannelParams) -> f64 {
    params.eve().mixture(z)
}

pub fn sample_bob<R: Rng + ?Sized>(x: BpskSymbol, params: &WiretapChannelParams, rng: &mut R) -> f64 {
    params.bob().sample(x, rng)
}

pub fn sample_eve<R: Rng + ?Sized>(x: BpskSymbol, params: &WiretapChannelParams, rng: &mut R) -> f64 {
    params.eve().sample(x, rng)
}

/// Crossover probability of Eve's hard-decision BSC surrogate.
pub fn eve_hard_decision_crossover(params: &WiretapChannelParams) -> f64 {
    params.eve().hard_decision_crossover()
}

/// Standard normal upper tail `Q(x) = P(G > x)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    q_function(-x)
}

/// Binary entropy in bits.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
}

pub(crate) fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

pub(crate) fn ln_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// Who consumes a random substream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StreamRole {
    /// Messages, sacrifice bits and hash seeds.
    Source = 0,
    Bob = 1,
    Eve = 2,
}

/// Independent random stream keyed by `(master_seed, block_index, role)`.
///
/// Each key selects its own ChaCha stream, so results depend only on the
/// key and not on which worker draws from it.
pub fn substream(master_seed: u64, block_index: u64, role: StreamRole) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(block_index.wrapping_mul(4).wrapping_add(role as u64));
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;
    use proptest::prelude::*;
    use rand::Rng;

    const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

    fn unit() -> WiretapChannelParams {
        WiretapChannelParams::default()
    }

    #[test]
    fn bob_density_values() {
        let p = unit();
        assert!((density_bob(1.0, BpskSymbol::Plus, &p) - INV_SQRT_2PI).abs() < 1e-15);
        let v = density_bob(0.0, BpskSymbol::Plus, &p);
        assert!((v - (-0.5f64).exp() * INV_SQRT_2PI).abs() < 1e-15);
        assert!((v - 0.241_970_724_519_143_37).abs() < 1e-15);
    }

    #[test]
    fn eve_density_values() {
        let p = WiretapChannelParams::new(0.7, 1.0, 1.0).unwrap();
        assert!((density_eve(0.7, BpskSymbol::Plus, &p) - INV_SQRT_2PI).abs() < 1e-15);
        let same = unit();
        for z in [-3.0, -0.2, 0.0, 1.1, 4.0] {
            for x in BpskSymbol::BOTH {
                assert_eq!(density_eve(z, x, &same), density_bob(z, x, &same));
            }
        }
    }

    #[test]
    fn densities_integrate_to_one() {
        for p in [
            unit(),
            WiretapChannelParams::new(0.5, 2.0, 1.0).unwrap(),
            WiretapChannelParams::new(1.3, 0.5, 0.2).unwrap().with_e0(2.0).unwrap(),
        ] {
            for ch in [p.bob(), p.eve()] {
                let (lo, hi) = ch.support();
                for x in BpskSymbol::BOTH {
                    let m = integrate(|y| ch.density(y, x), lo, hi, 1e-12).unwrap();
                    assert!((m - 1.0).abs() < 1e-9, "{m}");
                }
                let m = integrate(|y| ch.mixture(y), lo, hi, 1e-12).unwrap();
                assert!((m - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn mixture_values() {
        let p = unit();
        assert!((mixture_density_bob(0.0, &p) - 0.241_970_724_519_143_37).abs() < 1e-15);
        let half = WiretapChannelParams::new(0.5, 1.0, 1.0).unwrap();
        assert!(mixture_density_eve(0.0, &half) > mixture_density_bob(0.0, &half));
    }

    #[test]
    fn zero_noise_sampling_is_exact() {
        let p = WiretapChannelParams { gamma_g: 0.5, gamma_n: 1.0, n0: 0.0, e0: 1.5 };
        let mut rng = substream(1, 0, StreamRole::Bob);
        assert_eq!(p.bob().sample(BpskSymbol::Plus, &mut rng), 1.5);
        assert_eq!(p.bob().sample(BpskSymbol::Minus, &mut rng), -1.5);
    }

    #[test]
    fn sample_moments() {
        let p = WiretapChannelParams::new(0.5, 2.0, 1.0).unwrap();
        let n = 1_000_000;
        let mut rng = substream(7, 0, StreamRole::Bob);
        let mean = (0..n).map(|_| sample_bob(BpskSymbol::Plus, &p, &mut rng)).sum::<f64>() / n as f64;
        assert!((mean - 1.0).abs() < 3.0 / (n as f64).sqrt(), "{mean}");

        let mut rng = substream(7, 0, StreamRole::Eve);
        let zs: Vec<f64> = (0..n).map(|_| sample_eve(BpskSymbol::Minus, &p, &mut rng)).collect();
        let m = zs.iter().sum::<f64>() / n as f64;
        let var = zs.iter().map(|z| (z - m) * (z - m)).sum::<f64>() / (n - 1) as f64;
        assert!((var - 2.0).abs() < 0.02, "{var}");
        assert!((m + 0.5).abs() < 3.0 * (2.0 / n as f64).sqrt());
    }

    #[test]
    fn substreams_reproducible_and_distinct() {
        let draw = |seed, block, role| {
            let mut r = substream(seed, block, role);
            (0..4).map(|_| r.random::<u64>()).collect::<Vec<_>>()
        };
        assert_eq!(draw(42, 3, StreamRole::Bob), draw(42, 3, StreamRole::Bob));
        assert_ne!(draw(42, 3, StreamRole::Bob), draw(42, 3, StreamRole::Eve));
        assert_ne!(draw(42, 3, StreamRole::Bob), draw(42, 4, StreamRole::Bob));
        assert_ne!(draw(42, 3, StreamRole::Bob), draw(43, 3, StreamRole::Bob));
    }

    #[test]
    fn crossover_values() {
        let p = WiretapChannelParams::new(0.0, 1.0, 1.0).unwrap();
        assert_eq!(eve_hard_decision_crossover(&p), 0.5);
        let q1 = eve_hard_decision_crossover(&unit());
        assert!((q1 - 0.158_655_253_931_457_05).abs() < 1e-12, "{q1:e}");
        let base = WiretapChannelParams::new(0.5, 1.0, 1.0).unwrap();
        let noisier = WiretapChannelParams { gamma_n: 2.0, ..base };
        let stronger = WiretapChannelParams { gamma_g: 0.8, ..base };
        assert!(eve_hard_decision_crossover(&noisier) > eve_hard_decision_crossover(&base));
        assert!(eve_hard_decision_crossover(&stronger) < eve_hard_decision_crossover(&base));
    }

    #[test]
    fn invalid_params() {
        assert!(WiretapChannelParams::new(-0.1, 1.0, 1.0).is_err());
        assert!(WiretapChannelParams::new(0.1, 0.0, 1.0).is_err());
        assert!(WiretapChannelParams::new(0.1, 1.0, 0.0).is_err());
        assert!(unit().with_e0(0.0).is_err());
    }

    #[test]
    fn bit_mapping() {
        assert_eq!(BpskSymbol::from_bit(false).value(), 1.0);
        assert_eq!(BpskSymbol::from_bit(true).value(), -1.0);
        assert!(BpskSymbol::Minus.to_bit());
    }

    proptest! {
        #[test]
        fn bob_sign_symmetry(y in -20.0f64..20.0, n0 in 0.05f64..5.0) {
            let p = WiretapChannelParams::new(0.4, 1.0, n0).unwrap();
            let a = density_bob(y, BpskSymbol::Plus, &p);
            let b = density_bob(-y, BpskSymbol::Minus, &p);
            prop_assert!((a - b).abs() <= 1e-15 * a.max(1e-300));
        }

        #[test]
        fn mixtures_are_even(y in -20.0f64..20.0, gg in 0.0f64..2.0, gn in 0.1f64..3.0) {
            let p = WiretapChannelParams::new(gg, gn, 0.7).unwrap();
            prop_assert!((mixture_density_eve(y, &p) - mixture_density_eve(-y, &p)).abs() < 1e-15);
            prop_assert!((mixture_density_bob(y, &p) - mixture_density_bob(-y, &p)).abs() < 1e-15);
        }

        #[test]
        fn rescaled_eve_is_biawgn(z in -10.0f64..10.0, gg in 0.0f64..2.0, gn in 0.1f64..4.0, n0 in 0.2f64..3.0) {
            let p = WiretapChannelParams::new(gg, gn, n0).unwrap();
            let rescaled = BiAwgn { amplitude: gg / gn.sqrt(), noise_var: n0 };
            for x in BpskSymbol::BOTH {
                let lhs = density_eve(z, x, &p) * gn.sqrt();
                let rhs = rescaled.density(z / gn.sqrt(), x);
                prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
            }
        }

        #[test]
        fn likelihood_ratio_matches_densities(y in -8.0f64..8.0, a in 0.0f64..3.0, v in 0.2f64..3.0) {
            let ch = BiAwgn { amplitude: a, noise_var: v };
            for x in BpskSymbol::BOTH {
                let direct = (ch.density(y, x) / ch.mixture(y)).ln();
                prop_assert!((direct - ch.ln_likelihood_ratio(y, x)).abs() < 1e-10);
            }
        }
    }
}
