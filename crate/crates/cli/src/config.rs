//! Flat TOML configuration.
//!
//! Keys are the long flag names with `-` replaced by `_`, all at top level:
//!
//! ```toml
//! gamma_g = 0.3
//! gamma_n = 2.0
//! n = 32400
//! rho_sec = 0.1
//! ecc = "hamming74"
//! ```
//!
//! A value given on the command line wins over the file, and the file wins
//! over the built-in default.

use std::path::Path;

use anyhow::{bail, Context, Result};
use toml::Value;

#[derive(Debug, Default, Clone)]
pub struct Config {
    table: toml::Table,
}

pub const KNOWN_KEYS: &[&str] = &[
    "rho_b", "rho_e", "theta_e", "r", "a", "mu", "grid_theta", "grid_ratio",
    "gamma_g", "gamma_n", "n0", "e0", "snr_sweep",
    "y_min", "y_max", "y_step",
    "n", "k", "k_prime", "rho_sec", "s_grid",
    "ecc", "seed", "trials", "master_seed", "fixed_hash_seed",
    "levels", "range", "threads",
];

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in config {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let table: toml::Table = text.parse()?;
        for (key, value) in &table {
            if !KNOWN_KEYS.contains(&key.as_str()) {
                bail!("unknown config key {key:?}");
            }
            if matches!(value, Value::Table(_) | Value::Array(_)) {
                bail!("config key {key:?} must be a scalar; nested tables are not supported");
            }
        }
        Ok(Self { table })
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>> {
        match self.table.get(key) {
            None => Ok(None),
            Some(Value::Float(v)) => Ok(Some(*v)),
            Some(Value::Integer(v)) => Ok(Some(*v as f64)),
            Some(other) => bail!("config key {key:?} must be a number, got {other}"),
        }
    }

    pub fn u64(&self, key: &str) -> Result<Option<u64>> {
        match self.table.get(key) {
            None => Ok(None),
            Some(Value::Integer(v)) if *v >= 0 => Ok(Some(*v as u64)),
            Some(other) => bail!("config key {key:?} must be a non-negative integer, got {other}"),
        }
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>> {
        Ok(self.u64(key)?.map(|v| v as usize))
    }

    pub fn string(&self, key: &str) -> Result<Option<String>> {
        match self.table.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(other) => bail!("config key {key:?} must be a string, got {other}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_typed_values() {
        let c = Config::parse("gamma_g = 0.3\nn = 32400\necc = \"rep3\"\nn0 = 1").unwrap();
        assert_eq!(c.f64("gamma_g").unwrap(), Some(0.3));
        assert_eq!(c.f64("n0").unwrap(), Some(1.0));
        assert_eq!(c.usize("n").unwrap(), Some(32400));
        assert_eq!(c.string("ecc").unwrap().as_deref(), Some("rep3"));
        assert_eq!(c.f64("gamma_n").unwrap(), None);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Config::parse("gamma = 1").is_err());
        assert!(Config::parse("[bound]\nn = 3").is_err());
        assert!(Config::parse("n = -3").unwrap().u64("n").is_err());
        assert!(Config::parse("gamma_g = \"x\"").unwrap().f64("gamma_g").is_err());
    }
}
