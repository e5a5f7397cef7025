//! Coset wiretap encoder and decoder.
//!
//! A message `m` (k bits) and fresh random sacrifice bits `l` (k' bits) are
//! premixed to `(m ^ T l, l)` and passed through a linear ECC. The decoder
//! runs the ECC decoder and hashes the result with `(I, T)`, which undoes the
//! premix because `T + T = 0` over GF(2).

mod ecc;
mod toeplitz;

pub use ecc::{ecc_by_name, hard_decisions, EccScheme, Hamming74, Identity, Repetition3, ECC_NAMES};
pub use toeplitz::{toeplitz_from_seed, toeplitz_mul_fast, ToeplitzMatrix, ToeplitzSeed};

use crate::bits::BitWord;
use crate::error::{argument, Error, Result};

/// Largest `k + k'` accepted by [`coset_preimage_size`].
pub const PREIMAGE_MAX_BITS: usize = 12;

/// `first_k(v) ^ T last_k'(v)`.
pub fn hash(v: &BitWord, t: &ToeplitzMatrix) -> Result<BitWord> {
    let (k, kp) = (t.rows(), t.cols());
    if v.len() != k + kp {
        return Err(Error::Dimension { what: "hash input", expected: k + kp, actual: v.len() });
    }
    let mut out = t.mul_fast(&v.slice(k, kp))?;
    out.xor_assign(&v.slice(0, k))?;
    Ok(out)
}

/// `(m ^ T l, l)`, the message vector handed to the ECC.
pub fn premix(m: &BitWord, l: &BitWord, t: &ToeplitzMatrix) -> Result<BitWord> {
    if m.len() != t.rows() {
        return Err(Error::Dimension { what: "message", expected: t.rows(), actual: m.len() });
    }
    let mut head = t.mul_fast(l)?;
    head.xor_assign(m)?;
    Ok(head.concat(l))
}

/// A fixed (hash seed, ECC) pair.
#[derive(Debug)]
pub struct WiretapCode<'a> {
    t: ToeplitzMatrix,
    ecc: &'a dyn EccScheme,
}

impl<'a> WiretapCode<'a> {
    pub fn new(k: usize, k_prime: usize, seed: &ToeplitzSeed, ecc: &'a dyn EccScheme) -> Result<Self> {
        if ecc.message_len() != k + k_prime {
            return Err(Error::Dimension {
                what: "ECC message length",
                expected: k + k_prime,
                actual: ecc.message_len(),
            });
        }
        Ok(Self { t: ToeplitzMatrix::from_seed(seed, k, k_prime)?, ecc })
    }

    pub fn k(&self) -> usize {
        self.t.rows()
    }

    pub fn k_prime(&self) -> usize {
        self.t.cols()
    }

    pub fn n(&self) -> usize {
        self.ecc.block_len()
    }

    pub fn matrix(&self) -> &ToeplitzMatrix {
        &self.t
    }

    pub fn encode(&self, m: &BitWord, l: &BitWord) -> Result<BitWord> {
        self.ecc.encode(&premix(m, l, &self.t)?)
    }

    pub fn decode(&self, y: &[f64]) -> Result<BitWord> {
        hash(&self.ecc.decode(y)?, &self.t)
    }
}

/// `phi_e((m ^ T l, l))` for `k = m.len()`, `k' = l.len()`.
pub fn encode(m: &BitWord, l: &BitWord, seed: &ToeplitzSeed, ecc: &dyn EccScheme) -> Result<BitWord> {
    WiretapCode::new(m.len(), l.len(), seed, ecc)?.encode(m, l)
}

/// `hash(phi_d(y))`. `k` is needed because the seed length only fixes `k + k'`.
pub fn decode(y: &[f64], k: usize, seed: &ToeplitzSeed, ecc: &dyn EccScheme) -> Result<BitWord> {
    let kp = ecc
        .message_len()
        .checked_sub(k)
        .ok_or_else(|| argument(format!("k = {k} exceeds ECC message length {}", ecc.message_len())))?;
    WiretapCode::new(k, kp, seed, ecc)?.decode(y)
}

/// Number of `v` in `F_2^{k+k'}` with `hash(v) = m`, by enumeration.
pub fn coset_preimage_size(t: &ToeplitzMatrix, m: &BitWord) -> Result<u64> {
    let total = t.rows() + t.cols();
    if total > PREIMAGE_MAX_BITS {
        return Err(argument(format!(
            "exhaustive preimage count needs k + k' <= {PREIMAGE_MAX_BITS}, got {total}"
        )));
    }
    let mut count = 0;
    for v in 0..1u64 << total {
        if hash(&BitWord::from_u64(v, total), t)? == *m {
            count += 1;
        }
    }
    Ok(count)
}

/// BPSK map: bit 0 to `+1`, bit 1 to `-1`.
pub fn bpsk(c: &BitWord) -> Vec<f64> {
    c.iter().map(|b| if b { -1.0 } else { 1.0 }).collect()
}
