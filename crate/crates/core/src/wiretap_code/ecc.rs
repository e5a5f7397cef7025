//! Linear error-correcting codes that carry the wiretap code.
//!
//! Decoders work on hard decisions: a received real `y < 0` reads as bit 1
//! (BPSK `-1`), anything else as bit 0.

use std::fmt::Debug;

use crate::bits::BitWord;
use crate::error::{argument, Error, Result};

/// An injective GF(2)-linear encoder with a matching decoder.
pub trait EccScheme: Debug + Send + Sync {
    fn name(&self) -> &'static str;
    /// Message length `k + k'`.
    fn message_len(&self) -> usize;
    /// Block length `n`.
    fn block_len(&self) -> usize;
    fn encode(&self, message: &BitWord) -> Result<BitWord>;
    /// Decodes channel reals. Returns [`Error::DecodeFailure`] when the
    /// decoder gives up, which is distinct from returning a wrong message.
    fn decode(&self, received: &[f64]) -> Result<BitWord>;
}

/// Names accepted by [`ecc_by_name`].
pub const ECC_NAMES: [&str; 3] = ["identity", "rep3", "hamming74"];

/// Looks up a scheme by name for a given message length.
pub fn ecc_by_name(name: &str, message_len: usize) -> Result<Box<dyn EccScheme>> {
    match name {
        "identity" => Ok(Box::new(Identity::new(message_len))),
        "rep3" => Ok(Box::new(Repetition3::new(message_len))),
        "hamming74" => Ok(Box::new(Hamming74::new(message_len)?)),
        other => Err(argument(format!(
            "unknown ECC {other:?}; expected one of {}",
            ECC_NAMES.join(", ")
        ))),
    }
}

pub fn hard_decisions(received: &[f64]) -> BitWord {
    let bits: Vec<bool> = received.iter().map(|&y| y < 0.0).collect();
    BitWord::from_bools(&bits)
}

fn check_len(what: &'static str, expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::Dimension { what, expected, actual });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Identity {
    len: usize,
}

impl Identity {
    pub fn new(len: usize) -> Self {
        Self { len }
    }
}

impl EccScheme for Identity {
    fn name(&self) -> &'static str {
        "identity"
    }
    fn message_len(&self) -> usize {
        self.len
    }
    fn block_len(&self) -> usize {
        self.len
    }
    fn encode(&self, message: &BitWord) -> Result<BitWord> {
        check_len("identity encode", self.len, message.len())?;
        Ok(message.clone())
    }
    fn decode(&self, received: &[f64]) -> Result<BitWord> {
        check_len("identity decode", self.len, received.len())?;
        Ok(hard_decisions(received))
    }
}

/// Each bit sent three times in a row; majority vote.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Repetition3 {
    len: usize,
}

impl Repetition3 {
    pub fn new(len: usize) -> Self {
        Self { len }
    }
}

impl EccScheme for Repetition3 {
    fn name(&self) -> &'static str {
        "rep3"
    }
    fn message_len(&self) -> usize {
        self.len
    }
    fn block_len(&self) -> usize {
        3 * self.len
    }
    fn encode(&self, message: &BitWord) -> Result<BitWord> {
        check_len("rep3 encode", self.len, message.len())?;
        let mut out = BitWord::zeros(3 * self.len);
        for i in (0..self.len).filter(|&i| message.get(i)) {
            for r in 0..3 {
                out.set(3 * i + r, true);
            }
        }
        Ok(out)
    }
    fn decode(&self, received: &[f64]) -> Result<BitWord> {
        check_len("rep3 decode", 3 * self.len, received.len())?;
        let hard = hard_decisions(received);
        let mut out = BitWord::zeros(self.len);
        for i in 0..self.len {
            let votes = (0..3).filter(|&r| hard.get(3 * i + r)).count();
            out.set(i, votes >= 2);
        }
        Ok(out)
    }
}

/// Systematic Hamming(7,4), applied block-wise to messages whose length is a
/// multiple of 4. Codeword layout per block: `d1 d2 d3 d4 p1 p2 p3` with
/// `p1 = d1+d2+d4`, `p2 = d1+d3+d4`, `p3 = d2+d3+d4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hamming74 {
    blocks: usize,
}

// Parity-check columns for positions d1..d4, p1..p3 as 3-bit syndromes.
const H_COLUMNS: [u8; 7] = [0b011, 0b101, 0b110, 0b111, 0b001, 0b010, 0b100];

impl Hamming74 {
    pub fn new(message_len: usize) -> Result<Self> {
        if message_len == 0 || message_len % 4 != 0 {
            return Err(argument(format!(
                "hamming74 needs a message length that is a positive multiple of 4, got {message_len}"
            )));
        }
        Ok(Self { blocks: message_len / 4 })
    }

    fn encode_block(d: [bool; 4]) -> [bool; 7] {
        [d[0], d[1], d[2], d[3], d[0] ^ d[1] ^ d[3], d[0] ^ d[2] ^ d[3], d[1] ^ d[2] ^ d[3]]
    }

    fn syndrome(c: &[bool; 7]) -> u8 {
        c.iter()
            .zip(H_COLUMNS)
            .filter(|(b, _)| **b)
            .fold(0, |acc, (_, col)| acc ^ col)
    }
}

impl EccScheme for Hamming74 {
    fn name(&self) -> &'static str {
        "hamming74"
    }
    fn message_len(&self) -> usize {
        4 * self.blocks
    }
    fn block_len(&self) -> usize {
        7 * self.blocks
    }
    fn encode(&self, message: &BitWord) -> Result<BitWord> {
        check_len("hamming74 encode", self.message_len(), message.len())?;
        let mut out = BitWord::zeros(self.block_len());
        for b in 0..self.blocks {
            let d = [0, 1, 2, 3].map(|i| message.get(4 * b + i));
            for (i, bit) in Self::encode_block(d).into_iter().enumerate() {
                out.set(7 * b + i, bit);
            }
        }
        Ok(out)
    }
    fn decode(&self, received: &[f64]) -> Result<BitWord> {
        check_len("hamming74 decode", self.block_len(), received.len())?;
        let hard = hard_decisions(received);
        let mut out = BitWord::zeros(self.message_len());
        for b in 0..self.blocks {
            let mut c = [0, 1, 2, 3, 4, 5, 6].map(|i| hard.get(7 * b + i));
            let s = Self::syndrome(&c);
            if s != 0 {
                let pos = H_COLUMNS
                    .iter()
                    .position(|&col| col == s)
                    .ok_or_else(|| Error::DecodeFailure(format!("syndrome {s:03b} in block {b}")))?;
                c[pos] = !c[pos];
            }
            for i in 0..4 {
                out.set(4 * b + i, c[i]);
            }
        }
        Ok(out)
    }
}
