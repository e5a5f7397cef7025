//! Packed bit vectors over GF(2).
//!
//! Bit `i` is the `i`-th transmitted bit. Internally it lives in word
//! `i / 64` at position `i % 64`, so a `BitWord` doubles as a GF(2)
//! polynomial whose coefficient of `x^i` is bit `i`.
//!
//! Text forms: binary strings list bits in index order; hex packs bit `8j`
//! into the most significant bit of byte `j`, and trailing pad bits are zero.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct BitWord {
    words: Vec<u64>,
    len: usize,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitWord {
    pub fn zeros(len: usize) -> Self {
        Self { words: vec![0; words_for(len)], len }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut w = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            w.set(i, b);
        }
        w
    }

    /// Low `len` bits of `value`, bit `i` of the word being bit `i` of `value`.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= 64, "from_u64 supports at most 64 bits");
        let mut w = Self::zeros(len);
        if len > 0 {
            w.words[0] = value;
            w.mask_tail();
        }
        w
    }

    /// Reads bits `[start, start + len)` of a packed word slice.
    pub fn from_words_window(words: &[u64], start: usize, len: usize) -> Self {
        let mut out = Self::zeros(len);
        let shift = start % 64;
        let base = start / 64;
        for (i, o) in out.words.iter_mut().enumerate() {
            let lo = words.get(base + i).copied().unwrap_or(0);
            let hi = words.get(base + i + 1).copied().unwrap_or(0);
            *o = if shift == 0 { lo } else { (lo >> shift) | (hi << (64 - shift)) };
        }
        out.mask_tail();
        out
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut w = Self { words: (0..words_for(len)).map(|_| rng.random()).collect(), len };
        w.mask_tail();
        w
    }

    fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Value of the low 64 bits (bit `i` at position `i`).
    pub fn to_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let m = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitWord) -> Result<()> {
        if self.len != other.len {
            return Err(Error::Dimension { what: "xor", expected: self.len, actual: other.len });
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    pub fn xor(&self, other: &BitWord) -> Result<BitWord> {
        let mut out = self.clone();
        out.xor_assign(other)?;
        Ok(out)
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitWord) -> Result<bool> {
        if self.len != other.len {
            return Err(Error::Dimension { what: "dot", expected: self.len, actual: other.len });
        }
        let ones: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        Ok(ones % 2 == 1)
    }

    pub fn hamming_distance(&self, other: &BitWord) -> Result<usize> {
        Ok(self.xor(other)?.count_ones())
    }

    /// Bits `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitWord {
        assert!(start + len <= self.len, "slice [{start}, {}) out of range {}", start + len, self.len);
        Self::from_words_window(&self.words, start, len)
    }

    /// `self` followed by `tail`.
    pub fn concat(&self, tail: &BitWord) -> BitWord {
        let mut out = BitWord::zeros(self.len + tail.len);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        let shift = self.len % 64;
        let base = self.len / 64;
        for (i, &w) in tail.words.iter().enumerate() {
            out.words[base + i] |= w << shift;
            if shift != 0 && base + i + 1 < out.words.len() {
                out.words[base + i + 1] |= w >> (64 - shift);
            }
        }
        out.mask_tail();
        out
    }

    pub fn to_bin_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    pub fn from_bin_str(s: &str) -> Result<BitWord> {
        let bits = s
            .trim()
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_')
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid binary digit {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(BitWord::from_bools(&bits))
    }

    /// Bytes with bit `8j` in the MSB of byte `j`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut bytes = vec![0u8; self.len.div_ceil(8)];
        for i in (0..self.len).filter(|&i| self.get(i)) {
            bytes[i / 8] |= 0x80 >> (i % 8);
        }
        bytes
    }

    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<BitWord> {
        if bytes.len() != len.div_ceil(8) {
            return Err(Error::Parse(format!(
                "{len} bits need {} bytes, got {}",
                len.div_ceil(8),
                bytes.len()
            )));
        }
        let mut w = BitWord::zeros(len);
        for (j, &byte) in bytes.iter().enumerate() {
            for b in 0..8 {
                if byte & (0x80 >> b) != 0 {
                    let i = 8 * j + b;
                    if i >= len {
                        return Err(Error::Parse(format!("non-zero padding bit at position {i}")));
                    }
                    w.set(i, true);
                }
            }
        }
        Ok(w)
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.to_bytes())
    }

    pub fn from_hex(s: &str, len: usize) -> Result<BitWord> {
        let bytes = hex::decode(s.trim()).map_err(|e| Error::Parse(format!("bad hex: {e}")))?;
        Self::from_bytes(&bytes, len)
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({})", self.to_bin_string())
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bin_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hex_is_msb_first() {
        let w = BitWord::from_bin_str("10000000 01").unwrap();
        assert_eq!(w.len(), 10);
        assert_eq!(w.to_hex(), "8040");
        assert_eq!(BitWord::from_hex("8040", 10).unwrap(), w);
        assert!(BitWord::from_hex("8041", 10).is_err());
        assert!(BitWord::from_hex("80", 10).is_err());
        assert!(BitWord::from_hex("zz", 8).is_err());
    }

    #[test]
    fn concat_and_slice() {
        let a = BitWord::from_bin_str(&"1".repeat(63)).unwrap();
        let b = BitWord::from_bin_str("0110").unwrap();
        let c = a.concat(&b);
        assert_eq!(c.len(), 67);
        assert_eq!(c.slice(63, 4), b);
        assert_eq!(c.slice(0, 63), a);
        assert_eq!(c.to_bin_string(), format!("{}0110", "1".repeat(63)));
    }

    #[test]
    fn dimension_errors() {
        let a = BitWord::zeros(3);
        let b = BitWord::zeros(4);
        assert!(a.xor(&b).is_err());
        assert!(a.dot(&b).is_err());
    }

    #[test]
    fn u64_round_trip() {
        let w = BitWord::from_u64(0b1011, 4);
        assert_eq!(w.to_bin_string(), "1101");
        assert_eq!(w.to_u64(), 0b1011);
        assert_eq!(BitWord::from_u64(0xff, 3).to_u64(), 0b111);
    }

    proptest! {
        #[test]
        fn hex_and_binary_round_trip(bits in proptest::collection::vec(any::<bool>(), 0..300)) {
            let w = BitWord::from_bools(&bits);
            prop_assert_eq!(BitWord::from_hex(&w.to_hex(), w.len()).unwrap(), w.clone());
            prop_assert_eq!(BitWord::from_bin_str(&w.to_bin_string()).unwrap(), w);
        }

        #[test]
        fn concat_slices_back(a in proptest::collection::vec(any::<bool>(), 0..200),
                              b in proptest::collection::vec(any::<bool>(), 0..200)) {
            let (wa, wb) = (BitWord::from_bools(&a), BitWord::from_bools(&b));
            let c = wa.concat(&wb);
            prop_assert_eq!(c.slice(0, a.len()), wa);
            prop_assert_eq!(c.slice(a.len(), b.len()), wb);
        }
    }
}
