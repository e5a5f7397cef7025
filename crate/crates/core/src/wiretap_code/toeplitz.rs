//! Modified Toeplitz hashing over GF(2).
//!
//! `T` is a `k x k'` matrix that is constant along diagonals:
//! `T[i][j] = seed[i - j + k' - 1]` for a seed of `k + k' - 1` bits. Its
//! product with `x` is a window of the carry-less product `seed(X) * x(X)`:
//! `(T x)_i = coeff_{i + k' - 1}(seed * x)`, which is how the fast path
//! evaluates it.

use crate::bits::BitWord;
use crate::error::{Error, Result};

/// Random seed of a `k x k'` Toeplitz matrix (`k + k' - 1` bits).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ToeplitzSeed(pub BitWord);

impl ToeplitzSeed {
    pub fn len_for(k: usize, k_prime: usize) -> usize {
        (k + k_prime).saturating_sub(1)
    }

    pub fn random<R: rand::Rng + ?Sized>(k: usize, k_prime: usize, rng: &mut R) -> Self {
        Self(BitWord::random(Self::len_for(k, k_prime), rng))
    }

    pub fn bits(&self) -> &BitWord {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToeplitzMatrix {
    k: usize,
    k_prime: usize,
    seed: BitWord,
}

/// Builds the `k x k'` Toeplitz matrix of `seed`.
pub fn toeplitz_from_seed(seed: &ToeplitzSeed, k: usize, k_prime: usize) -> Result<ToeplitzMatrix> {
    ToeplitzMatrix::from_seed(seed, k, k_prime)
}

impl ToeplitzMatrix {
    pub fn from_seed(seed: &ToeplitzSeed, k: usize, k_prime: usize) -> Result<Self> {
        if k + k_prime == 0 {
            return Err(Error::Argument("hash needs k + k' >= 1".into()));
        }
        let want = ToeplitzSeed::len_for(k, k_prime);
        if seed.0.len() != want {
            return Err(Error::Dimension { what: "Toeplitz seed", expected: want, actual: seed.0.len() });
        }
        Ok(Self { k, k_prime, seed: seed.0.clone() })
    }

    pub fn rows(&self) -> usize {
        self.k
    }

    pub fn cols(&self) -> usize {
        self.k_prime
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        assert!(i < self.k && j < self.k_prime, "entry ({i}, {j}) out of range");
        self.seed.get(i + self.k_prime - 1 - j)
    }

    fn check_input(&self, x: &BitWord) -> Result<()> {
        if x.len() != self.k_prime {
            return Err(Error::Dimension { what: "Toeplitz product", expected: self.k_prime, actual: x.len() });
        }
        Ok(())
    }

    /// Entry-by-entry matrix-vector product.
    pub fn mul_naive(&self, x: &BitWord) -> Result<BitWord> {
        self.check_input(x)?;
        let mut y = BitWord::zeros(self.k);
        for i in 0..self.k {
            let mut acc = false;
            for j in 0..self.k_prime {
                acc ^= self.entry(i, j) & x.get(j);
            }
            y.set(i, acc);
        }
        Ok(y)
    }

    /// Product through carry-less polynomial multiplication.
    pub fn mul_fast(&self, x: &BitWord) -> Result<BitWord> {
        self.check_input(x)?;
        if self.k_prime == 0 || self.k == 0 {
            return Ok(BitWord::zeros(self.k));
        }
        let product = clmul_poly(self.seed.words(), x.words());
        Ok(BitWord::from_words_window(&product, self.k_prime - 1, self.k))
    }
}

/// `toeplitz_mul_fast` under its operation name.
pub fn toeplitz_mul_fast(t: &ToeplitzMatrix, x: &BitWord) -> Result<BitWord> {
    t.mul_fast(x)
}

/// 64 x 64 -> 128 bit carry-less multiply, returned as (low, high).
fn clmul64(a: u64, b: u64) -> (u64, u64) {
    let (mut lo, mut hi) = (0u64, 0u64);
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        lo ^= b << i;
        if i != 0 {
            hi ^= b >> (64 - i);
        }
        rest &= rest - 1;
    }
    (lo, hi)
}

fn schoolbook(a: &[u64], b: &[u64], out: &mut [u64]) {
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let (lo, hi) = clmul64(x, y);
            out[i + j] ^= lo;
            out[i + j + 1] ^= hi;
        }
    }
}

const KARATSUBA_CUTOFF: usize = 16;

/// Karatsuba over equal-length operands; `out` has `2 * a.len()` words.
fn karatsuba(a: &[u64], b: &[u64], out: &mut [u64]) {
    let n = a.len();
    if n <= KARATSUBA_CUTOFF {
        schoolbook(a, b, out);
        return;
    }
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let m = n - h;
    let mut z0 = vec![0u64; 2 * h];
    let mut z2 = vec![0u64; 2 * m];
    karatsuba(a0, b0, &mut z0);
    karatsuba(a1, b1, &mut z2);
    let mut sa = a1.to_vec();
    let mut sb = b1.to_vec();
    for i in 0..h {
        sa[i] ^= a0[i];
        sb[i] ^= b0[i];
    }
    let mut z1 = vec![0u64; 2 * m];
    karatsuba(&sa, &sb, &mut z1);
    for (i, v) in z0.iter().enumerate() {
        z1[i] ^= v;
    }
    for (i, v) in z2.iter().enumerate() {
        z1[i] ^= v;
    }
    for (i, v) in z0.iter().enumerate() {
        out[i] ^= v;
    }
    for (i, v) in z2.iter().enumerate() {
        out[2 * h + i] ^= v;
    }
    for (i, v) in z1.iter().enumerate() {
        out[h + i] ^= v;
    }
}

/// Carry-less product of two packed GF(2) polynomials.
pub(crate) fn clmul_poly(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len().max(b.len());
    if a.len().min(b.len()) <= KARATSUBA_CUTOFF {
        let mut out = vec![0u64; a.len() + b.len()];
        schoolbook(a, b, &mut out);
        return out;
    }
    let mut pa = a.to_vec();
    let mut pb = b.to_vec();
    pa.resize(n, 0);
    pb.resize(n, 0);
    let mut out = vec![0u64; 2 * n];
    karatsuba(&pa, &pb, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{substream, StreamRole};
    use rand::Rng;

    fn seed(bits: &str) -> ToeplitzSeed {
        ToeplitzSeed(BitWord::from_bin_str(bits).unwrap())
    }

    #[test]
    fn one_by_one() {
        let t = toeplitz_from_seed(&seed("1"), 1, 1).unwrap();
        assert!(t.entry(0, 0));
    }

    #[test]
    fn two_by_two_layout() {
        // seed = [s0, s1, s2] -> [[s1, s0], [s2, s1]]
        for v in 0..8u64 {
            let s = BitWord::from_u64(v, 3);
            let t = toeplitz_from_seed(&ToeplitzSeed(s.clone()), 2, 2).unwrap();
            assert_eq!(t.entry(0, 0), s.get(1));
            assert_eq!(t.entry(0, 1), s.get(0));
            assert_eq!(t.entry(1, 0), s.get(2));
            assert_eq!(t.entry(1, 1), s.get(1));
        }
    }

    #[test]
    fn diagonals_constant() {
        let mut rng = substream(5, 0, StreamRole::Source);
        let t = ToeplitzMatrix::from_seed(&ToeplitzSeed::random(7, 5, &mut rng), 7, 5).unwrap();
        for i in 0..6 {
            for j in 0..4 {
                assert_eq!(t.entry(i, j), t.entry(i + 1, j + 1));
            }
        }
    }

    #[test]
    fn zero_seed_and_zero_input() {
        let t = toeplitz_from_seed(&ToeplitzSeed(BitWord::zeros(6)), 4, 3).unwrap();
        for v in 0..8 {
            assert!(t.mul_fast(&BitWord::from_u64(v, 3)).unwrap().is_zero());
        }
        let t = toeplitz_from_seed(&seed("101101"), 4, 3).unwrap();
        assert!(t.mul_fast(&BitWord::zeros(3)).unwrap().is_zero());
    }

    #[test]
    fn seed_length_checked() {
        assert!(toeplitz_from_seed(&seed("10"), 2, 2).is_err());
        assert!(toeplitz_from_seed(&ToeplitzSeed(BitWord::zeros(0)), 0, 0).is_err());
        let t = toeplitz_from_seed(&seed("101"), 2, 2).unwrap();
        assert!(t.mul_fast(&BitWord::zeros(3)).is_err());
        assert!(t.mul_naive(&BitWord::zeros(1)).is_err());
    }

    #[test]
    fn no_sacrifice_columns() {
        let t = toeplitz_from_seed(&seed("101"), 4, 0).unwrap();
        assert_eq!(t.mul_fast(&BitWord::zeros(0)).unwrap(), BitWord::zeros(4));
    }

    #[test]
    fn fast_matches_naive_at_64() {
        let mut rng = substream(11, 0, StreamRole::Source);
        for _ in 0..1000 {
            let k = rng.random_range(1..64);
            let kp = 64 - k;
            let s = ToeplitzSeed::random(k, kp, &mut rng);
            let t = ToeplitzMatrix::from_seed(&s, k, kp).unwrap();
            let x = BitWord::random(kp, &mut rng);
            assert_eq!(t.mul_fast(&x).unwrap(), t.mul_naive(&x).unwrap());
        }
    }

    #[test]
    fn fast_matches_naive_at_4096() {
        let mut rng = substream(12, 0, StreamRole::Source);
        for _ in 0..10 {
            let k = rng.random_range(1..4096);
            let kp = 4096 - k;
            let s = ToeplitzSeed::random(k, kp, &mut rng);
            let t = ToeplitzMatrix::from_seed(&s, k, kp).unwrap();
            let x = BitWord::random(kp, &mut rng);
            assert_eq!(t.mul_fast(&x).unwrap(), t.mul_naive(&x).unwrap());
        }
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let mut rng = substream(13, 0, StreamRole::Source);
        for (la, lb) in [(17, 17), (40, 33), (64, 64), (100, 3), (129, 70)] {
            let a: Vec<u64> = (0..la).map(|_| rng.random()).collect();
            let b: Vec<u64> = (0..lb).map(|_| rng.random()).collect();
            let mut want = vec![0u64; la + lb];
            schoolbook(&a, &b, &mut want);
            let mut got = clmul_poly(&a, &b);
            got.truncate(la + lb);
            assert_eq!(got, want, "{la}x{lb}");
        }
    }

    #[test]
    fn clmul64_small() {
        // (x + 1)^2 = x^2 + 1 over GF(2)
        assert_eq!(clmul64(0b11, 0b11), (0b101, 0));
        assert_eq!(clmul64(1 << 63, 1 << 63), (0, 1 << 62));
    }
}
