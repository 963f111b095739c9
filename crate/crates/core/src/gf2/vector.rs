use std::fmt;

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Packed GF(2) vector.
///
/// Bits beyond `len` in the last word are always zero, so word-level
/// equality, hashing and popcounts are exact.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryVector {
    len: usize,
    words: Vec<u64>,
}

impl BinaryVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![!0; words_for(len)],
        };
        v.mask_tail();
        v
    }

    /// Builds from a slice of 0/1 values; any nonzero entry counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    /// Parses a string of `0`/`1` characters, ignoring spaces and `|`.
    pub fn parse(s: &str) -> Option<Self> {
        let mut bits = Vec::new();
        for c in s.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                ' ' | '|' | '_' => {}
                _ => return None,
            }
        }
        Some(Self::from_bits(&bits))
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Self { len, words };
        v.mask_tail();
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of set bits in ascending order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    pub fn xor_assign(&mut self, other: &BinaryVector) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BinaryVector) -> BinaryVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Standard GF(2) inner product.
    pub fn dot(&self, other: &BinaryVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot product");
        parity_and(&self.words, &other.words)
    }

    pub fn concat(&self, other: &BinaryVector) -> BinaryVector {
        let mut out = BinaryVector::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Copies bits `start..end` into a new vector.
    pub fn slice(&self, start: usize, end: usize) -> BinaryVector {
        assert!(start <= end && end <= self.len);
        let mut out = BinaryVector::zeros(end - start);
        for i in self.iter_ones().skip_while(|&i| i < start) {
            if i >= end {
                break;
            }
            out.set(i - start, true);
        }
        out
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

#[inline]
pub(crate) fn parity_and(a: &[u64], b: &[u64]) -> bool {
    let mut acc = 0u64;
    for (x, y) in a.iter().zip(b) {
        acc ^= x & y;
    }
    acc.count_ones() & 1 == 1
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryVector({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_and_weight() {
        let mut v = BinaryVector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.weight(), 3);
        assert!(v.get(129));
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        v.flip(64);
        assert_eq!(v.weight(), 2);
    }

    #[test]
    fn ones_masks_tail() {
        let v = BinaryVector::ones(70);
        assert_eq!(v.weight(), 70);
        assert_eq!(v, BinaryVector::from_indices(70, 0..70));
    }

    #[test]
    fn parse_and_display() {
        let v = BinaryVector::parse("0101|0001").unwrap();
        assert_eq!(v.len(), 8);
        assert_eq!(v.to_string(), "01010001");
        assert!(BinaryVector::parse("01x").is_none());
    }

    #[test]
    fn dot_and_slice() {
        let a = BinaryVector::parse("1101").unwrap();
        let b = BinaryVector::parse("1001").unwrap();
        assert!(!a.dot(&b));
        assert_eq!(a.slice(1, 3).to_string(), "10");
        assert_eq!(a.concat(&b).to_string(), "11011001");
    }
}
