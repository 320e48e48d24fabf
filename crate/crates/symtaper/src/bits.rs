//! Word-packed bit vectors used for the symplectic Pauli representation and
//! for GF(2) linear algebra.

/// Fixed-length bit vector packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut b = Bits::zeros(len);
        for &i in ones {
            b.set(i, true);
        }
        b
    }

    /// Rebuild from raw words; bits beyond `len` are masked off.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut b = Bits { len, words };
        b.mask_tail();
        b
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

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        if v {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    fn mask_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn xor_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// popcount(self & other)
    pub fn and_count(&self, other: &Bits) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Copy with bit `i` deleted; bits above shift down by one.
    pub fn with_bit_removed(&self, i: usize) -> Bits {
        debug_assert!(i < self.len);
        let mut out = Bits::zeros(self.len - 1);
        for j in 0..self.len {
            if j == i {
                continue;
            }
            let dst = if j < i { j } else { j - 1 };
            if self.get(j) {
                out.set(dst, true);
            }
        }
        out
    }

    /// Concatenate two bit vectors (self first).
    pub fn concat(&self, other: &Bits) -> Bits {
        let mut out = Bits::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Split at `mid` into (low, high) halves.
    pub fn split(&self, mid: usize) -> (Bits, Bits) {
        debug_assert!(mid <= self.len);
        let mut lo = Bits::zeros(mid);
        let mut hi = Bits::zeros(self.len - mid);
        for i in self.iter_ones() {
            if i < mid {
                lo.set(i, true);
            } else {
                hi.set(i - mid, true);
            }
        }
        (lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_roundtrip() {
        let mut b = Bits::zeros(130);
        b.set(0, true);
        b.set(64, true);
        b.set(129, true);
        assert!(b.get(0) && b.get(64) && b.get(129));
        assert!(!b.get(1) && !b.get(128));
        assert_eq!(b.count_ones(), 3);
        assert_eq!(b.first_one(), Some(0));
    }

    #[test]
    fn remove_bit_shifts() {
        let b = Bits::from_indices(5, &[0, 2, 4]);
        let r = b.with_bit_removed(2);
        assert_eq!(r.len(), 4);
        assert_eq!(r.iter_ones().collect::<Vec<_>>(), vec![0, 3]);
    }

    #[test]
    fn concat_split_inverse() {
        let a = Bits::from_indices(3, &[1]);
        let b = Bits::from_indices(4, &[0, 3]);
        let c = a.concat(&b);
        let (lo, hi) = c.split(3);
        assert_eq!(lo, a);
        assert_eq!(hi, b);
    }
}
