//! Bit-packed row arithmetic over GF(2).
//!
//! Rows are fixed-width bit vectors keyed by a dense enumeration `0..dim`
//! of the client's basis. Row addition is a word-wise XOR, which is what
//! makes rank computations in 1024-dimensional group-algebra components
//! tractable.

use crate::scalar::{FieldSpec, Scalar};

use super::SparseVec;

/// A GF(2) vector of fixed width.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Vec {
    nbits: usize,
    words: Vec<u64>,
}

impl Gf2Vec {
    pub fn zero(nbits: usize) -> Self {
        Gf2Vec { nbits, words: vec![0; nbits.div_ceil(64)] }
    }

    pub fn from_support(nbits: usize, support: impl IntoIterator<Item = u32>) -> Self {
        let mut v = Gf2Vec::zero(nbits);
        for i in support {
            v.toggle(i as usize);
        }
        v
    }

    pub fn nbits(&self) -> usize {
        self.nbits
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.nbits);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.words[i >> 6] ^= 1 << (i & 63);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, rhs: &Gf2Vec) {
        debug_assert_eq!(self.nbits, rhs.nbits);
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }

    /// Index of the lowest set bit, if any.
    pub fn lowest_set_bit(&self) -> Option<usize> {
        for (w, &word) in self.words.iter().enumerate() {
            if word != 0 {
                return Some((w << 6) + word.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn support(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(((w << 6) + b) as u32);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Row-reduced GF(2) span with the same invariants as the generic
/// [`super::Echelon`]: pivots strictly increasing, pivot = lowest set bit of
/// its row, pivot bits cleared from every other row.
#[derive(Clone, Debug)]
pub struct Gf2Echelon {
    dim: usize,
    rows: Vec<Gf2Vec>,
    pivots: Vec<u32>,
}

impl Gf2Echelon {
    pub fn new(dim: usize) -> Self {
        Gf2Echelon { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Gf2Vec] {
        &self.rows
    }

    pub fn is_pivot(&self, index: u32) -> bool {
        self.pivots.binary_search(&index).is_ok()
    }

    pub fn reduce(&self, mut v: Gf2Vec) -> Gf2Vec {
        debug_assert_eq!(v.nbits(), self.dim);
        for (row, &pivot) in self.rows.iter().zip(&self.pivots) {
            if v.get(pivot as usize) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &Gf2Vec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    pub fn insert(&mut self, v: Gf2Vec) -> bool {
        let residue = self.reduce(v);
        let Some(pivot) = residue.lowest_set_bit() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(pivot) {
                row.xor_assign(&residue);
            }
        }
        let at = self
            .pivots
            .binary_search(&(pivot as u32))
            .expect_err("pivot already present");
        self.pivots.insert(at, pivot as u32);
        self.rows.insert(at, residue);
        true
    }
}

/// Pack a sparse vector into a bit row. Coefficients must come from a
/// characteristic-2 field, so each is either absent or 1.
pub fn pack(v: &SparseVec<u32>, dim: usize) -> Gf2Vec {
    debug_assert!(v.field().map_or(true, |f| f.characteristic() == 2));
    Gf2Vec::from_support(dim, v.iter().map(|&(k, _)| k))
}

/// Expand a bit row back into a sparse vector over GF(2).
pub fn unpack(v: &Gf2Vec) -> SparseVec<u32> {
    let f2 = FieldSpec::Prime(2);
    SparseVec::from_entries(
        v.support().into_iter().map(|k| (k, f2.one())).collect::<Vec<(u32, Scalar)>>(),
    )
    .expect("uniform field")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_set_bit_spans_words() {
        let mut v = Gf2Vec::zero(130);
        assert_eq!(v.lowest_set_bit(), None);
        v.set(129);
        assert_eq!(v.lowest_set_bit(), Some(129));
        v.set(7);
        assert_eq!(v.lowest_set_bit(), Some(7));
    }

    #[test]
    fn xor_cancels() {
        let a = Gf2Vec::from_support(70, [0, 3, 69]);
        let mut b = a.clone();
        b.xor_assign(&a);
        assert!(b.is_zero());
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Gf2Echelon::new(4);
        assert!(e.insert(Gf2Vec::from_support(4, [0, 1])));
        assert!(e.insert(Gf2Vec::from_support(4, [1, 2])));
        assert!(!e.insert(Gf2Vec::from_support(4, [0, 2])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&Gf2Vec::from_support(4, [0, 2])));
        assert!(!e.contains(&Gf2Vec::from_support(4, [3])));
        assert!(e.contains(&Gf2Vec::zero(4)));
    }

    #[test]
    fn support_round_trip() {
        let v = Gf2Vec::from_support(200, [0, 64, 128, 199]);
        assert_eq!(v.support(), vec![0, 64, 128, 199]);
        assert_eq!(v.count_ones(), 4);
    }
}
