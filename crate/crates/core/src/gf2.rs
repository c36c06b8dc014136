//! Row reduction over GF(2) on bit rows.

/// A row vector over GF(2).
pub trait BitRow: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn lowest_bit(&self) -> Option<usize>;
    fn xor_assign(&mut self, other: &Self);
}

impl BitRow for u128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn lowest_bit(&self) -> Option<usize> {
        (*self != 0).then(|| self.trailing_zeros() as usize)
    }
    fn xor_assign(&mut self, other: &Self) {
        *self ^= other;
    }
}

/// Dense bit vector of arbitrary length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { words: vec![0; len.div_ceil(64)] }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut x = word;
            std::iter::from_fn(move || {
                if x == 0 {
                    return None;
                }
                let b = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(w * 64 + b)
            })
        })
    }
}

impl BitRow for BitVec {
    fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
    fn lowest_bit(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
    fn xor_assign(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }
}

/// Incrementally built echelon basis, one stored row per pivot column.
#[derive(Debug, Clone)]
pub struct Gf2Basis<R> {
    by_pivot: Vec<Option<R>>,
    rank: usize,
}

impl<R: BitRow> Gf2Basis<R> {
    pub fn new(columns: usize) -> Self {
        Gf2Basis { by_pivot: vec![None; columns], rank: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, mut v: R) -> R {
        while let Some(p) = v.lowest_bit() {
            match &self.by_pivot[p] {
                Some(row) => v.xor_assign(row),
                None => break,
            }
        }
        v
    }

    pub fn contains(&self, v: &R) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: R) -> bool {
        let r = self.reduce(v);
        match r.lowest_bit() {
            Some(p) => {
                self.by_pivot[p] = Some(r);
                self.rank += 1;
                true
            }
            None => false,
        }
    }
}
