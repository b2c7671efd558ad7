//! Dense GF(2) vectors and incremental row reduction.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, "]")
    }
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_ones<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &BitVec) -> bool {
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

/// Rows kept in echelon form with distinct pivots (lowest set bit), built
/// incrementally. Each stored row also records which inserted vectors it is
/// a combination of, so membership queries can return a certificate.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
    combos: Vec<BitVec>,
    inserted: usize,
    capacity: usize,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Self::with_certificates(width, 0)
    }

    /// Tracks combination certificates for up to `capacity` insertions.
    pub fn with_certificates(width: usize, capacity: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            inserted: 0,
            capacity,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; returns the remainder and the
    /// combination of inserted vectors that was subtracted (empty without
    /// certificates).
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut r = v.clone();
        let mut combo = BitVec::zeros(self.capacity);
        let track = self.capacity > 0;
        for (k, row) in self.rows.iter().enumerate() {
            if r.get(self.pivots[k]) {
                r.xor_assign(row);
                if track {
                    combo.xor_assign(&self.combos[k]);
                }
            }
        }
        (r, combo)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut r = v.clone();
        for (k, row) in self.rows.iter().enumerate() {
            if r.get(self.pivots[k]) {
                r.xor_assign(row);
            }
        }
        r.is_zero()
    }

    /// Inserts `v`; returns `true` if it was independent of the stored rows.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let track = self.capacity > 0;
        assert!(
            !track || self.inserted < self.capacity,
            "echelon capacity exceeded"
        );
        let (r, mut combo) = self.reduce(v);
        if track {
            combo.flip(self.inserted);
        }
        self.inserted += 1;
        match r.first_one() {
            Some(p) => {
                self.rows.push(r);
                self.pivots.push(p);
                if track {
                    self.combos.push(combo);
                }
                true
            }
            None => false,
        }
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }
}

/// Rank of a set of vectors.
pub fn rank(rows: &[BitVec]) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    let mut e = Echelon::new(width);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Inverse of a square matrix given by rows, or `None` if singular.
pub fn invert(rows: &[BitVec]) -> Option<Vec<BitVec>> {
    let n = rows.len();
    let mut a: Vec<BitVec> = rows.to_vec();
    let mut inv: Vec<BitVec> = (0..n).map(|i| BitVec::from_ones(n, [i])).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r].get(col))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..n {
            if r != col && a[r].get(col) {
                let (src_a, src_i) = (a[col].clone(), inv[col].clone());
                a[r].xor_assign(&src_a);
                inv[r].xor_assign(&src_i);
            }
        }
    }
    Some(inv)
}

/// Transpose of a `rows.len() × width` matrix.
pub fn transpose(rows: &[BitVec], width: usize) -> Vec<BitVec> {
    let mut out: Vec<BitVec> = (0..width).map(|_| BitVec::zeros(rows.len())).collect();
    for (i, r) in rows.iter().enumerate() {
        for j in r.iter_ones() {
            out[j].set(i, true);
        }
    }
    out
}
