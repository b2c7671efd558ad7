use serde::{Deserialize, Serialize};

use crate::gf2::BitVec;

/// A GF(2) 1-chain: a set of edge ids, added by symmetric difference.
///
/// The support is kept sorted and free of duplicates, so equality and
/// ordering are those of the underlying edge sets.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BinaryChain {
    support: Vec<usize>,
}

impl BinaryChain {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a chain from edge ids; ids listed an even number of times cancel.
    pub fn from_edges<I: IntoIterator<Item = usize>>(edges: I) -> Self {
        let mut v: Vec<usize> = edges.into_iter().collect();
        v.sort_unstable();
        let mut support = Vec::with_capacity(v.len());
        let mut i = 0;
        while i < v.len() {
            let mut j = i;
            while j < v.len() && v[j] == v[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                support.push(v[i]);
            }
            i = j;
        }
        BinaryChain { support }
    }

    pub fn from_bits(bits: &BitVec) -> Self {
        BinaryChain {
            support: bits.iter_ones().collect(),
        }
    }

    pub fn to_bits(&self, len: usize) -> BitVec {
        let mut b = BitVec::zeros(len);
        for &e in &self.support {
            b.set(e, true);
        }
        b
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.support.binary_search(&edge).is_ok()
    }

    /// Symmetric difference.
    pub fn add(&self, other: &BinaryChain) -> BinaryChain {
        let (a, b) = (&self.support, &other.support);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        BinaryChain { support: out }
    }

    pub fn add_assign(&mut self, other: &BinaryChain) {
        *self = self.add(other);
    }

    /// Parity of the overlap of the two supports.
    pub fn pairing(&self, other: &BinaryChain) -> bool {
        let (a, b) = (&self.support, &other.support);
        let (mut i, mut j, mut n) = (0, 0, 0usize);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n % 2 == 1
    }
}

impl FromIterator<usize> for BinaryChain {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        BinaryChain::from_edges(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn repeated_edges_cancel() {
        let c = BinaryChain::from_edges([3, 1, 3, 2, 3]);
        assert_eq!(c.support(), &[1, 2, 3]);
        assert!(BinaryChain::from_edges([4, 4]).is_empty());
    }

    proptest! {
        #[test]
        fn addition_is_symmetric_difference(a in proptest::collection::vec(0usize..40, 0..30),
                                            b in proptest::collection::vec(0usize..40, 0..30)) {
            let ca = BinaryChain::from_edges(a.clone());
            let cb = BinaryChain::from_edges(b.clone());
            let sum = ca.add(&cb);
            let direct = BinaryChain::from_edges(a.into_iter().chain(b));
            prop_assert_eq!(&sum, &direct);
            prop_assert!(sum.add(&cb) == ca);
            let bits = ca.to_bits(40);
            prop_assert_eq!(BinaryChain::from_bits(&bits), ca.clone());
            prop_assert_eq!(ca.pairing(&cb), ca.to_bits(40).dot(&cb.to_bits(40)));
        }
    }
}
