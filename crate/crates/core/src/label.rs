//! Fixed-width bitsets over the indices of an extended closure.

use alloc::vec::Vec;
use core::fmt;

/// A set of closure indices; the label of a tableau node.
///
/// Two labels of the same closure compare equal exactly when they hold the
/// same formulas, so labels double as node keys.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    words: Vec<u64>,
}

impl Label {
    pub fn empty(width: usize) -> Label {
        Label {
            words: alloc::vec![0; width.div_ceil(64)],
        }
    }

    pub fn from_indices(width: usize, indices: impl IntoIterator<Item = usize>) -> Label {
        let mut l = Label::empty(width);
        for i in indices {
            l.insert(i);
        }
        l
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    /// Returns whether `i` was newly added.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let w = &mut self.words[i / 64];
        let bit = 1 << (i % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn is_subset(&self, other: &Label) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &Label) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn behaves_like_a_sorted_set(xs in proptest::collection::btree_set(0usize..200, 0..40),
                                     ys in proptest::collection::btree_set(0usize..200, 0..40)) {
            let a = Label::from_indices(200, xs.iter().copied());
            let b = Label::from_indices(200, ys.iter().copied());
            prop_assert_eq!(a.iter().collect::<Vec<_>>(), xs.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(a.len(), xs.len());
            prop_assert_eq!(a.is_subset(&b), xs.is_subset(&ys));
            let mut u = a.clone();
            u.union_with(&b);
            prop_assert_eq!(u.len(), xs.union(&ys).count());
        }
    }
}
