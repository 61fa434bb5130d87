use std::cmp::Ordering;
use std::fmt;

/// A subset of the elements `0..n` of one brace.
///
/// Masks order by size first and then by their sorted element lists, which
/// is the order every listing in the crate uses.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    n: usize,
    words: Vec<u64>,
}

impl SubsetMask {
    pub fn empty(n: usize) -> Self {
        SubsetMask {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut m = Self::empty(n);
        for i in 0..n {
            m.insert(i);
        }
        m
    }

    pub fn singleton(n: usize, x: usize) -> Self {
        let mut m = Self::empty(n);
        m.insert(x);
        m
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elems: I) -> Self {
        let mut m = Self::empty(n);
        for e in elems {
            m.insert(e);
        }
        m
    }

    /// Size of the universe the mask lives in.
    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.n && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < self.n, "element {x} outside universe of size {}", self.n);
        let w = &mut self.words[x / 64];
        let bit = 1u64 << (x % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn remove(&mut self, x: usize) {
        if x < self.n {
            self.words[x / 64] &= !(1u64 << (x % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    /// True when the mask is exactly `{0}`.
    pub fn is_trivial(&self) -> bool {
        self.len() == 1 && self.contains(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &SubsetMask) -> SubsetMask {
        debug_assert_eq!(self.n, other.n);
        SubsetMask {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn intersection(&self, other: &SubsetMask) -> SubsetMask {
        debug_assert_eq!(self.n, other.n);
        SubsetMask {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_subset(&self, other: &SubsetMask) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
