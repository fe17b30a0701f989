//! Fixed-width bit vectors indexed by ground-set position.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use smallvec::{smallvec, SmallVec};

const WORD: usize = u64::BITS as usize;

/// A subset of a finite ground set `{0, .., width - 1}`.
///
/// Bits at positions `>= width` are always zero, so derived equality and
/// hashing agree with set equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WorldSet {
    width: usize,
    words: SmallVec<[u64; 2]>,
}

impl WorldSet {
    pub fn empty(width: usize) -> Self {
        Self {
            width,
            words: smallvec![0; width.div_ceil(WORD)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut set = Self::empty(width);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.trim();
        set
    }

    pub fn singleton(width: usize, index: usize) -> Self {
        let mut set = Self::empty(width);
        set.insert(index);
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, indices: I) -> Self {
        let mut set = Self::empty(width);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Builds a set from the low `width` bits of `mask`; `width` must be at most 64.
    pub fn from_mask(width: usize, mask: u64) -> Self {
        assert!(width <= WORD, "mask form supports at most 64 positions");
        let mut set = Self::empty(width);
        if width > 0 {
            set.words[0] = mask;
            set.trim();
        }
        set
    }

    /// Inverse of [`WorldSet::from_mask`].
    pub fn to_mask(&self) -> u64 {
        assert!(self.width <= WORD, "mask form supports at most 64 positions");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.width
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.width && self.words[index / WORD] & (1 << (index % WORD)) != 0
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < self.width, "index {index} outside ground set of size {}", self.width);
        self.words[index / WORD] |= 1 << (index % WORD);
    }

    pub fn remove(&mut self, index: usize) {
        assert!(index < self.width, "index {index} outside ground set of size {}", self.width);
        self.words[index / WORD] &= !(1 << (index % WORD));
    }

    pub fn with(&self, index: usize) -> Self {
        let mut set = self.clone();
        set.insert(index);
        set
    }

    pub fn without(&self, index: usize) -> Self {
        let mut set = self.clone();
        set.remove(index);
        set
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            bits: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn is_subset(&self, other: &WorldSet) -> bool {
        self.check_width(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &WorldSet) -> bool {
        self.check_width(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersection(&self, other: &WorldSet) -> WorldSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &WorldSet) -> WorldSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &WorldSet) -> WorldSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> WorldSet {
        let mut set = self.clone();
        for w in set.words.iter_mut() {
            *w = !*w;
        }
        set.trim();
        set
    }

    pub fn intersect_with(&mut self, other: &WorldSet) {
        self.check_width(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &WorldSet) {
        self.check_width(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// The indices of this set, in ascending order.
    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn zip_with(&self, other: &WorldSet, op: impl Fn(u64, u64) -> u64) -> WorldSet {
        self.check_width(other);
        WorldSet {
            width: self.width,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    fn check_width(&self, other: &WorldSet) {
        assert_eq!(self.width, other.width, "world sets over different ground sets");
    }

    fn trim(&mut self) {
        let rem = self.width % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

/// Orders by width, then cardinality, then lexicographically by members.
impl Ord for WorldSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width
            .cmp(&other.width)
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for WorldSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    set: &'a WorldSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.bits != 0 {
                let tz = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * WORD + tz);
            }
            self.word += 1;
            if self.word >= self.set.words.len() {
                return None;
            }
            self.bits = self.set.words[self.word];
        }
    }
}

impl<'a> IntoIterator for &'a WorldSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl BitAnd for &WorldSet {
    type Output = WorldSet;
    fn bitand(self, rhs: &WorldSet) -> WorldSet {
        self.intersection(rhs)
    }
}

impl BitOr for &WorldSet {
    type Output = WorldSet;
    fn bitor(self, rhs: &WorldSet) -> WorldSet {
        self.union(rhs)
    }
}

impl Sub for &WorldSet {
    type Output = WorldSet;
    fn sub(self, rhs: &WorldSet) -> WorldSet {
        self.difference(rhs)
    }
}

impl Not for &WorldSet {
    type Output = WorldSet;
    fn not(self) -> WorldSet {
        self.complement()
    }
}
