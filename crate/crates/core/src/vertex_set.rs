//! Fixed-width vertex bitsets.
//!
//! A `VertexSet<W>` holds up to `64 * W` vertices. The width is a const
//! parameter so that the common case (`W = 1`, at most 64 vertices) compiles
//! down to plain `u64` arithmetic; callers pick the width once, when the graph
//! is loaded (see [`width_for`]).

use core::cmp::Ordering;
use core::fmt;
use core::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub, SubAssign};

/// Number of 64-bit words needed for `n` vertices, rounded up to one of the
/// supported widths 1, 2, 4 or 8. Returns `None` above 512 vertices.
pub fn width_for(n: usize) -> Option<usize> {
    match n {
        0..=64 => Some(1),
        65..=128 => Some(2),
        129..=256 => Some(4),
        257..=512 => Some(8),
        _ => None,
    }
}

/// A set of vertex ids `0..64*W`.
///
/// Equality and hashing are value based. The total order is the numeric
/// order of the bitset read as an unsigned integer; this is the canonical
/// configuration order used for every deterministic tie-break in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet<const W: usize> {
    words: [u64; W],
}

impl<const W: usize> VertexSet<W> {
    pub const CAPACITY: usize = 64 * W;

    #[inline]
    pub const fn empty() -> Self {
        VertexSet { words: [0; W] }
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= Self::CAPACITY);
        let mut s = Self::empty();
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            if n >= lo + 64 {
                *w = u64::MAX;
            } else if n > lo {
                *w = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        let mut s = Self::empty();
        s.insert(v);
        s
    }

    pub fn from_words(words: [u64; W]) -> Self {
        VertexSet { words }
    }

    #[inline]
    pub fn words(&self) -> &[u64; W] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < Self::CAPACITY && self.words[v >> 6] & (1u64 << (v & 63)) != 0
    }

    #[inline]
    pub fn with(mut self, v: usize) -> Self {
        self.insert(v);
        self
    }

    #[inline]
    pub fn without(mut self, v: usize) -> Self {
        self.remove(v);
        self
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Size of `self ∪ other` without materializing it.
    #[inline]
    pub fn union_len(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Smallest element, if any.
    #[inline]
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Elements in ascending order.
    #[inline]
    pub fn iter(&self) -> Iter<W> {
        Iter {
            words: self.words,
            index: 0,
        }
    }

    /// True if every element is below `n`.
    pub fn fits(&self, n: usize) -> bool {
        self.is_subset(&Self::full(n))
    }
}

impl<const W: usize> Default for VertexSet<W> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<const W: usize> Ord for VertexSet<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        for i in (0..W).rev() {
            match self.words[i].cmp(&other.words[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl<const W: usize> PartialOrd for VertexSet<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const W: usize> fmt::Debug for VertexSet<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl<const W: usize> FromIterator<usize> for VertexSet<W> {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a, const W: usize> IntoIterator for &'a VertexSet<W> {
    type Item = usize;
    type IntoIter = Iter<W>;
    fn into_iter(self) -> Iter<W> {
        self.iter()
    }
}

/// Ascending iterator over a [`VertexSet`].
pub struct Iter<const W: usize> {
    words: [u64; W],
    index: usize,
}

impl<const W: usize> Iterator for Iter<W> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.index < W {
            let w = self.words[self.index];
            if w != 0 {
                self.words[self.index] = w & (w - 1);
                return Some(self.index * 64 + w.trailing_zeros() as usize);
            }
            self.index += 1;
        }
        None
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident, $op:tt) => {
        impl<const W: usize> $trait for VertexSet<W> {
            type Output = Self;
            #[inline]
            fn $method(mut self, rhs: Self) -> Self {
                for i in 0..W {
                    self.words[i] = self.words[i] $op rhs.words[i];
                }
                self
            }
        }
        impl<const W: usize> $assign_trait for VertexSet<W> {
            #[inline]
            fn $assign_method(&mut self, rhs: Self) {
                for i in 0..W {
                    self.words[i] = self.words[i] $op rhs.words[i];
                }
            }
        }
    };
}

binop!(BitOr, bitor, BitOrAssign, bitor_assign, |);
binop!(BitAnd, bitand, BitAndAssign, bitand_assign, &);

impl<const W: usize> Sub for VertexSet<W> {
    type Output = Self;
    #[inline]
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<const W: usize> SubAssign for VertexSet<W> {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        for i in 0..W {
            self.words[i] &= !rhs.words[i];
        }
    }
}

/// Complement within the full capacity; mask with [`VertexSet::full`] to
/// stay inside a graph.
impl<const W: usize> Not for VertexSet<W> {
    type Output = Self;
    #[inline]
    fn not(mut self) -> Self {
        for w in self.words.iter_mut() {
            *w = !*w;
        }
        self
    }
}
