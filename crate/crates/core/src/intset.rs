//! Finite integer sets as bit vectors, with sumsets, difference sets and the
//! MSTD predicate.
//!
//! `S + S` is accumulated as the OR over `s ∈ S` of the member bits shifted
//! left by `s`. `S − S` uses the same shift-or against the reversed member
//! bits, which lands difference `d` at index `d + (n − 1)` and keeps all
//! indexing unsigned inside the loop.

use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// `dst |= src << shift`, truncated to the length of `dst`.
fn or_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let word_shift = shift / WORD_BITS;
    let bit_shift = shift % WORD_BITS;
    for (i, &w) in src.iter().enumerate() {
        if w == 0 {
            continue;
        }
        let j = i + word_shift;
        if j >= dst.len() {
            break;
        }
        dst[j] |= w << bit_shift;
        if bit_shift != 0 && j + 1 < dst.len() {
            dst[j + 1] |= w >> (WORD_BITS - bit_shift);
        }
    }
}

fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

fn set_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let tz = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i * WORD_BITS + tz)
        })
    })
}

/// A subset of the window `[0, window_size − 1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntSet {
    window: usize,
    words: Vec<u64>,
}

impl IntSet {
    pub fn empty(window_size: usize) -> Result<Self> {
        if window_size == 0 {
            return Err(Error::EmptyWindow);
        }
        Ok(IntSet {
            window: window_size,
            words: vec![0; words_for(window_size)],
        })
    }

    /// The full interval `[0, window_size − 1]`.
    pub fn full(window_size: usize) -> Result<Self> {
        let mut set = Self::empty(window_size)?;
        set.words.iter_mut().for_each(|w| *w = u64::MAX);
        set.clear_tail();
        Ok(set)
    }

    pub fn from_elements<I>(window_size: usize, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = i64>,
    {
        let mut set = Self::empty(window_size)?;
        for x in elements {
            set.insert(x)?;
        }
        Ok(set)
    }

    /// Builds a set from raw little-endian words; bits past the window are
    /// discarded.
    pub fn from_words(window_size: usize, mut words: Vec<u64>) -> Result<Self> {
        if window_size == 0 {
            return Err(Error::EmptyWindow);
        }
        words.resize(words_for(window_size), 0);
        let mut set = IntSet {
            window: window_size,
            words,
        };
        set.clear_tail();
        Ok(set)
    }

    /// Set whose members are the bits of `mask` (window at most 64).
    pub fn from_mask(window_size: usize, mask: u64) -> Result<Self> {
        Self::from_words(window_size, vec![mask])
    }

    fn clear_tail(&mut self) {
        let rem = self.window % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn insert(&mut self, x: i64) -> Result<()> {
        if x < 0 || x as u64 >= self.window as u64 {
            return Err(Error::ElementOutOfWindow {
                value: x,
                window: self.window,
            });
        }
        let x = x as usize;
        self.words[x / WORD_BITS] |= 1 << (x % WORD_BITS);
        Ok(())
    }

    pub fn contains(&self, x: i64) -> bool {
        if x < 0 || x as u64 >= self.window as u64 {
            return false;
        }
        let x = x as usize;
        self.words[x / WORD_BITS] >> (x % WORD_BITS) & 1 == 1
    }

    pub fn window_size(&self) -> usize {
        self.window
    }

    pub fn len(&self) -> usize {
        popcount(&self.words)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        set_bits(&self.words).map(|i| i as i64)
    }

    pub fn min(&self) -> Option<i64> {
        self.iter().next()
    }

    pub fn max(&self) -> Option<i64> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| (i * WORD_BITS + 63 - w.leading_zeros() as usize) as i64)
    }

    pub fn union(&self, other: &IntSet) -> IntSet {
        let (mut out, smaller) = if self.window >= other.window {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (dst, src) in out.words.iter_mut().zip(&smaller.words) {
            *dst |= src;
        }
        out
    }

    /// Shifts every member by `shift`, failing if any member leaves the window.
    pub fn translate(&self, shift: i64) -> Result<IntSet> {
        IntSet::from_elements(self.window, self.iter().map(|x| x + shift))
    }

    /// The image under `x ↦ (n − 1) − x`.
    pub fn reflect(&self) -> IntSet {
        let top = self.window as i64 - 1;
        IntSet::from_elements(self.window, self.iter().map(|x| top - x))
            .expect("reflection stays inside the window")
    }

    /// `S + S` over the window `[0, 2(n − 1)]`.
    pub fn sumset(&self) -> IntSet {
        let window = 2 * self.window - 1;
        let mut words = vec![0; words_for(window)];
        for s in set_bits(&self.words) {
            or_shifted(&mut words, &self.words, s);
        }
        IntSet { window, words }
    }

    /// `S − S` over `[−(n − 1), n − 1]`.
    pub fn diffset(&self) -> SignedIntSet {
        let n = self.window;
        let reversed = self.reflect();
        let mut words = vec![0; words_for(2 * n - 1)];
        for s in set_bits(&self.words) {
            or_shifted(&mut words, &reversed.words, s);
        }
        SignedIntSet {
            lo: -(n as i64 - 1),
            hi: n as i64 - 1,
            words,
        }
    }

    pub fn sumset_len(&self) -> usize {
        self.sumset().len()
    }

    pub fn diffset_len(&self) -> usize {
        self.diffset().len()
    }

    /// `|S + S| > |S − S|`.
    pub fn is_mstd(&self) -> bool {
        self.sumset_len() > self.diffset_len()
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntSet[{}]", self.window)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// A set of integers over an arbitrary window `[lo, hi]`, used for
/// difference sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedIntSet {
    lo: i64,
    hi: i64,
    words: Vec<u64>,
}

impl SignedIntSet {
    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn contains(&self, x: i64) -> bool {
        if x < self.lo || x > self.hi {
            return false;
        }
        let i = (x - self.lo) as usize;
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn len(&self) -> usize {
        popcount(&self.words)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        let lo = self.lo;
        set_bits(&self.words).map(move |i| lo + i as i64)
    }

    /// `d` is a member iff `−d` is.
    pub fn is_symmetric(&self) -> bool {
        self.iter().all(|d| self.contains(-d))
    }
}

impl fmt::Debug for SignedIntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedIntSet[{}, {}]", self.lo, self.hi)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `(|S + S|, |S − S|)` for the set whose members are the bits of `mask`,
/// in a window of at most 32. Both accumulators fit in one word, which makes
/// this the kernel of the exhaustive census.
#[inline]
pub fn mask_counts(mask: u64, window: u32) -> (u32, u32) {
    debug_assert!(window <= 32);
    if mask == 0 {
        return (0, 0);
    }
    let reversed = mask.reverse_bits() >> (64 - window);
    let mut sums = 0u64;
    let mut diffs = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let s = rest.trailing_zeros();
        rest &= rest - 1;
        sums |= mask << s;
        diffs |= reversed << s;
    }
    (sums.count_ones(), diffs.count_ones())
}

#[inline]
pub fn mask_is_mstd(mask: u64, window: u32) -> bool {
    let (sums, diffs) = mask_counts(mask, window);
    sums > diffs
}

/// Reference implementations by direct enumeration of ordered pairs, kept
/// independent of the bit-vector kernel.
pub mod naive {
    use std::collections::BTreeSet;

    pub fn sumset(elements: &[i64]) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for &a in elements {
            for &b in elements {
                out.insert(a + b);
            }
        }
        out
    }

    pub fn diffset(elements: &[i64]) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for &a in elements {
            for &b in elements {
                out.insert(a - b);
            }
        }
        out
    }

    pub fn is_mstd(elements: &[i64]) -> bool {
        sumset(elements).len() > diffset(elements).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const CONWAY: [i64; 8] = [0, 2, 3, 4, 7, 11, 12, 14];

    fn set(n: usize, xs: &[i64]) -> IntSet {
        IntSet::from_elements(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn interval_sumset() {
        for k in 0..20i64 {
            let s = IntSet::full(k as usize + 1).unwrap();
            let sum = s.sumset();
            assert_eq!(sum.len(), 2 * k as usize + 1);
            assert_eq!(sum.iter().collect::<Vec<_>>(), (0..=2 * k).collect::<Vec<_>>());
        }
    }

    #[test]
    fn empty_set() {
        let s = IntSet::empty(10).unwrap();
        assert!(s.sumset().is_empty());
        assert!(s.diffset().is_empty());
        assert!(!s.is_mstd());
        assert!(IntSet::empty(0).is_err());
    }

    #[test]
    fn left_block_sumset_misses_one() {
        let l = set(11, &[0, 2, 3, 7, 8, 9, 10]);
        let expected: Vec<i64> = (0..=20).filter(|&x| x != 1).collect();
        assert_eq!(l.sumset().iter().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn two_element_diffset() {
        let d = set(3, &[0, 2]).diffset();
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![-2, 0, 2]);
        assert_eq!((d.lo(), d.hi()), (-2, 2));
    }

    #[test]
    fn conway_set() {
        let s = set(15, &CONWAY);
        assert_eq!(naive::diffset(&CONWAY).len(), 25);
        assert_eq!(naive::sumset(&CONWAY).len(), 26);
        assert_eq!(s.diffset_len(), 25);
        assert_eq!(s.sumset_len(), 26);
        assert!(s.is_mstd());
        assert!(s.reflect().is_mstd());
    }

    #[test]
    fn arithmetic_progression_is_not_mstd() {
        let s = set(3, &[0, 1, 2]);
        assert_eq!((s.sumset_len(), s.diffset_len()), (5, 5));
        assert!(!s.is_mstd());
    }

    #[test]
    fn out_of_window_rejected() {
        assert_eq!(
            IntSet::from_elements(5, [5]).unwrap_err(),
            Error::ElementOutOfWindow { value: 5, window: 5 }
        );
        assert!(IntSet::from_elements(5, [-1]).is_err());
        let s = set(5, &[0, 4]);
        assert!(s.translate(1).is_err());
        assert_eq!(s.translate(0).unwrap(), s);
    }

    #[test]
    fn equality_is_extensional() {
        let a = set(70, &[1, 65, 69]);
        let mut b = IntSet::empty(70).unwrap();
        for x in [69, 1, 65, 1] {
            b.insert(x).unwrap();
        }
        let c = IntSet::from_words(70, vec![2, (1 << 1) | (1 << 5) | (1 << 60)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.max(), Some(69));
    }

    #[test]
    fn mask_kernel_matches_conway() {
        let mask = CONWAY.iter().fold(0u64, |m, &x| m | 1 << x);
        assert_eq!(mask_counts(mask, 15), (26, 25));
        assert_eq!(mask_counts(mask, 32), (26, 25));
        assert_eq!(mask_counts(0, 8), (0, 0));
    }

    #[test]
    fn oracle_equivalence_small_windows() {
        for n in 1..=12usize {
            for mask in 0u64..(1 << n) {
                let s = IntSet::from_mask(n, mask).unwrap();
                let xs: Vec<i64> = s.iter().collect();
                let sums = naive::sumset(&xs);
                let diffs = naive::diffset(&xs);
                assert!(s.sumset().iter().eq(sums.iter().copied()), "{s:?}");
                assert!(s.diffset().iter().eq(diffs.iter().copied()), "{s:?}");
                assert_eq!(
                    mask_counts(mask, n as u32),
                    (sums.len() as u32, diffs.len() as u32)
                );
            }
        }
    }

    fn arb_set() -> impl Strategy<Value = IntSet> {
        (1usize..200).prop_flat_map(|n| {
            proptest::collection::vec(any::<u64>(), words_for(n))
                .prop_map(move |ws| IntSet::from_words(n, ws).unwrap())
        })
    }

    proptest! {
        #[test]
        fn diffset_symmetric_and_odd(s in arb_set()) {
            let d = s.diffset();
            prop_assert!(d.is_symmetric());
            prop_assert_eq!(d.contains(0), !s.is_empty());
            if !s.is_empty() {
                prop_assert_eq!(d.len() % 2, 1);
            }
        }

        #[test]
        fn size_bounds(s in arb_set()) {
            prop_assume!(!s.is_empty());
            let k = s.len();
            let n = s.window_size();
            let sums = s.sumset_len();
            let diffs = s.diffset_len();
            prop_assert!(2 * k - 1 <= sums);
            prop_assert!(sums <= (k * (k + 1) / 2).min(2 * n - 1));
            prop_assert!(2 * k - 1 <= diffs);
            prop_assert!(diffs <= (k * (k - 1) + 1).min(2 * n - 1));
        }

        #[test]
        fn translation_and_reflection_invariance(s in arb_set()) {
            prop_assume!(!s.is_empty());
            let lo = s.min().unwrap();
            let slack = s.window_size() as i64 - 1 - s.max().unwrap();
            for shift in [-lo, slack] {
                let t = s.translate(shift).unwrap();
                prop_assert_eq!(t.sumset_len(), s.sumset_len());
                prop_assert_eq!(t.diffset_len(), s.diffset_len());
                prop_assert_eq!(t.is_mstd(), s.is_mstd());
            }
            let r = s.reflect();
            prop_assert_eq!(r.sumset_len(), s.sumset_len());
            prop_assert_eq!(r.diffset_len(), s.diffset_len());
        }

        #[test]
        fn kernel_matches_naive(elements in proptest::collection::btree_set(0i64..150, 0..40)) {
            let xs: Vec<i64> = elements.into_iter().collect();
            let s = IntSet::from_elements(150, xs.iter().copied()).unwrap();
            prop_assert!(s.sumset().iter().eq(naive::sumset(&xs).into_iter()));
            prop_assert!(s.diffset().iter().eq(naive::diffset(&xs).into_iter()));
        }
    }
}
