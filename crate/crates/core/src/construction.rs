//! The MSTD family `S = L ∪ M ∪ R` over the window `[0, n − 1]`.
//!
//! `L` and `R` are fixed end blocks of width 11. `L + L = [0, 20] ∖ {1}` and
//! `R + R = [2n − 22, 2n − 2]`, while `±(n − 7)` can never be differences.
//! Whenever `M ⊆ [11, n − 12]` holds a strict majority of every prefix and
//! every suffix of its interval, `M + M` fills the whole middle range and
//! `S` has `2n − 2` sums against at most `2n − 3` differences.

use crate::bbs::enumerate_bbs;
use crate::error::{Error, Result};
use crate::intset::IntSet;
use crate::walks::BitSeq;

/// Width of the left block `[0, ℓ − 1]`.
pub const LEFT_WIDTH: usize = 11;
/// Width of the right block `[n − r, n − 1]`.
pub const RIGHT_WIDTH: usize = 11;
/// Smallest window with a nonempty middle interval of length at least 2.
pub const MIN_WINDOW: usize = 24;

const LEFT: [i64; 7] = [0, 2, 3, 7, 8, 9, 10];
/// Offsets of `R` below `n`.
const RIGHT_FROM_END: [i64; 8] = [11, 10, 9, 8, 6, 3, 2, 1];

/// Window size with the fixed block widths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionParams {
    n: usize,
}

impl ConstructionParams {
    pub fn new(n: usize) -> Result<Self> {
        if n < MIN_WINDOW {
            return Err(Error::WindowTooSmall { n, min: MIN_WINDOW });
        }
        Ok(ConstructionParams { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `[ℓ, n − r − 1]`.
    pub fn middle_interval(&self) -> (usize, usize) {
        (LEFT_WIDTH, self.n - RIGHT_WIDTH - 1)
    }

    /// Length `m = n − 22` of the middle interval.
    pub fn middle_len(&self) -> usize {
        self.n - LEFT_WIDTH - RIGHT_WIDTH
    }
}

/// A subset of a base interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MiddleSet {
    lo: usize,
    hi: usize,
    members: Vec<bool>,
}

impl MiddleSet {
    pub fn new<I>(lo: usize, hi: usize, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        if hi < lo {
            return Err(Error::EmptyWindow);
        }
        let mut members = vec![false; hi - lo + 1];
        for x in elements {
            if x < lo || x > hi {
                return Err(Error::ElementOutOfWindow {
                    value: x as i64,
                    window: hi + 1,
                });
            }
            members[x - lo] = true;
        }
        Ok(MiddleSet { lo, hi, members })
    }

    /// Bit `i` of the sequence decides membership of `lo + i`.
    pub fn from_bitseq(lo: usize, bits: &BitSeq) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyWindow);
        }
        Ok(MiddleSet {
            lo,
            hi: lo + bits.len() - 1,
            members: bits.bits().to_vec(),
        })
    }

    pub fn full(lo: usize, hi: usize) -> Result<Self> {
        Self::new(lo, hi, lo..=hi)
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| self.lo + i)
    }

    pub fn to_bitseq(&self) -> BitSeq {
        BitSeq::new(self.members.clone())
    }
}

/// `L = {0, 2, 3, 7, 8, 9, 10}` in the window `[0, 10]`.
pub fn left_fixture() -> IntSet {
    IntSet::from_elements(LEFT_WIDTH, LEFT).expect("fixture fits its block")
}

/// `R = {n−11, n−10, n−9, n−8, n−6, n−3, n−2, n−1}` in the window `[0, n − 1]`.
pub fn right_fixture(n: usize) -> Result<IntSet> {
    ConstructionParams::new(n)?;
    IntSet::from_elements(n, RIGHT_FROM_END.iter().map(|&d| n as i64 - d))
}

/// Every prefix and every suffix of the base interval holds strictly more
/// than half of its elements in `M`.
pub fn has_majority_prefixes_suffixes(m: &MiddleSet) -> bool {
    let majority = |bits: &mut dyn Iterator<Item = bool>| {
        let mut inside = 0usize;
        bits.enumerate().all(|(i, b)| {
            inside += b as usize;
            2 * inside > i + 1
        })
    };
    majority(&mut m.members.iter().copied()) && majority(&mut m.members.iter().rev().copied())
}

/// `M + M` covers every sum `[2·lo, 2·hi]` of the base interval.
pub fn middle_sum_complete(m: &MiddleSet) -> bool {
    let width = m.hi - m.lo + 1;
    let shifted = IntSet::from_elements(width, m.elements().map(|x| (x - m.lo) as i64))
        .expect("re-indexed members fit the interval");
    shifted.sumset_len() == 2 * width - 1
}

/// `L ∪ M ∪ R`, after checking that `M` sits on `[11, n − 12]` and meets the
/// majority condition.
pub fn construct(n: usize, m: &MiddleSet) -> Result<IntSet> {
    let params = ConstructionParams::new(n)?;
    let (expected_lo, expected_hi) = params.middle_interval();
    if m.lo != expected_lo || m.hi != expected_hi {
        return Err(Error::MiddleOutOfRange {
            lo: m.lo,
            hi: m.hi,
            expected_lo,
            expected_hi,
        });
    }
    if !has_majority_prefixes_suffixes(m) {
        return Err(Error::MajorityConditionFails);
    }
    let middle = IntSet::from_elements(n, m.elements().map(|x| x as i64))?;
    Ok(left_fixture().union(&middle).union(&right_fixture(n)?))
}

/// Every qualifying middle set for window `n`, in lexicographic order of
/// their membership bits.
pub fn enumerate_middles(n: usize) -> Result<impl Iterator<Item = MiddleSet>> {
    let params = ConstructionParams::new(n)?;
    let (lo, _) = params.middle_interval();
    Ok(enumerate_bbs(params.middle_len())
        .map(move |bits| MiddleSet::from_bitseq(lo, &bits).expect("length is at least 2")))
}

/// The whole family for window `n`, one set per qualifying middle set.
pub fn enumerate_family(n: usize) -> Result<impl Iterator<Item = IntSet>> {
    Ok(enumerate_middles(n)?
        .map(move |m| construct(n, &m).expect("enumerated middles satisfy the construction")))
}
