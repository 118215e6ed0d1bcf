//! 0-1 sequences, their lattice walks, and exact ballot counting.
//!
//! A `1` is an up-step `(1, 1)` and a `0` a down-step `(1, −1)`. A ballot
//! sequence has strictly more 1's than 0's in every nonempty prefix, i.e. its
//! walk never returns to height 0 after the start.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::binomial::binomial;
use crate::error::{Error, Result};

/// Exact nonnegative count.
pub type BigCount = BigUint;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitSeq {
    bits: Vec<bool>,
}

impl BitSeq {
    pub fn new(bits: Vec<bool>) -> Self {
        BitSeq { bits }
    }

    /// The sequence whose bits, most significant first, spell `index` in
    /// binary with `len` digits. Increasing `index` is lexicographic order.
    pub fn from_index(len: usize, index: u64) -> Self {
        debug_assert!(len <= 64);
        let bits = (0..len).map(|i| index >> (len - 1 - i) & 1 == 1).collect();
        BitSeq { bits }
    }

    pub fn ones_run(len: usize) -> Self {
        BitSeq {
            bits: vec![true; len],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Number of 1's.
    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Number of 0's.
    pub fn zeros(&self) -> usize {
        self.len() - self.ones()
    }

    /// Order reversed, bits not complemented.
    pub fn reversed(&self) -> BitSeq {
        BitSeq {
            bits: self.bits.iter().rev().copied().collect(),
        }
    }

    pub fn concat(&self, other: &BitSeq) -> BitSeq {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        BitSeq { bits }
    }

    pub fn walk(&self) -> Walk {
        let mut heights = Vec::with_capacity(self.len() + 1);
        let mut h = 0i64;
        heights.push(h);
        for &bit in &self.bits {
            h += if bit { 1 } else { -1 };
            heights.push(h);
        }
        Walk { heights }
    }
}

impl fmt::Display for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSeq({self})")
    }
}

impl FromStr for BitSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidBit(other)),
            })
            .collect::<Result<_>>()?;
        Ok(BitSeq { bits })
    }
}

/// Prefix-sum heights `S₀ = 0, S₁, …, Sₙ` of a ±1 walk.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Walk {
    heights: Vec<i64>,
}

impl Walk {
    /// Accepts heights that start at 0 and move by exactly one per step.
    pub fn from_heights(heights: Vec<i64>) -> Option<Self> {
        if heights.first() != Some(&0) {
            return None;
        }
        if heights.windows(2).any(|w| (w[1] - w[0]).abs() != 1) {
            return None;
        }
        Some(Walk { heights })
    }

    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    pub fn steps(&self) -> usize {
        self.heights.len() - 1
    }

    pub fn final_height(&self) -> i64 {
        *self.heights.last().unwrap()
    }

    pub fn max_height(&self) -> i64 {
        *self.heights.iter().max().unwrap()
    }

    pub fn min_height(&self) -> i64 {
        *self.heights.iter().min().unwrap()
    }

    /// The start is the unique lowest point.
    pub fn is_ballot(&self) -> bool {
        self.heights[1..].iter().all(|&h| h > 0)
    }

    pub fn to_bitseq(&self) -> BitSeq {
        BitSeq {
            bits: self.heights.windows(2).map(|w| w[1] > w[0]).collect(),
        }
    }
}

/// Every nonempty prefix has strictly more 1's than 0's.
pub fn is_ballot(s: &BitSeq) -> bool {
    let mut h = 0i64;
    for &bit in s.bits() {
        h += if bit { 1 } else { -1 };
        if h <= 0 {
            return false;
        }
    }
    true
}

/// Ballot sequences with `p` 1's and `q` 0's: `(p − q)/(p + q) · C(p + q, p)`.
pub fn ballot_count(p: u64, q: u64) -> Result<BigCount> {
    if p <= q {
        return Err(Error::BallotNotWinning { p, q });
    }
    let total = binomial(p + q, p as i64) * (p - q);
    Ok(total / (p + q))
}

/// All ballot walks of `n` steps: `C(n − 1, ⌈n/2⌉ − 1)`, and 1 for the empty
/// walk.
pub fn ballot_walk_count(n: u64) -> BigCount {
    if n == 0 {
        return BigCount::one();
    }
    binomial(n - 1, n.div_ceil(2) as i64 - 1)
}

/// Ballot walks of `n` steps whose final height lies in `[a, b]`:
/// `C(n − 1, ⌈(a + n)/2⌉ − 1) − C(n − 1, ⌊(b + n)/2⌋)`.
pub fn ballot_count_height_range(n: u64, a: f64, b: f64) -> Result<BigCount> {
    if n == 0 {
        return Err(Error::EmptyWalk);
    }
    // NaN fails both comparisons.
    if !(a >= 0.0 && a < b) {
        return Err(Error::InvalidHeightRange { a, b });
    }
    let nf = n as f64;
    let lo = ((a + nf) / 2.0).ceil() - 1.0;
    let hi = ((b + nf) / 2.0).floor();
    let clamp = |x: f64| x.min(n as f64) as i64;
    let upper = binomial(n - 1, clamp(lo));
    let lower = binomial(n - 1, clamp(hi));
    Ok(upper - lower)
}

/// A ballot walk that never rises above `2b` and ends above `b`.
pub fn is_b_bounded(s: &BitSeq, b: u64) -> bool {
    let w = s.walk();
    w.is_ballot() && w.max_height() <= 2 * b as i64 && w.final_height() > b as i64
}

/// Exact number of `b`-bounded walks of `n` steps, by a transfer over heights
/// `1..=2b`.
pub fn count_b_bounded(n: usize, b: u64) -> BigCount {
    if n == 0 || b == 0 {
        return BigCount::zero();
    }
    let top = 2 * b as usize;
    // ways[h] for h in 0..=top + 1; heights 0 and top + 1 stay empty after
    // the start.
    let mut ways = vec![BigCount::zero(); top + 2];
    ways[0] = BigCount::one();
    for _ in 0..n {
        let mut next = vec![BigCount::zero(); top + 2];
        for h in 1..=top {
            next[h] = &ways[h - 1] + &ways[h + 1];
        }
        ways = next;
    }
    ways[b as usize + 1..=top].iter().sum()
}

/// Lower bound on the number of `b`-bounded walks of `n` steps:
/// `C(n−1, ⌈(n+b−1)/2⌉) − C(n−1, ⌊n/2⌋+b) − C(n−1, ⌈n/2⌉+b)`, clamped at 0.
pub fn bounded_lower_bound(n: u64, b: u64) -> Result<BigCount> {
    if n == 0 {
        return Err(Error::EmptyWalk);
    }
    if b == 0 {
        return Err(Error::ZeroBound);
    }
    let m = n - 1;
    let first = binomial(m, (n + b).div_euclid(2) as i64);
    let second = binomial(m, (n / 2 + b) as i64);
    let third = binomial(m, (n.div_ceil(2) + b) as i64);
    let subtract = second + third;
    Ok(if first > subtract {
        first - subtract
    } else {
        BigCount::zero()
    })
}

/// Reflects the part of the walk after its last visit to height `2b + 1`
/// about that height.
///
/// Defined on ballot walks that rise above `2b` and end in `(b, 2b]`; the
/// image is a ballot walk ending at height `≥ 2b + 2`.
pub fn reflect_after_last_exceed(w: &Walk, b: u64) -> Result<Walk> {
    if b == 0 {
        return Err(Error::ZeroBound);
    }
    let b = b as i64;
    if !w.is_ballot() {
        return Err(Error::NotReflectable("not a ballot walk"));
    }
    let end = w.final_height();
    if end <= b || end > 2 * b {
        return Err(Error::NotReflectable("final height outside (b, 2b]"));
    }
    let barrier = 2 * b + 1;
    let last = w
        .heights
        .iter()
        .rposition(|&h| h == barrier)
        .ok_or(Error::NotReflectable("walk never exceeds 2b"))?;
    let heights = w
        .heights
        .iter()
        .enumerate()
        .map(|(i, &h)| if i > last { 2 * barrier - h } else { h })
        .collect();
    Ok(Walk { heights })
}

/// `w1` followed by `w2` in reverse order.
pub fn concat_with_reversed(w1: &BitSeq, w2: &BitSeq) -> BitSeq {
    w1.concat(&w2.reversed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> BitSeq {
        s.parse().unwrap()
    }

    fn all_seqs(n: usize) -> impl Iterator<Item = BitSeq> {
        (0..1u64 << n).map(move |i| BitSeq::from_index(n, i))
    }

    #[test]
    fn ballot_predicate() {
        assert!(is_ballot(&seq("110")));
        assert!(!is_ballot(&seq("101")));
        assert!(is_ballot(&seq("")));
        assert!(!is_ballot(&seq("0111111")));
    }

    #[test]
    fn ballot_counts() {
        assert_eq!(ballot_count(2, 1).unwrap(), BigCount::one());
        assert_eq!(ballot_count(1, 0).unwrap(), BigCount::one());
        assert_eq!(
            ballot_count(2, 2).unwrap_err(),
            Error::BallotNotWinning { p: 2, q: 2 }
        );
        assert!(ballot_count(0, 0).is_err());
    }

    #[test]
    fn ballot_count_matches_difference_of_binomials() {
        for total in 1..=64u64 {
            for q in 0..=total {
                let p = total - q;
                if p <= q {
                    continue;
                }
                let diff = binomial(total - 1, p as i64 - 1) - binomial(total - 1, p as i64);
                assert_eq!(ballot_count(p, q).unwrap(), diff, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn height_range_examples() {
        assert_eq!(
            ballot_count_height_range(3, 1.0, 3.0).unwrap(),
            BigCount::from(2u32)
        );
        for n in 1..=30u64 {
            assert_eq!(
                ballot_count_height_range(n, 0.5, n as f64).unwrap(),
                ballot_walk_count(n)
            );
        }
        assert!(ballot_count_height_range(3, 2.0, 2.0).is_err());
        assert!(ballot_count_height_range(3, -1.0, 2.0).is_err());
        assert!(ballot_count_height_range(3, f64::NAN, 2.0).is_err());
        assert!(ballot_count_height_range(0, 0.0, 2.0).is_err());
        // b past n is harmless
        assert_eq!(
            ballot_count_height_range(4, 0.0, 100.0).unwrap(),
            ballot_walk_count(4)
        );
    }

    #[test]
    fn height_range_is_telescoped_ballot_theorem() {
        for n in 1..=16u64 {
            for a in 0..n {
                for b in a + 1..=n {
                    let direct: BigCount = (0..=n)
                        .filter(|&p| {
                            let h = 2 * p as i64 - n as i64;
                            h >= a as i64 && h <= b as i64 && p > n - p
                        })
                        .map(|p| ballot_count(p, n - p).unwrap())
                        .sum();
                    assert_eq!(
                        ballot_count_height_range(n, a as f64, b as f64).unwrap(),
                        direct,
                        "n={n} a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn bounded_examples() {
        assert!(is_b_bounded(&seq("1101"), 1));
        assert!(!is_b_bounded(&seq("1110"), 1));
        assert!(is_b_bounded(&seq("11"), 1));
        assert!(!is_b_bounded(&seq("11"), 2));
    }

    #[test]
    fn bounded_count_matches_scan() {
        for n in 0..=16usize {
            for b in 1..=5u64 {
                let scan = all_seqs(n).filter(|s| is_b_bounded(s, b)).count();
                assert_eq!(count_b_bounded(n, b), BigCount::from(scan), "n={n} b={b}");
            }
        }
    }

    #[test]
    fn lower_bound_vacuous_when_b_large() {
        for n in 1..=10u64 {
            for b in n..n + 3 {
                assert!(bounded_lower_bound(n, b).unwrap().is_zero());
            }
        }
        assert!(bounded_lower_bound(0, 1).is_err());
        assert!(bounded_lower_bound(5, 0).is_err());
    }

    #[test]
    fn reflection_examples() {
        // 1 2 3 2: rises to 3 = 2b+1 with b = 1 and ends at 2
        let w = seq("1110").walk();
        let r = reflect_after_last_exceed(&w, 1).unwrap();
        assert_eq!(r.heights(), &[0, 1, 2, 3, 4]);
        // ends at 2b + 1 itself: outside the domain
        assert!(reflect_after_last_exceed(&seq("111").walk(), 1).is_err());
        // never exceeds 2b
        assert!(reflect_after_last_exceed(&seq("1101").walk(), 1).is_err());
        // not ballot
        assert!(reflect_after_last_exceed(&seq("0111").walk(), 1).is_err());
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat_with_reversed(&seq("1101"), &seq("1101")), seq("11011011"));
        assert_eq!(concat_with_reversed(&seq("1101"), &seq("")), seq("1101"));
    }

    #[test]
    fn walk_from_heights_validates() {
        assert!(Walk::from_heights(vec![0, 1, 0, -1]).is_some());
        assert!(Walk::from_heights(vec![1, 2]).is_none());
        assert!(Walk::from_heights(vec![0, 2]).is_none());
        assert!(Walk::from_heights(vec![]).is_none());
    }

    proptest! {
        #[test]
        fn walk_round_trip(bits in proptest::collection::vec(any::<bool>(), 0..100)) {
            let s = BitSeq::new(bits);
            let w = s.walk();
            prop_assert_eq!(w.final_height(), s.ones() as i64 - s.zeros() as i64);
            prop_assert_eq!(w.steps(), s.len());
            prop_assert_eq!(Walk::from_heights(w.heights().to_vec()), Some(w.clone()));
            prop_assert_eq!(w.to_bitseq(), s.clone());
            prop_assert_eq!(w.is_ballot(), is_ballot(&s));
            prop_assert_eq!(s.to_string().parse::<BitSeq>().unwrap(), s);
        }
    }
}
