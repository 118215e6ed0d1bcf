//! Bidirectional ballot sequences: every prefix and every suffix has strictly
//! more 1's than 0's.
//!
//! In walk terms the start is the unique minimum and the end the unique
//! maximum, so a sequence of length `n` ending at height `h` is exactly a
//! path from 0 to `h` whose interior stays strictly inside the strip
//! `(0, h)`. Both counting engines sum these strip paths over `h`; they
//! differ only in how a single strip is counted.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::binomial::BinomialRow;
use crate::error::{Error, Result};
use crate::walks::{ballot_walk_count, count_b_bounded, is_ballot, BigCount, BitSeq};

pub fn is_bbs(s: &BitSeq) -> bool {
    is_ballot(s) && is_ballot(&s.reversed())
}

/// Lexicographic stream of all bidirectional ballot sequences of length `n`.
///
/// Depth-first with a pruning rule that never leaves a dead branch: from
/// height `h` with `r` steps left and running maximum `m`, the prefix can be
/// completed iff `h > 0` and `h + r > m`.
pub fn enumerate_bbs(n: usize) -> BbsIter {
    BbsIter {
        n,
        bits: Vec::with_capacity(n),
        heights: vec![0],
        maxes: vec![0],
        state: IterState::Fresh,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

#[derive(Debug, Clone)]
pub struct BbsIter {
    n: usize,
    bits: Vec<bool>,
    heights: Vec<i64>,
    maxes: Vec<i64>,
    state: IterState,
}

impl BbsIter {
    fn push(&mut self, bit: bool) {
        let h = self.heights.last().unwrap() + if bit { 1 } else { -1 };
        let m = (*self.maxes.last().unwrap()).max(h);
        self.bits.push(bit);
        self.heights.push(h);
        self.maxes.push(m);
    }

    fn pop(&mut self) -> Option<bool> {
        self.heights.pop();
        self.maxes.pop();
        self.bits.pop()
    }

    fn down_is_feasible(&self) -> bool {
        let d = self.bits.len();
        let h = self.heights[d] - 1;
        let remaining = (self.n - d - 1) as i64;
        h > 0 && h + remaining > self.maxes[d]
    }

    /// Completes the current prefix with the smallest feasible suffix. An
    /// up-step is always feasible once the prefix is.
    fn descend(&mut self) {
        while self.bits.len() < self.n {
            let bit = !self.down_is_feasible();
            self.push(bit);
        }
    }
}

impl Iterator for BbsIter {
    type Item = BitSeq;

    fn next(&mut self) -> Option<BitSeq> {
        match self.state {
            IterState::Done => return None,
            IterState::Fresh => {
                self.state = IterState::Running;
                self.descend();
            }
            IterState::Running => loop {
                match self.pop() {
                    None => {
                        self.state = IterState::Done;
                        return None;
                    }
                    Some(false) => {
                        self.push(true);
                        self.descend();
                        break;
                    }
                    Some(true) => {}
                }
            },
        }
        Some(BitSeq::new(self.bits.clone()))
    }
}

fn check_strip(n: usize, h: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyWalk);
    }
    if h == 0 || h > n {
        return Err(Error::StripHeightOutOfRange { n, h });
    }
    Ok(())
}

/// Walks of `n` steps from 0 to `h` whose interior heights lie strictly
/// between 0 and `h`, counted by a transfer over the `h − 1` interior
/// heights.
pub fn strip_paths(n: usize, h: usize) -> Result<BigCount> {
    check_strip(n, h)?;
    Ok(strip_paths_dp(n, h))
}

fn strip_paths_dp(n: usize, h: usize) -> BigCount {
    if (n - h) % 2 == 1 {
        return BigCount::zero();
    }
    if h == 1 {
        return if n == 1 { BigCount::one() } else { BigCount::zero() };
    }
    // First step lands on 1, the last leaves h − 1; in between the walk
    // takes n − 2 steps inside [1, h − 1]. Index i holds height i, with
    // 0 and h as permanently empty walls.
    let mut ways = vec![BigCount::zero(); h + 1];
    ways[1] = BigCount::one();
    for _ in 0..n - 2 {
        let mut next = vec![BigCount::zero(); h + 1];
        for y in 1..h {
            next[y] = &ways[y - 1] + &ways[y + 1];
        }
        ways = next;
    }
    std::mem::take(&mut ways[h - 1])
}

/// Same count as [`strip_paths`] by the two-barrier reflection principle:
/// paths of `L = n − 2` steps from 1 to `h − 1` avoiding 0 and `h` number
/// `Σₖ [N(h − 2 + 2kh) − N(h + 2kh)]`, where `N(d) = C(L, (L + d)/2)`.
pub fn strip_paths_reflection(n: usize, h: usize) -> Result<BigCount> {
    check_strip(n, h)?;
    if n == 1 {
        return Ok(BigCount::one());
    }
    Ok(strip_reflection_from_row(&BinomialRow::new(n as u64 - 2), n, h))
}

fn strip_reflection_from_row(row: &BinomialRow, n: usize, h: usize) -> BigCount {
    if (n - h) % 2 == 1 || h == 1 {
        return BigCount::zero();
    }
    let len = row.n() as i64;
    let h = h as i64;
    let paths = |d: i64| -> &BigUint {
        // d ≡ L (mod 2) already holds
        row.get((len + d) / 2)
    };
    let mut plus = BigUint::zero();
    let mut minus = BigUint::zero();
    let k_max = len / (2 * h) + 1;
    for k in -k_max..=k_max {
        let shift = 2 * k * h;
        plus += paths(h - 2 + shift);
        minus += paths(h + shift);
    }
    plus - minus
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyWalk)
    } else {
        Ok(())
    }
}

/// `Bₙ` as the sum of strip-path counts from the transfer engine.
pub fn count_bbs_dp(n: usize) -> Result<BigCount> {
    check_count(n)?;
    Ok((1..=n)
        .into_par_iter()
        .filter(|h| (n - h).is_multiple_of(2))
        .map(|h| strip_paths_dp(n, h))
        .sum())
}

/// `Bₙ` as the sum of strip-path counts from reflection sums over one shared
/// binomial row.
pub fn count_bbs_reflection(n: usize) -> Result<BigCount> {
    check_count(n)?;
    if n == 1 {
        return Ok(BigCount::one());
    }
    let row = BinomialRow::new(n as u64 - 2);
    Ok((2..=n)
        .into_par_iter()
        .filter(|h| (n - h).is_multiple_of(2))
        .map(|h| strip_reflection_from_row(&row, n, h))
        .sum())
}

/// Upper side of the squeeze: a bidirectional ballot walk splits into a
/// ballot walk of `⌊n/2⌋` steps and a reversed ballot walk of `⌈n/2⌉` steps.
pub fn split_upper_bound(n: usize) -> BigCount {
    ballot_walk_count(n as u64 / 2) * ballot_walk_count((n as u64).div_ceil(2))
}

/// The common bound used for both halves in [`bounded_pairs_lower_bound`]:
/// `⌊√⌊n/2⌋⌋`, at least 1.
pub fn half_bound(n: usize) -> u64 {
    ((n / 2) as u64).isqrt().max(1)
}

/// Lower side of the squeeze: pairs of `b`-bounded halves with a common
/// `b`, each pair gluing to a distinct bidirectional ballot walk.
pub fn bounded_pairs_lower_bound(n: usize) -> BigCount {
    let b = half_bound(n);
    count_b_bounded(n / 2, b) * count_b_bounded(n.div_ceil(2), b)
}
