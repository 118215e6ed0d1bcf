//! Exact binomial coefficients.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// One full row `C(n, 0), …, C(n, n)` of Pascal's triangle, built with one
/// small multiply and one exact small divide per entry.
#[derive(Debug, Clone)]
pub struct BinomialRow {
    n: u64,
    entries: Vec<BigUint>,
}

impl BinomialRow {
    pub fn new(n: u64) -> Self {
        let mut entries = Vec::with_capacity(n as usize + 1);
        let mut acc = BigUint::one();
        entries.push(acc.clone());
        // Fill the left half and mirror it.
        for j in 0..n / 2 {
            acc *= n - j;
            acc /= j + 1;
            entries.push(acc.clone());
        }
        let half = entries.len();
        for j in half..=n as usize {
            let mirror = entries[n as usize - j].clone();
            entries.push(mirror);
        }
        BinomialRow { n, entries }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `C(n, k)`, zero outside `[0, n]`.
    pub fn get(&self, k: i64) -> &BigUint {
        static ZERO: std::sync::OnceLock<BigUint> = std::sync::OnceLock::new();
        if k < 0 || k as u64 > self.n {
            return ZERO.get_or_init(BigUint::zero);
        }
        &self.entries[k as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(5, -1), BigUint::zero());
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn row_matches_pascal() {
        let mut prev = vec![BigUint::one()];
        for n in 0..60u64 {
            let row = BinomialRow::new(n);
            for (k, v) in prev.iter().enumerate() {
                assert_eq!(row.get(k as i64), v, "C({n}, {k})");
                assert_eq!(&binomial(n, k as i64), v);
            }
            assert!(row.get(-1).is_zero());
            assert!(row.get(n as i64 + 1).is_zero());
            let mut next = vec![BigUint::one(); n as usize + 2];
            for k in 1..=n as usize {
                next[k] = &prev[k - 1] + &prev[k];
            }
            prev = next;
        }
    }
}
