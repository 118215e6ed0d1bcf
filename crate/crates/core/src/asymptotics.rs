//! Numerical checks of the asymptotic statements around `Bₙ`.
//!
//! Everything derived from `Bₙ` is formed as an exact rational first and
//! only converted at the end. Decimal renderings come straight from the
//! rational, so they are exact to the last printed digit.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::bbs::count_bbs_reflection;
use crate::binomial::binomial;
use crate::error::{Error, Result};
use crate::walks::bounded_lower_bound;

/// Below this size the normal-approximation check evaluates the binomial
/// exactly.
const EXACT_BINOMIAL_LIMIT: u64 = 2000;

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

fn bbs_exact(n: usize) -> Result<BigInt> {
    count_bbs_reflection(n).map(BigInt::from)
}

/// `x / 10^digits` style rendering of a rational, rounded half away from
/// zero.
pub fn decimal_rounded(value: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let num: BigInt = value.numer().abs() * &scale * 2 + value.denom();
    let scaled = num.div_floor(&(value.denom() * 2));
    render_scaled(value.is_negative(), scaled, digits)
}

/// The first `digits` decimals of a rational, truncated toward zero.
pub fn decimal_truncated(value: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled: BigInt = (value.numer().abs() * scale).div_floor(value.denom());
    render_scaled(value.is_negative(), scaled, digits)
}

fn render_scaled(negative: bool, scaled: BigInt, digits: usize) -> String {
    let mut s = scaled.to_string();
    if s.len() <= digits {
        s = format!("{}{s}", "0".repeat(digits + 1 - s.len()));
    }
    let split = s.len() - digits;
    let sign = if negative && scaled != BigInt::zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{s}")
    } else {
        format!("{sign}{}.{}", &s[..split], &s[split..])
    }
}

pub fn rational_to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// `n·Bₙ / 2ⁿ⁻²` as an exact rational.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioValue {
    pub n: usize,
    pub value: BigRational,
    pub digits: usize,
}

impl RatioValue {
    pub fn compute(n: usize, digits: usize) -> Result<Self> {
        let b = bbs_exact(n)?;
        let value = BigRational::new(b * n * 4, pow2(n));
        Ok(RatioValue { n, value, digits })
    }

    pub fn rounded(&self) -> String {
        decimal_rounded(&self.value, self.digits)
    }

    pub fn truncated(&self) -> String {
        decimal_truncated(&self.value, self.digits)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.value)
    }
}

pub fn ratio_table(ns: &[usize], digits: usize) -> Result<Vec<RatioValue>> {
    ns.par_iter().map(|&n| RatioValue::compute(n, digits)).collect()
}

/// `√(2/π)·e^{−t²/2}`.
pub fn normal_limit(t: f64) -> f64 {
    (2.0 / PI).sqrt() * (-t * t / 2.0).exp()
}

/// Tail of Stirling's series for `ln Γ(x + 1)` after the
/// `x ln x − x + ½ ln(2πx)` part.
fn stirling_tail(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

/// `ln(√n · C(n, k) / 2ⁿ)` for large `n`, arranged so the leading entropy
/// term is formed from `ln_1p` of the small offset `2k/n − 1` rather than as
/// a difference of huge logarithms.
fn log_scaled_binomial(n: u64, k: u64) -> f64 {
    let nf = n as f64;
    if k == 0 || k == n {
        return 0.5 * nf.ln() - nf * std::f64::consts::LN_2;
    }
    let kf = k as f64;
    let rest = nf - kf;
    let eps = (2.0 * kf - nf) / nf;
    let entropy = -nf * ((1.0 + eps) / 2.0 * eps.ln_1p() + (1.0 - eps) / 2.0 * (-eps).ln_1p());
    let prefactor = 0.5 * (nf / (2.0 * PI * (kf * rest))).ln();
    let tails = stirling_tail(nf) - (stirling_tail(kf) + stirling_tail(rest));
    entropy + prefactor + tails + 0.5 * nf.ln()
}

/// `√n / 2ⁿ · C(n, k)` with `k` the nearest integer to `(n + t√n)/2`.
pub fn normal_approx_check(n: u64, t: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::NormalIndexOutOfRange { n, index: f64::NAN });
    }
    let nf = n as f64;
    let index = (nf + t * nf.sqrt()) / 2.0;
    let k = index.round();
    if !(0.0..=nf).contains(&k) {
        return Err(Error::NormalIndexOutOfRange { n, index });
    }
    let k = k as u64;
    // Stirling's tail needs every argument away from zero.
    if n <= EXACT_BINOMIAL_LIMIT || k.min(n - k) < 20 {
        let exact = BigRational::new(BigInt::from(binomial(n, k as i64)), pow2(n as usize));
        return Ok(rational_to_f64(&exact) * nf.sqrt());
    }
    Ok(log_scaled_binomial(n, k).exp())
}

/// `Bₙ/2ⁿ − 1/(4n) − 1/(6n²)` as an exact rational.
fn expansion_remainder(n: usize) -> Result<BigRational> {
    let b = bbs_exact(n)?;
    let nn = BigInt::from(n);
    let scaled = BigRational::new(b, pow2(n));
    Ok(scaled
        - BigRational::new(BigInt::one(), &nn * 4)
        - BigRational::new(BigInt::one(), &nn * &nn * 6))
}

/// `n³·(Bₙ/2ⁿ − 1/(4n) − 1/(6n²))`.
pub fn conjecture_residual(n: usize) -> Result<f64> {
    let rem = expansion_remainder(n)?;
    let cube = BigInt::from(n).pow(3);
    Ok(rational_to_f64(&(rem * BigRational::from_integer(cube))))
}

/// `n·Bₙ/2ⁿ`, which tends to `1/4`.
pub fn first_order_coefficient(n: usize) -> Result<f64> {
    let b = bbs_exact(n)?;
    Ok(rational_to_f64(&BigRational::new(b * n, pow2(n))))
}

/// `n²·(Bₙ/2ⁿ − 1/(4n))`, which tends to `1/6` if the expansion holds.
pub fn second_order_coefficient(n: usize) -> Result<f64> {
    let b = bbs_exact(n)?;
    let nn = BigInt::from(n);
    let rem = BigRational::new(b, pow2(n)) - BigRational::new(BigInt::one(), &nn * 4);
    Ok(rational_to_f64(&(rem * BigRational::from_integer(&nn * &nn))))
}

/// Probability that an `n`-step simple random walk has its start as the
/// strict minimum and its end as the strict maximum: `Bₙ₊₂ / 2ⁿ`.
pub fn random_walk_pn(n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::EmptyWalk);
    }
    Ok(BigRational::new(bbs_exact(n + 2)?, pow2(n)))
}

/// Probability that every prefix sum of an `n`-step walk is `≥ 0`:
/// `C(n, ⌊n/2⌋) / 2ⁿ`.
pub fn one_sided_min_prob(n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::EmptyWalk);
    }
    let central: BigUint = binomial(n as u64, (n / 2) as i64);
    Ok(BigRational::new(BigInt::from(central), pow2(n)))
}

/// `(e^{−1/2} − 2e^{−2}) / √(2π)`, the limit of the scaled bounded-walk
/// lower bound at `b = ⌊√n⌋`.
pub fn bounded_walk_limit() -> f64 {
    ((-0.5f64).exp() - 2.0 * (-2.0f64).exp()) / (2.0 * PI).sqrt()
}

/// `√n/2ⁿ · bounded_lower_bound(n, ⌊√n⌋)`.
pub fn bounded_lower_bound_scaled(n: u64) -> Result<f64> {
    let b = n.isqrt().max(1);
    let bound = bounded_lower_bound(n, b)?;
    let ratio = BigRational::new(BigInt::from(bound), pow2(n as usize));
    Ok(rational_to_f64(&ratio) * (n as f64).sqrt())
}
