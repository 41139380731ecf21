//! Closed-form sequence counts and rainbow-number statistics in exact
//! arithmetic.
//!
//! Every function is generic over the integer type. `u128` covers every
//! count through `n = 38` (`C(75,38) < 2^72`); [`BigCount`](crate::BigCount)
//! is unbounded. Rational results are `Ratio<T>` over a signed type.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed};
use thiserror::Error;

/// Exact integer scalar used by the counting formulas.
pub trait ExactInt: Clone + Integer + FromPrimitive + fmt::Debug + fmt::Display {}

impl<T> ExactInt for T where T: Clone + Integer + FromPrimitive + fmt::Debug + fmt::Display {}

/// Signed exact scalar, needed where intermediate terms go negative.
pub trait ExactSigned: ExactInt + Signed {}

impl<T> ExactSigned for T where T: ExactInt + Signed {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("upper bound {upper} is below lower bound {lower}")]
    BadBounds { lower: i64, upper: i64 },
    #[error("k = {k} must lie in [1, {max}]")]
    BadK { k: u64, max: u64 },
    #[error("j = {j} must lie in [1, {n}]")]
    BadJ { j: u64, n: u64 },
    #[error("no sequence of length {n} has {j} or more blocks")]
    EmptyCondition { n: u64, j: u64 },
    #[error("G_z table is missing length {missing}")]
    IncompleteTable { missing: usize },
    #[error("length must be positive")]
    ZeroLength,
}

#[inline]
fn lift<T: ExactInt>(v: u64) -> T {
    T::from_u64(v).expect("value representable in the target type")
}

/// `C(n, k)`, zero when `k > n`. Multiplicative method; each partial
/// product is itself a binomial so every division is exact.
pub fn binomial<T: ExactInt>(n: u64, k: u64) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * lift::<T>(n - i) / lift::<T>(i + 1);
    }
    acc
}

/// `K(l,u,m) = (u - l + 1)^m`, the number of `(l,u,m)`-bounded sequences.
pub fn count_bounded<T: ExactInt>(lower: i64, upper: i64, m: u32) -> Result<T, CountError> {
    if upper < lower {
        return Err(CountError::BadBounds { lower, upper });
    }
    let base: T = lift((upper - lower + 1) as u64);
    Ok(num_traits::pow(base, m as usize))
}

/// `R(l,u,m) = C(u - l + m, m)`, the number of `(l,u,m)`-regular sequences.
pub fn count_regular<T: ExactInt>(lower: i64, upper: i64, m: u64) -> Result<T, CountError> {
    if upper < lower {
        return Err(CountError::BadBounds { lower, upper });
    }
    Ok(binomial((upper - lower) as u64 + m, m))
}

/// `R(n) = C(2n - 1, n)`.
pub fn count_regular_n<T: ExactInt>(n: u64) -> T {
    if n == 0 {
        return T::one();
    }
    binomial(2 * n - 1, n)
}

/// `R_z(n) = R(1, n-1, n) = C(2n - 2, n)`, the zerofree `n`-regular sequences.
pub fn count_zerofree_regular<T: ExactInt>(n: u64) -> T {
    if n == 0 {
        return T::zero();
    }
    binomial(2 * n - 2, n)
}

/// `E(n) = (C(2n-1, n) + C(n-1, floor(n/2))) / 2`, the `n`-even sequences.
pub fn count_even<T: ExactInt>(n: u64) -> T {
    if n == 0 {
        return T::one();
    }
    let two: T = lift(2);
    (count_regular_n::<T>(n) + binomial(n - 1, n / 2)) / two
}

/// Number of `(0, n-1, m)`-regular sequences with exactly `k` distinct values:
/// `C(n, k) C(m-1, k-1)`.
pub fn rainbow_count<T: ExactInt>(n: u64, m: u64, k: u64) -> Result<T, CountError> {
    let max = n.min(m);
    if k == 0 || k > max {
        return Err(CountError::BadK { k, max });
    }
    Ok(binomial::<T>(n, k) * binomial::<T>(m - 1, k - 1))
}

fn ratio<T: ExactSigned>(num: u64, den: u64) -> Ratio<T> {
    Ratio::new(lift(num), lift(den))
}

/// Mean rainbow number of a uniform random `n`-regular sequence: `n^2/(2n-1)`.
pub fn rainbow_regular_expectation<T: ExactSigned>(n: u64) -> Result<Ratio<T>, CountError> {
    if n == 0 {
        return Err(CountError::ZeroLength);
    }
    Ok(ratio(n * n, 2 * n - 1))
}

/// Variance of the rainbow number of a random `n`-regular sequence:
/// `n^2 (n-1) / (2 (2n-1)^2)`.
pub fn rainbow_regular_variance<T: ExactSigned>(n: u64) -> Result<Ratio<T>, CountError> {
    if n == 0 {
        return Err(CountError::ZeroLength);
    }
    let num: T = lift::<T>(n) * lift(n) * lift(n - 1);
    let den: T = lift::<T>(2) * lift(2 * n - 1) * lift(2 * n - 1);
    Ok(Ratio::new(num, den))
}

fn power_ratio<T: ExactSigned>(num: i64, den: u64, exp: u64) -> Ratio<T> {
    let base = Ratio::new(T::from_i64(num).expect("representable"), lift(den));
    num_traits::pow(base, exp as usize)
}

/// Mean rainbow number of a uniform random `n`-bounded sequence:
/// `n (1 - (1 - 1/n)^n)`.
pub fn rainbow_bounded_expectation<T: ExactSigned>(n: u64) -> Result<Ratio<T>, CountError> {
    if n == 0 {
        return Err(CountError::ZeroLength);
    }
    let miss = power_ratio::<T>(n as i64 - 1, n, n);
    Ok(Ratio::from_integer(lift(n)) * (Ratio::one() - miss))
}

/// Variance of the rainbow number of a random `n`-bounded sequence:
/// `n q1 (1 - q1) + n(n-1) (q2 - q1^2)` with `q1 = (1-1/n)^n`, `q2 = (1-2/n)^n`.
pub fn rainbow_bounded_variance<T: ExactSigned>(n: u64) -> Result<Ratio<T>, CountError> {
    if n == 0 {
        return Err(CountError::ZeroLength);
    }
    let q1 = power_ratio::<T>(n as i64 - 1, n, n);
    let q2 = power_ratio::<T>(n as i64 - 2, n, n);
    let nn: Ratio<T> = Ratio::from_integer(lift(n));
    let pairs: Ratio<T> = Ratio::from_integer(lift(n * (n - 1)));
    let single = nn * q1.clone() * (Ratio::one() - q1.clone());
    let cross = pairs * (q2 - q1.clone() * q1);
    Ok(single + cross)
}

/// `c(n, j) = sum_{k=j}^{n} C(n,k) C(n-1,k-1)`: the `n`-regular sequences
/// with at least `j` blocks of equal elements.
pub fn block_count<T: ExactInt>(n: u64, j: u64) -> Result<T, CountError> {
    if j == 0 || j > n {
        return Err(CountError::BadJ { j, n });
    }
    Ok((j..=n).fold(T::zero(), |acc, k| {
        acc + binomial::<T>(n, k) * binomial::<T>(n - 1, k - 1)
    }))
}

/// Expected length of the `j`-th block of a random `n`-regular sequence,
/// conditioned on there being at least `j` blocks:
/// `sum_{k>=j} C(n,k)^2 / c(n,j)`.
///
/// The numerator counts pairs (sequence, position inside block `j`): the
/// sequences whose `j`-th block has length at least `l` correspond to the
/// `(0, n-1, n-l+1)`-regular sequences with at least `j` blocks, and summing
/// over `l` collapses `sum_l C(n-l, k-1)` to `C(n, k)`.
pub fn expected_block_length<T: ExactSigned>(n: u64, j: u64) -> Result<Ratio<T>, CountError> {
    if j == 0 {
        return Err(CountError::BadJ { j, n });
    }
    if j > n {
        return Err(CountError::EmptyCondition { n, j });
    }
    let total = (j..=n).fold(T::zero(), |acc, k| {
        let c = binomial::<T>(n, k);
        acc + c.clone() * c
    });
    Ok(Ratio::new(total, block_count(n, j)?))
}

/// `c(n+1, j+1) / c(n, j)`. Tends to `4 - 2/(n+1)` for fixed `j`; this is not
/// the conditional mean block length (see [`expected_block_length`]).
pub fn block_count_ratio<T: ExactSigned>(n: u64, j: u64) -> Result<Ratio<T>, CountError> {
    let den = block_count::<T>(n, j)?;
    Ok(Ratio::new(block_count(n + 1, j + 1)?, den))
}

/// Accumulates `G(n) = G(n-1) + G_z(n)` from `G(1) = 1`.
///
/// `gz` maps lengths `2..=max` to zerofree counts; the result holds
/// `G(1..=max)` at indices `0..max`. Entries for length 1 are ignored (there
/// is no zerofree 1-sequence).
pub fn graphical_recurrence<T, I>(gz: I) -> Result<Vec<T>, CountError>
where
    T: ExactInt,
    I: IntoIterator<Item = (usize, T)>,
{
    let table: BTreeMap<usize, T> = gz.into_iter().filter(|(n, _)| *n >= 2).collect();
    let max = table.keys().next_back().copied().unwrap_or(1);
    let mut out = Vec::with_capacity(max);
    out.push(T::one());
    for n in 2..=max {
        let z = table
            .get(&n)
            .ok_or(CountError::IncompleteTable { missing: n })?;
        let next = out[n - 2].clone() + z.clone();
        out.push(next);
    }
    Ok(out)
}

/// Renders a non-negative rational with `digits` fractional digits, rounding
/// half up.
pub fn to_decimal_string<T: ExactSigned>(value: &Ratio<T>, digits: usize) -> String {
    let ten: T = lift(10);
    let scale = num_traits::pow(ten, digits);
    let scaled = value.clone() * Ratio::from_integer(scale.clone());
    let two: T = lift(2);
    let rounded = (scaled.numer().clone() * two.clone() + scaled.denom().clone())
        / (scaled.denom().clone() * two);
    let (int_part, frac) = rounded.div_rem(&scale);
    if digits == 0 {
        return int_part.to_string();
    }
    format!("{int_part}.{frac:0>digits$}")
}
