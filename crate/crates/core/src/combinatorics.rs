//! Exact counting: binomials, the Zeckendorf summand density, stars and
//! bars, the weighted count `E(n)`, closed-form moments and the joint count
//! of positive/negative far-difference summands.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::quad::{constants, QuadRat};
use crate::sequences::{fardiff_s, fib};

/// `C(m, j)`; zero when `j < 0`, `m < 0` or `j > m`.
pub fn binom(m: i64, j: i64) -> BigUint {
    if j < 0 || m < 0 || j > m {
        return BigUint::zero();
    }
    let j = j.min(m - j) as u64;
    let m = m as u64;
    let mut acc = BigUint::one();
    for i in 0..j {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// Number of `N` in `[F_n, F_{n+1})` with exactly `k + 1` Zeckendorf
/// summands: `C(n-1-k, k)`.
pub fn zeck_count(n: usize, k: usize) -> BigUint {
    binom(n as i64 - 1 - k as i64, k as i64)
}

/// The exact distribution of the non-forced summand count on
/// `[F_n, F_{n+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityTable {
    pub n: usize,
    /// `counts[k] = C(n-1-k, k)` for `k = 0..=(n-1)/2`.
    pub counts: Vec<BigUint>,
    /// `F_{n-1}`, the interval size.
    pub normalizer: BigUint,
}

impl DensityTable {
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn probability(&self, k: usize) -> BigRational {
        let count = self.counts.get(k).cloned().unwrap_or_default();
        BigRational::new(BigInt::from(count), BigInt::from(self.normalizer.clone()))
    }

    pub fn probabilities(&self) -> Vec<BigRational> {
        (0..self.counts.len()).map(|k| self.probability(k)).collect()
    }

    /// `p_n(k)` in floating point; zero outside the support.
    pub fn probability_f64(&self, k: i64) -> f64 {
        if k < 0 {
            return 0.0;
        }
        match self.counts.get(k as usize) {
            Some(c) => crate::convert::ratio_to_f64(c, &self.normalizer),
            None => 0.0,
        }
    }
}

/// [`DensityTable`] for `n >= 1`.
pub fn zeck_density(n: usize) -> DensityTable {
    assert!(n >= 1, "density is defined for n >= 1");
    let top = (n - 1) / 2;
    let mut counts = Vec::with_capacity(top + 1);
    let mut c = BigUint::one();
    counts.push(c.clone());
    for k in 0..top {
        // C(n-2-k, k+1) = C(n-1-k, k) (n-1-2k)(n-2-2k) / ((n-1-k)(k+1))
        c *= ((n - 1 - 2 * k) * (n - 2 - 2 * k)) as u64;
        c /= ((n - 1 - k) * (k + 1)) as u64;
        counts.push(c.clone());
    }
    DensityTable {
        n,
        counts,
        normalizer: fib(n - 1),
    }
}

/// Solutions of `y_1 + ... + y_p = n` with `y_i >= mins[i]`, where
/// `p = mins.len() >= 1`.
pub fn stars_and_bars(n: u64, mins: &[u64]) -> BigUint {
    let p = mins.len() as i64;
    if p == 0 {
        return if n == 0 { BigUint::one() } else { BigUint::zero() };
    }
    let floor: u64 = mins.iter().sum();
    if floor > n {
        return BigUint::zero();
    }
    binom((n - floor) as i64 + p - 1, p - 1)
}

/// `E(n) = sum_k k C(n-1-k, k)`.
pub fn script_e(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    zeck_density(n)
        .counts
        .iter()
        .enumerate()
        .map(|(k, c)| c * k as u64)
        .sum()
}

/// `((5 - √5)/10) n - 2/5`.
pub fn mean_closed(n: u64) -> QuadRat {
    let slope = constants::mean_slope().scale(&int_rat(n as i64));
    &slope - &QuadRat::from_parts(2, 5, 0, 1)
}

/// `(1/(5√5)) n - 2/25`.
pub fn variance_closed(n: u64) -> QuadRat {
    let slope = constants::variance_slope().scale(&int_rat(n as i64));
    &slope - &QuadRat::from_parts(2, 25, 0, 1)
}

fn int_rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// The exact fields `weighted_geom` runs over.
pub trait ExactField: Clone + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// `None` on division by zero.
    fn div(&self, rhs: &Self) -> Option<Self>;

    fn pow(&self, e: u64) -> Self {
        let mut acc = Self::from_i64(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl ExactField for BigRational {
    fn from_i64(v: i64) -> Self {
        int_rat(v)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
}

impl ExactField for QuadRat {
    fn from_i64(v: i64) -> Self {
        QuadRat::from_int(v)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs).ok()
    }
    fn pow(&self, e: u64) -> Self {
        QuadRat::pow(self, e as u32)
    }
}

/// `S(m, x) = sum_{j=0}^m j x^j` via
/// `(m x^{m+2} - (m+1) x^{m+1} + x) / (x-1)^2`.
///
/// At `x = 1` the closed form is singular and the sum is `m(m+1)/2`.
pub fn weighted_geom<T: ExactField>(m: u64, x: &T) -> T {
    let one = T::from_i64(1);
    let denom = x.sub(&one);
    let denom = denom.mul(&denom);
    let m_t = T::from_i64(m as i64);
    let numer = m_t
        .mul(&x.pow(m + 2))
        .sub(&T::from_i64(m as i64 + 1).mul(&x.pow(m + 1)))
        .add(x);
    match numer.div(&denom) {
        Some(v) => v,
        None => T::from_i64((m * (m + 1) / 2) as i64),
    }
}

/// Binomial for the sign-run factors of [`joint_count`]: [`binom`] plus
/// `C(-1, 0) = 1`, the single empty composition.
fn binom_run(m: i64, j: i64) -> BigUint {
    if m == -1 && j == 0 {
        BigUint::one()
    } else {
        binom(m, j)
    }
}

/// Number of integers in `(S_{n-1}, S_n]` whose far-difference
/// representation has exactly `positive` positive and `negative` negative
/// terms.
///
/// This is the four-term binomial sum over `r = 0..=k`, where `k` counts
/// the positive terms *besides* the leading `+F_n` (so `k = positive - 1`)
/// and binomials vanish outside `0 <= j <= m` except `C(-1, 0) = 1`.
///
/// With no negative terms the sum collapses (as a polynomial identity in
/// `n`) to `C(n-1-3k, k)`; no choice of values for `C(-1, j)` makes the
/// term-by-term evaluation vanish for `2k <= n <= 3k`, so that column is
/// evaluated from the collapsed form. Both were checked cell by cell against
/// exhaustive enumeration.
pub fn joint_count(n: usize, positive: usize, negative: usize) -> BigUint {
    if positive == 0 || n == 0 {
        return BigUint::zero();
    }
    let n = n as i64;
    let k = positive as i64 - 1;
    let l = negative as i64;
    if l == 0 {
        return binom(n - 1 - 3 * k, k);
    }
    let s = k + l;
    let mut total = BigUint::zero();
    for r in 0..=k {
        let runs = binom_run(k - 1, k - r);
        if runs.is_zero() {
            continue;
        }
        let base = n - 3 * s + 2 * r;
        let inner = binom(l - 1, r - 2) * binom(base - 3, s)
            + binom(l - 1, r - 1) * binom(base - 2, s)
            + binom(l - 1, r - 1) * binom(base - 1, s)
            + binom(l - 1, r) * binom(base, s);
        total += runs * inner;
    }
    total
}

/// The joint distribution of (positive, negative) far-difference summand
/// counts on `(S_{n-1}, S_n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointTable {
    pub n: usize,
    /// Non-zero cells only.
    pub counts: BTreeMap<(usize, usize), BigUint>,
    /// `S_n - S_{n-1}`.
    pub normalizer: BigUint,
}

impl JointTable {
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }
}

pub fn joint_table(n: usize) -> JointTable {
    let mut counts = BTreeMap::new();
    // every term after the first costs at least 3 indices
    let max_terms = n / 3 + 1;
    for positive in 1..=max_terms {
        for negative in 0..=(max_terms - positive) {
            let c = joint_count(n, positive, negative);
            if !c.is_zero() {
                counts.insert((positive, negative), c);
            }
        }
    }
    JointTable {
        n,
        counts,
        normalizer: fardiff_s(n as i64) - fardiff_s(n as i64 - 1),
    }
}
