//! Moments of the summand-count distributions and their Gaussian limit.
//!
//! Means and variances are exact rationals; skewness, kurtosis and every
//! comparison against the normal density are computed from exact central
//! moments with a single conversion to `f64` at the end.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::combinatorics::{joint_table, zeck_density, DensityTable};
use crate::convert::{rational_to_f64, signed_ratio_to_f64};
use crate::oracle::{empirical_joint_with, EnumLimits, OracleError};
use crate::quad::{constants, QuadRat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("k = {k} is outside 0 < k < n/2 for n = {n}")]
    OutOfDomain { n: u64, k: String },
    #[error("profile needs n >= 10, got {0}")]
    TooSmall(usize),
    #[error("grid step must be positive and finite")]
    BadStep,
}

/// Which summand count the moments describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `K_n`, every summand including the forced leading one.
    Forced,
    /// `K_n - 1`, the non-forced summands.
    NonForced,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub n: usize,
    pub convention: Convention,
    pub mean: BigRational,
    pub variance: BigRational,
    pub mean_f64: f64,
    pub variance_f64: f64,
    /// Absent when the variance is zero.
    pub skewness: Option<f64>,
    pub excess_kurtosis: Option<f64>,
}

/// Exact first four moments of a weighted integer sample.
#[derive(Debug, Clone)]
struct RawSums {
    total: BigInt,
    s: [BigInt; 5],
}

impl RawSums {
    fn from_weights<'a>(cells: impl IntoIterator<Item = (i64, &'a BigUint)>) -> Self {
        let mut total = BigInt::zero();
        let mut s: [BigInt; 5] = Default::default();
        for (value, count) in cells {
            let c = BigInt::from(count.clone());
            let v = BigInt::from(value);
            let mut w = c.clone();
            total += &c;
            for slot in s.iter_mut().skip(1) {
                w *= &v;
                *slot += &w;
            }
        }
        s[0] = total.clone();
        RawSums { total, s }
    }

    fn mean(&self) -> BigRational {
        BigRational::new(self.s[1].clone(), self.total.clone())
    }

    /// Central moments scaled by `N^j`, returned as integers.
    fn central_scaled(&self) -> (BigInt, BigInt, BigInt) {
        let n = &self.total;
        let [_, s1, s2, s3, s4] = &self.s;
        let m2 = s2 * n - s1 * s1;
        let m3 = s3 * n * n - BigInt::from(3) * s1 * s2 * n + BigInt::from(2) * s1 * s1 * s1;
        let m4 = s4 * n * n * n - BigInt::from(4) * s1 * s3 * n * n
            + BigInt::from(6) * s1 * s1 * s2 * n
            - BigInt::from(3) * s1 * s1 * s1 * s1;
        (m2, m3, m4)
    }

    fn variance(&self) -> BigRational {
        let (m2, _, _) = self.central_scaled();
        BigRational::new(m2, &self.total * &self.total)
    }

    fn shape(&self) -> (Option<f64>, Option<f64>) {
        let (m2, m3, m4) = self.central_scaled();
        if m2.is_zero() {
            return (None, None);
        }
        let n = &self.total;
        let n2 = n * n;
        let v = signed_ratio_to_f64(&m2, &n2);
        let third = signed_ratio_to_f64(&m3, &(&n2 * n));
        let fourth = signed_ratio_to_f64(&m4, &(&n2 * &n2));
        (
            Some(third / libm::pow(v, 1.5)),
            Some(fourth / (v * v) - 3.0),
        )
    }
}

/// Moments of an arbitrary histogram `value -> count`.
pub fn moments_from_histogram<'a>(
    n: usize,
    convention: Convention,
    cells: impl IntoIterator<Item = (i64, &'a BigUint)>,
) -> MomentReport {
    let sums = RawSums::from_weights(cells);
    let mean = sums.mean();
    let variance = sums.variance();
    let (skewness, excess_kurtosis) = sums.shape();
    MomentReport {
        n,
        convention,
        mean_f64: rational_to_f64(&mean),
        variance_f64: rational_to_f64(&variance),
        mean,
        variance,
        skewness,
        excess_kurtosis,
    }
}

/// Moments of `K_n` (forced) or `K_n - 1` (non-forced) under the
/// Zeckendorf density.
pub fn exact_moments(table: &DensityTable, convention: Convention) -> MomentReport {
    let shift = match convention {
        Convention::Forced => 1,
        Convention::NonForced => 0,
    };
    moments_from_histogram(
        table.n,
        convention,
        table
            .counts
            .iter()
            .enumerate()
            .map(|(k, c)| (k as i64 + shift, c)),
    )
}

/// `N_n(k) S_n(k)`, the Stirling approximation to `p_{n+1}(k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StirlingFactors {
    pub n: u64,
    pub k: f64,
    pub n_factor: f64,
    pub s_factor: f64,
    pub log_s_factor: f64,
    pub f_value: f64,
    /// `(k - mu_{n+1}) / sigma_{n+1}`.
    pub x: f64,
    /// `x sigma_{n+1} / n`.
    pub u: f64,
}

/// Mean and standard deviation of the non-forced count on
/// `[F_n, F_{n+1})`, exact then converted.
pub fn nonforced_mean_sigma(n: usize) -> (f64, f64) {
    let m = exact_moments(&zeck_density(n), Convention::NonForced);
    (m.mean_f64, libm::sqrt(m.variance_f64))
}

/// Stirling factors at integer `k`.
pub fn stirling_f(n: u64, k: u64) -> Result<StirlingFactors, GaussError> {
    stirling_f_at(n, k as f64)
}

/// Stirling factors at real `k`.
///
/// `N_n(k) = (2 pi)^{-1/2} sqrt((n-k)/(k(n-2k))) sqrt5/phi` and
/// `log S_n(k) = -n log phi + (n-k) log(n-k) - k log k - (n-2k) log(n-2k)`;
/// the latter is never exponentiated before the large terms cancel.
pub fn stirling_f_at(n: u64, k: f64) -> Result<StirlingFactors, GaussError> {
    let nf = n as f64;
    if !(k > 0.0 && nf - 2.0 * k > 0.0) {
        return Err(GaussError::OutOfDomain {
            n,
            k: alloc::format!("{k}"),
        });
    }
    let sqrt5 = libm::sqrt(5.0);
    let phi = (1.0 + sqrt5) / 2.0;
    let n_factor = (1.0 / libm::sqrt(2.0 * PI))
        * libm::sqrt((nf - k) / (k * (nf - 2.0 * k)))
        * (sqrt5 / phi);
    let log_s = -nf * libm::log(phi) + (nf - k) * libm::log(nf - k)
        - k * libm::log(k)
        - (nf - 2.0 * k) * libm::log(nf - 2.0 * k);
    let s_factor = libm::exp(log_s);
    let (mu, sigma) = nonforced_mean_sigma(n as usize + 1);
    let x = (k - mu) / sigma;
    Ok(StirlingFactors {
        n,
        k,
        n_factor,
        s_factor,
        log_s_factor: log_s,
        f_value: n_factor * s_factor,
        x,
        u: x * sigma / nf,
    })
}

pub fn normal_pdf(x: f64) -> f64 {
    libm::exp(-x * x / 2.0) / libm::sqrt(2.0 * PI)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussRow {
    /// Nominal grid point.
    pub x: f64,
    /// `round(mu + x sigma)`.
    pub k: i64,
    /// `(k - mu) / sigma`, where the lattice point actually sits.
    pub x_lattice: f64,
    /// `sigma p_n(k)`.
    pub scaled_density: f64,
    /// Standard normal density at `x_lattice`.
    pub normal_pdf: f64,
}

/// The standardized density of the non-forced summand count against the
/// standard normal.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussFit {
    pub n: usize,
    pub mean: f64,
    pub sigma: f64,
    pub rows: Vec<GaussRow>,
    pub sup_deviation: f64,
}

/// Samples `sigma p_n(round(mu + x sigma))` for `x` in `[-w, w]` with the
/// given step and compares each lattice point with the normal density at
/// its own standardized coordinate.
pub fn gauss_profile(n: usize, half_width: f64, step: f64) -> Result<GaussFit, GaussError> {
    if n < 10 {
        return Err(GaussError::TooSmall(n));
    }
    if !(step > 0.0 && step.is_finite() && half_width.is_finite()) {
        return Err(GaussError::BadStep);
    }
    let table = zeck_density(n);
    let m = exact_moments(&table, Convention::NonForced);
    let mu = m.mean_f64;
    let sigma = libm::sqrt(m.variance_f64);
    let steps = libm::round(half_width.abs() / step) as i64;
    let rows: Vec<GaussRow> = (-steps..=steps)
        .map(|i| {
            let x = i as f64 * step;
            let k = libm::round(mu + x * sigma) as i64;
            let x_lattice = (k as f64 - mu) / sigma;
            GaussRow {
                x,
                k,
                x_lattice,
                scaled_density: sigma * table.probability_f64(k),
                normal_pdf: normal_pdf(x_lattice),
            }
        })
        .collect();
    let sup_deviation = rows
        .iter()
        .map(|r| (r.scaled_density - r.normal_pdf).abs())
        .fold(0.0, f64::max);
    Ok(GaussFit {
        n,
        mean: mu,
        sigma,
        rows,
        sup_deviation,
    })
}

/// `n / (phi^2 + 1)`, the leading term of the mean summand count.
pub fn leading_mean(n: u64) -> QuadRat {
    constants::mean_density().scale(&BigRational::from_integer(BigInt::from(n)))
}

/// `n / (5 sqrt5)`, the leading term of the variance.
pub fn leading_variance(n: u64) -> QuadRat {
    constants::variance_slope().scale(&BigRational::from_integer(BigInt::from(n)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureRow {
    pub k: usize,
    /// `p_n(k)`.
    pub probability: f64,
    /// Normal density with the leading-term mean and variance, at `k`.
    pub overlay: f64,
}

/// The summand-count density on `[F_n, F_{n+1})` beside the Gaussian with
/// leading-term parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureProfile {
    pub n: usize,
    pub overlay_mean: f64,
    pub overlay_variance: f64,
    pub moments: MomentReport,
    pub rows: Vec<FigureRow>,
}

pub fn figure_profile(n: usize) -> FigureProfile {
    let table = zeck_density(n);
    let moments = exact_moments(&table, Convention::NonForced);
    let overlay_mean = leading_mean(n as u64).to_f64();
    let overlay_variance = leading_variance(n as u64).to_f64();
    let sd = libm::sqrt(overlay_variance);
    let rows = (0..table.counts.len())
        .map(|k| FigureRow {
            k,
            probability: table.probability_f64(k as i64),
            overlay: normal_pdf((k as f64 - overlay_mean) / sd) / sd,
        })
        .collect();
    FigureProfile {
        n,
        overlay_mean,
        overlay_variance,
        moments,
        rows,
    }
}

/// Where the far-difference joint counts come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FardiffSource {
    /// Exhaustive enumeration of signed representations.
    Oracle,
    /// The closed binomial sum.
    Formula,
}

/// Joint statistics of the positive (`K`) and negative (`L`) far-difference
/// summand counts on `(S_{n-1}, S_n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FardiffStats {
    pub n: usize,
    pub mean_k: f64,
    pub mean_l: f64,
    pub var_k: f64,
    pub var_l: f64,
    pub cov_kl: f64,
    pub corr_kl: f64,
    /// `Cov(K + L, K - L) = Var K - Var L`.
    pub cov_sum_diff: f64,
    pub corr_sum_diff: f64,
    pub exact_mean_k: BigRational,
    pub exact_mean_l: BigRational,
    pub exact_var_k: BigRational,
    pub exact_var_l: BigRational,
    pub exact_cov_kl: BigRational,
}

/// Observed minus limiting value for each far-difference constant.
#[derive(Debug, Clone, PartialEq)]
pub struct FardiffLimitGaps {
    /// `E[K] - (n/10 + (371 - 113 sqrt5)/40)`.
    pub mean_k: f64,
    /// `(E[K] - E[L]) - phi/2`.
    pub mean_gap: f64,
    /// `Var K / n - (15 + 21 sqrt5)/1000`.
    pub var_k_slope: f64,
    /// `corr(K, L) + (21 - 2 phi)/(29 + 2 phi)`.
    pub corr_kl: f64,
}

impl FardiffStats {
    pub fn limit_gaps(&self) -> FardiffLimitGaps {
        let n = self.n as f64;
        FardiffLimitGaps {
            mean_k: self.mean_k - (n / 10.0 + constants::fardiff_mean_offset().to_f64()),
            mean_gap: (self.mean_k - self.mean_l) - constants::fardiff_mean_gap().to_f64(),
            var_k_slope: self.var_k / n - constants::fardiff_variance_slope().to_f64(),
            corr_kl: self.corr_kl - constants::fardiff_correlation().to_f64(),
        }
    }
}

fn stats_from_joint<'a>(
    n: usize,
    cells: impl IntoIterator<Item = (usize, usize, &'a BigUint)>,
) -> FardiffStats {
    let mut total = BigInt::zero();
    let (mut sk, mut sl, mut skk, mut sll, mut skl) = Default::default();
    for (k, l, count) in cells {
        let c = BigInt::from(count.clone());
        let (k, l) = (BigInt::from(k), BigInt::from(l));
        total += &c;
        sk += &c * &k;
        sl += &c * &l;
        skk += &c * &k * &k;
        sll += &c * &l * &l;
        skl += &c * &k * &l;
    }
    let (sk, sl, skk, sll, skl): (BigInt, BigInt, BigInt, BigInt, BigInt) = (sk, sl, skk, sll, skl);
    let n2 = &total * &total;
    let mean_k = BigRational::new(sk.clone(), total.clone());
    let mean_l = BigRational::new(sl.clone(), total.clone());
    let var_k = BigRational::new(&skk * &total - &sk * &sk, n2.clone());
    let var_l = BigRational::new(&sll * &total - &sl * &sl, n2.clone());
    let cov = BigRational::new(&skl * &total - &sk * &sl, n2);
    let (vk, vl, c) = (
        rational_to_f64(&var_k),
        rational_to_f64(&var_l),
        rational_to_f64(&cov),
    );
    let corr = |num: f64, a: f64, b: f64| {
        if a > 0.0 && b > 0.0 {
            num / libm::sqrt(a * b)
        } else {
            f64::NAN
        }
    };
    let var_sum = vk + vl + 2.0 * c;
    let var_diff = vk + vl - 2.0 * c;
    FardiffStats {
        n,
        mean_k: rational_to_f64(&mean_k),
        mean_l: rational_to_f64(&mean_l),
        var_k: vk,
        var_l: vl,
        cov_kl: c,
        corr_kl: corr(c, vk, vl),
        cov_sum_diff: vk - vl,
        corr_sum_diff: corr(vk - vl, var_sum, var_diff),
        exact_mean_k: mean_k,
        exact_mean_l: mean_l,
        exact_var_k: var_k,
        exact_var_l: var_l,
        exact_cov_kl: cov,
    }
}

pub fn fardiff_stats(n: usize, source: FardiffSource) -> Result<FardiffStats, OracleError> {
    fardiff_stats_with(n, source, &EnumLimits::default())
}

pub fn fardiff_stats_with(
    n: usize,
    source: FardiffSource,
    limits: &EnumLimits,
) -> Result<FardiffStats, OracleError> {
    match source {
        FardiffSource::Oracle => {
            let hist: Vec<_> = empirical_joint_with(n, limits)?
                .into_iter()
                .map(|((k, l), c)| (k, l, BigUint::from(c)))
                .collect();
            Ok(stats_from_joint(n, hist.iter().map(|(k, l, c)| (*k, *l, c))))
        }
        FardiffSource::Formula => {
            let table = joint_table(n);
            Ok(stats_from_joint(
                n,
                table.counts.iter().map(|(&(k, l), c)| (k, l, c)),
            ))
        }
    }
}
