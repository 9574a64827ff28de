//! JSON shapes for every report the CLI emits.
//!
//! Big integers are JSON strings so no consumer silently rounds them.
//! Rationals are `"p/q"` strings. Floats are rounded to the requested number
//! of significant digits, and a non-finite value becomes `null`.

use num_bigint::BigUint;
use serde::Serialize;
use zeck_core::gaussian::{FardiffLimitGaps, FigureProfile};
use zeck_core::{
    BijectionReport, Convention, DensityTable, Decomposition, FardiffSource, FardiffStats,
    GaussFit, JointTable, MomentReport, SignedDecomposition, StirlingFactors,
};

use crate::render::{fmt_rational, fmt_sig};

/// `x` rounded to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> Option<f64> {
    if x.is_finite() {
        fmt_sig(x, digits).parse().ok()
    } else {
        None
    }
}

#[derive(Debug, Serialize)]
pub struct DecompositionJson {
    pub top_index: usize,
    pub coeffs: Vec<u64>,
    /// Indices `i` with nonzero coefficient of `H_i`, descending.
    pub indices: Vec<usize>,
    pub summands: u64,
    pub value: String,
}

impl DecompositionJson {
    pub fn new(dec: &Decomposition, value: &BigUint) -> Self {
        DecompositionJson {
            top_index: dec.top_index(),
            coeffs: dec.coeffs().to_vec(),
            indices: dec.indices(),
            summands: zeck_core::summand_count(dec),
            value: value.to_string(),
        }
    }
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct SignedTermJson {
    pub index: usize,
    pub sign: i8,
}

pub fn signed_json(sd: &SignedDecomposition) -> Vec<SignedTermJson> {
    sd.terms
        .iter()
        .map(|t| SignedTermJson {
            index: t.index,
            sign: t.sign.as_i8(),
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct SeqJson {
    pub coeffs: Vec<u64>,
    pub terms: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ZeckJson {
    pub value: String,
    pub indices: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct DensityRowJson {
    pub k: usize,
    pub count: String,
    pub probability: String,
    pub probability_float: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct DensityJson {
    pub n: usize,
    pub normalizer: String,
    pub rows: Vec<DensityRowJson>,
}

impl DensityJson {
    pub fn new(table: &DensityTable, digits: usize) -> Self {
        DensityJson {
            n: table.n,
            normalizer: table.normalizer.to_string(),
            rows: table
                .counts
                .iter()
                .enumerate()
                .map(|(k, c)| DensityRowJson {
                    k,
                    count: c.to_string(),
                    probability: fmt_rational(&table.probability(k)),
                    probability_float: round_sig(table.probability_f64(k as i64), digits),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct JointRowJson {
    pub k: usize,
    pub l: usize,
    pub count: String,
}

#[derive(Debug, Serialize)]
pub struct JointJson {
    pub n: usize,
    pub normalizer: String,
    pub rows: Vec<JointRowJson>,
}

impl JointJson {
    pub fn new(table: &JointTable) -> Self {
        JointJson {
            n: table.n,
            normalizer: table.normalizer.to_string(),
            rows: table
                .counts
                .iter()
                .map(|(&(k, l), c)| JointRowJson {
                    k,
                    l,
                    count: c.to_string(),
                })
                .collect(),
        }
    }
}

pub fn convention_name(c: Convention) -> &'static str {
    match c {
        Convention::Forced => "forced",
        Convention::NonForced => "nonforced",
    }
}

#[derive(Debug, Serialize)]
pub struct MomentJson {
    pub n: usize,
    pub convention: &'static str,
    pub mean: String,
    pub variance: String,
    pub mean_float: Option<f64>,
    pub variance_float: Option<f64>,
    pub skewness: Option<f64>,
    pub excess_kurtosis: Option<f64>,
}

impl MomentJson {
    pub fn new(m: &MomentReport, digits: usize) -> Self {
        MomentJson {
            n: m.n,
            convention: convention_name(m.convention),
            mean: fmt_rational(&m.mean),
            variance: fmt_rational(&m.variance),
            mean_float: round_sig(m.mean_f64, digits),
            variance_float: round_sig(m.variance_f64, digits),
            skewness: m.skewness.and_then(|v| round_sig(v, digits)),
            excess_kurtosis: m.excess_kurtosis.and_then(|v| round_sig(v, digits)),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GaussRowJson {
    pub x: Option<f64>,
    pub k: i64,
    pub x_lattice: Option<f64>,
    pub scaled_density: Option<f64>,
    pub normal_pdf: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct GaussJson {
    pub n: usize,
    pub mean: Option<f64>,
    pub sigma: Option<f64>,
    pub sup_deviation: Option<f64>,
    pub rows: Vec<GaussRowJson>,
}

impl GaussJson {
    pub fn new(fit: &GaussFit, digits: usize) -> Self {
        let r = |x| round_sig(x, digits);
        GaussJson {
            n: fit.n,
            mean: r(fit.mean),
            sigma: r(fit.sigma),
            sup_deviation: r(fit.sup_deviation),
            rows: fit
                .rows
                .iter()
                .map(|row| GaussRowJson {
                    x: r(row.x),
                    k: row.k,
                    x_lattice: r(row.x_lattice),
                    scaled_density: r(row.scaled_density),
                    normal_pdf: r(row.normal_pdf),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct StirlingJson {
    pub n: u64,
    pub k: u64,
    pub n_factor: Option<f64>,
    pub s_factor: Option<f64>,
    pub log_s_factor: Option<f64>,
    pub f_value: Option<f64>,
    pub x: Option<f64>,
    pub u: Option<f64>,
    /// `p_{n+1}(k)` from the exact density.
    pub exact_probability: String,
    /// `f_value / p_{n+1}(k)`.
    pub ratio: Option<f64>,
}

impl StirlingJson {
    pub fn new(
        f: &StirlingFactors,
        k: u64,
        exact: &num_rational::BigRational,
        digits: usize,
    ) -> Self {
        let r = |x| round_sig(x, digits);
        let p = zeck_core::convert::rational_to_f64(exact);
        StirlingJson {
            n: f.n,
            k,
            n_factor: r(f.n_factor),
            s_factor: r(f.s_factor),
            log_s_factor: r(f.log_s_factor),
            f_value: r(f.f_value),
            x: r(f.x),
            u: r(f.u),
            exact_probability: fmt_rational(exact),
            ratio: r(f.f_value / p),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FardiffExactJson {
    pub mean_k: String,
    pub mean_l: String,
    pub var_k: String,
    pub var_l: String,
    pub cov_kl: String,
}

#[derive(Debug, Serialize)]
pub struct LimitGapsJson {
    pub mean_k: Option<f64>,
    pub mean_gap: Option<f64>,
    pub var_k_slope: Option<f64>,
    pub corr_kl: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct FardiffStatsJson {
    pub n: usize,
    pub source: &'static str,
    pub mean_k: Option<f64>,
    pub mean_l: Option<f64>,
    pub var_k: Option<f64>,
    pub var_l: Option<f64>,
    pub cov_kl: Option<f64>,
    pub corr_kl: Option<f64>,
    pub cov_sum_diff: Option<f64>,
    pub corr_sum_diff: Option<f64>,
    pub exact: FardiffExactJson,
    /// Observed minus limiting value of each asymptotic constant.
    pub limit_gaps: LimitGapsJson,
}

impl FardiffStatsJson {
    pub fn new(s: &FardiffStats, source: FardiffSource, digits: usize) -> Self {
        let r = |x| round_sig(x, digits);
        let FardiffLimitGaps {
            mean_k,
            mean_gap,
            var_k_slope,
            corr_kl,
        } = s.limit_gaps();
        FardiffStatsJson {
            n: s.n,
            source: match source {
                FardiffSource::Oracle => "oracle",
                FardiffSource::Formula => "formula",
            },
            mean_k: r(s.mean_k),
            mean_l: r(s.mean_l),
            var_k: r(s.var_k),
            var_l: r(s.var_l),
            cov_kl: r(s.cov_kl),
            corr_kl: r(s.corr_kl),
            cov_sum_diff: r(s.cov_sum_diff),
            corr_sum_diff: r(s.corr_sum_diff),
            exact: FardiffExactJson {
                mean_k: fmt_rational(&s.exact_mean_k),
                mean_l: fmt_rational(&s.exact_mean_l),
                var_k: fmt_rational(&s.exact_var_k),
                var_l: fmt_rational(&s.exact_var_l),
                cov_kl: fmt_rational(&s.exact_cov_kl),
            },
            limit_gaps: LimitGapsJson {
                mean_k: r(mean_k),
                mean_gap: r(mean_gap),
                var_k_slope: r(var_k_slope),
                corr_kl: r(corr_kl),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BijectionJson {
    pub coeffs: Vec<u64>,
    pub n: usize,
    pub interval_size: String,
    pub passed: bool,
    /// Values reached by zero or several legal sequences, with their
    /// multiplicity.
    pub counterexamples: Vec<(String, u64)>,
    pub out_of_range: Vec<String>,
    pub decompose_mismatches: Vec<String>,
}

impl BijectionJson {
    pub fn new(r: &BijectionReport) -> Self {
        let strs = |v: &[BigUint]| v.iter().map(|x| x.to_string()).collect();
        BijectionJson {
            coeffs: r.spec.coeffs().to_vec(),
            n: r.n,
            interval_size: r.interval_size.to_string(),
            passed: r.passed,
            counterexamples: r
                .counterexamples
                .iter()
                .map(|(v, c)| (v.to_string(), *c))
                .collect(),
            out_of_range: strs(&r.out_of_range),
            decompose_mismatches: strs(&r.decompose_mismatches),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FigureJson {
    pub n: usize,
    pub overlay_mean: Option<f64>,
    pub overlay_variance: Option<f64>,
    pub exact_mean: String,
    pub exact_variance: String,
    pub exact_mean_float: Option<f64>,
    pub exact_variance_float: Option<f64>,
}

impl FigureJson {
    pub fn new(fig: &FigureProfile, digits: usize) -> Self {
        let r = |x| round_sig(x, digits);
        FigureJson {
            n: fig.n,
            overlay_mean: r(fig.overlay_mean),
            overlay_variance: r(fig.overlay_variance),
            exact_mean: fmt_rational(&fig.moments.mean),
            exact_variance: fmt_rational(&fig.moments.variance),
            exact_mean_float: r(fig.moments.mean_f64),
            exact_variance_float: r(fig.moments.variance_f64),
        }
    }
}
