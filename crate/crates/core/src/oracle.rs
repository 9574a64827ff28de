//! Exhaustive ground truth for small parameters.
//!
//! Nothing here calls into [`crate::decompose`] to produce its answers: legal
//! sequences are generated straight from the recursive block definition and
//! signed representations from the gap rules. Agreement with the fast
//! algorithms is therefore evidence rather than a tautology.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use thiserror::Error;

use crate::decompose::{
    decompose_with, reconstruct_with, Decomposition, Sign, SignedDecomposition, SignedTerm,
};
use crate::sequences::{fib_upto, PlrsSpec, SequenceCache};

/// Default bound on the number of integers an oracle may enumerate.
pub const DEFAULT_MAX_INTERVAL: u64 = 10_000_000;
/// Default bound on the largest Fibonacci index in signed enumeration.
pub const DEFAULT_MAX_FARDIFF_INDEX: usize = 30;
/// Reports keep at most this many counterexamples.
const MAX_REPORTED: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} = {size} exceeds the enumeration limit {limit}")]
    TooLarge {
        what: &'static str,
        size: String,
        limit: u64,
    },
    #[error("value {0} has more than one signed representation")]
    DuplicateValue(i64),
}

/// Enumeration guards. They fail fast instead of exhausting memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimits {
    pub max_interval: u64,
    pub max_fardiff_index: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_interval: DEFAULT_MAX_INTERVAL,
            max_fardiff_index: DEFAULT_MAX_FARDIFF_INDEX,
        }
    }
}

/// Outcome of checking that `[H_n, H_{n+1})` is in bijection with the legal
/// sequences of top index `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub spec: PlrsSpec,
    pub n: usize,
    /// `H_{n+1} - H_n`.
    pub interval_size: BigUint,
    pub passed: bool,
    /// `(N, number of legal sequences with value N)` whenever that number is
    /// not exactly one.
    pub counterexamples: Vec<(BigUint, u64)>,
    /// Values of generated sequences that fall outside the interval.
    pub out_of_range: Vec<BigUint>,
    /// `N` whose greedy decomposition is not a legal sequence of top index
    /// `n` summing to `N`.
    pub decompose_mismatches: Vec<BigUint>,
}

/// `(H_n, H_{n+1})` as `u128`, guarded.
fn interval_bounds(
    cache: &mut SequenceCache,
    n: usize,
    limits: &EnumLimits,
) -> Result<(u128, u128), OracleError> {
    let lo = cache.term(n).clone();
    let hi = cache.term(n + 1).clone();
    let size = &hi - &lo;
    let too_large = || OracleError::TooLarge {
        what: "interval size",
        size: alloc::format!("{size}"),
        limit: limits.max_interval,
    };
    if size > BigUint::from(limits.max_interval) {
        return Err(too_large());
    }
    match (u128::try_from(&lo), u128::try_from(&hi)) {
        (Ok(lo), Ok(hi)) => Ok((lo, hi)),
        _ => Err(too_large()),
    }
}

struct LegalGenerator<'a> {
    c: &'a [u64],
    /// `H_1..H_n` as `u128`, zero-based.
    h: Vec<u128>,
    digits: Vec<u64>,
    budget: u64,
}

impl LegalGenerator<'_> {
    /// Every legal sequence of length `remaining` appended to `digits`.
    ///
    /// Per the recursive definition, a non-empty legal sequence starts with a
    /// positive digit and is either a proper prefix of `c_1..c_{len}` (when
    /// shorter than `L`) or a block `c_1..c_{s-1}, a_s` with `a_s < c_s`,
    /// followed by zeros, followed by a legal tail.
    fn fill(&mut self, remaining: usize, visit: &mut dyn FnMut(&[u64], u128)) -> bool {
        if remaining == 0 {
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            let m = self.digits.len();
            let value = self
                .digits
                .iter()
                .enumerate()
                .map(|(i, &a)| a as u128 * self.h[m - 1 - i])
                .sum();
            visit(&self.digits, value);
            return true;
        }
        let depth = self.c.len();
        let mark = self.digits.len();
        if remaining < depth {
            self.digits.extend_from_slice(&self.c[..remaining]);
            let ok = self.fill(0, visit);
            self.digits.truncate(mark);
            if !ok {
                return false;
            }
        }
        for s in 1..=depth.min(remaining) {
            for a in 0..self.c[s - 1] {
                if s == 1 && a == 0 {
                    continue;
                }
                self.digits.extend_from_slice(&self.c[..s - 1]);
                self.digits.push(a);
                let rest = remaining - s;
                for zeros in 0..=rest {
                    let block_end = self.digits.len();
                    self.digits.resize(block_end + zeros, 0);
                    let ok = self.fill(rest - zeros, visit);
                    self.digits.truncate(block_end);
                    if !ok {
                        self.digits.truncate(mark);
                        return false;
                    }
                }
                self.digits.truncate(mark);
            }
        }
        true
    }
}

/// Calls `visit(coeffs, value)` for every legal sequence with top index
/// exactly `n`.
pub fn for_each_legal(
    spec: &PlrsSpec,
    n: usize,
    limits: &EnumLimits,
    mut visit: impl FnMut(&[u64], u128),
) -> Result<(), OracleError> {
    let mut cache = SequenceCache::new(spec.clone());
    interval_bounds(&mut cache, n, limits)?;
    let h = cache.terms()[..n]
        .iter()
        .map(|t| u128::try_from(t).expect("bounded by H_{n+1}"))
        .collect();
    // overgeneration would mean the definition is being misread; stop early
    let budget = limits.max_interval.saturating_mul(2);
    let mut gen = LegalGenerator {
        c: spec.coeffs(),
        h,
        digits: Vec::with_capacity(n),
        budget,
    };
    if gen.fill(n, &mut visit) {
        Ok(())
    } else {
        Err(OracleError::TooLarge {
            what: "generated sequences",
            size: alloc::format!(">{budget}"),
            limit: limits.max_interval,
        })
    }
}

/// All legal decompositions with top index `n`, sorted by value.
pub fn enumerate_legal(spec: &PlrsSpec, n: usize) -> Result<Vec<Decomposition>, OracleError> {
    enumerate_legal_with(spec, n, &EnumLimits::default())
}

pub fn enumerate_legal_with(
    spec: &PlrsSpec,
    n: usize,
    limits: &EnumLimits,
) -> Result<Vec<Decomposition>, OracleError> {
    let mut out = Vec::new();
    for_each_legal(spec, n, limits, |coeffs, value| {
        out.push((value, Decomposition::from_coeffs(coeffs.to_vec())));
    })?;
    out.sort();
    Ok(out.into_iter().map(|(_, d)| d).collect())
}

/// Legality decided by searching the recursive definition directly (every
/// split point `s` and zero-run length), independent of the automaton used
/// by [`crate::decompose::is_legal`].
pub fn legal_by_definition(spec: &PlrsSpec, coeffs: &[u64]) -> bool {
    fn legal(c: &[u64], a: &[u64]) -> bool {
        let Some(&first) = a.first() else {
            return true;
        };
        if first == 0 {
            return false;
        }
        let depth = c.len();
        if a.len() < depth && a == &c[..a.len()] {
            return true;
        }
        (1..=depth.min(a.len())).any(|s| {
            a[..s - 1] == c[..s - 1]
                && a[s - 1] < c[s - 1]
                && (0..=a.len() - s).any(|zeros| {
                    a[s..s + zeros].iter().all(|&d| d == 0) && legal(c, &a[s + zeros..])
                })
        })
    }
    legal(spec.coeffs(), coeffs)
}

/// Checks existence and uniqueness of legal decompositions on
/// `[H_n, H_{n+1})` and that the greedy decomposition finds them.
pub fn verify_bijection(spec: &PlrsSpec, n: usize) -> Result<BijectionReport, OracleError> {
    verify_bijection_with(spec, n, &EnumLimits::default())
}

pub fn verify_bijection_with(
    spec: &PlrsSpec,
    n: usize,
    limits: &EnumLimits,
) -> Result<BijectionReport, OracleError> {
    let mut cache = SequenceCache::new(spec.clone());
    let (lo, hi) = interval_bounds(&mut cache, n, limits)?;
    let size = (hi - lo) as usize;
    let mut counts = vec![0u32; size];
    let mut out_of_range = Vec::new();
    for_each_legal(spec, n, limits, |_, value| {
        if (lo..hi).contains(&value) {
            counts[(value - lo) as usize] += 1;
        } else if out_of_range.len() < MAX_REPORTED {
            out_of_range.push(BigUint::from(value));
        }
    })?;

    let mut counterexamples = Vec::new();
    let mut decompose_mismatches = Vec::new();
    for (offset, &count) in counts.iter().enumerate() {
        let value = BigUint::from(lo + offset as u128);
        if count != 1 && counterexamples.len() < MAX_REPORTED {
            counterexamples.push((value.clone(), count as u64));
        }
        let agrees = decompose_with(&mut cache, &value).is_ok_and(|d| {
            d.top_index() == n
                && legal_by_definition(spec, d.coeffs())
                && reconstruct_with(&mut cache, &d) == value
        });
        if !agrees && decompose_mismatches.len() < MAX_REPORTED {
            decompose_mismatches.push(value);
        }
    }
    let passed =
        counterexamples.is_empty() && out_of_range.is_empty() && decompose_mismatches.is_empty();
    Ok(BijectionReport {
        spec: spec.clone(),
        n,
        interval_size: BigUint::from(hi - lo),
        passed,
        counterexamples,
        out_of_range,
        decompose_mismatches,
    })
}

/// Histogram of summand counts over `[H_n, H_{n+1})`.
pub fn empirical_density(spec: &PlrsSpec, n: usize) -> Result<BTreeMap<u64, u64>, OracleError> {
    empirical_density_with(spec, n, &EnumLimits::default())
}

pub fn empirical_density_with(
    spec: &PlrsSpec,
    n: usize,
    limits: &EnumLimits,
) -> Result<BTreeMap<u64, u64>, OracleError> {
    let mut hist = BTreeMap::new();
    for_each_legal(spec, n, limits, |coeffs, _| {
        *hist.entry(coeffs.iter().sum()).or_insert(0) += 1;
    })?;
    Ok(hist)
}

/// Walks every valid signed sequence whose leading term is `+F_lead`.
fn for_each_signed(lead: usize, fibs: &[i64], visit: &mut dyn FnMut(&[SignedTerm], i64)) {
    fn walk(
        terms: &mut Vec<SignedTerm>,
        value: i64,
        fibs: &[i64],
        visit: &mut dyn FnMut(&[SignedTerm], i64),
    ) {
        visit(terms, value);
        let last = *terms.last().expect("non-empty");
        for next in (1..last.index).rev() {
            let gap = last.index - next;
            for sign in [Sign::Plus, Sign::Minus] {
                let need = if sign == last.sign { 4 } else { 3 };
                if gap < need {
                    continue;
                }
                let f = fibs[next];
                let v = match sign {
                    Sign::Plus => value + f,
                    Sign::Minus => value - f,
                };
                terms.push(SignedTerm { index: next, sign });
                walk(terms, v, fibs, visit);
                terms.pop();
            }
        }
    }
    let mut terms = vec![SignedTerm {
        index: lead,
        sign: Sign::Plus,
    }];
    walk(&mut terms, fibs[lead], fibs, visit);
}

fn small_fibs(max_index: usize) -> Vec<i64> {
    fib_upto(max_index)
        .iter()
        .map(|f| i64::try_from(f).expect("guarded index"))
        .collect()
}

fn check_fardiff_index(n: usize, limits: &EnumLimits) -> Result<(), OracleError> {
    if n > limits.max_fardiff_index {
        return Err(OracleError::TooLarge {
            what: "max index",
            size: alloc::format!("{n}"),
            limit: limits.max_fardiff_index as u64,
        });
    }
    Ok(())
}

/// Every valid signed representation with indices at most `max_index`,
/// keyed by value. Two representations of one value is an error.
pub fn enumerate_fardiff(
    max_index: usize,
) -> Result<BTreeMap<i64, SignedDecomposition>, OracleError> {
    enumerate_fardiff_with(max_index, &EnumLimits::default())
}

pub fn enumerate_fardiff_with(
    max_index: usize,
    limits: &EnumLimits,
) -> Result<BTreeMap<i64, SignedDecomposition>, OracleError> {
    check_fardiff_index(max_index, limits)?;
    let fibs = small_fibs(max_index);
    let mut out = BTreeMap::new();
    out.insert(0, SignedDecomposition::default());
    let mut duplicate = None;
    for lead in 1..=max_index {
        for_each_signed(lead, &fibs, &mut |terms, value| {
            if out
                .insert(value, SignedDecomposition::new(terms.to_vec()))
                .is_some()
            {
                duplicate.get_or_insert(value);
            }
        });
    }
    match duplicate {
        Some(v) => Err(OracleError::DuplicateValue(v)),
        None => Ok(out),
    }
}

/// Histogram of (positive count, negative count) over the far-difference
/// representations with leading term `+F_n`, i.e. over `(S_{n-1}, S_n]`.
pub fn empirical_joint(n: usize) -> Result<BTreeMap<(usize, usize), u64>, OracleError> {
    empirical_joint_with(n, &EnumLimits::default())
}

pub fn empirical_joint_with(
    n: usize,
    limits: &EnumLimits,
) -> Result<BTreeMap<(usize, usize), u64>, OracleError> {
    check_fardiff_index(n, limits)?;
    let mut hist = BTreeMap::new();
    if n == 0 {
        return Ok(hist);
    }
    let fibs = small_fibs(n);
    for_each_signed(n, &fibs, &mut |terms, _| {
        let pos = terms.iter().filter(|t| t.sign == Sign::Plus).count();
        *hist.entry((pos, terms.len() - pos)).or_insert(0) += 1;
    });
    Ok(hist)
}
