//! The oracle matrix run by `zeck verify --all`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use zeck_core::oracle::{
    empirical_density_with, empirical_joint_with, enumerate_fardiff_with, verify_bijection_with,
};
use zeck_core::{
    joint_table, terms, zeck_density, EnumLimits, OracleError, PlrsSpec,
};

/// Specs exercised by the bijection sweep.
pub const SPEC_MATRIX: [&[u64]; 6] = [&[1, 1], &[2, 3, 1], &[2], &[3], &[10], &[1, 0, 1]];

/// Largest interval `H_{n+1} - H_n` the default sweep enumerates.
pub const SWEEP_INTERVAL: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: String, passed: bool, detail: String) -> Self {
        CheckOutcome {
            name,
            passed,
            detail,
        }
    }

    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("{tag} {}: {}", self.name, self.detail)
    }
}

/// Every `n` whose interval `[H_n, H_{n+1})` has at most `max_interval`
/// elements.
pub fn sweep_indices(spec: &PlrsSpec, max_interval: u64) -> Vec<usize> {
    let bound = BigUint::from(max_interval);
    let mut cache = terms(spec, 2);
    let mut out = Vec::new();
    let mut n = 1;
    loop {
        let width = cache.term(n + 1).clone() - cache.term(n).clone();
        if width > bound {
            return out;
        }
        out.push(n);
        n += 1;
    }
}

pub fn bijection_sweep(
    spec: &PlrsSpec,
    max_interval: u64,
    limits: &EnumLimits,
) -> Result<CheckOutcome, OracleError> {
    let ns = sweep_indices(spec, max_interval);
    let mut failed = Vec::new();
    let mut covered = BigUint::from(0u32);
    for &n in &ns {
        let report = verify_bijection_with(spec, n, limits)?;
        covered += &report.interval_size;
        if !report.passed {
            failed.push(n);
        }
    }
    let detail = if failed.is_empty() {
        format!(
            "n = 1..={} ({} integers)",
            ns.last().copied().unwrap_or(0),
            covered
        )
    } else {
        format!("failed at n = {failed:?}")
    };
    Ok(CheckOutcome::new(
        format!("bijection [{spec}]"),
        failed.is_empty(),
        detail,
    ))
}

/// Binomial density against enumeration, `1 <= n <= max_n`.
pub fn density_check(max_n: usize, limits: &EnumLimits) -> Result<CheckOutcome, OracleError> {
    let fib = PlrsSpec::fibonacci();
    let mut bad = Vec::new();
    for n in 1..=max_n {
        let table = zeck_density(n);
        let empirical = empirical_density_with(&fib, n, limits)?;
        let formula: BTreeMap<u64, u64> = table
            .counts
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != BigUint::from(0u32))
            .map(|(k, c)| ((k + 1) as u64, u64::try_from(c).expect("small count")))
            .collect();
        if formula != empirical {
            bad.push(n);
        }
    }
    Ok(CheckOutcome::new(
        "density formula".into(),
        bad.is_empty(),
        if bad.is_empty() {
            format!("n = 1..={max_n}")
        } else {
            format!("mismatch at n = {bad:?}")
        },
    ))
}

/// Joint far-difference formula against enumeration, `1 <= n <= max_n`.
pub fn joint_check(max_n: usize, limits: &EnumLimits) -> Result<CheckOutcome, OracleError> {
    let mut bad = Vec::new();
    for n in 1..=max_n {
        let formula: BTreeMap<(usize, usize), BigUint> = joint_table(n)
            .counts
            .into_iter()
            .filter(|(_, c)| *c != BigUint::from(0u32))
            .collect();
        let empirical: BTreeMap<(usize, usize), BigUint> = empirical_joint_with(n, limits)?
            .into_iter()
            .map(|(key, c)| (key, BigUint::from(c)))
            .collect();
        if formula != empirical {
            bad.push(n);
        }
    }
    Ok(CheckOutcome::new(
        "joint formula".into(),
        bad.is_empty(),
        if bad.is_empty() {
            format!("n = 1..={max_n}")
        } else {
            format!("mismatch at n = {bad:?}")
        },
    ))
}

/// Signed representations with indices up to `max_index` cover
/// `[0, S_max_index]` exactly once and agree with the greedy algorithm.
pub fn fardiff_coverage(max_index: usize, limits: &EnumLimits) -> Result<CheckOutcome, OracleError> {
    let all = enumerate_fardiff_with(max_index, limits)?;
    let top = zeck_core::fardiff_s(max_index as i64);
    let top = i64::try_from(&top).expect("threshold fits i64");
    let contiguous = all.len() as i64 == top + 1
        && all.keys().next() == Some(&0)
        && all.keys().next_back() == Some(&top);
    let mut greedy_mismatch = None;
    for (&v, sd) in &all {
        if v == 0 {
            continue;
        }
        let g = zeck_core::fardiff(&BigInt::from(v)).expect("nonnegative");
        if &g != sd {
            greedy_mismatch = Some(v);
            break;
        }
    }
    let passed = contiguous && greedy_mismatch.is_none();
    let detail = match (contiguous, greedy_mismatch) {
        (false, _) => format!("values do not cover [0, {top}] exactly once"),
        (true, Some(v)) => format!("greedy disagrees at {v}"),
        (true, None) => format!("[0, {top}] covered uniquely"),
    };
    Ok(CheckOutcome::new(
        format!("far-difference n <= {max_index}"),
        passed,
        detail,
    ))
}

/// The full matrix, in a fixed order.
pub fn run_all(limits: &EnumLimits) -> Result<Vec<CheckOutcome>, OracleError> {
    let sweep = SWEEP_INTERVAL.min(limits.max_interval);
    let mut out = Vec::new();
    for coeffs in SPEC_MATRIX {
        let spec = PlrsSpec::new(coeffs.to_vec()).expect("valid matrix spec");
        out.push(bijection_sweep(&spec, sweep, limits)?);
    }
    out.push(density_check(25, limits)?);
    out.push(joint_check(20, limits)?);
    out.push(fardiff_coverage(25.min(limits.max_fardiff_index), limits)?);
    Ok(out)
}
