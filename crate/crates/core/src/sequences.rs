//! Positive linear recurrence sequences, Fibonacci numbers and the
//! far-difference thresholds `S_n`.
//!
//! Indexing follows the numeration-system convention: `H_1 = 1` and, for the
//! Fibonacci case, `F_1 = 1, F_2 = 2, F_3 = 3, F_4 = 5`. We additionally set
//! `F_0 = 1`, the size of `[F_1, F_2)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("coefficient list is empty")]
    EmptyCoeffs,
    #[error("leading coefficient c_1 must be positive")]
    LeadingCoeffZero,
    #[error("trailing coefficient c_L must be positive")]
    TrailingCoeffZero,
    #[error("coefficient c_{index} = {value} is negative")]
    NegativeCoeff { index: usize, value: i64 },
    #[error("coefficients [1] give the constant sequence 1, 1, 1, ...")]
    ConstantSequence,
}

/// Depth `L` and coefficients `c_1..c_L` of
/// `H_{n+1} = c_1 H_n + ... + c_L H_{n+1-L}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlrsSpec {
    coeffs: Vec<u64>,
}

impl PlrsSpec {
    pub fn new(coeffs: Vec<u64>) -> Result<Self, SpecError> {
        match (coeffs.first(), coeffs.last()) {
            (None, _) | (_, None) => Err(SpecError::EmptyCoeffs),
            (Some(0), _) => Err(SpecError::LeadingCoeffZero),
            (_, Some(0)) => Err(SpecError::TrailingCoeffZero),
            _ if coeffs == [1] => Err(SpecError::ConstantSequence),
            _ => Ok(PlrsSpec { coeffs }),
        }
    }

    /// `F_{n+1} = F_n + F_{n-1}`.
    pub fn fibonacci() -> Self {
        PlrsSpec { coeffs: vec![1, 1] }
    }

    /// Base-`b` digits: `L = 1`, `c_1 = b`, `H_n = b^{n-1}`.
    pub fn base(b: u64) -> Result<Self, SpecError> {
        Self::new(vec![b])
    }

    pub fn depth(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `c_i` with one-based `i`.
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs[i - 1]
    }

    pub fn is_fibonacci(&self) -> bool {
        self.coeffs == [1, 1]
    }
}

impl fmt::Display for PlrsSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Validates a signed coefficient list.
pub fn make_plrs(coeffs: &[i64]) -> Result<PlrsSpec, SpecError> {
    if coeffs.is_empty() {
        return Err(SpecError::EmptyCoeffs);
    }
    let mut out = Vec::with_capacity(coeffs.len());
    for (i, &c) in coeffs.iter().enumerate() {
        if c < 0 {
            return Err(SpecError::NegativeCoeff {
                index: i + 1,
                value: c,
            });
        }
        out.push(c as u64);
    }
    PlrsSpec::new(out)
}

/// The prefix `H_1..H_m` of a PLRS, extended on demand.
///
/// Extension needs `&mut self`, so shared readers never see a half-written
/// term.
#[derive(Debug, Clone)]
pub struct SequenceCache {
    spec: PlrsSpec,
    terms: Vec<BigUint>,
}

impl SequenceCache {
    pub fn new(spec: PlrsSpec) -> Self {
        SequenceCache {
            spec,
            terms: vec![BigUint::one()],
        }
    }

    pub fn spec(&self) -> &PlrsSpec {
        &self.spec
    }

    /// Number of cached terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `H_1..H_len`, zero-based.
    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }

    /// `H_n` if already cached.
    pub fn get(&self, n: usize) -> Option<&BigUint> {
        n.checked_sub(1).and_then(|i| self.terms.get(i))
    }

    /// `H_n`, extending the cache as needed. Panics for `n == 0`.
    pub fn term(&mut self, n: usize) -> &BigUint {
        assert!(n >= 1, "PLRS terms are indexed from 1");
        self.extend_to(n);
        &self.terms[n - 1]
    }

    pub fn extend_to(&mut self, m: usize) {
        while self.terms.len() < m {
            let next = self.next_term();
            self.terms.push(next);
        }
    }

    /// Extends until the last cached term exceeds `value`.
    pub fn extend_past(&mut self, value: &BigUint) {
        while self.terms.last().is_some_and(|t| t <= value) {
            let next = self.next_term();
            self.terms.push(next);
        }
    }

    /// The `m` with `H_m <= value < H_{m+1}`; `None` for zero.
    pub fn top_index(&mut self, value: &BigUint) -> Option<usize> {
        if value.is_zero() {
            return None;
        }
        self.extend_past(value);
        // the last term exceeds value and H_1 = 1 <= value
        Some(self.terms.partition_point(|t| t <= value))
    }

    fn next_term(&self) -> BigUint {
        // computing H_{n+1} from H_1..H_n
        let n = self.terms.len();
        let depth = self.spec.depth();
        let mut acc = BigUint::zero();
        for i in 1..=n.min(depth) {
            let c = self.spec.coeff(i);
            if c != 0 {
                acc += &self.terms[n - i] * c;
            }
        }
        if n < depth {
            acc += 1u32;
        }
        acc
    }
}

/// `H_1..H_m` for `spec`.
pub fn terms(spec: &PlrsSpec, m: usize) -> SequenceCache {
    let mut cache = SequenceCache::new(spec.clone());
    cache.extend_to(m.max(1));
    cache
}

/// `F_n` with `F_0 = 1, F_1 = 1, F_2 = 2`.
pub fn fib(n: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    for _ in 0..n {
        let next = &a + &b;
        a = core::mem::replace(&mut b, next);
    }
    // after n steps a holds F_n in the shifted indexing (F_0 = F_1 = 1)
    a
}

/// `F_0..=F_m`.
pub fn fib_upto(m: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(m + 1);
    out.push(BigUint::one());
    if m >= 1 {
        out.push(BigUint::one());
    }
    for i in 2..=m {
        let next = &out[i - 1] + &out[i - 2];
        out.push(next);
    }
    out
}

/// Binet's formula in `f64`:
/// `(phi/sqrt5) phi^n - ((1-phi)/sqrt5) (1-phi)^n`.
///
/// Beyond `n ~ 1470` the first power overflows and the result is
/// `+inf`.
pub fn binet_estimate(n: u32) -> f64 {
    // phi^(n+1) carried as an unevaluated sum hi + lo; plain pow drifts by an
    // ulp before n = 70
    let r5 = {
        let hi = libm::sqrt(5.0);
        Dd { hi, lo: libm::fma(-hi, hi, 5.0) / (2.0 * hi) }
    };
    let phi = Dd { hi: (1.0 + r5.hi) / 2.0, lo: r5.lo / 2.0 };
    let mut acc = Dd { hi: 1.0, lo: 0.0 };
    let mut base = phi;
    let mut e = n + 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(base);
        }
        base = base.mul(base);
        e >>= 1;
    }
    if !acc.hi.is_finite() {
        return f64::INFINITY;
    }
    let q = acc.hi / r5.hi;
    let rem = libm::fma(-q, r5.hi, acc.hi) + acc.lo - q * r5.lo;
    let psi = 1.0 - (1.0 + libm::sqrt(5.0)) / 2.0;
    q + rem / r5.hi - libm::pow(psi, (n + 1) as f64) / r5.hi
}

#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let err = libm::fma(self.hi, o.hi, -p) + self.hi * o.lo + self.lo * o.hi;
        let hi = p + err;
        Dd { hi, lo: err - (hi - p) }
    }
}

/// `S_n = F_n + F_{n-4} + F_{n-8} + ...` for `n > 0`, zero otherwise.
pub fn fardiff_s(n: i64) -> BigUint {
    if n <= 0 {
        return BigUint::zero();
    }
    let fibs = fib_upto(n as usize);
    let mut acc = BigUint::zero();
    let mut i = n;
    while i > 0 {
        acc += &fibs[i as usize];
        i -= 4;
    }
    acc
}

/// Cached `S_1..S_m` alongside `F_0..F_m`.
#[derive(Debug, Clone)]
pub struct FardiffThresholds {
    fibs: Vec<BigUint>,
    values: Vec<BigUint>,
}

impl Default for FardiffThresholds {
    fn default() -> Self {
        Self::new()
    }
}

impl FardiffThresholds {
    pub fn new() -> Self {
        FardiffThresholds {
            fibs: vec![BigUint::one()],
            values: Vec::new(),
        }
    }

    pub fn with_len(m: usize) -> Self {
        let mut t = Self::new();
        t.extend_to(m);
        t
    }

    /// `S_1..S_len`, zero-based.
    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn extend_to(&mut self, m: usize) {
        while self.values.len() < m {
            let n = self.values.len() + 1;
            let f = self.fib_at(n);
            let s = if n > 4 {
                f + &self.values[n - 5]
            } else {
                f
            };
            self.values.push(s);
        }
    }

    /// `S_n`; zero for `n <= 0`.
    pub fn get(&mut self, n: i64) -> BigUint {
        if n <= 0 {
            return BigUint::zero();
        }
        self.extend_to(n as usize);
        self.values[n as usize - 1].clone()
    }

    /// `F_n` from the shared table.
    pub fn fib(&mut self, n: usize) -> &BigUint {
        self.fib_at(n);
        &self.fibs[n]
    }

    /// The `n` with `S_{n-1} < value <= S_n`; `None` for zero.
    pub fn leading_index(&mut self, value: &BigUint) -> Option<usize> {
        if value.is_zero() {
            return None;
        }
        while self.values.last().is_none_or(|s| s < value) {
            let m = self.values.len() + 1;
            self.extend_to(m);
        }
        Some(self.values.partition_point(|s| s < value) + 1)
    }

    fn fib_at(&mut self, n: usize) -> BigUint {
        while self.fibs.len() <= n {
            let len = self.fibs.len();
            let next = if len == 1 {
                BigUint::one()
            } else {
                &self.fibs[len - 1] + &self.fibs[len - 2]
            };
            self.fibs.push(next);
        }
        self.fibs[n].clone()
    }
}
