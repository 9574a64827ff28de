//! Legal PLRS decompositions, Zeckendorf sums and far-difference
//! representations.
//!
//! Coefficients are stored most-significant first: `coeffs[0]` multiplies
//! `H_m` and `coeffs[m-1]` multiplies `H_1`, so the block rule on prefixes
//! reads directly off the vector.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::sequences::{fib_upto, FardiffThresholds, PlrsSpec, SequenceCache};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("input must be a positive integer")]
    NonPositiveInput,
    #[error("input must be non-negative")]
    NegativeInput,
    #[error("greedy construction left a non-zero remainder for {0}")]
    Unrepresentable(BigUint),
}

/// A decomposition `sum_i a_i H_{m+1-i}` with top index `m = coeffs.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    coeffs: Vec<u64>,
}

impl Decomposition {
    /// Wraps raw coefficients; no legality check.
    pub fn from_coeffs(coeffs: Vec<u64>) -> Self {
        Decomposition { coeffs }
    }

    pub fn top_index(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// Indices `j` of the terms `H_j` carrying a non-zero coefficient,
    /// descending.
    pub fn indices(&self) -> Vec<usize> {
        let m = self.coeffs.len();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, _)| m - i)
            .collect()
    }
}

/// The legality rule as a finite automaton over digits.
///
/// State `j` means the current block has matched `c_1..c_j`. A digit equal
/// to `c_{j+1}` extends the match; a smaller one closes the block (and zero
/// runs keep the state at 0). Matching all of `c_1..c_L` is never allowed.
#[derive(Clone, Copy)]
struct BlockAutomaton<'a> {
    coeffs: &'a [u64],
}

impl<'a> BlockAutomaton<'a> {
    fn new(spec: &'a PlrsSpec) -> Self {
        BlockAutomaton {
            coeffs: spec.coeffs(),
        }
    }

    fn max_digit(&self, state: usize) -> u64 {
        let c = self.coeffs[state];
        if state + 1 == self.coeffs.len() {
            c - 1
        } else {
            c
        }
    }

    fn step(&self, state: usize, digit: u64) -> Option<usize> {
        if digit > self.max_digit(state) {
            None
        } else if digit == self.coeffs[state] {
            Some(state + 1)
        } else {
            Some(0)
        }
    }
}

/// Whether `coeffs` (most-significant first) is a legal decomposition.
///
/// The empty sequence is legal; otherwise the leading coefficient must be
/// positive.
pub fn is_legal(spec: &PlrsSpec, coeffs: &[u64]) -> bool {
    match coeffs.first() {
        None => return true,
        Some(0) => return false,
        Some(_) => {}
    }
    let automaton = BlockAutomaton::new(spec);
    let mut state = 0;
    for &d in coeffs {
        match automaton.step(state, d) {
            Some(next) => state = next,
            None => return false,
        }
    }
    true
}

/// The unique legal decomposition of `n >= 1`.
pub fn decompose(spec: &PlrsSpec, n: &BigUint) -> Result<Decomposition, DecomposeError> {
    let mut cache = SequenceCache::new(spec.clone());
    decompose_with(&mut cache, n)
}

/// [`decompose`] reusing a term cache.
pub fn decompose_with(
    cache: &mut SequenceCache,
    n: &BigUint,
) -> Result<Decomposition, DecomposeError> {
    let m = cache
        .top_index(n)
        .ok_or(DecomposeError::NonPositiveInput)?;
    let automaton = BlockAutomaton::new(cache.spec());
    let terms = cache.terms();
    let mut rem = n.clone();
    let mut state = 0;
    let mut coeffs = Vec::with_capacity(m);
    for idx in (1..=m).rev() {
        let h = &terms[idx - 1];
        let max = automaton.max_digit(state);
        let digit = if rem < *h {
            0
        } else if max <= 16 {
            let mut d = 0;
            while d < max && rem >= *h {
                rem -= h;
                d += 1;
            }
            d
        } else {
            let q = &rem / h;
            let d = u64::try_from(&q).map_or(max, |q| q.min(max));
            rem -= h * d;
            d
        };
        state = automaton
            .step(state, digit)
            .expect("greedy digit never exceeds the automaton bound");
        coeffs.push(digit);
    }
    if !rem.is_zero() {
        return Err(DecomposeError::Unrepresentable(n.clone()));
    }
    Ok(Decomposition { coeffs })
}

/// `sum_i a_i H_{m+1-i}`.
pub fn reconstruct(spec: &PlrsSpec, dec: &Decomposition) -> BigUint {
    let mut cache = SequenceCache::new(spec.clone());
    reconstruct_with(&mut cache, dec)
}

pub fn reconstruct_with(cache: &mut SequenceCache, dec: &Decomposition) -> BigUint {
    let m = dec.top_index();
    if m == 0 {
        return BigUint::zero();
    }
    cache.extend_to(m);
    let terms = cache.terms();
    dec.coeffs
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .fold(BigUint::zero(), |acc, (i, &a)| acc + &terms[m - 1 - i] * a)
}

/// `a_1 + ... + a_m`.
pub fn summand_count(dec: &Decomposition) -> u64 {
    dec.coeffs.iter().sum()
}

/// Indices of the Zeckendorf decomposition of `n`, descending.
pub fn zeckendorf(n: &BigUint) -> Result<Vec<usize>, DecomposeError> {
    if n.is_zero() {
        return Err(DecomposeError::NonPositiveInput);
    }
    let mut fibs = fib_upto(2);
    while fibs.last().is_some_and(|f| f <= n) {
        let len = fibs.len();
        let next = &fibs[len - 1] + &fibs[len - 2];
        fibs.push(next);
    }
    let mut rem = n.clone();
    let mut out = Vec::new();
    let mut i = fibs.len() - 1;
    while !rem.is_zero() {
        while fibs[i] > rem {
            i -= 1;
        }
        rem -= &fibs[i];
        out.push(i);
        // the next summand cannot be adjacent
        i = i.saturating_sub(2).max(1);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedTerm {
    pub index: usize,
    pub sign: Sign,
}

/// `±F_{i_1} ± F_{i_2} ...` with strictly decreasing indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedDecomposition {
    pub terms: Vec<SignedTerm>,
}

impl SignedDecomposition {
    pub fn new(terms: Vec<SignedTerm>) -> Self {
        SignedDecomposition { terms }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of `+F_i` terms.
    pub fn positive_count(&self) -> usize {
        self.terms.iter().filter(|t| t.sign == Sign::Plus).count()
    }

    /// Number of `-F_i` terms.
    pub fn negative_count(&self) -> usize {
        self.terms.iter().filter(|t| t.sign == Sign::Minus).count()
    }

    pub fn value(&self) -> BigInt {
        let top = self.terms.iter().map(|t| t.index).max().unwrap_or(0);
        let fibs = fib_upto(top);
        self.terms.iter().fold(BigInt::zero(), |acc, t| {
            let f = BigInt::from(fibs[t.index].clone());
            match t.sign {
                Sign::Plus => acc + f,
                Sign::Minus => acc - f,
            }
        })
    }
}

impl fmt::Display for SignedDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let s = match t.sign {
                Sign::Plus => '+',
                Sign::Minus => '-',
            };
            write!(f, "{s}F{}", t.index)?;
        }
        Ok(())
    }
}

/// The far-difference representation of `n >= 0`.
pub fn fardiff(n: &BigInt) -> Result<SignedDecomposition, DecomposeError> {
    if n.is_negative() {
        return Err(DecomposeError::NegativeInput);
    }
    let mut thresholds = FardiffThresholds::new();
    Ok(fardiff_with(&mut thresholds, n.magnitude()))
}

/// [`fardiff`] for a non-negative value, reusing a threshold cache.
///
/// The leading term of any value in `(S_{n-1}, S_n]` is `+F_n`; the
/// remainder is represented recursively with signs flipped when it is
/// negative.
pub fn fardiff_with(thresholds: &mut FardiffThresholds, n: &BigUint) -> SignedDecomposition {
    let mut terms = Vec::new();
    let mut rem = BigInt::from(n.clone());
    let mut orientation = Sign::Plus;
    while !rem.is_zero() {
        if rem.is_negative() {
            rem = -rem;
            orientation = orientation.flip();
        }
        let idx = thresholds
            .leading_index(rem.magnitude())
            .expect("remainder is positive");
        terms.push(SignedTerm {
            index: idx,
            sign: orientation,
        });
        rem -= BigInt::from_biguint(BigSign::Plus, thresholds.fib(idx).clone());
    }
    SignedDecomposition { terms }
}

/// Whether `sd` obeys the far-difference gap rules: indices strictly
/// decreasing and positive, leading sign `+`, same-sign neighbours at least 4
/// apart, opposite-sign neighbours at least 3 apart.
pub fn fardiff_valid(sd: &SignedDecomposition) -> bool {
    let Some(first) = sd.terms.first() else {
        return true;
    };
    if first.sign != Sign::Plus {
        return false;
    }
    if sd.terms.iter().any(|t| t.index == 0) {
        return false;
    }
    sd.terms.windows(2).all(|w| {
        let gap = w[0].index.checked_sub(w[1].index).unwrap_or(0);
        let need = if w[0].sign == w[1].sign { 4 } else { 3 };
        gap >= need
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{fardiff_s, make_plrs};
    use alloc::vec;
    use proptest::prelude::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn spec(c: &[i64]) -> PlrsSpec {
        make_plrs(c).unwrap()
    }

    fn signed(terms: &[(usize, i8)]) -> SignedDecomposition {
        SignedDecomposition::new(
            terms
                .iter()
                .map(|&(index, s)| SignedTerm {
                    index,
                    sign: if s > 0 { Sign::Plus } else { Sign::Minus },
                })
                .collect(),
        )
    }

    #[test]
    fn legality_examples() {
        let s = spec(&[2, 3, 1]);
        assert!(is_legal(&s, &[1, 2, 3, 0, 1]));
        assert!(!is_legal(&s, &[1, 2, 3, 1, 0]));
        assert!(!is_legal(&s, &[7, 0, 0, 0, 2]));
        assert!(is_legal(&s, &[]));
        assert!(!is_legal(&s, &[0, 1]));
        // a trailing partial match of c is legal
        assert!(is_legal(&s, &[1, 2, 3]));
        assert!(is_legal(&s, &[2, 3]));
    }

    #[test]
    fn fibonacci_legality_is_non_adjacency() {
        let s = PlrsSpec::fibonacci();
        assert!(is_legal(&s, &[1, 0, 1, 0, 1]));
        assert!(!is_legal(&s, &[1, 1, 0]));
        assert!(!is_legal(&s, &[1, 0, 2]));
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&PlrsSpec::fibonacci(), &big(100)).unwrap();
        assert_eq!(d.indices(), vec![10, 5, 3]);
        let s = spec(&[2, 3, 1]);
        let d = decompose(&s, &big(184)).unwrap();
        assert_eq!(d.coeffs(), &[1, 2, 3, 0, 1]);
        assert_eq!(reconstruct(&s, &d), big(184));
        assert_eq!(summand_count(&d), 7);
        let d = decompose(&PlrsSpec::base(10).unwrap(), &big(703)).unwrap();
        assert_eq!(d.coeffs(), &[7, 0, 3]);
        assert_eq!(summand_count(&d), 10);
        assert_eq!(
            decompose(&s, &big(0)),
            Err(DecomposeError::NonPositiveInput)
        );
    }

    #[test]
    fn reconstruct_single_summand() {
        let d = Decomposition::from_coeffs(vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(reconstruct(&PlrsSpec::fibonacci(), &d), big(21));
        assert_eq!(summand_count(&d), 1);
    }

    #[test]
    fn round_trip_up_to_ten_thousand() {
        for c in [&[1, 1][..], &[2, 3, 1], &[2], &[3], &[10], &[1, 0, 1], &[1, 2]] {
            let s = spec(c);
            let mut cache = SequenceCache::new(s.clone());
            for n in 1..=10_000u64 {
                let d = decompose_with(&mut cache, &big(n)).unwrap();
                assert!(is_legal(&s, d.coeffs()), "{s:?} {n} {:?}", d.coeffs());
                assert_eq!(reconstruct_with(&mut cache, &d), big(n));
            }
        }
    }

    #[test]
    fn large_coefficient_uses_division() {
        let s = spec(&[1000]);
        let d = decompose(&s, &big(999_123_456)).unwrap();
        assert_eq!(d.coeffs(), &[999, 123, 456]);
    }

    #[test]
    fn zeckendorf_examples() {
        assert_eq!(zeckendorf(&big(2011)).unwrap(), vec![16, 13, 8, 3]);
        assert_eq!(zeckendorf(&big(8)).unwrap(), vec![5]);
        assert_eq!(zeckendorf(&big(4)).unwrap(), vec![3, 1]);
        assert_eq!(zeckendorf(&big(1)).unwrap(), vec![1]);
        assert_eq!(zeckendorf(&big(0)), Err(DecomposeError::NonPositiveInput));
    }

    #[test]
    fn zeckendorf_agrees_with_fibonacci_decompose() {
        let mut cache = SequenceCache::new(PlrsSpec::fibonacci());
        for n in 1..5000u64 {
            let z = zeckendorf(&big(n)).unwrap();
            assert!(z.windows(2).all(|w| w[0] >= w[1] + 2));
            assert_eq!(z, decompose_with(&mut cache, &big(n)).unwrap().indices());
        }
    }

    #[test]
    fn fardiff_examples() {
        let r = fardiff(&BigInt::from(2011)).unwrap();
        assert_eq!(r, signed(&[(17, 1), (14, -1), (8, 1), (3, 1)]));
        assert_eq!(alloc::format!("{r}"), "+F17 -F14 +F8 +F3");
        let r = fardiff(&BigInt::from(1900)).unwrap();
        assert_eq!(r, signed(&[(17, 1), (14, -1), (10, -1), (6, 1), (2, 1)]));
        assert!(fardiff(&BigInt::from(0)).unwrap().is_empty());
        assert_eq!(
            fardiff(&BigInt::from(-1)),
            Err(DecomposeError::NegativeInput)
        );
    }

    #[test]
    fn fardiff_validity_examples() {
        assert!(fardiff_valid(&fardiff(&BigInt::from(2011)).unwrap()));
        assert!(!fardiff_valid(&signed(&[(5, 1), (2, 1)])));
        assert!(fardiff_valid(&signed(&[(5, 1), (2, -1)])));
        assert_eq!(signed(&[(5, 1), (2, -1)]).value(), BigInt::from(6));
        assert!(!fardiff_valid(&signed(&[(5, -1)])));
        assert!(!fardiff_valid(&signed(&[(2, 1), (5, 1)])));
        assert!(fardiff_valid(&signed(&[])));
    }

    #[test]
    fn fardiff_leading_term_and_round_trip() {
        let mut t = FardiffThresholds::new();
        let limit: u64 = fardiff_s(20).try_into().unwrap();
        for n in 0..=limit {
            let r = fardiff_with(&mut t, &big(n));
            assert!(fardiff_valid(&r), "{n}: {r}");
            assert_eq!(r.value(), BigInt::from(n));
            if let Some(first) = r.terms.first() {
                let i = first.index as i64;
                assert!(t.get(i - 1) < big(n) && big(n) <= t.get(i));
            }
        }
    }

    proptest! {
        #[test]
        fn base_b_digits(b in 2u64..17, n in 1u64..u64::MAX) {
            let d = decompose(&PlrsSpec::base(b).unwrap(), &big(n)).unwrap();
            let mut digits = Vec::new();
            let mut v = n;
            while v > 0 {
                digits.push(v % b);
                v /= b;
            }
            digits.reverse();
            prop_assert_eq!(d.coeffs(), &digits[..]);
        }

        #[test]
        fn big_values_round_trip(words in proptest::collection::vec(any::<u32>(), 1..8)) {
            let n = BigUint::new(words) + 1u32;
            for c in [&[1, 1][..], &[2, 3, 1], &[1, 0, 1]] {
                let s = spec(c);
                let d = decompose(&s, &n).unwrap();
                prop_assert!(is_legal(&s, d.coeffs()));
                prop_assert_eq!(reconstruct(&s, &d), n.clone());
            }
        }
    }
}
