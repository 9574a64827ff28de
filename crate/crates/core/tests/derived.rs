//! Reference values computed by a naive oracle that lives only here, then
//! frozen as literals. Each test checks oracle == literal == library.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use zeck_core::combinatorics::{mean_closed, variance_closed};
use zeck_core::gaussian::nonforced_mean_sigma;
use zeck_core::{
    decompose, empirical_density, empirical_joint, enumerate_legal, exact_moments, fardiff,
    fardiff_s, fardiff_valid, joint_count, reconstruct, script_e, stars_and_bars,
    stirling_f, summand_count, terms, weighted_geom, zeck_density, zeckendorf, Convention,
    Decomposition, PlrsSpec, Sign, SignedDecomposition, SignedTerm,
};

mod naive {
    /// `F_1 = 1, F_2 = 2, ...` up to `F_m`, 1-based (index 0 unused).
    pub fn fibs(m: usize) -> Vec<u64> {
        let mut f = vec![0u64, 1, 2];
        while f.len() <= m {
            let k = f.len();
            f.push(f[k - 1] + f[k - 2]);
        }
        f.truncate(m + 1);
        f
    }

    /// All subsets of `{1..m}` with no two adjacent indices, as bitmasks.
    pub fn nonadjacent_subsets(m: usize) -> impl Iterator<Item = u32> {
        (0u32..1 << m).filter(|s| s & (s >> 1) == 0)
    }

    pub fn indices(mask: u32) -> Vec<usize> {
        (0..32).rev().filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
    }

    /// Every Zeckendorf representation of `v`, found by trying all subsets.
    pub fn zeckendorf_all(v: u64) -> Vec<Vec<usize>> {
        let m = 20;
        let f = fibs(m);
        nonadjacent_subsets(m)
            .filter(|&s| indices(s).iter().map(|&i| f[i]).sum::<u64>() == v)
            .map(indices)
            .collect()
    }

    /// Signed representations of `v` with indices `<= m`, by trying every
    /// sign assignment `{-1, 0, +1}^m`.
    pub fn signed_all(v: i64, m: usize) -> Vec<Vec<(usize, i8)>> {
        let f = fibs(m);
        let mut out = Vec::new();
        let total = 3u64.pow(m as u32);
        for code in 0..total {
            let mut c = code;
            let mut terms = Vec::new();
            for i in 1..=m {
                match c % 3 {
                    1 => terms.push((i, 1i8)),
                    2 => terms.push((i, -1i8)),
                    _ => {}
                }
                c /= 3;
            }
            terms.reverse();
            let val: i64 = terms.iter().map(|&(i, s)| s as i64 * f[i] as i64).sum();
            if val != v {
                continue;
            }
            let ok = terms.windows(2).all(|w| {
                let gap = w[0].0 - w[1].0;
                if w[0].1 == w[1].1 {
                    gap >= 4
                } else {
                    gap >= 3
                }
            });
            if ok {
                out.push(terms);
            }
        }
        out
    }

    pub fn binom(n: i64, k: i64) -> u128 {
        if n < 0 || k < 0 || k > n {
            return 0;
        }
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc
    }

    /// Direct use of the recurrence with `+1` during the first `L - 1` steps.
    pub fn plrs(c: &[u64], m: usize) -> Vec<u64> {
        let mut h = vec![1u64];
        for n in 1..m {
            let mut next: u64 = (1..=n.min(c.len())).map(|i| c[i - 1] * h[n - i]).sum();
            if n < c.len() {
                next += 1;
            }
            h.push(next);
        }
        h
    }
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn spec(c: &[u64]) -> PlrsSpec {
    PlrsSpec::new(c.to_vec()).unwrap()
}

#[test]
fn plrs_terms_2_3_1() {
    let frozen = [1u64, 3, 10, 30, 93];
    assert_eq!(naive::plrs(&[2, 3, 1], 5), frozen);
    let cache = terms(&spec(&[2, 3, 1]), 5);
    let got: Vec<BigUint> = cache.terms()[..5].to_vec();
    assert_eq!(got, frozen.map(big));
}

#[test]
fn plrs_terms_match_naive_recurrence() {
    for c in [&[1u64, 1][..], &[2, 3, 1], &[1, 0, 1], &[3], &[1, 2, 0, 4]] {
        let expected = naive::plrs(c, 25);
        let cache = terms(&spec(c), 25);
        for (a, b) in cache.terms()[..25].iter().zip(&expected) {
            assert_eq!(a, &big(*b), "{c:?}");
        }
    }
}

#[test]
fn fardiff_thresholds() {
    let f = naive::fibs(20);
    for (n, frozen) in [(4i64, 5u64), (5, 9), (17, 3025)] {
        let s: u64 = (0..)
            .map(|i| n - 4 * i)
            .take_while(|&j| j > 0)
            .map(|j| f[j as usize])
            .sum();
        assert_eq!(s, frozen);
        assert_eq!(fardiff_s(n), big(frozen));
    }
}

#[test]
fn zeckendorf_values() {
    for (v, frozen) in [
        (100u64, vec![10usize, 5, 3]),
        (2011, vec![16, 13, 8, 3]),
        (4, vec![3, 1]),
    ] {
        assert_eq!(naive::zeckendorf_all(v), vec![frozen.clone()]);
        assert_eq!(zeckendorf(&big(v)).unwrap(), frozen);
        let d = decompose(&PlrsSpec::fibonacci(), &big(v)).unwrap();
        assert_eq!(d.indices(), frozen);
    }
}

#[test]
fn decompose_184() {
    let frozen = [1u64, 2, 3, 0, 1];
    let h = naive::plrs(&[2, 3, 1], 5);
    let value: u64 = frozen.iter().zip(h.iter().rev()).map(|(a, t)| a * t).sum();
    assert_eq!(value, 184);
    let s = spec(&[2, 3, 1]);
    assert_eq!(decompose(&s, &big(184)).unwrap().coeffs(), frozen);
    let d = Decomposition::from_coeffs(frozen.to_vec());
    assert_eq!(reconstruct(&s, &d), big(184));
    assert_eq!(summand_count(&d), 7);
}

#[test]
fn round_trip_to_1e5() {
    for c in [&[1u64, 1][..], &[2, 3, 1]] {
        let s = spec(c);
        for v in 1..=100_000u64 {
            let d = decompose(&s, &big(v)).unwrap();
            assert_eq!(reconstruct(&s, &d), big(v), "{c:?} {v}");
        }
    }
}

#[test]
fn signed_representations() {
    // (S_4, S_5] = {6, 7, 8, 9}
    let frozen: [(i64, Vec<(usize, i8)>); 4] = [
        (6, vec![(5, 1), (2, -1)]),
        (7, vec![(5, 1), (1, -1)]),
        (8, vec![(5, 1)]),
        (9, vec![(5, 1), (1, 1)]),
    ];
    for (v, rep) in &frozen {
        assert_eq!(naive::signed_all(*v, 12), vec![rep.clone()]);
        let sd = fardiff(&BigInt::from(*v)).unwrap();
        let got: Vec<(usize, i8)> = sd.terms.iter().map(|t| (t.index, t.sign.as_i8())).collect();
        assert_eq!(&got, rep);
    }
    let f = naive::fibs(17);
    for (v, text, rep) in [
        (2011i64, "+F17 -F14 +F8 +F3", &[(17usize, 1i64), (14, -1), (8, 1), (3, 1)][..]),
        (1900, "+F17 -F14 -F10 +F6 +F2", &[(17, 1), (14, -1), (10, -1), (6, 1), (2, 1)]),
    ] {
        let value: i64 = rep.iter().map(|&(i, s)| s * f[i] as i64).sum();
        assert_eq!(value, v);
        assert!(rep.windows(2).all(|w| {
            let gap = w[0].0 - w[1].0;
            gap >= if w[0].1 == w[1].1 { 4 } else { 3 }
        }));
        assert_eq!(fardiff(&BigInt::from(v)).unwrap().to_string(), text);
    }
    assert!(fardiff(&BigInt::from(0)).unwrap().is_empty());
}

#[test]
fn validity_examples() {
    let t = |index, sign| SignedTerm { index, sign };
    let bad = SignedDecomposition::new(vec![t(5, Sign::Plus), t(2, Sign::Plus)]);
    let good = SignedDecomposition::new(vec![t(5, Sign::Plus), t(2, Sign::Minus)]);
    assert!(!fardiff_valid(&bad));
    assert!(fardiff_valid(&good));
    assert_eq!(good.value(), BigInt::from(6));
}

#[test]
fn enumeration_examples() {
    let fib5: Vec<u64> = enumerate_legal(&PlrsSpec::fibonacci(), 5)
        .unwrap()
        .iter()
        .map(|d| u64::try_from(reconstruct(&PlrsSpec::fibonacci(), d)).unwrap())
        .collect();
    let f = naive::fibs(5);
    let mut oracle: Vec<u64> = naive::nonadjacent_subsets(5)
        .filter(|s| s >> 4 & 1 == 1)
        .map(|s| naive::indices(s).iter().map(|&i| f[i]).sum())
        .collect();
    oracle.sort();
    assert_eq!(oracle, [8, 9, 10, 11, 12]);
    assert_eq!(fib5, oracle);

    let s = spec(&[2, 3, 1]);
    let vals: Vec<u64> = enumerate_legal(&s, 2)
        .unwrap()
        .iter()
        .map(|d| u64::try_from(reconstruct(&s, d)).unwrap())
        .collect();
    assert_eq!(vals, (3..10).collect::<Vec<_>>());
}

#[test]
fn densities_at_5() {
    let mut oracle: BTreeMap<u64, u64> = BTreeMap::new();
    for s in naive::nonadjacent_subsets(5).filter(|s| s >> 4 & 1 == 1) {
        *oracle.entry(s.count_ones() as u64).or_default() += 1;
    }
    let frozen: BTreeMap<u64, u64> = [(1, 1), (2, 3), (3, 1)].into();
    assert_eq!(oracle, frozen);
    assert_eq!(empirical_density(&PlrsSpec::fibonacci(), 5).unwrap(), frozen);
    let t = zeck_density(5);
    assert_eq!(t.counts, [1u64, 3, 1].map(big));
    assert_eq!(t.probabilities(), vec![rat(1, 5), rat(3, 5), rat(1, 5)]);
}

#[test]
fn joint_at_5() {
    let mut oracle: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for v in 6..=9 {
        let reps = naive::signed_all(v, 12);
        let pos = reps[0].iter().filter(|t| t.1 > 0).count();
        *oracle.entry((pos, reps[0].len() - pos)).or_default() += 1;
    }
    let frozen: BTreeMap<(usize, usize), u64> = [((1, 0), 1), ((1, 1), 2), ((2, 0), 1)].into();
    assert_eq!(oracle, frozen);
    assert_eq!(empirical_joint(5).unwrap(), frozen);
    for k in 0..6 {
        for l in 0..6 {
            let want = frozen.get(&(k, l)).copied().unwrap_or(0);
            assert_eq!(joint_count(5, k, l), big(want), "({k},{l})");
        }
    }
}

#[test]
fn joint_totals_are_interval_sizes() {
    for n in 1..=20usize {
        let f = naive::fibs(n);
        let s = |m: i64| -> u64 {
            (0..)
                .map(|i| m - 4 * i)
                .take_while(|&j| j > 0)
                .map(|j| f[j as usize])
                .sum()
        };
        let width = s(n as i64) - s(n as i64 - 1);
        let total: BigUint = (0..=n)
            .flat_map(|k| (0..=n).map(move |l| joint_count(n, k, l)))
            .sum();
        assert_eq!(total, big(width), "n = {n}");
    }
}

#[test]
fn stars_and_bars_values() {
    let count = |mins: [u64; 2]| {
        (0..=5u64)
            .filter(|&a| a >= mins[0] && 5 - a >= mins[1])
            .count() as u64
    };
    assert_eq!(count([0, 0]), 6);
    assert_eq!(count([2, 1]), 3);
    assert_eq!(stars_and_bars(5, &[0, 0]), big(6));
    assert_eq!(stars_and_bars(5, &[2, 1]), big(3));
}

#[test]
fn script_e_values() {
    let e = |n: i64| -> u128 { (0..n).map(|k| k as u128 * naive::binom(n - 1 - k, k)).sum() };
    assert_eq!(e(5), 5);
    assert_eq!((e(4), e(6)), (2, 10));
    assert_eq!(e(6) + e(4), 4 * naive::fibs(3)[3] as u128);
    assert_eq!(e(12), 420);
    assert_eq!(script_e(5), big(5));
    assert_eq!(script_e(12), big(420));
}

#[test]
fn closed_forms_at_12() {
    let counts: Vec<u128> = (0..6).map(|k| naive::binom(11 - k, k)).collect();
    assert_eq!(counts, [1, 10, 36, 56, 35, 6]);
    let first: u128 = counts.iter().enumerate().map(|(k, c)| k as u128 * c).sum();
    let second: u128 = counts.iter().enumerate().map(|(k, c)| (k * k) as u128 * c).sum();
    assert_eq!((first, second), (420, 1368));
    let m = exact_moments(&zeck_density(12), Convention::NonForced);
    assert_eq!(m.mean, rat(420, 144));
    assert_eq!(m.variance, rat(1368, 144) - rat(420, 144) * rat(420, 144));
    assert_eq!(m.variance, rat(143, 144));
    let forced = exact_moments(&zeck_density(5), Convention::Forced);
    assert_eq!(forced.mean, rat(1 + 2 * 3 + 3, 5));
    assert!((mean_closed(12).to_f64() - 2.91672).abs() < 5e-6);
    assert!((variance_closed(12).to_f64() - 0.993312).abs() < 1e-6);
}

#[test]
fn weighted_geom_values() {
    assert_eq!(weighted_geom(3, &rat(2, 1)), rat(2 + 2 * 4 + 3 * 8, 1));
    assert_eq!(weighted_geom(2, &rat(1, 2)), rat(1, 1));
}

#[test]
fn stirling_center_ratio() {
    let (mu, _) = nonforced_mean_sigma(201);
    let k = mu.round() as u64;
    // C(200 - k, k) / F_200 in floating point
    let c = (0..k).fold(1.0f64, |acc, i| acc * (200 - k - i) as f64 / (i + 1) as f64);
    let (mut a, mut b) = (1.0f64, 2.0f64);
    for _ in 2..200 {
        (a, b) = (b, a + b);
    }
    let f = stirling_f(200, k).unwrap();
    assert!((f.f_value / (c / b) - 1.0).abs() <= 0.02);
}
