mod common;

use common::{all_forms, dual_agreement, seeded_forms};
use stablesect::census::{census, census_naive, monomial_count, CensusOptions, Field, Form, PointSet, SmoothnessTester};

fn agree_on<I: IntoIterator<Item = Form>>(q: u32, n: u32, d: u32, forms: I) -> (usize, usize) {
    dual_agreement(q, n, d, forms).unwrap()
}

#[test]
fn dual_methods_agree_exhaustively_small_degree() {
    for (q, d) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let (checked, smooth) = agree_on(q, 2, d, all_forms(q, 2, d));
        assert_eq!(checked as u64, (q as u64).pow(monomial_count(2, d) as u32));
        assert!(smooth > 0);
    }
}

#[test]
fn dual_methods_agree_on_seeded_samples() {
    for d in [4, 5] {
        let forms = seeded_forms(0x5eed_0000 + d as u64, 10_000, 2, 2, d);
        let (checked, smooth) = agree_on(2, 2, d, forms);
        assert_eq!(checked, 10_000);
        assert!((2_500..4_000).contains(&smooth), "d={d}: {smooth} smooth samples");
    }
}

#[test]
fn dual_methods_agree_on_binary_forms() {
    for d in 1..=6 {
        agree_on(2, 1, d, all_forms(2, 1, d));
    }
    agree_on(3, 1, 4, all_forms(3, 1, 4));
}

/// Squarefree test for a binary form over F_q by dehomogenizing and taking
/// polynomial gcds.
fn squarefree(f: &Form) -> bool {
    let q = f.q as i64;
    // coefficient of x^(d-j) y^j is coeffs[j]; as a polynomial in t = x/y: g(t) = sum coeffs[j] t^(d-j)
    let d = f.d as usize;
    if f.is_zero() {
        return false;
    }
    // y^2 | f iff x^d and x^(d-1) y are absent
    if f.coeffs[0] == 0 && f.coeffs[1] == 0 {
        return false;
    }
    let g: Vec<i64> = (0..=d).map(|e| f.coeffs[d - e] as i64).collect();
    let g = trim(g);
    let dg: Vec<i64> = g.iter().enumerate().skip(1).map(|(e, &c)| (c * e as i64).rem_euclid(q)).collect();
    let dg = trim(dg);
    if dg.is_empty() {
        // g' = 0: g is a p-th power, squarefree only if constant
        return g.len() <= 1;
    }
    gcd(g, dg, q).len() == 1
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn inv(a: i64, q: i64) -> i64 {
    (1..q).find(|b| a * b % q == 1).unwrap()
}

fn rem(mut a: Vec<i64>, b: &[i64], q: i64) -> Vec<i64> {
    let lb = inv(*b.last().unwrap(), q);
    while a.len() >= b.len() {
        let c = a.last().unwrap() * lb % q;
        let shift = a.len() - b.len();
        for (i, &bc) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] - c * bc).rem_euclid(q);
        }
        a = trim(a);
    }
    a
}

fn gcd(a: Vec<i64>, b: Vec<i64>, q: i64) -> Vec<i64> {
    if b.is_empty() {
        return a;
    }
    let r = rem(a, &b, q);
    gcd(b, r, q)
}

#[test]
fn binary_smoothness_is_squarefreeness() {
    for (q, d) in [(2, 3), (2, 8), (2, 12), (3, 5)] {
        let mut tester = SmoothnessTester::new(q, 1, d).unwrap();
        for f in all_forms(q, 1, d) {
            assert_eq!(tester.is_smooth(&f), squarefree(&f), "{:?}", f.coeffs);
        }
    }
}

#[test]
fn squarefree_census_matches_oracle_count() {
    let r = census(2, 1, 12, 2, &CensusOptions::default()).unwrap();
    let oracle = all_forms(2, 1, 12).filter(squarefree).count() as u64;
    assert_eq!(r.smooth, oracle);
    assert_eq!(r.total, 1 << 13);
}

#[test]
fn chunking_and_workers_do_not_change_the_report() {
    let base = census(2, 2, 3, 3, &CensusOptions { workers: Some(1), chunk: Some(1 << 20), ..Default::default() }).unwrap();
    for (workers, chunk) in [(Some(1), Some(1)), (Some(3), Some(7)), (Some(4), Some(100)), (None, None)] {
        let r = census(2, 2, 3, 3, &CensusOptions { workers, chunk, ..Default::default() }).unwrap();
        assert_eq!(r, base);
    }
    let b3 = census(3, 2, 2, 3, &CensusOptions { workers: Some(1), chunk: Some(1 << 20), ..Default::default() }).unwrap();
    let r3 = census(3, 2, 2, 3, &CensusOptions { workers: Some(2), chunk: Some(5), ..Default::default() }).unwrap();
    assert_eq!(b3, r3);
    assert_eq!(b3, census_naive(3, 2, 2, 3).unwrap());
}

#[test]
fn closed_points_from_direct_point_counts() {
    // every smooth conic over F_q is P^1: (a_1, a_2, a_3) = (q+1, (q^2-q)/2, (q^3-q)/3)
    for q in [2u32, 3] {
        let r = census(q, 2, 2, 3, &CensusOptions::default()).unwrap();
        let key = vec![q + 1, (q * q - q) / 2, (q * q * q - q) / 3];
        assert_eq!(r.histogram.len(), 1);
        assert_eq!(r.histogram[&key], r.smooth);
    }
    // plane cubics: a_1 from scanning P^2(F_2) directly
    let ps = PointSet::new(Field::new(2, 1).unwrap(), 2);
    let mut tester = SmoothnessTester::new(2, 2, 3).unwrap();
    let mut hist = std::collections::BTreeMap::new();
    for f in all_forms(2, 2, 3) {
        if tester.is_smooth(&f) {
            *hist.entry(f.count_zeros(&ps) as u32).or_insert(0u64) += 1;
        }
    }
    let r = census(2, 2, 3, 1, &CensusOptions::default()).unwrap();
    let got: std::collections::BTreeMap<u32, u64> = r.histogram.iter().map(|(a, &m)| (a[0], m)).collect();
    assert_eq!(got, hist);
}
