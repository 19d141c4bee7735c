#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stablesect::census::{monomial_count, Field, Form, PointScan, PointSet, SmoothnessTester};
use stablesect::symfunc::{eval_at_adams, AdamsCharacter, SymFunc};

pub fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        x.pow(e as i32)
    } else {
        x.recip().pow((-e) as i32)
    }
}

/// Leibniz expansion, fine for n <= 5.
pub fn det(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = BigRational::zero();
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(p: &mut Vec<usize>, k: usize, m: &[Vec<BigRational>], total: &mut BigRational) {
    if k == p.len() {
        let mut sign = 1;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    sign = -sign;
                }
            }
        }
        let mut prod = BigRational::from_integer(sign.into());
        for (i, &j) in p.iter().enumerate() {
            prod *= &m[i][j];
        }
        *total += prod;
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, m, total);
        p.swap(k, i);
    }
}

fn padded(sigma: &[u32], r: usize) -> Vec<i64> {
    (0..r).map(|i| sigma.get(i).copied().unwrap_or(0) as i64).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    /// `GL_r`, variables `x_1..x_r`.
    General,
    /// `Sp(2r)`, eigenvalues `x_i^{+-1}`.
    Symplectic,
    /// `O(2r+1)`, eigenvalues `x_i^{+-1}, 1` with `x_i = y_i^2`.
    OddOrthogonal,
    /// `O(2r)`, eigenvalues `x_i^{+-1}`.
    EvenOrthogonal,
}

/// Character of the irreducible representation of highest weight `sigma`
/// (`len(sigma) <= r`) at the torus element with the given `y` (see [`Group`]).
pub fn weyl_character(group: Group, sigma: &[u32], y: &[BigRational]) -> BigRational {
    let rank = y.len();
    let l = padded(sigma, rank);
    let x: Vec<BigRational> = match group {
        Group::OddOrthogonal => y.iter().map(|v| v * v).collect(),
        _ => y.to_vec(),
    };
    let alt = |ex: &dyn Fn(usize) -> i64, sign: i64, base: &[BigRational]| -> BigRational {
        let m: Vec<Vec<BigRational>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let e = ex(i);
                        pow(&base[j], e) + BigRational::from_integer(sign.into()) * pow(&base[j], -e)
                    })
                    .collect()
            })
            .collect();
        det(&m)
    };
    let rr = rank as i64;
    match group {
        Group::General => {
            let m = |ex: &dyn Fn(usize) -> i64| -> BigRational {
                det(&(0..rank).map(|i| (0..rank).map(|j| pow(&x[j], ex(i))).collect()).collect::<Vec<_>>())
            };
            m(&|i| l[i] + rr - 1 - i as i64) / m(&|i| rr - 1 - i as i64)
        }
        Group::Symplectic => alt(&|i| l[i] + rr - i as i64, -1, &x) / alt(&|i| rr - i as i64, -1, &x),
        Group::OddOrthogonal => {
            alt(&|i| 2 * (l[i] + rr - 1 - i as i64) + 1, -1, y) / alt(&|i| 2 * (rr - 1 - i as i64) + 1, -1, y)
        }
        Group::EvenOrthogonal => {
            let plus = alt(&|i| l[i] + rr - 1 - i as i64, 1, &x);
            let minus = alt(&|i| l[i] + rr - 1 - i as i64, -1, &x);
            let den = alt(&|i| rr - 1 - i as i64, 1, &x);
            if l[rank - 1] > 0 {
                // O(2r) restricts to the sum of the two conjugate SO(2r) representations
                BigRational::from_integer(2.into()) * plus / den
            } else {
                (plus + minus) / den
            }
        }
    }
}

/// Evaluate a symmetric function at the eigenvalues of the same torus element.
pub fn universal_at(group: Group, f: &SymFunc, y: &[BigRational], degree: u32) -> BigRational {
    let chi = AdamsCharacter::from_fn(degree.max(1), |k| {
        let k = k as i64;
        let mut s = BigRational::zero();
        for v in y {
            match group {
                Group::General => s += pow(v, k),
                Group::Symplectic | Group::EvenOrthogonal => s += pow(v, k) + pow(v, -k),
                Group::OddOrthogonal => s += pow(v, 2 * k) + pow(v, -2 * k),
            }
        }
        if group == Group::OddOrthogonal {
            s += BigRational::one();
        }
        s
    });
    eval_at_adams(f, &chi).unwrap()
}

pub fn sample_points(rank: usize) -> Vec<Vec<BigRational>> {
    let a = [r(2, 1), r(3, 1), r(5, 1), r(7, 1), r(11, 1)];
    let b = [r(3, 2), r(5, 3), r(7, 2), r(9, 4), r(13, 5)];
    vec![a[..rank].to_vec(), b[..rank].to_vec()]
}

/// Closed points of `P^n` over `F_q` of degree `1..=k`, by enumerating
/// `P^n(F_{q^e})` and Mobius inversion.
pub fn closed_points_by_enumeration(q: u32, n: u32, k: u32) -> Vec<BigInt> {
    let counts: Vec<i64> = (1..=k).map(|e| PointSet::new(Field::new(q, e).unwrap(), n).len() as i64).collect();
    (1..=k as i64)
        .map(|m| {
            let mut s = 0i64;
            for e in 1..=m {
                if m % e == 0 {
                    s += mobius(m / e) * counts[e as usize - 1];
                }
            }
            BigInt::from(s / m)
        })
        .collect()
}

fn mobius(mut n: i64) -> i64 {
    let mut res = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            res = -res;
        }
        p += 1;
    }
    if n > 1 {
        res = -res;
    }
    res
}

/// Number of multisets of closed points with total degree `k`, by recursion
/// over the degree of the largest point used.
pub fn effective_cycles(a: &[BigInt], k: usize) -> BigInt {
    fn multichoose(n: &BigInt, m: usize) -> BigInt {
        let mut acc = BigRational::one();
        for i in 0..m {
            acc = acc * BigRational::from_integer(n + BigInt::from(i)) / BigRational::from_integer(BigInt::from(i + 1));
        }
        acc.to_integer()
    }
    fn rec(a: &[BigInt], left: usize, max_deg: usize) -> BigInt {
        if left == 0 {
            return BigInt::one();
        }
        if max_deg == 0 {
            return BigInt::zero();
        }
        let mut total = BigInt::zero();
        for m in 0..=left / max_deg {
            total += multichoose(&a[max_deg - 1], m) * rec(a, left - m * max_deg, max_deg - 1);
        }
        total
    }
    rec(a, k, k)
}

pub fn all_forms(q: u32, n: u32, d: u32) -> impl Iterator<Item = Form> {
    let len = monomial_count(n, d);
    (0..(q as u64).pow(len as u32)).map(move |mut i| {
        let coeffs = (0..len)
            .map(|_| {
                let c = (i % q as u64) as u8;
                i /= q as u64;
                c
            })
            .collect();
        Form::new(q, n, d, coeffs).unwrap()
    })
}

pub fn seeded_forms(seed: u64, count: usize, q: u32, n: u32, d: u32) -> Vec<Form> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let coeffs = (0..monomial_count(n, d)).map(|_| rng.gen_range(0..q) as u8).collect();
            Form::new(q, n, d, coeffs).unwrap()
        })
        .collect()
}

/// Runs both smoothness deciders; returns `(checked, smooth)` or the first disagreement.
pub fn dual_agreement<I: IntoIterator<Item = Form>>(q: u32, n: u32, d: u32, forms: I) -> Result<(usize, usize), String> {
    let scan = PointScan::new(q, n, d).unwrap();
    let mut tester = SmoothnessTester::new(q, n, d).unwrap();
    let (mut checked, mut smooth) = (0, 0);
    for f in forms {
        let a = tester.is_smooth(&f);
        if a != scan.is_smooth(&f) {
            return Err(format!("rank test says {a} for {:?}", f.terms()));
        }
        checked += 1;
        smooth += a as usize;
    }
    Ok((checked, smooth))
}
