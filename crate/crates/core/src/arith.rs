//! Small integer helpers: Möbius function, divisors, binomials, Stirling numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn mobius(n: u32) -> i64 {
    assert!(n >= 1);
    let mut m = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn binomial_big(n: i64, k: u32) -> BigInt {
    // generalized binomial for negative n as well
    let mut num = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(n - i);
    }
    let fact: BigInt = (1..=k as u64).map(BigInt::from).product();
    num / fact
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}

/// Stirling numbers of the second kind `S(n, k)`, table up to `n`.
pub fn stirling2_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); n + 1]; n + 1];
    t[0][0] = BigInt::one();
    for i in 1..=n {
        for k in 1..=i {
            t[i][k] = BigInt::from(k) * &t[i - 1][k] + &t[i - 1][k - 1];
        }
    }
    t
}

/// Signed Stirling numbers of the first kind `s(n, k)`:
/// `x (x-1) ... (x-n+1) = sum_k s(n,k) x^k`.
pub fn stirling1_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); n + 1]; n + 1];
    t[0][0] = BigInt::one();
    for i in 1..=n {
        for k in 1..=i {
            t[i][k] = &t[i - 1][k - 1] - BigInt::from(i - 1) * &t[i - 1][k];
        }
    }
    t
}

pub fn ipow(base: u64, e: u32) -> u128 {
    (base as u128).pow(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_small_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &m) in expected.iter().enumerate() {
            assert_eq!(mobius(i as u32 + 1), m, "mu({})", i + 1);
        }
    }

    #[test]
    fn mobius_sums_vanish() {
        for n in 2..60u32 {
            let s: i64 = divisors(n).iter().map(|&d| mobius(d)).sum();
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn stirling_inverse_pair() {
        let s1 = stirling1_table(8);
        let s2 = stirling2_table(8);
        for n in 0..=8 {
            for m in 0..=8 {
                let mut acc = BigInt::zero();
                for k in 0..=8 {
                    acc += &s1[n][k] * &s2[k][m];
                }
                let expected = if n == m { BigInt::one() } else { BigInt::zero() };
                assert_eq!(acc, expected);
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_u128(21, 3), 1330);
        assert_eq!(binomial_big(-3, 2), BigInt::from(6));
        assert_eq!(binomial_big(5, 7), BigInt::zero());
    }
}
