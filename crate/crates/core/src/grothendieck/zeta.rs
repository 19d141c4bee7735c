//! Kapranov zeta functions `Z_Y(t) = sum [Sym^k Y] t^k` and the values
//! `zeta_Y(s) = Z_Y(L^{-s})`.

use super::laurent::LaurentL;
use super::profile::VarietyProfile;
use super::trunc::TruncSeries;
use crate::arith::binomial_big;
use crate::ring::Ring;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Product form of a cellular `Z_Y(t)`: `prod (1 - L^dim t)^{-count}`, as
/// `(dim, count)` pairs.
pub fn kapranov_zeta(profile: &VarietyProfile) -> Result<Vec<(u32, u32)>> {
    profile
        .cells()
        .ok_or_else(|| Error::InvalidProfile(format!("{} is not cellular", profile.name)))
}

/// `[Sym^k Y]` for `k = 0..=max`, from the product form.
pub fn sym_classes(profile: &VarietyProfile, max: usize) -> Result<Vec<LaurentL>> {
    let mut series: Vec<LaurentL> = vec![LaurentL::zero(); max + 1];
    series[0] = LaurentL::one();
    for (d, count) in kapranov_zeta(profile)? {
        for _ in 0..count {
            // multiply by 1/(1 - L^d t): s_k += L^d s_{k-1}, in increasing k
            let ld = LaurentL::l_pow(d as i64);
            for k in 1..=max {
                let prev = series[k - 1].mul(&ld);
                series[k] = series[k].add(&prev);
            }
        }
    }
    Ok(series)
}

/// Coefficients of the Euler form `prod_k (1 - t^k)^{-a_k}` up to `t^max`.
/// `a[k-1]` is the number of closed points of degree `k`; needs `a.len() >= max`.
pub fn euler_form(a: &[BigInt], max: usize) -> Result<Vec<BigInt>> {
    if a.len() < max {
        return Err(Error::InsufficientAdamsData { needed: max as u32, bound: a.len() as u32 });
    }
    let mut series = vec![BigInt::zero(); max + 1];
    series[0] = BigInt::one();
    for k in 1..=max {
        let ak = &a[k - 1];
        if ak.is_zero() {
            continue;
        }
        let ak_i64: i64 = i64::try_from(ak).map_err(|_| Error::InvalidProfile("closed point count too large".into()))?;
        // (1 - t^k)^{-a} = sum_j binom(a + j - 1, j) t^{kj}
        let factor: Vec<BigInt> = (0..=max / k).map(|j| binomial_big(ak_i64 + j as i64 - 1, j as u32)).collect();
        let mut next = vec![BigInt::zero(); max + 1];
        for (i, si) in series.iter().enumerate() {
            if si.is_zero() {
                continue;
            }
            for (j, fj) in factor.iter().enumerate() {
                let e = i + k * j;
                if e > max {
                    break;
                }
                next[e] += si * fj;
            }
        }
        series = next;
    }
    Ok(series)
}

/// `#Sym^k Y(F_q)` for `k = 0..=max`, via the Euler form.
pub fn sym_counts_at(profile: &VarietyProfile, q: u64, max: usize) -> Result<Vec<BigInt>> {
    let a = (1..=max as u32).map(|k| profile.closed_points_at(q, k)).collect::<Result<Vec<_>>>()?;
    euler_form(&a, max)
}

fn check_convergent(profile: &VarietyProfile, s: i64) -> Result<()> {
    if s <= profile.dim as i64 {
        return Err(Error::DivergentZeta { s, dim: profile.dim });
    }
    Ok(())
}

/// `zeta_Y(s)^{-1} = prod over cells (1 - L^{dim - s})`, an exact Laurent
/// polynomial.
pub fn zeta_inverse(profile: &VarietyProfile, s: i64) -> Result<LaurentL> {
    check_convergent(profile, s)?;
    let mut acc = LaurentL::one();
    for (d, count) in kapranov_zeta(profile)? {
        let f = LaurentL::one().sub(&LaurentL::l_pow(d as i64 - s));
        acc = acc.mul(&f.pow(count));
    }
    Ok(acc)
}

/// `zeta_Y(s)` expanded down to `L^floor`.
pub fn zeta_value(profile: &VarietyProfile, s: i64, floor: i64) -> Result<TruncSeries> {
    TruncSeries::exact(zeta_inverse(profile, s)?).inv(floor)
}

/// Exact `zeta_Y(s)^{-1}` realized at `L -> q`.
pub fn zeta_inverse_at(profile: &VarietyProfile, q: u64, s: i64) -> Result<BigRational> {
    if !profile.is_cellular() {
        return Err(Error::InsufficientProfileData(format!(
            "{}: exact zeta values need a cellular profile",
            profile.name
        )));
    }
    Ok(zeta_inverse(profile, s)?.eval_int(q))
}

/// Exact `zeta_Y(s)` realized at `L -> q`.
pub fn zeta_value_at(profile: &VarietyProfile, q: u64, s: i64) -> Result<BigRational> {
    let inv = zeta_inverse_at(profile, q, s)?;
    if !inv.is_positive() {
        return Err(Error::Pole(q.to_string()));
    }
    Ok(inv.recip())
}
