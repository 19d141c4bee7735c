//! Truncated power series in `t_1, ..., t_m` and two auxiliary symbols
//! `s`, `z`, with the power-structure exponentiation `F^{Pow [Y]}`.
//!
//! A monomial is stored as `[e_1, ..., e_m, e_s, e_z]`. Terms whose total
//! `t`-degree exceeds `t_bound` or whose total `(s, z)`-degree exceeds
//! `sz_bound` are dropped.

use super::profile::VarietyProfile;
use crate::ring::QAlgebra;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MSeries {
    t_vars: usize,
    t_bound: u32,
    sz_bound: u32,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MSeries {
    pub fn zero(t_vars: usize, t_bound: u32, sz_bound: u32) -> Self {
        MSeries { t_vars, t_bound, sz_bound, terms: BTreeMap::new() }
    }

    pub fn one_like(&self) -> Self {
        self.monomial_like(vec![0; self.t_vars + 2], BigRational::one())
    }

    pub fn zero_like(&self) -> Self {
        MSeries::zero(self.t_vars, self.t_bound, self.sz_bound)
    }

    pub fn one(t_vars: usize, t_bound: u32, sz_bound: u32) -> Self {
        MSeries::zero(t_vars, t_bound, sz_bound).one_like()
    }

    /// Monomial `c * t^e s^a z^b` (dropped if beyond the bounds).
    pub fn monomial_like(&self, exps: Vec<u32>, c: BigRational) -> Self {
        assert_eq!(exps.len(), self.t_vars + 2);
        let mut out = self.zero_like();
        out.add_term(exps, c);
        out
    }

    pub fn t(&self, i: usize) -> Self {
        let mut e = vec![0; self.t_vars + 2];
        e[i] = 1;
        self.monomial_like(e, BigRational::one())
    }

    pub fn s(&self) -> Self {
        let mut e = vec![0; self.t_vars + 2];
        e[self.t_vars] = 1;
        self.monomial_like(e, BigRational::one())
    }

    pub fn z(&self) -> Self {
        let mut e = vec![0; self.t_vars + 2];
        e[self.t_vars + 1] = 1;
        self.monomial_like(e, BigRational::one())
    }

    pub fn constant_like(&self, c: BigRational) -> Self {
        self.monomial_like(vec![0; self.t_vars + 2], c)
    }

    pub fn t_vars(&self) -> usize {
        self.t_vars
    }

    pub fn t_bound(&self) -> u32 {
        self.t_bound
    }

    pub fn sz_bound(&self) -> u32 {
        self.sz_bound
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&vec![0; self.t_vars + 2])
    }

    fn in_range(&self, e: &[u32]) -> bool {
        let td: u32 = e[..self.t_vars].iter().sum();
        let sz: u32 = e[self.t_vars..].iter().sum();
        td <= self.t_bound && sz <= self.sz_bound
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() || !self.in_range(&e) {
            return;
        }
        let v = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn check_shape(&self, o: &Self) {
        assert_eq!(
            (self.t_vars, self.t_bound, self.sz_bound),
            (o.t_vars, o.t_bound, o.sz_bound),
            "series of different shapes"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_shape(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -v.clone();
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * r);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_shape(o);
        let mut out = self.zero_like();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Every variable raised to its `k`-th power; coefficients fixed.
    pub fn adams(&self, k: u32) -> Self {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            out.add_term(e.iter().map(|x| x * k).collect(), c.clone());
        }
        out
    }

    /// `F^a` for integer `a` (any sign), for `F` with constant term 1:
    /// `sum_i binom(a, i) (F - 1)^i`.
    pub fn pow_int(&self, a: &BigInt) -> Result<Self> {
        if self.constant_term() != BigRational::one() {
            return Err(Error::NonUnitalSeries);
        }
        let x = self.sub(&self.one_like());
        let a = BigRational::from_integer(a.clone());
        let mut acc = self.one_like();
        let mut xi = self.one_like();
        let mut i = 0u32;
        loop {
            i += 1;
            xi = xi.mul(&x);
            if xi.terms.is_empty() {
                break;
            }
            let b = a.binomial(i);
            if b.is_zero() && !a.is_negative() {
                break;
            }
            acc = acc.add(&xi.scale(&b));
        }
        Ok(acc)
    }

    /// Inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<Self> {
        self.pow_int(&BigInt::from(-1))
    }

    /// Coefficients of `t^I` as a sparse map `(e_s, e_z) -> c`.
    pub fn sz_part(&self, t_exps: &[u32]) -> BTreeMap<(u32, u32), BigRational> {
        self.terms
            .iter()
            .filter(|(e, _)| &e[..self.t_vars] == t_exps)
            .map(|(e, c)| ((e[self.t_vars], e[self.t_vars + 1]), c.clone()))
            .collect()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut mono = Vec::new();
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let v = if i < self.t_vars {
                    format!("t{}", i + 1)
                } else if i == self.t_vars {
                    "s".into()
                } else {
                    "z".into()
                };
                mono.push(if x == 1 { v } else { format!("{v}^{x}") });
            }
            if mono.is_empty() {
                parts.push(c.to_string());
            } else {
                parts.push(format!("{c}*{}", mono.join("*")));
            }
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// `F^{Pow [Y]} = prod_k F^{(k)}(t^k, s^k, z^k)^{a_k}` where `a[k-1]` is the
/// number of closed points of degree `k`. Needs `a_k` for every `k` up to
/// `max(t_bound, sz_bound)`.
pub fn euler_pow(f: &MSeries, a: &[BigInt]) -> Result<MSeries> {
    if f.constant_term() != BigRational::one() {
        return Err(Error::NonUnitalSeries);
    }
    let needed = f.t_bound.max(f.sz_bound);
    if (a.len() as u32) < needed {
        return Err(Error::InsufficientAdamsData { needed, bound: a.len() as u32 });
    }
    let mut acc = f.one_like();
    for k in 1..=needed {
        let ak = &a[k as usize - 1];
        if ak.is_zero() {
            continue;
        }
        let factor = f.adams(k).pow_int(ak)?;
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// [`euler_pow`] with the closed-point counts of a profile over `F_q`.
pub fn euler_pow_profile(f: &MSeries, profile: &VarietyProfile, q: u64) -> Result<MSeries> {
    let needed = f.t_bound.max(f.sz_bound);
    let a = (1..=needed).map(|k| profile.closed_points_at(q, k)).collect::<Result<Vec<_>>>()?;
    euler_pow(f, &a)
}
