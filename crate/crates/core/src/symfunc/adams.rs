use super::{Basis, SymFunc};
use crate::arith::{divisors, mobius};
use crate::ring::{QAlgebra, Ring};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;

/// Power-sum values `p_1, ..., p_K` of a lambda-ring element.
#[derive(Clone, Debug, PartialEq)]
pub struct AdamsCharacter<R> {
    values: Vec<R>,
}

impl<R: QAlgebra> AdamsCharacter<R> {
    pub fn new(values: Vec<R>) -> Self {
        AdamsCharacter { values }
    }

    pub fn from_fn<F: FnMut(u32) -> R>(bound: u32, mut f: F) -> Self {
        AdamsCharacter { values: (1..=bound).map(&mut f).collect() }
    }

    pub fn bound(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn p(&self, k: u32) -> Result<R> {
        if k == 0 {
            return Ok(R::one());
        }
        self.values
            .get(k as usize - 1)
            .cloned()
            .ok_or(Error::InsufficientAdamsData { needed: k, bound: self.bound() })
    }

    /// `(1/k) sum_{d|k} mu(k/d) p_d`, the value of `p'_k`.
    pub fn pprime(&self, k: u32) -> Result<R> {
        let mut acc = R::zero();
        for d in divisors(k) {
            let mu = mobius(k / d);
            if mu != 0 {
                acc = Ring::add(&acc, &self.p(d)?.scale(&BigRational::from_integer(mu.into())));
            }
        }
        Ok(acc.scale(&BigRational::new(BigInt::from(1), BigInt::from(k))))
    }

    /// Character of `-x`.
    pub fn negated(&self) -> Self {
        AdamsCharacter { values: self.values.iter().map(|v| v.neg()).collect() }
    }

    /// Character of a sum of classes.
    pub fn plus(&self, o: &Self) -> Self {
        let n = self.values.len().min(o.values.len());
        AdamsCharacter { values: (0..n).map(|i| Ring::add(&self.values[i], &o.values[i])).collect() }
    }

    /// Character of a product of classes (Adams operations are multiplicative).
    pub fn times(&self, o: &Self) -> Self {
        let n = self.values.len().min(o.values.len());
        AdamsCharacter { values: (0..n).map(|i| Ring::mul(&self.values[i], &o.values[i])).collect() }
    }

    pub fn map<S: QAlgebra, F: Fn(&R) -> S>(&self, f: F) -> AdamsCharacter<S> {
        AdamsCharacter { values: self.values.iter().map(f).collect() }
    }
}

/// Evaluate `f` through `chi`, extended as a ring homomorphism.
pub fn eval_at_adams<R: QAlgebra>(f: &SymFunc<BigRational>, chi: &AdamsCharacter<R>) -> Result<R> {
    eval_at_adams_with(f, chi, |c| R::from_rational(c))
}

/// Same, with a coefficient map from `C` into the target ring.
pub fn eval_at_adams_with<C, R, F>(f: &SymFunc<C>, chi: &AdamsCharacter<R>, coef: F) -> Result<R>
where
    C: QAlgebra,
    R: QAlgebra,
    F: Fn(&C) -> R,
{
    let f = match f.basis() {
        Basis::H | Basis::E => f.to_basis(Basis::P),
        _ => f.clone(),
    };
    let needed = match f.basis() {
        Basis::P => f.terms().keys().filter_map(|i| i.first().copied()).max().unwrap_or(0),
        _ => f.terms().keys().map(|i| i.len() as u32).max().unwrap_or(0),
    };
    if needed > chi.bound() {
        return Err(Error::InsufficientAdamsData { needed, bound: chi.bound() });
    }
    let mut pp_cache: BTreeMap<u32, R> = BTreeMap::new();
    let mut pprime = |k: u32| -> Result<R> {
        if let Some(v) = pp_cache.get(&k) {
            return Ok(v.clone());
        }
        let v = chi.pprime(k)?;
        pp_cache.insert(k, v.clone());
        Ok(v)
    };
    let mut acc = R::zero();
    for (idx, c) in f.terms() {
        let mut t = coef(c);
        match f.basis() {
            Basis::P => {
                for &k in idx {
                    t = Ring::mul(&t, &chi.p(k)?);
                }
            }
            Basis::PPrime => {
                for (i, &l) in idx.iter().enumerate() {
                    if l > 0 {
                        t = Ring::mul(&t, &pprime(i as u32 + 1)?.pow(l));
                    }
                }
            }
            Basis::PPrimeBinomial => {
                for (i, &l) in idx.iter().enumerate() {
                    if l > 0 {
                        t = Ring::mul(&t, &pprime(i as u32 + 1)?.binomial(l));
                    }
                }
            }
            Basis::H | Basis::E => unreachable!(),
        }
        acc = Ring::add(&acc, &t);
    }
    Ok(acc)
}
