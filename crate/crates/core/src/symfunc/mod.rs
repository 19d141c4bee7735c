//! The ring of symmetric functions over the rationals (or over any
//! `Q`-algebra of coefficients), stored sparsely in one of five bases.
//!
//! Indices are `Vec<u32>`. For `H`, `E` and `P` an index is a partition
//! (weakly decreasing parts), so `[2, 1]` is `h_2 h_1`. For `PPrime` and
//! `PPrimeBinomial` it is an exponent vector `(l_1, l_2, ...)` without
//! trailing zeros, meaning `prod p'_k^{l_k}` and `prod binom(p'_k, l_k)`.
//!
//! The power-sum basis is the hub for conversions.

mod adams;
mod schur;
mod weyl;

pub use adams::{eval_at_adams, eval_at_adams_with, AdamsCharacter};
pub use schur::{schur, schur_orthogonal, schur_symplectic};
pub use weyl::{weyl_dimension, ClassicalGroup};

use crate::arith::{divisors, factorial, mobius, stirling1_table, stirling2_table};
use crate::partitions::partitions_of;
use crate::ring::{QAlgebra, Ring};
use crate::symexpr::SymExpr;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Basis {
    H,
    E,
    P,
    PPrime,
    PPrimeBinomial,
}

impl Basis {
    pub const ALL: [Basis; 5] = [Basis::H, Basis::E, Basis::P, Basis::PPrime, Basis::PPrimeBinomial];

    fn is_partition_indexed(self) -> bool {
        matches!(self, Basis::H | Basis::E | Basis::P)
    }

    pub fn name(self) -> &'static str {
        match self {
            Basis::H => "h",
            Basis::E => "e",
            Basis::P => "p",
            Basis::PPrime => "pprime",
            Basis::PPrimeBinomial => "pprime-binomial",
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct SymFunc<C = BigRational> {
    basis: Basis,
    terms: BTreeMap<Vec<u32>, C>,
}

/// Grading of a single index.
pub fn index_degree(basis: Basis, idx: &[u32]) -> u32 {
    if basis.is_partition_indexed() {
        idx.iter().sum()
    } else {
        idx.iter().enumerate().map(|(i, l)| (i as u32 + 1) * l).sum()
    }
}

fn canonical_index(basis: Basis, mut idx: Vec<u32>) -> Vec<u32> {
    if basis.is_partition_indexed() {
        idx.retain(|&x| x > 0);
        idx.sort_unstable_by(|a, b| b.cmp(a));
    } else {
        while idx.last() == Some(&0) {
            idx.pop();
        }
    }
    idx
}

fn merge_partitions(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = a.iter().chain(b).copied().collect();
    v.sort_unstable_by(|x, y| y.cmp(x));
    v
}

fn add_vectors(a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect()
}

/// `z_lambda = prod_i i^{m_i} m_i!`.
fn z_lambda(parts: &[u32]) -> BigInt {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &p in parts {
        *counts.entry(p).or_insert(0) += 1;
    }
    counts
        .iter()
        .map(|(&i, &m)| BigInt::from(i).pow(m) * factorial(m))
        .product()
}

impl<C: QAlgebra> SymFunc<C> {
    pub fn zero(basis: Basis) -> Self {
        SymFunc { basis, terms: BTreeMap::new() }
    }

    pub fn constant(basis: Basis, c: C) -> Self {
        let mut f = SymFunc::zero(basis);
        f.add_term(Vec::new(), c);
        f
    }

    pub fn one(basis: Basis) -> Self {
        SymFunc::constant(basis, C::one())
    }

    pub fn monomial(basis: Basis, idx: Vec<u32>, c: C) -> Self {
        let mut f = SymFunc::zero(basis);
        f.add_term(idx, c);
        f
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, C)>>(basis: Basis, terms: I) -> Self {
        let mut f = SymFunc::zero(basis);
        for (i, c) in terms {
            f.add_term(i, c);
        }
        f
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, C> {
        &self.terms
    }

    pub fn coeff(&self, idx: &[u32]) -> C {
        let idx = canonical_index(self.basis, idx.to_vec());
        self.terms.get(&idx).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest degree among the terms; 0 for the zero function.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|i| index_degree(self.basis, i)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|i| index_degree(self.basis, i));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn add_term(&mut self, idx: Vec<u32>, c: C) {
        if c.is_zero() {
            return;
        }
        let idx = canonical_index(self.basis, idx);
        match self.terms.get_mut(&idx) {
            Some(v) => {
                *v = Ring::add(v, &c);
                if v.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let o = o.to_basis(self.basis);
        let mut out = self.clone();
        for (i, c) in o.terms {
            out.add_term(i, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        SymFunc { basis: self.basis, terms: self.terms.iter().map(|(i, c)| (i.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &C) -> Self {
        let mut out = SymFunc::zero(self.basis);
        for (i, c) in &self.terms {
            out.add_term(i.clone(), c.mul(r));
        }
        out
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&C::from_rational(r))
    }

    /// Product, returned in the basis of `self`.
    pub fn mul(&self, o: &Self) -> Self {
        match self.basis {
            Basis::PPrimeBinomial => self
                .to_basis(Basis::PPrime)
                .mul(&o.to_basis(Basis::PPrime))
                .to_basis(Basis::PPrimeBinomial),
            b => {
                let o = o.to_basis(b);
                let mut out = SymFunc::zero(b);
                for (ia, ca) in &self.terms {
                    for (ib, cb) in &o.terms {
                        let idx = if b.is_partition_indexed() { merge_partitions(ia, ib) } else { add_vectors(ia, ib) };
                        out.add_term(idx, ca.mul(cb));
                    }
                }
                out
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = SymFunc::one(self.basis);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Same element of the ring, expressed in `target`.
    pub fn to_basis(&self, target: Basis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        match (self.basis, target) {
            (Basis::PPrime, Basis::PPrimeBinomial) => return self.pprime_to_binomial(),
            (Basis::PPrimeBinomial, Basis::PPrime) => return self.binomial_to_pprime(),
            _ => {}
        }
        let p = self.to_p();
        p.from_p(target)
    }

    fn to_p(&self) -> Self {
        match self.basis {
            Basis::P => self.clone(),
            Basis::PPrimeBinomial => self.binomial_to_pprime().to_p(),
            b => {
                let mut out = SymFunc::zero(Basis::P);
                for (idx, c) in &self.terms {
                    let expansion = generator_product_in_p(b, idx);
                    for (pi, r) in expansion.terms {
                        out.add_term(pi, c.mul(&C::from_rational(&r)));
                    }
                }
                out
            }
        }
    }

    fn from_p(&self, target: Basis) -> Self {
        debug_assert_eq!(self.basis, Basis::P);
        match target {
            Basis::P => self.clone(),
            Basis::PPrimeBinomial => self.from_p(Basis::PPrime).pprime_to_binomial(),
            t => {
                let mut out = SymFunc::zero(t);
                for (idx, c) in &self.terms {
                    let mut prod: SymFunc<BigRational> = SymFunc::one(t);
                    for &k in idx {
                        prod = prod.mul(&power_sum_in(t, k));
                    }
                    for (ti, r) in prod.terms {
                        out.add_term(ti, c.mul(&C::from_rational(&r)));
                    }
                }
                out
            }
        }
    }

    fn pprime_to_binomial(&self) -> Self {
        debug_assert_eq!(self.basis, Basis::PPrime);
        let maxl = self.terms.keys().flat_map(|i| i.iter().copied()).max().unwrap_or(0) as usize;
        let s2 = stirling2_table(maxl);
        let mut out = SymFunc::zero(Basis::PPrimeBinomial);
        for (idx, c) in &self.terms {
            // x^l = sum_j S(l,j) j! binom(x,j), independently for each k
            let mut partial: Vec<(Vec<u32>, BigRational)> = vec![(Vec::new(), BigRational::one())];
            for &l in idx {
                let mut next = Vec::new();
                for (pi, r) in &partial {
                    for j in 0..=l as usize {
                        let s = &s2[l as usize][j];
                        if s.is_zero() {
                            continue;
                        }
                        let mut ni = pi.clone();
                        ni.push(j as u32);
                        let w = BigRational::from_integer(s * factorial(j as u32));
                        next.push((ni, r * w));
                    }
                }
                partial = next;
            }
            for (pi, r) in partial {
                out.add_term(pi, c.mul(&C::from_rational(&r)));
            }
        }
        out
    }

    fn binomial_to_pprime(&self) -> Self {
        debug_assert_eq!(self.basis, Basis::PPrimeBinomial);
        let maxl = self.terms.keys().flat_map(|i| i.iter().copied()).max().unwrap_or(0) as usize;
        let s1 = stirling1_table(maxl);
        let mut out = SymFunc::zero(Basis::PPrime);
        for (idx, c) in &self.terms {
            // binom(x,j) = (1/j!) sum_i s(j,i) x^i
            let mut partial: Vec<(Vec<u32>, BigRational)> = vec![(Vec::new(), BigRational::one())];
            for &j in idx {
                let inv = BigRational::new(BigInt::one(), factorial(j));
                let mut next = Vec::new();
                for (pi, r) in &partial {
                    for i in 0..=j as usize {
                        let s = &s1[j as usize][i];
                        if s.is_zero() {
                            continue;
                        }
                        let mut ni = pi.clone();
                        ni.push(i as u32);
                        next.push((ni, r * BigRational::from_integer(s.clone()) * &inv));
                    }
                }
                partial = next;
            }
            for (pi, r) in partial {
                out.add_term(pi, c.mul(&C::from_rational(&r)));
            }
        }
        out
    }

    /// Canonical text with a caller-supplied coefficient printer. Terms are
    /// ordered by degree, then index.
    pub fn render_with<F: Fn(&C) -> String>(&self, coef: F) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by_key(|i| (index_degree(self.basis, i), (*i).clone()));
        let parts: Vec<String> = keys
            .into_iter()
            .map(|i| {
                let c = coef(&self.terms[i]);
                let m = render_index(self.basis, i);
                if m.is_empty() {
                    c
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl SymFunc<BigRational> {
    pub fn h(n: u32) -> Self {
        SymFunc::monomial(Basis::H, vec![n], BigRational::one())
    }

    pub fn e(n: u32) -> Self {
        SymFunc::monomial(Basis::E, vec![n], BigRational::one())
    }

    pub fn p(n: u32) -> Self {
        SymFunc::monomial(Basis::P, vec![n], BigRational::one())
    }

    /// The Möbius-inverted power sum `p'_k`.
    pub fn pprime(k: u32) -> Self {
        let mut idx = vec![0; k as usize];
        idx[k as usize - 1] = 1;
        SymFunc::monomial(Basis::PPrime, idx, BigRational::one())
    }

    /// `binom(p'_k, l)`.
    pub fn pprime_binomial(k: u32, l: u32) -> Self {
        let mut idx = vec![0; k as usize];
        idx[k as usize - 1] = l;
        SymFunc::monomial(Basis::PPrimeBinomial, idx, BigRational::one())
    }

    pub fn rational(r: BigRational) -> Self {
        SymFunc::constant(Basis::P, r)
    }

    /// Sign flip of every power sum, `p_k -> -p_k`. This is the involution
    /// exchanging `h_n` and `(-1)^n e_n`.
    pub fn negate_power_sums(&self) -> Self {
        let p = self.to_p();
        let mut out = SymFunc::zero(Basis::P);
        for (i, c) in &p.terms {
            let c = if i.len() % 2 == 1 { -c } else { c.clone() };
            out.add_term(i.clone(), c);
        }
        out.to_basis(self.basis)
    }

    /// Canonical text: `1/2*p1^2 + 1/2*p2`, explicit coefficients.
    pub fn render(&self) -> String {
        let body = self.render_with(|c| c.to_string());
        body.replace(" + -", " - ")
    }

    /// Rewrite in the power-sum basis with every `p_k` replaced by
    /// `eps * (p_k - c_k)`.
    pub fn substitute_p<F>(&self, eps: i32, c: F) -> SymFunc<SymExpr>
    where
        F: Fn(u32) -> SymExpr,
    {
        assert!(eps == 1 || eps == -1, "sign must be +1 or -1");
        let p = self.to_p();
        let maxk = p.terms.keys().flat_map(|i| i.iter().copied()).max().unwrap_or(0);
        let eps_e = SymExpr::from_int(eps as i64);
        let images: Vec<SymFunc<SymExpr>> = (1..=maxk)
            .map(|k| {
                let mut idx = vec![k];
                let base = SymFunc::monomial(Basis::P, std::mem::take(&mut idx), SymExpr::one());
                base.sub(&SymFunc::constant(Basis::P, c(k))).scale(&eps_e)
            })
            .collect();
        let mut out = SymFunc::zero(Basis::P);
        for (idx, coef) in &p.terms {
            let mut prod = SymFunc::constant(Basis::P, SymExpr::from_rational(coef));
            for &k in idx {
                prod = prod.mul(&images[k as usize - 1]);
            }
            out = out.add(&prod);
        }
        out
    }
}

impl fmt::Display for SymFunc<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn render_index(basis: Basis, idx: &[u32]) -> String {
    let mut parts = Vec::new();
    if basis.is_partition_indexed() {
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for &p in idx {
            *counts.entry(p).or_insert(0) += 1;
        }
        for (k, m) in counts {
            let g = format!("{}{k}", basis.name());
            parts.push(if m == 1 { g } else { format!("{g}^{m}") });
        }
    } else {
        for (i, &l) in idx.iter().enumerate() {
            if l == 0 {
                continue;
            }
            let k = i + 1;
            parts.push(match basis {
                Basis::PPrime if l == 1 => format!("p'{k}"),
                Basis::PPrime => format!("p'{k}^{l}"),
                _ => format!("C(p'{k},{l})"),
            });
        }
    }
    parts.join("*")
}

/// Expansion of a single index of `basis` (H, E or PPrime) in power sums.
fn generator_product_in_p(basis: Basis, idx: &[u32]) -> SymFunc<BigRational> {
    let mut prod = SymFunc::one(Basis::P);
    match basis {
        Basis::H | Basis::E => {
            for &n in idx {
                prod = prod.mul(&complete_or_elementary_in_p(basis, n));
            }
        }
        Basis::PPrime => {
            for (i, &l) in idx.iter().enumerate() {
                if l > 0 {
                    prod = prod.mul(&pprime_in_p(i as u32 + 1).pow(l));
                }
            }
        }
        _ => unreachable!(),
    }
    prod
}

fn complete_or_elementary_in_p(basis: Basis, n: u32) -> SymFunc<BigRational> {
    let mut out = SymFunc::zero(Basis::P);
    for lam in partitions_of(n) {
        let z = z_lambda(&lam);
        let sign = if basis == Basis::E && (n as usize - lam.len()) % 2 == 1 { -1 } else { 1 };
        out.add_term(lam, BigRational::new(BigInt::from(sign), z));
    }
    out
}

fn pprime_in_p(k: u32) -> SymFunc<BigRational> {
    let mut out = SymFunc::zero(Basis::P);
    for d in divisors(k) {
        let mu = mobius(k / d);
        if mu != 0 {
            out.add_term(vec![d], BigRational::new(BigInt::from(mu), BigInt::from(k)));
        }
    }
    out
}

/// `p_k` in the target basis (H, E, PPrime).
fn power_sum_in(target: Basis, k: u32) -> SymFunc<BigRational> {
    match target {
        Basis::P => SymFunc::p(k),
        Basis::PPrime => {
            let mut out = SymFunc::zero(Basis::PPrime);
            for d in divisors(k) {
                let mut idx = vec![0; d as usize];
                idx[d as usize - 1] = 1;
                out.add_term(idx, BigRational::from_integer(d.into()));
            }
            out
        }
        Basis::H | Basis::E => newton_power_sums(target, k).pop().unwrap(),
        Basis::PPrimeBinomial => unreachable!(),
    }
}

/// `p_1, ..., p_k` expressed in H or E through the Newton identities
/// `n h_n = sum p_i h_{n-i}` and `n e_n = sum (-1)^{i-1} p_i e_{n-i}`.
fn newton_power_sums(basis: Basis, k: u32) -> Vec<SymFunc<BigRational>> {
    let gen = |n: u32| SymFunc::monomial(basis, vec![n], BigRational::one());
    let mut ps: Vec<SymFunc<BigRational>> = Vec::with_capacity(k as usize);
    for n in 1..=k {
        let mut acc = gen(n).scale(&BigRational::from_integer(n.into()));
        for i in 1..n {
            let sgn = if basis == Basis::E && (i - 1) % 2 == 1 { -1 } else { 1 };
            let t = ps[i as usize - 1].mul(&gen(n - i)).scale(&BigRational::from_integer(sgn.into()));
            acc = acc.sub(&t);
        }
        if basis == Basis::E && (n - 1) % 2 == 1 {
            acc = acc.neg();
        }
        ps.push(acc);
    }
    ps
}
