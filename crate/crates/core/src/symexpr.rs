//! Polynomials in named closed-point symbols with rational-function
//! coefficients.
//!
//! Symbols are `N1, N2, ...` (closed points of `Y`), `M1, M2, ...` (closed
//! point counts of the constant part), `c1, c2, ...` (free twist constants)
//! and `Zinv` (the normalizer `1/zeta_Y(n+1)`).

use crate::poly::RatFunc;
use crate::ring::{QAlgebra, Ring};
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Symbol {
    N(u32),
    M(u32),
    C(u32),
    Zinv,
}

impl Symbol {
    pub fn name(&self) -> String {
        match self {
            Symbol::N(k) => format!("N{k}"),
            Symbol::M(k) => format!("M{k}"),
            Symbol::C(k) => format!("c{k}"),
            Symbol::Zinv => "Zinv".to_string(),
        }
    }

    pub fn parse(s: &str) -> Option<Symbol> {
        if s == "Zinv" {
            return Some(Symbol::Zinv);
        }
        let (head, tail) = s.split_at(1);
        let k: u32 = tail.parse().ok().filter(|&k| k >= 1)?;
        match head {
            "N" => Some(Symbol::N(k)),
            "M" => Some(Symbol::M(k)),
            "c" => Some(Symbol::C(k)),
            _ => None,
        }
    }
}

/// Sorted `(symbol, exponent)` list with positive exponents.
pub type Monomial = Vec<(Symbol, u32)>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SymExpr {
    terms: BTreeMap<Monomial, RatFunc>,
}

impl SymExpr {
    pub fn symbol(s: Symbol) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(s, 1)], RatFunc::one());
        SymExpr { terms }
    }

    pub fn constant(c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert(Vec::new(), c);
        }
        SymExpr { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut v: Vec<Symbol> = self.terms.keys().flat_map(|m| m.iter().map(|&(s, _)| s)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// The constant coefficient if no symbol occurs.
    pub fn as_constant(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn scale_rf(&self, c: &RatFunc) -> Self {
        if Zero::is_zero(c) {
            return SymExpr::default();
        }
        SymExpr { terms: self.terms.iter().map(|(m, v)| (m.clone(), v.mul(c))).collect() }
    }

    /// Substitute every symbol; fails on the first symbol `value` leaves unset.
    pub fn specialize<F>(&self, value: F) -> Result<RatFunc>
    where
        F: Fn(Symbol) -> Option<RatFunc>,
    {
        let mut cache: BTreeMap<Symbol, RatFunc> = BTreeMap::new();
        for s in self.symbols() {
            let v = value(s).ok_or_else(|| Error::MissingSymbol(s.name()))?;
            cache.insert(s, v);
        }
        let mut acc = RatFunc::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, e) in m {
                t = t.mul(&cache[s].pow(*e));
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Substitute only the symbols `value` knows about.
    pub fn partial_specialize<F>(&self, value: F) -> SymExpr
    where
        F: Fn(Symbol) -> Option<SymExpr>,
    {
        let mut acc = SymExpr::default();
        for (m, c) in &self.terms {
            let mut t = SymExpr::constant(c.clone());
            for &(s, e) in m {
                let f = value(s).unwrap_or_else(|| SymExpr::symbol(s));
                t = t.mul(&f.pow(e));
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Human-readable rendering with `var` as the name of `X`.
    pub fn render(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let mono: Vec<String> = m
                .iter()
                .map(|(s, e)| if *e == 1 { s.name() } else { format!("{}^{e}", s.name()) })
                .collect();
            let mono = mono.join("*");
            let (neg, body) = match c.as_constant() {
                Some(r) => {
                    let a = r.abs();
                    let body = if mono.is_empty() {
                        a.to_string()
                    } else if a.is_one() {
                        mono.clone()
                    } else {
                        format!("{a}*{mono}")
                    };
                    (r.is_negative(), body)
                }
                None => {
                    let lead_neg = c.num().lead().is_some_and(|l| l.is_negative());
                    let cc = if lead_neg { c.neg() } else { c.clone() };
                    let txt = cc.render(var);
                    let txt = if cc.is_polynomial() && cc.num().coeffs().iter().filter(|x| !x.is_zero()).count() > 1 {
                        format!("({txt})")
                    } else if !cc.is_polynomial() {
                        format!("[{txt}]")
                    } else {
                        txt
                    };
                    let body = if mono.is_empty() { txt } else { format!("{txt}*{mono}") };
                    (lead_neg, body)
                }
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    /// Prefix expression, e.g. `(+ (* (ratfunc (0 1) (1)) N1) (* (ratfunc (-1) (1)) M1))`.
    pub fn to_expr(&self) -> String {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut parts = vec![c.to_expr()];
                for (s, e) in m {
                    if *e == 1 {
                        parts.push(s.name());
                    } else {
                        parts.push(format!("(^ {} {e})", s.name()));
                    }
                }
                if parts.len() == 1 {
                    parts.pop().unwrap()
                } else {
                    format!("(* {})", parts.join(" "))
                }
            })
            .collect();
        match terms.len() {
            0 => "(ratfunc () (1))".to_string(),
            1 => terms[0].clone(),
            _ => format!("(+ {})", terms.join(" ")),
        }
    }
}

impl Zero for SymExpr {
    fn zero() -> Self {
        SymExpr::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SymExpr {
    fn one() -> Self {
        SymExpr::constant(RatFunc::one())
    }
}

crate::ring_operators!(SymExpr);

impl Ring for SymExpr {
    fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    *v = v.add(c);
                    if Zero::is_zero(v) {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        SymExpr { terms }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut acc: BTreeMap<Monomial, RatFunc> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = mono_mul(ma, mb);
                let c = ca.mul(cb);
                let e = acc.entry(m).or_insert_with(RatFunc::zero);
                *e = e.add(&c);
            }
        }
        acc.retain(|_, v| !Zero::is_zero(v));
        SymExpr { terms: acc }
    }
    fn neg(&self) -> Self {
        SymExpr { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }
    fn from_int(n: i64) -> Self {
        SymExpr::constant(RatFunc::from_int(n))
    }
}

impl QAlgebra for SymExpr {
    fn from_rational(r: &BigRational) -> Self {
        SymExpr::constant(RatFunc::constant(r.clone()))
    }
    fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return SymExpr::default();
        }
        SymExpr { terms: self.terms.iter().map(|(m, c)| (m.clone(), QAlgebra::scale(c, r))).collect() }
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("X"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    #[test]
    fn symbol_names_round_trip() {
        for s in [Symbol::N(1), Symbol::M(12), Symbol::C(3), Symbol::Zinv] {
            assert_eq!(Symbol::parse(&s.name()), Some(s));
        }
        assert_eq!(Symbol::parse("N0"), None);
    }

    #[test]
    fn binomial_of_symbol_specializes() {
        let n = SymExpr::symbol(Symbol::N(1));
        let b = n.binomial(3);
        let v = b.specialize(|_| Some(RatFunc::constant(int(7)))).unwrap();
        assert_eq!(v.as_constant(), Some(int(35)));
        let neg = n.neg().binomial(2);
        let v = neg.specialize(|_| Some(RatFunc::constant(int(3)))).unwrap();
        // binom(-3, 2) = 6
        assert_eq!(v.as_constant(), Some(int(6)));
    }

    #[test]
    fn missing_symbol_is_reported() {
        let e = SymExpr::symbol(Symbol::M(2)).add(&SymExpr::symbol(Symbol::N(1)));
        let err = e.specialize(|s| (s == Symbol::N(1)).then(RatFunc::one)).unwrap_err();
        assert_eq!(err, Error::MissingSymbol("M2".into()));
    }

    #[test]
    fn rendering_is_sorted() {
        let e = SymExpr::symbol(Symbol::M(1))
            .neg()
            .add(&SymExpr::symbol(Symbol::N(1)).scale_rf(&RatFunc::x()))
            .add(&SymExpr::from_rational(&rat(1, 2)));
        assert_eq!(e.render("q"), "1/2 + q*N1 - M1");
    }
}
