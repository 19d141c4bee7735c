use crate::poly::{Poly, RatFunc};
use crate::ring::{QAlgebra, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Finite Laurent polynomial in the Lefschetz class `L`.
///
/// Coefficients are rational: closed-point classes such as `(L^2 - L)/2`
/// are not integral as polynomials even though they realize to integers.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct LaurentL {
    coeffs: BTreeMap<i64, BigRational>,
}

impl LaurentL {
    /// `L^e`.
    pub fn l_pow(e: i64) -> Self {
        LaurentL::term(e, BigRational::one())
    }

    pub fn l() -> Self {
        LaurentL::l_pow(1)
    }

    pub fn term(e: i64, c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentL { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(it: I) -> Self {
        let mut out = LaurentL::default();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    /// `1 + L + ... + L^n`, the class of projective `n`-space.
    pub fn projective_space(n: u32) -> Self {
        LaurentL::from_terms((0..=n as i64).map(|e| (e, BigRational::one())))
    }

    fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let v = self.coeffs.entry(e).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, BigRational> {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Largest exponent (the virtual dimension).
    pub fn top(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn bottom(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn shift(&self, by: i64) -> Self {
        LaurentL { coeffs: self.coeffs.iter().map(|(e, c)| (e + by, c.clone())).collect() }
    }

    /// Drops every exponent below `floor`.
    pub fn truncate_below(&self, floor: i64) -> Self {
        LaurentL { coeffs: self.coeffs.range(floor..).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// Point-count realization `L -> q`.
    pub fn eval(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            let qe = if *e >= 0 { q.pow(*e as i32) } else { q.recip().pow((-*e) as i32) };
            acc += c * qe;
        }
        acc
    }

    pub fn eval_int(&self, q: u64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(q)))
    }

    /// `psi^k`: `L^m -> L^{km}`.
    pub fn adams(&self, k: u32) -> Self {
        LaurentL { coeffs: self.coeffs.iter().map(|(e, c)| (e * k as i64, c.clone())).collect() }
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let bottom = self.bottom().unwrap_or(0);
        let shift = (-bottom).max(0);
        let top = self.top().unwrap_or(0) + shift;
        let mut num = vec![BigRational::zero(); (top.max(0) + 1) as usize];
        for (e, c) in &self.coeffs {
            num[(e + shift) as usize] = c.clone();
        }
        RatFunc::new(Poly::new(num), Poly::monomial(shift as usize))
    }

    pub fn render(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match *e {
                0 => String::new(),
                1 => var.to_string(),
                e => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl Zero for LaurentL {
    fn zero() -> Self {
        LaurentL::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for LaurentL {
    fn one() -> Self {
        LaurentL::l_pow(0)
    }
}

crate::ring_operators!(LaurentL);

impl Ring for LaurentL {
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = LaurentL::default();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &o.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        LaurentL { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }
    fn from_int(n: i64) -> Self {
        LaurentL::term(0, BigRational::from_integer(n.into()))
    }
}

impl QAlgebra for LaurentL {
    fn from_rational(r: &BigRational) -> Self {
        LaurentL::term(0, r.clone())
    }
    fn scale(&self, r: &BigRational) -> Self {
        LaurentL::from_terms(self.coeffs.iter().map(|(e, c)| (*e, c * r)))
    }
}

impl fmt::Display for LaurentL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("L"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    #[test]
    fn realization_is_a_homomorphism() {
        let a = LaurentL::projective_space(2);
        let b = LaurentL::from_terms([(-1, int(3)), (2, rat(-1, 2))]);
        let q = int(3);
        assert_eq!(a.mul(&b).eval(&q), a.eval(&q) * b.eval(&q));
        assert_eq!(a.add(&b).eval(&q), a.eval(&q) + b.eval(&q));
    }

    #[test]
    fn adams_on_cells() {
        let p2 = LaurentL::projective_space(2);
        assert_eq!(p2.adams(2), LaurentL::from_terms([(0, int(1)), (2, int(1)), (4, int(1))]));
        assert_eq!(p2.render("L"), "L^2 + L + 1");
    }

    #[test]
    fn ratfunc_conversion() {
        let f = LaurentL::from_terms([(-2, int(1)), (1, int(2))]);
        assert_eq!(f.to_ratfunc().eval(&int(2)).unwrap(), f.eval(&int(2)));
    }
}
