//! Univariate polynomials over the rationals and reduced rational functions.
//!
//! `X` stands for either `q` (point counting) or the Lefschetz class `L`;
//! the variable name is only chosen at render time.

use crate::ring::{QAlgebra, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    /// `X^e`.
    pub fn monomial(e: usize) -> Self {
        let mut cs = vec![BigRational::zero(); e + 1];
        cs[e] = BigRational::one();
        Poly { coeffs: cs }
    }

    /// `X^e - 1`.
    pub fn x_pow_minus_one(e: usize) -> Self {
        let mut p = Poly::monomial(e);
        p.coeffs[0] -= BigRational::one();
        Poly::new(p.coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = o.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::default();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, r: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::default(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = &rem[i] * &lead_inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &c * dc;
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::default(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut a = a.monic();
        let mut b = b.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Generic Horner evaluation into a `Q`-algebra.
    pub fn eval_in<R: QAlgebra>(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = Ring::add(&Ring::mul(&acc, x), &R::from_rational(c));
        }
        acc
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }

    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// Reduced rational function `num/den` with monic denominator.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::from_ints(&[1]) };
        }
        let g = Poly::gcd(&num, &den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let l = d.lead().unwrap().recip();
        RatFunc { num: n.scale(&l), den: d.scale(&l) }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::from_ints(&[1]) }
    }

    pub fn constant(c: BigRational) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn x() -> Self {
        RatFunc::from_poly(Poly::x())
    }

    /// `X^e` for any integer `e`.
    pub fn x_pow(e: i64) -> Self {
        if e >= 0 {
            RatFunc::from_poly(Poly::monomial(e as usize))
        } else {
            RatFunc { num: Poly::from_ints(&[1]), den: Poly::monomial((-e) as usize) }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_polynomial() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeffs().first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    pub fn inv(&self) -> RatFunc {
        assert!(!self.num.is_zero(), "inverse of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunc) -> RatFunc {
        self.mul_rf(&o.inv())
    }

    fn mul_rf(&self, o: &RatFunc) -> RatFunc {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel before multiplying keeps degrees small
        let g1 = Poly::gcd(&self.num, &o.den);
        let g2 = Poly::gcd(&o.num, &self.den);
        let n1 = self.num.div_rem(&g1).0;
        let d2 = o.den.div_rem(&g1).0;
        let n2 = o.num.div_rem(&g2).0;
        let d1 = self.den.div_rem(&g2).0;
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let l = den.lead().unwrap().recip();
        RatFunc { num: num.scale(&l), den: den.scale(&l) }
    }

    /// Value at `X = x`; errors at a pole.
    pub fn eval(&self, x: &BigRational) -> crate::Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(crate::Error::Pole(x.to_string()));
        }
        Ok(self.num.eval(x) / d)
    }

    /// Laurent expansion at `X = infinity`, i.e. in powers of `X^{-1}`,
    /// keeping exponents `>= floor`. Returns `(exponent, coefficient)` pairs.
    pub fn expand_at_infinity(&self, floor: i64) -> Vec<(i64, BigRational)> {
        if self.num.is_zero() {
            return Vec::new();
        }
        let dn = self.num.degree().unwrap() as i64;
        let dd = self.den.degree().unwrap() as i64;
        let top = dn - dd;
        if top < floor {
            return Vec::new();
        }
        // long division from the top: work with reversed coefficient lists
        let n_rev: Vec<BigRational> = self.num.coeffs().iter().rev().cloned().collect();
        let d_rev: Vec<BigRational> = self.den.coeffs().iter().rev().cloned().collect();
        let steps = (top - floor + 1) as usize;
        let mut rem: Vec<BigRational> = n_rev.clone();
        rem.resize(rem.len().max(steps + d_rev.len()), BigRational::zero());
        let lead_inv = d_rev[0].recip();
        let mut out = Vec::new();
        for i in 0..steps {
            let c = &rem[i] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d_rev.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
                out.push((top - i as i64, c));
            }
        }
        out
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_polynomial() {
            let c = &self.den.coeffs()[0];
            let p = self.num.scale(&c.recip());
            return p.render(var);
        }
        let n = self.num.render(var);
        let d = self.den.render(var);
        let n = if self.num.term_count() > 1 { format!("({n})") } else { n };
        let d = if self.den.term_count() > 1 { format!("({d})") } else { d };
        format!("{n}/{d}")
    }

    /// Machine-readable leaf: `(ratfunc (c0 c1 ...) (d0 d1 ...))`, ascending.
    pub fn to_expr(&self) -> String {
        let f = |p: &Poly| {
            let parts: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
            format!("({})", parts.join(" "))
        };
        format!("(ratfunc {} {})", f(&self.num), f(&self.den))
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Poly::default(), den: Poly::from_ints(&[1]) }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_poly(Poly::from_ints(&[1]))
    }
}

crate::ring_operators!(RatFunc);

impl Ring for RatFunc {
    fn add(&self, o: &Self) -> Self {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        let g = Poly::gcd(&self.den, &o.den);
        let a = o.den.div_rem(&g).0;
        let b = self.den.div_rem(&g).0;
        let num = self.num.mul(&a).add(&o.num.mul(&b));
        let den = self.den.mul(&a);
        RatFunc::new(num, den)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_rf(o)
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_int(n: i64) -> Self {
        RatFunc::constant(BigRational::from_integer(BigInt::from(n)))
    }
}

impl QAlgebra for RatFunc {
    fn from_rational(r: &BigRational) -> Self {
        RatFunc::constant(r.clone())
    }
    fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(r), den: self.den.clone() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("X"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    #[test]
    fn gcd_of_cyclotomic_differences() {
        let a = Poly::x_pow_minus_one(6);
        let b = Poly::x_pow_minus_one(4);
        assert_eq!(Poly::gcd(&a, &b), Poly::x_pow_minus_one(2));
    }

    #[test]
    fn rate_reduces() {
        let r = RatFunc::new(Poly::x_pow_minus_one(2), Poly::x_pow_minus_one(3));
        // (X+1)/(X^2+X+1)
        assert_eq!(r.num(), &Poly::from_ints(&[1, 1]));
        assert_eq!(r.den(), &Poly::from_ints(&[1, 1, 1]));
        assert_eq!(r.eval(&int(2)).unwrap(), rat(3, 7));
    }

    #[test]
    fn field_identities() {
        let a = RatFunc::new(Poly::from_ints(&[1, 2]), Poly::from_ints(&[-1, 0, 1]));
        let b = RatFunc::new(Poly::from_ints(&[3]), Poly::from_ints(&[1, 1]));
        let s = a.add(&b);
        assert_eq!(s.sub(&b), a);
        let p = a.mul(&b);
        assert_eq!(p.div(&b), a);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn expansion_at_infinity() {
        // 1/(1 - X^{-1}) = X/(X-1) = 1 + X^-1 + X^-2 + ...
        let r = RatFunc::new(Poly::x(), Poly::from_ints(&[-1, 1]));
        let e = r.expand_at_infinity(-4);
        assert_eq!(e.len(), 5);
        for (i, (exp, c)) in e.iter().enumerate() {
            assert_eq!(*exp, -(i as i64));
            assert_eq!(*c, int(1));
        }
        // X^2 + 1 has no tail
        let p = RatFunc::from_poly(Poly::from_ints(&[1, 0, 1]));
        assert_eq!(p.expand_at_infinity(-3), vec![(2, int(1)), (0, int(1))]);
    }

    #[test]
    fn render_forms() {
        let r = RatFunc::new(Poly::x_pow_minus_one(2), Poly::x_pow_minus_one(3));
        assert_eq!(r.render("q"), "(q + 1)/(q^2 + q + 1)");
        assert_eq!(RatFunc::from_poly(Poly::from_ints(&[0, -2])).render("L"), "-2*L");
    }
}
