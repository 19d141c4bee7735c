use super::laurent::LaurentL;
use crate::ring::Ring;
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// An element of the dimension-completed ring known modulo `Fil^floor`:
/// every coefficient at an exponent `>= floor` is exact, nothing is claimed
/// below. `floor = None` means the value is known exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    known: LaurentL,
    floor: Option<i64>,
}

impl TruncSeries {
    pub fn exact(v: LaurentL) -> Self {
        TruncSeries { known: v, floor: None }
    }

    pub fn new(v: LaurentL, floor: i64) -> Self {
        TruncSeries { known: v.truncate_below(floor), floor: Some(floor) }
    }

    pub fn known(&self) -> &LaurentL {
        &self.known
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    /// Coefficient of `L^e`, or `None` if `e` lies below the truncation.
    pub fn coeff(&self, e: i64) -> Option<BigRational> {
        match self.floor {
            Some(f) if e < f => None,
            _ => Some(self.known.coeff(e)),
        }
    }

    /// Upper bound on the exponents the true value can carry.
    fn top_bound(&self) -> Option<i64> {
        let t = self.known.top();
        match (t, self.floor) {
            (Some(t), Some(f)) => Some(t.max(f - 1)),
            (None, Some(f)) => Some(f - 1),
            (t, None) => t,
        }
    }

    /// Coarsen to a (possibly) higher floor.
    pub fn truncate(&self, floor: i64) -> Self {
        let f = self.floor.map_or(floor, |g| g.max(floor));
        TruncSeries::new(self.known.clone(), f)
    }

    pub fn add(&self, o: &Self) -> Self {
        let floor = match (self.floor, o.floor) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, None) => a,
            (None, b) => b,
        };
        let v = self.known.add(&o.known);
        match floor {
            None => TruncSeries::exact(v),
            Some(f) => TruncSeries::new(v, f),
        }
    }

    pub fn neg(&self) -> Self {
        TruncSeries { known: self.known.neg(), floor: self.floor }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let v = self.known.mul(&o.known);
        let mut floor: Option<i64> = None;
        if let Some(fb) = o.floor {
            if let Some(ta) = self.top_bound() {
                floor = Some(ta + fb);
            }
        }
        if let Some(fa) = self.floor {
            if let Some(tb) = o.top_bound() {
                floor = Some(floor.map_or(tb + fa, |g| g.max(tb + fa)));
            }
        }
        match floor {
            None => TruncSeries::exact(v),
            Some(f) => TruncSeries::new(v, f),
        }
    }

    /// Inverse of `1 + (terms of negative exponent)`, computed down to
    /// `floor` (or the existing truncation if that is higher).
    pub fn inv(&self, floor: i64) -> Result<Self> {
        if self.known.top() != Some(0) || self.known.coeff(0) != BigRational::one() {
            return Err(Error::NonUnitalSeries);
        }
        if self.floor.is_some_and(|f| f > 0) {
            return Err(Error::NonUnitalSeries);
        }
        let f = self.floor.map_or(floor, |g| g.max(floor));
        let v = self.known.sub(&LaurentL::one()).neg().truncate_below(f);
        // 1/(1 - v) = 1 + v + v^2 + ..., v has exponents <= -1
        let mut acc = LaurentL::one();
        let mut power = LaurentL::one();
        if !v.is_zero() {
            loop {
                power = power.mul(&v).truncate_below(f);
                if power.is_zero() {
                    break;
                }
                acc = acc.add(&power);
            }
        }
        Ok(TruncSeries::new(acc, f))
    }

    /// Realization of the known part at `L -> q`.
    pub fn eval_known(&self, q: &BigRational) -> BigRational {
        self.known.eval(q)
    }

    /// Whether `other` agrees with `self` on every exponent both of them
    /// determine, i.e. `>= max(floors)`.
    pub fn agrees_with(&self, other: &TruncSeries) -> bool {
        let f = match (self.floor, other.floor) {
            (Some(a), Some(b)) => a.max(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => return self.known == other.known,
        };
        self.known.truncate_below(f) == other.known.truncate_below(f)
    }

    pub fn render(&self, var: &str) -> String {
        match self.floor {
            None => self.known.render(var),
            Some(f) => format!("{} + O({var}^{})", self.known.render(var), f - 1),
        }
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("L"))
    }
}
