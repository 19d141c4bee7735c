//! Minimal commutative-ring abstraction shared by the exact arithmetic types.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;

/// A commutative ring with exact arithmetic.
///
/// `zero`, `one` and `is_zero` come from `num_traits`.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + Zero + One {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_int(n: i64) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = Ring::mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = Ring::mul(&base, &base);
            }
        }
        acc
    }
}

/// Operator impls needed by the `num_traits` supertraits, delegating to
/// the `Ring` methods.
#[macro_export]
macro_rules! ring_operators {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                $crate::ring::Ring::add(&self, &o)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                $crate::ring::Ring::mul(&self, &o)
            }
        }
    };
}

/// A ring containing the rationals.
pub trait QAlgebra: Ring {
    fn from_rational(r: &BigRational) -> Self;

    fn scale(&self, r: &BigRational) -> Self {
        self.mul(&Self::from_rational(r))
    }

    /// `binom(self, k) = self (self - 1) ... (self - k + 1) / k!`.
    fn binomial(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for i in 0..k {
            acc = Ring::mul(&acc, &self.sub(&Self::from_int(i as i64)));
        }
        let fact: BigInt = (1..=k as u64).map(BigInt::from).product();
        acc.scale(&BigRational::new(BigInt::one(), fact))
    }
}

impl Ring for BigRational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

impl QAlgebra for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn scale(&self, r: &BigRational) -> Self {
        self * r
    }
}

/// Shorthand for building exact rationals.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for integral rationals.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Lossy conversion for human-readable output only.
pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
