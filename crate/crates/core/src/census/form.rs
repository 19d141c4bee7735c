//! Homogeneous forms over a prime field, stored densely over the
//! lexicographically ordered monomial basis.

use super::points::{monomial_count, monomials, PointSet};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Form {
    pub q: u32,
    pub n: u32,
    pub d: u32,
    pub coeffs: Vec<u8>,
}

impl Form {
    pub fn new(q: u32, n: u32, d: u32, coeffs: Vec<u8>) -> Result<Self> {
        let expected = monomial_count(n, d);
        if coeffs.len() != expected {
            return Err(Error::FormLength { got: coeffs.len(), expected });
        }
        if let Some(c) = coeffs.iter().find(|&&c| c as u32 >= q) {
            return Err(Error::Parse(format!("coefficient {c} is not reduced mod {q}")));
        }
        Ok(Form { q, n, d, coeffs })
    }

    /// Build from `(exponent vector, coefficient)` pairs.
    pub fn from_terms(q: u32, n: u32, d: u32, terms: &[(Vec<u32>, u32)]) -> Result<Self> {
        let monos = monomials(n as usize + 1, d);
        let mut coeffs = vec![0u8; monos.len()];
        for (e, c) in terms {
            let i = monos
                .iter()
                .position(|m| m == e)
                .ok_or_else(|| Error::Parse(format!("{e:?} is not a degree-{d} monomial")))?;
            coeffs[i] = ((coeffs[i] as u32 + c) % q) as u8;
        }
        Ok(Form { q, n, d, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero terms as `(exponents, coefficient)`.
    pub fn terms(&self) -> Vec<(Vec<u32>, u32)> {
        monomials(self.n as usize + 1, self.d)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m, c as u32))
            .collect()
    }

    /// `df/dx_i`, a form of degree `d - 1` (zero when `d = 0`).
    pub fn partial(&self, i: usize) -> Form {
        let d1 = self.d.saturating_sub(1);
        let mut terms = Vec::new();
        if self.d > 0 {
            for (mut e, c) in self.terms() {
                let k = e[i];
                if k == 0 {
                    continue;
                }
                e[i] -= 1;
                terms.push((e, (c * k) % self.q));
            }
        }
        Form::from_terms(self.q, self.n, d1, &terms).expect("exponents of degree d - 1")
    }

    /// Value at a point of `P^n(F_{q^e})`.
    pub fn eval(&self, ps: &PointSet, point: &[u16]) -> u16 {
        let f = &ps.field;
        let mut acc = 0u16;
        for (m, c) in self.terms() {
            let v = ps.monomial_value(point, &m);
            acc = f.add(acc, f.mul(f.from_int(c), v));
        }
        acc
    }

    /// Number of `F_{q^e}`-points of `f = 0`.
    pub fn count_zeros(&self, ps: &PointSet) -> u64 {
        ps.points.iter().filter(|pt| self.eval(ps, pt) == 0).count() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::field::Field;

    #[test]
    fn partials_and_evaluation() {
        // x^2 y + z^3 over F_3: d/dx = 2xy, d/dz = 3z^2 = 0
        let f = Form::from_terms(3, 2, 3, &[(vec![2, 1, 0], 1), (vec![0, 0, 3], 1)]).unwrap();
        assert_eq!(f.partial(0).terms(), vec![(vec![1, 1, 0], 2)]);
        assert!(f.partial(2).is_zero());
        let ps = PointSet::new(Field::new(3, 1).unwrap(), 2);
        assert_eq!(f.eval(&ps, &[1, 1, 1]), 2);
        assert!(Form::new(2, 2, 2, vec![0; 5]).is_err());
    }

    #[test]
    fn lines_have_q_plus_one_points() {
        let ps = PointSet::new(Field::new(2, 3).unwrap(), 2);
        let f = Form::from_terms(2, 2, 1, &[(vec![1, 0, 0], 1), (vec![0, 0, 1], 1)]).unwrap();
        assert_eq!(f.count_zeros(&ps), 9);
    }
}
