//! Monomial bases and projective point sets over `F_{q^e}`.

use super::field::Field;
use crate::arith::binomial_u128;

/// Exponent vectors of the degree-`d` monomials in `vars` variables, in
/// lexicographic order (`x_0^d` first).
pub fn monomials(vars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, vars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == vars {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(i + 1, vars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if vars == 0 {
        return out;
    }
    rec(0, vars, d, &mut Vec::new(), &mut out);
    out
}

/// `C(d + n, n)`, the number of degree-`d` monomials on `P^n`.
pub fn monomial_count(n: u32, d: u32) -> usize {
    binomial_u128((d + n) as u64, n as u64) as usize
}

/// `P^n(F_{q^e})`, points normalized so the first nonzero coordinate is 1.
#[derive(Clone, Debug)]
pub struct PointSet {
    pub field: Field,
    pub n: u32,
    pub points: Vec<Vec<u16>>,
}

impl PointSet {
    pub fn new(field: Field, n: u32) -> Self {
        let size = field.size() as u64;
        let vars = n as usize + 1;
        let mut points = Vec::new();
        for lead in 0..vars {
            let free = vars - lead - 1;
            for idx in 0..size.pow(free as u32) {
                let mut pt = vec![0u16; vars];
                pt[lead] = 1;
                let mut x = idx;
                for c in pt.iter_mut().skip(lead + 1) {
                    *c = (x % size) as u16;
                    x /= size;
                }
                points.push(pt);
            }
        }
        PointSet { field, n, points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `((q^e)^{n+1} - 1)/(q^e - 1)`.
    pub fn expected_len(size: u64, n: u32) -> u64 {
        (size.pow(n + 1) - 1) / (size - 1)
    }

    pub fn monomial_value(&self, point: &[u16], mono: &[u32]) -> u16 {
        let f = &self.field;
        point.iter().zip(mono).fold(1u16, |acc, (&x, &e)| f.mul(acc, f.pow(x, e)))
    }

    /// `values[m][i]` is monomial `m` at point `i`.
    pub fn monomial_columns(&self, monos: &[Vec<u32>]) -> Vec<Vec<u16>> {
        monos
            .iter()
            .map(|m| self.points.iter().map(|pt| self.monomial_value(pt, m)).collect())
            .collect()
    }

    /// Point-major layout: `values[i * monos.len() + m]`.
    pub fn monomial_rows(&self, monos: &[Vec<u32>]) -> Vec<u16> {
        let mut out = Vec::with_capacity(self.points.len() * monos.len());
        for pt in &self.points {
            for m in monos {
                out.push(self.monomial_value(pt, m));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn monomial_order_and_count() {
        let m = monomials(3, 2);
        assert_eq!(m[0], vec![2, 0, 0]);
        assert_eq!(m[1], vec![1, 1, 0]);
        assert_eq!(m.last().unwrap(), &vec![0, 0, 2]);
        assert_eq!(m.len(), monomial_count(2, 2));
        assert_eq!(monomials(3, 5).len(), 21);
        assert_eq!(monomials(2, 12).len(), 13);
        assert_eq!(monomials(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn point_counts_and_distinctness() {
        for (p, e, n) in [(2, 1, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3), (3, 1, 1)] {
            let ps = PointSet::new(Field::new(p, e).unwrap(), n);
            let size = (p as u64).pow(e);
            assert_eq!(ps.len() as u64, PointSet::expected_len(size, n));
            // pairwise non-proportional: scaling by every unit never lands on another representative
            let reps: HashSet<Vec<u16>> = ps.points.iter().cloned().collect();
            assert_eq!(reps.len(), ps.len());
            for pt in ps.points.iter().take(50) {
                for c in 2..ps.field.size() as u16 {
                    let scaled: Vec<u16> = pt.iter().map(|&x| ps.field.mul(x, c)).collect();
                    assert!(!reps.contains(&scaled));
                }
            }
        }
    }
}
