//! Jacobi-Trudi type determinants.
//!
//! * `s_l  = det(h_{l_i - i + j})`
//! * `sp_l = det(e_{l'_i - i + j} - e_{l'_i - i - j})` (universal symplectic character)
//! * `o_l  = det(h_{l_i - i + j} - h_{l_i - i - j})` (universal orthogonal character)
//!
//! Indices are 1-based, `h_0 = e_0 = 1` and negative indices vanish.

use super::{Basis, SymFunc};
use crate::partitions::conjugate;
use num_rational::BigRational;
use num_traits::One;
use std::collections::HashMap;

fn generator(basis: Basis, k: i64) -> SymFunc {
    if k < 0 {
        SymFunc::zero(basis)
    } else if k == 0 {
        SymFunc::one(basis)
    } else {
        SymFunc::monomial(basis, vec![k as u32], BigRational::one())
    }
}

/// Determinant by expansion along rows, memoized on the set of used columns.
fn determinant(m: &[Vec<SymFunc>], basis: Basis) -> SymFunc {
    let n = m.len();
    if n == 0 {
        return SymFunc::one(basis);
    }
    fn rec(
        m: &[Vec<SymFunc>],
        row: usize,
        used: u32,
        basis: Basis,
        memo: &mut HashMap<u32, SymFunc>,
    ) -> SymFunc {
        let n = m.len();
        if row == n {
            return SymFunc::one(basis);
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = SymFunc::zero(basis);
        let mut sign_pos = true;
        for col in 0..n {
            if used & (1 << col) != 0 {
                continue;
            }
            let entry = &m[row][col];
            if !entry.is_zero() {
                let minor = rec(m, row + 1, used | (1 << col), basis, memo);
                let t = entry.mul(&minor);
                acc = if sign_pos { acc.add(&t) } else { acc.sub(&t) };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(used, acc.clone());
        acc
    }
    let mut memo = HashMap::new();
    rec(m, 0, 0, basis, &mut memo)
}

fn jacobi_trudi<F>(parts: &[u32], basis: Basis, entry: F) -> SymFunc
where
    F: Fn(i64, i64, i64) -> SymFunc,
{
    let n = parts.len();
    let m: Vec<Vec<SymFunc>> = (0..n)
        .map(|i| (0..n).map(|j| entry(parts[i] as i64, i as i64 + 1, j as i64 + 1)).collect())
        .collect();
    determinant(&m, basis)
}

fn sorted(sigma: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = sigma.iter().copied().filter(|&x| x > 0).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Ordinary Schur function, in the H basis.
pub fn schur(sigma: &[u32]) -> SymFunc {
    let parts = sorted(sigma);
    jacobi_trudi(&parts, Basis::H, |l, i, j| generator(Basis::H, l - i + j))
}

/// Universal character of the irreducible `Sp` representation indexed by
/// `sigma`, in the E basis.
pub fn schur_symplectic(sigma: &[u32]) -> SymFunc {
    let conj = conjugate(&sorted(sigma));
    jacobi_trudi(&conj, Basis::E, |l, i, j| {
        generator(Basis::E, l - i + j).sub(&generator(Basis::E, l - i - j))
    })
}

/// Universal character of the irreducible `O` representation indexed by
/// `sigma`, in the H basis.
pub fn schur_orthogonal(sigma: &[u32]) -> SymFunc {
    let parts = sorted(sigma);
    jacobi_trudi(&parts, Basis::H, |l, i, j| {
        generator(Basis::H, l - i + j).sub(&generator(Basis::H, l - i - j))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    #[test]
    fn small_schur_functions() {
        assert_eq!(schur(&[2]), SymFunc::h(2));
        assert_eq!(schur(&[1, 1]).to_basis(Basis::E), SymFunc::e(2));
        let expect = SymFunc::h(2).mul(&SymFunc::h(1)).sub(&SymFunc::h(3));
        assert_eq!(schur(&[2, 1]), expect);
        assert_eq!(schur(&[]), SymFunc::one(Basis::H));
    }

    #[test]
    fn symplectic_and_orthogonal_examples() {
        assert_eq!(schur_symplectic(&[1]).to_basis(Basis::H), SymFunc::h(1));
        assert_eq!(schur_symplectic(&[1, 1]), SymFunc::e(2).sub(&SymFunc::rational(int(1))));
        assert_eq!(schur_symplectic(&[2]).to_basis(Basis::H), SymFunc::h(2));
        assert_eq!(schur_orthogonal(&[2]), SymFunc::h(2).sub(&SymFunc::rational(int(1))));
        assert_eq!(schur_orthogonal(&[1, 1]).to_basis(Basis::E), SymFunc::e(2));
    }
}
