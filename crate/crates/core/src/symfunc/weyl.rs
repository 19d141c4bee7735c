//! Dimensions of irreducible representations of the classical groups, from
//! the Weyl dimension formula. Used as an independent check on the
//! universal characters: evaluating `p_k -> N` for every `k` gives the
//! dimension of the representation of the group acting on `N`-space.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClassicalGroup {
    /// `GL_r`.
    General,
    /// `Sp(2r)`.
    Symplectic,
    /// `O(2r + 1)`.
    OddOrthogonal,
    /// `O(2r)`.
    EvenOrthogonal,
}

impl ClassicalGroup {
    pub const ALL: [ClassicalGroup; 4] = [
        ClassicalGroup::General,
        ClassicalGroup::Symplectic,
        ClassicalGroup::OddOrthogonal,
        ClassicalGroup::EvenOrthogonal,
    ];

    /// Dimension of the standard representation of the rank `r` group.
    pub fn standard_dim(self, rank: u32) -> u32 {
        match self {
            ClassicalGroup::General => rank,
            ClassicalGroup::Symplectic | ClassicalGroup::EvenOrthogonal => 2 * rank,
            ClassicalGroup::OddOrthogonal => 2 * rank + 1,
        }
    }

    pub fn name(self, rank: u32) -> String {
        let n = self.standard_dim(rank);
        match self {
            ClassicalGroup::General => format!("GL({n})"),
            ClassicalGroup::Symplectic => format!("Sp({n})"),
            _ => format!("O({n})"),
        }
    }
}

fn r(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Dimension of the irreducible representation with highest weight `sigma`
/// (at most `rank` parts). For `O(2r)` with `r` nonzero parts this is the
/// sum of the two conjugate `SO(2r)` representations.
pub fn weyl_dimension(group: ClassicalGroup, rank: u32, sigma: &[u32]) -> Result<BigInt> {
    let rank = rank as usize;
    if sigma.len() > rank {
        return Err(Error::InvalidPartition(format!("{sigma:?} has more than {rank} parts")));
    }
    let mut l: Vec<i64> = sigma.iter().map(|&x| x as i64).collect();
    l.sort_unstable_by(|a, b| b.cmp(a));
    l.resize(rank, 0);
    let rr = rank as i64;
    // shifted weights m = l + rho and rho, both doubled for O(2r + 1)
    let (m, rho): (Vec<i64>, Vec<i64>) = (0..rank)
        .map(|i| {
            let i = i as i64;
            match group {
                ClassicalGroup::General => (l[i as usize] + rr - 1 - i, rr - 1 - i),
                ClassicalGroup::Symplectic => (l[i as usize] + rr - i, rr - i),
                ClassicalGroup::OddOrthogonal => (2 * (l[i as usize] + rr - i) - 1, 2 * (rr - i) - 1),
                ClassicalGroup::EvenOrthogonal => (l[i as usize] + rr - 1 - i, rr - 1 - i),
            }
        })
        .unzip();
    let mut dim = BigRational::one();
    for i in 0..rank {
        for j in i + 1..rank {
            dim *= r(m[i] - m[j]) / r(rho[i] - rho[j]);
            if group != ClassicalGroup::General {
                dim *= r(m[i] + m[j]) / r(rho[i] + rho[j]);
            }
        }
        if matches!(group, ClassicalGroup::Symplectic | ClassicalGroup::OddOrthogonal) {
            dim *= r(m[i]) / r(rho[i]);
        }
    }
    if group == ClassicalGroup::EvenOrthogonal && rank > 0 && l[rank - 1] > 0 {
        dim *= r(2);
    }
    debug_assert!(dim.is_integer());
    Ok(dim.to_integer())
}
