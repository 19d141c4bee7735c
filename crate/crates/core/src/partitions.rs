//! Partitions, labeled shapes and merge patterns between a configuration of
//! "vanishing" points (labels `A`) and one of "singular" points (labels `B`).

use crate::arith::factorial;
use crate::symfunc::{eval_at_adams, AdamsCharacter, Basis, SymFunc};
use crate::ring::QAlgebra;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Integer partition with parts in weakly decreasing order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// Parses `2,1,1` (empty string or `0` for the empty partition).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" || s == "()" {
            return Ok(Partition::empty());
        }
        let parts = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::InvalidPartition(s.to_string())))
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn conjugate(&self) -> Partition {
        Partition { parts: conjugate(&self.parts) }
    }

    /// Number of distinct orderings of the parts, `r! / prod m_j!`.
    pub fn arrangements(&self) -> BigInt {
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for &p in &self.parts {
            *counts.entry(p).or_insert(0) += 1;
        }
        let denom: BigInt = counts.values().map(|&m| factorial(m)).product();
        factorial(self.parts.len() as u32) / denom
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", p.join(","))
    }
}

pub fn conjugate(parts: &[u32]) -> Vec<u32> {
    let max = parts.iter().copied().max().unwrap_or(0);
    (1..=max).map(|i| parts.iter().filter(|&&p| p >= i).count() as u32).collect()
}

/// Partitions of exactly `n`, each as a weakly decreasing vector.
pub fn partitions_of(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `max_size`, including the empty one,
/// ordered by size.
pub fn enumerate_partitions(max_size: u32) -> Vec<Partition> {
    (0..=max_size)
        .flat_map(partitions_of)
        .map(|parts| Partition { parts })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Label {
    A(u32),
    B(u32),
    AB(u32, u32),
}

impl Label {
    pub fn is_pure_a(&self) -> bool {
        matches!(self, Label::A(_))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::A(i) => write!(f, "A{i}"),
            Label::B(j) => write!(f, "B{j}"),
            Label::AB(i, j) => write!(f, "(A{i}B{j})"),
        }
    }
}

/// Generalized partition: distinct labels, each carrying a multiplicity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct LabeledShape {
    parts: BTreeMap<Label, u32>,
}

impl LabeledShape {
    pub fn new<I: IntoIterator<Item = (Label, u32)>>(parts: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (l, m) in parts {
            if m == 0 {
                return Err(Error::InvalidPartition(format!("{l} has multiplicity 0")));
            }
            if map.insert(l, m).is_some() {
                return Err(Error::InvalidPartition(format!("label {l} repeated")));
            }
        }
        Ok(LabeledShape { parts: map })
    }

    /// `A1^{m_1} A2^{m_2} ...` from a list of multiplicities.
    pub fn vanishing(mults: &[u32]) -> Result<Self> {
        LabeledShape::new(mults.iter().enumerate().map(|(i, &m)| (Label::A(i as u32 + 1), m)))
    }

    /// `k` distinct points `A1 ... Ak`.
    pub fn distinct_points(k: u32) -> Self {
        LabeledShape::vanishing(&vec![1; k as usize]).expect("positive multiplicities")
    }

    pub fn parts(&self) -> &BTreeMap<Label, u32> {
        &self.parts
    }

    /// Total point count `|gamma|`.
    pub fn points(&self) -> u32 {
        self.parts.values().sum()
    }

    /// Points carried by pure `A` labels.
    pub fn a_points(&self) -> u32 {
        self.parts.iter().filter(|(l, _)| l.is_pure_a()).map(|(_, m)| m).sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.parts.values().copied().collect()
    }

    pub fn is_vanishing_only(&self) -> bool {
        self.parts.keys().all(Label::is_pure_a)
    }

    pub fn canonical(&self) -> String {
        if self.parts.is_empty() {
            return "1".to_string();
        }
        let v: Vec<String> = self.parts.iter().map(|(l, m)| format!("{l}^{m}")).collect();
        v.join("*")
    }
}

impl fmt::Display for LabeledShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// A merge matrix between the parts of `alpha` and the parts of `beta`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OverlapPattern {
    pub a_labels: Vec<u32>,
    pub merge: Vec<Vec<u32>>,
    pub a_residual: Vec<u32>,
    pub b_residual: Vec<u32>,
}

impl OverlapPattern {
    pub fn shape(&self) -> LabeledShape {
        let mut parts = Vec::new();
        for (i, &r) in self.a_residual.iter().enumerate() {
            if r > 0 {
                parts.push((Label::A(self.a_labels[i]), r));
            }
        }
        for (j, &s) in self.b_residual.iter().enumerate() {
            if s > 0 {
                parts.push((Label::B(j as u32 + 1), s));
            }
        }
        for (i, row) in self.merge.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                if m > 0 {
                    parts.push((Label::AB(self.a_labels[i], j as u32 + 1), m));
                }
            }
        }
        LabeledShape::new(parts).expect("labels are distinct by construction")
    }
}

/// Every merge matrix `M >= 0` whose row sums are bounded by the
/// multiplicities of `alpha` and whose column sums are bounded by the parts
/// of `beta`. `beta`'s parts become `B1, B2, ...` in order.
pub fn overlap_patterns(alpha: &LabeledShape, beta: &Partition) -> Result<Vec<OverlapPattern>> {
    if !alpha.is_vanishing_only() {
        return Err(Error::InvalidPartition(format!("{alpha} must only carry A labels")));
    }
    let a_labels: Vec<u32> = alpha
        .parts
        .keys()
        .map(|l| match l {
            Label::A(i) => *i,
            _ => unreachable!(),
        })
        .collect();
    let rows: Vec<u32> = alpha.parts.values().copied().collect();
    let cols: Vec<u32> = beta.parts().to_vec();
    let (r, c) = (rows.len(), cols.len());
    let mut out = Vec::new();
    let mut merge = vec![vec![0u32; c]; r];
    let mut row_left = rows.clone();
    let mut col_left = cols.clone();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        cell: usize,
        r: usize,
        c: usize,
        merge: &mut Vec<Vec<u32>>,
        row_left: &mut Vec<u32>,
        col_left: &mut Vec<u32>,
        a_labels: &[u32],
        out: &mut Vec<OverlapPattern>,
    ) {
        if cell == r * c {
            out.push(OverlapPattern {
                a_labels: a_labels.to_vec(),
                merge: merge.clone(),
                a_residual: row_left.clone(),
                b_residual: col_left.clone(),
            });
            return;
        }
        let (i, j) = (cell / c, cell % c);
        let cap = row_left[i].min(col_left[j]);
        for m in 0..=cap {
            merge[i][j] = m;
            row_left[i] -= m;
            col_left[j] -= m;
            rec(cell + 1, r, c, merge, row_left, col_left, a_labels, out);
            row_left[i] += m;
            col_left[j] += m;
        }
        merge[i][j] = 0;
    }
    rec(0, r, c, &mut merge, &mut row_left, &mut col_left, &a_labels, &mut out);
    Ok(out)
}

/// The shapes of [`overlap_patterns`], sorted by canonical form.
pub fn overlaps(alpha: &LabeledShape, beta: &Partition) -> Result<Vec<LabeledShape>> {
    let mut v: Vec<LabeledShape> = overlap_patterns(alpha, beta)?.iter().map(OverlapPattern::shape).collect();
    v.sort_by_key(|s| s.canonical());
    v.dedup();
    Ok(v)
}

/// Number of linear conditions imposed by a configuration of shape `gamma`:
/// one per vanishing point, `n + 1` per singular point.
pub fn c_weight(gamma: &LabeledShape, n: u32) -> u64 {
    let a = gamma.a_points() as u64;
    let rest = (gamma.points() - gamma.a_points()) as u64;
    a + rest * (n as u64 + 1)
}

fn cache() -> &'static Mutex<HashMap<Vec<u32>, SymFunc>> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<u32>, SymFunc>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The class `c_gamma`: coefficient of `prod_j t_j^{m_j}` in
/// `prod_k (1 + sum_j t_j^k)^{p'_k}`, in the binomial `p'` basis.
/// Depends only on the multiset of multiplicities.
pub fn shape_to_symfunc(gamma: &LabeledShape) -> SymFunc {
    let mut mults = gamma.multiplicities();
    mults.sort_unstable();
    if let Some(v) = cache().lock().unwrap().get(&mults) {
        return v.clone();
    }
    let v = config_class(&mults);
    cache().lock().unwrap().insert(mults, v.clone());
    v
}

/// For each `k` pick a vector `i_{k,j}` of how many degree-`k` closed points
/// land in part `j`; such a choice contributes
/// `prod_k multinomial(i_k; i_{k,.}) binom(p'_k, i_k)`.
fn config_class(mults: &[u32]) -> SymFunc {
    let maxk = mults.iter().copied().max().unwrap_or(0);
    let mut memo: HashMap<(u32, Vec<u32>), Vec<(Vec<u32>, BigInt)>> = HashMap::new();

    fn rec(
        k: u32,
        maxk: u32,
        rem: Vec<u32>,
        memo: &mut HashMap<(u32, Vec<u32>), Vec<(Vec<u32>, BigInt)>>,
    ) -> Vec<(Vec<u32>, BigInt)> {
        if rem.iter().all(|&x| x == 0) {
            return vec![(Vec::new(), BigInt::from(1))];
        }
        if k > maxk {
            return Vec::new();
        }
        let mut key_rem = rem.clone();
        key_rem.sort_unstable();
        if let Some(v) = memo.get(&(k, key_rem.clone())) {
            return v.clone();
        }
        let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        let mut choice = vec![0u32; rem.len()];
        loop {
            let total: u32 = choice.iter().sum();
            let next: Vec<u32> = rem.iter().zip(&choice).map(|(r, i)| r - k * i).collect();
            let sub = rec(k + 1, maxk, next, memo);
            if !sub.is_empty() {
                let multinom: BigInt =
                    factorial(total) / choice.iter().map(|&i| factorial(i)).product::<BigInt>();
                for (suffix, c) in sub {
                    let mut idx = vec![0u32; k as usize - 1];
                    idx.push(total);
                    // suffix entries are for k+1, k+2, ...
                    idx.extend(suffix.iter().skip(k as usize));
                    let e = acc.entry(idx).or_insert_with(|| BigInt::from(0));
                    *e += &multinom * c;
                }
            }
            // odometer over 0 <= choice_j <= rem_j / k
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    let out: Vec<(Vec<u32>, BigInt)> = acc.into_iter().collect();
                    memo.insert((k, key_rem), out.clone());
                    return out;
                }
                if (choice[pos] + 1) * k <= rem[pos] {
                    choice[pos] += 1;
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    let terms = rec(1, maxk, mults.to_vec(), &mut memo);
    SymFunc::from_terms(
        Basis::PPrimeBinomial,
        terms.into_iter().map(|(i, c)| (i, BigRational::from_integer(c))),
    )
}

/// `[Conf^gamma Y]` under an Adams character of `Y`.
pub fn conf_count<R: QAlgebra>(gamma: &LabeledShape, chi: &AdamsCharacter<R>) -> Result<R> {
    eval_at_adams(&shape_to_symfunc(gamma), chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    #[test]
    fn partition_counts() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(2).len(), 4);
        assert_eq!(enumerate_partitions(5).len(), 19);
        let p = Partition::parse("1,2,1").unwrap();
        assert_eq!(p.parts(), &[2, 1, 1]);
        assert_eq!(p.arrangements(), BigInt::from(3));
        assert!(Partition::parse("2,x").is_err());
        assert_eq!(conjugate(&[3, 1]), vec![2, 1, 1]);
    }

    #[test]
    fn overlap_examples() {
        let a1 = LabeledShape::distinct_points(1);
        let beta = Partition::new(vec![1]).unwrap();
        let v: Vec<String> = overlaps(&a1, &beta).unwrap().iter().map(|s| s.canonical()).collect();
        assert_eq!(v, vec!["(A1B1)^1", "A1^1*B1^1"]);

        let a12 = LabeledShape::distinct_points(2);
        assert_eq!(overlaps(&a12, &beta).unwrap().len(), 3);

        let a1sq = LabeledShape::vanishing(&[2]).unwrap();
        let beta2 = Partition::new(vec![2]).unwrap();
        let v: Vec<String> = overlaps(&a1sq, &beta2).unwrap().iter().map(|s| s.canonical()).collect();
        assert_eq!(v, vec!["(A1B1)^2", "A1^1*B1^1*(A1B1)^1", "A1^2*B1^2"]);
    }

    #[test]
    fn weights() {
        let g = LabeledShape::new([(Label::A(1), 1), (Label::B(1), 1)]).unwrap();
        assert_eq!(c_weight(&g, 2), 4);
        let g = LabeledShape::new([(Label::AB(1, 1), 1)]).unwrap();
        assert_eq!(c_weight(&g, 2), 3);
        let g = LabeledShape::new([(Label::A(1), 2), (Label::B(1), 2)]).unwrap();
        assert_eq!(c_weight(&g, 2), 8);
    }

    #[test]
    fn configuration_classes() {
        let one = shape_to_symfunc(&LabeledShape::distinct_points(1));
        assert_eq!(one.to_basis(Basis::P), SymFunc::p(1));
        let two = shape_to_symfunc(&LabeledShape::distinct_points(2));
        let expect = SymFunc::p(1).pow(2).sub(&SymFunc::p(1));
        assert_eq!(two.to_basis(Basis::P), expect);
        let double = shape_to_symfunc(&LabeledShape::vanishing(&[2]).unwrap());
        let expect = SymFunc::pprime_binomial(1, 2).add(&SymFunc::pprime_binomial(2, 1));
        assert_eq!(double, expect);
        let chi = AdamsCharacter::from_fn(4, |k| int(2i64.pow(k) + 1));
        assert_eq!(conf_count(&LabeledShape::vanishing(&[2]).unwrap(), &chi).unwrap(), int(4));
    }

    #[test]
    fn repeated_labels_rejected() {
        assert!(LabeledShape::new([(Label::A(1), 1), (Label::A(1), 2)]).is_err());
        assert!(LabeledShape::new([(Label::A(1), 0)]).is_err());
        let bad = LabeledShape::new([(Label::B(1), 1)]).unwrap();
        assert!(overlaps(&bad, &Partition::empty()).is_err());
    }
}
