use super::laurent::LaurentL;
use crate::arith::{divisors, mobius};
use crate::ring::{QAlgebra, Ring};
use crate::symfunc::AdamsCharacter;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::path::Path;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Presentation {
    /// `cells[i]` is the number of affine cells of dimension `i`.
    Cellular(Vec<u32>),
    /// `counts[k-1] = #Y(F_{q^k})` for `k = 1..=K`.
    PointCounts { q: u64, counts: Vec<BigInt> },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarietyProfile {
    pub name: String,
    pub dim: u32,
    pub presentation: Presentation,
}

impl VarietyProfile {
    pub fn cellular(name: &str, cells: Vec<u32>) -> Result<Self> {
        let mut cells = cells;
        while cells.last() == Some(&0) {
            cells.pop();
        }
        if cells.is_empty() {
            return Err(Error::InvalidProfile(format!("{name}: no cells")));
        }
        Ok(VarietyProfile { name: name.to_string(), dim: cells.len() as u32 - 1, presentation: Presentation::Cellular(cells) })
    }

    pub fn projective_space(n: u32) -> Self {
        VarietyProfile::cellular(&format!("P{n}"), vec![1; n as usize + 1]).expect("nonempty")
    }

    pub fn point() -> Self {
        VarietyProfile::cellular("point", vec![1]).expect("nonempty")
    }

    /// Product of two cellular profiles.
    pub fn product(a: &VarietyProfile, b: &VarietyProfile) -> Result<Self> {
        let (ca, cb) = match (&a.presentation, &b.presentation) {
            (Presentation::Cellular(x), Presentation::Cellular(y)) => (x, y),
            _ => return Err(Error::InvalidProfile("products need cellular profiles".into())),
        };
        let mut cells = vec![0u32; ca.len() + cb.len() - 1];
        for (i, x) in ca.iter().enumerate() {
            for (j, y) in cb.iter().enumerate() {
                cells[i + j] += x * y;
            }
        }
        VarietyProfile::cellular(&format!("{}x{}", a.name, b.name), cells)
    }

    /// Profile given by point counts over `F_{q^k}`; the implied closed-point
    /// counts must be non-negative integers.
    pub fn from_point_counts(name: &str, dim: u32, q: u64, counts: Vec<BigInt>) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidProfile(format!("{name}: q = {q}")));
        }
        let p = VarietyProfile { name: name.to_string(), dim, presentation: Presentation::PointCounts { q, counts } };
        for k in 1..=p.bound().unwrap_or(0) {
            let a = p.closed_points_at(q, k)?;
            if a.is_negative() {
                return Err(Error::InvalidProfile(format!("{name}: {a} closed points of degree {k}")));
            }
        }
        Ok(p)
    }

    /// `P<n>`, `P1xP1`, `point`.
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "point" | "pt" => Ok(VarietyProfile::point()),
            "P1xP1" => {
                let p1 = VarietyProfile::projective_space(1);
                let mut v = VarietyProfile::product(&p1, &p1)?;
                v.name = "P1xP1".into();
                Ok(v)
            }
            _ => {
                let n = name
                    .strip_prefix('P')
                    .and_then(|t| t.parse::<u32>().ok())
                    .ok_or_else(|| Error::InvalidProfile(format!("unknown profile {name}")))?;
                Ok(VarietyProfile::projective_space(n))
            }
        }
    }

    /// Parses a line-oriented `key = value` description:
    ///
    /// ```text
    /// name = P2
    /// dim = 2
    /// cells = 1,1,1
    /// ```
    ///
    /// or, for point-count data, `q = 2` and `points = 7,21,73`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut dim = None;
        let mut cells = None;
        let mut q = None;
        let mut points = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            let list = |v: &str| -> Result<Vec<String>> {
                Ok(v.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect())
            };
            let bad = |what: &str| Error::Parse(format!("line {}: bad {what}", lineno + 1));
            match k {
                "name" => name = Some(v.to_string()),
                "dim" => dim = Some(v.parse::<u32>().map_err(|_| bad("dim"))?),
                "q" => q = Some(v.parse::<u64>().map_err(|_| bad("q"))?),
                "cells" => {
                    cells = Some(
                        list(v)?.iter().map(|t| t.parse::<u32>().map_err(|_| bad("cells"))).collect::<Result<Vec<_>>>()?,
                    )
                }
                "points" => {
                    points = Some(
                        list(v)?
                            .iter()
                            .map(|t| t.parse::<BigInt>().map_err(|_| bad("points")))
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                other => return Err(Error::Parse(format!("line {}: unknown key {other}", lineno + 1))),
            }
        }
        let name = name.unwrap_or_else(|| "Y".to_string());
        match (cells, points) {
            (Some(c), None) => {
                let p = VarietyProfile::cellular(&name, c)?;
                if let Some(d) = dim {
                    if d != p.dim {
                        return Err(Error::InvalidProfile(format!("{name}: dim {d} but cells give {}", p.dim)));
                    }
                }
                Ok(p)
            }
            (None, Some(pts)) => {
                let q = q.ok_or_else(|| Error::Parse("point counts need q".into()))?;
                let dim = dim.ok_or_else(|| Error::Parse("point counts need dim".into()))?;
                VarietyProfile::from_point_counts(&name, dim, q, pts)
            }
            _ => Err(Error::Parse("exactly one of cells / points is required".into())),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        VarietyProfile::parse(&text)
    }

    /// `None` for cellular profiles (all Adams values are available).
    pub fn bound(&self) -> Option<u32> {
        match &self.presentation {
            Presentation::Cellular(_) => None,
            Presentation::PointCounts { counts, .. } => Some(counts.len() as u32),
        }
    }

    pub fn is_cellular(&self) -> bool {
        matches!(self.presentation, Presentation::Cellular(_))
    }

    /// The field size of point-count data.
    pub fn native_q(&self) -> Option<u64> {
        match &self.presentation {
            Presentation::Cellular(_) => None,
            Presentation::PointCounts { q, .. } => Some(*q),
        }
    }

    /// The class `[Y]` of a cellular profile.
    pub fn class(&self) -> Result<LaurentL> {
        self.adams(1)
    }

    /// `psi^k [Y] = sum over cells of L^{k dim}`.
    pub fn adams(&self, k: u32) -> Result<LaurentL> {
        match &self.presentation {
            Presentation::Cellular(cells) => Ok(LaurentL::from_terms(
                cells.iter().enumerate().map(|(i, &c)| ((i as i64) * k as i64, BigRational::from_integer(c.into()))),
            )),
            Presentation::PointCounts { .. } => {
                Err(Error::InvalidProfile(format!("{} has no motivic presentation", self.name)))
            }
        }
    }

    fn check_q(&self, q: u64) -> Result<()> {
        match self.native_q() {
            Some(nq) if nq != q => {
                Err(Error::ParameterMismatch(format!("{} is given over F_{nq}, not F_{q}", self.name)))
            }
            _ => Ok(()),
        }
    }

    /// `#Y(F_{q^k})`.
    pub fn adams_at(&self, q: u64, k: u32) -> Result<BigRational> {
        self.check_q(q)?;
        match &self.presentation {
            Presentation::Cellular(_) => Ok(self.adams(k)?.eval_int(q)),
            Presentation::PointCounts { counts, .. } => counts
                .get(k as usize - 1)
                .map(|c| BigRational::from_integer(c.clone()))
                .ok_or(Error::InsufficientAdamsData { needed: k, bound: counts.len() as u32 }),
        }
    }

    /// Motivic closed-point class `N_k = (1/k) sum_{d|k} mu(k/d) psi^d [Y]`.
    pub fn closed_points(&self, k: u32) -> Result<LaurentL> {
        let mut acc = LaurentL::zero();
        for d in divisors(k) {
            let mu = mobius(k / d);
            if mu != 0 {
                acc = acc.add(&self.adams(d)?.scale(&BigRational::from_integer(mu.into())));
            }
        }
        Ok(acc.scale(&BigRational::new(1.into(), k.into())))
    }

    /// Number of closed points of degree `k` over `F_q`.
    pub fn closed_points_at(&self, q: u64, k: u32) -> Result<BigInt> {
        let mut acc = BigRational::zero();
        for d in divisors(k) {
            let mu = mobius(k / d);
            if mu != 0 {
                acc += self.adams_at(q, d)? * BigRational::from_integer(mu.into());
            }
        }
        let v = acc / BigRational::from_integer(k.into());
        if !v.is_integer() {
            return Err(Error::InvalidProfile(format!("{}: non-integral closed point count {v} at k = {k}", self.name)));
        }
        Ok(v.to_integer())
    }

    /// Point-count Adams character `k -> #Y(F_{q^k})`, `k <= bound`.
    pub fn point_character(&self, q: u64, bound: u32) -> Result<AdamsCharacter<BigRational>> {
        let vals = (1..=bound).map(|k| self.adams_at(q, k)).collect::<Result<Vec<_>>>()?;
        Ok(AdamsCharacter::new(vals))
    }

    pub fn motivic_character(&self, bound: u32) -> Result<AdamsCharacter<LaurentL>> {
        let vals = (1..=bound).map(|k| self.adams(k)).collect::<Result<Vec<_>>>()?;
        Ok(AdamsCharacter::new(vals))
    }

    /// Checks `a_k >= 0` and integrality for `k <= bound` at `q`.
    pub fn validate(&self, q: u64, bound: u32) -> Result<()> {
        for k in 1..=bound {
            let a = self.closed_points_at(q, k)?;
            if a.is_negative() {
                return Err(Error::InvalidProfile(format!("{}: a_{k} = {a}", self.name)));
            }
        }
        Ok(())
    }

    /// Cells as `(dimension, count)` pairs.
    pub fn cells(&self) -> Option<Vec<(u32, u32)>> {
        match &self.presentation {
            Presentation::Cellular(c) => {
                Some(c.iter().enumerate().filter(|(_, &n)| n > 0).map(|(i, &n)| (i as u32, n)).collect())
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    #[test]
    fn adams_examples() {
        let p2 = VarietyProfile::projective_space(2);
        assert_eq!(p2.adams(2).unwrap(), LaurentL::from_terms([(0, int(1)), (2, int(1)), (4, int(1))]));
        let p1 = VarietyProfile::projective_space(1);
        assert_eq!(p1.adams_at(2, 3).unwrap(), int(9));
        let p1p1 = VarietyProfile::builtin("P1xP1").unwrap();
        let expect = LaurentL::projective_space(1).mul(&LaurentL::projective_space(1));
        assert_eq!(p1p1.adams(1).unwrap(), expect);
    }

    #[test]
    fn closed_point_examples() {
        let p1 = VarietyProfile::projective_space(1);
        let a: Vec<BigInt> = (1..=3).map(|k| p1.closed_points_at(2, k).unwrap()).collect();
        assert_eq!(a, vec![3.into(), 1.into(), 2.into()]);
        let p2 = VarietyProfile::projective_space(2);
        assert_eq!(p2.closed_points_at(2, 2).unwrap(), BigInt::from(7));
        assert_eq!(p2.closed_points(1).unwrap(), p2.class().unwrap());
    }

    #[test]
    fn parse_profiles() {
        let p = VarietyProfile::parse("name = P2\ndim = 2\ncells = 1, 1, 1 # plane\n").unwrap();
        assert_eq!(p, VarietyProfile::projective_space(2));
        let c = VarietyProfile::parse("name = E\ndim = 1\nq = 2\npoints = 5, 5\n").unwrap();
        assert_eq!(c.closed_points_at(2, 2).unwrap(), BigInt::from(0));
        assert!(VarietyProfile::parse("dim = 1\nq = 2\npoints = 3, 1\n").is_err());
        assert!(VarietyProfile::parse("cells = 1\nfoo = 2\n").is_err());
        assert!(c.adams_at(3, 1).is_err());
        assert!(c.adams_at(2, 3).is_err());
    }
}
