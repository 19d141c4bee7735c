//! Census results and their comparison with limiting predictions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::ring::to_f64;
use crate::symfunc::{eval_at_adams, AdamsCharacter, SymFunc};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub q: u32,
    pub n: u32,
    pub d: u32,
    pub k: u32,
    pub total: u64,
    pub smooth: u64,
    /// `(a_1, ..., a_K)` to the number of smooth forms with those closed-point counts.
    pub histogram: BTreeMap<Vec<u32>, u64>,
}

fn ratio(a: impl Into<BigInt>, b: impl Into<BigInt>) -> BigRational {
    BigRational::new(a.into(), b.into())
}

impl CensusReport {
    pub fn smooth_fraction(&self) -> BigRational {
        ratio(self.smooth, self.total)
    }

    /// Average of `stat(a_1, ..., a_K)` over smooth forms.
    pub fn mean_of<F: Fn(&[u32]) -> BigRational>(&self, stat: F) -> BigRational {
        if self.smooth == 0 {
            return BigRational::zero();
        }
        let mut acc = BigRational::zero();
        for (a, &m) in &self.histogram {
            acc += stat(a) * BigRational::from_integer(m.into());
        }
        acc / BigRational::from_integer(self.smooth.into())
    }

    /// `E[a_k]`.
    pub fn mean_closed_points(&self, k: u32) -> Result<BigRational> {
        self.check_degree(k)?;
        Ok(self.mean_of(|a| BigRational::from_integer(a[k as usize - 1].into())))
    }

    /// `E[a_i a_j] - E[a_i] E[a_j]`.
    pub fn covariance(&self, i: u32, j: u32) -> Result<BigRational> {
        self.check_degree(i.max(j))?;
        let (i, j) = (i as usize - 1, j as usize - 1);
        let int = |x: u32| BigRational::from_integer(x.into());
        let eij = self.mean_of(|a| int(a[i]) * int(a[j]));
        let ei = self.mean_of(|a| int(a[i]));
        let ej = self.mean_of(|a| int(a[j]));
        Ok(eij - ei * ej)
    }

    fn check_degree(&self, degree: u32) -> Result<()> {
        if degree == 0 || degree > self.k {
            return Err(Error::DegreeExceedsBound { degree, bound: self.k });
        }
        Ok(())
    }

    /// Point-count character of a histogram row: `p_k = sum_{e | k} e a_e`.
    pub fn character(&self, a: &[u32]) -> AdamsCharacter<BigRational> {
        AdamsCharacter::from_fn(self.k, |k| {
            let s: u64 = crate::arith::divisors(k).into_iter().map(|e| e as u64 * a[e as usize - 1] as u64).sum();
            BigRational::from_integer(s.into())
        })
    }

    /// Exact average of `f` evaluated on the Frobenius character of each smooth fiber.
    pub fn empirical_expectation(&self, f: &SymFunc) -> Result<BigRational> {
        if self.smooth == 0 {
            return Ok(BigRational::zero());
        }
        let mut acc = BigRational::zero();
        for (a, &m) in &self.histogram {
            let v = eval_at_adams(f, &self.character(a)).map_err(|e| match e {
                Error::InsufficientAdamsData { needed, bound } => Error::DegreeExceedsBound { degree: needed, bound },
                other => other,
            })?;
            acc += v * BigRational::from_integer(m.into());
        }
        Ok(acc / BigRational::from_integer(self.smooth.into()))
    }

    /// One statistic per row: `statistic,exact,approx`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("statistic,exact,approx\n");
        let mut row = |name: &str, v: &BigRational| {
            out.push_str(&format!("{name},{v},{:.6}\n", to_f64(v)));
        };
        for (name, v) in [("q", self.q), ("n", self.n), ("d", self.d), ("K", self.k)] {
            row(name, &BigRational::from_integer(v.into()));
        }
        row("total", &BigRational::from_integer(self.total.into()));
        row("smooth", &BigRational::from_integer(self.smooth.into()));
        row("smooth_fraction", &self.smooth_fraction());
        for k in 1..=self.k {
            row(&format!("E[a_{k}]"), &self.mean_closed_points(k).unwrap());
        }
        let int = |x: u32| BigRational::from_integer(x.into());
        row("E[a_1(a_1-1)]", &self.mean_of(|a| int(a[0]) * (int(a[0]) - int(1))));
        if self.k >= 2 {
            row("Cov[a_1,a_2]", &self.covariance(1, 2).unwrap());
        }
        for (a, m) in &self.histogram {
            let key: Vec<String> = a.iter().map(u32::to_string).collect();
            row(&format!("count[{}]", key.join(";")), &BigRational::from_integer((*m).into()));
        }
        out
    }
}

impl fmt::Display for CensusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "census q={} n={} d={} K={}", self.q, self.n, self.d, self.k)?;
        writeln!(f, "  forms           {}", self.total)?;
        writeln!(f, "  smooth          {} ({:.6})", self.smooth, to_f64(&self.smooth_fraction()))?;
        for k in 1..=self.k {
            let m = self.mean_closed_points(k).unwrap();
            writeln!(f, "  E[a_{k}]          {:<12.6} = {m}", to_f64(&m))?;
        }
        writeln!(f, "  histogram ({} cells)", self.histogram.len())?;
        for (a, m) in &self.histogram {
            let key: Vec<String> = a.iter().map(u32::to_string).collect();
            writeln!(f, "    ({}) {m}", key.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum Statistic {
    SmoothFraction,
    SmoothCount,
    Expectation { label: String, f: SymFunc },
    Covariance(u32, u32),
}

impl Statistic {
    pub fn label(&self) -> String {
        match self {
            Statistic::SmoothFraction => "smooth fraction".into(),
            Statistic::SmoothCount => "smooth count".into(),
            Statistic::Expectation { label, .. } => format!("E[{label}]"),
            Statistic::Covariance(i, j) => format!("Cov[a_{i},a_{j}]"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tolerance {
    Exact,
    Abs(f64),
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Exact => write!(f, "exact"),
            Tolerance::Abs(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Prediction {
    pub q: u32,
    pub n: u32,
    pub statistic: Statistic,
    pub predicted: BigRational,
    pub tolerance: Tolerance,
}

#[derive(Clone, Debug)]
pub struct DeviationRow {
    pub statistic: String,
    pub empirical: BigRational,
    pub predicted: BigRational,
    pub deviation: BigRational,
    pub tolerance: Tolerance,
    pub pass: bool,
}

#[derive(Clone, Debug, Default)]
pub struct DeviationTable {
    pub rows: Vec<DeviationRow>,
}

impl DeviationTable {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("statistic,empirical,predicted,deviation,tolerance,status\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{:.6},{},{}\n",
                r.statistic,
                r.empirical,
                r.predicted,
                to_f64(&r.deviation),
                r.tolerance,
                if r.pass { "pass" } else { "fail" }
            ));
        }
        out
    }
}

impl fmt::Display for DeviationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<24} {:>12} {:>12} {:>10} {:>8}  status", "statistic", "empirical", "predicted", "|delta|", "tol")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<24} {:>12.6} {:>12.6} {:>10.6} {:>8}  {}",
                r.statistic,
                to_f64(&r.empirical),
                to_f64(&r.predicted),
                to_f64(&r.deviation),
                r.tolerance.to_string(),
                if r.pass { "PASS" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Compare census statistics against predicted limits.
pub fn compare(report: &CensusReport, predictions: &[Prediction]) -> Result<DeviationTable> {
    let mut rows = Vec::new();
    for p in predictions {
        if p.q != report.q || p.n != report.n {
            return Err(Error::ParameterMismatch(format!(
                "prediction for (q={}, n={}) against census (q={}, n={})",
                p.q, p.n, report.q, report.n
            )));
        }
        let empirical = match &p.statistic {
            Statistic::SmoothFraction => report.smooth_fraction(),
            Statistic::SmoothCount => BigRational::from_integer(report.smooth.into()),
            Statistic::Expectation { f, .. } => report.empirical_expectation(f)?,
            Statistic::Covariance(i, j) => report.covariance(*i, *j)?,
        };
        let deviation = (&empirical - &p.predicted).abs();
        let pass = match p.tolerance {
            Tolerance::Exact => deviation.is_zero(),
            Tolerance::Abs(t) => to_f64(&deviation) <= t,
        };
        rows.push(DeviationRow {
            statistic: format!("{} (d={})", p.statistic.label(), report.d),
            empirical,
            predicted: p.predicted.clone(),
            deviation,
            tolerance: p.tolerance,
            pass,
        });
    }
    Ok(DeviationTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{census, CensusOptions};
    use crate::ring::rat;

    #[test]
    fn expectations_for_lines() {
        let r = census(2, 2, 1, 2, &CensusOptions::default()).unwrap();
        assert_eq!(r.empirical_expectation(&SymFunc::p(1)).unwrap(), rat(3, 1));
        assert_eq!(r.empirical_expectation(&SymFunc::rational(rat(1, 1))).unwrap(), rat(1, 1));
        // p_2 counts F_4 points: 5 on every line
        assert_eq!(r.empirical_expectation(&SymFunc::p(2)).unwrap(), rat(5, 1));
        assert_eq!(r.empirical_expectation(&SymFunc::pprime(2)).unwrap(), rat(1, 1));
        assert!(matches!(
            r.empirical_expectation(&SymFunc::p(3)),
            Err(Error::DegreeExceedsBound { degree: 3, bound: 2 })
        ));
        assert_eq!(r.covariance(1, 2).unwrap(), rat(0, 1));
    }

    #[test]
    fn compare_rows_and_mismatch() {
        let r = census(2, 2, 1, 2, &CensusOptions::default()).unwrap();
        let preds = vec![
            Prediction { q: 2, n: 2, statistic: Statistic::SmoothCount, predicted: rat(7, 1), tolerance: Tolerance::Exact },
            Prediction {
                q: 2,
                n: 2,
                statistic: Statistic::Expectation { label: "p_1".into(), f: SymFunc::p(1) },
                predicted: rat(29, 10),
                tolerance: Tolerance::Abs(0.05),
            },
        ];
        let t = compare(&r, &preds).unwrap();
        assert!(t.rows[0].pass);
        assert!(!t.rows[1].pass);
        assert!(t.to_csv().lines().count() == 3);
        let bad = Prediction { q: 3, ..preds[0].clone() };
        assert!(matches!(compare(&r, &[bad]), Err(Error::ParameterMismatch(_))));
    }
}
