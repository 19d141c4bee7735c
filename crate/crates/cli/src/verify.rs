use std::path::Path;

use anyhow::{bail, Result};
use num_traits::{Signed, Zero};

use stablesect::census::{cache, CensusOptions, CensusReport};
use stablesect::grothendieck::{zeta_inverse_at, VarietyProfile};
use stablesect::limits::{
    asymptotic_expectation, compare_conf_limit, falling_moment_p1, verify_power_identity, CoefficientStatus, Side, Value,
};
use stablesect::partitions::enumerate_partitions;
use stablesect::symfunc::{
    eval_at_adams, schur, schur_orthogonal, schur_symplectic, weyl_dimension, AdamsCharacter, ClassicalGroup, SymFunc,
};
use stablesect::BigRational;

use crate::table::{Row, Table};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Poonen,
    Average,
    Independence,
    FallingMoments,
    PowIdent,
    SchurOracle,
    ConfLimit,
}

impl Suite {
    pub const NAMES: [&'static str; 7] =
        ["poonen", "average", "independence", "fallingmoments", "powident", "schur-oracle", "conf-limit"];

    pub fn name(self) -> &'static str {
        Suite::NAMES[self as usize]
    }

    pub fn uses_census(self) -> bool {
        matches!(self, Suite::Poonen | Suite::Average | Suite::Independence | Suite::FallingMoments)
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        const ALL: [Suite; 7] = [
            Suite::Poonen,
            Suite::Average,
            Suite::Independence,
            Suite::FallingMoments,
            Suite::PowIdent,
            Suite::SchurOracle,
            Suite::ConfLimit,
        ];
        ALL.into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}; expected one of {}", Suite::NAMES.join(", ")))
    }
}

/// Resolved parameters of a verify run.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub q: Vec<u32>,
    pub n: u32,
    pub degrees: Vec<u32>,
    pub k: u32,
    pub m: u32,
    pub opts: CensusOptions,
}

pub struct Runner<'a> {
    pub config: &'a VerifyConfig,
    pub cache_dir: &'a Path,
}

fn ratio(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn realized(v: &Value, q: u64) -> Result<BigRational> {
    Ok(v.at(q)?)
}

impl Runner<'_> {
    fn census(&self, q: u32, d: u32, k: u32) -> Result<CensusReport> {
        let c = self.config;
        let (report, hit) = cache::load_or_run(self.cache_dir, q, c.n, d, k.max(c.k), &c.opts)?;
        eprintln!(
            "census q={q} n={} d={d}: {}",
            c.n,
            if hit { "loaded from cache" } else { "computed and cached" }
        );
        Ok(report)
    }

    pub fn run(&self) -> Result<Table> {
        let mut t = Table::default();
        match self.config.suite {
            Suite::Poonen => self.poonen(&mut t)?,
            Suite::Average => self.average(&mut t)?,
            Suite::Independence => self.independence(&mut t)?,
            Suite::FallingMoments => self.falling(&mut t)?,
            Suite::PowIdent => self.power_identity(&mut t)?,
            Suite::SchurOracle => schur_oracle(&mut t)?,
            Suite::ConfLimit => self.conf_limit(&mut t)?,
        }
        Ok(t)
    }

    fn profile(&self) -> VarietyProfile {
        VarietyProfile::projective_space(self.config.n)
    }

    fn poonen(&self, t: &mut Table) -> Result<()> {
        let c = self.config;
        let tol = if c.n == 1 { 0.01 } else { 0.05 };
        for &q in &c.q {
            let target = zeta_inverse_at(&self.profile(), q as u64, c.n as i64 + 1)?;
            let mut devs = Vec::new();
            for &d in &c.degrees {
                let r = self.census(q, d, 1)?;
                let frac = r.smooth_fraction();
                devs.push((d, (&frac - &target).abs()));
                t.push(Row::toleranced(format!("q={q} d={d} smooth fraction vs 1/zeta(n+1)"), &frac, &target, tol));
            }
            if devs.len() >= 2 {
                let (d0, first) = &devs[0];
                let (d1, last) = &devs[devs.len() - 1];
                t.push(Row::exact(
                    format!("q={q} deviation at d={d1} <= deviation at d={d0}"),
                    last,
                    format!("<= {first}"),
                    last <= first,
                ));
            }
        }
        Ok(())
    }

    fn expectation_row(&self, r: &CensusReport, q: u32, label: &str, f: &SymFunc, tol: f64) -> Result<Row> {
        let pred = asymptotic_expectation(f, &self.profile(), self.config.n, Side::Point(q as u64))?;
        let emp = r.empirical_expectation(f)?;
        Ok(Row::toleranced(
            format!("q={q} d={} {label}", r.d),
            &emp,
            &realized(&pred.value, q as u64)?,
            tol,
        ))
    }

    fn average(&self, t: &mut Table) -> Result<()> {
        for &q in &self.config.q {
            for &d in &self.config.degrees {
                let r = self.census(q, d, 2)?;
                t.push(self.expectation_row(&r, q, "E[#Z(F_q)]", &SymFunc::p(1), 0.1)?);
                t.push(self.expectation_row(&r, q, "E[a_2]", &SymFunc::pprime(2), 0.1)?);
            }
        }
        Ok(())
    }

    fn independence(&self, t: &mut Table) -> Result<()> {
        for &q in &self.config.q {
            for &d in &self.config.degrees {
                let r = self.census(q, d, 2)?;
                let cov = r.covariance(1, 2)?;
                t.push(Row::toleranced(format!("q={q} d={d} Cov[a_1, a_2]"), &cov, &BigRational::zero(), 0.15));
            }
        }
        Ok(())
    }

    fn falling(&self, t: &mut Table) -> Result<()> {
        let p1 = SymFunc::p(1);
        for &q in &self.config.q {
            for &d in &self.config.degrees {
                let r = self.census(q, d, 1)?;
                let mut stat = SymFunc::rational(ratio(1));
                for k in 1..=2u32 {
                    stat = stat.mul(&p1.sub(&SymFunc::rational(ratio(k as i64 - 1))));
                    let pred = falling_moment_p1(&self.profile(), self.config.n, k, Side::Point(q as u64))?;
                    let emp = r.empirical_expectation(&stat)?;
                    t.push(Row::toleranced(
                        format!("q={q} d={d} E[(a_1)_{k}]"),
                        &emp,
                        &realized(&pred, q as u64)?,
                        0.1 * k as f64,
                    ));
                }
            }
        }
        Ok(())
    }

    fn power_identity(&self, t: &mut Table) -> Result<()> {
        for n in [1, 2] {
            let profile = VarietyProfile::projective_space(n);
            for &q in &self.config.q {
                for vars in [1, 2] {
                    let rep = verify_power_identity(&profile, q as u64, vars, 3, 6, 6)?;
                    let equal = rep.count(CoefficientStatus::Equal);
                    let bad = rep.count(CoefficientStatus::Mismatch) + rep.count(CoefficientStatus::Inconclusive);
                    t.push(Row::exact(
                        format!("P^{n} q={q} {vars} t-variable(s), |I| <= 3, s,z-degree <= 6"),
                        format!("{equal}/{} equal", rep.checks.len()),
                        format!("{}/{} equal", rep.checks.len(), rep.checks.len()),
                        bad == 0 && equal > 0,
                    ));
                }
            }
        }
        Ok(())
    }

    fn conf_limit(&self, t: &mut Table) -> Result<()> {
        let profile = self.profile();
        for &q in &self.config.q {
            for k in [1, 2] {
                let cmp = compare_conf_limit(k, &profile, self.config.n, self.config.m, q as u64)?;
                t.push(Row::exact(
                    format!("q={q} k={k} m={} coefficients down to L^{}", self.config.m, cmp.floor()),
                    if cmp.coefficients_agree { "agree" } else { "differ" },
                    "agree",
                    cmp.coefficients_agree,
                ));
                t.push(Row::bounded(
                    format!("q={q} k={k} m={} realized vs falling moment", self.config.m),
                    &cmp.realized,
                    &cmp.target_at,
                    &cmp.error_bound,
                ));
            }
        }
        Ok(())
    }
}

/// Universal characters at `p_k -> N` against Weyl dimensions, `|sigma| <= 4`, rank <= 5.
fn schur_oracle(t: &mut Table) -> Result<()> {
    for group in ClassicalGroup::ALL {
        for sigma in enumerate_partitions(4) {
            let parts = sigma.parts();
            let f = match group {
                ClassicalGroup::General => schur(parts),
                ClassicalGroup::Symplectic => schur_symplectic(parts),
                _ => schur_orthogonal(parts),
            };
            let ranks: Vec<u32> = (parts.len().max(1) as u32..=5).collect();
            let (mut got, mut want) = (Vec::new(), Vec::new());
            for &rank in &ranks {
                let dim = ratio(group.standard_dim(rank) as i64);
                let chi = AdamsCharacter::from_fn(sigma.size().max(1), |_| dim.clone());
                got.push(eval_at_adams(&f, &chi)?);
                want.push(BigRational::from_integer(weyl_dimension(group, rank, parts)?));
            }
            let join = |v: &[BigRational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            let family = group.name(ranks[0]);
            let family = &family[..family.find('(').unwrap()];
            let label: Vec<String> = parts.iter().map(u32::to_string).collect();
            t.push(Row::exact(
                format!("{family} ({}) ranks {}..{}", label.join(","), ranks[0], ranks[ranks.len() - 1]),
                join(&got),
                join(&want),
                got == want,
            ));
        }
    }
    Ok(())
}

/// Default degrees: the plane-curve range 3..=5, or 12 for binary forms,
/// keeping those within the budget.
pub fn default_degrees(q: &[u32], n: u32, cap: u128) -> Result<Vec<u32>> {
    let wanted: Vec<u32> = if n == 1 { vec![12] } else { (3..=5).collect() };
    let ok: Vec<u32> = wanted
        .into_iter()
        .filter(|&d| q.iter().all(|&q| stablesect::census::check_budget(q, n, d, cap).is_ok()))
        .collect();
    if ok.is_empty() {
        bail!("no default degree fits the budget of {cap} forms; pass --d");
    }
    Ok(ok)
}

pub fn sanity(config: &VerifyConfig) -> Result<()> {
    if config.suite.uses_census() {
        for &q in &config.q {
            if q != 2 && q != 3 {
                bail!("census suites need q in {{2, 3}}, got {q}");
            }
        }
        if config.degrees.is_empty() {
            bail!("no degrees to check");
        }
    }
    if config.q.iter().any(|&q| q < 2) {
        bail!("q must be a prime power >= 2");
    }
    if config.suite == Suite::ConfLimit && config.n < 2 {
        bail!("conf-limit needs n >= 2");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().name(), name);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn schur_oracle_table_passes() {
        let mut t = Table::default();
        schur_oracle(&mut t).unwrap();
        assert_eq!(t.rows.len(), 4 * 12);
        assert!(t.all_pass(), "{t}");
    }

    #[test]
    fn default_degrees_respect_budget() {
        assert_eq!(default_degrees(&[2], 2, 1 << 22).unwrap(), vec![3, 4, 5]);
        assert_eq!(default_degrees(&[3], 2, 1 << 22).unwrap(), vec![3]);
        assert_eq!(default_degrees(&[2], 1, 1 << 22).unwrap(), vec![12]);
        assert!(default_degrees(&[2], 2, 100).is_err());
    }
}
