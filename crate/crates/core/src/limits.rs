//! Large-degree limits: Bernoulli rates of closed points, factorial moments
//! of the closed-point counts, the truncated configuration-space limit and
//! the power-structure identity checker.

use crate::grothendieck::{euler_pow, zeta_inverse, LaurentL, MSeries, TruncSeries, VarietyProfile};
use crate::partitions::{c_weight, conf_count, enumerate_partitions, overlaps, Label, LabeledShape};
use crate::poly::{Poly, RatFunc};
use crate::ring::{QAlgebra, Ring};
use crate::symfunc::{Basis, SymFunc};
use crate::Result;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Where a limit is realized.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// Point counts over `F_q`.
    Point(u64),
    /// Classes in the completed Grothendieck ring, as functions of `L`.
    Motivic,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    Proven,
    Conjectural,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Proven => "proven",
            Provenance::Conjectural => "conjectural",
        })
    }
}

/// A limit value: a rational number on the point side, a rational function
/// of `L` on the motivic side.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Value {
    Exact(BigRational),
    Function(RatFunc),
}

impl Value {
    /// Realization at `L -> q` (identity on exact values).
    pub fn at(&self, q: u64) -> Result<BigRational> {
        match self {
            Value::Exact(r) => Ok(r.clone()),
            Value::Function(f) => f.eval(&BigRational::from_integer(q.into())),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Value::Exact(r) => r.to_string(),
            Value::Function(f) => f.render("L"),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Probability that a fixed closed point of degree `k` lies on a random
/// smooth hypersurface section: `(X^{nk} - 1)/(X^{(n+1)k} - 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rate {
    pub k: u32,
    pub n: u32,
    pub value: RatFunc,
}

impl Rate {
    pub fn new(k: u32, n: u32) -> Self {
        let num = Poly::x_pow_minus_one((n * k) as usize);
        let den = Poly::x_pow_minus_one(((n + 1) * k) as usize);
        Rate { k, n, value: RatFunc::new(num, den) }
    }

    pub fn at(&self, q: u64) -> Result<BigRational> {
        self.value.eval(&BigRational::from_integer(q.into()))
    }

    /// `deg num - deg den`, which is `-k`.
    pub fn degree(&self) -> i64 {
        let d = |p: &Poly| p.degree().map_or(0, |d| d as i64);
        d(self.value.num()) - d(self.value.den())
    }
}

/// Which factorial moment to take: `prod_k binom(a_k, l_k)`, optionally
/// twisted by constants `M_k`.
#[derive(Clone, PartialEq, Debug)]
pub struct MomentSpec {
    /// `exponents[k-1] = l_k`.
    pub exponents: Vec<u32>,
    /// `twist[k-1] = M_k`; empty for no twist.
    pub twist: Vec<LaurentL>,
    pub side: Side,
}

impl MomentSpec {
    pub fn new(exponents: Vec<u32>, side: Side) -> Self {
        MomentSpec { exponents, twist: Vec::new(), side }
    }

    pub fn with_twist(mut self, twist: Vec<LaurentL>) -> Self {
        self.twist = twist;
        self
    }

    /// Point-side moments are proven, and so are the untwisted falling
    /// moments of `p_1` on the motivic side.
    pub fn provenance(&self) -> Provenance {
        match self.side {
            Side::Point(_) => Provenance::Proven,
            Side::Motivic => {
                let only_p1 = self.exponents.iter().skip(1).all(|&l| l == 0);
                let untwisted = self.twist.iter().all(Zero::is_zero);
                if only_p1 && untwisted {
                    Provenance::Proven
                } else {
                    Provenance::Conjectural
                }
            }
        }
    }

    fn label(&self) -> String {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > 0)
            .map(|(k, l)| format!("l{}={l}", k + 1))
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(",")
        }
    }
}

/// Coefficient of `t^l` in `(1 + r t)^a (1 + t)^{-m}`.
fn twisted_coefficient<R: QAlgebra>(a: &R, r: &R, m: &R, l: u32) -> R {
    let mut acc = R::zero();
    for i in 0..=l {
        let term = Ring::mul(&Ring::mul(&a.binomial(i), &r.pow(i)), &m.neg().binomial(l - i));
        acc = Ring::add(&acc, &term);
    }
    acc
}

/// `prod_k [t^{l_k}] (1 + r_k t)^{a_k} (1 + t)^{-M_k}`; without a twist this
/// is `prod_k binom(a_k, l_k) r_k^{l_k}`.
pub fn asymptotic_factorial_moment(profile: &VarietyProfile, n: u32, spec: &MomentSpec) -> Result<Value> {
    match spec.side {
        Side::Point(q) => {
            let mut acc = BigRational::one();
            for (i, &l) in spec.exponents.iter().enumerate() {
                let k = i as u32 + 1;
                let m = spec.twist.get(i).map(|t| t.eval_int(q)).unwrap_or_else(BigRational::zero);
                if l == 0 && m.is_zero() {
                    continue;
                }
                let a = BigRational::from_integer(profile.closed_points_at(q, k)?);
                let r = Rate::new(k, n).at(q)?;
                acc *= twisted_coefficient(&a, &r, &m, l);
            }
            Ok(Value::Exact(acc))
        }
        Side::Motivic => {
            let mut acc = RatFunc::one();
            for (i, &l) in spec.exponents.iter().enumerate() {
                let k = i as u32 + 1;
                let m = spec.twist.get(i).map(LaurentL::to_ratfunc).unwrap_or_else(RatFunc::zero);
                if l == 0 && Zero::is_zero(&m) {
                    continue;
                }
                let a = profile.closed_points(k)?.to_ratfunc();
                let r = Rate::new(k, n).value;
                acc = Ring::mul(&acc, &twisted_coefficient(&a, &r, &m, l));
            }
            Ok(Value::Function(acc))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Expectation {
    pub value: Value,
    pub provenance: Provenance,
}

/// Limit of the expected value of `f` evaluated at the closed-point counts
/// of a random smooth section.
pub fn asymptotic_expectation(f: &SymFunc, profile: &VarietyProfile, n: u32, side: Side) -> Result<Expectation> {
    let g = f.to_basis(Basis::PPrimeBinomial);
    let mut proven = true;
    let mut acc = match side {
        Side::Point(_) => Value::Exact(BigRational::zero()),
        Side::Motivic => Value::Function(RatFunc::zero()),
    };
    for (idx, c) in g.terms() {
        let spec = MomentSpec::new(idx.clone(), side);
        proven &= spec.provenance() == Provenance::Proven;
        let m = asymptotic_factorial_moment(profile, n, &spec)?;
        acc = match (acc, m) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b * c),
            (Value::Function(a), Value::Function(b)) => Value::Function(Ring::add(&a, &QAlgebra::scale(&b, c))),
            _ => unreachable!("both sides come from the same realization"),
        };
    }
    let provenance = if proven { Provenance::Proven } else { Provenance::Conjectural };
    Ok(Expectation { value: acc, provenance })
}

/// `[Y]([Y] - 1)...([Y] - k + 1) r_1^k`.
pub fn falling_moment_p1(profile: &VarietyProfile, n: u32, k: u32, side: Side) -> Result<Value> {
    match side {
        Side::Point(q) => {
            let y = profile.adams_at(q, 1)?;
            let r = Rate::new(1, n).at(q)?;
            let mut acc = BigRational::one();
            for i in 0..k {
                acc *= (&y - BigRational::from_integer(i.into())) * &r;
            }
            Ok(Value::Exact(acc))
        }
        Side::Motivic => {
            let y = profile.class()?.to_ratfunc();
            let r = Rate::new(1, n).value;
            let mut acc = RatFunc::one();
            for i in 0..k {
                acc = Ring::mul(&acc, &Ring::mul(&y.sub(&RatFunc::from_int(i as i64)), &r));
            }
            Ok(Value::Function(acc))
        }
    }
}

/// Lowest exponent at which the `|mu| <= m` truncation of the limit sum is
/// exact: the omitted terms have virtual dimension at most
/// `(dim - 1)|tau| - (n + 1 - dim)(m + 1)`.
pub fn conf_limit_floor(tau: &LabeledShape, dim: u32, n: u32, m: u32) -> i64 {
    let (dim, n, m) = (dim as i64, n as i64, m as i64);
    (dim - 1) * tau.points() as i64 - (n + 1 - dim) * (m + 1) + 1
}

/// `sum_{|mu| <= m} (-1)^{||mu||} sum_{gamma in S(tau, mu)} L^{-c(gamma)} [Conf^gamma Y]`,
/// with `mu` running over compositions. Exact from [`conf_limit_floor`] up.
pub fn conf_limit_truncated(tau: &LabeledShape, profile: &VarietyProfile, n: u32, m: u32) -> Result<TruncSeries> {
    let chi = profile.motivic_character((tau.points() + m).max(1))?;
    let mut acc = LaurentL::zero();
    for (gamma, weight) in limit_shapes(tau, m)? {
        let cls = conf_count(&gamma, &chi)?;
        let shift = -(c_weight(&gamma, n) as i64);
        acc = acc.add(&cls.shift(shift).scale(&weight));
    }
    Ok(TruncSeries::new(acc, conf_limit_floor(tau, profile.dim, n, m)))
}

/// Point-count realization of [`conf_limit_truncated`], with the floor of
/// the truncation.
pub fn conf_limit_truncated_at(
    tau: &LabeledShape,
    profile: &VarietyProfile,
    n: u32,
    m: u32,
    q: u64,
) -> Result<(BigRational, i64)> {
    let chi = profile.point_character(q, (tau.points() + m).max(1))?;
    let qr = BigRational::from_integer(q.into());
    let mut acc = BigRational::zero();
    for (gamma, weight) in limit_shapes(tau, m)? {
        let cls = conf_count(&gamma, &chi)?;
        let c = c_weight(&gamma, n) as i32;
        acc += cls * qr.pow(-c) * weight;
    }
    Ok((acc, conf_limit_floor(tau, profile.dim, n, m)))
}

/// Every overlap shape for `|mu| <= m` with its signed composition weight.
fn limit_shapes(tau: &LabeledShape, m: u32) -> Result<Vec<(LabeledShape, BigRational)>> {
    let mut out = Vec::new();
    for mu in enumerate_partitions(m) {
        let sign = if mu.length() % 2 == 0 { 1 } else { -1 };
        let weight = BigRational::from_integer(mu.arrangements() * sign);
        for gamma in overlaps(tau, &mu)? {
            out.push((gamma, weight.clone()));
        }
    }
    Ok(out)
}

/// Comparison of `zeta_Y(n + 1) * conf_limit_truncated(k points, m)` with
/// the closed-form falling moment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RouteComparison {
    pub product: TruncSeries,
    pub target: RatFunc,
    /// Every coefficient at or above the floor agrees.
    pub coefficients_agree: bool,
    pub realized: BigRational,
    pub target_at: BigRational,
    /// `sum |c_e| q^e` over the target's expansion for the `TAIL_TERMS`
    /// exponents below the floor.
    pub error_bound: BigRational,
}

impl RouteComparison {
    pub fn floor(&self) -> i64 {
        self.product.floor().expect("truncated")
    }

    pub fn within_bound(&self) -> bool {
        (&self.realized - &self.target_at).abs() <= self.error_bound
    }
}

/// Checks the configuration-space route against the falling moment
/// `[Y]...([Y]-k+1) r_1^k` for a cellular profile.
pub fn compare_conf_limit(k: u32, profile: &VarietyProfile, n: u32, m: u32, q: u64) -> Result<RouteComparison> {
    let conf = conf_limit_truncated(&LabeledShape::distinct_points(k), profile, n, m)?;
    let floor = conf.floor().expect("truncated");
    let top = conf.known().top().unwrap_or(0);
    let zeta = TruncSeries::exact(zeta_inverse(profile, n as i64 + 1)?).inv(floor - top)?;
    let product = zeta.mul(&conf);
    let floor = product.floor().expect("truncated");

    let target = match falling_moment_p1(profile, n, k, Side::Motivic)? {
        Value::Function(f) => f,
        Value::Exact(_) => unreachable!("motivic side"),
    };
    let depth = floor - TAIL_TERMS;
    let expansion = target.expand_at_infinity(depth);
    let coefficients_agree = expansion
        .iter()
        .filter(|(e, _)| *e >= floor)
        .all(|(e, c)| product.coeff(*e).as_ref() == Some(c))
        && product.known().coeffs().keys().all(|e| expansion.iter().any(|(f, _)| f == e));

    let qr = BigRational::from_integer(q.into());
    let realized = product.eval_known(&qr);
    let target_at = target.eval(&qr)?;
    let error_bound = expansion
        .iter()
        .filter(|(e, _)| *e < floor)
        .map(|(e, c)| c.abs() * qr.pow(*e as i32))
        .fold(BigRational::zero(), |a, b| a + b);
    Ok(RouteComparison { product, target, coefficients_agree, realized, target_at, error_bound })
}

/// Exponents below the floor summed into the realized error bound.
const TAIL_TERMS: i64 = 200;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoefficientStatus {
    Equal,
    Mismatch,
    /// Some contribution lies beyond the configuration budget.
    Inconclusive,
}

impl fmt::Display for CoefficientStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientStatus::Equal => "equal",
            CoefficientStatus::Mismatch => "MISMATCH",
            CoefficientStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoefficientCheck {
    /// `[i_1, ..., i_P, e_s, e_z]`.
    pub exponents: Vec<u32>,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub status: CoefficientStatus,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerIdentityReport {
    pub q: u64,
    pub vars: usize,
    pub t_degree: u32,
    pub sz_degree: u32,
    pub mu_cap: u32,
    pub checks: Vec<CoefficientCheck>,
}

impl PowerIdentityReport {
    pub fn all_equal(&self) -> bool {
        self.checks.iter().all(|c| c.status != CoefficientStatus::Mismatch)
            && self.checks.iter().any(|c| c.status == CoefficientStatus::Equal)
    }

    pub fn count(&self, s: CoefficientStatus) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }
}

/// Coefficient-by-coefficient comparison of
/// `(1 - s(1 + t_1 + ... + t_P) + z(t_1 + ... + t_P))^{Pow [Y]}`
/// with the configuration-space expansion
/// `sum_I sum_mu (-1)^{||mu||} sum_gamma #Conf^gamma Y z^{b(gamma)} s^{|gamma| - b(gamma)} t^I`,
/// for `|I| <= t_degree`, `e_s + e_z <= sz_degree` and `|mu| <= mu_cap`.
/// Coefficients of `s`-degree beyond `mu_cap` are inconclusive.
pub fn verify_power_identity(
    profile: &VarietyProfile,
    q: u64,
    vars: usize,
    t_degree: u32,
    sz_degree: u32,
    mu_cap: u32,
) -> Result<PowerIdentityReport> {
    let one = MSeries::one(vars, t_degree, sz_degree);
    let tsum = (0..vars).fold(one.zero_like(), |acc, i| acc.add(&one.t(i)));
    let base = one.sub(&one.s().mul(&one.add(&tsum))).add(&one.z().mul(&tsum));
    let needed = t_degree.max(sz_degree);
    let a = (1..=needed).map(|k| profile.closed_points_at(q, k)).collect::<Result<Vec<_>>>()?;
    let lhs = euler_pow(&base, &a)?;

    let chi = profile.point_character(q, (t_degree + mu_cap).max(1))?;
    let mut rhs: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
    let mus = enumerate_partitions(mu_cap);
    for multi in multidegrees(vars, t_degree) {
        let tau = LabeledShape::new(
            multi.iter().enumerate().filter(|(_, &m)| m > 0).map(|(j, &m)| (Label::A(j as u32 + 1), m)),
        )?;
        for mu in &mus {
            let sign: i64 = if mu.length() % 2 == 0 { 1 } else { -1 };
            let w = BigRational::from_integer(mu.arrangements() * sign);
            for gamma in overlaps(&tau, mu)? {
                let b = gamma.a_points();
                let s = gamma.points() - b;
                if b + s > sz_degree {
                    continue;
                }
                let mut key = multi.clone();
                key.push(s);
                key.push(b);
                let cls = conf_count(&gamma, &chi)?;
                *rhs.entry(key).or_insert_with(BigRational::zero) += cls * &w;
            }
        }
    }

    let mut keys: Vec<Vec<u32>> = lhs.terms().keys().cloned().collect();
    keys.extend(rhs.keys().cloned());
    keys.sort();
    keys.dedup();
    // every coefficient in range, zero ones included
    let mut all_keys = Vec::new();
    for multi in multidegrees(vars, t_degree) {
        for s in 0..=sz_degree {
            for z in 0..=(sz_degree - s) {
                let mut k = multi.clone();
                k.push(s);
                k.push(z);
                all_keys.push(k);
            }
        }
    }
    all_keys.extend(keys);
    all_keys.sort();
    all_keys.dedup();

    let checks = all_keys
        .into_iter()
        .map(|k| {
            let l = lhs.coeff(&k);
            let r = rhs.get(&k).cloned().unwrap_or_else(BigRational::zero);
            let s_deg = k[vars];
            let status = if s_deg > mu_cap {
                CoefficientStatus::Inconclusive
            } else if l == r {
                CoefficientStatus::Equal
            } else {
                CoefficientStatus::Mismatch
            };
            CoefficientCheck { exponents: k, lhs: l, rhs: r, status }
        })
        .collect();
    Ok(PowerIdentityReport { q, vars, t_degree, sz_degree, mu_cap, checks })
}

/// All exponent vectors of length `vars` with total degree `<= max`.
fn multidegrees(vars: usize, max: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, vars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == vars {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(i + 1, vars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, vars, max, &mut Vec::new(), &mut out);
    out
}

/// One row of a tabular report.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReportRow {
    pub spec: String,
    pub predicted: String,
    pub status: Provenance,
    pub truncation: String,
}

/// Rows of predictions, rendered as tab-separated text.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn push(&mut self, spec: impl Into<String>, predicted: impl Into<String>, status: Provenance, truncation: impl Into<String>) {
        self.rows.push(ReportRow {
            spec: spec.into(),
            predicted: predicted.into(),
            status,
            truncation: truncation.into(),
        });
    }

    /// Factorial moments `binom(a_k, l)` for `k <= max_k`, `1 <= l <= max_l`.
    pub fn moments(profile: &VarietyProfile, n: u32, side: Side, max_k: u32, max_l: u32) -> Result<Report> {
        let mut report = Report::default();
        for k in 1..=max_k {
            for l in 1..=max_l {
                let mut exps = vec![0; k as usize];
                exps[k as usize - 1] = l;
                let spec = MomentSpec::new(exps, side);
                let v = asymptotic_factorial_moment(profile, n, &spec)?;
                report.push(spec.label(), v.render(), spec.provenance(), "exact");
            }
        }
        Ok(report)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "spec\tpredicted\tstatus\ttruncation")?;
        for r in &self.rows {
            writeln!(f, "{}\t{}\t{}\t{}", r.spec, r.predicted, r.status, r.truncation)?;
        }
        Ok(())
    }
}

impl fmt::Display for PowerIdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "coefficient\tlhs\trhs\tstatus")?;
        for c in &self.checks {
            let (t, sz) = c.exponents.split_at(self.vars);
            let t: Vec<String> = t.iter().map(u32::to_string).collect();
            writeln!(f, "t^({}) s^{} z^{}\t{}\t{}\t{}", t.join(","), sz[0], sz[1], c.lhs, c.rhs, c.status)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    fn p(n: u32) -> VarietyProfile {
        VarietyProfile::projective_space(n)
    }

    #[test]
    fn rates() {
        let r = Rate::new(2, 2);
        assert_eq!(r.at(2).unwrap(), rat(15, 63));
        assert_eq!(r.degree(), -2);
        assert_eq!(Rate::new(1, 2).at(2).unwrap(), rat(3, 7));
    }

    #[test]
    fn factorial_moment_examples() {
        let m = |e: Vec<u32>| asymptotic_factorial_moment(&p(2), 2, &MomentSpec::new(e, Side::Point(2))).unwrap();
        assert_eq!(m(vec![1]), Value::Exact(int(3)));
        assert_eq!(m(vec![0, 1]), Value::Exact(rat(5, 3)));
        assert_eq!(m(vec![]), Value::Exact(int(1)));
        assert_eq!(m(vec![0, 0, 0]), Value::Exact(int(1)));
    }

    #[test]
    fn twist_shifts_by_binomial_series() {
        // (1 + r t)^a (1 + t)^{-1}: [t^1] = a r - 1
        let spec = MomentSpec::new(vec![1], Side::Point(2)).with_twist(vec![LaurentL::one()]);
        assert_eq!(asymptotic_factorial_moment(&p(2), 2, &spec).unwrap(), Value::Exact(int(2)));
        assert_eq!(spec.provenance(), Provenance::Proven);
        let spec = MomentSpec::new(vec![1], Side::Motivic).with_twist(vec![LaurentL::one()]);
        assert_eq!(spec.provenance(), Provenance::Conjectural);
    }

    #[test]
    fn expectation_of_p1_is_smaller_projective_space() {
        for n in 1..=4 {
            let e = asymptotic_expectation(&SymFunc::p(1), &p(n), n, Side::Motivic).unwrap();
            assert_eq!(e.provenance, Provenance::Proven);
            assert_eq!(e.value, Value::Function(LaurentL::projective_space(n - 1).to_ratfunc()));
        }
        let e = asymptotic_expectation(&SymFunc::one(Basis::P), &p(2), 2, Side::Motivic).unwrap();
        assert_eq!(e.value, Value::Function(RatFunc::one()));
    }

    #[test]
    fn falling_moment_matches_theorem_shape() {
        let f = SymFunc::p(1).mul(&SymFunc::p(1).sub(&SymFunc::one(Basis::P)));
        let e = asymptotic_expectation(&f, &p(2), 2, Side::Motivic).unwrap();
        assert_eq!(e.provenance, Provenance::Proven);
        assert_eq!(e.value, falling_moment_p1(&p(2), 2, 2, Side::Motivic).unwrap());
        assert_eq!(e.value.at(2).unwrap(), rat(54, 7));
        assert_eq!(falling_moment_p1(&p(2), 2, 1, Side::Point(2)).unwrap(), Value::Exact(int(3)));
        assert_eq!(falling_moment_p1(&p(2), 2, 8, Side::Point(2)).unwrap(), Value::Exact(int(0)));
        let e = asymptotic_expectation(&SymFunc::p(2), &p(2), 2, Side::Motivic).unwrap();
        assert_eq!(e.provenance, Provenance::Conjectural);
    }

    #[test]
    fn empty_tau_is_truncated_zeta_inverse() {
        for (n, m) in [(1, 4), (2, 4), (2, 6)] {
            let y = p(n);
            let lim = conf_limit_truncated(&LabeledShape::default(), &y, n, m).unwrap();
            let floor = lim.floor().unwrap();
            let z = TruncSeries::new(zeta_inverse(&y, n as i64 + 1).unwrap(), floor);
            assert!(lim.agrees_with(&z), "n={n} m={m}: {lim} vs {z}");
        }
    }

    #[test]
    fn single_point_without_singular_budget() {
        let tau = LabeledShape::distinct_points(1);
        let lim = conf_limit_truncated(&tau, &p(2), 2, 0).unwrap();
        assert_eq!(lim.known(), &p(2).class().unwrap().shift(-1).truncate_below(lim.floor().unwrap()));
        let (v, _) = conf_limit_truncated_at(&tau, &p(2), 2, 0, 2).unwrap();
        assert_eq!(v, rat(7, 2));
    }

    #[test]
    fn configuration_route_matches_falling_moment() {
        for n in 1..=2 {
            for k in 1..=2 {
                let r = compare_conf_limit(k, &p(n), n, 5, 2).unwrap();
                assert!(r.coefficients_agree, "n={n} k={k}: {} vs {}", r.product, r.target.render("L"));
                assert!(r.within_bound());
            }
        }
    }

    #[test]
    fn power_identity_on_a_point() {
        let r = verify_power_identity(&VarietyProfile::point(), 2, 1, 3, 3, 3).unwrap();
        assert!(r.all_equal(), "{r}");
        let r = verify_power_identity(&VarietyProfile::point(), 2, 1, 3, 3, 1).unwrap();
        assert!(r.count(CoefficientStatus::Inconclusive) > 0);
        assert_eq!(r.count(CoefficientStatus::Mismatch), 0);
    }

    #[test]
    fn power_identity_on_p1() {
        let r = verify_power_identity(&p(1), 2, 2, 2, 6, 6).unwrap();
        assert!(r.all_equal(), "{r}");
    }

    #[test]
    fn report_renders() {
        let r = Report::moments(&p(2), 2, Side::Point(2), 2, 1).unwrap();
        let s = r.to_string();
        assert!(s.starts_with("spec\tpredicted\tstatus\ttruncation\n"));
        assert!(s.contains("l2=1\t5/3\tproven\texact"));
    }
}
