//! Universal formulas for the stable normalized Euler characteristics of the
//! local systems attached to a partition, as polynomials in the closed-point
//! symbols `N_k`, `M_k` with coefficients rational functions of `X`.

use crate::arith::{divisors, mobius};
use crate::grothendieck::{zeta_inverse, LaurentL, VarietyProfile};
use crate::limits::{Provenance, Rate, Side, Value};
use crate::partitions::Partition;
use crate::poly::RatFunc;
use crate::ring::{QAlgebra, Ring};
use crate::symexpr::{SymExpr, Symbol};
use crate::symfunc::{schur_orthogonal, schur_symplectic, Basis, SymFunc};
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::HashMap;
use std::fmt;

/// Monodromy group type of the vanishing cohomology.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Duality {
    Symplectic,
    Orthogonal,
}

impl fmt::Display for Duality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Duality::Symplectic => "symplectic",
            Duality::Orthogonal => "orthogonal",
        })
    }
}

/// The pairing on the middle cohomology of a section of an `n`-dimensional
/// variety is alternating for odd `n - 1` and symmetric for even `n - 1`.
pub fn select_duality(n: u32) -> Result<Duality> {
    if n <= 1 {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(if (n - 1) % 2 == 1 { Duality::Symplectic } else { Duality::Orthogonal })
}

/// How the vanishing class enters `[Z_d] = [Y^old] + eps [V]`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SignConvention {
    /// `eps = (-1)^{n-1}`, the weak Lefschetz sign.
    #[default]
    Lefschetz,
    /// `eps = +1`.
    Unsigned,
}

impl SignConvention {
    pub fn epsilon(self, n: u32) -> i32 {
        match self {
            SignConvention::Lefschetz if (n - 1) % 2 == 1 => -1,
            _ => 1,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lefschetz" => Ok(SignConvention::Lefschetz),
            "unsigned" | "plus" => Ok(SignConvention::Unsigned),
            _ => Err(Error::Parse(format!("unknown sign convention {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Normalization {
    /// Divide by the number of smooth sections.
    #[default]
    PerSmooth,
    /// Divide by the number of all sections; introduces `1/zeta_Y(n+1)`.
    PerTotal,
}

impl Normalization {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "smooth" | "per-smooth" => Ok(Normalization::PerSmooth),
            "total" | "per-total" => Ok(Normalization::PerTotal),
            _ => Err(Error::Parse(format!("unknown normalization {s:?}"))),
        }
    }
}

/// The constant part `[Y^old]` of the cohomology of a smooth section.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct YOldData {
    /// `None` when `Y` is only known symbolically.
    pub class: Option<LaurentL>,
}

impl YOldData {
    pub fn symbolic() -> Self {
        YOldData { class: None }
    }

    /// `M_k`, closed points of degree `k` of `Y^old`.
    pub fn closed_points(&self, k: u32) -> Option<LaurentL> {
        let class = self.class.as_ref()?;
        let mut acc = LaurentL::zero();
        for d in divisors(k) {
            let mu = mobius(k / d);
            if mu != 0 {
                acc = acc.add(&class.adams(d).scale(&BigRational::from_integer(mu.into())));
            }
        }
        Some(acc.scale(&BigRational::new(1.into(), k.into())))
    }
}

/// `[Y^old]` for a section of `Y` (dimension `n`). For a cellular `Y` with
/// `c_j` cells of dimension `j`, weak and hard Lefschetz give
/// `sum_{2j < n-1} c_j L^j + [n odd] c_{(n-1)/2} L^{(n-1)/2} + sum_{n-1 < 2j <= 2n-2} c_{j+1} L^j`.
/// Non-cellular profiles fall back to symbolic data.
pub fn y_old(profile: &VarietyProfile, n: u32) -> Result<YOldData> {
    if n <= 1 {
        return Err(Error::UnsupportedDimension(n));
    }
    let Some(cells) = profile.cells() else {
        return Ok(YOldData::symbolic());
    };
    let count = |j: u32| -> i64 { cells.iter().find(|(d, _)| *d == j).map_or(0, |(_, c)| *c as i64) };
    let mut terms = Vec::new();
    for j in 0..n {
        let i = 2 * j;
        let c = if i <= n - 1 {
            count(j)
        } else if i <= 2 * n - 2 {
            count(j + 1)
        } else {
            0
        };
        terms.push((j as i64, BigRational::from_integer(c.into())));
    }
    Ok(YOldData { class: Some(LaurentL::from_terms(terms)) })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniversalFormula {
    /// What the formula is for, e.g. `sp(1,1)` or a symmetric function.
    pub label: String,
    pub n: u32,
    pub duality: Duality,
    pub epsilon: i32,
    pub normalization: Normalization,
    pub side: Side,
    pub provenance: Provenance,
    pub body: SymExpr,
}

impl UniversalFormula {
    /// Name of the variable `X`: `q` on the point side, `L` on the motivic side.
    pub fn var(&self) -> &'static str {
        match self.side {
            Side::Point(_) => "q",
            Side::Motivic => "L",
        }
    }

    pub fn render(&self) -> String {
        self.body.render(self.var())
    }

    pub fn to_expr(&self) -> String {
        self.body.to_expr()
    }
}

impl fmt::Display for UniversalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Universal formula for the Schur functor of `sigma` on the vanishing
/// cohomology of sections of an `n`-dimensional `Y`.
pub fn universal_formula(
    sigma: &Partition,
    n: u32,
    side: Side,
    convention: SignConvention,
    normalization: Normalization,
) -> Result<UniversalFormula> {
    let duality = select_duality(n)?;
    let (s, prefix) = match duality {
        Duality::Symplectic => (schur_symplectic(sigma.parts()), "sp"),
        Duality::Orthogonal => (schur_orthogonal(sigma.parts()), "o"),
    };
    let parts: Vec<String> = sigma.parts().iter().map(u32::to_string).collect();
    let label = format!("{prefix}({})", parts.join(","));
    universal_formula_for(&s, &label, n, side, convention.epsilon(n), normalization)
}

/// Universal formula for an arbitrary symmetric function `f` evaluated at
/// the vanishing class, with explicit sign `eps`.
pub fn universal_formula_for(
    f: &SymFunc,
    label: &str,
    n: u32,
    side: Side,
    eps: i32,
    normalization: Normalization,
) -> Result<UniversalFormula> {
    let duality = select_duality(n)?;
    assert!(eps == 1 || eps == -1, "sign must be +1 or -1");

    // p'_k -> eps * Y_k with Y_k = p'_k - M_k, then expand in binom(Y_k, l)
    let twisted = SymFunc::from_terms(
        Basis::PPrime,
        f.to_basis(Basis::PPrime).terms().iter().map(|(idx, c)| {
            let deg: u32 = idx.iter().sum();
            let c = if eps == -1 && deg % 2 == 1 { -c } else { c.clone() };
            (idx.clone(), c)
        }),
    );
    let binomial = twisted.to_basis(Basis::PPrimeBinomial);

    let mut factors: HashMap<(u32, u32), SymExpr> = HashMap::new();
    let mut body = SymExpr::zero();
    let mut only_p1 = true;
    for (idx, c) in binomial.terms() {
        only_p1 &= idx.len() <= 1;
        let mut term = SymExpr::from_rational(c);
        for (i, &l) in idx.iter().enumerate() {
            if l == 0 {
                continue;
            }
            let k = i as u32 + 1;
            let factor = factors.entry((k, l)).or_insert_with(|| moment_factor(k, l, n));
            term = Ring::mul(&term, factor);
        }
        body = Ring::add(&body, &term);
    }
    if normalization == Normalization::PerTotal {
        body = Ring::mul(&body, &SymExpr::symbol(Symbol::Zinv));
    }
    let provenance = match side {
        Side::Point(_) => Provenance::Proven,
        Side::Motivic if only_p1 => Provenance::Proven,
        Side::Motivic => Provenance::Conjectural,
    };
    Ok(UniversalFormula {
        label: label.to_string(),
        n,
        duality,
        epsilon: eps,
        normalization,
        side,
        provenance,
        body,
    })
}

/// Limit of `E[binom(a_k - M_k, l)]`:
/// `sum_{i + j = l} binom(N_k, i) r_k^i binom(-M_k, j)`.
fn moment_factor(k: u32, l: u32, n: u32) -> SymExpr {
    let nk = SymExpr::symbol(Symbol::N(k));
    let mk = SymExpr::symbol(Symbol::M(k));
    let r = Rate::new(k, n).value;
    let mut acc = SymExpr::zero();
    for i in 0..=l {
        let t = nk.binomial(i).scale_rf(&r.pow(i));
        acc = Ring::add(&acc, &Ring::mul(&t, &mk.neg().binomial(l - i)));
    }
    acc
}

/// Substitutes the data of `profile` into every symbol of the formula.
pub fn specialize(formula: &UniversalFormula, profile: &VarietyProfile) -> Result<Value> {
    let old = y_old(profile, formula.n)?;
    let n = formula.n;
    let lookup = |s: Symbol| -> Result<RatFunc> {
        match (s, formula.side) {
            (Symbol::N(k), Side::Point(q)) => {
                Ok(RatFunc::constant(BigRational::from_integer(profile.closed_points_at(q, k)?)))
            }
            (Symbol::N(k), Side::Motivic) => Ok(profile.closed_points(k)?.to_ratfunc()),
            (Symbol::M(k), side) => {
                let m = old.closed_points(k).ok_or_else(|| {
                    Error::InsufficientProfileData(format!("{}: M{k} needs a cellular profile", profile.name))
                })?;
                Ok(match side {
                    Side::Point(q) => RatFunc::constant(m.eval_int(q)),
                    Side::Motivic => m.to_ratfunc(),
                })
            }
            (Symbol::Zinv, _) => {
                if !profile.is_cellular() {
                    return Err(Error::InsufficientProfileData(format!(
                        "{}: 1/zeta needs a cellular profile",
                        profile.name
                    )));
                }
                Ok(zeta_inverse(profile, n as i64 + 1)?.to_ratfunc())
            }
            (Symbol::C(_), _) => Err(Error::MissingSymbol(s.name())),
        }
    };
    let mut values = HashMap::new();
    for s in formula.body.symbols() {
        values.insert(s, lookup(s)?);
    }
    let v = formula.body.specialize(|s| values.get(&s).cloned())?;
    match formula.side {
        Side::Point(q) => Ok(Value::Exact(v.eval(&BigRational::from_integer(q.into()))?)),
        Side::Motivic => Ok(Value::Function(v)),
    }
}

/// Substitutes explicit values; symbols missing from `values` are an error.
pub fn specialize_symbols(formula: &UniversalFormula, values: &HashMap<Symbol, RatFunc>) -> Result<RatFunc> {
    formula.body.specialize(|s| values.get(&s).cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::partitions::Partition;
    use crate::ring::{int, rat};
    use crate::symfunc::schur;

    fn part(s: &str) -> Partition {
        if s.is_empty() {
            Partition::empty()
        } else {
            Partition::parse(s).unwrap()
        }
    }

    fn formula(s: &str, n: u32, side: Side) -> UniversalFormula {
        universal_formula(&part(s), n, side, SignConvention::Lefschetz, Normalization::PerSmooth).unwrap()
    }

    #[test]
    fn duality_by_parity() {
        assert_eq!(select_duality(2).unwrap(), Duality::Symplectic);
        assert_eq!(select_duality(3).unwrap(), Duality::Orthogonal);
        assert_eq!(select_duality(1), Err(Error::UnsupportedDimension(1)));
    }

    #[test]
    fn y_old_examples() {
        let p2 = y_old(&VarietyProfile::projective_space(2), 2).unwrap();
        assert_eq!(p2.class, Some(LaurentL::projective_space(1)));
        assert_eq!(p2.closed_points(1).unwrap().eval_int(2), int(3));
        for n in 2..=6 {
            let y = y_old(&VarietyProfile::projective_space(n), n).unwrap();
            assert_eq!(y.class, Some(LaurentL::projective_space(n - 1)), "n={n}");
        }
        let q = y_old(&VarietyProfile::builtin("P1xP1").unwrap(), 2).unwrap();
        assert_eq!(q.class, Some(LaurentL::projective_space(1)));
    }

    #[test]
    fn trivial_partition_gives_one() {
        let f = formula("", 2, Side::Motivic);
        assert_eq!(f.body, SymExpr::one());
    }

    #[test]
    fn standard_representation_symbolic() {
        let f = universal_formula(&part("1"), 2, Side::Point(2), SignConvention::Unsigned, Normalization::PerSmooth)
            .unwrap();
        let r1 = Rate::new(1, 2).value;
        let expect = SymExpr::symbol(Symbol::N(1)).scale_rf(&r1).sub(&SymExpr::symbol(Symbol::M(1)));
        assert_eq!(f.body, expect);
        let mut vals = HashMap::new();
        vals.insert(Symbol::N(1), RatFunc::constant(int(5)));
        vals.insert(Symbol::M(1), RatFunc::constant(int(2)));
        let v = specialize_symbols(&f, &vals).unwrap();
        assert_eq!(v, RatFunc::constant(int(5)).mul(&r1).sub(&RatFunc::constant(int(2))));
        // Lefschetz sign on curves negates it
        let g = formula("1", 2, Side::Point(2));
        assert_eq!(g.body, expect.neg());
    }

    #[test]
    fn standard_representation_vanishes_on_projective_space() {
        for n in 2..=4 {
            let y = VarietyProfile::projective_space(n);
            for conv in [SignConvention::Lefschetz, SignConvention::Unsigned] {
                let f = universal_formula(&part("1"), n, Side::Motivic, conv, Normalization::PerSmooth).unwrap();
                assert_eq!(specialize(&f, &y).unwrap(), Value::Function(RatFunc::zero()));
            }
            assert_eq!(specialize(&formula("1", n, Side::Point(3)), &y).unwrap(), Value::Exact(int(0)));
        }
    }

    #[test]
    fn exterior_square_on_plane_curves() {
        let f = formula("1,1", 2, Side::Point(2));
        assert_eq!(f.duality, Duality::Symplectic);
        assert_eq!(f.epsilon, -1);
        assert_eq!(specialize(&f, &VarietyProfile::projective_space(2)).unwrap(), Value::Exact(rat(11, 21)));
    }

    /// Substitute in the power-sum basis first, then pass to binomials of
    /// `p'_k` over symbolic coefficients.
    fn power_sum_route(f: &SymFunc, n: u32, eps: i32) -> SymExpr {
        let c = |k: u32| {
            divisors(k).into_iter().fold(SymExpr::zero(), |acc, d| {
                acc.add(&SymExpr::symbol(Symbol::M(d)).scale(&BigRational::from_integer(d.into())))
            })
        };
        let g = f.substitute_p(eps, c).to_basis(Basis::PPrimeBinomial);
        let mut acc = SymExpr::zero();
        for (idx, coef) in g.terms() {
            let mut t = coef.clone();
            for (i, &l) in idx.iter().enumerate() {
                let k = i as u32 + 1;
                let b = SymExpr::symbol(Symbol::N(k)).binomial(l).scale_rf(&Rate::new(k, n).value.pow(l));
                t = t.mul(&b);
            }
            acc = acc.add(&t);
        }
        acc
    }

    #[test]
    fn agrees_with_power_sum_route() {
        for (s, n) in [("1", 2), ("1,1", 2), ("2", 2), ("2,1", 2), ("1", 3), ("2", 3), ("1,1", 3), ("3", 2)] {
            let p = part(s);
            for eps in [1, -1] {
                let sf = match select_duality(n).unwrap() {
                    Duality::Symplectic => schur_symplectic(p.parts()),
                    Duality::Orthogonal => schur_orthogonal(p.parts()),
                };
                let f = universal_formula_for(&sf, s, n, Side::Motivic, eps, Normalization::PerSmooth).unwrap();
                assert_eq!(f.body, power_sum_route(&sf, n, eps), "sigma={s} n={n} eps={eps}");
            }
        }
    }

    #[test]
    fn linearity() {
        let e2 = SymFunc::e(2);
        let s11 = schur(&[1, 1]);
        let h2 = SymFunc::h(2);
        let combo = h2.scale_rational(&int(3)).sub(&s11.scale_rational(&int(2)));
        let f = |g: &SymFunc| universal_formula_for(g, "", 2, Side::Motivic, -1, Normalization::PerSmooth).unwrap().body;
        assert_eq!(f(&combo), f(&h2).scale(&int(3)).sub(&f(&e2).scale(&int(2))));
    }

    #[test]
    fn sign_flip_swaps_e2_and_h2() {
        let f = |g: &SymFunc, eps| universal_formula_for(g, "", 2, Side::Motivic, eps, Normalization::PerSmooth).unwrap().body;
        assert_eq!(f(&SymFunc::h(2), 1), f(&SymFunc::e(2), -1));
        assert_eq!(f(&SymFunc::h(2), -1), f(&SymFunc::e(2), 1));
        let sp11 = formula("1,1", 2, Side::Motivic).body;
        let sp2 = universal_formula(&part("2"), 2, Side::Motivic, SignConvention::Unsigned, Normalization::PerSmooth)
            .unwrap()
            .body;
        assert_eq!(sp2, sp11.add(&SymExpr::one()));
    }

    #[test]
    fn hodge_side_has_the_same_body() {
        for s in ["1", "1,1", "2", "2,1", "1,1,1"] {
            let a = formula(s, 2, Side::Motivic);
            let b = formula(s, 2, Side::Point(2));
            assert_eq!(a.body, b.body);
            assert_eq!(a.render().replace('L', "q"), b.render());
            assert_eq!(b.provenance, Provenance::Proven);
        }
        assert_eq!(formula("1", 2, Side::Motivic).provenance, Provenance::Proven);
        assert_eq!(formula("1,1", 2, Side::Motivic).provenance, Provenance::Conjectural);
    }

    #[test]
    fn total_normalization_carries_zeta() {
        let f = universal_formula(&part("1,1"), 2, Side::Point(2), SignConvention::Lefschetz, Normalization::PerTotal)
            .unwrap();
        assert!(f.body.symbols().contains(&Symbol::Zinv));
        let v = specialize(&f, &VarietyProfile::projective_space(2)).unwrap();
        assert_eq!(v, Value::Exact(rat(11, 21) * rat(21, 64)));
    }

    #[test]
    fn point_profile_needs_cellular_old_part() {
        let y = VarietyProfile::from_point_counts("y", 2, 2, vec![7.into(), 21.into()]).unwrap();
        let f = formula("1", 2, Side::Point(2));
        assert!(matches!(specialize(&f, &y), Err(Error::InsufficientProfileData(_))));
        let f = formula("", 2, Side::Point(2));
        assert_eq!(specialize(&f, &y).unwrap(), Value::Exact(BigRational::one()));
    }
}
