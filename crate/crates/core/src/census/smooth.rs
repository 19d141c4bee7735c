//! Exact smoothness deciders for plane (and general projective) hypersurfaces
//! over prime fields.
//!
//! The primary test is a Macaulay rank criterion: `f = 0` is smooth iff the
//! ideal generated by `f` and its partials has no projective zero, iff its
//! degree-`D` part is the full space of degree-`D` monomials for a large enough
//! `D`. The secondary test scans points over extension fields.

use std::collections::HashMap;
use std::sync::Arc;

use super::field::Field;
use super::form::Form;
use super::points::{monomial_count, monomials, PointSet};

/// Degree at which the rank test is run.
///
/// When `p` does not divide `d`, Euler's identity puts `f` in the ideal of the
/// partials, which form a regular sequence exactly when smooth; when `p | d`,
/// `n + 1` general degree-`d` elements of `(f, partials)` form a regular
/// sequence instead.
pub fn rank_degree(q: u32, n: u32, d: u32) -> u32 {
    let (n, d) = (n as i64, d as i64);
    let raw = if d % q as i64 != 0 { (n + 1) * d - 2 * n } else { (n + 1) * d - n };
    raw.max(d - 1).max(0) as u32
}

/// Whether `f` itself is among the rank-test generators.
pub fn includes_form(q: u32, d: u32) -> bool {
    d % q == 0
}

#[derive(Debug)]
struct Generator {
    /// `Some(i)` for `df/dx_i`, `None` for `f`.
    partial: Option<usize>,
    /// `cols[mult * gen_len + g]`: column of `multiplier * monomial_g`.
    cols: Vec<u32>,
    gen_len: usize,
    mult_len: usize,
}

/// Precomputed index tables for one `(q, n, d)`.
#[derive(Debug)]
pub struct RankPlan {
    pub q: u32,
    pub n: u32,
    pub d: u32,
    pub degree: u32,
    cols: usize,
    gens: Vec<Generator>,
    /// Per variable: `(source index in degree d, target index in degree d-1, factor)`.
    partial_maps: Vec<Vec<(usize, usize, u8)>>,
}

impl RankPlan {
    pub fn new(q: u32, n: u32, d: u32) -> Self {
        let vars = n as usize + 1;
        let degree = rank_degree(q, n, d);
        let target = monomials(vars, degree);
        let index: HashMap<Vec<u32>, u32> =
            target.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let table = |gdeg: u32| -> (Vec<u32>, usize, usize) {
            let gm = monomials(vars, gdeg);
            let mm = monomials(vars, degree - gdeg);
            let mut cols = Vec::with_capacity(gm.len() * mm.len());
            for m in &mm {
                for g in &gm {
                    let prod: Vec<u32> = m.iter().zip(g).map(|(a, b)| a + b).collect();
                    cols.push(index[&prod]);
                }
            }
            (cols, gm.len(), mm.len())
        };
        let mut gens = Vec::new();
        if d >= 1 {
            let (cols, gen_len, mult_len) = table(d - 1);
            for i in 0..vars {
                gens.push(Generator { partial: Some(i), cols: cols.clone(), gen_len, mult_len });
            }
        }
        if includes_form(q, d) || d == 0 {
            let (cols, gen_len, mult_len) = table(d);
            gens.insert(0, Generator { partial: None, cols, gen_len, mult_len });
        }
        let src = monomials(vars, d);
        let dst: HashMap<Vec<u32>, usize> = if d >= 1 {
            monomials(vars, d - 1).into_iter().enumerate().map(|(i, m)| (m, i)).collect()
        } else {
            HashMap::new()
        };
        let partial_maps = (0..vars)
            .map(|i| {
                src.iter()
                    .enumerate()
                    .filter(|(_, m)| m[i] > 0 && m[i] % q != 0)
                    .map(|(j, m)| {
                        let mut t = m.clone();
                        t[i] -= 1;
                        (j, dst[&t], (m[i] % q) as u8)
                    })
                    .collect()
            })
            .collect();
        RankPlan { q, n, d, degree, cols: target.len(), gens, partial_maps }
    }

    pub fn columns(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.gens.iter().map(|g| g.mult_len).sum()
    }
}

/// Reusable elimination workspace for one [`RankPlan`].
#[derive(Clone, Debug)]
pub struct RankTester {
    plan: Arc<RankPlan>,
    words: usize,
    pivots_bits: Vec<u64>,
    pivots_dense: Vec<u8>,
    has_pivot: Vec<bool>,
    row_bits: Vec<u64>,
    row_dense: Vec<u8>,
    partials: Vec<Vec<u8>>,
    inverses: Vec<u8>,
}

impl RankTester {
    pub fn new(plan: Arc<RankPlan>) -> Self {
        let cols = plan.cols;
        let words = cols.div_ceil(64);
        let q = plan.q;
        let inverses = (0..q)
            .map(|a| (1..q).find(|b| a * b % q == 1).unwrap_or(0) as u8)
            .collect();
        let plen = if plan.d >= 1 { monomial_count(plan.n, plan.d - 1) } else { 0 };
        RankTester {
            words,
            pivots_bits: vec![0; if q == 2 { cols * words } else { 0 }],
            pivots_dense: vec![0; if q == 2 { 0 } else { cols * cols }],
            has_pivot: vec![false; cols],
            row_bits: vec![0; words],
            row_dense: vec![0; cols],
            partials: vec![vec![0; plen]; plan.n as usize + 1],
            inverses,
            plan,
        }
    }

    pub fn plan(&self) -> &RankPlan {
        &self.plan
    }

    /// Does `(f, partials)` span every degree-`D` monomial?
    pub fn full_rank(&mut self, coeffs: &[u8]) -> bool {
        let plan = Arc::clone(&self.plan);
        let q = plan.q as u32;
        for (i, map) in plan.partial_maps.iter().enumerate() {
            let buf = &mut self.partials[i];
            buf.iter_mut().for_each(|x| *x = 0);
            for &(s, t, k) in map {
                buf[t] = ((buf[t] as u32 + coeffs[s] as u32 * k as u32) % q) as u8;
            }
        }
        self.has_pivot.iter_mut().for_each(|x| *x = false);
        let mut rank = 0;
        for gen in &plan.gens {
            let gc: &[u8] = match gen.partial {
                Some(i) => &self.partials[i],
                None => coeffs,
            };
            let support: Vec<(usize, u8)> =
                gc.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
            if support.is_empty() {
                continue;
            }
            for m in 0..gen.mult_len {
                let cols = &gen.cols[m * gen.gen_len..(m + 1) * gen.gen_len];
                let inserted = if q == 2 {
                    self.row_bits.iter_mut().for_each(|w| *w = 0);
                    for &(g, _) in &support {
                        let c = cols[g] as usize;
                        self.row_bits[c / 64] |= 1 << (c % 64);
                    }
                    self.insert_bits()
                } else {
                    self.row_dense.iter_mut().for_each(|x| *x = 0);
                    for &(g, c) in &support {
                        self.row_dense[cols[g] as usize] = c;
                    }
                    self.insert_dense()
                };
                if inserted {
                    rank += 1;
                    if rank == plan.cols {
                        return true;
                    }
                }
            }
        }
        rank == plan.cols
    }

    fn insert_bits(&mut self) -> bool {
        let w = self.words;
        let mut start = 0;
        loop {
            let Some(wi) = (start..w).find(|&i| self.row_bits[i] != 0) else {
                return false;
            };
            start = wi;
            let c = wi * 64 + self.row_bits[wi].trailing_zeros() as usize;
            let piv = &mut self.pivots_bits[c * w..(c + 1) * w];
            if self.has_pivot[c] {
                for k in wi..w {
                    self.row_bits[k] ^= piv[k];
                }
            } else {
                piv.copy_from_slice(&self.row_bits);
                self.has_pivot[c] = true;
                return true;
            }
        }
    }

    fn insert_dense(&mut self) -> bool {
        let cols = self.plan.cols;
        let q = self.plan.q as u32;
        for c in 0..cols {
            let lead = self.row_dense[c] as u32;
            if lead == 0 {
                continue;
            }
            let piv = &mut self.pivots_dense[c * cols..(c + 1) * cols];
            if self.has_pivot[c] {
                let f = q - lead;
                for k in c..cols {
                    self.row_dense[k] = ((self.row_dense[k] as u32 + f * piv[k] as u32) % q) as u8;
                }
            } else {
                let inv = self.inverses[lead as usize] as u32;
                for k in c..cols {
                    piv[k] = ((self.row_dense[k] as u32 * inv) % q) as u8;
                }
                self.has_pivot[c] = true;
                return true;
            }
        }
        false
    }
}

/// Rational-point fast path plus rank test.
#[derive(Clone, Debug)]
pub struct SmoothnessTester {
    rank: RankTester,
    rational: Arc<PointSet>,
    /// Point-major values of the degree-`d` monomials at rational points.
    values: Arc<Vec<u16>>,
    vars: usize,
    terms: usize,
}

impl SmoothnessTester {
    pub fn new(q: u32, n: u32, d: u32) -> crate::Result<Self> {
        let field = Field::new(q, 1)?;
        let rational = PointSet::new(field, n);
        let monos = monomials(n as usize + 1, d);
        let values = rational.monomial_rows(&monos);
        Ok(SmoothnessTester {
            rank: RankTester::new(Arc::new(RankPlan::new(q, n, d))),
            rational: Arc::new(rational),
            values: Arc::new(values),
            vars: n as usize + 1,
            terms: monos.len(),
        })
    }

    pub fn plan(&self) -> &RankPlan {
        self.rank.plan()
    }

    /// A rational point where `f` and all partials vanish.
    pub fn rational_singular_point(&self, form: &Form) -> Option<Vec<u16>> {
        let q = self.plan().q;
        let monos = monomials(self.vars, form.d);
        for (pi, pt) in self.rational.points.iter().enumerate() {
            let row = &self.values[pi * self.terms..(pi + 1) * self.terms];
            let fv: u32 = form.coeffs.iter().zip(row).map(|(&c, &v)| c as u32 * v as u32).sum();
            if fv % q != 0 {
                continue;
            }
            let singular = (0..self.vars).all(|i| {
                let mut s = 0u32;
                for (j, m) in monos.iter().enumerate() {
                    let c = form.coeffs[j] as u32;
                    if c == 0 || m[i] == 0 {
                        continue;
                    }
                    let mut v = c * (m[i] % q);
                    for (k, (&x, &e)) in pt.iter().zip(m).enumerate() {
                        let e = if k == i { e - 1 } else { e };
                        v = v * pow_mod(x as u32, e, q) % q;
                    }
                    s += v;
                }
                s % q == 0
            });
            if singular {
                return Some(pt.clone());
            }
        }
        None
    }

    /// Exact test without the fast path.
    pub fn rank_test(&mut self, coeffs: &[u8]) -> bool {
        self.rank.full_rank(coeffs)
    }

    pub fn is_smooth(&mut self, form: &Form) -> bool {
        if form.is_zero() {
            return false;
        }
        if self.rational_singular_point(form).is_some() {
            return false;
        }
        self.rank.full_rank(&form.coeffs)
    }
}

fn pow_mod(x: u32, e: u32, q: u32) -> u32 {
    (0..e).fold(1, |acc, _| acc * x % q)
}

/// One-shot smoothness decision.
pub fn is_smooth(form: &Form) -> crate::Result<bool> {
    Ok(SmoothnessTester::new(form.q, form.n, form.d)?.is_smooth(form))
}

/// Point-scan decider: looks for a common zero of `f` and its partials over
/// `F_{q^e}` for `e` in {4, 5, 6}, which together contain every `F_{q^e}` with
/// `e <= 6`.
#[derive(Debug)]
pub struct PointScan {
    pub q: u32,
    pub n: u32,
    pub d: u32,
    layers: Vec<ScanLayer>,
}

#[derive(Debug)]
struct ScanLayer {
    field: Field,
    points: usize,
    /// Point-major values of degree-`d` monomials.
    f_values: Vec<u16>,
    /// Point-major values of degree-`(d-1)` monomials.
    p_values: Vec<u16>,
}

pub const SCAN_DEGREES: [u32; 3] = [4, 6, 5];

impl PointScan {
    pub fn new(q: u32, n: u32, d: u32) -> crate::Result<Self> {
        Self::with_degrees(q, n, d, &SCAN_DEGREES)
    }

    pub fn with_degrees(q: u32, n: u32, d: u32, degrees: &[u32]) -> crate::Result<Self> {
        let vars = n as usize + 1;
        let fm = monomials(vars, d);
        let pm = monomials(vars, d.saturating_sub(1));
        let mut layers = Vec::new();
        for &e in degrees {
            let ps = PointSet::new(Field::new(q, e)?, n);
            layers.push(ScanLayer {
                points: ps.len(),
                f_values: ps.monomial_rows(&fm),
                p_values: ps.monomial_rows(&pm),
                field: ps.field,
            });
        }
        Ok(PointScan { q, n, d, layers })
    }

    pub fn is_smooth(&self, form: &Form) -> bool {
        if form.is_zero() {
            return false;
        }
        let fterms: Vec<(usize, u16)> =
            form.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c as u16)).collect();
        let partials: Vec<Vec<(usize, u16)>> = (0..=form.n as usize)
            .map(|i| {
                form.partial(i)
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(j, &c)| (j, c as u16))
                    .collect()
            })
            .collect();
        let flen = monomial_count(form.n, form.d);
        let plen = monomial_count(form.n, form.d.saturating_sub(1));
        for layer in &self.layers {
            let f = &layer.field;
            let eval = |vals: &[u16], terms: &[(usize, u16)]| {
                terms.iter().fold(0u16, |acc, &(j, c)| {
                    let v = vals[j];
                    f.add(acc, if c == 1 { v } else { f.mul(c, v) })
                })
            };
            for pi in 0..layer.points {
                if eval(&layer.f_values[pi * flen..(pi + 1) * flen], &fterms) != 0 {
                    continue;
                }
                let pv = &layer.p_values[pi * plen..(pi + 1) * plen];
                if partials.iter().all(|t| eval(pv, t) == 0) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_forms(q: u32, n: u32, d: u32) -> impl Iterator<Item = Form> {
        let len = monomial_count(n, d);
        (0..(q as u64).pow(len as u32)).map(move |mut i| {
            let coeffs = (0..len)
                .map(|_| {
                    let c = (i % q as u64) as u8;
                    i /= q as u64;
                    c
                })
                .collect();
            Form::new(q, n, d, coeffs).unwrap()
        })
    }

    #[test]
    fn lines_are_smooth_and_double_line_is_not() {
        let mut t = SmoothnessTester::new(2, 2, 1).unwrap();
        let smooth = all_forms(2, 2, 1).filter(|f| t.is_smooth(f)).count();
        assert_eq!(smooth, 7);
        let x2 = Form::from_terms(3, 2, 2, &[(vec![2, 0, 0], 1)]).unwrap();
        assert!(!is_smooth(&x2).unwrap());
        assert!(!is_smooth(&Form::new(2, 2, 3, vec![0; 10]).unwrap()).unwrap());
    }

    #[test]
    fn fermat_and_nodal_cubics() {
        // x^3 + y^3 + z^3 is smooth over F_2, y^2 z = x^3 + x^2 z is nodal
        let fermat = Form::from_terms(2, 2, 3, &[(vec![3, 0, 0], 1), (vec![0, 3, 0], 1), (vec![0, 0, 3], 1)]).unwrap();
        assert!(is_smooth(&fermat).unwrap());
        let nodal =
            Form::from_terms(2, 2, 3, &[(vec![0, 2, 1], 1), (vec![3, 0, 0], 1), (vec![2, 0, 1], 1)]).unwrap();
        assert!(!is_smooth(&nodal).unwrap());
    }

    #[test]
    fn rank_test_on_conics_over_f3() {
        // x^2 + y^2 over F_3 splits over F_9 into two lines
        let mut t = SmoothnessTester::new(3, 2, 2).unwrap();
        let pair = Form::from_terms(3, 2, 2, &[(vec![2, 0, 0], 1), (vec![0, 2, 0], 1)]).unwrap();
        assert!(!t.rank_test(&pair.coeffs));
        let smooth = Form::from_terms(3, 2, 2, &[(vec![2, 0, 0], 1), (vec![0, 2, 0], 1), (vec![0, 0, 2], 1)]).unwrap();
        assert!(t.rank_test(&smooth.coeffs));
    }

    #[test]
    fn rank_test_alone_matches_point_scan_on_conics_over_f2() {
        let scan = PointScan::new(2, 2, 2).unwrap();
        let mut t = SmoothnessTester::new(2, 2, 2).unwrap();
        for f in all_forms(2, 2, 2) {
            let rank = !f.is_zero() && t.rank_test(&f.coeffs);
            assert_eq!(rank, scan.is_smooth(&f), "{:?}", f.coeffs);
            assert_eq!(t.is_smooth(&f), rank);
        }
    }

    #[test]
    fn rank_degree_cases() {
        assert_eq!(rank_degree(2, 2, 5), 11);
        assert_eq!(rank_degree(2, 2, 4), 10);
        assert_eq!(rank_degree(3, 2, 3), 7);
        assert_eq!(rank_degree(2, 1, 12), 23);
        assert_eq!(rank_degree(2, 1, 1), 0);
        assert_eq!(rank_degree(2, 2, 1), 0);
    }
}
