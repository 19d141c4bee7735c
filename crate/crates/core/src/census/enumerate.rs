//! Exhaustive enumeration of all degree-`d` forms in a modular Gray-code order.
//!
//! Consecutive codes differ by `+1` in a single coefficient, so point values
//! are maintained incrementally by adding one precomputed column per step.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::field::Field;
use super::points::{monomials, PointSet};
use super::report::CensusReport;
use super::smooth::SmoothnessTester;
use crate::arith::{divisors, mobius};
use crate::{Error, Result};

pub const DEFAULT_CAP: u128 = 1 << 22;
pub const DEFAULT_K: u32 = 3;

#[derive(Clone, Debug)]
pub struct CensusOptions {
    /// Worker threads; `None` uses the rayon default.
    pub workers: Option<usize>,
    /// Largest permitted number of forms.
    pub cap: u128,
    /// Forms per work unit; `None` picks a size from the total.
    pub chunk: Option<u64>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { workers: None, cap: DEFAULT_CAP, chunk: None }
    }
}

/// `q^{C(d+n,n)}`, saturating.
pub fn form_count(q: u32, n: u32, d: u32) -> u128 {
    let len = super::points::monomial_count(n, d) as u32;
    (q as u128).checked_pow(len).unwrap_or(u128::MAX)
}

pub fn check_budget(q: u32, n: u32, d: u32, cap: u128) -> Result<u64> {
    let forms = form_count(q, n, d);
    if forms > cap {
        return Err(Error::BudgetExceeded { forms, cap });
    }
    Ok(forms as u64)
}

/// Gray code of `t`: `g_i = (t_i - t_{i+1}) mod q` on base-`q` digits.
pub fn gray_code(q: u32, len: usize, t: u64) -> Vec<u8> {
    let mut digits = Vec::with_capacity(len + 1);
    let mut x = t;
    for _ in 0..len {
        digits.push((x % q as u64) as u32);
        x /= q as u64;
    }
    digits.push(0);
    (0..len).map(|i| ((digits[i] + q - digits[i + 1]) % q) as u8).collect()
}

/// Index of the coefficient that changes between codes `t` and `t + 1`.
pub fn gray_step(q: u32, t: u64) -> usize {
    if q == 2 {
        return t.trailing_ones() as usize;
    }
    let mut j = 0;
    let mut x = t;
    while x % q as u64 == q as u64 - 1 {
        x /= q as u64;
        j += 1;
    }
    j
}

/// Shared read-only tables.
struct Tables {
    q: u32,
    k: u32,
    fields: Vec<Field>,
    /// Start of each `P^n(F_{q^e})` block in the concatenated value vector.
    offsets: Vec<usize>,
    total_points: usize,
    rational: usize,
    vars: usize,
    /// `f_cols[m]`: monomial `m` at every point of every block.
    f_cols: Vec<Vec<u16>>,
    /// `p_cols[m][i * rational + r]`: `d/dx_i` of monomial `m` at rational point `r`.
    p_cols: Vec<Vec<u8>>,
}

impl Tables {
    fn new(q: u32, n: u32, d: u32, k: u32) -> Result<Self> {
        let vars = n as usize + 1;
        let monos = monomials(vars, d);
        let mut fields = Vec::new();
        let mut offsets = Vec::new();
        let mut f_cols = vec![Vec::new(); monos.len()];
        let mut total = 0;
        let mut rational_set = None;
        for e in 1..=k {
            let ps = PointSet::new(Field::new(q, e)?, n);
            offsets.push(total);
            total += ps.len();
            for (m, col) in monos.iter().zip(f_cols.iter_mut()) {
                col.extend(ps.points.iter().map(|pt| ps.monomial_value(pt, m)));
            }
            fields.push(ps.field.clone());
            if e == 1 {
                rational_set = Some(ps);
            }
        }
        let rational = rational_set.expect("K >= 1");
        let r = rational.len();
        let p_cols = monos
            .iter()
            .map(|m| {
                let mut col = vec![0u8; vars * r];
                for i in 0..vars {
                    if m[i] == 0 || m[i] % q == 0 {
                        continue;
                    }
                    let mut dm = m.clone();
                    dm[i] -= 1;
                    for (pi, pt) in rational.points.iter().enumerate() {
                        let v = rational.monomial_value(pt, &dm) as u32;
                        col[i * r + pi] = ((v * (m[i] % q)) % q) as u8;
                    }
                }
                col
            })
            .collect();
        Ok(Tables { q, k, fields, offsets, total_points: total, rational: r, vars, f_cols, p_cols })
    }
}

struct Partial {
    smooth: u64,
    histogram: BTreeMap<Vec<u32>, u64>,
}

fn run_range(tables: &Tables, tester: &mut SmoothnessTester, start: u64, end: u64) -> Partial {
    let q = tables.q;
    let len = tables.f_cols.len();
    let coeffs_init = gray_code(q, len, start);
    let mut coeffs = coeffs_init.clone();
    let mut fvals = vec![0u16; tables.total_points];
    let mut pvals = vec![0u8; tables.vars * tables.rational];
    let point_field: Vec<&Field> = (0..tables.total_points)
        .map(|pi| &tables.fields[tables.offsets.iter().rposition(|&o| o <= pi).unwrap()])
        .collect();
    let add_column = |m: usize, fvals: &mut [u16], pvals: &mut [u8]| {
        let col = &tables.f_cols[m];
        if q == 2 {
            for (v, c) in fvals.iter_mut().zip(col) {
                *v ^= c;
            }
            for (v, c) in pvals.iter_mut().zip(&tables.p_cols[m]) {
                *v ^= c;
            }
        } else {
            for (pi, (v, c)) in fvals.iter_mut().zip(col).enumerate() {
                *v = point_field[pi].add(*v, *c);
            }
            for (v, c) in pvals.iter_mut().zip(&tables.p_cols[m]) {
                *v = ((*v as u32 + *c as u32) % q) as u8;
            }
        }
    };
    for (m, &c) in coeffs_init.iter().enumerate() {
        for _ in 0..c {
            add_column(m, &mut fvals, &mut pvals);
        }
    }
    let mut out = Partial { smooth: 0, histogram: BTreeMap::new() };
    let r = tables.rational;
    let mut t = start;
    loop {
        if coeffs.iter().any(|&c| c != 0) {
            let rational_singular = (0..r).any(|pi| {
                fvals[pi] == 0 && (0..tables.vars).all(|i| pvals[i * r + pi] == 0)
            });
            if !rational_singular && tester.rank_test(&coeffs) {
                out.smooth += 1;
                let counts: Vec<u64> = (0..tables.k as usize)
                    .map(|b| {
                        let end = tables.offsets.get(b + 1).copied().unwrap_or(tables.total_points);
                        fvals[tables.offsets[b]..end].iter().filter(|&&v| v == 0).count() as u64
                    })
                    .collect();
                *out.histogram.entry(closed_points(&counts)).or_insert(0) += 1;
            }
        }
        if t + 1 >= end {
            break;
        }
        let j = gray_step(q, t);
        coeffs[j] = ((coeffs[j] as u32 + 1) % q) as u8;
        add_column(j, &mut fvals, &mut pvals);
        t += 1;
    }
    out
}

/// Closed points of each degree from point counts `N_1, ..., N_K`.
pub fn closed_points(counts: &[u64]) -> Vec<u32> {
    (1..=counts.len() as u32)
        .map(|k| {
            let s: i64 = divisors(k).into_iter().map(|e| mobius(k / e) * counts[e as usize - 1] as i64).sum();
            (s / k as i64) as u32
        })
        .collect()
}

/// Enumerate every form of degree `d` on `P^n` over `F_q` and tabulate the
/// closed-point counts of the smooth ones.
pub fn census(q: u32, n: u32, d: u32, k: u32, opts: &CensusOptions) -> Result<CensusReport> {
    if q != 2 && q != 3 {
        return Err(Error::UnsupportedField(format!("census needs q in {{2, 3}}, got {q}")));
    }
    if d == 0 || n == 0 || k == 0 || k > 6 {
        return Err(Error::ParameterMismatch(format!("census needs n, d >= 1 and 1 <= K <= 6 (n={n}, d={d}, K={k})")));
    }
    let total = check_budget(q, n, d, opts.cap)?;
    let tables = Arc::new(Tables::new(q, n, d, k)?);
    let tester = SmoothnessTester::new(q, n, d)?;
    let chunk = opts.chunk.unwrap_or_else(|| (total / 512).clamp(1, 1 << 14)).max(1);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let work = || -> Vec<Partial> {
        starts
            .par_iter()
            .map_init(
                || tester.clone(),
                |tester, &s| run_range(&tables, tester, s, (s + chunk).min(total)),
            )
            .collect()
    };
    let parts = match opts.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::ParameterMismatch(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    let mut smooth = 0;
    let mut histogram = BTreeMap::new();
    for p in parts {
        smooth += p.smooth;
        for (key, c) in p.histogram {
            *histogram.entry(key).or_insert(0) += c;
        }
    }
    Ok(CensusReport { q, n, d, k, total, smooth, histogram })
}

/// Single-threaded census without Gray-code increments: every form is built
/// and tested from scratch. Slow, used as an oracle.
pub fn census_naive(q: u32, n: u32, d: u32, k: u32) -> Result<CensusReport> {
    use super::form::Form;
    let total = check_budget(q, n, d, DEFAULT_CAP)?;
    let len = super::points::monomial_count(n, d);
    let mut tester = SmoothnessTester::new(q, n, d)?;
    let sets: Vec<PointSet> = (1..=k).map(|e| Field::new(q, e).map(|f| PointSet::new(f, n))).collect::<Result<_>>()?;
    let mut smooth = 0;
    let mut histogram = BTreeMap::new();
    for idx in 0..total {
        let mut x = idx;
        let coeffs = (0..len)
            .map(|_| {
                let c = (x % q as u64) as u8;
                x /= q as u64;
                c
            })
            .collect();
        let f = Form::new(q, n, d, coeffs)?;
        if tester.is_smooth(&f) {
            smooth += 1;
            let counts: Vec<u64> = sets.iter().map(|ps| f.count_zeros(ps)).collect();
            *histogram.entry(closed_points(&counts)).or_insert(0) += 1;
        }
    }
    Ok(CensusReport { q, n, d, k, total, smooth, histogram })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn gray_code_is_a_bijection_with_unit_steps() {
        for (q, len) in [(2u32, 6usize), (3, 4)] {
            let total = (q as u64).pow(len as u32);
            let codes: Vec<Vec<u8>> = (0..total).map(|t| gray_code(q, len, t)).collect();
            assert_eq!(codes.iter().collect::<HashSet<_>>().len(), total as usize);
            for t in 0..total - 1 {
                let j = gray_step(q, t);
                let mut next = codes[t as usize].clone();
                next[j] = ((next[j] as u32 + 1) % q) as u8;
                assert_eq!(next, codes[t as usize + 1]);
            }
        }
    }

    #[test]
    fn lines_in_the_plane() {
        let r = census(2, 2, 1, 2, &CensusOptions::default()).unwrap();
        assert_eq!(r.total, 8);
        assert_eq!(r.smooth, 7);
        assert_eq!(r.histogram.get(&vec![3, 1]), Some(&7));
    }

    #[test]
    fn budget_refusal() {
        let err = census(2, 2, 12, 3, &CensusOptions::default()).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { cap, .. } if cap == DEFAULT_CAP));
    }

    #[test]
    fn incremental_matches_naive() {
        for (q, n, d, k) in [(2, 2, 2, 3), (2, 2, 3, 2), (3, 2, 2, 2), (3, 1, 3, 3), (2, 1, 6, 3)] {
            let opts = CensusOptions { chunk: Some(37), ..Default::default() };
            assert_eq!(census(q, n, d, k, &opts).unwrap(), census_naive(q, n, d, k).unwrap(), "{q} {n} {d}");
        }
    }

    #[test]
    fn closed_points_inversion() {
        // P^1 over F_2: N_e = 2^e + 1
        assert_eq!(closed_points(&[3, 5, 9, 17]), vec![3, 1, 2, 3]);
    }
}
