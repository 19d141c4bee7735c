//! Pass/fail tables. Every number is tagged: exact values are printed as
//! rationals, toleranced ones as decimals next to their band.

use std::fmt::{self, Display};

use stablesect::ring::to_f64;
use stablesect::BigRational;
use num_traits::Signed;

#[derive(Clone, Debug, PartialEq)]
pub enum Tag {
    Exact,
    Toleranced { deviation: f64, tol: f64 },
}

#[derive(Clone, Debug)]
pub struct Row {
    pub check: String,
    pub observed: String,
    pub expected: String,
    pub tag: Tag,
    pub pass: bool,
}

impl Row {
    pub fn exact(check: impl Into<String>, observed: impl Display, expected: impl Display, pass: bool) -> Self {
        Row { check: check.into(), observed: observed.to_string(), expected: expected.to_string(), tag: Tag::Exact, pass }
    }

    /// Passes when `|observed - expected| <= tol`; the comparison itself is exact.
    pub fn toleranced(check: impl Into<String>, observed: &BigRational, expected: &BigRational, tol: f64) -> Self {
        let dev = (observed - expected).abs();
        let band = BigRational::from_float(tol).expect("finite tolerance");
        Row {
            check: check.into(),
            observed: format!("{:.6}", to_f64(observed)),
            expected: expected.to_string(),
            tag: Tag::Toleranced { deviation: to_f64(&dev), tol },
            pass: dev <= band,
        }
    }

    /// Like [`Row::toleranced`] with an exact rational band.
    pub fn bounded(check: impl Into<String>, observed: &BigRational, expected: &BigRational, bound: &BigRational) -> Self {
        let dev = (observed - expected).abs();
        Row {
            check: check.into(),
            observed: format!("{:.6}", to_f64(observed)),
            expected: format!("{:.6}", to_f64(expected)),
            tag: Tag::Toleranced { deviation: to_f64(&dev), tol: to_f64(bound) },
            pass: &dev <= bound,
        }
    }

    fn tag_text(&self) -> String {
        match self.tag {
            Tag::Exact => "exact".into(),
            Tag::Toleranced { deviation, tol } => format!("toleranced |delta|={deviation:.6e} band={tol:e}"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub rows: Vec<Row>,
}

impl Table {
    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass).count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("status,check,observed,expected,tag\n");
        for r in &self.rows {
            let status = if r.pass { "PASS" } else { "FAIL" };
            let fields = [status.to_string(), r.check.clone(), r.observed.clone(), r.expected.clone(), r.tag_text()];
            let quoted: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
            out.push_str(&quoted.join(","));
            out.push('\n');
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = |g: fn(&Row) -> &str, head: &str| self.rows.iter().map(|r| g(r).len()).chain([head.len()]).max().unwrap();
        let wc = width(|r| &r.check, "check");
        let wo = width(|r| &r.observed, "observed");
        let we = width(|r| &r.expected, "expected");
        writeln!(f, "{:<6}  {:<wc$}  {:<wo$}  {:<we$}  tag", "status", "check", "observed", "expected")?;
        for r in &self.rows {
            let status = if r.pass { "PASS" } else { "FAIL" };
            writeln!(f, "{status:<6}  {:<wc$}  {:<wo$}  {:<we$}  {}", r.check, r.observed, r.expected, r.tag_text())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn tolerance_band_is_inclusive() {
        assert!(Row::toleranced("x", &r(31, 10), &r(3, 1), 0.1).pass);
        assert!(!Row::toleranced("x", &r(32, 10), &r(3, 1), 0.1).pass);
    }

    #[test]
    fn rendering() {
        let mut t = Table::default();
        t.push(Row::exact("a", 0, 0, true));
        t.push(Row::toleranced("b, c", &r(1, 3), &r(0, 1), 0.05));
        assert!(!t.all_pass());
        assert_eq!(t.failures(), 1);
        let text = t.to_string();
        assert!(text.contains("PASS    a"));
        assert!(text.lines().nth(2).unwrap().starts_with("FAIL    b, c   0.333333  0 "));
        assert!(t.to_csv().contains("FAIL,\"b, c\",0.333333,0,"));
    }
}
