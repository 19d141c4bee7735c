//! Small finite fields `F_{p^e}` with `p` in {2, 3} and `e <= 6`, via
//! exponential and logarithm tables.
//!
//! An element is its coefficient vector in the polynomial basis
//! `1, x, ..., x^{e-1}`, packed as a base-`p` integer.

use crate::{Error, Result};

/// Pinned monic irreducible (and primitive) polynomials, coefficients from
/// `x^0` up to `x^{e-1}`; the leading `x^e` is implicit.
fn pinned_modulus(p: u32, e: u32) -> Option<&'static [u32]> {
    let table: &[&[u32]] = match p {
        2 => &[&[1], &[1, 1], &[1, 1, 0], &[1, 1, 0, 0], &[1, 0, 1, 0, 0], &[1, 1, 0, 1, 1, 0]],
        3 => &[&[1], &[2, 2], &[1, 2, 0], &[2, 0, 0, 2], &[1, 2, 0, 0, 0], &[2, 2, 1, 0, 2, 0]],
        _ => return None,
    };
    table.get(e as usize - 1).copied()
}

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    e: u32,
    size: u32,
    modulus: Vec<u32>,
    exp: Vec<u16>,
    log: Vec<u16>,
    add: Vec<u16>,
}

impl Field {
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if e == 0 || e > 6 {
            return Err(Error::UnsupportedField(format!("F_{p}^{e}: extension degree must be 1..=6")));
        }
        let modulus = pinned_modulus(p, e)
            .ok_or_else(|| Error::UnsupportedField(format!("characteristic {p} (only 2 and 3)")))?
            .to_vec();
        let size = p.pow(e);
        let mut f = Field { p, e, size, modulus, exp: Vec::new(), log: Vec::new(), add: Vec::new() };
        if p != 2 {
            let mut add = vec![0u16; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    add[(a * size + b) as usize] = f.add_slow(a, b) as u16;
                }
            }
            f.add = add;
        }
        f.build_tables()?;
        Ok(f)
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0; self.e as usize];
        for x in d.iter_mut() {
            *x = a % self.p;
            a /= self.p;
        }
        d
    }

    fn pack(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&s)
    }

    /// Schoolbook product reduced by the pinned modulus.
    pub fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let e = self.e as usize;
        let mut prod = vec![0u32; 2 * e];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        // x^e = -modulus
        for i in (e..2 * e).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.modulus.iter().enumerate() {
                prod[i - e + j] = (prod[i - e + j] + c * (self.p - m % self.p)) % self.p;
            }
        }
        self.pack(&prod[..e])
    }

    fn build_tables(&mut self) -> Result<()> {
        let order = self.size - 1;
        let candidates: Vec<u32> = if self.e == 1 { (1..self.size).collect() } else { (2..self.size).collect() };
        for g in candidates {
            let mut exp = Vec::with_capacity(order as usize);
            let mut log = vec![u16::MAX; self.size as usize];
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..order {
                if log[x as usize] != u16::MAX {
                    ok = false;
                    break;
                }
                log[x as usize] = i as u16;
                exp.push(x as u16);
                x = self.mul_slow(x, g);
            }
            if ok && x == 1 {
                self.exp = exp;
                self.log = log;
                return Ok(());
            }
        }
        Err(Error::UnsupportedField(format!("no generator found for F_{}", self.size)))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Stable identifier of the modulus, e.g. `2^3:1,1,0`.
    pub fn modulus_id(&self) -> String {
        let c: Vec<String> = self.modulus.iter().map(u32::to_string).collect();
        format!("{}^{}:{}", self.p, self.e, c.join(","))
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        if self.p == 2 {
            a ^ b
        } else {
            self.add[a as usize * self.size as usize + b as usize]
        }
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u32 + self.log[b as usize] as u32;
        self.exp[(s % (self.size - 1)) as usize]
    }

    pub fn neg(&self, a: u16) -> u16 {
        if self.p == 2 {
            return a;
        }
        let d: Vec<u32> = self.digits(a as u32).iter().map(|&x| (self.p - x) % self.p).collect();
        self.pack(&d) as u16
    }

    pub fn inv(&self, a: u16) -> u16 {
        assert!(a != 0, "zero has no inverse");
        let order = self.size - 1;
        self.exp[((order - self.log[a as usize] as u32) % order) as usize]
    }

    pub fn pow(&self, a: u16, k: u32) -> u16 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.size - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * k as u64) % order) as usize]
    }

    /// The prime-field element `c mod p`.
    pub fn from_int(&self, c: u32) -> u16 {
        (c % self.p) as u16
    }
}
