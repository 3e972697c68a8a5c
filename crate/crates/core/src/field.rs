//! Finite fields F_{p^m} in a polynomial basis.

use std::fmt;

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::poly::modp;

/// The field F_{p^m} = `F_p[x]/(f)` where `f` is the lexicographically
/// smallest monic irreducible polynomial of degree `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    m: u32,
    /// Modulus coefficients from the constant term; length m+1, monic.
    modulus: Vec<u64>,
}

/// An element of a [`FiniteField`]: `m` coordinates in the basis
/// `1, x, …, x^{m−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(Vec<u64>);

impl Fq {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

fn is_irreducible_mod(f: &[u64], p: u64) -> bool {
    let f = f.to_vec();
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    if !modp::is_squarefree(&f, p) {
        return false;
    }
    let dd = modp::distinct_degree(&f, p);
    dd.len() == 1 && dd[0].0 == n && modp::deg(&dd[0].1) == Some(n)
}

impl FiniteField {
    /// Largest `p^m` accepted; keeps products inside u64.
    pub const MAX_ORDER: u128 = 1 << 40;

    pub fn new(p: u64, m: u32) -> Result<Self> {
        require_prime(p)?;
        if m == 0 {
            return Err(Error::invalid("field degree must be at least 1"));
        }
        if p >= 1 << 31 || (p as u128).checked_pow(m).is_none_or(|q| q > Self::MAX_ORDER) {
            return Err(Error::invalid(format!("field F_{p}^{m} too large")));
        }
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            let count = p.pow(m);
            (0..count)
                .map(|mut idx| {
                    let mut f: Vec<u64> = (0..m)
                        .map(|_| {
                            let c = idx % p;
                            idx /= p;
                            c
                        })
                        .collect();
                    f.push(1);
                    f
                })
                .find(|f| is_irreducible_mod(f, p))
                .expect("irreducible polynomials exist in every degree")
        };
        Ok(FiniteField { p, m, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.m)
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Fq {
        Fq(vec![0; self.m as usize])
    }

    pub fn one(&self) -> Fq {
        self.from_int(1)
    }

    pub fn from_int(&self, c: i64) -> Fq {
        let mut v = vec![0; self.m as usize];
        v[0] = c.rem_euclid(self.p as i64) as u64;
        Fq(v)
    }

    /// From coordinates (reduced mod p, padded or rejected if too long).
    pub fn from_coords(&self, coords: &[u64]) -> Result<Fq> {
        if coords.len() > self.m as usize {
            return Err(Error::invalid("too many coordinates for field element"));
        }
        let mut v = vec![0; self.m as usize];
        for (slot, &c) in v.iter_mut().zip(coords) {
            *slot = c % self.p;
        }
        Ok(Fq(v))
    }

    /// Element with index `k` in the enumeration of all field elements.
    pub fn element(&self, mut k: u64) -> Fq {
        let v = (0..self.m)
            .map(|_| {
                let c = k % self.p;
                k /= self.p;
                c
            })
            .collect();
        Fq(v)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.order()).map(|k| self.element(k))
    }

    pub fn index(&self, a: &Fq) -> u64 {
        a.0.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn is_zero(&self, a: &Fq) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % self.p).collect())
    }

    pub fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(a.0.iter().zip(&b.0).map(|(x, y)| (x + self.p - y) % self.p).collect())
    }

    pub fn neg(&self, a: &Fq) -> Fq {
        Fq(a.0.iter().map(|x| (self.p - x) % self.p).collect())
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        let p = self.p;
        let m = self.m as usize;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..m {
                prod[k - m + i] = (prod[k - m + i] + (p - self.modulus[i]) * c) % p;
            }
        }
        prod.truncate(m);
        Fq(prod)
    }

    pub fn pow(&self, a: &Fq, mut e: u128) -> Fq {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    pub fn inv(&self, a: &Fq) -> Result<Fq> {
        if self.is_zero(a) {
            return Err(Error::invalid("inverse of zero"));
        }
        Ok(self.pow(a, self.order() as u128 - 2))
    }

    /// `a^{p^k}`; negative `k` uses the inverse Frobenius.
    pub fn frobenius(&self, a: &Fq, k: i64) -> Fq {
        let k = k.rem_euclid(self.m as i64) as u32;
        (0..k).fold(a.clone(), |acc, _| self.pow(&acc, self.p as u128))
    }

    /// Parses `"3"`, `"x"`, `"2*x^2+x+1"` (the generator is `x`).
    pub fn parse(&self, s: &str) -> Result<Fq> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        let mut acc = self.zero();
        let normalized = cleaned.replace('-', "+-");
        for term in normalized.split('+').filter(|t| !t.is_empty()) {
            let (neg, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term),
            };
            let (coef, power) = parse_term(body).ok_or_else(|| Error::Parse(format!("bad field term '{term}'")))?;
            let c = self.from_int((coef % self.p) as i64);
            let t = if power == 0 {
                c
            } else if self.m == 1 {
                return Err(Error::Parse(format!("prime field has no generator: '{term}'")));
            } else {
                let x = self.from_coords(&[0, 1])?;
                self.mul(&self.pow(&x, power as u128), &c)
            };
            acc = if neg { self.sub(&acc, &t) } else { self.add(&acc, &t) };
        }
        Ok(acc)
    }

    pub fn render(&self, a: &Fq) -> String {
        let terms: Vec<String> =
            a.0.iter()
                .enumerate()
                .rev()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| match (i, c) {
                    (0, c) => c.to_string(),
                    (1, 1) => "x".to_string(),
                    (1, c) => format!("{c}*x"),
                    (i, 1) => format!("x^{i}"),
                    (i, c) => format!("{c}*x^{i}"),
                })
                .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn parse_term(t: &str) -> Option<(u64, u64)> {
    if let Some(pos) = t.find('x') {
        let coef = match &t[..pos] {
            "" => 1,
            c => c.strip_suffix('*')?.parse().ok()?,
        };
        let power = match &t[pos + 1..] {
            "" => 1,
            rest => rest.strip_prefix('^')?.parse().ok()?,
        };
        Some((coef, power))
    } else {
        Some((t.parse().ok()?, 0))
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p, self.m)
    }
}
