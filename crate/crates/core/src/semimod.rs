//! (m,n)-semimodules: subsets of Z bounded below and closed under `+m`,
//! `+n`, up to translation.
//!
//! The normalized representative of a class is the translate `A` with
//! `A ⊂ Z≥0`, `[2r,∞) ⊂ A` and exactly `r` elements in `[0, 2r)`, where
//! `r = (m−1)(n−1)/2`. Equivalently, `A` misses exactly `r` non-negative
//! integers. Those `r` elements are the heads.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemiModule {
    m: u32,
    n: u32,
    heads: Vec<i64>,
}

fn check_pair(m: u32, n: u32) -> Result<i64> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("m and n must be positive"));
    }
    if m.gcd(&n) != 1 {
        return Err(Error::NotCoprime(m as i64, n as i64));
    }
    Ok(((m as i64 - 1) * (n as i64 - 1)) / 2)
}

/// A set `heads ∪ [tail, ∞)` of integers.
fn contains(heads: &BTreeSet<i64>, tail: i64, x: i64) -> bool {
    x >= tail || heads.contains(&x)
}

fn check_closure(heads: &BTreeSet<i64>, tail: i64, m: u32, n: u32) -> Result<()> {
    for &a in heads {
        for step in [m as i64, n as i64] {
            if !contains(heads, tail, a + step) {
                return Err(Error::ClosureViolation(a + step));
            }
        }
    }
    Ok(())
}

impl SemiModule {
    /// `r = (m−1)(n−1)/2`.
    pub fn r_of(m: u32, n: u32) -> Result<i64> {
        check_pair(m, n)
    }

    /// Validates an already normalized head list.
    pub fn new(m: u32, n: u32, heads: Vec<i64>) -> Result<Self> {
        let r = check_pair(m, n)?;
        let set: BTreeSet<i64> = heads.iter().copied().collect();
        if set.len() != heads.len() || set.len() as i64 != r {
            return Err(Error::invalid(format!("need exactly r = {r} distinct heads")));
        }
        if set.iter().any(|&a| a < 0 || a >= 2 * r) {
            return Err(Error::invalid(format!("heads must lie in [0, {})", 2 * r)));
        }
        check_closure(&set, 2 * r, m, n)?;
        Ok(SemiModule {
            m,
            n,
            heads: set.into_iter().collect(),
        })
    }

    /// The normalized translate of `elements ∪ [tail, ∞)`.
    pub fn normalize(elements: &[i64], tail: i64, m: u32, n: u32) -> Result<Self> {
        let r = check_pair(m, n)?;
        let set: BTreeSet<i64> = elements.iter().copied().filter(|&x| x < tail).collect();
        check_closure(&set, tail, m, n)?;
        let min = set.first().copied().unwrap_or(tail);
        let gaps = (min..tail).filter(|x| !set.contains(x)).count() as i64;
        // Shift so that exactly r non-negative integers are missing.
        let shift = r - gaps - min;
        let shifted: BTreeSet<i64> = set.iter().map(|x| x + shift).collect();
        let new_tail = tail + shift;
        let heads: Vec<i64> = (0..2 * r).filter(|&x| contains(&shifted, new_tail, x)).collect();
        if heads.len() as i64 != r || (2 * r..new_tail).any(|x| !shifted.contains(&x)) {
            return Err(Error::invalid("set is not an (m,n)-semimodule"));
        }
        Ok(SemiModule { m, n, heads })
    }

    /// `<0>`: the semigroup generated by m and n.
    pub fn principal(m: u32, n: u32) -> Result<Self> {
        let r = check_pair(m, n)?;
        let (m, n) = (m as i64, n as i64);
        let heads = (0..2 * r)
            .filter(|&x| (0..=x / m).any(|i| (x - i * m) % n == 0))
            .collect();
        Ok(SemiModule {
            m: m as u32,
            n: n as u32,
            heads,
        })
    }

    /// Type of a filtration jump set: `jumps ∪ [last + 1, ∞)`.
    pub fn from_jumps(jumps: &[i64], m: u32, n: u32) -> Result<Self> {
        if jumps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("jumps must be strictly increasing"));
        }
        let tail = jumps.last().map_or(0, |&l| l + 1);
        Self::normalize(jumps, tail, m, n)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> i64 {
        self.heads.len() as i64
    }

    pub fn heads(&self) -> &[i64] {
        &self.heads
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= 2 * self.r() || self.heads.binary_search(&x).is_ok()
    }

    pub fn is_principal(&self) -> bool {
        self.contains(0)
    }

    /// `A^t = {y : 2r − 1 − y ∉ A}`, again normalized.
    pub fn dual(&self) -> Self {
        let r = self.r();
        let heads = (0..2 * r).filter(|&y| !self.contains(2 * r - 1 - y)).collect();
        SemiModule {
            m: self.m,
            n: self.n,
            heads,
        }
    }

    /// All normalized (m,n)-semimodules, sorted by head list.
    pub fn enumerate(m: u32, n: u32) -> Result<Vec<Self>> {
        let r = check_pair(m, n)?;
        let size = 2 * r as usize;
        let mut member = vec![false; size];
        let mut out = Vec::new();
        // Decide membership from the top down so that x+m and x+n are known.
        fn rec(x: i64, left: i64, member: &mut Vec<bool>, m: i64, n: i64, r: i64, out: &mut Vec<Vec<i64>>) {
            if x < 0 {
                if left == 0 {
                    out.push((0..2 * r).filter(|&i| member[i as usize]).collect());
                }
                return;
            }
            if left > x + 1 {
                return;
            }
            let is_in = |y: i64, member: &Vec<bool>| y >= 2 * r || member[y as usize];
            if left > 0 && is_in(x + m, member) && is_in(x + n, member) {
                member[x as usize] = true;
                rec(x - 1, left - 1, member, m, n, r, out);
                member[x as usize] = false;
            }
            rec(x - 1, left, member, m, n, r, out);
        }
        let mut raw = Vec::new();
        rec(2 * r - 1, r, &mut member, m as i64, n as i64, r, &mut raw);
        raw.sort();
        for heads in raw {
            out.push(SemiModule { m, n, heads });
        }
        Ok(out)
    }
}

impl fmt::Display for SemiModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let heads: Vec<String> = self.heads.iter().map(|h| h.to_string()).collect();
        write!(f, "{{{}}} ∪ [{},∞)", heads.join(","), 2 * self.r())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_two_three() {
        let z = SemiModule::principal(2, 3).unwrap();
        assert_eq!(z.heads(), &[0]);
        assert_eq!(z.to_string(), "{0} ∪ [2,∞)");
        assert_eq!(z.dual(), z);
        assert_eq!(SemiModule::enumerate(2, 3).unwrap().len(), 2);
    }

    #[test]
    fn trivial_r() {
        let all = SemiModule::enumerate(1, 5).unwrap();
        assert_eq!(all, vec![SemiModule::principal(1, 5).unwrap()]);
        assert!(all[0].heads().is_empty());
    }

    #[test]
    fn normalization_is_translation_invariant() {
        for a in SemiModule::enumerate(3, 5).unwrap() {
            let tail = 2 * a.r();
            for t in -5..=5 {
                let shifted: Vec<i64> = a.heads().iter().map(|x| x + t).collect();
                assert_eq!(SemiModule::normalize(&shifted, tail + t, 3, 5).unwrap(), a);
            }
        }
    }

    #[test]
    fn closure_violations_are_rejected() {
        assert!(matches!(
            SemiModule::normalize(&[0], 4, 2, 3),
            Err(Error::ClosureViolation(2))
        ));
        assert!(SemiModule::new(2, 3, vec![1]).is_ok());
        assert!(SemiModule::new(2, 4, vec![]).is_err());
    }

    #[test]
    fn jump_sets() {
        // A full tail Z≥t normalizes to [r, ∞).
        let full = SemiModule::from_jumps(&[7, 8, 9], 3, 4).unwrap();
        assert_eq!(full.heads(), &[3, 4, 5]);
        let z = SemiModule::principal(3, 4).unwrap();
        let shifted: Vec<i64> = (0..8).filter(|&x| z.contains(x)).map(|x| x + 10).collect();
        assert_eq!(SemiModule::from_jumps(&shifted, 3, 4).unwrap(), z);
    }
}
