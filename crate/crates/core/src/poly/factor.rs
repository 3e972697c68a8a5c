//! Factorization over Z for monic polynomials: modular factorization,
//! Hensel lifting and Zassenhaus recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, Poly};
use super::{QPoly, ZPoly};
use crate::arith::is_prime;

/// Number of good primes inspected before picking one for lifting.
const PRIMES_TRIED: usize = 8;

fn to_modp(f: &ZPoly, l: u64) -> Poly {
    let lb = BigInt::from(l);
    let mut v: Poly = f.coeffs().iter().map(|c| c.mod_floor(&lb).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn from_modp(f: &Poly) -> ZPoly {
    ZPoly::new(f.iter().map(|&c| BigInt::from(c)).collect())
}

fn reduce(f: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(f: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m >> 1;
    ZPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn q_to_z(f: &QPoly) -> Option<ZPoly> {
    let mut out = Vec::new();
    for c in f.coeffs() {
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer());
    }
    Some(ZPoly::new(out))
}

/// Lifts `f ≡ g0·h0 (mod l)` to `f ≡ g·h (mod l^k)` with `g`, `h` monic.
fn hensel_pair(f: &ZPoly, g0: &Poly, h0: &Poly, l: u64, k: u32) -> (ZPoly, ZPoly) {
    let (s, t) = modp::ext_gcd(g0, h0, l);
    let lb = BigInt::from(l);
    let full = lb.pow(k);
    let mut g = from_modp(g0);
    let mut h = from_modp(h0);
    let mut lj = lb.clone();
    for _ in 1..k {
        let e = reduce(&f.sub(&g.mul(&h)), &full);
        let e_div = ZPoly::new(e.coeffs().iter().map(|c| c / &lj).collect());
        let e_bar = to_modp(&e_div, l);
        let (q, a) = modp::div_rem(&modp::mul(&t, &e_bar, l), g0, l);
        let b = modp::add(&modp::mul(&s, &e_bar, l), &modp::mul(&q, h0, l), l);
        g = g.add(&from_modp(&a).scale(&lj));
        h = h.add(&from_modp(&b).scale(&lj));
        lj *= &lb;
    }
    (reduce(&g, &full), reduce(&h, &full))
}

fn hensel_all(f: &ZPoly, factors: &[Poly], l: u64, k: u32) -> Vec<ZPoly> {
    let mut out = Vec::with_capacity(factors.len());
    let mut rest = f.clone();
    for i in 0..factors.len() - 1 {
        let tail = factors[i + 1..].iter().fold(vec![1u64], |acc, g| modp::mul(&acc, g, l));
        let (g, h) = hensel_pair(&rest, &factors[i], &tail, l, k);
        out.push(g);
        rest = h;
    }
    out.push(rest);
    out
}

fn isqrt_ceil(n: &BigInt) -> BigInt {
    let r = n.sqrt();
    if &(&r * &r) == n {
        r
    } else {
        r + 1
    }
}

/// Calls `visit` on every subset of `0..r` of size `size`; stops early when
/// `visit` returns a value.
fn subsets<T>(r: usize, size: usize, visit: &mut impl FnMut(&[usize]) -> Option<T>) -> Option<T> {
    fn rec<T>(
        start: usize,
        r: usize,
        size: usize,
        cur: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> Option<T>,
    ) -> Option<T> {
        if cur.len() == size {
            return visit(cur);
        }
        for i in start..r {
            if r - i < size - cur.len() {
                break;
            }
            cur.push(i);
            if let Some(t) = rec(i + 1, r, size, cur, visit) {
                return Some(t);
            }
            cur.pop();
        }
        None
    }
    rec(0, r, size, &mut Vec::new(), visit)
}

/// A nontrivial monic factor of the monic integer polynomial `f`, or `None`
/// when `f` is irreducible over Q.
pub fn find_factor(f: &ZPoly) -> Option<ZPoly> {
    assert!(f.is_monic(), "find_factor requires a monic polynomial");
    let n = f.degree().unwrap();
    if n <= 1 {
        return None;
    }
    if f.coeff(0).is_zero() {
        return Some(ZPoly::from_i64(&[0, 1]));
    }
    let fq = f.to_q();
    let g = fq.gcd(&fq.derivative());
    if g.degree().unwrap_or(0) > 0 {
        // Gauss: a monic rational factor of a monic integer polynomial is integral.
        return q_to_z(&g);
    }

    // Choose the good prime with the fewest modular factors.
    let mut best: Option<(u64, usize)> = None;
    let mut tried = 0;
    let mut l = 2u64;
    while tried < PRIMES_TRIED {
        l += 1;
        if !is_prime(l) {
            continue;
        }
        let fl = to_modp(f, l);
        if !modp::is_squarefree(&fl, l) {
            continue;
        }
        tried += 1;
        let count: usize = modp::distinct_degree(&fl, l)
            .iter()
            .map(|(d, g)| g.len().saturating_sub(1) / d)
            .sum();
        if count == 1 {
            return None;
        }
        if best.is_none_or(|(_, c)| count < c) {
            best = Some((l, count));
        }
    }
    let (l, _) = best.unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let factors = modp::factor(&to_modp(f, l), l, &mut rng);
    let r = factors.len();

    // Coefficients of any factor are bounded by 2^n · ‖f‖₂.
    let bound = (BigInt::one() << n) * isqrt_ceil(&f.norm2_squared());
    let lb = BigInt::from(l);
    let mut k = 1u32;
    while lb.pow(k) <= &bound * 2 {
        k += 1;
    }
    let modulus = lb.pow(k);
    let lifted = hensel_all(f, &factors, l, k);

    for size in 1..=r / 2 {
        let found = subsets(r, size, &mut |idx: &[usize]| {
            let prod = idx
                .iter()
                .fold(ZPoly::from_i64(&[1]), |acc, &i| reduce(&acc.mul(&lifted[i]), &modulus));
            let cand = symmetric(&prod, &modulus);
            if cand.max_abs() > bound {
                return None;
            }
            f.div_exact_monic(&cand).map(|_| cand)
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Irreducibility over Q of a monic integer polynomial of positive degree.
pub fn is_irreducible(f: &ZPoly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(2) => {
            let disc = f.coeff(1) * f.coeff(1) - BigInt::from(4) * f.coeff(0);
            crate::arith::is_perfect_square(&disc).is_none()
        }
        Some(_) => find_factor(f).is_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(is_irreducible(&ZPoly::from_i64(&[2, -1, 1])));
        assert!(!is_irreducible(&ZPoly::from_i64(&[4, -5, 1])));
        assert!(is_irreducible(&ZPoly::from_i64(&[-2, 0, 0, 1])));
        assert!(!is_irreducible(&ZPoly::from_i64(&[1, 2, 1])));
    }

    #[test]
    fn swinnerton_dyer_style_quartic() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime.
        let f = ZPoly::from_i64(&[1, 0, -10, 0, 1]);
        assert!(is_irreducible(&f));
    }

    #[test]
    fn recovers_hidden_factorization() {
        let a = ZPoly::from_i64(&[1, 0, -10, 0, 1]);
        let b = ZPoly::from_i64(&[-3, 1, 0, 1]);
        let f = a.mul(&b);
        let g = find_factor(&f).expect("reducible");
        assert!(f.div_exact_monic(&g).is_some());
        let d = g.degree().unwrap();
        assert!(d == 3 || d == 4);
    }
}
