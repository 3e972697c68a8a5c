//! The Artin–Hasse series as an exact rational power series.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{require_prime, val_int, Q};
use crate::error::{Error, Result};

/// Coefficients `e_0, …, e_D` of `E(X) = exp(−Σ_{n≥0} X^{p^n}/p^n)`.
pub fn artin_hasse(p: u64, degree: usize) -> Result<Vec<Q>> {
    require_prime(p)?;
    if degree == 0 {
        return Err(Error::invalid("degree cap must be at least 1"));
    }
    // k·s_k, where s is the exponent series: k·s_k = −1 when k is a power of p.
    let mut ks = vec![Q::zero(); degree + 1];
    let mut pk = 1usize;
    while pk <= degree {
        ks[pk] = -Q::one();
        match pk.checked_mul(p as usize) {
            Some(next) => pk = next,
            None => break,
        }
    }
    let mut e = vec![Q::one()];
    for n in 1..=degree {
        let acc: Q = (1..=n).filter(|&k| !ks[k].is_zero()).map(|k| &ks[k] * &e[n - k]).sum();
        e.push(acc / Q::from_integer(BigInt::from(n)));
    }
    Ok(e)
}

/// Whether a rational lies in Z_(p), i.e. its denominator is prime to p.
pub fn is_p_integral(x: &Q, p: u64) -> bool {
    val_int(x.denom(), p) == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn leading_terms() {
        for p in [2, 3, 5, 7] {
            let e = artin_hasse(p, 10).unwrap();
            assert_eq!(e[0], Q::one());
            assert_eq!(e[1], -Q::one());
        }
    }

    #[test]
    fn p_equals_two_by_hand() {
        // exp(−X − X²/2 − X⁴/4): X² coefficient is 1/2 − 1/2 = 0.
        let e = artin_hasse(2, 4).unwrap();
        assert_eq!(e[2], Q::zero());
        assert_eq!(e[3], rat(1, 3));
    }

    #[test]
    fn integrality() {
        for p in [2, 3, 5] {
            assert!(artin_hasse(p, 30).unwrap().iter().all(|c| is_p_integral(c, p)));
        }
    }
}
