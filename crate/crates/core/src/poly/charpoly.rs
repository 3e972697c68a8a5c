use num_bigint::BigInt;
use num_traits::{One, Zero};

/// The operations a commutative ring needs for division-free determinant
/// and characteristic-polynomial computations. Elements are plain values;
/// the ring object carries any context (modulus, defining polynomial).
pub trait Ring {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
}

/// The integers.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntegerRing;

impl Ring for IntegerRing {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
}

/// Characteristic polynomial `det(T·I − A)` by Berkowitz's algorithm, which
/// uses no division. Returns coefficients leading first: `[1, c_1, …, c_n]`.
pub fn charpoly<R: Ring>(ring: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
    let n = a.len();
    let mut v = vec![ring.one()];
    for r in 0..n {
        // Leading (r+1)×(r+1) block split as [[S, C], [R, a_rr]].
        let mut q = Vec::with_capacity(r + 2);
        q.push(ring.one());
        q.push(ring.neg(&a[r][r]));
        // col = S^k C for k = 0, 1, ...
        let mut col: Vec<R::Elem> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let dot = (0..r).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(&a[r][j], &col[j])));
            q.push(ring.neg(&dot));
            col = (0..r)
                .map(|i| (0..r).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(&a[i][j], &col[j]))))
                .collect();
        }
        let mut next = vec![ring.zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                *slot = ring.add(slot, &ring.mul(&q[i - j], vj));
            }
        }
        v = next;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn expand_det(a: &[Vec<BigInt>]) -> BigInt {
        let n = a.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for c in 0..n {
            let minor: Vec<Vec<BigInt>> = a[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &a[0][c] * expand_det(&minor);
            if c % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn two_by_two() {
        let cp = charpoly(&IntegerRing, &m(&[&[1, 2], &[3, 4]]));
        assert_eq!(cp, vec![BigInt::from(1), BigInt::from(-5), BigInt::from(-2)]);
    }

    #[test]
    fn constant_term_is_signed_determinant() {
        let a = m(&[&[2, -1, 0, 3], &[1, 1, 4, 0], &[0, 5, -2, 1], &[7, 0, 1, 1]]);
        let cp = charpoly(&IntegerRing, &a);
        assert_eq!(cp[4], expand_det(&a)); // (-1)^4 det
        let trace: BigInt = (0..4).map(|i| a[i][i].clone()).sum();
        assert_eq!(cp[1], -trace);
    }
}
