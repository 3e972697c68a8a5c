//! q-Weil numbers given by minimal polynomials, and their Honda–Tate
//! invariants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{format_rational, frac, order_mod_one, rat, require_prime, val_int, Q};
use crate::error::{Error, Result, WeilCheck};
use crate::np::{NewtonPolygon, ValuationPolygon};
use crate::poly::{charpoly, count_real_roots, is_irreducible, IntegerRing, ZPoly};

/// Largest minimal-polynomial degree accepted.
pub const MAX_DEGREE: usize = 16;

/// Real even (`π = ±p^{n/2}`), real odd (`π = ±√(p^n)`, n odd) or the
/// non-real case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeilCase {
    Re,
    Ro,
    C,
}

impl fmt::Display for WeilCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeilCase::Re => "Re",
            WeilCase::Ro => "Ro",
            WeilCase::C => "C",
        })
    }
}

/// A verified q-Weil number, `q = p^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilNumber {
    minpoly: ZPoly,
    p: u64,
    n: u32,
    case: WeilCase,
}

fn reject(check: WeilCheck, detail: impl Into<String>) -> Error {
    Error::WeilRejected {
        check,
        detail: detail.into(),
    }
}

/// `Q` with `P(T) = T^k Q(T + q/T)`; `None` if the division leaves a
/// remainder.
fn real_part_polynomial(f: &ZPoly, q: &BigInt) -> Option<ZPoly> {
    let e = f.degree()?;
    if e % 2 == 1 {
        return None;
    }
    let k = e / 2;
    let mut rest = f.clone();
    let mut out = vec![BigInt::zero(); k + 1];
    let t2q = ZPoly::new(vec![q.clone(), BigInt::zero(), BigInt::one()]);
    for d in (0..=k).rev() {
        let c = rest.coeff(k + d);
        if c.is_zero() {
            continue;
        }
        // c · T^{k−d} (T² + q)^d
        let mut term = ZPoly::monomial(c.clone(), k - d);
        for _ in 0..d {
            term = term.mul(&t2q);
        }
        rest = rest.sub(&term);
        out[d] = c;
    }
    rest.is_zero().then(|| ZPoly::new(out))
}

impl WeilNumber {
    /// Verifies that the monic integer polynomial (leading coefficient first)
    /// is the minimal polynomial of a `p^n`-Weil number.
    pub fn verify(minpoly: &[BigInt], p: u64, n: u32) -> Result<Self> {
        require_prime(p)?;
        if n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        let f = ZPoly::from_leading_first(minpoly);
        let e = f.degree().ok_or_else(|| Error::invalid("zero polynomial"))?;
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        if e == 0 {
            return Err(Error::invalid("constant polynomial"));
        }
        if e > MAX_DEGREE {
            return Err(Error::Unsupported(format!("degree {e} exceeds the cap {MAX_DEGREE}")));
        }
        let q = BigInt::from(p).pow(n);

        let case = if e == 1 {
            let root = -f.coeff(0);
            if &root * &root != q {
                return Err(reject(
                    WeilCheck::RootModulus,
                    format!("root {root} has square ≠ q = {q}"),
                ));
            }
            WeilCase::Re
        } else if e == 2 && f.coeff(1).is_zero() && f.coeff(0) == -q.clone() && n % 2 == 1 {
            WeilCase::Ro
        } else {
            let qpoly = real_part_polynomial(&f, &q)
                .ok_or_else(|| reject(WeilCheck::FunctionalEquation, "T^e·P(q/T) ≠ q^{e/2}·P(T)"))?;
            // The roots y = π + q/π must be real with |y| < 2√q, i.e. the
            // roots w = y² of U(w) = ±Q(√w)Q(−√w) must lie in [0, 4q).
            let neg = ZPoly::new(
                qpoly
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                    .collect(),
            );
            let prod = qpoly.mul(&neg);
            let u = ZPoly::new(prod.coeffs().iter().step_by(2).cloned().collect()).to_q();
            let distinct = u.squarefree_part().degree().unwrap_or(0);
            let inside = count_real_roots(&u, &Q::zero(), &Q::from_integer(&q * 4));
            if inside != distinct {
                return Err(reject(
                    WeilCheck::RootModulus,
                    "some root of the polynomial does not have absolute value √q",
                ));
            }
            WeilCase::C
        };
        if !is_irreducible(&f) {
            return Err(reject(WeilCheck::Reducible, "polynomial is reducible over Q"));
        }
        Ok(WeilNumber { minpoly: f, p, n, case })
    }

    /// Like [`Self::verify`] for rational input, rejecting non-integral
    /// coefficients.
    pub fn verify_rational(minpoly: &[Q], p: u64, n: u32) -> Result<Self> {
        let mut ints = Vec::with_capacity(minpoly.len());
        for c in minpoly {
            if !c.is_integer() {
                return Err(reject(
                    WeilCheck::NonIntegral,
                    format!("coefficient {} is not an integer", format_rational(c)),
                ));
            }
            ints.push(c.to_integer());
        }
        Self::verify(&ints, p, n)
    }

    /// The Weil number with real part `β/2`: `T² − βT + q`, or `T − β/2`
    /// when `β² = 4q`.
    pub fn from_real_trace(beta: i64, p: u64, n: u32) -> Result<Self> {
        require_prime(p)?;
        let q = BigInt::from(p).pow(n);
        let b = BigInt::from(beta);
        let b2 = &b * &b;
        let four_q = &q * 4;
        if b2 > four_q {
            return Err(Error::invalid(format!("β² = {b2} exceeds 4q = {four_q}")));
        }
        if b2 == four_q {
            return Self::verify(&[BigInt::one(), -(b / BigInt::from(2))], p, n);
        }
        Self::verify(&[BigInt::one(), -b, q], p, n)
    }

    /// Coefficients, leading first.
    pub fn minpoly(&self) -> Vec<BigInt> {
        self.minpoly.to_leading_first()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> BigInt {
        BigInt::from(self.p).pow(self.n)
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    pub fn case(&self) -> WeilCase {
        self.case
    }

    /// p-adic polygon of the minimal polynomial.
    pub fn valuation_polygon(&self) -> ValuationPolygon {
        let coeffs: Vec<Q> = self.minpoly().into_iter().map(Q::from_integer).collect();
        ValuationPolygon::of_polynomial(&coeffs, self.p).expect("monic with prime p")
    }

    /// `v(root)/v(q)` for every root, non-decreasing.
    pub fn root_slopes(&self) -> Vec<Q> {
        let n = Q::from_integer(BigInt::from(self.n));
        self.valuation_polygon().slopes().into_iter().map(|s| s / &n).collect()
    }

    /// Whether `Q(π) = Q(π^m)`: the characteristic polynomial of `π^m` on
    /// `Q(π)` is squarefree.
    pub fn same_field_as_power(&self, m: u32) -> bool {
        let e = self.degree();
        let coeffs = self.minpoly.coeffs();
        // Companion matrix of the minimal polynomial.
        let mut c = vec![vec![BigInt::zero(); e]; e];
        for i in 1..e {
            c[i][i - 1] = BigInt::one();
        }
        for (i, row) in c.iter_mut().enumerate() {
            row[e - 1] = -coeffs[i].clone();
        }
        let mut power = (0..e)
            .map(|i| {
                (0..e)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        for _ in 0..m {
            power = (0..e)
                .map(|i| (0..e).map(|j| (0..e).map(|k| &power[i][k] * &c[k][j]).sum()).collect())
                .collect();
        }
        let cp = charpoly(&IntegerRing, &power);
        ZPoly::from_leading_first(&cp).to_q().is_squarefree()
    }
}

impl fmt::Display for WeilNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (q = {}^{})", render_poly(&self.minpoly), self.p, self.n)
    }
}

/// `T^2 - T + 2` style rendering.
pub fn render_poly(f: &ZPoly) -> String {
    let mut out = String::new();
    for (i, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "T".into(),
            _ => format!("T^{i}"),
        };
        if i == 0 {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}{mono}"));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Albert type of the endomorphism algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlbertType {
    I(u32),
    II(u32),
    III(u32),
    IV(u32, u32),
}

impl fmt::Display for AlbertType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlbertType::I(e) => write!(f, "Type I({e})"),
            AlbertType::II(e) => write!(f, "Type II({e})"),
            AlbertType::III(e) => write!(f, "Type III({e})"),
            AlbertType::IV(e, d) => write!(f, "Type IV({e},{d})"),
        }
    }
}

/// Albert classification from the degrees `e0 = [L0:Q]`, `e = [L:Q]`, the
/// index `d` and the signature data.
pub fn albert_classify(e0: u32, e: u32, d: u32, totally_real: bool, definite: Option<bool>) -> Result<AlbertType> {
    if e0 == 0 || d == 0 {
        return Err(Error::invalid("degrees and index must be positive"));
    }
    if e == 2 * e0 {
        if totally_real {
            return Err(Error::invalid("a CM field is not totally real"));
        }
        return Ok(AlbertType::IV(e0, d));
    }
    if e != e0 {
        return Err(Error::invalid(format!("e = {e} must be e0 or 2·e0 (e0 = {e0})")));
    }
    if !totally_real {
        return Err(Error::invalid("e = e0 requires a totally real centre"));
    }
    match (d, definite) {
        (1, _) => Ok(AlbertType::I(e0)),
        (2, Some(true)) => Ok(AlbertType::III(e0)),
        (2, Some(false)) => Ok(AlbertType::II(e0)),
        (2, None) => Err(Error::invalid("d = 2 needs the definiteness flag")),
        _ => Err(Error::invalid(format!(
            "no Albert type with totally real centre and d = {d}"
        ))),
    }
}

/// A place of `L = Q(π)` carrying a local invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Place {
    /// A place above p with local degree `[L_v:Q_p]` and slope `v(π)/v(q)`.
    AboveP { degree: u32, slope: Q },
    /// A real place.
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalInvariant {
    pub place: Place,
    /// In `[0, 1)`.
    pub inv: Q,
}

/// Honda–Tate data of a Weil number: the simple abelian variety `A` with
/// `End⁰(A) = D`, a central division algebra over `L = Q(π)` of index `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HondaTateData {
    pub case: WeilCase,
    /// Slopes of `A`, `2g` of them, non-decreasing.
    pub slopes: Vec<Q>,
    pub e0: u32,
    pub e: u32,
    pub d: u32,
    pub g: u32,
    pub albert: AlbertType,
    pub local_invariants: Vec<LocalInvariant>,
}

impl HondaTateData {
    pub fn newton_polygon(&self) -> Result<NewtonPolygon> {
        NewtonPolygon::from_slopes(&self.slopes)
    }
}

/// Whether a nonzero integer is a square in Q_p.
fn is_padic_square(x: &BigInt, p: u64) -> bool {
    let Some(v) = val_int(x, p) else { return false };
    if v % 2 == 1 {
        return false;
    }
    let unit = x / BigInt::from(p).pow(v as u32);
    if p == 2 {
        unit.mod_floor(&BigInt::from(8)) == BigInt::one()
    } else {
        let pb = BigInt::from(p);
        unit.mod_floor(&pb).modpow(&BigInt::from((p - 1) / 2), &pb).is_one()
    }
}

/// Honda–Tate invariants. In the non-real case the places above p are read
/// off the p-adic polygon of the minimal polynomial; a segment is resolved
/// when it is one place (its slope has denominator equal to its width) or,
/// for quadratic polynomials, by the discriminant. Anything else is
/// reported as unsupported rather than guessed.
pub fn honda_tate(w: &WeilNumber) -> Result<HondaTateData> {
    let half = rat(1, 2);
    match w.case {
        WeilCase::Re => Ok(HondaTateData {
            case: WeilCase::Re,
            slopes: vec![half.clone(), half.clone()],
            e0: 1,
            e: 1,
            d: 2,
            g: 1,
            albert: AlbertType::III(1),
            local_invariants: vec![
                LocalInvariant {
                    place: Place::AboveP {
                        degree: 1,
                        slope: half.clone(),
                    },
                    inv: half.clone(),
                },
                LocalInvariant {
                    place: Place::Infinite,
                    inv: half,
                },
            ],
        }),
        WeilCase::Ro => Ok(HondaTateData {
            case: WeilCase::Ro,
            slopes: vec![half.clone(); 4],
            e0: 2,
            e: 2,
            d: 2,
            g: 2,
            albert: AlbertType::III(2),
            local_invariants: vec![
                LocalInvariant {
                    place: Place::AboveP {
                        degree: 2,
                        slope: half.clone(),
                    },
                    inv: Q::zero(),
                },
                LocalInvariant {
                    place: Place::Infinite,
                    inv: half.clone(),
                },
                LocalInvariant {
                    place: Place::Infinite,
                    inv: half,
                },
            ],
        }),
        WeilCase::C => honda_tate_nonreal(w),
    }
}

fn honda_tate_nonreal(w: &WeilNumber) -> Result<HondaTateData> {
    let e = w.degree() as u32;
    let nq = Q::from_integer(BigInt::from(w.n));
    let mut invariants = Vec::new();
    for (raw_slope, width) in w.valuation_polygon().segments() {
        let slope = &raw_slope / &nq;
        let den = raw_slope.denom().to_u32().expect("small denominator");
        let degrees: Vec<u32> = if den == width {
            vec![width]
        } else if e == 2 && width == 2 {
            let c = w.minpoly.coeffs();
            let disc = &c[1] * &c[1] - BigInt::from(4) * &c[0];
            if is_padic_square(&disc, w.p) {
                vec![1, 1]
            } else {
                vec![2]
            }
        } else {
            return Err(Error::PlaceResolutionUnsupported(format!(
                "segment of slope {} and width {width} may split into several places",
                format_rational(&slope)
            )));
        };
        for deg in degrees {
            let inv = frac(&(&slope * Q::from_integer(BigInt::from(deg))));
            invariants.push(LocalInvariant {
                place: Place::AboveP {
                    degree: deg,
                    slope: slope.clone(),
                },
                inv,
            });
        }
    }
    let total: Q = invariants.iter().map(|l| l.inv.clone()).sum();
    if !frac(&total).is_zero() {
        return Err(Error::invalid("local invariants do not sum to 0; not a Weil number"));
    }
    let d = invariants
        .iter()
        .map(|l| order_mod_one(&l.inv))
        .fold(1u64, |a, b| a.lcm(&b)) as u32;
    if (e * d) % 2 == 1 {
        return Err(Error::invalid("e·d is odd"));
    }
    let g = e * d / 2;
    let mut slopes: Vec<Q> = w
        .root_slopes()
        .into_iter()
        .flat_map(|s| std::iter::repeat_n(s, d as usize))
        .collect();
    slopes.sort();
    Ok(HondaTateData {
        case: WeilCase::C,
        slopes,
        e0: e / 2,
        e,
        d,
        g,
        albert: albert_classify(e / 2, e, d, false, None)?,
        local_invariants: invariants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn worked_examples() {
        let w = WeilNumber::verify(&b(&[1, -1, 2]), 2, 1).unwrap();
        assert_eq!(w.case(), WeilCase::C);
        let re = WeilNumber::verify(&b(&[1, -3]), 3, 2).unwrap();
        assert_eq!(re.case(), WeilCase::Re);
        let err = WeilNumber::verify(&b(&[1, -5, 4]), 2, 2).unwrap_err();
        assert!(matches!(
            err,
            Error::WeilRejected {
                check: WeilCheck::RootModulus,
                ..
            }
        ));
    }

    #[test]
    fn rejections() {
        // Fails the functional equation.
        let err = WeilNumber::verify(&b(&[1, 1, 3]), 2, 1).unwrap_err();
        assert!(matches!(
            err,
            Error::WeilRejected {
                check: WeilCheck::FunctionalEquation,
                ..
            }
        ));
        // (T² + 2)² is a Weil polynomial but reducible.
        let err = WeilNumber::verify(&b(&[1, 0, 4, 0, 4]), 2, 1).unwrap_err();
        assert!(matches!(
            err,
            Error::WeilRejected {
                check: WeilCheck::Reducible,
                ..
            }
        ));
        let err = WeilNumber::verify_rational(&[rat(1, 1), rat(1, 2)], 2, 1).unwrap_err();
        assert!(matches!(
            err,
            Error::WeilRejected {
                check: WeilCheck::NonIntegral,
                ..
            }
        ));
    }

    #[test]
    fn real_cases() {
        let re = honda_tate(&WeilNumber::from_real_trace(-6, 3, 2).unwrap()).unwrap();
        assert_eq!((re.g, re.d, re.albert), (1, 2, AlbertType::III(1)));
        let ro = honda_tate(&WeilNumber::verify(&b(&[1, 0, -8]), 2, 3).unwrap()).unwrap();
        assert_eq!((ro.g, ro.e, ro.albert), (2, 2, AlbertType::III(2)));
    }

    #[test]
    fn supersingular_quadratics() {
        let w = WeilNumber::from_real_trace(0, 3, 1).unwrap();
        let ht = honda_tate(&w).unwrap();
        assert_eq!(ht.slopes, vec![half(), half()]);
        assert_eq!((ht.d, ht.g), (1, 1));
        let w = WeilNumber::from_real_trace(5, 5, 2).unwrap();
        assert_eq!(w.root_slopes(), vec![half(), half()]);
    }

    fn half() -> Q {
        rat(1, 2)
    }

    #[test]
    fn manin_family() {
        // T² + p^n T + p^g with (m,n) = (2,1): q = p^3.
        let w = WeilNumber::verify(&b(&[1, 2, 8]), 2, 3).unwrap();
        let ht = honda_tate(&w).unwrap();
        assert_eq!(ht.d, 3);
        assert_eq!(ht.g, 3);
        assert_eq!(ht.newton_polygon().unwrap(), "(2,1)+(1,2)".parse().unwrap());
    }

    #[test]
    fn index_is_lcm_of_local_orders() {
        // Slopes 0, 1/3, 2/3, 1 at four degree-1 places: invariants 0, 1/3,
        // 2/3, 0. The gcd of the orders would be 1 and leave slope 1/3 with
        // multiplicity 1, which is not a lattice polygon.
        let w = WeilNumber::verify(&b(&[1, -1, 2, -8, 64]), 2, 3).unwrap();
        let ht = honda_tate(&w).unwrap();
        assert_eq!((ht.e, ht.d, ht.g), (4, 3, 6));
        assert_eq!(ht.albert, AlbertType::IV(2, 3));
        assert_eq!(
            ht.newton_polygon().unwrap(),
            "3*(0,1)+(1,2)+(2,1)+3*(1,0)".parse().unwrap()
        );
    }

    #[test]
    fn albert() {
        assert_eq!(albert_classify(1, 1, 1, true, None).unwrap(), AlbertType::I(1));
        assert_eq!(albert_classify(1, 1, 2, true, Some(true)).unwrap(), AlbertType::III(1));
        assert_eq!(albert_classify(1, 2, 1, false, None).unwrap(), AlbertType::IV(1, 1));
        assert!(albert_classify(2, 3, 1, true, None).is_err());
    }

    #[test]
    fn field_of_powers() {
        // π = √−2 style: T² + 2, π² = −2 is rational.
        let w = WeilNumber::verify(&b(&[1, 0, 2]), 2, 1).unwrap();
        assert!(w.same_field_as_power(1));
        assert!(!w.same_field_as_power(2));
    }
}
