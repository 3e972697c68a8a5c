//! Truncated p-typical Witt vectors over F_{p^m}, realized as the unramified
//! lift `Z/p^N[x]/(f)` of the field's defining polynomial.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{FiniteField, Fq};
use crate::poly::Ring;

/// Raw lift coordinates: `m` residues modulo `p^N` in the basis `1, x, …`.
pub type Lift = Vec<u64>;

/// The ring W_N(F_{p^m}) with its Frobenius lift σ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittContext {
    field: FiniteField,
    n: u32,
    modulus_pn: u64,
    /// Lift of the field modulus, constant term first, monic, degree m.
    lift_modulus: Vec<u64>,
    /// `σ(x)^i` for `i < m`.
    sigma_pows: Vec<Lift>,
    /// `σ^{-1}(x)^i` for `i < m`.
    sigma_inv_pows: Vec<Lift>,
}

impl WittContext {
    /// `p^N` must stay below `2^62`.
    pub fn new(p: u64, m: u32, n: u32) -> Result<Self> {
        let field = FiniteField::new(p, m)?;
        if n == 0 {
            return Err(Error::invalid("Witt precision must be at least 1"));
        }
        let pn = (p as u128)
            .checked_pow(n)
            .filter(|&v| v < 1 << 62)
            .ok_or_else(|| Error::Precision(format!("p^N = {p}^{n} exceeds the supported 62-bit range")))?
            as u64;
        let lift_modulus = field.modulus().to_vec();
        let mut ctx = WittContext {
            field,
            n,
            modulus_pn: pn,
            lift_modulus,
            sigma_pows: vec![],
            sigma_inv_pows: vec![],
        };
        let sx = ctx.frobenius_of_generator();
        ctx.sigma_pows = ctx.powers(&sx);
        // σ^{-1} = σ^{m-1}.
        let mut sinv = ctx.generator();
        for _ in 1..m {
            sinv = ctx.sigma(&sinv);
        }
        ctx.sigma_inv_pows = ctx.powers(&sinv);
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn degree(&self) -> u32 {
        self.field.degree()
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// `p^N`.
    pub fn modulus(&self) -> u64 {
        self.modulus_pn
    }

    fn m(&self) -> usize {
        self.field.degree() as usize
    }

    fn generator(&self) -> Lift {
        let mut v = vec![0; self.m()];
        if self.m() == 1 {
            // x is a root of the modulus x itself.
            return v;
        }
        v[1] = 1;
        v
    }

    fn powers(&self, a: &Lift) -> Vec<Lift> {
        let mut out = vec![self.one_lift()];
        for _ in 1..self.m() {
            let next = self.mul_raw(out.last().unwrap(), a);
            out.push(next);
        }
        out
    }

    /// Evaluates the lifted modulus at `r`.
    fn eval_modulus(&self, r: &Lift, derivative: bool) -> Lift {
        let coeffs: Vec<u64> = if derivative {
            self.lift_modulus
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.reduce_u128(i as u128 * c as u128))
                .collect()
        } else {
            self.lift_modulus.clone()
        };
        coeffs.iter().rev().fold(self.zero_lift(), |acc, &c| {
            let t = self.mul_raw(&acc, r);
            self.add_raw(&t, &self.scalar(c))
        })
    }

    /// σ(x): the root of the lifted modulus congruent to x^p, by Newton.
    fn frobenius_of_generator(&self) -> Lift {
        let mut r = self.pow_raw(&self.generator(), self.p() as u128);
        for _ in 0..64 {
            let fr = self.eval_modulus(&r, false);
            if fr.iter().all(|&c| c == 0) {
                break;
            }
            let dfr = self.eval_modulus(&r, true);
            let inv = self.inv_unit(&dfr).expect("modulus is separable");
            r = self.sub_raw(&r, &self.mul_raw(&fr, &inv));
        }
        r
    }

    fn reduce_u128(&self, x: u128) -> u64 {
        (x % self.modulus_pn as u128) as u64
    }

    pub fn zero_lift(&self) -> Lift {
        vec![0; self.m()]
    }

    pub fn one_lift(&self) -> Lift {
        self.scalar(1)
    }

    /// Embeds a residue of Z/p^N.
    pub fn scalar(&self, c: u64) -> Lift {
        let mut v = self.zero_lift();
        v[0] = c % self.modulus_pn;
        v
    }

    pub fn from_int(&self, c: &BigInt) -> Lift {
        let c = c.mod_floor(&BigInt::from(self.modulus_pn)).to_u64().unwrap();
        self.scalar(c)
    }

    pub fn add_raw(&self, a: &Lift, b: &Lift) -> Lift {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.reduce_u128(x as u128 + y as u128))
            .collect()
    }

    pub fn sub_raw(&self, a: &Lift, b: &Lift) -> Lift {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.reduce_u128(x as u128 + (self.modulus_pn - y) as u128))
            .collect()
    }

    pub fn neg_raw(&self, a: &Lift) -> Lift {
        a.iter().map(|&x| (self.modulus_pn - x) % self.modulus_pn).collect()
    }

    pub fn mul_raw(&self, a: &Lift, b: &Lift) -> Lift {
        let m = self.m();
        let pn = self.modulus_pn as u128;
        let mut prod = vec![0u128; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % pn;
            }
        }
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..m {
                let sub = c * self.lift_modulus[i] as u128 % pn;
                prod[k - m + i] = (prod[k - m + i] + pn - sub) % pn;
            }
        }
        prod.truncate(m);
        prod.into_iter().map(|c| c as u64).collect()
    }

    pub fn scale_raw(&self, a: &Lift, c: u64) -> Lift {
        a.iter().map(|&x| self.reduce_u128(x as u128 * c as u128)).collect()
    }

    pub fn pow_raw(&self, a: &Lift, mut e: u128) -> Lift {
        let mut result = self.one_lift();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_raw(&result, &base);
            }
            base = self.mul_raw(&base, &base);
            e >>= 1;
        }
        result
    }

    /// Residue field image.
    pub fn residue(&self, a: &Lift) -> Fq {
        let p = self.p();
        self.field
            .from_coords(&a.iter().map(|&c| c % p).collect::<Vec<_>>())
            .unwrap()
    }

    /// Naive lift of a field element (coordinates in `[0, p)`).
    pub fn naive_lift(&self, c: &Fq) -> Lift {
        c.coords().to_vec()
    }

    pub fn is_unit(&self, a: &Lift) -> bool {
        !self.field.is_zero(&self.residue(a))
    }

    /// Inverse of a unit by Newton iteration `y ← y(2 − a y)`.
    pub fn inv_unit(&self, a: &Lift) -> Option<Lift> {
        let r = self.residue(a);
        if self.field.is_zero(&r) {
            return None;
        }
        let mut y = self.naive_lift(&self.field.inv(&r).ok()?);
        let two = self.scalar(2);
        for _ in 0..64 {
            let ay = self.mul_raw(a, &y);
            if ay == self.one_lift() {
                break;
            }
            y = self.mul_raw(&y, &self.sub_raw(&two, &ay));
        }
        Some(y)
    }

    fn apply_pows(&self, a: &Lift, pows: &[Lift]) -> Lift {
        let mut acc = self.zero_lift();
        for (c, pw) in a.iter().zip(pows) {
            if *c != 0 {
                acc = self.add_raw(&acc, &self.scale_raw(pw, *c));
            }
        }
        acc
    }

    /// Frobenius lift σ.
    pub fn sigma(&self, a: &Lift) -> Lift {
        self.apply_pows(a, &self.sigma_pows)
    }

    pub fn sigma_inv(&self, a: &Lift) -> Lift {
        self.apply_pows(a, &self.sigma_inv_pows)
    }

    /// σ^k for any integer k.
    pub fn sigma_pow(&self, a: &Lift, k: i64) -> Lift {
        let k = k.rem_euclid(self.degree() as i64);
        (0..k).fold(a.clone(), |acc, _| self.sigma(&acc))
    }

    /// p-adic valuation; `None` means the element is zero at this precision.
    pub fn valuation(&self, a: &Lift) -> Option<u32> {
        a.iter()
            .filter(|&&c| c != 0)
            .map(|&c| {
                let mut c = c;
                let mut v = 0;
                while c % self.p() == 0 {
                    c /= self.p();
                    v += 1;
                }
                v
            })
            .min()
    }

    /// Exact division by `p^k`; `None` unless every coordinate is divisible.
    /// The result is only meaningful modulo `p^{N−k}`.
    pub fn div_p_pow(&self, a: &Lift, k: u32) -> Option<Lift> {
        let pk = self.p().pow(k);
        if a.iter().all(|&c| c % pk == 0) {
            Some(a.iter().map(|&c| c / pk).collect())
        } else {
            None
        }
    }

    /// Teichmüller representative of `c`.
    pub fn teichmuller(&self, c: &Fq) -> Lift {
        let mut t = self.naive_lift(c);
        for _ in 0..(self.n - 1) * self.degree() {
            t = self.pow_raw(&t, self.p() as u128);
        }
        t
    }

    /// Witt coordinates `(c_0, …, c_{N−1})` with `a = Σ p^i τ(c_i^{p^{-i}})`.
    pub fn witt_coordinates(&self, a: &Lift) -> Vec<Fq> {
        let mut rest = a.clone();
        let mut out = Vec::with_capacity(self.n as usize);
        for i in 0..self.n {
            let r = self.residue(&rest);
            out.push(self.field.frobenius(&r, i as i64));
            let diff = self.sub_raw(&rest, &self.teichmuller(&r));
            rest = self.div_p_pow(&diff, 1).expect("residue removed");
        }
        out
    }

    /// Inverse of [`Self::witt_coordinates`].
    pub fn from_witt_coordinates(&self, coords: &[Fq]) -> Lift {
        let mut acc = self.zero_lift();
        let mut pi = 1u64;
        for (i, c) in coords.iter().enumerate().take(self.n as usize) {
            let root = self.field.frobenius(c, -(i as i64));
            acc = self.add_raw(&acc, &self.scale_raw(&self.teichmuller(&root), pi));
            pi = pi.saturating_mul(self.p());
        }
        acc
    }

    pub fn render(&self, a: &Lift) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Parses an integer (`"12"`, `"-3"`) or a polynomial in `x` with
    /// integer coefficients.
    pub fn parse(&self, s: &str) -> Result<Lift> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty Witt element".into()));
        }
        let mut acc = self.zero_lift();
        let normalized = cleaned.replace('-', "+-");
        for term in normalized.split('+').filter(|t| !t.is_empty()) {
            let (neg, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term),
            };
            let bad = || Error::Parse(format!("bad Witt term '{term}'"));
            let (coef, power): (BigInt, u32) = match body.find('x') {
                None => (body.parse().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let coef = match &body[..pos] {
                        "" => BigInt::one(),
                        c => c.strip_suffix('*').ok_or_else(bad)?.parse().map_err(|_| bad())?,
                    };
                    let power = match &body[pos + 1..] {
                        "" => 1,
                        r => r.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?,
                    };
                    (coef, power)
                }
            };
            if power > 0 && self.m() == 1 {
                return Err(Error::Parse(format!("prime field has no generator: '{term}'")));
            }
            let x = if self.m() == 1 {
                self.one_lift()
            } else {
                self.generator()
            };
            let mut t = self.mul_raw(&self.pow_raw(&x, power as u128), &self.from_int(&coef));
            if neg {
                t = self.neg_raw(&t);
            }
            acc = self.add_raw(&acc, &t);
        }
        Ok(acc)
    }
}

impl Ring for WittContext {
    type Elem = Lift;
    fn zero(&self) -> Lift {
        self.zero_lift()
    }
    fn one(&self) -> Lift {
        self.one_lift()
    }
    fn add(&self, a: &Lift, b: &Lift) -> Lift {
        self.add_raw(a, b)
    }
    fn mul(&self, a: &Lift, b: &Lift) -> Lift {
        self.mul_raw(a, b)
    }
    fn neg(&self, a: &Lift) -> Lift {
        self.neg_raw(a)
    }
}

/// An element of W_N(F_{p^m}) bound to its context.
#[derive(Debug, Clone)]
pub struct WittElement {
    ctx: Arc<WittContext>,
    value: Lift,
}

impl PartialEq for WittElement {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.value == other.value
    }
}

impl Eq for WittElement {}

impl WittElement {
    pub fn new(ctx: Arc<WittContext>, value: Lift) -> Self {
        assert_eq!(value.len(), ctx.degree() as usize);
        WittElement { ctx, value }
    }

    pub fn zero(ctx: &Arc<WittContext>) -> Self {
        Self::new(ctx.clone(), ctx.zero_lift())
    }

    pub fn one(ctx: &Arc<WittContext>) -> Self {
        Self::new(ctx.clone(), ctx.one_lift())
    }

    pub fn teichmuller(ctx: &Arc<WittContext>, c: &Fq) -> Self {
        Self::new(ctx.clone(), ctx.teichmuller(c))
    }

    pub fn from_coordinates(ctx: &Arc<WittContext>, coords: &[Fq]) -> Self {
        Self::new(ctx.clone(), ctx.from_witt_coordinates(coords))
    }

    pub fn context(&self) -> &Arc<WittContext> {
        &self.ctx
    }

    pub fn lift(&self) -> &Lift {
        &self.value
    }

    fn check(&self, other: &Self) -> Result<()> {
        if *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(self.ctx.clone(), self.ctx.add_raw(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(self.ctx.clone(), self.ctx.sub_raw(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(self.ctx.clone(), self.ctx.mul_raw(&self.value, &other.value)))
    }

    pub fn sigma(&self) -> Self {
        Self::new(self.ctx.clone(), self.ctx.sigma(&self.value))
    }

    pub fn sigma_inv(&self) -> Self {
        Self::new(self.ctx.clone(), self.ctx.sigma_inv(&self.value))
    }

    /// Verschiebung `V = p σ^{-1}`.
    pub fn verschiebung(&self) -> Self {
        let s = self.ctx.sigma_inv(&self.value);
        Self::new(self.ctx.clone(), self.ctx.scale_raw(&s, self.ctx.p()))
    }

    pub fn valuation(&self) -> Valuation {
        match self.ctx.valuation(&self.value) {
            Some(v) => Valuation::Finite(v),
            None => Valuation::AtLeast(self.ctx.precision()),
        }
    }

    pub fn coordinates(&self) -> Vec<Fq> {
        self.ctx.witt_coordinates(&self.value)
    }
}

impl fmt::Display for WittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ctx.render(&self.value))
    }
}

/// A valuation read off at finite precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(u32),
    /// Indistinguishable from zero: the valuation is at least this value.
    AtLeast(u32),
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

/// Ghost components `w_n = Σ_{i≤n} p^i c_i^{p^{n−i}}` of integer Witt
/// coordinates.
pub fn ghost(coords: &[BigInt], p: u64) -> Vec<BigInt> {
    let pb = BigInt::from(p);
    (0..coords.len())
        .map(|n| {
            (0..=n)
                .map(|i| pb.pow(i as u32) * coords[i].pow(p.pow((n - i) as u32) as u32))
                .sum()
        })
        .collect()
}

/// Recovers Witt coordinates from ghost components over Z; `None` when some
/// coordinate is not integral.
pub fn from_ghost(ghosts: &[BigInt], p: u64) -> Option<Vec<BigInt>> {
    let pb = BigInt::from(p);
    let mut coords: Vec<BigInt> = Vec::with_capacity(ghosts.len());
    for (n, g) in ghosts.iter().enumerate() {
        let partial: BigInt = (0..n)
            .map(|i| pb.pow(i as u32) * coords[i].pow(p.pow((n - i) as u32) as u32))
            .sum();
        let (q, r) = (g - partial).div_rem(&pb.pow(n as u32));
        if !r.is_zero() {
            return None;
        }
        coords.push(q);
    }
    Some(coords)
}

/// Universal Witt sum over Z, obtained by ghost inversion.
pub fn witt_sum_integral(a: &[BigInt], b: &[BigInt], p: u64) -> Option<Vec<BigInt>> {
    let ga = ghost(a, p);
    let gb = ghost(b, p);
    from_ghost(&ga.iter().zip(&gb).map(|(x, y)| x + y).collect::<Vec<_>>(), p)
}

/// Universal Witt product over Z, obtained by ghost inversion.
pub fn witt_product_integral(a: &[BigInt], b: &[BigInt], p: u64) -> Option<Vec<BigInt>> {
    let ga = ghost(a, p);
    let gb = ghost(b, p);
    from_ghost(&ga.iter().zip(&gb).map(|(x, y)| x * y).collect::<Vec<_>>(), p)
}
