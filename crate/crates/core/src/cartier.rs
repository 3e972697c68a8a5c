//! The local Cartier ring Cart_p(F_{p^m}) truncated modulo V^A.
//!
//! Elements are stored in canonical form `Σ V^a ⟨c_ab⟩ F^b` with `a < A`.
//! Products are computed by regrouping each element as
//! `Σ_s w_s F^s + Σ_s V^s w'_s` with Witt-vector coefficients, where the
//! commutation rules are plain σ-twists, and regrouping back.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FiniteField, Fq};
use crate::witt::{Lift, WittContext, WittElement};

/// Default V-adic cap.
pub const DEFAULT_VCAP: u32 = 8;

/// Field and V-adic cap shared by a family of Cartier elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartierContext {
    field: FiniteField,
    vcap: u32,
    /// Witt vectors at precision 2A, enough to see whether a product
    /// spills past the cap.
    witt: WittContext,
}

impl CartierContext {
    pub fn new(p: u64, m: u32, vcap: u32) -> Result<Arc<Self>> {
        if vcap == 0 {
            return Err(Error::invalid("V-cap must be at least 1"));
        }
        let witt = WittContext::new(p, m, 2 * vcap)?;
        Ok(Arc::new(CartierContext {
            field: witt.field().clone(),
            vcap,
            witt,
        }))
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn vcap(&self) -> u32 {
        self.vcap
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    /// `V^a τ(c)` as a Witt vector: the vector with single coordinate `c` at
    /// position `a`.
    fn coordinate_vector(&self, a: u32, c: &Fq) -> Lift {
        let w = &self.witt;
        let root = self.field.frobenius(c, -(a as i64));
        w.scale_raw(&w.teichmuller(&root), self.p().pow(a))
    }
}

/// Sum `Σ_s pos[s] F^s + Σ_{s>0} V^s neg[s]`.
#[derive(Default)]
struct Grouped {
    pos: BTreeMap<u32, Lift>,
    neg: BTreeMap<u32, Lift>,
}

impl Grouped {
    fn add_to(ctx: &WittContext, map: &mut BTreeMap<u32, Lift>, key: u32, v: Lift) {
        let slot = map.entry(key).or_insert_with(|| ctx.zero_lift());
        *slot = ctx.add_raw(slot, &v);
    }
}

/// An element of Cart_p(F_{p^m}) / V^A.
#[derive(Debug, Clone)]
pub struct CartierElement {
    ctx: Arc<CartierContext>,
    terms: BTreeMap<(u32, u32), Fq>,
    truncated: bool,
}

impl PartialEq for CartierElement {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.terms == other.terms
    }
}

impl Eq for CartierElement {}

impl CartierElement {
    pub fn zero(ctx: &Arc<CartierContext>) -> Self {
        CartierElement {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
            truncated: false,
        }
    }

    /// `V^a ⟨c⟩ F^b`.
    pub fn monomial(ctx: &Arc<CartierContext>, a: u32, c: &Fq, b: u32) -> Self {
        Self::normalize(ctx, &[(a, c.clone(), b)])
    }

    pub fn one(ctx: &Arc<CartierContext>) -> Self {
        Self::monomial(ctx, 0, &ctx.field.one(), 0)
    }

    pub fn v(ctx: &Arc<CartierContext>) -> Self {
        Self::monomial(ctx, 1, &ctx.field.one(), 0)
    }

    pub fn f(ctx: &Arc<CartierContext>) -> Self {
        Self::monomial(ctx, 0, &ctx.field.one(), 1)
    }

    pub fn teichmuller(ctx: &Arc<CartierContext>, c: &Fq) -> Self {
        Self::monomial(ctx, 0, c, 0)
    }

    /// The image of `p`, i.e. the Witt vector `(0, 1, 0, …)`.
    pub fn p(ctx: &Arc<CartierContext>) -> Self {
        let w = &ctx.witt;
        Self::from_grouped(
            ctx,
            Grouped {
                pos: BTreeMap::from([(0, w.scalar(ctx.p()))]),
                neg: BTreeMap::new(),
            },
        )
    }

    /// Parses the display syntax: a `+`-separated sum of `V^a<c>F^b`, where
    /// each of the three parts may be omitted (`V`, `F^2`, `<x+1>`, `p`).
    pub fn parse(ctx: &Arc<CartierContext>, s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text == "0" {
            return Ok(Self::zero(ctx));
        }
        let bad = |msg: &str| Error::Parse(format!("Cartier element '{s}': {msg}"));
        let bytes = text.as_bytes();
        let mut i = 0;
        let mut raw = Vec::new();
        let mut extra = Self::zero(ctx);
        let exponent = |i: &mut usize| -> Result<u32> {
            if bytes.get(*i) != Some(&b'^') {
                return Ok(1);
            }
            *i += 1;
            let start = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            text[start..*i].parse().map_err(|_| bad("bad exponent"))
        };
        loop {
            if bytes.get(i) == Some(&b'p') {
                i += 1;
                extra = extra.add(&Self::p(ctx))?;
            } else {
                let mut a = 0;
                let mut b = 0;
                let mut c = ctx.field.one();
                let start = i;
                if bytes.get(i) == Some(&b'V') {
                    i += 1;
                    a = exponent(&mut i)?;
                }
                if bytes.get(i) == Some(&b'<') {
                    let close = text[i..].find('>').ok_or_else(|| bad("unclosed '<'"))? + i;
                    c = ctx.field.parse(&text[i + 1..close])?;
                    i = close + 1;
                }
                if bytes.get(i) == Some(&b'F') {
                    i += 1;
                    b = exponent(&mut i)?;
                }
                if i == start {
                    return Err(bad("expected a term"));
                }
                raw.push((a, c, b));
            }
            match bytes.get(i) {
                None => break,
                Some(b'+') => i += 1,
                Some(_) => return Err(bad("unexpected character")),
            }
        }
        Self::normalize(ctx, &raw).add(&extra)
    }

    /// Canonical form of a finite sum of monomials `V^a ⟨c⟩ F^b`.
    pub fn normalize(ctx: &Arc<CartierContext>, raw: &[(u32, Fq, u32)]) -> Self {
        let mut g = Grouped::default();
        for (a, c, b) in raw {
            if *a >= 2 * ctx.vcap || ctx.field.is_zero(c) {
                continue;
            }
            let vec = ctx.coordinate_vector((*a).min(*b), c);
            if a <= b {
                Grouped::add_to(&ctx.witt, &mut g.pos, b - a, vec);
            } else {
                Grouped::add_to(&ctx.witt, &mut g.neg, a - b, vec);
            }
        }
        Self::from_grouped(ctx, g)
    }

    fn grouped(&self) -> Grouped {
        let ctx = &self.ctx;
        let mut g = Grouped::default();
        for (&(a, b), c) in &self.terms {
            let vec = ctx.coordinate_vector(a.min(b), c);
            if a <= b {
                Grouped::add_to(&ctx.witt, &mut g.pos, b - a, vec);
            } else {
                Grouped::add_to(&ctx.witt, &mut g.neg, a - b, vec);
            }
        }
        g
    }

    fn from_grouped(ctx: &Arc<CartierContext>, g: Grouped) -> Self {
        let w = &ctx.witt;
        let cap = ctx.vcap;
        let mut terms = BTreeMap::new();
        let mut truncated = false;
        let mut record = |a: u32, b: u32, c: Fq| {
            if ctx.field.is_zero(&c) {
                return;
            }
            if a < cap {
                terms.insert((a, b), c);
            } else if a < 2 * cap {
                truncated = true;
            }
        };
        for (s, v) in g.pos {
            for (n, c) in w.witt_coordinates(&v).into_iter().enumerate() {
                record(n as u32, n as u32 + s, c);
            }
        }
        for (s, v) in g.neg {
            for (n, c) in w.witt_coordinates(&v).into_iter().enumerate() {
                record(n as u32 + s, n as u32, c);
            }
        }
        CartierElement {
            ctx: ctx.clone(),
            terms,
            truncated,
        }
    }

    pub fn context(&self) -> &Arc<CartierContext> {
        &self.ctx
    }

    /// Whether some term was dropped by the V-cap while producing this value.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Canonical terms `(a, b, c)` for `V^a ⟨c⟩ F^b`, sorted by `(a, b)`.
    pub fn terms(&self) -> Vec<(u32, u32, Fq)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
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
        let w = &self.ctx.witt;
        let mut g = self.grouped();
        let h = other.grouped();
        for (s, v) in h.pos {
            Grouped::add_to(w, &mut g.pos, s, v);
        }
        for (s, v) in h.neg {
            Grouped::add_to(w, &mut g.neg, s, v);
        }
        let mut out = Self::from_grouped(&self.ctx, g);
        out.truncated |= self.truncated || other.truncated;
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let w = &self.ctx.witt;
        let p = self.ctx.p();
        let limit = 2 * self.ctx.vcap;
        let x = self.grouped();
        let y = other.grouped();
        let mut out = Grouped::default();
        for (&s, u) in &x.pos {
            for (&t, v) in &y.pos {
                // (u F^s)(v F^t) = u σ^s(v) F^{s+t}
                Grouped::add_to(w, &mut out.pos, s + t, w.mul_raw(u, &w.sigma_pow(v, s as i64)));
            }
            for (&t, v) in &y.neg {
                if s >= t {
                    // F^s V^t = p^t F^{s−t}
                    let prod = w.mul_raw(u, &w.sigma_pow(v, (s - t) as i64));
                    Grouped::add_to(w, &mut out.pos, s - t, w.scale_raw(&prod, p.pow(t)));
                } else if t - s < limit {
                    // F^s V^t = p^s V^{t−s}, and u V^k = V^k σ^k(u)
                    let prod = w.mul_raw(&w.sigma_pow(u, (t - s) as i64), v);
                    Grouped::add_to(w, &mut out.neg, t - s, w.scale_raw(&prod, p.pow(s)));
                }
            }
        }
        for (&s, u) in &x.neg {
            for (&t, v) in &y.pos {
                // V^s z F^t with z = u v; V^k z F^k = p^k σ^{−k}(z)
                let z = w.mul_raw(u, v);
                if s <= t {
                    let zz = w.sigma_pow(&z, -(s as i64));
                    Grouped::add_to(w, &mut out.pos, t - s, w.scale_raw(&zz, p.pow(s)));
                } else {
                    let zz = w.sigma_pow(&z, -(t as i64));
                    Grouped::add_to(w, &mut out.neg, s - t, w.scale_raw(&zz, p.pow(t)));
                }
            }
            for (&t, v) in &y.neg {
                if s + t < limit {
                    // V^s u V^t v = V^{s+t} σ^t(u) v
                    Grouped::add_to(w, &mut out.neg, s + t, w.mul_raw(&w.sigma_pow(u, t as i64), v));
                }
            }
        }
        let mut res = Self::from_grouped(&self.ctx, out);
        res.truncated |= self.truncated || other.truncated;
        Ok(res)
    }

    /// Action on W_N(F_{p^m}): F acts as σ, V as p σ^{-1} and ⟨c⟩ as
    /// multiplication by the Teichmüller lift. Requires `N ≤ A` so that the
    /// truncation modulo V^A is invisible.
    pub fn act(&self, x: &WittElement) -> Result<WittElement> {
        let wc = x.context();
        if wc.field() != &self.ctx.field {
            return Err(Error::ContextMismatch);
        }
        let n = wc.precision();
        if n > self.ctx.vcap {
            return Err(Error::Precision(format!(
                "Witt precision {n} exceeds the V-cap {}",
                self.ctx.vcap
            )));
        }
        let mut acc = wc.zero_lift();
        for (&(a, b), c) in &self.terms {
            if a >= n {
                continue; // lands in p^N W
            }
            let t = wc.mul_raw(&wc.teichmuller(c), &wc.sigma_pow(x.lift(), b as i64));
            let t = wc.scale_raw(&wc.sigma_pow(&t, -(a as i64)), self.ctx.p().pow(a));
            acc = wc.add_raw(&acc, &t);
        }
        Ok(WittElement::new(wc.clone(), acc))
    }
}

impl fmt::Display for CartierElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| {
                let mut s = String::new();
                match a {
                    0 => {}
                    1 => s.push('V'),
                    _ => s.push_str(&format!("V^{a}")),
                }
                s.push_str(&format!("<{}>", self.ctx.field.render(c)));
                match b {
                    0 => {}
                    1 => s.push('F'),
                    _ => s.push_str(&format!("F^{b}")),
                }
                s
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, m: u32, a: u32) -> Arc<CartierContext> {
        CartierContext::new(p, m, a).unwrap()
    }

    #[test]
    fn parse_round_trips() {
        let c = ctx(3, 2, 4);
        let x = CartierElement::parse(&c, "V^2<x+1>F + <2> + F^3 + p").unwrap();
        assert_eq!(CartierElement::parse(&c, &x.to_string()).unwrap(), x);
        assert_eq!(CartierElement::parse(&c, "VF").unwrap(), CartierElement::p(&c));
        assert!(CartierElement::parse(&c, "V<1").is_err());
        assert!(CartierElement::parse(&c, "G").is_err());
    }

    #[test]
    fn fv_and_vf_are_p() {
        for (p, m) in [(2, 2), (3, 2), (5, 1)] {
            let c = ctx(p, m, 4);
            let f = CartierElement::f(&c);
            let v = CartierElement::v(&c);
            let pe = CartierElement::p(&c);
            assert_eq!(f.mul(&v).unwrap(), pe);
            assert_eq!(v.mul(&f).unwrap(), pe);
            assert_eq!(pe.terms(), vec![(1, 1, c.field().one())]);
        }
    }

    #[test]
    fn frobenius_commutation() {
        let c = ctx(3, 2, 4);
        let k = c.field().clone();
        for a in k.elements() {
            let lhs = CartierElement::f(&c).mul(&CartierElement::teichmuller(&c, &a)).unwrap();
            let rhs = CartierElement::teichmuller(&c, &k.frobenius(&a, 1))
                .mul(&CartierElement::f(&c))
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn truncation_is_reported() {
        let c = ctx(2, 1, 2);
        let v = CartierElement::v(&c);
        let v2 = v.mul(&v).unwrap();
        assert!(v2.is_zero());
        assert!(v2.is_truncated());
        assert!(!v.is_truncated());
    }

    #[test]
    fn action_of_fv_is_multiplication_by_p() {
        let c = ctx(2, 2, 4);
        let wc = Arc::new(WittContext::new(2, 2, 4).unwrap());
        let fv = CartierElement::f(&c).mul(&CartierElement::v(&c)).unwrap();
        let k = wc.field().clone();
        for a in k.elements() {
            let x = WittElement::teichmuller(&wc, &a);
            let got = fv.act(&x).unwrap();
            assert_eq!(got.lift(), &wc.scale_raw(x.lift(), 2));
        }
    }
}
