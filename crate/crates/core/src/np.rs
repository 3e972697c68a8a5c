//! Newton polygons and p-adic polygons of polynomials.
//!
//! A [`NewtonPolygon`] runs from `(0,0)` to `(h,d)`, is lower convex, has
//! integral breakpoints and slopes in `[0,1]`. It is stored as its
//! decomposition into primitive segments `k·(m,n)`: slope `m/(m+n)` with
//! x-span `k·(m+n)`.
//!
//! Order convention: `a ≺ b` means that `b` lies on or below `a`. The
//! isoclinic polygon is therefore the minimum and the ordinary polygon the
//! maximum of the poset with given endpoints.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{self, rat, rat_int, Q};
use crate::error::{Error, Result};
use crate::hull;

/// One block of the polygon: slope `m/(m+n)` repeated `mult` times as a
/// primitive vector `(m+n, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub m: u32,
    pub n: u32,
    pub mult: u32,
}

impl Segment {
    pub fn slope(&self) -> Q {
        rat(self.m as i64, (self.m + self.n) as i64)
    }

    pub fn width(&self) -> u32 {
        self.mult * (self.m + self.n)
    }

    fn cmp_slope(&self, other: &Segment) -> Ordering {
        // m/(m+n) < m'/(m'+n')  <=>  m·n' < m'·n
        (self.m as u64 * other.n as u64).cmp(&(other.m as u64 * self.n as u64))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NewtonPolygon {
    height: u32,
    dim: u32,
    // sorted by increasing slope, distinct slopes
    segments: Vec<Segment>,
}

/// Result of comparing two polygons pointwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    /// `a` lies on or below `b` everywhere (and they differ): `a ≻ b`.
    ABelowB,
    /// `a` lies on or above `b` everywhere (and they differ): `a ≺ b`.
    AAboveB,
    Incomparable,
    DifferentEndpoints,
}

impl NewtonPolygon {
    /// Builds a polygon from coprime pairs `(m_i, n_i)`, in any order and
    /// with repetitions.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::invalid("empty pair list"));
        }
        let mut segs: Vec<Segment> = Vec::new();
        for &(m, n) in pairs {
            if m == 0 && n == 0 {
                return Err(Error::invalid("pair (0,0)"));
            }
            if m.gcd(&n) != 1 {
                return Err(Error::NotCoprime(m as i64, n as i64));
            }
            segs.push(Segment { m, n, mult: 1 });
        }
        Ok(Self::from_segments(segs))
    }

    /// Builds a polygon from `(m, n, multiplicity)` triples.
    pub fn from_weighted_pairs(pairs: &[(u32, u32, u32)]) -> Result<Self> {
        let mut flat = Vec::new();
        for &(m, n, k) in pairs {
            if k == 0 {
                return Err(Error::invalid("zero multiplicity"));
            }
            flat.extend(std::iter::repeat_n((m, n), k as usize));
        }
        Self::from_pairs(&flat)
    }

    fn from_segments(mut segs: Vec<Segment>) -> Self {
        segs.sort_by(|a, b| a.cmp_slope(b).then(a.m.cmp(&b.m)));
        let mut merged: Vec<Segment> = Vec::with_capacity(segs.len());
        for s in segs {
            match merged.last_mut() {
                Some(last) if last.m == s.m && last.n == s.n => last.mult += s.mult,
                _ => merged.push(s),
            }
        }
        let height = merged.iter().map(|s| s.width()).sum();
        let dim = merged.iter().map(|s| s.mult * s.m).sum();
        NewtonPolygon {
            height,
            dim,
            segments: merged,
        }
    }

    /// Builds a polygon from its slope multiset.
    pub fn from_slopes(slopes: &[Q]) -> Result<Self> {
        if slopes.is_empty() {
            return Err(Error::invalid("empty slope list"));
        }
        let mut sorted = slopes.to_vec();
        sorted.sort();
        let zero = rat_int(0);
        let one = rat_int(1);
        let mut segs = Vec::new();
        let mut i = 0;
        while i < sorted.len() {
            let s = &sorted[i];
            if s < &zero || s > &one {
                return Err(Error::invalid(format!(
                    "slope {} outside [0,1]",
                    arith::format_rational(s)
                )));
            }
            let count = sorted[i..].iter().take_while(|t| *t == s).count();
            let den = s.denom().to_u32().expect("small denominator");
            let num = s.numer().to_u32().expect("small numerator");
            if !(count as u32).is_multiple_of(den) {
                return Err(Error::invalid(format!(
                    "slope {} has multiplicity {count}, not a multiple of {den}",
                    arith::format_rational(s)
                )));
            }
            segs.push(Segment {
                m: num,
                n: den - num,
                mult: count as u32 / den,
            });
            i += count;
        }
        Ok(Self::from_segments(segs))
    }

    /// Isoclinic polygon: a single slope `d/h` (up to multiplicity).
    pub fn isoclinic(h: u32, d: u32) -> Result<Self> {
        if h == 0 || d > h {
            return Err(Error::invalid(format!("bad endpoints ({h},{d})")));
        }
        let g = h.gcd(&d);
        Self::from_weighted_pairs(&[(d / g, (h - d) / g, g)])
    }

    /// Ordinary polygon `d·(1,0) + c·(0,1)`.
    pub fn ordinary(h: u32, d: u32) -> Result<Self> {
        if h == 0 || d > h {
            return Err(Error::invalid(format!("bad endpoints ({h},{d})")));
        }
        let mut v = Vec::new();
        if d > 0 {
            v.push((1, 0, d));
        }
        if h > d {
            v.push((0, 1, h - d));
        }
        Self::from_weighted_pairs(&v)
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn codim(&self) -> u32 {
        self.height - self.dim
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Non-decreasing slope sequence of length `h`.
    pub fn slopes(&self) -> Vec<Q> {
        self.segments
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.slope(), s.width() as usize))
            .collect()
    }

    /// Breakpoints from `(0,0)` to `(h,d)`.
    pub fn breakpoints(&self) -> Vec<(u32, u32)> {
        let mut pts = vec![(0, 0)];
        let (mut x, mut y) = (0, 0);
        for s in &self.segments {
            x += s.width();
            y += s.mult * s.m;
            pts.push((x, y));
        }
        pts
    }

    /// Coprime pairs with multiplicity, sorted by increasing slope.
    pub fn pairs(&self) -> Vec<(u32, u32, u32)> {
        self.segments.iter().map(|s| (s.m, s.n, s.mult)).collect()
    }

    /// Pairs expanded by multiplicity.
    pub fn flat_pairs(&self) -> Vec<(u32, u32)> {
        self.segments
            .iter()
            .flat_map(|s| std::iter::repeat_n((s.m, s.n), s.mult as usize))
            .collect()
    }

    /// Height of the polygon above the integer abscissa `x ∈ [0,h]`.
    pub fn value_at(&self, x: u32) -> Q {
        assert!(x <= self.height, "x outside [0,h]");
        let mut x0 = 0u32;
        let mut y0 = rat_int(0);
        for s in &self.segments {
            let w = s.width();
            if x <= x0 + w {
                return y0 + s.slope() * rat_int((x - x0) as i64);
            }
            x0 += w;
            y0 += rat_int((s.mult * s.m) as i64);
        }
        y0
    }

    /// `true` when the lattice point `(x,y)` lies on or above the polygon.
    /// Points with `x` outside `[0,h]` are never on or above.
    pub fn point_on_or_above(&self, x: i64, y: i64) -> bool {
        if x < 0 || x > self.height as i64 {
            return false;
        }
        // exact test in integers: y·den ≥ value·den
        let v = self.value_at(x as u32);
        rat_int(y) >= v
    }

    pub fn dual(&self) -> Self {
        let segs = self
            .segments
            .iter()
            .map(|s| Segment {
                m: s.n,
                n: s.m,
                mult: s.mult,
            })
            .collect();
        Self::from_segments(segs)
    }

    pub fn is_symmetric(&self) -> bool {
        self.dual() == *self
    }

    pub fn compare(&self, other: &Self) -> Comparison {
        if self.height != other.height || self.dim != other.dim {
            return Comparison::DifferentEndpoints;
        }
        let (mut below, mut above) = (false, false);
        for x in 0..=self.height {
            match self.value_at(x).cmp(&other.value_at(x)) {
                Ordering::Less => below = true,
                Ordering::Greater => above = true,
                Ordering::Equal => {}
            }
        }
        match (below, above) {
            (false, false) => Comparison::Equal,
            (true, false) => Comparison::ABelowB,
            (false, true) => Comparison::AAboveB,
            (true, true) => Comparison::Incomparable,
        }
    }

    /// `self ≺ other`: equal endpoints and `other` on or below `self`.
    pub fn precedes(&self, other: &Self) -> bool {
        matches!(self.compare(other), Comparison::Equal | Comparison::AAboveB)
    }

    /// `◊(ζ) = {(x,y) : y < d, y < x, (x,y) on or above ζ}`.
    pub fn diamond(&self) -> LatticeRegion {
        let mut points = Vec::new();
        for y in 0..self.dim as i64 {
            for x in (y + 1)..=self.height as i64 {
                if self.point_on_or_above(x, y) {
                    points.push((x, y));
                }
            }
        }
        LatticeRegion::new(points)
    }

    /// `dim(ζ) = #◊(ζ)`.
    pub fn dim_count(&self) -> usize {
        self.diamond().len()
    }

    /// `△(ξ) = {(x,y) : y < g, y < x ≤ g, (x,y) on or above ξ}` for a
    /// symmetric polygon of height `2g`.
    pub fn triangle(&self) -> Result<LatticeRegion> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let g = self.dim as i64;
        let mut points = Vec::new();
        for y in 0..g {
            for x in (y + 1)..=g {
                if self.point_on_or_above(x, y) {
                    points.push((x, y));
                }
            }
        }
        Ok(LatticeRegion::new(points))
    }

    /// `sdim(ξ) = #△(ξ)`.
    pub fn sdim(&self) -> Result<usize> {
        Ok(self.triangle()?.len())
    }

    /// Multiplicity of slope 0.
    pub fn p_rank(&self) -> u32 {
        self.segments.iter().filter(|s| s.m == 0).map(|s| s.width()).sum()
    }

    pub fn is_ordinary(&self) -> bool {
        self.segments.iter().all(|s| s.m == 0 || s.n == 0)
    }

    pub fn is_supersingular(&self) -> bool {
        self.segments.iter().all(|s| s.m == 1 && s.n == 1)
    }

    /// All polygons with endpoints `(h,d)`, in a deterministic order.
    pub fn enumerate(h: u32, d: u32) -> Vec<NewtonPolygon> {
        // primitive directions (m,n) sorted by slope
        let mut dirs: Vec<(u32, u32)> = Vec::new();
        for w in 1..=h {
            for m in 0..=w {
                if m.gcd(&(w - m)) == 1 {
                    dirs.push((m, w - m));
                }
            }
        }
        dirs.sort_by(|a, b| (a.0 as u64 * b.1 as u64).cmp(&(b.0 as u64 * a.1 as u64)));
        let mut out = Vec::new();
        let mut acc = Vec::new();
        fn rec(
            dirs: &[(u32, u32)],
            start: usize,
            h: u32,
            d: u32,
            acc: &mut Vec<Segment>,
            out: &mut Vec<NewtonPolygon>,
        ) {
            if h == 0 && d == 0 {
                out.push(NewtonPolygon::from_segments(acc.clone()));
                return;
            }
            for (i, &(m, n)) in dirs.iter().enumerate().skip(start) {
                let w = m + n;
                let mut k = 1;
                while k * w <= h && k * m <= d {
                    acc.push(Segment { m, n, mult: k });
                    rec(dirs, i + 1, h - k * w, d - k * m, acc, out);
                    acc.pop();
                    k += 1;
                }
            }
        }
        if h > 0 && d <= h {
            rec(&dirs, 0, h, d, &mut acc, &mut out);
        }
        out
    }
}

impl fmt::Display for NewtonPolygon {
    /// Canonical rendering: pairs by decreasing slope, e.g.
    /// `2*(1,0)+(2,1)+(1,5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .segments
            .iter()
            .rev()
            .map(|s| {
                if s.mult == 1 {
                    format!("({},{})", s.m, s.n)
                } else {
                    format!("{}*({},{})", s.mult, s.m, s.n)
                }
            })
            .collect();
        f.write_str(&parts.join("+"))
    }
}

impl std::str::FromStr for NewtonPolygon {
    type Err = Error;

    /// Parses the pair mini-language:
    ///
    /// ```text
    /// polygon := term ('+' term)*
    /// term    := [count ('*' | '×' | '·')] '(' m ',' n ')'
    /// ```
    ///
    /// Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = PairParser { chars: &chars, pos: 0 };
        let mut pairs = Vec::new();
        loop {
            let (k, m, n) = p.term()?;
            pairs.push((m, n, k));
            if p.eat('+') {
                continue;
            }
            if p.pos != chars.len() {
                return Err(Error::Parse(format!("unexpected {:?} at {}", chars[p.pos], p.pos)));
            }
            break;
        }
        Self::from_weighted_pairs(&pairs)
    }
}

struct PairParser<'a> {
    chars: &'a [char],
    pos: usize,
}

impl PairParser<'_> {
    fn eat(&mut self, c: char) -> bool {
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {c:?} at {}", self.pos)))
        }
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected a number at {start}")));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| Error::Parse(format!("number {text} out of range")))
    }

    fn term(&mut self) -> Result<(u32, u32, u32)> {
        let k = if self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            let k = self.number()?;
            if !(self.eat('*') || self.eat('×') || self.eat('·')) {
                return Err(Error::Parse(format!("expected '*' at {}", self.pos)));
            }
            k
        } else {
            1
        };
        self.expect('(')?;
        let m = self.number()?;
        self.expect(',')?;
        let n = self.number()?;
        self.expect(')')?;
        Ok((k, m, n))
    }
}

/// A finite set of lattice points, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeRegion {
    points: Vec<(i64, i64)>,
}

impl LatticeRegion {
    fn new(mut points: Vec<(i64, i64)>) -> Self {
        points.sort();
        points.dedup();
        LatticeRegion { points }
    }

    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, pt: (i64, i64)) -> bool {
        self.points.binary_search(&pt).is_ok()
    }

    pub fn is_subset(&self, other: &LatticeRegion) -> bool {
        self.points.iter().all(|&pt| other.contains(pt))
    }
}

/// The p-adic Newton polygon of a polynomial: lower hull of
/// `(j, v_p(γ_j))` for `g = Σ γ_j T^{h-j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationPolygon {
    p: u64,
    /// `(j, v_p(γ_j))`, `None` for a zero coefficient.
    points: Vec<(u32, Option<i64>)>,
    hull: Vec<(Q, Q)>,
}

impl ValuationPolygon {
    /// From coefficients listed leading first: `coeffs[j] = γ_j`.
    pub fn of_polynomial(coeffs: &[Q], p: u64) -> Result<Self> {
        arith::require_prime(p)?;
        match coeffs.first() {
            Some(c) if *c == rat_int(1) => {}
            _ => return Err(Error::NotMonic),
        }
        let points: Vec<(u32, Option<i64>)> = coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| (j as u32, arith::val_rat(c, p)))
            .collect();
        Self::from_points(p, points)
    }

    /// From explicit `(j, valuation)` data; `None` stands for `+∞`.
    pub fn from_points(p: u64, points: Vec<(u32, Option<i64>)>) -> Result<Self> {
        let finite: Vec<(Q, Q)> = points
            .iter()
            .filter_map(|&(j, v)| v.map(|v| (rat_int(j as i64), rat_int(v))))
            .collect();
        if finite.is_empty() {
            return Err(Error::invalid("zero polynomial"));
        }
        let hull = hull::lower_hull(&finite);
        Ok(ValuationPolygon { p, points, hull })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn points(&self) -> &[(u32, Option<i64>)] {
        &self.points
    }

    pub fn vertices(&self) -> &[(Q, Q)] {
        &self.hull
    }

    /// `(slope, x-span)` of each hull segment, slopes strictly increasing.
    pub fn segments(&self) -> Vec<(Q, u32)> {
        self.hull
            .windows(2)
            .map(|w| {
                let dx = &w[1].0 - &w[0].0;
                let slope = (&w[1].1 - &w[0].1) / &dx;
                (slope, dx.to_integer().to_u32().expect("small span"))
            })
            .collect()
    }

    /// Slope multiset (each slope repeated by its x-span), non-decreasing.
    pub fn slopes(&self) -> Vec<Q> {
        self.segments()
            .into_iter()
            .flat_map(|(s, w)| std::iter::repeat_n(s, w as usize))
            .collect()
    }

    /// Hull value at `x`, if `x` lies within the hull's x-range.
    pub fn value_at(&self, x: u32) -> Option<Q> {
        hull::evaluate(&self.hull, &rat_int(x as i64))
    }

    /// Slopes divided by `scale` (e.g. `v_p(q)`), as a Newton polygon when
    /// they land in `[0,1]` with integral breakpoints.
    pub fn normalized(&self, scale: u32) -> Result<NewtonPolygon> {
        let s = rat_int(scale as i64);
        let slopes: Vec<Q> = self.slopes().into_iter().map(|x| x / &s).collect();
        NewtonPolygon::from_slopes(&slopes)
    }

    /// The polygon itself as a Newton polygon, if its slopes allow it.
    pub fn to_newton_polygon(&self) -> Result<NewtonPolygon> {
        if self.hull.first().map(|v| v.0.clone()) != Some(rat_int(0)) {
            return Err(Error::invalid("polygon does not start at x = 0"));
        }
        self.normalized(1)
    }
}

/// Convenience for integer coefficient lists.
pub fn int_coeffs(coeffs: &[i64]) -> Vec<Q> {
    coeffs.iter().map(|&c| rat_int(c)).collect()
}

pub fn big_coeffs(coeffs: &[BigInt]) -> Vec<Q> {
    coeffs.iter().map(|c| Q::from_integer(c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn np(s: &str) -> NewtonPolygon {
        s.parse().unwrap()
    }

    #[test]
    fn from_pairs_examples() {
        let ord = NewtonPolygon::from_pairs(&[(1, 0), (0, 1)]).unwrap();
        assert_eq!(ord.slopes(), vec![rat_int(0), rat_int(1)]);
        assert_eq!((ord.height(), ord.dim()), (2, 1));
        let ss = NewtonPolygon::from_pairs(&[(1, 1)]).unwrap();
        assert_eq!(ss.slopes(), vec![rat(1, 2), rat(1, 2)]);
        let gm = NewtonPolygon::from_pairs(&[(1, 0)]).unwrap();
        assert_eq!((gm.height(), gm.dim()), (1, 1));
        assert_eq!(gm.slopes(), vec![rat_int(1)]);
    }

    #[test]
    fn from_pairs_errors() {
        assert!(matches!(
            NewtonPolygon::from_pairs(&[(2, 2)]),
            Err(Error::NotCoprime(2, 2))
        ));
        assert!(NewtonPolygon::from_pairs(&[]).is_err());
        assert!(NewtonPolygon::from_pairs(&[(0, 0)]).is_err());
    }

    #[test]
    fn from_slopes_requires_integral_breakpoints() {
        assert!(NewtonPolygon::from_slopes(&[rat(1, 3), rat(1, 3)]).is_err());
        assert!(NewtonPolygon::from_slopes(&[rat(3, 2)]).is_err());
        let z = NewtonPolygon::from_slopes(&[rat(2, 3), rat(2, 3), rat(2, 3), rat_int(0)]).unwrap();
        assert_eq!(z, np("(2,1)+(0,1)"));
    }

    #[test]
    fn text_round_trip() {
        let z = np(" 2 * (1,0) + (2,1)+(1,5)");
        assert_eq!(z.to_string(), "2*(1,0)+(2,1)+(1,5)");
        assert_eq!((z.height(), z.dim()), (11, 5));
        assert_eq!(np("(1,5)+(1,0)+(2,1)+(1,0)"), z);
        assert!("(1,0)+".parse::<NewtonPolygon>().is_err());
        assert!("2(1,0)".parse::<NewtonPolygon>().is_err());
    }

    #[test]
    fn duality_and_symmetry() {
        assert_eq!(np("(1,0)").dual(), np("(0,1)"));
        assert_eq!(np("(1,1)").dual(), np("(1,1)"));
        let x = np("(2,1)+(1,2)");
        assert_eq!(x.dual(), x);
        assert_eq!((x.height(), x.dim()), (6, 3));
        assert!(np("2*(1,1)").is_symmetric());
        assert!(np("(1,0)+(0,1)").is_symmetric());
        assert!(!np("(2,1)").is_symmetric());
    }

    #[test]
    fn comparisons() {
        let ss = np("2*(1,1)");
        let ord = np("2*(1,0)+2*(0,1)");
        assert_eq!(ss.compare(&ord), Comparison::AAboveB);
        assert!(ss.precedes(&ord));
        assert_eq!(ss.compare(&ss), Comparison::Equal);
        let a = np("(2,1)+(1,2)");
        let iso = np("3*(1,1)");
        assert_eq!(a.compare(&iso), Comparison::ABelowB);
        assert_eq!(iso.compare(&a), Comparison::AAboveB);
        assert_eq!(a.compare(&np("(1,0)")), Comparison::DifferentEndpoints);
        let u = np("(2,1)+(0,1)");
        let v = np("(1,2)+(1,0)");
        assert_eq!(u.compare(&v), Comparison::Incomparable);
    }

    #[test]
    fn dimension_counts() {
        assert_eq!(np("2*(1,0)+(2,1)+(1,5)").dim_count(), 22);
        assert_eq!(np("3*(1,0)+4*(0,1)").dim_count(), 12);
        assert_eq!(np("(1,1)").dim_count(), 0);
        assert_eq!(np("(5,1)+(2,1)+2*(1,1)+(1,2)+(1,5)").sdim().unwrap(), 48);
        assert_eq!(np("(1,1)").sdim().unwrap(), 0);
        assert_eq!(np("2*(1,0)+2*(0,1)").sdim().unwrap(), 3);
        assert_eq!(np("(2,1)").sdim(), Err(Error::NotSymmetric));
    }

    #[test]
    fn p_rank_counts_slope_zero() {
        assert_eq!(np("3*(1,0)+3*(0,1)").p_rank(), 3);
        assert_eq!(np("3*(1,1)").p_rank(), 0);
        let x = np("(2,1)+(1,2)");
        assert_eq!(x.p_rank(), 0);
        assert!(!x.is_supersingular());
    }

    #[test]
    fn polynomial_polygons() {
        // T^2 + 2T + 8 at p = 2: points (0,0),(1,1),(2,3)
        let vp = ValuationPolygon::of_polynomial(&int_coeffs(&[1, 2, 8]), 2).unwrap();
        assert_eq!(vp.slopes(), vec![rat_int(1), rat_int(2)]);
        let unit = ValuationPolygon::of_polynomial(&int_coeffs(&[1, -1]), 7).unwrap();
        assert_eq!(unit.slopes(), vec![rat_int(0)]);
        // T^3 - 5T - 125 at p = 5: zero T^2 coefficient stays out of the hull
        let cubic = ValuationPolygon::of_polynomial(&int_coeffs(&[1, 0, -5, -125]), 5).unwrap();
        assert_eq!(cubic.points()[1], (1, None));
        assert_eq!(cubic.slopes(), vec![rat(1, 2), rat(1, 2), rat_int(2)]);
        assert_eq!(
            ValuationPolygon::of_polynomial(&int_coeffs(&[2, 1]), 3),
            Err(Error::NotMonic)
        );
        assert_eq!(
            ValuationPolygon::of_polynomial(&int_coeffs(&[1, 1]), 4),
            Err(Error::NotPrime(4))
        );
    }

    #[test]
    fn enumeration_small() {
        let all = NewtonPolygon::enumerate(2, 1);
        assert_eq!(all.len(), 2);
        let all = NewtonPolygon::enumerate(4, 2);
        assert_eq!(all.len(), 5);
    }
}
