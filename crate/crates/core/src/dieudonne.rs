//! Dieudonné modules over W_N(F_{p^m}) given by matrices.
//!
//! Conventions are module-side: F acts σ-linearly as `x ↦ F·σ(x)` and V
//! σ^{-1}-linearly as `x ↦ V·σ^{-1}(x)` on coordinate vectors. Module F
//! corresponds to the Verschiebung of the group, so the module of
//! `G_{m,n}` has F-slope `m/(m+n)` and `dim = m` is the valuation of
//! `det F`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::arith::{rat_int, require_prime, Q};
use crate::error::{Error, Result};
use crate::hull;
use crate::linalg::{rank_over, smith_invariants};
use crate::np::{NewtonPolygon, ValuationPolygon};
use crate::poly::charpoly;
use crate::witt::{Lift, Valuation, WittContext};

/// Square matrix over a Witt context, row-major.
pub type Matrix = Vec<Vec<Lift>>;

fn map_entries(m: &Matrix, f: impl Fn(&Lift) -> Lift) -> Matrix {
    m.iter().map(|row| row.iter().map(&f).collect()).collect()
}

fn transpose(m: &Matrix) -> Matrix {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].clone()).collect()).collect()
}

fn mat_mul(ctx: &WittContext, a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(ctx.zero_lift(), |acc, k| {
                        ctx.add_raw(&acc, &ctx.mul_raw(&a[i][k], &b[k][j]))
                    })
                })
                .collect()
        })
        .collect()
}

fn scalar_matrix(ctx: &WittContext, n: usize, c: u64) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { ctx.scalar(c) } else { ctx.zero_lift() })
                .collect()
        })
        .collect()
}

/// A free W_N(F_{p^m})-module of rank `h` with σ-linear F and optionally
/// σ^{-1}-linear V.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DieudonnePresentation {
    ctx: Arc<WittContext>,
    f: Matrix,
    v: Option<Matrix>,
    dim: Option<u32>,
}

impl DieudonnePresentation {
    /// Validates shapes and, when V is present, `F σ(V) = V σ^{-1}(F) = p`.
    pub fn new(ctx: Arc<WittContext>, f: Matrix, v: Option<Matrix>) -> Result<Self> {
        let h = f.len();
        if h == 0 {
            return Err(Error::invalid("empty F-matrix"));
        }
        let square = |m: &Matrix| m.len() == h && m.iter().all(|r| r.len() == h);
        if !square(&f) || v.as_ref().is_some_and(|v| !square(v)) {
            return Err(Error::invalid("F and V must be square of the same size"));
        }
        let pres = DieudonnePresentation { ctx, f, v, dim: None };
        if let Some(v) = &pres.v {
            let c = &pres.ctx;
            let p_id = scalar_matrix(c, h, c.p());
            if mat_mul(c, &pres.f, &map_entries(v, |x| c.sigma(x))) != p_id {
                return Err(Error::invalid("F·σ(V) is not p"));
            }
            if mat_mul(c, v, &map_entries(&pres.f, |x| c.sigma_inv(x))) != p_id {
                return Err(Error::invalid("V·σ^{-1}(F) is not p"));
            }
        }
        Ok(pres)
    }

    pub fn context(&self) -> &Arc<WittContext> {
        &self.ctx
    }

    pub fn height(&self) -> u32 {
        self.f.len() as u32
    }

    pub fn f_matrix(&self) -> &Matrix {
        &self.f
    }

    pub fn v_matrix(&self) -> Option<&Matrix> {
        self.v.as_ref()
    }

    /// Dimension tag when known by construction, otherwise `v(det F)` when
    /// certified at the working precision.
    pub fn dim(&self) -> Option<u32> {
        self.dim.or(match self.det_valuation() {
            Valuation::Finite(v) => Some(v),
            Valuation::AtLeast(_) => None,
        })
    }

    /// Valuation of `det F`.
    pub fn det_valuation(&self) -> Valuation {
        let cp = charpoly(self.ctx.as_ref(), &self.f);
        match self.ctx.valuation(cp.last().unwrap()) {
            Some(v) => Valuation::Finite(v),
            None => Valuation::AtLeast(self.ctx.precision()),
        }
    }
}

/// The module of `G_{m,n}`: basis `e_0..e_{h−1}`, `F e_i = e_{i+m}`,
/// `V e_i = e_{i+n}`, `e_{i+h} = p e_i`.
pub fn gmn_module(m: u32, n: u32, ctx: Arc<WittContext>) -> Result<DieudonnePresentation> {
    if m == 0 && n == 0 {
        return Err(Error::invalid("pair (0,0)"));
    }
    if m.gcd(&n) != 1 {
        return Err(Error::NotCoprime(m as i64, n as i64));
    }
    let h = (m + n) as usize;
    if ctx.precision() < m + n + 2 {
        return Err(Error::Precision(format!(
            "G_{{{m},{n}}} needs precision at least {}, context has {}",
            m + n + 2,
            ctx.precision()
        )));
    }
    let shift = |k: usize| -> Matrix {
        let mut mat = vec![vec![ctx.zero_lift(); h]; h];
        for i in 0..h {
            let t = i + k;
            mat[t % h][i] = if t >= h { ctx.scalar(ctx.p()) } else { ctx.one_lift() };
        }
        mat
    };
    let f = shift(m as usize);
    let v = shift(n as usize);
    let mut pres = DieudonnePresentation::new(ctx, f, Some(v))?;
    pres.dim = Some(m);
    Ok(pres)
}

/// `dim_k M/(FM + VM)`.
pub fn a_number(pres: &DieudonnePresentation) -> Result<u32> {
    let v = pres.v.as_ref().ok_or(Error::MissingV)?;
    let ctx = &pres.ctx;
    let h = pres.f.len();
    // σ is bijective, so FM and VM are the column spans of the matrices.
    let combined: Vec<Vec<_>> = (0..h)
        .map(|i| pres.f[i].iter().chain(&v[i]).map(|x| ctx.residue(x)).collect())
        .collect();
    Ok((h - rank_over(ctx.field(), &combined)) as u32)
}

/// Dual module: `F' = σ(Vᵀ)`, `V' = σ^{-1}(Fᵀ)`.
pub fn dualize(pres: &DieudonnePresentation) -> Result<DieudonnePresentation> {
    let v = pres.v.as_ref().ok_or(Error::MissingV)?;
    let ctx = pres.ctx.clone();
    let f_dual = map_entries(&transpose(v), |x| ctx.sigma(x));
    let v_dual = map_entries(&transpose(&pres.f), |x| ctx.sigma_inv(x));
    let mut out = DieudonnePresentation::new(ctx, f_dual, Some(v_dual))?;
    out.dim = pres.dim.map(|d| pres.height() - d);
    Ok(out)
}

/// Display matrix in normal form with block size `s`.
///
/// Free entries `a_{i,j}` sit at `1 ≤ i ≤ s`, `s ≤ j ≤ h` (1-based) and
/// `a_{1,h}` must be a unit. The F-matrix has the `a_{i,s}` in column `s`,
/// `p·a_{i,j}` for `j > s`, ones below the diagonal of the upper-left
/// block and at `(s+1, s)`, and `p` below the diagonal of the lower-right
/// block. With `s = 0` there are no free entries and F is `p` times the
/// cyclic shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplayNormalForm {
    ctx: Arc<WittContext>,
    h: u32,
    s: u32,
    entries: BTreeMap<(u32, u32), Lift>,
}

impl DisplayNormalForm {
    pub fn new(ctx: Arc<WittContext>, h: u32, s: u32, entries: BTreeMap<(u32, u32), Lift>) -> Result<Self> {
        if h == 0 || s > h {
            return Err(Error::NormalForm(format!("block size {s} invalid for height {h}")));
        }
        for &(i, j) in entries.keys() {
            if !(1..=s).contains(&i) || !(s..=h).contains(&j) {
                return Err(Error::NormalForm(format!(
                    "entry a_{{{i},{j}}} outside 1≤i≤{s}, {s}≤j≤{h}"
                )));
            }
        }
        let entries: BTreeMap<_, _> = entries.into_iter().filter(|(_, v)| v.iter().any(|&c| c != 0)).collect();
        if s > 0 && !entries.get(&(1, h)).is_some_and(|a| ctx.is_unit(a)) {
            return Err(Error::NormalForm("a_{1,h} must be a unit".into()));
        }
        Ok(DisplayNormalForm { ctx, h, s, entries })
    }

    /// Normal form of `G_{m,n}`: `s = n` and the only entry is `a_{1,h} = 1`.
    pub fn gmn(m: u32, n: u32, ctx: Arc<WittContext>) -> Result<Self> {
        if m.gcd(&n) != 1 {
            return Err(Error::NotCoprime(m as i64, n as i64));
        }
        let h = m + n;
        let mut entries = BTreeMap::new();
        if n > 0 {
            entries.insert((1, h), ctx.one_lift());
        }
        Self::new(ctx, h, n, entries)
    }

    pub fn height(&self) -> u32 {
        self.h
    }

    pub fn block_size(&self) -> u32 {
        self.s
    }

    pub fn context(&self) -> &Arc<WittContext> {
        &self.ctx
    }

    pub fn entries(&self) -> &BTreeMap<(u32, u32), Lift> {
        &self.entries
    }

    /// Every entry is either zero or a unit.
    pub fn is_unit_pattern(&self) -> bool {
        self.entries.values().all(|a| self.ctx.is_unit(a))
    }

    /// The h×h F-matrix (0-based rows and columns).
    pub fn matrix(&self) -> Matrix {
        let ctx = &self.ctx;
        let (h, s) = (self.h as usize, self.s as usize);
        let p = ctx.scalar(ctx.p());
        let mut m = vec![vec![ctx.zero_lift(); h]; h];
        if s == 0 {
            for j in 0..h {
                m[(j + 1) % h][j] = p.clone();
            }
            return m;
        }
        for j in 1..s {
            m[j][j - 1] = ctx.one_lift();
        }
        if s < h {
            m[s][s - 1] = ctx.one_lift();
        }
        for j in s + 1..h {
            m[j][j - 1] = p.clone();
        }
        for (&(i, j), a) in &self.entries {
            let val = if j as usize > s { ctx.mul_raw(a, &p) } else { a.clone() };
            m[i as usize - 1][j as usize - 1] = val;
        }
        m
    }
}

/// Certifies a polygon from coefficient valuations: `known` maps an x-index
/// to a valuation, `unknown` lists indices whose coefficient vanished at
/// precision `n`. Unknown coefficients are harmless only if `n` is not below
/// the hull of the known points there.
fn certified_polygon(
    p: u64,
    h: u32,
    points: Vec<(u32, Option<i64>)>,
    unknown: &[u32],
    n: u32,
) -> Result<NewtonPolygon> {
    let finite: Vec<(Q, Q)> = points
        .iter()
        .filter_map(|&(x, v)| v.map(|v| (rat_int(x as i64), rat_int(v))))
        .collect();
    let hull_pts = hull::lower_hull(&finite);
    match hull_pts.last() {
        Some((x, _)) if *x == rat_int(h as i64) => {}
        _ => {
            return Err(Error::Precision(format!(
                "constant coefficient vanishes at precision {n}"
            )))
        }
    }
    for &x in unknown {
        let bound = hull::evaluate(&hull_pts, &rat_int(x as i64)).expect("index inside hull");
        if rat_int(n as i64) < bound {
            return Err(Error::Precision(format!(
                "coefficient at index {x} vanishes modulo p^{n} but could lie below the polygon"
            )));
        }
    }
    ValuationPolygon::from_points(p, points)?.to_newton_polygon()
}

/// Newton polygon of a module in display normal form, from the twisted
/// polynomial `F^h − P` with `F^h·e = P·e`. The result ends at `(h, h−s)`.
pub fn np_of_display(dnf: &DisplayNormalForm) -> Result<NewtonPolygon> {
    let (h, s) = (dnf.h, dnf.s);
    if s == 0 {
        return NewtonPolygon::isoclinic(h, h);
    }
    if dnf.is_unit_pattern() {
        let pts: Vec<(Q, Q)> = std::iter::once((rat_int(0), rat_int(0)))
            .chain(
                dnf.entries
                    .keys()
                    .map(|&(i, j)| (rat_int((j + 1 - i) as i64), rat_int((j - s) as i64))),
            )
            .collect();
        let verts = hull::lower_hull(&pts);
        let points = verts
            .iter()
            .map(|(x, y)| {
                (
                    x.to_integer().try_into().unwrap(),
                    Some(y.to_integer().try_into().unwrap()),
                )
            })
            .collect();
        return ValuationPolygon::from_points(dnf.ctx.p(), points)?.to_newton_polygon();
    }
    // b_k is the coefficient of F^{h−k}: Σ over j+1−i = k of p^{j−s} σ^{h−j}(a_{i,j}).
    let ctx = &dnf.ctx;
    let mut coeffs: BTreeMap<u32, Lift> = BTreeMap::new();
    for (&(i, j), a) in &dnf.entries {
        let k = j + 1 - i;
        let term = ctx.scale_raw(&ctx.sigma_pow(a, (h - j) as i64), ctx.p().pow(j - s));
        let slot = coeffs.entry(k).or_insert_with(|| ctx.zero_lift());
        *slot = ctx.add_raw(slot, &term);
    }
    let mut points = vec![(0, Some(0))];
    let mut unknown = Vec::new();
    for (k, b) in coeffs {
        match ctx.valuation(&b) {
            Some(v) => points.push((k, Some(v as i64))),
            None => {
                points.push((k, None));
                unknown.push(k);
            }
        }
    }
    certified_polygon(ctx.p(), h, points, &unknown, ctx.precision())
}

/// Polygon of the characteristic polynomial of an F-matrix over W_N(F_p),
/// where σ is trivial and F is linear. Slopes may exceed 1 for matrices that
/// are not Dieudonné modules, hence the [`ValuationPolygon`] return type.
pub fn np_sigma_trivial(ctx: &WittContext, f: &Matrix) -> Result<ValuationPolygon> {
    if ctx.degree() != 1 {
        return Err(Error::invalid("σ-trivial polygon needs the prime field"));
    }
    let h = f.len() as u32;
    if h == 0 || f.iter().any(|r| r.len() != h as usize) {
        return Err(Error::invalid("F-matrix must be square and nonempty"));
    }
    let cp = charpoly(ctx, f);
    let mut points = Vec::new();
    let mut unknown = Vec::new();
    for (k, c) in cp.iter().enumerate() {
        match ctx.valuation(c) {
            Some(v) => points.push((k as u32, Some(v as i64))),
            None => {
                points.push((k as u32, None));
                unknown.push(k as u32);
            }
        }
    }
    if ctx.valuation(cp.last().unwrap()).is_none() {
        return Err(Error::Precision(format!("det F vanishes modulo p^{}", ctx.precision())));
    }
    let finite: Vec<(Q, Q)> = points
        .iter()
        .filter_map(|&(x, v)| v.map(|v| (rat_int(x as i64), rat_int(v))))
        .collect();
    let hull_pts = hull::lower_hull(&finite);
    for &x in &unknown {
        let bound = hull::evaluate(&hull_pts, &rat_int(x as i64)).expect("index inside hull");
        if rat_int(ctx.precision() as i64) < bound {
            return Err(Error::Precision(format!(
                "characteristic coefficient {x} vanishes modulo p^{} but could lie below the polygon",
                ctx.precision()
            )));
        }
    }
    ValuationPolygon::from_points(ctx.p(), points)
}

/// Elementary divisors of the relation module in the Serre–Tate torsion
/// computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionProfile {
    pub p: u64,
    pub exponents: Vec<u32>,
    /// Cyclic orders `p^{f_k}`, sorted, one per pair `i < j` (trivial
    /// factors included as `1`).
    pub orders: Vec<BigInt>,
}

impl TorsionProfile {
    /// Exponents `f_k` with `orders[k] = p^{f_k}`.
    pub fn order_exponents(&self) -> Vec<u32> {
        self.orders
            .iter()
            .map(|o| crate::arith::val_int(o, self.p).expect("nonzero order") as u32)
            .collect()
    }
}

/// Relation matrix of `T ⊗ T / (u ⊗ λv − v ⊗ λu)` with `λ = diag(p^{e_i})`:
/// one row per pair `a < b`, columns indexed by `(a, b) ↦ a·g + b`.
pub fn serre_tate_relations(exponents: &[u32], p: u64) -> Vec<Vec<BigInt>> {
    let g = exponents.len();
    let pb = BigInt::from(p);
    let mut rows = Vec::new();
    for a in 0..g {
        for b in a + 1..g {
            let mut row = vec![BigInt::from(0); g * g];
            row[a * g + b] = pb.pow(exponents[b]);
            row[b * g + a] = -pb.pow(exponents[a]);
            rows.push(row);
        }
    }
    rows
}

/// Torsion of the Serre–Tate relation module via Smith normal form.
pub fn serre_tate_torsion(exponents: &[u32], p: u64) -> Result<TorsionProfile> {
    require_prime(p)?;
    if exponents.is_empty() {
        return Err(Error::invalid("need g ≥ 1"));
    }
    if exponents.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::invalid("exponents must be sorted"));
    }
    let mut orders = smith_invariants(&serre_tate_relations(exponents, p));
    orders.sort();
    Ok(TorsionProfile {
        p,
        exponents: exponents.to_vec(),
        orders,
    })
}
