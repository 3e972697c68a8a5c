//! Oracles shared by the integration tests. They work from the raw pair
//! data of a polygon with plain integer arithmetic and do not touch the
//! library's hull, comparison or region code.

#![allow(dead_code)]

use isocrystal_lab::np::NewtonPolygon;

/// Vertices of the polygon rebuilt from its `(m, n, mult)` blocks.
pub fn vertices(x: &NewtonPolygon) -> Vec<(i64, i64)> {
    let mut blocks: Vec<(i64, i64)> = x
        .pairs()
        .iter()
        .map(|&(m, n, k)| (((m + n) * k) as i64, (m * k) as i64))
        .collect();
    // Sort by slope dy/dx.
    blocks.sort_by(|a, b| (a.1 * b.0).cmp(&(b.1 * a.0)));
    let mut pts = vec![(0, 0)];
    for (dx, dy) in blocks {
        let (x0, y0) = *pts.last().unwrap();
        pts.push((x0 + dx, y0 + dy));
    }
    pts
}

/// Whether `(x, y)` lies on or above the polyline through `verts`.
pub fn on_or_above(verts: &[(i64, i64)], x: i64, y: i64) -> bool {
    for w in verts.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if x0 <= x && x <= x1 {
            return (y - y0) * (x1 - x0) >= (y1 - y0) * (x - x0);
        }
    }
    panic!("x = {x} outside the polygon");
}

/// `2·value` of the polyline at integer `x`, as an exact fraction
/// `(num, den)` with positive denominator.
pub fn value_at(verts: &[(i64, i64)], x: i64) -> (i64, i64) {
    for w in verts.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if x0 <= x && x <= x1 {
            return (y0 * (x1 - x0) + (y1 - y0) * (x - x0), x1 - x0);
        }
    }
    panic!("x = {x} outside the polygon");
}

/// `a ≺ b`: same endpoints and `b` on or below `a` at every integer
/// abscissa (all breakpoints are integral).
pub fn precedes(a: &NewtonPolygon, b: &NewtonPolygon) -> bool {
    if (a.height(), a.dim()) != (b.height(), b.dim()) {
        return false;
    }
    let (va, vb) = (vertices(a), vertices(b));
    (0..=a.height() as i64).all(|x| {
        let (na, da) = value_at(&va, x);
        let (nb, db) = value_at(&vb, x);
        nb * da <= na * db
    })
}

/// `#{(x,y) : 0 ≤ y < d, y < x ≤ h, (x,y) on or above}`.
pub fn diamond(x: &NewtonPolygon) -> Vec<(i64, i64)> {
    let v = vertices(x);
    let (h, d) = (x.height() as i64, x.dim() as i64);
    let mut out = Vec::new();
    for y in 0..d {
        for xx in y + 1..=h {
            if on_or_above(&v, xx, y) {
                out.push((xx, y));
            }
        }
    }
    out
}

/// The same count restricted to `x ≤ g`, `y < g` for a height-`2g` polygon.
pub fn triangle(x: &NewtonPolygon) -> usize {
    let v = vertices(x);
    let g = x.dim() as i64;
    (0..g)
        .flat_map(|y| (y + 1..=g).map(move |xx| (xx, y)))
        .filter(|&(xx, y)| on_or_above(&v, xx, y))
        .count()
}

/// Every polygon with endpoint `(h, d)`, built as multisets of primitive
/// blocks with non-decreasing slope.
pub fn all_polygons(h: u32, d: u32) -> Vec<NewtonPolygon> {
    fn rec(h: u32, d: u32, min: (u32, u32), acc: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if h == 0 {
            if d == 0 {
                out.push(acc.clone());
            }
            return;
        }
        for w in 1..=h {
            for m in 0..=w.min(d) {
                let n = w - m;
                if num_integer::gcd(m, n) != 1 {
                    continue;
                }
                // slope m/w must be ≥ the previous slope min.0/min.1
                if (m as u64) * (min.1 as u64) < (min.0 as u64) * (w as u64) {
                    continue;
                }
                acc.push((m, n));
                rec(h - w, d - m, (m, w), acc, out);
                acc.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(h, d, (0, 1), &mut Vec::new(), &mut raw);
    raw.iter()
        .map(|pairs| NewtonPolygon::from_pairs(pairs).unwrap())
        .collect()
}
