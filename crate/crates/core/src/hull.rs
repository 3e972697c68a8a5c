//! Lower convex hulls over exact rationals.

use crate::arith::Q;

/// Lower convex hull of a point set, as the list of vertices sorted by x.
///
/// Collinear interior points are dropped, so consecutive segments have
/// strictly increasing slopes. For equal x only the lowest point is kept.
pub fn lower_hull(points: &[(Q, Q)]) -> Vec<(Q, Q)> {
    let mut pts: Vec<(Q, Q)> = points.to_vec();
    pts.sort();
    pts.dedup_by(|b, a| a.0 == b.0);
    let mut hull: Vec<(Q, Q)> = Vec::with_capacity(pts.len());
    for pt in pts {
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            // drop b unless it lies strictly below the chord a -> pt
            let cross = (&b.0 - &a.0) * (&pt.1 - &a.1) - (&b.1 - &a.1) * (&pt.0 - &a.0);
            if cross <= Q::from_integer(0.into()) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull
}

/// Value at `x` of the piecewise-linear function through `vertices`
/// (sorted by x); `None` outside the x-range.
pub fn evaluate(vertices: &[(Q, Q)], x: &Q) -> Option<Q> {
    let first = vertices.first()?;
    let last = vertices.last()?;
    if x < &first.0 || x > &last.0 {
        return None;
    }
    for w in vertices.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if x <= &b.0 {
            let t = (x - &a.0) / (&b.0 - &a.0);
            return Some(&a.1 + t * (&b.1 - &a.1));
        }
    }
    Some(first.1.clone())
}
