//! The poset of Newton polygons with fixed endpoints.
//!
//! Elements are sorted by rank (then canonical text), so the element list is
//! a linear extension of `≺` and every cover `(i, j)` has `i < j`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::np::NewtonPolygon;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NpPoset {
    height: u32,
    dim: u32,
    symmetric: bool,
    elements: Vec<NewtonPolygon>,
    /// `(i, j)`: `elements[j]` covers `elements[i]`.
    covers: Vec<(usize, usize)>,
    /// Lattice-region count (`#◊`, or `#△` when symmetric) per element.
    counts: Vec<usize>,
}

impl NpPoset {
    /// All polygons from `(0,0)` to `(h,d)`, or only the symmetric ones
    /// (which requires `h = 2d`).
    pub fn build(h: u32, d: u32, symmetric: bool) -> Result<Self> {
        if h == 0 || d > h {
            return Err(Error::invalid(format!("bad endpoints ({h},{d})")));
        }
        if symmetric && h != 2 * d {
            return Err(Error::invalid(format!("symmetric poset needs h = 2d, got ({h},{d})")));
        }
        let mut elements: Vec<NewtonPolygon> = NewtonPolygon::enumerate(h, d);
        if symmetric {
            elements.retain(|x| x.is_symmetric());
        }
        let count = |x: &NewtonPolygon| {
            if symmetric {
                x.sdim().expect("symmetric element")
            } else {
                x.dim_count()
            }
        };
        let mut keyed: Vec<(usize, String, NewtonPolygon)> =
            elements.into_iter().map(|x| (count(&x), x.to_string(), x)).collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let counts: Vec<usize> = keyed.iter().map(|k| k.0).collect();
        let elements: Vec<NewtonPolygon> = keyed.into_iter().map(|k| k.2).collect();

        let n = elements.len();
        let less: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| i != j && elements[i].precedes(&elements[j])).collect())
            .collect();
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if less[i][j] && !(0..n).any(|k| less[i][k] && less[k][j]) {
                    covers.push((i, j));
                }
            }
        }
        Ok(NpPoset {
            height: h,
            dim: d,
            symmetric,
            elements,
            covers,
            counts,
        })
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn elements(&self) -> &[NewtonPolygon] {
        &self.elements
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn index_of(&self, x: &NewtonPolygon) -> Option<usize> {
        self.elements.iter().position(|e| e == x)
    }

    /// `#◊(x)` (or `#△(x)`) for the element at `i`.
    pub fn region_count(&self, i: usize) -> usize {
        self.counts[i]
    }

    /// Rank normalized so that the minimum (the isoclinic polygon) has
    /// rank 0: the region count minus that of the minimum.
    pub fn rank(&self, i: usize) -> usize {
        self.counts[i] - self.counts[0]
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.elements.len()];
        for &(i, j) in &self.covers {
            succ[i].push(j);
        }
        succ
    }

    /// Shortest and longest cover-path lengths from `from` to every
    /// element (`None` when unreachable).
    fn path_lengths(&self, from: usize) -> Vec<Option<(usize, usize)>> {
        let succ = self.successors();
        let mut best: Vec<Option<(usize, usize)>> = vec![None; self.elements.len()];
        best[from] = Some((0, 0));
        // Elements are a linear extension, so one forward sweep suffices.
        for i in from..self.elements.len() {
            let Some((lo, hi)) = best[i] else { continue };
            for &j in &succ[i] {
                best[j] = Some(match best[j] {
                    None => (lo + 1, hi + 1),
                    Some((a, b)) => (a.min(lo + 1), b.max(hi + 1)),
                });
            }
        }
        best
    }

    /// Any two maximal chains between two comparable elements have the same
    /// length, checked for every pair.
    pub fn is_ranked(&self) -> bool {
        (0..self.elements.len()).all(|i| self.path_lengths(i).iter().flatten().all(|(lo, hi)| lo == hi))
    }

    /// Every cover raises the region count by exactly one.
    pub fn covers_match_counts(&self) -> bool {
        self.covers.iter().all(|&(i, j)| self.counts[j] == self.counts[i] + 1)
    }

    fn locate(&self, x: &NewtonPolygon) -> Result<usize> {
        self.index_of(x)
            .ok_or_else(|| Error::invalid(format!("{x} is not an element of this poset")))
    }

    /// A longest chain `from = x_0 ≺ x_1 ≺ … ≺ x_k = to` of covers.
    pub fn longest_chain(&self, from: &NewtonPolygon, to: &NewtonPolygon) -> Result<Vec<NewtonPolygon>> {
        let (a, b) = (self.locate(from)?, self.locate(to)?);
        if a != b && !from.precedes(to) {
            return Err(Error::Incomparable);
        }
        let succ = self.successors();
        // Longest path to b from each node, computed backwards.
        let mut dist: HashMap<usize, usize> = HashMap::from([(b, 0)]);
        let mut next: HashMap<usize, usize> = HashMap::new();
        for i in (a..b).rev() {
            if let Some((d, j)) = succ[i].iter().filter_map(|j| dist.get(j).map(|d| (d + 1, *j))).max() {
                dist.insert(i, d);
                next.insert(i, j);
            }
        }
        let mut chain = vec![self.elements[a].clone()];
        let mut cur = a;
        while cur != b {
            cur = next[&cur];
            chain.push(self.elements[cur].clone());
        }
        Ok(chain)
    }

    /// DOT digraph: nodes in rank order labeled by polygon and rank, edges
    /// are covers.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let kind = if self.symmetric { "symmetric" } else { "full" };
        writeln!(out, "digraph np_poset {{").unwrap();
        writeln!(out, "  // {} poset, h={}, d={}", kind, self.height, self.dim).unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        for (i, x) in self.elements.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{x}\\nrank {}\"];", self.rank(i)).unwrap();
        }
        for &(i, j) in &self.covers {
            writeln!(out, "  n{i} -> n{j};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// A saturated chain of covers from `gamma` up to `beta` in the poset of
/// all polygons with their endpoints, for `beta ≺ gamma`: the combinatorial
/// shadow of specializing `gamma` to `beta`. The chain starts at `gamma`.
pub fn specialization_witness(beta: &NewtonPolygon, gamma: &NewtonPolygon) -> Result<Vec<NewtonPolygon>> {
    if (beta.height(), beta.dim()) != (gamma.height(), gamma.dim()) || !beta.precedes(gamma) {
        return Err(Error::Incomparable);
    }
    let poset = NpPoset::build(beta.height(), beta.dim(), false)?;
    let mut chain = poset.longest_chain(beta, gamma)?;
    chain.reverse();
    Ok(chain)
}
