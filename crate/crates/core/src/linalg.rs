//! Integer Smith normal form and rank over finite fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::field::{FiniteField, Fq};

/// Nonzero invariant factors `d_1 | d_2 | …` of an integer matrix, each
/// positive, in divisibility order.
pub fn smith_invariants(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue; // a smaller remainder now exists; pick it as pivot
        }
        // Enforce divisibility of the rest by the pivot.
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
        if let Some((i, _)) = bad {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Rank of a matrix over a finite field by row reduction.
pub fn rank_over(field: &FiniteField, matrix: &[Vec<Fq>]) -> usize {
    let mut a: Vec<Vec<Fq>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !field.is_zero(&a[r][c])) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = field.inv(&a[rank][c]).expect("nonzero pivot");
        for r in 0..rows {
            if r != rank && !field.is_zero(&a[r][c]) {
                let factor = field.mul(&a[r][c], &inv);
                for j in c..cols {
                    let v = field.mul(&factor, &a[rank][j]);
                    a[r][j] = field.sub(&a[r][j], &v);
                }
            }
        }
        rank += 1;
    }
    rank
}
