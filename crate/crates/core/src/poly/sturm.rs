use num_traits::{Signed, Zero};

use super::QPoly;
use crate::arith::Q;

/// Sturm sequence of the squarefree part of `f`.
pub fn sturm_sequence(f: &QPoly) -> Vec<QPoly> {
    let f0 = f.squarefree_part();
    let mut seq = vec![f0.clone(), f0.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    seq
}

fn sign_changes(seq: &[QPoly], x: &Q) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `f` in the half-open interval `[a, b)`.
pub fn count_real_roots(f: &QPoly, a: &Q, b: &Q) -> usize {
    if a >= b || f.is_zero() {
        return 0;
    }
    let seq = sturm_sequence(f);
    let base = seq[0].clone();
    // Sturm counts roots in (a, b].
    let mut count = sign_changes(&seq, a) - sign_changes(&seq, b);
    if base.eval(a).is_zero() {
        count += 1;
    }
    if base.eval(b).is_zero() {
        count -= 1;
    }
    count
}
