use std::collections::BTreeMap;
use std::sync::Arc;

use isocrystal_lab::arith::{rat, Q};
use isocrystal_lab::dieudonne::{
    a_number, dualize, gmn_module, np_of_display, np_sigma_trivial, DieudonnePresentation, DisplayNormalForm, Matrix,
};
use isocrystal_lab::witt::{Valuation, WittContext};
use num_integer::Integer;
use proptest::prelude::*;

fn coprime_pairs(max_h: u32) -> Vec<(u32, u32)> {
    (1..=max_h)
        .flat_map(|h| (0..=h).map(move |m| (m, h - m)))
        .filter(|&(m, n)| m.gcd(&n) == 1)
        .collect()
}

fn block_diag(ctx: &WittContext, blocks: &[&Matrix]) -> Matrix {
    let h: usize = blocks.iter().map(|b| b.len()).sum();
    let mut out = vec![vec![ctx.zero_lift(); h]; h];
    let mut at = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                out[at + i][at + j] = x.clone();
            }
        }
        at += b.len();
    }
    out
}

fn slopes_of(ctx: &WittContext, pres: &DieudonnePresentation) -> Vec<Q> {
    np_sigma_trivial(ctx, pres.f_matrix()).unwrap().slopes()
}

fn flipped(s: &[Q]) -> Vec<Q> {
    s.iter().rev().map(|b| rat(1, 1) - b).collect()
}

#[test]
fn dual_complements_slopes_of_sums() {
    let ctx = Arc::new(WittContext::new(3, 1, 10).unwrap());
    let pairs = coprime_pairs(4);
    for &(m1, n1) in &pairs {
        for &(m2, n2) in &pairs {
            if m1 + n1 + m2 + n2 > 6 {
                continue;
            }
            let a = gmn_module(m1, n1, ctx.clone()).unwrap();
            let b = gmn_module(m2, n2, ctx.clone()).unwrap();
            let f = block_diag(&ctx, &[a.f_matrix(), b.f_matrix()]);
            let v = block_diag(&ctx, &[a.v_matrix().unwrap(), b.v_matrix().unwrap()]);
            let sum = DieudonnePresentation::new(ctx.clone(), f, Some(v)).unwrap();
            let dual = dualize(&sum).unwrap();
            assert_eq!(
                slopes_of(&ctx, &dual),
                flipped(&slopes_of(&ctx, &sum)),
                "({m1},{n1})+({m2},{n2})"
            );
            assert_eq!(dual.dim(), Some(n1 + n2));
        }
    }
}

#[test]
fn a_number_of_gmn() {
    for p in [2, 3] {
        let ctx = Arc::new(WittContext::new(p, 1, 12).unwrap());
        for (m, n) in coprime_pairs(10) {
            let h = m + n;
            // Basis vectors e_i with i < h not reached as e_{k+m} or e_{k+n}.
            let oracle = (0..h).filter(|&i| i < m && i < n).count() as u32;
            let g = gmn_module(m, n, ctx.clone()).unwrap();
            assert_eq!(a_number(&g).unwrap(), oracle, "G_{{{m},{n}}}");
        }
    }
}

fn display() -> impl Strategy<Value = (DisplayNormalForm, u32)> {
    (prop::sample::select(vec![2u64, 3]), 1u32..3, 2u32..7).prop_flat_map(|(p, deg, h)| {
        (1..=h, prop::collection::vec((any::<u64>(), any::<u64>()), 64)).prop_map(move |(s, seeds)| {
            let ctx = Arc::new(WittContext::new(p, deg, 8).unwrap());
            let f = ctx.field();
            let mut entries = BTreeMap::new();
            let mut k = 0;
            for i in 1..=s {
                for j in s..=h {
                    let (a, b) = seeds[k % seeds.len()];
                    k += 1;
                    let mut c0 = a % f.order();
                    if (i, j) == (1, h) && c0 == 0 {
                        c0 = 1;
                    }
                    let coords = [f.element(c0), f.element(b % f.order())];
                    entries.insert((i, j), ctx.from_witt_coordinates(&coords));
                }
            }
            (DisplayNormalForm::new(ctx, h, s, entries).unwrap(), s)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `v(det F)` is the dimension read off the polygon, `h − s`.
    #[test]
    fn det_valuation_is_polygon_dimension((dnf, s) in display()) {
        let h = dnf.height();
        let pres = DieudonnePresentation::new(dnf.context().clone(), dnf.matrix(), None).unwrap();
        prop_assert_eq!(pres.det_valuation(), Valuation::Finite(h - s));
        if let Ok(np) = np_of_display(&dnf) {
            prop_assert_eq!((np.height(), np.dim()), (h, h - s));
        }
    }
}
