use std::sync::Arc;

use isocrystal_lab::cartier::{CartierContext, CartierElement};
use isocrystal_lab::witt::{Valuation, WittContext, WittElement};
use proptest::prelude::*;

fn context() -> impl Strategy<Value = Arc<WittContext>> {
    (prop::sample::select(vec![2u64, 3, 5]), 1u32..4, 2u32..7)
        .prop_map(|(p, m, n)| Arc::new(WittContext::new(p, m, n).unwrap()))
}

fn element(ctx: &Arc<WittContext>, seed: &[u64]) -> WittElement {
    let q = ctx.field().order();
    let coords: Vec<_> = (0..ctx.precision() as usize)
        .map(|i| ctx.field().element(seed[i % seed.len()] % q))
        .collect();
    WittElement::from_coordinates(ctx, &coords)
}

proptest! {
    #[test]
    fn ring_axioms_and_sigma(ctx in context(), s in prop::collection::vec(any::<u64>(), 3..9)) {
        let x = element(&ctx, &s[0..]);
        let y = element(&ctx, &s[1..]);
        let z = element(&ctx, &s[2..]);
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y.add(&z).unwrap()).unwrap(), x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().sigma(), x.sigma().mul(&y.sigma()).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().sigma(), x.sigma().add(&y.sigma()).unwrap());
        prop_assert_eq!(x.sigma().sigma_inv(), x.clone());
        let mut t = x.clone();
        for _ in 0..ctx.degree() {
            t = t.sigma();
        }
        prop_assert_eq!(&t, &x);
        // σ lifts the p-power map.
        let f = ctx.field();
        prop_assert_eq!(ctx.residue(x.sigma().lift()), f.pow(&ctx.residue(x.lift()), ctx.p() as u128));
        prop_assert_eq!(WittElement::from_coordinates(&ctx, &x.coordinates()), x);
    }

    #[test]
    fn valuation_is_additive(ctx in context(), s in prop::collection::vec(any::<u64>(), 2..6), i in 0u32..3, j in 0u32..3) {
        let n = ctx.precision();
        let shift = |w: WittElement, k: u32| (0..k).fold(w, |acc, _| acc.verschiebung().sigma());
        let x = shift(element(&ctx, &s[0..]), i);
        let y = shift(element(&ctx, &s[1..]), j);
        if let (Valuation::Finite(a), Valuation::Finite(b)) = (x.valuation(), y.valuation()) {
            if 2 * a < n && 2 * b < n {
                prop_assert_eq!(x.mul(&y).unwrap().valuation(), Valuation::Finite(a + b));
            }
        }
    }

    #[test]
    fn teichmuller_is_multiplicative(ctx in context(), a in any::<u64>(), b in any::<u64>()) {
        let f = ctx.field();
        let (a, b) = (f.element(a % f.order()), f.element(b % f.order()));
        let prod = WittElement::teichmuller(&ctx, &a).mul(&WittElement::teichmuller(&ctx, &b)).unwrap();
        prop_assert_eq!(prod, WittElement::teichmuller(&ctx, &f.mul(&a, &b)));
    }

    /// The product in the Cartier ring acts as the composite.
    #[test]
    fn action_is_a_module_structure(p in prop::sample::select(vec![2u64, 3]), m in 1u32..3,
                                    terms in prop::collection::vec((0u32..3, 1u64..9, 0u32..3), 1..4),
                                    terms2 in prop::collection::vec((0u32..3, 1u64..9, 0u32..3), 1..4),
                                    seed in prop::collection::vec(any::<u64>(), 4)) {
        let ctx = CartierContext::new(p, m, 5).unwrap();
        let wctx = Arc::new(WittContext::new(p, m, 5).unwrap());
        let f = ctx.field();
        let build = |ts: &[(u32, u64, u32)]| {
            let raw: Vec<_> = ts.iter().map(|&(a, c, b)| (a, f.element(c % f.order()), b)).collect();
            CartierElement::normalize(&ctx, &raw)
        };
        let (x, y) = (build(&terms), build(&terms2));
        let w = element(&wctx, &seed);
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(xy.act(&w).unwrap(), x.act(&y.act(&w).unwrap()).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().act(&w).unwrap(), x.act(&w).unwrap().add(&y.act(&w).unwrap()).unwrap());
    }
}

/// Distinct monomials `V^a⟨c⟩F^b` with `a < N` and `b < m` act differently
/// on the Teichmüller lifts of `1` and of the field generator.
#[test]
fn action_separates_monomials() {
    for (p, m) in [(2u64, 2u32), (3, 2), (2, 3)] {
        let n = 4;
        let ctx = CartierContext::new(p, m, n).unwrap();
        let wctx = Arc::new(WittContext::new(p, m, n).unwrap());
        let f = ctx.field();
        let probes: Vec<WittElement> = [f.one(), f.element(p)]
            .iter()
            .map(|c| WittElement::teichmuller(&wctx, c))
            .collect();
        let mut seen = std::collections::HashMap::new();
        for a in 0..n {
            for b in 0..m {
                for c in f.elements().filter(|c| !f.is_zero(c)) {
                    let x = CartierElement::monomial(&ctx, a, &c, b);
                    let sig: Vec<Vec<u64>> = probes.iter().map(|w| x.act(w).unwrap().lift().clone()).collect();
                    if let Some(prev) = seen.insert(sig, x.to_string()) {
                        panic!("{x} and {prev} act identically over F_{}", f.order());
                    }
                }
            }
        }
    }
}

#[test]
fn documented_examples() {
    use isocrystal_lab::witt::ghost;
    use num_bigint::BigInt;
    assert_eq!(ghost(&[1, 1].map(BigInt::from), 2), [1, 3].map(BigInt::from));
    // 1 + 1 over F_2 at N = 3 is 2, of valuation 1.
    let ctx = Arc::new(WittContext::new(2, 1, 3).unwrap());
    let one = WittElement::one(&ctx);
    assert_eq!(one.add(&one).unwrap().valuation(), Valuation::Finite(1));
    assert_eq!(WittElement::zero(&ctx).valuation(), Valuation::AtLeast(3));
    // σ is the identity over F_p.
    let x = WittElement::from_coordinates(&ctx, &[ctx.field().one(), ctx.field().one()]);
    assert_eq!(x.sigma(), x);
}
