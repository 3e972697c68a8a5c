mod common;

use std::collections::BTreeSet;

use isocrystal_lab::np::NewtonPolygon;
use isocrystal_lab::poset::NpPoset;

#[test]
fn covers_are_shortcut_free_relations() {
    for h in 1..=7 {
        for d in 0..=h {
            let poset = NpPoset::build(h, d, false).unwrap();
            let el = poset.elements();
            let mut covered = BTreeSet::new();
            for &(i, j) in poset.covers() {
                assert!(common::precedes(&el[i], &el[j]) && i != j);
                assert!(!el
                    .iter()
                    .any(|z| z != &el[i] && z != &el[j] && common::precedes(&el[i], z) && common::precedes(z, &el[j])));
                covered.insert((i, j));
            }
            // Every oracle cover appears.
            for (i, a) in el.iter().enumerate() {
                for (j, b) in el.iter().enumerate() {
                    let cover = i != j
                        && common::precedes(a, b)
                        && !el
                            .iter()
                            .any(|z| z != a && z != b && common::precedes(a, z) && common::precedes(z, b));
                    assert_eq!(cover, covered.contains(&(i, j)));
                }
            }
        }
    }
}

#[test]
fn duality_is_an_order_isomorphism() {
    for h in 1..=7 {
        for d in 0..=h {
            let poset = NpPoset::build(h, d, false).unwrap();
            let dual = NpPoset::build(h, h - d, false).unwrap();
            assert_eq!(poset.elements().len(), dual.elements().len());
            let map = |x: &NewtonPolygon| dual.index_of(&x.dual()).unwrap();
            let covers: BTreeSet<_> = dual.covers().iter().copied().collect();
            for &(i, j) in poset.covers() {
                assert!(covers.contains(&(map(&poset.elements()[i]), map(&poset.elements()[j]))));
            }
            assert_eq!(poset.covers().len(), dual.covers().len());
        }
    }
}

#[test]
fn symmetric_posets_are_ranked() {
    for g in 1..=5 {
        let poset = NpPoset::build(2 * g, g, true).unwrap();
        assert!(poset.is_ranked(), "g = {g}");
        assert!(poset.covers_match_counts());
        assert!(poset.elements().iter().all(NewtonPolygon::is_symmetric));
    }
}

#[test]
fn dot_output() {
    let dot = NpPoset::build(2, 1, false).unwrap().to_dot();
    assert_eq!(dot.matches("[label=").count(), 2);
    assert_eq!(dot.matches(" -> ").count(), 1);
    let big = NpPoset::build(6, 3, false).unwrap();
    let dot = big.to_dot();
    assert_eq!(dot, NpPoset::build(6, 3, false).unwrap().to_dot());
    let ids: Vec<&str> = dot
        .lines()
        .filter(|l| l.contains("[label="))
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    let unique: BTreeSet<_> = ids.iter().collect();
    assert_eq!(ids.len(), unique.len());
    assert_eq!(ids.len(), big.elements().len());
}

#[test]
fn rejects_bad_endpoints() {
    assert!(NpPoset::build(0, 0, false).is_err());
    assert!(NpPoset::build(3, 4, false).is_err());
    assert!(NpPoset::build(5, 2, true).is_err());
}
