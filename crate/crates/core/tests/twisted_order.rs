//! Twisted order: lemma witnesses, degenerate cases, non-symmetry and
//! partial-order axioms.

use std::sync::Arc;

use bbatlas::catalog;
use bbatlas::twisted::lege_witness;
use bbatlas::{CoxeterGroup, GroupElement, NodeSet, TwistedContext};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group(name: &str) -> Arc<CoxeterGroup> {
    Arc::new(CoxeterGroup::new(catalog::named(name).unwrap()))
}

fn ball(g: &CoxeterGroup, len: usize) -> Vec<GroupElement> {
    g.enumerate_ball(len, 100_000).unwrap().elements
}

#[test]
fn lege_witness_exists_on_a3_samples() {
    let g = group("A3");
    let all = ball(&g, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut found = 0;
    while found < 100 {
        let x = all.choose(&mut rng).unwrap();
        let xp = all.choose(&mut rng).unwrap();
        let u = all.choose(&mut rng).unwrap();
        if !g.bruhat_leq(x, &g.multiply(xp, u)) {
            assert!(lege_witness(&g, x, xp, u).is_err());
            continue;
        }
        let v = lege_witness(&g, x, xp, u).unwrap().expect("the lemma guarantees a witness");
        assert!(g.bruhat_leq(&v, u));
        assert!(g.bruhat_leq(&g.multiply(x, &g.inverse(&v)), xp));
        found += 1;
    }
}

#[test]
fn empty_j_is_bruhat_order() {
    for name in ["A3", "B2", "affine-A1"] {
        let g = group(name);
        let t = TwistedContext::new(Arc::clone(&g), NodeSet::empty());
        let elements = ball(&g, 3);
        for a in &elements {
            assert_eq!(t.jlength(a), a.length() as i64);
            for b in &elements {
                assert_eq!(t.jleq(a, b), g.bruhat_leq(a, b));
                if g.bruhat_leq(a, b) {
                    let mut twisted = t.jinterval(a, b, 100_000).unwrap();
                    let mut bruhat = g.bruhat_interval(a, b);
                    g.sort_canonical(&mut twisted);
                    g.sort_canonical(&mut bruhat);
                    assert_eq!(twisted, bruhat);
                }
            }
        }
    }
}

#[test]
fn full_finite_j_reverses_bruhat_order() {
    let g = group("B2");
    let t = TwistedContext::new(Arc::clone(&g), g.all_nodes());
    let elements = ball(&g, 4);
    for a in &elements {
        assert_eq!(t.jlength(a), -(a.length() as i64));
        for b in &elements {
            assert_eq!(t.jleq(a, b), g.bruhat_leq(b, a));
        }
    }
}

/// `v <=_J w` does not imply `v^-1 <=_J w^-1`.
#[test]
fn twisted_order_is_not_inversion_symmetric() {
    for name in ["B2", "A3"] {
        let g = group(name);
        let elements = ball(&g, 4);
        let witness = NodeSet::all_subsets(g.rank()).find_map(|j| {
            let t = TwistedContext::new(Arc::clone(&g), j);
            elements.iter().find_map(|a| {
                elements
                    .iter()
                    .find(|b| t.jleq(a, b) && !t.jleq(&g.inverse(a), &g.inverse(b)))
                    .map(|b| (j, a.clone(), b.clone()))
            })
        });
        let (j, a, b) = witness.unwrap_or_else(|| panic!("{name}: no asymmetric pair"));
        assert!(!j.is_empty(), "J = {{}} is Bruhat order, which is symmetric");
        let t = TwistedContext::new(Arc::clone(&g), j);
        assert!(t.jleq_witness(&a, &b).is_some());
        assert!(t.jleq_witness(&g.inverse(&a), &g.inverse(&b)).is_none());
    }
}

#[test]
fn twisted_order_is_a_graded_partial_order() {
    let g = group("affine-A1");
    let elements = ball(&g, 4);
    for j in NodeSet::all_subsets(g.rank()) {
        let t = TwistedContext::new(Arc::clone(&g), j);
        for a in &elements {
            assert!(t.jleq(a, a));
            for b in &elements {
                if a != b && t.jleq(a, b) {
                    assert!(!t.jleq(b, a));
                    assert!(t.jlength(a) < t.jlength(b));
                    for c in &elements {
                        if t.jleq(b, c) {
                            assert!(t.jleq(a, c));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn interval_covers_change_length_by_one() {
    let g = group("A3");
    let j: NodeSet = [1].into_iter().collect();
    let t = TwistedContext::new(Arc::clone(&g), j);
    let elements = ball(&g, 4);
    let (a, b) = (&elements[0], elements.last().unwrap());
    let (lo, hi) = if t.jleq(a, b) { (a, b) } else { (b, a) };
    let (members, poset) = t.jcovers(lo, hi, 100_000).unwrap();
    assert!(members.len() > 2);
    for &(x, y) in poset.covers() {
        assert_eq!(t.jlength(&members[y]) - t.jlength(&members[x]), 1);
    }
    assert!(poset.is_thin().is_ok());
}
