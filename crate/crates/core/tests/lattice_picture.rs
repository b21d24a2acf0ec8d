mod common;

use proptest::prelude::*;
use semibrick::lattice::TorsionLattice;
use semibrick::mutation::{validate_pair, Mutator, Outcome, SemibrickPair};
use semibrick::picture::{
    chains_equivalent, eliminate_torsion_generators, lattice_presentation, path_word, polygon_presentation, Generator,
    Word,
};
use semibrick::ModuleCategory;
use std::collections::BTreeSet;

fn id(c: &ModuleCategory, w: &str) -> usize {
    c.lookup(w).unwrap()
}

fn setup(name: &str) -> (ModuleCategory, TorsionLattice) {
    let c = common::category(name, 2);
    let l = TorsionLattice::build(&c).unwrap();
    (c, l)
}

#[test]
fn a2_torsion_classes() {
    let (c, l) = setup("a2");
    let (s1, s2, p1) = (id(&c, "e1"), id(&c, "e2"), id(&c, "a"));
    let expected: BTreeSet<BTreeSet<usize>> = [
        BTreeSet::new(),
        BTreeSet::from([s2]),
        BTreeSet::from([s1]),
        BTreeSet::from([s1, p1]),
        BTreeSet::from([s1, s2, p1]),
    ]
    .into();
    assert_eq!(l.classes.iter().cloned().collect::<BTreeSet<_>>(), expected);
    let top = l.top();
    let lower = l.index_of(&BTreeSet::from([s1, p1])).unwrap();
    let arrow = l.arrows.iter().find(|a| a.upper == top && a.lower == lower).unwrap();
    assert_eq!(arrow.label, s2);
    assert_eq!(setup("k1").1.len(), 2);
}

#[test]
fn arrows_into_zero_are_labelled_by_their_class() {
    for name in common::FIXTURES {
        let (c, l) = setup(name);
        for a in l.arrows.iter().filter(|a| a.lower == 0) {
            assert_eq!(l.semibricks[a.upper], BTreeSet::from([a.label]), "{name}");
            assert!(c.is_brick(a.label));
        }
    }
}

#[test]
fn collections_at_the_extremes() {
    let (c, l) = setup("a2");
    let simples = BTreeSet::from([id(&c, "e1"), id(&c, "e2")]);
    assert_eq!(l.smc(l.top()), SemibrickPair { positive: simples.clone(), negative: BTreeSet::new() });
    assert_eq!(l.smc(0), SemibrickPair { positive: BTreeSet::new(), negative: simples });
    let t = l.index_of(&BTreeSet::from([id(&c, "e1")])).unwrap();
    assert_eq!(l.smc(t).format(&c), "e1 / a");
}

#[test]
fn collections_are_full_pairs() {
    for name in common::FIXTURES {
        let (c, l) = setup(name);
        for smc in l.smcs() {
            assert_eq!(smc.size(), c.algebra().vertex_count(), "{name}");
            assert!(validate_pair(&c, &smc).is_ok(), "{name}");
        }
    }
}

#[test]
fn left_mutation_reaches_the_shifted_simples() {
    for name in common::FIXTURES {
        let (c, l) = setup(name);
        let m = Mutator::new(&c);
        let mut pair = l.smc(l.top());
        let mut steps = 0;
        while let Some(&s) = pair.positive.iter().next() {
            let Outcome::Mutated { pair: next } = m.left_mutate(&pair, s).unwrap() else { panic!("{name}") };
            pair = next;
            steps += 1;
            assert!(steps <= l.len(), "{name}");
        }
        assert_eq!(pair, l.smc(0), "{name}");
    }
}

#[test]
fn polygon_shapes() {
    let (c, l) = setup("a2");
    let polys = l.polygons().unwrap();
    assert_eq!(polys.len(), 1);
    assert_eq!((polys[0].top, polys[0].bottom), (l.top(), 0));
    let (s1, s2, p1) = (id(&c, "e1"), id(&c, "e2"), id(&c, "a"));
    assert_eq!((polys[0].left.clone(), polys[0].right.clone()), (vec![s1, s2], vec![s2, p1, s1]));
    for name in common::FIXTURES {
        let (c, l) = setup(name);
        for p in l.polygons().unwrap() {
            let (a, b) = (p.left[0], p.right[0]);
            assert_eq!((p.left.last(), p.right.last()), (Some(&b), Some(&a)), "{name}");
            let labels: BTreeSet<usize> = p.left.iter().chain(&p.right).copied().collect();
            assert_eq!(labels.len(), p.left.len() + p.right.len() - 2, "{name}: labels repeat");
            let filt = c.filt_indecomposables(&BTreeSet::from([a, b])).unwrap();
            let filt_bricks: BTreeSet<usize> = filt.into_iter().filter(|&x| c.is_brick(x)).collect();
            assert_eq!(labels, filt_bricks, "{name}");
            if c.ext(a, b) == 0 && c.ext(b, a) == 0 {
                assert_eq!((p.left.len(), p.right.len()), (2, 2), "{name}");
            }
        }
        let down_pairs: usize = (0..l.len()).map(|t| l.down_arrows(t).len()).map(|k| k * k.saturating_sub(1) / 2).sum();
        assert_eq!(l.polygons().unwrap().len(), down_pairs, "{name}");
    }
}

#[test]
fn presentation_sizes() {
    for name in common::FIXTURES {
        let (_, l) = setup(name);
        let a = polygon_presentation(&l).unwrap();
        assert_eq!(a.relations.len(), l.polygons().unwrap().len(), "{name}");
        assert!(a.relations.iter().all(|r| !r.left.0.is_empty() && !r.right.0.is_empty()));
        let b = lattice_presentation(&l);
        assert_eq!(b.relations.len(), l.arrows.len() + 1, "{name}");
        assert!(path_word(&l, 0).is_identity());
    }
    let (c, l) = setup("k1");
    let a = polygon_presentation(&l).unwrap();
    assert_eq!(a.generators, vec![Generator::Brick(id(&c, "e1"))]);
    assert!(a.relations.is_empty());
    let (c, l) = setup("a2");
    assert_eq!(path_word(&l, l.top()), Word::bricks(&[id(&c, "e1"), id(&c, "e2")]));
    assert_eq!(eliminate_torsion_generators(&l), polygon_presentation(&l).unwrap().relations);
}

#[test]
fn arrow_relations_follow_from_polygons() {
    for name in common::FIXTURES {
        let (_, l) = setup(name);
        for a in &l.arrows {
            let mut via = vec![a];
            via.extend(l.greedy_chain(a.lower));
            let greedy = l.greedy_chain(a.upper);
            assert!(chains_equivalent(&l, &greedy, &via).is_ok(), "{name}: T{} -> T{}", a.upper, a.lower);
        }
    }
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..3, prop::bool::ANY), 0..12)
        .prop_map(|v| Word(v.into_iter().map(|(g, pos)| (Generator::Brick(g), if pos { 1 } else { -1 })).collect()))
}

proptest! {
    #[test]
    fn reduction_is_idempotent_and_shortens(w in word()) {
        let r = w.reduced();
        prop_assert!(r.0.len() <= w.0.len());
        prop_assert_eq!(r.reduced(), r.clone());
        prop_assert_eq!(r.inverse().inverse(), r.clone());
        prop_assert!(w.concat(&w.inverse()).is_identity());
    }
}
