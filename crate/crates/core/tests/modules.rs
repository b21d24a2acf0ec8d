mod common;

use semibrick::error::Error;
use semibrick::rep::Representation;
use semibrick::strings::{is_representation_finite, Letter, StringWord};
use semibrick::{ModuleCategory, ModuleClass, MonomialAlgebra};
use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

fn id(c: &ModuleCategory, w: &str) -> usize {
    c.lookup(w).unwrap()
}

/// Every word up to `max` letters, filtered by validity and identified with
/// its inverse, found without the library's enumeration.
fn strings_by_search(alg: &MonomialAlgebra, max: usize) -> usize {
    let letters: Vec<Letter> = (0..alg.arrows().len())
        .flat_map(|a| [Letter { arrow: a, inverse: false }, Letter { arrow: a, inverse: true }])
        .collect();
    let mut seen: HashSet<StringWord> = HashSet::new();
    let mut frontier: Vec<StringWord> = (0..alg.vertex_count()).map(StringWord::constant).collect();
    for w in &frontier {
        seen.insert(w.clone());
    }
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                let mut x = w.clone();
                x.letters.push(l);
                if x.is_valid(alg) {
                    if !seen.contains(&x.inverse(alg)) {
                        seen.insert(x.clone());
                    }
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    seen.len()
}

#[test]
fn parsing_examples() {
    let a2 = common::algebra("a2");
    assert_eq!((a2.vertex_count(), a2.arrows().len(), a2.relations().len()), (2, 1, 0));
    let q1 = common::algebra("q1");
    assert_eq!((q1.vertex_count(), q1.arrows().len(), q1.relations().len()), (4, 3, 1));
    let e = MonomialAlgebra::parse("vertices 2\narrow a 1 2\nrelation a a\n").unwrap_err();
    assert!(matches!(e, Error::NotComposable { .. }));
}

#[test]
fn classification_examples() {
    let q1 = common::algebra("q1").classify();
    assert!(q1.is_gentle);
    assert_eq!(q1.max_vertex_degree, 3);
    assert_eq!(common::algebra("q1").vertex_degrees()[1], 3);
    assert!(common::algebra("nakayama3").classify().is_nakayama_like);
    let a3 = common::algebra("a3").classify();
    assert!(a3.is_gentle && a3.is_nakayama_like);
    assert_eq!(a3.max_vertex_degree, 2);
    let free_cycle = MonomialAlgebra::parse("vertices 3\narrow a 1 2\narrow b 2 3\narrow c 3 1\n");
    assert!(matches!(free_cycle, Err(Error::InfiniteDimensional { .. })));
    let kronecker = MonomialAlgebra::parse("vertices 2\narrow a 1 2\narrow b 1 2\n").unwrap();
    assert!(!is_representation_finite(&kronecker).unwrap());
    assert!(is_representation_finite(&common::algebra("q1")).unwrap());
    assert!(is_representation_finite(&common::algebra("a2")).unwrap());
}

#[test]
fn string_catalogs_match_search() {
    for name in common::FIXTURES {
        let c = common::category(name, 2);
        assert_eq!(c.len(), strings_by_search(c.algebra(), 2 * c.max_length()), "{name}");
    }
    assert_eq!(common::category("a2", 2).len(), 3);
    assert_eq!(common::category("q1", 2).len(), 9);
    let n3 = common::category("nakayama3", 2);
    assert_eq!(n3.dim_vector(id(&n3, "~c.b")), &[1, 1, 1]);
}

#[test]
fn string_module_examples() {
    let q1 = common::category("q1", 2);
    assert_eq!(q1.dim_vector(id(&q1, "g4")), &[0, 1, 0, 1]);
    assert_eq!(q1.dim_vector(id(&q1, "g1.g2")), &[1, 1, 1, 0]);
    let a2 = common::category("a2", 2);
    let s1 = a2.module(id(&a2, "e1"));
    assert_eq!(s1.dims(), &[1, 0]);
    assert!(s1.map(0).is_zero());
    for name in common::FIXTURES {
        let c = common::category(name, 3);
        let alg = c.algebra();
        for w in c.strings() {
            let m = w.module(alg, 3);
            assert!(c.iso_test(&m, &w.inverse(alg).module(alg, 3)).unwrap());
        }
    }
}

#[test]
fn iso_and_decomposition_examples() {
    let a2 = common::category("a2", 2);
    let alg = a2.algebra();
    let (s1, s2) = (a2.module(id(&a2, "e1")), a2.module(id(&a2, "e2")));
    assert!(a2.iso_test(s1, s1).unwrap());
    assert!(!a2.iso_test(s1, s2).unwrap());
    assert_eq!(a2.decompose(&Representation::zero(alg, 2)).unwrap(), ModuleClass::zero());
    let sum = Representation::direct_sum(alg, 2, &[s1, s2]);
    assert_eq!(a2.decompose(&sum).unwrap(), ModuleClass::new(vec![id(&a2, "e1"), id(&a2, "e2")]));
    let middles = a2.ext_middle_terms_ids(id(&a2, "e1"), id(&a2, "e2")).unwrap();
    assert_eq!(middles, BTreeSet::from([ModuleClass::single(id(&a2, "a"))]));
}

#[test]
fn hom_and_ext_examples() {
    let q1 = common::category("q1", 2);
    let (s1, p, x, y) = (id(&q1, "e1"), id(&q1, "g1.g2"), id(&q1, "g2"), id(&q1, "g4"));
    assert_eq!(q1.hom(p, s1), 1);
    assert_eq!(q1.hom(x, y), 1);
    let f = &q1.hom_basis(q1.module(x), q1.module(y))[0];
    assert!(!f.is_injective() && !f.is_surjective());
    assert_eq!(q1.ext(s1, p), 0);
    assert_eq!(q1.ext(y, p), 0);
    let a2 = common::category("a2", 2);
    assert_eq!(a2.ext(id(&a2, "e1"), id(&a2, "e2")), 1);
    assert_eq!(a2.ext_middle_terms_ids(id(&a2, "e2"), id(&a2, "e1")).unwrap(), BTreeSet::new());
}

#[test]
fn brick_examples() {
    let q1 = common::category("q1", 2);
    for b in q1.bricks().unwrap() {
        assert_eq!(q1.hom(b, b), 1);
    }
    assert!(q1.is_semibrick(&[id(&q1, "e1"), id(&q1, "g4")]));
    let a2 = common::category("a2", 2);
    let s = a2.module(id(&a2, "e1"));
    let ss = Representation::direct_sum(a2.algebra(), 2, &[s, s]);
    assert!(a2.hom_dim_reps(&ss, &ss) >= 2);
    let n3 = common::category("nakayama3", 2);
    let disk = semibrick::arc::DiskModel::build(&n3).unwrap();
    for i in 1..=disk.n {
        for j in 1..=disk.length(i) {
            assert_eq!(n3.is_brick(disk.module(i, j).unwrap()), j <= disk.n, "M({i}, {j})");
        }
    }
}

#[test]
fn filtration_examples() {
    let a2 = common::category("a2", 2);
    let (s1, s2, p1) = (id(&a2, "e1"), id(&a2, "e2"), id(&a2, "a"));
    assert_eq!(a2.filt_indecomposables(&BTreeSet::from([s1])).unwrap(), BTreeSet::from([s1]));
    assert!(a2.filt_indecomposables(&BTreeSet::from([s1, s2])).unwrap().contains(&p1));
    let cyc = common::category("nakayama_cycle2", 2);
    let stretched: Vec<usize> = cyc.bricks().unwrap().into_iter().filter(|&b| cyc.ext(b, b) > 0).collect();
    assert!(!stretched.is_empty());
    for b in stretched {
        assert!(cyc.filt_indecomposables(&BTreeSet::from([b])).unwrap().len() > 1);
    }
    let all: BTreeSet<usize> = (0..a2.len()).collect();
    assert_eq!(a2.filt_fac(&BTreeSet::from([s1, s2])).unwrap(), all);
    assert_eq!(a2.filt_fac(&BTreeSet::new()).unwrap(), BTreeSet::new());
    assert_eq!(a2.filt_fac(&BTreeSet::from([s1])).unwrap(), BTreeSet::from([s1]));
}

#[test]
fn approximation_examples() {
    let q1 = common::category("q1", 2);
    let (s1, p, x, y) = (id(&q1, "e1"), id(&q1, "g1.g2"), id(&q1, "g2"), id(&q1, "g4"));
    let a = q1.left_min_approx(q1.module(p), &BTreeSet::from([s1])).unwrap();
    assert!(a.is_epi() && !a.is_mono());
    assert_eq!(a.class, ModuleClass::single(s1));
    let b = q1.left_min_approx(q1.module(x), &BTreeSet::from([y])).unwrap();
    assert!(!b.is_epi() && !b.is_mono());
    assert_eq!(b.class, ModuleClass::single(y));
    let z = q1.left_min_approx(q1.module(s1), &BTreeSet::from([id(&q1, "e3")])).unwrap();
    assert!(z.class.is_zero());
}

#[test]
fn field_does_not_change_the_catalog() {
    for name in ["a3", "q1", "nakayama3"] {
        let (c2, c5) = (common::category(name, 2), common::category(name, 5));
        assert_eq!(c2.strings(), c5.strings());
        assert_eq!(c2.bricks().unwrap(), c5.bricks().unwrap());
    }
    assert!(ModuleCategory::new(Arc::new(MonomialAlgebra::parse("vertices 1\n").unwrap()), 4).is_err());
}
