//! Acceptance criteria 1 to 7. Every check is exact: zero discrepancies,
//! exact integer coefficients, exact set equality.

mod common;

use num_bigint::BigInt;
use semibrick::arc::{cross_validate, DiskModel};
use semibrick::hall::{check_hall_lemma, verify_distinctness, verify_relations, HallAlgebra};
use semibrick::lattice::{all_semibricks, TorsionLattice};
use semibrick::mutation::{all_semibrick_pairs, completable_set, pairwise_property, Mutator, Outcome, SemibrickPair};
use semibrick::rep::{for_each_combination, Morphism};
use semibrick::{ModuleCategory, ModuleClass};
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: semibrick::Error) -> String {
    e.to_string()
}

fn criterion_1() -> Verdict {
    let c = common::category("q1", 2);
    let m = Mutator::new(&c);
    let pair = SemibrickPair::parse(&c, "e1, g4 / g1.g2").map_err(err)?;
    let v = m.is_mutation_compatible(&pair).map_err(err)?;
    ensure(!v.compatible, || "the pair is reported completable".into())?;
    let items: Vec<(usize, bool)> =
        pair.positive.iter().map(|&i| (i, true)).chain(pair.negative.iter().map(|&i| (i, false))).collect();
    for skip in 0..items.len() {
        let mut sub = SemibrickPair::default();
        for (k, &(i, pos)) in items.iter().enumerate() {
            if k != skip {
                if pos {
                    sub.positive.insert(i);
                } else {
                    sub.negative.insert(i);
                }
            }
        }
        let ok = m.is_mutation_compatible(&sub).map_err(err)?.compatible;
        ensure(ok, || format!("subpair {} is not completable", sub.format(&c)))?;
    }
    let first = v.trace.first().ok_or("empty trace")?;
    ensure(c.name(first.at) == "e1" && first.to.format(&c) == "g4 / e1, g2", || {
        format!("first step {} at {}", first.to.format(&c), c.name(first.at))
    })?;
    let (at_pair, obs) = v.obstruction.clone().ok_or("no obstruction recorded")?;
    ensure(
        at_pair == first.to
            && c.name(obs.brick) == "g2"
            && obs.approximation == ModuleClass::single(c.lookup("g4").map_err(err)?),
        || format!("obstruction {}", obs.describe(&c, true)),
    )?;
    Ok(format!("{}; {}", pair.format(&c), obs.describe(&c, true)))
}

fn criterion_2() -> Verdict {
    let mut total = 0;
    for name in common::FIXTURES {
        let c = common::category(name, 2);
        let lattice = TorsionLattice::build(&c).map_err(err)?;
        let completable = completable_set(&lattice.smcs());
        let m = Mutator::new(&c);
        for pair in all_semibrick_pairs(&c).map_err(err)? {
            let v = m.is_mutation_compatible(&pair).map_err(err)?;
            let in_smc = completable.contains(&pair);
            ensure(v.compatible == in_smc, || {
                format!("{name}: {} mutation {} lattice {in_smc}", pair.format(&c), v.compatible)
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} semibrick pairs over {} fixtures, 0 discrepancies", common::FIXTURES.len()))
}

/// Subsets of indecomposables closed under indecomposable quotients and
/// under middle terms of extensions between members, by direct search.
fn torsion_classes_by_search(c: &ModuleCategory) -> usize {
    let n = c.len();
    let quotient = |x: usize, y: usize| -> bool {
        let (mx, my) = (c.module(x), c.module(y));
        let basis = c.hom_basis(mx, my);
        for_each_combination(basis.len(), c.p(), |k| Morphism::combination(&basis, k, mx, my).is_surjective())
    };
    let q: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| quotient(x, y)).collect()).collect();
    let e: Vec<Vec<BTreeSet<ModuleClass>>> =
        (0..n).map(|x| (0..n).map(|z| c.ext_middle_terms_ids(x, z).unwrap()).collect()).collect();
    let mut count = 0;
    for mask in 0u64..(1 << n) {
        let has = |i: usize| mask & (1 << i) != 0;
        let closed = (0..n).filter(|&x| has(x)).all(|x| {
            (0..n).all(|y| !q[x][y] || has(y))
                && (0..n).filter(|&z| has(z)).all(|z| e[x][z].iter().all(|m| m.ids().iter().all(|&i| has(i))))
        });
        count += usize::from(closed);
    }
    count
}

fn criterion_3() -> Verdict {
    let mut rows = Vec::new();
    for name in common::FIXTURES {
        let c = common::category(name, 2);
        let semis = all_semibricks(&c).map_err(err)?.len();
        let lattice = TorsionLattice::build(&c).map_err(err)?;
        let smcs = lattice.smcs();
        let by_mutation = Mutator::new(&c).smcs_by_mutation().map_err(err)?;
        ensure(semis == lattice.len() && semis == smcs.len() && smcs == by_mutation, || {
            format!("{name}: {semis} semibricks, {} classes, {} collections", lattice.len(), smcs.len())
        })?;
        if c.len() <= 10 {
            let searched = torsion_classes_by_search(&c);
            ensure(searched == lattice.len(), || format!("{name}: search finds {searched} torsion classes"))?;
        }
        rows.push(format!("{name} {semis}"));
    }
    let a2 = common::category("a2", 2);
    ensure(TorsionLattice::build(&a2).map_err(err)?.len() == 5, || "A2 does not give 5".into())?;
    Ok(rows.join(", "))
}

fn criterion_4() -> Verdict {
    let expect = [
        ("a3", true, None),
        ("nakayama3", true, None),
        ("q1", false, Some("e1, g4 / g1.g2")),
        ("q2", false, None),
        ("q1cycle", true, None),
        ("q2cycle", false, Some("e4, b / g1.g2.g3")),
    ];
    let mut out = Vec::new();
    for (name, holds, witness) in expect {
        let c = common::category(name, 2);
        let r = pairwise_property(&c, &TorsionLattice::build(&c).map_err(err)?.smcs()).map_err(err)?;
        ensure(r.holds == holds, || format!("{name}: holds = {}", r.holds))?;
        if let Some(w) = witness {
            let w = SemibrickPair::parse(&c, w).map_err(err)?;
            ensure(r.witnesses.contains(&w), || format!("{name}: witness {} missing", w.format(&c)))?;
        }
        out.push(format!("{name} {}", if r.holds { "holds" } else { "fails" }));
    }
    Ok(out.join(", "))
}

fn criterion_5() -> Verdict {
    let mut pairs = 0;
    for name in common::FIXTURES {
        let c = common::category(name, 2);
        if !c.algebra().is_nakayama_like() {
            continue;
        }
        let r = cross_validate(&c).map_err(err)?;
        ensure(r.passed(), || format!("{name}: {} mismatches, max ext {}", r.mismatches.len(), r.max_ext_dim))?;
        pairs += r.pairs;
    }
    let c = common::category("nakayama3", 2);
    let disk = DiskModel::build(&c).map_err(err)?;
    ensure(disk.n == 3 && disk.lengths == vec![2, 4, 3], || format!("disk {} {:?}", disk.n, disk.lengths))?;
    for (j, word) in [(1, "e3"), (2, "~c"), (3, "~c.b")] {
        let id = c.lookup(word).map_err(err)?;
        ensure(disk.module(3, j) == Some(id), || format!("M(3,{j}) is not {word}"))?;
    }
    Ok(format!("{pairs} ordered brick pairs agree; example disk n = 3, l = (2, 4, 3)"))
}

fn criterion_6() -> Verdict {
    let a2 = common::category("a2", 2);
    let h = HallAlgebra::new(&a2);
    let (s1, p1) = (a2.lookup("e1").map_err(err)?, a2.lookup("a").map_err(err)?);
    let psi = h
        .hall_polynomial(&ModuleClass::single(s1), &ModuleClass::single(p1), &ModuleClass::new(vec![s1, p1]))
        .map_err(err)?;
    ensure(psi.coefficients == vec![BigInt::from(0), BigInt::from(1)], || format!("psi = {}", psi.format()))?;
    let (mut polys, mut relations, mut lemma_pairs) = (0, 0, 0);
    for name in common::FIXTURES {
        let c = common::category(name, 2);
        let lattice = TorsionLattice::build(&c).map_err(err)?;
        let h = HallAlgebra::new(&c);
        let d = 2 * c.max_length();
        let rel = verify_relations(&h, &lattice, d).map_err(err)?;
        if rel.hypotheses_hold {
            ensure(rel.failures == 0, || format!("{name}: {} relations fail at D = {d}", rel.failures))?;
            relations += rel.relations.len();
        }
        let dist = verify_distinctness(&h, &lattice, d).map_err(err)?;
        ensure(dist.generators_distinct && dist.torsion_words_distinct, || format!("{name}: distinctness fails"))?;
        let lemma = check_hall_lemma(&c).map_err(err)?;
        ensure(lemma.holds(), || format!("{name}: lemma fails {lemma:?}"))?;
        lemma_pairs += lemma.pairs;
        for p in h.polynomials() {
            ensure(!p.held_out.is_empty(), || format!("{name}: a polynomial was not confirmed"))?;
            for &(q, count) in p.samples.iter().chain(&p.held_out) {
                ensure(p.eval(&BigInt::from(q)) == BigInt::from(count), || format!("{name}: sample at {q}"))?;
            }
        }
        polys += h.polynomials().len();
    }
    Ok(format!(
        "psi = {}; {polys} polynomials reproduce held-out primes; {lemma_pairs} lemma pairs; {relations} relations hold",
        psi.format()
    ))
}

fn criterion_7() -> Verdict {
    let (mut inverses, mut steps, mut arrows, mut polygons, mut pairs) = (0, 0, 0, 0, 0);
    for name in common::FIXTURES {
        let c = common::category(name, 2);
        let m = Mutator::new(&c);
        for pair in all_semibrick_pairs(&c).map_err(err)? {
            for &s in &pair.positive {
                if let Outcome::Mutated { pair: next } = m.left_mutate(&pair, s).map_err(err)? {
                    let Outcome::Mutated { pair: back } = m.right_mutate(&next, s).map_err(err)? else {
                        return Err(format!("{name}: right mutation of {} blocked", next.format(&c)));
                    };
                    ensure(back == pair, || format!("{name}: inverse law fails at {}", pair.format(&c)))?;
                    inverses += 1;
                }
            }
            for step in m.is_mutation_compatible(&pair).map_err(err)?.trace {
                let before = c.filt_fac(&step.from.positive).map_err(err)?;
                let after = c.filt_fac(&step.to.positive).map_err(err)?;
                ensure(after.is_subset(&before) && after != before, || {
                    format!("{name}: no descent from {} to {}", step.from.format(&c), step.to.format(&c))
                })?;
                steps += 1;
            }
        }
        let lattice = TorsionLattice::build(&c).map_err(err)?;
        for a in &lattice.arrows {
            let oracle: Vec<usize> = lattice.classes[a.upper]
                .iter()
                .copied()
                .filter(|&b| c.is_brick(b) && lattice.classes[a.lower].iter().all(|&x| c.hom(x, b) == 0))
                .collect();
            ensure(oracle == vec![a.label], || format!("{name}: label of T{} -> T{}", a.upper, a.lower))?;
        }
        arrows += lattice.arrows.len();
        polygons += lattice.polygons().map_err(err)?.len();
        let c3 = common::category(name, 3);
        ensure(c.strings() == c3.strings(), || format!("{name}: catalogs differ"))?;
        for i in 0..c.len() {
            for j in 0..c.len() {
                ensure(c.hom(i, j) == c3.hom(i, j) && c.ext(i, j) == c3.ext(i, j), || {
                    format!("{name}: Hom or Ext of ({}, {}) depends on the field", c.name(i), c.name(j))
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{inverses} inverse pairs, {steps} descending steps, {arrows} labels, {polygons} polygons, {pairs} F2/F3 pairs"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("Q1 pair is not completable, subpairs are", criterion_1),
        ("mutation compatibility equals lattice completability", criterion_2),
        ("semibricks, torsion classes and collections are equinumerous", criterion_3),
        ("pairwise property verdicts", criterion_4),
        ("arc model agrees with linear algebra", criterion_5),
        ("Hall polynomials, lemma, relations and distinctness", criterion_6),
        ("structural invariants", criterion_7),
    ];
    let mut failed = Vec::new();
    for (k, (title, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(detail) => println!("criterion {}: PASS {title} ({detail}) [{:.2?}]", k + 1, t.elapsed()),
            Err(why) => {
                println!("criterion {}: FAIL {title} ({why}) [{:.2?}]", k + 1, t.elapsed());
                failed.push(k + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 7 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
