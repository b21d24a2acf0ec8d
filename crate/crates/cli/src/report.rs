//! Reports for each command, rendered both as text and as JSON.

use crate::Failure;
use semibrick::arc::{cross_validate, DiskModel, Marker};
use semibrick::hall::{check_hall_lemma, verify_distinctness, verify_relations, HallAlgebra};
use semibrick::lattice::TorsionLattice;
use semibrick::mutation::{pairwise_property, validate_pair, Mutator, SemibrickPair};
use semibrick::picture::{eliminate_torsion_generators, polygon_presentation};
use semibrick::{Error, ModuleCategory, Result};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::fmt::Write as _;

pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }
}

fn names(cat: &ModuleCategory, ids: impl IntoIterator<Item = usize>) -> Vec<String> {
    ids.into_iter().map(|i| cat.name(i)).collect()
}

fn dims(v: &[usize]) -> String {
    v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn classify(cat: &ModuleCategory) -> Report {
    let class = cat.algebra().classify();
    let json = serde_json::to_value(&class).expect("classification serializes");
    let mut text = String::new();
    if let Value::Object(map) = &json {
        for (k, v) in map {
            let shown = match v {
                Value::Null => "unknown".to_string(),
                other => other.to_string(),
            };
            let _ = writeln!(text, "{} {shown}", k.replace('_', " "));
        }
    }
    Report::ok(text, json)
}

pub fn strings(cat: &ModuleCategory) -> Report {
    let mut text = String::new();
    let mut rows = Vec::new();
    for id in 0..cat.len() {
        let (name, dv, brick) = (cat.name(id), cat.dim_vector(id), cat.is_brick(id));
        let _ = writeln!(text, "{id} {name} dims {}{}", dims(dv), if brick { " brick" } else { "" });
        rows.push(json!({ "id": id, "word": name, "dims": dv, "brick": brick }));
    }
    let _ = writeln!(text, "{} strings", cat.len());
    Report::ok(text, json!({ "count": cat.len(), "strings": rows }))
}

pub fn bricks(cat: &ModuleCategory) -> Result<Report> {
    let bricks = cat.bricks()?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for &id in &bricks {
        let (name, dv) = (cat.name(id), cat.dim_vector(id));
        let _ = writeln!(text, "{id} {name} dims {}", dims(dv));
        rows.push(json!({ "id": id, "word": name, "dims": dv }));
    }
    let _ = writeln!(text, "{} bricks", bricks.len());
    Ok(Report::ok(text, json!({ "count": bricks.len(), "bricks": rows })))
}

pub fn check_pair(cat: &ModuleCategory, spec: &str) -> std::result::Result<Report, Failure> {
    let pair = SemibrickPair::parse(cat, spec)?;
    if let Err(v) = validate_pair(cat, &pair) {
        return Err(Failure::Usage(format!("not a semibrick pair: {}", v.describe(cat))));
    }
    let verdict = Mutator::new(cat).is_mutation_compatible(&pair)?;
    let lattice = TorsionLattice::build(cat)?;
    let in_smc = lattice.smcs().iter().any(|s| pair.is_subpair_of(s));
    if in_smc != verdict.compatible {
        return Err(
            Error::Invariant(format!("mutation says {} but the lattice says {}", verdict.compatible, in_smc)).into()
        );
    }
    let mut text = format!("pair {}\ncompletable {}\n", pair.format(cat), yes(verdict.compatible));
    let mut steps = Vec::new();
    for (k, s) in verdict.trace.iter().enumerate() {
        let (from, at, to) = (s.from.format(cat), cat.name(s.at), s.to.format(cat));
        let _ = writeln!(text, "step {}: mu+ at {at}: {from} -> {to}", k + 1);
        steps.push(json!({ "from": from, "at": at, "to": to }));
    }
    let obstruction = match &verdict.obstruction {
        Some((p, o)) => {
            let description = o.describe(cat, true);
            let _ = writeln!(text, "obstruction at {}: {description}", p.format(cat));
            json!({
                "pair": p.format(cat),
                "at": cat.name(o.at),
                "brick": cat.name(o.brick),
                "approximation": cat.describe(&o.approximation),
                "description": description,
            })
        }
        None => Value::Null,
    };
    Ok(Report::ok(
        text,
        json!({
            "pair": pair.format(cat),
            "completable": verdict.compatible,
            "trace": steps,
            "obstruction": obstruction,
        }),
    ))
}

pub fn pairwise(cat: &ModuleCategory) -> Result<Report> {
    let lattice = TorsionLattice::build(cat)?;
    let r = pairwise_property(cat, &lattice.smcs())?;
    let witnesses: Vec<String> = r.witnesses.iter().map(|w| w.format(cat)).collect();
    let mut text = format!("property {}\npairs checked {}\n", if r.holds { "holds" } else { "fails" }, r.pairs_checked);
    for w in &witnesses {
        let _ = writeln!(text, "witness {w}");
    }
    Ok(Report::ok(text, json!({ "holds": r.holds, "pairs_checked": r.pairs_checked, "witnesses": witnesses })))
}

pub fn tors(cat: &ModuleCategory) -> Result<(Report, String)> {
    let l = TorsionLattice::build(cat)?;
    let mut text = String::new();
    let mut classes = Vec::new();
    for (k, c) in l.classes.iter().enumerate() {
        let (modules, semibrick) = (names(cat, c.iter().copied()), names(cat, l.semibricks[k].iter().copied()));
        let _ = writeln!(text, "T{k} modules {{{}}} semibrick {{{}}}", modules.join(", "), semibrick.join(", "));
        classes.push(json!({ "id": k, "modules": modules, "semibrick": semibrick }));
    }
    let mut arrows = Vec::new();
    for a in &l.arrows {
        let label = cat.name(a.label);
        let _ = writeln!(text, "T{} -> T{} label {label}", a.upper, a.lower);
        arrows.push(json!({ "upper": a.upper, "lower": a.lower, "label": label }));
    }
    let _ = writeln!(text, "{} torsion classes, {} arrows", l.len(), l.arrows.len());
    let json = json!({ "count": l.len(), "classes": classes, "arrows": arrows });
    Ok((Report::ok(text, json), l.to_dot(cat)))
}

pub fn smc(cat: &ModuleCategory, via_lattice: bool, via_mutation: bool) -> Result<Report> {
    let from_lattice = if via_lattice { Some(TorsionLattice::build(cat)?.smcs()) } else { None };
    let from_mutation = if via_mutation { Some(Mutator::new(cat).smcs_by_mutation()?) } else { None };
    if let (Some(a), Some(b)) = (&from_lattice, &from_mutation) {
        if a != b {
            return Err(Error::Invariant(format!(
                "{} collections from the lattice, {} by mutation, sets differ",
                a.len(),
                b.len()
            )));
        }
    }
    let set: &BTreeSet<SemibrickPair> = from_lattice.as_ref().or(from_mutation.as_ref()).expect("a method is chosen");
    let mut methods = Vec::new();
    if via_lattice {
        methods.push("lattice");
    }
    if via_mutation {
        methods.push("mutation");
    }
    let listed: Vec<String> = set.iter().map(|p| p.format(cat)).collect();
    let mut text: String = listed.iter().map(|p| format!("{p}\n")).collect();
    let _ = write!(text, "{} collections via {}", set.len(), methods.join(" and "));
    text.push_str(if methods.len() == 2 { ", methods agree\n" } else { "\n" });
    Ok(Report::ok(
        text,
        json!({ "count": set.len(), "collections": listed, "methods": methods, "agree": methods.len() == 2 }),
    ))
}

pub fn group(cat: &ModuleCategory) -> Result<Report> {
    let l = TorsionLattice::build(cat)?;
    let pres = polygon_presentation(&l)?;
    let eliminated = eliminate_torsion_generators(&l);
    let mut text = pres.to_text(cat);
    let _ = writeln!(text, "{} generators, {} relations", pres.generators.len(), pres.relations.len());
    let _ = writeln!(text, "{} relations left after eliminating torsion generators", eliminated.len());
    let gens: Vec<Value> = pres
        .generators
        .iter()
        .filter_map(|g| match g {
            semibrick::picture::Generator::Brick(b) => {
                Some(json!({ "symbol": format!("X{b}"), "brick": cat.name(*b) }))
            }
            semibrick::picture::Generator::Torsion(_) => None,
        })
        .collect();
    let rels: Vec<Value> =
        pres.relations.iter().map(|r| json!({ "left": r.left.format(), "right": r.right.format() })).collect();
    Ok(Report::ok(
        text,
        json!({
            "generators": gens,
            "relations": rels,
            "relations_after_elimination": eliminated.len(),
        }),
    ))
}

pub fn hall(cat: &ModuleCategory, degree: Option<usize>, primes: usize) -> Result<Report> {
    let degree = degree.unwrap_or(2 * cat.max_length());
    let l = TorsionLattice::build(cat)?;
    let h = HallAlgebra::new(cat).with_held_out(primes);
    let rel = verify_relations(&h, &l, degree)?;
    let dist = verify_distinctness(&h, &l, degree)?;
    let lemma = check_hall_lemma(cat)?;
    let polys = h.polynomials().len();
    let mut text = format!("degree {degree}\nhypotheses {}\n", if rel.hypotheses_hold { "hold" } else { "fail" });
    for r in &rel.relations {
        let _ = writeln!(text, "relation {} = {}: {}", r.left, r.right, if r.holds { "holds" } else { "FAILS" });
    }
    if rel.failures == 0 {
        let _ = writeln!(text, "all {} polygon relations verified", rel.relations.len());
    } else {
        let _ = writeln!(text, "{} of {} polygon relations fail", rel.failures, rel.relations.len());
    }
    let _ = writeln!(text, "generators distinct {} ({})", yes(dist.generators_distinct), dist.generators);
    let _ = writeln!(text, "torsion words distinct {} ({})", yes(dist.torsion_words_distinct), dist.torsion_classes);
    let _ =
        writeln!(text, "coefficient lemma {} ({} pairs)", if lemma.holds() { "holds" } else { "fails" }, lemma.pairs);
    let _ = writeln!(text, "hall polynomials {polys}, held-out primes {primes}");
    let broken = (rel.hypotheses_hold && rel.failures > 0)
        || !dist.generators_distinct
        || !dist.torsion_words_distinct
        || !lemma.holds();
    let json = json!({
        "degree": degree,
        "hypotheses_hold": rel.hypotheses_hold,
        "relations": rel.relations.iter().map(|r| json!({ "left": r.left, "right": r.right, "holds": r.holds })).collect::<Vec<_>>(),
        "failures": rel.failures,
        "generators": dist.generators,
        "generators_distinct": dist.generators_distinct,
        "torsion_classes": dist.torsion_classes,
        "torsion_words_distinct": dist.torsion_words_distinct,
        "lemma_pairs": lemma.pairs,
        "lemma_holds": lemma.holds(),
        "polynomials": polys,
        "held_out_primes": primes,
    });
    Ok(Report { text, json, code: if broken { 2 } else { 0 } })
}

fn marker(m: Marker) -> &'static str {
    match m {
        Marker::Circle => "circle",
        Marker::Square => "square",
        Marker::Hollow => "hollow",
    }
}

pub fn arc(cat: &ModuleCategory, validate: bool) -> Result<Report> {
    let disk = DiskModel::build(cat)?;
    let n = disk.n;
    let mut text = format!(
        "points {n}\nlengths {}\nmarkers {}\n",
        disk.lengths.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" "),
        disk.markers.iter().map(|&m| marker(m)).collect::<Vec<_>>().join(" ")
    );
    text.push_str(&disk.to_text(cat));
    let arcs: Vec<Value> = disk
        .arcs()
        .into_iter()
        .map(|a| json!({ "source": a.source, "target": a.target(n), "length": a.length, "brick": cat.name(disk.brick(a)) }))
        .collect();
    let mut json = json!({
        "points": n,
        "lengths": disk.lengths,
        "markers": disk.markers.iter().map(|&m| marker(m)).collect::<Vec<_>>(),
        "arcs": arcs,
    });
    let mut code = 0;
    if validate {
        let r = cross_validate(cat)?;
        let _ = writeln!(
            text,
            "validated {} ordered pairs, {} mismatches, max ext dim {}: {}",
            r.pairs,
            r.mismatches.len(),
            r.max_ext_dim,
            if r.passed() { "pass" } else { "FAIL" }
        );
        for m in &r.mismatches {
            let _ = writeln!(text, "mismatch {} {}", m.s, m.t);
        }
        json["validation"] = json!({
            "pairs": r.pairs,
            "max_ext_dim": r.max_ext_dim,
            "mismatches": r.mismatches.iter().map(|m| json!([m.s, m.t])).collect::<Vec<_>>(),
            "passed": r.passed(),
        });
        if !r.passed() {
            code = 2;
        }
    }
    Ok(Report { text, json, code })
}
