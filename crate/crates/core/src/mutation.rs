//! Semibrick pairs, left and right mutation, mutation compatibility and the
//! pairwise completability property.

use crate::category::{ModuleCategory, ModuleClass};
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Mutex;

/// Positive bricks `S_p` and negative bricks `S_n` (standing for `S_n[1]`),
/// by catalog index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct SemibrickPair {
    pub positive: BTreeSet<usize>,
    pub negative: BTreeSet<usize>,
}

impl SemibrickPair {
    pub fn new(positive: impl IntoIterator<Item = usize>, negative: impl IntoIterator<Item = usize>) -> Self {
        SemibrickPair { positive: positive.into_iter().collect(), negative: negative.into_iter().collect() }
    }

    pub fn size(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    pub fn is_subpair_of(&self, other: &SemibrickPair) -> bool {
        self.positive.is_subset(&other.positive) && self.negative.is_subset(&other.negative)
    }

    pub fn format(&self, cat: &ModuleCategory) -> String {
        let side = |s: &BTreeSet<usize>| {
            if s.is_empty() {
                "-".to_string()
            } else {
                s.iter().map(|&i| cat.name(i)).collect::<Vec<_>>().join(", ")
            }
        };
        format!("{} / {}", side(&self.positive), side(&self.negative))
    }

    /// Parses `POS / NEG`, each side a comma-separated list of words or `-`.
    pub fn parse(cat: &ModuleCategory, text: &str) -> Result<SemibrickPair> {
        let mut parts = text.split('/');
        let (Some(pos), Some(neg), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Invalid(format!("expected `POS / NEG`, got `{text}`")));
        };
        let side = |s: &str| -> Result<BTreeSet<usize>> {
            let s = s.trim();
            let mut out = BTreeSet::new();
            if s == "-" {
                return Ok(out);
            }
            for w in s.split(',') {
                let id = cat.lookup(w.trim())?;
                if !out.insert(id) {
                    return Err(Error::Invalid(format!("`{}` listed twice", w.trim())));
                }
            }
            Ok(out)
        };
        Ok(SemibrickPair { positive: side(pos)?, negative: side(neg)? })
    }
}

/// The first failed condition in the definition of a semibrick pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotBrick { module: usize },
    PositiveHom { from: usize, to: usize },
    NegativeHom { from: usize, to: usize },
    CrossHom { positive: usize, negative: usize },
    CrossExt { positive: usize, negative: usize },
}

impl Violation {
    pub fn describe(&self, cat: &ModuleCategory) -> String {
        match *self {
            Violation::NotBrick { module } => format!("{} is not a brick", cat.name(module)),
            Violation::PositiveHom { from, to } => {
                format!("Hom({}, {}) is nonzero inside the positive part", cat.name(from), cat.name(to))
            }
            Violation::NegativeHom { from, to } => {
                format!("Hom({}, {}) is nonzero inside the negative part", cat.name(from), cat.name(to))
            }
            Violation::CrossHom { positive, negative } => {
                format!("Hom({}, {}) is nonzero", cat.name(positive), cat.name(negative))
            }
            Violation::CrossExt { positive, negative } => {
                format!("Ext({}, {}) is nonzero", cat.name(positive), cat.name(negative))
            }
        }
    }
}

pub fn validate_pair(cat: &ModuleCategory, pair: &SemibrickPair) -> std::result::Result<(), Violation> {
    for &i in pair.positive.iter().chain(&pair.negative) {
        if !cat.is_brick(i) {
            return Err(Violation::NotBrick { module: i });
        }
    }
    for (side, positive) in [(&pair.positive, true), (&pair.negative, false)] {
        for &i in side {
            for &j in side {
                if i != j && cat.hom(i, j) != 0 {
                    return Err(if positive {
                        Violation::PositiveHom { from: i, to: j }
                    } else {
                        Violation::NegativeHom { from: i, to: j }
                    });
                }
            }
        }
    }
    for &s in &pair.positive {
        for &t in &pair.negative {
            if cat.hom(s, t) != 0 {
                return Err(Violation::CrossHom { positive: s, negative: t });
            }
            if cat.ext(s, t) != 0 {
                return Err(Violation::CrossExt { positive: s, negative: t });
            }
        }
    }
    Ok(())
}

/// Where a single brick goes under one mutation step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "sign", content = "brick", rename_all = "snake_case")]
pub enum Image {
    Positive(usize),
    Negative(usize),
}

/// A brick whose minimal approximation is neither mono nor epi.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub at: usize,
    pub brick: usize,
    pub approximation: ModuleClass,
}

impl Obstruction {
    pub fn describe(&self, cat: &ModuleCategory, left: bool) -> String {
        let (a, b) = (cat.name(self.brick), cat.describe(&self.approximation));
        if left {
            format!("approximation {a} -> {b} at {} is neither mono nor epi", cat.name(self.at))
        } else {
            format!("approximation {b} -> {a} at {} is neither mono nor epi", cat.name(self.at))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Mutated { pair: SemibrickPair },
    Obstructed { obstruction: Obstruction },
}

/// One step of a mutation sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub from: SemibrickPair,
    pub at: usize,
    pub to: SemibrickPair,
}

/// Result of the depth-first mutation search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub compatible: bool,
    /// Steps of a successful sequence, or of the first explored branch.
    pub trace: Vec<Step>,
    /// The pair and obstruction where the first explored branch stopped.
    pub obstruction: Option<(SemibrickPair, Obstruction)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Left(usize, usize, bool),
    Right(usize, usize, bool),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Cached {
    Image(Image),
    Blocked(ModuleClass),
}

/// Mutation of semibrick pairs with per-brick results cached.
#[derive(Debug)]
pub struct Mutator<'a> {
    cat: &'a ModuleCategory,
    cache: Mutex<HashMap<Key, Cached>>,
    verdicts: Mutex<HashMap<SemibrickPair, Verdict>>,
}

impl<'a> Mutator<'a> {
    pub fn new(cat: &'a ModuleCategory) -> Self {
        Mutator { cat, cache: Mutex::new(HashMap::new()), verdicts: Mutex::new(HashMap::new()) }
    }

    pub fn category(&self) -> &'a ModuleCategory {
        self.cat
    }

    fn single(&self, m: &crate::rep::Representation, what: &str) -> Result<usize> {
        let cls = self.cat.decompose(m)?;
        cls.as_single()
            .filter(|&i| self.cat.is_brick(i))
            .ok_or_else(|| Error::Invariant(format!("{what} is {} rather than a brick", self.cat.describe(&cls))))
    }

    fn compute(&self, key: Key) -> Result<Cached> {
        if let Some(c) = self.cache.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let cat = self.cat;
        let out = match key {
            Key::Left(s, t, positive) => {
                let (sr, tr) = (cat.module(s), cat.module(t));
                if positive {
                    let e = cat.left_ext_closure(tr, sr)?;
                    Cached::Image(Image::Positive(self.single(&e, "left mutation of a positive brick")?))
                } else {
                    let gens: BTreeSet<usize> = [s].into_iter().collect();
                    let a = cat.left_min_approx(tr, &gens)?;
                    match (a.is_mono(), a.is_epi()) {
                        (true, true) => return Err(Error::Invariant("approximation is an isomorphism".into())),
                        (_, true) => {
                            let (k, _) = crate::rep::kernel(cat.algebra(), tr, &a.map);
                            Cached::Image(Image::Negative(self.single(&k, "kernel of an approximation")?))
                        }
                        (true, false) => {
                            let (c, _) = crate::rep::cokernel(cat.algebra(), &a.object, &a.map);
                            Cached::Image(Image::Positive(self.single(&c, "cokernel of an approximation")?))
                        }
                        (false, false) => Cached::Blocked(a.class),
                    }
                }
            }
            Key::Right(s, t, positive) => {
                let (sr, tr) = (cat.module(s), cat.module(t));
                if !positive {
                    let e = cat.right_ext_closure(tr, sr)?;
                    Cached::Image(Image::Negative(self.single(&e, "right mutation of a negative brick")?))
                } else {
                    let gens: BTreeSet<usize> = [s].into_iter().collect();
                    let a = cat.right_min_approx(tr, &gens)?;
                    match (a.is_mono(), a.is_epi()) {
                        (true, true) => return Err(Error::Invariant("approximation is an isomorphism".into())),
                        (true, _) => {
                            let (c, _) = crate::rep::cokernel(cat.algebra(), tr, &a.map);
                            Cached::Image(Image::Positive(self.single(&c, "cokernel of an approximation")?))
                        }
                        (false, true) => {
                            let (k, _) = crate::rep::kernel(cat.algebra(), &a.object, &a.map);
                            Cached::Image(Image::Negative(self.single(&k, "kernel of an approximation")?))
                        }
                        (false, false) => Cached::Blocked(a.class),
                    }
                }
            }
        };
        self.cache.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// Image of brick `t` (with the given sign) under left mutation at `s`.
    pub fn left_image(&self, s: usize, t: usize, positive: bool) -> Result<std::result::Result<Image, ModuleClass>> {
        if positive && s == t {
            return Ok(Ok(Image::Negative(s)));
        }
        Ok(match self.compute(Key::Left(s, t, positive))? {
            Cached::Image(i) => Ok(i),
            Cached::Blocked(c) => Err(c),
        })
    }

    /// Image of brick `t` under right mutation at `s`.
    pub fn right_image(&self, s: usize, t: usize, positive: bool) -> Result<std::result::Result<Image, ModuleClass>> {
        if !positive && s == t {
            return Ok(Ok(Image::Positive(s)));
        }
        Ok(match self.compute(Key::Right(s, t, positive))? {
            Cached::Image(i) => Ok(i),
            Cached::Blocked(c) => Err(c),
        })
    }

    fn apply(
        &self,
        pair: &SemibrickPair,
        s: usize,
        image: impl Fn(usize, bool) -> Result<std::result::Result<Image, ModuleClass>>,
    ) -> Result<Outcome> {
        let mut out = SemibrickPair::default();
        let members = pair.positive.iter().map(|&t| (t, true)).chain(pair.negative.iter().map(|&t| (t, false)));
        for (t, positive) in members {
            match image(t, positive)? {
                Ok(Image::Positive(x)) => {
                    out.positive.insert(x);
                }
                Ok(Image::Negative(x)) => {
                    out.negative.insert(x);
                }
                Err(approximation) => {
                    return Ok(Outcome::Obstructed { obstruction: Obstruction { at: s, brick: t, approximation } })
                }
            }
        }
        if out.size() != pair.size() {
            return Err(Error::Invariant(format!("mutation at {} merged two bricks", self.cat.name(s))));
        }
        Ok(Outcome::Mutated { pair: out })
    }

    pub fn left_mutate(&self, pair: &SemibrickPair, s: usize) -> Result<Outcome> {
        if !pair.positive.contains(&s) {
            return Err(Error::Invalid(format!("{} is not a positive brick of the pair", self.cat.name(s))));
        }
        self.apply(pair, s, |t, positive| self.left_image(s, t, positive))
    }

    pub fn right_mutate(&self, pair: &SemibrickPair, s: usize) -> Result<Outcome> {
        if !pair.negative.contains(&s) {
            return Err(Error::Invalid(format!("{} is not a negative brick of the pair", self.cat.name(s))));
        }
        self.apply(pair, s, |t, positive| self.right_image(s, t, positive))
    }

    pub fn is_singly_left_compatible(&self, pair: &SemibrickPair, s: usize) -> Result<bool> {
        Ok(matches!(self.left_mutate(pair, s)?, Outcome::Mutated { .. }))
    }

    /// Depth-first search for a sequence of left mutations ending at a pair
    /// with an empty side.
    pub fn is_mutation_compatible(&self, pair: &SemibrickPair) -> Result<Verdict> {
        if pair.positive.is_empty() || pair.negative.is_empty() {
            return Ok(Verdict { compatible: true, trace: Vec::new(), obstruction: None });
        }
        if let Some(v) = self.verdicts.lock().unwrap().get(pair) {
            return Ok(v.clone());
        }
        let mut results = Vec::new();
        for &s in &pair.positive {
            match self.left_mutate(pair, s)? {
                Outcome::Mutated { pair: next } => results.push((s, next)),
                Outcome::Obstructed { obstruction } => {
                    let v = Verdict {
                        compatible: false,
                        trace: Vec::new(),
                        obstruction: Some((pair.clone(), obstruction)),
                    };
                    self.verdicts.lock().unwrap().insert(pair.clone(), v.clone());
                    return Ok(v);
                }
            }
        }
        let mut first_failure: Option<Verdict> = None;
        for (s, next) in results {
            let sub = self.is_mutation_compatible(&next)?;
            let mut trace = vec![Step { from: pair.clone(), at: s, to: next }];
            trace.extend(sub.trace.iter().cloned());
            if sub.compatible {
                let v = Verdict { compatible: true, trace, obstruction: None };
                self.verdicts.lock().unwrap().insert(pair.clone(), v.clone());
                return Ok(v);
            }
            if first_failure.is_none() {
                first_failure = Some(Verdict { compatible: false, trace, obstruction: sub.obstruction });
            }
        }
        let v = first_failure.expect("positive part is nonempty");
        self.verdicts.lock().unwrap().insert(pair.clone(), v.clone());
        Ok(v)
    }

    /// Two-term simple-minded collections reached from the simples by left
    /// mutation.
    pub fn smcs_by_mutation(&self) -> Result<BTreeSet<SemibrickPair>> {
        let alg = self.cat.algebra();
        let simples: Vec<usize> = (0..alg.vertex_count())
            .map(|v| {
                self.cat
                    .strings()
                    .iter()
                    .position(|w| w.is_empty() && w.start == v)
                    .expect("every simple is in the catalog")
            })
            .collect();
        let start = SemibrickPair::new(simples, []);
        let mut seen = BTreeSet::new();
        let mut queue = vec![start.clone()];
        seen.insert(start);
        while let Some(pair) = queue.pop() {
            for &s in &pair.positive {
                match self.left_mutate(&pair, s)? {
                    Outcome::Mutated { pair: next } => {
                        if seen.insert(next.clone()) {
                            queue.push(next);
                        }
                    }
                    Outcome::Obstructed { obstruction } => {
                        return Err(Error::Invariant(format!(
                            "two-term simple-minded collection {} is not mutable: {}",
                            pair.format(self.cat),
                            obstruction.describe(self.cat, true)
                        )))
                    }
                }
            }
        }
        Ok(seen)
    }
}

/// All semibrick pairs built from the bricks, empty pair included, in a
/// deterministic order.
pub fn all_semibrick_pairs(cat: &ModuleCategory) -> Result<Vec<SemibrickPair>> {
    let bricks = cat.bricks()?;
    let mut out = Vec::new();
    let mut cur = SemibrickPair::default();
    fn go(cat: &ModuleCategory, bricks: &[usize], k: usize, cur: &mut SemibrickPair, out: &mut Vec<SemibrickPair>) {
        if k == bricks.len() {
            out.push(cur.clone());
            return;
        }
        let b = bricks[k];
        go(cat, bricks, k + 1, cur, out);
        let pos_ok = cur.positive.iter().all(|&s| cat.hom(s, b) == 0 && cat.hom(b, s) == 0)
            && cur.negative.iter().all(|&t| cat.hom(b, t) == 0 && cat.ext(b, t) == 0);
        if pos_ok {
            cur.positive.insert(b);
            go(cat, bricks, k + 1, cur, out);
            cur.positive.remove(&b);
        }
        let neg_ok = cur.negative.iter().all(|&t| cat.hom(t, b) == 0 && cat.hom(b, t) == 0)
            && cur.positive.iter().all(|&s| cat.hom(s, b) == 0 && cat.ext(s, b) == 0);
        if neg_ok {
            cur.negative.insert(b);
            go(cat, bricks, k + 1, cur, out);
            cur.negative.remove(&b);
        }
    }
    go(cat, &bricks, 0, &mut cur, &mut out);
    out.sort_by(|a, b| (a.size(), a).cmp(&(b.size(), b)));
    Ok(out)
}

/// Every sub-pair of the given collections.
pub fn completable_set(smcs: &BTreeSet<SemibrickPair>) -> HashSet<SemibrickPair> {
    let mut out = HashSet::new();
    for smc in smcs {
        let items: Vec<(usize, bool)> =
            smc.positive.iter().map(|&i| (i, true)).chain(smc.negative.iter().map(|&i| (i, false))).collect();
        for mask in 0u32..(1 << items.len()) {
            let mut sub = SemibrickPair::default();
            for (k, &(i, pos)) in items.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    if pos {
                        sub.positive.insert(i);
                    } else {
                        sub.negative.insert(i);
                    }
                }
            }
            out.insert(sub);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairwiseReport {
    pub holds: bool,
    pub pairs_checked: usize,
    /// Non-completable pairs of smallest size all of whose cross sub-pairs
    /// `S + T[1]` are completable.
    pub witnesses: Vec<SemibrickPair>,
}

/// Checks that every semibrick pair is completable or has a
/// non-completable cross sub-pair.
pub fn pairwise_property(cat: &ModuleCategory, smcs: &BTreeSet<SemibrickPair>) -> Result<PairwiseReport> {
    let pairs = all_semibrick_pairs(cat)?;
    let completable = completable_set(smcs);
    let mut witnesses: Vec<SemibrickPair> = Vec::new();
    for x in &pairs {
        if completable.contains(x) {
            continue;
        }
        let cross_ok =
            x.positive.iter().all(|&s| x.negative.iter().all(|&t| completable.contains(&SemibrickPair::new([s], [t]))));
        if cross_ok {
            match witnesses.first() {
                Some(w) if w.size() < x.size() => {}
                _ => witnesses.push(x.clone()),
            }
        }
    }
    Ok(PairwiseReport { holds: witnesses.is_empty(), pairs_checked: pairs.len(), witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialAlgebra;
    use std::sync::Arc;

    fn cat(text: &str) -> ModuleCategory {
        ModuleCategory::new(Arc::new(MonomialAlgebra::parse(text).unwrap()), 2).unwrap()
    }

    const A2: &str = "vertices 2\narrow a 1 2\n";
    const Q1: &str = "vertices 4\narrow g1 1 2\narrow g2 2 3\narrow g4 4 2\nrelation g4 g2\n";

    #[test]
    fn pair_syntax_round_trip() {
        let c = cat(Q1);
        let pair = SemibrickPair::parse(&c, "e1, g4 / g1.g2").unwrap();
        assert_eq!(pair.format(&c), "e1, g4 / g1.g2");
        assert_eq!(SemibrickPair::parse(&c, "- / e3").unwrap().format(&c), "- / e3");
        assert!(SemibrickPair::parse(&c, "e1, e1 / -").is_err());
        assert!(SemibrickPair::parse(&c, "e1").is_err());
    }

    #[test]
    fn validation() {
        let c = cat(A2);
        let bad = SemibrickPair::parse(&c, "e1 / e1").unwrap();
        assert!(matches!(validate_pair(&c, &bad), Err(Violation::CrossHom { .. })));
        let bad = SemibrickPair::parse(&c, "e1 / e2").unwrap();
        assert!(matches!(validate_pair(&c, &bad), Err(Violation::CrossExt { .. })));
        let good = SemibrickPair::parse(&c, "e2 / e1").unwrap();
        assert!(validate_pair(&c, &good).is_ok());
    }

    #[test]
    fn a2_mutation_and_inverse() {
        let c = cat(A2);
        let m = Mutator::new(&c);
        let start = SemibrickPair::parse(&c, "e1, e2 / -").unwrap();
        let Outcome::Mutated { pair } = m.left_mutate(&start, c.lookup("e2").unwrap()).unwrap() else { panic!() };
        assert_eq!(pair.format(&c), "a / e2");
        let Outcome::Mutated { pair: back } = m.right_mutate(&pair, c.lookup("e2").unwrap()).unwrap() else { panic!() };
        assert_eq!(back, start);
        assert_eq!(m.smcs_by_mutation().unwrap().len(), 5);
    }

    #[test]
    fn q1_is_not_mutation_compatible() {
        let c = cat(Q1);
        let m = Mutator::new(&c);
        let pair = SemibrickPair::parse(&c, "e1, g4 / g1.g2").unwrap();
        assert!(validate_pair(&c, &pair).is_ok());
        let v = m.is_mutation_compatible(&pair).unwrap();
        assert!(!v.compatible);
        let first = &v.trace[0];
        assert_eq!(c.name(first.at), "e1");
        assert_eq!(first.to.format(&c), "g4 / e1, g2");
        let (at_pair, obs) = v.obstruction.unwrap();
        assert_eq!(at_pair.format(&c), "g4 / e1, g2");
        assert_eq!((c.name(obs.at), c.name(obs.brick)), ("g4".to_string(), "g2".to_string()));
    }
}
