//! Arc model for Nakayama-like algebras.
//!
//! Marked points are numbered `1..=n` along the underlying line or cycle;
//! `gamma_i` joins `i` and `i + 1`. The indecomposable `M(i, j)` is the
//! string of length `j` that starts at `i` and walks in increasing order.
//! An arc from `i` of length `j` ends at `(i + j)_n` and stands for `M(i, j)`.

use crate::category::{ModuleCategory, ModuleClass};
use crate::error::{Error, Result};
use crate::rep::{for_each_combination, Morphism};
use crate::strings::{Letter, StringWord};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

/// `x` reduced into `1..=n`.
pub fn cyc(x: i64, n: usize) -> usize {
    let n = n as i64;
    ((x - 1).rem_euclid(n) + 1) as usize
}

/// `(j - i)_n`, a value in `1..=n`.
pub fn gap(i: usize, j: usize, n: usize) -> usize {
    cyc(j as i64 - i as i64, n)
}

/// The ordered multiset `[i, j]_n`.
pub fn closed_interval(i: usize, j: usize, n: usize) -> Vec<usize> {
    let (i, j) = (cyc(i as i64, n), cyc(j as i64, n));
    if i < j {
        (i..=j).collect()
    } else {
        (i..=n).chain(1..=j).collect()
    }
}

/// The ordered multiset `(i, j)_n`.
pub fn open_interval(i: usize, j: usize, n: usize) -> Vec<usize> {
    let c = closed_interval(i, j, n);
    c[1..c.len() - 1].to_vec()
}

/// The ordered multiset `[i, i, j]_n`.
pub fn doubled_interval(i: usize, j: usize, n: usize) -> Vec<usize> {
    let mut v = closed_interval(i, i, n);
    v.extend_from_slice(&closed_interval(i, j, n)[1..]);
    v
}

/// `i <_n j <_n k`, i.e. `j` lies in `(i, k)_n`.
pub fn triple_order(i: usize, j: usize, k: usize, n: usize) -> bool {
    open_interval(i, k, n).contains(&j)
}

/// `a <_n b <_n c <_n d` read as one walk from `a` to `d`: the points occur
/// in this order within `(a, d)_n`.
pub fn chain_order(a: usize, b: usize, c: usize, d: usize, n: usize) -> bool {
    let end = gap(a, d, n);
    let (ob, oc) = (gap(a, b, n) % n, gap(a, c, n) % n);
    0 < ob && ob < oc && oc < end
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Marker {
    Circle,
    Square,
    Hollow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Arc {
    pub source: usize,
    pub length: usize,
}

impl Arc {
    pub fn target(&self, n: usize) -> usize {
        cyc((self.source + self.length) as i64, n)
    }

    /// Whether the support passes from point `n` back to point `1`.
    pub fn wraps(&self, n: usize) -> bool {
        self.source + self.length > n + 1 || (self.length == n && self.source == 1)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DiskModel {
    pub n: usize,
    /// `l(1), ..., l(n)`.
    pub lengths: Vec<usize>,
    pub markers: Vec<Marker>,
    /// Algebra vertex at each point.
    pub vertices: Vec<usize>,
    /// Catalog index of `M(i, j)`, keyed by `(i, j)`.
    modules: BTreeMap<(usize, usize), usize>,
}

impl DiskModel {
    pub fn build(cat: &ModuleCategory) -> Result<Self> {
        let alg = cat.algebra();
        if !alg.is_nakayama_like() {
            return Err(Error::Unsupported("the algebra is not Nakayama-like".into()));
        }
        let shape = alg.line_shape().expect("Nakayama-like algebras have a line shape");
        let n = shape.order.len();
        let edge = |p: usize| -> Option<usize> {
            // gamma_p, between points p and p + 1
            if p == n && !shape.cyclic {
                None
            } else {
                Some(shape.edges[p - 1])
            }
        };
        let vertex = |p: usize| shape.order[p - 1];
        let mut markers = Vec::with_capacity(n);
        for p in 1..=n {
            let prev = cyc(p as i64 - 1, n);
            markers.push(match edge(prev) {
                None => Marker::Hollow,
                Some(e) if alg.arrow(e).source == vertex(prev) => Marker::Circle,
                Some(_) => Marker::Square,
            });
        }
        let index: HashMap<&StringWord, usize> = cat.strings().iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut lengths = Vec::with_capacity(n);
        let mut modules = BTreeMap::new();
        for i in 1..=n {
            let mut word = StringWord::constant(vertex(i));
            let mut j = 1;
            loop {
                let id = index
                    .get(&word.canonical(alg))
                    .ok_or_else(|| Error::Invariant(format!("M({i}, {j}) is not in the catalog")))?;
                modules.insert((i, j), *id);
                let p = cyc((i + j - 1) as i64, n);
                let Some(e) = edge(p) else { break };
                let letter = Letter { arrow: e, inverse: alg.arrow(e).source != vertex(p) };
                let mut next = word.clone();
                next.letters.push(letter);
                if j > cat.max_length() || !next.is_valid(alg) {
                    break;
                }
                word = next;
                j += 1;
            }
            lengths.push(j);
        }
        let vertices = (1..=n).map(vertex).collect();
        let model = DiskModel { n, lengths, markers, vertices, modules };
        if model.modules.len() != cat.len() {
            return Err(Error::Invariant(format!(
                "{} modules M(i, j) but {} indecomposables",
                model.modules.len(),
                cat.len()
            )));
        }
        Ok(model)
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i - 1]
    }

    pub fn marker(&self, i: usize) -> Marker {
        self.markers[i - 1]
    }

    /// Catalog index of `M(i, j)` if `j <= l(i)`.
    pub fn module(&self, i: usize, j: usize) -> Option<usize> {
        self.modules.get(&(i, j)).copied()
    }

    pub fn arcs(&self) -> Vec<Arc> {
        (1..=self.n)
            .flat_map(|i| (1..=self.length(i).min(self.n)).map(move |length| Arc { source: i, length }))
            .collect()
    }

    pub fn brick(&self, a: Arc) -> usize {
        self.modules[&(a.source, a.length)]
    }

    pub fn arc_of(&self, brick: usize) -> Option<Arc> {
        self.arcs().into_iter().find(|&a| self.brick(a) == brick)
    }

    /// `[i, j]_n` contains a relation.
    pub fn contains_relation(&self, i: usize, j: usize) -> bool {
        gap(i, j, self.n) > self.length(i)
    }

    /// `[i, i, j]_n` contains a relation.
    pub fn doubled_contains_relation(&self, i: usize, j: usize) -> bool {
        self.n + gap(i, j, self.n) > self.length(i)
    }

    fn is(&self, i: usize, m: Marker) -> bool {
        self.marker(i) == m
    }

    fn lt3(&self, i: usize, j: usize, k: usize) -> bool {
        triple_order(i, j, k, self.n)
    }

    /// `M(i, j)` as a class, if it exists.
    fn m(&self, i: usize, j: usize) -> Option<ModuleClass> {
        self.module(i, j).map(ModuleClass::single)
    }

    pub fn mono(&self, s: Arc, t: Arc) -> bool {
        let n = self.n;
        let (ss, ts, st, tt) = (s.source, s.target(n), t.source, t.target(n));
        use Marker::*;
        (ss == st && self.lt3(ss, ts, tt) && self.is(ts, Square))
            || (self.lt3(st, ss, ts) && ts == tt && self.is(ss, Circle))
            || self.mono_nested(s, t)
    }

    /// The nested case of a monomorphism, with `S` strictly inside `T`.
    fn mono_nested(&self, s: Arc, t: Arc) -> bool {
        let n = self.n;
        let (ss, ts, st, tt) = (s.source, s.target(n), t.source, t.target(n));
        chain_order(st, ss, ts, tt, self.n) && self.is(ss, Marker::Circle) && self.is(ts, Marker::Square)
    }

    /// Epimorphism `S -> T`; here `T` sits inside `S`.
    pub fn epi(&self, s: Arc, t: Arc) -> bool {
        let n = self.n;
        let (ss, ts, st, tt) = (s.source, s.target(n), t.source, t.target(n));
        use Marker::*;
        s != t
            && ((ss == st && self.lt3(ss, tt, ts) && self.is(tt, Circle))
                || (self.lt3(ss, st, ts) && ts == tt && self.is(st, Square))
                || self.epi_nested(s, t))
    }

    fn epi_nested(&self, s: Arc, t: Arc) -> bool {
        let n = self.n;
        let (ss, ts, st, tt) = (s.source, s.target(n), t.source, t.target(n));
        chain_order(ss, st, tt, ts, self.n) && self.is(st, Marker::Square) && self.is(tt, Marker::Circle)
    }

    /// Which case of the neither-mono-nor-epi criterion holds for `S -> T`.
    fn neither_case(&self, s: Arc, t: Arc) -> Option<u8> {
        let n = self.n;
        let (ss, ts, st, tt) = (s.source, s.target(n), t.source, t.target(n));
        use Marker::*;
        if self.is(ss, Circle) && self.is(tt, Circle) && self.lt3(st, ss, tt) && self.lt3(ss, tt, ts) {
            Some(1)
        } else if self.is(ts, Square) && self.is(st, Square) && self.lt3(ss, st, ts) && self.lt3(st, ts, tt) {
            Some(2)
        } else {
            None
        }
    }

    /// Middle terms `E` of non-split sequences `T -> E -> S`.
    pub fn extension_terms(&self, s: Arc, t: Arc) -> BTreeSet<ModuleClass> {
        let n = self.n;
        let (ss, ts, st, tt) = (s.source, s.target(n), t.source, t.target(n));
        let long = s.length + t.length > n;
        let mut out = BTreeSet::new();
        let mut push = |parts: &[Option<ModuleClass>]| {
            if let Some(parts) = parts.iter().cloned().collect::<Option<Vec<_>>>() {
                out.insert(parts.iter().fold(ModuleClass::zero(), |a, b| a.sum(b)));
            }
        };
        // indecomposable middle terms
        if ts == st && self.is(ts, Marker::Circle) {
            if !long && !self.contains_relation(ss, tt) {
                push(&[self.m(ss, gap(ss, tt, n))]);
            } else if long && !self.doubled_contains_relation(ss, tt) {
                push(&[self.m(ss, n + gap(ss, tt, n))]);
            }
        }
        if ss == tt && self.is(ss, Marker::Square) {
            if !long && !self.contains_relation(st, ts) {
                push(&[self.m(st, gap(st, ts, n))]);
            } else if long && !self.doubled_contains_relation(st, ts) {
                push(&[self.m(st, n + gap(st, ts, n))]);
            }
        }
        // T inside S, through a mono or an epi
        if self.mono_nested(t, s) || self.epi_nested(t, s) {
            push(&[self.m(ss, gap(ss, tt, n)), self.m(st, gap(st, ts, n))]);
        }
        // T -> S neither mono nor epi: E is the union of the two arcs plus
        // their overlap; the union must not contain a relation
        if let Some(case) = self.neither_case(t, s) {
            let (first, last, overlap) =
                if case == 1 { (s, t, (st, gap(st, ts, n))) } else { (t, s, (ss, gap(ss, tt, n))) };
            let union = gap(first.source, last.source, n) % n + last.length;
            let free = if union <= n {
                !self.contains_relation(first.source, last.target(n))
            } else {
                !self.doubled_contains_relation(first.source, last.target(n))
            };
            if free {
                push(&[self.m(overlap.0, overlap.1), self.m(first.source, union)]);
            }
        }
        out
    }

    pub fn classify_pair(&self, s: Arc, t: Arc) -> PairPrediction {
        let same = s == t;
        let ext_terms = self.extension_terms(s, t);
        PairPrediction {
            mono: !same && self.mono(s, t),
            epi: !same && self.epi(s, t),
            neither: self.neither_case(s, t).is_some(),
            ext_dim: usize::from(!ext_terms.is_empty()),
            ext_terms,
        }
    }

    /// One line per arc: `arc <s> <t> len <l> brick <word>`.
    pub fn to_text(&self, cat: &ModuleCategory) -> String {
        let mut s = String::new();
        for a in self.arcs() {
            let _ =
                writeln!(s, "arc {} {} len {} brick {}", a.source, a.target(self.n), a.length, cat.name(self.brick(a)));
        }
        s
    }
}

/// Combinatorial prediction for an ordered pair `(S, T)`: which kinds of
/// nonzero map `S -> T` exist (for `S != T`), and the middle terms of the
/// non-split sequences `T -> E -> S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairPrediction {
    pub mono: bool,
    pub epi: bool,
    pub neither: bool,
    pub ext_dim: usize,
    pub ext_terms: BTreeSet<ModuleClass>,
}

/// The same data computed by linear algebra.
pub fn ground_truth(cat: &ModuleCategory, s: usize, t: usize) -> Result<PairPrediction> {
    let (ms, mt) = (cat.module(s), cat.module(t));
    let basis = cat.hom_basis(ms, mt);
    cat.check_enumeration(basis.len())?;
    let (mut mono, mut epi, mut neither) = (false, false, false);
    for_each_combination(basis.len(), cat.p(), |c| {
        let f = Morphism::combination(&basis, c, ms, mt);
        if !f.is_zero() {
            let (i, e) = (f.is_injective(), f.is_surjective());
            mono |= i && !e;
            epi |= e && !i;
            neither |= !i && !e;
        }
        false
    });
    let ext_terms = cat.ext_middle_terms_ids(s, t)?;
    Ok(PairPrediction { mono, epi, neither, ext_dim: cat.ext(s, t), ext_terms })
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub s: String,
    pub t: String,
    pub predicted: PairPrediction,
    pub actual: PairPrediction,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub arcs: usize,
    pub bricks: usize,
    pub pairs: usize,
    pub max_ext_dim: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.arcs == self.bricks && self.mismatches.is_empty() && self.max_ext_dim <= 1
    }
}

/// Compares `classify_pair` with linear algebra on every ordered pair of bricks.
pub fn cross_validate(cat: &ModuleCategory) -> Result<ValidationReport> {
    let disk = DiskModel::build(cat)?;
    let arcs = disk.arcs();
    let bricks = cat.bricks()?;
    let hit: BTreeSet<usize> = arcs.iter().map(|&a| disk.brick(a)).collect();
    if hit != bricks.iter().copied().collect() {
        return Err(Error::Invariant("arcs and bricks are not in bijection".into()));
    }
    let mut report =
        ValidationReport { arcs: arcs.len(), bricks: bricks.len(), pairs: 0, max_ext_dim: 0, mismatches: vec![] };
    for &a in &arcs {
        for &b in &arcs {
            let (s, t) = (disk.brick(a), disk.brick(b));
            let predicted = disk.classify_pair(a, b);
            let actual = ground_truth(cat, s, t)?;
            report.pairs += 1;
            report.max_ext_dim = report.max_ext_dim.max(actual.ext_dim);
            let agree = predicted.ext_dim == actual.ext_dim
                && predicted.ext_terms == actual.ext_terms
                && (s == t
                    || (predicted.mono, predicted.epi, predicted.neither) == (actual.mono, actual.epi, actual.neither));
            if !agree {
                report.mismatches.push(Mismatch { s: cat.name(s), t: cat.name(t), predicted, actual });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialAlgebra;
    use std::sync::Arc as Shared;

    fn cat(text: &str) -> ModuleCategory {
        ModuleCategory::new(Shared::new(MonomialAlgebra::parse(text).unwrap()), 2).unwrap()
    }

    #[test]
    fn intervals() {
        assert_eq!(open_interval(1, 4, 5), vec![2, 3]);
        assert_eq!(open_interval(4, 1, 5), vec![5]);
        assert_eq!(doubled_interval(4, 1, 5), vec![4, 5, 1, 2, 3, 4, 5, 1]);
        assert!(triple_order(2, 4, 2, 5));
        assert!(!triple_order(2, 2, 2, 5));
        assert!(triple_order(4, 5, 1, 5));
        assert!(chain_order(4, 5, 2, 3, 5));
        assert!(!chain_order(2, 1, 2, 3, 3));
    }

    #[test]
    fn example_disk() {
        let c = cat("vertices 3\narrow b 1 2\narrow a 2 3\narrow c 1 3\nrelation b a\n");
        let d = DiskModel::build(&c).unwrap();
        assert_eq!(d.lengths, vec![2, 4, 3]);
        assert_eq!(d.markers, vec![Marker::Square, Marker::Circle, Marker::Circle]);
        let name = |i, j| c.name(d.module(i, j).unwrap());
        assert_eq!(name(3, 1), "e3");
        assert_eq!(name(3, 2), c.name(c.lookup("~c").unwrap()));
        assert_eq!(name(3, 3), c.name(c.lookup("~c.b").unwrap()));
        assert!(d.doubled_contains_relation(3, 3));
        assert!(!d.contains_relation(3, 3));
        assert_eq!(d.arcs().len(), c.bricks().unwrap().len());
        let r = cross_validate(&c).unwrap();
        assert!(r.passed(), "{:#?}", r.mismatches);
    }

    #[test]
    fn linear_a2_has_hollow_point() {
        let c = cat("vertices 2\narrow a 1 2\n");
        let d = DiskModel::build(&c).unwrap();
        assert_eq!(d.markers, vec![Marker::Hollow, Marker::Circle]);
        assert!(cross_validate(&c).unwrap().passed());
    }
}
