//! Picture group presentations read off a brick-labelled torsion lattice.

use crate::category::ModuleCategory;
use crate::error::{Error, Result};
use crate::lattice::{HasseArrow, TorsionLattice};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum Generator {
    /// `X_B` for a brick with this catalog index.
    Brick(usize),
    /// `g_T` for a torsion class with this lattice index.
    Torsion(usize),
}

/// A word in the generators; letters carry exponent `+1` or `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct Word(pub Vec<(Generator, i8)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: Generator) -> Self {
        Word(vec![(g, 1)])
    }

    pub fn bricks(labels: &[usize]) -> Self {
        Word(labels.iter().map(|&b| (Generator::Brick(b), 1)).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v).reduced()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    /// Free reduction.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<(Generator, i8)> = Vec::with_capacity(self.0.len());
        for &(g, e) in &self.0 {
            match out.last() {
                Some(&(h, f)) if h == g && f == -e => {
                    out.pop();
                }
                _ => out.push((g, e)),
            }
        }
        Word(out)
    }

    pub fn is_identity(&self) -> bool {
        self.reduced().0.is_empty()
    }

    /// Replaces every torsion generator by the given word.
    pub fn substitute(&self, f: &impl Fn(usize) -> Word) -> Word {
        let mut out = Word::identity();
        for &(g, e) in &self.0 {
            let piece = match g {
                Generator::Torsion(t) => {
                    let w = f(t);
                    if e > 0 {
                        w
                    } else {
                        w.inverse()
                    }
                }
                Generator::Brick(_) => Word(vec![(g, e)]),
            };
            out = out.concat(&piece);
        }
        out
    }

    pub fn format(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&(g, e)| {
                let base = match g {
                    Generator::Brick(b) => format!("X{b}"),
                    Generator::Torsion(t) => format!("g{t}"),
                };
                if e < 0 {
                    format!("{base}^-1")
                } else {
                    base
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Relation {
    pub left: Word,
    pub right: Word,
}

impl Relation {
    /// `left right^-1`, freely reduced.
    pub fn relator(&self) -> Word {
        self.left.concat(&self.right.inverse())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

impl GroupPresentation {
    pub fn to_text(&self, cat: &ModuleCategory) -> String {
        let mut s = String::new();
        for g in &self.generators {
            if let Generator::Brick(b) = g {
                let _ = writeln!(s, "# X{b} = {}", cat.name(*b));
            }
        }
        let gens: Vec<String> = self.generators.iter().map(|&g| Word::letter(g).format()).collect();
        let _ = writeln!(s, "gen {}", gens.join(" "));
        for r in &self.relations {
            let _ = writeln!(s, "rel {} = {}", r.left.format(), r.right.format());
        }
        s
    }
}

fn brick_generators(lattice: &TorsionLattice) -> Vec<Generator> {
    let labels: BTreeSet<usize> = lattice.arrows.iter().map(|a| a.label).collect();
    labels.into_iter().map(Generator::Brick).collect()
}

/// One generator per brick and one relation per polygon, equating the
/// label words of its two sides.
pub fn polygon_presentation(lattice: &TorsionLattice) -> Result<GroupPresentation> {
    let relations = lattice
        .polygons()?
        .into_iter()
        .map(|p| Relation { left: Word::bricks(&p.left), right: Word::bricks(&p.right) })
        .collect();
    Ok(GroupPresentation { generators: brick_generators(lattice), relations })
}

/// Generators for bricks and torsion classes, with `g_0 = 1` and
/// `g_T = X_B g_T'` for every arrow `T -> T'` labelled `B`.
pub fn lattice_presentation(lattice: &TorsionLattice) -> GroupPresentation {
    let mut generators = brick_generators(lattice);
    generators.extend((0..lattice.len()).map(Generator::Torsion));
    let mut relations = vec![Relation { left: Word::letter(Generator::Torsion(0)), right: Word::identity() }];
    for a in &lattice.arrows {
        relations.push(Relation {
            left: Word::letter(Generator::Torsion(a.upper)),
            right: Word(vec![(Generator::Brick(a.label), 1), (Generator::Torsion(a.lower), 1)]),
        });
    }
    GroupPresentation { generators, relations }
}

/// Label word of the greedy chain from `t` to the zero class.
pub fn path_word(lattice: &TorsionLattice, t: usize) -> Word {
    let labels: Vec<usize> = lattice.greedy_chain(t).iter().map(|a| a.label).collect();
    Word::bricks(&labels)
}

/// Substitutes `g_T = path_word(T)` into the lattice presentation and
/// keeps the relations that do not reduce to `1 = 1`.
pub fn eliminate_torsion_generators(lattice: &TorsionLattice) -> Vec<Relation> {
    let pres = lattice_presentation(lattice);
    let sub = |t: usize| path_word(lattice, t);
    let mut out = BTreeSet::new();
    for r in pres.relations {
        let left = r.left.substitute(&sub);
        let right = r.right.substitute(&sub);
        if left != right {
            out.insert(Relation { left, right });
        }
    }
    out.into_iter().collect()
}

/// Shows that two maximal chains from `t` to the zero class have equal label
/// words modulo the polygon relations, by flipping across the polygon
/// spanned by the first arrows wherever the chains differ. Returns the
/// number of polygon relations used.
pub fn chains_equivalent(lattice: &TorsionLattice, a: &[&HasseArrow], b: &[&HasseArrow]) -> Result<usize> {
    let polygons = lattice.polygons()?;
    let by_corner: BTreeMap<(usize, usize, usize), usize> =
        polygons.iter().enumerate().map(|(i, p)| ((p.top, p.left[0], p.right[0]), i)).collect();
    let mut memo = BTreeMap::new();
    equivalent(lattice, &polygons, &by_corner, a, b, &mut memo)
}

type Memo = BTreeMap<(Vec<(usize, usize)>, Vec<(usize, usize)>), usize>;

fn equivalent(
    lattice: &TorsionLattice,
    polygons: &[crate::lattice::Polygon],
    by_corner: &BTreeMap<(usize, usize, usize), usize>,
    a: &[&HasseArrow],
    b: &[&HasseArrow],
    memo: &mut Memo,
) -> Result<usize> {
    match (a.first(), b.first()) {
        (None, None) => return Ok(0),
        (Some(x), Some(y)) if x.upper != y.upper => {
            return Err(Error::Invariant("chains start at different classes".into()))
        }
        (Some(_), Some(_)) => {}
        _ => return Err(Error::Invariant("chains of different shape reach the zero class".into())),
    }
    let key = (
        a.iter().map(|x| (x.upper, x.lower)).collect::<Vec<_>>(),
        b.iter().map(|x| (x.upper, x.lower)).collect::<Vec<_>>(),
    );
    if let Some(&n) = memo.get(&key) {
        return Ok(n);
    }
    let (x, y) = (a[0], b[0]);
    let n = if x.lower == y.lower {
        equivalent(lattice, polygons, by_corner, &a[1..], &b[1..], memo)?
    } else {
        let (first, second, swap) = if x.label < y.label { (x, y, false) } else { (y, x, true) };
        let &pi = by_corner
            .get(&(x.upper, first.label, second.label))
            .ok_or_else(|| Error::Invariant(format!("no polygon at T{}", x.upper)))?;
        let poly = &polygons[pi];
        let side = |labels: &[usize], start: &HasseArrow| -> Vec<&HasseArrow> {
            let mut out = vec![];
            let mut cur = start.upper;
            for &l in labels {
                let arrow = lattice
                    .arrows
                    .iter()
                    .find(|h| h.upper == cur && h.label == l)
                    .expect("polygon side follows Hasse arrows");
                out.push(arrow);
                cur = arrow.lower;
            }
            out.extend(lattice.greedy_chain(cur));
            out
        };
        let (left_chain, right_chain) = (side(&poly.left, first), side(&poly.right, second));
        let (ca, cb) = if swap { (&right_chain, &left_chain) } else { (&left_chain, &right_chain) };
        1 + equivalent(lattice, polygons, by_corner, &a[1..], &ca[1..], memo)?
            + equivalent(lattice, polygons, by_corner, &b[1..], &cb[1..], memo)?
    };
    memo.insert(key, n);
    Ok(n)
}
