//! The lattice of torsion classes, its brick-labelled Hasse diagram,
//! polygons, and two-term simple-minded collections read off the lattice.

use crate::category::ModuleCategory;
use crate::error::{Error, Result};
use crate::mutation::SemibrickPair;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// All semibricks, empty one included, sorted by size then content.
pub fn all_semibricks(cat: &ModuleCategory) -> Result<Vec<BTreeSet<usize>>> {
    let bricks = cat.bricks()?;
    let mut out = Vec::new();
    fn go(cat: &ModuleCategory, bricks: &[usize], k: usize, cur: &mut BTreeSet<usize>, out: &mut Vec<BTreeSet<usize>>) {
        if k == bricks.len() {
            out.push(cur.clone());
            return;
        }
        let b = bricks[k];
        go(cat, bricks, k + 1, cur, out);
        if cur.iter().all(|&s| cat.hom(s, b) == 0 && cat.hom(b, s) == 0) {
            cur.insert(b);
            go(cat, bricks, k + 1, cur, out);
            cur.remove(&b);
        }
    }
    go(cat, &bricks, 0, &mut BTreeSet::new(), &mut out);
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HasseArrow {
    pub upper: usize,
    pub lower: usize,
    pub label: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Polygon {
    pub top: usize,
    pub bottom: usize,
    /// Labels along the two maximal chains from `top` to `bottom`; the first
    /// label of `left` is smaller in catalog order than the first of `right`.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct TorsionLattice {
    /// Indecomposable supports, sorted by size and then content.
    pub classes: Vec<BTreeSet<usize>>,
    /// The semibrick generating each class.
    pub semibricks: Vec<BTreeSet<usize>>,
    pub arrows: Vec<HasseArrow>,
    index: BTreeMap<BTreeSet<usize>, usize>,
}

impl TorsionLattice {
    /// Builds the lattice as the classes Filt(Fac(S)) over all semibricks S
    /// and labels each cover relation by the unique brick B with
    /// upper = Filt(lower + B).
    pub fn build(cat: &ModuleCategory) -> Result<Self> {
        let semis = all_semibricks(cat)?;
        let mut by_class: BTreeMap<BTreeSet<usize>, BTreeSet<usize>> = BTreeMap::new();
        for s in semis {
            let t = cat.filt_fac(&s)?;
            if let Some(prev) = by_class.insert(t, s.clone()) {
                return Err(Error::Invariant(format!("semibricks {prev:?} and {s:?} generate the same torsion class")));
            }
        }
        let mut entries: Vec<(BTreeSet<usize>, BTreeSet<usize>)> = by_class.into_iter().collect();
        entries.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let classes: Vec<BTreeSet<usize>> = entries.iter().map(|e| e.0.clone()).collect();
        let semibricks = entries.into_iter().map(|e| e.1).collect();
        let index = classes.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let mut lattice = TorsionLattice { classes, semibricks, arrows: Vec::new(), index };
        let covers = lattice.covers();
        let mut arrows = Vec::with_capacity(covers.len());
        for (upper, lower) in covers {
            let label = lattice.label(cat, upper, lower)?;
            arrows.push(HasseArrow { upper, lower, label });
        }
        lattice.arrows = arrows;
        Ok(lattice)
    }

    fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.classes.len();
        let below = |a: usize, b: usize| a != b && self.classes[a].is_subset(&self.classes[b]);
        let mut out = Vec::new();
        for upper in 0..n {
            for lower in 0..n {
                if below(lower, upper) && !(0..n).any(|k| below(lower, k) && below(k, upper)) {
                    out.push((upper, lower));
                }
            }
        }
        out
    }

    fn label(&self, cat: &ModuleCategory, upper: usize, lower: usize) -> Result<usize> {
        let up = &self.classes[upper];
        let low = &self.classes[lower];
        let mut found = Vec::new();
        for &b in up.difference(low) {
            if !cat.is_brick(b) {
                continue;
            }
            let mut gens = low.clone();
            gens.insert(b);
            let mut all = true;
            for &x in up.difference(&gens) {
                if !cat.in_filt(&crate::category::ModuleClass::single(x), &gens)? {
                    all = false;
                    break;
                }
            }
            if all {
                found.push(b);
            }
        }
        match found.as_slice() {
            [b] => Ok(*b),
            _ => Err(Error::Invariant(format!("arrow T{upper} -> T{lower} has {} candidate labels", found.len()))),
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn index_of(&self, class: &BTreeSet<usize>) -> Option<usize> {
        self.index.get(class).copied()
    }

    /// Index of the whole module category.
    pub fn top(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn down_arrows(&self, t: usize) -> Vec<&HasseArrow> {
        let mut v: Vec<&HasseArrow> = self.arrows.iter().filter(|a| a.upper == t).collect();
        v.sort_by_key(|a| a.label);
        v
    }

    pub fn up_arrows(&self, t: usize) -> Vec<&HasseArrow> {
        let mut v: Vec<&HasseArrow> = self.arrows.iter().filter(|a| a.lower == t).collect();
        v.sort_by_key(|a| a.label);
        v
    }

    /// The collection at `t`: labels of arrows leaving `t` are positive,
    /// labels of arrows entering `t` are negative.
    pub fn smc(&self, t: usize) -> SemibrickPair {
        SemibrickPair::new(
            self.down_arrows(t).into_iter().map(|a| a.label),
            self.up_arrows(t).into_iter().map(|a| a.label),
        )
    }

    pub fn smcs(&self) -> BTreeSet<SemibrickPair> {
        (0..self.len()).map(|t| self.smc(t)).collect()
    }

    /// One polygon per torsion class and unordered pair of arrows leaving it.
    pub fn polygons(&self) -> Result<Vec<Polygon>> {
        let mut out = Vec::new();
        for top in 0..self.len() {
            let downs = self.down_arrows(top);
            for i in 0..downs.len() {
                for j in i + 1..downs.len() {
                    out.push(self.polygon(top, downs[i], downs[j])?);
                }
            }
        }
        Ok(out)
    }

    fn polygon(&self, top: usize, a: &HasseArrow, b: &HasseArrow) -> Result<Polygon> {
        let meet: BTreeSet<usize> = self.classes[a.lower].intersection(&self.classes[b.lower]).copied().collect();
        let bottom = self.index_of(&meet).ok_or_else(|| Error::Invariant(format!("no meet below T{top}")))?;
        let inside = |k: usize| {
            self.classes[bottom].is_subset(&self.classes[k]) && self.classes[k].is_subset(&self.classes[top])
        };
        let interval: BTreeSet<usize> = (0..self.len()).filter(|&k| inside(k)).collect();
        let walk = |first: &HasseArrow| -> Result<(Vec<usize>, Vec<usize>)> {
            let mut labels = vec![first.label];
            let mut nodes = Vec::new();
            let mut cur = first.lower;
            while cur != bottom {
                nodes.push(cur);
                let next: Vec<&HasseArrow> =
                    self.arrows.iter().filter(|x| x.upper == cur && interval.contains(&x.lower)).collect();
                let [step] = next.as_slice() else {
                    return Err(Error::Invariant(format!("interval below T{top} is not a polygon")));
                };
                labels.push(step.label);
                cur = step.lower;
            }
            Ok((labels, nodes))
        };
        let (left, ln) = walk(a)?;
        let (right, rn) = walk(b)?;
        let covered: BTreeSet<usize> = ln.iter().chain(&rn).copied().chain([top, bottom]).collect();
        if covered.len() != ln.len() + rn.len() + 2 || covered != interval {
            return Err(Error::Invariant(format!("interval below T{top} is not a polygon")));
        }
        Ok(Polygon { top, bottom, left, right })
    }

    /// The chain from `t` to the zero class that always follows the arrow
    /// with the smallest label.
    pub fn greedy_chain(&self, t: usize) -> Vec<&HasseArrow> {
        let mut out = Vec::new();
        let mut cur = t;
        while let Some(a) = self.down_arrows(cur).into_iter().next() {
            out.push(a);
            cur = a.lower;
        }
        out
    }

    pub fn to_dot(&self, cat: &ModuleCategory) -> String {
        let mut s = String::from("digraph torsion {\n  rankdir=TB;\n");
        for (k, c) in self.classes.iter().enumerate() {
            let support = c.iter().map(|&i| cat.name(i)).collect::<Vec<_>>().join(", ");
            let _ = writeln!(s, "  T{k} [label=\"T{k}\", tooltip=\"{{{support}}}\"];");
        }
        for a in &self.arrows {
            let _ = writeln!(s, "  T{} -> T{} [label=\"{}\"];", a.upper, a.lower, cat.name(a.label));
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialAlgebra;
    use std::sync::Arc;

    fn cat(text: &str) -> ModuleCategory {
        ModuleCategory::new(Arc::new(MonomialAlgebra::parse(text).unwrap()), 2).unwrap()
    }

    #[test]
    fn a2_lattice() {
        let c = cat("vertices 2\narrow a 1 2\n");
        let l = TorsionLattice::build(&c).unwrap();
        assert_eq!(l.len(), 5);
        assert_eq!(l.arrows.len(), 5);
        let polys = l.polygons().unwrap();
        assert_eq!(polys.len(), 1);
        let names = |v: &[usize]| v.iter().map(|&i| c.name(i)).collect::<Vec<_>>();
        assert_eq!(names(&polys[0].left), vec!["e1", "e2"]);
        assert_eq!(names(&polys[0].right), vec!["e2", "a", "e1"]);
        let dot = l.to_dot(&c);
        assert!(dot.contains("T4 -> ") && dot.contains("label=\"a\""));
    }

    #[test]
    fn labels_match_perpendicular_oracle() {
        let c = cat("vertices 4\narrow g1 1 2\narrow g2 2 3\narrow g4 4 2\nrelation g4 g2\n");
        let l = TorsionLattice::build(&c).unwrap();
        for a in &l.arrows {
            let oracle: Vec<usize> = l.classes[a.upper]
                .iter()
                .copied()
                .filter(|&b| c.is_brick(b) && l.classes[a.lower].iter().all(|&x| c.hom(x, b) == 0))
                .collect();
            assert_eq!(oracle, vec![a.label]);
        }
    }
}
