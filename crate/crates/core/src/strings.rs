//! Strings of a string algebra and their modules.
//!
//! A word `w = w_1 ... w_m` walks through vertices `v_0, ..., v_m`. A direct
//! letter `a` goes from `v_{k-1} = s(a)` to `v_k = t(a)`; an inverse letter
//! `~a` goes from `t(a)` to `s(a)`. In the string module the basis vector
//! `b_{k-1}` maps to `b_k` under a direct letter, and `b_k` maps to `b_{k-1}`
//! under an inverse one.

use crate::algebra::MonomialAlgebra;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rep::Representation;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn source(self, alg: &MonomialAlgebra) -> usize {
        let a = alg.arrow(self.arrow);
        if self.inverse {
            a.target
        } else {
            a.source
        }
    }

    pub fn target(self, alg: &MonomialAlgebra) -> usize {
        let a = alg.arrow(self.arrow);
        if self.inverse {
            a.source
        } else {
            a.target
        }
    }

    pub fn flip(self) -> Letter {
        Letter { arrow: self.arrow, inverse: !self.inverse }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StringWord {
    pub start: usize,
    pub letters: Vec<Letter>,
}

impl StringWord {
    pub fn constant(v: usize) -> Self {
        StringWord { start: v, letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Vertices visited, `v_0 .. v_m`.
    pub fn vertices(&self, alg: &MonomialAlgebra) -> Vec<usize> {
        let mut out = vec![self.start];
        for l in &self.letters {
            out.push(l.target(alg));
        }
        out
    }

    pub fn end(&self, alg: &MonomialAlgebra) -> usize {
        self.letters.last().map_or(self.start, |l| l.target(alg))
    }

    pub fn inverse(&self, alg: &MonomialAlgebra) -> StringWord {
        StringWord { start: self.end(alg), letters: self.letters.iter().rev().map(|l| l.flip()).collect() }
    }

    fn key(&self) -> (usize, Vec<(usize, bool)>, usize) {
        (self.letters.len(), self.letters.iter().map(|l| (l.arrow, l.inverse)).collect(), self.start)
    }

    /// The smaller of the word and its inverse in catalog order.
    pub fn canonical(&self, alg: &MonomialAlgebra) -> StringWord {
        let inv = self.inverse(alg);
        if inv.key() < self.key() {
            inv
        } else {
            self.clone()
        }
    }

    pub fn format(&self, alg: &MonomialAlgebra) -> String {
        if self.letters.is_empty() {
            return format!("e{}", self.start + 1);
        }
        self.letters
            .iter()
            .map(|l| {
                let id = &alg.arrow(l.arrow).id;
                if l.inverse {
                    format!("~{id}")
                } else {
                    id.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Parses `g1.g2`, `~b.c` or `e3`. Does not check string validity.
    pub fn parse(alg: &MonomialAlgebra, text: &str) -> Result<StringWord> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Invalid("empty word".into()));
        }
        if let Some(num) = text.strip_prefix('e') {
            if !num.is_empty() && num.chars().all(|c| c.is_ascii_digit()) && alg.arrow_index(text).is_none() {
                let v: usize = num.parse().map_err(|_| Error::Invalid(format!("bad vertex in `{text}`")))?;
                if v == 0 || v > alg.vertex_count() {
                    return Err(Error::Invalid(format!("vertex {v} out of range in `{text}`")));
                }
                return Ok(StringWord::constant(v - 1));
            }
        }
        let mut letters = Vec::new();
        for tok in text.split('.') {
            let (inverse, id) = match tok.strip_prefix('~') {
                Some(rest) => (true, rest),
                None => (false, tok),
            };
            let arrow =
                alg.arrow_index(id).ok_or_else(|| Error::Invalid(format!("unknown arrow `{id}` in `{text}`")))?;
            letters.push(Letter { arrow, inverse });
        }
        let start = letters[0].source(alg);
        let w = StringWord { start, letters };
        for pair in w.letters.windows(2) {
            if pair[0].target(alg) != pair[1].source(alg) {
                return Err(Error::Invalid(format!("letters do not compose in `{text}`")));
            }
        }
        Ok(w)
    }

    /// Checks the string conditions: composable letters, no letter next to
    /// its inverse, and no relation inside a direct or inverse run.
    pub fn is_valid(&self, alg: &MonomialAlgebra) -> bool {
        let mut cur = self.start;
        for (i, l) in self.letters.iter().enumerate() {
            if l.source(alg) != cur {
                return false;
            }
            if i > 0 && self.letters[i - 1] == l.flip() {
                return false;
            }
            cur = l.target(alg);
        }
        let mut i = 0;
        while i < self.letters.len() {
            let inv = self.letters[i].inverse;
            let mut j = i;
            while j < self.letters.len() && self.letters[j].inverse == inv {
                j += 1;
            }
            let mut path: Vec<usize> = self.letters[i..j].iter().map(|l| l.arrow).collect();
            if inv {
                path.reverse();
            }
            if alg.contains_relation(&path) {
                return false;
            }
            i = j;
        }
        true
    }

    /// The string module over F_p.
    pub fn module(&self, alg: &MonomialAlgebra, p: u32) -> Representation {
        let verts = self.vertices(alg);
        let mut dims = vec![0usize; alg.vertex_count()];
        let mut index = Vec::with_capacity(verts.len());
        for &v in &verts {
            index.push(dims[v]);
            dims[v] += 1;
        }
        let mut maps: Vec<Matrix> =
            alg.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source], p)).collect();
        for (k, l) in self.letters.iter().enumerate() {
            let (from, to) = if l.inverse { (k + 1, k) } else { (k, k + 1) };
            maps[l.arrow].set(index[to], index[from], 1);
        }
        Representation::new(p, dims, maps)
    }
}

/// Default cap on string length: four letters per vertex.
pub fn default_length_cap(alg: &MonomialAlgebra) -> usize {
    4 * alg.vertex_count()
}

fn window_len(alg: &MonomialAlgebra) -> usize {
    alg.max_relation_length().max(2)
}

/// Enumerates all strings up to inversion, sorted by length and then
/// lexicographically. Fails with `Unsupported` for non-string algebras,
/// with `Unsupported` when there are infinitely many strings, and with
/// `Resource` when the length cap is hit first.
pub fn enumerate_strings(alg: &MonomialAlgebra, length_cap: Option<usize>) -> Result<Vec<StringWord>> {
    if !alg.is_string_algebra() {
        return Err(Error::Unsupported("not a string algebra".into()));
    }
    let cap = length_cap.unwrap_or_else(|| default_length_cap(alg));
    let window = window_len(alg);
    let mut found: BTreeSet<(usize, Vec<(usize, bool)>, usize)> = BTreeSet::new();
    let mut stack: Vec<StringWord> = (0..alg.vertex_count()).map(StringWord::constant).collect();
    while let Some(w) = stack.pop() {
        let c = w.canonical(alg);
        found.insert(c.key());
        let end = w.end(alg);
        for (ai, a) in alg.arrows().iter().enumerate() {
            for inverse in [false, true] {
                let src = if inverse { a.target } else { a.source };
                if src != end {
                    continue;
                }
                let mut next = w.clone();
                next.letters.push(Letter { arrow: ai, inverse });
                if !extension_ok(alg, &next) {
                    continue;
                }
                let k = next.letters.len();
                if k >= window {
                    let last = &next.letters[k - window..];
                    if (0..k - window).any(|s| &next.letters[s..s + window] == last) {
                        return Err(Error::Unsupported(format!(
                            "representation-infinite: string {} repeats",
                            next.format(alg)
                        )));
                    }
                }
                if k > cap {
                    return Err(Error::Resource(format!("string length cap {cap} exceeded")));
                }
                stack.push(next);
            }
        }
    }
    let mut out: Vec<StringWord> = found
        .into_iter()
        .map(|(_, letters, start)| StringWord {
            start,
            letters: letters.into_iter().map(|(arrow, inverse)| Letter { arrow, inverse }).collect(),
        })
        .collect();
    out.sort_by_key(StringWord::key);
    Ok(out)
}

/// Checks only the conditions involving the last letter.
fn extension_ok(alg: &MonomialAlgebra, w: &StringWord) -> bool {
    let k = w.letters.len();
    let last = w.letters[k - 1];
    if k >= 2 && w.letters[k - 2] == last.flip() {
        return false;
    }
    let mut i = k - 1;
    while i > 0 && w.letters[i - 1].inverse == last.inverse {
        i -= 1;
    }
    let mut path: Vec<usize> = w.letters[i..].iter().map(|l| l.arrow).collect();
    if last.inverse {
        path.reverse();
        alg.relations().iter().any(|r| path.starts_with(r)).then_some(()).is_none()
    } else {
        alg.relations().iter().any(|r| path.ends_with(r)).then_some(()).is_none()
    }
}

/// Finite representation type, decided by whether the set of strings is
/// finite.
pub fn is_representation_finite(alg: &MonomialAlgebra) -> Result<bool> {
    match enumerate_strings(alg, Some(usize::MAX)) {
        Ok(_) => Ok(true),
        Err(Error::Unsupported(msg)) if msg.starts_with("representation-infinite") => Ok(false),
        Err(e) => Err(e),
    }
}
