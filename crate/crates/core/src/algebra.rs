//! Bound quiver algebras KQ/I with I generated by paths.
//!
//! Paths compose left to right: `a b` means first `a`, then `b`. Vertices are
//! stored zero-based and printed one-based.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const DEFAULT_PATH_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A relation-free path. Trivial paths have no arrows and `source == target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialAlgebra {
    vertex_count: usize,
    arrows: Vec<Arrow>,
    relations: Vec<Vec<usize>>,
    paths: Vec<Path>,
}

/// Underlying graph of a Nakayama-like algebra, walked in a fixed direction.
/// `order[i]` is the vertex at position `i`; `edges[i]` is the arrow joining
/// positions `i` and `i + 1` (cyclically for a cycle).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineShape {
    pub cyclic: bool,
    pub order: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraClass {
    pub vertex_count: usize,
    pub arrow_count: usize,
    pub dimension: usize,
    pub is_string: bool,
    pub is_gentle: bool,
    pub is_nakayama_like: bool,
    pub is_nakayama: bool,
    pub is_representation_finite: Option<bool>,
    pub has_loops: bool,
    pub has_two_cycles: bool,
    pub has_multi_arrows: bool,
    pub max_vertex_degree: usize,
}

fn valid_id(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let content = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in content.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &content[s..i], column: s + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &content[s..], column: s + 1 });
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

impl MonomialAlgebra {
    /// Validates the data and enumerates relation-free paths.
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>, relations: Vec<Vec<usize>>) -> Result<Self> {
        Self::with_path_cap(vertex_count, arrows, relations, DEFAULT_PATH_CAP)
    }

    pub fn with_path_cap(
        vertex_count: usize,
        arrows: Vec<Arrow>,
        relations: Vec<Vec<usize>>,
        path_cap: usize,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Invalid("an algebra needs at least one vertex".into()));
        }
        for a in &arrows {
            if a.source >= vertex_count || a.target >= vertex_count {
                return Err(Error::Invalid(format!("arrow `{}` has an endpoint out of range", a.id)));
            }
        }
        for r in &relations {
            if r.len() < 2 {
                return Err(Error::Invalid("relations must have length at least two".into()));
            }
            for w in r.windows(2) {
                if arrows[w[0]].target != arrows[w[1]].source {
                    return Err(Error::NotComposable {
                        line: 0,
                        first: arrows[w[0]].id.clone(),
                        second: arrows[w[1]].id.clone(),
                    });
                }
            }
        }
        let mut alg = MonomialAlgebra { vertex_count, arrows, relations, paths: Vec::new() };
        alg.paths = alg.enumerate_paths(path_cap)?;
        Ok(alg)
    }

    fn enumerate_paths(&self, cap: usize) -> Result<Vec<Path>> {
        let window = self.max_relation_length().saturating_sub(1).max(1);
        let mut out = Vec::new();
        let mut queue: std::collections::VecDeque<Path> =
            (0..self.vertex_count).map(|v| Path { source: v, target: v, arrows: Vec::new() }).collect();
        while let Some(path) = queue.pop_front() {
            if out.len() >= cap {
                return Err(Error::Resource(format!("more than {cap} relation-free paths")));
            }
            for (b, arrow) in self.arrows.iter().enumerate() {
                if arrow.source != path.target {
                    continue;
                }
                let mut next = path.arrows.clone();
                next.push(b);
                if self.ends_with_relation(&next) {
                    continue;
                }
                let k = next.len();
                if k >= window {
                    let last = &next[k - window..];
                    for start in 0..(k - window) {
                        if &next[start..start + window] == last {
                            return Err(Error::InfiniteDimensional { witness: self.path_name(&next) });
                        }
                    }
                }
                queue.push_back(Path { source: path.source, target: arrow.target, arrows: next });
            }
            out.push(path);
        }
        out.sort_by(|a, b| (a.source, a.arrows.len(), &a.arrows).cmp(&(b.source, b.arrows.len(), &b.arrows)));
        Ok(out)
    }

    fn ends_with_relation(&self, arrows: &[usize]) -> bool {
        self.relations.iter().any(|r| arrows.ends_with(r))
    }

    /// Parses the text format described in the crate documentation.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_cap(text, DEFAULT_PATH_CAP)
    }

    pub fn parse_with_cap(text: &str, path_cap: usize) -> Result<Self> {
        let mut vertex_count: Option<usize> = None;
        let mut arrows: Vec<Arrow> = Vec::new();
        let mut ids: BTreeMap<String, usize> = BTreeMap::new();
        let mut relations: Vec<Vec<usize>> = Vec::new();
        let mut last_line = 0;
        for (idx, line) in text.lines().enumerate() {
            let ln = idx + 1;
            last_line = ln;
            let toks = tokenize(line);
            let Some(head) = toks.first() else { continue };
            match head.text {
                "vertices" => {
                    if vertex_count.is_some() {
                        return Err(syntax(ln, head.column, "duplicate `vertices` declaration"));
                    }
                    if toks.len() != 2 {
                        return Err(syntax(ln, head.column, "expected `vertices <count>`"));
                    }
                    let n: usize =
                        toks[1].text.parse().map_err(|_| syntax(ln, toks[1].column, "expected a vertex count"))?;
                    if n == 0 {
                        return Err(syntax(ln, toks[1].column, "vertex count must be positive"));
                    }
                    vertex_count = Some(n);
                }
                "arrow" => {
                    let n = vertex_count.ok_or_else(|| syntax(ln, head.column, "`vertices` must come first"))?;
                    if !relations.is_empty() {
                        return Err(syntax(ln, head.column, "arrows must precede relations"));
                    }
                    if toks.len() != 4 {
                        return Err(syntax(ln, head.column, "expected `arrow <id> <source> <target>`"));
                    }
                    let id = toks[1].text;
                    if !valid_id(id) {
                        return Err(syntax(ln, toks[1].column, format!("invalid arrow id `{id}`")));
                    }
                    if ids.contains_key(id) {
                        return Err(syntax(ln, toks[1].column, format!("duplicate arrow id `{id}`")));
                    }
                    let mut ends = [0usize; 2];
                    for (k, t) in toks[2..4].iter().enumerate() {
                        let v: usize = t.text.parse().map_err(|_| syntax(ln, t.column, "expected a vertex number"))?;
                        if v == 0 || v > n {
                            return Err(syntax(ln, t.column, format!("vertex {v} out of range 1..{n}")));
                        }
                        ends[k] = v - 1;
                    }
                    ids.insert(id.to_string(), arrows.len());
                    arrows.push(Arrow { id: id.to_string(), source: ends[0], target: ends[1] });
                }
                "relation" => {
                    if vertex_count.is_none() {
                        return Err(syntax(ln, head.column, "`vertices` must come first"));
                    }
                    let body = &toks[1..];
                    if body.iter().any(|t| {
                        t.text.contains(['+', '-', '=', '*']) || !t.text.starts_with(|c: char| c.is_ascii_alphabetic())
                    }) {
                        return Err(Error::NonMonomial { line: ln });
                    }
                    if body.len() < 2 {
                        return Err(syntax(ln, head.column, "a relation needs at least two arrows"));
                    }
                    let mut rel = Vec::with_capacity(body.len());
                    for t in body {
                        if !valid_id(t.text) {
                            return Err(syntax(ln, t.column, format!("invalid arrow id `{}`", t.text)));
                        }
                        let a =
                            *ids.get(t.text).ok_or_else(|| Error::UnknownArrow { line: ln, id: t.text.to_string() })?;
                        rel.push(a);
                    }
                    for w in rel.windows(2) {
                        if arrows[w[0]].target != arrows[w[1]].source {
                            return Err(Error::NotComposable {
                                line: ln,
                                first: arrows[w[0]].id.clone(),
                                second: arrows[w[1]].id.clone(),
                            });
                        }
                    }
                    relations.push(rel);
                }
                other => return Err(syntax(ln, head.column, format!("unknown keyword `{other}`"))),
            }
        }
        let n = vertex_count.ok_or_else(|| syntax(last_line.max(1), 1, "missing `vertices` declaration"))?;
        Self::with_path_cap(n, arrows, relations, path_cap)
    }

    /// Serializes to the text format; `parse(to_text())` round-trips.
    pub fn to_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.vertex_count);
        for a in &self.arrows {
            let _ = writeln!(s, "arrow {} {} {}", a.id, a.source + 1, a.target + 1);
        }
        for r in &self.relations {
            let _ = writeln!(s, "relation {}", self.path_name(r));
        }
        s
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    pub fn max_relation_length(&self) -> usize {
        self.relations.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// All relation-free paths, trivial ones included.
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn dimension(&self) -> usize {
        self.paths.len()
    }

    /// True when the arrow sequence contains a relation as a subpath.
    pub fn contains_relation(&self, arrows: &[usize]) -> bool {
        self.relations.iter().any(|r| arrows.windows(r.len()).any(|w| w == r.as_slice()))
    }

    pub fn path_name(&self, arrows: &[usize]) -> String {
        arrows.iter().map(|&a| self.arrows[a].id.as_str()).collect::<Vec<_>>().join(" ")
    }

    /// Number of arrow ends at each vertex; a loop counts twice.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for a in &self.arrows {
            deg[a.source] += 1;
            deg[a.target] += 1;
        }
        deg
    }

    fn is_relation(&self, path: &[usize]) -> bool {
        self.relations.iter().any(|r| r.as_slice() == path)
    }

    fn string_conditions(&self) -> bool {
        let mut outs = vec![0; self.vertex_count];
        let mut ins = vec![0; self.vertex_count];
        for a in &self.arrows {
            outs[a.source] += 1;
            ins[a.target] += 1;
        }
        if outs.iter().chain(&ins).any(|&d| d > 2) {
            return false;
        }
        (0..self.arrows.len()).all(|a| {
            let after = (0..self.arrows.len())
                .filter(|&b| self.arrows[a].target == self.arrows[b].source && !self.is_relation(&[a, b]))
                .count();
            let before = (0..self.arrows.len())
                .filter(|&c| self.arrows[c].target == self.arrows[a].source && !self.is_relation(&[c, a]))
                .count();
            after <= 1 && before <= 1
        })
    }

    pub fn is_string_algebra(&self) -> bool {
        self.string_conditions()
    }

    pub fn is_gentle(&self) -> bool {
        if !self.string_conditions() || self.relations.iter().any(|r| r.len() != 2) {
            return false;
        }
        (0..self.arrows.len()).all(|a| {
            let after = (0..self.arrows.len()).filter(|&b| self.is_relation(&[a, b])).count();
            let before = (0..self.arrows.len()).filter(|&c| self.is_relation(&[c, a])).count();
            after <= 1 && before <= 1
        })
    }

    /// Returns the walk along the underlying graph when it is a line or a
    /// cycle; `None` otherwise.
    pub fn line_shape(&self) -> Option<LineShape> {
        let n = self.vertex_count;
        let m = self.arrows.len();
        let deg = self.vertex_degrees();
        if deg.iter().any(|&d| d > 2) {
            return None;
        }
        let cyclic = match (m + 1).cmp(&n) {
            std::cmp::Ordering::Equal => false,
            std::cmp::Ordering::Greater if m == n => true,
            _ => return None,
        };
        let start = if cyclic { 0 } else { (0..n).find(|&v| deg[v] <= 1)? };
        let mut order = vec![start];
        let mut edges = Vec::new();
        let mut used = vec![false; m];
        let mut current = start;
        loop {
            let mut options: Vec<(usize, usize)> = self
                .arrows
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .filter_map(|(i, a)| {
                    if a.source == current {
                        Some((a.target, i))
                    } else if a.target == current {
                        Some((a.source, i))
                    } else {
                        None
                    }
                })
                .collect();
            options.sort();
            let Some(&(next, e)) = options.first() else { break };
            used[e] = true;
            edges.push(e);
            if next == start && cyclic {
                break;
            }
            if order.contains(&next) {
                return None;
            }
            order.push(next);
            current = next;
        }
        if order.len() != n || edges.len() != m {
            return None;
        }
        Some(LineShape { cyclic, order, edges })
    }

    pub fn is_nakayama_like(&self) -> bool {
        match self.line_shape() {
            Some(shape) => !shape.cyclic || !self.relations.is_empty(),
            None => false,
        }
    }

    pub fn is_nakayama(&self) -> bool {
        let Some(shape) = self.line_shape() else { return false };
        if shape.cyclic && self.relations.is_empty() {
            return false;
        }
        let n = shape.order.len();
        let forward = |i: usize| {
            let a = &self.arrows[shape.edges[i]];
            a.source == shape.order[i] && a.target == shape.order[(i + 1) % n]
        };
        let dirs: Vec<bool> = (0..shape.edges.len()).map(forward).collect();
        dirs.iter().all(|&d| d) || dirs.iter().all(|&d| !d)
    }

    pub fn classify(&self) -> AlgebraClass {
        let is_string = self.is_string_algebra();
        let has_two_cycles = self
            .arrows
            .iter()
            .any(|a| a.source != a.target && self.arrows.iter().any(|b| b.source == a.target && b.target == a.source));
        let has_multi_arrows = self
            .arrows
            .iter()
            .enumerate()
            .any(|(i, a)| self.arrows[i + 1..].iter().any(|b| b.source == a.source && b.target == a.target));
        AlgebraClass {
            vertex_count: self.vertex_count,
            arrow_count: self.arrows.len(),
            dimension: self.dimension(),
            is_string,
            is_gentle: self.is_gentle(),
            is_nakayama_like: self.is_nakayama_like(),
            is_nakayama: self.is_nakayama(),
            is_representation_finite: if is_string {
                crate::strings::is_representation_finite(self).ok()
            } else {
                None
            },
            has_loops: self.arrows.iter().any(|a| a.source == a.target),
            has_two_cycles,
            has_multi_arrows,
            max_vertex_degree: self.vertex_degrees().into_iter().max().unwrap_or(0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const THREE: &str = "vertices 3\narrow b 1 2\narrow a 2 3\narrow c 1 3\nrelation b a\n";

    #[test]
    fn parses_and_counts_paths() {
        let alg = MonomialAlgebra::parse(THREE).unwrap();
        assert_eq!(alg.vertex_count(), 3);
        assert_eq!(alg.arrows().len(), 3);
        // e1 e2 e3 b a c
        assert_eq!(alg.dimension(), 6);
    }

    #[test]
    fn round_trip() {
        let alg = MonomialAlgebra::parse(THREE).unwrap();
        let again = MonomialAlgebra::parse(&alg.to_text()).unwrap();
        assert_eq!(alg, again);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\n\nvertices 2 # two\narrow a 1 2\n";
        assert_eq!(MonomialAlgebra::parse(text).unwrap().dimension(), 3);
    }

    #[test]
    fn error_positions() {
        let e = MonomialAlgebra::parse("vertices 2\narrow a 1 3\n").unwrap_err();
        assert_eq!(e, Error::Syntax { line: 2, column: 11, message: "vertex 3 out of range 1..2".into() });
        let e = MonomialAlgebra::parse("vertices 2\narrow a 1 2\nrelation a z\n").unwrap_err();
        assert_eq!(e, Error::UnknownArrow { line: 3, id: "z".into() });
        let e = MonomialAlgebra::parse("vertices 2\narrow a 1 2\nrelation a a\n").unwrap_err();
        assert!(matches!(e, Error::NotComposable { line: 3, .. }));
        let e = MonomialAlgebra::parse("vertices 2\narrow a 1 2\narrow b 1 2\nrelation a - b\n").unwrap_err();
        assert_eq!(e, Error::NonMonomial { line: 4 });
        let e = MonomialAlgebra::parse("arrow a 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 1, column: 1, .. }));
    }

    #[test]
    fn infinite_dimensional_cycles() {
        let e = MonomialAlgebra::parse("vertices 1\narrow x 1 1\n").unwrap_err();
        assert!(matches!(e, Error::InfiniteDimensional { .. }));
        let e = MonomialAlgebra::parse("vertices 1\narrow x 1 1\narrow y 1 1\nrelation x y\n").unwrap_err();
        assert!(matches!(e, Error::InfiniteDimensional { .. }));
        let ok =
            MonomialAlgebra::parse("vertices 2\narrow a 1 2\narrow b 2 1\nrelation a b a\nrelation b a b\n").unwrap();
        assert_eq!(ok.dimension(), 6);
    }

    #[test]
    fn path_cap_is_a_resource_error() {
        let e = MonomialAlgebra::parse_with_cap(THREE, 3).unwrap_err();
        assert!(matches!(e, Error::Resource(_)));
    }

    #[test]
    fn loop_degree_counts_twice() {
        let alg = MonomialAlgebra::parse("vertices 1\narrow x 1 1\nrelation x x\n").unwrap();
        assert_eq!(alg.vertex_degrees(), vec![2]);
        assert!(alg.classify().has_loops);
    }

    #[test]
    fn classification_flags() {
        let alg = MonomialAlgebra::parse(THREE).unwrap();
        let c = alg.classify();
        assert!(c.is_string && c.is_gentle && c.is_nakayama_like && !c.is_nakayama);
        assert_eq!(c.is_representation_finite, Some(true));

        let kron = MonomialAlgebra::parse("vertices 2\narrow a 1 2\narrow b 1 2\n").unwrap();
        let c = kron.classify();
        assert!(c.has_multi_arrows && c.is_string && !c.is_nakayama_like);
        assert_eq!(c.is_representation_finite, Some(false));

        let cyc = MonomialAlgebra::parse("vertices 2\narrow a 1 2\narrow b 2 1\nrelation a b\nrelation b a\n").unwrap();
        let c = cyc.classify();
        assert!(c.has_two_cycles && c.is_nakayama);

        let star = MonomialAlgebra::parse("vertices 4\narrow a 1 2\narrow b 3 2\narrow c 2 4\n").unwrap();
        assert!(!star.is_string_algebra());
    }
}
