//! The category of finite-dimensional modules over a representation-finite
//! string algebra, realized over F_p.
//!
//! Every indecomposable is a string module, so a module is identified up to
//! isomorphism by a [`ModuleClass`]: a multiset of catalog indices.

use crate::algebra::MonomialAlgebra;
use crate::error::{Error, Result};
use crate::matrix::{is_prime, Matrix};
use crate::rep::{for_each_combination, hom_basis, kernel, Morphism, Representation};
use crate::strings::{enumerate_strings, StringWord};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Resource limits for enumeration-based routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub string_length: Option<usize>,
    pub bricks: usize,
    /// Largest Hom dimension whose elements are enumerated one by one.
    pub hom_dim: usize,
    /// Largest number of elements enumerated in one search.
    pub enumeration: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { string_length: None, bricks: 24, hom_dim: 16, enumeration: 4_000_000 }
    }
}

/// Sorted multiset of catalog indices; the empty class is the zero module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct ModuleClass(Vec<usize>);

impl ModuleClass {
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ModuleClass(ids)
    }

    pub fn zero() -> Self {
        ModuleClass(Vec::new())
    }

    pub fn single(id: usize) -> Self {
        ModuleClass(vec![id])
    }

    pub fn ids(&self) -> &[usize] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// The index of the class when it is a single indecomposable.
    pub fn as_single(&self) -> Option<usize> {
        (self.0.len() == 1).then(|| self.0[0])
    }

    pub fn sum(&self, other: &ModuleClass) -> ModuleClass {
        let mut ids = self.0.clone();
        ids.extend_from_slice(&other.0);
        ModuleClass::new(ids)
    }

    /// Multiplicities as `(index, count)` pairs.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &i in &self.0 {
            match out.last_mut() {
                Some((j, c)) if *j == i => *c += 1,
                _ => out.push((i, 1)),
            }
        }
        out
    }
}

#[derive(Debug)]
pub struct ModuleCategory {
    alg: Arc<MonomialAlgebra>,
    p: u32,
    caps: Caps,
    strings: Vec<StringWord>,
    modules: Vec<Representation>,
    projectives: Vec<Representation>,
    pub(crate) caches: Caches,
}

#[derive(Debug, Default)]
pub(crate) struct Caches {
    pub hom: Mutex<HashMap<(usize, usize), usize>>,
    pub ext: Mutex<HashMap<(usize, usize), usize>>,
    pub quotients: Mutex<HashMap<(usize, ModuleClass), Arc<Vec<ModuleClass>>>>,
    pub images: Mutex<HashMap<(usize, usize), Arc<Vec<Matrix>>>>,
}

/// Projective presentation data `Omega -> P0 -> M -> 0`.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub p0: Representation,
    pub cover: Morphism,
    pub omega: Representation,
    pub inclusion: Morphism,
}

impl ModuleCategory {
    pub fn new(alg: Arc<MonomialAlgebra>, p: u32) -> Result<Self> {
        Self::with_caps(alg, p, Caps::default())
    }

    pub fn with_caps(alg: Arc<MonomialAlgebra>, p: u32, caps: Caps) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not a prime")));
        }
        let strings = enumerate_strings(&alg, caps.string_length)?;
        let modules = strings.iter().map(|w| w.module(&alg, p)).collect();
        let projectives = (0..alg.vertex_count()).map(|v| projective(&alg, p, v)).collect();
        Ok(ModuleCategory { alg, p, caps, strings, modules, projectives, caches: Caches::default() })
    }

    pub fn algebra(&self) -> &MonomialAlgebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> Arc<MonomialAlgebra> {
        Arc::clone(&self.alg)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    /// Number of indecomposables.
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn strings(&self) -> &[StringWord] {
        &self.strings
    }

    pub fn string(&self, id: usize) -> &StringWord {
        &self.strings[id]
    }

    pub fn module(&self, id: usize) -> &Representation {
        &self.modules[id]
    }

    pub fn projective(&self, v: usize) -> &Representation {
        &self.projectives[v]
    }

    pub fn name(&self, id: usize) -> String {
        self.strings[id].format(&self.alg)
    }

    pub fn describe(&self, class: &ModuleClass) -> String {
        if class.is_zero() {
            return "0".into();
        }
        class.ids().iter().map(|&i| self.name(i)).collect::<Vec<_>>().join(" + ")
    }

    /// Catalog index of a string given in word syntax.
    pub fn lookup(&self, text: &str) -> Result<usize> {
        let w = StringWord::parse(&self.alg, text)?;
        if !w.is_valid(&self.alg) {
            return Err(Error::Invalid(format!("`{text}` is not a string")));
        }
        let c = w.canonical(&self.alg);
        self.strings
            .iter()
            .position(|s| *s == c)
            .ok_or_else(|| Error::Invalid(format!("`{text}` is not in the catalog")))
    }

    pub fn dim_vector(&self, id: usize) -> &[usize] {
        self.modules[id].dims()
    }

    pub fn length(&self, id: usize) -> usize {
        self.modules[id].total_dim()
    }

    pub fn class_length(&self, class: &ModuleClass) -> usize {
        class.ids().iter().map(|&i| self.length(i)).sum()
    }

    pub fn class_dim_vector(&self, class: &ModuleClass) -> Vec<usize> {
        let mut out = vec![0; self.alg.vertex_count()];
        for &i in class.ids() {
            for (o, d) in out.iter_mut().zip(self.dim_vector(i)) {
                *o += d;
            }
        }
        out
    }

    pub fn max_length(&self) -> usize {
        (0..self.len()).map(|i| self.length(i)).max().unwrap_or(0)
    }

    pub fn realize(&self, class: &ModuleClass) -> Representation {
        let parts: Vec<&Representation> = class.ids().iter().map(|&i| &self.modules[i]).collect();
        if parts.is_empty() {
            return Representation::zero(&self.alg, self.p);
        }
        Representation::direct_sum(&self.alg, self.p, &parts)
    }

    pub fn hom_basis(&self, m: &Representation, n: &Representation) -> Vec<Morphism> {
        hom_basis(&self.alg, m, n)
    }

    pub fn hom_dim_reps(&self, m: &Representation, n: &Representation) -> usize {
        hom_basis(&self.alg, m, n).len()
    }

    /// dim Hom between catalog modules, cached.
    pub fn hom(&self, i: usize, j: usize) -> usize {
        if let Some(&d) = self.caches.hom.lock().unwrap().get(&(i, j)) {
            return d;
        }
        let d = self.hom_dim_reps(&self.modules[i], &self.modules[j]);
        self.caches.hom.lock().unwrap().insert((i, j), d);
        d
    }

    pub fn class_hom(&self, a: &ModuleClass, b: &ModuleClass) -> usize {
        a.ids().iter().map(|&i| b.ids().iter().map(|&j| self.hom(i, j)).sum::<usize>()).sum()
    }

    /// Decomposes a module into catalog indecomposables by peeling off split
    /// summands: `X` is a summand of `M` exactly when some composite
    /// `X -> M -> X` of basis maps is invertible.
    pub fn decompose(&self, m: &Representation) -> Result<ModuleClass> {
        let mut out = Vec::new();
        let mut cur = m.clone();
        'peel: while !cur.is_zero() {
            for id in (0..self.len()).rev() {
                let x = &self.modules[id];
                if x.dims().iter().zip(cur.dims()).any(|(a, b)| a > b) {
                    continue;
                }
                let ins = hom_basis(&self.alg, x, &cur);
                if ins.is_empty() {
                    continue;
                }
                let outs = hom_basis(&self.alg, &cur, x);
                for r in &outs {
                    for i in &ins {
                        if r.after(i).is_iso() {
                            out.push(id);
                            cur = kernel(&self.alg, &cur, r).0;
                            continue 'peel;
                        }
                    }
                }
            }
            return Err(Error::Invariant("module has a summand outside the catalog".into()));
        }
        Ok(ModuleClass::new(out))
    }

    /// Isomorphism test by search for an invertible intertwiner.
    pub fn iso_test(&self, m: &Representation, n: &Representation) -> Result<bool> {
        if m.dims() != n.dims() {
            return Ok(false);
        }
        let basis = hom_basis(&self.alg, m, n);
        if basis.len() != hom_basis(&self.alg, n, m).len() || basis.len() != hom_basis(&self.alg, m, m).len() {
            return Ok(false);
        }
        if m.is_zero() {
            return Ok(true);
        }
        if basis.len() > self.caps.hom_dim {
            return Err(Error::Resource(format!("Hom dimension {} above cap {}", basis.len(), self.caps.hom_dim)));
        }
        Ok(for_each_combination(basis.len(), self.p, |c| Morphism::combination(&basis, c, m, n).is_iso()))
    }

    /// Auslander's invariant: dim Hom(X, M) for every indecomposable X.
    pub fn hom_signature(&self, m: &Representation) -> Vec<usize> {
        self.modules.iter().map(|x| self.hom_dim_reps(x, m)).collect()
    }

    pub fn presentation(&self, m: &Representation) -> Presentation {
        let alg = &self.alg;
        let mut tops: Vec<(usize, Vec<u32>)> = Vec::new();
        for v in 0..alg.vertex_count() {
            let d = m.dim(v);
            if d == 0 {
                continue;
            }
            let mut rad = Matrix::zeros(d, 0, self.p);
            for (i, a) in alg.arrows().iter().enumerate() {
                if a.target == v {
                    rad = rad.hstack(m.map(i));
                }
            }
            for idx in rad.complement_indices() {
                let mut e = vec![0u32; d];
                e[idx] = 1;
                tops.push((v, e));
            }
        }
        let parts: Vec<&Representation> = tops.iter().map(|(v, _)| &self.projectives[*v]).collect();
        let p0 = if parts.is_empty() {
            Representation::zero(alg, self.p)
        } else {
            Representation::direct_sum(alg, self.p, &parts)
        };
        let mut blocks: Vec<Matrix> = (0..alg.vertex_count()).map(|w| Matrix::zeros(m.dim(w), 0, self.p)).collect();
        for (v, x) in &tops {
            let xv = Matrix::from_columns(m.dim(*v), self.p, std::slice::from_ref(x));
            for (w, block) in blocks.iter_mut().enumerate() {
                let cols: Vec<Vec<u32>> = alg
                    .paths()
                    .iter()
                    .filter(|path| path.source == *v && path.target == w)
                    .map(|path| m.path_action(*v, &path.arrows).mul(&xv).column(0))
                    .collect();
                *block = block.hstack(&Matrix::from_columns(m.dim(w), self.p, &cols));
            }
        }
        let cover = Morphism { blocks };
        let (omega, inclusion) = kernel(alg, &p0, &cover);
        Presentation { p0, cover, omega, inclusion }
    }
}

/// The indecomposable projective at `v`, with the relation-free paths from
/// `v` as basis.
fn projective(alg: &MonomialAlgebra, p: u32, v: usize) -> Representation {
    let paths: Vec<&crate::algebra::Path> = alg.paths().iter().filter(|q| q.source == v).collect();
    let mut dims = vec![0usize; alg.vertex_count()];
    let mut index = Vec::with_capacity(paths.len());
    for q in &paths {
        index.push(dims[q.target]);
        dims[q.target] += 1;
    }
    let mut maps: Vec<Matrix> = alg.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source], p)).collect();
    for (k, q) in paths.iter().enumerate() {
        for (ai, a) in alg.arrows().iter().enumerate() {
            if a.source != q.target {
                continue;
            }
            let mut longer = q.arrows.clone();
            longer.push(ai);
            if let Some(j) = paths.iter().position(|r| r.arrows == longer && r.source == v) {
                maps[ai].set(index[j], index[k], 1);
            }
        }
    }
    Representation::new(p, dims, maps)
}
