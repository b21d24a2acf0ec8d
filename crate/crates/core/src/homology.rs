//! Ext groups, extensions, bricks, filtration closures and minimal
//! approximations.

use crate::category::{ModuleCategory, ModuleClass};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rep::{cokernel, for_each_combination, kernel, Morphism, Representation};
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

/// A short exact sequence `0 -> N -> E -> M -> 0`.
#[derive(Debug, Clone)]
pub struct Extension {
    pub middle: Representation,
    pub sub: Morphism,
    pub quot: Morphism,
}

/// The result of a minimal approximation `T -> U` or `U -> T`.
#[derive(Debug, Clone)]
pub struct Approximation {
    pub object: Representation,
    pub map: Morphism,
    pub class: ModuleClass,
}

impl Approximation {
    pub fn is_mono(&self) -> bool {
        self.map.is_injective()
    }

    pub fn is_epi(&self) -> bool {
        self.map.is_surjective()
    }
}

fn leq(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn subspace_key(blocks: &[Matrix]) -> Vec<Vec<u32>> {
    blocks
        .iter()
        .map(|b| {
            let (r, piv) = b.transpose().rref();
            r.entries()[..piv.len() * r.cols()].to_vec()
        })
        .collect()
}

impl ModuleCategory {
    /// dim Ext^1(M, N) from a projective presentation of `M`.
    pub fn ext_dim_reps(&self, m: &Representation, n: &Representation) -> usize {
        let pres = self.presentation(m);
        self.hom_dim_reps(&pres.omega, n) + self.hom_dim_reps(m, n) - self.hom_dim_reps(&pres.p0, n)
    }

    /// dim Ext^1 between catalog modules, cached.
    pub fn ext(&self, i: usize, j: usize) -> usize {
        if let Some(&d) = self.caches.ext.lock().unwrap().get(&(i, j)) {
            return d;
        }
        let d = self.ext_dim_reps(self.module(i), self.module(j));
        self.caches.ext.lock().unwrap().insert((i, j), d);
        d
    }

    pub fn class_ext(&self, a: &ModuleClass, b: &ModuleClass) -> usize {
        a.ids().iter().map(|&i| b.ids().iter().map(|&j| self.ext(i, j)).sum::<usize>()).sum()
    }

    /// Maps `Omega(M) -> N` whose classes form a basis of Ext^1(M, N).
    pub fn ext_basis(&self, m: &Representation, n: &Representation) -> (crate::category::Presentation, Vec<Morphism>) {
        let pres = self.presentation(m);
        let restricted: Vec<Vec<u32>> =
            self.hom_basis(&pres.p0, n).iter().map(|f| f.after(&pres.inclusion).flatten()).collect();
        let candidates = self.hom_basis(&pres.omega, n);
        let width = candidates.first().map_or(0, |f| f.flatten().len());
        let mut span: Vec<Vec<u32>> = restricted;
        let mut rank = rank_of(&span, width, self.p());
        let mut reps = Vec::new();
        for f in candidates {
            span.push(f.flatten());
            let r = rank_of(&span, width, self.p());
            if r > rank {
                rank = r;
                reps.push(f);
            } else {
                span.pop();
            }
        }
        (pres, reps)
    }

    /// Pushout of `Omega -> P0` along `f: Omega -> N`, giving an extension
    /// of `M` by `N`.
    pub fn pushout(&self, pres: &crate::category::Presentation, n: &Representation, f: &Morphism) -> Extension {
        let alg = self.algebra();
        let p = self.p();
        let sum = Representation::direct_sum(alg, p, &[n, &pres.p0]);
        let g = Morphism {
            blocks: f.blocks.iter().zip(&pres.inclusion.blocks).map(|(a, b)| a.vstack(&b.scale(p - 1))).collect(),
        };
        let (middle, proj, lifts) = sum.quotient(alg, &g.blocks);
        let sub = Morphism {
            blocks: (0..alg.vertex_count())
                .map(|v| {
                    let emb = Matrix::identity(n.dim(v), p).vstack(&Matrix::zeros(pres.p0.dim(v), n.dim(v), p));
                    proj.blocks[v].mul(&emb)
                })
                .collect(),
        };
        let quot = Morphism {
            blocks: (0..alg.vertex_count())
                .map(|v| {
                    let m_dim = pres.cover.blocks[v].rows();
                    let onto = Matrix::zeros(m_dim, n.dim(v), p).hstack(&pres.cover.blocks[v]);
                    onto.mul(&lifts[v])
                })
                .collect(),
        };
        Extension { middle, sub, quot }
    }

    /// Middle terms of the non-split extensions of `m` by `n`, i.e. the `E`
    /// with a non-split sequence `n -> E -> m`.
    pub fn ext_middle_terms(&self, m: &Representation, n: &Representation) -> Result<BTreeSet<ModuleClass>> {
        let (pres, reps) = self.ext_basis(m, n);
        self.check_enumeration(reps.len())?;
        let mut out = BTreeSet::new();
        let omega = &pres.omega;
        let mut err = None;
        for_each_combination(reps.len(), self.p(), |c| {
            if c.iter().all(|&x| x == 0) {
                return false;
            }
            let f = Morphism::combination(&reps, c, omega, n);
            let e = self.pushout(&pres, n, &f);
            match self.decompose(&e.middle) {
                Ok(cls) => {
                    out.insert(cls);
                    false
                }
                Err(x) => {
                    err = Some(x);
                    true
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    pub fn ext_middle_terms_ids(&self, m: usize, n: usize) -> Result<BTreeSet<ModuleClass>> {
        self.ext_middle_terms(self.module(m), self.module(n))
    }

    pub(crate) fn check_enumeration(&self, dim: usize) -> Result<()> {
        let size = (self.p() as u64).checked_pow(dim as u32);
        if dim > self.caps().hom_dim || size.is_none_or(|s| s > self.caps().enumeration) {
            return Err(Error::Resource(format!("enumeration of a {dim}-dimensional space over F_{}", self.p())));
        }
        Ok(())
    }

    pub fn is_brick(&self, id: usize) -> bool {
        self.hom(id, id) == 1
    }

    /// Catalog indices of the bricks, in catalog order.
    pub fn bricks(&self) -> Result<Vec<usize>> {
        let out: Vec<usize> = (0..self.len()).filter(|&i| self.is_brick(i)).collect();
        if out.len() > self.caps().bricks {
            return Err(Error::Resource(format!("{} bricks exceed the cap of {}", out.len(), self.caps().bricks)));
        }
        Ok(out)
    }

    pub fn is_semibrick(&self, ids: &[usize]) -> bool {
        ids.iter().all(|&i| self.is_brick(i))
            && ids
                .iter()
                .enumerate()
                .all(|(a, &i)| ids[a + 1..].iter().all(|&j| i != j && self.hom(i, j) == 0 && self.hom(j, i) == 0))
    }

    /// All classes `M / f(Y)` for injective `f: Y -> M`, one per image.
    pub fn quotients_by(&self, y: usize, m: &ModuleClass) -> Result<Arc<Vec<ModuleClass>>> {
        let key = (y, m.clone());
        if let Some(q) = self.caches.quotients.lock().unwrap().get(&key) {
            return Ok(Arc::clone(q));
        }
        let rep = self.realize(m);
        let yrep = self.module(y);
        let mut out = BTreeSet::new();
        if leq(yrep.dims(), rep.dims()) {
            let basis = self.hom_basis(yrep, &rep);
            self.check_enumeration(basis.len())?;
            let mut seen = BTreeSet::new();
            let mut err = None;
            for_each_combination(basis.len(), self.p(), |c| {
                let f = Morphism::combination(&basis, c, yrep, &rep);
                if !f.is_injective() || !seen.insert(subspace_key(&f.blocks)) {
                    return false;
                }
                let (q, _) = cokernel(self.algebra(), &rep, &f);
                match self.decompose(&q) {
                    Ok(cls) => {
                        out.insert(cls);
                        false
                    }
                    Err(e) => {
                        err = Some(e);
                        true
                    }
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        let result = Arc::new(out.into_iter().collect::<Vec<_>>());
        self.caches.quotients.lock().unwrap().insert(key, Arc::clone(&result));
        Ok(result)
    }

    /// Whether `m` has a filtration with all factors in `gens`.
    pub fn in_filt(&self, m: &ModuleClass, gens: &BTreeSet<usize>) -> Result<bool> {
        let mut memo = HashMap::new();
        self.in_filt_memo(m, gens, &mut memo)
    }

    fn in_filt_memo(
        &self,
        m: &ModuleClass,
        gens: &BTreeSet<usize>,
        memo: &mut HashMap<ModuleClass, bool>,
    ) -> Result<bool> {
        if m.is_zero() {
            return Ok(true);
        }
        if let Some(x) = m.as_single() {
            if gens.contains(&x) {
                return Ok(true);
            }
        }
        if let Some(&b) = memo.get(m) {
            return Ok(b);
        }
        let dims = self.class_dim_vector(m);
        let mut found = false;
        for &y in gens {
            if !leq(self.dim_vector(y), &dims) {
                continue;
            }
            for q in self.quotients_by(y, m)?.iter() {
                if self.in_filt_memo(q, gens, memo)? {
                    found = true;
                    break;
                }
            }
            if found {
                break;
            }
        }
        memo.insert(m.clone(), found);
        Ok(found)
    }

    /// Indecomposables in Filt(gens).
    pub fn filt_indecomposables(&self, gens: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
        let mut memo = HashMap::new();
        let mut out = BTreeSet::new();
        for x in 0..self.len() {
            if self.in_filt_memo(&ModuleClass::single(x), gens, &mut memo)? {
                out.insert(x);
            }
        }
        Ok(out)
    }

    /// Column spaces of the images of all maps from `y` into `x`.
    fn image_sum(&self, y: usize, x: usize) -> Arc<Vec<Matrix>> {
        if let Some(m) = self.caches.images.lock().unwrap().get(&(y, x)) {
            return Arc::clone(m);
        }
        let xr = self.module(x);
        let mut blocks: Vec<Matrix> =
            (0..self.algebra().vertex_count()).map(|v| Matrix::zeros(xr.dim(v), 0, self.p())).collect();
        for f in self.hom_basis(self.module(y), xr) {
            for (b, fb) in blocks.iter_mut().zip(&f.blocks) {
                *b = b.hstack(fb);
            }
        }
        let blocks: Vec<Matrix> = blocks.iter().map(Matrix::column_space).collect();
        let out = Arc::new(blocks);
        self.caches.images.lock().unwrap().insert((y, x), Arc::clone(&out));
        out
    }

    /// Whether `x` is a quotient of a direct sum of modules in `gens`.
    pub fn in_fac(&self, x: usize, gens: &BTreeSet<usize>) -> bool {
        let xr = self.module(x);
        (0..self.algebra().vertex_count()).all(|v| {
            let mut acc = Matrix::zeros(xr.dim(v), 0, self.p());
            for &g in gens {
                acc = acc.hstack(&self.image_sum(g, x)[v]);
            }
            acc.rank() == xr.dim(v)
        })
    }

    /// Indecomposables of Filt(Fac(gens)), the smallest torsion class
    /// containing `gens`.
    pub fn filt_fac(&self, gens: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
        let mut class: BTreeSet<usize> = (0..self.len()).filter(|&x| self.in_fac(x, gens)).collect();
        self.extension_closure(&mut class)?;
        Ok(class)
    }

    /// Adds indecomposables `X` with a submodule `Y` in the set and all
    /// summands of `X / Y` in the set, until nothing changes. On a set
    /// closed under quotients this yields the extension closure.
    pub fn extension_closure(&self, class: &mut BTreeSet<usize>) -> Result<()> {
        loop {
            let mut changed = false;
            for x in 0..self.len() {
                if class.contains(&x) {
                    continue;
                }
                let xc = ModuleClass::single(x);
                let mut hit = false;
                for &y in class.iter() {
                    if y == x || !leq(self.dim_vector(y), self.dim_vector(x)) || self.hom(y, x) == 0 {
                        continue;
                    }
                    if self
                        .quotients_by(y, &xc)?
                        .iter()
                        .any(|q| !q.is_zero() && q.ids().iter().all(|i| class.contains(i)))
                    {
                        hit = true;
                        break;
                    }
                }
                if hit {
                    class.insert(x);
                    changed = true;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Minimal left Filt(gens)-approximation of `t`. Starts from the
    /// universal map into a sum of Filt(gens)-indecomposables and passes to
    /// kernels of maps that vanish on the image of `t`; the loop ends when
    /// restriction along the map is injective on Hom(-, X) for every such X,
    /// which forces left minimality.
    pub fn left_min_approx(&self, t: &Representation, gens: &BTreeSet<usize>) -> Result<Approximation> {
        let alg = self.algebra();
        let p = self.p();
        let filt: Vec<usize> = self.filt_indecomposables(gens)?.into_iter().collect();
        let mut parts = Vec::new();
        let mut maps: Vec<Morphism> = Vec::new();
        for &x in &filt {
            for f in self.hom_basis(t, self.module(x)) {
                parts.push(self.module(x));
                maps.push(f);
            }
        }
        let (mut u_obj, mut u) = if parts.is_empty() {
            let z = Representation::zero(alg, p);
            let m = Morphism::zero(t, &z);
            (z, m)
        } else {
            let obj = Representation::direct_sum(alg, p, &parts);
            let blocks = (0..alg.vertex_count())
                .map(|v| {
                    let mut acc = Matrix::zeros(0, t.dim(v), p);
                    for f in &maps {
                        acc = acc.vstack(&f.blocks[v]);
                    }
                    acc
                })
                .collect();
            (obj, Morphism { blocks })
        };
        'shrink: loop {
            for &x in &filt {
                let xr = self.module(x);
                let basis = self.hom_basis(&u_obj, xr);
                if basis.is_empty() {
                    continue;
                }
                let cols: Vec<Vec<u32>> = basis.iter().map(|phi| phi.after(&u).flatten()).collect();
                let width = cols[0].len();
                let dep = Matrix::from_columns(width, p, &cols).null_space();
                if let Some(c) = dep.first() {
                    let f = Morphism::combination(&basis, c, &u_obj, xr);
                    let (k, incl) = kernel(alg, &u_obj, &f);
                    let blocks = (0..alg.vertex_count())
                        .map(|v| incl.blocks[v].solve(&u.blocks[v]).expect("map factors through the kernel"))
                        .collect();
                    u = Morphism { blocks };
                    u_obj = k;
                    continue 'shrink;
                }
            }
            break;
        }
        let class = self.decompose(&u_obj)?;
        Ok(Approximation { object: u_obj, map: u, class })
    }

    /// Minimal right Filt(gens)-approximation of `t`, dual to
    /// [`ModuleCategory::left_min_approx`].
    pub fn right_min_approx(&self, t: &Representation, gens: &BTreeSet<usize>) -> Result<Approximation> {
        let alg = self.algebra();
        let p = self.p();
        let filt: Vec<usize> = self.filt_indecomposables(gens)?.into_iter().collect();
        let mut parts = Vec::new();
        let mut maps: Vec<Morphism> = Vec::new();
        for &x in &filt {
            for f in self.hom_basis(self.module(x), t) {
                parts.push(self.module(x));
                maps.push(f);
            }
        }
        let (mut u_obj, mut u) = if parts.is_empty() {
            let z = Representation::zero(alg, p);
            let m = Morphism::zero(&z, t);
            (z, m)
        } else {
            let obj = Representation::direct_sum(alg, p, &parts);
            let blocks = (0..alg.vertex_count())
                .map(|v| {
                    let mut acc = Matrix::zeros(t.dim(v), 0, p);
                    for f in &maps {
                        acc = acc.hstack(&f.blocks[v]);
                    }
                    acc
                })
                .collect();
            (obj, Morphism { blocks })
        };
        'shrink: loop {
            for &x in &filt {
                let xr = self.module(x);
                let basis = self.hom_basis(xr, &u_obj);
                if basis.is_empty() {
                    continue;
                }
                let cols: Vec<Vec<u32>> = basis.iter().map(|psi| u.after(psi).flatten()).collect();
                let width = cols[0].len();
                let dep = Matrix::from_columns(width, p, &cols).null_space();
                if let Some(c) = dep.first() {
                    let f = Morphism::combination(&basis, c, xr, &u_obj);
                    let (q, _, lifts) = u_obj.quotient(alg, &f.blocks);
                    let blocks = (0..alg.vertex_count()).map(|v| u.blocks[v].mul(&lifts[v])).collect();
                    u = Morphism { blocks };
                    u_obj = q;
                    continue 'shrink;
                }
            }
            break;
        }
        let class = self.decompose(&u_obj)?;
        Ok(Approximation { object: u_obj, map: u, class })
    }

    /// Repeatedly takes the universal extension of `t` by copies of `s`
    /// (sub `s`, quotient the current module) until Ext(E, s) vanishes.
    pub fn left_ext_closure(&self, t: &Representation, s: &Representation) -> Result<Representation> {
        let mut e = t.clone();
        for _ in 0..=self.algebra().dimension() {
            let (pres, reps) = self.ext_basis(&e, s);
            if reps.is_empty() {
                return Ok(e);
            }
            let d = reps.len();
            let copies: Vec<&Representation> = (0..d).map(|_| s).collect();
            let sd = Representation::direct_sum(self.algebra(), self.p(), &copies);
            let f = Morphism {
                blocks: (0..self.algebra().vertex_count())
                    .map(|v| {
                        let mut acc = Matrix::zeros(0, pres.omega.dim(v), self.p());
                        for r in &reps {
                            acc = acc.vstack(&r.blocks[v]);
                        }
                        acc
                    })
                    .collect(),
            };
            e = self.pushout(&pres, &sd, &f).middle;
        }
        Err(Error::Invariant("universal extensions did not stabilize".into()))
    }

    /// Dual of [`ModuleCategory::left_ext_closure`]: extends copies of `s`
    /// (as quotient) by the current module until Ext(s, E) vanishes.
    pub fn right_ext_closure(&self, t: &Representation, s: &Representation) -> Result<Representation> {
        let mut e = t.clone();
        let alg = self.algebra();
        let p = self.p();
        for _ in 0..=alg.dimension() {
            let (pres, reps) = self.ext_basis(s, &e);
            if reps.is_empty() {
                return Ok(e);
            }
            let d = reps.len();
            let p_parts: Vec<&Representation> = (0..d).map(|_| &pres.p0).collect();
            let o_parts: Vec<&Representation> = (0..d).map(|_| &pres.omega).collect();
            let big = crate::category::Presentation {
                p0: Representation::direct_sum(alg, p, &p_parts),
                cover: Morphism {
                    blocks: (0..alg.vertex_count())
                        .map(|v| Matrix::block_diag(&vec![pres.cover.blocks[v].clone(); d], p))
                        .collect(),
                },
                omega: Representation::direct_sum(alg, p, &o_parts),
                inclusion: Morphism {
                    blocks: (0..alg.vertex_count())
                        .map(|v| Matrix::block_diag(&vec![pres.inclusion.blocks[v].clone(); d], p))
                        .collect(),
                },
            };
            let f = Morphism {
                blocks: (0..alg.vertex_count())
                    .map(|v| {
                        let mut acc = Matrix::zeros(e.dim(v), 0, p);
                        for r in &reps {
                            acc = acc.hstack(&r.blocks[v]);
                        }
                        acc
                    })
                    .collect(),
            };
            e = self.pushout(&big, &e, &f).middle;
        }
        Err(Error::Invariant("universal extensions did not stabilize".into()))
    }
}

fn rank_of(vectors: &[Vec<u32>], width: usize, p: u32) -> usize {
    if vectors.is_empty() || width == 0 {
        return 0;
    }
    Matrix::from_columns(width, p, vectors).rank()
}
