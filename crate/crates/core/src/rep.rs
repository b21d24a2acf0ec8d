//! Representations of a bound quiver over F_p and the morphisms between them.
//!
//! An arrow `a: s -> t` acts by a matrix of shape `dim_t x dim_s`. A morphism
//! stores one block per vertex, each of shape `dim_target x dim_source`.

use crate::algebra::MonomialAlgebra;
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    p: u32,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub blocks: Vec<Matrix>,
}

impl Representation {
    pub fn new(p: u32, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Representation { p, dims, maps }
    }

    pub fn zero(alg: &MonomialAlgebra, p: u32) -> Self {
        let dims = vec![0; alg.vertex_count()];
        let maps = alg.arrows().iter().map(|_| Matrix::zeros(0, 0, p)).collect();
        Representation { p, dims, maps }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Checks shapes and that every relation acts as zero.
    pub fn satisfies(&self, alg: &MonomialAlgebra) -> bool {
        for (i, a) in alg.arrows().iter().enumerate() {
            let m = &self.maps[i];
            if m.rows() != self.dims[a.target] || m.cols() != self.dims[a.source] {
                return false;
            }
        }
        alg.relations().iter().all(|r| self.path_action(alg.arrow(r[0]).source, r).is_zero())
    }

    /// Matrix of a path starting at `source`; trivial paths give the identity.
    pub fn path_action(&self, source: usize, arrows: &[usize]) -> Matrix {
        let mut acc = Matrix::identity(self.dims[source], self.p);
        for &a in arrows {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    pub fn direct_sum(alg: &MonomialAlgebra, p: u32, parts: &[&Representation]) -> Representation {
        let n = alg.vertex_count();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|r| r.dims[v]).sum()).collect();
        let maps = (0..alg.arrows().len())
            .map(|a| {
                let blocks: Vec<Matrix> = parts.iter().map(|r| r.maps[a].clone()).collect();
                Matrix::block_diag(&blocks, p)
            })
            .collect();
        Representation { p, dims, maps }
    }

    /// Subrepresentation spanned at each vertex by the columns of `basis[v]`,
    /// which must be independent and closed under the arrows.
    pub fn restrict(&self, alg: &MonomialAlgebra, basis: &[Matrix]) -> Representation {
        let dims: Vec<usize> = basis.iter().map(Matrix::cols).collect();
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let image = self.maps[i].mul(&basis[a.source]);
                basis[a.target].solve(&image).expect("subspace is not closed under the arrows")
            })
            .collect();
        Representation { p: self.p, dims, maps }
    }

    /// Quotient by the subrepresentation spanned by `sub[v]`. Returns the
    /// quotient, the projection, and the complement basis lifting it.
    pub fn quotient(&self, alg: &MonomialAlgebra, sub: &[Matrix]) -> (Representation, Morphism, Vec<Matrix>) {
        let n = alg.vertex_count();
        let mut proj = Vec::with_capacity(n);
        let mut lifts = Vec::with_capacity(n);
        for v in 0..n {
            let w = if sub[v].cols() == 0 { Matrix::zeros(self.dims[v], 0, self.p) } else { sub[v].column_space() };
            let added = w.complement_indices();
            let c = Matrix::from_columns(
                self.dims[v],
                self.p,
                &added
                    .iter()
                    .map(|&i| {
                        let mut e = vec![0; self.dims[v]];
                        e[i] = 1;
                        e
                    })
                    .collect::<Vec<_>>(),
            );
            let full = w.hstack(&c);
            let inv = full.inverse().expect("basis extension is invertible");
            let q = inv.submatrix(w.cols()..self.dims[v], 0..self.dims[v]);
            proj.push(q);
            lifts.push(c);
        }
        let dims: Vec<usize> = lifts.iter().map(Matrix::cols).collect();
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| proj[a.target].mul(&self.maps[i]).mul(&lifts[a.source]))
            .collect();
        (Representation { p: self.p, dims, maps }, Morphism { blocks: proj }, lifts)
    }
}

impl Morphism {
    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let blocks = (0..source.dims.len()).map(|v| Matrix::zeros(target.dims[v], source.dims[v], source.p)).collect();
        Morphism { blocks }
    }

    pub fn identity(m: &Representation) -> Self {
        Morphism { blocks: m.dims.iter().map(|&d| Matrix::identity(d, m.p)).collect() }
    }

    /// `self` after `first`.
    pub fn after(&self, first: &Morphism) -> Morphism {
        Morphism { blocks: self.blocks.iter().zip(&first.blocks).map(|(g, f)| g.mul(f)).collect() }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: u32) -> Morphism {
        Morphism { blocks: self.blocks.iter().map(|b| b.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.rows() == b.cols() && b.rank() == b.rows())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    /// Flattened entries, used to do linear algebra on Hom spaces.
    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.entries().iter().copied()).collect()
    }

    /// Checks the intertwining condition against `alg`.
    pub fn intertwines(&self, alg: &MonomialAlgebra, source: &Representation, target: &Representation) -> bool {
        alg.arrows()
            .iter()
            .enumerate()
            .all(|(i, a)| target.map(i).mul(&self.blocks[a.source]) == self.blocks[a.target].mul(source.map(i)))
    }

    /// Linear combination `sum c_i f_i` of morphisms with the same shape.
    pub fn combination(
        basis: &[Morphism],
        coeffs: &[u32],
        source: &Representation,
        target: &Representation,
    ) -> Morphism {
        let mut acc = Morphism::zero(source, target);
        for (f, &c) in basis.iter().zip(coeffs) {
            if c != 0 {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }
}

/// Basis of Hom(M, N) as the null space of the intertwining equations.
pub fn hom_basis(alg: &MonomialAlgebra, m: &Representation, n: &Representation) -> Vec<Morphism> {
    let p = m.p;
    let nv = alg.vertex_count();
    let mut offsets = Vec::with_capacity(nv + 1);
    let mut total = 0;
    for v in 0..nv {
        offsets.push(total);
        total += n.dims[v] * m.dims[v];
    }
    if total == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (ai, a) in alg.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let ma = &m.maps[ai];
        let na = &n.maps[ai];
        // (N_a F_s - F_t M_a)[i][j] = 0
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![0u32; total];
                for k in 0..n.dims[s] {
                    let c = na.get(i, k);
                    if c != 0 {
                        let idx = offsets[s] + k * m.dims[s] + j;
                        row[idx] = (row[idx] + c) % p;
                    }
                }
                for k in 0..m.dims[t] {
                    let c = ma.get(k, j);
                    if c != 0 {
                        let idx = offsets[t] + i * m.dims[t] + k;
                        row[idx] = (row[idx] + p - c) % p;
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(0, total, p)
    } else {
        let mut sys = Matrix::zeros(rows.len(), total, p);
        for (r, row) in rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if x != 0 {
                    sys.set(r, c, x);
                }
            }
        }
        sys
    };
    system
        .null_space()
        .into_iter()
        .map(|vec| {
            let blocks = (0..nv)
                .map(|v| {
                    let mut b = Matrix::zeros(n.dims[v], m.dims[v], p);
                    for i in 0..n.dims[v] {
                        for j in 0..m.dims[v] {
                            b.set(i, j, vec[offsets[v] + i * m.dims[v] + j]);
                        }
                    }
                    b
                })
                .collect();
            Morphism { blocks }
        })
        .collect()
}

pub fn hom_dim(alg: &MonomialAlgebra, m: &Representation, n: &Representation) -> usize {
    hom_basis(alg, m, n).len()
}

/// Kernel of `f: M -> N` with its inclusion into `M`.
pub fn kernel(alg: &MonomialAlgebra, m: &Representation, f: &Morphism) -> (Representation, Morphism) {
    let basis: Vec<Matrix> = f.blocks.iter().map(Matrix::kernel_matrix).collect();
    let k = m.restrict(alg, &basis);
    (k, Morphism { blocks: basis })
}

/// Image of `f: M -> N` as a subrepresentation of `N`, with its inclusion.
pub fn image(alg: &MonomialAlgebra, n: &Representation, f: &Morphism) -> (Representation, Morphism) {
    let basis: Vec<Matrix> = f.blocks.iter().map(Matrix::column_space).collect();
    let i = n.restrict(alg, &basis);
    (i, Morphism { blocks: basis })
}

/// Cokernel of `f: M -> N` with the projection from `N`.
pub fn cokernel(alg: &MonomialAlgebra, n: &Representation, f: &Morphism) -> (Representation, Morphism) {
    let (c, proj, _) = n.quotient(alg, &f.blocks);
    (c, proj)
}

/// Enumerates every element of the span of `basis` over F_p and stops early
/// when `visit` returns `true`. Returns whether it stopped early.
pub fn for_each_combination(dim: usize, p: u32, mut visit: impl FnMut(&[u32]) -> bool) -> bool {
    let mut coeffs = vec![0u32; dim];
    loop {
        if visit(&coeffs) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == dim {
                return false;
            }
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}
