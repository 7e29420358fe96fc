//! Irreducible highest-weight modules: characters, dimensions and explicit
//! exact realizations.
//!
//! A realization is built weight space by weight space, descending from the
//! highest weight. A vector of the Verma module vanishes in the irreducible
//! quotient exactly when every raising operator kills it, so each weight
//! space is identified with the image of the candidates `F_i b` under the
//! stacked raising operators. No Gram matrix is needed for that step; the
//! contravariant form is computed afterwards by the usual recursion.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::rat::{q, Q};
use crate::rootsys::{RootSystem, Weight};

/// Default bound on the dimension of realized modules.
pub const DEFAULT_CAP: u64 = 512;

/// Multiplicities of the dominant weights of `L(λ)`, in Dynkin labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantCharacter {
    pub highest: Vec<i64>,
    pub mults: BTreeMap<Vec<i64>, u64>,
}

impl DominantCharacter {
    /// Multiplicity of an arbitrary weight, via its dominant representative.
    pub fn multiplicity(&self, rs: &RootSystem, labels: &[i64]) -> u64 {
        let dom = rs.to_dominant_labels(labels).dominant;
        self.mults.get(&dom).copied().unwrap_or(0)
    }

    /// Dimension as the orbit-weighted sum of dominant multiplicities.
    pub fn dim(&self, rs: &RootSystem) -> u64 {
        self.mults.iter().map(|(w, m)| m * rs.orbit_size(w) as u64).sum()
    }

    /// Every weight with its multiplicity.
    pub fn all_weights(&self, rs: &RootSystem) -> Vec<(Vec<i64>, u64)> {
        let mut out = Vec::new();
        for (w, &m) in &self.mults {
            for v in rs.orbit(w) {
                out.push((v, m));
            }
        }
        out.sort();
        out
    }
}

/// Dominant weights below `λ`, ordered by depth, with their depths.
fn dominant_weights_below(rs: &RootSystem, lambda: &[i64]) -> Vec<(Vec<i64>, i64)> {
    let mut depth: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    depth.insert(lambda.to_vec(), 0);
    let mut stack = vec![lambda.to_vec()];
    while let Some(mu) = stack.pop() {
        let d = depth[&mu];
        for (k, alpha) in rs.positive_root_labels.iter().enumerate() {
            let next: Vec<i64> = mu.iter().zip(alpha).map(|(a, b)| a - b).collect();
            if RootSystem::is_dominant_labels(&next) && !depth.contains_key(&next) {
                depth.insert(next.clone(), d + RootSystem::height(&rs.positive_roots[k]));
                stack.push(next);
            }
        }
    }
    let mut v: Vec<(Vec<i64>, i64)> = depth.into_iter().collect();
    v.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    v
}

/// Freudenthal's recursion over the dominant weights of `L(λ)`.
pub fn full_character(rs: &RootSystem, lambda: &[i64], cap: u64) -> Result<DominantCharacter> {
    if !RootSystem::is_dominant_labels(lambda) || lambda.len() != rs.rank() {
        return Err(Error::NotDominant(alloc::format!("{lambda:?}")));
    }
    let dim = rs.weyl_dimension(lambda);
    if dim > cap {
        return Err(Error::CapExceeded { dim, cap });
    }
    Ok(freudenthal(rs, lambda))
}

pub(crate) fn freudenthal(rs: &RootSystem, lambda: &[i64]) -> DominantCharacter {
    let n = rs.rank();
    let rho = vec![1i64; n];
    let shift = |v: &[i64]| -> Vec<i64> { v.iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let lr = shift(lambda);
    let top = rs.inner_scaled(&lr, &lr);
    let mut mults: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for (mu, _) in dominant_weights_below(rs, lambda) {
        if mu == lambda {
            mults.insert(mu, 1);
            continue;
        }
        let mr = shift(&mu);
        let denom = top - rs.inner_scaled(&mr, &mr);
        let mut num: i64 = 0;
        for alpha in &rs.positive_root_labels {
            let mut w: Vec<i64> = mu.clone();
            loop {
                for (x, a) in w.iter_mut().zip(alpha) {
                    *x += a;
                }
                let dom = rs.to_dominant_labels(&w).dominant;
                let Some(&m) = mults.get(&dom) else { break };
                num += 2 * m as i64 * rs.inner_scaled(&w, alpha);
            }
        }
        debug_assert!(denom > 0 && num % denom == 0);
        let m = num / denom;
        if m > 0 {
            mults.insert(mu, m as u64);
        }
    }
    DominantCharacter { highest: lambda.to_vec(), mults }
}

/// `dim L(λ)[μ]` for weights given as [`Weight`]s.
pub fn weight_multiplicity(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<u64> {
    let l = rs.dominant_labels(lambda)?;
    let Some(m) = rs.labels(mu) else { return Ok(0) };
    // μ must differ from λ by an integral combination of roots.
    if rs.root_difference(&l, &m).is_none() {
        return Ok(0);
    }
    Ok(freudenthal(rs, &l).multiplicity(rs, &m))
}

/// One weight space of a realized module.
#[derive(Clone, Debug)]
pub struct Block {
    pub weight: Vec<i64>,
    pub depth: usize,
    pub dim: usize,
    /// Position of the first basis vector in the global basis.
    pub offset: usize,
    /// `raise[i] = (target block, matrix)` for `E_i`, when the target exists.
    pub raise: Vec<Option<(usize, Mat)>>,
    /// `lower[i] = (target block, matrix)` for `F_i`, when the target exists.
    pub lower: Vec<Option<(usize, Mat)>>,
    /// Contravariant form restricted to this weight space.
    pub gram: Mat,
    /// Basis vector `p` equals `F_i` applied to vector `q` of the block above.
    pub parents: Vec<Option<(usize, usize)>>,
}

/// Exact matrices for the Chevalley generators on a weight basis of `L(λ)`.
#[derive(Clone, Debug)]
pub struct ModuleRealization {
    pub highest: Vec<i64>,
    pub rank: usize,
    pub blocks: Vec<Block>,
    index: BTreeMap<Vec<i64>, usize>,
    dim: usize,
}

fn apply(m: &Mat, v: &[Q]) -> Vec<Q> {
    linalg::mat_vec(m, v)
}

impl ModuleRealization {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn block_of(&self, weight: &[i64]) -> Option<usize> {
        self.index.get(weight).copied()
    }

    pub fn weight_dim(&self, weight: &[i64]) -> usize {
        self.block_of(weight).map_or(0, |b| self.blocks[b].dim)
    }

    /// Weight of every global basis vector.
    pub fn basis_weights(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(self.dim);
        for b in &self.blocks {
            for _ in 0..b.dim {
                out.push(b.weight.clone());
            }
        }
        out
    }

    /// `E_i` on a vector of block `b`; `None` when the target weight is absent.
    pub fn raise(&self, i: usize, b: usize, v: &[Q]) -> Option<(usize, Vec<Q>)> {
        self.blocks[b].raise[i].as_ref().map(|(t, m)| (*t, apply(m, v)))
    }

    /// `F_i` on a vector of block `b`; `None` when the target weight is absent.
    pub fn lower(&self, i: usize, b: usize, v: &[Q]) -> Option<(usize, Vec<Q>)> {
        self.blocks[b].lower[i].as_ref().map(|(t, m)| (*t, apply(m, v)))
    }

    fn dense(&self, pick: impl Fn(&Block) -> Option<(usize, &Mat)>) -> Mat {
        let mut out = linalg::zeros(self.dim, self.dim);
        for b in &self.blocks {
            if let Some((t, m)) = pick(b) {
                let to = self.blocks[t].offset;
                for (r, row) in m.iter().enumerate() {
                    for (c, x) in row.iter().enumerate() {
                        out[to + r][b.offset + c] = x.clone();
                    }
                }
            }
        }
        out
    }

    pub fn dense_e(&self, i: usize) -> Mat {
        self.dense(|b| b.raise[i].as_ref().map(|(t, m)| (*t, m)))
    }

    pub fn dense_f(&self, i: usize) -> Mat {
        self.dense(|b| b.lower[i].as_ref().map(|(t, m)| (*t, m)))
    }

    pub fn dense_h(&self, i: usize) -> Mat {
        let mut out = linalg::zeros(self.dim, self.dim);
        for b in &self.blocks {
            for k in 0..b.dim {
                out[b.offset + k][b.offset + k] = q(b.weight[i]);
            }
        }
        out
    }

    pub fn dense_gram(&self) -> Mat {
        let mut out = linalg::zeros(self.dim, self.dim);
        for b in &self.blocks {
            for (r, row) in b.gram.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    out[b.offset + r][b.offset + c] = x.clone();
                }
            }
        }
        out
    }

    /// Contravariant pairing of two vectors in block `b`.
    pub fn pair(&self, b: usize, x: &[Q], y: &[Q]) -> Q {
        linalg::form(&self.blocks[b].gram, x, y)
    }
}

/// Realizes `L(λ)` with exact matrices, refusing modules above `cap`.
pub fn realize_module(rs: &RootSystem, lambda: &[i64], cap: u64) -> Result<ModuleRealization> {
    if !RootSystem::is_dominant_labels(lambda) || lambda.len() != rs.rank() {
        return Err(Error::NotDominant(alloc::format!("{lambda:?}")));
    }
    let dim = rs.weyl_dimension(lambda);
    if dim > cap {
        return Err(Error::CapExceeded { dim, cap });
    }
    Ok(realize_unchecked(rs, lambda))
}

pub fn realize_weight(rs: &RootSystem, lambda: &Weight, cap: u64) -> Result<ModuleRealization> {
    let l = rs.dominant_labels(lambda)?;
    realize_module(rs, &l, cap)
}

fn realize_unchecked(rs: &RootSystem, lambda: &[i64]) -> ModuleRealization {
    let n = rs.rank();
    let alpha = |i: usize| rs.simple_root_labels(i);
    let sub = |w: &[i64], i: usize| -> Vec<i64> { w.iter().zip(alpha(i)).map(|(a, b)| a - b).collect() };
    let add = |w: &[i64], i: usize| -> Vec<i64> { w.iter().zip(alpha(i)).map(|(a, b)| a + b).collect() };

    let mut blocks: Vec<Block> = vec![Block {
        weight: lambda.to_vec(),
        depth: 0,
        dim: 1,
        offset: 0,
        raise: vec![None; n],
        lower: vec![None; n],
        gram: vec![vec![Q::from_integer(1.into())]],
        parents: vec![None],
    }];
    let mut index: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    index.insert(lambda.to_vec(), 0);
    let mut level: Vec<usize> = vec![0];
    let mut depth = 0;
    let mut offset = 1;

    while !level.is_empty() {
        depth += 1;
        let mut targets: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
        for &b in &level {
            for i in 0..n {
                targets.insert(sub(&blocks[b].weight, i), ());
            }
        }
        let mut next_level = Vec::new();
        for (nu, _) in targets {
            // Candidates F_i b_p with b_p a basis vector of ν + α_i.
            let mut cands: Vec<(usize, usize, usize)> = Vec::new();
            for i in 0..n {
                if let Some(&src) = index.get(&add(&nu, i)) {
                    for p in 0..blocks[src].dim {
                        cands.push((i, src, p));
                    }
                }
            }
            // Row layout of Φ: one segment per existing ν + α_j.
            let mut segs: Vec<(usize, usize, usize)> = Vec::new();
            let mut rows = 0;
            for j in 0..n {
                if let Some(&up) = index.get(&add(&nu, j)) {
                    segs.push((j, up, rows));
                    rows += blocks[up].dim;
                }
            }
            let mut phi = linalg::zeros(rows, cands.len());
            for (c, &(i, src, p)) in cands.iter().enumerate() {
                for &(j, up, row0) in &segs {
                    // E_j F_i b = F_i E_j b + δ_ij <ν+α_i, α_i∨> b.
                    let mut col = vec![Q::zero(); blocks[up].dim];
                    if let Some((mid, m)) = &blocks[src].raise[j] {
                        let ejb: Vec<Q> = m.iter().map(|row| row[p].clone()).collect();
                        if let Some((t, fm)) = &blocks[*mid].lower[i] {
                            debug_assert_eq!(*t, up);
                            let v = apply(fm, &ejb);
                            for (x, y) in col.iter_mut().zip(v) {
                                *x += y;
                            }
                        }
                    }
                    if i == j {
                        col[p] += q(blocks[src].weight[i]);
                    }
                    for (r, x) in col.into_iter().enumerate() {
                        phi[row0 + r][c] = x;
                    }
                }
            }
            let mut red = phi.clone();
            let pivots = linalg::rref(&mut red);
            if pivots.is_empty() {
                continue;
            }
            let d = pivots.len();
            let me = blocks.len();
            // F_i from each source block: column of candidate c in the pivot basis.
            let mut lower_maps: BTreeMap<usize, (usize, Mat)> = BTreeMap::new();
            for (c, &(i, src, p)) in cands.iter().enumerate() {
                let entry = lower_maps.entry(src).or_insert_with(|| (i, linalg::zeros(d, blocks[src].dim)));
                for k in 0..d {
                    entry.1[k][p] = red[k][c].clone();
                }
            }
            let mut raise = vec![None; n];
            for &(j, up, row0) in &segs {
                let m: Mat = (0..blocks[up].dim)
                    .map(|r| pivots.iter().map(|&c| phi[row0 + r][c].clone()).collect())
                    .collect();
                raise[j] = Some((up, m));
            }
            let parents: Vec<Option<(usize, usize)>> = pivots
                .iter()
                .map(|&c| {
                    let (i, _, p) = cands[c];
                    Some((i, p))
                })
                .collect();
            for (src, (i, m)) in lower_maps {
                blocks[src].lower[i] = Some((me, m));
            }
            // Gram: <F_i b, c> = <b, E_i c>.
            let mut gram = linalg::zeros(d, d);
            for (r, &pc) in pivots.iter().enumerate() {
                let (i, src, p) = cands[pc];
                let (_, em) = raise[i].as_ref().expect("parent weight exists");
                let gsrc = &blocks[src].gram;
                for c in 0..d {
                    let eic: Vec<Q> = em.iter().map(|row| row[c].clone()).collect();
                    let mut s = Q::zero();
                    for (k, x) in eic.iter().enumerate() {
                        if !x.is_zero() && !gsrc[p][k].is_zero() {
                            s += &gsrc[p][k] * x;
                        }
                    }
                    gram[r][c] = s;
                }
            }
            blocks.push(Block {
                weight: nu.clone(),
                depth,
                dim: d,
                offset,
                raise,
                lower: vec![None; n],
                gram,
                parents,
            });
            offset += d;
            index.insert(nu, me);
            next_level.push(me);
        }
        level = next_level;
    }
    ModuleRealization { highest: lambda.to_vec(), rank: n, blocks, index, dim: offset }
}

/// Ordered basis of `(L(a) ⊗ L(b))[w]`: pairs of blocks with their offsets.
#[derive(Clone, Debug)]
pub struct TensorWeightSpace {
    pub parts: Vec<(usize, usize, usize)>,
    pub dim: usize,
}

impl TensorWeightSpace {
    pub fn new(a: &ModuleRealization, b: &ModuleRealization, w: &[i64]) -> Self {
        let mut parts = Vec::new();
        let mut dim = 0;
        for (ka, blk) in a.blocks.iter().enumerate() {
            let rest: Vec<i64> = w.iter().zip(&blk.weight).map(|(x, y)| x - y).collect();
            if let Some(kb) = b.block_of(&rest) {
                parts.push((ka, kb, dim));
                dim += blk.dim * b.blocks[kb].dim;
            }
        }
        TensorWeightSpace { parts, dim }
    }

    fn find(&self, ka: usize) -> Option<(usize, usize)> {
        self.parts.iter().find(|p| p.0 == ka).map(|p| (p.1, p.2))
    }

    /// Coordinates of `x ⊗ y` for `x` in block `ka` of `a`, `y` in block `kb` of `b`.
    pub fn embed_pure(&self, a: &ModuleRealization, b: &ModuleRealization, ka: usize, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        let (kb, off) = self.find(ka).expect("block pair in this weight space");
        let db = b.blocks[kb].dim;
        let _ = a;
        for (r, xr) in x.iter().enumerate() {
            if xr.is_zero() {
                continue;
            }
            for (s, ys) in y.iter().enumerate() {
                if !ys.is_zero() {
                    out[off + r * db + s] = xr * ys;
                }
            }
        }
        out
    }
}

/// Applies `X ⊗ 1 + 1 ⊗ X` for `X = E_i` (`raise`) or `F_i` to a tensor weight vector.
pub fn tensor_step(
    a: &ModuleRealization,
    b: &ModuleRealization,
    src: &TensorWeightSpace,
    dst: &TensorWeightSpace,
    i: usize,
    raise: bool,
    v: &[Q],
) -> Vec<Q> {
    let mut out = vec![Q::zero(); dst.dim];
    let op = |m: &ModuleRealization, blk: usize, x: &[Q]| if raise { m.raise(i, blk, x) } else { m.lower(i, blk, x) };
    for &(ka, kb, off) in &src.parts {
        let da = a.blocks[ka].dim;
        let db = b.blocks[kb].dim;
        for r in 0..da {
            for s in 0..db {
                let c = &v[off + r * db + s];
                if c.is_zero() {
                    continue;
                }
                let mut ex = vec![Q::zero(); da];
                ex[r] = Q::from_integer(1.into());
                let mut ey = vec![Q::zero(); db];
                ey[s] = Q::from_integer(1.into());
                if let Some((ta, ax)) = op(a, ka, &ex) {
                    if let Some((_, toff)) = dst.find(ta) {
                        let tdb = b.blocks[kb].dim;
                        for (r2, x) in ax.iter().enumerate() {
                            if !x.is_zero() {
                                out[toff + r2 * tdb + s] += c * x;
                            }
                        }
                    }
                }
                if let Some((tb, by)) = op(b, kb, &ey) {
                    if let Some((_, toff)) = dst.find(ka) {
                        let tdb = b.blocks[tb].dim;
                        for (s2, y) in by.iter().enumerate() {
                            if !y.is_zero() {
                                out[toff + r * tdb + s2] += c * y;
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Tensor Gram matrix `(G_a ⊗ G_b)` on one weight space.
fn tensor_gram_apply(a: &ModuleRealization, b: &ModuleRealization, sp: &TensorWeightSpace, v: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); sp.dim];
    for &(ka, kb, off) in &sp.parts {
        let ga = &a.blocks[ka].gram;
        let gb = &b.blocks[kb].gram;
        let da = ga.len();
        let db = gb.len();
        for r in 0..da {
            for s in 0..db {
                let mut acc = Q::zero();
                for r2 in 0..da {
                    if ga[r][r2].is_zero() {
                        continue;
                    }
                    for s2 in 0..db {
                        let x = &v[off + r2 * db + s2];
                        if !x.is_zero() && !gb[s][s2].is_zero() {
                            acc += &ga[r][r2] * &gb[s][s2] * x;
                        }
                    }
                }
                out[off + r * db + s] = acc;
            }
        }
    }
    out
}

/// A module map `L(a) ⊗ L(b) → L(c)`, stored through the adjoint embedding
/// `ι: L(c) → L(a) ⊗ L(b)`.
#[derive(Clone, Debug)]
pub struct Intertwiner {
    pub a: Arc<ModuleRealization>,
    pub b: Arc<ModuleRealization>,
    pub c: Arc<ModuleRealization>,
    spaces: Vec<TensorWeightSpace>,
    /// For each block of `c`, the images of its basis vectors.
    iota: Vec<Vec<Vec<Q>>>,
}

impl Intertwiner {
    /// The highest-weight vector that spans the image of `ι` at the top.
    pub fn highest_vector(&self) -> &[Q] {
        &self.iota[0][0]
    }

    pub fn space(&self, c_block: usize) -> &TensorWeightSpace {
        &self.spaces[c_block]
    }

    /// `T` applied to a vector of `(L(a) ⊗ L(b))[w]`, where `w` is the weight
    /// of block `c_block` of `L(c)`.
    pub fn apply(&self, c_block: usize, t: &[Q]) -> Vec<Q> {
        let sp = &self.spaces[c_block];
        let gt = tensor_gram_apply(&self.a, &self.b, sp, t);
        let rhs: Vec<Q> = self.iota[c_block].iter().map(|col| linalg::dot(col, &gt)).collect();
        let g = &self.c.blocks[c_block].gram;
        linalg::solve(g, &rhs, g.len()).expect("positive definite form")
    }

    /// `T(x ⊗ y)`; returns the target block and vector, or `None` if the
    /// weight of `x ⊗ y` is not a weight of `L(c)`.
    pub fn apply_pure(&self, ka: usize, x: &[Q], kb: usize, y: &[Q]) -> Option<(usize, Vec<Q>)> {
        let w: Vec<i64> = self.a.blocks[ka].weight.iter().zip(&self.b.blocks[kb].weight).map(|(p, q)| p + q).collect();
        let cb = self.c.block_of(&w)?;
        let t = self.spaces[cb].embed_pure(&self.a, &self.b, ka, x, y);
        Some((cb, self.apply(cb, &t)))
    }

    /// Full matrix with columns indexed by `(i, j) -> i * dim(b) + j`.
    pub fn to_dense(&self) -> Mat {
        let (da, db) = (self.a.dim(), self.b.dim());
        let mut out = linalg::zeros(self.c.dim(), da * db);
        for (ka, ba) in self.a.blocks.iter().enumerate() {
            for (kb, bb) in self.b.blocks.iter().enumerate() {
                for r in 0..ba.dim {
                    for s in 0..bb.dim {
                        let mut x = vec![Q::zero(); ba.dim];
                        x[r] = Q::from_integer(1.into());
                        let mut y = vec![Q::zero(); bb.dim];
                        y[s] = Q::from_integer(1.into());
                        if let Some((cb, v)) = self.apply_pure(ka, &x, kb, &y) {
                            let off = self.c.blocks[cb].offset;
                            for (k, val) in v.into_iter().enumerate() {
                                out[off + k][(ba.offset + r) * db + bb.offset + s] = val;
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Highest-weight vectors of weight `w` in `L(a) ⊗ L(b)`.
pub fn highest_weight_vectors(a: &ModuleRealization, b: &ModuleRealization, w: &[i64], rs: &RootSystem) -> Mat {
    let sp = TensorWeightSpace::new(a, b, w);
    if sp.dim == 0 {
        return Vec::new();
    }
    let mut stacked: Mat = Vec::new();
    for i in 0..rs.rank() {
        let up: Vec<i64> = w.iter().zip(rs.simple_root_labels(i)).map(|(x, y)| x + y).collect();
        let dst = TensorWeightSpace::new(a, b, &up);
        if dst.dim == 0 {
            continue;
        }
        let mut cols: Vec<Vec<Q>> = Vec::with_capacity(sp.dim);
        for k in 0..sp.dim {
            let mut e = vec![Q::zero(); sp.dim];
            e[k] = Q::from_integer(1.into());
            cols.push(tensor_step(a, b, &sp, &dst, i, true, &e));
        }
        for r in 0..dst.dim {
            stacked.push(cols.iter().map(|c| c[r].clone()).collect());
        }
    }
    if stacked.is_empty() {
        return linalg::identity(sp.dim);
    }
    linalg::nullspace(&stacked, sp.dim)
}

/// Basis of `Hom(L(a) ⊗ L(b), L(c))`.
pub fn hom_space_basis(
    rs: &RootSystem,
    a: &Arc<ModuleRealization>,
    b: &Arc<ModuleRealization>,
    c: &Arc<ModuleRealization>,
) -> Vec<Intertwiner> {
    let hw = highest_weight_vectors(a, b, &c.highest, rs);
    let spaces: Vec<TensorWeightSpace> = c.blocks.iter().map(|blk| TensorWeightSpace::new(a, b, &blk.weight)).collect();
    hw.into_iter()
        .map(|h| {
            let mut iota: Vec<Vec<Vec<Q>>> = Vec::with_capacity(c.blocks.len());
            iota.push(vec![h]);
            for (k, blk) in c.blocks.iter().enumerate().skip(1) {
                let mut cols = Vec::with_capacity(blk.dim);
                for parent in &blk.parents {
                    let (i, p) = parent.expect("non-top vectors have parents");
                    let up: Vec<i64> = blk.weight.iter().zip(rs.simple_root_labels(i)).map(|(x, y)| x + y).collect();
                    let src = c.block_of(&up).expect("parent block");
                    let v = tensor_step(a, b, &spaces[src], &spaces[k], i, false, &iota[src][p]);
                    cols.push(v);
                }
                iota.push(cols);
            }
            Intertwiner { a: a.clone(), b: b.clone(), c: c.clone(), spaces: spaces.clone(), iota }
        })
        .collect()
}
