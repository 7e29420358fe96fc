//! Simply-laced Lie algebras on a Chevalley basis with exact integer
//! structure constants, their compact `*`-structure, embedded subalgebras,
//! Dynkin indices and branching.
//!
//! Basis order: `h_1..h_n`, then `x_β` for the positive roots in the order of
//! [`RootSystem::positive_roots`], then `x_{−β}` in the same order.
//! The bracket is `[x_α, x_β] = ε(α,β) s_α s_β s_{α+β} x_{α+β}` with the
//! bimultiplicative cocycle of [`crate::cocycle`] and `s_γ = ±1` the sign of
//! `γ`, `[x_α, x_{−α}] = h_α`, `[h_i, x_β] = (β|α_i) x_β`.

mod e8;
mod pairing;

pub use e8::{
    complement_bracket_witness, dynkin_embedding_g2_f4, dynkin_word, ComplementWitness, G2F4Embedding,
    WitnessTriple, DYNKIN_TO_BOURBAKI,
};
pub use pairing::{g2_short_root_product, spin_pairing, standard_zero_weight_split, verify_pairing_lemmas, PairingCheck};

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cocycle;
use crate::error::{Error, Result};
use crate::highmod::{self, DominantCharacter};
use crate::linalg::{self, Echelon, Mat};
use crate::rat::{self, q, Q};
use crate::rootsys::{AlgebraId, RootSystem};

/// Sparse integer combination of basis vectors.
pub type Sparse = Vec<(usize, i64)>;

/// A simply-laced simple Lie algebra with exact structure constants.
#[derive(Clone, Debug)]
pub struct StructureAlgebra {
    pub id: AlgebraId,
    pub root_system: RootSystem,
    rank: usize,
    n_pos: usize,
    /// Root coordinates of basis vector `rank + k`.
    roots: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
    table: Vec<Vec<Sparse>>,
}

impl StructureAlgebra {
    pub fn dim(&self) -> usize {
        self.rank + 2 * self.n_pos
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Basis index of `x_β`, if `β` is a root.
    pub fn root_vector_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    /// Root of a basis vector, `None` for the Cartan part.
    pub fn root_of(&self, a: usize) -> Option<&[i64]> {
        (a >= self.rank).then(|| self.roots[a - self.rank].as_slice())
    }

    /// Index of `e_a*`: `h_i* = h_i`, `x_β* = x_{−β}`.
    pub fn star_index(&self, a: usize) -> usize {
        if a < self.rank {
            a
        } else if a < self.rank + self.n_pos {
            a + self.n_pos
        } else {
            a - self.n_pos
        }
    }

    pub fn basis_bracket(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.table[a][b]
    }

    /// Normalized invariant bilinear form on basis vectors.
    pub fn basis_form(&self, a: usize, b: usize) -> i64 {
        if a < self.rank && b < self.rank {
            self.root_system.cartan[a][b]
        } else if a >= self.rank && b == self.star_index(a) {
            1
        } else {
            0
        }
    }

    /// Inner product `(e_a|e_b) = B(e_a*, e_b)` on basis vectors.
    pub fn basis_inner(&self, a: usize, b: usize) -> i64 {
        self.basis_form(self.star_index(a), b)
    }

    /// Dense matrix of the normalized form.
    pub fn form_matrix(&self) -> Mat {
        let d = self.dim();
        (0..d).map(|a| (0..d).map(|b| q(self.basis_form(a, b))).collect()).collect()
    }

    pub fn basis_vector(&self, a: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[a] = Q::one();
        v
    }

    /// The unit raising generator `x_{α_i}`.
    pub fn raising(&self, i: usize) -> Vec<Q> {
        let mut r = vec![0; self.rank];
        r[i] = 1;
        self.basis_vector(self.index[&r])
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = xa * yb;
                for &(k, n) in &self.table[a][b] {
                    out[k] += &c * q(n);
                }
            }
        }
        out
    }

    /// Antilinear involution; coordinates here are rational, so it only
    /// permutes them.
    pub fn star(&self, x: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if !xa.is_zero() {
                out[self.star_index(a)] = xa.clone();
            }
        }
        out
    }

    pub fn form(&self, x: &[Q], y: &[Q]) -> Q {
        let mut s = Q::zero();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            if a < self.rank {
                for (b, yb) in y.iter().enumerate().take(self.rank) {
                    let f = self.root_system.cartan[a][b];
                    if f != 0 && !yb.is_zero() {
                        s += xa * yb * q(f);
                    }
                }
            } else {
                let b = self.star_index(a);
                if !y[b].is_zero() {
                    s += xa * &y[b];
                }
            }
        }
        s
    }

    /// `(x|y) = B(x*, y)`, positive definite.
    pub fn inner(&self, x: &[Q], y: &[Q]) -> Q {
        self.form(&self.star(x), y)
    }

    /// `[P_{i1}, [P_{i2}, …, [P_{i(n−1)}, P_{in}]]]` with `P_i = x_{α_i}`,
    /// zero-based indices. The empty word gives zero.
    pub fn nested_bracket(&self, word: &[usize]) -> Vec<Q> {
        let Some((&last, rest)) = word.split_last() else {
            return vec![Q::zero(); self.dim()];
        };
        let mut acc = self.raising(last);
        for &i in rest.iter().rev() {
            acc = self.bracket(&self.raising(i), &acc);
        }
        acc
    }

    /// `[[…[P_{i1}, P_{i2}], …], P_{in}]`, zero-based indices.
    pub fn left_nested_bracket(&self, word: &[usize]) -> Vec<Q> {
        let Some((&first, rest)) = word.split_first() else {
            return vec![Q::zero(); self.dim()];
        };
        let mut acc = self.raising(first);
        for &i in rest {
            acc = self.bracket(&acc, &self.raising(i));
        }
        acc
    }

    fn sparse_bracket(&self, x: &Sparse, y: &Sparse) -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        for &(a, xa) in x {
            for &(b, yb) in y {
                for &(k, n) in &self.table[a][b] {
                    *out.entry(k).or_insert(0) += xa * yb * n;
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Jacobi sum `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]` on basis vectors.
    pub fn jacobi_defect(&self, a: usize, b: usize, c: usize) -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            let inner: Sparse = self.table[y][z].clone();
            for (k, v) in self.sparse_bracket(&vec![(x, 1)], &inner) {
                *out.entry(k).or_insert(0) += v;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// `([e_a, e_b] | e_c) − (e_b | [e_a*, e_c])` on basis vectors.
    pub fn invariance_defect(&self, a: usize, b: usize, c: usize) -> i64 {
        let lhs: i64 = self.table[a][b].iter().map(|&(k, n)| n * self.basis_inner(k, c)).sum();
        let sa = self.star_index(a);
        let rhs: i64 = self.table[sa][c].iter().map(|&(k, n)| n * self.basis_inner(b, k)).sum();
        lhs - rhs
    }

    /// All basis triples; returns the first failing triple, if any.
    pub fn check_exhaustive(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    if !self.jacobi_defect(a, b, c).is_empty() || self.invariance_defect(a, b, c) != 0 {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// `count` random basis triples from a fixed seed.
    pub fn check_random(&self, count: usize, seed: u64) -> Option<(usize, usize, usize)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = self.dim();
        for _ in 0..count {
            let (a, b, c) = (rng.random_range(0..d), rng.random_range(0..d), rng.random_range(0..d));
            if !self.jacobi_defect(a, b, c).is_empty() || self.invariance_defect(a, b, c) != 0 {
                return Some((a, b, c));
            }
        }
        None
    }
}

/// Builds the Chevalley basis of a simply-laced algebra.
pub fn build_simply_laced(id: AlgebraId) -> Result<StructureAlgebra> {
    if !id.is_simply_laced() {
        return Err(Error::Unsupported(format!("{id} is not simply laced")));
    }
    let rs = RootSystem::build(id)?;
    let n = rs.rank();
    let gram = &rs.cartan;
    let n_pos = rs.positive_roots.len();
    let mut roots: Vec<Vec<i64>> = rs.positive_roots.clone();
    roots.extend(rs.positive_roots.iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
    let index: BTreeMap<Vec<i64>, usize> = roots.iter().enumerate().map(|(k, r)| (r.clone(), n + k)).collect();
    let dim = n + 2 * n_pos;
    let pair = |beta: &[i64], i: usize| -> i64 { (0..n).map(|j| beta[j] * gram[j][i]).sum() };
    let sgn = |r: &[i64]| -> i64 { if r.iter().sum::<i64>() > 0 { 1 } else { -1 } };

    let mut table = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let entry: Sparse = match (a < n, b < n) {
                (true, true) => Vec::new(),
                (true, false) => vec![(b, pair(&roots[b - n], a))],
                (false, true) => vec![(a, -pair(&roots[a - n], b))],
                (false, false) => {
                    let (x, y) = (&roots[a - n], &roots[b - n]);
                    let s: Vec<i64> = x.iter().zip(y).map(|(p, q)| p + q).collect();
                    if s.iter().all(|&c| c == 0) {
                        x.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect()
                    } else if let Some(&k) = index.get(&s) {
                        let e = cocycle::sign_int(gram, x, y, true);
                        vec![(k, e * sgn(x) * sgn(y) * sgn(&s))]
                    } else {
                        Vec::new()
                    }
                }
            };
            table[a][b] = entry.into_iter().filter(|&(_, c)| c != 0).collect();
        }
    }
    Ok(StructureAlgebra { id, root_system: rs, rank: n, n_pos, roots, index, table })
}

/// Subalgebra generated by raising elements `A_j` and their stars.
#[derive(Clone, Debug)]
pub struct EmbeddedSubalgebra {
    pub ambient: Arc<StructureAlgebra>,
    pub generators: Vec<Vec<Q>>,
    pub generator_stars: Vec<Vec<Q>>,
    /// Nested brackets of generators spanning the subalgebra.
    pub span_basis: Vec<Vec<Q>>,
    /// `h_j = [A_j, A_j*]`.
    pub cartan_images: Vec<Vec<Q>>,
    /// Simple coroots `h∨_j = 2 h_j / α_j(h_j)`.
    pub coroots: Vec<Vec<Q>>,
    /// Cartan matrix recovered from `[h∨_j, A_i] = A[i][j] A_i`.
    pub cartan: Vec<Vec<i64>>,
}

fn proportional(v: &[Q], w: &[Q]) -> Option<Q> {
    let k = w.iter().position(|x| !x.is_zero())?;
    let c = &v[k] / &w[k];
    v.iter().zip(w).all(|(a, b)| *a == &c * b).then_some(c)
}

impl EmbeddedSubalgebra {
    /// Closes the generators and their stars under brackets. Fails with
    /// `Verification` if the span exceeds `limit` or the Cartan data is
    /// inconsistent.
    pub fn generate(ambient: Arc<StructureAlgebra>, generators: Vec<Vec<Q>>, limit: usize) -> Result<Self> {
        let alg = &*ambient;
        let generator_stars: Vec<Vec<Q>> = generators.iter().map(|g| alg.star(g)).collect();
        let mut ad: Vec<Vec<Q>> = generators.clone();
        ad.extend(generator_stars.iter().cloned());
        let span_basis = close(alg, &ad, limit)?;

        let mut cartan_images = Vec::new();
        let mut diag = Vec::new();
        for (g, s) in generators.iter().zip(&generator_stars) {
            let h = alg.bracket(g, s);
            let hg = alg.bracket(&h, g);
            let c = proportional(&hg, g)
                .ok_or_else(|| Error::Verification("generator is not an eigenvector of its coroot".into()))?;
            if !c.is_positive() {
                return Err(Error::Verification("non-positive coroot eigenvalue".into()));
            }
            cartan_images.push(h);
            diag.push(c);
        }
        let coroots: Vec<Vec<Q>> =
            cartan_images.iter().zip(&diag).map(|(h, c)| h.iter().map(|x| x * q(2) / c).collect()).collect();
        let m = generators.len();
        let mut cartan = vec![vec![0; m]; m];
        for i in 0..m {
            for j in 0..m {
                let hg = alg.bracket(&coroots[j], &generators[i]);
                let c = if linalg::is_zero_vec(&hg) {
                    Q::zero()
                } else {
                    proportional(&hg, &generators[i])
                        .ok_or_else(|| Error::Verification(format!("generator {i} is not a coroot eigenvector")))?
                };
                cartan[i][j] =
                    rat::as_int(&c).ok_or_else(|| Error::Verification(format!("non-integral Cartan entry ({i},{j})")))?;
            }
        }
        for i in 0..m {
            for j in 0..m {
                if i != j && !linalg::is_zero_vec(&alg.bracket(&generator_stars[i], &generators[j])) {
                    return Err(Error::Verification(format!("[A{i}*, A{j}] ≠ 0")));
                }
            }
        }
        Ok(EmbeddedSubalgebra { ambient, generators, generator_stars, span_basis, cartan_images, coroots, cartan })
    }

    pub fn dim(&self) -> usize {
        self.span_basis.len()
    }

    /// Checks that the span is closed under brackets and `*`.
    pub fn is_closed(&self) -> bool {
        let alg = &*self.ambient;
        let mut ech = Echelon::new();
        for v in &self.span_basis {
            ech.insert(v);
        }
        for (i, x) in self.span_basis.iter().enumerate() {
            if !ech.contains(&alg.star(x)) {
                return false;
            }
            for y in &self.span_basis[i + 1..] {
                if !ech.contains(&alg.bracket(x, y)) {
                    return false;
                }
            }
        }
        true
    }

    /// Generators and stars of `self` commute with those of `other`, hence
    /// the generated subalgebras commute elementwise.
    pub fn commutes_with(&self, other: &EmbeddedSubalgebra) -> bool {
        let alg = &*self.ambient;
        let mine = self.generators.iter().chain(&self.generator_stars);
        mine.into_iter().all(|x| {
            other.generators.iter().chain(&other.generator_stars).all(|y| linalg::is_zero_vec(&alg.bracket(x, y)))
        })
    }

    /// Finds a permutation `p` with `cartan[i][j] = rs.cartan[p[i]][p[j]]`.
    pub fn identify(&self, rs: &RootSystem) -> Option<Vec<usize>> {
        let m = self.cartan.len();
        if rs.rank() != m {
            return None;
        }
        let mut perm: Vec<usize> = (0..m).collect();
        loop {
            if (0..m).all(|i| (0..m).all(|j| self.cartan[i][j] == rs.cartan[perm[i]][perm[j]])) {
                return Some(perm);
            }
            if !next_permutation(&mut perm) {
                return None;
            }
        }
    }

    /// Coroots as ambient Cartan coordinates, or `None` if some coroot has
    /// a root-vector component.
    pub fn coroot_projection(&self) -> Option<Vec<Vec<Q>>> {
        let n = self.ambient.rank();
        self.coroots
            .iter()
            .map(|h| h[n..].iter().all(Zero::is_zero).then(|| h[..n].to_vec()))
            .collect()
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Span of the Lie algebra generated by `gens`, as nested brackets.
fn close(alg: &StructureAlgebra, gens: &[Vec<Q>], limit: usize) -> Result<Vec<Vec<Q>>> {
    let mut ech = Echelon::new();
    let mut basis = Vec::new();
    let mut queue: VecDeque<Vec<Q>> = gens.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        if linalg::is_zero_vec(&v) || !ech.insert(&v) {
            continue;
        }
        if ech.dim() > limit {
            return Err(Error::Verification(format!("generated span exceeds {limit}")));
        }
        for g in gens {
            queue.push_back(alg.bracket(g, &v));
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Dimension of the joint span of several subalgebras.
pub fn joint_dim(parts: &[&EmbeddedSubalgebra]) -> usize {
    let mut ech = Echelon::new();
    for p in parts {
        for v in &p.span_basis {
            ech.insert(v);
        }
    }
    ech.dim()
}

/// `k` with `images · G · imagesᵀ = k · sub_form`, where rows of `images`
/// are the images of a basis of the subalgebra's Cartan.
pub fn form_ratio(sub_form: &Mat, images: &Mat, ambient_form: &Mat) -> Result<Q> {
    let m = images.len();
    let mut k: Option<Q> = None;
    for i in 0..m {
        for j in 0..m {
            let v = linalg::form(ambient_form, &images[i], &images[j]);
            let s = &sub_form[i][j];
            if s.is_zero() {
                if !v.is_zero() {
                    return Err(Error::Verification(format!("restricted form entry ({i},{j}) should vanish")));
                }
                continue;
            }
            let r = v / s;
            match &k {
                None => k = Some(r),
                Some(k0) if *k0 != r => {
                    return Err(Error::Verification("restricted form is not a multiple of the normalized form".into()))
                }
                _ => {}
            }
        }
    }
    k.ok_or_else(|| Error::Verification("empty form".into()))
}

/// Integer index from a form ratio.
pub fn index_from_ratio(k: &Q) -> Result<u64> {
    rat::as_int(k)
        .filter(|&v| v > 0)
        .map(|v| v as u64)
        .ok_or_else(|| Error::Verification(format!("non-integral Dynkin index {}", rat::to_string(k))))
}

/// Gram matrix `(α_i∨|α_j∨)` of the simple coroots in the normalized form.
pub fn coroot_gram(rs: &RootSystem) -> Mat {
    let g = &rs.simple_gram;
    let n = rs.rank();
    (0..n).map(|i| (0..n).map(|j| q(4) * &g[i][j] / (&g[i][i] * &g[j][j])).collect()).collect()
}

/// Dynkin index of an embedded simple subalgebra of type `rs`.
pub fn dynkin_index(sub: &EmbeddedSubalgebra, rs: &RootSystem) -> Result<u64> {
    let perm = sub
        .identify(rs)
        .ok_or_else(|| Error::Verification(format!("subalgebra is not of type {}", rs.id)))?;
    let full = coroot_gram(rs);
    let m = perm.len();
    let sub_form: Mat = (0..m).map(|i| (0..m).map(|j| full[perm[i]][perm[j]].clone()).collect()).collect();
    let alg = &*sub.ambient;
    let amb: Mat = (0..m).map(|i| (0..m).map(|j| alg.form(&sub.coroots[i], &sub.coroots[j])).collect()).collect();
    let id = linalg::identity(m);
    let k = form_ratio(&sub_form, &id, &amb)?;
    index_from_ratio(&k)
}

/// Decomposes a Weyl-invariant weight multiset into irreducible characters
/// by repeatedly removing the character of a maximal weight.
pub fn peel(rs: &RootSystem, mut weights: BTreeMap<Vec<i64>, i64>, cap: u64) -> Result<BTreeMap<Vec<i64>, u64>> {
    let rho = vec![1; rs.rank()];
    let mut out = BTreeMap::new();
    weights.retain(|_, m| *m != 0);
    while let Some(top) = weights.keys().max_by_key(|w| (rs.inner_scaled(w, &rho), (*w).clone())).cloned() {
        let m = weights[&top];
        if m < 0 || !RootSystem::is_dominant_labels(&top) {
            return Err(Error::Verification(format!("weight multiset is not a character at {top:?}")));
        }
        let ch = highmod::full_character(rs, &top, cap)?;
        for (w, k) in ch.all_weights(rs) {
            let e = weights.entry(w).or_insert(0);
            *e -= m * k as i64;
        }
        weights.retain(|_, m| *m != 0);
        out.insert(top, m as u64);
    }
    Ok(out)
}

fn sub_labels(proj: &[Vec<Q>], perm: &[usize], ambient_labels: &[i64]) -> Result<Vec<i64>> {
    let mut out = vec![0; perm.len()];
    for (j, row) in proj.iter().enumerate() {
        let mut s = Q::zero();
        for (c, &l) in row.iter().zip(ambient_labels) {
            s += c * q(l);
        }
        out[perm[j]] = rat::as_int(&s).ok_or_else(|| Error::Verification("non-integral restricted weight".into()))?;
    }
    Ok(out)
}

fn branch_weights(
    sub: &EmbeddedSubalgebra,
    rs: &RootSystem,
    weights: impl IntoIterator<Item = (Vec<i64>, u64)>,
    cap: u64,
) -> Result<BTreeMap<Vec<i64>, u64>> {
    let perm = sub
        .identify(rs)
        .ok_or_else(|| Error::Verification(format!("subalgebra is not of type {}", rs.id)))?;
    let proj = sub
        .coroot_projection()
        .ok_or_else(|| Error::Unsupported("subalgebra coroots outside the ambient Cartan".into()))?;
    let mut restricted = BTreeMap::new();
    for (w, m) in weights {
        *restricted.entry(sub_labels(&proj, &perm, &w)?).or_insert(0) += m as i64;
    }
    peel(rs, restricted, cap)
}

/// Decomposition of the ambient adjoint representation.
pub fn branch_adjoint(sub: &EmbeddedSubalgebra, rs: &RootSystem, cap: u64) -> Result<BTreeMap<Vec<i64>, u64>> {
    let alg = &*sub.ambient;
    let amb = &alg.root_system;
    let n = alg.rank();
    let mut ws: Vec<(Vec<i64>, u64)> = vec![(vec![0; n], n as u64)];
    for l in &amb.positive_root_labels {
        ws.push((l.clone(), 1));
        ws.push((l.iter().map(|x| -x).collect(), 1));
    }
    branch_weights(sub, rs, ws, cap)
}

/// Decomposition of an ambient irreducible module given by its character.
pub fn branch_module(
    sub: &EmbeddedSubalgebra,
    rs: &RootSystem,
    character: &DominantCharacter,
    cap: u64,
) -> Result<BTreeMap<Vec<i64>, u64>> {
    let amb = &sub.ambient.root_system;
    branch_weights(sub, rs, character.all_weights(amb), cap)
}

/// Total dimension of a decomposition.
pub fn decomposition_dim(rs: &RootSystem, dec: &BTreeMap<Vec<i64>, u64>) -> u64 {
    dec.iter().map(|(w, m)| m * rs.weyl_dimension(w)).sum()
}

/// `so_{2n+1} ⊂ so_{2n+2}`, generated by `x_{α_i}` for `i < n` and
/// `x_{α_n} + x_{α_{n+1}}` (one-based).
pub fn orthogonal_in_even(alg: Arc<StructureAlgebra>) -> Result<EmbeddedSubalgebra> {
    let n1 = alg.rank();
    if alg.id.series != crate::rootsys::Series::D {
        return Err(Error::Unsupported("ambient must be of type D".into()));
    }
    let n = n1 - 1;
    let mut gens: Vec<Vec<Q>> = (0..n - 1).map(|i| alg.raising(i)).collect();
    let last: Vec<Q> = alg.raising(n - 1).iter().zip(alg.raising(n)).map(|(a, b)| a + b).collect();
    gens.push(last);
    let limit = n * (2 * n + 1);
    EmbeddedSubalgebra::generate(alg, gens, limit)
}
