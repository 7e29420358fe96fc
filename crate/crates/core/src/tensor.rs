//! Tensor product multiplicities by three independent routes: the
//! Brauer-Klimyk character formula, the simple-root criterion for
//! one-dimensional weight spaces, and the rank of the subspace spanned by
//! high powers of lowering operators.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::highmod::{self, DominantCharacter, ModuleRealization};
use crate::linalg::{self, Echelon, Mat};
use crate::rootsys::{RootSystem, Weight};

/// A triple of dominant integral weights, as Dynkin labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorQuery {
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub nu: Vec<i64>,
}

impl TensorQuery {
    pub fn new(rs: &RootSystem, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<Self> {
        Ok(TensorQuery { lambda: rs.dominant_labels(lambda)?, mu: rs.dominant_labels(mu)?, nu: rs.dominant_labels(nu)? })
    }

    pub fn from_labels(lambda: &[i64], mu: &[i64], nu: &[i64]) -> Self {
        TensorQuery { lambda: lambda.to_vec(), mu: mu.to_vec(), nu: nu.to_vec() }
    }

    /// `ν − μ` in labels.
    pub fn difference(&self) -> Vec<i64> {
        self.nu.iter().zip(&self.mu).map(|(a, b)| a - b).collect()
    }
}

fn check_dominant(rs: &RootSystem, labels: &[i64]) -> Result<()> {
    if labels.len() != rs.rank() || !RootSystem::is_dominant_labels(labels) {
        return Err(Error::NotDominant(format!("{labels:?}")));
    }
    Ok(())
}

/// Decomposition of `L(λ) ⊗ L(μ)` from the weights of `L(λ)`; shifted
/// weights on a wall contribute nothing.
pub fn klimyk(rs: &RootSystem, weights: &[(Vec<i64>, u64)], mu: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    let mut out: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    let mut shifted = vec![0i64; mu.len()];
    for (w, m) in weights {
        for k in 0..mu.len() {
            shifted[k] = mu[k] + w[k] + 1;
        }
        let red = rs.to_dominant_labels(&shifted);
        if red.sign == 0 {
            continue;
        }
        let nu: Vec<i64> = red.dominant.iter().map(|x| x - 1).collect();
        *out.entry(nu).or_insert(0) += red.sign as i64 * *m as i64;
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Multiplicity of `L(ν)` in `L(λ) ⊗ L(μ)`.
pub fn tensor_multiplicity(rs: &RootSystem, q: &TensorQuery, cap: u64) -> Result<u64> {
    check_dominant(rs, &q.lambda)?;
    check_dominant(rs, &q.mu)?;
    check_dominant(rs, &q.nu)?;
    let ch = highmod::full_character(rs, &q.lambda, cap)?;
    let dec = klimyk(rs, &ch.all_weights(rs), &q.mu);
    let m = dec.get(&q.nu).copied().unwrap_or(0);
    debug_assert!(m >= 0);
    Ok(m.max(0) as u64)
}

/// Outcome of the simple-root criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cor20 {
    Zero,
    One,
    NotApplicable,
}

impl Cor20 {
    pub fn as_str(self) -> &'static str {
        match self {
            Cor20::Zero => "0",
            Cor20::One => "1",
            Cor20::NotApplicable => "not-applicable",
        }
    }
}

/// When `dim L(λ)[ν−μ] = 1`, the multiplicity is 1 exactly when
/// `ν − μ + (n_{μ,α}+1)α` is not a weight for every simple root `α`.
pub fn cor20_criterion(rs: &RootSystem, ch: &DominantCharacter, q: &TensorQuery) -> Cor20 {
    let kappa = q.difference();
    if !in_root_coset(rs, &q.lambda, &kappa) {
        return Cor20::NotApplicable;
    }
    cor20_with(rs, |w| ch.multiplicity(rs, w), &q.mu, &kappa)
}

/// The criterion with weight-space dimensions supplied by `dim_of`; `κ` must
/// lie in the root coset of `λ`.
pub fn cor20_with(rs: &RootSystem, dim_of: impl Fn(&[i64]) -> u64, mu: &[i64], kappa: &[i64]) -> Cor20 {
    if dim_of(kappa) != 1 {
        return Cor20::NotApplicable;
    }
    let mut shifted = kappa.to_vec();
    for i in 0..rs.rank() {
        let m = mu[i] + 1;
        for (s, (k, a)) in shifted.iter_mut().zip(kappa.iter().zip(rs.simple_root_labels(i))) {
            *s = k + m * a;
        }
        if dim_of(&shifted) != 0 {
            return Cor20::Zero;
        }
    }
    Cor20::One
}

fn in_root_coset(rs: &RootSystem, lambda: &[i64], kappa: &[i64]) -> bool {
    rs.root_difference(lambda, kappa).is_some()
}

/// Per-`λ` engine for the lowering-power formula. Images of `F_i^m` into
/// each weight space and ranks of their sums are cached, so sweeps over many
/// `(μ, ν)` reuse work.
pub struct Prop11Engine<'a> {
    rs: &'a RootSystem,
    module: ModuleRealization,
    images: BTreeMap<(usize, usize, usize), Mat>,
    ranks: BTreeMap<(usize, u128), usize>,
    /// `tops[b][i]`: largest `m` with `κ_b + mα_i` a weight.
    tops: Vec<Vec<usize>>,
}

impl<'a> Prop11Engine<'a> {
    pub fn new(rs: &'a RootSystem, lambda: &[i64], cap: u64) -> Result<Self> {
        let module = highmod::realize_module(rs, lambda, cap)?;
        Ok(Self::from_module(rs, module))
    }

    pub fn from_module(rs: &'a RootSystem, module: ModuleRealization) -> Self {
        let tops = module
            .blocks
            .iter()
            .map(|b| {
                (0..rs.rank())
                    .map(|i| {
                        let mut t = 0;
                        let mut w = b.weight.clone();
                        loop {
                            for (x, a) in w.iter_mut().zip(rs.simple_root_labels(i)) {
                                *x += a;
                            }
                            if module.block_of(&w).is_none() {
                                break t;
                            }
                            t += 1;
                        }
                    })
                    .collect()
            })
            .collect();
        Prop11Engine { rs, module, images: BTreeMap::new(), ranks: BTreeMap::new(), tops }
    }

    pub fn module(&self) -> &ModuleRealization {
        &self.module
    }

    /// Spanning rows of `F_i^m L(λ)[κ + mα_i]` inside block `κ`.
    fn image(&mut self, block: usize, i: usize, m: usize) -> Mat {
        if m == 0 {
            return linalg::identity(self.module.blocks[block].dim);
        }
        if let Some(v) = self.images.get(&(block, i, m)) {
            return v.clone();
        }
        let up: Vec<i64> =
            self.module.blocks[block].weight.iter().zip(self.rs.simple_root_labels(i)).map(|(x, a)| x + a).collect();
        let mut ech = Echelon::new();
        if let Some(src) = self.module.block_of(&up) {
            let above = self.image(src, i, m - 1);
            for v in &above {
                if let Some((t, w)) = self.module.lower(i, src, v) {
                    debug_assert_eq!(t, block);
                    ech.insert(&w);
                }
            }
        }
        let rows = ech.rows().to_vec();
        self.images.insert((block, i, m), rows.clone());
        rows
    }

    /// `dim K[κ]` for powers `m_i = n_i + 1`, with `m_i` clipped past the
    /// string top where the image is zero anyway.
    fn k_rank(&mut self, block: usize, mu: &[i64]) -> usize {
        let mut key = 0u128;
        for (i, &n) in mu.iter().enumerate() {
            let m = ((n + 1) as usize).min(self.tops[block][i] + 1);
            key = (key << 16) | m as u128;
        }
        if let Some(&r) = self.ranks.get(&(block, key)) {
            return r;
        }
        let mut ech = Echelon::new();
        let dim = self.module.blocks[block].dim;
        for (i, &n) in mu.iter().enumerate() {
            let m = (n + 1) as usize;
            if m > self.tops[block][i] || ech.dim() == dim {
                continue;
            }
            for v in self.image(block, i, m) {
                ech.insert(&v);
            }
        }
        let r = ech.dim();
        self.ranks.insert((block, key), r);
        r
    }

    /// `dim L(λ)[ν−μ] − dim K^μ(λ)[ν−μ]`.
    pub fn multiplicity(&mut self, mu: &[i64], nu: &[i64]) -> u64 {
        let kappa: Vec<i64> = nu.iter().zip(mu).map(|(a, b)| a - b).collect();
        let Some(block) = self.module.block_of(&kappa) else { return 0 };
        self.multiplicity_at(block, mu)
    }

    /// Same as [`Self::multiplicity`] with `ν − μ` given as a block index.
    pub fn multiplicity_at(&mut self, block: usize, mu: &[i64]) -> u64 {
        let r = self.k_rank(block, mu);
        (self.module.blocks[block].dim - r) as u64
    }

    /// Basis of `K^μ(λ)[κ]` itself, for inspection.
    pub fn k_subspace(&mut self, mu: &[i64], kappa: &[i64]) -> Mat {
        let Some(block) = self.module.block_of(kappa) else { return Vec::new() };
        let mut ech = Echelon::new();
        for i in 0..self.rs.rank() {
            let m = (mu[i] + 1) as usize;
            if m > self.tops[block][i] {
                continue;
            }
            for v in self.image(block, i, m) {
                ech.insert(&v);
            }
        }
        ech.rows().to_vec()
    }
}

/// One-shot version of [`Prop11Engine::multiplicity`].
pub fn prop11_multiplicity(rs: &RootSystem, q: &TensorQuery, cap: u64) -> Result<u64> {
    check_dominant(rs, &q.lambda)?;
    check_dominant(rs, &q.mu)?;
    check_dominant(rs, &q.nu)?;
    let mut engine = Prop11Engine::new(rs, &q.lambda, cap)?;
    Ok(engine.multiplicity(&q.mu, &q.nu))
}

/// Undirected graph on dominant weights; loops allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightGraph {
    pub nodes: Vec<Vec<i64>>,
    pub edges: Vec<(usize, usize)>,
}

impl WeightGraph {
    pub fn has_edge(&self, a: &[i64], b: &[i64]) -> bool {
        let ia = self.nodes.iter().position(|n| n == a);
        let ib = self.nodes.iter().position(|n| n == b);
        match (ia, ib) {
            (Some(x), Some(y)) => self.edges.contains(&(x.min(y), x.max(y))),
            _ => false,
        }
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let label: Vec<String> = n.iter().map(|x| format!("{x}")).collect();
            s.push_str(&format!("  n{i} [label=\"({})\"];\n", label.join(",")));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  n{a} -- n{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// The tensor graph of the 7-dimensional G2 module on weights of level at
/// most `height_cap`.
pub fn g2_tensor_graph(rs: &RootSystem, height_cap: i64) -> Result<WeightGraph> {
    if rs.id.to_string() != "G2" {
        return Err(Error::AlgebraMismatch(rs.id.to_string(), "G2".into()));
    }
    if height_cap < 1 {
        return Err(Error::Unsupported(format!("height cap {height_cap} < 1")));
    }
    let nodes = rs.dominant_weights_up_to_level(height_cap);
    let ch = highmod::freudenthal(rs, &[1, 0]);
    let weights = ch.all_weights(rs);
    let mut edges = Vec::new();
    for (a, mu) in nodes.iter().enumerate() {
        let dec = klimyk(rs, &weights, mu);
        for (b, nu) in nodes.iter().enumerate().skip(a) {
            if dec.get(nu).copied().unwrap_or(0) == 1 {
                edges.push((a, b));
            }
        }
    }
    Ok(WeightGraph { nodes, edges })
}

/// The stated G2 rule: `ν − μ` is a nonzero weight of the 7-dim module, or
/// `μ = ν` with a positive first label.
pub fn g2_graph_rule(mu: &[i64], nu: &[i64]) -> bool {
    let d = [nu[0] - mu[0], nu[1] - mu[1]];
    const STEPS: [[i64; 2]; 6] = [[1, 0], [-1, 0], [-1, 1], [1, -1], [2, -1], [-2, 1]];
    STEPS.contains(&d) || (d == [0, 0] && nu[0] > 0)
}

/// Sum of `mult(ν) dim L(ν)` over a decomposition.
pub fn decomposition_dim(rs: &RootSystem, dec: &BTreeMap<Vec<i64>, i64>) -> i128 {
    dec.iter().map(|(nu, m)| *m as i128 * rs.weyl_dimension(nu) as i128).sum()
}

