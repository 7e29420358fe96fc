//! Level-`l` integrable weights, conformal weights, fusion rules by
//! alternation over the affine Weyl group, closed-form fusion rules for the
//! charges treated in the compression arguments, and precondition checks
//! for the level-reduction lemma.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::highmod::{self, hom_space_basis, realize_module, DominantCharacter};
use crate::linalg::{self, Mat};
use crate::rat::{q, Q};
use crate::rootsys::{RootSystem, Series, Weight};
use crate::tensor::{self, TensorQuery};

/// An integrable highest weight at a level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineWeight {
    pub finite_part: Weight,
    pub level: i64,
}

impl AffineWeight {
    pub fn new(rs: &RootSystem, finite_part: Weight, level: i64) -> Result<Self> {
        let l = rs.dominant_labels(&finite_part)?;
        check_admissible(rs, &l, level)?;
        Ok(AffineWeight { finite_part, level })
    }

    pub fn from_labels(rs: &RootSystem, labels: &[i64], level: i64) -> Result<Self> {
        if labels.len() != rs.rank() || !RootSystem::is_dominant_labels(labels) {
            return Err(Error::NotDominant(format!("{labels:?}")));
        }
        check_admissible(rs, labels, level)?;
        Ok(AffineWeight { finite_part: rs.from_labels(labels), level })
    }

    pub fn labels(&self, rs: &RootSystem) -> Vec<i64> {
        rs.labels(&self.finite_part).expect("integral by construction")
    }
}

fn check_admissible(rs: &RootSystem, labels: &[i64], level: i64) -> Result<()> {
    if level < 0 || rs.level_of(labels) > level {
        return Err(Error::Hypothesis(format!("{labels:?} is not admissible at level {level}")));
    }
    Ok(())
}

/// Three integrable weights at one level, as labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FusionQuery {
    pub level: i64,
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub nu: Vec<i64>,
}

impl FusionQuery {
    pub fn new(rs: &RootSystem, lambda: &AffineWeight, mu: &AffineWeight, nu: &AffineWeight) -> Result<Self> {
        if lambda.level != mu.level || mu.level != nu.level {
            return Err(Error::Hypothesis("weights at different levels".into()));
        }
        for w in [lambda, mu, nu] {
            if w.finite_part.algebra != rs.id {
                return Err(Error::AlgebraMismatch(w.finite_part.algebra.to_string(), rs.id.to_string()));
            }
        }
        Ok(FusionQuery { level: lambda.level, lambda: lambda.labels(rs), mu: mu.labels(rs), nu: nu.labels(rs) })
    }

    pub fn from_labels(rs: &RootSystem, level: i64, lambda: &[i64], mu: &[i64], nu: &[i64]) -> Result<Self> {
        for w in [lambda, mu, nu] {
            AffineWeight::from_labels(rs, w, level)?;
        }
        Ok(FusionQuery { level, lambda: lambda.to_vec(), mu: mu.to_vec(), nu: nu.to_vec() })
    }

    fn tensor(&self) -> TensorQuery {
        TensorQuery::from_labels(&self.lambda, &self.mu, &self.nu)
    }
}

/// All integrable weights at level `l`, ordered by `(λ|θ)`.
pub fn admissible_weights(rs: &RootSystem, l: i64) -> Vec<AffineWeight> {
    if l < 0 {
        return Vec::new();
    }
    rs.dominant_weights_up_to_level(l)
        .into_iter()
        .map(|lab| AffineWeight { finite_part: rs.from_labels(&lab), level: l })
        .collect()
}

/// `(λ|λ+2ρ) / (2(l+h∨))`.
pub fn conformal_weight(rs: &RootSystem, w: &AffineWeight) -> Q {
    let l = w.labels(rs);
    let shifted: Vec<i64> = l.iter().map(|x| x + 2).collect();
    rs.inner_labels(&l, &shifted) / q(2 * (w.level + rs.dual_coxeter))
}

/// Moves `x` (labels of a `ρ`-shifted weight) into the fundamental alcove
/// of level `k` by simple reflections and the affine reflection
/// `x ↦ x − ((x|θ) − k)θ`. Returns `None` when `x` lies on a wall.
pub fn affine_reduce(rs: &RootSystem, x: &[i64], k: i64) -> Option<(Vec<i64>, i8)> {
    let theta = rs.positive_root_labels.last().expect("nonempty").clone();
    let mut x = x.to_vec();
    let mut sign = 1i8;
    loop {
        if let Some(i) = x.iter().position(|&v| v < 0) {
            rs.reflect_labels(&mut x, i);
            sign = -sign;
            continue;
        }
        let t = rs.level_of(&x);
        if t > k {
            for (v, th) in x.iter_mut().zip(&theta) {
                *v -= (t - k) * th;
            }
            sign = -sign;
            continue;
        }
        if x.contains(&0) || t == k {
            return None;
        }
        return Some((x, sign));
    }
}

/// Level-`l` fusion of `L(λ)` with `L(μ)` from the weights of `L(λ)`.
pub fn kac_walton_decomposition(rs: &RootSystem, ch: &DominantCharacter, mu: &[i64], l: i64) -> BTreeMap<Vec<i64>, i64> {
    let k = l + rs.dual_coxeter;
    let mut out: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (w, m) in ch.all_weights(rs) {
        let x: Vec<i64> = w.iter().zip(mu).map(|(a, b)| a + b + 1).collect();
        if let Some((y, s)) = affine_reduce(rs, &x, k) {
            let nu: Vec<i64> = y.iter().map(|v| v - 1).collect();
            *out.entry(nu).or_insert(0) += s as i64 * m as i64;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// `N^ν_{λμ}` at level `l` by the Kac-Walton alternating sum.
pub fn kac_walton_fusion(rs: &RootSystem, q: &FusionQuery, cap: u64) -> Result<u64> {
    let ch = highmod::full_character(rs, &q.lambda, cap)?;
    let n = kac_walton_decomposition(rs, &ch, &q.mu, q.level).get(&q.nu).copied().unwrap_or(0);
    if n < 0 {
        return Err(Error::Verification(format!("negative fusion coefficient for {q:?}")));
    }
    Ok(n as u64)
}

/// Outcome of the closed-form fusion rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaperRule {
    Value(u64),
    Unsupported,
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Charges covered by the closed-form rules: `ϑ1` for A, C, G2; `ϑ1` and
/// the spin weight for B; the vector and both half-spin weights for D.
pub fn supported_charges(rs: &RootSystem) -> Vec<Vec<i64>> {
    let n = rs.rank();
    match rs.id.series {
        Series::A | Series::C | Series::G => vec![unit(n, 0)],
        Series::B => vec![unit(n, 0), unit(n, n - 1)],
        Series::D => vec![unit(n, 0), unit(n, n - 2), unit(n, n - 1)],
        _ => Vec::new(),
    }
}

/// The closed-form fusion rule: `dim L(λ)[ν−μ]`, except that for type B
/// with charge `ϑ1` and `μ = ν` the rule is 1 iff the last label of `μ` is
/// positive, and for G2 the tensor-graph rule applies.
pub fn paper_fusion_rule(rs: &RootSystem, q: &FusionQuery) -> PaperRule {
    if !supported_charges(rs).contains(&q.lambda) {
        return PaperRule::Unsupported;
    }
    let n = rs.rank();
    if rs.id.series == Series::G {
        return PaperRule::Value(tensor::g2_graph_rule(&q.mu, &q.nu) as u64);
    }
    if rs.id.series == Series::B && q.lambda == unit(n, 0) && q.mu == q.nu {
        return PaperRule::Value((q.mu[n - 1] > 0) as u64);
    }
    let ch = highmod::full_character(rs, &q.lambda, u64::MAX).expect("small charge");
    let kappa: Vec<i64> = q.nu.iter().zip(&q.mu).map(|(a, b)| a - b).collect();
    let m = if rs.root_difference(&q.lambda, &kappa).is_some() { ch.multiplicity(rs, &kappa) } else { 0 };
    PaperRule::Value(m)
}

/// Reachability of every level-`l` weight from the vacuum by fusing with a
/// family and its contragredients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingReport {
    pub generating: bool,
    /// For each reached weight, the path of weights from the vacuum.
    pub chains: BTreeMap<Vec<i64>, Vec<Vec<i64>>>,
    pub unreached: Vec<Vec<i64>>,
}

pub fn generating_check(rs: &RootSystem, family: &[Vec<i64>], l: i64, cap: u64) -> Result<GeneratingReport> {
    let all: Vec<Vec<i64>> = rs.dominant_weights_up_to_level(l);
    let mut charges: BTreeSet<Vec<i64>> = BTreeSet::new();
    for f in family {
        check_admissible(rs, f, l)?;
        charges.insert(f.clone());
        charges.insert(rs.dual_labels(f));
    }
    let chars: Vec<DominantCharacter> =
        charges.iter().map(|c| highmod::full_character(rs, c, cap)).collect::<Result<_>>()?;
    let zero = vec![0; rs.rank()];
    let mut parent: BTreeMap<Vec<i64>, Option<Vec<i64>>> = BTreeMap::new();
    parent.insert(zero.clone(), None);
    let mut queue = VecDeque::from([zero]);
    while let Some(mu) = queue.pop_front() {
        for ch in &chars {
            for (nu, m) in kac_walton_decomposition(rs, ch, &mu, l) {
                if m > 0 && !parent.contains_key(&nu) {
                    parent.insert(nu.clone(), Some(mu.clone()));
                    queue.push_back(nu);
                }
            }
        }
    }
    let mut chains = BTreeMap::new();
    for w in parent.keys() {
        let mut path = vec![w.clone()];
        let mut cur = w.clone();
        while let Some(Some(p)) = parent.get(&cur) {
            path.push(p.clone());
            cur = p.clone();
        }
        path.reverse();
        chains.insert(w.clone(), path);
    }
    let unreached: Vec<Vec<i64>> = all.into_iter().filter(|w| !parent.contains_key(w)).collect();
    Ok(GeneratingReport { generating: unreached.is_empty(), chains, unreached })
}

/// When `(μ|θ) ≤ l − a` or `(ν|θ) ≤ l − a` with `a = (λ|θ)`, the fusion rule
/// equals the tensor multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationCheck {
    pub applicable: bool,
    pub fusion: Option<u64>,
    pub tensor: Option<u64>,
}

impl TruncationCheck {
    pub fn mismatch(&self) -> bool {
        self.applicable && self.fusion != self.tensor
    }
}

pub fn untruncated_applicable(rs: &RootSystem, q: &FusionQuery) -> bool {
    let b = q.level - rs.level_of(&q.lambda);
    rs.level_of(&q.mu) <= b || rs.level_of(&q.nu) <= b
}

pub fn truncation_check(rs: &RootSystem, q: &FusionQuery, cap: u64) -> Result<TruncationCheck> {
    if !untruncated_applicable(rs, q) {
        return Ok(TruncationCheck { applicable: false, fusion: None, tensor: None });
    }
    Ok(TruncationCheck {
        applicable: true,
        fusion: Some(kac_walton_fusion(rs, q, cap)?),
        tensor: Some(tensor::tensor_multiplicity(rs, &q.tensor(), cap)?),
    })
}

/// Inputs of the level-reduction lemma, as labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionInput {
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub nu: Vec<i64>,
    pub rho: Vec<i64>,
    pub mu1: Vec<i64>,
    pub nu1: Vec<i64>,
    pub level: i64,
    pub a: i64,
}

/// Which of the three sufficient conditions hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionFlags {
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

impl ReductionFlags {
    pub fn any(&self) -> bool {
        self.a || self.b || self.c
    }
}

fn add(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn sub(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn thin(rs: &RootSystem, labels: &[i64], cap: u64) -> Result<bool> {
    Ok(highmod::full_character(rs, labels, cap)?.mults.values().all(|&m| m <= 1))
}

/// Evaluates the hypotheses and conditions (a), (b), (c). The energy-bound
/// hypothesis on the level-`a` operators is analytic and not checked.
pub fn reduction_conditions(rs: &RootSystem, inp: &ReductionInput, cap: u64) -> Result<ReductionFlags> {
    let l = inp.level;
    for (name, w) in [
        ("λ", &inp.lambda),
        ("μ", &inp.mu),
        ("ν", &inp.nu),
        ("ρ", &inp.rho),
        ("μ1", &inp.mu1),
        ("ν1", &inp.nu1),
    ] {
        if w.len() != rs.rank() || !RootSystem::is_dominant_labels(w) || rs.level_of(w) > l {
            return Err(Error::Hypothesis(format!("{name} = {w:?} is not admissible at level {l}")));
        }
    }
    let a = [&inp.lambda, &inp.mu1, &inp.nu1].iter().map(|w| rs.level_of(w)).max().unwrap_or(0);
    if inp.a != a {
        return Err(Error::Hypothesis(format!("a = {} but the largest θ-pairing is {a}", inp.a)));
    }
    if a > l {
        return Err(Error::Hypothesis(format!("a = {a} exceeds the level {l}")));
    }
    if rs.level_of(&inp.rho) > l - a {
        return Err(Error::Hypothesis(format!("(ρ|θ) exceeds l − a = {}", l - a)));
    }
    if !thin(rs, &inp.lambda, cap)? {
        return Err(Error::Hypothesis("L(λ) has a weight space of dimension above 1".into()));
    }
    let fq = FusionQuery { level: a, lambda: inp.lambda.clone(), mu: inp.mu1.clone(), nu: inp.nu1.clone() };
    let n = kac_walton_fusion(rs, &fq, cap)?;
    if n != 1 {
        return Err(Error::Hypothesis(format!("level-a fusion rule is {n}, not 1")));
    }

    let mu_split = inp.mu == add(&inp.mu1, &inp.rho);
    let nu_split = inp.nu == add(&inp.nu1, &inp.rho);
    let cond_a = mu_split && nu_split;

    let kappa = sub(&inp.nu, &inp.mu);
    let la = Arc::new(realize_module(rs, &inp.lambda, cap)?);
    let lm = Arc::new(realize_module(rs, &inp.mu1, cap)?);
    let ln = Arc::new(realize_module(rs, &inp.nu1, cap)?);
    let homs = hom_space_basis(rs, &la, &lm, &ln);
    let kappa_block = la.block_of(&kappa);

    let cond_b = mu_split
        && tensor::tensor_multiplicity(rs, &TensorQuery::from_labels(&inp.nu1, &inp.rho, &inp.nu), cap)? > 0
        && thin(rs, &inp.nu1, cap)?
        && match kappa_block {
            None => false,
            Some(kb) => {
                // T ↦ T(L(λ)[ν−μ] ⊗ v_{μ1}) must be injective on the hom space.
                let dim = la.blocks[kb].dim;
                let rows: Mat = homs
                    .iter()
                    .map(|t| {
                        let mut row = Vec::new();
                        for j in 0..dim {
                            let mut e = vec![Q::zero(); dim];
                            e[j] = q(1);
                            if let Some((_, v)) = t.apply_pure(kb, &e, 0, &[q(1)]) {
                                row.extend(v);
                            }
                        }
                        row
                    })
                    .collect();
                !homs.is_empty() && rows.iter().all(|r| !r.is_empty()) && linalg::rank(&rows) == homs.len()
            }
        };

    let cond_c = nu_split
        && tensor::tensor_multiplicity(rs, &TensorQuery::from_labels(&inp.mu1, &inp.rho, &inp.mu), cap)? > 0
        && thin(rs, &inp.mu1, cap)?
        && match (kappa_block, lm.block_of(&sub(&inp.nu1, &kappa))) {
            (Some(kb), Some(mb)) => {
                // T ↦ (⟨T(u_j ⊗ u'_m)|v_{ν1}⟩)_{j,m} must be injective.
                let (da, dm) = (la.blocks[kb].dim, lm.blocks[mb].dim);
                let rows: Mat = homs
                    .iter()
                    .map(|t| {
                        let mut row = Vec::new();
                        for j in 0..da {
                            for m in 0..dm {
                                let mut x = vec![Q::zero(); da];
                                x[j] = q(1);
                                let mut y = vec![Q::zero(); dm];
                                y[m] = q(1);
                                let val = match t.apply_pure(kb, &x, mb, &y) {
                                    Some((0, v)) => ln.pair(0, &v, &[q(1)]),
                                    _ => Q::zero(),
                                };
                                row.push(val);
                            }
                        }
                        row
                    })
                    .collect();
                !homs.is_empty() && linalg::rank(&rows) == homs.len()
            }
            _ => false,
        };
    Ok(ReductionFlags { a: cond_a, b: cond_b, c: cond_c })
}
