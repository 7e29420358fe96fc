//! Truncated Fock spaces of a Heisenberg algebra and the modes of its
//! charge-shifting intertwiners.
//!
//! The Cartan space has an orthogonal basis `e_c` with rational squared
//! norms `q_c`, and oscillators satisfy `[e_c(m), e_d(n)] = m q_c δ_cd δ_{m+n,0}`.
//! States are monomials `∏ e_c(−n)^k v_μ`; they are orthogonal with
//! `‖∏ e_c(−n)^k v_μ‖² = ∏ (n q_c)^k k!`.
//!
//! The intertwiner of charge `α` acts on `L(μ)` as
//! `x^{(α|μ)} E^−(α,x) E^+(α,x)` followed by the charge shift. Both
//! exponentials factor over oscillator slots `(c, n)`, so each matrix
//! element between monomials is a product of one-slot coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Float, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rat::{q, to_f64, Q};

/// Orthogonal Cartan space with positive rational squared norms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergSpace {
    norms: Vec<Q>,
}

impl HeisenbergSpace {
    pub fn new(norms: Vec<Q>) -> Result<Self> {
        if norms.is_empty() || norms.iter().any(|x| !x.is_positive()) {
            return Err(Error::Lattice("basis norms must be positive".into()));
        }
        Ok(HeisenbergSpace { norms })
    }

    /// One oscillator with `(e|e) = norm`.
    pub fn rank_one(norm: i64) -> Self {
        HeisenbergSpace { norms: vec![q(norm)] }
    }

    pub fn dim(&self) -> usize {
        self.norms.len()
    }

    pub fn norms(&self) -> &[Q] {
        &self.norms
    }

    pub fn inner(&self, a: &[Q], b: &[Q]) -> Q {
        self.norms.iter().zip(a.iter().zip(b)).map(|(n, (x, y))| n * x * y).fold(Q::zero(), |s, t| s + t)
    }

    pub(crate) fn check_charge(&self, v: &[Q], name: &str) -> Result<()> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::Lattice(format!("{name} has {} coordinates, expected {}", v.len(), self.dim())))
        }
    }
}

/// Occupation numbers `(color, part, count)` sorted by `(part, color)`.
pub type FockState = Vec<(usize, usize, usize)>;

/// Monomial basis of `L(λ)` up to an energy cutoff, grouped by energy.
#[derive(Clone, Debug)]
pub struct FockBasis {
    pub charge: Vec<Q>,
    pub cutoff: usize,
    pub states: Vec<FockState>,
    pub energies: Vec<usize>,
    starts: Vec<usize>,
}

impl FockBasis {
    pub fn new(space: &HeisenbergSpace, charge: Vec<Q>, cutoff: usize) -> Self {
        let levels = levels(space.dim(), cutoff);
        let mut states = Vec::new();
        let mut energies = Vec::new();
        let mut starts = vec![0];
        for (n, level) in levels.into_iter().enumerate() {
            energies.extend(core::iter::repeat_n(n, level.len()));
            states.extend(level);
            starts.push(states.len());
        }
        FockBasis { charge, cutoff, states, energies, starts }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn level(&self, n: usize) -> core::ops::Range<usize> {
        self.starts[n]..self.starts[n + 1]
    }

    /// `L0` eigenvalue `(λ|λ)/2 + energy`.
    pub fn conformal_weight(&self, space: &HeisenbergSpace, i: usize) -> Q {
        space.inner(&self.charge, &self.charge) / q(2) + q(self.energies[i] as i64)
    }
}

/// Multipartitions of each energy `0..=cutoff` in `colors` colors.
pub(crate) fn levels(colors: usize, cutoff: usize) -> Vec<Vec<FockState>> {
    let slots: Vec<(usize, usize)> = (1..=cutoff).flat_map(|n| (0..colors).map(move |c| (c, n))).collect();
    let mut out = vec![Vec::new(); cutoff + 1];
    fn rec(slots: &[(usize, usize)], i: usize, left: usize, cur: &mut FockState, out: &mut Vec<FockState>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if i == slots.len() || slots[i].1 > left {
            return;
        }
        let (c, n) = slots[i];
        rec(slots, i + 1, left, cur, out);
        for k in 1..=left / n {
            cur.push((c, n, k));
            rec(slots, i + 1, left - k * n, cur, out);
            cur.pop();
        }
    }
    for (e, level) in out.iter_mut().enumerate() {
        rec(&slots, 0, e, &mut Vec::new(), level);
    }
    out
}

pub(crate) fn state_norm(space: &HeisenbergSpace, s: &FockState) -> Q {
    let mut out = Q::one();
    for &(c, n, k) in s {
        let base = q(n as i64) * &space.norms[c];
        for j in 1..=k {
            out *= &base * q(j as i64);
        }
    }
    out
}

/// Matrix elements of `E^−(α,x) E^+(α,x)` between monomials.
pub(crate) struct Modes<'a> {
    alpha: &'a [Q],
    pairing: Vec<Q>,
    cache: BTreeMap<(usize, usize, usize, usize), Q>,
}

impl<'a> Modes<'a> {
    pub(crate) fn new(space: &HeisenbergSpace, alpha: &'a [Q]) -> Self {
        let pairing = alpha.iter().zip(&space.norms).map(|(a, n)| a * n).collect();
        Modes { alpha, pairing, cache: BTreeMap::new() }
    }

    /// One-slot coefficient: `e_c(−n)^k ↦ e_c(−n)^{k'}` with weight
    /// `Σ_l C(k,l) (−(α|e_c))^{k−l} (α_c/n)^{k'−l} / (k'−l)!`.
    fn slot(&mut self, c: usize, n: usize, k: usize, kp: usize) -> Q {
        if let Some(v) = self.cache.get(&(c, n, k, kp)) {
            return v.clone();
        }
        let down = -self.pairing[c].clone();
        let up = &self.alpha[c] / q(n as i64);
        let mut total = Q::zero();
        for l in 0..=k.min(kp) {
            let mut term = Q::from_integer(binomial(k, l).into());
            term *= pow(&down, k - l);
            term *= pow(&up, kp - l);
            term /= Q::from_integer(factorial(kp - l).into());
            total += term;
        }
        self.cache.insert((c, n, k, kp), total.clone());
        total
    }

    /// Coefficient of monomial `tgt` in the image of monomial `src`.
    pub(crate) fn elem(&mut self, src: &FockState, tgt: &FockState) -> Q {
        let (mut i, mut j) = (0, 0);
        let mut out = Q::one();
        while i < src.len() || j < tgt.len() {
            let ks = src.get(i).map(|&(c, n, _)| (n, c));
            let kt = tgt.get(j).map(|&(c, n, _)| (n, c));
            let (slot, k, kp) = match (ks, kt) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                    (a, src[i - 1].2, tgt[j - 1].2)
                }
                (Some(a), Some(b)) if a < b => {
                    i += 1;
                    (a, src[i - 1].2, 0)
                }
                (Some(a), None) => {
                    i += 1;
                    (a, src[i - 1].2, 0)
                }
                (_, Some(b)) => {
                    j += 1;
                    (b, 0, tgt[j - 1].2)
                }
                (None, None) => unreachable!(),
            };
            let v = self.slot(slot.1, slot.0, k, kp);
            if v.is_zero() {
                return v;
            }
            out *= v;
        }
        out
    }

    /// Block from `src` states to `tgt` states; rows are targets.
    pub(crate) fn block(&mut self, src: &[FockState], tgt: &[FockState]) -> Mat {
        tgt.iter().map(|t| src.iter().map(|s| self.elem(s, t)).collect()).collect()
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn pow(x: &Q, e: usize) -> Q {
    (0..e).fold(Q::one(), |acc, _| acc * x)
}

/// Orthonormal-basis floats for a block between monomials with the given
/// squared norms: `A_ts · sqrt(n_t / n_s)`.
pub(crate) fn orthonormal(block: &Mat, src_norms: &[Q], tgt_norms: &[Q]) -> Vec<Vec<f64>> {
    block
        .iter()
        .zip(tgt_norms)
        .map(|(row, nt)| {
            row.iter()
                .zip(src_norms)
                .map(|(x, ns)| if x.is_zero() { 0.0 } else { to_f64(x) * Float::sqrt(to_f64(&(nt / ns))) })
                .collect()
        })
        .collect()
}

/// Energy change `N' − N` of the mode `Y_α(s)` on `L(μ)` in the
/// `Σ_s Y(s) x^{−s−1}` convention, or `None` if the mode vanishes.
pub fn mode_shift(space: &HeisenbergSpace, alpha: &[Q], mu: &[Q], s: &Q) -> Option<i64> {
    let d = -q(1) - space.inner(alpha, mu) - s;
    crate::rat::as_int(&d)
}

/// Mode `Y_α(s)` from the truncated `L(μ)` to the truncated `L(α+μ)`.
#[derive(Clone, Debug)]
pub struct ModeMatrix {
    pub source_charge: Vec<Q>,
    pub target_charge: Vec<Q>,
    pub mode: Q,
    pub source: FockBasis,
    pub target: FockBasis,
    /// Coefficients between monomials; rows are target states.
    pub exact: Mat,
    /// The same operator in the orthonormalized bases.
    pub values: Vec<Vec<f64>>,
    /// Source states whose image lies above the cutoff and is dropped.
    pub boundary: Vec<bool>,
}

impl ModeMatrix {
    /// Raise of the conformal weight, `(α|α)/2 − s − 1`.
    pub fn weight_raise(&self, space: &HeisenbergSpace) -> Q {
        let alpha: Vec<Q> = self.target_charge.iter().zip(&self.source_charge).map(|(a, b)| a - b).collect();
        space.inner(&alpha, &alpha) / q(2) - &self.mode - q(1)
    }
}

pub fn heisenberg_mode(space: &HeisenbergSpace, alpha: &[Q], mu: &[Q], s: &Q, cutoff: usize) -> Result<ModeMatrix> {
    space.check_charge(alpha, "α")?;
    space.check_charge(mu, "μ")?;
    let target_charge: Vec<Q> = alpha.iter().zip(mu).map(|(a, b)| a + b).collect();
    let source = FockBasis::new(space, mu.to_vec(), cutoff);
    let target = FockBasis::new(space, target_charge.clone(), cutoff);
    let (ns, nt) = (source.len(), target.len());
    let mut exact = vec![vec![Q::zero(); ns]; nt];
    let mut boundary = vec![false; ns];
    if let Some(d) = mode_shift(space, alpha, mu, s) {
        let mut modes = Modes::new(space, alpha);
        for n in 0..=cutoff {
            let m = n as i64 + d;
            if m < 0 {
                continue;
            }
            if m as usize > cutoff {
                source.level(n).for_each(|i| boundary[i] = true);
                continue;
            }
            for i in source.level(n) {
                for j in target.level(m as usize) {
                    exact[j][i] = modes.elem(&source.states[i], &target.states[j]);
                }
            }
        }
    }
    let src_norms: Vec<Q> = source.states.iter().map(|st| state_norm(space, st)).collect();
    let tgt_norms: Vec<Q> = target.states.iter().map(|st| state_norm(space, st)).collect();
    let values = orthonormal(&exact, &src_norms, &tgt_norms);
    Ok(ModeMatrix {
        source_charge: mu.to_vec(),
        target_charge,
        mode: s.clone(),
        source,
        target,
        exact,
        values,
        boundary,
    })
}
