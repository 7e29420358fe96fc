//! Numerical probes of the Heisenberg intertwiners on truncated Fock spaces.
//!
//! Matrix elements are exact; floats enter only through norms, complex
//! phases and power iteration.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Float, One, Zero};

use super::fock::{levels, orthonormal, state_norm, FockState, HeisenbergSpace, Modes};
use super::reduce_phase;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rat::{as_int, q, to_f64, Q};

/// `(arg z1, arg z2)` on the unit circle used by the braid probe.
pub const DEFAULT_BRAID_SAMPLES: [(f64, f64); 4] = [(1.0, 0.2), (2.5, -0.5), (3.0, 0.1), (0.3, -2.8)];

struct Truncated {
    levels: Vec<Vec<FockState>>,
    norms: Vec<Vec<Q>>,
}

impl Truncated {
    fn new(space: &HeisenbergSpace, cutoff: usize) -> Self {
        let levels = levels(space.dim(), cutoff);
        let norms = levels.iter().map(|l| l.iter().map(|s| state_norm(space, s)).collect()).collect();
        Truncated { levels, norms }
    }
}

/// `E^−E^+` block from level `from` to level `to`, cached.
struct Blocks<'a> {
    modes: Modes<'a>,
    trunc: &'a Truncated,
    cache: BTreeMap<(usize, usize), Mat>,
}

impl<'a> Blocks<'a> {
    fn new(space: &HeisenbergSpace, alpha: &'a [Q], trunc: &'a Truncated) -> Self {
        Blocks { modes: Modes::new(space, alpha), trunc, cache: BTreeMap::new() }
    }

    fn get(&mut self, from: usize, to: usize) -> Mat {
        if let Some(m) = self.cache.get(&(from, to)) {
            return m.clone();
        }
        let m = self.modes.block(&self.trunc.levels[from], &self.trunc.levels[to]);
        self.cache.insert((from, to), m.clone());
        m
    }
}

/// Adjoint of a block between monomial bases: `A†_st = A_ts n_t / n_s`.
fn adjoint(a: &Mat, src_norms: &[Q], tgt_norms: &[Q]) -> Mat {
    (0..src_norms.len())
        .map(|s| (0..tgt_norms.len()).map(|t| &a[t][s] * &tgt_norms[t] / &src_norms[s]).collect())
        .collect()
}

fn mul(a: &Mat, b: &Mat, rows: usize, cols: usize) -> Mat {
    let inner = b.len();
    let mut out = vec![vec![Q::zero(); cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn max_abs(m: &[Vec<f64>]) -> f64 {
    m.iter().flatten().fold(0.0, |a, &b| a.max(b.abs()))
}

/// Largest singular value by power iteration on `AᵀA`, reported as the
/// square root of the Rayleigh quotient.
pub fn operator_norm(a: &[Vec<f64>]) -> f64 {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    if cols == 0 || max_abs(a) == 0.0 {
        return 0.0;
    }
    let apply = |v: &[f64]| -> Vec<f64> { a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect() };
    let apply_t = |w: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; cols];
        for (r, wi) in a.iter().zip(w) {
            for (o, x) in out.iter_mut().zip(r) {
                *o += x * wi;
            }
        }
        out
    };
    let dot = |x: &[f64], y: &[f64]| -> f64 { x.iter().zip(y).map(|(p, q)| p * q).sum() };
    let mut v: Vec<f64> = (0..cols).map(|i| 1.0 + 0.5 * i as f64 / cols as f64).collect();
    let mut prev = 0.0;
    for _ in 0..5000 {
        let w = apply(&v);
        let est = Float::sqrt(dot(&w, &w) / dot(&v, &v));
        if (est - prev).abs() <= 1e-8 * est {
            return est;
        }
        prev = est;
        let u = apply_t(&w);
        let n = Float::sqrt(dot(&u, &u));
        if n == 0.0 {
            return est;
        }
        v = u.iter().map(|x| x / n).collect();
    }
    prev
}

fn require_unit(space: &HeisenbergSpace, alpha: &[Q]) -> Result<()> {
    space.check_charge(alpha, "α")?;
    if space.inner(alpha, alpha) != q(1) {
        return Err(Error::Hypothesis("the anticommutator relation needs (α|α) = 1".into()));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct AnticommutatorReport {
    /// Largest deviation from `δ_{n,m}` on blocks with no truncated intermediate state.
    pub interior_max: f64,
    /// Every interior block vanishes exactly.
    pub interior_exact: bool,
    pub interior_blocks: usize,
    /// Deviation on blocks where an intermediate state was cut off.
    pub boundary_max: f64,
    pub boundary_blocks: usize,
    /// `⟨(Y(n)Y(n)† + Y(n−1)†Y(n−1)) Ω | Ω⟩` for each interior diagonal pair.
    pub vacuum_diagonal: Vec<Q>,
}

/// `Y(n)Y(m)† + Y(m−1)†Y(n−1) = δ_{n,m}` for the charge-free part
/// `Y(x) = E^−(α,x)E^+(α,x)`, which commutes with every charge shift, with
/// `Y(n)` the mode raising the energy by `n`. Modes run over
/// `[−max_mode, max_mode]`.
pub fn anticommutator_check(
    space: &HeisenbergSpace,
    alpha: &[Q],
    cutoff: usize,
    max_mode: i64,
) -> Result<AnticommutatorReport> {
    require_unit(space, alpha)?;
    let trunc = Truncated::new(space, cutoff);
    let mut y = Blocks::new(space, alpha, &trunc);
    let e = cutoff as i64;
    let mut report = AnticommutatorReport {
        interior_max: 0.0,
        interior_exact: true,
        interior_blocks: 0,
        boundary_max: 0.0,
        boundary_blocks: 0,
        vacuum_diagonal: Vec::new(),
    };
    for n in -max_mode..=max_mode {
        for m in -max_mode..=max_mode {
            for lvl in 0..=e {
                let t = lvl + n - m;
                if t < 0 || t > e {
                    continue;
                }
                let (dl, dt) = (trunc.levels[lvl as usize].len(), trunc.levels[t as usize].len());
                let mut total = vec![vec![Q::zero(); dl]; dt];
                let mut interior = true;
                // Y(n) Y(m)†: lvl → lvl−m → t.
                let mid = lvl - m;
                if mid > e {
                    interior = false;
                } else if mid >= 0 {
                    let ym = y.get(mid as usize, lvl as usize);
                    let ym_dag = adjoint(&ym, &trunc.norms[mid as usize], &trunc.norms[lvl as usize]);
                    let yn = y.get(mid as usize, t as usize);
                    add_into(&mut total, &mul(&yn, &ym_dag, dt, dl));
                }
                // Y(m−1)† Y(n−1): lvl → lvl+n−1 → t.
                let mid = lvl + n - 1;
                if mid > e {
                    interior = false;
                } else if mid >= 0 {
                    let yn = y.get(lvl as usize, mid as usize);
                    let ym = y.get(t as usize, mid as usize);
                    let ym_dag = adjoint(&ym, &trunc.norms[t as usize], &trunc.norms[mid as usize]);
                    add_into(&mut total, &mul(&ym_dag, &yn, dt, dl));
                }
                if n == m {
                    if lvl == 0 && interior {
                        report.vacuum_diagonal.push(total[0][0].clone());
                    }
                    for (i, row) in total.iter_mut().enumerate() {
                        row[i] -= Q::one();
                    }
                }
                let dev = max_abs(&orthonormal(&total, &trunc.norms[lvl as usize], &trunc.norms[t as usize]));
                if interior {
                    report.interior_blocks += 1;
                    report.interior_max = report.interior_max.max(dev);
                    report.interior_exact &= total.iter().flatten().all(|x| x.is_zero());
                } else {
                    report.boundary_blocks += 1;
                    report.boundary_max = report.boundary_max.max(dev);
                }
            }
        }
    }
    Ok(report)
}

fn add_into(acc: &mut Mat, m: &Mat) {
    for (r, s) in acc.iter_mut().zip(m) {
        for (x, y) in r.iter_mut().zip(s) {
            *x += y;
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnergyProbeReport {
    pub cutoffs: Vec<usize>,
    pub order: u32,
    /// Mode indices `s` probed, in increasing order.
    pub modes: Vec<Q>,
    /// `norms[k][i]`: norm of `Y_α(modes[i]) (1+L0)^{−r}` at `cutoffs[k]`.
    pub norms: Vec<Vec<f64>>,
    pub maxima: Vec<f64>,
    pub slack: f64,
    pub bounded: bool,
}

/// Operator norms of `Y_α(s)(1+L0)^{−r}` from the truncated `L(μ)` for every
/// mode with `|s| ≤ max_mode`. The verdict is bounded when each per-cutoff
/// maximum stays within `slack` times the maximum at the smallest cutoff.
pub fn energy_bound_probe(
    space: &HeisenbergSpace,
    alpha: &[Q],
    mu: &[Q],
    order: u32,
    cutoffs: &[usize],
    max_mode: i64,
    slack: f64,
) -> Result<EnergyProbeReport> {
    space.check_charge(alpha, "α")?;
    space.check_charge(mu, "μ")?;
    if cutoffs.is_empty() || cutoffs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Hypothesis("cutoffs must be nonempty and increasing".into()));
    }
    let top = *cutoffs.last().unwrap();
    let trunc = Truncated::new(space, top);
    let mut z = Blocks::new(space, alpha, &trunc);
    let base = -q(1) - space.inner(alpha, mu);
    let lowest = space.inner(mu, mu) / q(2);
    // s = base − d for integer energy changes d; keep |s| ≤ max_mode.
    let mut shifts: Vec<i64> = Vec::new();
    let lo = (&base - q(max_mode)).ceil();
    let hi = (&base + q(max_mode)).floor();
    let (lo, hi) = (as_int(&lo).unwrap(), as_int(&hi).unwrap());
    for d in lo..=hi {
        shifts.push(d);
    }
    shifts.reverse();
    let modes: Vec<Q> = shifts.iter().map(|&d| &base - q(d)).collect();
    // Block norms per (shift, source level), independent of the cutoff.
    let mut block_norm: BTreeMap<(i64, usize), f64> = BTreeMap::new();
    for &d in &shifts {
        for n in 0..=top {
            let m = n as i64 + d;
            if m < 0 || m as usize > top {
                continue;
            }
            let blk = z.get(n, m as usize);
            let on = orthonormal(&blk, &trunc.norms[n], &trunc.norms[m as usize]);
            let weight = to_f64(&(q(1) + &lowest + q(n as i64)));
            block_norm.insert((d, n), operator_norm(&on) / Float::powi(weight, order as i32));
        }
    }
    let norms: Vec<Vec<f64>> = cutoffs
        .iter()
        .map(|&e| {
            shifts
                .iter()
                .map(|&d| {
                    block_norm
                        .iter()
                        .filter(|(&(dd, n), _)| dd == d && n <= e && n as i64 + d <= e as i64)
                        .fold(0.0, |a, (_, &v)| a.max(v))
                })
                .collect()
        })
        .collect();
    let maxima: Vec<f64> = norms.iter().map(|r| r.iter().fold(0.0, |a: f64, &b| a.max(b))).collect();
    let bounded = maxima.iter().all(|&m| m.is_finite() && m <= slack * maxima[0]);
    Ok(EnergyProbeReport { cutoffs: cutoffs.to_vec(), order, modes, norms, maxima, slack, bounded })
}

#[derive(Clone, Debug)]
pub struct AdjointReport {
    /// `t` with the adjoint phase `exp(iπ t) = exp(iπ (α|α)/2)`.
    pub phase_exponent: Q,
    pub phase: Complex64,
    /// Largest deviation between the adjoint and the phased `(−α)`-modes.
    pub max_deviation: f64,
    /// The same comparison with the phase left off the `(−α)` side.
    pub max_deviation_without_phase: f64,
    pub blocks: usize,
}

fn phase_of(t: &Q) -> Complex64 {
    Complex64::from_polar(1.0, core::f64::consts::PI * to_f64(&reduce_phase(t.clone())))
}

/// Adjoint of `Y_α` from `L(β)` to `L(α+β)`, formed mode by mode as
/// `Y†(C v_α, x) = [Y(e^{xL1}(e^{−iπ}x^{−2})^{L0} v_α, x^{−1})]†`, against
/// `exp(iπ(α|α)/2) Y_{−α}` on `L(α+β)`. Energy changes run over
/// `[−max_offset, max_offset]`.
pub fn adjoint_phase_check(
    space: &HeisenbergSpace,
    alpha: &[Q],
    beta: &[Q],
    cutoff: usize,
    max_offset: i64,
) -> Result<AdjointReport> {
    space.check_charge(alpha, "α")?;
    space.check_charge(beta, "β")?;
    let neg: Vec<Q> = alpha.iter().map(|x| -x).collect();
    let ab: Vec<Q> = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
    let aa = space.inner(alpha, alpha);
    let delta = &aa / q(2);
    // v_α is primary of weight Δ, so the scalar inside Y is e^{−iπΔ}x^{−2Δ};
    // the adjoint conjugates it.
    let phase_exponent = reduce_phase(delta.clone());
    let phase = phase_of(&phase_exponent);
    let trunc = Truncated::new(space, cutoff);
    let mut plus = Blocks::new(space, alpha, &trunc);
    let mut minus = Blocks::new(space, &neg, &trunc);
    let mut report =
        AdjointReport { phase_exponent, phase, max_deviation: 0.0, max_deviation_without_phase: 0.0, blocks: 0 };
    let e = cutoff as i64;
    for d in -max_offset..=max_offset {
        let s = -q(1) - space.inner(alpha, beta) - q(d);
        let t = &aa - &s - q(2);
        let back = super::fock::mode_shift(space, &neg, &ab, &t)
            .ok_or_else(|| Error::Verification(format!("mode {} of the (−α)-operator vanishes", t)))?;
        if back != -d {
            return Err(Error::Verification(format!("grading mismatch: {back} vs {}", -d)));
        }
        for n in 0..=e {
            let m = n + d;
            if m < 0 || m > e {
                continue;
            }
            let (n, m) = (n as usize, m as usize);
            let y = plus.get(n, m);
            let y_dag = adjoint(&y, &trunc.norms[n], &trunc.norms[m]);
            let other = minus.get(m, n);
            let lhs = orthonormal(&y_dag, &trunc.norms[m], &trunc.norms[n]);
            let rhs = orthonormal(&other, &trunc.norms[m], &trunc.norms[n]);
            for (lr, rr) in lhs.iter().zip(&rhs) {
                for (&l, &r) in lr.iter().zip(rr) {
                    let adj = phase * l;
                    report.max_deviation = report.max_deviation.max((adj - phase * r).norm());
                    report.max_deviation_without_phase =
                        report.max_deviation_without_phase.max((adj - Complex64::new(r, 0.0)).norm());
                }
            }
            report.blocks += 1;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct BraidReport {
    pub pairing: i64,
    pub expected: Complex64,
    /// Coefficients `c_N` of `(z2/z1)^N` in `⟨v|Y_α(z1)Y_β(z2)v_γ⟩`.
    pub forward_coefficients: Vec<Q>,
    /// Coefficients `d_N` of `(z1/z2)^N` in `⟨v|Y_β(z2)Y_α(z1)v_γ⟩`.
    pub reverse_coefficients: Vec<Q>,
    pub ratios: Vec<Complex64>,
    pub max_deviation: f64,
}

/// Leading matrix elements of both orderings on `|z1| = |z2| = 1`, summed
/// over intermediate states up to `cutoff`, against the phase
/// `exp(iπ(α|β))`. The sums terminate only for `(α|β) ∈ ℤ≥0`, which is
/// required; other pairings are rejected.
pub fn braid_phase_check(
    space: &HeisenbergSpace,
    alpha: &[Q],
    beta: &[Q],
    gamma: &[Q],
    cutoff: usize,
    samples: &[(f64, f64)],
) -> Result<BraidReport> {
    space.check_charge(alpha, "α")?;
    space.check_charge(beta, "β")?;
    space.check_charge(gamma, "γ")?;
    let ab_q = space.inner(alpha, beta);
    let ab = match as_int(&ab_q) {
        Some(v) if v >= 0 => v,
        _ => {
            return Err(Error::Hypothesis(format!(
                "(α|β) = {} is not a nonnegative integer, so the series does not terminate on |z1| = |z2|",
                crate::rat::to_string(&ab_q)
            )))
        }
    };
    if (cutoff as i64) < ab {
        return Err(Error::Hypothesis(format!("cutoff {cutoff} is below (α|β) = {ab}")));
    }
    for &(t1, t2) in samples {
        if !(t2 < t1 && t1 < t2 + 2.0 * core::f64::consts::PI) {
            return Err(Error::Hypothesis(format!("samples need arg z2 < arg z1 < arg z2 + 2π, got ({t1}, {t2})")));
        }
    }
    let trunc = Truncated::new(space, cutoff);
    let empty: FockState = Vec::new();
    let mut a = Modes::new(space, alpha);
    let mut b = Modes::new(space, beta);
    let mut forward = Vec::new();
    let mut reverse = Vec::new();
    for level in &trunc.levels {
        let mut c = Q::zero();
        let mut d = Q::zero();
        for w in level {
            c += a.elem(w, &empty) * b.elem(&empty, w);
            d += b.elem(w, &empty) * a.elem(&empty, w);
        }
        forward.push(c);
        reverse.push(d);
    }
    let f = |x: Q| to_f64(&x);
    let (a_bg, b_g) = (f(space.inner(alpha, &add(beta, gamma))), f(space.inner(beta, gamma)));
    let (b_ag, a_g) = (f(space.inner(beta, &add(alpha, gamma))), f(space.inner(alpha, gamma)));
    let expected = phase_of(&ab_q);
    let mut report = BraidReport {
        pairing: ab,
        expected,
        forward_coefficients: forward.clone(),
        reverse_coefficients: reverse.clone(),
        ratios: Vec::new(),
        max_deviation: 0.0,
    };
    let cis = |x: f64| Complex64::from_polar(1.0, x);
    for &(t1, t2) in samples {
        let series = |coeffs: &[Q], angle: f64| -> Complex64 {
            coeffs.iter().enumerate().map(|(n, c)| cis(angle * n as f64) * to_f64(c)).sum()
        };
        let lhs = cis(a_bg * t1 + b_g * t2) * series(&forward, t2 - t1);
        let rhs = cis(b_ag * t2 + a_g * t1) * series(&reverse, t1 - t2);
        report.ratios.push(lhs / rhs);
        report.max_deviation = report.max_deviation.max((lhs - expected * rhs).norm());
    }
    Ok(report)
}

fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
