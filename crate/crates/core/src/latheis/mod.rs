//! Even lattices, their sign cocycles and fusion rules, and the Heisenberg
//! intertwiners from which lattice vertex operators are built.
//!
//! Lattice vectors are integer coordinates in the lattice basis; dual
//! lattice vectors are rational coordinates in the same basis. Phases are
//! kept exactly as `exp(iπ t)` with `t ∈ [0, 2)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cocycle;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::rat::{q, Q};

pub mod fock;
pub mod probes;

pub use fock::{heisenberg_mode, FockBasis, FockState, HeisenbergSpace, ModeMatrix};
pub use probes::{
    adjoint_phase_check, anticommutator_check, braid_phase_check, energy_bound_probe, AdjointReport,
    AnticommutatorReport, BraidReport, EnergyProbeReport, DEFAULT_BRAID_SAMPLES,
};

/// Non-degenerate even lattice given by its Gram matrix in a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralLattice {
    gram: Vec<Vec<i64>>,
}

impl IntegralLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 || gram.iter().any(|r| r.len() != n) {
            return Err(Error::Lattice("Gram matrix must be square and nonempty".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Lattice(format!("Gram matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| gram[i][i].is_odd()) {
            return Err(Error::Lattice(format!("odd lattice: basis vector {i} has norm {}", gram[i][i])));
        }
        let lat = IntegralLattice { gram };
        if linalg::det(&lat.gram_q()).is_zero() {
            return Err(Error::Lattice("Gram matrix is degenerate".into()));
        }
        Ok(lat)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn gram_q(&self) -> Mat {
        self.gram.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    /// `(a|b)` for rational coordinates.
    pub fn inner(&self, a: &[Q], b: &[Q]) -> Q {
        linalg::form(&self.gram_q(), a, b)
    }

    pub fn inner_int(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut t = 0;
        for i in 0..a.len() {
            for j in 0..b.len() {
                t += a[i] * self.gram[i][j] * b[j];
            }
        }
        t
    }

    /// Columns of the inverse Gram matrix: the dual basis in lattice coordinates.
    pub fn dual_basis(&self) -> Vec<Vec<Q>> {
        let inv = linalg::inverse(&self.gram_q()).expect("non-degenerate");
        linalg::transpose(&inv, self.rank())
    }

    /// `|Λ°/Λ| = |det G|`.
    pub fn discriminant(&self) -> u64 {
        crate::rat::as_int(&crate::rat::abs(&linalg::det(&self.gram_q()))).expect("integral determinant") as u64
    }

    pub fn in_dual(&self, v: &[Q]) -> bool {
        v.len() == self.rank()
            && (0..self.rank()).all(|i| {
                let s: Q = (0..self.rank()).map(|j| q(self.gram[i][j]) * &v[j]).fold(Q::zero(), |a, b| a + b);
                s.is_integer()
            })
    }

    pub fn in_lattice(&self, v: &[Q]) -> bool {
        v.len() == self.rank() && v.iter().all(|x| x.is_integer())
    }

    /// Random positive-definite even lattice of the given rank.
    pub fn random(rank: usize, rng: &mut impl Rng) -> Self {
        loop {
            let b: Vec<Vec<i64>> = (0..rank).map(|_| (0..rank).map(|_| rng.random_range(-2..=2)).collect()).collect();
            let mut g = vec![vec![0i64; rank]; rank];
            for i in 0..rank {
                for j in 0..rank {
                    g[i][j] = (0..rank).map(|k| b[k][i] * b[k][j]).sum();
                }
            }
            for (i, row) in g.iter_mut().enumerate() {
                row[i] += row[i].rem_euclid(2);
            }
            if let Ok(l) = IntegralLattice::new(g) {
                return l;
            }
        }
    }
}

/// `t mod 2` in `[0, 2)`.
pub fn reduce_phase(t: Q) -> Q {
    let two = q(2);
    let k = (&t / &two).floor();
    t - k * two
}

/// Bimultiplicative cocycle with `ε(e_i, e_j) = (−1)^{(e_i|e_j)}` for
/// `i > j` and 1 otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub lattice: IntegralLattice,
    /// Values on pairs of basis vectors.
    pub values: Vec<Vec<i64>>,
}

pub fn build_cocycle(lattice: &IntegralLattice) -> Result<Cocycle> {
    let lattice = IntegralLattice::new(lattice.gram.clone())?;
    let n = lattice.rank();
    let values = (0..n)
        .map(|i| (0..n).map(|j| if i > j && lattice.gram[i][j].is_odd() { -1 } else { 1 }).collect())
        .collect();
    Ok(Cocycle { lattice, values })
}

impl Cocycle {
    /// `ε(a, b)` on the lattice.
    pub fn eval(&self, a: &[i64], b: &[i64]) -> i64 {
        cocycle::sign_int(&self.lattice.gram, a, b, false)
    }

    /// Exponent of the same bimultiplicative form extended to `Λ°`.
    pub fn phase(&self, a: &[Q], b: &[Q]) -> Q {
        reduce_phase(cocycle::exponent(&self.lattice.gram_q(), a, b, false))
    }

    /// Exponent of the commutator `ω(a, b) = ε(a, b) / ε(b, a)`.
    pub fn commutator_phase(&self, a: &[Q], b: &[Q]) -> Q {
        reduce_phase(self.phase(a, b) - self.phase(b, a))
    }

    /// Normalization, cocycle identity and commutator on `triples` random
    /// triples with coordinates in `[-bound, bound]`.
    pub fn check_invariants(&self, triples: usize, bound: i64, seed: u64) -> CocycleReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.lattice.rank();
        let zero = vec![0; n];
        let mut report = CocycleReport { triples, ..Default::default() };
        let add = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
        for _ in 0..triples {
            let mut v = || (0..n).map(|_| rng.random_range(-bound..=bound)).collect::<Vec<i64>>();
            let (a, b, c) = (v(), v(), v());
            if self.eval(&a, &zero) != 1 || self.eval(&zero, &a) != 1 {
                report.normalization_failures += 1;
            }
            if self.eval(&a, &add(&b, &c)) * self.eval(&b, &c) != self.eval(&a, &b) * self.eval(&add(&a, &b), &c) {
                report.cocycle_failures += 1;
            }
            let sign = if self.lattice.inner_int(&a, &b).is_odd() { -1 } else { 1 };
            if self.eval(&a, &b) != sign * self.eval(&b, &a) {
                report.commutator_failures += 1;
            }
        }
        report
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CocycleReport {
    pub triples: usize,
    pub normalization_failures: usize,
    pub cocycle_failures: usize,
    pub commutator_failures: usize,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.normalization_failures == 0 && self.cocycle_failures == 0 && self.commutator_failures == 0
    }
}

fn check_dual(lattice: &IntegralLattice, v: &[Q], name: &str) -> Result<()> {
    if lattice.in_dual(v) {
        Ok(())
    } else {
        Err(Error::Lattice(format!("{name} is not in the dual lattice")))
    }
}

fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Fusion rule between the modules indexed by `[λ0]`, `[μ0]`, `[ν0]`:
/// 1 exactly when `ν0 − λ0 − μ0 ∈ Λ`.
pub fn lattice_fusion(lattice: &IntegralLattice, lambda0: &[Q], mu0: &[Q], nu0: &[Q]) -> Result<u8> {
    check_dual(lattice, lambda0, "λ0")?;
    check_dual(lattice, mu0, "μ0")?;
    check_dual(lattice, nu0, "ν0")?;
    Ok(lattice.in_lattice(&sub(&sub(nu0, lambda0), mu0)) as u8)
}

/// Exponent `t` of the intertwiner phase `κ(λ, μ) = exp(iπ t)`, which is
/// `ε(λ,μ) ω(μ−μ0, λ) exp(iπ (μ−μ0|λ))`.
pub fn intertwiner_phase(cocycle: &Cocycle, lambda: &[Q], mu: &[Q], mu0: &[Q]) -> Result<Q> {
    let lat = &cocycle.lattice;
    check_dual(lat, lambda, "λ")?;
    check_dual(lat, mu, "μ")?;
    check_dual(lat, mu0, "μ0")?;
    let shift = sub(mu, mu0);
    if !lat.in_lattice(&shift) {
        return Err(Error::Lattice("μ and μ0 lie in different cosets".into()));
    }
    Ok(reduce_phase(cocycle.phase(lambda, mu) + cocycle.commutator_phase(&shift, lambda) + lat.inner(&shift, lambda)))
}

/// The two compatibility relations of `κ` with the lattice action, checked
/// on `samples` random `α ∈ Λ` and shifts of `λ0`, `μ0`.
pub fn intertwiner_relations(
    cocycle: &Cocycle,
    lambda0: &[Q],
    mu0: &[Q],
    samples: usize,
    seed: u64,
) -> Result<IntertwinerReport> {
    let lat = &cocycle.lattice;
    let n = lat.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = IntertwinerReport { samples, ..Default::default() };
    let add = |a: &[Q], b: &[Q]| -> Vec<Q> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    for _ in 0..samples {
        let mut v = || (0..n).map(|_| q(rng.random_range(-4..=4))).collect::<Vec<Q>>();
        let (alpha, da, db) = (v(), v(), v());
        let lambda = add(lambda0, &da);
        let mu = add(mu0, &db);
        let kappa = |l: &[Q], m: &[Q]| intertwiner_phase(cocycle, l, m, mu0);
        let first = cocycle.phase(&alpha, &add(&lambda, &mu)) + kappa(&lambda, &mu)?;
        let second = cocycle.phase(&alpha, &lambda) + kappa(&add(&alpha, &lambda), &mu)?;
        let third = lat.inner(&alpha, &lambda) + kappa(&lambda, &add(&alpha, &mu))? + cocycle.phase(&alpha, &mu);
        if !reduce_phase(first.clone() - second).is_zero() {
            report.first_failures += 1;
        }
        if !reduce_phase(first - third).is_zero() {
            report.second_failures += 1;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntertwinerReport {
    pub samples: usize,
    pub first_failures: usize,
    pub second_failures: usize,
}

impl IntertwinerReport {
    pub fn passed(&self) -> bool {
        self.first_failures == 0 && self.second_failures == 0
    }
}
