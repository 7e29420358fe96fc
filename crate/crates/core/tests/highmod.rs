use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use liecore::highmod::{self, full_character, hom_space_basis, realize_module, weight_multiplicity, DEFAULT_CAP};
use liecore::linalg::{self, Mat};
use liecore::rat::q;
use liecore::rootsys::{AlgebraId, RootSystem};
use liecore::Error;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn rs(name: &str) -> RootSystem {
    RootSystem::build(AlgebraId::parse(name).unwrap()).unwrap()
}

/// Kostant partition function counter over the positive roots.
struct Kostant<'a> {
    roots: &'a [Vec<i64>],
    memo: HashMap<(Vec<i64>, usize), u64>,
}

impl Kostant<'_> {
    fn count(&mut self, gamma: &[i64], k: usize) -> u64 {
        if gamma.iter().any(|&x| x < 0) {
            return 0;
        }
        if k == self.roots.len() {
            return u64::from(gamma.iter().all(|&x| x == 0));
        }
        let key = (gamma.to_vec(), k);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut total = 0;
        let mut g = gamma.to_vec();
        loop {
            total += self.count(&g, k + 1);
            for (x, r) in g.iter_mut().zip(&self.roots[k]) {
                *x -= r;
            }
            if g.iter().any(|&x| x < 0) {
                break;
            }
        }
        self.memo.insert(key, total);
        total
    }
}

fn root_coords(r: &RootSystem, labels: &[i64]) -> Option<Vec<i64>> {
    r.from_labels(labels).coords.iter().map(liecore::rat::as_int).collect()
}

/// Weyl-Kostant multiplicity: Σ_w sgn(w) P(w(λ+ρ) − (μ+ρ)).
fn kostant_mult(r: &RootSystem, k: &mut Kostant, lambda: &[i64], mu: &[i64]) -> i64 {
    let lr: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
    let mr: Vec<i64> = mu.iter().map(|x| x + 1).collect();
    // BFS over the regular orbit of λ+ρ; distance = length.
    let mut seen: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    seen.insert(lr.clone(), 0);
    let mut frontier = vec![lr];
    let mut total = 0i64;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            let len = seen[v];
            let diff: Vec<i64> = v.iter().zip(&mr).map(|(a, b)| a - b).collect();
            if let Some(g) = root_coords(r, &diff) {
                let p = k.count(&g, 0) as i64;
                total += if len % 2 == 0 { p } else { -p };
            }
            for i in 0..r.rank() {
                let mut w = v.clone();
                r.reflect_labels(&mut w, i);
                if !seen.contains_key(&w) {
                    seen.insert(w.clone(), len + 1);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    total
}

fn small_weights(r: &RootSystem, cap: u64) -> Vec<Vec<i64>> {
    r.dominant_weights_up_to_dim(cap)
}

#[test]
fn freudenthal_matches_kostant_oracle_up_to_dim_64() {
    for name in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2"] {
        let r = rs(name);
        let mut k = Kostant { roots: &r.positive_roots, memo: HashMap::new() };
        for lambda in small_weights(&r, 64) {
            let ch = full_character(&r, &lambda, DEFAULT_CAP).unwrap();
            assert_eq!(ch.dim(&r), r.weyl_dimension(&lambda), "{name} {lambda:?}");
            assert_eq!(ch.mults[&lambda], 1);
            for (mu, m) in &ch.mults {
                assert_eq!(kostant_mult(&r, &mut k, &lambda, mu), *m as i64, "{name} {lambda:?} {mu:?}");
            }
            // Dominant weights absent from the table have multiplicity zero.
            for mu in small_weights(&r, 64) {
                if !ch.mults.contains_key(&mu) && root_coords(&r, &lambda.iter().zip(&mu).map(|(a, b)| a - b).collect::<Vec<_>>()).is_some() {
                    assert_eq!(kostant_mult(&r, &mut k, &lambda, &mu), 0);
                }
            }
        }
    }
}

#[test]
fn g2_seven_dimensional_weights() {
    let r = rs("G2");
    let ch = full_character(&r, &[1, 0], DEFAULT_CAP).unwrap();
    let all = ch.all_weights(&r);
    assert_eq!(all.len(), 7);
    assert!(all.iter().all(|(_, m)| *m == 1));
    // ±ϑ1, ±η, ±α1, 0 with α1 = (2,−1) and η the third short root ϑ1 − α1 = α1 + α2.
    let mut expect: Vec<Vec<i64>> = vec![vec![1, 0], vec![-1, 0], vec![-1, 1], vec![1, -1], vec![2, -1], vec![-2, 1], vec![0, 0]];
    let eta: Vec<i64> = r.simple_root_labels(1).iter().zip(r.simple_root_labels(0)).map(|(a, b)| a + b).collect();
    assert_eq!(eta, vec![-1, 1]);
    expect.sort();
    let mut got: Vec<Vec<i64>> = all.into_iter().map(|(w, _)| w).collect();
    got.sort();
    assert_eq!(got, expect);
    assert_eq!(full_character(&r, &[0, 1], DEFAULT_CAP).unwrap().dim(&r), 14);
}

#[test]
fn spin_dimensions() {
    for n in 2..=5usize {
        let b = rs(&format!("B{n}"));
        let mut s = vec![0; n];
        s[n - 1] = 1;
        assert_eq!(full_character(&b, &s, 4096).unwrap().dim(&b), 1 << n);
        let d = rs(&format!("D{}", n + 1));
        for spin in [n - 1, n] {
            let mut s = vec![0; n + 1];
            s[spin] = 1;
            assert_eq!(full_character(&d, &s, 4096).unwrap().dim(&d), 1 << n);
        }
    }
}

#[test]
fn standard_modules_have_unit_multiplicities() {
    for n in 2..=5usize {
        let d = rs(&format!("D{}", n + 1));
        let mut t1 = vec![0; n + 1];
        t1[0] = 1;
        let ch = full_character(&d, &t1, DEFAULT_CAP).unwrap();
        let all = ch.all_weights(&d);
        assert_eq!(all.len(), 2 * n + 2);
        assert!(all.iter().all(|(_, m)| *m == 1));
    }
    let r = rs("E6");
    let ch = full_character(&r, &[0; 6], DEFAULT_CAP).unwrap();
    assert_eq!(ch.mults.len(), 1);
}

#[test]
fn cap_is_enforced() {
    let r = rs("E8");
    assert!(matches!(full_character(&r, &[1, 0, 0, 0, 0, 0, 0, 0], 1000), Err(Error::CapExceeded { dim: 3875, cap: 1000 })));
    assert!(matches!(realize_module(&r, &[1, 0, 0, 0, 0, 0, 0, 0], DEFAULT_CAP), Err(Error::CapExceeded { .. })));
}

#[test]
fn multiplicity_of_off_coset_weight_is_zero() {
    let r = rs("A1");
    let l = r.from_labels(&[2]);
    assert_eq!(weight_multiplicity(&r, &l, &r.from_labels(&[1])).unwrap(), 0);
    assert_eq!(weight_multiplicity(&r, &l, &r.from_labels(&[0])).unwrap(), 1);
    assert_eq!(weight_multiplicity(&r, &l, &l).unwrap(), 1);
}

fn sub(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = b.first().map_or(0, |r| r.len());
    linalg::mat_mul(a, b, b.len(), n)
}

fn is_zero(m: &Mat) -> bool {
    m.iter().all(|r| r.iter().all(Zero::is_zero))
}

fn positive_definite(g: &Mat) -> bool {
    // Exact LDLᵀ pivots.
    let n = g.len();
    let mut a = g.clone();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    true
}

fn check_realization(r: &RootSystem, lambda: &[i64]) {
    let m = realize_module(r, lambda, DEFAULT_CAP).unwrap();
    assert_eq!(m.dim() as u64, r.weyl_dimension(lambda));
    let ch = full_character(r, lambda, DEFAULT_CAP).unwrap();
    for blk in &m.blocks {
        assert_eq!(blk.dim as u64, ch.multiplicity(r, &blk.weight), "{lambda:?} {:?}", blk.weight);
    }
    let n = r.rank();
    let e: Vec<Mat> = (0..n).map(|i| m.dense_e(i)).collect();
    let f: Vec<Mat> = (0..n).map(|i| m.dense_f(i)).collect();
    let h: Vec<Mat> = (0..n).map(|i| m.dense_h(i)).collect();
    let g = m.dense_gram();
    for i in 0..n {
        for j in 0..n {
            let ef = sub(&mul(&e[i], &f[j]), &mul(&f[j], &e[i]));
            if i == j {
                assert_eq!(ef, h[i]);
            } else {
                assert!(is_zero(&ef));
            }
            let he = sub(&mul(&h[i], &e[j]), &mul(&e[j], &h[i]));
            let scaled: Mat = e[j].iter().map(|row| row.iter().map(|x| x * q(r.cartan[j][i])).collect()).collect();
            assert_eq!(he, scaled);
            let hf = sub(&mul(&h[i], &f[j]), &mul(&f[j], &h[i]));
            let scaled: Mat = f[j].iter().map(|row| row.iter().map(|x| -x * q(r.cartan[j][i])).collect()).collect();
            assert_eq!(hf, scaled);
        }
        // Contravariance: Eᵀ G = G F.
        let et = linalg::transpose(&e[i], m.dim());
        assert_eq!(mul(&et, &g), mul(&g, &f[i]));
    }
    assert!(positive_definite(&g));
}

#[test]
fn realizations_satisfy_generator_relations() {
    for name in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2"] {
        let r = rs(name);
        for lambda in small_weights(&r, 40) {
            check_realization(&r, &lambda);
        }
    }
}

#[test]
fn a1_fundamental_is_elementary() {
    let r = rs("A1");
    let m = realize_module(&r, &[1], DEFAULT_CAP).unwrap();
    assert_eq!(m.dense_e(0), vec![vec![q(0), q(1)], vec![q(0), q(0)]]);
    assert_eq!(m.dense_f(0), vec![vec![q(0), q(0)], vec![q(1), q(0)]]);
}

#[test]
fn symplectic_standard_and_half_spin_realizations() {
    for n in 2..=4usize {
        let c = rs(&format!("C{n}"));
        let mut t1 = vec![0; n];
        t1[0] = 1;
        let m = realize_module(&c, &t1, DEFAULT_CAP).unwrap();
        assert_eq!(m.dim(), 2 * n);
        assert!(m.blocks.iter().all(|b| b.dim == 1));
        check_realization(&c, &t1);
    }
    let d = rs("D4");
    for s in [[0, 0, 1, 0], [0, 0, 0, 1]] {
        assert_eq!(realize_module(&d, &s, DEFAULT_CAP).unwrap().dim(), 8);
        check_realization(&d, &s);
    }
}

fn hom_dim(r: &RootSystem, a: &[i64], b: &[i64], c: &[i64]) -> usize {
    let ma = Arc::new(realize_module(r, a, DEFAULT_CAP).unwrap());
    let mb = Arc::new(realize_module(r, b, DEFAULT_CAP).unwrap());
    let mc = Arc::new(realize_module(r, c, DEFAULT_CAP).unwrap());
    hom_space_basis(r, &ma, &mb, &mc).len()
}

fn check_equivariance(r: &RootSystem, a: &[i64], b: &[i64], c: &[i64]) -> usize {
    let ma = Arc::new(realize_module(r, a, DEFAULT_CAP).unwrap());
    let mb = Arc::new(realize_module(r, b, DEFAULT_CAP).unwrap());
    let mc = Arc::new(realize_module(r, c, DEFAULT_CAP).unwrap());
    let basis = hom_space_basis(r, &ma, &mb, &mc);
    let (da, db) = (ma.dim(), mb.dim());
    let kron = |x: &Mat, y: &Mat| -> Mat {
        let mut out = linalg::zeros(da * db, da * db);
        for i in 0..da {
            for j in 0..da {
                if x[i][j].is_zero() {
                    continue;
                }
                for k in 0..db {
                    out[i * db + k][j * db + k] += &x[i][j];
                }
            }
        }
        for i in 0..db {
            for j in 0..db {
                if y[i][j].is_zero() {
                    continue;
                }
                for k in 0..da {
                    out[k * db + i][k * db + j] += &y[i][j];
                }
            }
        }
        out
    };
    for t in &basis {
        let dense = t.to_dense();
        assert!(!is_zero(&dense));
        for i in 0..r.rank() {
            for (xa, xb, xc) in [
                (ma.dense_e(i), mb.dense_e(i), mc.dense_e(i)),
                (ma.dense_f(i), mb.dense_f(i), mc.dense_f(i)),
                (ma.dense_h(i), mb.dense_h(i), mc.dense_h(i)),
            ] {
                assert_eq!(mul(&dense, &kron(&xa, &xb)), mul(&xc, &dense));
            }
        }
    }
    basis.len()
}

#[test]
fn intertwiners_commute_with_generators() {
    let g = rs("G2");
    assert_eq!(check_equivariance(&g, &[1, 0], &[1, 0], &[1, 0]), 1);
    assert_eq!(check_equivariance(&g, &[1, 0], &[1, 0], &[0, 0]), 1);
    assert_eq!(check_equivariance(&g, &[1, 0], &[1, 0], &[0, 1]), 1);
    let a = rs("A2");
    assert_eq!(check_equivariance(&a, &[1, 1], &[1, 1], &[1, 1]), 2);
    assert_eq!(check_equivariance(&a, &[1, 0], &[1, 0], &[0, 0]), 0);
    assert_eq!(check_equivariance(&a, &[1, 0], &[0, 1], &[0, 0]), 1);
    let b = rs("B2");
    assert_eq!(check_equivariance(&b, &[0, 1], &[0, 1], &[1, 0]), 1);
}

#[test]
fn trivial_factor_hom_is_one_dimensional() {
    for name in ["A2", "B3", "G2", "D4"] {
        let r = rs(name);
        for lambda in small_weights(&r, 30) {
            assert_eq!(hom_dim(&r, &vec![0; r.rank()], &lambda, &lambda), 1);
        }
    }
}

#[test]
fn invariant_pairing_exists_only_with_the_dual() {
    for name in ["A2", "A3", "B2", "C3", "D4", "G2"] {
        let r = rs(name);
        let ws = small_weights(&r, 30);
        for a in &ws {
            for b in &ws {
                let expect = usize::from(r.dual_labels(a) == *b);
                assert_eq!(hom_dim(&r, a, b, &vec![0; r.rank()]), expect, "{name} {a:?} {b:?}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplicity_is_weyl_invariant(idx in 0usize..6, l in prop::collection::vec(0i64..2, 4), mu in prop::collection::vec(-3i64..4, 4), word in prop::collection::vec(0usize..4, 0..=12)) {
        let name = ["A3", "B3", "C3", "D4", "G2", "A2"][idx];
        let r = rs(name);
        let n = r.rank();
        let ch = highmod::full_character(&r, &l[..n], u64::MAX).unwrap();
        let mut w = mu[..n].to_vec();
        for &i in &word {
            r.reflect_labels(&mut w, i % n);
        }
        prop_assert_eq!(ch.multiplicity(&r, &mu[..n]), ch.multiplicity(&r, &w));
        prop_assert_eq!(ch.dim(&r), r.weyl_dimension(&l[..n]));
    }
}

