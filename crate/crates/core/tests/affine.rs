use std::collections::BTreeSet;

use liecore::affine::*;
use liecore::highmod::realize_module;
use liecore::linalg::{self, Echelon, Mat};
use liecore::rat::{q, Q};
use liecore::tensor::{tensor_multiplicity, TensorQuery};
use liecore::{AlgebraId, RootSystem};
use num_traits::Zero;
use proptest::prelude::*;

fn rs(s: &str) -> RootSystem {
    RootSystem::build(AlgebraId::parse(s).unwrap()).unwrap()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn labels_at(r: &RootSystem, l: i64) -> Vec<Vec<i64>> {
    admissible_weights(r, l).iter().map(|w| w.labels(r)).collect()
}

fn fq(r: &RootSystem, l: i64, a: &[i64], b: &[i64], c: &[i64]) -> FusionQuery {
    FusionQuery::from_labels(r, l, a, b, c).unwrap()
}

#[test]
fn admissible_examples() {
    for n in 2..=4 {
        let d = rs(&format!("D{}", n + 1));
        let got: BTreeSet<Vec<i64>> = labels_at(&d, 1).into_iter().collect();
        let want: BTreeSet<Vec<i64>> = [vec![0; n + 1], unit(n + 1, 0), unit(n + 1, n - 1), unit(n + 1, n)].into();
        assert_eq!(got, want);
        let c = rs(&format!("C{n}"));
        let got: BTreeSet<Vec<i64>> = labels_at(&c, 1).into_iter().collect();
        let mut want: BTreeSet<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
        want.insert(vec![0; n]);
        assert_eq!(got, want);
    }
    for s in ["A3", "B2", "E6", "G2", "F4"] {
        assert_eq!(labels_at(&rs(s), 0), vec![vec![0; rs(s).rank()]]);
    }
}

#[test]
fn admissible_count_matches_box_enumeration() {
    for s in ["A2", "B3", "C3", "D4", "G2", "F4"] {
        let r = rs(s);
        for l in 0..=4 {
            let theta = r.positive_root_labels.last().unwrap().clone();
            let n = r.rank();
            let mut count = 0;
            let mut cur = vec![0i64; n];
            loop {
                if r.inner_labels(&cur, &theta) <= q(l) {
                    count += 1;
                }
                let mut i = 0;
                while i < n {
                    cur[i] += 1;
                    if cur[i] <= l {
                        break;
                    }
                    cur[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
            let got = labels_at(&r, l);
            assert_eq!(got.len(), count, "{s} level {l}");
            assert_eq!(got.iter().collect::<BTreeSet<_>>().len(), got.len());
        }
    }
}

// Casimir oracle: close the image of the generators in gl(V), take the
// Casimir of the trace form and rescale by the index of V.
fn casimir_value(r: &RootSystem, labels: &[i64]) -> Q {
    let m = realize_module(r, labels, u64::MAX).unwrap();
    let d = m.dim();
    let flat = |x: &Mat| -> Vec<Q> { x.iter().flatten().cloned().collect() };
    let br = |x: &Mat, y: &Mat| -> Mat {
        let a = linalg::mat_mul(x, y, d, d);
        let b = linalg::mat_mul(y, x, d, d);
        a.iter().zip(&b).map(|(p, s)| p.iter().zip(s).map(|(u, v)| u - v).collect()).collect()
    };
    let gens: Vec<Mat> = (0..r.rank()).flat_map(|i| [m.dense_e(i), m.dense_f(i)]).collect();
    let mut ech = Echelon::new();
    let mut basis: Vec<Mat> = Vec::new();
    let mut queue = gens.clone();
    while let Some(x) = queue.pop() {
        if ech.insert(&flat(&x)) {
            for g in &gens {
                queue.push(br(g, &x));
            }
            basis.push(x);
        }
    }
    assert_eq!(basis.len(), r.dim());
    let tr = |x: &Mat, y: &Mat| -> Q {
        let p = linalg::mat_mul(x, y, d, d);
        (0..d).map(|i| p[i][i].clone()).fold(Q::zero(), |a, b| a + b)
    };
    let k: Mat = basis.iter().map(|x| basis.iter().map(|y| tr(x, y)).collect()).collect();
    let kinv = linalg::inverse(&k).unwrap();
    let mut c = linalg::zeros(d, d);
    for (a, xa) in basis.iter().enumerate() {
        for (b, xb) in basis.iter().enumerate() {
            if kinv[a][b].is_zero() {
                continue;
            }
            let p = linalg::mat_mul(xa, xb, d, d);
            for i in 0..d {
                for j in 0..d {
                    c[i][j] += &kinv[a][b] * &p[i][j];
                }
            }
        }
    }
    let scalar = c[0][0].clone();
    for i in 0..d {
        for j in 0..d {
            assert_eq!(c[i][j], if i == j { scalar.clone() } else { Q::zero() });
        }
    }
    let theta = r.positive_root_labels.last().unwrap().clone();
    let mut index = Q::zero();
    for b in &m.blocks {
        let t = r.inner_labels(&b.weight, &theta);
        index += &t * &t * q(b.dim as i64);
    }
    scalar * index / q(2)
}

#[test]
fn conformal_weight_matches_casimir() {
    let cases: &[(&str, &[i64])] = &[
        ("A1", &[1]),
        ("A1", &[2]),
        ("A2", &[1, 0]),
        ("A2", &[1, 1]),
        ("B2", &[1, 0]),
        ("B2", &[0, 1]),
        ("C2", &[0, 1]),
        ("G2", &[1, 0]),
        ("D4", &[0, 0, 0, 1]),
    ];
    for &(s, l) in cases {
        let r = rs(s);
        let level = r.level_of(l).max(1);
        let w = AffineWeight::from_labels(&r, l, level).unwrap();
        let expect = casimir_value(&r, l) / q(2 * (level + r.dual_coxeter));
        assert_eq!(conformal_weight(&r, &w), expect, "{s} {l:?}");
    }
    let a1 = rs("A1");
    assert_eq!(conformal_weight(&a1, &AffineWeight::from_labels(&a1, &[1], 1).unwrap()), Q::new(1.into(), 4.into()));
}

#[test]
fn conformal_weights_positive() {
    for s in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2", "F4"] {
        let r = rs(s);
        for l in 0..=3 {
            for w in admissible_weights(&r, l) {
                let c = conformal_weight(&r, &w);
                if w.labels(&r).iter().all(|&x| x == 0) {
                    assert!(c.is_zero());
                } else {
                    assert!(c > Q::zero(), "{s} {:?}", w.labels(&r));
                }
            }
        }
    }
}

#[test]
fn sl2_fusion_oracle() {
    let r = rs("A1");
    for k in 0i64..=6 {
        for a in 0..=k {
            for b in 0..=k {
                for c in 0..=k {
                    let want = (a - b).abs() <= c && c <= (a + b).min(2 * k - a - b) && (a + b + c) % 2 == 0;
                    let got = kac_walton_fusion(&r, &fq(&r, k, &[a], &[b], &[c]), u64::MAX).unwrap();
                    assert_eq!(got, want as u64, "k={k} {a} {b} {c}");
                }
            }
        }
    }
}

#[test]
fn vacuum_fusion_and_saturation() {
    for s in ["A2", "B2", "C3", "G2", "D4"] {
        let r = rs(s);
        let zero = vec![0; r.rank()];
        for l in 0..=3 {
            for w in labels_at(&r, l) {
                assert_eq!(kac_walton_fusion(&r, &fq(&r, l, &zero, &w, &w), u64::MAX).unwrap(), 1);
            }
        }
        // At level (λ|θ)+(μ|θ) the fusion rule is the tensor multiplicity.
        let ws = labels_at(&r, 2);
        for a in &ws {
            for b in &ws {
                let l = r.level_of(a) + r.level_of(b);
                for c in labels_at(&r, l) {
                    let n = kac_walton_fusion(&r, &fq(&r, l, a, b, &c), u64::MAX).unwrap();
                    let t = tensor_multiplicity(&r, &TensorQuery::from_labels(a, b, &c), u64::MAX).unwrap();
                    assert_eq!(n, t, "{s} {a:?} {b:?} {c:?}");
                }
            }
        }
    }
}

#[test]
fn fusion_symmetries_and_tensor_bound() {
    for s in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"] {
        let r = rs(s);
        for l in 1..=3 {
            let ws = labels_at(&r, l);
            for a in &ws {
                for b in &ws {
                    for c in &ws {
                        let n = kac_walton_fusion(&r, &fq(&r, l, a, b, c), u64::MAX).unwrap();
                        let (da, dc) = (r.dual_labels(a), r.dual_labels(c));
                        let db = r.dual_labels(b);
                        assert_eq!(n, kac_walton_fusion(&r, &fq(&r, l, b, a, c), u64::MAX).unwrap());
                        assert_eq!(n, kac_walton_fusion(&r, &fq(&r, l, &da, c, b), u64::MAX).unwrap());
                        assert_eq!(n, kac_walton_fusion(&r, &fq(&r, l, &da, &db, &dc), u64::MAX).unwrap());
                        let t = tensor_multiplicity(&r, &TensorQuery::from_labels(a, b, c), u64::MAX).unwrap();
                        assert!(n <= t);
                    }
                }
            }
        }
    }
}

fn rule_disagreements(s: &str, levels: std::ops::RangeInclusive<i64>) -> Vec<FusionQuery> {
    let r = rs(s);
    let mut bad = Vec::new();
    for l in levels {
        let ws = labels_at(&r, l);
        for ch in supported_charges(&r) {
            if r.level_of(&ch) > l {
                continue;
            }
            for a in &ws {
                for b in &ws {
                    let query = fq(&r, l, &ch, a, b);
                    let PaperRule::Value(v) = paper_fusion_rule(&r, &query) else { panic!("unsupported {query:?}") };
                    if v != kac_walton_fusion(&r, &query, u64::MAX).unwrap() {
                        bad.push(query);
                    }
                }
            }
        }
    }
    bad
}

#[test]
fn closed_form_rules_match_oracle() {
    for s in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2"] {
        assert_eq!(rule_disagreements(s, 1..=3), vec![], "{s}");
    }
}

#[test]
fn closed_form_examples() {
    let b3 = rs("B3");
    let q1 = fq(&b3, 2, &[1, 0, 0], &[1, 0, 0], &[1, 0, 0]);
    assert_eq!(paper_fusion_rule(&b3, &q1), PaperRule::Value(0));
    let g2 = rs("G2");
    assert_eq!(paper_fusion_rule(&g2, &fq(&g2, 1, &[1, 0], &[1, 0], &[1, 0])), PaperRule::Value(1));
    assert_eq!(paper_fusion_rule(&g2, &fq(&g2, 2, &[0, 1], &[1, 0], &[1, 0])), PaperRule::Unsupported);
    let d4 = rs("D4");
    for spin in [[0, 0, 1, 0], [0, 0, 0, 1]] {
        for w in labels_at(&d4, 1) {
            let q2 = fq(&d4, 1, &spin, &w, &w);
            assert!(matches!(paper_fusion_rule(&d4, &q2), PaperRule::Value(_)));
        }
    }
    assert_eq!(paper_fusion_rule(&rs("E6"), &fq(&rs("E6"), 1, &[0; 6], &[0; 6], &[0; 6])), PaperRule::Unsupported);
}

#[test]
fn generating_families() {
    for l in 1..=3 {
        for n in 2..=3 {
            let d = rs(&format!("D{}", n + 1));
            let spins = [unit(n + 1, n - 1), unit(n + 1, n)];
            assert!(generating_check(&d, &spins, l, u64::MAX).unwrap().generating);
            let b = rs(&format!("B{n}"));
            assert!(generating_check(&b, &[unit(n, n - 1)], l, u64::MAX).unwrap().generating);
            let c = rs(&format!("C{n}"));
            assert!(generating_check(&c, &[unit(n, 0)], l, u64::MAX).unwrap().generating);
        }
        let g2 = rs("G2");
        let rep = generating_check(&g2, &[vec![1, 0]], l, u64::MAX).unwrap();
        assert!(rep.generating);
        for (w, chain) in &rep.chains {
            assert_eq!(chain.first().unwrap(), &vec![0, 0]);
            assert_eq!(chain.last().unwrap(), w);
        }
    }
    assert!(generating_check(&rs("B2"), &[], 0, u64::MAX).unwrap().generating);
    // The vector weight alone misses the spin weight of type B.
    assert!(!generating_check(&rs("B2"), &[vec![1, 0]], 1, u64::MAX).unwrap().generating);
}

#[test]
fn truncation_free_examples() {
    let g2 = rs("G2");
    assert!(!untruncated_applicable(&g2, &fq(&g2, 1, &[1, 0], &[1, 0], &[1, 0])));
    for s in ["A2", "B2", "C2", "G2"] {
        let r = rs(s);
        for l in 1..=3 {
            let ws = labels_at(&r, l);
            for a in &ws {
                for b in &ws {
                    for c in &ws {
                        let query = fq(&r, l, a, b, c);
                        let t = truncation_check(&r, &query, u64::MAX).unwrap();
                        assert!(!t.mismatch(), "{query:?}");
                        if r.level_of(a) + r.level_of(b) <= l {
                            assert!(t.applicable);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn reduction_conditions_examples() {
    // G2, λ = ϑ1, l = 2, μ = 2ϑ1, ν = ϑ2 via ρ = μ1 = ν1 = ϑ1.
    let g2 = rs("G2");
    let inp = ReductionInput {
        lambda: vec![1, 0],
        mu: vec![2, 0],
        nu: vec![0, 1],
        rho: vec![1, 0],
        mu1: vec![1, 0],
        nu1: vec![1, 0],
        level: 2,
        a: 1,
    };
    let f = reduction_conditions(&g2, &inp, u64::MAX).unwrap();
    assert!(f.b);
    assert!(!f.a);

    // C2: λ = ϑ1, ρ = ω2, μ1 = ω1, ν1 = ω2.
    let c2 = rs("C2");
    let inp = ReductionInput {
        lambda: vec![1, 0],
        mu: vec![1, 1],
        nu: vec![0, 2],
        rho: vec![0, 1],
        mu1: vec![1, 0],
        nu1: vec![0, 1],
        level: 2,
        a: 1,
    };
    assert!(reduction_conditions(&c2, &inp, u64::MAX).unwrap().a);

    // ρ = 0, μ1 = μ, ν1 = ν.
    let inp = ReductionInput {
        lambda: vec![1, 0],
        mu: vec![0, 0],
        nu: vec![1, 0],
        rho: vec![0, 0],
        mu1: vec![0, 0],
        nu1: vec![1, 0],
        level: 1,
        a: 1,
    };
    assert!(reduction_conditions(&c2, &inp, u64::MAX).unwrap().a);

    let mut bad = inp.clone();
    bad.a = 2;
    bad.level = 2;
    assert!(matches!(reduction_conditions(&c2, &bad, u64::MAX), Err(liecore::Error::Hypothesis(_))));
    // The adjoint of G2 has a two-dimensional zero weight space.
    let thick = ReductionInput {
        lambda: vec![0, 1],
        mu: vec![0, 0],
        nu: vec![0, 1],
        rho: vec![0, 0],
        mu1: vec![0, 0],
        nu1: vec![0, 1],
        level: 2,
        a: 2,
    };
    assert!(matches!(reduction_conditions(&g2, &thick, u64::MAX), Err(liecore::Error::Hypothesis(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn affine_reduction_is_idempotent(t in 0usize..5, raw in proptest::collection::vec(-6i64..8, 4), l in 0i64..4) {
        let names = ["A3", "B3", "C3", "G2", "D4"];
        let r = rs(names[t]);
        let x: Vec<i64> = raw[..r.rank()].to_vec();
        let k = l + r.dual_coxeter;
        if let Some((y, s)) = affine_reduce(&r, &x, k) {
            prop_assert!(y.iter().all(|&v| v > 0));
            prop_assert!(r.level_of(&y) < k);
            prop_assert_eq!(affine_reduce(&r, &y, k), Some((y.clone(), 1)));
            prop_assert!(s == 1 || s == -1);
        }
    }
}
