use liecore::rat::{frac, q};
use liecore::rootsys::{AlgebraId, RootSystem, Series};
use liecore::{Error, Q};
use proptest::prelude::*;

fn rs(name: &str) -> RootSystem {
    RootSystem::build(AlgebraId::parse(name).unwrap()).unwrap()
}

fn all_small() -> Vec<&'static str> {
    vec![
        "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "B1", "B2", "B3", "B4", "B5", "B6", "B7", "B8", "C1", "C2", "C3", "C4",
        "C5", "C6", "C7", "C8", "D3", "D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8", "F4", "G2",
    ]
}

#[test]
fn root_counts_match_classical_dimensions() {
    for name in all_small() {
        let r = rs(name);
        assert_eq!(2 * r.positive_roots.len(), r.id.classical_dim() - r.rank(), "{name}");
    }
    assert_eq!(2 * rs("E8").positive_roots.len(), 240);
}

#[test]
fn invalid_ranks_are_rejected() {
    assert!(matches!(AlgebraId::new(Series::D, 2), Err(Error::InvalidAlgebra(_))));
    assert!(AlgebraId::new(Series::E, 5).is_err());
    assert!(AlgebraId::new(Series::F, 3).is_err());
    assert!(AlgebraId::new(Series::G, 3).is_err());
    assert!(AlgebraId::new(Series::A, 0).is_err());
    assert!(AlgebraId::parse("X4").is_err());
}

#[test]
fn highest_root_has_norm_two_and_cartan_is_consistent() {
    for name in all_small() {
        let r = rs(name);
        let th = r.highest_root_weight();
        assert_eq!(r.inner_product(&th, &th).unwrap(), q(2), "{name}");
        let simple = r.simple_roots();
        for i in 0..r.rank() {
            for j in 0..r.rank() {
                let v = q(2) * r.inner_product(&simple[i], &simple[j]).unwrap() / r.inner_product(&simple[j], &simple[j]).unwrap();
                assert_eq!(v, q(r.cartan[i][j]), "{name} {i} {j}");
            }
        }
        for root in &r.positive_roots {
            assert!(root.iter().all(|&c| c >= 0));
        }
    }
}

#[test]
fn dual_coxeter_numbers() {
    let expect = [("A1", 2), ("A3", 4), ("B3", 5), ("C3", 4), ("D4", 6), ("E6", 12), ("E7", 18), ("E8", 30), ("F4", 9), ("G2", 4)];
    for (name, h) in expect {
        assert_eq!(rs(name).dual_coxeter, h, "{name}");
    }
}

/// ϑ_i in the simple-root basis of B_n: α_i + ... + α_n.
fn b_theta(n: usize, i: usize) -> Vec<Q> {
    (0..n).map(|k| if k >= i { q(1) } else { q(0) }).collect()
}

/// ϑ_i in the simple-root basis of C_n: α_i + ... + α_{n-1} + α_n/2.
fn c_theta(n: usize, i: usize) -> Vec<Q> {
    (0..n).map(|k| if k < i { q(0) } else if k + 1 == n { frac(1, 2) } else { q(1) }).collect()
}

/// θ_i in the simple-root basis of D_n.
fn d_theta(n: usize, i: usize) -> Vec<Q> {
    if i + 1 == n {
        let mut v = vec![q(0); n];
        v[n - 2] = frac(-1, 2);
        v[n - 1] = frac(1, 2);
        return v;
    }
    (0..n).map(|k| if k < i { q(0) } else if k + 2 >= n { frac(1, 2) } else { q(1) }).collect()
}

#[test]
fn type_b_highest_root_is_sum_of_first_two_unit_vectors() {
    for n in 2..=6 {
        let r = rs(&format!("B{n}"));
        let sum: Vec<Q> = b_theta(n, 0).iter().zip(b_theta(n, 1)).map(|(a, b)| a + b).collect();
        assert_eq!(r.highest_root_weight().coords, sum);
        for i in 0..n {
            for j in 0..n {
                let v = r.inner_product(&r.weight(b_theta(n, i)), &r.weight(b_theta(n, j))).unwrap();
                assert_eq!(v, if i == j { q(1) } else { q(0) });
            }
        }
    }
}

#[test]
fn type_c_unit_vectors_have_norm_one_half() {
    for n in 2..=6 {
        let r = rs(&format!("C{n}"));
        for i in 0..n {
            for j in 0..n {
                let v = r.inner_product(&r.weight(c_theta(n, i)), &r.weight(c_theta(n, j))).unwrap();
                assert_eq!(v, if i == j { frac(1, 2) } else { q(0) }, "C{n} {i} {j}");
            }
        }
        // Highest root 2ϑ1.
        let two: Vec<Q> = c_theta(n, 0).iter().map(|x| x * q(2)).collect();
        assert_eq!(r.highest_root_weight().coords, two);
    }
}

#[test]
fn type_d_unit_vectors_are_orthonormal() {
    for n in 3..=7 {
        let r = rs(&format!("D{n}"));
        for i in 0..n {
            for j in 0..n {
                let v = r.inner_product(&r.weight(d_theta(n, i)), &r.weight(d_theta(n, j))).unwrap();
                assert_eq!(v, if i == j { q(1) } else { q(0) }, "D{n} {i} {j}");
            }
        }
    }
}

#[test]
fn g2_normalization() {
    let r = rs("G2");
    assert_eq!(r.cartan, vec![vec![2, -1], vec![-3, 2]]);
    let t1 = r.from_labels(&[1, 0]);
    let t2 = r.from_labels(&[0, 1]);
    assert_eq!(t2, r.highest_root_weight());
    assert_eq!(r.inner_product(&t1, &t2).unwrap(), q(1));
    assert_eq!(r.inner_product(&t2, &t2).unwrap(), q(2));
    assert_eq!(r.inner_product(&t1, &t1).unwrap(), frac(2, 3));
}

#[test]
fn a1_single_positive_root() {
    let r = rs("A1");
    assert_eq!(r.positive_roots, vec![vec![1]]);
    let a = &r.simple_roots()[0];
    assert_eq!(r.inner_product(a, a).unwrap(), q(2));
}

#[test]
fn a1_reduction_by_hand() {
    let r = rs("A1");
    let w = r.weight(vec![frac(-3, 2)]);
    let red = r.to_dominant(&w).unwrap();
    assert_eq!(red.dominant.coords, vec![frac(3, 2)]);
    assert_eq!((red.sign, red.length), (-1, 1));
}

#[test]
fn dominant_regular_weight_is_fixed() {
    let r = rs("B3");
    let w = r.from_labels(&[2, 1, 3]);
    let red = r.to_dominant(&w).unwrap();
    assert_eq!(red.dominant, w);
    assert_eq!((red.sign, red.length), (1, 0));
}

#[test]
fn wall_weights_have_sign_zero() {
    let r = rs("A2");
    // ρ-shifted weight μ+ρ with μ = -ρ + ω1 lies on the α2 wall.
    let red = r.to_dominant_labels(&[1, 0]);
    assert_eq!(red.sign, 0);
    let red = r.to_dominant_labels(&[-1, 0]);
    assert_eq!(red.sign, 0);
    let red = r.to_dominant_labels(&[0, 0]);
    assert_eq!(red.sign, 0);
}

#[test]
fn dual_weights() {
    for n in 2..=5 {
        let r = rs(&format!("C{n}"));
        let mut t1 = vec![0; n];
        t1[0] = 1;
        assert_eq!(r.dual_labels(&t1), t1);
    }
    let g = rs("G2");
    assert_eq!(g.dual_labels(&[1, 0]), vec![1, 0]);
    assert_eq!(rs("E8").dual_labels(&[0; 8]), vec![0; 8]);
    // sl3: ω1 and ω2 are swapped.
    assert_eq!(rs("A2").dual_labels(&[1, 0]), vec![0, 1]);
    assert_eq!(rs("A3").dual_labels(&[1, 2, 0]), vec![0, 2, 1]);
    // D5 swaps the spin weights, D4 does not.
    assert_eq!(rs("D5").dual_labels(&[0, 0, 0, 1, 0]), vec![0, 0, 0, 0, 1]);
    assert_eq!(rs("D4").dual_labels(&[0, 0, 1, 0]), vec![0, 0, 1, 0]);
    let e6 = rs("E6");
    assert_eq!(e6.dual_labels(&[1, 0, 0, 0, 0, 0]), vec![0, 0, 0, 0, 0, 1]);
}

#[test]
fn dual_rejects_non_dominant() {
    let r = rs("A2");
    assert!(matches!(r.dual_weight(&r.from_labels(&[-1, 0])), Err(Error::NotDominant(_))));
}

#[test]
fn algebra_mismatch_is_an_error() {
    let a = rs("A2");
    let b = rs("G2");
    assert!(matches!(a.inner_product(&a.from_labels(&[1, 0]), &b.from_labels(&[1, 0])), Err(Error::AlgebraMismatch(_, _))));
}

#[test]
fn weyl_group_orders_from_regular_orbits() {
    let expect = [("A3", 24), ("B3", 48), ("C3", 48), ("D4", 192), ("G2", 12), ("F4", 1152)];
    for (name, order) in expect {
        let r = rs(name);
        assert_eq!(r.orbit_size(&vec![1; r.rank()]), order, "{name}");
    }
}

#[test]
fn weyl_dimensions() {
    assert_eq!(rs("E8").weyl_dimension(&[0, 0, 0, 0, 0, 0, 0, 1]), 248);
    assert_eq!(rs("E8").weyl_dimension(&[1, 0, 0, 0, 0, 0, 0, 0]), 3875);
    assert_eq!(rs("G2").weyl_dimension(&[1, 0]), 7);
    assert_eq!(rs("G2").weyl_dimension(&[0, 1]), 14);
    assert_eq!(rs("F4").weyl_dimension(&[0, 0, 0, 1]), 26);
    assert_eq!(rs("F4").weyl_dimension(&[1, 0, 0, 0]), 52);
    assert_eq!(rs("B3").weyl_dimension(&[0, 0, 1]), 8);
    assert_eq!(rs("A2").weyl_dimension(&[1, 1]), 8);
    // Far beyond u64: the exact value is kept and the fixed-width one saturates.
    let e8 = rs("E8");
    let big = [3; 8];
    assert!(e8.weyl_dimension_exact(&big) > num_bigint::BigInt::from(u64::MAX));
    assert_eq!(e8.weyl_dimension(&big), u64::MAX);
}

#[test]
fn admissible_enumeration_level_one() {
    let d = rs("D5");
    let got = d.dominant_weights_up_to_level(1);
    assert_eq!(got.len(), 4);
    let c = rs("C3");
    assert_eq!(c.dominant_weights_up_to_level(1).len(), 4);
}

fn algebras() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "E6", "F4", "G2"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_is_weyl_invariant(name in algebras(), labels in prop::collection::vec(-4i64..5, 8), word in prop::collection::vec(0usize..8, 0..=12)) {
        let r = rs(name);
        let n = r.rank();
        let l = &labels[..n];
        let mut moved = l.to_vec();
        for &i in &word {
            r.reflect_labels(&mut moved, i % n);
        }
        let a = r.to_dominant_labels(l);
        let b = r.to_dominant_labels(&moved);
        prop_assert_eq!(&a.dominant, &b.dominant);
        prop_assert!(RootSystem::is_dominant_labels(&a.dominant));
        // The exact rational path agrees with the integer path.
        let wr = r.to_dominant(&r.from_labels(l)).unwrap();
        prop_assert_eq!(wr.dominant, r.from_labels(&a.dominant));
        prop_assert_eq!(wr.sign, a.sign);
        prop_assert_eq!(wr.length, a.length);
    }

    #[test]
    fn dual_is_an_involution_preserving_level(name in algebras(), labels in prop::collection::vec(0i64..4, 8)) {
        let r = rs(name);
        let l = &labels[..r.rank()];
        let d = r.dual_labels(l);
        prop_assert_eq!(r.dual_labels(&d), l.to_vec());
        prop_assert_eq!(r.level_of(&d), r.level_of(l));
        prop_assert_eq!(r.weyl_dimension_exact(&d), r.weyl_dimension_exact(l));
    }

    #[test]
    fn inner_product_is_symmetric_and_invariant(name in algebras(), a in prop::collection::vec(-3i64..4, 8), b in prop::collection::vec(-3i64..4, 8), i in 0usize..8) {
        let r = rs(name);
        let n = r.rank();
        let (a, b) = (&a[..n], &b[..n]);
        prop_assert_eq!(r.inner_labels(a, b), r.inner_labels(b, a));
        let mut sa = a.to_vec();
        let mut sb = b.to_vec();
        r.reflect_labels(&mut sa, i % n);
        r.reflect_labels(&mut sb, i % n);
        prop_assert_eq!(r.inner_labels(&sa, &sb), r.inner_labels(a, b));
        let wa = r.from_labels(a);
        let wb = r.from_labels(b);
        prop_assert_eq!(r.inner_product(&wa, &wb).unwrap(), r.inner_labels(a, b));
    }
}
