//! Bimultiplicative sign cocycles on lattices with an ordered basis.
//!
//! The value on basis vectors is `exp(iπ G_ij)` for `i > j` and 1 for
//! `i < j`. On the diagonal the lattice convention uses 1, while a Chevalley
//! basis needs `ε(α, α) = (−1)^{(α|α)/2}`, which the `half_diagonal` variant
//! provides. Values are phases `exp(iπ t)` reported through `t`.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::linalg::Mat;
use crate::rat::{q, Q};

/// Exponent `t` with `ε(a, b) = exp(iπ t)`, for rational coordinates.
pub fn exponent(gram: &Mat, a: &[Q], b: &[Q], half_diagonal: bool) -> Q {
    let mut t = Q::zero();
    for i in 0..a.len() {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..i {
            if !b[j].is_zero() && !gram[i][j].is_zero() {
                t += &a[i] * &b[j] * &gram[i][j];
            }
        }
        if half_diagonal && !b[i].is_zero() {
            t += &a[i] * &b[i] * &gram[i][i] / q(2);
        }
    }
    t
}

/// Parity of the exponent for integer coordinates and an integer Gram matrix.
pub fn sign_int(gram: &[Vec<i64>], a: &[i64], b: &[i64], half_diagonal: bool) -> i64 {
    let mut t = 0i64;
    for i in 0..a.len() {
        if a[i] == 0 {
            continue;
        }
        for j in 0..i {
            t += a[i] * b[j] * gram[i][j];
        }
        if half_diagonal {
            t += a[i] * b[i] * gram[i][i] / 2;
        }
    }
    if t.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
