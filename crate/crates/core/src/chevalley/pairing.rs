//! Explicit nonvanishing checks for intertwiners between small modules.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::highmod::{hom_space_basis, realize_module, ModuleRealization};
use crate::linalg::{self, Echelon, Mat};
use crate::rat::{self, Q};
use crate::rootsys::{AlgebraId, RootSystem, Series};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn unit(dim: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[0] = Q::one();
    v
}

fn module(rs: &RootSystem, labels: &[i64]) -> Result<Arc<ModuleRealization>> {
    Ok(Arc::new(realize_module(rs, labels, u64::MAX)?))
}

fn block(m: &ModuleRealization, w: &[i64]) -> Result<usize> {
    m.block_of(w).ok_or_else(|| Error::Verification(format!("weight {w:?} missing")))
}

fn fmt_image(image: &Option<(usize, Vec<Q>)>) -> String {
    match image {
        Some((block, v)) => format!("{} in block {block}", rat::vec_string(v)),
        None => "zero".into(),
    }
}

/// `T(u ⊗ v) ≠ 0` for the G2 map `L(ϑ1) ⊗ L(ϑ1) → L(ϑ1)`, with `u` of
/// weight `−α1` and `v` highest.
pub fn g2_short_root_product() -> Result<PairingCheck> {
    let rs = RootSystem::build(AlgebraId::new(Series::G, 2)?)?;
    let v = module(&rs, &[1, 0])?;
    let homs = hom_space_basis(&rs, &v, &v, &v);
    if homs.len() != 1 {
        return Err(Error::Verification(format!("hom space has dimension {}", homs.len())));
    }
    let neg_a1: Vec<i64> = rs.simple_root_labels(0).iter().map(|x| -x).collect();
    let k = block(&v, &neg_a1)?;
    let image = homs[0].apply_pure(k, &unit(v.blocks[k].dim), 0, &unit(1));
    let pass = image.as_ref().is_some_and(|(_, w)| !linalg::is_zero_vec(w));
    Ok(PairingCheck { name: "g2_short_root_product".into(), pass, detail: format!("image {}", fmt_image(&image)) })
}

/// The `so_{2n+1}` submodule of the standard `so_{2n+2}` module generated by
/// the highest vector has dimension `2n+1` and meets the span of the
/// `±ε_{n+1}` weight vectors in a line with both components nonzero.
pub fn standard_zero_weight_split(n: usize) -> Result<PairingCheck> {
    let rs = RootSystem::build(AlgebraId::new(Series::D, n + 1)?)?;
    let mut top = vec![0; n + 1];
    top[0] = 1;
    let m = realize_module(&rs, &top, u64::MAX)?;
    let d = m.dim();
    let sum = |a: &Mat, b: &Mat| -> Mat {
        a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
    };
    let mut ops: Vec<Mat> = Vec::new();
    for i in 0..n - 1 {
        ops.push(m.dense_e(i));
        ops.push(m.dense_f(i));
    }
    ops.push(sum(&m.dense_e(n - 1), &m.dense_e(n)));
    ops.push(sum(&m.dense_f(n - 1), &m.dense_f(n)));

    let mut span = Echelon::new();
    let mut queue = vec![unit(d)];
    while let Some(v) = queue.pop() {
        if span.insert(&v) {
            queue.extend(ops.iter().map(|op| linalg::mat_vec(op, &v)));
        }
    }
    let mut plus = vec![0; n + 1];
    plus[n - 1] = -1;
    plus[n] = 1;
    let minus: Vec<i64> = plus.iter().map(|x| -x).collect();
    let (kp, km) = (block(&m, &plus)?, block(&m, &minus)?);
    let basis_vec = |k: usize| {
        let mut e = vec![Q::zero(); d];
        e[m.blocks[k].offset] = Q::one();
        e
    };
    let (rp, rm) = (span.reduce(&basis_vec(kp)), span.reduce(&basis_vec(km)));
    let cols: Mat = rp.iter().zip(&rm).map(|(a, b)| vec![a.clone(), b.clone()]).collect();
    let line = linalg::nullspace(&cols, 2);
    let pass = span.dim() == 2 * n + 1 && line.len() == 1 && line[0].iter().all(|c| !c.is_zero());
    Ok(PairingCheck {
        name: format!("standard_zero_weight_split_b{n}"),
        pass,
        detail: format!(
            "submodule dim {}, intersection {}",
            span.dim(),
            line.iter().map(|v| rat::vec_string(v)).collect::<Vec<_>>().join(", ")
        ),
    })
}

/// `⟨T(u ⊗ w) | w'⟩ ≠ 0` for the D4 maps between the vector and the two
/// spin modules; `k = 1` uses `L(ω1) ⊗ L(ω4) → L(ω3)`, `k = 2` uses
/// `L(ω1) ⊗ L(ω3) → L(ω4)`.
pub fn spin_pairing(k: usize) -> Result<PairingCheck> {
    let rs = RootSystem::build(AlgebraId::new(Series::D, 4)?)?;
    // ε-coordinates to labels: α1 = ε1−ε2, α2 = ε2−ε3, α3 = ε3−ε4, α4 = ε3+ε4.
    let labels = |v: [Q; 4]| -> Vec<i64> {
        let raw = [&v[0] - &v[1], &v[1] - &v[2], &v[2] - &v[3], &v[2] + &v[3]];
        raw.iter().map(|x| crate::rat::as_int(x).expect("integral")).collect()
    };
    let h = |n: i64| Q::new(n.into(), 2.into());
    let vector = module(&rs, &[1, 0, 0, 0])?;
    let (src, dst, u, target) = match k {
        1 => ([0, 0, 0, 1], [0, 0, 1, 0], [h(0), h(0), h(0), h(-2)], None),
        2 => ([0, 0, 1, 0], [0, 0, 0, 1], [h(0), h(0), h(-2), h(0)], Some([h(1), h(1), h(-1), h(-1)])),
        _ => return Err(Error::Unsupported(format!("k = {k}"))),
    };
    let w = module(&rs, &src)?;
    let wp = module(&rs, &dst)?;
    let homs = hom_space_basis(&rs, &vector, &w, &wp);
    if homs.len() != 1 {
        return Err(Error::Verification(format!("hom space has dimension {}", homs.len())));
    }
    let ku = block(&vector, &labels(u))?;
    let kt = match target {
        None => 0,
        Some(t) => block(&wp, &labels(t))?,
    };
    let image = homs[0].apply_pure(ku, &unit(vector.blocks[ku].dim), 0, &unit(1));
    let value = match &image {
        Some((cb, v)) if *cb == kt => wp.pair(kt, v, &unit(wp.blocks[kt].dim)),
        _ => Q::zero(),
    };
    Ok(PairingCheck {
        name: format!("spin_pairing_k{k}"),
        pass: !value.is_zero(),
        detail: format!("pairing {}", crate::rat::to_string(&value)),
    })
}

/// All intertwiner nonvanishing checks at their default sizes.
pub fn verify_pairing_lemmas() -> Result<Vec<PairingCheck>> {
    Ok(vec![
        g2_short_root_product()?,
        standard_zero_weight_split(2)?,
        standard_zero_weight_split(3)?,
        spin_pairing(1)?,
        spin_pairing(2)?,
    ])
}
