//! The commuting pair `g2 ⊕ f4 ⊂ e8` from Dynkin's generators.
//!
//! Words are written in Dynkin's numbering of the E8 diagram: a chain
//! `1 − 2 − … − 7` with node 8 attached to node 5. Generator words are
//! bracketed from the left; read from the right, the long words of `A1`
//! vanish for every labeling of the diagram.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{build_simply_laced, joint_dim, EmbeddedSubalgebra, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::rat::{q, Q};
use crate::rootsys::{AlgebraId, RootSystem, Series};

/// Zero-based Bourbaki node for each Dynkin node `1..=8`.
pub const DYNKIN_TO_BOURBAKI: [usize; 8] = [7, 6, 5, 4, 3, 2, 0, 1];

/// Left-nested bracket for a word of one-based Dynkin node numbers.
pub fn dynkin_word(alg: &StructureAlgebra, word: &[usize]) -> Vec<Q> {
    let w: Vec<usize> = word.iter().map(|&k| DYNKIN_TO_BOURBAKI[k - 1]).collect();
    alg.left_nested_bracket(&w)
}

fn add(parts: &[(i64, Vec<Q>)]) -> Vec<Q> {
    let mut out = alloc::vec![Q::zero(); parts[0].1.len()];
    for (c, v) in parts {
        for (o, x) in out.iter_mut().zip(v) {
            *o += q(*c) * x;
        }
    }
    out
}

/// Verified embedding together with the sign variant that passed.
#[derive(Clone, Debug)]
pub struct G2F4Embedding {
    pub ambient: Arc<StructureAlgebra>,
    pub g2: EmbeddedSubalgebra,
    pub f4: EmbeddedSubalgebra,
    /// Coefficients of the three summands of `A1`.
    pub signs: [i64; 3],
    /// Variants tried before `signs`, with the relation that broke.
    pub rejected: Vec<([i64; 3], String)>,
    pub joint_dim: usize,
    pub g2_perm: Vec<usize>,
    pub f4_perm: Vec<usize>,
}

impl G2F4Embedding {
    /// `(A2|A2) = 1` and `[A2, A2*]` is the simple coroot itself.
    pub fn long_generator_normalized(&self) -> bool {
        let alg = &*self.ambient;
        let a2 = &self.g2.generators[1];
        alg.inner(a2, a2) == q(1) && self.g2.cartan_images[1] == self.g2.coroots[1]
    }
}

fn sign_variants() -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for first in [1, -1] {
        for (s2, s3) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
            out.push([first, -s2, s3]);
        }
    }
    out
}

fn try_variant(
    alg: &Arc<StructureAlgebra>,
    signs: [i64; 3],
    g2_rs: &RootSystem,
    f4_rs: &RootSystem,
    f4: &EmbeddedSubalgebra,
) -> core::result::Result<(EmbeddedSubalgebra, Vec<usize>), String> {
    let a1 = add(&[
        (signs[0], dynkin_word(alg, &[2, 3, 4, 5, 6, 8, 5, 4, 3])),
        (signs[1], dynkin_word(alg, &[2, 3, 4, 5, 6, 7, 8, 5, 4])),
        (signs[2], dynkin_word(alg, &[2, 3, 4, 5, 6, 7, 8, 5, 6])),
    ]);
    let a2 = dynkin_word(alg, &[1]);
    let g2 = EmbeddedSubalgebra::generate(alg.clone(), alloc::vec![a1, a2], 14).map_err(|e| format!("g2 part: {e}"))?;
    if g2.dim() != 14 {
        return Err(format!("g2 part has dimension {}", g2.dim()));
    }
    let perm = g2.identify(g2_rs).ok_or_else(|| format!("g2 part has Cartan matrix {:?}", g2.cartan))?;
    if perm != [0, 1] {
        return Err("A1, A2 do not land on the short and long simple roots".into());
    }
    if f4.identify(f4_rs).is_none() {
        return Err(format!("f4 part has Cartan matrix {:?}", f4.cartan));
    }
    if !g2.commutes_with(f4) {
        return Err("g2 and f4 parts do not commute".into());
    }
    let j = joint_dim(&[&g2, f4]);
    if j != 66 {
        return Err(format!("joint span has dimension {j}"));
    }
    Ok((g2, perm))
}

/// Builds E8 and the embedded `g2 ⊕ f4`, searching the sign variants of
/// `A1` in a fixed order until every check passes.
pub fn dynkin_embedding_g2_f4() -> Result<G2F4Embedding> {
    let alg = Arc::new(build_simply_laced(AlgebraId::new(Series::E, 8)?)?);
    let g2_rs = RootSystem::build(AlgebraId::new(Series::G, 2)?)?;
    let f4_rs = RootSystem::build(AlgebraId::new(Series::F, 4)?)?;
    let bgens = alloc::vec![
        add(&[(1, dynkin_word(&alg, &[3])), (1, dynkin_word(&alg, &[7]))]),
        add(&[(1, dynkin_word(&alg, &[4])), (1, dynkin_word(&alg, &[6]))]),
        dynkin_word(&alg, &[5]),
        dynkin_word(&alg, &[8]),
    ];
    let f4 = EmbeddedSubalgebra::generate(alg.clone(), bgens, 52)?;
    if f4.dim() != 52 {
        return Err(Error::Verification(format!("f4 part has dimension {}", f4.dim())));
    }
    let f4_perm = f4
        .identify(&f4_rs)
        .ok_or_else(|| Error::Verification(format!("f4 part has Cartan matrix {:?}", f4.cartan)))?;
    let mut rejected = Vec::new();
    for signs in sign_variants() {
        match try_variant(&alg, signs, &g2_rs, &f4_rs, &f4) {
            Ok((g2, g2_perm)) => {
                let joint_dim = joint_dim(&[&g2, &f4]);
                return Ok(G2F4Embedding { ambient: alg, g2, f4, signs, rejected, joint_dim, g2_perm, f4_perm });
            }
            Err(why) => rejected.push((signs, why)),
        }
    }
    let report: Vec<String> = rejected.iter().map(|(s, w)| format!("{s:?}: {w}")).collect();
    Err(Error::Verification(report.join("; ")))
}

/// `X`, `Y` and `[X,Y]` with their membership in the complement `M` of
/// `g2 ⊕ f4` and the norm of `[X,Y]`.
#[derive(Clone, Debug)]
pub struct WitnessTriple {
    pub x_label: String,
    pub y_label: String,
    pub x: Vec<Q>,
    pub y: Vec<Q>,
    pub bracket: Vec<Q>,
    pub in_complement: [bool; 3],
    /// `([X,Y]|[X,Y])`.
    pub pairing: Q,
}

impl WitnessTriple {
    pub fn inside(&self) -> bool {
        self.in_complement.iter().all(|&b| b)
    }

    pub fn nonvanishing(&self) -> bool {
        self.inside() && !self.pairing.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct ComplementWitness {
    pub complement_dim: usize,
    /// `X = P2`, `Y = P4 − P6`.
    pub literal: WitnessTriple,
    /// `[X,Y]` equals `P24 − P26` for the literal triple.
    pub literal_bracket_matches: bool,
    /// First triple `X = P_i`, `Y = P_j ± P_k` in `M` with `[X,Y] ≠ 0`.
    pub found: Option<WitnessTriple>,
}

impl ComplementWitness {
    /// Literal triple inside `M` with the stated bracket, and some triple
    /// with nonzero pairing.
    pub fn passed(&self) -> bool {
        self.literal.inside() && self.literal_bracket_matches && self.found.as_ref().is_some_and(|w| w.nonvanishing())
    }
}

/// Computes the orthogonal complement `M` of `g2 ⊕ f4`, checks `X = P2`,
/// `Y = P4 − P6` and searches words of length one and two for a triple
/// with `([X,Y]|[X,Y]) ≠ 0`.
pub fn complement_bracket_witness(emb: &G2F4Embedding) -> Result<ComplementWitness> {
    let alg = &*emb.ambient;
    let d = alg.dim();
    let mut ech = Echelon::new();
    for v in emb.g2.span_basis.iter().chain(&emb.f4.span_basis) {
        ech.insert(v);
    }
    // Row k is the functional y ↦ (v_k|y).
    let rows: Vec<Vec<Q>> = ech
        .rows()
        .iter()
        .map(|v| {
            let s = alg.star(v);
            (0..d).map(|b| alg.form(&s, &alg.basis_vector(b))).collect()
        })
        .collect();
    let complement_dim = linalg::nullspace(&rows, d).len();
    let orthogonal = |v: &[Q]| rows.iter().all(|r| linalg::dot(r, v).is_zero());
    let triple = |i: usize, j: usize, k: usize, s: i64| {
        let x = dynkin_word(alg, &[i]);
        let y = add(&[(1, dynkin_word(alg, &[j])), (s, dynkin_word(alg, &[k]))]);
        let bracket = alg.bracket(&x, &y);
        WitnessTriple {
            x_label: format!("P{i}"),
            y_label: format!("P{j}{}P{k}", if s > 0 { '+' } else { '-' }),
            in_complement: [orthogonal(&x), orthogonal(&y), orthogonal(&bracket)],
            pairing: alg.inner(&bracket, &bracket),
            x,
            y,
            bracket,
        }
    };
    let literal = triple(2, 4, 6, -1);
    let expected = add(&[(1, dynkin_word(alg, &[2, 4])), (-1, dynkin_word(alg, &[2, 6]))]);
    let literal_bracket_matches = literal.bracket == expected;
    let mut found = None;
    'search: for i in 1..=8 {
        for j in 1..=8 {
            for k in j + 1..=8 {
                for s in [-1, 1] {
                    let t = triple(i, j, k, s);
                    if t.nonvanishing() {
                        found = Some(t);
                        break 'search;
                    }
                }
            }
        }
    }
    Ok(ComplementWitness { complement_dim, literal, literal_bracket_matches, found })
}
