//! Root systems of the simple types with the normalized form in which long
//! roots have squared length 2.
//!
//! Weights are stored in the simple-root basis with exact rational
//! coordinates. Most algorithms run on Dynkin labels (fundamental-weight
//! coordinates), which are integers for integral weights.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::rat::{self, frac, q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgebraId {
    pub series: Series,
    pub rank: usize,
}

impl AlgebraId {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let bad = |why: &str| Err(Error::InvalidAlgebra(format!("{}{}: {}", series.letter(), rank, why)));
        if rank == 0 {
            return bad("rank must be at least 1");
        }
        match series {
            Series::D if rank < 3 => bad("D requires rank >= 3"),
            Series::E if !(6..=8).contains(&rank) => bad("E requires rank 6, 7 or 8"),
            Series::F if rank != 4 => bad("F requires rank 4"),
            Series::G if rank != 2 => bad("G requires rank 2"),
            _ => Ok(AlgebraId { series, rank }),
        }
    }

    /// Parses names such as `B3`, `e8` or `G2`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(Error::InvalidAlgebra(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidAlgebra(s.to_string()))?;
        Self::new(series, rank)
    }

    /// Dimension of the Lie algebra from the classical formulas.
    pub fn classical_dim(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 2),
            Series::B | Series::C => n * (2 * n + 1),
            Series::D => n * (2 * n - 1),
            Series::E => match n {
                6 => 78,
                7 => 133,
                _ => 248,
            },
            Series::F => 52,
            Series::G => 14,
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.series, Series::A | Series::D | Series::E) || (self.series == Series::B && self.rank == 1) || (self.series == Series::C && self.rank == 1)
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

/// A weight in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub algebra: AlgebraId,
    pub coords: Vec<Q>,
}

/// Result of a Weyl reduction to the dominant chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction<T> {
    pub dominant: T,
    /// Determinant of the reducing element, or 0 when the input lies on a wall.
    pub sign: i8,
    pub length: usize,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub id: AlgebraId,
    /// `cartan[i][j] = 2(α_i|α_j)/(α_j|α_j)`.
    pub cartan: Vec<Vec<i64>>,
    /// `(α_i|α_j)` under the normalized form.
    pub simple_gram: Mat,
    /// Positive roots in the simple-root basis, sorted by height.
    pub positive_roots: Vec<Vec<i64>>,
    /// Positive roots as Dynkin labels, aligned with `positive_roots`.
    pub positive_root_labels: Vec<Vec<i64>>,
    /// `(ω_i|ω_j)`.
    pub fund_gram: Mat,
    /// Row `i` is `ω_i` in the simple-root basis.
    pub fund_in_roots: Mat,
    pub highest_root: Vec<i64>,
    pub dual_coxeter: i64,
    /// Common denominator of `fund_gram`.
    pub den: i64,
    /// `den * (ω_i|ω_j)` as integers.
    pub fund_gram_scaled: Vec<Vec<i64>>,
    /// `den * (α|α)/2` for each positive root, aligned with `positive_roots`.
    root_half_norm_scaled: Vec<i64>,
    /// Comarks: `(ω_i|θ)`, integers.
    theta_marks: Vec<i64>,
}

fn eps(n: usize, entries: &[(usize, Q)]) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    for (i, x) in entries {
        v[*i] += x;
    }
    v
}

fn raw_gram(id: AlgebraId) -> Mat {
    let n = id.rank;
    let from_vectors = |vs: Vec<Vec<Q>>, metric: Q| -> Mat {
        vs.iter()
            .map(|a| vs.iter().map(|b| linalg::dot(a, b) * &metric).collect())
            .collect()
    };
    let diagram = |edges: &[(usize, usize)]| -> Mat {
        let mut g = linalg::zeros(n, n);
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = q(2);
        }
        for &(a, b) in edges {
            g[a][b] = q(-1);
            g[b][a] = q(-1);
        }
        g
    };
    match id.series {
        Series::A => {
            let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            diagram(&edges)
        }
        Series::B | Series::C | Series::D => {
            let mut vs = Vec::new();
            for i in 0..n.saturating_sub(1) {
                vs.push(eps(n, &[(i, q(1)), (i + 1, q(-1))]));
            }
            let last = match id.series {
                Series::B => eps(n, &[(n - 1, q(1))]),
                Series::C => eps(n, &[(n - 1, q(2))]),
                _ => eps(n, &[(n - 2, q(1)), (n - 1, q(1))]),
            };
            vs.push(last);
            from_vectors(vs, q(1))
        }
        Series::E => {
            let mut edges = vec![(0, 2), (2, 3), (3, 4), (1, 3)];
            for i in 4..n - 1 {
                edges.push((i, i + 1));
            }
            diagram(&edges)
        }
        Series::F => {
            let h = frac(1, 2);
            let vs = vec![
                eps(4, &[(1, q(1)), (2, q(-1))]),
                eps(4, &[(2, q(1)), (3, q(-1))]),
                eps(4, &[(3, q(1))]),
                eps(4, &[(0, h.clone()), (1, -h.clone()), (2, -h.clone()), (3, -h)]),
            ];
            from_vectors(vs, q(1))
        }
        Series::G => vec![vec![frac(2, 3), q(-1)], vec![q(-1), q(2)]],
    }
}

fn lcm_all(xs: impl Iterator<Item = i64>) -> i64 {
    xs.fold(1i64, |a, b| a.lcm(&b))
}

impl RootSystem {
    pub fn build(id: AlgebraId) -> Result<Self> {
        let id = AlgebraId::new(id.series, id.rank)?;
        let n = id.rank;
        let mut gram = raw_gram(id);
        let cartan_of = |g: &Mat| -> Vec<Vec<i64>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let v = q(2) * &g[i][j] / &g[j][j];
                            rat::as_int(&v).expect("integral Cartan entry")
                        })
                        .collect()
                })
                .collect()
        };
        let cartan = cartan_of(&gram);

        // Positive roots by height: β + α_i is a root iff p - <β,α_i∨> > 0,
        // where p is the length of the downward α_i-string through β.
        let pair = |beta: &[i64], i: usize| -> i64 { (0..n).map(|j| beta[j] * cartan[j][i]).sum() };
        let mut roots: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut known: BTreeSet<Vec<i64>> = roots.iter().cloned().collect();
        let mut layer = roots.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    if p - pair(beta, i) > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if known.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            next.sort();
            roots.extend(next.iter().cloned());
            layer = next;
        }
        roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        let highest_root = roots.last().cloned().expect("nonempty root system");

        // Normalize so that (θ|θ) = 2.
        let theta_q: Vec<Q> = highest_root.iter().map(|&c| q(c)).collect();
        let theta_norm = linalg::form(&gram, &theta_q, &theta_q);
        let scale = q(2) / theta_norm;
        for row in gram.iter_mut() {
            for x in row.iter_mut() {
                *x *= &scale;
            }
        }

        // ω_i in root coordinates: labels = A^T c, so c = (A^T)^{-1} e_i.
        let at: Mat = (0..n).map(|i| (0..n).map(|j| q(cartan[j][i])).collect()).collect();
        let at_inv = linalg::inverse(&at).ok_or_else(|| Error::InvalidAlgebra("singular Cartan matrix".into()))?;
        let fund_in_roots: Mat = (0..n).map(|i| (0..n).map(|k| at_inv[k][i].clone()).collect()).collect();
        let fund_gram: Mat = (0..n)
            .map(|i| (0..n).map(|j| linalg::form(&gram, &fund_in_roots[i], &fund_in_roots[j])).collect())
            .collect();
        let den = lcm_all(fund_gram.iter().flatten().map(|x| x.denom().to_i64().expect("small denominator")));
        let fund_gram_scaled: Vec<Vec<i64>> = fund_gram
            .iter()
            .map(|row| row.iter().map(|x| rat::as_int(&(x * q(den))).expect("scaled integer")).collect())
            .collect();
        let positive_root_labels: Vec<Vec<i64>> =
            roots.iter().map(|r| (0..n).map(|i| pair(r, i)).collect()).collect();
        let root_half_norm_scaled = roots
            .iter()
            .map(|r| {
                let rq: Vec<Q> = r.iter().map(|&c| q(c)).collect();
                let v = linalg::form(&gram, &rq, &rq) * q(den) / q(2);
                rat::as_int(&v).expect("integral scaled norm")
            })
            .collect();
        let theta_marks: Vec<i64> = (0..n)
            .map(|i| {
                let v = linalg::dot(&fund_in_roots[i], &linalg::mat_vec(&gram, &theta_q));
                rat::as_int(&v).expect("integral comark")
            })
            .collect();
        let dual_coxeter = 1 + theta_marks.iter().sum::<i64>();
        Ok(RootSystem {
            id,
            cartan,
            simple_gram: gram,
            positive_roots: roots,
            positive_root_labels,
            fund_gram,
            fund_in_roots,
            highest_root,
            dual_coxeter,
            den,
            fund_gram_scaled,
            root_half_norm_scaled,
            theta_marks,
        })
    }

    pub fn rank(&self) -> usize {
        self.id.rank
    }

    pub fn dim(&self) -> usize {
        2 * self.positive_roots.len() + self.rank()
    }

    fn check(&self, w: &Weight) -> Result<()> {
        if w.algebra != self.id || w.coords.len() != self.rank() {
            return Err(Error::AlgebraMismatch(w.algebra.to_string(), self.id.to_string()));
        }
        Ok(())
    }

    pub fn weight(&self, coords: Vec<Q>) -> Weight {
        Weight { algebra: self.id, coords }
    }

    pub fn root_weight(&self, root: &[i64]) -> Weight {
        self.weight(root.iter().map(|&c| q(c)).collect())
    }

    pub fn simple_roots(&self) -> Vec<Weight> {
        (0..self.rank())
            .map(|i| {
                let mut v = vec![0; self.rank()];
                v[i] = 1;
                self.root_weight(&v)
            })
            .collect()
    }

    pub fn fundamental_weights(&self) -> Vec<Weight> {
        self.fund_in_roots.iter().map(|r| self.weight(r.clone())).collect()
    }

    pub fn highest_root_weight(&self) -> Weight {
        self.root_weight(&self.highest_root)
    }

    pub fn weyl_vector(&self) -> Weight {
        self.from_labels(&vec![1; self.rank()])
    }

    pub fn positive_root_weights(&self) -> Vec<Weight> {
        self.positive_roots.iter().map(|r| self.root_weight(r)).collect()
    }

    pub fn inner_product(&self, a: &Weight, b: &Weight) -> Result<Q> {
        self.check(a)?;
        self.check(b)?;
        Ok(linalg::form(&self.simple_gram, &a.coords, &b.coords))
    }

    /// Dynkin labels `<λ, α_i∨>`.
    pub fn labels_q(&self, w: &Weight) -> Vec<Q> {
        let g = &self.simple_gram;
        (0..self.rank())
            .map(|i| {
                let mut s = Q::zero();
                for (j, c) in w.coords.iter().enumerate() {
                    s += c * q(self.cartan[j][i]);
                }
                let _ = g;
                s
            })
            .collect()
    }

    /// Integer Dynkin labels, or `None` when the weight is not integral.
    pub fn labels(&self, w: &Weight) -> Option<Vec<i64>> {
        self.labels_q(w).iter().map(rat::as_int).collect()
    }

    pub fn from_labels_q(&self, labels: &[Q]) -> Weight {
        let mut c = vec![Q::zero(); self.rank()];
        for (i, l) in labels.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            for (k, x) in self.fund_in_roots[i].iter().enumerate() {
                c[k] += l * x;
            }
        }
        self.weight(c)
    }

    pub fn from_labels(&self, labels: &[i64]) -> Weight {
        let lq: Vec<Q> = labels.iter().map(|&l| q(l)).collect();
        self.from_labels_q(&lq)
    }

    /// Alias of [`Self::from_labels`] for fundamental-weight coordinates.
    pub fn weight_from_fundamental(&self, labels: &[i64]) -> Weight {
        self.from_labels(labels)
    }

    /// `(a|b)` for Dynkin labels.
    pub fn inner_labels(&self, a: &[i64], b: &[i64]) -> Q {
        Q::new(self.inner_scaled(a, b).into(), self.den.into())
    }

    /// `den * (a|b)` as an integer.
    pub fn inner_scaled(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0i64;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let row = &self.fund_gram_scaled[i];
            for (j, &y) in b.iter().enumerate() {
                s += x * y * row[j];
            }
        }
        s
    }

    /// `den * (α|α)/2` for the positive root with index `k`.
    pub fn root_half_norm_scaled(&self, k: usize) -> i64 {
        self.root_half_norm_scaled[k]
    }

    /// `(λ|θ)` for Dynkin labels.
    pub fn level_of(&self, labels: &[i64]) -> i64 {
        labels.iter().zip(&self.theta_marks).map(|(a, b)| a * b).sum()
    }

    pub fn theta_marks(&self) -> &[i64] {
        &self.theta_marks
    }

    /// `α_i` as Dynkin labels (row `i` of the Cartan matrix).
    pub fn simple_root_labels(&self, i: usize) -> &[i64] {
        &self.cartan[i]
    }

    /// `<μ, β∨>` for the positive root with index `k`.
    pub fn coroot_pairing(&self, labels: &[i64], k: usize) -> i64 {
        // <μ,β∨> = 2(μ|β)/(β|β); with β = Σ c_i α_i, (μ|α_i) = l_i (α_i|α_i)/2.
        let beta = &self.positive_roots[k];
        let mut num = 0i64;
        for i in 0..self.rank() {
            if beta[i] != 0 {
                num += labels[i] * beta[i] * self.simple_half_norm_scaled(i);
            }
        }
        let d = self.root_half_norm_scaled[k];
        debug_assert!(num % d == 0);
        num / d
    }

    fn simple_half_norm_scaled(&self, i: usize) -> i64 {
        rat::as_int(&(self.simple_gram[i][i].clone() * q(self.den) / q(2))).expect("integral")
    }

    pub fn is_dominant_labels(labels: &[i64]) -> bool {
        labels.iter().all(|&l| l >= 0)
    }

    pub fn is_dominant_integral(&self, w: &Weight) -> bool {
        self.check(w).is_ok() && self.labels(w).is_some_and(|l| Self::is_dominant_labels(&l))
    }

    pub fn dominant_labels(&self, w: &Weight) -> Result<Vec<i64>> {
        self.check(w)?;
        match self.labels(w) {
            Some(l) if Self::is_dominant_labels(&l) => Ok(l),
            _ => Err(Error::NotDominant(self.format_weight(w))),
        }
    }

    pub fn reflect_labels(&self, labels: &mut [i64], i: usize) {
        let li = labels[i];
        if li == 0 {
            return;
        }
        for (j, l) in labels.iter_mut().enumerate() {
            *l -= li * self.cartan[i][j];
        }
    }

    fn reflect_labels_q(&self, labels: &mut [Q], i: usize) {
        let li = labels[i].clone();
        if li.is_zero() {
            return;
        }
        for (j, l) in labels.iter_mut().enumerate() {
            *l -= &li * q(self.cartan[i][j]);
        }
    }

    /// Reduces integer labels to the dominant chamber, always applying the
    /// lowest-index simple reflection with a negative label first.
    pub fn to_dominant_labels(&self, labels: &[i64]) -> Reduction<Vec<i64>> {
        let mut l = labels.to_vec();
        let mut length = 0;
        while let Some(i) = l.iter().position(|&x| x < 0) {
            self.reflect_labels(&mut l, i);
            length += 1;
        }
        let sign = if l.contains(&0) {
            0
        } else if length % 2 == 0 {
            1
        } else {
            -1
        };
        Reduction { dominant: l, sign, length }
    }

    /// Weyl reduction of an arbitrary rational weight.
    pub fn to_dominant(&self, w: &Weight) -> Result<Reduction<Weight>> {
        self.check(w)?;
        let mut l = self.labels_q(w);
        let mut length = 0;
        while let Some(i) = l.iter().position(|x| x.is_negative()) {
            self.reflect_labels_q(&mut l, i);
            length += 1;
        }
        let sign = if l.iter().any(Zero::is_zero) {
            0
        } else if length % 2 == 0 {
            1
        } else {
            -1
        };
        Ok(Reduction { dominant: self.from_labels_q(&l), sign, length })
    }

    /// Highest weight of the dual module, `-w0·λ`.
    pub fn dual_labels(&self, labels: &[i64]) -> Vec<i64> {
        let neg: Vec<i64> = labels.iter().map(|x| -x).collect();
        self.to_dominant_labels(&neg).dominant
    }

    pub fn dual_weight(&self, w: &Weight) -> Result<Weight> {
        let l = self.dominant_labels(w)?;
        Ok(self.from_labels(&self.dual_labels(&l)))
    }

    /// Weyl orbit of integer labels.
    pub fn orbit(&self, labels: &[i64]) -> Vec<Vec<i64>> {
        let start = self.to_dominant_labels(labels).dominant;
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        seen.insert(start.clone());
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for i in 0..self.rank() {
                if v[i] != 0 {
                    let mut w = v.clone();
                    self.reflect_labels(&mut w, i);
                    if seen.insert(w.clone()) {
                        stack.push(w);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Number of elements in the Weyl orbit of integer labels.
    pub fn orbit_size(&self, labels: &[i64]) -> usize {
        self.orbit(labels).len()
    }

    /// Weyl dimension formula, saturating at `u64::MAX`.
    pub fn weyl_dimension(&self, labels: &[i64]) -> u64 {
        self.weyl_dimension_exact(labels).to_u64().unwrap_or(u64::MAX)
    }

    /// Weyl dimension formula without a size limit.
    pub fn weyl_dimension_exact(&self, labels: &[i64]) -> BigInt {
        let rho: Vec<i64> = vec![1; self.rank()];
        let shifted: Vec<i64> = labels.iter().map(|l| l + 1).collect();
        let mut num = Q::one();
        for k in 0..self.positive_roots.len() {
            let a = self.coroot_pairing(&shifted, k);
            let b = self.coroot_pairing(&rho, k);
            num *= Q::new(a.into(), b.into());
        }
        num.to_integer()
    }

    /// Height of a weight that is an integral combination of simple roots.
    pub fn height(root_coords: &[i64]) -> i64 {
        root_coords.iter().sum()
    }

    /// Root-basis coordinates of `λ - μ` for integer labels, if integral.
    pub fn root_difference(&self, lambda: &[i64], mu: &[i64]) -> Option<Vec<i64>> {
        let diff: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
        let w = self.from_labels(&diff);
        w.coords.iter().map(rat::as_int).collect()
    }

    /// Human-readable fundamental-weight coordinates.
    pub fn format_weight(&self, w: &Weight) -> String {
        let parts: Vec<String> = self.labels_q(w).iter().map(rat::to_string).collect();
        format!("{}({})", self.id, parts.join(","))
    }

    /// Dominant integral weights `λ` with `(λ|θ) <= level`.
    pub fn dominant_weights_up_to_level(&self, level: i64) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut cur = vec![0i64; n];
        fn rec(rs: &RootSystem, i: usize, cur: &mut Vec<i64>, budget: i64, out: &mut Vec<Vec<i64>>) {
            if i == cur.len() {
                out.push(cur.clone());
                return;
            }
            let m = rs.theta_marks[i];
            let mut k = 0;
            while k * m <= budget {
                cur[i] = k;
                rec(rs, i + 1, cur, budget - k * m, out);
                k += 1;
            }
            cur[i] = 0;
        }
        rec(self, 0, &mut cur, level, &mut out);
        out.sort_by_key(|l| (self.level_of(l), l.clone()));
        out
    }

    /// Dominant integral weights with Weyl dimension at most `cap`.
    pub fn dominant_weights_up_to_dim(&self, cap: u64) -> Vec<Vec<i64>> {
        // Dimension is strictly increasing in each label, so a bounded search works.
        let n = self.rank();
        let mut out = Vec::new();
        let mut frontier = vec![vec![0i64; n]];
        let mut seen: BTreeSet<Vec<i64>> = frontier.iter().cloned().collect();
        while let Some(l) = frontier.pop() {
            if self.weyl_dimension(&l) > cap {
                continue;
            }
            out.push(l.clone());
            for i in 0..n {
                let mut m = l.clone();
                m[i] += 1;
                if seen.insert(m.clone()) {
                    frontier.push(m);
                }
            }
        }
        out.sort_by_key(|l| (self.weyl_dimension(l), l.clone()));
        out
    }

    /// Map from root coordinates of positive roots to their index.
    pub fn root_index(&self) -> BTreeMap<Vec<i64>, usize> {
        self.positive_roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect()
    }
}
