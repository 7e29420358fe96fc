//! Exhaustive cross-checks of the three tensor-product routes.

use std::collections::BTreeSet;

use liecore::highmod::{self, DEFAULT_CAP};
use liecore::rootsys::{AlgebraId, RootSystem};
use liecore::tensor::{cor20_with, klimyk, Cor20, Prop11Engine};
use liecore::Result;
use rayon::prelude::*;

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct SweepReport {
    pub algebra: String,
    pub weights: usize,
    pub triples: u64,
    pub nonzero: u64,
    pub cor20_applicable: u64,
    pub disagreements: u64,
    pub examples: Vec<String>,
}

#[derive(Default)]
struct Partial {
    triples: u64,
    nonzero: u64,
    applicable: u64,
    bad: u64,
    examples: Vec<String>,
}

impl Partial {
    fn merge(mut self, o: Partial) -> Partial {
        self.triples += o.triples;
        self.nonzero += o.nonzero;
        self.applicable += o.applicable;
        self.bad += o.bad;
        self.examples.extend(o.examples);
        self.examples.truncate(10);
        self
    }

    fn fail(&mut self, msg: String) {
        self.bad += 1;
        if self.examples.len() < 10 {
            self.examples.push(msg);
        }
    }
}

/// Every `(λ, μ, ν)` whose modules all have dimension at most `cap`.
///
/// Triples with `ν − μ` outside the weights of `L(λ)` are zero on all three
/// routes by construction; they are accounted for by checking that the
/// character oracle never produces such a `ν`.
pub fn tensor_sweep(id: AlgebraId, cap: u64) -> Result<SweepReport> {
    let rs = RootSystem::build(id)?;
    let ws = rs.dominant_weights_up_to_dim(cap);
    let known: BTreeSet<Vec<i64>> = ws.iter().cloned().collect();
    let total = ws
        .par_iter()
        .map(|lambda| -> Result<Partial> {
            let mut part = Partial::default();
            let ch = highmod::full_character(&rs, lambda, cap.max(DEFAULT_CAP))?;
            let weights = ch.all_weights(&rs);
            let mut engine = Prop11Engine::new(&rs, lambda, cap.max(DEFAULT_CAP))?;
            let blocks: Vec<(usize, Vec<i64>)> =
                engine.module().blocks.iter().enumerate().map(|(i, b)| (i, b.weight.clone())).collect();
            let mut nu = vec![0i64; rs.rank()];
            for mu in &ws {
                let dec = klimyk(&rs, &weights, mu);
                let mut seen = 0usize;
                for (b, kappa) in &blocks {
                    for k in 0..nu.len() {
                        nu[k] = mu[k] + kappa[k];
                    }
                    if !RootSystem::is_dominant_labels(&nu) || !known.contains(&nu) {
                        continue;
                    }
                    part.triples += 1;
                    let t = dec.get(&nu).copied().unwrap_or(0);
                    if t != 0 {
                        seen += 1;
                        part.nonzero += 1;
                    }
                    let p = engine.multiplicity_at(*b, mu) as i64;
                    if p != t {
                        part.fail(format!("{id} λ={lambda:?} μ={mu:?} ν={nu:?}: klimyk {t}, prop11 {p}"));
                    }
                    let module = engine.module();
                    let c = cor20_with(&rs, |w| module.weight_dim(w) as u64, mu, kappa);
                    let expect = match c {
                        Cor20::NotApplicable => None,
                        Cor20::One => Some(1),
                        Cor20::Zero => Some(0),
                    };
                    if let Some(e) = expect {
                        part.applicable += 1;
                        if e != t {
                            part.fail(format!("{id} λ={lambda:?} μ={mu:?} ν={nu:?}: klimyk {t}, criterion {e}"));
                        }
                    }
                }
                // Everything the oracle produces inside the cap must have been visited.
                let inside = dec.keys().filter(|n| known.contains(*n)).count();
                if inside != seen {
                    part.fail(format!("{id} λ={lambda:?} μ={mu:?}: oracle output outside the weight difference set"));
                }
                if dec.values().any(|&v| v < 0) {
                    part.fail(format!("{id} λ={lambda:?} μ={mu:?}: negative multiplicity"));
                }
            }
            Ok(part)
        })
        .try_reduce(Partial::default, |a, b| Ok(a.merge(b)))?;
    Ok(SweepReport {
        algebra: id.to_string(),
        weights: ws.len(),
        triples: total.triples,
        nonzero: total.nonzero,
        cor20_applicable: total.applicable,
        disagreements: total.bad,
        examples: total.examples,
    })
}
