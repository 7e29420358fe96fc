use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use liecore::affine::{self, kac_walton_fusion, paper_fusion_rule, FusionQuery, PaperRule, ReductionInput};
use liecore::highmod::{self, DEFAULT_CAP};
use liecore::latheis::{self, HeisenbergSpace, IntegralLattice};
use liecore::rat::{self, Q};
use liecore::tensor::{self, TensorQuery};
use liecore::{AlgebraId, Error, RootSystem};
use lietool::emit::{self, parse_coords, parse_labels, rat_strings};
use lietool::verify::{self, Settings, Status};
use serde_json::{json, Value};

const CAP_ENV: &str = "LIETOOL_CAP";

#[derive(Parser)]
#[command(name = "lietool", version, about = "Exact Lie algebra, fusion rule and lattice computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cartan data, roots and the normalized form.
    Rootsys {
        #[arg(long)]
        algebra: String,
    },
    /// Dominant weight multiplicities of an irreducible module.
    Weights {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Tensor product multiplicities by all three routes.
    Tensor {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        charge: String,
        #[arg(long)]
        source: String,
        /// Omit for the full decomposition.
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Tensor graph of the 7-dimensional G2 module.
    TensorGraph {
        #[arg(long, default_value_t = 4)]
        height: i64,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Closed-form fusion rule against the Kac-Walton oracle.
    Fusion {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        level: i64,
        #[arg(long)]
        charge: String,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// The G2 and F4 subalgebras of E8 and their branching data.
    VerifyE8 {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Preconditions for realizing fusion by restriction from a larger level.
    CompressCheck {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        level: i64,
        #[arg(long)]
        charge: String,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        /// With `--mu1` and `--nu1`, also evaluates the level-reduction conditions.
        #[arg(long)]
        rho: Option<String>,
        #[arg(long)]
        mu1: Option<String>,
        #[arg(long)]
        nu1: Option<String>,
        /// Level of the reduced intertwiner; defaults to the largest θ-pairing.
        #[arg(long)]
        a: Option<i64>,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Even lattice computations from a JSON Gram matrix.
    Lattice {
        #[arg(long)]
        gram: PathBuf,
        #[arg(long, value_enum)]
        op: LatticeOp,
        #[arg(long, allow_hyphen_values = true)]
        charge: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        source: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
        #[arg(long, default_value_t = 1000)]
        triples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Energy-bound probe of a Heisenberg lattice intertwiner.
    Probe {
        /// Squared norms of an orthogonal basis of the Cartan space.
        #[arg(long, default_value = "1")]
        norms: String,
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
        #[arg(long, allow_hyphen_values = true)]
        source: Option<String>,
        #[arg(long, default_value_t = 0)]
        order: u32,
        #[arg(long, default_value = "8,12,16")]
        cutoffs: String,
        #[arg(long, default_value_t = 6)]
        max_mode: i64,
        #[arg(long, default_value_t = 1.05)]
        slack: f64,
    },
    /// Every checked claim, with one assumed identification.
    VerifyPaper {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Module dimension cap of the tensor sweep.
        #[arg(long)]
        cap: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeOp {
    Cocycle,
    Fusion,
    Dual,
}

/// Computational verdict of a subcommand.
struct Outcome {
    out: Value,
    ok: bool,
}

fn pass(out: Value) -> Outcome {
    Outcome { out, ok: true }
}

fn default_cap(flag: Option<u64>) -> Result<u64, Error> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("{CAP_ENV}={v}"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn algebra(name: &str) -> Result<RootSystem, Error> {
    RootSystem::build(AlgebraId::parse(name)?)
}

fn rootsys(name: &str) -> Result<Outcome, Error> {
    let rs = algebra(name)?;
    Ok(pass(json!({
        "algebra": rs.id.to_string(),
        "rank": rs.rank(),
        "dim": rs.dim(),
        "cartan": rs.cartan,
        "gram": emit::matrix(&rs.simple_gram),
        "positive_roots": rs.positive_roots,
        "highest_root": rs.highest_root,
        "dual_coxeter": rs.dual_coxeter,
        "comarks": rs.theta_marks(),
        "fundamental_weights": emit::matrix(&rs.fund_in_roots),
        "weyl_vector": emit::weight(&rs, &rs.weyl_vector()),
    })))
}

fn weights(name: &str, weight: &str, cap: u64) -> Result<Outcome, Error> {
    let rs = algebra(name)?;
    let lambda = parse_labels(&rs, weight)?;
    let ch = highmod::full_character(&rs, &lambda, cap)?;
    let dominant: Vec<Value> = ch
        .mults
        .iter()
        .map(|(w, m)| json!({"weight": emit::labels(&rs, w), "multiplicity": m, "orbit": rs.orbit_size(w)}))
        .collect();
    Ok(pass(json!({
        "highest": emit::labels(&rs, &lambda),
        "dim": ch.dim(&rs),
        "weyl_dim": rs.weyl_dimension(&lambda),
        "dominant": dominant,
    })))
}

fn tensor_cmd(name: &str, charge: &str, source: &str, target: Option<&str>, cap: u64) -> Result<Outcome, Error> {
    let rs = algebra(name)?;
    let lambda = parse_labels(&rs, charge)?;
    let mu = parse_labels(&rs, source)?;
    let ch = highmod::full_character(&rs, &lambda, cap)?;
    let Some(target) = target else {
        let dec = tensor::klimyk(&rs, &ch.all_weights(&rs), &mu);
        let parts: Vec<Value> =
            dec.iter().map(|(nu, m)| json!({"weight": emit::labels(&rs, nu), "multiplicity": m})).collect();
        return Ok(pass(json!({
            "charge": emit::labels(&rs, &lambda),
            "source": emit::labels(&rs, &mu),
            "decomposition": parts,
        })));
    };
    let nu = parse_labels(&rs, target)?;
    let query = TensorQuery::from_labels(&lambda, &mu, &nu);
    let oracle = tensor::tensor_multiplicity(&rs, &query, cap)?;
    let k_subspace = tensor::prop11_multiplicity(&rs, &query, cap)?;
    let criterion = tensor::cor20_criterion(&rs, &ch, &query);
    let crit_value = match criterion {
        tensor::Cor20::One => Some(1),
        tensor::Cor20::Zero => Some(0),
        tensor::Cor20::NotApplicable => None,
    };
    let agree = oracle == k_subspace && crit_value.is_none_or(|c| c == oracle);
    Ok(Outcome {
        out: json!({
            "key": format!("({});({});({})", emit::label_key(&lambda), emit::label_key(&mu), emit::label_key(&nu)),
            "oracle": oracle,
            "k_subspace": k_subspace,
            "criterion": criterion.as_str(),
            "agree": agree,
        }),
        ok: agree,
    })
}

fn fusion_query(rs: &RootSystem, level: i64, charge: &str, source: &str, target: &str) -> Result<FusionQuery, Error> {
    FusionQuery::from_labels(
        rs,
        level,
        &parse_labels(rs, charge)?,
        &parse_labels(rs, source)?,
        &parse_labels(rs, target)?,
    )
}

fn fusion(name: &str, level: i64, charge: &str, source: &str, target: &str) -> Result<Outcome, Error> {
    let rs = algebra(name)?;
    let q = fusion_query(&rs, level, charge, source, target)?;
    let oracle = kac_walton_fusion(&rs, &q, u64::MAX)?;
    let (rule, agree) = match paper_fusion_rule(&rs, &q) {
        PaperRule::Value(v) => (json!(v), Some(v == oracle)),
        PaperRule::Unsupported => (json!("unsupported"), None),
    };
    Ok(Outcome {
        out: json!({
            "algebra": rs.id.to_string(),
            "level": level,
            "charge": emit::labels(&rs, &q.lambda),
            "source": emit::labels(&rs, &q.mu),
            "target": emit::labels(&rs, &q.nu),
            "rule": rule,
            "oracle": oracle,
            "agree": agree,
        }),
        ok: agree != Some(false),
    })
}

fn verify_e8(seed: u64) -> Result<Outcome, Error> {
    let emb = verify::g2_f4_embedding();
    let mut claims = verify::e8_construction(seed);
    claims.extend(verify::embedding_claims(&emb));
    claims.extend(verify::branching_claims(&emb));
    let ok = claims.iter().all(|c| c.status == Status::Pass);
    let mut out = json!({ "seed": seed, "claims": claims });
    if let Ok(e) = &emb {
        let g2 = algebra("G2")?;
        let dec = liecore::chevalley::branch_adjoint(&e.g2, &g2, 10_000)?;
        let mults: BTreeMap<String, u64> = dec.iter().map(|(k, v)| (emit::label_key(k), *v)).collect();
        out["dims"] = json!({"ambient": e.ambient.dim(), "g2": e.g2.dim(), "f4": e.f4.dim(), "joint": e.joint_dim});
        out["cartan"] = json!({"g2": e.g2.cartan, "f4": e.f4.cartan, "f4_permutation": e.f4_perm});
        out["signs"] = json!(e.signs);
        out["rejected_signs"] = json!(e.rejected.iter().map(|(s, why)| json!({"signs": s, "reason": why})).collect::<Vec<_>>());
        out["multiplicities"] = json!(mults);
    }
    Ok(Outcome { out, ok })
}

#[allow(clippy::too_many_arguments)]
fn compress_check(
    name: &str,
    level: i64,
    charge: &str,
    source: &str,
    target: &str,
    rho: Option<&str>,
    mu1: Option<&str>,
    nu1: Option<&str>,
    a: Option<i64>,
    cap: u64,
) -> Result<Outcome, Error> {
    let rs = algebra(name)?;
    let q = fusion_query(&rs, level, charge, source, target)?;
    let t = affine::truncation_check(&rs, &q, cap)?;
    let mut out = json!({
        "algebra": rs.id.to_string(),
        "level": level,
        "truncation": {"applicable": t.applicable, "fusion": t.fusion, "tensor": t.tensor, "mismatch": t.mismatch()},
    });
    let mut ok = !t.mismatch();
    match (mu1, nu1) {
        (Some(mu1), Some(nu1)) => {
            let zero = vec![0; rs.rank()];
            let rho = match rho {
                Some(r) => parse_labels(&rs, r)?,
                None => zero,
            };
            let mu1 = parse_labels(&rs, mu1)?;
            let nu1 = parse_labels(&rs, nu1)?;
            let a = a.unwrap_or_else(|| [&q.lambda, &mu1, &nu1].iter().map(|w| rs.level_of(w)).max().unwrap_or(0));
            let inp = ReductionInput {
                lambda: q.lambda.clone(),
                mu: q.mu.clone(),
                nu: q.nu.clone(),
                rho,
                mu1,
                nu1,
                level,
                a,
            };
            let f = affine::reduction_conditions(&rs, &inp, cap)?;
            out["reduction"] = json!({"a": a, "condition_a": f.a, "condition_b": f.b, "condition_c": f.c, "any": f.any()});
            ok &= f.any();
        }
        (None, None) => {}
        _ => return Err(Error::Parse("--mu1 and --nu1 must be given together".into())),
    }
    Ok(Outcome { out, ok })
}

fn read_gram(path: &PathBuf) -> Result<IntegralLattice, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let gram: Vec<Vec<i64>> =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    IntegralLattice::new(gram)
}

fn dual_vector(lat: &IntegralLattice, flag: &str, v: Option<&str>) -> Result<Vec<Q>, Error> {
    let v = v.ok_or_else(|| Error::Parse(format!("--{flag} is required for this operation")))?;
    let c = parse_coords(v)?;
    if c.len() != lat.rank() {
        return Err(Error::Parse(format!("--{flag}: expected {} coordinates", lat.rank())));
    }
    Ok(c)
}

#[allow(clippy::too_many_arguments)]
fn lattice(
    path: &PathBuf,
    op: LatticeOp,
    charge: Option<&str>,
    source: Option<&str>,
    target: Option<&str>,
    triples: usize,
    seed: u64,
) -> Result<Outcome, Error> {
    let lat = read_gram(path)?;
    let base = json!({"gram": lat.gram(), "rank": lat.rank(), "discriminant": lat.discriminant()});
    let mut out = base;
    let ok = match op {
        LatticeOp::Dual => {
            let dual: Vec<Vec<String>> = lat.dual_basis().iter().map(|v| rat_strings(v)).collect();
            out["dual_basis"] = json!(dual);
            true
        }
        LatticeOp::Cocycle => {
            let c = latheis::build_cocycle(&lat)?;
            let rep = c.check_invariants(triples, 6, seed);
            out["values"] = json!(c.values);
            out["check"] = json!({
                "triples": rep.triples,
                "seed": seed,
                "normalization_failures": rep.normalization_failures,
                "cocycle_failures": rep.cocycle_failures,
                "commutator_failures": rep.commutator_failures,
                "passed": rep.passed(),
            });
            rep.passed()
        }
        LatticeOp::Fusion => {
            let l = dual_vector(&lat, "charge", charge)?;
            let m = dual_vector(&lat, "source", source)?;
            let n = dual_vector(&lat, "target", target)?;
            out["fusion"] = json!(latheis::lattice_fusion(&lat, &l, &m, &n)?);
            true
        }
    };
    Ok(Outcome { out, ok })
}

#[allow(clippy::too_many_arguments)]
fn probe(
    norms: &str,
    charge: &str,
    source: Option<&str>,
    order: u32,
    cutoffs: &str,
    max_mode: i64,
    slack: f64,
) -> Result<Outcome, Error> {
    let space = HeisenbergSpace::new(parse_coords(norms)?)?;
    let alpha = parse_coords(charge)?;
    let mu = match source {
        Some(s) => parse_coords(s)?,
        None => vec![Q::from_integer(0.into()); space.dim()],
    };
    let cutoffs: Vec<usize> = cutoffs
        .split(',')
        .map(|c| c.trim().parse().map_err(|_| Error::Parse(format!("cutoff {c}"))))
        .collect::<Result<_, _>>()?;
    let rep = latheis::energy_bound_probe(&space, &alpha, &mu, order, &cutoffs, max_mode, slack)?;
    let mut table = serde_json::Map::new();
    for (cutoff, row) in rep.cutoffs.iter().zip(&rep.norms) {
        let entries: serde_json::Map<String, Value> =
            rep.modes.iter().zip(row).map(|(s, n)| (rat::to_string(s), json!(n))).collect();
        table.insert(cutoff.to_string(), Value::Object(entries));
    }
    Ok(Outcome {
        out: json!({
            "norms": rat_strings(space.norms()),
            "charge": rat_strings(&alpha),
            "source": rat_strings(&mu),
            "order": order,
            "slack": slack,
            "cutoffs": table,
            "maxima": rep.maxima,
            "verdict": if rep.bounded { "PASS" } else { "FAIL" },
        }),
        ok: rep.bounded,
    })
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Rootsys { algebra } => rootsys(&algebra),
        Command::Weights { algebra, weight, cap } => weights(&algebra, &weight, default_cap(cap)?),
        Command::Tensor { algebra, charge, source, target, cap } => {
            tensor_cmd(&algebra, &charge, &source, target.as_deref(), default_cap(cap)?)
        }
        Command::TensorGraph { height, json, .. } => {
            let g = tensor::g2_tensor_graph(&algebra("G2")?, height)?;
            if json {
                let nodes: Vec<String> = g.nodes.iter().map(|n| emit::label_key(n)).collect();
                Ok(pass(json!({"height": height, "nodes": nodes, "edges": g.edges})))
            } else {
                print!("{}", g.to_dot("g2_tensor_graph"));
                Ok(Outcome { out: Value::Null, ok: true })
            }
        }
        Command::Fusion { algebra, level, charge, source, target } => fusion(&algebra, level, &charge, &source, &target),
        Command::VerifyE8 { seed } => verify_e8(seed),
        Command::CompressCheck { algebra, level, charge, source, target, rho, mu1, nu1, a, cap } => compress_check(
            &algebra,
            level,
            &charge,
            &source,
            &target,
            rho.as_deref(),
            mu1.as_deref(),
            nu1.as_deref(),
            a,
            default_cap(cap)?,
        ),
        Command::Lattice { gram, op, charge, source, target, triples, seed } => {
            lattice(&gram, op, charge.as_deref(), source.as_deref(), target.as_deref(), triples, seed)
        }
        Command::Probe { norms, charge, source, order, cutoffs, max_mode, slack } => {
            probe(&norms, &charge, source.as_deref(), order, &cutoffs, max_mode, slack)
        }
        Command::VerifyPaper { seed, cap } => {
            let report = verify::verify_paper(Settings { seed, tensor_cap: default_cap(cap)? });
            let ok = report.passed();
            Ok(Outcome { out: serde_json::to_value(&report).expect("serializable"), ok })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome { out, ok }) => {
            if !out.is_null() {
                println!("{}", serde_json::to_string_pretty(&emit::with_schema(out)).expect("valid JSON"));
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("lietool: check failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("lietool: {e}");
            let code = if matches!(e, Error::Verification(_)) { 1 } else { 2 };
            println!("{}", emit::with_schema(json!({"error": e.to_string()})));
            ExitCode::from(code)
        }
    }
}
