use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use tkinv::affine::{fusion_row, plethysm_support};
use tkinv::cache::{multiplicities, MultiplicityCache};
use tkinv::invariants::{direct_sum, rosso_jones_sum, unframe, KnotSums};
use tkinv::reps::TableDocument;
use tkinv::{CartanLabel, EvalPath, InvariantValue, LevelData, RootSystem, TorusKnotSpec, Weight};

mod output;

use output::{complex_json, csv_line, fmt_complex, round12, weight_str, Format};

#[derive(Parser, Debug)]
#[command(name = "tkinv", version, about = "Torus knot invariants from level-k modular data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Roots, Gram matrix and Weyl group data of a simple Lie algebra.
    RootSystem(AlgebraArgs),
    /// Weight multiplicities of an irreducible representation.
    Weights(WeightArgs),
    /// S, C, twists and quantum dimensions at level k.
    Smatrix(LevelArgs),
    /// Fusion coefficients N^mu_{lambda nu} from the quantum Racah formula.
    Fusion(FusionArgs),
    /// Coefficients of the p-th Adams operation in irreducible characters.
    Plethysm(PlethysmArgs),
    /// Evaluate a colored torus knot invariant.
    Invariant(InvariantArgs),
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: VerifyCommand,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Check S^2 = C and symmetry of S.
    Modular(LevelArgs),
    /// Randomized checks of the Gauss-type integral identities.
    Gauss(GaussArgs),
    /// Compare surgery, direct and Rosso-Jones evaluations over a grid.
    TriplePath(TriplePathArgs),
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Directory for cached multiplicity tables (default: $TKINV_CACHE_DIR).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    #[arg(long)]
    algebra: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct WeightArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long, value_parser = parse_coords)]
    highest_weight: Coords,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct LevelArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    level: i64,
    #[arg(long, default_value_t = tkinv::modular::DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct FusionArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    level: i64,
    #[arg(long, value_parser = parse_coords)]
    highest_weight: Coords,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct PlethysmArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long, value_parser = parse_coords)]
    highest_weight: Coords,
    #[arg(long)]
    power: i64,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Manifold {
    S3,
    S2xs1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Framing {
    Framed,
    Unframed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Surgery,
    RossoJones,
}

#[derive(Args, Debug)]
struct InvariantArgs {
    /// Cartan label such as A2, B3, G2.
    #[arg(long)]
    algebra: String,
    /// Unshifted level k; must exceed the dual Coxeter number.
    #[arg(long)]
    level: i64,
    /// Knot colour in fundamental-weight coordinates, e.g. 1,0.
    #[arg(long, value_parser = parse_coords)]
    highest_weight: Coords,
    /// Coprime winding numbers p,q with p != 0.
    #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
    torus_knot: Coords,
    #[arg(long, value_enum, default_value_t = Manifold::S3)]
    manifold: Manifold,
    /// Colour of the vertical loop (s2xs1) or of the linked unknot (s3).
    #[arg(long, value_parser = parse_coords)]
    second_color: Option<Coords>,
    #[arg(long, value_enum, default_value_t = Framing::Framed)]
    framing: Framing,
    /// Evaluation route for framed S^3 values.
    #[arg(long, value_enum, default_value_t = Method::Direct)]
    method: Method,
    #[arg(long, default_value_t = tkinv::modular::DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct GaussArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct TriplePathArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    level: i64,
    #[arg(long, default_value_t = 1e-8)]
    tolerance: f64,
    #[command(flatten)]
    common: Common,
}

/// Comma-separated integers, e.g. `1,0,2`.
#[derive(Clone, Debug)]
struct Coords(Vec<i64>);

fn parse_coords(s: &str) -> Result<Coords, String> {
    if s.trim().is_empty() {
        return Ok(Coords(Vec::new()));
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad coordinate {t:?}: {e}"))
        })
        .collect::<Result<_, _>>()
        .map(Coords)
}

#[derive(Debug)]
enum Failure {
    /// Invalid input or configuration: exit 1.
    Invalid { kind: &'static str, message: String },
    /// A verification suite ran and failed: exit 2.
    Verification(String),
}

impl From<tkinv::Error> for Failure {
    fn from(e: tkinv::Error) -> Self {
        Failure::Invalid {
            kind: "validation",
            message: e.to_string(),
        }
    }
}

impl From<tkinv_gauss::GaussError> for Failure {
    fn from(e: tkinv_gauss::GaussError) -> Self {
        Failure::Invalid {
            kind: "gauss",
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure::Invalid {
        kind: "usage",
        message: message.into(),
    }
}

/// Writes to stdout; a closed pipe is not an error for a one-shot report.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                emit(&e.to_string());
                return ExitCode::SUCCESS;
            }
            let msg = e.kind().to_string();
            let detail = e.to_string();
            eprintln!(
                "{}",
                json!({"error": {"kind": "usage", "message": msg, "detail": detail.trim()}})
            );
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid { kind, message }) => {
            eprintln!("{}", json!({"error": {"kind": kind, "message": message}}));
            ExitCode::from(1)
        }
        Err(Failure::Verification(out)) => {
            emit(&out);
            ExitCode::from(2)
        }
    }
}

fn root_system(algebra: &str) -> Result<RootSystem, Failure> {
    let label: CartanLabel = algebra.parse()?;
    Ok(RootSystem::new(label)?)
}

fn weight(rs: &RootSystem, coords: &[i64]) -> Result<Weight, Failure> {
    rs.check_rank(coords)?;
    let w = Weight(coords.to_vec());
    if !w.is_dominant() {
        return Err(tkinv::Error::NotDominant(coords.to_vec()).into());
    }
    Ok(w)
}

fn cache(dir: &Option<PathBuf>) -> Result<Option<MultiplicityCache>, Failure> {
    match dir {
        Some(d) => Ok(Some(MultiplicityCache::new(d)?)),
        None => Ok(MultiplicityCache::from_env()?),
    }
}

fn run(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::RootSystem(a) => {
            let rs = root_system(&a.algebra)?;
            let doc = serde_json::to_value(rs.document()).expect("serializable");
            Ok(match a.common.format {
                Format::Json => output::json_line(&doc),
                Format::Text | Format::Csv => {
                    format!(
                        "{} rank={} |W|={} dual_coxeter={} |Lambda/Gamma|={} positive_roots={}\n",
                        rs.label,
                        rs.rank,
                        rs.weyl_order,
                        rs.dual_coxeter,
                        rs.det_index,
                        rs.positive_roots.len()
                    )
                }
            })
        }
        Command::Weights(a) => {
            let rs = root_system(&a.algebra)?;
            let lam = weight(&rs, &a.highest_weight.0)?;
            let cache = cache(&a.common.cache_dir)?;
            let table = multiplicities(&rs, &lam, cache.as_ref())?;
            let doc = TableDocument::from_table(&rs, &table);
            Ok(match a.common.format {
                Format::Json => output::json_line(&serde_json::to_value(&doc).expect("serializable")),
                Format::Csv => {
                    let mut s = String::from("weight,multiplicity\n");
                    for (w, m) in &doc.entries {
                        s += &csv_line(&[weight_str(w), m.to_string()]);
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!("{} {} dim={}\n", rs.label, lam, doc.dim);
                    for (w, m) in &doc.entries {
                        s += &format!("{} {}\n", Weight(w.clone()), m);
                    }
                    s
                }
            })
        }
        Command::Smatrix(a) => smatrix(a),
        Command::Fusion(a) => {
            let rs = root_system(&a.algebra)?;
            let lam = weight(&rs, &a.highest_weight.0)?;
            let ld = LevelData::new(rs, a.level)?;
            ld.require_alcove(&lam)?;
            let cache = cache(&a.common.cache_dir)?;
            let table = multiplicities(&ld.rs, &lam, cache.as_ref())?;
            let row = fusion_row(&ld, &table)?;
            Ok(match a.common.format {
                Format::Json => {
                    let entries: Vec<Value> = row
                        .iter()
                        .map(|((nu, mu), n)| json!({"nu": nu.0, "mu": mu.0, "n": n}))
                        .collect();
                    output::json_line(&json!({
                        "algebra": ld.rs.label.to_string(),
                        "level": ld.k,
                        "lambda": lam.0,
                        "coefficients": entries,
                    }))
                }
                Format::Csv => {
                    let mut s = String::from("nu,mu,n\n");
                    for ((nu, mu), n) in &row {
                        s += &csv_line(&[weight_str(&nu.0), weight_str(&mu.0), n.to_string()]);
                    }
                    s
                }
                Format::Text => row
                    .iter()
                    .map(|((nu, mu), n)| format!("N^{mu}_{{{lam} {nu}}} = {n}\n"))
                    .collect(),
            })
        }
        Command::Plethysm(a) => {
            let rs = root_system(&a.algebra)?;
            let lam = weight(&rs, &a.highest_weight.0)?;
            if a.power <= 0 {
                return Err(tkinv::Error::NonPositivePower(a.power).into());
            }
            let weyl = rs.weyl_group()?;
            let cache = cache(&a.common.cache_dir)?;
            let table = multiplicities(&rs, &lam, cache.as_ref())?;
            let coeffs = plethysm_support(&rs, &weyl, &table, a.power)?;
            Ok(match a.common.format {
                Format::Json => {
                    let entries: Vec<Value> = coeffs.iter().map(|(mu, c)| json!({"mu": mu.0, "c": c})).collect();
                    output::json_line(&json!({
                        "algebra": rs.label.to_string(),
                        "lambda": lam.0,
                        "power": a.power,
                        "coefficients": entries,
                    }))
                }
                Format::Csv => {
                    let mut s = String::from("mu,c\n");
                    for (mu, c) in &coeffs {
                        s += &csv_line(&[weight_str(&mu.0), c.to_string()]);
                    }
                    s
                }
                Format::Text => coeffs.iter().map(|(mu, c)| format!("{mu} {c}\n")).collect(),
            })
        }
        Command::Invariant(a) => invariant(a),
        Command::Verify { suite } => match suite {
            VerifyCommand::Modular(a) => {
                let rs = root_system(&a.algebra)?;
                let ld = LevelData::with_tolerance(rs, a.level, a.tolerance)?;
                let report = ld.verify();
                let out = match a.common.format {
                    Format::Json => {
                        output::json_line(&output::rounded(serde_json::to_value(&report).expect("serializable")))
                    }
                    Format::Csv => {
                        "algebra,level,size,max_s2_minus_c,max_asymmetry,tolerance,passed\n".to_string()
                            + &csv_line(&[
                                report.algebra.clone(),
                                report.level.to_string(),
                                report.size.to_string(),
                                round12(report.max_s2_minus_c).to_string(),
                                round12(report.max_asymmetry).to_string(),
                                round12(report.tolerance).to_string(),
                                report.passed.to_string(),
                            ])
                    }
                    Format::Text => format!(
                        "{} k={} size={} max|S^2-C|={:.3e} max|S-S^T|={:.3e} {}\n",
                        report.algebra,
                        report.level,
                        report.size,
                        report.max_s2_minus_c,
                        report.max_asymmetry,
                        if report.passed { "PASS" } else { "FAIL" }
                    ),
                };
                if report.passed {
                    Ok(out)
                } else {
                    Err(Failure::Verification(out))
                }
            }
            VerifyCommand::Gauss(a) => {
                let report = tkinv_gauss::run_suite(a.seed)?;
                let out = match a.format {
                    Format::Json => {
                        output::json_line(&output::rounded(serde_json::to_value(&report).expect("serializable")))
                    }
                    Format::Csv => {
                        let mut s = String::from("name,residual,tolerance,status\n");
                        for c in &report.checks {
                            s += &csv_line(&[
                                c.name.clone(),
                                round12(c.residual).to_string(),
                                round12(c.tolerance).to_string(),
                                serde_json::to_value(c.status)
                                    .expect("serializable")
                                    .as_str()
                                    .unwrap_or("")
                                    .to_string(),
                            ]);
                        }
                        s
                    }
                    Format::Text => {
                        let mut s = String::new();
                        for c in &report.checks {
                            s += &format!(
                                "{:<28} residual={:.3e} tolerance={:.3e} {:?}\n",
                                c.name, c.residual, c.tolerance, c.status
                            );
                        }
                        s + &format!("{}/{} passed\n", report.passed, report.total)
                    }
                };
                if report.all_passed {
                    Ok(out)
                } else {
                    Err(Failure::Verification(out))
                }
            }
            VerifyCommand::TriplePath(a) => triple_path(a),
        },
    }
}

fn smatrix(a: LevelArgs) -> Result<String, Failure> {
    let rs = root_system(&a.algebra)?;
    let ld = LevelData::with_tolerance(rs, a.level, a.tolerance)?;
    let n = ld.len();
    let one = tkinv::Rational::from_integer(1);
    let twists: Vec<Complex64> = ld.alcove_weights.iter().map(|w| ld.theta_pow(w, one)).collect();
    let qdims: Vec<f64> = ld.alcove_weights.iter().map(|w| ld.qdim(w)).collect();
    Ok(match a.common.format {
        Format::Json => {
            let s: Vec<Vec<Value>> = (0..n)
                .map(|i| (0..n).map(|j| complex_json(ld.s_at(i, j))).collect())
                .collect();
            let c: Vec<Vec<u8>> = (0..n).map(|i| ld.c[i * n..(i + 1) * n].to_vec()).collect();
            output::json_line(&json!({
                "algebra": ld.rs.label.to_string(),
                "level": ld.k,
                "weights": ld.alcove_weights.iter().map(|w| w.0.clone()).collect::<Vec<_>>(),
                "s": s,
                "c": c,
                "theta": twists.iter().map(|t| complex_json(*t)).collect::<Vec<_>>(),
                "d": qdims.iter().map(|d| round12(*d)).collect::<Vec<_>>(),
            }))
        }
        Format::Csv => {
            let mut s = String::from("row,col,lambda,mu,s_re,s_im,c\n");
            for i in 0..n {
                for j in 0..n {
                    let z = ld.s_at(i, j);
                    s += &csv_line(&[
                        i.to_string(),
                        j.to_string(),
                        weight_str(&ld.alcove_weights[i].0),
                        weight_str(&ld.alcove_weights[j].0),
                        round12(z.re).to_string(),
                        round12(z.im).to_string(),
                        ld.c[i * n + j].to_string(),
                    ]);
                }
            }
            s
        }
        Format::Text => {
            let mut s = format!("{} level {} ({} weights)\n", ld.rs.label, ld.k, n);
            for (i, w) in ld.alcove_weights.iter().enumerate() {
                s += &format!("{} d={} theta={}\n", w, round12(qdims[i]), fmt_complex(twists[i]));
            }
            s
        }
    })
}

struct Evaluation {
    value: InvariantValue,
    second: Option<Weight>,
}

fn evaluate(a: &InvariantArgs) -> Result<Evaluation, Failure> {
    let rs = root_system(&a.algebra)?;
    let lam = weight(&rs, &a.highest_weight.0)?;
    if a.torus_knot.0.len() != 2 {
        return Err(invalid("--torus-knot expects p,q"));
    }
    let spec = TorusKnotSpec::new(a.torus_knot.0[0], a.torus_knot.0[1])?;
    let second = match &a.second_color {
        Some(c) => Some(weight(&rs, &c.0)?),
        None => None,
    };
    if second.is_some() && a.manifold == Manifold::S3 && a.framing == Framing::Unframed {
        return Err(invalid(
            "--second-color cannot be combined with --manifold s3 --framing unframed",
        ));
    }
    if a.manifold == Manifold::S2xs1 && a.framing == Framing::Unframed {
        return Err(invalid("--framing unframed applies to --manifold s3 only"));
    }
    if a.method != Method::Direct && !(a.manifold == Manifold::S3 && a.framing == Framing::Framed) {
        return Err(invalid("--method applies to framed S^3 values only"));
    }
    if a.method == Method::RossoJones && second.is_some() {
        return Err(invalid("--method rosso-jones evaluates single knots only"));
    }
    let ld = LevelData::with_tolerance(rs, a.level, a.tolerance)?;
    ld.require_alcove(&lam)?;
    if let Some(b) = &second {
        ld.require_alcove(b)?;
    }
    let cache = cache(&a.common.cache_dir)?;
    let table = multiplicities(&ld.rs, &lam, cache.as_ref())?;
    let zero = Weight::zero(ld.rs.rank);
    let mut colors = vec![lam.clone()];
    colors.extend(second.iter().cloned());
    let (value, path) = match (a.manifold, a.framing, a.method) {
        (Manifold::S2xs1, _, _) => {
            let sums = KnotSums::with_table(&ld, table, spec)?;
            match &second {
                None => (sums.theorem1(), EvalPath::Theorem1),
                Some(b) => (sums.theorem2(b)?, EvalPath::Theorem2),
            }
        }
        (Manifold::S3, Framing::Unframed, _) => {
            let framed = rosso_jones_sum(&ld, &table, spec)?;
            (unframe(&ld, &lam, spec, framed), EvalPath::Qi)
        }
        (Manifold::S3, Framing::Framed, Method::Direct) => {
            let nu = second.as_ref().map(|b| ld.rs.bar(b)).unwrap_or(zero.clone());
            (direct_sum(&ld, &table, spec, &nu)?, EvalPath::RtDirect)
        }
        (Manifold::S3, Framing::Framed, Method::Surgery) => {
            let sums = KnotSums::with_table(&ld, table, spec)?;
            (sums.surgery(second.as_ref().unwrap_or(&zero))?, EvalPath::Surgery)
        }
        (Manifold::S3, Framing::Framed, Method::RossoJones) => {
            (rosso_jones_sum(&ld, &table, spec)?, EvalPath::RossoJones)
        }
    };
    Ok(Evaluation {
        value: InvariantValue::new(&ld, value, path, colors, spec),
        second,
    })
}

fn invariant(a: InvariantArgs) -> Result<String, Failure> {
    let ev = evaluate(&a)?;
    let v = &ev.value;
    let manifold = match a.manifold {
        Manifold::S3 => "s3",
        Manifold::S2xs1 => "s2xs1",
    };
    let framing = match a.framing {
        Framing::Framed => "framed",
        Framing::Unframed => "unframed",
    };
    Ok(match a.common.format {
        Format::Json => output::json_line(&json!({
            "value": complex_json(v.value),
            "path": v.path.as_str(),
            "inputs": {
                "algebra": v.label.to_string(),
                "level": v.k,
                "highest_weight": v.colors[0].0,
                "second_color": ev.second.as_ref().map(|b| b.0.clone()),
                "torus_knot": [v.p, v.q],
                "manifold": manifold,
                "framing": framing,
                "tolerance": round12(a.tolerance),
            },
            "formula": v.path.formula(),
        })),
        Format::Csv => {
            "path,algebra,level,highest_weight,second_color,p,q,manifold,framing,re,im\n".to_string()
                + &csv_line(&[
                    v.path.as_str().to_string(),
                    v.label.to_string(),
                    v.k.to_string(),
                    weight_str(&v.colors[0].0),
                    ev.second.as_ref().map(|b| weight_str(&b.0)).unwrap_or_default(),
                    v.p.to_string(),
                    v.q.to_string(),
                    manifold.to_string(),
                    framing.to_string(),
                    round12(v.value.re).to_string(),
                    round12(v.value.im).to_string(),
                ])
        }
        Format::Text => format!("{} {}\n", v.path, fmt_complex(v.value)),
    })
}

fn triple_path(a: TriplePathArgs) -> Result<String, Failure> {
    let rs = root_system(&a.algebra)?;
    let ld = LevelData::new(rs, a.level)?;
    let cache = cache(&a.common.cache_dir)?;
    let zero = Weight::zero(ld.rs.rank);
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for lam in &ld.alcove_weights {
        let table = multiplicities(&ld.rs, lam, cache.as_ref())?;
        for p in 1..=3 {
            for q in -4..=4 {
                let Ok(spec) = TorusKnotSpec::new(p, q) else { continue };
                let direct = direct_sum(&ld, &table, spec, &zero)?;
                let surgery = KnotSums::with_table(&ld, table.clone(), spec)?.surgery(&zero)?;
                let residual = (surgery - direct).norm() / (1.0 + direct.norm());
                worst = worst.max(residual);
                rows.push((lam.clone(), p, q, direct, surgery, residual));
            }
        }
    }
    let passed = worst <= a.tolerance;
    let out = match a.common.format {
        Format::Json => output::json_line(&json!({
            "algebra": ld.rs.label.to_string(),
            "level": ld.k,
            "cases": rows.len(),
            "max_relative_residual": round12(worst),
            "tolerance": round12(a.tolerance),
            "passed": passed,
            "rows": rows.iter().map(|(l, p, q, d, s, r)| json!({
                "lambda": l.0, "p": p, "q": q,
                "direct": complex_json(*d), "surgery": complex_json(*s),
                "residual": round12(*r),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("lambda,p,q,direct_re,direct_im,surgery_re,surgery_im,residual\n");
            for (l, p, q, d, sg, r) in &rows {
                s += &csv_line(&[
                    weight_str(&l.0),
                    p.to_string(),
                    q.to_string(),
                    round12(d.re).to_string(),
                    round12(d.im).to_string(),
                    round12(sg.re).to_string(),
                    round12(sg.im).to_string(),
                    round12(*r).to_string(),
                ]);
            }
            s
        }
        Format::Text => format!(
            "{} k={} cases={} max relative residual {:.3e} {}\n",
            ld.rs.label,
            ld.k,
            rows.len(),
            worst,
            if passed { "PASS" } else { "FAIL" }
        ),
    };
    if passed {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}
