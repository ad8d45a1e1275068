//! Argument grammar, dispatch and exit codes.
//!
//! Exit codes: 0 success or In or Nef, 1 Out or NotNef or a failed check, 2 Boundary or
//! Unknown, 64 usage error, 65 data error (including exceeded bounds), 70 a certificate that
//! failed to replay.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use akcone_core::cones::{self, Certificate, Verdict};
use akcone_core::configs::{
    self, check_dimension_bounds, classify_shape, BoundCheck, Census, ConfigError, CurveConeSpec, NefVerdict, Shape,
};
use akcone_core::enumerate::{SquareFilter, TableTag};
use akcone_core::weyl::{cremona_reduce, list_form};
use akcone_core::{IntClass, Model, RayClass};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::cache::{Cache, CacheError, TableFile, TableKey};
use crate::json::{self, certificate_json, coeffs_json, int_json, model_json, ray_json, spec_json, InputError};
use crate::report::{RunReport, Timing};
use crate::verify::{acceptance, lemmas, Tables};

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_SOFTWARE: i32 = 70;

#[derive(Debug, Parser)]
#[command(name = "akcone", version, about = "Exact lattice and cone computations on rational 4-manifolds")]
pub struct Cli {
    /// Model for bare coefficient lists: blowup:K, bK, cp2 or s2xs2.
    #[arg(long, global = true, value_parser = json::parse_model)]
    model: Option<Model>,
    /// Emit the JSON report (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Emit indented text instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Table cache directory; defaults to $AKCONE_CACHE_DIR.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Degree bound: caps queries and serves as the default enumeration bound.
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Genus, dimension and pairing invariants of a class.
    Invariants { class: String },
    /// Cremona reduction to normal form with the reflection word.
    Reduce { class: String },
    #[command(subcommand)]
    Enum(EnumCmd),
    #[command(subcommand)]
    Cone(ConeCmd),
    #[command(subcommand)]
    Nef(NefCmd),
    /// Known curve classes orthogonal to a big nef class.
    Locus {
        class: String,
        #[arg(long)]
        spec: String,
    },
    /// Sum of big nef classes whose vanishing loci have empty intersection.
    TaubesClass {
        #[arg(long)]
        inputs: String,
    },
    #[command(subcommand)]
    Config(ConfigCmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
enum EnumCmd {
    Exceptional {
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        max_degree: Option<u64>,
    },
    Spherical {
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        max_degree: Option<u64>,
        #[arg(long, value_enum, default_value_t = SquareArg::Any)]
        square: SquareArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SquareArg {
    Pos,
    Zero,
    Nonneg,
    MinusOne,
    Any,
}

impl From<SquareArg> for SquareFilter {
    fn from(s: SquareArg) -> Self {
        match s {
            SquareArg::Pos => SquareFilter::Positive,
            SquareArg::Zero => SquareFilter::Zero,
            SquareArg::Nonneg => SquareFilter::NonNegative,
            SquareArg::MinusOne => SquareFilter::MinusOne,
            SquareArg::Any => SquareFilter::Any,
        }
    }
}

#[derive(Debug, Subcommand)]
enum ConeCmd {
    /// Membership with a certificate.
    Check {
        #[arg(value_enum, ignore_case = true)]
        cone: ConeArg,
        class: String,
    },
    /// Write an interior point of P_K as a positive combination of spherical classes.
    Decompose { class: String },
    /// Extremal rays of the dual of a curve cone, cut down to the positive cone.
    Dual {
        #[arg(long)]
        generators: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConeArg {
    #[value(name = "P")]
    P,
    #[value(name = "CK")]
    Ck,
    #[value(name = "PK")]
    Pk,
    #[value(name = "SK+")]
    SkPlus,
}

#[derive(Debug, Subcommand)]
enum NefCmd {
    Check {
        class: String,
        #[arg(long)]
        spec: String,
    },
}

#[derive(Debug, clap::Args)]
struct CensusArgs {
    class: String,
    /// Curve spec; defaults to no hypotheses on the class's model.
    #[arg(long)]
    spec: Option<String>,
    #[arg(long, default_value_t = 6)]
    max_parts: u32,
    #[arg(long)]
    max_degree: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum ConfigCmd {
    /// Reducible configurations summing to a class.
    Enum(CensusArgs),
    /// The census with dimension bounds and shapes.
    Audit(CensusArgs),
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    Lemmas {
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        max_degree: Option<u64>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    Acceptance {
        /// Run only these criteria (e.g. 05, 09b).
        #[arg(long)]
        only: Vec<String>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("{message}")]
    Bound { message: String, payload: Value },
    #[error("{0}")]
    Data(String),
    #[error("certificate failed to replay: {0}")]
    Replay(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Replay(_) => EXIT_SOFTWARE,
            _ => EXIT_DATA,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, extra) = match self {
            Self::Usage(_) => ("usage", Value::Null),
            Self::Input(_) => ("data", Value::Null),
            Self::Cache(CacheError::Corrupt { file, .. }) => ("data", json!({"cache_file": file})),
            Self::Cache(_) => ("data", Value::Null),
            Self::Bound { payload, .. } => ("bound_exceeded", payload.clone()),
            Self::Data(_) => ("data", Value::Null),
            Self::Replay(_) => ("internal", Value::Null),
        };
        let mut e = json!({"kind": kind, "message": self.to_string()});
        if !extra.is_null() {
            e["details"] = extra;
        }
        json!({ "error": e })
    }
}

fn data(e: impl std::fmt::Display) -> CliError {
    CliError::Data(e.to_string())
}

struct Output {
    model: Option<Model>,
    inputs: Value,
    result: Value,
    exit: i32,
}

struct Ctx<'a> {
    cli: &'a Cli,
    cache: Option<Cache>,
}

/// Parse `argv` (program name first), run, print the report to `out` and return the exit code.
pub fn run_to<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
        }
    };
    let start = Instant::now();
    let command: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let ctx = Ctx { cli: &cli, cache: Cache::resolve(cli.cache.as_deref()) };
    let mut tables = Tables::new(ctx.cache.as_ref());
    let outcome = dispatch(&ctx, &mut tables);
    let (model, inputs, result, exit) = match outcome {
        Ok(o) => (o.model, o.inputs, o.result, o.exit),
        Err(e) => {
            eprintln!("akcone: {e}");
            (cli.model, Value::Null, e.to_json(), e.exit_code())
        }
    };
    let report = RunReport {
        command,
        model: model.map(model_json),
        inputs,
        result,
        cache: tables.events,
        exit_code: exit,
        timing: cli.timing.then(|| Timing { elapsed_ms: start.elapsed().as_millis() }),
    };
    let text = if cli.pretty { report.to_pretty() } else { report.to_json() + "\n" };
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_SOFTWARE;
    }
    exit
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run_to(argv, &mut lock)
}

fn dispatch(ctx: &Ctx<'_>, tables: &mut Tables<'_>) -> Result<Output, CliError> {
    let cli = ctx.cli;
    match &cli.command {
        Command::Invariants { class } => invariants(ctx, class),
        Command::Reduce { class } => reduce(ctx, class),
        Command::Enum(cmd) => enumerate(ctx, cmd, tables),
        Command::Cone(ConeCmd::Check { cone, class }) => cone_check(ctx, *cone, class),
        Command::Cone(ConeCmd::Decompose { class }) => {
            let e = json::load_ray(class, cli.model)?;
            within_bound(ctx, &e)?;
            certificate_output(&e, cones::decompose_sp(&e).map_err(data)?)
        }
        Command::Cone(ConeCmd::Dual { generators }) => dual(ctx, generators),
        Command::Nef(NefCmd::Check { class, spec }) => nef(ctx, class, spec),
        Command::Locus { class, spec } => locus(ctx, class, spec),
        Command::TaubesClass { inputs } => taubes(ctx, inputs),
        Command::Config(ConfigCmd::Enum(args)) => census(ctx, args, false),
        Command::Config(ConfigCmd::Audit(args)) => census(ctx, args, true),
        Command::Verify(VerifyCmd::Lemmas { k, max_degree, samples }) => {
            verify_lemmas(ctx, *k, *max_degree, *samples, tables)
        }
        Command::Verify(VerifyCmd::Acceptance { only }) => verify_acceptance(ctx, only),
    }
}

fn degree(e: &RayClass) -> num_bigint::BigInt {
    let coords: &[usize] = match e.model() {
        Model::Blowup(_) => &[0],
        Model::SphereBundle => &[0, 1],
    };
    coords.iter().map(|&i| e.coeffs()[i].abs().ceil().to_integer()).max().unwrap_or_default()
}

/// Refuse queries whose degree exceeds `--bound`.
fn within_bound(ctx: &Ctx<'_>, e: &RayClass) -> Result<(), CliError> {
    if let Some(b) = ctx.cli.bound {
        let d = degree(e);
        if d > b.into() {
            return Err(CliError::Bound {
                message: format!("query degree {d} exceeds --bound {b}"),
                payload: json!({"bound": b, "degree": int_json(&d), "query": ray_json(e)}),
            });
        }
    }
    Ok(())
}

fn invariants(ctx: &Ctx<'_>, class: &str) -> Result<Output, CliError> {
    let e = json::load_int(class, ctx.cli.model)?;
    let inv = e.invariants().map_err(data)?;
    let result = json!({
        "class": e.to_string(),
        "g": int_json(&inv.genus),
        "iota": int_json(&inv.iota),
        "l": int_json(&inv.l),
        "sq": int_json(&inv.square),
        "Ke": int_json(&inv.k_dot),
        "adjunction": int_json(&inv.adjunction),
    });
    Ok(Output { model: Some(e.model()), inputs: json!({"class": coeffs_json(&e)}), result, exit: 0 })
}

fn reduce(ctx: &Ctx<'_>, class: &str) -> Result<Output, CliError> {
    let e = json::load_int(class, ctx.cli.model)?;
    let (nf, word) = cremona_reduce(&e).map_err(data)?;
    if !word.verify() || word.start != e || word.end != nf {
        return Err(CliError::Replay(format!("reduction word for {e}")));
    }
    let result = json!({
        "normal_form": coeffs_json(&nf),
        "display": nf.to_string(),
        "word": word.roots.iter().map(|r| coeffs_json(r.class())).collect::<Vec<_>>(),
        "list_form": list_form(&nf).map(|f| format!("{f:?}")),
    });
    Ok(Output { model: Some(e.model()), inputs: json!({"class": coeffs_json(&e)}), result, exit: 0 })
}

fn model_for(ctx: &Ctx<'_>, k: Option<u32>) -> Result<Model, CliError> {
    match (k, ctx.cli.model) {
        (Some(k), Some(m)) if m != Model::Blowup(k) => Err(CliError::Usage(format!("--k {k} contradicts --model {m}"))),
        (Some(k), _) => Ok(Model::Blowup(k)),
        (None, Some(m)) => Ok(m),
        (None, None) => Err(CliError::Usage("give --k or --model".into())),
    }
}

fn enumerate(ctx: &Ctx<'_>, cmd: &EnumCmd, tables: &mut Tables<'_>) -> Result<Output, CliError> {
    let (model, tag, bound) = match cmd {
        EnumCmd::Exceptional { k, max_degree } => {
            let model = model_for(ctx, *k)?;
            let bound = match (max_degree.or(ctx.cli.bound), model) {
                (Some(b), _) => b,
                (None, Model::Blowup(k)) if k <= 8 => 1,
                _ => return Err(CliError::Usage("exceptional classes beyond eight blow-ups need --max-degree".into())),
            };
            (model, TableTag::Exceptional, bound)
        }
        EnumCmd::Spherical { k, max_degree, square } => {
            let model = model_for(ctx, *k)?;
            let bound = max_degree
                .or(ctx.cli.bound)
                .ok_or_else(|| CliError::Usage("spherical enumeration needs --max-degree".into()))?;
            (model, TableTag::Spherical((*square).into()), bound)
        }
    };
    if let (TableTag::Exceptional, Model::SphereBundle) = (tag, model) {
        return Err(data("exceptional classes live on blow-ups"));
    }
    let table = tables.get(TableKey::new(model, tag, bound))?;
    let result = serde_json::to_value(TableFile::from_table(&table)).expect("table serializes");
    let inputs = json!({"tag": crate::cache::tag_name(tag), "bound": bound});
    Ok(Output { model: Some(model), inputs, result, exit: 0 })
}

fn verdict_exit(v: Verdict) -> i32 {
    match v {
        Verdict::In => 0,
        Verdict::Out => 1,
        Verdict::Boundary => 2,
    }
}

fn certificate_output(e: &RayClass, cert: Certificate) -> Result<Output, CliError> {
    cones::replay(&cert).map_err(|err| CliError::Replay(err.to_string()))?;
    let mut result = certificate_json(&cert);
    result["replayed"] = json!(true);
    Ok(Output {
        model: Some(e.model()),
        inputs: json!({"class": ray_json(e)}),
        result,
        exit: verdict_exit(cert.verdict),
    })
}

fn cone_check(ctx: &Ctx<'_>, cone: ConeArg, class: &str) -> Result<Output, CliError> {
    let e = json::load_ray(class, ctx.cli.model)?;
    within_bound(ctx, &e)?;
    let cert = match cone {
        ConeArg::P => cones::in_positive_cone(&e),
        ConeArg::Ck => cones::in_ck(&e).map_err(data)?,
        ConeArg::Pk => cones::in_pk(&e).map_err(data)?,
        ConeArg::SkPlus => cones::in_sk_plus(&e).map_err(data)?,
    };
    certificate_output(&e, cert)
}

fn load_generators(v: &Value, model: Option<Model>) -> Result<Vec<IntClass>, CliError> {
    let (model, items) = match v {
        Value::Object(m) => {
            let model = match m.get("model") {
                Some(mv) => {
                    Some(Model::from(serde_json::from_value::<json::ModelJson>(mv.clone()).map_err(InputError::from)?))
                }
                None => model,
            };
            let items =
                m.get("generators").and_then(Value::as_array).ok_or_else(|| data("expected a generators array"))?;
            (model, items.clone())
        }
        Value::Array(items) => (model, items.clone()),
        _ => return Err(data("expected a generator list")),
    };
    items.iter().map(|g| json::int_from_value(g, model).map_err(CliError::from)).collect()
}

fn dual(ctx: &Ctx<'_>, generators: &str) -> Result<Output, CliError> {
    let gens = load_generators(&json::load_value(generators)?, ctx.cli.model)?;
    let model = gens.first().map(IntClass::model).ok_or_else(|| data("no generators"))?;
    if gens.iter().any(|g| g.model() != model) {
        return Err(data("generators live on different models"));
    }
    let rays = cones::dual_curve_cone(&gens).map_err(data)?;
    // every ray must pair non-negatively with the generators and lie in the closed positive cone
    for r in &rays {
        if gens.iter().any(|g| r.dot(g).is_negative()) || r.square().is_negative() || !r.is_forward_nonnegative() {
            return Err(CliError::Replay(format!("dual ray {r}")));
        }
    }
    let result = json!({
        "rays": rays.iter().map(coeffs_json).collect::<Vec<_>>(),
        "display": rays.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    let inputs = json!({"generators": gens.iter().map(coeffs_json).collect::<Vec<_>>()});
    Ok(Output { model: Some(model), inputs, result, exit: 0 })
}

fn load_spec(arg: &str, fallback: Model) -> Result<CurveConeSpec, CliError> {
    Ok(json::spec_from_value(&json::load_value(arg)?, Some(fallback))?)
}

fn nef(ctx: &Ctx<'_>, class: &str, spec: &str) -> Result<Output, CliError> {
    let e = json::load_int(class, ctx.cli.model)?;
    let spec = load_spec(spec, e.model())?;
    let verdict = configs::is_nef(&e, &spec).map_err(data)?;
    let (result, exit) = match &verdict {
        NefVerdict::Nef => (json!({"verdict": "nef"}), 0),
        NefVerdict::NotNef { witness, pairing } => {
            if e.dot(witness) != *pairing || !pairing.is_negative() {
                return Err(CliError::Replay(format!("nef witness {witness}")));
            }
            (json!({"verdict": "not_nef", "witness": coeffs_json(witness), "pairing": int_json(pairing)}), 1)
        }
        NefVerdict::Unknown => (json!({"verdict": "unknown"}), 2),
    };
    let inputs = json!({"class": coeffs_json(&e), "spec": spec_json(&spec)});
    Ok(Output { model: Some(e.model()), inputs, result, exit })
}

fn locus(ctx: &Ctx<'_>, class: &str, spec: &str) -> Result<Output, CliError> {
    let e = json::load_int(class, ctx.cli.model)?;
    let spec = load_spec(spec, e.model())?;
    let z = configs::vanishing_locus(&e, &spec).map_err(data)?;
    let result = json!({
        "classes": z.classes.iter().map(coeffs_json).collect::<Vec<_>>(),
        "complete": z.complete,
        "ample": z.is_ample(),
    });
    let inputs = json!({"class": coeffs_json(&e), "spec": spec_json(&spec)});
    Ok(Output { model: Some(e.model()), inputs, result, exit: 0 })
}

/// `[{"class", "spec"}, ...]` or `{"spec", "classes": [...]}`.
fn load_taubes_inputs(v: &Value, model: Option<Model>) -> Result<Vec<(IntClass, CurveConeSpec)>, CliError> {
    match v {
        Value::Array(items) => items
            .iter()
            .map(|item| {
                let class = item.get("class").ok_or_else(|| data("each input needs a class"))?;
                let e = json::int_from_value(class, model)?;
                let spec = item.get("spec").ok_or_else(|| data("each input needs a spec"))?;
                Ok((e.clone(), json::spec_from_value(spec, Some(e.model()))?))
            })
            .collect(),
        Value::Object(m) => {
            let spec_v = m.get("spec").ok_or_else(|| data("missing spec"))?;
            let classes = m.get("classes").and_then(Value::as_array).ok_or_else(|| data("missing classes"))?;
            let spec = json::spec_from_value(spec_v, model)?;
            classes
                .iter()
                .map(|c| {
                    Ok((
                        json::int_from_value(c, Some(spec.model)).or_else(|_| json::int_from_value(c, None))?,
                        spec.clone(),
                    ))
                })
                .collect()
        }
        _ => Err(data("expected a list of inputs")),
    }
}

fn taubes(ctx: &Ctx<'_>, inputs: &str) -> Result<Output, CliError> {
    let list = load_taubes_inputs(&json::load_value(inputs)?, ctx.cli.model)?;
    let model = list.first().map(|(e, _)| e.model());
    let echo =
        json!(list.iter().map(|(e, s)| json!({"class": coeffs_json(e), "spec": spec_json(s)})).collect::<Vec<_>>());
    let (result, exit) = match configs::taubes_class(&list) {
        Ok(t) => (json!({"class": coeffs_json(&t), "display": t.to_string()}), 0),
        Err(ConfigError::LociIntersect { common }) => {
            (json!({"failure": "loci_intersect", "common": coeffs_json(&common), "display": common.to_string()}), 1)
        }
        Err(e) => return Err(data(e)),
    };
    Ok(Output { model, inputs: echo, result, exit })
}

fn census_json(c: &Census) -> Value {
    json!({
        "total": coeffs_json(&c.total),
        "candidates": c.candidates,
        "truncated": c.truncated,
        "configurations": c.configurations.iter().map(|cfg| json!({
            "parts": cfg.parts.iter().map(|p| json!({"class": coeffs_json(&p.class), "multiplicity": p.multiplicity})).collect::<Vec<_>>(),
            "connected": cfg.is_connected(),
            "edges": cfg.edges().iter().map(|(i, j, w)| json!([i, j, int_json(w)])).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn shape_name(s: Shape) -> &'static str {
    match s {
        Shape::TwoPieceTransverse => "two_piece_transverse",
        Shape::Comb => "comb",
        Shape::Tree => "tree",
        Shape::Other => "other",
    }
}

fn census(ctx: &Ctx<'_>, args: &CensusArgs, audit: bool) -> Result<Output, CliError> {
    let e = json::load_int(&args.class, ctx.cli.model)?;
    let spec = match &args.spec {
        Some(s) => load_spec(s, e.model())?,
        None => CurveConeSpec::bare(e.model()),
    };
    let max_degree = match args.max_degree.or(ctx.cli.bound) {
        Some(d) => d,
        None => degree(&e.to_ray()).to_u64().ok_or_else(|| data("class degree does not fit a bound"))?,
    };
    let c = configs::enumerate_configurations(&e, &spec, args.max_parts, max_degree).map_err(data)?;
    let mut result = census_json(&c);
    let mut exit = 0;
    if audit {
        let (mut violations, mut equalities, mut odd_equalities) = (0, 0, 0);
        let configs = result["configurations"].as_array_mut().expect("configurations array");
        for (cfg, out) in c.configurations.iter().zip(configs.iter_mut()) {
            let report = check_dimension_bounds(cfg).map_err(data)?;
            let shape = classify_shape(cfg);
            let bound = match &report.bound {
                BoundCheck::Irreducible => json!({"status": "irreducible"}),
                BoundCheck::Disconnected => json!({"status": "skipped_disconnected"}),
                BoundCheck::Checked { lhs, rhs, holds, equality } => json!({
                    "status": "checked", "lhs": int_json(lhs), "rhs": int_json(rhs), "holds": holds, "equality": equality,
                }),
            };
            violations += usize::from(!report.holds());
            if report.is_equality() {
                equalities += 1;
                odd_equalities += usize::from(shape == Shape::Other);
            }
            out["bound"] = bound;
            out["sharper"] = json!(report
                .sharper
                .iter()
                .map(|s| json!({"part": s.part, "lhs": int_json(&s.lhs), "rhs": int_json(&s.rhs), "holds": s.holds}))
                .collect::<Vec<_>>());
            out["shape"] = json!(shape_name(shape));
        }
        result["summary"] = json!({
            "violations": violations,
            "equalities": equalities,
            "equalities_of_shape_other": odd_equalities,
            "holds": violations == 0 && odd_equalities == 0,
        });
        exit = i32::from(violations > 0 || odd_equalities > 0);
    }
    if c.truncated {
        return Err(CliError::Bound {
            message: format!(
                "the part or degree bound cuts the census of {e} (max_parts {}, max_degree {max_degree})",
                args.max_parts
            ),
            payload: result,
        });
    }
    let inputs = json!({"class": coeffs_json(&e), "spec": spec_json(&spec), "max_parts": args.max_parts, "max_degree": max_degree});
    Ok(Output { model: Some(e.model()), inputs, result, exit })
}

fn verify_lemmas(
    ctx: &Ctx<'_>,
    k: Option<u32>,
    max_degree: Option<u64>,
    samples: usize,
    tables: &mut Tables<'_>,
) -> Result<Output, CliError> {
    let model = match (k, ctx.cli.model) {
        (None, None) => Model::Blowup(3),
        _ => model_for(ctx, k)?,
    };
    let params = lemmas::LemmaParams {
        model,
        max_degree: max_degree.or(ctx.cli.bound).unwrap_or(6),
        seed: ctx.cli.seed,
        samples,
    };
    let checks = lemmas::run(&params, tables)?;
    let passed = checks.iter().all(|c| c.passed());
    let properties = checks.iter().filter(|c| !c.skipped).count();
    let result = json!({"passed": passed, "properties": properties, "checks": checks});
    let inputs = json!({"max_degree": params.max_degree, "seed": params.seed, "samples": samples});
    Ok(Output { model: Some(model), inputs, result, exit: i32::from(!passed) })
}

fn verify_acceptance(ctx: &Ctx<'_>, only: &[String]) -> Result<Output, CliError> {
    type Run = fn(u64) -> acceptance::Outcome;
    let table: [(&str, Run); 11] = [
        ("01", |_| acceptance::criterion_01()),
        ("02", |_| acceptance::criterion_02()),
        ("03", |_| acceptance::criterion_03()),
        ("04", |_| acceptance::criterion_04()),
        ("05", |_| acceptance::criterion_05()),
        ("06", acceptance::criterion_06),
        ("07", acceptance::criterion_07),
        ("08", |_| acceptance::criterion_08()),
        ("09a", |_| acceptance::criterion_09_taubes()),
        ("09b", |_| acceptance::criterion_09_screen()),
        ("10", acceptance::criterion_10),
    ];
    let wanted = |id: &str| only.is_empty() || only.iter().any(|o| o == id || (o == "09" && id.starts_with("09")));
    if let Some(bad) = only.iter().find(|o| o.as_str() != "09" && !table.iter().any(|(id, _)| id == o)) {
        return Err(CliError::Usage(format!("unknown criterion '{bad}'")));
    }
    let outcomes: Vec<acceptance::Outcome> =
        table.iter().filter(|(id, _)| wanted(id)).map(|(_, f)| f(ctx.cli.seed)).collect();
    let passed = outcomes.iter().all(|o| o.passed);
    let lines: Vec<String> = outcomes.iter().map(acceptance::Outcome::line).collect();
    let result = json!({"passed": passed, "criteria": outcomes, "lines": lines});
    Ok(Output { model: None, inputs: json!({"seed": ctx.cli.seed, "only": only}), result, exit: i32::from(!passed) })
}
