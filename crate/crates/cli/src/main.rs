mod doc;
mod presets;

use clap::{Args, Parser, Subcommand, ValueEnum};
use doc::Doc;
use presets::{Built, Params};
use qdiff::braided::{transmute_check, verify_braided_bialgebra, BraidedError};
use qdiff::comeasure::{
    build_m, build_m0, build_m1, universal_check, validate_algebra, verify_bialgebra, verify_coaction, AlgebraSpec, AlgebraSpecJson, BialgebraPresentation,
    ComeasureError, Variant,
};
use qdiff::graded::GradedError;
use qdiff::ncalg::{NcError, Presentation, PresentationJson};
use qdiff::report::Report;
use qdiff::rmat::{covariance_check, dualqt_verify, qybe_check, RMatrix, RMatrixJson, RmatError};
use qdiff::scalars::{Field, ScalarError};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Comeasure(#[from] ComeasureError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Rmat(#[from] RmatError),
    #[error(transparent)]
    Braided(#[from] BraidedError),
}

#[derive(Parser)]
#[command(name = "qdiff", version, about = "Universal comeasuring bialgebras of finite-dimensional algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Which universal bialgebra to build.
    #[arg(long, global = true, value_enum)]
    variant: Option<VariantArg>,
    /// Word-weight bound for slices and verification.
    #[arg(short = 'L', long = "degree", global = true, default_value_t = 2)]
    degree: u32,
    /// Truncation degree of graded and line presets.
    #[arg(short = 'D', long = "truncate", global = true, default_value_t = 2)]
    truncate: u32,
    /// q, rational or cyclotomic:N.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run the axiom checks.
    #[arg(long, global = true)]
    verify: bool,
    /// Compare against the brute-force universal oracle.
    #[arg(long, global = true)]
    oracle: bool,
    /// Deformation parameter: `symbolic` or a scalar.
    #[arg(long, global = true, default_value = "symbolic")]
    q: String,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an algebra, presentation or R-matrix file and check it.
    Validate { input: PathBuf },
    /// Build a universal bialgebra from an algebra file.
    Build { input: PathBuf },
    /// Build and check all bialgebra and coaction axioms.
    Verify { input: PathBuf },
    /// Build a named example and check its expected relations.
    Preset {
        name: String,
        /// Extract the degree-one quotient of the quantum plane.
        #[arg(long)]
        derive_mq2: bool,
    },
    /// Check the Yang-Baxter equation and covariance of an R-matrix.
    CheckR {
        input: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        /// Algebra file for the covariance check.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Coinvariant slice of a bundle datum: twopoint or rootsof1:2.
    Coinv { name: String },
    /// Canonical rendering of a file or preset.
    Export {
        input: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    M1,
    M,
    M0,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::M1 => Variant::M1,
            VariantArg::M => Variant::M,
            VariantArg::M0 => Variant::M0,
        }
    }
}

enum Input {
    Algebra(AlgebraSpec),
    Presentation(Presentation, serde_json::Map<String, Value>),
    R(RMatrix),
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path, field: Field) -> Result<Input, CliError> {
    let v = read_json(path)?;
    let bad = |e: serde_json::Error| CliError::Input(format!("{}: {e}", path.display()));
    let Value::Object(map) = &v else {
        return Err(CliError::Input(format!("{}: expected a JSON object", path.display())));
    };
    if map.contains_key("dim") {
        let j: AlgebraSpecJson = serde_json::from_value(v).map_err(bad)?;
        Ok(Input::Algebra(AlgebraSpec::from_json(&j, field)?))
    } else if map.contains_key("entries") {
        let j: RMatrixJson = serde_json::from_value(v).map_err(bad)?;
        Ok(Input::R(RMatrix::from_json(&j, field)?))
    } else if map.contains_key("generators") {
        let j: PresentationJson = serde_json::from_value(v.clone()).map_err(bad)?;
        Ok(Input::Presentation(Presentation::from_json(&j)?, map.clone()))
    } else {
        Err(CliError::Input(format!("{}: not an algebra, presentation or R-matrix", path.display())))
    }
}

impl Opts {
    fn field(&self) -> Result<Option<Field>, CliError> {
        self.field.as_deref().map(|s| s.parse().map_err(|_| CliError::Usage(format!("unknown field `{s}`")))).transpose()
    }

    fn params(&self, derive_mq2: bool) -> Result<Params, CliError> {
        Ok(Params { variant: self.variant.map(Variant::from), field: self.field()?, q: self.q.clone(), trunc: self.truncate, derive_mq2 })
    }
}

fn build_variant(spec: &AlgebraSpec, variant: Variant) -> Result<BialgebraPresentation, CliError> {
    Ok(match variant {
        Variant::M1 => build_m1(spec)?,
        Variant::M0 => build_m0(spec)?,
        _ => build_m(spec)?,
    })
}

fn oracle(spec: &AlgebraSpec, variant: Variant, bound: u32) -> Result<Report, CliError> {
    let u = universal_check(spec, variant, bound)?;
    let mut r = Report::new("universal_check");
    r.detail("bound", u.bound);
    r.detail("ideal_slice_dim", u.ideal_slice_dim);
    r.detail("oracle_slice_dim", u.oracle_slice_dim);
    let witness = (!u.matched).then(|| format!("ideal slice dim {} vs oracle {}", u.ideal_slice_dim, u.oracle_slice_dim));
    r.check(format!("ideal slice matches the oracle at L={bound}"), witness);
    Ok(r)
}

fn verify_plain(bp: &BialgebraPresentation, bound: u32) -> Result<Vec<Report>, CliError> {
    let mut out = vec![verify_bialgebra(bp, bound)?];
    if bp.coaction.is_some() {
        out.push(verify_coaction(bp, bound)?);
    }
    Ok(out)
}

fn verify_built(built: &Built, bound: u32, doc: &mut Doc) -> Result<(), CliError> {
    match built {
        Built::Plain { bp, .. } => doc.reports.extend(verify_plain(bp, bound)?),
        Built::Graded(tg) => {
            if tg.formal {
                doc.line("bialgebra axioms skipped: the coproduct is formal");
                if tg.bialgebra.coaction.is_some() {
                    doc.reports.push(verify_coaction(&tg.bialgebra, bound)?);
                }
            } else {
                doc.reports.extend(verify_plain(&tg.bialgebra, bound)?);
            }
        }
        Built::Braided { bp, r, spec } => {
            doc.reports.push(verify_braided_bialgebra(bp, bound)?);
            doc.reports.push(transmute_check(r, spec, bound)?);
        }
        Built::R { rq, r, spec } => {
            doc.reports.push(qybe_check(r));
            doc.reports.push(covariance_check(r, spec)?);
            doc.reports.push(verify_bialgebra(&rq.bialgebra, bound)?);
            doc.reports.push(dualqt_verify(&rq.bialgebra, &rq.pairing, bound)?);
        }
    }
    Ok(())
}

fn render_built(doc: &mut Doc, built: &Built) {
    match built {
        Built::Plain { bp, .. } => doc.bialgebra(bp),
        Built::Graded(tg) => doc.graded(tg),
        Built::Braided { bp, .. } => doc.braided(bp),
        Built::R { rq, .. } => doc.bialgebra(&rq.bialgebra),
    }
}

fn preset_doc(name: &str, opts: &Opts, derive_mq2: bool, checks: bool) -> Result<Doc, CliError> {
    let p = presets::resolve(name, &opts.params(derive_mq2)?)?;
    let mut doc = Doc::new(p.title);
    render_built(&mut doc, &p.built);
    doc.golden = p.golden;
    if checks && opts.verify {
        verify_built(&p.built, opts.degree, &mut doc)?;
    }
    if checks && opts.oracle {
        match (&p.built, p.variant) {
            (Built::Plain { spec: Some(spec), .. }, Variant::M1 | Variant::M | Variant::M0) => doc.reports.push(oracle(spec, p.variant, opts.degree)?),
            _ => return Err(CliError::Usage(format!("no universal oracle for preset {name}"))),
        }
    }
    Ok(doc)
}

fn presentation_doc(title: &str, pres: &Presentation, extra: serde_json::Map<String, Value>) -> Doc {
    let mut doc = Doc::new(title);
    let j = pres.to_json();
    doc.line(format!("field: {}", j.field));
    let names: Vec<&str> = j.generators.iter().map(|g| g.name.as_str()).collect();
    doc.line(format!("generators ({}): {}", names.len(), names.join(" ")));
    doc.line(format!("relations ({}):", j.relations.len()));
    for r in &j.relations {
        doc.line(format!("  {r} = 0"));
    }
    doc.json = extra;
    doc.json.insert("field".into(), json!(j.field));
    doc.json.insert("generators".into(), serde_json::to_value(&j.generators).expect("serializable"));
    doc.json.insert("relations".into(), json!(j.relations));
    doc
}

fn algebra_doc(title: &str, spec: &AlgebraSpec) -> Doc {
    let mut doc = Doc::new(title);
    doc.line(format!("field: {}", spec.field()));
    doc.line(format!("dim: {}", spec.dim()));
    doc.line(format!("unit: {}", spec.unit().map_or("none".to_string(), |u| spec.labels()[u].clone())));
    let l = spec.labels();
    for i in 0..spec.dim() {
        for j in 0..spec.dim() {
            let terms: Vec<String> = (0..spec.dim()).filter(|&k| !spec.c(i, j, k).is_zero()).map(|k| format!("({})e_{}", spec.c(i, j, k), l[k])).collect();
            let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            doc.line(format!("  e_{} e_{} = {rhs}", l[i], l[j]));
        }
    }
    if let Value::Object(m) = serde_json::to_value(spec.to_json()).expect("serializable") {
        doc.json = m;
    }
    doc
}

fn r_doc(title: &str, r: &RMatrix) -> Doc {
    let mut doc = Doc::new(title);
    doc.line(format!("field: {}", r.field()));
    doc.line(format!("labels: {}", r.labels().join(" ")));
    doc.line(format!("nonzero entries: {}", r.entries().count()));
    if let Value::Object(m) = serde_json::to_value(r.to_json()).expect("serializable") {
        doc.json = m;
    }
    doc
}

fn title_of(extra: &serde_json::Map<String, Value>, path: &Path) -> String {
    extra.get("name").and_then(Value::as_str).map_or_else(|| path.display().to_string(), str::to_string)
}

fn run(cli: &Cli) -> Result<Doc, CliError> {
    let opts = &cli.opts;
    let field = opts.field()?.unwrap_or(Field::RationalQ);
    let variant = opts.variant.map_or(Variant::M, Variant::from);
    match &cli.command {
        Command::Validate { input } => {
            let title = format!("validate {}", input.display());
            match load(input, field)? {
                Input::Algebra(spec) => {
                    let mut doc = algebra_doc(&title, &spec);
                    let a = validate_algebra(&spec);
                    let mut r = Report::new("algebra");
                    r.check(
                        "associative",
                        a.assoc_witness.map(|w| format!("(e_{} e_{}) e_{} vs e_{} (e_{} e_{}) at component {}", w.0, w.1, w.2, w.0, w.1, w.2, w.3)),
                    );
                    r.check("unit", a.unit_witness.map(|w| format!("component ({}, {})", w.0, w.1)));
                    doc.reports.push(r);
                    Ok(doc)
                }
                Input::Presentation(pres, extra) => {
                    let mut doc = presentation_doc(&title, &pres, extra);
                    let mut r = Report::new("presentation");
                    r.pass("parses");
                    doc.reports.push(r);
                    Ok(doc)
                }
                Input::R(r) => {
                    let mut doc = r_doc(&title, &r);
                    doc.reports.push(qybe_check(&r));
                    Ok(doc)
                }
            }
        }
        Command::Build { input } | Command::Verify { input } => {
            let Input::Algebra(spec) = load(input, field)? else {
                return Err(CliError::Input(format!("{}: expected an algebra spec", input.display())));
            };
            let bp = build_variant(&spec, variant)?;
            let mut doc = Doc::new(format!("{} {}", if matches!(cli.command, Command::Build { .. }) { "build" } else { "verify" }, input.display()));
            doc.bialgebra(&bp);
            if opts.verify || matches!(cli.command, Command::Verify { .. }) {
                doc.reports.extend(verify_plain(&bp, opts.degree)?);
            }
            if opts.oracle {
                doc.reports.push(oracle(&spec, variant, opts.degree)?);
            }
            Ok(doc)
        }
        Command::Preset { name, derive_mq2 } => preset_doc(name, opts, *derive_mq2, true),
        Command::CheckR { input, preset, spec } => {
            let (r, alg, title) = match (input, preset) {
                (Some(path), None) => {
                    let Input::R(r) = load(path, field)? else {
                        return Err(CliError::Input(format!("{}: expected an R-matrix", path.display())));
                    };
                    (r, None, format!("check-r {}", path.display()))
                }
                (None, Some(name)) => {
                    let (r, alg) = presets::r_preset(name, &opts.params(false)?)?;
                    (r, Some(alg), format!("check-r {name}"))
                }
                _ => return Err(CliError::Usage("check-r takes exactly one of FILE or --preset".into())),
            };
            let alg = match spec {
                Some(path) => match load(path, r.field())? {
                    Input::Algebra(a) => Some(a),
                    _ => return Err(CliError::Input(format!("{}: expected an algebra spec", path.display()))),
                },
                None => alg,
            };
            let mut doc = r_doc(&title, &r);
            doc.reports.push(qybe_check(&r));
            if let Some(a) = alg {
                doc.reports.push(covariance_check(&r, &a)?);
            }
            Ok(doc)
        }
        Command::Coinv { name } => {
            let (pres, co, golden) = presets::coinv(name, opts.degree, &opts.params(false)?)?;
            let mut doc = Doc::new(format!("coinv {name}"));
            let shown: Vec<String> = co.iter().map(|p| p.display(pres.generators())).collect();
            doc.line(format!("coinvariants up to L={} ({}):", opts.degree, shown.len()));
            for s in &shown {
                doc.line(format!("  {s}"));
            }
            doc.json.insert("bound".into(), json!(opts.degree));
            doc.json.insert("coinvariants".into(), json!(shown));
            doc.golden = golden;
            Ok(doc)
        }
        Command::Export { input, preset } => match (input, preset) {
            (None, Some(name)) => preset_doc(name, opts, false, false),
            (Some(path), None) => Ok(match load(path, field)? {
                Input::Algebra(spec) => algebra_doc(&path.display().to_string(), &spec),
                Input::R(r) => r_doc(&path.display().to_string(), &r),
                Input::Presentation(pres, extra) => presentation_doc(&title_of(&extra, path), &pres, extra),
            }),
            _ => Err(CliError::Usage("export takes exactly one of FILE or --preset".into())),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let doc = match run(&cli) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("qdiff: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match cli.opts.format {
        Format::Text => doc.text(),
        Format::Json => doc.to_json(),
    };
    match &cli.opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("qdiff: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(if doc.passed() { 0 } else { 1 })
}
