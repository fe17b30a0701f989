//! Command-line front-end: model checking, validity, decomposition, planar
//! embedding with certificates, enumeration, morphism checks and SVG output.

pub mod certificate;
pub mod model_file;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use condgeo::convexity::enumerate_geometries;
use condgeo::formula::{parse_one_step, parse_prop, OneStep, Prop};
use condgeo::morphism::MorphismVerdict;
use condgeo::pipeline::{run_pipeline, PipelineError};
use condgeo::planar::{plane_geometry, render_svg, EmbeddingError, DEFAULT_PRECISION};
use condgeo::semantics::eval_one_step_with;
use condgeo::solver::{
    decide_class_validity, decide_validity_small, find_countermodel, Countermodel, ModelClass, SolverError, Verdict,
    DEFAULT_BUDGET, DEFAULT_SEED, MAX_SMALL_LETTERS,
};
use condgeo::{check_morphism, decompose, AbstractModel, Clause, ConditionalModel, ConvexGeometry, ParsedFormula, PointMap};
use serde_json::{json, Value};

use certificate::Certificate;
use model_file::{AbstractFile, Model, ModelFile};

#[derive(Debug, Parser)]
#[command(name = "condgeo", version, about = "Conditional logic over finite convex geometries")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClauseArg {
    General,
    Feasible,
    Extreme,
}

impl From<ClauseArg> for Clause {
    fn from(c: ClauseArg) -> Clause {
        match c {
            ClauseArg::General => Clause::General,
            ClauseArg::Feasible => Clause::Feasible,
            ClauseArg::Extreme => Clause::Extreme,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    All,
    Line,
    Chain,
    Poset,
}

impl ClassArg {
    fn with_bound(self, bound: Option<usize>) -> ModelClass {
        match self {
            ClassArg::All => ModelClass::AllGeometries(bound.unwrap_or(4)),
            ClassArg::Line => ModelClass::LineModels(bound.unwrap_or(6)),
            ClassArg::Chain => ModelClass::ChainUpsets(bound.unwrap_or(6)),
            ClassArg::Poset => ModelClass::PosetUpsets(bound.unwrap_or(4)),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a formula in a model file.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long, value_enum, default_value_t = ClauseArg::Extreme)]
        clause: ClauseArg,
    },
    /// Decide validity, search a model class, or look for a countermodel.
    Validate {
        #[arg(long)]
        formula: String,
        #[arg(long, value_enum)]
        class: Option<ClassArg>,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Split a geometry into chains whose upsets join to it.
    Decompose {
        #[arg(long)]
        model: PathBuf,
    },
    /// Place an abstract model in the plane and print a certificate.
    Embed {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u64,
        /// Formulas for the truth table; defaults to conditionals between literals.
        #[arg(long)]
        formula: Vec<String>,
    },
    /// Print every convex geometry on `n` worlds, one JSON object per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        require_empty: bool,
    },
    /// Check that a map between two models' geometries is a morphism.
    VerifyMorphism {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        /// JSON object sending each source id to a target id.
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        strong: bool,
    },
    /// Draw a plane model as SVG.
    Render {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long)]
        highlight: Option<String>,
    },
}

/// How a successful run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Unknown => 2,
        }
    }

    fn of(holds: bool) -> Status {
        if holds {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable, malformed or invalid input.
    Input(anyhow::Error),
    /// A checked invariant failed.
    Internal(anyhow::Error),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(e) => write!(f, "input error: {e:#}"),
            CliError::Internal(e) => write!(f, "internal error: {e:#}"),
        }
    }
}

impl<E: Into<anyhow::Error>> From<E> for CliError {
    fn from(e: E) -> CliError {
        CliError::Input(e.into())
    }
}

type Outcome = Result<Status, CliError>;

fn emit(out: &mut dyn Write, value: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    writeln!(out, "{text}").map_err(|e| CliError::Internal(e.into()))
}

fn render(f: &OneStep) -> String {
    ParsedFormula::from(f.clone()).to_string()
}

/// The geometry of a model; plane models are listed explicitly.
fn geometry_of(model: &Model) -> Result<ConvexGeometry, CliError> {
    match model {
        Model::Abstract(m) => Ok(m.geometry().clone()),
        Model::Plane(m) => Ok(plane_geometry(m)?),
    }
}

fn abstract_of(model: Model, command: &str) -> Result<AbstractModel, CliError> {
    match model {
        Model::Abstract(m) => Ok(m),
        Model::Plane(_) => Err(CliError::Input(anyhow!("{command} expects an abstract model file"))),
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Outcome {
    match cli.command {
        Command::Check { model, formula, clause } => check(&model, &formula, clause.into(), out),
        Command::Validate {
            formula,
            class,
            bound,
            budget,
            seed,
        } => validate(&formula, class.map(|c| c.with_bound(bound)), budget, seed, out),
        Command::Decompose { model } => decompose_cmd(&model, out),
        Command::Embed {
            model,
            out: target,
            svg,
            precision,
            formula,
        } => embed_cmd(&model, &target, svg.as_deref(), precision, &formula, out),
        Command::Enumerate { n, require_empty } => enumerate(n, require_empty, out),
        Command::VerifyMorphism { from, to, map, strong } => verify_morphism(&from, &to, &map, strong, out),
        Command::Render { model, svg, highlight } => render_cmd(&model, &svg, highlight.as_deref(), out),
    }
}

fn check(path: &Path, text: &str, clause: Clause, out: &mut dyn Write) -> Outcome {
    let f = parse_one_step(text)?;
    let model = Model::load(path)?;
    let holds = match (&model, clause) {
        (Model::Abstract(m), _) => eval_one_step_with(m, &f, clause)?,
        (Model::Plane(m), Clause::Extreme) => m.holds(&f)?,
        (Model::Plane(m), _) => {
            let geometry = plane_geometry(m)?;
            let listed = AbstractModel::new(geometry, m.valuation().clone())?;
            eval_one_step_with(&listed, &f, clause)?
        }
    };
    let clause = format!("{clause:?}").to_lowercase();
    emit(out, &json!({ "formula": render(&f), "clause": clause, "holds": holds }))?;
    Ok(Status::of(holds))
}

fn countermodel_file(c: &Countermodel) -> ModelFile {
    match c {
        Countermodel::Abstract(m) => ModelFile::from_abstract(m),
        Countermodel::Line(l) => ModelFile::from_plane(&l.to_plane()),
    }
}

fn solver_error(e: SolverError) -> CliError {
    match e {
        SolverError::Internal => CliError::Internal(anyhow!(e)),
        other => CliError::Input(anyhow!(other)),
    }
}

fn validate(text: &str, class: Option<ModelClass>, budget: u64, seed: u64, out: &mut dyn Write) -> Outcome {
    let f = parse_one_step(text)?;
    let (method, verdict) = match class {
        Some(class) => (format!("{class:?}"), decide_class_validity(&f, class).map_err(solver_error)?),
        None if f.letters().len() <= MAX_SMALL_LETTERS => {
            ("canonical".to_string(), decide_validity_small(&f).map_err(solver_error)?)
        }
        None => ("random".to_string(), find_countermodel(&f, budget, seed).map_err(solver_error)?),
    };
    let mut report = json!({ "formula": render(&f), "method": method });
    let status = match &verdict {
        Verdict::Valid { exhaustive } => {
            report["verdict"] = json!("valid");
            report["exhaustive"] = json!(exhaustive);
            Status::Holds
        }
        Verdict::Countermodel(c) => {
            report["verdict"] = json!("countermodel");
            report["countermodel"] = serde_json::to_value(countermodel_file(c)).expect("model files serialize");
            Status::Fails
        }
        Verdict::Unknown { budget } => {
            report["verdict"] = json!("unknown");
            report["budget"] = json!(budget);
            report["seed"] = json!(seed);
            Status::Unknown
        }
    };
    emit(out, &report)?;
    Ok(status)
}

fn decompose_cmd(path: &Path, out: &mut dyn Write) -> Outcome {
    let geometry = geometry_of(&Model::load(path)?)?;
    let chains = decompose(&geometry)?;
    let listed: Vec<Vec<String>> = chains.iter().map(|c| c.names(geometry.worlds())).collect();
    emit(out, &json!({ "worlds": geometry.worlds(), "chains": listed }))?;
    Ok(Status::Holds)
}

/// `T ~> l` and `l ~> l'` for the literals `l, l'` of the model's letters.
fn default_formulas(m: &AbstractModel) -> Vec<OneStep> {
    let mut literals = vec![Prop::Top];
    for letter in m.valuation().keys() {
        literals.push(Prop::letter(letter));
        literals.push(Prop::not(Prop::letter(letter)));
    }
    literals
        .iter()
        .flat_map(|a| literals.iter().map(move |b| OneStep::cond(a.clone(), b.clone())))
        .collect()
}

fn embed_cmd(
    path: &Path,
    target: &Path,
    svg: Option<&Path>,
    precision: u64,
    texts: &[String],
    out: &mut dyn Write,
) -> Outcome {
    let m = abstract_of(Model::load(path)?, "embed")?;
    let formulas = if texts.is_empty() {
        default_formulas(&m)
    } else {
        texts.iter().map(|t| parse_one_step(t)).collect::<Result<Vec<_>, _>>()?
    };
    let run = run_pipeline(&m, precision).map_err(|e| match e {
        PipelineError::Embedding(EmbeddingError::Decomposition(d)) => CliError::Input(d.into()),
        other => CliError::Internal(other.into()),
    })?;
    let report = run.compare(&m, &formulas).map_err(|e| CliError::Internal(e.into()))?;
    if !report.is_consistent() {
        return Err(CliError::Internal(anyhow!("truth differs between the plane model and the input")));
    }
    ModelFile::from_plane(&run.plane).write(target)?;
    if let Some(svg) = svg {
        let drawing = render_svg(&run.plane, None).expect("no highlight to evaluate");
        fs::write(svg, drawing).with_context(|| format!("cannot write {}", svg.display()))?;
    }
    let certificate = Certificate::new(&m, &run, &report);
    emit(out, &serde_json::to_value(certificate).expect("certificates serialize"))?;
    Ok(Status::Holds)
}

fn enumerate(n: usize, require_empty: bool, out: &mut dyn Write) -> Outcome {
    for g in enumerate_geometries(n, require_empty)? {
        let file = AbstractFile {
            worlds: g.worlds().to_vec(),
            convex: g.sets().iter().map(|c| g.names_of(c)).collect(),
            valuation: BTreeMap::new(),
        };
        let line = serde_json::to_string(&file).expect("model files serialize");
        writeln!(out, "{line}").map_err(|e| CliError::Internal(e.into()))?;
    }
    Ok(Status::Holds)
}

fn verify_morphism(from: &Path, to: &Path, map: &Path, strong: bool, out: &mut dyn Write) -> Outcome {
    let source = geometry_of(&Model::load(from)?)?;
    let target = geometry_of(&Model::load(to)?)?;
    let text = fs::read_to_string(map).with_context(|| format!("cannot read {}", map.display()))?;
    let pairs: BTreeMap<String, String> = serde_json::from_str(&text).context("map file must be a JSON object of ids")?;
    let f = PointMap::from_names(source.worlds().to_vec(), target.worlds().to_vec(), &pairs)?;
    let verdict = check_morphism(&f, &source, &target, strong)?;
    let mut report = json!({
        "morphism": verdict.is_morphism(),
        "strong": if strong { json!(verdict.is_strong()) } else { Value::Null },
    });
    match &verdict {
        MorphismVerdict::NotMorphism { convex, image } => {
            report["witness"] = json!({ "convex": source.names_of(convex), "image": target.names_of(image) });
        }
        MorphismVerdict::NotStrong { missing } => {
            report["witness"] = json!({ "unreached": target.names_of(missing) });
        }
        MorphismVerdict::Morphism | MorphismVerdict::Strong => {}
    }
    emit(out, &report)?;
    Ok(Status::of(if strong { verdict.is_strong() } else { verdict.is_morphism() }))
}

fn render_cmd(path: &Path, svg: &Path, highlight: Option<&str>, out: &mut dyn Write) -> Outcome {
    let Model::Plane(m) = Model::load(path)? else {
        return Err(CliError::Input(anyhow!("render expects a plane model file")));
    };
    let highlight = highlight.map(parse_prop).transpose()?;
    let drawing = render_svg(&m, highlight.as_ref())?;
    fs::write(svg, drawing).with_context(|| format!("cannot write {}", svg.display()))?;
    emit(out, &json!({ "svg": svg.display().to_string() }))?;
    Ok(Status::Holds)
}
