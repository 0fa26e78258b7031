//! `modframe` — JSON front end for the frame-theory library.
//!
//! Frame systems, operators and non-unital model systems come in as JSON
//! documents; every result goes to stdout as JSON, diagnostics to stderr.
//! Exit codes are a contract: 0 success (a "not a frame" verdict is a
//! result, not an error), 1 self-test failure, 2 parse error, 3 dimension
//! mismatch, 4 violated precondition.

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use modframe::approximation::{best_parseval, best_tight, perturb_check};
use modframe::cstar::{AlgebraElement, AlgebraShape};
use modframe::duality::{dual_from_parameter, has_unique_dual, is_dual, parseval_dual};
use modframe::extension::{extend_to_frame, extend_to_parseval};
use modframe::frames::FrameSystem;
use modframe::linalg::ComplexMatrix;
use modframe::module_space::{inner_product, ModuleOperator, ModuleVector};
use modframe::nonunital::{classify_finite_system, outer_parseval_complete, TailSequenceElement};
use modframe::sampling;
use modframe::{Complex64, FrameError};

const EXIT_SELFTEST: i32 = 1;
const EXIT_PARSE: i32 = 2;
const EXIT_DIMENSION: i32 = 3;
const EXIT_PRECONDITION: i32 = 4;

#[derive(Parser)]
#[command(
    name = "modframe",
    version,
    about = "Frame computations over finite-dimensional C*-algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ApproxMode {
    Parseval,
    Tight,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtendTarget {
    Frame,
    Parseval,
}

#[derive(Clone, Copy, ValueEnum)]
enum NonunitalAction {
    Classify,
    Complete,
}

#[derive(Subcommand)]
enum Command {
    /// Frame bounds and Parseval/tightness verdicts for a frame document.
    Analyze {
        path: String,
        /// Frame-decision tolerance (overrides MODFRAME_TOL and the default 1e-8).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Canonical dual, or the parametrized dual when --param is given.
    Dual {
        path: String,
        /// Operator document L (N×m over A) for the dual parametrization.
        #[arg(long)]
        param: Option<String>,
    },
    /// Parseval dual when one exists; exits 4 with reason lower_bound|corank.
    ParsevalDual { path: String },
    /// Whether the canonical dual is the only dual, plus the orthonormality
    /// check on the canonical Parseval frame when it is.
    UniqueDual { path: String },
    /// Best Parseval or tight approximation.
    Approx {
        path: String,
        #[arg(long, value_enum)]
        mode: ApproxMode,
    },
    /// Perturbation verdict for a reference frame and a candidate system.
    Perturb { path_a: String, path_b: String },
    /// Finite extension to a frame or to a Parseval frame.
    Extend {
        path: String,
        #[arg(long, value_enum)]
        target: ExtendTarget,
    },
    /// Classify or Parseval-complete a system in the non-unital model.
    Nonunital {
        path: String,
        #[arg(long, value_enum)]
        action: NonunitalAction,
    },
    /// Seeded property-suite runner over random frames.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 24)]
        trials: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    fn dimension(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_DIMENSION,
            message: message.into(),
        }
    }

    fn precondition(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PRECONDITION,
            message: message.into(),
        }
    }
}

impl From<FrameError> for Failure {
    fn from(err: FrameError) -> Self {
        let code = match err {
            FrameError::ShapeMismatch(_)
            | FrameError::DimensionError(_)
            | FrameError::NonSquare { .. } => EXIT_DIMENSION,
            _ => EXIT_PRECONDITION,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

// ── document schemas ────────────────────────────────────────────────

/// Complex scalar as `[re, im]`.
type Cx = [f64; 2];
/// One matrix block: rows of `[re, im]` pairs.
type MatrixDoc = Vec<Vec<Cx>>;
/// One algebra element: a matrix per block.
type ElementDoc = Vec<MatrixDoc>;
/// One module vector: an element per component.
type VectorDoc = Vec<ElementDoc>;

#[derive(Serialize, Deserialize)]
struct AlgebraDoc {
    block_dims: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct FrameDocument {
    algebra: AlgebraDoc,
    module_rank: usize,
    vectors: Vec<VectorDoc>,
}

#[derive(Serialize, Deserialize)]
struct OperatorDocument {
    algebra: AlgebraDoc,
    out_rank: usize,
    in_rank: usize,
    /// Row-major `out_rank × in_rank` grid of algebra elements.
    entries: Vec<Vec<ElementDoc>>,
}

#[derive(Serialize, Deserialize)]
struct TailElementDoc {
    prefix: Vec<Cx>,
    tail: Cx,
}

#[derive(Serialize, Deserialize)]
struct NonunitalDocument {
    elements: Vec<TailElementDoc>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::parse(format!("invalid JSON in {path}: {e}")))
}

fn shape_from_doc(doc: &AlgebraDoc) -> Result<AlgebraShape, Failure> {
    if doc.block_dims.is_empty() || doc.block_dims.contains(&0) {
        return Err(Failure::dimension(
            "algebra.block_dims must be nonempty positive integers",
        ));
    }
    Ok(AlgebraShape::new(doc.block_dims.clone()))
}

fn complex_from(cx: Cx) -> Result<Complex64, Failure> {
    if !cx[0].is_finite() || !cx[1].is_finite() {
        return Err(Failure::parse("non-finite number in document"));
    }
    Ok(Complex64::new(cx[0], cx[1]))
}

fn element_from_doc(shape: &AlgebraShape, doc: &ElementDoc) -> Result<AlgebraElement, Failure> {
    if doc.len() != shape.block_count() {
        return Err(Failure::dimension(format!(
            "element has {} blocks, algebra has {}",
            doc.len(),
            shape.block_count()
        )));
    }
    let mut blocks = Vec::with_capacity(doc.len());
    for (matrix, &nk) in doc.iter().zip(shape.block_dims()) {
        if matrix.len() != nk || matrix.iter().any(|row| row.len() != nk) {
            return Err(Failure::dimension(format!("block must be {nk}x{nk}")));
        }
        let mut block = ComplexMatrix::zeros(nk, nk);
        for (i, row) in matrix.iter().enumerate() {
            for (j, &cx) in row.iter().enumerate() {
                block.set(i, j, complex_from(cx)?);
            }
        }
        blocks.push(block);
    }
    AlgebraElement::new(shape.clone(), blocks).map_err(Failure::from)
}

fn element_to_doc(element: &AlgebraElement) -> ElementDoc {
    element
        .blocks()
        .iter()
        .map(|b| {
            (0..b.rows())
                .map(|i| {
                    (0..b.cols())
                        .map(|j| {
                            let z = b.get(i, j);
                            [z.re, z.im]
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn system_from_doc(doc: &FrameDocument) -> Result<FrameSystem, Failure> {
    let shape = shape_from_doc(&doc.algebra)?;
    if doc.module_rank == 0 {
        return Err(Failure::dimension("module_rank must be positive"));
    }
    if doc.vectors.is_empty() {
        return Err(Failure::precondition("document contains no vectors"));
    }
    let mut vectors = Vec::with_capacity(doc.vectors.len());
    for vec_doc in &doc.vectors {
        if vec_doc.len() != doc.module_rank {
            return Err(Failure::dimension(format!(
                "vector has {} components, module_rank is {}",
                vec_doc.len(),
                doc.module_rank
            )));
        }
        let components = vec_doc
            .iter()
            .map(|e| element_from_doc(&shape, e))
            .collect::<Result<Vec<_>, _>>()?;
        vectors.push(ModuleVector::new(components).map_err(Failure::from)?);
    }
    FrameSystem::new(vectors).map_err(Failure::from)
}

fn system_to_doc(system: &FrameSystem) -> FrameDocument {
    FrameDocument {
        algebra: AlgebraDoc {
            block_dims: system.shape().block_dims().to_vec(),
        },
        module_rank: system.rank(),
        vectors: system
            .vectors()
            .iter()
            .map(|v| {
                (0..v.rank())
                    .map(|i| element_to_doc(v.component(i)))
                    .collect()
            })
            .collect(),
    }
}

fn operator_from_doc(doc: &OperatorDocument) -> Result<ModuleOperator, Failure> {
    let shape = shape_from_doc(&doc.algebra)?;
    if doc.out_rank == 0 || doc.in_rank == 0 {
        return Err(Failure::dimension("operator ranks must be positive"));
    }
    if doc.entries.len() != doc.out_rank || doc.entries.iter().any(|row| row.len() != doc.in_rank) {
        return Err(Failure::dimension(
            "entry grid does not match out_rank × in_rank",
        ));
    }
    let mut entries = Vec::with_capacity(doc.out_rank * doc.in_rank);
    for row in &doc.entries {
        for e in row {
            entries.push(element_from_doc(&shape, e)?);
        }
    }
    ModuleOperator::new(shape, doc.out_rank, doc.in_rank, entries).map_err(Failure::from)
}

fn tail_from_doc(doc: &TailElementDoc) -> Result<TailSequenceElement, Failure> {
    let prefix = doc
        .prefix
        .iter()
        .map(|&cx| complex_from(cx))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TailSequenceElement::new(prefix, complex_from(doc.tail)?))
}

fn tail_to_doc(element: &TailSequenceElement) -> TailElementDoc {
    TailElementDoc {
        prefix: element.prefix().iter().map(|z| [z.re, z.im]).collect(),
        tail: [element.tail().re, element.tail().im],
    }
}

fn emit(value: &impl Serialize) {
    println!(
        "{}",
        serde_json::to_string(value).expect("report serialization")
    );
}

// ── reports ─────────────────────────────────────────────────────────

#[derive(Serialize)]
struct AnalyzeReport {
    #[serde(rename = "A")]
    lower: f64,
    #[serde(rename = "B")]
    upper: f64,
    is_frame: bool,
    is_parseval: bool,
    is_tight: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    tight_constant: Option<f64>,
}

#[derive(Serialize)]
struct UniqueDualReport {
    unique: bool,
    /// Max deviation of `⟨y_n, y_m⟩` from `δ_nm·e` over the canonical
    /// Parseval frame; present when `unique`.
    #[serde(skip_serializing_if = "Option::is_none")]
    orthonormality_residual: Option<f64>,
}

#[derive(Serialize)]
struct ApproxReport {
    mode: &'static str,
    distance: f64,
    measured_distance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tight_constant: Option<f64>,
    system: FrameDocument,
}

#[derive(Serialize)]
struct PerturbReport {
    distance: f64,
    radius: f64,
    within: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    guaranteed_lower: Option<f64>,
    per_element_bound: f64,
}

#[derive(Serialize)]
struct ExtendReport {
    target: &'static str,
    added: usize,
    #[serde(rename = "A")]
    lower: f64,
    #[serde(rename = "B")]
    upper: f64,
    residual: f64,
    system: FrameDocument,
}

#[derive(Serialize)]
struct ClassifyReport {
    kind: &'static str,
    #[serde(rename = "A")]
    lower: f64,
    #[serde(rename = "B")]
    upper: f64,
    strict_check: bool,
}

#[derive(Serialize)]
struct SelftestReport {
    seed: u64,
    trials: usize,
    reconstruction_worst: f64,
    bound_route_gap_worst: f64,
    dual_residual_worst: f64,
    parseval_distance_gap_worst: f64,
    extension_residual_worst: f64,
    failures: usize,
}

fn frame_tolerance(flag: Option<f64>) -> Result<f64, Failure> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var("MODFRAME_TOL") {
        Ok(raw) => raw
            .parse::<f64>()
            .map_err(|_| Failure::parse(format!("MODFRAME_TOL is not a number: {raw}"))),
        Err(_) => Ok(modframe::tol::TAU_FRAME),
    }
}

fn require_frame(system: &FrameSystem, tau: f64) -> Result<(), Failure> {
    let report = system.analyze_with(tau);
    if !report.is_frame {
        return Err(Failure::precondition(format!(
            "input is not a frame (lower bound {:.6e})",
            report.lower
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { path, tol } => {
            let system = system_from_doc(&read_json(&path)?)?;
            let tau = frame_tolerance(tol)?;
            let report = system.analyze_with(tau);
            emit(&AnalyzeReport {
                lower: report.lower,
                upper: report.upper,
                is_frame: report.is_frame,
                is_parseval: report.is_parseval,
                is_tight: report.is_tight,
                tight_constant: report.tight_constant,
            });
        }
        Command::Dual { path, param } => {
            let system = system_from_doc(&read_json(&path)?)?;
            let tau = frame_tolerance(None)?;
            require_frame(&system, tau)?;
            let dual = match param {
                None => system.canonical_dual()?,
                Some(param_path) => {
                    let l = operator_from_doc(&read_json(&param_path)?)?;
                    if l.out_rank() != system.len() || l.in_rank() != system.rank() {
                        return Err(Failure::dimension(format!(
                            "parameter must be {}x{} over the same algebra",
                            system.len(),
                            system.rank()
                        )));
                    }
                    dual_from_parameter(&system, &l)?
                }
            };
            emit(&system_to_doc(&dual));
        }
        Command::ParsevalDual { path } => {
            let system = system_from_doc(&read_json(&path)?)?;
            let tau = frame_tolerance(None)?;
            require_frame(&system, tau)?;
            let dual = parseval_dual(&system).map_err(|err| match err {
                FrameError::LowerBoundBelowOne { lower } => Failure::precondition(format!(
                    "lower_bound: no Parseval dual, optimal lower bound {lower:.6} < 1"
                )),
                FrameError::InsufficientCorank { needed, available } => Failure::precondition(
                    format!("corank: no Parseval dual, rank {needed} exceeds corank {available}"),
                ),
                other => Failure::from(other),
            })?;
            emit(&system_to_doc(&dual));
        }
        Command::UniqueDual { path } => {
            let system = system_from_doc(&read_json(&path)?)?;
            let tau = frame_tolerance(None)?;
            require_frame(&system, tau)?;
            let unique = has_unique_dual(&system)?;
            let orthonormality_residual = if unique {
                let parseval = system.canonical_parseval()?;
                let unit = AlgebraElement::unit(system.shape());
                let mut worst = 0.0f64;
                for (n, yn) in parseval.vectors().iter().enumerate() {
                    for (m, ym) in parseval.vectors().iter().enumerate() {
                        let mut ip = inner_product(yn, ym)?;
                        if n == m {
                            ip = ip.sub(&unit)?;
                        }
                        worst = worst.max(ip.norm());
                    }
                }
                Some(worst)
            } else {
                None
            };
            emit(&UniqueDualReport {
                unique,
                orthonormality_residual,
            });
        }
        Command::Approx { path, mode } => {
            let system = system_from_doc(&read_json(&path)?)?;
            let tau = frame_tolerance(None)?;
            require_frame(&system, tau)?;
            match mode {
                ApproxMode::Parseval => {
                    let out = best_parseval(&system)?;
                    emit(&ApproxReport {
                        mode: "parseval",
                        distance: out.distance,
                        measured_distance: out.measured_distance,
                        tight_constant: None,
                        system: system_to_doc(&out.approx),
                    });
                }
                ApproxMode::Tight => {
                    let out = best_tight(&system)?;
                    emit(&ApproxReport {
                        mode: "tight",
                        distance: out.distance,
                        measured_distance: out.measured_distance,
                        tight_constant: Some(out.tight_constant),
                        system: system_to_doc(&out.approx),
                    });
                }
            }
        }
        Command::Perturb { path_a, path_b } => {
            let reference = system_from_doc(&read_json(&path_a)?)?;
            let candidate = system_from_doc(&read_json(&path_b)?)?;
            let verdict = perturb_check(&reference, &candidate)?;
            emit(&PerturbReport {
                distance: verdict.distance,
                radius: verdict.radius,
                within: verdict.within,
                guaranteed_lower: verdict.guaranteed_lower,
                per_element_bound: verdict.per_element_bound,
            });
        }
        Command::Extend { path, target } => {
            let system = system_from_doc(&read_json(&path)?)?;
            let (label, out) = match target {
                ExtendTarget::Frame => ("frame", extend_to_frame(&system)),
                ExtendTarget::Parseval => ("parseval", extend_to_parseval(&system)?),
            };
            let residual = out
                .certificate
                .identity_residual
                .or(out.certificate.theta_witness_residual)
                .unwrap_or(0.0);
            emit(&ExtendReport {
                target: label,
                added: out.added.len(),
                lower: out.certificate.combined_lower,
                upper: out.certificate.combined_upper,
                residual,
                system: system_to_doc(&out.combined),
            });
        }
        Command::Nonunital { path, action } => {
            let doc: NonunitalDocument = read_json(&path)?;
            let elements = doc
                .elements
                .iter()
                .map(tail_from_doc)
                .collect::<Result<Vec<_>, _>>()?;
            match action {
                NonunitalAction::Classify => {
                    let verdict = classify_finite_system(&elements)?;
                    emit(&ClassifyReport {
                        kind: verdict.kind.as_str(),
                        lower: verdict.lower,
                        upper: verdict.upper,
                        strict_check: verdict.strict_check,
                    });
                }
                NonunitalAction::Complete => {
                    let completed = outer_parseval_complete(&elements)?;
                    emit(&NonunitalDocument {
                        elements: completed.iter().map(tail_to_doc).collect(),
                    });
                }
            }
        }
        Command::Selftest { seed, trials } => {
            let report = selftest(seed, trials);
            emit(&report);
            if report.failures > 0 {
                return Err(Failure {
                    code: EXIT_SELFTEST,
                    message: format!("{} self-test checks failed", report.failures),
                });
            }
        }
    }
    Ok(())
}

/// Seeded sweep over random frames exercising the headline identities.
fn selftest(seed: u64, trials: usize) -> SelftestReport {
    let mut rng = sampling::rng_from_seed(seed);
    let shapes = sampling::standard_shapes();
    let mut failures = 0usize;
    let mut reconstruction_worst = 0.0f64;
    let mut bound_route_gap_worst = 0.0f64;
    let mut dual_residual_worst = 0.0f64;
    let mut parseval_distance_gap_worst = 0.0f64;
    let mut extension_residual_worst = 0.0f64;

    for trial in 0..trials {
        let shape = &shapes[trial % shapes.len()];
        let m = 1 + trial % 2;
        let n = m + 1 + trial % 2;
        let f = sampling::frame(&mut rng, shape, m, n);
        let report = f.analyze();
        if report.lower < 1e-2 * report.upper.max(1.0) {
            continue; // too ill-conditioned to grade at the pinned tolerances
        }

        match f.canonical_dual() {
            Ok(dual) => {
                let mut ok = true;
                for q in 0..m {
                    let x = ModuleVector::standard_generator(shape, m, q);
                    match f.reconstruct(&dual, &x) {
                        Ok(rec) => {
                            let err = rec.sub(&x).map(|d| d.norm()).unwrap_or(f64::INFINITY);
                            reconstruction_worst = reconstruction_worst.max(err);
                            ok &= err <= 1e-9;
                        }
                        Err(_) => ok = false,
                    }
                }
                if let Ok(check) = is_dual(&f, &dual) {
                    dual_residual_worst = dual_residual_worst.max(check.residual);
                    ok &= check.ok;
                }
                if !ok {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }

        let upper_route = f.analysis().norm().powi(2);
        let gap = (upper_route - report.upper).abs();
        bound_route_gap_worst = bound_route_gap_worst.max(gap);
        if gap > 1e-9 {
            failures += 1;
        }

        match best_parseval(&f) {
            Ok(p) => {
                let gap = (p.distance - p.measured_distance).abs();
                parseval_distance_gap_worst = parseval_distance_gap_worst.max(gap);
                if gap > 1e-9 {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }

        // Scale into Bessel range and extend back to Parseval.
        let factor = (1.0 / report.upper).sqrt();
        let bessel = FrameSystem::new(
            f.vectors()
                .iter()
                .map(|v| v.scale(Complex64::new(factor, 0.0)))
                .collect(),
        )
        .expect("same vector count");
        match extend_to_parseval(&bessel) {
            Ok(ext) => {
                let residual = ext.certificate.identity_residual.unwrap_or(f64::INFINITY);
                extension_residual_worst = extension_residual_worst.max(residual);
                if residual > 1e-8 {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }

    SelftestReport {
        seed,
        trials,
        reconstruction_worst,
        bound_route_gap_worst,
        dual_residual_worst,
        parseval_distance_gap_worst,
        extension_residual_worst,
        failures,
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(failure) = run(cli) {
        eprintln!("error: {}", failure.message);
        std::process::exit(failure.code);
    }
}
