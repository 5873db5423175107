//! End-to-end verification harness.
//!
//! An experiment takes a group, a growth table, a collection of subsets and
//! scale factors, measures boundaries and witnesses, and records the literal
//! truth of every inequality in the chain
//!
//! ```text
//! (1 − 1/λ)|D| ≤ |D| − |I_y| = |E_y| ≤ ‖y‖·|∂D| ≤ φ(λ|D|)·|∂D|,
//! ```
//!
//! plus the convolution identity `Σ|I_y| = |D|²`, the exterior-boundary
//! sandwich, the exit-map fiber bounds, the strict-φ̃ restatement, and any
//! configured closed-form bounds `|∂D| ≥ F(|D|)`.
//!
//! Configs are TOML files (schema documented in the book); reports are
//! line-delimited JSON plus a CSV summary with columns
//! `group,size_d,boundary,ext_boundary,lambda,bound,pass`. Runs are
//! deterministic: identical configs (including seeds) produce byte-identical
//! reports.

use std::fs;
use std::path::{Path, PathBuf};

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::boundary::{
    convolution_identity, exit_map, BoundaryError, BoundaryReport, ExitVariant, FiniteSubset,
    SubsetSource, WitnessReport,
};
use crate::bounds::{
    closed_form_exp, closed_form_poly, fit_poly_constant, fit_stretched_exp_constant, BoundsError,
    PolyGrowth, StretchedExpGrowth,
};
use crate::cache;
use crate::group::GroupSpec;
use crate::growth::{GrowthError, GrowthTable, DEFAULT_MEMORY_BUDGET};
use crate::rat::{parse_rational, render_rational, Rational, Threshold};

/// Report schema version stamped on every record line.
pub const REPORT_SCHEMA: u32 = 1;
/// Config schema version this build understands.
pub const CONFIG_SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("config error: {0}")]
    Config(String),
    #[error(
        "growth hypothesis {hypothesis} violated at n = {n}: gamma(n-1) = {gamma} < required {required}"
    )]
    HypothesisViolated {
        hypothesis: String,
        n: u32,
        gamma: u64,
        required: String,
    },
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
    #[error(transparent)]
    Growth(#[from] GrowthError),
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// One subset source plus its sampling parameters.
#[derive(Debug, Clone)]
pub struct SubsetJob {
    pub source: SubsetSource,
    /// Number of independent draws (random sources only).
    pub count: u32,
    /// Ball radius random draws come from; defaults to the table radius.
    pub ball: Option<u32>,
}

/// How scale factors are chosen per subset.
#[derive(Debug, Clone)]
pub enum LambdaMode {
    /// A fixed list; values inadmissible for a given subset (beyond
    /// `|Γ|/|D|`) are skipped and counted.
    List(Vec<Rational>),
    /// The strongest discrete candidate `λ = γ(k)/|D|` per subset.
    Auto,
    /// Exactly `|Γ|/|D|` (finite groups only).
    MaxFinite,
}

/// A closed-form bound to check against every subset.
#[derive(Debug, Clone)]
pub enum BoundJob {
    /// `γ(n−1) ≥ C·nᵈ`; `c = None` fits the largest exact rational C.
    Poly { d: u32, c: Option<Rational> },
    /// `γ(n−1) ≥ C·e^{b·nᵅ}`; `c = None` fits the largest certified C.
    Exp { b: f64, alpha: f64, c: Option<f64> },
}

/// A full experiment description.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub group: GroupSpec,
    pub table_radius: u32,
    pub memory_budget: u64,
    pub subsets: Vec<SubsetJob>,
    pub lambdas: LambdaMode,
    pub bounds: Vec<BoundJob>,
    pub output: Option<PathBuf>,
}

mod raw {
    use serde::Deserialize;

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Config {
        pub schema: u32,
        pub group: String,
        pub table_radius: u32,
        pub memory_budget_bytes: Option<u64>,
        pub subsets: Vec<Subset>,
        pub lambdas: Lambdas,
        #[serde(default)]
        pub bounds: Vec<Bound>,
        pub output: Option<Output>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Subset {
        pub source: String,
        pub count: Option<u32>,
        pub ball: Option<u32>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Lambdas {
        pub mode: String,
        pub values: Option<Vec<String>>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Bound {
        pub kind: String,
        pub d: Option<u32>,
        pub b: Option<f64>,
        pub alpha: Option<f64>,
        #[serde(rename = "C")]
        pub c: Option<toml::Value>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Output {
        pub path: String,
    }
}

impl ExperimentConfig {
    /// Parses and validates a TOML config.
    pub fn from_toml_str(text: &str) -> Result<Self, VerifyError> {
        let raw: raw::Config =
            toml::from_str(text).map_err(|e| VerifyError::Config(e.to_string()))?;
        if raw.schema != CONFIG_SCHEMA {
            return Err(VerifyError::Config(format!(
                "config schema {} not supported (expected {CONFIG_SCHEMA})",
                raw.schema
            )));
        }
        let group = GroupSpec::parse(&raw.group)?;
        if raw.subsets.is_empty() {
            return Err(VerifyError::Config("no [[subsets]] given".into()));
        }
        let mut subsets = Vec::new();
        for s in &raw.subsets {
            subsets.push(SubsetJob {
                source: SubsetSource::parse(&s.source)?,
                count: s.count.unwrap_or(1),
                ball: s.ball,
            });
        }
        let lambdas = match raw.lambdas.mode.as_str() {
            "list" => {
                let values = raw
                    .lambdas
                    .values
                    .as_ref()
                    .ok_or_else(|| VerifyError::Config("lambda mode list needs values".into()))?;
                let mut parsed = Vec::new();
                for v in values {
                    let r = parse_rational(v).map_err(|e| VerifyError::Config(e.to_string()))?;
                    if r <= Ratio::from_integer(1) {
                        return Err(VerifyError::Config(format!("lambda {v} must be > 1")));
                    }
                    parsed.push(r);
                }
                if parsed.is_empty() {
                    return Err(VerifyError::Config("empty lambda list".into()));
                }
                LambdaMode::List(parsed)
            }
            "auto" => LambdaMode::Auto,
            "max" => LambdaMode::MaxFinite,
            other => {
                return Err(VerifyError::Config(format!(
                    "unknown lambda mode {other:?} (expected list, auto, max)"
                )))
            }
        };
        let mut bounds = Vec::new();
        for b in &raw.bounds {
            match b.kind.as_str() {
                "poly" => {
                    let d = b
                        .d
                        .ok_or_else(|| VerifyError::Config("poly bound needs d".into()))?;
                    let c = match &b.c {
                        None => None,
                        Some(toml::Value::String(s)) => Some(
                            parse_rational(s).map_err(|e| VerifyError::Config(e.to_string()))?,
                        ),
                        Some(toml::Value::Integer(i)) => Some(Ratio::from_integer(*i)),
                        Some(_) => {
                            return Err(VerifyError::Config(
                                "poly C must be an integer or a rational string like \"53/256\""
                                    .into(),
                            ))
                        }
                    };
                    bounds.push(BoundJob::Poly { d, c });
                }
                "exp" => {
                    let b_param = b
                        .b
                        .ok_or_else(|| VerifyError::Config("exp bound needs b".into()))?;
                    let alpha = b
                        .alpha
                        .ok_or_else(|| VerifyError::Config("exp bound needs alpha".into()))?;
                    let c = match &b.c {
                        None => None,
                        Some(toml::Value::Float(f)) => Some(*f),
                        Some(toml::Value::Integer(i)) => Some(*i as f64),
                        Some(_) => {
                            return Err(VerifyError::Config("exp C must be a number".into()))
                        }
                    };
                    bounds.push(BoundJob::Exp {
                        b: b_param,
                        alpha,
                        c,
                    });
                }
                other => {
                    return Err(VerifyError::Config(format!(
                        "unknown bound kind {other:?} (expected poly, exp)"
                    )))
                }
            }
        }
        Ok(ExperimentConfig {
            group,
            table_radius: raw.table_radius,
            memory_budget: raw.memory_budget_bytes.unwrap_or(DEFAULT_MEMORY_BUDGET),
            subsets,
            lambdas,
            bounds,
            output: raw.output.map(|o| PathBuf::from(o.path)),
        })
    }

    pub fn from_toml_file(path: &Path) -> Result<Self, VerifyError> {
        Self::from_toml_str(&fs::read_to_string(path)?)
    }
}

/// Witness data condensed for the report.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessSummary {
    pub y: String,
    pub y_word: Vec<String>,
    pub y_norm: u32,
    pub exit_size: u64,
    pub stay_size: u64,
    pub max_fiber: u64,
    pub checks_pass: bool,
}

/// Truth values of the proof-chain identities for one (D, λ) pair.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityChecks {
    /// `Σ_y |I_y|` over the support, computed by enumeration.
    pub stay_sum: u64,
    pub stay_sum_expected: u64,
    pub stay_sum_pass: bool,
    /// `|E_y| ≤ ‖y‖·|∂D|`.
    pub exit_bound_pass: bool,
    /// `γ(n)·|I_y| ≤ |D|²`.
    pub gamma_stay_pass: bool,
    /// `|I_y| ≤ |D|/λ`.
    pub stay_bound_pass: bool,
    /// Interior exit-map fibers `≤ ‖y‖`.
    pub fiber_pass: bool,
    /// The full step chain, exactly.
    pub chain_pass: bool,
}

/// The φ̃ restatement of the main bound, where defined.
#[derive(Debug, Clone, Serialize)]
pub struct StrictVariant {
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

/// One (D, λ) verification record.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremRecord {
    pub schema: u32,
    pub kind: &'static str,
    pub group: String,
    pub source: String,
    pub subset_index: u32,
    pub d: String,
    pub size_d: u64,
    pub boundary: u64,
    pub ext_boundary: u64,
    pub sandwich_pass: bool,
    pub lambda: String,
    pub lambda_value: f64,
    pub n: u32,
    pub bound: f64,
    pub theorem_pass: bool,
    pub witness: WitnessSummary,
    pub identities: IdentityChecks,
    pub ext_fiber_pass: bool,
    pub strict: StrictVariant,
    pub all_pass: bool,
}

/// One closed-form bound check for a subset.
#[derive(Debug, Clone, Serialize)]
pub struct CorollaryRecord {
    pub schema: u32,
    pub kind: &'static str,
    pub group: String,
    pub source: String,
    pub subset_index: u32,
    pub size_d: u64,
    pub boundary: u64,
    pub hypothesis: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    /// Residual of the λ(v) optimality equation (exponential bounds).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_residual: Option<f64>,
    /// Gap between the two μ(v) expression routes (exponential bounds).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_cross_residual: Option<f64>,
    /// Gap to the independent numeric supremum, where defined.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_agreement: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub pass: bool,
}

/// Aggregate counts for one experiment.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub schema: u32,
    pub kind: &'static str,
    pub group: String,
    pub subsets: u64,
    pub pairs: u64,
    pub lambda_skipped: u64,
    pub theorem_violations: u64,
    pub witness_failures: u64,
    pub identity_failures: u64,
    pub sandwich_failures: u64,
    pub ext_fiber_failures: u64,
    pub strict_checked: u64,
    pub strict_skipped: u64,
    pub strict_violations: u64,
    pub corollary_checked: u64,
    pub corollary_skipped: u64,
    pub corollary_violations: u64,
    pub all_pass: bool,
}

/// Everything produced by one experiment run.
#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub config_group: String,
    pub theorem_records: Vec<TheoremRecord>,
    pub corollary_records: Vec<CorollaryRecord>,
    pub summary: Summary,
}

impl ExperimentOutcome {
    pub fn all_pass(&self) -> bool {
        self.summary.all_pass
    }
}

fn resolve_lambdas(
    mode: &LambdaMode,
    d: &FiniteSubset,
    table: &GrowthTable,
    skipped: &mut u64,
) -> Result<Vec<Rational>, VerifyError> {
    match mode {
        LambdaMode::List(values) => {
            let mut out = Vec::new();
            for &lambda in values {
                if crate::boundary::check_lambda_range(lambda, d.len(), d.group()).is_ok() {
                    out.push(lambda);
                } else {
                    *skipped += 1;
                }
            }
            Ok(out)
        }
        LambdaMode::Auto => {
            let best = crate::bounds::best_lambda_discrete(d.len(), table, None)?;
            Ok(vec![best.lambda])
        }
        LambdaMode::MaxFinite => {
            let order = d.group().order().ok_or_else(|| {
                VerifyError::Config("lambda mode max requires a finite group".into())
            })?;
            let order = i64::try_from(order)
                .map_err(|_| VerifyError::Config("group order too large".into()))?;
            Ok(vec![Ratio::new(order, d.len() as i64)])
        }
    }
}

/// The exact truth of `|∂D| ≥ (1 − 1/λ)·|D|/n`, by cross-multiplication.
fn theorem_holds_exact(boundary: u64, size: u64, lambda: Rational, n: u32) -> bool {
    let num = *lambda.numer() as i128;
    let den = *lambda.denom() as i128;
    (boundary as i128) * num * (n as i128) >= (num - den) * (size as i128)
}

fn check_hypothesis_poly(table: &GrowthTable, c: Rational, d: u32) -> Result<String, VerifyError> {
    let hypothesis = format!("gamma(n-1) >= {}*n^{}", render_rational(c), d);
    for n in 1..=(table.radius() as u64 + 1) {
        let gamma = table.gamma(n as u32 - 1)?;
        let lhs = (gamma as i128) * (*c.denom() as i128);
        let rhs = (*c.numer() as i128) * (n as i128).pow(d);
        if lhs < rhs {
            return Err(VerifyError::HypothesisViolated {
                hypothesis,
                n: n as u32,
                gamma,
                required: format!("{}*{n}^{d}", render_rational(c)),
            });
        }
    }
    Ok(hypothesis)
}

fn check_hypothesis_exp(
    table: &GrowthTable,
    c: f64,
    b: f64,
    alpha: f64,
) -> Result<String, VerifyError> {
    let hypothesis = format!("gamma(n-1) >= {c}*exp({b}*n^{alpha})");
    for n in 1..=(table.radius() as u64 + 1) {
        let gamma = table.gamma(n as u32 - 1)?;
        let required = c * (b * (n as f64).powf(alpha)).exp();
        if (gamma as f64) < required {
            return Err(VerifyError::HypothesisViolated {
                hypothesis,
                n: n as u32,
                gamma,
                required: format!("{required}"),
            });
        }
    }
    Ok(hypothesis)
}

enum ResolvedBound {
    Poly(PolyGrowth, String),
    Exp(StretchedExpGrowth, String),
}

/// Runs one experiment. `cache_dir` enables on-disk growth-table reuse.
pub fn run_experiment(
    config: &ExperimentConfig,
    cache_dir: Option<&Path>,
) -> Result<ExperimentOutcome, VerifyError> {
    let table = match cache_dir {
        Some(dir) => cache::load_or_build(
            &config.group,
            config.table_radius,
            dir,
            config.memory_budget,
        )?,
        None => crate::growth::enumerate_ball_with_budget(
            &config.group,
            config.table_radius,
            config.memory_budget,
        )?,
    };
    let gen_count = config.group.generating_set().len() as u64;
    let group_name = config.group.render();

    let mut summary = Summary {
        schema: REPORT_SCHEMA,
        kind: "summary",
        group: group_name.clone(),
        subsets: 0,
        pairs: 0,
        lambda_skipped: 0,
        theorem_violations: 0,
        witness_failures: 0,
        identity_failures: 0,
        sandwich_failures: 0,
        ext_fiber_failures: 0,
        strict_checked: 0,
        strict_skipped: 0,
        strict_violations: 0,
        corollary_checked: 0,
        corollary_skipped: 0,
        corollary_violations: 0,
        all_pass: true,
    };
    let mut theorem_records = Vec::new();
    let mut corollary_records = Vec::new();

    // Resolve bound jobs up front: fit constants and refuse to run on a
    // violated hypothesis.
    let mut resolved_bounds = Vec::new();
    for bound_job in &config.bounds {
        match bound_job {
            BoundJob::Poly { d, c } => {
                let c = match c {
                    Some(c) => *c,
                    None => fit_poly_constant(&table, *d)?,
                };
                let hypothesis = check_hypothesis_poly(&table, c, *d)?;
                let poly = PolyGrowth::new(
                    c.to_f64()
                        .ok_or_else(|| VerifyError::Config("fitted C not representable".into()))?,
                    *d as f64,
                )?;
                resolved_bounds.push(ResolvedBound::Poly(poly, hypothesis));
            }
            BoundJob::Exp { b, alpha, c } => {
                let c = match c {
                    Some(c) => *c,
                    None => fit_stretched_exp_constant(&table, *b, *alpha)?,
                };
                let hypothesis = check_hypothesis_exp(&table, c, *b, *alpha)?;
                let exp = StretchedExpGrowth::new(c, *b, *alpha)?;
                resolved_bounds.push(ResolvedBound::Exp(exp, hypothesis));
            }
        }
    }

    for subset_job in &config.subsets {
        let subsets = subset_job
            .source
            .materialize(&table, subset_job.ball, subset_job.count)?;
        let source_name = subset_job.source.render();
        for (index, d) in subsets.iter().enumerate() {
            summary.subsets += 1;
            let boundaries = BoundaryReport::compute(d)?;
            let sandwich_pass = boundaries.sandwich_holds(gen_count);
            if !sandwich_pass {
                summary.sandwich_failures += 1;
                summary.all_pass = false;
            }
            let conv = convolution_identity(d)?;
            let boundary_size = boundaries.interior.len();
            let ext_size = boundaries.exterior.len();

            let lambdas = resolve_lambdas(&config.lambdas, d, &table, &mut summary.lambda_skipped)?;
            for lambda in lambdas {
                summary.pairs += 1;
                let witness: WitnessReport = crate::boundary::find_witness(d, lambda, &table)?;
                let n = witness.n;
                let theorem_pass = theorem_holds_exact(boundary_size, d.len(), lambda, n);
                if !theorem_pass {
                    summary.theorem_violations += 1;
                }
                if !witness.checks.all() {
                    summary.witness_failures += 1;
                }

                let ext_map = exit_map(&table, d, &witness.y_word, ExitVariant::Exterior)?;
                let ext_fiber_pass = ext_map.max_fiber() <= witness.y_norm as u64;
                if !ext_fiber_pass {
                    summary.ext_fiber_failures += 1;
                }

                let num = *lambda.numer() as i128;
                let den = *lambda.denom() as i128;
                let size = d.len() as i128;
                let stay = witness.stay_set.len() as i128;
                let exit = witness.exit_set.len() as i128;
                let chain_pass = (num - den) * size <= num * (size - stay)
                    && size - stay == exit
                    && exit as u128 <= (witness.y_norm as u128) * (boundary_size as u128)
                    && witness.y_norm <= n;
                let identities = IdentityChecks {
                    stay_sum: conv.sum as u64,
                    stay_sum_expected: (d.len() * d.len()),
                    stay_sum_pass: conv.pass(),
                    exit_bound_pass: witness.checks.exit_bound,
                    gamma_stay_pass: witness.checks.gamma_stay_bound,
                    stay_bound_pass: witness.checks.stay_bound,
                    fiber_pass: witness.checks.fiber_bound,
                    chain_pass,
                };
                if !(identities.stay_sum_pass && chain_pass) {
                    summary.identity_failures += 1;
                }

                let strict =
                    match table.phi_strict(Threshold::from_rational_times(lambda, d.len())) {
                        Ok(n_strict) => {
                            summary.strict_checked += 1;
                            let pass =
                                theorem_holds_exact(boundary_size, d.len(), lambda, n_strict);
                            if !pass {
                                summary.strict_violations += 1;
                            }
                            let lam = lambda.to_f64().unwrap();
                            StrictVariant {
                                applicable: true,
                                reason: None,
                                n: Some(n_strict),
                                bound: Some((1.0 - 1.0 / lam) * d.len() as f64 / n_strict as f64),
                                pass: Some(pass),
                            }
                        }
                        Err(e @ GrowthError::UnattainableForFiniteGroup { .. })
                        | Err(e @ GrowthError::TableTooShallow { .. }) => {
                            summary.strict_skipped += 1;
                            StrictVariant {
                                applicable: false,
                                reason: Some(e.to_string()),
                                n: None,
                                bound: None,
                                pass: None,
                            }
                        }
                        Err(e) => return Err(e.into()),
                    };

                let lam = lambda.to_f64().unwrap();
                let bound = (1.0 - 1.0 / lam) * d.len() as f64 / n as f64;
                let all_pass = theorem_pass
                    && witness.checks.all()
                    && identities.stay_sum_pass
                    && chain_pass
                    && sandwich_pass
                    && ext_fiber_pass
                    && strict.pass.unwrap_or(true);
                summary.all_pass &= all_pass;

                theorem_records.push(TheoremRecord {
                    schema: REPORT_SCHEMA,
                    kind: "theorem1",
                    group: group_name.clone(),
                    source: source_name.clone(),
                    subset_index: index as u32,
                    d: d.render(),
                    size_d: d.len(),
                    boundary: boundary_size,
                    ext_boundary: ext_size,
                    sandwich_pass,
                    lambda: render_rational(lambda),
                    lambda_value: lam,
                    n,
                    bound,
                    theorem_pass,
                    witness: WitnessSummary {
                        y: d.group().element_to_string(&witness.y),
                        y_word: witness.y_word.clone(),
                        y_norm: witness.y_norm,
                        exit_size: witness.exit_set.len() as u64,
                        stay_size: witness.stay_set.len() as u64,
                        max_fiber: witness.exit_map.max_fiber(),
                        checks_pass: witness.checks.all(),
                    },
                    identities,
                    ext_fiber_pass,
                    strict,
                    all_pass,
                });
            }

            for resolved in &resolved_bounds {
                let v = d.len() as f64;
                let (eval, skipped, hypothesis) = match resolved {
                    ResolvedBound::Poly(poly, hyp) => (Some(closed_form_poly(poly, v)?), None, hyp),
                    ResolvedBound::Exp(exp, hyp) => {
                        let threshold = exp.lambda_domain_threshold().max(1.0);
                        if v <= threshold {
                            let reason = format!(
                                "|D| = {v} at or below the lambda(v) domain threshold {threshold}"
                            );
                            (None, Some(reason), hyp)
                        } else {
                            (Some(closed_form_exp(exp, v)?), None, hyp)
                        }
                    }
                };
                let record_bound = eval.as_ref().map(|e| e.value);
                let pass = match record_bound {
                    Some(f) => {
                        summary.corollary_checked += 1;
                        let ok = boundary_size as f64 >= f;
                        if !ok {
                            summary.corollary_violations += 1;
                            summary.all_pass = false;
                        }
                        ok
                    }
                    None => {
                        summary.corollary_skipped += 1;
                        true
                    }
                };
                corollary_records.push(CorollaryRecord {
                    schema: REPORT_SCHEMA,
                    kind: "corollary",
                    group: group_name.clone(),
                    source: source_name.clone(),
                    subset_index: index as u32,
                    size_d: d.len(),
                    boundary: boundary_size,
                    hypothesis: hypothesis.to_string(),
                    bound: record_bound,
                    lambda_residual: eval.as_ref().and_then(|e| e.residuals.lambda_equation),
                    mu_cross_residual: eval.as_ref().and_then(|e| e.residuals.mu_cross_check),
                    numeric_agreement: eval.as_ref().and_then(|e| e.residuals.numeric_agreement),
                    skipped,
                    pass,
                });
            }
        }
    }

    Ok(ExperimentOutcome {
        config_group: group_name,
        theorem_records,
        corollary_records,
        summary,
    })
}

/// Runs the main-inequality checks of an experiment and returns the per-pair
/// records (theorem bound, witness summary, strict restatement, boundary
/// sandwich); any `bounds` entries in the config are ignored here.
pub fn verify_theorem1(
    config: &ExperimentConfig,
    cache_dir: Option<&Path>,
) -> Result<Vec<TheoremRecord>, VerifyError> {
    let mut config = config.clone();
    config.bounds.clear();
    Ok(run_experiment(&config, cache_dir)?.theorem_records)
}

/// Checks one closed-form bound `|∂D| ≥ F(|D|)` across the experiment's
/// subsets. The growth hypothesis is verified against the whole table first
/// and a violation refuses to run.
pub fn verify_corollary(
    config: &ExperimentConfig,
    bound: BoundJob,
    cache_dir: Option<&Path>,
) -> Result<Vec<CorollaryRecord>, VerifyError> {
    let mut config = config.clone();
    config.bounds = vec![bound];
    Ok(run_experiment(&config, cache_dir)?.corollary_records)
}

/// Extracts the per-pair truth values of the witness-chain identities
/// (exit-set bound, convolution identity, stay bound, fiber bounds, full
/// chain) from an experiment run.
pub fn verify_proof_identities(
    config: &ExperimentConfig,
    cache_dir: Option<&Path>,
) -> Result<Vec<IdentityChecks>, VerifyError> {
    let mut config = config.clone();
    config.bounds.clear();
    Ok(run_experiment(&config, cache_dir)?
        .theorem_records
        .into_iter()
        .map(|r| r.identities)
        .collect())
}

/// Renders outcomes as (JSON-lines report, CSV summary).
pub fn render_report(outcomes: &[ExperimentOutcome]) -> (String, String) {
    let mut jsonl = String::new();
    let mut csv = String::from("group,size_d,boundary,ext_boundary,lambda,bound,pass\n");
    for outcome in outcomes {
        for r in &outcome.theorem_records {
            jsonl.push_str(&serde_json::to_string(r).expect("record serializes"));
            jsonl.push('\n');
            csv.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.group, r.size_d, r.boundary, r.ext_boundary, r.lambda, r.bound, r.all_pass
            ));
        }
        for r in &outcome.corollary_records {
            jsonl.push_str(&serde_json::to_string(r).expect("record serializes"));
            jsonl.push('\n');
            let bound = r
                .bound
                .map(|b| b.to_string())
                .unwrap_or_else(|| "skipped".into());
            csv.push_str(&format!(
                "{},{},{},,corollary,{},{}\n",
                r.group, r.size_d, r.boundary, bound, r.pass
            ));
        }
        jsonl.push_str(&serde_json::to_string(&outcome.summary).expect("summary serializes"));
        jsonl.push('\n');
    }
    (jsonl, csv)
}

/// Writes `<base>.jsonl` and `<base>.csv`.
pub fn write_report(base: &Path, outcomes: &[ExperimentOutcome]) -> Result<(), VerifyError> {
    let (jsonl, csv) = render_report(outcomes);
    if let Some(parent) = base.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(base.with_extension("jsonl"), jsonl)?;
    fs::write(base.with_extension("csv"), csv)?;
    Ok(())
}

fn cfg(
    group: &str,
    radius: u32,
    subsets: Vec<SubsetJob>,
    lambdas: LambdaMode,
    bounds: Vec<BoundJob>,
) -> ExperimentConfig {
    ExperimentConfig {
        group: GroupSpec::parse(group).expect("valid builtin spec"),
        table_radius: radius,
        memory_budget: DEFAULT_MEMORY_BUDGET,
        subsets,
        lambdas,
        bounds,
        output: None,
    }
}

fn job(source: &str, count: u32, ball: Option<u32>) -> SubsetJob {
    SubsetJob {
        source: SubsetSource::parse(source).expect("valid builtin source"),
        count,
        ball,
    }
}

fn lambda_list(values: &[(i64, i64)]) -> LambdaMode {
    LambdaMode::List(values.iter().map(|&(n, d)| Ratio::new(n, d)).collect())
}

/// The built-in verification suite: structured and random subsets across the
/// infinite families, every proper nonempty subset of small finite groups,
/// and fitted closed-form bounds — more than 700 (D, λ) pairs in total.
pub fn default_suite() -> Vec<ExperimentConfig> {
    vec![
        cfg(
            "Z:2",
            8,
            vec![
                job("ball:1", 1, None),
                job("ball:2", 1, None),
                job("random:12:401", 20, Some(3)),
            ],
            lambda_list(&[(3, 2), (2, 1), (3, 1)]),
            vec![BoundJob::Poly { d: 2, c: None }],
        ),
        cfg(
            "Z:1",
            40,
            vec![job("ball:3", 1, None), job("random:8:402", 15, Some(12))],
            lambda_list(&[(2, 1), (5, 1)]),
            vec![BoundJob::Poly {
                d: 1,
                c: Some(Ratio::from_integer(1)),
            }],
        ),
        cfg(
            "free:2",
            6,
            vec![
                job("ball:1", 1, None),
                job("{e}", 1, None),
                job("random:15:403", 20, Some(4)),
            ],
            lambda_list(&[(3, 2), (2, 1), (3, 1)]),
            vec![BoundJob::Exp {
                b: 1.0986122886681098, // ln 3
                alpha: 1.0,
                c: None,
            }],
        ),
        cfg(
            "heisenberg",
            7,
            vec![job("ball:1", 1, None), job("random:15:7", 20, Some(3))],
            lambda_list(&[(2, 1), (3, 1)]),
            vec![BoundJob::Poly { d: 4, c: None }],
        ),
        cfg(
            "cyclic:8",
            5,
            vec![job("exhaustive", 1, None)],
            LambdaMode::MaxFinite,
            vec![],
        ),
        cfg(
            "cyclic:5",
            4,
            vec![job("exhaustive", 1, None)],
            LambdaMode::MaxFinite,
            vec![],
        ),
        cfg(
            "dihedral:4",
            5,
            vec![job("exhaustive", 1, None)],
            LambdaMode::MaxFinite,
            vec![],
        ),
        cfg(
            "dihedral:3",
            4,
            vec![job("exhaustive", 1, None)],
            LambdaMode::MaxFinite,
            vec![],
        ),
        cfg(
            "cyclic:6",
            3,
            vec![job("random:3:406", 5, Some(3))],
            lambda_list(&[(2, 1)]),
            vec![],
        ),
    ]
}

/// Runs a list of experiments in order.
pub fn run_suite(
    configs: &[ExperimentConfig],
    cache_dir: Option<&Path>,
) -> Result<Vec<ExperimentOutcome>, VerifyError> {
    configs
        .iter()
        .map(|c| run_experiment(c, cache_dir))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
schema = 1
group = "Z:2"
table_radius = 6

[[subsets]]
source = "ball:1"

[[subsets]]
source = "random:6:42"
count = 3
ball = 2

[lambdas]
mode = "list"
values = ["2", "3/2"]

[[bounds]]
kind = "poly"
d = 2
"#;

    #[test]
    fn parses_sample_config() {
        let cfg = ExperimentConfig::from_toml_str(SAMPLE).unwrap();
        assert_eq!(cfg.group.render(), "Z:2");
        assert_eq!(cfg.table_radius, 6);
        assert_eq!(cfg.subsets.len(), 2);
        assert_eq!(cfg.subsets[1].count, 3);
        assert!(matches!(cfg.lambdas, LambdaMode::List(ref v) if v.len() == 2));
        assert_eq!(cfg.bounds.len(), 1);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(ExperimentConfig::from_toml_str("schema = 2").is_err());
        let bad_lambda = SAMPLE.replace("\"3/2\"", "\"1\"");
        assert!(ExperimentConfig::from_toml_str(&bad_lambda).is_err());
        let bad_mode = SAMPLE.replace("mode = \"list\"", "mode = \"magic\"");
        assert!(ExperimentConfig::from_toml_str(&bad_mode).is_err());
    }

    #[test]
    fn sample_config_runs_clean() {
        let cfg = ExperimentConfig::from_toml_str(SAMPLE).unwrap();
        let outcome = run_experiment(&cfg, None).unwrap();
        assert!(outcome.all_pass());
        assert_eq!(outcome.summary.subsets, 4);
        assert_eq!(outcome.summary.pairs, 8);
        assert_eq!(outcome.corollary_records.len(), 4);
        // spec instance: D = B(1), lambda = 2 gives bound 1.25 <= |∂D| = 4
        let r = &outcome.theorem_records[0];
        assert_eq!(r.size_d, 5);
        assert_eq!(r.boundary, 4);
        assert_eq!(r.bound, 1.25);
        assert!(r.theorem_pass);
    }

    #[test]
    fn exhaustive_cyclic8_all_pass() {
        let cfg = super::cfg(
            "cyclic:8",
            5,
            vec![super::job("exhaustive", 1, None)],
            LambdaMode::MaxFinite,
            vec![],
        );
        let outcome = run_experiment(&cfg, None).unwrap();
        assert_eq!(outcome.summary.subsets, 254);
        assert_eq!(outcome.summary.pairs, 254);
        assert!(outcome.all_pass());
        assert_eq!(outcome.summary.theorem_violations, 0);
    }

    #[test]
    fn hypothesis_violation_refuses_to_run() {
        let cfg = ExperimentConfig {
            bounds: vec![BoundJob::Poly {
                d: 2,
                c: Some(Ratio::from_integer(10)),
            }],
            ..ExperimentConfig::from_toml_str(SAMPLE).unwrap()
        };
        let err = run_experiment(&cfg, None).unwrap_err();
        match err {
            VerifyError::HypothesisViolated { n, gamma, .. } => {
                assert_eq!(n, 1);
                assert_eq!(gamma, 1);
            }
            other => panic!("expected HypothesisViolated, got {other}"),
        }
    }

    #[test]
    fn singleton_exp_bound_is_skipped_with_reason() {
        let cfg = super::cfg(
            "free:2",
            4,
            vec![super::job("{e}", 1, None)],
            lambda_list(&[(2, 1)]),
            vec![BoundJob::Exp {
                b: 1.0986122886681098,
                alpha: 1.0,
                c: None,
            }],
        );
        let outcome = run_experiment(&cfg, None).unwrap();
        let r = &outcome.corollary_records[0];
        assert!(r.skipped.is_some());
        assert!(r.pass);
        assert_eq!(outcome.summary.corollary_skipped, 1);
    }

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let cfg = ExperimentConfig::from_toml_str(SAMPLE).unwrap();
        let a = render_report(&[run_experiment(&cfg, None).unwrap()]);
        let b = render_report(&[run_experiment(&cfg, None).unwrap()]);
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
        assert!(a.0.lines().count() > 8);
        // every line parses as JSON
        for line in a.0.lines() {
            serde_json::from_str::<serde_json::Value>(line).unwrap();
        }
        assert!(a
            .1
            .starts_with("group,size_d,boundary,ext_boundary,lambda,bound,pass\n"));
    }

    #[test]
    fn empty_explicit_subset_is_an_error_not_a_panic() {
        let cfg = super::cfg(
            "cyclic:6",
            3,
            vec![super::job("{}", 1, None)],
            lambda_list(&[(2, 1)]),
            vec![],
        );
        assert!(matches!(
            run_experiment(&cfg, None),
            Err(VerifyError::Boundary(BoundaryError::EmptySubset))
        ));
    }

    #[test]
    fn operation_wrappers_project_the_run() {
        let cfg = ExperimentConfig::from_toml_str(SAMPLE).unwrap();
        let theorem = verify_theorem1(&cfg, None).unwrap();
        assert_eq!(theorem.len(), 8);
        assert!(theorem.iter().all(|r| r.all_pass));
        let identities = verify_proof_identities(&cfg, None).unwrap();
        assert_eq!(identities.len(), 8);
        assert!(identities.iter().all(|i| i.chain_pass && i.stay_sum_pass));
        let corollary =
            verify_corollary(&cfg, BoundJob::Poly { d: 2, c: None }, None).unwrap();
        assert_eq!(corollary.len(), 4);
        assert!(corollary.iter().all(|r| r.pass));
    }

    #[test]
    fn strict_variant_skipped_at_group_order() {
        // cyclic:6 with |D| = 3 and lambda = 2: lambda|D| = |Γ| so the strict
        // reverse growth is undefined and the record says so.
        let cfg = super::cfg(
            "cyclic:6",
            4,
            vec![super::job("{0,1,2}", 1, None)],
            lambda_list(&[(2, 1)]),
            vec![],
        );
        let outcome = run_experiment(&cfg, None).unwrap();
        let r = &outcome.theorem_records[0];
        assert!(!r.strict.applicable);
        assert!(r.strict.reason.as_ref().unwrap().contains("finite"));
        assert!(outcome.all_pass());
        assert_eq!(outcome.summary.strict_skipped, 1);
    }
}
