//! Command-line front end.
//!
//! Every library operation is reachable through a subcommand; see the book's
//! CLI chapter for a worked tour. Exit codes: 0 success, 1 a verification
//! check failed (an inequality did not hold), 2 usage, domain or resource
//! errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::boundary::{
    exit_stay_sets, find_witness, BoundaryReport, FiniteSubset, SubsetSource,
};
use crate::bounds::{
    best_lambda_discrete, closed_form_exp, closed_form_poly, numeric_f_sup, theorem1_bound,
    GrowthLowerBound, PolyGrowth, StretchedExpGrowth,
};
use crate::cache;
use crate::group::GroupSpec;
use crate::growth::{check_lemma_properties, enumerate_ball_with_budget, GrowthTable,
    DEFAULT_MEMORY_BUDGET};
use crate::lambert::lambert_w_minus1;
use crate::rat::{parse_rational, Threshold};
use crate::verify::{default_suite, run_suite, write_report, ExperimentConfig};

#[derive(Parser)]
#[command(
    name = "groupgrowth",
    version,
    about = "Growth functions, boundaries and isoperimetric bounds for finitely generated groups",
    arg_required_else_help = true
)]
struct Cli {
    /// Significant digits for real-valued output.
    #[arg(long, global = true, default_value_t = 15)]
    digits: u8,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args)]
struct TableOpts {
    /// Group spec: Z:<d> | free:<k> | heisenberg | cyclic:<n> | dihedral:<n> | sym:<n>.
    #[arg(long)]
    group: String,
    /// Ball radius to enumerate.
    #[arg(long)]
    radius: u32,
    /// Growth-table cache directory (default: $GROUPGROWTH_CACHE_DIR, else
    /// the user cache dir).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Bypass the on-disk growth-table cache.
    #[arg(long)]
    no_cache: bool,
    /// Memory budget for enumeration, in bytes (default 2 GiB).
    #[arg(long)]
    budget_bytes: Option<u64>,
}

impl TableOpts {
    fn load(&self) -> Result<GrowthTable, CliError> {
        let group = GroupSpec::parse(&self.group)?;
        let budget = self.budget_bytes.unwrap_or(DEFAULT_MEMORY_BUDGET);
        if self.no_cache {
            return Ok(enumerate_ball_with_budget(&group, self.radius, budget)?);
        }
        let dir = self
            .cache_dir
            .clone()
            .unwrap_or_else(cache::default_cache_dir);
        Ok(cache::load_or_build(&group, self.radius, &dir, budget)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a ball and print the growth table gamma(0..=radius).
    Growth {
        #[command(flatten)]
        table: TableOpts,
    },
    /// Reverse growth phi(t) and its strict variant.
    Phi {
        #[command(flatten)]
        table: TableOpts,
        /// Threshold t, as an integer, decimal or fraction (exact arithmetic).
        #[arg(long)]
        t: String,
    },
    /// Interior and exterior boundary of a subset.
    Boundary {
        #[command(flatten)]
        table: TableOpts,
        /// Subset literal: {elements...} | ball:<r> | random:<size>:<seed>.
        #[arg(long)]
        subset: String,
        /// Ball radius random subsets are drawn from (default: table radius).
        #[arg(long)]
        sample_ball: Option<u32>,
    },
    /// Minimal-stay-set witness for a (subset, lambda) pair.
    Witness {
        #[command(flatten)]
        table: TableOpts,
        #[arg(long)]
        subset: String,
        #[arg(long)]
        sample_ball: Option<u32>,
        /// Scale factor lambda > 1, e.g. "2", "3/2" or "1.5" (exact).
        #[arg(long)]
        lambda: String,
    },
    /// Isoperimetric lower bounds.
    Bound {
        #[command(subcommand)]
        which: BoundCommand,
    },
    /// Lambert W on the -1 branch; negative arguments go after `--`.
    Lambert {
        #[arg(allow_hyphen_values = true, required = true)]
        x: Vec<f64>,
    },
    /// The mu(v) factor of the stretched-exponential bound.
    Mu {
        #[arg(long = "C", default_value_t = 1.0)]
        c: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(allow_hyphen_values = true, required = true)]
        v: Vec<f64>,
    },
    /// Run an experiment config (or the built-in suite) and write reports.
    Verify {
        /// Path to a TOML experiment config.
        #[arg(long, conflicts_with = "suite")]
        config: Option<PathBuf>,
        /// Name of a built-in suite ("default").
        #[arg(long)]
        suite: Option<String>,
        /// Report base path; writes <base>.jsonl and <base>.csv.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Check the reverse-growth function properties on a table.
    LemmaCheck {
        #[command(flatten)]
        table: TableOpts,
    },
}

#[derive(Subcommand)]
enum BoundCommand {
    /// (1 - 1/lambda) |D| / phi(lambda |D|) from an enumerated table.
    Theorem1 {
        #[command(flatten)]
        table: TableOpts,
        /// Subset size |D|.
        #[arg(long)]
        size: u64,
        /// Scale factor; omit with --best to optimize over lambda.
        #[arg(long)]
        lambda: Option<String>,
        /// Optimize the bound over the discrete candidates gamma(k)/|D|.
        #[arg(long)]
        best: bool,
    },
    /// Closed form for polynomial growth hypotheses gamma(n-1) >= C n^d.
    Poly {
        #[arg(long = "C")]
        c: f64,
        #[arg(long)]
        d: f64,
        #[arg(long)]
        v: f64,
        /// Also run the independent numeric supremum and report agreement.
        #[arg(long)]
        numeric: bool,
    },
    /// Closed form for stretched-exponential hypotheses
    /// gamma(n-1) >= C exp(b n^alpha).
    Exp {
        #[arg(long = "C")]
        c: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        v: f64,
        #[arg(long)]
        numeric: bool,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
    #[error(transparent)]
    Growth(#[from] crate::growth::GrowthError),
    #[error(transparent)]
    Boundary(#[from] crate::boundary::BoundaryError),
    #[error(transparent)]
    Bounds(#[from] crate::bounds::BoundsError),
    #[error(transparent)]
    Verify(#[from] crate::verify::VerifyError),
    #[error(transparent)]
    Lambert(#[from] crate::lambert::LambertDomainError),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Formats a real with a fixed number of significant digits.
fn sig(x: f64, digits: u8) -> String {
    format!("{:.*e}", digits.max(1) as usize - 1, x)
}

/// Runs the CLI on explicit arguments, writing to the given sinks.
/// Returns the process exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    2
                }
            };
        }
    };
    match dispatch(&cli, stdout) {
        Ok(code) => code,
        // a closed pipe on stdout is not an error worth reporting
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let digits = cli.digits;
    let format = cli.format;
    match &cli.command {
        Command::Growth { table } => {
            let t = table.load()?;
            match format {
                Format::Json => {
                    let value = serde_json::json!({
                        "group": t.group().render(),
                        "radius": t.radius(),
                        "gamma": t.gammas(),
                        "spheres": t.gammas().iter().scan(0u64, |prev, &g| {
                            let s = g - *prev;
                            *prev = g;
                            Some(s)
                        }).collect::<Vec<_>>(),
                        "saturated_at": t.saturated_at(),
                    });
                    writeln!(out, "{value}")?;
                }
                Format::Plain | Format::Csv => {
                    writeln!(out, "n,gamma")?;
                    for (n, g) in t.gammas().iter().enumerate() {
                        writeln!(out, "{n},{g}")?;
                    }
                }
            }
            Ok(0)
        }
        Command::Phi { table, t } => {
            let threshold = parse_rational(t)
                .map(Threshold::from_rational)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let tab = table.load()?;
            let phi = tab.phi(threshold)?;
            let strict = tab.phi_strict(threshold);
            match format {
                Format::Json => {
                    let value = serde_json::json!({
                        "group": tab.group().render(),
                        "t": t,
                        "phi": phi,
                        "phi_strict": strict.as_ref().ok(),
                        "phi_strict_error": strict.as_ref().err().map(|e| e.to_string()),
                    });
                    writeln!(out, "{value}")?;
                }
                _ => {
                    writeln!(out, "t {t}")?;
                    writeln!(out, "phi {phi}")?;
                    match strict {
                        Ok(s) => writeln!(out, "phi_strict {s}")?,
                        Err(e) => writeln!(out, "phi_strict undefined ({e})")?,
                    }
                }
            }
            Ok(0)
        }
        Command::Boundary {
            table,
            subset,
            sample_ball,
        } => {
            let tab = table.load()?;
            let d = materialize_one(&tab, subset, *sample_ball)?;
            let report = BoundaryReport::compute(&d)?;
            let s = tab.group().generating_set().len() as u64;
            let sandwich = report.sandwich_holds(s);
            match format {
                Format::Json => {
                    let value = serde_json::json!({
                        "group": tab.group().render(),
                        "subset": d.render(),
                        "size": d.len(),
                        "interior_boundary": report.interior.render(),
                        "interior_size": report.interior.len(),
                        "exterior_boundary": report.exterior.render(),
                        "exterior_size": report.exterior.len(),
                        "generators": s,
                        "sandwich_pass": sandwich,
                    });
                    writeln!(out, "{value}")?;
                }
                _ => {
                    writeln!(out, "size {}", d.len())?;
                    writeln!(out, "interior {} {}", report.interior.len(), report.interior.render())?;
                    writeln!(out, "exterior {} {}", report.exterior.len(), report.exterior.render())?;
                    writeln!(out, "sandwich_pass {sandwich}")?;
                }
            }
            Ok(if sandwich { 0 } else { 1 })
        }
        Command::Witness {
            table,
            subset,
            sample_ball,
            lambda,
        } => {
            let tab = table.load()?;
            let d = materialize_one(&tab, subset, *sample_ball)?;
            let lambda = parse_rational(lambda).map_err(|e| CliError::Usage(e.to_string()))?;
            let w = find_witness(&d, lambda, &tab)?;
            let group = tab.group();
            // cross-check partition against the direct computation
            let (exit, stay) = exit_stay_sets(&d, &w.y)?;
            debug_assert_eq!(exit, w.exit_set);
            debug_assert_eq!(stay, w.stay_set);
            let pass = w.checks.all();
            let checks_json = serde_json::json!({
                "partition": w.checks.partition,
                "stay_bound": w.checks.stay_bound,
                "gamma_stay_bound": w.checks.gamma_stay_bound,
                "exit_bound": w.checks.exit_bound,
                "image_in_boundary": w.checks.image_in_boundary,
                "fiber_bound": w.checks.fiber_bound,
            });
            match format {
                Format::Json => {
                    let value = serde_json::json!({
                        "group": group.render(),
                        "subset": d.render(),
                        "size": w.subset_size,
                        "lambda": crate::rat::render_rational(w.lambda),
                        "n": w.n,
                        "gamma_n": w.gamma_n,
                        "y": group.element_to_string(&w.y),
                        "y_word": w.y_word,
                        "y_norm": w.y_norm,
                        "exit_size": w.exit_set.len(),
                        "stay_size": w.stay_set.len(),
                        "boundary_size": w.boundary_size,
                        "max_fiber": w.exit_map.max_fiber(),
                        "exit_map": w.exit_map.assignments.iter().map(|(x, z)| {
                            [group.element_to_string(x), group.element_to_string(z)]
                        }).collect::<Vec<_>>(),
                        "checks": checks_json,
                        "pass": pass,
                    });
                    writeln!(out, "{value}")?;
                }
                _ => {
                    writeln!(out, "size {}", w.subset_size)?;
                    writeln!(out, "n {}", w.n)?;
                    writeln!(out, "y {} norm {}", group.element_to_string(&w.y), w.y_norm)?;
                    writeln!(out, "y_word {}", w.y_word.join(" "))?;
                    writeln!(out, "exit {} stay {}", w.exit_set.len(), w.stay_set.len())?;
                    writeln!(out, "boundary {}", w.boundary_size)?;
                    writeln!(out, "max_fiber {}", w.exit_map.max_fiber())?;
                    writeln!(out, "checks_pass {pass}")?;
                }
            }
            Ok(if pass { 0 } else { 1 })
        }
        Command::Bound { which } => run_bound(which, format, digits, out),
        Command::Lambert { x } => {
            for &xi in x {
                let w = lambert_w_minus1(xi)?;
                match format {
                    Format::Json => {
                        writeln!(out, "{}", serde_json::json!({ "x": xi, "w": w }))?
                    }
                    _ => writeln!(out, "{}", sig(w, digits))?,
                }
            }
            Ok(0)
        }
        Command::Mu { c, alpha, v } => {
            let spec = StretchedExpGrowth::new(*c, 1.0, *alpha)?;
            for &vi in v {
                let mu = crate::bounds::mu_of_v(&spec, vi)?;
                match format {
                    Format::Json => writeln!(
                        out,
                        "{}",
                        serde_json::json!({
                            "v": vi,
                            "lambda": mu.lambda,
                            "mu": mu.mu,
                            "cross_residual": mu.cross_residual,
                        })
                    )?,
                    _ => writeln!(
                        out,
                        "v {} lambda {} mu {}",
                        sig(vi, digits),
                        sig(mu.lambda, digits),
                        sig(mu.mu, digits)
                    )?,
                }
            }
            Ok(0)
        }
        Command::Verify {
            config,
            suite,
            output,
            cache_dir,
            no_cache,
        } => {
            let configs: Vec<ExperimentConfig> = match (config, suite.as_deref()) {
                (Some(path), None) => vec![ExperimentConfig::from_toml_file(path)?],
                (None, Some("default")) => default_suite(),
                (None, Some(other)) => {
                    return Err(CliError::Usage(format!(
                        "unknown suite {other:?}; available: default"
                    )))
                }
                (None, None) => {
                    return Err(CliError::Usage(
                        "verify needs --config <path> or --suite default".into(),
                    ))
                }
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            let dir = if *no_cache {
                None
            } else {
                Some(
                    cache_dir
                        .clone()
                        .unwrap_or_else(cache::default_cache_dir),
                )
            };
            let outcomes = run_suite(&configs, dir.as_deref())?;
            let base = output
                .clone()
                .or_else(|| configs.iter().find_map(|c| c.output.clone()))
                .unwrap_or_else(|| PathBuf::from("groupgrowth-report"));
            write_report(&base, &outcomes)?;
            let all_pass = outcomes.iter().all(|o| o.all_pass());
            match format {
                Format::Json => {
                    let summaries: Vec<_> = outcomes.iter().map(|o| &o.summary).collect();
                    writeln!(out, "{}", serde_json::to_string(&summaries).unwrap())?;
                }
                _ => {
                    for o in &outcomes {
                        let s = &o.summary;
                        writeln!(
                            out,
                            "group {}: subsets {} pairs {} violations {} all_pass {}",
                            s.group,
                            s.subsets,
                            s.pairs,
                            s.theorem_violations
                                + s.witness_failures
                                + s.identity_failures
                                + s.sandwich_failures
                                + s.ext_fiber_failures
                                + s.strict_violations
                                + s.corollary_violations,
                            s.all_pass
                        )?;
                    }
                    writeln!(
                        out,
                        "report {} / {}",
                        base.with_extension("jsonl").display(),
                        base.with_extension("csv").display()
                    )?;
                    writeln!(out, "all_pass {all_pass}")?;
                }
            }
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::LemmaCheck { table } => {
            let tab = table.load()?;
            let report = check_lemma_properties(&tab);
            match format {
                Format::Json => {
                    let clauses: Vec<_> = report
                        .clauses()
                        .iter()
                        .map(|c| {
                            serde_json::json!({
                                "name": c.name,
                                "pass": c.pass,
                                "checked": c.checked,
                                "counterexample": c.counterexample,
                            })
                        })
                        .collect();
                    writeln!(
                        out,
                        "{}",
                        serde_json::json!({
                            "group": tab.group().render(),
                            "radius": tab.radius(),
                            "clauses": clauses,
                            "pass": report.pass(),
                        })
                    )?;
                }
                _ => {
                    for c in report.clauses() {
                        match &c.counterexample {
                            Some(ce) => {
                                writeln!(out, "FAIL {} ({} checked): {}", c.name, c.checked, ce)?
                            }
                            None => writeln!(out, "PASS {} ({} checked)", c.name, c.checked)?,
                        }
                    }
                }
            }
            Ok(if report.pass() { 0 } else { 1 })
        }
    }
}

fn run_bound(
    which: &BoundCommand,
    format: Format,
    digits: u8,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    match which {
        BoundCommand::Theorem1 {
            table,
            size,
            lambda,
            best,
        } => {
            let tab = table.load()?;
            match (lambda, best) {
                (Some(lambda), false) => {
                    let lambda =
                        parse_rational(lambda).map_err(|e| CliError::Usage(e.to_string()))?;
                    let bound = theorem1_bound(*size, lambda, &tab)?;
                    match format {
                        Format::Json => writeln!(
                            out,
                            "{}",
                            serde_json::json!({
                                "group": tab.group().render(),
                                "size": size,
                                "lambda": crate::rat::render_rational(lambda),
                                "bound": bound,
                            })
                        )?,
                        _ => writeln!(out, "bound {}", sig(bound, digits))?,
                    }
                }
                (None, true) => {
                    let best = best_lambda_discrete(*size, &tab, None)?;
                    match format {
                        Format::Json => writeln!(
                            out,
                            "{}",
                            serde_json::json!({
                                "group": tab.group().render(),
                                "size": size,
                                "k": best.k,
                                "lambda": crate::rat::render_rational(best.lambda),
                                "bound": best.bound,
                            })
                        )?,
                        _ => {
                            writeln!(out, "k {}", best.k)?;
                            writeln!(
                                out,
                                "lambda {}",
                                crate::rat::render_rational(best.lambda)
                            )?;
                            writeln!(out, "bound {}", sig(best.bound, digits))?;
                        }
                    }
                }
                _ => {
                    return Err(CliError::Usage(
                        "bound theorem1 needs exactly one of --lambda or --best".into(),
                    ))
                }
            }
            Ok(0)
        }
        BoundCommand::Poly { c, d, v, numeric } => {
            let poly = PolyGrowth::new(*c, *d)?;
            let eval = closed_form_poly(&poly, *v)?;
            let numeric_eval = if *numeric {
                Some(numeric_f_sup(&GrowthLowerBound::Polynomial(poly), *v)?)
            } else {
                None
            };
            print_bound_eval(format, digits, out, "poly", &eval, numeric_eval.as_ref())?;
            Ok(0)
        }
        BoundCommand::Exp {
            c,
            b,
            alpha,
            v,
            numeric,
        } => {
            let spec = StretchedExpGrowth::new(*c, *b, *alpha)?;
            let eval = closed_form_exp(&spec, *v)?;
            let numeric_eval = if *numeric {
                Some(numeric_f_sup(&GrowthLowerBound::StretchedExp(spec), *v)?)
            } else {
                None
            };
            print_bound_eval(format, digits, out, "exp", &eval, numeric_eval.as_ref())?;
            Ok(0)
        }
    }
}

fn print_bound_eval(
    format: Format,
    digits: u8,
    out: &mut dyn Write,
    kind: &str,
    eval: &crate::bounds::BoundEvaluation,
    numeric: Option<&crate::bounds::BoundEvaluation>,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            let value = serde_json::json!({
                "kind": kind,
                "v": eval.v,
                "lambda_star": eval.lambda_star,
                "F": eval.value,
                "mu": eval.mu,
                "residuals": {
                    "stationarity": eval.residuals.stationarity,
                    "lambda_equation": eval.residuals.lambda_equation,
                    "mu_cross_check": eval.residuals.mu_cross_check,
                    "numeric_agreement": eval.residuals.numeric_agreement,
                },
                "numeric": numeric.map(|n| serde_json::json!({
                    "lambda_star": n.lambda_star,
                    "F": n.value,
                    "stationarity": n.residuals.stationarity,
                })),
            });
            writeln!(out, "{value}")?;
        }
        _ => {
            writeln!(out, "F {}", sig(eval.value, digits))?;
            writeln!(out, "lambda_star {}", sig(eval.lambda_star, digits))?;
            if let Some(mu) = eval.mu {
                writeln!(out, "mu {}", sig(mu, digits))?;
            }
            if let Some(n) = numeric {
                writeln!(out, "numeric_F {}", sig(n.value, digits))?;
                writeln!(out, "numeric_lambda_star {}", sig(n.lambda_star, digits))?;
            }
        }
    }
    Ok(())
}

fn materialize_one(
    table: &GrowthTable,
    literal: &str,
    sample_ball: Option<u32>,
) -> Result<FiniteSubset, CliError> {
    let source = SubsetSource::parse(literal)?;
    if matches!(source, SubsetSource::Exhaustive) {
        return Err(CliError::Usage(
            "exhaustive subsets only make sense in verify configs".into(),
        ));
    }
    let mut subsets = source.materialize(table, sample_ball, 1)?;
    Ok(subsets.remove(0))
}

/// Entry point used by `main`; reads process args and prints to the real
/// stdio streams.
pub fn main_entry() -> i32 {
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    run(std::env::args_os(), &mut stdout, &mut stderr)
}

/// Ensures the clap definition stays internally consistent.
#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_valid() {
        Cli::command().debug_assert();
    }

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("groupgrowth").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn growth_emits_csv_rows() {
        let (code, out, _) = run_capture(&[
            "growth", "--group", "Z:2", "--radius", "3", "--no-cache",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "n,gamma\n0,1\n1,5\n2,13\n3,25\n");
    }

    #[test]
    fn lambert_branch_point() {
        let (code, out, _) = run_capture(&["lambert", "--", "-0.36787944117144233"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "-1.00000000000000e0");
    }

    #[test]
    fn bound_poly_d1() {
        let (code, out, _) = run_capture(&[
            "bound", "poly", "--C", "1", "--d", "1", "--v", "1000",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("F 2.50000000000000e-1"), "{out}");
        assert!(out.contains("lambda_star 2.00000000000000e0"), "{out}");
    }

    #[test]
    fn unknown_flag_exits_2() {
        let (code, _, err) = run_capture(&["growth", "--group", "Z:2", "--frobnicate"]);
        assert_eq!(code, 2);
        assert!(!err.is_empty());
    }

    #[test]
    fn domain_error_exits_2() {
        let (code, _, err) = run_capture(&["lambert", "--", "-0.5"]);
        assert_eq!(code, 2);
        assert!(err.contains("branch domain"));
    }

    #[test]
    fn help_exits_0() {
        for sub in [
            "growth", "phi", "boundary", "witness", "bound", "lambert", "mu", "verify",
            "lemma-check",
        ] {
            let (code, out, _) = run_capture(&[sub, "--help"]);
            assert_eq!(code, 0, "{sub} --help");
            assert!(!out.is_empty());
        }
    }
}
