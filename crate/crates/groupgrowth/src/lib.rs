//! Growth functions, discrete boundaries and isoperimetric bounds for
//! finitely generated groups.
//!
//! The crate enumerates balls in Cayley graphs of a fixed family of
//! computable groups, computes growth and reverse growth functions, the
//! interior/exterior boundaries of finite subsets, and the translate
//! witnesses behind the isoperimetric inequality
//!
//! ```text
//! |∂D| ≥ (1 − 1/λ) · |D| / φ(λ|D|),        1 < λ ≤ |Γ|/|D|,
//! ```
//!
//! together with the closed-form bounds it yields for polynomial and
//! stretched-exponential growth (via the Lambert `W₋₁` branch). The
//! [`verify`] module runs whole experiment suites from config files and
//! writes machine-readable reports; the `groupgrowth` binary exposes all of
//! it on the command line.
//!
//! The guide in `book/` walks through the concepts with runnable examples;
//! every code snippet there is compiled and run as a doctest.
//!
//! ```
//! use groupgrowth::{enumerate_ball, GroupSpec};
//!
//! let z2 = GroupSpec::parse("Z:2")?;
//! let table = enumerate_ball(&z2, 3)?;
//! assert_eq!(table.gammas(), &[1, 5, 13, 25]);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

// Parameter guards use the `!(x > 0.0)` form on purpose: the inverted
// comparison also rejects NaN, which `x <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary;
pub mod bounds;
pub mod cache;
pub mod cli;
pub mod group;
pub mod growth;
pub mod lambert;
pub mod rat;
mod search;
pub mod verify;

pub use boundary::{
    convolution_identity, exit_map, exit_stay_sets, exterior_boundary, find_witness,
    interior_boundary, BoundaryError, BoundaryReport, ExitVariant, FiniteSubset, SubsetSource,
    WitnessReport,
};
pub use bounds::{
    best_lambda_discrete, closed_form_exp, closed_form_poly, fit_poly_constant,
    fit_stretched_exp_constant, lambda_of_v, mu_of_v, numeric_f_sup, theorem1_bound,
    BoundEvaluation, BoundsError, GrowthLowerBound, PolyGrowth, StretchedExpGrowth,
};
pub use group::{Element, Family, GeneratingSet, GroupError, GroupSpec};
pub use growth::{
    check_lemma_iv, check_lemma_properties, enumerate_ball, enumerate_ball_with_budget,
    GrowthError, GrowthTable, LemmaIvReport, LemmaReport, DEFAULT_MEMORY_BUDGET,
};
pub use lambert::lambert_w_minus1;
pub use rat::{parse_rational, Rational, Threshold};
