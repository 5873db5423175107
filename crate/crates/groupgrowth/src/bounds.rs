//! Isoperimetric lower bounds.
//!
//! The basic inequality bounds `|∂D|` from below by
//! `(1 − 1/λ)·|D| / φ(λ|D|)` for any scale factor `1 < λ ≤ |Γ|/|D|`.
//! This module evaluates that bound from a growth table, optimizes it over
//! λ (the discrete optimum is attained at `λ = γ(k)/|D|`), and computes the
//! closed forms obtained when the growth function dominates a polynomial
//! `C·rᵈ` or a stretched exponential `C·e^{b·r^α}`:
//!
//! * polynomial: `F(v) = C^{1/d}·d·v^{(d−1)/d}/(d+1)^{(d+1)/d}`, with the
//!   optimal `λ = d+1`;
//! * stretched exponential: `F(v) = μ(v)·v/((1/b)·log v)^{1/α}`, where the
//!   optimal `λ(v)` solves `α·log(λv/C) = λ − 1` and is expressed through
//!   the Lambert `W₋₁` branch as `λ(v) = −α·W₋₁(−C·e^{−1/α}/(α v))`.
//!
//! Every evaluation reports the residuals of its defining equations, so the
//! numeric and closed-form routes can cross-validate each other.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::boundary::{check_lambda_range, BoundaryError};
use crate::growth::{GrowthError, GrowthTable};
use crate::lambert::{lambert_w_minus1, LambertDomainError, NEG_INV_E};
use crate::rat::{Rational, Threshold};
use crate::search::{expand_bracket, golden_section_max};

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("cannot bracket a maximum of H(λ, v) for v = {v}: v too small for this growth bound")]
    BracketFailed { v: f64 },
    #[error("no admissible λ = γ(k)/|D| > 1 within the allowed range")]
    NoAdmissibleLambda,
    #[error("cross-validation failed: {0}")]
    CrossCheck(String),
    #[error(transparent)]
    Lambert(#[from] LambertDomainError),
    #[error(transparent)]
    Growth(#[from] GrowthError),
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
}

/// Hypothesized polynomial lower bound `γ(n−1) ≥ C·nᵈ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyGrowth {
    pub c: f64,
    pub d: f64,
}

impl PolyGrowth {
    pub fn new(c: f64, d: f64) -> Result<Self, BoundsError> {
        if !(c > 0.0) {
            return Err(BoundsError::Domain(format!("need C > 0, got {c}")));
        }
        if !(d >= 1.0) {
            return Err(BoundsError::Domain(format!("need d >= 1, got {d}")));
        }
        Ok(PolyGrowth { c, d })
    }
}

/// Hypothesized stretched-exponential lower bound `γ(n−1) ≥ C·e^{b·n^α}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StretchedExpGrowth {
    pub c: f64,
    pub b: f64,
    pub alpha: f64,
}

impl StretchedExpGrowth {
    pub fn new(c: f64, b: f64, alpha: f64) -> Result<Self, BoundsError> {
        if !(c > 0.0) {
            return Err(BoundsError::Domain(format!("need C > 0, got {c}")));
        }
        if !(b > 0.0) {
            return Err(BoundsError::Domain(format!("need b > 0, got {b}")));
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(BoundsError::Domain(format!("need 0 < alpha <= 1, got {alpha}")));
        }
        Ok(StretchedExpGrowth { c, b, alpha })
    }

    /// Smallest `v` for which the optimality equation has a solution:
    /// `(C/α)·e^{(α−1)/α}`.
    pub fn lambda_domain_threshold(&self) -> f64 {
        self.c / self.alpha * ((self.alpha - 1.0) / self.alpha).exp()
    }
}

/// A hypothesized growth lower bound `g`, used as `γ(n−1) ≥ g(n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthLowerBound {
    Polynomial(PolyGrowth),
    StretchedExp(StretchedExpGrowth),
}

impl GrowthLowerBound {
    pub fn g(&self, r: f64) -> f64 {
        match self {
            GrowthLowerBound::Polynomial(p) => p.c * r.powf(p.d),
            GrowthLowerBound::StretchedExp(e) => e.c * (e.b * r.powf(e.alpha)).exp(),
        }
    }

    /// The inverse `h = g⁻¹`.
    pub fn h(&self, v: f64) -> f64 {
        match self {
            GrowthLowerBound::Polynomial(p) => (v / p.c).powf(1.0 / p.d),
            GrowthLowerBound::StretchedExp(e) => ((v / e.c).ln() / e.b).powf(1.0 / e.alpha),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GrowthLowerBound::Polynomial(p) => format!("C*r^d with C={}, d={}", p.c, p.d),
            GrowthLowerBound::StretchedExp(e) => {
                format!("C*exp(b*r^alpha) with C={}, b={}, alpha={}", e.c, e.b, e.alpha)
            }
        }
    }
}

/// How a bound value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMethod {
    ClosedFormPoly,
    ClosedFormExp,
    NumericSup,
}

/// Residuals of the defining equations behind a bound evaluation; `None`
/// where an equation does not apply to the method used.
#[derive(Debug, Clone, Copy, Default)]
pub struct Residuals {
    /// Relative residual of the stationarity condition
    /// `h(λv) = λ(λ−1)·v·h'(λv)` at the returned λ*.
    pub stationarity: Option<f64>,
    /// Absolute residual of `α·log(λv/C) − (λ−1)`.
    pub lambda_equation: Option<f64>,
    /// Relative gap between μ computed from λ(v) and μ computed directly
    /// from the Lambert form.
    pub mu_cross_check: Option<f64>,
    /// Relative gap to the independent numeric supremum.
    pub numeric_agreement: Option<f64>,
}

/// Value of an isoperimetric bound `F(v)` at one subset size `v`.
#[derive(Debug, Clone, Copy)]
pub struct BoundEvaluation {
    pub v: f64,
    pub lambda_star: f64,
    /// The bound value `F(v)`.
    pub value: f64,
    /// `μ(v)` for the stretched-exponential form.
    pub mu: Option<f64>,
    pub method: BoundMethod,
    pub residuals: Residuals,
}

/// The basic bound `(1 − 1/λ)·|D| / φ(λ|D|)` straight from a table.
pub fn theorem1_bound(
    size_d: u64,
    lambda: Rational,
    table: &GrowthTable,
) -> Result<f64, BoundsError> {
    if size_d == 0 {
        return Err(BoundsError::Domain("need |D| >= 1".into()));
    }
    check_lambda_range(lambda, size_d, table.group())?;
    let n = table.phi(Threshold::from_rational_times(lambda, size_d))?;
    debug_assert!(n >= 1, "lambda > 1 and |D| >= 1 force phi >= 1");
    let lambda = lambda.to_f64().unwrap();
    Ok((1.0 - 1.0 / lambda) * size_d as f64 / n as f64)
}

/// The strongest discrete instance of the basic bound.
#[derive(Debug, Clone, Copy)]
pub struct DiscreteBound {
    /// Radius index at which the optimum is attained; `φ(λ|D|) = k`.
    pub k: u32,
    /// The optimizing scale factor `λ = γ(k)/|D|`, exact.
    pub lambda: Rational,
    pub bound: f64,
}

/// Optimizes the basic bound over λ.
///
/// `φ(λ|D|)` is a step function of λ, so on each step the bound increases
/// in λ and the supremum over `(1, λ_max]` is attained at one of the jump
/// points `λ_k = γ(k)/|D|` (where `φ(λ_k·|D|) = k` exactly, as long as γ is
/// still strictly increasing at `k`). Scans all admissible `k` and returns
/// the best; ties go to the smaller `k`.
pub fn best_lambda_discrete(
    size_d: u64,
    table: &GrowthTable,
    lambda_max: Option<Rational>,
) -> Result<DiscreteBound, BoundsError> {
    if size_d == 0 {
        return Err(BoundsError::Domain("need |D| >= 1".into()));
    }
    let size = i64::try_from(size_d)
        .map_err(|_| BoundsError::Domain("subset size too large".into()))?;
    let mut best: Option<DiscreteBound> = None;
    for k in 1..=table.radius() {
        let gamma = table.gamma(k)?;
        let gamma_i = match i64::try_from(gamma) {
            Ok(g) => g,
            Err(_) => break,
        };
        let lambda = Ratio::new(gamma_i, size);
        if lambda <= Ratio::from_integer(1) {
            continue;
        }
        if let Some(cap) = lambda_max {
            if lambda > cap {
                break;
            }
        }
        if check_lambda_range(lambda, size_d, table.group()).is_err() {
            break;
        }
        let phi = table.phi(Threshold::from_count(gamma))?;
        let bound = (1.0 - size_d as f64 / gamma as f64) * size_d as f64 / phi as f64;
        if best.as_ref().is_none_or(|b| bound > b.bound) {
            best = Some(DiscreteBound { k: phi, lambda, bound });
        }
    }
    best.ok_or(BoundsError::NoAdmissibleLambda)
}

/// Maximizes `H(λ, v) = (1 − 1/λ)·v / h(λv)` over `λ ∈ (1, ∞)` by bracket
/// expansion plus golden-section search.
///
/// `H` is continuous and positive on the search range and tends to 0 at
/// both ends provided `h(λv) > 0` there, i.e. `v > 0` for the polynomial
/// family and `v > C` for the stretched-exponential one (below `C` the
/// optimal λ drops to 1 and no interior maximum exists).
pub fn numeric_f_sup(bound: &GrowthLowerBound, v: f64) -> Result<BoundEvaluation, BoundsError> {
    let v_min = match bound {
        GrowthLowerBound::Polynomial(_) => 0.0,
        GrowthLowerBound::StretchedExp(e) => e.c,
    };
    if !(v > v_min) {
        return Err(BoundsError::Domain(format!(
            "need v > {v_min} for the numeric supremum of this growth bound, got {v}"
        )));
    }
    let h_at = |lambda: f64| bound.h(lambda * v);
    let objective = |lambda: f64| (1.0 - 1.0 / lambda) * v / h_at(lambda);
    let lo = 1.0 + 1e-12;
    let (a, b) = expand_bracket(objective, lo, 2.0).ok_or(BoundsError::BracketFailed { v })?;
    let (lambda_star, value) = golden_section_max(objective, a, b, 1e-11, 400);

    // Stationarity residual h(λv) = λ(λ−1)·v·h'(λv), h' by central difference.
    let w = lambda_star * v;
    let delta = w * 1e-7;
    let h_prime = (bound.h(w + delta) - bound.h(w - delta)) / (2.0 * delta);
    let stationarity =
        (bound.h(w) - lambda_star * (lambda_star - 1.0) * v * h_prime).abs() / bound.h(w);

    Ok(BoundEvaluation {
        v,
        lambda_star,
        value,
        mu: None,
        method: BoundMethod::NumericSup,
        residuals: Residuals {
            stationarity: Some(stationarity),
            ..Residuals::default()
        },
    })
}

/// Closed form for polynomial growth:
/// `F(v) = C^{1/d}·d·v^{(d−1)/d} / (d+1)^{(d+1)/d}`, optimal `λ = d+1`.
pub fn closed_form_poly(poly: &PolyGrowth, v: f64) -> Result<BoundEvaluation, BoundsError> {
    if !(v >= 1.0) {
        return Err(BoundsError::Domain(format!("need v >= 1, got {v}")));
    }
    let PolyGrowth { c, d } = *poly;
    let value = c.powf(1.0 / d) * d * v.powf((d - 1.0) / d) / (d + 1.0).powf((d + 1.0) / d);
    Ok(BoundEvaluation {
        v,
        lambda_star: d + 1.0,
        value,
        mu: None,
        method: BoundMethod::ClosedFormPoly,
        residuals: Residuals::default(),
    })
}

/// Solves `α·log(λv/C) = λ − 1` for `λ ≥ α` via the `W₋₁` branch:
/// `λ(v) = −α·W₋₁(−C·e^{−1/α}/(α v))`.
///
/// Defined for `v ≥ (C/α)·e^{(α−1)/α}` (the minimum of
/// `f(x) = (C/x)·e^{(x−1)/α}`, below which no λ exists).
pub fn lambda_of_v(spec: &StretchedExpGrowth, v: f64) -> Result<f64, BoundsError> {
    let threshold = spec.lambda_domain_threshold();
    if !(v >= threshold * (1.0 - 1e-12)) {
        return Err(BoundsError::Domain(format!(
            "need v >= (C/alpha)*exp((alpha-1)/alpha) = {threshold}, got {v}"
        )));
    }
    let mut arg = -spec.c * (-1.0 / spec.alpha).exp() / (spec.alpha * v);
    if arg == 0.0 {
        // e^{-1/alpha} underflowed: the Lambert route cannot represent the
        // argument in f64 for such a small alpha.
        return Err(BoundsError::Domain(format!(
            "alpha = {} too small to evaluate lambda(v) in f64 (e^(-1/alpha) underflows)",
            spec.alpha
        )));
    }
    // v at the threshold maps to the branch point; tolerate rounding that
    // lands a hair outside.
    if arg < NEG_INV_E && arg > NEG_INV_E * (1.0 + 1e-12) {
        arg = NEG_INV_E;
    }
    let lambda = -spec.alpha * lambert_w_minus1(arg)?;
    let residual = (spec.alpha * (lambda * v / spec.c).ln() - (lambda - 1.0)).abs();
    if residual > 1e-10 {
        return Err(BoundsError::CrossCheck(format!(
            "lambda(v) residual {residual:e} exceeds 1e-10 at v = {v}"
        )));
    }
    Ok(lambda)
}

/// `μ(v)` evaluated two ways.
#[derive(Debug, Clone, Copy)]
pub struct MuEvaluation {
    pub v: f64,
    pub lambda: f64,
    pub mu: f64,
    /// Relative gap between the two expression routes.
    pub cross_residual: f64,
}

/// Computes `μ(v) = (1 − 1/λ(v))·(1 + log λ(v)/log v − log C/log v)^{−1/α}`
/// and cross-checks it against the explicit Lambert-form expression (same
/// quantity with the logarithms combined and λ substituted by `−α·W₋₁`).
pub fn mu_of_v(spec: &StretchedExpGrowth, v: f64) -> Result<MuEvaluation, BoundsError> {
    if !(v > 1.0) {
        return Err(BoundsError::Domain(format!("need v > 1 for mu(v), got {v}")));
    }
    let lambda = lambda_of_v(spec, v)?;
    let ln_v = v.ln();
    let mu = (1.0 - 1.0 / lambda)
        * (1.0 + lambda.ln() / ln_v - spec.c.ln() / ln_v).powf(-1.0 / spec.alpha);

    // Direct Lambert route: w = W₋₁(−C e^{−1/α}/(αv)) = −λ/α, and the two
    // log terms combine into log(−(α/C)·w).
    let w = -lambda / spec.alpha;
    let mu_direct = (1.0 + 1.0 / (spec.alpha * w))
        * (1.0 + (-(spec.alpha / spec.c) * w).ln() / ln_v).powf(-1.0 / spec.alpha);
    let cross_residual = (mu - mu_direct).abs() / mu.abs().max(f64::MIN_POSITIVE);
    if cross_residual > 1e-9 {
        return Err(BoundsError::CrossCheck(format!(
            "mu(v) expression routes disagree by {cross_residual:e} at v = {v}"
        )));
    }
    Ok(MuEvaluation {
        v,
        lambda,
        mu,
        cross_residual,
    })
}

/// Closed form for stretched-exponential growth:
/// `F(v) = μ(v)·v / ((1/b)·log v)^{1/α}`.
///
/// Where the numeric supremum is defined (`v > g(1)`), the two routes are
/// compared and must agree to 1e-6 relative.
pub fn closed_form_exp(
    spec: &StretchedExpGrowth,
    v: f64,
) -> Result<BoundEvaluation, BoundsError> {
    let mu = mu_of_v(spec, v)?;
    let value = mu.mu * v / (v.ln() / spec.b).powf(1.0 / spec.alpha);
    let lambda_eq_residual =
        (spec.alpha * (mu.lambda * v / spec.c).ln() - (mu.lambda - 1.0)).abs();

    let bound = GrowthLowerBound::StretchedExp(*spec);
    let numeric_agreement = if v > spec.c {
        let numeric = numeric_f_sup(&bound, v)?;
        let gap = (numeric.value - value).abs() / value.abs().max(f64::MIN_POSITIVE);
        if gap > 1e-6 {
            return Err(BoundsError::CrossCheck(format!(
                "closed form {value} vs numeric sup {} differ by {gap:e} at v = {v}",
                numeric.value
            )));
        }
        Some(gap)
    } else {
        None
    };

    Ok(BoundEvaluation {
        v,
        lambda_star: mu.lambda,
        value,
        mu: Some(mu.mu),
        method: BoundMethod::ClosedFormExp,
        residuals: Residuals {
            lambda_equation: Some(lambda_eq_residual),
            mu_cross_check: Some(mu.cross_residual),
            numeric_agreement,
            ..Residuals::default()
        },
    })
}

/// Largest `C` (exact rational) with `γ(n−1) ≥ C·nᵈ` for every tabulated
/// `n ≥ 1`, i.e. `min γ(n−1)/nᵈ`.
pub fn fit_poly_constant(table: &GrowthTable, d: u32) -> Result<Rational, BoundsError> {
    if d < 1 {
        return Err(BoundsError::Domain("need d >= 1".into()));
    }
    let mut best: Option<Rational> = None;
    for n in 1..=(table.radius() as i64 + 1) {
        let gamma = table.gamma(n as u32 - 1)?;
        let gamma = i64::try_from(gamma)
            .map_err(|_| BoundsError::Domain("gamma too large for exact fitting".into()))?;
        let n_pow = n
            .checked_pow(d)
            .ok_or_else(|| BoundsError::Domain(format!("n^d overflows at n = {n}, d = {d}")))?;
        let ratio = Ratio::new(gamma, n_pow);
        if best.is_none_or(|b| ratio < b) {
            best = Some(ratio);
        }
    }
    best.ok_or(BoundsError::Domain("empty table".into()))
}

/// Largest `C` (within f64 rounding, never above the true optimum) with
/// `γ(n−1) ≥ C·e^{b·nᵅ}` for every tabulated `n ≥ 1`.
pub fn fit_stretched_exp_constant(
    table: &GrowthTable,
    b: f64,
    alpha: f64,
) -> Result<f64, BoundsError> {
    if !(b > 0.0) || !(alpha > 0.0 && alpha <= 1.0) {
        return Err(BoundsError::Domain("need b > 0 and 0 < alpha <= 1".into()));
    }
    let mut c = f64::INFINITY;
    for n in 1..=(table.radius() as u64 + 1) {
        let gamma = table.gamma(n as u32 - 1)? as f64;
        c = c.min(gamma / (b * (n as f64).powf(alpha)).exp());
    }
    // The division rounds, so step down until the hypothesis verifiably
    // holds in f64 at every tabulated point.
    'shrink: for _ in 0..64 {
        for n in 1..=(table.radius() as u64 + 1) {
            let gamma = table.gamma(n as u32 - 1)? as f64;
            if c * (b * (n as f64).powf(alpha)).exp() > gamma {
                c *= 1.0 - 4.0 * f64::EPSILON;
                continue 'shrink;
            }
        }
        return Ok(c);
    }
    Err(BoundsError::Domain(
        "could not certify a fitted C in f64".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::growth::enumerate_ball;

    fn table(spec: &str, radius: u32) -> GrowthTable {
        enumerate_ball(&GroupSpec::parse(spec).unwrap(), radius).unwrap()
    }

    #[test]
    fn theorem1_bound_examples() {
        let z2 = table("Z:2", 4);
        let b = theorem1_bound(5, Ratio::new(2, 1), &z2).unwrap();
        assert_eq!(b, 1.25); // (1/2)*5/phi(10) = 2.5/2

        // factor (1 - 1/lambda) kills the bound as lambda -> 1+
        let b = theorem1_bound(5, Ratio::new(101, 100), &z2).unwrap();
        assert!(b > 0.0 && b < 0.05);

        let f2 = table("free:2", 3);
        let b = theorem1_bound(5, Ratio::new(3, 1), &f2).unwrap();
        assert!((b - 10.0 / 3.0 / 2.0).abs() < 1e-15); // phi(15) = 2
    }

    #[test]
    fn theorem1_bound_errors() {
        let z2 = table("Z:2", 2);
        assert!(matches!(
            theorem1_bound(5, Ratio::new(1, 1), &z2),
            Err(BoundsError::Boundary(_))
        ));
        assert!(matches!(
            theorem1_bound(5, Ratio::new(100, 1), &z2),
            Err(BoundsError::Growth(GrowthError::TableTooShallow { .. }))
        ));
    }

    #[test]
    fn best_lambda_discrete_on_z2() {
        let z2 = table("Z:2", 3);
        let best = best_lambda_discrete(5, &z2, None).unwrap();
        assert_eq!(best.k, 2);
        assert_eq!(best.lambda, Ratio::new(13, 5));
        assert!((best.bound - 20.0 / 13.0).abs() < 1e-14);

        // |D| = 1: the k = 1 candidate (1 - 1/gamma(1)) wins.
        let best = best_lambda_discrete(1, &z2, None).unwrap();
        assert_eq!(best.k, 1);
        assert!((best.bound - 0.8).abs() < 1e-15);
    }

    #[test]
    fn best_lambda_needs_room() {
        let c5 = table("cyclic:5", 4);
        assert!(matches!(
            best_lambda_discrete(5, &c5, None),
            Err(BoundsError::NoAdmissibleLambda)
        ));
        // proper subset works, lambda capped by |Γ|/|D| = 5/4
        let best = best_lambda_discrete(4, &c5, None).unwrap();
        assert!(best.lambda <= Ratio::new(5, 4));
    }

    #[test]
    fn poly_closed_form_examples() {
        let p = PolyGrowth::new(1.0, 1.0).unwrap();
        for v in [1.0, 10.0, 1e6] {
            let e = closed_form_poly(&p, v).unwrap();
            assert_eq!(e.value, 0.25);
            assert_eq!(e.lambda_star, 2.0);
        }
        let p = PolyGrowth::new(1.0, 2.0).unwrap();
        let e = closed_form_poly(&p, 64.0).unwrap();
        assert!((e.value - 16.0 / 3.0f64.powf(1.5)).abs() < 1e-14);
    }

    #[test]
    fn numeric_sup_matches_poly_closed_form() {
        for (c, d) in [(0.5, 1.0), (1.0, 2.0), (2.0, 3.0), (1.0, 4.0)] {
            let p = PolyGrowth::new(c, d).unwrap();
            for v in [100.0, 1e4, 1e6] {
                let closed = closed_form_poly(&p, v).unwrap();
                let numeric = numeric_f_sup(&GrowthLowerBound::Polynomial(p), v).unwrap();
                let rel = (closed.value - numeric.value).abs() / closed.value;
                assert!(rel < 1e-9, "C={c} d={d} v={v}: rel = {rel:e}");
                assert!(
                    (numeric.lambda_star - (d + 1.0)).abs() < 1e-6,
                    "lambda* = {} vs {}",
                    numeric.lambda_star,
                    d + 1.0
                );
                assert!(numeric.residuals.stationarity.unwrap() < 1e-6);
            }
        }
    }

    #[test]
    fn numeric_sup_exp_example() {
        // Eq. alpha·log(lambda v/C) = lambda - 1 at lambda = 3 gives v = e^2/3.
        let s = StretchedExpGrowth::new(1.0, 1.0, 1.0).unwrap();
        let v = std::f64::consts::E.powi(2) / 3.0;
        let numeric = numeric_f_sup(&GrowthLowerBound::StretchedExp(s), v).unwrap();
        assert!((numeric.lambda_star - 3.0).abs() < 1e-6);
    }

    #[test]
    fn numeric_sup_rejects_small_v() {
        let s = StretchedExpGrowth::new(1.0, 1.0, 1.0).unwrap();
        // below C the optimal lambda degenerates to 1
        assert!(matches!(
            numeric_f_sup(&GrowthLowerBound::StretchedExp(s), 0.5),
            Err(BoundsError::Domain(_))
        ));
    }

    #[test]
    fn lambda_of_v_examples() {
        let s = StretchedExpGrowth::new(1.0, 1.0, 1.0).unwrap();
        let v = std::f64::consts::E.powi(2) / 3.0;
        assert!((lambda_of_v(&s, v).unwrap() - 3.0).abs() < 1e-12);
        // v = 1 sits exactly at the domain threshold and gives lambda = 1.
        assert!((lambda_of_v(&s, 1.0).unwrap() - 1.0).abs() < 1e-7);
        assert!(matches!(
            lambda_of_v(&s, 0.5),
            Err(BoundsError::Domain(_))
        ));
    }

    #[test]
    fn mu_of_v_example() {
        let s = StretchedExpGrowth::new(1.0, 1.0, 1.0).unwrap();
        let v = std::f64::consts::E.powi(2) / 3.0;
        let mu = mu_of_v(&s, v).unwrap();
        // (2/3)(1 + log 3/(2 - log 3))^{-1}
        let expect = (2.0 / 3.0) / (1.0 + 3.0f64.ln() / (2.0 - 3.0f64.ln()));
        assert!((mu.mu - expect).abs() < 1e-12);
        assert!((mu.mu - 0.3005).abs() < 5e-4);
        assert!(mu.cross_residual < 1e-12);
    }

    #[test]
    fn mu_tends_to_one_and_lambda_ratio_to_alpha() {
        let s = StretchedExpGrowth::new(1.0, 1.0, 1.0).unwrap();
        let mut prev = 0.0;
        for k in 2..=12 {
            let v = 10f64.powi(k);
            let mu = mu_of_v(&s, v).unwrap().mu;
            assert!(mu > prev, "mu not increasing at v = 1e{k}");
            assert!(mu < 1.0);
            prev = mu;
        }
        assert!(1.0 - prev < 0.15, "mu(1e12) = {prev}");

        // lambda(v)/log(v) approaches alpha from above
        for alpha in [0.5, 1.0] {
            let s = StretchedExpGrowth::new(1.0, 1.0, alpha).unwrap();
            let near = lambda_of_v(&s, 1e16).unwrap() / 1e16f64.ln();
            let far = lambda_of_v(&s, 1e8).unwrap() / 1e8f64.ln();
            assert!(
                (near - alpha).abs() < (far - alpha).abs(),
                "ratio not approaching alpha = {alpha}"
            );
        }
    }

    #[test]
    fn closed_form_exp_example() {
        let s = StretchedExpGrowth::new(1.0, 1.0, 1.0).unwrap();
        let v = std::f64::consts::E.powi(2) / 3.0;
        let e = closed_form_exp(&s, v).unwrap();
        // mu * v / log v with the values above
        assert!((e.value - 0.8211).abs() < 5e-4, "F = {}", e.value);
        assert!(e.mu.unwrap() > 0.30 && e.mu.unwrap() < 0.31);
    }

    #[test]
    fn closed_form_exp_agrees_with_numeric_on_decades() {
        let s = StretchedExpGrowth::new(1.0, 1.0, 1.0).unwrap();
        let bound = GrowthLowerBound::StretchedExp(s);
        for k in 1..=6 {
            let v = 10f64.powi(k);
            let closed = closed_form_exp(&s, v).unwrap();
            let numeric = numeric_f_sup(&bound, v).unwrap();
            let rel = (closed.value - numeric.value).abs() / closed.value;
            assert!(rel < 1e-6, "v = 1e{k}: rel = {rel:e}");
            // mu implied by the numeric route
            let implied = numeric.value * (v.ln() / s.b).powf(1.0 / s.alpha) / v;
            assert!((implied - closed.mu.unwrap()).abs() < 1e-6);
        }
    }

    #[test]
    fn fit_poly_constants() {
        // Z^2, d = 2: min gamma(n-1)/n^2 is 1 at n = 1.
        let z2 = table("Z:2", 6);
        assert_eq!(fit_poly_constant(&z2, 2).unwrap(), Ratio::new(1, 1));
        // Z, d = 1: min (2n-1)/n = 1 at n = 1.
        let z = table("Z:1", 10);
        assert_eq!(fit_poly_constant(&z, 1).unwrap(), Ratio::new(1, 1));
        // The fitted constant really is feasible on the whole table.
        let h = table("heisenberg", 6);
        let c = fit_poly_constant(&h, 4).unwrap();
        for n in 1i64..=7 {
            let gamma = h.gamma(n as u32 - 1).unwrap() as i128;
            assert!(gamma * *c.denom() as i128 >= *c.numer() as i128 * (n as i128).pow(4));
        }
    }

    #[test]
    fn fit_exp_constant_for_free_group() {
        // gamma(n-1) = 2·3^{n-1} - 1 vs C·3^n: the minimum ratio is 1/3 at n=1.
        let f2 = table("free:2", 6);
        let c = fit_stretched_exp_constant(&f2, 3.0f64.ln(), 1.0).unwrap();
        assert!((c - 1.0 / 3.0).abs() < 1e-12, "C = {c}");
        for n in 1..=7u32 {
            let gamma = f2.gamma(n - 1).unwrap() as f64;
            assert!(c * (3.0f64.ln() * n as f64).exp() <= gamma);
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(PolyGrowth::new(0.0, 1.0).is_err());
        assert!(PolyGrowth::new(1.0, 0.5).is_err());
        assert!(StretchedExpGrowth::new(1.0, 0.0, 1.0).is_err());
        assert!(StretchedExpGrowth::new(1.0, 1.0, 1.5).is_err());
        assert!(StretchedExpGrowth::new(-1.0, 1.0, 1.0).is_err());
        // e^{-1/alpha} underflows f64 around alpha ~ 1/745; the error names it
        let tiny = StretchedExpGrowth::new(1.0, 1.0, 1e-4).unwrap();
        let err = lambda_of_v(&tiny, 100.0).unwrap_err();
        assert!(err.to_string().contains("underflows"), "{err}");
    }
}
