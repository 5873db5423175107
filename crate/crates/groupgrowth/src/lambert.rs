//! The `W₋₁` branch of the Lambert W function.
//!
//! `W₋₁ : [-1/e, 0) → (-∞, -1]` is defined by `W₋₁(x)·exp(W₋₁(x)) = x`.
//! It converts the implicit optimality condition of the stretched-exponential
//! isoperimetric bound into a closed form, so it has to be accurate to close
//! to machine precision over the whole branch.
//!
//! Strategy:
//! * very near the branch point `-1/e`, a series in
//!   `p = -sqrt(2(1 + e·x))`, with `1 + e·x` evaluated in compensated
//!   arithmetic (the subtraction is the ill-conditioned step);
//! * elsewhere, safeguarded Halley iteration on the logarithmic form
//!   `g(w) = w + ln(-w) - ln(-x)`, which is well conditioned even where
//!   `exp(w)` underflows, with a bisection bracket as fallback.

use thiserror::Error;

#[derive(Debug, Error)]
#[error("lambert_w_minus1: x = {x} outside the branch domain [-1/e, 0)")]
pub struct LambertDomainError {
    pub x: f64,
}

/// `-1/e` rounded to f64; the left end of the branch domain.
pub const NEG_INV_E: f64 = -0.367_879_441_171_442_33;

// e in double-double precision: E_HI + E_LO ≈ e to ~32 digits.
const E_HI: f64 = std::f64::consts::E;
const E_LO: f64 = 1.445_646_891_729_250_2e-16;

// Branch-point series w = -1 + Σ μ_k p^k (Corless et al. 1996, eq. 4.22).
const MU: [f64; 10] = [
    -1.0,
    1.0,
    -1.0 / 3.0,
    11.0 / 72.0,
    -43.0 / 540.0,
    769.0 / 17280.0,
    -221.0 / 8505.0,
    680863.0 / 43545600.0,
    -1963.0 / 204120.0,
    226287557.0 / 37623398400.0,
];

/// `1 + e·x` without the cancellation error of the naive expression.
fn one_plus_e_x(x: f64) -> f64 {
    let p1 = E_HI * x;
    let e1 = f64::mul_add(E_HI, x, -p1); // exact low part of E_HI*x
    let lo = f64::mul_add(E_LO, x, e1);
    // For x near -1/e, p1 ∈ [-1, -1/2] and 1 + p1 is exact (Sterbenz).
    (1.0 + p1) + lo
}

fn branch_series(p: f64) -> f64 {
    let mut w = MU[9];
    for k in (0..9).rev() {
        w = MU[k] + p * w;
    }
    w
}

/// Evaluates `W₋₁(x)` for `x ∈ [-1/e, 0)`.
///
/// The result satisfies the defining identity to within a few units in the
/// last place of `w` itself: `|w·eʷ − x| ≲ ulp(w)·|x|`, which is the best a
/// 64-bit return value allows (an error of half an ulp in `w` already moves
/// `w·eʷ` by `≈ ulp(w)·|x|`).
pub fn lambert_w_minus1(x: f64) -> Result<f64, LambertDomainError> {
    if !(NEG_INV_E..0.0).contains(&x) {
        return Err(LambertDomainError { x });
    }
    if x == NEG_INV_E {
        return Ok(-1.0);
    }

    let s = one_plus_e_x(x).max(0.0);
    let p = -(2.0 * s).sqrt();
    // |p| ≤ 0.05: series truncation error below 1e-15 relative; the direct
    // iteration would be noise-limited here because g'(w) → 0 at the branch
    // point.
    if p > -0.05 {
        return Ok(branch_series(p));
    }

    let ln_neg_x = (-x).ln();
    let guess = if x <= -0.2 {
        branch_series(p)
    } else {
        // asymptotic form for small |x|: w ≈ ln(-x) - ln(-ln(-x))
        ln_neg_x - (-ln_neg_x).ln()
    };

    Ok(halley_log_form(guess, ln_neg_x))
}

/// Solves `g(w) = w + ln(-w) - target = 0` on `(-∞, -1]` by Halley steps
/// inside a maintained bisection bracket. `g` is increasing there, with
/// `g(-1) = -1 ≥ target`.
fn halley_log_form(guess: f64, target: f64) -> f64 {
    let g = |w: f64| w + (-w).ln() - target;

    let mut hi = -1.0; // g(hi) >= 0
    let mut lo = (target - (1.0 - target).ln() - 2.0).min(-2.0);
    for _ in 0..128 {
        if g(lo) <= 0.0 {
            break;
        }
        lo *= 2.0;
    }

    let mut w = guess.clamp(lo, hi);
    for _ in 0..64 {
        let gw = g(w);
        if gw == 0.0 {
            break;
        }
        if gw > 0.0 {
            hi = w;
        } else {
            lo = w;
        }
        let d1 = 1.0 + 1.0 / w; // g'
        let d2 = -1.0 / (w * w); // g''
        let denom = 2.0 * d1 * d1 - gw * d2;
        let step = 2.0 * gw * d1 / denom;
        let mut next = w - step;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - w).abs() <= 2.0 * f64::EPSILON * w.abs() {
            w = next;
            break;
        }
        w = next;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent root finder: bisect `w·eʷ = x` on `[-746, -1]`, refined
    /// until the interval collapses in f64.
    fn bisect_oracle(x: f64) -> f64 {
        let f = |w: f64| w * w.exp() - x;
        let (mut lo, mut hi) = (-746.0, -1.0);
        // f is decreasing in w on (-∞, -1]: f(-1) = -1/e - x <= 0, f(lo) > 0.
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }

    #[test]
    fn branch_point_is_exact() {
        assert_eq!(lambert_w_minus1(NEG_INV_E).unwrap(), -1.0);
    }

    #[test]
    fn known_values() {
        // w = -3 satisfies w e^w = -3 e^-3.
        let x = -3.0 * (-3.0f64).exp();
        let w = lambert_w_minus1(x).unwrap();
        assert!((w + 3.0).abs() < 1e-13, "w = {w}");
        // frozen from the bisection oracle
        let w = lambert_w_minus1(-0.1).unwrap();
        assert!((w - bisect_oracle(-0.1)).abs() <= 1e-14 * w.abs());
        assert!((w - (-3.577152063957297)).abs() < 1e-12, "w = {w}");
    }

    #[test]
    fn domain_errors() {
        for x in [0.0, 0.5, -0.4, -1.0, f64::NAN] {
            assert!(lambert_w_minus1(x).is_err(), "x = {x}");
        }
    }

    #[test]
    fn defining_identity_on_moderate_range() {
        // For |w| up to ~30 the raw identity residual must sit at 1e-14|x|.
        for i in 0..200 {
            let x = NEG_INV_E + (i as f64 + 0.5) / 200.5 * (0.367879 - 1e-12);
            let x = x.min(-1e-12);
            let w = lambert_w_minus1(x).unwrap();
            let residual = (w * w.exp() - x).abs();
            assert!(
                residual <= 1e-14 * x.abs() * w.abs().max(1.0),
                "x = {x}, w = {w}, residual = {residual:e}"
            );
        }
    }

    #[test]
    fn matches_bisection_across_branch() {
        // |x| log-spaced from 1/e down to about 1e-300. The branch point
        // itself is excluded: W is infinitely ill-conditioned there (the
        // conventional value -1 zeroes the defining identity, which is its
        // own test above).
        for i in 0..60 {
            let t = i as f64 / 59.0;
            let ln_x = -1.0 + t * (-690.0 + 1.0);
            let x = (-ln_x.exp()).max(NEG_INV_E);
            if x >= 0.0 || x == NEG_INV_E {
                continue;
            }
            let w = lambert_w_minus1(x).unwrap();
            let oracle = bisect_oracle(x);
            assert!(
                (w - oracle).abs() <= 1e-14 * oracle.abs(),
                "x = {x:e}: w = {w}, oracle = {oracle}"
            );
            assert!(w <= -1.0);
        }
    }

    #[test]
    fn monotone_decreasing_in_x() {
        let mut prev = f64::NEG_INFINITY;
        for i in 1..=500 {
            // sweep from -1/e up toward 0: W decreases from -1 to -inf
            let x = NEG_INV_E * (1.0 - i as f64 / 501.0);
            let w = lambert_w_minus1(x).unwrap();
            assert!(w <= -1.0);
            if prev != f64::NEG_INFINITY {
                assert!(w <= prev, "x = {x}: w = {w} > prev = {prev}");
            }
            prev = w;
        }
    }

    #[test]
    fn near_branch_series_region_is_smooth() {
        // Values straddling the series/iteration boundary must agree with
        // the oracle to full precision; this pins the region handoff.
        for ds in [1e-8, 1e-6, 1e-4, 1.2e-3, 1.3e-3, 0.01, 0.02] {
            let x = (ds - 1.0) / std::f64::consts::E;
            if x >= 0.0 {
                continue;
            }
            let w = lambert_w_minus1(x).unwrap();
            let oracle = bisect_oracle(x);
            // near the branch the oracle itself is limited by conditioning;
            // compare through the defining identity instead
            let residual = (w * w.exp() - x).abs();
            assert!(
                residual <= 4e-15 * x.abs(),
                "ds = {ds}: w = {w}, oracle = {oracle}, residual = {residual:e}"
            );
        }
    }
}
