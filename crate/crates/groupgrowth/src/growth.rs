//! Ball enumeration, growth functions and reverse growth functions.
//!
//! A [`GrowthTable`] holds the balls `B(0) ⊆ B(1) ⊆ … ⊆ B(N)` of a group
//! with respect to its generating set, organized as spheres (elements of
//! norm exactly `n`). Balls are built breadth-first by *left* multiplication
//! with generators; since the generating set is symmetric this enumerates
//! the same balls as any other convention, but fixing one side keeps the
//! boundary operators and witness algebra downstream consistent.
//!
//! The table answers:
//! * `gamma(n)` — the growth function `γ(n) = |B(n)|`;
//! * `norm(x)` — the word norm of an enumerated element;
//! * `phi(t)` — the reverse growth function `φ(t) = min {n | γ(n) ≥ t}`;
//! * `phi_strict(t)` — the strict variant `φ̃(t) = min {n | γ(n) > t}`.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::group::{Element, GroupError, GroupSpec};
use crate::rat::Threshold;

/// Default memory budget for ball enumeration: 2 GiB.
pub const DEFAULT_MEMORY_BUDGET: u64 = 2 * 1024 * 1024 * 1024;

#[derive(Debug, Error)]
pub enum GrowthError {
    #[error(
        "memory budget exceeded while enumerating radius {attempted}: last completed radius \
         {last_completed} ({bytes_used} of {budget} bytes)"
    )]
    BudgetExceeded {
        last_completed: u32,
        attempted: u32,
        bytes_used: u64,
        budget: u64,
    },
    #[error("element lies outside the enumerated ball of radius {radius}")]
    OutsideTable { radius: u32 },
    #[error("growth table too shallow: gamma({radius}) = {gamma_max} but t = {t}")]
    TableTooShallow { radius: u32, gamma_max: u64, t: f64 },
    #[error("no radius exists: the group is finite with {order} elements and t = {t}")]
    UnattainableForFiniteGroup { order: u64, t: f64 },
    #[error("radius {requested} exceeds the table radius {radius}")]
    RadiusOutOfRange { requested: u32, radius: u32 },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("cache i/o error: {0}")]
    CacheIo(#[from] std::io::Error),
    #[error("cache format error: {0}")]
    CacheFormat(String),
}

/// Growth data of a group up to a fixed radius.
#[derive(Debug, Clone)]
pub struct GrowthTable {
    group: GroupSpec,
    spheres: Vec<Vec<Element>>,
    gamma: Vec<u64>,
    norms: HashMap<Element, u32>,
    saturated_at: Option<u32>,
}

/// Rough per-element memory cost: the encoding appears in a sphere vector
/// and as a hash-map key, plus container overhead.
fn element_cost(encoding_len: usize) -> u64 {
    2 * encoding_len as u64 + 80
}

/// Enumerates `B(0..=radius)` with the default memory budget.
pub fn enumerate_ball(group: &GroupSpec, radius: u32) -> Result<GrowthTable, GrowthError> {
    enumerate_ball_with_budget(group, radius, DEFAULT_MEMORY_BUDGET)
}

/// Enumerates `B(0..=radius)` breadth-first, failing once the estimated
/// memory footprint passes `budget_bytes`. The error reports the last radius
/// that was fully enumerated.
pub fn enumerate_ball_with_budget(
    group: &GroupSpec,
    radius: u32,
    budget_bytes: u64,
) -> Result<GrowthTable, GrowthError> {
    let gens: Vec<Element> = group
        .generating_set()
        .iter()
        .map(|g| g.element.clone())
        .collect();
    let identity = group.identity();
    let mut bytes_used = element_cost(identity.bytes().len());
    let mut norms = HashMap::new();
    norms.insert(identity.clone(), 0u32);
    let mut spheres = vec![vec![identity]];
    let mut gamma = vec![1u64];
    let mut saturated_at = None;

    for n in 1..=radius {
        if saturated_at.is_some() {
            spheres.push(Vec::new());
            gamma.push(gamma[n as usize - 1]);
            continue;
        }
        let mut next = BTreeSet::new();
        for x in &spheres[n as usize - 1] {
            for s in &gens {
                let y = group.mul_unchecked(s, x)?;
                if !norms.contains_key(&y) && next.insert(y.clone()) {
                    bytes_used += element_cost(y.bytes().len());
                    if bytes_used > budget_bytes {
                        return Err(GrowthError::BudgetExceeded {
                            last_completed: n - 1,
                            attempted: radius,
                            bytes_used,
                            budget: budget_bytes,
                        });
                    }
                }
            }
        }
        let sphere: Vec<Element> = next.into_iter().collect();
        if sphere.is_empty() {
            saturated_at = Some(n);
        }
        for e in &sphere {
            norms.insert(e.clone(), n);
        }
        gamma.push(gamma[n as usize - 1] + sphere.len() as u64);
        spheres.push(sphere);
    }

    Ok(GrowthTable {
        group: group.clone(),
        spheres,
        gamma,
        norms,
        saturated_at,
    })
}

impl GrowthTable {
    pub(crate) fn from_parts(
        group: GroupSpec,
        spheres: Vec<Vec<Element>>,
    ) -> Result<Self, GrowthError> {
        let mut gamma = Vec::with_capacity(spheres.len());
        let mut norms = HashMap::new();
        let mut saturated_at = None;
        let mut total = 0u64;
        for (n, sphere) in spheres.iter().enumerate() {
            total += sphere.len() as u64;
            gamma.push(total);
            if sphere.is_empty() && saturated_at.is_none() && n > 0 {
                saturated_at = Some(n as u32);
            }
            for e in sphere {
                group.validate(e)?;
                if norms.insert(e.clone(), n as u32).is_some() {
                    return Err(GrowthError::CacheFormat(format!(
                        "duplicate element in sphere {n}"
                    )));
                }
            }
        }
        if gamma.first() != Some(&1) {
            return Err(GrowthError::CacheFormat(
                "sphere 0 must contain exactly the identity".into(),
            ));
        }
        Ok(GrowthTable {
            group,
            spheres,
            gamma,
            norms,
            saturated_at,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn radius(&self) -> u32 {
        self.spheres.len() as u32 - 1
    }

    /// `γ(n)`, if `n` is within the table.
    pub fn gamma(&self, n: u32) -> Result<u64, GrowthError> {
        self.gamma
            .get(n as usize)
            .copied()
            .ok_or(GrowthError::RadiusOutOfRange {
                requested: n,
                radius: self.radius(),
            })
    }

    /// The whole `γ(0..=N)` sequence.
    pub fn gammas(&self) -> &[u64] {
        &self.gamma
    }

    pub fn max_gamma(&self) -> u64 {
        *self.gamma.last().unwrap()
    }

    /// Elements of norm exactly `n`, sorted by canonical encoding.
    pub fn sphere(&self, n: u32) -> Result<&[Element], GrowthError> {
        self.spheres
            .get(n as usize)
            .map(|s| s.as_slice())
            .ok_or(GrowthError::RadiusOutOfRange {
                requested: n,
                radius: self.radius(),
            })
    }

    /// Iterates the ball `B(N)` in (norm, encoding) order.
    pub fn ball_iter(&self) -> impl Iterator<Item = &Element> {
        self.spheres.iter().flatten()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.norms.contains_key(x)
    }

    /// First radius whose sphere came out empty, i.e. the whole finite group
    /// was already enumerated at the previous radius.
    pub fn saturated_at(&self) -> Option<u32> {
        self.saturated_at
    }

    /// Word norm `‖x‖` of an element inside the enumerated ball.
    pub fn norm(&self, x: &Element) -> Result<u32, GrowthError> {
        self.group.validate(x)?;
        self.norms
            .get(x)
            .copied()
            .ok_or(GrowthError::OutsideTable {
                radius: self.radius(),
            })
    }

    /// Reverse growth `φ(t) = min {n | γ(n) ≥ t}`.
    ///
    /// Distinguishes "table too shallow" from "no such radius exists":
    /// when enumeration has saturated, `γ(N)` is the group order and any
    /// `t` above it can never be reached.
    pub fn phi(&self, t: impl Into<Threshold>) -> Result<u32, GrowthError> {
        let t = t.into();
        self.scan_phi(|g| t.met_by(g), t)
    }

    /// Strict reverse growth `φ̃(t) = min {n | γ(n) > t}`; always `≥ φ(t)`.
    pub fn phi_strict(&self, t: impl Into<Threshold>) -> Result<u32, GrowthError> {
        let t = t.into();
        self.scan_phi(|g| t.exceeded_by(g), t)
    }

    fn scan_phi(&self, ok: impl Fn(u64) -> bool, t: Threshold) -> Result<u32, GrowthError> {
        let n = self.gamma.partition_point(|&g| !ok(g));
        if n < self.gamma.len() {
            return Ok(n as u32);
        }
        if self.saturated_at.is_some() {
            Err(GrowthError::UnattainableForFiniteGroup {
                order: self.max_gamma(),
                t: t.to_f64(),
            })
        } else {
            Err(GrowthError::TableTooShallow {
                radius: self.radius(),
                gamma_max: self.max_gamma(),
                t: t.to_f64(),
            })
        }
    }

    /// Recovers a geodesic word `[s_n, …, s_1]` for `y`, so that
    /// `y = s_n ⋯ s_1` with `n = ‖y‖`.
    ///
    /// At each step the first listed generator `s` with
    /// `‖s⁻¹·cur‖ = ‖cur‖ − 1` wins, which makes the word, and everything
    /// derived from it, deterministic.
    pub fn geodesic_word(&self, y: &Element) -> Result<Vec<String>, GrowthError> {
        let mut k = self.norm(y)?;
        let gens: Vec<(String, Element)> = self
            .group
            .generating_set()
            .iter()
            .map(|g| {
                let inv = self.group.inv_unchecked(&g.element)?;
                Ok((g.label.clone(), inv))
            })
            .collect::<Result<_, GroupError>>()?;
        let mut word = Vec::with_capacity(k as usize);
        let mut cur = y.clone();
        while k > 0 {
            let mut stepped = false;
            for (label, s_inv) in &gens {
                let prev = self.group.mul_unchecked(s_inv, &cur)?;
                if self.norms.get(&prev) == Some(&(k - 1)) {
                    word.push(label.clone());
                    cur = prev;
                    k -= 1;
                    stepped = true;
                    break;
                }
            }
            if !stepped {
                return Err(GrowthError::CacheFormat(
                    "no norm-decreasing generator step found; table is inconsistent".into(),
                ));
            }
        }
        Ok(word)
    }
}

/// Outcome of a single lemma clause check.
#[derive(Debug, Clone)]
pub struct ClauseReport {
    pub name: &'static str,
    pub pass: bool,
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl ClauseReport {
    fn pass(name: &'static str, checked: u64) -> Self {
        ClauseReport {
            name,
            pass: true,
            checked,
            counterexample: None,
        }
    }

    fn fail(name: &'static str, checked: u64, counterexample: String) -> Self {
        ClauseReport {
            name,
            pass: false,
            checked,
            counterexample: Some(counterexample),
        }
    }
}

/// Report of the structural properties tying `φ` to `γ`.
#[derive(Debug, Clone)]
pub struct LemmaReport {
    /// `φ` is non-decreasing (sampled integer arguments).
    pub monotone: ClauseReport,
    /// `φ(γ(n)) = n` over the strictly increasing range of `γ`.
    pub left_inverse: ClauseReport,
    /// `γ(φ(m)) ≥ m`, with equality when `m` is a value of `γ`.
    pub gamma_phi: ClauseReport,
}

impl LemmaReport {
    pub fn pass(&self) -> bool {
        self.monotone.pass && self.left_inverse.pass && self.gamma_phi.pass
    }

    pub fn clauses(&self) -> [&ClauseReport; 3] {
        [&self.monotone, &self.left_inverse, &self.gamma_phi]
    }
}

/// Verifies the elementary properties of the reverse growth function on a
/// table: monotonicity, `φ(γ(n)) = n`, and `γ(φ(m)) ≥ m` with equality on
/// the image of `γ`.
///
/// `φ(γ(n)) = n` can only hold where `γ` is strictly increasing; once a
/// finite group saturates, `γ` repeats its final value and the identity
/// degenerates, so that clause is checked over the strictly increasing
/// prefix (the entire table for infinite groups).
pub fn check_lemma_properties(table: &GrowthTable) -> LemmaReport {
    let max = table.max_gamma();
    // Up to ~4000 sample points keeps this O(1) for very deep tables.
    let step = (max / 4000).max(1);

    let mut monotone = ClauseReport::pass("phi monotone non-decreasing", 0);
    let mut prev = 0u32;
    let mut m = 0u64;
    loop {
        let cur = table.phi(m).expect("m <= gamma(N)");
        monotone.checked += 1;
        if cur < prev {
            monotone = ClauseReport::fail(
                monotone.name,
                monotone.checked,
                format!("phi({m}) = {cur} < phi(previous) = {prev}"),
            );
            break;
        }
        prev = cur;
        if m >= max {
            break;
        }
        m = (m + step).min(max);
    }

    let strictly_increasing_end = table
        .gammas()
        .windows(2)
        .take_while(|w| w[1] > w[0])
        .count() as u32;
    let mut left_inverse = ClauseReport::pass("phi(gamma(n)) = n", 0);
    for n in 0..=strictly_increasing_end {
        let got = table.phi(table.gamma(n).unwrap()).expect("within table");
        left_inverse.checked += 1;
        if got != n {
            left_inverse = ClauseReport::fail(
                left_inverse.name,
                left_inverse.checked,
                format!("phi(gamma({n})) = {got}"),
            );
            break;
        }
    }

    let mut gamma_phi = ClauseReport::pass("gamma(phi(m)) >= m", 0);
    let image: BTreeSet<u64> = table.gammas().iter().copied().collect();
    let mut points: BTreeSet<u64> = image.clone();
    let mut m = 1u64;
    while m <= max {
        points.insert(m);
        m += step;
    }
    points.insert(max);
    for &m in &points {
        let val = table.gamma(table.phi(m).expect("within table")).unwrap();
        gamma_phi.checked += 1;
        if val < m || (image.contains(&m) && val != m) {
            gamma_phi = ClauseReport::fail(
                gamma_phi.name,
                gamma_phi.checked,
                format!("gamma(phi({m})) = {val}"),
            );
            break;
        }
    }

    LemmaReport {
        monotone,
        left_inverse,
        gamma_phi,
    }
}

/// Outcome of checking `φ(t) ≤ g⁻¹(t)` under the hypothesis
/// `γ(n) ≥ g(n+1)`.
#[derive(Debug, Clone)]
pub enum LemmaIvReport {
    /// The hypothesis `γ(n) ≥ g(n+1)` failed at some tabulated `n`; the
    /// conclusion was not tested.
    HypothesisFailed { n: u32, gamma: u64, required: f64 },
    /// Hypothesis held on the whole table; lists any `t` where the
    /// conclusion `φ(t) ≤ g⁻¹(t)` failed.
    Checked {
        checked: u64,
        violations: Vec<LemmaIvViolation>,
    },
}

#[derive(Debug, Clone)]
pub struct LemmaIvViolation {
    pub t: f64,
    pub phi: u32,
    pub g_inverse: f64,
}

impl LemmaIvReport {
    pub fn pass(&self) -> bool {
        matches!(self, LemmaIvReport::Checked { violations, .. } if violations.is_empty())
    }
}

/// Checks that `γ(n) ≥ g(n+1)` on the table and, if so, that
/// `φ(t) ≤ g⁻¹(t)` on a grid of `t ∈ (g(0), γ(N)]`.
///
/// `g` must be an increasing homeomorphism of `[0, ∞)` onto `[g(0), ∞)`;
/// the lower end of the tested range is therefore `β = g(0)`.
pub fn check_lemma_iv(
    table: &GrowthTable,
    g: impl Fn(f64) -> f64,
    g_inverse: impl Fn(f64) -> f64,
    grid: usize,
) -> LemmaIvReport {
    for n in 0..=table.radius() {
        let gamma = table.gamma(n).unwrap();
        let required = g(n as f64 + 1.0);
        if (gamma as f64) < required {
            return LemmaIvReport::HypothesisFailed { n, gamma, required };
        }
    }
    let beta = g(0.0);
    let top = table.max_gamma() as f64;
    let mut violations = Vec::new();
    let mut checked = 0;
    for i in 1..=grid {
        let t = beta + (top - beta) * i as f64 / grid as f64;
        if t <= beta {
            continue;
        }
        let phi = table
            .phi(Threshold::Real(t))
            .expect("t <= gamma(N) by construction");
        checked += 1;
        let inv = g_inverse(t);
        if (phi as f64) > inv {
            violations.push(LemmaIvViolation {
                t,
                phi,
                g_inverse: inv,
            });
        }
    }
    LemmaIvReport::Checked { checked, violations }
}
