//! Discrete boundary operators and witness reconstruction.
//!
//! For a finite subset `D` of a group, the interior boundary collects the
//! points of `D` that a generator pushes out, `∂D = {x ∈ D | ∃s: sx ∉ D}`,
//! and the exterior boundary the outside points a generator pulls in,
//! `∂'D = {x ∉ D | ∃s: sx ∈ D}`.
//!
//! Left translation by an element `y` splits `D` into the exit set
//! `E_y = {x ∈ D | yx ∉ D}` and the stay set `I_y = D ∖ E_y = y⁻¹D ∩ D`.
//! Walking a geodesic word for `y` letter by letter defines the exit map,
//! which sends each exit point to the last point of its chain still inside
//! `D` (or, in the exterior variant, to the last chain point on `∂'D`);
//! its fibers have size at most `‖y‖`, which is what makes exit sets small
//! relative to the boundary.
//!
//! [`find_witness`] reconstructs the whole package for the translate that
//! minimizes `|I_y|` over a ball — the object behind the isoperimetric
//! bound computed in [`crate::bounds`].
//!
//! Everything here acts by LEFT multiplication. In a nonabelian group the
//! two sides genuinely differ and the identity `I_y = y⁻¹D ∩ D` only holds
//! for this convention.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use rand::SeedableRng;
use thiserror::Error;

use crate::group::{Element, GroupError, GroupSpec};
use crate::growth::{GrowthError, GrowthTable};
use crate::rat::{render_rational, Rational, Threshold};

#[derive(Debug, Error)]
pub enum BoundaryError {
    #[error("operation requires a nonempty subset")]
    EmptySubset,
    #[error("subset belongs to {subset_group}, expected {expected}")]
    GroupMismatch {
        subset_group: String,
        expected: String,
    },
    #[error("lambda = {lambda} out of range: need 1 < lambda{}", max.as_ref().map(|m| format!(" <= {m}")).unwrap_or_default())]
    LambdaOutOfRange {
        lambda: String,
        max: Option<String>,
    },
    #[error("word of length {word_len} is not geodesic: its product has norm {norm}")]
    NonGeodesicWord { word_len: usize, norm: u32 },
    #[error("cannot parse subset literal {text:?}: {reason}")]
    SubsetParse { text: String, reason: String },
    #[error("cannot sample {requested} distinct elements from a ball of {available}")]
    SampleTooLarge { requested: u64, available: u64 },
    #[error("exhaustive subset source needs a fully enumerated finite group of order <= {max}, got {got}")]
    ExhaustiveTooLarge { max: u64, got: u64 },
    #[error("exhaustive subset source needs a saturated table of a finite group")]
    ExhaustiveNeedsFiniteGroup,
    #[error(transparent)]
    Growth(#[from] GrowthError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// A finite subset of a group, stored as canonically encoded elements in
/// encoding order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSubset {
    group: GroupSpec,
    elements: BTreeSet<Element>,
}

impl FiniteSubset {
    pub fn new(
        group: GroupSpec,
        elements: impl IntoIterator<Item = Element>,
    ) -> Result<Self, BoundaryError> {
        let mut set = BTreeSet::new();
        for e in elements {
            group.validate(&e)?;
            set.insert(e);
        }
        Ok(FiniteSubset {
            group,
            elements: set,
        })
    }

    /// The ball `B(r)` of an enumerated table as a subset.
    pub fn ball(table: &GrowthTable, r: u32) -> Result<Self, BoundaryError> {
        if r > table.radius() {
            return Err(GrowthError::RadiusOutOfRange {
                requested: r,
                radius: table.radius(),
            }
            .into());
        }
        let mut set = BTreeSet::new();
        for n in 0..=r {
            set.extend(table.sphere(n)?.iter().cloned());
        }
        Ok(FiniteSubset {
            group: table.group().clone(),
            elements: set,
        })
    }

    /// `size` elements drawn uniformly without replacement from `B(r)`.
    pub fn random_from_ball(
        table: &GrowthTable,
        r: u32,
        size: u64,
        rng: &mut impl rand::Rng,
    ) -> Result<Self, BoundaryError> {
        let ball = FiniteSubset::ball(table, r)?;
        let pool: Vec<&Element> = ball.elements.iter().collect();
        if size > pool.len() as u64 {
            return Err(BoundaryError::SampleTooLarge {
                requested: size,
                available: pool.len() as u64,
            });
        }
        let picked = rand::seq::index::sample(rng, pool.len(), size as usize);
        let elements: BTreeSet<Element> = picked.iter().map(|i| pool[i].clone()).collect();
        Ok(FiniteSubset {
            group: table.group().clone(),
            elements,
        })
    }

    /// Parses an explicit literal `{elem,elem,...}` in the group's element
    /// syntax, splitting on commas outside brackets.
    pub fn parse(group: &GroupSpec, text: &str) -> Result<Self, BoundaryError> {
        let err = |reason: &str| BoundaryError::SubsetParse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| err("expected {...}"))?;
        let mut parts = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        for c in inner.chars() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                ',' if depth == 0 => {
                    parts.push(std::mem::take(&mut cur));
                    continue;
                }
                _ => {}
            }
            cur.push(c);
        }
        if !cur.trim().is_empty() || !parts.is_empty() {
            parts.push(cur);
        }
        let mut elements = BTreeSet::new();
        for part in parts {
            let part = part.trim();
            if part.is_empty() {
                return Err(err("empty element in list"));
            }
            elements.insert(group.element_from_str(part).map_err(|e| {
                BoundaryError::SubsetParse {
                    text: text.to_string(),
                    reason: e.to_string(),
                }
            })?);
        }
        Ok(FiniteSubset {
            group: group.clone(),
            elements,
        })
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .elements
            .iter()
            .map(|e| self.group.element_to_string(e))
            .collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn len(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.elements.contains(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Element> {
        self.elements.iter()
    }

    fn require_nonempty(&self) -> Result<(), BoundaryError> {
        if self.is_empty() {
            Err(BoundaryError::EmptySubset)
        } else {
            Ok(())
        }
    }
}

/// Where a subset comes from in configs and on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsetSource {
    /// Explicit element list literal, e.g. `{(0,0),(1,0)}`.
    Explicit(String),
    /// `ball:<r>` — the ball of radius `r`.
    Ball(u32),
    /// `random:<size>:<seed>` — uniform draws without replacement from a
    /// stated ball.
    Random { size: u64, seed: u64 },
    /// Every proper nonempty subset of a small finite group.
    Exhaustive,
}

impl SubsetSource {
    pub fn parse(text: &str) -> Result<Self, BoundaryError> {
        let text = text.trim();
        let err = |reason: &str| BoundaryError::SubsetParse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        if text.starts_with('{') {
            return Ok(SubsetSource::Explicit(text.to_string()));
        }
        if text == "exhaustive" {
            return Ok(SubsetSource::Exhaustive);
        }
        if let Some(r) = text.strip_prefix("ball:") {
            return Ok(SubsetSource::Ball(
                r.parse().map_err(|_| err("bad ball radius"))?,
            ));
        }
        if let Some(rest) = text.strip_prefix("random:") {
            let (size, seed) = rest
                .split_once(':')
                .ok_or_else(|| err("random needs random:<size>:<seed>"))?;
            return Ok(SubsetSource::Random {
                size: size.parse().map_err(|_| err("bad sample size"))?,
                seed: seed.parse().map_err(|_| err("bad seed (required)"))?,
            });
        }
        Err(err(
            "expected {elements...}, ball:<r>, random:<size>:<seed>, or exhaustive",
        ))
    }

    pub fn render(&self) -> String {
        match self {
            SubsetSource::Explicit(s) => s.clone(),
            SubsetSource::Ball(r) => format!("ball:{r}"),
            SubsetSource::Random { size, seed } => format!("random:{size}:{seed}"),
            SubsetSource::Exhaustive => "exhaustive".into(),
        }
    }

    /// Produces the subsets this source denotes.
    ///
    /// * `sample_ball` is the ball radius random draws come from (defaults
    ///   to the table radius);
    /// * `count` is how many independent random subsets to draw (ignored by
    ///   the other sources).
    ///
    /// Draws are taken sequentially from one ChaCha8 stream seeded with the
    /// stated seed, so a source reproduces the same subsets on every run.
    pub fn materialize(
        &self,
        table: &GrowthTable,
        sample_ball: Option<u32>,
        count: u32,
    ) -> Result<Vec<FiniteSubset>, BoundaryError> {
        match self {
            SubsetSource::Explicit(text) => Ok(vec![FiniteSubset::parse(table.group(), text)?]),
            SubsetSource::Ball(r) => Ok(vec![FiniteSubset::ball(table, *r)?]),
            SubsetSource::Random { size, seed } => {
                let r = sample_ball.unwrap_or_else(|| table.radius());
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
                (0..count.max(1))
                    .map(|_| FiniteSubset::random_from_ball(table, r, *size, &mut rng))
                    .collect()
            }
            SubsetSource::Exhaustive => exhaustive_proper_subsets(table),
        }
    }
}

const EXHAUSTIVE_MAX_ORDER: u64 = 12;

/// All proper nonempty subsets of a fully enumerated finite group, in
/// ascending bitmask order over the (norm, encoding)-ordered elements.
fn exhaustive_proper_subsets(table: &GrowthTable) -> Result<Vec<FiniteSubset>, BoundaryError> {
    if table.group().order() != Some(table.max_gamma()) {
        return Err(BoundaryError::ExhaustiveNeedsFiniteGroup);
    }
    let order = table.max_gamma();
    if order > EXHAUSTIVE_MAX_ORDER {
        return Err(BoundaryError::ExhaustiveTooLarge {
            max: EXHAUSTIVE_MAX_ORDER,
            got: order,
        });
    }
    let elements: Vec<&Element> = table.ball_iter().collect();
    let full: u64 = (1 << order) - 1;
    let mut out = Vec::with_capacity(full as usize - 1);
    for mask in 1..full {
        let set: BTreeSet<Element> = (0..order)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| elements[i as usize].clone())
            .collect();
        out.push(FiniteSubset {
            group: table.group().clone(),
            elements: set,
        });
    }
    Ok(out)
}

/// Interior boundary `∂D = {x ∈ D | ∃s ∈ S: sx ∉ D}`.
pub fn interior_boundary(d: &FiniteSubset) -> Result<FiniteSubset, BoundaryError> {
    d.require_nonempty()?;
    let group = d.group();
    let gens = group.generating_set();
    let mut boundary = BTreeSet::new();
    for x in d.iter() {
        for s in gens.iter() {
            let sx = group.mul_unchecked(&s.element, x)?;
            if !d.contains(&sx) {
                boundary.insert(x.clone());
                break;
            }
        }
    }
    Ok(FiniteSubset {
        group: group.clone(),
        elements: boundary,
    })
}

/// Exterior boundary `∂'D = {x ∉ D | ∃s ∈ S: sx ∈ D}`, computed as
/// `S·D ∖ D` (the two sets coincide because `S` is symmetric), so no
/// ambient ball is needed.
pub fn exterior_boundary(d: &FiniteSubset) -> Result<FiniteSubset, BoundaryError> {
    d.require_nonempty()?;
    let group = d.group();
    let gens = group.generating_set();
    let mut boundary = BTreeSet::new();
    for x in d.iter() {
        for s in gens.iter() {
            let sx = group.mul_unchecked(&s.element, x)?;
            if !d.contains(&sx) {
                boundary.insert(sx);
            }
        }
    }
    Ok(FiniteSubset {
        group: group.clone(),
        elements: boundary,
    })
}

/// Both boundaries of a subset.
#[derive(Debug, Clone)]
pub struct BoundaryReport {
    pub interior: FiniteSubset,
    pub exterior: FiniteSubset,
}

impl BoundaryReport {
    pub fn compute(d: &FiniteSubset) -> Result<Self, BoundaryError> {
        Ok(BoundaryReport {
            interior: interior_boundary(d)?,
            exterior: exterior_boundary(d)?,
        })
    }

    /// `|∂D|/|S| ≤ |∂'D| ≤ |S|·|∂D|`.
    pub fn sandwich_holds(&self, generating_set_size: u64) -> bool {
        let int = self.interior.len();
        let ext = self.exterior.len();
        int <= ext * generating_set_size && ext <= int * generating_set_size
    }
}

/// Splits `D` into the exit set `E_y` and stay set `I_y` under left
/// translation by `y`, cross-checking `I_y = y⁻¹D ∩ D`.
pub fn exit_stay_sets(
    d: &FiniteSubset,
    y: &Element,
) -> Result<(BTreeSet<Element>, BTreeSet<Element>), BoundaryError> {
    d.require_nonempty()?;
    let group = d.group();
    group.validate(y)?;
    let mut exit = BTreeSet::new();
    let mut stay = BTreeSet::new();
    for x in d.iter() {
        let yx = group.mul_unchecked(y, x)?;
        if d.contains(&yx) {
            stay.insert(x.clone());
        } else {
            exit.insert(x.clone());
        }
    }
    // Cross-check the algebraic description of the stay set.
    let y_inv = group.inv_unchecked(y)?;
    let translated: BTreeSet<Element> = d
        .iter()
        .map(|x| group.mul_unchecked(&y_inv, x))
        .collect::<Result<_, _>>()?;
    let alt: BTreeSet<Element> = translated
        .intersection(&d.elements)
        .cloned()
        .collect();
    if alt != stay {
        return Err(BoundaryError::Internal(
            "stay set disagrees with y^-1 D ∩ D".into(),
        ));
    }
    Ok((exit, stay))
}

/// Which boundary the exit map lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitVariant {
    /// `f(x) = y_m x` with `m = max {k ≤ n−1 | y_k x ∈ D}`; lands in `∂D`.
    Interior,
    /// `f(x) = y_m x` with `m = max {k ≤ n | y_k x ∈ ∂'D}`; lands in `∂'D`.
    Exterior,
}

/// The exit map of a translate, as the explicit assignment `x → f(x)`.
#[derive(Debug, Clone)]
pub struct ExitMap {
    pub variant: ExitVariant,
    pub y: Element,
    pub word: Vec<String>,
    pub assignments: BTreeMap<Element, Element>,
}

impl ExitMap {
    /// Fiber sizes, keyed by boundary point.
    pub fn fibers(&self) -> BTreeMap<&Element, u64> {
        let mut fibers = BTreeMap::new();
        for target in self.assignments.values() {
            *fibers.entry(target).or_insert(0) += 1;
        }
        fibers
    }

    pub fn max_fiber(&self) -> u64 {
        self.fibers().values().copied().max().unwrap_or(0)
    }
}

/// Builds the exit map of `D` for the translate given by a geodesic word
/// `[s_n, …, s_1]` (leftmost label outermost, as produced by
/// [`GrowthTable::geodesic_word`]).
///
/// The word must be geodesic — the fiber bound `|f⁻¹(z)| ≤ ‖y‖` is what
/// the isoperimetric argument rests on, and a longer word would silently
/// weaken it to the word length.
pub fn exit_map(
    table: &GrowthTable,
    d: &FiniteSubset,
    y_word: &[impl AsRef<str>],
    variant: ExitVariant,
) -> Result<ExitMap, BoundaryError> {
    d.require_nonempty()?;
    let group = d.group();
    if group != table.group() {
        return Err(BoundaryError::GroupMismatch {
            subset_group: group.render(),
            expected: table.group().render(),
        });
    }
    let gens = group.generating_set();
    let n = y_word.len();

    // chain y_0 = e, y_k = s_k · y_{k-1}; the word lists s_n first.
    let mut chain = Vec::with_capacity(n + 1);
    chain.push(group.identity());
    for k in 1..=n {
        let label = y_word[n - k].as_ref();
        let s = gens
            .by_label(label)
            .ok_or_else(|| GroupError::UnknownLabel(label.to_string()))?;
        let next = group.mul_unchecked(s, &chain[k - 1])?;
        chain.push(next);
    }
    let y = chain[n].clone();
    let norm = table.norm(&y)?;
    if norm as usize != n {
        return Err(BoundaryError::NonGeodesicWord { word_len: n, norm });
    }

    let (exit_set, _) = exit_stay_sets(d, &y)?;
    let exterior = match variant {
        ExitVariant::Interior => None,
        ExitVariant::Exterior => Some(exterior_boundary(d)?),
    };

    let mut assignments = BTreeMap::new();
    for x in &exit_set {
        let hit = match variant {
            ExitVariant::Interior => (0..n)
                .rev()
                .map(|k| group.mul_unchecked(&chain[k], x))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .find(|p| d.contains(p)),
            ExitVariant::Exterior => {
                let ext = exterior.as_ref().unwrap();
                (0..=n)
                    .rev()
                    .map(|k| group.mul_unchecked(&chain[k], x))
                    .collect::<Result<Vec<_>, _>>()?
                    .into_iter()
                    .find(|p| ext.contains(p))
            }
        };
        let target = hit.ok_or_else(|| {
            BoundaryError::Internal("exit chain never met the target boundary".into())
        })?;
        assignments.insert(x.clone(), target);
    }
    Ok(ExitMap {
        variant,
        y,
        word: y_word.iter().map(|w| w.as_ref().to_string()).collect(),
        assignments,
    })
}

/// Result of summing `|I_y|` over the support `{y | I_y ≠ ∅} ⊆ D·D⁻¹`.
#[derive(Debug, Clone)]
pub struct ConvolutionReport {
    pub support_size: u64,
    pub sum: u128,
    pub expected: u128,
}

impl ConvolutionReport {
    pub fn pass(&self) -> bool {
        self.sum == self.expected
    }
}

/// Verifies `Σ_y |I_y| = |D|²` by enumerating the support `D·D⁻¹`
/// explicitly and counting each stay set.
pub fn convolution_identity(d: &FiniteSubset) -> Result<ConvolutionReport, BoundaryError> {
    d.require_nonempty()?;
    let group = d.group();
    let mut support = BTreeSet::new();
    for a in d.iter() {
        for b in d.iter() {
            // y = a·b^-1 sends b to a, so I_y is nonempty.
            let y = group.mul_unchecked(a, &group.inv_unchecked(b)?)?;
            support.insert(y);
        }
    }
    let mut sum: u128 = 0;
    for y in &support {
        for x in d.iter() {
            let yx = group.mul_unchecked(y, x)?;
            if d.contains(&yx) {
                sum += 1;
            }
        }
    }
    Ok(ConvolutionReport {
        support_size: support.len() as u64,
        sum,
        expected: (d.len() as u128) * (d.len() as u128),
    })
}

/// Truth values of each inequality a witness must satisfy.
#[derive(Debug, Clone)]
pub struct WitnessChecks {
    /// `E_y ⊔ I_y = D`.
    pub partition: bool,
    /// `|I_y| ≤ |D|/λ` (exact rational comparison).
    pub stay_bound: bool,
    /// `γ(n)·|I_y| ≤ |D|²`.
    pub gamma_stay_bound: bool,
    /// `|E_y| ≤ ‖y‖·|∂D|`.
    pub exit_bound: bool,
    /// Image of the exit map lies in `∂D`.
    pub image_in_boundary: bool,
    /// Every fiber of the exit map has size `≤ ‖y‖`.
    pub fiber_bound: bool,
}

impl WitnessChecks {
    pub fn all(&self) -> bool {
        self.partition
            && self.stay_bound
            && self.gamma_stay_bound
            && self.exit_bound
            && self.image_in_boundary
            && self.fiber_bound
    }
}

/// A translate minimizing `|I_y|` over `B(φ(λ|D|))`, with the exit/stay
/// partition, geodesic word, exit map and all the inequalities it is
/// supposed to satisfy.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub lambda: Rational,
    /// `n = φ(λ|D|)`.
    pub n: u32,
    pub y: Element,
    pub y_word: Vec<String>,
    pub y_norm: u32,
    pub exit_set: BTreeSet<Element>,
    pub stay_set: BTreeSet<Element>,
    pub exit_map: ExitMap,
    pub subset_size: u64,
    pub boundary_size: u64,
    pub gamma_n: u64,
    pub checks: WitnessChecks,
}

/// Exhaustively searches `B(n)`, `n = φ(λ|D|)`, for the translate with the
/// smallest stay set (ties: smaller norm, then smaller encoding) and
/// assembles its witness data.
///
/// Requires `1 < λ ≤ |Γ|/|D|` (the upper bound is vacuous for infinite
/// groups) and a table deep enough to resolve `φ(λ|D|)`.
pub fn find_witness(
    d: &FiniteSubset,
    lambda: Rational,
    table: &GrowthTable,
) -> Result<WitnessReport, BoundaryError> {
    d.require_nonempty()?;
    let group = d.group();
    if group != table.group() {
        return Err(BoundaryError::GroupMismatch {
            subset_group: group.render(),
            expected: table.group().render(),
        });
    }
    check_lambda_range(lambda, d.len(), group)?;

    let n = table.phi(Threshold::from_rational_times(lambda, d.len()))?;
    let mut best: Option<(u64, &Element)> = None;
    for k in 0..=n {
        for y in table.sphere(k)? {
            let mut stay = 0u64;
            for x in d.iter() {
                let yx = group.mul_unchecked(y, x)?;
                if d.contains(&yx) {
                    stay += 1;
                }
            }
            if best.is_none_or(|(m, _)| stay < m) {
                best = Some((stay, y));
            }
        }
    }
    let (_, y) = best.expect("ball is never empty");
    let y = y.clone();

    let (exit_set, stay_set) = exit_stay_sets(d, &y)?;
    let boundary = interior_boundary(d)?;
    let y_word = table.geodesic_word(&y)?;
    let map = exit_map(table, d, &y_word, ExitVariant::Interior)?;
    let y_norm = y_word.len() as u32;
    let gamma_n = table.gamma(n)?;

    let size = d.len();
    let stay = stay_set.len() as u64;
    let checks = WitnessChecks {
        partition: exit_set.len() as u64 + stay == size
            && exit_set.iter().all(|x| d.contains(x))
            && stay_set.iter().all(|x| d.contains(x))
            && exit_set.intersection(&stay_set).next().is_none(),
        // |I_y|·num ≤ |D|·den  <=>  |I_y| ≤ |D|/λ
        stay_bound: (stay as i128) * (*lambda.numer() as i128)
            <= (size as i128) * (*lambda.denom() as i128),
        gamma_stay_bound: (gamma_n as u128) * (stay as u128) <= (size as u128) * (size as u128),
        exit_bound: exit_set.len() as u128 <= (y_norm as u128) * (boundary.len() as u128),
        image_in_boundary: map.assignments.values().all(|z| boundary.contains(z)),
        fiber_bound: map.max_fiber() <= y_norm as u64,
    };

    Ok(WitnessReport {
        lambda,
        n,
        y,
        y_word,
        y_norm,
        exit_set,
        stay_set,
        exit_map: map,
        subset_size: size,
        boundary_size: boundary.len(),
        gamma_n,
        checks,
    })
}

/// Validates `1 < λ ≤ |Γ|/|D|` exactly.
pub fn check_lambda_range(
    lambda: Rational,
    subset_size: u64,
    group: &GroupSpec,
) -> Result<(), BoundaryError> {
    if subset_size == 0 {
        return Err(BoundaryError::EmptySubset);
    }
    let max = group.order().map(|order| {
        Ratio::new(
            i64::try_from(order).unwrap_or(i64::MAX),
            i64::try_from(subset_size).unwrap_or(i64::MAX),
        )
    });
    let too_small = lambda <= Ratio::from_integer(1);
    // lambda <= order/size  <=>  lambda.num * size <= lambda.den * order
    let too_large = group.order().is_some_and(|order| {
        (*lambda.numer() as i128) * (subset_size as i128)
            > (*lambda.denom() as i128) * (order as i128)
    });
    if too_small || too_large {
        return Err(BoundaryError::LambdaOutOfRange {
            lambda: render_rational(lambda),
            max: max.map(render_rational),
        });
    }
    Ok(())
}
