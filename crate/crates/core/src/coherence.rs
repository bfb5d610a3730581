//! Coherence of conditional-value assessments.
//!
//! An assessment announces conditional values: entry `(X, D, v)` claims
//! value `v` (a rational or one of the infinities) for the quantity `X`
//! given the nonzero event `D`. The announcements generate the smallest
//! plausibility preorder that prices each `X` given `D` at `v`: a *bet*
//! `r * (X + s) * D` is accepted as a strict gain whenever its *margin*
//! `r * (v + s)` is strictly positive in extended arithmetic, and strict
//! gains are closed under addition and under adding positive multiples of
//! nonzero events.
//!
//! The assessment is **incoherent** when some finite family of accepted
//! bets and event stakes sums to exactly zero: a position priced strictly
//! above nothing that cannot pay anything. [`check_coherence`] decides this
//! exactly by scanning entry subsets in lexicographic order and solving one
//! exact feasibility program per subset; the first feasible subset yields a
//! [`Witness`] that re-validates by direct substitution. A preliminary
//! positive-state check settles most coherent inputs without enumeration.
//!
//! [`extend`] evaluates any conditional quantity against a coherent
//! assessment by computing the exact lower and upper values of the
//! generated preorder; when the two coincide the extension is defined and
//! unique.

use serde::{Deserialize, Serialize};

use crate::algebra::{Event, RandomQuantity};
use crate::error::{Error, Result};
use crate::expectation::ExpectationResult;
use crate::extreal::ExtReal;
use crate::lp::{Direction, LinearProgram, LpOutcome, Relation, SignRestriction};
use crate::rational::Rational;

/// Cap on the number of assessment entries the subset scan will accept.
///
/// Deciding coherence inspects every nonempty subset of entries, so the
/// work grows as `2^m`; the budget turns runaway inputs into an error
/// instead of an open-ended computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetBudget(pub usize);

impl SubsetBudget {
    pub fn new(limit: usize) -> Self {
        SubsetBudget(limit)
    }
}

impl Default for SubsetBudget {
    fn default() -> Self {
        SubsetBudget(16)
    }
}

/// One announced conditional value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssessmentEntry {
    #[serde(rename = "x")]
    pub quantity: RandomQuantity,
    #[serde(rename = "given")]
    pub condition: Event,
    pub value: ExtReal,
}

impl AssessmentEntry {
    pub fn new(quantity: RandomQuantity, condition: Event, value: ExtReal) -> Result<Self> {
        if quantity.dim() != condition.dim() {
            return Err(Error::DimensionMismatch {
                expected: quantity.dim(),
                got: condition.dim(),
            });
        }
        if condition.is_zero() {
            return Err(Error::InvalidInput("conditioning event must be nonzero".into()));
        }
        Ok(AssessmentEntry { quantity, condition, value })
    }
}

/// A finite list of announced conditional values on one algebra.
///
/// Construction validates dimensions, rejects zero conditioning events,
/// drops exact duplicates, and rejects two different values for the same
/// `(X, D)` pair.
#[derive(Clone, Debug, PartialEq)]
pub struct Assessment {
    dim: usize,
    entries: Vec<AssessmentEntry>,
}

impl Assessment {
    pub fn new(dim: usize, entries: Vec<AssessmentEntry>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension 0 is not allowed".into()));
        }
        let mut kept: Vec<AssessmentEntry> = Vec::with_capacity(entries.len());
        for entry in entries {
            if entry.quantity.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: entry.quantity.dim() });
            }
            if entry.condition.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: entry.condition.dim() });
            }
            if entry.condition.is_zero() {
                return Err(Error::InvalidInput("conditioning event must be nonzero".into()));
            }
            match kept
                .iter()
                .find(|k| k.quantity == entry.quantity && k.condition == entry.condition)
            {
                Some(k) if k.value == entry.value => continue,
                Some(k) => {
                    return Err(Error::InvalidInput(format!(
                        "conflicting values {} and {} for the same assessed pair",
                        k.value, entry.value
                    )))
                }
                None => kept.push(entry),
            }
        }
        Ok(Assessment { dim, entries: kept })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[AssessmentEntry] {
        &self.entries
    }

    fn check_budget(&self, budget: SubsetBudget) -> Result<()> {
        if self.entries.len() > budget.0 {
            return Err(Error::BudgetExceeded { entries: self.entries.len(), budget: budget.0 });
        }
        Ok(())
    }
}

/// Positive stake on a nonzero event inside a sure-loss combination.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EventTerm {
    #[serde(rename = "q")]
    pub weight: Rational,
    #[serde(rename = "c")]
    pub event: Event,
}

/// One accepted bet `r * (X + s) * D` against an assessment entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetTerm {
    pub entry: usize,
    #[serde(rename = "r")]
    pub stake: Rational,
    #[serde(rename = "s")]
    pub shift: Rational,
}

/// Exact sure-loss combination: event stakes plus bets with strictly
/// positive margins that sum to zero. Validated by [`validate_witness`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub event_terms: Vec<EventTerm>,
    pub bet_terms: Vec<BetTerm>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CoherenceVerdict {
    Coherent,
    Incoherent(Witness),
}

/// Nonempty subsets of `0..m` in lexicographic order of their index
/// sequences: `[0], [0,1], [0,1,2], ..., [0,2], ..., [m-1]`.
pub(crate) struct SubsetIter {
    m: usize,
    stack: Vec<usize>,
    started: bool,
}

impl SubsetIter {
    pub(crate) fn new(m: usize) -> Self {
        SubsetIter { m, stack: Vec::new(), started: false }
    }
}

impl Iterator for SubsetIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if !self.started {
            self.started = true;
            if self.m == 0 {
                return None;
            }
            self.stack.push(0);
            return Some(self.stack.clone());
        }
        let last = *self.stack.last()?;
        if last + 1 < self.m {
            self.stack.push(last + 1);
            return Some(self.stack.clone());
        }
        while let Some(e) = self.stack.pop() {
            if e + 1 < self.m {
                self.stack.push(e + 1);
                return Some(self.stack.clone());
            }
        }
        None
    }
}

/// Coefficients of the margin expression over the bet variables `(r, t)`
/// with `t = r * s`: finite `v` gives `r*v + t`, an infinite `v` fixes the
/// sign of `r` instead.
fn margin_coeffs(value: &ExtReal) -> (Rational, Rational) {
    match value {
        ExtReal::Finite(v) => (v.clone(), Rational::one()),
        ExtReal::PlusInf => (Rational::one(), Rational::zero()),
        ExtReal::MinusInf => (-Rational::one(), Rational::zero()),
    }
}

/// One margin row per chosen entry, over `2 * subset.len() + extra`
/// columns laid out as `r_0, t_0, r_1, t_1, ..., <extra>`.
fn margin_rows(a: &Assessment, subset: &[usize], extra: usize) -> Vec<Vec<Rational>> {
    let ncols = 2 * subset.len() + extra;
    subset
        .iter()
        .enumerate()
        .map(|(k, &j)| {
            let mut row = vec![Rational::zero(); ncols];
            let (rc, tc) = margin_coeffs(&a.entries[j].value);
            row[2 * k] = rc;
            row[2 * k + 1] = tc;
            row
        })
        .collect()
}

/// One row per coordinate summing the chosen bets, over the same column
/// layout as [`margin_rows`]: coordinate `i` gets `sum_j D_j[i] * (X_j[i]
/// * r_j + t_j)`.
fn coordinate_rows(a: &Assessment, subset: &[usize], extra: usize) -> Vec<Vec<Rational>> {
    let ncols = 2 * subset.len() + extra;
    (0..a.dim)
        .map(|i| {
            let mut row = vec![Rational::zero(); ncols];
            for (k, &j) in subset.iter().enumerate() {
                let entry = &a.entries[j];
                if entry.condition.contains(i) {
                    row[2 * k] = entry.quantity.get(i).clone();
                    row[2 * k + 1] = Rational::one();
                }
            }
            row
        })
        .collect()
}

fn add_bet_vars(lp: &mut LinearProgram, subset: &[usize]) {
    for &j in subset {
        lp.add_var(format!("r{j}"), SignRestriction::Free);
        lp.add_var(format!("t{j}"), SignRestriction::Free);
    }
}

/// Feasibility of a sure loss supported exactly on `subset`: margins
/// normalized to at least one, bet sum nonpositive everywhere. Returns the
/// bet variables on success.
fn subset_sure_loss(a: &Assessment, subset: &[usize]) -> Result<Option<Vec<Rational>>> {
    let mut lp = LinearProgram::new();
    add_bet_vars(&mut lp, subset);
    for row in margin_rows(a, subset, 0) {
        lp.constrain(row, Relation::GreaterEq, Rational::one())?;
    }
    for row in coordinate_rows(a, subset, 0) {
        lp.constrain(row, Relation::LessEq, Rational::zero())?;
    }
    match lp.solve()? {
        LpOutcome::Optimal { point, .. } => Ok(Some(point)),
        LpOutcome::Infeasible { .. } => Ok(None),
        LpOutcome::Unbounded { .. } => {
            Err(Error::Internal("feasibility program reported unbounded".into()))
        }
    }
}

/// Fast acceptance for all-finite assessments: nonnegative coordinate
/// weights that put mass at least one on every conditioning event and
/// reproduce every announced value as the weighted average. Applying the
/// weights to a candidate sure loss bounds zero below by the sum of its
/// margins, which is positive — so feasibility here certifies coherence.
/// Infeasibility certifies nothing and falls back to the subset scan.
fn positive_state_exists(a: &Assessment) -> Result<bool> {
    let mut lp = LinearProgram::new();
    for i in 0..a.dim {
        lp.add_var(format!("w{i}"), SignRestriction::NonNegative);
    }
    for entry in &a.entries {
        let v = match entry.value.as_finite() {
            Some(v) => v.clone(),
            None => return Ok(false),
        };
        let mut average = vec![Rational::zero(); a.dim];
        let mut mass = vec![Rational::zero(); a.dim];
        for i in entry.condition.support() {
            average[i] = entry.quantity.get(i) - &v;
            mass[i] = Rational::one();
        }
        lp.constrain(average, Relation::Equal, Rational::zero())?;
        lp.constrain(mass, Relation::GreaterEq, Rational::one())?;
    }
    Ok(!matches!(lp.solve()?, LpOutcome::Infeasible { .. }))
}

/// Layered decomposition of a nonnegative vector into positive multiples
/// of events: repeatedly peel the full support at its least positive
/// height. Each round zeroes at least one coordinate.
fn decompose_nonneg(u: &RandomQuantity) -> Result<Vec<EventTerm>> {
    let mut rest = u.clone();
    let mut terms = Vec::new();
    while !rest.is_zero() {
        let bits: Vec<bool> = rest.components().iter().map(Rational::is_positive).collect();
        let event = Event::from_bits(bits)?;
        let height = event
            .support()
            .map(|i| rest.get(i).clone())
            .reduce(Rational::min)
            .ok_or_else(|| Error::Internal("nonzero vector with empty support".into()))?;
        rest = rest.sub(&event.to_quantity().scale(&height))?;
        terms.push(EventTerm { weight: height, event });
    }
    Ok(terms)
}

/// Turns a feasible point of [`subset_sure_loss`] into a witness. A zero
/// stake (possible only on finite values, where the margin row forces the
/// shift part to at least one) splits into two opposite unit bets around
/// the announced value.
fn build_witness(a: &Assessment, subset: &[usize], point: &[Rational]) -> Result<Witness> {
    let dim = a.dim;
    let half = Rational::new(1, 2)?;
    let mut bet_terms = Vec::new();
    let mut total = RandomQuantity::zero(dim)?;
    for (k, &j) in subset.iter().enumerate() {
        let entry = &a.entries[j];
        let r = point[2 * k].clone();
        let t = point[2 * k + 1].clone();
        if r.is_zero() {
            let v = entry.value.as_finite().ok_or_else(|| {
                Error::Internal("zero stake cannot carry an infinite margin".into())
            })?;
            let spread = &t * &half;
            bet_terms.push(BetTerm { entry: j, stake: Rational::one(), shift: &spread - v });
            bet_terms.push(BetTerm { entry: j, stake: -Rational::one(), shift: -v - &spread });
        } else {
            bet_terms.push(BetTerm { entry: j, stake: r.clone(), shift: &t / &r });
        }
        let shifted = entry.quantity.scale(&r).add(&RandomQuantity::constant(t, dim)?)?;
        total = total.add(&shifted.mul_event(&entry.condition)?)?;
    }
    let residual = total.neg();
    if !residual.is_nonneg() {
        return Err(Error::Internal("sure-loss residual has a negative component".into()));
    }
    Ok(Witness { event_terms: decompose_nonneg(&residual)?, bet_terms })
}

/// Decides coherence. Scans nonempty entry subsets in lexicographic order
/// and reports the first sure loss found; the verdict and witness are
/// deterministic functions of the assessment.
pub fn check_coherence(a: &Assessment, budget: SubsetBudget) -> Result<CoherenceVerdict> {
    a.check_budget(budget)?;
    if a.entries.is_empty() {
        return Ok(CoherenceVerdict::Coherent);
    }
    if positive_state_exists(a)? {
        return Ok(CoherenceVerdict::Coherent);
    }
    for subset in SubsetIter::new(a.entries.len()) {
        if let Some(point) = subset_sure_loss(a, &subset)? {
            let witness = build_witness(a, &subset, &point)?;
            debug_assert!(validate_witness(a, &witness));
            return Ok(CoherenceVerdict::Incoherent(witness));
        }
    }
    Ok(CoherenceVerdict::Coherent)
}

/// Re-validates a witness by substitution: every event stake positive on a
/// nonzero event, every bet margin strictly positive in extended
/// arithmetic, at least one bet, and an exactly zero total.
pub fn validate_witness(a: &Assessment, witness: &Witness) -> bool {
    let dim = a.dim;
    if witness.bet_terms.is_empty() {
        return false;
    }
    let Ok(mut total) = RandomQuantity::zero(dim) else { return false };
    for term in &witness.event_terms {
        if !term.weight.is_positive() || term.event.dim() != dim || term.event.is_zero() {
            return false;
        }
        let stake = term.event.to_quantity().scale(&term.weight);
        total = match total.add(&stake) {
            Ok(t) => t,
            Err(_) => return false,
        };
    }
    for bet in &witness.bet_terms {
        let Some(entry) = a.entries.get(bet.entry) else { return false };
        let shifted_value = match entry.value.checked_add(&ExtReal::Finite(bet.shift.clone())) {
            Some(v) => v,
            None => return false,
        };
        match ExtReal::Finite(bet.stake.clone()).checked_mul(&shifted_value) {
            Some(margin) if margin > ExtReal::zero() => {}
            _ => return false,
        }
        let Ok(shift) = RandomQuantity::constant(bet.shift.clone(), dim) else { return false };
        let position = match entry.quantity.add(&shift) {
            Ok(p) => p.scale(&bet.stake),
            Err(_) => return false,
        };
        total = match position.mul_event(&entry.condition).and_then(|p| total.add(&p)) {
            Ok(t) => t,
            Err(_) => return false,
        };
    }
    total.is_zero()
}

/// Membership of `z` in the strict-gain set generated by the assessment:
/// either `z` is nonnegative and nonzero (pure event stakes), or some
/// nonempty entry subset supports bets with strictly positive margins that
/// stay below `z` everywhere. The margin program maximizes the least
/// margin, capped at one; any positive optimum certifies membership.
pub(crate) fn strict_member(a: &Assessment, budget: SubsetBudget, z: &RandomQuantity) -> Result<bool> {
    if z.dim() != a.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, got: z.dim() });
    }
    a.check_budget(budget)?;
    if z.is_nonneg() && !z.is_zero() {
        return Ok(true);
    }
    for subset in SubsetIter::new(a.entries.len()) {
        let width = 2 * subset.len();
        let mut lp = LinearProgram::new();
        add_bet_vars(&mut lp, &subset);
        let delta = lp.add_var("delta", SignRestriction::Free);
        for mut row in margin_rows(a, &subset, 1) {
            row[delta] = -Rational::one();
            lp.constrain(row, Relation::GreaterEq, Rational::zero())?;
        }
        let mut cap = vec![Rational::zero(); width + 1];
        cap[delta] = Rational::one();
        lp.constrain(cap, Relation::LessEq, Rational::one())?;
        for (i, row) in coordinate_rows(a, &subset, 1).into_iter().enumerate() {
            lp.constrain(row, Relation::LessEq, z.get(i).clone())?;
        }
        let mut objective = vec![Rational::zero(); width + 1];
        objective[delta] = Rational::one();
        lp.set_objective(objective, Direction::Maximize)?;
        match lp.solve()? {
            LpOutcome::Optimal { value, .. } if value.is_positive() => return Ok(true),
            LpOutcome::Optimal { .. } | LpOutcome::Infeasible { .. } => {}
            LpOutcome::Unbounded { .. } => {
                return Err(Error::Internal("capped margin program reported unbounded".into()))
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum BoundSense {
    Lower,
    Upper,
}

/// Exact bound of the generated preorder: the supremum of `y` with
/// `y <~ X given C` (lower) or the infimum of `y` with `X <~ y given C`
/// (upper).
///
/// Three branches cover the strict-gain set plus equality:
/// - equality needs `X` constant on the support of `C`;
/// - pure event stakes bound `y` by the extreme of `X` on that support;
/// - each entry subset contributes its best `y` among bets with positive
///   margins. A first pass maximizes the least margin (capped at one); a
///   positive optimum guarantees the second pass, optimizing `y` subject
///   to closed margins, has the same optimum as the open-margin search,
///   by averaging any near-optimal point with the interior one.
pub(crate) fn assessment_bound(
    a: &Assessment,
    budget: SubsetBudget,
    x: &RandomQuantity,
    c: &Event,
    sense: BoundSense,
) -> Result<ExtReal> {
    if x.dim() != a.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, got: x.dim() });
    }
    if c.dim() != a.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, got: c.dim() });
    }
    a.check_budget(budget)?;
    if c.is_zero() {
        return Ok(match sense {
            BoundSense::Lower => ExtReal::PlusInf,
            BoundSense::Upper => ExtReal::MinusInf,
        });
    }
    let mut candidates: Vec<ExtReal> = Vec::new();
    let on_support: Vec<&Rational> = c.support().map(|i| x.get(i)).collect();
    if on_support.iter().all(|v| *v == on_support[0]) {
        candidates.push(ExtReal::Finite(on_support[0].clone()));
    }
    let extreme = on_support
        .iter()
        .map(|v| (*v).clone())
        .reduce(|acc, v| match sense {
            BoundSense::Lower => acc.min(v),
            BoundSense::Upper => acc.max(v),
        })
        .expect("nonzero event has support");
    candidates.push(ExtReal::Finite(extreme));
    for subset in SubsetIter::new(a.entries.len()) {
        let width = 2 * subset.len();
        // First pass: is there a bet family on this subset with strictly
        // positive margins at all (for any y)?
        let mut lp = LinearProgram::new();
        add_bet_vars(&mut lp, &subset);
        let y = lp.add_var("y", SignRestriction::Free);
        let delta = lp.add_var("delta", SignRestriction::Free);
        for mut row in margin_rows(a, &subset, 2) {
            row[delta] = -Rational::one();
            lp.constrain(row, Relation::GreaterEq, Rational::zero())?;
        }
        let mut cap = vec![Rational::zero(); width + 2];
        cap[delta] = Rational::one();
        lp.constrain(cap, Relation::LessEq, Rational::one())?;
        for (i, mut row) in coordinate_rows(a, &subset, 2).into_iter().enumerate() {
            if c.contains(i) {
                row[y] = match sense {
                    BoundSense::Lower => Rational::one(),
                    BoundSense::Upper => -Rational::one(),
                };
            }
            let rhs = match sense {
                BoundSense::Lower => x.get(i).clone(),
                BoundSense::Upper => -x.get(i),
            };
            let rhs = if c.contains(i) { rhs } else { Rational::zero() };
            lp.constrain(row, Relation::LessEq, rhs)?;
        }
        let mut objective = vec![Rational::zero(); width + 2];
        objective[delta] = Rational::one();
        lp.set_objective(objective.clone(), Direction::Maximize)?;
        match lp.solve()? {
            LpOutcome::Optimal { value, .. } if value.is_positive() => {}
            LpOutcome::Optimal { .. } | LpOutcome::Infeasible { .. } => continue,
            LpOutcome::Unbounded { .. } => {
                return Err(Error::Internal("capped margin program reported unbounded".into()))
            }
        }
        // Second pass: optimize y over the closure (margins >= 0).
        let mut lp = LinearProgram::new();
        add_bet_vars(&mut lp, &subset);
        let y = lp.add_var("y", SignRestriction::Free);
        for row in margin_rows(a, &subset, 1) {
            lp.constrain(row, Relation::GreaterEq, Rational::zero())?;
        }
        for (i, mut row) in coordinate_rows(a, &subset, 1).into_iter().enumerate() {
            if c.contains(i) {
                row[y] = match sense {
                    BoundSense::Lower => Rational::one(),
                    BoundSense::Upper => -Rational::one(),
                };
            }
            let rhs = match sense {
                BoundSense::Lower => x.get(i).clone(),
                BoundSense::Upper => -x.get(i),
            };
            let rhs = if c.contains(i) { rhs } else { Rational::zero() };
            lp.constrain(row, Relation::LessEq, rhs)?;
        }
        let mut objective = vec![Rational::zero(); width + 1];
        objective[y] = Rational::one();
        let direction = match sense {
            BoundSense::Lower => Direction::Maximize,
            BoundSense::Upper => Direction::Minimize,
        };
        lp.set_objective(objective, direction)?;
        match lp.solve()? {
            LpOutcome::Optimal { value, .. } => candidates.push(ExtReal::Finite(value)),
            LpOutcome::Unbounded { .. } => {
                return Ok(match sense {
                    BoundSense::Lower => ExtReal::PlusInf,
                    BoundSense::Upper => ExtReal::MinusInf,
                });
            }
            LpOutcome::Infeasible { .. } => {
                return Err(Error::Internal(
                    "bound program lost a point feasible in the margin pass".into(),
                ));
            }
        }
    }
    Ok(match sense {
        BoundSense::Lower => ExtReal::sup(candidates),
        BoundSense::Upper => ExtReal::inf(candidates),
    })
}

/// Evaluates `X` given `C` against a coherent assessment: the naturally
/// induced conditional expectation of the generated preorder. Errors on an
/// incoherent assessment and on a zero conditioning event.
pub fn extend(
    a: &Assessment,
    x: &RandomQuantity,
    c: &Event,
    budget: SubsetBudget,
) -> Result<ExpectationResult> {
    if x.dim() != a.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, got: x.dim() });
    }
    if c.dim() != a.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, got: c.dim() });
    }
    if c.is_zero() {
        return Err(Error::InvalidInput("conditioning event must be nonzero".into()));
    }
    if let CoherenceVerdict::Incoherent(_) = check_coherence(a, budget)? {
        return Err(Error::IncoherentAssessment);
    }
    let lower = assessment_bound(a, budget, x, c, BoundSense::Lower)?;
    let upper = assessment_bound(a, budget, x, c, BoundSense::Upper)?;
    Ok(ExpectationResult::from_bounds(lower, upper))
}
