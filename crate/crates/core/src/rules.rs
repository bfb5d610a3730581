//! Verifiers for the laws of conditional expectation.
//!
//! Each rule is a conditional statement about expectations induced by a
//! plausibility preorder: *if* the stated guards hold for the supplied
//! arguments, *then* the stated conclusion must hold. [`verify_rule`]
//! evaluates one rule on one argument tuple and reports:
//!
//! - [`RuleOutcome::Holds`] — guards satisfied, conclusion verified;
//! - [`RuleOutcome::PreconditionUnmet`] — some guard fails, so the rule
//!   says nothing about these arguments;
//! - [`RuleOutcome::Violation`] — guards satisfied but the conclusion
//!   fails, which would disprove the surrounding theory on this instance.
//!
//! Expectations conditioned on the zero event are treated as nonexistent,
//! so such guards come out unmet rather than erroring. Guards of the form
//! "there is a real `p` such that ..." search the caller-supplied `p`
//! first and then the built-in ladder `1/2, 1, 2, 4`; a failed search
//! reports the precondition as unmet (the search is sound but finite).
//!
//! [`fuzz_rules`] drives every rule over deterministic pseudorandom
//! argument tuples and tallies the outcomes; any violation is returned
//! with enough detail to replay it.

use rand_chacha::ChaCha8Rng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::algebra::{Event, RandomQuantity};
use crate::error::{Error, Result};
use crate::expectation::{conditional_expectation, ExpectationResult};
use crate::extreal::ExtReal;
use crate::preorder::Preorder;
use crate::rational::Rational;

/// The verifiable laws, in presentation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleId {
    Consistency,
    RealAdditivity,
    GeneralAdditivity,
    Homogeneity,
    Monotonicity,
    MinMax,
    CompletenessZero,
    CompletenessOne,
    Subadditivity,
    BayesChain,
    BayesChainZeroE,
    BayesChainZeroP,
    BayesChainInfE,
    BayesCond,
    BayesCondZeroE,
    BayesCondInfE,
    BayesCondZeroP,
    BayesPForm,
    BayesPZeroE,
    BayesPInfE,
}

pub const RULE_COUNT: usize = 20;

impl RuleId {
    pub fn all() -> [RuleId; RULE_COUNT] {
        use RuleId::*;
        [
            Consistency,
            RealAdditivity,
            GeneralAdditivity,
            Homogeneity,
            Monotonicity,
            MinMax,
            CompletenessZero,
            CompletenessOne,
            Subadditivity,
            BayesChain,
            BayesChainZeroE,
            BayesChainZeroP,
            BayesChainInfE,
            BayesCond,
            BayesCondZeroE,
            BayesCondInfE,
            BayesCondZeroP,
            BayesPForm,
            BayesPZeroE,
            BayesPInfE,
        ]
    }

    pub fn name(&self) -> &'static str {
        use RuleId::*;
        match self {
            Consistency => "consistency",
            RealAdditivity => "real_additivity",
            GeneralAdditivity => "general_additivity",
            Homogeneity => "homogeneity",
            Monotonicity => "monotonicity",
            MinMax => "min_max",
            CompletenessZero => "completeness_zero",
            CompletenessOne => "completeness_one",
            Subadditivity => "subadditivity",
            BayesChain => "bayes_chain",
            BayesChainZeroE => "bayes_chain_zero_e",
            BayesChainZeroP => "bayes_chain_zero_p",
            BayesChainInfE => "bayes_chain_inf_e",
            BayesCond => "bayes_cond",
            BayesCondZeroE => "bayes_cond_zero_e",
            BayesCondInfE => "bayes_cond_inf_e",
            BayesCondZeroP => "bayes_cond_zero_p",
            BayesPForm => "bayes_p_form",
            BayesPZeroE => "bayes_p_zero_e",
            BayesPInfE => "bayes_p_inf_e",
        }
    }
}

impl std::fmt::Display for RuleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleId::all()
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown rule: {s}")))
    }
}

pub fn all_rule_ids() -> [RuleId; RULE_COUNT] {
    RuleId::all()
}

/// Argument tuple shared by every rule; each rule reads the parts it
/// mentions. `events` feeds subadditivity, `p` seeds the bounded-`p`
/// searches, `r` is the scalar of the additivity and homogeneity laws.
#[derive(Clone, Debug)]
pub struct RuleArgs {
    pub x: RandomQuantity,
    pub y: RandomQuantity,
    pub b: Event,
    pub c: Event,
    pub d: Event,
    pub r: Rational,
    pub p: Option<Rational>,
    pub events: Vec<Event>,
}

impl RuleArgs {
    /// Neutral arguments on dimension `dim`: zero quantities, sure events.
    pub fn neutral(dim: usize) -> Result<Self> {
        Ok(RuleArgs {
            x: RandomQuantity::zero(dim)?,
            y: RandomQuantity::zero(dim)?,
            b: Event::all(dim)?,
            c: Event::all(dim)?,
            d: Event::all(dim)?,
            r: Rational::zero(),
            p: None,
            events: Vec::new(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleOutcome {
    Holds,
    PreconditionUnmet(String),
    Violation(String),
}

fn unmet(reason: &str) -> RuleOutcome {
    RuleOutcome::PreconditionUnmet(reason.to_string())
}

/// Expectation with the zero event treated as "no expectation exists".
fn sem_cexp(p: &Preorder, x: &RandomQuantity, c: &Event) -> Result<ExpectationResult> {
    if c.is_zero() {
        return Ok(ExpectationResult::Undefined {
            lower: ExtReal::MinusInf,
            upper: ExtReal::PlusInf,
        });
    }
    conditional_expectation(p, x, c)
}

fn sem_prob(p: &Preorder, a: &Event, c: &Event) -> Result<ExpectationResult> {
    sem_cexp(p, &a.to_quantity(), c)
}

fn nonstrict_given(p: &Preorder, x: &RandomQuantity, y: &RandomQuantity, c: &Event) -> Result<bool> {
    p.conditional(c)?.nonstrict(x, y)
}

/// Candidate values for an existential `p` guard: the caller's value
/// first, then the built-in ladder.
fn p_candidates(args: &RuleArgs, positive_only: bool) -> Vec<Rational> {
    let mut out = Vec::with_capacity(5);
    if let Some(p) = &args.p {
        out.push(p.clone());
    }
    out.push(Rational::new(1, 2).expect("2 is nonzero"));
    out.push(Rational::from_int(1));
    out.push(Rational::from_int(2));
    out.push(Rational::from_int(4));
    out.retain(|p| if positive_only { p.is_positive() } else { !p.is_zero() });
    out.dedup();
    out
}

/// `exists p > 0 with p <~ C given D`: the event is conditionally
/// non-negligible at scale `p`.
fn find_event_floor(p: &Preorder, args: &RuleArgs, c: &Event, d: &Event) -> Result<Option<Rational>> {
    let dim = p.dim();
    let cq = c.to_quantity();
    for cand in p_candidates(args, true) {
        let floor = RandomQuantity::constant(cand.clone(), dim)?;
        if nonstrict_given(p, &floor, &cq, d)? {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

/// `exists p > 0 with -p <~ Z <~ p given D`: the quantity is conditionally
/// bounded at scale `p`.
fn find_bound(p: &Preorder, args: &RuleArgs, z: &RandomQuantity, d: &Event) -> Result<Option<Rational>> {
    let dim = p.dim();
    for cand in p_candidates(args, true) {
        let upper = RandomQuantity::constant(cand.clone(), dim)?;
        let lower = upper.neg();
        if nonstrict_given(p, &lower, z, d)? && nonstrict_given(p, z, &upper, d)? {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

fn check_defined_equals(
    actual: &ExpectationResult,
    expected: &ExtReal,
    claim: &str,
) -> RuleOutcome {
    match actual.defined_value() {
        Some(v) if v == expected => RuleOutcome::Holds,
        Some(v) => RuleOutcome::Violation(format!("{claim}: got {v}, expected {expected}")),
        None => RuleOutcome::Violation(format!("{claim}: got {actual:?}, expected {expected}")),
    }
}

/// Evaluates one rule on one argument tuple.
pub fn verify_rule(p: &Preorder, rule: RuleId, args: &RuleArgs) -> Result<RuleOutcome> {
    let dim = p.dim();
    for q in [&args.x, &args.y] {
        if q.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: q.dim() });
        }
    }
    for e in [&args.b, &args.c, &args.d].into_iter().chain(&args.events) {
        if e.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: e.dim() });
        }
    }
    let x = &args.x;
    let c = &args.c;
    let d = &args.d;
    let cd = c.and(d)?;
    let zero = ExtReal::zero();
    let one = ExtReal::from_int(1);
    Ok(match rule {
        RuleId::Consistency => {
            let plain = sem_cexp(p, x, c)?;
            let restricted = sem_cexp(p, &x.mul_event(c)?, c)?;
            match (plain.defined_value(), restricted.defined_value()) {
                (Some(a), Some(b)) if a == b => RuleOutcome::Holds,
                (None, None) => RuleOutcome::Holds,
                (a, b) => RuleOutcome::Violation(format!(
                    "E(X|C) and E(X*C|C) disagree: {a:?} vs {b:?}"
                )),
            }
        }
        RuleId::RealAdditivity => {
            let Some(v) = sem_cexp(p, x, c)?.defined_value().cloned() else {
                return Ok(unmet("E(X|C) does not exist"));
            };
            let expected = v
                .checked_add(&ExtReal::Finite(args.r.clone()))
                .expect("a real added to any extended real is defined");
            let shifted = x.add(&RandomQuantity::constant(args.r.clone(), dim)?)?;
            check_defined_equals(&sem_cexp(p, &shifted, c)?, &expected, "E(X + r|C)")
        }
        RuleId::GeneralAdditivity => {
            let Some(ex) = sem_cexp(p, x, c)?.defined_value().cloned() else {
                return Ok(unmet("E(X|C) does not exist"));
            };
            let Some(ey) = sem_cexp(p, &args.y, c)?.defined_value().cloned() else {
                return Ok(unmet("E(Y|C) does not exist"));
            };
            let Some(expected) = ex.checked_add(&ey) else {
                return Ok(unmet("E(X|C) + E(Y|C) is undefined (opposite infinities)"));
            };
            let sum = x.add(&args.y)?;
            check_defined_equals(&sem_cexp(p, &sum, c)?, &expected, "E(X + Y|C)")
        }
        RuleId::Homogeneity => {
            let Some(v) = sem_cexp(p, x, c)?.defined_value().cloned() else {
                return Ok(unmet("E(X|C) does not exist"));
            };
            let Some(expected) = ExtReal::Finite(args.r.clone()).checked_mul(&v) else {
                return Ok(unmet("r * E(X|C) is undefined (zero times infinity)"));
            };
            check_defined_equals(&sem_cexp(p, &x.scale(&args.r), c)?, &expected, "E(r*X|C)")
        }
        RuleId::Monotonicity => {
            if !args.b.le(c)? {
                return Ok(unmet("B is not below C in the natural order"));
            }
            let Some(pb) = sem_prob(p, &args.b, d)?.defined_value().cloned() else {
                return Ok(unmet("P(B|D) does not exist"));
            };
            let Some(pc) = sem_prob(p, c, d)?.defined_value().cloned() else {
                return Ok(unmet("P(C|D) does not exist"));
            };
            if pb <= pc {
                RuleOutcome::Holds
            } else {
                RuleOutcome::Violation(format!("P(B|D) = {pb} exceeds P(C|D) = {pc}"))
            }
        }
        RuleId::MinMax => {
            let Some(pc) = sem_prob(p, c, d)?.defined_value().cloned() else {
                return Ok(unmet("P(C|D) does not exist"));
            };
            if pc < zero || pc > one {
                return Ok(RuleOutcome::Violation(format!("P(C|D) = {pc} is outside [0, 1]")));
            }
            let p0 = sem_prob(p, &Event::none(dim)?, d)?;
            if p0.defined_value() != Some(&zero) {
                return Ok(RuleOutcome::Violation(format!("P(0|D) = {p0:?}, expected 0")));
            }
            let p1 = sem_prob(p, &Event::all(dim)?, d)?;
            if p1.defined_value() != Some(&one) {
                return Ok(RuleOutcome::Violation(format!("P(1|D) = {p1:?}, expected 1")));
            }
            let pd = sem_prob(p, d, d)?;
            if pd.defined_value() != Some(&one) {
                return Ok(RuleOutcome::Violation(format!("P(D|D) = {pd:?}, expected 1")));
            }
            RuleOutcome::Holds
        }
        RuleId::CompletenessZero => {
            match sem_prob(p, &args.b, d)?.defined_value() {
                Some(v) if *v == zero => {}
                _ => return Ok(unmet("P(B|D) is not zero")),
            }
            if !c.le(&args.b)? {
                return Ok(unmet("C is not below B in the natural order"));
            }
            check_defined_equals(&sem_prob(p, c, d)?, &zero, "P(C|D)")
        }
        RuleId::CompletenessOne => {
            match sem_prob(p, &args.b, d)?.defined_value() {
                Some(v) if *v == one => {}
                _ => return Ok(unmet("P(B|D) is not one")),
            }
            if !args.b.le(c)? {
                return Ok(unmet("B is not below C in the natural order"));
            }
            check_defined_equals(&sem_prob(p, c, d)?, &one, "P(C|D)")
        }
        RuleId::Subadditivity => {
            let mut union = Event::none(dim)?;
            let mut sum = ExtReal::zero();
            for e in &args.events {
                union = union.or(e)?;
                let Some(pe) = sem_prob(p, e, d)?.defined_value().cloned() else {
                    return Ok(unmet("some P(A_i|D) does not exist"));
                };
                let Some(next) = sum.checked_add(&pe) else {
                    return Ok(unmet("the probability sum is undefined"));
                };
                sum = next;
            }
            let Some(pu) = sem_prob(p, &union, d)?.defined_value().cloned() else {
                return Ok(unmet("P(A_1 or ... or A_k|D) does not exist"));
            };
            if pu <= sum {
                RuleOutcome::Holds
            } else {
                RuleOutcome::Violation(format!(
                    "P(union|D) = {pu} exceeds the sum of parts {sum}"
                ))
            }
        }
        RuleId::BayesChain => {
            let Some(e) = sem_cexp(p, x, &cd)?.defined_value().cloned() else {
                return Ok(unmet("E(X|C*D) does not exist"));
            };
            let Some(q) = sem_prob(p, c, d)?.defined_value().cloned() else {
                return Ok(unmet("P(C|D) does not exist"));
            };
            let Some(expected) = e.checked_mul(&q) else {
                return Ok(unmet("E(X|C*D) * P(C|D) is undefined (zero times infinity)"));
            };
            check_defined_equals(&sem_cexp(p, &x.mul_event(c)?, d)?, &expected, "E(X*C|D)")
        }
        RuleId::BayesChainZeroE => {
            match sem_cexp(p, x, &cd)?.defined_value() {
                Some(v) if *v == zero => {}
                _ => return Ok(unmet("E(X|C*D) is not zero")),
            }
            check_defined_equals(&sem_cexp(p, &x.mul_event(c)?, d)?, &zero, "E(X*C|D)")
        }
        RuleId::BayesChainZeroP => {
            match sem_prob(p, c, d)?.defined_value() {
                Some(v) if *v == zero => {}
                _ => return Ok(unmet("P(C|D) is not zero")),
            }
            if find_bound(p, args, x, &cd)?.is_none() {
                return Ok(unmet("no p > 0 with -p <~ X <~ p given C*D was found"));
            }
            check_defined_equals(&sem_cexp(p, &x.mul_event(c)?, d)?, &zero, "E(X*C|D)")
        }
        RuleId::BayesChainInfE => {
            let e = match sem_cexp(p, x, &cd)?.defined_value().cloned() {
                Some(v) if !v.is_finite() => v,
                _ => return Ok(unmet("E(X|C*D) is not infinite")),
            };
            if find_event_floor(p, args, c, d)?.is_none() {
                return Ok(unmet("no p > 0 with p <~ C given D was found"));
            }
            check_defined_equals(&sem_cexp(p, &x.mul_event(c)?, d)?, &e, "E(X*C|D)")
        }
        RuleId::BayesCond => {
            let Some(num) = sem_cexp(p, &x.mul_event(c)?, d)?.defined_value().cloned() else {
                return Ok(unmet("E(X*C|D) does not exist"));
            };
            let Some(den) = sem_prob(p, c, d)?.defined_value().cloned() else {
                return Ok(unmet("P(C|D) does not exist"));
            };
            let Some(expected) = num.checked_div(&den) else {
                return Ok(unmet("E(X*C|D) / P(C|D) is undefined"));
            };
            check_defined_equals(&sem_cexp(p, x, &cd)?, &expected, "E(X|C*D)")
        }
        RuleId::BayesCondZeroE => {
            match sem_cexp(p, &x.mul_event(c)?, d)?.defined_value() {
                Some(v) if *v == zero => {}
                _ => return Ok(unmet("E(X*C|D) is not zero")),
            }
            if find_event_floor(p, args, c, d)?.is_none() {
                return Ok(unmet("no p > 0 with p <~ C given D was found"));
            }
            check_defined_equals(&sem_cexp(p, x, &cd)?, &zero, "E(X|C*D)")
        }
        RuleId::BayesCondInfE => {
            let e = match sem_cexp(p, &x.mul_event(c)?, d)?.defined_value().cloned() {
                Some(v) if !v.is_finite() => v,
                _ => return Ok(unmet("E(X*C|D) is not infinite")),
            };
            check_defined_equals(&sem_cexp(p, x, &cd)?, &e, "E(X|C*D)")
        }
        RuleId::BayesCondZeroP => {
            match sem_prob(p, c, d)?.defined_value() {
                Some(v) if *v == zero => {}
                _ => return Ok(unmet("P(C|D) is not zero")),
            }
            let ones = Event::all(dim)?.to_quantity();
            let mut found = Vec::new();
            for cand in p_candidates(args, false) {
                let scaled = x.scale(&cand).mul_event(c)?;
                if nonstrict_given(p, &ones, &scaled, d)? {
                    found.push(cand);
                }
            }
            if found.is_empty() {
                return Ok(unmet("no real p with 1 <~ p*X*C given D was found"));
            }
            for cand in found {
                let expected = if cand.is_positive() { ExtReal::PlusInf } else { ExtReal::MinusInf };
                let outcome =
                    check_defined_equals(&sem_cexp(p, x, &cd)?, &expected, "E(X|C*D)");
                if outcome != RuleOutcome::Holds {
                    return Ok(outcome);
                }
            }
            RuleOutcome::Holds
        }
        RuleId::BayesPForm => {
            let Some(num) = sem_cexp(p, &x.mul_event(c)?, d)?.defined_value().cloned() else {
                return Ok(unmet("E(X*C|D) does not exist"));
            };
            let Some(den) = sem_cexp(p, x, &cd)?.defined_value().cloned() else {
                return Ok(unmet("E(X|C*D) does not exist"));
            };
            let Some(expected) = num.checked_div(&den) else {
                return Ok(unmet("E(X*C|D) / E(X|C*D) is undefined"));
            };
            check_defined_equals(&sem_prob(p, c, d)?, &expected, "P(C|D)")
        }
        RuleId::BayesPZeroE => {
            match sem_cexp(p, &x.mul_event(c)?, d)?.defined_value() {
                Some(v) if *v == zero => {}
                _ => return Ok(unmet("E(X*C|D) is not zero")),
            }
            let ones = Event::all(dim)?.to_quantity();
            let mut witnessed = false;
            for cand in p_candidates(args, false) {
                if nonstrict_given(p, &ones, &x.scale(&cand), &cd)? {
                    witnessed = true;
                    break;
                }
            }
            if !witnessed {
                return Ok(unmet("no real p with 1 <~ p*X given C*D was found"));
            }
            check_defined_equals(&sem_prob(p, c, d)?, &zero, "P(C|D)")
        }
        RuleId::BayesPInfE => {
            match sem_cexp(p, x, &cd)?.defined_value() {
                Some(v) if !v.is_finite() => {}
                _ => return Ok(unmet("E(X|C*D) is not infinite")),
            }
            if find_bound(p, args, &x.mul_event(c)?, d)?.is_none() {
                return Ok(unmet("no p > 0 with -p <~ X*C <~ p given D was found"));
            }
            check_defined_equals(&sem_prob(p, c, d)?, &zero, "P(C|D)")
        }
    })
}

/// Outcome tallies for one rule across a fuzzing run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleTally {
    pub rule: RuleId,
    pub holds: u64,
    pub precondition_unmet: u64,
    pub violations: u64,
}

/// One violated instance, replayable from the run's seed and trial index.
#[derive(Clone, Debug, Serialize)]
pub struct RuleViolation {
    pub rule: RuleId,
    pub trial: u64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RuleReport {
    pub trials: u64,
    pub seed: u64,
    pub tallies: Vec<RuleTally>,
    pub violations: Vec<RuleViolation>,
}

fn sample_rational(rng: &mut ChaCha8Rng, span: i64, max_denom: i64) -> Rational {
    let numer = rng.gen_range(-span..=span);
    let denom = rng.gen_range(1..=max_denom);
    Rational::new(numer, denom).expect("denominator range starts at one")
}

fn sample_quantity(rng: &mut ChaCha8Rng, dim: usize) -> RandomQuantity {
    RandomQuantity::new((0..dim).map(|_| sample_rational(rng, 5, 3)).collect())
        .expect("dimension checked by the caller")
}

fn sample_event(rng: &mut ChaCha8Rng, dim: usize) -> Event {
    let roll: u8 = rng.gen_range(0..8);
    let bits = match roll {
        0 => vec![true; dim],
        1 => vec![false; dim],
        _ => (0..dim).map(|_| rng.gen_bool(0.5)).collect(),
    };
    Event::from_bits(bits).expect("dimension checked by the caller")
}

fn sample_args(rng: &mut ChaCha8Rng, dim: usize) -> Result<RuleArgs> {
    let c = sample_event(rng, dim);
    let raw = sample_event(rng, dim);
    // Bias B so the completeness and monotonicity guards fire regularly.
    let b = match rng.gen_range(0..3u8) {
        0 => raw.and(&c)?,
        1 => raw.or(&c)?,
        _ => raw,
    };
    let p = if rng.gen_bool(0.5) {
        let base = sample_rational(rng, 4, 2);
        Some(if base.is_zero() { Rational::one() } else { base })
    } else {
        None
    };
    let events = (0..rng.gen_range(0..=4usize)).map(|_| sample_event(rng, dim)).collect();
    Ok(RuleArgs {
        x: sample_quantity(rng, dim),
        y: sample_quantity(rng, dim),
        b,
        c,
        d: sample_event(rng, dim),
        r: sample_rational(rng, 3, 2),
        p,
        events,
    })
}

/// Runs every rule against `trials` deterministic argument tuples.
pub fn fuzz_rules(p: &Preorder, trials: u64, seed: u64) -> Result<RuleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tallies: Vec<RuleTally> = RuleId::all()
        .into_iter()
        .map(|rule| RuleTally { rule, holds: 0, precondition_unmet: 0, violations: 0 })
        .collect();
    let mut violations = Vec::new();
    for trial in 0..trials {
        let args = sample_args(&mut rng, p.dim())?;
        for (slot, rule) in RuleId::all().into_iter().enumerate() {
            match verify_rule(p, rule, &args)? {
                RuleOutcome::Holds => tallies[slot].holds += 1,
                RuleOutcome::PreconditionUnmet(_) => tallies[slot].precondition_unmet += 1,
                RuleOutcome::Violation(detail) => {
                    tallies[slot].violations += 1;
                    violations.push(RuleViolation { rule, trial, detail });
                }
            }
        }
    }
    Ok(RuleReport { trials, seed, tallies, violations })
}
