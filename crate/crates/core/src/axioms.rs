//! Finite tables for three classical axiom systems of probability.
//!
//! Each table is an explicit finite function from events (or quantities)
//! to rational values, checked directly against its system's axioms:
//!
//! - **Kolmogorov**: one unconditional value per event on a domain closed
//!   under complement and meet; nonnegativity, unit mass, and finite
//!   additivity on disjoint pairs.
//! - **Cox**: conditional values, total on `F x F0` where `F` is an event
//!   domain closed under complement and meet and `F0` excludes the zero
//!   event; positivity on the diagonal, the negation law, and the product
//!   (Bayes) law. Valid tables additionally get derived-fact diagnostics:
//!   the facts follow from the axioms, so a diagnostic failure on a valid
//!   table would expose a defect in this checker, not in the table.
//! - **Dupré–Tipler**: conditional values for arbitrary quantities with a
//!   condition set closed under disjunction; existence and nonnegativity
//!   on every event, positivity on the diagonal, and spot-checks of
//!   homogeneity, additivity, and the product law on the listed entries.
//!
//! Structural defects (non-closed domains, missing pairs, conflicting
//! duplicates, zero conditions) are input errors; only genuine law
//! failures count as violations. Every table recasts as an [`Assessment`]
//! via `to_assessment`, connecting these systems to the coherence check:
//! a table passing its axioms yields a coherent assessment.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{Event, RandomQuantity};
use crate::coherence::{Assessment, AssessmentEntry};
use crate::error::{Error, Result};
use crate::extreal::ExtReal;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KolmogorovEntry {
    pub event: Event,
    pub value: Rational,
}

/// Unconditional event values `PV(A)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KolmogorovTable {
    pub dim: usize,
    pub entries: Vec<KolmogorovEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoxEntry {
    pub event: Event,
    pub given: Event,
    pub value: Rational,
}

/// Conditional event values `PV(A|C)`, total on `F x F0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoxTable {
    pub dim: usize,
    pub entries: Vec<CoxEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DtEntry {
    #[serde(rename = "x")]
    pub quantity: RandomQuantity,
    pub given: Event,
    pub value: Rational,
}

/// Conditional quantity values `PV(X|C)` with a disjunction-closed
/// condition set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DupreTiplerTable {
    pub dim: usize,
    pub entries: Vec<DtEntry>,
}

/// Verdict of an axiom check: the first violated axiom with the instance
/// that breaks it, or validity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum AxiomVerdict {
    Valid,
    Violation { axiom: String, instance: String },
}

impl AxiomVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, AxiomVerdict::Valid)
    }

    fn violation(axiom: &str, instance: String) -> Self {
        AxiomVerdict::Violation { axiom: axiom.to_string(), instance }
    }
}

/// One derived fact evaluated as a diagnostic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DerivedCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub verdict: AxiomVerdict,
    pub diagnostics: Vec<DerivedCheck>,
}

impl AxiomReport {
    fn valid_with(diagnostics: Vec<DerivedCheck>) -> Self {
        AxiomReport { verdict: AxiomVerdict::Valid, diagnostics }
    }

    fn violated(verdict: AxiomVerdict) -> Self {
        AxiomReport { verdict, diagnostics: Vec::new() }
    }
}

fn check_event_dim(dim: usize, e: &Event) -> Result<()> {
    if e.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: e.dim() });
    }
    Ok(())
}

/// Checks a Kolmogorov table: domain closure under complement and meet,
/// nonnegativity, unit mass on the sure event, and additivity on disjoint
/// pairs. The first failure is reported in a fixed order, so the verdict
/// is deterministic.
pub fn kolmogorov_check(table: &KolmogorovTable) -> Result<AxiomReport> {
    if table.dim == 0 {
        return Err(Error::InvalidInput("dimension 0 is not allowed".into()));
    }
    let mut map: BTreeMap<Event, Rational> = BTreeMap::new();
    for entry in &table.entries {
        check_event_dim(table.dim, &entry.event)?;
        match map.get(&entry.event) {
            Some(v) if *v == entry.value => {}
            Some(v) => {
                return Err(Error::InvalidInput(format!(
                    "conflicting values {v} and {} for the same event",
                    entry.value
                )))
            }
            None => {
                map.insert(entry.event.clone(), entry.value.clone());
            }
        }
    }
    for a in map.keys() {
        if !map.contains_key(&a.not()) {
            return Ok(AxiomReport::violated(AxiomVerdict::violation(
                "closure",
                format!("complement of {a:?} is missing"),
            )));
        }
    }
    for a in map.keys() {
        for b in map.keys() {
            let meet = a.and(b)?;
            if !map.contains_key(&meet) {
                return Ok(AxiomReport::violated(AxiomVerdict::violation(
                    "closure",
                    format!("meet of {a:?} and {b:?} is missing"),
                )));
            }
        }
    }
    for (a, v) in &map {
        if v.is_negative() {
            return Ok(AxiomReport::violated(AxiomVerdict::violation(
                "nonnegativity",
                format!("PV({a:?}) = {v}"),
            )));
        }
    }
    let sure = Event::all(table.dim)?;
    match map.get(&sure) {
        Some(v) if *v == Rational::one() => {}
        Some(v) => {
            return Ok(AxiomReport::violated(AxiomVerdict::violation(
                "unit",
                format!("PV(1) = {v}"),
            )))
        }
        None => {
            return Ok(AxiomReport::violated(AxiomVerdict::violation(
                "unit",
                "the sure event is not in the domain".into(),
            )))
        }
    }
    for (a, va) in &map {
        for (b, vb) in &map {
            if !a.disjoint(b)? {
                continue;
            }
            let join = a.or(b)?;
            let expected = va + vb;
            let got = &map[&join];
            if *got != expected {
                return Ok(AxiomReport::violated(AxiomVerdict::violation(
                    "additivity",
                    format!("PV({a:?} or {b:?}) = {got}, expected {va} + {vb} = {expected}"),
                )));
            }
        }
    }
    Ok(AxiomReport::valid_with(Vec::new()))
}

struct CoxView {
    map: BTreeMap<(Event, Event), Rational>,
    domain: BTreeSet<Event>,
    conditions: BTreeSet<Event>,
}

fn cox_view(table: &CoxTable) -> Result<CoxView> {
    if table.dim == 0 {
        return Err(Error::InvalidInput("dimension 0 is not allowed".into()));
    }
    if table.entries.is_empty() {
        return Err(Error::InvalidInput("table has no entries".into()));
    }
    let mut map: BTreeMap<(Event, Event), Rational> = BTreeMap::new();
    let mut domain: BTreeSet<Event> = BTreeSet::new();
    for entry in &table.entries {
        check_event_dim(table.dim, &entry.event)?;
        check_event_dim(table.dim, &entry.given)?;
        if entry.given.is_zero() {
            return Err(Error::InvalidInput("conditioning event must be nonzero".into()));
        }
        domain.insert(entry.event.clone());
        domain.insert(entry.given.clone());
        let key = (entry.event.clone(), entry.given.clone());
        match map.get(&key) {
            Some(v) if *v == entry.value => {}
            Some(v) => {
                return Err(Error::InvalidInput(format!(
                    "conflicting values {v} and {} for the same conditional pair",
                    entry.value
                )))
            }
            None => {
                map.insert(key, entry.value.clone());
            }
        }
    }
    for a in &domain {
        if !domain.contains(&a.not()) {
            return Err(Error::InvalidInput(format!(
                "domain is not closed under complement: {:?} is missing",
                a.not()
            )));
        }
    }
    let pairs: Vec<(Event, Event)> = domain
        .iter()
        .flat_map(|a| domain.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    for (a, b) in pairs {
        let meet = a.and(&b)?;
        if !domain.contains(&meet) {
            return Err(Error::InvalidInput(format!(
                "domain is not closed under meet: {meet:?} is missing"
            )));
        }
    }
    let conditions: BTreeSet<Event> = domain.iter().filter(|e| !e.is_zero()).cloned().collect();
    if conditions.is_empty() {
        return Err(Error::InvalidInput("no nonzero events in the domain".into()));
    }
    for a in &domain {
        for c in &conditions {
            if !map.contains_key(&(a.clone(), c.clone())) {
                return Err(Error::InvalidInput(format!(
                    "table is not total: PV({a:?}|{c:?}) is missing"
                )));
            }
        }
    }
    Ok(CoxView { map, domain, conditions })
}

/// Checks a Cox table: positivity on the diagonal, the negation law, and
/// the product law, in that order; valid tables also carry derived-fact
/// diagnostics.
pub fn cox_check(table: &CoxTable) -> Result<AxiomReport> {
    let view = cox_view(table)?;
    let CoxView { map, domain, conditions } = &view;
    let one = Rational::one();
    for c in conditions {
        let v = &map[&(c.clone(), c.clone())];
        if !v.is_positive() {
            return Ok(AxiomReport::violated(AxiomVerdict::violation(
                "positivity",
                format!("PV({c:?}|{c:?}) = {v}"),
            )));
        }
    }
    for a in domain {
        for c in conditions {
            let va = &map[&(a.clone(), c.clone())];
            let vn = &map[&(a.not(), c.clone())];
            if va + vn != one {
                return Ok(AxiomReport::violated(AxiomVerdict::violation(
                    "negation",
                    format!("PV({a:?}|{c:?}) + PV(not {a:?}|{c:?}) = {}", va + vn),
                )));
            }
        }
    }
    for a in domain {
        for c in domain {
            for d in conditions {
                let cd = c.and(d)?;
                if cd.is_zero() {
                    continue;
                }
                let lhs = &map[&(a.and(c)?, d.clone())];
                let rhs = &map[&(a.clone(), cd.clone())] * &map[&(c.clone(), d.clone())];
                if *lhs != rhs {
                    return Ok(AxiomReport::violated(AxiomVerdict::violation(
                        "product",
                        format!(
                            "PV({a:?} and {c:?}|{d:?}) = {lhs}, expected PV({a:?}|{:?}) * PV({c:?}|{d:?}) = {rhs}",
                            cd
                        ),
                    )));
                }
            }
        }
    }
    Ok(AxiomReport::valid_with(cox_diagnostics(&view)?))
}

/// Facts derivable from the Cox axioms, evaluated on a table that already
/// passed them.
fn cox_diagnostics(view: &CoxView) -> Result<Vec<DerivedCheck>> {
    let CoxView { map, domain, conditions } = view;
    let one = Rational::one();
    let mut out = Vec::new();
    let mut push = |name: &str, failure: Option<String>, checked: usize| {
        out.push(match failure {
            None => DerivedCheck {
                name: name.to_string(),
                holds: true,
                detail: format!("{checked} instances checked"),
            },
            Some(detail) => DerivedCheck { name: name.to_string(), holds: false, detail },
        });
    };

    let mut checked = 0;
    let mut failure = None;
    for c in conditions {
        checked += 1;
        let v = &map[&(c.clone(), c.clone())];
        if *v != one {
            failure = Some(format!("PV({c:?}|{c:?}) = {v}"));
            break;
        }
    }
    push("unit_on_self", failure, checked);

    let sure = domain.iter().find(|e| e.is_all());
    let nothing = domain.iter().find(|e| e.is_zero());
    let mut checked = 0;
    let mut failure = None;
    'outer: for c in conditions {
        if let Some(sure) = sure {
            checked += 1;
            let v = &map[&(sure.clone(), c.clone())];
            if *v != one {
                failure = Some(format!("PV(1|{c:?}) = {v}"));
                break 'outer;
            }
        }
        if let Some(nothing) = nothing {
            checked += 1;
            let v = &map[&(nothing.clone(), c.clone())];
            if !v.is_zero() {
                failure = Some(format!("PV(0|{c:?}) = {v}"));
                break 'outer;
            }
        }
    }
    push("certainty_and_impossibility", failure, checked);

    let mut checked = 0;
    let mut failure = None;
    'restriction: for a in domain {
        for c in conditions {
            checked += 1;
            let plain = &map[&(a.clone(), c.clone())];
            let meet = &map[&(a.and(c)?, c.clone())];
            if plain != meet {
                failure = Some(format!(
                    "PV({a:?} and {c:?}|{c:?}) = {meet}, expected PV({a:?}|{c:?}) = {plain}"
                ));
                break 'restriction;
            }
        }
    }
    push("restriction", failure, checked);

    let mut checked = 0;
    let mut failure = None;
    'sum: for a in domain {
        for b in domain {
            for c in conditions {
                checked += 1;
                let lhs = &map[&(a.or(b)?, c.clone())] + &map[&(a.and(b)?, c.clone())];
                let rhs = &map[&(a.clone(), c.clone())] + &map[&(b.clone(), c.clone())];
                if lhs != rhs {
                    failure = Some(format!(
                        "PV({a:?} or {b:?}|{c:?}) + PV({a:?} and {b:?}|{c:?}) = {lhs}, expected {rhs}"
                    ));
                    break 'sum;
                }
            }
        }
    }
    push("sum_rule", failure, checked);

    let mut checked = 0;
    let mut failure = None;
    'sub: for a in domain {
        for b in domain {
            for c in conditions {
                checked += 1;
                let lhs = &map[&(a.or(b)?, c.clone())];
                let rhs = &map[&(a.clone(), c.clone())] + &map[&(b.clone(), c.clone())];
                if *lhs > rhs {
                    failure = Some(format!("PV({a:?} or {b:?}|{c:?}) = {lhs} exceeds {rhs}"));
                    break 'sub;
                }
            }
        }
    }
    push("subadditivity", failure, checked);

    Ok(out)
}

/// Enumerates every event of the algebra; capped because the count is
/// `2^dim`.
fn all_events(dim: usize) -> Result<Vec<Event>> {
    const MAX_DIM: usize = 12;
    if dim > MAX_DIM {
        return Err(Error::ResourceLimit(format!(
            "event enumeration needs 2^{dim} events; the cap is dimension {MAX_DIM}"
        )));
    }
    let mut out = Vec::with_capacity(1usize << dim);
    for mask in 0..(1usize << dim) {
        out.push(Event::from_bits((0..dim).map(|i| mask & (1 << i) != 0).collect())?);
    }
    Ok(out)
}

/// Checks a Dupré–Tipler table: existence and nonnegativity of every
/// event's value under every condition, positivity on the diagonal, and
/// homogeneity, additivity, and product-law spot-checks over the listed
/// entries.
pub fn dupre_tipler_check(table: &DupreTiplerTable) -> Result<AxiomReport> {
    if table.dim == 0 {
        return Err(Error::InvalidInput("dimension 0 is not allowed".into()));
    }
    if table.entries.is_empty() {
        return Err(Error::InvalidInput("table has no entries".into()));
    }
    let mut map: BTreeMap<(RandomQuantity, Event), Rational> = BTreeMap::new();
    let mut conditions: BTreeSet<Event> = BTreeSet::new();
    for entry in &table.entries {
        if entry.quantity.dim() != table.dim {
            return Err(Error::DimensionMismatch {
                expected: table.dim,
                got: entry.quantity.dim(),
            });
        }
        check_event_dim(table.dim, &entry.given)?;
        if entry.given.is_zero() {
            return Err(Error::InvalidInput("conditioning event must be nonzero".into()));
        }
        conditions.insert(entry.given.clone());
        let key = (entry.quantity.clone(), entry.given.clone());
        match map.get(&key) {
            Some(v) if *v == entry.value => {}
            Some(v) => {
                return Err(Error::InvalidInput(format!(
                    "conflicting values {v} and {} for the same conditional pair",
                    entry.value
                )))
            }
            None => {
                map.insert(key, entry.value.clone());
            }
        }
    }
    let condition_list: Vec<Event> = conditions.iter().cloned().collect();
    for c in &condition_list {
        for d in &condition_list {
            let join = c.or(d)?;
            if !conditions.contains(&join) {
                return Err(Error::InvalidInput(format!(
                    "condition set is not closed under disjunction: {join:?} is missing"
                )));
            }
        }
    }
    let events = all_events(table.dim)?;
    for a in &events {
        for c in &conditions {
            match map.get(&(a.to_quantity(), c.clone())) {
                None => {
                    return Ok(AxiomReport::violated(AxiomVerdict::violation(
                        "existence",
                        format!("PV({a:?}|{c:?}) is missing"),
                    )))
                }
                Some(v) if v.is_negative() => {
                    return Ok(AxiomReport::violated(AxiomVerdict::violation(
                        "nonnegativity",
                        format!("PV({a:?}|{c:?}) = {v}"),
                    )))
                }
                Some(_) => {}
            }
        }
    }
    for c in &conditions {
        let v = &map[&(c.to_quantity(), c.clone())];
        if !v.is_positive() {
            return Ok(AxiomReport::violated(AxiomVerdict::violation(
                "positivity",
                format!("PV({c:?}|{c:?}) = {v}"),
            )));
        }
    }
    // Index the entries by condition for the spot-checks.
    let mut by_condition: BTreeMap<&Event, Vec<(&RandomQuantity, &Rational)>> = BTreeMap::new();
    for ((x, c), v) in &map {
        by_condition.entry(c).or_default().push((x, v));
    }
    for (c, list) in &by_condition {
        for (x, vx) in list {
            if x.is_zero() && !vx.is_zero() {
                return Ok(AxiomReport::violated(AxiomVerdict::violation(
                    "homogeneity",
                    format!("PV(0|{c:?}) = {vx}"),
                )));
            }
            for (y, vy) in list {
                if let Some(r) = scalar_ratio(x, y) {
                    let expected = &r * *vx;
                    if **vy != expected {
                        return Ok(AxiomReport::violated(AxiomVerdict::violation(
                            "homogeneity",
                            format!(
                                "PV({y:?}|{c:?}) = {vy}, expected {r} * PV({x:?}|{c:?}) = {expected}"
                            ),
                        )));
                    }
                }
                let sum = x.add(y)?;
                if let Some(vs) = map.get(&(sum.clone(), (*c).clone())) {
                    let expected = *vx + *vy;
                    if *vs != expected {
                        return Ok(AxiomReport::violated(AxiomVerdict::violation(
                            "additivity",
                            format!(
                                "PV({sum:?}|{c:?}) = {vs}, expected {vx} + {vy} = {expected}"
                            ),
                        )));
                    }
                }
            }
        }
    }
    for d in &conditions {
        for c in &events {
            let cd = c.and(d)?;
            if !conditions.contains(&cd) {
                continue;
            }
            let pc = &map[&(c.to_quantity(), d.clone())];
            for (x, v_given_cd) in &by_condition[&cd] {
                let restricted = x.mul_event(c)?;
                if let Some(lhs) = map.get(&(restricted.clone(), d.clone())) {
                    let rhs = *v_given_cd * pc;
                    if *lhs != rhs {
                        return Ok(AxiomReport::violated(AxiomVerdict::violation(
                            "product",
                            format!(
                                "PV({restricted:?}|{d:?}) = {lhs}, expected PV({x:?}|{cd:?}) * PV({c:?}|{d:?}) = {rhs}"
                            ),
                        )));
                    }
                }
            }
        }
    }
    Ok(AxiomReport::valid_with(Vec::new()))
}

/// `Some(r)` when `y = r * x` with `x` nonzero.
fn scalar_ratio(x: &RandomQuantity, y: &RandomQuantity) -> Option<Rational> {
    let k = x.components().iter().position(|v| !v.is_zero())?;
    let r = y.get(k) / x.get(k);
    if y == &x.scale(&r) {
        Some(r)
    } else {
        None
    }
}

impl KolmogorovTable {
    /// Recasts the table as an assessment conditioned on the sure event.
    pub fn to_assessment(&self) -> Result<Assessment> {
        let sure = Event::all(self.dim)?;
        let entries = self
            .entries
            .iter()
            .map(|e| {
                AssessmentEntry::new(
                    e.event.to_quantity(),
                    sure.clone(),
                    ExtReal::Finite(e.value.clone()),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Assessment::new(self.dim, entries)
    }
}

impl CoxTable {
    pub fn to_assessment(&self) -> Result<Assessment> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                AssessmentEntry::new(
                    e.event.to_quantity(),
                    e.given.clone(),
                    ExtReal::Finite(e.value.clone()),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Assessment::new(self.dim, entries)
    }
}

impl DupreTiplerTable {
    pub fn to_assessment(&self) -> Result<Assessment> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                AssessmentEntry::new(
                    e.quantity.clone(),
                    e.given.clone(),
                    ExtReal::Finite(e.value.clone()),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Assessment::new(self.dim, entries)
    }
}
