//! Acceptance suite: one test per exit criterion, each printing a single
//! summary line (run with `--nocapture` to see them). Every check is an
//! exact comparison; the only tolerances are the wall-clock caps stated
//! inline. Seeds are fixed so failures replay.

mod common;

use std::time::{Duration, Instant};

use pk_core::{
    check_coherence, conditional_expectation, cox_check, dupre_tipler_check, expectation, extend,
    fm_description, fuzz_rules, kolmogorov_check, oracle_expectation, probability,
    validate_witness, Assessment, AssessmentEntry, BetTerm, CoherenceVerdict, CoxEntry, CoxTable,
    DtEntry, DupreTiplerTable, Event, EventTerm, ExpectationResult, ExtReal, KolmogorovEntry,
    KolmogorovTable, Preorder, Rational, RandomQuantity, SubsetBudget, Witness,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn defined(v: Rational) -> ExpectationResult {
    ExpectationResult::Defined(ExtReal::Finite(v))
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

/// Prints the one-line verdict for a criterion and panics on failure.
fn conclude(number: u32, label: &str, failures: &[String], detail: &str) {
    if failures.is_empty() {
        println!("criterion {number} ({label}): pass — {detail}");
    } else {
        println!(
            "criterion {number} ({label}): FAIL — {} problem(s); first: {}",
            failures.len(),
            failures[0]
        );
        panic!("criterion {number} ({label}) failed:\n{}", failures.join("\n"));
    }
}

fn over_budget(failures: &mut Vec<String>, elapsed: Duration, cap: Duration) {
    if elapsed > cap {
        failures.push(format!("took {elapsed:?}, cap is {cap:?}"));
    }
}

/// A fair two-outcome experiment — the ordering that equates the two
/// coordinate events — must reproduce the textbook values exactly, and
/// fast.
#[test]
fn criterion_1_two_outcome_reproduction() {
    let mut failures = Vec::new();
    let start = Instant::now();

    let heads = Event::atom(2, 0).unwrap();
    let tails = Event::atom(2, 1).unwrap();
    let sure = Event::all(2).unwrap();
    let coin =
        Preorder::from_equivalences(&[(heads.to_quantity(), tails.to_quantity())], 2).unwrap();

    let half = rat(1, 2);
    for (name, event) in [("heads", &heads), ("tails", &tails)] {
        let got = probability(&coin, event, &sure).unwrap();
        if got != defined(half.clone()) {
            failures.push(format!("P({name}) = {got:?}, want 1/2"));
        }
    }

    let mut rng = common::rng(101);
    let mut values = 2usize;
    for trial in 0..100 {
        let x = common::quantity(&mut rng, 2, 5);
        let mean = (x.get(0) + x.get(1)) * &half;
        let cases = [
            ("E(X)", expectation(&coin, &x).unwrap(), mean),
            ("E(X|heads)", conditional_expectation(&coin, &x, &heads).unwrap(), x.get(0).clone()),
            ("E(X|tails)", conditional_expectation(&coin, &x, &tails).unwrap(), x.get(1).clone()),
        ];
        for (name, got, want) in cases {
            values += 1;
            if got != defined(want.clone()) {
                failures.push(format!("trial {trial}: {name} = {got:?}, want {want}"));
            }
        }
    }

    let elapsed = start.elapsed();
    over_budget(&mut failures, elapsed, Duration::from_secs(1));
    conclude(
        1,
        "two-outcome reproduction",
        &failures,
        &format!("{values} exact values in {elapsed:?}"),
    );
}

/// The extended-real operation table: every defined entry has its stated
/// value, exactly the undefined combinations return nothing, and the empty
/// supremum/infimum land on the absorbing elements.
#[test]
fn criterion_2_extended_real_arithmetic() {
    let mut failures = Vec::new();
    let fin = |n: i64, d: i64| ExtReal::Finite(rat(n, d));
    let pinf = ExtReal::PlusInf;
    let minf = ExtReal::MinusInf;

    let cases: Vec<(&str, Option<ExtReal>, Option<ExtReal>)> = vec![
        // Addition: finite pairs and every defined infinite combination.
        ("2/3 + 1/2", fin(2, 3).checked_add(&fin(1, 2)), Some(fin(7, 6))),
        ("+inf + 5", pinf.checked_add(&fin(5, 1)), Some(pinf.clone())),
        ("5 + +inf", fin(5, 1).checked_add(&pinf), Some(pinf.clone())),
        ("+inf + +inf", pinf.checked_add(&pinf), Some(pinf.clone())),
        ("-inf + 5", minf.checked_add(&fin(5, 1)), Some(minf.clone())),
        ("5 + -inf", fin(5, 1).checked_add(&minf), Some(minf.clone())),
        ("-inf + -inf", minf.checked_add(&minf), Some(minf.clone())),
        // The two undefined additions.
        ("+inf + -inf", pinf.checked_add(&minf), None),
        ("-inf + +inf", minf.checked_add(&pinf), None),
        // Subtraction is addition of the negation; spot-check both defined
        // values and the undefined consequences.
        ("3/4 - 1/4", fin(3, 4).checked_sub(&fin(1, 4)), Some(fin(1, 2))),
        ("+inf - 5", pinf.checked_sub(&fin(5, 1)), Some(pinf.clone())),
        ("+inf - -inf", pinf.checked_sub(&minf), Some(pinf.clone())),
        ("-inf - +inf", minf.checked_sub(&pinf), Some(minf.clone())),
        ("5 - +inf", fin(5, 1).checked_sub(&pinf), Some(minf.clone())),
        ("5 - -inf", fin(5, 1).checked_sub(&minf), Some(pinf.clone())),
        ("+inf - +inf", pinf.checked_sub(&pinf), None),
        ("-inf - -inf", minf.checked_sub(&minf), None),
        // Multiplication: sign rules for infinite factors.
        ("2/3 * 3/2", fin(2, 3).checked_mul(&fin(3, 2)), Some(fin(1, 1))),
        ("+inf * 2", pinf.checked_mul(&fin(2, 1)), Some(pinf.clone())),
        ("+inf * -2", pinf.checked_mul(&fin(-2, 1)), Some(minf.clone())),
        ("2 * +inf", fin(2, 1).checked_mul(&pinf), Some(pinf.clone())),
        ("-2 * +inf", fin(-2, 1).checked_mul(&pinf), Some(minf.clone())),
        ("-inf * 2", minf.checked_mul(&fin(2, 1)), Some(minf.clone())),
        ("-inf * -2", minf.checked_mul(&fin(-2, 1)), Some(pinf.clone())),
        ("2 * -inf", fin(2, 1).checked_mul(&minf), Some(minf.clone())),
        ("-2 * -inf", fin(-2, 1).checked_mul(&minf), Some(pinf.clone())),
        ("+inf * +inf", pinf.checked_mul(&pinf), Some(pinf.clone())),
        ("+inf * -inf", pinf.checked_mul(&minf), Some(minf.clone())),
        ("-inf * +inf", minf.checked_mul(&pinf), Some(minf.clone())),
        ("-inf * -inf", minf.checked_mul(&minf), Some(pinf.clone())),
        // The four undefined products with a zero factor.
        ("0 * +inf", ExtReal::zero().checked_mul(&pinf), None),
        ("0 * -inf", ExtReal::zero().checked_mul(&minf), None),
        ("+inf * 0", pinf.checked_mul(&ExtReal::zero()), None),
        ("-inf * 0", minf.checked_mul(&ExtReal::zero()), None),
        // Division: finite quotients, vanishing against infinity, signed
        // infinite numerators.
        ("5/2 / 1/2", fin(5, 2).checked_div(&fin(1, 2)), Some(fin(5, 1))),
        ("5 / +inf", fin(5, 1).checked_div(&pinf), Some(ExtReal::zero())),
        ("5 / -inf", fin(5, 1).checked_div(&minf), Some(ExtReal::zero())),
        ("0 / +inf", ExtReal::zero().checked_div(&pinf), Some(ExtReal::zero())),
        ("0 / -inf", ExtReal::zero().checked_div(&minf), Some(ExtReal::zero())),
        ("+inf / 2", pinf.checked_div(&fin(2, 1)), Some(pinf.clone())),
        ("+inf / -2", pinf.checked_div(&fin(-2, 1)), Some(minf.clone())),
        ("-inf / 2", minf.checked_div(&fin(2, 1)), Some(minf.clone())),
        ("-inf / -2", minf.checked_div(&fin(-2, 1)), Some(pinf.clone())),
        // Division by zero is undefined for every numerator.
        ("-inf / 0", minf.checked_div(&ExtReal::zero()), None),
        ("-5 / 0", fin(-5, 1).checked_div(&ExtReal::zero()), None),
        ("0 / 0", ExtReal::zero().checked_div(&ExtReal::zero()), None),
        ("5 / 0", fin(5, 1).checked_div(&ExtReal::zero()), None),
        ("+inf / 0", pinf.checked_div(&ExtReal::zero()), None),
        // The four undefined infinite quotients.
        ("+inf / +inf", pinf.checked_div(&pinf), None),
        ("+inf / -inf", pinf.checked_div(&minf), None),
        ("-inf / +inf", minf.checked_div(&pinf), None),
        ("-inf / -inf", minf.checked_div(&minf), None),
    ];

    let mut checked = 0usize;
    let mut undefined = 0usize;
    for (label, got, want) in cases {
        checked += 1;
        if want.is_none() {
            undefined += 1;
        }
        if got != want {
            failures.push(format!("{label}: got {got:?}, want {want:?}"));
        }
    }

    if ExtReal::sup(Vec::new()) != minf {
        failures.push("sup of the empty set should be -inf".into());
    }
    if ExtReal::inf(Vec::new()) != pinf {
        failures.push("inf of the empty set should be +inf".into());
    }
    let chain = [minf.clone(), fin(-5, 1), ExtReal::zero(), fin(5, 1), pinf.clone()];
    for pair in chain.windows(2) {
        if pair[0] >= pair[1] {
            failures.push(format!("ordering broken: {:?} should precede {:?}", pair[0], pair[1]));
        }
    }
    if pinf.neg() != minf || minf.neg() != pinf || fin(2, 3).neg() != fin(-2, 3) {
        failures.push("negation table broken".into());
    }

    conclude(
        2,
        "extended-real arithmetic",
        &failures,
        &format!(
            "{checked} operation entries ({undefined} undefined probes covering the eleven \
             undefined combinations), empty sup/inf, ordering chain"
        ),
    );
}

/// Two hundred random generator-presented orderings, every derived rule
/// fuzzed against each: no rule instance may report a violation.
#[test]
fn criterion_3_rule_fuzz_on_random_orderings() {
    let mut failures = Vec::new();
    let start = Instant::now();
    let mut rng = common::rng(303);

    let mut held = 0u64;
    let mut vacuous = 0u64;
    let mut rules = 0usize;
    for i in 0u64..200 {
        let dim = rng.gen_range(1..=4usize);
        let p = common::cone(&mut rng, dim, 6, 5);
        let report = fuzz_rules(&p, 2, 9_000 + i).unwrap();
        rules = report.tallies.len();
        for tally in &report.tallies {
            held += tally.holds;
            vacuous += tally.precondition_unmet;
        }
        if let Some(v) = report.violations.first() {
            failures.push(format!("ordering {i}: rule {:?} violated: {}", v.rule, v.detail));
        }
    }

    let elapsed = start.elapsed();
    over_budget(&mut failures, elapsed, Duration::from_secs(60));
    conclude(
        3,
        "rule fuzz on random orderings",
        &failures,
        &format!(
            "200 orderings x {rules} rules: {held} instances held, {vacuous} vacuous, \
             0 violations, in {elapsed:?}"
        ),
    );
}

/// Assessments read off a strictly positive state must be accepted and
/// reproduced exactly by extension; assessments perturbed away from any
/// state must be rejected with a verifiable sure-loss combination.
#[test]
fn criterion_4_coherence_decisions() {
    let mut failures = Vec::new();
    let start = Instant::now();
    let budget = SubsetBudget::default();
    let mut rng = common::rng(404);

    let mut reproduced = 0usize;
    for i in 0..100 {
        let dim = rng.gen_range(1..=4usize);
        let (a, triples) = common::state_assessment(&mut rng, dim, 4);
        match check_coherence(&a, budget) {
            Ok(CoherenceVerdict::Coherent) => {}
            other => {
                failures.push(format!("state assessment {i}: expected acceptance, got {other:?}"));
                continue;
            }
        }
        for (x, d, v) in &triples {
            match extend(&a, x, d, budget) {
                Ok(ref got) if *got == defined(v.clone()) => reproduced += 1,
                other => failures.push(format!(
                    "state assessment {i}: announced value {v} came back as {other:?}"
                )),
            }
        }
    }

    let mut rejected = 0usize;
    for i in 0..100usize {
        let dim = rng.gen_range(2..=4usize);
        let state = common::positive_state(&mut rng, dim);
        let sure = Event::all(dim).unwrap();
        let two = rat(2, 1);
        let mut entries = vec![AssessmentEntry::new(
            RandomQuantity::constant(two.clone(), dim).unwrap(),
            sure.clone(),
            ExtReal::Finite(two),
        )
        .unwrap()];
        let kind;
        match i % 4 {
            0 => {
                kind = "unit value";
                let v = if rng.gen_bool(0.5) { rat(4, 3) } else { rat(2, 3) };
                entries.push(
                    AssessmentEntry::new(sure.to_quantity(), sure.clone(), ExtReal::Finite(v))
                        .unwrap(),
                );
            }
            1 => {
                kind = "additivity";
                let first = rng.gen_range(0..dim);
                let second = loop {
                    let j = rng.gen_range(0..dim);
                    if j != first {
                        break j;
                    }
                };
                let a_ev = Event::atom(dim, first).unwrap();
                let b_ev = Event::atom(dim, second).unwrap();
                let both = a_ev.or(&b_ev).unwrap();
                let wa = state[first].clone();
                let wb = state[second].clone();
                let skew = if rng.gen_bool(0.5) { rat(1, 5) } else { rat(-1, 5) };
                let joint = &wa + &wb + skew;
                for (ev, v) in [(a_ev, wa), (b_ev, wb), (both, joint)] {
                    entries.push(
                        AssessmentEntry::new(ev.to_quantity(), sure.clone(), ExtReal::Finite(v))
                            .unwrap(),
                    );
                }
            }
            2 => {
                kind = "monotonicity";
                let first = rng.gen_range(0..dim);
                let second = loop {
                    let j = rng.gen_range(0..dim);
                    if j != first {
                        break j;
                    }
                };
                let smaller = Event::atom(dim, first).unwrap();
                let larger = smaller.or(&Event::atom(dim, second).unwrap()).unwrap();
                let w_small = common::state_mass(&state, &smaller);
                let w_large = common::state_mass(&state, &larger);
                for (ev, v) in [(smaller, w_large), (larger, w_small)] {
                    entries.push(
                        AssessmentEntry::new(ev.to_quantity(), sure.clone(), ExtReal::Finite(v))
                            .unwrap(),
                    );
                }
            }
            _ => {
                kind = "range bound";
                let ev = common::nonzero_event(&mut rng, dim);
                let v = if rng.gen_bool(0.5) { rat(-1, 3) } else { rat(4, 3) };
                entries.push(
                    AssessmentEntry::new(ev.to_quantity(), sure.clone(), ExtReal::Finite(v))
                        .unwrap(),
                );
            }
        }
        let a = Assessment::new(dim, entries).unwrap();
        match check_coherence(&a, budget) {
            Ok(CoherenceVerdict::Incoherent(w)) => {
                if validate_witness(&a, &w) {
                    rejected += 1;
                } else {
                    failures
                        .push(format!("perturbed {i} ({kind}): returned witness fails validation"));
                }
            }
            other => failures
                .push(format!("perturbed {i} ({kind}): expected sure loss, got {other:?}")),
        }
    }

    let elapsed = start.elapsed();
    over_budget(&mut failures, elapsed, Duration::from_secs(120));
    conclude(
        4,
        "coherence decisions and exact extension",
        &failures,
        &format!(
            "100 state assessments accepted with {reproduced} announced values reproduced, \
             {rejected} perturbed assessments rejected with validated witnesses, in {elapsed:?}"
        ),
    );
}

/// Random partition table over at most three blocks: all unions of blocks,
/// additive nonnegative masses summing to one.
fn random_partition_table(rng: &mut ChaCha8Rng) -> KolmogorovTable {
    let dim = rng.gen_range(1..=3usize);
    let mut labels: Vec<usize> = (0..dim).map(|_| rng.gen_range(0..dim.min(3))).collect();
    let mut seen: Vec<usize> = labels.clone();
    seen.sort_unstable();
    seen.dedup();
    for l in &mut labels {
        *l = seen.iter().position(|s| s == l).unwrap();
    }
    let blocks = seen.len();
    let block_events: Vec<Event> = (0..blocks)
        .map(|b| Event::from_bits((0..dim).map(|i| labels[i] == b).collect()).unwrap())
        .collect();
    let mut masses: Vec<Rational> = (0..blocks)
        .map(|_| if rng.gen_ratio(1, 6) { Rational::zero() } else { rat(rng.gen_range(1..=5), 1) })
        .collect();
    if masses.iter().all(Rational::is_zero) {
        masses[0] = Rational::one();
    }
    let total = masses.iter().fold(Rational::zero(), |acc, m| acc + m);
    for m in &mut masses {
        *m = &*m / &total;
    }
    let mut entries = Vec::new();
    for mask in 0u32..(1 << blocks) {
        let mut event = Event::none(dim).unwrap();
        let mut value = Rational::zero();
        for (b, block) in block_events.iter().enumerate() {
            if mask & (1 << b) != 0 {
                event = event.or(block).unwrap();
                value += &masses[b];
            }
        }
        entries.push(KolmogorovEntry { event, value });
    }
    KolmogorovTable { dim, entries }
}

/// Conditional table over the four-event field of a nontrivial event,
/// valued by a strictly positive state.
fn random_field_table(rng: &mut ChaCha8Rng) -> CoxTable {
    let dim = rng.gen_range(2..=3usize);
    let state = common::positive_state(rng, dim);
    let pivot = loop {
        let e = common::event(rng, dim);
        if !e.is_zero() && !e.is_all() {
            break e;
        }
    };
    let domain =
        [Event::none(dim).unwrap(), pivot.clone(), pivot.not(), Event::all(dim).unwrap()];
    let conditions = [pivot.clone(), pivot.not(), Event::all(dim).unwrap()];
    let mut entries = Vec::new();
    for b in &domain {
        for c in &conditions {
            let meet = b.and(c).unwrap();
            let value = &common::state_mass(&state, &meet) / &common::state_mass(&state, c);
            entries.push(CoxEntry { event: b.clone(), given: c.clone(), value });
        }
    }
    CoxTable { dim, entries }
}

/// Total previsions of every event of the space given one or two
/// conditions, valued by a strictly positive state.
fn random_prevision_table(rng: &mut ChaCha8Rng) -> DupreTiplerTable {
    let dim = rng.gen_range(2..=3usize);
    let state = common::positive_state(rng, dim);
    let sure = Event::all(dim).unwrap();
    let extra = common::nonzero_event(rng, dim);
    let conditions =
        if extra.is_all() { vec![sure.clone()] } else { vec![extra, sure.clone()] };
    let mut entries = Vec::new();
    for mask in 0u32..(1 << dim) {
        let event =
            Event::from_bits((0..dim).map(|i| mask & (1 << i) != 0).collect()).unwrap();
        for given in &conditions {
            let value = common::state_value(&state, &event.to_quantity(), given);
            entries.push(DtEntry { quantity: event.to_quantity(), given: given.clone(), value });
        }
    }
    DupreTiplerTable { dim, entries }
}

/// Randomly generated valid tables for each verifier, recast as
/// assessments, must come out coherent.
#[test]
fn criterion_5_valid_axiom_tables_are_coherent() {
    let mut failures = Vec::new();
    let mut rng = common::rng(505);

    let mut accepted = 0usize;
    for i in 0..50 {
        let table = random_partition_table(&mut rng);
        match kolmogorov_check(&table) {
            Ok(report) if report.verdict.is_valid() => {}
            other => {
                failures.push(format!("partition table {i}: verifier said {other:?}"));
                continue;
            }
        }
        let a = table.to_assessment().unwrap();
        let budget = SubsetBudget::new(a.entries().len().max(16));
        match check_coherence(&a, budget) {
            Ok(CoherenceVerdict::Coherent) => accepted += 1,
            other => failures.push(format!("partition table {i}: coherence said {other:?}")),
        }
    }

    for i in 0..50 {
        let table = random_field_table(&mut rng);
        match cox_check(&table) {
            Ok(report) if report.verdict.is_valid() => {
                for check in &report.diagnostics {
                    if !check.holds {
                        failures.push(format!(
                            "field table {i}: diagnostic {} failed: {}",
                            check.name, check.detail
                        ));
                    }
                }
            }
            other => {
                failures.push(format!("field table {i}: verifier said {other:?}"));
                continue;
            }
        }
        let a = table.to_assessment().unwrap();
        let budget = SubsetBudget::new(a.entries().len().max(16));
        match check_coherence(&a, budget) {
            Ok(CoherenceVerdict::Coherent) => accepted += 1,
            other => failures.push(format!("field table {i}: coherence said {other:?}")),
        }
    }

    for i in 0..50 {
        let table = random_prevision_table(&mut rng);
        match dupre_tipler_check(&table) {
            Ok(report) if report.verdict.is_valid() => {}
            other => {
                failures.push(format!("prevision table {i}: verifier said {other:?}"));
                continue;
            }
        }
        let a = table.to_assessment().unwrap();
        let budget = SubsetBudget::new(a.entries().len().max(16));
        match check_coherence(&a, budget) {
            Ok(CoherenceVerdict::Coherent) => accepted += 1,
            other => failures.push(format!("prevision table {i}: coherence said {other:?}")),
        }
    }

    conclude(
        5,
        "valid axiom tables are coherent",
        &failures,
        &format!("{accepted} of 150 generated tables verified valid and accepted"),
    );
}

/// Layered decomposition of a nonnegative vector into positive multiples
/// of events, written against the public interface only.
fn peel(u: &RandomQuantity) -> Vec<EventTerm> {
    let mut rest = u.clone();
    let mut terms = Vec::new();
    while !rest.is_zero() {
        let bits: Vec<bool> = rest.components().iter().map(Rational::is_positive).collect();
        let event = Event::from_bits(bits).unwrap();
        let weight = event.support().map(|i| rest.get(i).clone()).reduce(Rational::min).unwrap();
        rest = rest.sub(&event.to_quantity().scale(&weight)).unwrap();
        terms.push(EventTerm { weight, event });
    }
    terms
}

/// An announced infinite value on a nonzero condition is always rejected,
/// and the hand-built certificate — one unit bet against the unbounded
/// entry, plus event stakes flattening the bet's finite part — validates.
#[test]
fn criterion_6_unbounded_announcements_force_sure_loss() {
    let mut failures = Vec::new();
    let budget = SubsetBudget::default();
    let mut rng = common::rng(606);

    let mut rejected = 0usize;
    for i in 0..50 {
        let dim = rng.gen_range(1..=4usize);
        let state = common::positive_state(&mut rng, dim);
        let x_inf = common::quantity(&mut rng, dim, 5);
        let d_inf = common::nonzero_event(&mut rng, dim);
        let announced =
            if rng.gen_bool(0.5) { ExtReal::PlusInf } else { ExtReal::MinusInf };

        let mut entries = Vec::new();
        for _ in 0..rng.gen_range(0..=2usize) {
            let x = common::quantity(&mut rng, dim, 5);
            let d = common::nonzero_event(&mut rng, dim);
            if x == x_inf && d == d_inf {
                continue;
            }
            let v = common::state_value(&state, &x, &d);
            entries.push(AssessmentEntry::new(x, d, ExtReal::Finite(v)).unwrap());
        }
        entries
            .push(AssessmentEntry::new(x_inf, d_inf, announced.clone()).unwrap());
        let a = Assessment::new(dim, entries).unwrap();

        let witness = match check_coherence(&a, budget) {
            Ok(CoherenceVerdict::Incoherent(w)) => w,
            other => {
                failures.push(format!("run {i}: expected sure loss, got {other:?}"));
                continue;
            }
        };
        if !validate_witness(&a, &witness) {
            failures.push(format!("run {i}: returned witness fails validation"));
        }

        let idx = a.entries().iter().position(|e| !e.value.is_finite()).unwrap();
        let signed_ok = witness.bet_terms.iter().any(|b| {
            b.entry == idx
                && match announced {
                    ExtReal::PlusInf => b.stake.is_positive(),
                    _ => b.stake.is_negative(),
                }
        });
        if !signed_ok {
            failures.push(format!(
                "run {i}: witness has no correctly signed bet against the unbounded entry"
            ));
        }

        // Certificate built by hand: shift the quantity so the bet's
        // finite part is nonpositive on the condition, then peel the
        // residue into event stakes. The margin is infinite, the total
        // position exactly zero.
        let entry = &a.entries()[idx];
        let extremum = entry
            .condition
            .support()
            .map(|k| entry.quantity.get(k).clone())
            .reduce(|p, q| match announced {
                ExtReal::PlusInf => p.max(q),
                _ => p.min(q),
            })
            .unwrap();
        let stake = match announced {
            ExtReal::PlusInf => Rational::one(),
            _ => -Rational::one(),
        };
        let shift = -extremum;
        let position = entry
            .quantity
            .add(&RandomQuantity::constant(shift.clone(), dim).unwrap())
            .unwrap()
            .scale(&stake)
            .mul_event(&entry.condition)
            .unwrap();
        let certificate = Witness {
            event_terms: peel(&position.neg()),
            bet_terms: vec![BetTerm { entry: idx, stake, shift }],
        };
        if validate_witness(&a, &certificate) {
            rejected += 1;
        } else {
            failures.push(format!("run {i}: hand-built certificate fails validation"));
        }
    }

    conclude(
        6,
        "unbounded announcements force sure loss",
        &failures,
        &format!("{rejected} of 50 assessments rejected, constructive certificates validated"),
    );
}

/// The elimination-based facet description and the solver-based membership
/// and expectation paths must agree query for query.
#[test]
fn criterion_7_independent_oracle_agreement() {
    let mut failures = Vec::new();
    let mut rng = common::rng(707);

    let mut memberships = 0usize;
    for i in 0..50 {
        let dim = rng.gen_range(1..=3usize);
        let p = common::cone(&mut rng, dim, 4, 3);
        let desc = fm_description(&p).unwrap();
        let zero = RandomQuantity::zero(dim).unwrap();
        for q in 0..10 {
            let z = common::quantity(&mut rng, dim, 5);
            let by_facets = desc.contains(&z).unwrap();
            let by_solver = p.nonstrict(&zero, &z).unwrap();
            if by_facets == by_solver {
                memberships += 1;
            } else {
                failures.push(format!(
                    "ordering {i} query {q}: facets say {by_facets}, solver says {by_solver}"
                ));
            }
        }
    }

    let mut expectations = 0usize;
    for i in 0..40 {
        let dim = rng.gen_range(1..=3usize);
        let p = common::cone(&mut rng, dim, 4, 3);
        for q in 0..5 {
            let x = common::quantity(&mut rng, dim, 5);
            let c = common::nonzero_event(&mut rng, dim);
            let by_oracle = oracle_expectation(&p, &x, &c).unwrap();
            let by_solver = conditional_expectation(&p, &x, &c).unwrap();
            if by_oracle == by_solver {
                expectations += 1;
            } else {
                failures.push(format!(
                    "ordering {i} query {q}: oracle says {by_oracle:?}, solver says {by_solver:?}"
                ));
            }
        }
    }

    conclude(
        7,
        "independent-oracle agreement",
        &failures,
        &format!("{memberships} membership and {expectations} expectation queries agree"),
    );
}

/// Replays the accepted assessments of criterion 4 (same seed, same
/// stream) and checks the boundary probabilities: an event disjoint from
/// the condition gets exactly zero, an event covering the condition gets
/// exactly one — regardless of the condition's own probability.
#[test]
fn criterion_8_conditional_probabilities_at_the_edges() {
    let mut failures = Vec::new();
    let budget = SubsetBudget::default();
    let mut rng = common::rng(404);

    let mut pairs = 0usize;
    for i in 0..100 {
        let dim = rng.gen_range(1..=4usize);
        let (a, _) = common::state_assessment(&mut rng, dim, 4);
        if dim > 3 {
            continue;
        }
        for a_mask in 0u32..(1 << dim) {
            let ev_a =
                Event::from_bits((0..dim).map(|k| a_mask & (1 << k) != 0).collect()).unwrap();
            for c_mask in 1u32..(1 << dim) {
                let ev_c =
                    Event::from_bits((0..dim).map(|k| c_mask & (1 << k) != 0).collect()).unwrap();
                let meet = ev_a.and(&ev_c).unwrap();
                let want = if meet.is_zero() {
                    ExtReal::zero()
                } else if meet == ev_c {
                    ExtReal::from_int(1)
                } else {
                    continue;
                };
                pairs += 1;
                match extend(&a, &ev_a.to_quantity(), &ev_c, budget) {
                    Ok(ExpectationResult::Defined(ref got)) if *got == want => {}
                    other => failures.push(format!(
                        "assessment {i}, events {a_mask:#b}|{c_mask:#b}: want {want:?}, \
                         got {other:?}"
                    )),
                }
            }
        }
    }

    conclude(
        8,
        "conditional probabilities at the edges",
        &failures,
        &format!("{pairs} boundary event pairs pinned exactly"),
    );
}
