#![allow(dead_code)]

//! Deterministic generators shared by the integration suites. Everything
//! draws from a seeded stream so failures replay exactly.

use pk_core::{Assessment, AssessmentEntry, Event, ExtReal, Preorder, Rational, RandomQuantity};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with numerator in `[-span, span]` and denominator in 1..=3.
pub fn rational(rng: &mut ChaCha8Rng, span: i64) -> Rational {
    Rational::new(rng.gen_range(-span..=span), rng.gen_range(1..=3)).unwrap()
}

pub fn quantity(rng: &mut ChaCha8Rng, dim: usize, span: i64) -> RandomQuantity {
    RandomQuantity::new((0..dim).map(|_| rational(rng, span)).collect()).unwrap()
}

pub fn event(rng: &mut ChaCha8Rng, dim: usize) -> Event {
    Event::from_bits((0..dim).map(|_| rng.gen_bool(0.5)).collect()).unwrap()
}

pub fn nonzero_event(rng: &mut ChaCha8Rng, dim: usize) -> Event {
    loop {
        let e = event(rng, dim);
        if !e.is_zero() {
            return e;
        }
    }
}

/// Generator-presented ordering with up to `max_generators` random
/// generators.
pub fn cone(rng: &mut ChaCha8Rng, dim: usize, max_generators: usize, span: i64) -> Preorder {
    let count = rng.gen_range(0..=max_generators);
    let generators = (0..count).map(|_| quantity(rng, dim, span)).collect();
    Preorder::from_generators(generators, dim).unwrap()
}

/// Strictly positive weights summing to one.
pub fn positive_state(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rational> {
    let raw: Vec<Rational> = (0..dim)
        .map(|_| Rational::new(rng.gen_range(1..=6), rng.gen_range(1..=3)).unwrap())
        .collect();
    let total = raw.iter().fold(Rational::zero(), |acc, v| acc + v);
    raw.iter().map(|v| v / &total).collect()
}

/// Mass the state puts on an event.
pub fn state_mass(state: &[Rational], e: &Event) -> Rational {
    e.support().fold(Rational::zero(), |acc, i| acc + &state[i])
}

/// Conditional value of `x` given `d` under the state; `d` must carry
/// positive mass, which a strictly positive state guarantees.
pub fn state_value(state: &[Rational], x: &RandomQuantity, d: &Event) -> Rational {
    let mut numer = Rational::zero();
    let mut denom = Rational::zero();
    for i in d.support() {
        numer += &(state[i].clone() * x.get(i));
        denom += &state[i];
    }
    &numer / &denom
}

/// Assessment whose values all come from one hidden strictly positive
/// state; such an assessment is coherent and every assessed value is the
/// state's conditional value. Returns the sampled triples alongside the
/// assessment (construction may drop exact duplicates).
pub fn state_assessment(
    rng: &mut ChaCha8Rng,
    dim: usize,
    max_entries: usize,
) -> (Assessment, Vec<(RandomQuantity, Event, Rational)>) {
    let state = positive_state(rng, dim);
    let count = rng.gen_range(1..=max_entries);
    let mut triples = Vec::with_capacity(count);
    let mut entries = Vec::with_capacity(count);
    for _ in 0..count {
        let x = quantity(rng, dim, 5);
        let d = nonzero_event(rng, dim);
        let v = state_value(&state, &x, &d);
        entries.push(
            AssessmentEntry::new(x.clone(), d.clone(), ExtReal::Finite(v.clone())).unwrap(),
        );
        triples.push((x, d, v));
    }
    (Assessment::new(dim, entries).unwrap(), triples)
}
