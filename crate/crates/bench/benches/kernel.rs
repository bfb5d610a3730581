//! Microbenchmarks for the exact kernels: simplex pivoting, membership
//! queries, expectation brackets, coherence scans, and facet elimination.
//! All inputs are seeded, so numbers are comparable across runs.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use pk_core::{
    check_coherence, conditional_expectation, fm_description, Assessment, AssessmentEntry,
    Direction, Event, ExtReal, LinearProgram, Preorder, Rational, RandomQuantity, Relation,
    SignRestriction, SubsetBudget,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rational(rng: &mut ChaCha8Rng, span: i64) -> Rational {
    Rational::new(rng.gen_range(-span..=span), rng.gen_range(1..=3)).unwrap()
}

fn quantity(rng: &mut ChaCha8Rng, dim: usize, span: i64) -> RandomQuantity {
    RandomQuantity::new((0..dim).map(|_| rational(rng, span)).collect()).unwrap()
}

fn seeded_cone(seed: u64, dim: usize, generators: usize, span: i64) -> Preorder {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = (0..generators).map(|_| quantity(&mut rng, dim, span)).collect();
    Preorder::from_generators(gens, dim).unwrap()
}

/// Assessment whose values average a strictly positive state, so the
/// coherence scan exits through the fast acceptance path.
fn state_assessment(seed: u64, dim: usize, entries: usize) -> Assessment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let state: Vec<Rational> =
        (0..dim).map(|_| Rational::new(rng.gen_range(1..=6), 1).unwrap()).collect();
    let sure = Event::all(dim).unwrap();
    let list = (0..entries)
        .map(|_| {
            let x = quantity(&mut rng, dim, 5);
            let mut numer = Rational::zero();
            let mut denom = Rational::zero();
            for i in sure.support() {
                numer += &(state[i].clone() * x.get(i));
                denom += &state[i];
            }
            AssessmentEntry::new(x, sure.clone(), ExtReal::Finite(&numer / &denom)).unwrap()
        })
        .collect();
    Assessment::new(dim, list).unwrap()
}

/// Assessment that must be rejected, forcing the subset scan to find and
/// assemble a sure-loss combination.
fn overstated_assessment(dim: usize) -> Assessment {
    let sure = Event::all(dim).unwrap();
    let heads = Event::atom(dim, 0).unwrap();
    let entries = vec![
        AssessmentEntry::new(
            heads.to_quantity(),
            sure.clone(),
            ExtReal::Finite(Rational::new(3, 4).unwrap()),
        )
        .unwrap(),
        AssessmentEntry::new(
            heads.not().to_quantity(),
            sure.clone(),
            ExtReal::Finite(Rational::new(3, 4).unwrap()),
        )
        .unwrap(),
        AssessmentEntry::new(sure.to_quantity(), sure, ExtReal::Finite(Rational::one())).unwrap(),
    ];
    Assessment::new(dim, entries).unwrap()
}

fn bench_solver(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let vars = 6;
    let mut lp = LinearProgram::new();
    for i in 0..vars {
        let restriction =
            if i % 2 == 0 { SignRestriction::NonNegative } else { SignRestriction::Free };
        lp.add_var(format!("v{i}"), restriction);
    }
    for _ in 0..8 {
        let row = (0..vars).map(|_| rational(&mut rng, 6)).collect();
        lp.constrain(row, Relation::LessEq, rational(&mut rng, 6)).unwrap();
    }
    lp.set_objective((0..vars).map(|_| rational(&mut rng, 6)).collect(), Direction::Maximize)
        .unwrap();
    c.bench_function("solver 6 vars 8 rows", |b| b.iter(|| black_box(lp.solve().unwrap())));
}

fn bench_membership(c: &mut Criterion) {
    let p = seeded_cone(23, 4, 6, 5);
    let zero = RandomQuantity::zero(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let z = quantity(&mut rng, 4, 5);
    c.bench_function("membership dim 4 gens 6", |b| {
        b.iter(|| black_box(p.nonstrict(&zero, &z).unwrap()))
    });
}

fn bench_expectation(c: &mut Criterion) {
    let p = seeded_cone(31, 4, 6, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let x = quantity(&mut rng, 4, 5);
    let given = Event::from_bits(vec![true, true, false, true]).unwrap();
    c.bench_function("expectation dim 4 gens 6", |b| {
        b.iter(|| black_box(conditional_expectation(&p, &x, &given).unwrap()))
    });
}

fn bench_coherence(c: &mut Criterion) {
    let budget = SubsetBudget::default();
    let accepted = state_assessment(41, 4, 4);
    c.bench_function("coherence accept 4 entries", |b| {
        b.iter(|| black_box(check_coherence(&accepted, budget).unwrap()))
    });
    let rejected = overstated_assessment(3);
    c.bench_function("coherence reject 3 entries", |b| {
        b.iter(|| black_box(check_coherence(&rejected, budget).unwrap()))
    });
}

fn bench_facets(c: &mut Criterion) {
    let p = seeded_cone(43, 3, 4, 3);
    c.bench_function("facet elimination dim 3 gens 4", |b| {
        b.iter(|| black_box(fm_description(&p).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_solver,
    bench_membership,
    bench_expectation,
    bench_coherence,
    bench_facets
);
criterion_main!(benches);
