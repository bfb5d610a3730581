//! Independent brute-force verifiers for the solver-backed engines.
//!
//! Everything here recomputes an answer by a different route than the main
//! code paths and shares none of their machinery:
//!
//! - [`fm_description`] turns a generator-presented ordering's nonnegative
//!   set into explicit facet inequalities by eliminating the combination
//!   multipliers one variable at a time, so membership becomes a handful
//!   of exact dot products instead of a linear-program solve.
//! - [`oracle_expectation`] evaluates lower and upper conditional values
//!   by intersecting the per-facet intervals for the bound variable and
//!   then probing the boundary by direct membership tests.
//! - [`kolmogorov_extension`] builds an explicit linear functional from an
//!   unconditional event-value table by decomposing the generated algebra
//!   into atoms and spreading each atom's mass uniformly over a chosen
//!   refinement; the result is checked post hoc against the table.
//!
//! Variable elimination squares the row count in the worst case per
//! eliminated multiplier, so the descriptions are hard-capped at small
//! scale; exceeding the caps is a resource-limit error, not an attempt.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::{atoms_of, Event, RandomQuantity};
use crate::axioms::KolmogorovTable;
use crate::error::{Error, Result};
use crate::expectation::ExpectationResult;
use crate::extreal::ExtReal;
use crate::preorder::{Kernel, Preorder};
use crate::rational::Rational;

const MAX_DIM: usize = 4;
const MAX_GENERATORS: usize = 8;
const MAX_ROWS: usize = 4096;

/// Facet form of a nonnegative set: `x` belongs iff `row · x >= 0` for
/// every row. Rows are primitive integer vectors, deduplicated and sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct InequalityDescription {
    dim: usize,
    rows: Vec<Vec<Rational>>,
}

impl InequalityDescription {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Membership by direct evaluation of every facet inequality.
    pub fn contains(&self, x: &RandomQuantity) -> Result<bool> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.dim() });
        }
        Ok(self.rows.iter().all(|row| !dot(row, x.components()).is_negative()))
    }
}

fn dot(row: &[Rational], v: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (a, b) in row.iter().zip(v) {
        acc += &(a * b);
    }
    acc
}

/// Scales away denominators and divides by the content, so equal
/// halfspaces get equal rows. Returns `None` for the trivial row.
fn primitive(row: &[Rational]) -> Option<Vec<BigInt>> {
    let mut scale = BigInt::from(1);
    for r in row {
        scale = scale.lcm(r.denom());
    }
    let ints: Vec<BigInt> =
        row.iter().map(|r| r.numer() * (&scale / r.denom())).collect();
    normalize_int(ints)
}

fn normalize_int(row: Vec<BigInt>) -> Option<Vec<BigInt>> {
    let mut g = BigInt::zero();
    for v in &row {
        g = g.gcd(v);
    }
    if g.is_zero() {
        return None;
    }
    Some(row.into_iter().map(|v| v / &g).collect())
}

/// Eliminates column `col` from a system of `row · v <= 0` constraints by
/// pairing each positive-coefficient row with each negative one.
fn eliminate_column(rows: BTreeSet<Vec<BigInt>>, col: usize) -> Result<BTreeSet<Vec<BigInt>>> {
    let mut zero: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut pos: Vec<Vec<BigInt>> = Vec::new();
    let mut neg: Vec<Vec<BigInt>> = Vec::new();
    for row in rows {
        if row[col].is_zero() {
            zero.insert(row);
        } else if row[col].is_positive() {
            pos.push(row);
        } else {
            neg.push(row);
        }
    }
    for p in &pos {
        for n in &neg {
            let a = &p[col];
            let b = &n[col];
            let combined: Vec<BigInt> = p
                .iter()
                .zip(n)
                .map(|(pv, nv)| pv * &(-b) + nv * a)
                .collect();
            if let Some(row) = normalize_int(combined) {
                zero.insert(row);
            }
            if zero.len() > MAX_ROWS {
                return Err(Error::ResourceLimit(format!(
                    "facet elimination exceeded {MAX_ROWS} rows"
                )));
            }
        }
    }
    Ok(zero)
}

/// Facet description of `{z : some nonnegative combination of the
/// generators is <= z componentwise}`.
fn describe_cone(dim: usize, generators: &[RandomQuantity]) -> Result<InequalityDescription> {
    if dim > MAX_DIM {
        return Err(Error::ResourceLimit(format!(
            "facet description is capped at dimension {MAX_DIM}, got {dim}"
        )));
    }
    if generators.len() > MAX_GENERATORS {
        return Err(Error::ResourceLimit(format!(
            "facet description is capped at {MAX_GENERATORS} generators, got {}",
            generators.len()
        )));
    }
    let k = generators.len();
    // Variables (lambda_0 .. lambda_{k-1}, x_0 .. x_{dim-1}); constraints
    // as `row · v <= 0`: the combination rows and lambda nonnegativity.
    let mut rows: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for i in 0..dim {
        let mut row = Vec::with_capacity(k + dim);
        for g in generators {
            row.push(g.get(i).clone());
        }
        for j in 0..dim {
            row.push(if i == j { -Rational::one() } else { Rational::zero() });
        }
        if let Some(row) = primitive(&row) {
            rows.insert(row);
        }
    }
    for j in 0..k {
        let mut row = vec![BigInt::zero(); k + dim];
        row[j] = BigInt::from(-1);
        rows.insert(row);
    }
    for col in 0..k {
        rows = eliminate_column(rows, col)?;
    }
    let mut facets: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for row in rows {
        debug_assert!(row[..k].iter().all(BigInt::is_zero));
        // `tail · x <= 0` becomes the membership row `-tail · x >= 0`.
        let flipped: Vec<BigInt> = row[k..].iter().map(|v| -v).collect();
        if let Some(row) = normalize_int(flipped) {
            debug_assert!(row.iter().all(|v| !v.is_negative()));
            facets.insert(row);
        }
    }
    let rows: Vec<Vec<Rational>> = facets
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|v| Rational::from_big(v, BigInt::from(1)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InequalityDescription { dim, rows })
}

/// Facet description of the nonnegative set of a generator-presented,
/// unconditioned ordering.
pub fn fm_description(p: &Preorder) -> Result<InequalityDescription> {
    let Kernel::Cone { dim, generators } = p.kernel() else {
        return Err(Error::InvalidInput(
            "facet description requires a generator-presented ordering".into(),
        ));
    };
    if !p.condition().is_all() {
        return Err(Error::InvalidInput(
            "facet description covers unconditioned orderings; pass the condition to the query instead".into(),
        ));
    }
    describe_cone(*dim, generators)
}

#[derive(Clone, Copy)]
enum Sense {
    Lower,
    Upper,
}

/// One bound of the conditional value of `x`, computed by intersecting
/// each facet's feasible interval for the bound variable and verified by
/// membership probes at and beyond the boundary.
fn facet_bound(
    desc: &InequalityDescription,
    x: &RandomQuantity,
    eff: &Event,
    sense: Sense,
) -> Result<ExtReal> {
    let effq = eff.to_quantity();
    let xe = x.mul_event(eff)?;
    // A candidate y is feasible when (x - y)·eff (lower) or (y - x)·eff
    // (upper) lies in the described set. Each facet row restricts y to a
    // half-line or, with a zero coefficient, to everything or nothing.
    let mut empty = false;
    let mut at_most: Option<Rational> = None;
    let mut at_least: Option<Rational> = None;
    for row in &desc.rows {
        let alpha = dot(row, xe.components());
        let beta = dot(row, effq.components());
        // Lower sense: alpha - y*beta >= 0; upper sense: y*beta - alpha >= 0.
        let (hi_when_pos, constant_ok) = match sense {
            Sense::Lower => (true, !alpha.is_negative()),
            Sense::Upper => (false, !alpha.is_positive()),
        };
        if beta.is_zero() {
            if !constant_ok {
                empty = true;
                break;
            }
            continue;
        }
        let bound = &alpha / &beta;
        let is_hi = if beta.is_positive() { hi_when_pos } else { !hi_when_pos };
        if is_hi {
            at_most = Some(match at_most {
                Some(cur) => cur.min(bound),
                None => bound,
            });
        } else {
            at_least = Some(match at_least {
                Some(cur) => cur.max(bound),
                None => bound,
            });
        }
    }
    if let (Some(lo), Some(hi)) = (&at_least, &at_most) {
        if lo > hi {
            empty = true;
        }
    }
    let feasible = |y: &Rational| -> Result<bool> {
        let scaled = effq.scale(y);
        let z = match sense {
            Sense::Lower => xe.sub(&scaled)?,
            Sense::Upper => scaled.sub(&xe)?,
        };
        desc.contains(&z)
    };
    let probe_failed = || Error::Internal("facet interval bound failed its membership probe".into());
    let far = {
        let mut m = Rational::one();
        for v in xe.components() {
            m = m.max(v.abs());
        }
        for b in [&at_most, &at_least].into_iter().flatten() {
            m = m.max(b.abs());
        }
        m + Rational::from_int(7)
    };
    let value = if empty {
        // No feasible bound at all: the supremum over the empty set for
        // the lower sense, the infimum for the upper sense.
        let probe = match sense {
            Sense::Lower => -&far,
            Sense::Upper => far.clone(),
        };
        if feasible(&probe)? {
            return Err(probe_failed());
        }
        match sense {
            Sense::Lower => ExtReal::MinusInf,
            Sense::Upper => ExtReal::PlusInf,
        }
    } else {
        let boundary = match sense {
            Sense::Lower => at_most,
            Sense::Upper => at_least,
        };
        match boundary {
            Some(v) => {
                let beyond = match sense {
                    Sense::Lower => &v + &Rational::one(),
                    Sense::Upper => &v - &Rational::one(),
                };
                if !feasible(&v)? || feasible(&beyond)? {
                    return Err(probe_failed());
                }
                ExtReal::Finite(v)
            }
            None => {
                let probe = match sense {
                    Sense::Lower => far.clone(),
                    Sense::Upper => -&far,
                };
                if !feasible(&probe)? {
                    return Err(probe_failed());
                }
                match sense {
                    Sense::Lower => ExtReal::PlusInf,
                    Sense::Upper => ExtReal::MinusInf,
                }
            }
        }
    };
    Ok(value)
}

/// Conditional value of `x` given `c` under a generator-presented
/// ordering, recomputed from the facet description. Classification
/// agrees with the main expectation path: equal bounds are a defined
/// value, anything else reports the bracket.
pub fn oracle_expectation(
    p: &Preorder,
    x: &RandomQuantity,
    c: &Event,
) -> Result<ExpectationResult> {
    let Kernel::Cone { dim, generators } = p.kernel() else {
        return Err(Error::InvalidInput(
            "the expectation oracle requires a generator-presented ordering".into(),
        ));
    };
    if x.dim() != *dim {
        return Err(Error::DimensionMismatch { expected: *dim, got: x.dim() });
    }
    if c.dim() != *dim {
        return Err(Error::DimensionMismatch { expected: *dim, got: c.dim() });
    }
    if c.is_zero() {
        return Err(Error::InvalidInput("conditioning on the impossible event".into()));
    }
    let desc = describe_cone(*dim, generators)?;
    let eff = p.condition().and(c)?;
    let lower = facet_bound(&desc, x, &eff, Sense::Lower)?;
    let upper = facet_bound(&desc, x, &eff, Sense::Upper)?;
    Ok(ExpectationResult::from_bounds(lower, upper))
}

/// The unique scalar `q` with `X·G = q·G`, defined when `x` is constant
/// on the support of the nonzero event `g`.
pub fn atom_coefficient(x: &RandomQuantity, g: &Event) -> Result<Rational> {
    if x.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), got: x.dim() });
    }
    let mut support = g.support();
    let Some(first) = support.next() else {
        return Err(Error::InvalidInput("no coefficient on the zero event".into()));
    };
    let value = x.get(first).clone();
    for i in support {
        if x.get(i) != &value {
            return Err(Error::InvalidInput(
                "quantity is not constant on the event".into(),
            ));
        }
    }
    Ok(value)
}

/// Explicit linear extension of an event-value table: atoms of the
/// table's algebra carry the assessed masses, spread uniformly over the
/// atoms of a refinement.
#[derive(Clone, Debug)]
pub struct AtomDecomposition {
    dim: usize,
    coarse: Vec<Event>,
    coarse_values: Vec<Rational>,
    fine: Vec<Event>,
}

impl AtomDecomposition {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Atoms of the algebra generated by the table's events.
    pub fn coarse_atoms(&self) -> &[Event] {
        &self.coarse
    }

    /// Atoms of the refinement the functional is evaluated on.
    pub fn fine_atoms(&self) -> &[Event] {
        &self.fine
    }

    /// Number of refinement atoms under `b`; positive for nonzero `b` in
    /// the refinement algebra.
    pub fn refinement_count(&self, b: &Event) -> Result<Rational> {
        let mut count = Rational::zero();
        for g in &self.fine {
            count += &atom_coefficient(&b.to_quantity(), g)?;
        }
        Ok(count)
    }

    /// Value of the extension functional on a quantity measurable with
    /// respect to the refinement.
    pub fn evaluate(&self, x: &RandomQuantity) -> Result<Rational> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.dim() });
        }
        let mut total = Rational::zero();
        for g in &self.fine {
            let coeff = atom_coefficient(x, g)?;
            if coeff.is_zero() {
                continue;
            }
            for (h, value) in self.coarse.iter().zip(&self.coarse_values) {
                let inside = atom_coefficient(&h.to_quantity(), g)?;
                if inside.is_zero() {
                    continue;
                }
                let share = value / &self.refinement_count(h)?;
                total += &(&(&coeff * &inside) * &share);
            }
        }
        Ok(total)
    }

    /// Conditional value `F(X·C)/F(C)`, or `None` when the condition has
    /// zero mass under this extension.
    pub fn conditional(&self, x: &RandomQuantity, c: &Event) -> Result<Option<Rational>> {
        let mass = self.evaluate(&c.to_quantity())?;
        if mass.is_zero() {
            return Ok(None);
        }
        let scaled = self.evaluate(&x.mul_event(c)?)?;
        Ok(Some(&scaled / &mass))
    }
}

/// Builds the extension functional for a table that passes the
/// unconditional axioms, refined so every target event is measurable.
/// The construction is verified post hoc: nonnegative on refinement
/// atoms, additive and homogeneous on samples, and in exact agreement
/// with the table on its own events.
pub fn kolmogorov_extension(
    table: &KolmogorovTable,
    targets: &[Event],
) -> Result<AtomDecomposition> {
    let report = crate::axioms::kolmogorov_check(table)?;
    if !report.verdict.is_valid() {
        return Err(Error::InvalidInput(
            "extension requires a table that passes the unconditional axioms".into(),
        ));
    }
    let mut domain: BTreeSet<Event> = BTreeSet::new();
    for entry in &table.entries {
        domain.insert(entry.event.clone());
    }
    let domain: Vec<Event> = domain.into_iter().collect();
    for t in targets {
        if t.dim() != table.dim {
            return Err(Error::DimensionMismatch { expected: table.dim, got: t.dim() });
        }
    }
    let coarse = atoms_of(table.dim, &domain)?;
    let mut refined: Vec<Event> = domain.clone();
    refined.extend(targets.iter().cloned());
    let fine = atoms_of(table.dim, &refined)?;
    let mut values = Vec::with_capacity(coarse.len());
    for atom in &coarse {
        match table.entries.iter().find(|e| &e.event == atom) {
            Some(entry) => values.push(entry.value.clone()),
            None => {
                // A closed domain contains its own atoms; a miss means the
                // validity check above let something through.
                return Err(Error::Internal(
                    "atom of the generated algebra is missing from the table".into(),
                ));
            }
        }
    }
    let decomposition =
        AtomDecomposition { dim: table.dim, coarse, coarse_values: values, fine };
    let check_failed =
        || Error::Internal("extension functional failed a post-construction check".into());
    for g in &decomposition.fine {
        if decomposition.evaluate(&g.to_quantity())?.is_negative() {
            return Err(check_failed());
        }
    }
    for entry in &table.entries {
        if decomposition.evaluate(&entry.event.to_quantity())? != entry.value {
            return Err(check_failed());
        }
    }
    if let (Some(a), Some(b)) = (decomposition.fine.first(), decomposition.fine.last()) {
        let (qa, qb) = (a.to_quantity(), b.to_quantity());
        let sum = decomposition.evaluate(&qa.add(&qb)?)?;
        if sum != decomposition.evaluate(&qa)? + decomposition.evaluate(&qb)? {
            return Err(check_failed());
        }
        let three = Rational::from_int(3);
        if decomposition.evaluate(&qa.scale(&three))? != three * decomposition.evaluate(&qa)? {
            return Err(check_failed());
        }
    }
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::KolmogorovEntry;
    use crate::expectation::conditional_expectation;

    fn rq(vals: &[i64]) -> RandomQuantity {
        RandomQuantity::new(vals.iter().map(|v| Rational::from_int(*v)).collect()).unwrap()
    }

    fn ev(bits: &[u8]) -> Event {
        Event::from_bits(bits.iter().map(|b| *b == 1).collect()).unwrap()
    }

    fn row(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|v| Rational::from_int(*v)).collect()
    }

    fn coin() -> Preorder {
        Preorder::from_equivalences(&[(rq(&[1, 0]), rq(&[0, 1]))], 2).unwrap()
    }

    #[test]
    fn coin_cone_has_the_single_expected_facet() {
        let desc = fm_description(&coin()).unwrap();
        assert_eq!(desc.rows(), &[row(&[1, 1])]);
        assert!(desc.contains(&rq(&[3, -2])).unwrap());
        assert!(!desc.contains(&rq(&[-3, 2])).unwrap());
    }

    #[test]
    fn smallest_ordering_facets_are_the_coordinate_halfspaces() {
        let p = Preorder::smallest(3).unwrap();
        let desc = fm_description(&p).unwrap();
        assert_eq!(desc.rows(), &[row(&[0, 0, 1]), row(&[0, 1, 0]), row(&[1, 0, 0])]);
    }

    #[test]
    fn redundant_generators_do_not_change_the_facets() {
        let p = Preorder::from_generators(
            vec![rq(&[1, -1]), rq(&[-1, 1]), rq(&[1, 0]), rq(&[0, 1])],
            2,
        )
        .unwrap();
        let desc = fm_description(&p).unwrap();
        assert_eq!(desc.rows(), &[row(&[1, 1])]);
    }

    #[test]
    fn facets_agree_with_the_solver_on_a_grid() {
        let p = Preorder::from_generators(vec![rq(&[2, -1, 0]), rq(&[-1, 2, -1])], 3).unwrap();
        let desc = fm_description(&p).unwrap();
        let zero = RandomQuantity::zero(3).unwrap();
        for a in -2..=2 {
            for b in -2..=2 {
                for c in -2..=2 {
                    let z = rq(&[a, b, c]);
                    assert_eq!(
                        desc.contains(&z).unwrap(),
                        p.nonstrict(&zero, &z).unwrap(),
                        "disagreement at {z:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn oracle_matches_the_main_expectation_path() {
        let p = coin();
        let sure = Event::all(2).unwrap();
        let h = ev(&[1, 0]);
        for x in [rq(&[3, 5]), rq(&[1, 0]), rq(&[-2, 2]), rq(&[4, 4])] {
            for c in [&sure, &h] {
                assert_eq!(
                    oracle_expectation(&p, &x, c).unwrap(),
                    conditional_expectation(&p, &x, c).unwrap(),
                    "x = {x:?}, c = {c:?}"
                );
            }
        }
    }

    #[test]
    fn oracle_reports_brackets_and_infinities() {
        let p = Preorder::smallest(2).unwrap();
        assert_eq!(
            oracle_expectation(&p, &rq(&[3, 5]), &Event::all(2).unwrap()).unwrap(),
            ExpectationResult::Undefined {
                lower: ExtReal::Finite(Rational::from_int(3)),
                upper: ExtReal::Finite(Rational::from_int(5)),
            }
        );
        // A null but nonzero condition leaves every bound vacuous.
        let p = Preorder::from_generators(vec![rq(&[-1, 0])], 2).unwrap();
        assert_eq!(
            oracle_expectation(&p, &rq(&[9, 0]), &ev(&[1, 0])).unwrap(),
            ExpectationResult::Undefined { lower: ExtReal::MinusInf, upper: ExtReal::PlusInf }
        );
    }

    #[test]
    fn oracle_rejects_oversized_inputs() {
        let p = Preorder::smallest(5).unwrap();
        let x = RandomQuantity::zero(5).unwrap();
        assert!(matches!(
            oracle_expectation(&p, &x, &Event::all(5).unwrap()),
            Err(Error::ResourceLimit(_))
        ));
    }

    fn coin_table() -> KolmogorovTable {
        KolmogorovTable {
            dim: 2,
            entries: vec![
                KolmogorovEntry { event: ev(&[0, 0]), value: Rational::zero() },
                KolmogorovEntry { event: ev(&[1, 0]), value: Rational::new(1, 2).unwrap() },
                KolmogorovEntry { event: ev(&[0, 1]), value: Rational::new(1, 2).unwrap() },
                KolmogorovEntry { event: ev(&[1, 1]), value: Rational::one() },
            ],
        }
    }

    #[test]
    fn coin_extension_reproduces_the_mean() {
        let f = kolmogorov_extension(&coin_table(), &[]).unwrap();
        assert_eq!(f.evaluate(&rq(&[3, 5])).unwrap(), Rational::from_int(4));
        assert_eq!(f.conditional(&rq(&[3, 5]), &ev(&[1, 0])).unwrap(), Some(Rational::from_int(3)));
    }

    #[test]
    fn trivial_table_spreads_mass_uniformly() {
        let table = KolmogorovTable {
            dim: 2,
            entries: vec![
                KolmogorovEntry { event: ev(&[0, 0]), value: Rational::zero() },
                KolmogorovEntry { event: ev(&[1, 1]), value: Rational::one() },
            ],
        };
        let f = kolmogorov_extension(&table, &[ev(&[1, 0]), ev(&[0, 1])]).unwrap();
        assert_eq!(f.coarse_atoms().len(), 1);
        assert_eq!(f.fine_atoms().len(), 2);
        assert_eq!(f.refinement_count(&Event::all(2).unwrap()).unwrap(), Rational::from_int(2));
        assert_eq!(f.evaluate(&rq(&[3, 5])).unwrap(), Rational::from_int(4));
    }

    #[test]
    fn extension_requires_a_valid_table() {
        let mut table = coin_table();
        table.entries[1].value = Rational::new(2, 5).unwrap();
        table.entries[2].value = Rational::new(2, 5).unwrap();
        assert!(matches!(kolmogorov_extension(&table, &[]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn coefficient_requires_constancy() {
        assert_eq!(
            atom_coefficient(&rq(&[4, 4, 1]), &ev(&[1, 1, 0])).unwrap(),
            Rational::from_int(4)
        );
        assert!(atom_coefficient(&rq(&[4, 1, 1]), &ev(&[1, 1, 0])).is_err());
        assert!(atom_coefficient(&rq(&[4, 4]), &ev(&[0, 0])).is_err());
    }
}
