//! Expectation naturally induced by a plausibility preorder.
//!
//! Constants embed into the algebra as constant vectors, so a preorder
//! already compares every quantity against every real. Given a condition
//! `C`, the **lower value** of `X` is `sup { y : y <~ X given C }` and the
//! **upper value** is `inf { y : X <~ y given C }`, both over nonstrict
//! comparisons and valued in the extended reals (the supremum of the empty
//! set is `-inf`, the infimum `+inf`). The conditional expectation is
//! defined exactly when the two values agree; otherwise the pair brackets
//! every admissible value.
//!
//! For cone presentations each bound is one exact linear program; for
//! assessments the bounds come from the subset analysis in the `coherence`
//! module. Conditioning on an event equivalent to nothing drives the
//! bounds to `+inf`/`-inf` and the expectation is undefined with the
//! all-embracing bracket, matching the conditional preorder being the
//! greatest one. Asking directly for the zero event is rejected as input.

use crate::algebra::{Event, RandomQuantity};
use crate::coherence::{assessment_bound, BoundSense};
use crate::error::{Error, Result};
use crate::extreal::ExtReal;
use crate::lp::{Direction, LinearProgram, LpOutcome, Relation, SignRestriction};
use crate::preorder::{Kernel, Preorder};
use crate::rational::Rational;

/// Outcome of an expectation query: a single defined value, or the exact
/// bracket of lower and upper values when no single value exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpectationResult {
    Defined(ExtReal),
    Undefined { lower: ExtReal, upper: ExtReal },
}

impl ExpectationResult {
    pub(crate) fn from_bounds(lower: ExtReal, upper: ExtReal) -> Self {
        if lower == upper {
            ExpectationResult::Defined(lower)
        } else {
            let lo = lower.clone().min(upper.clone());
            let hi = lower.max(upper);
            ExpectationResult::Undefined { lower: lo, upper: hi }
        }
    }

    pub fn defined_value(&self) -> Option<&ExtReal> {
        match self {
            ExpectationResult::Defined(v) => Some(v),
            ExpectationResult::Undefined { .. } => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, ExpectationResult::Defined(_))
    }
}

fn check_query_dims(p: &Preorder, x: &RandomQuantity, c: &Event) -> Result<()> {
    if x.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: x.dim() });
    }
    if c.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: c.dim() });
    }
    Ok(())
}

fn cone_bound(
    dim: usize,
    generators: &[RandomQuantity],
    x: &RandomQuantity,
    effective: &Event,
    sense: BoundSense,
) -> Result<ExtReal> {
    let mut lp = LinearProgram::new();
    for (g, _) in generators.iter().enumerate() {
        lp.add_var(format!("lambda{g}"), SignRestriction::NonNegative);
    }
    let y = lp.add_var("y", SignRestriction::Free);
    for i in 0..dim {
        let mut row: Vec<Rational> = generators.iter().map(|g| g.get(i).clone()).collect();
        row.push(Rational::zero());
        let mut rhs = Rational::zero();
        if effective.contains(i) {
            row[y] = match sense {
                BoundSense::Lower => Rational::one(),
                BoundSense::Upper => -Rational::one(),
            };
            rhs = match sense {
                BoundSense::Lower => x.get(i).clone(),
                BoundSense::Upper => -x.get(i),
            };
        }
        lp.constrain(row, Relation::LessEq, rhs)?;
    }
    let mut objective = vec![Rational::zero(); generators.len() + 1];
    objective[y] = Rational::one();
    let direction = match sense {
        BoundSense::Lower => Direction::Maximize,
        BoundSense::Upper => Direction::Minimize,
    };
    lp.set_objective(objective, direction)?;
    match lp.solve()? {
        LpOutcome::Optimal { value, .. } => Ok(ExtReal::Finite(value)),
        LpOutcome::Unbounded { .. } => Ok(match sense {
            BoundSense::Lower => ExtReal::PlusInf,
            BoundSense::Upper => ExtReal::MinusInf,
        }),
        LpOutcome::Infeasible { .. } => Ok(match sense {
            BoundSense::Lower => ExtReal::MinusInf,
            BoundSense::Upper => ExtReal::PlusInf,
        }),
    }
}

fn bound(p: &Preorder, x: &RandomQuantity, c: &Event, sense: BoundSense) -> Result<ExtReal> {
    check_query_dims(p, x, c)?;
    let effective = p.condition().and(c)?;
    match p.kernel() {
        Kernel::Cone { dim, generators } => cone_bound(*dim, generators, x, &effective, sense),
        Kernel::Assessment { assessment, budget } => {
            assessment_bound(assessment, *budget, x, &effective, sense)
        }
    }
}

/// `sup { y : y <~ X given C }` within the preorder's own condition.
pub fn lower_value(p: &Preorder, x: &RandomQuantity, c: &Event) -> Result<ExtReal> {
    bound(p, x, c, BoundSense::Lower)
}

/// `inf { y : X <~ y given C }` within the preorder's own condition.
pub fn upper_value(p: &Preorder, x: &RandomQuantity, c: &Event) -> Result<ExtReal> {
    bound(p, x, c, BoundSense::Upper)
}

/// Conditional expectation of `X` given `C`: defined when the lower and
/// upper values agree. The zero event is rejected; conditions equivalent
/// to nothing yield the all-embracing undefined bracket instead.
pub fn conditional_expectation(
    p: &Preorder,
    x: &RandomQuantity,
    c: &Event,
) -> Result<ExpectationResult> {
    check_query_dims(p, x, c)?;
    if c.is_zero() {
        return Err(Error::InvalidInput("conditioning event must be nonzero".into()));
    }
    let lower = lower_value(p, x, c)?;
    let upper = upper_value(p, x, c)?;
    Ok(ExpectationResult::from_bounds(lower, upper))
}

/// Expectation of `X` given the sure event.
pub fn expectation(p: &Preorder, x: &RandomQuantity) -> Result<ExpectationResult> {
    conditional_expectation(p, x, &Event::all(p.dim())?)
}

/// Probability of the event `A` given `C`: the expectation of the
/// indicator quantity.
pub fn probability(p: &Preorder, a: &Event, c: &Event) -> Result<ExpectationResult> {
    if a.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: a.dim() });
    }
    conditional_expectation(p, &a.to_quantity(), c)
}
