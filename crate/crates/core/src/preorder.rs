//! Plausibility preorders over random quantities.
//!
//! A preorder here compares random quantities by plausibility: `X <~ Y`
//! reads "X is at most as plausible a gain as Y". Every instance satisfies
//! the four structural laws that make expectation work: events are never
//! less plausible than nothing, acceptable gains are closed under addition
//! and nonnegative scaling, and `X <~ Y` holds exactly when `Y - X` is an
//! acceptable gain. Two presentations are supported:
//!
//! - **Cone**: the acceptable gains are the conic hull of finitely many
//!   generator vectors together with the coordinate atoms (so the orthant is
//!   always included). Queries are exact LP feasibility checks.
//! - **Assessment**: the smallest strict relation generated by announced
//!   conditional values, as used by the coherence machinery; see the
//!   `coherence` module for the decision procedure.
//!
//! Conditioning on an event `C` compares restrictions: `X <~ Y given C`
//! means `X*C <~ Y*C`. Conditioning composes by intersection and never
//! needs new machinery. Conditioning on the impossible event yields the
//! greatest preorder (everything related), whose strict part is empty.

use serde::{Deserialize, Serialize};

use crate::algebra::{Event, RandomQuantity};
use crate::coherence::{self, Assessment, AssessmentEntry, SubsetBudget};
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome, Relation, SignRestriction};
use crate::rational::Rational;

/// Plausibility preorder with an optional conditioning event.
#[derive(Clone, Debug)]
pub struct Preorder {
    kernel: Kernel,
    condition: Event,
}

#[derive(Clone, Debug)]
pub(crate) enum Kernel {
    Cone { dim: usize, generators: Vec<RandomQuantity> },
    Assessment { assessment: Assessment, budget: SubsetBudget },
}

/// Classification by behavior on events.
///
/// Regular: every nonzero event is strictly more plausible than nothing.
/// Degenerate: nothing and the sure event are equivalent (then all events
/// are equivalent). The two are mutually exclusive; `Neither` covers
/// preorders with some, but not all, null nonzero events.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PreorderClass {
    Regular,
    Degenerate,
    Neither,
}

/// Serialized presentation of a preorder.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PreorderDoc {
    Cone { dim: usize, generators: Vec<RandomQuantity> },
    Assessment { dim: usize, entries: Vec<AssessmentEntry> },
}

impl Preorder {
    /// The smallest preorder on dimension `dim`: acceptable gains are
    /// exactly the componentwise-nonnegative vectors.
    pub fn smallest(dim: usize) -> Result<Self> {
        Preorder::from_generators(Vec::new(), dim)
    }

    /// Cone presentation from explicit generators (the coordinate atoms are
    /// always included implicitly).
    pub fn from_generators(generators: Vec<RandomQuantity>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension 0 is not allowed".into()));
        }
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: g.dim() });
            }
        }
        Ok(Preorder { kernel: Kernel::Cone { dim, generators }, condition: Event::all(dim)? })
    }

    /// Smallest preorder in which `X <~ Y` for every listed pair.
    pub fn from_relation(pairs: &[(RandomQuantity, RandomQuantity)], dim: usize) -> Result<Self> {
        let mut generators = Vec::with_capacity(pairs.len());
        for (x, y) in pairs {
            generators.push(y.sub(x)?);
        }
        Preorder::from_generators(generators, dim)
    }

    /// Smallest preorder in which each listed pair is equivalent.
    pub fn from_equivalences(
        pairs: &[(RandomQuantity, RandomQuantity)],
        dim: usize,
    ) -> Result<Self> {
        let mut generators = Vec::with_capacity(2 * pairs.len());
        for (x, y) in pairs {
            generators.push(y.sub(x)?);
            generators.push(x.sub(y)?);
        }
        Preorder::from_generators(generators, dim)
    }

    /// Preorder generated by an assessment of conditional values.
    pub fn from_assessment(assessment: Assessment, budget: SubsetBudget) -> Result<Self> {
        let condition = Event::all(assessment.dim())?;
        Ok(Preorder { kernel: Kernel::Assessment { assessment, budget }, condition })
    }

    pub fn from_doc(doc: &PreorderDoc, budget: SubsetBudget) -> Result<Self> {
        match doc {
            PreorderDoc::Cone { dim, generators } => {
                Preorder::from_generators(generators.clone(), *dim)
            }
            PreorderDoc::Assessment { dim, entries } => {
                let assessment = Assessment::new(*dim, entries.clone())?;
                Preorder::from_assessment(assessment, budget)
            }
        }
    }

    pub fn dim(&self) -> usize {
        match &self.kernel {
            Kernel::Cone { dim, .. } => *dim,
            Kernel::Assessment { assessment, .. } => assessment.dim(),
        }
    }

    pub fn condition(&self) -> &Event {
        &self.condition
    }

    pub(crate) fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    /// The conditional view given `c`; composes by intersection.
    pub fn conditional(&self, c: &Event) -> Result<Self> {
        let condition = self.condition.and(c)?;
        Ok(Preorder { kernel: self.kernel.clone(), condition })
    }

    fn check_dims(&self, x: &RandomQuantity, y: &RandomQuantity) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.dim() });
        }
        if y.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: y.dim() });
        }
        Ok(())
    }

    /// `X <~ Y`: the conditioned difference is an acceptable gain.
    pub fn nonstrict(&self, x: &RandomQuantity, y: &RandomQuantity) -> Result<bool> {
        self.check_dims(x, y)?;
        let z = y.sub(x)?.mul_event(&self.condition)?;
        match &self.kernel {
            Kernel::Cone { generators, .. } => Ok(cone_member(self.dim(), generators, &z)),
            Kernel::Assessment { assessment, budget } => {
                if z.is_zero() {
                    return Ok(true);
                }
                coherence::strict_member(assessment, *budget, &z)
            }
        }
    }

    /// `X <~ Y` but not `Y <~ X`.
    ///
    /// For assessments this is decided directly as membership of the
    /// conditioned difference in the generated strict set; for coherent
    /// assessments that coincides with the two-query definition.
    pub fn strict(&self, x: &RandomQuantity, y: &RandomQuantity) -> Result<bool> {
        self.check_dims(x, y)?;
        let z = y.sub(x)?.mul_event(&self.condition)?;
        match &self.kernel {
            Kernel::Cone { generators, .. } => {
                Ok(cone_member(self.dim(), generators, &z)
                    && !cone_member(self.dim(), generators, &z.neg()))
            }
            Kernel::Assessment { assessment, budget } => {
                coherence::strict_member(assessment, *budget, &z)
            }
        }
    }

    /// `X <~ Y` and `Y <~ X`.
    pub fn equivalent(&self, x: &RandomQuantity, y: &RandomQuantity) -> Result<bool> {
        Ok(self.nonstrict(x, y)? && self.nonstrict(y, x)?)
    }

    /// Classification on events, decided on the atoms plus the sure event:
    /// strict positivity is additive, so atoms settle every nonzero event.
    pub fn classify(&self) -> Result<PreorderClass> {
        let dim = self.dim();
        let zero = RandomQuantity::zero(dim)?;
        let one = Event::all(dim)?.to_quantity();
        if self.equivalent(&zero, &one)? {
            return Ok(PreorderClass::Degenerate);
        }
        for i in 0..dim {
            let atom = Event::atom(dim, i)?.to_quantity();
            if !self.strict(&zero, &atom)? {
                return Ok(PreorderClass::Neither);
            }
        }
        if !self.strict(&zero, &one)? {
            return Ok(PreorderClass::Neither);
        }
        Ok(PreorderClass::Regular)
    }

    /// Whether the disjunction of the events is at most as plausible as
    /// their sum.
    pub fn check_subadditivity(&self, events: &[Event]) -> Result<bool> {
        let dim = self.dim();
        let mut disjunction = Event::none(dim)?;
        let mut sum = RandomQuantity::zero(dim)?;
        for e in events {
            disjunction = disjunction.or(e)?;
            sum = sum.add(&e.to_quantity())?;
        }
        self.nonstrict(&disjunction.to_quantity(), &sum)
    }
}

/// Membership of `z` in the conic hull of the generators and the atoms:
/// feasibility of `sum lambda_g g <= z` with `lambda >= 0` (the slack per
/// coordinate is the atom contribution).
fn cone_member(dim: usize, generators: &[RandomQuantity], z: &RandomQuantity) -> bool {
    let mut lp = LinearProgram::new();
    for (g, _) in generators.iter().enumerate() {
        lp.add_var(format!("lambda{g}"), SignRestriction::NonNegative);
    }
    for i in 0..dim {
        let coeffs: Vec<Rational> = generators.iter().map(|g| g.get(i).clone()).collect();
        lp.constrain(coeffs, Relation::LessEq, z.get(i).clone())
            .expect("coefficient count matches variable count");
    }
    match lp.solve() {
        Ok(LpOutcome::Infeasible { .. }) => false,
        Ok(_) => true,
        Err(_) => unreachable!("membership feasibility program is well formed"),
    }
}
