//! Exact kernel for plausibility orderings over finite random-quantity
//! algebras.
//!
//! Random quantities are rational vectors with pointwise operations; the
//! 0/1 vectors are the events. A plausibility preorder compares quantities
//! as gains and induces lower and upper values for every quantity given
//! every nonzero event; when the two agree the conditional expectation is
//! defined. Assessments of conditional values are checked for coherence —
//! existence of an exact sure-loss combination — and coherent assessments
//! extend to expectations by the same bound computation. Everything is
//! exact rational arithmetic end to end: no floating point, no tolerance.
//!
//! ```
//! use pk_core::{expectation, Event, ExpectationResult, ExtReal,
//!     Preorder, Rational, RandomQuantity};
//!
//! // A fair coin: both outcomes equally plausible.
//! let heads = RandomQuantity::new(vec![Rational::from_int(1), Rational::from_int(0)]).unwrap();
//! let tails = RandomQuantity::new(vec![Rational::from_int(0), Rational::from_int(1)]).unwrap();
//! let coin = Preorder::from_equivalences(&[(heads, tails)], 2).unwrap();
//!
//! // Pay 3 on heads, 5 on tails: worth exactly 4.
//! let payout = RandomQuantity::new(vec![Rational::from_int(3), Rational::from_int(5)]).unwrap();
//! assert_eq!(
//!     expectation(&coin, &payout).unwrap(),
//!     ExpectationResult::Defined(ExtReal::from_int(4)),
//! );
//! ```

mod algebra;
mod axioms;
mod coherence;
mod error;
mod expectation;
mod extreal;
mod lp;
mod oracle;
mod preorder;
mod rational;
mod rules;

pub use algebra::{atoms_of, positive_combination_nonzero, Event, RandomQuantity};
pub use axioms::{
    cox_check, dupre_tipler_check, kolmogorov_check, AxiomReport, AxiomVerdict, CoxEntry,
    CoxTable, DerivedCheck, DtEntry, DupreTiplerTable, KolmogorovEntry, KolmogorovTable,
};
pub use coherence::{
    check_coherence, extend, validate_witness, Assessment, AssessmentEntry, BetTerm,
    CoherenceVerdict, EventTerm, SubsetBudget, Witness,
};
pub use error::{Error, Result};
pub use expectation::{
    conditional_expectation, expectation, lower_value, probability, upper_value,
    ExpectationResult,
};
pub use extreal::ExtReal;
pub use lp::{Direction, LinearProgram, LpOutcome, Relation, SignRestriction};
pub use oracle::{
    atom_coefficient, fm_description, kolmogorov_extension, oracle_expectation,
    AtomDecomposition, InequalityDescription,
};
pub use preorder::{Preorder, PreorderClass, PreorderDoc};
pub use rational::Rational;
pub use rules::{
    all_rule_ids, fuzz_rules, verify_rule, RuleArgs, RuleId, RuleOutcome, RuleReport, RuleTally,
    RuleViolation, RULE_COUNT,
};
