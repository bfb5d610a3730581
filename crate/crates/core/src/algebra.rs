//! Finite random-quantity algebras.
//!
//! A random quantity of dimension `n` is a rational vector in `Q^n` with
//! pointwise addition, scalar multiplication, and pointwise multiplication.
//! The idempotents (0/1 vectors) are the events; they form a Boolean algebra
//! with `not A = 1 - A`, `A and B = A * B`, `A or B = A + B - A * B`, and the
//! natural order `A <= B  iff  A and B = A`. The minimal nonzero events are
//! the coordinate atoms; every nonzero event is the disjoint sum of the atoms
//! below it.
//!
//! Dimension zero is rejected at construction: the zero-dimensional algebra
//! has `0 = 1` and supports none of the distinctions the rest of the crate
//! relies on.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Rational vector with pointwise operations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RandomQuantity {
    components: Vec<Rational>,
}

impl RandomQuantity {
    pub fn new(components: Vec<Rational>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidInput("dimension 0 is not allowed".into()));
        }
        Ok(RandomQuantity { components })
    }

    /// Embeds the scalar `r` as the constant vector `r * 1`.
    pub fn constant(r: Rational, dim: usize) -> Result<Self> {
        RandomQuantity::new(vec![r; dim])
    }

    pub fn zero(dim: usize) -> Result<Self> {
        RandomQuantity::constant(Rational::zero(), dim)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Rational] {
        &self.components
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Rational::is_zero)
    }

    pub fn is_nonneg(&self) -> bool {
        self.components.iter().all(|c| !c.is_negative())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        RandomQuantity::new(
            self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        RandomQuantity::new(
            self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        RandomQuantity { components: self.components.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        RandomQuantity { components: self.components.iter().map(|c| c * r).collect() }
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        RandomQuantity::new(
            self.components.iter().zip(&other.components).map(|(a, b)| a * b).collect(),
        )
    }

    /// Restriction `X * C`: keeps the components inside `C`, zeroes the rest.
    pub fn mul_event(&self, c: &Event) -> Result<Self> {
        if self.dim() != c.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: c.dim() });
        }
        RandomQuantity::new(
            self.components
                .iter()
                .enumerate()
                .map(|(i, v)| if c.contains(i) { v.clone() } else { Rational::zero() })
                .collect(),
        )
    }

    pub fn is_event(&self) -> bool {
        self.components.iter().all(|c| c.is_zero() || c == &Rational::one())
    }

    pub fn to_event(&self) -> Option<Event> {
        if !self.is_event() {
            return None;
        }
        Some(Event { bits: self.components.iter().map(|c| !c.is_zero()).collect() })
    }
}

impl fmt::Debug for RandomQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for RandomQuantity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.components.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RandomQuantity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let components = Vec::<Rational>::deserialize(deserializer)?;
        RandomQuantity::new(components).map_err(serde::de::Error::custom)
    }
}

/// Event of the algebra: a 0/1 vector, stored as a membership bitmap.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Event {
    bits: Vec<bool>,
}

impl Event {
    pub fn from_bits(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidInput("dimension 0 is not allowed".into()));
        }
        Ok(Event { bits })
    }

    /// The sure event `1`.
    pub fn all(dim: usize) -> Result<Self> {
        Event::from_bits(vec![true; dim])
    }

    /// The impossible event `0`.
    pub fn none(dim: usize) -> Result<Self> {
        Event::from_bits(vec![false; dim])
    }

    /// The coordinate atom at index `i`.
    pub fn atom(dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(Error::InvalidInput(format!("atom index {i} out of range for dim {dim}")));
        }
        let mut bits = vec![false; dim];
        bits[i] = true;
        Event::from_bits(bits)
    }

    pub fn dim(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    pub fn is_all(&self) -> bool {
        self.bits.iter().all(|b| *b)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i)
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(())
    }

    pub fn not(&self) -> Self {
        Event { bits: self.bits.iter().map(|b| !b).collect() }
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Event { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| *a && *b).collect() })
    }

    pub fn or(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Event { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| *a || *b).collect() })
    }

    /// Natural order `A <= B`, i.e. `A and B = A`.
    pub fn le(&self, other: &Self) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| !*a || *b))
    }

    pub fn disjoint(&self, other: &Self) -> Result<bool> {
        Ok(self.and(other)?.is_zero())
    }

    pub fn to_quantity(&self) -> RandomQuantity {
        RandomQuantity {
            components: self
                .bits
                .iter()
                .map(|b| if *b { Rational::one() } else { Rational::zero() })
                .collect(),
        }
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.bits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", if *b { 1 } else { 0 })?;
        }
        write!(f, "]")
    }
}

impl Serialize for Event {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let ints: Vec<u8> = self.bits.iter().map(|b| u8::from(*b)).collect();
        ints.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Event {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let ints = Vec::<u8>::deserialize(deserializer)?;
        let mut bits = Vec::with_capacity(ints.len());
        for v in ints {
            match v {
                0 => bits.push(false),
                1 => bits.push(true),
                other => {
                    return Err(serde::de::Error::custom(format!(
                        "event component must be 0 or 1, got {other}"
                    )))
                }
            }
        }
        Event::from_bits(bits).map_err(serde::de::Error::custom)
    }
}

/// Atoms of the subalgebra generated by `events`: the nonzero minterms.
///
/// Coordinates with equal membership signature across all listed events lie
/// in the same minterm, so grouping by signature enumerates exactly the
/// nonzero minterms in `O(dim * events)`. With no events the only atom is
/// the sure event. Atoms are returned sorted by least contained coordinate.
pub fn atoms_of(dim: usize, events: &[Event]) -> Result<Vec<Event>> {
    if dim == 0 {
        return Err(Error::InvalidInput("dimension 0 is not allowed".into()));
    }
    for e in events {
        if e.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: e.dim() });
        }
    }
    let mut groups: std::collections::BTreeMap<Vec<bool>, Vec<bool>> =
        std::collections::BTreeMap::new();
    for i in 0..dim {
        let signature: Vec<bool> = events.iter().map(|e| e.contains(i)).collect();
        groups.entry(signature).or_insert_with(|| vec![false; dim])[i] = true;
    }
    let mut atoms: Vec<Event> =
        groups.into_values().map(|bits| Event { bits }).collect();
    atoms.sort_by_key(|a| a.support().next());
    Ok(atoms)
}

/// Witness that a positive combination of nonzero events is nonzero.
///
/// Given weights `p_i > 0` and nonzero events `C_i`, returns an atom
/// `D <= C_1` of the generated subalgebra; on `D` the combination
/// `sum p_i * C_i` is constant and at least `p_1 > 0`.
pub fn positive_combination_nonzero(weights: &[Rational], events: &[Event]) -> Result<Event> {
    if weights.is_empty() || weights.len() != events.len() {
        return Err(Error::InvalidInput(
            "positive combination needs matching, nonempty weights and events".into(),
        ));
    }
    for p in weights {
        if !p.is_positive() {
            return Err(Error::InvalidInput("combination weights must be positive".into()));
        }
    }
    for e in events {
        if e.is_zero() {
            return Err(Error::InvalidInput("combination events must be nonzero".into()));
        }
    }
    let dim = events[0].dim();
    let atoms = atoms_of(dim, events)?;
    atoms
        .into_iter()
        .find(|a| a.le(&events[0]).unwrap_or(false))
        .ok_or_else(|| Error::Internal("nonzero event has no atom below it".into()))
}
