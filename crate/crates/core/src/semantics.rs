//! Brute-force semantic satisfaction and consequence over finite atom
//! universes.
//!
//! With mu atoms there are only `2^mu` valuations, so semantic consequence is
//! decided by sweeping all of them. This relation is the maximal correct
//! entailment for the language and serves as the decidable stand-in for
//! provability wherever later modules ask "does the theory rule this out".

use crate::formula::{AtomUniverse, Formula};
use serde::Serialize;

/// Default bound on mu for exhaustive sweeps; `2^20` valuations.
pub const DEFAULT_MU_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("formula `{formula}` uses atom index {index}, universe has mu = {mu}")]
    AtomOutOfRange { formula: String, index: u32, mu: usize },
    #[error("mu = {mu} exceeds the sweep cap {cap}")]
    MuCapExceeded { mu: usize, cap: usize },
    #[error("valuation member {member} out of range: mu = {mu}")]
    MemberOutOfRange { member: u32, mu: usize },
}

/// A subset of `{0..mu-1}`, stored as a bitset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Valuation {
    bits: u32,
    mu: usize,
}

impl Valuation {
    pub fn empty(mu: usize) -> Self {
        Valuation { bits: 0, mu }
    }

    pub fn from_members<I: IntoIterator<Item = u32>>(
        members: I,
        mu: usize,
    ) -> Result<Self, SemanticsError> {
        let mut bits = 0u32;
        for m in members {
            if m as usize >= mu {
                return Err(SemanticsError::MemberOutOfRange { member: m, mu });
            }
            bits |= 1 << m;
        }
        Ok(Valuation { bits, mu })
    }

    /// The valuation with the given characteristic bits; bits at or above mu
    /// are masked off.
    pub fn from_bits(bits: u32, mu: usize) -> Self {
        let mask = if mu >= 32 { u32::MAX } else { (1u32 << mu) - 1 };
        Valuation { bits: bits & mask, mu }
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn contains(&self, index: u32) -> bool {
        (index as usize) < self.mu && self.bits & (1 << index) != 0
    }

    pub fn members(&self) -> Vec<u32> {
        (0..self.mu as u32).filter(|i| self.contains(*i)).collect()
    }

    pub fn universe(&self) -> AtomUniverse {
        AtomUniverse::new(self.mu)
    }
}

impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.members().serialize(serializer)
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, m) in self.members().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

/// A canonical, duplicate-free set of formulas, sorted by the formula order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Theory(Vec<Formula>);

impl Theory {
    pub fn new<I: IntoIterator<Item = Formula>>(formulas: I) -> Self {
        let mut v: Vec<Formula> = formulas.into_iter().collect();
        v.sort_by_cached_key(|f| f.canonical());
        v.dedup();
        Theory(v)
    }

    pub fn empty() -> Self {
        Theory(Vec::new())
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.binary_search_by(|x| x.cmp(f)).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Formula] {
        &self.0
    }
}

impl FromIterator<Formula> for Theory {
    fn from_iter<T: IntoIterator<Item = Formula>>(iter: T) -> Self {
        Theory::new(iter)
    }
}

/// Verdict of an entailment query; the countermodel is present exactly when
/// the entailment fails, and is the enumeration-least one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntailmentVerdict {
    pub holds: bool,
    pub countermodel: Option<Valuation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ConsistencyVerdict {
    /// The enumeration-least model.
    Consistent(Valuation),
    Inconsistent,
}

impl ConsistencyVerdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, ConsistencyVerdict::Consistent(_))
    }
}

pub(crate) fn eval_bits(bits: u32, f: &Formula) -> bool {
    match f {
        Formula::Atom(i) => bits & (1u32 << i) != 0,
        Formula::Neg(g) => !eval_bits(bits, g),
        Formula::BigOr(args) => args.iter().any(|a| eval_bits(bits, a)),
        Formula::BigAnd(args) => args.iter().all(|a| eval_bits(bits, a)),
    }
}

fn check_fits(f: &Formula, mu: usize) -> Result<(), SemanticsError> {
    if let Some(i) = f.max_atom() {
        if i as usize >= mu {
            return Err(SemanticsError::AtomOutOfRange { formula: f.to_string(), index: i, mu });
        }
    }
    Ok(())
}

/// Evaluates `f` under `b`: atoms by membership, negation by complement,
/// disjunction false on the empty set, conjunction true on it.
pub fn eval(b: &Valuation, f: &Formula) -> Result<bool, SemanticsError> {
    check_fits(f, b.mu())?;
    Ok(eval_bits(b.bits(), f))
}

/// Does every model of `gamma` satisfy `f`? Sweeps all `2^mu` valuations in
/// ascending bit order; on failure reports the least countermodel.
pub fn entails(gamma: &Theory, f: &Formula, u: AtomUniverse) -> Result<EntailmentVerdict, SemanticsError> {
    entails_with_cap(gamma, f, u, DEFAULT_MU_CAP)
}

pub fn entails_with_cap(
    gamma: &Theory,
    f: &Formula,
    u: AtomUniverse,
    cap: usize,
) -> Result<EntailmentVerdict, SemanticsError> {
    if u.mu > cap {
        return Err(SemanticsError::MuCapExceeded { mu: u.mu, cap });
    }
    for g in gamma.iter() {
        check_fits(g, u.mu)?;
    }
    check_fits(f, u.mu)?;
    for bits in 0..(1u64 << u.mu) {
        let bits = bits as u32;
        if gamma.iter().all(|g| eval_bits(bits, g)) && !eval_bits(bits, f) {
            return Ok(EntailmentVerdict {
                holds: false,
                countermodel: Some(Valuation::from_bits(bits, u.mu)),
            });
        }
    }
    Ok(EntailmentVerdict { holds: true, countermodel: None })
}

/// Finds the least model of `gamma`, or reports inconsistency.
pub fn consistent(gamma: &Theory, u: AtomUniverse) -> Result<ConsistencyVerdict, SemanticsError> {
    consistent_with_cap(gamma, u, DEFAULT_MU_CAP)
}

pub fn consistent_with_cap(
    gamma: &Theory,
    u: AtomUniverse,
    cap: usize,
) -> Result<ConsistencyVerdict, SemanticsError> {
    if u.mu > cap {
        return Err(SemanticsError::MuCapExceeded { mu: u.mu, cap });
    }
    for g in gamma.iter() {
        check_fits(g, u.mu)?;
    }
    for bits in 0..(1u64 << u.mu) {
        let bits = bits as u32;
        if gamma.iter().all(|g| eval_bits(bits, g)) {
            return Ok(ConsistencyVerdict::Consistent(Valuation::from_bits(bits, u.mu)));
        }
    }
    Ok(ConsistencyVerdict::Inconsistent)
}
