//! forcelab: a finite-scale laboratory for the logic side of forcing.
//!
//! The crate implements, at sizes a desk machine can sweep exhaustively:
//!
//! * a canonical infinitary-style propositional language with set-indexed
//!   connectives ([`formula`]);
//! * brute-force semantic satisfaction and consequence ([`semantics`]);
//! * a proof kernel for an axiomatic deduction system with infinitary rules
//!   ([`proof`]);
//! * finite preorder and forcing-poset combinatorics: compatibility,
//!   antichains, density, filters, partial-function posets, products
//!   ([`poset`]);
//! * the covering-function pipeline that turns a target valuation into a
//!   theory, a preordered set of unrefuted formulas, and a generic filter,
//!   with a battery of verifiable claims ([`bukovsky`]);
//! * a Kripke-frame checker for buttons, switches, independence, and the
//!   S4.2 axioms ([`multiverse`]).

mod sexpr;

pub mod bukovsky;
pub mod formula;
pub mod multiverse;
pub mod poset;
pub mod proof;
pub mod semantics;
