//! An executable engine for episodic flows.
//!
//! Actions are either one of the two episodics, `w` (failure) and `w*`
//! (success), or flows carrying a rectangular [`ProcessLattice`] of actions.
//! [`inspect`](inspect::inspect) walks a lattice, moving right on success and
//! down on failure, and returns an [`EpisodeElement`]. On top of that walk
//! the crate provides integer and rational encodings, logical connectives,
//! structural typing, content invariants, and a loss classification used to
//! decide when references die.

pub mod action;
pub mod dsl;
pub mod entropy;
pub mod error;
pub mod grid;
pub mod inspect;
pub mod logic;
pub mod numerics;
#[cfg(feature = "random")]
pub mod random;
pub mod template;
pub mod typing;

pub use action::{
    bar, episodic_inverse, hat, hat_element, reduce, reduce_inverse, structural_eq, Action,
    EpisodeElement, Episodic, ProcessLattice,
};
pub use error::{Error, Result};
pub use grid::Grid;
pub use inspect::{collect, evaluate, inspect, InspectionOutcome, Move, Step};
pub use template::{compose, Template, Term};

/// Rationals over the default machine integer.
pub type Rational = num_rational::Ratio<i64>;

/// Default integer type for lifts and colifts.
pub type Integer = i64;
