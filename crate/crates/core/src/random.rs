//! Seeded generators for random actions and templates.

use rand::Rng;

use crate::action::{Action, Episodic, ProcessLattice};
use crate::grid::Grid;
use crate::template::{Template, Term};

/// Shape limits for generated values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shape {
    pub max_rows: usize,
    pub max_cols: usize,
    /// Maximum number of nested flow levels below the root.
    pub max_depth: usize,
    /// Probability that a cell is a nested flow (when depth allows).
    pub flow_prob: f64,
    /// Whether nested flows may be empty.
    pub allow_empty: bool,
}

impl Default for Shape {
    fn default() -> Self {
        Self {
            max_rows: 4,
            max_cols: 4,
            max_depth: 2,
            flow_prob: 0.3,
            allow_empty: true,
        }
    }
}

pub fn episodic<R: Rng + ?Sized>(rng: &mut R) -> Episodic {
    Episodic::from_bool(rng.gen())
}

fn dims<R: Rng + ?Sized>(rng: &mut R, shape: &Shape, allow_empty: bool) -> (usize, usize) {
    if allow_empty && rng.gen_ratio(1, 10) {
        return (0, 0);
    }
    (
        rng.gen_range(1..=shape.max_rows),
        rng.gen_range(1..=shape.max_cols),
    )
}

fn lattice_at<R: Rng + ?Sized>(
    rng: &mut R,
    shape: &Shape,
    depth: usize,
    allow_empty: bool,
) -> ProcessLattice {
    let (m, n) = dims(rng, shape, allow_empty);
    let cells = (0..m * n)
        .map(|_| {
            if depth < shape.max_depth && rng.gen_bool(shape.flow_prob) {
                Action::Flow(lattice_at(rng, shape, depth + 1, shape.allow_empty))
            } else {
                Action::Episodic(episodic(rng))
            }
        })
        .collect();
    Grid::new(m, n, cells).expect("generated shape")
}

/// A random lattice. The root is never empty; nested flows follow
/// `shape.allow_empty`.
pub fn lattice<R: Rng + ?Sized>(rng: &mut R, shape: &Shape) -> ProcessLattice {
    lattice_at(rng, shape, 0, false)
}

/// A random lattice with the given dimensions.
pub fn lattice_with_dims<R: Rng + ?Sized>(
    rng: &mut R,
    shape: &Shape,
    rows: usize,
    cols: usize,
) -> ProcessLattice {
    let cells = (0..rows * cols)
        .map(|_| {
            if shape.max_depth > 0 && rng.gen_bool(shape.flow_prob) {
                Action::Flow(lattice_at(rng, shape, 1, shape.allow_empty))
            } else {
                Action::Episodic(episodic(rng))
            }
        })
        .collect();
    Grid::new(rows, cols, cells).expect("generated shape")
}

/// A random action: an episodic about a quarter of the time, otherwise a flow.
pub fn action<R: Rng + ?Sized>(rng: &mut R, shape: &Shape) -> Action {
    if rng.gen_ratio(1, 4) {
        Action::Episodic(episodic(rng))
    } else {
        Action::Flow(lattice_at(rng, shape, 0, shape.allow_empty))
    }
}

fn term_at<R: Rng + ?Sized>(rng: &mut R, shape: &Shape, depth: usize) -> Grid<Term> {
    let (m, n) = dims(rng, shape, true);
    let cells = (0..m * n)
        .map(|_| {
            let roll: f64 = rng.gen();
            if depth < shape.max_depth && roll < shape.flow_prob {
                Term::Lattice(term_at(rng, shape, depth + 1))
            } else if roll < shape.flow_prob + 0.15 {
                Term::Hole
            } else {
                Term::Atom(episodic(rng))
            }
        })
        .collect();
    Grid::new(m, n, cells).expect("generated shape")
}

/// A random term: atoms, holes and nested lattices.
pub fn term<R: Rng + ?Sized>(rng: &mut R, shape: &Shape) -> Term {
    match rng.gen_range(0..10) {
        0 => Term::Hole,
        1 => Term::Atom(episodic(rng)),
        _ => Term::Lattice(term_at(rng, shape, 0)),
    }
}

pub fn template<R: Rng + ?Sized>(rng: &mut R, shape: &Shape) -> Template {
    Template::new(term_at(rng, shape, 0))
}
