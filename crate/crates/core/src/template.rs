//! Lattice expressions with holes, and composition `Λ ∖ T`.

use crate::action::{Action, Episodic, ProcessLattice};
use crate::error::{Error, Result};
use crate::grid::Grid;

/// A lattice-shaped expression whose leaves are episodics or holes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Hole,
    Atom(Episodic),
    Lattice(Grid<Term>),
}

impl Term {
    pub fn has_holes(&self) -> bool {
        match self {
            Term::Hole => true,
            Term::Atom(_) => false,
            Term::Lattice(g) => g.cells().iter().any(Term::has_holes),
        }
    }

    pub fn hole_count(&self) -> usize {
        match self {
            Term::Hole => 1,
            Term::Atom(_) => 0,
            Term::Lattice(g) => g.cells().iter().map(Term::hole_count).sum(),
        }
    }

    /// The action this term denotes, if it has no holes.
    pub fn to_action(&self) -> Option<Action> {
        match self {
            Term::Hole => None,
            Term::Atom(e) => Some(Action::Episodic(*e)),
            Term::Lattice(g) => {
                let cells = g
                    .cells()
                    .iter()
                    .map(Term::to_action)
                    .collect::<Option<Vec<_>>>()?;
                Some(Action::Flow(
                    Grid::new(g.rows(), g.cols(), cells).expect("shape preserved"),
                ))
            }
        }
    }

    /// Replaces every hole, at any depth, with `value`.
    pub fn fill(&self, value: &Action) -> Action {
        match self {
            Term::Hole => value.clone(),
            Term::Atom(e) => Action::Episodic(*e),
            Term::Lattice(g) => Action::Flow(g.map(|t| t.fill(value))),
        }
    }
}

impl From<&Action> for Term {
    fn from(a: &Action) -> Self {
        match a {
            Action::Episodic(e) => Term::Atom(*e),
            Action::Flow(l) => Term::Lattice(l.map(|a| Term::from(a))),
        }
    }
}

impl From<Action> for Term {
    fn from(a: Action) -> Self {
        Term::from(&a)
    }
}

/// A single-parameter program `𝕃 → 𝕃`: a lattice of terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Template(Grid<Term>);

impl Template {
    pub fn new(root: Grid<Term>) -> Self {
        Template(root)
    }

    pub fn root(&self) -> &Grid<Term> {
        &self.0
    }

    pub fn hole_count(&self) -> usize {
        self.0.cells().iter().map(Term::hole_count).sum()
    }

    /// A constant program that ignores its input.
    pub fn constant(l: &ProcessLattice) -> Self {
        Template(l.map(|a| Term::from(a)))
    }

    /// `input ∖ self`: every hole becomes the flow `input`.
    pub fn apply(&self, input: &ProcessLattice) -> ProcessLattice {
        let value = Action::Flow(input.clone());
        self.0.map(|t| t.fill(&value))
    }
}

impl TryFrom<Term> for Template {
    type Error = Error;

    fn try_from(t: Term) -> Result<Self> {
        match t {
            Term::Lattice(g) => Ok(Template(g)),
            _ => Err(Error::TemplateRoot),
        }
    }
}

impl From<Template> for Term {
    fn from(t: Template) -> Self {
        Term::Lattice(t.0)
    }
}

/// Composition `input ∖ program`.
pub fn compose(input: &ProcessLattice, program: &Template) -> ProcessLattice {
    program.apply(input)
}

/// Left-associated chain `((input ∖ p₁) ∖ p₂) ∖ …`.
pub fn compose_all<'a>(
    input: &ProcessLattice,
    programs: impl IntoIterator<Item = &'a Template>,
) -> ProcessLattice {
    programs
        .into_iter()
        .fold(input.clone(), |acc, p| compose(&acc, p))
}
