//! The value model: episodics, actions, process lattices and episode elements.

use crate::error::{Error, Result};
use crate::grid::Grid;

/// One of the two atoms: `w` (failure) or `w*` (success).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Episodic {
    Fail,
    Succeed,
}

impl Episodic {
    /// Swaps `w` and `w*`.
    pub fn star(self) -> Self {
        match self {
            Episodic::Fail => Episodic::Succeed,
            Episodic::Succeed => Episodic::Fail,
        }
    }

    pub fn is_success(self) -> bool {
        self == Episodic::Succeed
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Episodic::Succeed
        } else {
            Episodic::Fail
        }
    }
}

/// A rectangular grid of actions.
pub type ProcessLattice = Grid<Action>;

/// The universal value of the calculus: an episodic or a flow.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Action {
    Episodic(Episodic),
    Flow(ProcessLattice),
}

impl Action {
    pub const FAIL: Action = Action::Episodic(Episodic::Fail);
    pub const SUCCEED: Action = Action::Episodic(Episodic::Succeed);

    pub fn flow(lattice: ProcessLattice) -> Self {
        Action::Flow(lattice)
    }

    pub fn as_episodic(&self) -> Option<Episodic> {
        match self {
            Action::Episodic(e) => Some(*e),
            Action::Flow(_) => None,
        }
    }

    pub fn as_flow(&self) -> Option<&ProcessLattice> {
        match self {
            Action::Flow(l) => Some(l),
            Action::Episodic(_) => None,
        }
    }

    pub fn is_flow(&self) -> bool {
        matches!(self, Action::Flow(_))
    }

    /// Nesting depth: episodics have depth 0, a flow is one deeper than its
    /// deepest cell.
    pub fn depth(&self) -> usize {
        match self {
            Action::Episodic(_) => 0,
            Action::Flow(l) => 1 + l.cells().iter().map(Action::depth).max().unwrap_or(0),
        }
    }

    /// `δ⟨a⟩`, the episodic an action evaluates to.
    pub fn evaluate(&self) -> Episodic {
        crate::inspect::evaluate(self)
    }
}

impl From<Episodic> for Action {
    fn from(e: Episodic) -> Self {
        Action::Episodic(e)
    }
}

impl From<ProcessLattice> for Action {
    fn from(l: ProcessLattice) -> Self {
        Action::Flow(l)
    }
}

/// An element of the episode: `w`, or `(w*, payload)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EpisodeElement {
    Fail,
    Succeed(Action),
}

impl EpisodeElement {
    pub fn payload(&self) -> Option<&Action> {
        match self {
            EpisodeElement::Fail => None,
            EpisodeElement::Succeed(a) => Some(a),
        }
    }

    pub fn into_payload(self) -> Option<Action> {
        match self {
            EpisodeElement::Fail => None,
            EpisodeElement::Succeed(a) => Some(a),
        }
    }
}

/// Reduction `δ`: success with any payload is `w*`, failure is `w`.
pub fn reduce(e: &EpisodeElement) -> Episodic {
    match e {
        EpisodeElement::Fail => Episodic::Fail,
        EpisodeElement::Succeed(_) => Episodic::Succeed,
    }
}

/// `δ⁻¹`, taken to be the star of the reduction.
pub fn reduce_inverse(e: &EpisodeElement) -> Episodic {
    reduce(e).star()
}

/// The episodic inverse `a*`: episodics swap, a flow is transposed with
/// every cell inverted recursively.
pub fn episodic_inverse(a: &Action) -> Action {
    match a {
        Action::Episodic(e) => Action::Episodic(e.star()),
        Action::Flow(l) => Action::Flow(lattice_inverse(l)),
    }
}

/// `Λ*` with `Λ*_{ij} = (Λᵀ_{ij})*`.
pub fn lattice_inverse(l: &ProcessLattice) -> ProcessLattice {
    l.transpose_map(episodic_inverse)
}

/// The `1×2` lattice `[w* α]` isomorphic to a success element.
pub fn bar(e: &EpisodeElement) -> Result<ProcessLattice> {
    match e {
        EpisodeElement::Fail => Err(Error::BarOfFailure),
        EpisodeElement::Succeed(a) => Ok(Grid::row(vec![Action::SUCCEED, a.clone()])),
    }
}

/// Projection of `[w* α]` onto `α`.
pub fn hat(l: &ProcessLattice) -> Result<Action> {
    if l.dims() != (1, 2) {
        return Err(Error::HatUndefined("expected a 1x2 lattice"));
    }
    if l.cells()[0] != Action::SUCCEED {
        return Err(Error::HatUndefined("first cell is not w*"));
    }
    Ok(l.cells()[1].clone())
}

/// Projection of `(w*, α)` onto `α`.
pub fn hat_element(e: &EpisodeElement) -> Result<Action> {
    e.payload()
        .cloned()
        .ok_or(Error::HatUndefined("element is w"))
}

/// Identical trees: same variant, same dimensions, equal cells.
pub fn structural_eq(a: &Action, b: &Action) -> bool {
    a == b
}
