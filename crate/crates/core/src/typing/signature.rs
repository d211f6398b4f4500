use std::fmt;

use crate::action::Action;
use crate::grid::Grid;

/// Shape of an action with every episodic collapsed to a single atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TypeSignature {
    Atom,
    Comp(Grid<TypeSignature>),
}

impl fmt::Display for TypeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeSignature::Atom => f.write_str("a"),
            TypeSignature::Comp(g) => g.fmt(f),
        }
    }
}

pub fn type_signature(a: &Action) -> TypeSignature {
    match a {
        Action::Episodic(_) => TypeSignature::Atom,
        Action::Flow(l) => TypeSignature::Comp(l.map(type_signature)),
    }
}

/// `a ∼ b`: equal signatures. Two episodics are always of the same type; a
/// flow and an episodic never are.
pub fn same_type(a: &Action, b: &Action) -> bool {
    type_signature(a) == type_signature(b)
}
