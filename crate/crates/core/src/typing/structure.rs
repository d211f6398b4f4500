//! Union and intersection data structures built as lattices.

use std::fmt;

use super::invariant::{lift_invariant, Invariant};
use crate::action::{Action, ProcessLattice};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::logic::eqpl;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureKind {
    /// `U`
    Union,
    /// `N`
    Intersection,
    /// `P`
    Primitive,
}

impl StructureKind {
    pub fn symbol(self) -> char {
        match self {
            StructureKind::Union => 'U',
            StructureKind::Intersection => 'N',
            StructureKind::Primitive => 'P',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructuralInvariant {
    pub kind: StructureKind,
    pub value: Invariant,
}

impl fmt::Display for StructuralInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.kind.symbol(), self.value)
    }
}

/// A lattice together with the structural invariant it was built under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structured {
    pub lattice: ProcessLattice,
    pub invariant: StructuralInvariant,
}

impl Structured {
    pub fn primitive(lattice: ProcessLattice, value: Invariant) -> Self {
        Self {
            lattice,
            invariant: StructuralInvariant {
                kind: StructureKind::Primitive,
                value,
            },
        }
    }
}

/// The union value `(χ_T χ_V v)`; requires `χ_V | χ_T`.
pub fn make_union(
    type_inv: &Invariant,
    variant_inv: &Invariant,
    value: &Action,
    cap: u64,
) -> Result<Structured> {
    if !variant_inv.divides(type_inv) {
        return Err(Error::VariantNotInUnion);
    }
    let lattice = Grid::row(vec![
        Action::Flow(lift_invariant(type_inv, cap)?),
        Action::Flow(lift_invariant(variant_inv, cap)?),
        value.clone(),
    ]);
    Ok(Structured {
        lattice,
        invariant: StructuralInvariant {
            kind: StructureKind::Union,
            value: type_inv.clone(),
        },
    })
}

/// The selector lattice `Λ_N(x)`: row `i` is `[eqpl(x, Δ(χ_i)) v_i]`.
/// Inspecting it yields the value bound to the invariant `x` encodes.
pub fn make_intersection(
    bindings: &[(Invariant, Action)],
    selector: &ProcessLattice,
    cap: u64,
) -> Result<Structured> {
    if bindings.is_empty() {
        return Err(Error::NoBindings);
    }
    let mut rows = Vec::with_capacity(bindings.len());
    for (inv, value) in bindings {
        let guard = eqpl(selector, &lift_invariant(inv, cap)?);
        rows.push(vec![Action::Episodic(guard), value.clone()]);
    }
    Ok(Structured {
        lattice: Grid::from_rows(rows).expect("two cells per row"),
        invariant: StructuralInvariant {
            kind: StructureKind::Intersection,
            value: bindings.iter().map(|(i, _)| i.clone()).product(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::EpisodeElement;
    use crate::dsl::{action, lattice};
    use crate::inspect::inspect_lattice;
    use crate::numerics::lift_int;

    const CAP: u64 = 1_000_000;

    fn inv(n: u64) -> Invariant {
        Invariant::factorize(n).unwrap()
    }

    #[test]
    fn unions() {
        let u = make_union(&inv(35), &inv(5), &Action::SUCCEED, CAP).unwrap();
        assert_eq!(
            u.lattice,
            Grid::row(vec![
                Action::Flow(lift_int(35)),
                Action::Flow(lift_int(5)),
                Action::SUCCEED
            ])
        );
        assert_eq!(u.invariant.to_string(), "(U, 5^1 * 7^1)");

        let u = make_union(&inv(35), &inv(7), &action("[]"), CAP).unwrap();
        assert_eq!(u.lattice.cells()[2], action("[]"));

        assert_eq!(
            make_union(&inv(35), &inv(11), &Action::FAIL, CAP),
            Err(Error::VariantNotInUnion)
        );
    }

    #[test]
    fn intersection_selects_matching_value() {
        let a = action("[w* w]");
        let b = action("[w* [w*]]");
        let bindings = [(inv(5), a.clone()), (inv(7), b.clone())];

        let n = make_intersection(&bindings, &lift_int(7), CAP).unwrap();
        assert_eq!(n.invariant.kind, StructureKind::Intersection);
        assert_eq!(n.invariant.value, inv(35));
        assert_eq!(
            inspect_lattice(&n.lattice).element,
            EpisodeElement::Succeed(b)
        );

        let one = [(inv(5), a.clone())];
        let n = make_intersection(&one, &lift_int(5), CAP).unwrap();
        // `a` fails on its own, so selecting it falls off the bottom
        assert_eq!(inspect_lattice(&n.lattice).element, EpisodeElement::Fail);

        let ok = [(inv(5), action("[w*]"))];
        let n = make_intersection(&ok, &lift_int(5), CAP).unwrap();
        assert_eq!(
            inspect_lattice(&n.lattice).element,
            EpisodeElement::Succeed(action("[w*]"))
        );
        let n = make_intersection(&ok, &lift_int(7), CAP).unwrap();
        assert_eq!(inspect_lattice(&n.lattice).element, EpisodeElement::Fail);
    }

    #[test]
    fn intersection_needs_bindings() {
        assert_eq!(
            make_intersection(&[], &lattice("[w*]"), CAP),
            Err(Error::NoBindings)
        );
    }
}
