//! Morphism structures `μ` and partial morphism structures `π`.
//!
//! For an `m×n` lattice, `μ` is a `2m×n` grid. Odd rows (1-based `2i-1`)
//! hold the rightward morphisms `σ_{i,1..n-1}` followed by the exit `Σ_i` in
//! column `n`; even rows `2i` with `i < m` hold the downward morphisms
//! `θ_{i,1..n}`; the last row holds the failure exits `Θ_{1..n}`. `π` is the
//! top-left `(2m-1)×(n-1)` block, the σ/θ morphisms without the exits.

use std::fmt;

use super::signature::{type_signature, TypeSignature};
use crate::action::{Action, ProcessLattice};
use crate::error::{Error, Result};
use crate::grid::Grid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MorphismKind {
    /// `σ`: a success moves right.
    Advance,
    /// `θ`: a failure moves down.
    Descend,
    /// `Σ`: success leaves through the last column.
    Accept,
    /// `Θ`: failure leaves through the last row.
    Reject,
}

impl MorphismKind {
    pub fn name(self) -> &'static str {
        match self {
            MorphismKind::Advance => "sigma",
            MorphismKind::Descend => "theta",
            MorphismKind::Accept => "Sigma",
            MorphismKind::Reject => "Theta",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Codomain {
    Cell(TypeSignature),
    Success,
    Failure,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorphismDescriptor {
    pub kind: MorphismKind,
    pub dom: TypeSignature,
    pub cod: Codomain,
}

impl fmt::Display for MorphismDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({} -> ", self.kind.name(), self.dom)?;
        match &self.cod {
            Codomain::Cell(s) => write!(f, "{s})"),
            Codomain::Success => f.write_str("success)"),
            Codomain::Failure => f.write_str("fail)"),
        }
    }
}

pub type MorphismStructure = Grid<MorphismDescriptor>;

struct Sigs {
    cols: usize,
    cells: Vec<TypeSignature>,
}

impl Sigs {
    fn of(l: &ProcessLattice) -> Self {
        Sigs {
            cols: l.cols(),
            cells: l.cells().iter().map(type_signature).collect(),
        }
    }

    fn at(&self, i: usize, j: usize) -> TypeSignature {
        self.cells[i * self.cols + j].clone()
    }

    fn advance(&self, i: usize, j: usize) -> MorphismDescriptor {
        MorphismDescriptor {
            kind: MorphismKind::Advance,
            dom: self.at(i, j),
            cod: Codomain::Cell(self.at(i, j + 1)),
        }
    }

    fn descend(&self, i: usize, j: usize) -> MorphismDescriptor {
        MorphismDescriptor {
            kind: MorphismKind::Descend,
            dom: self.at(i, j),
            cod: Codomain::Cell(self.at(i + 1, j)),
        }
    }
}

/// `μΛ`. Undefined on the empty lattice.
pub fn morphism_structure(l: &ProcessLattice) -> Result<MorphismStructure> {
    if l.is_empty() {
        return Err(Error::NoMorphismStructure);
    }
    let (m, n) = l.dims();
    let s = Sigs::of(l);
    let mut cells = Vec::with_capacity(2 * m * n);
    for i in 0..m {
        for j in 0..n - 1 {
            cells.push(s.advance(i, j));
        }
        cells.push(MorphismDescriptor {
            kind: MorphismKind::Accept,
            dom: s.at(i, n - 1),
            cod: Codomain::Success,
        });
        if i + 1 < m {
            cells.extend((0..n).map(|j| s.descend(i, j)));
        } else {
            cells.extend((0..n).map(|j| MorphismDescriptor {
                kind: MorphismKind::Reject,
                dom: s.at(m - 1, j),
                cod: Codomain::Failure,
            }));
        }
    }
    Grid::new(2 * m, n, cells)
}

/// `πΛ`. A lattice with a single column has no σ/θ morphisms, giving the
/// empty grid.
pub fn partial_morphism_structure(l: &ProcessLattice) -> Result<MorphismStructure> {
    if l.is_empty() {
        return Err(Error::NoMorphismStructure);
    }
    let (m, n) = l.dims();
    let s = Sigs::of(l);
    let mut cells = Vec::with_capacity((2 * m - 1) * (n - 1));
    for i in 0..m {
        cells.extend((0..n - 1).map(|j| s.advance(i, j)));
        if i + 1 < m {
            cells.extend((0..n - 1).map(|j| s.descend(i, j)));
        }
    }
    Grid::new(2 * m - 1, n - 1, cells)
}

/// `a ⊢ b`: `π(a)` occurs as a contiguous block of `μ(b)`. Episodic and
/// empty operands never precede anything.
pub fn precedes(a: &Action, b: &Action) -> bool {
    let (Some(la), Some(lb)) = (a.as_flow(), b.as_flow()) else {
        return false;
    };
    match (partial_morphism_structure(la), morphism_structure(lb)) {
        (Ok(pi), Ok(mu)) => mu.contains_block(&pi),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{action, lattice};
    use TypeSignature::Atom;

    fn d(kind: MorphismKind, cod: Codomain) -> MorphismDescriptor {
        MorphismDescriptor {
            kind,
            dom: Atom,
            cod,
        }
    }

    fn sigma() -> MorphismDescriptor {
        d(MorphismKind::Advance, Codomain::Cell(Atom))
    }

    fn theta() -> MorphismDescriptor {
        d(MorphismKind::Descend, Codomain::Cell(Atom))
    }

    #[test]
    fn one_by_two() {
        let mu = morphism_structure(&lattice("[w* w]")).unwrap();
        assert_eq!(mu.dims(), (2, 2));
        assert_eq!(
            mu.cells(),
            &[
                sigma(),
                d(MorphismKind::Accept, Codomain::Success),
                d(MorphismKind::Reject, Codomain::Failure),
                d(MorphismKind::Reject, Codomain::Failure),
            ]
        );
        let pi = partial_morphism_structure(&lattice("[w* w]")).unwrap();
        assert_eq!(pi.dims(), (1, 1));
        assert_eq!(pi.cells(), &[sigma()]);
    }

    #[test]
    fn one_by_one() {
        let mu = morphism_structure(&lattice("[w]")).unwrap();
        assert_eq!(
            mu.cells(),
            &[
                d(MorphismKind::Accept, Codomain::Success),
                d(MorphismKind::Reject, Codomain::Failure)
            ]
        );
        assert!(partial_morphism_structure(&lattice("[w]"))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn two_by_two_partial() {
        let pi = partial_morphism_structure(&lattice("[w w* ; w* w]")).unwrap();
        assert_eq!(pi.dims(), (3, 1));
        assert_eq!(pi.cells(), &[sigma(), theta(), sigma()]);
        let mu = morphism_structure(&lattice("[w w* ; w* w]")).unwrap();
        assert_eq!(mu.dims(), (4, 2));
        assert_eq!(mu.get(1, 1), Some(&theta()));
        assert_eq!(mu.get(3, 0).unwrap().kind, MorphismKind::Reject);
    }

    #[test]
    fn empty_has_no_structure() {
        assert_eq!(
            morphism_structure(&lattice("[]")),
            Err(Error::NoMorphismStructure)
        );
        assert!(partial_morphism_structure(&lattice("[]")).is_err());
    }

    #[test]
    fn descriptors_record_signatures() {
        let mu = morphism_structure(&lattice("[[w] w*]")).unwrap();
        assert_eq!(mu.get(0, 0).unwrap().to_string(), "sigma([a] -> a)");
        assert_eq!(mu.get(1, 0).unwrap().to_string(), "Theta([a] -> fail)");
    }

    #[test]
    fn precedence() {
        assert!(precedes(&action("[w* w*]"), &action("[w* w* ; w w]")));
        assert!(precedes(&action("[w* w*]"), &action("[w* w*]")));
        assert!(!precedes(&Action::SUCCEED, &action("[w* w]")));
        assert!(!precedes(&action("[w* w]"), &Action::SUCCEED));
        assert!(!precedes(&action("[w* w* w*]"), &action("[w* w*]")));
        assert!(!precedes(&action("[]"), &action("[w]")));
        // π of [[w] w] is σ([a] -> a), absent from μ of an all-atom lattice
        assert!(!precedes(&action("[[w] w]"), &action("[w w ; w w]")));
    }
}
