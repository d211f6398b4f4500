//! Canonical text: cells separated by one space, rows by ` ; `, empty
//! lattice `[]`, atoms `w`/`w*`, holes `_`.

use std::fmt::{self, Display, Write};

use crate::action::{Action, EpisodeElement, Episodic, ProcessLattice};
use crate::grid::Grid;
use crate::template::{Template, Term};

impl Display for Episodic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Episodic::Fail => "w",
            Episodic::Succeed => "w*",
        })
    }
}

impl Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Episodic(e) => e.fmt(f),
            Action::Flow(l) => l.fmt(f),
        }
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Hole => f.write_char('_'),
            Term::Atom(e) => e.fmt(f),
            Term::Lattice(g) => g.fmt(f),
        }
    }
}

impl Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root().fmt(f)
    }
}

impl<T: Display> Display for Grid<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('[')?;
        for (i, row) in self.iter_rows().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    f.write_char(' ')?;
                }
                cell.fmt(f)?;
            }
        }
        f.write_char(']')
    }
}

impl Display for EpisodeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpisodeElement::Fail => f.write_str("w"),
            EpisodeElement::Succeed(a) => write!(f, "(w*, {a})"),
        }
    }
}

pub fn print_canonical(t: &Term) -> String {
    t.to_string()
}

pub fn print_action(a: &Action) -> String {
    a.to_string()
}

pub fn print_lattice(l: &ProcessLattice) -> String {
    l.to_string()
}
