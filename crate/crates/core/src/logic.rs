//! Boolean connectives as fixed lattice shapes, with `w*` as true and `w` as
//! false, and structural lattice equality `eqpl`.

use std::fmt;
use std::str::FromStr;

use crate::action::{episodic_inverse, Action, Episodic, ProcessLattice};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::inspect::evaluate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConnectiveKind {
    Or,
    And,
    Not,
    Implies,
    /// The second displayed encoding of implication, `[a b ; w* a*]`.
    ImpliesAlt,
    Iff,
}

impl ConnectiveKind {
    pub const ALL: [ConnectiveKind; 6] = [
        ConnectiveKind::Or,
        ConnectiveKind::And,
        ConnectiveKind::Not,
        ConnectiveKind::Implies,
        ConnectiveKind::ImpliesAlt,
        ConnectiveKind::Iff,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConnectiveKind::Or => "or",
            ConnectiveKind::And => "and",
            ConnectiveKind::Not => "not",
            ConnectiveKind::Implies => "implies",
            ConnectiveKind::ImpliesAlt => "implies-alt",
            ConnectiveKind::Iff => "iff",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            ConnectiveKind::Not => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for ConnectiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConnectiveKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s || (s == "implies_alt" && *k == ConnectiveKind::ImpliesAlt))
            .ok_or_else(|| format!("unknown connective '{s}'"))
    }
}

fn check_arity(k: ConnectiveKind, b: Option<&Action>) -> Result<Option<&Action>> {
    match (k.arity(), b) {
        (1, None) => Ok(None),
        (2, Some(b)) => Ok(Some(b)),
        (expected, _) => Err(Error::Arity {
            kind: k.name(),
            expected,
        }),
    }
}

/// The lattice shape of a connective. `not` is the `1×1` lattice holding the
/// structural inverse of `a`.
pub fn encode_connective(
    k: ConnectiveKind,
    a: &Action,
    b: Option<&Action>,
) -> Result<ProcessLattice> {
    let b = check_arity(k, b)?;
    let star = episodic_inverse;
    let t = Action::SUCCEED;
    let rows = match (k, b) {
        (ConnectiveKind::Not, None) => vec![vec![star(a)]],
        (ConnectiveKind::And, Some(b)) => vec![vec![a.clone(), b.clone()]],
        (ConnectiveKind::Or, Some(b)) => vec![vec![a.clone(), b.clone()], vec![b.clone(), t]],
        (ConnectiveKind::Implies, Some(b)) => {
            vec![vec![star(a), b.clone()], vec![b.clone(), t]]
        }
        (ConnectiveKind::ImpliesAlt, Some(b)) => {
            vec![vec![a.clone(), b.clone()], vec![t, star(a)]]
        }
        (ConnectiveKind::Iff, Some(b)) => {
            vec![vec![a.clone(), b.clone()], vec![star(b), star(a)]]
        }
        _ => unreachable!("arity checked above"),
    };
    Ok(Grid::from_rows(rows).expect("connective shapes are rectangular"))
}

/// `δ⟨encoding⟩`. `not` evaluates to the star of `δ⟨a⟩` so that it agrees
/// with classical negation on flow operands too.
pub fn eval_connective(k: ConnectiveKind, a: &Action, b: Option<&Action>) -> Result<Episodic> {
    if k == ConnectiveKind::Not {
        check_arity(k, b)?;
        return Ok(evaluate(a).star());
    }
    let l = encode_connective(k, a, b)?;
    Ok(evaluate(&Action::Flow(l)))
}

/// `eqpl(Λ, Λ′)`: `w` on a dimension mismatch, otherwise the reduction of the
/// `1×mn` row comparing cells pairwise (biconditional for two episodics,
/// recursive `eqpl` for two flows, `w` for mixed kinds).
pub fn eqpl(a: &ProcessLattice, b: &ProcessLattice) -> Episodic {
    if a.dims() != b.dims() {
        return Episodic::Fail;
    }
    let row: Vec<Action> = a
        .cells()
        .iter()
        .zip(b.cells())
        .map(|(x, y)| {
            let e = match (x, y) {
                (Action::Episodic(_), Action::Episodic(_)) => {
                    eval_connective(ConnectiveKind::Iff, x, Some(y)).expect("iff is binary")
                }
                (Action::Flow(l), Action::Flow(r)) => eqpl(l, r),
                _ => Episodic::Fail,
            };
            Action::Episodic(e)
        })
        .collect();
    evaluate(&Action::Flow(Grid::row(row)))
}
