//! Degrees of entropic loss and reference-lifetime analysis over states.
//!
//! A state is a row whose slots are either occupied, `[w* Λ]`, or freed,
//! bare `w*`. Running a program on a state composes the state into the
//! program's holes, inspects the result, and projects the payload back out.
//! A reference dies when comparing its slot before and after classifies as
//! full loss.

use std::fmt;

use crate::action::{hat_element, Action, ProcessLattice};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::inspect::inspect_lattice;
use crate::template::{compose, Template};
use crate::typing::{canonical_invariant, precedes, same_type};

/// Classification of the change between two actions, in increasing order of
/// loss.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LossDegree {
    /// Structurally equal.
    Identity,
    /// Unequal, same type, equal content.
    GammaDot,
    /// Different types, equal content.
    GammaDdot,
    /// Different content, but one precedes the other.
    GammaDddot,
    /// Different content, no precedence.
    Gamma,
}

impl LossDegree {
    pub const ALL: [LossDegree; 5] = [
        LossDegree::Identity,
        LossDegree::GammaDot,
        LossDegree::GammaDdot,
        LossDegree::GammaDddot,
        LossDegree::Gamma,
    ];

    pub fn degree(self) -> u8 {
        match self {
            LossDegree::Identity => 0,
            LossDegree::GammaDot => 1,
            LossDegree::GammaDdot | LossDegree::GammaDddot => 2,
            LossDegree::Gamma => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            LossDegree::Identity => "identity",
            LossDegree::GammaDot => "gamma-dot",
            LossDegree::GammaDdot => "gamma-ddot",
            LossDegree::GammaDddot => "gamma-dddot",
            LossDegree::Gamma => "gamma",
        }
    }

    /// A reference whose slot suffers full loss is dead.
    pub fn is_dead(self) -> bool {
        self == LossDegree::Gamma
    }
}

impl fmt::Display for LossDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree={} label={}", self.degree(), self.label())
    }
}

/// Classifies `before ↝ after`; the first matching condition wins.
pub fn degrees_of_loss(before: &Action, after: &Action) -> LossDegree {
    if before == after {
        return LossDegree::Identity;
    }
    let same_content = canonical_invariant(before) == canonical_invariant(after);
    if same_content {
        if same_type(before, after) {
            LossDegree::GammaDot
        } else {
            LossDegree::GammaDdot
        }
    } else if precedes(before, after) || precedes(after, before) {
        LossDegree::GammaDddot
    } else {
        LossDegree::Gamma
    }
}

fn check_slot(i: usize, cell: &Action) -> Result<()> {
    match cell {
        Action::Episodic(e) if e.is_success() => Ok(()),
        Action::Flow(l) if l.dims() == (1, 2) && l.cells()[0] == Action::SUCCEED => Ok(()),
        other => Err(Error::NotAState(format!(
            "slot {} is {other}, expected w* or [w* x]",
            i + 1
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct State(ProcessLattice);

impl State {
    /// Validates a row of occupied (`[w* Λ]`) or freed (`w*`) slots.
    pub fn new(lattice: ProcessLattice) -> Result<Self> {
        if !lattice.is_empty() && lattice.rows() != 1 {
            return Err(Error::NotAState(format!(
                "expected a single row, found {} rows",
                lattice.rows()
            )));
        }
        for (i, cell) in lattice.cells().iter().enumerate() {
            check_slot(i, cell)?;
        }
        Ok(State(lattice))
    }

    pub fn from_action(a: Action) -> Result<Self> {
        match a {
            Action::Flow(l) => Self::new(l),
            other => Err(Error::NotAState(format!("{other} is not a lattice"))),
        }
    }

    /// `η(Λ₁, …, Λₙ)` with `None` for freed slots.
    pub fn from_slots(slots: impl IntoIterator<Item = Option<Action>>) -> Self {
        let cells = slots
            .into_iter()
            .map(|s| match s {
                Some(payload) => Action::Flow(Grid::row(vec![Action::SUCCEED, payload])),
                None => Action::SUCCEED,
            })
            .collect();
        State(Grid::row(cells))
    }

    pub fn lattice(&self) -> &ProcessLattice {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based slot access.
    pub fn slot(&self, index: usize) -> Result<&Action> {
        index
            .checked_sub(1)
            .and_then(|i| self.0.cells().get(i))
            .ok_or(Error::IndexOutOfRange {
                index,
                len: self.len(),
            })
    }

    pub fn is_freed(&self, index: usize) -> Result<bool> {
        Ok(*self.slot(index)? == Action::SUCCEED)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `P_η[i]`, an indexed accessor into a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reference<'a> {
    state: &'a State,
    index: usize,
}

impl<'a> Reference<'a> {
    pub fn new(state: &'a State, index: usize) -> Result<Self> {
        state.slot(index)?;
        Ok(Self { state, index })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// The referenced slot: the occupied `[w* Λ]` flow or a bare `w*`.
    pub fn lattice(&self) -> &'a Action {
        self.state
            .slot(self.index)
            .expect("index checked on construction")
    }
}

pub fn reference_lattice(state: &State, index: usize) -> Result<Action> {
    Reference::new(state, index).map(|r| r.lattice().clone())
}

/// `hat⟨η ∖ program⟩` as a state.
pub fn run_state(s: &State, program: &Template) -> Result<State> {
    let composed = compose(s.lattice(), program);
    let out = inspect_lattice(&composed);
    let payload = hat_element(&out.element).map_err(|_| Error::ProgramFailed)?;
    State::from_action(payload)
}

/// Whether slot `index` (or, with `None`, every slot) is `w*` after running
/// `program`.
pub fn freed_through(s: &State, program: &Template, index: Option<usize>) -> Result<bool> {
    let after = run_state(s, program)?;
    match index {
        Some(i) => {
            s.slot(i)?;
            after.is_freed(i)
        }
        None => Ok((1..=after.len()).all(|i| after.is_freed(i).unwrap_or(false))),
    }
}

/// Classifies each reference of `s` across a run of `program`.
pub fn analyze_references(
    s: &State,
    program: &Template,
    indices: &[usize],
) -> Result<Vec<LossDegree>> {
    let after = run_state(s, program)?;
    indices
        .iter()
        .map(|&k| {
            let before = Reference::new(s, k)?;
            let now = Reference::new(&after, k)?;
            Ok(degrees_of_loss(before.lattice(), now.lattice()))
        })
        .collect()
}

/// The nested form `η″ = hat⟨((hat⟨η ∖ Λ⟩ ∖ (P₁ ⋯ Pₙ)))⟩`: the references
/// of the resulting state are gathered into a row, that row is wrapped as the
/// sole cell of a `1×1` lattice and inspected, and each `P_k` is classified
/// against slot `k` of the result.
pub fn analyze_references_literal(s: &State, program: &Template) -> Result<Vec<LossDegree>> {
    let after = run_state(s, program)?;
    let refs: Vec<Action> = (1..=after.len())
        .map(|k| reference_lattice(&after, k))
        .collect::<Result<_>>()?;
    let wrapped = Grid::row(vec![Action::Flow(Grid::row(refs))]);
    let payload =
        hat_element(&inspect_lattice(&wrapped).element).map_err(|_| Error::ProgramFailed)?;
    let resolved = State::from_action(payload)?;
    (1..=s.len())
        .map(|k| {
            Ok(degrees_of_loss(
                Reference::new(s, k)?.lattice(),
                Reference::new(&resolved, k)?.lattice(),
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{action, lattice, template};

    fn state(src: &str) -> State {
        State::new(lattice(src)).unwrap()
    }

    #[test]
    fn canonical_pairs() {
        let cases = [
            ("[w* w*]", "[w* w*]", LossDegree::Identity, 0),
            ("[w* w]", "[w w*]", LossDegree::GammaDot, 1),
            ("[w* w]", "[w* ; w]", LossDegree::GammaDdot, 2),
            ("[w* w*]", "[w* w* ; w w]", LossDegree::GammaDddot, 2),
            ("[w* [w]]", "w*", LossDegree::Gamma, 3),
        ];
        for (a, b, label, degree) in cases {
            let got = degrees_of_loss(&action(a), &action(b));
            assert_eq!(got, label, "{a} vs {b}");
            assert_eq!(got.degree(), degree);
            assert_eq!(degrees_of_loss(&action(b), &action(a)), label);
        }
    }

    #[test]
    fn degree_order() {
        let degrees: Vec<u8> = LossDegree::ALL.iter().map(|d| d.degree()).collect();
        assert!(degrees.windows(2).all(|w| w[0] <= w[1]));
        assert!(LossDegree::ALL.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(
            LossDegree::GammaDddot.to_string(),
            "degree=2 label=gamma-dddot"
        );
    }

    #[test]
    fn state_validation() {
        assert!(State::new(lattice("[[w* [w]] w*]")).is_ok());
        assert!(State::new(lattice("[]")).is_ok());
        assert!(State::new(lattice("[w]")).is_err());
        assert!(State::new(lattice("[[w [w]]]")).is_err());
        assert!(State::new(lattice("[[w* w*] ; w*]")).is_err());
        assert!(State::new(lattice("[[w* w* w*]]")).is_err());
        assert!(State::from_action(Action::SUCCEED).is_err());
        assert_eq!(
            State::from_slots([Some(action("[w]")), None]),
            state("[[w* [w]] w*]")
        );
    }

    #[test]
    fn run_state_frees_slot() {
        let eta = state("[[w* [w*]]]");
        let out = run_state(&eta, &template("[_ [w*]]")).unwrap();
        assert_eq!(out, state("[w*]"));
    }

    #[test]
    fn failing_occupant_fails_the_program() {
        // [w* [w]] fails on inspection, so the state fails and the walk
        // leaves through the bottom before reaching the replacement
        let eta = state("[[w* [w]]]");
        assert_eq!(
            run_state(&eta, &template("[_ [w*]]")),
            Err(Error::ProgramFailed)
        );
    }

    #[test]
    fn hole_only_program_is_identity() {
        let eta = state("[[w* [w*]] [w* []]]");
        assert_eq!(run_state(&eta, &template("[_]")).unwrap(), eta);
    }

    #[test]
    fn failing_replacement() {
        let eta = state("[[w* [w*]]]");
        assert_eq!(
            run_state(&eta, &template("[_ [w]]")),
            Err(Error::ProgramFailed)
        );
    }

    #[test]
    fn non_state_result() {
        let eta = state("[[w* [w*]]]");
        assert!(run_state(&eta, &template("[_ [w* w*]]")).is_ok());
        assert!(matches!(
            run_state(&eta, &template("[_ [[w*] w*]]")),
            Err(Error::NotAState(_))
        ));
        assert!(matches!(
            run_state(&eta, &template("[_ w*]")),
            Err(Error::NotAState(_))
        ));
    }

    #[test]
    fn freed_through_cases() {
        let eta = state("[[w* [w*]] [w* [w* w*]] [w* []]]");
        assert!(freed_through(&eta, &template("[_ [w* w* w*]]"), None).unwrap());
        let partial = template("[_ [w* [w* [w*]] w*]]");
        assert!(!freed_through(&eta, &partial, Some(2)).unwrap());
        assert!(freed_through(&eta, &partial, Some(1)).unwrap());
        assert!(!freed_through(&eta, &partial, None).unwrap());
        assert!(freed_through(&eta, &template("[_ [w]]"), None).is_err());
        assert!(freed_through(&eta, &partial, Some(4)).is_err());
    }

    #[test]
    fn references() {
        let eta = state("[[w* [w]] w*]");
        assert_eq!(reference_lattice(&eta, 1).unwrap(), action("[w* [w]]"));
        assert_eq!(reference_lattice(&eta, 2).unwrap(), Action::SUCCEED);
        assert_eq!(
            reference_lattice(&eta, 0),
            Err(Error::IndexOutOfRange { index: 0, len: 2 })
        );
        assert!(reference_lattice(&eta, 3).is_err());
    }

    #[test]
    fn reference_analysis() {
        let eta = state("[[w* [w*]] [w* [w* w*]] [w* []]]");
        let all = [1, 2, 3];
        assert_eq!(
            analyze_references(&eta, &template("[_ [w* w* w*]]"), &all).unwrap(),
            vec![LossDegree::Gamma; 3]
        );
        assert_eq!(
            analyze_references(&eta, &template("[_]"), &all).unwrap(),
            vec![LossDegree::Identity; 3]
        );

        let two = state("[[w* [w*]] [w* [w* w*]]]");
        let free_first = template("[_ [w* [w* [w* w*]]]]");
        assert_eq!(
            analyze_references(&two, &free_first, &[1, 2]).unwrap(),
            vec![LossDegree::Gamma, LossDegree::Identity]
        );
    }

    #[test]
    fn literal_variant_agrees() {
        let eta = state("[[w* [w*]] [w* [w* w*]] [w* []]]");
        let program = template("[_ [w* w* w*]]");
        assert_eq!(
            analyze_references_literal(&eta, &program).unwrap(),
            analyze_references(&eta, &program, &[1, 2, 3]).unwrap()
        );
    }
}
