//! Inspection, the walk that moves right on success and down on failure, and
//! collection.
//!
//! Nested flows are walked with an explicit stack, so inspection is total on
//! any finite action regardless of nesting depth.

use crate::action::{Action, EpisodeElement, Episodic, ProcessLattice};

/// Direction taken after reducing a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Right,
    Down,
}

impl Move {
    pub fn as_str(self) -> &'static str {
        match self {
            Move::Right => "right",
            Move::Down => "down",
        }
    }
}

/// One top-level step of the walk. `p` and `q` are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub p: usize,
    pub q: usize,
    pub reduced: Episodic,
    pub dir: Move,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InspectionOutcome {
    pub element: EpisodeElement,
    /// `F`: final `p` minus one.
    pub failures: usize,
    /// `S`: final `q` minus one.
    pub successes: usize,
    pub trace: Vec<Step>,
}

impl InspectionOutcome {
    pub fn reduced(&self) -> Episodic {
        crate::action::reduce(&self.element)
    }
}

/// `⟨a⟩` with the `F`/`S` counters and the top-level trace.
///
/// `⟨w*⟩ = (w*, w)`, `⟨w⟩ = w`, and the empty lattice yields `(w*, w)`.
pub fn inspect(a: &Action) -> InspectionOutcome {
    match a {
        Action::Episodic(Episodic::Succeed) => InspectionOutcome {
            element: EpisodeElement::Succeed(Action::FAIL),
            failures: 0,
            successes: 0,
            trace: Vec::new(),
        },
        Action::Episodic(Episodic::Fail) => InspectionOutcome {
            element: EpisodeElement::Fail,
            failures: 0,
            successes: 0,
            trace: Vec::new(),
        },
        Action::Flow(l) => inspect_lattice(l),
    }
}

pub fn inspect_lattice(l: &ProcessLattice) -> InspectionOutcome {
    if l.is_empty() {
        return InspectionOutcome {
            element: EpisodeElement::Succeed(Action::FAIL),
            failures: 0,
            successes: 0,
            trace: Vec::new(),
        };
    }
    let (m, n) = l.dims();
    let (mut p, mut q) = (0, 0);
    let mut trace = Vec::with_capacity(m + n - 1);
    while p < m && q < n {
        let cell = l.get(p, q).expect("walk stays inside the grid");
        let reduced = evaluate(cell);
        let dir = match reduced {
            Episodic::Fail => Move::Down,
            Episodic::Succeed => Move::Right,
        };
        trace.push(Step {
            p: p + 1,
            q: q + 1,
            reduced,
            dir,
        });
        match dir {
            Move::Down => p += 1,
            Move::Right => q += 1,
        }
    }
    let element = if q == n {
        EpisodeElement::Succeed(l.get(p, n - 1).expect("landing cell").clone())
    } else {
        EpisodeElement::Fail
    };
    InspectionOutcome {
        element,
        failures: p,
        successes: q,
        trace,
    }
}

struct Frame<'a> {
    lattice: &'a ProcessLattice,
    p: usize,
    q: usize,
}

impl Frame<'_> {
    fn finished(&self) -> Option<Episodic> {
        let (m, n) = self.lattice.dims();
        if self.q == n {
            Some(Episodic::Succeed)
        } else if self.p == m {
            Some(Episodic::Fail)
        } else {
            None
        }
    }

    fn advance(&mut self, r: Episodic) {
        match r {
            Episodic::Fail => self.p += 1,
            Episodic::Succeed => self.q += 1,
        }
    }
}

/// `δ⟨a⟩` without building a trace.
pub fn evaluate(a: &Action) -> Episodic {
    let root = match a {
        Action::Episodic(e) => return *e,
        Action::Flow(l) => l,
    };
    let mut stack = vec![Frame {
        lattice: root,
        p: 0,
        q: 0,
    }];
    loop {
        let top = stack
            .last_mut()
            .expect("stack is non-empty inside the loop");
        if let Some(r) = top.finished() {
            stack.pop();
            match stack.last_mut() {
                Some(parent) => parent.advance(r),
                None => return r,
            }
            continue;
        }
        match top
            .lattice
            .get(top.p, top.q)
            .expect("walk stays inside the grid")
        {
            Action::Episodic(e) => top.advance(*e),
            Action::Flow(inner) => stack.push(Frame {
                lattice: inner,
                p: 0,
                q: 0,
            }),
        }
    }
}

/// Collection `xω ∘ yω*`: `x` failures then `y` successes land on row `x+1`,
/// column `y`. Anything outside the lattice (including `y = 0`) is `w`.
pub fn collect(f: &ProcessLattice, x: usize, y: usize) -> EpisodeElement {
    match y.checked_sub(1).and_then(|j| f.get(x, j)) {
        Some(a) => EpisodeElement::Succeed(a.clone()),
        None => EpisodeElement::Fail,
    }
}
