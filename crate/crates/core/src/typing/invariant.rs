//! Content invariants: elements of the free abelian group on the primes,
//! stored as exponent maps.

use std::collections::BTreeMap;
use std::fmt;

use crate::action::{Action, EpisodeElement, Episodic, ProcessLattice};
use crate::error::{Error, Result};
use crate::numerics::lift_int;

/// Prime reserved for `w`.
pub const FAIL_PRIME: u64 = 2;
/// Prime reserved for `w*`.
pub const SUCCEED_PRIME: u64 = 3;
/// Smallest prime available to user-registered invariants.
pub const FIRST_USER_PRIME: u64 = 5;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Invariant {
    exponents: BTreeMap<u64, u32>,
}

impl Invariant {
    pub fn identity() -> Self {
        Self::default()
    }

    /// The initial invariant for `p`, or `None` when `p` is not prime.
    pub fn initial(p: u64) -> Option<Self> {
        is_prime(p).then(|| Self {
            exponents: BTreeMap::from([(p, 1)]),
        })
    }

    /// Factorises `n ≥ 1` by trial division.
    pub fn factorize(mut n: u64) -> Option<Self> {
        if n == 0 {
            return None;
        }
        let mut exponents = BTreeMap::new();
        let mut d = 2u64;
        while d.saturating_mul(d) <= n {
            while n.is_multiple_of(d) {
                *exponents.entry(d).or_insert(0) += 1;
                n /= d;
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if n > 1 {
            *exponents.entry(n).or_insert(0) += 1;
        }
        Some(Self { exponents })
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.exponents.get(&p).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.exponents.iter().map(|(p, e)| (*p, *e))
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Group product: exponent-wise sum.
    pub fn mul(&self, other: &Invariant) -> Invariant {
        let mut exponents = self.exponents.clone();
        for (p, e) in &other.exponents {
            *exponents.entry(*p).or_insert(0) += e;
        }
        Invariant { exponents }
    }

    pub fn pow(&self, k: u32) -> Invariant {
        Invariant {
            exponents: self
                .exponents
                .iter()
                .filter(|_| k > 0)
                .map(|(p, e)| (*p, e * k))
                .collect(),
        }
    }

    /// `self | other`: every exponent of `self` is at most the matching
    /// exponent of `other`.
    pub fn divides(&self, other: &Invariant) -> bool {
        self.exponents.iter().all(|(p, e)| other.exponent(*p) >= *e)
    }

    /// The numeric product, if it fits in a `u64`.
    pub fn value(&self) -> Option<u64> {
        self.exponents
            .iter()
            .try_fold(1u64, |acc, (p, e)| acc.checked_mul(p.checked_pow(*e)?))
    }

    /// Swaps the exponents of the two episodic primes.
    pub fn swap_episodic(&self) -> Invariant {
        let mut exponents = self.exponents.clone();
        exponents.remove(&FAIL_PRIME);
        exponents.remove(&SUCCEED_PRIME);
        for (p, q) in [(FAIL_PRIME, SUCCEED_PRIME), (SUCCEED_PRIME, FAIL_PRIME)] {
            let e = self.exponent(p);
            if e > 0 {
                exponents.insert(q, e);
            }
        }
        Invariant { exponents }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{p}^{e}")?;
        }
        Ok(())
    }
}

impl std::iter::Product for Invariant {
    fn product<I: Iterator<Item = Invariant>>(iter: I) -> Self {
        iter.fold(Invariant::identity(), |acc, x| acc.mul(&x))
    }
}

fn episodic_invariant(e: Episodic) -> Invariant {
    let p = match e {
        Episodic::Fail => FAIL_PRIME,
        Episodic::Succeed => SUCCEED_PRIME,
    };
    Invariant::initial(p).expect("2 and 3 are prime")
}

/// `χ(a)`: `w ↦ 2`, `w* ↦ 3`, a flow is the product of its cells, and the
/// empty flow counts as holding `(w*, w)`, giving `6`.
pub fn canonical_invariant(a: &Action) -> Invariant {
    match a {
        Action::Episodic(e) => episodic_invariant(*e),
        Action::Flow(l) if l.is_empty() => {
            episodic_invariant(Episodic::Succeed).mul(&episodic_invariant(Episodic::Fail))
        }
        Action::Flow(l) => l.cells().iter().map(canonical_invariant).product(),
    }
}

/// `χ` of an episode element: `w ↦ 2`, `(w*, x) ↦ 3·χ(x)`.
pub fn element_invariant(e: &EpisodeElement) -> Invariant {
    match e {
        EpisodeElement::Fail => episodic_invariant(Episodic::Fail),
        EpisodeElement::Succeed(x) => {
            episodic_invariant(Episodic::Succeed).mul(&canonical_invariant(x))
        }
    }
}

/// `Δ_𝕏(x)`: the integer lift of the numeric product, bounded by `cap`.
pub fn lift_invariant(x: &Invariant, cap: u64) -> Result<ProcessLattice> {
    let value = x.value().ok_or_else(|| Error::MagnitudeCap {
        value: x.to_string(),
        cap,
    })?;
    if value > cap {
        return Err(Error::MagnitudeCap {
            value: value.to_string(),
            cap,
        });
    }
    let n = i64::try_from(value).map_err(|_| Error::Overflow)?;
    Ok(lift_int(n))
}
